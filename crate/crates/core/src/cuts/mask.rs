//! Component analysis on `u128` vertex masks (graphs of order <= 128).

use crate::graph::Vertex;

#[inline]
pub(crate) fn bits(mut mask: u128) -> impl Iterator<Item = Vertex> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = mask.trailing_zeros();
            mask &= mask - 1;
            Some(b)
        }
    })
}

#[derive(Clone, Copy)]
pub(crate) struct MaskGraph<'a> {
    pub nbr: &'a [u128],
    pub all: u128,
}

impl<'a> MaskGraph<'a> {
    pub fn new(nbr: &'a [u128]) -> Self {
        let n = nbr.len();
        let all = if n == 128 {
            u128::MAX
        } else {
            (1u128 << n) - 1
        };
        Self { nbr, all }
    }

    /// `N(S) \ S`.
    #[inline]
    pub fn neighborhood(&self, set: u128) -> u128 {
        bits(set).fold(0u128, |acc, v| acc | self.nbr[v as usize]) & !set
    }

    /// Component of `start` inside `alive`.
    #[inline]
    pub fn component(&self, alive: u128, start: Vertex) -> u128 {
        let mut comp = 1u128 << start;
        let mut frontier = comp;
        while frontier != 0 {
            let mut next = 0u128;
            for v in bits(frontier) {
                next |= self.nbr[v as usize];
            }
            next &= alive & !comp;
            comp |= next;
            frontier = next;
        }
        comp
    }

    #[inline]
    pub fn edges_within(&self, set: u128) -> u32 {
        bits(set)
            .map(|v| (self.nbr[v as usize] & set).count_ones())
            .sum::<u32>()
            / 2
    }

    /// Components of `G - fault` in order of their smallest vertex.
    pub fn components(&self, fault: u128) -> Vec<u128> {
        let mut rest = self.all & !fault;
        let alive = rest;
        let mut out = Vec::new();
        while rest != 0 {
            let c = self.component(alive, rest.trailing_zeros());
            rest &= !c;
            out.push(c);
        }
        out
    }

    pub fn is_disconnected(&self, fault: u128) -> bool {
        let alive = self.all & !fault;
        if alive == 0 {
            return false;
        }
        self.component(alive, alive.trailing_zeros()) != alive
    }

    pub fn is_cyclic_cut(&self, fault: u128) -> bool {
        let alive = self.all & !fault;
        let mut rest = alive;
        let mut cyclic = 0;
        while rest != 0 {
            let c = self.component(alive, rest.trailing_zeros());
            rest &= !c;
            if self.edges_within(c) >= c.count_ones() {
                cyclic += 1;
                if cyclic >= 2 {
                    return true;
                }
            }
        }
        false
    }

    pub fn min_surviving_degree(&self, fault: u128) -> Option<u32> {
        let alive = self.all & !fault;
        bits(alive)
            .map(|v| (self.nbr[v as usize] & alive).count_ones())
            .min()
    }

    pub fn is_good_neighbor_cut(&self, fault: u128, g: u32) -> bool {
        match self.min_surviving_degree(fault) {
            Some(d) if d >= g => self.is_disconnected(fault),
            _ => false,
        }
    }

    /// `(largest component size, survivors outside it)`.
    pub fn residual(&self, fault: u128) -> (u32, u32) {
        let alive = self.all & !fault;
        let total = alive.count_ones();
        let mut rest = alive;
        let mut largest = 0;
        while rest != 0 {
            let c = self.component(alive, rest.trailing_zeros());
            rest &= !c;
            largest = largest.max(c.count_ones());
            // no remaining component can be larger
            if largest >= rest.count_ones() {
                break;
            }
        }
        (largest, total - largest)
    }
}

pub(crate) fn to_mask(members: &[Vertex]) -> u128 {
    members.iter().fold(0u128, |m, &v| m | 1u128 << v)
}

pub(crate) fn from_mask(mask: u128) -> Vec<Vertex> {
    bits(mask).collect()
}
