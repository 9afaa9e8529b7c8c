//! Permutations of `[n]` in one-line notation and their lexicographic rank.
//!
//! Symbols are stored 1-based, exactly as they are printed. A vertex of a
//! Cayley graph is identified by the [`PermRank`] of its permutation, so the
//! vertex set of `Cay(Sym(n), T)` is the integer range `0..n!`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest arity accepted by [`factorial`]-based ranking (20! fits in `u64`).
pub const MAX_RANK_ARITY: usize = 20;

/// `n!` for `n <= 20`.
pub fn factorial(n: usize) -> u64 {
    assert!(n <= MAX_RANK_ARITY, "{n}! overflows u64");
    (1..=n as u64).product()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flip(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

/// A permutation `p1 p2 ... pn` of `{1, ..., n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    symbols: Vec<u8>,
}

/// Lexicographic index of a permutation among all permutations of `[n]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PermRank {
    pub index: u64,
    pub n: u8,
}

impl Permutation {
    /// Builds a permutation from 1-based symbols, rejecting anything that is
    /// not a bijection on `[n]`.
    pub fn new(symbols: Vec<u8>) -> Result<Self> {
        let n = symbols.len();
        if n == 0 {
            return Err(Error::invalid("permutation must have at least one symbol"));
        }
        if n > MAX_RANK_ARITY {
            return Err(Error::Capacity {
                what: "permutation arity",
                requested: n,
                limit: MAX_RANK_ARITY,
            });
        }
        let mut seen = 0u32;
        for &s in &symbols {
            if s == 0 || s as usize > n {
                return Err(Error::invalid(format!("symbol {s} outside 1..={n}")));
            }
            let bit = 1u32 << (s - 1);
            if seen & bit != 0 {
                return Err(Error::invalid(format!("symbol {s} repeated")));
            }
            seen |= bit;
        }
        Ok(Self { symbols })
    }

    pub fn identity(n: usize) -> Self {
        assert!((1..=MAX_RANK_ARITY).contains(&n));
        Self {
            symbols: (1..=n as u8).collect(),
        }
    }

    pub fn arity(&self) -> usize {
        self.symbols.len()
    }

    /// One-line notation, 1-based.
    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    /// Symbol at 1-based `position`.
    pub fn at(&self, position: usize) -> u8 {
        self.symbols[position - 1]
    }

    /// `p(kl)`: the permutation with the entries at positions `k` and `l`
    /// (1-based) exchanged.
    pub fn apply_swap(&self, k: usize, l: usize) -> Result<Self> {
        let n = self.arity();
        if k == 0 || l == 0 || k > n || l > n {
            return Err(Error::invalid(format!(
                "swap positions ({k} {l}) outside 1..={n}"
            )));
        }
        if k == l {
            return Err(Error::invalid(format!(
                "swap positions must differ, got ({k} {l})"
            )));
        }
        let mut symbols = self.symbols.clone();
        symbols.swap(k - 1, l - 1);
        Ok(Self { symbols })
    }

    /// In-place swap with 0-based positions; used by graph construction.
    pub(crate) fn swap_in_place(&mut self, i: usize, j: usize) {
        self.symbols.swap(i, j);
    }

    pub fn parity(&self) -> Parity {
        // n - (number of cycles) transpositions
        let n = self.arity();
        let mut visited = 0u32;
        let mut cycles = 0;
        for start in 0..n {
            if visited & (1 << start) != 0 {
                continue;
            }
            cycles += 1;
            let mut i = start;
            while visited & (1 << i) == 0 {
                visited |= 1 << i;
                i = self.symbols[i] as usize - 1;
            }
        }
        if (n - cycles).is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Lexicographic rank via the Lehmer code.
    pub fn rank(&self) -> PermRank {
        let n = self.arity();
        let mut index = 0u64;
        let mut used = 0u32;
        for (i, &s) in self.symbols.iter().enumerate() {
            let below = (used & ((1u32 << (s - 1)) - 1)).count_ones() as u64;
            let digit = (s as u64 - 1) - below;
            index += digit * factorial(n - 1 - i);
            used |= 1 << (s - 1);
        }
        PermRank { index, n: n as u8 }
    }

    pub fn unrank(rank: PermRank) -> Result<Self> {
        let n = rank.n as usize;
        if n == 0 || n > MAX_RANK_ARITY {
            return Err(Error::invalid(format!(
                "arity {n} outside 1..={MAX_RANK_ARITY}"
            )));
        }
        let total = factorial(n);
        if rank.index >= total {
            return Err(Error::invalid(format!(
                "rank {} out of range for n = {n} (n! = {total})",
                rank.index
            )));
        }
        let mut remaining: Vec<u8> = (1..=n as u8).collect();
        let mut symbols = Vec::with_capacity(n);
        let mut r = rank.index;
        for i in 0..n {
            let f = factorial(n - 1 - i);
            let digit = (r / f) as usize;
            r %= f;
            symbols.push(remaining.remove(digit));
        }
        Ok(Self { symbols })
    }
}

impl PermRank {
    pub fn new(index: u64, n: usize) -> Result<Self> {
        if n == 0 || n > MAX_RANK_ARITY {
            return Err(Error::invalid(format!(
                "arity {n} outside 1..={MAX_RANK_ARITY}"
            )));
        }
        if index >= factorial(n) {
            return Err(Error::invalid(format!("rank {index} >= {n}!")));
        }
        Ok(Self { index, n: n as u8 })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arity() <= 9 {
            for s in &self.symbols {
                write!(f, "{s}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.symbols.iter().map(|s| s.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Parses digit strings (`"4231"`) or comma-separated symbols.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let symbols: Option<Vec<u8>> = if s.contains(',') {
            s.split(',').map(|t| t.trim().parse().ok()).collect()
        } else {
            s.chars().map(|c| c.to_digit(10).map(|d| d as u8)).collect()
        };
        match symbols {
            Some(v) => Permutation::new(v),
            None => Err(Error::Parse {
                token: s.to_string(),
                reason: "expected a permutation in one-line notation".into(),
            }),
        }
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
