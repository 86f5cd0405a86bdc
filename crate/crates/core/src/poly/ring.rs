use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Shape of the Fock ring P_k: variables z(α,i) for 1 ≤ α ≤ n, 1 ≤ i ≤ k, and w(i).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingSpec {
    pub n: usize,
    pub k: usize,
}

impl RingSpec {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n == 0 || k == 0 {
            return Err(Error::InvalidArgument(format!("ring needs n, k >= 1 (got n={n}, k={k})")));
        }
        Ok(RingSpec { n, k })
    }

    pub fn nvars(&self) -> usize {
        (self.n + 1) * self.k
    }

    /// Index of z(α,i), both 1-based. Variables are ordered column by column, then the w's.
    pub fn z(&self, alpha: usize, i: usize) -> usize {
        debug_assert!((1..=self.n).contains(&alpha) && (1..=self.k).contains(&i));
        (i - 1) * self.n + (alpha - 1)
    }

    pub fn w(&self, i: usize) -> usize {
        debug_assert!((1..=self.k).contains(&i));
        self.n * self.k + i - 1
    }

    pub fn checked_z(&self, alpha: usize, i: usize) -> Result<usize> {
        if (1..=self.n).contains(&alpha) && (1..=self.k).contains(&i) {
            Ok(self.z(alpha, i))
        } else {
            Err(Error::IndexOutOfRange(format!("z({alpha},{i}) with n={}, k={}", self.n, self.k)))
        }
    }

    pub fn checked_w(&self, i: usize) -> Result<usize> {
        if (1..=self.k).contains(&i) {
            Ok(self.w(i))
        } else {
            Err(Error::IndexOutOfRange(format!("w({i}) with k={}", self.k)))
        }
    }

    /// Inverse of [`RingSpec::z`] / [`RingSpec::w`].
    pub fn var(&self, v: usize) -> FockVar {
        if v < self.n * self.k {
            FockVar::Z {
                alpha: v % self.n + 1,
                i: v / self.n + 1,
            }
        } else {
            FockVar::W { i: v - self.n * self.k + 1 }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FockVar {
    Z { alpha: usize, i: usize },
    W { i: usize },
}

/// Polynomial ring over weighted variables with explicit names.
#[derive(Debug, PartialEq, Eq)]
pub struct FreeRing {
    pub names: Vec<String>,
    pub degrees: Vec<u32>,
}

/// The rings polynomials can live in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ring {
    /// P_k in the Fock variables, all of degree one.
    Fock(RingSpec),
    /// The abstract invariant ring S_k on r̂(i,j), i ≤ j (degree 2), and ŵ(i) (degree 1).
    Invariant { k: usize },
    Free(Arc<FreeRing>),
}

impl Ring {
    pub fn fock(n: usize, k: usize) -> Result<Ring> {
        RingSpec::new(n, k).map(Ring::Fock)
    }

    pub fn invariant(k: usize) -> Result<Ring> {
        if k == 0 {
            return Err(Error::InvalidArgument("S_k needs k >= 1".into()));
        }
        Ok(Ring::Invariant { k })
    }

    pub fn free(names: Vec<String>, degrees: Vec<u32>) -> Result<Ring> {
        if names.len() != degrees.len() {
            return Err(Error::InvalidArgument("one degree per variable".into()));
        }
        if degrees.contains(&0) {
            return Err(Error::InvalidArgument("variable degrees must be positive".into()));
        }
        Ok(Ring::Free(Arc::new(FreeRing { names, degrees })))
    }

    pub fn nvars(&self) -> usize {
        match self {
            Ring::Fock(s) => s.nvars(),
            Ring::Invariant { k } => k * (k + 1) / 2 + k,
            Ring::Free(f) => f.names.len(),
        }
    }

    pub fn var_degree(&self, v: usize) -> u32 {
        match self {
            Ring::Fock(_) => 1,
            Ring::Invariant { k } => {
                if v < k * (k + 1) / 2 {
                    2
                } else {
                    1
                }
            }
            Ring::Free(f) => f.degrees[v],
        }
    }

    pub fn var_degrees(&self) -> Vec<u32> {
        (0..self.nvars()).map(|v| self.var_degree(v)).collect()
    }

    pub fn var_name(&self, v: usize) -> String {
        match self {
            Ring::Fock(s) => match s.var(v) {
                FockVar::Z { alpha, i } => format!("z{alpha}_{i}"),
                FockVar::W { i } => format!("w{i}"),
            },
            Ring::Invariant { k } => match invariant_var(*k, v) {
                InvariantVar::R { i, j } => format!("r{i}_{j}"),
                InvariantVar::W { i } => format!("w{i}"),
            },
            Ring::Free(f) => f.names[v].clone(),
        }
    }

    pub fn spec(&self) -> Option<RingSpec> {
        match self {
            Ring::Fock(s) => Some(*s),
            _ => None,
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Fock(s) => write!(f, "P_{}(n={})", s.k, s.n),
            Ring::Invariant { k } => write!(f, "S_{k}"),
            Ring::Free(r) => write!(f, "Q[{}]", r.names.join(",")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvariantVar {
    R { i: usize, j: usize },
    W { i: usize },
}

/// Index of r̂(i,j) in S_k; the pair is unordered.
pub fn rhat(k: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    debug_assert!(1 <= i && j <= k);
    // rows (1,1..k), (2,2..k), ...
    (i - 1) * (k + 1) - (i - 1) * i / 2 + (j - i)
}

pub fn what(k: usize, i: usize) -> usize {
    k * (k + 1) / 2 + i - 1
}

pub fn invariant_var(k: usize, v: usize) -> InvariantVar {
    let nr = k * (k + 1) / 2;
    if v >= nr {
        return InvariantVar::W { i: v - nr + 1 };
    }
    let mut start = 0;
    for i in 1..=k {
        let len = k - i + 1;
        if v < start + len {
            return InvariantVar::R { i, j: i + v - start };
        }
        start += len;
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fock_indices_round_trip() {
        let s = RingSpec::new(3, 2).unwrap();
        assert_eq!(s.z(1, 1), 0);
        assert_eq!(s.z(3, 2), 5);
        assert_eq!(s.w(1), 6);
        for v in 0..s.nvars() {
            let back = match s.var(v) {
                FockVar::Z { alpha, i } => s.z(alpha, i),
                FockVar::W { i } => s.w(i),
            };
            assert_eq!(back, v);
        }
    }

    #[test]
    fn invariant_indices_round_trip() {
        for k in 1..=4 {
            for v in 0..(Ring::Invariant { k }).nvars() {
                let back = match invariant_var(k, v) {
                    InvariantVar::R { i, j } => rhat(k, i, j),
                    InvariantVar::W { i } => what(k, i),
                };
                assert_eq!(back, v);
            }
        }
        assert_eq!(rhat(3, 2, 1), rhat(3, 1, 2));
    }
}
