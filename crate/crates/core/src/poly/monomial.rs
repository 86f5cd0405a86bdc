use std::cmp::Ordering;
use std::fmt;

use super::Ring;

/// Dense exponent vector. Ordered graded lexicographically: total degree first, then exponents
/// compared from the highest variable index down.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn from_exponents(exps: Vec<u16>) -> Self {
        Monomial(exps)
    }

    pub fn var(nvars: usize, v: usize) -> Self {
        let mut e = vec![0; nvars];
        e[v] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn exp(&self, v: usize) -> u16 {
        self.0[v]
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn weighted_degree(&self, degrees: &[u32]) -> u32 {
        self.0.iter().zip(degrees).map(|(&e, &d)| e as u32 * d).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / x_v`, if x_v divides it.
    pub fn div_var(&self, v: usize) -> Option<Monomial> {
        if self.0[v] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[v] -= 1;
        Some(Monomial(e))
    }

    pub fn mul_var(&self, v: usize) -> Monomial {
        let mut e = self.0.clone();
        e[v] += 1;
        Monomial(e)
    }

    pub fn display(&self, ring: &Ring) -> String {
        if self.is_one() {
            return "1".into();
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(v, &e)| {
                if e == 1 {
                    ring.var_name(v)
                } else {
                    format!("{}^{e}", ring.var_name(v))
                }
            })
            .collect();
        parts.join("*")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Which variables of the Fock ring may appear.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarSet {
    All,
    ZOnly,
    WOnly,
}

/// All monomials of weighted degree `d` using the allowed variables, in ascending order.
pub fn monomials_of_degree(ring: &Ring, d: u32, varset: VarSet) -> Vec<Monomial> {
    let nvars = ring.nvars();
    let allowed: Vec<usize> = (0..nvars)
        .filter(|&v| match (varset, ring) {
            (VarSet::All, _) => true,
            (VarSet::ZOnly, Ring::Fock(s)) => v < s.n * s.k,
            (VarSet::WOnly, Ring::Fock(s)) => v >= s.n * s.k,
            (_, _) => true,
        })
        .collect();
    let degrees = ring.var_degrees();
    monomials_in_vars(nvars, &allowed, &degrees, d)
}

/// Monomials of weighted degree `d` supported on `allowed`, ascending.
pub fn monomials_in_vars(nvars: usize, allowed: &[usize], degrees: &[u32], d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u16; nvars];
    fill(allowed, degrees, d, &mut cur, &mut out);
    out.sort();
    out
}

fn fill(allowed: &[usize], degrees: &[u32], rest: u32, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
    let Some((&v, tail)) = allowed.split_first() else {
        if rest == 0 {
            out.push(Monomial(cur.clone()));
        }
        return;
    };
    let w = degrees[v];
    for e in 0..=rest / w {
        cur[v] = e as u16;
        fill(tail, degrees, rest - e * w, cur, out);
    }
    cur[v] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn small_enumerations() {
        let r = Ring::fock(1, 1).unwrap();
        assert_eq!(monomials_of_degree(&r, 1, VarSet::All).len(), 2);
        let r = Ring::fock(2, 1).unwrap();
        let zs = monomials_of_degree(&r, 2, VarSet::ZOnly);
        assert_eq!(
            zs.iter().map(|m| m.exponents().to_vec()).collect::<Vec<_>>(),
            vec![vec![2, 0, 0], vec![1, 1, 0], vec![0, 2, 0]]
        );
    }

    #[test]
    fn invariant_ring_count_matches_block_oracle() {
        // S_2 in degree 2: r-monomials of r-degree 1 times w-monomials of degree 0, plus w-degree 2.
        let r = Ring::invariant(2).unwrap();
        let got = monomials_of_degree(&r, 2, VarSet::All).len() as u64;
        let oracle: u64 = (0..=1).map(|a| binom(a + 2, 2) * binom(2 - 2 * a + 1, 1)).sum();
        assert_eq!(got, oracle);
        assert_eq!(got, 6);
    }

    #[test]
    fn counts_match_stars_and_bars() {
        let r = Ring::fock(2, 2).unwrap();
        for d in 0..6u32 {
            assert_eq!(monomials_of_degree(&r, d, VarSet::All).len() as u64, binom(d as u64 + 5, 5));
        }
    }
}
