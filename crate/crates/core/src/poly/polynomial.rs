use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::{Monomial, Ring};

/// Sparse polynomial with no stored zero coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<C> {
    ring: Ring,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Scalar> Polynomial<C> {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Ring, c: C) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, C::one())
    }

    pub fn var(ring: &Ring, v: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), v), C::one())
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: C) -> Self {
        assert_eq!(m.nvars(), ring.nvars(), "monomial does not fit the ring");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, C)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x = x.clone() + c;
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Weighted degree of the highest term; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        let w = self.ring.var_degrees();
        self.terms.keys().map(|m| m.weighted_degree(&w)).max()
    }

    /// The common weighted degree of all terms, if there is one. Zero counts as homogeneous of
    /// every degree and returns `None`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let w = self.ring.var_degrees();
        let mut it = self.terms.keys().map(|m| m.weighted_degree(&w));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch {
                left: self.ring.to_string(),
                right: other.ring.to_string(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = Self::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x.clone() * c.clone())).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &C) -> Self {
        Polynomial::from_terms(
            &self.ring,
            self.terms.iter().map(|(mm, x)| (mm.mul(m), x.clone() * c.clone())),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(&self.ring);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Formal partial derivative in variable `v`.
    pub fn partial(&self, v: usize) -> Self {
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if let Some(rest) = m.div_var(v) {
                out.add_term(rest, c.clone() * C::from_int(e as i64));
            }
        }
        out
    }

    /// Multiplies by the variable `v`.
    pub fn mul_var(&self, v: usize) -> Self {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.mul_var(v), c.clone())).collect(),
        }
    }

    /// Ring homomorphism sending variable `v` to `images[v]`; all images must share one ring.
    pub fn substitute(&self, target: &Ring, images: &[Polynomial<C>]) -> Result<Self> {
        if images.len() != self.ring.nvars() {
            return Err(Error::InvalidArgument(format!(
                "substitution needs {} images, got {}",
                self.ring.nvars(),
                images.len()
            )));
        }
        if let Some(bad) = images.iter().find(|p| p.ring != *target) {
            return Err(Error::RingMismatch {
                left: target.to_string(),
                right: bad.ring.to_string(),
            });
        }
        let mut powers: Vec<Vec<Polynomial<C>>> = images.iter().map(|p| vec![Self::one(target), p.clone()]).collect();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut term = Self::constant(target, c.clone());
            for (v, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[v].len() <= e as usize {
                    let next = &powers[v][powers[v].len() - 1] * &images[v];
                    powers[v].push(next);
                }
                term = &term * &powers[v][e as usize];
            }
            for (mm, cc) in term.terms {
                out.add_term(mm, cc);
            }
        }
        Ok(out)
    }

    /// Moves every term to another ring with the same number of variables or more, through a
    /// variable relabelling.
    pub fn relabel(&self, target: &Ring, map: impl Fn(usize) -> usize) -> Self {
        let nv = target.nvars();
        Polynomial::from_terms(
            target,
            self.terms.iter().map(|(m, c)| {
                let mut e = vec![0u16; nv];
                for (v, &x) in m.exponents().iter().enumerate() {
                    if x > 0 {
                        e[map(v)] += x;
                    }
                }
                (Monomial::from_exponents(e), c.clone())
            }),
        )
    }

    /// Applies `f` to every coefficient with its monomial, dropping zeros.
    pub fn map_terms(&self, f: impl Fn(&Monomial, &C) -> C) -> Self {
        Polynomial::from_terms(&self.ring, self.terms.iter().map(|(m, c)| (m.clone(), f(m, c))))
    }
}

impl<C: Scalar> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| format!("({c})*{}", m.display(&self.ring)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<C: Scalar> Add for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        self.checked_add(rhs).expect("polynomial addition across rings")
    }
}

impl<C: Scalar> Sub for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        self.checked_add(&-rhs).expect("polynomial subtraction across rings")
    }
}

impl<C: Scalar> Mul for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        self.checked_mul(rhs).expect("polynomial product across rings")
    }
}

impl<C: Scalar> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}
