use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exterior::{contract, hodge_star, wedge, ExtIndex};
use crate::poly::{minor, son_act, FockVar, Monomial, Polynomial, Ring, RingSpec};
use crate::scalar::Scalar;

/// An element of Λ^ℓ p* ⊗ P_k: a map from ℓ-element index sets to polynomials. Invariance under
/// SO(n) is not part of the type.
#[derive(Debug, Clone, PartialEq)]
pub struct Cochain<C> {
    ell: usize,
    spec: RingSpec,
    parts: BTreeMap<ExtIndex, Polynomial<C>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiffMode {
    /// d = d₂ + d₋₂.
    Full,
    /// −Σ_j Σ_α A(ω_α) z(α,j) w_j, raising polynomial degree by 2.
    D2,
    /// Σ_j Σ_α A(ω_α) ∂²/∂z(α,j)∂w_j, lowering polynomial degree by 2.
    Dm2,
    /// d′ = Σ_α A(ω_α) q_α = −d₂.
    Graded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Involution {
    /// Flips e₁: ω₁ ↦ −ω₁ and z(1,i) ↦ −z(1,i).
    Iota,
    /// Flips e_{n+1}: w_i ↦ −w_i, and every ω_α ↦ −ω_α.
    IotaPrime,
}

impl<C: Scalar> Cochain<C> {
    pub fn zero(spec: RingSpec, ell: usize) -> Self {
        Cochain {
            ell,
            spec,
            parts: BTreeMap::new(),
        }
    }

    /// `ω_I ⊗ f`.
    pub fn single(spec: RingSpec, index: ExtIndex, f: Polynomial<C>) -> Self {
        let mut c = Self::zero(spec, index.len());
        c.add_part(index, f);
        c
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn spec(&self) -> RingSpec {
        self.spec
    }

    pub fn ring(&self) -> Ring {
        Ring::Fock(self.spec)
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> impl Iterator<Item = (&ExtIndex, &Polynomial<C>)> {
        self.parts.iter()
    }

    pub fn part(&self, index: &ExtIndex) -> Polynomial<C> {
        self.parts.get(index).cloned().unwrap_or_else(|| Polynomial::zero(&self.ring()))
    }

    /// Number of (index, monomial) terms.
    pub fn num_terms(&self) -> usize {
        self.parts.values().map(|p| p.len()).sum()
    }

    /// Iterates over all (index, monomial, coefficient) terms.
    pub fn terms(&self) -> impl Iterator<Item = (&ExtIndex, &Monomial, &C)> {
        self.parts.iter().flat_map(|(i, p)| p.terms().map(move |(m, c)| (i, m, c)))
    }

    pub fn add_part(&mut self, index: ExtIndex, f: Polynomial<C>) {
        assert_eq!(index.len(), self.ell, "form degree mismatch");
        assert_eq!(index.n(), self.spec.n, "form on the wrong space");
        if f.is_zero() {
            return;
        }
        let sum = match self.parts.remove(&index) {
            Some(old) => &old + &f,
            None => f,
        };
        if !sum.is_zero() {
            self.parts.insert(index, sum);
        }
    }

    pub fn add_term(&mut self, index: ExtIndex, m: Monomial, c: C) {
        let ring = self.ring();
        self.add_part(index, Polynomial::monomial(&ring, m, c));
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.spec != other.spec || (self.ell != other.ell && !self.is_zero() && !other.is_zero()) {
            return Err(Error::RingMismatch {
                left: format!("C^{} over {}", self.ell, self.ring()),
                right: format!("C^{} over {}", other.ell, other.ring()),
            });
        }
        let mut out = if self.is_zero() { Self::zero(self.spec, other.ell) } else { self.clone() };
        for (i, p) in &other.parts {
            out.add_part(*i, p.clone());
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.checked_add(other).expect("adding cochains of different shapes")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-C::one()))
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map_parts(|p| p.scale(c))
    }

    pub fn mul_poly(&self, f: &Polynomial<C>) -> Self {
        self.map_parts(|p| p * f)
    }

    fn map_parts(&self, f: impl Fn(&Polynomial<C>) -> Polynomial<C>) -> Self {
        let mut out = Self::zero(self.spec, self.ell);
        for (i, p) in &self.parts {
            out.add_part(*i, f(p));
        }
        out
    }

    /// The differential or one of its pieces. Cochains of top degree map to zero.
    pub fn diff(&self, mode: DiffMode) -> Self {
        let s = self.spec;
        let mut out = Self::zero(s, self.ell + 1);
        if self.ell >= s.n {
            return out;
        }
        let up = matches!(mode, DiffMode::Full | DiffMode::D2 | DiffMode::Graded);
        let down = matches!(mode, DiffMode::Full | DiffMode::Dm2);
        let up_sign = if mode == DiffMode::Graded { C::one() } else { -C::one() };
        let ring = self.ring();
        for (index, f) in &self.parts {
            for alpha in 1..=s.n {
                let t = wedge(&ExtIndex::single(s.n, alpha), index);
                if t.is_zero() {
                    continue;
                }
                let sign = C::from_int(t.sign as i64);
                let mut acc = Polynomial::zero(&ring);
                for j in 1..=s.k {
                    let (z, w) = (s.z(alpha, j), s.w(j));
                    if up {
                        acc = &acc + &f.mul_var(z).mul_var(w).scale(&up_sign);
                    }
                    if down {
                        acc = &acc + &f.partial(z).partial(w);
                    }
                }
                out.add_part(t.index, acc.scale(&sign));
            }
        }
        out
    }

    pub fn involution(&self, which: Involution) -> Self {
        let s = self.spec;
        let mut out = Self::zero(s, self.ell);
        for (index, f) in &self.parts {
            let g = match which {
                Involution::Iota => {
                    let form = index.contains(1) as u32;
                    f.map_terms(|m, c| {
                        let z1: u32 = (1..=s.k).map(|i| m.exp(s.z(1, i)) as u32).sum();
                        if (z1 + form).is_multiple_of(2) {
                            c.clone()
                        } else {
                            -c.clone()
                        }
                    })
                }
                Involution::IotaPrime => {
                    let form = self.ell as u32;
                    f.map_terms(|m, c| {
                        let wd: u32 = (1..=s.k).map(|i| m.exp(s.w(i)) as u32).sum();
                        if (wd + form).is_multiple_of(2) {
                            c.clone()
                        } else {
                            -c.clone()
                        }
                    })
                }
            };
            out.add_part(*index, g);
        }
        out
    }

    /// Components in the +1 and −1 eigenspaces of ι⊗ι. Every term has a definite sign, so this is
    /// a partition of the terms.
    pub fn split_pm(&self) -> (Self, Self) {
        let s = self.spec;
        let mut plus = Self::zero(s, self.ell);
        let mut minus = Self::zero(s, self.ell);
        for (index, m, c) in self.terms() {
            if iota_sign(s, index, m) > 0 {
                plus.add_term(*index, m.clone(), c.clone());
            } else {
                minus.add_term(*index, m.clone(), c.clone());
            }
        }
        (plus, minus)
    }

    /// Infinitesimal rotation in the (a,b)-plane, acting on forms and polynomials as a derivation.
    /// On forms ω_a ↦ ω_b and ω_b ↦ −ω_a, matching the action on z(a,·), z(b,·).
    pub fn son_act(&self, a: usize, b: usize) -> Result<Self> {
        let s = self.spec;
        let mut out = Self::zero(s, self.ell);
        for (index, f) in &self.parts {
            out.add_part(*index, son_act(a, b, f)?);
            for (from, to, sign) in [(a, b, 1i64), (b, a, -1)] {
                if !index.contains(from) || index.contains(to) {
                    continue;
                }
                // Replace ω_from by ω_to in place: contract it out, then wedge ω_to back in front.
                let c = contract(from, index);
                let back = wedge(&ExtIndex::single(s.n, to), &c.index);
                let total = sign * c.sign as i64 * back.sign as i64;
                out.add_part(back.index, f.scale(&C::from_int(total)));
            }
        }
        Ok(out)
    }

    /// `Σ f_I (*ω_I)`.
    pub fn star(&self) -> Self {
        let mut out = Self::zero(self.spec, self.spec.n - self.ell);
        for (index, f) in &self.parts {
            let st = hodge_star(index);
            out.add_part(st.index, f.scale(&C::from_int(st.sign as i64)));
        }
        out
    }

    /// Highest polynomial degree present.
    pub fn degree(&self) -> Option<u32> {
        self.parts.values().filter_map(|p| p.degree()).max()
    }
}

/// Eigenvalue of ι⊗ι on the basis element ω_I ⊗ m.
pub fn iota_sign(s: RingSpec, index: &ExtIndex, m: &Monomial) -> i8 {
    let z1: u32 = (1..=s.k).map(|i| m.exp(s.z(1, i)) as u32).sum();
    if (z1 + index.contains(1) as u32).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `(ω_I ⊗ f) ∧ (ω_J ⊗ g) = (ω_I ∧ ω_J) ⊗ f·g̃`, where g̃ relabels the vector indices of `b` past
/// those of `a`.
pub fn outer_product<C: Scalar>(a: &Cochain<C>, b: &Cochain<C>) -> Result<Cochain<C>> {
    let (sa, sb) = (a.spec, b.spec);
    if sa.n != sb.n {
        return Err(Error::InvalidArgument(format!("outer product needs equal n ({} vs {})", sa.n, sb.n)));
    }
    let s = RingSpec::new(sa.n, sa.k + sb.k)?;
    let ring = Ring::Fock(s);
    let lift_a = |v: usize| match sa.var(v) {
        FockVar::Z { alpha, i } => s.z(alpha, i),
        FockVar::W { i } => s.w(i),
    };
    let lift_b = |v: usize| match sb.var(v) {
        FockVar::Z { alpha, i } => s.z(alpha, i + sa.k),
        FockVar::W { i } => s.w(i + sa.k),
    };
    let mut out = Cochain::zero(s, a.ell + b.ell);
    for (i, f) in &a.parts {
        let f = f.relabel(&ring, lift_a);
        for (j, g) in &b.parts {
            let t = wedge(i, j);
            if t.is_zero() {
                continue;
            }
            let g = g.relabel(&ring, lift_b);
            out.add_part(t.index, (&f * &g).scale(&C::from_int(t.sign as i64)));
        }
    }
    Ok(out)
}

/// φ₁ in the given vector slot: Σ_α ω_α ⊗ z(α,slot).
pub fn phi1<C: Scalar>(s: RingSpec, slot: usize) -> Result<Cochain<C>> {
    s.checked_w(slot)?;
    let ring = Ring::Fock(s);
    let mut c = Cochain::zero(s, 1);
    for alpha in 1..=s.n {
        c.add_part(ExtIndex::single(s.n, alpha), Polynomial::var(&ring, s.z(alpha, slot)));
    }
    Ok(c)
}

/// Φ_J = Σ_{I} f_{I,J} ω_I, J a subset of {1..k}.
pub fn big_phi<C: Scalar>(s: RingSpec, j: &ExtIndex) -> Result<Cochain<C>> {
    if j.n() != s.k {
        return Err(Error::InvalidArgument(format!("J must index {} vectors", s.k)));
    }
    if j.len() > s.n {
        return Err(Error::InvalidArgument(format!("|J| = {} exceeds n = {}", j.len(), s.n)));
    }
    let cols = j.indices();
    let mut c = Cochain::zero(s, j.len());
    for i in ExtIndex::all_of_len(s.n, j.len()) {
        c.add_part(i, minor(s, &i.indices(), &cols)?);
    }
    Ok(c)
}

/// *Φ_J = Σ_I f_{I,J} (*ω_I); in particular *Φ_∅ = vol ⊗ 1.
pub fn star_phi<C: Scalar>(s: RingSpec, j: &ExtIndex) -> Result<Cochain<C>> {
    Ok(big_phi(s, j)?.star())
}

/// φ_k = Φ_{(1,…,k)}.
pub fn phik<C: Scalar>(s: RingSpec) -> Result<Cochain<C>> {
    big_phi(s, &ExtIndex::full(s.k))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Named {
    Phi1 { slot: usize },
    Phik,
    Phi(Vec<usize>),
    StarPhi(Vec<usize>),
}

pub fn named_cochain<C: Scalar>(which: &Named, s: RingSpec) -> Result<Cochain<C>> {
    match which {
        Named::Phi1 { slot } => phi1(s, *slot),
        Named::Phik => phik(s),
        Named::Phi(j) => big_phi(s, &ExtIndex::new(s.k, j)?),
        Named::StarPhi(j) => star_phi(s, &ExtIndex::new(s.k, j)?),
    }
}

impl<C: Scalar> fmt::Display for Cochain<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.parts.iter().map(|(i, p)| format!("{i}⊗[{p}]")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
