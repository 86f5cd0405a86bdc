//! C₊ and C₋ as free S_k-modules on {Φ_J} and {*Φ_J} (valid for k < n, where S_k embeds in P_k).
//!
//! With m ∈ S_k a monomial, writing ∂_w, ∂_r for derivatives in the abstract variables and
//! ε_J = (−1)^{|J|−1}:
//!
//! d₂(m Φ_J)   = −Σ_j (−1)^{J(j)} ŵ_j m Φ_{J∪j}
//! d₋₂(m Φ_J)  =  Σ_{j,b} (1+δ_{jb}) (−1)^{J(b)} ∂_{w_j}∂_{r_jb} m Φ_{J∪b}
//! d₂(m *Φ_J)  = −ε_J Σ_{j∈J} (−1)^{J(j)} ĉ_j m *Φ_{J−j}
//! d₋₂(m *Φ_J) =  ε_J Σ_{j∈J} (−1)^{J(j)} ( Σ_{j',b} (1+δ_{j'b}) r̂_{bj} ∂_{w_j'}∂_{r_j'b} m + (n−|J|+1) ∂_{w_j} m ) *Φ_{J−j}
//!
//! The second term of d₋₂ on Φ_J vanishes because it repeats some ω_α.

use crate::error::{Error, Result};
use crate::exterior::{tuple_sign, ExtIndex, TupleMode};
use crate::poly::{invariant_var, monomials_of_degree, rhat, sk_evaluate, what, InvariantVar, Monomial, Polynomial, Ring, RingSpec, VarSet};
use crate::Rational;

use super::complex::{BlockKey, CochainModel};
use super::{big_phi, star_phi, Cochain};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Part {
    Plus,
    Minus,
    Full,
}

impl Part {
    pub fn includes_plus(self) -> bool {
        matches!(self, Part::Plus | Part::Full)
    }

    pub fn includes_minus(self) -> bool {
        matches!(self, Part::Minus | Part::Full)
    }
}

/// `m · Φ_J` (plus) or `m · *Φ_J` (minus).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeCoord {
    pub plus: bool,
    pub j: ExtIndex,
    pub m: Monomial,
}

pub struct FreeModel {
    spec: RingSpec,
    part: Part,
    sk: Ring,
}

fn q(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

fn parity(x: usize) -> i64 {
    if x.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl FreeModel {
    pub fn new(spec: RingSpec, part: Part) -> Result<Self> {
        if spec.k >= spec.n {
            return Err(Error::InvalidArgument(format!(
                "the free S_k model needs k < n (got n={}, k={})",
                spec.n, spec.k
            )));
        }
        Ok(FreeModel {
            spec,
            part,
            sk: Ring::Invariant { k: spec.k },
        })
    }

    pub fn spec(&self) -> RingSpec {
        self.spec
    }

    fn cochain_degree(&self, c: &FreeCoord) -> usize {
        if c.plus {
            c.j.len()
        } else {
            self.spec.n - c.j.len()
        }
    }

    /// The ambient cochain represented by a coordinate.
    pub fn evaluate(&self, c: &FreeCoord) -> Result<Cochain<Rational>> {
        let base = if c.plus { big_phi(self.spec, &c.j)? } else { star_phi(self.spec, &c.j)? };
        let f = sk_evaluate(&Polynomial::monomial(&self.sk, c.m.clone(), q(1)), self.spec)?;
        Ok(base.mul_poly(&f))
    }

    /// Evaluates a coordinate vector.
    pub fn evaluate_vec(&self, v: &[(FreeCoord, Rational)]) -> Result<Cochain<Rational>> {
        let ell = v.first().map(|(c, _)| self.cochain_degree(c)).unwrap_or(0);
        let mut out = Cochain::zero(self.spec, ell);
        for (c, x) in v {
            out = out.add(&self.evaluate(c)?.scale(x));
        }
        Ok(out)
    }

    fn k(&self) -> usize {
        self.spec.k
    }

    /// `∂_{w_j} ∂_{r_jb} m` as (coefficient, monomial).
    fn dwdr(&self, m: &Monomial, j: usize, b: usize) -> Option<(i64, Monomial)> {
        let wv = what(self.k(), j);
        let rv = rhat(self.k(), j, b);
        let e1 = m.exp(wv) as i64;
        let m1 = m.div_var(wv)?;
        let e2 = m1.exp(rv) as i64;
        let m2 = m1.div_var(rv)?;
        Some((e1 * e2, m2))
    }

    fn images(&self, c: &FreeCoord, x: &Rational, up: &mut Vec<(FreeCoord, Rational)>, down: &mut Vec<(FreeCoord, Rational)>) {
        let k = self.k();
        if c.plus {
            for j in 1..=k {
                let t = tuple_sign(&c.j, j, TupleMode::Insert);
                if t.is_zero() || t.index.len() > self.spec.n {
                    continue;
                }
                up.push((
                    FreeCoord { plus: true, j: t.index, m: c.m.mul_var(what(k, j)) },
                    x.clone() * q(-(t.sign as i64)),
                ));
            }
            for j in 1..=k {
                for b in 1..=k {
                    let t = tuple_sign(&c.j, b, TupleMode::Insert);
                    if t.is_zero() || t.index.len() > self.spec.n {
                        continue;
                    }
                    if let Some((e, m2)) = self.dwdr(&c.m, j, b) {
                        let mult = if j == b { 2 } else { 1 };
                        down.push((FreeCoord { plus: true, j: t.index, m: m2 }, x.clone() * q(mult * e * t.sign as i64)));
                    }
                }
            }
        } else {
            let eps = parity(c.j.len() + 1);
            for jj in c.j.indices() {
                let t = tuple_sign(&c.j, jj, TupleMode::Remove);
                let s = eps * t.sign as i64;
                for i in 1..=k {
                    let m = c.m.mul_var(what(k, i)).mul_var(rhat(k, i, jj));
                    up.push((FreeCoord { plus: false, j: t.index, m }, x.clone() * q(-s)));
                }
                for j2 in 1..=k {
                    for b in 1..=k {
                        if let Some((e, m2)) = self.dwdr(&c.m, j2, b) {
                            let mult = if j2 == b { 2 } else { 1 };
                            let m = m2.mul_var(rhat(k, b, jj));
                            down.push((FreeCoord { plus: false, j: t.index, m }, x.clone() * q(s * mult * e)));
                        }
                    }
                }
                let wv = what(k, jj);
                if let Some(m2) = c.m.div_var(wv) {
                    let e = c.m.exp(wv) as i64;
                    down.push((
                        FreeCoord { plus: false, j: t.index, m: m2 },
                        x.clone() * q(s * e * (self.spec.n + 1 - c.j.len()) as i64),
                    ));
                }
            }
        }
    }

    /// (d₂ v, d₋₂ v).
    #[allow(clippy::type_complexity)]
    pub fn split_diff(&self, v: &[(FreeCoord, Rational)]) -> (Vec<(FreeCoord, Rational)>, Vec<(FreeCoord, Rational)>) {
        let mut up = Vec::new();
        let mut down = Vec::new();
        for (c, x) in v {
            self.images(c, x, &mut up, &mut down);
        }
        (up, down)
    }
}

impl CochainModel for FreeModel {
    type Coord = FreeCoord;

    fn top(&self) -> usize {
        self.spec.n
    }

    fn coord_degree(&self, c: &FreeCoord) -> u32 {
        c.j.len() as u32 + c.m.weighted_degree(&self.sk.var_degrees())
    }

    fn block_key(&self, c: &FreeCoord) -> BlockKey {
        let k = self.k();
        let mut key = vec![if c.plus { 1 } else { -1 }];
        let mut e = vec![0i32; k];
        for (v, &x) in c.m.exponents().iter().enumerate() {
            match invariant_var(k, v) {
                InvariantVar::R { i, j } => {
                    e[i - 1] += x as i32;
                    e[j - 1] += x as i32;
                }
                InvariantVar::W { i } => e[i - 1] -= x as i32,
            }
        }
        for j in c.j.indices() {
            e[j - 1] += 1;
        }
        key.extend(e);
        key
    }

    fn basis(&self, ell: usize, degree: u32) -> Result<Vec<Vec<(FreeCoord, Rational)>>> {
        let mut out = Vec::new();
        let (n, k) = (self.spec.n, self.spec.k);
        let mut push = |plus: bool, jlen: usize| {
            if jlen > k || degree < jlen as u32 {
                return;
            }
            let ms = monomials_of_degree(&self.sk, degree - jlen as u32, VarSet::All);
            for j in ExtIndex::all_of_len(k, jlen) {
                for m in &ms {
                    out.push(vec![(FreeCoord { plus, j, m: m.clone() }, q(1))]);
                }
            }
        };
        if self.part.includes_plus() {
            push(true, ell);
        }
        if self.part.includes_minus() && ell <= n {
            push(false, n - ell);
        }
        Ok(out)
    }

    fn apply(&self, _ell: usize, v: &[(FreeCoord, Rational)]) -> (Vec<(FreeCoord, Rational)>, Vec<(FreeCoord, Rational)>) {
        let (up, down) = self.split_diff(v);
        let mut full = up.clone();
        full.extend(down);
        (full, up)
    }
}
