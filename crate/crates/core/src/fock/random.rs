use rand::Rng;

use crate::exterior::ExtIndex;
use crate::poly::{Monomial, Polynomial, Ring, RingSpec};
use crate::scalar::Scalar;

use super::Cochain;

/// Random polynomial with at most `terms` terms of degree at most `max_deg` and coefficients drawn
/// uniformly from {−3..3}.
pub fn random_polynomial<C: Scalar, R: Rng>(rng: &mut R, s: RingSpec, terms: usize, max_deg: u32) -> Polynomial<C> {
    let ring = Ring::Fock(s);
    let mut p = Polynomial::zero(&ring);
    for _ in 0..terms {
        let deg = rng.gen_range(0..=max_deg);
        let mut e = vec![0u16; s.nvars()];
        for _ in 0..deg {
            e[rng.gen_range(0..s.nvars())] += 1;
        }
        p.add_term(Monomial::from_exponents(e), C::from_int(rng.gen_range(-3..=3)));
    }
    p
}

/// Random ℓ-cochain; each ω_I carries an independent random polynomial.
pub fn random_cochain<C: Scalar, R: Rng>(rng: &mut R, s: RingSpec, ell: usize, terms: usize, max_deg: u32) -> Cochain<C> {
    let mut c = Cochain::zero(s, ell);
    for i in ExtIndex::all_of_len(s.n, ell) {
        if rng.gen_bool(0.6) {
            let t = rng.gen_range(1..=terms);
            c.add_part(i, random_polynomial(rng, s, t, max_deg));
        }
    }
    c
}

/// Random SO(n)-invariant ℓ-cochain: a sum of a few terms (product of invariant polynomials) ·
/// Φ_J or *Φ_J. The invariant polynomials used are r_ij, w_i and, when k ≥ n, the n×n minors.
pub fn random_invariant_cochain<C: Scalar, R: Rng>(rng: &mut R, s: RingSpec, ell: usize, terms: usize) -> Cochain<C> {
    let mut bases = Vec::new();
    if ell <= s.k.min(s.n) {
        for j in ExtIndex::all_of_len(s.k, ell) {
            bases.push(super::big_phi::<C>(s, &j).expect("valid J"));
        }
    }
    if ell <= s.n && s.n - ell <= s.k {
        for j in ExtIndex::all_of_len(s.k, s.n - ell) {
            bases.push(super::star_phi::<C>(s, &j).expect("valid J"));
        }
    }
    let mut gens: Vec<Polynomial<C>> = Vec::new();
    for i in 1..=s.k {
        gens.push(Polynomial::var(&Ring::Fock(s), s.w(i)));
        for j in i..=s.k {
            gens.push(crate::poly::r_gen(s, i, j).expect("valid indices"));
        }
    }
    if s.k >= s.n {
        let rows: Vec<usize> = (1..=s.n).collect();
        for cols in ExtIndex::all_of_len(s.k, s.n) {
            gens.push(crate::poly::minor(s, &rows, &cols.indices()).expect("valid minor"));
        }
    }
    let mut c = Cochain::zero(s, ell);
    if bases.is_empty() {
        return c;
    }
    for _ in 0..terms {
        let mut f = Polynomial::constant(&Ring::Fock(s), C::from_int(rng.gen_range(-3..=3)));
        for _ in 0..rng.gen_range(0..=2) {
            f = &f * &gens[rng.gen_range(0..gens.len())];
        }
        let b = &bases[rng.gen_range(0..bases.len())];
        c = c.add(&b.mul_poly(&f));
    }
    c
}
