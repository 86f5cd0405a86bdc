//! The spanning families {m Φ_J} and {m *Φ_J}, and rank computations on ambient cochains.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::exterior::ExtIndex;
use crate::linalg::{rank_of_vectors_capped, Indexer};
use crate::poly::{monomials_of_degree, sk_evaluate, Monomial, Polynomial, Ring, RingSpec, VarSet};
use crate::Rational;

use super::complex::{BlockKey, CohomCell};
use super::kernel::term_block_key;
use super::{big_phi, star_phi, Cochain, FreeModel, GradedComplex, KernelModel, Part};

/// `{m Φ_J : |J| = ℓ}` (plus) or `{m *Φ_J : |J| = n − ℓ}` (minus) in polynomial degree d, with m
/// running over S_k-monomials of degree d − |J|. `Part::Full` returns both families.
pub fn pm_basis_vectors(part: Part, ell: usize, d: u32, s: RingSpec) -> Result<Vec<Cochain<Rational>>> {
    let mut out = Vec::new();
    if ell > s.n {
        return Ok(out);
    }
    let sk = Ring::Invariant { k: s.k };
    let mut family = |plus: bool, jlen: usize| -> Result<()> {
        if jlen > s.k || jlen > s.n || d < jlen as u32 {
            return Ok(());
        }
        let ms = monomials_of_degree(&sk, d - jlen as u32, VarSet::All);
        for j in ExtIndex::all_of_len(s.k, jlen) {
            let base = if plus { big_phi(s, &j)? } else { star_phi(s, &j)? };
            for m in &ms {
                let f = sk_evaluate(&Polynomial::monomial(&sk, m.clone(), Rational::from_integer(1.into())), s)?;
                out.push(base.mul_poly(&f));
            }
        }
        Ok(())
    };
    if part.includes_plus() {
        family(true, ell)?;
    }
    if part.includes_minus() {
        family(false, s.n - ell)?;
    }
    Ok(out)
}

/// Rank over ℚ of a family of cochains of one degree. Terms are split by block key, which
/// homogeneous invariant cochains never mix, so the rank is computed blockwise.
pub fn family_rank(cochains: &[Cochain<Rational>], cap: usize) -> Result<usize> {
    type BlockRows = (Indexer<(ExtIndex, Monomial)>, Vec<Vec<(usize, Rational)>>);
    let mut blocks: BTreeMap<BlockKey, BlockRows> = BTreeMap::new();
    for c in cochains {
        let s = c.spec();
        let mut pieces: BTreeMap<BlockKey, Vec<(usize, Rational)>> = BTreeMap::new();
        for (i, m, x) in c.terms() {
            let key = term_block_key(s, i, m);
            let (ix, _) = blocks.entry(key.clone()).or_insert_with(|| (Indexer::default(), Vec::new()));
            let col = ix.index(&(*i, m.clone()));
            pieces.entry(key).or_default().push((col, x.clone()));
        }
        if pieces.len() > 1 {
            // A cochain spread over several blocks: fall back to one global computation.
            return global_rank(cochains, cap);
        }
        for (key, mut v) in pieces {
            v.sort_by_key(|e| e.0);
            blocks.get_mut(&key).expect("block registered above").1.push(v);
        }
    }
    let mut total = 0;
    for (ix, vecs) in blocks.values() {
        total += rank_of_vectors_capped(ix.len(), vecs, cap)?;
    }
    Ok(total)
}

fn global_rank(cochains: &[Cochain<Rational>], cap: usize) -> Result<usize> {
    let mut ix: Indexer<(ExtIndex, Monomial)> = Indexer::default();
    let vecs: Vec<Vec<(usize, Rational)>> = cochains
        .iter()
        .map(|c| {
            let mut v: Vec<(usize, Rational)> = c.terms().map(|(i, m, x)| (ix.index(&(*i, m.clone())), x.clone())).collect();
            v.sort_by_key(|e| e.0);
            v
        })
        .collect();
    rank_of_vectors_capped(ix.len(), &vecs, cap)
}

/// The invariant complex of the given part truncated at `max_degree`: the free S_k presentation
/// when k < n, the joint-kernel presentation otherwise.
pub fn build_complex(s: RingSpec, part: Part, max_degree: u32, cap: usize) -> Result<GradedComplex> {
    if s.k < s.n {
        GradedComplex::build(&FreeModel::new(s, part)?, max_degree, cap)
    } else {
        GradedComplex::build(&KernelModel::new(s, part, cap), max_degree, cap)
    }
}

/// gr H^ℓ of the chosen part for each ℓ in `ells` and each degree ≤ `window`, with buffer
/// stabilization flags.
pub fn direct_cohomology_dims(
    s: RingSpec,
    part: Part,
    ells: &[usize],
    window: u32,
    buffer: u32,
    cap: usize,
) -> Result<Vec<CohomCell>> {
    if buffer < 2 || !buffer.is_multiple_of(2) {
        return Err(crate::Error::InvalidArgument(format!("buffer must be even and at least 2 (got {buffer})")));
    }
    let cx = build_complex(s, part, window + buffer + 4, cap)?;
    let mut out = Vec::new();
    for &ell in ells {
        out.extend(cx.direct_cohomology(ell, window, buffer)?);
    }
    Ok(out)
}
