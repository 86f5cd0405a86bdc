use super::*;
use crate::linalg::Indexer;
use crate::poly::RingSpec;
use crate::Rational;

fn spec(n: usize, k: usize) -> RingSpec {
    RingSpec::new(n, k).unwrap()
}

fn one() -> Rational {
    Rational::from_integer(1.into())
}

#[test]
fn free_differential_matches_ambient() {
    for (n, k) in [(2, 1), (3, 1), (3, 2), (4, 2), (4, 3)] {
        let s = spec(n, k);
        let model = FreeModel::new(s, Part::Full).unwrap();
        for ell in 0..=n {
            for degree in 0..=5 {
                for v in model.basis(ell, degree).unwrap() {
                    let amb = model.evaluate_vec(&v).unwrap();
                    let (up, down) = model.split_diff(&v);
                    let want_up = amb.diff(DiffMode::D2);
                    let want_down = amb.diff(DiffMode::Dm2);
                    let got_up = with_ell(model.evaluate_vec(&up).unwrap(), s, ell + 1);
                    let got_down = with_ell(model.evaluate_vec(&down).unwrap(), s, ell + 1);
                    assert_eq!(got_up, want_up, "d2 at n={n} k={k} {:?}", v[0].0);
                    assert_eq!(got_down, want_down, "d-2 at n={n} k={k} {:?}", v[0].0);
                }
            }
        }
    }
}

fn with_ell(c: Cochain<Rational>, s: RingSpec, ell: usize) -> Cochain<Rational> {
    if c.is_zero() {
        Cochain::zero(s, ell)
    } else {
        c
    }
}

#[test]
fn free_block_keys_are_preserved() {
    let s = spec(4, 2);
    let model = FreeModel::new(s, Part::Full).unwrap();
    for ell in 0..=4 {
        for degree in 0..=4 {
            for v in model.basis(ell, degree).unwrap() {
                let key = model.block_key(&v[0].0);
                let (img, _) = model.apply(ell, &v);
                for (c, _) in img {
                    assert_eq!(model.block_key(&c), key);
                }
            }
        }
    }
}

#[test]
fn plus_part_of_rank_one_in_three_variables() {
    let model = FreeModel::new(spec(3, 1), Part::Plus).unwrap();
    let cx = GradedComplex::build(&model, 11, usize::MAX).unwrap();
    let cells = cx.direct_cohomology(1, 5, 2).unwrap();
    let dims: Vec<usize> = cells.iter().map(|c| c.dim()).collect();
    assert_eq!(dims, vec![0, 1, 0, 1, 0, 1]);
    assert!(cells.iter().all(|c| c.stabilized()));
}

/// A two-term complex Q → Q in degrees 0 → 2 with the map an isomorphism, plus an isolated
/// class of degree 1.
struct Toy;

impl CochainModel for Toy {
    type Coord = (usize, u32);

    fn top(&self) -> usize {
        1
    }

    fn coord_degree(&self, c: &(usize, u32)) -> u32 {
        c.1
    }

    fn block_key(&self, _: &(usize, u32)) -> BlockKey {
        vec![0]
    }

    fn basis(&self, ell: usize, degree: u32) -> crate::Result<Vec<Vec<((usize, u32), Rational)>>> {
        Ok(match (ell, degree) {
            (0, 0) | (1, 2) | (1, 1) => vec![vec![((ell, degree), one())]],
            _ => vec![],
        })
    }

    fn apply(&self, ell: usize, v: &[((usize, u32), Rational)]) -> (Vec<((usize, u32), Rational)>, Vec<((usize, u32), Rational)>) {
        if ell == 0 {
            let img = vec![((1, 2), v[0].1.clone())];
            (img.clone(), img)
        } else {
            (vec![], vec![])
        }
    }
}

#[test]
fn toy_complex_cohomology_and_pages() {
    let cx = GradedComplex::build(&Toy, 8, usize::MAX).unwrap();
    let h0: Vec<usize> = cx.direct_cohomology(0, 3, 1).unwrap().iter().map(|c| c.dim()).collect();
    let h1: Vec<usize> = cx.direct_cohomology(1, 3, 1).unwrap().iter().map(|c| c.dim()).collect();
    assert_eq!(h0, vec![0, 0, 0, 0]);
    assert_eq!(h1, vec![0, 1, 0, 0]);
    assert_eq!(cx.e1_dim(1, 2).unwrap(), 0);
    assert_eq!(cx.e1_dim(1, 1).unwrap(), 1);
    assert_eq!(cx.page_dim(1, 2, 1).unwrap(), Some(0));
    assert_eq!(cx.page_dim(0, 0, 1).unwrap(), Some(0));
}

#[test]
fn first_page_from_leading_part_agrees_with_page_formula() {
    let model = FreeModel::new(spec(3, 2), Part::Full).unwrap();
    let cx = GradedComplex::build(&model, 7, usize::MAX).unwrap();
    for ell in 0..=3 {
        for d in 0..=5 {
            assert_eq!(
                cx.page_dim(ell, d, 1).unwrap(),
                Some(cx.e1_dim(ell, d).unwrap()),
                "ell={ell} d={d}"
            );
        }
    }
}

#[test]
fn invariant_dim_examples() {
    assert_eq!(invariant_dim(spec(2, 1), 0, 0, usize::MAX).unwrap(), 1);
    assert_eq!(invariant_dim(spec(3, 1), 1, 1, usize::MAX).unwrap(), 1);
    assert_eq!(invariant_dim(spec(2, 1), 0, 2, usize::MAX).unwrap(), 2);
}

/// Brute-force oracle: joint kernel of every generator X_ab (not just adjacent ones) on the full
/// graded piece, with no parity restriction.
fn brute_invariant_dim(s: RingSpec, ell: usize, d: u32) -> usize {
    use crate::exterior::ExtIndex;
    use crate::linalg::SparseMatrix;
    use crate::poly::{monomials_of_degree, Polynomial, Ring, VarSet};
    let ring = Ring::Fock(s);
    let mut domain = Vec::new();
    for i in ExtIndex::all_of_len(s.n, ell) {
        for m in monomials_of_degree(&ring, d, VarSet::All) {
            domain.push((i, m));
        }
    }
    let mut targets: Indexer<(usize, usize, ExtIndex, crate::poly::Monomial)> = Indexer::default();
    let mut trip = Vec::new();
    for (col, (i, m)) in domain.iter().enumerate() {
        let c = Cochain::single(s, *i, Polynomial::monomial(&ring, m.clone(), one()));
        for a in 1..=s.n {
            for b in a + 1..=s.n {
                for (ii, mm, x) in c.son_act(a, b).unwrap().terms() {
                    let r = targets.index(&(a, b, *ii, mm.clone()));
                    trip.push((r, col, x.clone()));
                }
            }
        }
    }
    let mat = SparseMatrix::from_triplets(targets.len().max(1), domain.len(), trip).unwrap();
    domain.len() - mat.rank()
}

#[test]
fn invariant_dim_matches_brute_force() {
    for (n, k) in [(1, 2), (2, 1), (2, 2), (3, 1), (3, 2)] {
        let s = spec(n, k);
        for ell in 0..=n {
            for d in 0..=3 {
                assert_eq!(
                    invariant_dim(s, ell, d, usize::MAX).unwrap(),
                    brute_invariant_dim(s, ell, d),
                    "n={n} k={k} ell={ell} d={d}"
                );
            }
        }
    }
}

#[test]
fn families_span_the_invariants() {
    for (n, k) in [(2, 1), (3, 1), (3, 2)] {
        let s = spec(n, k);
        for ell in 0..=n {
            for d in 0..=4 {
                let plus = pm_basis_vectors(Part::Plus, ell, d, s).unwrap();
                let minus = pm_basis_vectors(Part::Minus, ell, d, s).unwrap();
                let rp = family_rank(&plus, usize::MAX).unwrap();
                let rm = family_rank(&minus, usize::MAX).unwrap();
                assert_eq!(rp, plus.len());
                assert_eq!(rm, minus.len());
                assert_eq!(rp + rm, invariant_dim(s, ell, d, usize::MAX).unwrap(), "n={n} k={k} ell={ell} d={d}");
            }
        }
    }
}

#[test]
fn pm_family_edge_cases() {
    let s = spec(3, 2);
    let top = pm_basis_vectors(Part::Plus, 2, 2, s).unwrap();
    assert_eq!(top, vec![phik::<Rational>(s).unwrap()]);
    assert!(pm_basis_vectors(Part::Plus, 3, 5, s).unwrap().is_empty());
    let vol = pm_basis_vectors(Part::Minus, 3, 0, s).unwrap();
    assert_eq!(vol.len(), 1);
    assert_eq!(vol[0].parts().count(), 1);
}

#[test]
fn free_and_kernel_models_agree() {
    for (n, k) in [(2, 1), (3, 1)] {
        let s = spec(n, k);
        for part in [Part::Plus, Part::Minus] {
            let free = GradedComplex::build(&FreeModel::new(s, part).unwrap(), 8, usize::MAX).unwrap();
            let kern = GradedComplex::build(&KernelModel::new(s, part, usize::MAX), 8, usize::MAX).unwrap();
            for ell in 0..=n {
                for d in 0..=8 {
                    assert_eq!(free.dim(ell, d), kern.dim(ell, d), "basis n={n} k={k} {part:?} ell={ell} d={d}");
                }
                let a = free.direct_cohomology(ell, 2, 2).unwrap();
                let b = kern.direct_cohomology(ell, 2, 2).unwrap();
                assert_eq!(a, b, "n={n} k={k} {part:?} ell={ell}");
                for d in 0..=4 {
                    assert_eq!(free.e1_dim(ell, d).unwrap(), kern.e1_dim(ell, d).unwrap());
                }
            }
        }
    }
}

#[test]
fn quotient_invariants_of_the_trivial_group() {
    use crate::poly::q_gen;
    // n = 1: P_1 = Q[z, w] and (q) = (zw); the quotient has dims 1, 2, 2, 2.
    let s = spec(1, 1);
    let space = InvariantSpace::new(s, usize::MAX);
    let q = vec![q_gen::<Rational>(s, 1).unwrap()];
    let dims: Vec<usize> = (0..4).map(|d| space.quotient_invariant_dim(&q, d).unwrap()).collect();
    assert_eq!(dims, vec![1, 2, 2, 2]);
}

#[test]
fn quotient_invariants_match_invariants_minus_ideal() {
    use crate::poly::{q_gen, Ring};
    // (P/I)^K = P^K / I^K; compare with dim P^K_d − dim (I_d ∩ P^K_d) computed from explicit bases.
    let s = spec(2, 2);
    let space = InvariantSpace::new(s, usize::MAX);
    let q: Vec<_> = (1..=2).map(|a| q_gen::<Rational>(s, a).unwrap()).collect();
    let ring = Ring::Fock(s);
    for d in 0..=3 {
        let inv: Vec<Cochain<Rational>> = space
            .invariant_basis(0, d, Part::Full)
            .unwrap()
            .into_iter()
            .map(|v| {
                let mut c = Cochain::zero(s, 0);
                for ((i, m), x) in v {
                    c.add_term(i, m, x);
                }
                c
            })
            .collect();
        let mut ideal = Vec::new();
        if d >= 2 {
            for g in &q {
                for m in crate::poly::monomials_of_degree(&ring, d - 2, crate::poly::VarSet::All) {
                    let p = g.mul_monomial(&m, &one());
                    ideal.push(Cochain::single(s, crate::exterior::ExtIndex::empty(2), p));
                }
            }
        }
        let ri = global(&ideal);
        let rk = inv.len();
        let mut both = ideal.clone();
        both.extend(inv.iter().cloned());
        let rboth = global(&both);
        let expected = rk - (ri + rk - rboth);
        assert_eq!(space.quotient_invariant_dim(&q, d).unwrap(), expected, "d={d}");
    }
}

fn global(v: &[Cochain<Rational>]) -> usize {
    family_rank(v, usize::MAX).unwrap()
}

/// Koszul differential of e_T ⊗ m for the sequence `seq` in S_k, as (T ∪ t, monomial, coeff).
fn koszul_image(seq: &[crate::poly::Polynomial<Rational>], t_set: &crate::exterior::ExtIndex, m: &crate::poly::Monomial) -> Vec<(crate::exterior::ExtIndex, crate::poly::Monomial, Rational)> {
    use crate::exterior::{tuple_sign, TupleMode};
    let mut out = Vec::new();
    for (t, f) in seq.iter().enumerate() {
        let ts = tuple_sign(t_set, t + 1, TupleMode::Insert);
        if ts.is_zero() {
            continue;
        }
        for (fm, x) in f.terms() {
            out.push((ts.index, fm.mul(m), x.clone() * Rational::from_integer((ts.sign as i64).into())));
        }
    }
    out
}

fn normalize<K: Ord + Clone>(v: Vec<(K, Rational)>) -> Vec<(K, Rational)> {
    let mut acc: std::collections::BTreeMap<K, Rational> = std::collections::BTreeMap::new();
    for (k, x) in v {
        let e = acc.entry(k).or_insert_with(|| Rational::from_integer(0.into()));
        *e = e.clone() + x;
    }
    acc.into_iter().filter(|(_, x)| !num_traits::Zero::is_zero(x)).collect()
}

#[test]
fn graded_plus_complex_is_k_plus() {
    let s = spec(3, 2);
    let model = FreeModel::new(s, Part::Plus).unwrap();
    let seq = crate::koszul::KoszulSpec::k_plus(2).unwrap().sequence().to_vec();
    for ell in 0..=2 {
        for d in 0..=5 {
            for v in model.basis(ell, d).unwrap() {
                let (up, _) = model.split_diff(&v);
                let graded: Vec<_> = up.into_iter().map(|(c, x)| ((c.j, c.m), -x)).collect();
                let c = &v[0].0;
                let kz: Vec<_> = koszul_image(&seq, &c.j, &c.m).into_iter().map(|(j, m, x)| ((j, m), x)).collect();
                assert_eq!(normalize(graded), normalize(kz));
            }
        }
    }
}

#[test]
fn graded_minus_complex_is_k_minus_under_the_hodge_star() {
    use crate::exterior::hodge_star;
    for (n, k) in [(3, 2), (4, 3), (4, 2)] {
        let s = spec(n, k);
        let model = FreeModel::new(s, Part::Minus).unwrap();
        let seq = crate::koszul::KoszulSpec::k_minus(k).unwrap().sequence().to_vec();
        let psi = |j: &crate::exterior::ExtIndex| {
            let st = hodge_star(j);
            (st.index, st.sign as i64)
        };
        for ell in n - k..n {
            let mut level_sign: Option<i64> = None;
            for d in 0..=5 {
                for v in model.basis(ell, d).unwrap() {
                    let (up, _) = model.split_diff(&v);
                    let graded: Vec<_> = up
                        .into_iter()
                        .map(|(c, x)| {
                            let (t, sg) = psi(&c.j);
                            ((t, c.m), -x * Rational::from_integer(sg.into()))
                        })
                        .collect();
                    let c = &v[0].0;
                    let (t, sg) = psi(&c.j);
                    let kz: Vec<_> = koszul_image(&seq, &t, &c.m)
                        .into_iter()
                        .map(|(j, m, x)| ((j, m), x * Rational::from_integer(sg.into())))
                        .collect();
                    let (g, kz) = (normalize(graded), normalize(kz));
                    assert_eq!(g.len(), kz.len());
                    if g.is_empty() {
                        continue;
                    }
                    let ratio = if g[0].1 == kz[0].1 { 1 } else { -1 };
                    for (a, b) in g.iter().zip(&kz) {
                        assert_eq!(a.0, b.0);
                        assert_eq!(a.1, b.1.clone() * Rational::from_integer(ratio.into()));
                    }
                    assert_eq!(*level_sign.get_or_insert(ratio), ratio, "n={n} k={k} ell={ell}");
                }
            }
            // The Hodge sign of e_J absorbs the (−1)^{|J|−1} of the *Φ_J differential exactly.
            assert!(level_sign.unwrap_or(1) == 1, "n={n} k={k} ell={ell}");
        }
    }
}
