use proptest::prelude::*;

use super::*;
use crate::poly::Ring;

const CAP: usize = usize::MAX;

fn spec(n: usize, k: usize) -> RingSpec {
    RingSpec::new(n, k).unwrap()
}

fn binom(n: u64, r: u64) -> u64 {
    if r > n {
        return 0;
    }
    (0..r).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

fn line() -> KoszulSpec {
    let ring = Ring::free(vec!["x".into()], vec![1]).unwrap();
    let x = Poly::var(&ring, 0);
    KoszulSpec::new(ring, vec![x]).unwrap()
}

#[test]
fn koszul_of_a_single_variable() {
    let k = line();
    assert_eq!(koszul_cohomology_dims(&k, 0, 4, CAP).unwrap(), vec![0; 5]);
    assert_eq!(koszul_cohomology_dims(&k, 1, 4, CAP).unwrap(), vec![1, 0, 0, 0, 0]);
}

#[test]
fn k_plus_cohomology() {
    let k = KoszulSpec::k_plus(2).unwrap();
    for ell in 0..2 {
        assert_eq!(koszul_cohomology_dims(&k, ell, 6, CAP).unwrap(), vec![0; 7]);
    }
    let top = koszul_cohomology_dims(&k, 2, 6, CAP).unwrap();
    for d in 0..=6u64 {
        let want = if d % 2 == 0 { binom(d / 2 + 2, 2) } else { 0 };
        assert_eq!(top[d as usize] as u64, want, "degree {d}");
    }
}

#[test]
fn regularity_examples() {
    let ring = Ring::free(vec!["w".into()], vec![1]).unwrap();
    let w = Poly::var(&ring, 0);
    let single = KoszulSpec::new(ring.clone(), vec![w.clone()]).unwrap();
    assert!(regular_sequence_check(&single, 8, CAP).unwrap().regular());
    let twice = KoszulSpec::new(ring, vec![w.clone(), w]).unwrap();
    let rep = regular_sequence_check(&twice, 4, CAP).unwrap();
    assert_eq!(rep.first_failure(), Some((2, 1)));
    assert!(regular_sequence_check(&KoszulSpec::model_a(spec(2, 2)).unwrap(), 6, CAP).unwrap().regular());
}

#[test]
fn hilbert_examples() {
    assert_eq!(ci_hilbert(&[2, 1], &[3], 6).unwrap(), vec![1, 1, 2, 1, 2, 1, 2]);
    assert_eq!(ci_hilbert(&[1, 1], &[2], 5).unwrap(), vec![1, 2, 2, 2, 2, 2]);
    assert_eq!(ci_hilbert(&[1, 1, 1], &[], 3).unwrap(), vec![1, 3, 6, 10]);
    assert!(matches!(ci_hilbert(&[1], &[1, 1], 3), Err(Error::NegativeCoefficient { degree: 1 })));
}

#[test]
fn quotient_dims_examples() {
    let a11 = KoszulSpec::model_a(spec(1, 1)).unwrap();
    assert_eq!(ideal_quotient_dims(&a11, 6, CAP).unwrap(), vec![1, 2, 2, 2, 2, 2, 2]);
    let km = KoszulSpec::k_minus(2).unwrap();
    let want: Vec<usize> = ci_hilbert(&[2, 2, 2, 1, 1], &[3, 3], 6).unwrap().into_iter().map(|x| x as usize).collect();
    assert_eq!(ideal_quotient_dims(&km, 6, CAP).unwrap(), want);
    let a23 = KoszulSpec::model_a(spec(2, 3)).unwrap();
    let want: Vec<usize> = ci_hilbert(&[1; 9], &[2, 2], 4).unwrap().into_iter().map(|x| x as usize).collect();
    assert_eq!(ideal_quotient_dims(&a23, 4, CAP).unwrap(), want);
}

#[test]
fn empty_sequence_gives_the_free_ring() {
    let k = KoszulSpec::new(Ring::invariant(2).unwrap(), vec![]).unwrap();
    let want: Vec<usize> = ci_hilbert(&[2, 2, 2, 1, 1], &[], 6).unwrap().into_iter().map(|x| x as usize).collect();
    assert_eq!(ideal_quotient_dims(&k, 6, CAP).unwrap(), want);
    assert_eq!(koszul_cohomology_dims(&k, 0, 6, CAP).unwrap(), want);
}

#[test]
fn class_independence_examples() {
    let km = KoszulSpec::k_minus(1).unwrap();
    let ring = km.ring().clone();
    for d in 0..=5 {
        let mut ex = vec![0u16; 2];
        ex[what(1, 1)] = d as u16;
        let c = Poly::monomial(&ring, Monomial::from_exponents(ex), one());
        assert!(quotient_class_independence(&km, &[c], d, CAP).unwrap().independent());
    }
    let rw = Poly::monomial(&ring, Monomial::var(2, rhat(1, 1, 1)).mul_var(what(1, 1)), one());
    assert!(!quotient_class_independence(&km, std::slice::from_ref(&rw), 3, CAP).unwrap().independent());
    assert!(matches!(quotient_class_independence(&km, &[rw], 2, CAP), Err(Error::MixedDegrees)));

    let s = spec(1, 2);
    let a = KoszulSpec::model_a(s).unwrap();
    let det = det_plus(s).unwrap();
    for deg in 0..=3 {
        let classes: Vec<Poly> = w_monomials(s, 2, deg).iter().map(|m| det.mul_monomial(m, &one())).collect();
        assert!(quotient_class_independence(&a, &classes, deg + 1, CAP).unwrap().independent());
    }
}

fn off_diagonal_then_q(s: RingSpec) -> (Vec<Poly>, Vec<Poly>) {
    let ring = Ring::Fock(s);
    let mut z = Vec::new();
    for alpha in 1..=s.n {
        for i in 1..=s.k {
            if alpha != i {
                z.push(Poly::var(&ring, s.z(alpha, i)));
            }
        }
    }
    let q: Vec<Poly> = (1..=s.n).map(|a| q_gen(s, a).unwrap()).collect();
    (z, q)
}

#[test]
fn permuted_sequences_stay_regular() {
    for (n, k) in [(1, 2), (2, 2)] {
        let s = spec(n, k);
        let (z, q) = off_diagonal_then_q(s);
        let printed: Vec<Poly> = z.iter().chain(q.iter()).cloned().collect();
        let permuted: Vec<Poly> = q.iter().chain(z.iter()).cloned().collect();
        for seq in [printed, permuted] {
            let ks = KoszulSpec::new(Ring::Fock(s), seq).unwrap();
            assert!(regular_sequence_check(&ks, 4, CAP).unwrap().regular());
        }
    }
    for k in [2, 3] {
        let ring = Ring::invariant(k).unwrap();
        let mut r = Vec::new();
        for i in 1..=k {
            for j in i + 1..=k {
                r.push(Poly::var(&ring, rhat(k, i, j)));
            }
        }
        let c: Vec<Poly> = (1..=k).map(|j| c_hat(k, j)).collect();
        let printed: Vec<Poly> = r.iter().chain(c.iter()).cloned().collect();
        let permuted: Vec<Poly> = c.iter().chain(r.iter()).cloned().collect();
        for seq in [printed, permuted] {
            let ks = KoszulSpec::new(ring.clone(), seq).unwrap();
            assert!(regular_sequence_check(&ks, 5, CAP).unwrap().regular(), "k={k}");
        }
    }
}

#[test]
fn regular_sequences_are_acyclic_below_the_top() {
    for ks in [KoszulSpec::k_minus(2).unwrap(), KoszulSpec::model_a(spec(2, 2)).unwrap()] {
        let m = ks.sequence().len();
        assert!(regular_sequence_check(&ks, 5, CAP).unwrap().regular());
        for ell in 0..m {
            assert!(koszul_cohomology_dims(&ks, ell, 5, CAP).unwrap().iter().all(|&x| x == 0));
        }
        let top = koszul_cohomology_dims(&ks, m, 5, CAP).unwrap();
        assert_eq!(top, ideal_quotient_dims(&ks, 5, CAP).unwrap());
    }
}

#[test]
fn spec_rejects_bad_sequences() {
    let ring = Ring::invariant(1).unwrap();
    let mixed = &Poly::var(&ring, 0) + &Poly::var(&ring, 1);
    assert!(KoszulSpec::new(ring.clone(), vec![mixed]).is_err());
    assert!(KoszulSpec::new(ring.clone(), vec![Poly::zero(&ring)]).is_err());
    let other = Poly::var(&Ring::invariant(2).unwrap(), 0);
    assert!(matches!(KoszulSpec::new(ring, vec![other]), Err(Error::RingMismatch { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// For variables of degree 1 and a regular sequence of coordinate powers x_i^{e_i}, the
    /// quotient has the complete-intersection series.
    #[test]
    fn coordinate_powers_are_complete_intersections(exps in proptest::collection::vec(1u16..4, 1..4)) {
        let nv = exps.len();
        let names = (0..nv).map(|i| format!("x{i}")).collect();
        let ring = Ring::free(names, vec![1; nv]).unwrap();
        let seq: Vec<Poly> = exps
            .iter()
            .enumerate()
            .map(|(i, &e)| {
                let mut ex = vec![0u16; nv];
                ex[i] = e;
                Poly::monomial(&ring, Monomial::from_exponents(ex), one())
            })
            .collect();
        let ks = KoszulSpec::new(ring, seq).unwrap();
        prop_assert!(regular_sequence_check(&ks, 5, CAP).unwrap().regular());
        let degs: Vec<u32> = exps.iter().map(|&e| e as u32).collect();
        let want: Vec<usize> = ci_hilbert(&vec![1; nv], &degs, 5).unwrap().into_iter().map(|x| x as usize).collect();
        prop_assert_eq!(ideal_quotient_dims(&ks, 5, CAP).unwrap(), want);
    }
}
