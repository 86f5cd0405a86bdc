//! The invariant subcomplex cut out as the joint kernel of the so(n) generators.
//!
//! Invariants are found separately in each piece Λ^ℓ ⊗ Pol_z(a) of fixed column degrees
//! a = (a_1..a_k). The w-variables are SO(n)-invariant, so the full invariant space is the sum of
//! these pieces tensored with w-monomials. The sign changes diag(±1) in SO(n) force every row of an
//! invariant term ω_I ⊗ z^e to have the same parity of (degree in that row) + [row ∈ I]; the
//! search is restricted to such terms, and the common parity is the ι⊗ι sign (even ↦ +1). The
//! adjacent rotations X_{α,α+1} generate so(n), so their joint kernel suffices.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use crate::error::{Error, Result};
use crate::exterior::ExtIndex;
use crate::linalg::{rank_of_vectors_capped, Indexer, Rref};
use crate::poly::{monomials_in_vars, Monomial, Polynomial, Ring, RingSpec};
use crate::Rational;

use super::complex::{BlockKey, CochainModel};
use super::{iota_sign, Cochain, DiffMode, Part};

/// A basis element ω_I ⊗ m of Λ^ℓ ⊗ P_k.
pub type Term = (ExtIndex, Monomial);

type TermVec = Vec<(Term, Rational)>;

/// (ℓ, column degrees, row parity).
type CacheKey = (usize, Vec<u32>, u32);

fn one() -> Rational {
    Rational::from_integer(1.into())
}

/// All vectors a ∈ ℕ^k with |a| = total.
fn compositions(k: usize, total: u32) -> Vec<Vec<u32>> {
    if k == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(k - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// z-monomials whose degree in column i is a_i.
fn z_monomials(s: RingSpec, a: &[u32]) -> Vec<Monomial> {
    let nv = s.nvars();
    let unit = vec![1u32; nv];
    let mut acc = vec![Monomial::one(nv)];
    for (i, &ai) in a.iter().enumerate() {
        let col: Vec<usize> = (1..=s.n).map(|alpha| s.z(alpha, i + 1)).collect();
        let ms = monomials_in_vars(nv, &col, &unit, ai);
        acc = acc.iter().flat_map(|x| ms.iter().map(move |m| x.mul(m))).collect();
    }
    acc
}

fn row_parity(s: RingSpec, index: &ExtIndex, m: &Monomial, alpha: usize) -> u32 {
    let deg: u32 = (1..=s.k).map(|i| m.exp(s.z(alpha, i)) as u32).sum();
    (deg + index.contains(alpha) as u32) % 2
}

/// `Some(parity)` if every row has the same parity.
fn common_parity(s: RingSpec, index: &ExtIndex, m: &Monomial) -> Option<u32> {
    let p = row_parity(s, index, m, 1);
    (2..=s.n).all(|alpha| row_parity(s, index, m, alpha) == p).then_some(p)
}

fn part_parities(part: Part) -> Vec<u32> {
    let mut out = Vec::new();
    if part.includes_plus() {
        out.push(0);
    }
    if part.includes_minus() {
        out.push(1);
    }
    out
}

/// Joint-kernel computations for one (n, k), with the z-part invariants cached.
pub struct InvariantSpace {
    spec: RingSpec,
    cap: usize,
    cache: RefCell<HashMap<CacheKey, Rc<Vec<TermVec>>>>,
}

impl InvariantSpace {
    pub fn new(spec: RingSpec, cap: usize) -> Self {
        InvariantSpace {
            spec,
            cap,
            cache: RefCell::new(HashMap::new()),
        }
    }

    pub fn spec(&self) -> RingSpec {
        self.spec
    }

    /// A basis of the invariants in Λ^ℓ ⊗ Pol_z(a) with the given row parity.
    pub fn z_invariants(&self, ell: usize, a: &[u32], parity: u32) -> Result<Rc<Vec<TermVec>>> {
        let key = (ell, a.to_vec(), parity);
        if let Some(v) = self.cache.borrow().get(&key) {
            return Ok(v.clone());
        }
        let v = Rc::new(self.compute_z_invariants(ell, a, parity)?);
        self.cache.borrow_mut().insert(key, v.clone());
        Ok(v)
    }

    fn compute_z_invariants(&self, ell: usize, a: &[u32], parity: u32) -> Result<Vec<TermVec>> {
        let s = self.spec;
        if ell > s.n {
            return Ok(Vec::new());
        }
        let mut domain: Vec<Term> = Vec::new();
        for index in ExtIndex::all_of_len(s.n, ell) {
            for m in z_monomials(s, a) {
                if common_parity(s, &index, &m) == Some(parity) {
                    domain.push((index, m));
                }
            }
        }
        if domain.is_empty() || s.n == 1 {
            return Ok(domain.into_iter().map(|t| vec![(t, one())]).collect());
        }
        let ring = Ring::Fock(s);
        let mut targets: Indexer<(usize, Term)> = Indexer::default();
        let mut rows: Vec<Vec<(usize, Rational)>> = Vec::new();
        for (col, (index, m)) in domain.iter().enumerate() {
            let c = Cochain::single(s, *index, Polynomial::monomial(&ring, m.clone(), one()));
            for alpha in 1..s.n {
                for (i, mm, x) in c.son_act(alpha, alpha + 1)?.terms() {
                    let r = targets.index(&(alpha, (*i, mm.clone())));
                    if r == rows.len() {
                        rows.push(Vec::new());
                    }
                    rows[r].push((col, x.clone()));
                }
            }
        }
        let order: Vec<usize> = (0..domain.len()).collect();
        let kernel = Rref::<Rational>::compute(domain.len(), &rows, &order, self.cap)?.kernel();
        Ok(kernel
            .into_iter()
            .map(|v| v.into_iter().map(|(c, x)| (domain[c].clone(), x)).collect())
            .collect())
    }

    /// dim of the invariants in the given part of Λ^ℓ ⊗ P_k(d).
    pub fn invariant_dim(&self, ell: usize, d: u32, part: Part) -> Result<usize> {
        let s = self.spec;
        if ell > s.n {
            return Ok(0);
        }
        let mut total = 0;
        for zdeg in 0..=d {
            let wcount = w_monomials(s, d - zdeg).len();
            if wcount == 0 {
                continue;
            }
            for a in compositions(s.k, zdeg) {
                for p in part_parities(part) {
                    total += self.z_invariants(ell, &a, p)?.len() * wcount;
                }
            }
        }
        Ok(total)
    }

    /// A basis of the invariants in the given part of Λ^ℓ ⊗ P_k(d).
    pub fn invariant_basis(&self, ell: usize, d: u32, part: Part) -> Result<Vec<TermVec>> {
        let s = self.spec;
        let mut out = Vec::new();
        if ell > s.n {
            return Ok(out);
        }
        for zdeg in 0..=d {
            let ws = w_monomials(s, d - zdeg);
            for a in compositions(s.k, zdeg) {
                for p in part_parities(part) {
                    let zs = self.z_invariants(ell, &a, p)?;
                    for w in &ws {
                        for v in zs.iter() {
                            out.push(v.iter().map(|((i, m), x)| ((*i, m.mul(w)), x.clone())).collect());
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// dim of (P_k / (gens))^{SO(n)} in degree d, as the space of x with X·x ∈ I_d for every
    /// generator X, modulo I_d. The generators must be homogeneous.
    pub fn quotient_invariant_dim(&self, gens: &[Polynomial<Rational>], d: u32) -> Result<usize> {
        let s = self.spec;
        let ring = Ring::Fock(s);
        let nv = s.nvars();
        let mons = monomials_in_vars(nv, &(0..nv).collect::<Vec<_>>(), &vec![1; nv], d);
        let mut ix: Indexer<Monomial> = Indexer::default();
        for m in &mons {
            ix.index(m);
        }
        let to_vec = |p: &Polynomial<Rational>, ix: &Indexer<Monomial>| -> Vec<(usize, Rational)> {
            let mut v: Vec<(usize, Rational)> = p
                .terms()
                .map(|(m, x)| (ix.get(m).expect("monomial outside the graded piece"), x.clone()))
                .collect();
            v.sort_by_key(|e| e.0);
            v
        };
        let mut ideal: Vec<Vec<(usize, Rational)>> = Vec::new();
        for g in gens {
            let Some(gd) = g.homogeneous_degree() else {
                return Err(Error::InvalidArgument("ideal generators must be homogeneous".into()));
            };
            if gd > d {
                continue;
            }
            for m in monomials_in_vars(nv, &(0..nv).collect::<Vec<_>>(), &vec![1; nv], d - gd) {
                ideal.push(to_vec(&g.mul_monomial(&m, &one()), &ix));
            }
        }
        let len = mons.len();
        let dim_i = rank_of_vectors_capped(len, &ideal, self.cap)?;
        let copies = s.n.saturating_sub(1);
        // The composite P_d → ⊕_X P_d / I_d has rank rank(X-images ∪ I^{copies}) − copies·dim I_d.
        let mut family: Vec<Vec<(usize, Rational)>> = Vec::new();
        for t in 0..copies {
            for v in &ideal {
                family.push(v.iter().map(|(c, x)| (c + t * len, x.clone())).collect());
            }
        }
        for m in &mons {
            let p = Polynomial::monomial(&ring, m.clone(), one());
            let mut img = Vec::new();
            for t in 0..copies {
                let xp = crate::poly::son_act(t + 1, t + 2, &p)?;
                img.extend(to_vec(&xp, &ix).into_iter().map(|(c, x)| (c + t * len, x)));
            }
            family.push(img);
        }
        let both = rank_of_vectors_capped(len * copies.max(1), &family, self.cap)?;
        let composite = both - copies * dim_i;
        Ok(len - composite - dim_i)
    }
}

fn w_monomials(s: RingSpec, d: u32) -> Vec<Monomial> {
    let nv = s.nvars();
    let ws: Vec<usize> = (1..=s.k).map(|i| s.w(i)).collect();
    monomials_in_vars(nv, &ws, &vec![1; nv], d)
}

/// dim over ℚ of the SO(n)-invariants in Λ^ℓ p* ⊗ P_k(d).
pub fn invariant_dim(spec: RingSpec, ell: usize, d: u32, cap: usize) -> Result<usize> {
    InvariantSpace::new(spec, cap).invariant_dim(ell, d, Part::Full)
}

/// Block key of an ambient term: ι⊗ι sign, then (z-degree − w-degree) per vector index.
pub fn term_block_key(s: RingSpec, index: &ExtIndex, m: &Monomial) -> BlockKey {
    let mut key = vec![iota_sign(s, index, m) as i32];
    for i in 1..=s.k {
        let z: i32 = (1..=s.n).map(|alpha| m.exp(s.z(alpha, i)) as i32).sum();
        key.push(z - m.exp(s.w(i)) as i32);
    }
    key
}

/// The invariant complex presented by joint-kernel bases.
pub struct KernelModel {
    space: InvariantSpace,
    part: Part,
}

impl KernelModel {
    pub fn new(spec: RingSpec, part: Part, cap: usize) -> Self {
        KernelModel {
            space: InvariantSpace::new(spec, cap),
            part,
        }
    }

    fn to_cochain(&self, ell: usize, v: &[(Term, Rational)]) -> Cochain<Rational> {
        let s = self.space.spec;
        let mut c = Cochain::zero(s, ell);
        for ((i, m), x) in v {
            c.add_term(*i, m.clone(), x.clone());
        }
        c
    }
}

fn terms_of(c: &Cochain<Rational>) -> TermVec {
    c.terms().map(|(i, m, x)| ((*i, m.clone()), x.clone())).collect()
}

impl CochainModel for KernelModel {
    type Coord = Term;

    fn top(&self) -> usize {
        self.space.spec.n
    }

    fn coord_degree(&self, c: &Term) -> u32 {
        c.1.total_degree()
    }

    fn block_key(&self, c: &Term) -> BlockKey {
        term_block_key(self.space.spec, &c.0, &c.1)
    }

    fn basis(&self, ell: usize, degree: u32) -> Result<Vec<TermVec>> {
        self.space.invariant_basis(ell, degree, self.part)
    }

    fn apply(&self, ell: usize, v: &[(Term, Rational)]) -> (TermVec, TermVec) {
        let c = self.to_cochain(ell, v);
        let up = c.diff(DiffMode::D2);
        let full = up.add(&c.diff(DiffMode::Dm2));
        (terms_of(&full), terms_of(&up))
    }
}
