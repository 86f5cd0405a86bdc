//! Graded Koszul complexes over the polynomial rings of the crate, with regular-sequence
//! certificates, complete-intersection Hilbert series and quotient dimensions.
//!
//! K^ℓ = Λ^ℓ(R^m) ⊗ R with d(e_S ⊗ g) = Σ_{t∉S} e_t ∧ e_S ⊗ f_t g. The internal degree of
//! e_S ⊗ g is deg g + Σ_{t∉S} deg f_t and is preserved by d. Tables at level ℓ report the
//! internal degree minus Σ_{t>ℓ} deg f_t, which is deg g whenever the sequence degrees are all
//! equal, and puts H^m at the degrees of R/(f) itself.

use crate::error::{Error, Result};
use crate::exterior::{tuple_sign, ExtIndex, TupleMode};
use crate::linalg::{rank_of_vectors_capped, Indexer};
use crate::poly::{minor, monomials_in_vars, monomials_of_degree, q_gen, rhat, what, Monomial, Polynomial, Ring, RingSpec, VarSet};
use crate::Rational;

type Poly = Polynomial<Rational>;
type Vector = Vec<(usize, Rational)>;

fn one() -> Rational {
    Rational::from_integer(1.into())
}

#[derive(Debug, Clone, PartialEq)]
pub struct KoszulSpec {
    ring: Ring,
    sequence: Vec<Poly>,
    degrees: Vec<u32>,
}

impl KoszulSpec {
    /// Every element must be nonzero, homogeneous and live in `ring`.
    pub fn new(ring: Ring, sequence: Vec<Poly>) -> Result<Self> {
        let mut degrees = Vec::with_capacity(sequence.len());
        for (t, f) in sequence.iter().enumerate() {
            if f.ring() != &ring {
                return Err(Error::RingMismatch {
                    left: ring.to_string(),
                    right: f.ring().to_string(),
                });
            }
            match f.homogeneous_degree() {
                Some(d) => degrees.push(d),
                None => {
                    return Err(Error::InvalidArgument(format!(
                        "sequence element {} is zero or inhomogeneous",
                        t + 1
                    )))
                }
            }
        }
        Ok(KoszulSpec { ring, sequence, degrees })
    }

    /// (q_1..q_n) in P_k.
    pub fn model_a(s: RingSpec) -> Result<Self> {
        let seq = (1..=s.n).map(|a| q_gen(s, a)).collect::<Result<Vec<_>>>()?;
        Self::new(Ring::Fock(s), seq)
    }

    /// (ŵ_1..ŵ_k) in S_k.
    pub fn k_plus(k: usize) -> Result<Self> {
        let ring = Ring::invariant(k)?;
        let seq = (1..=k).map(|i| Poly::var(&ring, what(k, i))).collect();
        Self::new(ring, seq)
    }

    /// (ĉ_1..ĉ_k) in S_k, ĉ_j = Σ_i ŵ_i r̂_ij.
    pub fn k_minus(k: usize) -> Result<Self> {
        let ring = Ring::invariant(k)?;
        let seq = (1..=k).map(|j| c_hat(k, j)).collect();
        Self::new(ring, seq)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn sequence(&self) -> &[Poly] {
        &self.sequence
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// The same ring with the sequence replaced.
    pub fn with_sequence(&self, sequence: Vec<Poly>) -> Result<Self> {
        Self::new(self.ring.clone(), sequence)
    }

    fn len(&self) -> usize {
        self.sequence.len()
    }
}

/// ĉ_j = Σ_i ŵ_i r̂_ij in S_k.
pub fn c_hat(k: usize, j: usize) -> Poly {
    let ring = Ring::Invariant { k };
    let nv = ring.nvars();
    let mut out = Poly::zero(&ring);
    for i in 1..=k {
        let r = rhat(k, i.min(j), i.max(j));
        out.add_term(Monomial::var(nv, what(k, i)).mul_var(r), one());
    }
    out
}

/// The determinant of the leading n × n block of z, as an element of P_k (k ≥ n).
pub fn det_plus(s: RingSpec) -> Result<Poly> {
    let idx: Vec<usize> = (1..=s.n).collect();
    minor(s, &idx, &idx)
}

/// Monomials of a graded piece with a lookup index.
struct Piece {
    index: Indexer<Monomial>,
}

impl Piece {
    fn new(ring: &Ring, d: i64) -> Self {
        let mut index = Indexer::default();
        if d >= 0 {
            for m in monomials_of_degree(ring, d as u32, VarSet::All) {
                index.index(&m);
            }
        }
        Piece { index }
    }

    fn len(&self) -> usize {
        self.index.len()
    }

    fn monomials(&self) -> &[Monomial] {
        self.index.keys()
    }

    fn vector(&self, p: &Poly, offset: usize) -> Vector {
        let mut v: Vector = p
            .terms()
            .map(|(m, x)| (offset + self.index.get(m).expect("term outside the graded piece"), x.clone()))
            .collect();
        v.sort_by_key(|e| e.0);
        v
    }
}

/// Spanning vectors of I_d = (f_1..f_t)_d inside the degree-d piece.
fn ideal_vectors(ring: &Ring, gens: &[Poly], degrees: &[u32], d: i64, piece: &Piece) -> Vec<Vector> {
    let mut out = Vec::new();
    for (f, &fd) in gens.iter().zip(degrees) {
        let rest = d - fd as i64;
        if rest < 0 {
            continue;
        }
        for m in monomials_of_degree(ring, rest as u32, VarSet::All) {
            out.push(piece.vector(&f.mul_monomial(&m, &one()), 0));
        }
    }
    out
}

fn ideal_dim(spec: &KoszulSpec, upto: usize, d: i64, cap: usize) -> Result<usize> {
    let piece = Piece::new(&spec.ring, d);
    let vecs = ideal_vectors(&spec.ring, &spec.sequence[..upto], &spec.degrees[..upto], d, &piece);
    rank_of_vectors_capped(piece.len(), &vecs, cap)
}

/// The chain group K^ℓ at internal degree s: pairs (S, g-monomial).
fn chain_basis(spec: &KoszulSpec, ell: usize, s: i64) -> Vec<(ExtIndex, Monomial)> {
    let m = spec.len();
    let mut out = Vec::new();
    if ell > m {
        return out;
    }
    for set in ExtIndex::all_of_len(m, ell) {
        let shift: i64 = (1..=m).filter(|t| !set.contains(*t)).map(|t| spec.degrees[t - 1] as i64).sum();
        let rest = s - shift;
        if rest < 0 {
            continue;
        }
        for g in monomials_of_degree(&spec.ring, rest as u32, VarSet::All) {
            out.push((set, g));
        }
    }
    out
}

/// Rank of d: K^ℓ_s → K^{ℓ+1}_s.
fn koszul_rank(spec: &KoszulSpec, ell: usize, s: i64, cap: usize) -> Result<usize> {
    let src = chain_basis(spec, ell, s);
    if src.is_empty() || ell >= spec.len() {
        return Ok(0);
    }
    let mut target: Indexer<(ExtIndex, Monomial)> = Indexer::default();
    let mut vecs = Vec::with_capacity(src.len());
    for (set, g) in &src {
        let mut v: Vector = Vec::new();
        for t in 1..=spec.len() {
            let ts = tuple_sign(set, t, TupleMode::Insert);
            if ts.is_zero() {
                continue;
            }
            let sign = Rational::from_integer((ts.sign as i64).into());
            for (m, x) in spec.sequence[t - 1].terms() {
                let c = target.index(&(ts.index, m.mul(g)));
                v.push((c, x.clone() * sign.clone()));
            }
        }
        v.sort_by_key(|e| e.0);
        vecs.push(v);
    }
    rank_of_vectors_capped(target.len(), &vecs, cap)
}

/// Degree shift between internal and reported degrees at level ℓ.
fn report_shift(spec: &KoszulSpec, ell: usize) -> i64 {
    spec.degrees.iter().skip(ell).map(|&d| d as i64).sum()
}

/// dim H^ℓ of the Koszul complex at each reported degree 0..=window.
pub fn koszul_cohomology_dims(spec: &KoszulSpec, ell: usize, window: u32, cap: usize) -> Result<Vec<usize>> {
    if ell > spec.len() {
        return Ok(vec![0; window as usize + 1]);
    }
    let shift = report_shift(spec, ell);
    (0..=window as i64)
        .map(|d| {
            let s = d + shift;
            let dim = chain_basis(spec, ell, s).len();
            let out = koszul_rank(spec, ell, s, cap)?;
            let inc = if ell == 0 { 0 } else { koszul_rank(spec, ell - 1, s, cap)? };
            Ok(dim - out - inc)
        })
        .collect()
}

/// Injectivity data for multiplication by one sequence element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementCertificate {
    /// 1-based position in the sequence.
    pub position: usize,
    pub degree: u32,
    /// dim ker(f_t : (R/I)_{s−deg f_t} → (R/I)_s) for s = 0..=window.
    pub kernel_dims: Vec<usize>,
    /// The first target degree with a nonzero kernel.
    pub first_failure: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularityReport {
    pub window: u32,
    pub elements: Vec<ElementCertificate>,
}

impl RegularityReport {
    /// True if every element is injective on its quotient through the window.
    pub fn regular(&self) -> bool {
        self.elements.iter().all(|e| e.first_failure.is_none())
    }

    /// The first failing element and degree.
    pub fn first_failure(&self) -> Option<(usize, u32)> {
        self.elements.iter().find_map(|e| e.first_failure.map(|d| (e.position, d)))
    }
}

/// Degreewise check, through target degree `window`, that each f_t is a nonzerodivisor on
/// R/(f_1..f_{t−1}).
pub fn regular_sequence_check(spec: &KoszulSpec, window: u32, cap: usize) -> Result<RegularityReport> {
    let mut elements = Vec::with_capacity(spec.len());
    for t in 0..spec.len() {
        let delta = spec.degrees[t] as i64;
        let mut kernel_dims = Vec::with_capacity(window as usize + 1);
        for s in 0..=window as i64 {
            let src = s - delta;
            if src < 0 {
                kernel_dims.push(0);
                continue;
            }
            let src_piece = Piece::new(&spec.ring, src);
            let src_quot = src_piece.len() - ideal_dim(spec, t, src, cap)?;
            let piece = Piece::new(&spec.ring, s);
            let mut vecs = ideal_vectors(&spec.ring, &spec.sequence[..t], &spec.degrees[..t], s, &piece);
            let dim_i = rank_of_vectors_capped(piece.len(), &vecs, cap)?;
            for m in src_piece.monomials() {
                vecs.push(piece.vector(&spec.sequence[t].mul_monomial(m, &one()), 0));
            }
            let image = rank_of_vectors_capped(piece.len(), &vecs, cap)? - dim_i;
            kernel_dims.push(src_quot - image);
        }
        let first_failure = kernel_dims.iter().position(|&k| k > 0).map(|s| s as u32);
        elements.push(ElementCertificate {
            position: t + 1,
            degree: spec.degrees[t],
            kernel_dims,
            first_failure,
        });
    }
    Ok(RegularityReport { window, elements })
}

/// dim (R/(f))_d for d = 0..=window.
pub fn ideal_quotient_dims(spec: &KoszulSpec, window: u32, cap: usize) -> Result<Vec<usize>> {
    (0..=window as i64)
        .map(|d| Ok(Piece::new(&spec.ring, d).len() - ideal_dim(spec, spec.len(), d, cap)?))
        .collect()
}

/// Truncated power series ∏(1 − t^{deg f}) / ∏(1 − t^{deg v}).
pub fn ci_hilbert(var_degrees: &[u32], seq_degrees: &[u32], window: u32) -> Result<Vec<u64>> {
    let len = window as usize + 1;
    let mut series = vec![0i128; len];
    series[0] = 1;
    for &v in var_degrees {
        if v == 0 {
            return Err(Error::InvalidArgument("variables must have positive degree".into()));
        }
        // Multiply by 1/(1 − t^v).
        for i in v as usize..len {
            series[i] += series[i - v as usize];
        }
    }
    for &f in seq_degrees {
        if f == 0 {
            return Err(Error::InvalidArgument("sequence elements must have positive degree".into()));
        }
        for i in (f as usize..len).rev() {
            series[i] -= series[i - f as usize];
        }
    }
    series
        .into_iter()
        .enumerate()
        .map(|(d, c)| u64::try_from(c).map_err(|_| Error::NegativeCoefficient { degree: d }))
        .collect()
}

/// Rank data for a family of classes in (R/(f))_d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependenceReport {
    pub degree: u32,
    pub classes: usize,
    pub ideal_rank: usize,
    /// rank(I_d ∪ classes).
    pub combined_rank: usize,
}

impl IndependenceReport {
    pub fn independent(&self) -> bool {
        self.combined_rank - self.ideal_rank == self.classes
    }
}

/// Whether the images of `classes` in the degree-d piece of R/(f) are linearly independent.
pub fn quotient_class_independence(spec: &KoszulSpec, classes: &[Poly], degree: u32, cap: usize) -> Result<IndependenceReport> {
    for c in classes {
        if c.ring() != &spec.ring {
            return Err(Error::RingMismatch {
                left: spec.ring.to_string(),
                right: c.ring().to_string(),
            });
        }
        if !c.is_zero() && c.homogeneous_degree() != Some(degree) {
            return Err(Error::MixedDegrees);
        }
    }
    let d = degree as i64;
    let piece = Piece::new(&spec.ring, d);
    let mut vecs = ideal_vectors(&spec.ring, &spec.sequence, &spec.degrees, d, &piece);
    let ideal_rank = rank_of_vectors_capped(piece.len(), &vecs, cap)?;
    vecs.extend(classes.iter().map(|c| piece.vector(c, 0)));
    let combined_rank = rank_of_vectors_capped(piece.len(), &vecs, cap)?;
    Ok(IndependenceReport {
        degree,
        classes: classes.len(),
        ideal_rank,
        combined_rank,
    })
}

/// Monomials of degree `d` in w_{from..=k} of the Fock ring.
pub fn w_monomials(s: RingSpec, from: usize, d: u32) -> Vec<Monomial> {
    let nv = s.nvars();
    let ws: Vec<usize> = (from..=s.k).map(|i| s.w(i)).collect();
    monomials_in_vars(nv, &ws, &vec![1; nv], d)
}

#[cfg(test)]
mod tests;
