//! Exact sparse linear algebra: rank, kernels, span membership and windowed span dimensions.

mod echelon;

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::scalar::{ExactScalar, Field};

pub use echelon::{rank_profile, ElimInt, Echelon, Halt, SparseRow};

/// Default bound on stored entries during a single elimination.
pub const DEFAULT_MAX_ENTRIES: usize = 2_000_000;

/// Coordinate-sparse matrix. Rows are stored sorted by column and never hold explicit zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, T)>>,
}

impl<T: ExactScalar> SparseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i].push((i, T::one()));
        }
        m
    }

    /// Builds from `(row, col, value)` triplets; repeated positions are summed.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, T)>,
    ) -> Result<Self> {
        let mut acc: BTreeMap<(usize, usize), T> = BTreeMap::new();
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::IndexOutOfRange(format!(
                    "entry ({r}, {c}) outside {rows}x{cols}"
                )));
            }
            let slot = acc.entry((r, c)).or_insert_with(T::zero);
            *slot = slot.clone() + v;
        }
        let mut m = Self::zeros(rows, cols);
        for ((r, c), v) in acc {
            if !v.is_zero() {
                m.data[r].push((c, v));
            }
        }
        Ok(m)
    }

    /// Dense constructor, mostly for tests and small examples.
    pub fn from_dense(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map(|r| r.len()).unwrap_or(0);
        let data = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged dense matrix");
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(c, v)| (c, v.clone()))
                    .collect()
            })
            .collect();
        SparseMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Each vector becomes one row.
    pub fn from_rows(cols: usize, vectors: &[Vec<(usize, T)>]) -> Result<Self> {
        let triplets = vectors
            .iter()
            .enumerate()
            .flat_map(|(r, v)| v.iter().map(move |(c, x)| (r, *c, x.clone())));
        Self::from_triplets(vectors.len(), cols, triplets)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn row(&self, r: usize) -> &[(usize, T)] {
        &self.data[r]
    }

    pub fn get(&self, r: usize, c: usize) -> T {
        match self.data[r].binary_search_by_key(&c, |e| e.0) {
            Ok(i) => self.data[r][i].1.clone(),
            Err(_) => T::zero(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut data = vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                data[*c].push((r, v.clone()));
            }
        }
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Matrix-vector product with a sparse vector.
    pub fn mul_vec(&self, v: &[(usize, T)]) -> Vec<(usize, T)> {
        let dense: BTreeMap<usize, &T> = v.iter().map(|(c, x)| (*c, x)).collect();
        let mut out = Vec::new();
        for (r, row) in self.data.iter().enumerate() {
            let mut acc = T::zero();
            for (c, a) in row {
                if let Some(x) = dense.get(c) {
                    acc = acc + a.clone() * (*x).clone();
                }
            }
            if !acc.is_zero() {
                out.push((r, acc));
            }
        }
        out
    }

    /// Rank over the fraction field, without an entry cap.
    pub fn rank(&self) -> usize {
        self.rank_capped(usize::MAX).expect("uncapped rank cannot fail")
    }

    pub fn rank_capped(&self, cap: usize) -> Result<usize> {
        rank_of_vectors_capped(self.cols, &self.data, cap)
            .map_err(|e| self.cap_error(e))
    }

    fn cap_error(&self, e: Error) -> Error {
        match e {
            Error::ResourceCap { entries, cap, .. } => Error::ResourceCap {
                rows: self.rows,
                cols: self.cols,
                entries,
                cap,
            },
            other => other,
        }
    }
}

impl<F: Field> SparseMatrix<F> {
    /// A basis of `{ v : self * v = 0 }`. Each returned vector has a 1 in a distinct non-pivot
    /// column and 0 in every other non-pivot column.
    pub fn kernel_basis(&self) -> Vec<Vec<(usize, F)>> {
        self.kernel_basis_capped(usize::MAX)
            .expect("uncapped kernel cannot fail")
    }

    pub fn kernel_basis_capped(&self, cap: usize) -> Result<Vec<Vec<(usize, F)>>> {
        let order = sparsity_order(self.cols, &self.data);
        let rref = Rref::<F>::compute(self.cols, &self.data, &order, cap).map_err(|e| self.cap_error(e))?;
        Ok(rref.kernel())
    }
}

/// Column permutation used for elimination: sparsest columns first, ties by index.
fn sparsity_order<T>(cols: usize, rows: &[Vec<(usize, T)>]) -> Vec<usize> {
    let mut count = vec![0usize; cols];
    for row in rows {
        for (c, _) in row {
            count[*c] += 1;
        }
    }
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by_key(|&c| (count[c], c));
    order
}

fn to_ordered_int_rows<T: ExactScalar>(rows: &[Vec<(usize, T)>], position: &[usize]) -> Vec<SparseRow<BigInt>> {
    rows.iter()
        .filter(|r| !r.is_empty())
        .map(|r| {
            let mut ints = T::integerize(r);
            for e in ints.iter_mut() {
                e.0 = position[e.0];
            }
            ints.sort_by_key(|e| e.0);
            ints
        })
        .collect()
}

fn halt_to_error(h: Halt, cap: usize) -> Error {
    match h {
        Halt::Cap { entries } => Error::ResourceCap {
            rows: 0,
            cols: 0,
            entries,
            cap,
        },
        Halt::Overflow => unreachable!("overflow is handled by the bigint replay"),
    }
}

fn inverse_permutation(order: &[usize]) -> Vec<usize> {
    let mut pos = vec![0; order.len()];
    for (i, &c) in order.iter().enumerate() {
        pos[c] = i;
    }
    pos
}

/// Rank of a family of sparse vectors of length `len`.
pub fn rank_of_vectors<T: ExactScalar>(len: usize, vectors: &[Vec<(usize, T)>]) -> usize {
    rank_of_vectors_capped(len, vectors, usize::MAX).expect("uncapped rank cannot fail")
}

pub fn rank_of_vectors_capped<T: ExactScalar>(len: usize, vectors: &[Vec<(usize, T)>], cap: usize) -> Result<usize> {
    let order = sparsity_order(len, vectors);
    let pos = inverse_permutation(&order);
    let rows = to_ordered_int_rows(vectors, &pos);
    let profile = rank_profile(&[rows], cap).map_err(|h| halt_to_error(h, cap))?;
    Ok(profile[0])
}

/// Cumulative ranks of a family of vectors inserted group by group.
pub fn rank_profile_of_groups<T: ExactScalar>(
    len: usize,
    groups: &[Vec<Vec<(usize, T)>>],
    cap: usize,
) -> Result<Vec<usize>> {
    let all: Vec<Vec<(usize, T)>> = groups.iter().flatten().cloned().collect();
    let order = sparsity_order(len, &all);
    let pos = inverse_permutation(&order);
    let int_groups: Vec<_> = groups.iter().map(|g| to_ordered_int_rows(g, &pos)).collect();
    rank_profile(&int_groups, cap).map_err(|h| halt_to_error(h, cap))
}

/// `dim( span(vectors) ∩ { v : supp(v) ⊆ window } )`.
///
/// A combination of the vectors lies in the window exactly when its out-of-window coordinates
/// cancel, so the intersection has dimension `rank(V) - rank(V restricted outside the window)`.
pub fn windowed_span_dim<T: ExactScalar>(
    len: usize,
    vectors: &[Vec<(usize, T)>],
    window: impl Fn(usize) -> bool,
) -> usize {
    let outside: Vec<Vec<(usize, T)>> = vectors
        .iter()
        .map(|v| v.iter().filter(|(c, _)| !window(*c)).cloned().collect())
        .collect();
    rank_of_vectors(len, vectors) - rank_of_vectors(len, &outside)
}

/// Coefficients `c` with `sum c_i vectors[i] = target`, if the target lies in the span.
pub fn solve_in_span<F: Field>(len: usize, vectors: &[Vec<(usize, F)>], target: &[(usize, F)]) -> Option<Vec<F>> {
    // Columns of the system are the vectors plus the target, which must come last in the order.
    let m = vectors.len();
    let mut rows: Vec<Vec<(usize, F)>> = vec![Vec::new(); len];
    for (j, v) in vectors.iter().enumerate() {
        for (c, x) in v {
            rows[*c].push((j, x.clone()));
        }
    }
    for (c, x) in target {
        rows[*c].push((m, x.clone()));
    }
    let order: Vec<usize> = (0..=m).collect();
    let rref = Rref::<F>::compute(m + 1, &rows, &order, usize::MAX).ok()?;
    if rref.pivot_cols().any(|c| c == m) {
        return None;
    }
    let mut coeffs = vec![F::zero(); m];
    for (lead, row) in &rref.rows {
        if let Some((_, v)) = row.iter().find(|(c, _)| *c == m) {
            coeffs[*lead] = v.clone();
        }
    }
    Some(coeffs)
}

/// Assigns consecutive indices to keys on first sight.
#[derive(Debug, Clone)]
pub struct Indexer<K> {
    map: HashMap<K, usize>,
    keys: Vec<K>,
}

impl<K: Clone + Eq + Hash> Default for Indexer<K> {
    fn default() -> Self {
        Indexer {
            map: HashMap::new(),
            keys: Vec::new(),
        }
    }
}

impl<K: Clone + Eq + Hash> Indexer<K> {
    pub fn index(&mut self, k: &K) -> usize {
        if let Some(&i) = self.map.get(k) {
            return i;
        }
        self.keys.push(k.clone());
        self.map.insert(k.clone(), self.keys.len() - 1);
        self.keys.len() - 1
    }

    pub fn get(&self, k: &K) -> Option<usize> {
        self.map.get(k).copied()
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn keys(&self) -> &[K] {
        &self.keys
    }
}

/// Reduced row echelon form: each row has a unit entry at its pivot column and no entries in other
/// pivot columns. Columns are reported in the caller's original indexing.
#[derive(Debug, Clone)]
pub struct Rref<F> {
    cols: usize,
    rows: Vec<(usize, Vec<(usize, F)>)>,
}

impl<F: Field> Rref<F> {
    pub fn compute(cols: usize, rows: &[Vec<(usize, F)>], order: &[usize], cap: usize) -> Result<Self> {
        let pos = inverse_permutation(order);
        let int_rows = to_ordered_int_rows(rows, &pos);
        let ech = echelon::echelon_rows(&int_rows, cap).map_err(|h| halt_to_error(h, cap))?;
        // Back-substitute from the last pivot column to the first, in permuted coordinates.
        let mut ech: Vec<SparseRow<BigInt>> = ech;
        ech.sort_by_key(|r| std::cmp::Reverse(r[0].0));
        let mut reduced: BTreeMap<usize, Vec<(usize, F)>> = BTreeMap::new();
        for row in ech {
            let lead = row[0].0;
            let lead_val = F::from_bigint(row[0].1.clone());
            let mut acc: BTreeMap<usize, F> = row
                .into_iter()
                .skip(1)
                .map(|(c, v)| (c, F::from_bigint(v) / lead_val.clone()))
                .collect();
            let hits: Vec<usize> = acc.keys().copied().filter(|c| reduced.contains_key(c)).collect();
            for c in hits {
                let factor = match acc.remove(&c) {
                    Some(f) => f,
                    None => continue,
                };
                for (cc, v) in &reduced[&c] {
                    if *cc == c {
                        continue;
                    }
                    let slot = acc.entry(*cc).or_insert_with(F::zero);
                    *slot = slot.clone() - factor.clone() * v.clone();
                }
                acc.retain(|_, v| !v.is_zero());
            }
            let mut out = vec![(lead, F::one())];
            out.extend(acc);
            reduced.insert(lead, out);
        }
        let rows = reduced
            .into_iter()
            .map(|(lead, row)| {
                let mut row: Vec<(usize, F)> = row.into_iter().map(|(c, v)| (order[c], v)).collect();
                row.sort_by_key(|e| e.0);
                (order[lead], row)
            })
            .collect();
        Ok(Rref { cols, rows })
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_cols(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|(c, _)| *c)
    }

    /// Kernel basis indexed by the free columns, in increasing free-column order.
    pub fn kernel(&self) -> Vec<Vec<(usize, F)>> {
        let pivots: std::collections::BTreeSet<usize> = self.pivot_cols().collect();
        let mut basis: BTreeMap<usize, Vec<(usize, F)>> = (0..self.cols)
            .filter(|c| !pivots.contains(c))
            .map(|c| (c, vec![(c, F::one())]))
            .collect();
        for (lead, row) in &self.rows {
            for (c, v) in row {
                if c != lead {
                    if let Some(b) = basis.get_mut(c) {
                        b.push((*lead, -v.clone()));
                    }
                }
            }
        }
        basis
            .into_values()
            .map(|mut v| {
                v.sort_by_key(|e| e.0);
                v
            })
            .collect()
    }
}
