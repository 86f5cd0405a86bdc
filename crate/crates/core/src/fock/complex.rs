//! Truncated invariant complexes split into blocks preserved by d, and the cohomology
//! computations performed on them.

use std::collections::BTreeMap;
use std::hash::Hash;

use crate::error::Result;
use crate::linalg::{rank_of_vectors_capped, rank_profile_of_groups, Indexer, Rref};
use crate::Rational;

pub type SparseVec = Vec<(usize, Rational)>;

/// Identifies a summand of the complex preserved by d: the ι⊗ι eigenvalue followed by, for each
/// vector index i, (z-degree in column i) − (degree in w_i).
pub type BlockKey = Vec<i32>;

#[derive(Debug, Clone)]
pub struct BasisVector {
    pub degree: u32,
    /// Coordinates in the ambient space of its own level.
    pub vector: SparseVec,
    /// d of the vector, in the ambient coordinates of the next level.
    pub image: SparseVec,
    /// The filtration-preserving part of the image (the associated graded differential, up to sign).
    pub leading: SparseVec,
}

#[derive(Debug, Clone, Default)]
pub struct Level {
    /// Polynomial degree of each ambient coordinate.
    pub coord_degrees: Vec<u32>,
    /// Independent vectors spanning the cochains of this level, sorted by degree.
    pub basis: Vec<BasisVector>,
}

impl Level {
    /// Basis vectors of degree ≤ d (a prefix of `basis`).
    pub fn upto(&self, d: i64) -> &[BasisVector] {
        let end = self.basis.partition_point(|b| (b.degree as i64) <= d);
        &self.basis[..end]
    }

    pub fn at(&self, d: i64) -> &[BasisVector] {
        let start = self.basis.partition_point(|b| (b.degree as i64) < d);
        let end = self.basis.partition_point(|b| (b.degree as i64) <= d);
        &self.basis[start..end]
    }
}

#[derive(Debug, Clone)]
pub struct Block {
    pub key: BlockKey,
    /// Indexed by cochain degree ℓ = 0..=top+1 (the last one only receives images).
    pub levels: Vec<Level>,
}

/// A cochain complex truncated at polynomial degree `max_degree`, with the filtration
/// F^p C^ℓ = span of basis vectors with 2ℓ − degree ≥ p.
#[derive(Debug, Clone)]
pub struct GradedComplex {
    pub top: usize,
    pub max_degree: u32,
    pub blocks: Vec<Block>,
    pub cap: usize,
}

/// Source of basis vectors and differentials for [`GradedComplex::build`].
pub trait CochainModel {
    type Coord: Clone + Eq + Hash;

    fn top(&self) -> usize;
    fn coord_degree(&self, c: &Self::Coord) -> u32;
    fn block_key(&self, c: &Self::Coord) -> BlockKey;
    /// Independent vectors spanning the (ℓ, degree) piece.
    #[allow(clippy::type_complexity)]
    fn basis(&self, ell: usize, degree: u32) -> Result<Vec<Vec<(Self::Coord, Rational)>>>;
    /// `(d v, leading part of d v)`, in coordinates of level ℓ+1.
    #[allow(clippy::type_complexity)]
    fn apply(&self, ell: usize, v: &[(Self::Coord, Rational)]) -> (Vec<(Self::Coord, Rational)>, Vec<(Self::Coord, Rational)>);
}

struct BlockBuilder<K> {
    coords: Vec<Indexer<K>>,
    levels: Vec<Level>,
}

impl GradedComplex {
    pub fn build<M: CochainModel>(model: &M, max_degree: u32, cap: usize) -> Result<Self> {
        let top = model.top();
        let mut blocks: BTreeMap<BlockKey, BlockBuilder<M::Coord>> = BTreeMap::new();
        for ell in 0..=top {
            for degree in 0..=max_degree {
                for v in model.basis(ell, degree)? {
                    let Some((c0, _)) = v.first() else { continue };
                    let key = model.block_key(c0);
                    let bb = blocks.entry(key).or_insert_with(|| BlockBuilder {
                        coords: (0..=top + 1).map(|_| Indexer::default()).collect(),
                        levels: vec![Level::default(); top + 2],
                    });
                    let (image, leading) = model.apply(ell, &v);
                    let vector = index_vec(model, &mut bb.coords[ell], &mut bb.levels[ell], &v);
                    let image = index_vec(model, &mut bb.coords[ell + 1], &mut bb.levels[ell + 1], &image);
                    let leading = index_vec(model, &mut bb.coords[ell + 1], &mut bb.levels[ell + 1], &leading);
                    bb.levels[ell].basis.push(BasisVector {
                        degree,
                        vector,
                        image,
                        leading,
                    });
                }
            }
        }
        let blocks = blocks
            .into_iter()
            .map(|(key, bb)| Block { key, levels: bb.levels })
            .collect();
        Ok(GradedComplex {
            top,
            max_degree,
            blocks,
            cap,
        })
    }

    /// Total basis size at (ℓ, degree).
    pub fn dim(&self, ell: usize, degree: u32) -> usize {
        self.blocks.iter().map(|b| b.levels[ell].at(degree as i64).len()).sum()
    }
}

fn index_vec<M: CochainModel>(
    model: &M,
    ix: &mut Indexer<M::Coord>,
    level: &mut Level,
    v: &[(M::Coord, Rational)],
) -> SparseVec {
    let mut out: Vec<(usize, Rational)> = v
        .iter()
        .map(|(c, x)| {
            let i = ix.index(c);
            if i == level.coord_degrees.len() {
                level.coord_degrees.push(model.coord_degree(c));
            }
            (i, x.clone())
        })
        .collect();
    out.sort_by_key(|e| e.0);
    // Merge duplicates that a model might emit.
    let mut merged: SparseVec = Vec::with_capacity(out.len());
    for (i, x) in out {
        match merged.last_mut() {
            Some((j, y)) if *j == i => *y = y.clone() + x,
            _ => merged.push((i, x)),
        }
    }
    merged.retain(|(_, x)| !num_traits::Zero::is_zero(x));
    merged
}

fn coord_len(levels: &[Level], ell: usize) -> usize {
    levels[ell].coord_degrees.len()
}

fn restrict(v: &SparseVec, keep: impl Fn(usize) -> bool) -> SparseVec {
    v.iter().filter(|(c, _)| keep(*c)).cloned().collect()
}

/// One cell of a direct cohomology table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomCell {
    pub ell: usize,
    pub degree: u32,
    /// Dimension at each buffer B, B+2, B+4.
    pub by_buffer: [usize; 3],
}

impl CohomCell {
    pub fn dim(&self) -> usize {
        self.by_buffer[0]
    }

    pub fn stabilized(&self) -> bool {
        self.by_buffer[0] == self.by_buffer[1] && self.by_buffer[1] == self.by_buffer[2]
    }
}

impl GradedComplex {
    /// `h(ℓ, ≤d) = dim Z(≤d) − dim (B ∩ C(≤d))`, for d = 0..=max_d and each domain truncation in
    /// `truncations` (coboundaries come from cochains of degree ≤ d + t).
    fn filtered_h(&self, ell: usize, max_d: u32, truncations: &[u32]) -> Result<Vec<Vec<i64>>> {
        let mut h = vec![vec![0i64; truncations.len()]; max_d as usize + 1];
        for block in &self.blocks {
            let lv = &block.levels;
            // Cocycles supported in degree ≤ d.
            let groups: Vec<Vec<SparseVec>> = (0..=max_d)
                .map(|d| lv[ell].at(d as i64).iter().map(|b| b.image.clone()).collect())
                .collect();
            let ranks = rank_profile_of_groups(coord_len(lv, ell + 1), &groups, self.cap)?;
            let mut count = 0i64;
            for d in 0..=max_d {
                count += lv[ell].at(d as i64).len() as i64;
                for x in h[d as usize].iter_mut() {
                    *x += count - ranks[d as usize] as i64;
                }
            }
            if ell == 0 {
                continue;
            }
            // Coboundaries inside the window: rank(V) − rank(V outside the window).
            let len = coord_len(lv, ell);
            for d in 0..=max_d {
                let tops: Vec<u32> = truncations.iter().map(|t| d + t).collect();
                let groups_by = |keep: &dyn Fn(usize) -> bool| -> Vec<Vec<SparseVec>> {
                    let mut out = Vec::with_capacity(tops.len());
                    let mut lo = -1i64;
                    for &n in &tops {
                        let mut g = Vec::new();
                        for b in lv[ell - 1].upto(n as i64).iter().filter(|b| b.degree as i64 > lo) {
                            g.push(restrict(&b.image, keep));
                        }
                        lo = n as i64;
                        out.push(g);
                    }
                    out
                };
                let all = rank_profile_of_groups(len, &groups_by(&|_| true), self.cap)?;
                let degs = &lv[ell].coord_degrees;
                let outside = rank_profile_of_groups(len, &groups_by(&|c| degs[c] > d), self.cap)?;
                for t in 0..truncations.len() {
                    h[d as usize][t] -= all[t] as i64 - outside[t] as i64;
                }
            }
        }
        Ok(h)
    }

    /// Dimensions of gr H^ℓ for the polynomial-degree filtration, per degree ≤ `max_d`, with
    /// coboundaries computed from domains truncated at degree + B, + B+2, + B+4.
    pub fn direct_cohomology(&self, ell: usize, max_d: u32, buffer: u32) -> Result<Vec<CohomCell>> {
        if max_d + buffer + 4 > self.max_degree {
            return Err(crate::Error::InvalidArgument(format!(
                "complex truncated at degree {} cannot certify window {max_d} with buffer {buffer}",
                self.max_degree
            )));
        }
        if ell > self.top {
            return Ok((0..=max_d).map(|degree| CohomCell { ell, degree, by_buffer: [0; 3] }).collect());
        }
        let h = self.filtered_h(ell, max_d, &[buffer, buffer + 2, buffer + 4])?;
        Ok((0..=max_d)
            .map(|d| {
                let prev = if d == 0 { vec![0; 3] } else { h[d as usize - 1].clone() };
                let mut by_buffer = [0usize; 3];
                for t in 0..3 {
                    by_buffer[t] = (h[d as usize][t] - prev[t]).max(0) as usize;
                }
                CohomCell { ell, degree: d, by_buffer }
            })
            .collect())
    }

    /// Cohomology of the associated graded differential at (ℓ, degree).
    pub fn e1_dim(&self, ell: usize, degree: u32) -> Result<usize> {
        let mut total = 0usize;
        for block in &self.blocks {
            let lv = &block.levels;
            let here = lv[ell].at(degree as i64);
            if here.is_empty() {
                continue;
            }
            let out: Vec<SparseVec> = here.iter().map(|b| b.leading.clone()).collect();
            let rank_out = rank_of_vectors_capped(coord_len(lv, ell + 1), &out, self.cap)?;
            let rank_in = if ell == 0 {
                0
            } else {
                let incoming: Vec<SparseVec> =
                    lv[ell - 1].at(degree as i64 - 2).iter().map(|b| b.leading.clone()).collect();
                rank_of_vectors_capped(coord_len(lv, ell), &incoming, self.cap)?
            };
            total += here.len() - rank_out - rank_in;
        }
        Ok(total)
    }

    /// Basis (as level-ℓ vectors, with their images) of
    /// Z_r = { x ∈ span(basis of degree ≤ d) : dx has no component of degree > d + 2 − r }.
    fn z_r(&self, block: &Block, ell: usize, d: i64, r: i64) -> Result<Vec<(SparseVec, SparseVec)>> {
        let lv = &block.levels;
        let dom = lv[ell].upto(d);
        if dom.is_empty() {
            return Ok(Vec::new());
        }
        let degs = &lv[ell + 1].coord_degrees;
        let bound = d + 2 - r;
        // Columns = domain vectors, rows = out-of-window coordinates of the image.
        let mut rows: BTreeMap<usize, Vec<(usize, Rational)>> = BTreeMap::new();
        for (j, b) in dom.iter().enumerate() {
            for (c, x) in &b.image {
                if degs[*c] as i64 > bound {
                    rows.entry(*c).or_default().push((j, x.clone()));
                }
            }
        }
        let rows: Vec<Vec<(usize, Rational)>> = rows.into_values().collect();
        let order: Vec<usize> = (0..dom.len()).collect();
        let kernel = Rref::<Rational>::compute(dom.len(), &rows, &order, self.cap)?.kernel();
        Ok(kernel
            .into_iter()
            .map(|combo| (combine(dom, &combo, |b| &b.vector), combine(dom, &combo, |b| &b.image)))
            .collect())
    }

    /// dim E_r at the cell (ℓ, degree), or `None` if the truncation is too small to decide it.
    pub fn page_dim(&self, ell: usize, degree: u32, r: u32) -> Result<Option<usize>> {
        let (d, r) = (degree as i64, r as i64);
        if ell > self.top || d > self.max_degree as i64 || (ell >= 1 && d + r - 3 > self.max_degree as i64) {
            return Ok(None);
        }
        if r == 0 {
            return Ok(Some(self.dim(ell, degree)));
        }
        let mut total = 0usize;
        for block in &self.blocks {
            let z = self.z_r(block, ell, d, r)?;
            if z.is_empty() {
                continue;
            }
            let mut denom: Vec<SparseVec> = self.z_r(block, ell, d - 1, r - 1)?.into_iter().map(|(v, _)| v).collect();
            if ell >= 1 {
                denom.extend(self.z_r(block, ell - 1, d + r - 3, r - 1)?.into_iter().map(|(_, img)| img));
            }
            let len = coord_len(&block.levels, ell);
            total += z.len() - rank_of_vectors_capped(len, &denom, self.cap)?;
        }
        Ok(Some(total))
    }
}

fn combine(dom: &[BasisVector], combo: &[(usize, Rational)], pick: impl Fn(&BasisVector) -> &SparseVec) -> SparseVec {
    let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
    for (j, c) in combo {
        for (i, x) in pick(&dom[*j]) {
            let e = acc.entry(*i).or_insert_with(|| Rational::from_integer(0.into()));
            *e = e.clone() + c.clone() * x.clone();
        }
    }
    acc.into_iter().filter(|(_, x)| !num_traits::Zero::is_zero(x)).collect()
}
