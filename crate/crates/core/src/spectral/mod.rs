//! The spectral sequence of the polynomial-degree filtration.
//!
//! A cochain of degree ℓ and polynomial degree d sits in the cell (p, q) = (2ℓ − d, d − ℓ).
//! d₂ has bidegree (0, 1) and d₋₂ has bidegree (4, −3), so E₀ carries the differential d₂ and
//! E₁ = H(d₂). For a cell with filtration index p the page E_r is final once r ≥ 2n − p + 1.

use crate::error::Result;
use crate::fock::{build_complex, CohomCell, GradedComplex, Part};
use crate::poly::RingSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bigrading {
    pub p: i64,
    pub q: i64,
}

pub fn regrade(ell: usize, degree: u32) -> Bigrading {
    let (l, d) = (ell as i64, degree as i64);
    Bigrading { p: 2 * l - d, q: d - l }
}

/// Inverse of [`regrade`]: `None` off the lattice of valid (ℓ, degree).
pub fn ungrade(b: Bigrading) -> Option<(usize, u32)> {
    let ell = b.p + b.q;
    let d = b.p + 2 * b.q;
    (ell >= 0 && d >= 0).then_some((ell as usize, d as u32))
}

/// The page on which the cell with filtration index p stops changing.
pub fn stable_page(n: usize, p: i64) -> u32 {
    (2 * n as i64 - p + 1).max(1) as u32
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PageCell {
    pub ell: usize,
    pub degree: u32,
    pub bigrading: Bigrading,
    /// `None` when the truncation cannot decide the cell.
    pub dim: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PageData {
    pub r: u32,
    /// Polynomial degrees 0..=window at every ℓ.
    pub window: u32,
    pub cells: Vec<PageCell>,
}

impl PageData {
    pub fn get(&self, ell: usize, degree: u32) -> Option<&PageCell> {
        self.cells.iter().find(|c| c.ell == ell && c.degree == degree)
    }
}

/// A truncated invariant complex together with the pages computed from it.
pub struct SpectralSequence {
    pub spec: RingSpec,
    pub part: Part,
    pub window: u32,
    complex: GradedComplex,
}

impl SpectralSequence {
    /// Builds the complex deep enough to decide every page up to the stable one on the window
    /// and the direct cohomology with the given buffer.
    pub fn new(spec: RingSpec, part: Part, window: u32, buffer: u32, cap: usize) -> Result<Self> {
        let pages = 2 * window + 2 * spec.n as u32;
        let direct = window + buffer + 4;
        let complex = build_complex(spec, part, pages.max(direct), cap)?;
        Ok(SpectralSequence {
            spec,
            part,
            window,
            complex,
        })
    }

    pub fn from_complex(spec: RingSpec, part: Part, window: u32, complex: GradedComplex) -> Self {
        SpectralSequence {
            spec,
            part,
            window,
            complex,
        }
    }

    pub fn complex(&self) -> &GradedComplex {
        &self.complex
    }

    fn cells(&self, mut dim: impl FnMut(usize, u32) -> Result<Option<usize>>) -> Result<Vec<PageCell>> {
        let mut out = Vec::new();
        for ell in 0..=self.spec.n {
            for degree in 0..=self.window {
                out.push(PageCell {
                    ell,
                    degree,
                    bigrading: regrade(ell, degree),
                    dim: dim(ell, degree)?,
                });
            }
        }
        Ok(out)
    }

    /// E₁ from the cohomology of the leading differential.
    pub fn e1(&self) -> Result<PageData> {
        let cells = self.cells(|ell, d| self.complex.e1_dim(ell, d).map(Some))?;
        Ok(PageData { r: 1, window: self.window, cells })
    }

    pub fn page(&self, r: u32) -> Result<PageData> {
        let cells = self.cells(|ell, d| self.complex.page_dim(ell, d, r))?;
        Ok(PageData { r, window: self.window, cells })
    }

    /// E_{r+1} from E_r.
    pub fn page_step(&self, current: &PageData) -> Result<PageData> {
        self.page(current.r + 1)
    }

    /// Each cell read off its own stable page.
    pub fn e_infinity(&self) -> Result<PageData> {
        let n = self.spec.n;
        let cells = self.cells(|ell, d| {
            let r = stable_page(n, regrade(ell, d).p);
            self.complex.page_dim(ell, d, r)
        })?;
        Ok(PageData { r: u32::MAX, window: self.window, cells })
    }

    /// The largest stable page over the window.
    pub fn last_page(&self) -> u32 {
        (0..=self.spec.n)
            .flat_map(|ell| (0..=self.window).map(move |d| (ell, d)))
            .map(|(ell, d)| stable_page(self.spec.n, regrade(ell, d).p))
            .max()
            .unwrap_or(1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Agree,
    Mismatch,
    /// The direct cohomology cell is not stabilized, or the page is undecided.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub ell: usize,
    pub degree: u32,
    pub bigrading: Bigrading,
    pub e1: Option<usize>,
    pub e_infinity: Option<usize>,
    pub gr_h: usize,
    pub stabilized: bool,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergenceReport {
    pub pages: Vec<PageData>,
    pub e_infinity: PageData,
    pub direct: Vec<CohomCell>,
    pub comparisons: Vec<Comparison>,
}

impl ConvergenceReport {
    pub fn converged(&self) -> bool {
        self.comparisons.iter().all(|c| c.verdict != Verdict::Mismatch)
    }

    pub fn mismatches(&self) -> usize {
        self.comparisons.iter().filter(|c| c.verdict == Verdict::Mismatch).count()
    }

    /// True if E_∞ = E₁ on every decided cell.
    pub fn degenerates_at_e1(&self) -> bool {
        self.comparisons
            .iter()
            .all(|c| c.e1.is_none() || c.e_infinity.is_none() || c.e1 == c.e_infinity)
    }

    /// dims never grow from one page to the next on decided cells.
    pub fn monotone(&self) -> bool {
        self.pages.windows(2).all(|w| {
            w[0].cells.iter().zip(&w[1].cells).all(|(a, b)| match (a.dim, b.dim) {
                (Some(x), Some(y)) => y <= x,
                _ => true,
            })
        })
    }
}

/// Runs the pages E₁..E_{last} on the window and compares E_∞ with the filtration-graded direct
/// cohomology.
pub fn einf_and_converge(spec: RingSpec, part: Part, window: u32, buffer: u32, cap: usize) -> Result<ConvergenceReport> {
    let ss = SpectralSequence::new(spec, part, window, buffer, cap)?;
    let mut pages = vec![ss.e1()?];
    for _ in 1..ss.last_page() {
        let next = ss.page_step(pages.last().expect("at least E1"))?;
        pages.push(next);
    }
    let e_infinity = ss.e_infinity()?;
    let mut direct = Vec::new();
    for ell in 0..=spec.n {
        direct.extend(ss.complex.direct_cohomology(ell, window, buffer)?);
    }
    let comparisons = e_infinity
        .cells
        .iter()
        .zip(&direct)
        .map(|(e, h)| {
            debug_assert_eq!((e.ell, e.degree), (h.ell, h.degree));
            let verdict = match e.dim {
                Some(x) if h.stabilized() => {
                    if x == h.dim() {
                        Verdict::Agree
                    } else {
                        Verdict::Mismatch
                    }
                }
                _ => Verdict::Inconclusive,
            };
            Comparison {
                ell: e.ell,
                degree: e.degree,
                bigrading: e.bigrading,
                e1: pages[0].get(e.ell, e.degree).and_then(|c| c.dim),
                e_infinity: e.dim,
                gr_h: h.dim(),
                stabilized: h.stabilized(),
                verdict,
            }
        })
        .collect();
    Ok(ConvergenceReport {
        pages,
        e_infinity,
        direct,
        comparisons,
    })
}
