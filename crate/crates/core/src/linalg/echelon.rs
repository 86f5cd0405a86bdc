//! Fraction-free row echelon forms over the integers.
//!
//! Rows are inserted one at a time and reduced against the pivots seen so far using only integer
//! cross-multiplication followed by content removal, so no rational numbers are ever formed
//! mid-elimination. The machine-word instantiation reports overflow instead of wrapping; callers
//! then replay the same rows over arbitrary-precision integers.

use std::collections::HashMap;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedMul, CheckedSub, Signed, ToPrimitive};

pub trait ElimInt: Clone + Debug + Integer + Signed + CheckedMul + CheckedSub {}
impl<T: Clone + Debug + Integer + Signed + CheckedMul + CheckedSub> ElimInt for T {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Halt {
    Overflow,
    Cap { entries: usize },
}

pub type SparseRow<I> = Vec<(usize, I)>;

/// Echelon form under construction. Pivot rows are kept primitive with a positive leading entry.
#[derive(Debug, Clone)]
pub struct Echelon<I> {
    pivots: HashMap<usize, usize>,
    rows: Vec<SparseRow<I>>,
    entries: usize,
    cap: usize,
}

impl<I: ElimInt> Echelon<I> {
    pub fn new(cap: usize) -> Self {
        Echelon {
            pivots: HashMap::new(),
            rows: Vec::new(),
            entries: 0,
            cap,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseRow<I>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<SparseRow<I>> {
        self.rows
    }

    /// Reduces `row` (sorted by column, no zero entries) and keeps it if it is independent of the
    /// rows already present. Returns whether the rank grew.
    pub fn insert(&mut self, mut row: SparseRow<I>) -> Result<bool, Halt> {
        while let Some((lead, _)) = row.first() {
            let Some(&p) = self.pivots.get(lead) else {
                break;
            };
            row = eliminate(&row, &self.rows[p])?;
        }
        if row.is_empty() {
            return Ok(false);
        }
        make_primitive(&mut row);
        self.entries += row.len();
        if self.entries > self.cap {
            return Err(Halt::Cap {
                entries: self.entries,
            });
        }
        self.pivots.insert(row[0].0, self.rows.len());
        self.rows.push(row);
        Ok(true)
    }
}

/// `pivot[0] * row - row[0] * pivot`, scaled down by the gcd of the two leading entries.
fn eliminate<I: ElimInt>(row: &[(usize, I)], pivot: &[(usize, I)]) -> Result<SparseRow<I>, Halt> {
    let a = &row[0].1;
    let b = &pivot[0].1;
    let g = a.gcd(b);
    let fa = a.div_floor(&g);
    let fb = b.div_floor(&g);
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (1, 1);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cj = pivot.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        let v = if ci < cj {
            i += 1;
            fb.checked_mul(&row[i - 1].1).ok_or(Halt::Overflow)?
        } else if cj < ci {
            j += 1;
            I::zero()
                .checked_sub(&fa.checked_mul(&pivot[j - 1].1).ok_or(Halt::Overflow)?)
                .ok_or(Halt::Overflow)?
        } else {
            i += 1;
            j += 1;
            let x = fb.checked_mul(&row[i - 1].1).ok_or(Halt::Overflow)?;
            let y = fa.checked_mul(&pivot[j - 1].1).ok_or(Halt::Overflow)?;
            x.checked_sub(&y).ok_or(Halt::Overflow)?
        };
        if !v.is_zero() {
            out.push((ci.min(cj), v));
        }
    }
    make_primitive(&mut out);
    Ok(out)
}

fn make_primitive<I: ElimInt>(row: &mut [(usize, I)]) {
    let mut g = I::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if g.is_zero() {
        return;
    }
    if row[0].1.is_negative() {
        g = I::zero() - g;
    }
    if !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v = v.div_floor(&g);
        }
    }
}

/// Incremental rank over a sequence of row groups, returning the cumulative rank after each
/// group. Runs over `i64` first and replays over `BigInt` if an intermediate value overflows.
pub fn rank_profile(groups: &[Vec<SparseRow<BigInt>>], cap: usize) -> Result<Vec<usize>, Halt> {
    if let Some(small) = to_machine(groups) {
        match profile_with::<i64>(small, cap) {
            Ok(p) => return Ok(p),
            Err(Halt::Overflow) => {}
            Err(e) => return Err(e),
        }
    }
    profile_with::<BigInt>(groups.to_vec(), cap)
}

fn to_machine(groups: &[Vec<SparseRow<BigInt>>]) -> Option<Vec<Vec<SparseRow<i64>>>> {
    groups
        .iter()
        .map(|g| {
            g.iter()
                .map(|row| {
                    row.iter()
                        .map(|(c, v)| v.to_i64().map(|x| (*c, x)))
                        .collect::<Option<Vec<_>>>()
                })
                .collect::<Option<Vec<_>>>()
        })
        .collect()
}

fn profile_with<I: ElimInt>(groups: Vec<Vec<SparseRow<I>>>, cap: usize) -> Result<Vec<usize>, Halt> {
    let mut ech = Echelon::<I>::new(cap);
    let mut out = Vec::with_capacity(groups.len());
    for group in groups {
        for row in group {
            if !row.is_empty() {
                ech.insert(row)?;
            }
        }
        out.push(ech.rank());
    }
    Ok(out)
}

/// Full echelon form (rows only), with the same overflow fallback as [`rank_profile`].
pub fn echelon_rows(rows: &[SparseRow<BigInt>], cap: usize) -> Result<Vec<SparseRow<BigInt>>, Halt> {
    if let Some(mut small) = to_machine(std::slice::from_ref(&rows.to_vec())) {
        let mut ech = Echelon::<i64>::new(cap);
        let mut ok = true;
        for row in small.pop().unwrap() {
            if row.is_empty() {
                continue;
            }
            match ech.insert(row) {
                Ok(_) => {}
                Err(Halt::Overflow) => {
                    ok = false;
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        if ok {
            return Ok(ech
                .into_rows()
                .into_iter()
                .map(|r| r.into_iter().map(|(c, v)| (c, BigInt::from(v))).collect())
                .collect());
        }
    }
    let mut ech = Echelon::<BigInt>::new(cap);
    for row in rows {
        if !row.is_empty() {
            ech.insert(row.clone())?;
        }
    }
    Ok(ech.into_rows())
}
