//! Exterior algebra on ω₁,…,ω_n with wedge signs, Hodge star, contraction and the index-tuple sign
//! bookkeeping used by the Φ_J cochains.
//!
//! Index sets are bitsets; every sign is a parity of a popcount.

use std::fmt;

use crate::error::{Error, Result};

/// A strictly increasing tuple over {1..n}, stored as a bitset (bit `i-1` set for index `i`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtIndex {
    n: u8,
    bits: u64,
}

impl ExtIndex {
    pub fn empty(n: usize) -> Self {
        assert!(n <= 64, "exterior algebras are limited to 64 generators");
        ExtIndex { n: n as u8, bits: 0 }
    }

    pub fn full(n: usize) -> Self {
        let bits = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        ExtIndex { n: n as u8, bits }
    }

    /// From a strictly increasing 1-based tuple.
    pub fn new(n: usize, indices: &[usize]) -> Result<Self> {
        if n > 64 {
            return Err(Error::InvalidArgument("exterior algebras are limited to 64 generators".into()));
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) || indices.iter().any(|&i| i == 0 || i > n) {
            return Err(Error::IndexOutOfRange(format!("{indices:?} is not strictly increasing in 1..={n}")));
        }
        Ok(ExtIndex {
            n: n as u8,
            bits: indices.iter().fold(0, |b, &i| b | 1 << (i - 1)),
        })
    }

    pub fn single(n: usize, i: usize) -> Self {
        Self::new(n, &[i]).expect("index out of range")
    }

    pub fn from_bits(n: usize, bits: u64) -> Self {
        debug_assert!(n == 64 || bits >> n == 0);
        ExtIndex { n: n as u8, bits }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, i: usize) -> bool {
        i >= 1 && i <= self.n() && self.bits >> (i - 1) & 1 == 1
    }

    pub fn indices(&self) -> Vec<usize> {
        (1..=self.n()).filter(|&i| self.contains(i)).collect()
    }

    pub fn complement(&self) -> Self {
        ExtIndex {
            n: self.n,
            bits: Self::full(self.n()).bits & !self.bits,
        }
    }

    /// Number of elements strictly less than `i`.
    pub fn count_below(&self, i: usize) -> usize {
        let mask = if i == 0 { 0 } else { (1u64 << (i - 1)) - 1 };
        (self.bits & mask).count_ones() as usize
    }

    pub fn with(&self, i: usize) -> Self {
        ExtIndex {
            n: self.n,
            bits: self.bits | 1 << (i - 1),
        }
    }

    pub fn without(&self, i: usize) -> Self {
        ExtIndex {
            n: self.n,
            bits: self.bits & !(1 << (i - 1)),
        }
    }

    /// All index sets of size `len`, in lexicographic order of their tuples.
    pub fn all_of_len(n: usize, len: usize) -> Vec<ExtIndex> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(len);
        subsets(n, len, 1, &mut cur, &mut out);
        out
    }
}

fn subsets(n: usize, len: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<ExtIndex>) {
    if cur.len() == len {
        out.push(ExtIndex::new(n, cur).expect("valid subset"));
        return;
    }
    for i in start..=n {
        if n - i + 1 < len - cur.len() {
            break;
        }
        cur.push(i);
        subsets(n, len, i + 1, cur, out);
        cur.pop();
    }
}

impl fmt::Display for ExtIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices().iter().map(|i| i.to_string()).collect();
        write!(f, "ω({})", idx.join(","))
    }
}

/// `sign · ω_index`; a zero sign means the zero form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignedExtIndex {
    pub sign: i8,
    pub index: ExtIndex,
}

impl SignedExtIndex {
    pub fn zero(n: usize) -> Self {
        SignedExtIndex {
            sign: 0,
            index: ExtIndex::empty(n),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    fn of(parity: usize, index: ExtIndex) -> Self {
        SignedExtIndex {
            sign: if parity.is_multiple_of(2) { 1 } else { -1 },
            index,
        }
    }
}

/// Parity of the shuffle putting the concatenation I·J in increasing order, assuming I ∩ J = ∅.
fn shuffle_parity(i: &ExtIndex, j: &ExtIndex) -> usize {
    j.indices().iter().map(|&x| i.len() - i.count_below(x)).sum()
}

pub fn wedge(i: &ExtIndex, j: &ExtIndex) -> SignedExtIndex {
    assert_eq!(i.n, j.n, "wedge of forms on different spaces");
    if i.bits & j.bits != 0 {
        return SignedExtIndex::zero(i.n());
    }
    SignedExtIndex::of(
        shuffle_parity(i, j),
        ExtIndex {
            n: i.n,
            bits: i.bits | j.bits,
        },
    )
}

/// `*ω_I = s·ω_{I^c}` with `ω_I ∧ s·ω_{I^c} = vol`.
pub fn hodge_star(i: &ExtIndex) -> SignedExtIndex {
    let c = i.complement();
    SignedExtIndex::of(shuffle_parity(i, &c), c)
}

/// Interior product with the dual vector e_α: `(−1)^{s−1} ω_{I − i_s}` when α = i_s.
pub fn contract(alpha: usize, i: &ExtIndex) -> SignedExtIndex {
    if !i.contains(alpha) {
        return SignedExtIndex::zero(i.n());
    }
    SignedExtIndex::of(i.count_below(alpha), i.without(alpha))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TupleMode {
    Insert,
    Remove,
}

/// `(−1)^{J(i)}` together with `J ∪ {i}` or `J − {i}`, where J(i) counts the elements of J below
/// i. Inserting a present index or removing an absent one gives sign zero.
pub fn tuple_sign(j: &ExtIndex, i: usize, mode: TupleMode) -> SignedExtIndex {
    match mode {
        TupleMode::Insert if !j.contains(i) => SignedExtIndex::of(j.count_below(i), j.with(i)),
        TupleMode::Remove if j.contains(i) => SignedExtIndex::of(j.count_below(i), j.without(i)),
        _ => SignedExtIndex::zero(j.n()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ix(n: usize, v: &[usize]) -> ExtIndex {
        ExtIndex::new(n, v).unwrap()
    }

    fn signed(sign: i8, index: ExtIndex) -> SignedExtIndex {
        SignedExtIndex { sign, index }
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(wedge(&ix(2, &[1]), &ix(2, &[2])), signed(1, ix(2, &[1, 2])));
        assert_eq!(wedge(&ix(2, &[2]), &ix(2, &[1])), signed(-1, ix(2, &[1, 2])));
        assert_eq!(wedge(&ix(3, &[2]), &ix(3, &[1, 3])), signed(-1, ix(3, &[1, 2, 3])));
        assert!(wedge(&ix(3, &[2]), &ix(3, &[2, 3])).is_zero());
    }

    #[test]
    fn star_examples() {
        assert_eq!(hodge_star(&ix(2, &[1])), signed(1, ix(2, &[2])));
        assert_eq!(hodge_star(&ix(2, &[2])), signed(-1, ix(2, &[1])));
        assert_eq!(hodge_star(&ix(3, &[1, 3])), signed(-1, ix(3, &[2])));
        assert_eq!(hodge_star(&ExtIndex::empty(3)), signed(1, ExtIndex::full(3)));
    }

    #[test]
    fn contract_examples() {
        assert_eq!(contract(1, &ix(2, &[1, 2])), signed(1, ix(2, &[2])));
        assert_eq!(contract(2, &ix(2, &[1, 2])), signed(-1, ix(2, &[1])));
        assert!(contract(3, &ix(3, &[1, 2])).is_zero());
    }

    #[test]
    fn tuple_sign_examples() {
        assert_eq!(tuple_sign(&ix(3, &[1, 3]), 2, TupleMode::Insert), signed(-1, ix(3, &[1, 2, 3])));
        assert!(tuple_sign(&ix(3, &[1, 3]), 1, TupleMode::Insert).is_zero());
        assert_eq!(tuple_sign(&ix(3, &[1, 3]), 3, TupleMode::Remove), signed(-1, ix(3, &[1])));
        assert!(tuple_sign(&ix(3, &[1, 3]), 2, TupleMode::Remove).is_zero());
    }

    #[test]
    fn invalid_tuples_are_rejected() {
        assert!(ExtIndex::new(3, &[2, 1]).is_err());
        assert!(ExtIndex::new(3, &[4]).is_err());
        assert!(ExtIndex::new(3, &[1, 1]).is_err());
    }

    #[test]
    fn enumeration_is_complete_and_ordered() {
        let all = ExtIndex::all_of_len(4, 2);
        let tuples: Vec<Vec<usize>> = all.iter().map(|i| i.indices()).collect();
        assert_eq!(tuples, vec![vec![1, 2], vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4], vec![3, 4]]);
        assert_eq!(ExtIndex::all_of_len(3, 0), vec![ExtIndex::empty(3)]);
    }

    #[test]
    fn star_twice() {
        for n in 0..=6 {
            for l in 0..=n {
                for i in ExtIndex::all_of_len(n, l) {
                    let s1 = hodge_star(&i);
                    let s2 = hodge_star(&s1.index);
                    assert_eq!(s2.index, i);
                    let expect = if (l * (n - l)) % 2 == 0 { 1 } else { -1 };
                    assert_eq!(s1.sign * s2.sign, expect);
                    assert_eq!(wedge(&i, &s1.index).sign * s1.sign, 1);
                }
            }
        }
    }

    #[test]
    fn wedge_with_star_is_star_of_contraction() {
        // ω_α ∧ *ω_I = (−1)^{|I|−1} * ι_α ω_I.
        for n in 1..=5 {
            for l in 1..=n {
                for i in ExtIndex::all_of_len(n, l) {
                    for alpha in 1..=n {
                        let st = hodge_star(&i);
                        let lhs = wedge(&ExtIndex::single(n, alpha), &st.index);
                        let lhs_sign = lhs.sign * st.sign;
                        let c = contract(alpha, &i);
                        if c.is_zero() {
                            assert_eq!(lhs_sign, 0);
                            continue;
                        }
                        let sc = hodge_star(&c.index);
                        let rhs_sign = c.sign * sc.sign * if (l - 1) % 2 == 0 { 1 } else { -1 };
                        assert_eq!(lhs.index, sc.index);
                        assert_eq!(lhs_sign, rhs_sign);
                    }
                }
            }
        }
    }

    #[test]
    fn star_anticommutes_with_the_reflection() {
        // ι negates ω₁, so * ∘ ι = det(ι) · ι ∘ * with det(ι) = −1.
        let refl = |i: &ExtIndex| if i.contains(1) { -1 } else { 1 };
        for n in 1..=6 {
            for l in 0..=n {
                for i in ExtIndex::all_of_len(n, l) {
                    let st = hodge_star(&i);
                    let lhs = refl(&i) * st.sign;
                    let rhs = -st.sign * refl(&st.index);
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    fn arb_index(n: usize) -> impl Strategy<Value = ExtIndex> {
        (0u64..1 << n).prop_map(move |b| ExtIndex::from_bits(n, b))
    }

    proptest! {
        #[test]
        fn wedge_is_associative(a in arb_index(6), b in arb_index(6), c in arb_index(6)) {
            let ab = wedge(&a, &b);
            let left = if ab.is_zero() { ab } else {
                let r = wedge(&ab.index, &c);
                SignedExtIndex { sign: r.sign * ab.sign, index: r.index }
            };
            let bc = wedge(&b, &c);
            let right = if bc.is_zero() { bc } else {
                let r = wedge(&a, &bc.index);
                SignedExtIndex { sign: r.sign * bc.sign, index: r.index }
            };
            prop_assert_eq!(left.sign, right.sign);
            if !left.is_zero() {
                prop_assert_eq!(left.index, right.index);
            }
        }

        #[test]
        fn wedge_is_graded_commutative(a in arb_index(6), b in arb_index(6)) {
            let ab = wedge(&a, &b);
            let ba = wedge(&b, &a);
            let s = if (a.len() * b.len()) % 2 == 0 { 1 } else { -1 };
            prop_assert_eq!(ab.sign, s * ba.sign);
        }
    }
}
