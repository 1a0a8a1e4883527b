//! Linear algebra over GF(2) on bit-packed words, and binomial parity.

use std::fmt;
use std::ops::{BitXor, BitXorAssign};

const WORD: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A vector over GF(2), one bit per coefficient.
///
/// Bits at positions `>= len` are always zero, so word-level equality is
/// coefficient equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// Unit vector with a single one at `index`.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = BitVector::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = BitVector::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_ones(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = BitVector::zeros(len);
        for i in ones {
            v.flip(i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Positions of the nonzero coefficients, increasing.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let tz = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD + tz)
            })
        })
    }

    pub fn first_one(&self) -> Option<usize> {
        self.ones().next()
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }

    /// `self[i + shift] ^= other[i]` for every `i`, dropping bits that land
    /// past `self.len()`.
    pub fn xor_shifted(&mut self, other: &BitVector, shift: usize) {
        if shift >= self.len {
            return;
        }
        let ws = shift / WORD;
        let bs = shift % WORD;
        for (i, &w) in other.words.iter().enumerate() {
            if w == 0 {
                continue;
            }
            let lo = i + ws;
            if lo >= self.words.len() {
                break;
            }
            self.words[lo] ^= w << bs;
            if bs != 0 && lo + 1 < self.words.len() {
                self.words[lo + 1] ^= w >> (WORD - bs);
            }
        }
        self.clear_tail();
    }

    /// Concatenation `self ++ other`.
    pub fn concat(&self, other: &BitVector) -> BitVector {
        let mut out = BitVector::zeros(self.len + other.len);
        out.xor_shifted(self, 0);
        out.xor_shifted(other, self.len);
        out
    }

    /// Coefficients `start..start + len`.
    pub fn slice(&self, start: usize, len: usize) -> BitVector {
        assert!(start + len <= self.len);
        BitVector::from_ones(len, self.ones().filter(|&i| i >= start && i < start + len).map(|i| i - start))
    }

    fn clear_tail(&mut self) {
        let r = self.len % WORD;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }
}

impl BitXorAssign<&BitVector> for BitVector {
    fn bitxor_assign(&mut self, rhs: &BitVector) {
        assert_eq!(self.len, rhs.len, "length mismatch in GF(2) addition");
        for (a, b) in self.words.iter_mut().zip(&rhs.words) {
            *a ^= b;
        }
    }
}

impl BitXor for &BitVector {
    type Output = BitVector;
    fn bitxor(self, rhs: &BitVector) -> BitVector {
        let mut out = self.clone();
        out ^= rhs;
        out
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.len {
            write!(f, "{}", self.get(i) as u8)?;
        }
        write!(f, "]")
    }
}

/// A dense row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVector>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix {
            rows,
            cols,
            data: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        BitMatrix::from_rows(n, (0..n).map(|i| BitVector::unit(n, i)).collect())
    }

    /// Panics if some row does not have length `cols`.
    pub fn from_rows(cols: usize, data: Vec<BitVector>) -> Self {
        for r in &data {
            assert_eq!(r.len(), cols, "row length differs from column count");
        }
        BitMatrix {
            rows: data.len(),
            cols,
            data,
        }
    }

    pub fn from_bools(rows: &[Vec<bool>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        BitMatrix::from_rows(cols, rows.iter().map(|r| BitVector::from_bits(r)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.data[r].set(c, value)
    }

    pub fn row(&self, r: usize) -> &BitVector {
        &self.data[r]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut BitVector {
        &mut self.data[r]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &BitVector> {
        self.data.iter()
    }

    pub fn into_rows(self) -> Vec<BitVector> {
        self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BitVector::is_zero)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for (r, row) in self.data.iter().enumerate() {
            for c in row.ones() {
                t.data[c].set(r, true);
            }
        }
        t
    }

    /// Row vector times matrix: `v * self`.
    pub fn left_mul(&self, v: &BitVector) -> BitVector {
        assert_eq!(v.len(), self.rows);
        let mut out = BitVector::zeros(self.cols);
        for r in v.ones() {
            out ^= &self.data[r];
        }
        out
    }

    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows);
        BitMatrix::from_rows(other.cols, self.data.iter().map(|r| other.left_mul(r)).collect())
    }

    /// Rank-one update `self += a^T b`.
    pub fn add_outer(&mut self, a: &BitVector, b: &BitVector) {
        assert_eq!(a.len(), self.rows);
        assert_eq!(b.len(), self.cols);
        for r in a.ones() {
            self.data[r] ^= b;
        }
    }

    pub fn rank(&self) -> usize {
        row_reduce(self).rank
    }

    /// Determinant over GF(2); `true` iff the matrix is square and invertible.
    pub fn determinant(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Gauss-Jordan inverse, `None` when singular or not square.
    pub fn inverse(&self) -> Option<BitMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let mut inv: Vec<BitVector> = (0..n).map(|i| BitVector::unit(n, i)).collect();
        for col in 0..n {
            let p = (col..n).find(|&r| a[r].get(col))?;
            a.swap(col, p);
            inv.swap(col, p);
            let (pa, pi) = (a[col].clone(), inv[col].clone());
            for r in 0..n {
                if r != col && a[r].get(col) {
                    a[r] ^= &pa;
                    inv[r] ^= &pi;
                }
            }
        }
        Some(BitMatrix::from_rows(n, inv))
    }

    /// Determinants of the leading principal `m x m` submatrices, `m = 1..=rows`.
    ///
    /// Runs one elimination without row exchanges: while every pivot so far is
    /// one, the `m`-th minor equals the `m`-th pivot. After the first zero
    /// pivot the remaining minors are computed directly.
    pub fn leading_principal_minors(&self) -> Vec<bool> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.data.clone();
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            if !a[k].get(k) {
                out.push(false);
                for m in k + 2..=n {
                    out.push(self.leading_submatrix(m).determinant());
                }
                return out;
            }
            out.push(true);
            let pivot = a[k].clone();
            for row in a.iter_mut().skip(k + 1) {
                if row.get(k) {
                    *row ^= &pivot;
                }
            }
        }
        out
    }

    pub fn leading_submatrix(&self, m: usize) -> BitMatrix {
        assert!(m <= self.rows && m <= self.cols);
        BitMatrix::from_rows(m, self.data[..m].iter().map(|r| r.slice(0, m)).collect())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in &self.data {
            writeln!(f, "  {r:?}")?;
        }
        Ok(())
    }
}

/// Output of [`row_reduce`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowEchelon {
    pub rank: usize,
    /// Pivot column of each nonzero row of `reduced`, increasing.
    pub pivots: Vec<usize>,
    /// Reduced row-echelon form; nonzero rows first.
    pub reduced: BitMatrix,
}

/// Reduced row-echelon form over GF(2), scanning columns left to right.
pub fn row_reduce(m: &BitMatrix) -> RowEchelon {
    let mut rows = m.data.clone();
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..m.cols {
        if next == rows.len() {
            break;
        }
        let Some(p) = (next..rows.len()).find(|&r| rows[r].get(col)) else {
            continue;
        };
        rows.swap(next, p);
        let pivot = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != next && row.get(col) {
                *row ^= &pivot;
            }
        }
        pivots.push(col);
        next += 1;
    }
    RowEchelon {
        rank: next,
        pivots,
        reduced: BitMatrix::from_rows(m.cols, rows),
    }
}

/// `C(a, b) mod 2` for any integer `a`.
///
/// `C(a, b) = 0` when `b < 0`, and when `0 <= a < b`. Negative upper index
/// uses `C(-m, b) = C(m + b - 1, b) mod 2`, the coefficient of `t^b` in
/// `(1 + t)^(-m)` over GF(2).
pub fn binom_parity(a: i64, b: i64) -> bool {
    if b < 0 {
        return false;
    }
    if a >= 0 {
        // Lucas: every binary digit of b is at most the digit of a.
        b <= a && (b & !a) == 0
    } else {
        let m = -a;
        binom_parity(m + b - 1, b)
    }
}

pub fn is_power_of_two(v: u64) -> bool {
    v != 0 && v & (v - 1) == 0
}

/// The `m x m` matrix with entry `(i, j)` equal to one iff `i + j` is a power
/// of two, with `i, j` counted from one. Indices of the returned matrix are
/// zero-based, so entry `(r, c)` tests `r + c + 2`.
pub fn power_sum_matrix(m: usize) -> BitMatrix {
    let mut a = BitMatrix::zeros(m, m);
    for r in 0..m {
        // 1-based i = r + 1; j = 2^s - i for each 2^s in (i, i + m].
        let i = r as u64 + 1;
        let mut p = 1u64;
        while p <= i + m as u64 {
            if p > i {
                a.set(r, (p - i - 1) as usize, true);
            }
            p <<= 1;
        }
    }
    a
}

/// Determinant of [`power_sum_matrix`]`(m)` by elimination.
pub fn matlem_det(m: usize) -> bool {
    power_sum_matrix(m).determinant()
}

/// Outcome of testing the binomial vanishing range for `(d, j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RangeCheck {
    /// `j` is in range and `C(d + j, d)` is even.
    Holds,
    /// `j` is outside `(2^(r+1) - d - 1, d - 1]`; nothing to check.
    Vacuous,
    /// `j` is in range but `C(d + j, d)` is odd.
    Violated,
}

/// For `2^r <= d < 2^(r+1)` and `2^(r+1) - d - 1 < j <= d - 1`,
/// checks that `C(d + j, d)` is even.
pub fn comblem_holds(d: u64, j: u64) -> RangeCheck {
    assert!(d >= 1, "d must be positive");
    let top = 1u64 << (64 - d.leading_zeros());
    let lower = top - d - 1;
    if j <= lower || j + 1 > d {
        return RangeCheck::Vacuous;
    }
    if binom_parity((d + j) as i64, d as i64) {
        RangeCheck::Violated
    } else {
        RangeCheck::Holds
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binom_examples() {
        assert!(binom_parity(7, 3));
        assert!(!binom_parity(5, 2));
        assert!(binom_parity(-6, 2));
        assert!(!binom_parity(3, 4));
        assert!(!binom_parity(3, -1));
        assert!(binom_parity(-1, 0));
    }

    /// Every `C(a, b)` with `0 <= b <= a <= 2^16` against rows of Pascal's
    /// triangle built by `row_a = row_(a-1) + (row_(a-1) shifted by 1)`.
    #[test]
    fn binom_matches_pascal_recurrence() {
        use rayon::prelude::*;
        let max = 1usize << 16;
        let mut row = BitVector::unit(max + 1, 0);
        let mut batch = Vec::with_capacity(256);
        for a in 0..=max {
            if a > 0 {
                let prev = row.clone();
                row.xor_shifted(&prev, 1);
            }
            batch.push((a, row.clone()));
            if batch.len() == 256 || a == max {
                batch.par_iter().for_each(|(a, r)| {
                    for b in 0..=*a {
                        assert_eq!(binom_parity(*a as i64, b as i64), r.get(b), "C({a},{b})");
                    }
                    assert!(r.ones().all(|b| b <= *a));
                });
                batch.clear();
            }
        }
    }

    // Coefficients of (1+t)^(-m) truncated at t^64, from the series inverse of (1+t)^m.
    fn negative_power_series(m: usize, cutoff: usize) -> BitVector {
        let mut pos = BitVector::unit(cutoff + 1, 0);
        for _ in 0..m {
            let shifted = pos.clone();
            pos.xor_shifted(&shifted, 1);
        }
        let mut inv = BitVector::unit(cutoff + 1, 0);
        for k in 1..=cutoff {
            let mut c = false;
            for i in 1..=k {
                c ^= pos.get(i) & inv.get(k - i);
            }
            inv.set(k, c);
        }
        inv
    }

    #[test]
    fn negative_binom_matches_series_inverse() {
        for m in 1..=40usize {
            let inv = negative_power_series(m, 64);
            for b in 0..=64 {
                assert_eq!(binom_parity(-(m as i64), b as i64), inv.get(b), "C(-{m},{b})");
            }
        }
    }

    #[test]
    fn row_reduce_examples() {
        assert_eq!(row_reduce(&BitMatrix::identity(3)).rank, 3);
        assert_eq!(row_reduce(&BitMatrix::zeros(3, 3)).rank, 0);
        let a3 = BitMatrix::from_bools(&[
            vec![true, false, true],
            vec![false, true, false],
            vec![true, false, false],
        ]);
        let ech = row_reduce(&a3);
        assert_eq!(ech.rank, 3);
        assert_eq!(ech.reduced, BitMatrix::identity(3));
    }

    #[test]
    fn power_sum_small() {
        assert_eq!(power_sum_matrix(1), BitMatrix::from_bools(&[vec![true]]));
        assert_eq!(power_sum_matrix(2), BitMatrix::identity(2));
        assert_eq!(
            power_sum_matrix(3),
            BitMatrix::from_bools(&[
                vec![true, false, true],
                vec![false, true, false],
                vec![true, false, false],
            ])
        );
        for m in 1..40 {
            let a = power_sum_matrix(m);
            for r in 0..m {
                for c in 0..m {
                    assert_eq!(a.get(r, c), is_power_of_two((r + c + 2) as u64));
                }
            }
        }
    }

    #[test]
    fn matlem_small() {
        assert!(matlem_det(2));
        assert!(matlem_det(3));
        for m in 1..=200 {
            assert!(matlem_det(m), "m={m}");
        }
    }

    #[test]
    fn leading_minors_agree_with_direct() {
        let a = power_sum_matrix(150);
        let minors = a.leading_principal_minors();
        for (i, &d) in minors.iter().enumerate() {
            assert_eq!(d, matlem_det(i + 1));
        }
        // A matrix whose second minor vanishes but the third does not.
        let b = BitMatrix::from_bools(&[
            vec![true, true, false],
            vec![true, true, true],
            vec![false, true, true],
        ]);
        assert_eq!(b.leading_principal_minors(), vec![true, false, true]);
    }

    #[test]
    fn inverse_roundtrip() {
        let a = power_sum_matrix(37);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), BitMatrix::identity(37));
        assert!(BitMatrix::zeros(2, 2).inverse().is_none());
    }

    #[test]
    fn comblem_examples() {
        assert_eq!(comblem_holds(5, 4), RangeCheck::Holds);
        assert_eq!(comblem_holds(4, 3), RangeCheck::Vacuous);
        assert_eq!(comblem_holds(6, 3), RangeCheck::Holds);
        assert_eq!(comblem_holds(6, 1), RangeCheck::Vacuous);
        assert_eq!(comblem_holds(6, 6), RangeCheck::Vacuous);
    }

    #[test]
    fn comblem_never_violated() {
        for d in 1..=8192u64 {
            for j in 0..=2 * d {
                assert_ne!(comblem_holds(d, j), RangeCheck::Violated, "d={d} j={j}");
            }
        }
    }

    #[test]
    fn xor_shifted_crosses_words() {
        let mut a = BitVector::zeros(130);
        let b = BitVector::from_ones(70, [0, 63, 69]);
        a.xor_shifted(&b, 61);
        assert_eq!(a.ones().collect::<Vec<_>>(), vec![61, 124]);
        let mut c = BitVector::zeros(10);
        c.xor_shifted(&BitVector::from_ones(10, [9]), 3);
        assert!(c.is_zero());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = BitMatrix> {
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), cols), rows)
                .prop_map(|r| BitMatrix::from_bools(&r))
        }

        proptest! {
            #[test]
            fn rank_of_transpose(m in matrix(64, 64)) {
                prop_assert_eq!(m.rank(), m.transpose().rank());
            }

            #[test]
            fn row_reduce_idempotent(m in matrix(20, 33)) {
                let once = row_reduce(&m);
                let twice = row_reduce(&once.reduced);
                prop_assert_eq!(&once, &twice);
                prop_assert!(once.rank <= 20);
            }

            #[test]
            fn row_space_preserved(m in matrix(12, 40)) {
                let ech = row_reduce(&m);
                let stacked: Vec<BitVector> = m.row_iter().cloned()
                    .chain(ech.reduced.row_iter().cloned()).collect();
                prop_assert_eq!(BitMatrix::from_rows(40, stacked).rank(), ech.rank);
            }

            #[test]
            fn padding_bits_stay_zero(
                bits in proptest::collection::vec(any::<bool>(), 1..150),
                other in proptest::collection::vec(any::<bool>(), 1..150),
                shift in 0usize..160,
            ) {
                let mut v = BitVector::from_bits(&bits);
                v.xor_shifted(&BitVector::from_bits(&other), shift);
                let joined = v.concat(&BitVector::from_bits(&other));
                let start = shift.min(joined.len());
                for w in [&v, &joined, &joined.slice(start, joined.len() - start)] {
                    let tail = w.len() % 64;
                    if tail != 0 {
                        prop_assert_eq!(w.words().last().unwrap() >> tail, 0);
                    }
                    prop_assert_eq!(w.count_ones(), w.ones().count());
                }
            }

            #[test]
            fn rank_bounded(m in matrix(9, 30)) {
                prop_assert!(m.rank() <= 9);
                prop_assert!(m.transpose().rank() <= 9);
            }

            #[test]
            fn addition_is_involution(bits in proptest::collection::vec(any::<bool>(), 0..200)) {
                let v = BitVector::from_bits(&bits);
                prop_assert!((&v ^ &v).is_zero());
            }
        }
    }
}
