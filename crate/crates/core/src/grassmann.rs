//! Mod-2 cohomology of the Grassmannian of 2-planes in R^(n+1).
//!
//! The ring is `Z2[x, y] / (q_n, q_(n+1))` with `|x| = 1`, `|y| = 2`, where
//! `q_k` is the degree-`k` part of `(1 + x + y)^(-1)`. Two independent
//! descriptions of each graded piece are kept:
//!
//! * the *oracle*: row reduction of the relation ideal inside the span of
//!   ambient monomials, giving a monomial basis and a reduction table;
//! * the *power-sum basis* `b_1, ..., b_k` of `H^(2n-2k-e)` for
//!   `2n-2k-e >= n`, in which `x^(2i-e) y^(n-k-i)` is the sum of the `b_j`
//!   with `i + j` a power of two.
//!
//! A homogeneous element of degree `D` is stored as a [`BitVector`] over the
//! ambient monomials `x^(D-2j) y^j`, `j = 0..=D/2` (decreasing x-exponent).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::f2core::{is_power_of_two, row_reduce, BitMatrix, BitVector};
use crate::Error;

/// An ambient monomial `x^x y^y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GMonomial {
    pub x: u32,
    pub y: u32,
}

impl GMonomial {
    pub fn new(x: u32, y: u32) -> Self {
        GMonomial { x, y }
    }

    pub fn degree(&self) -> usize {
        self.x as usize + 2 * self.y as usize
    }

    /// Position among the ambient monomials of its degree.
    pub fn ambient_index(&self) -> usize {
        self.y as usize
    }

    pub fn from_index(degree: usize, index: usize) -> Self {
        assert!(2 * index <= degree);
        GMonomial::new((degree - 2 * index) as u32, index as u32)
    }
}

impl fmt::Display for GMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::wcalg::WMonomial::new(self.x, false, self.y).fmt(f)
    }
}

/// Number of ambient monomials `x^a y^b` with `a + 2b = degree`.
pub fn ambient_len(degree: usize) -> usize {
    degree / 2 + 1
}

/// A homogeneous polynomial in `x, y`, not yet reduced by any relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GClass {
    pub degree: usize,
    pub coeffs: BitVector,
}

impl GClass {
    pub fn zero(degree: usize) -> Self {
        GClass {
            degree,
            coeffs: BitVector::zeros(ambient_len(degree)),
        }
    }

    pub fn one() -> Self {
        GClass::monomial(GMonomial::new(0, 0))
    }

    pub fn monomial(m: GMonomial) -> Self {
        let d = m.degree();
        GClass {
            degree: d,
            coeffs: BitVector::unit(ambient_len(d), m.ambient_index()),
        }
    }

    pub fn from_monomials(degree: usize, ms: impl IntoIterator<Item = GMonomial>) -> Self {
        let mut c = GClass::zero(degree);
        for m in ms {
            assert_eq!(m.degree(), degree);
            c.coeffs.flip(m.ambient_index());
        }
        c
    }

    pub fn terms(&self) -> impl Iterator<Item = GMonomial> + '_ {
        self.coeffs.ones().map(|j| GMonomial::from_index(self.degree, j))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    /// Product with the monomial `x^a y^b`.
    pub fn shift(&self, a: u32, b: u32) -> GClass {
        let degree = self.degree + a as usize + 2 * b as usize;
        let mut out = GClass::zero(degree);
        out.coeffs.xor_shifted(&self.coeffs, b as usize);
        out
    }

    pub fn mul(&self, other: &GClass) -> GClass {
        let mut out = GClass::zero(self.degree + other.degree);
        for j in self.coeffs.ones() {
            out.coeffs.xor_shifted(&other.coeffs, j);
        }
        out
    }

    pub fn add_assign(&mut self, other: &GClass) {
        assert_eq!(self.degree, other.degree);
        self.coeffs ^= &other.coeffs;
    }
}

/// Degree-`k` component of `(1 + x + y)^(-1)`, by `q_k = x q_(k-1) + y q_(k-2)`.
pub fn dual_class(k: usize) -> GClass {
    let mut prev = GClass::one();
    if k == 0 {
        return prev;
    }
    let mut cur = GClass::monomial(GMonomial::new(1, 0));
    for _ in 2..=k {
        let mut next = cur.shift(1, 0);
        next.add_assign(&prev.shift(0, 1));
        prev = cur;
        cur = next;
    }
    cur
}

/// Quotient data for one degree.
#[derive(Clone, Debug)]
pub struct DegreeData {
    pub degree: usize,
    /// Monomials whose images form a basis of `H^degree`.
    pub basis: Vec<GMonomial>,
    /// For each ambient monomial (by ambient index), its coordinates in `basis`.
    pub reduction: Vec<BitVector>,
    /// Rank of the relation ideal in this degree.
    pub relations_applied: usize,
}

impl DegreeData {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Builds the quotient data for degree `d` by row reducing the relation
/// ideal spanned by `x^a y^b q_n` and `x^a y^b q_(n+1)`.
///
/// Pivots are taken in decreasing x-exponent order; the non-pivot monomials
/// form the basis.
pub fn oracle_basis(n: usize, d: usize) -> DegreeData {
    let len = ambient_len(d);
    let mut rows = Vec::new();
    for (k, q) in [(n, dual_class(n)), (n + 1, dual_class(n + 1))] {
        if d < k {
            continue;
        }
        let rest = d - k;
        for b in 0..=rest / 2 {
            rows.push(q.shift((rest - 2 * b) as u32, b as u32).coeffs);
        }
    }
    let ech = row_reduce(&BitMatrix::from_rows(len, rows));
    let is_pivot = {
        let mut v = vec![false; len];
        for &p in &ech.pivots {
            v[p] = true;
        }
        v
    };
    let basis_cols: Vec<usize> = (0..len).filter(|&c| !is_pivot[c]).collect();
    let mut position = vec![usize::MAX; len];
    for (i, &c) in basis_cols.iter().enumerate() {
        position[c] = i;
    }
    let dim = basis_cols.len();
    let mut reduction = vec![BitVector::zeros(dim); len];
    for &c in &basis_cols {
        reduction[c].set(position[c], true);
    }
    for (r, &p) in ech.pivots.iter().enumerate() {
        let row = ech.reduced.row(r);
        for c in row.ones().filter(|&c| c != p) {
            reduction[p].flip(position[c]);
        }
    }
    DegreeData {
        degree: d,
        basis: basis_cols.iter().map(|&c| GMonomial::from_index(d, c)).collect(),
        reduction,
        relations_applied: ech.rank,
    }
}

/// Precomputed ring data for fixed `n`.
#[derive(Clone, Debug)]
pub struct GContext {
    n: usize,
    q_n: GClass,
    q_n1: GClass,
    degrees: Vec<DegreeData>,
}

impl GContext {
    pub fn new(n: usize) -> Result<Self, Error> {
        if n < 2 {
            return Err(Error::InvalidN(n));
        }
        Ok(GContext {
            n,
            q_n: dual_class(n),
            q_n1: dual_class(n + 1),
            degrees: (0..=2 * n - 2).map(|d| oracle_basis(n, d)).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn top_degree(&self) -> usize {
        2 * self.n - 2
    }

    pub fn relations(&self) -> (&GClass, &GClass) {
        (&self.q_n, &self.q_n1)
    }

    pub fn degree_data(&self, d: usize) -> Option<&DegreeData> {
        self.degrees.get(d)
    }

    pub fn dim(&self, d: usize) -> usize {
        self.degrees.get(d).map_or(0, DegreeData::dim)
    }

    pub fn basis(&self, d: usize) -> &[GMonomial] {
        self.degrees.get(d).map_or(&[], |dd| dd.basis.as_slice())
    }

    pub fn total_dim(&self) -> usize {
        self.degrees.iter().map(DegreeData::dim).sum()
    }

    /// Coordinates of the monomial in the oracle basis of its degree.
    pub fn reduce_monomial(&self, m: GMonomial) -> BitVector {
        match self.degrees.get(m.degree()) {
            Some(dd) => dd.reduction[m.ambient_index()].clone(),
            None => BitVector::zeros(0),
        }
    }

    /// Image of `c` in `H^D`; zero iff `c` lies in the relation ideal.
    pub fn reduce(&self, c: &GClass) -> BitVector {
        let Some(dd) = self.degrees.get(c.degree) else {
            return BitVector::zeros(0);
        };
        let mut out = BitVector::zeros(dd.dim());
        for j in c.coeffs.ones() {
            out ^= &dd.reduction[j];
        }
        out
    }

    /// The polynomial `sum v_i basis_i`.
    pub fn lift(&self, d: usize, v: &BitVector) -> GClass {
        GClass::from_monomials(d, v.ones().map(|i| self.basis(d)[i]))
    }

    /// Product of reduced classes of degrees `d1` and `d2`.
    pub fn multiply(&self, d1: usize, a: &BitVector, d2: usize, b: &BitVector) -> BitVector {
        let d = d1 + d2;
        let mut out = BitVector::zeros(self.dim(d));
        if out.is_empty() {
            return out;
        }
        for i in a.ones() {
            let mi = self.basis(d1)[i];
            for j in b.ones() {
                let mj = self.basis(d2)[j];
                out ^= &self.reduce_monomial(GMonomial::new(mi.x + mj.x, mi.y + mj.y));
            }
        }
        out
    }

    /// Rough heap footprint of the reduction tables, in bytes.
    pub fn approx_bytes(&self) -> usize {
        let vec_overhead = std::mem::size_of::<BitVector>();
        self.degrees
            .iter()
            .map(|dd| dd.reduction.iter().map(|v| vec_overhead + 8 * v.words().len()).sum::<usize>())
            .sum()
    }

    #[doc(hidden)]
    /// Flips one reduction-table entry. Used to check that the verification
    /// suites notice a broken context.
    pub fn corrupt_for_testing(&mut self, d: usize, ambient_index: usize, coord: usize) {
        self.degrees[d].reduction[ambient_index].flip(coord);
    }
}

/// `(k, e)` with `d = 2n - 2k - e`, when `n <= d <= 2n - 2`.
pub fn power_sum_regime(n: usize, d: usize) -> Option<(usize, usize)> {
    if d < n || d > 2 * n - 2 {
        return None;
    }
    let e = d % 2;
    Some(((2 * n - d - e) / 2, e))
}

/// Coordinates of `m` in the power-sum basis `b_1..b_k` of its degree
/// (0-based bit `j - 1` for `b_j`).
pub fn hg_normal_form(n: usize, m: GMonomial) -> Result<BitVector, Error> {
    let d = m.degree();
    if n < 2 {
        return Err(Error::InvalidN(n));
    }
    if d < n {
        return Err(Error::BelowRelations { n, degree: d });
    }
    let (k, e) = power_sum_regime(n, d).ok_or(Error::AboveTop { n, degree: d })?;
    // x^(2i - e) y^(n - k - i)
    let i = (m.x as usize + e) / 2;
    if !(m.x as usize + e).is_multiple_of(2) || m.y as usize + k + i != n {
        return Err(Error::MalformedMonomial(m.to_string()));
    }
    Ok(BitVector::from_ones(
        k,
        (1..=k).filter(|&j| is_power_of_two((i + j) as u64)).map(|j| j - 1),
    ))
}

/// One disagreement between the power-sum rule and the oracle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HgMismatch {
    pub degree: usize,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HgReport {
    pub n: usize,
    pub degrees_checked: usize,
    pub monomials_checked: usize,
    pub mismatches: Vec<HgMismatch>,
}

/// Compares the power-sum normal form with oracle reduction in every degree
/// `n <= D <= 2n - 2`.
///
/// With `H` the matrix of power-sum coordinates (one row per ambient monomial)
/// and `O` the oracle coordinates, a linear combination of monomials vanishes
/// in one description iff it vanishes in the other exactly when
/// `rank H = rank O = rank [H | O] = k`.
pub fn verify_hg_vs_oracle(ctx: &GContext) -> HgReport {
    let n = ctx.n();
    let mut report = HgReport {
        n,
        degrees_checked: 0,
        monomials_checked: 0,
        mismatches: Vec::new(),
    };
    for d in n..=ctx.top_degree() {
        let (k, _) = power_sum_regime(n, d).expect("degree in range");
        report.degrees_checked += 1;
        let mut h_rows = Vec::new();
        let mut o_rows = Vec::new();
        for j in 0..ambient_len(d) {
            let m = GMonomial::from_index(d, j);
            match hg_normal_form(n, m) {
                Ok(v) => h_rows.push(v),
                Err(e) => {
                    report.mismatches.push(HgMismatch {
                        degree: d,
                        detail: format!("{m}: {e}"),
                    });
                    continue;
                }
            }
            o_rows.push(ctx.reduce_monomial(m));
            report.monomials_checked += 1;
        }
        let dim = ctx.dim(d);
        if dim != k {
            report.mismatches.push(HgMismatch {
                degree: d,
                detail: format!("oracle dimension {dim}, expected {k}"),
            });
            continue;
        }
        let joint: Vec<BitVector> = h_rows.iter().zip(&o_rows).map(|(h, o)| h.concat(o)).collect();
        let rh = BitMatrix::from_rows(k, h_rows).rank();
        let ro = BitMatrix::from_rows(dim, o_rows).rank();
        let rj = BitMatrix::from_rows(k + dim, joint).rank();
        if rh != k || ro != k || rj != k {
            report.mismatches.push(HgMismatch {
                degree: d,
                detail: format!("ranks: power-sum {rh}, oracle {ro}, joint {rj}, expected {k}"),
            });
        }
    }
    report
}

/// Power-sum bases in oracle coordinates, per degree.
#[derive(Clone, Debug)]
pub struct BetaBases {
    pub n: usize,
    /// `(degree, matrix)` with row `j - 1` equal to `b_j`, decreasing degree.
    pub bases: Vec<(usize, BitMatrix)>,
}

impl BetaBases {
    pub fn get(&self, d: usize) -> Option<&BitMatrix> {
        self.bases.iter().find(|(dd, _)| *dd == d).map(|(_, m)| m)
    }

    /// Checks `sum_j hg(m)_j b_j = oracle(m)` for every ambient monomial
    /// in every constructed degree. Returns the first failure.
    pub fn check_against(&self, ctx: &GContext) -> Result<(), HgMismatch> {
        for (d, b) in &self.bases {
            for j in 0..ambient_len(*d) {
                let m = GMonomial::from_index(*d, j);
                let hg = hg_normal_form(self.n, m).map_err(|e| HgMismatch {
                    degree: *d,
                    detail: e.to_string(),
                })?;
                if b.left_mul(&hg) != ctx.reduce_monomial(m) {
                    return Err(HgMismatch {
                        degree: *d,
                        detail: format!("{m} disagrees with its power-sum expansion"),
                    });
                }
            }
        }
        Ok(())
    }
}

/// Certificate that one inductive step could not be carried out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionFailure {
    pub n: usize,
    pub degree: usize,
    pub reason: String,
}

/// Builds the power-sum bases downward from the top two degrees.
///
/// With `V_k = H^(2n-2k-e)` and basis `b_1..b_k` known, the map
/// `phi = (y*, x^2*) : V_(k+1) -> V_k x V_k` must be injective with image
/// spanned by `g_j = (b_j, b_(j-1))`; then `b_j` of `V_(k+1)` is
/// `phi^(-1)(g_j)`. In `g`-coordinates a pair `(s, t)` lies in that span iff
/// `t_i = s_(i+1)` for `1 <= i < k`.
pub fn hg_inductive_construct(ctx: &GContext) -> Result<BetaBases, ConstructionFailure> {
    let n = ctx.n();
    let mut bases = Vec::new();
    for e in 0..2usize {
        let top = 2 * n - 2 - e;
        if top < n {
            continue;
        }
        let fail = |degree: usize, reason: String| ConstructionFailure { n, degree, reason };
        if ctx.dim(top) != 1 {
            return Err(fail(top, format!("dimension {} in degree {top}", ctx.dim(top))));
        }
        let mut current = BitMatrix::identity(1);
        bases.push((top, current.clone()));
        let mut k = 1;
        while top >= 2 * k + n {
            let d_small = top - 2 * (k - 1);
            let d_big = d_small - 2;
            if ctx.dim(d_big) != k + 1 {
                return Err(fail(d_big, format!("dimension {}, expected {}", ctx.dim(d_big), k + 1)));
            }
            let to_beta = current
                .inverse()
                .ok_or_else(|| fail(d_small, "basis is singular".into()))?;
            let mut phi_rows = Vec::with_capacity(k + 1);
            for &b in ctx.basis(d_big) {
                let ys = to_beta.left_mul(&ctx.reduce_monomial(GMonomial::new(b.x, b.y + 1)));
                let xs = to_beta.left_mul(&ctx.reduce_monomial(GMonomial::new(b.x + 2, b.y)));
                for i in 1..k {
                    if xs.get(i - 1) != ys.get(i) {
                        return Err(fail(d_big, format!("phi({b}) is outside the span of the g_j")));
                    }
                }
                let mut g = BitVector::zeros(k + 1);
                for j in ys.ones() {
                    g.set(j, true);
                }
                g.set(k, xs.get(k - 1));
                phi_rows.push(g);
            }
            let phi = BitMatrix::from_rows(k + 1, phi_rows);
            current = phi
                .inverse()
                .ok_or_else(|| fail(d_big, "phi is not injective onto the g-span".into()))?;
            bases.push((d_big, current.clone()));
            k += 1;
        }
    }
    bases.sort_by_key(|b| std::cmp::Reverse(b.0));
    Ok(BetaBases { n, bases })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoincareReport {
    pub n: usize,
    pub dims: Vec<usize>,
    pub total: usize,
    pub expected_total: usize,
    pub duality_ok: bool,
    pub regime_ok: bool,
}

impl PoincareReport {
    pub fn ok(&self) -> bool {
        self.duality_ok && self.regime_ok && self.total == self.expected_total
    }
}

pub fn poincare_check(ctx: &GContext) -> PoincareReport {
    let n = ctx.n();
    let top = ctx.top_degree();
    let dims: Vec<usize> = (0..=top).map(|d| ctx.dim(d)).collect();
    let duality_ok = (0..=top).all(|d| dims[d] == dims[top - d]);
    let regime_ok = (n..=top).all(|d| Some(dims[d]) == power_sum_regime(n, d).map(|(k, _)| k));
    PoincareReport {
        n,
        total: dims.iter().sum(),
        expected_total: n * (n + 1) / 2,
        dims,
        duality_ok,
        regime_ok,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(x: u32, y: u32) -> GMonomial {
        GMonomial::new(x, y)
    }

    fn ones(v: &BitVector) -> Vec<usize> {
        v.ones().map(|i| i + 1).collect()
    }

    #[test]
    fn dual_class_examples() {
        assert_eq!(dual_class(0), GClass::one());
        assert_eq!(dual_class(2), GClass::from_monomials(2, [m(2, 0), m(0, 1)]));
        assert_eq!(dual_class(4), GClass::from_monomials(4, [m(4, 0), m(2, 1), m(0, 2)]));
    }

    #[test]
    fn dual_class_binomial_form() {
        for k in 0..60usize {
            let q = dual_class(k);
            for j in 0..=k / 2 {
                let c = crate::f2core::binom_parity((k - j) as i64, j as i64);
                assert_eq!(q.coeffs.get(j), c, "k={k} j={j}");
            }
        }
    }

    #[test]
    fn dual_classes_invert_total_class() {
        let big = 80;
        let one_x_y = [GClass::one(), GClass::monomial(m(1, 0)), GClass::monomial(m(0, 1))];
        let qs: Vec<GClass> = (0..=big).map(dual_class).collect();
        for d in 0..=big {
            let mut acc = GClass::zero(d);
            for (s, f) in one_x_y.iter().enumerate() {
                if s <= d {
                    acc.add_assign(&f.mul(&qs[d - s]));
                }
            }
            assert_eq!(acc.is_zero(), d != 0, "degree {d}");
        }
    }

    #[test]
    fn oracle_small_cases() {
        let g2 = GContext::new(2).unwrap();
        assert_eq!(g2.dim(2), 1);
        assert_eq!(g2.reduce_monomial(m(0, 1)), g2.reduce_monomial(m(2, 0)));

        let g3 = GContext::new(3).unwrap();
        assert_eq!(g3.dim(4), 1);
        assert!(g3.reduce_monomial(m(4, 0)).is_zero());
        assert_eq!(g3.reduce_monomial(m(0, 2)), g3.reduce_monomial(m(2, 1)));
        assert!(!g3.reduce_monomial(m(0, 2)).is_zero());

        let g4 = GContext::new(4).unwrap();
        assert_eq!(g4.dim(6), 1);
        let top = g4.reduce_monomial(m(6, 0));
        assert!(!top.is_zero());
        assert_eq!(g4.reduce_monomial(m(2, 2)), top);
        assert_eq!(g4.reduce_monomial(m(0, 3)), top);
        assert!(g4.reduce_monomial(m(4, 1)).is_zero());
        assert!(g4.reduce(&GClass::from_monomials(6, [m(6, 0), m(0, 3)])).is_zero());
        assert!(g4.reduce(&GClass::zero(5)).is_zero());
    }

    #[test]
    fn oracle_vanishes_above_top() {
        for n in 2..=12 {
            for d in 2 * n - 1..=2 * n + 2 {
                assert_eq!(oracle_basis(n, d).dim(), 0, "n={n} d={d}");
            }
        }
    }

    #[test]
    fn n_one_rejected() {
        assert!(matches!(GContext::new(1), Err(Error::InvalidN(1))));
    }

    #[test]
    fn normal_form_n20() {
        let h24 = [m(14, 5), m(12, 6), m(10, 7), m(24, 0), m(22, 1), m(20, 2), m(18, 3), m(16, 4)];
        for (j, &mono) in h24.iter().enumerate() {
            assert_eq!(ones(&hg_normal_form(20, mono).unwrap()), vec![j + 1], "{mono}");
        }
        assert_eq!(ones(&hg_normal_form(20, m(14, 4)).unwrap()), vec![1, 9]);
        assert_eq!(ones(&hg_normal_form(20, m(6, 8)).unwrap()), vec![1, 5]);
        assert_eq!(ones(&hg_normal_form(20, m(22, 0)).unwrap()), vec![5]);
    }

    #[test]
    fn normal_form_errors() {
        assert!(matches!(hg_normal_form(20, m(3, 5)), Err(Error::BelowRelations { .. })));
        assert!(matches!(hg_normal_form(20, m(39, 0)), Err(Error::AboveTop { .. })));
    }

    #[test]
    fn hg_agrees_with_oracle() {
        for n in 2..=24 {
            let ctx = GContext::new(n).unwrap();
            let r = verify_hg_vs_oracle(&ctx);
            assert!(r.mismatches.is_empty(), "n={n}: {:?}", r.mismatches);
        }
    }

    #[test]
    fn inductive_construction() {
        let g4 = GContext::new(4).unwrap();
        let bb = hg_inductive_construct(&g4).unwrap();
        assert_eq!(bb.get(6).unwrap().rows(), 1);
        bb.check_against(&g4).unwrap();

        let g3 = GContext::new(3).unwrap();
        let bb3 = hg_inductive_construct(&g3).unwrap();
        let b1 = bb3.get(3).unwrap().row(0).clone();
        assert_eq!(g3.reduce_monomial(m(1, 1)), b1);
        assert!(g3.reduce_monomial(m(3, 0)).is_zero());

        let g20 = GContext::new(20).unwrap();
        let bb20 = hg_inductive_construct(&g20).unwrap();
        bb20.check_against(&g20).unwrap();
        let b24 = bb20.get(24).unwrap();
        for (j, mono) in [m(14, 5), m(12, 6), m(10, 7), m(24, 0)].into_iter().enumerate() {
            assert_eq!(&g20.reduce_monomial(mono), b24.row(j));
        }
        let b22 = bb20.get(22).unwrap();
        let x22_plus_x6y8 = g20.reduce(&GClass::from_monomials(22, [m(22, 0), m(6, 8)]));
        assert_eq!(&x22_plus_x6y8, b22.row(0));
    }

    #[test]
    fn corrupted_context_is_detected() {
        let mut ctx = GContext::new(6).unwrap();
        ctx.corrupt_for_testing(8, 0, 0);
        let oracle_route = !verify_hg_vs_oracle(&ctx).mismatches.is_empty();
        let inductive_route = match hg_inductive_construct(&ctx) {
            Ok(bases) => bases.check_against(&ctx).is_err(),
            Err(_) => true,
        };
        assert!(oracle_route || inductive_route);
    }

    #[test]
    fn poincare_examples() {
        let r3 = poincare_check(&GContext::new(3).unwrap());
        assert_eq!(r3.dims, vec![1, 1, 2, 1, 1]);
        assert_eq!(r3.total, 6);
        assert!(r3.ok());
        let r2 = poincare_check(&GContext::new(2).unwrap());
        assert_eq!(r2.dims, vec![1, 1, 1]);
        let r20 = poincare_check(&GContext::new(20).unwrap());
        assert_eq!(r20.total, 210);
        assert!(r20.ok());
    }

    #[test]
    fn top_x_power_vanishes() {
        for n in 2..=40usize {
            let e = usize::BITS - 1 - n.leading_zeros();
            let p = (1u32 << (e + 1)) - 1;
            let ctx = GContext::new(n).unwrap();
            assert!(ctx.reduce_monomial(m(p, 0)).is_zero(), "n={n}");
            assert!(!ctx.reduce_monomial(m(p - 1, 0)).is_zero(), "n={n}");
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn class(ctx: &GContext, d: usize, bits: &[bool]) -> BitVector {
            let dim = ctx.dim(d);
            BitVector::from_ones(dim, bits.iter().take(dim).enumerate().filter(|(_, &b)| b).map(|(i, _)| i))
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]
            #[test]
            fn quotient_multiplication_is_a_ring(
                n in 2usize..14,
                d in proptest::array::uniform3(0usize..12),
                bits in proptest::array::uniform3(proptest::collection::vec(any::<bool>(), 16)),
            ) {
                let ctx = GContext::new(n).unwrap();
                let [d1, d2, d3] = d.map(|x| x % (ctx.top_degree() + 1));
                let a = class(&ctx, d1, &bits[0]);
                let b = class(&ctx, d2, &bits[1]);
                let c = class(&ctx, d3, &bits[2]);
                prop_assert_eq!(ctx.multiply(d1, &a, d2, &b), ctx.multiply(d2, &b, d1, &a));
                let ab_c = ctx.multiply(d1 + d2, &ctx.multiply(d1, &a, d2, &b), d3, &c);
                let a_bc = ctx.multiply(d1, &a, d2 + d3, &ctx.multiply(d2, &b, d3, &c));
                prop_assert_eq!(ab_c.len(), ctx.dim(d1 + d2 + d3));
                prop_assert_eq!(ab_c, a_bc);
            }
        }
    }
}
