//! Zero-divisor cup length of `C_n = C(RP^n, 2)` over the generators
//! `xb = x(x)1 + 1(x)x`, `ub`, `yb`, and the resulting bounds on
//! topological complexity.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::f2core::{binom_parity, BitMatrix, BitVector};
use crate::wcalg::{RawWMonomial, WClass, WContext, WMonomial};
use crate::Error;

/// Largest `n` accepted by [`zcl_exhaustive`].
pub const EXHAUSTIVE_MAX_N: usize = 8;

/// `n = 2^e + d` with `0 <= d < 2^e`, and `r = max{s : 2^s <= d + 1/2}`
/// (so `r = -1` exactly when `d = 0`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub e: u32,
    pub d: usize,
    pub r: i32,
}

impl Decomposition {
    pub fn of(n: usize) -> Result<Self, Error> {
        if n < 2 {
            return Err(Error::InvalidN(n));
        }
        let e = usize::BITS - 1 - n.leading_zeros();
        let d = n - (1 << e);
        let r = if d == 0 { -1 } else { (usize::BITS - 1 - d.leading_zeros()) as i32 };
        Ok(Decomposition { e, d, r })
    }

    /// `2^(r+1)`.
    pub fn two_r1(&self) -> usize {
        1 << (self.r + 1)
    }

    /// `2^(e+1)`.
    pub fn two_e1(&self) -> usize {
        1 << (self.e + 1)
    }

    /// Exponents of `xb, ub, yb` in the maximal product.
    pub fn witness_exponents(&self) -> (usize, usize, usize) {
        (self.two_e1() - 1, self.two_e1() - 2, self.two_r1() - 1)
    }
}

/// An element of `H*(C_n) (x) H*(C_n)`, one coefficient matrix per bidegree
/// (rows over the basis of the left degree, columns over the right).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorClass {
    pub n: usize,
    pub blocks: BTreeMap<(usize, usize), BitMatrix>,
}

impl TensorClass {
    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(BitMatrix::is_zero)
    }

    pub fn block(&self, d1: usize, d2: usize) -> Option<&BitMatrix> {
        self.blocks.get(&(d1, d2))
    }
}

/// Odd-coefficient exponents `i` in `(z(x)1 + 1(x)z)^m = sum C(m,i) z^i (x) z^(m-i)`.
fn odd_splits(m: usize) -> Vec<usize> {
    (0..=m).filter(|&i| binom_parity(m as i64, i as i64)).collect()
}

/// `xb^a ub^b yb^c`, expanded term by term and reduced on each side.
pub fn zero_divisor_product(ctx: &WContext, a: usize, b: usize, c: usize) -> TensorClass {
    let n = ctx.n();
    let top = ctx.top_degree();
    let mut blocks: BTreeMap<(usize, usize), BitMatrix> = BTreeMap::new();
    if a + b + 2 * c > 2 * top {
        return TensorClass { n, blocks };
    }
    let mut cache: HashMap<WMonomial, WClass> = HashMap::new();
    let mut reduce = |m: WMonomial| cache.entry(m).or_insert_with(|| ctx.reduce_monomial(m)).coords();
    let (xs, us, ys) = (odd_splits(a), odd_splits(b), odd_splits(c));
    for &i in &xs {
        for &j in &us {
            for &l in &ys {
                let left = crate::wcalg::normalize_wc(RawWMonomial { x: i as u32, u: j as u32, y: l as u32 });
                let right = crate::wcalg::normalize_wc(RawWMonomial {
                    x: (a - i) as u32,
                    u: (b - j) as u32,
                    y: (c - l) as u32,
                });
                let (d1, d2) = (left.degree(), right.degree());
                if d1 > top || d2 > top {
                    continue;
                }
                let lv = reduce(left);
                let rv = reduce(right);
                if lv.is_zero() || rv.is_zero() {
                    continue;
                }
                blocks
                    .entry((d1, d2))
                    .or_insert_with(|| BitMatrix::zeros(lv.len(), rv.len()))
                    .add_outer(&lv, &rv);
            }
        }
    }
    TensorClass { n, blocks }
}

/// Whether `xb^a ub^b yb^c != 0`.
pub fn zero_divisor_power(ctx: &WContext, a: usize, b: usize, c: usize) -> bool {
    !zero_divisor_product(ctx, a, b, c).is_zero()
}

/// `2^(e+2) + 2^(r+1) - 4`.
pub fn zcl_formula(n: usize) -> Result<usize, Error> {
    let dec = Decomposition::of(n)?;
    Ok(2 * dec.two_e1() + dec.two_r1() - 4)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub n: usize,
    pub exponents: (usize, usize, usize),
    pub product_nonzero: bool,
    pub bidegree: (usize, usize),
    /// `x^(2^(e+1)-2) u y^d (x) x^(2^(e+1)-2) y^(2^(r+1)-1-d)`.
    pub expected_term: (WMonomial, WMonomial),
    /// The block with `u`-free right factor equals the expected term, which is nonzero.
    pub block_matches: bool,
    /// Raising any single exponent by one kills the product.
    pub maximal: bool,
}

impl WitnessRecord {
    pub fn ok(&self) -> bool {
        self.product_nonzero && self.block_matches && self.maximal
    }
}

/// Checks the lower-bound product and its reduction to a single tensor term.
pub fn zcl_witness(ctx: &WContext) -> Result<WitnessRecord, Error> {
    let n = ctx.n();
    let dec = Decomposition::of(n)?;
    let (a, b, c) = dec.witness_exponents();
    let prod = zero_divisor_product(ctx, a, b, c);
    let p = (dec.two_e1() - 2) as u32;
    let left = WMonomial::new(p, true, dec.d as u32);
    let right = WMonomial::new(p, false, (dec.two_r1() - 1 - dec.d) as u32);
    let bidegree = (left.degree(), right.degree());
    let lv = ctx.reduce_monomial(left).coords();
    let rfree = ctx.reduce_monomial(right).free;
    let block_matches = !lv.is_zero()
        && !rfree.is_zero()
        && match prod.block(bidegree.0, bidegree.1) {
            Some(block) => {
                let free_cols = rfree.len();
                let restricted = BitMatrix::from_rows(free_cols, block.row_iter().map(|r| r.slice(0, free_cols)).collect());
                let mut expected = BitMatrix::zeros(lv.len(), free_cols);
                expected.add_outer(&lv, &rfree);
                restricted == expected
            }
            None => false,
        };
    let maximal = [(a + 1, b, c), (a, b + 1, c), (a, b, c + 1)]
        .into_iter()
        .all(|(a, b, c)| !zero_divisor_power(ctx, a, b, c));
    Ok(WitnessRecord {
        n,
        exponents: (a, b, c),
        product_nonzero: !prod.is_zero(),
        bidegree,
        expected_term: (left, right),
        block_matches,
        maximal,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExhaustiveResult {
    pub n: usize,
    pub value: usize,
    /// Lexicographically first `(a, b, c)` attaining the value.
    pub argmax: (usize, usize, usize),
    pub products_evaluated: usize,
}

/// Maximizes `a + b + c` over nonzero `xb^a ub^b yb^c`.
///
/// The set of nonzero exponent triples is closed downward, so for each
/// `(a, b)` only the first vanishing `c` is needed.
pub fn zcl_exhaustive(ctx: &WContext) -> Result<ExhaustiveResult, Error> {
    let n = ctx.n();
    if n > EXHAUSTIVE_MAX_N {
        return Err(Error::BudgetExceeded { n, max: EXHAUSTIVE_MAX_N });
    }
    let bound = 2 * ctx.top_degree();
    let pairs: Vec<(usize, usize)> = (0..=bound).flat_map(|a| (0..=bound - a).map(move |b| (a, b))).collect();
    let slices: Vec<(usize, usize, Option<usize>, usize)> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let mut best = None;
            let mut evaluated = 0;
            let mut c = 0;
            while a + b + 2 * c <= bound {
                evaluated += 1;
                if !zero_divisor_power(ctx, a, b, c) {
                    break;
                }
                best = Some(c);
                c += 1;
            }
            (a, b, best, evaluated)
        })
        .collect();
    let products_evaluated = slices.iter().map(|s| s.3).sum();
    let (value, argmax) = slices
        .iter()
        .filter_map(|&(a, b, c, _)| c.map(|c| (a + b + c, (a, b, c))))
        .fold((0, (0, 0, 0)), |best, cand| if cand.0 > best.0 { cand } else { best });
    Ok(ExhaustiveResult {
        n,
        value,
        argmax,
        products_evaluated,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TcBounds {
    pub lower: usize,
    pub upper: usize,
    pub gap: usize,
}

/// `zcl <= TC <= 2 dim W_n = 2^(e+2) + 4d - 2`.
pub fn tc_bounds(n: usize) -> Result<TcBounds, Error> {
    let dec = Decomposition::of(n)?;
    let lower = zcl_formula(n)?;
    let upper = 2 * dec.two_e1() + 4 * dec.d - 2;
    Ok(TcBounds {
        lower,
        upper,
        gap: upper - lower,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZclResult {
    pub n: usize,
    pub decomposition: Decomposition,
    pub formula: usize,
    pub witness: Option<WitnessRecord>,
    pub exhaustive: Option<ExhaustiveResult>,
    pub bounds: TcBounds,
    pub note: String,
}

pub const GENERATOR_NOTE: &str =
    "zero-divisor products are taken over the generators xb, ub, yb; general zero-divisor products are not searched";

/// Everything known about `zcl(C_n)`: formula, bounds, and optionally the
/// witness check and the exhaustive search.
pub fn zcl_report(ctx: &WContext, witness: bool, exhaustive: bool) -> Result<ZclResult, Error> {
    let n = ctx.n();
    Ok(ZclResult {
        n,
        decomposition: Decomposition::of(n)?,
        formula: zcl_formula(n)?,
        witness: if witness { Some(zcl_witness(ctx)?) } else { None },
        exhaustive: if exhaustive { Some(zcl_exhaustive(ctx)?) } else { None },
        bounds: tc_bounds(n)?,
        note: GENERATOR_NOTE.to_string(),
    })
}

/// `z (x) 1 + 1 (x) z` maps to `z + z = 0` under the cup product.
pub fn is_zero_divisor(left: &BitVector, right: &BitVector) -> bool {
    (left ^ right).is_zero()
}
