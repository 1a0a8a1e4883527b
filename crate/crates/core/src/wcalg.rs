//! The ring `H*(W_n) = H*(G_n)[u]/(u^2 = xu)`, `|u| = 1`, which is also
//! `H*(C(RP^n, 2))`.
//!
//! Every class splits as `g + u h` with `g` in `H^D(G_n)` and `h` in
//! `H^(D-1)(G_n)`; [`WClass`] stores the two blocks separately in oracle
//! coordinates of the Grassmann ring.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::f2core::{binom_parity, is_power_of_two, BitMatrix, BitVector};
use crate::grassmann::{ambient_len, GContext, GMonomial};
use crate::Error;

/// Canonical monomial `x^x u^u y^y` with `u` in `{0, 1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WMonomial {
    pub x: u32,
    pub u: bool,
    pub y: u32,
}

impl WMonomial {
    pub fn new(x: u32, u: bool, y: u32) -> Self {
        WMonomial { x, u, y }
    }

    pub fn degree(&self) -> usize {
        self.x as usize + self.u as usize + 2 * self.y as usize
    }

    /// The Grassmann factor: `x^x y^y`.
    pub fn g_part(&self) -> GMonomial {
        GMonomial::new(self.x, self.y)
    }

    pub fn mul(&self, other: &WMonomial) -> WMonomial {
        normalize_wc(RawWMonomial {
            x: self.x + other.x,
            u: self.u as u32 + other.u as u32,
            y: self.y + other.y,
        })
    }
}

impl fmt::Display for WMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        RawWMonomial::from(*self).fmt(f)
    }
}

impl FromStr for WMonomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        s.parse::<RawWMonomial>().map(normalize_wc)
    }
}

/// A monomial `x^x u^u y^y` with any power of `u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RawWMonomial {
    pub x: u32,
    pub u: u32,
    pub y: u32,
}

impl RawWMonomial {
    pub fn degree(&self) -> usize {
        self.x as usize + self.u as usize + 2 * self.y as usize
    }
}

impl From<WMonomial> for RawWMonomial {
    fn from(m: WMonomial) -> Self {
        RawWMonomial {
            x: m.x,
            u: m.u as u32,
            y: m.y,
        }
    }
}

impl fmt::Display for RawWMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, e) in [("x", self.x), ("u", self.u), ("y", self.y)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                e => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

/// Parses space-separated factors `x^a`, `u^e`, `y^b` (exponent defaults to
/// one, repeated factors multiply). `1` is the unit monomial.
impl FromStr for RawWMonomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::ParseMonomial(s.to_string());
        let mut m = RawWMonomial { x: 0, u: 0, y: 0 };
        let tokens: Vec<&str> = s.split(|c: char| c.is_whitespace() || c == '*').filter(|t| !t.is_empty()).collect();
        if tokens.is_empty() {
            return Err(bad());
        }
        for tok in tokens {
            if tok == "1" {
                continue;
            }
            let (var, exp) = match tok.split_once('^') {
                Some((v, e)) => (v, e.parse::<u32>().map_err(|_| bad())?),
                None => (tok, 1),
            };
            let slot = match var {
                "x" => &mut m.x,
                "u" => &mut m.u,
                "y" => &mut m.y,
                _ => return Err(bad()),
            };
            *slot = slot.checked_add(exp).ok_or_else(bad)?;
        }
        Ok(m)
    }
}

/// Applies `x^i u^j = x^(i+j-1) u` for `j > 0`.
pub fn normalize_wc(m: RawWMonomial) -> WMonomial {
    if m.u == 0 {
        WMonomial::new(m.x, false, m.y)
    } else {
        WMonomial::new(m.x + m.u - 1, true, m.y)
    }
}

/// Homogeneous ambient element `g + u h` before any relation of `G_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WPoly {
    pub degree: usize,
    /// Over ambient monomials of degree `degree`.
    pub free: BitVector,
    /// Over ambient monomials of degree `degree - 1`.
    pub ublk: BitVector,
}

impl WPoly {
    pub fn zero(degree: usize) -> Self {
        WPoly {
            degree,
            free: BitVector::zeros(ambient_len(degree)),
            ublk: BitVector::zeros(if degree == 0 { 0 } else { ambient_len(degree - 1) }),
        }
    }

    pub fn monomial(m: WMonomial) -> Self {
        let mut p = WPoly::zero(m.degree());
        p.add_monomial(m);
        p
    }

    pub fn add_monomial(&mut self, m: WMonomial) {
        assert_eq!(m.degree(), self.degree);
        if m.u {
            self.ublk.flip(m.g_part().ambient_index());
        } else {
            self.free.flip(m.g_part().ambient_index());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = WMonomial> + '_ {
        let d = self.degree;
        self.free
            .ones()
            .map(move |j| {
                let g = GMonomial::from_index(d, j);
                WMonomial::new(g.x, false, g.y)
            })
            .chain(self.ublk.ones().map(move |j| {
                let g = GMonomial::from_index(d - 1, j);
                WMonomial::new(g.x, true, g.y)
            }))
    }

    pub fn is_zero(&self) -> bool {
        self.free.is_zero() && self.ublk.is_zero()
    }
}

/// A reduced class in `H^degree(W_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WClass {
    pub degree: usize,
    /// Oracle coordinates in `H^degree(G_n)`.
    pub free: BitVector,
    /// Oracle coordinates in `H^(degree-1)(G_n)`, the coefficient of `u`.
    pub ublk: BitVector,
}

impl WClass {
    pub fn is_zero(&self) -> bool {
        self.free.is_zero() && self.ublk.is_zero()
    }

    /// Coordinates over `WContext::basis(degree)`.
    pub fn coords(&self) -> BitVector {
        self.free.concat(&self.ublk)
    }

    pub fn add(&self, other: &WClass) -> WClass {
        assert_eq!(self.degree, other.degree);
        WClass {
            degree: self.degree,
            free: &self.free ^ &other.free,
            ublk: &self.ublk ^ &other.ublk,
        }
    }
}

/// Which space a class is reported for; the two rings are identified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Space {
    W,
    C,
}

/// Ring data for `H*(W_n)`.
#[derive(Clone, Debug)]
pub struct WContext {
    g: GContext,
}

/// `H*(C(RP^n,2))` uses the same representation.
pub type CContext = WContext;

impl WContext {
    pub fn new(n: usize) -> Result<Self, Error> {
        Ok(WContext { g: GContext::new(n)? })
    }

    pub fn from_grassmann(g: GContext) -> Self {
        WContext { g }
    }

    pub fn n(&self) -> usize {
        self.g.n()
    }

    pub fn grassmann(&self) -> &GContext {
        &self.g
    }

    pub fn grassmann_mut(&mut self) -> &mut GContext {
        &mut self.g
    }

    pub fn top_degree(&self) -> usize {
        2 * self.n() - 1
    }

    fn below(&self, d: usize) -> usize {
        if d == 0 {
            0
        } else {
            self.g.dim(d - 1)
        }
    }

    pub fn dim(&self, d: usize) -> usize {
        self.g.dim(d) + self.below(d)
    }

    /// Free monomials of `H^d(G)` followed by `u` times those of `H^(d-1)(G)`.
    pub fn basis(&self, d: usize) -> Vec<WMonomial> {
        let free = self.g.basis(d).iter().map(|m| WMonomial::new(m.x, false, m.y));
        let ub: &[GMonomial] = if d == 0 { &[] } else { self.g.basis(d - 1) };
        free.chain(ub.iter().map(|m| WMonomial::new(m.x, true, m.y))).collect()
    }

    pub fn zero(&self, d: usize) -> WClass {
        WClass {
            degree: d,
            free: BitVector::zeros(self.g.dim(d)),
            ublk: BitVector::zeros(self.below(d)),
        }
    }

    pub fn one(&self) -> WClass {
        self.reduce_monomial(WMonomial::new(0, false, 0))
    }

    pub fn from_coords(&self, d: usize, coords: &BitVector) -> WClass {
        let fd = self.g.dim(d);
        assert_eq!(coords.len(), self.dim(d));
        WClass {
            degree: d,
            free: coords.slice(0, fd),
            ublk: coords.slice(fd, coords.len() - fd),
        }
    }

    pub fn reduce_monomial(&self, m: WMonomial) -> WClass {
        let mut c = self.zero(m.degree());
        if m.u {
            if !c.ublk.is_empty() {
                c.ublk = self.g.reduce_monomial(m.g_part());
            }
        } else if !c.free.is_empty() {
            c.free = self.g.reduce_monomial(m.g_part());
        }
        c
    }

    pub fn reduce_raw(&self, m: RawWMonomial) -> WClass {
        self.reduce_monomial(normalize_wc(m))
    }

    pub fn reduce(&self, p: &WPoly) -> WClass {
        let mut c = self.zero(p.degree);
        for m in p.terms() {
            c = c.add(&self.reduce_monomial(m));
        }
        c
    }

    /// Basis monomials with nonzero coefficient.
    pub fn terms(&self, c: &WClass) -> Vec<WMonomial> {
        let basis = self.basis(c.degree);
        c.coords().ones().map(|i| basis[i]).collect()
    }

    pub fn multiply(&self, a: &WClass, b: &WClass) -> WClass {
        let mut out = self.zero(a.degree + b.degree);
        if self.dim(out.degree) == 0 {
            return out;
        }
        let tb = self.terms(b);
        for ma in self.terms(a) {
            for mb in &tb {
                out = out.add(&self.reduce_monomial(ma.mul(mb)));
            }
        }
        out
    }

    /// `Sq^k c` for `k = 0..=deg c`.
    pub fn steenrod_total(&self, c: &WClass) -> Vec<WClass> {
        let d = c.degree;
        let mut out: Vec<WClass> = (0..=d).map(|k| self.zero(d + k)).collect();
        for m in self.terms(c) {
            for (k, p) in sq_ambient(m).iter().enumerate() {
                out[k] = out[k].add(&self.reduce(p));
            }
        }
        out
    }

    pub fn sq(&self, k: usize, c: &WClass) -> WClass {
        if k > c.degree {
            return self.zero(c.degree + k);
        }
        self.steenrod_total(c).swap_remove(k)
    }
}

/// Total square of an ambient monomial, split by `k`: entry `k` is
/// `Sq^k(m)` as an ambient element of degree `|m| + k`.
///
/// Uses the ring homomorphism with `Sq x = x + x^2`, `Sq y = y + xy + y^2`
/// and `Sq u = u + u^2 = u + xu`.
pub fn sq_ambient(m: WMonomial) -> Vec<WPoly> {
    let d = m.degree();
    let mut out: Vec<WPoly> = (0..=d).map(|k| WPoly::zero(d + k)).collect();
    let (a, b) = (m.x as i64, m.y as i64);
    // (x + x^2)^a = sum_i C(a,i) x^(a+i)
    let x_terms: Vec<i64> = (0..=a).filter(|&i| binom_parity(a, i)).collect();
    // (y + xy + y^2)^b = y^b sum C(b,p) C(b-p,q) x^p y^q
    let mut y_terms = Vec::new();
    for p in (0..=b).filter(|&p| binom_parity(b, p)) {
        for q in (0..=b - p).filter(|&q| binom_parity(b - p, q)) {
            y_terms.push((p, q));
        }
    }
    let u_terms: &[i64] = if m.u { &[0, 1] } else { &[0] };
    for &i in &x_terms {
        for &(p, q) in &y_terms {
            for &e in u_terms {
                let k = (i + p + 2 * q + e) as usize;
                let mono = WMonomial::new((a + i + p + e) as u32, m.u, (b + q) as u32);
                out[k].add_monomial(mono);
            }
        }
    }
    out
}

/// Whether `x^(2^t-2) u y^(n-2^(t-1))` for some `t >= 1`, `2^(t-1) <= n`.
pub fn is_top_monomial(n: usize, m: WMonomial) -> bool {
    if !m.u || m.degree() != 2 * n - 1 {
        return false;
    }
    let half = (m.x as usize + 2) / 2;
    m.x.is_multiple_of(2) && is_power_of_two(half as u64) && half <= n && m.y as usize == n - half
}

/// The canonical representatives of the generator of `H^(2n-1)`.
pub fn top_monomials(n: usize) -> Vec<WMonomial> {
    let mut v = Vec::new();
    let mut half = 1usize;
    while half <= n {
        v.push(WMonomial::new((2 * half - 2) as u32, true, (n - half) as u32));
        half *= 2;
    }
    v
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopClassReport {
    pub n: usize,
    pub degree: usize,
    pub dim: usize,
    pub representatives: Vec<WMonomial>,
    /// Every representative reduces to the same nonzero class.
    pub representatives_agree: bool,
    /// Monomials where the oracle and the predicate disagree.
    pub mismatches: Vec<WMonomial>,
}

impl TopClassReport {
    pub fn ok(&self) -> bool {
        self.dim == 1 && self.representatives_agree && self.mismatches.is_empty()
    }
}

/// Identifies `H^(2n-1)` and checks the monomial predicate against oracle
/// reduction for every canonical monomial of that degree.
pub fn top_class_wc(ctx: &WContext) -> TopClassReport {
    let n = ctx.n();
    let d = ctx.top_degree();
    let representatives = top_monomials(n);
    let gen = ctx.reduce_monomial(representatives[0]);
    let representatives_agree = !gen.is_zero() && representatives.iter().all(|&m| ctx.reduce_monomial(m) == gen);
    let mut mismatches = Vec::new();
    for u in [false, true] {
        let rest = d - u as usize;
        for y in 0..=rest / 2 {
            let m = WMonomial::new((rest - 2 * y) as u32, u, y as u32);
            if ctx.reduce_monomial(m).is_zero() == is_top_monomial(n, m) {
                mismatches.push(m);
            }
        }
    }
    TopClassReport {
        n,
        degree: d,
        dim: ctx.dim(d),
        representatives,
        representatives_agree,
        mismatches,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WuReport {
    pub n: usize,
    pub basis_checked: usize,
    pub failures: Vec<WMonomial>,
}

/// Checks `Sq^1 z = (n mod 2) x z` for every basis element `z` of
/// `H^(2n-2)(W_n)`.
pub fn wu_w1_check(ctx: &WContext) -> WuReport {
    let n = ctx.n();
    let d = 2 * n - 2;
    let x = ctx.reduce_monomial(WMonomial::new(1, false, 0));
    let mut failures = Vec::new();
    let basis = ctx.basis(d);
    for &m in &basis {
        let z = ctx.reduce_monomial(m);
        let sq1 = ctx.sq(1, &z);
        let expected = if n % 2 == 1 { ctx.multiply(&x, &z) } else { ctx.zero(d + 1) };
        if sq1 != expected {
            failures.push(m);
        }
    }
    WuReport {
        n,
        basis_checked: basis.len(),
        failures,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityReport {
    pub n: usize,
    pub dims_symmetric: bool,
    /// Degrees where the cup pairing into the top class is degenerate.
    pub degenerate_degrees: Vec<usize>,
}

impl DualityReport {
    pub fn ok(&self) -> bool {
        self.dims_symmetric && self.degenerate_degrees.is_empty()
    }
}

/// Checks that `H^d x H^(top-d) -> H^top = Z2` is a perfect pairing in
/// every degree.
pub fn poincare_pairing_check(ctx: &WContext) -> DualityReport {
    let top = ctx.top_degree();
    let dims_symmetric = ctx.dim(top) == 1 && (0..=top).all(|d| ctx.dim(d) == ctx.dim(top - d)) && ctx.dim(top + 1) == 0;
    let mut degenerate_degrees = Vec::new();
    if dims_symmetric {
        for d in 0..=top {
            let (left, right) = (ctx.basis(d), ctx.basis(top - d));
            // H^top is one-dimensional, so a product is either zero or the generator.
            let rows = left
                .iter()
                .map(|a| BitVector::from_ones(right.len(), (0..right.len()).filter(|&j| !ctx.reduce_monomial(a.mul(&right[j])).is_zero())))
                .collect();
            if BitMatrix::from_rows(right.len(), rows).rank() != left.len() {
                degenerate_degrees.push(d);
            }
        }
    }
    DualityReport {
        n: ctx.n(),
        dims_symmetric,
        degenerate_degrees,
    }
}

/// Reduced form of a parsed monomial, for display.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalForm {
    pub n: usize,
    pub input: String,
    pub normalized: String,
    pub degree: usize,
    pub zero: bool,
    /// Basis monomials summing to the class.
    pub terms: Vec<String>,
}

pub fn normal_form(ctx: &WContext, raw: RawWMonomial) -> NormalForm {
    let m = normalize_wc(raw);
    let c = ctx.reduce_monomial(m);
    NormalForm {
        n: ctx.n(),
        input: raw.to_string(),
        normalized: m.to_string(),
        degree: m.degree(),
        zero: c.is_zero(),
        terms: ctx.terms(&c).iter().map(|t| t.to_string()).collect(),
    }
}
