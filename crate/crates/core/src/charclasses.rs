//! Stiefel-Whitney classes of the tangent and stable normal bundles of
//! `G_n`, `W_n` and `C_n = C(RP^n, 2)`, and the (non)immersion certificates
//! they give.
//!
//! Total classes, as series in `H*(W_n)`:
//!
//! | bundle | series |
//! |--------|--------|
//! | tau(G) | `(1+x)^-2 (1+x+y)^(n+1)` |
//! | tau(W) | `(1+x)^-1 (1+x+y)^(n+1)` |
//! | eta(W) | `(1+x) (1+x+y)^-(n+1)` |
//! | tau(C) | `(1+x+u) w(tau(W))` |
//! | eta(C) | `w(eta(W)) (1+x+u)^-1 = (1+x+y)^-(n+1) + u (1+u+y)^-(n+1)` |
//!
//! `eta(C)` has two routes: the product of inverted series, and the
//! binomial expansion of the right-hand form. They are compared exactly.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::f2core::{binom_parity, is_power_of_two};
use crate::series::Series;
use crate::wcalg::{WClass, WContext, WMonomial, WPoly};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Bundle {
    TauG,
    TauW,
    EtaW,
    TauC,
    EtaC,
}

impl Bundle {
    pub const ALL: [Bundle; 5] = [Bundle::TauG, Bundle::TauW, Bundle::EtaW, Bundle::TauC, Bundle::EtaC];

    pub fn name(&self) -> &'static str {
        match self {
            Bundle::TauG => "tau-g",
            Bundle::TauW => "tau-w",
            Bundle::EtaW => "eta-w",
            Bundle::TauC => "tau-c",
            Bundle::EtaC => "eta-c",
        }
    }
}

impl fmt::Display for Bundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Bundle {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        Bundle::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| Error::UnknownBundle(s.to_string()))
    }
}

fn w(x: u32, u: bool, y: u32) -> WMonomial {
    WMonomial::new(x, u, y)
}

/// Total Stiefel-Whitney class as an ambient series, by series inversion
/// and binary powering.
pub fn bundle_series(n: usize, bundle: Bundle, cutoff: usize) -> Series {
    let one = w(0, false, 0);
    let x = w(1, false, 0);
    let y = w(0, false, 1);
    let u = w(0, true, 0);
    let one_x = Series::from_terms(cutoff, [one, x]);
    let one_x_y = Series::from_terms(cutoff, [one, x, y]);
    let one_x_u = Series::from_terms(cutoff, [one, x, u]);
    let e = n as i64 + 1;
    let inv = |s: Series| s.inverse().expect("unit constant term");
    let tau_w = || inv(one_x.clone()).mul(&one_x_y.pow(e as u64));
    let eta_w = || one_x.mul(&inv(one_x_y.pow(e as u64)));
    match bundle {
        Bundle::TauG => inv(one_x.pow(2)).mul(&one_x_y.pow(e as u64)),
        Bundle::TauW => tau_w(),
        Bundle::EtaW => eta_w(),
        Bundle::TauC => one_x_u.mul(&tau_w()),
        Bundle::EtaC => eta_w().mul(&inv(one_x_u)),
    }
}

/// Degree-`d` part of `(1+x+y)^-(n+1) + u (1+u+y)^-(n+1)`, expanded with
/// `(1+a+y)^-m = sum_j C(-m, j) y^j (1+a)^(-m-j)` and `u^(k+1) = x^k u`.
pub fn eta_c_closed_form(n: usize, d: usize) -> WPoly {
    let m = -(n as i64) - 1;
    let mut p = WPoly::zero(d);
    for j in 0..=d / 2 {
        let cj = binom_parity(m, j as i64);
        if !cj {
            continue;
        }
        // x^i y^j with i + 2j = d
        let i = d - 2 * j;
        if binom_parity(m - j as i64, i as i64) {
            p.add_monomial(w(i as u32, false, j as u32));
        }
        // u^(k+1) y^j with k + 1 + 2j = d
        if d > 2 * j {
            let k = d - 2 * j - 1;
            if binom_parity(m - j as i64, k as i64) {
                p.add_monomial(w(k as u32, true, j as u32));
            }
        }
    }
    p
}

/// A total Stiefel-Whitney class, reduced degree by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwSeries {
    pub n: usize,
    pub bundle: Bundle,
    pub cutoff: usize,
    /// `classes[k]` is `w_k`.
    pub classes: Vec<WClass>,
}

pub fn sw_series(ctx: &WContext, bundle: Bundle, cutoff: usize) -> Result<SwSeries, Error> {
    let n = ctx.n();
    if cutoff > ctx.top_degree() {
        return Err(Error::AboveTop { n, degree: cutoff });
    }
    let s = bundle_series(n, bundle, cutoff);
    Ok(SwSeries {
        n,
        bundle,
        cutoff,
        classes: (0..=cutoff).map(|d| ctx.reduce(&s.part(d))).collect(),
    })
}

fn first_difference(ctx: &WContext, a: &WClass, b: &WClass) -> String {
    let basis = ctx.basis(a.degree);
    let diff = a.add(b).coords();
    match diff.first_one() {
        Some(i) => format!("degree {}: coefficient of {} differs", a.degree, basis[i]),
        None => format!("degree {}: no difference", a.degree),
    }
}

/// `w_k(eta(C_n))`, computed by both routes; disagreement is an error.
pub fn w_eta_c_coeff(ctx: &WContext, k: usize) -> Result<WClass, Error> {
    let n = ctx.n();
    if k > ctx.top_degree() {
        return Err(Error::AboveTop { n, degree: k });
    }
    let closed = ctx.reduce(&eta_c_closed_form(n, k));
    let series = ctx.reduce(&bundle_series(n, Bundle::EtaC, k).part(k));
    if closed != series {
        return Err(Error::RouteMismatch(format!("eta(C_{n}) {}", first_difference(ctx, &closed, &series))));
    }
    Ok(closed)
}

/// Compares the two `eta(C_n)` routes in every degree with a single series
/// computation. Also compares the ambient (unreduced) expansions.
pub fn eta_c_routes_agree(ctx: &WContext) -> Result<(), Error> {
    let n = ctx.n();
    let top = ctx.top_degree();
    let s = bundle_series(n, Bundle::EtaC, top);
    for d in 0..=top {
        let closed = eta_c_closed_form(n, d);
        let series = s.part(d);
        let (rc, rs) = (ctx.reduce(&closed), ctx.reduce(&series));
        if rc != rs {
            return Err(Error::RouteMismatch(format!("eta(C_{n}) {}", first_difference(ctx, &rc, &rs))));
        }
        if closed != series {
            return Err(Error::RouteMismatch(format!("eta(C_{n}) ambient expansions differ in degree {d}")));
        }
    }
    Ok(())
}

/// Parity of `w_(2n-1)(eta(C_n))` from the closed sum
/// `sum_t C(2n - 2^(t-1), n - 2^(t-1)) C(2n + 2^(t-1) - 2, 2^t - 2)`
/// over `t >= 1` with `2^(t-1) <= n`.
pub fn top_sw_parity(n: usize) -> bool {
    let n = n as i64;
    let mut acc = false;
    let mut half = 1i64;
    while half <= n {
        acc ^= binom_parity(2 * n - half, n - half) && binom_parity(2 * n + half - 2, 2 * half - 2);
        half *= 2;
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WhitneyReport {
    pub n: usize,
    /// `w(tau(C)) w(eta(C)) = 1`, with `eta(C)` from the binomial expansion.
    pub c_ok: bool,
    /// `w(tau(W)) w(eta(W)) = 1`.
    pub w_ok: bool,
}

impl WhitneyReport {
    pub fn ok(&self) -> bool {
        self.c_ok && self.w_ok
    }
}

pub fn whitney_duality_check(ctx: &WContext) -> WhitneyReport {
    let n = ctx.n();
    let top = ctx.top_degree();
    let mut eta_c = Series::zero(top);
    for d in 0..=top {
        for m in eta_c_closed_form(n, d).terms() {
            eta_c.add_monomial(m);
        }
    }
    let is_one = |s: &Series| (0..=top).all(|d| ctx.reduce(&s.part(d)) == if d == 0 { ctx.one() } else { ctx.zero(d) });
    let c_prod = bundle_series(n, Bundle::TauC, top).mul(&eta_c);
    let w_prod = bundle_series(n, Bundle::TauW, top).mul(&bundle_series(n, Bundle::EtaW, top));
    WhitneyReport {
        n,
        c_ok: is_one(&c_prod),
        w_ok: is_one(&w_prod),
    }
}

/// Families `n = 2^r + c` for which `w_(2n - 4c - 1)(eta(C_n))` is nonzero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "2-power")]
    TwoPower,
    #[serde(rename = "2^r+1")]
    PlusOne,
    #[serde(rename = "2^r+2")]
    PlusTwo,
    #[serde(rename = "2^r+4")]
    PlusFour,
}

impl Family {
    pub fn label(&self) -> &'static str {
        match self {
            Family::TwoPower => "2-power",
            Family::PlusOne => "2^r+1",
            Family::PlusTwo => "2^r+2",
            Family::PlusFour => "2^r+4",
        }
    }

    fn offset(&self) -> usize {
        match self {
            Family::TwoPower => 0,
            Family::PlusOne => 1,
            Family::PlusTwo => 2,
            Family::PlusFour => 4,
        }
    }

    /// Degree `2n - 4c - 1` of the predicted nonzero class.
    pub fn degree(&self, n: usize) -> Option<usize> {
        (2 * n).checked_sub(4 * self.offset() + 1).filter(|&k| k >= 1)
    }
}

/// `(family, 2^r)` when `n` is a power of two or `2^r + c` with the
/// predicted degree positive.
pub fn classify(n: usize) -> Option<(Family, usize)> {
    if is_power_of_two(n as u64) {
        return Some((Family::TwoPower, n));
    }
    [Family::PlusOne, Family::PlusTwo, Family::PlusFour].into_iter().find_map(|f| {
        let base = n.checked_sub(f.offset())?;
        (is_power_of_two(base as u64) && f.degree(n).is_some()).then_some((f, base))
    })
}

/// Largest power of two not exceeding `n`.
pub fn floor_power_of_two(n: usize) -> usize {
    1 << (usize::BITS - 1 - n.leading_zeros())
}

/// `C_n` has dimension `2n`; `w_k(eta) != 0` rules out immersions in
/// `R^(2n+k-1)`.
pub fn implied_nonimmersion_dim(n: usize, k: usize) -> usize {
    2 * n + k - 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchHit {
    pub n: usize,
    pub k: usize,
    pub nonzero: bool,
    /// A basis monomial with nonzero coefficient in `w_k`.
    pub witness: Option<WMonomial>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyCheck {
    pub family: Family,
    /// The power of two `2^r` with `n = 2^r + c`.
    pub base: usize,
    pub hit: SearchHit,
    pub implied_nonimmersion_dim: usize,
    /// Nonimmersion dimension `4 * 2^r - 2` for `C(RP^(2^r), 2)`.
    pub two_power_dim: usize,
}

impl FamilyCheck {
    pub fn dominated(&self) -> bool {
        self.implied_nonimmersion_dim <= self.two_power_dim
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRecord {
    pub n: usize,
    /// `w_k(eta(C_n))` for the largest `k` where it is nonzero.
    pub largest: SearchHit,
    pub family: Option<FamilyCheck>,
    /// Nonimmersion dimension for the largest power of two `<= n`.
    pub two_power_dim: usize,
}

fn search_one(n: usize) -> SearchRecord {
    let ctx = WContext::new(n).expect("n >= 2");
    let hit = |k: usize| {
        let c = ctx.reduce(&eta_c_closed_form(n, k));
        SearchHit {
            n,
            k,
            nonzero: !c.is_zero(),
            witness: ctx.terms(&c).first().copied(),
        }
    };
    let largest = (0..=ctx.top_degree())
        .rev()
        .map(hit)
        .find(|h| h.nonzero)
        .expect("w_0 = 1");
    let family = classify(n).map(|(family, base)| {
        let k = family.degree(n).expect("classified");
        FamilyCheck {
            family,
            base,
            hit: hit(k),
            implied_nonimmersion_dim: implied_nonimmersion_dim(n, k),
            two_power_dim: 4 * base - 2,
        }
    });
    SearchRecord {
        n,
        largest,
        family,
        two_power_dim: 4 * floor_power_of_two(n) - 2,
    }
}

/// For each `2 <= n <= n_max`, the top nonzero `w_k(eta(C_n))` and the
/// family prediction when `n` belongs to one. Uses the binomial route.
pub fn sw_search(n_max: usize) -> Vec<SearchRecord> {
    if n_max < 2 {
        return Vec::new();
    }
    (2..=n_max).into_par_iter().map(search_one).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Grounds {
    /// A computed nonzero characteristic class.
    ComputedClass,
    /// Obstruction theory, with its cohomological inputs computed here.
    CitedObstructionTheory,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImmersionReport {
    pub n: usize,
    pub manifold_dim: usize,
    pub two_power: bool,
    pub generic_immersion_dim: usize,
    pub generic_embedding_dim: usize,
    /// No immersion in this Euclidean dimension.
    pub nonimmersion_dim: Option<usize>,
    /// No closed embedding in this Euclidean dimension.
    pub nonembedding_dim: Option<usize>,
    /// Immersion exists in this Euclidean dimension.
    pub immersion_dim: Option<usize>,
    pub grounds: Grounds,
    pub certificates: Vec<Certificate>,
    pub cited: Vec<String>,
}

impl ImmersionReport {
    pub fn certificates_hold(&self) -> bool {
        self.certificates.iter().all(|c| c.holds)
    }
}

/// `y + u^2 + C(n+2, 2) x^2`, reduced.
pub fn expected_w2_even(ctx: &WContext) -> WClass {
    let n = ctx.n() as i64;
    let mut p = WPoly::zero(2);
    p.add_monomial(w(0, false, 1));
    p.add_monomial(w(1, true, 0));
    if binom_parity(n + 2, 2) {
        p.add_monomial(w(2, false, 0));
    }
    ctx.reduce(&p)
}

pub fn immersion_report(ctx: &WContext) -> Result<ImmersionReport, Error> {
    let n = ctx.n();
    let two_power = is_power_of_two(n as u64);
    let mut report = ImmersionReport {
        n,
        manifold_dim: 2 * n,
        two_power,
        generic_immersion_dim: 4 * n - 1,
        generic_embedding_dim: 4 * n,
        nonimmersion_dim: None,
        nonembedding_dim: None,
        immersion_dim: None,
        grounds: Grounds::ComputedClass,
        certificates: Vec::new(),
        cited: Vec::new(),
    };
    if two_power {
        let top = w_eta_c_coeff(ctx, 2 * n - 1)?;
        report.certificates.push(Certificate {
            name: format!("w_{}(eta) != 0", 2 * n - 1),
            holds: !top.is_zero(),
            detail: format!("closed-form parity {}", top_sw_parity(n) as u8),
        });
        report.nonimmersion_dim = Some(4 * n - 2);
        report.nonembedding_dim = Some(4 * n - 1);
        report.cited.push("a nonzero w_k of the stable normal bundle of a noncompact m-manifold rules out immersion in R^(m+k-1) and closed embedding in R^(m+k)".into());
        return Ok(report);
    }
    report.grounds = Grounds::CitedObstructionTheory;
    report.immersion_dim = Some(4 * n - 3);
    let wtop = w_eta_c_coeff(ctx, 2 * n - 2)?;
    report.certificates.push(Certificate {
        name: format!("w_{}(eta) = 0", 2 * n - 2),
        holds: wtop.is_zero(),
        detail: "first obstruction to a lift to BO(2n-3)".into(),
    });
    report.cited.push("Hirsch: an immersion in R^(4n-3) exists iff the stable normal bundle lifts to BO(2n-3)".into());
    report.cited.push("the lift's obstructions lie in H^(2n-2)(C_n; Z2) and H^(2n-1)(C_n; pi_(2n-2)(V_(2n-3))); the latter group is 0 for n odd".into());
    if n.is_multiple_of(2) {
        let w2 = w_eta_c_coeff(ctx, 2)?;
        report.certificates.push(Certificate {
            name: "w_2(eta) = y + u^2 + C(n+2,2) x^2".into(),
            holds: w2 == expected_w2_even(ctx),
            detail: String::new(),
        });
        let witness = sq2_indeterminacy_witness(ctx);
        report.certificates.push(Certificate {
            name: "Sq^2 + w_2 indeterminacy is onto H^(2n-1)".into(),
            holds: witness.is_ok(),
            detail: match &witness {
                Ok(wit) => format!("z = {} (t = {})", wit.class, wit.t),
                Err(e) => e.to_string(),
            },
        });
        report.cited.push("the final obstruction in H^(2n-1) is defined modulo the image of Sq^2 + w_2".into());
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sq2Witness {
    pub n: usize,
    pub t: u32,
    /// `x^(2^t - 3) y^(n - 2^(t-1))` in degree `2n - 3`.
    pub class: WMonomial,
    pub sq2_zero: bool,
    pub y_zero: bool,
    pub x2_zero: bool,
    pub u2_nonzero: bool,
    /// `(Sq^2 + w_2 .) z != 0`.
    pub indeterminacy_nonzero: bool,
    /// Every `t` that works.
    pub all_t: Vec<u32>,
}

/// Finds `t` with `z = x^(2^t-3) y^(n-2^(t-1))` satisfying `Sq^2 z = 0`,
/// `yz = 0`, `x^2 z = 0`, `u^2 z != 0`.
pub fn sq2_indeterminacy_witness(ctx: &WContext) -> Result<Sq2Witness, Error> {
    let n = ctx.n();
    if !n.is_multiple_of(2) || is_power_of_two(n as u64) || n < 6 {
        return Err(Error::Precondition(format!("n = {n} must be even, at least 6 and not a power of two")));
    }
    let red = |x: u32, u: bool, y: u32| ctx.reduce_monomial(w(x, u, y));
    let y = red(0, false, 1);
    let x2 = red(2, false, 0);
    let u2 = red(1, true, 0);
    let w2 = w_eta_c_coeff(ctx, 2)?;
    let mut found: Vec<Sq2Witness> = Vec::new();
    let mut t = 2u32;
    while (1usize << (t - 1)) <= n {
        let class = w((1 << t) - 3, false, (n - (1 << (t - 1))) as u32);
        let z = ctx.reduce_monomial(class);
        let sq2 = ctx.sq(2, &z);
        let cand = Sq2Witness {
            n,
            t,
            class,
            sq2_zero: sq2.is_zero(),
            y_zero: ctx.multiply(&y, &z).is_zero(),
            x2_zero: ctx.multiply(&x2, &z).is_zero(),
            u2_nonzero: !ctx.multiply(&u2, &z).is_zero(),
            indeterminacy_nonzero: !sq2.add(&ctx.multiply(&w2, &z)).is_zero(),
            all_t: Vec::new(),
        };
        if cand.sq2_zero && cand.y_zero && cand.x2_zero && cand.u2_nonzero {
            found.push(cand);
        }
        t += 1;
    }
    let all_t: Vec<u32> = found.iter().map(|c| c.t).collect();
    let mut first = found
        .into_iter()
        .next()
        .ok_or_else(|| Error::RouteMismatch(format!("no Sq^2 indeterminacy witness for n = {n}")))?;
    first.all_t = all_t;
    Ok(first)
}
