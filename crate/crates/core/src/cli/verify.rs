//! Verification suites. Each suite sweeps a range of instances and collects
//! failure certificates instead of stopping at the first one.

use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::charclasses::{eta_c_closed_form, eta_c_routes_agree, top_sw_parity, whitney_duality_check};
use crate::f2core::{matlem_det, power_sum_matrix};
use crate::grassmann::{hg_inductive_construct, poincare_check, verify_hg_vs_oracle};
use crate::tcomplexity::{zcl_exhaustive, zcl_formula, zcl_witness, EXHAUSTIVE_MAX_N};
use crate::wcalg::{poincare_pairing_check, top_class_wc, wu_w1_check};
use crate::{Error, WContext};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Hg,
    Matlem,
    Duality,
    Wu,
    Whitney,
    Zcl,
    TopClass,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Hg,
        Suite::Matlem,
        Suite::Duality,
        Suite::Wu,
        Suite::Whitney,
        Suite::Zcl,
        Suite::TopClass,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Hg => "hg",
            Suite::Matlem => "matlem",
            Suite::Duality => "duality",
            Suite::Wu => "wu",
            Suite::Whitney => "whitney",
            Suite::Zcl => "zcl",
            Suite::TopClass => "top-class",
        }
    }

    /// Default upper end of the swept range.
    pub fn default_max(&self) -> usize {
        match self {
            Suite::Hg | Suite::Duality | Suite::Wu => 40,
            Suite::Matlem => 4096,
            Suite::Whitney | Suite::Zcl => 64,
            Suite::TopClass => 512,
        }
    }
}

/// Above this `n` the top-class suite checks only the closed parity sum;
/// the series route and the monomial predicate need a full context.
pub const TOP_CLASS_ROUTE_MAX: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub instance: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub instances: usize,
    pub failures: Vec<Failure>,
    pub wall_time_ms: u64,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

fn fail(instance: impl Into<String>, detail: impl Into<String>) -> Failure {
    Failure {
        instance: instance.into(),
        detail: detail.into(),
    }
}

/// Runs `suite` up to `max` (`n` for most suites, `m` for matlem), taking
/// contexts from `contexts`. Errors from the context source count as failures.
pub fn run_suite<F>(suite: Suite, max: Option<usize>, contexts: F) -> VerifyReport
where
    F: Fn(usize) -> Result<Arc<WContext>, Error> + Sync,
{
    let start = Instant::now();
    let max = max.unwrap_or(suite.default_max());
    let (instances, failures) = match suite {
        Suite::Matlem => (max, matlem(max)),
        _ => {
            let ns: Vec<usize> = (2..=max).collect();
            let failures = ns
                .par_iter()
                .map(|&n| check_n(suite, n, &contexts))
                .collect::<Vec<_>>()
                .concat();
            (ns.len(), failures)
        }
    };
    VerifyReport {
        suite,
        instances,
        failures,
        wall_time_ms: start.elapsed().as_millis() as u64,
    }
}

fn check_n<F>(suite: Suite, n: usize, contexts: &F) -> Vec<Failure>
where
    F: Fn(usize) -> Result<Arc<WContext>, Error>,
{
    let inst = format!("n={n}");
    if suite == Suite::TopClass && n > TOP_CLASS_ROUTE_MAX {
        return parity_only(n);
    }
    let ctx = match contexts(n) {
        Ok(c) => c,
        Err(e) => return vec![fail(inst, e.to_string())],
    };
    let mut out = Vec::new();
    match suite {
        Suite::Hg => {
            let g = ctx.grassmann();
            for m in verify_hg_vs_oracle(g).mismatches {
                out.push(fail(&inst, format!("power-sum rule vs oracle, degree {}: {}", m.degree, m.detail)));
            }
            match hg_inductive_construct(g) {
                Ok(bases) => {
                    if let Err(m) = bases.check_against(g) {
                        out.push(fail(&inst, format!("inductive basis, degree {}: {}", m.degree, m.detail)));
                    }
                }
                Err(f) => out.push(fail(&inst, format!("inductive construction, degree {}: {}", f.degree, f.reason))),
            }
            let p = poincare_check(g);
            if !p.ok() {
                out.push(fail(&inst, format!("Poincare series {:?}, total {} (expected {})", p.dims, p.total, p.expected_total)));
            }
        }
        Suite::Duality => {
            let p = poincare_check(ctx.grassmann());
            if !p.ok() {
                out.push(fail(&inst, format!("Grassmannian dims {:?}", p.dims)));
            }
            let r = poincare_pairing_check(&ctx);
            if !r.dims_symmetric {
                out.push(fail(&inst, "dimensions of H*(W) are not symmetric"));
            }
            for d in r.degenerate_degrees {
                out.push(fail(&inst, format!("cup pairing degenerate in degree {d}")));
            }
        }
        Suite::Wu => {
            for m in wu_w1_check(&ctx).failures {
                out.push(fail(&inst, format!("Sq^1 z != w_1 z for z = {m}")));
            }
        }
        Suite::Whitney => {
            let r = whitney_duality_check(&ctx);
            if !r.c_ok {
                out.push(fail(&inst, "w(tau C) w(eta C) != 1"));
            }
            if !r.w_ok {
                out.push(fail(&inst, "w(tau W) w(eta W) != 1"));
            }
        }
        Suite::Zcl => {
            match zcl_witness(&ctx) {
                Ok(w) if w.ok() => {}
                Ok(w) => out.push(fail(
                    &inst,
                    format!(
                        "witness {:?}: nonzero={}, term matches={}, maximal={}",
                        w.exponents, w.product_nonzero, w.block_matches, w.maximal
                    ),
                )),
                Err(e) => out.push(fail(&inst, e.to_string())),
            }
            if n <= EXHAUSTIVE_MAX_N {
                match (zcl_exhaustive(&ctx), zcl_formula(n)) {
                    (Ok(ex), Ok(f)) if ex.value == f => {}
                    (Ok(ex), Ok(f)) => out.push(fail(&inst, format!("exhaustive zcl {} != formula {f}", ex.value))),
                    (Err(e), _) | (_, Err(e)) => out.push(fail(&inst, e.to_string())),
                }
            }
        }
        Suite::TopClass => {
            out.extend(parity_only(n));
            if let Err(e) = eta_c_routes_agree(&ctx) {
                out.push(fail(&inst, e.to_string()));
            }
            let top = ctx.top_degree();
            let nonzero = !ctx.reduce(&eta_c_closed_form(n, top)).is_zero();
            if nonzero != top_sw_parity(n) {
                out.push(fail(&inst, format!("reduced w_{top} nonzero={nonzero}, closed sum says {}", top_sw_parity(n))));
            }
            let r = top_class_wc(&ctx);
            if !r.ok() {
                out.push(fail(
                    &inst,
                    format!("top class: dim {}, representatives agree {}, {} predicate mismatches", r.dim, r.representatives_agree, r.mismatches.len()),
                ));
            }
        }
        Suite::Matlem => unreachable!("matlem does not sweep n"),
    }
    out
}

fn parity_only(n: usize) -> Vec<Failure> {
    let parity = top_sw_parity(n);
    if parity == n.is_power_of_two() {
        Vec::new()
    } else {
        vec![fail(format!("n={n}"), format!("closed sum gives {}, expected {}", parity as u8, n.is_power_of_two() as u8))]
    }
}

/// Number of `m` for which the direct elimination runs alongside the
/// leading-minor sweep.
const MATLEM_DIRECT_MAX: usize = 256;

fn matlem(m_max: usize) -> Vec<Failure> {
    let mut out = Vec::new();
    if m_max == 0 {
        return out;
    }
    let minors = power_sum_matrix(m_max).leading_principal_minors();
    for (i, &nonsingular) in minors.iter().enumerate() {
        if !nonsingular {
            out.push(fail(format!("m={}", i + 1), "leading principal minor vanishes"));
        }
    }
    let mut direct: Vec<usize> = (1..=m_max.min(MATLEM_DIRECT_MAX)).collect();
    if m_max > MATLEM_DIRECT_MAX {
        direct.push(m_max);
    }
    let singular: Vec<usize> = direct.into_par_iter().filter(|&m| !matlem_det(m)).collect();
    for m in singular {
        out.push(fail(format!("m={m}"), "direct elimination: determinant 0"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fresh(n: usize) -> Result<Arc<WContext>, Error> {
        WContext::new(n).map(Arc::new)
    }

    #[test]
    fn small_sweeps_pass() {
        for suite in Suite::ALL {
            let max = if suite == Suite::Matlem { 300 } else { 10 };
            let r = run_suite(suite, Some(max), fresh);
            assert!(r.ok(), "{:?}", r);
        }
    }

    #[test]
    fn corrupted_context_fails() {
        let bad = |n: usize| {
            let mut ctx = WContext::new(n)?;
            if n == 6 {
                ctx.grassmann_mut().corrupt_for_testing(10, 0, 0);
            }
            Ok(Arc::new(ctx))
        };
        for suite in [Suite::Hg, Suite::Duality, Suite::TopClass] {
            let r = run_suite(suite, Some(8), bad);
            assert!(!r.ok(), "{suite:?}");
            assert!(r.failures.iter().all(|f| f.instance == "n=6"));
        }
    }

    #[test]
    fn context_errors_are_failures() {
        let r = run_suite(Suite::Wu, Some(4), |_| Err(Error::InvalidN(0)));
        assert_eq!(r.failures.len(), 3);
    }
}
