//! Weight-distribution engines and code certificates.

pub mod certify;
pub mod closedform;
pub mod engines;
pub mod srg;
pub mod sweep;

use std::fmt::Write as _;

use serde::Serialize;

pub use certify::{
    css_parameters, griesmer_sum, is_distance_optimal, is_griesmer_attaining, min_distance,
    minimality_report, projectivity_report, self_orthogonality_report, CssParams, DualDistance,
    MinimalityReport, ProjectivityReport, SelfOrthogonalityReport,
};
pub use closedform::{
    detect_family, summary_conditions, wd_closedform, FamilyMatch, SummaryConditions,
};
pub use engines::{wd_bruteforce, wd_charsum, DEFAULT_BUDGET};
pub use srg::{srg_build_verify, srg_parameters, SrgParams, SrgVerification};
pub use sweep::{family_sweep, FaceScope, Sweep, SweepCase};

use crate::construct::{build_code, BinaryCode, DefiningSetSpec, DefiningSetSpecJson};
use crate::error::{Error, Result};
use crate::gf2::WeightDistribution;

/// Which weight-distribution engines to run.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Engines {
    pub closedform: bool,
    pub charsum: bool,
    pub bruteforce: bool,
}

impl Engines {
    pub const ALL: Self = Self {
        closedform: true,
        charsum: true,
        bruteforce: true,
    };

    /// Comma-separated subset of `closedform,charsum,bruteforce`.
    pub fn parse(list: &str) -> Result<Self> {
        let mut e = Self {
            closedform: false,
            charsum: false,
            bruteforce: false,
        };
        for name in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            match name {
                "closedform" => e.closedform = true,
                "charsum" => e.charsum = true,
                "bruteforce" => e.bruteforce = true,
                other => return Err(Error::InvalidSetSpec(format!("unknown engine {other:?}"))),
            }
        }
        if !(e.closedform || e.charsum || e.bruteforce) {
            return Err(Error::InvalidSetSpec("no engine selected".into()));
        }
        Ok(e)
    }
}

impl Default for Engines {
    fn default() -> Self {
        Self::ALL
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ReportOptions {
    pub engines: Engines,
    /// Cap on `2^k · n` for brute force.
    pub budget: u128,
    /// Build the Cayley graph and count its parameters when `k` is small enough.
    pub build_graph: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self {
            engines: Engines::ALL,
            budget: DEFAULT_BUDGET,
            build_graph: false,
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SkippedEngine {
    pub engine: &'static str,
    pub reason: String,
}

/// The outcome of running the selected engines on one spec.
#[derive(Clone, Debug)]
pub struct CrossCheck {
    pub distribution: WeightDistribution,
    pub code: Option<BinaryCode>,
    pub family: Option<FamilyMatch>,
    pub engines_run: Vec<&'static str>,
    pub skipped: Vec<SkippedEngine>,
}

fn skippable(e: &Error) -> bool {
    matches!(
        e,
        Error::DimensionOutOfRange { .. }
            | Error::TooLarge(_)
            | Error::BudgetExceeded { .. }
            | Error::UnsupportedFamily(_)
    )
}

/// Runs every selected engine that applies and insists they agree.
pub fn cross_check(spec: &DefiningSetSpec, engines: Engines, budget: u128) -> Result<CrossCheck> {
    let mut skipped = Vec::new();
    let mut results: Vec<(&'static str, WeightDistribution)> = Vec::new();
    let mut skip = |engine: &'static str, e: Error| -> Result<()> {
        if skippable(&e) {
            skipped.push(SkippedEngine {
                engine,
                reason: e.to_string(),
            });
            Ok(())
        } else {
            Err(e)
        }
    };

    let family = match detect_family(spec) {
        Ok(f) => Some(f),
        Err(Error::UnsupportedFamily(why)) => {
            if engines.closedform {
                skip("closedform", Error::UnsupportedFamily(why))?;
            }
            None
        }
        Err(e) => return Err(e),
    };
    if let (true, Some(f)) = (engines.closedform, &family) {
        match closedform::closedform_for(spec.m(), f) {
            Ok(d) => results.push(("closedform", d)),
            Err(e) => skip("closedform", e)?,
        }
    }
    if engines.charsum {
        match wd_charsum(spec) {
            Ok(d) => results.push(("charsum", d)),
            Err(e) => skip("charsum", e)?,
        }
    }
    let code = match build_code(spec) {
        Ok(c) => Some(c),
        Err(e) if skippable(&e) => {
            if engines.bruteforce {
                skip("bruteforce", e)?;
            }
            None
        }
        Err(e) => return Err(e),
    };
    if let (true, Some(c)) = (engines.bruteforce, &code) {
        match wd_bruteforce(c, budget) {
            Ok(d) => results.push(("bruteforce", d)),
            Err(e) => skip("bruteforce", e)?,
        }
    }

    let Some((first_engine, first)) = results.first().cloned() else {
        let reasons: Vec<String> = skipped
            .iter()
            .map(|s| format!("{}: {}", s.engine, s.reason))
            .collect();
        return Err(Error::UnsupportedFamily(format!(
            "no engine could run ({})",
            reasons.join("; ")
        )));
    };
    for (engine, d) in &results[1..] {
        if *d != first {
            return Err(Error::DistributionMismatch {
                spec: spec.to_string(),
                left_engine: first_engine,
                left: Box::new(first),
                right_engine: engine,
                right: Box::new(d.clone()),
            });
        }
    }
    if let Some(c) = &code {
        let kernel_dim = first.dimension().map_or(usize::MAX, |k| k as usize);
        if kernel_dim != c.k() {
            return Err(Error::DimensionDisagreement {
                spec: spec.to_string(),
                rank: c.k(),
                kernel_dim,
            });
        }
    }
    Ok(CrossCheck {
        distribution: first,
        code,
        family,
        engines_run: results.iter().map(|(e, _)| *e).collect(),
        skipped,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SrgSection {
    pub params: SrgParams,
    pub complement: (i128, i128, i128, i128),
    pub verification: Option<SrgVerification>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CodeReport {
    pub spec: DefiningSetSpecJson,
    pub family: Option<FamilyMatch>,
    pub summary: Option<SummaryConditions>,
    pub n: u64,
    pub k: u64,
    pub d: Option<u64>,
    pub weight_count: usize,
    pub distribution: WeightDistribution,
    pub engines: Vec<&'static str>,
    pub skipped_engines: Vec<SkippedEngine>,
    pub griesmer_sum_at_d: Option<u128>,
    pub griesmer_sum_at_d_plus_1: Option<u128>,
    pub griesmer_distance_optimal: bool,
    pub griesmer_attaining: bool,
    pub minimal_sufficient: bool,
    pub minimal_exact: Option<bool>,
    pub self_orthogonal_sufficient: bool,
    pub self_orthogonal_exact: Option<bool>,
    pub projective: Option<bool>,
    pub projectivity: Option<ProjectivityReport>,
    pub css: Option<CssParams>,
    pub srg: Option<SrgSection>,
}

pub fn full_report(spec: &DefiningSetSpec, options: &ReportOptions) -> Result<CodeReport> {
    let cc = cross_check(spec, options.engines, options.budget)?;
    let w = &cc.distribution;
    let code = cc.code.as_ref();
    let n = w.length();
    let k = match code {
        Some(c) => c.k() as u64,
        None => u64::from(w.dimension().expect("engines return full distributions")),
    };
    let d = w.min_distance();
    let (gs_d, gs_d1) = match d {
        Some(d) if k >= 1 => (Some(griesmer_sum(k, d)), Some(griesmer_sum(k, d + 1))),
        _ => (None, None),
    };
    let minimality = if d.is_some() {
        Some(minimality_report(w, code)?)
    } else {
        None
    };
    let so = self_orthogonality_report(w, code);
    let projectivity = match code {
        Some(c) if c.k() >= 1 => Some(projectivity_report(c, w)?),
        _ => None,
    };
    let projective = projectivity.as_ref().map(|p| p.projective);
    let css = match code {
        Some(c) if c.k() >= 1 && so.exact == Some(true) => Some(css_parameters(c, w)?),
        _ => None,
    };
    let srg = match (projective, srg::two_weights(w)) {
        (Some(true), Ok((w1, w2))) => {
            let params = srg_parameters(n, k as u32, w1, w2)?;
            let verification = match code {
                Some(c) if options.build_graph && c.k() <= srg::MAX_GRAPH_K => {
                    Some(srg_build_verify(c, w, true)?)
                }
                _ => None,
            };
            Some(SrgSection {
                complement: params.complement(),
                params,
                verification,
            })
        }
        _ => None,
    };
    Ok(CodeReport {
        spec: spec.to_json(),
        family: cc.family,
        summary: cc.family.map(|f| summary_conditions(spec.m(), &f)),
        n,
        k,
        d,
        weight_count: w.weight_count(),
        distribution: w.clone(),
        engines: cc.engines_run,
        skipped_engines: cc.skipped,
        griesmer_sum_at_d: gs_d,
        griesmer_sum_at_d_plus_1: gs_d1,
        griesmer_distance_optimal: gs_d1.is_some_and(|s| s > u128::from(n)),
        griesmer_attaining: gs_d.is_some_and(|s| s == u128::from(n)),
        minimal_sufficient: minimality.is_some_and(|r| r.sufficient),
        minimal_exact: minimality.and_then(|r| r.exact),
        self_orthogonal_sufficient: so.sufficient,
        self_orthogonal_exact: so.exact,
        projective,
        projectivity,
        css,
        srg,
    })
}

fn flag(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn opt_flag(b: Option<bool>) -> &'static str {
    b.map_or("not computed", flag)
}

impl CodeReport {
    /// Human-readable summary.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let d = self.d.map_or("-".to_string(), |d| d.to_string());
        let _ = writeln!(s, "parameters        [{}, {}, {}]", self.n, self.k, d);
        match &self.family {
            Some(f) => {
                let _ = writeln!(
                    s,
                    "family            part {}, summary row {}{}",
                    f.part,
                    f.summary_row,
                    if f.within_hypotheses {
                        ""
                    } else {
                        " (outside family hypotheses)"
                    }
                );
            }
            None => {
                let _ = writeln!(s, "family            none");
            }
        }
        let _ = writeln!(s, "engines           {}", self.engines.join(", "));
        for sk in &self.skipped_engines {
            let _ = writeln!(s, "  skipped {:<10} {}", sk.engine, sk.reason);
        }
        let _ = writeln!(s, "weights           {}", self.weight_count);
        let _ = writeln!(s, "  weight      count");
        for (w, c) in self.distribution.iter() {
            let _ = writeln!(s, "  {w:<10}  {c}");
        }
        if let (Some(a), Some(b)) = (self.griesmer_sum_at_d, self.griesmer_sum_at_d_plus_1) {
            let _ = writeln!(s, "griesmer sums     {a} at d, {b} at d+1");
        }
        let _ = writeln!(
            s,
            "griesmer optimal  {}",
            flag(self.griesmer_distance_optimal)
        );
        let _ = writeln!(s, "griesmer code     {}", flag(self.griesmer_attaining));
        let _ = writeln!(
            s,
            "minimal           sufficient {}, exact {}",
            flag(self.minimal_sufficient),
            opt_flag(self.minimal_exact)
        );
        let _ = writeln!(
            s,
            "self-orthogonal   sufficient {}, exact {}",
            flag(self.self_orthogonal_sufficient),
            opt_flag(self.self_orthogonal_exact)
        );
        let _ = writeln!(s, "projective        {}", opt_flag(self.projective));
        if let Some(css) = &self.css {
            let _ = writeln!(s, "css               {css}");
        }
        if let Some(srg) = &self.srg {
            let p = &srg.params;
            let _ = writeln!(
                s,
                "srg               ({}, {}, {}, {})",
                p.n1, p.k1, p.lambda, p.mu
            );
            let c = srg.complement;
            let _ = writeln!(s, "srg complement    ({}, {}, {}, {})", c.0, c.1, c.2, c.3);
            if let Some(v) = &srg.verification {
                let m = v.measured;
                let _ = writeln!(
                    s,
                    "srg measured      ({}, {}, {}, {}) {}",
                    m.0,
                    m.1,
                    m.2,
                    m.3,
                    if v.verified { "verified" } else { "MISMATCH" }
                );
            }
        }
        s
    }
}
