use std::fmt::Write as _;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::cli::config::RunConfig;
use crate::cli::suites::{Outcome, SuiteResult};
use crate::error::Result;
use crate::fpab::InvariantFactors;
use crate::functors::{square_analysis, Assembly, SquareKind};
use crate::k2l::Decomposition;
use crate::lambda::adams_catalog;
use crate::zrings::Params;

/// Invariant factors with decimal-string torsion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorsJson {
    pub torsion: Vec<String>,
    pub free: usize,
}

impl From<&InvariantFactors> for FactorsJson {
    fn from(f: &InvariantFactors) -> Self {
        FactorsJson { torsion: f.torsion.iter().map(|d| d.to_string()).collect(), free: f.free }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SummandJson {
    pub functor: String,
    pub group: FactorsJson,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComparisonJson {
    pub iso: bool,
    pub kernel: FactorsJson,
    pub cokernel: FactorsJson,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionJson {
    pub k2l_upper: FactorsJson,
    pub k2l_lower: FactorsJson,
    pub cf_iso: bool,
    pub df_iso: bool,
    pub p_gl_law: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SquareJson {
    pub kind: SquareKind,
    pub commutes: bool,
    pub fiber: FactorsJson,
    pub kernel: FactorsJson,
    pub cokernel: FactorsJson,
    pub passes: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub params: Params,
    pub ring: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub tc: Vec<SummandJson>,
    pub tc_total: Option<FactorsJson>,
    pub fp: Option<FactorsJson>,
    pub tc_to_fp: Option<ComparisonJson>,
    pub decomposition: Option<DecompositionJson>,
    pub squares: Vec<SquareJson>,
    #[serde(skip)]
    pub elapsed: Duration,
    #[serde(skip)]
    display: Vec<(String, String)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub cases: Vec<CaseReport>,
}

impl Report {
    pub fn errors(&self) -> usize {
        self.cases.iter().filter(|c| c.error.is_some()).count()
    }
}

fn fill(case: &mut CaseReport, params: &Params, ring: crate::lambda::AdamsRing) -> Result<()> {
    let d = adams_catalog(ring, params.p)?;
    let x = d.arrow_object()?;
    let a = Assembly::new(&x, params)?;
    let labels = a.tc.labels();
    for (l, part) in labels.iter().zip(&a.tc.parts) {
        let g = part.group.invariant_factors();
        case.display.push((format!("TC summand {l}"), g.to_string()));
        case.tc.push(SummandJson { functor: l.clone(), group: (&g).into() });
    }
    let tc = a.tc.group().invariant_factors();
    let fp = a.fp.group.invariant_factors();
    case.display.push(("TC".into(), tc.to_string()));
    case.display.push(("FP".into(), fp.to_string()));
    case.display.push((
        "TC -> FP".into(),
        format!("iso={} kernel={} cokernel={}", a.is_iso(), a.kernel, a.cokernel),
    ));
    case.tc_total = Some((&tc).into());
    case.fp = Some((&fp).into());
    case.tc_to_fp = Some(ComparisonJson { iso: a.is_iso(), kernel: (&a.kernel).into(), cokernel: (&a.cokernel).into() });

    let dec = Decomposition::new(&d, params)?;
    let (up, lo) = (dec.upper.k2l.group.invariant_factors(), dec.lower.k2l.group.invariant_factors());
    case.display.push(("K2L(A(x)B, A(x)I)".into(), up.to_string()));
    case.display.push(("K2L(A(x)B/I^2, A(x)I)".into(), lo.to_string()));
    case.display.push((
        "decompositions".into(),
        format!("cf iso={} df iso={} p_GL law={}", dec.cf_is_iso(), dec.df_is_iso(), dec.p_gl_matches_summands()),
    ));
    case.decomposition = Some(DecompositionJson {
        k2l_upper: (&up).into(),
        k2l_lower: (&lo).into(),
        cf_iso: dec.cf_is_iso(),
        df_iso: dec.df_is_iso(),
        p_gl_law: dec.p_gl_matches_summands(),
    });

    let kinds: &[SquareKind] = if params.p == 2 { &[SquareKind::Ef1, SquareKind::Ef2] } else { &[SquareKind::Ef1] };
    for &kind in kinds {
        let s = square_analysis(&x, params, kind)?;
        case.display.push((
            format!("{kind:?} square"),
            format!("fiber={} kernel={} cokernel={} passes={}", s.fiber, s.kernel, s.cokernel, s.passes()),
        ));
        case.squares.push(SquareJson {
            kind,
            commutes: s.commutes,
            fiber: (&s.fiber).into(),
            kernel: (&s.kernel).into(),
            cokernel: (&s.cokernel).into(),
            passes: s.passes(),
        });
    }
    Ok(())
}

/// One case per (params, ring) pair, in config order.
pub fn build_report(cfg: &RunConfig) -> Report {
    let mut cases = Vec::new();
    for params in &cfg.params {
        for entry in &cfg.rings {
            let ring = entry.resolve(params.p);
            let start = Instant::now();
            let mut case = CaseReport {
                params: *params,
                ring: ring.label(),
                error: None,
                tc: Vec::new(),
                tc_total: None,
                fp: None,
                tc_to_fp: None,
                decomposition: None,
                squares: Vec::new(),
                elapsed: Duration::ZERO,
                display: Vec::new(),
            };
            if let Err(e) = fill(&mut case, params, ring) {
                case.error = Some(e.to_string());
            }
            case.elapsed = start.elapsed();
            cases.push(case);
        }
    }
    Report { cases }
}

pub fn render_report_text(r: &Report) -> String {
    let mut out = String::new();
    for c in &r.cases {
        let _ = writeln!(out, "{} {}  [{:.1?}]", c.ring, c.params, c.elapsed);
        let width = c.display.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
        for (k, v) in &c.display {
            let _ = writeln!(out, "  {k:<width$}  {v}");
        }
        if let Some(e) = &c.error {
            let _ = writeln!(out, "  error: {e}");
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub seed: String,
    pub suites: Vec<SuiteResult>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl VerifyReport {
    pub fn new(seed: u64, suites: Vec<SuiteResult>) -> Self {
        let count = |o: Outcome| suites.iter().flat_map(|s| &s.checks).filter(|c| c.outcome == o).count();
        let (passed, failed, skipped) = (count(Outcome::Pass), count(Outcome::Fail), count(Outcome::Skip));
        VerifyReport { seed: seed.to_string(), suites, passed, failed, skipped }
    }
}

pub fn render_verify_text(r: &VerifyReport) -> String {
    let mut out = String::new();
    for s in &r.suites {
        let _ = writeln!(out, "[{}]  {:.1?}", s.suite.name(), s.elapsed);
        for c in &s.checks {
            let tag = match c.outcome {
                Outcome::Pass => "PASS",
                Outcome::Fail => "FAIL",
                Outcome::Skip => "SKIP",
            };
            let _ = writeln!(out, "  {tag}  {}  ({:.1?})", c.name, c.elapsed);
            if let Some(d) = &c.detail {
                let _ = writeln!(out, "        {d}");
            }
        }
    }
    let _ = writeln!(out, "{} passed, {} failed, {} skipped (seed {})", r.passed, r.failed, r.skipped, r.seed);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::config::RingEntry;

    #[test]
    fn integers_at_three() {
        let cfg = RunConfig { params: vec![Params::new(3, 1, 1).unwrap()], rings: vec![RingEntry::Integers], ..Default::default() };
        let r = build_report(&cfg);
        assert_eq!(r.errors(), 0);
        let c = &r.cases[0];
        assert_eq!(c.tc_total, Some(FactorsJson { torsion: vec!["3".into()], free: 0 }));
        assert!(c.tc_to_fp.as_ref().unwrap().iso);
        assert!(render_report_text(&r).contains("TC -> FP"));
    }

    #[test]
    fn empty_catalog_is_empty() {
        let cfg = RunConfig { rings: vec![], ..Default::default() };
        let r = build_report(&cfg);
        assert!(r.cases.is_empty());
        assert_eq!(render_report_text(&r), "");
    }
}
