use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

use anyhow::Context;
use serde::Serialize;
use serde_json::Value;

use cpdisc_core::criteria::CohomologyReport;
use cpdisc_core::discrepancy::{empirical_verdict, EmpiricalRule};
use cpdisc_core::suite::SuiteConfig;
use cpdisc_core::{
    acceptance_domain, bd_verdict, build_witness_for_pattern, colored_hits, indicator_hits, orbit_hits, pattern_density,
    profile_parallel, run_suite, BoundaryPolicy, EmpiricalVerdict, PatternSpec, RotationSystem, Schedule, SuiteReport,
    Verdict, Window, XiReal, XiSpec,
};

use crate::config::Config;
use crate::{InputError, Status, SystemArgs};

/// A parse failure tied to the flag it came from, shown with a caret.
#[derive(Debug)]
pub struct FieldError {
    field: String,
    text: String,
    source: cpdisc_core::Error,
}

impl std::fmt::Display for FieldError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "--{}: {}", self.field, self.source)?;
        if let cpdisc_core::Error::Parse { pos, .. } = &self.source {
            write!(f, "\n    {}\n    {}^", self.text, " ".repeat(*pos))?;
        }
        Ok(())
    }
}

impl std::error::Error for FieldError {}

impl FieldError {
    pub fn is_singular(&self) -> bool {
        matches!(self.source, cpdisc_core::Error::SingularOrbit { .. })
    }
}

fn parse_field<T>(field: &str, text: &str, f: impl FnOnce(&str) -> cpdisc_core::Result<T>) -> anyhow::Result<T> {
    f(text).map_err(|source| {
        FieldError {
            field: field.to_string(),
            text: text.to_string(),
            source,
        }
        .into()
    })
}

fn required<T>(flag: Option<T>, cfg: Option<T>, name: &str) -> anyhow::Result<T> {
    flag.or(cfg)
        .ok_or_else(|| InputError(format!("missing --{name} (flag or config key `{}`)", name.replace('-', "_"))).into())
}

fn build_system(cfg: &Config, args: &SystemArgs) -> anyhow::Result<RotationSystem> {
    let xi_text = required(args.xi.clone(), cfg.xi.clone(), "xi")?;
    let xi: XiSpec = parse_field("xi", &xi_text, |s| s.parse())?;
    let win_text = required(args.window.clone(), cfg.window.as_ref().map(|w| w.text()), "window")?;
    let window = parse_field("window", &win_text, |s| Window::parse(&xi, s))?;
    let base_text = args.basepoint.clone().or(cfg.basepoint.clone()).unwrap_or_else(|| "0".into());
    let basepoint: XiReal = parse_field("basepoint", &base_text, |s| s.parse())?;
    let policy = if args.strict_boundary || cfg.strict_boundary.unwrap_or(false) {
        BoundaryPolicy::Reject
    } else {
        BoundaryPolicy::HalfOpen
    };
    Ok(RotationSystem::new(xi, basepoint, window).with_policy(policy))
}

fn emit(out: Option<PathBuf>, cfg: &Config, text: &str) -> anyhow::Result<()> {
    match out.or(cfg.out.clone()) {
        Some(path) => std::fs::write(&path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).context("writing to stdout")
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> anyhow::Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

/// Exact inputs echoed into every report.
#[derive(Serialize)]
struct InputEcho {
    xi: String,
    basepoint: String,
    window: String,
    endpoints: Vec<String>,
    boundary: &'static str,
}

fn echo(sys: &RotationSystem) -> InputEcho {
    InputEcho {
        xi: sys.xi().to_string(),
        basepoint: sys.basepoint().to_string(),
        window: sys.window().to_string(),
        endpoints: sys.window().endpoints().iter().map(|e| e.to_string()).collect(),
        boundary: match sys.policy() {
            BoundaryPolicy::HalfOpen => "half-open",
            BoundaryPolicy::Reject => "reject",
        },
    }
}

fn int_value(v: &impl std::fmt::Display) -> Value {
    v.to_string().parse::<i64>().map(Value::from).unwrap_or_else(|_| Value::String(v.to_string()))
}

fn range(cfg: &Config, kmin: Option<i64>, kmax: Option<i64>) -> anyhow::Result<(i64, i64)> {
    let lo = kmin.or(cfg.kmin).unwrap_or(0);
    let hi = required(kmax, cfg.kmax, "kmax")?;
    Ok((lo, hi))
}

pub fn generate(
    cfg: &Config,
    args: &SystemArgs,
    kmin: Option<i64>,
    kmax: Option<i64>,
    colored: bool,
    out: Option<PathBuf>,
) -> anyhow::Result<Status> {
    let sys = build_system(cfg, args)?;
    let (lo, hi) = range(cfg, kmin, kmax)?;
    let pattern = if colored || cfg.colored.unwrap_or(false) {
        colored_hits(&sys, lo, hi)?
    } else {
        orbit_hits(&sys, lo, hi)?
    };
    let mut header = sys.describe();
    header.push(format!("k range = [{lo}, {hi}]"));
    header.push(format!("points = {}", pattern.len()));
    emit(out, cfg, &pattern.to_text(&header))?;
    Ok(Status::Ok)
}

pub fn profile(
    cfg: &Config,
    args: &SystemArgs,
    nmax: Option<u64>,
    trace_points: Option<usize>,
    out: Option<PathBuf>,
) -> anyhow::Result<Status> {
    let sys = build_system(cfg, args)?;
    let n_max = required(nmax, cfg.nmax, "nmax")?;
    let schedule = Schedule {
        trace_points: trace_points.or(cfg.trace_points).unwrap_or(Schedule::default().trace_points),
    };
    let prof = profile_parallel(&sys, n_max, &schedule, rayon::current_num_threads())?;
    let mut header = sys.describe();
    header.push("D(N) = #{0 <= k <= N : hit} - N*Length(W)".into());
    header.push(format!(
        "empirical verdict = {} (heuristic thresholds, tolerance {})",
        verdict_name(empirical_verdict(sys.xi(), &prof)),
        EmpiricalRule::default().tolerance
    ));
    emit(out, cfg, &prof.to_csv(sys.xi(), &header))?;
    Ok(Status::Ok)
}

fn verdict_name(v: EmpiricalVerdict) -> &'static str {
    match v {
        EmpiricalVerdict::BoundedConsistent => "bounded-consistent",
        EmpiricalVerdict::UnboundedConsistent => "unbounded-consistent",
        EmpiricalVerdict::Inconclusive => "inconclusive",
    }
}

#[derive(Serialize)]
struct WitnessJson {
    sigma: Vec<usize>,
    k: Vec<Value>,
    m: Vec<Value>,
}

#[derive(Serialize)]
struct Ranks {
    h1_rank: usize,
    bounded_subspace_rank: usize,
    h1_ud_dim: usize,
}

#[derive(Serialize)]
struct ClassJson {
    left: usize,
    right: usize,
    balanced: bool,
    members: Vec<String>,
}

#[derive(Serialize)]
struct DecideReport {
    input: InputEcho,
    condition: &'static str,
    witness: Option<WitnessJson>,
    n: usize,
    ranks: Ranks,
    verdict: Verdict,
    classes: Vec<ClassJson>,
}

fn decide_report(sys: &RotationSystem, r: CohomologyReport) -> DecideReport {
    let witness = r.oren.as_ref().map(|o| WitnessJson {
        sigma: o.sigma.iter().map(|s| s + 1).collect(),
        k: o.ks.iter().map(int_value).collect(),
        m: o.ms.iter().map(int_value).collect(),
    });
    let classes = r
        .classes
        .classes
        .iter()
        .map(|c| ClassJson {
            left: c.left,
            right: c.right,
            balanced: c.balanced(),
            members: c
                .members
                .iter()
                .map(|m| {
                    let side = match m.side {
                        cpdisc_core::criteria::Side::Left => "left",
                        cpdisc_core::criteria::Side::Right => "right",
                    };
                    format!("I{}.{side} = {}", m.interval + 1, m.value)
                })
                .collect(),
        })
        .collect();
    DecideReport {
        input: echo(sys),
        condition: r.condition,
        witness,
        n: r.n,
        ranks: Ranks {
            h1_rank: r.h1_rank,
            bounded_subspace_rank: r.bounded_subspace_rank,
            h1_ud_dim: r.h1_ud_dim,
        },
        verdict: r.verdict,
        classes,
    }
}

pub fn decide(cfg: &Config, args: &SystemArgs, out: Option<PathBuf>) -> anyhow::Result<Status> {
    let sys = build_system(cfg, args)?;
    let report = bd_verdict(sys.window())?;
    let verdict = report.verdict;
    emit(out, cfg, &to_json(&decide_report(&sys, report))?)?;
    Ok(match verdict {
        Verdict::Bounded => Status::Ok,
        Verdict::Unbounded => Status::Unbounded,
    })
}

#[derive(Serialize)]
struct OriginJson {
    value: String,
    source_endpoint: String,
    offset: String,
    shift: String,
}

#[derive(Serialize)]
struct AcceptReport {
    input: InputEcho,
    pattern: String,
    domain: String,
    density: String,
    endpoints: Vec<OriginJson>,
    occurrences: Option<Vec<i64>>,
}

#[allow(clippy::too_many_arguments)]
pub fn accept(
    cfg: &Config,
    args: &SystemArgs,
    pattern: Option<String>,
    kmin: Option<i64>,
    kmax: Option<i64>,
    json: bool,
    out: Option<PathBuf>,
) -> anyhow::Result<Status> {
    let sys = build_system(cfg, args)?;
    let text = required(pattern, cfg.pattern.clone(), "pattern")?;
    let p: PatternSpec = parse_field("pattern", &text, |s| s.parse())?;
    let dom = acceptance_domain(&sys, &p)?;
    let density = pattern_density(&sys, &p)?;
    let occurrences = match kmax.or(cfg.kmax) {
        Some(_) => {
            let (lo, hi) = range(cfg, kmin, kmax)?;
            Some(indicator_hits(&sys, &p, lo, hi)?.points().to_vec())
        }
        None => None,
    };
    let ends = sys.window().endpoints();
    let body = if json {
        let report = AcceptReport {
            input: echo(&sys),
            pattern: p.to_string(),
            domain: dom.window.to_string(),
            density: density.to_string(),
            endpoints: dom
                .provenance
                .iter()
                .map(|o| OriginJson {
                    value: o.value.to_string(),
                    source_endpoint: ends[o.source].to_string(),
                    offset: o.offset.to_string(),
                    shift: o.shift.to_string(),
                })
                .collect(),
            occurrences,
        };
        to_json(&report)?
    } else {
        let mut s = String::new();
        for h in sys.describe() {
            let _ = writeln!(s, "# {h}");
        }
        let _ = writeln!(s, "pattern: {p}");
        s.push_str(&dom.report());
        let _ = writeln!(s, "density: {density} = {}", sys.xi().to_decimal(&density, 30));
        if let Some(occ) = occurrences {
            let list: Vec<String> = occ.iter().map(|k| k.to_string()).collect();
            let _ = writeln!(s, "occurrences ({}): {}", occ.len(), list.join(","));
        }
        s
    };
    emit(out, cfg, &body)?;
    Ok(Status::Ok)
}

pub fn witness(
    cfg: &Config,
    args: &SystemArgs,
    kmin: Option<i64>,
    kmax: Option<i64>,
    delta: Option<String>,
    out: Option<PathBuf>,
) -> anyhow::Result<Status> {
    let sys = build_system(cfg, args)?;
    let (lo, hi) = range(cfg, kmin, kmax)?;
    let delta = match delta.or(cfg.delta.clone()) {
        Some(text) => parse_field("delta", &text, |s| s.parse::<XiReal>())?,
        None => sys.window().length(),
    };
    let points = orbit_hits(&sys, lo, hi)?;
    let w = build_witness_for_pattern(sys.xi(), &points, &delta, Some((lo, hi)))?;
    let mut header = sys.describe();
    header.push(format!("pairing: i-th hit <-> (i + offset)/delta over k in [{lo}, {hi}]"));
    header.push(format!(
        "sup_displacement ~ {}",
        sys.xi().to_decimal(&w.sup_displacement, 30)
    ));
    emit(out, cfg, &w.to_csv(&header))?;
    Ok(Status::Ok)
}

#[derive(Serialize)]
struct SuiteRowJson {
    index: usize,
    xi: String,
    basepoint: String,
    window: String,
    exact: Verdict,
    empirical: EmpiricalVerdict,
    decade_maxima: Vec<(u64, String)>,
    sup_displacement: Option<String>,
    displacement_bound: Option<String>,
}

#[derive(Serialize)]
struct SuiteJson {
    seed: u64,
    count: usize,
    n_max: u64,
    tolerance: String,
    disagreements: Vec<usize>,
    inconclusive_rate: f64,
    witness_failures: Vec<usize>,
    rows: Vec<SuiteRowJson>,
}

fn suite_table(r: &SuiteReport, tolerance: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# suite: seed {}, {} windows, N_max {}", r.seed, r.count(), r.n_max);
    let _ = writeln!(s, "# empirical thresholds are heuristic (tolerance {tolerance})");
    let _ = writeln!(
        s,
        "{:<10} {:>19} {:>21} {:>13}",
        "exact", "bounded-consistent", "unbounded-consistent", "inconclusive"
    );
    for v in [Verdict::Bounded, Verdict::Unbounded] {
        let count = |e: EmpiricalVerdict| r.rows.iter().filter(|row| row.exact == v && row.empirical == e).count();
        let _ = writeln!(
            s,
            "{:<10} {:>19} {:>21} {:>13}",
            if v == Verdict::Bounded { "bounded" } else { "unbounded" },
            count(EmpiricalVerdict::BoundedConsistent),
            count(EmpiricalVerdict::UnboundedConsistent),
            count(EmpiricalVerdict::Inconclusive)
        );
    }
    let dis = r.disagreements();
    let _ = writeln!(s, "disagreements: {}{}", dis.len(), if dis.is_empty() { String::new() } else { format!(" {dis:?}") });
    let _ = writeln!(s, "inconclusive rate: {:.1}%", 100.0 * r.inconclusive_rate());
    let fails = r.witness_failures();
    let _ = writeln!(s, "matching checks: {} passed, {} failed", r.witness_checked() - fails.len(), fails.len());
    s
}

pub fn suite(
    cfg: &Config,
    count: Option<usize>,
    seed: Option<u64>,
    nmax: Option<u64>,
    witness_points: Option<usize>,
    tolerance: Option<String>,
    json: Option<PathBuf>,
) -> anyhow::Result<Status> {
    let defaults = SuiteConfig::default();
    let mut config = SuiteConfig {
        count: count.or(cfg.count).unwrap_or(defaults.count),
        seed: seed.or(cfg.seed).unwrap_or(defaults.seed),
        n_max: nmax.or(cfg.nmax).unwrap_or(defaults.n_max),
        witness_points: witness_points.or(cfg.witness_points).unwrap_or(defaults.witness_points),
        ..defaults
    };
    if let Some(t) = tolerance.or(cfg.tolerance.clone()) {
        let v: XiReal = parse_field("tolerance", &t, |s| s.parse())?;
        if !v.is_rational() || v.a().to_string().starts_with('-') {
            return Err(InputError(format!("--tolerance must be a nonnegative rational, got {t}")).into());
        }
        config.rule = EmpiricalRule { tolerance: v.a().clone() };
    }
    if config.n_max < 1000 {
        return Err(InputError("--nmax must be at least 1000 for decade comparisons".into()).into());
    }
    let report = run_suite(&config)?;
    let tol = config.rule.tolerance.to_string();
    print!("{}", suite_table(&report, &tol));
    if let Some(path) = json.or(cfg.out.clone()) {
        let rows = report
            .rows
            .iter()
            .map(|row| SuiteRowJson {
                index: row.case.index,
                xi: row.case.xi.to_string(),
                basepoint: row.case.basepoint.to_string(),
                window: row.case.window.to_string(),
                exact: row.exact,
                empirical: row.empirical,
                decade_maxima: row.decade_maxima.iter().map(|(n, m)| (*n, m.to_string())).collect(),
                sup_displacement: row.witness.as_ref().map(|w| w.summary.sup_displacement.to_string()),
                displacement_bound: row.witness.as_ref().map(|w| w.bound.to_string()),
            })
            .collect();
        let doc = SuiteJson {
            seed: report.seed,
            count: report.count(),
            n_max: report.n_max,
            tolerance: tol,
            disagreements: report.disagreements(),
            inconclusive_rate: report.inconclusive_rate(),
            witness_failures: report.witness_failures(),
            rows,
        };
        std::fs::write(&path, to_json(&doc)?).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(if report.disagreements().is_empty() && report.witness_failures().is_empty() {
        Status::Ok
    } else {
        Status::Failed
    })
}
