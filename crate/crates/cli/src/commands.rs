use std::io::Write;
use std::path::Path;
use std::time::Instant;

use ckr_gap::bounds::{
    beta_exact, beta_max, limitation_min, optimize_params, theorem2_bound, OptimizeConfig, OptimizeMode, Regime,
};
use ckr_gap::cuts::{CutLabeling, NamedCut};
use ckr_gap::format::{read_dimacs, read_json, read_labeling, write_dimacs, write_json, InstanceMeta};
use ckr_gap::instances::{build_amm_j, build_component, combine, Component, GapParams, WeightMap};
use ckr_gap::rational::{format_ratio, from_f64_decimal, parse_rational, to_f64, Rational};
use ckr_gap::search::{
    min_non_opposite_cost_threaded, min_terminal_face_cut, verify_theorem2, LabelSpace, SearchBudget, SearchMode,
};
use ckr_gap::sperner::{exhaustive_extremal, exhaustive_face_restricted, mv_bound};
use serde_json::json;

use crate::args::*;
use crate::report::{Entry, Provenance, RunReport};
use crate::suite::{self, Suite, SuiteOptions};
use crate::{usage, CliError, EXIT_CHECK, EXIT_PASS};

type Res<T> = Result<T, CliError>;

pub(crate) fn dispatch(cli: &Cli, out: &mut dyn Write) -> Res<i32> {
    match &cli.command {
        Command::Gen(a) => gen(a, out),
        Command::EvalCut(a) => eval_cut(a, out),
        Command::MinCut(a) => min_cut(a, out),
        Command::Enumerate(a) => enumerate(a, out),
        Command::SpernerVerify(a) => sperner(a, out),
        Command::Optimize(a) => optimize(a, out),
        Command::Limits(a) => limits(a, out),
        Command::Reproduce(a) => reproduce(a, out),
    }
}

fn write_to(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Res<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io { path: p.display().to_string(), source }),
        None => out
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
    }
}

fn read_file(p: &Path) -> Res<String> {
    std::fs::read_to_string(p).map_err(|source| CliError::Io { path: p.display().to_string(), source })
}

fn emit(mut report: RunReport, args: &ReportArgs, start: Instant, out: &mut dyn Write) -> Res<i32> {
    if !args.no_timing {
        report.elapsed_ms = Some(start.elapsed().as_millis());
    }
    let code = if report.passed == Some(false) || !report.all_passed() { EXIT_CHECK } else { EXIT_PASS };
    let text = match args.format {
        ReportFormat::Json => report.to_json(),
        ReportFormat::Text => report.to_text(),
    };
    write_to(args.out.as_deref(), &text, out)?;
    Ok(code)
}

fn parse_lambda(s: &str) -> Res<[Rational; 4]> {
    let parts: Vec<Rational> = s.split(',').map(parse_rational).collect::<Result<_, _>>()?;
    parts.try_into().map_err(|_| usage("--lambda needs four comma-separated values"))
}

fn parse_c(p: &ParamArgs) -> Res<Option<Rational>> {
    Ok(p.c.as_deref().map(parse_rational).transpose()?)
}

fn gap_params(p: &ParamArgs, default_reference: bool) -> Res<GapParams> {
    let c = parse_c(p)?;
    match (&p.lambda, c) {
        (Some(l), Some(c)) => Ok(GapParams::new(parse_lambda(l)?, c)?),
        (None, c) if default_reference => {
            let r = GapParams::reference();
            Ok(match c {
                Some(c) => r.with_c(c),
                None => r,
            })
        }
        (Some(_), None) => Err(usage("--lambda requires --c")),
        (None, _) => Err(usage("--lambda and --c are required")),
    }
}

/// Builds J, a component or the combination, returning header metadata.
fn build(what: &str, k: Option<usize>, n: u32, params: &ParamArgs) -> Res<(WeightMap, InstanceMeta)> {
    let lower = what.to_ascii_lowercase();
    let expect_k = |want: usize| -> Res<()> {
        match k {
            Some(k) if k != want => Err(usage(format!("{what} lives on k = {want}, got --k {k}"))),
            _ => Ok(()),
        }
    };
    match lower.as_str() {
        "j" => {
            expect_k(3)?;
            Ok((build_amm_j(n)?, InstanceMeta::default()))
        }
        "combined" | "combine" => {
            expect_k(4)?;
            let p = gap_params(params, false)?;
            Ok((combine(&p, n)?, InstanceMeta::from_params(&p)))
        }
        _ => {
            let m: Component = what.parse()?;
            expect_k(4)?;
            let c = parse_c(params)?;
            let meta = InstanceMeta { c: c.clone().filter(|_| m == Component::I3), lambda: None };
            Ok((build_component(m, n, c.as_ref())?, meta))
        }
    }
}

fn load(a: &InstanceArgs) -> Res<(WeightMap, InstanceMeta)> {
    if let Some(p) = &a.instance {
        let text = read_file(p)?;
        return Ok(if text.trim_start().starts_with('{') { read_json(&text)? } else { read_dimacs(&text)? });
    }
    let what = a.what.as_deref().ok_or_else(|| usage("give --instance PATH or --what NAME --n N"))?;
    let n = a.n.ok_or_else(|| usage("--n is required with --what"))?;
    build(what, a.k, n, &a.params)
}

fn describe(report: &mut RunReport, w: &WeightMap, meta: &InstanceMeta) {
    report.param("k", w.graph().k()).param("n", w.graph().n()).param("tag", w.tag());
    if let Some(c) = &meta.c {
        report.param("c", format_ratio(c));
    }
    if let Some(l) = &meta.lambda {
        report.param("lambda", l.iter().map(format_ratio).collect::<Vec<_>>());
    }
}

fn gen(a: &GenArgs, out: &mut dyn Write) -> Res<i32> {
    let (w, meta) = build(&a.what, a.k, a.n, &a.params)?;
    let text = match a.format {
        InstanceFormat::Json => write_json(&w, &meta, a.include_zero_edges),
        InstanceFormat::Dimacs => write_dimacs(&w, &meta, a.include_zero_edges),
    };
    write_to(a.out.as_deref(), &text, out)?;
    Ok(EXIT_PASS)
}

fn eval_cut(a: &EvalCutArgs, out: &mut dyn Write) -> Res<i32> {
    let start = Instant::now();
    let (w, meta) = load(&a.instance)?;
    let g = w.graph().clone();
    let (name, cut) = match (&a.cut, &a.cut_file) {
        (Some(name), None) => {
            let named: NamedCut = name.parse()?;
            let c = parse_c(&a.instance.params)?.or_else(|| meta.c.clone());
            (named.to_string(), named.build_on(&g, c.as_ref())?)
        }
        (None, Some(path)) => {
            let cut = read_labeling(&read_file(path)?)?;
            if cut.graph().k() != g.k() || cut.graph().n() != g.n() {
                return Err(ckr_gap::Error::GraphMismatch {
                    expected_k: g.k(),
                    expected_n: g.n(),
                    found_k: cut.graph().k(),
                    found_n: cut.graph().n(),
                }
                .into());
            }
            (path.display().to_string(), CutLabeling::new(g.clone(), cut.labels().to_vec())?)
        }
        _ => return Err(usage("give exactly one of --cut NAME or --cut-file PATH")),
    };
    let mut report = RunReport::new("eval-cut");
    describe(&mut report, &w, &meta);
    report.param("cut", name);
    let d = Provenance::DirectEvaluation;
    report.push(Entry::ratio("cost", &cut.cost(&w)?, d));
    report.push(Entry::new("cut-set size", json!(cut.delta().len()), d));
    report.push(Entry::new("non-opposite", json!(cut.is_non_opposite()), d));
    let fragmenting = match g.k() {
        3 => Some(cut.is_fragmenting()),
        4 => cut.restrict_to_face().ok().map(|q| q.is_fragmenting()),
        _ => None,
    };
    if let Some(f) = fragmenting {
        report.push(Entry::new("fragmenting (face restriction)", json!(f), d));
    }
    emit(report, &a.report, start, out)
}

fn min_cut(a: &MinCutArgs, out: &mut dyn Write) -> Res<i32> {
    let start = Instant::now();
    let mut inst = InstanceArgs { instance: a.instance.instance.clone(), what: a.instance.what.clone(), k: a.instance.k, n: a.instance.n, params: ParamArgs { c: a.instance.params.c.clone(), lambda: a.instance.params.lambda.clone() } };
    if inst.instance.is_none() && inst.what.is_none() {
        inst.what = Some("J".into());
    }
    let (w, meta) = load(&inst)?;
    let k = w.graph().k();
    let terminals: Vec<usize> = match a.terminal {
        Some(t) if (1..=k).contains(&t) => vec![t - 1],
        Some(t) => return Err(usage(format!("--terminal must lie in 1..={k}, got {t}"))),
        None => (0..k).collect(),
    };
    let mut report = RunReport::new("min-cut");
    describe(&mut report, &w, &meta);
    let n = w.graph().n();
    let is_j = w.tag() == "J";
    let floor = Rational::new(2.into(), 5.into()) - Rational::new(1.into(), (3 * i64::from(n)).into());
    for i in terminals {
        let v = min_terminal_face_cut(&w, i)?;
        let mut e = Entry::ratio(format!("terminal {} vs opposite side", i + 1), &v, Provenance::MaxFlow);
        if is_j {
            e = e.check(format!(">= {}", floor), "exact", v >= floor);
        }
        report.push(e);
    }
    emit(report, &a.report, start, out)
}

fn enumerate(a: &EnumerateArgs, out: &mut dyn Write) -> Res<i32> {
    let start = Instant::now();
    let (w, meta) = load(&a.instance)?;
    let mode = match a.mode {
        Mode::Exhaustive => SearchMode::Exhaustive,
        Mode::Bnb => SearchMode::BranchAndBound,
    };
    let budget = SearchBudget::new(a.budget, mode)?;
    if mode == SearchMode::Exhaustive {
        LabelSpace::non_opposite(w.graph()).check_budget(a.budget)?;
    }
    let r = min_non_opposite_cost_threaded(&w, budget, a.threads)?;
    let mut report = RunReport::new("enumerate");
    describe(&mut report, &w, &meta);
    report.param("mode", mode.to_string()).param("budget", a.budget.to_string());
    let p = Provenance::Enumeration;
    report.push(Entry::ratio("min cost", &r.min_cost, p));
    report.push(Entry::new("explored", json!(r.explored.to_string()), p));
    report.push(Entry::new("proven optimal", json!(r.proven_optimal), p).check("true", "exact", r.proven_optimal));
    report.push(Entry::new("argmin", json!(r.argmin.labels()), p));
    let n = w.graph().n();
    if a.verify_bound {
        let (Some(lambda), Some(c)) = (meta.lambda.clone(), meta.c.clone()) else {
            return Err(usage("--verify-bound needs a combined instance"));
        };
        let params = GapParams::new(lambda, c)?;
        let b = theorem2_bound(&params, Regime::Finite(n))?;
        report.regime.insert("bound".into(), if b.in_regime { "in-regime".into() } else { "out-of-regime".into() });
        report.push(Entry::ratio("closed-form bound", &b.bound, Provenance::Formula));
        let ok = verify_theorem2(&params, &r)?;
        report.push(Entry::new("minimum respects bound", json!(ok), Provenance::Formula).check("true", "exact", ok));
    }
    emit(report, &a.report, start, out)
}

fn sperner(a: &SpernerArgs, out: &mut dyn Write) -> Res<i32> {
    let start = Instant::now();
    let mut report = RunReport::new("sperner-verify");
    report.param("k", a.k).param("n", a.n).param("face_restricted", a.face_restricted);
    let p = Provenance::Enumeration;
    if a.face_restricted {
        let r = exhaustive_face_restricted(a.k, a.n, a.budget, a.threads)?;
        for row in &r.rows {
            report.push(
                Entry::new(format!("z={} min non-monochromatic", row.inadmissible), json!(row.min_nonmonochromatic), p)
                    .check(format!(">= {}", row.bound), "exact", row.holds()),
            );
        }
        report.push(Entry::new("labelings", json!(r.explored.to_string()), p));
    } else {
        let e = exhaustive_extremal(a.k, a.n, a.budget, a.threads)?;
        let bound = mv_bound(a.k, a.n);
        report.push(
            Entry::new("max monochromatic", json!(e.max_monochromatic), p)
                .check(format!("<= {bound}"), "exact", e.max_monochromatic as u128 <= bound),
        );
        report.push(Entry::new("bound attained", json!(e.max_monochromatic as u128 == bound), p));
        report.push(Entry::new("witness", json!(e.witness), p));
        report.push(Entry::new("labelings", json!(e.explored.to_string()), p));
    }
    emit(report, &a.report, start, out)
}

fn optimize(a: &OptimizeArgs, out: &mut dyn Write) -> Res<i32> {
    let start = Instant::now();
    let mode = if a.params.c.is_some() || a.params.lambda.is_some() {
        OptimizeMode::Candidates(vec![gap_params(&a.params, false)?])
    } else {
        match OptimizeConfig::default().mode {
            OptimizeMode::Search { c_min, c_max, .. } => OptimizeMode::Search {
                c_min,
                c_max,
                c_steps: a.c_steps,
                refine_rounds: a.refine_rounds,
                lambda3_zero: a.lambda3_zero,
            },
            other => other,
        }
    };
    let r = optimize_params(&OptimizeConfig { mode, decimals: a.decimals })?;
    let mut report = RunReport::new("optimize");
    report.param("lambda3_zero", a.lambda3_zero).param("c_steps", a.c_steps).param("decimals", a.decimals);
    let f = Provenance::Formula;
    report.push(Entry::ratio("c", &r.params.c, f));
    for (i, l) in r.params.lambda.iter().enumerate() {
        report.push(Entry::ratio(format!("lambda{}", i + 1), l, f));
    }
    report.push(Entry::ratio("bound", &r.bound, f));
    let t = theorem2_bound(&r.params, Regime::Asymptotic)?;
    report.push(Entry::ratio("term (i)", &t.term_i, f));
    report.push(Entry::ratio("term (ii)", &t.term_ii, f));
    report.push(Entry::ratio("bound before rounding", &from_f64_decimal(r.raw_bound, 9), f));
    emit(report, &a.report, start, out)
}

fn limits(a: &LimitsArgs, out: &mut dyn Write) -> Res<i32> {
    let start = Instant::now();
    let params = gap_params(&a.params, true)?;
    let regime = a.n.map_or(Regime::Asymptotic, Regime::Finite);
    let lim = limitation_min(&params, regime)?;
    let mut report = RunReport::new("limits");
    report.param("c", format_ratio(&params.c));
    report.param("lambda", params.lambda.iter().map(format_ratio).collect::<Vec<_>>());
    report.regime.insert("evaluation".into(), regime.to_string());
    for row in &lim.rows {
        report.push(Entry::ratio(format!("{} formula", row.cut), &row.formula, Provenance::Formula));
        if let Some(actual) = &row.actual {
            report.push(
                Entry::ratio(format!("{} evaluated", row.cut), actual, Provenance::DirectEvaluation)
                    .check(format!("formula + {}", row.correction), "exact", row.consistent()),
            );
        }
    }
    let prov = if lim.rows.iter().any(|r| r.actual.is_some()) { Provenance::DirectEvaluation } else { Provenance::Formula };
    report.push(Entry::ratio("limitation minimum", &lim.value, prov));
    let t = theorem2_bound(&params, regime)?;
    report.push(Entry::ratio("lower bound", &t.bound, Provenance::Formula));
    if let Regime::Finite(_) = regime {
        report.regime.insert("lower bound".into(), if t.in_regime { "in-regime".into() } else { "out-of-regime".into() });
    }
    let b = beta_max();
    report.push(Entry::new("beta* (c in [0, 1/9))", json!(format!("{:.9}", b.beta)), Provenance::Formula));
    report.push(Entry::new("argmax c", json!(format!("{:.9}", b.c)), Provenance::Formula));
    report.push(Entry::ratio("beta at given c", &beta_exact(&params.c), Provenance::Formula));
    report.push(Entry::new("beta* as float", json!(to_f64(&beta_exact(&from_f64_decimal(b.c, 9)))), Provenance::Formula));
    emit(report, &a.report, start, out)
}

fn reproduce(a: &ReproduceArgs, out: &mut dyn Write) -> Res<i32> {
    let start = Instant::now();
    let which: Suite = a.suite.parse().map_err(CliError::Usage)?;
    let opts = SuiteOptions { budget: a.budget, threads: a.threads.max(1) };
    let mut report = RunReport::new("reproduce");
    report.param("suite", a.suite.clone()).param("budget", a.budget.to_string());
    let mut all = true;
    for id in which.criteria() {
        let o = suite::run(id, &opts);
        all &= o.passed();
        for mut e in o.entries.clone() {
            e.name = format!("[{}] {}", id, e.name);
            report.push(e);
        }
        if let Some(err) = &o.error {
            report.push(
                Entry::new(format!("[{}] {}", id, o.title), json!({ "error": err.code(), "message": err.to_string() }), Provenance::Enumeration)
                    .check("completed", "exact", false),
            );
        }
        report.push(
            Entry::new(format!("[{}] {}", id, o.title), json!(if o.passed() { "pass" } else { "fail" }), Provenance::DirectEvaluation)
                .check("pass", "exact", o.passed()),
        );
    }
    report.passed = Some(all);
    emit(report, &a.report, start, out)
}
