//! One handler per subcommand. A handler fills the report and returns its
//! status and exit code; a `Stop` ends the run early with its own.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::time::Instant;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use cyclestab_core::bounds::{
    check_bollobas_with, check_erdos_gallai_with, check_fan_lv_weng_with, Verdict as BoundVerdict,
};
use cyclestab_core::coloring::parse_coloring;
use cyclestab_core::cycles::{cycle_spectrum_within, validate_cycle, CycleWitness, SpectrumReport};
use cyclestab_core::format::parse_graph;
use cyclestab_core::paths::{
    bipartite_xy_path, hamiltonian_path_between_within, near_spanning_paths, validate_path, PathError, PathWitness,
};
use cyclestab_core::ramsey::{
    arrth_sweep, arrth_verdict_within, cycth1_certificate_within, le4_extract, ramsey_sweep, validate_le4,
    verify_ramsey_certificate, ArrthError, ArrthReport, ColorSpectrum, Cycth1Error, Le4Error, Le4Extraction,
    RamseyCertificate, SweepError, SweepMode, SweepOptions, Verdict,
};
use cyclestab_core::stability::{
    decompose_cycth_within, decompose_th3par_within, decompose_thdc_within, verify_stability_certificate,
    DecompositionParams, DecompositionReport, Outcome, Procedure, StabilityCertificate, StabilityError,
};
use cyclestab_core::{CheckReport, Color, Deadline, Graph, Rational, TwoColoring};

use crate::report::{digest, RunReport};
use crate::{Cli, Command, Mode};

pub const OK: u8 = 0;
pub const FAILED: u8 = 1;
pub const INPUT: u8 = 2;
pub const TIMEOUT: u8 = 3;

struct Stop {
    status: &'static str,
    message: String,
    code: u8,
}

impl Stop {
    fn new(status: &'static str, message: impl Into<String>, code: u8) -> Self {
        Stop {
            status,
            message: message.into(),
            code,
        }
    }
}

fn input(message: impl Into<String>) -> Stop {
    Stop::new("input-error", message, INPUT)
}

fn timeout() -> Stop {
    Stop::new("timeout", "search deadline exceeded", TIMEOUT)
}

type Handled = Result<(&'static str, u8), Stop>;

fn verdict(passed: bool, ok: &'static str, bad: &'static str) -> (&'static str, u8) {
    if passed {
        (ok, OK)
    } else {
        (bad, FAILED)
    }
}

struct Run<'a> {
    cli: &'a Cli,
    report: RunReport,
    deadline: Deadline,
}

impl<'a> Run<'a> {
    fn read(&mut self, key: &str, path: Option<&Path>) -> Result<String, Stop> {
        let path = path.ok_or_else(|| input(format!("{} needs --{key}", self.report.command)))?;
        let bytes = fs::read(path).map_err(|e| input(format!("cannot read {}: {e}", path.display())))?;
        self.report.input_digest.insert(key.to_string(), digest(&bytes));
        String::from_utf8(bytes).map_err(|_| input(format!("{} is not UTF-8", path.display())))
    }

    fn graph(&mut self) -> Result<Graph, Stop> {
        let cli = self.cli;
        let text = self.read("graph", cli.graph.as_deref())?;
        parse_graph(&text).map_err(|e| input(format!("graph: {e}")))
    }

    fn coloring(&mut self) -> Result<TwoColoring, Stop> {
        let cli = self.cli;
        let text = self.read("coloring", cli.coloring.as_deref())?;
        parse_coloring(&text).map_err(|e| input(format!("coloring: {e}")))
    }

    fn param(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("parameters serialize");
        self.report.parameters.insert(key.to_string(), v);
    }

    fn result(&mut self, value: impl Serialize) {
        self.report.result = serde_json::to_value(value).expect("results serialize");
    }

    fn checks(&mut self, rep: CheckReport) -> bool {
        self.report.checks.extend(rep.checks);
        rep.passed
    }

    fn need<T: Clone>(&self, v: &Option<T>, flag: &str) -> Result<T, Stop> {
        v.clone()
            .ok_or_else(|| input(format!("{} needs --{flag}", self.report.command)))
    }
}

pub fn run(cli: &Cli) -> (RunReport, u8) {
    let start = Instant::now();
    let mut run = Run {
        cli,
        report: RunReport {
            command: cli.command.name(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            status: String::new(),
            input_digest: BTreeMap::new(),
            parameters: BTreeMap::new(),
            result: Value::Null,
            checks: Vec::new(),
            error: None,
            timing: None,
        },
        deadline: Deadline::from_secs(cli.timeout),
    };
    if let Some(t) = cli.timeout {
        run.param("timeout", t.to_string());
    }
    let outcome = check_flags(cli).and_then(|()| match cli.command {
        Command::Spectrum => spectrum(&mut run),
        Command::Bounds => bounds(&mut run),
        Command::Paths => paths(&mut run),
        Command::DecomposeThdc => decompose(&mut run, Procedure::Thdc),
        Command::DecomposeCycth => decompose(&mut run, Procedure::Cycth),
        Command::DecomposeTh3par => decompose(&mut run, Procedure::Th3par),
        Command::Le4 => le4(&mut run),
        Command::RamseyCert => ramsey_cert(&mut run),
        Command::RamseySweep => ramsey_sweep_cmd(&mut run),
        Command::Arrth => arrth(&mut run),
        Command::Verify => verify(&mut run),
    });
    let code = match outcome {
        Ok((status, code)) => {
            run.report.status = status.to_string();
            code
        }
        Err(stop) => {
            run.report.status = stop.status.to_string();
            run.report.error = Some(stop.message);
            stop.code
        }
    };
    let secs = start.elapsed().as_secs_f64();
    eprintln!("{}: {} in {secs:.3}s", run.report.command, run.report.status);
    if cli.timing {
        run.report.timing = Some(secs);
    }
    (run.report, code)
}

/// Flags a command reads; anything else set on the command line is a
/// conflicting input. `--format`, `--shards` and `--timing` are always allowed.
fn allowed(cmd: Command) -> &'static [&'static str] {
    match cmd {
        Command::Spectrum | Command::Bounds => &["graph", "timeout"],
        Command::Paths => &["graph", "from", "to", "length", "timeout"],
        Command::DecomposeThdc | Command::DecomposeTh3par => {
            &["graph", "alpha", "beta", "enforce-paper-range", "timeout"]
        }
        Command::DecomposeCycth => &["graph", "gamma", "enforce-paper-range", "timeout"],
        Command::Le4 => &["graph"],
        Command::RamseyCert => &["coloring", "n", "beta", "timeout"],
        Command::RamseySweep => &["n", "beta", "mode", "samples", "seed", "allow-large", "checkpoint"],
        Command::Arrth => &["coloring", "n", "mode", "samples", "seed", "timeout"],
        Command::Verify => &[
            "certificate",
            "graph",
            "coloring",
            "alpha",
            "beta",
            "gamma",
            "n",
            "enforce-paper-range",
        ],
    }
}

fn check_flags(cli: &Cli) -> Result<(), Stop> {
    let set = [
        ("graph", cli.graph.is_some()),
        ("coloring", cli.coloring.is_some()),
        ("certificate", cli.certificate.is_some()),
        ("alpha", cli.alpha.is_some()),
        ("beta", cli.beta.is_some()),
        ("gamma", cli.gamma.is_some()),
        ("n", cli.n.is_some()),
        ("mode", cli.mode.is_some()),
        ("samples", cli.samples.is_some()),
        ("timeout", cli.timeout.is_some()),
        ("enforce-paper-range", cli.enforce_paper_range),
        ("seed", cli.seed.is_some()),
        ("from", cli.from.is_some()),
        ("to", cli.to.is_some()),
        ("length", cli.length.is_some()),
        ("allow-large", cli.allow_large),
        ("checkpoint", cli.checkpoint.is_some()),
    ];
    let ok = allowed(cli.command);
    let extra: Vec<String> = set
        .iter()
        .filter(|(name, on)| *on && !ok.contains(name))
        .map(|(name, _)| format!("--{name}"))
        .collect();
    if extra.is_empty() {
        Ok(())
    } else {
        Err(input(format!(
            "conflicting inputs: {} not used by {}",
            extra.join(", "),
            cli.command.name()
        )))
    }
}

fn check_witnesses(g: &Graph, witnesses: &[CycleWitness], prefix: &str, rep: &mut CheckReport) {
    for w in witnesses {
        let res = validate_cycle(g, &w.cycle);
        let detail = match &res {
            Ok(()) if w.cycle.len() != w.length => format!("{} vertices listed", w.cycle.len()),
            Ok(()) => String::new(),
            Err(e) => e.to_string(),
        };
        rep.push(
            format!("{prefix}witness-{}", w.length),
            res.is_ok() && w.cycle.len() == w.length,
            detail,
        );
    }
}

fn spectrum_checks(g: &Graph, s: &SpectrumReport) -> CheckReport {
    let mut rep = CheckReport::new();
    check_witnesses(g, &s.witnesses, "", &mut rep);
    let listed: Vec<usize> = s.witnesses.iter().map(|w| w.length).collect();
    rep.push("lengths-match-witnesses", listed == s.lengths, "");
    let top = s.lengths.last().copied().unwrap_or(0);
    rep.push("circumference", s.c == top && s.n == g.n(), format!("c = {}", s.c));
    rep.push("hamiltonian-flag", s.hamiltonian == (s.c == g.n()), "");
    rep
}

fn spectrum(run: &mut Run) -> Handled {
    let g = run.graph()?;
    match cycle_spectrum_within(&g, &run.deadline) {
        Ok(s) => {
            let passed = run.checks(spectrum_checks(&g, &s));
            run.result(&s);
            Ok(verdict(passed, "ok", "rejected"))
        }
        Err(partial) => {
            run.result(&partial);
            Err(timeout())
        }
    }
}

fn bounds(run: &mut Run) -> Handled {
    let g = run.graph()?;
    let s = match cycle_spectrum_within(&g, &run.deadline) {
        Ok(s) => s,
        Err(partial) => {
            run.result(&partial);
            return Err(timeout());
        }
    };
    let reports = vec![
        check_erdos_gallai_with(&g, s.c),
        check_fan_lv_weng_with(&g, s.c),
        check_bollobas_with(&g, &s),
    ];
    let mut rep = CheckReport::new();
    for b in &reports {
        let tag = serde_json::to_value(b.verdict).expect("verdicts serialize");
        let detail = match &b.note {
            note if note.is_empty() => tag.as_str().unwrap_or_default().to_string(),
            note => format!("{}: {note}", tag.as_str().unwrap_or_default()),
        };
        rep.push(format!("bound:{}", b.name), b.verdict != BoundVerdict::Fail, detail);
    }
    let passed = run.checks(rep);
    run.result(json!({ "c": s.c, "lengths": s.lengths, "bounds": reports }));
    Ok(verdict(passed, "ok", "counterexample"))
}

fn path_stop(e: PathError) -> Stop {
    let msg = e.to_string();
    match e {
        PathError::SameEndpoints | PathError::VertexOutOfRange(_) => input(msg),
        PathError::HypothesisViolated(_) | PathError::ParityMismatch { .. } | PathError::OutOfInterval { .. } => {
            Stop::new("precondition-violated", msg, INPUT)
        }
        PathError::NoSuchPath { hypothesis_holds: true } => Stop::new("counterexample", msg, FAILED),
        PathError::NoSuchPath {
            hypothesis_holds: false,
        } => Stop::new("no-path", msg, OK),
        PathError::ExtensionFailed { .. } => Stop::new("construction-failed", msg, FAILED),
        PathError::Timeout(_) => timeout(),
    }
}

fn path_checks(g: &Graph, p: &PathWitness, name: &str, ends: (usize, usize), order: usize, rep: &mut CheckReport) {
    let valid = validate_path(g, p);
    rep.push(
        format!("{name}-valid"),
        valid.is_ok(),
        valid.err().map(|e| e.to_string()).unwrap_or_default(),
    );
    rep.push(format!("{name}-endpoints"), p.endpoints == ends, "");
    rep.push(
        format!("{name}-order"),
        p.order == order,
        format!("{} vertices", p.order),
    );
}

fn paths(run: &mut Run) -> Handled {
    let g = run.graph()?;
    let x = run.need(&run.cli.from, "from")?;
    let y = run.need(&run.cli.to, "to")?;
    run.param("from", x);
    run.param("to", y);
    let mut rep = CheckReport::new();
    if let Some(t) = run.cli.length {
        run.param("length", t);
        let bp = bipartite_xy_path(&g, x, y, t).map_err(path_stop)?;
        path_checks(&g, &bp.path, "path", (x, y), t + 1, &mut rep);
        run.result(&bp);
    } else {
        let ham = hamiltonian_path_between_within(&g, x, y, &run.deadline).map_err(path_stop)?;
        path_checks(&g, &ham.path, "spanning", (x, y), g.n(), &mut rep);
        let near = if 2 * g.min_degree() >= g.n() + 2 {
            let ns = near_spanning_paths(&g, x, y).map_err(path_stop)?;
            path_checks(&g, &ns.near_spanning, "near-spanning", (x, y), g.n() - 1, &mut rep);
            rep.push(
                "near-spanning-avoids",
                !ns.near_spanning.vertices.contains(&ns.removed),
                "",
            );
            Some(ns)
        } else {
            None
        };
        run.result(json!({ "hamiltonian": ham, "near_spanning": near }));
    }
    let passed = run.checks(rep);
    Ok(verdict(passed, "ok", "rejected"))
}

fn stability_stop(e: StabilityError) -> Stop {
    let msg = e.to_string();
    match e {
        StabilityError::InvalidParams(_) => input(msg),
        StabilityError::OutOfRange(_) => Stop::new("out-of-range", msg, INPUT),
        StabilityError::HypothesisViolated(_) => Stop::new("hypothesis-violated", msg, INPUT),
        StabilityError::Timeout(_) => timeout(),
    }
}

fn stability_params(run: &mut Run, procedure: Procedure) -> Result<DecompositionParams, Stop> {
    let cli = run.cli;
    let params = match procedure {
        Procedure::Thdc | Procedure::Th3par => {
            let alpha = run.need(&cli.alpha, "alpha")?;
            let beta = cli.beta.clone().unwrap_or_default();
            run.param("alpha", &alpha);
            run.param("beta", &beta);
            DecompositionParams::alpha_beta(alpha, beta)
        }
        Procedure::Cycth => {
            let gamma = run.need(&cli.gamma, "gamma")?;
            run.param("gamma", &gamma);
            DecompositionParams::gamma(gamma)
        }
    };
    run.param("enforce_paper_range", cli.enforce_paper_range);
    Ok(params.enforcing(cli.enforce_paper_range))
}

fn outcome_checks(g: &Graph, rep: &DecompositionReport, params: &DecompositionParams) -> Result<CheckReport, Stop> {
    match &rep.outcome {
        Outcome::Certificate(cert) => Ok(verify_stability_certificate(g, cert, params)),
        Outcome::GluedCycle { cycle, .. } => {
            let mut checks = CheckReport::new();
            let res = validate_cycle(g, cycle);
            checks.push(
                "glued-cycle",
                res.is_ok(),
                res.err().map(|e| e.to_string()).unwrap_or_default(),
            );
            Ok(checks)
        }
        Outcome::Stuck(s) => Err(Stop::new(
            "procedure-stuck",
            format!("stuck at {}: {}", s.step, s.missing),
            OK,
        )),
    }
}

fn decompose(run: &mut Run, procedure: Procedure) -> Handled {
    let g = run.graph()?;
    let params = stability_params(run, procedure)?;
    let rep = match procedure {
        Procedure::Thdc => decompose_thdc_within(&g, &params, &run.deadline),
        Procedure::Cycth => decompose_cycth_within(&g, &params, &run.deadline),
        Procedure::Th3par => decompose_th3par_within(&g, &params, &run.deadline),
    }
    .map_err(stability_stop)?;
    run.result(&rep);
    let checks = outcome_checks(&g, &rep, &params)?;
    let passed = run.checks(checks);
    let ok = match rep.outcome {
        Outcome::GluedCycle { .. } => "glued-cycle",
        _ => "certificate",
    };
    Ok(verdict(passed, ok, "rejected"))
}

fn le4(run: &mut Run) -> Handled {
    let g = run.graph()?;
    match le4_extract(&g) {
        Ok(ext) => {
            let passed = run.checks(validate_le4(&g, &ext));
            run.result(&ext);
            Ok(verdict(passed, "ok", "rejected"))
        }
        Err(e) => {
            let msg = e.to_string();
            match e {
                Le4Error::LongCycleInGraph { len, witness } | Le4Error::LongCycleInComplement { len, witness } => {
                    run.result(json!({ "length": len, "witness": witness }));
                    Err(Stop::new("precondition-violated", msg, INPUT))
                }
                Le4Error::OddOrder(_) | Le4Error::NotHamiltonian => Err(Stop::new("precondition-violated", msg, INPUT)),
                Le4Error::StarCheckFailed(_) => Err(Stop::new("construction-failed", msg, FAILED)),
            }
        }
    }
}

fn ramsey_params(run: &mut Run) -> Result<(usize, Rational), Stop> {
    let n = run.need(&run.cli.n, "n")?;
    let beta = run.need(&run.cli.beta, "beta")?;
    run.param("n", n);
    run.param("beta", &beta);
    Ok((n, beta))
}

fn ramsey_cert(run: &mut Run) -> Handled {
    let col = run.coloring()?;
    let (n, beta) = ramsey_params(run)?;
    match cycth1_certificate_within(&col, n, &beta, &run.deadline) {
        Ok(cert) => {
            let passed = run.checks(verify_ramsey_certificate(&col, &cert, n, &beta));
            run.result(&cert);
            Ok(verdict(passed, "certificate", "rejected"))
        }
        Err(e) => {
            let msg = e.to_string();
            Err(match e {
                Cycth1Error::BadParameters(_) => input(msg),
                Cycth1Error::HypothesisUnsatisfiable(mono) => {
                    run.result(&mono);
                    Stop::new("hypothesis-unsatisfiable", msg, INPUT)
                }
                Cycth1Error::InternalContradiction(_) => Stop::new("internal-contradiction", msg, FAILED),
                Cycth1Error::Timeout(_) => timeout(),
            })
        }
    }
}

fn shards(cli: &Cli) -> usize {
    cli.shards
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

fn sweep_stop(e: SweepError) -> Stop {
    input(e.to_string())
}

fn ramsey_sweep_cmd(run: &mut Run) -> Handled {
    let cli = run.cli;
    let (n, beta) = ramsey_params(run)?;
    let mode = match cli.mode.unwrap_or(Mode::Exhaustive) {
        Mode::Exhaustive => {
            if cli.samples.is_some() || cli.seed.is_some() {
                return Err(input(
                    "conflicting inputs: --samples and --seed apply to sampled mode only",
                ));
            }
            run.param("mode", "exhaustive");
            SweepMode::Exhaustive
        }
        Mode::Sampled => {
            let samples = run.need(&cli.samples, "samples")?;
            let seed = cli.seed.unwrap_or(0);
            run.param("mode", "sampled");
            run.param("samples", samples);
            run.param("seed", seed);
            SweepMode::Sampled { samples, seed }
        }
    };
    run.param("allow_large", cli.allow_large);
    let opts = SweepOptions {
        n,
        beta,
        mode,
        shards: shards(cli),
        allow_large: cli.allow_large,
        checkpoint: cli.checkpoint.clone(),
    };
    let out = ramsey_sweep(&opts).map_err(sweep_stop)?;
    eprintln!(
        "ramsey-sweep: {} shards {:?}, {:.3}s",
        out.layout.len(),
        out.layout,
        out.elapsed.as_secs_f64()
    );
    let r = &out.report;
    let mut rep = CheckReport::new();
    rep.push(
        "counts-sum",
        r.mono_found + r.certificate_found + r.failures == r.total,
        format!(
            "{} + {} + {} of {}",
            r.mono_found, r.certificate_found, r.failures, r.total
        ),
    );
    rep.push("no-failures", r.failures == 0, r.failures.to_string());
    rep.push("no-mismatches", r.mismatches == 0, r.mismatches.to_string());
    let passed = run.checks(rep);
    run.result(&out.report);
    Ok(verdict(passed, "ok", "counterexample"))
}

fn arrth_checks(col: &TwoColoring, rep: &ArrthReport) -> CheckReport {
    let mut checks = CheckReport::new();
    for (color, spectrum) in [(Color::Red, &rep.red), (Color::Blue, &rep.blue)] {
        let name = if color == Color::Red { "red" } else { "blue" };
        check_witnesses(col.class(color), &spectrum.witnesses, &format!("{name}-"), &mut checks);
        checks.push(format!("{name}-range"), covers_range(spectrum, rep.n), "");
    }
    let expected = Verdict::from_flags(rep.red.complete(), rep.blue.complete());
    checks.push(
        "verdict",
        rep.verdict == expected && rep.p == col.n() && 2 * rep.n == rep.p + 1,
        "",
    );
    checks
}

fn covers_range(spectrum: &ColorSpectrum, n: usize) -> bool {
    let mut seen: Vec<usize> = spectrum
        .witnesses
        .iter()
        .map(|w| w.length)
        .chain(spectrum.missing.iter().copied())
        .collect();
    seen.sort_unstable();
    seen == (3..=n).collect::<Vec<_>>()
}

fn arrth(run: &mut Run) -> Handled {
    let cli = run.cli;
    if cli.coloring.is_some() {
        if cli.n.is_some() || cli.samples.is_some() || cli.seed.is_some() || cli.mode.is_some() {
            return Err(input(
                "conflicting inputs: --coloring runs one verdict; --n, --mode, --samples and --seed run a sweep",
            ));
        }
        let col = run.coloring()?;
        let rep = match arrth_verdict_within(&col, &run.deadline) {
            Ok(rep) => rep,
            Err(e @ ArrthError::WrongOrder(_)) => return Err(input(e.to_string())),
            Err(ArrthError::Timeout(_)) => return Err(timeout()),
        };
        let passed = run.checks(arrth_checks(&col, &rep));
        let status = match rep.verdict {
            Verdict::Red => "red",
            Verdict::Blue => "blue",
            Verdict::Both => "both",
            Verdict::Neither => "neither",
        };
        run.result(&rep);
        return Ok(verdict(passed, status, "rejected"));
    }
    if cli.mode == Some(Mode::Exhaustive) {
        return Err(input("arrth sweeps are sampled only"));
    }
    if cli.timeout.is_some() {
        return Err(input("conflicting inputs: --timeout applies to single verdicts only"));
    }
    let n = run.need(&cli.n, "n")?;
    let samples = run.need(&cli.samples, "samples")?;
    let seed = cli.seed.unwrap_or(0);
    run.param("n", n);
    run.param("mode", "sampled");
    run.param("samples", samples);
    run.param("seed", seed);
    let rep = arrth_sweep(n, samples, seed, shards(cli)).map_err(sweep_stop)?;
    let mut checks = CheckReport::new();
    checks.push(
        "counts-sum",
        rep.red + rep.blue + rep.both + rep.neither == samples,
        format!("{} + {} + {} + {}", rep.red, rep.blue, rep.both, rep.neither),
    );
    let passed = run.checks(checks);
    run.result(&rep);
    Ok(verdict(passed, "ok", "rejected"))
}

fn parse_as<T: DeserializeOwned>(v: Value, what: &str) -> Result<T, Stop> {
    serde_json::from_value(v).map_err(|e| input(format!("malformed {what}: {e}")))
}

/// The digest recorded by the report must match the file given now.
fn digest_check(run: &Run, recorded: &BTreeMap<String, String>, rep: &mut CheckReport) -> Result<(), Stop> {
    for (key, want) in recorded {
        if key == "certificate" {
            continue;
        }
        let got = run
            .report
            .input_digest
            .get(key)
            .ok_or_else(|| input(format!("the report was made from --{key}; pass it again")))?;
        rep.push(format!("input-digest:{key}"), got == want, format!("recorded {want}"));
    }
    Ok(())
}

fn verify_params(
    run: &mut Run,
    procedure: Procedure,
    stored: Option<&DecompositionParams>,
) -> Result<DecompositionParams, Stop> {
    let cli = run.cli;
    let zero = Rational::zero();
    let pick = |flag: &Option<Rational>, stored: Option<&Rational>| flag.clone().or_else(|| stored.cloned());
    let alpha = pick(&cli.alpha, stored.map(|p| &p.alpha));
    let beta = pick(&cli.beta, stored.map(|p| &p.beta)).unwrap_or_else(|| zero.clone());
    let gamma = pick(&cli.gamma, stored.map(|p| &p.gamma));
    let enforce = cli.enforce_paper_range || stored.is_some_and(|p| p.enforce_paper_range);
    let params = match procedure {
        Procedure::Thdc | Procedure::Th3par => {
            let alpha = alpha.ok_or_else(|| input("verify needs --alpha for this certificate"))?;
            run.param("alpha", &alpha);
            run.param("beta", &beta);
            DecompositionParams::alpha_beta(alpha, beta)
        }
        Procedure::Cycth => {
            let gamma = gamma.ok_or_else(|| input("verify needs --gamma for this certificate"))?;
            run.param("gamma", &gamma);
            DecompositionParams::gamma(gamma)
        }
    };
    Ok(params.enforcing(enforce))
}

fn verify_stability(
    run: &mut Run,
    cert: &StabilityCertificate,
    stored: Option<&DecompositionParams>,
) -> Result<CheckReport, Stop> {
    let g = run.graph()?;
    let params = verify_params(run, cert.procedure, stored)?;
    Ok(verify_stability_certificate(&g, cert, &params))
}

fn verify_ramsey(run: &mut Run, cert: &RamseyCertificate) -> Result<CheckReport, Stop> {
    let col = run.coloring()?;
    let n = run.cli.n.unwrap_or(cert.n);
    let beta = run.cli.beta.clone().unwrap_or_else(|| cert.beta.clone());
    run.param("n", n);
    run.param("beta", &beta);
    Ok(verify_ramsey_certificate(&col, cert, n, &beta))
}

fn verify_le4(run: &mut Run, ext: &Le4Extraction) -> Result<CheckReport, Stop> {
    let g = run.graph()?;
    Ok(validate_le4(&g, ext))
}

fn verify_report(run: &mut Run, rr: RunReport) -> Result<(String, CheckReport), Stop> {
    let mut checks = match rr.command.as_str() {
        "decompose-thdc" | "decompose-cycth" | "decompose-th3par" => {
            let rep: DecompositionReport = parse_as(rr.result, "decomposition report")?;
            match &rep.outcome {
                Outcome::Certificate(cert) => verify_stability(run, cert, Some(&rep.params))?,
                Outcome::GluedCycle { .. } => {
                    let g = run.graph()?;
                    outcome_checks(&g, &rep, &rep.params)?
                }
                Outcome::Stuck(_) => return Err(input("a stuck run carries no certificate")),
            }
        }
        "ramsey-cert" => {
            let cert: RamseyCertificate = parse_as(rr.result, "ramsey certificate")?;
            verify_ramsey(run, &cert)?
        }
        "le4" => {
            let ext: Le4Extraction = parse_as(rr.result, "le4 extraction")?;
            verify_le4(run, &ext)?
        }
        "spectrum" => {
            let s: SpectrumReport = parse_as(rr.result, "spectrum report")?;
            let g = run.graph()?;
            spectrum_checks(&g, &s)
        }
        "arrth" if rr.result.get("verdict").is_some() => {
            let rep: ArrthReport = parse_as(rr.result, "arrth report")?;
            let col = run.coloring()?;
            arrth_checks(&col, &rep)
        }
        other => return Err(input(format!("reports of {other} carry nothing to verify"))),
    };
    let mut digests = CheckReport::new();
    digest_check(run, &rr.input_digest, &mut digests)?;
    checks.extend(digests);
    Ok((rr.command, checks))
}

fn verify(run: &mut Run) -> Handled {
    let cli = run.cli;
    let text = run.read("certificate", cli.certificate.as_deref())?;
    let value: Value = serde_json::from_str(&text).map_err(|e| input(format!("certificate is not JSON: {e}")))?;
    let (kind, checks) = if value.get("command").is_some() {
        let rr: RunReport = parse_as(value, "run report")?;
        verify_report(run, rr)?
    } else if value.get("procedure").is_some() {
        let cert: StabilityCertificate = parse_as(value, "stability certificate")?;
        let name = format!("stability-{}", cert.procedure.name());
        (name, verify_stability(run, &cert, None)?)
    } else if value.get("u1").is_some() && value.get("orientation").is_some() {
        let cert: RamseyCertificate = parse_as(value, "ramsey certificate")?;
        ("ramsey-certificate".to_string(), verify_ramsey(run, &cert)?)
    } else if value.get("hamiltonian_cycle").is_some() {
        let ext: Le4Extraction = parse_as(value, "le4 extraction")?;
        ("le4-extraction".to_string(), verify_le4(run, &ext)?)
    } else {
        return Err(input("unrecognized certificate"));
    };
    let passed = run.checks(checks);
    run.result(json!({ "verified": kind, "passed": passed }));
    Ok(verdict(passed, "verified", "rejected"))
}
