//! Acceptance gate: one line per criterion, nonzero exit if any fails.

use std::path::Path;
use std::process::Command as Process;
use std::time::{Duration, Instant};

use clap::Parser;
use hyperfix::{run, Cli, CommandOutput};
use hyperfix_core::mappings::{
    catalog, check_condition_c, check_gen_alpha, check_quasi_nonexpansive, step_map,
};
use hyperfix_core::schemes::{check_fejer, run_scheme};
use hyperfix_core::{
    build_grid, check_axioms, hilbert_modulus, modulus_sampled, BallSampler, Coordinatewise,
    DiskPoint, Euclidean, FixedPoints, GeodesicSpace, L2Grid, ModulusQuery, PartialOrderRel,
    PoincareDisk, ProblemSpec, QuadratureRule, SchemeParams, SelfMap, Termination,
};
use serde_json::Value;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn invoke(args: &[&str]) -> Result<CommandOutput, String> {
    let cli = Cli::try_parse_from(std::iter::once("hyperfix").chain(args.iter().copied()))
        .map_err(|e| e.to_string())?;
    run(&cli).map_err(|e| e.to_string())
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(
        elapsed < limit,
        format!("took {:.2?}, limit {:.0?}", elapsed, limit),
    )
}

fn json(out: &CommandOutput, name: &str) -> Result<Value, String> {
    let text = out.file(name).ok_or(format!("missing {name}"))?;
    serde_json::from_str(text).map_err(|e| e.to_string())
}

fn report<'a>(reports: &'a Value, property: &str) -> Result<&'a Value, String> {
    reports
        .as_array()
        .and_then(|a| a.iter().find(|r| r["property"] == property))
        .ok_or(format!("no report {property}"))
}

fn witness(r: &Value, label: &str) -> Result<Vec<f64>, String> {
    r["witnesses"][0][label]
        .as_array()
        .map(|a| a.iter().filter_map(Value::as_f64).collect())
        .ok_or(format!("witness lacks {label}"))
}

// The Mann column as printed, six significant digits.
const PRINTED_MANN: [f64; 20] = [
    0.9, 0.135, 0.02025, 0.0030375, 0.000455625, 0.0000683438, 0.0000102516, 1.53773e-6,
    2.3066e-7, 3.4599e-8, 5.18985e-9, 7.78478e-10, 1.16772e-10, 1.75158e-11, 2.62736e-12,
    3.94105e-13, 5.91157e-14, 8.86735e-15, 1.3301e-15, 1.99515e-16,
];

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let out = invoke(&["table1"])?;
    let elapsed = start.elapsed();
    ensure(out.passed, "command reported a failed check")?;
    let csv = out.file("table1.csv").ok_or("missing table1.csv")?;
    let lines: Vec<&str> = csv.lines().collect();
    ensure(lines[0] == "n,mann,sahu", "header")?;
    ensure(lines.len() == 21, format!("{} data rows", lines.len() - 1))?;
    ensure(lines[1] == "1,0.9,0.9" && lines[2] == "2,0.135,0", "rows 1-2")?;
    let (mut worst_printed, mut worst_closed) = (0.0f64, 0.0f64);
    for (i, line) in lines[1..].iter().enumerate() {
        let cells: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        let (mann, sahu) = (cells[1], cells[2]);
        worst_printed = worst_printed.max((mann - PRINTED_MANN[i]).abs() / PRINTED_MANN[i]);
        let closed = 0.9 * 0.15f64.powi(i as i32);
        worst_closed = worst_closed.max((mann - closed).abs() / closed);
        if i >= 1 {
            ensure(sahu == 0.0, format!("sahu row {} = {sahu}", i + 1))?;
        }
    }
    ensure(worst_printed <= 1e-4, format!("printed rel err {worst_printed:e}"))?;
    ensure(worst_closed <= 1e-12, format!("closed-form rel err {worst_closed:e}"))?;
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!(
        "rel err {worst_printed:.2e} vs printed, {worst_closed:.2e} vs closed form, {elapsed:.2?}"
    ))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let out = invoke(&["properties", "step"])?;
    let elapsed = start.elapsed();
    ensure(out.passed, "declared classes not confirmed")?;
    let reports = json(&out, "properties.json")?;

    let c = report(&reports, "condition_c")?;
    ensure(c["verdict"] == "refuted", "condition (C) not refuted")?;
    let (x, y) = (witness(c, "x")?, witness(c, "y")?);
    let m = step_map();
    let e = Euclidean::new(1).map_err(|e| e.to_string())?;
    let d = |u: &Vec<f64>, v: &Vec<f64>| e.dist(u, v).unwrap();
    let (tx, ty) = (m.apply(&x).unwrap(), m.apply(&y).unwrap());
    ensure(
        0.5 * d(&x, &tx) <= d(&x, &y) && d(&tx, &ty) > d(&x, &y),
        "witness does not replay",
    )?;

    let alpha = 1.0f64 / 3.0;
    let g = report(&reports, &format!("gen_alpha(alpha={alpha})"))?;
    let margin = g["worst_margin"].as_f64().ok_or("no margin")?;
    ensure(g["verdict"] == "holds-on-samples" && margin >= -1e-12, format!("margin {margin:e}"))?;
    let grid = m.sample_grid(0.01);
    ensure(grid.iter().any(|p| p[0] == 4.0), "x = 4 missing from grid")?;
    within(elapsed, Duration::from_secs(10))?;
    Ok(format!(
        "(C) refuted at x={}, y={}; gen-alpha(1/3) worst margin {margin:.2e}; {elapsed:.2?}",
        x[0], y[0]
    ))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let e = Euclidean::new(2).map_err(|e| e.to_string())?;
    let reference = 1.0 - 0.75f64.sqrt();
    ensure(
        (hilbert_modulus(1.0, 1.0).unwrap() - reference).abs() < 1e-15,
        "closed form",
    )?;
    let mut estimates = Vec::new();
    for r in [0.5, 1.0, 2.0] {
        let q = ModulusQuery {
            radius: r,
            epsilon: 1.0,
            sample_count: 100_000,
            seed: 42,
        };
        estimates.push(modulus_sampled(&e, &q, &vec![0.0, 0.0]).map_err(|e| e.to_string())?);
    }
    let at_one = estimates[1];
    ensure(
        at_one >= reference - 1e-6 && at_one <= reference + 1e-2,
        format!("estimate {at_one} outside band around {reference}"),
    )?;
    let spread = estimates.iter().cloned().fold(f64::MIN, f64::max)
        - estimates.iter().cloned().fold(f64::MAX, f64::min);
    ensure(spread <= 2e-2, format!("spread {spread}"))?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(30))?;
    Ok(format!(
        "delta(1,1) ~ {at_one:.6} (exact {reference:.6}), spread {spread:.1e}, {elapsed:.2?}"
    ))
}

/// Disk metric with straight-line combination.
struct AffineDisk(PoincareDisk);

impl GeodesicSpace for AffineDisk {
    type Point = DiskPoint;
    fn name(&self) -> String {
        "affine-disk".into()
    }
    fn validate(&self, p: &DiskPoint) -> hyperfix_core::Result<()> {
        self.0.validate(p)
    }
    fn dist(&self, u: &DiskPoint, v: &DiskPoint) -> hyperfix_core::Result<f64> {
        self.0.dist(u, v)
    }
    fn combine(&self, u: &DiskPoint, v: &DiskPoint, b: f64) -> hyperfix_core::Result<DiskPoint> {
        DiskPoint::new(u.x() + b * (v.x() - u.x()), u.y() + b * (v.y() - u.y()))
    }
}

impl BallSampler for AffineDisk {
    fn sample_point<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> DiskPoint {
        self.0.sample_point(rng)
    }
    fn sample_in_ball<R: rand::Rng + ?Sized>(
        &self,
        c: &DiskPoint,
        r: f64,
        rng: &mut R,
    ) -> hyperfix_core::Result<DiskPoint> {
        self.0.sample_in_ball(c, r, rng)
    }
    fn symmetric_pair(
        &self,
        _: &DiskPoint,
        _: f64,
        _: f64,
    ) -> hyperfix_core::Result<Option<(DiskPoint, DiskPoint)>> {
        Ok(None)
    }
}

fn all_axioms<S: BallSampler>(space: &S) -> Result<(), String> {
    let reports = check_axioms(space, 10_000, 42, 1e-9).map_err(|e| e.to_string())?;
    for r in reports {
        ensure(r.holds(), format!("{} fails {}", space.name(), r.property))?;
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    all_axioms(&Euclidean::new(1).unwrap())?;
    all_axioms(&Euclidean::new(2).unwrap())?;
    all_axioms(&PoincareDisk::new())?;
    all_axioms(&L2Grid::new(build_grid(64, QuadratureRule::Trapezoid).unwrap()))?;
    let broken = check_axioms(&AffineDisk(PoincareDisk::new()), 10_000, 42, 1e-9)
        .map_err(|e| e.to_string())?;
    let split = &broken[1];
    ensure(
        split.property == "axiom_ii_geodesic_split" && !split.holds(),
        "broken H passes axiom (ii)",
    )?;
    ensure(!split.witnesses.is_empty(), "no witness")?;
    let refuted = broken.iter().filter(|r| !r.holds()).count();
    Ok(format!(
        "four spaces pass at 1e-9; affine disk H fails axiom (ii) (margin {:.2e}, {} axioms refuted)",
        split.worst_margin.unwrap_or(f64::NAN),
        refuted
    ))
}

fn criterion_5() -> Outcome {
    let m = hyperfix_core::mappings::by_name("toward_one").ok_or("no toward_one")?;
    let e = Euclidean::new(1).unwrap();
    let runs = [
        ("mann", SchemeParams::mann(vec![0.0], 0.85), 200),
        ("thakur", SchemeParams::thakur(vec![0.0], 0.85, 0.65, 0.45), 60),
    ];
    let mut detail = Vec::new();
    for (name, params, limit) in runs {
        let params = params
            .with_fixed_point(vec![1.0])
            .with_stop_tol(Some(1e-10))
            .with_max_iter(limit);
        let trace = run_scheme(&e, &m, &params, Some(&Coordinatewise)).map_err(|e| e.to_string())?;
        ensure(
            trace.records.iter().all(|r| r.order_chain_ok == Some(true)),
            format!("{name}: order chain broken"),
        )?;
        ensure(check_fejer(&trace).unwrap().holds(), format!("{name}: not Fejér"))?;
        ensure(
            trace.termination == Termination::TolReached && trace.last_residual() <= 1e-10,
            format!("{name}: residual {:e} after {} steps", trace.last_residual(), trace.len()),
        )?;
        detail.push(format!("{name} residual <= 1e-10 at n={}", trace.len()));
    }
    Ok(format!("chains and Fejér hold; {}", detail.join(", ")))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let out = invoke(&["integral"])?;
    ensure(out.passed, "integral checks failed")?;
    let s = json(&out, "integral.json")?;
    let get = |k: &[&str]| {
        k.iter()
            .fold(&s, |v, key| &v[*key])
            .as_f64()
            .ok_or(format!("missing {k:?}"))
    };
    let (rp, rt) = (get(&["picard", "residual"])?, get(&["thakur", "residual"])?);
    let (gap, refine) = (get(&["gap"])?, get(&["refine_difference"])?);
    ensure(rp <= 1e-8 && rt <= 1e-8, format!("residuals {rp:e}, {rt:e}"))?;
    ensure(gap <= 1e-6, format!("gap {gap:e}"))?;
    ensure(refine <= 1e-3, format!("refine {refine:e}"))?;

    // Nondecreasing iterates, checked again from the stored trace.
    let p = ProblemSpec::default().build(64).map_err(|e| e.to_string())?;
    let (_, trace) = hyperfix_core::integral::solve_picard(&p, 1e-10, 500)
        .map_err(|e| e.to_string())?;
    for w in trace.records.windows(2) {
        let (a, b) = (w[0].x.as_ref().unwrap(), w[1].x.as_ref().unwrap());
        ensure(
            a.values().iter().zip(b.values()).all(|(u, v)| u <= v),
            format!("decrease at step {}", w[1].n),
        )?;
    }

    let lin = invoke(&["integral", "--set", "kernel=linear", "--set", "y0=1"])?;
    ensure(lin.passed, "linear kernel checks failed")?;
    let csv = lin.file("integral.csv").ok_or("missing integral.csv")?;
    let worst = csv
        .lines()
        .skip(1)
        .flat_map(|l| l.split(',').skip(1).map(|c| c.parse::<f64>().unwrap()).collect::<Vec<_>>())
        .map(|v| (v - 4.0 / 3.0).abs())
        .fold(0.0, f64::max);
    ensure(worst <= 1e-9, format!("linear kernel off 4/3 by {worst:e}"))?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(10))?;
    Ok(format!(
        "residuals {rp:.1e}/{rt:.1e}, gap {gap:.1e}, refine {refine:.1e}, 4/3 to {worst:.1e}, {elapsed:.2?}"
    ))
}

fn criterion_7() -> Outcome {
    let e = Euclidean::new(1).unwrap();
    let mut checked = 0;
    for m in catalog() {
        let points = m.sample_grid(0.01);
        let c = check_condition_c(&e, &m, &points).map_err(|e| e.to_string())?;
        let g0 = check_gen_alpha(&e, &m, 0.0, &Coordinatewise, &points).unwrap();
        ensure(!c.holds() || g0.holds(), format!("{}: (C) but not gen-alpha(0)", m.name))?;
        let has_fixed = match m.fixed_points() {
            FixedPoints::Finite(ps) => ps
                .iter()
                .any(|p| points.iter().any(|x| Coordinatewise.comparable(x, p).unwrap())),
            FixedPoints::Whole => true,
            FixedPoints::Unknown => false,
        };
        if has_fixed {
            let q = check_quasi_nonexpansive(&e, &m, &Coordinatewise, &points).unwrap();
            for alpha in [0.0, 0.25, 1.0 / 3.0, 0.5, 0.9] {
                let g = check_gen_alpha(&e, &m, alpha, &Coordinatewise, &points).unwrap();
                ensure(
                    !g.holds() || q.holds(),
                    format!("{}: gen-alpha({alpha}) but not quasi", m.name),
                )?;
            }
        }
        checked += 1;
    }
    Ok(format!("implications hold on {checked} catalog maps"))
}

const COMMANDS: [&[&str]; 6] = [
    &["table1"],
    &["race", "toward_one"],
    &["properties", "step"],
    &["space-check", "poincare", "--samples", "2000"],
    &["space-check", "l2grid:16", "--samples", "500"],
    &["integral"],
];

fn read_dir_sorted(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), std::fs::read(e.path()).unwrap())
        })
        .collect();
    files.sort();
    files
}

fn criterion_8() -> Outcome {
    for args in COMMANDS {
        let a = invoke(args)?;
        let b = invoke(args)?;
        ensure(a == b, format!("{args:?} differs between runs"))?;
    }
    let bin = env!("CARGO_BIN_EXE_hyperfix");
    let mut files = 0;
    for args in COMMANDS {
        let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
        let mut stdouts = Vec::new();
        for d in &dirs {
            let out = Process::new(bin)
                .args(args)
                .args(["--seed", "7", "--out"])
                .arg(d.path())
                .output()
                .map_err(|e| e.to_string())?;
            ensure(out.status.code() == Some(0), format!("{args:?} exit {:?}", out.status))?;
            stdouts.push(out.stdout);
        }
        let (x, y) = (read_dir_sorted(dirs[0].path()), read_dir_sorted(dirs[1].path()));
        ensure(!x.is_empty() && x == y && stdouts[0] == stdouts[1], format!("{args:?} not byte-identical"))?;
        files += x.len();
    }
    Ok(format!("{} commands, {files} files byte-identical across runs", COMMANDS.len()))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("table reproduction", criterion_1),
        ("step-map classification", criterion_2),
        ("modulus of convexity", criterion_3),
        ("space axioms", criterion_4),
        ("scheme diagnostics", criterion_5),
        ("integral equation", criterion_6),
        ("class hierarchy", criterion_7),
        ("determinism", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {} ({name}): PASS - {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL - {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
