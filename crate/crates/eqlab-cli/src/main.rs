//! eqlab: bounds, exact certificates, constructions, spectral diagnostics,
//! theta programs, and the small-dimension classification for
//! t-almost-equiangular sets on unit spheres.
//!
//! Exit codes: 0 = success/verified, 1 = a verification check failed,
//! 2 = usage or domain error.

use clap::{Args, Parser, Subcommand};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use eqlab_core::algebraic::{parse_root_handle, spindle_root, AlgebraicNumber};
use eqlab_core::bounds::{analytic_bound, asymptotic_exact, bound_sweep, f_exact};
use eqlab_core::certificate::{
    certificate_violation_on_samples, export_sampled_sdp, verify_certificate,
};
use eqlab_core::classify::classify_with_options;
use eqlab_core::geometry::{
    almost_equiangular_offender, build_double_simplex, build_rhombus, build_simplex,
    build_spindle, distance_graph, embed_gram, larman_rogers, GramMatrix, UnitConfig,
};
use eqlab_core::hypergraph::Hypergraph3;
use eqlab_core::manifest::RunManifest;
use eqlab_core::ratio::{parse_rat, to_f64, Rat};
use eqlab_core::sdp::{SdpStatus, SolveOptions};
use eqlab_core::spectral::{
    from_o_matrix, maximum_set_graph_checks, o_matrix_check, spectral_report, to_o_matrix,
    SPECTRAL_THRESHOLD,
};
use eqlab_core::theta::{build_delta_sdp, build_lasserre_sdp, solve_program};

#[derive(Parser)]
#[command(
    name = "eqlab",
    version,
    about = "Almost-equiangular sets: bounds, certificates, constructions, classification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analytic three-point bound report at a single (n, t).
    Bound(BoundArgs),
    /// CSV sweep of the bound over a t-range.
    BoundSweep(SweepArgs),
    /// Exact rational verification of the positivity certificate.
    Certificate(CertificateArgs),
    /// Build a named construction and emit its unit configuration as JSON.
    Realize(RealizeArgs),
    /// Check a configuration (JSON) or Gram matrix (CSV) file.
    Check(CheckArgs),
    /// Classify maximum sets for n = 2 or 3 and emit Figure-style regions.
    Classify(ClassifyArgs),
    /// Build, export, or solve hypergraph theta programs.
    Theta(ThetaArgs),
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long)]
    n: u32,
    /// Inner product: "p/q", decimal, or a root handle like "t_2_1".
    #[arg(long, allow_hyphen_values = true)]
    t: String,
    /// Write the full report as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, allow_hyphen_values = true)]
    from: String,
    #[arg(long, allow_hyphen_values = true)]
    to: String,
    /// Number of steps; the sweep emits steps+1 rows.
    #[arg(long)]
    steps: u32,
    /// Write CSV here instead of stdout (a manifest is written alongside).
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct CertificateArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
    /// Exact rational verification (default when no other mode is given).
    #[arg(long)]
    exact: bool,
    /// Verify at this many seeded random rational t values instead.
    #[arg(long)]
    samples: Option<usize>,
    /// Export the sampled SDP relaxation in SDPA sparse format.
    #[arg(long, value_name = "PATH")]
    export_sdpa: Option<PathBuf>,
}

#[derive(Args)]
struct RealizeArgs {
    #[command(subcommand)]
    what: RealizeWhat,
}

#[derive(Subcommand)]
enum RealizeWhat {
    /// k-simplex (k+1 points pairwise at t) on the sphere of R^n.
    Simplex(SimplexArgs),
    /// k-rhombus: base simplex with two apexes.
    Rhombus(RhombusArgs),
    /// Spindle S(k, l); S(k, k) is the Moser spindle MS_k.
    Spindle(SpindleArgs),
    /// Double simplex: 2(n+1) points at t = -1/n.
    DoubleSimplex(DoubleSimplexArgs),
    /// The 16-point dimension-5 set at t = 1/5.
    LarmanRogers(LarmanRogersArgs),
}

#[derive(Args)]
struct SimplexArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, allow_hyphen_values = true)]
    t: String,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct RhombusArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, allow_hyphen_values = true)]
    t: String,
    /// Apex inner product (free only for k < n-1); defaults to the forced value.
    #[arg(long, allow_hyphen_values = true)]
    apex_ip: Option<String>,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct SpindleArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    l: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, allow_hyphen_values = true)]
    t: String,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct DoubleSimplexArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct LarmanRogersArgs {
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    /// Configuration JSON (dim/points/labels) or Gram matrix CSV.
    file: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    t: String,
    /// Ambient dimension override (inferred from the file otherwise).
    #[arg(long)]
    n: Option<usize>,
    /// Pairwise tolerance for the t-pair test.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Run the full spectral / O-matrix / 2-design / graph diagnostics.
    #[arg(long)]
    full: bool,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long)]
    n: usize,
    /// Output directory for the JSON report and graph6 corpus.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Skip numeric cross-validation of the survivors.
    #[arg(long)]
    no_validate: bool,
}

#[derive(Args)]
struct ThetaArgs {
    /// Hypergraph file: first line the vertex count, then one 3-edge per line.
    file: PathBuf,
    #[arg(long, value_parser = ["delta", "lasserre"])]
    level: String,
    /// Solve the program with the interior-point solver.
    #[arg(long)]
    solve: bool,
    /// Export the program in SDPA sparse format.
    #[arg(long, value_name = "PATH")]
    export: Option<PathBuf>,
}

// ---------------------------------------------------------------------------
// Parameter parsing.
// ---------------------------------------------------------------------------

enum TParam {
    Rational(Rat),
    Root(String, AlgebraicNumber),
}

impl TParam {
    fn to_f64(&self) -> f64 {
        match self {
            TParam::Rational(r) => to_f64(r),
            TParam::Root(_, a) => a.to_f64(),
        }
    }

    fn rational(&self) -> Option<&Rat> {
        match self {
            TParam::Rational(r) => Some(r),
            TParam::Root(..) => None,
        }
    }
}

fn parse_t(s: &str) -> Result<TParam, String> {
    if let Some(handle) = parse_root_handle(s) {
        let root = spindle_root(handle)
            .ok_or_else(|| format!("root handle {s} does not name a real root"))?;
        return Ok(TParam::Root(s.to_string(), root));
    }
    match parse_rat(s) {
        Ok(r) => Ok(TParam::Rational(r)),
        Err(_) => Err(format!(
            "cannot parse t = {s:?}: expected \"p/q\", a decimal, or a root handle like t_2_1"
        )),
    }
}

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn usage_error(msg: impl std::fmt::Display) -> u8 {
    eprintln!("error: {msg}");
    EXIT_USAGE
}

fn write_manifest(
    command: &str,
    params: Vec<(String, String)>,
    outputs: &[&Path],
    manifest_path: &Path,
) -> std::io::Result<()> {
    let mut m = RunManifest::new(command, params);
    for o in outputs {
        m.record_output(o)?;
    }
    m.write(manifest_path)
}

fn manifest_path_for(out: &Path) -> PathBuf {
    let mut name = out
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "output".to_string());
    name.push_str(".manifest.json");
    out.with_file_name(name)
}

// ---------------------------------------------------------------------------
// Commands.
// ---------------------------------------------------------------------------

fn cmd_bound(args: BoundArgs) -> u8 {
    let t = match parse_t(&args.t) {
        Ok(t) => t,
        Err(e) => return usage_error(e),
    };
    match &t {
        TParam::Rational(r) => {
            let report = match analytic_bound(args.n, r) {
                Ok(rep) => rep,
                Err(e) => return usage_error(e),
            };
            println!("n = {}", report.n);
            println!("t = {} ({:.6})", report.t, to_f64(&report.t));
            println!("f = {:.6} (exact {})", report.f_value, f_exact(args.n, r));
            println!("floor_f = {}", report.floor_f);
            if report.floor_is_near_integer {
                println!("floor_candidates = {:?}", report.floor_candidates);
            }
            match report.asymptotic_floor {
                Some(a) => println!("asymptotic_floor = {a}"),
                None => println!("asymptotic_floor = none (t = 0)"),
            }
            println!("spectral_cap = {}", report.spectral_cap);
            println!("best_upper = {}", report.best_upper);
            if let Some(path) = args.json {
                let body = serde_json::to_string_pretty(&report).expect("report serializes");
                if let Err(e) = std::fs::write(&path, body) {
                    return usage_error(format!("cannot write {}: {e}", path.display()));
                }
                let mp = manifest_path_for(&path);
                let params = vec![
                    ("n".to_string(), args.n.to_string()),
                    ("t".to_string(), args.t.clone()),
                ];
                if let Err(e) = write_manifest("bound", params, &[&path], &mp) {
                    return usage_error(format!("cannot write manifest: {e}"));
                }
                eprintln!("wrote {} and {}", path.display(), mp.display());
            }
            0
        }
        TParam::Root(label, a) => {
            use eqlab_core::bounds::{best_upper_for_classify_algebraic, floor_f_at_algebraic};
            let (lo, hi) = a.interval();
            if a.cmp_rat(&Rat::from_integer((-1).into())) == std::cmp::Ordering::Less
                || a.cmp_rat(&Rat::from_integer(0.into())) == std::cmp::Ordering::Greater
            {
                return usage_error(format!("{label} = {:.6} is outside [-1, 0]", a.to_f64()));
            }
            println!("n = {}", args.n);
            println!("t = {label} ({:.6}), isolated in [{lo}, {hi}]", a.to_f64());
            match floor_f_at_algebraic(args.n, a) {
                Some(fl) => println!("floor_f = {fl}"),
                None => println!("floor_f = undefined"),
            }
            println!(
                "best_upper = {}",
                best_upper_for_classify_algebraic(args.n, a)
            );
            0
        }
    }
}

fn cmd_bound_sweep(args: SweepArgs) -> u8 {
    let lo = match parse_t(&args.from).and_then(|t| {
        t.rational()
            .cloned()
            .ok_or_else(|| "sweep endpoints must be rational".to_string())
    }) {
        Ok(r) => r,
        Err(e) => return usage_error(e),
    };
    let hi = match parse_t(&args.to).and_then(|t| {
        t.rational()
            .cloned()
            .ok_or_else(|| "sweep endpoints must be rational".to_string())
    }) {
        Ok(r) => r,
        Err(e) => return usage_error(e),
    };
    let rows = match bound_sweep(args.n, &lo, &hi, args.steps) {
        Ok(rows) => rows,
        Err(e) => return usage_error(e),
    };
    let mut csv = String::from("n,t,f,floor_f,asymptotic,spectral_cap,best_upper\n");
    for r in &rows {
        let asym = asymptotic_exact(&r.t)
            .map(|a| format!("{:.12}", to_f64(&a)))
            .unwrap_or_default();
        csv.push_str(&format!(
            "{},{:.12},{:.12},{},{},{},{}\n",
            r.n,
            to_f64(&r.t),
            r.f_value,
            r.floor_f,
            asym,
            r.spectral_cap,
            r.best_upper
        ));
    }
    match args.csv {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, &csv) {
                return usage_error(format!("cannot write {}: {e}", path.display()));
            }
            let mp = manifest_path_for(&path);
            let params = vec![
                ("n".to_string(), args.n.to_string()),
                ("from".to_string(), args.from.clone()),
                ("to".to_string(), args.to.clone()),
                ("steps".to_string(), args.steps.to_string()),
            ];
            if let Err(e) = write_manifest("bound-sweep", params, &[&path], &mp) {
                return usage_error(format!("cannot write manifest: {e}"));
            }
            eprintln!("wrote {} ({} rows) and {}", path.display(), rows.len(), mp.display());
        }
        None => print!("{csv}"),
    }
    0
}

fn cmd_certificate(args: CertificateArgs) -> u8 {
    if let Some(count) = args.samples {
        return certificate_samples(args.n, count);
    }
    let t_str = match &args.t {
        Some(t) => t.clone(),
        None => return usage_error("--t is required (or use --samples)"),
    };
    let t = match parse_t(&t_str) {
        Ok(t) => t,
        Err(e) => return usage_error(e),
    };
    let r = match t.rational() {
        Some(r) => r.clone(),
        None => return usage_error("exact certificate verification needs a rational t"),
    };

    if let Some(path) = &args.export_sdpa {
        let sampled = match export_sampled_sdp(args.n, &r, 40, 160, 7) {
            Ok(s) => s,
            Err(e) => return usage_error(e),
        };
        if let Err(e) = sampled.problem.write_dat_s(path) {
            return usage_error(format!("cannot write {}: {e}", path.display()));
        }
        let cert = eqlab_core::certificate::certificate_matrices(args.n, &r)
            .expect("domain already validated");
        let violation = certificate_violation_on_samples(&cert, &sampled);
        println!(
            "exported sampled SDP: {} variables, {} sample points",
            sampled.problem.num_vars(),
            sampled.points.len()
        );
        println!("certificate feasibility on samples: max violation {violation:.3e}");
        let mp = manifest_path_for(path);
        let params = vec![
            ("n".to_string(), args.n.to_string()),
            ("t".to_string(), t_str.clone()),
        ];
        if let Err(e) = write_manifest("certificate-export", params, &[path], &mp) {
            return usage_error(format!("cannot write manifest: {e}"));
        }
        if !args.exact {
            return if violation <= 1e-9 { 0 } else { EXIT_FAIL };
        }
    }

    let report = match verify_certificate(args.n, &r) {
        Ok(rep) => rep,
        Err(e) => return usage_error(e),
    };
    let pf = |b: bool| if b { "PASS" } else { "FAIL" };
    println!("n = {}, t = {}", report.n, report.t);
    println!(
        "identities: singleton {}, pair {}, triple {}",
        pf(report.singleton_is_minus_one),
        pf(report.pair_identity_zero),
        pf(report.triple_identity_matches)
    );
    let names = ["a0_empty", "a0_edge", "a1_edge", "a2_edge"];
    let blocks: Vec<String> = names
        .iter()
        .zip(report.psd_ok.iter().zip(report.psd_ranks.iter()))
        .map(|(name, (&ok, &rank))| format!("{name} {} (rank {rank})", pf(ok)))
        .collect();
    println!("psd blocks: {}", blocks.join(", "));
    println!(
        "objective = {} ({:.6})",
        report.objective,
        to_f64(&report.objective)
    );
    println!("certificate: {}", pf(report.verified));
    if report.verified {
        0
    } else {
        EXIT_FAIL
    }
}

fn certificate_samples(n: u32, count: usize) -> u8 {
    use eqlab_core::ratio::rat;
    // Deterministic low-discrepancy rational points in [-1, 0].
    let mut failures = 0usize;
    for i in 0..count {
        let q = 997i64;
        let p = -(((i as i64) * 613 + 89) % (q + 1));
        let t = rat(p, q);
        match verify_certificate(n, &t) {
            Ok(rep) if rep.verified => {}
            Ok(rep) => {
                failures += 1;
                eprintln!("FAIL at t = {}", rep.t);
            }
            Err(e) => return usage_error(e),
        }
    }
    println!(
        "verified certificate at {} rational points: {}",
        count,
        if failures == 0 { "PASS" } else { "FAIL" }
    );
    if failures == 0 {
        0
    } else {
        EXIT_FAIL
    }
}

fn emit_config(cfg: &UnitConfig, json: Option<&Path>, command: &str, params: Vec<(String, String)>) -> u8 {
    let body = serde_json::to_string_pretty(cfg).expect("config serializes");
    match json {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &body) {
                return usage_error(format!("cannot write {}: {e}", path.display()));
            }
            let mp = manifest_path_for(path);
            if let Err(e) = write_manifest(command, params, &[path], &mp) {
                return usage_error(format!("cannot write manifest: {e}"));
            }
            eprintln!(
                "wrote {} ({} points, dim {}) and {}",
                path.display(),
                cfg.len(),
                cfg.dim,
                mp.display()
            );
        }
        None => println!("{body}"),
    }
    0
}

fn cmd_realize(args: RealizeArgs) -> u8 {
    match args.what {
        RealizeWhat::Simplex(a) => {
            let t = match parse_t(&a.t) {
                Ok(t) => t.to_f64(),
                Err(e) => return usage_error(e),
            };
            match build_simplex(a.k, a.n, t) {
                Ok(cfg) => emit_config(
                    &cfg,
                    a.json.as_deref(),
                    "realize-simplex",
                    vec![
                        ("k".into(), a.k.to_string()),
                        ("n".into(), a.n.to_string()),
                        ("t".into(), a.t.clone()),
                    ],
                ),
                Err(e) => usage_error(e),
            }
        }
        RealizeWhat::Rhombus(a) => {
            let t = match parse_t(&a.t) {
                Ok(t) => t.to_f64(),
                Err(e) => return usage_error(e),
            };
            let apex = match &a.apex_ip {
                Some(s) => match parse_t(s) {
                    Ok(v) => Some(v.to_f64()),
                    Err(e) => return usage_error(e),
                },
                None => None,
            };
            match build_rhombus(a.k, a.n, t, apex) {
                Ok(cfg) => emit_config(
                    &cfg,
                    a.json.as_deref(),
                    "realize-rhombus",
                    vec![
                        ("k".into(), a.k.to_string()),
                        ("n".into(), a.n.to_string()),
                        ("t".into(), a.t.clone()),
                    ],
                ),
                Err(e) => usage_error(e),
            }
        }
        RealizeWhat::Spindle(a) => {
            let t = match parse_t(&a.t) {
                Ok(t) => t.to_f64(),
                Err(e) => return usage_error(e),
            };
            match build_spindle(a.k, a.l, a.n, t) {
                Ok(cfg) => emit_config(
                    &cfg,
                    a.json.as_deref(),
                    "realize-spindle",
                    vec![
                        ("k".into(), a.k.to_string()),
                        ("l".into(), a.l.to_string()),
                        ("n".into(), a.n.to_string()),
                        ("t".into(), a.t.clone()),
                    ],
                ),
                Err(e) => usage_error(e),
            }
        }
        RealizeWhat::DoubleSimplex(a) => match build_double_simplex(a.n) {
            Ok(cfg) => emit_config(
                &cfg,
                a.json.as_deref(),
                "realize-double-simplex",
                vec![("n".into(), a.n.to_string())],
            ),
            Err(e) => usage_error(e),
        },
        RealizeWhat::LarmanRogers(a) => emit_config(
            &larman_rogers(),
            a.json.as_deref(),
            "realize-larman-rogers",
            vec![],
        ),
    }
}

struct CheckInput {
    gram: GramMatrix,
    cfg: Option<UnitConfig>,
    labels: Vec<String>,
}

fn load_check_input(path: &Path) -> Result<CheckInput, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let raw: UnitConfig = serde_json::from_str(&text)
            .map_err(|e| format!("invalid configuration JSON: {e}"))?;
        let cfg = UnitConfig::new(raw.dim, raw.points, raw.labels)
            .map_err(|e| format!("invalid configuration: {e}"))?;
        Ok(CheckInput {
            gram: cfg.gram(),
            labels: cfg.labels.clone(),
            cfg: Some(cfg),
        })
    } else {
        let gram = GramMatrix::from_csv(&text).map_err(|e| format!("invalid Gram CSV: {e}"))?;
        let labels = (0..gram.order()).map(|i| format!("x{i}")).collect();
        Ok(CheckInput {
            gram,
            cfg: None,
            labels,
        })
    }
}

fn cmd_check(args: CheckArgs) -> u8 {
    let input = match load_check_input(&args.file) {
        Ok(i) => i,
        Err(e) => return usage_error(e),
    };
    let t = match parse_t(&args.t) {
        Ok(t) => t.to_f64(),
        Err(e) => return usage_error(e),
    };
    let gram = &input.gram;
    let m = gram.order();
    let pair_name = if t == 0.0 {
        "almost-orthogonal"
    } else {
        "almost-equiangular"
    };

    let rep = match spectral_report(gram, t, SPECTRAL_THRESHOLD) {
        Ok(r) => r,
        Err(e) => return usage_error(e),
    };
    let n = args
        .n
        .or(input.cfg.as_ref().map(|c| c.dim))
        .unwrap_or(rep.rank_u);
    println!("points = {m}, dim = {n}, t = {t}");

    let mut failed = false;
    match almost_equiangular_offender(gram, t, args.tol) {
        None => println!("{pair_name}: PASS"),
        Some([a, b, c]) => {
            failed = true;
            println!(
                "{pair_name}: FAIL (offending triple: {}, {}, {})",
                input.labels[a], input.labels[b], input.labels[c]
            );
        }
    }

    if args.full {
        println!(
            "rank(U) = {} (relative threshold {:.1e})",
            rep.rank_u, rep.threshold
        );
        let ev_min = rep.eigenvalues_u.first().copied().unwrap_or(0.0);
        let ev_max = rep.eigenvalues_u.last().copied().unwrap_or(0.0);
        println!("U eigenvalues in [{ev_min:.9}, {ev_max:.9}]");
        let tb_ok = rep.trace_b.abs() <= 1e-9;
        let tb3_ok = rep.trace_b_cubed.abs() <= 1e-9;
        println!(
            "trace(B) = {:.3e}: {}",
            rep.trace_b,
            if tb_ok { "PASS" } else { "FAIL" }
        );
        println!(
            "trace(B^3) = {:.3e}: {}",
            rep.trace_b_cubed,
            if tb3_ok { "PASS" } else { "FAIL" }
        );
        println!(
            "eigenvector condition (Ue = 0): {} (|Ue| = {:.3e})",
            if rep.e_in_kernel { "PASS" } else { "FAIL" },
            rep.ue_norm
        );
        failed |= !tb_ok || !tb3_ok || !rep.e_in_kernel;

        // 2-design moments need coordinates; embed the Gram matrix if the
        // input was not already a configuration.
        let cfg = match &input.cfg {
            Some(c) => Some(c.clone()),
            None => embed_gram(&gram.m, n, 1e-8).ok().and_then(|pts| {
                let coords: Vec<Vec<f64>> = pts
                    .iter()
                    .map(|p| {
                        let norm = p.norm();
                        p.iter().map(|x| x / norm).collect()
                    })
                    .collect();
                UnitConfig::new_multiset(n, coords, input.labels.clone()).ok()
            }),
        };
        match cfg {
            Some(cfg) => {
                let td = eqlab_core::spectral::two_design_check(&cfg, 1e-8);
                println!(
                    "2-design: {} (first moment {:.3e}, second moment {:.3e})",
                    if td.is_2design { "PASS" } else { "FAIL" },
                    td.first_moment_defect,
                    td.second_moment_defect
                );
                failed |= !td.is_2design;
            }
            None => println!("2-design: SKIPPED (Gram matrix does not embed in dimension {n})"),
        }

        if m == 2 * (n + 1) {
            match to_o_matrix(gram, n) {
                Ok(o) => {
                    let orep = o_matrix_check(&o, 1e-8);
                    let pf = |c: &eqlab_core::spectral::ConditionCheck| {
                        format!("{} {} ({:.3e})", c.name, if c.passed { "PASS" } else { "FAIL" }, c.max_violation)
                    };
                    println!(
                        "o-matrix: {}, {}, {}, {}, {}",
                        pf(&orep.symmetric),
                        pf(&orep.involutive),
                        pf(&orep.fixes_ones),
                        pf(&orep.zero_diagonal),
                        pf(&orep.triple_products)
                    );
                    failed |= !orep.all_passed;
                    if orep.all_passed {
                        match from_o_matrix(&o, n) {
                            Ok((u2, _)) => {
                                let mut dev = 0.0f64;
                                for i in 0..m {
                                    for j in 0..m {
                                        dev = dev.max((u2.get(i, j) - gram.get(i, j)).abs());
                                    }
                                }
                                let ok = dev <= 1e-10;
                                println!(
                                    "o-matrix round trip: {} (error {dev:.3e})",
                                    if ok { "PASS" } else { "FAIL" }
                                );
                                failed |= !ok;
                            }
                            Err(e) => {
                                println!("o-matrix round trip: FAIL ({e})");
                                failed = true;
                            }
                        }
                    }
                }
                Err(e) => println!("o-matrix: SKIPPED ({e})"),
            }
            match distance_graph(gram, t, args.tol) {
                Ok(g) => match maximum_set_graph_checks(&g, n) {
                    Ok(gc) => {
                        let pf = |b: bool| if b { "PASS" } else { "FAIL" };
                        println!(
                            "graph checks: clique {}, complement-quadrangular {}, degrees {}",
                            pf(gc.contains_clique),
                            pf(gc.complement_quadrangular),
                            pf(gc.complement_degrees_in_range)
                        );
                        failed |= !gc.all_passed;
                    }
                    Err(e) => println!("graph checks: SKIPPED ({e})"),
                },
                Err(e) => println!("graph checks: SKIPPED ({e})"),
            }
        }
    }

    println!("verdict: {}", if failed { "FAIL" } else { "PASS" });
    if failed {
        EXIT_FAIL
    } else {
        0
    }
}

fn cmd_classify(args: ClassifyArgs) -> u8 {
    let classification = match classify_with_options(args.n, !args.no_validate) {
        Ok(c) => c,
        Err(e) => return usage_error(e),
    };
    let desc = classification.describe();
    println!(
        "n = {} classification ({} rows, {} fine regions)",
        desc.n,
        desc.figure_rows.len(),
        desc.regions.len()
    );
    for row in &desc.figure_rows {
        let interval = if row.lo.label == row.hi.label {
            format!("{{{}}}", row.lo.label)
        } else {
            let mut s = format!(
                "{}{}, {}{}",
                if row.lo.closed { '[' } else { '(' },
                row.lo.label,
                row.hi.label,
                if row.hi.closed { ']' } else { ')' },
            );
            if !row.excluded.is_empty() {
                let ex: Vec<&str> = row.excluded.iter().map(|e| e.label.as_str()).collect();
                s.push_str(&format!(" \\ {{{}}}", ex.join(", ")));
            }
            s
        };
        let graphs: Vec<&str> = row.optimal.iter().map(|o| o.name.as_str()).collect();
        println!(
            "{interval:-28} alpha = {}  {}  {}",
            row.alpha,
            if row.unique { "unique" } else { "multiple" },
            graphs.join(", ")
        );
    }
    if let Some(dir) = args.out {
        if let Err(e) = std::fs::create_dir_all(&dir) {
            return usage_error(format!("cannot create {}: {e}", dir.display()));
        }
        let json_path = dir.join(format!("classification_n{}.json", args.n));
        let body = serde_json::to_string_pretty(&desc).expect("classification serializes");
        if let Err(e) = std::fs::write(&json_path, body) {
            return usage_error(format!("cannot write {}: {e}", json_path.display()));
        }
        let mut g6: Vec<String> = Vec::new();
        for r in &desc.regions {
            for o in &r.optimal {
                g6.push(o.graph6.clone());
            }
        }
        g6.sort();
        g6.dedup();
        let g6_path = dir.join(format!("optimal_n{}.g6", args.n));
        if let Err(e) = std::fs::write(&g6_path, g6.join("\n") + "\n") {
            return usage_error(format!("cannot write {}: {e}", g6_path.display()));
        }
        let mp = dir.join(format!("classify_n{}.manifest.json", args.n));
        let params = vec![
            ("n".to_string(), args.n.to_string()),
            ("validate".to_string(), (!args.no_validate).to_string()),
        ];
        if let Err(e) = write_manifest("classify", params, &[&json_path, &g6_path], &mp) {
            return usage_error(format!("cannot write manifest: {e}"));
        }
        eprintln!(
            "wrote {}, {}, {}",
            json_path.display(),
            g6_path.display(),
            mp.display()
        );
    }
    0
}

fn cmd_theta(args: ThetaArgs) -> u8 {
    let h = match Hypergraph3::from_file(&args.file) {
        Ok(h) => h,
        Err(e) => return usage_error(e),
    };
    let program = match args.level.as_str() {
        "delta" => build_delta_sdp(&h),
        _ => build_lasserre_sdp(&h),
    };
    let program = match program {
        Ok(p) => p,
        Err(e) => return usage_error(e),
    };
    println!(
        "hypergraph: {} vertices, {} edges; {} program: {} variables, {} constraints",
        h.vertex_count(),
        h.edges().len(),
        args.level,
        program.variables.len(),
        program.problem.num_constraints()
    );
    if !args.solve && args.export.is_none() {
        return usage_error("pass --solve and/or --export PATH");
    }
    if let Some(path) = &args.export {
        let sdpa = program.problem.to_sdpa();
        if let Err(e) = sdpa.write_dat_s(path) {
            return usage_error(format!("cannot write {}: {e}", path.display()));
        }
        let mp = manifest_path_for(path);
        let params = vec![
            ("file".to_string(), args.file.display().to_string()),
            ("level".to_string(), args.level.clone()),
        ];
        if let Err(e) = write_manifest("theta-export", params, &[path], &mp) {
            return usage_error(format!("cannot write manifest: {e}"));
        }
        eprintln!("wrote {} and {}", path.display(), mp.display());
    }
    if args.solve {
        let alpha = match h.alpha_exhaustive() {
            Ok(a) => a,
            Err(e) => return usage_error(e),
        };
        match solve_program(&program, &SolveOptions::default()) {
            Ok((value, sol)) => {
                println!("{} = {:.6}", args.level, value);
                println!("alpha = {alpha}");
                println!("status = {:?}, gap = {:.3e}", sol.status, sol.gap);
                if !matches!(sol.status, SdpStatus::Optimal) {
                    return EXIT_FAIL;
                }
                if value + 1e-6 < alpha as f64 {
                    println!("relaxation below alpha: FAIL");
                    return EXIT_FAIL;
                }
            }
            Err(e) => {
                eprintln!("solver error: {e}");
                return EXIT_FAIL;
            }
        }
    }
    0
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("EQLAB_THREADS") {
        if let Ok(k) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
        }
    }
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Bound(a) => cmd_bound(a),
        Command::BoundSweep(a) => cmd_bound_sweep(a),
        Command::Certificate(a) => cmd_certificate(a),
        Command::Realize(a) => cmd_realize(a),
        Command::Check(a) => cmd_check(a),
        Command::Classify(a) => cmd_classify(a),
        Command::Theta(a) => cmd_theta(a),
    };
    ExitCode::from(code)
}
