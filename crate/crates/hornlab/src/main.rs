//! Command-line entry point. One binary, one `--cmd` selector, deterministic
//! reports on stdout (or `--output`), timing on stderr, exit codes:
//! 0 pass, 1 check failure, 2 usage/parse error, 3 numeric-domain error.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use clap::Parser;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hornlab::horncheck::{
    octahedron_check, rhombus_check, tetrahedron_check, trace_check, RhombusScope,
};
use hornlab::io;
use hornlab::minors::{
    cauchy_binet_expansion, geometric_octahedron_residual, multi_corner_minor, random_invertible,
    random_unipotent, u_action,
};
use hornlab::multipath::{m_map, simplex_points, tropical_singular_values, DEFAULT_STATE_CAP};
use hornlab::network::{standard_network, standard_weighting};
use hornlab::report::{Report, Table};
use hornlab::scaling::{
    concentration_experiment, convergence_experiment, fit_log_slope, genericity_filter, median,
    AngleAssignment,
};
use hornlab::trop::Trop;
use hornlab::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "hornlab", version, about = "tropical Horn data of planar networks")]
struct Cli {
    /// Command: m_map | check | reconstruct | minors | scaling
    #[arg(long)]
    cmd: String,
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Comma-separated list of scaling parameters, e.g. "5,10,20".
    #[arg(long)]
    s: Option<String>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    delta: Option<f64>,
    /// Cap on enumeration states (alternatively HORNLAB_MAX_STATES).
    #[arg(long)]
    cap: Option<u64>,
    /// Rhombus scope: faces | all
    #[arg(long)]
    scope: Option<String>,
}

fn state_cap(cli: &Cli) -> u64 {
    if let Some(c) = cli.cap {
        return c;
    }
    if let Ok(env) = std::env::var("HORNLAB_MAX_STATES") {
        if let Ok(v) = env.parse() {
            return v;
        }
    }
    DEFAULT_STATE_CAP
}

fn read_input(cli: &Cli) -> Result<String> {
    let path = cli
        .input
        .as_ref()
        .ok_or_else(|| Error::Parse("--input is required for this command".into()))?;
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn trop_row_string(row: &[Trop]) -> String {
    let parts: Vec<String> = row.iter().map(|t| t.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn cmd_m_map(cli: &Cli, report: &mut Report) -> Result<()> {
    let cap = state_cap(cli);
    let parsed = io::parse_networks(&read_input(cli)?)?;
    let ws: Vec<_> = parsed.iter().map(|(w, _)| w.clone()).collect();
    report.config("factors", ws.len());
    report.config("rank", ws[0].net.rank());
    if ws.len() == 1 {
        let lambda = tropical_singular_values(&ws[0], cap)?;
        let mut t = Table::new(&["i", "lambda_i"]);
        for (i, v) in lambda.iter().enumerate() {
            t.push(vec![(i + 1).to_string(), v.to_string()]);
        }
        report.table("tropical_singular_values", t);
        report.verdict("computed", true, trop_row_string(&lambda));
        return Ok(());
    }
    let m = m_map(&ws, cap)?;
    let mut t = Table::new(&["alpha", "m"]);
    for (alpha, v) in m.values() {
        t.push(vec![format!("{alpha:?}"), v.to_string()]);
    }
    report.table("m_values", t);
    if ws.len() == 3 {
        let rows = hornlab::scaling::horn_trop(&ws, cap)?;
        let mut t = Table::new(&["product", "partial_sums"]);
        for (name, row) in ["A", "B", "C", "AB", "BC", "ABC"].iter().zip(&rows) {
            t.push(vec![name.to_string(), trop_row_string(row)]);
        }
        report.table("edge_rows", t);
        // consecutive differences of the BC row are its singular values
        let bc = &rows[4];
        let mut lambda = vec![bc[0].clone()];
        for i in 1..bc.len() {
            lambda.push(bc[i].sub(&bc[i - 1]).unwrap_or(Trop::NegInf));
        }
        report.verdict("lambda_bc", true, trop_row_string(&lambda));
    }
    let json = io::mfunction_to_string(&m);
    if let Some(out) = &cli.output {
        let path = out.with_extension("m.json");
        std::fs::write(&path, &json)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        report.note(format!("m-function written to {}", path.display()));
    } else {
        report.note(json);
    }
    Ok(())
}

fn cmd_check(cli: &Cli, report: &mut Report) -> Result<()> {
    let m = io::parse_mfunction(&read_input(cli)?)?;
    report.config("n", m.n);
    report.config("k", m.k);
    let scope = match cli.scope.as_deref() {
        Some("faces") => RhombusScope::FacesOnly,
        Some("all") | None => {
            if m.k == 3 {
                RhombusScope::AllPlane
            } else {
                RhombusScope::FacesOnly
            }
        }
        Some(other) => return Err(Error::Parse(format!("unknown scope {other}"))),
    };
    let rh = rhombus_check(&m, scope)?;
    report.verdict(
        "rhombus",
        rh.is_empty(),
        if rh.is_empty() {
            "no violations".to_string()
        } else {
            format!("{} violations, first: {:?}", rh.len(), rh[0].vertices())
        },
    );
    if m.k == 3 {
        let te = tetrahedron_check(&m)?;
        report.verdict(
            "tetrahedron",
            te.is_empty(),
            if te.is_empty() {
                "no violations".to_string()
            } else {
                format!("{} violations, first base: {:?}", te.len(), te[0])
            },
        );
        let oc = octahedron_check(&m)?;
        report.verdict(
            "octahedron",
            oc.is_empty(),
            if oc.is_empty() {
                "no violations".to_string()
            } else {
                format!("{} violations, first base: {:?}", oc.len(), oc[0])
            },
        );
        if m.is_finite() {
            let n = m.n;
            let g = |i: usize, j: usize, k: usize| m.get(&[i, j, k]).clone();
            let mut rows: [Vec<Trop>; 6] = Default::default();
            for j in 1..=n {
                rows[0].push(g(j, 0, 0));
                rows[1].push(g(n - j, j, 0).sub(&g(n, 0, 0))?);
                rows[2].push(g(0, n - j, j).sub(&g(0, n, 0))?);
                rows[3].push(g(0, j, 0));
                rows[4].push(g(n - j, 0, j).sub(&g(n, 0, 0))?);
                rows[5].push(g(0, 0, j));
            }
            let ok = trace_check(&rows)?;
            report.verdict("trace", ok, if ok { "equalities hold" } else { "violated" });
        }
    }
    Ok(())
}

fn cmd_reconstruct(cli: &Cli, report: &mut Report) -> Result<()> {
    let x = io::parse_two_face(&read_input(cli)?)?;
    report.config("n", x.n);
    let (triple, m) = hornlab::reconstruct::reconstruct_from_boundary(&x)?;
    let mut t = Table::new(&["factor", "essential_values"]);
    let labels = hornlab::network::essential_labels(x.n);
    let describe = |w: &hornlab::network::Weighting<Trop>| -> String {
        labels
            .iter()
            .map(|&(l, i)| format!("a[{l},{i}]={}", w.essential(l, i).unwrap()))
            .collect::<Vec<_>>()
            .join(" ")
    };
    t.push(vec!["a".into(), describe(&triple.a)]);
    t.push(vec!["b".into(), describe(&triple.b)]);
    t.push(vec![
        "c".into(),
        triple
            .c
            .iter()
            .enumerate()
            .map(|(j, v)| format!("c[{}]={v}", j + 1))
            .collect::<Vec<_>>()
            .join(" "),
    ]);
    report.table("weight_triple", t);
    report.verdict("reconstructed", true, "factors are Gelfand-Zeitlin; m matches on both faces");
    let json = io::mfunction_to_string(&m);
    if let Some(out) = &cli.output {
        let path = out.with_extension("m.json");
        std::fs::write(&path, &json)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        report.note(format!("full m-function written to {}", path.display()));
    }
    Ok(())
}

fn cmd_minors(cli: &Cli, report: &mut Report) -> Result<()> {
    let n = cli.n.unwrap_or(3);
    let trials = cli.trials.unwrap_or(100);
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    report.config("n", n);
    report.config("trials", trials);
    report.config("seed", cli.seed);
    let mut residual_ok = 0usize;
    let mut expansion_ok = 0usize;
    let mut invariance_ok = 0usize;
    for _ in 0..trials {
        let gs: Vec<_> = (0..3).map(|_| random_invertible(n, &mut rng)).collect();
        let mut all_zero = true;
        for i in 0..=n {
            for j in 0..=n - i {
                for k in 0..=n - i - j {
                    if !num_traits::Zero::is_zero(
                        &geometric_octahedron_residual(&gs, i, j, k)?,
                    ) {
                        all_zero = false;
                    }
                }
            }
        }
        if all_zero {
            residual_ok += 1;
        }
        let mut expansion_all = true;
        for alpha in simplex_points(n, 3) {
            if multi_corner_minor(&gs, &alpha)? != cauchy_binet_expansion(&gs, &alpha)? {
                expansion_all = false;
            }
        }
        if expansion_all {
            expansion_ok += 1;
        }
        let us: Vec<_> = (0..4).map(|_| random_unipotent(n, &mut rng)).collect();
        let moved = u_action(&us, &gs)?;
        let mut invariant = true;
        for alpha in simplex_points(n, 3) {
            if multi_corner_minor(&gs, &alpha)? != multi_corner_minor(&moved, &alpha)? {
                invariant = false;
            }
        }
        if invariant {
            invariance_ok += 1;
        }
    }
    report.note(format!("octahedron residual: {residual_ok}/{trials} exactly zero"));
    report.verdict("octahedron_residual", residual_ok == trials, format!("{residual_ok}/{trials}"));
    report.verdict("cauchy_binet", expansion_ok == trials, format!("{expansion_ok}/{trials}"));
    report.verdict("unipotent_invariance", invariance_ok == trials, format!("{invariance_ok}/{trials}"));
    Ok(())
}

fn parse_s_list(cli: &Cli, default: &[f64]) -> Result<Vec<f64>> {
    match &cli.s {
        None => Ok(default.to_vec()),
        Some(text) => text
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::Parse(format!("bad s value {part:?}")))
            })
            .collect(),
    }
}

fn cmd_scaling(cli: &Cli, report: &mut Report) -> Result<()> {
    let cap = state_cap(cli);
    let s_list = parse_s_list(cli, &[5.0, 10.0, 20.0])?;
    let trials = cli.trials.unwrap_or(200);
    let delta = cli.delta.unwrap_or(0.5);
    report.config("seed", cli.seed);
    report.config("trials", trials);
    report.config("delta", delta);
    report.config("s", format!("{s_list:?}"));

    // Closed-form rank-2 instance: essential values (1, 0, 0).
    let net = std::sync::Arc::new(standard_network(2)?);
    let w = standard_weighting(&net, &[Trop::from_int(1), Trop::from_int(0), Trop::from_int(0)])?;
    let phi = AngleAssignment::ones(&net);
    let table = convergence_experiment(&w, &phi, &s_list)?;
    let mut t = Table::new(&["s", "error", "closed_form"]);
    let mut closed_ok = true;
    for &(s, err) in &table {
        let closed = 2f64.ln() / (2.0 * s);
        if (err - closed).abs() > 1e-4 {
            closed_ok = false;
        }
        t.push(vec![format!("{s}"), format!("{err:.10e}"), format!("{closed:.10e}")]);
    }
    report.table("convergence_closed_form", t);
    report.verdict("closed_form_rate", closed_ok, "|error − log(2)/(2s)| ≤ 1e-4");

    // Generic filtered weightings: log-error slopes.
    let delta_rat = BigRational::new(
        BigInt::from((delta * 1000.0).round() as i64),
        BigInt::from(1000),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let mut slopes = Vec::new();
    let mut t = Table::new(&["sample", "slope"]);
    let generic_count = 10usize;
    while slopes.len() < generic_count {
        let vals: Vec<Trop> = (0..3)
            .map(|_| Trop::from_f64((rng.gen_range(-300..=300) as f64) / 100.0).unwrap())
            .collect();
        let cand = standard_weighting(&net, &vals)?;
        if !genericity_filter(std::slice::from_ref(&cand), &delta_rat, cap)? {
            continue;
        }
        let phi = AngleAssignment::random_slants(&net, &mut rng);
        let table = convergence_experiment(&cand, &phi, &s_list)?;
        let slope = fit_log_slope(&table);
        t.push(vec![slopes.len().to_string(), format!("{slope:.6}")]);
        slopes.push(slope);
    }
    report.table("convergence_generic_slopes", t);
    let slope_bound = -delta * 0.8;
    let slopes_ok = slopes.iter().all(|&s| s <= slope_bound);
    report.verdict(
        "generic_slopes",
        slopes_ok,
        format!("all fitted slopes ≤ {slope_bound}"),
    );

    // Concentration proxy: rank 2, exponents (1, −1).
    let conc_s = if cli.s.is_some() { s_list.clone() } else { vec![2.0, 5.0, 10.0] };
    let lambda = [1.0, -1.0];
    let mut t = Table::new(&["s", "median_distance", "q90"]);
    let mut medians = Vec::new();
    for &s in &conc_s {
        let d = concentration_experiment(&lambda, &lambda, &lambda, s, trials, cli.seed, 12)?;
        let med = median(&d);
        let mut sorted = d.clone();
        sorted.sort_by(f64::total_cmp);
        let q90 = sorted[(sorted.len() * 9 / 10).min(sorted.len() - 1)];
        t.push(vec![format!("{s}"), format!("{med:.6e}"), format!("{q90:.6e}")]);
        medians.push(med);
    }
    report.table("concentration", t);
    let decreasing = medians.windows(2).all(|w| w[1] < w[0]);
    report.verdict(
        "concentration_medians_decreasing",
        decreasing,
        format!("{medians:.6?}"),
    );

    if let Some(out) = &cli.output {
        for (name, table) in &report.tables {
            let path = out.with_extension(format!("{name}.csv"));
            std::fs::write(&path, table.to_csv())
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<Report> {
    let mut report = Report::new(&cli.cmd);
    report.config("seed", cli.seed);
    match cli.cmd.as_str() {
        "m_map" => cmd_m_map(cli, &mut report)?,
        "check" => cmd_check(cli, &mut report)?,
        "reconstruct" => cmd_reconstruct(cli, &mut report)?,
        "minors" => cmd_minors(cli, &mut report)?,
        "scaling" => cmd_scaling(cli, &mut report)?,
        other => return Err(Error::Parse(format!("unknown command {other:?}"))),
    }
    Ok(report)
}

fn main() {
    let started = Instant::now();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let text = report.to_json();
            if let Some(out) = &cli.output {
                if let Err(e) = std::fs::write(out, &text) {
                    eprintln!("error writing {}: {e}", out.display());
                    std::process::exit(2);
                }
            }
            println!("{text}");
            eprintln!("elapsed: {:?}", started.elapsed());
            std::process::exit(if report.all_pass() { 0 } else { 1 });
        }
        Err(e) => {
            eprintln!("error: {e}");
            let _ = BTreeMap::<String, String>::new();
            std::process::exit(e.exit_code());
        }
    }
}
