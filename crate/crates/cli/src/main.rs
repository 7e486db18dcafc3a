use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use e7spec::rootsys::{catalog, find_subsystem, SubsystemSpec};
use e7spec::spectrum::{
    find_row, nu_coset_entries, order_witness, row_classes, CosetSpec, EtaRecord, QSpec,
};
use e7spec::torus::center_component_group;
use e7spec::verify::verify;
use e7spec::weyl::{
    conjugacy_classes, default_cache_path, init_weyl_group, weyl_group, WeylElement,
};
use e7spec::Error;
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

#[derive(Parser)]
#[command(
    name = "e7spec",
    version,
    about = "Element-order spectra of almost simple groups with socle E7(q)"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Worker threads for the (row, class) map; defaults to all cores.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Weyl group cache file (overrides E7SPEC_WEYL_CACHE).
    #[arg(long, global = true)]
    cache: Option<PathBuf>,

    /// Report wall-clock time.
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(clap::Args, Clone)]
struct QArgs {
    /// Characteristic.
    #[arg(long)]
    p: u64,
    /// q = p^m.
    #[arg(long, default_value_t = 1)]
    m: u32,
}

#[derive(Subcommand)]
enum Command {
    /// The closed-form set for a coset of the socle.
    Nu {
        #[command(flatten)]
        q: QArgs,
        /// 1, delta, phi, phi^k or phi^k-delta.
        #[arg(long, default_value = "1")]
        coset: String,
    },
    /// Brute force over all (subsystem, class) pairs checked against the closed form.
    Verify {
        #[command(flatten)]
        q: QArgs,
    },
    /// Whether some element of the coset has order n.
    OrderCheck {
        #[arg(long)]
        n: BigInt,
        #[command(flatten)]
        q: QArgs,
        #[arg(long, default_value = "1")]
        coset: String,
    },
    /// Torus data and eta for one subsystem; every class unless --class is given.
    Eta {
        #[arg(long)]
        subsystem: String,
        #[arg(long)]
        class: Option<usize>,
        #[command(flatten)]
        q: QArgs,
    },
    /// Order and classes of W(E7), or of N_W(Pi1) for a subsystem.
    WeylInfo {
        #[arg(long)]
        subsystem: Option<String>,
    },
}

enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) | Error::Unsupported(_) => Failure::Usage(e.to_string()),
            _ => Failure::Internal(e.to_string()),
        }
    }
}

/// A finished command: the JSON report, its text rendering, and whether it passed.
struct Report {
    json: Map<String, Value>,
    text: Vec<String>,
    passed: bool,
}

fn big(x: &BigInt) -> Value {
    Value::String(x.to_string())
}

fn bigs(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(big).collect())
}

fn list(xs: &[BigInt]) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

fn qspec(a: &QArgs) -> Result<QSpec, Failure> {
    Ok(QSpec::new(a.p, a.m)?)
}

fn q_inputs(q: &QSpec) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("p".into(), json!(q.p));
    m.insert("m".into(), json!(q.m));
    m.insert("q".into(), big(&q.q));
    m
}

fn report(
    command: &str,
    inputs: Map<String, Value>,
    result: Value,
    text: Vec<String>,
    passed: bool,
) -> Report {
    let mut json = Map::new();
    json.insert("command".into(), json!(command));
    json.insert("inputs".into(), Value::Object(inputs));
    json.insert("result".into(), result);
    Report { json, text, passed }
}

fn cmd_nu(a: &QArgs, coset: &str) -> Result<Report, Failure> {
    let q = qspec(a)?;
    let c = CosetSpec::parse(coset, q.m)?;
    let mut entries = nu_coset_entries(&q, c)?;
    entries.sort_by(|x, y| x.value.cmp(&y.value).then_with(|| x.label.cmp(&y.label)));
    entries.dedup_by(|x, y| x.value == y.value);
    let mut text = vec![format!(
        "nu for coset {c}, q = {} ({} values)",
        q.q,
        entries.len()
    )];
    let width = entries
        .iter()
        .map(|e| e.value.to_string().len())
        .max()
        .unwrap_or(0);
    text.extend(
        entries
            .iter()
            .map(|e| format!("{:>width$}  {}", e.value, e.label)),
    );
    let values: Vec<Value> = entries
        .iter()
        .map(|e| json!({"value": big(&e.value), "formula": e.label}))
        .collect();
    let mut inputs = q_inputs(&q);
    inputs.insert("coset".into(), json!(c.to_string()));
    Ok(report("nu", inputs, Value::Array(values), text, true))
}

fn cmd_order_check(n: &BigInt, a: &QArgs, coset: &str) -> Result<Report, Failure> {
    let q = qspec(a)?;
    let c = CosetSpec::parse(coset, q.m)?;
    if n < &BigInt::from(1) {
        return Err(Failure::Usage(format!("--n must be positive, got {n}")));
    }
    let w = order_witness(n, &q, c)?;
    let text = match &w {
        Some(e) => vec![format!("yes: {n} divides {} = {}", e.value, e.label)],
        None => vec![format!(
            "no: {n} is not an element order in coset {c} for q = {}",
            q.q
        )],
    };
    let result = match &w {
        Some(e) => json!({"exists": true, "witness": {"value": big(&e.value), "formula": e.label}}),
        None => json!({"exists": false, "witness": null}),
    };
    let mut inputs = q_inputs(&q);
    inputs.insert("n".into(), big(n));
    inputs.insert("coset".into(), json!(c.to_string()));
    Ok(report("order-check", inputs, result, text, true))
}

fn cmd_verify(a: &QArgs) -> Result<Report, Failure> {
    let q = qspec(a)?;
    if !q.is_odd() {
        return Err(Failure::Usage(format!(
            "verify needs odd characteristic, got p = {}",
            q.p
        )));
    }
    let r = verify(&q)?;
    let mut text = vec![format!(
        "q = {}: {} (subsystem, class) pairs, {} maximal orders",
        q.q,
        r.records.len(),
        r.brute_mu.len()
    )];
    text.extend(r.checks.iter().map(|c| {
        format!(
            "{} {}: {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        )
    }));
    text.push(format!(
        "result: {}",
        if r.passed() { "PASS" } else { "FAIL" }
    ));
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
        .collect();
    let mu: Vec<BigInt> = r.brute_mu.iter().cloned().collect();
    let result = json!({
        "passed": r.passed(),
        "pairs": r.records.len(),
        "mu": bigs(&mu),
        "checks": checks,
    });
    Ok(report("verify", q_inputs(&q), result, text, r.passed()))
}

fn matrix_lines(w: &WeylElement) -> Vec<String> {
    w.matrix()
        .iter()
        .map(|row| row.iter().map(|x| format!("{x:>3}")).collect::<String>())
        .collect()
}

fn record_json(rec: &EtaRecord, w: &WeylElement) -> Value {
    json!({
        "class": rec.class_index,
        "representative": w.matrix(),
        "factors": bigs(&rec.factors),
        "z": bigs(&rec.z_coords),
        "exponent": big(&rec.exponent),
        "np_factor": big(&rec.np_factor),
        "eta": big(&rec.eta),
    })
}

fn unknown_subsystem(label: &str) -> Failure {
    let labels: Vec<&str> = catalog().iter().map(|s| s.label).collect();
    Failure::Usage(format!(
        "unknown subsystem '{label}'; valid: {}",
        labels.join(" ")
    ))
}

fn cmd_eta(label: &str, class: Option<usize>, a: &QArgs) -> Result<Report, Failure> {
    let q = qspec(a)?;
    if !q.is_odd() {
        return Err(Failure::Usage(format!(
            "eta needs odd characteristic, got p = {}",
            q.p
        )));
    }
    let spec = find_subsystem(label).ok_or_else(|| unknown_subsystem(label))?;
    let row = find_row(spec.label)?;
    let n = row.classes.len();
    let indices: Vec<usize> = match class {
        Some(i) if i >= n => {
            return Err(Failure::Usage(format!(
                "class {i} out of range; {label} has classes 0..={}",
                n - 1
            )))
        }
        Some(i) => vec![i],
        None => (0..n).collect(),
    };
    let mut text = vec![format!("{label}: {n} classes of N_W(Pi1), q = {}", q.q)];
    let mut out = Vec::new();
    for i in indices {
        let w = row.classes[i].representative;
        let mut rec = e7spec::spectrum::eta(spec, &w, &q)?;
        rec.class_index = Some(i);
        text.push(format!("class {i} (size {})", row.classes[i].size));
        text.extend(matrix_lines(&w).into_iter().map(|l| format!("  {l}")));
        text.push(format!("  H_w factors: [{}]", list(&rec.factors)));
        text.push(format!("  z: [{}]", list(&rec.z_coords)));
        text.push(format!("  exponent mod z: {}", rec.exponent));
        text.push(format!("  n_p factor: {}", rec.np_factor));
        text.push(format!("  eta: {}", rec.eta));
        out.push(record_json(&rec, &w));
    }
    let mut inputs = q_inputs(&q);
    inputs.insert("subsystem".into(), json!(label));
    inputs.insert("class".into(), json!(class));
    Ok(report("eta", inputs, Value::Array(out), text, true))
}

fn subsystem_info(spec: &SubsystemSpec) -> Result<(Value, Vec<String>), Failure> {
    let row = find_row(spec.label)?;
    let comp = center_component_group(spec);
    let roots: Vec<String> = spec.pi1.iter().map(ToString::to_string).collect();
    let sizes: Vec<usize> = row.classes.iter().map(|c| c.size).collect();
    let text = vec![
        format!("subsystem {} (type {})", spec.label, spec.cartan_type),
        format!(
            "Pi1: {}",
            if roots.is_empty() {
                "-".to_string()
            } else {
                roots.join(" ")
            }
        ),
        format!("|N_W(Pi1)| = {}", row.normalizer.len()),
        format!("classes: {}", row.classes.len()),
        format!("class sizes: {sizes:?}"),
        format!("center component group: [{}]", list(&comp.factors)),
        format!("max height: {}", spec.mh),
    ];
    let v = json!({
        "label": spec.label,
        "type": spec.cartan_type.to_string(),
        "pi1": roots,
        "normalizer_order": row.normalizer.len(),
        "classes": row.classes.len(),
        "class_sizes": sizes,
        "component_group": bigs(&comp.factors),
        "max_height": spec.mh,
    });
    Ok((v, text))
}

fn cmd_weyl_info(label: Option<&str>) -> Result<Report, Failure> {
    let mut inputs = Map::new();
    inputs.insert("subsystem".into(), json!(label));
    if let Some(label) = label {
        let spec = find_subsystem(label).ok_or_else(|| unknown_subsystem(label))?;
        let (v, text) = subsystem_info(spec)?;
        return Ok(report("weyl-info", inputs, v, text, true));
    }
    let w = weyl_group();
    let classes = conjugacy_classes(w.handle())?;
    let rows = row_classes()?;
    let mut text = vec![
        format!("|W(E7)| = {}", w.elements().len()),
        format!("conjugacy classes: {}", classes.len()),
        format!(
            "-1 in W: {}",
            w.handle().contains(&WeylElement::minus_identity())
        ),
    ];
    let mut per_row = Vec::new();
    for r in rows {
        text.push(format!(
            "{:<10} |N_W(Pi1)| = {:>7}  classes = {:>2}",
            r.spec.label,
            r.normalizer.len(),
            r.classes.len()
        ));
        per_row.push(json!({"label": r.spec.label, "normalizer_order": r.normalizer.len(), "classes": r.classes.len()}));
    }
    let v = json!({
        "order": w.elements().len(),
        "classes": classes.len(),
        "minus_identity": w.handle().contains(&WeylElement::minus_identity()),
        "rows": per_row,
    });
    Ok(report("weyl-info", inputs, v, text, true))
}

fn needs_weyl(c: &Command) -> bool {
    matches!(
        c,
        Command::Verify { .. } | Command::Eta { .. } | Command::WeylInfo { .. }
    )
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    if needs_weyl(&cli.command) {
        let path = cli.cache.clone().or_else(default_cache_path);
        init_weyl_group(path.as_deref());
    }
    match &cli.command {
        Command::Nu { q, coset } => cmd_nu(q, coset),
        Command::Verify { q } => cmd_verify(q),
        Command::OrderCheck { n, q, coset } => cmd_order_check(n, q, coset),
        Command::Eta {
            subsystem,
            class,
            q,
        } => cmd_eta(subsystem, *class, q),
        Command::WeylInfo { subsystem } => cmd_weyl_info(subsystem.as_deref()),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if n == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .expect("thread pool already built");
    }
    let start = Instant::now();
    match run(&cli) {
        Ok(mut r) => {
            let ms = start.elapsed().as_millis();
            let mut out = std::io::stdout().lock();
            match cli.format {
                Format::Json => {
                    if cli.timing {
                        r.json.insert("timing_ms".into(), json!(ms));
                    }
                    let body =
                        serde_json::to_string_pretty(&Value::Object(r.json)).expect("serializable");
                    let _ = writeln!(out, "{body}");
                }
                Format::Text => {
                    for l in &r.text {
                        if writeln!(out, "{l}").is_err() {
                            break;
                        }
                    }
                    if cli.timing {
                        let _ = writeln!(out, "time: {ms} ms");
                    }
                }
            }
            if r.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
