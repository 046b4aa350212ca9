use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use ribbon_gate::abelian::{cokernel, smith_normal_form, IntMatrix};
use ribbon_gate::cobordism::{exponent_matrix, extend_representation_with, RibbonHandleData};
use ribbon_gate::geometry::{
    edge_status, hierarchy_reachable, lspace_from_geometry, render_reachability_matrix,
    GeometryClass, CLOSED_CLASSES,
};
use ribbon_gate::group::GroupPresentation;
use ribbon_gate::groupcoh::{fox_matrix_with, zariski_chain_check};
use ribbon_gate::obstruct::{evaluate_with, EvaluateOptions, ManifoldDescription};
use ribbon_gate::repvar::{
    casson_via_count, enumerate_rotation_data_with, synthesize_witness_with, tangent_dimension,
};
use ribbon_gate::seifert::{montesinos_double_cover, MontesinosKnot, SeifertPresentation};
use ribbon_gate::{Error, Representation, Tolerances};

/// Obstructions to ribbon rational-homology cobordisms.
#[derive(Parser, Debug)]
#[command(name = "ribbon-gate", version)]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized restarts.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Relator residual accepted for representations and witnesses.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// Synthesize and report explicit representations.
    #[arg(long, global = true)]
    witnesses: bool,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate every obstruction criterion for Y- -> Y+.
    Obstruct {
        ym: String,
        yp: String,
        /// Read definiteness signs off Seifert homology spheres.
        #[arg(long)]
        seifert_definiteness: bool,
    },
    /// Count irreducible classes and |lambda| of a 3-fiber Seifert sphere.
    Casson {
        /// Fiber orders, or one Seifert JSON file.
        #[arg(required = true, allow_negative_numbers = true)]
        spec: Vec<String>,
    },
    /// Enumerate rotation data of a Seifert homology sphere.
    Repvar {
        #[arg(required = true, allow_negative_numbers = true)]
        spec: Vec<String>,
    },
    /// Cohomology dimensions at a representation; with three inputs
    /// (Y-, W, Y+) also check the tangent-space chain.
    Zariski {
        #[arg(required = true, num_args = 1..=3)]
        inputs: Vec<String>,
    },
    /// Smith normal form and cokernel of an integer matrix.
    Snf {
        /// JSON file or inline JSON such as `[[1,2],[3,4]]`.
        matrix: String,
    },
    /// Reachability in the geometry hierarchy; exits 3 if `to` is unreachable.
    Geometry { from: Option<String>, to: Option<String> },
    /// Double branched cover of a Montesinos knot.
    Montesinos { knot: String },
    /// Extend a representation over a ribbon handle attachment.
    Extend {
        handles: String,
        representation: String,
        #[arg(long, default_value_t = 64)]
        restarts: usize,
    },
}

enum Failure {
    Usage(String),
    Computation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) => Failure::Usage(e.to_string()),
            _ => Failure::Computation(e.to_string()),
        }
    }
}

type Outcome = Result<(String, bool), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let run = || run(&cli);
    let result = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            Ok(pool) => pool.install(run),
            Err(e) => Err(Failure::Usage(e.to_string())),
        },
        None => run(),
    };
    match result {
        Ok((out, obstructed)) => {
            print!("{out}");
            if obstructed {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Computation(m)) => {
            eprintln!("computation failed: {m}");
            ExitCode::from(2)
        }
    }
}

fn tolerances(cli: &Cli) -> Tolerances {
    let mut t = Tolerances::default();
    if let Some(x) = cli.tolerance {
        t.representation = x;
        t.witness_residual = x;
    }
    t
}

fn read_json(arg: &str) -> Result<Value, Failure> {
    let text = if arg.trim_start().starts_with(['[', '{']) {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| Failure::Usage(format!("{arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{arg}: {e}")))
}

fn emit(cli: &Cli, v: &Value, text: String) -> String {
    if cli.json {
        format!("{}\n", serde_json::to_string_pretty(v).expect("json"))
    } else {
        text
    }
}

/// Fiber orders on the command line, or a Seifert JSON file.
fn seifert_arg(spec: &[String]) -> Result<SeifertPresentation, Failure> {
    let orders: Option<Vec<i64>> = spec.iter().map(|s| s.parse().ok()).collect();
    match orders {
        Some(o) => Ok(SeifertPresentation::brieskorn(&o)?),
        None if spec.len() == 1 => Ok(SeifertPresentation::from_json(&read_json(&spec[0])?)?),
        None => Err(Failure::Usage("expected fiber orders or one JSON file".into())),
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Obstruct {
            ym,
            yp,
            seifert_definiteness,
        } => obstruct(cli, ym, yp, *seifert_definiteness),
        Command::Casson { spec } => casson(cli, spec),
        Command::Repvar { spec } => repvar(cli, spec),
        Command::Zariski { inputs } => zariski(cli, inputs),
        Command::Snf { matrix } => snf(cli, matrix),
        Command::Geometry { from, to } => geometry(cli, from.as_deref(), to.as_deref()),
        Command::Montesinos { knot } => montesinos(cli, knot),
        Command::Extend {
            handles,
            representation,
            restarts,
        } => extend(cli, handles, representation, *restarts),
    }
}

fn obstruct(cli: &Cli, ym: &str, yp: &str, seifert_definiteness: bool) -> Outcome {
    let ym = ManifoldDescription::from_json(&read_json(ym)?)?;
    let yp = ManifoldDescription::from_json(&read_json(yp)?)?;
    let opts = EvaluateOptions {
        tolerances: tolerances(cli),
        seifert_definiteness,
    };
    let report = evaluate_with(&ym, &yp, &opts);
    Ok((
        emit(cli, &report.to_json(), report.to_string()),
        report.is_obstructed(),
    ))
}

fn casson(cli: &Cli, spec: &[String]) -> Outcome {
    let s = seifert_arg(spec)?;
    let tol = tolerances(cli);
    let (count, lambda) = casson_via_count(&s)?;
    let mut v = json!({
        "seifert": s.to_json(),
        "count": count,
        "abs_lambda": lambda.to_string(),
    });
    let mut text = format!("{s}\ncount={count} |lambda|={lambda}\n");
    if cli.witnesses {
        let (ws, t) = witnesses(&s, &tol)?;
        v["witnesses"] = ws;
        text.push_str(&t);
    }
    Ok((emit(cli, &v, text), false))
}

fn repvar(cli: &Cli, spec: &[String]) -> Outcome {
    let s = seifert_arg(spec)?;
    let tol = tolerances(cli);
    let data = enumerate_rotation_data_with(&s, &tol)?;
    let mut text = format!("{s}\n{} components\n", data.len());
    let mut rows = Vec::new();
    for r in &data {
        let dim = tangent_dimension(r)?;
        let ells: Vec<String> = r.ells.iter().map(i64::to_string).collect();
        text.push_str(&format!(
            "eps={:+} ells=({}) t={} dim={dim}\n",
            r.eps,
            ells.join(","),
            r.t
        ));
        let mut row = r.to_json();
        row["t"] = json!(r.t);
        row["dimension"] = json!(dim);
        rows.push(row);
    }
    let mut v = json!({"seifert": s.to_json(), "components": rows});
    if cli.witnesses {
        let (ws, t) = witnesses(&s, &tol)?;
        v["witnesses"] = ws;
        text.push_str(&t);
    }
    Ok((emit(cli, &v, text), false))
}

/// Witnesses for every component with their cohomology.
fn witnesses(s: &SeifertPresentation, tol: &Tolerances) -> Result<(Value, String), Failure> {
    let p = s.fundamental_group();
    let mut out = Vec::new();
    let mut text = String::new();
    for r in enumerate_rotation_data_with(s, tol)? {
        let w = synthesize_witness_with(s, &r, tol)?;
        let c = fox_matrix_with(&p, &w.representation, tol)?;
        let mut v = w.to_json(&p);
        v["h0"] = json!(c.h0);
        v["h1"] = json!(c.h1);
        text.push_str(&format!(
            "  {:?} residual={:.3e} h0={} h1={}\n",
            r.ells, w.residual, c.h0, c.h1
        ));
        out.push(v);
    }
    Ok((Value::Array(out), text))
}

/// `{"presentation": {...}, "representation": {...}}`.
fn zariski_input(arg: &str, tol: &Tolerances) -> Result<(usize, usize, usize, f64), Failure> {
    let v = read_json(arg)?;
    let p = GroupPresentation::from_json(
        v.get("presentation")
            .ok_or_else(|| Failure::Usage(format!("{arg}: missing \"presentation\"")))?,
    )?;
    let rho = Representation::from_json(
        &p,
        v.get("representation")
            .ok_or_else(|| Failure::Usage(format!("{arg}: missing \"representation\"")))?,
    )?;
    let c = fox_matrix_with(&p, &rho, tol)?;
    Ok((c.h0, c.h1, c.omega(), c.complex_defect()))
}

fn zariski(cli: &Cli, inputs: &[String]) -> Outcome {
    let tol = tolerances(cli);
    let dims = inputs
        .iter()
        .map(|a| zariski_input(a, &tol))
        .collect::<Result<Vec<_>, _>>()?;
    let labels: &[&str] = if dims.len() == 3 { &["Y-", "W", "Y+"] } else { &["", "", ""] };
    let mut text = String::new();
    let mut rows = Vec::new();
    for ((h0, h1, omega, defect), label) in dims.iter().zip(labels) {
        let prefix = if label.is_empty() { String::new() } else { format!("{label}: ") };
        text.push_str(&format!("{prefix}h0={h0} h1={h1} omega={omega}\n"));
        rows.push(json!({"h0": h0, "h1": h1, "omega": omega, "defect": defect}));
    }
    let mut v = json!({ "dimensions": rows });
    match dims.len() {
        3 => {
            let report = zariski_chain_check(
                (dims[0].0, dims[0].1),
                (dims[1].0, dims[1].1),
                (dims[2].0, dims[2].1),
            );
            text.push_str(&format!(
                "h0 equal: {}\nh1 chain holds: {}\n",
                report.hypothesis_holds, report.inequality_holds
            ));
            v["chain"] = serde_json::to_value(report).expect("report");
            if report.status == ribbon_gate::groupcoh::ChainStatus::Inconsistent {
                return Err(Failure::Computation(
                    "tangent dimensions violate the chain inequality".into(),
                ));
            }
        }
        1 => {}
        _ => return Err(Failure::Usage("zariski takes one or three inputs".into())),
    }
    Ok((emit(cli, &v, text), false))
}

fn snf(cli: &Cli, matrix: &str) -> Outcome {
    let a = IntMatrix::from_json_value(&read_json(matrix)?).map_err(Failure::Usage)?;
    let d = smith_normal_form(&a);
    let diag: Vec<String> = d.diagonal().iter().map(BigInt::to_string).collect();
    let g = cokernel(&a);
    let v = json!({
        "u": d.u,
        "s": d.s,
        "v": d.v,
        "cokernel": g,
    });
    let text = format!("diag({})\ncokernel {g}\n", diag.join(", "));
    Ok((emit(cli, &v, text), false))
}

fn parse_class(s: &str) -> Result<GeometryClass, Failure> {
    s.parse().map_err(Failure::from)
}

fn geometry(cli: &Cli, from: Option<&str>, to: Option<&str>) -> Outcome {
    match (from, to) {
        (None, None) => {
            let names: Vec<&str> = CLOSED_CLASSES.iter().map(|g| g.name()).collect();
            let matrix = ribbon_gate::geometry::closed_reachability_matrix();
            let v = json!({"classes": names, "reachable": matrix});
            Ok((emit(cli, &v, render_reachability_matrix()), false))
        }
        (Some(a), Some(b)) => {
            let (a, b) = (parse_class(a)?, parse_class(b)?);
            let reachable = hierarchy_reachable(a, b)?;
            let status = edge_status(a, b)?;
            let v = json!({
                "from": a.name(),
                "to": b.name(),
                "reachable": reachable,
                "status": status,
                "lspace_from": lspace_from_geometry(a),
                "lspace_to": lspace_from_geometry(b),
            });
            let text = format!("{a} -> {b}: reachable={reachable} status={status:?}\n");
            Ok((emit(cli, &v, text), !reachable))
        }
        _ => Err(Failure::Usage("geometry takes zero or two classes".into())),
    }
}

fn montesinos(cli: &Cli, knot: &str) -> Outcome {
    let k = MontesinosKnot::from_json(&read_json(knot)?)?;
    let cover = montesinos_double_cover(&k);
    let h1 = cover.first_homology();
    let sphere = cover.is_homology_sphere();
    let n = cover.exceptional_fiber_count();
    let mut v = json!({
        "knot": k.to_json(),
        "double_cover": cover.to_json(),
        "h1": h1,
        "homology_sphere": sphere,
        "exceptional_fibers": n,
    });
    let mut text = format!("double cover {cover}\nH1 = {h1}\nexceptional fibers: {n}\n");
    if sphere {
        let g = cover.geometry_class()?;
        v["geometry"] = json!(g.name());
        text.push_str(&format!("geometry: {g}\n"));
    }
    Ok((emit(cli, &v, text), false))
}

fn extend(cli: &Cli, handles: &str, rep: &str, restarts: usize) -> Outcome {
    let h = RibbonHandleData::from_json(&read_json(handles)?)?;
    let rho = Representation::from_json(&h.base, &read_json(rep)?)?;
    let b = exponent_matrix(&h);
    let tol = tolerances(cli);
    let mut v = json!({"b": b.b, "det": b.det.to_string()});
    let mut text = format!("det B = {}\n", b.det);
    if b.det == BigInt::from(0) {
        v["rational_homology_cobordism"] = json!(false);
        text.push_str("not a rational homology cobordism\n");
        return Ok((emit(cli, &v, text), false));
    }
    v["rational_homology_cobordism"] = json!(true);
    let ext = extend_representation_with(&h, &rho, restarts, cli.seed, &tol)?;
    let w = h.cobordism_presentation()?;
    v["extension"] = ext.to_json(&w);
    text.push_str(&format!("extension residual {:.3e}\n", ext.residual()));
    for (name, q) in w.generators().iter().zip(ext.images()).skip(h.base.num_generators()) {
        text.push_str(&format!("  {name} = [{:.12}, {:.12}, {:.12}, {:.12}]\n", q.w, q.x, q.y, q.z));
    }
    Ok((emit(cli, &v, text), false))
}
