//! Command-line front end. Reports are JSON (schema 1) by default, with a
//! plain-text rendering on request. Exit codes: 0 success, 1 error,
//! 2 when some answer is an undetermined extension.

pub mod args;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::abgrp::FgAbelian;
use crate::components::{p_components_graph, stable_end_decomposition, Target};
use crate::exactlin::{smith_normal_form, Fq, ZMatrix};
use crate::groups::{mono_from_generator_images, Group};
use crate::modrep::{
    composition_matches_tensor, evaluation_is_stably_nonzero, is_endotrivial, restrict, stable_hom,
    strip_projectives, tate_h0, trivial_module, ModuleRecipe,
};
use crate::picard::{field_name, t_group, verify, VerificationReport};
use crate::treecalc::input::{Problem, SCHEMA_VERSION};
use crate::treecalc::{compute_t, diagonal_check_q8, Answer, GraphOfGroups, TResult};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_AMBIGUOUS: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "endotriv", version, about = "Picard groups of stable module categories")]
pub struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// T(G) for the graph of groups in each input file.
    ComputeT {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Evaluate up to this many files concurrently.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Self-check the registry entries used before answering.
        #[arg(long)]
        verify: bool,
    },
    /// Whether a module is endotrivial.
    Endotrivial {
        #[arg(long)]
        group: String,
        #[arg(long)]
        field: String,
        #[arg(long, default_value = "syzygy(trivial)")]
        module: String,
    },
    /// Stable endomorphisms of the trivial module.
    StableEnd {
        #[arg(long)]
        group: String,
        #[arg(long)]
        field: String,
    },
    /// Components of nontrivial p-subgroups for a graph of finite groups.
    Components {
        file: PathBuf,
        #[arg(long)]
        p: u64,
    },
    /// Class in T(H) of the restriction of a module along H -> G.
    RestrictClass {
        #[arg(long)]
        group: String,
        #[arg(long)]
        subgroup: String,
        /// Images of the generators of H, comma separated.
        #[arg(long)]
        gen_to: String,
        #[arg(long)]
        field: String,
        #[arg(long, default_value = "syzygy(trivial)")]
        module: String,
    },
    /// Smith normal form of an integer matrix in a JSON file.
    Snf { file: PathBuf },
    /// Restrictions of a Q8-module to the two cyclic subgroups of order 4.
    DiagonalQ8 {
        #[arg(long, default_value = "F2")]
        field: String,
        #[arg(long, default_value = "syzygy(trivial)")]
        module: String,
    },
}

/// Finished output of one command.
pub struct Outcome {
    pub json: Value,
    pub text: String,
    pub code: i32,
}

fn json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn with_header(command: &str, body: Value) -> Value {
    let mut m = serde_json::Map::new();
    m.insert("schema".into(), Value::from(SCHEMA_VERSION));
    m.insert("command".into(), Value::from(command));
    if let Value::Object(b) = body {
        m.extend(b);
    }
    Value::Object(m)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Serialize)]
struct FieldInfo {
    p: u32,
    deg: u32,
    order: u32,
}

fn field_info(k: &Fq) -> FieldInfo {
    FieldInfo {
        p: k.characteristic(),
        deg: k.degree(),
        order: k.order(),
    }
}

#[derive(Serialize)]
struct EdgeInfo {
    group: String,
    from: usize,
    to: usize,
    initial_map: Vec<usize>,
    terminal_map: Vec<usize>,
    tree: bool,
}

#[derive(Serialize)]
struct ComputeReport {
    input_sha256: String,
    field: FieldInfo,
    graph: String,
    vertices: Vec<String>,
    edges: Vec<EdgeInfo>,
    sub: FgAbelian,
    quot: FgAbelian,
    rule: crate::abgrp::SplitReason,
    answer: Answer,
    provenance: Vec<crate::treecalc::Step>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verification: Option<Vec<VerificationReport>>,
}

fn graph_groups(g: &GraphOfGroups) -> Vec<Group> {
    let mut out: Vec<Group> = Vec::new();
    let mut push = |x: &Group| {
        if !out.iter().any(|y| y.fingerprint() == x.fingerprint()) {
            out.push(x.clone());
        }
    };
    for v in g.vertices() {
        if let Some(x) = v.as_finite() {
            push(x);
        }
    }
    for e in g.edges() {
        push(&e.group);
    }
    out
}

/// `cmd_compute_t` on file contents.
pub fn compute_t_report(bytes: &[u8], verify_registry: bool) -> Result<(Value, String, bool), String> {
    let text = std::str::from_utf8(bytes).map_err(|e| format!("input is not UTF-8: {e}"))?;
    let problem = Problem::from_json(text).map_err(|e| e.to_string())?;
    let k = problem.require_field().map_err(|e| e.to_string())?.clone();
    let g = &problem.graph;
    let verification = if verify_registry {
        let mut reports = Vec::new();
        for h in graph_groups(g) {
            let data = t_group(&h, &k).map_err(|e| e.to_string())?;
            let r = verify(&data).map_err(|e| e.to_string())?;
            if !r.passed() {
                return Err(format!("registry self-verification failed for {} over {}", h.name(), field_name(&k)));
            }
            reports.push(r);
        }
        Some(reports)
    } else {
        None
    };
    let r: TResult = compute_t(g, &k).map_err(|e| e.to_string())?;
    let tree: Vec<usize> = g.tree_edges().to_vec();
    let report = ComputeReport {
        input_sha256: sha256_hex(bytes),
        field: field_info(&k),
        graph: g.to_string(),
        vertices: g.vertices().iter().map(|v| v.label()).collect(),
        edges: g
            .edges()
            .iter()
            .enumerate()
            .map(|(i, e)| EdgeInfo {
                group: e.group.name().to_string(),
                from: e.initial,
                to: e.terminal,
                initial_map: e.mono_initial.map().to_vec(),
                terminal_map: e.mono_terminal.map().to_vec(),
                tree: tree.contains(&i),
            })
            .collect(),
        sub: r.sub.clone(),
        quot: r.quot.clone(),
        rule: r.rule,
        answer: r.answer.clone(),
        provenance: r.provenance.clone(),
        verification,
    };
    let mut t = String::new();
    writeln!(t, "G = {} over {}", g, field_name(&k)).unwrap();
    writeln!(t, "coker(SAut level) = {}", r.sub).unwrap();
    writeln!(t, "ker(T level)      = {}", r.quot).unwrap();
    match &r.answer {
        Answer::Determined(a) => writeln!(t, "T(G) = {a}   [{:?}]", r.rule).unwrap(),
        Answer::Ambiguous { sub, quot } => {
            writeln!(t, "T(G) = AMBIGUOUS: extension of {quot} by {sub}, no splitting rule applies").unwrap()
        }
    }
    Ok((with_header("compute-t", json(&report)), t, r.is_ambiguous()))
}

fn compute_t_files(files: &[PathBuf], jobs: usize, verify_registry: bool) -> Outcome {
    let work = |p: &Path| -> Result<(Value, String, bool), String> {
        let bytes = std::fs::read(p).map_err(|e| format!("{}: {e}", p.display()))?;
        compute_t_report(&bytes, verify_registry).map_err(|e| format!("{}: {e}", p.display()))
    };
    let jobs = jobs.max(1);
    let mut results: Vec<Option<Result<(Value, String, bool), String>>> = vec![None; files.len()];
    std::thread::scope(|s| {
        for (slot_chunk, file_chunk) in results.chunks_mut(files.len().div_ceil(jobs)).zip(files.chunks(files.len().div_ceil(jobs))) {
            s.spawn(move || {
                for (slot, f) in slot_chunk.iter_mut().zip(file_chunk) {
                    *slot = Some(work(f));
                }
            });
        }
    });
    let mut values = Vec::new();
    let mut text = String::new();
    let mut code = EXIT_OK;
    for (f, r) in files.iter().zip(results) {
        match r.expect("every file is evaluated") {
            Ok((v, t, amb)) => {
                if files.len() > 1 {
                    writeln!(text, "== {}", f.display()).unwrap();
                }
                text.push_str(&t);
                values.push(v);
                if amb && code == EXIT_OK {
                    code = EXIT_AMBIGUOUS;
                }
            }
            Err(e) => {
                return Outcome {
                    json: error_json(&e),
                    text: format!("error: {e}\n"),
                    code: EXIT_ERROR,
                }
            }
        }
    }
    let json = if values.len() == 1 {
        values.pop().unwrap()
    } else {
        Value::Array(values)
    };
    Outcome { json, text, code }
}

fn error_json(msg: &str) -> Value {
    with_header("error", serde_json::json!({ "error": msg }))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn endotrivial_cmd(group: &str, field: &str, module: &str) -> Result<Outcome, String> {
    let g = args::parse_group(group)?;
    let k = args::parse_field(field)?;
    let recipe = ModuleRecipe::parse(module).map_err(|e| e.to_string())?;
    let m = recipe.build(&g, &k).map_err(|e| e.to_string())?;
    let endo = is_endotrivial(&m).map_err(|e| e.to_string())?;
    let (core, _) = strip_projectives(&m).map_err(|e| e.to_string())?;
    let ev = if endo {
        Some(evaluation_is_stably_nonzero(&m).map_err(|e| e.to_string())?)
    } else {
        None
    };
    let body = serde_json::json!({
        "group": g.name(),
        "field": field_info(&k),
        "module": recipe.to_string(),
        "dim": m.dim(),
        "core_dim": core.dim(),
        "endotrivial": endo,
        "evaluation_stably_nonzero": ev,
    });
    let mut text = format!("{} over {}: {} (dim {}, core dim {})\n", recipe, field_name(&k), yes_no(endo), m.dim(), core.dim());
    if let Some(ev) = ev {
        writeln!(text, "evaluation map stably nonzero: {}", yes_no(ev)).unwrap();
    }
    Ok(Outcome {
        json: with_header("endotrivial", body),
        text,
        code: EXIT_OK,
    })
}

fn stable_end_cmd(group: &str, field: &str) -> Result<Outcome, String> {
    let g = args::parse_group(group)?;
    let k = args::parse_field(field)?;
    let t = trivial_module(&g, &k);
    let s = stable_hom(&t, &t).map_err(|e| e.to_string())?;
    let h0 = tate_h0(&g, &k);
    let factors = stable_end_decomposition(Target::Finite(&g), &k).map_err(|e| e.to_string())?;
    let prop = composition_matches_tensor(&g, &k).map_err(|e| e.to_string())?;
    let body = serde_json::json!({
        "group": g.name(),
        "field": field_info(&k),
        "dimension": s.quotient_dim(),
        "tate_h0": h0,
        "ring": h0.ring,
        "factors": factors,
        "composition_matches_tensor": prop,
    });
    let text = format!(
        "SEnd({}) over {}: dimension {}, ring {}, factors [{}]\n",
        g.name(),
        field_name(&k),
        s.quotient_dim(),
        h0.ring,
        factors.join(" x ")
    );
    Ok(Outcome {
        json: with_header("stable-end", body),
        text,
        code: EXIT_OK,
    })
}

fn components_cmd(file: &Path, p: u64) -> Result<Outcome, String> {
    let bytes = std::fs::read(file).map_err(|e| format!("{}: {e}", file.display()))?;
    let text = std::str::from_utf8(&bytes).map_err(|e| e.to_string())?;
    let problem = Problem::from_json(text).map_err(|e| e.to_string())?;
    let count = p_components_graph(&problem.graph, p).map_err(|e| e.to_string())?;
    let body = serde_json::json!({
        "input_sha256": sha256_hex(&bytes),
        "graph": problem.graph.to_string(),
        "p": p,
        "components": count,
    });
    Ok(Outcome {
        json: with_header("components", body),
        text: format!("{}: {count} component(s) at p = {p}\n", problem.graph),
        code: EXIT_OK,
    })
}

fn restrict_class_cmd(group: &str, subgroup: &str, gen_to: &str, field: &str, module: &str) -> Result<Outcome, String> {
    let g = args::parse_group(group)?;
    let h = args::parse_group(subgroup)?;
    let k = args::parse_field(field)?;
    let images = gen_to
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|w| g.parse_element(w).map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    let mono = mono_from_generator_images(&h, &g, &images).map_err(|e| e.to_string())?;
    let recipe = ModuleRecipe::parse(module).map_err(|e| e.to_string())?;
    let m = recipe.build(&g, &k).map_err(|e| e.to_string())?;
    let res = restrict(&m, &mono).map_err(|e| e.to_string())?;
    let th = t_group(&h, &k).map_err(|e| e.to_string())?;
    let exps = th
        .identify(&res)
        .map_err(|e| e.to_string())?
        .ok_or_else(|| format!("restriction of {recipe} is not a class in T({})", h.name()))?;
    let class: Vec<i64> = th.to_normal(&exps).iter().map(|x| x.to_i64().unwrap_or(0)).collect();
    let body = serde_json::json!({
        "group": g.name(),
        "subgroup": h.name(),
        "field": field_info(&k),
        "module": recipe.to_string(),
        "target": th.structure,
        "class": class,
    });
    Ok(Outcome {
        json: with_header("restrict-class", body),
        text: format!("Res {} -> {}: {} = {:?} in {}\n", g.name(), h.name(), recipe, class, th.structure),
        code: EXIT_OK,
    })
}

fn big_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(x.to_string()),
    }
}

fn zjson(m: &ZMatrix) -> Value {
    Value::Array(
        m.to_rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(big_json).collect()))
            .collect(),
    )
}

/// Reads `[[..]]` or `{"matrix": [[..]]}`.
pub fn parse_matrix_json(text: &str) -> Result<ZMatrix, String> {
    let v: Value = serde_json::from_str(text).map_err(|e| format!("malformed matrix file: {e}"))?;
    let rows = match &v {
        Value::Object(o) => o.get("matrix").ok_or("missing \"matrix\"")?,
        other => other,
    };
    let rows: Vec<Vec<i64>> = serde_json::from_value(rows.clone()).map_err(|e| format!("matrix must be integer rows: {e}"))?;
    if rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err("rows have different lengths".into());
    }
    Ok(ZMatrix::from_rows(&rows))
}

fn snf_cmd(file: &Path) -> Result<Outcome, String> {
    let text = std::fs::read_to_string(file).map_err(|e| format!("{}: {e}", file.display()))?;
    let m = parse_matrix_json(&text)?;
    let s = smith_normal_form(&m);
    let inv: Vec<Value> = s.invariant_factors().iter().map(big_json).collect();
    let body = serde_json::json!({
        "input_sha256": sha256_hex(text.as_bytes()),
        "invariant_factors": inv,
        "rank": s.rank(),
        "u": zjson(&s.u),
        "d": zjson(&s.d),
        "v": zjson(&s.v),
    });
    let f: Vec<String> = s.invariant_factors().iter().map(|x| x.to_string()).collect();
    Ok(Outcome {
        json: with_header("snf", body),
        text: format!("invariant factors: [{}]\n", f.join(", ")),
        code: EXIT_OK,
    })
}

fn diagonal_cmd(field: &str, module: &str) -> Result<Outcome, String> {
    let k = args::parse_field(field)?;
    let recipe = ModuleRecipe::parse(module).map_err(|e| e.to_string())?;
    let r = diagonal_check_q8(&k, &recipe).map_err(|e| e.to_string())?;
    let mut text = format!(
        "{} over Q8/{}: Res to <x> = {}, Res to <y> = {}; diagonal: {}\n",
        r.module,
        r.field,
        r.class_x,
        r.class_y,
        yes_no(r.diagonal)
    );
    if let Some(e) = &r.excluded {
        writeln!(text, "note: {e}").unwrap();
    }
    Ok(Outcome {
        json: with_header("diagonal-q8", json(&r)),
        text,
        code: EXIT_OK,
    })
}

/// Runs a parsed command.
pub fn execute(cli: &Cli) -> Outcome {
    let res = match &cli.command {
        Command::ComputeT { files, jobs, verify } => Ok(compute_t_files(files, *jobs, *verify)),
        Command::Endotrivial { group, field, module } => endotrivial_cmd(group, field, module),
        Command::StableEnd { group, field } => stable_end_cmd(group, field),
        Command::Components { file, p } => components_cmd(file, *p),
        Command::RestrictClass {
            group,
            subgroup,
            gen_to,
            field,
            module,
        } => restrict_class_cmd(group, subgroup, gen_to, field, module),
        Command::Snf { file } => snf_cmd(file),
        Command::DiagonalQ8 { field, module } => diagonal_cmd(field, module),
    };
    res.unwrap_or_else(|e| Outcome {
        json: error_json(&e),
        text: format!("error: {e}\n"),
        code: EXIT_ERROR,
    })
}

/// Entry point used by the binary; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let out = execute(&cli);
    let rendered = match cli.format {
        Format::Json => serde_json::to_string_pretty(&out.json).expect("json") + "\n",
        Format::Text => out.text.clone(),
    };
    if out.code == EXIT_ERROR {
        eprint!("{}", out.text);
    }
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &rendered) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return EXIT_ERROR;
            }
        }
        None => {
            if out.code != EXIT_ERROR || cli.format == Format::Json {
                print!("{rendered}");
            }
        }
    }
    out.code
}
