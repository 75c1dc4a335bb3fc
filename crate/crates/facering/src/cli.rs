//! The command line front end: facet-list files in, tables or JSON out.
//!
//! Exit codes: 0 for definite results, 2 for input errors, 3 when any result is inconclusive.

use crate::artinian::{make_lsop, parse_monomial, render_monomial, LsopMode};
use crate::canonical::{choose_aux_symbolic, PsiEvaluator};
use crate::certify::{
    certify, check_lefschetz, pipeline_theorem_main, revalidate, sed_recognize, validate_sed_tree, AnisoCertificate,
    Backend, CertifyOptions, SedTree, Timings, Verdict, DEFAULT_SEED,
};
use crate::complex::{Face, SimplicialComplex};
use crate::scalar::{Coeff, Int, Zp};
use crate::topology::{boundary_complex, classify, orient};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

/// `{"vertices": m, "facets": [[...]], "name": ...}` with labels in `1..=m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub vertices: u32,
    pub facets: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

/// A rejected input, with the offending field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputError {
    pub field: String,
    pub message: String,
}

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

impl ComplexFile {
    pub fn from_complex(k: &SimplicialComplex, name: Option<&str>) -> ComplexFile {
        ComplexFile {
            vertices: k.max_label(),
            facets: k.facets().iter().map(|f| f.iter().map(|&v| v as i64).collect()).collect(),
            name: name.map(str::to_string),
        }
    }

    pub fn parse(text: &str) -> Result<ComplexFile, InputError> {
        serde_json::from_str(text).map_err(|e| InputError {
            field: format!("line {} column {}", e.line(), e.column()),
            message: e.to_string(),
        })
    }

    /// Checks labels and nesting, listing every offender.
    pub fn validate(&self) -> Result<SimplicialComplex, InputError> {
        let m = self.vertices as i64;
        let mut bad = Vec::new();
        for (i, f) in self.facets.iter().enumerate() {
            for (j, &v) in f.iter().enumerate() {
                if v < 1 || v > m {
                    bad.push(format!("facets[{i}][{j}] = {v}"));
                }
            }
        }
        if !bad.is_empty() {
            return Err(InputError { field: "facets".into(), message: format!("labels outside 1..={m}: {}", bad.join(", ")) });
        }
        let sets: Vec<Face> = self
            .facets
            .iter()
            .map(|f| {
                let mut s: Face = f.iter().map(|&v| v as u32).collect();
                s.sort_unstable();
                s
            })
            .collect();
        for (i, s) in sets.iter().enumerate() {
            if s.windows(2).any(|w| w[0] == w[1]) {
                bad.push(format!("facets[{i}] repeats a label"));
            }
        }
        if !bad.is_empty() {
            return Err(InputError { field: "facets".into(), message: bad.join(", ") });
        }
        for i in 0..sets.len() {
            for j in 0..sets.len() {
                if i != j && crate::complex::is_subset(&sets[i], &sets[j]) && (sets[i] != sets[j] || i < j) {
                    bad.push(format!("facets[{i}] {:?} inside facets[{j}] {:?}", sets[i], sets[j]));
                }
            }
        }
        if !bad.is_empty() {
            return Err(InputError { field: "facets".into(), message: format!("nested facets: {}", bad.join("; ")) });
        }
        SimplicialComplex::from_facets(sets).map_err(|e| InputError { field: "facets".into(), message: e.to_string() })
    }

    pub fn load(path: &Path) -> Result<(ComplexFile, SimplicialComplex), InputError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| InputError { field: path.display().to_string(), message: e.to_string() })?;
        let file = ComplexFile::parse(&text)?;
        let k = file.validate()?;
        Ok((file, k))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Char2,
    Definite,
    Rank2,
    Auto,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Backend {
        match b {
            BackendArg::Char2 => Backend::Char2,
            BackendArg::Definite => Backend::Definite,
            BackendArg::Rank2 => Backend::Rank2,
            BackendArg::Auto => Backend::Auto,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LsopArg {
    Reduced,
    FullGeneric,
}

/// Settings shared by every subcommand.
#[derive(Clone, Debug, Args)]
pub struct RunConfig {
    /// Characteristic of the ground field: 0 or a prime.
    #[arg(long = "char", global = true, default_value_t = 0)]
    pub characteristic: u64,
    #[arg(long, global = true, value_enum, default_value_t = BackendArg::Auto)]
    pub backend: BackendArg,
    #[arg(long, global = true, default_value_t = 10)]
    pub trials: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Check homology spheres at every step of the decomposition search.
    #[arg(long, global = true)]
    pub strict: bool,
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads when several files are given.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long, global = true, value_enum, default_value_t = LsopArg::Reduced)]
    pub lsop: LsopArg,
    /// Record wall-clock timings in certificates (output is then not reproducible).
    #[arg(long, global = true)]
    pub timings: bool,
    /// Write the output here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

impl RunConfig {
    fn mode(&self) -> LsopMode {
        match self.lsop {
            LsopArg::Reduced => LsopMode::Reduced,
            LsopArg::FullGeneric => LsopMode::FullGeneric,
        }
    }

    fn certify_options(&self) -> CertifyOptions {
        CertifyOptions {
            characteristic: self.characteristic,
            backend: self.backend.into(),
            mode: self.mode(),
            trials: self.trials,
            seed: self.seed,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "facering", version, about = "Face rings of simplicial spheres: anisotropy, Lefschetz and edge decompositions")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// f- and h-vectors, Betti numbers, and classification.
    Analyze { files: Vec<PathBuf> },
    /// Certify generic anisotropy of the middle degree.
    Certify {
        files: Vec<PathBuf>,
        /// Re-check a certificate against the (single) complex instead.
        #[arg(long)]
        verify: Option<PathBuf>,
    },
    /// Search for a strong edge decomposition.
    Sed { files: Vec<PathBuf> },
    /// Look for a strong Lefschetz witness.
    Lefschetz { files: Vec<PathBuf> },
    /// Evaluate the canonical function on a top-degree monomial such as "1^2 3".
    Psi { file: PathBuf, monomial: String },
    /// Decomposition, per-node hypotheses, and the conclusion.
    Pipeline { files: Vec<PathBuf> },
}

/// What one file produced.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub json: Value,
    pub text: String,
    pub code: i32,
}

impl Outcome {
    fn input_error(source: &str, msg: impl std::fmt::Display) -> Outcome {
        Outcome { json: json!({ "input": source, "error": msg.to_string() }), text: format!("{source}: error: {msg}\n"), code: EXIT_INPUT }
    }
}

fn label(file: &ComplexFile, path: &str) -> String {
    file.name.clone().unwrap_or_else(|| path.to_string())
}

pub fn analyze(k: &SimplicialComplex, name: &str) -> Outcome {
    let q = classify(k, 0);
    let f2 = classify(k, 2);
    let boundary = if q.ball { boundary_complex(k, 0).ok().map(|b| b.facets().to_vec()) } else { None };
    let json = json!({
        "name": name,
        "complex_hash": k.hash_hex(),
        "vertices": k.num_vertices(),
        "facets": k.facets().len(),
        "dimension": k.dim(),
        "f_vector": k.f_vector().0,
        "h_vector": k.h_vector().0,
        "rational": q,
        "mod2": f2,
        "boundary": boundary,
    });
    let kind = |c: &crate::topology::Classification| {
        if c.sphere {
            "sphere"
        } else if c.ball {
            "ball"
        } else if c.manifold {
            "closed manifold"
        } else if c.manifold_with_boundary {
            "manifold with boundary"
        } else {
            "other"
        }
    };
    let mut text = String::new();
    let _ = writeln!(text, "{name}");
    let _ = writeln!(text, "  hash         {}", k.hash_hex());
    let _ = writeln!(text, "  dimension    {}", k.dim());
    let _ = writeln!(text, "  f-vector     {:?}", k.f_vector().0);
    let _ = writeln!(text, "  h-vector     {:?}", k.h_vector().0);
    let _ = writeln!(text, "  betti (Q)    {:?}  {}  orientable: {}", q.betti, kind(&q), q.orientable);
    let _ = writeln!(text, "  betti (F2)   {:?}  {}", f2.betti, kind(&f2));
    if let Some(b) = &boundary {
        let _ = writeln!(text, "  boundary     {:?}", b);
    }
    Outcome { json, text, code: EXIT_OK }
}

fn verdict_code(v: Verdict) -> i32 {
    if v.is_definite() {
        EXIT_OK
    } else {
        EXIT_INCONCLUSIVE
    }
}

pub fn certify_one(k: &SimplicialComplex, name: &str, cfg: &RunConfig) -> Outcome {
    let start = Instant::now();
    match certify(k, &cfg.certify_options()) {
        Ok(mut c) => {
            if cfg.timings {
                c.timings = Some(Timings { total_ms: start.elapsed().as_millis() as u64 });
            }
            let text = format!("{name}: {} ({} backend)\n  {}\n", c.verdict, c.backend, c.soundness);
            Outcome { json: serde_json::to_value(&c).expect("serializable"), text, code: verdict_code(c.verdict) }
        }
        Err(e) => Outcome::input_error(name, e),
    }
}

pub fn verify_one(k: &SimplicialComplex, name: &str, cert_path: &Path) -> Outcome {
    let cert: AnisoCertificate = match std::fs::read_to_string(cert_path)
        .map_err(|e| e.to_string())
        .and_then(|t| serde_json::from_str(&t).map_err(|e| e.to_string()))
    {
        Ok(c) => c,
        Err(e) => return Outcome::input_error(&cert_path.display().to_string(), e),
    };
    match revalidate(k, &cert) {
        Ok(valid) => Outcome {
            json: json!({ "name": name, "valid": valid, "verdict": cert.verdict }),
            text: format!("{name}: certificate {}\n", if valid { "valid" } else { "INVALID" }),
            code: if valid { EXIT_OK } else { EXIT_INPUT },
        },
        Err(e) => Outcome::input_error(name, e),
    }
}

fn render_tree(t: &SedTree, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match t {
        SedTree::Leaf { vertices } => {
            let _ = writeln!(out, "{pad}simplex boundary on {vertices:?}");
        }
        SedTree::Node { edge, link, contraction } => {
            let _ = writeln!(out, "{pad}edge {{{}, {}}}", edge[0], edge[1]);
            let _ = writeln!(out, "{pad}  link:");
            render_tree(link, indent + 2, out);
            let _ = writeln!(out, "{pad}  contraction:");
            render_tree(contraction, indent + 2, out);
        }
    }
}

pub fn sed_one(k: &SimplicialComplex, name: &str, cfg: &RunConfig) -> Outcome {
    let tree = sed_recognize(k, cfg.strict);
    let valid = tree.as_ref().map(|t| validate_sed_tree(t, k));
    let mut text = format!("{name}: ");
    match &tree {
        Some(t) => {
            text.push_str("strongly edge decomposable\n");
            render_tree(t, 1, &mut text);
        }
        None => text.push_str("no strong edge decomposition\n"),
    }
    let json = json!({
        "name": name,
        "complex_hash": k.hash_hex(),
        "sed": tree.is_some(),
        "tree": tree,
        "valid": valid,
    });
    Outcome { json, text, code: EXIT_OK }
}

pub fn lefschetz_one(k: &SimplicialComplex, name: &str, cfg: &RunConfig) -> Outcome {
    let r = check_lefschetz(k, cfg.characteristic, cfg.trials, cfg.seed);
    let mut text = format!("{name}: {}\n", r.status);
    for d in &r.degrees {
        let _ = writeln!(text, "  degree {}: rank {} of {}", d.degree, d.rank, d.expected);
    }
    let code = if r.passed() { EXIT_OK } else { EXIT_INCONCLUSIVE };
    Outcome { json: serde_json::to_value(&r).expect("serializable"), text, code }
}

fn psi_value<C: Coeff>(k: &SimplicialComplex, ctx: C::Ctx, mode: LsopMode, mono: &[u32], ch: u64) -> crate::error::Result<String> {
    let m = choose_aux_symbolic(k, make_lsop::<C>(k, ctx, mode)?);
    let eval = PsiEvaluator::new(k.clone(), m, orient(k, ch)?)?;
    Ok(eval.psi_or_zero(mono)?.render())
}

pub fn psi_one(k: &SimplicialComplex, name: &str, monomial: &str, cfg: &RunConfig) -> Outcome {
    let mono = match parse_monomial(monomial) {
        Ok(m) => m,
        Err(e) => return Outcome::input_error(monomial, e),
    };
    if mono.len() != k.d() {
        return Outcome::input_error(monomial, format!("degree {} differs from the top degree {}", mono.len(), k.d()));
    }
    if let Some(v) = mono.iter().find(|&&v| !k.contains_face(&[v])) {
        return Outcome::input_error(monomial, format!("{v} is not a vertex of {name}"));
    }
    let ch = cfg.characteristic;
    let value = if ch == 0 {
        psi_value::<Int>(k, (), cfg.mode(), &mono, ch)
    } else if crate::scalar::is_prime(ch) {
        psi_value::<Zp>(k, ch, cfg.mode(), &mono, ch)
    } else {
        return Outcome::input_error(name, format!("characteristic {ch} is not 0 or a prime"));
    };
    match value {
        Ok(v) => Outcome {
            json: json!({
                "name": name,
                "monomial": render_monomial(&mono),
                "characteristic": ch,
                "mode": cfg.mode(),
                "value": v,
            }),
            text: format!("Psi({}) = {v}\n", render_monomial(&mono)),
            code: EXIT_OK,
        },
        Err(e) => Outcome::input_error(name, e),
    }
}

pub fn pipeline_one(k: &SimplicialComplex, name: &str, cfg: &RunConfig) -> Outcome {
    match pipeline_theorem_main(k, cfg.characteristic, cfg.trials, cfg.seed, cfg.strict) {
        Ok(r) => {
            let mut text = format!("{name}: {}\n", if r.through_suspension { "run on the suspension" } else { "run on the complex" });
            match &r.tree {
                Some(t) => {
                    let _ = writeln!(text, "  decomposition: {} nodes, depth {}", t.num_nodes(), t.depth());
                }
                None => text.push_str("  decomposition: none found\n"),
            }
            for n in &r.nodes {
                let _ = writeln!(
                    text,
                    "  {}edge {{{}, {}}}: link {}, contraction {}, link Lefschetz {}",
                    "  ".repeat(n.depth),
                    n.edge[0],
                    n.edge[1],
                    n.link_verdict,
                    n.contraction_verdict,
                    n.link_lefschetz
                );
            }
            let _ = writeln!(text, "  hypotheses confirmed: {}", r.hypotheses_confirmed);
            let _ = writeln!(text, "  conclusion: {}", r.conclusion_verdict());
            if let Some(d) = &r.direct {
                let _ = writeln!(text, "  on the complex itself: {}", d.verdict);
            }
            for note in &r.notes {
                let _ = writeln!(text, "  note: {note}");
            }
            let mut json = serde_json::to_value(&r).expect("serializable");
            json["confirmed"] = json!(r.confirmed());
            json["consistent"] = json!(r.consistent());
            Outcome { json, text, code: verdict_code(r.conclusion_verdict()) }
        }
        Err(e) => Outcome::input_error(name, e),
    }
}

fn for_files(cfg: &RunConfig, files: &[PathBuf], f: &(dyn Fn(&SimplicialComplex, &str) -> Outcome + Sync)) -> Vec<Outcome> {
    let one = |p: &PathBuf| {
        let shown = p.display().to_string();
        match ComplexFile::load(p) {
            Ok((file, k)) => f(&k, &label(&file, &shown)),
            Err(e) => Outcome::input_error(&shown, e),
        }
    };
    if cfg.jobs > 1 && files.len() > 1 {
        match rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs).build() {
            Ok(pool) => pool.install(|| files.par_iter().map(one).collect()),
            Err(_) => files.iter().map(one).collect(),
        }
    } else {
        files.iter().map(one).collect()
    }
}

/// Runs one command line and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
            } else {
                let _ = write!(out, "{}", e.render());
            }
            return code;
        }
    };
    let cfg = cli.config;
    if cfg.characteristic != 0 && !crate::scalar::is_prime(cfg.characteristic) {
        let _ = writeln!(err, "--char: {} is not 0 or a prime", cfg.characteristic);
        return EXIT_INPUT;
    }
    let outcomes: Vec<Outcome> = match &cli.command {
        Command::Analyze { files } => for_files(&cfg, files, &|k, n| analyze(k, n)),
        Command::Certify { files, verify: Some(cert) } => {
            if files.len() != 1 {
                let _ = writeln!(err, "--verify takes exactly one complex file");
                return EXIT_INPUT;
            }
            for_files(&cfg, files, &|k, n| verify_one(k, n, cert))
        }
        Command::Certify { files, verify: None } => for_files(&cfg, files, &|k, n| certify_one(k, n, &cfg)),
        Command::Sed { files } => for_files(&cfg, files, &|k, n| sed_one(k, n, &cfg)),
        Command::Lefschetz { files } => for_files(&cfg, files, &|k, n| lefschetz_one(k, n, &cfg)),
        Command::Psi { file, monomial } => for_files(&cfg, std::slice::from_ref(file), &|k, n| psi_one(k, n, monomial, &cfg)),
        Command::Pipeline { files } => for_files(&cfg, files, &|k, n| pipeline_one(k, n, &cfg)),
    };
    if outcomes.is_empty() {
        let _ = writeln!(err, "no input files");
        return EXIT_INPUT;
    }
    let code = if outcomes.iter().any(|o| o.code == EXIT_INPUT) {
        EXIT_INPUT
    } else {
        outcomes.iter().map(|o| o.code).max().unwrap_or(EXIT_OK)
    };
    let body = if cfg.json {
        let v = if outcomes.len() == 1 { outcomes[0].json.clone() } else { Value::Array(outcomes.iter().map(|o| o.json.clone()).collect()) };
        serde_json::to_string_pretty(&v).expect("serializable") + "\n"
    } else {
        outcomes.iter().filter(|o| o.code != EXIT_INPUT).map(|o| o.text.as_str()).collect()
    };
    for o in outcomes.iter().filter(|o| o.code == EXIT_INPUT) {
        let _ = write!(err, "{}", o.text);
    }
    match &cfg.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, body) {
                let _ = writeln!(err, "{}: {e}", path.display());
                return EXIT_INPUT;
            }
        }
        None => {
            let _ = out.write_all(body.as_bytes());
        }
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_lists_offenders() {
        let f = ComplexFile::parse(r#"{"vertices": 3, "facets": [[1, 2], [1, 2, 3], [4, 0]]}"#).unwrap();
        let e = f.validate().unwrap_err();
        assert!(e.message.contains("facets[2][0] = 4") && e.message.contains("facets[2][1] = 0"), "{e}");
        let f = ComplexFile::parse(r#"{"vertices": 3, "facets": [[1, 2], [1, 2, 3], [3]]}"#).unwrap();
        let e = f.validate().unwrap_err();
        assert!(e.message.contains("facets[0]") && e.message.contains("facets[2]"), "{e}");
        let e = ComplexFile::parse("{\"vertices\": 3,\n \"facets\": [[1, 2}").unwrap_err();
        assert!(e.field.starts_with("line 2"), "{e}");
    }

    #[test]
    fn round_trip() {
        let k = crate::corpus::octahedron();
        let f = ComplexFile::from_complex(&k, Some("octahedron"));
        let back = ComplexFile::parse(&serde_json::to_string(&f).unwrap()).unwrap();
        assert_eq!(back.validate().unwrap(), k);
    }
}
