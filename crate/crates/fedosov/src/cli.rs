//! Argument parsing and the subcommands.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use fedosov_core::chart::{
    self, hamiltonian_oneform, metric_obstruction, model_at_point, sign_search, verify_as_conditions,
    verify_hamiltonian, verify_linear_type_suite, xi_perp, Chart,
};
use fedosov_core::decomposition::{a2, class_violation, dimension_table, symplectify_torsion, Decomposer, Label, Space};
use fedosov_core::model::{
    bianchi_classify, check_model_axioms, nomizu_algebra, nomizu_h0, transvection_algebra, LieAlgebraPresentation,
};
use fedosov_core::report::Check;
use fedosov_core::scalar::parse_rational_function;
use fedosov_core::{Rational, RationalFunction, Slot, SymplecticSpace, Tensor};
use serde_json::{json, Value};

use crate::fixtures;
use crate::json::{self, InputError, Source};
use crate::report::Report;

#[derive(Parser, Debug)]
#[command(name = "fedosov", version, about = "Exact Sp(V)-invariant decompositions, infinitesimal models and chart verification")]
pub struct Cli {
    /// Emit a machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SpaceArg {
    Cotorsion,
    Torsion,
}

impl From<SpaceArg> for Space {
    fn from(s: SpaceArg) -> Space {
        match s {
            SpaceArg::Cotorsion => Space::Cotorsion,
            SpaceArg::Torsion => Space::Torsion,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Ambrose–Singer conditions for the linear-type structure.
    As,
    /// Identities of linear-type Fedosov structures.
    LinearType,
    All,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dimensions of the invariant classes against their closed forms.
    Dims {
        #[arg(long, default_value_t = 3)]
        n_max: usize,
    },
    /// Split a tensor into its invariant parts.
    Decompose {
        #[arg(long, value_enum)]
        space: SpaceArg,
        #[arg(long)]
        n: usize,
        file: PathBuf,
        /// Include the component tensors of every part.
        #[arg(long)]
        parts: bool,
    },
    /// Report only the type set of a tensor.
    Classify {
        /// Inferred from the symmetry of the input when omitted.
        #[arg(long, value_enum)]
        space: Option<SpaceArg>,
        #[arg(long)]
        n: usize,
        file: PathBuf,
    },
    /// Find a structure tensor S with A2(-S) equal to the given torsion.
    Symplectify {
        #[arg(long)]
        n: usize,
        file: PathBuf,
    },
    /// Check the infinitesimal-model axioms.
    CheckModel { file: PathBuf },
    /// Nomizu algebra of a model.
    Nomizu { file: PathBuf },
    /// Transvection algebra of a model.
    Transvection { file: PathBuf },
    /// Bianchi type of a 3-dimensional Lie algebra, or of a model's transvection algebra.
    Bianchi { file: PathBuf },
    /// Run the chart verification suites.
    VerifyChart {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Name of the vector field defining the linear-type structure.
        #[arg(long, default_value = "xi")]
        xi: String,
    },
    /// Linear-type structure tensor and Hamiltonian 1-form of a chart.
    LinearType {
        file: PathBuf,
        #[arg(long, default_value = "xi")]
        xi: String,
        /// Candidate Hamiltonian H, checked against dH = i_xi omega.
        #[arg(long)]
        hamiltonian: Option<String>,
    },
    /// Whether a parallel pseudo-Riemannian metric can exist at a point.
    Obstruction {
        file: PathBuf,
        /// Point as `x=1,y=0` or `1,0`.
        #[arg(long)]
        at: String,
        #[arg(long, default_value = "xi")]
        xi: String,
    },
    /// Evaluate a chart's AS data at a point as an infinitesimal model.
    ModelAtPoint {
        file: PathBuf,
        #[arg(long)]
        at: String,
        #[arg(long, default_value = "xi")]
        xi: String,
        /// Also write the model JSON to this file.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// List or write the bundled chart files and the sign search for the first one.
    Examples {
        #[arg(long)]
        write: Option<PathBuf>,
    },
}

/// Anything that stops a command before it can produce a report.
#[derive(Debug, thiserror::Error)]
pub enum CommandError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error("{0}")]
    Core(#[from] fedosov_core::Error),
    #[error("{0}")]
    Usage(String),
}

/// What a run produced: text for stdout or stderr and the exit status.
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

pub fn run(cli: Cli) -> Outcome {
    let name = command_name(&cli.command);
    match execute(&cli.command) {
        Ok(report) => Outcome {
            stdout: if cli.json { report.render_json() } else { report.render_text() },
            stderr: String::new(),
            code: report.exit_code(),
        },
        Err(e) => {
            let stderr = format!("fedosov {name}: error: {e}\n");
            let stdout = if cli.json {
                let v = json!({ "command": name, "error": e.to_string() });
                format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
            } else {
                String::new()
            };
            Outcome { stdout, stderr, code: 2 }
        }
    }
}

pub fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Dims { .. } => "dims",
        Command::Decompose { .. } => "decompose",
        Command::Classify { .. } => "classify",
        Command::Symplectify { .. } => "symplectify",
        Command::CheckModel { .. } => "check-model",
        Command::Nomizu { .. } => "nomizu",
        Command::Transvection { .. } => "transvection",
        Command::Bianchi { .. } => "bianchi",
        Command::VerifyChart { .. } => "verify-chart",
        Command::LinearType { .. } => "linear-type",
        Command::Obstruction { .. } => "obstruction",
        Command::ModelAtPoint { .. } => "model-at-point",
        Command::Examples { .. } => "examples",
    }
}

fn execute(c: &Command) -> Result<Report, CommandError> {
    let mut r = Report::new(command_name(c));
    match c {
        Command::Dims { n_max } => dims(&mut r, *n_max)?,
        Command::Decompose { space, n, file, parts } => decompose(&mut r, (*space).into(), *n, file, *parts)?,
        Command::Classify { space, n, file } => classify(&mut r, space.map(Space::from), *n, file)?,
        Command::Symplectify { n, file } => symplectify(&mut r, *n, file)?,
        Command::CheckModel { file } => {
            let m = load_model(file)?;
            r.line(format!("model on V of dimension {}", m.dim()));
            r.extend(check_model_axioms(&m));
        }
        Command::Nomizu { file } => nomizu(&mut r, file)?,
        Command::Transvection { file } => transvection(&mut r, file)?,
        Command::Bianchi { file } => bianchi(&mut r, file)?,
        Command::VerifyChart { file, suite, xi } => verify_chart(&mut r, file, *suite, xi)?,
        Command::LinearType { file, xi, hamiltonian } => linear_type(&mut r, file, xi, hamiltonian.as_deref())?,
        Command::Obstruction { file, at, xi } => obstruction(&mut r, file, at, xi)?,
        Command::ModelAtPoint { file, at, xi, output } => model_point(&mut r, file, at, xi, output.as_deref())?,
        Command::Examples { write } => examples(&mut r, write.as_deref())?,
    }
    Ok(r)
}

fn load(path: &Path) -> Result<(Source, Value), InputError> {
    let src = Source::read(path)?;
    let v = src.parse()?;
    Ok((src, v))
}

fn load_model(path: &Path) -> Result<fedosov_core::model::InfinitesimalModel, InputError> {
    let (src, v) = load(path)?;
    json::model_from_json(&src, &v)
}

pub fn load_chart(path: &Path) -> Result<Chart, InputError> {
    let (src, v) = load(path)?;
    json::chart_from_json(&src, &v)
}

fn type_text(labels: &[Label]) -> String {
    if labels.is_empty() {
        "{} (zero tensor)".into()
    } else {
        labels.iter().map(|l| l.name()).collect::<Vec<_>>().join("+")
    }
}

fn space_text(space: Space) -> &'static str {
    match space {
        Space::Cotorsion => "cotorsion, S^2 V* (x) V*",
        Space::Torsion => "torsion, /\\^2 V* (x) V*",
    }
}

fn dims(r: &mut Report, n_max: usize) -> Result<(), CommandError> {
    if n_max == 0 {
        return Err(CommandError::Usage("--n-max must be at least 1".into()));
    }
    let table = dimension_table(n_max);
    r.line(format!("{:<3} {:<6} {:>9} {:>8}  status", "n", "class", "computed", "formula"));
    let mut rows = Vec::new();
    for e in &table.entries {
        let formula = e.formula.map_or("-".to_string(), |f| f.to_string());
        let status = match e.formula {
            None => "no closed form",
            Some(_) if e.matches() => "ok",
            Some(_) => "MISMATCH",
        };
        r.line(format!("{:<3} {:<6} {:>9} {:>8}  {}", e.n, e.label.name(), e.computed, formula, status));
        rows.push(json!({ "n": e.n, "class": e.label.name(), "computed": e.computed, "formula": e.formula }));
        if let Some(f) = e.formula {
            let name = format!("dim {} (n={}) = {}", e.label.name(), e.n, f);
            r.check(if e.matches() { Check::pass(name) } else { Check::fail(name, vec![], format!("computed {}", e.computed)) });
        }
    }
    r.line("");
    let mut totals = Vec::new();
    for (n, space, sum, ambient, rank) in &table.totals {
        r.line(format!("n={n} {}: classes sum to {sum}, ambient {ambient}, rank of union {rank}", space.name()));
        totals.push(json!({ "n": n, "space": space.name(), "sum": sum, "ambient": ambient, "rank": rank }));
        let name = format!("{} classes span the ambient space (n={n})", space.name());
        r.check(if rank == ambient && sum == ambient {
            Check::pass(name)
        } else {
            Check::fail(name, vec![], format!("sum {sum}, rank {rank}, ambient {ambient}"))
        });
    }
    let mut stated = Vec::new();
    for s in &table.stated {
        let labels = type_text(&s.labels);
        let spanning = type_text(&s.spanning);
        let name = format!("stated {} decomposition {} (n={})", s.space.name(), labels, s.n);
        if !s.holds() {
            r.line(format!(
                "DISCREPANCY n={} {}: stated {} has dimension {} but the ambient space has {}; exact ranks show {} span it",
                s.n,
                s.space.name(),
                labels,
                s.sum,
                s.ambient,
                spanning
            ));
        }
        r.check(if s.holds() {
            Check::pass(name)
        } else {
            Check::fail(name, vec![], format!("sum {} vs ambient {}; spanning classes {}", s.sum, s.ambient, spanning))
        });
        stated.push(json!({
            "n": s.n, "space": s.space.name(), "classes": s.labels.iter().map(|l| l.name()).collect::<Vec<_>>(),
            "sum": s.sum, "ambient": s.ambient, "holds": s.holds(),
            "spanning": s.spanning.iter().map(|l| l.name()).collect::<Vec<_>>(),
        }));
    }
    r.artifact("dimensions", Value::Array(rows));
    r.artifact("totals", Value::Array(totals));
    r.artifact("stated", Value::Array(stated));
    Ok(())
}

/// Reads a tensor for `space` at `n`, lowering a (1,2)-tensor first.
fn load_lowered(path: &Path, space: Option<Space>, n: usize) -> Result<(Tensor<Rational>, Space), CommandError> {
    let (src, v) = load(path)?;
    let t = json::tensor_from_json(&src, &v)?;
    if t.dim() != 2 * n {
        return Err(src.invalid(format!("tensor has n = {} but --n is {n}", t.dim() / 2)).into());
    }
    let sp = SymplecticSpace::new(n);
    let lowered = match t.slots() {
        [Slot::Cov, Slot::Cov, Slot::Cov] => t,
        [Slot::Cov, Slot::Cov, Slot::Contra] => {
            let space = space.or_else(|| infer_raw(&t)).ok_or_else(|| {
                src.invalid("cannot infer the space of a (1,2)-tensor that is neither symmetric nor antisymmetric")
            })?;
            match space {
                Space::Cotorsion => sp.cotorsion_lower(&t).map_err(|e| src.invalid(e))?,
                Space::Torsion => sp.torsion_lower(&t).map_err(|e| src.invalid(e))?,
            }
        }
        _ => return Err(src.invalid("expected valence [cov,cov,cov] or [cov,cov,contra]").into()),
    };
    let space = match space {
        Some(s) => s,
        None => infer_lowered(&lowered).ok_or_else(|| src.invalid("cannot infer the space; pass --space"))?,
    };
    let bad = match space {
        Space::Cotorsion => lowered.symmetry_violation(0, 1).map(|ix| (ix, "symmetric")),
        Space::Torsion => lowered.antisymmetry_violation(0, 1).map(|ix| (ix, "antisymmetric")),
    };
    if let Some((ix, what)) = bad {
        let ix: Vec<String> = ix.iter().map(|i| (i + 1).to_string()).collect();
        return Err(src.invalid(format!("a {} tensor must be {what} in its first two slots; fails at ({})", space.name(), ix.join(","))).into());
    }
    Ok((lowered, space))
}

/// Raw (1,2)-tensors: a structure tensor is symmetric, a torsion antisymmetric.
fn infer_raw(t: &Tensor<Rational>) -> Option<Space> {
    if t.is_zero() {
        None
    } else if t.is_symmetric_in(0, 1) {
        Some(Space::Cotorsion)
    } else if t.is_antisymmetric_in(0, 1) {
        Some(Space::Torsion)
    } else {
        None
    }
}

fn infer_lowered(t: &Tensor<Rational>) -> Option<Space> {
    infer_raw(t)
}

fn decompose(r: &mut Report, space: Space, n: usize, file: &Path, with_parts: bool) -> Result<(), CommandError> {
    let (t, space) = load_lowered(file, Some(space), n)?;
    let dec = Decomposer::new(space, n)?;
    let res = dec.decompose(&t)?;
    r.line(format!("space: {}, n = {n}", space_text(space)));
    let mut parts = serde_json::Map::new();
    for (label, part) in &res.parts {
        let status = if part.is_zero() { "zero" } else { "nonzero" };
        r.line(format!("  {:<3} {}", label.name(), status));
        let mut entry = serde_json::Map::new();
        entry.insert("status".into(), Value::from(status));
        if with_parts {
            entry.insert("tensor".into(), json::tensor_to_json(part));
        }
        parts.insert(label.name().into(), Value::Object(entry));
        let name = format!("{} part lies in its class", label.name());
        r.check(match class_violation(*label, part) {
            None => Check::pass(name),
            Some(why) => Check::fail(name, vec![], why),
        });
    }
    r.line(format!("type: {}", type_text(&res.type_set)));
    if with_parts {
        for (label, part) in &res.parts {
            if !part.is_zero() {
                r.line(format!("{}: {}", label.name(), serde_json::to_string(&json::tensor_to_json(part)).expect("json")));
            }
        }
    }
    let sum = res.sum().unwrap_or_else(|| Tensor::zeros(t.dim(), t.slots()));
    r.check(Check::equal("parts sum to the input", &sum, &t));
    r.artifact("space", Value::from(space.name()));
    r.artifact("n", Value::from(n));
    r.artifact("type_set", Value::Array(res.type_set.iter().map(|l| Value::from(l.name())).collect()));
    r.artifact("parts", Value::Object(parts));
    Ok(())
}

fn classify(r: &mut Report, space: Option<Space>, n: usize, file: &Path) -> Result<(), CommandError> {
    let (t, space) = load_lowered(file, space, n)?;
    let res = Decomposer::new(space, n)?.decompose(&t)?;
    r.line(format!("space: {}, n = {n}", space_text(space)));
    r.line(format!("type: {}", type_text(&res.type_set)));
    r.artifact("space", Value::from(space.name()));
    r.artifact("type_set", Value::Array(res.type_set.iter().map(|l| Value::from(l.name())).collect()));
    Ok(())
}

fn symplectify(r: &mut Report, n: usize, file: &Path) -> Result<(), CommandError> {
    let (t, _) = load_lowered(file, Some(Space::Torsion), n)?;
    let dec = Decomposer::new(Space::Cotorsion, n)?;
    let s = symplectify_torsion(&dec, &t)?;
    r.line(format!("structure tensor S (lowered, n = {n}):"));
    r.line(serde_json::to_string(&json::tensor_to_json(&s)).expect("json"));
    r.check(Check::equal("A2(-S) = T", &a2(&s.neg()), &t));
    r.check(match s.symmetry_violation(0, 1) {
        None => Check::pass("S symmetric in its first two slots"),
        Some(ix) => Check::fail("S symmetric in its first two slots", ix, "asymmetric"),
    });
    r.artifact("structure", json::tensor_to_json(&s));
    Ok(())
}

fn matrices_json(ms: &[fedosov_core::linalg::Matrix<Rational>]) -> Value {
    Value::Array(
        ms.iter()
            .map(|m| Value::Array(m.to_rows().iter().map(|row| Value::Array(row.iter().map(|q| Value::from(q.to_string())).collect())).collect()))
            .collect(),
    )
}

fn describe_algebra(r: &mut Report, p: &LieAlgebraPresentation) {
    r.line(format!("basis: {}", p.basis_labels.join(", ")));
    for (name, ix) in &p.subspaces {
        let labels: Vec<&str> = ix.iter().map(|&i| p.basis_labels[i].as_str()).collect();
        r.line(format!("subspace {name}: {}", labels.join(", ")));
    }
    let d = p.dim();
    for i in 0..d {
        for j in i + 1..d {
            let terms: Vec<String> = (0..d)
                .filter(|&k| !p.structure[i][j][k].is_zero())
                .map(|k| format!("({}) {}", p.structure[i][j][k], p.basis_labels[k]))
                .collect();
            if !terms.is_empty() {
                r.line(format!("[{}, {}] = {}", p.basis_labels[i], p.basis_labels[j], terms.join(" + ")));
            }
        }
    }
}

fn nomizu(r: &mut Report, file: &Path) -> Result<(), CommandError> {
    let m = load_model(file)?;
    let h0 = nomizu_h0(&m)?;
    let alg = nomizu_algebra(&m)?;
    r.line(format!("dim V = {}, dim h0 = {}, dim g0 = {}", m.dim(), h0.len(), alg.dim()));
    describe_algebra(r, &alg);
    r.check(alg.antisymmetry_check());
    r.check(alg.jacobi_check());
    r.artifact("h0", matrices_json(&h0));
    r.artifact("algebra", json::lie_to_json(&alg));
    Ok(())
}

fn transvection(r: &mut Report, file: &Path) -> Result<(), CommandError> {
    let m = load_model(file)?;
    let tv = transvection_algebra(&m)?;
    r.line(format!("dim V = {}, dim h0' = {}, dim g = {}", m.dim(), tv.h0_prime.len(), tv.algebra.dim()));
    describe_algebra(r, &tv.algebra);
    r.check(tv.contained_in_h0.clone());
    r.check(tv.algebra.jacobi_check());
    r.artifact("h0_prime", matrices_json(&tv.h0_prime));
    r.artifact("algebra", json::lie_to_json(&tv.algebra));
    Ok(())
}

fn bianchi(r: &mut Report, file: &Path) -> Result<(), CommandError> {
    let (src, v) = load(file)?;
    let p = if v.get("basis").is_some() {
        json::lie_from_json(&src, &v)?
    } else {
        let m = json::model_from_json(&src, &v)?;
        r.line("classifying the transvection algebra of the model");
        transvection_algebra(&m)?.algebra
    };
    if p.dim() != 3 {
        return Err(src.invalid(format!("Bianchi classification needs a 3-dimensional algebra, got {}", p.dim())).into());
    }
    describe_algebra(r, &p);
    let jac = p.jacobi_check();
    let ok = jac.pass;
    r.check(jac);
    if !ok {
        return Ok(());
    }
    let class = bianchi_classify(&p)?;
    let params: Vec<String> = class.parameters.iter().map(|q| q.to_string()).collect();
    let mut text = format!("Bianchi type {}", class.kind.name());
    if !params.is_empty() {
        text.push_str(&format!(", parameters {{{}}}", params.join(", ")));
    }
    if let Some(inv) = &class.invariant {
        text.push_str(&format!(", invariant tr^2/det = {inv}"));
    }
    r.line(text);
    r.artifact("type", Value::from(class.kind.name()));
    r.artifact("parameters", Value::Array(params.into_iter().map(Value::from).collect()));
    r.artifact("invariant", class.invariant.map_or(Value::Null, |q| Value::from(q.to_string())));
    Ok(())
}

fn structure_for(c: &Chart, xi: &str) -> Result<(Tensor<RationalFunction>, Option<Vec<RationalFunction>>), CommandError> {
    match c.field(xi) {
        Some(_) => {
            let v = c.vector_field(xi)?;
            Ok((c.linear_type_structure(&v)?, Some(v)))
        }
        None => Ok((Tensor::zeros(c.dim(), &[Slot::Cov, Slot::Cov, Slot::Contra]), None)),
    }
}

fn verify_chart(r: &mut Report, file: &Path, suite: Suite, xi: &str) -> Result<(), CommandError> {
    let c = load_chart(file)?;
    let (s, v) = structure_for(&c, xi)?;
    r.line(format!("chart on ({}), {} suite", c.coords().join(", "), match suite {
        Suite::As => "Ambrose-Singer",
        Suite::LinearType => "linear-type",
        Suite::All => "full",
    }));
    if v.is_none() {
        r.line(format!("no field `{xi}`: using S = 0"));
    }
    if matches!(suite, Suite::As | Suite::All) {
        r.extend(verify_as_conditions(&c, &s)?);
    }
    if matches!(suite, Suite::LinearType | Suite::All) {
        let v = v.ok_or_else(|| CommandError::Usage(format!("the linear-type suite needs a vector field `{xi}`")))?;
        for check in verify_linear_type_suite(&c, &v, None)?.checks {
            if !r.checks.iter().any(|k| k.name == check.name) {
                r.check(check);
            }
        }
    }
    Ok(())
}

fn linear_type(r: &mut Report, file: &Path, xi: &str, hamiltonian: Option<&str>) -> Result<(), CommandError> {
    let c = load_chart(file)?;
    let v = c.vector_field(xi)?;
    let s = c.linear_type_structure(&v)?;
    let ham = hamiltonian_oneform(&c, &v)?;
    r.line(format!("S_X Y = omega(X,Y) {xi} - omega(Y,{xi}) X, components [X,Y,out]:"));
    for (ix, f) in s.nonzero() {
        r.line(format!("  S({},{},{}) = {f}", ix[0] + 1, ix[1] + 1, ix[2] + 1));
    }
    let alpha: Vec<String> = ham.alpha.iter().map(|f| f.to_string()).collect();
    r.line(format!("i_{xi} omega = ({})", alpha.join(", ")));
    match xi_perp(&c, &v) {
        Ok(p) => {
            let p: Vec<String> = p.iter().map(|f| f.to_string()).collect();
            r.line(format!("transverse field with omega(perp, {xi}) = 1: ({})", p.join(", ")));
            r.artifact("xi_perp", Value::Array(p.into_iter().map(Value::from).collect()));
        }
        Err(_) => r.line(format!("{xi} vanishes identically; no transverse field")),
    }
    r.check(ham.closed.clone());
    if let Some(h) = hamiltonian {
        let f = parse_rational_function(h, c.coords()).map_err(|e| match e {
            fedosov_core::Error::Parse { column, message } => {
                CommandError::Usage(format!("--hamiltonian: column {column}: {message}"))
            }
            other => CommandError::Usage(format!("--hamiltonian: {other}")),
        })?;
        r.check(verify_hamiltonian(&c, &v, &f)?);
    }
    r.artifact("structure", json::field_components_json(&s));
    r.artifact("alpha", Value::Array(alpha.into_iter().map(Value::from).collect()));
    Ok(())
}

fn point(c: &Chart, at: &str) -> Result<Vec<Rational>, CommandError> {
    json::parse_point(at, c.coords()).map_err(|e| CommandError::Usage(format!("--at: {e}")))
}

fn obstruction(r: &mut Report, file: &Path, at: &str, xi: &str) -> Result<(), CommandError> {
    let c = load_chart(file)?;
    let p = point(&c, at)?;
    let v = c.vector_field(xi)?;
    let s = c.eval_tensor(&c.linear_type_structure(&v)?, &p)?;
    let w = c.eval_tensor(c.omega(), &p)?;
    let ob = metric_obstruction(&s, &w)?;
    let xi_text: Vec<String> = ob.xi.iter().map(|q| q.to_string()).collect();
    r.line(format!("{xi} at the point: ({})", xi_text.join(", ")));
    r.line(format!("symmetric solutions of g(S_X Y, Z) + g(Y, S_X Z) = 0: dimension {}", ob.solutions.len()));
    r.line(format!("determinant of the generic solution: {}", ob.determinant));
    if ob.degenerate {
        r.line("S vanishes at this point; every metric is parallel");
    }
    r.line(format!("verdict: {}", ob.verdict.name()));
    r.artifact("verdict", Value::from(ob.verdict.name()));
    r.artifact("xi", Value::Array(xi_text.into_iter().map(Value::from).collect()));
    r.artifact("solution_dim", Value::from(ob.solutions.len()));
    r.artifact("determinant", Value::from(ob.determinant.to_string()));
    r.artifact("degenerate", Value::from(ob.degenerate));
    Ok(())
}

fn model_point(r: &mut Report, file: &Path, at: &str, xi: &str, output: Option<&Path>) -> Result<(), CommandError> {
    let c = load_chart(file)?;
    let p = point(&c, at)?;
    let (s, _) = structure_for(&c, xi)?;
    let pm = model_at_point(&c, &s, &p)?;
    let model = json::model_to_json(&pm.model);
    r.line(format!("symplectic basis (columns, coordinate components): {:?}", pm.basis));
    r.line(serde_json::to_string(&model).expect("json"));
    r.extend(check_model_axioms(&pm.model));
    r.artifact("basis", matrices_json(std::slice::from_ref(&pm.basis))[0].clone());
    if let Some(path) = output {
        let text = format!("{}\n", serde_json::to_string_pretty(&model).expect("json"));
        std::fs::write(path, text)
            .map_err(|source| InputError::Io { file: path.display().to_string(), source })?;
        r.line(format!("model written to {}", path.display()));
    }
    r.artifact("model", model);
    Ok(())
}

fn examples(r: &mut Report, write: Option<&Path>) -> Result<(), CommandError> {
    for (name, text) in fixtures::ALL {
        r.line(format!("examples/{name} ({} bytes)", text.len()));
        if let Some(dir) = write {
            let path = dir.join(name);
            std::fs::write(&path, text).map_err(|source| InputError::Io { file: path.display().to_string(), source })?;
        }
    }
    r.artifact("fixtures", Value::Array(fixtures::ALL.iter().map(|(n, _)| Value::from(*n)).collect()));
    let search = sign_search(&chart::example1())?;
    r.line("");
    r.line("sign patterns on the published symbols of the first example (k,i,j:sign):");
    let mut rows = Vec::new();
    for cand in &search.candidates {
        let signs: Vec<String> = cand
            .signs
            .iter()
            .map(|(k, i, j, s)| format!("{},{},{}:{}", k + 1, i + 1, j + 1, if *s > 0 { '+' } else { '-' }))
            .collect();
        r.line(format!(
            "  {}  torsion-free {:<5}  preserves omega {:<5}{}",
            signs.join(" "),
            cand.torsion_free,
            cand.preserves_omega,
            if cand.admissible() { "  <- admissible" } else { "" }
        ));
        rows.push(json!({ "signs": signs, "torsion_free": cand.torsion_free, "preserves_omega": cand.preserves_omega }));
    }
    r.artifact("sign_search", Value::Array(rows));
    if let Some(dir) = write {
        r.line(format!("fixtures written to {}", dir.display()));
    }
    Ok(())
}
