//! JSON formats for tensors, models, Lie algebras and charts.
//!
//! Indices in files are 1-based: a component key `"1,2,3"` addresses
//! `t[0][1][2]`. Rational entries are quoted `p` or `p/q` text; chart entries
//! are rational-function text such as `-4/(3*x)`.

use std::fmt;

use fedosov_core::chart::Chart;
use fedosov_core::model::{InfinitesimalModel, LieAlgebraPresentation};
use fedosov_core::scalar::parse_rational_function;
use fedosov_core::{Error as CoreError, Rational, RationalFunction, Scalar, Slot, SymplecticSpace, Tensor};
use serde_json::{Map, Value};
use std::sync::Arc;

/// Problems with an input file. Everything here maps to exit status 2.
#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("{file}: {source}")]
    Io {
        file: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{file}:{line}:{column}: {message}")]
    Syntax { file: String, line: usize, column: usize, message: String },
    #[error("{file}: {message}")]
    Invalid { file: String, message: String },
}

/// An input document: its display name and raw text, kept for error positions.
pub struct Source {
    pub name: String,
    pub text: String,
}

impl Source {
    pub fn new(name: impl Into<String>, text: impl Into<String>) -> Self {
        Source { name: name.into(), text: text.into() }
    }

    pub fn read(path: &std::path::Path) -> Result<Self, InputError> {
        let name = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|source| InputError::Io { file: name.clone(), source })?;
        Ok(Source { name, text })
    }

    pub fn parse(&self) -> Result<Value, InputError> {
        serde_json::from_str(&self.text).map_err(|e| InputError::Syntax {
            file: self.name.clone(),
            line: e.line(),
            column: e.column(),
            message: strip_position(&e.to_string()),
        })
    }

    pub fn invalid(&self, message: impl fmt::Display) -> InputError {
        InputError::Invalid { file: self.name.clone(), message: message.to_string() }
    }

    /// An error inside the string literal `literal`, stored under `key` when
    /// known. `column` is 1-based within the literal.
    fn literal_error(&self, key: Option<&str>, literal: &str, column: usize, message: &str) -> InputError {
        let (line, col) = self.locate(key, literal).unwrap_or((1, 1));
        InputError::Syntax {
            file: self.name.clone(),
            line,
            column: col + column,
            message: format!("in `{literal}`: {message}"),
        }
    }

    /// Line and column of the opening quote of `literal` in the text.
    fn locate(&self, key: Option<&str>, literal: &str) -> Option<(usize, usize)> {
        let encoded = serde_json::to_string(literal).ok()?;
        let text = &self.text;
        let mut found = None;
        if let Some(key) = key {
            let k = serde_json::to_string(key).ok()?;
            let mut from = 0;
            while let Some(pos) = text[from..].find(&k) {
                let after = from + pos + k.len();
                let rest = text[after..].trim_start();
                if let Some(rest) = rest.strip_prefix(':') {
                    let rest_trim = rest.trim_start();
                    if rest_trim.starts_with(&encoded) {
                        found = Some(text.len() - rest_trim.len());
                        break;
                    }
                }
                from = after;
            }
        }
        let offset = found.or_else(|| text.find(&encoded))?;
        let before = &text[..offset];
        let line = before.matches('\n').count() + 1;
        let col = before.rsplit('\n').next().unwrap_or("").chars().count() + 1;
        Some((line, col))
    }
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

fn object<'a>(src: &Source, v: &'a Value, what: &str) -> Result<&'a Map<String, Value>, InputError> {
    v.as_object().ok_or_else(|| src.invalid(format!("{what} must be a JSON object")))
}

fn field<'a>(src: &Source, obj: &'a Map<String, Value>, key: &str, what: &str) -> Result<&'a Value, InputError> {
    obj.get(key).ok_or_else(|| src.invalid(format!("{what} is missing `{key}`")))
}

fn only_keys(src: &Source, obj: &Map<String, Value>, allowed: &[&str], what: &str) -> Result<(), InputError> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(src.invalid(format!("unexpected key `{k}` in {what}"))),
        None => Ok(()),
    }
}

fn string<'a>(src: &Source, v: &'a Value, what: &str) -> Result<&'a str, InputError> {
    v.as_str().ok_or_else(|| src.invalid(format!("{what} must be a quoted string")))
}

fn positive(src: &Source, v: &Value, what: &str) -> Result<usize, InputError> {
    v.as_u64().filter(|&n| n >= 1).map(|n| n as usize).ok_or_else(|| src.invalid(format!("{what} must be a positive integer")))
}

fn rational(src: &Source, key: Option<&str>, text: &str) -> Result<Rational, InputError> {
    text.parse::<Rational>().map_err(|e| match e {
        CoreError::Parse { column, message } => src.literal_error(key, text, column, &message),
        other => src.literal_error(key, text, 1, &other.to_string()),
    })
}

fn rational_function(src: &Source, key: Option<&str>, text: &str, vars: &Arc<[String]>) -> Result<RationalFunction, InputError> {
    parse_rational_function(text, vars).map_err(|e| match e {
        CoreError::Parse { column, message } => src.literal_error(key, text, column, &message),
        other => src.literal_error(key, text, 1, &other.to_string()),
    })
}

/// Parses `"i,j,k"` into 0-based indices, each in `1..=dim`.
fn index_key(src: &Source, key: &str, rank: usize, dim: usize) -> Result<Vec<usize>, InputError> {
    let parts: Vec<&str> = key.split(',').map(str::trim).collect();
    if parts.len() != rank {
        return Err(src.invalid(format!("component key `{key}` should have {rank} indices")));
    }
    parts
        .iter()
        .map(|p| match p.parse::<usize>() {
            Ok(i) if (1..=dim).contains(&i) => Ok(i - 1),
            _ => Err(src.invalid(format!("index `{p}` in `{key}` is outside 1..={dim}"))),
        })
        .collect()
}

fn index_text(ix: &[usize]) -> String {
    ix.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
}

fn slot_name(s: Slot) -> &'static str {
    match s {
        Slot::Cov => "cov",
        Slot::Contra => "contra",
    }
}

fn slots(src: &Source, v: &Value) -> Result<Vec<Slot>, InputError> {
    let arr = v.as_array().ok_or_else(|| src.invalid("`valence` must be an array"))?;
    arr.iter()
        .map(|s| match s.as_str() {
            Some("cov") => Ok(Slot::Cov),
            Some("contra") => Ok(Slot::Contra),
            _ => Err(src.invalid(format!("valence entries are \"cov\" or \"contra\", got {s}"))),
        })
        .collect()
}

fn components(src: &Source, v: &Value, dim: usize, slots: &[Slot]) -> Result<Tensor<Rational>, InputError> {
    let obj = object(src, v, "`components`")?;
    let mut t = Tensor::zeros(dim, slots);
    for (key, val) in obj {
        let ix = index_key(src, key, slots.len(), dim)?;
        let q = rational(src, Some(key), string(src, val, "a component")?)?;
        t.set(&ix, q);
    }
    Ok(t)
}

fn components_json<F: Scalar>(t: &Tensor<F>) -> Value {
    let mut m = Map::new();
    for (ix, v) in t.nonzero() {
        m.insert(index_text(&ix), Value::String(v.to_string()));
    }
    Value::Object(m)
}

/// `{"n": …, "valence": [...], "components": {...}}` over `V = ℚ^{2n}`.
pub fn tensor_from_json(src: &Source, v: &Value) -> Result<Tensor<Rational>, InputError> {
    let obj = object(src, v, "a tensor")?;
    only_keys(src, obj, &["n", "valence", "components"], "a tensor")?;
    let n = positive(src, field(src, obj, "n", "a tensor")?, "`n`")?;
    let slots = slots(src, field(src, obj, "valence", "a tensor")?)?;
    components(src, field(src, obj, "components", "a tensor")?, 2 * n, &slots)
}

pub fn tensor_to_json(t: &Tensor<Rational>) -> Value {
    let mut m = Map::new();
    m.insert("n".into(), Value::from(t.dim() / 2));
    m.insert("valence".into(), Value::Array(t.slots().iter().map(|s| Value::from(slot_name(*s))).collect()));
    m.insert("components".into(), components_json(t));
    Value::Object(m)
}

const VV_V: [Slot; 3] = [Slot::Cov, Slot::Cov, Slot::Contra];
const VVV_V: [Slot; 4] = [Slot::Cov, Slot::Cov, Slot::Cov, Slot::Contra];

/// `{"n": …, "curvature": {...}, "torsion": {...}, "aux": {"S": tensor}}`;
/// curvature and torsion are bare component maps of fixed valence.
pub fn model_from_json(src: &Source, v: &Value) -> Result<InfinitesimalModel, InputError> {
    let obj = object(src, v, "a model")?;
    only_keys(src, obj, &["n", "curvature", "torsion", "aux"], "a model")?;
    let n = positive(src, field(src, obj, "n", "a model")?, "`n`")?;
    let d = 2 * n;
    let curvature = match obj.get("curvature") {
        Some(c) => components(src, c, d, &VVV_V)?,
        None => Tensor::zeros(d, &VVV_V),
    };
    let torsion = match obj.get("torsion") {
        Some(t) => components(src, t, d, &VV_V)?,
        None => Tensor::zeros(d, &VV_V),
    };
    let mut aux = Vec::new();
    if let Some(a) = obj.get("aux") {
        for (name, t) in object(src, a, "`aux`")? {
            let t = tensor_from_json(src, t)?;
            if t.dim() != d {
                return Err(src.invalid(format!("auxiliary tensor `{name}` has n = {}, model has n = {n}", t.dim() / 2)));
            }
            aux.push((name.clone(), t));
        }
    }
    InfinitesimalModel::new(SymplecticSpace::new(n), curvature, torsion, aux).map_err(|e| src.invalid(e))
}

pub fn model_to_json(m: &InfinitesimalModel) -> Value {
    let mut obj = Map::new();
    obj.insert("n".into(), Value::from(m.space().half_dim()));
    obj.insert("curvature".into(), components_json(m.curvature()));
    obj.insert("torsion".into(), components_json(m.torsion()));
    let mut aux = Map::new();
    for (name, t) in m.aux() {
        aux.insert(name.clone(), tensor_to_json(t));
    }
    obj.insert("aux".into(), Value::Object(aux));
    Value::Object(obj)
}

/// `{"basis": [...], "brackets": {"[i,j]": {"k": "p/q"}}, "subspaces": {...}}`.
pub fn lie_from_json(src: &Source, v: &Value) -> Result<LieAlgebraPresentation, InputError> {
    let obj = object(src, v, "a Lie algebra")?;
    only_keys(src, obj, &["basis", "brackets", "subspaces"], "a Lie algebra")?;
    let labels: Vec<String> = field(src, obj, "basis", "a Lie algebra")?
        .as_array()
        .ok_or_else(|| src.invalid("`basis` must be an array of labels"))?
        .iter()
        .map(|l| string(src, l, "a basis label").map(str::to_string))
        .collect::<Result<_, _>>()?;
    let d = labels.len();
    if d == 0 {
        return Err(src.invalid("`basis` is empty"));
    }
    let mut c = vec![vec![vec![Rational::zero(); d]; d]; d];
    if let Some(b) = obj.get("brackets") {
        for (key, out) in object(src, b, "`brackets`")? {
            let inner = key
                .trim()
                .strip_prefix('[')
                .and_then(|k| k.strip_suffix(']'))
                .ok_or_else(|| src.invalid(format!("bracket key `{key}` should look like \"[i,j]\"")))?;
            let ij = index_key(src, inner, 2, d)?;
            let (i, j) = (ij[0], ij[1]);
            for (k, val) in object(src, out, "a bracket value")? {
                let k = index_key(src, k, 1, d)?[0];
                let q = rational(src, None, string(src, val, "a structure constant")?)?;
                if i == j && !q.is_zero() {
                    return Err(src.invalid(format!("bracket {key} of a basis element with itself must vanish")));
                }
                c[j][i][k] = -q.clone();
                c[i][j][k] = q;
            }
        }
    }
    let mut p = LieAlgebraPresentation::new(labels, c).map_err(|e| src.invalid(e))?;
    if let Some(s) = obj.get("subspaces") {
        for (name, ix) in object(src, s, "`subspaces`")? {
            let arr = ix.as_array().ok_or_else(|| src.invalid(format!("subspace `{name}` must be an index array")))?;
            let ix = arr
                .iter()
                .map(|i| match i.as_u64() {
                    Some(i) if (1..=d as u64).contains(&i) => Ok(i as usize - 1),
                    _ => Err(src.invalid(format!("subspace `{name}` has an index outside 1..={d}"))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            p.subspaces.push((name.clone(), ix));
        }
    }
    Ok(p)
}

pub fn lie_to_json(p: &LieAlgebraPresentation) -> Value {
    let d = p.dim();
    let mut brackets = Map::new();
    for i in 0..d {
        for j in i + 1..d {
            let mut out = Map::new();
            for k in 0..d {
                let c = &p.structure[i][j][k];
                if !c.is_zero() {
                    out.insert((k + 1).to_string(), Value::String(c.to_string()));
                }
            }
            if !out.is_empty() {
                brackets.insert(format!("[{},{}]", i + 1, j + 1), Value::Object(out));
            }
        }
    }
    let mut subspaces = Map::new();
    for (name, ix) in &p.subspaces {
        subspaces.insert(name.clone(), Value::Array(ix.iter().map(|i| Value::from(i + 1)).collect()));
    }
    let mut obj = Map::new();
    obj.insert("basis".into(), Value::Array(p.basis_labels.iter().cloned().map(Value::String).collect()));
    obj.insert("brackets".into(), Value::Object(brackets));
    obj.insert("subspaces".into(), Value::Object(subspaces));
    Value::Object(obj)
}

/// Chart files: `coords`, a sparse `omega` (the entry `"i,j"` implies
/// `"j,i"` by antisymmetry), sparse `christoffel` keyed `"k,i,j"` for
/// `Γᵏᵢⱼ`, and `fields` given as component arrays (vector fields) or as
/// `{"valence", "components"}` objects.
pub fn chart_from_json(src: &Source, v: &Value) -> Result<Chart, InputError> {
    let obj = object(src, v, "a chart")?;
    only_keys(src, obj, &["name", "coords", "omega", "christoffel", "fields", "excluded_locus"], "a chart")?;
    let coords: Vec<String> = field(src, obj, "coords", "a chart")?
        .as_array()
        .ok_or_else(|| src.invalid("`coords` must be an array of identifiers"))?
        .iter()
        .map(|c| string(src, c, "a coordinate").map(str::to_string))
        .collect::<Result<_, _>>()?;
    let d = coords.len();
    if d == 0 || d % 2 == 1 {
        return Err(src.invalid(format!("a symplectic chart needs an even number of coordinates, got {d}")));
    }
    let vars: Arc<[String]> = coords.clone().into();
    let mut omega: Tensor<RationalFunction> = Tensor::zeros(d, &[Slot::Cov, Slot::Cov]);
    let mut given = vec![vec![false; d]; d];
    for (key, val) in object(src, field(src, obj, "omega", "a chart")?, "`omega`")? {
        let ix = index_key(src, key, 2, d)?;
        let f = rational_function(src, Some(key), string(src, val, "an omega entry")?, &vars)?;
        let (i, j) = (ix[0], ix[1]);
        if given[j][i] && *omega.get(&[i, j]) != f {
            return Err(src.invalid(format!("omega entries ({},{}) and ({},{}) are not antisymmetric", i + 1, j + 1, j + 1, i + 1)));
        }
        if i == j && !f.is_zero() {
            return Err(src.invalid(format!("omega has a nonzero diagonal entry at `{key}`")));
        }
        given[i][j] = true;
        omega.set(&[j, i], -f.clone());
        omega.set(&[i, j], f);
    }
    let mut conn: Tensor<RationalFunction> = Tensor::zeros(d, &VV_V);
    if let Some(ch) = obj.get("christoffel") {
        for (key, val) in object(src, ch, "`christoffel`")? {
            let ix = index_key(src, key, 3, d)?;
            let f = rational_function(src, Some(key), string(src, val, "a Christoffel symbol")?, &vars)?;
            conn.set(&[ix[1], ix[2], ix[0]], f);
        }
    }
    let mut chart = Chart::new(coords, omega, conn).map_err(|e| src.invalid(e))?;
    if let Some(fs) = obj.get("fields") {
        for (name, f) in object(src, fs, "`fields`")? {
            let t = match f {
                Value::Array(items) => {
                    if items.len() != d {
                        return Err(src.invalid(format!("vector field `{name}` needs {d} components")));
                    }
                    let comps = items
                        .iter()
                        .map(|c| rational_function(src, None, string(src, c, "a field component")?, &vars))
                        .collect::<Result<Vec<_>, _>>()?;
                    Tensor::from_fn(d, &[Slot::Contra], |ix| comps[ix[0]].clone())
                }
                Value::Object(o) => {
                    only_keys(src, o, &["valence", "components"], "a tensor field")?;
                    let slots = slots(src, field(src, o, "valence", "a tensor field")?)?;
                    let mut t = Tensor::zeros(d, &slots);
                    for (key, val) in object(src, field(src, o, "components", "a tensor field")?, "`components`")? {
                        let ix = index_key(src, key, slots.len(), d)?;
                        t.set(&ix, rational_function(src, Some(key), string(src, val, "a component")?, &vars)?);
                    }
                    t
                }
                _ => return Err(src.invalid(format!("field `{name}` must be an array or an object"))),
            };
            chart = chart.with_field(name.clone(), t).map_err(|e| src.invalid(e))?;
        }
    }
    if let Some(loc) = obj.get("excluded_locus") {
        chart = chart.with_excluded_locus(string(src, loc, "`excluded_locus`")?);
    }
    Ok(chart)
}

pub fn chart_to_json(c: &Chart) -> Value {
    let d = c.dim();
    let mut omega = Map::new();
    for i in 0..d {
        for j in i + 1..d {
            let f = c.omega().get(&[i, j]);
            if !f.is_zero() {
                omega.insert(index_text(&[i, j]), Value::String(f.to_string()));
            }
        }
    }
    let mut christoffel = Map::new();
    for k in 0..d {
        for i in 0..d {
            for j in 0..d {
                let g = c.christoffel(k, i, j);
                if !g.is_zero() {
                    christoffel.insert(index_text(&[k, i, j]), Value::String(g.to_string()));
                }
            }
        }
    }
    let mut fields = Map::new();
    for (name, t) in c.fields() {
        let v = if t.slots() == [Slot::Contra] {
            Value::Array(t.data().iter().map(|f| Value::String(f.to_string())).collect())
        } else {
            let mut o = Map::new();
            o.insert("valence".into(), Value::Array(t.slots().iter().map(|s| Value::from(slot_name(*s))).collect()));
            o.insert("components".into(), components_json(t));
            Value::Object(o)
        };
        fields.insert(name.clone(), v);
    }
    let mut obj = Map::new();
    obj.insert("coords".into(), Value::Array(c.coords().iter().cloned().map(Value::String).collect()));
    obj.insert("omega".into(), Value::Object(omega));
    obj.insert("christoffel".into(), Value::Object(christoffel));
    obj.insert("fields".into(), Value::Object(fields));
    if let Some(loc) = c.excluded_locus() {
        obj.insert("excluded_locus".into(), Value::String(loc.into()));
    }
    Value::Object(obj)
}

/// A (1,2) or higher tensor field as a sparse component map.
pub fn field_components_json(t: &Tensor<RationalFunction>) -> Value {
    components_json(t)
}

/// A point given as `x=1,y=0` (any order) or positionally as `1,0`.
pub fn parse_point(text: &str, coords: &[String]) -> Result<Vec<Rational>, String> {
    let parts: Vec<&str> = text.split(',').map(str::trim).filter(|p| !p.is_empty()).collect();
    if parts.len() != coords.len() {
        return Err(format!("point `{text}` needs {} coordinates", coords.len()));
    }
    let mut out: Vec<Option<Rational>> = vec![None; coords.len()];
    for (pos, p) in parts.iter().enumerate() {
        let (idx, val) = match p.split_once('=') {
            Some((name, val)) => {
                let name = name.trim();
                let i = coords.iter().position(|c| c == name).ok_or_else(|| format!("unknown coordinate `{name}`"))?;
                (i, val.trim())
            }
            None => (pos, *p),
        };
        let q = val.parse::<Rational>().map_err(|e| format!("bad value `{val}`: {e}"))?;
        if out[idx].replace(q).is_some() {
            return Err(format!("coordinate `{}` given twice", coords[idx]));
        }
    }
    Ok(out.into_iter().map(|q| q.expect("all assigned")).collect())
}
