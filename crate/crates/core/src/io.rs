//! JSON file formats.
//!
//! Rationals are strings `"p/q"` (or `"p"`); integers are also accepted on
//! input. Weight, degree and level keys are decimal integer strings, written
//! in ascending numeric order.

use std::collections::BTreeMap;
use std::path::Path;

use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::cohomology::{CohomologyRing, RingBuilder};
use crate::constructions::{chevalley_eilenberg, Bracket, CatalogEntry, CatalogItem, NilpotentLieAlgebra};
use crate::error::IoError;
use crate::filtration::{CanonicalFiltration, MultiplicityTable};
use crate::linalg::{format_rational, parse_rational, MatrixQ, Rational};
use crate::module::{BModule, GModule, GradedSpace, Weight};
use crate::spectral::DegenerationCertificate;

/// A parsed input file.
#[derive(Clone, Debug)]
pub enum Document {
    BModule(BModule),
    GModule(GModule),
    Ring(CohomologyRing),
    Lie(NilpotentLieAlgebra),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::BModule(_) => "b-module",
            Document::GModule(_) => "g-module",
            Document::Ring(_) => "ring",
            Document::Lie(_) => "lie-algebra",
        }
    }
}

fn field(msg: impl Into<String>) -> IoError {
    IoError::Field(msg.into())
}

fn rational(v: &Value) -> Result<Rational, IoError> {
    match v {
        Value::String(s) => Ok(parse_rational(s)?),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(crate::linalg::q(i)),
            None => Err(field(format!("expected an integer or a \"p/q\" string, found {n}"))),
        },
        other => Err(field(format!("expected a rational, found {other}"))),
    }
}

fn int_key(k: &str) -> Result<i64, IoError> {
    let ok = !k.is_empty() && k.trim() == k && k.parse::<i64>().map(|x| x.to_string() == k).unwrap_or(false);
    if ok {
        Ok(k.parse().expect("checked"))
    } else {
        Err(IoError::WeightKey(k.to_string()))
    }
}

fn object<'a>(v: &'a Value, name: &str) -> Result<&'a Map<String, Value>, IoError> {
    v.get(name)
        .ok_or_else(|| field(format!("missing \"{name}\"")))?
        .as_object()
        .ok_or_else(|| field(format!("\"{name}\" must be an object")))
}

fn usize_of(v: &Value, what: &str) -> Result<usize, IoError> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| field(format!("{what} must be a non-negative integer")))
}

fn matrix(v: &Value, what: &str) -> Result<MatrixQ, IoError> {
    let rows = v.as_array().ok_or_else(|| field(format!("{what} must be a list of rows")))?;
    let parsed: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| field(format!("{what}: rows must be lists")))?
                .iter()
                .map(rational)
                .collect()
        })
        .collect::<Result<_, _>>()?;
    let cols = parsed.first().map_or(0, Vec::len);
    Ok(MatrixQ::from_rows(parsed, cols)?)
}

fn weight_maps(v: &Value, name: &str) -> Result<BTreeMap<Weight, MatrixQ>, IoError> {
    let Some(obj) = v.get(name) else {
        return Ok(BTreeMap::new());
    };
    let obj = obj.as_object().ok_or_else(|| field(format!("\"{name}\" must be an object")))?;
    obj.iter()
        .map(|(k, m)| Ok((int_key(k)?, matrix(m, &format!("{name}[{k}]"))?)))
        .collect()
}

fn parse_space(v: &Value) -> Result<GradedSpace, IoError> {
    let dims = object(v, "dims")?;
    let mut out = BTreeMap::new();
    for (k, n) in dims {
        let w = int_key(k)?;
        let n = usize_of(n, &format!("dims[{k}]"))?;
        if n == 0 {
            return Err(crate::error::ModuleError::NonPositiveDim { weight: w }.into());
        }
        out.insert(w, n);
    }
    Ok(GradedSpace::new(out))
}

pub fn parse_bmodule(v: &Value) -> Result<BModule, IoError> {
    let space = parse_space(v)?;
    Ok(BModule::new(space, weight_maps(v, "e")?)?)
}

pub fn parse_gmodule(v: &Value) -> Result<GModule, IoError> {
    let base = parse_bmodule(v)?;
    Ok(GModule::new(base, weight_maps(v, "f")?)?)
}

fn labelled(obj: &Map<String, Value>) -> Result<Vec<(String, Rational)>, IoError> {
    obj.iter().map(|(k, c)| Ok((k.clone(), rational(c)?))).collect()
}

pub fn parse_ring(v: &Value) -> Result<CohomologyRing, IoError> {
    use crate::error::RingError;
    let dim = usize_of(v.get("dim").ok_or_else(|| field("missing \"dim\""))?, "dim")?;
    let betti: Vec<usize> = v
        .get("betti")
        .and_then(Value::as_array)
        .ok_or_else(|| field("\"betti\" must be a list"))?
        .iter()
        .map(|b| usize_of(b, "betti entries"))
        .collect::<Result<_, _>>()?;
    if betti.len() != dim + 1 {
        return Err(RingError::BettiLength {
            expected: dim + 1,
            found: betti.len(),
        }
        .into());
    }
    let basis = object(v, "basis")?;
    let mut labels = vec![Vec::new(); dim + 1];
    for (k, names) in basis {
        let deg = int_key(k)?;
        if deg < 0 || deg as usize > dim {
            return Err(IoError::WeightKey(k.clone()));
        }
        labels[deg as usize] = names
            .as_array()
            .ok_or_else(|| field(format!("basis[{k}] must be a list")))?
            .iter()
            .map(|s| s.as_str().map(str::to_string).ok_or_else(|| field("basis names must be strings")))
            .collect::<Result<_, _>>()?;
    }
    for (deg, (ls, b)) in labels.iter().zip(&betti).enumerate() {
        if ls.len() != *b {
            return Err(RingError::LabelCount {
                degree: deg,
                expected: *b,
                found: ls.len(),
            }
            .into());
        }
    }
    let mut builder = RingBuilder::new(dim, labels)?;
    if let Some(products) = v.get("products") {
        for p in products.as_array().ok_or_else(|| field("\"products\" must be a list"))? {
            let a = p.get("a").and_then(Value::as_str).ok_or_else(|| field("product needs \"a\""))?;
            let b = p.get("b").and_then(Value::as_str).ok_or_else(|| field("product needs \"b\""))?;
            let out = p
                .get("out")
                .and_then(Value::as_object)
                .ok_or_else(|| field("product needs an \"out\" object"))?;
            builder.set_product(a, b, &labelled(out)?)?;
        }
    }
    builder.set_orientation(&labelled(object(v, "orientation")?)?)?;
    if let Some(classes) = v.get("classes") {
        let classes = classes.as_object().ok_or_else(|| field("\"classes\" must be an object"))?;
        for (name, terms) in classes {
            let terms = terms
                .as_object()
                .ok_or_else(|| field(format!("classes[{name}] must be an object")))?;
            builder.add_class(name, labelled(terms)?);
        }
    }
    Ok(builder.build()?)
}

pub fn parse_lie(v: &Value) -> Result<NilpotentLieAlgebra, IoError> {
    let dim = usize_of(v.get("dim").ok_or_else(|| field("missing \"dim\""))?, "dim")?;
    let list = v
        .get("brackets")
        .and_then(Value::as_array)
        .ok_or_else(|| field("\"brackets\" must be a list"))?;
    let mut brackets = Vec::new();
    for b in list {
        let i = usize_of(b.get("i").ok_or_else(|| field("bracket needs \"i\""))?, "i")?;
        let j = usize_of(b.get("j").ok_or_else(|| field("bracket needs \"j\""))?, "j")?;
        let out = b
            .get("out")
            .and_then(Value::as_object)
            .ok_or_else(|| field("bracket needs an \"out\" object"))?;
        let out = out
            .iter()
            .map(|(k, c)| {
                let idx = int_key(k)?;
                if idx < 1 {
                    return Err(IoError::WeightKey(k.clone()));
                }
                Ok((idx as usize, rational(c)?))
            })
            .collect::<Result<_, IoError>>()?;
        brackets.push(Bracket { i, j, out });
    }
    let mut alg = NilpotentLieAlgebra::new(dim, &brackets)?;
    if let Some(form) = v.get("symplectic") {
        let terms = form
            .as_array()
            .ok_or_else(|| field("\"symplectic\" must be a list"))?
            .iter()
            .map(|t| {
                let i = usize_of(t.get("i").ok_or_else(|| field("form term needs \"i\""))?, "i")?;
                let j = usize_of(t.get("j").ok_or_else(|| field("form term needs \"j\""))?, "j")?;
                if i == 0 || j == 0 || i > dim || j > dim || i == j {
                    return Err(field(format!("form term ({i}, {j}) out of range")));
                }
                Ok((i, j, rational(t.get("coeff").ok_or_else(|| field("form term needs \"coeff\""))?)?))
            })
            .collect::<Result<_, IoError>>()?;
        alg = alg.with_symplectic(terms);
    }
    if let Some(p) = v.get("provenance").and_then(Value::as_str) {
        alg = alg.with_provenance(p);
    }
    Ok(alg)
}

/// Parses any supported document, deciding the kind from its keys.
pub fn parse_document(text: &str) -> Result<Document, IoError> {
    let v: Value = serde_json::from_str(text)?;
    if !v.is_object() {
        return Err(IoError::UnknownDocument);
    }
    if v.get("brackets").is_some() {
        Ok(Document::Lie(parse_lie(&v)?))
    } else if v.get("basis").is_some() || v.get("products").is_some() {
        Ok(Document::Ring(parse_ring(&v)?))
    } else if v.get("f").is_some() {
        Ok(Document::GModule(parse_gmodule(&v)?))
    } else if v.get("dims").is_some() {
        Ok(Document::BModule(parse_bmodule(&v)?))
    } else {
        Err(IoError::UnknownDocument)
    }
}

fn rat(x: &Rational) -> Value {
    Value::String(format_rational(x))
}

fn matrix_value(m: &MatrixQ) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(rat).collect()))
            .collect(),
    )
}

fn maps_value(maps: &BTreeMap<Weight, MatrixQ>) -> Value {
    Value::Object(maps.iter().map(|(k, m)| (k.to_string(), matrix_value(m))).collect())
}

pub fn bmodule_to_json(v: &BModule) -> Value {
    json!({
        "dims": Value::Object(v.space().dims().iter().map(|(k, n)| (k.to_string(), json!(n))).collect()),
        "e": maps_value(v.e_maps()),
    })
}

pub fn gmodule_to_json(g: &GModule) -> Value {
    let mut v = bmodule_to_json(g.base());
    v["f"] = maps_value(g.f_maps());
    v
}

fn terms_value(labels: &[String], v: &[Rational]) -> Value {
    Value::Object(
        labels
            .iter()
            .zip(v)
            .filter(|(_, c)| !c.is_zero())
            .map(|(l, c)| (l.clone(), rat(c)))
            .collect(),
    )
}

/// Ring document; products with the unit are implied and omitted, as are
/// zero products and the graded-commutative partner of each listed product.
pub fn ring_to_json(r: &CohomologyRing) -> Value {
    let n = r.dim();
    let labels = r.labels();
    let basis: Map<String, Value> = labels
        .iter()
        .enumerate()
        .filter(|(_, l)| !l.is_empty())
        .map(|(d, l)| (d.to_string(), json!(l)))
        .collect();
    let mut products = Vec::new();
    for p in 1..=n {
        for qd in p..=n - p {
            for i in 0..labels[p].len() {
                let j0 = if p == qd { i } else { 0 };
                for j in j0..labels[qd].len() {
                    let mut x = vec![Rational::zero(); labels[p].len()];
                    x[i] = crate::linalg::q(1);
                    let mut y = vec![Rational::zero(); labels[qd].len()];
                    y[j] = crate::linalg::q(1);
                    let out = r.cup(p, &x, qd, &y);
                    if out.iter().all(Zero::is_zero) {
                        continue;
                    }
                    products.push(json!({
                        "a": labels[p][i],
                        "b": labels[qd][j],
                        "out": terms_value(&labels[p + qd], &out),
                    }));
                }
            }
        }
    }
    let mut doc = json!({
        "dim": n,
        "betti": r.betti(),
        "basis": Value::Object(basis),
        "products": products,
        "orientation": terms_value(&labels[n], r.orientation()),
    });
    if !r.classes().is_empty() {
        doc["classes"] = Value::Object(
            r.classes()
                .iter()
                .map(|(name, (deg, v))| (name.clone(), terms_value(&labels[*deg], v)))
                .collect(),
        );
    }
    doc
}

pub fn lie_to_json(a: &NilpotentLieAlgebra) -> Value {
    let brackets: Vec<Value> = a
        .brackets()
        .into_iter()
        .map(|b| {
            json!({
                "i": b.i,
                "j": b.j,
                "out": Value::Object(b.out.iter().map(|(k, c)| (k.to_string(), rat(c))).collect()),
            })
        })
        .collect();
    let mut doc = json!({"dim": a.dim(), "brackets": brackets});
    if let Some(form) = a.symplectic() {
        doc["symplectic"] = Value::Array(
            form.iter()
                .map(|(i, j, c)| json!({"i": i, "j": j, "coeff": rat(c)}))
                .collect(),
        );
    }
    if let Some(p) = a.provenance() {
        doc["provenance"] = json!(p);
    }
    doc
}

/// Filtration report: jumps, level dimensions per weight, and multiplicities.
pub fn filtration_to_json(filt: &CanonicalFiltration, table: &MultiplicityTable) -> Value {
    let levels = report_levels(filt);
    let dims: Map<String, Value> = levels
        .iter()
        .map(|&m| {
            let row: Map<String, Value> = filt
                .level_dims(m)
                .iter()
                .map(|(k, n)| (k.to_string(), json!(n)))
                .collect();
            (m.to_string(), Value::Object(row))
        })
        .collect();
    let mults: Map<String, Value> = table
        .entries()
        .iter()
        .filter(|(_, row)| !row.is_empty())
        .map(|(m, row)| {
            (
                m.to_string(),
                Value::Object(row.iter().map(|(d, c)| (d.to_string(), json!(c))).collect()),
            )
        })
        .collect();
    json!({
        "lo": filt.lo(),
        "hi": filt.hi(),
        "dims": Value::Object(dims),
        "multiplicities": Value::Object(mults),
    })
}

/// Levels shown in reports: from one below the first jump to the last jump.
pub fn report_levels(filt: &CanonicalFiltration) -> Vec<i64> {
    if filt.module().total_dim() == 0 {
        return Vec::new();
    }
    (filt.lo() - 1..=filt.hi()).collect()
}

pub fn certificate_to_json(c: &DegenerationCertificate) -> Value {
    let mut doc = json!({
        "certified": c.certified,
        "route": c.route.as_str(),
        "r0": c.r0,
        "lo": c.lo,
        "hi": c.hi,
        "axioms": c.axioms,
    });
    if let Some(t) = &c.total_betti {
        doc["total_betti"] = json!(t);
    }
    doc["reason"] = json!(c.reason);
    doc
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

/// Entries from `*.json` files in `dir`; the file stem is the entry name.
/// Files are read in name order; unreadable or malformed files are errors.
pub fn load_user_catalog(dir: &Path) -> Result<Vec<CatalogEntry>, IoError> {
    let mut paths: Vec<_> = std::fs::read_dir(dir)
        .map_err(|e| field(format!("catalog directory {}: {e}", dir.display())))?
        .filter_map(Result::ok)
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    let mut out = Vec::new();
    for path in paths {
        let text = std::fs::read_to_string(&path).map_err(|e| field(format!("{}: {e}", path.display())))?;
        let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default().to_string();
        let (item, provenance) = match parse_document(&text)? {
            Document::Lie(a) => {
                chevalley_eilenberg(&a)?;
                let p = a.provenance().unwrap_or("user catalog file").to_string();
                (CatalogItem::Lie(a), p)
            }
            Document::Ring(r) => {
                r.validate()?;
                (CatalogItem::Ring(r), "user catalog file".to_string())
            }
            other => return Err(field(format!("{}: catalog entries must be rings or Lie algebras, found a {}", path.display(), other.kind()))),
        };
        out.push(CatalogEntry {
            name,
            description: format!("user entry from {}", path.display()),
            provenance,
            item,
        });
    }
    Ok(out)
}
