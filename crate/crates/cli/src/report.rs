//! Text and JSON renderings of command results.
//!
//! Every number printed in the text form also appears in the JSON form.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use lefrank::cohomology::{CohomologyRing, LefFilReport};
use lefrank::filtration::{CanonicalFiltration, MultiplicityTable, Saturation};
use lefrank::io::{self, Document};
use lefrank::spectral::DegenerationCertificate;
use lefrank::BModule;

pub struct Report {
    text: String,
    json: Value,
}

/// Inputs of the `lefschetz` report.
pub struct LefschetzView<'a> {
    pub n: usize,
    pub hard: bool,
    pub weak: bool,
    pub sat: Saturation,
    /// Rank of the class on `H^1` and `b_1`, when `b_1 > 0`.
    pub h1: Option<(usize, usize)>,
    pub levels: &'a [LefFilReport],
}

fn yes(b: bool) -> &'static str {
    if b {
        "YES"
    } else {
        "NO"
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn weight_row(dims: &BTreeMap<i64, usize>) -> String {
    if dims.is_empty() {
        return "-".into();
    }
    dims.iter().map(|(k, n)| format!("{k}:{n}")).collect::<Vec<_>>().join(" ")
}

fn irreducibles(row: &BTreeMap<usize, usize>) -> String {
    row.iter().map(|(d, c)| format!("L({d}):{c}")).collect::<Vec<_>>().join(" ")
}

fn count_map(row: &BTreeMap<usize, usize>) -> Value {
    Value::Object(row.iter().map(|(d, c)| (d.to_string(), json!(c))).collect())
}

impl Report {
    pub fn text(&self) -> String {
        self.text.clone()
    }

    pub fn json(&self) -> String {
        io::to_pretty(&self.json)
    }

    /// A file emitted as-is in both modes.
    pub fn document(doc: Value) -> Self {
        Report {
            text: io::to_pretty(&doc),
            json: doc,
        }
    }

    pub fn validate(doc: &Document, lie_ring: Option<&CohomologyRing>) -> Self {
        let kind = doc.kind();
        let mut text = String::new();
        let mut j = json!({"valid": true, "kind": kind});
        match doc {
            Document::BModule(v) => {
                let _ = writeln!(text, "valid {kind}: total dim {}", v.total_dim());
                let _ = writeln!(text, "dims {}", weight_row(v.space().dims()));
                j["total_dim"] = json!(v.total_dim());
                j["dims"] = dims_json(v.space().dims());
            }
            Document::GModule(g) => {
                let mults = g.decompose().unwrap_or_default();
                let _ = writeln!(text, "valid {kind}: total dim {}", g.base().total_dim());
                let _ = writeln!(text, "dims {}", weight_row(g.base().space().dims()));
                let _ = writeln!(text, "decomposition {}", irreducibles(&mults));
                j["total_dim"] = json!(g.base().total_dim());
                j["dims"] = dims_json(g.base().space().dims());
                j["multiplicities"] = count_map(&mults);
            }
            Document::Ring(r) => {
                let _ = writeln!(text, "valid {kind}: dim {}, betti {}", r.dim(), join(&r.betti()));
                let classes: Vec<String> = r.classes().keys().cloned().collect();
                if !classes.is_empty() {
                    let _ = writeln!(text, "classes {}", classes.join(" "));
                }
                j["dim"] = json!(r.dim());
                j["betti"] = json!(r.betti());
                j["classes"] = json!(classes);
            }
            Document::Lie(a) => {
                let brackets = a.brackets().len();
                let _ = writeln!(text, "valid {kind}: dim {}, {brackets} nonzero brackets", a.dim());
                j["dim"] = json!(a.dim());
                j["brackets"] = json!(brackets);
                j["symplectic"] = json!(a.symplectic().is_some());
                if let Some(r) = lie_ring {
                    let _ = writeln!(text, "betti {}", join(&r.betti()));
                    j["betti"] = json!(r.betti());
                }
                if a.symplectic().is_some() {
                    let _ = writeln!(text, "symplectic form: closed and nondegenerate");
                }
            }
        }
        Report { text, json: j }
    }

    pub fn filtration(filt: &CanonicalFiltration, table: &MultiplicityTable) -> Self {
        let mut j = io::filtration_to_json(filt, table);
        let levels = io::report_levels(filt);
        if levels.is_empty() {
            j["trivial"] = json!(true);
            j["totals"] = json!({});
            return Report {
                text: "lo=hi=0, trivial\n".into(),
                json: j,
            };
        }
        let mut text = format!("lo={} hi={}\n", filt.lo(), filt.hi());
        let mut rows = Vec::new();
        let mut totals = Map::new();
        for &m in &levels {
            let total = filt.total_dim(m);
            totals.insert(m.to_string(), json!(total));
            rows.push((m.to_string(), total.to_string(), weight_row(&filt.level_dims(m))));
        }
        let w0 = rows.iter().map(|r| r.0.len()).max().unwrap_or(1).max(1);
        let w1 = rows.iter().map(|r| r.1.len()).max().unwrap_or(5).max(5);
        let _ = writeln!(text, "{:<w0$}  {:<w1$}  dims", "m", "total");
        for (m, total, dims) in rows {
            let _ = writeln!(text, "{m:<w0$}  {total:<w1$}  {dims}");
        }
        let _ = writeln!(text, "multiplicities");
        for (m, row) in table.entries() {
            if !row.is_empty() {
                let _ = writeln!(text, "m={m}  {}", irreducibles(row));
            }
        }
        j["totals"] = Value::Object(totals);
        Report { text, json: j }
    }

    pub fn lefschetz(view: LefschetzView<'_>) -> Self {
        let LefschetzView {
            n,
            hard,
            weak,
            sat,
            h1,
            levels,
        } = view;
        let mut text = format!("hard: {}, weak: {}, lo={} hi={}\n", yes(hard), yes(weak), sat.lo, sat.hi);
        let _ = writeln!(text, "n={n}");
        let mut j = json!({"hard": hard, "weak": weak, "lo": sat.lo, "hi": sat.hi, "n": n});
        if let Some((rank, b1)) = h1 {
            let _ = writeln!(text, "class on H^1: rank {rank} of {b1}");
            j["h1"] = json!({"rank": rank, "dim": b1});
        }
        let _ = writeln!(text, "m   onto  full  dual-zero");
        let mut rows = Vec::new();
        for r in levels {
            let _ = writeln!(
                text,
                "{:<3} {:<5} {:<5} {}",
                r.m,
                yes(r.maps_onto),
                yes(r.full_at_m),
                yes(r.zero_at_dual)
            );
            rows.push(json!({
                "m": r.m,
                "maps_onto": r.maps_onto,
                "full_at_m": r.full_at_m,
                "zero_at_dual": r.zero_at_dual,
            }));
        }
        j["levels"] = json!(rows);
        Report { text, json: j }
    }

    pub fn blowup(x: &BModule, ambient: usize, codim: usize, sx: Saturation, n: usize, sm: Saturation) -> Self {
        let big = ambient as i64;
        let small = n as i64;
        let (hard_x, weak_x) = (sx.lo == big && sx.hi == big, sx.hi <= big + 1);
        let (hard_m, weak_m) = (sm.lo == small && sm.hi == small, sm.hi <= small + 1);
        let mut text = format!("blowup: total dim {}, N={ambient}, k={codim}\n", x.total_dim());
        let _ = writeln!(text, "lo={} hi={}", sx.lo, sx.hi);
        let _ = writeln!(text, "hard: {}, weak: {}", yes(hard_x), yes(weak_x));
        let _ = writeln!(
            text,
            "submanifold: n={n}, lo={} hi={}, hard: {}, weak: {}",
            sm.lo,
            sm.hi,
            yes(hard_m),
            yes(weak_m)
        );
        let j = json!({
            "total_dim": x.total_dim(),
            "ambient": ambient,
            "codim": codim,
            "lo": sx.lo,
            "hi": sx.hi,
            "hard": hard_x,
            "weak": weak_x,
            "submanifold": {"n": n, "lo": sm.lo, "hi": sm.hi, "hard": hard_m, "weak": weak_m},
            "module": io::bmodule_to_json(x),
        });
        Report { text, json: j }
    }

    pub fn certificate(c: &DegenerationCertificate) -> Self {
        let mut text = format!("certified: {}\n", yes(c.certified));
        let _ = writeln!(text, "route: {}", c.route.as_str());
        let _ = writeln!(text, "r0={} lo={} hi={}", c.r0, c.lo, c.hi);
        if c.axioms.is_empty() {
            let _ = writeln!(text, "axioms: none");
        } else {
            let _ = writeln!(text, "axioms: {}", c.axioms.join(", "));
        }
        if let Some(t) = &c.total_betti {
            let _ = writeln!(text, "total betti: {}", join(t));
        }
        for r in &c.reason {
            let _ = writeln!(text, "reason: {r}");
        }
        Report {
            text,
            json: io::certificate_to_json(c),
        }
    }

    pub fn decomposition(mults: &BTreeMap<usize, usize>) -> Self {
        let text = if mults.is_empty() {
            "zero module\n".to_string()
        } else {
            format!("{}\n", irreducibles(mults))
        };
        Report {
            text,
            json: json!({"extends": true, "multiplicities": count_map(mults)}),
        }
    }

    pub fn no_extension(v: &BModule) -> Self {
        Report {
            text: format!("no sl(2) structure: total dim {}\n", v.total_dim()),
            json: json!({"extends": false, "total_dim": v.total_dim()}),
        }
    }

    pub fn catalog_list(rows: &[(String, String, String)]) -> Self {
        let width = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
        let mut text = String::new();
        for (name, description, _) in rows {
            let _ = writeln!(text, "{name:<width$}  {description}");
        }
        let j: Vec<Value> = rows
            .iter()
            .map(|(n, d, p)| json!({"name": n, "description": d, "provenance": p}))
            .collect();
        Report { text, json: json!(j) }
    }
}

fn dims_json(dims: &BTreeMap<i64, usize>) -> Value {
    Value::Object(dims.iter().map(|(k, n)| (k.to_string(), json!(n))).collect())
}
