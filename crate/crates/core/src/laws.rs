//! Executable forms of the structural identities of the canonical filtration.
//!
//! Each check recomputes the filtrations of the modules involved and compares
//! subspaces exactly. An `Err` names the first level and weight that differ.

use std::collections::BTreeMap;

use crate::filtration::{canonical_filtration, is_rank_saturated, CanonicalFiltration, Level};
use crate::linalg::Subspace;
use crate::module::{tensor_subspace, BModule, GradedHom, Weight};

pub type LawResult = Result<(), String>;

fn levels_to_check(filts: &[&CanonicalFiltration]) -> std::ops::RangeInclusive<i64> {
    let lo = filts.iter().map(|f| f.lo()).min().unwrap_or(0);
    let hi = filts.iter().map(|f| f.hi()).max().unwrap_or(0);
    lo - 2..=hi + 2
}

fn compare(what: &str, m: i64, got: &Level, want: &Level) -> LawResult {
    for (k, g) in got {
        let w = want.get(k).cloned().unwrap_or_else(|| Subspace::zero(g.ambient_dim()));
        if *g != w {
            return Err(format!("{what}: level {m}, weight {k}: dim {} vs expected {}", g.dim(), w.dim()));
        }
    }
    for (k, w) in want {
        if !got.contains_key(k) && !w.is_zero() {
            return Err(format!("{what}: level {m}, weight {k} missing"));
        }
    }
    Ok(())
}

/// `(V*)_m^k` is the annihilator of `(V_{-m-1})^{-k}`.
pub fn dual_law(v: &BModule) -> LawResult {
    let fv = canonical_filtration(v);
    let d = v.dual();
    let fd = canonical_filtration(&d);
    for m in levels_to_check(&[&fv]).map(|m| -m).chain(levels_to_check(&[&fd])) {
        let base = fv.level(-m - 1);
        let want: Level = d
            .weights()
            .map(|k| (k, base[&-k].annihilator()))
            .collect();
        compare("dual", m, &fd.level(m), &want)?;
    }
    Ok(())
}

/// `(V ⊕ W)_m = V_m ⊕ W_m` in the block coordinates of the sum.
pub fn direct_sum_law(v: &BModule, w: &BModule) -> LawResult {
    let (fv, fw) = (canonical_filtration(v), canonical_filtration(w));
    let s = v.direct_sum(w);
    let fs = canonical_filtration(&s);
    for m in levels_to_check(&[&fv, &fw]) {
        let (lv, lw) = (fv.level(m), fw.level(m));
        let want: Level = s
            .weights()
            .map(|k| {
                let (dv, dw) = (v.dim(k), w.dim(k));
                let mut vecs = Vec::new();
                if let Some(a) = lv.get(&k) {
                    for b in a.basis() {
                        let mut x = b.clone();
                        x.resize(dv + dw, Default::default());
                        vecs.push(x);
                    }
                }
                if let Some(a) = lw.get(&k) {
                    for b in a.basis() {
                        let mut x = vec![Default::default(); dv];
                        x.extend(b.iter().cloned());
                        vecs.push(x);
                    }
                }
                (k, Subspace::from_vectors(dv + dw, vecs))
            })
            .collect();
        compare("direct sum", m, &fs.level(m), &want)?;
    }
    Ok(())
}

/// `(V ⊗ W)_m = Σ_{i+j=m} V_i ⊗ W_j`.
pub fn tensor_law(v: &BModule, w: &BModule) -> LawResult {
    let (fv, fw) = (canonical_filtration(v), canonical_filtration(w));
    let t = v.tensor(w);
    let ft = canonical_filtration(&t);
    let (vr, wr) = (levels_to_check(&[&fv]), levels_to_check(&[&fw]));
    for m in (vr.start() + wr.start())..=(vr.end() + wr.end()) {
        let want: Level = t
            .weights()
            .map(|k| {
                let mut acc = Subspace::zero(t.dim(k));
                for i in vr.clone() {
                    let part = tensor_subspace(v, w, k, &fv.level(i), &fw.level(m - i));
                    acc = acc.sum(&part).expect("same ambient");
                }
                (k, acc)
            })
            .collect();
        compare("tensor", m, &ft.level(m), &want)?;
    }
    Ok(())
}

/// `(V[k])_{m+k} = V_m` with the same subspaces.
pub fn shift_law(v: &BModule, k: i64) -> LawResult {
    let fv = canonical_filtration(v);
    let fs = canonical_filtration(&v.shift(k));
    for m in levels_to_check(&[&fv]) {
        let want: Level = fv.level(m).into_iter().map(|(w, s)| (w + k, s)).collect();
        compare("shift", m + k, &fs.level(m + k), &want)?;
    }
    Ok(())
}

fn contained(img: &BTreeMap<Weight, Subspace>, target: &Level) -> Option<Weight> {
    img.iter()
        .find(|(k, s)| match target.get(k) {
            Some(t) => !t.contains(s).expect("same ambient"),
            None => !s.is_zero(),
        })
        .map(|(k, _)| *k)
}

/// `φ(V_m) ⊆ W_{m+s}` for a map with weight shift `s` commuting with `e`.
pub fn hom_law(phi: &GradedHom) -> LawResult {
    let fv = canonical_filtration(&phi.source);
    let fw = canonical_filtration(&phi.target);
    for m in levels_to_check(&[&fv]) {
        let img = phi.image(&fv.level(m));
        if let Some(k) = contained(&img, &fw.level(m + phi.shift)) {
            return Err(format!("hom: image of level {m} leaves level {} at weight {k}", m + phi.shift));
        }
    }
    Ok(())
}

/// `V_m = V` iff `e^l: V^{m-l} → V^{m+l}` is onto for all `l ≥ 0`, at
/// every level from below the weights to above them.
pub fn saturation_law(v: &BModule) -> LawResult {
    let f = canonical_filtration(v);
    let (lo, hi) = match (v.space().min_weight(), v.space().max_weight()) {
        (Some(a), Some(b)) => (a - 2, b + 2),
        _ => (-2, 2),
    };
    for m in lo..=hi {
        let by_filtration = f.total_dim(m) == v.total_dim();
        let by_ranks = is_rank_saturated(v, m);
        if by_filtration != by_ranks {
            return Err(format!("saturation at level {m}: filtration says {by_filtration}, ranks say {by_ranks}"));
        }
    }
    Ok(())
}
