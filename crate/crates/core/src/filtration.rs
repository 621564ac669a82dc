//! The canonical filtration of a `b`-module.
//!
//! Every finite-dimensional `b`-module `V` carries a unique exhaustive
//! filtration `… ⊆ V_{m-1} ⊆ V_m ⊆ …` by `b`-submodules such that each
//! shifted graded piece `(V_m / V_{m-1})[-m]` extends to an `sl(2)`-module.
//!
//! [`canonical_filtration`] computes `V_m` as the largest `e`-closed graded
//! subspace `W` for which `e^l: W^{m-l} → W^{m+l}` is onto for all `l ≥ 0`,
//! by shrinking `W = V` until nothing changes. [`filtration_dims`] computes
//! the same dimensions a second way, from the ranks of the powers of `e`;
//! [`check_axioms`] verifies a candidate filtration against the defining
//! properties without reusing either computation.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::error::FiltrationError;
use crate::linalg::{q, MatrixQ, Rational, Subspace};
use crate::module::{decompose_weights, BModule, GModule, GradedSpace, Weight};

/// One filtration step: a subspace of `V^k` for every weight `k` of the module.
pub type Level = BTreeMap<Weight, Subspace>;

/// A filtration of a [`BModule`], stored for the levels where it can change.
///
/// Outside the stored range the filtration is constant: zero below, the
/// whole module above.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalFiltration {
    module: BModule,
    levels: BTreeMap<i64, Level>,
    lo: i64,
    hi: i64,
}

impl CanonicalFiltration {
    /// Wraps arbitrary per-level subspaces, e.g. a deliberately wrong
    /// candidate to feed to [`check_axioms`]. Missing weights in a level
    /// count as zero.
    pub fn from_levels(module: BModule, levels: BTreeMap<i64, Level>) -> Self {
        let levels: BTreeMap<i64, Level> = levels
            .into_iter()
            .map(|(m, lvl)| {
                let full: Level = module
                    .weights()
                    .map(|k| {
                        let s = lvl.get(&k).cloned().unwrap_or_else(|| Subspace::zero(module.dim(k)));
                        (k, s)
                    })
                    .collect();
                (m, full)
            })
            .collect();
        let total = module.total_dim();
        let dim_of = |lvl: &Level| lvl.values().map(Subspace::dim).sum::<usize>();
        let (lo, hi) = if total == 0 {
            (0, 0)
        } else {
            let lo = levels
                .iter()
                .find(|(_, l)| dim_of(l) > 0)
                .map(|(&m, _)| m)
                .unwrap_or_else(|| levels.keys().next_back().map_or(0, |m| m + 1));
            let hi = levels
                .iter()
                .find(|(_, l)| dim_of(l) == total)
                .map(|(&m, _)| m)
                .unwrap_or_else(|| levels.keys().next_back().map_or(0, |m| m + 1));
            (lo, hi)
        };
        CanonicalFiltration {
            module,
            levels,
            lo,
            hi,
        }
    }

    pub fn module(&self) -> &BModule {
        &self.module
    }

    /// Smallest `m` with `V_m ≠ 0` (0 for the zero module).
    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Smallest `m` with `V_m = V` (0 for the zero module).
    pub fn hi(&self) -> i64 {
        self.hi
    }

    /// Levels that are explicitly stored, ascending.
    pub fn stored_levels(&self) -> impl Iterator<Item = i64> + '_ {
        self.levels.keys().copied()
    }

    /// `V_m`, extended by zero below and by `V` above the stored range.
    pub fn level(&self, m: i64) -> Level {
        if let Some(l) = self.levels.get(&m) {
            return l.clone();
        }
        let below = self.levels.keys().next().is_none_or(|&first| m < first);
        self.module
            .weights()
            .map(|k| {
                let n = self.module.dim(k);
                let s = if below && !self.levels.is_empty() {
                    Subspace::zero(n)
                } else {
                    Subspace::full(n)
                };
                (k, s)
            })
            .collect()
    }

    /// `dim (V_m ∩ V^k)` for every weight with a nonzero intersection.
    pub fn level_dims(&self, m: i64) -> BTreeMap<Weight, usize> {
        self.level(m)
            .into_iter()
            .map(|(k, s)| (k, s.dim()))
            .filter(|&(_, d)| d > 0)
            .collect()
    }

    pub fn total_dim(&self, m: i64) -> usize {
        self.level(m).values().map(Subspace::dim).sum()
    }

    /// `V_m / V_{m-1}` as a `b`-module, weights not yet shifted.
    pub fn graded_quotient(&self, m: i64) -> BModule {
        self.module.subquotient(&self.level(m - 1), &self.level(m))
    }

    /// `(V_m / V_{m-1})[-m]` with its unique `sl(2)`-extension.
    pub fn graded_piece(&self, m: i64) -> Result<GModule, FiltrationError> {
        let piece = self.graded_quotient(m).shift(-m);
        try_extend_to_g(&piece).ok_or(FiltrationError::NoGExtension { level: m })
    }
}

/// Levels scanned by the algorithm: `min weight - 1 ..= max weight + 1`.
fn level_range(v: &BModule) -> Option<(i64, i64)> {
    let lo = v.space().min_weight()?;
    let hi = v.space().max_weight()?;
    Some((lo - 1, hi + 1))
}

/// Computes the canonical filtration.
pub fn canonical_filtration(v: &BModule) -> CanonicalFiltration {
    let Some((first, last)) = level_range(v) else {
        return CanonicalFiltration::from_levels(v.clone(), BTreeMap::new());
    };
    let levels = (first..=last).map(|m| (m, saturated_submodule(v, m))).collect();
    CanonicalFiltration::from_levels(v.clone(), levels)
}

/// Largest `e`-closed graded subspace `W` with `e^l: W^{m-l} → W^{m+l}` onto
/// for every `l ≥ 0`.
///
/// Starting from `W = V`, alternately (a) replace `W^k` by
/// `W^k ∩ e^{-1}(W^{k+2})`, descending in `k`, and (b) replace `W^{m+l}` by
/// `e^l(W^{m-l})`. Both steps keep every submodule with the property, so the
/// decreasing sequence stops exactly at the largest one.
pub fn saturated_submodule(v: &BModule, m: i64) -> Level {
    let mut w: Level = v.weights().map(|k| (k, Subspace::full(v.dim(k)))).collect();
    let Some(top) = v.space().max_weight() else {
        return w;
    };
    let powers: BTreeMap<i64, MatrixQ> = (1..)
        .map(|l| l as i64)
        .take_while(|&l| m + l <= top)
        .filter(|&l| v.dim(m + l) > 0)
        .map(|l| (l, v.e_power(m - l, l as usize)))
        .collect();
    loop {
        let mut changed = false;
        let weights: Vec<Weight> = v.weights().rev().collect();
        for k in weights {
            if v.dim(k + 2) == 0 {
                continue;
            }
            let pre = v.e_at(k).preimage(&w[&(k + 2)]).expect("graded shapes");
            let next = w[&k].intersect(&pre).expect("same ambient");
            if next.dim() < w[&k].dim() {
                w.insert(k, next);
                changed = true;
            }
        }
        for (&l, power) in &powers {
            let source = w
                .get(&(m - l))
                .cloned()
                .unwrap_or_else(|| Subspace::zero(v.dim(m - l)));
            let image = power.image_of(&source).expect("graded shapes");
            let next = w[&(m + l)].intersect(&image).expect("same ambient");
            if next.dim() < w[&(m + l)].dim() {
                w.insert(m + l, next);
                changed = true;
            }
        }
        if !changed {
            return w;
        }
    }
}

/// Multiplicities `c[m][d]` of `L(d)` in `(V_m / V_{m-1})[-m]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiplicityTable {
    entries: BTreeMap<i64, BTreeMap<usize, usize>>,
}

impl MultiplicityTable {
    pub fn get(&self, m: i64, d: usize) -> usize {
        self.entries.get(&m).and_then(|r| r.get(&d)).copied().unwrap_or(0)
    }

    /// Nonzero entries, keyed by level then highest weight.
    pub fn entries(&self) -> &BTreeMap<i64, BTreeMap<usize, usize>> {
        &self.entries
    }

    pub fn row(&self, m: i64) -> BTreeMap<usize, usize> {
        self.entries.get(&m).cloned().unwrap_or_default()
    }

    /// Highest weights occurring in level `m`.
    pub fn highest_weights(&self, m: i64) -> BTreeSet<usize> {
        self.row(m).into_keys().collect()
    }

    /// `Σ c[m][d]·(d+1)`.
    pub fn total_dim(&self) -> usize {
        self.entries
            .values()
            .flat_map(|r| r.iter().map(|(&d, &c)| c * (d + 1)))
            .sum()
    }

    /// `dim (V_m)^k = Σ_{m' ≤ m} Σ_{d ≥ |k - m'|, d ≡ k - m' (2)} c[m'][d]`.
    pub fn level_dims(&self, m: i64) -> BTreeMap<Weight, usize> {
        let mut out: BTreeMap<Weight, usize> = BTreeMap::new();
        for (&level, row) in self.entries.range(..=m) {
            for (&d, &c) in row {
                let d = d as i64;
                for j in 0..=d {
                    *out.entry(level - d + 2 * j).or_default() += c;
                }
            }
        }
        out
    }

    pub fn level_total(&self, m: i64) -> usize {
        self.level_dims(m).values().sum()
    }
}

/// Multiplicity table from ranks alone. With `r(i, j) = rank(e^i: V^j → V^{j+2i})`
/// and `r(0, j) = dim V^j`,
/// `c[m][d] = r(d, m-d) - r(d+1, m-d) - r(d+1, m-d-2) + r(d+2, m-d-2)`.
pub fn filtration_dims(v: &BModule) -> Result<MultiplicityTable, FiltrationError> {
    let (Some(lo), Some(hi)) = (v.space().min_weight(), v.space().max_weight()) else {
        return Ok(MultiplicityTable::default());
    };
    let mut cache: BTreeMap<(usize, i64), usize> = BTreeMap::new();
    let mut r = |i: usize, j: i64| -> i64 {
        *cache.entry((i, j)).or_insert_with(|| v.e_rank(i, j)) as i64
    };
    let mut entries = BTreeMap::new();
    let max_d = ((hi - lo) / 2) as usize;
    for m in lo..=hi {
        let mut row = BTreeMap::new();
        for d in 0..=max_d {
            let di = d as i64;
            if m - di < lo || m + di > hi {
                continue;
            }
            let a = m - di;
            let value = r(d, a) - r(d + 1, a) - r(d + 1, a - 2) + r(d + 2, a - 2);
            if value < 0 {
                return Err(FiltrationError::NegativeMultiplicity {
                    level: m,
                    highest_weight: di,
                    value,
                });
            }
            if value > 0 {
                row.insert(d, value as usize);
            }
        }
        if !row.is_empty() {
            entries.insert(m, row);
        }
    }
    Ok(MultiplicityTable { entries })
}

/// Canonical filtration together with the rank-formula table, after checking
/// that both give the same dimension at every level and weight.
pub fn verified_filtration(
    v: &BModule,
) -> Result<(CanonicalFiltration, MultiplicityTable), FiltrationError> {
    let filt = canonical_filtration(v);
    let table = filtration_dims(v)?;
    for m in filt.stored_levels() {
        let a = filt.level_dims(m);
        let b = table.level_dims(m);
        for k in a.keys().chain(b.keys()) {
            let (x, y) = (a.get(k).copied().unwrap_or(0), b.get(k).copied().unwrap_or(0));
            if x != y {
                return Err(FiltrationError::CrossCheck {
                    level: m,
                    weight: *k,
                    fixed_point: x,
                    formula: y,
                });
            }
        }
    }
    Ok((filt, table))
}

/// Whether `e^l: V^{m-l} → V^{m+l}` is onto for every `l ≥ 0`, by ranks.
pub fn is_rank_saturated(v: &BModule, m: i64) -> bool {
    let Some(top) = v.space().max_weight() else {
        return true;
    };
    (0..)
        .take_while(|&l| m + l <= top)
        .all(|l| v.e_rank(l as usize, m - l) == v.dim(m + l))
}

/// Jump indices of the canonical filtration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Saturation {
    pub lo: i64,
    pub hi: i64,
}

/// `(lo, hi)`: `hi` is found by direct rank checks, `lo` from the
/// filtration, and the filtration's `hi` must agree with the rank answer.
pub fn saturation_level(v: &BModule) -> Result<Saturation, FiltrationError> {
    let filt = canonical_filtration(v);
    saturation_from(v, &filt)
}

pub(crate) fn saturation_from(
    v: &BModule,
    filt: &CanonicalFiltration,
) -> Result<Saturation, FiltrationError> {
    let Some((first, last)) = level_range(v) else {
        return Ok(Saturation { lo: 0, hi: 0 });
    };
    let hi = (first..=last)
        .find(|&m| is_rank_saturated(v, m))
        .expect("saturated at the top weight");
    if hi != filt.hi() {
        return Err(FiltrationError::SaturationMismatch {
            from_ranks: hi,
            from_filtration: filt.hi(),
        });
    }
    Ok(Saturation { lo: filt.lo(), hi })
}

/// The unique `sl(2)`-structure extending `v`, if there is one.
///
/// Built from primitive vectors: for `w ≤ 0` the primitives of weight `w` are
/// `ker(e^{1-w}) ∩ V^w`, and the strings `p, ep, …, e^{-w}p` must form a
/// basis of every weight space. On such a string `f(e^i p) = i(d-i+1) e^{i-1}p`
/// with `d = -w`. The result is checked against `ef - fe = h` before it is
/// returned.
pub fn try_extend_to_g(v: &BModule) -> Option<GModule> {
    if v.total_dim() == 0 {
        return Some(GModule::new_unchecked(v.clone(), BTreeMap::new()));
    }
    // (lowest weight, vector) for every primitive basis vector.
    let mut primitives: Vec<(Weight, Vec<Rational>)> = Vec::new();
    for w in v.weights().filter(|&w| w <= 0) {
        let p = (1 - w) as usize;
        let ker = v.e_power(w, p).kernel_basis();
        for b in ker.basis() {
            primitives.push((w, b.clone()));
        }
    }
    // String basis at every weight: (primitive index, position i).
    let mut string_basis: BTreeMap<Weight, Vec<(usize, usize)>> = BTreeMap::new();
    let mut columns: BTreeMap<Weight, Vec<Vec<Rational>>> = BTreeMap::new();
    for (idx, (w, p)) in primitives.iter().enumerate() {
        let d = (-w) as usize;
        let mut cur = p.clone();
        for i in 0..=d {
            let k = w + 2 * i as i64;
            if i > 0 {
                cur = v.e_at(k - 2).apply(&cur).expect("graded shapes");
            }
            string_basis.entry(k).or_default().push((idx, i));
            columns.entry(k).or_default().push(cur.clone());
        }
    }
    let mut change = BTreeMap::new();
    for k in v.weights() {
        let cols = columns.remove(&k).unwrap_or_default();
        if cols.len() != v.dim(k) {
            return None;
        }
        let b = MatrixQ::from_columns(&cols, v.dim(k)).expect("lengths");
        if b.rank() != v.dim(k) {
            return None;
        }
        change.insert(k, b);
    }
    let mut f = BTreeMap::new();
    for k in v.weights() {
        if v.dim(k - 2) == 0 {
            continue;
        }
        // f in string coordinates, then conjugated back: f_k B_k = B_{k-2} F_k.
        let src = &string_basis[&k];
        let tgt = &string_basis[&(k - 2)];
        let mut fs = MatrixQ::zeros(tgt.len(), src.len());
        for (col, &(idx, i)) in src.iter().enumerate() {
            if i == 0 {
                continue;
            }
            let d = -primitives[idx].0;
            let row = tgt
                .iter()
                .position(|&(j, pos)| j == idx && pos == i - 1)
                .expect("string continues downward");
            let i = i as i64;
            fs.set(row, col, q(i * (d - i + 1)));
        }
        let rhs = change[&(k - 2)].mul(&fs).expect("shapes");
        let fk_t = change[&k]
            .transpose()
            .solve(&rhs.transpose())
            .expect("shapes")
            .expect("change of basis is invertible");
        f.insert(k, fk_t.transpose());
    }
    GModule::new(v.clone(), f).ok()
}

/// `sl(2)`-extension by solving `e f_k - f_{k+2} e = k·Id` for all weights
/// at once as one linear system in the entries of `f`.
///
/// Independent of [`try_extend_to_g`]; used by [`check_axioms`].
pub fn solve_f_by_linear_system(v: &BModule) -> Option<GModule> {
    let mut offsets = BTreeMap::new();
    let mut n_vars = 0;
    for k in v.weights() {
        let rows = v.dim(k - 2);
        if rows > 0 {
            offsets.insert(k, n_vars);
            n_vars += rows * v.dim(k);
        }
    }
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut rhs: Vec<Rational> = Vec::new();
    for k in v.weights() {
        let n = v.dim(k);
        let e_below = v.e_at(k - 2);
        let e_here = v.e_at(k);
        for i in 0..n {
            for j in 0..n {
                let mut row = vec![Rational::zero(); n_vars];
                // (e_{k-2} f_k)[i][j] = Σ_a e_{k-2}[i][a] f_k[a][j]
                if let Some(&off) = offsets.get(&k) {
                    for a in 0..v.dim(k - 2) {
                        let c = e_below.get(i, a);
                        if !c.is_zero() {
                            row[off + a * n + j] += c;
                        }
                    }
                }
                // (f_{k+2} e_k)[i][j] = Σ_b f_{k+2}[i][b] e_k[b][j]
                if let Some(&off) = offsets.get(&(k + 2)) {
                    let cols = v.dim(k + 2);
                    for b in 0..cols {
                        let c = e_here.get(b, j);
                        if !c.is_zero() {
                            row[off + i * cols + b] -= c;
                        }
                    }
                }
                rows.push(row);
                rhs.push(if i == j { q(k) } else { Rational::zero() });
            }
        }
    }
    let f = if n_vars == 0 {
        if rhs.iter().any(|x| !x.is_zero()) {
            return None;
        }
        BTreeMap::new()
    } else {
        let a = MatrixQ::from_rows(rows, n_vars).expect("row lengths");
        let b = MatrixQ::from_columns(&[rhs], a.rows()).expect("lengths");
        let sol = a.solve(&b).expect("shapes")?;
        let sol = sol.column(0);
        offsets
            .iter()
            .map(|(&k, &off)| {
                let (r, c) = (v.dim(k - 2), v.dim(k));
                (k, MatrixQ::new(r, c, sol[off..off + r * c].to_vec()).expect("block"))
            })
            .collect()
    };
    GModule::new(v.clone(), f).ok()
}

/// The first axiom a candidate filtration violates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    /// The lowest stored level is not zero.
    NotBoundedBelow { level: i64 },
    /// The highest stored level is not the whole module.
    NotBoundedAbove { level: i64 },
    NotNested { level: i64, weight: Weight },
    NotSubmodule { level: i64, weight: Weight },
    NoGExtension { level: i64 },
    /// A stored subspace has the wrong ambient dimension.
    Shape { level: i64, weight: Weight },
}

/// Checks the four defining properties of the canonical filtration:
/// bounded below and above, every step a `b`-submodule, and every shifted
/// graded piece extending to an `sl(2)`-module (found by a linear solve).
/// Nesting of consecutive levels is checked as well.
pub fn check_axioms(v: &BModule, filt: &CanonicalFiltration) -> Result<(), AxiomViolation> {
    let levels: Vec<i64> = filt.stored_levels().collect();
    if v.total_dim() == 0 {
        return Ok(());
    }
    let (Some(&first), Some(&last)) = (levels.first(), levels.last()) else {
        return Err(AxiomViolation::NotBoundedBelow { level: 0 });
    };
    for &m in &levels {
        for (k, s) in filt.level(m) {
            if s.ambient_dim() != v.dim(k) {
                return Err(AxiomViolation::Shape { level: m, weight: k });
            }
        }
    }
    if filt.level(first).values().any(|s| !s.is_zero()) {
        return Err(AxiomViolation::NotBoundedBelow { level: first });
    }
    if filt.level(last).values().any(|s| !s.is_full()) {
        return Err(AxiomViolation::NotBoundedAbove { level: last });
    }
    for &m in &levels {
        let cur = filt.level(m);
        for k in v.weights() {
            if v.dim(k + 2) == 0 {
                continue;
            }
            let img = v.e_at(k).image_of(&cur[&k]).expect("shapes");
            if !cur[&(k + 2)].contains(&img).expect("ambient") {
                return Err(AxiomViolation::NotSubmodule { level: m, weight: k });
            }
        }
        if m > first {
            let prev = filt.level(m - 1);
            for k in v.weights() {
                if !cur[&k].contains(&prev[&k]).expect("ambient") {
                    return Err(AxiomViolation::NotNested { level: m, weight: k });
                }
            }
            let piece = v.subquotient(&prev, &cur).shift(-m);
            if solve_f_by_linear_system(&piece).is_none() {
                return Err(AxiomViolation::NoGExtension { level: m });
            }
        }
    }
    Ok(())
}

/// Verdict for one filtration level of a `b`-hom `V → W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchurVerdict {
    pub level: i64,
    pub source_highest_weights: BTreeSet<usize>,
    pub target_highest_weights: BTreeSet<usize>,
    /// True when no highest weight is shared, so the induced map on this
    /// graded level must vanish.
    pub forced_zero: bool,
}

/// For each level where either module has a nonzero graded piece, compares
/// the highest weights of `gr_m(V)[-m]` and `gr_m(W)[-m]`.
pub fn schur_vanishing(v: &BModule, w: &BModule) -> Result<Vec<SchurVerdict>, FiltrationError> {
    let (_, tv) = verified_filtration(v)?;
    let (_, tw) = verified_filtration(w)?;
    let levels: BTreeSet<i64> = tv.entries().keys().chain(tw.entries().keys()).copied().collect();
    Ok(levels
        .into_iter()
        .map(|m| {
            let a = tv.highest_weights(m);
            let b = tw.highest_weights(m);
            let forced_zero = a.is_disjoint(&b);
            SchurVerdict {
                level: m,
                source_highest_weights: a,
                target_highest_weights: b,
                forced_zero,
            }
        })
        .collect())
}

/// Weight dimensions of the shifted graded piece, from the table.
pub fn piece_space(table: &MultiplicityTable, m: i64) -> GradedSpace {
    let mut dims: BTreeMap<Weight, usize> = BTreeMap::new();
    for (d, c) in table.row(m) {
        let d = d as i64;
        for j in 0..=d {
            *dims.entry(-d + 2 * j).or_default() += c;
        }
    }
    GradedSpace::new(dims)
}

/// `sl(2)` content of a graded piece, computed from its weights.
pub fn piece_content(
    filt: &CanonicalFiltration,
    m: i64,
) -> Result<BTreeMap<usize, usize>, FiltrationError> {
    let piece = filt.graded_piece(m)?;
    Ok(decompose_weights(piece.base().space())?)
}
