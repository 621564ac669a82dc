//! Weight-graded modules over the Borel subalgebra `b = span{e, h}` of
//! `sl(2)`, and over `sl(2)` itself.
//!
//! A [`BModule`] is a finite-dimensional vector space `V = ⊕ V^k` graded by
//! integer weights, with `h` acting by `k` on `V^k` and a raising operator
//! `e: V^k → V^{k+2}` stored as one matrix per weight. Every basis is fixed
//! and ordered; isomorphism-invariant data (dimensions, ranks,
//! multiplicities) is what callers should compare.
//!
//! A [`GModule`] adds a lowering operator `f: V^k → V^{k-2}` satisfying
//! `ef - fe = k·Id` on `V^k`, i.e. the relation `[e, f] = h`.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::ModuleError;
use crate::linalg::{q, MatrixQ, Rational, Subspace};

/// Eigenvalue of `h`.
pub type Weight = i64;

/// Weight decomposition: a finite map from weight to (positive) dimension.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GradedSpace {
    dims: BTreeMap<Weight, usize>,
}

impl GradedSpace {
    /// Zero-dimensional entries are dropped.
    pub fn new(dims: impl IntoIterator<Item = (Weight, usize)>) -> Self {
        GradedSpace {
            dims: dims.into_iter().filter(|&(_, d)| d > 0).collect(),
        }
    }

    pub fn dim(&self, weight: Weight) -> usize {
        self.dims.get(&weight).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    /// Weights with nonzero dimension, ascending.
    pub fn weights(&self) -> impl DoubleEndedIterator<Item = Weight> + '_ {
        self.dims.keys().copied()
    }

    pub fn dims(&self) -> &BTreeMap<Weight, usize> {
        &self.dims
    }

    pub fn min_weight(&self) -> Option<Weight> {
        self.dims.keys().next().copied()
    }

    pub fn max_weight(&self) -> Option<Weight> {
        self.dims.keys().next_back().copied()
    }

    pub fn shifted(&self, by: Weight) -> GradedSpace {
        GradedSpace {
            dims: self.dims.iter().map(|(&k, &d)| (k + by, d)).collect(),
        }
    }
}

/// Finite-dimensional weight-graded `b`-module.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BModule {
    space: GradedSpace,
    e: BTreeMap<Weight, MatrixQ>,
}

impl BModule {
    /// Validates shapes and drops zero matrices, so structurally equal
    /// modules compare equal.
    pub fn new(space: GradedSpace, e: BTreeMap<Weight, MatrixQ>) -> Result<Self, ModuleError> {
        let m = Self::new_unchecked(space, e);
        m.validate()?;
        Ok(m.normalized())
    }

    /// Builds a module without any checks; pair with [`BModule::validate`].
    pub fn new_unchecked(space: GradedSpace, e: BTreeMap<Weight, MatrixQ>) -> Self {
        BModule { space, e }
    }

    fn normalized(mut self) -> Self {
        self.e.retain(|_, m| !m.is_zero());
        self
    }

    pub fn zero() -> Self {
        BModule::new_unchecked(GradedSpace::default(), BTreeMap::new())
    }

    /// `dim`-dimensional module concentrated in one weight, `e = 0`.
    pub fn trivial(weight: Weight, dim: usize) -> Self {
        BModule::new_unchecked(GradedSpace::new([(weight, dim)]), BTreeMap::new())
    }

    /// Checks every stored `e` map against the weight dimensions, reporting
    /// the first offending weight.
    pub fn validate(&self) -> Result<(), ModuleError> {
        for (&weight, m) in &self.e {
            let expected = (self.dim(weight + 2), self.dim(weight));
            if m.shape() != expected {
                return Err(ModuleError::EShape {
                    weight,
                    expected,
                    found: m.shape(),
                });
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn dim(&self, weight: Weight) -> usize {
        self.space.dim(weight)
    }

    pub fn total_dim(&self) -> usize {
        self.space.total_dim()
    }

    pub fn weights(&self) -> impl DoubleEndedIterator<Item = Weight> + '_ {
        self.space.weights()
    }

    /// Stored (nonzero) `e` matrices keyed by source weight.
    pub fn e_maps(&self) -> &BTreeMap<Weight, MatrixQ> {
        &self.e
    }

    /// `e: V^k → V^{k+2}`, zero when not stored.
    pub fn e_at(&self, weight: Weight) -> MatrixQ {
        self.e
            .get(&weight)
            .cloned()
            .unwrap_or_else(|| MatrixQ::zeros(self.dim(weight + 2), self.dim(weight)))
    }

    /// `e^power: V^k → V^{k+2·power}`.
    pub fn e_power(&self, weight: Weight, power: usize) -> MatrixQ {
        let mut acc = MatrixQ::identity(self.dim(weight));
        for step in 0..power as i64 {
            acc = self
                .e_at(weight + 2 * step)
                .mul(&acc)
                .expect("shapes follow the grading");
        }
        acc
    }

    /// `rank(e^i: V^j → V^{j+2i})`; for `i = 0` this is `dim V^j`.
    pub fn e_rank(&self, i: usize, j: Weight) -> usize {
        if i == 0 {
            return self.dim(j);
        }
        if self.dim(j) == 0 || self.dim(j + 2 * i as i64) == 0 {
            return 0;
        }
        self.e_power(j, i).rank()
    }

    /// Dual module: `(V*)^k = (V^{-k})*` with `(e·α)(v) = -α(e·v)`, so `e`
    /// on the dual at weight `k` is `-(e at weight -k-2)^T`.
    pub fn dual(&self) -> BModule {
        let space = GradedSpace::new(self.space.dims.iter().map(|(&k, &d)| (-k, d)));
        let e = self
            .e
            .iter()
            .map(|(&k, m)| (-k - 2, m.transpose().neg()))
            .collect();
        BModule::new_unchecked(space, e).normalized()
    }

    /// Weightwise block sum; `self` occupies the leading coordinates.
    pub fn direct_sum(&self, other: &BModule) -> BModule {
        let space = GradedSpace::new(
            self.weights()
                .chain(other.weights())
                .map(|k| (k, self.dim(k) + other.dim(k))),
        );
        let mut e = BTreeMap::new();
        for k in space.weights() {
            let m = block_diagonal(&self.e_at(k), &other.e_at(k));
            if !m.is_zero() {
                e.insert(k, m);
            }
        }
        BModule::new_unchecked(space, e)
    }

    /// Tensor product with weights adding and `e ↦ e⊗1 + 1⊗e`.
    ///
    /// The basis of weight `k` runs over blocks `V^a ⊗ W^{k-a}` with `a`
    /// ascending; inside a block the `V` index is major (Kronecker order).
    pub fn tensor(&self, other: &BModule) -> BModule {
        let mut dims: BTreeMap<Weight, usize> = BTreeMap::new();
        for a in self.weights() {
            for b in other.weights() {
                *dims.entry(a + b).or_default() += self.dim(a) * other.dim(b);
            }
        }
        let space = GradedSpace::new(dims);
        let mut e = BTreeMap::new();
        for k in space.weights() {
            let src = tensor_blocks(self, other, k);
            let tgt = tensor_blocks(self, other, k + 2);
            let mut m = MatrixQ::zeros(space.dim(k + 2), space.dim(k));
            for &(a, b, off) in &src {
                let (da, db) = (self.dim(a), other.dim(b));
                if let Some(&(_, _, toff)) = tgt.iter().find(|&&(ta, _, _)| ta == a + 2) {
                    let blk = self.e_at(a).kronecker(&MatrixQ::identity(db));
                    add_block(&mut m, toff, off, &blk);
                }
                if let Some(&(_, _, toff)) = tgt.iter().find(|&&(ta, _, _)| ta == a) {
                    let blk = MatrixQ::identity(da).kronecker(&other.e_at(b));
                    add_block(&mut m, toff, off, &blk);
                }
            }
            if !m.is_zero() {
                e.insert(k, m);
            }
        }
        BModule::new_unchecked(space, e)
    }

    /// `V[k]`: same vector space and `e`, weights raised by `k`.
    pub fn shift(&self, by: Weight) -> BModule {
        BModule::new_unchecked(
            self.space.shifted(by),
            self.e.iter().map(|(&k, m)| (k + by, m.clone())).collect(),
        )
    }

    /// Restriction of `e` to an `e`-closed graded subspace, expressed in the
    /// canonical bases of the subspaces.
    pub fn submodule(&self, sub: &BTreeMap<Weight, Subspace>) -> BModule {
        let zero = BTreeMap::new();
        self.subquotient(&zero, sub)
    }

    /// The `b`-module `upper / lower` for `e`-closed graded subspaces
    /// `lower ⊆ upper`. Quotient coordinates at each weight use the greedy
    /// complement of `lower` inside the canonical basis of `upper`.
    pub fn subquotient(
        &self,
        lower: &BTreeMap<Weight, Subspace>,
        upper: &BTreeMap<Weight, Subspace>,
    ) -> BModule {
        let basis = quotient_bases(self, lower, upper);
        let space = GradedSpace::new(basis.iter().map(|(&k, b)| (k, b.complement.len())));
        let mut e = BTreeMap::new();
        for k in space.weights() {
            let Some(target) = basis.get(&(k + 2)) else {
                continue;
            };
            if target.complement.is_empty() {
                continue;
            }
            let ek = self.e_at(k);
            let images: Vec<Vec<Rational>> = basis[&k]
                .complement
                .iter()
                .map(|v| ek.apply(v).expect("graded shapes"))
                .collect();
            let m = target.quotient_coordinates(&images);
            if !m.is_zero() {
                e.insert(k, m);
            }
        }
        BModule::new_unchecked(space, e)
    }
}

/// Per-weight data used to express vectors of a subquotient in coordinates.
pub(crate) struct QuotientBasis {
    pub lower: Vec<Vec<Rational>>,
    pub complement: Vec<Vec<Rational>>,
    ambient: usize,
}

impl QuotientBasis {
    /// Coordinates (on the complement) of each vector, which must lie in
    /// `lower + span(complement)`. Columns of the result correspond to `vectors`.
    pub fn quotient_coordinates(&self, vectors: &[Vec<Rational>]) -> MatrixQ {
        let mut cols = self.lower.clone();
        cols.extend(self.complement.iter().cloned());
        let basis = MatrixQ::from_columns(&cols, self.ambient).expect("ambient lengths");
        let rhs = MatrixQ::from_columns(vectors, self.ambient).expect("ambient lengths");
        let sol = basis
            .solve(&rhs)
            .expect("row counts match")
            .expect("vector lies in the upper subspace");
        let skip = self.lower.len();
        let mut out = MatrixQ::zeros(self.complement.len(), vectors.len());
        for i in 0..self.complement.len() {
            for j in 0..vectors.len() {
                out.set(i, j, sol.get(skip + i, j).clone());
            }
        }
        out
    }
}

pub(crate) fn quotient_bases(
    module: &BModule,
    lower: &BTreeMap<Weight, Subspace>,
    upper: &BTreeMap<Weight, Subspace>,
) -> BTreeMap<Weight, QuotientBasis> {
    let mut out = BTreeMap::new();
    for k in module.weights() {
        let n = module.dim(k);
        let up = upper.get(&k).cloned().unwrap_or_else(|| Subspace::zero(n));
        let low = lower.get(&k).cloned().unwrap_or_else(|| Subspace::zero(n));
        let complement = low.complement_in(&up).expect("same ambient");
        out.insert(
            k,
            QuotientBasis {
                lower: low.basis().to_vec(),
                complement,
                ambient: n,
            },
        );
    }
    out
}

fn block_diagonal(a: &MatrixQ, b: &MatrixQ) -> MatrixQ {
    let mut m = MatrixQ::zeros(a.rows() + b.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), a.cols(), b);
    m
}

fn add_block(m: &mut MatrixQ, r0: usize, c0: usize, blk: &MatrixQ) {
    for i in 0..blk.rows() {
        for j in 0..blk.cols() {
            let x = blk.get(i, j);
            if !x.is_zero() {
                let cur = m.get(r0 + i, c0 + j).clone();
                m.set(r0 + i, c0 + j, cur + x);
            }
        }
    }
}

/// Blocks `(a, b, offset)` of weight `k` in `V ⊗ W`: `V^a ⊗ W^b` with
/// `a + b = k`, `a` ascending, starting at coordinate `offset`.
pub fn tensor_blocks(v: &BModule, w: &BModule, k: Weight) -> Vec<(Weight, Weight, usize)> {
    let mut off = 0;
    let mut out = Vec::new();
    for a in v.weights() {
        let b = k - a;
        let d = v.dim(a) * w.dim(b);
        if d > 0 {
            out.push((a, b, off));
            off += d;
        }
    }
    out
}

/// Span of `{u ⊗ w : u ∈ U^a, w ∈ W'^{k-a}}` inside weight `k` of `V ⊗ W`,
/// for graded subspaces `U ⊆ V`, `W' ⊆ W`.
pub fn tensor_subspace(
    v: &BModule,
    w: &BModule,
    k: Weight,
    v_sub: &BTreeMap<Weight, Subspace>,
    w_sub: &BTreeMap<Weight, Subspace>,
) -> Subspace {
    let blocks = tensor_blocks(v, w, k);
    let total: usize = blocks.iter().map(|&(a, b, _)| v.dim(a) * w.dim(b)).sum();
    let mut vectors = Vec::new();
    for &(a, b, off) in &blocks {
        let (Some(us), Some(ws)) = (v_sub.get(&a), w_sub.get(&b)) else {
            continue;
        };
        let db = w.dim(b);
        for u in us.basis() {
            for x in ws.basis() {
                let mut vec = vec![Rational::zero(); total];
                for (i, ui) in u.iter().enumerate() {
                    if ui.is_zero() {
                        continue;
                    }
                    for (j, xj) in x.iter().enumerate() {
                        vec[off + i * db + j] = ui * xj;
                    }
                }
                vectors.push(vec);
            }
        }
    }
    Subspace::from_vectors(total, vectors)
}

/// Finite-dimensional `sl(2)`-module: a [`BModule`] plus the lowering operator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GModule {
    base: BModule,
    f: BTreeMap<Weight, MatrixQ>,
}

impl GModule {
    /// Validates the `b`-structure, the `f` shapes and `ef - fe = k·Id`.
    pub fn new(base: BModule, f: BTreeMap<Weight, MatrixQ>) -> Result<Self, ModuleError> {
        let g = Self::new_unchecked(base, f);
        g.validate()?;
        let GModule { base, mut f } = g;
        f.retain(|_, m| !m.is_zero());
        Ok(GModule {
            base: base.normalized(),
            f,
        })
    }

    pub fn new_unchecked(base: BModule, f: BTreeMap<Weight, MatrixQ>) -> Self {
        GModule { base, f }
    }

    pub fn validate(&self) -> Result<(), ModuleError> {
        self.base.validate()?;
        for (&weight, m) in &self.f {
            let expected = (self.base.dim(weight - 2), self.base.dim(weight));
            if m.shape() != expected {
                return Err(ModuleError::FShape {
                    weight,
                    expected,
                    found: m.shape(),
                });
            }
        }
        for weight in self.base.weights() {
            let n = self.base.dim(weight);
            let ef = self.base.e_at(weight - 2).mul(&self.f_at(weight))?;
            let fe = self.f_at(weight + 2).mul(&self.base.e_at(weight))?;
            let residual = ef.sub(&fe)?.sub(&MatrixQ::identity(n).scale(&q(weight)))?;
            if !residual.is_zero() {
                return Err(ModuleError::Relation { weight, residual });
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    pub fn base(&self) -> &BModule {
        &self.base
    }

    pub fn into_base(self) -> BModule {
        self.base
    }

    pub fn f_maps(&self) -> &BTreeMap<Weight, MatrixQ> {
        &self.f
    }

    /// `f: V^k → V^{k-2}`, zero when not stored.
    pub fn f_at(&self, weight: Weight) -> MatrixQ {
        self.f
            .get(&weight)
            .cloned()
            .unwrap_or_else(|| MatrixQ::zeros(self.base.dim(weight - 2), self.base.dim(weight)))
    }

    /// The irreducible module `L(d)` of highest weight `d`: basis `v_0..v_d`
    /// at weights `-d, -d+2, …, d`, `e v_j = v_{j+1}` and
    /// `f v_j = j(d-j+1) v_{j-1}`.
    pub fn irreducible(d: usize) -> GModule {
        let d_i = d as i64;
        let space = GradedSpace::new((0..=d_i).map(|j| (-d_i + 2 * j, 1)));
        let e = (0..d_i).map(|j| (-d_i + 2 * j, MatrixQ::from_i64(&[&[1]]))).collect();
        let f = (1..=d_i)
            .map(|j| (-d_i + 2 * j, MatrixQ::from_i64(&[&[j * (d_i - j + 1)]])))
            .collect();
        GModule {
            base: BModule::new_unchecked(space, e),
            f,
        }
    }

    /// `⊕_d L(d)^{mult_d}`, in ascending order of `d`.
    pub fn from_multiplicities(mults: &BTreeMap<usize, usize>) -> GModule {
        let mut acc = GModule::new_unchecked(BModule::zero(), BTreeMap::new());
        for (&d, &m) in mults {
            for _ in 0..m {
                acc = acc.direct_sum(&GModule::irreducible(d));
            }
        }
        acc
    }

    pub fn direct_sum(&self, other: &GModule) -> GModule {
        let base = self.base.direct_sum(&other.base);
        let mut f = BTreeMap::new();
        for k in base.weights() {
            let m = block_diagonal(&self.f_at(k), &other.f_at(k));
            if !m.is_zero() {
                f.insert(k, m);
            }
        }
        GModule { base, f }
    }

    /// Dual with the same sign convention as [`BModule::dual`] for both operators.
    pub fn dual(&self) -> GModule {
        let base = self.base.dual();
        let f = self
            .f
            .iter()
            .map(|(&k, m)| (-k + 2, m.transpose().neg()))
            .collect();
        GModule { base, f }
    }

    /// Multiplicity of `L(d)` is `dim V^d - dim V^{d+2}` for `d ≥ 0`.
    pub fn decompose(&self) -> Result<BTreeMap<usize, usize>, ModuleError> {
        decompose_weights(self.base.space())
    }

    /// Whether a shift-0 hom between two g-modules also commutes with `f`.
    pub fn commutes_with_f(hom: &GradedHom, source: &GModule, target: &GModule) -> bool {
        source.base.weights().all(|k| {
            let lhs = target.f_at(k + hom.shift).mul(&hom.map_at(k));
            let rhs = hom.map_at(k - 2).mul(&source.f_at(k));
            matches!((lhs, rhs), (Ok(a), Ok(b)) if a == b)
        })
    }
}

/// `sl(2)` content read off the weight dimensions alone.
pub fn decompose_weights(space: &GradedSpace) -> Result<BTreeMap<usize, usize>, ModuleError> {
    let mut out = BTreeMap::new();
    let mut covered = 0usize;
    let top = space.max_weight().unwrap_or(0).max(0);
    for d in 0..=top {
        let value = space.dim(d) as i64 - space.dim(d + 2) as i64;
        if value < 0 {
            return Err(ModuleError::NegativeMultiplicity {
                highest_weight: d,
                value,
            });
        }
        if value > 0 {
            out.insert(d as usize, value as usize);
            covered += value as usize * (d as usize + 1);
        }
    }
    if covered != space.total_dim() {
        return Err(ModuleError::NotSymmetric {
            covered,
            total: space.total_dim(),
        });
    }
    Ok(out)
}

/// Weight-homogeneous linear map `φ: V → W` with `φ(V^k) ⊆ W^{k+shift}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedHom {
    pub source: BModule,
    pub target: BModule,
    pub shift: i64,
    maps: BTreeMap<Weight, MatrixQ>,
}

impl GradedHom {
    pub fn new(
        source: BModule,
        target: BModule,
        shift: i64,
        maps: BTreeMap<Weight, MatrixQ>,
    ) -> Result<Self, ModuleError> {
        for (&weight, m) in &maps {
            let expected = (target.dim(weight + shift), source.dim(weight));
            if m.shape() != expected {
                return Err(ModuleError::HomShape {
                    weight,
                    expected,
                    found: m.shape(),
                });
            }
        }
        Ok(GradedHom {
            source,
            target,
            shift,
            maps,
        })
    }

    pub fn identity(v: &BModule) -> GradedHom {
        let maps = v.weights().map(|k| (k, MatrixQ::identity(v.dim(k)))).collect();
        GradedHom {
            source: v.clone(),
            target: v.clone(),
            shift: 0,
            maps,
        }
    }

    pub fn zero(source: &BModule, target: &BModule, shift: i64) -> GradedHom {
        GradedHom {
            source: source.clone(),
            target: target.clone(),
            shift,
            maps: BTreeMap::new(),
        }
    }

    pub fn map_at(&self, weight: Weight) -> MatrixQ {
        self.maps.get(&weight).cloned().unwrap_or_else(|| {
            MatrixQ::zeros(self.target.dim(weight + self.shift), self.source.dim(weight))
        })
    }

    fn commutes_with_e(&self) -> bool {
        self.source.weights().all(|k| {
            let lhs = self.target.e_at(k + self.shift).mul(&self.map_at(k));
            let rhs = self.map_at(k + 2).mul(&self.source.e_at(k));
            matches!((lhs, rhs), (Ok(a), Ok(b)) if a == b)
        })
    }

    /// Whether this is a `b`-module homomorphism (shift 0, commutes with `e`).
    pub fn is_bhom(&self) -> Result<bool, ModuleError> {
        if self.shift != 0 {
            return Err(ModuleError::HomShift {
                expected: 0,
                found: self.shift,
            });
        }
        Ok(self.commutes_with_e())
    }

    /// Maps with `φ(ev) = eφ(v)` and `φ(hv + kv) = hφ(v)`: they carry `V^j`
    /// into `W^{j+k}`, so the weight shift must equal `k`.
    pub fn is_shifted_equivariant(&self, k: i64) -> Result<bool, ModuleError> {
        if self.shift != k {
            return Err(ModuleError::HomShift {
                expected: k,
                found: self.shift,
            });
        }
        Ok(self.commutes_with_e())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GradedHom) -> Result<GradedHom, ModuleError> {
        let mut maps = BTreeMap::new();
        for k in self.source.weights() {
            let m = other.map_at(k + self.shift).mul(&self.map_at(k))?;
            if !m.is_zero() {
                maps.insert(k, m);
            }
        }
        GradedHom::new(self.source.clone(), other.target.clone(), self.shift + other.shift, maps)
    }

    /// Image of a graded subspace of the source, keyed by target weight.
    pub fn image(&self, sub: &BTreeMap<Weight, Subspace>) -> BTreeMap<Weight, Subspace> {
        let mut out = BTreeMap::new();
        for (&k, s) in sub {
            let tw = k + self.shift;
            if self.target.dim(tw) == 0 {
                continue;
            }
            let img = self.map_at(k).image_of(s).expect("graded shapes");
            out.insert(tw, img);
        }
        out
    }
}

/// A basis of all maps `V → W` of the given weight shift that commute with `e`.
pub fn equivariant_hom_basis(v: &BModule, w: &BModule, shift: i64) -> Vec<GradedHom> {
    // Unknowns: the entries of every block φ_k (row-major), concatenated.
    let mut offsets = BTreeMap::new();
    let mut n_vars = 0;
    for k in v.weights() {
        let rows = w.dim(k + shift);
        if rows > 0 {
            offsets.insert(k, n_vars);
            n_vars += rows * v.dim(k);
        }
    }
    if n_vars == 0 {
        return Vec::new();
    }
    // Equations: (E_W φ_k - φ_{k+2} E_V)[i][j] = 0 for every source weight k.
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for k in v.weights() {
        let out_dim = w.dim(k + shift + 2);
        let in_dim = v.dim(k);
        if out_dim == 0 {
            continue;
        }
        let ew = w.e_at(k + shift);
        let ev = v.e_at(k);
        for i in 0..out_dim {
            for j in 0..in_dim {
                let mut row = vec![Rational::zero(); n_vars];
                if let Some(&off) = offsets.get(&k) {
                    let cols = in_dim;
                    for a in 0..w.dim(k + shift) {
                        let c = ew.get(i, a);
                        if !c.is_zero() {
                            row[off + a * cols + j] += c;
                        }
                    }
                }
                if let Some(&off) = offsets.get(&(k + 2)) {
                    let cols = v.dim(k + 2);
                    for b in 0..cols {
                        let c = ev.get(b, j);
                        if !c.is_zero() {
                            row[off + i * cols + b] -= c;
                        }
                    }
                }
                rows.push(row);
            }
        }
    }
    let kernel = if rows.is_empty() {
        Subspace::full(n_vars)
    } else {
        MatrixQ::from_rows(rows, n_vars).expect("row lengths").kernel_basis()
    };
    kernel
        .basis()
        .iter()
        .map(|sol| {
            let mut maps = BTreeMap::new();
            for (&k, &off) in &offsets {
                let (r, c) = (w.dim(k + shift), v.dim(k));
                let m = MatrixQ::new(r, c, sol[off..off + r * c].to_vec()).expect("block size");
                if !m.is_zero() {
                    maps.insert(k, m);
                }
            }
            GradedHom::new(v.clone(), w.clone(), shift, maps).expect("block shapes")
        })
        .collect()
}

/// Deterministic pseudo-random valid [`BModule`].
///
/// The total dimension is drawn from `1..=max_dim` and spread over the
/// weights `lo..=lo + max_weight_span`, with `lo` drawn from
/// `-max_weight_span..=0`. `e` entries are small integers, zero about half
/// the time, so rank drops are common.
pub fn random_bmodule(seed: u64, max_weight_span: u32, max_dim: usize) -> BModule {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let span = max_weight_span as i64;
    let total = rng.gen_range(1..=max_dim.max(1));
    let lo = if span == 0 { 0 } else { rng.gen_range(-span..=0) };
    let mut dims: BTreeMap<Weight, usize> = BTreeMap::new();
    for _ in 0..total {
        *dims.entry(lo + rng.gen_range(0..=span)).or_default() += 1;
    }
    let space = GradedSpace::new(dims);
    let mut e = BTreeMap::new();
    for k in space.weights() {
        let (r, c) = (space.dim(k + 2), space.dim(k));
        if r == 0 {
            continue;
        }
        let entries = (0..r * c)
            .map(|_| {
                if rng.gen_bool(0.5) {
                    Rational::zero()
                } else {
                    q(rng.gen_range(-2..=2))
                }
            })
            .collect();
        e.insert(k, MatrixQ::new(r, c, entries).expect("sized"));
    }
    BModule::new(space, e).expect("generated shapes are consistent")
}

/// Deterministic pseudo-random [`GModule`]: a sum of irreducibles of highest
/// weight at most `max_highest_weight`, conjugated by a random unimodular
/// change of basis in every weight so the matrices are not in normal form.
pub fn random_gmodule(seed: u64, max_highest_weight: usize, max_summands: usize) -> GModule {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = rng.gen_range(1..=max_summands.max(1));
    let mut mults = BTreeMap::new();
    for _ in 0..count {
        *mults.entry(rng.gen_range(0..=max_highest_weight)).or_insert(0) += 1;
    }
    let g = GModule::from_multiplicities(&mults);
    let mut change = BTreeMap::new();
    for k in g.base.weights() {
        let n = g.base.dim(k);
        let mut upper = MatrixQ::identity(n);
        let mut lower = MatrixQ::identity(n);
        for i in 0..n {
            for j in i + 1..n {
                upper.set(i, j, q(rng.gen_range(-2..=2)));
                lower.set(j, i, q(rng.gen_range(-1..=1)));
            }
        }
        let p = upper.mul(&lower).expect("square");
        let p_inv = p.solve(&MatrixQ::identity(n)).expect("square").expect("unimodular");
        change.insert(k, (p, p_inv));
    }
    let conj = |from: Weight, to: Weight, m: &MatrixQ| -> MatrixQ {
        change[&to].0.mul(m).and_then(|x| x.mul(&change[&from].1)).expect("shapes")
    };
    let e = g.base.e.iter().map(|(&k, m)| (k, conj(k, k + 2, m))).collect();
    let f = g.f.iter().map(|(&k, m)| (k, conj(k, k - 2, m))).collect();
    GModule::new(BModule::new_unchecked(g.base.space.clone(), e), f)
        .expect("conjugation preserves the relations")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(d: usize) -> GModule {
        GModule::irreducible(d)
    }

    #[test]
    fn validate_b_examples() {
        assert!(BModule::trivial(0, 1).is_valid());
        let ok = BModule::new_unchecked(
            GradedSpace::new([(0, 1), (2, 1)]),
            [(0, MatrixQ::from_i64(&[&[1]]))].into(),
        );
        assert!(ok.is_valid());
        let bad = BModule::new_unchecked(
            GradedSpace::new([(0, 1), (2, 1)]),
            [(0, MatrixQ::from_i64(&[&[1], &[1]]))].into(),
        );
        assert_eq!(
            bad.validate(),
            Err(ModuleError::EShape {
                weight: 0,
                expected: (1, 1),
                found: (2, 1)
            })
        );
    }

    #[test]
    fn validate_g_examples() {
        assert!(l(1).is_valid());
        assert!(GModule::new(BModule::trivial(0, 3), BTreeMap::new()).is_ok());
        let wrong = GModule::new_unchecked(l(1).base.clone(), [(1, MatrixQ::from_i64(&[&[2]]))].into());
        match wrong.validate() {
            Err(ModuleError::Relation { weight, .. }) => assert_eq!(weight, -1),
            other => panic!("expected relation failure, got {other:?}"),
        }
    }

    #[test]
    fn dual_examples() {
        assert_eq!(BModule::trivial(0, 1).dual(), BModule::trivial(0, 1));
        let v = BModule::new(
            GradedSpace::new([(0, 1), (2, 1)]),
            [(0, MatrixQ::from_i64(&[&[1]]))].into(),
        )
        .unwrap();
        let d = v.dual();
        assert_eq!(d.space(), &GradedSpace::new([(-2, 1), (0, 1)]));
        assert_eq!(d.e_at(-2), MatrixQ::from_i64(&[&[-1]]));
        assert!(l(1).dual().is_valid());
        assert_eq!(l(3).dual().decompose().unwrap(), [(3, 1)].into());
    }

    #[test]
    fn sum_tensor_shift_examples() {
        let v = random_bmodule(3, 4, 5);
        assert_eq!(v.shift(0), v);
        assert_eq!(v.tensor(&BModule::trivial(0, 1)), v);
        let t = l(1).base().tensor(l(1).base());
        assert_eq!(t.space(), &GradedSpace::new([(-2, 1), (0, 2), (2, 1)]));
        let s = v.direct_sum(&BModule::zero());
        assert_eq!(s, v);
    }

    #[test]
    fn tensor_of_irreducibles_decomposes_by_clebsch_gordan() {
        let t = l(1).base().tensor(l(1).base());
        assert_eq!(decompose_weights(t.space()).unwrap(), [(0, 1), (2, 1)].into());
        let t = l(2).base().tensor(l(3).base());
        assert_eq!(decompose_weights(t.space()).unwrap(), [(1, 1), (3, 1), (5, 1)].into());
    }

    #[test]
    fn decompose_examples() {
        let triv = GModule::new(BModule::trivial(0, 3), BTreeMap::new()).unwrap();
        assert_eq!(triv.decompose().unwrap(), [(0, 3)].into());
        assert_eq!(l(1).decompose().unwrap(), [(1, 1)].into());
        // Asymmetric weights cannot come from an sl(2)-module.
        assert!(decompose_weights(&GradedSpace::new([(1, 1)])).is_err());
        assert!(decompose_weights(&GradedSpace::new([(0, 1), (2, 2)])).is_err());
    }

    #[test]
    fn bhom_examples() {
        let v = l(2).into_base();
        assert!(GradedHom::identity(&v).is_bhom().unwrap());
        assert!(GradedHom::zero(&v, &v, 0).is_bhom().unwrap());
        // Swapping the two lines of L(1) is not e-equivariant.
        let w = l(1).into_base();
        let swap = GradedHom::new(
            w.clone(),
            w.clone(),
            0,
            [(-1, MatrixQ::from_i64(&[&[0]])), (1, MatrixQ::from_i64(&[&[1]]))].into(),
        )
        .unwrap();
        assert!(!swap.is_bhom().unwrap());
        let raise = GradedHom::new(w.clone(), w.clone(), 2, [(-1, MatrixQ::from_i64(&[&[1]]))].into()).unwrap();
        assert!(raise.is_bhom().is_err());
        assert!(raise.is_shifted_equivariant(2).unwrap());
        assert!(GradedHom::zero(&w, &w, -3).is_shifted_equivariant(-3).unwrap());
    }

    #[test]
    fn hom_basis_of_irreducible_is_scalars() {
        let v = l(3).into_base();
        let basis = equivariant_hom_basis(&v, &v, 0);
        // Hom_b(L(3), L(3)) = maps determined by the image of the lowest vector
        // inside ker e^4 at weight -3, i.e. one dimension.
        assert_eq!(basis.len(), 1);
        assert!(basis[0].is_bhom().unwrap());
    }

    #[test]
    fn random_generators_are_deterministic_and_valid() {
        let a = random_bmodule(0, 0, 1);
        assert_eq!(a, BModule::trivial(0, 1));
        assert_eq!(random_bmodule(11, 6, 4), random_bmodule(11, 6, 4));
        assert!(random_bmodule(7, 6, 4).is_valid());
        let g = random_gmodule(5, 4, 4);
        assert!(g.is_valid());
        assert_eq!(g, random_gmodule(5, 4, 4));
    }

    #[test]
    fn subquotient_of_irreducible() {
        let v = l(2).into_base();
        let n = |k| v.dim(k);
        let top: BTreeMap<_, _> = [(2, Subspace::full(n(2)))].into();
        let all: BTreeMap<_, _> = v.weights().map(|k| (k, Subspace::full(n(k)))).collect();
        let q = v.subquotient(&top, &all);
        assert_eq!(q.space(), &GradedSpace::new([(-2, 1), (0, 1)]));
        assert_eq!(q.e_at(-2), MatrixQ::from_i64(&[&[1]]));
        assert_eq!(v.submodule(&top), BModule::trivial(2, 1));
    }
}
