//! Finite graded-commutative cohomology rings with an orientation, and the
//! Lefschetz `b`-module they carry.
//!
//! For a degree-2 class `α` the ring becomes a `b`-module with `h` acting by
//! the degree and `e` by `β ↦ α ∪ β`. The Hard Lefschetz property, the weaker
//! surjectivity condition one degree up, and Poincaré duality on the graded
//! pieces of the canonical filtration all live here.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::error::{FiltrationError, RingError};
use crate::filtration::{canonical_filtration, saturation_from, CanonicalFiltration, Saturation};
use crate::linalg::{q, MatrixQ, Rational};
use crate::module::{BModule, GradedHom, GradedSpace};

/// A graded-commutative ring `H^0 ⊕ … ⊕ H^n` in fixed ordered bases.
///
/// Products are stored per degree pair `(p, q)` as a matrix of shape
/// `betti[p+q] × (betti[p]·betti[q])`; column `i·betti[q] + j` holds
/// `b^p_i ∪ b^q_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyRing {
    dim: usize,
    labels: Vec<Vec<String>>,
    products: BTreeMap<(usize, usize), MatrixQ>,
    orientation: Vec<Rational>,
    classes: BTreeMap<String, (usize, Vec<Rational>)>,
}

impl CohomologyRing {
    /// Assembles a ring from parts without checking the ring axioms; see
    /// [`CohomologyRing::validate`]. Missing product blocks are zero.
    pub fn from_parts(
        dim: usize,
        labels: Vec<Vec<String>>,
        products: BTreeMap<(usize, usize), MatrixQ>,
        orientation: Vec<Rational>,
    ) -> Result<Self, RingError> {
        if labels.len() != dim + 1 {
            return Err(RingError::BettiLength {
                expected: dim + 1,
                found: labels.len(),
            });
        }
        let betti: Vec<usize> = labels.iter().map(Vec::len).collect();
        let mut full = BTreeMap::new();
        for p in 0..=dim {
            for qd in 0..=dim - p {
                let shape = (betti[p + qd], betti[p] * betti[qd]);
                let m = products.get(&(p, qd)).cloned().unwrap_or_else(|| MatrixQ::zeros(shape.0, shape.1));
                if m.shape() != shape {
                    return Err(RingError::TableShape { p, q: qd });
                }
                full.insert((p, qd), m);
            }
        }
        if orientation.len() != betti[dim] {
            return Err(RingError::OrientationShape { degree: dim });
        }
        Ok(CohomologyRing {
            dim,
            labels,
            products: full,
            orientation,
            classes: BTreeMap::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn betti(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    pub fn betti_at(&self, degree: usize) -> usize {
        self.labels.get(degree).map_or(0, Vec::len)
    }

    pub fn labels(&self) -> &[Vec<String>] {
        &self.labels
    }

    pub fn orientation(&self) -> &[Rational] {
        &self.orientation
    }

    pub fn product_block(&self, p: usize, qd: usize) -> Option<&MatrixQ> {
        self.products.get(&(p, qd))
    }

    /// Named classes, e.g. a symplectic class `omega`.
    pub fn classes(&self) -> &BTreeMap<String, (usize, Vec<Rational>)> {
        &self.classes
    }

    pub fn add_class(&mut self, name: &str, degree: usize, coords: Vec<Rational>) -> Result<(), RingError> {
        if degree > self.dim || coords.len() != self.betti_at(degree) {
            return Err(RingError::ClassDegree {
                name: name.to_string(),
                expected: degree,
                found: coords.len(),
            });
        }
        self.classes.insert(name.to_string(), (degree, coords));
        Ok(())
    }

    /// Resolves a named class, falling back to a basis label.
    pub fn class(&self, name: &str) -> Result<(usize, Vec<Rational>), RingError> {
        if let Some(c) = self.classes.get(name) {
            return Ok(c.clone());
        }
        for (deg, labels) in self.labels.iter().enumerate() {
            if let Some(i) = labels.iter().position(|l| l == name) {
                let mut v = vec![Rational::zero(); labels.len()];
                v[i] = Rational::one();
                return Ok((deg, v));
            }
        }
        Err(RingError::UnknownClass(name.to_string()))
    }

    /// Resolves a class and checks that it has degree 2.
    pub fn degree_two_class(&self, name: &str) -> Result<Vec<Rational>, RingError> {
        let (deg, v) = self.class(name)?;
        if deg != 2 {
            return Err(RingError::ClassDegree {
                name: name.to_string(),
                expected: 2,
                found: deg,
            });
        }
        Ok(v)
    }

    /// `x ∪ y` for homogeneous coordinate vectors of degrees `p` and `q`.
    pub fn cup(&self, p: usize, x: &[Rational], qd: usize, y: &[Rational]) -> Vec<Rational> {
        if p + qd > self.dim {
            return Vec::new();
        }
        let block = &self.products[&(p, qd)];
        let bq = self.betti_at(qd);
        let mut out = vec![Rational::zero(); self.betti_at(p + qd)];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (r, o) in out.iter_mut().enumerate() {
                    let b = block.get(r, i * bq + j);
                    if !b.is_zero() {
                        *o += &c * b;
                    }
                }
            }
        }
        out
    }

    fn basis_vector(&self, degree: usize, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.betti_at(degree)];
        v[i] = Rational::one();
        v
    }

    /// Matrix of `β ↦ α ∪ β` from degree `k` to degree `k + deg α`.
    pub fn multiplication_matrix(&self, alpha_degree: usize, alpha: &[Rational], k: usize) -> MatrixQ {
        let rows = if k + alpha_degree <= self.dim {
            self.betti_at(k + alpha_degree)
        } else {
            0
        };
        let cols: Vec<Vec<Rational>> = (0..self.betti_at(k))
            .map(|i| {
                if rows == 0 {
                    Vec::new()
                } else {
                    self.cup(alpha_degree, alpha, k, &self.basis_vector(k, i))
                }
            })
            .collect();
        MatrixQ::from_columns(&cols, rows).expect("cup has target length")
    }

    /// `orientation(x)` for a top-degree vector.
    pub fn evaluate(&self, top: &[Rational]) -> Rational {
        top.iter().zip(&self.orientation).map(|(a, b)| a * b).sum()
    }

    /// Pairing matrix `orientation(b^k_i ∪ b^{n-k}_j)`.
    pub fn poincare_matrix(&self, k: usize) -> MatrixQ {
        let c = self.dim - k;
        let mut m = MatrixQ::zeros(self.betti_at(k), self.betti_at(c));
        for i in 0..self.betti_at(k) {
            for j in 0..self.betti_at(c) {
                let prod = self.cup(k, &self.basis_vector(k, i), c, &self.basis_vector(c, j));
                m.set(i, j, self.evaluate(&prod));
            }
        }
        m
    }

    /// Checks connectedness, the unit, graded commutativity, associativity and
    /// non-degeneracy of the Poincaré pairing, reporting the first failure.
    pub fn validate(&self) -> Result<(), RingError> {
        let betti = self.betti();
        if betti[0] != 1 {
            return Err(RingError::NotConnected(betti[0]));
        }
        let mut seen = HashMap::new();
        for l in self.labels.iter().flatten() {
            if seen.insert(l.as_str(), ()).is_some() {
                return Err(RingError::DuplicateLabel(l.clone()));
            }
        }
        let unit = self.basis_vector(0, 0);
        for k in 0..=self.dim {
            for i in 0..betti[k] {
                let b = self.basis_vector(k, i);
                if self.cup(0, &unit, k, &b) != b || self.cup(k, &b, 0, &unit) != b {
                    return Err(RingError::Unit(self.labels[k][i].clone()));
                }
            }
        }
        for p in 0..=self.dim {
            for qd in 0..=self.dim - p {
                let sign = if (p * qd) % 2 == 0 { q(1) } else { q(-1) };
                for i in 0..betti[p] {
                    for j in 0..betti[qd] {
                        let x = self.basis_vector(p, i);
                        let y = self.basis_vector(qd, j);
                        let xy = self.cup(p, &x, qd, &y);
                        let yx: Vec<Rational> = self.cup(qd, &y, p, &x).iter().map(|c| c * &sign).collect();
                        if xy != yx {
                            return Err(RingError::Commutativity {
                                a: self.labels[p][i].clone(),
                                b: self.labels[qd][j].clone(),
                            });
                        }
                    }
                }
            }
        }
        for p in 1..=self.dim {
            for qd in 1..=self.dim - p {
                for r in 1..=self.dim - p - qd {
                    for i in 0..betti[p] {
                        for j in 0..betti[qd] {
                            for k in 0..betti[r] {
                                let x = self.basis_vector(p, i);
                                let y = self.basis_vector(qd, j);
                                let z = self.basis_vector(r, k);
                                let left = self.cup(p + qd, &self.cup(p, &x, qd, &y), r, &z);
                                let right = self.cup(p, &x, qd + r, &self.cup(qd, &y, r, &z));
                                if left != right {
                                    return Err(RingError::Associativity {
                                        a: self.labels[p][i].clone(),
                                        b: self.labels[qd][j].clone(),
                                        c: self.labels[r][k].clone(),
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        for k in 0..=self.dim {
            let m = self.poincare_matrix(k);
            if m.rows() != m.cols() || m.rank() != m.rows() {
                return Err(RingError::Degenerate {
                    degree: k,
                    complement: self.dim - k,
                });
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }
}

/// Builds a [`CohomologyRing`] from products given by basis label.
///
/// Products not set explicitly are filled in from their graded-commutative
/// partner when that one is set; products with the degree-0 basis element
/// default to the unit action; everything else is zero.
#[derive(Clone, Debug)]
pub struct RingBuilder {
    dim: usize,
    labels: Vec<Vec<String>>,
    index: HashMap<String, (usize, usize)>,
    entries: BTreeMap<((usize, usize), (usize, usize)), Vec<Rational>>,
    orientation: Vec<Rational>,
    classes: Vec<(String, Vec<(String, Rational)>)>,
}

impl RingBuilder {
    pub fn new(dim: usize, labels: Vec<Vec<String>>) -> Result<Self, RingError> {
        if labels.len() != dim + 1 {
            return Err(RingError::BettiLength {
                expected: dim + 1,
                found: labels.len(),
            });
        }
        let mut index = HashMap::new();
        for (deg, ls) in labels.iter().enumerate() {
            for (i, l) in ls.iter().enumerate() {
                if index.insert(l.clone(), (deg, i)).is_some() {
                    return Err(RingError::DuplicateLabel(l.clone()));
                }
            }
        }
        let orientation = vec![Rational::zero(); labels[dim].len()];
        Ok(RingBuilder {
            dim,
            labels,
            index,
            entries: BTreeMap::new(),
            orientation,
            classes: Vec::new(),
        })
    }

    fn lookup(&self, label: &str) -> Result<(usize, usize), RingError> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| RingError::UnknownLabel(label.to_string()))
    }

    /// Converts `label -> coefficient` pairs into a coordinate vector of one degree.
    fn vector(&self, terms: &[(String, Rational)], degree: Option<usize>) -> Result<(usize, Vec<Rational>), RingError> {
        let mut deg = degree;
        let mut coords: Option<Vec<Rational>> = degree.map(|d| vec![Rational::zero(); self.labels[d].len()]);
        for (label, c) in terms {
            let (d, i) = self.lookup(label)?;
            match deg {
                Some(x) if x != d => return Err(RingError::ProductDegree { a: label.clone(), b: label.clone() }),
                Some(_) => {}
                None => {
                    deg = Some(d);
                    coords = Some(vec![Rational::zero(); self.labels[d].len()]);
                }
            }
            coords.as_mut().expect("set with degree")[i] += c;
        }
        Ok((deg.unwrap_or(0), coords.unwrap_or_default()))
    }

    /// Sets `a ∪ b`; `out` lists the result as label/coefficient pairs.
    pub fn set_product(&mut self, a: &str, b: &str, out: &[(String, Rational)]) -> Result<(), RingError> {
        let ka = self.lookup(a)?;
        let kb = self.lookup(b)?;
        let target = ka.0 + kb.0;
        if target > self.dim {
            if out.iter().all(|(_, c)| c.is_zero()) {
                return Ok(());
            }
            return Err(RingError::ProductDegree { a: a.into(), b: b.into() });
        }
        let (_, v) = self
            .vector(out, Some(target))
            .map_err(|_| RingError::ProductDegree { a: a.into(), b: b.into() })?;
        self.entries.insert((ka, kb), v);
        Ok(())
    }

    /// Sets `a ∪ b` from a coordinate vector in degree `deg a + deg b`.
    pub fn set_product_vector(&mut self, a: (usize, usize), b: (usize, usize), out: Vec<Rational>) {
        self.entries.insert((a, b), out);
    }

    pub fn set_orientation(&mut self, terms: &[(String, Rational)]) -> Result<(), RingError> {
        let (deg, v) = self.vector(terms, Some(self.dim))?;
        debug_assert_eq!(deg, self.dim);
        self.orientation = v;
        Ok(())
    }

    pub fn set_orientation_vector(&mut self, v: Vec<Rational>) {
        self.orientation = v;
    }

    pub fn add_class(&mut self, name: &str, terms: Vec<(String, Rational)>) {
        self.classes.push((name.to_string(), terms));
    }

    pub fn build(self) -> Result<CohomologyRing, RingError> {
        let betti: Vec<usize> = self.labels.iter().map(Vec::len).collect();
        let mut entries = self.entries.clone();
        for (&(ka, kb), v) in &self.entries {
            let sign = if (ka.0 * kb.0) % 2 == 0 { q(1) } else { q(-1) };
            let flipped: Vec<Rational> = v.iter().map(|c| c * &sign).collect();
            match self.entries.get(&(kb, ka)) {
                Some(existing) if *existing != flipped => {
                    return Err(RingError::Contradiction {
                        a: self.labels[ka.0][ka.1].clone(),
                        b: self.labels[kb.0][kb.1].clone(),
                    })
                }
                Some(_) => {}
                None => {
                    entries.insert((kb, ka), flipped);
                }
            }
        }
        if betti[0] == 1 {
            for (deg, n) in betti.iter().enumerate() {
                for i in 0..*n {
                    let mut e = vec![Rational::zero(); *n];
                    e[i] = Rational::one();
                    entries.entry(((0, 0), (deg, i))).or_insert_with(|| e.clone());
                    entries.entry(((deg, i), (0, 0))).or_insert(e);
                }
            }
        }
        let mut products = BTreeMap::new();
        for (((p, i), (qd, j)), v) in entries {
            let block = products
                .entry((p, qd))
                .or_insert_with(|| MatrixQ::zeros(betti[p + qd], betti[p] * betti[qd]));
            for (r, c) in v.into_iter().enumerate() {
                block.set(r, i * betti[qd] + j, c);
            }
        }
        let mut ring = CohomologyRing::from_parts(self.dim, self.labels.clone(), products, self.orientation.clone())?;
        for (name, terms) in &self.classes {
            let (deg, v) = self.vector(terms, None)?;
            ring.add_class(name, deg, v)?;
        }
        Ok(ring)
    }
}

/// A ring of even dimension `2n` with a degree-2 class whose `n`-th power
/// evaluates to a nonzero number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticData {
    ring: CohomologyRing,
    omega: Vec<Rational>,
}

impl SymplecticData {
    pub fn new(ring: CohomologyRing, omega: Vec<Rational>) -> Result<Self, RingError> {
        ring.validate()?;
        if !ring.dim().is_multiple_of(2) {
            return Err(RingError::OddDimension(ring.dim()));
        }
        if omega.len() != ring.betti_at(2) && ring.dim() >= 2 {
            return Err(RingError::ClassDegree {
                name: "omega".into(),
                expected: 2,
                found: omega.len(),
            });
        }
        let half = ring.dim() / 2;
        let mut power = vec![Rational::one()];
        for step in 0..half {
            power = ring.cup(2, &omega, 2 * step, &power);
        }
        if ring.evaluate(&power).is_zero() {
            return Err(RingError::DegenerateTopPower);
        }
        Ok(SymplecticData { ring, omega })
    }

    /// Convenience: resolve the class by name on the ring.
    pub fn from_named_class(ring: CohomologyRing, class: &str) -> Result<Self, RingError> {
        let omega = ring.degree_two_class(class)?;
        Self::new(ring, omega)
    }

    pub fn ring(&self) -> &CohomologyRing {
        &self.ring
    }

    pub fn omega(&self) -> &[Rational] {
        &self.omega
    }

    /// `n` for a manifold of dimension `2n`.
    pub fn half_dim(&self) -> usize {
        self.ring.dim() / 2
    }

    pub fn bmodule(&self) -> BModule {
        lefschetz_bmodule(&self.ring, &self.omega)
    }
}

/// `H*` as a `b`-module: weight `k` is `H^k`, `e` is multiplication by the
/// degree-2 class `alpha`.
pub fn lefschetz_bmodule(ring: &CohomologyRing, alpha: &[Rational]) -> BModule {
    let space = GradedSpace::new((0..=ring.dim()).map(|k| (k as i64, ring.betti_at(k))));
    let mut e = BTreeMap::new();
    for k in 0..=ring.dim() {
        if k + 2 <= ring.dim() && ring.betti_at(k) > 0 && ring.betti_at(k + 2) > 0 {
            e.insert(k as i64, ring.multiplication_matrix(2, alpha, k));
        }
    }
    BModule::new(space, e).expect("multiplication matrices follow the grading")
}

/// `α^k: H^{center-k} → H^{center+k}` onto for every `k ≥ 0`.
pub fn lefschetz_maps_onto(ring: &CohomologyRing, alpha: &[Rational], center: i64) -> bool {
    first_non_surjective(ring, alpha, center).is_none()
}

/// A failing Lefschetz-type map: `α^power: H^source → H^target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonSurjective {
    pub power: usize,
    pub source: i64,
    pub target: i64,
    pub rank: usize,
    pub target_dim: usize,
}

/// The first `k` (ascending) for which `α^k: H^{center-k} → H^{center+k}` is
/// not onto.
pub fn first_non_surjective(ring: &CohomologyRing, alpha: &[Rational], center: i64) -> Option<NonSurjective> {
    let n = ring.dim() as i64;
    let v = lefschetz_bmodule(ring, alpha);
    for k in 0..=n.max(0) {
        let target = center + k;
        if target < 0 || target > n {
            continue;
        }
        let target_dim = ring.betti_at(target as usize);
        let rank = v.e_rank(k as usize, center - k);
        if rank != target_dim {
            return Some(NonSurjective {
                power: k as usize,
                source: center - k,
                target,
                rank,
                target_dim,
            });
        }
    }
    None
}

/// All `[ω]^k: H^{n-k} → H^{n+k}` onto, on a manifold of dimension `2n`.
pub fn hard_lefschetz(s: &SymplecticData) -> bool {
    lefschetz_maps_onto(s.ring(), s.omega(), s.half_dim() as i64)
}

/// All `[ω]^k: H^{n+1-k} → H^{n+1+k}` onto.
pub fn weak_lefschetz(s: &SymplecticData) -> bool {
    lefschetz_maps_onto(s.ring(), s.omega(), s.half_dim() as i64 + 1)
}

/// Rank of `[ω]: H^1 → H^3` and whether it is injective.
pub fn omega_on_h1(s: &SymplecticData) -> (usize, bool) {
    let r = s.bmodule().e_rank(1, 1);
    (r, r == s.ring().betti_at(1))
}

/// The three conditions of the Lefschetz/filtration equivalence at level `m`,
/// each computed on its own.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LefFilReport {
    pub m: i64,
    /// `α^k: H^{m-k} → H^{m+k}` onto for all `k ≥ 0`.
    pub maps_onto: bool,
    /// `H_m = H`.
    pub full_at_m: bool,
    /// `H_{n-m-1} = 0`.
    pub zero_at_dual: bool,
}

impl LefFilReport {
    pub fn consistent(&self) -> bool {
        self.maps_onto == self.full_at_m && self.full_at_m == self.zero_at_dual
    }
}

pub fn lef_fil_equiv_report(ring: &CohomologyRing, alpha: &[Rational], m: i64) -> LefFilReport {
    let v = lefschetz_bmodule(ring, alpha);
    let filt = canonical_filtration(&v);
    lef_fil_from(ring, alpha, &filt, m)
}

pub(crate) fn lef_fil_from(
    ring: &CohomologyRing,
    alpha: &[Rational],
    filt: &CanonicalFiltration,
    m: i64,
) -> LefFilReport {
    let n = ring.dim() as i64;
    let total: usize = ring.betti().iter().sum();
    LefFilReport {
        m,
        maps_onto: lefschetz_maps_onto(ring, alpha, m),
        full_at_m: filt.total_dim(m) == total,
        zero_at_dual: filt.total_dim(n - m - 1) == 0,
    }
}

/// Pairing between the graded pieces `gr_m` and `gr_{n-m}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPairing {
    pub m: i64,
    pub matrix: MatrixQ,
    pub nondegenerate: bool,
}

/// Homogeneous lifts of a basis of `V_m / V_{m-1}`, as `(degree, coordinates)`.
fn graded_lifts(filt: &CanonicalFiltration, m: i64) -> Vec<(usize, Vec<Rational>)> {
    let upper = filt.level(m);
    let lower = filt.level(m - 1);
    let mut out = Vec::new();
    for (k, up) in &upper {
        let low = &lower[k];
        for v in low.complement_in(up).expect("same ambient") {
            out.push((*k as usize, v));
        }
    }
    out
}

/// `orientation(β ∪ γ)` on lifts of bases of `gr_m` and `gr_{n-m}`.
pub fn poincare_graded_pairing(
    ring: &CohomologyRing,
    alpha: &[Rational],
    m: i64,
) -> GradedPairing {
    let filt = canonical_filtration(&lefschetz_bmodule(ring, alpha));
    pairing_from(ring, &filt, m)
}

pub(crate) fn pairing_from(ring: &CohomologyRing, filt: &CanonicalFiltration, m: i64) -> GradedPairing {
    let n = ring.dim();
    let left = graded_lifts(filt, m);
    let right = graded_lifts(filt, n as i64 - m);
    let mut matrix = MatrixQ::zeros(left.len(), right.len());
    for (i, (p, x)) in left.iter().enumerate() {
        for (j, (qd, y)) in right.iter().enumerate() {
            if p + qd == n {
                matrix.set(i, j, ring.evaluate(&ring.cup(*p, x, *qd, y)));
            }
        }
    }
    let nondegenerate = matrix.rows() == matrix.cols() && matrix.rank() == matrix.rows();
    GradedPairing {
        m,
        matrix,
        nondegenerate,
    }
}

/// `orientation(β ∪ γ) = 0` for all `β ∈ V_m`, `γ ∈ V_{n-m-1}`: the pairing
/// descends to the graded pieces.
pub fn pairing_factors(ring: &CohomologyRing, filt: &CanonicalFiltration, m: i64) -> bool {
    let n = ring.dim();
    let left = filt.level(m);
    let right = filt.level(n as i64 - m - 1);
    left.iter().all(|(&p, ls)| {
        let qd = n as i64 - p;
        let Some(rs) = right.get(&qd) else {
            return true;
        };
        ls.basis().iter().all(|x| {
            rs.basis()
                .iter()
                .all(|y| ring.evaluate(&ring.cup(p as usize, x, qd as usize, y)).is_zero())
        })
    })
}

/// `Φ∘Ψ: H → (H[-n])*` with `Φ(β)(γ) = orientation(β ∪ γ)` and
/// `Ψ(β) = (-1)^{k(k+1)/2} β` on degree `k`. With the dual action
/// `(e·α)(v) = -α(e·v)` this is a `b`-module homomorphism.
pub fn poincare_twist_hom(ring: &CohomologyRing, alpha: &[Rational]) -> GradedHom {
    let n = ring.dim();
    let source = lefschetz_bmodule(ring, alpha);
    let target = source.shift(-(n as i64)).dual();
    let mut maps = BTreeMap::new();
    for k in 0..=n {
        let (rows, cols) = (ring.betti_at(n - k), ring.betti_at(k));
        if rows == 0 || cols == 0 {
            continue;
        }
        let sign = if (k * (k + 1) / 2) % 2 == 0 { q(1) } else { q(-1) };
        let pm = ring.poincare_matrix(k);
        // Row j: the functional's value on the j-th basis vector of degree n-k.
        maps.insert(k as i64, pm.transpose().scale(&sign));
    }
    GradedHom::new(source, target, 0, maps).expect("shapes follow Poincare duality")
}

/// Filtration jumps for the Lefschetz module of `(ring, alpha)`.
pub fn ring_saturation(ring: &CohomologyRing, alpha: &[Rational]) -> Result<Saturation, FiltrationError> {
    let v = lefschetz_bmodule(ring, alpha);
    let filt = canonical_filtration(&v);
    saturation_from(&v, &filt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{projective_space, torus};

    #[test]
    fn point_is_valid() {
        let pt = projective_space(0);
        assert!(pt.is_valid());
        let v = lefschetz_bmodule(&pt, &[]);
        assert_eq!(v, BModule::trivial(0, 1));
    }

    #[test]
    fn zeroed_orientation_is_degenerate() {
        let cp2 = projective_space(2);
        let broken = CohomologyRing::from_parts(
            cp2.dim(),
            cp2.labels().to_vec(),
            cp2.products.clone(),
            vec![q(0)],
        )
        .unwrap();
        assert!(matches!(broken.validate(), Err(RingError::Degenerate { .. })));
    }

    #[test]
    fn builder_symmetrizes_and_rejects_contradictions() {
        let labels = vec![vec!["1".into()], vec!["a".into(), "b".into()], vec!["t".into()]];
        let mut b = RingBuilder::new(2, labels.clone()).unwrap();
        b.set_product("a", "b", &[("t".into(), q(1))]).unwrap();
        b.set_orientation(&[("t".into(), q(1))]).unwrap();
        let r = b.build().unwrap();
        assert!(r.is_valid());
        assert_eq!(r.cup(1, &[q(0), q(1)], 1, &[q(1), q(0)]), vec![q(-1)]);

        let mut b = RingBuilder::new(2, labels).unwrap();
        b.set_product("a", "b", &[("t".into(), q(1))]).unwrap();
        b.set_product("b", "a", &[("t".into(), q(1))]).unwrap();
        assert!(matches!(b.build(), Err(RingError::Contradiction { .. })));
    }

    #[test]
    fn torus_surface_is_hard_lefschetz() {
        let t2 = torus(2);
        let s = SymplecticData::from_named_class(t2, "x1x2").unwrap();
        assert!(hard_lefschetz(&s));
        assert!(weak_lefschetz(&s));
    }

    #[test]
    fn odd_dimension_rejected() {
        assert!(matches!(
            SymplecticData::new(torus(3), vec![q(1), q(0), q(0)]),
            Err(RingError::OddDimension(3))
        ));
    }
}
