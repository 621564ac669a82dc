//! Example inputs: projective spaces, tori, products, nilmanifold rings from
//! the Chevalley–Eilenberg complex, the blowup `b`-module and a small catalog.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{One, Zero};

use crate::cohomology::{lefschetz_bmodule, CohomologyRing, RingBuilder, SymplecticData};
use crate::error::{ConstructionError, RingError};
use crate::linalg::{format_rational, q, MatrixQ, Rational, Subspace};
use crate::module::BModule;

/// `H*(CP^n)`: basis `1, h, h^2, …, h^n` in degrees `0, 2, …, 2n`, with
/// `orientation(h^n) = 1`. The class `h` is also available as `omega`.
pub fn projective_space(n: usize) -> CohomologyRing {
    let dim = 2 * n;
    let label = |j: usize| match j {
        0 => "1".to_string(),
        1 => "h".to_string(),
        _ => format!("h^{j}"),
    };
    let labels: Vec<Vec<String>> = (0..=dim)
        .map(|d| if d % 2 == 0 { vec![label(d / 2)] } else { Vec::new() })
        .collect();
    let mut b = RingBuilder::new(dim, labels).expect("labels are distinct");
    for a in 0..=n {
        for c in 0..=n - a {
            b.set_product_vector((2 * a, 0), (2 * c, 0), vec![Rational::one()]);
        }
    }
    b.set_orientation_vector(vec![Rational::one()]);
    if n > 0 {
        b.add_class("omega", vec![("h".to_string(), Rational::one())]);
    }
    b.build().expect("projective space ring")
}

/// Monomials of an exterior algebra as bit masks over the generators.
pub(crate) mod exterior {
    use super::*;

    /// Masks with `k` bits set among `n`, in lexicographic order of their
    /// index tuples.
    pub fn basis(n: usize, k: usize) -> Vec<u32> {
        fn rec(start: usize, n: usize, k: usize, acc: u32, out: &mut Vec<u32>) {
            if k == 0 {
                out.push(acc);
                return;
            }
            for i in start..n {
                if n - i < k {
                    break;
                }
                rec(i + 1, n, k - 1, acc | (1 << i), out);
            }
        }
        let mut out = Vec::new();
        rec(0, n, k, 0, &mut out);
        out
    }

    /// `a ∧ b = sign · (a | b)`, or `None` when they share a generator.
    pub fn wedge(a: u32, b: u32) -> Option<(u32, i64)> {
        if a & b != 0 {
            return None;
        }
        let mut swaps = 0;
        let mut rest = b;
        while rest != 0 {
            let j = rest.trailing_zeros();
            swaps += (a >> (j + 1)).count_ones();
            rest &= rest - 1;
        }
        Some((a | b, if swaps % 2 == 0 { 1 } else { -1 }))
    }

    pub fn name(mask: u32) -> String {
        if mask == 0 {
            return "1".into();
        }
        (0..32)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| format!("x{}", i + 1))
            .collect()
    }

    /// Index of every monomial of degree `k` in [`basis`].
    pub fn index(n: usize, k: usize) -> HashMap<u32, usize> {
        basis(n, k).into_iter().enumerate().map(|(i, m)| (m, i)).collect()
    }
}

/// `H*(T^k)`: the exterior algebra on `x1, …, xk`, orientation `x1⋯xk ↦ 1`.
/// For even `k` the class `omega = x1x2 + x3x4 + …` is attached.
pub fn torus(k: usize) -> CohomologyRing {
    let bases: Vec<Vec<u32>> = (0..=k).map(|d| exterior::basis(k, d)).collect();
    let index: Vec<HashMap<u32, usize>> = (0..=k).map(|d| exterior::index(k, d)).collect();
    let labels = bases
        .iter()
        .map(|b| b.iter().map(|&m| exterior::name(m)).collect())
        .collect();
    let mut b = RingBuilder::new(k, labels).expect("monomial labels are distinct");
    for p in 0..=k {
        for qd in 0..=k - p {
            for (i, &x) in bases[p].iter().enumerate() {
                for (j, &y) in bases[qd].iter().enumerate() {
                    let mut out = vec![Rational::zero(); bases[p + qd].len()];
                    if let Some((m, s)) = exterior::wedge(x, y) {
                        out[index[p + qd][&m]] = q(s);
                    }
                    b.set_product_vector((p, i), (qd, j), out);
                }
            }
        }
    }
    b.set_orientation_vector(vec![Rational::one()]);
    if k >= 2 && k.is_multiple_of(2) {
        let terms = (0..k / 2)
            .map(|i| (format!("x{}x{}", 2 * i + 1, 2 * i + 2), Rational::one()))
            .collect();
        b.add_class("omega", terms);
    }
    b.build().expect("torus ring")
}

/// The graded tensor product `A ⊗ B` with `(a⊗b)(c⊗d) = (-1)^{|b||c|} ac⊗bd`.
///
/// Degree-`k` basis: pairs `a|b` ordered by the degree of `a`, then by the
/// index of `a`, then of `b`. Named classes carry over as `name|1` and
/// `1|name`; a name of the same degree on both sides also yields the sum
/// class `name`.
pub fn product(a: &CohomologyRing, b: &CohomologyRing) -> CohomologyRing {
    let dim = a.dim() + b.dim();
    // pairs[k] = list of (p, i, q, j)
    let mut pairs: Vec<Vec<(usize, usize, usize, usize)>> = vec![Vec::new(); dim + 1];
    for p in 0..=a.dim() {
        for qd in 0..=b.dim() {
            for i in 0..a.betti_at(p) {
                for j in 0..b.betti_at(qd) {
                    pairs[p + qd].push((p, i, qd, j));
                }
            }
        }
    }
    for list in &mut pairs {
        list.sort();
    }
    let index: Vec<HashMap<(usize, usize, usize, usize), usize>> = pairs
        .iter()
        .map(|l| l.iter().enumerate().map(|(n, &t)| (t, n)).collect())
        .collect();
    let labels: Vec<Vec<String>> = pairs
        .iter()
        .map(|l| {
            l.iter()
                .map(|&(p, i, qd, j)| format!("{}|{}", a.labels()[p][i], b.labels()[qd][j]))
                .collect()
        })
        .collect();
    let unit = |r: &CohomologyRing, d: usize, i: usize| {
        let mut v = vec![Rational::zero(); r.betti_at(d)];
        v[i] = Rational::one();
        v
    };
    let mut builder = RingBuilder::new(dim, labels).expect("pair labels are distinct");
    for k1 in 0..=dim {
        for k2 in 0..=dim - k1 {
            for (n1, &(p1, i1, q1, j1)) in pairs[k1].iter().enumerate() {
                for (n2, &(p2, i2, q2, j2)) in pairs[k2].iter().enumerate() {
                    let mut out = vec![Rational::zero(); pairs[k1 + k2].len()];
                    if p1 + p2 <= a.dim() && q1 + q2 <= b.dim() {
                        let ac = a.cup(p1, &unit(a, p1, i1), p2, &unit(a, p2, i2));
                        let bd = b.cup(q1, &unit(b, q1, j1), q2, &unit(b, q2, j2));
                        let sign = if (q1 * p2) % 2 == 0 { q(1) } else { q(-1) };
                        for (x, cx) in ac.iter().enumerate() {
                            if cx.is_zero() {
                                continue;
                            }
                            for (y, cy) in bd.iter().enumerate() {
                                if cy.is_zero() {
                                    continue;
                                }
                                let t = index[k1 + k2][&(p1 + p2, x, q1 + q2, y)];
                                out[t] += &sign * cx * cy;
                            }
                        }
                    }
                    builder.set_product_vector((k1, n1), (k2, n2), out);
                }
            }
        }
    }
    let mut orientation = vec![Rational::zero(); pairs[dim].len()];
    for (n, &(_, i, _, j)) in pairs[dim].iter().enumerate() {
        orientation[n] = &a.orientation()[i] * &b.orientation()[j];
    }
    builder.set_orientation_vector(orientation);
    let mut ring = builder.build().expect("tensor product of rings");
    let embed = |deg: usize, va: Option<&Vec<Rational>>, vb: Option<&Vec<Rational>>| {
        let mut v = vec![Rational::zero(); pairs[deg].len()];
        if let Some(va) = va {
            for (i, c) in va.iter().enumerate() {
                v[index[deg][&(deg, i, 0, 0)]] += c;
            }
        }
        if let Some(vb) = vb {
            for (j, c) in vb.iter().enumerate() {
                v[index[deg][&(0, 0, deg, j)]] += c;
            }
        }
        v
    };
    for (name, (deg, v)) in a.classes() {
        ring.add_class(&format!("{name}|1"), *deg, embed(*deg, Some(v), None))
            .expect("degree preserved");
    }
    for (name, (deg, v)) in b.classes() {
        ring.add_class(&format!("1|{name}"), *deg, embed(*deg, None, Some(v)))
            .expect("degree preserved");
        if let Some((da, va)) = a.classes().get(name) {
            if da == deg {
                ring.add_class(name, *deg, embed(*deg, Some(va), Some(v)))
                    .expect("degree preserved");
            }
        }
    }
    ring
}

/// A 2-form `Σ coeff · x^i ∧ x^j`, 1-based indices.
pub type TwoForm = Vec<(usize, usize, Rational)>;

/// One bracket `[X_i, X_j] = Σ out_k X_k`, 1-based with `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bracket {
    pub i: usize,
    pub j: usize,
    pub out: BTreeMap<usize, Rational>,
}

/// A nilpotent Lie algebra given by structure constants, optionally with a
/// candidate symplectic 2-form and a provenance note.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotentLieAlgebra {
    dim: usize,
    brackets: BTreeMap<(usize, usize), Vec<Rational>>,
    symplectic: Option<TwoForm>,
    provenance: Option<String>,
}

impl NilpotentLieAlgebra {
    pub fn new(dim: usize, brackets: &[Bracket]) -> Result<Self, ConstructionError> {
        let mut map = BTreeMap::new();
        for b in brackets {
            if b.i == 0 || b.j == 0 || b.i > dim || b.j > dim {
                return Err(ConstructionError::BracketIndex { i: b.i, j: b.j, dim });
            }
            if b.i >= b.j {
                return Err(ConstructionError::BracketOrder { i: b.i, j: b.j });
            }
            let mut v = vec![Rational::zero(); dim];
            for (&k, c) in &b.out {
                if k == 0 || k > dim {
                    return Err(ConstructionError::BracketIndex { i: b.i, j: k, dim });
                }
                v[k - 1] += c;
            }
            map.insert((b.i - 1, b.j - 1), v);
        }
        let alg = NilpotentLieAlgebra {
            dim,
            brackets: map,
            symplectic: None,
            provenance: None,
        };
        alg.validate()?;
        Ok(alg)
    }

    /// From differentials in the notation `d x^k = Σ coeff · x^i ∧ x^j`;
    /// since `d x^k = -Σ c^k_ij x^i ∧ x^j`, this sets `c^k_ij = -coeff`.
    pub fn from_differentials(dim: usize, diffs: &[(usize, TwoForm)]) -> Result<Self, ConstructionError> {
        let mut acc: BTreeMap<(usize, usize), BTreeMap<usize, Rational>> = BTreeMap::new();
        for (k, form) in diffs {
            for (i, j, c) in form {
                let (i, j, c) = if i < j { (*i, *j, c.clone()) } else { (*j, *i, -c) };
                *acc.entry((i, j)).or_default().entry(*k).or_insert_with(Rational::zero) -= c;
            }
        }
        let brackets: Vec<Bracket> = acc
            .into_iter()
            .map(|((i, j), out)| Bracket { i, j, out })
            .collect();
        Self::new(dim, &brackets)
    }

    pub fn abelian(dim: usize) -> Self {
        NilpotentLieAlgebra {
            dim,
            brackets: BTreeMap::new(),
            symplectic: None,
            provenance: None,
        }
    }

    pub fn with_symplectic(mut self, form: TwoForm) -> Self {
        self.symplectic = Some(form);
        self
    }

    pub fn with_provenance(mut self, note: &str) -> Self {
        self.provenance = Some(note.to_string());
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn symplectic(&self) -> Option<&TwoForm> {
        self.symplectic.as_ref()
    }

    pub fn provenance(&self) -> Option<&str> {
        self.provenance.as_deref()
    }

    /// Nonzero brackets, 1-based.
    pub fn brackets(&self) -> Vec<Bracket> {
        self.brackets
            .iter()
            .filter(|(_, v)| v.iter().any(|c| !c.is_zero()))
            .map(|(&(i, j), v)| Bracket {
                i: i + 1,
                j: j + 1,
                out: v
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (k + 1, c.clone()))
                    .collect(),
            })
            .collect()
    }

    /// `[u, v]` for coordinate vectors.
    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (&(i, j), c) in &self.brackets {
            let coeff = &u[i] * &v[j] - &u[j] * &v[i];
            if coeff.is_zero() {
                continue;
            }
            for (k, ck) in c.iter().enumerate() {
                out[k] += &coeff * ck;
            }
        }
        out
    }

    fn unit(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim];
        v[i] = Rational::one();
        v
    }

    pub fn validate(&self) -> Result<(), ConstructionError> {
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in j + 1..self.dim {
                    let (x, y, z) = (self.unit(i), self.unit(j), self.unit(k));
                    let a = self.bracket(&self.bracket(&x, &y), &z);
                    let b = self.bracket(&self.bracket(&y, &z), &x);
                    let c = self.bracket(&self.bracket(&z, &x), &y);
                    if a.iter().zip(&b).zip(&c).any(|((a, b), c)| !(a + b + c).is_zero()) {
                        return Err(ConstructionError::Jacobi {
                            i: i + 1,
                            j: j + 1,
                            k: k + 1,
                        });
                    }
                }
            }
        }
        let mut term = Subspace::full(self.dim);
        loop {
            if term.is_zero() {
                return Ok(());
            }
            let mut next = Vec::new();
            for i in 0..self.dim {
                for v in term.basis() {
                    next.push(self.bracket(&self.unit(i), v));
                }
            }
            let next = Subspace::from_vectors(self.dim, next);
            if next.dim() == term.dim() {
                return Err(ConstructionError::NotNilpotent);
            }
            term = next;
        }
    }

    /// `d x^k` as `(mask, coeff)` pairs.
    fn dx(&self, k: usize) -> Vec<(u32, Rational)> {
        self.brackets
            .iter()
            .filter(|(_, c)| !c[k].is_zero())
            .map(|(&(i, j), c)| ((1u32 << i) | (1u32 << j), -&c[k]))
            .collect()
    }

    /// Matrix of `d: Λ^k → Λ^{k+1}` in the monomial bases.
    pub fn differential(&self, k: usize) -> MatrixQ {
        let n = self.dim;
        let src = exterior::basis(n, k);
        let tgt = exterior::index(n, k + 1);
        let mut m = MatrixQ::zeros(tgt.len(), src.len());
        if k >= n {
            return m;
        }
        let dxs: Vec<Vec<(u32, Rational)>> = (0..n).map(|i| self.dx(i)).collect();
        for (col, &mono) in src.iter().enumerate() {
            let gens: Vec<usize> = (0..n).filter(|i| mono & (1 << i) != 0).collect();
            for (s, &g) in gens.iter().enumerate() {
                let prefix: u32 = gens[..s].iter().map(|&i| 1u32 << i).sum();
                let suffix: u32 = gens[s + 1..].iter().map(|&i| 1u32 << i).sum();
                let sign = if s % 2 == 0 { 1 } else { -1 };
                for (dm, c) in &dxs[g] {
                    let Some((m1, s1)) = exterior::wedge(prefix, *dm) else {
                        continue;
                    };
                    let Some((m2, s2)) = exterior::wedge(m1, suffix) else {
                        continue;
                    };
                    let row = tgt[&m2];
                    let v = m.get(row, col) + c * q(sign * s1 * s2);
                    m.set(row, col, v);
                }
            }
        }
        m
    }

    /// `d ∘ d = 0` in every degree.
    pub fn d_squared_vanishes(&self) -> bool {
        (0..self.dim.saturating_sub(1)).all(|k| {
            self.differential(k + 1)
                .mul(&self.differential(k))
                .expect("composable")
                .is_zero()
        })
    }
}

/// Cohomology of the Chevalley–Eilenberg complex with chosen representatives.
#[derive(Clone, Debug)]
pub struct CeComplex {
    dim: usize,
    /// Per degree: basis of exact forms followed by the representatives.
    exact: Vec<Vec<Vec<Rational>>>,
    reps: Vec<Vec<Vec<Rational>>>,
    cycles: Vec<Subspace>,
}

impl CeComplex {
    pub fn new(alg: &NilpotentLieAlgebra) -> Self {
        let n = alg.dim();
        let diffs: Vec<MatrixQ> = (0..=n).map(|k| alg.differential(k)).collect();
        let mut exact = Vec::new();
        let mut reps = Vec::new();
        let mut cycles = Vec::new();
        for k in 0..=n {
            let z = diffs[k].kernel_basis();
            let b = if k == 0 {
                Subspace::zero(1)
            } else {
                diffs[k - 1].image_basis()
            };
            let r = b.complement_in(&z).expect("exact forms are closed");
            exact.push(b.basis().to_vec());
            reps.push(r);
            cycles.push(z);
        }
        CeComplex {
            dim: n,
            exact,
            reps,
            cycles,
        }
    }

    pub fn betti(&self) -> Vec<usize> {
        self.reps.iter().map(Vec::len).collect()
    }

    pub fn representatives(&self, k: usize) -> &[Vec<Rational>] {
        &self.reps[k]
    }

    /// Class of a closed `k`-form in the representative basis, or `None` if
    /// the form is not closed.
    pub fn class_of(&self, k: usize, form: &[Rational]) -> Option<Vec<Rational>> {
        if !self.cycles[k].contains_vector(form) {
            return None;
        }
        let mut cols = self.exact[k].clone();
        cols.extend(self.reps[k].iter().cloned());
        let ambient = form.len();
        let a = MatrixQ::from_columns(&cols, ambient).expect("ambient lengths");
        let rhs = MatrixQ::from_columns(&[form.to_vec()], ambient).expect("ambient lengths");
        let sol = a.solve(&rhs).expect("shapes").expect("closed forms are spanned");
        let skip = self.exact[k].len();
        Some((0..self.reps[k].len()).map(|i| sol.get(skip + i, 0).clone()).collect())
    }

    fn wedge_forms(&self, p: usize, x: &[Rational], qd: usize, y: &[Rational]) -> Vec<Rational> {
        let n = self.dim;
        let bp = exterior::basis(n, p);
        let bq = exterior::basis(n, qd);
        let idx = exterior::index(n, p + qd);
        let mut out = vec![Rational::zero(); idx.len()];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                if let Some((m, s)) = exterior::wedge(bp[i], bq[j]) {
                    out[idx[&m]] += a * b * q(s);
                }
            }
        }
        out
    }

    /// The cohomology ring with the wedge product on representatives.
    pub fn ring(&self) -> Result<CohomologyRing, ConstructionError> {
        let n = self.dim;
        let betti = self.betti();
        if betti[n] != 1 {
            return Err(ConstructionError::NotUnimodular(betti[n]));
        }
        let labels: Vec<Vec<String>> = (0..=n)
            .map(|k| {
                let basis = exterior::basis(n, k);
                self.reps[k].iter().map(|r| form_label(&basis, r)).collect()
            })
            .collect();
        let mut builder = RingBuilder::new(n, labels)?;
        for p in 0..=n {
            for qd in 0..=n - p {
                for (i, x) in self.reps[p].iter().enumerate() {
                    for (j, y) in self.reps[qd].iter().enumerate() {
                        let w = self.wedge_forms(p, x, qd, y);
                        let c = self.class_of(p + qd, &w).expect("wedge of closed forms is closed");
                        builder.set_product_vector((p, i), (qd, j), c);
                    }
                }
            }
        }
        builder.set_orientation_vector(vec![self.reps[n][0][0].clone()]);
        Ok(builder.build()?)
    }

    /// Coordinates of a 2-form in the monomial basis of `Λ^2`.
    pub fn two_form_vector(&self, form: &TwoForm) -> Vec<Rational> {
        let idx = exterior::index(self.dim, 2);
        let mut v = vec![Rational::zero(); idx.len()];
        for (i, j, c) in form {
            let (a, b) = (i - 1, j - 1);
            if a == b {
                continue;
            }
            let (m, s) = exterior::wedge(1 << a, 1 << b).expect("distinct generators");
            v[idx[&m]] += c * q(s);
        }
        v
    }
}

fn form_label(basis: &[u32], v: &[Rational]) -> String {
    let mut s = String::new();
    for (m, c) in basis.iter().zip(v) {
        if c.is_zero() {
            continue;
        }
        let neg = *c < Rational::zero();
        let abs = if neg { -c } else { c.clone() };
        if neg {
            s.push('-');
        } else if !s.is_empty() {
            s.push('+');
        }
        if !abs.is_one() {
            s.push_str(&format_rational(&abs));
            if *m != 0 {
                s.push('*');
            }
        }
        if *m != 0 || abs.is_one() {
            s.push_str(&exterior::name(*m));
        }
    }
    s
}

/// `H*` of the nilmanifold of `alg`. A symplectic form on the algebra, when
/// present, must be closed and becomes the class `omega`.
pub fn chevalley_eilenberg(alg: &NilpotentLieAlgebra) -> Result<CohomologyRing, ConstructionError> {
    alg.validate()?;
    let ce = CeComplex::new(alg);
    let mut ring = ce.ring()?;
    if let Some(form) = alg.symplectic() {
        let v = ce.two_form_vector(form);
        let c = ce
            .class_of(2, &v)
            .ok_or_else(|| ConstructionError::NotClosed(form_label(&exterior::basis(alg.dim(), 2), &v)))?;
        ring.add_class("omega", 2, c)?;
    }
    Ok(ring)
}

/// `H*(CP^N) ⊕ (H*(M) ⊗ H*(CP^{k-2})[2])` as a `b`-module, for `M` of
/// dimension `2N - 2k`.
pub fn blowup_bmodule(s: &SymplecticData, ambient: usize, k: usize) -> Result<BModule, ConstructionError> {
    let dim_m = s.ring().dim();
    if k < 2 || dim_m + 2 * k != 2 * ambient {
        return Err(ConstructionError::BlowupDimensions {
            manifold_dim: dim_m,
            k,
            ambient,
        });
    }
    let cp = lefschetz_bmodule(&projective_space(ambient), &hyperplane(ambient));
    let w = lefschetz_bmodule(&projective_space(k - 2), &hyperplane(k - 2)).shift(2);
    Ok(cp.direct_sum(&s.bmodule().tensor(&w)))
}

fn hyperplane(n: usize) -> Vec<Rational> {
    if n == 0 {
        Vec::new()
    } else {
        vec![Rational::one()]
    }
}

/// What a catalog name resolves to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatalogItem {
    Lie(NilpotentLieAlgebra),
    Ring(CohomologyRing),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    pub provenance: String,
    pub item: CatalogItem,
}

impl CatalogEntry {
    /// The cohomology ring, computing it for Lie algebra entries.
    pub fn ring(&self) -> Result<CohomologyRing, ConstructionError> {
        match &self.item {
            CatalogItem::Lie(a) => chevalley_eilenberg(a),
            CatalogItem::Ring(r) => Ok(r.clone()),
        }
    }
}

const SALAMON_NOTE: &str = "6-dimensional nilpotent Lie algebra in Salamon's notation \
     (de^k = e^{ij} listed per generator), from the published classification of \
     6-dimensional nilpotent Lie algebras; symplectic form checked closed and non-degenerate here";

struct Fixed {
    name: &'static str,
    description: &'static str,
    provenance: &'static str,
    dim: usize,
    /// `(k, [(i, j)])`: `d x^k = Σ x^i ∧ x^j`.
    diffs: &'static [(usize, &'static [(usize, usize)])],
    symplectic: &'static [(usize, usize, i64)],
}

const FIXED: &[Fixed] = &[
    Fixed {
        name: "heisenberg3",
        description: "3-dimensional Heisenberg algebra, [X1,X2] = X3",
        provenance: "standard presentation of the Heisenberg Lie algebra",
        dim: 3,
        diffs: &[(3, &[(2, 1)])],
        symplectic: &[],
    },
    Fixed {
        name: "kodaira-thurston",
        description: "Kodaira-Thurston algebra, [X1,X2] = X3 with X4 central",
        provenance: "standard presentation: Heisenberg algebra times a line; \
                     symplectic form x1x4 + x2x3",
        dim: 4,
        diffs: &[(3, &[(2, 1)])],
        symplectic: &[(1, 4, 1), (2, 3, 1)],
    },
    Fixed {
        name: "salamon-0-0-0-0-12-13",
        description: "6-dimensional nilpotent algebra (0,0,0,0,12,13)",
        provenance: SALAMON_NOTE,
        dim: 6,
        diffs: &[(5, &[(1, 2)]), (6, &[(1, 3)])],
        symplectic: &[(1, 6, 1), (2, 5, 1), (3, 4, 1)],
    },
    Fixed {
        name: "salamon-0-0-0-12-13-23",
        description: "6-dimensional nilpotent algebra (0,0,0,12,13,23)",
        provenance: SALAMON_NOTE,
        dim: 6,
        diffs: &[(4, &[(1, 2)]), (5, &[(1, 3)]), (6, &[(2, 3)])],
        symplectic: &[(1, 5, 1), (2, 4, 1), (3, 6, 1)],
    },
    Fixed {
        name: "salamon-0-0-12-13-14-15",
        description: "6-dimensional filiform nilpotent algebra (0,0,12,13,14,15)",
        provenance: SALAMON_NOTE,
        dim: 6,
        diffs: &[(3, &[(1, 2)]), (4, &[(1, 3)]), (5, &[(1, 4)]), (6, &[(1, 5)])],
        symplectic: &[(1, 6, 1), (2, 5, 1), (3, 4, -1)],
    },
];

/// Built-in names; `abelian<k>` and `cp<N>` are families.
pub fn catalog_names() -> Vec<String> {
    let mut names: BTreeSet<String> = FIXED.iter().map(|f| f.name.to_string()).collect();
    names.insert("abelian<k>".into());
    names.insert("cp<N>".into());
    names.into_iter().collect()
}

pub fn catalog(name: &str) -> Result<CatalogEntry, ConstructionError> {
    if let Some(f) = FIXED.iter().find(|f| f.name == name) {
        let diffs: Vec<(usize, TwoForm)> = f
            .diffs
            .iter()
            .map(|(k, terms)| (*k, terms.iter().map(|&(i, j)| (i, j, q(1))).collect()))
            .collect();
        let mut alg = NilpotentLieAlgebra::from_differentials(f.dim, &diffs)?.with_provenance(f.provenance);
        if !f.symplectic.is_empty() {
            alg = alg.with_symplectic(f.symplectic.iter().map(|&(i, j, c)| (i, j, q(c))).collect());
        }
        return Ok(CatalogEntry {
            name: f.name.into(),
            description: f.description.into(),
            provenance: f.provenance.into(),
            item: CatalogItem::Lie(alg),
        });
    }
    if let Some(k) = family_index(name, "abelian") {
        let provenance = "abelian Lie algebra; its nilmanifold is the torus";
        let mut alg = NilpotentLieAlgebra::abelian(k).with_provenance(provenance);
        if k >= 2 && k.is_multiple_of(2) {
            alg = alg.with_symplectic((0..k / 2).map(|i| (2 * i + 1, 2 * i + 2, q(1))).collect());
        }
        return Ok(CatalogEntry {
            name: name.into(),
            description: format!("abelian Lie algebra of dimension {k}"),
            provenance: provenance.into(),
            item: CatalogItem::Lie(alg),
        });
    }
    if let Some(n) = family_index(name, "cp") {
        return Ok(CatalogEntry {
            name: name.into(),
            description: format!("cohomology of complex projective space of complex dimension {n}"),
            provenance: "truncated polynomial ring Q[h]/(h^{N+1})".into(),
            item: CatalogItem::Ring(projective_space(n)),
        });
    }
    Err(ConstructionError::UnknownCatalogEntry {
        name: name.into(),
        available: catalog_names().join(", "),
    })
}

fn family_index(name: &str, prefix: &str) -> Option<usize> {
    let rest = name.strip_prefix(prefix)?;
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) || (rest.len() > 1 && rest.starts_with('0')) {
        return None;
    }
    rest.parse().ok().filter(|&k| k <= 16)
}

/// Symplectic data for a catalog entry, using its `omega` class.
pub fn catalog_symplectic(name: &str) -> Result<SymplecticData, ConstructionError> {
    let ring = catalog(name)?.ring()?;
    SymplecticData::from_named_class(ring, "omega").map_err(|e| match e {
        RingError::UnknownClass(_) => ConstructionError::Ring(RingError::UnknownClass(format!("{name}: omega"))),
        other => other.into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_projective_spaces() {
        assert_eq!(projective_space(0).betti(), vec![1]);
        assert_eq!(projective_space(1).betti(), vec![1, 0, 1]);
        assert!(projective_space(3).is_valid());
    }

    #[test]
    fn wedge_signs() {
        assert_eq!(exterior::wedge(0b01, 0b10), Some((0b11, 1)));
        assert_eq!(exterior::wedge(0b10, 0b01), Some((0b11, -1)));
        assert_eq!(exterior::wedge(0b101, 0b010), Some((0b111, -1)));
        assert_eq!(exterior::wedge(0b1, 0b1), None);
    }

    #[test]
    fn torus_betti_and_validity() {
        assert_eq!(torus(2).betti(), vec![1, 2, 1]);
        assert!(torus(4).is_valid());
    }

    #[test]
    fn heisenberg_betti() {
        let r = catalog("heisenberg3").unwrap().ring().unwrap();
        assert_eq!(r.betti(), vec![1, 2, 2, 1]);
        assert!(r.is_valid());
    }

    #[test]
    fn non_nilpotent_rejected() {
        // [X1, X2] = X2 is solvable, not nilpotent.
        let b = Bracket {
            i: 1,
            j: 2,
            out: [(2, q(1))].into_iter().collect(),
        };
        assert_eq!(NilpotentLieAlgebra::new(2, &[b]), Err(ConstructionError::NotNilpotent));
    }

    #[test]
    fn jacobi_failure_rejected() {
        let b = |i, j, k| Bracket {
            i,
            j,
            out: [(k, q(1))].into_iter().collect(),
        };
        // [[X3,X1],X2] = -X3 while the other two terms vanish.
        let r = NilpotentLieAlgebra::new(3, &[b(1, 2, 3), b(1, 3, 1)]);
        assert!(matches!(r, Err(ConstructionError::Jacobi { .. })));
    }

    #[test]
    fn unknown_catalog_lists_entries() {
        match catalog("unknown") {
            Err(ConstructionError::UnknownCatalogEntry { available, .. }) => {
                assert!(available.contains("kodaira-thurston"))
            }
            other => panic!("{other:?}"),
        }
        assert!(catalog("abelian04").is_err());
    }

    #[test]
    fn blowup_dimension_arithmetic() {
        let s = catalog_symplectic("kodaira-thurston").unwrap();
        assert!(blowup_bmodule(&s, 4, 3).is_err());
        assert!(blowup_bmodule(&s, 3, 1).is_err());
        assert_eq!(blowup_bmodule(&s, 5, 3).unwrap().total_dim(), 30);
    }
}
