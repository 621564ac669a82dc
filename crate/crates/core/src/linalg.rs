//! Exact linear algebra over the rationals.
//!
//! Everything in this crate is rank-sensitive, so there is no floating point
//! anywhere: entries are [`Rational`] (arbitrary precision, always in lowest
//! terms) and every decision is made by exact Gauss-Jordan elimination.
//!
//! Subspaces are stored by their reduced row echelon basis, which is the
//! unique canonical representative of the span. Two [`Subspace`] values are
//! equal as sets iff they are equal as Rust values.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::LinalgError;

/// Arbitrary precision rational number, normalized to lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Shorthand for an integer-valued [`Rational`].
pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den`.
pub fn qf(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Formats a rational as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(x: &Rational) -> String {
    x.to_string()
}

/// Parses `"p/q"` or `"p"` (surrounding whitespace allowed).
pub fn parse_rational(s: &str) -> Result<Rational, LinalgError> {
    let t = s.trim();
    Rational::from_str(t).map_err(|_| LinalgError::Parse(s.to_string()))
}

/// Dense row-major matrix with rational entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatrixQ {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl fmt::Debug for MatrixQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatrixQ {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(format_rational).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl MatrixQ {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(MatrixQ { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatrixQ {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Rational::one();
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed to express `r x 0` and
    /// `0 x c` shapes unambiguously.
    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Result<Self, LinalgError> {
        let r = rows.len();
        let mut entries = Vec::with_capacity(r * cols);
        for row in rows {
            if row.len() != cols {
                return Err(LinalgError::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(MatrixQ { rows: r, cols, entries })
    }

    /// Convenience constructor for tests and fixtures. Panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged matrix literal");
                r.iter().map(|&x| q(x)).collect()
            })
            .collect();
        Self::from_rows(data, cols).expect("checked above")
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(columns: &[Vec<Rational>], rows: usize) -> Result<Self, LinalgError> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(LinalgError::DimensionMismatch {
                    expected: rows,
                    found: c.len(),
                });
            }
            for (i, x) in c.iter().enumerate() {
                m.entries[i * m.cols + j] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Rational) {
        self.entries[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> MatrixQ {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &MatrixQ) -> Result<MatrixQ, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self * v` for a column vector `v`.
    pub fn apply(&self, v: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn add(&self, other: &MatrixQ) -> Result<MatrixQ, LinalgError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &MatrixQ) -> Result<MatrixQ, LinalgError> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &MatrixQ,
        f: impl Fn(&Rational, &Rational) -> Rational,
    ) -> Result<MatrixQ, LinalgError> {
        if self.shape() != other.shape() {
            return Err(LinalgError::ShapeMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(MatrixQ {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> MatrixQ {
        MatrixQ {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * c).collect(),
        }
    }

    pub fn neg(&self) -> MatrixQ {
        self.scale(&q(-1))
    }

    /// Kronecker product `self ⊗ other`, row index `(i, k) ↦ i * other.rows + k`.
    pub fn kronecker(&self, other: &MatrixQ) -> MatrixQ {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.entries[(i * other.rows + k) * cols + j * other.cols + l] = a * b;
                        }
                    }
                }
            }
        }
        out
    }

    /// Block placement: copies `block` into `self` with top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &MatrixQ) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.entries[(r0 + i) * self.cols + c0 + j] = block.get(i, j).clone();
            }
        }
    }

    pub fn vstack(&self, other: &MatrixQ) -> Result<MatrixQ, LinalgError> {
        if self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(MatrixQ {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn hstack(&self, other: &MatrixQ) -> Result<MatrixQ, LinalgError> {
        if self.rows != other.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(0, self.cols, other);
        Ok(out)
    }

    /// `self^power` for a square matrix.
    pub fn pow(&self, power: usize) -> Result<MatrixQ, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::ShapeMismatch {
                left: self.shape(),
                right: self.shape(),
            });
        }
        let mut acc = Self::identity(self.rows);
        for _ in 0..power {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (MatrixQ, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !self.entries[i * cols + c].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    self.entries.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = self.entries[r * cols + c].recip();
            for j in c..cols {
                let x = &self.entries[r * cols + j];
                if !x.is_zero() {
                    self.entries[r * cols + j] = x * &inv;
                }
            }
            let pivot_row: Vec<Rational> = self.entries[r * cols..(r + 1) * cols].to_vec();
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = self.entries[i * cols + c].clone();
                if factor.is_zero() {
                    continue;
                }
                for j in c..cols {
                    if !pivot_row[j].is_zero() {
                        let delta = &factor * &pivot_row[j];
                        self.entries[i * cols + j] -= delta;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Dimension of the column span.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.rref().1.len()
    }

    /// Canonical basis of `{v : A v = 0}` inside `Q^cols`.
    pub fn kernel_basis(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let mut vectors = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for free in (0..self.cols).filter(|&j| !is_pivot[j]) {
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                let x = r.get(i, free);
                if !x.is_zero() {
                    v[p] = -x.clone();
                }
            }
            vectors.push(v);
        }
        Subspace::from_vectors(self.cols, vectors)
    }

    /// Canonical basis of the column span inside `Q^rows`.
    pub fn image_basis(&self) -> Subspace {
        let cols: Vec<Vec<Rational>> = (0..self.cols).map(|j| self.column(j)).collect();
        Subspace::from_vectors(self.rows, cols)
    }

    /// `{v : A v ∈ U}`.
    pub fn preimage(&self, target: &Subspace) -> Result<Subspace, LinalgError> {
        if target.ambient_dim() != self.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows,
                found: target.ambient_dim(),
            });
        }
        // Av ∈ U  <=>  w·Av = 0 for every w annihilating U.
        let ann = target.annihilator().to_matrix();
        Ok(ann.mul(self)?.kernel_basis())
    }

    /// Image of a subspace of the domain.
    pub fn image_of(&self, source: &Subspace) -> Result<Subspace, LinalgError> {
        if source.ambient_dim() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: source.ambient_dim(),
            });
        }
        let images = source
            .basis()
            .iter()
            .map(|v| self.apply(v))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Subspace::from_vectors(self.rows, images))
    }

    /// Some solution `X` of `self * X = rhs`, or `None` if the system is
    /// inconsistent. Free variables are set to zero.
    pub fn solve(&self, rhs: &MatrixQ) -> Result<Option<MatrixQ>, LinalgError> {
        if rhs.rows != self.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows,
                found: rhs.rows,
            });
        }
        let aug = self.hstack(rhs)?;
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = Self::zeros(self.cols, rhs.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(p, j, r.get(i, self.cols + j).clone());
            }
        }
        Ok(Some(x))
    }
}

/// A linear subspace of `Q^n`, stored by its reduced row echelon basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Rational>>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .basis
            .iter()
            .map(|v| {
                let parts: Vec<String> = v.iter().map(format_rational).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        write!(f, "Subspace<{}>{{{}}}", self.ambient_dim, rows.join(", "))
    }
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        MatrixQ::identity(ambient_dim).image_basis()
    }

    /// Span of arbitrary (possibly dependent) vectors of length `ambient_dim`.
    ///
    /// Panics if a vector has the wrong length; callers construct these
    /// vectors from matrices whose shapes are already checked.
    pub fn from_vectors(ambient_dim: usize, vectors: Vec<Vec<Rational>>) -> Self {
        for v in &vectors {
            assert_eq!(v.len(), ambient_dim, "vector length must match ambient dimension");
        }
        if vectors.is_empty() || ambient_dim == 0 {
            return Self::zero(ambient_dim);
        }
        let m = MatrixQ::from_rows(vectors, ambient_dim).expect("lengths checked");
        let (r, pivots) = m.rref();
        Subspace {
            ambient_dim,
            basis: (0..pivots.len()).map(|i| r.row(i).to_vec()).collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient_dim
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    /// Basis vectors as the rows of a `dim x ambient_dim` matrix.
    pub fn to_matrix(&self) -> MatrixQ {
        MatrixQ::from_rows(self.basis.clone(), self.ambient_dim).expect("canonical basis")
    }

    /// Basis vectors as the columns of an `ambient_dim x dim` matrix.
    pub fn to_column_matrix(&self) -> MatrixQ {
        self.to_matrix().transpose()
    }

    fn check_same_ambient(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        Ok(())
    }

    /// `{w : w · u = 0 for all u in self}`, in the same coordinates.
    pub fn annihilator(&self) -> Subspace {
        if self.basis.is_empty() {
            return Self::full(self.ambient_dim);
        }
        self.to_matrix().kernel_basis()
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_same_ambient(other)?;
        let mut vectors = self.basis.clone();
        vectors.extend(other.basis.iter().cloned());
        Ok(Self::from_vectors(self.ambient_dim, vectors))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_same_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ambient_dim));
        }
        if self.is_full() {
            return Ok(other.clone());
        }
        if other.is_full() {
            return Ok(self.clone());
        }
        let ann = self.annihilator().sum(&other.annihilator())?;
        Ok(ann.annihilator())
    }

    /// Whether `other ⊆ self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool, LinalgError> {
        self.check_same_ambient(other)?;
        if other.dim() > self.dim() {
            return Ok(false);
        }
        Ok(other.basis.iter().all(|v| self.contains_vector(v)))
    }

    pub fn contains_vector(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ambient_dim);
        // Reduce v against the echelon basis; it lies in the span iff it reduces to 0.
        let mut r = v.to_vec();
        for b in &self.basis {
            let p = b.iter().position(|x| !x.is_zero()).expect("nonzero basis row");
            if !r[p].is_zero() {
                let c = r[p].clone();
                for (ri, bi) in r.iter_mut().zip(b) {
                    if !bi.is_zero() {
                        *ri -= &c * bi;
                    }
                }
            }
        }
        r.iter().all(Zero::is_zero)
    }

    /// Vectors from the canonical basis of `larger` that extend `self` to a
    /// basis of `larger`, chosen greedily in basis order. Requires `self ⊆ larger`.
    pub fn complement_in(&self, larger: &Subspace) -> Result<Vec<Vec<Rational>>, LinalgError> {
        self.check_same_ambient(larger)?;
        let mut current = self.clone();
        let mut chosen = Vec::new();
        for v in larger.basis() {
            if !current.contains_vector(v) {
                chosen.push(v.clone());
                current = current.sum(&Subspace::from_vectors(self.ambient_dim, vec![v.clone()]))?;
            }
        }
        Ok(chosen)
    }

    /// Coordinates of `v` with respect to the stored canonical basis, if `v`
    /// lies in the subspace.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(v.len(), self.ambient_dim);
        // Echelon basis: the coordinate on row i is the entry of v at pivot i.
        let coords: Vec<Rational> = self
            .basis
            .iter()
            .map(|b| {
                let p = b.iter().position(|x| !x.is_zero()).expect("nonzero basis row");
                v[p].clone()
            })
            .collect();
        let mut recon = vec![Rational::zero(); self.ambient_dim];
        for (c, b) in coords.iter().zip(&self.basis) {
            for (r, x) in recon.iter_mut().zip(b) {
                *r += c * x;
            }
        }
        (recon.as_slice() == v).then_some(coords)
    }
}

/// Whether a vector is identically zero.
pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}
