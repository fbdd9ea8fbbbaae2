//! Exact sparse linear algebra over the rationals and finite-dimensional
//! algebras given by structure constants.
//!
//! Subspaces are kept in reduced row-echelon form, so two subspaces are equal
//! exactly when their stored bases are equal.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// A vector as a sorted list of nonzero `(index, value)` pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Q)>,
}

impl SparseVec {
    pub fn zero() -> Self {
        SparseVec::default()
    }

    pub fn unit(i: usize) -> Self {
        SparseVec {
            entries: vec![(i, Q::one())],
        }
    }

    /// Accumulates unsorted, possibly repeated entries.
    pub fn from_entries(mut raw: Vec<(usize, Q)>) -> Self {
        raw.sort_by_key(|e| e.0);
        let mut entries: Vec<(usize, Q)> = Vec::with_capacity(raw.len());
        for (i, v) in raw {
            match entries.last_mut() {
                Some((j, acc)) if *j == i => *acc += v,
                _ => entries.push((i, v)),
            }
        }
        entries.retain(|(_, v)| !v.is_zero());
        SparseVec { entries }
    }

    pub fn from_dense(values: &[Q]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, n: usize) -> Vec<Q> {
        let mut out = vec![Q::zero(); n];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, Q)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Q {
        match self.entries.binary_search_by_key(&i, |e| e.0) {
            Ok(p) => self.entries[p].1.clone(),
            Err(_) => Q::zero(),
        }
    }

    fn get_ref(&self, i: usize) -> Option<&Q> {
        self.entries
            .binary_search_by_key(&i, |e| e.0)
            .ok()
            .map(|p| &self.entries[p].1)
    }

    pub fn leading(&self) -> Option<usize> {
        self.entries.first().map(|e| e.0)
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|e| e.0)
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: &Q, other: &SparseVec) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut a = std::mem::take(&mut self.entries).into_iter().peekable();
        let mut b = other.entries.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, _)), Some((j, _))) if i < j => out.push(a.next().unwrap()),
                (Some((i, _)), Some((j, _))) if i > j => {
                    let (j, v) = b.next().unwrap();
                    out.push((*j, c * v));
                }
                (Some(_), Some(_)) => {
                    let (i, v) = a.next().unwrap();
                    let (_, w) = b.next().unwrap();
                    let s = v + c * w;
                    if !s.is_zero() {
                        out.push((i, s));
                    }
                }
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, Some(_)) => {
                    let (j, v) = b.next().unwrap();
                    out.push((*j, c * v));
                }
                (None, None) => break,
            }
        }
        self.entries = out;
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        let mut out = self.clone();
        out.add_scaled(&Q::one(), other);
        out
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        let mut out = self.clone();
        out.add_scaled(&-Q::one(), other);
        out
    }

    pub fn scale(&self, c: &Q) -> SparseVec {
        if c.is_zero() {
            return SparseVec::zero();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect(),
        }
    }

    pub fn dot(&self, other: &SparseVec) -> Q {
        let (mut i, mut j) = (0, 0);
        let mut acc = Q::zero();
        while i < self.entries.len() && j < other.entries.len() {
            let (a, b) = (self.entries[i].0, other.entries[j].0);
            if a < b {
                i += 1;
            } else if a > b {
                j += 1;
            } else {
                acc += &self.entries[i].1 * &other.entries[j].1;
                i += 1;
                j += 1;
            }
        }
        acc
    }

    /// Reindexes through `map`, dropping nothing; `map` must be injective on
    /// the support.
    pub fn reindex(&self, map: impl Fn(usize) -> usize) -> SparseVec {
        SparseVec::from_entries(self.entries.iter().map(|(i, v)| (map(*i), v.clone())).collect())
    }
}

impl fmt::Display for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|(i, v)| format!("{v}·e{i}")).collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Serializes a dense rational vector as `[[num, den], ...]`.
pub struct DenseRationals<'a>(pub &'a [Q]);

impl Serialize for DenseRationals<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for v in self.0 {
            seq.serialize_element(&(v.numer().to_string(), v.denom().to_string()))?;
        }
        seq.end()
    }
}

/// Parses the `[[num, den], ...]` form back.
pub fn rationals_from_json(value: &serde_json::Value) -> Result<Vec<Q>> {
    let arr = value
        .as_array()
        .ok_or_else(|| Error::Parse("expected an array of rationals".into()))?;
    arr.iter()
        .map(|pair| {
            let p = pair
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| Error::Parse("expected [num, den]".into()))?;
            let part = |v: &serde_json::Value| -> Result<BigInt> {
                match v {
                    serde_json::Value::String(s) => s.parse().map_err(|_| Error::Parse(s.clone())),
                    serde_json::Value::Number(n) => n.to_string().parse().map_err(|_| Error::Parse(n.to_string())),
                    other => Err(Error::Parse(other.to_string())),
                }
            };
            let den = part(&p[1])?;
            if den.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            Ok(Q::new(part(&p[0])?, den))
        })
        .collect()
}

/// A matrix stored by sparse columns; `columns[j]` is the image of `e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    columns: Vec<SparseVec>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            columns: vec![SparseVec::zero(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Matrix {
            rows: n,
            columns: (0..n).map(SparseVec::unit).collect(),
        }
    }

    pub fn from_columns(rows: usize, columns: Vec<SparseVec>) -> Self {
        debug_assert!(columns.iter().all(|c| c.max_index().is_none_or(|m| m < rows)));
        Matrix { rows, columns }
    }

    pub fn from_dense_rows(rows: &[Vec<Q>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let columns = (0..c)
            .map(|j| SparseVec::from_dense(&rows.iter().map(|row| row[j].clone()).collect::<Vec<_>>()))
            .collect();
        Matrix { rows: r, columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn get(&self, i: usize, j: usize) -> Q {
        self.columns[j].get(i)
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::zero();
        for (j, c) in v.entries() {
            out.add_scaled(c, &self.columns[*j]);
        }
        out
    }

    /// `self · other`
    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols() != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols(),
                got: other.rows,
            });
        }
        Ok(Matrix {
            rows: self.rows,
            columns: other.columns.iter().map(|c| self.apply(c)).collect(),
        })
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        Matrix {
            rows: self.rows,
            columns: self.columns.iter().zip(&other.columns).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> Matrix {
        Matrix {
            rows: self.rows,
            columns: self.columns.iter().map(|v| v.scale(c)).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut raw: Vec<Vec<(usize, Q)>> = vec![Vec::new(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col.entries() {
                raw[*i].push((j, v.clone()));
            }
        }
        Matrix {
            rows: self.cols(),
            columns: raw.into_iter().map(|entries| SparseVec { entries }).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols() && self.columns.iter().enumerate().all(|(j, c)| *c == SparseVec::unit(j))
    }

    pub fn to_dense(&self) -> Vec<Vec<Q>> {
        (0..self.rows)
            .map(|i| (0..self.cols()).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn image(&self) -> Subspace {
        Subspace::span(self.rows, self.columns.iter().cloned())
    }

    pub fn rank(&self) -> usize {
        self.image().dim()
    }

    /// Null space, found by echelonizing the graph `{(A x, x)}`: the rows
    /// whose pivot lies past the first block have zero image.
    pub fn kernel(&self) -> Subspace {
        let r = self.rows;
        let mut graph = Subspace::zero(r + self.cols());
        for (j, col) in self.columns.iter().enumerate() {
            let mut v = col.clone();
            v.entries.push((r + j, Q::one()));
            graph.insert(v);
        }
        Subspace::span(
            self.cols(),
            graph
                .rows
                .iter()
                .zip(&graph.pivots)
                .filter(|(_, &p)| p >= r)
                .map(|(row, _)| row.reindex(|i| i - r)),
        )
    }
}

/// A subspace of `Q^n` in reduced row-echelon form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: (0..ambient).map(SparseVec::unit).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(ambient: usize, vectors: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut s = Subspace::zero(ambient);
        for v in vectors {
            s.insert(v);
            if s.dim() == ambient {
                break;
            }
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    /// The echelon basis.
    pub fn basis(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after clearing every pivot coordinate. Rows vanish
    /// at each other's pivots, so one pass over the entries of `v` suffices.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut w = v.clone();
        for (i, c) in v.entries() {
            if let Ok(r) = self.pivots.binary_search(i) {
                w.add_scaled(&-c, &self.rows[r]);
            }
        }
        w
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let w = self.reduce(&v);
        let Some(p) = w.leading() else {
            return false;
        };
        let inv = w.get(p).recip();
        let w = w.scale(&inv);
        for row in &mut self.rows {
            if let Some(c) = row.get_ref(p).cloned() {
                row.add_scaled(&-c, &w);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, w);
        true
    }

    /// Coordinates of a member in the echelon basis.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<Q>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v.get(p)).collect())
    }

    /// Indices of the standard basis vectors spanning a complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.ambient - self.dim());
        let mut it = self.pivots.iter().peekable();
        for i in 0..self.ambient {
            if it.peek() == Some(&&i) {
                it.next();
            } else {
                out.push(i);
            }
        }
        out
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(r.clone());
        }
        s
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        let a = self.dim();
        let mut cols: Vec<SparseVec> = self.rows.clone();
        cols.extend(other.rows.iter().map(|r| r.scale(&-Q::one())));
        let ker = Matrix::from_columns(self.ambient, cols).kernel();
        Subspace::span(
            self.ambient,
            ker.rows.iter().map(|k| {
                let mut v = SparseVec::zero();
                for (i, c) in k.entries() {
                    if *i < a {
                        v.add_scaled(c, &self.rows[*i]);
                    }
                }
                v
            }),
        )
    }

    /// Image under a linear map.
    pub fn map(&self, f: &Matrix) -> Subspace {
        Subspace::span(f.rows(), self.rows.iter().map(|r| f.apply(r)))
    }
}

/// An associative algebra with a chosen basis.
pub trait Algebra: Sync {
    fn dim(&self) -> usize;
    /// The identity element, if the algebra is unital.
    fn unit(&self) -> Option<SparseVec>;
    fn mul_basis(&self, i: usize, j: usize) -> Result<SparseVec>;

    fn mul(&self, a: &SparseVec, b: &SparseVec) -> Result<SparseVec> {
        let mut out = SparseVec::zero();
        for (i, x) in a.entries() {
            for (j, y) in b.entries() {
                out.add_scaled(&(x * y), &self.mul_basis(*i, *j)?);
            }
        }
        Ok(out)
    }
}

/// An algebra with all structure constants materialized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteDimAlgebra {
    dim: usize,
    table: Vec<SparseVec>,
    unit: Option<SparseVec>,
}

impl FiniteDimAlgebra {
    /// `table[i * dim + j] = e_i e_j`. Only shapes are checked here; use
    /// [`FiniteDimAlgebra::is_associative`] and [`FiniteDimAlgebra::unit_is_identity`].
    pub fn new(dim: usize, table: Vec<SparseVec>, unit: Option<SparseVec>) -> Result<Self> {
        if table.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                got: table.len(),
            });
        }
        if let Some(bad) = table.iter().chain(unit.iter()).find(|v| v.max_index().is_some_and(|m| m >= dim)) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: bad.max_index().unwrap() + 1,
            });
        }
        Ok(FiniteDimAlgebra { dim, table, unit })
    }

    pub fn zero_algebra() -> Self {
        FiniteDimAlgebra {
            dim: 0,
            table: Vec::new(),
            unit: Some(SparseVec::zero()),
        }
    }

    /// Materializes every product of `a`.
    pub fn from_algebra(a: &dyn Algebra) -> Result<Self> {
        let n = a.dim();
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                table.push(a.mul_basis(i, j)?);
            }
        }
        Ok(FiniteDimAlgebra {
            dim: n,
            table,
            unit: a.unit(),
        })
    }

    /// The group algebra `Q[G]` of a group given by its table.
    pub fn group_algebra(order: usize, mul: impl Fn(usize, usize) -> usize, identity: usize) -> Self {
        let table = (0..order * order)
            .map(|k| SparseVec::unit(mul(k / order, k % order)))
            .collect();
        FiniteDimAlgebra {
            dim: order,
            table,
            unit: Some(SparseVec::unit(identity)),
        }
    }

    pub fn is_associative(&self) -> bool {
        let n = self.dim;
        (0..n).all(|i| {
            (0..n).all(|j| {
                (0..n).all(|k| {
                    let left = self.mul(&self.table[i * n + j], &SparseVec::unit(k)).unwrap();
                    let right = self.mul(&SparseVec::unit(i), &self.table[j * n + k]).unwrap();
                    left == right
                })
            })
        })
    }

    pub fn unit_is_identity(&self) -> bool {
        match &self.unit {
            None => false,
            Some(u) => (0..self.dim).all(|i| {
                let e = SparseVec::unit(i);
                self.mul(u, &e).unwrap() == e && self.mul(&e, u).unwrap() == e
            }),
        }
    }

    /// Trace of left multiplication by each basis element.
    fn left_traces(&self) -> Vec<Q> {
        let n = self.dim;
        (0..n)
            .map(|k| (0..n).fold(Q::zero(), |acc, j| acc + self.table[k * n + j].get(j)))
            .collect()
    }
}

impl Algebra for FiniteDimAlgebra {
    fn dim(&self) -> usize {
        self.dim
    }

    fn unit(&self) -> Option<SparseVec> {
        self.unit.clone()
    }

    fn mul_basis(&self, i: usize, j: usize) -> Result<SparseVec> {
        Ok(self.table[i * self.dim + j].clone())
    }
}

/// How thoroughly to confirm that a subspace is a two-sided ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealCheck {
    /// Every basis row against every basis element on both sides.
    Full,
    /// A deterministic spread of at most this many products per side.
    Sampled(usize),
}

/// Smallest two-sided ideal containing `generators`.
pub fn two_sided_ideal(a: &dyn Algebra, generators: impl IntoIterator<Item = SparseVec>) -> Result<Subspace> {
    let n = a.dim();
    let mut ideal = Subspace::zero(n);
    let mut queue: VecDeque<SparseVec> = generators.into_iter().collect();
    while let Some(v) = queue.pop_front() {
        let before = ideal.dim();
        ideal.insert(v.clone());
        if ideal.dim() == before {
            continue;
        }
        if ideal.is_full() {
            break;
        }
        for j in 0..n {
            let e = SparseVec::unit(j);
            queue.push_back(a.mul(&v, &e)?);
            queue.push_back(a.mul(&e, &v)?);
        }
    }
    Ok(ideal)
}

/// Checks `A·I ⊆ I` and `I·A ⊆ I`.
pub fn is_two_sided_ideal(a: &dyn Algebra, ideal: &Subspace, check: IdealCheck) -> Result<bool> {
    let n = a.dim();
    let pairs: Vec<(usize, usize)> = (0..ideal.dim()).flat_map(|r| (0..n).map(move |j| (r, j))).collect();
    let chosen: Vec<(usize, usize)> = match check {
        IdealCheck::Full => pairs,
        IdealCheck::Sampled(k) if pairs.len() <= k => pairs,
        IdealCheck::Sampled(k) => {
            let step = pairs.len() as f64 / k as f64;
            (0..k).map(|t| pairs[(t as f64 * step) as usize]).collect()
        }
    };
    for (r, j) in chosen {
        let v = &ideal.basis()[r];
        let e = SparseVec::unit(j);
        if !ideal.contains(&a.mul(v, &e)?) || !ideal.contains(&a.mul(&e, v)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `A/I` on the complement spanned by the non-pivot basis vectors.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: FiniteDimAlgebra,
    /// `dim A × ... ` projection, as a `dim(A/I) × dim A` matrix.
    pub projection: Matrix,
    /// Basis index in `A` of each quotient basis vector.
    pub lift: Vec<usize>,
    pub ideal: Subspace,
}

impl Quotient {
    pub fn project(&self, v: &SparseVec) -> SparseVec {
        let r = self.ideal.reduce(v);
        SparseVec::from_entries(
            r.entries()
                .iter()
                .map(|(i, c)| (self.lift.binary_search(i).expect("reduced vector off the complement"), c.clone()))
                .collect(),
        )
    }
}

pub fn quotient_algebra(a: &dyn Algebra, ideal: &Subspace, check: IdealCheck) -> Result<Quotient> {
    if ideal.ambient() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: ideal.ambient(),
        });
    }
    if !is_two_sided_ideal(a, ideal, check)? {
        return Err(Error::NotAnIdeal);
    }
    let lift = ideal.complement_indices();
    let m = lift.len();
    let proj_vec = |v: &SparseVec| -> SparseVec {
        let r = ideal.reduce(v);
        SparseVec::from_entries(
            r.entries()
                .iter()
                .map(|(i, c)| (lift.binary_search(i).unwrap(), c.clone()))
                .collect(),
        )
    };
    let mut table = Vec::with_capacity(m * m);
    for &i in &lift {
        for &j in &lift {
            table.push(proj_vec(&a.mul_basis(i, j)?));
        }
    }
    let unit = a.unit().map(|u| proj_vec(&u));
    let projection = Matrix::from_columns(m, (0..a.dim()).map(|j| proj_vec(&SparseVec::unit(j))).collect());
    Ok(Quotient {
        algebra: FiniteDimAlgebra::new(m, table, unit)?,
        projection,
        lift,
        ideal: ideal.clone(),
    })
}

/// Jacobson radical in characteristic zero: the `x` with `tr(L_x) = 0` and
/// `tr(L_{xy}) = 0` for every basis `y`. The first condition is redundant for
/// unital algebras and is what the unitization contributes otherwise.
pub fn radical(a: &FiniteDimAlgebra) -> Subspace {
    let n = a.dim;
    let t = a.left_traces();
    let tvec = SparseVec::from_dense(&t);
    // Row x of the constraint matrix: (tr(L_{x e_0}), ..., tr(L_{x e_{n-1}}), tr(L_x)).
    let mut constraint_cols: Vec<SparseVec> = Vec::with_capacity(n);
    for (i, ti) in t.iter().enumerate() {
        let mut raw: Vec<(usize, Q)> = (0..n).map(|j| (j, a.table[i * n + j].dot(&tvec))).collect();
        raw.push((n, ti.clone()));
        constraint_cols.push(SparseVec::from_entries(raw));
    }
    Matrix::from_columns(n + 1, constraint_cols).kernel()
}

/// Structure constants of a multiplicatively closed subspace in its echelon
/// basis. The result has no unit.
pub fn restrict_to_subspace(a: &dyn Algebra, s: &Subspace) -> Result<FiniteDimAlgebra> {
    let d = s.dim();
    let mut table = Vec::with_capacity(d * d);
    for x in s.basis() {
        for y in s.basis() {
            let coords = s.coordinates(&a.mul(x, y)?).ok_or(Error::NotAnIdeal)?;
            table.push(SparseVec::from_dense(&coords));
        }
    }
    FiniteDimAlgebra::new(d, table, None)
}

/// Whether `f: A -> B` preserves units (when `A` has one) and products of
/// basis pairs.
pub fn check_algebra_homomorphism(f: &Matrix, a: &dyn Algebra, b: &dyn Algebra) -> Result<bool> {
    if f.cols() != a.dim() || f.rows() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim() * b.dim(),
            got: f.cols() * f.rows(),
        });
    }
    if let Some(u) = a.unit() {
        if Some(f.apply(&u)) != b.unit() {
            return Ok(false);
        }
    }
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let lhs = f.apply(&a.mul_basis(i, j)?);
            let rhs = b.mul(f.column(i), f.column(j))?;
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn is_nonnegative_integer(x: &Q) -> bool {
    x.is_integer() && !x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(xs: &[i64]) -> SparseVec {
        SparseVec::from_dense(&xs.iter().map(|&x| qi(x)).collect::<Vec<_>>())
    }

    /// Independent oracle: fraction-free elimination rank over i128.
    fn bareiss_rank(mut m: Vec<Vec<i128>>) -> usize {
        let rows = m.len();
        let cols = m.first().map_or(0, Vec::len);
        let mut rank = 0;
        let mut prev = 1i128;
        for c in 0..cols {
            let Some(p) = (rank..rows).find(|&r| m[r][c] != 0) else { continue };
            m.swap(rank, p);
            for r in rank + 1..rows {
                for k in c + 1..cols {
                    m[r][k] = (m[r][k] * m[rank][c] - m[r][c] * m[rank][k]) / prev;
                }
                m[r][c] = 0;
            }
            prev = m[rank][c];
            rank += 1;
        }
        rank
    }

    #[test]
    fn span_basics() {
        assert_eq!(Subspace::span(3, std::iter::empty()).dim(), 0);
        let s = Subspace::span(3, [v(&[1, 2, 3]), v(&[2, 4, 6]), v(&[0, 1, 1]), v(&[1, 3, 4]), v(&[5, 5, 5])]);
        assert!(s.dim() <= 3);
        assert_eq!(s.dim(), 3);
        let s = Subspace::span(3, [v(&[1, 2, 3]), v(&[2, 4, 6])]);
        assert_eq!(s.basis(), &[v(&[1, 2, 3])]);
        assert_eq!(s.complement_indices(), vec![1, 2]);
        assert_eq!(s.coordinates(&v(&[3, 6, 9])), Some(vec![qi(3)]));
        assert_eq!(s.coordinates(&v(&[0, 1, 0])), None);
    }

    #[test]
    fn kernel_and_intersection() {
        let m = Matrix::from_dense_rows(&[vec![qi(1), qi(2), qi(3)], vec![qi(2), qi(4), qi(6)]]);
        let k = m.kernel();
        assert_eq!(k.dim(), 2);
        for b in k.basis() {
            assert!(m.apply(b).is_zero());
        }
        let a = Subspace::span(3, [v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = Subspace::span(3, [v(&[0, 1, 0]), v(&[0, 0, 1])]);
        assert_eq!(a.intersection(&b), Subspace::span(3, [v(&[0, 1, 0])]));
        assert_eq!(a.sum(&b), Subspace::full(3));
    }

    fn dual_numbers() -> FiniteDimAlgebra {
        // basis 1, t with t^2 = 0
        FiniteDimAlgebra::new(
            2,
            vec![SparseVec::unit(0), SparseVec::unit(1), SparseVec::unit(1), SparseVec::zero()],
            Some(SparseVec::unit(0)),
        )
        .unwrap()
    }

    #[test]
    fn radicals() {
        let fields = FiniteDimAlgebra::new(
            2,
            vec![SparseVec::unit(0), SparseVec::zero(), SparseVec::zero(), SparseVec::unit(1)],
            Some(v(&[1, 1])),
        )
        .unwrap();
        assert!(radical(&fields).is_zero());
        let d = dual_numbers();
        assert_eq!(radical(&d), Subspace::span(2, [SparseVec::unit(1)]));
        let c2 = FiniteDimAlgebra::group_algebra(2, |a, b| (a + b) % 2, 0);
        assert!(radical(&c2).is_zero());
        // radical is an ideal, the quotient is semisimple
        let q = quotient_algebra(&d, &radical(&d), IdealCheck::Full).unwrap();
        assert_eq!(q.algebra.dim(), 1);
        assert!(radical(&q.algebra).is_zero());
        // a non-unital nilpotent algebra is its own radical
        let nil = restrict_to_subspace(&d, &Subspace::span(2, [SparseVec::unit(1)])).unwrap();
        assert_eq!(radical(&nil).dim(), 1);
        // ... while a non-unital copy of Q is semisimple
        let idem = restrict_to_subspace(&fields, &Subspace::span(2, [SparseVec::unit(1)])).unwrap();
        assert!(radical(&idem).is_zero());
    }

    #[test]
    fn ideals_and_quotients() {
        let c3 = FiniteDimAlgebra::group_algebra(3, |a, b| (a + b) % 3, 0);
        assert!(c3.is_associative() && c3.unit_is_identity());
        assert_eq!(two_sided_ideal(&c3, [SparseVec::unit(0)]).unwrap().dim(), 3);
        assert_eq!(two_sided_ideal(&c3, [SparseVec::zero()]).unwrap().dim(), 0);
        let aug = two_sided_ideal(&c3, [v(&[1, -1, 0])]).unwrap();
        assert_eq!(aug.dim(), 2);
        let q = quotient_algebra(&c3, &aug, IdealCheck::Full).unwrap();
        assert_eq!(q.algebra.dim(), 1);
        assert!(check_algebra_homomorphism(&q.projection, &c3, &q.algebra).unwrap());
        let same = quotient_algebra(&c3, &Subspace::zero(3), IdealCheck::Full).unwrap();
        assert_eq!(same.algebra, c3);
        let none = quotient_algebra(&c3, &Subspace::full(3), IdealCheck::Full).unwrap();
        assert_eq!(none.algebra.dim(), 0);
        let d = dual_numbers();
        assert_eq!(
            quotient_algebra(&d, &Subspace::span(2, [SparseVec::unit(0)]), IdealCheck::Full).unwrap_err(),
            Error::NotAnIdeal
        );
    }

    #[test]
    fn homomorphism_check() {
        let c2 = FiniteDimAlgebra::group_algebra(2, |a, b| (a + b) % 2, 0);
        assert!(check_algebra_homomorphism(&Matrix::identity(2), &c2, &c2).unwrap());
        assert!(!check_algebra_homomorphism(&Matrix::zeros(2, 2), &c2, &c2).unwrap());
    }

    fn small_vecs(dim: usize, count: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        prop::collection::vec(prop::collection::vec(-3i64..=3, dim), 0..=count)
    }

    proptest! {
        #[test]
        fn membership_matches_rank_oracle(vs in small_vecs(6, 5), w in prop::collection::vec(-3i64..=3, 6)) {
            let s = Subspace::span(6, vs.iter().map(|x| v(x)));
            let as_i128 = |x: &Vec<i64>| x.iter().map(|&y| y as i128).collect::<Vec<_>>();
            let base: Vec<Vec<i128>> = vs.iter().map(as_i128).collect();
            let mut ext = base.clone();
            ext.push(as_i128(&w));
            prop_assert_eq!(s.dim(), bareiss_rank(base.clone()));
            prop_assert_eq!(s.contains(&v(&w)), bareiss_rank(ext) == bareiss_rank(base));
        }

        #[test]
        fn echelon_form_is_canonical(vs in small_vecs(5, 4)) {
            let a = Subspace::span(5, vs.iter().map(|x| v(x)));
            let b = Subspace::span(5, vs.iter().rev().map(|x| v(x)));
            prop_assert_eq!(&a, &b);
            let doubled = Subspace::span(5, a.basis().iter().map(|r| r.scale(&qi(2))));
            prop_assert_eq!(a, doubled);
        }

        #[test]
        fn rank_nullity(rows in prop::collection::vec(prop::collection::vec(-2i64..=2, 5), 1..5)) {
            let m = Matrix::from_dense_rows(&rows.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect::<Vec<_>>());
            let k = m.kernel();
            prop_assert_eq!(k.dim() + m.rank(), 5);
            for b in k.basis() {
                prop_assert!(m.apply(b).is_zero());
            }
        }

        #[test]
        fn quotient_commutes_with_projection(gen in prop::collection::vec(-2i64..=2, 4), x in 0usize..4, y in 0usize..4) {
            let c4 = FiniteDimAlgebra::group_algebra(4, |a, b| (a + b) % 4, 0);
            let ideal = two_sided_ideal(&c4, [v(&gen)]).unwrap();
            let q = quotient_algebra(&c4, &ideal, IdealCheck::Full).unwrap();
            let lhs = q.project(&c4.mul_basis(x, y).unwrap());
            let rhs = q.algebra.mul(&q.project(&SparseVec::unit(x)), &q.project(&SparseVec::unit(y))).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
