//! Sparse exact linear algebra: rank, kernel, solve, tensor, quotient.
//!
//! All eliminations are deterministic reduced row echelon forms with
//! pivots chosen as the first nonzero entry in column order, so every
//! derived basis is canonical for the input. Free variables in
//! underdetermined solves are set to zero.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};

/// Dense vector helpers. Vectors are plain `Vec<Scalar>`.
pub fn zero_vec(field: FieldSpec, n: usize) -> Vec<Scalar> {
    vec![field.zero(); n]
}

pub fn basis_vec(field: FieldSpec, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = zero_vec(field, n);
    v[i] = field.one();
    v
}

pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(c: &Scalar, a: &[Scalar]) -> Vec<Scalar> {
    a.iter().map(|x| c * x).collect()
}

pub fn vec_is_zero(a: &[Scalar]) -> bool {
    a.iter().all(Scalar::is_zero)
}

/// Kronecker product of coordinate vectors under the row-major index
/// convention `index(i (x) j) = i * dim2 + j`.
pub fn tensor_vec(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x * y);
        }
    }
    out
}

/// A linear map between based vector spaces, stored sparsely.
/// Invariants: at most one entry per (row, col), indices in bounds,
/// every stored scalar nonzero and of the declared field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinMap {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl LinMap {
    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> LinMap {
        LinMap { field, rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(field: FieldSpec, n: usize) -> LinMap {
        let mut m = LinMap::zero(field, n, n);
        for i in 0..n {
            m.entries.insert((i, i), field.one());
        }
        m
    }

    pub fn from_triples(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        triples: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Result<LinMap> {
        let mut m = LinMap::zero(field, rows, cols);
        for (i, j, s) in triples {
            if i >= rows || j >= cols {
                return Err(Error::DimensionMismatch(format!(
                    "entry ({i},{j}) out of bounds for {rows}x{cols} map"
                )));
            }
            if s.field() != field {
                return Err(Error::FieldMismatch(format!(
                    "entry ({i},{j}) lies in {} but the map is over {}",
                    s.field(),
                    field
                )));
            }
            if m.entries.contains_key(&(i, j)) {
                return Err(Error::InvalidInput(format!("duplicate entry at ({i},{j})")));
            }
            if !s.is_zero() {
                m.entries.insert((i, j), s);
            }
        }
        Ok(m)
    }

    /// Builds a map column by column from its action on basis vectors.
    pub fn from_columns(field: FieldSpec, rows: usize, columns: &[Vec<Scalar>]) -> LinMap {
        let mut m = LinMap::zero(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            debug_assert_eq!(col.len(), rows);
            for (i, s) in col.iter().enumerate() {
                if !s.is_zero() {
                    m.entries.insert((i, j), s.clone());
                }
            }
        }
        m
    }

    pub fn from_dense(field: FieldSpec, rows: &[Vec<Scalar>]) -> LinMap {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = LinMap::zero(field, rows.len(), ncols);
        for (i, row) in rows.iter().enumerate() {
            for (j, s) in row.iter().enumerate() {
                if !s.is_zero() {
                    m.entries.insert((i, j), s.clone());
                }
            }
        }
        m
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> Scalar {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn set_entry(&mut self, i: usize, j: usize, s: Scalar) {
        debug_assert!(i < self.rows && j < self.cols);
        if s.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), s);
        }
    }

    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.entries.iter().map(|(&(i, j), s)| (i, j, s))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero_map(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn transpose(&self) -> LinMap {
        let mut m = LinMap::zero(self.field, self.cols, self.rows);
        for (&(i, j), s) in &self.entries {
            m.entries.insert((j, i), s.clone());
        }
        m
    }

    pub fn add(&self, other: &LinMap) -> Result<LinMap> {
        self.check_same_shape(other)?;
        let mut m = self.clone();
        for (&(i, j), s) in &other.entries {
            let v = &m.entry(i, j) + s;
            m.set_entry(i, j, v);
        }
        Ok(m)
    }

    pub fn sub(&self, other: &LinMap) -> Result<LinMap> {
        self.add(&other.scale(&self.field.integer(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> LinMap {
        let mut m = LinMap::zero(self.field, self.rows, self.cols);
        if c.is_zero() {
            return m;
        }
        for (&(i, j), s) in &self.entries {
            m.entries.insert((i, j), c * s);
        }
        m
    }

    fn check_same_shape(&self, other: &LinMap) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field, other.field)));
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    /// Composition `self . other` (apply `other` first).
    pub fn compose(&self, other: &LinMap) -> Result<LinMap> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field, other.field)));
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "compose: {}x{} . {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let other_rows = other.sparse_rows();
        let mut acc: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for (&(i, k), a) in &self.entries {
            for (j, b) in other_rows[k].iter() {
                let term = a * b;
                match acc.get_mut(&(i, *j)) {
                    Some(v) => *v = &*v + &term,
                    None => {
                        acc.insert((i, *j), term);
                    }
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(LinMap { field: self.field, rows: self.rows, cols: other.cols, entries: acc })
    }

    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "apply: vector of length {} to {}x{} map",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        let mut out = zero_vec(self.field, self.rows);
        for (&(i, j), s) in &self.entries {
            if !v[j].is_zero() {
                out[i] = &out[i] + &(s * &v[j]);
            }
        }
        Ok(out)
    }

    /// Kronecker product under the row-major pairing
    /// `index(i (x) j) = i * dim2 + j` on both sides.
    pub fn tensor(&self, other: &LinMap) -> Result<LinMap> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field, other.field)));
        }
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut m = LinMap::zero(self.field, rows, cols);
        for (&(i1, j1), a) in &self.entries {
            for (&(i2, j2), b) in &other.entries {
                m.entries.insert((i1 * other.rows + i2, j1 * other.cols + j2), a * b);
            }
        }
        Ok(m)
    }

    /// The swap map `V (x) W -> W (x) V` on coordinates.
    pub fn flip(field: FieldSpec, dim1: usize, dim2: usize) -> LinMap {
        let mut m = LinMap::zero(field, dim1 * dim2, dim1 * dim2);
        for i in 0..dim1 {
            for j in 0..dim2 {
                m.entries.insert((j * dim1 + i, i * dim2 + j), field.one());
            }
        }
        m
    }

    fn sparse_rows(&self) -> Vec<SparseRow> {
        let mut rows = vec![SparseRow::new(); self.rows];
        for (&(i, j), s) in &self.entries {
            rows[i].push(j, s.clone());
        }
        rows
    }

    pub fn rank(&self) -> usize {
        Rref::of_rows(self.sparse_rows(), self.cols).pivot_count()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.cols
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.rows
    }

    pub fn is_bijective(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Canonical kernel basis from the reduced echelon form: one vector
    /// per free column, ordered by free column index.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let rref = Rref::of_rows(self.sparse_rows(), self.cols);
        let pivot_cols = rref.pivot_cols();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivot_cols {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for f in 0..self.cols {
            if is_pivot[f] {
                continue;
            }
            let mut v = zero_vec(self.field, self.cols);
            v[f] = self.field.one();
            for row in rref.rows() {
                let p = row.leading_col().expect("echelon rows are nonzero");
                if let Some(c) = row.get(f) {
                    v[p] = c.neg();
                }
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of `self * x = rhs` with free variables set to zero,
    /// or None when inconsistent.
    pub fn solve(&self, rhs: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        Ok(self.solve_many(std::slice::from_ref(&rhs.to_vec()))?.pop().unwrap())
    }

    /// Simultaneous solve against several right-hand sides; elimination
    /// of the coefficient block is shared.
    pub fn solve_many(&self, rhss: &[Vec<Scalar>]) -> Result<Vec<Option<Vec<Scalar>>>> {
        for rhs in rhss {
            if rhs.len() != self.rows {
                return Err(Error::DimensionMismatch(format!(
                    "solve: rhs of length {} against {}x{} map",
                    rhs.len(),
                    self.rows,
                    self.cols
                )));
            }
        }
        let k = rhss.len();
        let mut rows = self.sparse_rows();
        for (i, row) in rows.iter_mut().enumerate() {
            for (t, rhs) in rhss.iter().enumerate() {
                if !rhs[i].is_zero() {
                    row.push(self.cols + t, rhs[i].clone());
                }
            }
        }
        // Pivots are restricted to coefficient columns; a surviving row
        // supported only on augmented columns certifies inconsistency
        // for exactly those right-hand sides.
        let rref = Rref::of_rows(rows, self.cols);
        let mut inconsistent = vec![false; k];
        for row in rref.tail_rows() {
            for (c, s) in row.iter() {
                debug_assert!(*c >= self.cols && !s.is_zero());
                inconsistent[*c - self.cols] = true;
            }
        }
        let mut solutions = vec![Some(zero_vec(self.field, self.cols)); k];
        for (t, slot) in solutions.iter_mut().enumerate() {
            if inconsistent[t] {
                *slot = None;
                continue;
            }
            let x = slot.as_mut().unwrap();
            for row in rref.rows() {
                let p = row.leading_col().unwrap();
                if let Some(c) = row.get(self.cols + t) {
                    x[p] = c.clone();
                }
            }
        }
        Ok(solutions)
    }

    pub fn inverse(&self) -> Option<LinMap> {
        if self.rows != self.cols {
            return None;
        }
        let rhss: Vec<Vec<Scalar>> =
            (0..self.rows).map(|i| basis_vec(self.field, self.rows, i)).collect();
        let sols = self.solve_many(&rhss).expect("shapes match by construction");
        let mut cols = Vec::with_capacity(self.rows);
        for s in sols {
            cols.push(s?);
        }
        let candidate = LinMap::from_columns(self.field, self.cols, &cols);
        // solve() finds preimages even for non-injective maps; only a
        // two-sided inverse counts.
        let id = LinMap::identity(self.field, self.rows);
        if candidate.compose(self).ok()? == id && self.compose(&candidate).ok()? == id {
            Some(candidate)
        } else {
            None
        }
    }
}

impl fmt::Display for LinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} over {} ({} entries)", self.rows, self.cols, self.field, self.nnz())?;
        for i in 0..self.rows.min(16) {
            let row: Vec<String> = (0..self.cols.min(16)).map(|j| self.entry(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Sorted sparse row used by the elimination engine.
#[derive(Debug, Clone, PartialEq, Eq)]
struct SparseRow {
    entries: Vec<(usize, Scalar)>,
}

impl SparseRow {
    fn new() -> SparseRow {
        SparseRow { entries: Vec::new() }
    }

    fn from_dense(v: &[Scalar]) -> SparseRow {
        SparseRow {
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, s)| !s.is_zero())
                .map(|(i, s)| (i, s.clone()))
                .collect(),
        }
    }

    /// Appends an entry with a column index larger than any present.
    fn push(&mut self, col: usize, s: Scalar) {
        debug_assert!(self.entries.last().is_none_or(|(c, _)| *c < col));
        if !s.is_zero() {
            self.entries.push((col, s));
        }
    }

    fn leading_col(&self) -> Option<usize> {
        self.entries.first().map(|(c, _)| *c)
    }

    fn leading_coeff(&self) -> Option<&Scalar> {
        self.entries.first().map(|(_, s)| s)
    }

    fn get(&self, col: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&col, |(c, _)| *c)
            .ok()
            .map(|i| &self.entries[i].1)
    }

    fn iter(&self) -> impl Iterator<Item = &(usize, Scalar)> {
        self.entries.iter()
    }

    fn scale(&mut self, c: &Scalar) {
        for (_, s) in &mut self.entries {
            *s = &*s * c;
        }
    }

    /// self += c * other, merging sorted supports.
    fn axpy(&mut self, c: &Scalar, other: &SparseRow) {
        if c.is_zero() {
            return;
        }
        let mut merged = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        while i < self.entries.len() || j < other.entries.len() {
            let take_self = match (self.entries.get(i), other.entries.get(j)) {
                (Some((ci, _)), Some((cj, _))) => {
                    if ci == cj {
                        let v = &self.entries[i].1 + &(c * &other.entries[j].1);
                        if !v.is_zero() {
                            merged.push((*ci, v));
                        }
                        i += 1;
                        j += 1;
                        continue;
                    }
                    ci < cj
                }
                (Some(_), None) => true,
                (None, Some(_)) => false,
                (None, None) => unreachable!(),
            };
            if take_self {
                merged.push(self.entries[i].clone());
                i += 1;
            } else {
                let v = c * &other.entries[j].1;
                if !v.is_zero() {
                    merged.push((other.entries[j].0, v));
                }
                j += 1;
            }
        }
        self.entries = merged;
    }
}

/// Incremental reduced row echelon form. Rows keep mutually distinct
/// pivot columns, each normalized to leading coefficient 1 and fully
/// back-substituted, which makes the row set canonical.
struct Rref {
    pivot_limit: usize,
    rows: Vec<SparseRow>,
    row_of_pivot: BTreeMap<usize, usize>,
    /// Nonzero rows supported entirely beyond `pivot_limit`.
    tail: Vec<SparseRow>,
}

impl Rref {
    fn new(pivot_limit: usize) -> Rref {
        Rref { pivot_limit, rows: Vec::new(), row_of_pivot: BTreeMap::new(), tail: Vec::new() }
    }

    fn of_rows(rows: Vec<SparseRow>, pivot_limit: usize) -> Rref {
        let mut rref = Rref::new(pivot_limit);
        for row in rows {
            rref.insert(row);
        }
        rref
    }

    fn insert(&mut self, mut row: SparseRow) {
        loop {
            let Some(lead) = row.leading_col() else { return };
            if lead >= self.pivot_limit {
                // No eligible pivot left; remember the residue only if
                // it is new information (dedup keeps tails small).
                if !self.tail.contains(&row) {
                    self.tail.push(row);
                }
                return;
            }
            match self.row_of_pivot.get(&lead) {
                Some(&r) => {
                    let c = row.leading_coeff().unwrap().neg();
                    let pivot_row = self.rows[r].clone();
                    row.axpy(&c, &pivot_row);
                }
                None => {
                    // Clear entries at existing pivot columns beyond the
                    // lead; the loop above only ever cancels the lead.
                    let later: Vec<usize> =
                        self.row_of_pivot.range(lead + 1..).map(|(_, &r)| r).collect();
                    for r in later {
                        let p = self.rows[r].leading_col().unwrap();
                        if let Some(c) = row.get(p) {
                            let c = c.neg();
                            let pivot_row = self.rows[r].clone();
                            row.axpy(&c, &pivot_row);
                        }
                    }
                    let inv = row.leading_coeff().unwrap().inv().expect("nonzero lead");
                    row.scale(&inv);
                    // Back-substitute to keep the form reduced.
                    for other in &mut self.rows {
                        if let Some(c) = other.get(lead) {
                            let c = c.neg();
                            other.axpy(&c, &row);
                        }
                    }
                    self.row_of_pivot.insert(lead, self.rows.len());
                    self.rows.push(row);
                    return;
                }
            }
        }
    }

    fn pivot_count(&self) -> usize {
        self.rows.len()
    }

    fn pivot_cols(&self) -> Vec<usize> {
        self.row_of_pivot.keys().copied().collect()
    }

    /// Pivot rows in increasing pivot-column order.
    fn rows(&self) -> impl Iterator<Item = &SparseRow> {
        self.row_of_pivot.values().map(|&r| &self.rows[r])
    }

    fn tail_rows(&self) -> impl Iterator<Item = &SparseRow> {
        self.tail.iter()
    }
}

/// A subspace of a based ambient space, stored via its canonical
/// (reduced echelon) basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    field: FieldSpec,
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(field: FieldSpec, ambient: usize, vectors: &[Vec<Scalar>]) -> Subspace {
        let rows = vectors.iter().map(|v| SparseRow::from_dense(v)).collect();
        let rref = Rref::of_rows(rows, ambient);
        let mut basis = Vec::new();
        let mut pivots = Vec::new();
        for row in rref.rows() {
            let mut v = zero_vec(field, ambient);
            for (c, s) in row.iter() {
                v[*c] = s.clone();
            }
            pivots.push(row.leading_col().unwrap());
            basis.push(v);
        }
        Subspace { field, ambient, basis, pivots }
    }

    pub fn full(field: FieldSpec, ambient: usize) -> Subspace {
        let basis: Vec<Vec<Scalar>> = (0..ambient).map(|i| basis_vec(field, ambient, i)).collect();
        Subspace::span(field, ambient, &basis)
    }

    pub fn zero_subspace(field: FieldSpec, ambient: usize) -> Subspace {
        Subspace { field, ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    /// Coordinates of `v` in the canonical basis, or None if outside.
    pub fn coords_of(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.ambient, "ambient dimension mismatch");
        let mut residue = v.to_vec();
        let mut coords = Vec::with_capacity(self.basis.len());
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let c = residue[p].clone();
            if !c.is_zero() {
                residue = vec_sub(&residue, &vec_scale(&c, row));
            }
            coords.push(c);
        }
        vec_is_zero(&residue).then_some(coords)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coords_of(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn equals(&self, other: &Subspace) -> bool {
        self.dim() == other.dim() && self.contains_subspace(other)
    }

    /// The inclusion as a matrix whose columns are the basis vectors.
    pub fn inclusion(&self) -> LinMap {
        LinMap::from_columns(self.field, self.ambient, &self.basis)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vs = self.basis.clone();
        vs.extend_from_slice(&other.basis);
        Subspace::span(self.field, self.ambient, &vs)
    }
}

/// A quotient of a based space by a subspace, with a projection and a
/// section satisfying `projection . section = id`. The section image
/// is the coordinate complement spanned by non-pivot basis vectors of
/// the killed subspace, so both maps are canonical.
#[derive(Debug, Clone)]
pub struct QuotientData {
    pub killed: Subspace,
    pub dim: usize,
    pub projection: LinMap,
    pub section: LinMap,
}

pub fn quotient_by(killed: &Subspace) -> QuotientData {
    let field = killed.field();
    let ambient = killed.ambient_dim();
    let mut is_pivot = vec![false; ambient];
    for &p in &killed.pivots {
        is_pivot[p] = true;
    }
    let free_cols: Vec<usize> = (0..ambient).filter(|&c| !is_pivot[c]).collect();
    let dim = free_cols.len();

    // projection(v): reduce v modulo the killed basis, read free coords.
    // On basis vector e_j: if j is free the residue is e_j itself; if j
    // is the pivot of row r the residue is e_j - row_r, supported on
    // free columns with coefficients -row_r[f].
    let mut proj = LinMap::zero(field, dim, ambient);
    for (q, &f) in free_cols.iter().enumerate() {
        proj.set_entry(q, f, field.one());
    }
    for (row, &p) in killed.basis().iter().zip(&killed.pivots) {
        for (q, &f) in free_cols.iter().enumerate() {
            if !row[f].is_zero() {
                proj.set_entry(q, p, row[f].neg());
            }
        }
    }
    let mut sect = LinMap::zero(field, ambient, dim);
    for (q, &f) in free_cols.iter().enumerate() {
        sect.set_entry(f, q, field.one());
    }
    QuotientData { killed: killed.clone(), dim, projection: proj, section: sect }
}

/// Feasibility solver for one unknown matrix `X : q -> p` subject to
/// affine constraints. Each constraint supplies an expression that is
/// affine in the entries of `X` (compositions, tensors with fixed maps)
/// and a target; the expression is linearized by evaluating it on the
/// zero matrix and on every single-entry matrix, which keeps client
/// code free of hand-derived Kronecker index formulas.
pub struct MatrixUnknownSystem {
    field: FieldSpec,
    p: usize,
    q: usize,
    rows: Vec<(BTreeMap<usize, Scalar>, Scalar)>,
}

impl MatrixUnknownSystem {
    pub fn new(field: FieldSpec, p: usize, q: usize) -> MatrixUnknownSystem {
        MatrixUnknownSystem { field, p, q, rows: Vec::new() }
    }

    pub fn var_count(&self) -> usize {
        self.p * self.q
    }

    /// Requires `expr(X) = target`. `expr` must be affine in `X`.
    pub fn require(&mut self, expr: impl Fn(&LinMap) -> LinMap, target: &LinMap) {
        let zero = LinMap::zero(self.field, self.p, self.q);
        let offset = expr(&zero);
        assert_eq!(offset.rows(), target.rows(), "constraint shape mismatch");
        assert_eq!(offset.cols(), target.cols(), "constraint shape mismatch");
        let base_row = |i: usize, j: usize| i * target.cols() + j;
        // coefficient of variable v in every result entry
        let mut coeffs: BTreeMap<usize, BTreeMap<usize, Scalar>> = BTreeMap::new();
        for vi in 0..self.p {
            for vj in 0..self.q {
                let mut e = LinMap::zero(self.field, self.p, self.q);
                e.set_entry(vi, vj, self.field.one());
                let diff = expr(&e).sub(&offset).expect("affine expression");
                let v = vi * self.q + vj;
                for (r, c, s) in diff.triples() {
                    coeffs.entry(base_row(r, c)).or_default().insert(v, s.clone());
                }
            }
        }
        let rhs_map = target.sub(&offset).expect("shapes checked");
        let mut rhs: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (r, c, s) in rhs_map.triples() {
            rhs.insert(base_row(r, c), s.clone());
        }
        let nrows = target.rows() * target.cols();
        for row in 0..nrows {
            let vars = coeffs.remove(&row).unwrap_or_default();
            let b = rhs.remove(&row).unwrap_or_else(|| self.field.zero());
            if vars.is_empty() && b.is_zero() {
                continue;
            }
            self.rows.push((vars, b));
        }
    }

    fn assemble(&self) -> (LinMap, Vec<Scalar>) {
        let nrows = self.rows.len();
        let mut m = LinMap::zero(self.field, nrows, self.var_count());
        let mut rhs = zero_vec(self.field, nrows);
        for (r, (vars, b)) in self.rows.iter().enumerate() {
            for (v, s) in vars {
                m.set_entry(r, *v, s.clone());
            }
            rhs[r] = b.clone();
        }
        (m, rhs)
    }

    /// One solution reshaped to a `p x q` map, or None when infeasible.
    pub fn solve(&self) -> Option<LinMap> {
        let (m, rhs) = self.assemble();
        let x = m.solve(&rhs).expect("internal shapes consistent")?;
        let mut out = LinMap::zero(self.field, self.p, self.q);
        for (v, s) in x.into_iter().enumerate() {
            if !s.is_zero() {
                out.set_entry(v / self.q, v % self.q, s);
            }
        }
        Some(out)
    }

    /// Dimension of the solution space of the homogeneous system.
    pub fn kernel_dim(&self) -> usize {
        let (m, _) = self.assemble();
        self.var_count() - m.rank()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn qs(s: &str) -> Scalar {
        q().parse(s).unwrap()
    }

    fn dense(rows: &[&[i64]]) -> LinMap {
        let data: Vec<Vec<Scalar>> =
            rows.iter().map(|r| r.iter().map(|&x| q().integer(x)).collect()).collect();
        LinMap::from_dense(q(), &data)
    }

    #[test]
    fn solve_with_late_pivot_before_early_column() {
        // The second row introduces a pivot in an earlier column while
        // carrying an entry in the already-pivoted later column; the
        // echelon form must still come out fully reduced.
        let m = dense(&[&[0, 0, 1], &[1, 0, 1]]);
        let x = m.solve(&[qs("1"), qs("3")]).unwrap().unwrap();
        assert_eq!(m.apply(&x).unwrap(), vec![qs("1"), qs("3")]);
        assert_eq!(x, vec![qs("2"), qs("0"), qs("1")]);
    }

    #[test]
    fn kernel_with_late_pivot_before_early_column() {
        let m = dense(&[&[0, 1, 1], &[1, 1, 0]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        assert!(vec_is_zero(&m.apply(&k[0]).unwrap()));
    }

    #[test]
    fn rank_of_singular_2x2() {
        // [[1,2],[2,4]] has rank 1 and kernel spanned by (-2,1).
        let m = dense(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.rank(), 1);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vec![qs("-2"), qs("1")]);
        for v in &k {
            assert!(vec_is_zero(&m.apply(v).unwrap()));
        }
    }

    #[test]
    fn solve_underdetermined_sets_free_vars_to_zero() {
        // x + y = 3 with y free: deterministic answer (3, 0).
        let m = dense(&[&[1, 1]]);
        let sol = m.solve(&[qs("3")]).unwrap().unwrap();
        assert_eq!(sol, vec![qs("3"), qs("0")]);
    }

    #[test]
    fn solve_detects_inconsistency() {
        let m = dense(&[&[1, 1], &[1, 1]]);
        assert!(m.solve(&[qs("1"), qs("2")]).unwrap().is_none());
        assert!(m.solve(&[qs("1"), qs("1")]).unwrap().is_some());
    }

    #[test]
    fn solve_many_mixes_consistent_and_inconsistent() {
        let m = dense(&[&[1, 0], &[1, 0]]);
        let sols = m
            .solve_many(&[vec![qs("2"), qs("2")], vec![qs("1"), qs("0")]])
            .unwrap();
        assert_eq!(sols[0].as_ref().unwrap(), &vec![qs("2"), qs("0")]);
        assert!(sols[1].is_none());
    }

    #[test]
    fn tensor_index_convention() {
        // e_i (x) e_j lands at i * dim2 + j.
        let a = dense(&[&[0, 1], &[1, 0]]);
        let b = LinMap::identity(q(), 3);
        let t = a.tensor(&b).unwrap();
        assert_eq!(t.rows(), 6);
        let v = basis_vec(q(), 6, 0 * 3 + 2); // e_0 (x) e_2
        let img = t.apply(&v).unwrap();
        assert_eq!(img, basis_vec(q(), 6, 1 * 3 + 2)); // e_1 (x) e_2
    }

    #[test]
    fn quotient_projection_section_identity() {
        // Q^2 / span{(1,-1)} is 1-dimensional.
        let killed = Subspace::span(q(), 2, &[vec![qs("1"), qs("-1")]]);
        let qd = quotient_by(&killed);
        assert_eq!(qd.dim, 1);
        let id = qd.projection.compose(&qd.section).unwrap();
        assert_eq!(id, LinMap::identity(q(), 1));
        // (1,0) and (0,1) agree in the quotient.
        let p10 = qd.projection.apply(&basis_vec(q(), 2, 0)).unwrap();
        let p01 = qd.projection.apply(&basis_vec(q(), 2, 1)).unwrap();
        assert_eq!(p10, p01);
        // The killed vector maps to zero.
        let pk = qd.projection.apply(&[qs("1"), qs("-1")]).unwrap();
        assert!(vec_is_zero(&pk));
    }

    #[test]
    fn quotient_by_zero_and_full() {
        let z = Subspace::zero_subspace(q(), 3);
        let qd = quotient_by(&z);
        assert_eq!(qd.dim, 3);
        let f = Subspace::full(q(), 3);
        let qd = quotient_by(&f);
        assert_eq!(qd.dim, 0);
    }

    #[test]
    fn inverse_of_permutation() {
        let m = dense(&[&[0, 1], &[1, 0]]);
        let inv = m.inverse().unwrap();
        assert_eq!(inv, m);
        assert!(dense(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn prime_field_rank_differs_from_rational_rank() {
        // Row (2, 0) vanishes mod 2.
        let f2 = FieldSpec::PrimeField(2);
        let m = LinMap::from_dense(f2, &[vec![f2.integer(2), f2.integer(0)], vec![f2.integer(0), f2.integer(1)]]);
        assert_eq!(m.rank(), 1);
        let mq = dense(&[&[2, 0], &[0, 1]]);
        assert_eq!(mq.rank(), 2);
    }

    #[test]
    fn subspace_coords_and_equality() {
        let s = Subspace::span(q(), 3, &[vec![qs("1"), qs("1"), qs("0")], vec![qs("0"), qs("0"), qs("1")]]);
        assert_eq!(s.dim(), 2);
        let c = s.coords_of(&[qs("2"), qs("2"), qs("-5")]).unwrap();
        assert_eq!(c, vec![qs("2"), qs("-5")]);
        assert!(!s.contains(&[qs("1"), qs("0"), qs("0")]));
        let t = Subspace::span(q(), 3, &[vec![qs("2"), qs("2"), qs("2")], vec![qs("0"), qs("0"), qs("-1")]]);
        assert!(s.equals(&t));
    }

    #[test]
    fn zero_dimensional_edge_cases() {
        let m = LinMap::zero(q(), 0, 5);
        assert_eq!(m.rank(), 0);
        assert_eq!(m.kernel_basis().len(), 5);
        let n = LinMap::zero(q(), 5, 0);
        assert_eq!(n.rank(), 0);
        assert!(n.kernel_basis().is_empty());
        let sol = n.solve(&zero_vec(q(), 5)).unwrap();
        assert_eq!(sol.unwrap().len(), 0);
    }

    #[test]
    fn matrix_unknown_system_inverts() {
        // Solve X * m = id for m invertible: X must be m^{-1}.
        let m = dense(&[&[1, 1], &[0, 1]]);
        let mut sys = MatrixUnknownSystem::new(q(), 2, 2);
        sys.require(|x| x.compose(&m).unwrap(), &LinMap::identity(q(), 2));
        let x = sys.solve().unwrap();
        assert_eq!(x, m.inverse().unwrap());
        assert_eq!(sys.kernel_dim(), 0);
    }

    #[test]
    fn matrix_unknown_system_detects_infeasible() {
        // X * 0 = id has no solution.
        let zero = LinMap::zero(q(), 2, 2);
        let mut sys = MatrixUnknownSystem::new(q(), 2, 2);
        sys.require(|x| x.compose(&zero).unwrap(), &LinMap::identity(q(), 2));
        assert!(sys.solve().is_none());
    }

    #[test]
    fn from_triples_validates() {
        assert!(LinMap::from_triples(q(), 2, 2, vec![(2, 0, qs("1"))]).is_err());
        assert!(LinMap::from_triples(q(), 2, 2, vec![(0, 0, qs("1")), (0, 0, qs("2"))]).is_err());
        let f2 = FieldSpec::PrimeField(2);
        assert!(LinMap::from_triples(q(), 2, 2, vec![(0, 0, f2.one())]).is_err());
    }
}
