//! Exact linear algebra over `Z_d` for arbitrary `d >= 2`.
//!
//! Over a composite modulus the row space of a matrix is a module rather than a
//! vector space, so ranks are replaced by cardinalities. A matrix is reduced to
//! diagonal form with elementary operations (row/column swaps and adding a
//! `Z_d` multiple of one row/column to another), which change neither the row
//! module nor the column module cardinality. The cardinality of a diagonal
//! matrix is the product of the cyclic orders `d / gcd(a, d)` of its diagonal.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the number of elements any enumeration may produce.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 1_000_000;

/// Largest supported modulus; keeps every product of two residues inside `u64`.
const MAX_MODULUS: u64 = 1 << 31;

/// The ring `Z_d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Modulus(u64);

impl Modulus {
    pub fn new(d: u64) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidArgument(format!(
                "modulus must be >= 2, got {d}"
            )));
        }
        if d > MAX_MODULUS {
            return Err(Error::InvalidArgument(format!(
                "modulus {d} exceeds the supported maximum {MAX_MODULUS}"
            )));
        }
        Ok(Self(d))
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.0
    }

    /// Canonical representative in `[0, d-1]` of an arbitrary integer.
    #[inline]
    pub fn reduce(self, v: i64) -> u64 {
        v.rem_euclid(self.0 as i64) as u64
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.0
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.0 - b) % self.0
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        (a * b) % self.0
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        (self.0 - a) % self.0
    }

    /// Order of `a` in the additive group `Z_d`, i.e. `#<a> = d / gcd(a, d)`.
    #[inline]
    pub fn additive_order(self, a: u64) -> u64 {
        self.0 / a.gcd(&self.0)
    }

    /// `d^exp`.
    ///
    /// Panics when the result does not fit in a `u64`; every caller works at
    /// sizes where module elements are still countable.
    pub fn pow(self, exp: usize) -> u64 {
        u32::try_from(exp)
            .ok()
            .and_then(|e| self.0.checked_pow(e))
            .unwrap_or_else(|| panic!("{}^{} overflows u64", self.0, exp))
    }

    /// Some `y` with `a*y = c (mod d)`, if one exists.
    pub fn solve_scalar(self, a: u64, c: u64) -> Option<u64> {
        let d = self.0;
        let g = a.gcd(&d);
        if !c.is_multiple_of(g) {
            return None;
        }
        let (a, c, m) = (a / g, c / g, d / g);
        if m == 1 {
            return Some(0);
        }
        let eg = (a as i64).extended_gcd(&(m as i64));
        debug_assert_eq!(eg.gcd, 1);
        let inv = eg.x.rem_euclid(m as i64) as u64;
        Some((c % m) * inv % m)
    }
}

impl TryFrom<u64> for Modulus {
    type Error = Error;

    fn try_from(d: u64) -> Result<Self> {
        Modulus::new(d)
    }
}

impl From<Modulus> for u64 {
    fn from(m: Modulus) -> u64 {
        m.0
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn check_same_modulus(a: Modulus, b: Modulus) -> Result<()> {
    if a != b {
        return Err(Error::ModulusMismatch {
            left: a.value(),
            right: b.value(),
        });
    }
    Ok(())
}

/// A vector in `Z_d^len` with canonical residues.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZdVector {
    modulus: Modulus,
    entries: Vec<u64>,
}

impl ZdVector {
    pub fn zeros(modulus: Modulus, len: usize) -> Self {
        Self {
            modulus,
            entries: vec![0; len],
        }
    }

    /// Builds a vector, reducing every entry into `[0, d-1]`.
    pub fn new(modulus: Modulus, entries: &[i64]) -> Self {
        Self {
            modulus,
            entries: entries.iter().map(|&e| modulus.reduce(e)).collect(),
        }
    }

    pub fn from_residues(modulus: Modulus, entries: Vec<u64>) -> Self {
        let entries = entries.into_iter().map(|e| e % modulus.value()).collect();
        Self { modulus, entries }
    }

    /// Digits of `index` in base `d`, most significant first. Enumerating
    /// `0..d^len` therefore walks `Z_d^len` in lexicographic order.
    pub fn from_index(modulus: Modulus, len: usize, mut index: u64) -> Self {
        let d = modulus.value();
        let mut entries = vec![0; len];
        for slot in entries.iter_mut().rev() {
            *slot = index % d;
            index /= d;
        }
        Self { modulus, entries }
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    #[inline]
    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<u64> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &ZdVector) -> Result<ZdVector> {
        self.check_compatible(other)?;
        let m = self.modulus;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| m.add(a, b))
            .collect();
        Ok(ZdVector {
            modulus: m,
            entries,
        })
    }

    pub fn scale(&self, k: u64) -> ZdVector {
        let m = self.modulus;
        let k = k % m.value();
        ZdVector {
            modulus: m,
            entries: self.entries.iter().map(|&e| m.mul(e, k)).collect(),
        }
    }

    pub fn neg(&self) -> ZdVector {
        let m = self.modulus;
        ZdVector {
            modulus: m,
            entries: self.entries.iter().map(|&e| m.neg(e)).collect(),
        }
    }

    pub fn dot(&self, other: &ZdVector) -> Result<u64> {
        self.check_compatible(other)?;
        Ok(dot(self.modulus, &self.entries, &other.entries))
    }

    /// Additive order of the vector: least `o >= 1` with `o*v = 0`.
    pub fn additive_order(&self) -> u64 {
        let m = self.modulus;
        self.entries
            .iter()
            .fold(1, |acc, &e| acc.lcm(&m.additive_order(e)))
    }

    fn check_compatible(&self, other: &ZdVector) -> Result<()> {
        check_same_modulus(self.modulus, other.modulus)?;
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch(format!(
                "vector lengths {} and {}",
                self.len(),
                other.len()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for ZdVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(u64::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

pub(crate) fn dot(m: Modulus, a: &[u64], b: &[u64]) -> u64 {
    a.iter()
        .zip(b)
        .fold(0, |acc, (&x, &y)| m.add(acc, m.mul(x, y)))
}

/// One elementary operation on the rows of a matrix, the columns of a matrix,
/// or the entries of a vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ElementaryOp {
    /// Exchange positions `i` and `j`.
    Swap(usize, usize),
    /// `target <- target + factor * source`.
    AddMultiple {
        target: usize,
        source: usize,
        factor: u64,
    },
}

impl ElementaryOp {
    pub fn apply_to_vector(&self, v: &mut ZdVector) {
        let m = v.modulus;
        match *self {
            ElementaryOp::Swap(i, j) => v.entries.swap(i, j),
            ElementaryOp::AddMultiple {
                target,
                source,
                factor,
            } => {
                let s = m.mul(v.entries[source], factor);
                v.entries[target] = m.add(v.entries[target], s);
            }
        }
    }

    pub fn apply_to_rows(&self, t: &mut ZdMatrix) {
        match *self {
            ElementaryOp::Swap(i, j) => t.swap_rows(i, j),
            ElementaryOp::AddMultiple {
                target,
                source,
                factor,
            } => t.add_row_multiple(target, source, factor),
        }
    }

    pub fn apply_to_cols(&self, t: &mut ZdMatrix) {
        match *self {
            ElementaryOp::Swap(i, j) => t.swap_cols(i, j),
            ElementaryOp::AddMultiple {
                target,
                source,
                factor,
            } => t.add_col_multiple(target, source, factor),
        }
    }
}

/// A `rows x cols` matrix over `Z_d`, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZdMatrix {
    modulus: Modulus,
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl ZdMatrix {
    pub fn zeros(modulus: Modulus, rows: usize, cols: usize) -> Self {
        Self {
            modulus,
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(modulus: Modulus, size: usize) -> Self {
        let mut m = Self::zeros(modulus, size, size);
        for i in 0..size {
            m.entries[i * size + i] = 1;
        }
        m
    }

    /// Builds a matrix from integer rows, reducing entries mod `d`.
    pub fn from_rows(modulus: Modulus, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "row {bad} has length {} but row 0 has length {cols}",
                rows[bad].len()
            )));
        }
        let entries = rows
            .iter()
            .flat_map(|r| r.iter().map(|&e| modulus.reduce(e)))
            .collect();
        Ok(Self {
            modulus,
            rows: rows.len(),
            cols,
            entries,
        })
    }

    /// Stacks vectors as rows. `cols` is needed when `vectors` is empty.
    pub fn from_vectors(modulus: Modulus, cols: usize, vectors: &[ZdVector]) -> Result<Self> {
        let mut entries = Vec::with_capacity(vectors.len() * cols);
        for v in vectors {
            check_same_modulus(modulus, v.modulus)?;
            if v.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "vector of length {} in a matrix with {cols} columns",
                    v.len()
                )));
            }
            entries.extend_from_slice(&v.entries);
        }
        Ok(Self {
            modulus,
            rows: vectors.len(),
            cols,
            entries,
        })
    }

    /// `Λ = [[0, I], [-I, 0]]` of size `2n`.
    pub fn symplectic_form(modulus: Modulus, n: usize) -> Self {
        let mut m = Self::zeros(modulus, 2 * n, 2 * n);
        for i in 0..n {
            m.set(i, n + i, 1);
            m.set(n + i, i, modulus.neg(1));
        }
        m
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: u64) {
        self.entries[r * self.cols + c] = value % self.modulus.value();
    }

    pub fn row(&self, r: usize) -> ZdVector {
        ZdVector {
            modulus: self.modulus,
            entries: self.row_slice(r).to_vec(),
        }
    }

    pub fn row_vectors(&self) -> Vec<ZdVector> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    fn row_slice(&self, r: usize) -> &[u64] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn transpose(&self) -> ZdMatrix {
        let mut t = ZdMatrix::zeros(self.modulus, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.entries[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, other: &ZdMatrix) -> Result<ZdMatrix> {
        check_same_modulus(self.modulus, other.modulus)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let m = self.modulus;
        let mut out = ZdMatrix::zeros(m, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let idx = r * other.cols + c;
                    out.entries[idx] = m.add(out.entries[idx], m.mul(a, other.get(k, c)));
                }
            }
        }
        Ok(out)
    }

    /// `x * self` for a row vector `x`.
    pub fn left_apply(&self, x: &ZdVector) -> Result<ZdVector> {
        check_same_modulus(self.modulus, x.modulus)?;
        if x.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "row vector of length {} against {} rows",
                x.len(),
                self.rows
            )));
        }
        let m = self.modulus;
        let mut out = vec![0; self.cols];
        for (r, &coef) in x.entries.iter().enumerate() {
            if coef == 0 {
                continue;
            }
            for (o, &e) in out.iter_mut().zip(self.row_slice(r)) {
                *o = m.add(*o, m.mul(coef, e));
            }
        }
        Ok(ZdVector {
            modulus: m,
            entries: out,
        })
    }

    /// `self * x` for a column vector `x`.
    pub fn apply(&self, x: &ZdVector) -> Result<ZdVector> {
        check_same_modulus(self.modulus, x.modulus)?;
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "column vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        let m = self.modulus;
        let entries = (0..self.rows)
            .map(|r| dot(m, self.row_slice(r), &x.entries))
            .collect();
        Ok(ZdVector {
            modulus: m,
            entries,
        })
    }

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    pub fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// Row `target` += `factor` * row `source`.
    pub fn add_row_multiple(&mut self, target: usize, source: usize, factor: u64) {
        let m = self.modulus;
        for c in 0..self.cols {
            let s = m.mul(self.get(source, c), factor);
            let idx = target * self.cols + c;
            self.entries[idx] = m.add(self.entries[idx], s);
        }
    }

    /// Column `target` += `factor` * column `source`.
    pub fn add_col_multiple(&mut self, target: usize, source: usize, factor: u64) {
        let m = self.modulus;
        for r in 0..self.rows {
            let s = m.mul(self.get(r, source), factor);
            let idx = r * self.cols + target;
            self.entries[idx] = m.add(self.entries[idx], s);
        }
    }
}

impl fmt::Display for ZdMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            if r > 0 {
                writeln!(f)?;
            }
            let parts: Vec<String> = self.row_slice(r).iter().map(u64::to_string).collect();
            write!(f, "{}", parts.join(" "))?;
        }
        Ok(())
    }
}

/// Division step over `Z_d`: for `a != 0` returns `(q, r)` with
/// `r = a*q + b (mod d)` and `0 <= r < a`.
///
/// Integer division gives `b = a*q' + r`; then `q = d - q'` works in `Z_d`.
pub fn euclid_step(modulus: Modulus, a: u64, b: u64) -> Result<(u64, u64)> {
    let d = modulus.value();
    if a == 0 {
        return Err(Error::InvalidArgument(
            "euclid_step pivot must be nonzero".into(),
        ));
    }
    if a >= d || b >= d {
        return Err(Error::InvalidArgument(format!(
            "euclid_step arguments must be residues mod {d}, got a={a}, b={b}"
        )));
    }
    let (q_int, r) = b.div_rem(&a);
    Ok(((d - q_int) % d, r))
}

/// Index of the smallest nonzero value in `values`, lowest index on ties.
fn smallest_nonzero(values: impl IntoIterator<Item = u64>) -> Option<usize> {
    values
        .into_iter()
        .enumerate()
        .filter(|&(_, v)| v != 0)
        .min_by_key(|&(i, v)| (v, i))
        .map(|(i, _)| i)
}

/// Reduces a nonzero vector with elementary operations on its entries until
/// only the first entry is nonzero.
pub fn reduce_vector(v: &ZdVector) -> Result<(ZdVector, Vec<ElementaryOp>)> {
    if v.is_zero() {
        return Err(Error::InvalidArgument(
            "cannot reduce the zero vector".into(),
        ));
    }
    let m = v.modulus;
    let mut w = v.clone();
    let mut ops = Vec::new();
    loop {
        let pivot = smallest_nonzero(w.entries.iter().copied()).expect("nonzero vector");
        if pivot != 0 {
            let op = ElementaryOp::Swap(0, pivot);
            op.apply_to_vector(&mut w);
            ops.push(op);
        }
        let a = w.entries[0];
        let mut remaining = false;
        for j in 1..w.len() {
            let b = w.entries[j];
            if b == 0 {
                continue;
            }
            let (q, r) = euclid_step(m, a, b)?;
            let op = ElementaryOp::AddMultiple {
                target: j,
                source: 0,
                factor: q,
            };
            op.apply_to_vector(&mut w);
            debug_assert_eq!(w.entries[j], r);
            ops.push(op);
            remaining |= r != 0;
        }
        if !remaining {
            return Ok((w, ops));
        }
    }
}

/// A diagonal form `D = R * T * C` together with the logged operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagonalization {
    pub diagonal_form: ZdMatrix,
    pub row_ops: Vec<ElementaryOp>,
    pub col_ops: Vec<ElementaryOp>,
}

impl Diagonalization {
    /// The diagonal entries `D[i][i]` for `i < min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<u64> {
        let d = &self.diagonal_form;
        (0..d.rows.min(d.cols)).map(|i| d.get(i, i)).collect()
    }

    /// The invertible `rows x rows` matrix `R` obtained by replaying the row log
    /// on the identity.
    pub fn row_transform(&self) -> ZdMatrix {
        let d = &self.diagonal_form;
        let mut r = ZdMatrix::identity(d.modulus, d.rows);
        for op in &self.row_ops {
            op.apply_to_rows(&mut r);
        }
        r
    }

    /// The invertible `cols x cols` matrix `C` obtained by replaying the column
    /// log on the identity.
    pub fn col_transform(&self) -> ZdMatrix {
        let d = &self.diagonal_form;
        let mut c = ZdMatrix::identity(d.modulus, d.cols);
        for op in &self.col_ops {
            op.apply_to_cols(&mut c);
        }
        c
    }

    /// Replays both logs on `t`.
    pub fn replay(&self, t: &ZdMatrix) -> ZdMatrix {
        let mut out = t.clone();
        for op in &self.row_ops {
            op.apply_to_rows(&mut out);
        }
        for op in &self.col_ops {
            op.apply_to_cols(&mut out);
        }
        out
    }

    /// `#<D>`, the product of cyclic orders of the diagonal.
    pub fn cardinality(&self) -> u64 {
        let m = self.diagonal_form.modulus;
        self.diagonal()
            .into_iter()
            .map(|a| m.additive_order(a))
            .product()
    }
}

/// Brings `t` to a diagonal form using only elementary row and column
/// operations. Divisibility between diagonal entries is not enforced.
pub fn diagonalize(t: &ZdMatrix) -> Diagonalization {
    let m = t.modulus;
    let mut w = t.clone();
    let mut row_ops = Vec::new();
    let mut col_ops = Vec::new();
    let (rows, cols) = (t.rows, t.cols);

    let mut row_op = |w: &mut ZdMatrix, op: ElementaryOp| {
        op.apply_to_rows(w);
        row_ops.push(op);
    };
    let mut col_op = |w: &mut ZdMatrix, op: ElementaryOp| {
        op.apply_to_cols(w);
        col_ops.push(op);
    };

    for k in 0..rows.min(cols) {
        // Bring some nonzero entry of the trailing block into row k or column k.
        let cross_empty =
            (k..cols).all(|c| w.get(k, c) == 0) && (k..rows).all(|r| w.get(r, k) == 0);
        if cross_empty {
            let block = (k..rows).flat_map(|r| (k..cols).map(move |c| (r, c)));
            let found = block
                .filter(|&(r, c)| w.get(r, c) != 0)
                .min_by_key(|&(r, c)| (w.get(r, c), r, c));
            let Some((r, c)) = found else { break };
            if r != k {
                row_op(&mut w, ElementaryOp::Swap(k, r));
            }
            if c != k {
                col_op(&mut w, ElementaryOp::Swap(k, c));
            }
        }

        loop {
            // Candidates in the cross: (k,k), then row k to the right, then
            // column k downward.
            let cross: Vec<(usize, usize)> = std::iter::once((k, k))
                .chain((k + 1..cols).map(|c| (k, c)))
                .chain((k + 1..rows).map(|r| (r, k)))
                .collect();
            let pick = smallest_nonzero(cross.iter().map(|&(r, c)| w.get(r, c)))
                .expect("cross holds a nonzero entry");
            let (pr, pc) = cross[pick];
            if pr != k {
                row_op(&mut w, ElementaryOp::Swap(k, pr));
            }
            if pc != k {
                col_op(&mut w, ElementaryOp::Swap(k, pc));
            }

            let a = w.get(k, k);
            let mut remaining = false;
            for c in k + 1..cols {
                let b = w.get(k, c);
                if b == 0 {
                    continue;
                }
                let (q, r) = euclid_step(m, a, b).expect("pivot is nonzero");
                col_op(
                    &mut w,
                    ElementaryOp::AddMultiple {
                        target: c,
                        source: k,
                        factor: q,
                    },
                );
                remaining |= r != 0;
            }
            for r in k + 1..rows {
                let b = w.get(r, k);
                if b == 0 {
                    continue;
                }
                let (q, rem) = euclid_step(m, a, b).expect("pivot is nonzero");
                row_op(
                    &mut w,
                    ElementaryOp::AddMultiple {
                        target: r,
                        source: k,
                        factor: q,
                    },
                );
                remaining |= rem != 0;
            }
            if !remaining {
                break;
            }
        }
    }

    Diagonalization {
        diagonal_form: w,
        row_ops,
        col_ops,
    }
}

/// `#<T>`: the number of elements of the module generated by the rows of `t`.
pub fn row_module_cardinality(t: &ZdMatrix) -> u64 {
    diagonalize(t).cardinality()
}

/// `#Im(T)` for `T: Z_d^cols -> Z_d^rows` acting on column vectors.
pub fn image_cardinality(t: &ZdMatrix) -> u64 {
    row_module_cardinality(&t.transpose())
}

/// `#Ker(T)` for `T` acting on column vectors; equals `d^cols / #Im(T)`.
pub fn kernel_cardinality(t: &ZdMatrix) -> u64 {
    let total = t.modulus.pow(t.cols);
    let image = image_cardinality(t);
    debug_assert_eq!(total % image, 0);
    total / image
}

/// Rows of `a` followed by rows of `b`.
pub fn stack(a: &ZdMatrix, b: &ZdMatrix) -> Result<ZdMatrix> {
    check_same_modulus(a.modulus, b.modulus)?;
    if a.cols != b.cols {
        return Err(Error::DimensionMismatch(format!(
            "cannot stack matrices with {} and {} columns",
            a.cols, b.cols
        )));
    }
    let mut entries = a.entries.clone();
    entries.extend_from_slice(&b.entries);
    Ok(ZdMatrix {
        modulus: a.modulus,
        rows: a.rows + b.rows,
        cols: a.cols,
        entries,
    })
}

/// `#(<A> ∩ <B>) = #<A> * #<B> / #(<A> + <B>)`.
pub fn intersection_cardinality(a: &ZdMatrix, b: &ZdMatrix) -> Result<u64> {
    let sum = row_module_cardinality(&stack(a, b)?);
    let product = row_module_cardinality(a) * row_module_cardinality(b);
    debug_assert_eq!(product % sum, 0);
    Ok(product / sum)
}

/// Finds `x` with `x * a = b`, i.e. decides whether `b` lies in the row module
/// of `a` and returns coefficients when it does.
pub fn solve_row(a: &ZdMatrix, b: &ZdVector) -> Result<Option<ZdVector>> {
    check_same_modulus(a.modulus, b.modulus)?;
    if b.len() != a.cols {
        return Err(Error::DimensionMismatch(format!(
            "target of length {} for a matrix with {} columns",
            b.len(),
            a.cols
        )));
    }
    let m = a.modulus;
    let diag = diagonalize(a);
    // x A = b  <=>  (x R^-1) D = b C
    let target = diag.col_transform().left_apply(b)?;
    let pivots = diag.diagonal();
    let mut y = vec![0; a.rows];
    for (j, &c) in target.entries.iter().enumerate() {
        match pivots.get(j) {
            Some(&p) => match m.solve_scalar(p, c) {
                Some(v) => y[j] = v,
                None => return Ok(None),
            },
            None if c != 0 => return Ok(None),
            None => {}
        }
    }
    let x = diag
        .row_transform()
        .left_apply(&ZdVector::from_residues(m, y))?;
    if a.left_apply(&x)? != *b {
        return Err(Error::Internal("row solve produced a non-solution".into()));
    }
    Ok(Some(x))
}

/// Every element of the row module of `t`, by closure over coefficient
/// combinations. Fails once more than `limit` elements are produced.
pub fn enumerate_row_module(t: &ZdMatrix, limit: usize) -> Result<BTreeSet<ZdVector>> {
    let mut elements = BTreeSet::new();
    elements.insert(ZdVector::zeros(t.modulus, t.cols));
    for generator in t.row_vectors() {
        if generator.is_zero() {
            continue;
        }
        let multiples: Vec<ZdVector> = (1..generator.additive_order())
            .map(|k| generator.scale(k))
            .collect();
        let mut next = elements.clone();
        for e in &elements {
            for g in &multiples {
                next.insert(e.add(g)?);
                if next.len() > limit {
                    return Err(Error::ResourceLimit { limit });
                }
            }
        }
        elements = next;
    }
    Ok(elements)
}
