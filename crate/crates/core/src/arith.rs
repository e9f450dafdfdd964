//! Prime field arithmetic and dense linear algebra over F_p.
//!
//! Everything downstream reduces to ranks and kernels of matrices built here,
//! so elimination is written against raw `u32` rows with Barrett reduction.
//! Row elimination can fan out over rayon; the result of a reduction is the
//! unique reduced echelon form, so parallel and sequential runs agree bit for bit.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::parallel::{self, Parallelism};

/// The prime used throughout unless configured otherwise.
pub const DEFAULT_PRIME: u32 = 31991;

/// An element of F_p, always fully reduced.
///
/// The modulus lives in the [`PrimeField`] context, not in the element.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The field F_p for a prime `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
    // floor(2^64 / p)
    barrett: u64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let barrett = ((1u128 << 64) / p as u128) as u64;
        Ok(PrimeField { p: p as u32, barrett })
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// Reduces any `x < 2^64`.
    #[inline(always)]
    pub(crate) fn reduce(&self, x: u64) -> u32 {
        let q = ((x as u128 * self.barrett as u128) >> 64) as u64;
        let mut r = x - q * self.p as u64;
        if r >= self.p as u64 {
            r -= self.p as u64;
        }
        r as u32
    }

    #[inline]
    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    #[inline]
    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    #[inline]
    pub fn from_u64(&self, x: u64) -> FieldElement {
        FieldElement(self.reduce(x))
    }

    #[inline]
    pub fn from_i64(&self, x: i64) -> FieldElement {
        let r = x.rem_euclid(self.p as i64);
        FieldElement(r as u32)
    }

    /// Wraps a value already known to lie in `[0, p)`.
    #[inline]
    pub(crate) fn raw(&self, x: u32) -> FieldElement {
        debug_assert!(x < self.p);
        FieldElement(x)
    }

    /// The symmetric representative in `(-p/2, p/2]`.
    pub fn to_signed(&self, a: FieldElement) -> i64 {
        let v = a.0 as i64;
        if v > self.p as i64 / 2 {
            v - self.p as i64
        } else {
            v
        }
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let s = a.0 + b.0;
        FieldElement(if s >= self.p { s - self.p } else { s })
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(if a.0 >= b.0 { a.0 - b.0 } else { a.0 + self.p - b.0 })
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(if a.0 == 0 { 0 } else { self.p - a.0 })
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.reduce(a.0 as u64 * b.0 as u64))
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero(self.p));
        }
        let (mut r0, mut r1) = (self.p as i64, a.0 as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Ok(self.from_i64(t0))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Falling factorial `n (n-1) ... (n-k+1)` reduced mod p.
    pub fn falling_factorial(&self, n: u32, k: u32) -> FieldElement {
        (0..k).fold(FieldElement::ONE, |acc, i| self.mul(acc, self.from_u64((n - i) as u64)))
    }

    pub fn random<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement(rng.random_range(0..self.p))
    }

    pub fn random_nonzero<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement(rng.random_range(1..self.p))
    }
}

/// Modular inverse of a nonzero element.
pub fn ff_inv(field: &PrimeField, a: FieldElement) -> Result<FieldElement> {
    field.inv(a)
}

/// A dense row-major matrix over F_p.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over F_{}", self.rows, self.cols, self.field.p)?;
        for r in 0..self.rows.min(16) {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        Ok(())
    }
}

// Below this many entry updates per pivot step the rayon dispatch costs more
// than it saves.
const PAR_THRESHOLD: usize = 1 << 14;

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(field: PrimeField, cols: usize, rows: &[Vec<FieldElement>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: row.len() });
            }
            data.extend(row.iter().map(|e| e.value()));
        }
        Ok(Matrix { field, rows: rows.len(), cols, data })
    }

    /// Builds a matrix from raw reduced values; `data.len()` must be `rows * cols`.
    pub(crate) fn from_raw(field: PrimeField, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols);
        debug_assert!(data.iter().all(|&v| v < field.p));
        Matrix { field, rows, cols, data }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        FieldElement(self.data[r * self.cols + c])
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.data[r * self.cols + c] = v.value();
    }

    pub fn row(&self, r: usize) -> Vec<FieldElement> {
        self.raw_row(r).iter().map(|&v| FieldElement(v)).collect()
    }

    pub(crate) fn raw_row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows)
            .map(|r| {
                let acc = self
                    .raw_row(r)
                    .iter()
                    .zip(v)
                    .fold(0u64, |acc, (&a, b)| self.field.reduce(acc + a as u64 * b.value() as u64) as u64);
                FieldElement(acc as u32)
            })
            .collect())
    }

    /// Gaussian elimination in place. With `reduced` the result is the RREF,
    /// otherwise only rows below each pivot are cleared. Returns pivot columns.
    fn eliminate(&mut self, reduced: bool, par: Parallelism) -> Vec<usize> {
        let field = self.field;
        let p = field.p as u64;
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut prow = 0;
        let mut pivot_tail: Vec<u32> = Vec::with_capacity(cols);
        for col in 0..cols {
            if prow == self.rows {
                break;
            }
            let Some(found) = (prow..self.rows).find(|&r| self.data[r * cols + col] != 0) else {
                continue;
            };
            if found != prow {
                for c in col..cols {
                    self.data.swap(found * cols + c, prow * cols + c);
                }
            }
            let inv = field
                .inv(FieldElement(self.data[prow * cols + col]))
                .expect("pivot is nonzero")
                .value() as u64;
            for v in &mut self.data[prow * cols + col..(prow + 1) * cols] {
                *v = field.reduce(*v as u64 * inv);
            }
            pivot_tail.clear();
            pivot_tail.extend_from_slice(&self.data[prow * cols + col..(prow + 1) * cols]);

            let start_row = if reduced { 0 } else { prow + 1 };
            let work = (self.rows - start_row) * (cols - col);
            let update = |(i, row): (usize, &mut [u32])| {
                if i == prow {
                    return;
                }
                let c = row[col];
                if c == 0 {
                    return;
                }
                let factor = p - c as u64;
                for (x, &y) in row[col..].iter_mut().zip(&pivot_tail) {
                    *x = field.reduce(*x as u64 + factor * y as u64);
                }
            };
            let body = &mut self.data[start_row * cols..];
            let offset = start_row;
            parallel::for_each_row(body, cols, par, work >= PAR_THRESHOLD, |i, row| {
                update((i + offset, row))
            });
            pivots.push(col);
            prow += 1;
        }
        pivots
    }

    pub fn rref_with(&self, par: Parallelism) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.eliminate(true, par);
        (m, pivots)
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        self.rref_with(Parallelism::default())
    }

    pub fn rank_with(&self, par: Parallelism) -> usize {
        let mut m = self.clone();
        m.eliminate(false, par).len()
    }

    pub fn rank(&self) -> usize {
        self.rank_with(Parallelism::default())
    }

    /// Canonical basis of the right kernel `{v : M v = 0}`.
    ///
    /// The basis is itself in reduced row echelon form, so every vector has
    /// leading entry 1 and the result depends only on the kernel as a subspace.
    pub fn kernel(&self) -> Vec<Vec<FieldElement>> {
        let (r, pivots) = self.rref();
        let field = self.field;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(FieldElement(r.data[i * self.cols + free])).value();
            }
            basis.extend(v);
        }
        let k = self.cols - pivots.len();
        if k == 0 {
            return Vec::new();
        }
        let km = Matrix::from_raw(field, k, self.cols, basis);
        let (kr, _) = km.rref();
        (0..k).map(|i| kr.row(i)).collect()
    }

    /// Canonical basis of the left kernel `{v : v M = 0}`.
    pub fn left_kernel(&self) -> Vec<Vec<FieldElement>> {
        self.transpose().kernel()
    }
}

/// Row space of a matrix kept in reduced echelon form, for membership tests
/// and normal forms of vectors.
#[derive(Clone, Debug)]
pub struct RowSpace {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(m: &Matrix) -> Self {
        let (r, pivots) = m.rref();
        let k = pivots.len();
        let data = r.data[..k * r.cols].to_vec();
        RowSpace { basis: Matrix::from_raw(r.field, k, r.cols, data), pivots }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    /// Reduces `v` in place to its normal form modulo the row space: the
    /// result is zero at every pivot column.
    pub fn reduce(&self, v: &mut [FieldElement]) {
        let field = self.basis.field;
        let p = field.p as u64;
        for (i, &pc) in self.pivots.iter().enumerate() {
            let c = v[pc].value();
            if c == 0 {
                continue;
            }
            let factor = p - c as u64;
            for (x, &y) in v[pc..].iter_mut().zip(&self.basis.raw_row(i)[pc..]) {
                *x = FieldElement(field.reduce(x.value() as u64 + factor * y as u64));
            }
        }
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| x.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> PrimeField {
        PrimeField::new(DEFAULT_PRIME as u64).unwrap()
    }

    #[test]
    fn inverse_examples() {
        let f = f();
        assert_eq!(ff_inv(&f, f.one()).unwrap(), f.one());
        let m1 = f.from_u64(31990);
        assert_eq!(ff_inv(&f, m1).unwrap(), m1);
        assert_eq!(ff_inv(&f, f.from_u64(2)).unwrap().value(), 15996);
        assert_eq!(ff_inv(&f, f.zero()), Err(Error::DivisionByZero(31991)));
    }

    #[test]
    fn rejects_composite_and_huge_moduli() {
        assert!(PrimeField::new(31993 * 3).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new((1 << 31) + 11).is_err());
        assert!(PrimeField::new(2).is_ok());
    }

    #[test]
    fn barrett_matches_remainder() {
        let f = f();
        for x in [0u64, 1, 31990, 31991, 31992, u32::MAX as u64, (1 << 62) + 12345, u64::MAX] {
            assert_eq!(f.reduce(x) as u64, x % 31991, "x = {x}");
        }
    }

    #[test]
    fn rref_trivial_cases() {
        let f = f();
        let id = Matrix::identity(f, 3);
        let (r, piv) = id.rref();
        assert_eq!(r, id);
        assert_eq!(piv, vec![0, 1, 2]);

        let z = Matrix::zeros(f, 2, 4);
        let (r, piv) = z.rref();
        assert_eq!(r, z);
        assert!(piv.is_empty());
    }

    #[test]
    fn rank_of_outer_product_is_one() {
        let f = f();
        let u = [3u64, 0, 7, 1];
        let v = [2u64, 5, 11];
        let rows: Vec<Vec<FieldElement>> =
            u.iter().map(|&a| v.iter().map(|&b| f.from_u64(a * b)).collect()).collect();
        let m = Matrix::from_rows(f, 3, &rows).unwrap();
        assert_eq!(m.rank(), 1);
        assert_eq!(Matrix::identity(f, 5).rank(), 5);
    }

    #[test]
    fn kernel_trivial_cases() {
        let f = f();
        assert!(Matrix::identity(f, 4).kernel().is_empty());
        let k = Matrix::zeros(f, 3, 3).kernel();
        assert_eq!(k.len(), 3);
        for (i, v) in k.iter().enumerate() {
            for (j, x) in v.iter().enumerate() {
                assert_eq!(x.value(), (i == j) as u32);
            }
        }
    }

    #[test]
    fn kernel_is_canonical_for_row_operations() {
        let f = f();
        let rows = vec![
            vec![f.from_u64(1), f.from_u64(2), f.from_u64(3), f.from_u64(4)],
            vec![f.from_u64(2), f.from_u64(4), f.from_u64(7), f.from_u64(1)],
        ];
        let m = Matrix::from_rows(f, 4, &rows).unwrap();
        let mixed = vec![
            rows[1].clone(),
            rows[0].iter().zip(&rows[1]).map(|(a, b)| f.add(f.mul(f.from_u64(5), *a), *b)).collect(),
        ];
        let m2 = Matrix::from_rows(f, 4, &mixed).unwrap();
        assert_eq!(m.kernel(), m2.kernel());
        for v in m.kernel() {
            assert!(m.mul_vec(&v).unwrap().iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn row_space_reduction() {
        let f = f();
        let rows = vec![vec![f.from_u64(1), f.from_u64(1), f.zero()], vec![f.zero(), f.from_u64(1), f.from_u64(1)]];
        let rs = RowSpace::new(&Matrix::from_rows(f, 3, &rows).unwrap());
        assert_eq!(rs.dim(), 2);
        assert!(rs.contains(&[f.from_u64(1), f.from_u64(2), f.from_u64(1)]));
        assert!(!rs.contains(&[f.from_u64(1), f.zero(), f.from_u64(1)]));
    }
}
