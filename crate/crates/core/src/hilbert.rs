//! Hilbert series, functions and polynomials of graded quotients `S/I`.
//!
//! The series of a monomial ideal is computed by the pivot recursion
//! `N(M) = N(M + (P)) + t^deg(P) N(M : P)` with a pure power of the most
//! frequent variable as pivot. For a general ideal one passes the leading
//! term ideal of a Gröbner basis. [`hilbert_function_rank`] recomputes single
//! values by linear algebra and serves as an independent check.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::Matrix;
use crate::error::{Error, Result};
use crate::groebner::{self, minimalize_monomials, Ideal};
use crate::poly::{binomial, graded_basis, Monomial};

/// `Q(t) / (1 - t)^s` in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertSeries {
    pub numerator: Vec<i64>,
    pub denominator_exponent: u32,
    pub nvars: usize,
}

impl HilbertSeries {
    /// Cancels every `(1 - t)` factor shared by numerator and denominator.
    pub fn from_unsimplified(mut numerator: Vec<i64>, mut s: u32, nvars: usize) -> Self {
        trim(&mut numerator);
        while s > 0 && !numerator.is_empty() && numerator.iter().sum::<i64>() == 0 {
            // numerator = (1 - t) q  =>  q_k = n_k + q_{k-1}
            let mut q = Vec::with_capacity(numerator.len() - 1);
            let mut acc = 0;
            for &c in &numerator[..numerator.len() - 1] {
                acc += c;
                q.push(acc);
            }
            numerator = q;
            trim(&mut numerator);
            s -= 1;
        }
        HilbertSeries { numerator, denominator_exponent: s, nvars }
    }

    /// `Q(1)`.
    pub fn numerator_at_one(&self) -> i64 {
        self.numerator.iter().sum()
    }

    /// Coefficient of `t^n` in the expansion.
    pub fn coefficient(&self, n: u64) -> i64 {
        series_to_function(self, n)
    }

    /// Re-expands `Q(t) (1 - t)^(v - s)`, the numerator over `(1 - t)^v`.
    pub fn unsimplified_numerator(&self) -> Vec<i64> {
        let mut out = self.numerator.clone();
        for _ in self.denominator_exponent as usize..self.nvars {
            let mut next = vec![0; out.len() + 1];
            for (k, &c) in out.iter().enumerate() {
                next[k] += c;
                next[k + 1] -= c;
            }
            out = next;
        }
        trim(&mut out);
        out
    }
}

fn trim(v: &mut Vec<i64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = String::new();
        for (k, &c) in self.numerator.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            let body = match (k, mag) {
                (0, _) => mag.to_string(),
                (1, 1) => "t".to_string(),
                (1, _) => format!("{mag}t"),
                (_, 1) => format!("t^{k}"),
                _ => format!("{mag}t^{k}"),
            };
            if parts.is_empty() {
                if c < 0 {
                    parts.push('-');
                }
            } else {
                parts.push_str(if c < 0 { " - " } else { " + " });
            }
            parts.push_str(&body);
        }
        if parts.is_empty() {
            parts.push('0');
        }
        write!(f, "({parts})/(1-t)^{}", self.denominator_exponent)
    }
}

type Memo = HashMap<Vec<Monomial>, Vec<i64>>;

fn poly_add_shifted(acc: &mut Vec<i64>, other: &[i64], shift: usize) {
    if acc.len() < other.len() + shift {
        acc.resize(other.len() + shift, 0);
    }
    for (k, &c) in other.iter().enumerate() {
        acc[k + shift] += c;
    }
}

fn one_minus_t_pow_product(degrees: impl Iterator<Item = u32>) -> Vec<i64> {
    let mut out = vec![1i64];
    for d in degrees {
        let d = d as usize;
        let mut next = vec![0; out.len() + d];
        for (k, &c) in out.iter().enumerate() {
            next[k] += c;
            next[k + d] -= c;
        }
        out = next;
    }
    out
}

fn numerator_rec(mut gens: Vec<Monomial>, memo: &mut Memo) -> Vec<i64> {
    gens.sort_by(|a, b| a.exponents().cmp(b.exponents()));
    if let Some(hit) = memo.get(&gens) {
        return hit.clone();
    }
    let n = gens.first().map_or(0, |m| m.nvars());
    let mut freq = vec![0usize; n];
    for g in &gens {
        for (i, &e) in g.exponents().iter().enumerate() {
            if e > 0 {
                freq[i] += 1;
            }
        }
    }
    let result = match (0..n).filter(|&i| freq[i] >= 2).max_by_key(|&i| (freq[i], std::cmp::Reverse(i))) {
        // pairwise coprime generators form a regular sequence
        None => one_minus_t_pow_product(gens.iter().map(|m| m.degree())),
        Some(v) => {
            let e = gens.iter().map(|g| g.exponent(v)).filter(|&e| e > 0).min().unwrap();
            let mut pexp = vec![0u32; n];
            pexp[v] = e;
            let pivot = Monomial::new(&pexp).unwrap();
            let mut sum_gens: Vec<Monomial> = gens.iter().filter(|g| !pivot.divides(g)).copied().collect();
            sum_gens.push(pivot);
            let colon: Vec<Monomial> = gens
                .iter()
                .map(|g| {
                    let mut ex: Vec<u32> = g.exponents().iter().map(|&x| x as u32).collect();
                    ex[v] = ex[v].saturating_sub(e);
                    Monomial::new(&ex).unwrap()
                })
                .collect();
            let mut out = numerator_rec(minimalize_monomials(sum_gens), memo);
            let quotient = numerator_rec(minimalize_monomials(colon), memo);
            poly_add_shifted(&mut out, &quotient, e as usize);
            out
        }
    };
    memo.insert(gens, result.clone());
    result
}

/// Hilbert series of `S / (gens)` for a monomial ideal in `v` variables.
pub fn hilbert_series_monomial(gens: &[Monomial], v: usize) -> HilbertSeries {
    let gens = minimalize_monomials(gens.to_vec());
    if gens.iter().any(|g| g.degree() == 0) {
        return HilbertSeries { numerator: Vec::new(), denominator_exponent: 0, nvars: v };
    }
    let mut memo = Memo::new();
    let num = if gens.is_empty() { vec![1] } else { numerator_rec(gens, &mut memo) };
    HilbertSeries::from_unsimplified(num, v as u32, v)
}

/// Hilbert series of `S / I` through the initial ideal of a fresh Gröbner basis.
pub fn hilbert_series_of_ideal(ideal: &Ideal) -> HilbertSeries {
    let gb = groebner::buchberger(ideal);
    hilbert_series_monomial(&groebner::leading_term_ideal(&gb), ideal.ring().nvars())
}

/// Coefficient of `t^n`.
pub fn series_to_function(hs: &HilbertSeries, n: u64) -> i64 {
    let s = hs.denominator_exponent as u64;
    hs.numerator
        .iter()
        .enumerate()
        .filter(|(k, _)| *k as u64 <= n)
        .map(|(k, &q)| {
            let m = n - k as u64;
            let c = if s == 0 { (m == 0) as u64 } else { binomial(m + s - 1, s - 1) };
            q * c as i64
        })
        .sum()
}

/// Invariants read off the Hilbert polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertPolynomialInfo {
    /// Projective dimension; `-1` for the empty scheme.
    pub dimension: i32,
    pub degree: i64,
    /// Arithmetic genus, defined for curves.
    pub genus: Option<i64>,
    /// `e_i = Q^(i)(1) / i!`; the polynomial is `sum (-1)^i e_i C(n + dim - i, dim - i)`.
    pub coefficients: Vec<i64>,
    /// False when the dimension is not 0 or 1; the other fields are still filled.
    pub supported: bool,
}

impl HilbertPolynomialInfo {
    pub fn evaluate(&self, n: i64) -> i64 {
        let dim = self.dimension;
        self.coefficients
            .iter()
            .enumerate()
            .map(|(i, &e)| {
                let top = n + dim as i64 - i as i64;
                let k = dim as i64 - i as i64;
                let b = if top < k || top < 0 { 0 } else { binomial(top as u64, k as u64) as i64 };
                let sign = if i % 2 == 0 { 1 } else { -1 };
                sign * e * b
            })
            .sum()
    }
}

impl fmt::Display for HilbertPolynomialInfo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.dimension, self.genus) {
            (-1, _) => write!(f, "0"),
            (0, _) => write!(f, "{}", self.degree),
            (1, Some(g)) => {
                let c = 1 - g;
                match c.cmp(&0) {
                    std::cmp::Ordering::Less => write!(f, "{}n - {}", self.degree, -c),
                    std::cmp::Ordering::Equal => write!(f, "{}n", self.degree),
                    std::cmp::Ordering::Greater => write!(f, "{}n + {}", self.degree, c),
                }
            }
            _ => {
                let dim = self.dimension;
                let terms: Vec<String> = self
                    .coefficients
                    .iter()
                    .enumerate()
                    .map(|(i, e)| {
                        let sign = if i % 2 == 0 { "" } else { "-" };
                        format!("{sign}{e}*C(n+{},{})", dim - i as i32, dim - i as i32)
                    })
                    .collect();
                write!(f, "{}", terms.join(" + "))
            }
        }
    }
}

pub fn hilbert_polynomial(hs: &HilbertSeries) -> HilbertPolynomialInfo {
    let s = hs.denominator_exponent as i32;
    let dimension = s - 1;
    if dimension < 0 {
        return HilbertPolynomialInfo { dimension, degree: 0, genus: None, coefficients: Vec::new(), supported: true };
    }
    let coefficients: Vec<i64> = (0..s as u64)
        .map(|i| {
            hs.numerator
                .iter()
                .enumerate()
                .map(|(k, &q)| q * binomial(k as u64, i) as i64)
                .sum()
        })
        .collect();
    let degree = coefficients[0];
    let genus = (dimension == 1).then(|| 1 - coefficients[0] + coefficients[1]);
    HilbertPolynomialInfo { dimension, degree, genus, coefficients, supported: dimension <= 1 }
}

/// Largest number of columns accepted by [`hilbert_function_rank`].
pub const RANK_COLUMN_LIMIT: usize = 200_000;

/// `dim (S/I)_n` by linear algebra: the number of degree-`n` monomials minus
/// the rank of all monomial multiples of the generators in degree `n`.
pub fn hilbert_function_rank(ideal: &Ideal, n: u32) -> Result<u64> {
    let ring = ideal.ring();
    if !ideal.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let v = ring.nvars();
    let cols = binomial(n as u64 + v as u64 - 1, v as u64 - 1) as usize;
    if cols > RANK_COLUMN_LIMIT {
        return Err(Error::Feasibility { what: format!("degree-{n} rank computation"), size: cols, limit: RANK_COLUMN_LIMIT });
    }
    let m = degree_piece_matrix(ideal, n);
    Ok((cols - m.rank()) as u64)
}

/// Matrix whose rows are the coefficient vectors of `m * g` for every
/// generator `g` of degree at most `n` and monomial `m` with `deg(m g) = n`,
/// columns indexed by the degree-`n` monomials in descending order.
pub(crate) fn degree_piece_matrix(ideal: &Ideal, n: u32) -> Matrix {
    let ring = ideal.ring();
    let v = ring.nvars();
    let basis = graded_basis(n, v, ring.order());
    let index: HashMap<Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let cols = basis.len();
    let mut data = Vec::new();
    let mut rows = 0;
    for g in ideal.generators() {
        let Some(d) = g.degree() else { continue };
        if d > n {
            continue;
        }
        for m in graded_basis(n - d, v, ring.order()) {
            let start = data.len();
            data.resize(start + cols, 0u32);
            for (t, c) in g.terms() {
                data[start + index[&t.mul(&m)]] = c.value();
            }
            rows += 1;
        }
    }
    Matrix::from_raw(ring.field(), rows, cols, data)
}
