//! Multivariate polynomials over F_p.
//!
//! Terms are kept sorted in descending order for the ring's monomial order, so
//! the leading term is always `terms[0]`. Variables are named `x0, x1, ...`
//! followed by `y0, y1, ...`; the split point is part of the ring.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{FieldElement, PrimeField};
use crate::error::{Error, Result};

/// Largest number of variables a ring may have.
pub const MAX_VARS: usize = 12;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    nvars: u8,
    degree: u32,
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exponents())
    }
}

impl Monomial {
    pub fn new(exponents: &[u32]) -> Result<Self> {
        if exponents.len() > MAX_VARS {
            return Err(Error::TooManyVariables(exponents.len()));
        }
        let mut exps = [0u16; MAX_VARS];
        let mut degree = 0;
        for (slot, &e) in exps.iter_mut().zip(exponents) {
            *slot = u16::try_from(e).map_err(|_| Error::ExponentOverflow)?;
            degree += e;
        }
        Ok(Monomial { exps, nvars: exponents.len() as u8, degree })
    }

    pub fn one(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS);
        Monomial { exps: [0; MAX_VARS], nvars: nvars as u8, degree: 0 }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[i] = 1;
        m.degree = 1;
        m
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars as usize
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn exponents(&self) -> &[u16] {
        &self.exps[..self.nvars as usize]
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u32 {
        self.exponents().iter().zip(weights).map(|(&e, &w)| e as u32 * w).sum()
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut exps = self.exps;
        for (a, b) in exps.iter_mut().zip(&other.exps).take(self.nvars as usize) {
            *a = a.checked_add(*b).expect("monomial exponent overflow");
        }
        Monomial { exps, nvars: self.nvars, degree: self.degree + other.degree }
    }

    /// True iff `self` divides `other`.
    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree
            && self.exps[..self.nvars as usize]
                .iter()
                .zip(&other.exps)
                .all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut exps = other.exps;
        for (a, b) in exps.iter_mut().zip(&self.exps).take(self.nvars as usize) {
            *a -= b;
        }
        Some(Monomial { exps, nvars: self.nvars, degree: other.degree - self.degree })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut exps = [0u16; MAX_VARS];
        let mut degree = 0;
        for (i, slot) in exps.iter_mut().enumerate().take(self.nvars as usize) {
            *slot = self.exps[i].max(other.exps[i]);
            degree += *slot as u32;
        }
        Monomial { exps, nvars: self.nvars, degree }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps[..self.nvars as usize]
            .iter()
            .zip(&other.exps)
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Drops the exponent of variable `i` by one.
    pub fn decrement(&self, i: usize) -> Option<Monomial> {
        if self.exps[i] == 0 {
            return None;
        }
        let mut m = *self;
        m.exps[i] -= 1;
        m.degree -= 1;
        Some(m)
    }

    pub fn increment(&self, i: usize) -> Monomial {
        let mut m = *self;
        m.exps[i] += 1;
        m.degree += 1;
        m
    }

    /// True iff no variable with index below `k` occurs.
    pub fn free_of_leading(&self, k: usize) -> bool {
        self.exps[..k].iter().all(|&e| e == 0)
    }

    /// Restriction to variables `start..start+len`, reindexed from 0.
    pub fn slice_vars(&self, start: usize, len: usize) -> Monomial {
        let mut exps = [0u16; MAX_VARS];
        exps[..len].copy_from_slice(&self.exps[start..start + len]);
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, nvars: len as u8, degree }
    }

    /// Embeds into a ring with `nvars` variables, placing ours at `offset`.
    pub fn embed(&self, nvars: usize, offset: usize) -> Monomial {
        let mut exps = [0u16; MAX_VARS];
        exps[offset..offset + self.nvars()].copy_from_slice(self.exponents());
        Monomial { exps, nvars: nvars as u8, degree: self.degree }
    }
}

/// Monomial orders on a fixed ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MonomialOrder {
    /// Graded reverse lexicographic with `x0 > x1 > ...`.
    Grevlex,
    /// Lexicographic with `x0 > x1 > ...`.
    Lex,
    /// The first `split` variables are eliminated; grevlex inside each block.
    Block { split: usize },
}

#[inline]
fn grevlex_cmp(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let n = a.nvars as usize;
        match *self {
            MonomialOrder::Grevlex => {
                match a.degree.cmp(&b.degree) {
                    Ordering::Equal => {}
                    o => return o,
                }
                for i in (0..n).rev() {
                    if a.exps[i] != b.exps[i] {
                        return b.exps[i].cmp(&a.exps[i]);
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Lex => a.exps[..n].cmp(&b.exps[..n]),
            MonomialOrder::Block { split } => match grevlex_cmp(&a.exps[..split], &b.exps[..split]) {
                Ordering::Equal => grevlex_cmp(&a.exps[split..n], &b.exps[split..n]),
                o => o,
            },
        }
    }
}

/// Compares two monomials, checking that they share a ring.
pub fn mono_cmp(a: &Monomial, b: &Monomial, ord: MonomialOrder) -> Result<Ordering> {
    if a.nvars != b.nvars {
        return Err(Error::DimensionMismatch { expected: a.nvars(), found: b.nvars() });
    }
    if let MonomialOrder::Block { split } = ord {
        if split > a.nvars() {
            return Err(Error::DimensionMismatch { expected: a.nvars(), found: split });
        }
    }
    Ok(ord.cmp(a, b))
}

/// A polynomial ring `F_p[x0.., y0..]` with a monomial order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    field: PrimeField,
    nvars: usize,
    order: MonomialOrder,
    // variables with index < x_count are printed as x_i, the rest as y_{i - x_count}
    x_count: usize,
}

impl Ring {
    pub fn new(field: PrimeField, nvars: usize, order: MonomialOrder) -> Result<Self> {
        Self::with_names(field, nvars, order, nvars)
    }

    /// A ring whose first `x_count` variables are named `x*` and the rest `y*`.
    pub fn with_names(field: PrimeField, nvars: usize, order: MonomialOrder, x_count: usize) -> Result<Self> {
        if nvars == 0 || nvars > MAX_VARS {
            return Err(Error::TooManyVariables(nvars));
        }
        if x_count > nvars {
            return Err(Error::DimensionMismatch { expected: nvars, found: x_count });
        }
        if let MonomialOrder::Block { split } = order {
            if split > nvars {
                return Err(Error::DimensionMismatch { expected: nvars, found: split });
            }
        }
        Ok(Ring { field, nvars, order, x_count })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn x_count(&self) -> usize {
        self.x_count
    }

    pub fn with_order(&self, order: MonomialOrder) -> Ring {
        Ring { order, ..*self }
    }

    pub fn var_name(&self, i: usize) -> String {
        if i < self.x_count {
            format!("x{i}")
        } else {
            format!("y{}", i - self.x_count)
        }
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::monomial(*self, Monomial::var(self.nvars, i), FieldElement::ONE)
    }

    /// Monomials of degree `n`, sorted descending by the ring's order.
    pub fn graded_basis(&self, n: u32) -> Vec<Monomial> {
        let mut out = all_monomials(n, self.nvars);
        out.sort_by(|a, b| self.order.cmp(b, a));
        out
    }
}

fn all_monomials(n: u32, v: usize) -> Vec<Monomial> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(Monomial::new(cur).expect("bounded exponent"));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
    }
    let mut out = Vec::new();
    let mut cur = vec![0; v];
    rec(0, n, &mut cur, &mut out);
    out
}

/// All monomials of degree `n` in `v` variables, sorted descending by `order`.
pub fn graded_basis(n: u32, v: usize, order: MonomialOrder) -> Vec<Monomial> {
    let mut out = all_monomials(n, v);
    out.sort_by(|a, b| order.cmp(b, a));
    out
}

/// Binomial coefficient as `u64`; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

pub type Term = (Monomial, FieldElement);

#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<Term>,
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Polynomial {
    pub fn zero(ring: Ring) -> Self {
        Polynomial { ring, terms: Vec::new() }
    }

    pub fn constant(ring: Ring, c: FieldElement) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars), c)
    }

    pub fn monomial(ring: Ring, m: Monomial, c: FieldElement) -> Self {
        if c.is_zero() {
            return Self::zero(ring);
        }
        Polynomial { ring, terms: vec![(m, c)] }
    }

    /// Builds a polynomial from arbitrary terms: sorts, merges repeats, drops zeros.
    pub fn from_terms(ring: Ring, mut terms: Vec<Term>) -> Self {
        let f = ring.field;
        terms.sort_by(|a, b| ring.order.cmp(&b.0, &a.0));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = f.add(last.1, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        Polynomial { ring, terms: out }
    }

    /// Builds from terms already sorted descending with distinct monomials and
    /// nonzero coefficients.
    pub(crate) fn from_sorted_terms(ring: Ring, terms: Vec<Term>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.order.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| !t.1.is_zero()));
        Polynomial { ring, terms }
    }

    /// Polynomial with the given coefficient vector over a list of monomials.
    pub fn from_coefficients(ring: Ring, basis: &[Monomial], coeffs: &[FieldElement]) -> Self {
        let terms = basis.iter().zip(coeffs).filter(|(_, c)| !c.is_zero()).map(|(m, c)| (*m, *c)).collect();
        Self::from_terms(ring, terms)
    }

    #[inline]
    pub fn ring(&self) -> Ring {
        self.ring
    }

    #[inline]
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub(crate) fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    #[inline]
    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.0)
    }

    #[inline]
    pub fn leading_coefficient(&self) -> Option<FieldElement> {
        self.terms.first().map(|t| t.1)
    }

    /// Largest total degree of a term; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].0.degree() == w[1].0.degree())
    }

    /// Common weighted degree of all terms, if there is one.
    pub fn weighted_degree(&self, weights: &[u32]) -> Option<u32> {
        let first = self.terms.first()?.0.weighted_degree(weights);
        self.terms
            .iter()
            .all(|t| t.0.weighted_degree(weights) == first)
            .then_some(first)
    }

    pub fn coefficient(&self, m: &Monomial) -> FieldElement {
        self.terms
            .binary_search_by(|t| self.ring.order.cmp(m, &t.0))
            .map(|i| self.terms[i].1)
            .unwrap_or(FieldElement::ZERO)
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.add_scaled_shifted(FieldElement::ONE, &Monomial::one(self.ring.nvars), other))
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let minus_one = self.ring.field.neg(FieldElement::ONE);
        Ok(self.add_scaled_shifted(minus_one, &Monomial::one(self.ring.nvars), other))
    }

    pub fn neg(&self) -> Polynomial {
        let f = self.ring.field;
        Polynomial { ring: self.ring, terms: self.terms.iter().map(|&(m, c)| (m, f.neg(c))).collect() }
    }

    pub fn scale(&self, c: FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.ring);
        }
        let f = self.ring.field;
        Polynomial { ring: self.ring, terms: self.terms.iter().map(|&(m, a)| (m, f.mul(a, c))).collect() }
    }

    /// `c * m * self`; multiplication by a monomial preserves term order.
    pub fn mul_term(&self, c: FieldElement, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.ring);
        }
        let f = self.ring.field;
        Polynomial { ring: self.ring, terms: self.terms.iter().map(|&(t, a)| (t.mul(m), f.mul(a, c))).collect() }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let f = self.ring.field;
        let mut acc: std::collections::HashMap<Monomial, u64> =
            std::collections::HashMap::with_capacity(small.len() * big.len());
        for &(m1, c1) in &small.terms {
            for &(m2, c2) in &big.terms {
                let e = acc.entry(m1.mul(&m2)).or_insert(0);
                *e = f.reduce(*e + c1.value() as u64 * c2.value() as u64) as u64;
            }
        }
        let terms = acc.into_iter().filter(|&(_, c)| c != 0).map(|(m, c)| (m, f.raw(c as u32))).collect();
        Polynomial::from_terms(self.ring, terms)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::constant(self.ring, FieldElement::ONE);
        for _ in 0..e {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// `self + c * m * g` in a single merge pass. Rings must agree.
    pub(crate) fn add_scaled_shifted(&self, c: FieldElement, m: &Monomial, g: &Polynomial) -> Polynomial {
        let f = self.ring.field;
        let ord = self.ring.order;
        if c.is_zero() || g.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut i = 0;
        let mut j = 0;
        let a = &self.terms;
        let b = &g.terms;
        let mut bj = b.first().map(|t| t.0.mul(m));
        while i < a.len() {
            let Some(bm) = bj else { break };
            match ord.cmp(&a[i].0, &bm) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push((bm, f.mul(c, b[j].1)));
                    j += 1;
                    bj = b.get(j).map(|t| t.0.mul(m));
                }
                Ordering::Equal => {
                    let s = f.add(a[i].1, f.mul(c, b[j].1));
                    if !s.is_zero() {
                        out.push((bm, s));
                    }
                    i += 1;
                    j += 1;
                    bj = b.get(j).map(|t| t.0.mul(m));
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        while j < b.len() {
            out.push((b[j].0.mul(m), f.mul(c, b[j].1)));
            j += 1;
        }
        Polynomial { ring: self.ring, terms: out }
    }

    /// Scales so that the leading coefficient is 1.
    pub fn make_monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(c) if c == FieldElement::ONE => self.clone(),
            Some(c) => self.scale(self.ring.field.inv(c).expect("nonzero leading coefficient")),
        }
    }

    pub fn partial_derivative(&self, var: usize) -> Polynomial {
        let f = self.ring.field;
        let terms = self
            .terms
            .iter()
            .filter_map(|&(m, c)| {
                let e = m.exponent(var);
                let d = m.decrement(var)?;
                let c = f.mul(c, f.from_u64(e as u64));
                (!c.is_zero()).then_some((d, c))
            })
            .collect();
        // differentiation can reorder terms under a non-graded order
        Polynomial::from_terms(self.ring, terms)
    }

    pub fn evaluate(&self, point: &[FieldElement]) -> Result<FieldElement> {
        if point.len() != self.ring.nvars {
            return Err(Error::DimensionMismatch { expected: self.ring.nvars, found: point.len() });
        }
        let f = self.ring.field;
        let mut acc = FieldElement::ZERO;
        for (m, c) in &self.terms {
            let mut v = *c;
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    v = f.mul(v, f.pow(point[i], e as u64));
                }
            }
            acc = f.add(acc, v);
        }
        Ok(acc)
    }

    /// Same polynomial in a ring differing only in its order.
    pub fn reorder(&self, ring: Ring) -> Polynomial {
        assert_eq!(ring.nvars, self.ring.nvars);
        assert_eq!(ring.field, self.ring.field);
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| ring.order.cmp(&b.0, &a.0));
        Polynomial { ring, terms }
    }

    /// Substitutes `images[i]` for variable `i`; all images share a target ring.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ring.nvars {
            return Err(Error::DimensionMismatch { expected: self.ring.nvars, found: images.len() });
        }
        let target = images.first().map(|p| p.ring).ok_or(Error::EmptySystem)?;
        if images.iter().any(|p| p.ring != target) {
            return Err(Error::RingMismatch);
        }
        let mut powers: Vec<Vec<Polynomial>> = vec![vec![Polynomial::constant(target, FieldElement::ONE)]; images.len()];
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, *c);
            for (i, &e) in m.exponents().iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul_unchecked(&images[i]);
                    powers[i].push(next);
                }
                if e > 0 {
                    t = t.mul_unchecked(&powers[i][e as usize]);
                }
            }
            acc = acc.add_scaled_shifted(FieldElement::ONE, &Monomial::one(target.nvars), &t);
        }
        Ok(acc)
    }

    /// Coefficient vector over `basis` (monomials absent from `basis` must not occur).
    pub fn coefficients_in(&self, basis: &[Monomial]) -> Vec<FieldElement> {
        let index: std::collections::HashMap<Monomial, usize> =
            basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let mut v = vec![FieldElement::ZERO; basis.len()];
        for (m, c) in &self.terms {
            v[*index.get(m).expect("monomial outside basis")] = *c;
        }
        v
    }

    /// Parses the text form `c*x0^a*x1^b + ...`; `-` and implicit coefficients are accepted.
    pub fn parse(ring: Ring, text: &str) -> std::result::Result<Polynomial, String> {
        let f = ring.field;
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err("empty polynomial".into());
        }
        let mut terms = Vec::new();
        let mut chunks: Vec<(bool, &str)> = Vec::new();
        let mut start = 0;
        let mut neg = false;
        let bytes = s.as_bytes();
        for (i, &b) in bytes.iter().enumerate() {
            if (b == b'+' || b == b'-') && i > 0 && bytes[i - 1] != b'^' {
                chunks.push((neg, &s[start..i]));
                neg = b == b'-';
                start = i + 1;
            } else if i == 0 && (b == b'+' || b == b'-') {
                neg = b == b'-';
                start = 1;
            }
        }
        chunks.push((neg, &s[start..]));
        for (neg, chunk) in chunks {
            if chunk.is_empty() {
                return Err("empty term".into());
            }
            let mut coeff = FieldElement::ONE;
            let mut exps = vec![0u32; ring.nvars];
            for factor in chunk.split('*') {
                if factor.is_empty() {
                    return Err(format!("malformed term `{chunk}`"));
                }
                if factor.bytes().all(|b| b.is_ascii_digit()) {
                    let v: u64 = factor.parse().map_err(|_| format!("bad coefficient `{factor}`"))?;
                    coeff = f.mul(coeff, f.from_u64(v));
                    continue;
                }
                let (name, exp) = match factor.split_once('^') {
                    Some((n, e)) => (n, e.parse::<u32>().map_err(|_| format!("bad exponent in `{factor}`"))?),
                    None => (factor, 1),
                };
                let idx = parse_var(&ring, name).ok_or_else(|| format!("unknown variable `{name}`"))?;
                exps[idx] += exp;
            }
            if neg {
                coeff = f.neg(coeff);
            }
            let m = Monomial::new(&exps).map_err(|e| e.to_string())?;
            terms.push((m, coeff));
        }
        Ok(Polynomial::from_terms(ring, terms))
    }
}

fn parse_var(ring: &Ring, name: &str) -> Option<usize> {
    let (prefix, idx) = name.split_at(1);
    let idx: usize = idx.parse().ok()?;
    let i = match prefix {
        "x" if idx < ring.x_count => idx,
        "y" if idx + ring.x_count < ring.nvars => idx + ring.x_count,
        _ => return None,
    };
    Some(i)
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, "+")?;
            }
            write!(f, "{c}")?;
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*{}", self.ring.var_name(i))?,
                    _ => write!(f, "*{}^{e}", self.ring.var_name(i))?,
                }
            }
        }
        Ok(())
    }
}
