//! Ideals of images of rational maps `P^s -> P^N`, optionally restricted to a
//! hypersurface of the source (a plane curve), plus the generator and
//! quadric-subscheme invariants computed from them.
//!
//! Two independent routes produce the image ideal: a degree-by-degree kernel
//! of the substitution map (pure linear algebra) and block-order elimination
//! of the graph ideal `(y_i - f_i(x), F)`.

use std::collections::{BTreeMap, HashMap};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{FieldElement, Matrix, PrimeField, RowSpace};
use crate::error::{Error, Result};
use crate::groebner::{self, GroebnerOptions, GroebnerStats, Ideal};
use crate::hilbert::{self, HilbertPolynomialInfo, HilbertSeries};
use crate::poly::{binomial, graded_basis, Monomial, MonomialOrder, Polynomial, Ring};

/// A map given by linearly independent forms of one degree, possibly
/// restricted to the hypersurface `relation = 0` of the source.
#[derive(Clone, Debug)]
pub struct ProjectiveMap {
    forms: Vec<Polynomial>,
    relation: Option<Polynomial>,
    degree: u32,
    target: Ring,
}

impl ProjectiveMap {
    pub fn new(forms: Vec<Polynomial>, relation: Option<Polynomial>) -> Result<Self> {
        let first = forms.first().ok_or(Error::EmptySystem)?;
        let source = first.ring();
        let degree = first.degree().ok_or(Error::InvalidConfig("zero form in map".into()))?;
        for f in &forms {
            if f.ring() != source {
                return Err(Error::RingMismatch);
            }
            if !f.is_homogeneous() || f.degree() != Some(degree) {
                return Err(Error::NotHomogeneous);
            }
        }
        if let Some(r) = &relation {
            if r.ring() != source {
                return Err(Error::RingMismatch);
            }
            if !r.is_homogeneous() || r.is_zero() {
                return Err(Error::NotHomogeneous);
            }
        }
        let target = Ring::with_names(source.field(), forms.len(), MonomialOrder::Grevlex, 0)?;
        let map = ProjectiveMap { forms, relation: relation.map(|r| r.make_monic()), degree, target };
        let reduced: Vec<Polynomial> = map.forms.iter().map(|f| map.reduce(f)).collect();
        let monos = graded_basis(degree, source.nvars(), source.order());
        let rows: Vec<Vec<FieldElement>> = reduced.iter().map(|f| f.coefficients_in(&monos)).collect();
        if Matrix::from_rows(source.field(), monos.len(), &rows)?.rank() != map.forms.len() {
            return Err(Error::InvalidConfig("forms of the map are linearly dependent".into()));
        }
        Ok(map)
    }

    pub fn forms(&self) -> &[Polynomial] {
        &self.forms
    }

    pub fn relation(&self) -> Option<&Polynomial> {
        self.relation.as_ref()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn source_ring(&self) -> Ring {
        self.forms[0].ring()
    }

    /// `F_p[y0..y_N]` with grevlex.
    pub fn target_ring(&self) -> Ring {
        self.target
    }

    fn reduce(&self, f: &Polynomial) -> Polynomial {
        match &self.relation {
            Some(r) => groebner::normal_form(f, std::slice::from_ref(r)),
            None => f.clone(),
        }
    }

    /// `G(f_0, ..., f_N)` reduced modulo the relation; zero iff `G` vanishes on the image.
    pub fn pullback(&self, g: &Polynomial) -> Result<Polynomial> {
        if g.ring() != self.target {
            return Err(Error::RingMismatch);
        }
        Ok(self.reduce(&g.substitute(&self.forms)?))
    }
}

/// Canonical basis of the degree-`k` part of the image ideal, by linear algebra.
pub fn image_ideal_truncated(map: &ProjectiveMap, k: u32) -> Result<Vec<Polynomial>> {
    let source = map.source_ring();
    let target = map.target_ring();
    let ys = graded_basis(k, target.nvars(), target.order());
    let xs = graded_basis(map.degree * k, source.nvars(), source.order());
    if xs.len() > hilbert::RANK_COLUMN_LIMIT || ys.len() > hilbert::RANK_COLUMN_LIMIT {
        return Err(Error::Feasibility {
            what: format!("degree-{k} substitution matrix"),
            size: xs.len().max(ys.len()),
            limit: hilbert::RANK_COLUMN_LIMIT,
        });
    }
    let mut cache: HashMap<Monomial, Polynomial> = HashMap::new();
    cache.insert(Monomial::one(target.nvars()), Polynomial::constant(source, FieldElement::ONE));
    let mut rows = Vec::with_capacity(ys.len());
    for y in &ys {
        rows.push(map_power(map, y, &mut cache).coefficients_in(&xs));
    }
    let a = Matrix::from_rows(source.field(), xs.len(), &rows)?;
    Ok(a.left_kernel().iter().map(|v| Polynomial::from_coefficients(target, &ys, v)).collect())
}

fn map_power(map: &ProjectiveMap, y: &Monomial, cache: &mut HashMap<Monomial, Polynomial>) -> Polynomial {
    if let Some(p) = cache.get(y) {
        return p.clone();
    }
    let i = y.exponents().iter().position(|&e| e > 0).expect("nonconstant");
    let lower = map_power(map, &y.decrement(i).unwrap(), cache);
    let p = map.reduce(&lower.mul_unchecked(&map.forms[i]));
    cache.insert(*y, p.clone());
    p
}

/// Options for the elimination route.
#[derive(Clone, Debug, Default)]
pub struct EliminationOptions {
    /// Only image equations up to this degree in `y` are guaranteed.
    pub max_target_degree: Option<u32>,
    pub groebner: GroebnerOptions,
}

#[derive(Clone, Debug)]
pub struct FullImage {
    /// Canonical minimal generators of the image ideal.
    pub ideal: Ideal,
    /// Size of the elimination ideal basis the generators were read from.
    pub eliminated_basis_len: usize,
    pub stats: GroebnerStats,
    pub truncated_at: Option<u32>,
}

/// Image ideal by eliminating the source variables from `(y_i - f_i, F)`.
pub fn image_ideal_full(map: &ProjectiveMap) -> Result<FullImage> {
    image_ideal_full_with(map, &EliminationOptions::default())
}

pub fn image_ideal_full_with(map: &ProjectiveMap, opts: &EliminationOptions) -> Result<FullImage> {
    let source = map.source_ring();
    let s = source.nvars();
    let n = map.forms.len();
    let graph = Ring::with_names(source.field(), s + n, MonomialOrder::Block { split: s }, s)?;
    let embed = |f: &Polynomial| {
        Polynomial::from_terms(graph, f.terms().iter().map(|&(m, c)| (m.embed(s + n, 0), c)).collect())
    };
    let mut gens = Vec::with_capacity(n + 1);
    for (i, f) in map.forms.iter().enumerate() {
        gens.push(graph.var(s + i).sub(&embed(f))?);
    }
    if let Some(r) = &map.relation {
        gens.push(embed(r));
    }
    let graph_ideal = Ideal::new(graph, gens)?;
    let mut weights = vec![1; s];
    weights.extend(std::iter::repeat_n(map.degree, n));
    let gopts = GroebnerOptions {
        weights: Some(weights),
        degree_bound: opts.max_target_degree.map(|k| k * map.degree),
        parallelism: opts.groebner.parallelism,
    };
    let gb = groebner::buchberger_with(&graph_ideal, &gopts)?;
    let target = map.target_ring();
    let eliminated: Vec<Polynomial> = gb
        .elements()
        .iter()
        .filter(|p| p.terms().iter().all(|t| t.0.free_of_leading(s)))
        .map(|p| Polynomial::from_terms(target, p.terms().iter().map(|&(m, c)| (m.slice_vars(s, n), c)).collect()))
        .collect();
    if let Some(bad) = eliminated.iter().find(|p| !p.is_homogeneous()) {
        return Err(Error::InvalidConfig(format!("elimination produced an inhomogeneous equation: {bad}")));
    }
    let eliminated_basis_len = eliminated.len();
    let ideal = minimal_generators(&Ideal::new(target, eliminated)?)?;
    Ok(FullImage { ideal, eliminated_basis_len, stats: gb.stats().clone(), truncated_at: opts.max_target_degree })
}

/// Number of minimal generators in each degree.
pub type GeneratorProfile = BTreeMap<u32, usize>;

fn rows_of(polys: &[Polynomial], basis: &[Monomial]) -> Vec<Vec<FieldElement>> {
    polys.iter().map(|p| p.coefficients_in(basis)).collect()
}

/// Degree-`d` multiples `m * g` of the given homogeneous forms.
fn multiples(gens: &[Polynomial], d: u32, ring: Ring) -> Vec<Polynomial> {
    let mut out = Vec::new();
    for g in gens {
        let Some(e) = g.degree() else { continue };
        if e > d {
            continue;
        }
        for m in graded_basis(d - e, ring.nvars(), ring.order()) {
            out.push(g.mul_term(FieldElement::ONE, &m));
        }
    }
    out
}

fn row_space(field: PrimeField, basis: &[Monomial], polys: &[Polynomial]) -> Result<RowSpace> {
    Ok(RowSpace::new(&Matrix::from_rows(field, basis.len(), &rows_of(polys, basis))?))
}

/// Canonical minimal generating set: in each degree, the reduced echelon
/// complement of the span of lower-degree generators times monomials.
pub fn minimal_generators(ideal: &Ideal) -> Result<Ideal> {
    let ring = ideal.ring();
    if !ideal.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let field = ring.field();
    let mut degrees: Vec<u32> = ideal.generators().iter().filter_map(|g| g.degree()).collect();
    degrees.sort_unstable();
    degrees.dedup();
    let mut chosen: Vec<Polynomial> = Vec::new();
    for d in degrees {
        let basis = graded_basis(d, ring.nvars(), ring.order());
        let lower = row_space(field, &basis, &multiples(&chosen, d, ring))?;
        let whole = row_space(field, &basis, &multiples(ideal.generators(), d, ring))?;
        let mut fresh = Vec::new();
        for i in 0..whole.dim() {
            let mut v = whole.basis().row(i);
            lower.reduce(&mut v);
            fresh.push(v);
        }
        let complement = RowSpace::new(&Matrix::from_rows(field, basis.len(), &fresh)?);
        for i in 0..complement.dim() {
            chosen.push(Polynomial::from_coefficients(ring, &basis, &complement.basis().row(i)));
        }
    }
    Ideal::new(ring, chosen)
}

/// Generator count per degree: `dim I_d` minus the span of lower-degree
/// generators times forms, for each degree carrying a generator.
pub fn minimal_generators_by_degree(ideal: &Ideal) -> Result<GeneratorProfile> {
    let ring = ideal.ring();
    if !ideal.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let mut degrees: Vec<u32> = ideal.generators().iter().filter_map(|g| g.degree()).collect();
    degrees.sort_unstable();
    degrees.dedup();
    let mut profile = GeneratorProfile::new();
    for d in degrees {
        let basis = graded_basis(d, ring.nvars(), ring.order());
        let below: Vec<Polynomial> = ideal.generators().iter().filter(|g| g.degree() < Some(d)).cloned().collect();
        let whole = degree_span_dim(ring, &basis, &multiples(ideal.generators(), d, ring))?;
        let lower = degree_span_dim(ring, &basis, &multiples(&below, d, ring))?;
        if whole > lower {
            profile.insert(d, whole - lower);
        }
    }
    Ok(profile)
}

fn degree_span_dim(ring: Ring, basis: &[Monomial], polys: &[Polynomial]) -> Result<usize> {
    if polys.is_empty() {
        return Ok(0);
    }
    Ok(Matrix::from_rows(ring.field(), basis.len(), &rows_of(polys, basis))?.rank())
}

/// Canonical (reduced echelon) basis of the degree-`k` piece of a homogeneous ideal.
pub fn degree_piece(ideal: &Ideal, k: u32) -> Result<Vec<Polynomial>> {
    let ring = ideal.ring();
    let basis = graded_basis(k, ring.nvars(), ring.order());
    let rs = row_space(ring.field(), &basis, &multiples(ideal.generators(), k, ring))?;
    Ok((0..rs.dim()).map(|i| Polynomial::from_coefficients(ring, &basis, &rs.basis().row(i))).collect())
}

/// Degree-2 part of the ideal as a basis of quadrics.
pub fn quadric_part(ideal: &Ideal) -> Result<Vec<Polynomial>> {
    degree_piece(ideal, 2)
}

/// `dim I_3 - dim (I_2 * linear forms)`: cubics missing from the ideal
/// generated by the quadrics.
pub fn degree3_defect(ideal: &Ideal) -> Result<usize> {
    let ring = ideal.ring();
    let basis = graded_basis(3, ring.nvars(), ring.order());
    let whole = degree_span_dim(ring, &basis, &multiples(ideal.generators(), 3, ring))?;
    let from_quadrics = degree_span_dim(ring, &basis, &multiples(&quadric_part(ideal)?, 3, ring))?;
    Ok(whole - from_quadrics)
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SchemeInvariants {
    pub dimension: i32,
    pub degree: i64,
    pub genus: Option<i64>,
    pub series: HilbertSeries,
    pub basis_len: usize,
}

impl SchemeInvariants {
    fn from_ideal(ideal: &Ideal) -> (Self, GroebnerStats) {
        let gb = groebner::buchberger(ideal);
        let series = hilbert::hilbert_series_monomial(&groebner::leading_term_ideal(&gb), ideal.ring().nvars());
        let HilbertPolynomialInfo { dimension, degree, genus, .. } = hilbert::hilbert_polynomial(&series);
        (SchemeInvariants { dimension, degree, genus, series, basis_len: gb.len() }, gb.stats().clone())
    }

    pub fn triple(&self) -> (i32, i64, Option<i64>) {
        (self.dimension, self.degree, self.genus)
    }
}

/// Hilbert-polynomial invariants of the scheme cut out by the quadrics in `ideal`.
pub fn quadric_subscheme_invariants(ideal: &Ideal) -> Result<SchemeInvariants> {
    quadric_subscheme_with_stats(ideal).map(|(inv, _)| inv)
}

pub fn quadric_subscheme_with_stats(ideal: &Ideal) -> Result<(SchemeInvariants, GroebnerStats)> {
    let q = Ideal::new(ideal.ring(), quadric_part(ideal)?)?;
    Ok(SchemeInvariants::from_ideal(&q))
}

/// Hilbert-polynomial invariants of `V(ideal)`.
pub fn scheme_invariants(ideal: &Ideal) -> SchemeInvariants {
    SchemeInvariants::from_ideal(ideal).0
}

/// True iff the quadrics in `ideal` cut out a scheme with the same
/// dimension, degree and genus as `ideal` itself.
pub fn scheme_cut_out_check(ideal: &Ideal) -> Result<bool> {
    let curve = scheme_invariants(ideal);
    let quad = quadric_subscheme_invariants(ideal)?;
    Ok(curve.triple() == quad.triple())
}

/// Dense arithmetic in `F_p[x0,x1,x2]_D / (F)`, for sampling high-degree
/// pieces of the image coordinate ring. Monomials `x0^a x1^b x2^c` of degree
/// `D` are indexed by `s(s+1)/2 + c` with `s = b + c`, which lists them in
/// lex-descending order; reduction is by the lex leading term of `F`.
struct PlaneQuotient {
    field: PrimeField,
    relation: Vec<([u32; 3], u32)>,
    lead: [u32; 3],
}

fn plane_index(e: [u32; 3]) -> usize {
    let s = (e[1] + e[2]) as usize;
    s * (s + 1) / 2 + e[2] as usize
}

fn plane_exponents(d: u32, idx: usize) -> [u32; 3] {
    let mut s = 0usize;
    while (s + 1) * (s + 2) / 2 <= idx {
        s += 1;
    }
    let c = idx - s * (s + 1) / 2;
    [d - s as u32, (s - c) as u32, c as u32]
}

impl PlaneQuotient {
    fn new(relation: &Polynomial) -> Self {
        let field = relation.ring().field();
        let ex = |m: &Monomial| [m.exponent(0), m.exponent(1), m.exponent(2)];
        let mut terms: Vec<([u32; 3], u32)> = relation.terms().iter().map(|(m, c)| (ex(m), c.value())).collect();
        terms.sort_by_key(|t| std::cmp::Reverse(t.0));
        let inv = field.inv(field.from_u64(terms[0].1 as u64)).expect("nonzero leading coefficient");
        let relation: Vec<([u32; 3], u32)> =
            terms.iter().map(|&(e, c)| (e, field.mul(field.from_u64(c as u64), inv).value())).collect();
        PlaneQuotient { field, lead: relation[0].0, relation }
    }

    fn dense(&self, f: &Polynomial) -> Vec<u32> {
        let d = f.degree().unwrap_or(0);
        let mut v = vec![0u32; ((d + 1) * (d + 2) / 2) as usize];
        for (m, c) in f.terms() {
            v[plane_index([m.exponent(0), m.exponent(1), m.exponent(2)])] = c.value();
        }
        v
    }

    fn reduce(&self, v: &mut [u32], d: u32) {
        let f = self.field;
        let p = f.characteristic() as u64;
        for idx in 0..v.len() {
            let c = v[idx];
            if c == 0 {
                continue;
            }
            let e = plane_exponents(d, idx);
            if (0..3).any(|i| e[i] < self.lead[i]) {
                continue;
            }
            let shift = [e[0] - self.lead[0], e[1] - self.lead[1], e[2] - self.lead[2]];
            let factor = p - c as u64;
            for &(t, a) in &self.relation {
                let j = plane_index([t[0] + shift[0], t[1] + shift[1], t[2] + shift[2]]);
                v[j] = f.reduce(v[j] as u64 + factor * a as u64);
            }
            debug_assert_eq!(v[idx], 0);
        }
    }

    fn mul(&self, a: &[u32], da: u32, b: &[([u32; 3], u32)]) -> Vec<u32> {
        let db: u32 = b.first().map_or(0, |t| t.0.iter().sum());
        let d = da + db;
        let mut out = vec![0u32; ((d + 1) * (d + 2) / 2) as usize];
        for (idx, &c) in a.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let e = plane_exponents(da, idx);
            for &(t, x) in b {
                let j = plane_index([e[0] + t[0], e[1] + t[1], e[2] + t[2]]);
                out[j] = self.field.reduce(out[j] as u64 + c as u64 * x as u64);
            }
        }
        out
    }

    fn standard_part(&self, v: &[u32], d: u32) -> Vec<FieldElement> {
        v.iter()
            .enumerate()
            .filter(|(idx, _)| {
                let e = plane_exponents(d, *idx);
                (0..3).any(|i| e[i] < self.lead[i])
            })
            .map(|(_, &c)| self.field.from_u64(c as u64))
            .collect()
    }
}

/// Per-degree evidence that a candidate ideal `J` of a plane-curve image
/// agrees with the true image ideal.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct WindowEntry {
    pub degree: u32,
    /// `dim (S/J)_n` from the Hilbert series of `J`: an upper bound for the image.
    pub candidate: i64,
    /// Rank of sampled image elements: a lower bound for the image.
    pub sampled: i64,
}

impl WindowEntry {
    pub fn agrees(&self) -> bool {
        self.candidate == self.sampled
    }
}

/// Certifies `J_n = I_n` for `n <= max_degree`, where `I` is the image ideal
/// and `J ⊆ I` has Hilbert series `series`. Since `dim (S/J)_n >= dim (S/I)_n`,
/// it suffices that enough random products of `n` generic linear
/// combinations of the forms span a space of dimension `dim (S/J)_n`.
pub fn hilbert_window<R: Rng + ?Sized>(
    map: &ProjectiveMap,
    series: &HilbertSeries,
    max_degree: u32,
    rng: &mut R,
) -> Result<Vec<WindowEntry>> {
    let source = map.source_ring();
    if source.nvars() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, found: source.nvars() });
    }
    let relation = map.relation().ok_or(Error::InvalidConfig("window sampling needs a plane curve relation".into()))?;
    let q = PlaneQuotient::new(relation);
    let field = source.field();
    let d = map.degree;
    let sparse = |f: &Polynomial| -> Vec<([u32; 3], u32)> {
        f.terms().iter().map(|(m, c)| ([m.exponent(0), m.exponent(1), m.exponent(2)], c.value())).collect()
    };
    let random_form = |rng: &mut R| -> Vec<([u32; 3], u32)> {
        let mut acc = Polynomial::zero(source);
        for f in &map.forms {
            acc = acc.add(&f.scale(field.random(rng))).expect("same ring");
        }
        sparse(&acc)
    };
    let mut samples: Vec<Vec<u32>> = Vec::new();
    let mut out = Vec::new();
    let one = Polynomial::constant(source, FieldElement::ONE);
    for n in 1..=max_degree {
        let candidate = hilbert::series_to_function(series, n as u64);
        let want = candidate.max(0) as usize + 2;
        for s in &mut samples {
            let mut next = q.mul(s, (n - 1) * d, &random_form(rng));
            q.reduce(&mut next, n * d);
            *s = next;
        }
        while samples.len() < want {
            let mut s = q.dense(&one);
            for j in 1..=n {
                s = q.mul(&s, (j - 1) * d, &random_form(rng));
                q.reduce(&mut s, j * d);
            }
            samples.push(s);
        }
        let rows: Vec<Vec<FieldElement>> = samples.iter().map(|s| q.standard_part(s, n * d)).collect();
        let cols = rows.first().map_or(0, |r| r.len());
        let sampled = Matrix::from_rows(field, cols, &rows)?.rank() as i64;
        out.push(WindowEntry { degree: n, candidate, sampled });
    }
    Ok(out)
}

/// `binomial(n + v - 1, v - 1)`, the number of degree-`n` monomials in `v` variables.
pub fn monomial_count(n: u32, v: usize) -> u64 {
    binomial(n as u64 + v as u64 - 1, v as u64 - 1)
}
