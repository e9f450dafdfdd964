//! Buchberger's algorithm with the Gebauer–Möller pair update.
//!
//! Pairs are selected by sugar degree. All pairs of the current minimal sugar
//! are reduced against a snapshot of the basis (in parallel when enabled), then
//! folded in one by one in a fixed order, so the run is deterministic for any
//! thread count. For ideals homogeneous under a weight vector the run can be
//! truncated at a degree bound; the result is then a Gröbner basis up to that
//! degree.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::FieldElement;
use crate::error::{Error, Result};
use crate::parallel::{self, Parallelism};
use crate::poly::{Monomial, MonomialOrder, Polynomial, Ring};

/// A finitely generated ideal; generators are nonzero, monic and distinct.
#[derive(Clone, PartialEq, Eq)]
pub struct Ideal {
    ring: Ring,
    generators: Vec<Polynomial>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.generators.iter()).finish()
    }
}

impl Ideal {
    pub fn new(ring: Ring, generators: impl IntoIterator<Item = Polynomial>) -> Result<Self> {
        let mut gens: Vec<Polynomial> = Vec::new();
        for g in generators {
            if g.ring() != ring {
                return Err(Error::RingMismatch);
            }
            if g.is_zero() {
                continue;
            }
            let g = g.make_monic();
            if !gens.contains(&g) {
                gens.push(g);
            }
        }
        Ok(Ideal { ring, generators: gens })
    }

    pub fn zero(ring: Ring) -> Self {
        Ideal { ring, generators: Vec::new() }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(|g| g.is_homogeneous())
    }

    /// Generators of total degree exactly `k`.
    pub fn generators_of_degree(&self, k: u32) -> Vec<Polynomial> {
        self.generators.iter().filter(|g| g.degree() == Some(k)).cloned().collect()
    }

    /// The same ideal viewed in a ring with a different monomial order.
    pub fn with_order(&self, order: MonomialOrder) -> Ideal {
        let ring = self.ring.with_order(order);
        Ideal { ring, generators: self.generators.iter().map(|g| g.reorder(ring).make_monic()).collect() }
    }

    /// Writes the ideal file format: `ring <nvars> <p>` then one polynomial per line.
    pub fn to_text(&self) -> String {
        let mut s = format!("ring {} {}\n", self.ring.nvars(), self.ring.field().characteristic());
        for g in &self.generators {
            s.push_str(&g.to_string());
            s.push('\n');
        }
        s
    }

    /// Parses the ideal file format. Blank lines and lines starting with `#`
    /// are skipped. Variables are `x0..` and/or `y0..`; when both occur the
    /// `x` variables come first.
    pub fn parse_text(text: &str) -> Result<Ideal> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(Error::Parse { line: 1, message: "missing `ring` header".into() })?;
        let perr = |line: usize, message: String| Error::Parse { line, message };
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 3 || parts[0] != "ring" {
            return Err(perr(hline, "expected `ring <nvars> <p>`".into()));
        }
        let nvars: usize = parts[1].parse().map_err(|_| perr(hline, format!("bad variable count `{}`", parts[1])))?;
        let p: u64 = parts[2].parse().map_err(|_| perr(hline, format!("bad prime `{}`", parts[2])))?;
        let field = crate::arith::PrimeField::new(p).map_err(|e| perr(hline, e.to_string()))?;
        let body: Vec<(usize, &str)> = lines.collect();
        let x_count = infer_x_count(nvars, body.iter().map(|(_, l)| *l)).map_err(|m| perr(hline, m))?;
        let ring = Ring::with_names(field, nvars, MonomialOrder::Grevlex, x_count).map_err(|e| perr(hline, e.to_string()))?;
        let mut gens = Vec::with_capacity(body.len());
        for (line, text) in body {
            gens.push(Polynomial::parse(ring, text).map_err(|m| perr(line, m))?);
        }
        Ideal::new(ring, gens)
    }
}

fn infer_x_count<'a>(nvars: usize, lines: impl Iterator<Item = &'a str>) -> std::result::Result<usize, String> {
    let mut max_x: Option<usize> = None;
    let mut any_y = false;
    for line in lines {
        let bytes = line.as_bytes();
        for (i, &b) in bytes.iter().enumerate() {
            if b == b'x' || b == b'y' {
                let digits: String = line[i + 1..].chars().take_while(|c| c.is_ascii_digit()).collect();
                if let Ok(idx) = digits.parse::<usize>() {
                    if b == b'x' {
                        max_x = Some(max_x.map_or(idx, |m: usize| m.max(idx)));
                    } else {
                        any_y = true;
                    }
                }
            }
        }
    }
    Ok(match (max_x, any_y) {
        (_, false) => nvars,
        (None, true) => 0,
        (Some(m), true) if m < nvars => m + 1,
        (Some(_), true) => return Err("too many x variables for the declared ring".into()),
    })
}

/// Counters describing one Buchberger run.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroebnerStats {
    pub pairs_created: usize,
    pub pairs_reduced: usize,
    pub zero_reductions: usize,
    pub pruned_product: usize,
    pub pruned_chain: usize,
    pub max_sugar: u32,
}

#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Ring,
    elements: Vec<Polynomial>,
    reduced: bool,
    truncated_at: Option<u32>,
    stats: GroebnerStats,
}

impl GroebnerBasis {
    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.ring.order()
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// Degree bound the basis is valid up to, for truncated runs.
    pub fn truncated_at(&self) -> Option<u32> {
        self.truncated_at
    }

    pub fn stats(&self) -> &GroebnerStats {
        &self.stats
    }

    pub fn into_ideal(self) -> Ideal {
        Ideal { ring: self.ring, generators: self.elements }
    }
}

#[derive(Clone, Debug, Default)]
pub struct GroebnerOptions {
    /// Grading used for sugar and truncation; all ones when `None`.
    pub weights: Option<Vec<u32>>,
    /// Stop after all pairs of (weighted) degree up to this bound.
    pub degree_bound: Option<u32>,
    pub parallelism: Parallelism,
}

/// Variables occurring in a monomial, as a bitmask, for quick non-divisibility tests.
#[inline]
fn support_mask(m: &Monomial) -> u32 {
    m.exponents().iter().enumerate().fold(0, |acc, (i, &e)| if e > 0 { acc | 1 << i } else { acc })
}

struct Reducer<'a> {
    lm: Monomial,
    mask: u32,
    poly: &'a Polynomial,
}

fn reducers<'a>(g: impl IntoIterator<Item = &'a Polynomial>) -> Vec<Reducer<'a>> {
    g.into_iter()
        .filter(|p| !p.is_zero())
        .map(|p| {
            let lm = p.leading_monomial().unwrap();
            Reducer { lm, mask: support_mask(&lm), poly: p }
        })
        .collect()
}

#[inline]
fn find_reducer<'a, 'b>(rs: &'b [Reducer<'a>], m: &Monomial) -> Option<&'b Reducer<'a>> {
    let mask = support_mask(m);
    rs.iter().find(|r| r.mask & !mask == 0 && r.lm.divides(m))
}

/// Full reduction of `f` by `rs`; no term of the result is divisible by a
/// leading monomial of `rs`.
fn reduce_full(f: &Polynomial, rs: &[Reducer<'_>]) -> Polynomial {
    let ring = f.ring();
    let field = ring.field();
    let mut work: Vec<(Monomial, FieldElement)> = f.terms().to_vec();
    let mut pos = 0;
    let mut rem = Vec::new();
    while pos < work.len() {
        let (m, c) = work[pos];
        match find_reducer(rs, &m) {
            Some(r) => {
                let q = r.lm.quotient_of(&m).unwrap();
                let lc = r.poly.leading_coefficient().unwrap();
                let factor = field.neg(field.div(c, lc).unwrap());
                let tail = Polynomial::from_sorted_terms(ring, work.split_off(pos));
                work = tail.add_scaled_shifted(factor, &q, r.poly).into_terms();
                pos = 0;
            }
            None => {
                rem.push((m, c));
                pos += 1;
                if pos > 64 && pos * 2 > work.len() {
                    work.drain(..pos);
                    pos = 0;
                }
            }
        }
    }
    Polynomial::from_sorted_terms(ring, rem)
}

/// Remainder of multivariate division of `f` by `g` (full reduction).
pub fn normal_form(f: &Polynomial, g: &[Polynomial]) -> Polynomial {
    reduce_full(f, &reducers(g))
}

pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let field = f.ring().field();
    let (lf, cf) = *f.leading_term().expect("nonzero");
    let (lg, cg) = *g.leading_term().expect("nonzero");
    let l = lf.lcm(&lg);
    let a = f.mul_term(field.inv(cf).unwrap(), &lf.quotient_of(&l).unwrap());
    a.add_scaled_shifted(field.neg(field.inv(cg).unwrap()), &lg.quotient_of(&l).unwrap(), g)
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct Engine<'o> {
    ring: Ring,
    weights: Vec<u32>,
    opts: &'o GroebnerOptions,
    basis: Vec<Polynomial>,
    sugar: Vec<u32>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    stats: GroebnerStats,
}

impl Engine<'_> {
    fn poly_sugar(&self, f: &Polynomial) -> u32 {
        f.terms().iter().map(|t| t.0.weighted_degree(&self.weights)).max().unwrap_or(0)
    }

    fn active_reducers(&self) -> Vec<Reducer<'_>> {
        reducers(self.basis.iter().zip(&self.active).filter(|(_, &a)| a).map(|(p, _)| p))
    }

    /// Inserts a monic polynomial already reduced against the active basis.
    fn insert(&mut self, h: Polynomial, sugar: u32) {
        let hi = self.basis.len();
        let lh = h.leading_monomial().unwrap();
        self.basis.push(h);
        self.sugar.push(sugar);
        self.active.push(true);

        let cands: Vec<Pair> = (0..hi)
            .filter(|&g| self.active[g])
            .map(|g| {
                let lg = self.basis[g].leading_monomial().unwrap();
                let lcm = lh.lcm(&lg);
                let s = (self.sugar[g] + lg.quotient_of(&lcm).unwrap().weighted_degree(&self.weights))
                    .max(sugar + lh.quotient_of(&lcm).unwrap().weighted_degree(&self.weights));
                Pair { i: g, j: hi, lcm, sugar: s }
            })
            .collect();
        self.stats.pairs_created += cands.len();

        let mut kept: Vec<usize> = Vec::new();
        for a in 0..cands.len() {
            let lg = self.basis[cands[a].i].leading_monomial().unwrap();
            let coprime = lh.is_coprime(&lg);
            let dominated = !coprime
                && (cands[a + 1..].iter().any(|b| b.lcm.divides(&cands[a].lcm))
                    || kept.iter().any(|&b| cands[b].lcm.divides(&cands[a].lcm)));
            if dominated {
                self.stats.pruned_chain += 1;
            } else {
                kept.push(a);
            }
        }

        let basis = &self.basis;
        let before = self.pairs.len();
        self.pairs.retain(|p| {
            let drop = lh.divides(&p.lcm)
                && basis[p.i].leading_monomial().unwrap().lcm(&lh) != p.lcm
                && basis[p.j].leading_monomial().unwrap().lcm(&lh) != p.lcm;
            !drop
        });
        self.stats.pruned_chain += before - self.pairs.len();

        for a in kept {
            let lg = self.basis[cands[a].i].leading_monomial().unwrap();
            if lh.is_coprime(&lg) {
                self.stats.pruned_product += 1;
            } else {
                self.pairs.push(cands[a].clone());
            }
        }

        for g in 0..hi {
            if self.active[g] && lh.divides(&self.basis[g].leading_monomial().unwrap()) {
                self.active[g] = false;
            }
        }
    }

    fn run(&mut self, inputs: Vec<Polynomial>) {
        let mut pending: Vec<(u32, Polynomial)> = inputs.into_iter().map(|f| (self.poly_sugar(&f), f)).collect();
        let bound = self.opts.degree_bound;
        if let Some(b) = bound {
            pending.retain(|(s, _)| *s <= b);
        }
        loop {
            if let Some(b) = bound {
                self.pairs.retain(|p| p.sugar <= b);
            }
            let next = self.pairs.iter().map(|p| p.sugar).chain(pending.iter().map(|(s, _)| *s)).min();
            let Some(deg) = next else { break };
            self.stats.max_sugar = self.stats.max_sugar.max(deg);

            let ord = self.ring.order();
            let mut batch: Vec<Pair> = Vec::new();
            self.pairs.retain(|p| {
                if p.sugar == deg {
                    batch.push(p.clone());
                    false
                } else {
                    true
                }
            });
            batch.sort_by(|a, b| ord.cmp(&a.lcm, &b.lcm).then(a.i.cmp(&b.i)).then(a.j.cmp(&b.j)));
            let mut inputs_now = Vec::new();
            pending.retain(|(s, f)| {
                if *s == deg {
                    inputs_now.push(f.clone());
                    false
                } else {
                    true
                }
            });

            let mut work: Vec<Polynomial> = inputs_now;
            work.extend(batch.iter().map(|p| s_polynomial(&self.basis[p.i], &self.basis[p.j])));
            self.stats.pairs_reduced += batch.len();

            let reduced = {
                let rs = self.active_reducers();
                parallel::map(&work, self.opts.parallelism, |f| reduce_full(f, &rs))
            };
            for r in reduced {
                if r.is_zero() {
                    self.stats.zero_reductions += 1;
                    continue;
                }
                let h = {
                    let rs = self.active_reducers();
                    reduce_full(&r, &rs)
                };
                if h.is_zero() {
                    self.stats.zero_reductions += 1;
                    continue;
                }
                let h = h.make_monic();
                let s = deg.max(self.poly_sugar(&h));
                self.insert(h, s);
            }
        }
    }

    /// Interreduces the active elements into the reduced basis, sorted by
    /// ascending leading monomial.
    fn finish(self) -> (Vec<Polynomial>, GroebnerStats) {
        let ord = self.ring.order();
        let mut min: Vec<Polynomial> =
            self.basis.into_iter().zip(self.active).filter(|(_, a)| *a).map(|(p, _)| p).collect();
        min.sort_by(|a, b| ord.cmp(&a.leading_monomial().unwrap(), &b.leading_monomial().unwrap()));
        let idx: Vec<usize> = (0..min.len()).collect();
        let par = self.opts.parallelism;
        let out = parallel::map(&idx, par, |&k| {
            let f = &min[k];
            let rs = reducers(min.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, p)| p));
            let (lm, lc) = f.terms()[0];
            let tail = Polynomial::from_sorted_terms(f.ring(), f.terms()[1..].to_vec());
            let mut terms = vec![(lm, lc)];
            terms.extend_from_slice(reduce_full(&tail, &rs).terms());
            Polynomial::from_sorted_terms(f.ring(), terms).make_monic()
        });
        (out, self.stats)
    }
}

/// Reduced Gröbner basis in the ideal's ring order.
pub fn buchberger(ideal: &Ideal) -> GroebnerBasis {
    buchberger_with(ideal, &GroebnerOptions::default()).expect("untruncated runs cannot fail")
}

pub fn buchberger_with(ideal: &Ideal, opts: &GroebnerOptions) -> Result<GroebnerBasis> {
    let ring = ideal.ring();
    let weights = opts.weights.clone().unwrap_or_else(|| vec![1; ring.nvars()]);
    if weights.len() != ring.nvars() {
        return Err(Error::DimensionMismatch { expected: ring.nvars(), found: weights.len() });
    }
    if opts.degree_bound.is_some() && ideal.generators().iter().any(|g| g.weighted_degree(&weights).is_none()) {
        return Err(Error::InhomogeneousTruncation);
    }
    let mut engine = Engine {
        ring,
        weights,
        opts,
        basis: Vec::new(),
        sugar: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        stats: GroebnerStats::default(),
    };
    engine.run(ideal.generators().to_vec());
    let (elements, stats) = engine.finish();
    Ok(GroebnerBasis { ring, elements, reduced: true, truncated_at: opts.degree_bound, stats })
}

/// Minimal monomial generators of the initial ideal.
pub fn leading_term_ideal(g: &GroebnerBasis) -> Vec<Monomial> {
    minimalize_monomials(g.elements().iter().filter_map(|p| p.leading_monomial()).collect())
}

/// Removes monomials divisible by another in the list, and duplicates.
pub fn minimalize_monomials(mut ms: Vec<Monomial>) -> Vec<Monomial> {
    ms.sort_by_key(|m| m.degree());
    ms.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for m in ms {
        if !out.iter().any(|o| o.divides(&m)) {
            out.push(m);
        }
    }
    out
}

pub fn ideal_membership(f: &Polynomial, g: &GroebnerBasis) -> bool {
    normal_form(f, g.elements()).is_zero()
}

/// Checks that every S-polynomial of `elements` reduces to zero.
pub fn satisfies_buchberger_criterion(elements: &[Polynomial]) -> bool {
    let rs = reducers(elements);
    (0..elements.len()).all(|i| {
        (i + 1..elements.len()).all(|j| reduce_full(&s_polynomial(&elements[i], &elements[j]), &rs).is_zero())
    })
}

/// Elimination ideal `I ∩ F_p[trailing variables]`, the first `k` variables removed.
///
/// The result lives in a ring with the remaining `nvars - k` variables under grevlex.
pub fn eliminate(ideal: &Ideal, k: usize) -> Result<Ideal> {
    eliminate_with(ideal, k, &GroebnerOptions::default())
}

/// [`eliminate`] with explicit options; with a degree bound only the part of
/// the elimination ideal up to that (weighted) degree is guaranteed.
pub fn eliminate_with(ideal: &Ideal, k: usize, opts: &GroebnerOptions) -> Result<Ideal> {
    let ring = ideal.ring();
    if k > ring.nvars() {
        return Err(Error::DimensionMismatch { expected: ring.nvars(), found: k });
    }
    let block = ideal.with_order(MonomialOrder::Block { split: k });
    let gb = buchberger_with(&block, opts)?;
    let n = ring.nvars() - k;
    if n == 0 {
        return Ok(Ideal::zero(ring));
    }
    let target = Ring::with_names(ring.field(), n, MonomialOrder::Grevlex, ring.x_count().saturating_sub(k))?;
    let gens = gb
        .elements()
        .iter()
        .filter(|p| p.terms().iter().all(|t| t.0.free_of_leading(k)))
        .map(|p| {
            let terms = p.terms().iter().map(|&(m, c)| (m.slice_vars(k, n), c)).collect();
            Polynomial::from_terms(target, terms)
        });
    Ideal::new(target, gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::PrimeField;

    fn ring(n: usize, x_count: usize) -> Ring {
        Ring::with_names(PrimeField::new(31991).unwrap(), n, MonomialOrder::Grevlex, x_count).unwrap()
    }

    fn ideal(r: Ring, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|g| Polynomial::parse(r, g).unwrap())).unwrap()
    }

    #[test]
    fn normal_form_examples() {
        let r = ring(3, 3);
        let g = Polynomial::parse(r, "x0^2 + x1*x2").unwrap();
        assert!(normal_form(&g, std::slice::from_ref(&g)).is_zero());
        let f = Polynomial::parse(r, "x0*x1 + 2").unwrap();
        assert_eq!(normal_form(&f, &[]), f);
        // remainder has no term divisible by x0^2
        let h = Polynomial::parse(r, "x0^3 + x0*x1").unwrap();
        assert_eq!(normal_form(&h, &[g]), Polynomial::parse(r, "-x0*x1*x2 + x0*x1").unwrap());
    }

    #[test]
    fn principal_ideal_basis() {
        let r = ring(3, 3);
        let gb = buchberger(&ideal(r, &["x0"]));
        assert_eq!(gb.elements(), &[r.var(0)]);
    }

    #[test]
    fn twisted_cubic_quadrics_are_a_basis() {
        let r = ring(4, 0);
        let i = ideal(r, &["y0*y2 - y1^2", "y1*y3 - y2^2", "y0*y3 - y1*y2"]);
        let gb = buchberger(&i);
        assert_eq!(gb.len(), 3);
        for g in i.generators() {
            assert!(gb.elements().contains(g), "{g} missing");
        }
        assert!(satisfies_buchberger_criterion(gb.elements()));
        assert!(!ideal_membership(&Polynomial::constant(r, FieldElement::ONE), &gb));
    }

    #[test]
    fn monomial_ideal_is_its_own_initial_ideal() {
        let r = ring(3, 3);
        let gb = buchberger(&ideal(r, &["x0^2", "x0*x1"]));
        let lt = leading_term_ideal(&gb);
        assert_eq!(lt.len(), 2);
        assert!(lt.contains(&Monomial::new(&[2, 0, 0]).unwrap()));
        assert!(lt.contains(&Monomial::new(&[1, 1, 0]).unwrap()));
    }

    #[test]
    fn elimination_small_example() {
        let r = ring(4, 1);
        let i = ideal(r, &["x0*y0", "x0*y1", "x0 - y2"]);
        let e = eliminate(&i, 1).unwrap();
        let t = e.ring();
        let gb = buchberger(&e);
        assert!(ideal_membership(&Polynomial::parse(t, "y0*y2").unwrap(), &gb));
        assert!(ideal_membership(&Polynomial::parse(t, "y1*y2").unwrap(), &gb));
        assert!(!ideal_membership(&Polynomial::parse(t, "y2").unwrap(), &gb));
        assert!(eliminate(&Ideal::zero(r), 1).unwrap().is_zero());
    }

    #[test]
    fn elimination_of_single_linear_relation_is_zero() {
        let r = ring(2, 1);
        assert!(eliminate(&ideal(r, &["x0 - y0"]), 1).unwrap().is_zero());
    }

    #[test]
    fn truncation_rejects_inhomogeneous_input() {
        let r = ring(2, 2);
        let opts = GroebnerOptions { degree_bound: Some(3), ..Default::default() };
        assert_eq!(
            buchberger_with(&ideal(r, &["x0^2 + x1"]), &opts).unwrap_err(),
            Error::InhomogeneousTruncation
        );
    }

    #[test]
    fn ideal_file_round_trip_and_errors() {
        let text = "ring 4 31991\ny0*y2 - y1^2\n# comment\n\ny1*y3-y2^2\n";
        let i = Ideal::parse_text(text).unwrap();
        assert_eq!(i.generators().len(), 2);
        assert_eq!(Ideal::parse_text(&i.to_text()).unwrap(), i);
        match Ideal::parse_text("ring 2 31991\nx0+\nx1") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(Ideal::parse_text("rng 2 7"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(Ideal::parse_text("ring 2 8\nx0"), Err(Error::Parse { line: 1, .. })));
    }
}
