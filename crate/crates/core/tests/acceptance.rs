//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::collections::BTreeMap;
use std::time::Instant;

use curvecheck::arith::{FieldElement, Matrix, PrimeField};
use curvecheck::bounds;
use curvecheck::groebner::{self, Ideal};
use curvecheck::hilbert;
use curvecheck::image::{self, ProjectiveMap};
use curvecheck::pipeline::{run_verification, PipelineConfig, VerificationReport};
use curvecheck::poly::{Monomial, MonomialOrder, Polynomial, Ring};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn field() -> PrimeField {
    PrimeField::new(31991).unwrap()
}

fn rational_normal_curve(d: u32) -> ProjectiveMap {
    let r = Ring::new(field(), 2, MonomialOrder::Grevlex).unwrap();
    let forms = (0..=d)
        .map(|i| Polynomial::monomial(r, Monomial::new(&[d - i, i]).unwrap(), FieldElement::ONE))
        .collect();
    ProjectiveMap::new(forms, None).unwrap()
}

fn curve_ideal(report: &VerificationReport) -> Ideal {
    let mut text = format!("ring 8 {}\n", report.config.prime);
    for g in &report.observations.curve_ideal {
        text.push_str(g);
        text.push('\n');
    }
    Ideal::parse_text(&text).unwrap()
}

const SEEDS: [u64; 5] = [1, 2, 3, 4, 5];

fn criterion1(reports: &[VerificationReport]) -> Outcome {
    let mut timings = Vec::new();
    for r in reports {
        let seed = r.config.seed;
        let o = &r.observations;
        ensure(r.passed(), || format!("seed {seed}: verdict fail"))?;
        ensure(o.nonic_dimension == Some(4), || format!("seed {seed}: nonic dim {:?}", o.nonic_dimension))?;
        ensure(o.septic_dimension == Some(8), || format!("seed {seed}: |L| dim {:?}", o.septic_dimension))?;
        ensure(o.singular_degree == Some(19), || format!("seed {seed}: singular degree {:?}", o.singular_degree))?;
        let profile = BTreeMap::from([(2u32, 9usize), (3, 2)]);
        ensure(o.generator_profile.as_ref() == Some(&profile), || format!("seed {seed}: profile {:?}", o.generator_profile))?;
        ensure(o.hilbert_series.as_deref() == Some("(1 + 6t + 12t^2)/(1-t)^2"), || format!("seed {seed}: series {:?}", o.hilbert_series))?;
        ensure(o.curve_degree_genus == Some((19, 12)), || format!("seed {seed}: (d, g) {:?}", o.curve_degree_genus))?;
        ensure(o.quadric_scheme == Some((1, 19, 12)), || format!("seed {seed}: C~ {:?}", o.quadric_scheme))?;
        ensure(o.degree3_defect == Some(2), || format!("seed {seed}: defect {:?}", o.degree3_defect))?;
        let gb = r.timings.iter().find(|t| t.stage.starts_with("groebner")).ok_or("Gröbner timing missing")?;
        let total: u64 = r.timings.iter().filter(|t| !t.stage.starts_with("groebner")).map(|t| t.micros).sum();
        timings.push(format!("seed {seed}: groebner {:.1} ms, total {:.2} s", gb.micros as f64 / 1e3, total as f64 / 1e6));
    }
    Ok(timings.join("; "))
}

fn criterion2() -> Outcome {
    let t = Instant::now();
    let w = bounds::candidate_scan(3, 7);
    for win in &w[..3] {
        ensure(win.candidates.is_empty(), || format!("r={} not empty", win.r))?;
    }
    let six = &w[3];
    let esc = six.escape.as_ref().ok_or("r=6 has no escape check")?;
    ensure(six.candidates.is_empty() && esc.d == 15 && !esc.consistent, || format!("r=6: {six:?}"))?;
    ensure(w[4].candidates == [(12, 19), (13, 20)], || format!("r=7: {:?}", w[4].candidates))?;
    let el = t.elapsed();
    ensure(el.as_secs_f64() < 1.0, || format!("took {el:?}"))?;
    Ok(format!("r=5 empty, r=6 empty (d=15 forces genus {}), r=7 (12,19) (13,20); {el:?}", esc.forced_genus_display()))
}

fn criterion3(reports: &[VerificationReport]) -> Outcome {
    ensure(bounds::classical_bounds(12) == (20, 21), || format!("{:?}", bounds::classical_bounds(12)))?;
    ensure(bounds::acm_degree_bound(3) == 6, || "g=3".into())?;
    ensure(bounds::acm_degree_bound(12) == 18, || "g=12".into())?;
    ensure(bounds::isqrt_exact(25) == (5, true) && bounds::isqrt_exact(97) == (9, false), || "isqrt".into())?;
    for r in reports {
        let c = r.checks.iter().find(|c| c.name.contains("not sharp")).ok_or("annotation missing")?;
        ensure(c.observed == "19 < 21", || format!("annotation {}", c.observed))?;
    }
    Ok("classical_bounds(12) = (20, 21), report shows 19 < 21; acm bound 6 at g=3, 18 at g=12".into())
}

fn oracle(d: u32, quadrics: usize) -> Result<Ideal, String> {
    let map = rational_normal_curve(d);
    let full = image::image_ideal_full(&map).map_err(|e| e.to_string())?;
    let ideal = full.ideal;
    let profile = image::minimal_generators_by_degree(&ideal).map_err(|e| e.to_string())?;
    ensure(profile == BTreeMap::from([(2, quadrics)]), || format!("d={d}: profile {profile:?}"))?;
    let inv = image::scheme_invariants(&ideal);
    ensure(inv.triple() == (1, d as i64, Some(0)), || format!("d={d}: invariants {:?}", inv.triple()))?;
    let defect = image::degree3_defect(&ideal).map_err(|e| e.to_string())?;
    ensure(defect == 0, || format!("d={d}: defect {defect}"))?;
    for k in 1..=3 {
        let trunc = image::image_ideal_truncated(&map, k).map_err(|e| e.to_string())?;
        let piece = image::degree_piece(&ideal, k).map_err(|e| e.to_string())?;
        ensure(trunc == piece, || format!("d={d}: back-ends differ in degree {k}"))?;
    }
    for g in ideal.generators() {
        ensure(map.pullback(g).map_err(|e| e.to_string())?.is_zero(), || format!("d={d}: {g} does not vanish"))?;
    }
    Ok(ideal)
}

fn criterion4() -> Result<(String, Vec<Ideal>), String> {
    let cubic = oracle(3, 3)?;
    let quartic = oracle(4, 6)?;
    Ok(("twisted cubic {2:3} (3,0), quartic {2:6} (4,0), defect 0, kernels agree".into(), vec![cubic, quartic]))
}

fn criterion5(ideals: &[Ideal]) -> Outcome {
    for (i, ideal) in ideals.iter().enumerate() {
        let series = hilbert::hilbert_series_of_ideal(ideal);
        for n in 0..=6 {
            let rank = hilbert::hilbert_function_rank(ideal, n).map_err(|e| e.to_string())? as i64;
            let s = hilbert::series_to_function(&series, n as u64);
            ensure(rank == s, || format!("ideal {i}, n={n}: rank {rank} vs series {s}"))?;
        }
    }
    Ok(format!("{} ideals, n <= 6", ideals.len()))
}

fn random_matrix(f: PrimeField, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let rank = rng.random_range(0..=rows.min(cols));
    // product of random rows x rank and rank x cols factors, for varied rank
    let a: Vec<Vec<FieldElement>> = (0..rows).map(|_| (0..rank).map(|_| f.random(rng)).collect()).collect();
    let b: Vec<Vec<FieldElement>> = (0..rank).map(|_| (0..cols).map(|_| f.random(rng)).collect()).collect();
    let rows: Vec<Vec<FieldElement>> = a
        .iter()
        .map(|ar| {
            (0..cols)
                .map(|j| (0..rank).fold(FieldElement::ZERO, |acc, k| f.add(acc, f.mul(ar[k], b[k][j]))))
                .collect()
        })
        .collect();
    Matrix::from_rows(f, cols, &rows).unwrap()
}

fn random_poly(ring: Ring, max_deg: u32, terms: usize, rng: &mut ChaCha8Rng) -> Polynomial {
    let f = ring.field();
    let ts = (0..terms)
        .map(|_| {
            let d = rng.random_range(0..=max_deg);
            let basis = ring.graded_basis(d);
            (basis[rng.random_range(0..basis.len())], f.random_nonzero(rng))
        })
        .collect();
    Polynomial::from_terms(ring, ts)
}

fn criterion6(bases: &[Ideal]) -> Outcome {
    let t = Instant::now();
    let f = field();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..10_000 {
        let (a, b, c) = (f.random(&mut rng), f.random(&mut rng), f.random(&mut rng));
        ensure(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)), || "add assoc".into())?;
        ensure(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)), || "mul assoc".into())?;
        ensure(f.add(a, b) == f.add(b, a) && f.mul(a, b) == f.mul(b, a), || "commutativity".into())?;
        ensure(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)), || "distributivity".into())?;
        ensure(f.add(a, f.neg(a)).is_zero(), || "additive inverse".into())?;
        if !a.is_zero() {
            ensure(f.mul(a, f.inv(a).unwrap()) == FieldElement::ONE, || "inverse".into())?;
        }
    }

    for _ in 0..200 {
        let (r, c) = (rng.random_range(1..12), rng.random_range(1..12));
        let m = random_matrix(f, r, c, &mut rng);
        let (e, piv) = m.rref();
        ensure(e.rref().0 == e, || "rref not idempotent".into())?;
        let mut perm: Vec<usize> = (0..r).collect();
        perm.shuffle(&mut rng);
        let shuffled: Vec<Vec<FieldElement>> = perm.iter().map(|&i| m.row(i)).collect();
        let pm = Matrix::from_rows(f, c, &shuffled).unwrap();
        ensure(pm.rref().0 == e, || "rref depends on row order".into())?;
        ensure(m.rank() == piv.len(), || "rank".into())?;
        for v in m.kernel() {
            ensure(m.mul_vec(&v).unwrap().iter().all(|x| x.is_zero()), || "kernel vector".into())?;
        }
    }

    let ring = Ring::with_names(f, 4, MonomialOrder::Grevlex, 4).unwrap();
    let mut gbs: Vec<groebner::GroebnerBasis> = bases.iter().map(groebner::buchberger).collect();
    for _ in 0..20 {
        let gens: Vec<Polynomial> = (0..3).map(|_| random_poly(ring, 3, 3, &mut rng)).collect();
        gbs.push(groebner::buchberger(&Ideal::new(ring, gens).unwrap()));
    }
    for gb in &gbs {
        ensure(groebner::satisfies_buchberger_criterion(gb.elements()), || "S-pair certificate failed".into())?;
    }

    let samples_per_basis = 1000 / gbs.len() + 1;
    let mut checked = 0;
    for gb in &gbs {
        let r = gb.ring();
        let mut shuffled = gb.elements().to_vec();
        for _ in 0..samples_per_basis {
            let a = random_poly(r, 4, 5, &mut rng);
            let b = random_poly(r, 4, 5, &mut rng);
            let na = groebner::normal_form(&a, gb.elements());
            shuffled.shuffle(&mut rng);
            ensure(groebner::normal_form(&a, &shuffled) == na, || "normal form depends on divisor order".into())?;
            let nb = groebner::normal_form(&b, gb.elements());
            let nab = groebner::normal_form(&a.add(&b).unwrap(), gb.elements());
            ensure(nab == na.add(&nb).unwrap(), || "normal form not linear".into())?;
            checked += 1;
        }
    }

    let baseline = twisted_cubic_elimination(None)?;
    for i in 0..10 {
        let mut r = ChaCha8Rng::seed_from_u64(100 + i);
        ensure(twisted_cubic_elimination(Some(&mut r))? == baseline, || format!("regeneration {i} differs"))?;
    }
    let el = t.elapsed();
    ensure(el.as_secs() < 60, || format!("took {el:?}"))?;
    Ok(format!("10^4 field triples, 200 matrices, {} bases certified, {checked} normal forms, 10 regenerations; {el:?}", gbs.len()))
}

/// Reduced basis of the twisted cubic obtained by eliminating from a graph
/// ideal, optionally presented through random recombinations of generators.
fn twisted_cubic_elimination(rng: Option<&mut ChaCha8Rng>) -> Result<Vec<Polynomial>, String> {
    let f = field();
    let ring = Ring::with_names(f, 6, MonomialOrder::Grevlex, 2).unwrap();
    let p = |s: &str| Polynomial::parse(ring, s).unwrap();
    let mut gens = vec![p("y0 - x0^3"), p("y1 - x0^2*x1"), p("y2 - x0*x1^2"), p("y3 - x1^3")];
    if let Some(rng) = rng {
        // invertible unitriangular recombination plus redundant multiples
        let n = gens.len();
        let mut mixed = gens.clone();
        for (i, m) in mixed.iter_mut().enumerate() {
            for g in &gens[i + 1..] {
                *m = m.add(&g.scale(f.random(rng))).unwrap();
            }
        }
        for _ in 0..2 {
            let h = random_poly(ring, 2, 3, rng);
            let g = &gens[rng.random_range(0..n)];
            mixed.push(g.mul(&h).unwrap());
        }
        mixed.shuffle(rng);
        gens = mixed;
    }
    let ideal = Ideal::new(ring, gens).map_err(|e| e.to_string())?;
    let elim = groebner::eliminate(&ideal, 2).map_err(|e| e.to_string())?;
    Ok(groebner::buchberger(&elim).elements().to_vec())
}

fn criterion7() -> Outcome {
    let n = std::thread::available_parallelism().map_or(4, |n| n.get()).max(4);
    let cfg = PipelineConfig::with_seed(1);
    let mut hashes = Vec::new();
    for threads in [1, n] {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        let report = pool.install(|| run_verification(&cfg)).map_err(|e| e.to_string())?;
        ensure(report.report_hash == report.compute_hash(), || "stored hash stale".into())?;
        hashes.push(report.report_hash);
    }
    ensure(hashes[0] == hashes[1], || format!("{} vs {}", hashes[0], hashes[1]))?;
    Ok(format!("threads 1 and {n}: {}", &hashes[0][..16]))
}

fn main() {
    let mut lines = Vec::new();
    let mut record = |n: u32, name: &str, out: Outcome| {
        let line = match &out {
            Ok(detail) => format!("criterion {n} [PASS] {name}: {detail}"),
            Err(why) => format!("criterion {n} [FAIL] {name}: {why}"),
        };
        println!("{line}");
        lines.push(out.is_ok());
    };

    let reports: Vec<VerificationReport> = SEEDS
        .iter()
        .map(|&s| run_verification(&PipelineConfig::with_seed(s)).expect("valid configuration"))
        .collect();
    record(1, "counterexample replay over 5 seeds", criterion1(&reports));
    record(2, "bounds replay r = 3..7", criterion2());
    record(3, "closing bounds", criterion3(&reports));
    let (c4, oracles) = match criterion4() {
        Ok((msg, ideals)) => (Ok(msg), ideals),
        Err(e) => (Err(e), Vec::new()),
    };
    record(4, "oracle equivalence", c4);
    let mut ideals: Vec<Ideal> = reports.iter().map(curve_ideal).collect();
    ideals.extend(oracles.iter().cloned());
    record(5, "Hilbert function back-ends agree", criterion5(&ideals));
    record(6, "algebra property suites", criterion6(&ideals));
    record(7, "determinism across thread counts", criterion7());

    let failed = lines.iter().filter(|ok| !**ok).count();
    println!("acceptance: {} of {} criteria pass", lines.len() - failed, lines.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
