use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use curvecheck::arith::{FieldElement, Matrix, PrimeField};
use curvecheck::groebner::{self, GroebnerOptions, Ideal};
use curvecheck::image::{self, EliminationOptions, ProjectiveMap};
use curvecheck::parallel::Parallelism;
use curvecheck::poly::{Monomial, MonomialOrder, Polynomial, Ring};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const MODES: [(&str, Parallelism); 2] = [("sequential", Parallelism::Sequential), ("parallel", Parallelism::Parallel)];

fn field() -> PrimeField {
    PrimeField::new(31991).unwrap()
}

fn random_matrix(n: usize) -> Matrix {
    let f = field();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let rows: Vec<Vec<FieldElement>> = (0..n).map(|_| (0..n).map(|_| f.random(&mut rng)).collect()).collect();
    Matrix::from_rows(f, n, &rows).unwrap()
}

fn rational_normal_curve(d: u32) -> ProjectiveMap {
    let r = Ring::new(field(), 2, MonomialOrder::Grevlex).unwrap();
    let forms = (0..=d)
        .map(|i| Polynomial::monomial(r, Monomial::new(&[d - i, i]).unwrap(), FieldElement::ONE))
        .collect();
    ProjectiveMap::new(forms, None).unwrap()
}

fn cyclic4() -> Ideal {
    let r = Ring::new(field(), 4, MonomialOrder::Grevlex).unwrap();
    let gens = [
        "x0 + x1 + x2 + x3",
        "x0*x1 + x1*x2 + x2*x3 + x3*x0",
        "x0*x1*x2 + x1*x2*x3 + x2*x3*x0 + x3*x0*x1",
        "x0*x1*x2*x3 - 1",
    ];
    Ideal::new(r, gens.iter().map(|s| Polynomial::parse(r, s).unwrap())).unwrap()
}

fn rref(c: &mut Criterion) {
    let mut g = c.benchmark_group("rref");
    for n in [128usize, 384] {
        let m = random_matrix(n);
        for (name, par) in MODES {
            g.bench_with_input(BenchmarkId::new(name, n), &m, |b, m| b.iter(|| m.rref_with(par)));
        }
    }
    g.finish();
}

fn buchberger(c: &mut Criterion) {
    let mut g = c.benchmark_group("buchberger_cyclic4");
    let ideal = cyclic4();
    for (name, par) in MODES {
        let opts = GroebnerOptions { parallelism: par, ..Default::default() };
        g.bench_function(name, |b| b.iter(|| groebner::buchberger_with(&ideal, &opts).unwrap()));
    }
    g.finish();
}

fn elimination(c: &mut Criterion) {
    let mut g = c.benchmark_group("image_rational_normal_sextic");
    g.sample_size(20);
    let map = rational_normal_curve(6);
    for (name, par) in MODES {
        let opts = EliminationOptions { groebner: GroebnerOptions { parallelism: par, ..Default::default() }, ..Default::default() };
        g.bench_function(name, |b| b.iter(|| image::image_ideal_full_with(&map, &opts).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, rref, buchberger, elimination);
criterion_main!(benches);
