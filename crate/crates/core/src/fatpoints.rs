//! Plane curves with assigned multiplicities at points of P^2.
//!
//! A form of degree `n` vanishes to order `m` at `P` iff all its partial
//! derivatives of order exactly `m - 1` vanish at `P` (Euler's relation, which
//! needs `p > n`). That gives `C(m+1, 2)` linear conditions per fat point.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{FieldElement, Matrix, PrimeField};
use crate::error::{Error, Result};
use crate::groebner::{self, Ideal};
use crate::hilbert::{self, HilbertSeries};
use crate::poly::{graded_basis, MonomialOrder, Polynomial, Ring};

/// A point of P^2 whose first nonzero coordinate is 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PointP2 {
    coords: [FieldElement; 3],
}

impl PointP2 {
    pub fn new(field: &PrimeField, coords: [FieldElement; 3]) -> Result<Self> {
        let lead = coords.iter().find(|c| !c.is_zero()).ok_or(Error::InvalidConfig("the zero vector is not a point".into()))?;
        let inv = field.inv(*lead)?;
        Ok(PointP2 { coords: coords.map(|c| field.mul(c, inv)) })
    }

    pub fn coordinate_point(i: usize) -> Self {
        let mut coords = [FieldElement::ZERO; 3];
        coords[i] = FieldElement::ONE;
        PointP2 { coords }
    }

    pub fn coords(&self) -> [FieldElement; 3] {
        self.coords
    }
}

impl fmt::Display for PointP2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.coords[0], self.coords[1], self.coords[2])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FatPoint {
    pub point: PointP2,
    pub multiplicity: u32,
}

impl FatPoint {
    pub fn new(point: PointP2, multiplicity: u32) -> Result<Self> {
        if multiplicity == 0 {
            return Err(Error::InvalidConfig("multiplicity must be positive".into()));
        }
        Ok(FatPoint { point, multiplicity })
    }

    /// Number of linear conditions imposed on forms of degree at least `m - 1`.
    pub fn condition_count(&self) -> usize {
        let m = self.multiplicity as usize;
        m * (m + 1) / 2
    }
}

/// The ring `F_p[x0, x1, x2]` with grevlex.
pub fn plane_ring(field: PrimeField) -> Ring {
    Ring::new(field, 3, MonomialOrder::Grevlex).expect("three variables")
}

/// Rows: partials of order `m - 1` at each fat point; columns: degree-`n`
/// monomials in descending grevlex order.
pub fn condition_matrix(field: PrimeField, n: u32, conditions: &[FatPoint]) -> Result<Matrix> {
    if field.characteristic() <= n {
        return Err(Error::CharacteristicHazard { prime: field.characteristic(), degree: n });
    }
    if let Some(fp) = conditions.iter().find(|c| c.multiplicity > n + 1) {
        return Err(Error::InvalidConfig(format!(
            "multiplicity {} exceeds degree {n} + 1",
            fp.multiplicity
        )));
    }
    let cols = graded_basis(n, 3, MonomialOrder::Grevlex);
    let mut data = Vec::new();
    let mut rows = 0;
    for fp in conditions {
        let pt = fp.point.coords();
        for beta in graded_basis(fp.multiplicity - 1, 3, MonomialOrder::Grevlex) {
            for alpha in &cols {
                let mut v = FieldElement::ONE;
                for (i, &x) in pt.iter().enumerate() {
                    let (a, b) = (alpha.exponent(i), beta.exponent(i));
                    if a < b {
                        v = FieldElement::ZERO;
                        break;
                    }
                    v = field.mul(v, field.falling_factorial(a, b));
                    v = field.mul(v, field.pow(x, (a - b) as u64));
                }
                data.push(v.value());
            }
            rows += 1;
        }
    }
    Ok(Matrix::from_raw(field, rows, cols.len(), data))
}

/// Degree-`n` plane curves through fat points, as a canonical basis of forms.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    pub degree: u32,
    pub conditions: Vec<FatPoint>,
    pub basis: Vec<Polynomial>,
    /// Rank of the condition matrix.
    pub rank: usize,
}

impl LinearSystem {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn expected_rank(&self) -> usize {
        let rows: usize = self.conditions.iter().map(FatPoint::condition_count).sum();
        let cols = (self.degree as usize + 1) * (self.degree as usize + 2) / 2;
        rows.min(cols)
    }

    pub fn is_expected(&self) -> bool {
        self.rank == self.expected_rank()
    }
}

pub fn linear_system(field: PrimeField, n: u32, conditions: &[FatPoint]) -> Result<LinearSystem> {
    let m = condition_matrix(field, n, conditions)?;
    let ring = plane_ring(field);
    let monos = graded_basis(n, 3, MonomialOrder::Grevlex);
    let kernel = m.kernel();
    let rank = m.cols() - kernel.len();
    let basis = kernel.iter().map(|v| Polynomial::from_coefficients(ring, &monos, v)).collect();
    Ok(LinearSystem { degree: n, conditions: conditions.to_vec(), basis, rank })
}

/// Random nonzero member of a linear system.
pub fn random_member<R: Rng + ?Sized>(sys: &LinearSystem, rng: &mut R) -> Result<Polynomial> {
    let first = sys.basis.first().ok_or(Error::EmptySystem)?;
    let ring = first.ring();
    let field = ring.field();
    loop {
        let mut acc = Polynomial::zero(ring);
        for b in &sys.basis {
            acc = acc.add(&b.scale(field.random(rng)))?;
        }
        if !acc.is_zero() {
            return Ok(acc);
        }
    }
}

/// Shape of a system whose condition matrix must have maximal rank for a
/// point configuration to count as general: `multiplicities[i]` applies to
/// the `i`-th sampled point (0 means the point is not used).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemShape {
    pub degree: u32,
    pub multiplicities: Vec<u32>,
}

impl SystemShape {
    pub fn conditions(&self, points: &[PointP2]) -> Vec<FatPoint> {
        points
            .iter()
            .zip(&self.multiplicities)
            .filter(|(_, &m)| m > 0)
            .map(|(&point, &multiplicity)| FatPoint { point, multiplicity })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct GeneralPointOptions {
    /// Put the first three points at the coordinate triangle.
    pub normalize_first_three: bool,
    pub budget: usize,
    /// Systems that must reach maximal rank.
    pub systems: Vec<SystemShape>,
}

impl Default for GeneralPointOptions {
    fn default() -> Self {
        GeneralPointOptions { normalize_first_three: true, budget: 100, systems: Vec::new() }
    }
}

#[derive(Clone, Debug)]
pub struct GeneralPoints {
    pub points: Vec<PointP2>,
    /// Configurations drawn, including the accepted one.
    pub attempts: usize,
}

fn random_point<R: Rng + ?Sized>(field: &PrimeField, rng: &mut R) -> PointP2 {
    loop {
        let c = [field.random(rng), field.random(rng), field.random(rng)];
        if let Ok(p) = PointP2::new(field, c) {
            return p;
        }
    }
}

/// Draws `count` distinct points, redrawing the whole configuration until
/// every requested system has a condition matrix of maximal rank.
pub fn random_general_points<R: Rng + ?Sized>(
    field: PrimeField,
    count: usize,
    opts: &GeneralPointOptions,
    rng: &mut R,
) -> Result<GeneralPoints> {
    if count == 0 {
        return Err(Error::InvalidConfig("point count must be positive".into()));
    }
    for attempt in 1..=opts.budget.max(1) {
        let mut points: Vec<PointP2> = Vec::with_capacity(count);
        if opts.normalize_first_three {
            points.extend((0..count.min(3)).map(PointP2::coordinate_point));
        }
        while points.len() < count {
            let p = random_point(&field, rng);
            if !points.contains(&p) {
                points.push(p);
            }
        }
        let mut general = true;
        for shape in &opts.systems {
            let m = condition_matrix(field, shape.degree, &shape.conditions(&points))?;
            if m.rank() != m.rows().min(m.cols()) {
                general = false;
                break;
            }
        }
        if general {
            return Ok(GeneralPoints { points, attempts: attempt });
        }
    }
    Err(Error::GenericityFailure { stage: "point sampling".into(), attempts: opts.budget })
}

/// The Jacobian scheme of a plane curve and its Hilbert data.
#[derive(Clone, Debug)]
pub struct SingularScheme {
    pub degree: u64,
    pub series: HilbertSeries,
    pub basis_size: usize,
}

/// Gröbner basis and Hilbert series of `(F, dF/dx0, dF/dx1, dF/dx2)`.
pub fn singular_scheme(f: &Polynomial) -> Result<SingularScheme> {
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let ring = f.ring();
    let mut gens = vec![f.clone()];
    gens.extend((0..ring.nvars()).map(|i| f.partial_derivative(i)));
    let ideal = Ideal::new(ring, gens)?;
    let gb = groebner::buchberger(&ideal);
    let series = hilbert::hilbert_series_monomial(&groebner::leading_term_ideal(&gb), ring.nvars());
    let info = hilbert::hilbert_polynomial(&series);
    if info.dimension >= 1 {
        return Err(Error::NonIsolatedSingularity { dimension: info.dimension });
    }
    Ok(SingularScheme { degree: info.degree as u64, series, basis_size: gb.len() })
}

/// Length of the singular scheme; 0 for a smooth curve.
pub fn singular_scheme_degree(f: &Polynomial) -> Result<u64> {
    singular_scheme(f).map(|s| s.degree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn field() -> PrimeField {
        PrimeField::new(31991).unwrap()
    }

    fn pt(f: &PrimeField, c: [u64; 3]) -> PointP2 {
        PointP2::new(f, c.map(|x| f.from_u64(x))).unwrap()
    }

    #[test]
    fn points_normalize_canonically() {
        let f = field();
        assert_eq!(pt(&f, [0, 2, 4]), pt(&f, [0, 1, 2]));
        assert_eq!(pt(&f, [3, 6, 9]).to_string(), "1,2,3");
        assert!(PointP2::new(&f, [FieldElement::ZERO; 3]).is_err());
    }

    #[test]
    fn simple_point_row_is_the_point() {
        let f = field();
        let p = pt(&f, [1, 5, 7]);
        let m = condition_matrix(f, 1, &[FatPoint::new(p, 1).unwrap()]).unwrap();
        assert_eq!((m.rows(), m.cols()), (1, 3));
        assert_eq!(m.row(0), p.coords().to_vec());
    }

    #[test]
    fn matrix_shapes() {
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let pts = random_general_points(f, 22, &GeneralPointOptions::default(), &mut rng).unwrap().points;
        let nonic: Vec<FatPoint> = pts
            .iter()
            .enumerate()
            .map(|(i, &p)| FatPoint::new(p, if i < 3 { 3 } else if i < 10 { 2 } else { 1 }).unwrap())
            .collect();
        let m = condition_matrix(f, 9, &nonic).unwrap();
        assert_eq!((m.rows(), m.cols()), (51, 55));
        let septic: Vec<FatPoint> =
            pts.iter().enumerate().map(|(i, &p)| FatPoint::new(p, if i < 3 { 2 } else { 1 }).unwrap()).collect();
        let m = condition_matrix(f, 7, &septic).unwrap();
        assert_eq!((m.rows(), m.cols()), (28, 36));
    }

    #[test]
    fn characteristic_guard() {
        let f = PrimeField::new(7).unwrap();
        let p = PointP2::coordinate_point(0);
        assert_eq!(
            condition_matrix(f, 9, &[FatPoint::new(p, 1).unwrap()]).unwrap_err(),
            Error::CharacteristicHazard { prime: 7, degree: 9 }
        );
    }

    #[test]
    fn line_through_two_points() {
        let f = field();
        let a = pt(&f, [1, 2, 3]);
        let b = pt(&f, [4, 5, 6]);
        let sys = linear_system(f, 1, &[FatPoint::new(a, 1).unwrap(), FatPoint::new(b, 1).unwrap()]).unwrap();
        assert_eq!(sys.dimension(), 1);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let member = random_member(&sys, &mut rng).unwrap();
        let ratio = f.div(member.leading_coefficient().unwrap(), sys.basis[0].leading_coefficient().unwrap()).unwrap();
        assert_eq!(member, sys.basis[0].scale(ratio));
        assert!(member.evaluate(&a.coords()).unwrap().is_zero());
        assert!(member.evaluate(&b.coords()).unwrap().is_zero());
    }

    #[test]
    fn fat_point_members_vanish_to_order() {
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let p = pt(&f, [1, 17, 400]);
        let sys = linear_system(f, 4, &[FatPoint::new(p, 3).unwrap()]).unwrap();
        assert_eq!(sys.dimension(), 15 - 6);
        let g = random_member(&sys, &mut rng).unwrap();
        for d1 in 0..3 {
            for d2 in 0..3 - d1 {
                let mut h = g.clone();
                for _ in 0..d1 {
                    h = h.partial_derivative(0);
                }
                for _ in 0..d2 {
                    h = h.partial_derivative(1);
                }
                assert!(h.evaluate(&p.coords()).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn empty_system_has_no_member() {
        let f = field();
        let sys = LinearSystem { degree: 1, conditions: vec![], basis: vec![], rank: 3 };
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(random_member(&sys, &mut rng).unwrap_err(), Error::EmptySystem);
        let _ = f;
    }

    #[test]
    fn normalization_and_determinism() {
        let f = field();
        let opts = GeneralPointOptions::default();
        let three = random_general_points(f, 3, &opts, &mut ChaCha8Rng::seed_from_u64(5)).unwrap();
        assert_eq!(three.points, (0..3).map(PointP2::coordinate_point).collect::<Vec<_>>());
        let a = random_general_points(f, 22, &opts, &mut ChaCha8Rng::seed_from_u64(5)).unwrap();
        let b = random_general_points(f, 22, &opts, &mut ChaCha8Rng::seed_from_u64(5)).unwrap();
        assert_eq!(a.points, b.points);
        for i in 0..22 {
            for j in 0..i {
                assert_ne!(a.points[i], a.points[j]);
            }
        }
    }

    #[test]
    fn special_system_exhausts_budget() {
        // the double line through two points is singular at both, so two
        // double points never impose 6 independent conditions on conics
        let f = field();
        let opts = GeneralPointOptions {
            normalize_first_three: false,
            budget: 4,
            systems: vec![SystemShape { degree: 2, multiplicities: vec![2, 2] }],
        };
        assert_eq!(
            random_general_points(f, 2, &opts, &mut ChaCha8Rng::seed_from_u64(1)).unwrap_err(),
            Error::GenericityFailure { stage: "point sampling".into(), attempts: 4 }
        );
        let fine = GeneralPointOptions { systems: vec![SystemShape { degree: 2, multiplicities: vec![2, 1] }], ..opts };
        assert_eq!(random_general_points(f, 2, &fine, &mut ChaCha8Rng::seed_from_u64(1)).unwrap().attempts, 1);
    }

    #[test]
    fn singular_scheme_examples() {
        let f = field();
        let r = plane_ring(f);
        let conic = Polynomial::parse(r, "x0^2 + x1^2 + x2^2").unwrap();
        assert_eq!(singular_scheme_degree(&conic).unwrap(), 0);
        let nodal = Polynomial::parse(r, "x1^2*x2 - x0^3 - x0^2*x2").unwrap();
        assert_eq!(singular_scheme_degree(&nodal).unwrap(), 1);
        let double_line = Polynomial::parse(r, "x0^2").unwrap();
        assert!(matches!(singular_scheme_degree(&double_line), Err(Error::NonIsolatedSingularity { .. })));
    }
}
