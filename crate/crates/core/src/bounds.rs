//! Closed-form numerics for nonspecial arithmetically Cohen-Macaulay curves
//! of genus `g` and degree `d = g + r` in `P^r`: ideal dimensions from
//! Riemann-Roch, the genus window where quadric generation must fail, and
//! the classical degree bounds. All arithmetic is exact.

use serde::{Deserialize, Serialize};

use crate::poly::binomial;

/// A nonspecial curve class `(r, g, d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurveClass {
    pub r: u32,
    pub g: u32,
    pub d: u32,
}

impl CurveClass {
    /// The nonspecial class of genus `g` in `P^r`, with `d = g + r`.
    pub fn nonspecial(r: u32, g: u32) -> Self {
        CurveClass { r, g, d: g + r }
    }
}

/// `C(r+k, k) - (k d + 1 - g)` without flooring; negative values mean the
/// Riemann-Roch count is not attained.
pub fn expected_h0_ideal(c: CurveClass, k: u32) -> i64 {
    binomial(c.r as u64 + k as u64, k as u64) as i64 - (k as i64 * c.d as i64 + 1 - c.g as i64)
}

/// Dimension of the degree-`k` forms vanishing on the curve.
pub fn h0_ideal(c: CurveClass, k: u32) -> u64 {
    expected_h0_ideal(c, k).max(0) as u64
}

/// `C(r, 2) - g`.
pub fn quadric_count(r: u32, g: u32) -> i64 {
    binomial(r as u64, 2) as i64 - g as i64
}

/// Least `g` with `g > r(r-2)/3`.
pub fn g_lower(r: u32) -> u32 {
    r * (r - 2) / 3 + 1
}

/// `floor((r^2 - 3r - 2) / 2)`; negative for `r = 3`.
pub fn g_upper(r: u32) -> i64 {
    let r = r as i64;
    (r * r - 3 * r - 2).div_euclid(2)
}

/// Twice the genus forced on a curve cut out by `r` quadrics:
/// `(r-1) d + 2 - 2^r`.
pub fn r_quadrics_genus_doubled(r: u32, d: u32) -> i64 {
    (r as i64 - 1) * d as i64 + 2 - (1i64 << r)
}

/// The genus `(r-1)d/2 + 1 - 2^(r-1)` when it is a nonnegative integer.
pub fn r_quadrics_genus(r: u32, d: u32) -> Option<u32> {
    let twice = r_quadrics_genus_doubled(r, d);
    (twice >= 0 && twice % 2 == 0).then_some((twice / 2) as u32)
}

/// The escape test run when the genus window is empty: a curve with exactly
/// `r` quadrics has `g = C(r,2) - r` and `d = g + r`, which must match the
/// genus forced by `r` quadrics.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EscapeCheck {
    pub g: u32,
    pub d: u32,
    /// `(r-1)d/2 + 1 - 2^(r-1)` as a reduced fraction `numerator / denominator`.
    pub forced_genus_numerator: i64,
    pub forced_genus_denominator: i64,
    pub consistent: bool,
}

impl EscapeCheck {
    pub fn forced_genus_display(&self) -> String {
        if self.forced_genus_denominator == 1 {
            self.forced_genus_numerator.to_string()
        } else {
            let n = self.forced_genus_numerator;
            format!("{}.5", if n < 0 { format!("-{}", (-n) / 2) } else { (n / 2).to_string() })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateWindow {
    pub r: u32,
    pub g_min: u32,
    pub g_max: i64,
    /// Present only when the window is empty and the exactly-`r`-quadrics
    /// class lies at or above `g_min`.
    pub escape: Option<EscapeCheck>,
    /// `(g, d)` pairs.
    pub candidates: Vec<(u32, u32)>,
    pub note: Option<String>,
}

fn window(r: u32) -> CandidateWindow {
    let g_min = g_lower(r);
    let g_max = g_upper(r);
    let mut candidates: Vec<(u32, u32)> = (g_min as i64..=g_max).map(|g| (g as u32, g as u32 + r)).collect();
    let mut escape = None;
    if candidates.is_empty() {
        let g = binomial(r as u64, 2) as u32 - r;
        if g >= g_min {
            let d = g + r;
            let twice = r_quadrics_genus_doubled(r, d);
            let consistent = r_quadrics_genus(r, d) == Some(g);
            let (num, den) = if twice % 2 == 0 { (twice / 2, 1) } else { (twice, 2) };
            if consistent {
                candidates.push((g, d));
            }
            escape = Some(EscapeCheck {
                g,
                d,
                forced_genus_numerator: num,
                forced_genus_denominator: den,
                consistent,
            });
        }
    }
    let note = (r <= 5).then(|| {
        "these bounds leave no room here; the full statement for r <= 5 relies on a separate classification".to_string()
    });
    CandidateWindow { r, g_min, g_max, escape, candidates, note }
}

/// Windows for each `r` in `r_min..=r_max` (`r_min >= 3`).
pub fn candidate_scan(r_min: u32, r_max: u32) -> Vec<CandidateWindow> {
    (r_min.max(3)..=r_max).map(window).collect()
}

/// Exact integer square root and whether it is exact.
pub fn isqrt_exact(n: u64) -> (u64, bool) {
    let s = n.isqrt();
    (s, s * s == n)
}

/// Least integer `d` with `2d >= 2g + 1 + sqrt(8g + 1)`.
pub fn acm_degree_bound(g: u64) -> u64 {
    let (s, exact) = isqrt_exact(8 * g + 1);
    let root_ceil = if exact { s } else { s + 1 };
    (2 * g + 1 + root_ceil).div_ceil(2)
}

/// `(floor((3g+4)/2), floor((3g+6)/2))`.
pub fn classical_bounds(g: u64) -> (u64, u64) {
    ((3 * g + 4) / 2, (3 * g + 6) / 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ideal_dimensions() {
        let c = CurveClass::nonspecial(7, 12);
        assert_eq!(c.d, 19);
        assert_eq!(h0_ideal(c, 1), 0);
        assert_eq!(h0_ideal(c, 2), 9);
        assert_eq!(h0_ideal(c, 3), 74);
    }

    #[test]
    fn quadric_counts() {
        assert_eq!(quadric_count(7, 12), 9);
        assert_eq!(quadric_count(5, 6), 4);
        assert_eq!(quadric_count(3, 0), 3);
    }

    #[test]
    fn genus_limits() {
        assert_eq!(g_lower(7), 12);
        assert_eq!(g_lower(6), 9);
        assert_eq!(g_lower(3), 2);
        assert_eq!(g_upper(7), 13);
        assert_eq!(g_upper(6), 8);
        assert_eq!(g_upper(5), 4);
    }

    #[test]
    fn forced_genus() {
        assert_eq!(r_quadrics_genus(6, 15), None);
        assert_eq!(r_quadrics_genus_doubled(6, 15), 13);
        assert_eq!(r_quadrics_genus(7, 19), None);
        assert_eq!(r_quadrics_genus_doubled(7, 19), -12);
        assert_eq!(r_quadrics_genus(5, 8), Some(1));
    }

    #[test]
    fn scan() {
        let w = candidate_scan(3, 7);
        assert_eq!(w.len(), 5);
        for win in &w[..4] {
            assert!(win.candidates.is_empty(), "r = {}", win.r);
        }
        let six = &w[3];
        let esc = six.escape.as_ref().unwrap();
        assert_eq!((esc.g, esc.d), (9, 15));
        assert!(!esc.consistent);
        assert_eq!(esc.forced_genus_display(), "6.5");
        assert_eq!(w[4].candidates, vec![(12, 19), (13, 20)]);
        assert!(w[2].escape.is_none());
    }

    #[test]
    fn degree_bounds() {
        assert_eq!(acm_degree_bound(0), 1);
        assert_eq!(acm_degree_bound(3), 6);
        assert_eq!(acm_degree_bound(12), 18);
        assert_eq!(classical_bounds(12), (20, 21));
        assert_eq!(classical_bounds(0), (2, 3));
        assert_eq!(classical_bounds(1), (3, 4));
    }

    #[test]
    fn acm_bound_is_least_solution() {
        for g in 0..2000u64 {
            let d = acm_degree_bound(g);
            // 2d - 2g - 1 >= sqrt(8g+1)  <=>  lhs >= 0 and lhs^2 >= 8g+1
            let ok = |d: u64| {
                let lhs = 2 * d as i64 - 2 * g as i64 - 1;
                lhs >= 0 && (lhs * lhs) as u64 > 8 * g
            };
            assert!(ok(d));
            assert!(d == 0 || !ok(d - 1));
        }
    }

    #[test]
    fn quadric_criterion_matches_genus_bound() {
        for r in 3..=60u32 {
            for g in 0..=500u32 {
                let c = CurveClass::nonspecial(r, g);
                let lhs = (r as i64 + 1) * expected_h0_ideal(c, 2) < expected_h0_ideal(c, 3);
                let rhs = 3 * g as i64 > (r * (r - 2)) as i64;
                assert_eq!(lhs, rhs, "r={r} g={g}");
                if quadric_count(r, g) >= 0 {
                    assert_eq!(quadric_count(r, g), expected_h0_ideal(c, 2));
                }
            }
        }
    }
}
