//! Singular support bounds and the integrality criterion.
//!
//! `Lambda_Sigma = union over sigma of (sigma^perp + M) x sigma`, with the
//! sign convention where the covector lies in `sigma` itself. The estimate
//! `SS(P(chi)) in union (chi_sigma + sigma^perp) x sigma` meets it at infinity
//! only if some `<x, v_rho> = a_rho` with `a_rho` an integer, so non-integral
//! coefficients certify disjointness.

use std::sync::Arc;

use num::{BigInt, One, Signed, Zero};
use serde::Serialize;

use crate::divisors::DeformationPath;
use crate::lattice_fan::{Cone, Fan, RationalVector};
use crate::linalg::{floor_int, format_rational, int, kernel_basis, rank_dense, smith_normal_form, solve, Rational};

/// One piece `(sigma^perp + M) x sigma` of `Lambda_Sigma`.
#[derive(Debug, Clone)]
pub struct LambdaPiece {
    pub cone: Cone,
    /// Basis of `sigma^perp` inside `M_R` (rational; it spans a saturated
    /// sublattice direction since the cone is smooth).
    pub perp_basis: Vec<Vec<Rational>>,
}

#[derive(Debug, Clone)]
pub struct LambdaSigma {
    pub fan: Arc<Fan>,
    pub pieces: Vec<LambdaPiece>,
}

fn perp_basis(fan: &Fan, c: &Cone) -> Vec<Vec<Rational>> {
    let rows: Vec<Vec<Rational>> = c.generators.iter().map(|g| g.to_rational().0).collect();
    if rows.is_empty() {
        return (0..fan.dim())
            .map(|i| (0..fan.dim()).map(|j| if i == j { int(1) } else { int(0) }).collect())
            .collect();
    }
    kernel_basis(&rows, fan.dim())
}

pub fn lambda_sigma(fan: &Arc<Fan>) -> LambdaSigma {
    LambdaSigma {
        fan: fan.clone(),
        pieces: fan.all_cones().map(|c| LambdaPiece { cone: c.clone(), perp_basis: perp_basis(fan, c) }).collect(),
    }
}

/// Whether `p` lies in the closed simplicial cone `c`.
fn cone_contains(c: &Cone, p: &RationalVector) -> bool {
    if c.rays.is_empty() {
        return p.0.iter().all(Zero::is_zero);
    }
    // Solve p = sum lambda_i g_i restricted to the span: least-squares free,
    // via the normal equations G G^T lambda = G p, then check exactness.
    let g: Vec<Vec<Rational>> = c.generators.iter().map(|v| v.to_rational().0).collect();
    let gram: Vec<Vec<Rational>> =
        g.iter().map(|a| g.iter().map(|b| crate::linalg::dot(a, b)).collect()).collect();
    let rhs: Vec<Rational> = g.iter().map(|a| crate::linalg::dot(a, &p.0)).collect();
    let Some(lam) = solve(&gram, &rhs) else { return false };
    let n = p.dim();
    let back: Vec<Rational> =
        (0..n).map(|k| lam.iter().zip(&g).fold(Rational::zero(), |acc, (l, v)| acc + l * &v[k])).collect();
    back == p.0 && lam.iter().all(|l| !l.is_negative())
}

/// Whether `x in sigma^perp + M`: some integral `m` has `<m, v_rho> = <x, v_rho>`
/// on every ray of `sigma`. Solved with the Smith form of the ray matrix.
fn in_perp_plus_lattice(c: &Cone, x: &RationalVector) -> bool {
    if c.rays.is_empty() {
        return true;
    }
    let t: Vec<Rational> = c.generators.iter().map(|g| x.pair(g)).collect();
    let a: Vec<Vec<BigInt>> = c.generators.iter().map(|g| g.0.clone()).collect();
    let snf = smith_normal_form(&a, x.dim());
    // left * a * right = diag; a m = t  <=>  diag y = left t with m = right y.
    let lt: Vec<Rational> = snf
        .left
        .iter()
        .map(|row| row.iter().zip(&t).fold(Rational::zero(), |acc, (l, v)| acc + Rational::from_integer(l.clone()) * v))
        .collect();
    lt.iter().enumerate().all(|(i, v)| match snf.diag.get(i) {
        Some(d) if !d.is_zero() => (v / Rational::from_integer(d.clone())).is_integer(),
        _ => v.is_zero(),
    })
}

/// `(x, p) in Lambda_Sigma`.
pub fn lambda_contains(fan: &Fan, x: &RationalVector, p: &RationalVector) -> bool {
    fan.all_cones().any(|c| cone_contains(c, p) && in_perp_plus_lattice(c, x))
}

/// One piece `(chi_sigma + sigma^perp) x sigma` of the singular support bound.
#[derive(Debug, Clone, Serialize)]
pub struct SsPiece {
    pub rays: Vec<usize>,
    pub apex: Vec<String>,
    /// Dimension of the affine part `chi_sigma + sigma^perp`.
    pub affine_dim: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SsEstimate {
    pub pieces: Vec<SsPiece>,
}

impl SsEstimate {
    /// Pieces with a nonzero covector cone.
    pub fn nonzero_pieces(&self) -> impl Iterator<Item = &SsPiece> {
        self.pieces.iter().filter(|p| !p.rays.is_empty())
    }
}

pub fn ss_estimate(d: &crate::divisors::DivisorData) -> SsEstimate {
    let fan = d.fan();
    let n = fan.dim();
    let pieces = fan
        .all_cones()
        .map(|c| {
            let apex = if c.rays.is_empty() { RationalVector::zero(n) } else { d.apex(&c.rays).clone() };
            let rows: Vec<Vec<Rational>> = c.generators.iter().map(|g| g.to_rational().0).collect();
            let r = if rows.is_empty() { 0 } else { rank_dense(&rows) };
            SsPiece { rays: c.rays.clone(), apex: apex.0.iter().map(format_rational).collect(), affine_dim: n - r }
        })
        .collect();
    SsEstimate { pieces }
}

/// Outcome of the one-sided disjointness criterion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Disjointness {
    /// Every coefficient is non-integral; `witness` lists them per ray.
    Disjoint { witness: Vec<String> },
    /// The criterion does not apply: these rays carry integer coefficients.
    Unknown { integral_rays: Vec<usize> },
}

impl Disjointness {
    pub fn is_disjoint(&self) -> bool {
        matches!(self, Disjointness::Disjoint { .. })
    }
}

pub fn disjoint_at_infinity(d: &crate::divisors::DivisorData) -> Disjointness {
    let integral: Vec<usize> = (0..d.coeffs().len()).filter(|&i| d.coeff(i).is_integer()).collect();
    if integral.is_empty() {
        Disjointness::Disjoint { witness: d.coeff_strings() }
    } else {
        Disjointness::Unknown { integral_rays: integral }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RayCertificate {
    pub rho: usize,
    /// Parameters `s in [0, 1]` where `a_{rho,s}` is an integer; `["all"]`
    /// when the coefficient is a constant integer.
    pub breakpoints: Vec<String>,
    pub in_unit_interval: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PathCertificate {
    pub rays: Vec<RayCertificate>,
    pub transcript: Vec<String>,
    pub failures: Vec<String>,
    pub verdict: bool,
}

/// Checks the probe path: no integral coefficient for `s` in `(0, 1)`, the
/// two endpoint identities, the sandwich bounds, and ampleness at
/// `s = 0, 1/2, 1`.
pub fn validate_path(p: &DeformationPath) -> PathCertificate {
    let fan = &p.fan;
    let rr = Rational::from_integer(BigInt::from(p.r));
    let mut rays = Vec::new();
    let mut transcript = Vec::new();
    let mut failures = Vec::new();
    for (i, v) in fan.rays().iter().enumerate() {
        let a = Rational::from_integer(p.ample[i].clone());
        let (s0, s1) = (&p.start[i], &p.end[i]);
        let mut bps: Vec<String> = Vec::new();
        let mut interior = false;
        if s0 == s1 {
            if s0.is_integer() {
                bps.push("all".into());
                interior = true;
            }
        } else {
            let (lo, hi) = if s0 < s1 { (s0, s1) } else { (s1, s0) };
            let mut k = -floor_int(&-lo.clone());
            while Rational::from_integer(k.clone()) <= *hi {
                let s = (Rational::from_integer(k.clone()) - s0) / (s1 - s0);
                if s.is_positive() && s < Rational::one() {
                    interior = true;
                }
                bps.push(format_rational(&s));
                k += 1;
            }
        }
        if interior {
            failures.push(format!("ray {i}: integral coefficient inside (0, 1) at {}", bps.join(", ")));
        }
        rays.push(RayCertificate { rho: i, breakpoints: bps, in_unit_interval: interior });

        let t = p.base.pair(v);
        let lower = &t + &p.eps0 * &a;
        let upper = Rational::from_integer(floor_int(&t) + BigInt::one());
        let ok0 = s0 - &rr * &a == lower;
        let ok1 = s1 - &rr * &a == upper;
        let sandwich = t < lower && lower < upper;
        transcript.push(format!(
            "ray {i}: <x,v> = {}, lower = {}, upper = {}, start - R a = {}, end - R a = {}",
            format_rational(&t),
            format_rational(&lower),
            format_rational(&upper),
            format_rational(&(s0 - &rr * &a)),
            format_rational(&(s1 - &rr * &a))
        ));
        if !(ok0 && ok1) {
            failures.push(format!("ray {i}: endpoint identity fails"));
        }
        if !sandwich {
            failures.push(format!("ray {i}: sandwich <x,v> < <x,v> + eps0 a < floor(<x,v>) + 1 fails"));
        }
    }
    for s in [int(0), Rational::new(1.into(), 2.into()), int(1)] {
        let ample = p.divisor_at(&s).is_strictly_convex();
        transcript.push(format!("D_s at s = {} strictly convex: {ample}", format_rational(&s)));
        if !ample {
            failures.push(format!("D_s is not ample at s = {}", format_rational(&s)));
        }
    }
    let verdict = failures.is_empty();
    PathCertificate { rays, transcript, failures, verdict }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisors::{build_deformation_path, DivisorData};
    use crate::lattice_fan::LatticeVector;
    use crate::linalg::rat;

    fn fan(name: &str) -> Arc<Fan> {
        Arc::new(Fan::builtin(name).unwrap())
    }

    fn pt(v: &[(i64, i64)]) -> RationalVector {
        RationalVector(v.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn lambda_membership_on_p1() {
        let f = fan("P1");
        assert!(lambda_contains(&f, &pt(&[(1, 3)]), &pt(&[(0, 1)])));
        assert!(!lambda_contains(&f, &pt(&[(1, 2)]), &pt(&[(1, 1)])));
        assert!(lambda_contains(&f, &pt(&[(3, 1)]), &pt(&[(-2, 1)])));
    }

    #[test]
    fn lambda_is_periodic() {
        let f = fan("P2");
        let m = LatticeVector::from_i64(&[3, -2]).to_rational();
        for (x, p) in [
            (pt(&[(1, 2), (0, 1)]), pt(&[(0, 1), (1, 1)])),
            (pt(&[(1, 2), (1, 3)]), pt(&[(-1, 1), (-1, 1)])),
            (pt(&[(2, 1), (1, 3)]), pt(&[(1, 1), (0, 1)])),
            (pt(&[(1, 1), (1, 1)]), pt(&[(1, 1), (2, 1)])),
        ] {
            assert_eq!(lambda_contains(&f, &x, &p), lambda_contains(&f, &x.add(&m), &p));
        }
        // (1/2, 0) with covector along (0, 1): needs <x, (0,1)> integral.
        assert!(lambda_contains(&f, &pt(&[(1, 2), (0, 1)]), &pt(&[(0, 1), (1, 1)])));
        assert!(!lambda_contains(&f, &pt(&[(0, 1), (1, 2)]), &pt(&[(0, 1), (1, 1)])));
    }

    #[test]
    fn ss_pieces() {
        let f = fan("P2");
        let d = DivisorData::from_ints(&f, &[1, 1, 1]).unwrap();
        let est = ss_estimate(&d);
        assert_eq!(est.nonzero_pieces().count(), 6);
        let dims: Vec<usize> = est.nonzero_pieces().map(|p| p.affine_dim).collect();
        assert_eq!(dims.iter().filter(|&&k| k == 1).count(), 3);
        assert_eq!(dims.iter().filter(|&&k| k == 0).count(), 3);
        let p1 = DivisorData::from_ints(&fan("P1"), &[-1, -1]).unwrap();
        let e = ss_estimate(&p1);
        assert_eq!(e.nonzero_pieces().map(|p| p.apex.clone()).collect::<Vec<_>>(), vec![vec!["-1".to_string()], vec!["1".to_string()]]);
    }

    #[test]
    fn integrality_criterion() {
        let f = fan("P1");
        let half = DivisorData::from_coeffs(&f, vec![rat(1, 2), rat(1, 2)]).unwrap();
        assert!(disjoint_at_infinity(&half).is_disjoint());
        let d = DivisorData::from_ints(&f, &[1, 0]).unwrap();
        assert_eq!(disjoint_at_infinity(&d), Disjointness::Unknown { integral_rays: vec![0, 1] });
    }

    #[test]
    fn p2_path_at_one_third() {
        let f = fan("P2");
        let a = DivisorData::from_ints(&f, &[1, 1, 1]).unwrap();
        let p = build_deformation_path(&f, &pt(&[(-1, 2), (0, 1)]), &a).unwrap();
        assert!(disjoint_at_infinity(&p.divisor_at(&rat(1, 3))).is_disjoint());
        assert!(validate_path(&p).verdict);
    }

    #[test]
    fn p1_path_passes_and_oversized_eps_fails() {
        let f = fan("P1");
        let a = DivisorData::from_ints(&f, &[1, 1]).unwrap();
        let p = build_deformation_path(&f, &pt(&[(0, 1)]), &a).unwrap();
        let cert = validate_path(&p);
        assert!(cert.verdict, "{:?}", cert.failures);
        let bad = DeformationPath::with_parameters(&f, &pt(&[(0, 1)]), &p.ample, int(3), p.r);
        let cert = validate_path(&bad);
        assert!(!cert.verdict);
        assert!(cert.rays.iter().any(|r| r.in_unit_interval));
    }
}
