//! Toric divisors in their three guises: ray coefficients `a_rho`, the
//! piecewise-linear support function, and the twisted polytope of vertices
//! `chi_sigma`. Also ampleness, probe divisors, divisor classes and the
//! interpolating family of ample divisors used to corepresent stalks.

use std::collections::BTreeMap;
use std::sync::Arc;

use num::{BigInt, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Result, TcccError};
use crate::lattice_fan::{Fan, LatticeVector, RationalVector};
use crate::linalg::{floor_int, format_rational, int, mat_vec_int, parse_rational, smith_normal_form, solve, Rational, SmithForm};

/// A toric R-divisor `sum a_rho D_rho` with its cached twisted polytope.
#[derive(Debug, Clone)]
pub struct DivisorData {
    fan: Arc<Fan>,
    coeffs: Vec<Rational>,
    /// `vertices[i]` is `chi_sigma` for `fan.maximal_cones()[i]`.
    vertices: Vec<RationalVector>,
}

impl PartialEq for DivisorData {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && Arc::ptr_eq(&self.fan, &other.fan)
            || (self.coeffs == other.coeffs && self.fan.rays() == other.fan.rays())
    }
}

impl DivisorData {
    /// Solves `<chi_sigma, v_rho> = a_rho` on every maximal cone.
    pub fn from_coeffs(fan: &Arc<Fan>, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() != fan.num_rays() {
            return Err(TcccError::Input(format!(
                "expected {} coefficients, got {}",
                fan.num_rays(),
                coeffs.len()
            )));
        }
        let vertices = fan
            .maximal_cones()
            .iter()
            .map(|c| {
                let rows: Vec<Vec<Rational>> = c.generators.iter().map(|g| g.to_rational().0).collect();
                let rhs: Vec<Rational> = c.rays.iter().map(|&r| coeffs[r].clone()).collect();
                solve(&rows, &rhs)
                    .map(RationalVector)
                    .ok_or_else(|| TcccError::UnsupportedCone(format!("{:?} is singular", c.rays)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { fan: fan.clone(), coeffs, vertices })
    }

    pub fn from_ints(fan: &Arc<Fan>, coeffs: &[i64]) -> Result<Self> {
        Self::from_coeffs(fan, coeffs.iter().map(|&a| int(a)).collect())
    }

    pub fn zero(fan: &Arc<Fan>) -> Self {
        Self::from_coeffs(fan, vec![Rational::zero(); fan.num_rays()]).expect("zero divisor")
    }

    pub fn fan(&self) -> &Arc<Fan> {
        &self.fan
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, ray: usize) -> &Rational {
        &self.coeffs[ray]
    }

    pub fn vertices(&self) -> &[RationalVector] {
        &self.vertices
    }

    /// `chi_sigma` for the maximal cone with the given index.
    pub fn vertex(&self, max_cone: usize) -> &RationalVector {
        &self.vertices[max_cone]
    }

    /// A representative of `chi_tau` for an arbitrary cone `tau` (given by
    /// sorted ray indices): the vertex of any maximal cone containing it.
    /// Only its class modulo `tau^perp` is meaningful.
    pub fn apex(&self, rays: &[usize]) -> &RationalVector {
        let i = self
            .fan
            .maximal_cones()
            .iter()
            .position(|c| rays.iter().all(|r| c.rays.contains(r)))
            .expect("cone lies in some maximal cone");
        &self.vertices[i]
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|a| a.is_integer())
    }

    pub fn int_coeffs(&self) -> Option<Vec<BigInt>> {
        self.is_integral().then(|| self.coeffs.iter().map(|a| a.to_integer()).collect())
    }

    pub fn add(&self, other: &DivisorData) -> DivisorData {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        let vertices = self.vertices.iter().zip(&other.vertices).map(|(a, b)| a.add(b)).collect();
        DivisorData { fan: self.fan.clone(), coeffs, vertices }
    }

    pub fn neg(&self) -> DivisorData {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, other: &DivisorData) -> DivisorData {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Rational) -> DivisorData {
        DivisorData {
            fan: self.fan.clone(),
            coeffs: self.coeffs.iter().map(|a| a * s).collect(),
            vertices: self.vertices.iter().map(|v| v.scale(s)).collect(),
        }
    }

    /// Value of the support function `phi_D` at `v` in `N_R`.
    pub fn support_value(&self, v: &RationalVector) -> Rational {
        let i = self.fan.locate(v).expect("complete fan locates every vector");
        self.vertices[i].dot(v)
    }

    fn wall_slacks(&self) -> Vec<Rational> {
        let walls = self.fan.wall_pairs().expect("complete fan");
        let mut out = Vec::with_capacity(2 * walls.len());
        for (wall, s1, s2) in &walls {
            for (from, to) in [(*s1, *s2), (*s2, *s1)] {
                let r = self.fan.opposite_ray(wall, to);
                out.push(&self.coeffs[r] - self.vertices[from].pair(self.fan.ray(r)));
            }
        }
        out
    }

    /// `<chi_s1, v> <= a_v` across every wall.
    pub fn is_convex(&self) -> bool {
        self.wall_slacks().iter().all(|s| !s.is_negative())
    }

    /// Strict inequality across every wall: ampleness.
    pub fn is_strictly_convex(&self) -> bool {
        self.wall_slacks().iter().all(Signed::is_positive)
    }

    pub fn is_ample(&self) -> bool {
        self.is_strictly_convex()
    }

    pub fn translate(&self, m: &LatticeVector) -> DivisorData {
        self.translate_rational(&m.to_rational())
    }

    /// `chi_sigma -> chi_sigma + m`, `a_rho -> a_rho + <m, v_rho>`.
    pub fn translate_rational(&self, m: &RationalVector) -> DivisorData {
        DivisorData {
            fan: self.fan.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(self.fan.rays())
                .map(|(a, v)| a + m.pair(v))
                .collect(),
            vertices: self.vertices.iter().map(|x| x.add(m)).collect(),
        }
    }

    /// Coordinatewise bounding box of the vertex set.
    pub fn vertex_bounds(&self) -> (RationalVector, RationalVector) {
        let n = self.fan.dim();
        let mut lo = self.vertices[0].clone();
        let mut hi = self.vertices[0].clone();
        for v in &self.vertices[1..] {
            for k in 0..n {
                if v.0[k] < lo.0[k] {
                    lo.0[k] = v.0[k].clone();
                }
                if v.0[k] > hi.0[k] {
                    hi.0[k] = v.0[k].clone();
                }
            }
        }
        (lo, hi)
    }

    pub fn to_spec(&self) -> DivisorSpec {
        DivisorSpec {
            fan: self.fan.name.clone(),
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, a)| (i.to_string(), format_rational(a)))
                .collect(),
        }
    }

    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rational).collect()
    }
}

/// JSON form: `{ "fan": <name|file>, "coeffs": {"rayIdx": "p/q", ...} }`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DivisorSpec {
    pub fan: String,
    pub coeffs: BTreeMap<String, String>,
}

impl DivisorSpec {
    /// Resolves against an already-loaded fan. Missing rays default to zero.
    pub fn to_divisor(&self, fan: &Arc<Fan>) -> Result<DivisorData> {
        let mut coeffs = vec![Rational::zero(); fan.num_rays()];
        for (k, v) in &self.coeffs {
            let i: usize = k.parse().map_err(|_| TcccError::Input(format!("bad ray index {k:?}")))?;
            if i >= coeffs.len() {
                return Err(TcccError::Input(format!("ray index {i} out of range")));
            }
            coeffs[i] = parse_rational(v)?;
        }
        DivisorData::from_coeffs(fan, coeffs)
    }
}

/// The open polytope `{x : <x, v_rho> < a_rho}` of an ample divisor.
#[derive(Debug, Clone)]
pub struct AmplePolytope {
    pub normals: Vec<LatticeVector>,
    pub bounds: Vec<Rational>,
    pub vertices: Vec<RationalVector>,
}

impl AmplePolytope {
    pub fn contains_open(&self, x: &RationalVector) -> bool {
        self.normals.iter().zip(&self.bounds).all(|(v, a)| x.pair(v) < *a)
    }

    pub fn contains_closed(&self, x: &RationalVector) -> bool {
        self.normals.iter().zip(&self.bounds).all(|(v, a)| x.pair(v) <= *a)
    }
}

pub fn ample_polytope(d: &DivisorData) -> Result<AmplePolytope> {
    if !d.is_strictly_convex() {
        return Err(TcccError::AmplenessRequired(format!("coefficients {:?}", d.coeff_strings())));
    }
    Ok(AmplePolytope {
        normals: d.fan.rays().to_vec(),
        bounds: d.coeffs.clone(),
        vertices: d.vertices.clone(),
    })
}

/// The integral divisor with `a_rho = floor(<x, v_rho>) + 1`.
pub fn probe_divisor(fan: &Arc<Fan>, x: &RationalVector) -> DivisorData {
    let coeffs = fan
        .rays()
        .iter()
        .map(|v| Rational::from_integer(floor_int(&x.pair(v)) + BigInt::one()))
        .collect();
    DivisorData::from_coeffs(fan, coeffs).expect("smooth fan")
}

/// Searches small positive integral coefficient vectors for an ample divisor.
/// Finding one certifies projectivity.
pub fn find_ample(fan: &Arc<Fan>, max_coeff: i64) -> Option<DivisorData> {
    let r = fan.num_rays();
    let mut best: Option<(i64, DivisorData)> = None;
    let mut coeffs = vec![1i64; r];
    loop {
        let d = DivisorData::from_ints(fan, &coeffs).ok()?;
        if d.is_strictly_convex() {
            let total: i64 = coeffs.iter().sum();
            if best.as_ref().is_none_or(|(t, _)| total < *t) {
                best = Some((total, d));
            }
        }
        // odometer over [1, max_coeff]^r
        let mut i = 0;
        loop {
            if i == r {
                return best.map(|(_, d)| d);
            }
            coeffs[i] += 1;
            if coeffs[i] <= max_coeff {
                break;
            }
            coeffs[i] = 1;
            i += 1;
        }
    }
}

/// The Picard group `Z^{rays} / M`, used to compare divisor classes.
#[derive(Debug, Clone)]
pub struct PicardGroup {
    snf: SmithForm,
    rank_m: usize,
}

impl PicardGroup {
    pub fn new(fan: &Fan) -> Self {
        // Matrix of m -> (<m, v_rho>)_rho: rows indexed by rays.
        let rows: Vec<Vec<BigInt>> = fan.rays().iter().map(|v| v.0.clone()).collect();
        let snf = smith_normal_form(&rows, fan.dim());
        let rank_m = snf.rank();
        Self { snf, rank_m }
    }

    /// Canonical coordinates of the class of an integral coefficient vector:
    /// torsion parts reduced modulo the invariant factors, then the free part.
    pub fn class_of(&self, coeffs: &[BigInt]) -> Vec<BigInt> {
        let y = mat_vec_int(&self.snf.left, coeffs);
        let mut out = Vec::with_capacity(y.len());
        for (i, yi) in y.iter().enumerate() {
            if i < self.rank_m {
                let d = &self.snf.diag[i];
                if !d.is_one() {
                    out.push(((yi % d) + d) % d);
                }
            } else {
                out.push(yi.clone());
            }
        }
        out
    }

    pub fn class_of_divisor(&self, d: &DivisorData) -> Result<Vec<BigInt>> {
        let c = d.int_coeffs().ok_or_else(|| TcccError::NonIntegral(format!("{:?}", d.coeff_strings())))?;
        Ok(self.class_of(&c))
    }

    /// Rank of the free part plus number of torsion factors.
    pub fn free_rank(&self) -> usize {
        self.snf.rows - self.rank_m
    }
}

/// The affine family `a_{rho,s}`, `s in [0, 1]`, of ample divisors from
/// `x + (R + eps0) A` to `D_[x] + R A`.
#[derive(Debug, Clone)]
pub struct DeformationPath {
    pub fan: Arc<Fan>,
    pub base: RationalVector,
    pub ample: Vec<BigInt>,
    pub eps0: Rational,
    pub r: u64,
    /// `a_{rho,0}` per ray.
    pub start: Vec<Rational>,
    /// `a_{rho,1}` per ray.
    pub end: Vec<Rational>,
}

impl DeformationPath {
    pub fn coeff_at(&self, ray: usize, s: &Rational) -> Rational {
        (Rational::one() - s) * &self.start[ray] + s * &self.end[ray]
    }

    pub fn divisor_at(&self, s: &Rational) -> DivisorData {
        let coeffs = (0..self.fan.num_rays()).map(|i| self.coeff_at(i, s)).collect();
        DivisorData::from_coeffs(&self.fan, coeffs).expect("smooth fan")
    }

    /// Builds the family with explicit `eps0` and `R`, without validating them.
    pub fn with_parameters(
        fan: &Arc<Fan>,
        x: &RationalVector,
        ample: &[BigInt],
        eps0: Rational,
        r: u64,
    ) -> Self {
        let rr = Rational::from_integer(BigInt::from(r));
        let mut start = Vec::new();
        let mut end = Vec::new();
        for (v, a) in fan.rays().iter().zip(ample) {
            let t = x.pair(v);
            let a = Rational::from_integer(a.clone());
            start.push(&t + (&rr + &eps0) * &a);
            end.push(Rational::from_integer(floor_int(&t) + BigInt::one()) + &rr * &a);
        }
        Self { fan: fan.clone(), base: x.clone(), ample: ample.to_vec(), eps0, r, start, end }
    }
}

pub const DEFAULT_R_BOUND: u64 = 64;

pub fn build_deformation_path(fan: &Arc<Fan>, x: &RationalVector, ample: &DivisorData) -> Result<DeformationPath> {
    build_deformation_path_bounded(fan, x, ample, DEFAULT_R_BOUND)
}

pub fn build_deformation_path_bounded(
    fan: &Arc<Fan>,
    x: &RationalVector,
    ample: &DivisorData,
    r_bound: u64,
) -> Result<DeformationPath> {
    let a = ample
        .int_coeffs()
        .ok_or_else(|| TcccError::PathConstruction("reference divisor is not integral".into()))?;
    if a.iter().any(|c| !c.is_positive()) {
        return Err(TcccError::PathConstruction("reference divisor needs positive coefficients".into()));
    }
    if !ample.is_strictly_convex() {
        return Err(TcccError::PathConstruction("reference divisor is not ample".into()));
    }
    // eps0 = min_rho (floor(t) + 1 - t) / (2 a_rho), t = <x, v_rho>.
    let eps0 = fan
        .rays()
        .iter()
        .zip(&a)
        .map(|(v, ar)| {
            let t = x.pair(v);
            let gap = Rational::from_integer(floor_int(&t) + BigInt::one()) - t;
            gap / Rational::from_integer(ar * BigInt::from(2))
        })
        .min()
        .expect("fan has rays");
    let probe = probe_divisor(fan, x);
    let r = (1..=r_bound)
        .find(|&r| probe.add(&ample.scale(&int(r as i64))).is_strictly_convex())
        .ok_or_else(|| TcccError::PathConstruction(format!("no R <= {r_bound} makes D_[x] + R A ample")))?;
    Ok(DeformationPath::with_parameters(fan, x, &a, eps0, r))
}

/// Lattice coordinates as machine integers, for reporting.
pub fn small_ints(v: &[BigInt]) -> Vec<i64> {
    v.iter().map(|x| x.to_i64().unwrap_or(i64::MAX)).collect()
}
