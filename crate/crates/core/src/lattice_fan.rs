//! Lattices `M`, `N` and smooth complete simplicial fans in `N_R`.
//!
//! Cones are stored by sorted ray-index subsets. The global ray order fixed at
//! construction orients every cone, which is what the sign rule of the shard
//! complexes relies on.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use num::{BigInt, Integer, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Result, TcccError};
use crate::linalg::{determinant, dot, smith_normal_form, solve, Rational};
use crate::polyhedron::{self, Constraint};

/// A vector of the lattice `N` (or `M`), coordinates in arbitrary precision.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector(pub Vec<BigInt>);

/// A point of `M_R` or `N_R` with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalVector(pub Vec<Rational>);

impl LatticeVector {
    pub fn from_i64(xs: &[i64]) -> Self {
        Self(xs.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_primitive(&self) -> bool {
        let g = self.0.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        g.is_one()
    }

    pub fn to_rational(&self) -> RationalVector {
        RationalVector(self.0.iter().map(|x| Rational::from_integer(x.clone())).collect())
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|x| -x).collect())
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl RationalVector {
    pub fn zero(n: usize) -> Self {
        Self(vec![Rational::zero(); n])
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        Self(xs.iter().map(|&x| crate::linalg::int(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// The pairing `<self, v>` with a lattice vector of the dual lattice.
    pub fn pair(&self, v: &LatticeVector) -> Rational {
        self.0
            .iter()
            .zip(&v.0)
            .fold(Rational::zero(), |acc, (x, y)| acc + x * Rational::from_integer(y.clone()))
    }

    pub fn dot(&self, other: &RationalVector) -> Rational {
        dot(&self.0, &other.0)
    }

    pub fn add(&self, other: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: &Rational) -> RationalVector {
        RationalVector(self.0.iter().map(|a| a * s).collect())
    }

    pub fn neg(&self) -> RationalVector {
        RationalVector(self.0.iter().map(|a| -a).collect())
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    pub fn to_lattice(&self) -> Option<LatticeVector> {
        self.is_integral().then(|| LatticeVector(self.0.iter().map(|x| x.to_integer()).collect()))
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(crate::linalg::format_rational).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A simplicial cone of a fan, identified by its sorted ray indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cone {
    pub rays: Vec<usize>,
    pub generators: Vec<LatticeVector>,
}

impl Cone {
    pub fn dim(&self) -> usize {
        self.rays.len()
    }

    pub fn is_zero_cone(&self) -> bool {
        self.rays.is_empty()
    }
}

/// H- and (for smooth cones) V-representation of the dual cone in `M_R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualCone {
    /// `x` lies in the dual cone iff `<x, n> >= 0` for every normal `n`.
    pub normals: Vec<LatticeVector>,
    /// Dual basis generators, present for full-dimensional smooth cones.
    pub generators: Vec<LatticeVector>,
}

impl DualCone {
    pub fn contains(&self, x: &RationalVector) -> bool {
        self.normals.iter().all(|n| !x.pair(n).is_negative())
    }
}

/// Builds a cone from explicit generators, without reference to a fan.
pub fn cone_from_generators(generators: &[LatticeVector]) -> Cone {
    Cone { rays: (0..generators.len()).collect(), generators: generators.to_vec() }
}

fn generator_matrix(c: &Cone) -> Vec<Vec<BigInt>> {
    c.generators.iter().map(|g| g.0.clone()).collect()
}

/// Checks linear independence and whether the generators extend to a lattice
/// basis (all invariant factors equal to one).
fn simplicial_and_smooth(c: &Cone) -> (bool, bool) {
    if c.generators.is_empty() {
        return (true, true);
    }
    let n = c.generators[0].dim();
    let snf = smith_normal_form(&generator_matrix(c), n);
    let simplicial = snf.rank() == c.dim();
    let smooth = simplicial && snf.diag.iter().take(c.dim()).all(|d| d.abs().is_one());
    (simplicial, smooth)
}

/// The dual cone `{x : <x, y> >= 0 for all y in c}`.
pub fn dual_cone(c: &Cone) -> Result<DualCone> {
    let (simplicial, smooth) = simplicial_and_smooth(c);
    if !simplicial {
        return Err(TcccError::UnsupportedCone(format!("{:?} is not simplicial", c.rays)));
    }
    if !smooth {
        return Err(TcccError::UnsupportedCone(format!("{:?} is not smooth", c.rays)));
    }
    let normals = c.generators.clone();
    let mut generators = Vec::new();
    if let Some(first) = c.generators.first() {
        if c.dim() == first.dim() {
            // Rows of the inverse transpose: <u_i, v_j> = delta_ij.
            let n = c.dim();
            let g: Vec<Vec<Rational>> = c.generators.iter().map(|v| v.to_rational().0).collect();
            for i in 0..n {
                let rhs: Vec<Rational> =
                    (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect();
                let u = solve(&g, &rhs).expect("smooth cone is invertible");
                generators.push(RationalVector(u).to_lattice().expect("unimodular inverse"));
            }
        }
    }
    Ok(DualCone { normals, generators })
}

/// All faces of a simplicial cone: every subset of its generators.
pub fn faces(c: &Cone) -> Vec<Cone> {
    let k = c.dim();
    let mut out = Vec::with_capacity(1 << k);
    for mask in 0u32..(1u32 << k) {
        let idx: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).collect();
        out.push(Cone {
            rays: idx.iter().map(|&i| c.rays[i]).collect(),
            generators: idx.iter().map(|&i| c.generators[i].clone()).collect(),
        });
    }
    out.sort_by(|a, b| a.dim().cmp(&b.dim()).then(a.rays.cmp(&b.rays)));
    out
}

/// Serialized fan description.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FanSpec {
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
}

/// A simplicial fan, graded by cone dimension. Immutable once built.
#[derive(Debug, Clone)]
pub struct Fan {
    pub name: String,
    dim: usize,
    rays: Vec<LatticeVector>,
    /// `cones[k]` lists the k-dimensional cones, sorted by ray indices.
    cones: Vec<Vec<Cone>>,
    index: HashMap<Vec<usize>, (usize, usize)>,
    max_cones: Vec<usize>,
}

impl Fan {
    /// Builds a fan from rays and maximal cones; all faces are derived.
    pub fn new(dim: usize, rays: Vec<LatticeVector>, max_cones: Vec<Vec<usize>>) -> Result<Self> {
        if dim == 0 {
            return Err(TcccError::InvalidFan("dimension must be positive".into()));
        }
        for (i, r) in rays.iter().enumerate() {
            if r.dim() != dim {
                return Err(TcccError::InvalidFan(format!("ray {i} has wrong dimension")));
            }
            if r.is_zero() || !r.is_primitive() {
                return Err(TcccError::InvalidFan(format!("ray {i} = {r} is not primitive")));
            }
        }
        let mut seen: HashMap<Vec<usize>, ()> = HashMap::new();
        let mut cones: Vec<Vec<Cone>> = vec![Vec::new(); dim + 1];
        for mc in &max_cones {
            let mut mc = mc.clone();
            mc.sort_unstable();
            mc.dedup();
            if mc.iter().any(|&i| i >= rays.len()) {
                return Err(TcccError::InvalidFan(format!("cone {mc:?} references a missing ray")));
            }
            if mc.len() > dim {
                return Err(TcccError::InvalidFan(format!("cone {mc:?} is not simplicial")));
            }
            let cone = Cone { generators: mc.iter().map(|&i| rays[i].clone()).collect(), rays: mc };
            if !simplicial_and_smooth(&cone).0 {
                return Err(TcccError::InvalidFan(format!(
                    "cone {:?} has linearly dependent generators",
                    cone.rays
                )));
            }
            for f in faces(&cone) {
                if seen.insert(f.rays.clone(), ()).is_none() {
                    cones[f.dim()].push(f);
                }
            }
        }
        if cones[0].is_empty() {
            cones[0].push(Cone { rays: vec![], generators: vec![] });
        }
        for level in cones.iter_mut() {
            level.sort_by(|a, b| a.rays.cmp(&b.rays));
        }
        let index = cones
            .iter()
            .enumerate()
            .flat_map(|(k, level)| level.iter().enumerate().map(move |(i, c)| (c.rays.clone(), (k, i))))
            .collect();
        let mut fan = Fan { name: String::new(), dim, rays, cones, index, max_cones: Vec::new() };
        fan.max_cones = (0..fan.cones[dim].len()).collect();
        fan.check_interiors_disjoint()?;
        Ok(fan)
    }

    pub fn from_spec(spec: &FanSpec) -> Result<Self> {
        let rays = spec.rays.iter().map(|r| LatticeVector::from_i64(r)).collect();
        Self::new(spec.dim, rays, spec.max_cones.clone())
    }

    pub fn to_spec(&self) -> FanSpec {
        use num::ToPrimitive;
        FanSpec {
            dim: self.dim,
            rays: self.rays.iter().map(|r| r.0.iter().map(|x| x.to_i64().unwrap_or(0)).collect()).collect(),
            max_cones: self.maximal_cones().iter().map(|c| c.rays.clone()).collect(),
        }
    }

    /// Reads a fan file or resolves a built-in name (`P1`, `P2`, `P1xP1`, `F2`, `F3`).
    pub fn load(name_or_path: &str) -> Result<Self> {
        if let Some(f) = Self::builtin(name_or_path) {
            return Ok(f);
        }
        let text = std::fs::read_to_string(Path::new(name_or_path)).map_err(|e| {
            TcccError::Input(format!(
                "{name_or_path:?} is neither a built-in fan ({}) nor a readable file: {e}",
                Self::builtin_names().join(", ")
            ))
        })?;
        let spec: FanSpec = serde_json::from_str(&text)?;
        let mut fan = Self::from_spec(&spec)?;
        fan.name = name_or_path.to_string();
        Ok(fan)
    }

    pub fn builtin(name: &str) -> Option<Self> {
        let (dim, rays, cones): (usize, Vec<Vec<i64>>, Vec<Vec<usize>>) = match name {
            "P1" => (1, vec![vec![1], vec![-1]], vec![vec![0], vec![1]]),
            "P2" => (
                2,
                vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
                vec![vec![0, 1], vec![1, 2], vec![0, 2]],
            ),
            "P1xP1" => (
                2,
                vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]],
                vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]],
            ),
            "F2" => (
                2,
                vec![vec![1, 0], vec![0, 1], vec![-1, -2], vec![0, -1]],
                vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]],
            ),
            "F3" => (
                2,
                vec![vec![1, 0], vec![0, 1], vec![-1, -3], vec![0, -1]],
                vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]],
            ),
            _ => return None,
        };
        let rays = rays.iter().map(|r| LatticeVector::from_i64(r)).collect();
        let mut fan = Self::new(dim, rays, cones).expect("built-in fans are valid");
        fan.name = name.to_string();
        Some(fan)
    }

    pub fn builtin_names() -> &'static [&'static str] {
        &["P1", "P2", "P1xP1", "F2", "F3"]
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn ray(&self, i: usize) -> &LatticeVector {
        &self.rays[i]
    }

    /// Cones of dimension `k`.
    pub fn cones_of_dim(&self, k: usize) -> &[Cone] {
        self.cones.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn all_cones(&self) -> impl Iterator<Item = &Cone> {
        self.cones.iter().flatten()
    }

    pub fn maximal_cones(&self) -> &[Cone] {
        &self.cones[self.dim]
    }

    /// Position of a cone (given by sorted ray indices) within its dimension level.
    pub fn cone_index(&self, rays: &[usize]) -> Option<usize> {
        self.index.get(rays).map(|&(_, i)| i)
    }

    pub fn contains_cone(&self, rays: &[usize]) -> bool {
        self.index.contains_key(rays)
    }

    /// Generator matrix rows for a cone.
    fn rational_generators(c: &Cone) -> Vec<Vec<Rational>> {
        c.generators.iter().map(|g| g.to_rational().0).collect()
    }

    /// Coefficients of `v` in the generators of a full-dimensional cone.
    pub fn cone_coordinates(&self, c: &Cone, v: &RationalVector) -> Option<Vec<Rational>> {
        if c.dim() != self.dim {
            return None;
        }
        let g = Self::rational_generators(c);
        // Solve sum_i lambda_i g_i = v, i.e. G^T lambda = v.
        let gt: Vec<Vec<Rational>> = (0..self.dim).map(|r| g.iter().map(|row| row[r].clone()).collect()).collect();
        solve(&gt, &v.0)
    }

    /// Index of a maximal cone containing `v`, if any.
    pub fn locate(&self, v: &RationalVector) -> Option<usize> {
        self.maximal_cones().iter().position(|c| {
            self.cone_coordinates(c, v).is_some_and(|l| l.iter().all(|x| !x.is_negative()))
        })
    }

    /// The smallest cone of the fan containing `v`.
    pub fn minimal_cone_containing(&self, v: &RationalVector) -> Option<Cone> {
        let mi = self.locate(v)?;
        let c = &self.maximal_cones()[mi];
        let lam = self.cone_coordinates(c, v)?;
        let rays: Vec<usize> =
            c.rays.iter().zip(&lam).filter(|(_, l)| l.is_positive()).map(|(&r, _)| r).collect();
        let (k, i) = self.index[&rays];
        Some(self.cones[k][i].clone())
    }

    pub fn is_smooth(&self) -> bool {
        self.maximal_cones().iter().all(|c| {
            if c.dim() != self.dim {
                return simplicial_and_smooth(c).1;
            }
            let d = determinant(&Self::rational_generators(c));
            d == Rational::one() || d == -Rational::one()
        })
    }

    /// Maximal cones containing a given wall, as indices into `maximal_cones()`.
    fn cofaces_of(&self, wall: &Cone) -> Vec<usize> {
        self.maximal_cones()
            .iter()
            .enumerate()
            .filter(|(_, c)| wall.rays.iter().all(|r| c.rays.contains(r)))
            .map(|(i, _)| i)
            .collect()
    }

    /// Two maximal cones per wall, and all `3^n` sign vectors located.
    pub fn is_complete(&self) -> bool {
        if self.maximal_cones().iter().any(|c| c.dim() != self.dim) {
            return false;
        }
        if self.maximal_cones().is_empty() {
            return false;
        }
        let two_per_wall =
            self.cones_of_dim(self.dim - 1).iter().all(|w| self.cofaces_of(w).len() == 2);
        two_per_wall && sign_vectors(self.dim).iter().all(|v| self.locate(v).is_some())
    }

    /// Each wall with its two incident maximal cones (indices into `maximal_cones()`).
    pub fn wall_pairs(&self) -> Result<Vec<(Cone, usize, usize)>> {
        self.cones_of_dim(self.dim - 1)
            .iter()
            .map(|w| match self.cofaces_of(w)[..] {
                [a, b] => Ok((w.clone(), a, b)),
                ref other => Err(TcccError::Incomplete(format!(
                    "wall {:?} bounds {} maximal cones",
                    w.rays,
                    other.len()
                ))),
            })
            .collect()
    }

    /// For a wall `(tau, s1, s2)`, the ray of `s2` not in `tau`.
    pub fn opposite_ray(&self, wall: &Cone, cone: usize) -> usize {
        *self.maximal_cones()[cone].rays.iter().find(|r| !wall.rays.contains(r)).unwrap()
    }

    /// Full-dimensional cones must have pairwise disjoint interiors.
    fn check_interiors_disjoint(&self) -> Result<()> {
        let full: Vec<&Cone> = self.maximal_cones().iter().filter(|c| c.dim() == self.dim).collect();
        for (i, a) in full.iter().enumerate() {
            for b in &full[i + 1..] {
                // x in int(a): x = sum l_i a_i with l_i > 0; x in b: b-coordinates >= 0.
                let n = self.dim;
                let mut cs = Vec::new();
                // Variables: lambda (n of them); x = A^T lambda.
                let ga = Self::rational_generators(a);
                let gb = Self::rational_generators(b);
                let gbt: Vec<Vec<Rational>> =
                    (0..n).map(|r| gb.iter().map(|row| row[r].clone()).collect()).collect();
                let inv = invert(&gbt).expect("simplicial full cone is invertible");
                for k in 0..n {
                    let mut e = vec![Rational::zero(); n];
                    e[k] = Rational::one();
                    cs.push(Constraint::gt(&e, Rational::zero()));
                }
                // mu = inv * A^T lambda >= 0
                for row in &inv {
                    let coeffs: Vec<Rational> = (0..n)
                        .map(|l| (0..n).fold(Rational::zero(), |acc, r| acc + &row[r] * &ga[l][r]))
                        .collect();
                    cs.push(Constraint::ge(&coeffs, Rational::zero()));
                }
                if polyhedron::is_feasible(n, &cs) {
                    return Err(TcccError::InvalidFan(format!(
                        "maximal cones {:?} and {:?} overlap",
                        a.rays, b.rays
                    )));
                }
            }
        }
        Ok(())
    }
}

fn invert(a: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    let cols: Option<Vec<Vec<Rational>>> = (0..n)
        .map(|i| {
            let e: Vec<Rational> = (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect();
            solve(a, &e)
        })
        .collect();
    let cols = cols?;
    Some((0..n).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect())
}

/// All nonzero vectors with entries in {-1, 0, 1}.
pub fn sign_vectors(n: usize) -> Vec<RationalVector> {
    let mut out = Vec::new();
    let total = 3usize.pow(n as u32);
    for code in 0..total {
        let mut c = code;
        let v: Vec<i64> = (0..n)
            .map(|_| {
                let d = (c % 3) as i64 - 1;
                c /= 3;
                d
            })
            .collect();
        if v.iter().any(|&x| x != 0) {
            out.push(RationalVector::from_ints(&v));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(xs: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(xs)
    }

    #[test]
    fn dual_of_orthant_and_zero_cone() {
        let c = cone_from_generators(&[lv(&[1, 0]), lv(&[0, 1])]);
        let d = dual_cone(&c).unwrap();
        assert_eq!(d.normals, vec![lv(&[1, 0]), lv(&[0, 1])]);
        let z = cone_from_generators(&[]);
        assert!(dual_cone(&z).unwrap().normals.is_empty());
    }

    #[test]
    fn dual_of_p2_cone_brute_force() {
        let c = cone_from_generators(&[lv(&[0, 1]), lv(&[-1, -1])]);
        let d = dual_cone(&c).unwrap();
        // Rational grid oracle: x in dual iff <x, g> >= 0 for both generators.
        for a in -6..=6 {
            for b in -6..=6 {
                let x = RationalVector(vec![crate::linalg::rat(a, 2), crate::linalg::rat(b, 3)]);
                let direct = c.generators.iter().all(|g| !x.pair(g).is_negative());
                assert_eq!(d.contains(&x), direct);
            }
        }
        // Dual generators pair nonnegatively with both primal generators.
        for u in &d.generators {
            for g in &c.generators {
                assert!(!u.to_rational().pair(g).is_negative());
            }
        }
        // x2 >= 0 and -x1 - x2 >= 0
        assert_eq!(d.normals, vec![lv(&[0, 1]), lv(&[-1, -1])]);
    }

    #[test]
    fn non_smooth_cone_rejected() {
        let c = cone_from_generators(&[lv(&[1, 0]), lv(&[1, 2])]);
        assert!(matches!(dual_cone(&c), Err(TcccError::UnsupportedCone(_))));
        let dep = cone_from_generators(&[lv(&[1, 0]), lv(&[-1, 0])]);
        assert!(dual_cone(&dep).is_err());
    }

    #[test]
    fn face_enumeration() {
        let c = cone_from_generators(&[lv(&[1, 0]), lv(&[0, 1])]);
        assert_eq!(faces(&c).len(), 4);
        let r = cone_from_generators(&[lv(&[1, 0])]);
        assert_eq!(faces(&r).len(), 2);
        let p2 = Fan::builtin("P2").unwrap();
        let m = p2.maximal_cones().iter().find(|c| c.rays == vec![1, 2]).unwrap();
        // Subset enumeration oracle: every subset of a simplicial cone's rays.
        assert_eq!(faces(m).len(), 1 << m.dim());
        for f in faces(m) {
            assert!(p2.contains_cone(&f.rays));
        }
    }

    #[test]
    fn builtin_fans_are_smooth_and_complete() {
        for name in Fan::builtin_names() {
            let f = Fan::builtin(name).unwrap();
            assert!(f.is_smooth(), "{name}");
            assert!(f.is_complete(), "{name}");
            if f.dim() == 2 {
                assert_eq!(f.cones_of_dim(1).len(), f.cones_of_dim(2).len());
            }
        }
    }

    #[test]
    fn literal_f3_ray_list_is_not_smooth() {
        // (1,0),(0,1),(-1,-3),(-1,0) in cyclic order: cone on (-1,0),(-1,-3) has index 3.
        let rays = vec![lv(&[1, 0]), lv(&[0, 1]), lv(&[-1, -3]), lv(&[-1, 0])];
        let f = Fan::new(2, rays, vec![vec![0, 1], vec![1, 3], vec![2, 3], vec![0, 2]]).unwrap();
        assert!(f.is_complete());
        assert!(!f.is_smooth());
    }

    #[test]
    fn non_unimodular_cone_detected() {
        let rays = vec![lv(&[1, 0]), lv(&[1, 2])];
        let f = Fan::new(2, rays, vec![vec![0, 1]]).unwrap();
        assert!(!f.is_smooth());
    }

    #[test]
    fn incomplete_fan_detected() {
        let rays = vec![lv(&[1, 0]), lv(&[0, 1]), lv(&[-1, -1])];
        let f = Fan::new(2, rays, vec![vec![0, 1], vec![1, 2]]).unwrap();
        assert!(!f.is_complete());
        assert!(f.wall_pairs().is_err());
        let p1 = Fan::builtin("P1").unwrap();
        assert!(p1.is_complete());
    }

    #[test]
    fn wall_counts() {
        assert_eq!(Fan::builtin("P1").unwrap().wall_pairs().unwrap().len(), 1);
        assert_eq!(Fan::builtin("P2").unwrap().wall_pairs().unwrap().len(), 3);
        assert_eq!(Fan::builtin("F3").unwrap().wall_pairs().unwrap().len(), 4);
    }

    #[test]
    fn f3_sign_vectors_located() {
        let f = Fan::builtin("F3").unwrap();
        let vs = sign_vectors(2);
        assert_eq!(vs.len(), 8);
        for v in &vs {
            assert!(f.locate(v).is_some(), "{v}");
        }
        assert!(f.locate(&RationalVector::zero(2)).is_some());
    }

    #[test]
    fn overlapping_cones_rejected() {
        let rays = vec![lv(&[1, 0]), lv(&[0, 1]), lv(&[1, 1])];
        assert!(Fan::new(2, rays, vec![vec![0, 1], vec![0, 2]]).is_err());
    }

    #[test]
    fn double_dual_recovers_cone() {
        for name in Fan::builtin_names() {
            let f = Fan::builtin(name).unwrap();
            for c in f.maximal_cones() {
                let d = dual_cone(c).unwrap();
                let dd = dual_cone(&cone_from_generators(&d.generators)).unwrap();
                // generators of c lie in the dual of the dual, and vice versa
                for g in &c.generators {
                    assert!(dd.normals.iter().all(|n| !g.to_rational().pair(n).is_negative()));
                }
                for n in &dd.generators {
                    assert!(c.generators.contains(n));
                }
            }
        }
    }
}
