//! Twisted polytope sheaves `P(chi)`.
//!
//! `P(chi)` is the complex whose degree `-n + k` term is the sum, over
//! `k`-dimensional cones `sigma`, of the constant sheaf on the closed shard
//! `Q(sigma) = chi_sigma + sigma^dual = { x : <x, v_rho> >= a_rho, rho in sigma }`.
//! The differential adds one ray; adding the ray in position `j` of the
//! enlarged cone (1-based, global ray order) carries the sign `(-1)^(j-1)`.
//!
//! Since each shard is cut out by the ray inequalities alone, the stalk at `x`
//! only depends on `S(x) = { rho : <x, v_rho> >= a_rho }`: it is the augmented
//! cochain complex of the subfan of cones with all rays in `S(x)`.

use std::collections::HashMap;
use std::sync::Arc;

use num::{BigInt, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arrangement::{build_arrangement, ArrangementComplex, BoundingBox, Hyperplane, Region, Side};
use crate::cellular::{hom_complex, CellularSheaf, GradedDims, Matrix, SheafComplex};
use crate::divisors::{ample_polytope, DivisorData};
use crate::error::{Result, TcccError};
use crate::lattice_fan::{Cone, Fan, LatticeVector, RationalVector};
use crate::linalg::{floor_int, int, sparse_rank_int, Rational, SparseColumn};
use crate::polyhedron::{self, Constraint, Relation};

/// A closed shard `Q(sigma, chi_sigma)`.
#[derive(Debug, Clone)]
pub struct Shard {
    pub cone: Cone,
    pub apex: RationalVector,
}

impl Shard {
    pub fn region(&self, d: &DivisorData) -> Region {
        self.cone.rays.iter().fold(Region::whole(), |r, &i| {
            r.with(d.fan().ray(i).clone(), d.coeff(i).clone(), Side::Ge)
        })
    }
}

/// Sign of the incidence `sigma -> tau`, where `tau` adds one ray to `sigma`.
pub fn incidence_sign(sigma: &[usize], tau: &[usize]) -> i64 {
    let j = tau.iter().position(|r| !sigma.contains(r)).expect("tau has an extra ray");
    if j % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The signed shard complex of a divisor.
#[derive(Debug, Clone)]
pub struct ShardComplex {
    divisor: DivisorData,
    /// `shards[k]`: shards of the `k`-dimensional cones, in degree `-n + k`.
    shards: Vec<Vec<Shard>>,
}

/// Builds `P(chi)` and checks `d^2 = 0` over every codimension-two incidence.
pub fn build_p(d: &DivisorData) -> Result<ShardComplex> {
    let fan = d.fan();
    let n = fan.dim();
    let shards: Vec<Vec<Shard>> = (0..=n)
        .map(|k| {
            fan.cones_of_dim(k)
                .iter()
                .map(|c| Shard {
                    cone: c.clone(),
                    apex: if c.rays.is_empty() { RationalVector::zero(n) } else { d.apex(&c.rays).clone() },
                })
                .collect()
        })
        .collect();
    check_d_squared(fan)?;
    Ok(ShardComplex { divisor: d.clone(), shards })
}

fn check_d_squared(fan: &Fan) -> Result<()> {
    for k in 0..fan.dim().saturating_sub(1) {
        for s in fan.cones_of_dim(k) {
            for t in fan.cones_of_dim(k + 2) {
                if !s.rays.iter().all(|r| t.rays.contains(r)) {
                    continue;
                }
                let mut total = 0;
                for &r in t.rays.iter().filter(|r| !s.rays.contains(r)) {
                    let mid: Vec<usize> = t.rays.iter().copied().filter(|&x| x != r).collect();
                    if fan.contains_cone(&mid) {
                        total += incidence_sign(&s.rays, &mid) * incidence_sign(&mid, &t.rays);
                    }
                }
                if total != 0 {
                    return Err(TcccError::Internal(format!("d^2 != 0 on {:?} -> {:?}", s.rays, t.rays)));
                }
            }
        }
    }
    Ok(())
}

impl ShardComplex {
    pub fn divisor(&self) -> &DivisorData {
        &self.divisor
    }

    pub fn shards(&self, k: usize) -> &[Shard] {
        &self.shards[k]
    }

    /// Number of shards in each degree `-n..=0`.
    pub fn counts(&self) -> Vec<usize> {
        self.shards.iter().map(Vec::len).collect()
    }
}

/// Rays whose shard inequality holds at `x`.
fn active_rays(d: &DivisorData, x: &RationalVector) -> Vec<bool> {
    d.fan().rays().iter().enumerate().map(|(i, v)| &x.pair(v) >= d.coeff(i)).collect()
}

/// Cohomology of the augmented cochain complex of the subfan on `active`,
/// with cones of dimension `k` placed in degree `-n + k`.
fn nerve_stalk(fan: &Fan, active: &[bool]) -> GradedDims {
    let n = fan.dim();
    let basis: Vec<Vec<&Cone>> = (0..=n)
        .map(|k| fan.cones_of_dim(k).iter().filter(|c| c.rays.iter().all(|&r| active[r])).collect())
        .collect();
    let index: Vec<HashMap<&[usize], usize>> =
        basis.iter().map(|b| b.iter().enumerate().map(|(i, c)| (c.rays.as_slice(), i)).collect()).collect();
    let mut ranks = vec![0usize; n + 1];
    for k in 0..n {
        if basis[k].is_empty() || basis[k + 1].is_empty() {
            continue;
        }
        let cols: Vec<SparseColumn<i64>> = basis[k]
            .iter()
            .map(|s| {
                let mut col: SparseColumn<i64> = Vec::new();
                for r in (0..fan.num_rays()).filter(|r| active[*r] && !s.rays.contains(r)) {
                    let mut t = s.rays.clone();
                    t.push(r);
                    t.sort_unstable();
                    if let Some(&row) = index[k + 1].get(t.as_slice()) {
                        col.push((row, incidence_sign(&s.rays, &t)));
                    }
                }
                col.sort_unstable();
                col
            })
            .collect();
        ranks[k] = sparse_rank_int(&cols, basis[k + 1].len());
    }
    let mut out = GradedDims::new();
    for k in 0..=n {
        let r_in = if k > 0 { ranks[k - 1] } else { 0 };
        out.add(k as i64 - n as i64, basis[k].len() - ranks[k] - r_in);
    }
    out
}

/// Stalk of `P(chi)` at `x`, from the shard nerve.
pub fn stalk_p(d: &DivisorData, x: &RationalVector) -> GradedDims {
    nerve_stalk(d.fan(), &active_rays(d, x))
}

/// Facet hyperplanes `<x, v_rho> = a_rho` of all shards, deduplicated.
pub fn required_hyperplanes(d: &DivisorData) -> Vec<Hyperplane> {
    let mut out: Vec<Hyperplane> = Vec::new();
    for (i, v) in d.fan().rays().iter().enumerate() {
        let h = Hyperplane::new(v, d.coeff(i).clone()).expect("rays are nonzero");
        if !out.contains(&h) {
            out.push(h);
        }
    }
    out
}

/// Closed bounding box of the vertex set, as (lo, hi).
pub fn support_bounds(d: &DivisorData) -> (Vec<Rational>, Vec<Rational>) {
    BoundingBox::hull_bounds(d.vertices())
}

/// The default open box for `P(chi)`: the vertex box pushed out by one.
pub fn support_box(d: &DivisorData) -> BoundingBox {
    let (lo, hi) = support_bounds(d);
    BoundingBox::inflated(&lo, &hi, &int(1)).expect("inflated box is nonempty")
}

/// Arrangement of the shard facets of `chi` over its support box.
pub fn default_arrangement(d: &DivisorData) -> Result<Arc<ArrangementComplex>> {
    Ok(Arc::new(build_arrangement(&required_hyperplanes(d), &support_box(d))?))
}

/// Realizes `P(chi)` as a complex of cellular sheaves on `arr`, which must
/// contain every shard facet hyperplane that meets its box.
pub fn to_cellular(d: &DivisorData, arr: &Arc<ArrangementComplex>) -> Result<SheafComplex> {
    let fan = d.fan();
    let n = fan.dim();
    for h in required_hyperplanes(d) {
        if !arr.hyperplanes().contains(&h) && hyperplane_meets_box(&h, arr.bbox()) {
            return Err(TcccError::RefinementRequired(format!("missing shard facet {h:?}")));
        }
    }
    let ncells = arr.num_cells();
    // basis[k][c]: indices into cones_of_dim(k) whose shard contains cell c.
    let active: Vec<Vec<bool>> = arr.cells().iter().map(|c| active_rays(d, &c.sample)).collect();
    let basis: Vec<Vec<Vec<usize>>> = (0..=n)
        .map(|k| {
            (0..ncells)
                .map(|c| {
                    fan.cones_of_dim(k)
                        .iter()
                        .enumerate()
                        .filter(|(_, s)| s.rays.iter().all(|&r| active[c][r]))
                        .map(|(i, _)| i)
                        .collect()
                })
                .collect()
        })
        .collect();
    let terms: Vec<CellularSheaf> = (0..=n)
        .map(|k| {
            let dims: Vec<usize> = basis[k].iter().map(Vec::len).collect();
            let mut maps = HashMap::new();
            for c in 0..ncells {
                if dims[c] == 0 {
                    continue;
                }
                for e in arr.covers(c) {
                    if dims[e] == 0 {
                        continue;
                    }
                    let mut m = Matrix::zeros(dims[e], dims[c]);
                    for (row, s) in basis[k][e].iter().enumerate() {
                        let col = basis[k][c].iter().position(|t| t == s).expect("shards are closed");
                        m.set(row, col, int(1));
                    }
                    maps.insert((c, e), m);
                }
            }
            CellularSheaf::from_parts(arr, dims, maps)
        })
        .collect();
    let diffs: Vec<Vec<Matrix>> = (0..n)
        .map(|k| {
            let lower = fan.cones_of_dim(k);
            let upper = fan.cones_of_dim(k + 1);
            (0..ncells)
                .map(|c| {
                    let mut m = Matrix::zeros(basis[k + 1][c].len(), basis[k][c].len());
                    for (col, &si) in basis[k][c].iter().enumerate() {
                        let s = &lower[si].rays;
                        for (row, &ti) in basis[k + 1][c].iter().enumerate() {
                            let t = &upper[ti].rays;
                            if s.iter().all(|r| t.contains(r)) {
                                m.set(row, col, int(incidence_sign(s, t)));
                            }
                        }
                    }
                    m
                })
                .collect()
        })
        .collect();
    Ok(SheafComplex::from_parts(arr, -(n as i64), terms, diffs))
}

fn hyperplane_meets_box(h: &Hyperplane, b: &BoundingBox) -> bool {
    // min and max of <x, n> over the closed box.
    let (mut lo, mut hi) = (Rational::zero(), Rational::zero());
    for (k, c) in h.normal.0.iter().enumerate() {
        let c = Rational::from_integer(c.clone());
        let (a, z) = (&c * &b.lo[k], &c * &b.hi[k]);
        if a < z {
            lo += a;
            hi += z;
        } else {
            lo += z;
            hi += a;
        }
    }
    lo < h.offset && h.offset < hi
}

/// Whether `x` lies in the convex hull of the vertices of `chi`.
pub fn in_vertex_hull(d: &DivisorData, x: &RationalVector) -> bool {
    let verts = d.vertices();
    let m = verts.len();
    let n = x.dim();
    let mut cons = Vec::new();
    for k in 0..n {
        cons.push(Constraint::new(verts.iter().map(|v| v.0[k].clone()).collect(), Relation::Eq, x.0[k].clone()));
    }
    cons.push(Constraint::new(vec![int(1); m], Relation::Eq, int(1)));
    for i in 0..m {
        let mut e = vec![Rational::zero(); m];
        e[i] = int(1);
        cons.push(Constraint::ge(&e, Rational::zero()));
    }
    polyhedron::is_feasible(m, &cons)
}

/// Result of sweeping all cell sample points of the default arrangement.
#[derive(Debug, Clone, Serialize)]
pub struct DegreeBoundReport {
    pub cells: usize,
    pub out_of_range: Vec<String>,
    pub outside_hull: Vec<String>,
}

impl DegreeBoundReport {
    pub fn ok(&self) -> bool {
        self.out_of_range.is_empty() && self.outside_hull.is_empty()
    }
}

/// Sweeps every cell sample: stalks must sit in degrees `[-n, 0]` and vanish
/// off the vertex hull.
pub fn degree_bound_report(d: &DivisorData) -> Result<DegreeBoundReport> {
    let arr = default_arrangement(d)?;
    let n = d.fan().dim() as i64;
    let mut rep = DegreeBoundReport { cells: arr.num_cells(), out_of_range: Vec::new(), outside_hull: Vec::new() };
    for c in arr.cells() {
        let s = stalk_p(d, &c.sample);
        if s.is_zero() {
            continue;
        }
        if s.min_degree().unwrap() < -n || s.max_degree().unwrap() > 0 {
            rep.out_of_range.push(format!("{} -> {}", c.sample, s));
        }
        if !in_vertex_hull(d, &c.sample) {
            rep.outside_hull.push(format!("{} -> {}", c.sample, s));
        }
    }
    Ok(rep)
}

pub fn degree_bound_check(d: &DivisorData) -> Result<bool> {
    Ok(degree_bound_report(d)?.ok())
}

/// For ample `D`: `P(-D)` is `C` in degree 0 exactly on the closed polytope
/// `-cl(Delta_D)` and `P(D)` is `C` in degree `-n` exactly on `Delta_D`.
pub fn verdier_pair_check(d: &DivisorData) -> Result<bool> {
    let poly = ample_polytope(d)?;
    let neg = d.neg();
    let n = d.fan().dim() as i64;
    let mut hs = required_hyperplanes(d);
    for h in required_hyperplanes(&neg) {
        if !hs.contains(&h) {
            hs.push(h);
        }
    }
    let (lo1, hi1) = support_bounds(d);
    let (lo2, hi2) = support_bounds(&neg);
    let lo: Vec<Rational> = lo1.iter().zip(&lo2).map(|(a, b)| a.min(b).clone()).collect();
    let hi: Vec<Rational> = hi1.iter().zip(&hi2).map(|(a, b)| a.max(b).clone()).collect();
    let arr = build_arrangement(&hs, &BoundingBox::inflated(&lo, &hi, &int(1))?)?;
    for c in arr.cells() {
        let x = &c.sample;
        let pd = stalk_p(d, x);
        let want = if poly.contains_open(x) { GradedDims::single(-n, 1) } else { GradedDims::new() };
        if pd != want {
            return Ok(false);
        }
        let pn = stalk_p(&neg, x);
        let want = if poly.contains_closed(&x.neg()) { GradedDims::single(0, 1) } else { GradedDims::new() };
        if pn != want {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Integer translates `m` for which the closed vertex box of `chi2 + m` meets
/// that of `chi1`.
pub fn overlapping_translates(d1: &DivisorData, d2: &DivisorData) -> Vec<LatticeVector> {
    let (lo1, hi1) = support_bounds(d1);
    let (lo2, hi2) = support_bounds(d2);
    let n = lo1.len();
    // m_k ranges over [lo1 - hi2, hi1 - lo2].
    let ranges: Vec<(BigInt, BigInt)> = (0..n)
        .map(|k| {
            let a = &lo1[k] - &hi2[k];
            let b = &hi1[k] - &lo2[k];
            (-floor_int(&-a), floor_int(&b))
        })
        .collect();
    let mut out: Vec<Vec<BigInt>> = vec![Vec::new()];
    for (a, b) in &ranges {
        let mut next = Vec::new();
        for p in &out {
            let mut t = a.clone();
            while &t <= b {
                let mut q = p.clone();
                q.push(t.clone());
                next.push(q);
                t += 1;
            }
        }
        out = next;
    }
    out.into_iter().map(LatticeVector).collect()
}

/// `hom(P(chi1), P(chi2 + m))` for one translate, on the box around the
/// overlap of the two vertex boxes. `None` when the boxes are disjoint.
pub fn translate_hom(d1: &DivisorData, d2m: &DivisorData) -> Result<Option<GradedDims>> {
    let (lo1, hi1) = support_bounds(d1);
    let (lo2, hi2) = support_bounds(d2m);
    let lo: Vec<Rational> = lo1.iter().zip(&lo2).map(|(a, b)| a.max(b).clone()).collect();
    let hi: Vec<Rational> = hi1.iter().zip(&hi2).map(|(a, b)| a.min(b).clone()).collect();
    if lo.iter().zip(&hi).any(|(l, h)| l > h) {
        return Ok(None);
    }
    let bbox = BoundingBox::inflated(&lo, &hi, &int(1))?;
    let mut hs = required_hyperplanes(d1);
    for h in required_hyperplanes(d2m) {
        if !hs.contains(&h) {
            hs.push(h);
        }
    }
    let arr = Arc::new(build_arrangement(&hs, &bbox)?);
    let f = to_cellular(d1, &arr)?;
    let g = to_cellular(d2m, &arr)?;
    Ok(Some(hom_complex(&f, &g)?))
}

/// Hom between the pushforwards to the torus: the sum over lattice
/// translates of `hom(P(chi1), P(chi2 + m))`.
pub fn torus_hom(d1: &DivisorData, d2: &DivisorData) -> Result<GradedDims> {
    if d1.coeffs().iter().zip(d2.coeffs()).any(|(a, b)| !(a - b).is_integer()) {
        return Err(TcccError::Unsupported("fractional parts of the two divisors differ".into()));
    }
    let parts: Vec<GradedDims> = overlapping_translates(d1, d2)
        .par_iter()
        .map(|m| translate_hom(d1, &d2.translate(m)).map(Option::unwrap_or_default))
        .collect::<Result<_>>()?;
    let mut out = GradedDims::new();
    for p in &parts {
        out.merge(p);
    }
    Ok(out)
}

/// Stalk of the torus pushforward at the image of `x`: the sum of stalks of
/// `P(chi)` over lattice translates of `x`.
pub fn torus_stalk(d: &DivisorData, x: &RationalVector) -> GradedDims {
    let (lo, hi) = support_bounds(d);
    let mut pts: Vec<Vec<BigInt>> = vec![Vec::new()];
    for k in 0..x.dim() {
        let a = -floor_int(&-(&lo[k] - &x.0[k]));
        let b = floor_int(&(&hi[k] - &x.0[k]));
        let mut next = Vec::new();
        for p in &pts {
            let mut t = a.clone();
            while t <= b {
                let mut q = p.clone();
                q.push(t.clone());
                next.push(q);
                t += 1;
            }
        }
        pts = next;
    }
    let mut out = GradedDims::new();
    for m in pts {
        out.merge(&stalk_p(d, &x.add(&LatticeVector(m).to_rational())));
    }
    out
}

/// Per-point stalk record for JSON reports.
#[derive(Debug, Clone, Serialize)]
pub struct StalkRecord {
    pub point: Vec<String>,
    pub graded_dims: GradedDims,
}

pub fn stalk_record(d: &DivisorData, x: &RationalVector) -> StalkRecord {
    StalkRecord { point: x.0.iter().map(crate::linalg::format_rational).collect(), graded_dims: stalk_p(d, x) }
}

/// Small integers of a lattice vector, for reports.
pub fn lattice_ints(m: &LatticeVector) -> Vec<i64> {
    m.0.iter().map(|x| x.to_i64().unwrap_or(i64::MAX)).collect()
}

#[allow(dead_code)]
fn positive(q: &Rational) -> bool {
    q.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn fan(name: &str) -> Arc<Fan> {
        Arc::new(Fan::builtin(name).unwrap())
    }

    fn p1(a: i64, b: i64) -> DivisorData {
        DivisorData::from_ints(&fan("P1"), &[a, b]).unwrap()
    }

    fn pt(v: &[(i64, i64)]) -> RationalVector {
        RationalVector(v.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn p1_closed_interval() {
        // vertices (-1, 1): coefficients (-1, -1)
        let d = p1(-1, -1);
        assert_eq!(d.vertices(), &[pt(&[(-1, 1)]), pt(&[(1, 1)])]);
        for (x, inside) in [((-3, 2), false), ((-1, 1), true), ((0, 1), true), ((1, 1), true), ((5, 4), false)] {
            let s = stalk_p(&d, &pt(&[x]));
            assert_eq!(s, if inside { GradedDims::single(0, 1) } else { GradedDims::new() }, "{x:?}");
        }
    }

    #[test]
    fn p1_skyscraper_and_open_interval() {
        let z = p1(0, 0);
        assert_eq!(stalk_p(&z, &pt(&[(0, 1)])), GradedDims::single(0, 1));
        assert!(stalk_p(&z, &pt(&[(1, 2)])).is_zero());
        let o = p1(1, 1);
        assert_eq!(stalk_p(&o, &pt(&[(0, 1)])), GradedDims::single(-1, 1));
        assert!(stalk_p(&o, &pt(&[(1, 1)])).is_zero());
        assert!(stalk_p(&o, &pt(&[(-2, 1)])).is_zero());
    }

    #[test]
    fn shard_counts_and_hyperplanes() {
        let f = fan("P2");
        let d = DivisorData::from_ints(&f, &[1, 1, 1]).unwrap();
        assert_eq!(build_p(&d).unwrap().counts(), vec![1, 3, 3]);
        assert_eq!(required_hyperplanes(&d).len(), 3);
        assert_eq!(required_hyperplanes(&p1(0, 0)).len(), 1);
        assert_eq!(required_hyperplanes(&p1(-1, -1)).len(), 2);
        for name in Fan::builtin_names() {
            let f = fan(name);
            assert!(build_p(&DivisorData::zero(&f)).is_ok());
        }
    }

    #[test]
    fn p2_anticanonical_stalks() {
        let f = fan("P2");
        let d = DivisorData::from_ints(&f, &[1, 1, 1]).unwrap();
        assert_eq!(stalk_p(&d, &pt(&[(0, 1), (0, 1)])), GradedDims::single(-2, 1));
        for v in d.vertices() {
            assert!(stalk_p(&d, v).is_zero());
        }
    }

    #[test]
    fn cellular_realization_matches_nerve() {
        let f = fan("P2");
        let d = DivisorData::from_ints(&f, &[1, 1, 1]).unwrap();
        let arr = default_arrangement(&d).unwrap();
        let c = to_cellular(&d, &arr).unwrap();
        c.check().unwrap();
        for cell in arr.cells() {
            assert_eq!(c.stalk(&cell.sample).unwrap(), stalk_p(&d, &cell.sample));
        }
        let other = Arc::new(build_arrangement(&[], &support_box(&d)).unwrap());
        assert!(matches!(to_cellular(&d, &other), Err(TcccError::RefinementRequired(_))));
    }

    #[test]
    fn degree_bounds_and_duality() {
        for (name, coeffs) in [("P1", vec![1, 1]), ("P2", vec![1, 1, 1]), ("P1xP1", vec![1, 1, 1, 1])] {
            let d = DivisorData::from_ints(&fan(name), &coeffs).unwrap();
            assert!(degree_bound_check(&d).unwrap());
            assert!(verdier_pair_check(&d).unwrap(), "{name}");
        }
        assert!(matches!(verdier_pair_check(&p1(0, 0)), Err(TcccError::AmplenessRequired(_))));
    }

    #[test]
    fn translate_invariance() {
        let f = fan("F2");
        let d = DivisorData::from_ints(&f, &[1, -1, 2, 0]).unwrap();
        let m = LatticeVector::from_i64(&[2, -1]);
        let x = pt(&[(1, 3), (-1, 2)]);
        assert_eq!(stalk_p(&d.translate(&m), &x.add(&m.to_rational())), stalk_p(&d, &x));
    }

    #[test]
    fn torus_homs_on_p1() {
        let zero = p1(0, 0);
        assert_eq!(torus_hom(&zero, &p1(1, 1)).unwrap(), GradedDims::single(0, 3));
        assert_eq!(torus_hom(&zero, &zero).unwrap(), GradedDims::single(0, 1));
        assert_eq!(torus_hom(&zero, &p1(-1, -1)).unwrap(), GradedDims::single(1, 1));
        let half = DivisorData::from_coeffs(&zero.fan().clone(), vec![rat(1, 2), int(0)]).unwrap();
        assert!(matches!(torus_hom(&zero, &half), Err(TcccError::Unsupported(_))));
    }

    #[test]
    fn disjoint_supports_have_zero_hom() {
        let zero = p1(0, 0);
        let far = zero.translate(&LatticeVector::from_i64(&[5]));
        // Boxes are disjoint, so the single-translate hom is skipped.
        assert!(translate_hom(&zero, &far).unwrap().is_none());
        // Overlapping boxes, disjoint supports: the open interval (-1, 1)
        // against the point 1.
        let a = p1(1, 1);
        let b = p1(1, -1);
        assert_eq!(stalk_p(&b, &pt(&[(1, 1)])), GradedDims::single(0, 1));
        assert!(stalk_p(&a, &pt(&[(1, 1)])).is_zero());
        assert!(translate_hom(&a, &b).unwrap().unwrap().is_zero());
    }

    #[test]
    fn hull_membership() {
        let f = fan("P2");
        let d = DivisorData::from_ints(&f, &[1, 1, 1]).unwrap();
        assert!(in_vertex_hull(&d, &pt(&[(0, 1), (0, 1)])));
        assert!(in_vertex_hull(&d, &pt(&[(1, 1), (1, 1)])));
        assert!(!in_vertex_hull(&d, &pt(&[(1, 1), (3, 2)])));
    }
}
