//! Cell complexes cut out of an open box in `M_R` by finitely many rational
//! hyperplanes. Cells are relatively open convex polyhedra, identified by
//! their sign vectors; the closure order is read off the sign vectors.

use std::collections::HashMap;

use num::{Integer, Signed, Zero};
use serde::Serialize;

use crate::error::{Result, TcccError};
use crate::lattice_fan::{LatticeVector, RationalVector};
use crate::linalg::{format_rational, Rational};

/// The locus `<x, normal> = offset`, with a primitive normal whose first
/// nonzero coordinate is positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperplane {
    pub normal: LatticeVector,
    pub offset: Rational,
}

impl Hyperplane {
    /// Normalizes `normal` to a primitive vector with positive leading entry.
    pub fn new(normal: &LatticeVector, offset: Rational) -> Result<Self> {
        if normal.is_zero() {
            return Err(TcccError::Input("hyperplane normal must be nonzero".into()));
        }
        let g = normal.0.iter().fold(num::BigInt::zero(), |g, x| g.gcd(x));
        let lead_neg = normal.0.iter().find(|x| !x.is_zero()).unwrap().is_negative();
        let g = if lead_neg { -g } else { g };
        let n = LatticeVector(normal.0.iter().map(|x| x / &g).collect());
        let offset = offset / Rational::from_integer(g);
        Ok(Self { normal: n, offset })
    }

    /// `<x, normal> - offset`.
    pub fn value(&self, x: &RationalVector) -> Rational {
        x.pair(&self.normal) - &self.offset
    }

    pub fn side(&self, x: &RationalVector) -> i8 {
        sign(&self.value(x))
    }
}

fn sign(q: &Rational) -> i8 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

/// An open box `prod (lo_i, hi_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundingBox {
    pub lo: Vec<Rational>,
    pub hi: Vec<Rational>,
}

impl BoundingBox {
    pub fn new(lo: Vec<Rational>, hi: Vec<Rational>) -> Result<Self> {
        if lo.len() != hi.len() || lo.is_empty() || lo.iter().zip(&hi).any(|(l, h)| l >= h) {
            return Err(TcccError::EmptyBox);
        }
        Ok(Self { lo, hi })
    }

    /// Symmetric box `(-r, r)^n`.
    pub fn cube(n: usize, r: i64) -> Self {
        Self::new(vec![Rational::from_integer((-r).into()); n], vec![Rational::from_integer(r.into()); n])
            .expect("positive radius")
    }

    /// Smallest closed box containing `points`, returned as (lo, hi).
    pub fn hull_bounds(points: &[RationalVector]) -> (Vec<Rational>, Vec<Rational>) {
        let n = points[0].dim();
        let mut lo = points[0].0.clone();
        let mut hi = points[0].0.clone();
        for p in &points[1..] {
            for k in 0..n {
                if p.0[k] < lo[k] {
                    lo[k] = p.0[k].clone();
                }
                if p.0[k] > hi[k] {
                    hi[k] = p.0[k].clone();
                }
            }
        }
        (lo, hi)
    }

    /// Open box obtained by pushing every face of the closed box `[lo, hi]`
    /// outwards by `margin`.
    pub fn inflated(lo: &[Rational], hi: &[Rational], margin: &Rational) -> Result<Self> {
        Self::new(lo.iter().map(|l| l - margin).collect(), hi.iter().map(|h| h + margin).collect())
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn contains(&self, x: &RationalVector) -> bool {
        x.0.iter().zip(&self.lo).zip(&self.hi).all(|((v, l), h)| l < v && v < h)
    }

    fn corners(&self) -> Vec<RationalVector> {
        let n = self.dim();
        (0..1usize << n)
            .map(|mask| {
                RationalVector(
                    (0..n).map(|k| if mask >> k & 1 == 1 { self.hi[k].clone() } else { self.lo[k].clone() }).collect(),
                )
            })
            .collect()
    }
}

/// Relation of a region constraint `<x, n> (rel) offset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Ge,
    Le,
    Eq,
    Gt,
    Lt,
}

/// A convex polyhedron given by constraints on arrangement hyperplanes.
#[derive(Debug, Clone, Default)]
pub struct Region {
    pub constraints: Vec<(LatticeVector, Rational, Side)>,
}

impl Region {
    pub fn whole() -> Self {
        Self::default()
    }

    pub fn with(mut self, normal: LatticeVector, offset: Rational, side: Side) -> Self {
        self.constraints.push((normal, offset, side));
        self
    }

    pub fn contains(&self, x: &RationalVector) -> bool {
        self.constraints.iter().all(|(n, a, s)| {
            let v = x.pair(n) - a;
            match s {
                Side::Ge => !v.is_negative(),
                Side::Le => !v.is_positive(),
                Side::Eq => v.is_zero(),
                Side::Gt => v.is_positive(),
                Side::Lt => v.is_negative(),
            }
        })
    }

    pub fn is_closed(&self) -> bool {
        self.constraints.iter().all(|c| matches!(c.2, Side::Ge | Side::Le | Side::Eq))
    }

    pub fn is_open(&self) -> bool {
        self.constraints.iter().all(|c| matches!(c.2, Side::Gt | Side::Lt))
    }
}

/// A relatively open cell of the arrangement.
#[derive(Debug, Clone, Serialize)]
pub struct Cell {
    pub id: usize,
    pub dim: usize,
    /// Sign of `<x, n_h> - a_h` on the cell, per hyperplane.
    pub signs: Vec<i8>,
    /// An interior rational point (centroid of the closure's vertices).
    #[serde(serialize_with = "ser_point")]
    pub sample: RationalVector,
}

fn ser_point<S: serde::Serializer>(p: &RationalVector, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(p.0.len()))?;
    for x in &p.0 {
        seq.serialize_element(&format_rational(x))?;
    }
    seq.end()
}

/// Face poset of an arrangement restricted to an open box.
#[derive(Debug, Clone)]
pub struct ArrangementComplex {
    dim: usize,
    bbox: BoundingBox,
    hyperplanes: Vec<Hyperplane>,
    cells: Vec<Cell>,
    /// `below[d]`: every cell `c != d` with `c` in the closure of `d`.
    below: Vec<Vec<usize>>,
    above: Vec<Vec<usize>>,
    by_signs: HashMap<Vec<i8>, usize>,
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }
    fn set(&mut self, i: usize) {
        if i / 64 >= self.0.len() {
            self.0.resize(i / 64 + 1, 0);
        }
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(o.0.iter().chain(std::iter::repeat(&0))).map(|(a, b)| a & b).collect())
    }
    fn subset_of(&self, o: &Bits) -> bool {
        self.0.iter().enumerate().all(|(i, a)| a & !o.0.get(i).copied().unwrap_or(0) == 0)
    }
}

struct Builder {
    n: usize,
    bbox: BoundingBox,
    points: Vec<RationalVector>,
    tight: Vec<Bits>,
    lookup: HashMap<Vec<Rational>, usize>,
}

impl Builder {
    /// Constraint ids: `2k` is `x_k = lo_k`, `2k + 1` is `x_k = hi_k`,
    /// `2n + h` is hyperplane `h`.
    fn vertex(&mut self, p: RationalVector, planes: &[Hyperplane]) -> usize {
        if let Some(&i) = self.lookup.get(&p.0) {
            return i;
        }
        let mut t = Bits::new(2 * self.n + planes.len());
        for k in 0..self.n {
            if p.0[k] == self.bbox.lo[k] {
                t.set(2 * k);
            }
            if p.0[k] == self.bbox.hi[k] {
                t.set(2 * k + 1);
            }
        }
        for (h, hp) in planes.iter().enumerate() {
            if hp.value(&p).is_zero() {
                t.set(2 * self.n + h);
            }
        }
        let i = self.points.len();
        self.lookup.insert(p.0.clone(), i);
        self.points.push(p);
        self.tight.push(t);
        i
    }
}

struct WorkCell {
    dim: usize,
    signs: Vec<i8>,
    verts: Vec<usize>,
}

/// Builds the cell complex of `hyperplanes` inside the open box.
pub fn build_arrangement(hyperplanes: &[Hyperplane], bbox: &BoundingBox) -> Result<ArrangementComplex> {
    let n = bbox.dim();
    if hyperplanes.iter().any(|h| h.normal.dim() != n) {
        return Err(TcccError::Input("hyperplane dimension does not match the box".into()));
    }
    let mut planes: Vec<Hyperplane> = hyperplanes.to_vec();
    planes.sort();
    planes.dedup();

    let mut b = Builder { n, bbox: bbox.clone(), points: Vec::new(), tight: Vec::new(), lookup: HashMap::new() };
    let verts: Vec<usize> = bbox.corners().into_iter().map(|p| b.vertex(p, &[])).collect();
    let mut cells = vec![WorkCell { dim: n, signs: Vec::new(), verts }];

    for (h, hp) in planes.iter().enumerate() {
        let bit = 2 * n + h;
        let vals: Vec<Rational> = b.points.iter().map(|p| hp.value(p)).collect();
        for (i, v) in vals.iter().enumerate() {
            if v.is_zero() {
                b.tight[i].set(bit);
            }
        }
        let mut next = Vec::with_capacity(cells.len() * 2);
        for c in cells {
            let (mut neg, mut pos) = (false, false);
            for &v in &c.verts {
                match sign(&vals[v]) {
                    1 => pos = true,
                    -1 => neg = true,
                    _ => {}
                }
            }
            if !(neg && pos) {
                let s = if pos { 1 } else if neg { -1 } else { 0 };
                let mut signs = c.signs;
                signs.push(s);
                next.push(WorkCell { dim: c.dim, signs, verts: c.verts });
                continue;
            }
            // Edges of the closure crossing the hyperplane.
            let mut cut = Vec::new();
            for (i, &u) in c.verts.iter().enumerate() {
                for &w in &c.verts[i + 1..] {
                    let (su, sw) = (sign(&vals[u]), sign(&vals[w]));
                    if su * sw != -1 {
                        continue;
                    }
                    let t = b.tight[u].and(&b.tight[w]);
                    let is_edge = c.verts.iter().all(|&z| z == u || z == w || !t.subset_of(&b.tight[z]));
                    if !is_edge {
                        continue;
                    }
                    let (pu, pw) = (&b.points[u], &b.points[w]);
                    let s = &vals[u] / (&vals[u] - &vals[w]);
                    let p = pu.add(&pw.sub(pu).scale(&s));
                    cut.push(p);
                }
            }
            let mut cut_ids: Vec<usize> = cut.into_iter().map(|p| b.vertex(p, &planes[..=h])).collect();
            cut_ids.sort_unstable();
            cut_ids.dedup();
            for s in [-1i8, 0, 1] {
                let mut vs: Vec<usize> = c.verts.iter().copied().filter(|&v| sign(&vals[v]) == s || vals[v].is_zero()).collect();
                if s == 0 {
                    vs.retain(|&v| vals[v].is_zero());
                }
                vs.extend(&cut_ids);
                vs.sort_unstable();
                vs.dedup();
                let mut signs = c.signs.clone();
                signs.push(s);
                next.push(WorkCell { dim: if s == 0 { c.dim - 1 } else { c.dim }, signs, verts: vs });
            }
        }
        cells = next;
        // New points were appended after `vals` was computed; they all lie on
        // this hyperplane and got the bit when created.
    }

    let mut out: Vec<Cell> = cells
        .into_iter()
        .map(|c| {
            let k = Rational::from_integer(c.verts.len().into());
            let mut sum = RationalVector::zero(n);
            for &v in &c.verts {
                sum = sum.add(&b.points[v]);
            }
            Cell { id: 0, dim: c.dim, signs: c.signs, sample: sum.scale(&k.recip()) }
        })
        .collect();
    out.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.signs.cmp(&b.signs)));
    for (i, c) in out.iter_mut().enumerate() {
        c.id = i;
    }
    let by_signs = out.iter().map(|c| (c.signs.clone(), c.id)).collect();
    let mut below = vec![Vec::new(); out.len()];
    let mut above = vec![Vec::new(); out.len()];
    for d in &out {
        for c in &out {
            if c.dim < d.dim && face_of(&c.signs, &d.signs) {
                below[d.id].push(c.id);
                above[c.id].push(d.id);
            }
        }
    }
    Ok(ArrangementComplex { dim: n, bbox: bbox.clone(), hyperplanes: planes, cells: out, below, above, by_signs })
}

fn face_of(c: &[i8], d: &[i8]) -> bool {
    c.iter().zip(d).all(|(&a, &b)| a == 0 || a == b)
}

impl ArrangementComplex {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bbox(&self) -> &BoundingBox {
        &self.bbox
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn cell(&self, id: usize) -> &Cell {
        &self.cells[id]
    }

    /// Cells strictly below `d` in the closure order.
    pub fn below(&self, d: usize) -> &[usize] {
        &self.below[d]
    }

    /// Cells strictly above `c`.
    pub fn above(&self, c: usize) -> &[usize] {
        &self.above[c]
    }

    /// `c <= d`: `c` lies in the closure of `d`.
    pub fn leq(&self, c: usize, d: usize) -> bool {
        c == d || self.below[d].contains(&c)
    }

    /// Pairs `c < d` with `dim d = dim c + 1`.
    pub fn covers(&self, c: usize) -> impl Iterator<Item = usize> + '_ {
        let k = self.cells[c].dim + 1;
        self.above[c].iter().copied().filter(move |&d| self.cells[d].dim == k)
    }

    pub fn locate(&self, x: &RationalVector) -> Result<usize> {
        if x.dim() != self.dim || !self.bbox.contains(x) {
            return Err(TcccError::OutOfDomain);
        }
        let signs: Vec<i8> = self.hyperplanes.iter().map(|h| h.side(x)).collect();
        self.by_signs
            .get(&signs)
            .copied()
            .ok_or_else(|| TcccError::Internal("point matches no cell".into()))
    }

    fn check_aligned(&self, region: &Region) -> Result<()> {
        for (n, a, _) in &region.constraints {
            let h = Hyperplane::new(n, a.clone())?;
            if self.hyperplanes.binary_search(&h).is_err() {
                return Err(TcccError::RefinementRequired(format!(
                    "<x, {}> = {} is not an arrangement hyperplane",
                    n,
                    format_rational(a)
                )));
            }
        }
        Ok(())
    }

    /// Cells contained in a closed region whose facets lie on arrangement
    /// hyperplanes. The result is closed downwards.
    pub fn closed_cells_of(&self, region: &Region) -> Result<Vec<usize>> {
        if !region.is_closed() {
            return Err(TcccError::Unsupported("region has strict constraints".into()));
        }
        self.check_aligned(region)?;
        Ok(self.cells.iter().filter(|c| region.contains(&c.sample)).map(|c| c.id).collect())
    }

    /// Cells contained in an open region; the result is closed upwards.
    pub fn open_cells_of(&self, region: &Region) -> Result<Vec<usize>> {
        if !region.is_open() {
            return Err(TcccError::Unsupported("region has non-strict constraints".into()));
        }
        self.check_aligned(region)?;
        Ok(self.cells.iter().filter(|c| region.contains(&c.sample)).map(|c| c.id).collect())
    }

    /// Alternating count of cells by dimension.
    pub fn euler_count(&self) -> i64 {
        self.cells.iter().map(|c| if c.dim % 2 == 0 { 1 } else { -1 }).sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "dim": self.dim,
            "box": {
                "lo": self.bbox.lo.iter().map(format_rational).collect::<Vec<_>>(),
                "hi": self.bbox.hi.iter().map(format_rational).collect::<Vec<_>>(),
            },
            "hyperplanes": self.hyperplanes.iter().map(|h| serde_json::json!({
                "normal": h.normal.0.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "offset": format_rational(&h.offset),
            })).collect::<Vec<_>>(),
            "cells": self.cells,
            "order": self.below.iter().enumerate().flat_map(|(d, cs)| cs.iter().map(move |&c| [c, d])).collect::<Vec<_>>(),
        })
    }
}

/// Hyperplane `<x, v> = a` from machine integers, for tests and examples.
pub fn hyperplane(normal: &[i64], offset: Rational) -> Hyperplane {
    Hyperplane::new(&LatticeVector::from_i64(normal), offset).expect("nonzero normal")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, rat};

    fn rv(xs: &[(i64, i64)]) -> RationalVector {
        RationalVector(xs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn one_point_on_a_line() {
        let a = build_arrangement(&[hyperplane(&[1], int(0))], &BoundingBox::cube(1, 1)).unwrap();
        assert_eq!(a.num_cells(), 3);
        assert_eq!(a.cells().iter().filter(|c| c.dim == 0).count(), 1);
        let v = a.locate(&rv(&[(0, 1)])).unwrap();
        assert_eq!(a.cell(v).dim, 0);
        assert_eq!(a.above(v).len(), 2);
    }

    #[test]
    fn two_generic_lines() {
        let hs = [hyperplane(&[1, 0], int(0)), hyperplane(&[1, 1], rat(1, 2))];
        let a = build_arrangement(&hs, &BoundingBox::cube(2, 2)).unwrap();
        assert_eq!(a.num_cells(), 9);
        let v = a.locate(&rv(&[(0, 1), (1, 2)])).unwrap();
        assert_eq!(a.cell(v).dim, 0);
        assert_eq!(a.below(a.locate(&rv(&[(1, 1), (1, 1)])).unwrap()).len(), 3);
    }

    #[test]
    fn empty_arrangement_and_box() {
        let a = build_arrangement(&[], &BoundingBox::cube(2, 1)).unwrap();
        assert_eq!(a.num_cells(), 1);
        assert!(matches!(BoundingBox::new(vec![int(0)], vec![int(0)]), Err(TcccError::EmptyBox)));
        assert!(matches!(a.locate(&rv(&[(1, 1), (0, 1)])), Err(TcccError::OutOfDomain)));
    }

    #[test]
    fn hyperplane_outside_box_is_inert() {
        let a = build_arrangement(&[hyperplane(&[1, 0], int(5))], &BoundingBox::cube(2, 1)).unwrap();
        assert_eq!(a.num_cells(), 1);
    }

    #[test]
    fn normalization_dedupes() {
        let h1 = Hyperplane::new(&LatticeVector::from_i64(&[-2, 0]), int(4)).unwrap();
        let h2 = hyperplane(&[1, 0], int(-2));
        assert_eq!(h1, h2);
    }

    #[test]
    fn sample_points_locate_their_cells() {
        let hs = [
            hyperplane(&[1, 0], int(0)),
            hyperplane(&[0, 1], int(0)),
            hyperplane(&[1, 1], int(0)),
            hyperplane(&[1, -1], int(1)),
        ];
        let a = build_arrangement(&hs, &BoundingBox::cube(2, 3)).unwrap();
        for c in a.cells() {
            assert_eq!(a.locate(&c.sample).unwrap(), c.id);
        }
        // Brute-force oracle: sign vectors realized on a fine grid.
        let mut seen = std::collections::HashSet::new();
        for i in -35..=35 {
            for j in -35..=35 {
                let p = rv(&[(i, 12), (j, 12)]);
                seen.insert(a.locate(&p).unwrap());
            }
        }
        assert_eq!(seen.len(), a.num_cells());
    }

    #[test]
    fn three_dimensional_cells() {
        let hs = [hyperplane(&[1, 0, 0], int(0)), hyperplane(&[0, 1, 0], int(0)), hyperplane(&[0, 0, 1], int(0))];
        let a = build_arrangement(&hs, &BoundingBox::cube(3, 1)).unwrap();
        assert_eq!(a.num_cells(), 27);
        assert_eq!(a.euler_count(), -1);
    }

    #[test]
    fn closed_regions() {
        let a = build_arrangement(&[hyperplane(&[1], int(0))], &BoundingBox::cube(1, 1)).unwrap();
        let half = Region::whole().with(LatticeVector::from_i64(&[1]), int(0), Side::Ge);
        assert_eq!(a.closed_cells_of(&half).unwrap().len(), 2);
        assert_eq!(a.closed_cells_of(&Region::whole()).unwrap().len(), 3);
        let pt = Region::whole().with(LatticeVector::from_i64(&[1]), int(0), Side::Eq);
        let cs = a.closed_cells_of(&pt).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(a.cell(cs[0]).dim, 0);
        let off = Region::whole().with(LatticeVector::from_i64(&[1]), rat(1, 2), Side::Ge);
        assert!(matches!(a.closed_cells_of(&off), Err(TcccError::RefinementRequired(_))));
    }

    #[test]
    fn closed_regions_are_down_closed() {
        let hs = [hyperplane(&[1, 0], int(0)), hyperplane(&[0, 1], int(0)), hyperplane(&[1, 1], int(1))];
        let a = build_arrangement(&hs, &BoundingBox::cube(2, 3)).unwrap();
        let q = Region::whole()
            .with(LatticeVector::from_i64(&[1, 0]), int(0), Side::Ge)
            .with(LatticeVector::from_i64(&[1, 1]), int(1), Side::Le);
        let cs = a.closed_cells_of(&q).unwrap();
        for &d in &cs {
            for &c in a.below(d) {
                assert!(cs.contains(&c));
            }
        }
    }
}
