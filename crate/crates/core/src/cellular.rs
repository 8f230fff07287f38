//! Complexes of cellular sheaves on an arrangement, viewed as representations
//! of its face poset: a stalk per cell and a map `F(c) -> F(d)` whenever `c`
//! lies in the closure of `d`. Stalks, hypercohomology over the open box and
//! derived homs are all computed by exact linear algebra.
//!
//! Derived homs resolve the target by elementary injectives indexed by strict
//! chains of cells, which turns `RHom(F, G)` into the totalization of
//! `prod_{c0 < ... < ck} Hom(F(c0), G(ck))`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::arrangement::{ArrangementComplex, Region};
use crate::error::{Result, TcccError};
use crate::lattice_fan::RationalVector;
use crate::linalg::{format_rational, rank_dense, sparse_rank, Rational, SparseColumn};
use crate::polyhedron::{self, Constraint, Relation};

/// Dense matrix over the rationals, `rows x cols`.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Self {
        let r = rows.len();
        let data: Vec<Rational> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), r * cols, "ragged matrix");
        Self { rows: r, cols, data }
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut m = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let idx = i * m.cols + j;
                        m.data[idx] += a * b;
                    }
                }
            }
        }
        m
    }

    pub fn scale(&self, s: &Rational) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        rank_dense(&(0..self.rows).map(|r| self.row(r).to_vec()).collect::<Vec<_>>())
    }

    /// Block diagonal sum.
    pub fn block_diag(a: &Matrix, b: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(a.rows + b.rows, a.cols + b.cols);
        m.paste(0, 0, a);
        m.paste(a.rows, a.cols, b);
        m
    }

    pub fn paste(&mut self, r0: usize, c0: usize, src: &Matrix) {
        for i in 0..src.rows {
            for j in 0..src.cols {
                let v = src.get(i, j);
                if !v.is_zero() {
                    self.set(r0 + i, c0 + j, v.clone());
                }
            }
        }
    }
}

/// Degree-indexed dimensions with zero entries dropped.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradedDims(pub BTreeMap<i64, usize>);

impl GradedDims {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(degree: i64, dim: usize) -> Self {
        let mut g = Self::new();
        g.add(degree, dim);
        g
    }

    pub fn add(&mut self, degree: i64, dim: usize) {
        if dim > 0 {
            *self.0.entry(degree).or_insert(0) += dim;
        }
    }

    pub fn merge(&mut self, other: &GradedDims) {
        for (&k, &v) in &other.0 {
            self.add(k, v);
        }
    }

    pub fn get(&self, degree: i64) -> usize {
        self.0.get(&degree).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    pub fn euler(&self) -> i64 {
        self.0.iter().map(|(&k, &v)| if k.rem_euclid(2) == 0 { v as i64 } else { -(v as i64) }).sum()
    }

    /// Moves every class from degree `k` to `k + by`.
    pub fn shifted(&self, by: i64) -> GradedDims {
        GradedDims(self.0.iter().map(|(&k, &v)| (k + by, v)).collect())
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.0.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.0.keys().next_back().copied()
    }
}

impl fmt::Display for GradedDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("C^{v}[{}]", -k)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for GradedDims {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let m: BTreeMap<String, usize> = self.0.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        m.serialize(s)
    }
}

/// A representation of the face poset: stalks plus maps along covers.
#[derive(Debug, Clone)]
pub struct CellularSheaf {
    arr: Arc<ArrangementComplex>,
    dims: Vec<usize>,
    /// Maps `F(c) -> F(d)` for covering pairs `c < d`, keyed `(c, d)`.
    maps: HashMap<(usize, usize), Matrix>,
}

impl CellularSheaf {
    /// Builds a sheaf from stalk dimensions and cover maps; missing cover maps
    /// are zero. Functoriality is checked on every length-two interval.
    pub fn new(arr: &Arc<ArrangementComplex>, dims: Vec<usize>, maps: HashMap<(usize, usize), Matrix>) -> Result<Self> {
        if dims.len() != arr.num_cells() {
            return Err(TcccError::Input("one stalk dimension per cell expected".into()));
        }
        let s = Self { arr: arr.clone(), dims, maps };
        s.check_functorial()?;
        Ok(s)
    }

    /// As [`CellularSheaf::new`] without the functoriality check, for
    /// constructions that are functorial by design.
    pub(crate) fn from_parts(arr: &Arc<ArrangementComplex>, dims: Vec<usize>, maps: HashMap<(usize, usize), Matrix>) -> Self {
        Self { arr: arr.clone(), dims, maps }
    }

    pub fn zero(arr: &Arc<ArrangementComplex>) -> Self {
        Self { arr: arr.clone(), dims: vec![0; arr.num_cells()], maps: HashMap::new() }
    }

    /// Stalk `C` on a set of cells with identity maps between them.
    fn indicator(arr: &Arc<ArrangementComplex>, cells: &[usize]) -> Self {
        let mut dims = vec![0; arr.num_cells()];
        for &c in cells {
            dims[c] = 1;
        }
        let mut maps = HashMap::new();
        for &c in cells {
            for d in arr.covers(c) {
                if dims[d] == 1 {
                    maps.insert((c, d), Matrix::identity(1));
                }
            }
        }
        Self { arr: arr.clone(), dims, maps }
    }

    pub fn arrangement(&self) -> &Arc<ArrangementComplex> {
        &self.arr
    }

    pub fn dim_at(&self, c: usize) -> usize {
        self.dims[c]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Cover map `F(c) -> F(d)`.
    pub fn cover_map(&self, c: usize, d: usize) -> Matrix {
        self.maps.get(&(c, d)).cloned().unwrap_or_else(|| Matrix::zeros(self.dims[d], self.dims[c]))
    }

    /// Map `F(c) -> F(d)` for any `c <= d`, composed along covers.
    pub fn restriction(&self, c: usize, d: usize) -> Matrix {
        if c == d {
            return Matrix::identity(self.dims[c]);
        }
        let target = self.arr.cell(d).dim;
        let mut cur = c;
        let mut acc = Matrix::identity(self.dims[c]);
        while self.arr.cell(cur).dim < target {
            let next = self
                .arr
                .covers(cur)
                .find(|&e| self.arr.leq(e, d))
                .expect("saturated chain exists in a face poset");
            acc = self.cover_map(cur, next).mul(&acc);
            cur = next;
        }
        acc
    }

    /// All maps `F(c) -> F(d)` for `c <= d`, including identities.
    pub fn all_restrictions(&self) -> HashMap<(usize, usize), Matrix> {
        let mut out: HashMap<(usize, usize), Matrix> = HashMap::new();
        let mut order: Vec<usize> = (0..self.arr.num_cells()).collect();
        order.sort_by_key(|&c| std::cmp::Reverse(self.arr.cell(c).dim));
        // Process sources from high dimension to low so that the tail of any
        // chain is already known.
        for &c in &order {
            out.insert((c, c), Matrix::identity(self.dims[c]));
            let mut targets: Vec<usize> = self.arr.above(c).to_vec();
            targets.sort_by_key(|&d| self.arr.cell(d).dim);
            for d in targets {
                let next = self.arr.covers(c).find(|&e| self.arr.leq(e, d)).expect("saturated chain");
                let m = out[&(next, d)].mul(&self.cover_map(c, next));
                out.insert((c, d), m);
            }
        }
        out
    }

    fn check_functorial(&self) -> Result<()> {
        for c in 0..self.arr.num_cells() {
            let k = self.arr.cell(c).dim;
            for &d in self.arr.above(c) {
                if self.arr.cell(d).dim != k + 2 {
                    continue;
                }
                let mut first: Option<Matrix> = None;
                for e in self.arr.covers(c).filter(|&e| self.arr.leq(e, d)) {
                    let m = self.cover_map(e, d).mul(&self.cover_map(c, e));
                    match &first {
                        None => first = Some(m),
                        Some(f) if *f != m => {
                            return Err(TcccError::Input(format!("structure maps do not commute on [{c}, {d}]")));
                        }
                        _ => {}
                    }
                }
            }
        }
        Ok(())
    }
}

/// Stalk `C` on the closed region, zero elsewhere.
pub fn constant_on_closed(arr: &Arc<ArrangementComplex>, region: &Region) -> Result<CellularSheaf> {
    let cells = arr.closed_cells_of(region)?;
    Ok(CellularSheaf::indicator(arr, &cells))
}

/// Extension by zero of `C` from an open region.
pub fn extension_by_zero(arr: &Arc<ArrangementComplex>, region: &Region) -> Result<CellularSheaf> {
    let cells = arr.open_cells_of(region)?;
    Ok(CellularSheaf::indicator(arr, &cells))
}

/// The pushforward of `C` from a single cell: `C` on its closure. These are
/// the elementary injectives.
pub fn standard_on_cell(arr: &Arc<ArrangementComplex>, cell: usize) -> CellularSheaf {
    let mut cells = arr.below(cell).to_vec();
    cells.push(cell);
    CellularSheaf::indicator(arr, &cells)
}

/// The constant sheaf on the box.
pub fn constant(arr: &Arc<ArrangementComplex>) -> CellularSheaf {
    let all: Vec<usize> = (0..arr.num_cells()).collect();
    CellularSheaf::indicator(arr, &all)
}

/// Skyscraper `C` on one cell extended by zero (for a vertex cell this is
/// the closed point).
pub fn skyscraper(arr: &Arc<ArrangementComplex>, cell: usize) -> CellularSheaf {
    CellularSheaf::indicator(arr, &[cell])
}

/// A bounded complex of cellular sheaves `F^lo -> ... -> F^{lo + len - 1}`.
#[derive(Debug, Clone)]
pub struct SheafComplex {
    arr: Arc<ArrangementComplex>,
    lo: i64,
    terms: Vec<CellularSheaf>,
    /// `diffs[k][c]`: `F^{lo+k}(c) -> F^{lo+k+1}(c)`.
    diffs: Vec<Vec<Matrix>>,
}

impl SheafComplex {
    pub fn new(arr: &Arc<ArrangementComplex>, lo: i64, terms: Vec<CellularSheaf>, diffs: Vec<Vec<Matrix>>) -> Result<Self> {
        if terms.is_empty() || diffs.len() + 1 != terms.len() {
            return Err(TcccError::Input("need one differential between consecutive terms".into()));
        }
        let s = Self { arr: arr.clone(), lo, terms, diffs };
        s.validate()?;
        Ok(s)
    }

    pub(crate) fn from_parts(arr: &Arc<ArrangementComplex>, lo: i64, terms: Vec<CellularSheaf>, diffs: Vec<Vec<Matrix>>) -> Self {
        Self { arr: arr.clone(), lo, terms, diffs }
    }

    /// Runs the shape, `d^2 = 0` and commutation checks.
    pub fn check(&self) -> Result<()> {
        self.validate()
    }

    /// A single sheaf placed in `degree`.
    pub fn from_sheaf(f: CellularSheaf, degree: i64) -> Self {
        Self { arr: f.arr.clone(), lo: degree, terms: vec![f], diffs: Vec::new() }
    }

    fn validate(&self) -> Result<()> {
        let n = self.arr.num_cells();
        for (k, d) in self.diffs.iter().enumerate() {
            if d.len() != n {
                return Err(TcccError::Input("one differential block per cell expected".into()));
            }
            for c in 0..n {
                let m = &d[c];
                if m.rows != self.terms[k + 1].dims[c] || m.cols != self.terms[k].dims[c] {
                    return Err(TcccError::Input(format!("differential {k} has wrong shape at cell {c}")));
                }
                for e in self.arr.covers(c) {
                    let lhs = self.terms[k + 1].cover_map(c, e).mul(m);
                    let rhs = d[e].mul(&self.terms[k].cover_map(c, e));
                    if lhs != rhs {
                        return Err(TcccError::NotAChainMap(format!("differential {k} on cover ({c}, {e})")));
                    }
                }
                if k + 1 < self.diffs.len() && !self.diffs[k + 1][c].mul(m).is_zero() {
                    return Err(TcccError::Input(format!("d^2 != 0 at cell {c}")));
                }
            }
        }
        Ok(())
    }

    pub fn arrangement(&self) -> &Arc<ArrangementComplex> {
        &self.arr
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    pub fn term(&self, degree: i64) -> Option<&CellularSheaf> {
        usize::try_from(degree - self.lo).ok().and_then(|k| self.terms.get(k))
    }

    pub fn terms(&self) -> &[CellularSheaf] {
        &self.terms
    }

    fn dim_at(&self, degree: i64, c: usize) -> usize {
        self.term(degree).map_or(0, |t| t.dims[c])
    }

    /// Differential `F^degree(c) -> F^{degree+1}(c)`.
    pub fn differential(&self, degree: i64, c: usize) -> Matrix {
        match usize::try_from(degree - self.lo).ok().and_then(|k| self.diffs.get(k)) {
            Some(d) => d[c].clone(),
            None => Matrix::zeros(self.dim_at(degree + 1, c), self.dim_at(degree, c)),
        }
    }

    /// `F[k]`: degree `p` of the result is degree `p + k` of `F`, with the
    /// differential negated for odd `k`.
    pub fn shift(&self, k: i64) -> SheafComplex {
        let s = if k.rem_euclid(2) == 0 { Rational::one() } else { -Rational::one() };
        SheafComplex {
            arr: self.arr.clone(),
            lo: self.lo - k,
            terms: self.terms.clone(),
            diffs: self.diffs.iter().map(|d| d.iter().map(|m| m.scale(&s)).collect()).collect(),
        }
    }

    /// Degreewise direct sum; all summands must share the arrangement.
    pub fn direct_sum(parts: &[SheafComplex]) -> Result<SheafComplex> {
        let arr = parts.first().ok_or_else(|| TcccError::Input("empty direct sum".into()))?.arr.clone();
        if parts.iter().any(|p| !Arc::ptr_eq(&p.arr, &arr)) {
            return Err(TcccError::RefinementRequired("summands live on different arrangements".into()));
        }
        let lo = parts.iter().map(|p| p.lo).min().unwrap();
        let hi = parts.iter().map(|p| p.hi()).max().unwrap();
        let n = arr.num_cells();
        let mut terms = Vec::new();
        for deg in lo..=hi {
            let dims: Vec<usize> = (0..n).map(|c| parts.iter().map(|p| p.dim_at(deg, c)).sum()).collect();
            let mut maps = HashMap::new();
            for c in 0..n {
                for d in arr.covers(c) {
                    let mut m = Matrix::zeros(dims[d], dims[c]);
                    let (mut r0, mut c0) = (0, 0);
                    for p in parts {
                        if let Some(t) = p.term(deg) {
                            m.paste(r0, c0, &t.cover_map(c, d));
                        }
                        r0 += p.dim_at(deg, d);
                        c0 += p.dim_at(deg, c);
                    }
                    if !m.is_zero() {
                        maps.insert((c, d), m);
                    }
                }
            }
            terms.push(CellularSheaf { arr: arr.clone(), dims, maps });
        }
        let diffs = (lo..hi)
            .map(|deg| {
                (0..n)
                    .map(|c| {
                        let mut m = Matrix::zeros(terms[(deg + 1 - lo) as usize].dims[c], terms[(deg - lo) as usize].dims[c]);
                        let (mut r0, mut c0) = (0, 0);
                        for p in parts {
                            m.paste(r0, c0, &p.differential(deg, c));
                            r0 += p.dim_at(deg + 1, c);
                            c0 += p.dim_at(deg, c);
                        }
                        m
                    })
                    .collect()
            })
            .collect();
        Ok(SheafComplex { arr, lo, terms, diffs })
    }

    /// Mapping cone of a chain map `phi: F -> G`, given per degree and cell.
    /// Degree `p` of the cone is `F^{p+1} + G^p`.
    pub fn cone(f: &SheafComplex, g: &SheafComplex, phi: &ChainMap) -> Result<SheafComplex> {
        if !Arc::ptr_eq(&f.arr, &g.arr) {
            return Err(TcccError::RefinementRequired("cone of complexes on different arrangements".into()));
        }
        phi.check(f, g)?;
        let arr = f.arr.clone();
        let n = arr.num_cells();
        let lo = (f.lo - 1).min(g.lo);
        let hi = (f.hi() - 1).max(g.hi());
        let dim = |deg: i64, c: usize| f.dim_at(deg + 1, c) + g.dim_at(deg, c);
        let mut terms = Vec::new();
        for deg in lo..=hi {
            let dims: Vec<usize> = (0..n).map(|c| dim(deg, c)).collect();
            let mut maps = HashMap::new();
            for c in 0..n {
                for d in arr.covers(c) {
                    let mut m = Matrix::zeros(dims[d], dims[c]);
                    if let Some(t) = f.term(deg + 1) {
                        m.paste(0, 0, &t.cover_map(c, d));
                    }
                    if let Some(t) = g.term(deg) {
                        m.paste(f.dim_at(deg + 1, d), f.dim_at(deg + 1, c), &t.cover_map(c, d));
                    }
                    if !m.is_zero() {
                        maps.insert((c, d), m);
                    }
                }
            }
            terms.push(CellularSheaf { arr: arr.clone(), dims, maps });
        }
        let minus = -Rational::one();
        let diffs = (lo..hi)
            .map(|deg| {
                (0..n)
                    .map(|c| {
                        let mut m = Matrix::zeros(dim(deg + 1, c), dim(deg, c));
                        let fa = f.dim_at(deg + 1, c);
                        let fb = f.dim_at(deg + 2, c);
                        m.paste(0, 0, &f.differential(deg + 1, c).scale(&minus));
                        m.paste(fb, 0, &phi.at(deg + 1, c, f, g));
                        m.paste(fb, fa, &g.differential(deg, c));
                        m
                    })
                    .collect()
            })
            .collect();
        SheafComplex::new(&arr, lo, terms, diffs)
    }

    /// Cohomology of the stalk complex at the cell containing `x`.
    pub fn stalk(&self, x: &RationalVector) -> Result<GradedDims> {
        let c = self.arr.locate(x)?;
        Ok(self.stalk_at_cell(c))
    }

    pub fn stalk_at_cell(&self, c: usize) -> GradedDims {
        let mut out = GradedDims::new();
        for deg in self.lo..=self.hi() {
            let dim = self.dim_at(deg, c);
            let r_out = self.differential(deg, c).rank();
            let r_in = self.differential(deg - 1, c).rank();
            out.add(deg, dim - r_out - r_in);
        }
        out
    }

    /// Hypercohomology over the open box: `hom(C_box, F)`.
    pub fn cohomology(&self) -> GradedDims {
        let c = SheafComplex::from_sheaf(constant(&self.arr), 0);
        hom_complex(&c, self).expect("same arrangement")
    }
}

/// Degree-preserving chain map, `maps[deg - lo][cell]: F^deg(c) -> G^deg(c)`.
#[derive(Debug, Clone)]
pub struct ChainMap {
    pub lo: i64,
    pub maps: Vec<Vec<Matrix>>,
}

impl ChainMap {
    pub fn identity(f: &SheafComplex) -> Self {
        ChainMap {
            lo: f.lo,
            maps: f.terms.iter().map(|t| t.dims.iter().map(|&d| Matrix::identity(d)).collect()).collect(),
        }
    }

    fn at(&self, deg: i64, c: usize, f: &SheafComplex, g: &SheafComplex) -> Matrix {
        match usize::try_from(deg - self.lo).ok().and_then(|k| self.maps.get(k)) {
            Some(m) => m[c].clone(),
            None => Matrix::zeros(g.dim_at(deg, c), f.dim_at(deg, c)),
        }
    }

    fn check(&self, f: &SheafComplex, g: &SheafComplex) -> Result<()> {
        let arr = &f.arr;
        for deg in f.lo.min(g.lo)..=f.hi().max(g.hi()) {
            for c in 0..arr.num_cells() {
                let m = self.at(deg, c, f, g);
                if m.rows != g.dim_at(deg, c) || m.cols != f.dim_at(deg, c) {
                    return Err(TcccError::NotAChainMap(format!("wrong shape in degree {deg} at cell {c}")));
                }
                let lhs = g.differential(deg, c).mul(&m);
                let rhs = self.at(deg + 1, c, f, g).mul(&f.differential(deg, c));
                if lhs != rhs {
                    return Err(TcccError::NotAChainMap(format!("does not commute with d in degree {deg} at cell {c}")));
                }
                for e in arr.covers(c) {
                    let fm = f.term(deg).map(|t| t.cover_map(c, e));
                    let gm = g.term(deg).map(|t| t.cover_map(c, e));
                    let lhs = gm.map_or_else(|| Matrix::zeros(0, m.rows), |x| x).mul(&m);
                    let rhs = self
                        .at(deg, e, f, g)
                        .mul(&fm.unwrap_or_else(|| Matrix::zeros(f.dim_at(deg, e), 0)));
                    if lhs != rhs {
                        return Err(TcccError::NotAChainMap(format!("not a sheaf map in degree {deg} on ({c}, {e})")));
                    }
                }
            }
        }
        Ok(())
    }
}

/// All strict chains `c0 < c1 < ... < ck` of the face poset, by length.
fn strict_chains(arr: &ArrangementComplex) -> Vec<Vec<Vec<usize>>> {
    let mut levels: Vec<Vec<Vec<usize>>> = vec![(0..arr.num_cells()).map(|c| vec![c]).collect()];
    loop {
        let mut next = Vec::new();
        for ch in levels.last().unwrap() {
            let last = *ch.last().unwrap();
            for &d in arr.above(last) {
                let mut e = ch.clone();
                e.push(d);
                next.push(e);
            }
        }
        if next.is_empty() {
            break;
        }
        levels.push(next);
    }
    levels
}

/// Graded dimensions of `RHom(F, G)` over the open box.
pub fn hom_complex(f: &SheafComplex, g: &SheafComplex) -> Result<GradedDims> {
    if !Arc::ptr_eq(&f.arr, &g.arr) && f.arr.hyperplanes() != g.arr.hyperplanes() {
        return Err(TcccError::RefinementRequired("hom between different arrangements".into()));
    }
    let arr = f.arr.clone();
    let chains = strict_chains(&arr);
    let f_res: Vec<HashMap<(usize, usize), Matrix>> = f.terms.iter().map(CellularSheaf::all_restrictions).collect();
    let g_res: Vec<HashMap<(usize, usize), Matrix>> = g.terms.iter().map(CellularSheaf::all_restrictions).collect();
    let f_map = |p: i64, c: usize, d: usize| -> Option<&Matrix> {
        usize::try_from(p - f.lo).ok().and_then(|k| f_res.get(k)).map(|t| &t[&(c, d)])
    };
    let g_map = |q: i64, c: usize, d: usize| -> Option<&Matrix> {
        usize::try_from(q - g.lo).ok().and_then(|k| g_res.get(k)).map(|t| &t[&(c, d)])
    };

    // Column offsets of every block (k, chain, p, q) within its total degree.
    let mut index: Vec<HashMap<Vec<usize>, usize>> = Vec::new();
    for level in &chains {
        index.push(level.iter().enumerate().map(|(i, ch)| (ch.clone(), i)).collect());
    }
    let mut offsets: HashMap<(usize, usize, i64, i64), usize> = HashMap::new();
    let mut sizes: BTreeMap<i64, usize> = BTreeMap::new();
    for (k, level) in chains.iter().enumerate() {
        for (ci, ch) in level.iter().enumerate() {
            let (c0, ck) = (ch[0], *ch.last().unwrap());
            for p in f.lo..=f.hi() {
                let df = f.dim_at(p, c0);
                if df == 0 {
                    continue;
                }
                for q in g.lo..=g.hi() {
                    let dg = g.dim_at(q, ck);
                    if dg == 0 {
                        continue;
                    }
                    let n = k as i64 + q - p;
                    let s = sizes.entry(n).or_insert(0);
                    offsets.insert((k, ci, p, q), *s);
                    *s += df * dg;
                }
            }
        }
    }

    // Column for the elementary map e_{j,i}: basis vector i of F^p(c0) to
    // basis vector j of G^q(ck); index offset + j * df + i.
    let mut columns: BTreeMap<i64, Vec<SparseColumn<Rational>>> = BTreeMap::new();
    for (&n, &size) in &sizes {
        columns.insert(n, vec![Vec::new(); size]);
    }
    let mut push = |n: i64, col: usize, row: usize, v: Rational| {
        columns.get_mut(&n).unwrap()[col].push((row, v));
    };
    let sgn = |e: i64| if e.rem_euclid(2) == 0 { Rational::one() } else { -Rational::one() };

    for (k, level) in chains.iter().enumerate() {
        for (ci, ch) in level.iter().enumerate() {
            let (c0, ck) = (ch[0], *ch.last().unwrap());
            for p in f.lo..=f.hi() {
                let df = f.dim_at(p, c0);
                for q in g.lo..=g.hi() {
                    let dg = g.dim_at(q, ck);
                    let Some(&off) = offsets.get(&(k, ci, p, q)) else { continue };
                    let n = k as i64 + q - p;
                    let col0 = off;
                    // Bar coboundary: insert a cell at position 0..=k+1.
                    if k + 1 < chains.len() {
                        // position 0: prepend c < c0, f -> f o F(c -> c0)
                        for &c in arr.below(c0) {
                            let mut e = Vec::with_capacity(k + 2);
                            e.push(c);
                            e.extend_from_slice(ch);
                            let ei = index[k + 1][&e];
                            let dfc = f.dim_at(p, c);
                            let Some(&toff) = offsets.get(&(k + 1, ei, p, q)) else { continue };
                            let a = f_map(p, c, c0).unwrap();
                            for j in 0..dg {
                                for i in 0..df {
                                    for l in 0..dfc {
                                        let v = a.get(i, l);
                                        if !v.is_zero() {
                                            push(n, col0 + j * df + i, toff + j * dfc + l, v.clone());
                                        }
                                    }
                                }
                            }
                        }
                        // interior positions
                        for pos in 1..=k {
                            let (a, b) = (ch[pos - 1], ch[pos]);
                            for &c in arr.above(a) {
                                if c == b || !arr.leq(c, b) {
                                    continue;
                                }
                                let mut e = ch.clone();
                                e.insert(pos, c);
                                let ei = index[k + 1][&e];
                                let toff = offsets[&(k + 1, ei, p, q)];
                                let s = sgn(pos as i64);
                                for j in 0..dg {
                                    for i in 0..df {
                                        push(n, col0 + j * df + i, toff + j * df + i, s.clone());
                                    }
                                }
                            }
                        }
                        // last position: append c > ck, f -> G(ck -> c) o f
                        let s = sgn(k as i64 + 1);
                        for &c in arr.above(ck) {
                            let mut e = ch.clone();
                            e.push(c);
                            let ei = index[k + 1][&e];
                            let dgc = g.dim_at(q, c);
                            let Some(&toff) = offsets.get(&(k + 1, ei, p, q)) else { continue };
                            let b = g_map(q, ck, c).unwrap();
                            for j in 0..dg {
                                for m in 0..dgc {
                                    let v = b.get(m, j);
                                    if v.is_zero() {
                                        continue;
                                    }
                                    let v = &s * v;
                                    for i in 0..df {
                                        push(n, col0 + j * df + i, toff + m * df + i, v.clone());
                                    }
                                }
                            }
                        }
                    }
                    // Internal differential: (-1)^k (d_G o f - (-1)^(q-p) f o d_F).
                    let sk = sgn(k as i64);
                    if let Some(&toff) = offsets.get(&(k, ci, p, q + 1)) {
                        let dgm = g.differential(q, ck);
                        for j in 0..dg {
                            for m in 0..dgm.rows {
                                let v = dgm.get(m, j);
                                if v.is_zero() {
                                    continue;
                                }
                                let v = &sk * v;
                                for i in 0..df {
                                    push(n, col0 + j * df + i, toff + m * df + i, v.clone());
                                }
                            }
                        }
                    }
                    if let Some(&toff) = offsets.get(&(k, ci, p - 1, q)) {
                        let dfm = f.differential(p - 1, c0);
                        let dfp = dfm.cols;
                        let s = -(&sk * sgn(q - p));
                        for j in 0..dg {
                            for i in 0..df {
                                for l in 0..dfp {
                                    let v = dfm.get(i, l);
                                    if !v.is_zero() {
                                        push(n, col0 + j * df + i, toff + j * dfp + l, &s * v);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    let mut ranks: BTreeMap<i64, usize> = BTreeMap::new();
    for (&n, cols) in columns.iter_mut() {
        for col in cols.iter_mut() {
            col.sort_by_key(|e| e.0);
        }
        let nrows = sizes.get(&(n + 1)).copied().unwrap_or(0);
        ranks.insert(n, if nrows == 0 { 0 } else { sparse_rank(cols, nrows) });
    }
    let mut out = GradedDims::new();
    for (&n, &size) in &sizes {
        let r_out = ranks.get(&n).copied().unwrap_or(0);
        let r_in = ranks.get(&(n - 1)).copied().unwrap_or(0);
        out.add(n, size - r_out - r_in);
    }
    Ok(out)
}

/// A closed convex block `C_Q` placed in some degree, for Euler-level
/// convolution. `Q` is an intersection of constraints `normal . x (<=|=) rhs`.
#[derive(Debug, Clone)]
pub struct ClosedBlock {
    pub degree: i64,
    pub constraints: Vec<Constraint>,
}

impl ClosedBlock {
    pub fn contains(&self, x: &[Rational]) -> bool {
        self.constraints.iter().all(|c| c.holds_at(x))
    }
}

/// Euler characteristic of compactly supported cohomology of a closed convex
/// polyhedron: zero when empty or when its recession cone is not a linear
/// subspace, and `(-1)^dim L` when it is a compact set plus the subspace `L`.
pub fn euler_c_closed_convex(dim: usize, constraints: &[Constraint]) -> i64 {
    if constraints.iter().any(|c| c.rel == Relation::Lt) {
        panic!("closed polyhedra only");
    }
    if !polyhedron::is_feasible(dim, constraints) {
        return 0;
    }
    let zero = Rational::zero();
    let rec: Vec<Constraint> = constraints
        .iter()
        .map(|c| Constraint::new(c.normal.clone(), c.rel, zero.clone()))
        .collect();
    for c in rec.iter().filter(|c| c.rel == Relation::Le) {
        if c.normal.iter().all(Zero::is_zero) {
            continue;
        }
        let mut sys = rec.clone();
        sys.push(Constraint::new(c.normal.clone(), Relation::Lt, zero.clone()));
        if polyhedron::is_feasible(dim, &sys) {
            return 0;
        }
    }
    let rows: Vec<Vec<Rational>> = rec.iter().map(|c| c.normal.clone()).collect();
    let lineality = dim - if rows.is_empty() { 0 } else { rank_dense(&rows) };
    if lineality % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Euler characteristic of the stalk at `x` of the convolution of two
/// complexes whose terms are sums of closed convex blocks:
/// `sum (-1)^(p+q) e_c(Q1 cap (x - Q2))`.
pub fn convolution_euler_stalk(f: &[ClosedBlock], g: &[ClosedBlock], x: &RationalVector) -> i64 {
    let n = x.dim();
    let mut total = 0;
    for b1 in f {
        for b2 in g {
            let mut sys = b1.constraints.clone();
            for c in &b2.constraints {
                // a . (x - z) (rel) r  <=>  -a . z (rel) r - a . x
                let ax = crate::linalg::dot(&c.normal, &x.0);
                sys.push(Constraint::new(c.normal.iter().map(|v| -v).collect(), c.rel, &c.rhs - ax));
            }
            let e = euler_c_closed_convex(n, &sys);
            if e != 0 {
                total += if (b1.degree + b2.degree).rem_euclid(2) == 0 { e } else { -e };
            }
        }
    }
    total
}

/// A complex of closed blocks in dimension one with explicit differential
/// coefficients between blocks of consecutive degrees (each a scalar times
/// the restriction map).
#[derive(Debug, Clone)]
pub struct BlockComplex {
    pub blocks: Vec<ClosedBlock>,
    /// `(from, to, coefficient)`.
    pub diff: Vec<(usize, usize, Rational)>,
}

impl BlockComplex {
    fn endpoints(&self) -> Vec<Rational> {
        let mut out = Vec::new();
        for b in &self.blocks {
            for c in &b.constraints {
                assert_eq!(c.normal.len(), 1, "one-dimensional blocks only");
                if !c.normal[0].is_zero() {
                    out.push(&c.rhs / &c.normal[0]);
                }
            }
        }
        out
    }
}

/// Full graded stalk at `x` of `F * G` on the real line, computed fiberwise:
/// compactly supported cohomology of `a -> F(a) (x) G(x - a)` over the line,
/// via the cellular cochains of the points where either factor changes.
pub fn convolution_stalk_1d(f: &BlockComplex, g: &BlockComplex, x: &Rational) -> GradedDims {
    let mut pts: Vec<Rational> = f.endpoints();
    pts.extend(g.endpoints().into_iter().map(|e| x - e));
    pts.sort();
    pts.dedup();
    // Cells: vertices pts[i] (cellular degree 0) and open intervals between
    // consecutive points, including the two unbounded rays (degree 1).
    let two = Rational::from_integer(2.into());
    let mut edges: Vec<(Option<usize>, Option<usize>, Rational)> = Vec::new();
    if pts.is_empty() {
        edges.push((None, None, Rational::zero()));
    } else {
        edges.push((None, Some(0), &pts[0] - Rational::one()));
        for i in 0..pts.len() - 1 {
            edges.push((Some(i), Some(i + 1), (&pts[i] + &pts[i + 1]) / &two));
        }
        edges.push((Some(pts.len() - 1), None, pts.last().unwrap() + Rational::one()));
    }
    // Basis at a sample point: pairs (b1, b2) with a in Q1, x - a in Q2.
    let basis = |a: &Rational| -> Vec<(usize, usize, i64)> {
        let y = [x - a];
        let aa = [a.clone()];
        let mut out = Vec::new();
        for (i, b1) in f.blocks.iter().enumerate() {
            if !b1.contains(&aa) {
                continue;
            }
            for (j, b2) in g.blocks.iter().enumerate() {
                if b2.contains(&y) {
                    out.push((i, j, b1.degree + b2.degree));
                }
            }
        }
        out
    };
    // Global basis of the double complex: (cell, pair), total degree.
    struct Gen {
        cell: usize,
        b1: usize,
        b2: usize,
        deg: i64,
    }
    let mut gens: Vec<Gen> = Vec::new();
    let mut cell_basis: Vec<Vec<(usize, usize, i64)>> = Vec::new();
    for (vi, p) in pts.iter().enumerate() {
        let b = basis(p);
        for &(i, j, d) in &b {
            gens.push(Gen { cell: vi, b1: i, b2: j, deg: d });
        }
        cell_basis.push(b);
    }
    for (ei, e) in edges.iter().enumerate() {
        let b = basis(&e.2);
        for &(i, j, d) in &b {
            gens.push(Gen { cell: pts.len() + ei, b1: i, b2: j, deg: d + 1 });
        }
        cell_basis.push(b);
    }
    let mut pos: HashMap<(usize, usize, usize), usize> = HashMap::new();
    let mut by_deg: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (gi, g0) in gens.iter().enumerate() {
        let list = by_deg.entry(g0.deg).or_default();
        pos.insert((g0.cell, g0.b1, g0.b2), list.len());
        list.push(gi);
    }
    let sgn = |e: i64| if e.rem_euclid(2) == 0 { Rational::one() } else { -Rational::one() };
    let mut ranks: BTreeMap<i64, usize> = BTreeMap::new();
    for (&deg, list) in &by_deg {
        let Some(targets) = by_deg.get(&(deg + 1)) else { continue };
        let mut cols: Vec<SparseColumn<Rational>> = Vec::new();
        for &gi in list {
            let g0 = &gens[gi];
            let mut col: Vec<(usize, Rational)> = Vec::new();
            let mut put = |cell: usize, b1: usize, b2: usize, v: Rational| {
                if let Some(&r) = pos.get(&(cell, b1, b2)) {
                    if gens[targets[r]].deg == deg + 1 {
                        col.push((r, v));
                    }
                }
            };
            let on_vertex = g0.cell < pts.len();
            let cdeg = if on_vertex { 0 } else { 1 };
            // Cellular coboundary from a vertex to its two incident edges:
            // edges are oriented left to right.
            if on_vertex {
                let v = g0.cell;
                // edge to the left has v as right endpoint: +1; to the right: -1
                put(pts.len() + v, g0.b1, g0.b2, Rational::one());
                put(pts.len() + v + 1, g0.b1, g0.b2, -Rational::one());
            }
            // Internal differential d(b1 (x) b2) = d b1 (x) b2 + (-1)^deg(b1) b1 (x) d b2,
            // twisted by (-1)^cellular degree.
            let sc = sgn(cdeg);
            for (from, to, coef) in &f.diff {
                if *from == g0.b1 {
                    put(g0.cell, *to, g0.b2, &sc * coef);
                }
            }
            let s1 = &sc * sgn(f.blocks[g0.b1].degree);
            for (from, to, coef) in &g.diff {
                if *from == g0.b2 {
                    put(g0.cell, g0.b1, *to, &s1 * coef);
                }
            }
            col.sort_by_key(|e| e.0);
            // Merge duplicates.
            let mut merged: SparseColumn<Rational> = Vec::new();
            for (r, v) in col {
                match merged.last_mut() {
                    Some((lr, lv)) if *lr == r => *lv += v,
                    _ => merged.push((r, v)),
                }
            }
            merged.retain(|e| !e.1.is_zero());
            cols.push(merged);
        }
        ranks.insert(deg, sparse_rank(&cols, targets.len()));
    }
    let mut out = GradedDims::new();
    for (&deg, list) in &by_deg {
        let r_out = ranks.get(&deg).copied().unwrap_or(0);
        let r_in = ranks.get(&(deg - 1)).copied().unwrap_or(0);
        out.add(deg, list.len() - r_out - r_in);
    }
    out
}

/// JSON dump of a complex: per degree, per cell stalk dimensions and the
/// nonzero cover maps.
pub fn complex_to_json(f: &SheafComplex) -> serde_json::Value {
    let terms: Vec<serde_json::Value> = f
        .terms
        .iter()
        .enumerate()
        .map(|(k, t)| {
            let mut maps: Vec<serde_json::Value> = t
                .maps
                .iter()
                .map(|(&(c, d), m)| {
                    serde_json::json!({
                        "from": c,
                        "to": d,
                        "matrix": (0..m.rows).map(|r| m.row(r).iter().map(format_rational).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            maps.sort_by_key(|v| (v["from"].as_u64(), v["to"].as_u64()));
            serde_json::json!({ "degree": f.lo + k as i64, "dims": t.dims, "maps": maps })
        })
        .collect();
    serde_json::json!({ "lo": f.lo, "terms": terms })
}

#[allow(dead_code)]
fn is_nonneg(q: &Rational) -> bool {
    !q.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{build_arrangement, hyperplane, BoundingBox, Side};
    use crate::lattice_fan::LatticeVector;
    use crate::linalg::{int, rat};

    fn line(points: &[i64], r: i64) -> Arc<ArrangementComplex> {
        let hs: Vec<_> = points.iter().map(|&p| hyperplane(&[1], int(p))).collect();
        Arc::new(build_arrangement(&hs, &BoundingBox::cube(1, r)).unwrap())
    }

    fn pt(xs: &[(i64, i64)]) -> RationalVector {
        RationalVector(xs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn constant_sheaf_cohomology() {
        let a = line(&[0], 1);
        let c = SheafComplex::from_sheaf(constant(&a), 0);
        assert_eq!(c.cohomology(), GradedDims::single(0, 1));
        let a2 = Arc::new(
            build_arrangement(&[hyperplane(&[1, 0], int(0)), hyperplane(&[1, 1], int(0))], &BoundingBox::cube(2, 2)).unwrap(),
        );
        assert_eq!(SheafComplex::from_sheaf(constant(&a2), 0).cohomology(), GradedDims::single(0, 1));
    }

    #[test]
    fn skyscraper_and_half_line() {
        let a = line(&[0], 1);
        let v = a.locate(&pt(&[(0, 1)])).unwrap();
        let sky = SheafComplex::from_sheaf(standard_on_cell(&a, v), 0);
        assert_eq!(sky.cohomology(), GradedDims::single(0, 1));
        assert_eq!(sky.stalk(&pt(&[(0, 1)])).unwrap(), GradedDims::single(0, 1));
        assert!(sky.stalk(&pt(&[(1, 2)])).unwrap().is_zero());
        let half = Region::whole().with(LatticeVector::from_i64(&[1]), int(0), Side::Ge);
        let h = constant_on_closed(&a, &half).unwrap();
        let dims: Vec<usize> = [(-1, 2), (0, 1), (1, 2)].iter().map(|&(n, d)| h.dim_at(a.locate(&pt(&[(n, d)])).unwrap())).collect();
        assert_eq!(dims, vec![0, 1, 1]);
    }

    #[test]
    fn open_interval_extension_by_zero() {
        // j_! C on (0, 1) inside (-2, 2): sections vanish, H^1 = C.
        let a = line(&[0, 1], 2);
        let u = Region::whole()
            .with(LatticeVector::from_i64(&[1]), int(0), Side::Gt)
            .with(LatticeVector::from_i64(&[1]), int(1), Side::Lt);
        let j = SheafComplex::from_sheaf(extension_by_zero(&a, &u).unwrap(), 0);
        assert_eq!(j.cohomology(), GradedDims::single(1, 1));
        // Costandard object: shifted by the dimension, so hom from the
        // constant sheaf lands in degree zero.
        assert_eq!(j.shift(1).cohomology(), GradedDims::single(0, 1));
        let whole = Region::whole();
        assert!(extension_by_zero(&a, &whole).is_ok());
    }

    #[test]
    fn acyclic_cone_of_identity() {
        let a = line(&[0], 1);
        let f = SheafComplex::from_sheaf(constant(&a), 0);
        let c = SheafComplex::cone(&f, &f, &ChainMap::identity(&f)).unwrap();
        for cell in 0..a.num_cells() {
            assert!(c.stalk_at_cell(cell).is_zero());
        }
        assert!(c.cohomology().is_zero());
        assert!(hom_complex(&f, &c).unwrap().is_zero());
    }

    #[test]
    fn shift_moves_stalks() {
        let a = line(&[0], 1);
        let f = SheafComplex::from_sheaf(constant(&a), 0);
        assert_eq!(f.shift(0).stalk(&pt(&[(1, 2)])).unwrap(), GradedDims::single(0, 1));
        assert_eq!(f.shift(2).stalk(&pt(&[(1, 2)])).unwrap(), GradedDims::single(-2, 1));
    }

    #[test]
    fn point_costalk_of_constant_sheaf() {
        // hom(i_* C_0, C) = C[-n] for n = 1 and n = 2.
        let a = line(&[0], 1);
        let v = a.locate(&pt(&[(0, 1)])).unwrap();
        let sky = SheafComplex::from_sheaf(standard_on_cell(&a, v), 0);
        let c = SheafComplex::from_sheaf(constant(&a), 0);
        assert_eq!(hom_complex(&sky, &c).unwrap(), GradedDims::single(1, 1));
        let a2 = Arc::new(
            build_arrangement(&[hyperplane(&[1, 0], int(0)), hyperplane(&[0, 1], int(0))], &BoundingBox::cube(2, 1)).unwrap(),
        );
        let v2 = a2.locate(&pt(&[(0, 1), (0, 1)])).unwrap();
        let sky2 = SheafComplex::from_sheaf(skyscraper(&a2, v2), 0);
        let c2 = SheafComplex::from_sheaf(constant(&a2), 0);
        assert_eq!(hom_complex(&sky2, &c2).unwrap(), GradedDims::single(2, 1));
        assert_eq!(hom_complex(&c2, &c2).unwrap(), GradedDims::single(0, 1));
    }

    #[test]
    fn hom_table_on_a_line() {
        let a = line(&[0], 1);
        for b in 0..a.num_cells() {
            for al in 0..a.num_cells() {
                let fb = SheafComplex::from_sheaf(standard_on_cell(&a, b), 0);
                let fa = SheafComplex::from_sheaf(standard_on_cell(&a, al), 0);
                let h = hom_complex(&fb, &fa).unwrap();
                if a.leq(al, b) {
                    assert_eq!(h, GradedDims::single(0, 1));
                } else {
                    assert!(h.is_zero());
                }
            }
        }
    }

    #[test]
    fn direct_sum_adds_dims() {
        let a = line(&[0], 1);
        let f = SheafComplex::from_sheaf(constant(&a), 0);
        let s = SheafComplex::direct_sum(&[f.clone(), f.shift(1)]).unwrap();
        let mut expect = GradedDims::single(0, 1);
        expect.add(-1, 1);
        assert_eq!(s.cohomology(), expect);
    }

    #[test]
    fn non_chain_map_is_rejected() {
        let a = line(&[0], 1);
        let f = SheafComplex::from_sheaf(constant(&a), 0);
        let v = a.locate(&pt(&[(0, 1)])).unwrap();
        let g = SheafComplex::from_sheaf(skyscraper(&a, v), 0);
        // Identity on stalks at the vertex only is not a sheaf map C -> C_v
        // extended by zero? It is; instead try C_v -> C.
        let mut maps = vec![vec![Matrix::zeros(1, 0); a.num_cells()]];
        maps[0][v] = Matrix::identity(1);
        let phi = ChainMap { lo: 0, maps };
        assert!(matches!(SheafComplex::cone(&g, &f, &phi), Err(TcccError::NotAChainMap(_))));
    }

    #[test]
    fn euler_rule_on_basic_sets() {
        let c = |n: i64, r: i64| Constraint::new(vec![int(n)], Relation::Le, int(r));
        assert_eq!(euler_c_closed_convex(1, &[c(1, 1), c(-1, 1)]), 1);
        assert_eq!(euler_c_closed_convex(1, &[c(-1, 0)]), 0);
        assert_eq!(euler_c_closed_convex(1, &[]), -1);
        assert_eq!(euler_c_closed_convex(1, &[c(1, -1), c(-1, -1)]), 0);
        assert_eq!(euler_c_closed_convex(2, &[]), 1);
    }

    #[test]
    fn convolution_of_half_lines() {
        // C_[0,inf) * C_[0,inf): fiber {a >= 0, x - a >= 0}, a segment for x >= 0.
        let ray = ClosedBlock { degree: 0, constraints: vec![Constraint::ge(&[int(1)], int(0))] };
        for (x, e) in [(-1, 0), (0, 1), (3, 1)] {
            assert_eq!(convolution_euler_stalk(&[ray.clone()], &[ray.clone()], &RationalVector(vec![int(x)])), e);
        }
        let fc = BlockComplex { blocks: vec![ray.clone()], diff: vec![] };
        assert_eq!(convolution_stalk_1d(&fc, &fc, &int(2)), GradedDims::single(0, 1));
        assert!(convolution_stalk_1d(&fc, &fc, &int(-2)).is_zero());
    }

    #[test]
    fn skyscraper_is_unit_for_convolution() {
        let pt0 = ClosedBlock {
            degree: 0,
            constraints: vec![Constraint::new(vec![int(1)], Relation::Eq, int(0))],
        };
        for (x, e) in [(0, 1), (1, 0)] {
            assert_eq!(convolution_euler_stalk(&[pt0.clone()], &[pt0.clone()], &RationalVector(vec![int(x)])), e);
        }
    }

    #[test]
    fn excision_euler_identity() {
        // chi Gamma(j_! j^! F) - chi Gamma(F) + chi Gamma(i_* i^* F) = 0 with
        // F constant, U = (0, inf) and Z = (-inf, 0].
        let a = line(&[0], 2);
        let u = Region::whole().with(LatticeVector::from_i64(&[1]), int(0), Side::Gt);
        let z = Region::whole().with(LatticeVector::from_i64(&[1]), int(0), Side::Le);
        let ju = SheafComplex::from_sheaf(extension_by_zero(&a, &u).unwrap(), 0).cohomology().euler();
        let f = SheafComplex::from_sheaf(constant(&a), 0).cohomology().euler();
        let iz = SheafComplex::from_sheaf(constant_on_closed(&a, &z).unwrap(), 0).cohomology().euler();
        assert_eq!(ju - f + iz, 0);
    }
}
