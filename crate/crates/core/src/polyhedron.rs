//! Exact feasibility for small systems of linear equalities and (strict or
//! non-strict) inequalities, by substitution and Fourier-Motzkin elimination.
//! A feasible system also yields an explicit rational witness point.

use std::collections::HashMap;

use num::{One, Signed, Zero};

use crate::linalg::{int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    /// `normal . x <= rhs`
    Le,
    /// `normal . x < rhs`
    Lt,
    /// `normal . x = rhs`
    Eq,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub normal: Vec<Rational>,
    pub rel: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(normal: Vec<Rational>, rel: Relation, rhs: Rational) -> Self {
        Self { normal, rel, rhs }
    }

    /// `normal . x >= rhs`, stored as `-normal . x <= -rhs`.
    pub fn ge(normal: &[Rational], rhs: Rational) -> Self {
        Self::new(normal.iter().map(|v| -v).collect(), Relation::Le, -rhs)
    }

    /// `normal . x > rhs`.
    pub fn gt(normal: &[Rational], rhs: Rational) -> Self {
        Self::new(normal.iter().map(|v| -v).collect(), Relation::Lt, -rhs)
    }

    pub fn holds_at(&self, x: &[Rational]) -> bool {
        let lhs = crate::linalg::dot(&self.normal, x);
        match self.rel {
            Relation::Le => lhs <= self.rhs,
            Relation::Lt => lhs < self.rhs,
            Relation::Eq => lhs == self.rhs,
        }
    }
}

/// Returns a point satisfying every constraint, or `None` if the system is
/// infeasible. `dim` is the number of variables.
pub fn feasible_point(dim: usize, constraints: &[Constraint]) -> Option<Vec<Rational>> {
    let (eqs, ineqs): (Vec<_>, Vec<_>) =
        constraints.iter().cloned().partition(|c| c.rel == Relation::Eq);
    solve_with_equalities(dim, eqs, ineqs)
}

pub fn is_feasible(dim: usize, constraints: &[Constraint]) -> bool {
    feasible_point(dim, constraints).is_some()
}

fn solve_with_equalities(
    dim: usize,
    mut eqs: Vec<Constraint>,
    ineqs: Vec<Constraint>,
) -> Option<Vec<Rational>> {
    // Drop trivial equalities, detect contradictions.
    eqs.retain(|e| !(e.normal.iter().all(Zero::is_zero) && e.rhs.is_zero()));
    if eqs.iter().any(|e| e.normal.iter().all(Zero::is_zero)) {
        return None;
    }
    let Some(eq) = eqs.pop() else {
        return fourier_motzkin(dim, ineqs);
    };
    // Eliminate the last variable with a nonzero coefficient:
    // x_k = (rhs - sum_{i != k} a_i x_i) / a_k.
    let k = (0..dim).rev().find(|&i| !eq.normal[i].is_zero()).unwrap();
    let ak = eq.normal[k].clone();
    let subst = |c: &Constraint| -> Constraint {
        let ck = &c.normal[k];
        if ck.is_zero() {
            let mut n = c.normal.clone();
            n.remove(k);
            return Constraint::new(n, c.rel, c.rhs.clone());
        }
        let f = ck / &ak;
        let mut n: Vec<Rational> =
            c.normal.iter().zip(&eq.normal).map(|(ci, ei)| ci - &f * ei).collect();
        n.remove(k);
        Constraint::new(n, c.rel, &c.rhs - &f * &eq.rhs)
    };
    let eqs2: Vec<_> = eqs.iter().map(subst).collect();
    let ineqs2: Vec<_> = ineqs.iter().map(subst).collect();
    let mut point = solve_with_equalities(dim - 1, eqs2, ineqs2)?;
    let mut acc = eq.rhs.clone();
    for (i, v) in point.iter().enumerate() {
        let idx = if i < k { i } else { i + 1 };
        acc -= &eq.normal[idx] * v;
    }
    point.insert(k, acc / ak);
    Some(point)
}

/// Scales a constraint so that its first nonzero coefficient has absolute value one.
fn normalize(c: Constraint) -> Constraint {
    match c.normal.iter().find(|v| !v.is_zero()) {
        Some(lead) => {
            let s = lead.abs().recip();
            Constraint::new(c.normal.iter().map(|v| v * &s).collect(), c.rel, c.rhs * s)
        }
        None => c,
    }
}

/// Keeps, for each normal direction, only the tightest bound.
fn dedupe(cs: Vec<Constraint>) -> Vec<Constraint> {
    let mut best: HashMap<Vec<Rational>, (Relation, Rational)> = HashMap::new();
    let mut order = Vec::new();
    for c in cs.into_iter().map(normalize) {
        match best.get_mut(&c.normal) {
            Some((rel, rhs)) => {
                if c.rhs < *rhs || (c.rhs == *rhs && c.rel == Relation::Lt) {
                    *rel = c.rel;
                    *rhs = c.rhs;
                }
            }
            None => {
                order.push(c.normal.clone());
                best.insert(c.normal, (c.rel, c.rhs));
            }
        }
    }
    order
        .into_iter()
        .map(|n| {
            let (rel, rhs) = best.remove(&n).unwrap();
            Constraint::new(n, rel, rhs)
        })
        .collect()
}

fn fourier_motzkin(dim: usize, ineqs: Vec<Constraint>) -> Option<Vec<Rational>> {
    if dim == 0 {
        let ok = ineqs.iter().all(|c| match c.rel {
            Relation::Le => Rational::zero() <= c.rhs,
            Relation::Lt => Rational::zero() < c.rhs,
            Relation::Eq => c.rhs.is_zero(),
        });
        return ok.then(Vec::new);
    }
    let ineqs = dedupe(ineqs);
    let k = dim - 1;
    let mut uppers = Vec::new();
    let mut lowers = Vec::new();
    let mut rest = Vec::new();
    for c in ineqs {
        if c.normal[k].is_zero() {
            let mut n = c.normal.clone();
            n.pop();
            rest.push(Constraint::new(n, c.rel, c.rhs));
        } else if c.normal[k].is_positive() {
            uppers.push(c);
        } else {
            lowers.push(c);
        }
    }
    // Bound on x_k in terms of the other variables: x_k (rel) (rhs - a'.x') / a_k.
    let bound = |c: &Constraint| -> (Vec<Rational>, Rational) {
        let ak = &c.normal[k];
        let coeffs = c.normal[..k].iter().map(|v| -(v / ak)).collect();
        (coeffs, &c.rhs / ak)
    };
    for lo in &lowers {
        let (lc, lr) = bound(lo);
        for up in &uppers {
            let (uc, ur) = bound(up);
            // lc.x' + lr (<) uc.x' + ur
            let n = lc.iter().zip(&uc).map(|(a, b)| a - b).collect();
            let rel = if lo.rel == Relation::Lt || up.rel == Relation::Lt {
                Relation::Lt
            } else {
                Relation::Le
            };
            rest.push(Constraint::new(n, rel, &ur - &lr));
        }
    }
    let mut point = fourier_motzkin(k, rest)?;
    let eval = |c: &Constraint| {
        let (coeffs, r) = bound(c);
        coeffs.iter().zip(&point).fold(r, |acc, (a, x)| acc + a * x)
    };
    let lo = lowers.iter().map(|c| (eval(c), c.rel)).max_by(|a, b| a.0.cmp(&b.0).then(strict_last(a.1, b.1)));
    let hi = uppers.iter().map(|c| (eval(c), c.rel)).min_by(|a, b| a.0.cmp(&b.0).then(strict_first(a.1, b.1)));
    let xk = match (lo, hi) {
        (None, None) => Rational::zero(),
        (Some((l, rel)), None) => if rel == Relation::Lt { l + Rational::one() } else { l },
        (None, Some((h, rel))) => if rel == Relation::Lt { h - Rational::one() } else { h },
        (Some((l, _)), Some((h, _))) => {
            if l == h {
                l
            } else {
                (l + h) / int(2)
            }
        }
    };
    point.push(xk);
    Some(point)
}

// Among equal lower bounds prefer the strict one (it is the binding one).
fn strict_last(a: Relation, b: Relation) -> std::cmp::Ordering {
    (a == Relation::Lt).cmp(&(b == Relation::Lt))
}

fn strict_first(a: Relation, b: Relation) -> std::cmp::Ordering {
    (b == Relation::Lt).cmp(&(a == Relation::Lt))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn open_triangle_has_interior_point() {
        // x < 1, y < 1, x + y > -1
        let cs = vec![
            Constraint::new(v(&[1, 0]), Relation::Lt, int(1)),
            Constraint::new(v(&[0, 1]), Relation::Lt, int(1)),
            Constraint::gt(&v(&[1, 1]), int(-1)),
        ];
        let p = feasible_point(2, &cs).unwrap();
        assert!(cs.iter().all(|c| c.holds_at(&p)));
    }

    #[test]
    fn strictness_matters() {
        let closed = vec![
            Constraint::new(v(&[1]), Relation::Le, int(0)),
            Constraint::ge(&v(&[1]), int(0)),
        ];
        assert_eq!(feasible_point(1, &closed), Some(v(&[0])));
        let open = vec![
            Constraint::new(v(&[1]), Relation::Lt, int(0)),
            Constraint::ge(&v(&[1]), int(0)),
        ];
        assert!(feasible_point(1, &open).is_none());
    }

    #[test]
    fn equalities_are_substituted() {
        // x + y = 1, x - y = 0, x > 0  -> (1/2, 1/2)
        let cs = vec![
            Constraint::new(v(&[1, 1]), Relation::Eq, int(1)),
            Constraint::new(v(&[1, -1]), Relation::Eq, int(0)),
            Constraint::gt(&v(&[1, 0]), int(0)),
        ];
        assert_eq!(feasible_point(2, &cs), Some(vec![rat(1, 2), rat(1, 2)]));
        let bad = vec![
            Constraint::new(v(&[1, 1]), Relation::Eq, int(1)),
            Constraint::new(v(&[2, 2]), Relation::Eq, int(3)),
        ];
        assert!(feasible_point(2, &bad).is_none());
    }

    #[test]
    fn three_dimensional_simplex() {
        let cs = vec![
            Constraint::gt(&v(&[1, 0, 0]), int(0)),
            Constraint::gt(&v(&[0, 1, 0]), int(0)),
            Constraint::gt(&v(&[0, 0, 1]), int(0)),
            Constraint::new(v(&[1, 1, 1]), Relation::Lt, int(1)),
        ];
        let p = feasible_point(3, &cs).unwrap();
        assert!(cs.iter().all(|c| c.holds_at(&p)));
    }
}
