//! Exact Fourier–Motzkin elimination over `Q` for mixed strict and non-strict
//! linear systems.

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::Rational;
use crate::rootsys::RootSystem;
use crate::stability::{make_theta, LinearConstraint, Relation, StabilityVector};

/// `coeffs · x > rhs` if `strict`, otherwise `coeffs · x ≥ rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inequality {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
    pub strict: bool,
}

impl Inequality {
    pub fn new(coeffs: Vec<Rational>, rhs: Rational, strict: bool) -> Self {
        Inequality { coeffs, rhs, strict }
    }

    pub fn holds(&self, x: &[Rational]) -> bool {
        let lhs: Rational = self.coeffs.iter().zip(x).map(|(a, b)| a * b).sum();
        if self.strict {
            lhs > self.rhs
        } else {
            lhs >= self.rhs
        }
    }

    /// Scales so the first nonzero coefficient has absolute value 1.
    fn normalized(mut self) -> Self {
        if let Some(lead) = self.coeffs.iter().find(|c| !c.is_zero()).map(|c| c.abs()) {
            for c in &mut self.coeffs {
                *c /= &lead;
            }
            self.rhs /= lead;
        }
        self
    }

    fn is_constant(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// For a constant row, whether `0 > rhs` (or `0 ≥ rhs`) holds.
    fn constant_holds(&self) -> bool {
        if self.strict {
            self.rhs.is_negative()
        } else {
            !self.rhs.is_positive()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(StabilityVector),
    Infeasible,
}

impl Feasibility {
    pub fn point(&self) -> Option<&StabilityVector> {
        match self {
            Feasibility::Feasible(p) => Some(p),
            Feasibility::Infeasible => None,
        }
    }
}

/// Keeps, for each coefficient vector, only the strongest bound. Returns
/// `None` on a violated constant row.
fn prune(rows: Vec<Inequality>) -> Option<Vec<Inequality>> {
    let mut best: HashMap<Vec<Rational>, (Rational, bool)> = HashMap::new();
    let mut order = Vec::new();
    for row in rows {
        let row = row.normalized();
        if row.is_constant() {
            if !row.constant_holds() {
                return None;
            }
            continue;
        }
        match best.get_mut(&row.coeffs) {
            Some((rhs, strict)) => {
                if row.rhs > *rhs || (row.rhs == *rhs && row.strict) {
                    *rhs = row.rhs;
                    *strict = row.strict;
                }
            }
            None => {
                order.push(row.coeffs.clone());
                best.insert(row.coeffs, (row.rhs, row.strict));
            }
        }
    }
    Some(
        order
            .into_iter()
            .map(|coeffs| {
                let (rhs, strict) = best.remove(&coeffs).expect("recorded above");
                Inequality { coeffs, rhs, strict }
            })
            .collect(),
    )
}

/// A bound value and whether it is strict.
type Bound = Option<(Rational, bool)>;

/// Lower and upper bounds on `x_var` from `rows`, given `x_0..x_{var-1}`.
fn bounds(rows: &[Inequality], var: usize, x: &[Rational]) -> (Bound, Bound) {
    let mut lower: Bound = None;
    let mut upper: Bound = None;
    for row in rows {
        let a = &row.coeffs[var];
        if a.is_zero() {
            continue;
        }
        let rest: Rational = row.coeffs[..var].iter().zip(x).map(|(c, v)| c * v).sum();
        let bound = (&row.rhs - rest) / a;
        if a.is_positive() {
            let tighter = match &lower {
                None => true,
                Some((l, s)) => bound > *l || (bound == *l && row.strict && !s),
            };
            if tighter {
                lower = Some((bound, row.strict));
            }
        } else {
            let tighter = match &upper {
                None => true,
                Some((u, s)) => bound < *u || (bound == *u && row.strict && !s),
            };
            if tighter {
                upper = Some((bound, row.strict));
            }
        }
    }
    (lower, upper)
}

fn admissible(x: &Rational, lower: &Option<(Rational, bool)>, upper: &Option<(Rational, bool)>) -> bool {
    let above = match lower {
        None => true,
        Some((l, true)) => x > l,
        Some((l, false)) => x >= l,
    };
    let below = match upper {
        None => true,
        Some((u, true)) => x < u,
        Some((u, false)) => x <= u,
    };
    above && below
}

/// Zero if allowed, else the admissible integer closest to zero, else the
/// midpoint of the interval.
fn choose(lower: &Option<(Rational, bool)>, upper: &Option<(Rational, bool)>) -> Rational {
    let zero = Rational::zero();
    if admissible(&zero, lower, upper) {
        return zero;
    }
    let below_lower = !admissible(&zero, lower, &None);
    let candidate = if below_lower {
        let (l, strict) = lower.as_ref().expect("zero violates the lower bound");
        let c = l.ceil();
        if c == *l && *strict {
            c + Rational::one()
        } else {
            c
        }
    } else {
        let (u, strict) = upper.as_ref().expect("zero violates the upper bound");
        let f = u.floor();
        if f == *u && *strict {
            f - Rational::one()
        } else {
            f
        }
    };
    if admissible(&candidate, lower, upper) {
        return candidate;
    }
    match (lower, upper) {
        (Some((l, _)), Some((u, _))) => (l + u) / Rational::from_integer(2.into()),
        _ => unreachable!("a one-sided bound always admits an integer"),
    }
}

/// Solves a system in `dim` unknowns, returning a rational solution or
/// `None` if the system is infeasible.
pub fn solve_system(dim: usize, rows: &[Inequality]) -> Option<Vec<Rational>> {
    let mut current = prune(rows.to_vec())?;
    let mut stages = Vec::with_capacity(dim);
    for var in (0..dim).rev() {
        stages.push(current.clone());
        let (mut pos, mut neg, mut next) = (Vec::new(), Vec::new(), Vec::new());
        for row in current {
            if row.coeffs[var].is_positive() {
                pos.push(row);
            } else if row.coeffs[var].is_negative() {
                neg.push(row);
            } else {
                next.push(row);
            }
        }
        for p in &pos {
            for q in &neg {
                let (sp, sq) = (-&q.coeffs[var], p.coeffs[var].clone());
                let coeffs = p.coeffs.iter().zip(&q.coeffs).map(|(a, b)| &sp * a + &sq * b).collect();
                next.push(Inequality { coeffs, rhs: &sp * &p.rhs + &sq * &q.rhs, strict: p.strict || q.strict });
            }
        }
        current = prune(next)?;
    }
    let mut x: Vec<Rational> = Vec::with_capacity(dim);
    for var in 0..dim {
        let (lower, upper) = bounds(&stages[dim - 1 - var], var, &x);
        x.push(choose(&lower, &upper));
    }
    debug_assert!(rows.iter().all(|r| r.holds(&x)));
    Some(x)
}

/// A point of `Θ_v` satisfying every constraint, or `Infeasible`.
pub fn interior_point(rs: &RootSystem, v: &[usize], constraints: &[LinearConstraint]) -> Result<Feasibility> {
    let dim = rs.vertex_count();
    let mut rows = Vec::new();
    for c in constraints {
        if c.normal.dynkin != rs.dynkin() {
            return Err(Error::MismatchedRootSystem);
        }
        let coeffs: Vec<Rational> = c.normal.coeffs.iter().map(|&a| Rational::from_integer(a.into())).collect();
        match c.relation {
            Relation::Greater => rows.push(Inequality::new(coeffs, Rational::zero(), true)),
            Relation::GreaterEq => rows.push(Inequality::new(coeffs, Rational::zero(), false)),
            Relation::Equal => {
                let neg = coeffs.iter().map(|a| -a).collect();
                rows.push(Inequality::new(coeffs, Rational::zero(), false));
                rows.push(Inequality::new(neg, Rational::zero(), false));
            }
        }
    }
    match solve_system(dim, &rows) {
        Some(x) => Ok(Feasibility::Feasible(make_theta(rs, v, x)?)),
        None => {
            // still validate the context so errors do not depend on feasibility
            make_theta(rs, v, vec![Rational::zero(); dim])?;
            Ok(Feasibility::Infeasible)
        }
    }
}
