//! The hyperplane arrangement `{δ^⊥} ∪ {(mδ ± α)^⊥ : 0 ≤ m < n, α ∈ Φ⁺}`
//! in `Θ_{nδ}`, point location by sign vectors, exact feasibility and
//! planar slices.

mod feasibility;
mod slice;

use std::collections::HashSet;
use std::fmt;

use num_integer::Integer;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::field::Rational;
use crate::rootsys::{DynkinType, RootLatticeVector, RootSystem};
use crate::stability::StabilityVector;

pub use feasibility::{interior_point, solve_system, Feasibility, Inequality};
pub use slice::{render_slice, FaceKind, SliceFace, SlicePlane, SliceRender};

/// A wall `β^⊥`, stored with a primitive normal whose first nonzero
/// coefficient is positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperplane {
    normal: RootLatticeVector,
}

impl Hyperplane {
    /// `None` for the zero vector.
    pub fn new(normal: RootLatticeVector) -> Option<Self> {
        let content = normal.coeffs.iter().fold(0i64, |g, &c| g.gcd(&c));
        if content == 0 {
            return None;
        }
        let first = *normal.coeffs.iter().find(|&&c| c != 0)?;
        let scale = if first < 0 { -content } else { content };
        Some(Hyperplane {
            normal: RootLatticeVector {
                dynkin: normal.dynkin,
                coeffs: normal.coeffs.iter().map(|c| c / scale).collect(),
            },
        })
    }

    pub fn normal(&self) -> &RootLatticeVector {
        &self.normal
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}⊥", self.normal)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    dynkin: DynkinType,
    n: u32,
    hyperplanes: Vec<Hyperplane>,
}

impl Arrangement {
    pub fn dynkin(&self) -> DynkinType {
        self.dynkin
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }
}

/// Enumerates `δ`, then `mδ + α`, `mδ - α` for `m = 0..n` and `α ∈ Φ⁺` in
/// order, normalizing and keeping the first occurrence of each wall.
pub fn build_arrangement(rs: &RootSystem, n: u32) -> Result<Arrangement> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let delta = rs.delta_vector();
    let mut seen = HashSet::new();
    let mut hyperplanes = Vec::new();
    let mut push = |v: RootLatticeVector| {
        if let Some(h) = Hyperplane::new(v) {
            if seen.insert(h.clone()) {
                hyperplanes.push(h);
            }
        }
    };
    push(delta.clone());
    for m in 0..n as i64 {
        for alpha in rs.positive_roots_affine() {
            let base = delta.scale(m);
            push(base.scaled_add(1, &alpha));
            push(base.scaled_add(-1, &alpha));
        }
    }
    Ok(Arrangement { dynkin: rs.dynkin(), n, hyperplanes })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn of(q: &Rational) -> Sign {
        if q.is_positive() {
            Sign::Pos
        } else if q.is_negative() {
            Sign::Neg
        } else {
            Sign::Zero
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Neg => '-',
            Sign::Zero => '0',
            Sign::Pos => '+',
        }
    }
}

/// One sign per hyperplane, in arrangement order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector(pub Vec<Sign>);

impl SignVector {
    pub fn is_zero_free(&self) -> bool {
        !self.0.contains(&Sign::Zero)
    }

    /// Indices of the walls the point lies on.
    pub fn zeros(&self) -> Vec<usize> {
        self.0.iter().enumerate().filter(|(_, s)| **s == Sign::Zero).map(|(i, _)| i).collect()
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|s| write!(f, "{}", s.symbol()))
    }
}

pub fn sign_vector(arr: &Arrangement, theta: &StabilityVector) -> Result<SignVector> {
    if theta.dynkin() != arr.dynkin {
        return Err(Error::MismatchedRootSystem);
    }
    let rs = RootSystem::build(arr.dynkin)?;
    if theta.delta_multiple(&rs) != Some(arr.n) {
        return Err(Error::ContextMismatch(format!("θ context {:?} is not {}·δ", theta.context(), arr.n)));
    }
    Ok(SignVector(arr.hyperplanes.iter().map(|h| Sign::of(&theta.eval(&h.normal.coeffs))).collect()))
}
