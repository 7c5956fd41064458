//! Finite and affine simply-laced root systems.
//!
//! Finite vertices are numbered `1..=rank` in Bourbaki order; the affine
//! vertex is always `0`.
//!
//! * `A_n`: chain `1 - 2 - ... - n`.
//! * `D_n`: chain `1 - ... - (n-2)`, with `n-1` and `n` both attached to `n-2`.
//! * `E_n`: chain `1 - 3 - 4 - 5 - ... - n`, with `2` attached to `4`.
//!
//! The affine vertex is attached through the highest root `θ`, so that
//! `α_0 = δ - θ`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::field::Rational;
use crate::stability::StabilityVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    D,
    E,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::D => 'D',
            Family::E => 'E',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DynkinType {
    family: Family,
    rank: usize,
}

impl DynkinType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
        };
        if !ok {
            return Err(Error::InvalidRank { family: family.letter(), rank });
        }
        Ok(DynkinType { family, rank })
    }

    pub fn a(rank: usize) -> Self {
        Self::new(Family::A, rank).expect("valid A rank")
    }

    pub fn d(rank: usize) -> Self {
        Self::new(Family::D, rank).expect("valid D rank")
    }

    pub fn e(rank: usize) -> Self {
        Self::new(Family::E, rank).expect("valid E rank")
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Edges of the finite diagram in Bourbaki numbering.
    fn finite_edges(&self) -> Vec<(usize, usize)> {
        let n = self.rank;
        match self.family {
            Family::A => (1..n).map(|i| (i, i + 1)).collect(),
            Family::D => {
                let mut e: Vec<_> = (1..n - 1).map(|i| (i, i + 1)).collect();
                e.push((n - 2, n));
                e
            }
            Family::E => {
                let mut e = vec![(1, 3), (2, 4)];
                e.extend((3..n).map(|i| (i, i + 1)));
                e
            }
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for DynkinType {
    type Err = Error;

    /// Accepts `A2`, `d4`, `E8`, and the spelled-out `A_2` form.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('D') => Family::D,
            Some('E') => Family::E,
            _ => return Err(Error::Parse(format!("unknown Dynkin type {s:?}"))),
        };
        let rank: usize = chars
            .as_str()
            .trim_start_matches('_')
            .parse()
            .map_err(|_| Error::Parse(format!("unknown Dynkin type {s:?}")))?;
        DynkinType::new(family, rank)
    }
}

/// An integer combination `Σ c_i α_i` of the affine simple roots. `δ` itself
/// is the vector `RootSystem::delta`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootLatticeVector {
    pub dynkin: DynkinType,
    pub coeffs: Vec<i64>,
}

impl RootLatticeVector {
    pub fn new(dynkin: DynkinType, coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() != dynkin.rank() + 1 {
            return Err(Error::IndexMismatch(format!(
                "{} coefficients for {} vertices",
                coeffs.len(),
                dynkin.rank() + 1
            )));
        }
        Ok(RootLatticeVector { dynkin, coeffs })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn scaled_add(&self, k: i64, other: &RootLatticeVector) -> RootLatticeVector {
        RootLatticeVector {
            dynkin: self.dynkin,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + k * b).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> RootLatticeVector {
        RootLatticeVector { dynkin: self.dynkin, coeffs: self.coeffs.iter().map(|c| k * c).collect() }
    }
}

impl fmt::Display for RootLatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    dynkin: DynkinType,
    finite_cartan: Vec<Vec<i64>>,
    affine_cartan: Vec<Vec<i64>>,
    positive_roots: Vec<Vec<i64>>,
    delta: Vec<i64>,
    h: i64,
}

impl RootSystem {
    pub fn build(dynkin: DynkinType) -> Result<Self> {
        // re-validate in case the caller built the type by hand
        let dynkin = DynkinType::new(dynkin.family, dynkin.rank)?;
        let n = dynkin.rank();
        let mut finite = vec![vec![0i64; n]; n];
        for (i, row) in finite.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (a, b) in dynkin.finite_edges() {
            finite[a - 1][b - 1] = -1;
            finite[b - 1][a - 1] = -1;
        }

        let positive_roots = close_under_reflections(&finite);
        let highest =
            positive_roots.iter().max_by_key(|r| r.iter().sum::<i64>()).expect("nonempty root system").clone();

        let mut delta = vec![1];
        delta.extend(&highest);

        // α_0 = δ - θ, so (α_0, α_i) = -(θ, α_i) for finite i and (α_0, α_0) = 2.
        let mut affine = vec![vec![0i64; n + 1]; n + 1];
        affine[0][0] = 2;
        for i in 0..n {
            let c: i64 = (0..n).map(|k| finite[i][k] * highest[k]).sum();
            affine[0][i + 1] = -c;
            affine[i + 1][0] = -c;
            for j in 0..n {
                affine[i + 1][j + 1] = finite[i][j];
            }
        }

        let h = delta.iter().sum();
        Ok(RootSystem { dynkin, finite_cartan: finite, affine_cartan: affine, positive_roots, delta, h })
    }

    pub fn dynkin(&self) -> DynkinType {
        self.dynkin
    }

    pub fn rank(&self) -> usize {
        self.dynkin.rank()
    }

    /// `|I|`, the number of affine vertices.
    pub fn vertex_count(&self) -> usize {
        self.dynkin.rank() + 1
    }

    pub fn finite_cartan(&self) -> &[Vec<i64>] {
        &self.finite_cartan
    }

    pub fn affine_cartan(&self) -> &[Vec<i64>] {
        &self.affine_cartan
    }

    /// Positive roots of the finite system, as coefficient vectors over `1..=rank`.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    /// Positive roots embedded in the affine root lattice (coefficient 0 at vertex 0).
    pub fn positive_roots_affine(&self) -> impl Iterator<Item = RootLatticeVector> + '_ {
        self.positive_roots.iter().map(move |r| {
            let mut c = vec![0];
            c.extend(r);
            RootLatticeVector { dynkin: self.dynkin, coeffs: c }
        })
    }

    pub fn delta(&self) -> &[i64] {
        &self.delta
    }

    pub fn delta_vector(&self) -> RootLatticeVector {
        RootLatticeVector { dynkin: self.dynkin, coeffs: self.delta.clone() }
    }

    /// `δ|_J = Σ_{j ∈ J} δ_j α_j`.
    pub fn delta_restricted(&self, j: &BTreeSet<usize>) -> RootLatticeVector {
        let coeffs = self.delta.iter().enumerate().map(|(i, &d)| if j.contains(&i) { d } else { 0 }).collect();
        RootLatticeVector { dynkin: self.dynkin, coeffs }
    }

    pub fn simple_root(&self, i: usize) -> RootLatticeVector {
        let mut c = vec![0; self.vertex_count()];
        c[i] = 1;
        RootLatticeVector { dynkin: self.dynkin, coeffs: c }
    }

    /// `h = Σ δ_i`.
    pub fn h(&self) -> i64 {
        self.h
    }

    /// Undirected edges of the affine diagram `(i, j)` with `i < j`, listed
    /// with multiplicity (affine `A_1` has the edge `(0, 1)` twice).
    pub fn affine_edges(&self) -> Vec<(usize, usize)> {
        let n = self.vertex_count();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for _ in 0..(-self.affine_cartan[i][j]).max(0) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// `true` if the vertex set `I` is `0..vertex_count()` and `subset ⊆ I`.
    pub fn check_subset(&self, subset: &BTreeSet<usize>) -> Result<()> {
        match subset.iter().find(|&&i| i >= self.vertex_count()) {
            Some(i) => Err(Error::IndexMismatch(format!("vertex {i} not in I for {}", self.dynkin))),
            None => Ok(()),
        }
    }

    /// Complement `I \ subset`.
    pub fn complement(&self, subset: &BTreeSet<usize>) -> BTreeSet<usize> {
        (0..self.vertex_count()).filter(|i| !subset.contains(i)).collect()
    }
}

/// Closes the simple roots under simple reflections, keeping positive roots.
fn close_under_reflections(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let simple: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let mut seen: BTreeSet<Vec<i64>> = simple.iter().cloned().collect();
    let mut queue = simple;
    let mut head = 0;
    while head < queue.len() {
        let beta = queue[head].clone();
        head += 1;
        for i in 0..n {
            let pairing: i64 = (0..n).map(|k| beta[k] * cartan[k][i]).sum();
            let mut image = beta.clone();
            image[i] -= pairing;
            if image.iter().all(|&c| c >= 0) && image.iter().any(|&c| c > 0) && seen.insert(image.clone()) {
                queue.push(image);
            }
        }
    }
    let mut roots = queue;
    roots.sort_by_key(|r| (r.iter().sum::<i64>(), std::cmp::Reverse(r.clone())));
    roots
}

/// `θ(β) = Σ c_i θ_i`.
pub fn pair(theta: &StabilityVector, beta: &RootLatticeVector) -> Result<Rational> {
    if theta.dynkin() != beta.dynkin || theta.entries().len() != beta.coeffs.len() {
        return Err(Error::MismatchedRootSystem);
    }
    Ok(theta.eval(&beta.coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;
    use crate::stability::make_theta;

    #[test]
    fn rank_constraints() {
        assert!(DynkinType::new(Family::A, 0).is_err());
        assert!(DynkinType::new(Family::D, 3).is_err());
        assert!(DynkinType::new(Family::E, 9).is_err());
        assert_eq!(DynkinType::new(Family::E, 5).unwrap_err().name(), "InvalidRank");
        assert_eq!("d4".parse::<DynkinType>().unwrap(), DynkinType::d(4));
        assert_eq!("A_3".parse::<DynkinType>().unwrap().to_string(), "A3");
        assert!("B2".parse::<DynkinType>().is_err());
    }

    #[test]
    fn small_systems() {
        let a2 = RootSystem::build(DynkinType::a(2)).unwrap();
        assert_eq!(a2.positive_roots().len(), 3);
        assert_eq!(a2.delta(), &[1, 1, 1]);
        assert_eq!(a2.h(), 3);

        let d4 = RootSystem::build(DynkinType::d(4)).unwrap();
        assert_eq!(d4.positive_roots().len(), 12);
        assert_eq!(d4.delta(), &[1, 1, 2, 1, 1]);
        let mut sorted = d4.delta().to_vec();
        sorted.sort();
        assert_eq!(sorted, vec![1, 1, 1, 1, 2]);
        assert_eq!(d4.h(), 6);

        let e8 = RootSystem::build(DynkinType::e(8)).unwrap();
        assert_eq!(e8.positive_roots().len(), 120);
        assert_eq!(e8.h(), 30);
    }

    #[test]
    fn affine_a1_double_bond() {
        let a1 = RootSystem::build(DynkinType::a(1)).unwrap();
        assert_eq!(a1.affine_cartan(), &[vec![2, -2], vec![-2, 2]]);
        assert_eq!(a1.affine_edges(), vec![(0, 1), (0, 1)]);
    }

    #[test]
    fn affine_vertex_attachment() {
        let attached = |t: DynkinType| {
            let rs = RootSystem::build(t).unwrap();
            (1..rs.vertex_count()).filter(|&i| rs.affine_cartan()[0][i] != 0).collect::<Vec<_>>()
        };
        assert_eq!(attached(DynkinType::a(4)), vec![1, 4]);
        assert_eq!(attached(DynkinType::d(5)), vec![2]);
        assert_eq!(attached(DynkinType::e(6)), vec![2]);
        assert_eq!(attached(DynkinType::e(7)), vec![1]);
        assert_eq!(attached(DynkinType::e(8)), vec![8]);
    }

    #[test]
    fn pairing() {
        let a2 = RootSystem::build(DynkinType::a(2)).unwrap();
        let theta = make_theta(&a2, &[3, 3, 3], vec![rat(-7), rat(9), rat(1)]).unwrap();
        assert_eq!(pair(&theta, &a2.delta_vector()).unwrap(), rat(3));
        assert_eq!(pair(&theta, &a2.simple_root(1)).unwrap(), rat(9));
        assert_eq!(pair(&theta, &a2.delta_vector().scale(0)).unwrap(), rat(0));
        let a3 = RootSystem::build(DynkinType::a(3)).unwrap();
        assert_eq!(pair(&theta, &a3.delta_vector()).unwrap_err(), Error::MismatchedRootSystem);
    }
}
