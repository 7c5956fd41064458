//! Stability vectors `θ ∈ Θ_v` and the explicit cones `F`, `C_K`, `σ_K`,
//! `σ_{K,K'}` inside `Θ_{nδ}`.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{rat, Rational};
use crate::quiver::DimVector;
use crate::rootsys::{DynkinType, RootLatticeVector, RootSystem};

/// `θ ∈ Q^{∞ ∪ I}` with `θ · (1, v) = 0`. Only the `I` entries are stored;
/// the `∞` entry is derived from the context `v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StabilityVector {
    dynkin: DynkinType,
    context: Vec<usize>,
    entries: Vec<Rational>,
    infinity: Rational,
}

impl StabilityVector {
    pub fn dynkin(&self) -> DynkinType {
        self.dynkin
    }

    /// The dimension vector `v` this θ is normalized against.
    pub fn context(&self) -> &[usize] {
        &self.context
    }

    /// `θ_i` for `i ∈ I`, i.e. `θ(α_i)`.
    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    /// `θ_∞ = -Σ v_i θ_i`.
    pub fn infinity(&self) -> &Rational {
        &self.infinity
    }

    /// `Σ c_i θ_i`; `coeffs` must have one entry per vertex of `I`.
    pub fn eval(&self, coeffs: &[i64]) -> Rational {
        coeffs.iter().zip(&self.entries).filter(|(c, _)| **c != 0).map(|(&c, t)| rat(c) * t).sum()
    }

    /// `Some(n)` if the context is `n·δ` for the given root system.
    pub fn delta_multiple(&self, rs: &RootSystem) -> Option<u32> {
        let n = *self.context.first()?;
        (self.context.len() == rs.vertex_count()
            && self.context.iter().zip(rs.delta()).all(|(&v, &d)| v as i64 == n as i64 * d))
        .then_some(n as u32)
    }
}

/// Builds `θ` from its `I` entries, solving for `θ_∞`.
pub fn make_theta(rs: &RootSystem, v: &[usize], entries: Vec<Rational>) -> Result<StabilityVector> {
    let n = rs.vertex_count();
    if v.len() != n || entries.len() != n {
        return Err(Error::IndexMismatch(format!(
            "{} expects {n} entries, got v of length {} and θ of length {}",
            rs.dynkin(),
            v.len(),
            entries.len()
        )));
    }
    let infinity = -v.iter().zip(&entries).map(|(&vi, t)| rat(vi as i64) * t).sum::<Rational>();
    Ok(StabilityVector { dynkin: rs.dynkin(), context: v.to_vec(), entries, infinity })
}

/// `n·δ` as a dimension vector.
pub fn n_delta(rs: &RootSystem, n: u32) -> Vec<usize> {
    rs.delta().iter().map(|&d| d as usize * n as usize).collect()
}

/// `θ · dim = r·θ_∞ + Σ v_i θ_i`.
pub fn pair_dim(theta: &StabilityVector, d: &DimVector) -> Result<Rational> {
    if d.v.len() != theta.entries.len() {
        return Err(Error::IndexMismatch(format!(
            "dimension vector has {} vertices, θ has {}",
            d.v.len(),
            theta.entries.len()
        )));
    }
    let body: Rational = d.v.iter().zip(&theta.entries).map(|(&vi, t)| rat(vi as i64) * t).sum();
    Ok(rat(d.r as i64) * &theta.infinity + body)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    /// `θ(normal) > 0`
    Greater,
    /// `θ(normal) ≥ 0`
    GreaterEq,
    /// `θ(normal) = 0`
    Equal,
}

impl Relation {
    pub fn holds(self, value: &Rational) -> bool {
        match self {
            Relation::Greater => value.is_positive(),
            Relation::GreaterEq => !value.is_negative(),
            Relation::Equal => value.is_zero(),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Greater => ">",
            Relation::GreaterEq => ">=",
            Relation::Equal => "=",
        }
    }
}

/// A homogeneous linear condition `θ(normal) ⋈ 0` on `Θ_{nδ}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearConstraint {
    pub normal: RootLatticeVector,
    pub relation: Relation,
}

impl LinearConstraint {
    pub fn new(normal: RootLatticeVector, relation: Relation) -> Self {
        LinearConstraint { normal, relation }
    }

    pub fn holds(&self, theta: &StabilityVector) -> bool {
        self.relation.holds(&theta.eval(&self.normal.coeffs))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConeKind {
    /// The simplicial cone `F`.
    F,
    /// The chamber `C_K`.
    Chamber,
    /// `σ_K` (relative interior unless `closed`).
    Sigma,
    /// `σ_{K,K'}` (relative interior unless `closed`).
    SigmaPair,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConeSpec {
    pub kind: ConeKind,
    pub k: BTreeSet<usize>,
    pub k_prime: BTreeSet<usize>,
    pub n: u32,
    /// Replace every strict inequality by its non-strict version.
    pub closed: bool,
}

impl ConeSpec {
    pub fn f(n: u32) -> Self {
        ConeSpec { kind: ConeKind::F, k: BTreeSet::new(), k_prime: BTreeSet::new(), n, closed: false }
    }

    pub fn chamber(k: impl IntoIterator<Item = usize>, n: u32) -> Self {
        ConeSpec { kind: ConeKind::Chamber, k: k.into_iter().collect(), k_prime: BTreeSet::new(), n, closed: false }
    }

    pub fn sigma(k: impl IntoIterator<Item = usize>, n: u32) -> Self {
        ConeSpec { kind: ConeKind::Sigma, k: k.into_iter().collect(), k_prime: BTreeSet::new(), n, closed: false }
    }

    pub fn sigma_pair(k: impl IntoIterator<Item = usize>, k_prime: impl IntoIterator<Item = usize>, n: u32) -> Self {
        ConeSpec {
            kind: ConeKind::SigmaPair,
            k: k.into_iter().collect(),
            k_prime: k_prime.into_iter().collect(),
            n,
            closed: false,
        }
    }

    pub fn closed(mut self) -> Self {
        self.closed = true;
        self
    }

    /// Parses `F`, `C:1,2`, `sigma:1`, `sigmaKK:1,2/2` (with `n` supplied).
    pub fn parse(s: &str, n: u32) -> Result<Self> {
        let s = s.trim();
        let (kind, rest) = s.split_once(':').unwrap_or((s, ""));
        let list = |t: &str| -> Result<BTreeSet<usize>> {
            t.split(',')
                .filter(|x| !x.trim().is_empty())
                .map(|x| x.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad vertex {x:?} in {s:?}"))))
                .collect()
        };
        match kind {
            "F" => Ok(ConeSpec::f(n)),
            "C" => Ok(ConeSpec::chamber(list(rest)?, n)),
            "sigma" => Ok(ConeSpec::sigma(list(rest)?, n)),
            "sigmaKK" => {
                let (k, kp) = rest.split_once('/').unwrap_or((rest, ""));
                Ok(ConeSpec::sigma_pair(list(k)?, list(kp)?, n))
            }
            _ => Err(Error::Parse(format!("unknown cone {s:?}"))),
        }
    }

    fn validate(&self, rs: &RootSystem) -> Result<()> {
        rs.check_subset(&self.k)?;
        if self.k.contains(&0) {
            return Err(Error::BadSubset(format!("K = {:?} contains 0", self.k)));
        }
        if !self.k_prime.is_subset(&self.k) {
            return Err(Error::IndexMismatch(format!("K' = {:?} is not inside K = {:?}", self.k_prime, self.k)));
        }
        if self.n == 0 {
            return Err(Error::InvalidArgument("n must be positive".into()));
        }
        Ok(())
    }

    /// The defining system of the cone, as homogeneous constraints on `θ_I`.
    pub fn constraints(&self, rs: &RootSystem) -> Result<Vec<LinearConstraint>> {
        self.validate(rs)?;
        let strict = if self.closed { Relation::GreaterEq } else { Relation::Greater };
        let delta = rs.delta_vector();
        let j = rs.complement(&self.k);
        let delta_j = rs.delta_restricted(&j);
        let n1 = self.n as i64 - 1;
        // θ(α_j) - (n-1)θ(δ) > 0 for j ∈ J \ {0}
        let j_rows = |rel: Relation| {
            j.iter()
                .filter(|&&i| i != 0)
                .map(|&i| LinearConstraint::new(rs.simple_root(i).scaled_add(-n1, &delta), rel))
                .collect::<Vec<_>>()
        };
        let k_rows = |set: &BTreeSet<usize>, rel: Relation| {
            set.iter().map(|&k| LinearConstraint::new(rs.simple_root(k), rel)).collect::<Vec<_>>()
        };
        let mut out = Vec::new();
        match self.kind {
            ConeKind::F => {
                out.push(LinearConstraint::new(delta.clone(), Relation::GreaterEq));
                let nonzero: BTreeSet<usize> = (1..rs.vertex_count()).collect();
                out.extend(k_rows(&nonzero, Relation::GreaterEq));
            }
            ConeKind::Chamber => {
                out.push(LinearConstraint::new(delta_j, strict));
                out.extend(j_rows(strict));
                out.extend(k_rows(&self.k, strict));
            }
            ConeKind::Sigma => {
                out.push(LinearConstraint::new(delta.clone(), strict));
                out.extend(j_rows(strict));
                out.extend(k_rows(&self.k, Relation::Equal));
            }
            ConeKind::SigmaPair => {
                // θ(δ|_J) rather than θ(δ): with the K \ K' entries free the two
                // differ, and only δ|_J gives σ_{K,∅} = closure of C_K.
                out.push(LinearConstraint::new(delta_j, strict));
                out.extend(j_rows(strict));
                let free: BTreeSet<usize> = self.k.difference(&self.k_prime).copied().collect();
                out.extend(k_rows(&free, strict));
                out.extend(k_rows(&self.k_prime, Relation::Equal));
            }
        }
        Ok(out)
    }
}

fn fmt_set(f: &mut fmt::Formatter<'_>, set: &BTreeSet<usize>) -> fmt::Result {
    let items: Vec<String> = set.iter().map(ToString::to_string).collect();
    write!(f, "{}", items.join(","))
}

impl fmt::Display for ConeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ConeKind::F => write!(f, "F")?,
            ConeKind::Chamber if self.k.is_empty() => write!(f, "C_∅")?,
            ConeKind::Chamber => {
                write!(f, "C_{{")?;
                fmt_set(f, &self.k)?;
                write!(f, "}}")?;
            }
            ConeKind::Sigma if self.k.is_empty() => write!(f, "σ_∅")?,
            ConeKind::Sigma => {
                write!(f, "σ_{{")?;
                fmt_set(f, &self.k)?;
                write!(f, "}}")?;
            }
            ConeKind::SigmaPair => {
                write!(f, "σ_{{")?;
                fmt_set(f, &self.k)?;
                write!(f, ";")?;
                fmt_set(f, &self.k_prime)?;
                write!(f, "}}")?;
            }
        }
        if self.closed {
            write!(f, "‾")?;
        }
        Ok(())
    }
}

fn check_context(theta: &StabilityVector, rs: &RootSystem, n: u32) -> Result<()> {
    if theta.dynkin() != rs.dynkin() {
        return Err(Error::MismatchedRootSystem);
    }
    if theta.delta_multiple(rs) != Some(n) {
        return Err(Error::ContextMismatch(format!("θ context {:?} is not {n}·δ", theta.context())));
    }
    Ok(())
}

pub fn cone_membership(theta: &StabilityVector, cone: &ConeSpec, rs: &RootSystem) -> Result<bool> {
    check_context(theta, rs, cone.n)?;
    Ok(cone.constraints(rs)?.iter().all(|c| c.holds(theta)))
}

/// The explicit member of `C_K` with `θ(α_j) = nh` on `J \ {0}`,
/// `θ(α_k) = 1` on `K` and `θ(δ) = h`.
pub fn craw_wye_theta(rs: &RootSystem, j: &BTreeSet<usize>, n: u32) -> Result<StabilityVector> {
    if !j.contains(&0) {
        return Err(Error::BadSubset(format!("J = {j:?}")));
    }
    rs.check_subset(j)?;
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let h = rs.h();
    let nh = n as i64 * h;
    let mut entries = vec![0i64; rs.vertex_count()];
    for (i, e) in entries.iter_mut().enumerate().skip(1) {
        *e = if j.contains(&i) { nh } else { 1 };
    }
    // δ_0 = 1, so θ_0 = h - Σ_{i ≠ 0} δ_i θ_i
    entries[0] = h - (1..rs.vertex_count()).map(|i| rs.delta()[i] * entries[i]).sum::<i64>();
    make_theta(rs, &n_delta(rs, n), entries.into_iter().map(rat).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::DynkinType;

    fn a(n: usize) -> RootSystem {
        RootSystem::build(DynkinType::a(n)).unwrap()
    }

    fn theta(rs: &RootSystem, n: u32, e: &[i64]) -> StabilityVector {
        make_theta(rs, &n_delta(rs, n), e.iter().map(|&x| rat(x)).collect()).unwrap()
    }

    #[test]
    fn infinity_entry() {
        assert_eq!(theta(&a(2), 3, &[-7, 9, 1]).infinity(), &rat(-9));
        assert_eq!(theta(&a(2), 2, &[0, 0, 0]).infinity(), &rat(0));
        assert_eq!(theta(&a(1), 1, &[1, 1]).infinity(), &rat(-2));
    }

    #[test]
    fn pairing_with_dimension_vectors() {
        let rs = a(1);
        let t = theta(&rs, 1, &[1, 1]);
        assert_eq!(pair_dim(&t, &DimVector::new(1, vec![1, 1])).unwrap(), rat(0));
        assert_eq!(pair_dim(&t, &DimVector::new(1, vec![0, 0])).unwrap(), rat(-2));
        assert_eq!(pair_dim(&t, &DimVector::new(0, vec![1, 1])).unwrap(), rat(2));
        assert!(pair_dim(&t, &DimVector::new(0, vec![1])).is_err());
    }

    #[test]
    fn cone_examples() {
        let rs = a(2);
        let t = theta(&rs, 3, &[-7, 9, 1]);
        assert!(cone_membership(&t, &ConeSpec::chamber([2], 3), &rs).unwrap());
        assert!(!cone_membership(&t, &ConeSpec::chamber([1], 3), &rs).unwrap());
        let zero = theta(&rs, 3, &[0, 0, 0]);
        assert!(cone_membership(&zero, &ConeSpec::f(3), &rs).unwrap());
        let rs1 = a(1);
        let b = theta(&rs1, 1, &[-1, 1]);
        assert!(!cone_membership(&b, &ConeSpec::chamber([], 1), &rs1).unwrap());
        assert_eq!(cone_membership(&t, &ConeSpec::f(2), &rs).unwrap_err().name(), "ContextMismatch");
        assert_eq!(cone_membership(&t, &ConeSpec::chamber([0], 3), &rs).unwrap_err().name(), "BadSubset");
    }

    #[test]
    fn sigma_cones() {
        let rs = a(2);
        // θ(α_2) = 0, θ(δ) = 1, θ(α_1) = 3 > 2
        let s = theta(&rs, 3, &[-2, 3, 0]);
        assert!(cone_membership(&s, &ConeSpec::sigma([2], 3), &rs).unwrap());
        assert!(cone_membership(&s, &ConeSpec::sigma_pair([2], [2], 3), &rs).unwrap());
        assert!(!cone_membership(&s, &ConeSpec::chamber([2], 3), &rs).unwrap());
        assert!(cone_membership(&s, &ConeSpec::chamber([2], 3).closed(), &rs).unwrap());
    }

    #[test]
    fn craw_wye_values() {
        let rs = a(2);
        let t = craw_wye_theta(&rs, &[0, 1].into(), 3).unwrap();
        assert_eq!(t.entries(), &[rat(-7), rat(9), rat(1)]);
        let t1 = craw_wye_theta(&a(1), &[0].into(), 1).unwrap();
        assert_eq!(t1.entries(), &[rat(1), rat(1)]);
        let all: BTreeSet<usize> = (0..3).collect();
        let t2 = craw_wye_theta(&rs, &all, 1).unwrap();
        assert_eq!(&t2.entries()[1..], &[rat(3), rat(3)]);
        assert!(cone_membership(&t2, &ConeSpec::chamber([], 1), &rs).unwrap());
        assert_eq!(craw_wye_theta(&rs, &[1].into(), 1).unwrap_err().name(), "BadSubset");
    }

    #[test]
    fn cone_parse_and_label() {
        assert_eq!(ConeSpec::parse("C:1,2", 3).unwrap(), ConeSpec::chamber([1, 2], 3));
        assert_eq!(ConeSpec::parse("C:", 3).unwrap().to_string(), "C_∅");
        assert_eq!(ConeSpec::parse("sigmaKK:1,2/2", 1).unwrap().to_string(), "σ_{1,2;2}");
        assert!(ConeSpec::parse("G:1", 1).is_err());
    }
}
