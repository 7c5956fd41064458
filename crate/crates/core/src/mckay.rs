//! Finite subgroups of `SL(2,ℂ)`, their character tables and McKay graphs.
//!
//! Groups are enumerated numerically from generator matrices. Characters
//! come from Burnside's algorithm: the central characters are the common
//! eigenvectors of the class-multiplication matrices. Every integer output
//! is recovered by rounding with a `1e-6` guard.

use std::collections::{BTreeSet, VecDeque};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::rootsys::{DynkinType, Family, RootSystem};

const MATRIX_TOL: f64 = 1e-9;
const ROUND_TOL: f64 = 1e-6;

pub type Mat2 = [Complex64; 4];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Cyclic(u32),
    /// Binary dihedral group of order `4m`.
    BinaryDihedral(u32),
    BinaryTetrahedral,
    BinaryOctahedral,
    BinaryIcosahedral,
}

impl GroupSpec {
    pub fn cyclic(m: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidArgument(format!("cyclic group needs m ≥ 2, got {m}")));
        }
        Ok(GroupSpec::Cyclic(m))
    }

    /// The binary dihedral group of the given order (a multiple of 4, ≥ 8).
    pub fn binary_dihedral(order: u32) -> Result<Self> {
        if order < 8 || !order.is_multiple_of(4) {
            return Err(Error::InvalidArgument(format!("binary dihedral order must be 4m with m ≥ 2, got {order}")));
        }
        Ok(GroupSpec::BinaryDihedral(order / 4))
    }

    pub fn order(&self) -> usize {
        match *self {
            GroupSpec::Cyclic(m) => m as usize,
            GroupSpec::BinaryDihedral(m) => 4 * m as usize,
            GroupSpec::BinaryTetrahedral => 24,
            GroupSpec::BinaryOctahedral => 48,
            GroupSpec::BinaryIcosahedral => 120,
        }
    }

    /// The affine diagram the McKay graph should match.
    pub fn dynkin(&self) -> DynkinType {
        match *self {
            GroupSpec::Cyclic(m) => DynkinType::a(m as usize - 1),
            GroupSpec::BinaryDihedral(m) => DynkinType::d(m as usize + 2),
            GroupSpec::BinaryTetrahedral => DynkinType::e(6),
            GroupSpec::BinaryOctahedral => DynkinType::e(7),
            GroupSpec::BinaryIcosahedral => DynkinType::e(8),
        }
    }

    /// Inverse of [`GroupSpec::dynkin`].
    pub fn for_dynkin(d: DynkinType) -> Self {
        match (d.family(), d.rank()) {
            (Family::A, n) => GroupSpec::Cyclic(n as u32 + 1),
            (Family::D, n) => GroupSpec::BinaryDihedral(n as u32 - 2),
            (Family::E, 6) => GroupSpec::BinaryTetrahedral,
            (Family::E, 7) => GroupSpec::BinaryOctahedral,
            _ => GroupSpec::BinaryIcosahedral,
        }
    }

    fn generators(&self) -> Vec<Mat2> {
        let c = |re: f64, im: f64| Complex64::new(re, im);
        let diag = |angle: f64| {
            [Complex64::from_polar(1.0, angle), c(0.0, 0.0), c(0.0, 0.0), Complex64::from_polar(1.0, -angle)]
        };
        // a + bi + cj + dk ↦ [[a + bi, c + di], [-c + di, a - bi]]
        let quat = |a: f64, b: f64, cc: f64, d: f64| [c(a, b), c(cc, d), c(-cc, d), c(a, -b)];
        let omega = quat(0.5, 0.5, 0.5, 0.5);
        match *self {
            GroupSpec::Cyclic(m) => vec![diag(2.0 * PI / m as f64)],
            GroupSpec::BinaryDihedral(m) => vec![diag(PI / m as f64), quat(0.0, 0.0, 1.0, 0.0)],
            GroupSpec::BinaryTetrahedral => vec![quat(0.0, 1.0, 0.0, 0.0), quat(0.0, 0.0, 1.0, 0.0), omega],
            GroupSpec::BinaryOctahedral => {
                let r = std::f64::consts::FRAC_1_SQRT_2;
                vec![quat(r, r, 0.0, 0.0), omega]
            }
            GroupSpec::BinaryIcosahedral => {
                let phi = (1.0 + 5f64.sqrt()) / 2.0;
                vec![omega, quat(phi / 2.0, 0.5 / phi, 0.5, 0.0)]
            }
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(m) => write!(f, "cyclic:{m}"),
            GroupSpec::BinaryDihedral(m) => write!(f, "bd:{}", 4 * m),
            GroupSpec::BinaryTetrahedral => write!(f, "2T"),
            GroupSpec::BinaryOctahedral => write!(f, "2O"),
            GroupSpec::BinaryIcosahedral => write!(f, "2I"),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// Accepts `cyclic:m`, `bd:order`, `binary_dihedral:order`, `2T`, `2O`,
    /// `2I` and the long names of the exceptional groups.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let number = |t: &str| t.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad group '{s}'")));
        match lower.split_once(':') {
            Some(("cyclic" | "z", m)) => GroupSpec::cyclic(number(m)?),
            Some(("bd" | "binary_dihedral", o)) => GroupSpec::binary_dihedral(number(o)?),
            None => match lower.as_str() {
                "2t" | "binary_tetrahedral" => Ok(GroupSpec::BinaryTetrahedral),
                "2o" | "binary_octahedral" => Ok(GroupSpec::BinaryOctahedral),
                "2i" | "binary_icosahedral" => Ok(GroupSpec::BinaryIcosahedral),
                _ => Err(Error::Parse(format!("unknown group '{s}'"))),
            },
            _ => Err(Error::Parse(format!("unknown group '{s}'"))),
        }
    }
}

fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    [a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]]
}

/// Inverse in `SL(2)`: the adjugate.
fn mat_inv(a: &Mat2) -> Mat2 {
    [a[3], -a[1], -a[2], a[0]]
}

fn mat_close(a: &Mat2, b: &Mat2) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).norm() < MATRIX_TOL)
}

fn find(elements: &[Mat2], m: &Mat2) -> Option<usize> {
    elements.iter().position(|e| mat_close(e, m))
}

fn round_checked(x: f64) -> Result<i64> {
    let r = x.round();
    if (x - r).abs() > ROUND_TOL {
        return Err(Error::RoundingFailure { value: x });
    }
    Ok(r as i64)
}

#[derive(Clone, Debug, PartialEq)]
pub struct McKayData {
    pub spec: GroupSpec,
    pub elements: Vec<Mat2>,
    /// Element indices per class; class 0 is the identity.
    pub conjugacy_classes: Vec<Vec<usize>>,
    /// Dimension of the irrep at each McKay vertex; vertex 0 is trivial.
    pub irrep_dims: Vec<usize>,
    /// `characters[class][irrep]`.
    pub characters: Vec<Vec<Complex64>>,
    pub adjacency: Vec<Vec<i64>>,
}

impl McKayData {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.irrep_dims.len()
    }
}

fn enumerate(spec: &GroupSpec) -> Vec<Mat2> {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let gens = spec.generators();
    let mut elements = vec![[one, zero, zero, one]];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in &gens {
            let m = mat_mul(&elements[i], g);
            if find(&elements, &m).is_none() {
                elements.push(m);
                queue.push_back(elements.len() - 1);
            }
        }
    }
    elements
}

fn classes(elements: &[Mat2], mult: &[Vec<usize>], inverse: &[usize]) -> (Vec<Vec<usize>>, Vec<usize>) {
    let mut class_of = vec![usize::MAX; elements.len()];
    let mut out = Vec::new();
    for x in 0..elements.len() {
        if class_of[x] != usize::MAX {
            continue;
        }
        let id = out.len();
        let members: BTreeSet<usize> = (0..elements.len()).map(|g| mult[mult[g][x]][inverse[g]]).collect();
        for &m in &members {
            class_of[m] = id;
        }
        out.push(members.into_iter().collect());
    }
    (out, class_of)
}

/// Central characters `ω_k = |C_k| χ(g_k) / χ(1)` of all irreps, as
/// eigenvectors of a generic combination of class-multiplication matrices.
fn central_characters(
    class_list: &[Vec<usize>],
    class_of: &[usize],
    mult: &[Vec<usize>],
    inverse: &[usize],
) -> Result<Vec<Vec<Complex64>>> {
    let r = class_list.len();
    // m[j][(l, k)] = #{x ∈ C_j : x⁻¹ g_k ∈ C_l}
    let mut m = vec![DMatrix::<f64>::zeros(r, r); r];
    for (j, cj) in class_list.iter().enumerate() {
        for (k, ck) in class_list.iter().enumerate() {
            let g = ck[0];
            for &x in cj {
                m[j][(class_of[mult[inverse[x]][g]], k)] += 1.0;
            }
        }
    }
    for attempt in 0..8 {
        let weights: Vec<f64> = (0..r).map(|j| ((j as f64 + 1.0) * (1.618 + attempt as f64)).sin() + 1.5).collect();
        let combo = m.iter().zip(&weights).fold(DMatrix::<f64>::zeros(r, r), |acc, (mj, &t)| acc + mj * t);
        let eig = combo.clone().complex_eigenvalues();
        let separated = (0..r).all(|a| (a + 1..r).all(|b| (eig[a] - eig[b]).norm() > 1e-6));
        if !separated {
            continue;
        }
        let cm = combo.map(|x| Complex64::new(x, 0.0));
        let mut out = Vec::with_capacity(r);
        for lambda in eig.iter() {
            let shifted = &cm - DMatrix::<Complex64>::identity(r, r) * *lambda;
            let svd = shifted.svd(false, true);
            let v_t = svd.v_t.expect("requested V^H");
            let idx = svd.singular_values.imin();
            let v: DVector<Complex64> = v_t.row(idx).transpose().map(|z| z.conj());
            let scale = v[0];
            out.push(v.iter().map(|z| z / scale).collect());
        }
        return Ok(out);
    }
    Err(Error::RoundingFailure { value: f64::NAN })
}

pub fn build_mckay(spec: GroupSpec) -> Result<McKayData> {
    if let GroupSpec::Cyclic(m) | GroupSpec::BinaryDihedral(m) = spec {
        if m < 2 {
            return Err(Error::InvalidArgument(format!("{spec} needs m ≥ 2")));
        }
    }
    let elements = enumerate(&spec);
    let order = elements.len();
    let mult: Vec<Vec<usize>> = elements
        .iter()
        .map(|a| elements.iter().map(|b| find(&elements, &mat_mul(a, b)).expect("closed under products")).collect())
        .collect();
    let inverse: Vec<usize> =
        elements.iter().map(|a| find(&elements, &mat_inv(a)).expect("closed under inverses")).collect();
    let (class_list, class_of) = classes(&elements, &mult, &inverse);
    let sizes: Vec<f64> = class_list.iter().map(|c| c.len() as f64).collect();

    let mut irreps: Vec<(usize, Vec<Complex64>)> = Vec::new();
    for omega in central_characters(&class_list, &class_of, &mult, &inverse)? {
        let norm: f64 = omega.iter().zip(&sizes).map(|(w, s)| w.norm_sqr() / s).sum();
        let dim = (order as f64 / norm).sqrt();
        let rounded = round_checked(dim)?;
        let chi: Vec<Complex64> = omega.iter().zip(&sizes).map(|(w, s)| w * rounded as f64 / s).collect();
        irreps.push((rounded as usize, chi));
    }

    let std_char: Vec<Complex64> = class_list.iter().map(|c| elements[c[0]][0] + elements[c[0]][3]).collect();
    let multiplicity = |a: &[Complex64], b: &[Complex64]| -> Result<i64> {
        let s: Complex64 =
            (0..class_list.len()).map(|k| a[k] * std_char[k] * b[k].conj() * sizes[k]).sum::<Complex64>()
                / order as f64;
        if s.im.abs() > ROUND_TOL {
            return Err(Error::RoundingFailure { value: s.im });
        }
        round_checked(s.re)
    };

    // trivial first, then breadth-first along the McKay graph
    let trivial = irreps
        .iter()
        .position(|(_, chi)| chi.iter().all(|z| (z - 1.0).norm() < ROUND_TOL))
        .ok_or(Error::RoundingFailure { value: f64::NAN })?;
    let key = |(d, chi): &(usize, Vec<Complex64>)| {
        let parts: Vec<(i64, i64)> =
            chi.iter().map(|z| ((z.re * 1e6).round() as i64, (z.im * 1e6).round() as i64)).collect();
        (*d, parts)
    };
    let mut rest: Vec<usize> = (0..irreps.len()).filter(|&i| i != trivial).collect();
    rest.sort_by_key(|&i| key(&irreps[i]));
    let mut order_list = vec![trivial];
    let mut queue = VecDeque::from([trivial]);
    while let Some(i) = queue.pop_front() {
        let mut next = Vec::new();
        for &j in &rest {
            if !order_list.contains(&j) && multiplicity(&irreps[i].1, &irreps[j].1)? > 0 {
                next.push(j);
            }
        }
        for j in next {
            order_list.push(j);
            queue.push_back(j);
        }
    }
    order_list.extend(rest.iter().filter(|j| !order_list.contains(j)).copied().collect::<Vec<_>>());

    let n = order_list.len();
    let mut adjacency = vec![vec![0i64; n]; n];
    for (a, &i) in order_list.iter().enumerate() {
        for (b, &j) in order_list.iter().enumerate() {
            adjacency[a][b] = multiplicity(&irreps[i].1, &irreps[j].1)?;
        }
    }
    let irrep_dims = order_list.iter().map(|&i| irreps[i].0).collect();
    let characters = (0..class_list.len()).map(|k| order_list.iter().map(|&i| irreps[i].1[k]).collect()).collect();
    Ok(McKayData { spec, elements, conjugacy_classes: class_list, irrep_dims, characters, adjacency })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrespondenceReport {
    /// McKay adjacency equals `2·Id - C̃` under the matching.
    pub adjacency_matches: bool,
    /// Irrep dimensions equal `δ` under the matching.
    pub dims_match: bool,
    /// `Σ δ_i² = |Γ|`.
    pub order_matches: bool,
    /// `matching[i]` is the diagram vertex of McKay vertex `i`.
    pub matching: Vec<usize>,
}

impl CorrespondenceReport {
    pub fn all_pass(&self) -> bool {
        self.adjacency_matches && self.dims_match && self.order_matches
    }
}

fn extend_matching(a: &[Vec<i64>], b: &[Vec<i64>], partial: &mut Vec<usize>, used: &mut [bool]) -> bool {
    let i = partial.len();
    if i == a.len() {
        return true;
    }
    for t in 0..b.len() {
        if used[t] || a[i][i] != b[t][t] {
            continue;
        }
        if partial.iter().enumerate().any(|(p, &q)| a[i][p] != b[t][q]) {
            continue;
        }
        partial.push(t);
        used[t] = true;
        if extend_matching(a, b, partial, used) {
            return true;
        }
        partial.pop();
        used[t] = false;
    }
    false
}

/// Searches for a graph isomorphism from the McKay graph to the affine
/// diagram sending the trivial vertex to 0, then compares dimensions.
pub fn verify_correspondence(data: &McKayData, rs: &RootSystem) -> Result<CorrespondenceReport> {
    let n = rs.vertex_count();
    if data.vertex_count() != n {
        return Err(Error::NoIsomorphism);
    }
    let c = rs.affine_cartan();
    let target: Vec<Vec<i64>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { 2 - c[i][j] } else { -c[i][j] }).collect()).collect();
    let mut partial = vec![0];
    let mut used = vec![false; n];
    used[0] = true;
    if data.adjacency[0][0] != target[0][0] || !extend_matching(&data.adjacency, &target, &mut partial, &mut used) {
        return Err(Error::NoIsomorphism);
    }
    let delta = rs.delta();
    let dims_match = data.irrep_dims.iter().enumerate().all(|(i, &d)| d as i64 == delta[partial[i]]);
    let order_matches = delta.iter().map(|d| d * d).sum::<i64>() == data.order() as i64;
    Ok(CorrespondenceReport { adjacency_matches: true, dims_match, order_matches, matching: partial })
}

/// `J = {0, r}` when `-1 ∈ Γ`: `r` is the middle vertex for `A_n` with `n`
/// odd and the trivalent vertex for types `D` and `E`.
pub fn projective_mckay(d: DynkinType) -> Option<BTreeSet<usize>> {
    let r = match (d.family(), d.rank()) {
        (Family::A, n) if n % 2 == 1 => n.div_ceil(2),
        (Family::A, _) => return None,
        (Family::D, n) => n - 2,
        (Family::E, _) => 4,
    };
    Some([0, r].into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parsing() {
        assert_eq!("cyclic:3".parse::<GroupSpec>().unwrap(), GroupSpec::Cyclic(3));
        assert_eq!("bd:8".parse::<GroupSpec>().unwrap(), GroupSpec::BinaryDihedral(2));
        assert_eq!("2I".parse::<GroupSpec>().unwrap(), GroupSpec::BinaryIcosahedral);
        assert!("bd:6".parse::<GroupSpec>().is_err());
        assert!("cyclic:1".parse::<GroupSpec>().is_err());
        assert_eq!(GroupSpec::BinaryDihedral(3).to_string(), "bd:12");
        for s in ["cyclic:5", "bd:16", "2T", "2O", "2I"] {
            let g: GroupSpec = s.parse().unwrap();
            assert_eq!(GroupSpec::for_dynkin(g.dynkin()), g);
        }
    }

    #[test]
    fn cyclic_two() {
        let d = build_mckay(GroupSpec::Cyclic(2)).unwrap();
        assert_eq!(d.order(), 2);
        assert_eq!(d.irrep_dims, vec![1, 1]);
        assert_eq!(d.adjacency, vec![vec![0, 2], vec![2, 0]]);
    }

    #[test]
    fn quaternion_group() {
        let d = build_mckay(GroupSpec::binary_dihedral(8).unwrap()).unwrap();
        let mut dims = d.irrep_dims.clone();
        dims.sort();
        assert_eq!(dims, vec![1, 1, 1, 1, 2]);
        let rs = RootSystem::build(DynkinType::d(4)).unwrap();
        assert!(verify_correspondence(&d, &rs).unwrap().all_pass());
    }

    #[test]
    fn mismatch() {
        let d = build_mckay(GroupSpec::Cyclic(2)).unwrap();
        let a2 = RootSystem::build(DynkinType::a(2)).unwrap();
        assert_eq!(verify_correspondence(&d, &a2).unwrap_err(), Error::NoIsomorphism);
        let c4 = build_mckay(GroupSpec::Cyclic(5)).unwrap();
        let d4 = RootSystem::build(DynkinType::d(4)).unwrap();
        assert_eq!(verify_correspondence(&c4, &d4).unwrap_err(), Error::NoIsomorphism);
    }

    #[test]
    fn projective() {
        assert_eq!(projective_mckay(DynkinType::a(3)), Some([0, 2].into()));
        assert_eq!(projective_mckay(DynkinType::a(1)), Some([0, 1].into()));
        assert_eq!(projective_mckay(DynkinType::d(4)), Some([0, 2].into()));
        assert_eq!(projective_mckay(DynkinType::e(8)), Some([0, 4].into()));
        assert_eq!(projective_mckay(DynkinType::a(2)), None);
    }
}
