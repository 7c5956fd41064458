//! The framed doubled quiver of an affine ADE diagram and its
//! representations as explicit matrices.
//!
//! Arrow conventions: every edge `{i, j}` with `i < j` has an original arrow
//! `i → j` labelled `e:i-j` and a reverse arrow `j → i` labelled `e*:j-i`.
//! Parallel edges (affine `A_1`) get a `.k` suffix on the second and later
//! copies: `e:0-1.1`, `e*:1-0.1`. The framing arrows are `b: ∞ → 0`
//! (original) and `b*: 0 → ∞`.
//!
//! The preprojective relation at `i ∈ I` is
//! `Σ_{a original, head a = i} a a* - Σ_{a original, tail a = i} a* a = 0`.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{format_rational, rat, FieldSpec, RatMatrix, Rational};
use crate::rootsys::{DynkinType, Family, RootSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    Infinity,
    Node(usize),
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Infinity => write!(f, "inf"),
            Vertex::Node(i) => write!(f, "{i}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub label: String,
    pub tail: Vertex,
    pub head: Vertex,
    pub original: bool,
    /// Index of the opposite arrow `a*`.
    pub partner: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FramedQuiver {
    dynkin: DynkinType,
    node_count: usize,
    arrows: Vec<Arrow>,
}

impl FramedQuiver {
    pub fn dynkin(&self) -> DynkinType {
        self.dynkin
    }

    /// `|I|`.
    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    /// Index of `b: ∞ → 0`.
    pub fn framing(&self) -> usize {
        self.arrows.len() - 2
    }

    /// Index of `b*: 0 → ∞`.
    pub fn framing_dual(&self) -> usize {
        self.arrows.len() - 1
    }
}

pub fn framed_quiver(rs: &RootSystem) -> FramedQuiver {
    let mut arrows = Vec::new();
    let mut prev: Option<(usize, usize)> = None;
    let mut copy = 0;
    for (i, j) in rs.affine_edges() {
        copy = if prev == Some((i, j)) { copy + 1 } else { 0 };
        prev = Some((i, j));
        let suffix = if copy == 0 { String::new() } else { format!(".{copy}") };
        let k = arrows.len();
        arrows.push(Arrow {
            label: format!("e:{i}-{j}{suffix}"),
            tail: Vertex::Node(i),
            head: Vertex::Node(j),
            original: true,
            partner: k + 1,
        });
        arrows.push(Arrow {
            label: format!("e*:{j}-{i}{suffix}"),
            tail: Vertex::Node(j),
            head: Vertex::Node(i),
            original: false,
            partner: k,
        });
    }
    let k = arrows.len();
    arrows.push(Arrow {
        label: "b".into(),
        tail: Vertex::Infinity,
        head: Vertex::Node(0),
        original: true,
        partner: k + 1,
    });
    arrows.push(Arrow {
        label: "b*".into(),
        tail: Vertex::Node(0),
        head: Vertex::Infinity,
        original: false,
        partner: k,
    });
    FramedQuiver { dynkin: rs.dynkin(), node_count: rs.vertex_count(), arrows }
}

/// `(r, v)`: dimension `r` at `∞` and `v_i` at each `i ∈ I`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimVector {
    pub r: usize,
    pub v: Vec<usize>,
}

impl DimVector {
    pub fn new(r: usize, v: Vec<usize>) -> Self {
        DimVector { r, v }
    }

    pub fn total(&self) -> usize {
        self.r + self.v.iter().sum::<usize>()
    }

    pub fn at(&self, vertex: Vertex) -> usize {
        match vertex {
            Vertex::Infinity => self.r,
            Vertex::Node(i) => self.v[i],
        }
    }

    pub fn add(&self, other: &DimVector) -> DimVector {
        DimVector { r: self.r + other.r, v: self.v.iter().zip(&other.v).map(|(a, b)| a + b).collect() }
    }

    /// Componentwise difference; `None` if some entry would go negative.
    pub fn checked_sub(&self, other: &DimVector) -> Option<DimVector> {
        Some(DimVector {
            r: self.r.checked_sub(other.r)?,
            v: self.v.iter().zip(&other.v).map(|(a, b)| a.checked_sub(*b)).collect::<Option<_>>()?,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.total() == 0
    }

    /// Offset of each vertex block in the global coordinates `∞, 0, 1, ...`.
    pub fn offset(&self, vertex: Vertex) -> usize {
        match vertex {
            Vertex::Infinity => 0,
            Vertex::Node(i) => self.r + self.v[..i].iter().sum::<usize>(),
        }
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.v.iter().map(ToString::to_string).collect();
        write!(f, "({},({}))", self.r, v.join(","))
    }
}

/// A representation of the framed doubled quiver: one matrix per arrow of
/// shape `dim(head) × dim(tail)`. Entries are stored as rationals; over
/// `F_p` they are kept reduced to `0..p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FramedRep {
    quiver: FramedQuiver,
    field: FieldSpec,
    dims: DimVector,
    matrices: Vec<RatMatrix>,
}

impl FramedRep {
    pub fn new(quiver: FramedQuiver, field: FieldSpec, dims: DimVector, mut matrices: Vec<RatMatrix>) -> Result<Self> {
        if dims.v.len() != quiver.node_count {
            return Err(Error::ShapeMismatch(format!(
                "dimension vector has {} vertices, quiver has {}",
                dims.v.len(),
                quiver.node_count
            )));
        }
        if matrices.len() != quiver.arrows.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} matrices for {} arrows",
                matrices.len(),
                quiver.arrows.len()
            )));
        }
        for (a, m) in quiver.arrows.iter().zip(matrices.iter_mut()) {
            let want = (dims.at(a.head), dims.at(a.tail));
            if (m.rows, m.cols) != want {
                return Err(Error::ShapeMismatch(format!(
                    "arrow {} has a {}x{} matrix, expected {}x{}",
                    a.label, m.rows, m.cols, want.0, want.1
                )));
            }
            field.normalize_matrix(m)?;
        }
        Ok(FramedRep { quiver, field, dims, matrices })
    }

    /// All arrows zero.
    pub fn zero(quiver: FramedQuiver, field: FieldSpec, dims: DimVector) -> Result<Self> {
        let matrices = quiver.arrows.iter().map(|a| RatMatrix::zeros(dims.at(a.head), dims.at(a.tail))).collect();
        Self::new(quiver, field, dims, matrices)
    }

    pub fn quiver(&self) -> &FramedQuiver {
        &self.quiver
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dims(&self) -> &DimVector {
        &self.dims
    }

    pub fn matrices(&self) -> &[RatMatrix] {
        &self.matrices
    }

    pub fn matrix(&self, label: &str) -> Option<&RatMatrix> {
        self.quiver.arrow_index(label).map(|i| &self.matrices[i])
    }

    pub fn set_matrix(&mut self, label: &str, mut m: RatMatrix) -> Result<()> {
        let i = self
            .quiver
            .arrow_index(label)
            .ok_or_else(|| Error::ShapeMismatch(format!("no arrow labelled {label:?}")))?;
        let a = &self.quiver.arrows[i];
        if (m.rows, m.cols) != (self.dims.at(a.head), self.dims.at(a.tail)) {
            return Err(Error::ShapeMismatch(format!("wrong shape for arrow {label}")));
        }
        self.field.normalize_matrix(&mut m)?;
        self.matrices[i] = m;
        Ok(())
    }

    /// Re-checks every matrix shape against the dimension vector.
    pub fn validate(&self) -> Result<()> {
        Self::new(self.quiver.clone(), self.field, self.dims.clone(), self.matrices.clone()).map(|_| ())
    }

    fn normalized(&self, mut m: RatMatrix) -> Result<RatMatrix> {
        self.field.normalize_matrix(&mut m)?;
        Ok(m)
    }
}

/// The preprojective relation evaluated at each `i ∈ I` (the framing pair
/// contributes `b b*` at vertex 0). The relation at `∞` is implied by these
/// through [`trace_identity_holds`] and is not returned.
pub fn moment_defect(rep: &FramedRep) -> Result<Vec<RatMatrix>> {
    rep.validate()?;
    let mut out: Vec<RatMatrix> = rep.dims.v.iter().map(|&d| RatMatrix::zeros(d, d)).collect();
    for (idx, a) in rep.quiver.arrows.iter().enumerate() {
        if !a.original {
            continue;
        }
        let x = &rep.matrices[idx];
        let xs = &rep.matrices[a.partner];
        if let Vertex::Node(h) = a.head {
            out[h] = out[h].add(&x.mul(xs)?)?;
        }
        if let Vertex::Node(t) = a.tail {
            out[t] = out[t].sub(&xs.mul(x)?)?;
        }
    }
    out.into_iter().map(|m| rep.normalized(m)).collect()
}

/// The relation at `∞`, `-b* b`.
pub fn infinity_defect(rep: &FramedRep) -> Result<RatMatrix> {
    let b = &rep.matrices[rep.quiver.framing()];
    let bs = &rep.matrices[rep.quiver.framing_dual()];
    let m = bs.mul(b)?;
    rep.normalized(RatMatrix::zeros(m.rows, m.cols).sub(&m)?)
}

/// `Σ_{i ∈ I} tr(defect_i) + tr(defect_∞) = 0`, which holds for every
/// shape-valid representation. With `r ≤ 1` the `∞` defect is a scalar, so
/// vanishing at all `i ∈ I` forces it to vanish as well.
pub fn trace_identity_holds(rep: &FramedRep) -> Result<bool> {
    let defects = moment_defect(rep)?;
    let total: Rational = defects.iter().map(RatMatrix::trace).sum::<Rational>() + infinity_defect(rep)?.trace();
    Ok(rep.field.normalize(&total)?.is_zero())
}

pub fn is_pi_bar_module(rep: &FramedRep) -> bool {
    moment_defect(rep).map(|d| d.iter().all(RatMatrix::is_zero)).unwrap_or(false)
}

/// Canonical invariants `(u^m, v^m, uv)` of a point under `diag(ζ, ζ^{-1})`.
fn orbit_invariants(field: FieldSpec, m: usize, u: &Rational, v: &Rational) -> Result<[Rational; 3]> {
    let pow = |x: &Rational| (0..m).fold(Rational::one(), |acc, _| acc * x);
    Ok([field.normalize(&pow(u))?, field.normalize(&pow(v))?, field.normalize(&(u * v))?])
}

/// The module `C ⊕ H^0(O_Z)` for `Z` a union of free orbits of the cyclic
/// group of order `m = rank + 1` acting by `diag(ζ, ζ^{-1})`.
///
/// The `χ^i`-isotypic piece of the functions on one orbit is spanned by
/// `f_i = u^i` (or `v^{m-i}` when `u` vanishes on the orbit), placed at
/// vertex `i`. Arrows act by multiplication with `u` (towards `i + 1`) and
/// `v` (towards `i - 1`); all structure constants are polynomial in the
/// coordinates of the chosen orbit representative, so no roots of unity are
/// needed. `b` sends `1` to the constant function, `b* = 0`.
pub fn framed_orbit_sum(rs: &RootSystem, points: &[(Rational, Rational)], field: FieldSpec) -> Result<FramedRep> {
    if rs.dynkin().family() != Family::A {
        return Err(Error::UnsupportedType(rs.dynkin().to_string()));
    }
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    let m = rs.vertex_count();
    let n = points.len();
    let show = |(u, v): &(Rational, Rational)| format!("({},{})", format_rational(u), format_rational(v));

    let mut pts = Vec::with_capacity(n);
    let mut seen: Vec<([Rational; 3], usize)> = Vec::new();
    for (k, (u, v)) in points.iter().enumerate() {
        let (u, v) = (field.normalize(u)?, field.normalize(v)?);
        if u.is_zero() && v.is_zero() {
            return Err(Error::NonFreeOrbit(show(&points[k])));
        }
        let inv = orbit_invariants(field, m, &u, &v)?;
        if let Some((_, j)) = seen.iter().find(|(i, _)| *i == inv) {
            return Err(Error::DuplicateOrbit(show(&points[*j]), show(&points[k])));
        }
        seen.push((inv, k));
        pts.push((u, v));
    }

    // c[i]: u f_i = c_i f_{i+1};  d[i]: v f_{i+1} = d_i f_i  (indices mod m).
    let coefficients = |u: &Rational, v: &Rational| -> (Vec<Rational>, Vec<Rational>) {
        let lambda = u * v;
        if !u.is_zero() {
            let mut c = vec![Rational::one(); m];
            let mut d = vec![lambda; m];
            let u_pow = |k: usize| (0..k).fold(Rational::one(), |acc, _| acc * u);
            c[m - 1] = u_pow(m);
            d[m - 1] = v / u_pow(m - 1);
            (c, d)
        } else {
            let c = vec![Rational::zero(); m];
            let mut d = vec![Rational::one(); m];
            d[0] = (0..m).fold(Rational::one(), |acc, _| acc * v);
            (c, d)
        }
    };

    let quiver = framed_quiver(rs);
    let dims = DimVector::new(1, vec![n; m]);
    let mut rep = FramedRep::zero(quiver.clone(), field, dims)?;
    let diag = |entries: Vec<Rational>| {
        let mut mat = RatMatrix::zeros(n, n);
        for (k, e) in entries.into_iter().enumerate() {
            mat.set(k, k, e);
        }
        mat
    };
    let coeffs: Vec<_> = pts.iter().map(|(u, v)| coefficients(u, v)).collect();
    let c_at = |i: usize| diag(coeffs.iter().map(|(c, _)| c[i].clone()).collect());
    let d_at = |i: usize| diag(coeffs.iter().map(|(_, d)| d[i].clone()).collect());
    let neg = |mat: RatMatrix| RatMatrix::zeros(n, n).sub(&mat).expect("square");

    let mut wrap_done = false;
    let mut prev: Option<(usize, usize)> = None;
    let mut copy = 0;
    for (i, j) in rs.affine_edges() {
        copy = if prev == Some((i, j)) { copy + 1 } else { 0 };
        prev = Some((i, j));
        let suffix = if copy == 0 { String::new() } else { format!(".{copy}") };
        let orig = format!("e:{i}-{j}{suffix}");
        let rev = format!("e*:{j}-{i}{suffix}");
        // Edge {i, i+1} is an "upward" edge carrying u; the edge {0, m-1}
        // closes the cycle. For m = 2 both copies join 0 and 1: the first is
        // upward, the second is the wrap.
        let upward = j == i + 1 && !(m == 2 && copy == 1);
        if upward {
            rep.set_matrix(&orig, c_at(i))?;
            rep.set_matrix(&rev, d_at(i))?;
        } else {
            debug_assert!(i == 0 && j == m - 1 && !wrap_done);
            wrap_done = true;
            // original 0 → m-1 is v, reverse m-1 → 0 is -u
            rep.set_matrix(&orig, d_at(m - 1))?;
            rep.set_matrix(&rev, neg(c_at(m - 1)))?;
        }
    }
    let mut b = RatMatrix::zeros(n, 1);
    for k in 0..n {
        b.set(k, 0, Rational::one());
    }
    rep.set_matrix("b", b)?;
    Ok(rep)
}

/// The same module with the framing vertex removed (`r = 0`).
pub fn drop_framing(rep: &FramedRep) -> Result<FramedRep> {
    let dims = DimVector::new(0, rep.dims.v.clone());
    let matrices = rep
        .quiver
        .arrows
        .iter()
        .zip(&rep.matrices)
        .map(|(a, m)| match (a.tail, a.head) {
            (Vertex::Infinity, _) | (_, Vertex::Infinity) => RatMatrix::zeros(dims.at(a.head), dims.at(a.tail)),
            _ => m.clone(),
        })
        .collect();
    FramedRep::new(rep.quiver.clone(), rep.field, dims, matrices)
}

/// Blockwise direct sum. At most one summand may have `r = 1`.
pub fn direct_sum(reps: &[FramedRep]) -> Result<FramedRep> {
    let first = reps.first().ok_or(Error::EmptyInput)?;
    if reps.iter().any(|r| r.quiver != first.quiver || r.field != first.field) {
        return Err(Error::ShapeMismatch("summands live on different quivers or fields".into()));
    }
    let framed = reps.iter().filter(|r| r.dims.r > 0).count();
    if framed > 1 {
        return Err(Error::MultipleFramings);
    }
    let dims = reps.iter().skip(1).fold(first.dims.clone(), |acc, r| acc.add(&r.dims));
    let matrices = (0..first.quiver.arrows.len())
        .map(|a| {
            let blocks: Vec<&RatMatrix> = reps.iter().map(|r| &r.matrices[a]).collect();
            RatMatrix::block_diag(&blocks)
        })
        .collect();
    FramedRep::new(first.quiver.clone(), first.field, dims, matrices)
}

/// Change of basis `x_a ↦ g_{head} x_a g_{tail}^{-1}` with `g_∞ = 1`.
/// `gauge` holds one invertible matrix per vertex of `I`.
pub fn gauge_transform(rep: &FramedRep, gauge: &[RatMatrix]) -> Result<FramedRep> {
    if gauge.len() != rep.dims.v.len() {
        return Err(Error::IndexMismatch(format!("{} gauge blocks for {} vertices", gauge.len(), rep.dims.v.len())));
    }
    let mut inverses = Vec::with_capacity(gauge.len());
    for (i, g) in gauge.iter().enumerate() {
        if (g.rows, g.cols) != (rep.dims.v[i], rep.dims.v[i]) {
            return Err(Error::ShapeMismatch(format!("gauge block at vertex {i} has the wrong size")));
        }
        inverses.push(
            g.inverse(rep.field)
                .ok_or_else(|| Error::InvalidArgument(format!("gauge block at vertex {i} is singular")))?,
        );
    }
    let ident = RatMatrix::identity(rep.dims.r);
    let block = |v: Vertex, inv: bool| match v {
        Vertex::Infinity => &ident,
        Vertex::Node(i) if inv => &inverses[i],
        Vertex::Node(i) => &gauge[i],
    };
    let matrices = rep
        .quiver
        .arrows
        .iter()
        .zip(&rep.matrices)
        .map(|(a, x)| block(a.head, false).mul(x)?.mul(block(a.tail, true)))
        .collect::<Result<Vec<_>>>()?;
    FramedRep::new(rep.quiver.clone(), rep.field, rep.dims.clone(), matrices)
}

/// The dimension bounds on submodules of the cornered module at `J`:
/// `v_0 δ|_J ≤ v ≤ n δ|_J` when `r = 0`, and the same with `v` different from
/// both bounds when `r = 1`. `v_j` lists the entries at `J` in increasing
/// vertex order.
pub fn corner_bounds_check(r: usize, v_j: &[usize], n: u32, j: &BTreeSet<usize>, rs: &RootSystem) -> Result<bool> {
    rs.check_subset(j)?;
    if !j.contains(&0) {
        return Err(Error::IndexMismatch(format!("J = {j:?} must contain 0")));
    }
    if v_j.len() != j.len() {
        return Err(Error::IndexMismatch(format!("{} entries for |J| = {}", v_j.len(), j.len())));
    }
    if r > 1 {
        return Err(Error::IndexMismatch(format!("framing dimension {r} is not 0 or 1")));
    }
    let v0 = v_j[0];
    let delta: Vec<usize> = j.iter().map(|&i| rs.delta()[i] as usize).collect();
    let lower: Vec<usize> = delta.iter().map(|d| v0 * d).collect();
    let upper: Vec<usize> = delta.iter().map(|d| n as usize * d).collect();
    let within = v_j.iter().zip(&lower).zip(&upper).all(|((v, lo), hi)| lo <= v && v <= hi);
    Ok(match r {
        0 => within,
        _ => within && v_j != lower.as_slice() && v_j != upper.as_slice(),
    })
}

/// A `1×1` matrix.
pub fn scalar(x: i64) -> RatMatrix {
    RatMatrix { rows: 1, cols: 1, data: vec![rat(x)] }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::ratio;
    use crate::rootsys::DynkinType;

    fn rs(t: DynkinType) -> RootSystem {
        RootSystem::build(t).unwrap()
    }

    fn pt(u: i64, v: i64) -> (Rational, Rational) {
        (rat(u), rat(v))
    }

    #[test]
    fn arrow_counts() {
        let q1 = framed_quiver(&rs(DynkinType::a(1)));
        assert_eq!(q1.arrows().len(), 6);
        let labels: Vec<_> = q1.arrows().iter().map(|a| a.label.as_str()).collect();
        assert_eq!(labels, ["e:0-1", "e*:1-0", "e:0-1.1", "e*:1-0.1", "b", "b*"]);
        assert_eq!(framed_quiver(&rs(DynkinType::a(2))).arrows().len(), 8);
        assert_eq!(framed_quiver(&rs(DynkinType::d(4))).arrows().len(), 10);
        let q = framed_quiver(&rs(DynkinType::d(4)));
        let framing: Vec<_> = q
            .arrows()
            .iter()
            .filter(|a| a.tail == Vertex::Infinity || a.head == Vertex::Infinity)
            .map(|a| (a.tail, a.head))
            .collect();
        assert_eq!(framing, [(Vertex::Infinity, Vertex::Node(0)), (Vertex::Node(0), Vertex::Infinity)]);
    }

    #[test]
    fn defect_examples() {
        let a1 = rs(DynkinType::a(1));
        let q = framed_quiver(&a1);
        let zero = FramedRep::zero(q.clone(), FieldSpec::Rational, DimVector::new(1, vec![2, 3])).unwrap();
        assert!(moment_defect(&zero).unwrap().iter().all(RatMatrix::is_zero));
        assert!(is_pi_bar_module(&zero));

        let mut rep = FramedRep::zero(q, FieldSpec::Rational, DimVector::new(1, vec![1, 1])).unwrap();
        rep.set_matrix("e:0-1", scalar(1)).unwrap();
        rep.set_matrix("e*:1-0", scalar(1)).unwrap();
        let d = moment_defect(&rep).unwrap();
        assert_eq!(d[0], scalar(-1));
        assert_eq!(d[1], scalar(1));
        assert!(!is_pi_bar_module(&rep));
        assert!(trace_identity_holds(&rep).unwrap());
    }

    #[test]
    fn shape_mismatch() {
        let q = framed_quiver(&rs(DynkinType::a(1)));
        let mut rep = FramedRep::zero(q, FieldSpec::Rational, DimVector::new(1, vec![1, 1])).unwrap();
        assert_eq!(rep.set_matrix("b", RatMatrix::zeros(2, 1)).unwrap_err().name(), "ShapeMismatch");
        assert!(rep.set_matrix("nope", scalar(1)).is_err());
    }

    #[test]
    fn orbit_sum_modules() {
        let a1 = rs(DynkinType::a(1));
        let rep = framed_orbit_sum(&a1, &[pt(1, 0)], FieldSpec::Rational).unwrap();
        assert_eq!(rep.dims(), &DimVector::new(1, vec![1, 1]));
        assert!(is_pi_bar_module(&rep));

        for m in 1..=4 {
            let r = rs(DynkinType::a(m));
            let pts = [pt(1, 1), pt(2, 3), pt(0, 5), (ratio(1, 2), rat(-4))];
            let rep = framed_orbit_sum(&r, &pts, FieldSpec::Rational).unwrap();
            assert!(is_pi_bar_module(&rep), "A{m}");
        }
        let rep3 = framed_orbit_sum(&rs(DynkinType::a(2)), &[pt(1, 1), pt(1, 2)], FieldSpec::Prime(3)).unwrap();
        assert!(is_pi_bar_module(&rep3));
    }

    #[test]
    fn orbit_sum_errors() {
        let a1 = rs(DynkinType::a(1));
        assert_eq!(framed_orbit_sum(&a1, &[pt(0, 0)], FieldSpec::Rational).unwrap_err().name(), "NonFreeOrbit");
        assert_eq!(
            framed_orbit_sum(&a1, &[pt(1, 0), pt(-1, 0)], FieldSpec::Rational).unwrap_err().name(),
            "DuplicateOrbit"
        );
        assert_eq!(
            framed_orbit_sum(&rs(DynkinType::d(4)), &[pt(1, 0)], FieldSpec::Rational).unwrap_err().name(),
            "UnsupportedType"
        );
        // (1,1) and (4,4) coincide mod 3
        assert_eq!(
            framed_orbit_sum(&a1, &[pt(1, 1), pt(4, 4)], FieldSpec::Prime(3)).unwrap_err().name(),
            "DuplicateOrbit"
        );
    }

    #[test]
    fn direct_sums() {
        let a1 = rs(DynkinType::a(1));
        let framed = framed_orbit_sum(&a1, &[pt(1, 0)], FieldSpec::Rational).unwrap();
        let unframed = FramedRep::zero(framed_quiver(&a1), FieldSpec::Rational, DimVector::new(0, vec![1, 1])).unwrap();
        let s = direct_sum(&[framed.clone(), unframed]).unwrap();
        assert_eq!(s.dims(), &DimVector::new(1, vec![2, 2]));
        assert!(is_pi_bar_module(&s));
        assert_eq!(direct_sum(&[]).unwrap_err(), Error::EmptyInput);
        assert_eq!(direct_sum(&[framed.clone(), framed]).unwrap_err(), Error::MultipleFramings);
    }

    #[test]
    fn gauge_preserves_relations() {
        let a2 = rs(DynkinType::a(2));
        let rep = framed_orbit_sum(&a2, &[pt(1, 2), pt(3, 1)], FieldSpec::Rational).unwrap();
        let g = RatMatrix::from_i64(2, 2, &[1, 2, 3, 5]);
        let moved = gauge_transform(&rep, &[g.clone(), RatMatrix::identity(2), g]).unwrap();
        assert_ne!(moved, rep);
        assert!(is_pi_bar_module(&moved));
    }

    #[test]
    fn corner_bounds() {
        let a2 = rs(DynkinType::a(2));
        let j: BTreeSet<usize> = [0, 1].into();
        assert!(corner_bounds_check(0, &[2, 2], 2, &j, &a2).unwrap());
        assert!(!corner_bounds_check(1, &[2, 2], 2, &j, &a2).unwrap());
        assert!(!corner_bounds_check(0, &[1, 0], 2, &j, &a2).unwrap());
        assert!(corner_bounds_check(1, &[1, 2], 2, &j, &a2).unwrap());
        assert!(corner_bounds_check(0, &[1], 2, &j, &a2).is_err());
    }
}
