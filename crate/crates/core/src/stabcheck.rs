//! Exact stability checks for small framed modules: cyclic spans, the full
//! submodule lattice over `F_p`, (semi)stability with witnesses,
//! Harder–Narasimhan filtrations and tangent dimensions.
//!
//! Coordinates are global: the `∞` block first, then the blocks of
//! vertices `0, 1, ...` in order. Every submodule is graded, so its echelon
//! basis splits into per-vertex rows.

use std::collections::{HashSet, VecDeque};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{rank, Field, FieldSpec, PrimeField, RatMatrix, Rational, Rationals, Subspace};
use crate::quiver::{is_pi_bar_module, DimVector, FramedRep, Vertex};
use crate::stability::{pair_dim, StabilityVector};

/// Largest total dimension the lattice search accepts, per prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeConfig {
    pub caps: Vec<(u32, usize)>,
    /// Cap for primes not listed in `caps`.
    pub fallback_cap: usize,
}

impl Default for LatticeConfig {
    fn default() -> Self {
        LatticeConfig { caps: vec![(2, 12), (3, 8), (5, 6)], fallback_cap: 4 }
    }
}

impl LatticeConfig {
    pub fn cap(&self, p: u32) -> usize {
        self.caps.iter().find(|(q, _)| *q == p).map(|(_, c)| *c).unwrap_or(self.fallback_cap)
    }
}

/// Arrow matrices lifted to maps between blocks of the global coordinates.
struct Action<E> {
    total: usize,
    /// `(offset, dim)` of each vertex block.
    blocks: Vec<(usize, usize)>,
    arrows: Vec<ArrowMap<E>>,
}

struct ArrowMap<E> {
    tail: usize,
    tail_dim: usize,
    head: usize,
    head_dim: usize,
    entries: Vec<E>,
}

impl<E: Clone + PartialEq + Eq + std::hash::Hash + std::fmt::Debug> Action<E> {
    fn new<F: Field<Elem = E>>(field: &F, rep: &FramedRep) -> Result<Self> {
        let dims = rep.dims();
        let mut arrows = Vec::new();
        for (a, m) in rep.quiver().arrows().iter().zip(rep.matrices()) {
            if m.rows == 0 || m.cols == 0 {
                continue;
            }
            arrows.push(ArrowMap {
                tail: dims.offset(a.tail),
                tail_dim: m.cols,
                head: dims.offset(a.head),
                head_dim: m.rows,
                entries: m.to_field(field)?,
            });
        }
        let mut blocks = vec![(0, dims.r)];
        blocks.extend((0..dims.v.len()).map(|i| (dims.offset(Vertex::Node(i)), dims.v[i])));
        Ok(Action { total: dims.total(), blocks, arrows })
    }

    fn apply<F: Field<Elem = E>>(&self, field: &F, a: &ArrowMap<E>, v: &[E]) -> Option<Vec<E>> {
        let src = &v[a.tail..a.tail + a.tail_dim];
        if src.iter().all(|x| field.is_zero(x)) {
            return None;
        }
        let mut out = vec![field.zero(); self.total];
        let mut any = false;
        for r in 0..a.head_dim {
            let mut acc = field.zero();
            for (c, s) in src.iter().enumerate() {
                let e = &a.entries[r * a.tail_dim + c];
                if !field.is_zero(e) && !field.is_zero(s) {
                    acc = field.add(&acc, &field.mul(e, s));
                }
            }
            any |= !field.is_zero(&acc);
            out[a.head + r] = acc;
        }
        any.then_some(out)
    }

    /// The smallest invariant subspace containing `start` and `seeds`;
    /// `start` must already be invariant. Seeds are split into their vertex
    /// components, since the idempotents act too.
    fn spin<F: Field<Elem = E>>(&self, field: &F, start: &Subspace<E>, seeds: &[Vec<E>]) -> Subspace<E> {
        let mut space = start.clone();
        let mut queue = VecDeque::new();
        for s in seeds {
            for &(off, d) in &self.blocks {
                let mut part = vec![field.zero(); self.total];
                part[off..off + d].clone_from_slice(&s[off..off + d]);
                if space.insert(field, &part) {
                    queue.push_back(part);
                }
            }
        }
        while let Some(v) = queue.pop_front() {
            for a in &self.arrows {
                if let Some(w) = self.apply(field, a, &v) {
                    if space.insert(field, &w) {
                        queue.push_back(w);
                    }
                }
            }
        }
        space
    }

    /// Closed under the arrows and under the vertex idempotents.
    fn is_invariant<F: Field<Elem = E>>(&self, field: &F, space: &Subspace<E>) -> bool {
        space.rows().iter().all(|v| {
            let graded = self.blocks.iter().all(|&(off, d)| {
                let mut part = vec![field.zero(); self.total];
                part[off..off + d].clone_from_slice(&v[off..off + d]);
                space.contains(field, &part)
            });
            graded && self.arrows.iter().all(|a| self.apply(field, a, v).is_none_or(|w| space.contains(field, &w)))
        })
    }
}

/// Dimension vector of a graded subspace, read off its pivot columns.
fn graded_dims<E>(field: &impl Field<Elem = E>, whole: &DimVector, rows: &[Vec<E>]) -> DimVector {
    let mut d = DimVector::new(0, vec![0; whole.v.len()]);
    for row in rows {
        let Some(p) = row.iter().position(|x| !field.is_zero(x)) else { continue };
        if p < whole.r {
            d.r += 1;
            continue;
        }
        let mut off = whole.r;
        for (i, &vi) in whole.v.iter().enumerate() {
            if p < off + vi {
                d.v[i] += 1;
                break;
            }
            off += vi;
        }
    }
    d
}

/// A submodule with its echelon basis in global coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Submodule {
    pub dims: DimVector,
    pub basis: Vec<Vec<Rational>>,
}

fn to_submodule<F: Field>(field: &F, whole: &DimVector, space: &Subspace<F::Elem>) -> Submodule {
    Submodule {
        dims: graded_dims(field, whole, space.rows()),
        basis: space.rows().iter().map(|r| r.iter().map(|x| field.to_rational(x)).collect()).collect(),
    }
}

fn check_seeds(rep: &FramedRep, seeds: &[Vec<Rational>]) -> Result<()> {
    let total = rep.dims().total();
    match seeds.iter().find(|s| s.len() != total) {
        Some(s) => Err(Error::ShapeMismatch(format!("seed of length {} in a module of dimension {total}", s.len()))),
        None => Ok(()),
    }
}

fn spin_in<F: Field>(field: &F, rep: &FramedRep, seeds: &[Vec<Rational>]) -> Result<Submodule> {
    let action = Action::new(field, rep)?;
    let seeds: Vec<Vec<F::Elem>> =
        seeds.iter().map(|s| s.iter().map(|q| field.from_rational(q)).collect()).collect::<Result<_>>()?;
    let space = action.spin(field, &Subspace::zero(action.total), &seeds);
    Ok(to_submodule(field, rep.dims(), &space))
}

/// The submodule generated by `seeds` (vectors in global coordinates).
pub fn spin(rep: &FramedRep, seeds: &[Vec<Rational>]) -> Result<Submodule> {
    check_seeds(rep, seeds)?;
    match rep.field() {
        FieldSpec::Rational => spin_in(&Rationals, rep, seeds),
        FieldSpec::Prime(p) => spin_in(&PrimeField::new(p), rep, seeds),
    }
}

fn invariant_in<F: Field>(field: &F, rep: &FramedRep, basis: &[Vec<Rational>]) -> Result<bool> {
    let action = Action::new(field, rep)?;
    let mut space = Subspace::zero(action.total);
    for v in basis {
        let v: Vec<F::Elem> = v.iter().map(|q| field.from_rational(q)).collect::<Result<_>>()?;
        space.insert(field, &v);
    }
    Ok(action.is_invariant(field, &space))
}

/// Whether the span of `basis` is closed under every arrow.
pub fn is_submodule(rep: &FramedRep, basis: &[Vec<Rational>]) -> Result<bool> {
    check_seeds(rep, basis)?;
    match rep.field() {
        FieldSpec::Rational => invariant_in(&Rationals, rep, basis),
        FieldSpec::Prime(p) => invariant_in(&PrimeField::new(p), rep, basis),
    }
}

/// `true` iff the module is generated by its `∞` part.
pub fn is_framing_cyclic(rep: &FramedRep) -> Result<bool> {
    let d = rep.dims();
    if d.r == 0 {
        return Err(Error::NoFraming);
    }
    let seeds: Vec<Vec<Rational>> = (0..d.r)
        .map(|k| {
            (0..d.total()).map(|i| if i == k { Rational::from_integer(1.into()) } else { Rational::zero() }).collect()
        })
        .collect();
    Ok(spin(rep, &seeds)?.dims == *d)
}

/// The same matrices read over `F_p`.
pub fn reduce_mod(rep: &FramedRep, p: u32) -> Result<FramedRep> {
    FramedRep::new(rep.quiver().clone(), FieldSpec::prime(p)?, rep.dims().clone(), rep.matrices().to_vec())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeNode {
    pub dims: DimVector,
    space: Subspace<u32>,
}

impl LatticeNode {
    /// Echelon basis rows with entries in `0..p`.
    pub fn basis(&self) -> Vec<Vec<Rational>> {
        self.space.rows().iter().map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect()
    }
}

/// Every submodule of a module over `F_p`, sorted by total dimension, then
/// dimension vector, then basis. Node 0 is zero and the last node is the
/// whole module.
#[derive(Clone, Debug)]
pub struct SubmoduleLattice {
    field: PrimeField,
    whole: DimVector,
    nodes: Vec<LatticeNode>,
}

impl SubmoduleLattice {
    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn nodes(&self) -> &[LatticeNode] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn whole(&self) -> &DimVector {
        &self.whole
    }

    /// Node `a` is contained in node `b`.
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.nodes[a].space.is_subspace_of(&self.field, &self.nodes[b].space)
    }

    /// The node equal to the sum of nodes `a` and `b`.
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let s = self.nodes[a].space.sum(&self.field, &self.nodes[b].space);
        self.nodes.iter().position(|n| n.space == s)
    }

    fn is_proper_nonzero(&self, i: usize) -> bool {
        i != 0 && self.nodes[i].dims != self.whole
    }
}

/// Nonzero vectors with leading entry 1, supported on `off..off+d`.
fn projective_points(p: u32, total: usize, off: usize, d: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for lead in 0..d {
        let free = d - lead - 1;
        for code in 0..(p as usize).pow(free as u32) {
            let mut v = vec![0u32; total];
            v[off + lead] = 1;
            let mut c = code;
            for k in 0..free {
                v[off + lead + 1 + k] = (c % p as usize) as u32;
                c /= p as usize;
            }
            out.push(v);
        }
    }
    out
}

pub fn submodule_lattice(rep: &FramedRep) -> Result<SubmoduleLattice> {
    submodule_lattice_with(rep, &LatticeConfig::default())
}

/// Spans every homogeneous vector (up to scalars) to get the cyclic
/// submodules, then closes under sums. Every submodule is graded, hence a
/// sum of cyclic submodules of homogeneous vectors.
pub fn submodule_lattice_with(rep: &FramedRep, config: &LatticeConfig) -> Result<SubmoduleLattice> {
    let FieldSpec::Prime(p) = rep.field() else {
        return Err(Error::InvalidArgument("the submodule lattice needs a module over F_p".into()));
    };
    let whole = rep.dims().clone();
    let total = whole.total();
    let cap = config.cap(p);
    if total > cap {
        return Err(Error::LatticeTooLarge { dim: total, cap, p });
    }
    let field = PrimeField::new(p);
    let action = Action::new(&field, rep)?;
    let zero = Subspace::zero(total);

    let mut seen: HashSet<Subspace<u32>> = HashSet::from([zero.clone()]);
    let mut cyclic = Vec::new();
    for &(off, d) in &action.blocks {
        for v in projective_points(p, total, off, d) {
            let s = action.spin(&field, &zero, &[v]);
            if seen.insert(s.clone()) {
                cyclic.push(s);
            }
        }
    }
    let mut all: Vec<Subspace<u32>> = vec![zero];
    all.extend(cyclic.iter().cloned());
    let mut queue: VecDeque<Subspace<u32>> = cyclic.iter().cloned().collect();
    while let Some(node) = queue.pop_front() {
        for c in &cyclic {
            if c.is_subspace_of(&field, &node) {
                continue;
            }
            let s = node.sum(&field, c);
            if seen.insert(s.clone()) {
                all.push(s.clone());
                queue.push_back(s);
            }
        }
    }
    let mut nodes: Vec<LatticeNode> =
        all.into_iter().map(|space| LatticeNode { dims: graded_dims(&field, &whole, space.rows()), space }).collect();
    nodes.sort_by(|a, b| {
        (a.dims.total(), a.dims.r, &a.dims.v, a.space.rows()).cmp(&(
            b.dims.total(),
            b.dims.r,
            &b.dims.v,
            b.space.rows(),
        ))
    });
    Ok(SubmoduleLattice { field, whole, nodes })
}

fn check_theta(rep: &FramedRep, theta: &StabilityVector) -> Result<()> {
    if theta.dynkin() != rep.quiver().dynkin() {
        return Err(Error::MismatchedRootSystem);
    }
    if theta.context() != rep.dims().v.as_slice() {
        return Err(Error::ContextMismatch(format!(
            "θ lives in Θ_v for v = {:?}, module has v = {:?}",
            theta.context(),
            rep.dims().v
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityReport {
    pub semistable: bool,
    pub stable: bool,
    /// A proper nonzero submodule of minimal pairing, when one violates
    /// stability.
    pub witness: Option<Submodule>,
    pub witness_pairing: Option<Rational>,
    pub caveat: String,
}

/// Checks `θ · dim V' ≥ 0` (and `> 0` for proper nonzero `V'`) over the
/// whole lattice.
pub fn stability_report(rep: &FramedRep, theta: &StabilityVector) -> Result<StabilityReport> {
    stability_report_with(rep, theta, &LatticeConfig::default())
}

pub fn stability_report_with(
    rep: &FramedRep,
    theta: &StabilityVector,
    config: &LatticeConfig,
) -> Result<StabilityReport> {
    check_theta(rep, theta)?;
    let lattice = submodule_lattice_with(rep, config)?;
    let mut worst: Option<(Rational, usize)> = None;
    for i in (0..lattice.len()).filter(|&i| lattice.is_proper_nonzero(i)) {
        let pairing = pair_dim(theta, &lattice.nodes[i].dims)?;
        // nodes are sorted, so the first minimum is the smallest and lexicographically first
        if worst.as_ref().is_none_or(|(w, _)| pairing < *w) {
            worst = Some((pairing, i));
        }
    }
    let semistable = worst.as_ref().is_none_or(|(w, _)| !w.is_negative());
    let stable = worst.as_ref().is_none_or(|(w, _)| w.is_positive());
    let (witness, witness_pairing) = match worst {
        Some((w, i)) if !stable => {
            let node = &lattice.nodes[i];
            (Some(Submodule { dims: node.dims.clone(), basis: node.basis() }), Some(w))
        }
        _ => (None, None),
    };
    Ok(StabilityReport {
        semistable,
        stable,
        witness,
        witness_pairing,
        caveat: format!("certified for the reduction over F_{}, not for a characteristic-zero lift", lattice.p()),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnLayer {
    /// Dimension vector of the subquotient.
    pub dims: DimVector,
    /// `-θ · dim / total dim` of the subquotient.
    pub slope: Rational,
    /// Dimension vectors of the Jordan–Hölder factors of the layer.
    pub jordan_holder: Vec<DimVector>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnFiltration {
    pub layers: Vec<HnLayer>,
    /// The filtration steps `V_1 ⊂ V_2 ⊂ ... ⊂ V`.
    pub steps: Vec<Submodule>,
}

/// `-θ · (dim b - dim a) / (total b - total a)`. With this sign the
/// semistable modules are those whose submodules have slope at most their
/// own, matching `θ · dim V' ≥ 0`.
fn slope(theta: &StabilityVector, a: &DimVector, b: &DimVector) -> Result<Rational> {
    let q = b.checked_sub(a).expect("a ⊆ b");
    Ok(-pair_dim(theta, &q)? / Rational::from_integer((q.total() as i64).into()))
}

pub fn hn_filtration(rep: &FramedRep, theta: &StabilityVector) -> Result<HnFiltration> {
    check_theta(rep, theta)?;
    let lattice = submodule_lattice(rep)?;
    let top = lattice.len() - 1;
    let mut current = 0;
    let mut layers = Vec::new();
    let mut steps = Vec::new();
    while current != top {
        let base = lattice.nodes[current].dims.clone();
        let mut best: Option<(Rational, usize)> = None;
        for i in 0..lattice.len() {
            if i == current || !lattice.le(current, i) {
                continue;
            }
            let s = slope(theta, &base, &lattice.nodes[i].dims)?;
            // later nodes are larger, so `>=` prefers the maximal one
            if best.as_ref().is_none_or(|(b, _)| s >= *b) {
                best = Some((s, i));
            }
        }
        let (s, next) = best.expect("the whole module strictly contains a proper node");
        let dims = lattice.nodes[next].dims.checked_sub(&base).expect("containment");
        let jordan_holder = jordan_holder(&lattice, theta, current, next, &s)?;
        layers.push(HnLayer { dims, slope: s, jordan_holder });
        let node = &lattice.nodes[next];
        steps.push(Submodule { dims: node.dims.clone(), basis: node.basis() });
        current = next;
    }
    Ok(HnFiltration { layers, steps })
}

/// Repeatedly splits off a minimal same-slope subobject of the layer
/// `nodes[lo] ⊂ nodes[hi]`.
fn jordan_holder(
    lattice: &SubmoduleLattice,
    theta: &StabilityVector,
    lo: usize,
    hi: usize,
    mu: &Rational,
) -> Result<Vec<DimVector>> {
    let mut factors = Vec::new();
    let mut current = lo;
    while current != hi {
        let base = lattice.nodes[current].dims.clone();
        let mut pick = None;
        for i in 0..lattice.len() {
            if i != current
                && lattice.le(current, i)
                && lattice.le(i, hi)
                && slope(theta, &base, &lattice.nodes[i].dims)? == *mu
            {
                pick = Some(i);
                break;
            }
        }
        let next = pick.expect("the layer itself has slope μ");
        factors.push(lattice.nodes[next].dims.checked_sub(&base).expect("containment"));
        current = next;
    }
    factors.sort_by(|a, b| (a.r, &a.v).cmp(&(b.r, &b.v)));
    Ok(factors)
}

fn rank_over(field: FieldSpec, rows: &[Vec<Rational>]) -> Result<usize> {
    match field {
        FieldSpec::Rational => Ok(rank(&Rationals, rows)),
        FieldSpec::Prime(p) => {
            let f = PrimeField::new(p);
            let rows: Vec<Vec<u32>> =
                rows.iter().map(|r| r.iter().map(|q| f.from_rational(q)).collect()).collect::<Result<_>>()?;
            Ok(rank(&f, &rows))
        }
    }
}

fn unit(rows: usize, cols: usize, r: usize, c: usize) -> RatMatrix {
    let mut m = RatMatrix::zeros(rows, cols);
    m.set(r, c, Rational::from_integer(1.into()));
    m
}

fn flatten(ms: &[RatMatrix]) -> Vec<Rational> {
    ms.iter().flat_map(|m| m.data.iter().cloned()).collect()
}

/// `dim ker dμ - rank(gauge action)`, the gauge group being `∏_{i∈I} GL(v_i)`.
pub fn tangent_dimension(rep: &FramedRep) -> Result<usize> {
    if !is_pi_bar_module(rep) {
        return Err(Error::NotAModule);
    }
    let dims = rep.dims();
    let arrows = rep.quiver().arrows();
    let x = rep.matrices();
    let node_zero = |v: &[usize]| v.iter().map(|&d| RatMatrix::zeros(d, d)).collect::<Vec<_>>();

    // dμ(X)_i = Σ_{a: head i} (X_a x_a* + x_a X_a*) - Σ_{a: tail i} (X_a* x_a + x_a* X_a), a original
    let mut dmu_cols = Vec::new();
    for (k, arrow) in arrows.iter().enumerate() {
        let (rows, cols) = (x[k].rows, x[k].cols);
        for r in 0..rows {
            for c in 0..cols {
                let e = unit(rows, cols, r, c);
                let mut out = node_zero(&dims.v);
                let (orig, star) = if arrow.original { (k, arrow.partner) } else { (arrow.partner, k) };
                let a = &arrows[orig];
                let (xa, xs) = if arrow.original { (&e, &x[star]) } else { (&x[orig], &e) };
                // product rule: only the varied factor is replaced by `e`
                let term_head = xa.mul(xs)?;
                let term_tail = xs.mul(xa)?;
                if let Vertex::Node(h) = a.head {
                    out[h] = out[h].add(&term_head)?;
                }
                if let Vertex::Node(t) = a.tail {
                    out[t] = out[t].sub(&term_tail)?;
                }
                dmu_cols.push(flatten(&out));
            }
        }
    }
    let arrow_dim = dmu_cols.len();
    let dmu_rank = rank_over(rep.field(), &dmu_cols)?;

    // ξ ↦ (ξ_head x_a - x_a ξ_tail)_a with ξ_∞ = 0
    let mut gauge_cols = Vec::new();
    for (i, &d) in dims.v.iter().enumerate() {
        for r in 0..d {
            for c in 0..d {
                let xi = unit(d, d, r, c);
                let mut out = Vec::with_capacity(arrows.len());
                for (k, a) in arrows.iter().enumerate() {
                    let mut m = RatMatrix::zeros(x[k].rows, x[k].cols);
                    if a.head == Vertex::Node(i) {
                        m = m.add(&xi.mul(&x[k])?)?;
                    }
                    if a.tail == Vertex::Node(i) {
                        m = m.sub(&x[k].mul(&xi)?)?;
                    }
                    out.push(m);
                }
                gauge_cols.push(flatten(&out));
            }
        }
    }
    let gauge_rank = rank_over(rep.field(), &gauge_cols)?;
    Ok(arrow_dim - dmu_rank - gauge_rank)
}
