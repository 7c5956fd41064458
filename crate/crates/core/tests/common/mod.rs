//! Samplers and module generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use nqv_core::field::{rat, ratio, FieldSpec, RatMatrix, Rational};
use nqv_core::quiver::{
    direct_sum, drop_framing, framed_orbit_sum, framed_quiver, gauge_transform, DimVector, FramedRep,
};
use nqv_core::rootsys::{DynkinType, RootSystem};
use nqv_core::stability::{make_theta, n_delta, StabilityVector};
use rand::Rng;

pub fn rs(t: DynkinType) -> RootSystem {
    RootSystem::build(t).unwrap()
}

/// A1..A4 and D4.
pub fn small_types() -> Vec<DynkinType> {
    vec![DynkinType::a(1), DynkinType::a(2), DynkinType::a(3), DynkinType::a(4), DynkinType::d(4)]
}

/// All subsets of `1..count`.
pub fn nonzero_subsets(count: usize) -> Vec<BTreeSet<usize>> {
    (0u32..1 << (count - 1)).map(|mask| (1..count).filter(|i| mask & (1 << (i - 1)) != 0).collect()).collect()
}

/// A positive rational with small numerator and denominator.
pub fn positive<R: Rng>(rng: &mut R) -> Rational {
    ratio(rng.gen_range(1..=20), rng.gen_range(1..=7))
}

/// A random point of the open chamber `C_K` in `Θ_{nδ}`.
pub fn sample_chamber<R: Rng>(rs: &RootSystem, k: &BTreeSet<usize>, n: u32, rng: &mut R) -> StabilityVector {
    let delta = rs.delta();
    let count = rs.vertex_count();
    let mut theta = vec![rat(0); count];
    for &i in k {
        theta[i] = positive(rng);
    }
    // s = θ(δ|_J), total = θ(δ)
    let s = positive(rng);
    let total = &s + k.iter().map(|&i| rat(delta[i]) * &theta[i]).sum::<Rational>();
    let mut rest = rat(0);
    for i in (1..count).filter(|i| !k.contains(i)) {
        theta[i] = rat(n as i64 - 1) * &total + positive(rng);
        rest += rat(delta[i]) * &theta[i];
    }
    theta[0] = s - rest;
    make_theta(rs, &n_delta(rs, n), theta).unwrap()
}

/// A random point of the relative interior of `σ_K` in `Θ_{nδ}`.
pub fn sample_sigma<R: Rng>(rs: &RootSystem, k: &BTreeSet<usize>, n: u32, rng: &mut R) -> StabilityVector {
    let delta = rs.delta();
    let count = rs.vertex_count();
    let mut theta = vec![rat(0); count];
    let total = positive(rng);
    let mut rest = rat(0);
    for i in (1..count).filter(|i| !k.contains(i)) {
        theta[i] = rat(n as i64 - 1) * &total + positive(rng);
        rest += rat(delta[i]) * &theta[i];
    }
    theta[0] = total - rest;
    make_theta(rs, &n_delta(rs, n), theta).unwrap()
}

pub fn add_scaled(a: &StabilityVector, eps: &Rational, b: &StabilityVector, rs: &RootSystem) -> StabilityVector {
    let entries = a.entries().iter().zip(b.entries()).map(|(x, y)| x + eps * y).collect();
    make_theta(rs, a.context(), entries).unwrap()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModuleKind {
    OrbitSum,
    Conjugated,
    NoFraming,
    PartialFraming,
    ExtraOrbit,
    ExtraZero,
}

#[derive(Clone, Debug)]
pub struct CorpusModule {
    pub kind: ModuleKind,
    pub rs: RootSystem,
    /// `v = n·δ`.
    pub n: u32,
    pub rep: FramedRep,
}

fn f3() -> FieldSpec {
    FieldSpec::prime(3).unwrap()
}

/// `n` points in pairwise distinct free orbits, reduced mod 3.
fn orbit_points<R: Rng>(rs: &RootSystem, n: usize, rng: &mut R) -> (Vec<(Rational, Rational)>, FramedRep) {
    loop {
        let pts: Vec<(Rational, Rational)> =
            (0..n).map(|_| (rat(rng.gen_range(0..3)), rat(rng.gen_range(0..3)))).collect();
        if let Ok(rep) = framed_orbit_sum(rs, &pts, f3()) {
            return (pts, rep);
        }
    }
}

fn random_invertible<R: Rng>(d: usize, rng: &mut R) -> RatMatrix {
    loop {
        let entries: Vec<i64> = (0..d * d).map(|_| rng.gen_range(0..3)).collect();
        let m = RatMatrix::from_i64(d, d, &entries);
        if m.inverse(f3()).is_some() {
            return m;
        }
    }
}

pub fn conjugate<R: Rng>(rep: &FramedRep, rng: &mut R) -> FramedRep {
    let gauge: Vec<RatMatrix> = rep.dims().v.iter().map(|&d| random_invertible(d, rng)).collect();
    gauge_transform(rep, &gauge).unwrap()
}

/// One module of the requested kind over `F_3`, total dimension at most 8.
pub fn generate<R: Rng>(kind: ModuleKind, t: DynkinType, n: u32, rng: &mut R) -> CorpusModule {
    let rs = rs(t);
    let (rep, n) = match kind {
        ModuleKind::OrbitSum => (orbit_points(&rs, n as usize, rng).1, n),
        ModuleKind::Conjugated => (conjugate(&orbit_points(&rs, n as usize, rng).1, rng), n),
        ModuleKind::NoFraming => {
            let mut rep = orbit_points(&rs, n as usize, rng).1;
            rep.set_matrix("b", RatMatrix::zeros(rep.dims().v[0], 1)).unwrap();
            (rep, n)
        }
        ModuleKind::PartialFraming => {
            // the framing reaches some orbits and misses others
            let mut rep = orbit_points(&rs, n as usize, rng).1;
            let hit = rng.gen_range(0..n as usize);
            let mut b = RatMatrix::zeros(n as usize, 1);
            b.set(hit, 0, rat(rng.gen_range(1..3)));
            rep.set_matrix("b", b).unwrap();
            (rep, n)
        }
        ModuleKind::ExtraOrbit => {
            let (pts, _) = orbit_points(&rs, 2, rng);
            let framed = framed_orbit_sum(&rs, &pts[..1], f3()).unwrap();
            let loose = drop_framing(&framed_orbit_sum(&rs, &pts[1..], f3()).unwrap()).unwrap();
            (direct_sum(&[framed, loose]).unwrap(), 2)
        }
        ModuleKind::ExtraZero => {
            let framed = orbit_points(&rs, 1, rng).1;
            let zero = FramedRep::zero(framed_quiver(&rs), f3(), DimVector::new(0, n_delta(&rs, 1))).unwrap();
            (direct_sum(&[framed, zero]).unwrap(), 2)
        }
    };
    let rep = if rng.gen_bool(0.5) && kind != ModuleKind::Conjugated { conjugate(&rep, rng) } else { rep };
    CorpusModule { kind, rs, n, rep }
}

/// The 50-module corpus: A1 and A2, `n ≤ 2`, every kind represented.
pub fn corpus<R: Rng>(rng: &mut R) -> Vec<CorpusModule> {
    let kinds = [
        ModuleKind::OrbitSum,
        ModuleKind::Conjugated,
        ModuleKind::NoFraming,
        ModuleKind::PartialFraming,
        ModuleKind::ExtraOrbit,
        ModuleKind::ExtraZero,
    ];
    let mut out = Vec::new();
    let mut i = 0;
    while out.len() < 50 {
        let kind = kinds[i % kinds.len()];
        let t = if (i / kinds.len()).is_multiple_of(2) { DynkinType::a(1) } else { DynkinType::a(2) };
        let n = match kind {
            ModuleKind::ExtraOrbit | ModuleKind::ExtraZero => 1,
            ModuleKind::PartialFraming => 2,
            _ => 1 + (i / 12) as u32 % 2,
        };
        out.push(generate(kind, t, n, rng));
        i += 1;
    }
    out
}
