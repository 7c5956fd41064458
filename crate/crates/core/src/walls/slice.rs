//! Exact 2D slices of the arrangement: the plane `base + s·d₁ + t·d₂` is cut
//! by every wall, the resulting cell complex is computed by rational polygon
//! splitting, and each face is labeled by sampling.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_traits::{Signed, ToPrimitive, Zero};

use super::{build_arrangement, sign_vector, SignVector};
use crate::error::{Error, Result};
use crate::field::{parse_rational_list, rat, Rational};
use crate::rootsys::{Family, RootSystem};
use crate::stability::{cone_membership, make_theta, n_delta, ConeSpec, StabilityVector};

type Point = (Rational, Rational);

const CANVAS: f64 = 600.0;
const MARGIN: f64 = 20.0;
const PALETTE: [&str; 6] = ["#8dd3c7", "#fdb462", "#bebada", "#fb8072", "#80b1d3", "#b3de69"];

/// An affine 2-plane in `θ_I` coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlicePlane {
    pub base: Vec<Rational>,
    pub directions: [Vec<Rational>; 2],
}

impl SlicePlane {
    pub fn new(base: Vec<Rational>, d1: Vec<Rational>, d2: Vec<Rational>) -> Self {
        SlicePlane { base, directions: [d1, d2] }
    }

    /// Parses `"b0,b1,b2;d0,d1,d2;e0,e1,e2"`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(';').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("plane '{s}' needs base;dir;dir")));
        }
        Ok(SlicePlane::new(
            parse_rational_list(parts[0])?,
            parse_rational_list(parts[1])?,
            parse_rational_list(parts[2])?,
        ))
    }

    /// For `A₂` the triangle `F ∩ {θ(δ) + θ₁ + θ₂ = 1}` with vertices
    /// `σ_{1,2}` at `(0,0)`; for `A₁` the whole of `Θ`.
    pub fn default_for(rs: &RootSystem) -> Result<Self> {
        let d = rs.dynkin();
        match (d.family(), d.rank()) {
            (Family::A, 2) => Ok(SlicePlane::new(
                vec![rat(1), rat(0), rat(0)],
                vec![rat(-2), rat(0), rat(1)],
                vec![rat(-2), rat(1), rat(0)],
            )),
            (Family::A, 1) => Ok(SlicePlane::new(vec![rat(0), rat(0)], vec![rat(1), rat(0)], vec![rat(0), rat(1)])),
            _ => Err(Error::InvalidArgument(format!("no default slice plane for {d}; pass one explicitly"))),
        }
    }

    pub fn at(&self, p: &Point) -> Vec<Rational> {
        let [d1, d2] = &self.directions;
        self.base.iter().zip(d1).zip(d2).map(|((b, x), y)| b + &p.0 * x + &p.1 * y).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FaceKind {
    Cell,
    Edge,
    Vertex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceFace {
    pub id: String,
    pub kind: FaceKind,
    /// Cell polygon, edge endpoints or the single vertex, in plane coordinates.
    pub points: Vec<Point>,
    pub sample: StabilityVector,
    pub sign: SignVector,
    pub labels: Vec<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SliceRender {
    pub faces: Vec<SliceFace>,
    pub svg: String,
}

impl SliceRender {
    pub fn cells(&self) -> impl Iterator<Item = &SliceFace> {
        self.faces.iter().filter(|f| f.kind == FaceKind::Cell)
    }

    pub fn labeled(&self) -> impl Iterator<Item = &SliceFace> {
        self.faces.iter().filter(|f| !f.labels.is_empty())
    }

    /// One line per face: id, sign vector, labels (or `-`).
    pub fn table(&self) -> String {
        let mut out = String::new();
        for f in &self.faces {
            let labels = if f.labels.is_empty() { "-".to_string() } else { f.labels.join(",") };
            let _ = writeln!(out, "{}\t{}\t{}", f.id, f.sign, labels);
        }
        out
    }
}

/// `a·s + b·t + c`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Line {
    a: Rational,
    b: Rational,
    c: Rational,
}

impl Line {
    fn eval(&self, p: &Point) -> Rational {
        &self.a * &p.0 + &self.b * &p.1 + &self.c
    }

    fn normalized(self) -> Line {
        let lead = if self.a.is_zero() { self.b.abs() } else { self.a.abs() };
        Line { a: self.a / &lead, b: self.b / &lead, c: self.c / &lead }
    }

    fn meet(&self, other: &Line) -> Option<Point> {
        let det = &self.a * &other.b - &self.b * &other.a;
        if det.is_zero() {
            return None;
        }
        let s = (&self.b * &other.c - &self.c * &other.b) / &det;
        let t = (&self.c * &other.a - &self.a * &other.c) / &det;
        Some((s, t))
    }
}

fn dot(normal: &[i64], x: &[Rational]) -> Rational {
    normal.iter().zip(x).map(|(&c, v)| rat(c) * v).sum()
}

fn point_on_segment(p: &Point, q: &Point, fp: &Rational, fq: &Rational) -> Point {
    let w = fp / (fp - fq);
    (&p.0 + (&q.0 - &p.0) * &w, &p.1 + (&q.1 - &p.1) * &w)
}

/// Splits a convex polygon by a line into its positive and negative parts.
fn split(poly: &[Point], line: &Line) -> (Option<Vec<Point>>, Option<Vec<Point>>) {
    let vals: Vec<Rational> = poly.iter().map(|p| line.eval(p)).collect();
    let has_pos = vals.iter().any(Signed::is_positive);
    let has_neg = vals.iter().any(Signed::is_negative);
    if !has_neg {
        return (Some(poly.to_vec()), None);
    }
    if !has_pos {
        return (None, Some(poly.to_vec()));
    }
    let (mut pos, mut neg) = (Vec::new(), Vec::new());
    for i in 0..poly.len() {
        let j = (i + 1) % poly.len();
        let (p, fp, fq) = (&poly[i], &vals[i], &vals[j]);
        if !fp.is_negative() {
            pos.push(p.clone());
        }
        if !fp.is_positive() {
            neg.push(p.clone());
        }
        if (fp.is_positive() && fq.is_negative()) || (fp.is_negative() && fq.is_positive()) {
            let x = point_on_segment(p, &poly[j], fp, fq);
            pos.push(x.clone());
            neg.push(x);
        }
    }
    (Some(pos), Some(neg))
}

fn centroid(points: &[Point]) -> Point {
    let k = rat(points.len() as i64);
    let s: Rational = points.iter().map(|p| p.0.clone()).sum();
    let t: Rational = points.iter().map(|p| p.1.clone()).sum();
    (s / &k, t / k)
}

fn edge_key(p: &Point, q: &Point) -> (Point, Point) {
    if p <= q {
        (p.clone(), q.clone())
    } else {
        (q.clone(), p.clone())
    }
}

/// Intersects the arrangement for `nδ` with `plane`, labels every face by
/// the first matching cone of `labels`, and renders the cells as SVG.
pub fn render_slice(rs: &RootSystem, n: u32, plane: &SlicePlane, labels: &[ConeSpec]) -> Result<SliceRender> {
    let dim = rs.vertex_count();
    let [d1, d2] = &plane.directions;
    if plane.base.len() != dim || d1.len() != dim || d2.len() != dim {
        return Err(Error::IndexMismatch(format!("{} slice plane needs {dim} coordinates per vector", rs.dynkin())));
    }
    let independent = (0..dim).any(|i| (0..dim).any(|j| !(&d1[i] * &d2[j] - &d1[j] * &d2[i]).is_zero()));
    if !independent {
        return Err(Error::DegeneratePlane("slice directions are parallel".into()));
    }
    let arr = build_arrangement(rs, n)?;
    let mut lines: BTreeSet<Line> = BTreeSet::new();
    for h in arr.hyperplanes() {
        let c = &h.normal().coeffs;
        let line = Line { a: dot(c, d1), b: dot(c, d2), c: dot(c, &plane.base) };
        if line.a.is_zero() && line.b.is_zero() {
            if line.c.is_zero() {
                return Err(Error::DegeneratePlane(h.to_string()));
            }
            continue;
        }
        lines.insert(line.normalized());
    }
    let lines: Vec<Line> = lines.into_iter().collect();

    // a box strictly containing every vertex of the line arrangement
    let mut xs = vec![Rational::zero()];
    let mut ys = vec![Rational::zero()];
    for (i, l) in lines.iter().enumerate() {
        for m in &lines[i + 1..] {
            if let Some((s, t)) = l.meet(m) {
                xs.push(s);
                ys.push(t);
            }
        }
    }
    let (x0, x1) = (xs.iter().min().unwrap().clone(), xs.iter().max().unwrap().clone());
    let (y0, y1) = (ys.iter().min().unwrap().clone(), ys.iter().max().unwrap().clone());
    let span = std::cmp::max(&x1 - &x0, &y1 - &y0);
    let pad = std::cmp::max(span / rat(4), rat(1));
    let (x0, x1, y0, y1) = (x0 - &pad, x1 + &pad, y0 - &pad, y1 + &pad);
    let bbox =
        vec![(x0.clone(), y0.clone()), (x1.clone(), y0.clone()), (x1.clone(), y1.clone()), (x0.clone(), y1.clone())];

    let mut cells = vec![bbox.clone()];
    for line in &lines {
        let mut next = Vec::with_capacity(cells.len() * 2);
        for cell in &cells {
            let (pos, neg) = split(cell, line);
            next.extend(pos);
            next.extend(neg);
        }
        cells = next;
    }

    let on_lines = |p: &Point| lines.iter().filter(|l| l.eval(p).is_zero()).count();
    let mut edges: BTreeMap<(Point, Point), ()> = BTreeMap::new();
    let mut vertices: BTreeSet<Point> = BTreeSet::new();
    for cell in &cells {
        for i in 0..cell.len() {
            let (p, q) = (&cell[i], &cell[(i + 1) % cell.len()]);
            if lines.iter().any(|l| l.eval(p).is_zero() && l.eval(q).is_zero()) {
                edges.insert(edge_key(p, q), ());
            }
            if on_lines(p) >= 2 {
                vertices.insert(p.clone());
            }
        }
    }

    let v = n_delta(rs, n);
    let make_face = |id: String, kind: FaceKind, points: Vec<Point>, sample: &Point| -> Result<SliceFace> {
        let theta = make_theta(rs, &v, plane.at(sample))?;
        let sign = sign_vector(&arr, &theta)?;
        let mut names = Vec::new();
        for cone in labels {
            if cone_membership(&theta, cone, rs)? {
                names.push(cone.to_string());
            }
        }
        Ok(SliceFace { id, kind, points, sample: theta, sign, labels: names })
    };
    let mut faces = Vec::new();
    for (i, cell) in cells.iter().enumerate() {
        faces.push(make_face(format!("c{i}"), FaceKind::Cell, cell.clone(), &centroid(cell))?);
    }
    for (i, (p, q)) in edges.keys().enumerate() {
        let mid = centroid(&[p.clone(), q.clone()]);
        faces.push(make_face(format!("e{i}"), FaceKind::Edge, vec![p.clone(), q.clone()], &mid)?);
    }
    for (i, p) in vertices.iter().enumerate() {
        faces.push(make_face(format!("v{i}"), FaceKind::Vertex, vec![p.clone()], p)?);
    }

    let svg = draw(&faces, labels, (&x0, &x1, &y0, &y1));
    Ok(SliceRender { faces, svg })
}

fn draw(faces: &[SliceFace], labels: &[ConeSpec], bounds: (&Rational, &Rational, &Rational, &Rational)) -> String {
    let f = |q: &Rational| q.to_f64().unwrap_or(0.0);
    let (x0, x1, y0, y1) = (f(bounds.0), f(bounds.1), f(bounds.2), f(bounds.3));
    let scale = (CANVAS - 2.0 * MARGIN) / (x1 - x0).max(y1 - y0);
    let px = |p: &Point| (MARGIN + (f(&p.0) - x0) * scale, CANVAS - MARGIN - (f(&p.1) - y0) * scale);
    let names: Vec<String> = labels.iter().map(ToString::to_string).collect();
    let colour = |face: &SliceFace| {
        face.labels.first().and_then(|l| names.iter().position(|n| n == l)).map(|i| PALETTE[i % PALETTE.len()])
    };

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{CANVAS}" height="{CANVAS}" viewBox="0 0 {CANVAS} {CANVAS}">"#
    );
    let _ = writeln!(s, r##"<rect width="{CANVAS}" height="{CANVAS}" fill="#ffffff"/>"##);
    for face in faces.iter().filter(|x| x.kind == FaceKind::Cell) {
        let pts: Vec<String> = face.points.iter().map(&px).map(|(x, y)| format!("{x:.3},{y:.3}")).collect();
        let fill = colour(face).unwrap_or("none");
        let _ = writeln!(
            s,
            r##"<polygon id="{}" points="{}" fill="{fill}" stroke="#999999" stroke-width="0.5"/>"##,
            face.id,
            pts.join(" ")
        );
    }
    for face in faces.iter().filter(|x| x.kind == FaceKind::Edge && !x.labels.is_empty()) {
        let ((ax, ay), (bx, by)) = (px(&face.points[0]), px(&face.points[1]));
        let _ = writeln!(
            s,
            r##"<line id="{}" x1="{ax:.3}" y1="{ay:.3}" x2="{bx:.3}" y2="{by:.3}" stroke="#d62728" stroke-width="3"/>"##,
            face.id
        );
    }
    for face in faces.iter().filter(|x| x.kind == FaceKind::Vertex && !x.labels.is_empty()) {
        let (cx, cy) = px(&face.points[0]);
        let _ = writeln!(s, r##"<circle id="{}" cx="{cx:.3}" cy="{cy:.3}" r="4" fill="#d62728"/>"##, face.id);
    }
    for face in faces.iter().filter(|x| !x.labels.is_empty() && x.kind != FaceKind::Vertex) {
        let (cx, cy) = px(&centroid(&face.points));
        let _ = writeln!(
            s,
            r#"<text x="{cx:.3}" y="{cy:.3}" font-family="serif" font-size="14" text-anchor="middle">{}</text>"#,
            face.labels.join(" ")
        );
    }
    let _ = writeln!(s, "</svg>");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::DynkinType;

    fn a2() -> RootSystem {
        RootSystem::build(DynkinType::a(2)).unwrap()
    }

    fn chambers(n: u32) -> Vec<ConeSpec> {
        vec![
            ConeSpec::chamber([], n),
            ConeSpec::chamber([1], n),
            ConeSpec::chamber([2], n),
            ConeSpec::chamber([1, 2], n),
        ]
    }

    #[test]
    fn split_square() {
        let sq: Vec<Point> = [(0, 0), (2, 0), (2, 2), (0, 2)].iter().map(|&(a, b)| (rat(a), rat(b))).collect();
        let line = Line { a: rat(1), b: rat(0), c: rat(-1) };
        let (p, n) = split(&sq, &line);
        assert_eq!(p.unwrap().len(), 4);
        assert_eq!(n.unwrap().len(), 4);
        let edge = Line { a: rat(1), b: rat(0), c: rat(0) };
        let (p, n) = split(&sq, &edge);
        assert!(p.is_some() && n.is_none());
    }

    #[test]
    fn four_labeled_chambers() {
        let rs = a2();
        let r = render_slice(&rs, 3, &SlicePlane::default_for(&rs).unwrap(), &chambers(3)).unwrap();
        let labeled: Vec<&SliceFace> = r.cells().filter(|c| !c.labels.is_empty()).collect();
        assert_eq!(labeled.len(), 4);
        let signs: BTreeSet<String> = labeled.iter().map(|c| c.sign.to_string()).collect();
        assert_eq!(signs.len(), 4);
        assert!(labeled.iter().all(|c| c.sign.is_zero_free() && c.labels.len() == 1));
        assert!(r.svg.starts_with("<?xml"));
        assert_eq!(r.table().lines().count(), r.faces.len());
    }

    #[test]
    fn deterministic() {
        let rs = a2();
        let plane = SlicePlane::default_for(&rs).unwrap();
        let a = render_slice(&rs, 2, &plane, &chambers(2)).unwrap();
        let b = render_slice(&rs, 2, &plane, &chambers(2)).unwrap();
        assert_eq!(a.svg, b.svg);
        assert_eq!(a.table(), b.table());
    }

    #[test]
    fn degenerate_planes() {
        let rs = a2();
        // the plane θ(δ) = 0 through the origin lies inside δ^⊥
        let plane = SlicePlane::parse("0,0,0;-1,1,0;-1,0,1").unwrap();
        assert_eq!(render_slice(&rs, 1, &plane, &[]).unwrap_err().name(), "DegeneratePlane");
        let flat = SlicePlane::parse("1,0,0;1,0,0;2,0,0").unwrap();
        assert_eq!(render_slice(&rs, 1, &flat, &[]).unwrap_err().name(), "DegeneratePlane");
        assert!(SlicePlane::parse("1,0,0;1,0,0").is_err());
        let short = SlicePlane::parse("1,0;1,0;0,1").unwrap();
        assert_eq!(render_slice(&rs, 1, &short, &[]).unwrap_err().name(), "IndexMismatch");
    }
}
