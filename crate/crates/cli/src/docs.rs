//! JSON documents for representations and stability vectors. Rationals are
//! strings (`"3"`, `"-7/2"`); the framing vertex is keyed `"inf"`.

use std::collections::BTreeMap;

use nqv_core::field::{format_rational, parse_rational, FieldSpec, RatMatrix};
use nqv_core::quiver::{framed_quiver, DimVector, FramedRep, Vertex};
use nqv_core::rootsys::{DynkinType, RootSystem};
use nqv_core::stability::{make_theta, n_delta, StabilityVector};
use nqv_core::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepDocument {
    #[serde(rename = "type")]
    pub dynkin: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    /// `"Q"` or `"Fp"` (with `p`).
    pub field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    pub dims: BTreeMap<String, usize>,
    #[serde(default)]
    pub matrices: BTreeMap<String, Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaDocument {
    #[serde(rename = "type")]
    pub dynkin: String,
    pub n: u32,
    pub entries: BTreeMap<String, String>,
}

fn vertex_key(v: Vertex) -> String {
    v.to_string()
}

pub fn root_system(name: &str) -> Result<RootSystem> {
    RootSystem::build(name.parse::<DynkinType>()?)
}

fn field_spec(doc: &RepDocument) -> Result<FieldSpec> {
    match (doc.field.as_str(), doc.p) {
        ("Q", _) => Ok(FieldSpec::Rational),
        ("Fp", Some(p)) => FieldSpec::prime(p),
        ("Fp", None) => Err(Error::Parse("field \"Fp\" needs \"p\"".into())),
        (other, _) => match other.strip_prefix('F').and_then(|p| p.parse().ok()) {
            Some(p) => FieldSpec::prime(p),
            None => Err(Error::Parse(format!("unknown field {other:?}"))),
        },
    }
}

impl RepDocument {
    pub fn from_rep(rep: &FramedRep, n: Option<u32>) -> Self {
        let (field, p) = match rep.field() {
            FieldSpec::Rational => ("Q".to_string(), None),
            FieldSpec::Prime(p) => ("Fp".to_string(), Some(p)),
        };
        let dims = rep.dims();
        let mut dim_map = BTreeMap::from([(vertex_key(Vertex::Infinity), dims.r)]);
        for (i, &d) in dims.v.iter().enumerate() {
            dim_map.insert(vertex_key(Vertex::Node(i)), d);
        }
        let matrices = rep
            .quiver()
            .arrows()
            .iter()
            .zip(rep.matrices())
            .filter(|(_, m)| m.rows > 0 && m.cols > 0)
            .map(|(a, m)| {
                let rows = (0..m.rows).map(|r| m.row(r).iter().map(format_rational).collect()).collect();
                (a.label.clone(), rows)
            })
            .collect();
        RepDocument { dynkin: rep.quiver().dynkin().to_string(), n, field, p, dims: dim_map, matrices }
    }

    /// Builds the representation; absent arrows are zero.
    pub fn to_rep(&self) -> Result<FramedRep> {
        let rs = root_system(&self.dynkin)?;
        let quiver = framed_quiver(&rs);
        let field = field_spec(self)?;
        let dim = |v: Vertex| self.dims.get(&vertex_key(v)).copied().unwrap_or(0);
        for key in self.dims.keys() {
            let known = key == "inf" || key.parse::<usize>().is_ok_and(|i| i < rs.vertex_count());
            if !known {
                return Err(Error::IndexMismatch(format!("unknown vertex {key:?}")));
            }
        }
        let dims =
            DimVector::new(dim(Vertex::Infinity), (0..rs.vertex_count()).map(|i| dim(Vertex::Node(i))).collect());
        for label in self.matrices.keys() {
            if quiver.arrow_index(label).is_none() {
                return Err(Error::IndexMismatch(format!("unknown arrow {label:?}")));
            }
        }
        let mut matrices = Vec::new();
        for arrow in quiver.arrows() {
            let (rows, cols) = (dims.at(arrow.head), dims.at(arrow.tail));
            let mut m = RatMatrix::zeros(rows, cols);
            if let Some(data) = self.matrices.get(&arrow.label) {
                if data.len() != rows || data.iter().any(|r| r.len() != cols) {
                    return Err(Error::ShapeMismatch(format!("{} must be {rows}×{cols}", arrow.label)));
                }
                for (r, row) in data.iter().enumerate() {
                    for (c, x) in row.iter().enumerate() {
                        m.set(r, c, parse_rational(x)?);
                    }
                }
            }
            matrices.push(m);
        }
        FramedRep::new(quiver, field, dims, matrices)
    }
}

impl ThetaDocument {
    pub fn from_theta(theta: &StabilityVector, n: u32) -> Self {
        let entries = theta.entries().iter().enumerate().map(|(i, q)| (i.to_string(), format_rational(q))).collect();
        ThetaDocument { dynkin: theta.dynkin().to_string(), n, entries }
    }

    pub fn to_theta(&self) -> Result<(RootSystem, StabilityVector)> {
        let rs = root_system(&self.dynkin)?;
        let mut entries = Vec::with_capacity(rs.vertex_count());
        for i in 0..rs.vertex_count() {
            let raw =
                self.entries.get(&i.to_string()).ok_or_else(|| Error::IndexMismatch(format!("missing entry {i}")))?;
            entries.push(parse_rational(raw)?);
        }
        if self.entries.len() != rs.vertex_count() {
            return Err(Error::IndexMismatch(format!(
                "{} entries for {} vertices",
                self.entries.len(),
                rs.vertex_count()
            )));
        }
        let theta = make_theta(&rs, &n_delta(&rs, self.n), entries)?;
        Ok((rs, theta))
    }
}
