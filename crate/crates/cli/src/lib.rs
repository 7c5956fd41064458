//! The `nqv` command-line tool. [`run`] is the whole program; `main` only
//! wires it to the process streams.

pub mod docs;

use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use nqv_core::field::{format_rational, parse_rational, FieldSpec, RatMatrix, Rational};
use nqv_core::mckay::{build_mckay, verify_correspondence, GroupSpec};
use nqv_core::quiver::{framed_orbit_sum, infinity_defect, moment_defect, trace_identity_holds, DimVector, FramedRep};
use nqv_core::stabcheck::{hn_filtration, is_framing_cyclic, stability_report, tangent_dimension, Submodule};
use nqv_core::stability::{cone_membership, craw_wye_theta, ConeSpec, StabilityVector};
use nqv_core::walls::{build_arrangement, render_slice, sign_vector, SlicePlane};
use nqv_core::{Error, Result};
use serde_json::{json, Value};

use crate::docs::{root_system, RepDocument, ThetaDocument};

#[derive(Parser, Debug)]
#[command(
    name = "nqv",
    version,
    about = "Chambers, McKay data and framed preprojective modules for Kleinian singularities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Root system data.
    #[command(subcommand)]
    Rootsys(RootsysCmd),
    /// McKay graphs of finite subgroups of SU(2).
    #[command(subcommand)]
    Mckay(MckayCmd),
    /// Explicit stability vectors.
    #[command(subcommand)]
    Theta(ThetaCmd),
    /// Cone membership.
    #[command(subcommand)]
    Cone(ConeCmd),
    /// The hyperplane arrangement on Θ_{nδ}.
    #[command(subcommand)]
    Walls(WallsCmd),
    /// Framed representations.
    #[command(subcommand)]
    Rep(RepCmd),
    /// Stability of framed modules.
    #[command(subcommand)]
    Stab(StabCmd),
}

#[derive(Subcommand, Debug)]
enum RootsysCmd {
    /// Cartan matrices, δ and positive roots.
    Show { dynkin: String },
}

#[derive(Subcommand, Debug)]
enum MckayCmd {
    /// Builds the McKay graph of GROUP and matches it with the affine diagram of TYPE.
    Verify { group: String, dynkin: String },
}

#[derive(Subcommand, Debug)]
enum ThetaCmd {
    /// The explicit member of C_K, K = I ∖ J.
    CrawWye {
        #[arg(long = "type")]
        dynkin: String,
        #[arg(short)]
        n: u32,
        /// Comma-separated vertices, must contain 0.
        #[arg(long = "J")]
        j: String,
    },
}

#[derive(Subcommand, Debug)]
enum ConeCmd {
    /// Prints `true` or `false`.
    Check {
        #[arg(long)]
        theta: PathBuf,
        /// F, C, sigma or sigmaKK.
        #[arg(long)]
        cone: String,
        #[arg(long = "K", default_value = "")]
        k: String,
        #[arg(long = "Kp", default_value = "")]
        k_prime: String,
        /// Closed cone instead of the open cone or relative interior.
        #[arg(long)]
        closed: bool,
    },
}

#[derive(Subcommand, Debug)]
enum WallsCmd {
    /// Lists the hyperplane normals.
    Build {
        #[arg(long = "type")]
        dynkin: String,
        #[arg(short)]
        n: u32,
        /// Also print the sign vector of this θ document.
        #[arg(long)]
        theta: Option<PathBuf>,
    },
    /// Renders a 2-plane slice as SVG and prints the face table.
    Slice {
        #[arg(long = "type")]
        dynkin: String,
        #[arg(short)]
        n: u32,
        /// `b0,b1,..;d0,d1,..;e0,e1,..`; defaults to the θ(δ)+θ1+θ2 = 1 slice for A2.
        #[arg(long)]
        plane: Option<String>,
        #[arg(long)]
        out: PathBuf,
        /// Cones to label, e.g. `C:1,2;sigma:1`; defaults to every C_K and σ_K.
        #[arg(long)]
        labels: Option<String>,
    },
}

#[derive(Args, Debug)]
struct RepArg {
    #[arg(long)]
    rep: PathBuf,
}

#[derive(Args, Debug)]
struct RepThetaArgs {
    #[arg(long)]
    rep: PathBuf,
    #[arg(long)]
    theta: PathBuf,
}

#[derive(Subcommand, Debug)]
enum RepCmd {
    /// Moment-map defect at every vertex.
    Check(RepArg),
    /// The framed module of a union of free orbits (type A).
    OrbitSum {
        #[arg(long = "type")]
        dynkin: String,
        #[arg(short)]
        n: usize,
        /// `u:v` pairs separated by commas, e.g. `1:1,1:2`.
        #[arg(long)]
        points: String,
        /// `Q` or a prime field such as `F3`.
        #[arg(long, default_value = "Q")]
        field: String,
    },
}

#[derive(Subcommand, Debug)]
enum StabCmd {
    /// Semistability, stability and a destabilizing witness.
    Report(RepThetaArgs),
    /// Harder–Narasimhan filtration with Jordan–Hölder factors.
    Hn(RepThetaArgs),
    /// Dimension of the tangent space of the quiver variety at the module.
    Tangent(RepArg),
}

/// Parses and runs one invocation. Returns the process exit code: 0 on
/// success, 1 on a domain error (error name on `err`), 2 on a usage error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}: {e}", e.name());
            1
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn vertex_set(s: &str) -> Result<BTreeSet<usize>> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse().map_err(|_| Error::Parse(format!("bad vertex {x:?}"))))
        .collect()
}

fn field_arg(s: &str) -> Result<FieldSpec> {
    match s {
        "Q" => Ok(FieldSpec::Rational),
        _ => match s.strip_prefix('F').and_then(|p| p.parse().ok()) {
            Some(p) => FieldSpec::prime(p),
            None => Err(Error::Parse(format!("unknown field {s:?}"))),
        },
    }
}

fn points_arg(s: &str) -> Result<Vec<(Rational, Rational)>> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let (u, v) = p.split_once(':').ok_or_else(|| Error::Parse(format!("point {p:?} is not u:v")))?;
            Ok((parse_rational(u)?, parse_rational(v)?))
        })
        .collect()
}

fn pretty<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("documents serialize");
    s.push('\n');
    s
}

/// `[a b; c d]`.
fn matrix_text(m: &RatMatrix) -> String {
    let rows: Vec<String> =
        (0..m.rows).map(|r| m.row(r).iter().map(format_rational).collect::<Vec<_>>().join(" ")).collect();
    format!("[{}]", rows.join("; "))
}

fn dims_json(d: &DimVector) -> Value {
    json!({ "inf": d.r, "v": d.v })
}

fn submodule_json(s: &Submodule) -> Value {
    let basis: Vec<Vec<String>> = s.basis.iter().map(|r| r.iter().map(format_rational).collect()).collect();
    json!({ "dims": dims_json(&s.dims), "basis": basis })
}

fn dispatch(command: Command) -> Result<String> {
    match command {
        Command::Rootsys(RootsysCmd::Show { dynkin }) => rootsys_show(&dynkin),
        Command::Mckay(MckayCmd::Verify { group, dynkin }) => mckay_verify(&group, &dynkin),
        Command::Theta(ThetaCmd::CrawWye { dynkin, n, j }) => {
            let rs = root_system(&dynkin)?;
            let theta = craw_wye_theta(&rs, &vertex_set(&j)?, n)?;
            Ok(pretty(&ThetaDocument::from_theta(&theta, n)))
        }
        Command::Cone(ConeCmd::Check { theta, cone, k, k_prime, closed }) => {
            let doc: ThetaDocument = read_json(&theta)?;
            let (rs, theta) = doc.to_theta()?;
            let spec = match cone.as_str() {
                "F" => ConeSpec::f(doc.n),
                "C" => ConeSpec::chamber(vertex_set(&k)?, doc.n),
                "sigma" => ConeSpec::sigma(vertex_set(&k)?, doc.n),
                "sigmaKK" => ConeSpec::sigma_pair(vertex_set(&k)?, vertex_set(&k_prime)?, doc.n),
                other => return Err(Error::Parse(format!("unknown cone {other:?}"))),
            };
            let spec = if closed { spec.closed() } else { spec };
            Ok(format!("{}\n", cone_membership(&theta, &spec, &rs)?))
        }
        Command::Walls(WallsCmd::Build { dynkin, n, theta }) => {
            let rs = root_system(&dynkin)?;
            let arr = build_arrangement(&rs, n)?;
            let mut out = format!("{} hyperplanes for {} n={n}\n", arr.len(), rs.dynkin());
            for h in arr.hyperplanes() {
                out.push_str(&format!("{h}\n"));
            }
            if let Some(path) = theta {
                let doc: ThetaDocument = read_json(&path)?;
                let (_, theta) = doc.to_theta()?;
                out.push_str(&format!("sign {}\n", sign_vector(&arr, &theta)?));
            }
            Ok(out)
        }
        Command::Walls(WallsCmd::Slice { dynkin, n, plane, out, labels }) => {
            let rs = root_system(&dynkin)?;
            let plane = match plane {
                Some(p) => SlicePlane::parse(&p)?,
                None => SlicePlane::default_for(&rs)?,
            };
            let labels: Vec<ConeSpec> = match labels {
                Some(s) => s
                    .split(';')
                    .filter(|x| !x.trim().is_empty())
                    .map(|x| ConeSpec::parse(x, n))
                    .collect::<Result<_>>()?,
                None => default_labels(rs.vertex_count(), n),
            };
            let render = render_slice(&rs, n, &plane, &labels)?;
            fs::write(&out, &render.svg).map_err(|e| Error::InvalidArgument(format!("{}: {e}", out.display())))?;
            Ok(render.table())
        }
        Command::Rep(RepCmd::Check(RepArg { rep })) => {
            let rep = read_json::<RepDocument>(&rep)?.to_rep()?;
            let mut out = String::new();
            let mut clean = true;
            for (i, d) in moment_defect(&rep)?.iter().enumerate() {
                clean &= d.is_zero();
                out.push_str(&format!("defect {i}: {}\n", matrix_text(d)));
            }
            out.push_str(&format!("defect inf: {}\n", matrix_text(&infinity_defect(&rep)?)));
            out.push_str(&format!("trace identity: {}\n", trace_identity_holds(&rep)?));
            out.push_str(&format!("module: {clean}\n"));
            Ok(out)
        }
        Command::Rep(RepCmd::OrbitSum { dynkin, n, points, field }) => {
            let rs = root_system(&dynkin)?;
            let pts = points_arg(&points)?;
            if pts.len() != n {
                return Err(Error::InvalidArgument(format!("-n {n} with {} points", pts.len())));
            }
            let rep = framed_orbit_sum(&rs, &pts, field_arg(&field)?)?;
            Ok(pretty(&RepDocument::from_rep(&rep, Some(n as u32))))
        }
        Command::Stab(StabCmd::Report(args)) => {
            let (rep, theta) = load_pair(&args)?;
            let report = stability_report(&rep, &theta)?;
            Ok(pretty(&json!({
                "semistable": report.semistable,
                "stable": report.stable,
                "framing_cyclic": is_framing_cyclic(&rep).ok(),
                "witness": report.witness.as_ref().map(submodule_json),
                "witness_pairing": report.witness_pairing.as_ref().map(format_rational),
                "caveat": report.caveat,
            })))
        }
        Command::Stab(StabCmd::Hn(args)) => {
            let (rep, theta) = load_pair(&args)?;
            let hn = hn_filtration(&rep, &theta)?;
            let layers: Vec<Value> = hn
                .layers
                .iter()
                .map(|l| {
                    json!({
                        "dims": dims_json(&l.dims),
                        "slope": format_rational(&l.slope),
                        "jordan_holder": l.jordan_holder.iter().map(dims_json).collect::<Vec<_>>(),
                    })
                })
                .collect();
            Ok(pretty(&json!({ "layers": layers, "steps": hn.steps.iter().map(submodule_json).collect::<Vec<_>>() })))
        }
        Command::Stab(StabCmd::Tangent(RepArg { rep })) => {
            let rep = read_json::<RepDocument>(&rep)?.to_rep()?;
            Ok(format!("{}\n", tangent_dimension(&rep)?))
        }
    }
}

fn load_pair(args: &RepThetaArgs) -> Result<(FramedRep, StabilityVector)> {
    let rep = read_json::<RepDocument>(&args.rep)?.to_rep()?;
    let (_, theta) = read_json::<ThetaDocument>(&args.theta)?.to_theta()?;
    Ok((rep, theta))
}

/// Every `C_K` and every nonempty `σ_K`.
fn default_labels(vertex_count: usize, n: u32) -> Vec<ConeSpec> {
    let subsets: Vec<BTreeSet<usize>> = (0u32..1 << (vertex_count - 1))
        .map(|mask| (1..vertex_count).filter(|i| mask & (1 << (i - 1)) != 0).collect())
        .collect();
    let mut out: Vec<ConeSpec> = subsets.iter().map(|k| ConeSpec::chamber(k.iter().copied(), n)).collect();
    out.extend(subsets.iter().filter(|k| !k.is_empty()).map(|k| ConeSpec::sigma(k.iter().copied(), n)));
    out
}

fn rootsys_show(dynkin: &str) -> Result<String> {
    let rs = root_system(dynkin)?;
    let fmt_row = |r: &[i64]| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
    let mut out = format!("type {}\nrank {}\nCoxeter number {}\n", rs.dynkin(), rs.rank(), rs.h());
    out.push_str(&format!("delta {}\n", fmt_row(rs.delta())));
    out.push_str("affine Cartan\n");
    for row in rs.affine_cartan() {
        out.push_str(&format!("  {}\n", fmt_row(row)));
    }
    out.push_str(&format!("positive roots {}\n", rs.positive_roots().len()));
    for root in rs.positive_roots() {
        out.push_str(&format!("  {}\n", fmt_row(root)));
    }
    Ok(out)
}

fn mckay_verify(group: &str, dynkin: &str) -> Result<String> {
    let spec: GroupSpec = group.parse()?;
    let rs = root_system(dynkin)?;
    let data = build_mckay(spec)?;
    let report = verify_correspondence(&data, &rs)?;
    let dims: Vec<String> = data.irrep_dims.iter().map(ToString::to_string).collect();
    let matching: Vec<String> = report.matching.iter().enumerate().map(|(i, j)| format!("{i}->{j}")).collect();
    let mut out = format!("group {spec} order {}\n", data.order());
    out.push_str(&format!("classes {}\nirrep dims {}\n", data.conjugacy_classes.len(), dims.join(" ")));
    out.push_str(&format!("matching {}\n", matching.join(" ")));
    out.push_str(&format!("adjacency {}\n", report.adjacency_matches));
    out.push_str(&format!("dims {}\n", report.dims_match));
    out.push_str(&format!("order {}\n", report.order_matches));
    if !report.all_pass() {
        return Err(Error::NoIsomorphism);
    }
    Ok(out)
}
