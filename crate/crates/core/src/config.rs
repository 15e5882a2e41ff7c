//! JSON experiment configuration and its resolution into curves, surfaces
//! and codes.

use std::path::PathBuf;

use serde::Deserialize;

use crate::analysis::DEFAULT_EXACT_CAP;
use crate::codes::{
    build_code_decomposable, build_code_elm, build_curve_code, build_prs, build_product_code, build_unisecant,
    LinearCode,
};
use crate::curve::{ClosedPoint, Curve, Divisor};
use crate::error::{Error, Result};
use crate::gf::{Elem, Gf};
use crate::surface::{RuledSurface, SurfaceVariant};

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub field: FieldSpec,
    pub curve: CurveSpec,
    #[serde(default)]
    pub surface: Option<SurfaceSpec>,
    pub code: CodeSpec,
    #[serde(default)]
    pub analysis: AnalysisSpec,
    #[serde(default)]
    pub output: OutputSpec,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub p: u64,
    #[serde(default = "one")]
    pub m: u32,
}

fn one() -> u32 {
    1
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CurveSpec {
    ProjectiveLine,
    /// `[a1, a2, a3, a4, a6]` as field encodings.
    Elliptic { coefficients: [u32; 5] },
}

/// A closed point picked by its position in the sorted list of closed points
/// of the given degree.
#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PointSpec {
    pub degree: u32,
    pub index: usize,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub degree: u32,
    pub index: usize,
    #[serde(default = "one_i64")]
    pub mult: i64,
}

fn one_i64() -> i64 {
    1
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SurfaceSpec {
    Product,
    Decomposable {
        delta: Vec<TermSpec>,
    },
    Elm {
        center: PointSpec,
        /// Fiber coordinate in `F_{q^d}`; defaults to the least element
        /// outside `F_q`.
        #[serde(default)]
        fiber: Option<u32>,
    },
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum CodeFamily {
    Prs,
    Curve,
    Product,
    Surface,
    Unisecant,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CodeSpec {
    pub family: CodeFamily,
    #[serde(default)]
    pub a: i64,
    #[serde(default)]
    pub beta: Vec<TermSpec>,
    #[serde(default)]
    pub s_a: Option<i64>,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct AnalysisSpec {
    #[serde(default = "yes")]
    pub exact: bool,
    #[serde(default = "default_cap")]
    pub exact_cap: u64,
    #[serde(default)]
    pub locality: bool,
    #[serde(default = "default_dmax")]
    pub segre_dmax: u32,
}

fn yes() -> bool {
    true
}

fn default_cap() -> u64 {
    DEFAULT_EXACT_CAP
}

fn default_dmax() -> u32 {
    1
}

impl Default for AnalysisSpec {
    fn default() -> Self {
        AnalysisSpec {
            exact: true,
            exact_cap: DEFAULT_EXACT_CAP,
            locality: false,
            segre_dmax: 1,
        }
    }
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default = "default_dir")]
    pub dir: PathBuf,
    #[serde(default = "default_stem")]
    pub stem: String,
}

fn default_dir() -> PathBuf {
    PathBuf::from("out")
}

fn default_stem() -> String {
    "code".into()
}

impl Default for OutputSpec {
    fn default() -> Self {
        OutputSpec {
            dir: default_dir(),
            stem: default_stem(),
        }
    }
}

impl ExperimentConfig {
    /// Parse with `line:column` positions in syntax and schema errors.
    pub fn parse(text: &str) -> Result<ExperimentConfig> {
        serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))
    }
}

fn at(path: &str, e: Error) -> Error {
    Error::Config(format!("{path}: {e}"))
}

/// A configuration turned into concrete objects.
#[derive(Clone, Debug)]
pub struct Resolved {
    pub field: Gf,
    pub curve: Curve,
    pub surface: Option<RuledSurface>,
    pub beta: Divisor,
}

fn resolve_point(curve: &Curve, p: &PointSpec, path: &str) -> Result<ClosedPoint> {
    let pts = curve.closed_points(p.degree).map_err(|e| at(path, e))?;
    pts.get(p.index).copied().ok_or_else(|| {
        Error::Config(format!(
            "{path}.index: {} out of range ({} closed points of degree {})",
            p.index,
            pts.len(),
            p.degree
        ))
    })
}

fn resolve_divisor(curve: &Curve, terms: &[TermSpec], path: &str) -> Result<Divisor> {
    let mut d = Divisor::zero();
    for (i, t) in terms.iter().enumerate() {
        let p = resolve_point(
            curve,
            &PointSpec {
                degree: t.degree,
                index: t.index,
            },
            &format!("{path}[{i}]"),
        )?;
        d.add_term(p, t.mult);
    }
    Ok(d)
}

impl ExperimentConfig {
    pub fn resolve(&self) -> Result<Resolved> {
        let field = Gf::new(self.field.p, self.field.m).map_err(|e| at("field", e))?;
        let curve = match &self.curve {
            CurveSpec::ProjectiveLine => Curve::projective_line(&field),
            CurveSpec::Elliptic { coefficients } => {
                let c = coefficients
                    .iter()
                    .map(|&v| field.elem(v as u64))
                    .collect::<Result<Vec<Elem>>>()
                    .map_err(|e| at("curve.coefficients", e))?;
                Curve::elliptic(&field, [c[0], c[1], c[2], c[3], c[4]]).map_err(|e| at("curve", e))?
            }
        };
        let surface = match &self.surface {
            None => None,
            Some(SurfaceSpec::Product) => Some(RuledSurface::product(&curve)),
            Some(SurfaceSpec::Decomposable { delta }) => {
                let d = resolve_divisor(&curve, delta, "surface.delta")?;
                Some(RuledSurface::decomposable(&curve, d).map_err(|e| at("surface", e))?)
            }
            Some(SurfaceSpec::Elm { center, fiber }) => {
                let p = resolve_point(&curve, center, "surface.center")?;
                let ext = curve.extension(p.degree).map_err(|e| at("surface.center", e))?;
                let u = match fiber {
                    Some(v) => ext.field.elem(*v as u64).map_err(|e| at("surface.fiber", e))?,
                    None => ext
                        .field
                        .elements()
                        .find(|&u| !ext.is_in_base(u))
                        .ok_or_else(|| Error::Config("surface.center: degree-1 center has no fiber coordinate outside F_q".into()))?,
                };
                Some(RuledSurface::elm(&curve, p, u).map_err(|e| at("surface", e))?)
            }
        };
        let beta = resolve_divisor(&curve, &self.code.beta, "code.beta")?;
        Ok(Resolved {
            field,
            curve,
            surface,
            beta,
        })
    }
}

impl Resolved {
    fn surface(&self, family: &str) -> Result<&RuledSurface> {
        self.surface
            .as_ref()
            .ok_or_else(|| Error::Config(format!("code.family: {family} codes need a surface block")))
    }

    pub fn build(&self, code: &CodeSpec) -> Result<LinearCode> {
        let r = match code.family {
            CodeFamily::Prs => build_prs(&self.field, code.a),
            CodeFamily::Curve => build_curve_code(&self.curve, &self.beta),
            CodeFamily::Product => build_product_code(&self.curve, code.a, &self.beta),
            CodeFamily::Surface => {
                let s = self.surface("surface")?;
                match s.variant {
                    SurfaceVariant::Decomposable { .. } => build_code_decomposable(s, code.a, &self.beta),
                    SurfaceVariant::ElmOfProduct { .. } => build_code_elm(s, code.a, &self.beta),
                }
            }
            CodeFamily::Unisecant => build_unisecant(self.surface("unisecant")?, &self.beta, code.s_a),
        };
        r.map_err(|e| at("code", e))
    }
}
