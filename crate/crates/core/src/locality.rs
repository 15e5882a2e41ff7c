//! Restrictions of surface codes to fibers and sections, and erasure repair
//! inside a fiber by projective Lagrange interpolation.

use serde::{Deserialize, Serialize};

use crate::codes::{build_curve_code, build_prs, Column, LinearCode};
use crate::curve::{ClosedPoint, Divisor};
use crate::error::{Error, Result};
use crate::gf::{Elem, Gf};
use crate::linalg;
use crate::surface::{Fiber, SurfaceVariant};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecoverySet {
    pub target: usize,
    pub helpers: Vec<usize>,
    pub coefficients: Vec<Elem>,
}

#[derive(Clone, Debug)]
pub struct FiberRestriction {
    pub code: LinearCode,
    pub rank: usize,
    /// Rank `a + 1` and row space equal to `PRS(a)`.
    pub equals_prs: bool,
}

#[derive(Clone, Debug)]
pub struct SectionRestriction {
    pub code: LinearCode,
    /// Divisor on the base whose evaluation code contains the restriction.
    pub target: Divisor,
    pub contained: bool,
}

fn surface_columns(code: &LinearCode) -> Result<Vec<(ClosedPoint, Fiber)>> {
    code.columns
        .iter()
        .map(|c| match c {
            Column::Surface(p) => Ok((p.base, p.fiber)),
            _ => Err(Error::Precondition("code is not indexed by surface points".into())),
        })
        .collect()
}

fn base_points(cols: &[(ClosedPoint, Fiber)]) -> Vec<ClosedPoint> {
    let mut v: Vec<ClosedPoint> = cols.iter().map(|c| c.0).collect();
    v.dedup();
    v
}

fn restrict(code: &LinearCode, keep: &[usize]) -> LinearCode {
    let rows = code
        .generator
        .iter()
        .map(|r| keep.iter().map(|&i| r[i]).collect())
        .collect();
    let mut out = LinearCode::from_matrix(&code.field, rows).expect("rectangular");
    out.columns = keep.iter().map(|&i| code.columns[i]).collect();
    out.provenance = code.provenance.clone();
    out
}

fn fiber_columns(cols: &[(ClosedPoint, Fiber)], base: &ClosedPoint) -> Vec<usize> {
    (0..cols.len()).filter(|&i| cols[i].0 == *base).collect()
}

/// The code punctured to the fiber over the `index`-th rational base point.
pub fn restriction_fiber(code: &LinearCode, index: usize) -> Result<FiberRestriction> {
    let cols = surface_columns(code)?;
    let bases = base_points(&cols);
    let base = bases
        .get(index)
        .ok_or_else(|| Error::Precondition(format!("no rational base point with index {index}")))?;
    let keep = fiber_columns(&cols, base);
    let r = restrict(code, &keep);
    let rank = r.k();
    let a = code.provenance.a;
    let equals_prs = rank as i64 == a + 1 && {
        let prs = build_prs(&code.field, a)?;
        linalg::row_space_eq(&code.field, &prs.generator, &r.generator)
    };
    Ok(FiberRestriction { code: r, rank, equals_prs })
}

/// The code punctured to the constant section `u = fiber`, compared with the
/// base-curve code of the divisor that contains it.
pub fn restriction_section(code: &LinearCode, fiber: Fiber) -> Result<SectionRestriction> {
    let cols = surface_columns(code)?;
    let prov = &code.provenance;
    let surface = prov
        .surface
        .as_ref()
        .ok_or_else(|| Error::Precondition("code has no surface provenance".into()))?;
    let keep: Vec<usize> = (0..cols.len()).filter(|&i| cols[i].1 == fiber).collect();
    if keep.len() != base_points(&cols).len() {
        return Err(Error::Precondition(format!("section through {fiber:?} misses some base point")));
    }
    let r = restrict(code, &keep);
    let target = match (&surface.variant, fiber) {
        (SurfaceVariant::Decomposable { delta, .. }, Fiber::Infinity) => prov.beta.minus(&delta.scaled(prov.a)),
        _ => prov.beta.clone(),
    };
    let contained = if target.degree() < 0 {
        r.k() == 0
    } else {
        let cc = build_curve_code(&surface.curve, &target)?;
        linalg::row_space_contains(&code.field, &cc.generator, &r.generator)
    };
    Ok(SectionRestriction { code: r, target, contained })
}

fn monomial(f: &Gf, i: usize, a: usize, u: Fiber) -> Elem {
    match u {
        Fiber::Affine(u) => f.pow(u, i as u64),
        Fiber::Infinity => {
            if i == a {
                Elem::ONE
            } else {
                Elem::ZERO
            }
        }
    }
}

/// `lambda` with `F(target) = sum lambda_j F(helpers_j)` for every binary
/// form `F` of degree `a`.
pub fn lagrange_coefficients(f: &Gf, a: usize, helpers: &[Fiber], target: Fiber) -> Result<Vec<Elem>> {
    if helpers.len() != a + 1 {
        return Err(Error::Precondition(format!("need {} helpers, got {}", a + 1, helpers.len())));
    }
    let m: linalg::Matrix = (0..=a)
        .map(|i| helpers.iter().map(|&h| monomial(f, i, a, h)).collect())
        .collect();
    let rhs: Vec<Elem> = (0..=a).map(|i| monomial(f, i, a, target)).collect();
    if linalg::rank(f, &m) != a + 1 {
        return Err(Error::Precondition("helper points are not distinct".into()));
    }
    linalg::solve(f, &m, &rhs).ok_or_else(|| Error::Precondition("inconsistent interpolation".into()))
}

/// For each column, `floor(q / (a+1))` disjoint helper sets from its fiber.
/// Fails if some fiber restriction has rank below `a + 1`.
pub fn recovery_sets(code: &LinearCode) -> Result<Vec<Vec<RecoverySet>>> {
    let cols = surface_columns(code)?;
    for i in 0..base_points(&cols).len() {
        if restriction_fiber(code, i)?.rank as i64 != code.provenance.a + 1 {
            return Err(Error::RankDeficient(i));
        }
    }
    recovery_sets_unchecked(code)
}

/// Same sets without the rank check. Interpolation stays correct on a
/// rank-deficient fiber since its restriction is still a subcode of `PRS(a)`.
pub fn recovery_sets_unchecked(code: &LinearCode) -> Result<Vec<Vec<RecoverySet>>> {
    let cols = surface_columns(code)?;
    let a = code.provenance.a;
    let q = code.field.order() as i64;
    if a < 0 || a + 1 > q {
        return Err(Error::Precondition(format!("availability is zero for a = {a}, q = {q}")));
    }
    let size = a as usize + 1;
    let f = &code.field;
    let mut out = Vec::with_capacity(cols.len());
    for (target, (base, fib)) in cols.iter().enumerate() {
        // fiber columns are already sorted by encoding, infinity last
        let others: Vec<usize> = fiber_columns(&cols, base)
            .into_iter()
            .filter(|&j| j != target)
            .collect();
        let sets = others
            .chunks_exact(size)
            .map(|helpers| {
                let pts: Vec<Fiber> = helpers.iter().map(|&h| cols[h].1).collect();
                Ok(RecoverySet {
                    target,
                    helpers: helpers.to_vec(),
                    coefficients: lagrange_coefficients(f, a as usize, &pts, *fib)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        out.push(sets);
    }
    Ok(out)
}

/// The value at `rset.target` implied by the helper coordinates of `word`.
pub fn recover(f: &Gf, word: &[Option<Elem>], rset: &RecoverySet) -> Result<Elem> {
    let mut acc = Elem::ZERO;
    for (&h, &c) in rset.helpers.iter().zip(&rset.coefficients) {
        let v = word
            .get(h)
            .copied()
            .flatten()
            .ok_or(Error::ErasedHelper(h))?;
        acc = f.add(acc, f.mul(c, v));
    }
    Ok(acc)
}

pub fn recovery_sets_json(sets: &[Vec<RecoverySet>]) -> String {
    let flat: Vec<&RecoverySet> = sets.iter().flatten().collect();
    serde_json::to_string_pretty(&flat).expect("serializable")
}
