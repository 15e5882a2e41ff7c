//! Generator matrices of evaluation codes on curves, `P^1` and ruled surfaces.
//!
//! Fiber convention: the affine coordinate `u` runs over `F_q` by encoding and
//! the point at infinity comes last; there a section `sum f_i u^i` of degree
//! `a` takes the value of its top coefficient `f_a`.

use std::fmt;

use crate::curve::{ClosedPoint, Curve, Divisor};
use crate::error::{Error, Result};
use crate::gf::{Elem, Gf};
use crate::linalg::{self, Matrix};
use crate::rrspace::{evaluate, rr_basis, taylor_coeffs, CurveFunction};
use crate::surface::{fiber_points, Fiber, RuledSurface, SurfacePoint, SurfaceVariant};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Column {
    Curve(ClosedPoint),
    Line(Fiber),
    Surface(SurfacePoint),
    /// Column read back from a matrix file without a point index.
    Index(usize),
}

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Column::Curve(p) => write!(f, "{p}"),
            Column::Line(Fiber::Affine(u)) => write!(f, "{}", u.0),
            Column::Line(Fiber::Infinity) => write!(f, "inf"),
            Column::Surface(p) => write!(f, "{p}"),
            Column::Index(i) => write!(f, "#{i}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    ProjectiveReedSolomon,
    Curve,
    Decomposable,
    Elm,
    Product,
    Raw,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::ProjectiveReedSolomon => "prs",
            Family::Curve => "curve",
            Family::Decomposable => "decomposable",
            Family::Elm => "elm",
            Family::Product => "product",
            Family::Raw => "raw",
        };
        write!(f, "{s}")
    }
}

/// Parameters recorded by the unisecant builder.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnisecantData {
    pub deg_e: i64,
    pub s_a: i64,
    pub deg_l: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub family: Family,
    /// Section-class coefficient; also the fiber degree of every section.
    pub a: i64,
    pub b: i64,
    pub beta: Divisor,
    /// Genus of the base curve.
    pub genus: i64,
    pub surface: Option<RuledSurface>,
    /// Rank of the multiplicity conditions imposed at the center (elm codes).
    pub condition_rank: Option<usize>,
    pub unisecant: Option<UnisecantData>,
}

impl Provenance {
    fn new(family: Family, a: i64, beta: &Divisor, genus: i64) -> Self {
        Provenance {
            family,
            a,
            b: beta.degree(),
            beta: beta.clone(),
            genus,
            surface: None,
            condition_rank: None,
            unisecant: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    pub field: Gf,
    pub generator: Matrix,
    pub columns: Vec<Column>,
    pub provenance: Provenance,
}

impl LinearCode {
    /// A code from an arbitrary generator matrix; dependent rows are dropped.
    pub fn from_matrix(field: &Gf, generator: Matrix) -> Result<LinearCode> {
        let n = generator.first().map_or(0, |r| r.len());
        if generator.iter().any(|r| r.len() != n) {
            return Err(Error::Parse("rows of unequal length".into()));
        }
        let mut code = LinearCode {
            field: field.clone(),
            generator,
            columns: (0..n).map(Column::Index).collect(),
            provenance: Provenance::new(Family::Raw, 0, &Divisor::zero(), 0),
        };
        code.drop_dependent_rows();
        Ok(code)
    }

    pub fn n(&self) -> usize {
        self.columns.len()
    }

    pub fn k(&self) -> usize {
        self.generator.len()
    }

    pub fn q(&self) -> u64 {
        self.field.order() as u64
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.field, &self.generator)
    }

    pub fn encode(&self, msg: &[Elem]) -> Vec<Elem> {
        let mut w = linalg::vec_mat(&self.field, msg, &self.generator);
        w.resize(self.n(), Elem::ZERO);
        w
    }

    fn drop_dependent_rows(&mut self) {
        let f = &self.field;
        let mut kept: Matrix = Vec::new();
        for row in std::mem::take(&mut self.generator) {
            let mut trial = kept.clone();
            trial.push(row.clone());
            if linalg::rank(f, &trial) == trial.len() {
                kept.push(row);
            }
        }
        self.generator = kept;
    }

    /// `k n q` followed by one line of integer-encoded entries per row.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.k(), self.n(), self.q());
        for row in &self.generator {
            let line: Vec<String> = row.iter().map(|e| e.0.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    /// Parse the [`LinearCode::to_text`] format over `GF(q)` with `q` prime
    /// or a prime power.
    pub fn from_text(text: &str) -> Result<LinearCode> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let head = lines.next().ok_or_else(|| Error::Parse("empty matrix file".into()))?;
        let nums: Vec<u64> = head
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad header token {t:?}"))))
            .collect::<Result<_>>()?;
        let [k, n, q] = nums[..] else {
            return Err(Error::Parse("header must be `k n q`".into()));
        };
        let field = field_of_order(q)?;
        let mut rows = Vec::new();
        for (i, line) in lines.enumerate() {
            let row: Vec<Elem> = line
                .split_whitespace()
                .map(|t| {
                    let v: u64 = t
                        .parse()
                        .map_err(|_| Error::Parse(format!("row {}: bad entry {t:?}", i + 1)))?;
                    field.elem(v)
                })
                .collect::<Result<_>>()?;
            if row.len() as u64 != n {
                return Err(Error::Parse(format!("row {} has {} entries, expected {n}", i + 1, row.len())));
            }
            rows.push(row);
        }
        if rows.len() as u64 != k {
            return Err(Error::Parse(format!("expected {k} rows, found {}", rows.len())));
        }
        let mut code = LinearCode::from_matrix(&field, rows)?;
        code.columns = (0..n as usize).map(Column::Index).collect();
        Ok(code)
    }

    /// One line per column, in column order.
    pub fn points_text(&self) -> String {
        self.columns.iter().map(|c| format!("{c}\n")).collect()
    }

    /// Codes equal up to a change of basis.
    pub fn same_row_space(&self, other: &LinearCode) -> bool {
        self.field == other.field && linalg::row_space_eq(&self.field, &self.generator, &other.generator)
    }
}

/// `GF(q)` for a prime power `q`.
pub fn field_of_order(q: u64) -> Result<Gf> {
    if q < 2 {
        return Err(Error::Parse(format!("{q} is not a field order")));
    }
    let mut p = 2;
    while q % p != 0 {
        p += 1;
    }
    let (mut m, mut r) = (0, q);
    while r % p == 0 {
        r /= p;
        m += 1;
    }
    if r != 1 {
        return Err(Error::Parse(format!("{q} is not a prime power")));
    }
    Gf::new(p, m)
}

/// Homogeneous degree-`a` forms evaluated at `P^1(F_q)`.
pub fn build_prs(field: &Gf, a: i64) -> Result<LinearCode> {
    let q = field.order() as i64;
    if a < 0 || a > q {
        return Err(Error::Precondition(format!("degree {a} outside [0, {q}]")));
    }
    let fibers = fiber_points(q as u32);
    let generator = (0..=a as u64)
        .map(|i| fibers.iter().map(|&u| fiber_monomial(field, i, a as u64, u)).collect())
        .collect();
    Ok(LinearCode {
        field: field.clone(),
        generator,
        columns: fibers.into_iter().map(Column::Line).collect(),
        provenance: Provenance::new(Family::ProjectiveReedSolomon, a, &Divisor::zero(), 0),
    })
}

fn fiber_monomial(f: &Gf, i: u64, a: u64, u: Fiber) -> Elem {
    match u {
        Fiber::Affine(u) => f.pow(u, i),
        Fiber::Infinity => {
            if i == a {
                Elem::ONE
            } else {
                Elem::ZERO
            }
        }
    }
}

fn check_beta(curve: &Curve, beta: &Divisor) -> Result<usize> {
    let n = curve.rational_points()?.len();
    if beta.meets_rational_points() {
        return Err(Error::Precondition("support of beta contains a rational point".into()));
    }
    let b = beta.degree();
    if b < 0 || b >= n as i64 {
        return Err(Error::Precondition(format!("deg beta = {b} outside [0, {n})")));
    }
    Ok(n)
}

fn evaluations(curve: &Curve, basis: &[CurveFunction], pts: &[ClosedPoint]) -> Result<Matrix> {
    basis
        .iter()
        .map(|f| pts.iter().map(|p| evaluate(curve, f, p)).collect())
        .collect()
}

/// Evaluation of `L(beta)` at the rational points of the curve.
pub fn build_curve_code(curve: &Curve, beta: &Divisor) -> Result<LinearCode> {
    check_beta(curve, beta)?;
    let pts = curve.rational_points()?;
    let basis = rr_basis(curve, beta)?;
    let mut code = LinearCode {
        field: curve.field().clone(),
        generator: evaluations(curve, &basis, &pts)?,
        columns: pts.into_iter().map(Column::Curve).collect(),
        provenance: Provenance::new(Family::Curve, 0, beta, curve.genus() as i64),
    };
    code.drop_dependent_rows();
    Ok(code)
}

/// Rows `f(p) u^i` (top coefficient at infinity) for each block.
fn section_rows(
    field: &Gf,
    blocks: &[(u64, Matrix)],
    a: u64,
    pts: &[SurfacePoint],
    base_index: &dyn Fn(&ClosedPoint) -> usize,
) -> Matrix {
    let mut rows = Vec::new();
    for (i, evals) in blocks {
        for ev in evals {
            rows.push(
                pts.iter()
                    .map(|sp| field.mul(ev[base_index(&sp.base)], fiber_monomial(field, *i, a, sp.fiber)))
                    .collect(),
            );
        }
    }
    rows
}

fn surface_code(
    surface: &RuledSurface,
    a: i64,
    beta: &Divisor,
    family: Family,
    generator: Matrix,
) -> Result<LinearCode> {
    let pts = surface.rational_points()?;
    let mut prov = Provenance::new(family, a, beta, surface.genus());
    prov.surface = Some(surface.clone());
    let mut code = LinearCode {
        field: surface.curve.field().clone(),
        generator,
        columns: pts.into_iter().map(Column::Surface).collect(),
        provenance: prov,
    };
    code.drop_dependent_rows();
    if code.k() == 0 {
        return Err(Error::Precondition("empty message space".into()));
    }
    Ok(code)
}

fn base_lookup(base: &[ClosedPoint]) -> impl Fn(&ClosedPoint) -> usize + '_ {
    move |p| base.binary_search(p).expect("rational base point")
}

/// Sections `sum_{i<=a} f_i u^i` with `f_i` in `L(beta - i delta)`.
pub fn build_code_decomposable(surface: &RuledSurface, a: i64, beta: &Divisor) -> Result<LinearCode> {
    let SurfaceVariant::Decomposable { delta, .. } = &surface.variant else {
        return Err(Error::WrongVariant("decomposable surface expected".into()));
    };
    if a < 0 {
        return Err(Error::Precondition("a must be nonnegative".into()));
    }
    let curve = &surface.curve;
    check_beta(curve, beta)?;
    let base = curve.rational_points()?;
    let mut blocks = Vec::new();
    for i in 0..=a {
        let basis = rr_basis(curve, &beta.minus(&delta.scaled(i)))?;
        blocks.push((i as u64, evaluations(curve, &basis, &base)?));
    }
    let pts = surface.rational_points()?;
    let rows = section_rows(curve.field(), &blocks, a as u64, &pts, &base_lookup(&base));
    surface_code(surface, a, beta, Family::Decomposable, rows)
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Sections `sum_{i<=a} f_i u^i`, `f_i` in `L(beta)`, vanishing to order `a`
/// at the center of the elementary transform.
pub fn build_code_elm(surface: &RuledSurface, a: i64, beta: &Divisor) -> Result<LinearCode> {
    let SurfaceVariant::ElmOfProduct {
        base_point,
        fiber_coord,
    } = &surface.variant
    else {
        return Err(Error::WrongVariant("elementary transform expected".into()));
    };
    if a < 0 {
        return Err(Error::Precondition("a must be nonnegative".into()));
    }
    let curve = &surface.curve;
    check_beta(curve, beta)?;
    if beta.multiplicity(base_point) != 0 {
        return Err(Error::Precondition("the center lies over the support of beta".into()));
    }
    let f = curve.field();
    let basis = rr_basis(curve, beta)?;
    let l = basis.len();
    let au = a as usize;
    // Local coefficients of the basis at the center, over F_{q^d}.
    let ext = curve.extension(base_point.degree)?;
    let ef = &ext.field;
    let taus: Vec<Vec<Elem>> = basis
        .iter()
        .map(|g| taylor_coeffs(curve, g, base_point, au))
        .collect::<Result<_>>()?;
    let p = f.characteristic() as u64;
    let mut conditions: Matrix = Vec::new();
    let power_basis = ext.power_basis();
    for j in 0..au {
        for k in 0..au - j {
            // coefficient of t^j w^k, w = u - c
            let coeffs: Vec<Elem> = (0..=au)
                .flat_map(|i| {
                    let taus = &taus;
                    (0..l).map(move |li| (i, li, taus))
                })
                .map(|(i, li, taus)| {
                    if i < k {
                        return Elem::ZERO;
                    }
                    let bin = ef.from_int((binomial(i as u64, k as u64) % p) as i64);
                    let cpow = ef.pow(*fiber_coord, (i - k) as u64);
                    ef.mul(ef.mul(bin, cpow), taus[li][j])
                })
                .collect();
            for &g in &power_basis {
                conditions.push(coeffs.iter().map(|&c| ext.trace(ef.mul(g, c))).collect());
            }
        }
    }
    let ambient = (au + 1) * l;
    let cond_rank = linalg::rank(f, &conditions);
    let kernel = if conditions.is_empty() {
        (0..ambient)
            .map(|i| (0..ambient).map(|j| if i == j { Elem::ONE } else { Elem::ZERO }).collect())
            .collect()
    } else {
        linalg::nullspace(f, &conditions, ambient)
    };
    let base = curve.rational_points()?;
    let evals = evaluations(curve, &basis, &base)?;
    let blocks: Vec<(u64, Matrix)> = (0..=a as u64).map(|i| (i, evals.clone())).collect();
    let pts = surface.rational_points()?;
    let ambient_rows = section_rows(f, &blocks, a as u64, &pts, &base_lookup(&base));
    let rows: Matrix = kernel.iter().map(|v| linalg::vec_mat(f, v, &ambient_rows)).collect();
    let mut code = surface_code(surface, a, beta, Family::Elm, rows)?;
    code.provenance.condition_rank = Some(cond_rank);
    Ok(code)
}

/// `PRS(a) (x) C(beta)` with columns ordered as the points of `C x P^1`.
pub fn build_product_code(curve: &Curve, a: i64, beta: &Divisor) -> Result<LinearCode> {
    let prs = build_prs(curve.field(), a)?;
    let cc = build_curve_code(curve, beta)?;
    let f = curve.field();
    let surface = RuledSurface::product(curve);
    let pts = surface.rational_points()?;
    let base = curve.rational_points()?;
    let q = f.order() as usize;
    let mut rows = Vec::new();
    for pr in &prs.generator {
        for cr in &cc.generator {
            rows.push(
                pts.iter()
                    .map(|sp| {
                        let ui = match sp.fiber {
                            Fiber::Affine(u) => u.0 as usize,
                            Fiber::Infinity => q,
                        };
                        f.mul(pr[ui], cr[base.binary_search(&sp.base).unwrap()])
                    })
                    .collect(),
            );
        }
    }
    let mut code = surface_code(&surface, a, beta, Family::Product, rows)?;
    code.provenance.family = Family::Product;
    Ok(code)
}

/// The `a = 1` code of either surface model, with its unisecant data.
/// `s_a` defaults to the exact value for decomposable surfaces and to the
/// graph-avoidance lower bound (functions of degree at most 1) otherwise.
pub fn build_unisecant(surface: &RuledSurface, beta: &Divisor, s_a: Option<i64>) -> Result<LinearCode> {
    let g = surface.genus();
    let deg_e = surface.deg_bundle();
    let deg_l = beta.degree();
    if deg_e + 2 * (deg_l + 1 - g) <= 0 {
        return Err(Error::Precondition(format!(
            "dimension bound deg E + 2(deg L + 1 - g) = {} is not positive",
            deg_e + 2 * (deg_l + 1 - g)
        )));
    }
    let s_a = match (s_a, &surface.variant) {
        (Some(s), _) => s,
        (None, SurfaceVariant::Decomposable { .. }) => surface.segre_decomposable()?.1,
        (None, SurfaceVariant::ElmOfProduct { .. }) => surface.segre_lower_bound_elm(1)?.bound,
    };
    if (deg_e - s_a).rem_euclid(2) != 0 {
        return Err(Error::Parity(deg_e - s_a));
    }
    let mut code = match surface.variant {
        SurfaceVariant::Decomposable { .. } => build_code_decomposable(surface, 1, beta)?,
        SurfaceVariant::ElmOfProduct { .. } => build_code_elm(surface, 1, beta)?,
    };
    code.provenance.unisecant = Some(UnisecantData { deg_e, s_a, deg_l });
    Ok(code)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ell() -> Curve {
        let f = Gf::new(5, 1).unwrap();
        Curve::elliptic(&f, [Elem(0), Elem(0), Elem(0), Elem(0), Elem(1)]).unwrap()
    }

    #[test]
    fn prs_shape() {
        let f = Gf::new(2, 2).unwrap();
        let c = build_prs(&f, 2).unwrap();
        assert_eq!((c.n(), c.k()), (5, 3));
        assert_eq!(c.generator[2][4], Elem::ONE);
        assert_eq!(c.generator[0][4], Elem::ZERO);
        assert!(build_prs(&f, 5).is_err());
    }

    #[test]
    fn curve_codes() {
        let c = ell();
        let q3 = c.closed_points(3).unwrap()[0];
        let code = build_curve_code(&c, &Divisor::point(q3, 1)).unwrap();
        assert_eq!((code.n(), code.k()), (6, 3));
        let rep = build_curve_code(&c, &Divisor::zero()).unwrap();
        assert_eq!((rep.n(), rep.k()), (6, 1));
        let r = c.rational_points().unwrap()[1];
        assert!(build_curve_code(&c, &Divisor::point(r, 1)).is_err());
        let l = Curve::projective_line(&Gf::new(5, 1).unwrap());
        let p2 = l.closed_points(2).unwrap()[0];
        let lc = build_curve_code(&l, &Divisor::point(p2, 2)).unwrap();
        assert_eq!((lc.n(), lc.k()), (6, 5));
    }

    #[test]
    fn surface_codes_dimensions() {
        let c = ell();
        let delta = Divisor::point(c.closed_points(2).unwrap()[0], 1);
        let beta = Divisor::point(c.closed_points(3).unwrap()[0], 1);
        let s = RuledSurface::decomposable(&c, delta).unwrap();
        let code = build_code_decomposable(&s, 1, &beta).unwrap();
        assert_eq!((code.n(), code.k()), (36, 4));

        let p = c.closed_points(2).unwrap()[0];
        let ext = c.extension(2).unwrap();
        let u = ext.field.elements().find(|&u| !ext.is_in_base(u)).unwrap();
        let e = RuledSurface::elm(&c, p, u).unwrap();
        let code = build_code_elm(&e, 1, &beta).unwrap();
        assert_eq!((code.n(), code.k(), code.provenance.condition_rank), (36, 4, Some(2)));
        let code0 = build_code_elm(&e, 0, &beta).unwrap();
        assert_eq!(code0.k(), 3);

        let prod = build_product_code(&c, 1, &beta).unwrap();
        assert_eq!((prod.n(), prod.k()), (36, 6));
        let triv = build_code_decomposable(&RuledSurface::product(&c), 1, &beta).unwrap();
        assert!(prod.same_row_space(&triv));
    }

    #[test]
    fn text_roundtrip() {
        let f = Gf::new(5, 1).unwrap();
        let c = build_prs(&f, 2).unwrap();
        let back = LinearCode::from_text(&c.to_text()).unwrap();
        assert_eq!(back.generator, c.generator);
        assert!(LinearCode::from_text("2 3 5\n1 2 3\n").is_err());
        assert!(LinearCode::from_text("1 3 6\n1 2 3\n").is_err());
    }

    #[test]
    fn unisecant_preconditions() {
        let c = ell();
        let delta = Divisor::point(c.closed_points(2).unwrap()[0], 1);
        let s = RuledSurface::decomposable(&c, delta).unwrap();
        assert!(matches!(
            build_unisecant(&s, &Divisor::zero(), None),
            Err(Error::Precondition(_))
        ));
        let beta = Divisor::point(c.closed_points(3).unwrap()[0], 1);
        let u = build_unisecant(&s, &beta, None).unwrap();
        assert_eq!(u.provenance.unisecant, Some(UnisecantData { deg_e: -2, s_a: -2, deg_l: 3 }));
    }
}
