//! Curves over `F_q`: the projective line and nonsingular elliptic curves in
//! long Weierstrass form
//! `y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6`.
//!
//! Closed points are Frobenius orbits of geometric points. A closed point of
//! degree `d` is stored through the orbit element with the smallest
//! coordinate encoding in `F_{q^d}`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{Elem, Extension, Gf};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CurveKind {
    ProjectiveLine,
    Elliptic,
}

/// Coordinates of a geometric point. On the projective line `y` is unused and
/// kept at zero. `Infinity` sorts last.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PointCoords {
    Affine { x: Elem, y: Elem },
    Infinity,
}

impl PointCoords {
    pub fn affine(x: Elem, y: Elem) -> Self {
        PointCoords::Affine { x, y }
    }
}

/// A Galois orbit of geometric points of exact size `degree`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClosedPoint {
    pub degree: u32,
    pub coords: PointCoords,
}

impl ClosedPoint {
    pub fn infinity() -> Self {
        ClosedPoint {
            degree: 1,
            coords: PointCoords::Infinity,
        }
    }

    pub fn rational(x: Elem, y: Elem) -> Self {
        ClosedPoint {
            degree: 1,
            coords: PointCoords::affine(x, y),
        }
    }

    pub fn is_infinity(&self) -> bool {
        self.coords == PointCoords::Infinity
    }
}

impl fmt::Display for ClosedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.coords {
            PointCoords::Infinity => write!(f, "inf"),
            PointCoords::Affine { x, y } => write!(f, "{}:{},{}", self.degree, x.0, y.0),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    field: Gf,
    kind: CurveKind,
    coeffs: [Elem; 5],
}

impl Curve {
    pub fn projective_line(field: &Gf) -> Curve {
        Curve {
            field: field.clone(),
            kind: CurveKind::ProjectiveLine,
            coeffs: [Elem::ZERO; 5],
        }
    }

    /// Elliptic curve from `[a1, a2, a3, a4, a6]`.
    pub fn elliptic(field: &Gf, coeffs: [Elem; 5]) -> Result<Curve> {
        for c in coeffs {
            field.elem(c.0 as u64)?;
        }
        let c = Curve {
            field: field.clone(),
            kind: CurveKind::Elliptic,
            coeffs,
        };
        if c.discriminant().is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(c)
    }

    pub fn field(&self) -> &Gf {
        &self.field
    }

    pub fn kind(&self) -> CurveKind {
        self.kind
    }

    pub fn is_elliptic(&self) -> bool {
        self.kind == CurveKind::Elliptic
    }

    /// `[a1, a2, a3, a4, a6]`; all zero for the projective line.
    pub fn coefficients(&self) -> [Elem; 5] {
        self.coeffs
    }

    pub fn genus(&self) -> u32 {
        match self.kind {
            CurveKind::ProjectiveLine => 0,
            CurveKind::Elliptic => 1,
        }
    }

    pub fn q(&self) -> u64 {
        self.field.order() as u64
    }

    pub fn extension(&self, d: u32) -> Result<Arc<Extension>> {
        self.field.extend(d)
    }

    pub fn discriminant(&self) -> Elem {
        let f = &self.field;
        let [a1, a2, a3, a4, a6] = self.coeffs;
        let n = |v: i64| f.from_int(v);
        let b2 = f.add(f.mul(a1, a1), f.mul(n(4), a2));
        let b4 = f.add(f.mul(n(2), a4), f.mul(a1, a3));
        let b6 = f.add(f.mul(a3, a3), f.mul(n(4), a6));
        let b8 = f.sum([
            f.mul(f.mul(a1, a1), a6),
            f.mul(n(4), f.mul(a2, a6)),
            f.neg(f.mul(a1, f.mul(a3, a4))),
            f.mul(a2, f.mul(a3, a3)),
            f.neg(f.mul(a4, a4)),
        ]);
        f.sum([
            f.neg(f.mul(f.mul(b2, b2), b8)),
            f.neg(f.mul(n(8), f.pow(b4, 3))),
            f.neg(f.mul(n(27), f.mul(b6, b6))),
            f.mul(n(9), f.mul(b2, f.mul(b4, b6))),
        ])
    }

    /// Curve coefficients embedded into an extension field.
    pub fn coefficients_in(&self, ext: &Extension) -> [Elem; 5] {
        self.coeffs.map(|c| ext.embed(c))
    }

    /// Value of `y^2 + a1 x y + a3 y - x^3 - a2 x^2 - a4 x - a6` over `ext`.
    pub fn equation(&self, ext: &Extension, x: Elem, y: Elem) -> Elem {
        let f = &ext.field;
        let [a1, a2, a3, a4, a6] = self.coefficients_in(ext);
        let lhs = f.sum([f.mul(y, y), f.mul(a1, f.mul(x, y)), f.mul(a3, y)]);
        let rhs = f.sum([f.pow(x, 3), f.mul(a2, f.mul(x, x)), f.mul(a4, x), a6]);
        f.sub(lhs, rhs)
    }

    pub fn contains(&self, ext: &Extension, p: PointCoords) -> bool {
        match (self.kind, p) {
            (_, PointCoords::Infinity) => true,
            (CurveKind::ProjectiveLine, PointCoords::Affine { y, .. }) => y.is_zero(),
            (CurveKind::Elliptic, PointCoords::Affine { x, y }) => {
                self.equation(ext, x, y).is_zero()
            }
        }
    }

    /// All geometric points with coordinates in `F_{q^d}`.
    pub fn points_over(&self, d: u32) -> Result<Vec<PointCoords>> {
        let ext = self.extension(d)?;
        let f = &ext.field;
        let mut out = Vec::new();
        match self.kind {
            CurveKind::ProjectiveLine => {
                out.extend(f.elements().map(|x| PointCoords::affine(x, Elem::ZERO)));
            }
            CurveKind::Elliptic => {
                let [a1, a2, a3, a4, a6] = self.coefficients_in(&ext);
                let two = f.from_int(2);
                let artin: Option<HashMap<Elem, Elem>> = (f.characteristic() == 2).then(|| {
                    let mut m = HashMap::new();
                    for z in f.elements() {
                        m.entry(f.add(f.mul(z, z), z)).or_insert(z);
                    }
                    m
                });
                for x in f.elements() {
                    // y^2 + b y = c
                    let b = f.add(f.mul(a1, x), a3);
                    let c = f.sum([f.pow(x, 3), f.mul(a2, f.mul(x, x)), f.mul(a4, x), a6]);
                    let mut ys = Vec::new();
                    if let Some(table) = &artin {
                        if b.is_zero() {
                            ys.push(f.sqrt(c).unwrap());
                        } else if let Some(&z) = table.get(&f.div(c, f.mul(b, b))?) {
                            let y = f.mul(b, z);
                            ys.push(y);
                            ys.push(f.add(y, b));
                        }
                    } else {
                        let disc = f.add(f.mul(b, b), f.mul(f.from_int(4), c));
                        if let Some(r) = f.sqrt(disc) {
                            let half = f.inv(two)?;
                            ys.push(f.mul(f.sub(r, b), half));
                            ys.push(f.mul(f.sub(f.neg(r), b), half));
                        }
                    }
                    ys.sort();
                    ys.dedup();
                    out.extend(ys.into_iter().map(|y| PointCoords::affine(x, y)));
                }
            }
        }
        out.push(PointCoords::Infinity);
        Ok(out)
    }

    pub fn count_points(&self, d: u32) -> Result<u64> {
        Ok(self.points_over(d)?.len() as u64)
    }

    pub fn frobenius(&self, ext: &Extension, p: PointCoords) -> PointCoords {
        match p {
            PointCoords::Infinity => p,
            PointCoords::Affine { x, y } => {
                PointCoords::affine(ext.field.frobenius(x), ext.field.frobenius(y))
            }
        }
    }

    /// Frobenius orbit of a geometric point over `F_{q^d}`.
    pub fn orbit(&self, ext: &Extension, p: PointCoords) -> Vec<PointCoords> {
        let mut out = vec![p];
        let mut cur = self.frobenius(ext, p);
        while cur != p {
            out.push(cur);
            cur = self.frobenius(ext, cur);
        }
        out
    }

    /// Geometric points of a closed point, as elements of `F_{q^deg}`.
    pub fn geometric_points(&self, p: &ClosedPoint) -> Result<Vec<PointCoords>> {
        let ext = self.extension(p.degree)?;
        Ok(self.orbit(&ext, p.coords))
    }

    /// Closed point through a geometric point given over `F_{q^d}`.
    pub fn closed_point(&self, d: u32, coords: PointCoords) -> Result<ClosedPoint> {
        let ext = self.extension(d)?;
        if let PointCoords::Affine { x, y } = coords {
            ext.field.elem(x.0 as u64)?;
            ext.field.elem(y.0 as u64)?;
        }
        if !self.contains(&ext, coords) {
            return Err(Error::NotOnCurve);
        }
        let orbit = self.orbit(&ext, coords);
        if orbit.len() != d as usize {
            return Err(Error::InvalidPoint(format!(
                "orbit has size {} instead of {d}",
                orbit.len()
            )));
        }
        Ok(ClosedPoint {
            degree: d,
            coords: *orbit.iter().min().unwrap(),
        })
    }

    /// Closed points of exact degree `d`, ordered by representative.
    pub fn closed_points(&self, d: u32) -> Result<Vec<ClosedPoint>> {
        if d < 1 {
            return Err(Error::ZeroDegree);
        }
        let ext = self.extension(d).map_err(|e| match e {
            Error::FieldTooLarge { .. } => {
                Error::CapExceeded(format!("points of degree {d} need a field above 2^20"))
            }
            e => e,
        })?;
        let mut reps = Vec::new();
        for p in self.points_over(d)? {
            let orbit = self.orbit(&ext, p);
            if orbit.len() == d as usize && orbit.iter().all(|o| *o >= p) {
                reps.push(ClosedPoint {
                    degree: d,
                    coords: p,
                });
            }
        }
        reps.sort();
        Ok(reps)
    }

    pub fn rational_points(&self) -> Result<Vec<ClosedPoint>> {
        let pts = self.closed_points(1)?;
        if self.is_elliptic() {
            let q = self.q() as i64;
            let t = pts.len() as i64 - q - 1;
            assert!(t * t <= 4 * q, "Hasse bound violated");
        }
        Ok(pts)
    }

    pub fn class_number(&self) -> Result<u64> {
        Ok(match self.kind {
            CurveKind::ProjectiveLine => 1,
            CurveKind::Elliptic => self.rational_points()?.len() as u64,
        })
    }

    fn require_elliptic(&self) -> Result<()> {
        if !self.is_elliptic() {
            return Err(Error::NotElliptic);
        }
        Ok(())
    }

    pub fn negate(&self, ext: &Extension, p: PointCoords) -> Result<PointCoords> {
        self.require_elliptic()?;
        if !self.contains(ext, p) {
            return Err(Error::NotOnCurve);
        }
        let f = &ext.field;
        let [a1, _, a3, _, _] = self.coefficients_in(ext);
        Ok(match p {
            PointCoords::Infinity => p,
            PointCoords::Affine { x, y } => {
                PointCoords::affine(x, f.sub(f.neg(y), f.add(f.mul(a1, x), a3)))
            }
        })
    }

    /// Chord-tangent addition over `ext`.
    pub fn add_points(&self, ext: &Extension, p: PointCoords, q: PointCoords) -> Result<PointCoords> {
        self.require_elliptic()?;
        if !self.contains(ext, p) || !self.contains(ext, q) {
            return Err(Error::NotOnCurve);
        }
        let (x1, y1, x2, y2) = match (p, q) {
            (PointCoords::Infinity, _) => return Ok(q),
            (_, PointCoords::Infinity) => return Ok(p),
            (PointCoords::Affine { x: x1, y: y1 }, PointCoords::Affine { x: x2, y: y2 }) => {
                (x1, y1, x2, y2)
            }
        };
        let f = &ext.field;
        let [a1, a2, a3, a4, a6] = self.coefficients_in(ext);
        if x1 == x2 && f.sum([y1, y2, f.mul(a1, x2), a3]).is_zero() {
            return Ok(PointCoords::Infinity);
        }
        let (lambda, nu) = if x1 != x2 {
            let den = f.inv(f.sub(x2, x1))?;
            (
                f.mul(f.sub(y2, y1), den),
                f.mul(f.sub(f.mul(y1, x2), f.mul(y2, x1)), den),
            )
        } else {
            let den = f.inv(f.sum([f.mul(f.from_int(2), y1), f.mul(a1, x1), a3]))?;
            let num_l = f.sum([
                f.mul(f.from_int(3), f.mul(x1, x1)),
                f.mul(f.from_int(2), f.mul(a2, x1)),
                a4,
                f.neg(f.mul(a1, y1)),
            ]);
            let num_n = f.sum([
                f.neg(f.pow(x1, 3)),
                f.mul(a4, x1),
                f.mul(f.from_int(2), a6),
                f.neg(f.mul(a3, y1)),
            ]);
            (f.mul(num_l, den), f.mul(num_n, den))
        };
        let x3 = f.sum([f.mul(lambda, lambda), f.mul(a1, lambda), f.neg(a2), f.neg(x1), f.neg(x2)]);
        let y3 = f.sub(f.neg(f.mul(f.add(lambda, a1), x3)), f.add(nu, a3));
        Ok(PointCoords::affine(x3, y3))
    }

    pub fn scalar_mul(&self, ext: &Extension, p: PointCoords, n: i64) -> Result<PointCoords> {
        let base = if n < 0 { self.negate(ext, p)? } else { p };
        let mut acc = PointCoords::Infinity;
        let mut dbl = base;
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_points(ext, acc, dbl)?;
            }
            dbl = self.add_points(ext, dbl, dbl)?;
            k >>= 1;
        }
        Ok(acc)
    }

    /// The rational point `sum n_P (sum of the orbit of P)`, i.e. the group
    /// element attached to `D - deg(D) O`.
    pub fn divisor_class_sum(&self, d: &Divisor) -> Result<PointCoords> {
        self.require_elliptic()?;
        let base = self.extension(1)?;
        let mut acc = PointCoords::Infinity;
        for (p, &n) in d.iter() {
            let ext = self.extension(p.degree)?;
            let mut s = PointCoords::Infinity;
            for g in self.orbit(&ext, p.coords) {
                s = self.add_points(&ext, s, g)?;
            }
            let s = match s {
                PointCoords::Infinity => s,
                PointCoords::Affine { x, y } => PointCoords::affine(
                    ext.restrict(x).expect("orbit sum is rational"),
                    ext.restrict(y).expect("orbit sum is rational"),
                ),
            };
            let s = self.scalar_mul(&base, s, n)?;
            acc = self.add_points(&base, acc, s)?;
        }
        Ok(acc)
    }
}

/// Finite formal sum of closed points with nonzero multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Divisor {
    terms: BTreeMap<ClosedPoint, i64>,
}

impl Divisor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn point(p: ClosedPoint, n: i64) -> Self {
        let mut d = Self::default();
        d.add_term(p, n);
        d
    }

    pub fn from_terms<I: IntoIterator<Item = (ClosedPoint, i64)>>(it: I) -> Self {
        let mut d = Self::default();
        for (p, n) in it {
            d.add_term(p, n);
        }
        d
    }

    pub fn add_term(&mut self, p: ClosedPoint, n: i64) {
        let e = self.terms.entry(p).or_insert(0);
        *e += n;
        if *e == 0 {
            self.terms.remove(&p);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ClosedPoint, &i64)> {
        self.terms.iter()
    }

    pub fn multiplicity(&self, p: &ClosedPoint) -> i64 {
        self.terms.get(p).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> i64 {
        self.terms.iter().map(|(p, &n)| n * p.degree as i64).sum()
    }

    pub fn support(&self) -> Vec<ClosedPoint> {
        self.terms.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_effective(&self) -> bool {
        self.terms.values().all(|&n| n > 0)
    }

    pub fn plus(&self, other: &Divisor) -> Divisor {
        let mut d = self.clone();
        for (p, &n) in other.iter() {
            d.add_term(*p, n);
        }
        d
    }

    pub fn minus(&self, other: &Divisor) -> Divisor {
        self.plus(&other.scaled(-1))
    }

    pub fn scaled(&self, k: i64) -> Divisor {
        Divisor::from_terms(self.terms.iter().map(|(p, &n)| (*p, n * k)))
    }

    pub fn positive_part(&self) -> Divisor {
        Divisor::from_terms(self.terms.iter().filter(|(_, &n)| n > 0).map(|(p, &n)| (*p, n)))
    }

    pub fn negative_part(&self) -> Divisor {
        Divisor::from_terms(self.terms.iter().filter(|(_, &n)| n < 0).map(|(p, &n)| (*p, -n)))
    }

    /// Whether some rational point lies in the support.
    pub fn meets_rational_points(&self) -> bool {
        self.terms.keys().any(|p| p.degree == 1)
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(p, n)| format!("{n}*[{p}]")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(a6: u32, a4: u32) -> Curve {
        let f = Gf::new(5, 1).unwrap();
        Curve::elliptic(&f, [Elem(0), Elem(0), Elem(0), Elem(a4), Elem(a6)]).unwrap()
    }

    // Naive count: every (x, y) pair over F_{q^d} plus the point at infinity.
    fn brute_count(c: &Curve, d: u32) -> u64 {
        let ext = c.extension(d).unwrap();
        let mut n = 1;
        for x in ext.field.elements() {
            for y in ext.field.elements() {
                if c.equation(&ext, x, y).is_zero() {
                    n += 1;
                }
            }
        }
        n
    }

    #[test]
    fn discriminant_and_singular() {
        assert_eq!(e(1, 0).discriminant(), Elem(3));
        let f = Gf::new(5, 1).unwrap();
        assert_eq!(
            Curve::elliptic(&f, [Elem(0); 5]).unwrap_err(),
            Error::SingularCurve
        );
    }

    #[test]
    fn rational_points_small() {
        let c = e(1, 0);
        let pts = c.rational_points().unwrap();
        assert_eq!(pts.len(), 6);
        let affine: Vec<(u32, u32)> = pts
            .iter()
            .filter_map(|p| match p.coords {
                PointCoords::Affine { x, y } => Some((x.0, y.0)),
                _ => None,
            })
            .collect();
        assert_eq!(affine, vec![(0, 1), (0, 4), (2, 2), (2, 3), (4, 0)]);
        assert_eq!(e(0, 1).rational_points().unwrap().len(), 4);
        let line = Curve::projective_line(&Gf::new(5, 1).unwrap());
        assert_eq!(line.rational_points().unwrap().len(), 6);
        assert_eq!(line.genus(), 0);
    }

    #[test]
    fn counts_match_brute_force() {
        let c = e(1, 0);
        for d in 1..=3 {
            assert_eq!(c.count_points(d).unwrap(), brute_count(&c, d));
        }
        assert_eq!(c.count_points(2).unwrap(), 36);
        let f4 = Gf::new(2, 2).unwrap();
        let c2 = Curve::elliptic(&f4, [Elem(1), Elem(0), Elem(0), Elem(0), Elem(1)]).unwrap();
        for d in 1..=2 {
            assert_eq!(c2.count_points(d).unwrap(), brute_count(&c2, d));
        }
    }

    #[test]
    fn closed_point_counts() {
        let c = e(1, 0);
        assert_eq!(c.closed_points(2).unwrap().len(), 15);
        assert_eq!(c.closed_points(3).unwrap().len(), 40);
        let line = Curve::projective_line(&Gf::new(5, 1).unwrap());
        assert_eq!(line.closed_points(2).unwrap().len(), 10);
        for curve in [c, line] {
            for d in 1..=4u32 {
                let total: u64 = (1..=d)
                    .filter(|k| d % k == 0)
                    .map(|k| k as u64 * curve.closed_points(k).unwrap().len() as u64)
                    .sum();
                assert_eq!(total, curve.count_points(d).unwrap());
            }
        }
    }

    #[test]
    fn group_law_basics() {
        let c = e(1, 0);
        let ext = c.extension(1).unwrap();
        let p = PointCoords::affine(Elem(0), Elem(1));
        assert_eq!(c.add_points(&ext, p, PointCoords::Infinity).unwrap(), p);
        let np = c.negate(&ext, p).unwrap();
        assert_eq!(c.add_points(&ext, p, np).unwrap(), PointCoords::Infinity);
        let dbl = c.add_points(&ext, p, p).unwrap();
        assert!(c.contains(&ext, dbl));
        // (0,1) has order 3 on this curve: the tangent there is y = 1, an inflection.
        assert_eq!(c.scalar_mul(&ext, p, 3).unwrap(), PointCoords::Infinity);
        assert!(c.add_points(&ext, p, PointCoords::affine(Elem(1), Elem(1))).is_err());
        assert_eq!(c.class_number().unwrap(), 6);
        assert_eq!(e(0, 1).class_number().unwrap(), 4);
    }

    #[test]
    fn principal_divisor_sums_to_zero() {
        // div(x) = (0,1) + (0,4) - 2 O.
        let c = e(1, 0);
        let d = Divisor::from_terms([
            (ClosedPoint::rational(Elem(0), Elem(1)), 1),
            (ClosedPoint::rational(Elem(0), Elem(4)), 1),
            (ClosedPoint::infinity(), -2),
        ]);
        assert_eq!(c.divisor_class_sum(&d).unwrap(), PointCoords::Infinity);
        // A degree-2 point is the divisor of zeros of its minimal polynomial
        // in x only when it is stable under negation; the class sum of any
        // closed point plus its negative orbit is zero.
        let q = c.closed_points(2).unwrap()[0];
        let ext = c.extension(2).unwrap();
        let neg = c.closed_point(2, c.negate(&ext, q.coords).unwrap()).unwrap();
        let d2 = Divisor::from_terms([(q, 1), (neg, 1), (ClosedPoint::infinity(), -4)]);
        assert_eq!(c.divisor_class_sum(&d2).unwrap(), PointCoords::Infinity);
    }

    #[test]
    fn closed_point_validation() {
        let c = e(1, 0);
        assert!(matches!(
            c.closed_point(2, PointCoords::affine(Elem(0), Elem(1))),
            Err(Error::InvalidPoint(_))
        ));
        assert_eq!(
            c.closed_point(1, PointCoords::affine(Elem(1), Elem(1))),
            Err(Error::NotOnCurve)
        );
    }

    #[test]
    fn divisor_arithmetic() {
        let p = ClosedPoint::infinity();
        let c = e(1, 0);
        let q = c.closed_points(3).unwrap()[0];
        let d = Divisor::from_terms([(p, 2), (q, -1)]);
        assert_eq!(d.degree(), -1);
        assert_eq!(d.positive_part().degree(), 2);
        assert_eq!(d.negative_part().degree(), 3);
        assert!(d.minus(&d).is_zero());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn associativity_over_f25(i in 0usize..36, j in 0usize..36, k in 0usize..36) {
                let c = e(1, 0);
                let ext = c.extension(2).unwrap();
                let pts = c.points_over(2).unwrap();
                let (p, q, r) = (pts[i], pts[j], pts[k]);
                let lhs = c.add_points(&ext, c.add_points(&ext, p, q).unwrap(), r).unwrap();
                let rhs = c.add_points(&ext, p, c.add_points(&ext, q, r).unwrap()).unwrap();
                prop_assert_eq!(lhs, rhs);
                prop_assert_eq!(c.add_points(&ext, p, q).unwrap(), c.add_points(&ext, q, p).unwrap());
            }
        }
    }
}
