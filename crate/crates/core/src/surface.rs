//! Ruled surfaces over a base curve and their numerical lattice `ZS + Zf`.
//!
//! Two models are supported: the decomposable bundle `P(O + O(-delta))`
//! and the elementary transform of `C x P^1` centered at a closed point of
//! degree `d >= 2`. For the latter the section class is `C0 - E`.

use std::fmt;

use crate::curve::{ClosedPoint, Curve, Divisor};
use crate::error::{Error, Result};
use crate::gf::Elem;
use crate::rrspace::{evaluate_at, functions_up_to_degree};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SurfaceVariant {
    Decomposable { delta: Divisor, e: i64 },
    ElmOfProduct { base_point: ClosedPoint, fiber_coord: Elem },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuledSurface {
    pub curve: Curve,
    pub variant: SurfaceVariant,
}

/// `a S + b f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct NumClass {
    pub a: i64,
    pub b: i64,
}

impl NumClass {
    pub fn new(a: i64, b: i64) -> Self {
        NumClass { a, b }
    }

    pub fn section() -> Self {
        NumClass { a: 1, b: 0 }
    }

    pub fn fiber() -> Self {
        NumClass { a: 0, b: 1 }
    }

    pub fn plus(self, o: NumClass) -> Self {
        NumClass::new(self.a + o.a, self.b + o.b)
    }

    pub fn minus(self, o: NumClass) -> Self {
        NumClass::new(self.a - o.a, self.b - o.b)
    }
}

impl fmt::Display for NumClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}S{:+}f", self.a, self.b)
    }
}

/// Fiber coordinate of a rational point of the surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Fiber {
    Affine(Elem),
    Infinity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SurfacePoint {
    pub base: ClosedPoint,
    pub fiber: Fiber,
}

impl fmt::Display for SurfacePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.fiber {
            Fiber::Affine(u) => write!(f, "{} | {}", self.base, u.0),
            Fiber::Infinity => write!(f, "{} | inf", self.base),
        }
    }
}

/// Points of `P^1(F_q)`: affine ones by encoding, then infinity.
pub fn fiber_points(q: u32) -> Vec<Fiber> {
    let mut v: Vec<Fiber> = (0..q).map(|u| Fiber::Affine(Elem(u))).collect();
    v.push(Fiber::Infinity);
    v
}

impl RuledSurface {
    /// `P(O + O(-delta))` with `e = deg delta`.
    pub fn decomposable(curve: &Curve, delta: Divisor) -> Result<Self> {
        let e = delta.degree();
        if e < 0 {
            return Err(Error::InvalidSurface(format!("deg delta = {e} is negative")));
        }
        if delta.meets_rational_points() {
            return Err(Error::InvalidSurface(
                "delta must avoid rational points".into(),
            ));
        }
        Ok(RuledSurface {
            curve: curve.clone(),
            variant: SurfaceVariant::Decomposable { delta, e },
        })
    }

    /// The trivial bundle `C x P^1`.
    pub fn product(curve: &Curve) -> Self {
        Self::decomposable(curve, Divisor::zero()).unwrap()
    }

    /// `elm_x(C x P^1)` for `x` over `base_point` with affine fiber
    /// coordinate `fiber_coord` in `F_{q^d}`.
    pub fn elm(curve: &Curve, base_point: ClosedPoint, fiber_coord: Elem) -> Result<Self> {
        let d = base_point.degree;
        let ext = curve.extension(d)?;
        ext.field.elem(fiber_coord.0 as u64)?;
        let canon = curve.closed_point(d, base_point.coords)?;
        if canon != base_point {
            return Err(Error::InvalidSurface(
                "base point must be given by its canonical representative".into(),
            ));
        }
        if ext.field.frobenius_orbit(fiber_coord).len() < 2 {
            return Err(Error::InvalidSurface(
                "the fiber coordinate of the center must not be rational".into(),
            ));
        }
        Ok(RuledSurface {
            curve: curve.clone(),
            variant: SurfaceVariant::ElmOfProduct {
                base_point,
                fiber_coord,
            },
        })
    }

    pub fn genus(&self) -> i64 {
        self.curve.genus() as i64
    }

    /// `S^2`, which is also the degree of the rank-2 bundle.
    pub fn self_intersection(&self) -> i64 {
        match &self.variant {
            SurfaceVariant::Decomposable { e, .. } => -e,
            SurfaceVariant::ElmOfProduct { base_point, .. } => -(base_point.degree as i64),
        }
    }

    pub fn deg_bundle(&self) -> i64 {
        self.self_intersection()
    }

    /// `e` for decomposable surfaces, `d` for elementary transforms.
    pub fn twist(&self) -> i64 {
        -self.self_intersection()
    }

    pub fn intersect(&self, c1: NumClass, c2: NumClass) -> i64 {
        c1.a * c2.a * self.self_intersection() + c1.a * c2.b + c2.a * c1.b
    }

    pub fn canonical_class(&self) -> NumClass {
        NumClass::new(-2, 2 * self.genus() - 2 + self.self_intersection())
    }

    /// For an elementary transform, `K + 2E - pi^* pi(x)` computed on the
    /// blow-up with basis `(C0, f, E)` and projected to `(C0 - E, f)`.
    pub fn canonical_class_via_blowup(&self) -> Result<NumClass> {
        let SurfaceVariant::ElmOfProduct { base_point, .. } = &self.variant else {
            return Err(Error::WrongVariant("elementary transform expected".into()));
        };
        let d = base_point.degree as i64;
        let (c0, f, e) = (-2, 2 * self.genus() - 2 - d, 2);
        assert_eq!(e, -c0, "class must lie in Z(C0 - E) + Zf");
        Ok(NumClass::new(c0, f))
    }

    pub fn euler_char(&self, a: i64, b: i64) -> i64 {
        (a + 1) * (b + 1 - self.genus()) - self.twist() * a * (a + 1) / 2
    }

    /// `D.(D - K)/2 + 1 - g`.
    pub fn euler_char_riemann_roch(&self, a: i64, b: i64) -> i64 {
        let d = NumClass::new(a, b);
        let k = self.canonical_class();
        let twice = self.intersect(d, d.minus(k));
        assert_eq!(twice % 2, 0, "D.(D-K) is even on a surface");
        twice / 2 + 1 - self.genus()
    }

    /// Rational points, base-major, fiber coordinate ascending with infinity
    /// last. For an elementary transform these are the points of `C x P^1`.
    pub fn rational_points(&self) -> Result<Vec<SurfacePoint>> {
        let base = self.curve.rational_points()?;
        let fibers = fiber_points(self.curve.q() as u32);
        Ok(base
            .iter()
            .flat_map(|&p| fibers.iter().map(move |&u| SurfacePoint { base: p, fiber: u }))
            .collect())
    }

    pub fn segre_decomposable(&self) -> Result<(i64, i64)> {
        match &self.variant {
            SurfaceVariant::Decomposable { e, .. } => Ok((-e, -e)),
            _ => Err(Error::WrongVariant("decomposable surface expected".into())),
        }
    }

    /// Graph-avoidance lower bound for the arithmetic Segre invariant.
    pub fn segre_lower_bound_elm(&self, dmax: u32) -> Result<SegreLowerBound> {
        let SurfaceVariant::ElmOfProduct {
            base_point,
            fiber_coord,
        } = &self.variant
        else {
            return Err(Error::WrongVariant("elementary transform expected".into()));
        };
        let e = base_point.degree as i64;
        let ext = self.curve.extension(base_point.degree)?;
        let mut d_star = dmax as i64;
        let mut examined = 0;
        for k in 0..=dmax {
            let funcs = functions_up_to_degree(&self.curve, k)?;
            examined = funcs.len();
            let hit = funcs.iter().any(|g| {
                evaluate_at(&self.curve, g, &ext, base_point.coords) == Some(*fiber_coord)
            });
            if hit {
                d_star = k as i64 - 1;
                break;
            }
        }
        Ok(SegreLowerBound {
            d_star,
            degree: e,
            bound: e.min(2 * (d_star + 1) - e),
            functions_examined: examined,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SegreLowerBound {
    /// Largest degree such that no function of at most that degree has its
    /// graph through the center.
    pub d_star: i64,
    /// Degree of the center.
    pub degree: i64,
    pub bound: i64,
    pub functions_examined: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SegreUpperBound {
    pub bound: i64,
    /// Largest `t >= 0` satisfying the point-count hypothesis, if any.
    pub t: Option<i64>,
}

/// Upper bound `min(2g, 2(g - t) - 1)` from the number of rational points.
pub fn segre_upper_bounds(g: i64, n: i64, q: i64) -> SegreUpperBound {
    let holds = |t: i64| n > ((t + 1) * (q * q + 1)).max(t * (q * q + q + 1));
    let mut t = None;
    let mut k = 0;
    while holds(k) {
        t = Some(k);
        k += 1;
    }
    let bound = match t {
        Some(t) => (2 * g).min(2 * (g - t) - 1),
        None => 2 * g,
    };
    SegreUpperBound { bound, t }
}

/// Class of the strict transform of a curve `a' S + b' f` with multiplicity
/// `m` at a center of degree `d`, and the change in self-intersection.
pub fn elm_class_map(a: i64, b: i64, m: i64, d: i64, self_int: i64) -> Result<(NumClass, i64)> {
    if m < 0 || m > a {
        return Err(Error::Domain(format!("multiplicity {m} outside [0, {a}]")));
    }
    Ok((NumClass::new(a, b + d * (a - m)), self_int + a * d * (a - 2 * m)))
}

/// Self-intersection after applying the inverse transform, whose center meets
/// the image curve with multiplicity `a' - m`.
pub fn elm_inverse_self_intersection(a: i64, m: i64, d: i64, self_int: i64) -> i64 {
    let m_inv = a - m;
    self_int + a * d * (a - 2 * m_inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Gf;

    fn ell() -> Curve {
        let f = Gf::new(5, 1).unwrap();
        Curve::elliptic(&f, [Elem(0), Elem(0), Elem(0), Elem(0), Elem(1)]).unwrap()
    }

    fn elm_surface() -> RuledSurface {
        let c = ell();
        let p = c.closed_points(2).unwrap()[0];
        let ext = c.extension(2).unwrap();
        let u = ext.field.elements().find(|&u| !ext.is_in_base(u)).unwrap();
        RuledSurface::elm(&c, p, u).unwrap()
    }

    fn decomposable(e: usize) -> RuledSurface {
        let c = ell();
        let delta = if e == 0 {
            Divisor::zero()
        } else if e == 1 {
            Divisor::point(c.closed_points(3).unwrap()[0], 1)
                .minus(&Divisor::point(c.closed_points(2).unwrap()[0], 1))
        } else {
            Divisor::point(c.closed_points(e as u32).unwrap()[0], 1)
        };
        RuledSurface::decomposable(&c, delta).unwrap()
    }

    #[test]
    fn intersection_examples() {
        let s = decomposable(2);
        assert_eq!(s.intersect(NumClass::fiber(), NumClass::fiber()), 0);
        assert_eq!(s.intersect(NumClass::section(), NumClass::fiber()), 1);
        assert_eq!(s.intersect(NumClass::new(1, 2), NumClass::new(1, 3)), 3);
    }

    #[test]
    fn canonical_classes() {
        let p = RuledSurface::product(&ell());
        assert_eq!(p.canonical_class(), NumClass::new(-2, 0));
        let s = decomposable(2);
        let k = s.canonical_class();
        assert_eq!(k, NumClass::new(-2, -2));
        assert_eq!(s.intersect(k, k), 0);
        let e = elm_surface();
        let k = e.canonical_class();
        assert_eq!(e.canonical_class_via_blowup().unwrap(), k);
        assert_eq!(e.intersect(k, k), 8 * (1 - e.genus()));
    }

    #[test]
    fn euler_characteristics() {
        let e = elm_surface();
        assert_eq!(e.euler_char(1, 3), 4);
        let s = decomposable(2);
        assert_eq!(s.euler_char(1, 3), 4);
        assert_eq!(s.euler_char_riemann_roch(1, 3), 4);
        assert_eq!(s.euler_char(0, 5), 5);
    }

    #[test]
    fn point_counts() {
        assert_eq!(decomposable(2).rational_points().unwrap().len(), 36);
        assert_eq!(elm_surface().rational_points().unwrap().len(), 36);
        let l = Curve::projective_line(&Gf::new(2, 2).unwrap());
        assert_eq!(RuledSurface::product(&l).rational_points().unwrap().len(), 25);
    }

    #[test]
    fn elm_class_examples() {
        assert_eq!(elm_class_map(1, 0, 0, 2, 0).unwrap(), (NumClass::new(1, 2), 2));
        assert_eq!(elm_class_map(1, 0, 1, 2, 0).unwrap().1, -2);
        assert_eq!(elm_class_map(0, 3, 0, 2, 0).unwrap(), (NumClass::new(0, 3), 0));
        assert!(elm_class_map(1, 0, 2, 2, 0).is_err());
        assert_eq!(elm_inverse_self_intersection(1, 1, 2, -2), 0);
    }

    #[test]
    fn segre_values() {
        for n in [1usize, 2, 3] {
            assert_eq!(decomposable(n).segre_decomposable().unwrap(), (-(n as i64), -(n as i64)));
        }
        assert_eq!(decomposable(0).segre_decomposable().unwrap(), (0, 0));
        assert!(elm_surface().segre_decomposable().is_err());
        let lb = elm_surface().segre_lower_bound_elm(1).unwrap();
        assert_eq!((lb.d_star, lb.bound, lb.functions_examined), (1, 2, 5));
        assert_eq!(segre_upper_bounds(3, 6, 2), SegreUpperBound { bound: 5, t: Some(0) });
        assert_eq!(segre_upper_bounds(1, 6, 5).bound, 2);
        assert_eq!(segre_upper_bounds(4, 5, 2).t, None);
    }

    #[test]
    fn invalid_surfaces() {
        let c = ell();
        let r = c.rational_points().unwrap()[0];
        assert!(RuledSurface::decomposable(&c, Divisor::point(r, 1)).is_err());
        let p = c.closed_points(2).unwrap()[0];
        assert!(matches!(RuledSurface::elm(&c, p, Elem(3)), Err(Error::InvalidSurface(_))));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn bilinear_and_symmetric(e in 0i64..6, a1 in -20i64..20, b1 in -20i64..20, a2 in -20i64..20,
                                      b2 in -20i64..20, a3 in -20i64..20, b3 in -20i64..20, k in -5i64..5) {
                let mut s = decomposable(0);
                s.variant = SurfaceVariant::Decomposable { delta: Divisor::zero(), e };
                let (x, y, z) = (NumClass::new(a1, b1), NumClass::new(a2, b2), NumClass::new(a3, b3));
                prop_assert_eq!(s.intersect(x, y), s.intersect(y, x));
                prop_assert_eq!(s.intersect(x.plus(y), z), s.intersect(x, z) + s.intersect(y, z));
                prop_assert_eq!(s.intersect(NumClass::new(k * a1, k * b1), y), k * s.intersect(x, y));
            }

            #[test]
            fn euler_two_paths(a in 0i64..10, b in 0i64..10) {
                prop_assert_eq!(elm_surface().euler_char(a, b), elm_surface().euler_char_riemann_roch(a, b));
                prop_assert_eq!(decomposable(2).euler_char(a, b), decomposable(2).euler_char_riemann_roch(a, b));
            }

            #[test]
            fn elm_roundtrip(a in 0i64..6, b in -5i64..5, m in 0i64..6, d in 1i64..5) {
                prop_assume!(m <= a);
                let (img, si) = elm_class_map(a, b, m, d, 2 * a * b).unwrap();
                // the image class evaluated on the surface with S^2 = -d
                let s2 = -d;
                prop_assert_eq!(img.a * img.a * s2 + 2 * img.a * img.b, si);
                prop_assert_eq!(elm_inverse_self_intersection(a, m, d, si), 2 * a * b);
            }
        }
    }
}
