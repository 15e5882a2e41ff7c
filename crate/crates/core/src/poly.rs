//! Dense univariate polynomials over a [`Gf`], lowest coefficient first.
//!
//! A polynomial is a plain `Vec<Elem>` with no trailing zeros; the zero
//! polynomial is the empty vector.

use crate::gf::{Elem, Gf};

pub type Poly = Vec<Elem>;

pub fn trim(mut a: Poly) -> Poly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

/// Degree, with `None` for the zero polynomial.
pub fn degree(a: &[Elem]) -> Option<usize> {
    a.iter().rposition(|c| !c.is_zero())
}

pub fn constant(c: Elem) -> Poly {
    trim(vec![c])
}

/// `x - r`.
pub fn linear(f: &Gf, r: Elem) -> Poly {
    vec![f.neg(r), Elem::ONE]
}

pub fn monomial(i: usize) -> Poly {
    let mut v = vec![Elem::ZERO; i + 1];
    v[i] = Elem::ONE;
    v
}

pub fn add(f: &Gf, a: &[Elem], b: &[Elem]) -> Poly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                f.add(
                    *a.get(i).unwrap_or(&Elem::ZERO),
                    *b.get(i).unwrap_or(&Elem::ZERO),
                )
            })
            .collect(),
    )
}

pub fn neg(f: &Gf, a: &[Elem]) -> Poly {
    a.iter().map(|&c| f.neg(c)).collect()
}

pub fn sub(f: &Gf, a: &[Elem], b: &[Elem]) -> Poly {
    add(f, a, &neg(f, b))
}

pub fn scale(f: &Gf, a: &[Elem], c: Elem) -> Poly {
    trim(a.iter().map(|&x| f.mul(x, c)).collect())
}

pub fn mul(f: &Gf, a: &[Elem], b: &[Elem]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Elem::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(out)
}

pub fn pow(f: &Gf, a: &[Elem], e: u32) -> Poly {
    let mut r = vec![Elem::ONE];
    for _ in 0..e {
        r = mul(f, &r, a);
    }
    r
}

/// Quotient and remainder. Panics on division by the zero polynomial.
pub fn divrem(f: &Gf, a: &[Elem], b: &[Elem]) -> (Poly, Poly) {
    let db = degree(b).expect("polynomial division by zero");
    let lead_inv = f.inv(b[db]).expect("nonzero leading coefficient");
    let mut r = trim(a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![Elem::ZERO; r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = f.mul(r[dr], lead_inv);
        let shift = dr - db;
        q[shift] = c;
        for (i, &bc) in b[..=db].iter().enumerate() {
            r[shift + i] = f.sub(r[shift + i], f.mul(c, bc));
        }
        r = trim(r);
    }
    (trim(q), r)
}

pub fn rem(f: &Gf, a: &[Elem], b: &[Elem]) -> Poly {
    divrem(f, a, b).1
}

pub fn monic(f: &Gf, a: &[Elem]) -> Poly {
    match degree(a) {
        None => Vec::new(),
        Some(d) => scale(f, a, f.inv(a[d]).unwrap()),
    }
}

/// Monic gcd; `gcd(0, 0) = 0`.
pub fn gcd(f: &Gf, a: &[Elem], b: &[Elem]) -> Poly {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = rem(f, &a, &b);
        a = b;
        b = r;
    }
    monic(f, &a)
}

pub fn eval(f: &Gf, a: &[Elem], x: Elem) -> Elem {
    a.iter()
        .rev()
        .fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
}

/// Coefficientwise image under a field map (typically an embedding).
pub fn map(a: &[Elem], m: impl Fn(Elem) -> Elem) -> Poly {
    trim(a.iter().map(|&c| m(c)).collect())
}

/// Multiplicity of `r` as a root of a nonzero `a`.
pub fn root_multiplicity(f: &Gf, a: &[Elem], r: Elem) -> usize {
    let lin = linear(f, r);
    let mut cur = trim(a.to_vec());
    let mut k = 0;
    while !cur.is_empty() {
        let (q, rm) = divrem(f, &cur, &lin);
        if !rm.is_empty() {
            break;
        }
        cur = q;
        k += 1;
    }
    k
}

pub fn to_string(a: &[Elem]) -> String {
    if a.is_empty() {
        return "0".into();
    }
    let mut terms = Vec::new();
    for (i, c) in a.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        terms.push(match i {
            0 => format!("{}", c.0),
            1 if c.0 == 1 => "x".into(),
            1 => format!("{}*x", c.0),
            _ if c.0 == 1 => format!("x^{i}"),
            _ => format!("{}*x^{i}", c.0),
        });
    }
    terms.join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_identity() {
        let f = Gf::new(5, 1).unwrap();
        let a: Poly = [3, 0, 2, 4, 1].iter().map(|&c| Elem(c)).collect();
        let b: Poly = [1, 2, 3].iter().map(|&c| Elem(c)).collect();
        let (q, r) = divrem(&f, &a, &b);
        assert!(degree(&r).map_or(true, |d| d < 2));
        assert_eq!(add(&f, &mul(&f, &q, &b), &r), a);
    }

    #[test]
    fn gcd_and_roots() {
        let f = Gf::new(7, 1).unwrap();
        let p1 = mul(&f, &linear(&f, Elem(2)), &linear(&f, Elem(3)));
        let p2 = mul(&f, &linear(&f, Elem(2)), &linear(&f, Elem(5)));
        assert_eq!(gcd(&f, &p1, &p2), linear(&f, Elem(2)));
        let sq = mul(&f, &p1, &linear(&f, Elem(2)));
        assert_eq!(root_multiplicity(&f, &sq, Elem(2)), 2);
        assert_eq!(root_multiplicity(&f, &sq, Elem(4)), 0);
        assert_eq!(eval(&f, &sq, Elem(3)), Elem(0));
    }

    #[test]
    fn display() {
        let p: Poly = vec![Elem(1), Elem(0), Elem(2)];
        assert_eq!(to_string(&p), "2*x^2 + 1");
        assert_eq!(to_string(&[]), "0");
    }
}
