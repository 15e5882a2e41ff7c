//! Finite fields `F_{p^n}` as `F_p[z]/(f)` with log/antilog tables.
//!
//! Every field, including extensions `F_{q^d}` of a base `F_q`, is stored with
//! a single absolute modulus over the prime field. An element is encoded by the
//! integer `sum c_i p^i` of its coefficient sequence; that encoding is the
//! on-disk format of every exported matrix.
//!
//! Fields are desk-scale: at most `2^20` elements. Tables for a given `(p, n)`
//! are built once and shared through a process-wide cache.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// Integer encoding of a field element.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default, serde::Serialize, serde::Deserialize)]
#[serde(transparent)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Tables {
    p: u32,
    degree: u32,
    order: u32,
    modulus: Vec<u32>,
    generator: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// A finite field together with the cardinality `q = p^base_degree` of the
/// ground field its Frobenius `x -> x^q` refers to.
#[derive(Clone)]
pub struct Gf {
    tables: Arc<Tables>,
    base_degree: u32,
}

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.tables, &other.tables)
            || (self.tables.p == other.tables.p && self.tables.modulus == other.tables.modulus)
                && self.base_degree == other.base_degree
    }
}

impl Eq for Gf {}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GF({}^{}) over GF({}^{})",
            self.tables.p, self.tables.degree, self.tables.p, self.base_degree
        )
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn checked_order(p: u64, n: u32) -> Result<u64> {
    let mut order: u64 = 1;
    for _ in 0..n {
        order = order.saturating_mul(p);
        if order > MAX_FIELD_ORDER {
            return Err(Error::FieldTooLarge { p, degree: n as u64 });
        }
    }
    Ok(order)
}

// Dense polynomials over F_p, low coefficient first. Only used to pick the
// modulus and the multiplicative generator.
mod fp {
    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn inv(a: u32, p: u32) -> u32 {
        let (mut r, mut base, mut e) = (1u64, a as u64 % p as u64, p as u64 - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * base % p as u64;
            }
            base = base * base % p as u64;
            e >>= 1;
        }
        r as u32
    }

    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = trim(a.to_vec());
        let dm = m.len() - 1;
        let lead_inv = inv(m[dm], p) as u64;
        while r.len() > dm {
            let shift = r.len() - 1 - dm;
            let c = *r.last().unwrap() as u64 * lead_inv % p as u64;
            for (i, &mc) in m.iter().enumerate() {
                let s = (r[shift + i] as u64 + p as u64 * p as u64 - c * mc as u64 % p as u64) % p as u64;
                r[shift + i] = s as u32;
            }
            r = trim(r);
        }
        r
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        trim(out.into_iter().map(|c| c as u32).collect())
    }

    pub fn mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        rem(&mul(a, b, p), m, p)
    }

    pub fn powmod(a: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
        let mut r = vec![1u32];
        let mut base = rem(a, m, p);
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(&r, &base, m, p);
            }
            base = mulmod(&base, &base, m, p);
            e >>= 1;
        }
        rem(&r, m, p)
    }

    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                let x = *a.get(i).unwrap_or(&0);
                let y = *b.get(i).unwrap_or(&0);
                (x + p - y) % p
            })
            .collect();
        trim(out)
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// Ben-Or test: `f` of degree `n` is irreducible iff
    /// `gcd(x^{p^i} - x, f) = 1` for all `1 <= i <= n/2`.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let n = f.len() - 1;
        if n == 1 {
            return true;
        }
        let x = vec![0, 1];
        let mut xp = x.clone();
        for _ in 0..n / 2 {
            xp = powmod(&xp, p as u64, f, p);
            let g = gcd(f, &sub(&xp, &x, p), p);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }
}

fn digits(mut v: u64, p: u32, n: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(n as usize);
    for _ in 0..n {
        out.push((v % p as u64) as u32);
        v /= p as u64;
    }
    out
}

fn undigits(c: &[u32], p: u32) -> u32 {
    c.iter().rev().fold(0u64, |acc, &d| acc * p as u64 + d as u64) as u32
}

/// Lexicographically least monic irreducible polynomial of degree `n` over
/// `F_p`: the lower coefficients, read as the base-`p` integer
/// `sum c_i p^i`, are minimal.
pub fn least_irreducible(p: u32, n: u32) -> Vec<u32> {
    let count = (p as u64).pow(n);
    for code in 0..count {
        let mut f = digits(code, p, n);
        f.push(1);
        if fp::is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn build_tables(p: u32, n: u32) -> Result<Tables> {
    let order = checked_order(p as u64, n)? as u32;
    let modulus = least_irreducible(p, n);
    let group = (order - 1) as u64;
    let factors = prime_factors(group);
    let mut generator = 0;
    if order == 2 {
        generator = 1;
    } else {
        for g in 1..order {
            let gp = fp::trim(digits(g as u64, p, n));
            let primitive = factors
                .iter()
                .all(|&r| fp::powmod(&gp, group / r, &modulus, p) != vec![1]);
            if primitive {
                generator = g;
                break;
            }
        }
    }
    let gpoly = fp::trim(digits(generator as u64, p, n));
    let mut exp = Vec::with_capacity(group as usize);
    let mut log = vec![0u32; order as usize];
    let mut cur = vec![1u32];
    for i in 0..group as u32 {
        let mut c = cur.clone();
        c.resize(n as usize, 0);
        let code = undigits(&c, p);
        exp.push(code);
        log[code as usize] = i;
        cur = fp::mulmod(&cur, &gpoly, &modulus, p);
    }
    Ok(Tables {
        p,
        degree: n,
        order,
        modulus,
        generator,
        exp,
        log,
    })
}

fn tables(p: u32, n: u32) -> Result<Arc<Tables>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Arc<Tables>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&(p, n)) {
        return Ok(t.clone());
    }
    checked_order(p as u64, n)?;
    let t = Arc::new(build_tables(p, n)?);
    cache.lock().unwrap().entry((p, n)).or_insert(t.clone());
    Ok(t)
}

impl Gf {
    /// `F_{p^m}`, with Frobenius `x -> x^{p^m}` (the identity on the field itself).
    pub fn new(p: u64, m: u32) -> Result<Gf> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m < 1 {
            return Err(Error::ZeroDegree);
        }
        checked_order(p, m)?;
        Ok(Gf {
            tables: tables(p as u32, m)?,
            base_degree: m,
        })
    }

    pub fn characteristic(&self) -> u32 {
        self.tables.p
    }

    /// Absolute degree over the prime field.
    pub fn degree(&self) -> u32 {
        self.tables.degree
    }

    pub fn order(&self) -> u32 {
        self.tables.order
    }

    /// Cardinality `q` of the ground field of the tower.
    pub fn base_order(&self) -> u32 {
        self.tables.p.pow(self.base_degree)
    }

    pub fn base_degree(&self) -> u32 {
        self.base_degree
    }

    /// Degree of this field over its ground field.
    pub fn relative_degree(&self) -> u32 {
        self.tables.degree / self.base_degree
    }

    /// Monic modulus, low coefficient first.
    pub fn modulus(&self) -> &[u32] {
        &self.tables.modulus
    }

    /// The multiplicative generator used for the log tables.
    pub fn primitive(&self) -> Elem {
        Elem(self.tables.generator)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.tables.order).map(Elem)
    }

    pub fn elem(&self, code: u64) -> Result<Elem> {
        if code >= self.tables.order as u64 {
            return Err(Error::BadEncoding(code));
        }
        Ok(Elem(code as u32))
    }

    /// Image of an integer under `Z -> F_p`.
    pub fn from_int(&self, v: i64) -> Elem {
        Elem(v.rem_euclid(self.tables.p as i64) as u32)
    }

    pub fn coefficients(&self, a: Elem) -> Vec<u32> {
        digits(a.0 as u64, self.tables.p, self.tables.degree)
    }

    pub fn from_coefficients(&self, c: &[u32]) -> Elem {
        let p = self.tables.p;
        let mut c: Vec<u32> = c.iter().map(|x| x % p).collect();
        c.resize(self.tables.degree as usize, 0);
        Elem(undigits(&c, p))
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let p = self.tables.p;
        if p == 2 {
            return Elem(a.0 ^ b.0);
        }
        if self.tables.degree == 1 {
            let s = a.0 + b.0;
            return Elem(if s >= p { s - p } else { s });
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0u32, 1u32);
        while x > 0 || y > 0 {
            let d = (x % p + y % p) % p;
            out += d * place;
            place *= p;
            x /= p;
            y /= p;
        }
        Elem(out)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        let p = self.tables.p;
        if p == 2 {
            return a;
        }
        let (mut x, mut out, mut place) = (a.0, 0u32, 1u32);
        while x > 0 {
            let d = (p - x % p) % p;
            out += d * place;
            place *= p;
            x /= p;
        }
        Elem(out)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let t = &self.tables;
        let g = t.order - 1;
        let s = t.log[a.0 as usize] + t.log[b.0 as usize];
        Elem(t.exp[(if s >= g { s - g } else { s }) as usize])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let t = &self.tables;
        let g = t.order - 1;
        Ok(Elem(t.exp[((g - t.log[a.0 as usize]) % g) as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.0 == 0 {
            return Elem::ZERO;
        }
        let t = &self.tables;
        let g = (t.order - 1) as u64;
        let l = (t.log[a.0 as usize] as u64 * (e % g)) % g;
        Elem(t.exp[l as usize])
    }

    /// Discrete logarithm with respect to [`Gf::primitive`].
    pub fn log(&self, a: Elem) -> Option<u32> {
        (a.0 != 0).then(|| self.tables.log[a.0 as usize])
    }

    /// `x -> x^q` for the ground-field order `q`.
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.base_order() as u64)
    }

    pub fn sum<I: IntoIterator<Item = Elem>>(&self, it: I) -> Elem {
        it.into_iter().fold(Elem::ZERO, |acc, x| self.add(acc, x))
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: Elem) -> Option<u32> {
        let l = self.log(a)?;
        let g = self.tables.order - 1;
        Some(g / gcd_u32(g, l))
    }

    /// Orbit `x, x^q, x^{q^2}, ...` under the ground-field Frobenius.
    pub fn frobenius_orbit(&self, x: Elem) -> Vec<Elem> {
        let mut orbit = vec![x];
        let mut y = self.frobenius(x);
        while y != x {
            orbit.push(y);
            y = self.frobenius(y);
        }
        orbit
    }

    /// `F_{q^d}` over the same ground field, together with the embedding of
    /// this field into it. Only defined when `self` is the ground field.
    pub fn extend(&self, d: u32) -> Result<Arc<Extension>> {
        if d < 1 {
            return Err(Error::ZeroDegree);
        }
        if self.relative_degree() != 1 {
            return Err(Error::Precondition(
                "extensions are taken over the ground field of the tower".into(),
            ));
        }
        extension(self.tables.p, self.base_degree, d)
    }

    /// Square root of `a` when it exists (any one of the two).
    pub fn sqrt(&self, a: Elem) -> Option<Elem> {
        if a.0 == 0 {
            return Some(Elem::ZERO);
        }
        let p = self.tables.p;
        if p == 2 {
            return Some(self.pow(a, (self.tables.order / 2) as u64));
        }
        let l = self.tables.log[a.0 as usize];
        (l % 2 == 0).then(|| Elem(self.tables.exp[(l / 2) as usize]))
    }
}

fn gcd_u32(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd_u32(b, a % b)
    }
}

/// `F_{q^d}` with the embedding of its ground field `F_q`.
pub struct Extension {
    pub base: Gf,
    pub field: Gf,
    pub degree: u32,
    embedding: Vec<Elem>,
    restriction: HashMap<Elem, Elem>,
}

impl fmt::Debug for Extension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Extension({:?} of degree {})", self.field, self.degree)
    }
}

fn extension(p: u32, m: u32, d: u32) -> Result<Arc<Extension>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32, u32), Arc<Extension>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(e) = cache.lock().unwrap().get(&(p, m, d)) {
        return Ok(e.clone());
    }
    let base = Gf {
        tables: tables(p, m)?,
        base_degree: m,
    };
    checked_order(p as u64, m * d)?;
    let field = Gf {
        tables: tables(p, m * d)?,
        base_degree: m,
    };
    // Smallest root of the base modulus in the big field: z -> root.
    let base_mod: Vec<Elem> = base
        .modulus()
        .iter()
        .map(|&c| field.from_int(c as i64))
        .collect();
    let root = field
        .elements()
        .find(|&r| {
            base_mod
                .iter()
                .rev()
                .fold(Elem::ZERO, |acc, &c| field.add(field.mul(acc, r), c))
                .is_zero()
        })
        .expect("the base modulus splits in every extension");
    let embedding: Vec<Elem> = base
        .elements()
        .map(|x| {
            base.coefficients(x)
                .iter()
                .rev()
                .fold(Elem::ZERO, |acc, &c| {
                    field.add(field.mul(acc, root), field.from_int(c as i64))
                })
        })
        .collect();
    let restriction = embedding
        .iter()
        .enumerate()
        .map(|(i, &e)| (e, Elem(i as u32)))
        .collect();
    let ext = Arc::new(Extension {
        base,
        field,
        degree: d,
        embedding,
        restriction,
    });
    cache.lock().unwrap().entry((p, m, d)).or_insert(ext.clone());
    Ok(ext)
}

impl Extension {
    pub fn embed(&self, x: Elem) -> Elem {
        self.embedding[x.0 as usize]
    }

    /// Inverse of [`Extension::embed`] on its image.
    pub fn restrict(&self, x: Elem) -> Option<Elem> {
        self.restriction.get(&x).copied()
    }

    pub fn is_in_base(&self, x: Elem) -> bool {
        self.restriction.contains_key(&x)
    }

    /// Trace `F_{q^d} -> F_q`.
    pub fn trace(&self, x: Elem) -> Elem {
        let f = &self.field;
        let mut acc = Elem::ZERO;
        let mut y = x;
        for _ in 0..self.degree {
            acc = f.add(acc, y);
            y = f.frobenius(y);
        }
        self.restrict(acc).expect("trace lands in the ground field")
    }

    /// A fixed `F_q`-basis `1, g, ..., g^{d-1}` of the extension.
    pub fn power_basis(&self) -> Vec<Elem> {
        let g = self.field.primitive();
        (0..self.degree)
            .map(|i| self.field.pow(g, i as u64))
            .collect()
    }

    /// The image of `v` under the embedding `F_{q^a} -> F_{q^b}` (for `a | b`)
    /// that is compatible with the embeddings of the common ground field.
    pub fn embed_into(&self, big: &Extension, v: Elem) -> Elem {
        if self.degree == big.degree {
            return v;
        }
        let root = subfield_root(self, big);
        let bf = &big.field;
        self.field
            .coefficients(v)
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| bf.add(bf.mul(acc, root), bf.from_int(c as i64)))
    }

    /// Monic minimal polynomial of `x` over `F_q`, low coefficient first.
    pub fn minimal_polynomial(&self, x: Elem) -> Vec<Elem> {
        let f = &self.field;
        let mut poly = vec![Elem::ONE];
        for r in f.frobenius_orbit(x) {
            let mut next = vec![Elem::ZERO; poly.len() + 1];
            for (i, &c) in poly.iter().enumerate() {
                next[i + 1] = f.add(next[i + 1], c);
                next[i] = f.sub(next[i], f.mul(c, r));
            }
            poly = next;
        }
        poly.into_iter()
            .map(|c| self.restrict(c).expect("minimal polynomial has ground coefficients"))
            .collect()
    }
}

fn subfield_root(small: &Extension, big: &Extension) -> Elem {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32, u32, u32), Elem>>> = OnceLock::new();
    let key = (
        small.field.characteristic(),
        small.field.base_degree(),
        small.degree,
        big.degree,
    );
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(&r) = cache.lock().unwrap().get(&key) {
        return r;
    }
    let bf = &big.field;
    let image = |r: Elem, v: Elem| {
        small
            .field
            .coefficients(v)
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| bf.add(bf.mul(acc, r), bf.from_int(c as i64)))
    };
    let modulus = small.field.modulus().to_vec();
    let gen = small.base.primitive();
    let root = bf
        .elements()
        .find(|&r| {
            let vanishes = modulus
                .iter()
                .rev()
                .fold(Elem::ZERO, |acc, &c| bf.add(bf.mul(acc, r), bf.from_int(c as i64)))
                .is_zero();
            vanishes && image(r, small.embed(gen)) == big.embed(gen)
        })
        .expect("compatible subfield embedding exists when the degrees divide");
    cache.lock().unwrap().insert(key, root);
    root
}

/// An element bound to its field, with checked arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    field: Gf,
    value: Elem,
}

impl FieldElement {
    pub fn new(field: &Gf, code: u64) -> Result<Self> {
        Ok(FieldElement {
            value: field.elem(code)?,
            field: field.clone(),
        })
    }

    pub fn value(&self) -> Elem {
        self.value
    }

    pub fn field(&self) -> &Gf {
        &self.field
    }

    fn same(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    fn wrap(&self, value: Elem) -> Self {
        FieldElement {
            field: self.field.clone(),
            value,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(self.wrap(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(self.wrap(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(self.wrap(self.field.mul(self.value, other.value)))
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(self.wrap(self.field.inv(self.value)?))
    }

    pub fn pow(&self, e: u64) -> Self {
        self.wrap(self.field.pow(self.value, e))
    }

    pub fn frobenius(&self) -> Self {
        self.wrap(self.field.frobenius(self.value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Exhaustive oracle: f has no monic factor of degree 1..=deg/2.
    fn irreducible_by_trial_division(f: &[u32], p: u32) -> bool {
        let n = f.len() - 1;
        for k in 1..=n / 2 {
            for code in 0..(p as u64).pow(k as u32) {
                let mut g = digits(code, p, k as u32);
                g.push(1);
                if fp::rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn ben_or_agrees_with_trial_division() {
        for (p, n) in [(2u32, 4u32), (2, 5), (3, 3), (5, 2), (5, 3), (7, 2)] {
            for code in 0..(p as u64).pow(n) {
                let mut f = digits(code, p, n);
                f.push(1);
                assert_eq!(
                    fp::is_irreducible(&f, p),
                    irreducible_by_trial_division(&f, p),
                    "p={p} f={f:?}"
                );
            }
        }
    }

    #[test]
    fn f16_modulus_is_least_quartic() {
        let f = Gf::new(2, 4).unwrap();
        // First irreducible in lexicographic order found by exhaustive scan.
        let mut expected = None;
        for code in 0..16u64 {
            let mut g = digits(code, 2, 4);
            g.push(1);
            if irreducible_by_trial_division(&g, 2) {
                expected = Some(g);
                break;
            }
        }
        assert_eq!(f.modulus(), expected.unwrap().as_slice());
        assert_eq!(f.modulus(), &[1, 1, 0, 0, 1]);
    }

    #[test]
    fn prime_field_modulus_convention() {
        assert_eq!(Gf::new(5, 1).unwrap().modulus(), &[0, 1]);
        assert_eq!(Gf::new(2, 1).unwrap().order(), 2);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Gf::new(6, 1).unwrap_err(), Error::NotPrime(6));
        assert_eq!(Gf::new(5, 0).unwrap_err(), Error::ZeroDegree);
        assert!(matches!(Gf::new(2, 21), Err(Error::FieldTooLarge { .. })));
    }

    #[test]
    fn small_inverses_and_orders() {
        let f5 = Gf::new(5, 1).unwrap();
        assert_eq!(f5.inv(Elem(2)).unwrap(), Elem(3));
        assert_eq!(f5.inv(Elem(0)), Err(Error::DivisionByZero));
        let f16 = Gf::new(2, 4).unwrap();
        // Order by brute-force iteration over the enumerated elements.
        let brute = |a: Elem| {
            let mut x = a;
            let mut k = 1;
            while x != Elem::ONE {
                x = f16.mul(x, a);
                k += 1;
            }
            k
        };
        let g = f16.primitive();
        assert_eq!(brute(g), 15);
        for a in f16.elements().skip(1) {
            assert_eq!(f16.multiplicative_order(a), Some(brute(a)));
        }
    }

    #[test]
    fn addition_matches_coefficientwise_sum() {
        let f = Gf::new(5, 2).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                let ca = f.coefficients(a);
                let cb = f.coefficients(b);
                let s: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % 5).collect();
                assert_eq!(f.add(a, b), f.from_coefficients(&s));
                assert_eq!(f.sub(f.add(a, b), b), a);
            }
        }
    }

    #[test]
    fn extension_embedding_is_fixed_field() {
        let f5 = Gf::new(5, 1).unwrap();
        let e1 = f5.extend(1).unwrap();
        for x in f5.elements() {
            assert_eq!(e1.embed(x), x);
        }
        let e2 = f5.extend(2).unwrap();
        assert_eq!(e2.field.order(), 25);
        let fixed: Vec<Elem> = e2
            .field
            .elements()
            .filter(|&x| e2.field.frobenius(x) == x)
            .collect();
        assert_eq!(fixed.len(), 5);
        for x in f5.elements() {
            let y = e2.embed(x);
            assert_eq!(e2.field.pow(y, 5), y);
            assert!(fixed.contains(&y));
        }
    }

    #[test]
    fn f4_into_f64_preserves_orders() {
        let f4 = Gf::new(2, 2).unwrap();
        let ext = f4.extend(3).unwrap();
        assert_eq!(ext.field.order(), 64);
        for x in f4.elements().skip(1) {
            let y = ext.embed(x);
            assert_eq!(f4.multiplicative_order(x), ext.field.multiplicative_order(y));
            for z in f4.elements() {
                assert_eq!(ext.embed(f4.mul(x, z)), ext.field.mul(y, ext.embed(z)));
                assert_eq!(ext.embed(f4.add(x, z)), ext.field.add(y, ext.embed(z)));
            }
        }
        // Generator of F_64 over F_4 has a Frobenius orbit of length 3.
        let g = ext.field.primitive();
        assert_eq!(ext.field.frobenius_orbit(g).len(), 3);
        // Embedding then Frobenius equals Frobenius then embedding.
        for x in f4.elements() {
            assert_eq!(ext.field.frobenius(ext.embed(x)), ext.embed(f4.frobenius(x)));
        }
    }

    #[test]
    fn orbit_lengths_in_f25() {
        let ext = Gf::new(5, 1).unwrap().extend(2).unwrap();
        for x in ext.field.elements() {
            let len = ext.field.frobenius_orbit(x).len();
            assert_eq!(len, if ext.is_in_base(x) { 1 } else { 2 });
        }
    }

    #[test]
    fn minimal_polynomial_and_trace() {
        let ext = Gf::new(5, 1).unwrap().extend(3).unwrap();
        let g = ext.field.primitive();
        let m = ext.minimal_polynomial(g);
        assert_eq!(m.len(), 4);
        let val = m
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| ext.field.add(ext.field.mul(acc, g), ext.embed(c)));
        assert_eq!(val, Elem::ZERO);
        assert_eq!(ext.trace(ext.embed(Elem(2))), Elem(1));
    }

    #[test]
    fn checked_elements_reject_mixed_fields() {
        let f5 = Gf::new(5, 1).unwrap();
        let f7 = Gf::new(7, 1).unwrap();
        let a = FieldElement::new(&f5, 2).unwrap();
        let b = FieldElement::new(&f7, 2).unwrap();
        assert_eq!(a.add(&b), Err(Error::FieldMismatch));
        assert_eq!(a.inv().unwrap().value(), Elem(3));
        assert!(FieldElement::new(&f5, 0).unwrap().inv().is_err());
        assert!(FieldElement::new(&f5, 5).is_err());
    }

    #[test]
    fn sqrt_roundtrip() {
        for f in [Gf::new(5, 2).unwrap(), Gf::new(2, 4).unwrap(), Gf::new(3, 3).unwrap()] {
            for a in f.elements() {
                if let Some(r) = f.sqrt(a) {
                    assert_eq!(f.mul(r, r), a);
                }
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn fields() -> Vec<Gf> {
            vec![
                Gf::new(2, 4).unwrap(),
                Gf::new(5, 2).unwrap(),
                Gf::new(7, 1).unwrap(),
                Gf::new(3, 4).unwrap(),
            ]
        }

        proptest! {
            #[test]
            fn field_axioms(which in 0usize..4, a in 0u32..1_000_000, b in 0u32..1_000_000, c in 0u32..1_000_000) {
                let f = &fields()[which];
                let n = f.order();
                let (a, b, c) = (Elem(a % n), Elem(b % n), Elem(c % n));
                prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                if !a.is_zero() {
                    prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
                }
            }

            #[test]
            fn frobenius_is_additive_and_multiplicative(a in 0u32..625, b in 0u32..625) {
                let ext = Gf::new(5, 1).unwrap().extend(4).unwrap();
                let f = &ext.field;
                let (a, b) = (Elem(a), Elem(b));
                prop_assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
                prop_assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
                let mut x = a;
                for _ in 0..4 { x = f.frobenius(x); }
                prop_assert_eq!(x, a);
            }
        }
    }
}
