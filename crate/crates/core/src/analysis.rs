//! Parameter bounds for the surface code families, exhaustive code
//! parameters and the classical bound checks.

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::codes::{Family, LinearCode};
use crate::surface::SurfaceVariant;
use crate::error::{Error, Result};
use crate::gf::Elem;

pub const DEFAULT_EXACT_CAP: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundFamily {
    /// Elementary transform of `C x P^1` at a center of degree `d`.
    Elm,
    /// `P(O + O(-delta))`, negative section of self-intersection `-e`.
    Decomposable,
    Unisecant,
    Prs,
    Curve,
    Product,
}

impl fmt::Display for BoundFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BoundFamily::Elm => "elm",
            BoundFamily::Decomposable => "decomposable",
            BoundFamily::Unisecant => "unisecant",
            BoundFamily::Prs => "prs",
            BoundFamily::Curve => "curve",
            BoundFamily::Product => "product",
        };
        write!(f, "{s}")
    }
}

/// Numerical data shared by the two surface families. `twist` is the
/// center degree `d` for [`BoundFamily::Elm`] and `e` for
/// [`BoundFamily::Decomposable`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyParams {
    pub q: i64,
    pub n_rational: i64,
    pub g: i64,
    pub twist: i64,
    pub a: i64,
    pub b: i64,
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "q={} N={} g={} t={} a={} b={}",
            self.q, self.n_rational, self.g, self.twist, self.a, self.b
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub family: BoundFamily,
    pub n: i64,
    pub k_lower: i64,
    pub d_lower: i64,
    pub flags: Vec<(String, bool)>,
    /// Which branch of the minimum is attained, and where.
    pub achieved_by: String,
}

impl BoundReport {
    pub fn valid(&self) -> bool {
        self.flags.iter().all(|(_, ok)| *ok)
    }
}

fn flag(name: &str, ok: bool) -> (String, bool) {
    (name.to_string(), ok)
}

fn min_branch(options: &[(i64, &str)]) -> (i64, String) {
    let (v, s) = options.iter().min_by_key(|(v, _)| *v).unwrap();
    (*v, s.to_string())
}

pub fn bound_famcodes1(p: FamilyParams) -> BoundReport {
    let FamilyParams { q, n_rational: nn, g, twist: d, a, b } = p;
    let m = if d > 0 { a.min(b.div_euclid(d)) } else { a };
    let (d_lower, achieved_by) = min_branch(&[
        ((q + 1) * (nn - b), "no covering curve (n = 0)"),
        ((q + 1 - m) * (nn - b + d * m), "n = m covering curves"),
    ]);
    BoundReport {
        family: BoundFamily::Elm,
        n: (q + 1) * nn,
        k_lower: (a + 1) * (b + 1 - g) - d * a * (a + 1) / 2,
        d_lower,
        flags: vec![
            flag("center degree >= 1", d >= 1),
            flag("a >= 0", a >= 0),
            flag("0 <= b < N", 0 <= b && b < nn),
            flag("0 <= m < q+1", 0 <= m && m < q + 1),
            flag("ad < 2(b+1-g)", a * d < 2 * (b + 1 - g)),
        ],
        achieved_by,
    }
}

pub fn bound_famcodes2(p: FamilyParams) -> BoundReport {
    let FamilyParams { q, n_rational: nn, g, twist: e, a, b } = p;
    let (d_lower, achieved_by) = if a == 0 {
        ((q + 1) * (nn - b), "a = 0".to_string())
    } else if e > 0 && b < a * e {
        let j = b / e;
        min_branch(&[
            ((q - j) * (nn - b + j * e), "b < ae, t = b - floor(b/e) e"),
            (q * (nn - b), "b < ae, t = b"),
        ])
    } else {
        min_branch(&[
            ((q + 1 - a) * (nn - b + (a - 1) * e), "b >= ae, t = b - (a-1) e"),
            (q * (nn - b), "b >= ae, t = b"),
        ])
    };
    BoundReport {
        family: BoundFamily::Decomposable,
        n: (q + 1) * nn,
        k_lower: (a + 1) * (b + 1 - g) - e * a * (a + 1) / 2,
        d_lower,
        flags: vec![
            flag("e > 0", e > 0),
            flag("0 <= a <= q", 0 <= a && a <= q),
            flag("0 <= b < N", 0 <= b && b < nn),
            flag("ae < 2(b+1-g)", a * e < 2 * (b + 1 - g)),
        ],
        achieved_by,
    }
}

pub fn bound_unisecant(q: i64, nn: i64, g: i64, deg_e: i64, s_a: i64, deg_l: i64) -> Result<BoundReport> {
    let gap = deg_e - s_a;
    if gap.rem_euclid(2) != 0 {
        return Err(Error::Parity(gap));
    }
    let k_lower = deg_e + 2 * (deg_l + 1 - g);
    let u_max = gap / 2 + deg_l;
    let d_lower = q * (nn - u_max);
    Ok(BoundReport {
        family: BoundFamily::Unisecant,
        n: (q + 1) * nn,
        k_lower,
        d_lower,
        flags: vec![flag("k bound positive", k_lower > 0), flag("d bound positive", d_lower > 0)],
        achieved_by: format!("{u_max} fibers split off"),
    })
}

/// `[q+1, a+1, q+1-a]`, `[N, b+1-g, N-b]` and their tensor product.
pub fn bound_classical(family: BoundFamily, q: i64, nn: i64, g: i64, a: i64, b: i64) -> BoundReport {
    let (n, k_lower, d_lower, flags) = match family {
        BoundFamily::Prs => (q + 1, a + 1, q + 1 - a, vec![flag("0 <= a <= q", 0 <= a && a <= q)]),
        BoundFamily::Curve => (nn, b + 1 - g, nn - b, vec![flag("2g-2 < b < N", 2 * g - 2 < b && b < nn)]),
        _ => (
            (q + 1) * nn,
            (a + 1) * (b + 1 - g),
            (q + 1 - a) * (nn - b),
            vec![flag("0 <= a <= q", 0 <= a && a <= q), flag("2g-2 < b < N", 2 * g - 2 < b && b < nn)],
        ),
    };
    BoundReport {
        family,
        n,
        k_lower,
        d_lower,
        flags,
        achieved_by: "MDS / Goppa bound".into(),
    }
}

/// The bounds that apply to a code built from a known construction.
pub fn code_bounds(code: &LinearCode) -> Result<Vec<BoundReport>> {
    let prov = &code.provenance;
    let q = code.q() as i64;
    let (a, b) = (prov.a, prov.b);
    let surface_params = |twist| -> Result<FamilyParams> {
        let s = prov.surface.as_ref().expect("surface code");
        Ok(FamilyParams {
            q,
            n_rational: s.curve.rational_points()?.len() as i64,
            g: s.genus(),
            twist,
            a,
            b,
        })
    };
    let mut out = Vec::new();
    match prov.family {
        Family::Raw => {}
        Family::ProjectiveReedSolomon => out.push(bound_classical(BoundFamily::Prs, q, 0, 0, a, 0)),
        Family::Curve => out.push(bound_classical(BoundFamily::Curve, q, code.n() as i64, prov.genus, 0, b)),
        Family::Product => {
            let p = surface_params(0)?;
            out.push(bound_classical(BoundFamily::Product, q, p.n_rational, p.g, a, b));
        }
        Family::Decomposable | Family::Elm => {
            let s = prov.surface.as_ref().expect("surface code");
            match &s.variant {
                SurfaceVariant::Decomposable { e, .. } if *e > 0 => out.push(bound_famcodes2(surface_params(*e)?)),
                SurfaceVariant::Decomposable { .. } => {
                    let p = surface_params(0)?;
                    out.push(bound_classical(BoundFamily::Product, q, p.n_rational, p.g, a, b));
                }
                SurfaceVariant::ElmOfProduct { base_point, .. } => {
                    out.push(bound_famcodes1(surface_params(base_point.degree as i64)?))
                }
            }
        }
    }
    if let Some(u) = prov.unisecant {
        let p = surface_params(0)?;
        out.push(bound_unisecant(q, p.n_rational, p.g, u.deg_e, u.s_a, u.deg_l)?);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectionProfile {
    /// `(t, bound on rational points of a section containing t covering curves)`
    pub values: Vec<(i64, i64)>,
    pub max: i64,
}

/// Pointwise bound on the rational points of a section, as a function of the
/// number of covering curves it contains.
pub fn section_count_profile(family: BoundFamily, p: FamilyParams) -> Result<SectionProfile> {
    let FamilyParams { q, n_rational: nn, twist, a, b, .. } = p;
    let values: Vec<(i64, i64)> = match family {
        BoundFamily::Elm => {
            let d = twist;
            if d <= 0 {
                return Err(Error::Domain("center degree must be positive".into()));
            }
            (0..=a.min(b.div_euclid(d)))
                .map(|n| (n, n * nn + (q + 1 - n) * (b - d * n)))
                .collect()
        }
        BoundFamily::Decomposable => {
            let e = twist;
            if e <= 0 {
                return Err(Error::Domain("e must be positive".into()));
            }
            (0..=b)
                .map(|t| {
                    let v = if t > b - a * e {
                        q * t + nn + (b - t).div_euclid(e) * (nn - t)
                    } else {
                        (q + 1 - a) * t + a * nn
                    };
                    (t, v)
                })
                .collect()
        }
        other => {
            return Err(Error::Domain(format!("no section profile for {other} codes")));
        }
    };
    if values.is_empty() {
        return Err(Error::Domain(format!("empty range of covering-curve counts for {p}")));
    }
    let max = values.iter().map(|v| v.1).max().unwrap();
    Ok(SectionProfile { values, max })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExactParams {
    pub n: usize,
    pub k: usize,
    pub d: usize,
}

/// Exhaustive minimum distance over all nonzero messages. Requires
/// `q^k <= cap`.
pub fn exact_params(code: &LinearCode, cap: u64) -> Result<ExactParams> {
    let f = &code.field;
    let n = code.n();
    let mut rows = code.generator.clone();
    crate::linalg::rref(f, &mut rows);
    let k = rows.len();
    if k == 0 {
        return Ok(ExactParams { n, k, d: 0 });
    }
    let q = f.order() as u64;
    let total = q
        .checked_pow(k as u32)
        .filter(|&t| t <= cap)
        .ok_or_else(|| {
            Error::CapExceeded(format!(
                "q^k = {q}^{k} exceeds the exhaustive cap {cap}; only a probabilistic bound is possible"
            ))
        })?;
    let elems: Vec<Elem> = f.elements().collect();
    // multiples[i][c] = c * row_i
    let multiples: Vec<Vec<Vec<Elem>>> = rows
        .iter()
        .map(|r| elems.iter().map(|&c| r.iter().map(|&x| f.mul(c, x)).collect()).collect())
        .collect();
    let best = AtomicUsize::new(n);
    let chunks = total / q;
    (0..chunks).into_par_iter().for_each(|hi| {
        let mut base = vec![Elem::ZERO; n];
        let mut rest = hi;
        for mult in &multiples[1..] {
            let c = (rest % q) as usize;
            rest /= q;
            if c != 0 {
                for (b, &x) in base.iter_mut().zip(&mult[c]) {
                    *b = f.add(*b, x);
                }
            }
        }
        for (c, row0) in multiples[0].iter().enumerate() {
            if hi == 0 && c == 0 {
                continue;
            }
            let bound = best.load(Ordering::Relaxed);
            let mut w = 0;
            for (&b, &x) in base.iter().zip(row0) {
                if f.add(b, x) != Elem::ZERO {
                    w += 1;
                    if w >= bound {
                        break;
                    }
                }
            }
            if w < bound {
                best.fetch_min(w, Ordering::Relaxed);
            }
        }
    });
    Ok(ExactParams {
        n,
        k,
        d: best.into_inner(),
    })
}

/// The Griesmer sum `sum_{i<k} ceil(d / q^i)` and whether `n` reaches it.
pub fn griesmer_check(n: u64, k: u64, d: u64, q: u64) -> (bool, u64) {
    let mut sum = 0;
    let mut qi: u64 = 1;
    for _ in 0..k {
        sum += d.div_ceil(qi);
        qi = qi.saturating_mul(q);
    }
    (n >= sum, sum)
}

pub fn singleton_check(n: u64, k: u64, d: u64) -> bool {
    k + d <= n + 1
}

/// One line of the comparison table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub family: String,
    pub params: String,
    pub n: usize,
    pub k_lb: i64,
    pub k_exact: usize,
    pub d_lb: i64,
    pub d_exact: Option<usize>,
    pub griesmer: Option<bool>,
}

impl TableRow {
    /// Whether the exact parameters respect the bounds and the classical
    /// inequalities. Rows with invalid bounds compare only against the
    /// classical inequalities.
    pub fn passes(&self, bounds_valid: bool) -> bool {
        let k_ok = !bounds_valid || self.k_exact as i64 >= self.k_lb;
        let d_ok = match self.d_exact {
            Some(d) => (!bounds_valid || d as i64 >= self.d_lb) && singleton_check(self.n as u64, self.k_exact as u64, d as u64),
            None => true,
        };
        k_ok && d_ok && self.griesmer != Some(false)
    }
}

const HEADER: [&str; 8] = ["family", "params", "n", "k_lb", "k_exact", "d_lb", "d_exact", "griesmer"];

fn cells(r: &TableRow) -> [String; 8] {
    let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
    [
        r.family.clone(),
        r.params.clone(),
        r.n.to_string(),
        r.k_lb.to_string(),
        r.k_exact.to_string(),
        r.d_lb.to_string(),
        opt(r.d_exact.map(|d| d.to_string())),
        opt(r.griesmer.map(|g| g.to_string())),
    ]
}

pub fn format_table(rows: &[TableRow]) -> String {
    let all: Vec<[String; 8]> = std::iter::once(HEADER.map(String::from))
        .chain(rows.iter().map(cells))
        .collect();
    let widths: Vec<usize> = (0..8).map(|c| all.iter().map(|r| r[c].len()).max().unwrap()).collect();
    let mut out = String::new();
    for r in &all {
        let line: Vec<String> = r.iter().zip(&widths).map(|(s, &w)| format!("{s:<w$}")).collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

pub fn format_csv(rows: &[TableRow]) -> String {
    let mut out = HEADER.join(",");
    out.push('\n');
    for r in rows {
        let c = cells(r);
        let quoted: Vec<String> = c
            .iter()
            .map(|s| if s.contains(',') || s.contains(' ') { format!("\"{s}\"") } else { s.clone() })
            .collect();
        out.push_str(&quoted.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::build_prs;
    use crate::gf::Gf;

    fn p(q: i64, nn: i64, g: i64, t: i64, a: i64, b: i64) -> FamilyParams {
        FamilyParams { q, n_rational: nn, g, twist: t, a, b }
    }

    #[test]
    fn elm_family_example() {
        let r = bound_famcodes1(p(5, 6, 1, 2, 1, 3));
        assert_eq!((r.n, r.k_lower, r.d_lower), (36, 4, 18));
        assert!(r.valid());
        let r0 = bound_famcodes1(p(5, 6, 1, 2, 0, 3));
        assert_eq!((r0.k_lower, r0.d_lower), (3, 18));
        assert!(!bound_famcodes1(p(5, 6, 1, 2, 1, 6)).valid());
    }

    #[test]
    fn decomposable_family_cases() {
        let r = bound_famcodes2(p(5, 6, 1, 2, 1, 3));
        assert_eq!((r.k_lower, r.d_lower), (4, 15));
        assert_eq!(bound_famcodes2(p(5, 6, 1, 2, 0, 3)).d_lower, 18);
        assert_eq!(bound_famcodes2(p(5, 6, 1, 3, 2, 4)).d_lower, 10);
    }

    #[test]
    fn unisecant_examples() {
        let r = bound_unisecant(5, 6, 1, -2, -2, 3).unwrap();
        assert_eq!((r.k_lower, r.d_lower), (4, 15));
        let r = bound_unisecant(5, 6, 1, 0, 0, 2).unwrap();
        assert_eq!((r.k_lower, r.d_lower), (4, 20));
        assert_eq!(bound_unisecant(5, 6, 1, 1, 0, 2), Err(Error::Parity(1)));
    }

    #[test]
    fn profiles_match_bounds() {
        let f1 = section_count_profile(BoundFamily::Elm, p(5, 6, 1, 2, 1, 3)).unwrap();
        assert_eq!(f1.values, vec![(0, 18), (1, 11)]);
        assert_eq!(36 - f1.max, 18);
        for params in [p(5, 6, 1, 2, 1, 3), p(5, 6, 1, 3, 2, 4), p(5, 6, 1, 2, 0, 4), p(7, 10, 1, 1, 3, 7)] {
            let prof = section_count_profile(BoundFamily::Decomposable, params).unwrap();
            let r = bound_famcodes2(params);
            assert_eq!(r.n - prof.max, r.d_lower, "{params}");
        }
        let a0 = section_count_profile(BoundFamily::Decomposable, p(5, 6, 1, 2, 0, 4)).unwrap();
        assert_eq!(a0.max, 6 * 4);
        assert!(a0.values.iter().all(|&(t, v)| v == 6 * t));
    }

    #[test]
    fn prs_exact() {
        let f = Gf::new(5, 1).unwrap();
        let c = build_prs(&f, 1).unwrap();
        assert_eq!(exact_params(&c, DEFAULT_EXACT_CAP).unwrap(), ExactParams { n: 6, k: 2, d: 5 });
        assert!(matches!(exact_params(&build_prs(&f, 5).unwrap(), 100), Err(Error::CapExceeded(_))));
    }

    #[test]
    fn griesmer_examples() {
        assert_eq!(griesmer_check(5, 3, 3, 4), (true, 5));
        assert_eq!(griesmer_check(36, 4, 18, 5), (true, 24));
        assert_eq!(griesmer_check(6, 2, 6, 5), (false, 8));
        assert!(singleton_check(6, 2, 5));
        assert!(!singleton_check(6, 3, 5));
    }

    #[test]
    fn table_layout() {
        let row = TableRow {
            family: "prs".into(),
            params: "a=1".into(),
            n: 6,
            k_lb: 2,
            k_exact: 2,
            d_lb: 5,
            d_exact: Some(5),
            griesmer: Some(true),
        };
        let t = format_table(std::slice::from_ref(&row));
        assert!(t.starts_with("family  params  n"));
        let csv = format_csv(&[row]);
        assert_eq!(csv.lines().nth(1), Some("prs,a=1,6,2,2,5,5,true"));
    }
}
