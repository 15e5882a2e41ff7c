//! Acceptance suite. Each criterion prints one PASS/FAIL line; run with
//! `cargo test --test acceptance -- --nocapture` to see them.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ruledcodes::analysis::{bound_famcodes1, bound_famcodes2, exact_params, griesmer_check, singleton_check, FamilyParams};
use ruledcodes::asymptotics::{dominance_report, envelope_coefficient, figure_discrepancy, golden_max, optimized_rate};
use ruledcodes::codes::{build_code_decomposable, build_code_elm, build_prs, build_product_code, LinearCode};
use ruledcodes::curve::{ClosedPoint, Curve, Divisor, PointCoords};
use ruledcodes::gf::{Elem, Gf};
use ruledcodes::linalg;
use ruledcodes::locality::{recover, recovery_sets_unchecked, restriction_fiber};
use ruledcodes::rrspace::{in_rr_space, order_at, rr_basis};
use ruledcodes::surface::{elm_class_map, segre_upper_bounds, NumClass, RuledSurface};

type Outcome = Result<String, String>;

/// Criteria that cannot hold for the construction as stated, with the reason.
const UNATTAINABLE: &[(usize, &str)] = &[(
    8,
    "the fiber over the rational point P ~ beta - delta meets only the one section in L(beta - delta), so its restriction has rank 1",
)];

const CAP: u64 = 10_000_000;

fn f5() -> Gf {
    Gf::new(5, 1).unwrap()
}

fn elliptic() -> Curve {
    Curve::elliptic(&f5(), [Elem(0), Elem(0), Elem(0), Elem(0), Elem(1)]).unwrap()
}

fn point(c: &Curve, deg: u32, idx: usize) -> ClosedPoint {
    c.closed_points(deg).unwrap()[idx]
}

fn criterion2_code() -> LinearCode {
    let c = elliptic();
    let s = RuledSurface::decomposable(&c, Divisor::point(point(&c, 2, 0), 1)).unwrap();
    build_code_decomposable(&s, 1, &Divisor::point(point(&c, 3, 0), 1)).unwrap()
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: u64) -> Result<(), String> {
    let t = start.elapsed();
    check(t < Duration::from_secs(limit), || format!("took {t:?}, limit {limit} s"))
}

fn c1_riemann_roch() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut total = 0;
    let mut principal_seen = [false; 2];
    for c in [elliptic(), Curve::projective_line(&f5())] {
        let g = c.genus() as i64;
        let pools: Vec<Vec<ClosedPoint>> = (1..=3).map(|d| c.closed_points(d).unwrap()).collect();
        let mut tested = 0;
        let mut deg0 = 0;
        while tested < 60 || (g == 1 && deg0 < 15) {
            let mut d = Divisor::zero();
            for _ in 0..rng.gen_range(1..=3) {
                let pool = &pools[rng.gen_range(0..3)];
                d.add_term(pool[rng.gen_range(0..pool.len())], rng.gen_range(-2..=3));
            }
            // bias some samples to degree zero, where principality matters
            if g == 1 && rng.gen_bool(0.3) {
                let k = d.degree();
                d.add_term(ClosedPoint::infinity(), -k);
            }
            let deg = d.degree();
            if !(-3..=10).contains(&deg) {
                continue;
            }
            tested += 1;
            let basis = rr_basis(&c, &d).map_err(|e| e.to_string())?;
            let dim = basis.len() as i64;
            if deg >= 2 * g - 1 && deg >= 0 {
                check(dim == deg + 1 - g, || format!("dim L({d}) = {dim}, expected {}", deg + 1 - g))?;
            }
            if deg < 0 {
                check(dim == 0, || format!("dim L({d}) = {dim} for negative degree"))?;
            }
            if deg == 0 {
                // principal iff the points sum to the identity in the group law
                let principal = g == 0 || c.divisor_class_sum(&d).unwrap() == PointCoords::Infinity;
                principal_seen[principal as usize] |= g == 1;
                deg0 += 1;
                check(dim == principal as i64, || format!("deg 0 divisor {d}: dim {dim}, principal {principal}"))?;
            }
            for f in &basis {
                check(in_rr_space(&c, f, &d).unwrap(), || format!("{f} not in L({d})"))?;
                for p in d.support() {
                    let v = order_at(&c, f, &p).unwrap();
                    check(v + d.multiplicity(&p) >= 0, || format!("ord_{p}({f}) = {v} below -{}", d.multiplicity(&p)))?;
                }
            }
        }
        total += tested;
    }
    check(total >= 100, || format!("only {total} divisors"))?;
    check(principal_seen == [true, true], || "both degree-0 cases were not sampled".into())?;
    within(start, 30)?;
    Ok(format!("{total} divisors in {:?}", start.elapsed()))
}

fn exact(code: &LinearCode) -> Result<(usize, usize, usize), String> {
    let e = exact_params(code, CAP).map_err(|e| e.to_string())?;
    Ok((e.n, e.k, e.d))
}

fn c2_decomposable() -> Outcome {
    let start = Instant::now();
    let code = criterion2_code();
    let (n, k, d) = exact(&code)?;
    let b = bound_famcodes2(FamilyParams { q: 5, n_rational: 6, g: 1, twist: 2, a: 1, b: 3 });
    check((n, k) == (36, 4), || format!("[n, k] = [{n}, {k}]"))?;
    check(b.k_lower == 4 && b.d_lower == 15, || format!("bounds k >= {}, d >= {}", b.k_lower, b.d_lower))?;
    check(d >= 15, || format!("d = {d} < 15"))?;
    check(griesmer_check(36, 4, d as u64, 5).0 && singleton_check(36, 4, d as u64), || "Griesmer or Singleton fails".into())?;
    within(start, 5)?;
    Ok(format!("[36, 4, {d}]_5 in {:?}", start.elapsed()))
}

fn c3_elm() -> Outcome {
    let start = Instant::now();
    let c = elliptic();
    let center = point(&c, 2, 0);
    let ext = c.extension(2).unwrap();
    let u = ext.field.elements().find(|&u| !ext.is_in_base(u)).unwrap();
    let s = RuledSurface::elm(&c, center, u).unwrap();
    let code = build_code_elm(&s, 1, &Divisor::point(point(&c, 3, 0), 1)).map_err(|e| e.to_string())?;
    let rank = code.provenance.condition_rank;
    check(rank == Some(2), || format!("condition rank {rank:?}"))?;
    let (n, k, d) = exact(&code)?;
    let b = bound_famcodes1(FamilyParams { q: 5, n_rational: 6, g: 1, twist: 2, a: 1, b: 3 });
    check((n, k) == (36, 4) && b.k_lower == 4, || format!("[n, k] = [{n}, {k}], k >= {}", b.k_lower))?;
    check(d >= 18 && d as i64 >= b.d_lower, || format!("d = {d} < 18"))?;
    within(start, 5)?;
    Ok(format!("[36, 4, {d}]_5 in {:?}", start.elapsed()))
}

fn c4_product() -> Outcome {
    let c = elliptic();
    let trivial = RuledSurface::decomposable(&c, Divisor::zero()).unwrap();
    let mut exhaustive = 0;
    for a in 0..=2i64 {
        for b in 2..=4u32 {
            let beta = Divisor::point(point(&c, b, 0), 1);
            let x = build_code_decomposable(&trivial, a, &beta).map_err(|e| e.to_string())?;
            let y = build_product_code(&c, a, &beta).map_err(|e| e.to_string())?;
            check(x.same_row_space(&y), || format!("row spaces differ at a={a}, b={b}"))?;
            let kk = ((a + 1) * b as i64) as usize;
            check(y.n() == 36 && y.k() == kk, || format!("a={a}, b={b}: [{}, {}]", y.n(), y.k()))?;
            if 5u64.pow(y.k() as u32) <= CAP {
                let (_, _, d) = exact(&y)?;
                let want = (5 + 1 - a) * (6 - b as i64);
                check(d as i64 >= want, || format!("a={a}, b={b}: d = {d} < {want}"))?;
                exhaustive += 1;
            }
        }
    }
    Ok(format!("9 pairs equal, {exhaustive} distances checked"))
}

fn c5_prs() -> Outcome {
    for (p, m) in [(2, 2), (5, 1)] {
        let f = Gf::new(p, m).unwrap();
        let q = f.order() as usize;
        for a in 0..=q {
            let got = exact(&build_prs(&f, a as i64).map_err(|e| e.to_string())?)?;
            check(got == (q + 1, a + 1, q + 1 - a), || format!("PRS({a}) over F_{q}: {got:?}"))?;
        }
    }
    Ok("q = 4, 5 exact".into())
}

fn c6_lattice() -> Outcome {
    let c = elliptic();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let surfaces: Vec<RuledSurface> = vec![
        RuledSurface::product(&c),
        RuledSurface::decomposable(&c, Divisor::point(point(&c, 3, 1), 1)).unwrap(),
        RuledSurface::decomposable(&c, Divisor::point(point(&c, 2, 0), 1)).unwrap(),
        {
            let ext = c.extension(2).unwrap();
            let u = ext.field.elements().find(|&u| !ext.is_in_base(u)).unwrap();
            RuledSurface::elm(&c, point(&c, 2, 1), u).unwrap()
        },
    ];
    for i in 0..1000 {
        let s = &surfaces[i % surfaces.len()];
        let mut r = || NumClass::new(rng.gen_range(-20..=20), rng.gen_range(-20..=20));
        let (x, y, z) = (r(), r(), r());
        let e = s.self_intersection();
        // Gram matrix [[S^2, 1], [1, 0]]
        let gram = x.a * y.a * e + x.a * y.b + x.b * y.a;
        check(s.intersect(x, y) == gram, || format!("{x:?}.{y:?}"))?;
        check(s.intersect(x, y) == s.intersect(y, x), || "asymmetric".into())?;
        check(
            s.intersect(x.plus(z), y) == s.intersect(x, y) + s.intersect(z, y),
            || "not additive".into(),
        )?;
        // strict transform of a curve on C x P^1 under elm at a degree-d center
        let d = rng.gen_range(1..=3);
        let a = rng.gen_range(0..=6);
        let m = rng.gen_range(0..=a);
        let b = rng.gen_range(-10..=10);
        let prod = RuledSurface::product(&c);
        let before = prod.intersect(NumClass::new(a, b), NumClass::new(a, b));
        let (img, after) = elm_class_map(a, b, m, d, before).map_err(|e| e.to_string())?;
        let on_image = img.a * img.a * (-d) + 2 * img.a * img.b;
        check(after == on_image, || format!("elm map a={a} b={b} m={m} d={d}: {after} vs {on_image}"))?;
    }
    for s in &surfaces {
        for a in 0..10 {
            for b in -3..7 {
                check(s.euler_char(a, b) == s.euler_char_riemann_roch(a, b), || format!("chi({a}, {b})"))?;
            }
        }
    }
    Ok("1000 pairs, 4 x 100 Euler characteristics".into())
}

fn c7_segre() -> Outcome {
    let start = Instant::now();
    let c = elliptic();
    let ext = c.extension(2).unwrap();
    let u = ext.field.elements().find(|&u| !ext.is_in_base(u)).unwrap();
    let s = RuledSurface::elm(&c, point(&c, 2, 0), u).unwrap();
    let lo = s.segre_lower_bound_elm(1).map_err(|e| e.to_string())?;
    check(lo.functions_examined == 5, || format!("{} functions examined", lo.functions_examined))?;
    let hi = segre_upper_bounds(1, 6, 5);
    check(lo.bound == 2 && hi.bound == 2, || format!("{} <= s_a <= {}", lo.bound, hi.bound))?;
    for n in 1..=3 {
        // delta has to avoid rational points, so degree 1 is a difference
        let delta = match n {
            1 => Divisor::point(point(&c, 3, 0), 1).minus(&Divisor::point(point(&c, 2, 0), 1)),
            _ => Divisor::point(point(&c, n as u32, 0), 1),
        };
        let d = RuledSurface::decomposable(&c, delta).map_err(|e| e.to_string())?;
        let got = d.segre_decomposable().map_err(|e| e.to_string())?;
        check(got == (-n, -n), || format!("e = {n}: {got:?}"))?;
    }
    within(start, 60)?;
    Ok(format!("s_a = 2 certified, decomposable exact, {:?}", start.elapsed()))
}

fn c8_locality() -> Outcome {
    let code = criterion2_code();
    let f = &code.field;
    let mut low = Vec::new();
    for i in 0..6 {
        let r = restriction_fiber(&code, i).map_err(|e| e.to_string())?;
        if !(r.rank == 2 && r.equals_prs) {
            low.push((i, r.rank));
        }
    }
    let sets = recovery_sets_unchecked(&code).map_err(|e| e.to_string())?;
    for s in &sets {
        check(s.len() == 2 && s.iter().all(|r| r.helpers.len() == 2), || "wrong set shape".into())?;
        check(s[0].helpers.iter().all(|h| !s[1].helpers.contains(h)), || "sets overlap".into())?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut failures = 0;
    let mut trials = 0;
    let elems: Vec<Elem> = f.elements().collect();
    for idx in 1..5usize.pow(4) {
        let msg: Vec<Elem> = (0..4).map(|j| elems[(idx / 5usize.pow(j)) % 5]).collect();
        let w = code.encode(&msg);
        for _ in 0..5 {
            let t = rng.gen_range(0..code.n());
            let mut rx: Vec<Option<Elem>> = w.iter().copied().map(Some).collect();
            rx[t] = None;
            for r in &sets[t] {
                trials += 1;
                if recover(f, &rx, r) != Ok(w[t]) {
                    failures += 1;
                }
            }
        }
    }
    check(failures == 0, || format!("{failures} of {trials} repairs wrong"))?;
    check(low.is_empty(), || {
        format!("fibers {low:?} have rank below 2; repair still exact on {trials} trials")
    })?;
    Ok(format!("all fibers PRS(1), {trials} repairs exact"))
}

fn c9_asymptotics() -> Outcome {
    let b16 = envelope_coefficient(16.0, 3.0);
    check((b16 - 36.0 / 51.0).abs() < 1e-12, || format!("B(16, 3) = {b16}"))?;
    for (q, aq) in [(16.0, 3.0), (49.0, 6.0)] {
        for b in [0.5, 0.6, 0.7, 0.8] {
            let o = optimized_rate(q, aq, b).map_err(|e| e.to_string())?;
            // golden-section search on the balanced rate, not the closed form
            let (na, nr) = golden_max(|a| ruledcodes::asymptotics::balanced_rate(q, aq, a, b), 0.0, b, 1e-13);
            check((o.a0 - na).abs() < 1e-6 && (o.r_max - nr).abs() < 1e-6, || {
                format!("q={q} b={b}: closed ({}, {}) vs search ({na}, {nr})", o.a0, o.r_max)
            })?;
        }
        let rep = dominance_report(q, aq, 401).map_err(|e| e.to_string())?;
        check(rep.interval.is_some_and(|(lo, hi)| hi > lo), || format!("no dominance interval for q={q}"))?;
    }
    let disc = figure_discrepancy(49, 6.0);
    check(
        disc.is_some_and(|(p, f)| (p - 49.0 / 60.0).abs() < 1e-12 && (f - 51.0 / 60.0).abs() < 1e-12),
        || format!("q=49 discrepancy {disc:?}"),
    )?;
    check(figure_discrepancy(16, 3.0).is_none(), || "q=16 coefficient should match".into())?;
    println!("note: q=49 figure coefficient 49/60 differs from the formula value 51/60");
    Ok("closed forms agree with search; dominance on both plots".into())
}

fn c10_negative_control() -> Outcome {
    let cfg = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs/decomposable_demo.json");
    let code = criterion2_code();
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let clean = dir.path().join("clean.matrix");
    let bad = dir.path().join("bad.matrix");
    std::fs::write(&clean, code.to_text()).unwrap();
    let mut corrupt = code.clone();
    corrupt.generator[0][0] = code.field.add(code.generator[0][0], Elem::ONE);
    std::fs::write(&bad, corrupt.to_text()).unwrap();
    let run = |m: &PathBuf| {
        ruledcodes::cli::run(["ruledcodes".as_ref(), "verify".as_ref(), m.as_os_str(), "--config".as_ref(), cfg.as_os_str()])
    };
    let (ok, ko) = (run(&clean), run(&bad));
    check(ok == 0, || format!("clean matrix exit {ok}"))?;
    check(ko == 1, || format!("corrupted matrix exit {ko}"))?;
    Ok("clean exit 0, corrupted exit 1".into())
}

type Criterion = fn() -> Outcome;

const CRITERIA: [(&str, Criterion); 10] = [
    ("Riemann-Roch dimensions and valuations", c1_riemann_roch),
    ("decomposable code [36, 4, >=15]", c2_decomposable),
    ("elementary transform code [36, 4, >=18]", c3_elm),
    ("product codes and multiplied parameters", c4_product),
    ("projective Reed-Solomon parameters", c5_prs),
    ("intersection lattice and transform identities", c6_lattice),
    ("arithmetic Segre invariant certification", c7_segre),
    ("fiber locality and repair", c8_locality),
    ("asymptotic frontier", c9_asymptotics),
    ("verify rejects a corrupted matrix", c10_negative_control),
];

// Written to the process stdout rather than through `println!`, so the lines
// appear even when the harness captures test output.
fn report(line: String) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
}

#[test]
fn acceptance() {
    report(String::new());
    let mut failed = Vec::new();
    for (i, (name, f)) in CRITERIA.iter().enumerate() {
        let id = i + 1;
        match f() {
            Ok(detail) => report(format!("criterion {id:>2} PASS  {name}: {detail}")),
            Err(why) => {
                let known = UNATTAINABLE.iter().find(|u| u.0 == id);
                match known {
                    Some((_, reason)) => report(format!("criterion {id:>2} FAIL  {name}: {why} (unattainable: {reason})")),
                    None => report(format!("criterion {id:>2} FAIL  {name}: {why}")),
                }
                failed.push(id);
            }
        }
    }
    let expected: Vec<usize> = UNATTAINABLE.iter().map(|u| u.0).collect();
    assert_eq!(failed, expected, "unexpected acceptance outcome");
}

#[test]
fn rank_deficient_fiber_is_the_one_over_beta_minus_delta() {
    let code = criterion2_code();
    let ranks: Vec<usize> = (0..6).map(|i| restriction_fiber(&code, i).unwrap().rank).collect();
    assert_eq!(ranks, vec![2, 1, 2, 2, 2, 2]);
    let f = code.field.clone();
    let rows = code.generator.clone();
    assert_eq!(linalg::rank(&f, &rows), 4);
}
