//! End-to-end acceptance checks, one test per criterion.
//!
//! Each test prints a `criterion N [PASS|FAIL]` line to stderr.

mod common;

use std::time::{Duration, Instant};

use nalgebra::{DMatrix, SymmetricEigen};
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{close, grid_oracle, mpoly, report, rosenbrock, sort_points, Quartic};
use polyloc::arith::parse::parse_upoly;
use polyloc::arith::rational::{int, rat};
use polyloc::arith::{MPoly, QMatrix, Rational, UPoly};
use polyloc::certify::{BorderedTest, HessianConvention, HessianCurve, JacobianCurve, Verdict};
use polyloc::groebner::{buchberger, MonomialOrder};
use polyloc::realroots::{isolate_real_roots, refine, sign_at, Sign, SturmSequence};
use polyloc::solve::{
    gralom, grulom, grulom_plus, perturb_solve, solve_inequalities, SolveOptions, SolveReport, Status,
};

fn opts(convention: HessianConvention) -> SolveOptions {
    SolveOptions {
        convention,
        ..SolveOptions::default()
    }
}

fn direct() -> SolveOptions {
    opts(HessianConvention::Direct)
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let s = Instant::now();
    let out = f();
    (out, s.elapsed())
}

fn coords(r: &SolveReport, digits: u32) -> Vec<Vec<f64>> {
    sort_points(r.minimizers.iter().map(|m| m.coords_f64(digits)).collect())
}

fn exact_set(r: &SolveReport) -> Vec<Vec<Option<Rational>>> {
    let mut v: Vec<_> = r.minimizers.iter().map(|m| m.exact_coords()).collect();
    v.sort();
    v
}

fn show_exact(v: &[Vec<Option<Rational>>]) -> String {
    let pts: Vec<String> = v
        .iter()
        .map(|p| {
            let c: Vec<String> = p
                .iter()
                .map(|c| c.as_ref().map_or("?".into(), |q| q.to_string()))
                .collect();
            format!("({})", c.join(", "))
        })
        .collect();
    format!("{{{}}}", pts.join(", "))
}

fn circle_objective() -> MPoly {
    mpoly("100*x1^4 - 200*x1^2*x2 + x1^2 + 100*x2^2 - 2*x1 + 1", 2)
}

fn circle() -> MPoly {
    mpoly("x1^2 + x2^2 - 1", 2)
}

#[test]
fn criterion_1_two_local_minimizers_exact() {
    let f = mpoly("x1^2 + x2^4 - 2*x2^2", 2);
    let (r, dt) = timed(|| grulom(&f, &direct()).unwrap());
    let rep = r.rep.as_ref().unwrap();
    let h = &r.hessian.as_ref().unwrap().h;
    let expected_h = [
        [UPoly::from_ints(&[2]), UPoly::zero()],
        [UPoly::zero(), parse_upoly("12*t^2 - 4").unwrap()],
    ];
    let h_ok = (0..2).all(|i| (0..2).all(|j| h.get(i, j) == &expected_h[i][j]));
    let exact = exact_set(&r);
    let expected = vec![vec![Some(int(0)), Some(int(-1))], vec![Some(int(0)), Some(int(1))]];
    let ok = r.status == Status::Ok
        && r.j() == Some(1)
        && rep.w == parse_upoly("t^3 - t").unwrap()
        && rep.v[1] == UPoly::t()
        && h_ok
        && exact == expected
        && dt < Duration::from_secs(1);
    report(
        1,
        "x1^2+x2^4-2x2^2",
        ok,
        &format!("j={:?} w={} minimizers={} {dt:?}", r.j(), rep.w, show_exact(&exact)),
    );
    assert!(ok);
}

#[test]
fn criterion_2_saddle_rejected() {
    let f = mpoly("x1^2 + (x1*x2 - 1)^2", 2);
    let (r, dt) = timed(|| grulom(&f, &direct()).unwrap());
    let d = &r.diagnostics;
    let det_ok = d.det_at_roots.len() == 1
        && d.det_at_roots[0].sign == Sign::Negative
        && d.det_at_roots[0].enclosure.lo == int(-4)
        && d.det_at_roots[0].enclosure.hi == int(-4);
    let at_origin = r.points.iter().all(|c| c.is_zero());
    let ok = r.minimizers.is_empty() && det_ok && at_origin && dt < Duration::from_secs(1);
    report(
        2,
        "saddle x1^2+(x1x2-1)^2",
        ok,
        &format!(
            "minimizers={} det={} {dt:?}",
            r.minimizers.len(),
            d.det_at_roots
                .first()
                .map_or("?".into(), |s| s.enclosure.lo.to_string())
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_3_global_minimum() {
    let f = mpoly("x1^2 + x2^4 - 2*x2^2", 2);
    let r = grulom_plus(&f, &direct()).unwrap();
    let r_poly = r.r.clone().unwrap();
    let fmin = r.f_min.as_ref().and_then(|m| m.exact());
    let exact = exact_set(&r);
    let expected = vec![vec![Some(int(0)), Some(int(-1))], vec![Some(int(0)), Some(int(1))]];
    let ok = r_poly == parse_upoly("-t^2").unwrap() && fmin == Some(int(-1)) && exact == expected;
    report(
        3,
        "global minimizers",
        ok,
        &format!(
            "r={} f_min={} glo={}",
            r_poly.to_string_in("t"),
            fmin.map_or("?".into(), |q| q.to_string()),
            show_exact(&exact)
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_4_rosenbrock() {
    // (n, deg w, real roots, local minimizers, alpha^B_1)
    let rows: [(usize, usize, usize, usize, Option<f64>); 4] = [
        (2, 1, 1, 1, None),
        (3, 3, 1, 1, None),
        (4, 9, 3, 2, Some(-0.77565)),
        (5, 27, 3, 2, Some(-0.96205)),
    ];
    let mut all = true;
    for (n, dw, nreal, nloc, b1) in rows {
        let (r, dt) = timed(|| grulom(&rosenbrock(n), &direct()).unwrap());
        let pts = coords(&r, 10);
        let a_ok = r
            .minimizers
            .iter()
            .any(|m| m.exact_coords().iter().all(|c| c.as_ref() == Some(&Rational::one())));
        let b_ok = match b1 {
            Some(b) => pts.iter().any(|p| (p[0] - b).abs() < 1e-4),
            None => true,
        };
        let time_ok = n != 4 || dt < Duration::from_secs(60);
        let ok =
            r.deg_w() == Some(dw) && r.n_real_roots() == nreal && r.minimizers.len() == nloc && a_ok && b_ok && time_ok;
        all &= ok;
        report(
            4,
            &format!("rosenbrock n={n}"),
            ok,
            &format!(
                "deg w={:?} real={} loc={} alpha1={:?} {dt:?}",
                r.deg_w(),
                r.n_real_roots(),
                r.minimizers.len(),
                pts.iter().map(|p| p[0]).collect::<Vec<_>>()
            ),
        );
    }
    assert!(all);
}

const CIRCLE_ROOTS: [f64; 6] = [
    -0.8684745451,
    -0.7839301862,
    -0.0033445316,
    0.0099009901,
    0.7864151542,
    0.8658463102,
];

// (alpha1, alpha2, f)
const TABLE_2: [[f64; 3]; 3] = [
    [-0.7839301862, 0.6208489858, 3.186378996],
    [0.0099009901, -0.9999509840, 100.9900990],
    [0.7864151542, 0.6176983125, 0.045674808],
];

#[test]
fn criterion_5_circle_problem() {
    let (r, dt) = timed(|| gralom(&circle_objective(), &[circle()], &direct()).unwrap());
    let rep = r.rep.as_ref().unwrap();
    let w_ok = rep.w.monic() == UPoly::from_ints(&[-1, -198, 30200, 598, -70599, -400, 10400, 0, 40000]).monic();
    let roots: Vec<f64> = r.roots.iter().map(|a| a.to_f64()).collect();
    let roots_ok = roots.len() == 6 && close(&roots, &CIRCLE_ROOTS, 1e-8);
    let mut rows: Vec<[f64; 3]> = r
        .minimizers
        .iter()
        .map(|m| {
            let c = m.coords_f64(12);
            [c[0], c[1], m.value_f64(12)]
        })
        .collect();
    rows.sort_by(|a, b| a[0].partial_cmp(&b[0]).unwrap());
    let table_ok = rows.len() == 3
        && rows.iter().zip(TABLE_2.iter()).all(|(got, want)| {
            (got[0] - want[0]).abs() < 1e-8 && (got[1] - want[1]).abs() < 1e-8 && (got[2] - want[2]).abs() < 1e-6
        });
    let ok = r.status == Status::Ok && w_ok && roots_ok && table_ok && dt < Duration::from_secs(30);
    report(
        5,
        "circle problem",
        ok,
        &format!(
            "w={} roots={roots:?} minimizers={rows:?} {dt:?}",
            rep.w.to_string_in("t")
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_6_disk_problem() {
    let r = solve_inequalities(
        &circle_objective(),
        &[mpoly("1 - x1^2 - x2^2", 2)],
        &[],
        false,
        &direct(),
    )
    .unwrap();
    let pts = coords(&r, 12);
    let ok = r.status == Status::Ok && pts.len() == 1 && close(&pts[0], &[0.786415154, 0.617698312], 1e-8);
    report(6, "disk problem", ok, &format!("minimizers={pts:?}"));
    assert!(ok);
}

/// Rows of the perturbation table as printed: eps, alpha1, alpha2 (= alpha3), f.
const TABLE_3: [(i32, f64, f64, f64); 4] = [
    (5, -0.01348524792, -0.7070425062, -0.000014242),
    (7, -0.00291998727, -0.7071036821, -0.000000141),
    (9, -0.00062977344, -0.7071066611, -0.000000001),
    (11, -0.00013571219, -0.7071048281, -0.000000000),
];

/// The same quantities solved independently at 50-digit precision.
const TABLE_3_ORACLE: [(f64, f64, f64); 4] = [
    (-0.01348524792403, -0.7070424839033, -1.4242632e-5),
    (-0.002919987271628, -0.7071037666688, -1.4164005e-7),
    (-0.0006297734479078, -0.7071066409621, -1.4146858e-9),
    (-0.0001357121974842, -0.7071067746749, -1.4143153e-11),
];

fn perturbation_trajectory() -> Vec<(Vec<f64>, f64, Status)> {
    let f = mpoly("x1^4", 3);
    let h = [mpoly("x1^2 + x2^2 + x3^2 - 1", 3)];
    let mut schedule: Vec<Vec<Rational>> = TABLE_3
        .iter()
        .map(|&(k, ..)| vec![Rational::new(1.into(), num_bigint::BigInt::from(10).pow(k as u32)); 3])
        .collect();
    schedule.push(vec![Rational::zero(); 3]);
    perturb_solve(&f, &h, &schedule, &direct())
        .into_iter()
        .map(|p| {
            let r = p.outcome.unwrap();
            let c = r.minimizers.first().map(|m| m.coords_f64(12)).unwrap_or_default();
            let fv = r.f_min.as_ref().map_or(f64::NAN, |m| m.to_f64(12));
            (c, fv, r.status)
        })
        .collect()
}

#[test]
fn criterion_7_perturbation_table() {
    let traj = perturbation_trajectory();
    let mut attainable = true;
    let mut paper_ok = true;
    for (k, &(e, a1, a2, fv)) in TABLE_3.iter().enumerate() {
        let (c, f_got, _) = &traj[k];
        let (o1, o2, of) = TABLE_3_ORACLE[k];
        let vs_oracle = c.len() == 3 && close(c, &[o1, o2, o2], 1e-9) && (f_got - of).abs() < 1e-12;
        let vs_paper = c.len() == 3 && close(c, &[a1, a2, a2], 1e-6) && (f_got - fv).abs() < 1e-7;
        attainable &= vs_oracle && (vs_paper || e == 11);
        paper_ok &= vs_paper;
        report(
            7,
            &format!("eps=1e-{e}"),
            vs_paper,
            &format!("alpha={c:?} f={f_got:e} printed=({a1}, {a2}, {fv}) oracle_match={vs_oracle}"),
        );
    }
    let zero_ok = traj[4].2 == Status::PositiveDimensional;
    attainable &= zero_ok;
    report(7, "eps=0", zero_ok, &format!("status={:?}", traj[4].2));
    report(
        7,
        "perturbation table",
        paper_ok && zero_ok,
        "printed alpha2 at eps=1e-11 differs from the exact critical point by 1.9e-6",
    );
    assert!(attainable);
}

#[test]
#[ignore = "printed alpha2 at eps=1e-11 is off by 1.9e-6"]
fn criterion_7_strict_printed_values() {
    let traj = perturbation_trajectory();
    for (k, &(_, a1, a2, fv)) in TABLE_3.iter().enumerate() {
        let (c, f_got, _) = &traj[k];
        assert!(close(c, &[a1, a2, a2], 1e-6), "row {k}: {c:?}");
        assert!((f_got - fv).abs() < 1e-7);
    }
}

fn random_mpoly(rng: &mut ChaCha8Rng, n: usize, max_deg: u32, max_terms: usize) -> MPoly {
    let nterms = rng.gen_range(1..=max_terms);
    let terms: Vec<String> = (0..nterms)
        .map(|_| {
            let c: i64 = loop {
                let c = rng.gen_range(-5i64..=5);
                if c != 0 {
                    break c;
                }
            };
            let mut t = format!("({c})");
            let mut budget = rng.gen_range(0..=max_deg);
            for i in 1..=n {
                let e = rng.gen_range(0..=budget);
                budget -= e;
                if e > 0 {
                    t += &format!("*x{i}^{e}");
                }
            }
            t
        })
        .collect();
    mpoly(&terms.join(" + "), n)
}

fn random_upoly(rng: &mut ChaCha8Rng, max_deg: usize) -> UPoly {
    let d = rng.gen_range(0..=max_deg);
    let mut c: Vec<Rational> = (0..=d)
        .map(|_| rat(rng.gen_range(-20..=20), rng.gen_range(1..=6)))
        .collect();
    if c[d].is_zero() {
        c[d] = int(1);
    }
    UPoly::new(c)
}

fn property_groebner(rng: &mut ChaCha8Rng) -> (bool, bool) {
    let n = rng.gen_range(2..=3);
    let k = rng.gen_range(1..=3);
    let max_deg = if n == 2 { 3 } else { 2 };
    let gens: Vec<MPoly> = (0..k).map(|_| random_mpoly(rng, n, max_deg, 3)).collect();
    let order = if rng.gen_bool(0.5) {
        MonomialOrder::grevlex(n)
    } else {
        MonomialOrder::lex(n)
    };
    let g = buchberger(&gens, &order).unwrap();
    let mut shuffled = gens.clone();
    shuffled.shuffle(rng);
    let g2 = buchberger(&shuffled, &order).unwrap();
    (
        g.satisfies_buchberger_criterion() && g.is_reduced(),
        g.generators() == g2.generators(),
    )
}

fn property_divmod(rng: &mut ChaCha8Rng) -> bool {
    let a = random_upoly(rng, 8);
    let b = loop {
        let b = random_upoly(rng, 4);
        if !b.is_zero() {
            break b;
        }
    };
    let (q, r) = a.divmod(&b).unwrap();
    &(&q * &b) + &r == a && (r.is_zero() || r.deg() < b.deg())
}

/// `Π (t − r_i) · (t² + c)` with known distinct rational roots.
fn property_sturm(rng: &mut ChaCha8Rng) -> bool {
    let k = rng.gen_range(0..=5);
    let mut rs: Vec<Rational> = Vec::new();
    while rs.len() < k {
        let r = rat(rng.gen_range(-30..=30), rng.gen_range(1..=4));
        if !rs.contains(&r) {
            rs.push(r);
        }
    }
    let mut p = UPoly::constant(int(rng.gen_range(1..=3)));
    for r in &rs {
        p = &p * &UPoly::new(vec![-r.clone(), int(1)]);
    }
    let c = rat(rng.gen_range(1..=9), rng.gen_range(1..=3));
    p = &p * &UPoly::new(vec![c, int(0), int(1)]);
    let sturm = SturmSequence::new(&p);
    let roots = isolate_real_roots(&p).unwrap();
    let per_interval = roots
        .iter()
        .all(|a| sturm.count(&a.interval().lo, &a.interval().hi) == 1 || a.as_rational().is_some());
    let contain = rs
        .iter()
        .all(|r| roots.iter().filter(|a| a.interval().contains(r)).count() == 1);
    sturm.count_all() == k && roots.len() == k && per_interval && contain
}

fn property_sign_at(rng: &mut ChaCha8Rng) -> bool {
    let w = loop {
        let w = random_upoly(rng, 5);
        if w.deg().unwrap_or(0) >= 1 {
            break w.squarefree_part();
        }
    };
    let g = random_upoly(rng, 6);
    let roots = isolate_real_roots(&w).unwrap();
    roots.iter().all(|a| {
        let s = sign_at(&g, a);
        let fine = refine(a, &rat(1, 1 << 40));
        let s2 = sign_at(&g, &fine);
        let x = fine.to_f64();
        let v = g.eval_f64(x);
        let numeric = v.abs() < 1e-6 || Sign::from_i8(v.signum() as i8) == s;
        let vanishes = g.rem(&w).map(|r| r.is_zero()).unwrap_or(false);
        s == s2 && numeric && (s != Sign::Zero || sign_at(&g.gcd(a.defpoly()), a) == Sign::Zero || vanishes)
    })
}

/// Bordered test on `t² − 2` against eigenvalues of `Zᵀ H Z` for a nullspace basis `Z`.
fn property_bordered(rng: &mut ChaCha8Rng) -> bool {
    let n = rng.gen_range(2..=4);
    let m = rng.gen_range(1..=2.min(n - 1));
    let w = parse_upoly("t^2 - 2").unwrap();
    let lin = |rng: &mut ChaCha8Rng| (rng.gen_range(-4i64..=4), rng.gen_range(-2i64..=2));
    let upper: Vec<Vec<(i64, i64)>> = (0..n)
        .map(|i| (0..n).map(|j| if j >= i { lin(rng) } else { (0, 0) }).collect())
        .collect();
    let hc: Vec<Vec<(i64, i64)>> = (0..n)
        .map(|i| (0..n).map(|j| upper[i.min(j)][i.max(j)]).collect())
        .collect();
    let cc: Vec<Vec<(i64, i64)>> = (0..m).map(|_| (0..n).map(|_| lin(rng)).collect()).collect();
    let up = |(a, b): (i64, i64)| UPoly::from_ints(&[a, b]);
    let h = QMatrix::from_fn(n, n, |i, j| up(hc[i][j]));
    let c = QMatrix::from_fn(m, n, |i, j| up(cc[i][j]));
    let hcurve = HessianCurve::new(h, w.clone(), HessianConvention::Direct);
    let ccurve = JacobianCurve::new(c, w.clone());
    let test = BorderedTest::new(&hcurve, &ccurve);
    let mut ok = true;
    for a in isolate_real_roots(&w).unwrap() {
        let t = a.to_f64();
        let hm = DMatrix::from_fn(n, n, |i, j| hc[i][j].0 as f64 + hc[i][j].1 as f64 * t);
        let cm = DMatrix::from_fn(m, n, |i, j| cc[i][j].0 as f64 + cc[i][j].1 as f64 * t);
        let gram = SymmetricEigen::new(cm.transpose() * &cm);
        let null: Vec<usize> = (0..n).filter(|&k| gram.eigenvalues[k].abs() < 1e-9).collect();
        let verdict = test.certify(&a).verdict;
        if n - null.len() < m {
            ok &= verdict == Verdict::RankDeficient;
            continue;
        }
        let z = gram.eigenvectors.select_columns(&null);
        let proj = z.transpose() * &hm * &z;
        let eig = SymmetricEigen::new(proj).eigenvalues;
        let lmin = eig.iter().cloned().fold(f64::INFINITY, f64::min);
        if lmin.abs() < 1e-7 {
            ok &= verdict != Verdict::PositiveDefinite;
        } else if lmin > 0.0 {
            ok &= verdict == Verdict::PositiveDefinite;
        } else {
            ok &= matches!(verdict, Verdict::NotPositiveDefinite { .. });
        }
    }
    ok
}

fn random_unconstrained(rng: &mut ChaCha8Rng) -> MPoly {
    let n = rng.gen_range(1..=2);
    let d = 2 * rng.gen_range(1..=2u32);
    let lead: Vec<String> = (1..=n).map(|i| format!("x{i}^{d}")).collect();
    let rest = random_mpoly(rng, n, d - 1, 4);
    let mut f = mpoly(&lead.join(" + "), n);
    f = &f + &rest;
    f
}

#[test]
fn criterion_8_property_suites() {
    const N: usize = 100;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    let (mut gb_ok, mut shuffle_ok) = (0, 0);
    for _ in 0..N {
        let (a, b) = property_groebner(&mut rng);
        gb_ok += a as usize;
        shuffle_ok += b as usize;
    }
    report(8, "S-polynomials reduce to zero", gb_ok == N, &format!("{gb_ok}/{N}"));
    report(
        8,
        "reduced basis invariant under shuffles",
        shuffle_ok == N,
        &format!("{shuffle_ok}/{N}"),
    );

    let divmod_ok = (0..N).filter(|_| property_divmod(&mut rng)).count();
    report(8, "divmod round trip", divmod_ok == N, &format!("{divmod_ok}/{N}"));

    let sturm_ok = (0..N).filter(|_| property_sturm(&mut rng)).count();
    report(8, "Sturm count consistency", sturm_ok == N, &format!("{sturm_ok}/{N}"));

    let sign_ok = (0..N).filter(|_| property_sign_at(&mut rng)).count();
    report(
        8,
        "sign_at refinement invariance",
        sign_ok == N,
        &format!("{sign_ok}/{N}"),
    );

    let bordered_ok = (0..N).filter(|_| property_bordered(&mut rng)).count();
    report(
        8,
        "bordered test vs projected eigenvalues",
        bordered_ok == N,
        &format!("{bordered_ok}/{N}"),
    );

    let (mut solved, mut degree_ok) = (0, 0);
    let mut attempts = 0;
    while solved < N && attempts < 10 * N {
        attempts += 1;
        let f = random_unconstrained(&mut rng);
        let Ok(r) = grulom(&f, &direct()) else { continue };
        let (Some(dw), Some(rp)) = (r.deg_w(), r.r.as_ref()) else {
            continue;
        };
        solved += 1;
        let d = f.total_degree().finite().unwrap() as u32;
        let n = f.nvars() as u32;
        let bezout = (d as usize - 1).pow(n);
        let r_deg = rp.deg().unwrap_or(0);
        degree_ok += (dw <= bezout && (r_deg < dw || dw == 0)) as usize;
    }
    report(
        8,
        "deg r < deg w <= (d-1)^n",
        degree_ok == N && solved == N,
        &format!("{degree_ok}/{solved}"),
    );

    assert_eq!(gb_ok, N);
    assert_eq!(shuffle_ok, N);
    assert_eq!(divmod_ok, N);
    assert_eq!(sturm_ok, N);
    assert_eq!(sign_ok, N);
    assert_eq!(bordered_ok, N);
    assert_eq!((solved, degree_ok), (N, N));
}

fn random_quartic(rng: &mut ChaCha8Rng) -> Quartic {
    let nonzero = |rng: &mut ChaCha8Rng, lim: i64| loop {
        let c = rng.gen_range(-lim..=lim);
        if c != 0 {
            break c as f64;
        }
    };
    loop {
        let mut c = [[0.0; 5]; 5];
        for (a, b) in Quartic::monomials() {
            c[a][b] = if a + b == 4 { nonzero(rng, 1) } else { nonzero(rng, 2) };
        }
        c[4][0] += 2.0;
        c[2][2] += 2.0;
        c[0][4] += 2.0;
        let q = Quartic { c };
        if q.leading_min_on_circle() > 0.2 {
            return q;
        }
    }
}

#[test]
fn criterion_9_grid_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0009);
    let (mut tested, mut agree, mut attempts) = (0, 0, 0);
    while tested < 25 && attempts < 200 {
        attempts += 1;
        let q = random_quartic(&mut rng);
        let f = q.to_mpoly();
        let Ok(r) = grulom(&f, &direct()) else { continue };
        if r.status != Status::Ok {
            continue;
        }
        tested += 1;
        let got = coords(&r, 12);
        let want = grid_oracle(&q, 1e-2);
        let same = got.len() == want.len() && got.iter().zip(&want).all(|(a, b)| close(a, b, 1e-6));
        agree += same as usize;
        if !same {
            report(
                9,
                "instance mismatch",
                false,
                &format!("{f} grulom={got:?} oracle={want:?}"),
            );
        }
    }
    let ok = tested == 25 && agree == 25;
    report(
        9,
        "grid oracle equivalence",
        ok,
        &format!("{agree}/{tested} instances agree"),
    );
    assert!(ok);
}

#[test]
fn criterion_10_convention_invariance() {
    let x = mpoly("x1^2 + x2^4 - 2*x2^2", 2);
    let saddle = mpoly("x1^2 + (x1*x2 - 1)^2", 2);
    let disk = [mpoly("1 - x1^2 - x2^2", 2)];
    type Run = Box<dyn Fn(&SolveOptions) -> SolveReport>;
    let cases: Vec<(&str, Run)> = vec![
        ("criterion 1", Box::new(move |o| grulom(&x, o).unwrap())),
        ("criterion 2", Box::new(move |o| grulom(&saddle, o).unwrap())),
        (
            "criterion 3",
            Box::new(|o| grulom_plus(&mpoly("x1^2 + x2^4 - 2*x2^2", 2), o).unwrap()),
        ),
        ("rosenbrock n=2", Box::new(|o| grulom(&rosenbrock(2), o).unwrap())),
        ("rosenbrock n=3", Box::new(|o| grulom(&rosenbrock(3), o).unwrap())),
        ("rosenbrock n=4", Box::new(|o| grulom(&rosenbrock(4), o).unwrap())),
        (
            "criterion 5",
            Box::new(|o| gralom(&circle_objective(), &[circle()], o).unwrap()),
        ),
        (
            "criterion 6",
            Box::new(move |o| solve_inequalities(&circle_objective(), &disk, &[], false, o).unwrap()),
        ),
    ];
    let mut all = true;
    for (name, run) in &cases {
        let a = run(&direct());
        let b = run(&opts(HessianConvention::Congruent));
        let same = a.minimizers.len() == b.minimizers.len()
            && a.minimizers
                .iter()
                .zip(&b.minimizers)
                .all(|(p, q)| p.root_index == q.root_index)
            && coords(&a, 15) == coords(&b, 15);
        all &= same;
        report(
            10,
            name,
            same,
            &format!("direct={} congruent={}", a.minimizers.len(), b.minimizers.len()),
        );
    }
    assert!(all);
}
