//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the process exits nonzero if any criterion fails.

use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use moyal_core::berry::{
    apply_exact, eigenvector_leading, gauge_fixed_connection, holonomy_exceptional, locus_polynomial, monodromy_exact,
    moyal_connection_solve, moyal_curvature, moyal_residual, plaquette_defect, singular_locus, solve_connection_2x2,
    CMatrix, MoyalConnection,
};
use moyal_core::io::{parse_json, parse_poly};
use moyal_core::metric::{
    certify_metric, expand_gaussian_in_coupling, gaussian_family_constraint, gaussian_family_relations,
    log_linear_in_n_check, metric_residual, metric_residual_series, pde_operator, solution_family_closure,
    solve_perturbative, HamiltonianSpec, MetricCandidate,
};
use moyal_core::phase::ModelParams;
use moyal_core::star::{dagger, star, star_log, ExpQuadForm};
use moyal_core::weyl::isomorphism_oracle;
use moyal_core::{CouplingSeries, Error, GaussianRational as G, Monomial, PhasePoly, RatFunc, Scalar};

type P = PhasePoly<G>;
type R = PhasePoly<RatFunc>;
type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn ensure(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn golden(name: &str) -> CouplingSeries<G> {
    let path = format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    parse_json(&text).unwrap_or_else(|e| panic!("{path}: {e}"))
}

fn ix3() -> P {
    P::mono(G::i(), 3, 0, 0)
}

fn ix3_spec() -> HamiltonianSpec<G> {
    HamiltonianSpec::with_coupling(P::p().pow(2), "g", ix3())
}

fn c1_metric() -> Outcome {
    let theta = solve_perturbative(&ix3(), 3).map_err(|e| e.to_string())?;
    let expected = golden("ix3_metric_g3.json");
    for n in 0..=3 {
        ensure(theta.coeff(n) == expected.coeff(n), format!("g^{n} coefficient differs"))?;
    }
    ensure(theta.coeff(3).coeff_of(1, -14, 8) == G::complex((0, 1), (29872557, 256)), "leading g^3 term")?;
    ensure(theta.coeff(3).coeff_of(12, -3, -3) == G::ratio(1, 384), "x^12 g^3 term")?;
    Ok(format!("{} terms at g^3", theta.coeff(3).len()))
}

fn c2_log() -> Outcome {
    let theta = solve_perturbative(&ix3(), 3).map_err(|e| e.to_string())?;
    let log = star_log(&theta).map_err(|e| e.to_string())?;
    let expected = golden("ix3_log_g3.json");
    ensure(log.coeff(2).is_zero(), "g^2 term of the log is not zero")?;
    for n in 0..=3 {
        ensure(log.coeff(n) == expected.coeff(n), format!("log g^{n} coefficient differs"))?;
    }
    Ok("g^2 vanishes, g^1 and g^3 match".into())
}

fn c3_certify() -> Outcome {
    let theta = solve_perturbative(&ix3(), 3).map_err(|e| e.to_string())?;
    let rep = certify_metric(&theta).map_err(|e| e.to_string())?;
    ensure(rep.hermitian && rep.positive && rep.order == 3, format!("{rep:?}"))?;
    Ok("hermitian and positive at order 3".into())
}

fn c4_quadratic() -> Outcome {
    let v = RatFunc::var;
    let params = ModelParams::new(v(0), v(1), v(2)).map_err(|e| e.to_string())?;
    let spec = HamiltonianSpec::new(params.hamiltonian());
    let hb_inv = |c: RatFunc, x: u32, p: i32| R::term(Monomial::new(x, p, -1), c);
    let half = |num: RatFunc, den: RatFunc, sign: i64| (num * den.inverse().unwrap()).mul_gaussian(&G::ratio(sign, 2));
    let residual_zero = |exponent: R| -> Result<bool, String> {
        let e = ExpQuadForm::exp(exponent).map_err(|e| e.to_string())?;
        Ok(metric_residual(&spec, &MetricCandidate::ExpQuad(e)).map_err(|e| e.to_string())?.is_zero())
    };
    ensure(residual_zero(hb_inv(half(v(2), v(1), -1), 0, 2))?, "r = -c/(2b hbar) fails")?;
    ensure(residual_zero(hb_inv(half(v(2), v(0), 1), 2, 0))?, "t = c/(2a hbar) fails")?;
    ensure(!residual_zero(hb_inv(half(v(2), v(1), 1), 2, 0))?, "t = c/(2b hbar) unexpectedly passes")?;

    // Generic (r, s, t): the residual prefactor decomposes into the relations.
    let (r, s, t) = (R::constant(v(3)), R::constant(v(4)), R::constant(v(5)));
    let pre = gaussian_family_constraint(&params, &r, &s, &t).map_err(|e| e.to_string())?;
    let rel = gaussian_family_relations(&params, &r, &s, &t);
    let part = |x: u32, p: i32| {
        R::from_terms(pre.terms().filter(|(m, _)| (m.x, m.p) == (x, p)).map(|(m, c)| (Monomial::new(0, 0, m.hbar), c.clone())))
    };
    let i_minus_hs = &R::constant(RatFunc::from_gaussian(G::i())) - &(&R::hbar() * &s);
    let checks = [
        &part(0, 2).scale(&v(1)).scale_gaussian(&G::from_int(-4)) - &rel.identity_r,
        &part(2, 0).scale(&v(0)).scale_gaussian(&G::from_int(4)) - &rel.identity_t,
        &part(0, 0) - &rel.link.mul_monomial(Monomial::new(0, 0, 1)).scale_gaussian(&G::ratio(-1, 2)),
        &part(1, 1) - &(&i_minus_hs * &rel.link),
    ];
    ensure(checks.iter().all(|c| c.is_zero()), "family identities do not hold symbolically")?;
    Ok("branches exact; x-branch t = c/(2b hbar) flagged as failing".into())
}

fn c5_number_operator() -> Outcome {
    let (a, b) = (G::from_int(3), G::ratio(1, 2));
    let d = &a - &b;
    let series = expand_gaussian_in_coupling(&a, &b, 3).map_err(|e| e.to_string())?;
    let inv = |k: u32| d.pow(k).inv().unwrap();
    let reference = [
        parse_poly("(p^2 + x^2)/(2 hbar)").unwrap().scale_gaussian(&inv(1)),
        parse_poly("(p^4 + 4 i hbar p x + 2 p^2 x^2 + x^4)/(8 hbar^2)").unwrap().scale_gaussian(&inv(2)),
        parse_poly("(p^2 + x^2)(p^4 + 12 i hbar p x + 2 p^2 x^2 + x^4)/(48 hbar^3)").unwrap().scale_gaussian(&inv(3)),
    ];
    for (k, p) in reference.iter().enumerate() {
        ensure(series.coeff(k + 1) == p, format!("a_{} differs", k + 1))?;
    }
    let log = star_log(&series).map_err(|e| e.to_string())?;
    let n = parse_poly("p^2 + x^2").unwrap();
    let expected = [
        P::zero(),
        n.mul_monomial(Monomial::new(0, 0, -1)).scale_gaussian(&(&inv(1) * &G::ratio(1, 2))),
        P::constant(&inv(2) * &G::ratio(1, 4)),
        n.mul_monomial(Monomial::new(0, 0, -1)).scale_gaussian(&(&inv(3) * &G::ratio(1, 6))),
    ];
    for (k, e) in expected.iter().enumerate() {
        ensure(log.coeff(k) == e, format!("log c^{k} differs"))?;
    }
    ensure(log_linear_in_n_check(&a, &b, 6).map_err(|e| e.to_string())?, "log not linear in N at order 6")?;
    Ok("a1..a3 and log match; linear in N through order 6".into())
}

fn c6_shifted() -> Outcome {
    let h = parse_poly("p^2/2 + x^2/2 + i x").unwrap();
    let spec = HamiltonianSpec::new(h).hbar_one();
    let theta = ExpQuadForm::exp(parse_poly("-2p").unwrap()).map_err(|e| e.to_string())?;
    let res = metric_residual(&spec, &MetricCandidate::ExpQuad(theta)).map_err(|e| e.to_string())?;
    ensure(res.is_zero(), "residual of exp(-2p) is not zero")?;
    Ok("exp(-2p) exact at hbar = 1".into())
}

fn c7_pdes() -> Outcome {
    // Quadratic model; the reference equation is the negative of H*T - T*H^dagger.
    let v = RatFunc::var;
    let params = ModelParams::new(v(0), v(1), v(2)).unwrap();
    let l = pde_operator(&params.hamiltonian()).map_err(|e| e.to_string())?.neg();
    let term = |c: RatFunc, x: u32, p: i32, h: i32| R::term(Monomial::new(x, p, h), c);
    let ic = |c: RatFunc, k: i64| c.mul_gaussian(&(&G::i() * &G::from_int(k)));
    let quad = [
        ((0, 0), &term(v(2), 0, 0, 1) + &term(ic(v(2), -2), 1, 1, 0)),
        ((0, 1), &term(v(2), 0, 1, 1) + &term(ic(v(1), -2), 1, 0, 1)),
        ((1, 0), &term(v(2), 1, 0, 1) + &term(ic(v(0), 2), 0, 1, 1)),
        ((0, 2), term(v(1), 0, 0, 2)),
        ((2, 0), term(-v(0), 0, 0, 2)),
    ];
    ensure(l.entries().count() == quad.len(), "quadratic PDE has extra terms")?;
    for ((i, j), c) in &quad {
        ensure(&l.coeff(*i, *j) == c, format!("quadratic coefficient ({i},{j})"))?;
    }

    let shifted = pde_operator(&parse_poly("p^2/2 + x^2/2 + i x").unwrap()).map_err(|e| e.to_string())?.eval_hbar_one();
    let lin = [((0, 0), "2 i x"), ((0, 1), "i x - 1"), ((0, 2), "-1/2"), ((1, 0), "-i p"), ((2, 0), "1/2")];
    ensure(shifted.entries().count() == lin.len(), "shifted PDE has extra terms")?;
    for ((i, j), s) in lin {
        ensure(shifted.coeff(i, j) == parse_poly(s).unwrap(), format!("shifted coefficient ({i},{j})"))?;
    }

    let g = RatFunc::var(0);
    let spec = HamiltonianSpec::with_coupling(R::p().pow(2), "g", R::mono(G::i(), 3, 0, 0));
    let cubic = pde_operator(&spec.total(&g)).map_err(|e| e.to_string())?;
    let lift = |s: &str| parse_poly(s).unwrap().map_coeffs(|c| RatFunc::from_gaussian(c.clone()));
    let gl = |s: &str| lift(s).scale(&g);
    let reference = [
        ((0, 0), gl("2 i x^3")),
        ((0, 1), gl("-3 hbar x^2")),
        ((0, 2), gl("-3 i hbar^2 x")),
        ((0, 3), gl("hbar^3")),
        ((1, 0), lift("-2 i hbar p")),
        ((2, 0), lift("hbar^2")),
    ];
    ensure(cubic.entries().count() == reference.len(), "ix^3 PDE has extra terms")?;
    for ((i, j), c) in &reference {
        ensure(&cubic.coeff(*i, *j) == c, format!("ix^3 coefficient ({i},{j})"))?;
    }
    Ok("quadratic, shifted and ix^3 coefficients exact".into())
}

fn c8_berry_2x2() -> Outcome {
    let f = holonomy_exceptional();
    let c = Complex64::new;
    let expected = CMatrix::from_2x2(c(-1.0, 0.0), c(0.0, -2.0), c(0.0, 0.0), c(1.0, 0.0));
    let dev = (&f - &expected).max_norm();
    ensure(dev <= 1e-12, format!("monodromy deviation {dev:e}"))?;
    let m = monodromy_exact();
    ensure(apply_exact(&m, &eigenvector_leading(1)) == eigenvector_leading(-1), "F u+ != u-")?;
    ensure(apply_exact(&m, &eigenvector_leading(-1)) == eigenvector_leading(1), "F u- != u+")?;

    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst: f64 = 0.0;
    let mut count = 0;
    while count < 20 {
        let q = [rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5)];
        let z = c(q[0], q[1]);
        if (c(1.0, 0.0) + z * z).norm() < 0.1 || z.norm() < 0.1 {
            continue;
        }
        let a = solve_connection_2x2(q).map_err(|e| format!("{q:?}: {e}"))?;
        let p = gauge_fixed_connection(q).map_err(|e| e.to_string())?;
        worst = worst.max((&a[0] - &p[0]).max_norm()).max((&a[1] - &p[1]).max_norm());
        count += 1;
    }
    ensure(worst <= 1e-10, format!("connection deviation {worst:e}"))?;
    for q in [[0.0, 1.0], [0.0, -1.0]] {
        ensure(matches!(solve_connection_2x2(q), Err(Error::RankDeficient { .. })), format!("{q:?} not rank deficient"))?;
    }
    Ok(format!("|F - F_exact| = {dev:.1e}, connection deviation {worst:.1e}"))
}

fn c9_berry_oscillator() -> Outcome {
    let conn = moyal_connection_solve().map_err(|e| e.to_string())?;
    ensure(conn == MoyalConnection::closed_form(), "connection differs from the closed form")?;
    let d = RatFunc::from_poly(locus_polynomial());
    let q1 = RatFunc::var(0);
    let q2 = RatFunc::var(1);
    let i = RatFunc::from_gaussian(G::i());
    let half = RatFunc::from_gaussian(G::ratio(1, 2));
    let reference = [
        (conn.s[0].clone(), i.clone()),
        (conn.t[0].clone(), -(q2.clone() * half.clone())),
        (conn.t[1].clone(), q1),
        (conn.s[1].clone(), i * q2 * half),
    ];
    for (k, (got, num)) in reference.into_iter().enumerate() {
        ensure(got * d.clone() == num, format!("coefficient {k} differs"))?;
    }
    ensure(conn.r.iter().all(|r| r.is_zero()), "p^2 terms present")?;
    ensure(moyal_residual(&conn).iter().all(|r| r.is_zero()), "residual not zero")?;
    ensure(moyal_curvature(&conn).is_zero(), "curvature not zero")?;
    ensure(singular_locus(&conn) == locus_polynomial().normalized(), "locus differs")?;
    Ok("A1, A2 exact; F12 = 0; locus 4q1 + q2^2".into())
}

fn random_poly(rng: &mut ChaCha8Rng) -> P {
    let n = rng.gen_range(0..4);
    P::from_terms((0..n).map(|_| {
        let m = Monomial::new(rng.gen_range(0..3), rng.gen_range(-2..3), rng.gen_range(-1..2));
        (m, G::complex((rng.gen_range(-4..5), rng.gen_range(1..4)), (rng.gen_range(-4..5), rng.gen_range(1..4))))
    }))
}

fn c10_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for k in 0..200 {
        let (a, b, c) = (random_poly(&mut rng), random_poly(&mut rng), random_poly(&mut rng));
        ensure(star(&star(&a, &b), &c) == star(&a, &star(&b, &c)), format!("associativity fails on triple {k}"))?;
    }
    for k in 0..200 {
        let (a, b) = (random_poly(&mut rng), random_poly(&mut rng));
        ensure(dagger(&star(&a, &b)) == star(&dagger(&b), &dagger(&a)), format!("anti-homomorphism fails on pair {k}"))?;
    }
    let mut worst: f64 = 0.0;
    for n in 2..=8 {
        let rep = isomorphism_oracle(n, 100, 7 + n as u64, 1e-10).map_err(|e| e.to_string())?;
        ensure(rep.failed == 0, format!("finite oracle N = {n}: {} failures", rep.failed))?;
        worst = worst.max(rep.max_deviation);
    }
    let field = |q: [f64; 2]| gauge_fixed_connection(q);
    let q = [0.4, 0.3];
    let ratio = plaquette_defect(&field, q, 0.02).map_err(|e| e.to_string())?
        / plaquette_defect(&field, q, 0.01).map_err(|e| e.to_string())?;
    ensure(ratio >= 7.0, format!("plaquette ratio {ratio:.2}"))?;
    let theta = solve_perturbative(&ix3(), 2).map_err(|e| e.to_string())?;
    let f = [G::from_int(2), G::one()];
    let g = [G::ratio(1, 3), G::zero(), G::from_int(-1)];
    let closed = solution_family_closure(&ix3_spec(), &theta, &f, &g).map_err(|e| e.to_string())?;
    let res = metric_residual_series(&ix3_spec(), &closed).map_err(|e| e.to_string())?;
    ensure(res.is_zero(), "closure is not a solution")?;
    Ok(format!("oracle max deviation {worst:.1e}, plaquette ratio {ratio:.2}"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("ix^3 metric to O(g^3)", Duration::from_secs(1), c1_metric),
        ("ix^3 star-log to O(g^3)", Duration::from_secs(1), c2_log),
        ("ix^3 certification", Duration::from_secs(1), c3_certify),
        ("quadratic model family", Duration::from_secs(1), c4_quadratic),
        ("number-operator expansion", Duration::from_secs(5), c5_number_operator),
        ("shifted oscillator", Duration::from_secs(1), c6_shifted),
        ("PDE extraction", Duration::from_secs(1), c7_pdes),
        ("Berry 2x2", Duration::from_secs(5), c8_berry_2x2),
        ("Berry oscillator", Duration::from_secs(1), c9_berry_oscillator),
        ("property suites", Duration::from_secs(60), c10_properties),
    ];
    let mut failures = 0;
    for (k, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > *budget => Err(format!("{detail}; over budget {budget:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS  {:>2}  {name}: {detail} ({:.3} s)", k + 1, elapsed.as_secs_f64()),
            Err(why) => {
                failures += 1;
                println!("FAIL  {:>2}  {name}: {why} ({:.3} s)", k + 1, elapsed.as_secs_f64());
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
