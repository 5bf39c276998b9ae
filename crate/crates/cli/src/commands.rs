use std::fmt;
use std::path::Path;

use moyal_core::berry::{
    apply_exact, classify_oscillator, eigenvector_leading, gauge_fixed_connection, hamiltonian, hamiltonian_partials,
    holonomy_exceptional, locus_polynomial, monodromy_exact, moyal_connection_solve, moyal_curvature, moyal_residual,
    origin_radius, singular_locus, solve_connection_2x2, verify_connection_matrix, CMatrix,
};
use moyal_core::io::{latex_poly, latex_series, parse_candidate, parse_json, parse_model, ModelFile};
use moyal_core::metric::{
    certify_metric, expand_gaussian_in_coupling, log_linear_in_n_check, metric_residual, metric_residual_series,
    observable_residual, pde_operator, solve_perturbative, HamiltonianSpec, MetricCandidate,
};
use moyal_core::star::{dagger, is_hermitian, star, star_log, ExpQuadForm};
use moyal_core::weyl::isomorphism_oracle;
use moyal_core::{CouplingSeries, Error, GaussianRational as G, Monomial, PhasePoly};
use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::render::{matrix, pde, pde_latex, ratfunc, value};
use crate::{Command, Observable};

type P = PhasePoly<G>;

/// Anything that stops a command before it can report: exit code 2.
#[derive(Debug)]
pub struct CliError(String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError(e.to_string())
    }
}

fn input_error(msg: impl Into<String>) -> CliError {
    CliError(msg.into())
}

fn located(source: &str, e: Error) -> CliError {
    match e {
        Error::Parse { line, column, msg } => CliError(format!("{source}:{line}:{column}: {msg}")),
        other => CliError(format!("{source}: {other}")),
    }
}

pub struct Outcome {
    pub report: Value,
    pub verified: bool,
}

fn ok(report: Value) -> Outcome {
    Outcome { report, verified: true }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn load_model(path: &Path) -> Result<ModelFile, CliError> {
    parse_model(&read(path)?).map_err(|e| located(&path.display().to_string(), e))
}

fn expr(flag: &str, s: &str) -> Result<P, CliError> {
    match parse_candidate(s).map_err(|e| located(flag, e))? {
        MetricCandidate::Poly(p) => Ok(p),
        _ => Err(input_error(format!("{flag}: expected a polynomial expression"))),
    }
}

fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        if j == 0 {
            return Err(input_error("--jobs must be at least 1"));
        }
        builder = builder.num_threads(j);
    }
    let pool = builder.build().map_err(|e| input_error(e.to_string()))?;
    Ok(pool.install(f))
}

fn observable(o: Observable) -> P {
    match o {
        Observable::P => P::p(),
        Observable::X => P::x(),
        Observable::N => &P::p().pow(2) + &P::x().pow(2),
    }
}

fn observable_name(o: Observable) -> &'static str {
    match o {
        Observable::P => "p",
        Observable::X => "x",
        Observable::N => "N",
    }
}

fn parse_observable(s: &str) -> Observable {
    match s {
        "p" => Observable::P,
        "x" => Observable::X,
        _ => Observable::N,
    }
}

fn candidate_value(c: &MetricCandidate<G>) -> Value {
    match c {
        MetricCandidate::Poly(p) => value(p),
        MetricCandidate::Series(s) => value(s),
        MetricCandidate::ExpQuad(e) => value(e),
    }
}

/// The metric of `p² + g V(x)`, which is the only coupled model the solver
/// handles.
fn solve_model(m: &ModelFile, order: Option<usize>) -> Result<CouplingSeries<G>, CliError> {
    let spec = &m.hamiltonian;
    let Some(c) = &spec.coupling else {
        return Err(input_error(format!("model `{}` has no coupling to expand in", m.name)));
    };
    if spec.h0 != P::p().pow(2) || spec.hbar_one {
        return Err(input_error(format!("model `{}`: the solver needs H₀ = p² with symbolic ħ", m.name)));
    }
    let series = solve_perturbative(&c.v, m.order(order)?)?;
    Ok(rename(series, &c.name)?)
}

fn rename(s: CouplingSeries<G>, name: &str) -> Result<CouplingSeries<G>, Error> {
    if s.coupling() == name {
        return Ok(s);
    }
    CouplingSeries::new(name, s.coeffs().to_vec())
}

fn hamiltonian_latex(spec: &HamiltonianSpec<G>) -> String {
    match &spec.coupling {
        Some(c) => format!("{} + {}\\left({}\\right)", latex_poly(&spec.h0), c.name, latex_poly(&c.v)),
        None => latex_poly(&spec.h0),
    }
}

pub fn run(cmd: Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::Star { a, b, latex } => {
            let r = star(&expr("A", &a)?, &expr("B", &b)?);
            let mut out = json!({"product": value(&r)});
            if latex {
                out["latex"] = json!(latex_poly(&r));
            }
            Ok(ok(out))
        }
        Command::Dagger { a, latex } => {
            let r = dagger(&expr("A", &a)?);
            let mut out = json!({"dagger": value(&r)});
            if latex {
                out["latex"] = json!(latex_poly(&r));
            }
            Ok(ok(out))
        }
        Command::CheckHermitian { a } => {
            let h = is_hermitian(&expr("A", &a)?);
            Ok(Outcome { report: json!({"hermitian": h}), verified: h })
        }
        Command::Pde { model, latex } => pde_command(&load_model(&model.path)?, latex),
        Command::Residual { model, theta, observable: obs } => {
            let m = load_model(&model.path)?;
            let spec = theta
                .or_else(|| m.options.theta.clone())
                .ok_or_else(|| input_error("no metric candidate (use --theta or options.theta)"))?;
            let candidate = parse_candidate(&spec).map_err(|e| located("--theta", e))?;
            let residual = match obs {
                Some(o) => observable_residual(&observable(o), &candidate)?,
                None => metric_residual(&m.hamiltonian, &candidate)?,
            };
            let zero = residual.is_zero();
            Ok(Outcome {
                report: json!({"residual_zero": zero, "residual": candidate_value(&residual)}),
                verified: zero,
            })
        }
        Command::Solve { model, order, latex } => {
            let theta = solve_model(&load_model(&model.path)?, order)?;
            if latex {
                return Ok(ok(json!({"metric": value(&theta), "latex": latex_series(&theta)})));
            }
            Ok(ok(value(&theta)))
        }
        Command::Starlog { model, series, order, observable: obs, latex } => {
            let theta = match (model, series) {
                (_, Some(path)) => {
                    parse_json::<CouplingSeries<G>>(&read(&path)?).map_err(|e| located(&path.display().to_string(), e))?
                }
                (Some(path), None) => {
                    let m = load_model(&path)?;
                    match obs {
                        Some(Observable::N) => {
                            let q = m.quadratic_params()?;
                            expand_gaussian_in_coupling(&q.a, &q.b, m.order(order)?)?
                        }
                        Some(o) => return Err(input_error(format!("no series metric for observable {}", observable_name(o)))),
                        None => solve_model(&m, order)?,
                    }
                }
                (None, None) => return Err(input_error("give --model or --series")),
            };
            let log = star_log(&theta)?;
            if latex {
                return Ok(ok(json!({"log": value(&log), "latex": latex_series(&log)})));
            }
            Ok(ok(value(&log)))
        }
        Command::Certify { model, order, jobs } => {
            let models = model.iter().map(|p| load_model(p)).collect::<Result<Vec<_>, _>>()?;
            let reports = with_jobs(jobs, || {
                models
                    .par_iter()
                    .map(|m| {
                        let theta = solve_model(m, order)?;
                        Ok((m.name.clone(), certify_metric(&theta)?))
                    })
                    .collect::<Result<Vec<_>, CliError>>()
            })??;
            let verified = reports.iter().all(|(_, r)| r.hermitian && r.positive);
            let report = match reports.as_slice() {
                [(_, r)] => value(r),
                _ => Value::Array(
                    reports
                        .iter()
                        .map(|(name, r)| json!({"model": name, "hermitian": r.hermitian, "positive": r.positive, "order": r.order}))
                        .collect(),
                ),
            };
            Ok(Outcome { report, verified })
        }
        Command::Family { model, observable: obs, order } => family(&load_model(&model.path)?, obs, order),
        Command::Berry2x2 { point } => match point.get() {
            Some(q) => berry_point(q),
            None => Ok(monodromy()),
        },
        Command::BerryOsc { model, point } => berry_osc(model.as_deref(), point.get()),
        Command::ScanLocus { point, extent, steps, jobs } => {
            if let Some([q1, q2]) = point.get() {
                return Ok(ok(locus_record(q1, q2)));
            }
            if steps < 2 || !(extent.is_finite() && extent > 0.0) {
                return Err(input_error("scan needs --steps ≥ 2 and a positive --extent"));
            }
            let at = |k: usize| -extent + 2.0 * extent * k as f64 / (steps - 1) as f64;
            let records = with_jobs(jobs, || {
                (0..steps * steps).into_par_iter().map(|k| locus_record(at(k / steps), at(k % steps))).collect::<Vec<_>>()
            })?;
            Ok(ok(Value::Array(records)))
        }
        Command::FiniteOracle { n, trials, seed, tolerance, jobs } => {
            let rep = with_jobs(jobs, || isomorphism_oracle(n, trials, seed, tolerance))??;
            let verified = rep.failed == 0;
            Ok(Outcome { report: value(&rep), verified })
        }
        Command::EmitLatex { model, order } => {
            let m = load_model(&model.path)?;
            let mut out = json!({"hamiltonian": hamiltonian_latex(&m.hamiltonian)});
            if m.hamiltonian.coupling.is_some() && m.order(order).is_ok() {
                let theta = solve_model(&m, order)?;
                out["metric"] = json!(latex_series(&theta));
                out["log"] = json!(latex_series(&star_log(&theta)?));
            }
            Ok(ok(out))
        }
    }
}

fn pde_command(m: &ModelFile, latex: bool) -> Result<Outcome, CliError> {
    let spec = &m.hamiltonian;
    let finish = |op: moyal_core::metric::PdeOperator<G>| if spec.hbar_one { op.eval_hbar_one() } else { op };
    let op = finish(pde_operator(&spec.h0)?);
    let mut out = json!({"operator": pde(&op)});
    if latex {
        out["latex"] = json!(pde_latex(&op));
    }
    if let Some(c) = &spec.coupling {
        // The operator is linear in H, so the perturbation contributes its own piece.
        let v = finish(pde_operator(&c.v)?);
        out["coupling"] = json!({"name": c.name, "operator": pde(&v)});
        if latex {
            out["coupling"]["latex"] = json!(pde_latex(&v));
        }
    }
    Ok(ok(out))
}

fn exp_quadratic(coeff: G, x: u32, p: i32) -> Result<ExpQuadForm<G>, Error> {
    ExpQuadForm::exp(P::term(Monomial::new(x, p, -1), coeff))
}

fn family(m: &ModelFile, obs: Option<Observable>, order: Option<usize>) -> Result<Outcome, CliError> {
    let q = m.quadratic_params()?;
    let spec = &m.hamiltonian;
    let wanted: Vec<Observable> = match obs {
        Some(o) => vec![o],
        None if !m.options.observables.is_empty() => m.options.observables.iter().map(|s| parse_observable(s)).collect(),
        None => vec![Observable::P, Observable::X, Observable::N],
    };
    let half = G::ratio(1, 2);
    let mut out = serde_json::Map::new();
    let mut verified = true;
    for o in wanted {
        let entry = match o {
            Observable::P | Observable::X => {
                // exp(r p²/ħ) with r = −c/(2b), or exp(t x²/ħ) with t = c/(2a).
                let (den, sign, x, p) = if o == Observable::P { (&q.b, -1, 0, 2) } else { (&q.a, 1, 2, 0) };
                let inv = den.inv().ok_or_else(|| input_error("zero coefficient in the quadratic model"))?;
                let coeff = &(&(&q.c * &inv) * &half) * &G::from_int(sign);
                let theta = exp_quadratic(coeff, x, p)?;
                let zero = metric_residual(spec, &MetricCandidate::ExpQuad(theta.clone()))?.is_zero()
                    && observable_residual(&observable(o), &MetricCandidate::ExpQuad(theta.clone()))?.is_zero();
                verified &= zero;
                json!({"metric": value(&theta), "residual_zero": zero})
            }
            Observable::N => {
                let k = m.order(order)?;
                let theta = expand_gaussian_in_coupling(&q.a, &q.b, k)?;
                let h = HamiltonianSpec::with_coupling(
                    &P::p().pow(2).scale(&q.a) + &P::x().pow(2).scale(&q.b),
                    "c",
                    &P::x() * &P::p().scale(&G::i()),
                );
                let zero = metric_residual_series(&h, &theta)?.is_zero();
                let linear = log_linear_in_n_check(&q.a, &q.b, k)?;
                verified &= zero && linear;
                json!({
                    "metric": value(&theta),
                    "log": value(&star_log(&theta)?),
                    "residual_zero": zero,
                    "log_linear_in_N": linear,
                })
            }
        };
        out.insert(observable_name(o).into(), entry);
    }
    Ok(Outcome { report: Value::Object(out), verified })
}

fn monodromy() -> Outcome {
    let f = holonomy_exceptional();
    let c = Complex64::new;
    let exact = CMatrix::from_2x2(c(-1.0, 0.0), c(0.0, -2.0), c(0.0, 0.0), c(1.0, 0.0));
    let deviation = (&f - &exact).max_norm();
    let m = monodromy_exact();
    let swaps = apply_exact(&m, &eigenvector_leading(1)) == eigenvector_leading(-1)
        && apply_exact(&m, &eigenvector_leading(-1)) == eigenvector_leading(1);
    Outcome {
        report: json!({"monodromy": matrix(&f), "deviation": deviation, "swaps_eigenvectors": swaps}),
        verified: deviation <= 1e-12 && swaps,
    }
}

fn berry_point(q: [f64; 2]) -> Result<Outcome, CliError> {
    let a = solve_connection_2x2(q)?;
    let residual = verify_connection_matrix(&hamiltonian(q), &hamiltonian_partials(), &a)?;
    let g = gauge_fixed_connection(q)?;
    let deviation = (&a[0] - &g[0]).max_norm().max((&a[1] - &g[1]).max_norm());
    Ok(Outcome {
        report: json!({
            "q1": q[0],
            "q2": q[1],
            "A1": matrix(&a[0]),
            "A2": matrix(&a[1]),
            "residual": residual,
            "gauge_fixed_deviation": deviation,
        }),
        verified: residual <= 1e-10 && deviation <= 1e-10,
    })
}

fn locus_record(q1: f64, q2: f64) -> Value {
    let v = 4.0 * q1 + q2 * q2;
    let sign = if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    };
    json!({"q1": q1, "q2": q2, "locus_value": v, "region_sign": sign})
}

fn berry_osc(model: Option<&Path>, point: Option<[f64; 2]>) -> Result<Outcome, CliError> {
    let conn = moyal_connection_solve()?;
    let component = |i: usize| {
        json!({"p2": ratfunc(&conn.r[i]), "xp": ratfunc(&conn.s[i]), "x2": ratfunc(&conn.t[i])})
    };
    let residual_zero = moyal_residual(&conn).iter().all(|r| r.is_zero());
    let curvature_zero = moyal_curvature(&conn).is_zero();
    let locus = singular_locus(&conn);
    let locus_ok = locus == locus_polynomial().normalized();
    let mut out = json!({
        "A1": component(0),
        "A2": component(1),
        "residual_zero": residual_zero,
        "curvature_zero": curvature_zero,
        "locus": locus.display_with(&["q1", "q2"]),
    });
    if let Some(path) = model {
        let m = load_model(path)?;
        let prov = m
            .quadratic_params()?
            .provenance
            .ok_or_else(|| input_error(format!("{}: needs omega, alpha, beta parameters", path.display())))?;
        let r = classify_oscillator(&prov.omega, &prov.alpha, &prov.beta)?;
        out["region"] = json!({
            "q1": value(&r.q1),
            "q2": value(&r.q2),
            "locus_value": value(&r.value),
            "region_sign": r.region,
            "distance": r.distance,
            "origin_radius": origin_radius(prov.omega.to_f64_pair().0),
        });
    }
    if let Some([q1, q2]) = point {
        out["point"] = locus_record(q1, q2);
    }
    Ok(Outcome { report: out, verified: residual_zero && curvature_zero && locus_ok })
}
