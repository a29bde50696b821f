//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero on any failure not listed in `KNOWN_RED`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use layer_poisson::basis::Width;
use layer_poisson::dirichlet::{basis_u, basis_v, f_poly, multiindex_f};
use layer_poisson::mixed::{d_coeff, e_coeff, mixed_basis_u, mixed_basis_v, p_poly, q_poly};
use layer_poisson::numcheck::{self, CheckResult};
use layer_poisson::particular::{
    inv_laplacian_monomial, inv_laplacian_monomial_alt, ParticularForm,
};
use layer_poisson::polyring::{int, rat};
use layer_poisson::solver::{reduce, solve, solve_with, verify};
use layer_poisson::{parse_poly, BoundaryKind, LayerProblem, MultiIndex, Poly, Rational, Ring};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Outcome {
    ensure(elapsed < limit, || {
        format!("took {elapsed:?}, limit {limit:?}")
    })
}

fn p(src: &str, ring: Ring) -> Poly {
    parse_poly(src, ring).unwrap_or_else(|e| panic!("bad test expression {src:?}: {e}"))
}

/// Byte-exact comparison of canonical text.
fn same_text(name: &str, got: &Poly, expected: &Poly) -> Outcome {
    let (g, e) = (got.to_string(), expected.to_string());
    ensure(g == e, || format!("{name}: got `{g}`, expected `{e}`"))
}

const F_TABLE: [&str; 6] = [
    "y/a",
    "-y/(3*a)*(y^2 - a^2)",
    "y/(15*a)*(3*y^4 - 10*y^2*a^2 + 7*a^4)",
    "-y/(21*a)*(3*y^6 - 21*y^4*a^2 + 49*y^2*a^4 - 31*a^6)",
    "y/(45*a)*(5*y^8 - 60*y^6*a^2 + 249*y^4*a^4 - 620*y^2*a^6 + 381*a^8)",
    "-y/(33*a)*(3*y^10 - 55*y^8*a^2 + 462*y^6*a^4 - 2046*y^4*a^6 + 4191*y^2*a^8 - 2555*a^10)",
];

const DIRICHLET_U: [&str; 6] = [
    "y/a",
    "x*y/a",
    "y/(3*a)*(3*x^2 - y^2 + a^2)",
    "x*y/a*(x^2 - y^2 + a^2)",
    "y/(15*a)*(15*x^4 - 30*x^2*y^2 + 30*x^2*a^2 + 3*y^4 - 10*y^2*a^2 + 7*a^4)",
    "x*y/(3*a)*(3*x^4 - 10*x^2*y^2 + 10*x^2*a^2 + 3*y^4 - 10*y^2*a^2 + 7*a^4)",
];

const P_TABLE: [&str; 6] = [
    "1",
    "-y^2 + 2*a*y",
    "y^4 - 4*a*y^3 + 8*a^3*y",
    "-y^6 + 6*a*y^5 - 40*a^3*y^3 + 96*a^5*y",
    "y^8 - 8*a*y^7 + 112*a^3*y^5 - 896*a^5*y^3 + 2176*a^7*y",
    "-y^10 + 10*a*y^9 - 240*a^3*y^7 + 4032*a^5*y^5 - 32640*a^7*y^3 + 79360*a^9*y",
];

const Q_TABLE: [&str; 6] = [
    "y",
    "-1/3*y^3 + a^2*y",
    "1/5*y^5 - 2*a^2*y^3 + 5*a^4*y",
    "-1/7*y^7 + 3*a^2*y^5 - 25*a^4*y^3 + 61*a^6*y",
    "1/9*y^9 - 4*a^2*y^7 + 70*a^4*y^5 - 1708/3*a^6*y^3 + 1385*a^8*y",
    "-1/11*y^11 + 5*a^2*y^9 - 150*a^4*y^7 + 2562*a^6*y^5 - 20775*a^8*y^3 + 50521*a^10*y",
];

const MIXED_U: [&str; 6] = [
    "1",
    "x",
    "x^2 - y^2 + 2*a*y",
    "x^3 - 3*x*y^2 + 6*a*x*y",
    "x^4 - 6*x^2*y^2 + 12*a*x^2*y + y^4 - 4*a*y^3 + 8*a^3*y",
    "x^5 - 10*x^3*y^2 + 20*a*x^3*y + 5*x*y^4 - 20*a*x*y^3 + 40*a^3*x*y",
];

const MIXED_V: [&str; 6] = [
    "y",
    "x*y",
    "x^2*y - 1/3*y^3 + a^2*y",
    "x^3*y - x*y^3 + 3*a^2*x*y",
    "x^4*y - 2*x^2*y^3 + 6*a^2*x^2*y + 1/5*y^5 - 2*a^2*y^3 + 5*a^4*y",
    "x^5*y - 10/3*x^3*y^3 + 10*a^2*x^3*y + x*y^5 - 10*a^2*x*y^3 + 25*a^4*x*y",
];

fn golden_tables() -> Outcome {
    let start = Instant::now();
    let w = Width::Formal;
    let t0 = Ring::with_width(0);
    let t1 = Ring::with_width(1);
    for (m, src) in F_TABLE.iter().enumerate() {
        if m != 4 {
            same_text(
                &format!("f_{}", 2 * m),
                &f_poly(m, &w).unwrap(),
                &p(src, t0),
            )?;
        }
        same_text(
            &format!("p_{}", 2 * m),
            &p_poly(m, &w).unwrap(),
            &p(P_TABLE[m], t0),
        )?;
        same_text(
            &format!("q_{}", 2 * m),
            &q_poly(m, &w).unwrap(),
            &p(Q_TABLE[m], t0),
        )?;
    }
    for k in 0..6u32 {
        let idx = MultiIndex::from([k]);
        same_text(
            &format!("u_{k}"),
            &basis_u(&idx, 1, &w).unwrap(),
            &p(DIRICHLET_U[k as usize], t1),
        )?;
        same_text(
            &format!("mixed u_{k}"),
            &mixed_basis_u(&idx, 1, &w).unwrap(),
            &p(MIXED_U[k as usize], t1),
        )?;
        same_text(
            &format!("mixed v_{k}"),
            &mixed_basis_v(&idx, 1, &w).unwrap(),
            &p(MIXED_V[k as usize], t1),
        )?;
    }
    within(start.elapsed(), Duration::from_secs(1))?;
    f8_against_display()
}

/// The printed f_8 has 249 where the trace f_8(a) = 0 forces 294. Reported
/// red with the oracle evidence rather than matched against a corrected copy.
fn f8_against_display() -> Outcome {
    let t0 = Ring::with_width(0);
    let printed = p(F_TABLE[4], t0);
    let computed = f_poly(4, &Width::Formal).unwrap();
    if computed == printed {
        return Ok(());
    }
    let at_a = |f: &Poly| {
        f.substitute(t0.y(), &Poly::var(t0, t0.a().unwrap()))
            .unwrap()
            .specialize_width(&int(1))
            .unwrap()
            .constant_value()
            .unwrap()
    };
    let (printed_a, computed_a) = (at_a(&printed), at_a(&computed));
    ensure(computed_a == int(0), || {
        format!("computed f_8(a) = {computed_a}, expected 0")
    })?;
    Err(format!(
        "f_8 differs from the printed display (y^5 a^3 coefficient {} vs {}); \
         printed f_8(a)/a^7 = {printed_a}, computed = 0; \
         computed value also satisfies the series identity and basis traces",
        computed.coeff(&[5, 3]),
        printed.coeff(&[5, 3]),
    ))
}

fn worked_particular_solutions() -> Outcome {
    let start = Instant::now();
    let r1 = Ring::new(1);
    let r3 = Ring::new(3);
    same_text(
        "layered x^4 y^3",
        &inv_laplacian_monomial(&MultiIndex::from([4]), 3, 1).unwrap(),
        &p("1/20*x^4*y^5 - 1/70*x^2*y^7 + 1/2520*y^9", r1),
    )?;
    same_text(
        "swapped x^4 y^3",
        &inv_laplacian_monomial_alt(4, 3),
        &p("1/30*x^6*y^3 - 1/280*x^8*y", r1),
    )?;
    same_text(
        "layered x^(3,2,1) y^3",
        &inv_laplacian_monomial(&MultiIndex::from([3, 2, 1]), 3, 3).unwrap(),
        &p(
            "1/20*x1^3*x2^2*x3*y^5 - 1/420*x1^3*x3*y^7 - 1/140*x1*x2^2*x3*y^7 + 1/2520*x1*x3*y^9",
            r3,
        ),
    )?;
    within(start.elapsed(), Duration::from_millis(100))
}

const EXAMPLE_1: &str = "1/20*x^4*y^5 - 1/20*x^4*y + 8*x^4 - 1/70*x^2*y^7 + 1/10*x^2*y^3 \
    - 48*x^2*y^2 + 1677/35*x^2*y - 8*x^2 + 1/2520*y^9 - 1/100*y^5 + 8*y^4 - 559/35*y^3 \
    + 8*y^2 - 239/12600*y + 1";

const EXAMPLE_2: &str = "1/20*x1^3*x2^2*x3*y^5 - 1/20*x1^3*x2^2*x3*y - 1/420*x1^3*x3*y^7 \
    + 1/60*x1^3*x3*y^3 - 1/70*x1^3*x3*y - 1/140*x1*x2^2*x3*y^7 + 1/20*x1*x2^2*x3*y^3 \
    - 3/70*x1*x2^2*x3*y + 1/2520*x1*x3*y^9 - 1/100*x1*x3*y^5 + 1/35*x1*x3*y^3 \
    - 239/12600*x1*x3*y";

const EXAMPLE_3: &str = "1/20*x1^3*x2^2*x3*y^5 - 1/4*x1^3*x2^2*x3*y - 1/420*x1^3*x3*y^7 \
    + 1/12*x1^3*x3*y^3 - 7/30*x1^3*x3*y - 1/140*x1*x2^2*x3*y^7 + 1/4*x1*x2^2*x3*y^3 \
    - 7/10*x1*x2^2*x3*y + 1/2520*x1*x3*y^9 - 1/20*x1*x3*y^5 + 7/15*x1*x3*y^3 \
    - 323/280*x1*x3*y";

fn check_example(
    name: &str,
    problem: &LayerProblem,
    expected_solution: &Poly,
    expected_upper: &Poly,
) -> Outcome {
    let (_, lower, upper) = reduce(problem, ParticularForm::Layered).unwrap();
    same_text(
        &format!("{name} reduced upper data"),
        &upper,
        expected_upper,
    )?;
    ensure(lower == *problem.lower(), || {
        format!("{name}: lower data changed")
    })?;
    let report = solve(problem).map_err(|e| format!("{name}: {e}"))?;
    same_text(name, &report.u, expected_solution)?;
    let check = verify(expected_solution, problem).unwrap();
    ensure(check.verified, || {
        format!("{name}: published solution does not verify")
    })
}

fn end_to_end_examples() -> Outcome {
    let start = Instant::now();
    let r1 = Ring::new(1);
    let r3 = Ring::new(3);
    let chebyshev = p("8*x^4 - 8*x^2 + 1", r1);
    let ex1 = LayerProblem::new(
        1,
        int(1),
        p("x^4*y^3", r1),
        BoundaryKind::Dirichlet,
        chebyshev.clone(),
        chebyshev,
    )
    .unwrap();
    check_example(
        "Example 1",
        &ex1,
        &p(EXAMPLE_1, r1),
        &p("159/20*x^4 - 559/70*x^2 + 2519/2520", r1),
    )?;

    let rhs = p("x1^3*x2^2*x3*y^3", r3);
    let zero = Poly::zero(r3);
    let ex2 = LayerProblem::new(
        3,
        int(1),
        rhs.clone(),
        BoundaryKind::Dirichlet,
        zero.clone(),
        zero.clone(),
    )
    .unwrap();
    check_example(
        "Example 2",
        &ex2,
        &p(EXAMPLE_2, r3),
        &p(
            "-1/20*x1^3*x2^2*x3 + 1/420*x1^3*x3 + 1/140*x1*x2^2*x3 - 1/2520*x1*x3",
            r3,
        ),
    )?;

    let ex3 = LayerProblem::new(
        3,
        int(1),
        rhs,
        BoundaryKind::DirichletNeumann,
        zero.clone(),
        zero,
    )
    .unwrap();
    check_example(
        "Example 3",
        &ex3,
        &p(EXAMPLE_3, r3),
        &p(
            "-1/4*x1^3*x2^2*x3 + 1/60*x1^3*x3 + 1/20*x1*x2^2*x3 - 1/280*x1*x3",
            r3,
        ),
    )?;
    within(start.elapsed(), Duration::from_secs(1))
}

fn multi_index_identity() -> Outcome {
    let w = Width::Formal;
    let lhs = multiindex_f(&MultiIndex::from([2, 1, 1]), &w).unwrap();
    let rhs = f_poly(4, &w).unwrap().scale(&rat(1, 35));
    same_text("f_2(2,1,1)", &lhs, &rhs)
}

const WIDTHS: [(i64, i64); 3] = [(1, 1), (1, 2), (7, 3)];

fn random_poly(rng: &mut StdRng, ring: Ring, max_deg: u32, with_y: bool, max_terms: usize) -> Poly {
    let mut out = Poly::zero(ring);
    for _ in 0..rng.gen_range(0..=max_terms) {
        let mut budget = rng.gen_range(0..=max_deg);
        let mut exps = vec![0i32; ring.nvars()];
        let slots = if with_y { ring.dim() + 1 } else { ring.dim() };
        while budget > 0 && slots > 0 {
            exps[rng.gen_range(0..slots)] += 1;
            budget -= 1;
        }
        let c = rat(rng.gen_range(-9..=9), rng.gen_range(1..=6));
        out = &out + &Poly::monomial(ring, exps, c);
    }
    out
}

fn random_problem(rng: &mut StdRng) -> LayerProblem {
    let n = rng.gen_range(1..=3);
    let ring = Ring::new(n);
    let (num, den) = WIDTHS[rng.gen_range(0..WIDTHS.len())];
    let kind = if rng.gen_bool(0.5) {
        BoundaryKind::Dirichlet
    } else {
        BoundaryKind::DirichletNeumann
    };
    LayerProblem::new(
        n,
        rat(num, den),
        random_poly(rng, ring, 8, true, 3),
        kind,
        random_poly(rng, ring, 8, false, 3),
        random_poly(rng, ring, 8, false, 3),
    )
    .unwrap()
}

fn with_data(base: &LayerProblem, rhs: Poly, lower: Poly, upper: Poly) -> LayerProblem {
    LayerProblem::new(
        base.dim(),
        base.width().clone(),
        rhs,
        base.kind(),
        lower,
        upper,
    )
    .unwrap()
}

fn reflect_y(poly: &Poly, a: &Rational) -> Poly {
    let ring = poly.ring();
    let shifted = &Poly::constant(ring, a.clone()) - &Poly::y(ring);
    poly.substitute(ring.y(), &shifted).unwrap()
}

fn property_suite() -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(20_240_517);
    for i in 0..500 {
        let problem = random_problem(&mut rng);
        let report = solve(&problem).map_err(|e| format!("problem {i}: {e}"))?;
        ensure(report.verified, || format!("problem {i} not verified"))?;

        if i % 5 != 0 {
            continue;
        }
        let ring = problem.ring();
        let zero = Poly::zero(ring);

        // superposition
        let parts = [
            with_data(&problem, problem.rhs().clone(), zero.clone(), zero.clone()),
            with_data(
                &problem,
                zero.clone(),
                problem.lower().clone(),
                zero.clone(),
            ),
            with_data(
                &problem,
                zero.clone(),
                zero.clone(),
                problem.upper().clone(),
            ),
        ];
        let mut sum = Poly::zero(ring);
        for part in &parts {
            sum = &sum + &solve(part).map_err(|e| e.to_string())?.u;
        }
        ensure(sum == report.u, || {
            format!("problem {i}: superposition fails")
        })?;

        // joint linearity
        let other = with_data(
            &problem,
            random_poly(&mut rng, ring, 6, true, 2),
            random_poly(&mut rng, ring, 6, false, 2),
            random_poly(&mut rng, ring, 6, false, 2),
        );
        let (alpha, beta) = (rat(3, 2), rat(-2, 5));
        let combined = with_data(
            &problem,
            &problem.rhs().scale(&alpha) + &other.rhs().scale(&beta),
            &problem.lower().scale(&alpha) + &other.lower().scale(&beta),
            &problem.upper().scale(&alpha) + &other.upper().scale(&beta),
        );
        let lhs = solve(&combined).map_err(|e| e.to_string())?.u;
        let rhs =
            &report.u.scale(&alpha) + &solve(&other).map_err(|e| e.to_string())?.u.scale(&beta);
        ensure(lhs == rhs, || format!("problem {i}: linearity fails"))?;

        if problem.kind() == BoundaryKind::Dirichlet {
            // y <-> a - y swaps the boundaries and reflects the solution
            let a = problem.width();
            let mirrored = with_data(
                &problem,
                reflect_y(problem.rhs(), a),
                problem.upper().clone(),
                problem.lower().clone(),
            );
            let u = solve(&mirrored).map_err(|e| e.to_string())?.u;
            ensure(u == reflect_y(&report.u, a), || {
                format!("problem {i}: reflection fails")
            })?;
        }

        if problem.dim() == 1 {
            let swapped =
                solve_with(&problem, ParticularForm::Swapped).map_err(|e| e.to_string())?;
            ensure(swapped.u == report.u, || {
                format!("problem {i}: particular-solution independence fails")
            })?;
        }
    }
    within(start.elapsed(), Duration::from_secs(30))
}

/// Truncates to powers `t^0..t^{max}` of the variable `t`.
fn truncate(poly: &Poly, t: usize, max: i32) -> Poly {
    let terms = poly
        .terms()
        .filter(|(e, _)| e.as_slice()[t] <= max)
        .map(|(e, c)| (e.as_slice().to_vec(), c.clone()));
    Poly::from_terms(poly.ring(), terms).unwrap()
}

fn generating_function_identities() -> Outcome {
    const M: usize = 8;
    // ring (t, y, a): t plays the spatial slot
    let ring = Ring::with_width(1);
    let (t, y, a) = (0usize, 1usize, 2usize);
    let lift = |poly: &Poly| poly.embed(ring).unwrap();
    let tpow = |e: i32, c: Rational| Poly::monomial(ring, vec![e, 0, 0], c);
    let var = |i: usize| Poly::var(ring, i);
    let inv_fact =
        |j: u32| Rational::new(1.into(), (1..=j).map(num_bigint::BigInt::from).product());
    let max = 2 * M as i32 + 1;

    let sinh_a: Poly = (0..=M as u32)
        .map(|i| &var(a).pow(2 * i + 1) * &tpow((2 * i + 1) as i32, inv_fact(2 * i + 1)))
        .fold(Poly::zero(ring), |acc, x| &acc + &x);
    let sinh_y: Poly = (0..=M as u32)
        .map(|i| &var(y).pow(2 * i + 1) * &tpow((2 * i + 1) as i32, inv_fact(2 * i + 1)))
        .fold(Poly::zero(ring), |acc, x| &acc + &x);
    let cosh_a: Poly = (0..=M as u32)
        .map(|i| &var(a).pow(2 * i) * &tpow((2 * i) as i32, inv_fact(2 * i)))
        .fold(Poly::zero(ring), |acc, x| &acc + &x);

    // c_{2m} = (-1)^m f_{2m} / (2m)!
    let c_series = (0..=M)
        .map(|m| {
            let mut s = inv_fact(2 * m as u32);
            if m % 2 == 1 {
                s = -s;
            }
            &lift(&f_poly(m, &Width::Formal).unwrap()).scale(&s) * &tpow(2 * m as i32, int(1))
        })
        .fold(Poly::zero(ring), |acc, x| &acc + &x);
    let lhs = truncate(&(&c_series * &sinh_a), t, max);
    ensure(lhs == truncate(&sinh_y, t, max), || {
        "sinh division identity fails".to_string()
    })?;

    let d_series = (0..=M)
        .map(|m| &lift(&d_coeff(m)) * &tpow(2 * m as i32, int(1)))
        .fold(Poly::zero(ring), |acc, x| &acc + &x);
    let a_minus_y = &var(a) - &var(y);
    let cosh_shifted = (0..=M as u32)
        .map(|m| &a_minus_y.pow(2 * m) * &tpow((2 * m) as i32, inv_fact(2 * m)))
        .fold(Poly::zero(ring), |acc, x| &acc + &x);
    ensure(
        truncate(&(&d_series * &cosh_a), t, max) == truncate(&cosh_shifted, t, max),
        || "cosh division identity (p family) fails".to_string(),
    )?;

    let e_series = (0..=M)
        .map(|m| &lift(&e_coeff(m)) * &tpow(2 * m as i32, int(1)))
        .fold(Poly::zero(ring), |acc, x| &acc + &x);
    let sinh_over_t = (0..=M as u32)
        .map(|m| &var(y).pow(2 * m + 1) * &tpow((2 * m) as i32, inv_fact(2 * m + 1)))
        .fold(Poly::zero(ring), |acc, x| &acc + &x);
    ensure(
        truncate(&(&e_series * &cosh_a), t, max) == truncate(&sinh_over_t, t, max),
        || "cosh division identity (q family) fails".to_string(),
    )?;

    // the tables are the signed, factorial-scaled series coefficients
    for m in 0..=M {
        let mut s =
            Rational::from_integer((1..=2 * m as u32).map(num_bigint::BigInt::from).product());
        if m % 2 == 1 {
            s = -s;
        }
        ensure(
            p_poly(m, &Width::Formal).unwrap() == d_coeff(m).scale(&s),
            || format!("p_{} is not (-1)^m (2m)! d_{}", 2 * m, 2 * m),
        )?;
        ensure(
            q_poly(m, &Width::Formal).unwrap() == e_coeff(m).scale(&s),
            || format!("q_{} is not (-1)^m (2m)! e_{}", 2 * m, 2 * m),
        )?;
    }
    Ok(())
}

fn summarize(name: &str, checks: &[CheckResult]) -> Outcome {
    let failed: Vec<_> = checks.iter().filter(|c| !c.passed).collect();
    ensure(failed.is_empty(), || {
        let first = failed[0];
        format!(
            "{name}: {} of {} failed, first: {} (error {:e} > {:e})",
            failed.len(),
            checks.len(),
            first.name,
            first.error,
            first.tolerance
        )
    })
}

fn numeric_cross_checks() -> Outcome {
    let start = Instant::now();
    let moments = numcheck::moment_checks(4, 20);
    ensure(moments.len() == 2 * 5 * 20, || {
        "unexpected moment sample count".into()
    })?;
    summarize("moments", &moments)?;
    summarize("series", &numcheck::series_checks())?;
    let conv = numcheck::convolution_checks();
    ensure(conv.len() == 10, || {
        "unexpected convolution sample count".into()
    })?;
    summarize("convolution", &conv)?;
    summarize("recurrence", &numcheck::recurrence_checks())?;
    summarize("kernels", &numcheck::kernel_checks())?;
    within(start.elapsed(), Duration::from_secs(60))
}

/// Basis harmonicity and traces for every |k| <= 12, n <= 3.
fn basis_oracles() -> Outcome {
    for (num, den) in WIDTHS {
        let a = rat(num, den);
        let w = Width::Value(a.clone());
        for n in 1..=3usize {
            let ring = Ring::new(n);
            let zero = Poly::zero(ring);
            let top = Poly::constant(ring, a.clone());
            let max: u32 = if n == 3 { 8 } else { 12 };
            for k in MultiIndex::new(vec![max; n]).below() {
                if k.degree() > 12 || (n == 3 && k.degree() > 8) {
                    continue;
                }
                let xk = Poly::xk_ym(ring, &k, 0, int(1));
                let at = |q: &Poly, v: &Poly| q.substitute(ring.y(), v).unwrap();
                let dy = |q: &Poly| q.diff(ring.y(), 1).unwrap();

                let u = basis_u(&k, n, &w).unwrap();
                let v = basis_v(&k, n, &w).unwrap();
                let mu = mixed_basis_u(&k, n, &w).unwrap();
                let mv = mixed_basis_v(&k, n, &w).unwrap();
                for (label, b) in [("u", &u), ("v", &v), ("mixed u", &mu), ("mixed v", &mv)] {
                    ensure(b.laplacian(n).unwrap().is_zero(), || {
                        format!("{label}_{k:?} not harmonic (a = {a})")
                    })?;
                }
                ensure(at(&u, &zero).is_zero() && at(&u, &top) == xk, || {
                    format!("u_{k:?} traces wrong")
                })?;
                ensure(at(&v, &zero) == xk && at(&v, &top).is_zero(), || {
                    format!("v_{k:?} traces wrong")
                })?;
                ensure(at(&mu, &zero) == xk && at(&dy(&mu), &top).is_zero(), || {
                    format!("mixed u_{k:?} traces wrong")
                })?;
                ensure(at(&mv, &zero).is_zero() && at(&dy(&mv), &top) == xk, || {
                    format!("mixed v_{k:?} traces wrong")
                })?;
            }
        }
    }
    Ok(())
}

/// Criteria that stay red by design: (criterion prefix, message fragment).
/// Any other failure, or a different failure on these, fails the run.
const KNOWN_RED: [(&str, &str); 1] = [("1 ", "f_8 differs from the printed display")];

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (
            "1 golden tables f, u (Dirichlet), p, q, u/v (mixed)",
            golden_tables,
        ),
        ("2 worked particular solutions", worked_particular_solutions),
        ("3 end-to-end Examples 1-3", end_to_end_examples),
        (
            "4 multi-index identity f_2(2,1,1) = f_8/35",
            multi_index_identity,
        ),
        ("5 randomized solve/verify property suite", property_suite),
        ("5b basis harmonicity and traces, |k| <= 12", basis_oracles),
        (
            "6 generating-function ring identities, M = 8",
            generating_function_identities,
        ),
        ("7 numeric cross-checks", numeric_cross_checks),
    ];
    let mut unexpected = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        match run() {
            Ok(()) => println!("PASS  criterion {name} ({:.2?})", start.elapsed()),
            Err(msg) => {
                let known = KNOWN_RED
                    .iter()
                    .any(|(n, fragment)| name.starts_with(n) && msg.contains(fragment));
                if !known {
                    unexpected += 1;
                }
                let tag = if known {
                    " [known red, see README]"
                } else {
                    ""
                };
                println!("FAIL  criterion {name}: {msg}{tag}");
            }
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
