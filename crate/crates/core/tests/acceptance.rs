//! Acceptance criteria 1-8. Runs as a plain binary and prints one line per
//! criterion; exits nonzero if any criterion fails.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use umbral::enumeration::{
    brute_force_parking, brute_force_reluctant, closed_form_count, count_bounded, goncarov_partition, BoundSpec,
    Family, TreeClass,
};
use umbral::goncarov::{delta_abel, goncarov_determinant, goncarov_recursion};
use umbral::identities::{
    binomial_type_check, binomial_type_counterexample, binomial_type_sides, biorthogonality_check, run_suite, Suite,
};
use umbral::rational::{binomial, int, rat, Rational};
use umbral::{BasicSequence, GoncarovBasis, Grid, OperatorSpec, Poly};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_int_grid(rng: &mut StdRng, len: usize) -> Grid {
    Grid::list((0..len).map(|_| int(rng.gen_range(-5..=5))).collect())
}

fn random_rational(rng: &mut StdRng) -> Rational {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=6))
}

fn random_rational_grid(rng: &mut StdRng, len: usize) -> Grid {
    Grid::list((0..len).map(|_| random_rational(rng)).collect())
}

fn non_decreasing(len: usize, max: u64) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u64>| {
                let lo = v.last().copied().unwrap_or(1);
                (lo..=max).map(move |z| {
                    let mut w = v.clone();
                    w.push(z);
                    w
                })
            })
            .collect();
    }
    out
}

fn criterion_1() -> Outcome {
    let mut rng = StdRng::seed_from_u64(1);
    let mut checks = 0;
    for op in OperatorSpec::delta_presets() {
        for _ in 0..5 {
            let grid = random_int_grid(&mut rng, 8);
            for n in 0..=8 {
                let r = biorthogonality_check(&op, &grid, n).map_err(|e| e.to_string())?;
                ensure(r.passed, || format!("{op} on {grid}: {:?}", r.detail))?;
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} bases, i <= n <= 8"))
}

fn criterion_2() -> Outcome {
    let mut rng = StdRng::seed_from_u64(2);
    let mut grids = vec![random_int_grid(&mut rng, 6), random_rational_grid(&mut rng, 6)];
    grids.push(Grid::affine(rat(1, 2), int(-1)));
    let mut checks = 0;
    for op in OperatorSpec::delta_presets() {
        for grid in &grids {
            for n in 0..=6 {
                let rec = goncarov_recursion(&op, grid, n).map_err(|e| e.to_string())?;
                let det = goncarov_determinant(&op, grid, n).map_err(|e| e.to_string())?;
                let part = goncarov_partition(&op, grid, n).map_err(|e| e.to_string())?;
                ensure(rec == det, || format!("{op} {grid} n={n}: recursion {rec} != determinant {det}"))?;
                ensure(rec == part, || format!("{op} {grid} n={n}: recursion {rec} != partition {part}"))?;
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} triples agree, n <= 6"))
}

fn criterion_3() -> Outcome {
    let golden: [(Family, &[u64]); 4] = [
        (Family::Classical, &[1, 3, 16, 125, 1296, 16807]),
        (Family::Laguerre, &[1, 5, 46, 629, 11496]),
        (Family::InverseAbel, &[1, 5, 43, 549, 9341]),
        (Family::Exponential, &[1, 4, 29, 311, 4447]),
    ];
    let both = |family: Family, a: u64, b: u64, n: usize| -> Result<(BigInt, BigInt), String> {
        let closed = closed_form_count(family, a, b, n).map_err(|e| e.to_string())?;
        let bounds = BoundSpec::affine(a, b, n).map_err(|e| e.to_string())?;
        let counted = count_bounded(&family.operator(), &bounds).map_err(|e| e.to_string())?;
        Ok((closed, counted))
    };
    let mut checks = 0;
    for (family, values) in golden {
        for (i, &v) in values.iter().enumerate() {
            let n = i + 1;
            let (closed, counted) = both(family, 1, 1, n)?;
            ensure(closed == BigInt::from(v) && counted == closed, || {
                format!("{family} n={n}: closed {closed}, counted {counted}, expected {v}")
            })?;
            checks += 1;
        }
    }
    for n in 1..=8 {
        let (closed, counted) = both(Family::LowerFactorial, 1, 1, n)?;
        let labels = Family::LowerFactorial.labeling_factor(n);
        ensure(closed == BigInt::from(1) && counted == labels, || {
            format!("strict paths n={n}: closed {closed}, counted {counted}")
        })?;
        checks += 1;
    }
    for k in 1..=3u64 {
        for n in 1..=8usize {
            let kn = k as usize * n;
            let expected = binomial(kn + n, n) / BigInt::from(kn + 1);
            let (closed, counted) = both(Family::FussCatalan, 1, k, n)?;
            let labels = Family::FussCatalan.labeling_factor(n);
            ensure(closed == expected && counted == &expected * labels, || {
                format!("Fuss-Catalan k={k} n={n}: closed {closed}, counted {counted}, expected {expected}")
            })?;
            checks += 1;
        }
    }
    Ok(format!("{checks} golden values"))
}

fn criterion_4() -> Outcome {
    let pairs = [(int(0), int(1)), (int(1), int(1)), (int(2), int(-1)), (rat(1, 2), rat(1, 3))];
    let mut checks = 0;
    for op in OperatorSpec::delta_presets() {
        for (a, b) in &pairs {
            let basis = GoncarovBasis::new(&op, &Grid::affine(a.clone(), b.clone())).map_err(|e| e.to_string())?;
            for n in 0..=8 {
                let closed = delta_abel(&op, a, b, n).map_err(|e| e.to_string())?;
                let rec = basis.get(n).map_err(|e| e.to_string())?;
                ensure(closed == rec, || format!("{op} a={a} b={b} n={n}: {closed} != {rec}"))?;
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} Abel-type polynomials, n <= 8"))
}

fn criterion_5() -> Outcome {
    let d = OperatorSpec::derivative();
    let mut parking = 0;
    for n in 0..=4 {
        for b in non_decreasing(n, 4) {
            let spec = BoundSpec::new(b.clone(), 4).map_err(|e| e.to_string())?;
            let brute = brute_force_parking(&spec).map_err(|e| e.to_string())?;
            let counted = count_bounded(&d, &spec).map_err(|e| e.to_string())?;
            ensure(counted == BigInt::from(brute), || format!("parking {b:?}: {counted} != {brute}"))?;
            parking += 1;
        }
    }
    let classes = [TreeClass::Singleton, TreeClass::AllTrees, TreeClass::RootedPaths, TreeClass::Stars];
    let mut vectors = 0;
    for x in 1..=4 {
        for n in 1..=3 {
            for b in non_decreasing(n, x) {
                let spec = BoundSpec::new(b.clone(), x).map_err(|e| e.to_string())?;
                for class in classes {
                    let op = OperatorSpec::from_name(class.operator_name()).map_err(|e| e.to_string())?;
                    let brute = brute_force_reluctant(class, &spec).map_err(|e| e.to_string())?;
                    let counted = count_bounded(&op, &spec).map_err(|e| e.to_string())?;
                    ensure(counted == BigInt::from(brute), || {
                        format!("{class} {b:?} x={x}: {counted} != {brute}")
                    })?;
                }
                vectors += 1;
            }
        }
    }
    ensure(vectors >= 20, || format!("only {vectors} bound vectors"))?;
    Ok(format!("{parking} parking bound vectors, {vectors} reluctant bound vectors x 4 classes"))
}

fn criterion_6() -> Outcome {
    let mut rng = StdRng::seed_from_u64(6);
    let suites = [Suite::DiffRel, Suite::Shift, Suite::Binomial, Suite::Perturb, Suite::Integral, Suite::Appell];
    let mut checks = 0;
    for op in OperatorSpec::delta_presets() {
        let grids = [random_int_grid(&mut rng, 8), random_rational_grid(&mut rng, 8)];
        for grid in &grids {
            for suite in suites {
                for r in run_suite(suite, &op, grid, 7).map_err(|e| e.to_string())? {
                    ensure(r.passed, || format!("{op} {grid} {}: {:?}", r.name, r.detail))?;
                    checks += 1;
                }
            }
        }
    }
    Ok(format!("{checks} identity checks, n <= 7, Appell to order 7"))
}

fn criterion_7() -> Outcome {
    let mut rng = StdRng::seed_from_u64(7);
    let mut checks = 0;
    for op in OperatorSpec::delta_presets() {
        for b in 0..=2 {
            let grid = Grid::affine(int(0), int(b));
            for _ in 0..3 {
                let (x, y) = (random_rational(&mut rng), random_rational(&mut rng));
                for n in 0..=6 {
                    let r = binomial_type_check(&op, &grid, n, &x, &y).map_err(|e| e.to_string())?;
                    ensure(r.passed, || format!("{op} b={b}: {} {:?}", r.name, r.detail))?;
                    checks += 1;
                }
            }
        }
    }
    let d = OperatorSpec::derivative();
    let bad = Grid::from_ints(&[0, 1, 3]);
    let (x, y, n) = binomial_type_counterexample(&d, &bad, 3)
        .map_err(|e| e.to_string())?
        .ok_or("grid (0,1,3) produced no violation")?;
    let polys = GoncarovBasis::new(&d, &bad).and_then(|g| g.polys(n)).map_err(|e| e.to_string())?;
    let (lhs, rhs) = binomial_type_sides(&polys, n, &x, &y);
    ensure(lhs != rhs, || "reported violation does not reproduce".into())?;
    Ok(format!("{checks} positive checks; grid (0,1,3) fails at x={x} y={y} n={n}: {lhs} != {rhs}"))
}

/// The worked displays for `t_0..t_3` in terms of `p_i(x)` and `p_i(z_k)`.
fn displayed(basic: &BasicSequence, z: &[Rational], n: usize) -> Poly {
    let p = |i: usize| basic.get(i);
    let pz = |i: usize, k: usize| basic.get(i).eval(&z[k]);
    let c = |v: i64| int(v);
    match n {
        0 => Poly::one(),
        1 => &p(1) - &Poly::constant(pz(1, 0)),
        2 => {
            let k = c(2) * pz(1, 0) * pz(1, 1) - pz(2, 0);
            &(&p(2) - &p(1).scale(&(c(2) * pz(1, 1)))) + &Poly::constant(k)
        }
        3 => {
            let lin = c(6) * pz(1, 1) * pz(1, 2) - c(3) * pz(2, 1);
            let k = -pz(3, 0) + c(3) * pz(2, 0) * pz(1, 2) - c(6) * pz(1, 0) * pz(1, 1) * pz(1, 2)
                + c(3) * pz(1, 0) * pz(2, 1);
            &(&(&p(3) - &p(2).scale(&(c(3) * pz(1, 2)))) + &p(1).scale(&lin)) + &Poly::constant(k)
        }
        _ => unreachable!(),
    }
}

fn criterion_8() -> Outcome {
    let mut rng = StdRng::seed_from_u64(8);
    let ops = [OperatorSpec::derivative(), OperatorSpec::laguerre(), OperatorSpec::touchard()];
    let mut checks = 0;
    for op in &ops {
        let basic = BasicSequence::new(op).map_err(|e| e.to_string())?;
        for _ in 0..4 {
            let z: Vec<Rational> = (0..3).map(|_| random_rational(&mut rng)).collect();
            let grid = Grid::list(z.clone());
            for n in 0..=3 {
                let rec = goncarov_recursion(op, &grid, n).map_err(|e| e.to_string())?;
                let shown = displayed(&basic, &z, n);
                ensure(rec == shown, || format!("{op} {grid} t_{n}: {rec} != {shown}"))?;
                checks += 1;
            }
        }
    }
    ensure(checks == 48, || format!("ran {checks} checks"))?;
    Ok(format!("{checks} displayed formulas match"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("biorthogonality", criterion_1),
        ("triple-route agreement", criterion_2),
        ("closed-form golden values", criterion_3),
        ("Abel-type closed form", criterion_4),
        ("brute-force oracles", criterion_5),
        ("identity suites", criterion_6),
        ("binomial type", criterion_7),
        ("worked t_0..t_3 formulas", criterion_8),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(summary) => println!("criterion {} {name}: PASS ({summary}; {secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({why})", i + 1);
            }
        }
    }
    if failed == 0 {
        println!("acceptance: 8/8 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 8 criteria failed");
        ExitCode::FAILURE
    }
}
