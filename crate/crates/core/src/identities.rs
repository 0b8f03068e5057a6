//! Algebraic identities of generalized Gončarov bases as executable checks.
//!
//! Each check computes both sides independently and compares them exactly.
//! The `run_suite` entry point groups them the way the CLI exposes them.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::goncarov::{
    appell_check, goncarov_recursion, integral_formula_check, perturbed_basis, CheckReport, GoncarovBasis,
};
use crate::grid::Grid;
use crate::operators::{apply_power, BasicSequence, OperatorSpec};
use crate::poly::Poly;
use crate::rational::{binomial_rat, factorial_rat, falling_factorial, from_big, int, rat, Rational};

/// `[d^i t_n](z_i) = n! δ_{i,n}` for all `i <= n`.
pub fn biorthogonality_check(op: &OperatorSpec, grid: &Grid, n: usize) -> Result<CheckReport> {
    let tn = goncarov_recursion(op, grid, n)?;
    let nf = factorial_rat(n);
    for i in 0..=n {
        let g = apply_power(op, &tn, i);
        // d^n t_n is a constant; z_n need not exist.
        let z = if i < n { grid.node(i)? } else { Rational::zero() };
        if i == n && g.degree().unwrap_or(0) > 0 {
            return Ok(CheckReport::new(
                format!("biortho n={n}"),
                false,
                Some(format!("d^{n} t_{n} = {g} is not constant")),
            ));
        }
        let value = g.eval(&z);
        let expected = if i == n { nf.clone() } else { Rational::zero() };
        if value != expected {
            return Ok(CheckReport::new(
                format!("biortho n={n}"),
                false,
                Some(format!("i={i}: got {value}, expected {expected}")),
            ));
        }
    }
    Ok(CheckReport::new(format!("biortho n={n}"), true, None))
}

/// `d^j t_n = n_{(j)} t^{(j)}_{n-j}` with the right side built on the shifted grid.
pub fn differential_relation_check(op: &OperatorSpec, grid: &Grid, n: usize, j: usize) -> Result<CheckReport> {
    let lhs = apply_power(op, &goncarov_recursion(op, grid, n)?, j);
    let rhs = goncarov_recursion(op, &grid.shift(j), n - j)?.scale(&from_big(falling_factorial(n, j)));
    Ok(CheckReport::compare(format!("diff-rel n={n} j={j}"), &lhs, &rhs))
}

/// `h_n(x + xi) = t_n(x)` where `h` is the basis of the translated grid.
pub fn translation_check(op: &OperatorSpec, grid: &Grid, xi: &Rational, n: usize) -> Result<CheckReport> {
    let tn = goncarov_recursion(op, grid, n)?;
    let hn = goncarov_recursion(op, &grid.translate(xi), n)?;
    Ok(CheckReport::compare(format!("translation n={n} xi={xi}"), &hn.shift(xi), &tn))
}

/// Basis of `(d, z_i + i xi)` equals basis of `(E_xi d, z_i)`.
pub fn shift_duality_check(op: &OperatorSpec, grid: &Grid, xi: &Rational, n: usize) -> Result<CheckReport> {
    let lhs = goncarov_recursion(op, &grid.add_progression(xi), n)?;
    let rhs = goncarov_recursion(&op.abelize(xi.clone()), grid, n)?;
    Ok(CheckReport::compare(format!("shift-duality n={n} xi={xi}"), &lhs, &rhs))
}

/// `t_n(x + xi) = sum_i C(n,i) t^{(i)}_{n-i}(xi) p_i(x)`.
pub fn binomial_expansion_check(op: &OperatorSpec, grid: &Grid, xi: &Rational, n: usize) -> Result<CheckReport> {
    let basic = BasicSequence::new(op)?;
    let lhs = goncarov_recursion(op, grid, n)?.shift(xi);
    let mut rhs = Poly::zero();
    for i in 0..=n {
        let tail = goncarov_recursion(op, &grid.shift(i), n - i)?.eval(xi);
        rhs = &rhs + &basic.get(i).scale(&(binomial_rat(n, i) * tail));
    }
    Ok(CheckReport::compare(format!("binomial-expansion n={n} xi={xi}"), &lhs, &rhs))
}

/// Constant-grid corollary: `t_n(x + xi) = sum_i C(n,i) t_{n-i}(xi) p_i(x)`.
pub fn constant_grid_expansion_check(op: &OperatorSpec, c: &Rational, xi: &Rational, n: usize) -> Result<CheckReport> {
    let grid = Grid::constant(c.clone());
    let basis = GoncarovBasis::new(op, &grid)?;
    let lhs = basis.get(n)?.shift(xi);
    let mut rhs = Poly::zero();
    for i in 0..=n {
        let coeff = binomial_rat(n, i) * basis.get(n - i)?.eval(xi);
        rhs = &rhs + &basis.basic().get(i).scale(&coeff);
    }
    Ok(CheckReport::compare(format!("constant-grid n={n} c={c} xi={xi}"), &lhs, &rhs))
}

/// Perturbation formula against direct recursion on the perturbed grid.
pub fn perturbation_check(
    op: &OperatorSpec,
    grid: &Grid,
    k: usize,
    new_node: &Rational,
    n: usize,
) -> Result<CheckReport> {
    let formula = perturbed_basis(op, grid, k, new_node, n)?;
    let moved = grid.perturb(k, new_node.clone(), n)?;
    let direct = goncarov_recursion(op, &moved, n)?;
    Ok(CheckReport::compare(format!("perturb n={n} k={k} z'={new_node}"), &formula, &direct))
}

/// `q_n(x + y) = sum_k C(n,k) q_k(x) q_{n-k}(y)` at one point; returns the
/// two sides.
pub fn binomial_type_sides(polys: &[Poly], n: usize, x: &Rational, y: &Rational) -> (Rational, Rational) {
    let lhs = polys[n].eval(&(x + y));
    let rhs = (0..=n).fold(Rational::zero(), |acc, k| {
        acc + binomial_rat(n, k) * polys[k].eval(x) * polys[n - k].eval(y)
    });
    (lhs, rhs)
}

pub fn binomial_type_check(op: &OperatorSpec, grid: &Grid, n: usize, x: &Rational, y: &Rational) -> Result<CheckReport> {
    let polys = GoncarovBasis::new(op, grid)?.polys(n)?;
    let (lhs, rhs) = binomial_type_sides(&polys, n, x, y);
    let passed = lhs == rhs;
    Ok(CheckReport::new(
        format!("binomial-type n={n} x={x} y={y}"),
        passed,
        (!passed).then(|| format!("lhs = {lhs}; rhs = {rhs}")),
    ))
}

/// Searches small integer pairs for a violation of the binomial identity.
/// Returns `(x, y, n)` of the first one found.
pub fn binomial_type_counterexample(
    op: &OperatorSpec,
    grid: &Grid,
    n_max: usize,
) -> Result<Option<(Rational, Rational, usize)>> {
    let polys = GoncarovBasis::new(op, grid)?.polys(n_max)?;
    for n in 1..=n_max {
        for xv in -3..=3 {
            for yv in -3..=3 {
                let (x, y) = (int(xv), int(yv));
                let (lhs, rhs) = binomial_type_sides(&polys, n, &x, &y);
                if lhs != rhs {
                    return Ok(Some((x, y, n)));
                }
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Biortho,
    DiffRel,
    Shift,
    Binomial,
    Perturb,
    Integral,
    Appell,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Biortho,
        Suite::DiffRel,
        Suite::Shift,
        Suite::Binomial,
        Suite::Perturb,
        Suite::Integral,
        Suite::Appell,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Biortho => "biortho",
            Suite::DiffRel => "diff-rel",
            Suite::Shift => "shift",
            Suite::Binomial => "binomial",
            Suite::Perturb => "perturb",
            Suite::Integral => "integral",
            Suite::Appell => "appell",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| {
                Error::Parse(format!(
                    "unknown suite `{s}` (expected biortho, diff-rel, shift, binomial, perturb, integral or appell)"
                ))
            })
    }
}

fn offsets() -> [Rational; 3] {
    [rat(1, 2), int(-3), int(2)]
}

/// Runs one identity suite for every `n <= n_max`.
pub fn run_suite(suite: Suite, op: &OperatorSpec, grid: &Grid, n_max: usize) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    match suite {
        Suite::Biortho => {
            for n in 0..=n_max {
                out.push(biorthogonality_check(op, grid, n)?);
            }
        }
        Suite::DiffRel => {
            for n in 0..=n_max {
                for j in 0..=n {
                    out.push(differential_relation_check(op, grid, n, j)?);
                }
            }
        }
        Suite::Shift => {
            for n in 0..=n_max {
                for xi in offsets() {
                    out.push(translation_check(op, grid, &xi, n)?);
                    out.push(shift_duality_check(op, grid, &xi, n)?);
                }
            }
        }
        Suite::Binomial => {
            for n in 0..=n_max {
                for xi in offsets() {
                    out.push(binomial_expansion_check(op, grid, &xi, n)?);
                }
                out.push(constant_grid_expansion_check(op, &grid.node(0)?, &rat(1, 3), n)?);
            }
        }
        Suite::Perturb => {
            for n in 0..=n_max {
                for k in 0..n.max(1) {
                    let moved = grid.node(k)? + rat(7, 3);
                    out.push(perturbation_check(op, grid, k, &moved, n)?);
                }
            }
        }
        Suite::Integral => {
            for n in 0..=n_max {
                for k in 0..=n {
                    out.push(integral_formula_check(op, grid, n, k)?);
                }
            }
        }
        Suite::Appell => {
            let report = appell_check(op, grid, n_max)?;
            let detail = report.first_mismatch.map(|m| {
                format!("t^{m}: lhs = {}; rhs = {}", report.lhs[m], report.rhs[m])
            });
            out.push(CheckReport::new(format!("appell N={n_max}"), report.equal, detail));
        }
    }
    Ok(out)
}
