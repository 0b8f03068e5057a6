//! Generalized Gončarov bases `t_n(x; d, Z)`.
//!
//! The basis is the unique polynomial sequence with
//! `[d^i t_n](z_i) = n! δ_{i,n}`. It is computed by the linear recursion
//! `t_n = p_n - sum_{i<n} C(n,i) p_{n-i}(z_i) t_i`; the determinant route
//! exists to cross-check it.

use std::sync::Mutex;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::grid::Grid;
use crate::linalg::determinant;
use crate::operators::{apply, apply_power, right_inverse_apply, shift_operator, BasicSequence, OperatorSpec};
use crate::poly::{latex_sum, Poly};
use crate::rational::{binomial_rat, factorial_rat, falling_factorial, format_rational, from_big, Rational};
use crate::series::TruncSeries;

#[derive(Debug)]
pub struct GoncarovBasis {
    basic: BasicSequence,
    grid: Grid,
    cache: Mutex<Vec<Poly>>,
}

impl GoncarovBasis {
    pub fn new(op: &OperatorSpec, grid: &Grid) -> Result<Self> {
        Ok(GoncarovBasis {
            basic: BasicSequence::new(op)?,
            grid: grid.clone(),
            cache: Mutex::new(vec![Poly::one()]),
        })
    }

    pub fn operator(&self) -> &OperatorSpec {
        self.basic.operator()
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn basic(&self) -> &BasicSequence {
        &self.basic
    }

    /// `t_n`. Needs nodes `z_0..z_{n-1}`; extension is an idempotent cache.
    pub fn get(&self, n: usize) -> Result<Poly> {
        self.grid.require(n)?;
        let mut cache = self.cache.lock().unwrap();
        while cache.len() <= n {
            let m = cache.len();
            let mut t = self.basic.get(m);
            for (i, ti) in cache.iter().enumerate() {
                let c = binomial_rat(m, i) * self.basic.get(m - i).eval(&self.grid.node(i)?);
                if !c.is_zero() {
                    t = &t - &ti.scale(&c);
                }
            }
            cache.push(t);
        }
        Ok(cache[n].clone())
    }

    pub fn polys(&self, n_max: usize) -> Result<Vec<Poly>> {
        (0..=n_max).map(|n| self.get(n)).collect()
    }
}

pub fn goncarov_recursion(op: &OperatorSpec, grid: &Grid, n: usize) -> Result<Poly> {
    GoncarovBasis::new(op, grid)?.get(n)
}

/// `t_n` from the biorthogonal determinant with `Φ_i = E_{z_i} d^i`.
///
/// Row `i < n` holds `a^{(i)}_{j-i}` where `E_{z_i} = sum_j a^{(i)}_j d^j`, so
/// `a^{(i)}_j = [E_{z_i} p_j](0) / j!`; the last row holds `p_j(x)/j!`. The
/// determinant is expanded along the last row.
pub fn goncarov_determinant(op: &OperatorSpec, grid: &Grid, n: usize) -> Result<Poly> {
    let basic = BasicSequence::new(op)?;
    grid.require(n)?;
    let basis = basic.polys(n);
    let zero = Rational::zero();
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(n);
    for i in 0..n {
        let shift = shift_operator(grid.node(i)?);
        let mut row = vec![Rational::zero(); n + 1];
        for j in i..=n {
            let k = j - i;
            row[j] = apply(&shift, &basis[k]).eval(&zero) / factorial_rat(k);
        }
        rows.push(row);
    }
    let lead: Rational = rows.iter().enumerate().fold(Rational::one(), |acc, (i, r)| acc * &r[i]);
    let mut det = Poly::zero();
    for j in 0..=n {
        let minor: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect())
            .collect();
        let cofactor = determinant(&minor);
        if cofactor.is_zero() {
            continue;
        }
        let signed = if (n + j) % 2 == 0 { cofactor } else { -cofactor };
        det = &det + &basis[j].scale(&(signed / factorial_rat(j)));
    }
    // a_0^{(n)} = 1 for Φ_n = E_{z_n} d^n.
    Ok(det.scale(&(factorial_rat(n) / lead)))
}

/// `t_n^{(j)} = d^j t_{n+j} / (n+j)_{(j)}`, the basis of the `j`-th shifted grid.
pub fn shifted_basis(op: &OperatorSpec, grid: &Grid, j: usize, n: usize) -> Result<Poly> {
    let t = goncarov_recursion(op, grid, n + j)?;
    let scale = from_big(falling_factorial(n + j, j)).recip();
    Ok(apply_power(op, &t, j).scale(&scale))
}

/// `[d^i f](z_i)` for `i <= deg f`.
pub fn interpolation_data(op: &OperatorSpec, grid: &Grid, f: &Poly) -> Result<Vec<Rational>> {
    let Some(deg) = f.degree() else {
        return Ok(Vec::new());
    };
    let mut out = Vec::with_capacity(deg + 1);
    let mut g = f.clone();
    for i in 0..=deg {
        // d^deg f is constant, so the last node is not needed.
        let z = if i < deg { grid.node(i)? } else { grid.node(i).unwrap_or_else(|_| Rational::zero()) };
        out.push(g.eval(&z));
        g = apply(op, &g);
    }
    Ok(out)
}

/// The polynomial `p` of degree `<= n` with `[d^i p](z_i) = b_i`, namely
/// `sum b_i/i! t_i`.
pub fn interpolation_solve(op: &OperatorSpec, grid: &Grid, b: &[Rational]) -> Result<Poly> {
    let basis = GoncarovBasis::new(op, grid)?;
    let mut acc = Poly::zero();
    for (i, bi) in b.iter().enumerate() {
        if !bi.is_zero() {
            acc = &acc + &basis.get(i)?.scale(&(bi / factorial_rat(i)));
        }
    }
    Ok(acc)
}

/// Closed form on the arithmetic grid `a + b i`: `(x-a) p_n(x-a-nb) / (x-a-nb)`.
pub fn delta_abel(op: &OperatorSpec, a: &Rational, b: &Rational, n: usize) -> Result<Poly> {
    let basic = BasicSequence::new(op)?;
    let offset = a + b * Rational::from_integer(n.into());
    let shifted = basic.get(n).shift(&-&offset);
    let numerator = &Poly::linear_root(a) * &shifted;
    numerator.div_exact(&Poly::linear_root(&offset))
}

/// `t_n(x; d, Z')` where `Z'` agrees with `Z` except `z'_k`, via the
/// perturbation formula.
pub fn perturbed_basis(
    op: &OperatorSpec,
    grid: &Grid,
    k: usize,
    new_node: &Rational,
    n: usize,
) -> Result<Poly> {
    let basis = GoncarovBasis::new(op, grid)?;
    let tn = basis.get(n)?;
    if n <= k {
        return Ok(tn);
    }
    let tail = goncarov_recursion(op, &grid.shift(k), n - k)?.eval(new_node);
    let correction = basis.get(k)?.scale(&(binomial_rat(n, k) * tail));
    Ok(&tn - &correction)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>, passed: bool, detail: Option<String>) -> Self {
        CheckReport {
            name: name.into(),
            passed,
            detail,
        }
    }

    pub(crate) fn compare(name: impl Into<String>, lhs: &Poly, rhs: &Poly) -> Self {
        let passed = lhs == rhs;
        let detail = (!passed).then(|| format!("lhs = {lhs}; rhs = {rhs}"));
        CheckReport::new(name, passed, detail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AppellReport {
    pub equal: bool,
    /// Lowest power of `t` whose coefficients disagree.
    pub first_mismatch: Option<usize>,
    pub lhs: Vec<Poly>,
    pub rhs: Vec<Poly>,
}

/// Compares `e^{x d(t)}` with `sum_n t_n(x) e^{z_n d(t)} t^n / n!` up to `t^order`,
/// each side held as one polynomial in `x` per power of `t`.
pub fn appell_check(op: &OperatorSpec, grid: &Grid, order: usize) -> Result<AppellReport> {
    op.require_delta()?;
    grid.require(order + 1)?;
    let len = order.max(1);
    let d = op.indicator_series(len).reverse()?;

    let mut powers = vec![TruncSeries::one(len)];
    for k in 1..=order {
        powers.push(powers[k - 1].mul(&d));
    }
    let lhs: Vec<Poly> = (0..=order)
        .map(|m| Poly::new((0..=m).map(|k| powers[k].coeff(m) / factorial_rat(k)).collect()))
        .collect();

    let basis = GoncarovBasis::new(op, grid)?;
    let mut rhs = vec![Poly::zero(); order + 1];
    for n in 0..=order {
        let weight = d.scale(&grid.node(n)?).exp()?;
        let tn = basis.get(n)?.scale(&factorial_rat(n).recip());
        for m in n..=order {
            let c = weight.coeff(m - n);
            if !c.is_zero() {
                rhs[m] = &rhs[m] + &tn.scale(c);
            }
        }
    }
    let first_mismatch = (0..=order).find(|&m| lhs[m] != rhs[m]);
    Ok(AppellReport {
        equal: first_mismatch.is_none(),
        first_mismatch,
        lhs,
        rhs,
    })
}

/// Checks `t_n = (n)_{(k)} I_k(t^{(k)}_{n-k})` with
/// `I_k = prod_{i<k} (1 - ε_{z_i}) d^{-1}`.
pub fn integral_formula_check(op: &OperatorSpec, grid: &Grid, n: usize, k: usize) -> Result<CheckReport> {
    assert!(k <= n, "integral formula needs k <= n");
    let tn = goncarov_recursion(op, grid, n)?;
    let mut g = goncarov_recursion(op, &grid.shift(k), n - k)?;
    for i in (0..k).rev() {
        g = right_inverse_apply(op, &g)?;
        let at = g.eval(&grid.node(i)?);
        g = &g - &Poly::constant(at);
    }
    let rhs = g.scale(&from_big(falling_factorial(n, k)));
    Ok(CheckReport::compare(format!("integral n={n} k={k}"), &tn, &rhs))
}

/// Coordinates of `t_n` in the basic sequence: `C(n,i) t^{(i)}_{n-i}(0)`.
pub fn basic_coordinates(op: &OperatorSpec, grid: &Grid, n: usize) -> Result<Vec<Rational>> {
    grid.require(n)?;
    (0..=n)
        .map(|i| {
            let tail = goncarov_recursion(op, &grid.shift(i), n - i)?;
            Ok(binomial_rat(n, i) * tail.eval(&Rational::zero()))
        })
        .collect()
}

/// LaTeX for `t_n` written over `p_0(x), ..., p_n(x)`.
pub fn latex_in_basic(op: &OperatorSpec, grid: &Grid, n: usize) -> Result<String> {
    let coords = basic_coordinates(op, grid, n)?;
    let terms: Vec<(Rational, String)> = coords
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (c.clone(), if i == 0 { String::new() } else { format!("p_{{{i}}}(x)") }))
        .collect();
    Ok(latex_sum(&terms))
}

/// JSON payload describing a single basis polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisRecord {
    pub operator: String,
    pub grid: Grid,
    pub n: usize,
    pub coeffs: Poly,
}

impl BasisRecord {
    pub fn new(op: &OperatorSpec, grid: &Grid, n: usize, poly: Poly) -> Self {
        BasisRecord {
            operator: op.name(),
            grid: grid.clone(),
            n,
            coeffs: poly,
        }
    }
}

pub fn describe(poly: &Poly) -> Vec<String> {
    poly.coeffs().iter().map(format_rational).collect()
}
