//! Counting structures with bounded order statistics through Gončarov
//! polynomials, and the closed forms on affine bounds.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::goncarov::GoncarovBasis;
use crate::grid::Grid;
use crate::operators::{Indicator, OperatorSpec};
use crate::rational::{as_integer, binomial, factorial, from_big, int, Rational};

use super::numbers::{idempotent_coeff, lah, stirling2};

/// Non-decreasing positive bounds `z_0 <= ... <= z_{n-1}` on the order
/// statistics of a sequence with values in `{1..universe_size}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoundSpec {
    bounds: Vec<u64>,
    universe_size: u64,
}

impl BoundSpec {
    pub fn new(bounds: Vec<u64>, universe_size: u64) -> Result<Self> {
        if bounds.contains(&0) {
            return Err(Error::InvalidBounds("bounds must be positive".into()));
        }
        if bounds.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidBounds(format!("bounds {bounds:?} are not non-decreasing")));
        }
        if let Some(&last) = bounds.last() {
            if last > universe_size {
                return Err(Error::InvalidBounds(format!(
                    "largest bound {last} exceeds universe size {universe_size}"
                )));
            }
        }
        Ok(BoundSpec { bounds, universe_size })
    }

    /// Universe `{1..z_{n-1}}`, the smallest one the bounds fit in.
    pub fn tight(bounds: Vec<u64>) -> Result<Self> {
        let x = bounds.last().copied().unwrap_or(1);
        BoundSpec::new(bounds, x)
    }

    /// `a + b i` for `i < n`.
    pub fn affine(a: u64, b: u64, n: usize) -> Result<Self> {
        BoundSpec::tight((0..n as u64).map(|i| a + b * i).collect())
    }

    pub fn bounds(&self) -> &[u64] {
        &self.bounds
    }

    pub fn len(&self) -> usize {
        self.bounds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bounds.is_empty()
    }

    pub fn universe_size(&self) -> u64 {
        self.universe_size
    }

    pub fn grid(&self) -> Grid {
        Grid::list(self.bounds.iter().map(|&z| int(z as i64)).collect())
    }
}

/// The grid whose Gončarov polynomial at 0 counts for `op`.
///
/// The counting polynomials are the basic sequence evaluated at `x`, which
/// gives `t_n(0; d, -Z)`. The Laguerre operator's basic sequence counts
/// rooted paths at `-x` instead, which flips the grid back to `Z`.
pub fn counting_grid(op: &OperatorSpec, bounds: &BoundSpec) -> Grid {
    match op.indicator() {
        Indicator::Laguerre => bounds.grid(),
        _ => bounds.grid().negate(),
    }
}

/// Number of structures of the class enumerated by `op` whose order
/// statistics are bounded by `bounds`.
pub fn count_bounded(op: &OperatorSpec, bounds: &BoundSpec) -> Result<BigInt> {
    let grid = counting_grid(op, bounds);
    let value = GoncarovBasis::new(op, &grid)?.get(bounds.len())?.eval(&Rational::zero());
    match as_integer(&value) {
        Some(v) if !v.is_negative() => Ok(v),
        _ => Err(Error::NonIntegerResult(value)),
    }
}

/// Families with a closed-form count on affine bounds `a + b i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// Parking functions, `a (a+nb)^{n-1}`.
    Classical,
    /// All reluctant functions (rooted forests), `a (a+n(b+1))^{n-1}`.
    Abel,
    /// Rooted paths, `a sum_k L(n,k) (a+nb)^{k-1}`.
    Laguerre,
    /// Stars of depth at most one, `a sum_k C(n,k) k^{n-k} (a+nb)^{k-1}`.
    InverseAbel,
    /// Monotone paths, `a sum_k S(n,k) (a+nb)^{k-1}`.
    Exponential,
    /// Strictly increasing lattice paths, `a/(a+nb) C(a+nb, n)`.
    LowerFactorial,
    /// Lattice paths with vertical runs, `a/(a+n(b+1)) C(a+n(b+1), n)`.
    FussCatalan,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Classical,
        Family::Abel,
        Family::Laguerre,
        Family::InverseAbel,
        Family::Exponential,
        Family::LowerFactorial,
        Family::FussCatalan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Classical => "classical",
            Family::Abel => "abel",
            Family::Laguerre => "laguerre",
            Family::InverseAbel => "inverse-abel",
            Family::Exponential => "exponential",
            Family::LowerFactorial => "lower-factorial",
            Family::FussCatalan => "fuss-catalan",
        }
    }

    pub fn operator(self) -> OperatorSpec {
        match self {
            Family::Classical => OperatorSpec::derivative(),
            Family::Abel => OperatorSpec::abel(int(-1)),
            Family::Laguerre => OperatorSpec::laguerre(),
            Family::InverseAbel => OperatorSpec::lambert(),
            Family::Exponential => OperatorSpec::touchard(),
            Family::LowerFactorial => OperatorSpec::forward_difference(),
            Family::FussCatalan => OperatorSpec::backward_difference(),
        }
    }

    /// Labelings per counted object: the lattice-path families count
    /// unlabeled paths, `n!` fewer than the functions they encode.
    pub fn labeling_factor(self, n: usize) -> BigInt {
        match self {
            Family::LowerFactorial | Family::FussCatalan => factorial(n),
            _ => BigInt::one(),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "parking" => Ok(Family::Classical),
            "strict-paths" => Ok(Family::LowerFactorial),
            "upper-factorial" => Ok(Family::FussCatalan),
            _ => Family::ALL
                .into_iter()
                .find(|f| f.name() == s)
                .ok_or_else(|| Error::UnknownFamily(s.to_string())),
        }
    }
}

fn big(n: u64) -> BigInt {
    BigInt::from(n)
}

/// Evaluates the family's closed form at `(a, b, n)` exactly.
pub fn closed_form_count(family: Family, a: u64, b: u64, n: usize) -> Result<BigInt> {
    if a == 0 {
        return Err(Error::InvalidBounds("closed forms need a >= 1".into()));
    }
    if n == 0 {
        return Ok(BigInt::one());
    }
    let nn = n as u64;
    let top = big(a + nn * b);
    let weighted = |coeff: &dyn Fn(usize) -> BigInt| -> BigInt {
        (1..=n).fold(BigInt::zero(), |acc, k| acc + coeff(k) * num_traits::pow(top.clone(), k - 1)) * big(a)
    };
    let value = match family {
        Family::Classical => big(a) * num_traits::pow(top, n - 1),
        Family::Abel => big(a) * num_traits::pow(big(a + nn * (b + 1)), n - 1),
        Family::Laguerre => weighted(&|k| lah(n, k)),
        Family::InverseAbel => weighted(&|k| idempotent_coeff(n, k)),
        Family::Exponential => weighted(&|k| stirling2(n, k)),
        Family::LowerFactorial => ratio_count(a, a + nn * b, n)?,
        Family::FussCatalan => ratio_count(a, a + nn * (b + 1), n)?,
    };
    Ok(value)
}

/// `a/m C(m, n)`, which must be an integer.
fn ratio_count(a: u64, m: u64, n: usize) -> Result<BigInt> {
    let c = binomial(m as usize, n);
    let value = from_big(big(a) * c) / from_big(big(m));
    as_integer(&value).ok_or(Error::NonIntegerResult(value))
}

/// JSON payload of a count query.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRecord {
    pub operator: String,
    pub bounds: Vec<u64>,
    pub count: String,
    pub method: String,
}

impl CountRecord {
    pub fn new(op: &OperatorSpec, bounds: &BoundSpec, count: &BigInt, method: &str) -> Self {
        CountRecord {
            operator: op.name(),
            bounds: bounds.bounds().to_vec(),
            count: count.to_string(),
            method: method.to_string(),
        }
    }
}
