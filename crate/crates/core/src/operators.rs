//! Shift-invariant operators on `Q[x]`, stored by their D-indicator.
//!
//! An operator `S = f(D)` acts on a polynomial of degree `n` through the first
//! `n + 1` coefficients of `f` only, since `D^k` annihilates anything of degree
//! below `k`. Preset indicators produce any coefficient on request, so an
//! operator never has a fixed truncation order.

use std::fmt;
use std::sync::Mutex;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{factorial_rat, format_rational, int, parse_rational, pow, Rational};
use crate::series::TruncSeries;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Indicator {
    /// `t`: the derivative `D`.
    Derivative,
    /// `e^{at}`: the shift `E_a`.
    Shift(Rational),
    /// `t e^{at}`: the abelization `E_a D`.
    Abel(Rational),
    /// `t/(t-1) = -t - t^2 - ...`: the Laguerre operator `D(D-I)^{-1}`.
    Laguerre,
    /// Compositional inverse of `t e^t`.
    Lambert,
    /// `log(1+t)`: the operator whose basic sequence is the exponential polynomials.
    Touchard,
    /// `e^t - 1`: `E_1 - I`.
    ForwardDifference,
    /// `1 - e^{-t}`: `I - E_{-1}`.
    BackwardDifference,
    /// Finitely many explicit coefficients, zero beyond.
    Custom(Vec<Rational>),
    /// Operator product, i.e. the product of indicators.
    Product(Vec<Indicator>),
}

impl Indicator {
    /// `[t^k]` of the indicator. Stateless, so concurrent callers always agree.
    pub fn coefficient(&self, k: usize) -> Rational {
        match self {
            Indicator::Derivative => if k == 1 { Rational::one() } else { Rational::zero() },
            Indicator::Shift(a) => pow(a, k) / factorial_rat(k),
            Indicator::Abel(a) => match k {
                0 => Rational::zero(),
                _ => pow(a, k - 1) / factorial_rat(k - 1),
            },
            Indicator::Laguerre => if k == 0 { Rational::zero() } else { int(-1) },
            Indicator::Lambert => match k {
                0 => Rational::zero(),
                _ => pow(&int(-(k as i64)), k - 1) / factorial_rat(k),
            },
            Indicator::Touchard => match k {
                0 => Rational::zero(),
                _ => Rational::new(if k % 2 == 1 { 1 } else { -1 }.into(), (k as i64).into()),
            },
            Indicator::ForwardDifference => match k {
                0 => Rational::zero(),
                _ => factorial_rat(k).recip(),
            },
            Indicator::BackwardDifference => match k {
                0 => Rational::zero(),
                _ if k % 2 == 1 => factorial_rat(k).recip(),
                _ => -factorial_rat(k).recip(),
            },
            Indicator::Custom(c) => c.get(k).cloned().unwrap_or_else(Rational::zero),
            Indicator::Product(_) => self.series(k).coeff(k).clone(),
        }
    }

    pub fn series(&self, order: usize) -> TruncSeries {
        match self {
            Indicator::Product(factors) => factors
                .iter()
                .fold(TruncSeries::one(order), |acc, f| acc.mul(&f.series(order))),
            _ => TruncSeries::from_fn(order, |k| self.coefficient(k)),
        }
    }

    fn name(&self) -> String {
        match self {
            Indicator::Derivative => "D".into(),
            Indicator::Shift(a) => format!("shift:a={}", format_rational(a)),
            Indicator::Abel(a) => format!("abel:a={}", format_rational(a)),
            Indicator::Laguerre => "laguerre".into(),
            Indicator::Lambert => "lambert".into(),
            Indicator::Touchard => "touchard".into(),
            Indicator::ForwardDifference => "fwd-diff".into(),
            Indicator::BackwardDifference => "bwd-diff".into(),
            Indicator::Custom(c) => {
                let parts: Vec<String> = c.iter().map(format_rational).collect();
                format!("custom:{}", parts.join(","))
            }
            Indicator::Product(fs) => fs.iter().map(Indicator::name).collect::<Vec<_>>().join("*"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    /// `f(0) = 0`, `f'(0) != 0`.
    Delta,
    /// `f(0) != 0`.
    Invertible,
    General,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OperatorSpec {
    indicator: Indicator,
}

impl OperatorSpec {
    pub fn from_indicator(indicator: Indicator) -> Self {
        OperatorSpec { indicator }
    }

    pub fn derivative() -> Self {
        Self::from_indicator(Indicator::Derivative)
    }

    pub fn shift(a: Rational) -> Self {
        Self::from_indicator(Indicator::Shift(a))
    }

    /// `E_a D`. With `a = -1` its basic sequence counts all reluctant functions.
    pub fn abel(a: Rational) -> Self {
        Self::from_indicator(Indicator::Abel(a))
    }

    pub fn laguerre() -> Self {
        Self::from_indicator(Indicator::Laguerre)
    }

    pub fn lambert() -> Self {
        Self::from_indicator(Indicator::Lambert)
    }

    pub fn touchard() -> Self {
        Self::from_indicator(Indicator::Touchard)
    }

    pub fn forward_difference() -> Self {
        Self::from_indicator(Indicator::ForwardDifference)
    }

    pub fn backward_difference() -> Self {
        Self::from_indicator(Indicator::BackwardDifference)
    }

    pub fn custom(coeffs: Vec<Rational>) -> Self {
        Self::from_indicator(Indicator::Custom(coeffs))
    }

    /// The seven delta presets, in a fixed order.
    pub fn delta_presets() -> Vec<OperatorSpec> {
        vec![
            Self::derivative(),
            Self::abel(int(-1)),
            Self::laguerre(),
            Self::lambert(),
            Self::touchard(),
            Self::forward_difference(),
            Self::backward_difference(),
        ]
    }

    /// Parses `D`, `abel:a=<rat>`, `shift:a=<rat>`, `laguerre`, `lambert`,
    /// `touchard`, `fwd-diff`, `bwd-diff`, `custom:c0,c1,...`, and products
    /// of these joined by `*`.
    pub fn from_name(name: &str) -> Result<Self> {
        let factors: Vec<Indicator> = name
            .split('*')
            .map(parse_atom)
            .collect::<Result<_>>()?;
        Ok(match factors.len() {
            1 => Self::from_indicator(factors.into_iter().next().unwrap()),
            _ => Self::from_indicator(Indicator::Product(factors)),
        })
    }

    pub fn indicator(&self) -> &Indicator {
        &self.indicator
    }

    pub fn name(&self) -> String {
        self.indicator.name()
    }

    pub fn indicator_series(&self, order: usize) -> TruncSeries {
        self.indicator.series(order)
    }

    pub fn kind(&self) -> Kind {
        let f = self.indicator_series(1);
        if !f.coeff(0).is_zero() {
            Kind::Invertible
        } else if !f.coeff(1).is_zero() {
            Kind::Delta
        } else {
            Kind::General
        }
    }

    pub fn is_delta(&self) -> bool {
        self.kind() == Kind::Delta
    }

    pub(crate) fn require_delta(&self) -> Result<()> {
        if self.is_delta() {
            Ok(())
        } else {
            Err(Error::NotDeltaOperator(self.name()))
        }
    }

    /// Operator product `self ∘ other`; shift-invariant operators commute.
    pub fn compose(&self, other: &OperatorSpec) -> OperatorSpec {
        let mut factors = Vec::new();
        for ind in [&self.indicator, &other.indicator] {
            match ind {
                Indicator::Product(fs) => factors.extend(fs.iter().cloned()),
                other => factors.push(other.clone()),
            }
        }
        Self::from_indicator(Indicator::Product(factors))
    }

    /// `E_a ∘ self`.
    pub fn abelize(&self, a: Rational) -> OperatorSpec {
        OperatorSpec::shift(a).compose(self)
    }
}

impl fmt::Display for OperatorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

fn parse_param(rest: &str, key: &str) -> Result<Rational> {
    let value = rest
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| Error::Parse(format!("expected `{key}=<rational>`, got `{rest}`")))?;
    parse_rational(value)
}

fn parse_atom(atom: &str) -> Result<Indicator> {
    let atom = atom.trim();
    let (head, rest) = match atom.split_once(':') {
        Some((h, r)) => (h, Some(r)),
        None => (atom, None),
    };
    let ind = match (head, rest) {
        ("D", None) => Indicator::Derivative,
        ("laguerre", None) => Indicator::Laguerre,
        ("lambert", None) => Indicator::Lambert,
        ("touchard", None) => Indicator::Touchard,
        ("fwd-diff", None) => Indicator::ForwardDifference,
        ("bwd-diff", None) => Indicator::BackwardDifference,
        ("abel", Some(r)) => Indicator::Abel(parse_param(r, "a")?),
        ("shift", Some(r)) => Indicator::Shift(parse_param(r, "a")?),
        ("custom", Some(r)) => Indicator::Custom(
            r.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?,
        ),
        _ => {
            return Err(Error::Parse(format!(
                "unknown operator `{atom}` (expected D, abel:a=<rat>, shift:a=<rat>, laguerre, \
                 lambert, touchard, fwd-diff, bwd-diff or custom:c0,c1,...)"
            )))
        }
    };
    Ok(ind)
}

/// `f(D) p = sum_k f_k D^k p`, summed for `k <= deg p`.
pub fn apply(op: &OperatorSpec, p: &Poly) -> Poly {
    let Some(deg) = p.degree() else {
        return Poly::zero();
    };
    let f = op.indicator_series(deg);
    let mut acc = Poly::zero();
    let mut dk = p.clone();
    for c in f.coeffs() {
        if !c.is_zero() {
            acc = &acc + &dk.scale(c);
        }
        dk = dk.derivative();
        if dk.is_zero() {
            break;
        }
    }
    acc
}

/// `op^k p`.
pub fn apply_power(op: &OperatorSpec, p: &Poly, k: usize) -> Poly {
    (0..k).fold(p.clone(), |acc, _| apply(op, &acc))
}

pub fn shift_operator(a: Rational) -> OperatorSpec {
    OperatorSpec::shift(a)
}

/// The basic sequence of a delta operator, extended on demand.
///
/// `p_n(x) = n! sum_k x^k/k! [t^n] d(t)^k` where `d` is the compositional
/// inverse of the D-indicator.
#[derive(Debug)]
pub struct BasicSequence {
    operator: OperatorSpec,
    cache: Mutex<Vec<Poly>>,
}

impl Clone for BasicSequence {
    fn clone(&self) -> Self {
        BasicSequence {
            operator: self.operator.clone(),
            cache: Mutex::new(self.cache.lock().unwrap().clone()),
        }
    }
}

impl BasicSequence {
    pub fn new(op: &OperatorSpec) -> Result<Self> {
        op.require_delta()?;
        Ok(BasicSequence {
            operator: op.clone(),
            cache: Mutex::new(vec![Poly::one()]),
        })
    }

    pub fn operator(&self) -> &OperatorSpec {
        &self.operator
    }

    /// `p_n`. Extension is idempotent: every caller sees the same polynomials.
    pub fn get(&self, n: usize) -> Poly {
        let mut cache = self.cache.lock().unwrap();
        if cache.len() <= n {
            let fresh = basic_polys_via_egf(&self.operator, n);
            let start = cache.len();
            cache.extend(fresh.into_iter().skip(start));
        }
        cache[n].clone()
    }

    pub fn polys(&self, n_max: usize) -> Vec<Poly> {
        self.get(n_max);
        self.cache.lock().unwrap()[..=n_max].to_vec()
    }

    /// Coordinates of `p` in the basis `p_0, p_1, ...`.
    pub fn coordinates(&self, p: &Poly) -> Vec<Rational> {
        let Some(deg) = p.degree() else {
            return Vec::new();
        };
        let basis = self.polys(deg);
        let mut rem = p.clone();
        let mut coords = vec![Rational::zero(); deg + 1];
        for i in (0..=deg).rev() {
            let c = rem.coeff(i) / basis[i].leading_coeff().expect("basic polynomial has degree i");
            if !c.is_zero() {
                rem = &rem - &basis[i].scale(&c);
            }
            coords[i] = c;
        }
        debug_assert!(rem.is_zero());
        coords
    }
}

fn basic_polys_via_egf(op: &OperatorSpec, n: usize) -> Vec<Poly> {
    let order = n.max(1);
    let d = op
        .indicator_series(order)
        .reverse()
        .expect("delta indicator is reversible");
    let mut powers = vec![TruncSeries::one(order)];
    for k in 1..=order {
        powers.push(powers[k - 1].mul(&d));
    }
    (0..=n)
        .map(|m| {
            let nf = factorial_rat(m);
            Poly::new(
                (0..=m)
                    .map(|k| &nf * powers[k].coeff(m) / factorial_rat(k))
                    .collect(),
            )
        })
        .collect()
}

pub fn basic_sequence(op: &OperatorSpec, n_max: usize) -> Result<BasicSequence> {
    let seq = BasicSequence::new(op)?;
    seq.get(n_max);
    Ok(seq)
}

/// The delta-indicator of `s`: `sum_k a_k/k! t^k` with `a_k = [S p_k](0)`.
pub fn expand_in_delta(s: &OperatorSpec, delta: &OperatorSpec, n_max: usize) -> Result<TruncSeries> {
    let basic = basic_sequence(delta, n_max)?;
    Ok(TruncSeries::from_fn(n_max, |k| {
        apply(s, &basic.get(k)).eval(&Rational::zero()) / factorial_rat(k)
    }))
}

/// Right inverse of a delta operator: maps `p_i` to `p_{i+1}/(i+1)`.
pub fn right_inverse_apply(delta: &OperatorSpec, p: &Poly) -> Result<Poly> {
    let basic = BasicSequence::new(delta)?;
    let coords = basic.coordinates(p);
    let mut acc = Poly::zero();
    for (i, c) in coords.iter().enumerate() {
        if !c.is_zero() {
            acc = &acc + &basic.get(i + 1).scale(&(c / int(i as i64 + 1)));
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn preset_application() {
        assert_eq!(apply(&shift_operator(int(2)), &p(&[0, 0, 1])), p(&[4, 4, 1]));
        assert_eq!(apply(&OperatorSpec::derivative(), &p(&[0, 0, 0, 1])), p(&[0, 0, 3]));
        // x(x-1)(x-2) = x^3 - 3x^2 + 2x; forward difference gives 3x(x-1).
        let falling3 = p(&[0, 2, -3, 1]);
        assert_eq!(apply(&OperatorSpec::forward_difference(), &falling3), p(&[0, -3, 3]));
        assert_eq!(apply(&OperatorSpec::touchard(), &Poly::zero()), Poly::zero());
    }

    #[test]
    fn shifts_compose() {
        assert_eq!(shift_operator(int(0)).indicator_series(5), TruncSeries::one(5));
        assert_eq!(apply(&shift_operator(int(1)), &Poly::x()), p(&[1, 1]));
        let id = shift_operator(int(1)).compose(&shift_operator(int(-1)));
        assert_eq!(id.indicator_series(8), TruncSeries::one(8));
        assert_eq!(id.kind(), Kind::Invertible);
    }

    #[test]
    fn kinds() {
        for op in OperatorSpec::delta_presets() {
            assert_eq!(op.kind(), Kind::Delta, "{op}");
        }
        assert_eq!(OperatorSpec::custom(vec![int(0), int(0), int(1)]).kind(), Kind::General);
        assert!(matches!(
            basic_sequence(&shift_operator(int(1)), 3),
            Err(Error::NotDeltaOperator(_))
        ));
    }

    #[test]
    fn preset_basic_sequences() {
        let d = basic_sequence(&OperatorSpec::derivative(), 6).unwrap();
        for n in 0..=6 {
            assert_eq!(d.get(n), Poly::monomial(int(1), n));
        }
        let up = basic_sequence(&OperatorSpec::backward_difference(), 3).unwrap();
        assert_eq!(up.get(2), p(&[0, 1, 1]));
        let abel = basic_sequence(&OperatorSpec::abel(int(-1)), 3).unwrap();
        // x(x+3)^2
        assert_eq!(abel.get(3), p(&[0, 9, 6, 1]));
        let lag = basic_sequence(&OperatorSpec::laguerre(), 2).unwrap();
        assert_eq!(lag.get(2), p(&[0, -2, 1]));
        let lam = basic_sequence(&OperatorSpec::lambert(), 3).unwrap();
        // sum_k C(3,k) k^(3-k) x^k = 3x + 6x^2 + x^3
        assert_eq!(lam.get(3), p(&[0, 3, 6, 1]));
        let bell = basic_sequence(&OperatorSpec::touchard(), 3).unwrap();
        assert_eq!(bell.get(3), p(&[0, 1, 3, 1]));
    }

    #[test]
    fn expansions() {
        let e1 = expand_in_delta(&shift_operator(int(1)), &OperatorSpec::derivative(), 6).unwrap();
        assert_eq!(e1, TruncSeries::from_fn(6, |k| factorial_rat(k).recip()));
        let log = expand_in_delta(&OperatorSpec::derivative(), &OperatorSpec::forward_difference(), 5).unwrap();
        assert_eq!(log, TruncSeries::new(vec![int(1)], 5).add(&TruncSeries::identity(5)).log().unwrap());
        let lam = OperatorSpec::lambert();
        assert_eq!(expand_in_delta(&lam, &lam, 6).unwrap(), TruncSeries::identity(6));
    }

    #[test]
    fn right_inverse() {
        let d = OperatorSpec::derivative();
        assert_eq!(
            right_inverse_apply(&d, &p(&[0, 0, 1])).unwrap(),
            Poly::monomial(rat(1, 3), 3)
        );
        assert_eq!(right_inverse_apply(&d, &Poly::zero()).unwrap(), Poly::zero());
        let bwd = OperatorSpec::backward_difference();
        assert_eq!(right_inverse_apply(&bwd, &Poly::one()).unwrap(), Poly::x());
        assert_eq!(apply(&bwd, &Poly::x()), Poly::one());
    }

    #[test]
    fn names_roundtrip() {
        for name in [
            "D", "abel:a=-1", "abel:a=1/2", "laguerre", "lambert", "touchard", "fwd-diff",
            "bwd-diff", "custom:0,1,1/2", "shift:a=2*D",
        ] {
            assert_eq!(OperatorSpec::from_name(name).unwrap().name(), name);
        }
        assert!(OperatorSpec::from_name("bogus").is_err());
        assert!(OperatorSpec::from_name("abel:b=1").is_err());
    }

    #[test]
    fn product_matches_abel_preset() {
        let prod = OperatorSpec::derivative().abelize(int(-1));
        assert_eq!(prod.indicator_series(7), OperatorSpec::abel(int(-1)).indicator_series(7));
        assert_eq!(prod.indicator().coefficient(3), rat(1, 2));
    }
}
