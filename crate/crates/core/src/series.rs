//! Truncated formal power series over the rationals.
//!
//! A series of order `N` knows its coefficients of `t^0..=t^N`; everything
//! above is unknown rather than zero. Binary operations produce the smaller
//! of the two orders.

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{int, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<Rational>,
}

impl TruncSeries {
    /// Pads with zeros or truncates so that exactly `order + 1` coefficients are kept.
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        TruncSeries { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Rational) -> Self {
        TruncSeries {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn zero(order: usize) -> Self {
        TruncSeries::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        TruncSeries::new(vec![Rational::one()], order)
    }

    /// The series `t`.
    pub fn identity(order: usize) -> Self {
        TruncSeries::new(vec![Rational::zero(), Rational::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn truncate(&self, order: usize) -> TruncSeries {
        assert!(order <= self.order(), "cannot raise the order of a truncated series");
        TruncSeries::new(self.coeffs[..=order].to_vec(), order)
    }

    /// Compares only the common known prefix.
    pub fn agrees_with(&self, other: &TruncSeries) -> bool {
        let n = self.order().min(other.order());
        self.coeffs[..=n] == other.coeffs[..=n]
    }

    pub fn add(&self, other: &TruncSeries) -> TruncSeries {
        let n = self.order().min(other.order());
        TruncSeries::from_fn(n, |k| &self.coeffs[k] + &other.coeffs[k])
    }

    pub fn sub(&self, other: &TruncSeries) -> TruncSeries {
        let n = self.order().min(other.order());
        TruncSeries::from_fn(n, |k| &self.coeffs[k] - &other.coeffs[k])
    }

    pub fn scale(&self, c: &Rational) -> TruncSeries {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &TruncSeries) -> TruncSeries {
        let n = self.order().min(other.order());
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs[..=n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        TruncSeries { coeffs: out }
    }

    pub fn pow(&self, k: usize) -> TruncSeries {
        let mut acc = TruncSeries::one(self.order());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `self(inner(t))` by Horner's scheme over powers of `inner`.
    pub fn compose(&self, inner: &TruncSeries) -> Result<TruncSeries> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        let mut acc = TruncSeries::new(vec![self.coeffs[n].clone()], n);
        for k in (0..n).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] += &self.coeffs[k];
        }
        Ok(acc)
    }

    /// Compositional inverse `d` with `self(d(t)) = t`, solved one degree at a
    /// time from the triangular system.
    pub fn reverse(&self) -> Result<TruncSeries> {
        let n = self.order();
        if !self.coeffs[0].is_zero() || n == 0 || self.coeffs[1].is_zero() {
            return Err(Error::NotReversible);
        }
        let lead_inv = self.coeffs[1].recip();
        let mut d = vec![Rational::zero(); n + 1];
        d[1] = lead_inv.clone();
        for m in 2..=n {
            // d_m only reaches t^m through the linear term of self.
            let partial = TruncSeries::new(d[..m].to_vec(), m);
            let composed = self.truncate(m).compose(&partial)?;
            d[m] = -(&composed.coeffs[m] * &lead_inv);
        }
        Ok(TruncSeries { coeffs: d })
    }

    pub fn derivative(&self) -> TruncSeries {
        let n = self.order();
        if n == 0 {
            return TruncSeries::zero(0);
        }
        TruncSeries::from_fn(n - 1, |k| &self.coeffs[k + 1] * int(k as i64 + 1))
    }

    /// `exp(self)` for `self(0) = 0`, from `E' = self' * E`.
    pub fn exp(&self) -> Result<TruncSeries> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::BadConstantTerm("exp (needs f(0) = 0)"));
        }
        let n = self.order();
        let mut e = vec![Rational::zero(); n + 1];
        e[0] = Rational::one();
        for m in 1..=n {
            let mut acc = Rational::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * int(k as i64) * &e[m - k];
                }
            }
            e[m] = acc / int(m as i64);
        }
        Ok(TruncSeries { coeffs: e })
    }

    /// `log(self)` for `self(0) = 1`, from `self * L' = self'`.
    pub fn log(&self) -> Result<TruncSeries> {
        if !self.coeffs[0].is_one() {
            return Err(Error::BadConstantTerm("log (needs f(0) = 1)"));
        }
        let n = self.order();
        let mut l = vec![Rational::zero(); n + 1];
        for m in 1..=n {
            let mut acc = &self.coeffs[m] * int(m as i64);
            for k in 1..m {
                acc -= &l[k] * int(k as i64) * &self.coeffs[m - k];
            }
            l[m] = acc / int(m as i64);
        }
        Ok(TruncSeries { coeffs: l })
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    order: usize,
    #[serde(with = "crate::rational::serde_str_vec")]
    coeffs: Vec<Rational>,
}

impl Serialize for TruncSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesJson {
            order: self.order(),
            coeffs: self.coeffs.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TruncSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = SeriesJson::deserialize(d)?;
        if raw.coeffs.len() != raw.order + 1 {
            return Err(serde::de::Error::custom(format!(
                "series of order {} needs {} coefficients, got {}",
                raw.order,
                raw.order + 1,
                raw.coeffs.len()
            )));
        }
        Ok(TruncSeries { coeffs: raw.coeffs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{factorial_rat, rat};

    fn s(c: &[i64], order: usize) -> TruncSeries {
        TruncSeries::new(c.iter().map(|&v| int(v)).collect(), order)
    }

    fn exp_t(order: usize) -> TruncSeries {
        TruncSeries::from_fn(order, |k| factorial_rat(k).recip())
    }

    #[test]
    fn products() {
        assert_eq!(s(&[1, 1], 3).mul(&s(&[1, -1], 3)), s(&[1, 0, -1, 0], 3));
        let f = s(&[2, 5, 7], 4);
        assert_eq!(f.mul(&TruncSeries::one(4)), f);
        assert_eq!(s(&[0, 1, 1], 4).mul(&s(&[0, 1], 4)), s(&[0, 0, 1, 1], 4));
        assert_eq!(s(&[1, 1], 5).mul(&s(&[1], 2)).order(), 2);
    }

    #[test]
    fn composition() {
        let sq = s(&[0, 0, 1], 3);
        assert_eq!(sq.compose(&s(&[0, 1, 1], 3)).unwrap(), s(&[0, 0, 1, 2], 3));
        let f = s(&[3, 1, 4, 1, 5], 4);
        assert_eq!(f.compose(&TruncSeries::identity(4)).unwrap(), f);
        assert_eq!(f.compose(&s(&[1, 1], 4)), Err(Error::NonzeroConstantTerm));
        assert_eq!(f.compose(&TruncSeries::identity(2)).unwrap().order(), 2);
    }

    #[test]
    fn exp_of_log_one_plus_t() {
        // Term-by-term: exp(log(1+t)) = 1 + t.
        let mercator = TruncSeries::from_fn(5, |k| match k {
            0 => int(0),
            _ => rat(if k % 2 == 1 { 1 } else { -1 }, k as i64),
        });
        let e = exp_t(5).compose(&mercator).unwrap();
        assert_eq!(e, s(&[1, 1], 5));
    }

    #[test]
    fn reversion() {
        let expm1 = TruncSeries::from_fn(4, |k| if k == 0 { int(0) } else { factorial_rat(k).recip() });
        let d = expm1.reverse().unwrap();
        assert_eq!(d.coeffs(), &[int(0), int(1), rat(-1, 2), rat(1, 3), rat(-1, 4)]);
        assert_eq!(expm1.compose(&d).unwrap(), TruncSeries::identity(4));

        assert_eq!(TruncSeries::identity(6).reverse().unwrap(), TruncSeries::identity(6));

        // Lagrange inversion: [t^n] W = (-n)^(n-1)/n!.
        let t_exp_t = TruncSeries::identity(5).mul(&exp_t(5));
        let w = t_exp_t.reverse().unwrap();
        let expected: Vec<Rational> = (0..=5)
            .map(|n| match n {
                0 => int(0),
                _ => crate::rational::pow(&int(-(n as i64)), n - 1) / factorial_rat(n),
            })
            .collect();
        assert_eq!(w.coeffs(), expected.as_slice());
        assert_eq!(w.coeffs()[5], rat(125, 24));

        assert_eq!(s(&[1, 1], 3).reverse(), Err(Error::NotReversible));
        assert_eq!(s(&[0, 0, 1], 3).reverse(), Err(Error::NotReversible));
    }

    #[test]
    fn exp_and_log() {
        assert_eq!(TruncSeries::zero(4).exp().unwrap(), TruncSeries::one(4));
        assert_eq!(exp_t(6), TruncSeries::identity(6).exp().unwrap());
        assert_eq!(exp_t(6).log().unwrap(), TruncSeries::identity(6));
        let log1p = s(&[1, 1], 4).log().unwrap();
        assert_eq!(log1p.coeffs(), &[int(0), int(1), rat(-1, 2), rat(1, 3), rat(-1, 4)]);
        assert_eq!(log1p.exp().unwrap(), s(&[1, 1], 4));
        assert!(matches!(s(&[1], 3).exp(), Err(Error::BadConstantTerm(_))));
        assert!(matches!(s(&[2], 3).log(), Err(Error::BadConstantTerm(_))));
    }

    #[test]
    fn prefix_comparison() {
        let a = s(&[1, 2, 3], 2);
        let b = s(&[1, 2, 3, 9], 3);
        assert!(a.agrees_with(&b));
        assert_ne!(a, b);
    }

    #[test]
    fn json_roundtrip() {
        let f = TruncSeries::new(vec![int(0), int(1), rat(-1, 2)], 2);
        let js = serde_json::to_string(&f).unwrap();
        assert_eq!(js, r#"{"order":2,"coeffs":["0","1","-1/2"]}"#);
        assert_eq!(serde_json::from_str::<TruncSeries>(&js).unwrap(), f);
        assert!(serde_json::from_str::<TruncSeries>(r#"{"order":3,"coeffs":["0"]}"#).is_err());
    }
}
