use std::collections::BTreeMap;

use crate::Scalar;

/// Truncated series in `q` with Laurent polynomial coefficients in `ζ`.
///
/// The term `c·qⁿζʳ` is stored under `(n, r)`; all `n < n_prec` are known.
#[derive(Clone, Debug, PartialEq)]
pub struct QZSeries<C> {
    n_prec: i64,
    coeffs: BTreeMap<(i64, i64), C>,
}

impl<C: Scalar> QZSeries<C> {
    pub fn zero(n_prec: i64) -> Self {
        QZSeries { n_prec, coeffs: BTreeMap::new() }
    }

    pub fn from_terms(n_prec: i64, terms: impl IntoIterator<Item = ((i64, i64), C)>) -> Self {
        let mut s = Self::zero(n_prec);
        for (k, c) in terms {
            s.add_at(k, c);
        }
        s
    }

    pub fn n_prec(&self) -> i64 {
        self.n_prec
    }

    pub fn coeff(&self, n: i64, r: i64) -> C {
        assert!(n < self.n_prec, "q-exponent {n} beyond precision {}", self.n_prec);
        self.coeffs.get(&(n, r)).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), &C)> {
        self.coeffs.iter().map(|(k, v)| (*k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn min_n(&self) -> i64 {
        self.coeffs.keys().next().map(|k| k.0).unwrap_or(self.n_prec)
    }

    pub fn add_at(&mut self, k: (i64, i64), c: C) {
        if k.0 >= self.n_prec || c.is_zero() {
            return;
        }
        let v = match self.coeffs.remove(&k) {
            Some(old) => old + c,
            None => c,
        };
        if !v.is_zero() {
            self.coeffs.insert(k, v);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n_prec.min(other.n_prec));
        for (k, c) in self.coeffs.iter().chain(other.coeffs.iter()) {
            out.add_at(*k, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.n_prec);
        for (k, v) in &self.coeffs {
            out.add_at(*k, v.clone() * c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let prec = (self.n_prec + other.min_n()).min(other.n_prec + self.min_n());
        let mut out = Self::zero(prec);
        for ((n1, r1), x) in &self.coeffs {
            for ((n2, r2), y) in &other.coeffs {
                if n1 + n2 < prec {
                    out.add_at((n1 + n2, r1 + r2), x.clone() * y.clone());
                }
            }
        }
        out
    }
}
