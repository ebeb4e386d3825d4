use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::Ratio;

use crate::{Error, Field, Result, Scalar};

/// Truncated power series in `q^{1/h}`.
///
/// A term `c·q^{n/h}` is stored under the key `n`. Every exponent `n/h` with
/// `n < prec` is known; absent keys below `prec` are exact zeros. Only nonzero
/// coefficients are stored, so structural equality is value equality.
#[derive(Clone, PartialEq)]
pub struct QSeries<C> {
    h: i64,
    prec: i64,
    coeffs: BTreeMap<i64, C>,
}

impl<C: Scalar> QSeries<C> {
    /// The zero series on lattice `h`, known below `q^{prec/h}`.
    pub fn zero(h: i64, prec: i64) -> Self {
        assert!(h > 0, "lattice denominator must be positive");
        QSeries { h, prec, coeffs: BTreeMap::new() }
    }

    pub fn one(h: i64, prec: i64) -> Self {
        Self::monomial(h, prec, 0, C::one())
    }

    /// `c·q^{n/h}`, truncated at `prec`.
    pub fn monomial(h: i64, prec: i64, n: i64, c: C) -> Self {
        let mut s = Self::zero(h, prec);
        s.set(n, c);
        s
    }

    /// Series on lattice 1 with the given coefficients of `q^0, q^1, …`;
    /// the precision is the number of coefficients.
    pub fn from_dense(coeffs: Vec<C>) -> Self {
        let prec = coeffs.len() as i64;
        let mut s = Self::zero(1, prec);
        for (n, c) in coeffs.into_iter().enumerate() {
            s.set(n as i64, c);
        }
        s
    }

    /// Build from `(n, c)` pairs meaning `c·q^{n/h}`; repeated keys add up.
    pub fn from_terms(h: i64, prec: i64, terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut s = Self::zero(h, prec);
        for (n, c) in terms {
            s.add_at(n, c);
        }
        s
    }

    pub fn lattice(&self) -> i64 {
        self.h
    }

    /// Precision numerator: exponents `n/h` with `n < prec_num()` are known.
    pub fn prec_num(&self) -> i64 {
        self.prec
    }

    /// Precision as an exponent.
    pub fn precision(&self) -> Ratio<i64> {
        Ratio::new(self.prec, self.h)
    }

    /// Coefficient of `q^{n/h}`.
    ///
    /// # Panics
    /// If `n` is not below the precision.
    pub fn coeff(&self, n: i64) -> C {
        assert!(n < self.prec, "coefficient {n}/{} beyond precision {}/{}", self.h, self.prec, self.h);
        self.coeffs.get(&n).cloned().unwrap_or_else(C::zero)
    }

    /// Coefficient of `q^e` for an exponent given as a rational number.
    pub fn coeff_at(&self, e: Ratio<i64>) -> C {
        let scaled = e * self.h;
        if !scaled.is_integer() {
            return C::zero();
        }
        self.coeff(scaled.to_integer())
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        self.coeffs.iter().map(|(k, v)| (*k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Smallest exponent numerator with a nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Coefficients of `q^{0/h}, q^{1/h}, …` up to (excluding) `count`.
    pub fn dense(&self, count: i64) -> Vec<C> {
        (0..count).map(|n| self.coeff(n)).collect()
    }

    fn set(&mut self, n: i64, c: C) {
        if n >= self.prec {
            return;
        }
        if c.is_zero() {
            self.coeffs.remove(&n);
        } else {
            self.coeffs.insert(n, c);
        }
    }

    fn add_at(&mut self, n: i64, c: C) {
        if n >= self.prec || c.is_zero() {
            return;
        }
        let v = match self.coeffs.remove(&n) {
            Some(old) => old + c,
            None => c,
        };
        if !v.is_zero() {
            self.coeffs.insert(n, v);
        }
    }

    /// Lower the precision to `prec` (never raises it).
    pub fn truncate(&self, prec: i64) -> Self {
        let prec = prec.min(self.prec);
        let coeffs = self.coeffs.range(..prec).map(|(k, v)| (*k, v.clone())).collect();
        QSeries { h: self.h, prec, coeffs }
    }

    /// The same series written on the finer lattice `h2`, a multiple of `h`.
    pub fn on_lattice(&self, h2: i64) -> Self {
        assert!(h2 % self.h == 0, "lattice {h2} does not refine {}", self.h);
        let k = h2 / self.h;
        QSeries {
            h: h2,
            prec: self.prec * k,
            coeffs: self.coeffs.iter().map(|(n, c)| (n * k, c.clone())).collect(),
        }
    }

    /// Coarsest lattice on which the stored terms live.
    pub fn reduce_lattice(&self) -> Self {
        let mut g = self.h;
        for n in self.coeffs.keys() {
            g = g.gcd(n);
        }
        if g <= 1 {
            return self.clone();
        }
        QSeries {
            h: self.h / g,
            prec: Integer::div_ceil(&self.prec, &g),
            coeffs: self.coeffs.iter().map(|(n, c)| (n / g, c.clone())).collect(),
        }
    }

    /// `f(kτ)`.
    pub fn rescale(&self, k: i64) -> Self {
        assert!(k > 0);
        QSeries {
            h: self.h,
            prec: self.prec * k,
            coeffs: self.coeffs.iter().map(|(n, c)| (n * k, c.clone())).collect(),
        }
    }

    /// Multiply by `q^{n/h}`.
    pub fn shift(&self, n: i64) -> Self {
        QSeries {
            h: self.h,
            prec: self.prec + n,
            coeffs: self.coeffs.iter().map(|(k, c)| (k + n, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.h, self.prec);
        if c.is_zero() {
            return out;
        }
        for (n, v) in &self.coeffs {
            out.set(*n, v.clone() * c.clone());
        }
        out
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        let h = a.h.lcm(&b.h);
        (a.on_lattice(h), b.on_lattice(h))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = Self::common(self, other);
        let mut out = a.truncate(b.prec);
        for (n, c) in &b.coeffs {
            out.add_at(*n, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        QSeries {
            h: self.h,
            prec: self.prec,
            coeffs: self.coeffs.iter().map(|(n, c)| (*n, -c.clone())).collect(),
        }
    }

    /// Product. The result is known up to `min(prec_a + val_b, prec_b + val_a)`.
    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = Self::common(self, other);
        let va = a.valuation().unwrap_or(a.prec);
        let vb = b.valuation().unwrap_or(b.prec);
        let prec = (a.prec + vb).min(b.prec + va);
        let mut out = Self::zero(a.h, prec);
        for (i, x) in &a.coeffs {
            if i + vb >= prec {
                break;
            }
            for (j, y) in &b.coeffs {
                if i + j >= prec {
                    break;
                }
                out.add_at(i + j, x.clone() * y.clone());
            }
        }
        out
    }

    /// Nonnegative integer power by repeated squaring.
    pub fn pow_u(&self, mut e: u32) -> Self {
        let mut result = Self::one(self.h, i64::MAX / 4);
        let mut base = self.clone();
        let mut first = true;
        while e > 0 {
            if e & 1 == 1 {
                result = if first { base.clone() } else { result.mul(&base) };
                first = false;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        if first {
            Self::one(self.h, self.prec)
        } else {
            result
        }
    }
}

impl<C: Field> QSeries<C> {
    /// Multiplicative inverse of a series with invertible constant term.
    pub fn inverse(&self) -> Result<Self> {
        if self.valuation() != Some(0) {
            return Err(Error::NotInvertible("constant term is zero"));
        }
        let c0 = self.coeff(0);
        let inv0 = C::one() / c0;
        let mut out = Self::zero(self.h, self.prec);
        out.set(0, inv0.clone());
        for n in 1..self.prec {
            let mut acc = C::zero();
            for (k, a) in self.coeffs.range(1..=n) {
                if let Some(b) = out.coeffs.get(&(n - k)) {
                    acc = acc + a.clone() * b.clone();
                }
            }
            out.set(n, -(acc * inv0.clone()));
        }
        Ok(out)
    }

    /// Integer power; negative exponents go through [`QSeries::inverse`].
    pub fn pow(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow_u(e as u32))
        } else {
            Ok(self.inverse()?.pow_u((-e) as u32))
        }
    }

    /// Logarithm of a series with constant term exactly 1 and no terms of
    /// negative exponent.
    pub fn log(&self) -> Result<Self> {
        if self.coeffs.keys().next().is_some_and(|&k| k < 0) || !self.coeff(0).is_one() {
            return Err(Error::NotInvertible("log needs constant term 1"));
        }
        let mut g = Self::zero(self.h, self.prec);
        for n in 1..self.prec {
            let mut acc = C::from_i64(n).unwrap() * self.coeff(n);
            for (k, gk) in g.coeffs.range(1..n) {
                if let Some(f) = self.coeffs.get(&(n - k)) {
                    acc = acc - C::from_i64(*k).unwrap() * gk.clone() * f.clone();
                }
            }
            g.set(n, acc / C::from_i64(n).unwrap());
        }
        Ok(g)
    }

    /// Exponential of a series whose terms all have positive exponent.
    pub fn exp(&self) -> Result<Self> {
        if self.coeffs.keys().next().is_some_and(|&k| k <= 0) {
            return Err(Error::NotInvertible("exp needs zero constant term"));
        }
        let mut f = Self::one(self.h, self.prec);
        for n in 1..self.prec {
            let mut acc = C::zero();
            for (k, gk) in self.coeffs.range(1..=n) {
                if let Some(fv) = f.coeffs.get(&(n - k)) {
                    acc = acc + C::from_i64(*k).unwrap() * gk.clone() * fv.clone();
                }
            }
            f.set(n, acc / C::from_i64(n).unwrap());
        }
        Ok(f)
    }
}

impl<C: Scalar> Add for &QSeries<C> {
    type Output = QSeries<C>;
    fn add(self, rhs: Self) -> QSeries<C> {
        QSeries::add(self, rhs)
    }
}

impl<C: Scalar> Sub for &QSeries<C> {
    type Output = QSeries<C>;
    fn sub(self, rhs: Self) -> QSeries<C> {
        QSeries::sub(self, rhs)
    }
}

impl<C: Scalar> Mul for &QSeries<C> {
    type Output = QSeries<C>;
    fn mul(self, rhs: Self) -> QSeries<C> {
        QSeries::mul(self, rhs)
    }
}

impl<C: Scalar> Neg for &QSeries<C> {
    type Output = QSeries<C>;
    fn neg(self) -> QSeries<C> {
        QSeries::neg(self)
    }
}

impl<C: Scalar + fmt::Display> fmt::Display for QSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let e = Ratio::new(*n, self.h);
            if e.is_integer() && *e.numer() == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "({c})*q^{e}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", Ratio::new(self.prec, self.h))
    }
}

impl<C: Scalar + fmt::Display> fmt::Debug for QSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
