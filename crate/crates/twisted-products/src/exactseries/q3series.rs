use crate::{Error, Field, Result, Scalar};

/// Monomial `q₁ⁿ ζʳ q₂ᵐ` as `(n, r, m)`.
pub type Monomial = (i64, i64, i64);

/// Truncation window for [`Q3Series`].
///
/// A monomial `(n, r, m)` is kept when `0 ≤ n ≤ a`, `0 ≤ m ≤ b` and
/// `0 ≤ n + m − r ≤ u`. The quantity `n + m − r` is additive and nonnegative
/// on every factor `q₁ⁿζʳq₂ᵐ` of a weak Jacobi product (the support bound
/// `r² ≤ 4nm + 1` gives `r ≤ n + m`), so the window is closed under the
/// truncated ring operations. For fixed `(n, m)` the ζ-exponents are exact
/// down to `r = n + m − u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Q3Bounds {
    pub a: i64,
    pub b: i64,
    pub u: i64,
}

impl Q3Bounds {
    /// Bounds `A` in `q₁`, `B` in `q₂`, with ζ-depth `u = A + B`.
    pub fn new(a: i64, b: i64) -> Self {
        Q3Bounds { a, b, u: a + b }
    }

    pub fn with_depth(a: i64, b: i64, u: i64) -> Self {
        Q3Bounds { a, b, u }
    }

    pub fn contains(&self, (n, r, m): Monomial) -> bool {
        let u = n + m - r;
        (0..=self.a).contains(&n) && (0..=self.b).contains(&m) && (0..=self.u).contains(&u)
    }

    fn len(&self) -> usize {
        ((self.a + 1) * (self.b + 1) * (self.u + 1)) as usize
    }

    fn index(&self, (n, r, m): Monomial) -> usize {
        let u = n + m - r;
        ((n * (self.b + 1) + m) * (self.u + 1) + u) as usize
    }

    fn monomial(&self, idx: usize) -> Monomial {
        let idx = idx as i64;
        let u = idx % (self.u + 1);
        let rest = idx / (self.u + 1);
        let m = rest % (self.b + 1);
        let n = rest / (self.b + 1);
        (n, n + m - u, m)
    }

    /// Grading used by `exp`/`log`: positive on every non-constant monomial.
    fn degree(&self, (n, r, m): Monomial) -> i64 {
        n + m + (n + m - r)
    }
}

/// Positivity in the ordering used for product expansions:
/// `n > 0`, or `n = 0, m > 0`, or `n = m = 0, r < 0`.
pub fn is_positive((n, r, m): Monomial) -> bool {
    n > 0 || (n == 0 && m > 0) || (n == 0 && m == 0 && r < 0)
}

/// Truncated series in `q₁, ζ, q₂` over the window of a [`Q3Bounds`].
#[derive(Clone, PartialEq)]
pub struct Q3Series<C> {
    bounds: Q3Bounds,
    coeffs: Vec<C>,
}

impl<C: Scalar> Q3Series<C> {
    pub fn zero(bounds: Q3Bounds) -> Self {
        assert!(bounds.a >= 0 && bounds.b >= 0 && bounds.u >= 0);
        Q3Series { bounds, coeffs: vec![C::zero(); bounds.len()] }
    }

    pub fn one(bounds: Q3Bounds) -> Self {
        let mut s = Self::zero(bounds);
        s.coeffs[0] = C::one();
        s
    }

    pub fn bounds(&self) -> Q3Bounds {
        self.bounds
    }

    /// Coefficient of `q₁ⁿζʳq₂ᵐ`; zero outside the window.
    pub fn coeff(&self, mono: Monomial) -> C {
        if self.bounds.contains(mono) {
            self.coeffs[self.bounds.index(mono)].clone()
        } else {
            C::zero()
        }
    }

    /// Add `c` at `mono`; silently dropped outside the window.
    pub fn add_at(&mut self, mono: Monomial, c: C) {
        if self.bounds.contains(mono) {
            let i = self.bounds.index(mono);
            let v = std::mem::replace(&mut self.coeffs[i], C::zero());
            self.coeffs[i] = v + c;
        }
    }

    /// Nonzero terms in index order.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &C)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.bounds.monomial(i), c))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.bounds, other.bounds, "bounds differ");
        Q3Series {
            bounds: self.bounds,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(x, y)| x.clone() + y.clone()).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        Q3Series { bounds: self.bounds, coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.bounds, other.bounds, "bounds differ");
        let mut out = Self::zero(self.bounds);
        let rhs: Vec<_> = other.terms().map(|(m, c)| (m, c.clone())).collect();
        for ((n1, r1, m1), x) in self.terms() {
            for ((n2, r2, m2), y) in &rhs {
                out.add_at((n1 + n2, r1 + r2, m1 + m2), x.clone() * y.clone());
            }
        }
        out
    }

    /// Nonzero terms as `(index, monomial, value)` for the recurrences below.
    fn support(&self) -> Vec<(Monomial, C)> {
        self.terms().map(|(m, c)| (m, c.clone())).collect()
    }
}

impl<C: Field> Q3Series<C> {
    /// `exp` of a series with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NotInvertible("exp needs zero constant term"));
        }
        let bd = self.bounds;
        let g: Vec<(Monomial, C, C)> = self
            .support()
            .into_iter()
            .map(|(m, c)| {
                let w = C::from_i64(bd.degree(m)).unwrap() * c.clone();
                (m, c, w)
            })
            .collect();
        let mut f = Self::one(bd);
        // Euler operator E = Σ degree·∂: E f = (E g)·f. Lexicographic index
        // order visits every proper divisor of a monomial before the monomial.
        for idx in 1..bd.len() {
            let mono = bd.monomial(idx);
            let (n, r, m) = mono;
            let mut acc = C::zero();
            for ((n1, r1, m1), _, w) in &g {
                let rest = (n - n1, r - r1, m - m1);
                if bd.contains(rest) {
                    let fv = &f.coeffs[bd.index(rest)];
                    if !fv.is_zero() {
                        acc = acc + w.clone() * fv.clone();
                    }
                }
            }
            if !acc.is_zero() {
                f.coeffs[idx] = acc / C::from_i64(bd.degree(mono)).unwrap();
            }
        }
        Ok(f)
    }

    /// `log` of a series with constant term 1.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::NotInvertible("log needs constant term 1"));
        }
        let bd = self.bounds;
        let f = self.support();
        let mut g = Self::zero(bd);
        for idx in 1..bd.len() {
            let mono = bd.monomial(idx);
            let (n, r, m) = mono;
            let t = C::from_i64(bd.degree(mono)).unwrap();
            let mut acc = t.clone() * self.coeffs[idx].clone();
            for ((n1, r1, m1), fv) in &f {
                if (*n1, *r1, *m1) == (0, 0, 0) || (*n1, *r1, *m1) == mono {
                    continue;
                }
                let rest = (n - n1, r - r1, m - m1);
                if bd.contains(rest) {
                    let gv = &g.coeffs[bd.index(rest)];
                    if !gv.is_zero() {
                        acc = acc - C::from_i64(bd.degree(rest)).unwrap() * gv.clone() * fv.clone();
                    }
                }
            }
            g.coeffs[idx] = acc / t;
        }
        Ok(g)
    }
}

/// `Σᵢ cᵢ·log(1 − xᵢ)` truncated to `bounds`.
pub fn log_of_binomials<C: Field>(factors: &[(Monomial, C)], bounds: Q3Bounds) -> Result<Q3Series<C>> {
    let mut g = Q3Series::zero(bounds);
    for ((n, r, m), c) in factors {
        let x = (*n, *r, *m);
        if !is_positive(x) || n + m - r < 0 {
            return Err(Error::BadFactor(x));
        }
        if c.is_zero() {
            continue;
        }
        let mut k = 1i64;
        while bounds.contains((k * n, k * r, k * m)) {
            let term = -(c.clone() / C::from_i64(k).unwrap());
            g.add_at((k * n, k * r, k * m), term);
            k += 1;
        }
    }
    Ok(g)
}

/// `∏ᵢ (1 − xᵢ)^{cᵢ}` truncated to `bounds`, computed as
/// `exp(Σᵢ cᵢ log(1 − xᵢ))`. Exponents may be any field elements.
///
/// Every monomial must be positive and satisfy `n + m − r ≥ 0`; otherwise
/// the product either fails to converge formally or escapes the window.
pub fn series_log1p_product<C: Field>(factors: &[(Monomial, C)], bounds: Q3Bounds) -> Result<Q3Series<C>> {
    log_of_binomials(factors, bounds)?.exp()
}

impl<C: Scalar + std::fmt::Display> std::fmt::Debug for Q3Series<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Q3Series[{:?}](", self.bounds)?;
        for (i, ((n, r, m), c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})q1^{n}z^{r}q2^{m}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;

    fn r(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    #[test]
    fn binomial_square() {
        let s = series_log1p_product(&[((1, 0, 0), r(2))], Q3Bounds::new(3, 0)).unwrap();
        let terms: Vec<_> = s.terms().map(|(m, c)| (m, c.clone())).collect();
        assert_eq!(terms, vec![((0, 0, 0), r(1)), ((1, 0, 0), r(-2)), ((2, 0, 0), r(1))]);
    }

    #[test]
    fn zeta_inverse_factor_accepted() {
        let s = series_log1p_product(&[((0, -1, 0), r(1))], Q3Bounds::with_depth(0, 0, 1)).unwrap();
        let terms: Vec<_> = s.terms().map(|(m, c)| (m, c.clone())).collect();
        assert_eq!(terms, vec![((0, 0, 0), r(1)), ((0, -1, 0), r(-1))]);
    }

    #[test]
    fn geometric_in_q1q2() {
        let s = series_log1p_product(&[((1, 0, 1), r(-1))], Q3Bounds::new(2, 2)).unwrap();
        let terms: Vec<_> = s.terms().map(|(m, c)| (m, c.clone())).collect();
        assert_eq!(terms, vec![((0, 0, 0), r(1)), ((1, 0, 1), r(1)), ((2, 0, 2), r(1))]);
    }

    #[test]
    fn rejects_nonpositive() {
        assert!(series_log1p_product(&[((0, 1, 0), r(1))], Q3Bounds::new(1, 1)).is_err());
        assert!(series_log1p_product(&[((0, 0, 0), r(1))], Q3Bounds::new(1, 1)).is_err());
    }

    #[test]
    fn log_inverts_exp() {
        let bd = Q3Bounds::new(2, 2);
        let f = series_log1p_product(&[((1, 1, 0), r(3)), ((0, -1, 0), r(-2)), ((1, -2, 1), r(5))], bd).unwrap();
        assert_eq!(f.log().unwrap().exp().unwrap(), f);
    }
}
