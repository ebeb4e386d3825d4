//! Weak Jacobi forms of weight 0 and index 1, stored as Taylor pairs.
//!
//! Every such form of level `N` is `tc₀·φ₀,₁/12 + tc₂·φ₋₂,₁` with `tc₀` a
//! constant and `tc₂ ∈ M₂(Γ₀(N))`. Fourier coefficients depend on `(n, r)`
//! only through the discriminant `D = 4n − r²`, and vanish for `D < −1`.

use std::fmt;

use num_integer::Integer;
use num_traits::Zero;

use crate::exactseries::{euler_product, rat};
use crate::modforms::{self, CuspData, ModFormVec};
use crate::{Error, Int, QSeries, QZSeries, Rat, Result};

/// The two generators of the ring of weak Jacobi forms of index 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    /// `φ₀,₁ = ζ + 10 + ζ⁻¹ + O(q)`.
    Phi0,
    /// `φ₋₂,₁ = ζ − 2 + ζ⁻¹ + O(q)`.
    PhiMinus2,
}

/// Discriminant-indexed coefficients `c(D)` for `−1 ≤ D ≤ d_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorTable {
    pub which: Generator,
    pub d_max: i64,
    values: Vec<Int>,
}

impl GeneratorTable {
    /// `c(D)`; zero below `−1`. Panics beyond `d_max`.
    pub fn get(&self, d: i64) -> Int {
        assert!(d <= self.d_max, "discriminant {d} beyond table bound {}", self.d_max);
        if d < -1 {
            Int::zero()
        } else {
            self.values[(d + 1) as usize].clone()
        }
    }
}

/// `Σ_j f_j·q^j` applied to a `(q, ζ)` series.
fn mul_univariate(a: &QZSeries, f: &QSeries) -> QZSeries {
    let prec = a.n_prec().min(f.prec_num());
    let mut out = QZSeries::zero(prec);
    for ((n, r), x) in a.terms() {
        for (j, y) in f.terms() {
            if n + j >= prec {
                break;
            }
            out.add_at((n + j, r), x * y);
        }
    }
    out
}

/// `θ₁(τ,z)²` without its `q^{1/4}` prefactor:
/// `Σ_{a,b} (−1)^{a+b} q^{(a²+a+b²+b)/2} ζ^{a+b+1}`.
fn theta1_squared(n_prec: i64) -> QZSeries {
    let bound = (2.0 * n_prec as f64).sqrt().ceil() as i64 + 2;
    let mut out = QZSeries::zero(n_prec);
    for a in -bound..=bound {
        for b in -bound..=bound {
            let e = (a * a + a + b * b + b) / 2;
            if e < n_prec {
                let sign = if (a + b) % 2 == 0 { 1 } else { -1 };
                out.add_at((e, a + b + 1), rat(sign));
            }
        }
    }
    out
}

/// `θᵢ(τ,z)²` for `i = 2, 3, 4` in powers of `Q = q^{1/2}` (the `q^{1/4}`
/// of `θ₂²` dropped), as a `(Q, ζ)` series.
fn even_theta_squared(i: u8, q_prec: i64) -> QZSeries {
    let bound = (q_prec as f64).sqrt().ceil() as i64 + 2;
    let mut out = QZSeries::zero(q_prec);
    for a in -bound..=bound {
        for b in -bound..=bound {
            let (e, r, sign) = match i {
                2 => (a * a + a + b * b + b, a + b + 1, 1),
                3 => (a * a + b * b, a + b, 1),
                _ => (a * a + b * b, a + b, if (a + b) % 2 == 0 { 1 } else { -1 }),
            };
            if e < q_prec {
                out.add_at((e, r), rat(sign));
            }
        }
    }
    out
}

/// Value at `z = 0` of a `(q, ζ)` series.
fn at_zero(a: &QZSeries) -> QSeries {
    QSeries::from_terms(1, a.n_prec(), a.terms().map(|((n, _), c)| (n, c.clone())))
}

/// Fourier expansion of a generator below `q^{n_prec}`.
pub fn generator_fourier(which: Generator, n_prec: i64) -> QZSeries {
    match which {
        Generator::PhiMinus2 => {
            let eta6 = euler_product(n_prec).pow_u(6);
            mul_univariate(&theta1_squared(n_prec), &eta6.inverse().expect("unit"))
        }
        Generator::Phi0 => {
            let q_prec = 2 * n_prec;
            let mut sum = QZSeries::zero(q_prec);
            for i in [2, 3, 4] {
                let t = even_theta_squared(i, q_prec);
                let inv = at_zero(&t).inverse().expect("unit");
                sum = sum.add(&mul_univariate(&t, &inv));
            }
            let mut out = QZSeries::zero(n_prec);
            for ((n, r), c) in sum.terms() {
                assert!(n % 2 == 0, "half-integral q-power survived in φ₀,₁");
                out.add_at((n / 2, r), c * rat(4));
            }
            out
        }
    }
}

/// Coefficients `c(D)` of a generator for `−1 ≤ D ≤ d_max`.
pub fn generator_coeffs(which: Generator, d_max: i64) -> GeneratorTable {
    let d_max = d_max.max(-1);
    let n_prec = Integer::div_floor(&(d_max + 1), &4) + 2;
    let f = generator_fourier(which, n_prec);
    let values = (-1..=d_max)
        .map(|d| {
            // D = 4n − r² with r ∈ {0, 1}; other residues are not discriminants
            let c = match d.rem_euclid(4) {
                0 => f.coeff(d / 4, 0),
                3 => f.coeff((d + 1) / 4, 1),
                _ => Rat::zero(),
            };
            assert!(c.is_integer(), "non-integral generator coefficient");
            c.to_integer()
        })
        .collect();
    GeneratorTable { which, d_max, values }
}

/// Both generator tables up to a common discriminant bound.
#[derive(Clone, Debug)]
pub struct Generators {
    pub phi0: GeneratorTable,
    pub phi_m2: GeneratorTable,
}

impl Generators {
    pub fn new(d_max: i64) -> Self {
        Generators {
            phi0: generator_coeffs(Generator::Phi0, d_max),
            phi_m2: generator_coeffs(Generator::PhiMinus2, d_max),
        }
    }

    pub fn d_max(&self) -> i64 {
        self.phi0.d_max
    }

    /// `c(D)` of `tc₀·φ₀,₁/12 + F·φ₋₂,₁` for `−1 ≤ D ≤ d_max`, where `F` is
    /// the q-expansion of `tc₂`.
    pub fn discriminant_table(&self, tc0: &Rat, tc2: &QSeries) -> Result<Vec<Rat>> {
        let d_max = self.d_max();
        let need = Integer::div_floor(&(d_max + 1), &4) + 1;
        if tc2.prec_num() < need {
            return Err(Error::Precision { requested: need, available: tc2.prec_num() });
        }
        let a = tc0 / rat(12);
        let f: Vec<(i64, Rat)> = tc2.terms().map(|(j, c)| (j, c.clone())).collect();
        Ok((-1..=d_max)
            .map(|d| {
                let mut c = &a * Rat::from_integer(self.phi0.get(d));
                for (j, fj) in &f {
                    let dd = d - 4 * j;
                    if dd < -1 {
                        break;
                    }
                    c += fj * Rat::from_integer(self.phi_m2.get(dd));
                }
                c
            })
            .collect())
    }
}

/// Weak Jacobi form `tc₀·φ₀,₁/12 + tc₂·φ₋₂,₁` of weight 0, index 1 and
/// level `N`. The constant `tc₀` is kept as a plain rational; `M₀(N)` is
/// one dimensional.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct JacobiForm01 {
    pub level: u32,
    pub tc0: Rat,
    pub tc2: ModFormVec,
}

impl JacobiForm01 {
    pub fn new(level: u32, tc0: Rat, tc2: ModFormVec) -> Result<Self> {
        if tc2.weight != 2 || tc2.level != level {
            return Err(Error::Input(format!("tc2 {tc2} does not live in M2({level})")));
        }
        Ok(JacobiForm01 { level, tc0, tc2 })
    }

    /// `tc₀` and `tc₂` coordinates given as rationals.
    pub fn from_coords(level: u32, tc0: Rat, tc2: Vec<Rat>) -> Result<Self> {
        Self::new(level, tc0, ModFormVec::new(2, level, tc2)?)
    }

    pub fn zero(level: u32) -> Result<Self> {
        Self::new(level, Rat::zero(), ModFormVec::zero(2, level)?)
    }

    pub fn is_zero(&self) -> bool {
        self.tc0.is_zero() && self.tc2.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        JacobiForm01 { level: self.level, tc0: &self.tc0 + &other.tc0, tc2: self.tc2.add(&other.tc2) }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        JacobiForm01 { level: self.level, tc0: &self.tc0 * c, tc2: self.tc2.scale(c) }
    }

    /// `c(φ; D)` for `−1 ≤ D ≤ d_max` of the generator tables.
    pub fn discriminant_table(&self, gens: &Generators) -> Result<Vec<Rat>> {
        let prec = Integer::div_floor(&(gens.d_max() + 1), &4) + 1;
        gens.discriminant_table(&self.tc0, &self.tc2.q_expansion(prec)?)
    }

    /// `c(φ; −1)` and `c(φ; 0)`, which only involve constant terms.
    pub fn polar_coefficients(&self) -> (Rat, Rat) {
        let a = &self.tc0 / rat(12);
        let f0 = self.tc2.constant_term();
        (&a + &f0, &a * rat(10) - f0 * rat(2))
    }
}

impl fmt::Display for JacobiForm01 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.tc0, self.tc2)
    }
}

impl fmt::Debug for JacobiForm01 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Full `(n, r)` Fourier expansion below `q^{n_max+1}`.
pub fn fourier_qz(phi: &JacobiForm01, n_max: i64) -> Result<QZSeries> {
    let n_prec = n_max + 1;
    let tc2 = phi.tc2.q_expansion(n_prec)?;
    let mut out = QZSeries::zero(n_prec);
    for ((n, r), c) in generator_fourier(Generator::Phi0, n_prec).terms() {
        out.add_at((n, r), c * &phi.tc0 / rat(12));
    }
    out = out.add(&mul_univariate(&generator_fourier(Generator::PhiMinus2, n_prec), &tc2));
    Ok(out)
}

/// Taylor pair of the projected cusp expansion `π_FE(φ_c)`.
pub fn cusp_taylor_pair(phi: &JacobiForm01, cusp: &CuspData) -> Result<(Rat, ModFormVec)> {
    Ok((phi.tc0.clone(), modforms::pi_fe(cusp, &phi.tc2)?))
}

/// The projected cusp expansion as a Jacobi form.
pub fn at_cusp(phi: &JacobiForm01, cusp: &CuspData) -> Result<JacobiForm01> {
    let (tc0, tc2) = cusp_taylor_pair(phi, cusp)?;
    JacobiForm01::new(phi.level, tc0, tc2)
}
