//! Floating-point checks of the embedded data: slash invariance of the
//! echelon bases under `Γ₀(N)` and the projection matrices `Π_FE` via
//! averages of `f|_k γ` over translates.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::modforms::{self, cusp_set, echelon_basis, pi_fe, CuspData, ModFormVec};
use crate::{Error, QSeries, Result};

pub const DEFAULT_TERMS: i64 = 128;
pub const PROJECTION_TOL: f64 = 1e-8;
pub const MODULARITY_TOL: f64 = 1e-7;
/// Points whose transformed imaginary part drops below this are rejected.
pub const MIN_IMAG: f64 = 0.02;

/// An evaluation point with its truncation and tolerance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SamplePoint {
    pub tau: Complex64,
    pub terms: i64,
    pub tol: f64,
}

impl SamplePoint {
    pub fn new(tau: Complex64, terms: i64, tol: f64) -> Result<Self> {
        if tau.im <= 0.0 || tol <= 0.0 || terms <= 0 {
            return Err(Error::Input(format!("bad sample point {tau} (T = {terms}, tol = {tol})")));
        }
        Ok(SamplePoint { tau, terms, tol })
    }
}

/// `(a b; c d)` acting by Möbius transformations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gamma {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Gamma {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        if a * d - b * c != 1 {
            return Err(Error::Input(format!("({a} {b}; {c} {d}) is not in SL2(Z)")));
        }
        Ok(Gamma { a, b, c, d })
    }

    fn automorphy(&self, tau: Complex64) -> Complex64 {
        tau * self.c as f64 + self.d as f64
    }

    pub fn act(&self, tau: Complex64) -> Complex64 {
        (tau * self.a as f64 + self.b as f64) / self.automorphy(tau)
    }
}

/// `Σ_{n < terms} c(n/h) e(nτ/h)` over the stored coefficients.
pub fn eval_series(f: &QSeries, tau: Complex64, terms: i64) -> Complex64 {
    let h = f.lattice() as f64;
    let q = (Complex64::i() * 2.0 * PI * tau / h).exp();
    let n_max = terms.min(f.prec_num());
    let mut acc = Complex64::new(0.0, 0.0);
    let mut qn = Complex64::new(1.0, 0.0);
    let mut last = 0;
    for (n, c) in f.terms() {
        if n >= n_max {
            break;
        }
        qn *= q.powi((n - last) as i32);
        last = n;
        acc += qn * c.to_f64().unwrap_or(f64::NAN);
    }
    acc
}

/// `(f|_k γ)(τ) = (cτ + d)^{−k} f(γτ)`.
fn slash(f: &QSeries, k: u32, g: &Gamma, tau: Complex64, terms: i64) -> Complex64 {
    eval_series(f, g.act(tau), terms) / g.automorphy(tau).powi(k as i32)
}

/// `γ = (1 0; e 1)` sending `∞` to the cusp `1/e`; the identity at `∞`.
pub fn cusp_matrix(cusp: &CuspData) -> Gamma {
    if cusp.is_infinity() {
        Gamma { a: 1, b: 0, c: 0, d: 1 }
    } else {
        Gamma { a: 1, b: 0, c: cusp.denominator as i64, d: 1 }
    }
}

/// Smallest imaginary part met while checking the projection at `τ`.
fn projection_height(cusp: &CuspData, tau: Complex64) -> f64 {
    let g = cusp_matrix(cusp);
    (0..cusp.width).map(|j| g.act(tau + j as f64).im).fold(tau.im, f64::min)
}

/// Fixed evaluation points for a cusp: the translates `τ + j` are centred
/// on the preimage `−1/e` of `∞`, and `Im τ` balances the height at `τ`
/// against the heights of the transformed translates.
pub fn projection_samples(cusp: &CuspData, terms: i64, tol: f64) -> Result<Vec<SamplePoint>> {
    let x0 = if cusp.is_infinity() {
        0.0
    } else {
        -1.0 / cusp.denominator as f64 - (cusp.width as f64 - 1.0) / 2.0
    };
    let mut best = (f64::NEG_INFINITY, 1.0);
    for i in 0..=400 {
        let y = 0.005 * 10f64.powf(i as f64 / 100.0);
        let s = projection_height(cusp, Complex64::new(x0, y));
        if s > best.0 {
            best = (s, y);
        }
    }
    let y = best.1;
    let mut out = Vec::new();
    for (dx, sy) in [(0.0, 1.0), (0.11, 1.0), (-0.07, 0.85), (0.05, 1.2)] {
        let tau = Complex64::new(x0 + dx, y * sy);
        let height = projection_height(cusp, tau);
        if height < MIN_IMAG {
            return Err(Error::Input(format!("cusp {cusp}: sample {tau} reaches height {height:.4}")));
        }
        out.push(SamplePoint::new(tau, terms, tol)?);
    }
    Ok(out)
}

/// Max over basis elements `f` and samples `τ` of
/// `|(1/h) Σ_{j mod h} (f|_k γ)(τ + j) − (Π_FE f)(τ)|`.
pub fn verify_projection(k: u32, n: u32, cusp: &CuspData, samples: &[SamplePoint]) -> Result<f64> {
    let terms = samples.iter().map(|s| s.terms).max().unwrap_or(0);
    let prec = terms.min(modforms::available_precision(n)?);
    let basis = echelon_basis(k, n, prec)?;
    let g = cusp_matrix(cusp);
    let h = cusp.width as f64;
    let mut worst: f64 = 0.0;
    for (i, f) in basis.iter().enumerate() {
        let mut unit = ModFormVec::zero(k, n)?;
        if k > 0 {
            unit.coords[i] = crate::exactseries::rat(1);
        }
        let image = if k == 0 { f.clone() } else { pi_fe(cusp, &unit)?.q_expansion(prec)? };
        for s in samples {
            let lhs = if cusp.is_infinity() {
                eval_series(f, s.tau, s.terms)
            } else {
                (0..cusp.width).map(|j| slash(f, k, &g, s.tau + j as f64, s.terms)).sum::<Complex64>() / h
            };
            let rhs = eval_series(&image, s.tau, s.terms);
            worst = worst.max((lhs - rhs).norm());
        }
    }
    Ok(worst)
}

/// Three fixed elements of `Γ₀(N)` with lower-left entry `N`.
pub fn modularity_gammas(n: u32) -> Vec<Gamma> {
    let c = n as i64;
    let mut ds = vec![1, -1];
    ds.extend((2..).filter(|d: &i64| d.gcd(&c) == 1).take(1));
    ds.into_iter()
        .map(|d| {
            // a·d ≡ 1 (mod c)
            let e = d.extended_gcd(&c);
            let a = e.x.rem_euclid(c.max(1));
            let b = (a * d - 1) / c;
            Gamma { a, b, c, d }
        })
        .collect()
}

/// Points `τ = −d/c + i/c` (slightly perturbed), where `cτ + d ≈ i` so that
/// `τ` and `γτ` both have imaginary part about `1/c`.
pub fn modularity_samples(g: &Gamma, terms: i64, tol: f64) -> Result<Vec<SamplePoint>> {
    let c = g.c as f64;
    [(0.0, 1.0), (0.13, 0.9), (-0.09, 1.1)]
        .iter()
        .map(|(dx, sy)| SamplePoint::new(Complex64::new((-(g.d as f64) + dx) / c, sy / c), terms, tol))
        .collect()
}

/// Max over basis elements and samples of `|f(γτ) − (cτ + d)^k f(τ)|`.
pub fn verify_modularity(k: u32, n: u32, checks: &[(Gamma, SamplePoint)]) -> Result<f64> {
    let terms = checks.iter().map(|(_, s)| s.terms).max().unwrap_or(0);
    let prec = terms.min(modforms::available_precision(n)?);
    let mut worst: f64 = 0.0;
    for f in echelon_basis(k, n, prec)? {
        for (g, s) in checks {
            if g.c % n as i64 != 0 {
                return Err(Error::Input(format!("{g:?} is not in Gamma0({n})")));
            }
            let lhs = eval_series(&f, g.act(s.tau), s.terms);
            let rhs = g.automorphy(s.tau).powi(k as i32) * eval_series(&f, s.tau, s.terms);
            worst = worst.max((lhs - rhs).norm());
        }
    }
    Ok(worst)
}

/// One line of a residual report.
#[derive(Clone, Debug, PartialEq)]
pub struct Residual {
    pub kind: &'static str,
    pub weight: u32,
    pub level: u32,
    /// Cusp label for projection checks.
    pub cusp: Option<String>,
    pub residual: f64,
    pub tol: f64,
}

impl Residual {
    pub fn passed(&self) -> bool {
        self.residual < self.tol
    }
}

/// Every stored projection matrix at `T = terms`, then modularity of every
/// stored basis.
pub fn verify_all(terms: i64, projection_tol: f64, modularity_tol: f64) -> Result<Vec<Residual>> {
    let data = modforms::data()?;
    let mut out = Vec::new();
    for (k, n, key) in data.projections.keys() {
        let cusp = CuspData::parse(*n, key)?;
        let samples = projection_samples(&cusp, terms, projection_tol)?;
        out.push(Residual {
            kind: "projection",
            weight: *k,
            level: *n,
            cusp: Some(cusp.label()),
            residual: verify_projection(*k, *n, &cusp, &samples)?,
            tol: projection_tol,
        });
    }
    for n in modforms::supported_levels()? {
        let checks = modularity_checks(n, terms, modularity_tol)?;
        out.push(Residual {
            kind: "modularity",
            weight: 2,
            level: n,
            cusp: None,
            residual: verify_modularity(2, n, &checks)?,
            tol: modularity_tol,
        });
    }
    Ok(out)
}

/// The fixed `(γ, τ)` pairs used for level `N`.
pub fn modularity_checks(n: u32, terms: i64, tol: f64) -> Result<Vec<(Gamma, SamplePoint)>> {
    let mut out = Vec::new();
    for g in modularity_gammas(n) {
        for s in modularity_samples(&g, terms, tol)? {
            out.push((g, s));
        }
    }
    Ok(out)
}

/// Cusps of level `N` with a stored projection matrix.
pub fn projected_cusps(n: u32) -> Result<Vec<CuspData>> {
    let data = modforms::data()?;
    Ok(cusp_set(n)?.into_iter().filter(|c| data.projections.contains_key(&(2, n, c.key()))).collect())
}
