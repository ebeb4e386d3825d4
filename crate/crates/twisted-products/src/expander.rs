//! Trivariate expansions of `Φ_g^p` and of products of rescaled Borcherds
//! products, and their coefficient-wise comparison.
//!
//! An expansion is a leading monomial `q₁^a ζ^b q₂^c` times a series in the
//! truncation window of a [`Q3Bounds`]. Product exponents are rationals;
//! the identity being checked is one of formal power series over `ℚ`, and
//! integrality of the exponents is reported separately.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::borcherds::BorcherdsSpec;
use crate::exactseries::{divisors, log_of_binomials, rat, Monomial, Q3Bounds};
use crate::jacobi::{Generators, JacobiForm01};
use crate::moonshine::{class_data, moebius_component, power};
use crate::{Error, Int, Q3Series, QSeries, Rat, Result};

/// Leading monomial times a truncated series.
#[derive(Clone, PartialEq)]
pub struct Expansion {
    pub leading: Monomial,
    pub series: Q3Series,
    /// lcm of the denominators of all product exponents used.
    pub exponent_denominator: Int,
}

impl fmt::Debug for Expansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q1^{}z^{}q2^{} * {:?}", self.leading.0, self.leading.1, self.leading.2, self.series)
    }
}

/// Accumulates `Σ c·log(1 − x)` over factors inside the window.
struct FactorSum {
    bounds: Q3Bounds,
    log: Q3Series,
    denominator: Int,
}

impl FactorSum {
    fn new(bounds: Q3Bounds) -> Self {
        FactorSum { bounds, log: Q3Series::zero(bounds), denominator: Int::one() }
    }

    /// Factors `(1 − (q₁ⁿζʳq₂ᵐ)^scale)^{c(4nm − r²)}` over all positive
    /// `(n, r, m)` whose scaled monomial lies in the window. `table[D + 1]`
    /// holds `c(D)`.
    fn add_layer(&mut self, scale: i64, table: &[Rat]) -> Result<()> {
        let bd = self.bounds;
        let mut factors: Vec<(Monomial, Rat)> = Vec::new();
        for n in 0..=bd.a / scale {
            for m in 0..=bd.b / scale {
                // weak support: r² ≤ 4nm + 1, and u = scale·(n + m − r) ≤ U
                let rmax = ((4 * n * m + 1) as f64).sqrt().floor() as i64;
                for r in -rmax..=rmax {
                    if scale * (n + m - r) > bd.u || !crate::exactseries::is_positive((n, r, m)) {
                        continue;
                    }
                    let d = 4 * n * m - r * r;
                    let c = table.get((d + 1) as usize).ok_or(Error::Precision {
                        requested: d,
                        available: table.len() as i64 - 2,
                    })?;
                    if c.is_zero() {
                        continue;
                    }
                    self.denominator = self.denominator.lcm(c.denom());
                    factors.push(((scale * n, scale * r, scale * m), c.clone()));
                }
            }
        }
        self.log = self.log.add(&log_of_binomials(&factors, bd)?);
        Ok(())
    }

    fn finish(self, leading: Monomial) -> Result<Expansion> {
        Ok(Expansion { leading, series: self.log.exp()?, exponent_denominator: self.denominator })
    }
}

/// Largest discriminant a factor in the window can carry.
fn d_max(bounds: Q3Bounds) -> i64 {
    4 * bounds.a * bounds.b + 1
}

/// `Φ_g^p` in the window.
pub fn expand_phi_power(label: &str, p: u32, bounds: Q3Bounds) -> Result<Expansion> {
    let g = class_data(label)?;
    let gens = Generators::new(d_max(bounds));
    let pr = rat(p as i64);
    let mut acc = FactorSum::new(bounds);
    for d in divisors(g.order as u64) {
        let (m0, m2) = moebius_component(label, d as u32)?;
        let z = JacobiForm01::new(m2.level, m0, m2)?;
        let table: Vec<Rat> = z.discriminant_table(&gens)?.into_iter().map(|c| c * &pr).collect();
        acc.add_layer(d as i64, &table)?;
    }
    let p = p as i64;
    acc.finish((p, p, p))
}

/// `∏ B_{N_i}[p·φ_i, n_i]` in the window.
pub fn expand_borcherds_side(rows: &[BorcherdsSpec], p: u32, bounds: Q3Bounds) -> Result<Expansion> {
    let gens = Generators::new(d_max(bounds));
    let pr = rat(p as i64);
    let mut acc = FactorSum::new(bounds);
    let mut lead = (Rat::zero(), Rat::zero(), Rat::zero());
    for spec in rows {
        let spec = spec.scale(&pr);
        let (a, b, c) = spec.exponents()?;
        lead = (lead.0 + a, lead.1 + b, lead.2 + c);
        for (layer, table) in spec.product_exponents(&gens)? {
            acc.add_layer(layer.scale as i64, &table)?;
        }
    }
    let int = |x: &Rat| -> Result<i64> {
        if !x.is_integer() {
            return Err(Error::Input(format!("leading exponent {x} is not integral")));
        }
        x.to_integer().try_into().map_err(|_| Error::Input("leading exponent too large".into()))
    };
    let leading = (int(&lead.0)?, int(&lead.1)?, int(&lead.2)?);
    acc.finish(leading)
}

/// Result of [`compare`].
#[derive(Clone, Debug, PartialEq)]
pub enum Comparison {
    Equal,
    LeadingMismatch { lhs: Monomial, rhs: Monomial },
    Mismatch { monomial: Monomial, lhs: Rat, rhs: Rat },
}

impl Comparison {
    pub fn is_equal(&self) -> bool {
        *self == Comparison::Equal
    }
}

/// Exact comparison over the whole window. Monomials are reported relative
/// to the leading monomial.
pub fn compare(a: &Expansion, b: &Expansion) -> Result<Comparison> {
    let bd = a.series.bounds();
    if bd != b.series.bounds() {
        return Err(Error::BoundMismatch);
    }
    if a.leading != b.leading {
        return Ok(Comparison::LeadingMismatch { lhs: a.leading, rhs: b.leading });
    }
    let diff = a.series.add(&b.series.scale(&-Rat::one()));
    let first = diff.terms().next().map(|(m, _)| m);
    Ok(match first {
        None => Comparison::Equal,
        Some(m) => Comparison::Mismatch { monomial: m, lhs: a.series.coeff(m), rhs: b.series.coeff(m) },
    })
}

/// Default bounds for a class: `A = max(3, largest factor scaling)`,
/// `B = 3`, so that every `d | n_g` and every cusp layer of every row
/// contributes at least one factor.
pub fn default_bounds(label: &str, rows: &[BorcherdsSpec]) -> Result<Q3Bounds> {
    let mut a = class_data(label)?.order as i64;
    for s in rows {
        for l in s.layers()? {
            a = a.max(l.scale as i64);
        }
    }
    Ok(Q3Bounds::new(a.max(3), 3))
}

/// Check that `∏_{d | n_g} (1 − x^d)^{c_{g,d}(Δ)}` equals
/// `exp(−Σ_{k ≥ 1} c_{g^k}(Δ) x^k / k)` below `x^terms` for every `Δ` from
/// −1 to `delta_max`. Returns the first failing `Δ`.
pub fn log_matching(label: &str, terms: i64, delta_max: i64) -> Result<Option<i64>> {
    let g = class_data(label)?;
    let gens = Generators::new(delta_max);
    let table_of = |m0: Rat, m2: crate::modforms::ModFormVec| -> Result<Vec<Rat>> {
        JacobiForm01::new(m2.level, m0, m2)?.discriminant_table(&gens)
    };
    let mut comps = Vec::new();
    for d in divisors(g.order as u64) {
        let (m0, m2) = moebius_component(label, d as u32)?;
        comps.push((d as i64, table_of(m0, m2)?));
    }
    let mut powers = Vec::new();
    for k in 1..terms {
        let h = class_data(&power(label, k as u32)?)?;
        powers.push((k, table_of(h.chi, h.tdt)?));
    }
    for delta in -1..=delta_max {
        let i = (delta + 1) as usize;
        let mut prod_log = QSeries::zero(1, terms);
        for (d, t) in &comps {
            let c = &t[i];
            for j in 1..terms {
                if d * j >= terms {
                    break;
                }
                prod_log = prod_log.add(&QSeries::monomial(1, terms, d * j, -(c / rat(j))));
            }
        }
        let mut exp_arg = QSeries::zero(1, terms);
        for (k, t) in &powers {
            exp_arg = exp_arg.add(&QSeries::monomial(1, terms, *k, -(&t[i] / rat(*k))));
        }
        if prod_log.exp()? != exp_arg.exp()? {
            return Ok(Some(delta));
        }
    }
    Ok(None)
}
