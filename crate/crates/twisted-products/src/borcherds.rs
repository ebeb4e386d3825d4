//! Rescaled Borcherds products `B_N[φ, n]` of level-`N` weak Jacobi forms:
//! E-vectors, leading exponents, weights and integrality.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::exactseries::{lcm_denominators, rat};
use crate::jacobi::{self, Generators, JacobiForm01};
use crate::modforms::{cusp_set, CuspData};
use crate::moonshine::EVector;
use crate::{Error, Int, Rat, Result};

/// `B_N[φ, n]`.
#[derive(Clone, Debug, PartialEq)]
pub struct BorcherdsSpec {
    pub phi: JacobiForm01,
    pub n: u32,
}

/// One cusp's contribution to a Borcherds product: the factor
/// `∏ (1 − (q₁ⁿζʳq₂ᵐ)^scale)^{multiplicity·c(φ_c; 4nm − r²)}`.
#[derive(Clone, Debug, PartialEq)]
pub struct CuspLayer {
    pub cusp: CuspData,
    /// `n·N_c`.
    pub scale: u32,
    /// `h_c / N_c`.
    pub multiplicity: Rat,
    /// `π_FE(φ_c)`.
    pub phi: JacobiForm01,
}

impl BorcherdsSpec {
    pub fn new(phi: JacobiForm01, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Input("scaling n must be positive".into()));
        }
        Ok(BorcherdsSpec { phi, n })
    }

    pub fn base_level(&self) -> u32 {
        self.phi.level
    }

    /// Level `n·N` of the rescaled product.
    pub fn level(&self) -> u32 {
        self.n * self.phi.level
    }

    pub fn scale(&self, c: &Rat) -> Self {
        BorcherdsSpec { phi: self.phi.scale(c), n: self.n }
    }

    pub fn layers(&self) -> Result<Vec<CuspLayer>> {
        cusp_set(self.phi.level)?
            .into_iter()
            .map(|c| {
                Ok(CuspLayer {
                    scale: self.n * c.n_c,
                    multiplicity: Rat::new(c.width.into(), c.n_c.into()),
                    phi: jacobi::at_cusp(&self.phi, &c)?,
                    cusp: c,
                })
            })
            .collect()
    }

    /// `E(B_N[φ, n])(d) = Σ_{c : n·N_c = d} (h_c/N_c)·(tc₀, Π_FE(2,N,c)·tc₂)`.
    pub fn evector(&self) -> Result<EVector> {
        let mut e = EVector::new();
        for l in self.layers()? {
            e.add_at(l.scale, &l.phi.tc0 * &l.multiplicity, l.phi.tc2.scale(&l.multiplicity))?;
        }
        Ok(e)
    }

    /// `(e_{q₁}, e_ζ, e_{q₂})`.
    pub fn exponents(&self) -> Result<(Rat, Rat, Rat)> {
        let mut sq1 = Rat::zero();
        let mut sz = Rat::zero();
        for l in self.layers()? {
            let h = rat(l.cusp.width as i64);
            sq1 += &h * &l.phi.tc0;
            sz += h * (&l.phi.tc0 / rat(12) + l.phi.tc2.constant_term());
        }
        let n = rat(self.n as i64);
        let e_q1 = sq1 * &n / rat(24);
        let e_z = sz * n / rat(2);
        Ok((e_q1, e_z.clone(), e_z))
    }

    /// `k = ½ Σ_c (h_c/N_c)·c(φ_c; 0)`; rescaling does not change it.
    pub fn weight(&self) -> Result<Rat> {
        let mut k = Rat::zero();
        for l in self.layers()? {
            k += &l.multiplicity * l.phi.polar_coefficients().1;
        }
        Ok(k / rat(2))
    }

    /// `(c(φ_c; 0), c(φ_c; −1))` per cusp.
    pub fn lift_data(&self) -> Result<Vec<(CuspData, Rat, Rat)>> {
        Ok(self
            .layers()?
            .into_iter()
            .map(|l| {
                let (cm1, c0) = l.phi.polar_coefficients();
                (l.cusp, c0, cm1)
            })
            .collect())
    }

    /// Product exponents `(h_c/N_c)·c(φ_c; D)` for `−1 ≤ D ≤ d_max`, one
    /// row per cusp layer.
    pub fn product_exponents(&self, gens: &Generators) -> Result<Vec<(CuspLayer, Vec<Rat>)>> {
        self.layers()?
            .into_iter()
            .map(|l| {
                let t = l.phi.discriminant_table(gens)?;
                let t = t.into_iter().map(|c| c * &l.multiplicity).collect();
                Ok((l, t))
            })
            .collect()
    }
}

/// `E(B_N[φ, n])`.
pub fn borcherds_evector(phi: &JacobiForm01, n: u32) -> Result<EVector> {
    BorcherdsSpec::new(phi.clone(), n)?.evector()
}

/// Leading exponents of `B_N[φ, n]`.
pub fn borcherds_exponents(phi: &JacobiForm01, n: u32) -> Result<(Rat, Rat, Rat)> {
    BorcherdsSpec::new(phi.clone(), n)?.exponents()
}

/// Weight of `B_N[φ]`.
pub fn borcherds_weight(phi: &JacobiForm01) -> Result<Rat> {
    BorcherdsSpec::new(phi.clone(), 1)?.weight()
}

/// Smallest `p ≥ 1` such that `p·(h_c/N_c)·c(φ_c; Δ)` is integral for
/// `Δ ∈ {−1, 0}` at every cusp of every spec.
pub fn minimal_power(specs: &[BorcherdsSpec]) -> Result<u32> {
    let mut values = Vec::new();
    for s in specs {
        for l in s.layers()? {
            let (cm1, c0) = l.phi.polar_coefficients();
            values.push(cm1 * &l.multiplicity);
            values.push(c0 * &l.multiplicity);
        }
    }
    lcm_denominators(&values)
        .to_u32()
        .ok_or_else(|| Error::Input("minimal power does not fit in u32".into()))
}

/// Integrality of all product exponents on a discriminant window.
#[derive(Clone, Debug, PartialEq)]
pub struct ExponentDenominators {
    /// `p` times the exponents: lcm of their denominators.
    pub denominator: Int,
    /// First offending entry `(spec index, cusp, D, value)` when not integral.
    pub first: Option<(usize, CuspData, i64, Rat)>,
}

/// Denominators of `p·(h_c/N_c)·c(φ_c; D)` for `−1 ≤ D ≤ d_max`.
pub fn exponent_denominators(specs: &[BorcherdsSpec], p: u32, gens: &Generators) -> Result<ExponentDenominators> {
    let p = rat(p as i64);
    let mut denominator = Int::one();
    let mut first = None;
    for (i, s) in specs.iter().enumerate() {
        for (l, t) in s.product_exponents(gens)? {
            for (j, c) in t.iter().enumerate() {
                let v = c * &p;
                if !v.denom().is_one() && first.is_none() {
                    first = Some((i, l.cusp.clone(), j as i64 - 1, v.clone()));
                }
                denominator = denominator.lcm(v.denom());
            }
        }
    }
    Ok(ExponentDenominators { denominator, first })
}

/// `(N, n, cusp label) ↦ (c(φ_c; 0), c(φ_c; −1))`.
pub type LiftTable = BTreeMap<(u32, u32, String), (Rat, Rat)>;

/// Lift data keyed by `(N, n, cusp label)` as in the solver reports.
pub fn lift_data_table(specs: &[BorcherdsSpec]) -> Result<LiftTable> {
    let mut out = BTreeMap::new();
    for s in specs {
        for (c, c0, cm1) in s.lift_data()? {
            out.insert((s.base_level(), s.n, c.label()), (c0, cm1));
        }
    }
    Ok(out)
}
