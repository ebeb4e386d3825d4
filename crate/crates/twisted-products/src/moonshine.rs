//! Conjugacy class data, the power map, Möbius components `Z_{g,d}` and
//! the product expansions `Φ_g`.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::Zero;

use crate::exactseries::{divisors, moebius, rat};
use crate::modforms::{self, embed_level, ModFormVec};
use crate::{Error, QSeries, Rat, Result};

/// The classes whose product expansions are treated.
pub const CLASSES: [&str; 13] = ["1A", "2A", "2B", "3A", "3B", "4A", "4B", "4C", "5A", "7AB", "8A", "11A", "23AB"];

/// Data attached to a conjugacy class.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassData {
    pub label: String,
    /// Element order `n_g`.
    pub order: u32,
    /// `χ(g)`.
    pub chi: Rat,
    /// `T̃_g` at its native level.
    pub tdt: ModFormVec,
    /// Conjectured level `N_g`.
    pub conjectured_level: u32,
    /// Expected weight `k_g`; unknown for the 6A probe.
    pub weight: Option<Rat>,
}

impl ClassData {
    pub fn native_level(&self) -> u32 {
        self.tdt.level
    }
}

/// Class data by label (the 13 classes, plus `6A` for the solver probe).
pub fn class_data(label: &str) -> Result<ClassData> {
    let rec = modforms::data()?
        .classes
        .iter()
        .find(|c| c.label == label)
        .ok_or_else(|| Error::UnsupportedClass(label.to_string()))?;
    Ok(ClassData {
        label: rec.label.clone(),
        order: rec.order,
        chi: rec.chi.clone(),
        tdt: ModFormVec::new(2, rec.level, rec.coords.clone())?,
        conjectured_level: rec.conjectured_level,
        weight: rec.weight.clone(),
    })
}

/// Data for the 13 classes in table order.
pub fn all_classes() -> Result<Vec<ClassData>> {
    CLASSES.iter().map(|g| class_data(g)).collect()
}

/// Label of the class of `g^d`. Any `d ≥ 1` is accepted; the power map is
/// stored on primes and extended multiplicatively.
pub fn power(label: &str, d: u32) -> Result<String> {
    if d == 0 {
        return Err(Error::Input("power 0".into()));
    }
    let order = class_data(label)?.order;
    let d = d.gcd(&order);
    if d == 1 {
        return Ok(label.to_string());
    }
    let p = (2..=d).find(|p| d % p == 0).expect("d > 1 has a prime factor");
    let next = modforms::data()?
        .powers
        .get(&(label.to_string(), p))
        .ok_or_else(|| Error::MissingPower { class: label.to_string(), power: p })?;
    power(next, d / p)
}

/// `d ↦ class(g^d)` for every `d | n_g`.
pub fn power_map(label: &str) -> Result<BTreeMap<u32, String>> {
    let order = class_data(label)?.order;
    divisors(order as u64).into_iter().map(|d| Ok((d as u32, power(label, d as u32)?))).collect()
}

/// `Z_{g,d} = (1/d) Σ_{d′ | d} μ(d/d′)·(χ(g^{d′}), T̃_{g^{d′}})`, with the
/// weight-2 parts written at the native level of `T̃_g`.
pub fn moebius_component(label: &str, d: u32) -> Result<(Rat, ModFormVec)> {
    let g = class_data(label)?;
    if d == 0 || g.order % d != 0 {
        return Err(Error::Input(format!("{d} does not divide the order {} of {label}", g.order)));
    }
    let level = g.native_level();
    let mut m0 = Rat::zero();
    let mut m2 = ModFormVec::zero(2, level)?;
    for dp in divisors(d as u64) {
        let mu = moebius(d as u64 / dp);
        if mu == 0 {
            continue;
        }
        let h = class_data(&power(label, dp as u32)?)?;
        let mu = rat(mu);
        m0 += &h.chi * &mu;
        m2 = m2.add(&embed_level(&h.tdt, level)?.scale(&mu));
    }
    let inv = Rat::new(1.into(), (d as i64).into());
    Ok((m0 * &inv, m2.scale(&inv)))
}

/// A finitely supported map `d ↦ (M₀-part, M₂-part)`.
///
/// The weight-2 parts of different entries may live at different levels;
/// comparisons go through q-expansions.
#[derive(Clone, PartialEq, Default)]
pub struct EVector {
    pub entries: BTreeMap<u32, (Rat, ModFormVec)>,
}

impl EVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn support(&self) -> Vec<u32> {
        self.entries.keys().copied().collect()
    }

    pub fn get(&self, d: u32) -> Option<&(Rat, ModFormVec)> {
        self.entries.get(&d)
    }

    /// Least common multiple of the levels of the weight-2 parts.
    pub fn comparison_level(&self) -> u32 {
        self.entries.values().fold(1, |acc, (_, v)| acc.lcm(&v.level))
    }

    /// Add `(m0, m2)` at `d`, embedding into the larger level when the two
    /// parts sit at comparable levels.
    pub fn add_at(&mut self, d: u32, m0: Rat, m2: ModFormVec) -> Result<()> {
        match self.entries.remove(&d) {
            None => {
                self.entries.insert(d, (m0, m2));
            }
            Some((a0, a2)) => {
                let level = a2.level.lcm(&m2.level);
                let sum = embed_level(&a2, level)?.add(&embed_level(&m2, level)?);
                self.entries.insert(d, (a0 + m0, sum));
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (d, (m0, m2)) in &other.entries {
            out.add_at(*d, m0.clone(), m2.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        EVector { entries: self.entries.iter().map(|(d, (a, v))| (*d, (a * c, v.scale(c)))).collect() }
    }

    /// `d ↦ (m0, q-expansion of m2 below q^prec)`.
    pub fn q_expansions(&self, prec: i64) -> Result<BTreeMap<u32, (Rat, QSeries)>> {
        self.entries.iter().map(|(d, (a, v))| Ok((*d, (a.clone(), v.q_expansion(prec)?)))).collect()
    }

    /// Equality of all entries as q-expansions below `q^prec`; absent
    /// entries count as zero.
    pub fn equal_to(&self, other: &Self, prec: i64) -> Result<Option<u32>> {
        let a = self.q_expansions(prec)?;
        let b = other.q_expansions(prec)?;
        let zero = (Rat::zero(), QSeries::zero(1, prec));
        let keys: std::collections::BTreeSet<u32> = a.keys().chain(b.keys()).copied().collect();
        for d in keys {
            let x = a.get(&d).unwrap_or(&zero);
            let y = b.get(&d).unwrap_or(&zero);
            if x.0 != y.0 || x.1.sub(&y.1).truncate(prec).terms().next().is_some() {
                return Ok(Some(d));
            }
        }
        Ok(None)
    }
}

impl fmt::Debug for EVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.entries.iter().map(|(d, (a, v))| (d, format!("({a}, {v})")))).finish()
    }
}

/// Leading exponents and E-vector of a product expansion.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductExpansion {
    pub e_q1: Rat,
    pub e_zeta: Rat,
    pub e_q2: Rat,
    pub evec: EVector,
}

impl ProductExpansion {
    pub fn exponents(&self) -> (Rat, Rat, Rat) {
        (self.e_q1.clone(), self.e_zeta.clone(), self.e_q2.clone())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        ProductExpansion {
            e_q1: &self.e_q1 * c,
            e_zeta: &self.e_zeta * c,
            e_q2: &self.e_q2 * c,
            evec: self.evec.scale(c),
        }
    }
}

/// `Φ_g`: exponents `(1, 1, 1)` and `E(Φ_g)(d) = Z_{g,d}` for `d | n_g`.
pub fn phi_g(label: &str) -> Result<ProductExpansion> {
    let g = class_data(label)?;
    let mut evec = EVector::new();
    for d in divisors(g.order as u64) {
        let (m0, m2) = moebius_component(label, d as u32)?;
        evec.entries.insert(d as u32, (m0, m2));
    }
    Ok(ProductExpansion { e_q1: rat(1), e_zeta: rat(1), e_q2: rat(1), evec })
}
