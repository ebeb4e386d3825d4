//! Spaces `M_k(Γ₀(N))` for `k ∈ {0, 2}`: echelon bases, coordinates, level
//! embeddings, cusps and the projected cusp expansion matrices `Π_FE`.
//!
//! Bases and matrices come from a versioned text file embedded at compile
//! time (see [`data`]). Setting the environment variable [`DATA_ENV`] to a
//! path loads that file instead.

pub mod data;
pub mod oracle;

use std::fmt;
use std::sync::OnceLock;

use num_integer::Integer;
use num_traits::{One, Zero};

pub use data::FormData;

use crate::exactseries::{self, QSeries as GenericQSeries};
use crate::{Error, QSeries, Rat, RatMatrix, Result};

/// Environment variable naming an alternative data file.
pub const DATA_ENV: &str = "TWPROD_DATA";

/// The data file shipped with the crate.
pub const EMBEDDED_DATA: &str = include_str!("../../data/forms.dat");

static DATA: OnceLock<std::result::Result<FormData, String>> = OnceLock::new();

/// The loaded data file.
pub fn data() -> Result<&'static FormData> {
    DATA.get_or_init(|| {
        let text = match std::env::var_os(DATA_ENV) {
            Some(path) => std::fs::read_to_string(&path)
                .map_err(|e| format!("cannot read {}: {e}", path.to_string_lossy()))?,
            None => EMBEDDED_DATA.to_string(),
        };
        FormData::parse(&text).map_err(|e| e.to_string())
    })
    .as_ref()
    .map_err(|e| Error::Data(e.clone()))
}

/// Levels with a weight-2 basis in the data file.
pub fn supported_levels() -> Result<Vec<u32>> {
    Ok(data()?.bases.keys().filter(|(k, _)| *k == 2).map(|(_, n)| *n).collect())
}

fn check_level(n: u32) -> Result<()> {
    if data()?.bases.contains_key(&(2, n)) {
        Ok(())
    } else {
        Err(Error::UnsupportedLevel(n))
    }
}

fn check_weight(k: u32) -> Result<()> {
    if k == 0 || k == 2 {
        Ok(())
    } else {
        Err(Error::UnsupportedWeight(k))
    }
}

/// Index of `Γ₀(N)` in `SL₂(ℤ)`.
pub fn index(n: u32) -> u64 {
    let mut idx = n as u64;
    let mut m = n as u64;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            idx = idx / p * (p + 1);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        idx = idx / m * (m + 1);
    }
    idx
}

/// Sturm bound `⌊k·[SL₂(ℤ):Γ₀(N)]/12⌋`.
pub fn sturm_bound(k: u32, n: u32) -> u64 {
    k as u64 * index(n) / 12
}

/// A cusp `f/e` of `Γ₀(N)` together with its width and `N_c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CuspData {
    pub level: u32,
    /// Numerator `f`, with `gcd(f, e) = 1`.
    pub numerator: u32,
    /// Denominator `e | N`; the cusp `∞` has `e = N`.
    pub denominator: u32,
    pub width: u32,
    pub n_c: u32,
}

impl CuspData {
    pub fn is_infinity(&self) -> bool {
        self.denominator == self.level
    }

    /// `∞`, `0` or `f/e`.
    pub fn label(&self) -> String {
        if self.is_infinity() {
            "∞".into()
        } else if self.denominator == 1 {
            "0".into()
        } else {
            format!("{}/{}", self.numerator, self.denominator)
        }
    }

    /// Plain ASCII label used in the data file (`inf` for `∞`).
    pub fn key(&self) -> String {
        if self.is_infinity() {
            "inf".into()
        } else {
            self.label()
        }
    }

    /// Look up a cusp of `Γ₀(N)` by label (`∞`, `inf`, `0`, `f/e`).
    pub fn parse(n: u32, label: &str) -> Result<CuspData> {
        cusps_of(n)
            .into_iter()
            .find(|c| c.label() == label || c.key() == label)
            .ok_or_else(|| Error::Input(format!("no cusp {label:?} at level {n}")))
    }
}

impl fmt::Display for CuspData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Cusp representatives of `Γ₀(N)` for any `N ≥ 1`: `∞` first, then the
/// denominators `e | N` in increasing order, one numerator per unit class
/// modulo `gcd(e, N/e)`, lifted to the smallest nonnegative value coprime
/// to `e`.
pub fn cusps_of(n: u32) -> Vec<CuspData> {
    let make = |f: u32, e: u32| CuspData {
        level: n,
        numerator: f,
        denominator: e,
        width: n / (e * e).gcd(&n),
        n_c: n / e,
    };
    let mut out = vec![make(1, n)];
    for e in exactseries::divisors(n as u64).into_iter().map(|e| e as u32) {
        if e == n {
            continue;
        }
        if e == 1 {
            out.push(make(0, 1));
            continue;
        }
        let g = e.gcd(&(n / e));
        for f in (0..g).filter(|f| f.gcd(&g) == 1) {
            // lift the unit f mod g to a numerator coprime to e
            let f = (f..).step_by(g as usize).find(|x| x.gcd(&e) == 1).expect("a coprime lift exists");
            out.push(make(f, e));
        }
    }
    out
}

/// Cusp representatives of a supported level.
pub fn cusp_set(n: u32) -> Result<Vec<CuspData>> {
    check_level(n)?;
    Ok(cusps_of(n))
}

/// Dimension of `M_k(Γ₀(N))` at a supported level.
pub fn dim(k: u32, n: u32) -> Result<usize> {
    check_weight(k)?;
    check_level(n)?;
    if k == 0 {
        Ok(1)
    } else {
        Ok(data()?.bases[&(2, n)].len())
    }
}

/// Number of stored coefficients of each weight-2 basis element.
pub fn available_precision(n: u32) -> Result<i64> {
    check_level(n)?;
    let rows = &data()?.bases[&(2, n)];
    Ok(rows.first().map_or(i64::MAX, |r| r.len() as i64))
}

/// Echelon basis `f_{k,N;1}, …, f_{k,N;d}` known below `q^prec`.
///
/// Weight 0 is the constant `1` at every level and is not stored.
pub fn echelon_basis(k: u32, n: u32, prec: i64) -> Result<Vec<QSeries>> {
    check_weight(k)?;
    check_level(n)?;
    if k == 0 {
        return Ok(vec![QSeries::one(1, prec)]);
    }
    let rows = &data()?.bases[&(2, n)];
    let avail = available_precision(n)?;
    if prec > avail {
        return Err(Error::Precision { requested: prec, available: avail });
    }
    Ok(rows.iter().map(|r| GenericQSeries::from_dense(r[..prec as usize].to_vec())).collect())
}

/// A modular form given by its coordinates in the echelon basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModFormVec {
    pub weight: u32,
    pub level: u32,
    pub coords: Vec<Rat>,
}

impl ModFormVec {
    pub fn new(weight: u32, level: u32, coords: Vec<Rat>) -> Result<Self> {
        let d = dim(weight, level)?;
        if coords.len() != d {
            return Err(Error::Input(format!(
                "M{weight}({level}) has dimension {d}, got {} coordinates",
                coords.len()
            )));
        }
        Ok(ModFormVec { weight, level, coords })
    }

    pub fn zero(weight: u32, level: u32) -> Result<Self> {
        Ok(ModFormVec { weight, level, coords: vec![Rat::zero(); dim(weight, level)?] })
    }

    /// The constant `c` as an element of `M₀(N)`.
    pub fn constant(level: u32, c: Rat) -> Result<Self> {
        Self::new(0, level, vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn q_expansion(&self, prec: i64) -> Result<QSeries> {
        let basis = echelon_basis(self.weight, self.level, prec)?;
        Ok(basis
            .iter()
            .zip(&self.coords)
            .fold(QSeries::zero(1, prec), |acc, (f, c)| acc.add(&f.scale(c))))
    }

    /// Constant term of the q-expansion.
    pub fn constant_term(&self) -> Rat {
        // Echelon normalization: only the first basis element has a constant
        // term, and it equals 1 (absent only when the space is zero).
        self.coords.first().cloned().unwrap_or_else(Rat::zero)
    }

    /// Coordinates of a series assumed to lie in `M_k(Γ₀(N))`; every known
    /// coefficient of the series is checked against the reconstruction.
    pub fn from_series(weight: u32, level: u32, f: &QSeries) -> Result<Self> {
        let d = dim(weight, level)?;
        let f = f.reduce_lattice();
        if f.lattice() != 1 {
            return Err(Error::NotInSpan { level });
        }
        if f.prec_num() < d as i64 {
            return Err(Error::Precision { requested: d as i64, available: f.prec_num() });
        }
        let coords = (0..d as i64).map(|i| f.coeff(i)).collect();
        let v = ModFormVec { weight, level, coords };
        let avail = if weight == 0 { f.prec_num() } else { available_precision(level)?.min(f.prec_num()) };
        if v.q_expansion(avail)? != f.truncate(avail) {
            return Err(Error::NotInSpan { level });
        }
        Ok(v)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.weight, self.level), (other.weight, other.level), "spaces differ");
        ModFormVec {
            weight: self.weight,
            level: self.level,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        ModFormVec { weight: self.weight, level: self.level, coords: self.coords.iter().map(|a| a * c).collect() }
    }
}

impl fmt::Display for ModFormVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<_> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "M{}({})[{}]", self.weight, self.level, c.join(", "))
    }
}

impl fmt::Debug for ModFormVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Re-express `v` at level `target`, a multiple of its level.
pub fn embed_level(v: &ModFormVec, target: u32) -> Result<ModFormVec> {
    if !target.is_multiple_of(v.level) {
        return Err(Error::NotADivisor { from: v.level, to: target });
    }
    if target == v.level {
        return Ok(v.clone());
    }
    check_level(target)?;
    if v.weight == 0 {
        return ModFormVec::constant(target, v.coords[0].clone());
    }
    let prec = available_precision(v.level)?.min(available_precision(target)?);
    ModFormVec::from_series(v.weight, target, &v.q_expansion(prec)?)
}

/// `Π_FE(k, N, c)` with the cusp it belongs to.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectionMatrix {
    pub weight: u32,
    pub level: u32,
    pub cusp: CuspData,
    pub matrix: RatMatrix,
}

/// The matrix `Π_FE(k, N, c)`; the identity at `∞` and in weight 0.
pub fn projection(k: u32, n: u32, cusp: &CuspData) -> Result<ProjectionMatrix> {
    let d = dim(k, n)?;
    let matrix = if k == 0 || cusp.is_infinity() || d == 0 {
        RatMatrix::identity(d)
    } else {
        let rows = data()?
            .projections
            .get(&(k, n, cusp.key()))
            .ok_or_else(|| Error::MissingProjection { weight: k, level: n, cusp: cusp.label() })?;
        RatMatrix::from_rows(rows.clone())
    };
    Ok(ProjectionMatrix { weight: k, level: n, cusp: cusp.clone(), matrix })
}

/// Whether every cusp of level `N` has a weight-2 projection matrix.
pub fn has_projections(n: u32) -> Result<bool> {
    Ok(cusp_set(n)?.iter().all(|c| projection(2, n, c).is_ok()))
}

/// `Π_FE(k, N, c)·v`.
pub fn pi_fe(cusp: &CuspData, v: &ModFormVec) -> Result<ModFormVec> {
    if cusp.level != v.level {
        return Err(Error::Input(format!("cusp {cusp} is not a cusp of level {}", v.level)));
    }
    let p = projection(v.weight, v.level, cusp)?;
    Ok(ModFormVec { weight: v.weight, level: v.level, coords: p.matrix.apply(&v.coords) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactseries::{rat, ratio};

    fn v(k: u32, n: u32, c: &[Rat]) -> ModFormVec {
        ModFormVec::new(k, n, c.to_vec()).unwrap()
    }

    #[test]
    fn cusps_level_8() {
        let c: Vec<_> = cusp_set(8).unwrap().iter().map(|c| (c.label(), c.width, c.n_c)).collect();
        assert_eq!(
            c,
            vec![("∞".into(), 1, 1), ("0".into(), 8, 8), ("1/2".into(), 2, 4), ("1/4".into(), 1, 2)]
        );
        assert_eq!(cusp_set(1).unwrap().len(), 1);
        assert!(cusp_set(1).unwrap()[0].is_infinity());
        assert!(cusp_set(9).is_err());
    }

    #[test]
    fn cusps_with_several_numerators() {
        let c: Vec<_> = cusps_of(16).iter().map(CuspData::label).collect();
        assert_eq!(c, vec!["∞", "0", "1/2", "1/4", "3/4", "1/8"]);
        let total: u64 = cusps_of(16).iter().map(|c| c.width as u64).sum();
        assert_eq!(total, index(16));
    }

    #[test]
    fn cusps_with_coprime_cofactor() {
        let c: Vec<_> = cusp_set(6).unwrap().iter().map(|c| (c.label(), c.width)).collect();
        let want = [("∞", 1), ("0", 6), ("1/2", 3), ("1/3", 2)];
        assert_eq!(c, want.map(|(l, h)| (l.to_string(), h)).to_vec());
        let c: Vec<_> = cusps_of(45).iter().map(CuspData::label).collect();
        assert_eq!(c, vec!["∞", "0", "1/3", "2/3", "1/5", "1/9", "1/15", "2/15"]);
    }

    #[test]
    fn dimensions() {
        let d: Vec<_> = [1, 2, 3, 4, 5, 7, 8, 11, 23].iter().map(|&n| dim(2, n).unwrap()).collect();
        assert_eq!(d, vec![0, 1, 1, 2, 1, 1, 3, 2, 3]);
        assert_eq!(dim(0, 23).unwrap(), 1);
        assert!(dim(4, 2).is_err());
    }

    #[test]
    fn level_11_basis() {
        let b = echelon_basis(2, 11, 6).unwrap();
        assert_eq!(b[0].dense(6), [1, 0, 12, 12, 12, 12].map(rat).to_vec());
        assert_eq!(b[1].dense(6), [0, 1, -2, -1, 2, 1].map(rat).to_vec());
    }

    #[test]
    fn level_2_basis() {
        let b = echelon_basis(2, 2, 5).unwrap();
        assert_eq!(b[0].dense(5), [1, 24, 24, 96, 24].map(rat).to_vec());
        assert!(echelon_basis(2, 2, 100_000).is_err());
    }

    #[test]
    fn embeddings() {
        let t = v(2, 2, &[ratio(4, 3)]);
        assert_eq!(embed_level(&t, 4).unwrap(), v(2, 4, &[ratio(4, 3), rat(32)]));
        assert_eq!(embed_level(&t, 8).unwrap(), v(2, 8, &[ratio(4, 3), rat(32), rat(32)]));
        assert_eq!(embed_level(&t, 2).unwrap(), t);
        assert!(embed_level(&t, 3).is_err());
    }

    #[test]
    fn projections() {
        let c = CuspData::parse(8, "1/2").unwrap();
        let out = pi_fe(&c, &v(2, 8, &[rat(1), rat(0), rat(0)])).unwrap();
        assert_eq!(out, v(2, 8, &[ratio(-1, 8), rat(3), rat(-3)]));
        let c = CuspData::parse(2, "0").unwrap();
        assert_eq!(pi_fe(&c, &v(2, 2, &[ratio(4, 3)])).unwrap(), v(2, 2, &[ratio(-2, 3)]));
        let c = CuspData::parse(23, "0").unwrap();
        let x = v(2, 23, &[rat(1), rat(2), rat(3)]);
        assert_eq!(pi_fe(&c, &x).unwrap(), x.scale(&ratio(-1, 23)));
        let inf = CuspData::parse(23, "∞").unwrap();
        assert_eq!(pi_fe(&inf, &x).unwrap(), x);
    }

    #[test]
    fn level_6_has_no_projections() {
        assert_eq!(dim(2, 6).unwrap(), 3);
        assert!(!has_projections(6).unwrap());
        assert!(has_projections(8).unwrap());
    }
}
