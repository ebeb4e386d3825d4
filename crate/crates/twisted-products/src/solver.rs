//! The linear system expressing `E(Φ_g)` as a sum of E-vectors of rescaled
//! Borcherds products, its solution, and verification of a solution.
//!
//! Unknowns are grouped in blocks `(N, n)` with `n·N | N′` and `N ≤ N_max`:
//! one `tc₀` slot and `dim M₂(N)` slots for `tc₂`. Levels without stored
//! projection matrices cannot contribute and are skipped.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::borcherds::{minimal_power, BorcherdsSpec};
use crate::exactseries::{divisors, rat};
use crate::jacobi::JacobiForm01;
use crate::linalg::{solve as solve_linear, Matrix};
use crate::modforms::{self, cusp_set, dim, projection, sturm_bound, ModFormVec};
use crate::moonshine::{class_data, phi_g, ProductExpansion};
use crate::{Error, QSeries, Rat, Result};

/// Extra coefficients compared beyond the Sturm bound.
pub const STURM_MARGIN: i64 = 8;

/// Default `N′_g`: the conjectured level, except for 8A whose solution
/// contains a product rescaled to level 16.
pub fn default_target_level(label: &str) -> Result<u32> {
    let g = class_data(label)?;
    Ok(if label == "8A" { 16 } else { g.conjectured_level })
}

/// Options mirroring the solver entry point.
#[derive(Clone, Debug, Default)]
pub struct SolveOptions {
    /// `N′_g`; defaults to [`default_target_level`].
    pub target_level: Option<u32>,
    /// `N_max`; defaults to the native level of `T̃_g`.
    pub max_base_level: Option<u32>,
    /// Pole order of the ansatz space; only 0 is implemented.
    pub pole_order: u32,
    pub minimize: bool,
}

/// One block of unknowns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub level: u32,
    pub n: u32,
    /// Index of the first unknown.
    pub offset: usize,
    /// `1 + dim M₂(N)`.
    pub width: usize,
}

#[derive(Clone, Debug)]
pub struct Ansatz {
    pub class: String,
    pub target_level: u32,
    pub max_base_level: u32,
    pub pole_order: u32,
    pub blocks: Vec<Block>,
    /// Candidate base levels left out for lack of projection data.
    pub skipped_levels: Vec<u32>,
}

impl Ansatz {
    pub fn new(label: &str, target_level: u32, max_base_level: u32, pole_order: u32) -> Result<Self> {
        if pole_order > 0 {
            return Err(Error::NotImplemented("ansatz spaces with poles (pole order > 0)"));
        }
        let supported = modforms::supported_levels()?;
        let mut levels = Vec::new();
        let mut skipped = Vec::new();
        for n in divisors(target_level as u64).into_iter().map(|n| n as u32) {
            if n > max_base_level {
                continue;
            }
            if supported.contains(&n) && modforms::has_projections(n)? {
                levels.push(n);
            } else {
                skipped.push(n);
            }
        }
        let mut pairs: Vec<(u32, u32)> = Vec::new();
        for &n in &levels {
            for s in divisors((target_level / n) as u64) {
                pairs.push((s as u32, n));
            }
        }
        pairs.sort();
        let mut blocks = Vec::new();
        let mut offset = 0;
        for (s, n) in pairs {
            let width = 1 + dim(2, n)?;
            blocks.push(Block { level: n, n: s, offset, width });
            offset += width;
        }
        Ok(Ansatz {
            class: label.to_string(),
            target_level,
            max_base_level,
            pole_order,
            blocks,
            skipped_levels: skipped,
        })
    }

    pub fn unknowns(&self) -> usize {
        self.blocks.iter().map(|b| b.width).sum()
    }

    /// `(N, n, i)` per unknown: `i = 0` is `tc₀`, `i ≥ 1` the `tc₂` slots.
    pub fn unknown_labels(&self) -> Vec<(u32, u32, usize)> {
        self.blocks.iter().flat_map(|b| (0..b.width).map(move |i| (b.level, b.n, i))).collect()
    }

    /// Level at which all compared forms live.
    pub fn comparison_level(&self) -> Result<u32> {
        Ok(self.target_level.lcm(&class_data(&self.class)?.native_level()))
    }

    /// Number of q-coefficients compared per divisor.
    pub fn precision(&self) -> Result<i64> {
        Ok(sturm_bound(2, self.comparison_level()?) as i64 + STURM_MARGIN)
    }

    /// The system `A x = b`: per divisor `d` one `M₀` row and one row per
    /// q-coefficient, then the `e_{q₁}` and `e_ζ` rows (`e_{q₂} = e_ζ`
    /// holds identically).
    pub fn build_system(&self, target: &ProductExpansion) -> Result<(Matrix<Rat>, Vec<Rat>)> {
        let prec = self.precision()?;
        let cols = self.unknowns();
        let mut ds: BTreeSet<u32> = target.evec.support().into_iter().collect();
        for b in &self.blocks {
            for c in cusp_set(b.level)? {
                ds.insert(b.n * c.n_c);
            }
        }
        let ds: Vec<u32> = ds.into_iter().collect();
        let row_of = |d: u32| ds.iter().position(|&x| x == d).unwrap() * (1 + prec as usize);
        let rows = ds.len() * (1 + prec as usize) + 2;
        let mut a = Matrix::zeros(rows, cols);
        let mut b = vec![Rat::zero(); rows];
        let (eq1, ez) = (rows - 2, rows - 1);

        for blk in &self.blocks {
            let basis = modforms::echelon_basis(2, blk.level, prec)?;
            let s = rat(blk.n as i64);
            for c in cusp_set(blk.level)? {
                let r0 = row_of(blk.n * c.n_c);
                let mult = Rat::new(c.width.into(), c.n_c.into());
                let h = rat(c.width as i64);
                a[(r0, blk.offset)] += &mult;
                a[(eq1, blk.offset)] += &s * &h / rat(24);
                a[(ez, blk.offset)] += &s * &h / rat(24);
                let m = projection(2, blk.level, &c)?.matrix;
                for i in 0..blk.width - 1 {
                    // image of the i-th basis vector under Π_FE
                    let img = (0..basis.len())
                        .fold(QSeries::zero(1, prec), |acc, r| acc.add(&basis[r].scale(&m[(r, i)])));
                    for (j, v) in img.terms() {
                        a[(r0 + 1 + j as usize, blk.offset + 1 + i)] += v * &mult;
                    }
                    a[(ez, blk.offset + 1 + i)] += &s * &h * &m[(0, i)] / rat(2);
                }
            }
        }
        for (d, (m0, f)) in target.evec.q_expansions(prec)? {
            let r0 = row_of(d);
            b[r0] = m0;
            for (j, v) in f.terms() {
                b[r0 + 1 + j as usize] = v.clone();
            }
        }
        b[eq1] = target.e_q1.clone();
        b[ez] = target.e_zeta.clone();
        Ok((a, b))
    }
}

/// One factor `B_N[φ, n]` of a solution.
#[derive(Clone, Debug, PartialEq)]
pub struct SolutionRow {
    pub level: u32,
    pub n: u32,
    pub phi: JacobiForm01,
}

impl SolutionRow {
    pub fn spec(&self) -> BorcherdsSpec {
        BorcherdsSpec { phi: self.phi.clone(), n: self.n }
    }
}

/// `Φ_g = ∏ B_{N_i}[φ_i, n_i]` up to the power `p`.
#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    pub class: String,
    pub target_level: u32,
    pub rows: Vec<SolutionRow>,
    /// Minimal power making all product exponents near `Δ ≤ 0` integral.
    pub p: u32,
    /// Weight of `Φ_g`, i.e. the sum of the row weights.
    pub weight: Rat,
    /// Summed leading exponents of the rows.
    pub exponents: (Rat, Rat, Rat),
}

impl Solution {
    /// Assemble from rows, deriving `p`, weight and exponents.
    pub fn from_rows(class: &str, target_level: u32, rows: Vec<SolutionRow>) -> Result<Self> {
        let specs: Vec<BorcherdsSpec> = rows.iter().map(SolutionRow::spec).collect();
        let p = minimal_power(&specs)?;
        let mut weight = Rat::zero();
        let mut e = (Rat::zero(), Rat::zero(), Rat::zero());
        for s in &specs {
            weight += s.weight()?;
            let (a, b, c) = s.exponents()?;
            e = (e.0 + a, e.1 + b, e.2 + c);
        }
        Ok(Solution { class: class.to_string(), target_level, rows, p, weight, exponents: e })
    }

    pub fn specs(&self) -> Vec<BorcherdsSpec> {
        self.rows.iter().map(SolutionRow::spec).collect()
    }

    /// Rows as `(N, n, tc₀, tc₂)` tuples, sorted.
    pub fn row_tuples(&self) -> Vec<(u32, u32, Rat, Vec<Rat>)> {
        let mut v: Vec<_> =
            self.rows.iter().map(|r| (r.level, r.n, r.phi.tc0.clone(), r.phi.tc2.coords.clone())).collect();
        v.sort_by_key(|a| (a.0, a.1));
        v
    }

    pub fn to_json(&self) -> Value {
        let s = |x: &Rat| Value::String(x.to_string());
        json!({
            "class": self.class,
            "p": self.p,
            "weight": s(&self.weight),
            "exponents": [s(&self.exponents.0), s(&self.exponents.1), s(&self.exponents.2)],
            "rows": self.rows.iter().map(|r| json!({
                "N": r.level,
                "n": r.n,
                "tc0": s(&r.phi.tc0),
                "tc2": r.phi.tc2.coords.iter().map(s).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

fn rows_from_vector(ansatz: &Ansatz, x: &[Rat]) -> Result<Vec<SolutionRow>> {
    let mut rows = Vec::new();
    for b in &ansatz.blocks {
        let slot = &x[b.offset..b.offset + b.width];
        if slot.iter().all(Zero::is_zero) {
            continue;
        }
        let phi = JacobiForm01::new(b.level, slot[0].clone(), ModFormVec::new(2, b.level, slot[1..].to_vec())?)?;
        rows.push(SolutionRow { level: b.level, n: b.n, phi });
    }
    Ok(rows)
}

/// Solve for `E(Φ_g)`.
pub fn solve(label: &str, opts: &SolveOptions) -> Result<Solution> {
    let g = class_data(label)?;
    let target_level = match opts.target_level {
        Some(n) => n,
        None => default_target_level(label)?,
    };
    let max_base = opts.max_base_level.unwrap_or(g.native_level());
    let ansatz = Ansatz::new(label, target_level, max_base, opts.pole_order)?;
    let target = phi_g(label)?;
    let (mut a, mut b) = ansatz.build_system(&target)?;
    let infeasible = || {
        let mut msg = format!("{label} has no solution with N' = {target_level}, N_max = {max_base}");
        if !ansatz.skipped_levels.is_empty() {
            let s: Vec<String> = ansatz.skipped_levels.iter().map(ToString::to_string).collect();
            msg += &format!(" (levels without projection data skipped: {})", s.join(", "));
        }
        Error::Infeasible(msg)
    };
    let mut sol = solve_linear(&a, &b).ok_or_else(infeasible)?;
    if opts.minimize {
        let mut order = ansatz.blocks.clone();
        order.sort_by_key(|blk| (std::cmp::Reverse(blk.level * blk.n), std::cmp::Reverse(blk.n)));
        for blk in order {
            let mut a2 = a.clone();
            let mut b2 = b.clone();
            for i in 0..blk.width {
                let mut row = vec![Rat::zero(); ansatz.unknowns()];
                row[blk.offset + i] = Rat::one();
                a2.push_row(row);
                b2.push(Rat::zero());
            }
            if let Some(s) = solve_linear(&a2, &b2) {
                a = a2;
                b = b2;
                sol = s;
            }
        }
    }
    Solution::from_rows(label, target_level, rows_from_vector(&ansatz, &sol.particular)?)
}

/// The ansatz used by [`solve`] with the given options.
pub fn ansatz_for(label: &str, opts: &SolveOptions) -> Result<Ansatz> {
    let g = class_data(label)?;
    let target_level = match opts.target_level {
        Some(n) => n,
        None => default_target_level(label)?,
    };
    Ansatz::new(label, target_level, opts.max_base_level.unwrap_or(g.native_level()), opts.pole_order)
}

/// The shipped solution rows for a class.
pub fn table_solution(label: &str) -> Result<Solution> {
    let rows = modforms::data()?
        .solutions
        .iter()
        .filter(|s| s.label == label)
        .map(|s| {
            Ok(SolutionRow {
                level: s.level,
                n: s.n,
                phi: JacobiForm01::from_coords(s.level, s.tc0.clone(), s.coords.clone())?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    if rows.is_empty() {
        return Err(Error::UnsupportedClass(label.to_string()));
    }
    Solution::from_rows(label, default_target_level(label)?, rows)
}

/// Outcome of one verification check.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub class: String,
    pub p: u32,
    /// Weight of `Φ_g^p`.
    pub weight: Rat,
    pub exponents: (Rat, Rat, Rat),
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Check the hypotheses of the modularity criterion for `Φ_g^p` against
/// the rows of `sol`.
pub fn verify_solution(label: &str, sol: &Solution) -> Result<VerificationReport> {
    let g = class_data(label)?;
    let p = rat(sol.p as i64);
    let specs: Vec<BorcherdsSpec> = sol.specs().iter().map(|s| s.scale(&p)).collect();
    let mut checks = Vec::new();

    // (a) E-vectors
    let lhs = phi_g(label)?.scale(&p);
    // parts at different levels are compared through q-expansions
    let mut rhs: BTreeMap<u32, Vec<(Rat, ModFormVec)>> = BTreeMap::new();
    for s in &specs {
        for (d, part) in s.evector()?.entries {
            rhs.entry(d).or_default().push(part);
        }
    }
    let level = rhs
        .values()
        .flatten()
        .fold(g.native_level().lcm(&sol.target_level), |acc, (_, v)| acc.lcm(&v.level));
    let prec = sturm_bound(2, level) as i64 + STURM_MARGIN;
    let lhs_q = lhs.evec.q_expansions(prec)?;
    let mut mismatch = None;
    let ds: BTreeSet<u32> = lhs_q.keys().chain(rhs.keys()).copied().collect();
    for d in ds {
        let (mut m0, mut f) = (Rat::zero(), QSeries::zero(1, prec));
        for (a0, a2) in rhs.get(&d).into_iter().flatten() {
            m0 += a0;
            f = f.add(&a2.q_expansion(prec)?);
        }
        let (t0, tf) = lhs_q.get(&d).cloned().unwrap_or_else(|| (Rat::zero(), QSeries::zero(1, prec)));
        if m0 != t0 {
            mismatch = Some(format!("d = {d}: M0 part {m0} != {t0}"));
            break;
        }
        if let Some((j, _)) = f.sub(&tf).terms().next() {
            mismatch = Some(format!("d = {d}: q^{j} coefficient {} != {}", f.coeff(j), tf.coeff(j)));
            break;
        }
    }
    checks.push(Check {
        name: "evector",
        passed: mismatch.is_none(),
        detail: mismatch.unwrap_or_else(|| format!("equal to q^{prec} at level {level}")),
    });

    // (b) exponents
    let mut e = (Rat::zero(), Rat::zero(), Rat::zero());
    for s in &specs {
        let (a, b, c) = s.exponents()?;
        e = (e.0 + a, e.1 + b, e.2 + c);
    }
    let ok = e.0 == p && e.1 == p && e.2 == p;
    checks.push(Check {
        name: "exponents",
        passed: ok,
        detail: format!("({}, {}, {}), expected ({p}, {p}, {p})", e.0, e.1, e.2),
    });

    // (c) levels
    let bad: Vec<String> = sol
        .rows
        .iter()
        .filter(|r| !sol.target_level.is_multiple_of(r.level * r.n))
        .map(|r| format!("{}·{}", r.n, r.level))
        .collect();
    checks.push(Check {
        name: "levels",
        passed: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("all n·N divide {}", sol.target_level)
        } else {
            format!("{} do not divide {}", bad.join(", "), sol.target_level)
        },
    });

    // (d) integrality for Δ ≤ 0
    let mut offending = None;
    for s in &specs {
        for l in s.layers()? {
            let (cm1, c0) = l.phi.polar_coefficients();
            for (delta, c) in [(-1, cm1), (0, c0)] {
                let v = c * &l.multiplicity;
                if !v.is_integer() && offending.is_none() {
                    offending = Some(format!("N = {}, n = {}, cusp {}, D = {delta}: {v}", s.base_level(), s.n, l.cusp));
                }
            }
        }
    }
    checks.push(Check {
        name: "integrality",
        passed: offending.is_none(),
        detail: offending.unwrap_or_else(|| "integral for D <= 0".into()),
    });

    // (e) weight
    let mut weight = Rat::zero();
    for s in &specs {
        weight += s.weight()?;
    }
    let (ok, detail) = match &g.weight {
        Some(k) => (weight == k * &p, format!("{weight}, expected {}", k * &p)),
        None => (true, format!("{weight} (no expected weight)")),
    };
    checks.push(Check { name: "weight", passed: ok, detail });

    Ok(VerificationReport { class: label.to_string(), p: sol.p, weight, exponents: e, checks })
}
