//! The ten acceptance criteria, one report line each. Runs without the
//! libtest harness so the lines are always printed.

mod props;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use twisted_products::borcherds::{minimal_power, BorcherdsSpec};
use twisted_products::exactseries::{parse_rat, rat};
use twisted_products::expander::{compare, default_bounds, expand_borcherds_side, expand_phi_power};
use twisted_products::modforms::{cusp_set, index};
use twisted_products::moonshine::{moebius_component, CLASSES};
use twisted_products::numverify::{verify_all, DEFAULT_TERMS, MODULARITY_TOL, PROJECTION_TOL};
use twisted_products::solver::{solve, table_solution, SolveOptions};
use twisted_products::{Error, Rat};

fn q(s: &str) -> Rat {
    parse_rat(s).unwrap_or_else(|| panic!("bad rational {s}"))
}

fn qs(s: &str) -> Vec<Rat> {
    if s.is_empty() {
        vec![]
    } else {
        s.split(',').map(q).collect()
    }
}

/// (g, N, n, tc₀, tc₂) for every product in the solution table.
const ROWS: &[(&str, u32, u32, &str, &str)] = &[
    ("1A", 1, 1, "24", ""),
    ("2A", 2, 1, "8", "4/3"),
    ("2B", 1, 1, "-12", ""),
    ("2B", 2, 1, "12", "0"),
    ("2B", 4, 1, "0", "2,-16"),
    ("3A", 3, 1, "6", "3/2"),
    ("3B", 1, 1, "-8", ""),
    ("3B", 3, 1, "8", "2"),
    ("4A", 1, 1, "-6", ""),
    ("4A", 2, 1, "2", "-2/3"),
    ("4A", 4, 1, "4", "2/3,16"),
    ("4A", 8, 1, "0", "2,0,-16"),
    ("4B", 4, 1, "4", "5/3,8"),
    ("4C", 1, 1, "-3", ""),
    ("4C", 2, 1, "-3", "1/4"),
    ("4C", 4, 1, "6", "7/4,-14"),
    ("4C", 4, 2, "0", "1,-8"),
    ("5A", 5, 1, "4", "5/3"),
    ("7AB", 7, 1, "3", "7/4"),
    ("8A", 1, 1, "3/2", ""),
    ("8A", 2, 1, "-5/2", "1/3"),
    ("8A", 4, 1, "1", "1/6,-12"),
    ("8A", 8, 1, "2", "4/3,8,0"),
    ("8A", 8, 2, "0", "1,0,-8"),
    ("11A", 11, 1, "2", "11/6,0"),
    ("23AB", 23, 1, "1", "23/12,46/11,-23/11"),
];

/// (g, N_g, k_g, p_g).
const CLASS_TABLE: &[(&str, u32, &str, u32)] = &[
    ("1A", 1, "10", 1),
    ("2A", 2, "6", 1),
    ("2B", 4, "4", 1),
    ("3A", 3, "4", 1),
    ("3B", 9, "2", 3),
    ("4A", 8, "2", 2),
    ("4B", 4, "3", 1),
    ("4C", 16, "1", 8),
    ("5A", 5, "2", 1),
    ("7AB", 7, "1", 1),
    ("8A", 8, "1/2", 8),
    ("11A", 11, "0", 1),
    ("23AB", 23, "-1", 1),
];

/// (g, d, M₀ part, level, M₂ coordinates).
const ZG: &[(&str, u32, &str, u32, &str)] = &[
    ("1A", 1, "24", 1, ""),
    ("2A", 1, "8", 2, "4/3"),
    ("2A", 2, "8", 2, "-2/3"),
    ("2B", 1, "0", 4, "2,-16"),
    ("2B", 2, "12", 4, "-1,8"),
    ("3A", 1, "6", 3, "3/2"),
    ("3A", 3, "6", 3, "-1/2"),
    ("3B", 1, "0", 3, "2"),
    ("3B", 3, "8", 3, "-2/3"),
    ("4A", 1, "0", 8, "2,0,-16"),
    ("4A", 2, "4", 8, "-1/3,16,24"),
    ("4A", 4, "4", 8, "-1/3,-8,-8"),
    ("4B", 1, "4", 4, "5/3,8"),
    ("4B", 2, "2", 4, "-1/6,12"),
    ("4B", 4, "4", 4, "-1/3,-8"),
    ("4C", 1, "0", 4, "2,-8"),
    ("4C", 2, "0", 4, "0,-4"),
    ("4C", 4, "6", 4, "-1/2,4"),
    ("5A", 1, "4", 5, "5/3"),
    ("5A", 5, "4", 5, "-1/3"),
    ("7AB", 1, "3", 7, "7/4"),
    ("7AB", 7, "3", 7, "-1/4"),
    ("8A", 1, "2", 8, "11/6,4,12"),
    ("8A", 2, "-1", 8, "1/12,-2,-14"),
    ("8A", 4, "2", 8, "-1/6,8,12"),
    ("8A", 8, "2", 8, "-1/6,-4,-4"),
    ("11A", 1, "2", 11, "11/6,0"),
    ("11A", 11, "2", 11, "-1/6,0"),
    ("23AB", 1, "1", 23, "23/12,46/11,-23/11"),
    ("23AB", 23, "1", 23, "-1/12,-2/11,1/11"),
];

/// (cusp, h, N_c)
type CuspRow = (&'static str, u32, u32);

/// Level 1 has the single cusp ∞.
const CUSPS: &[(u32, &[CuspRow])] = &[
    (1, &[("∞", 1, 1)]),
    (2, &[("∞", 1, 1), ("0", 2, 2)]),
    (3, &[("∞", 1, 1), ("0", 3, 3)]),
    (4, &[("∞", 1, 1), ("0", 4, 4), ("1/2", 1, 2)]),
    (5, &[("∞", 1, 1), ("0", 5, 5)]),
    (7, &[("∞", 1, 1), ("0", 7, 7)]),
    (8, &[("∞", 1, 1), ("0", 8, 8), ("1/2", 2, 4), ("1/4", 1, 2)]),
    (11, &[("∞", 1, 1), ("0", 11, 11)]),
    (23, &[("∞", 1, 1), ("0", 23, 23)]),
];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn expected_rows(g: &str) -> Vec<(u32, u32, Rat, Vec<Rat>)> {
    let mut v: Vec<_> =
        ROWS.iter().filter(|r| r.0 == g).map(|&(_, n, s, t0, t2)| (n, s, q(t0), qs(t2))).collect();
    v.sort_by_key(|a| (a.0, a.1));
    v
}

fn specs_for(g: &str) -> Result<Vec<BorcherdsSpec>, String> {
    Ok(table_solution(g).map_err(|e| e.to_string())?.specs())
}

fn c1_solutions() -> Outcome {
    let mut slowest = Duration::ZERO;
    for g in CLASSES {
        let t = Instant::now();
        let s = solve(g, &SolveOptions { minimize: true, ..Default::default() }).map_err(|e| format!("{g}: {e}"))?;
        let dt = t.elapsed();
        slowest = slowest.max(dt);
        if s.row_tuples() != expected_rows(g) {
            return Err(format!("{g}: rows {:?}", s.row_tuples()));
        }
        if dt > Duration::from_secs(5) {
            return Err(format!("{g}: {dt:?} > 5 s"));
        }
    }
    Ok(format!("13 classes, slowest {slowest:.2?}"))
}

fn c2_weights() -> Outcome {
    for &(g, _, k, _) in CLASS_TABLE {
        let mut w = rat(0);
        for s in specs_for(g)? {
            w += s.weight().map_err(|e| e.to_string())?;
        }
        if w != q(k) {
            return Err(format!("{g}: weight {w}, expected {k}"));
        }
    }
    Ok("13 weights equal k_g".into())
}

fn c3_powers() -> Outcome {
    for &(g, _, _, p) in CLASS_TABLE {
        let got = minimal_power(&specs_for(g)?).map_err(|e| e.to_string())?;
        if got != p {
            return Err(format!("{g}: p = {got}, expected {p}"));
        }
    }
    Ok("p = 3, 2, 8, 8 for 3B, 4A, 4C, 8A; 1 otherwise".into())
}

fn c4_zg() -> Outcome {
    for &(g, d, m0, level, m2) in ZG {
        let (a, v) = moebius_component(g, d).map_err(|e| e.to_string())?;
        if a != q(m0) || v.level != level || v.coords != qs(m2) {
            return Err(format!("{g}, d = {d}: ({a}, {v})"));
        }
    }
    Ok(format!("{} entries", ZG.len()))
}

fn c5_exponents() -> Outcome {
    for &(g, _, _, p) in CLASS_TABLE {
        let pr = rat(p as i64);
        let mut e = (rat(0), rat(0), rat(0));
        let mut each = Vec::new();
        for s in specs_for(g)? {
            let (a, b, c) = s.scale(&pr).exponents().map_err(|e| e.to_string())?;
            each.push(a.clone());
            e = (e.0 + a, e.1 + b, e.2 + c);
        }
        if (e.0 != pr) || (e.1 != pr) || (e.2 != pr) {
            return Err(format!("{g}: ({}, {}, {})", e.0, e.1, e.2));
        }
        if g == "3B" && each != vec![rat(-1), rat(4)] {
            return Err(format!("3B rows give {each:?}, expected [-1, 4]"));
        }
    }
    Ok("sums equal (p, p, p); 3B rows give -1 and 4".into())
}

fn c6_factorization() -> Outcome {
    let mut slowest = (Duration::ZERO, "");
    for &(g, _, _, p) in CLASS_TABLE {
        let specs = specs_for(g)?;
        let bd = default_bounds(g, &specs).map_err(|e| e.to_string())?;
        if bd.a < 3 || bd.b < 3 {
            return Err(format!("{g}: bounds {bd:?} below 3"));
        }
        for s in &specs {
            for l in s.layers().map_err(|e| e.to_string())? {
                if l.scale as i64 > bd.a {
                    return Err(format!("{g}: layer of scale {} outside A = {}", l.scale, bd.a));
                }
            }
        }
        let t = Instant::now();
        let lhs = expand_phi_power(g, p, bd).map_err(|e| e.to_string())?;
        let rhs = expand_borcherds_side(&specs, p, bd).map_err(|e| e.to_string())?;
        let cmp = compare(&lhs, &rhs).map_err(|e| e.to_string())?;
        let dt = t.elapsed();
        if !cmp.is_equal() {
            return Err(format!("{g}: {cmp:?}"));
        }
        if dt > Duration::from_secs(60) {
            return Err(format!("{g}: {dt:?} > 60 s"));
        }
        if dt > slowest.0 {
            slowest = (dt, g);
        }
    }
    Ok(format!("13 classes equal, slowest {} in {:.2?}", slowest.1, slowest.0))
}

fn c7_cusps() -> Outcome {
    for &(n, want) in CUSPS {
        let got: Vec<(String, u32, u32)> =
            cusp_set(n).map_err(|e| e.to_string())?.iter().map(|c| (c.label(), c.width, c.n_c)).collect();
        let want: Vec<(String, u32, u32)> = want.iter().map(|&(l, h, nc)| (l.to_string(), h, nc)).collect();
        if got != want {
            return Err(format!("level {n}: {got:?}"));
        }
        let total: u64 = got.iter().map(|c| c.1 as u64).sum();
        if total != index(n) {
            return Err(format!("level {n}: widths sum to {total}, index {}", index(n)));
        }
    }
    Ok(format!("{} levels, widths sum to the index", CUSPS.len()))
}

fn c8_numverify() -> Outcome {
    let results = verify_all(DEFAULT_TERMS, PROJECTION_TOL, MODULARITY_TOL).map_err(|e| e.to_string())?;
    let worst = |kind: &str| results.iter().filter(|r| r.kind == kind).map(|r| r.residual).fold(0.0, f64::max);
    if let Some(r) = results.iter().find(|r| !r.passed()) {
        return Err(format!("{r:?}"));
    }
    let n = results.iter().filter(|r| r.kind == "projection").count();
    Ok(format!(
        "{n} projections (max {:.1e} < {PROJECTION_TOL:e}), bases (max {:.1e} < {MODULARITY_TOL:e}), T = {DEFAULT_TERMS}",
        worst("projection"),
        worst("modularity")
    ))
}

fn c9_infeasible() -> Outcome {
    match solve("6A", &SolveOptions::default()) {
        Err(Error::Infeasible(msg)) => Ok(msg),
        Err(e) => Err(format!("unexpected error {e}")),
        Ok(s) => Err(format!("found a solution {:?}", s.row_tuples())),
    }
}

fn c10_properties() -> Outcome {
    let mut count = 0;
    for (suite, props) in props::SUITES {
        for (name, check) in *props {
            check(&mut props::deterministic_runner(props::CASES)).map_err(|e| format!("{suite}::{name}: {e}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} properties x {} cases", props::CASES))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("solution table", c1_solutions),
        ("weights", c2_weights),
        ("minimal powers", c3_powers),
        ("E-vector table", c4_zg),
        ("exponent identity", c5_exponents),
        ("factorization identity", c6_factorization),
        ("cusp data", c7_cusps),
        ("numerical verification", c8_numverify),
        ("6A infeasible", c9_infeasible),
        ("property suites", c10_properties),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (status, detail) = match run() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {:>2} {status} {name} [{:.2?}]: {detail}", i + 1, t.elapsed());
    }
    if failed == 0 {
        println!("acceptance: all 10 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
