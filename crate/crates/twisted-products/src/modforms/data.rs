//! The versioned text data file.
//!
//! Line-oriented, `#` starts a comment. Rationals are written `p/q` or `p`.
//!
//! ```text
//! twisted-products-data 1
//! basis <k> <N> <count> <terms>      followed by <count> lines of <terms> rationals
//! projection <k> <N> <cusp> <dim>    followed by <dim> lines of <dim> rationals
//! class <label> <order> <chi> <level> <N_g> <k_g|-> <coords|->
//! power <label> <p> <label>
//! solution <label> <N> <n> <tc0> <coords|->
//! ```
//! Coordinate lists are comma separated.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::exactseries::parse_rat;
use crate::{Error, Rat, Result};

pub const HEADER: &str = "twisted-products-data 1";

#[derive(Clone, Debug, PartialEq)]
pub struct ClassRecord {
    pub label: String,
    pub order: u32,
    pub chi: Rat,
    pub level: u32,
    pub conjectured_level: u32,
    pub weight: Option<Rat>,
    pub coords: Vec<Rat>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolutionRecord {
    pub label: String,
    pub level: u32,
    pub n: u32,
    pub tc0: Rat,
    pub coords: Vec<Rat>,
}

/// Parsed contents of the data file.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FormData {
    /// `(k, N)` ↦ basis q-expansions (coefficients of `q^0, q^1, …`).
    pub bases: BTreeMap<(u32, u32), Vec<Vec<Rat>>>,
    /// `(k, N, cusp label)` ↦ matrix rows.
    pub projections: BTreeMap<(u32, u32, String), Vec<Vec<Rat>>>,
    pub classes: Vec<ClassRecord>,
    /// `(label, p)` ↦ label of the p-th power.
    pub powers: BTreeMap<(String, u32), String>,
    pub solutions: Vec<SolutionRecord>,
}

fn bad(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Data(format!("line {line}: {msg}"))
}

fn rat_field(line: usize, s: &str) -> Result<Rat> {
    parse_rat(s).ok_or_else(|| bad(line, format!("bad rational {s:?}")))
}

fn int_field<T: std::str::FromStr>(line: usize, s: &str) -> Result<T> {
    s.parse().map_err(|_| bad(line, format!("bad integer {s:?}")))
}

fn coords_field(line: usize, s: &str) -> Result<Vec<Rat>> {
    if s == "-" {
        return Ok(Vec::new());
    }
    s.split(',').map(|x| rat_field(line, x)).collect()
}

fn write_coords(v: &[Rat]) -> String {
    if v.is_empty() {
        "-".to_string()
    } else {
        v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
    }
}

impl FormData {
    pub fn parse(text: &str) -> Result<FormData> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        match lines.next() {
            Some((_, h)) if h == HEADER => {}
            Some((i, h)) => return Err(bad(i, format!("expected header {HEADER:?}, found {h:?}"))),
            None => return Err(Error::Data("empty data file".into())),
        }
        let mut data = FormData::default();
        let read_rows = |lines: &mut dyn Iterator<Item = (usize, &str)>, count: usize, width: usize| {
            (0..count)
                .map(|_| {
                    let (i, l) = lines.next().ok_or_else(|| Error::Data("unexpected end of file".into()))?;
                    let row: Vec<Rat> = l.split_whitespace().map(|x| rat_field(i, x)).collect::<Result<_>>()?;
                    if row.len() != width {
                        return Err(bad(i, format!("expected {width} entries, found {}", row.len())));
                    }
                    Ok(row)
                })
                .collect::<Result<Vec<_>>>()
        };
        while let Some((i, line)) = lines.next() {
            let f: Vec<&str> = line.split_whitespace().collect();
            match f[0] {
                "basis" if f.len() == 5 => {
                    let k = int_field(i, f[1])?;
                    let n = int_field(i, f[2])?;
                    let count = int_field(i, f[3])?;
                    let terms = int_field(i, f[4])?;
                    let rows = read_rows(&mut lines, count, terms)?;
                    data.bases.insert((k, n), rows);
                }
                "projection" if f.len() == 5 => {
                    let k = int_field(i, f[1])?;
                    let n = int_field(i, f[2])?;
                    let dim = int_field(i, f[4])?;
                    let rows = read_rows(&mut lines, dim, dim)?;
                    data.projections.insert((k, n, f[3].to_string()), rows);
                }
                "class" if f.len() == 8 => data.classes.push(ClassRecord {
                    label: f[1].to_string(),
                    order: int_field(i, f[2])?,
                    chi: rat_field(i, f[3])?,
                    level: int_field(i, f[4])?,
                    conjectured_level: int_field(i, f[5])?,
                    weight: if f[6] == "-" { None } else { Some(rat_field(i, f[6])?) },
                    coords: coords_field(i, f[7])?,
                }),
                "power" if f.len() == 4 => {
                    data.powers.insert((f[1].to_string(), int_field(i, f[2])?), f[3].to_string());
                }
                "solution" if f.len() == 6 => data.solutions.push(SolutionRecord {
                    label: f[1].to_string(),
                    level: int_field(i, f[2])?,
                    n: int_field(i, f[3])?,
                    tc0: rat_field(i, f[4])?,
                    coords: coords_field(i, f[5])?,
                }),
                _ => return Err(bad(i, format!("unrecognized record {line:?}"))),
            }
        }
        Ok(data)
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{HEADER}").unwrap();
        writeln!(out, "# Echelon bases of M_k(Gamma0(N)): one q-expansion per line, coefficients of q^0, q^1, ...").unwrap();
        for ((k, n), rows) in &self.bases {
            let terms = rows.first().map_or(0, Vec::len);
            writeln!(out, "basis {k} {n} {} {terms}", rows.len()).unwrap();
            for row in rows {
                writeln!(out, "{}", row.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")).unwrap();
            }
        }
        writeln!(out, "# Projected cusp expansion matrices, acting on coordinate columns").unwrap();
        for ((k, n, c), rows) in &self.projections {
            writeln!(out, "projection {k} {n} {c} {}", rows.len()).unwrap();
            for row in rows {
                writeln!(out, "{}", row.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")).unwrap();
            }
        }
        writeln!(out, "# class label order chi level N_g k_g coordinates").unwrap();
        for c in &self.classes {
            let w = c.weight.as_ref().map_or("-".to_string(), ToString::to_string);
            writeln!(
                out,
                "class {} {} {} {} {} {} {}",
                c.label,
                c.order,
                c.chi,
                c.level,
                c.conjectured_level,
                w,
                write_coords(&c.coords)
            )
            .unwrap();
        }
        for ((g, p), h) in &self.powers {
            writeln!(out, "power {g} {p} {h}").unwrap();
        }
        writeln!(out, "# solution class N n tc0 tc2").unwrap();
        for s in &self.solutions {
            writeln!(out, "solution {} {} {} {} {}", s.label, s.level, s.n, s.tc0, write_coords(&s.coords)).unwrap();
        }
        out
    }
}
