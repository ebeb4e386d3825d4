//! Generator for the data file.
//!
//! Weight-2 bases are produced from independent sources and row reduced:
//! the Eisenstein differences `E₂(τ) − t·E₂(tτ)` for `1 < t | N`, the eta
//! product `η(τ)²η(11τ)²` at level 11, and products of the theta series of
//! the two reduced forms of discriminant −23 at level 23. Projection
//! matrices, class data, power maps and solution rows are transcribed
//! tables. The generated text is what `data/forms.dat` contains; a test
//! checks this byte for byte.

use num_rational::Ratio;

use super::data::{ClassRecord, FormData, SolutionRecord};
use crate::exactseries::{binary_theta, dedekind_eta, divisors, eisenstein_e2, parse_rat, rat};
use crate::{QSeries, Rat, RatMatrix};

/// Number of q-coefficients stored per basis element.
pub const BASIS_TERMS: i64 = 256;

/// Levels with a stored weight-2 basis.
pub const LEVELS: [u32; 10] = [1, 2, 3, 4, 5, 6, 7, 8, 11, 23];

/// `E₂(τ) − t·E₂(tτ)`.
pub fn eisenstein_difference(t: i64, prec: i64) -> QSeries {
    let e = eisenstein_e2(prec);
    let et = eisenstein_e2((prec + t - 1) / t).rescale(t).truncate(prec);
    e.sub(&et.scale(&rat(t)))
}

/// `Λ_N = N·q·d/dq log(η(Nτ)/η(τ)) = (N/24)(N·E₂(Nτ) − E₂(τ))`.
pub fn lambda(n: i64, prec: i64) -> QSeries {
    eisenstein_difference(n, prec).scale(&Rat::new((-n).into(), 24.into()))
}

fn generators(n: u32, prec: i64) -> Vec<QSeries> {
    let mut gens: Vec<QSeries> = divisors(n as u64)
        .into_iter()
        .filter(|&t| t > 1)
        .map(|t| eisenstein_difference(t as i64, prec))
        .collect();
    match n {
        11 => {
            let p = Ratio::from_integer(prec + 1);
            let f = dedekind_eta(p).pow_u(2).mul(&dedekind_eta(p).rescale(11).pow_u(2));
            gens.push(f.reduce_lattice().truncate(prec));
        }
        23 => {
            let t1 = binary_theta(1, 1, 6, prec);
            let t2 = binary_theta(2, 1, 3, prec);
            gens.extend([t1.mul(&t1), t1.mul(&t2), t2.mul(&t2)]);
        }
        _ => {}
    }
    gens
}

/// Echelon basis of `M₂(Γ₀(N))` as dense coefficient rows.
pub fn weight2_basis(n: u32, prec: i64) -> Vec<Vec<Rat>> {
    let rows: Vec<Vec<Rat>> = generators(n, prec).iter().map(|f| f.dense(prec)).collect();
    if rows.is_empty() {
        return rows;
    }
    let ech = RatMatrix::from_rows(rows).rref();
    assert_eq!(ech.pivots, (0..ech.pivots.len()).collect::<Vec<_>>(), "pivots are not initial");
    ech.matrix.to_rows()
}

type Table = &'static [&'static [&'static str]];

const PROJECTIONS: &[(u32, &str, Table)] = &[
    (2, "0", &[&["-1/2"]]),
    (3, "0", &[&["-1/3"]]),
    (4, "0", &[&["-1/8", "-1/64"], &["-3", "-3/8"]]),
    (4, "1/2", &[&["-1/2", "1/16"], &["12", "1/2"]]),
    (5, "0", &[&["-1/5"]]),
    (7, "0", &[&["-1/7"]]),
    (8, "0", &[&["-1/32", "-1/64", "-1/256"], &["-3/4", "-3/8", "-3/32"], &["-3/4", "-3/8", "-3/32"]]),
    (8, "1/2", &[&["-1/8", "1/16", "-1/64"], &["3", "1/2", "3/8"], &["-3", "3/2", "-3/8"]]),
    (8, "1/4", &[&["-1/2", "0", "1/16"], &["0", "1", "0"], &["12", "0", "1/2"]]),
    (11, "0", &[&["-1/11", "0"], &["0", "-1/11"]]),
    (23, "0", &[&["-1/23", "0", "0"], &["0", "-1/23", "0"], &["0", "0", "-1/23"]]),
];

/// label, order, χ, level of T̃, N_g, k_g, coordinates of T̃
const CLASSES: &[(&str, u32, &str, u32, u32, &str, &str)] = &[
    ("1A", 1, "24", 1, 1, "10", "-"),
    ("2A", 2, "8", 2, 2, "6", "4/3"),
    ("2B", 2, "0", 4, 4, "4", "2,-16"),
    ("3A", 3, "6", 3, 3, "4", "3/2"),
    ("3B", 3, "0", 3, 9, "2", "2"),
    ("4A", 4, "0", 8, 8, "2", "2,0,-16"),
    ("4B", 4, "4", 4, 4, "3", "5/3,8"),
    ("4C", 4, "0", 4, 16, "1", "2,-8"),
    ("5A", 5, "4", 5, 5, "2", "5/3"),
    ("7AB", 7, "3", 7, 7, "1", "7/4"),
    ("8A", 8, "2", 8, 8, "1/2", "11/6,4,12"),
    ("11A", 11, "2", 11, 11, "0", "11/6,0"),
    ("23AB", 23, "1", 23, 23, "-1", "23/12,46/11,-23/11"),
];

const POWERS: &[(&str, u32, &str)] = &[
    ("2A", 2, "1A"),
    ("2B", 2, "1A"),
    ("3A", 3, "1A"),
    ("3B", 3, "1A"),
    ("4A", 2, "2A"),
    ("4B", 2, "2A"),
    ("4C", 2, "2B"),
    ("5A", 5, "1A"),
    ("6A", 2, "3A"),
    ("6A", 3, "2A"),
    ("7AB", 7, "1A"),
    ("8A", 2, "4A"),
    ("11A", 11, "1A"),
    ("23AB", 23, "1A"),
];

/// class, N, n, tc₀, tc₂
const SOLUTIONS: &[(&str, u32, u32, &str, &str)] = &[
    ("1A", 1, 1, "24", "-"),
    ("2A", 2, 1, "8", "4/3"),
    ("2B", 1, 1, "-12", "-"),
    ("2B", 2, 1, "12", "0"),
    ("2B", 4, 1, "0", "2,-16"),
    ("3A", 3, 1, "6", "3/2"),
    ("3B", 1, 1, "-8", "-"),
    ("3B", 3, 1, "8", "2"),
    ("4A", 1, 1, "-6", "-"),
    ("4A", 2, 1, "2", "-2/3"),
    ("4A", 4, 1, "4", "2/3,16"),
    ("4A", 8, 1, "0", "2,0,-16"),
    ("4B", 4, 1, "4", "5/3,8"),
    ("4C", 1, 1, "-3", "-"),
    ("4C", 2, 1, "-3", "1/4"),
    ("4C", 4, 1, "6", "7/4,-14"),
    ("4C", 4, 2, "0", "1,-8"),
    ("5A", 5, 1, "4", "5/3"),
    ("7AB", 7, 1, "3", "7/4"),
    ("8A", 1, 1, "3/2", "-"),
    ("8A", 2, 1, "-5/2", "1/3"),
    ("8A", 4, 1, "1", "1/6,-12"),
    ("8A", 8, 1, "2", "4/3,8,0"),
    ("8A", 8, 2, "0", "1,0,-8"),
    ("11A", 11, 1, "2", "11/6,0"),
    ("23AB", 23, 1, "1", "23/12,46/11,-23/11"),
];

fn q(s: &str) -> Rat {
    parse_rat(s).expect("transcribed rational")
}

fn coords(s: &str) -> Vec<Rat> {
    if s == "-" {
        Vec::new()
    } else {
        s.split(',').map(q).collect()
    }
}

/// Coordinates of `T̃_{6A} = 2(−Λ₂ − Λ₃ + Λ₆)` in the level-6 echelon basis.
pub fn t6a_coords(basis: &[Vec<Rat>]) -> Vec<Rat> {
    let prec = basis[0].len() as i64;
    let f = lambda(6, prec).sub(&lambda(2, prec)).sub(&lambda(3, prec)).scale(&rat(2));
    let c: Vec<Rat> = (0..basis.len() as i64).map(|i| f.coeff(i)).collect();
    let back: Vec<Rat> = (0..prec as usize)
        .map(|j| basis.iter().zip(&c).map(|(row, x)| &row[j] * x).sum())
        .collect();
    assert_eq!(back, f.dense(prec), "T6A not in the level-6 span");
    c
}

/// Build the full data set.
pub fn generate() -> FormData {
    let mut d = FormData::default();
    for n in LEVELS {
        d.bases.insert((2, n), weight2_basis(n, BASIS_TERMS));
    }
    for (n, c, rows) in PROJECTIONS {
        let m = rows.iter().map(|r| r.iter().map(|x| q(x)).collect()).collect();
        d.projections.insert((2, *n, c.to_string()), m);
    }
    for (label, order, chi, level, ng, kg, co) in CLASSES {
        d.classes.push(ClassRecord {
            label: label.to_string(),
            order: *order,
            chi: q(chi),
            level: *level,
            conjectured_level: *ng,
            weight: Some(q(kg)),
            coords: coords(co),
        });
    }
    d.classes.push(ClassRecord {
        label: "6A".into(),
        order: 6,
        chi: rat(2),
        level: 6,
        conjectured_level: 6,
        weight: None,
        coords: t6a_coords(&d.bases[&(2, 6)]),
    });
    for (g, p, h) in POWERS {
        d.powers.insert((g.to_string(), *p), h.to_string());
    }
    for (g, n, s, tc0, tc2) in SOLUTIONS {
        d.solutions.push(SolutionRecord {
            label: g.to_string(),
            level: *n,
            n: *s,
            tc0: q(tc0),
            coords: coords(tc2),
        });
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactseries::ratio;

    #[test]
    fn embedded_file_is_regenerated_bit_exactly() {
        let text = generate().serialize();
        assert!(text == super::super::EMBEDDED_DATA, "data/forms.dat is stale; run the regen_data example");
        assert_eq!(FormData::parse(&text).unwrap().serialize(), text);
    }

    #[test]
    fn six_a_twining_coordinates() {
        let b = weight2_basis(6, 32);
        assert_eq!(t6a_coords(&b), vec![ratio(11, 6), rat(2), rat(14)]);
    }

    #[test]
    fn two_a_is_sixteen_lambda_two() {
        let b = weight2_basis(2, 32);
        let f = lambda(2, 32).scale(&rat(16));
        let expect: Vec<Rat> = b[0].iter().map(|x| x * ratio(4, 3)).collect();
        assert_eq!(f.dense(32), expect);
    }
}
