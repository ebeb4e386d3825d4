//! Property checks shared by the `properties` and `acceptance` targets.

#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRng, TestRunner};

use twisted_products::exactseries::{ratio, series_log1p_product, Monomial, Q3Bounds, Q3Series};
use twisted_products::modforms::{dim, embed_level, ModFormVec};
use twisted_products::{QSeries, Rat};

pub const CASES: u32 = 128;

/// A property run by a [`TestRunner`].
pub type Property = fn(&mut TestRunner) -> Result<(), String>;

macro_rules! property {
    ($name:ident, ($($pat:pat in $strat:expr),+ $(,)?) $body:block) => {
        pub fn $name(runner: &mut TestRunner) -> Result<(), String> {
            runner
                .run(&($($strat,)+), |($($pat,)+)| {
                    $body
                    Ok(())
                })
                .map_err(|e| e.to_string())
        }
    };
}

pub fn config(cases: u32) -> Config {
    Config { cases, failure_persistence: None, ..Config::default() }
}

pub fn runner(cases: u32) -> TestRunner {
    TestRunner::new(config(cases))
}

/// Fixed-seed runner for reproducible reports.
pub fn deterministic_runner(cases: u32) -> TestRunner {
    let c = config(cases);
    let rng = TestRng::deterministic_rng(c.rng_algorithm);
    TestRunner::new_with_rng(c, rng)
}

/// Every property, grouped by the module it exercises.
pub const SUITES: &[(&str, &[(&str, Property)])] = &[
    (
        "exactseries",
        &[
            ("exp_log_roundtrip", exactseries::exp_log_roundtrip),
            ("exp_log_roundtrip_trivariate", exactseries::exp_log_roundtrip_trivariate),
            ("ring_laws", exactseries::ring_laws),
            ("binomial_products_match_brute_force", exactseries::binomial_products_match_brute_force),
        ],
    ),
    (
        "moonshine",
        &[
            ("moebius_roundtrip", moonshine::moebius_roundtrip),
            ("evector_support_is_the_divisors", moonshine::evector_support_is_the_divisors),
        ],
    ),
    ("jacobi", &[("coefficients_depend_on_the_discriminant", jacobi::coefficients_depend_on_the_discriminant)]),
    (
        "borcherds",
        &[
            ("exponents_scale_with_n", borcherds::exponents_scale_with_n),
            ("zeta_and_q2_exponents_agree", borcherds::zeta_and_q2_exponents_agree),
            ("linear_in_phi", borcherds::linear_in_phi),
        ],
    ),
    (
        "modforms",
        &[
            ("cusp_widths_sum_to_the_index", modforms::cusp_widths_sum_to_the_index),
            ("embedding_is_transitive", modforms::embedding_is_transitive),
        ],
    ),
];

fn small_rat() -> impl Strategy<Value = Rat> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| ratio(n, d))
}

/// Levels with stored bases.
pub const LEVELS: [u32; 10] = [1, 2, 3, 4, 5, 6, 7, 8, 11, 23];

fn form_at(level: u32) -> impl Strategy<Value = ModFormVec> {
    let d = dim(2, level).unwrap();
    prop::collection::vec(small_rat(), d).prop_map(move |c| ModFormVec::new(2, level, c).unwrap())
}

fn any_form() -> impl Strategy<Value = ModFormVec> {
    prop::sample::select(LEVELS.to_vec()).prop_flat_map(form_at)
}

pub mod exactseries {
    use super::*;

    fn unit_qseries(prec: i64) -> impl Strategy<Value = QSeries> {
        prop::collection::vec(small_rat(), (prec - 1) as usize).prop_map(move |c| {
            QSeries::from_terms(1, prec, std::iter::once((0, ratio(1, 1))).chain((1..).zip(c)))
        })
    }

    fn sparse_qseries() -> impl Strategy<Value = QSeries> {
        prop::collection::vec((0i64..10, small_rat()), 0..5).prop_map(|t| QSeries::from_terms(1, 10, t))
    }

    fn monomial_in(bd: Q3Bounds) -> impl Strategy<Value = Monomial> {
        (0..=bd.a, -3i64..=3, 0..=bd.b)
            .prop_map(|(n, r, m)| (n, r, m))
            .prop_filter("positive, inside the window", move |&x| {
                twisted_products::exactseries::is_positive(x) && bd.contains(x)
            })
    }

    fn unit_q3series(bd: Q3Bounds) -> impl Strategy<Value = Q3Series<Rat>> {
        prop::collection::vec((monomial_in(bd), small_rat()), 0..6).prop_map(move |t| {
            let mut s = Q3Series::one(bd);
            for (m, c) in t {
                s.add_at(m, c);
            }
            s
        })
    }

    /// `(1 − x)^c` by repeated multiplication; `(1 − x)^{−1} = Σ xᵏ`.
    fn binomial_power(x: Monomial, c: i64, bd: Q3Bounds) -> Q3Series<Rat> {
        let mut base = Q3Series::one(bd);
        if c >= 0 {
            base.add_at(x, ratio(-1, 1));
        } else {
            let mut k = 1;
            while bd.contains((k * x.0, k * x.1, k * x.2)) {
                base.add_at((k * x.0, k * x.1, k * x.2), ratio(1, 1));
                k += 1;
            }
        }
        let mut out = Q3Series::one(bd);
        for _ in 0..c.abs() {
            out = out.mul(&base);
        }
        out
    }

    property!(exp_log_roundtrip, (f in unit_qseries(12)) {
        prop_assert_eq!(f.log().unwrap().exp().unwrap(), f);
    });

    property!(exp_log_roundtrip_trivariate, (f in unit_q3series(Q3Bounds::new(2, 2))) {
        prop_assert_eq!(f.log().unwrap().exp().unwrap(), f);
    });

    property!(ring_laws, (a in sparse_qseries(), b in sparse_qseries(), c in sparse_qseries()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    });

    property!(binomial_products_match_brute_force, (factors in prop::collection::vec((monomial_in(Q3Bounds::new(2, 2)), -3i64..=3), 1..4)) {
        let bd = Q3Bounds::new(2, 2);
        let mut direct = Q3Series::one(bd);
        for (x, c) in &factors {
            direct = direct.mul(&binomial_power(*x, *c, bd));
        }
        let f: Vec<(Monomial, Rat)> = factors.iter().map(|(x, c)| (*x, ratio(*c, 1))).collect();
        prop_assert_eq!(series_log1p_product(&f, bd).unwrap(), direct);
    });
}

pub mod moonshine {
    use super::*;
    use twisted_products::exactseries::divisors;
    use twisted_products::moonshine::{class_data, moebius_component, phi_g, power, CLASSES};

    fn class_and_divisor() -> impl Strategy<Value = (&'static str, u32)> {
        prop::sample::select(CLASSES.to_vec()).prop_flat_map(|g| {
            let ds: Vec<u32> = divisors(class_data(g).unwrap().order as u64).into_iter().map(|d| d as u32).collect();
            (Just(g), prop::sample::select(ds))
        })
    }

    property!(moebius_roundtrip, ((g, k) in class_and_divisor()) {
        let level = class_data(g).unwrap().native_level();
        let mut m0 = Rat::from_integer(0.into());
        let mut m2 = ModFormVec::zero(2, level).unwrap();
        for d in divisors(k as u64) {
            let (a, v) = moebius_component(g, d as u32).unwrap();
            let d = ratio(d as i64, 1);
            m0 += a * &d;
            m2 = m2.add(&v.scale(&d));
        }
        let h = class_data(&power(g, k).unwrap()).unwrap();
        prop_assert_eq!(m0, h.chi);
        prop_assert_eq!(m2, embed_level(&h.tdt, level).unwrap());
    });

    property!(evector_support_is_the_divisors, ((g, _k) in class_and_divisor()) {
        let order = class_data(g).unwrap().order as u64;
        let support: Vec<u64> = phi_g(g).unwrap().evec.support().into_iter().map(u64::from).collect();
        prop_assert_eq!(support, divisors(order));
    });
}

pub mod jacobi {
    use super::*;
    use std::collections::BTreeMap;
    use twisted_products::jacobi::{fourier_qz, Generators, JacobiForm01};

    fn any_phi() -> impl Strategy<Value = JacobiForm01> {
        (small_rat(), any_form()).prop_map(|(t, f)| JacobiForm01::new(f.level, t, f).unwrap())
    }

    property!(coefficients_depend_on_the_discriminant, (phi in any_phi()) {
        let n_max = 5;
        let f = fourier_qz(&phi, n_max).unwrap();
        let table = phi.discriminant_table(&Generators::new(4 * n_max)).unwrap();
        let mut seen: BTreeMap<i64, Rat> = BTreeMap::new();
        for ((n, r), c) in f.terms() {
            let d = 4 * n - r * r;
            prop_assert!(d >= -1, "c({}, {}) = {} below the support bound", n, r, c);
            prop_assert_eq!(c, &table[(d + 1) as usize]);
            if let Some(prev) = seen.insert(d, c.clone()) {
                prop_assert_eq!(&prev, c);
            }
        }
        // entries absent from the sparse expansion must be zero in the table
        for n in 0..=n_max {
            for r in -(2 * n + 1)..=(2 * n + 1) {
                let d = 4 * n - r * r;
                if d >= -1 && d <= 4 * n_max {
                    prop_assert_eq!(f.coeff(n, r), table[(d + 1) as usize].clone());
                } else if d < -1 {
                    prop_assert_eq!(f.coeff(n, r), Rat::from_integer(0.into()));
                }
            }
        }
    });
}

pub mod borcherds {
    use super::*;
    use twisted_products::borcherds::{borcherds_evector, borcherds_exponents, BorcherdsSpec};
    use twisted_products::jacobi::JacobiForm01;
    use twisted_products::modforms::has_projections;

    fn projected_phi() -> impl Strategy<Value = JacobiForm01> {
        let levels: Vec<u32> = LEVELS.into_iter().filter(|n| has_projections(*n).unwrap()).collect();
        prop::sample::select(levels)
            .prop_flat_map(|n| (small_rat(), form_at(n)))
            .prop_map(|(t, f)| JacobiForm01::new(f.level, t, f).unwrap())
    }

    fn pair() -> impl Strategy<Value = (JacobiForm01, JacobiForm01)> {
        projected_phi().prop_flat_map(|a| {
            let n = a.level;
            (Just(a), small_rat(), form_at(n)).prop_map(move |(a, t, f)| (a, JacobiForm01::new(n, t, f).unwrap()))
        })
    }

    property!(exponents_scale_with_n, (phi in projected_phi(), n in 1u32..8) {
        let (a, b, c) = borcherds_exponents(&phi, 1).unwrap();
        let k = ratio(n as i64, 1);
        prop_assert_eq!(borcherds_exponents(&phi, n).unwrap(), (a * &k, b * &k, c * &k));
    });

    property!(zeta_and_q2_exponents_agree, (phi in projected_phi(), n in 1u32..8) {
        let (_, ez, eq2) = borcherds_exponents(&phi, n).unwrap();
        prop_assert_eq!(ez, eq2);
    });

    property!(linear_in_phi, ((a, b) in pair(), c in small_rat(), n in 1u32..4) {
        let sum = a.add(&b.scale(&c));
        let (x1, y1, z1) = borcherds_exponents(&a, n).unwrap();
        let (x2, y2, z2) = borcherds_exponents(&b, n).unwrap();
        prop_assert_eq!(borcherds_exponents(&sum, n).unwrap(), (x1 + x2 * &c, y1 + y2 * &c, z1 + z2 * &c));
        let lhs = borcherds_evector(&sum, n).unwrap();
        let rhs = borcherds_evector(&a, n).unwrap().add(&borcherds_evector(&b, n).unwrap().scale(&c)).unwrap();
        prop_assert_eq!(lhs.equal_to(&rhs, 40).unwrap(), None);
        let w = |p: &JacobiForm01| BorcherdsSpec::new(p.clone(), n).unwrap().weight().unwrap();
        prop_assert_eq!(w(&sum), w(&a) + w(&b) * &c);
    });
}

pub mod modforms {
    use super::*;
    use twisted_products::modforms::{cusps_of, index};

    fn chain() -> impl Strategy<Value = (u32, u32, u32)> {
        let mut chains = Vec::new();
        for a in LEVELS {
            for b in LEVELS {
                for c in LEVELS {
                    if b % a == 0 && c % b == 0 {
                        chains.push((a, b, c));
                    }
                }
            }
        }
        prop::sample::select(chains)
    }

    property!(cusp_widths_sum_to_the_index, (n in 1u32..3000) {
        let total: u64 = cusps_of(n).iter().map(|c| c.width as u64).sum();
        prop_assert_eq!(total, index(n));
    });

    property!(embedding_is_transitive, ((a, b, c) in chain(), seed in prop::collection::vec(small_rat(), 3)) {
        let d = dim(2, a).unwrap();
        let v = ModFormVec::new(2, a, seed[..d].to_vec()).unwrap();
        let via = embed_level(&embed_level(&v, b).unwrap(), c).unwrap();
        prop_assert_eq!(via, embed_level(&v, c).unwrap());
    });
}
