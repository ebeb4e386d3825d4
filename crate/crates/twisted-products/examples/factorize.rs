//! Time the two-sided expansion for every class at its default bounds.

use std::time::Instant;

use twisted_products::expander::{compare, default_bounds, expand_borcherds_side, expand_phi_power};
use twisted_products::moonshine::CLASSES;
use twisted_products::solver::table_solution;

fn main() {
    let only: Vec<String> = std::env::args().skip(1).collect();
    for g in CLASSES {
        if !only.is_empty() && !only.iter().any(|x| x == g) {
            continue;
        }
        let t = Instant::now();
        let s = table_solution(g).unwrap();
        let bd = default_bounds(g, &s.specs()).unwrap();
        let a = expand_phi_power(g, s.p, bd).unwrap();
        let b = expand_borcherds_side(&s.specs(), s.p, bd).unwrap();
        let c = compare(&a, &b).unwrap();
        println!("{g:5} p={} bounds={bd:?} {c:?} denominators {}/{} {:.2?}", s.p, a.exponent_denominator, b.exponent_denominator, t.elapsed());
    }
}
