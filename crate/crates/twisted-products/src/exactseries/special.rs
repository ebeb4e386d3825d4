use num_rational::Ratio;

use super::{rat, sigma1, QSeries};
use crate::Rat;

/// `E₂ = 1 − 24 Σ σ₁(n) qⁿ`, known below `q^prec`.
pub fn eisenstein_e2(prec: i64) -> QSeries<Rat> {
    assert!(prec >= 1, "precision must be at least 1");
    let terms = (0..prec).map(|n| if n == 0 { (0, rat(1)) } else { (n, rat(-24 * sigma1(n as u64) as i64)) });
    QSeries::from_terms(1, prec, terms)
}

/// `∏_{n≥1} (1 − qⁿ)` below `q^prec`, via Euler's pentagonal theorem.
pub fn euler_product(prec: i64) -> QSeries<Rat> {
    let mut terms = Vec::new();
    let mut k = 0i64;
    loop {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let p1 = k * (3 * k - 1) / 2;
        let p2 = k * (3 * k + 1) / 2;
        if p1 >= prec {
            break;
        }
        terms.push((p1, rat(sign)));
        if k > 0 && p2 < prec {
            terms.push((p2, rat(sign)));
        }
        k += 1;
    }
    QSeries::from_terms(1, prec, terms)
}

/// `η(τ) = q^{1/24} ∏ (1 − qⁿ)` on the lattice `h = 24`, known below
/// `q^prec`.
pub fn dedekind_eta(prec: Ratio<i64>) -> QSeries<Rat> {
    assert!(prec >= Ratio::new(1, 24), "precision must be at least 1/24");
    let num = (prec * 24).ceil().to_integer();
    let inner = euler_product((num - 1 + 23) / 24 + 1).on_lattice(24).shift(1);
    inner.truncate(num)
}

/// Theta series `Σ_{x,y ∈ ℤ} q^{ax² + bxy + cy²}` of a positive definite
/// binary quadratic form, below `q^prec`.
pub fn binary_theta(a: i64, b: i64, c: i64, prec: i64) -> QSeries<Rat> {
    let disc = 4 * a * c - b * b;
    assert!(a > 0 && disc > 0, "form must be positive definite");
    // ax² + bxy + cy² ≥ (disc/4c)x² and ≥ (disc/4a)y²
    let bound = |k: i64| ((4 * k * prec) as f64 / disc as f64).sqrt().ceil() as i64 + 1;
    let (bx, by) = (bound(c), bound(a));
    let mut counts = vec![0i64; prec as usize];
    for x in -bx..=bx {
        for y in -by..=by {
            let v = a * x * x + b * x * y + c * y * y;
            if v < prec {
                counts[v as usize] += 1;
            }
        }
    }
    QSeries::from_dense(counts.into_iter().map(rat).collect())
}
