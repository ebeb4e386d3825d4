mod props;

use props::{runner, CASES};

mod exactseries {
    use super::*;

    #[test]
    fn exp_log_roundtrip() {
        props::exactseries::exp_log_roundtrip(&mut runner(CASES)).unwrap();
    }

    #[test]
    fn exp_log_roundtrip_trivariate() {
        props::exactseries::exp_log_roundtrip_trivariate(&mut runner(CASES)).unwrap();
    }

    #[test]
    fn ring_laws() {
        props::exactseries::ring_laws(&mut runner(CASES)).unwrap();
    }

    #[test]
    fn binomial_products_match_brute_force() {
        props::exactseries::binomial_products_match_brute_force(&mut runner(CASES)).unwrap();
    }
}

mod moonshine {
    use super::*;

    #[test]
    fn moebius_roundtrip() {
        props::moonshine::moebius_roundtrip(&mut runner(CASES)).unwrap();
    }

    #[test]
    fn evector_support_is_the_divisors() {
        props::moonshine::evector_support_is_the_divisors(&mut runner(CASES)).unwrap();
    }
}

mod jacobi {
    use super::*;

    #[test]
    fn coefficients_depend_on_the_discriminant() {
        props::jacobi::coefficients_depend_on_the_discriminant(&mut runner(CASES)).unwrap();
    }
}

mod borcherds {
    use super::*;

    #[test]
    fn exponents_scale_with_n() {
        props::borcherds::exponents_scale_with_n(&mut runner(CASES)).unwrap();
    }

    #[test]
    fn zeta_and_q2_exponents_agree() {
        props::borcherds::zeta_and_q2_exponents_agree(&mut runner(CASES)).unwrap();
    }

    #[test]
    fn linear_in_phi() {
        props::borcherds::linear_in_phi(&mut runner(CASES)).unwrap();
    }
}

mod modforms {
    use super::*;

    #[test]
    fn cusp_widths_sum_to_the_index() {
        props::modforms::cusp_widths_sum_to_the_index(&mut runner(CASES)).unwrap();
    }

    #[test]
    fn embedding_is_transitive() {
        props::modforms::embedding_is_transitive(&mut runner(CASES)).unwrap();
    }
}
