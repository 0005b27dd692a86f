use birkhoff_lab::bracelet::{random_bracelet, random_factor, random_factorisable};
use birkhoff_lab::spectra::points_in_hypocycloid;
use birkhoff_lab::unistochastic::{
    heuristic_witness, solve_d4_phases, witness_d3_circulant, witness_d4_circulant,
};
use birkhoff_lab::{
    bracelet_pair, certify, circulant_eigenvalues, is_bracelet, polar_unitary_factor, sinkhorn_sample,
    spectrum_in_hypocycloid, BistochasticMatrix, Certificate, CirculantVector, ComplexSquareMatrix,
    HeuristicConfig, HypocycloidRegion, Verdict,
};
use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn real_oracle(b: &BistochasticMatrix) -> DMatrix<f64> {
    DMatrix::from_row_slice(b.dim(), b.dim(), b.entries())
}

fn complex_oracle(m: &ComplexSquareMatrix) -> DMatrix<Complex64> {
    DMatrix::from_row_slice(m.dim(), m.dim(), m.entries())
}

fn probability_vector(d: usize, rng: &mut impl Rng) -> Vec<f64> {
    let w: Vec<f64> = (0..d).map(|_| -rng.gen::<f64>().max(1e-300).ln()).collect();
    let s: f64 = w.iter().sum();
    w.iter().map(|x| x / s).collect()
}

/// A circulant vector, with some coordinates zeroed to reach faces of the simplex.
fn sparse_circulant(d: usize, rng: &mut impl Rng) -> CirculantVector {
    let mut alpha = probability_vector(d, rng);
    for x in alpha.iter_mut() {
        if rng.gen_bool(0.2) {
            *x = 0.0;
        }
    }
    if alpha.iter().sum::<f64>() == 0.0 {
        alpha[0] = 1.0;
    }
    let s: f64 = alpha.iter().sum();
    CirculantVector::from_slice(&alpha.iter().map(|x| x / s).collect::<Vec<_>>()).unwrap()
}

/// Witness invariants recomputed with nalgebra.
fn assert_sound(cert: &Certificate, b: &BistochasticMatrix) {
    if let Certificate::Unistochastic(w) = cert {
        let u = complex_oracle(w.matrix());
        let residual = (&u * u.adjoint() - DMatrix::identity(b.dim(), b.dim())).norm();
        assert!(residual <= 1e-9, "residual {residual}");
        assert!((residual - w.unitarity_residual()).abs() < 1e-12);
        for (z, x) in u.transpose().iter().zip(b.entries()) {
            assert!((z.norm_sqr() - x).abs() <= 1e-10);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn circulant_eigenvalues_are_roots_of_the_characteristic_polynomial(d in 2usize..=8, seed: u64) {
        let c = CirculantVector::from_slice(&probability_vector(d, &mut rng(seed))).unwrap();
        let b = real_oracle(&c.to_matrix()).map(|x| Complex64::new(x, 0.0));
        for z in circulant_eigenvalues(&c).values {
            let det = (&b - DMatrix::identity(d, d) * z).determinant();
            prop_assert!(det.norm() < 1e-6, "|det| = {}", det.norm());
        }
    }

    #[test]
    fn circulant_round_trip(d in 1usize..=8, seed: u64) {
        let c = CirculantVector::from_slice(&probability_vector(d, &mut rng(seed))).unwrap();
        let back = c.to_matrix().as_circulant(1e-12).unwrap();
        prop_assert_eq!(back.alpha(), c.alpha());
    }

    #[test]
    fn multiply_matches_oracle_and_associates(d in 1usize..=8, seed: u64) {
        let (a, b, c) = (sinkhorn_sample(d, seed, 10_000, 1e-13).unwrap(),
                         sinkhorn_sample(d, seed ^ 1, 10_000, 1e-13).unwrap(),
                         sinkhorn_sample(d, seed ^ 2, 10_000, 1e-13).unwrap());
        let ab = a.multiply(&b).unwrap();
        let oracle = real_oracle(&a) * real_oracle(&b);
        prop_assert!((real_oracle(&ab) - oracle).amax() < 1e-15);
        let left = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        let right = ab.multiply(&c).unwrap();
        prop_assert!(left.max_abs_difference(&right) < 1e-12);
    }

    #[test]
    fn tensor_matches_kronecker(d1 in 1usize..=3, d2 in 1usize..=3, seed: u64) {
        let a = sinkhorn_sample(d1, seed, 10_000, 1e-13).unwrap();
        let b = sinkhorn_sample(d2, seed ^ 5, 10_000, 1e-13).unwrap();
        let oracle = real_oracle(&a).kronecker(&real_oracle(&b));
        prop_assert!((real_oracle(&a.tensor(&b)) - oracle).amax() < 1e-15);
    }

    #[test]
    fn polar_factor_matches_svd(d in 1usize..=6, seed: u64) {
        let mut r = rng(seed);
        let a = ComplexSquareMatrix::from_fn(d, |_, _| Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)));
        let oracle = complex_oracle(&a);
        let svd = oracle.clone().svd(true, true);
        prop_assume!(svd.singular_values.min() > 1e-3);
        let q = svd.u.unwrap() * svd.v_t.unwrap();
        let x = polar_unitary_factor(&a, 100, 1e-13).unwrap();
        prop_assert!((complex_oracle(&x) - &q).norm() < 1e-9);
        prop_assert!(x.unitarity_residual() <= 1e-13);
        // X†A is the Hermitian factor
        let h = complex_oracle(&x).adjoint() * oracle;
        prop_assert!((&h - h.adjoint()).norm() < 1e-8);
        let again = polar_unitary_factor(&x, 100, 1e-13).unwrap();
        prop_assert!(again.frobenius_distance(&x) < 1e-12);
    }

    #[test]
    fn factor_products_are_bracelet(d in 2usize..=6, seed: u64) {
        let b = random_factorisable(d, 30, &mut rng(seed)).unwrap();
        prop_assert!(is_bracelet(&b).holds);
    }

    #[test]
    fn elementary_factors_preserve_bracelet_pairs(d in 3usize..=8, seed: u64) {
        let mut r = rng(seed);
        let (p, q) = loop {
            let p: Vec<f64> = (0..d).map(|_| r.gen()).collect();
            let q: Vec<f64> = (0..d).map(|_| r.gen()).collect();
            if bracelet_pair(&p, &q).unwrap().0 {
                break (p, q);
            }
        };
        let e = random_factor(d, &mut r).unwrap();
        let (mut ep, mut eq) = (p.clone(), q.clone());
        e.apply_vector(&mut ep);
        e.apply_vector(&mut eq);
        prop_assert!(bracelet_pair(&ep, &eq).unwrap().0);
    }

    #[test]
    fn tensor_of_bracelet_is_bracelet(d1 in 2usize..=3, d2 in 2usize..=3, seed: u64) {
        let mut r = rng(seed);
        let a = random_bracelet(d1, &mut r).unwrap();
        let b = random_bracelet(d2, &mut r).unwrap();
        prop_assert!(is_bracelet(&a.tensor(&b)).holds);
    }

    #[test]
    fn certificates_are_sound(d in 2usize..=4, seed: u64) {
        let b = sinkhorn_sample(d, seed, 10_000, 1e-13).unwrap();
        let cert = certify(&b).unwrap();
        assert_sound(&cert, &b);
        if d <= 3 {
            // exact paths are complete
            prop_assert_eq!(cert.is_unistochastic(), is_bracelet(&b).holds);
        }
        if cert.verdict() == Verdict::NotUnistochastic {
            prop_assert!(!is_bracelet(&b).holds);
        }
    }

    #[test]
    fn circulant_witnesses_are_doubly_circulant(seed: u64, d in 3usize..=4) {
        let c = sparse_circulant(d, &mut rng(seed));
        let cert = if d == 3 { witness_d3_circulant(&c) } else { witness_d4_circulant(&c) }.unwrap();
        prop_assert_eq!(cert.is_unistochastic(), is_bracelet(&c.to_matrix()).holds);
        assert_sound(&cert, &c.to_matrix());
        if let Some(w) = cert.witness() {
            prop_assert!(w.matrix().circulant_defect() < 1e-12);
            prop_assert!(spectrum_in_hypocycloid(&c, 1e-9).0);
        }
    }

    #[test]
    fn root_bracket_and_eta(seed: u64) {
        let c = sparse_circulant(4, &mut rng(seed));
        prop_assume!(is_bracelet(&c.to_matrix()).holds);
        if let Ok(s) = solve_d4_phases(&c) {
            prop_assert!((-1.0..=0.0).contains(&s.eta));
            let (lo, hi) = s.beta_bracket;
            prop_assert!(std::f64::consts::FRAC_PI_2 <= lo && hi <= 1.5 * std::f64::consts::PI);
            prop_assert!(s.root_residual <= 1e-12);
        }
    }

    #[test]
    fn product_spectra_stay_inside(d in 3usize..=4, seed: u64) {
        let mut r = rng(seed);
        let (x, y) = loop {
            let x = sparse_circulant(d, &mut r);
            let y = sparse_circulant(d, &mut r);
            if is_bracelet(&x.to_matrix()).holds && is_bracelet(&y.to_matrix()).holds {
                break (x, y);
            }
        };
        let products: Vec<Complex64> = x.eigenvalues().values.iter().zip(&y.eigenvalues().values).map(|(a, b)| a * b).collect();
        let region = HypocycloidRegion::new(d).unwrap();
        prop_assert!(points_in_hypocycloid(&region, &products, 1e-9).0);
    }
}

#[test]
fn sinkhorn_samples_are_bistochastic() {
    for d in 2..=8 {
        for seed in 0..1250 {
            let b = sinkhorn_sample(d, seed, 10_000, 1e-13).unwrap();
            let bound = 1e-12 * d as f64;
            for k in 0..d {
                assert!((b.row(k).iter().sum::<f64>() - 1.0).abs() <= bound);
                assert!((b.column(k).iter().sum::<f64>() - 1.0).abs() <= bound);
            }
        }
    }
}

#[test]
fn products_stay_bistochastic() {
    let mut r = rng(17);
    for k in 0..10_000 {
        let d = 2 + k % 7;
        let a = sinkhorn_sample(d, r.gen(), 10_000, 1e-13).unwrap();
        let b = sinkhorn_sample(d, r.gen(), 10_000, 1e-13).unwrap();
        a.multiply(&b).unwrap();
    }
}

#[test]
fn heuristic_is_one_sided() {
    let config = HeuristicConfig { restarts: 4, max_iters: 300, ..HeuristicConfig::default() };
    let mut r = rng(23);
    for _ in 0..20 {
        let b = random_bracelet(5, &mut r).unwrap();
        let cert = heuristic_witness(&b, &config).unwrap();
        assert_ne!(cert.verdict(), Verdict::NotUnistochastic);
        if let Some(w) = cert.witness() {
            assert!(w.unitarity_residual() <= config.tol);
        }
        assert_sound(&cert, &b);
    }
    let q = birkhoff_lab::fixtures::q_matrix();
    assert_eq!(heuristic_witness(&q, &config).unwrap().verdict(), Verdict::NotUnistochastic);
}
