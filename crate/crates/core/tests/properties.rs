//! Property tests for the invariants of each module.

use proptest::prelude::*;

use opct::cotype::{
    check_triangular_bound, criterion_cotype_scp, diag_approx_numbers, quartic_inequality_margin, quartic_margin_raw,
    DiagonalMap,
};
use opct::gaussian::{
    gaussian_average, gaussian_grid_average, rademacher_grid_average, BanachNorm, EuclideanNorm, RademacherCube,
    SchattenNorm,
};
use opct::harness::fit_slope;
use opct::linalg::{
    approx_number, random_unitary, sample_gaussian_matrix, schatten_norm, singular_values, svd, GaussianKind,
};
use opct::opspace::{
    cb_norm_r_family, col_norm, matrix_level_norm, mm_spn_norm, oh_norm, rcapc_norm, row_norm, rplusc_norm,
    AscentConfig, Family, SpaceDescriptor, VVElement,
};
use opct::{ComplexMatrix, Exponent, SeedSpec};

fn exponent() -> impl Strategy<Value = Exponent> {
    prop::sample::select(vec![1.0, 1.5, 4.0 / 3.0, 2.0, 3.0, 4.0, f64::INFINITY])
        .prop_map(|p| Exponent::new(p).unwrap())
}

/// Gaussian matrix, or a product of two thin ones when `rank` is below both
/// dimensions.
fn matrix(rows: usize, cols: usize, rank: usize, seed: u64) -> ComplexMatrix {
    let s = SeedSpec::new(seed, 0);
    if rank >= rows.min(cols) {
        return sample_gaussian_matrix(rows, cols, GaussianKind::Complex, &s).unwrap();
    }
    let a = sample_gaussian_matrix(rows, rank, GaussianKind::Complex, &s.derive(0)).unwrap();
    let b = sample_gaussian_matrix(rank, cols, GaussianKind::Complex, &s.derive(1)).unwrap();
    a.matmul(&b).unwrap()
}

fn any_matrix() -> impl Strategy<Value = ComplexMatrix> {
    (1usize..8, 1usize..8, 1usize..8, any::<u64>()).prop_map(|(r, c, k, seed)| matrix(r, c, k, seed))
}

fn blocks(n: usize, m: usize, seed: u64) -> Vec<ComplexMatrix> {
    (0..n)
        .map(|k| sample_gaussian_matrix(m, m, GaussianKind::Complex, &SeedSpec::new(seed, k as u64)).unwrap())
        .collect()
}

fn nonincreasing(max_len: usize) -> impl Strategy<Value = DiagonalMap> {
    prop::collection::vec(prop_oneof![3 => 0.0..10.0f64, 1 => Just(0.0), 1 => Just(1.0)], 1..=max_len)
        .prop_map(|u| DiagonalMap::sorted(u).unwrap())
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn schatten_sits_between_operator_and_rank_bound(a in any_matrix(), p in exponent()) {
        let sigma = singular_values(&a).unwrap();
        let op = sigma[0];
        let rank = sigma.iter().filter(|&&s| s > 1e-10 * op).count().max(1);
        let v = schatten_norm(&a, p).unwrap();
        prop_assert!(v >= op * (1.0 - 1e-12));
        prop_assert!(v <= (rank as f64).powf(p.reciprocal()) * op * (1.0 + 1e-10));
    }

    #[test]
    fn approx_numbers_start_at_the_norm_and_decrease(a in any_matrix(), p in exponent()) {
        let first = approx_number(&a, 1, p).unwrap();
        prop_assert!(rel_close(first, schatten_norm(&a, p).unwrap(), 1e-12));
        let mut prev = first;
        for k in 2..=a.rows().min(a.cols()) {
            let next = approx_number(&a, k, p).unwrap();
            prop_assert!(next <= prev * (1.0 + 1e-12));
            prev = next;
        }
    }

    #[test]
    fn schatten_norms_are_unitarily_invariant(a in any_matrix(), p in exponent(), seed in any::<u64>()) {
        let u = random_unitary(a.rows(), &SeedSpec::new(seed, 1)).unwrap();
        let v = random_unitary(a.cols(), &SeedSpec::new(seed, 2)).unwrap();
        let moved = u.matmul(&a).unwrap().matmul(&v).unwrap();
        let before = schatten_norm(&a, p).unwrap();
        prop_assert!((schatten_norm(&moved, p).unwrap() - before).abs() <= 1e-9 * before.max(1.0));
    }

    #[test]
    fn family_dominations(n in 1usize..5, m in 1usize..4, seed in any::<u64>()) {
        let b = blocks(n, m, seed);
        let oh = oh_norm(&b).unwrap();
        let cap = rcapc_norm(&b).unwrap();
        prop_assert!(oh <= cap * (1.0 + 1e-10));
        let cfg = AscentConfig::default().with_restarts(2);
        let sum = rplusc_norm(&b, &cfg).unwrap();
        prop_assert!(sum <= row_norm(&b).unwrap().min(col_norm(&b).unwrap()) * (1.0 + 1e-9));
    }

    #[test]
    fn every_family_is_l2_at_level_one(coeffs in prop::collection::vec((-3.0..3.0f64, -3.0..3.0f64), 1..6)) {
        let z: Vec<_> = coeffs.iter().map(|&(re, im)| opct::linalg::C64::new(re, im)).collect();
        let x = VVElement::from_scalars(&z).unwrap();
        let l2 = z.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        let p3 = Exponent::new(3.0).unwrap();
        for family in [Family::Row, Family::Col, Family::Oh, Family::RCapC, Family::RPlusC, Family::MinL2,
                       Family::RBracket(p3), Family::CBracket(p3)] {
            let space = SpaceDescriptor::new(family, z.len()).unwrap();
            let v = matrix_level_norm(&space, &x, &AscentConfig::default()).unwrap();
            prop_assert!((v - l2).abs() <= 1e-8 * l2.max(1.0), "{family:?}: {v} vs {l2}");
        }
    }

    #[test]
    fn cb_norms_compose_submultiplicatively(
        n in 1usize..6, p1 in exponent(), p2 in exponent(), p3 in exponent(), seed in any::<u64>(),
    ) {
        let u = matrix(n, n, n, seed);
        let v = matrix(n, n, n, seed.wrapping_add(1));
        let vu = v.matmul(&u).unwrap();
        let lhs = cb_norm_r_family(&vu, p1, p3).unwrap();
        let rhs = cb_norm_r_family(&v, p2, p3).unwrap() * cb_norm_r_family(&u, p1, p2).unwrap();
        prop_assert!(lhs <= rhs * (1.0 + 1e-10));
    }

    #[test]
    fn diagonal_approx_numbers_are_singular_value_tails(u in nonincreasing(10), r in exponent()) {
        let dense = u.to_matrix();
        for (k, &ak) in diag_approx_numbers(&u, r).iter().enumerate() {
            let want = approx_number(&dense, k + 1, r).unwrap();
            prop_assert!((ak - want).abs() <= 1e-12 * want.max(1.0));
        }
    }

    #[test]
    fn quartic_margin_is_nonnegative(u in nonincreasing(64)) {
        prop_assert!(quartic_inequality_margin(&u) >= -1e-12 * u.l2().max(1.0));
    }

    #[test]
    fn triangular_margin_is_nonnegative_on_the_boundary(u in nonincreasing(48), inv_r in 0.0..=0.5f64) {
        let r = Exponent::from_reciprocal(inv_r).unwrap();
        let s = Exponent::from_reciprocal(0.5 - inv_r).unwrap();
        prop_assert!(check_triangular_bound(&u, r, s).unwrap() >= -1e-10 * u.l2().max(1.0));
    }

    #[test]
    fn criterion_is_monotone(
        ip in 0.0..=1.0f64, iq in 0.0..=1.0f64, is in 0.0..=0.5f64, shrink_s in 0.0..=1.0f64, toward in 0.0..=1.0f64,
    ) {
        let e = |inv: f64| Exponent::from_reciprocal(inv).unwrap();
        let base = criterion_cotype_scp(e(ip), e(iq), e(is)).unwrap();
        if base.satisfied {
            let larger_s = criterion_cotype_scp(e(ip), e(iq), e(is * shrink_s)).unwrap();
            prop_assert!(larger_s.satisfied);
            let closer_q = criterion_cotype_scp(e(ip), e(iq + (ip - iq) * toward), e(is)).unwrap();
            prop_assert!(closer_q.satisfied);
        }
    }

    #[test]
    fn slope_fit_recovers_power_laws(c in 0.01..100.0f64, alpha in -2.0..2.0f64) {
        let pts: Vec<(usize, f64)> = [4usize, 8, 16, 32, 64].iter().map(|&n| (n, c * (n as f64).powf(alpha))).collect();
        let fit = fit_slope(&pts).unwrap();
        prop_assert!((fit.slope - alpha).abs() < 1e-9);
        prop_assert!(fit.slope_stderr < 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn closed_form_norms_ignore_unitary_mixing(n in 1usize..5, m in 1usize..4, seed in any::<u64>()) {
        let x = VVElement::linear(blocks(n, m, seed)).unwrap();
        let mixed = x.mix(&random_unitary(n, &SeedSpec::new(seed, 9)).unwrap()).unwrap();
        let cfg = AscentConfig::default();
        for family in [Family::Row, Family::Col, Family::Oh, Family::RCapC] {
            let space = SpaceDescriptor::new(family, n).unwrap();
            let a = matrix_level_norm(&space, &x, &cfg).unwrap();
            let b = matrix_level_norm(&space, &mixed, &cfg).unwrap();
            prop_assert!((a - b).abs() <= 1e-8 * a.max(1.0), "{family:?}: {a} vs {b}");
        }
    }

    #[test]
    fn optimised_norms_ignore_unitary_mixing(n in 1usize..4, seed in any::<u64>()) {
        let x = VVElement::linear(blocks(n, 2, seed)).unwrap();
        let mixed = x.mix(&random_unitary(n, &SeedSpec::new(seed, 9)).unwrap()).unwrap();
        let cfg = AscentConfig::default();
        for family in [Family::RPlusC, Family::MinL2] {
            let space = SpaceDescriptor::new(family, n).unwrap();
            let a = matrix_level_norm(&space, &x, &cfg).unwrap();
            let b = matrix_level_norm(&space, &mixed, &cfg).unwrap();
            prop_assert!(rel_close(a, b, 0.01), "{family:?}: {a} vs {b}");
        }
    }

    #[test]
    fn vector_valued_norm_is_sandwiched(m in 2usize..4, n in 1usize..4, seed in any::<u64>(), p in exponent()) {
        // Compressing to a single block gives the lower bound; contractive
        // outer factors give the upper one.
        let y = VVElement::grid(m, blocks(m * m, n, seed)).unwrap();
        let v = mm_spn_norm(&y, p, &AscentConfig::default().with_restarts(4)).unwrap().value;
        let lower = y.blocks().iter().map(|b| schatten_norm(b, p).unwrap()).fold(0.0, f64::max);
        let upper = schatten_norm(&y.assemble().unwrap(), p).unwrap();
        prop_assert!(v >= lower * (1.0 - 1e-9), "{v} below block bound {lower}");
        prop_assert!(v <= upper * (1.0 + 1e-9), "{v} above {upper}");
    }

    #[test]
    fn rademacher_second_moment_stays_below_gaussian(n in 1usize..4, seed in any::<u64>(), pick in 0usize..3) {
        let p = [Exponent::TWO, Exponent::new(4.0).unwrap(), Exponent::INF][pick];
        let x = VVElement::grid(n, blocks(n * n, 2, seed)).unwrap();
        let norm = SchattenNorm::square(2, p);
        let cube = RademacherCube::build(n).unwrap();
        let rad = rademacher_grid_average(&x, &norm, &cube).unwrap();
        let g = gaussian_grid_average(&x, &norm, 400, &SeedSpec::new(seed, 3)).unwrap();
        prop_assert!(rad <= g.mean + 3.0 * g.stderr + 1e-12, "{rad} vs {} ± {}", g.mean, g.stderr);
    }
}

/// Euclidean norm that hides its Hilbertian structure, forcing sampling.
struct Opaque(EuclideanNorm);

impl BanachNorm for Opaque {
    fn element_shape(&self) -> (usize, usize) {
        self.0.element_shape()
    }

    fn norm(&self, x: &ComplexMatrix) -> opct::Result<f64> {
        self.0.norm(x)
    }
}

#[test]
fn hilbertian_fast_path_matches_sampling() {
    for (t, n) in [2usize, 5, 9].into_iter().enumerate() {
        let u: Vec<f64> = (0..n).map(|k| 1.0 + ((k * 7 + t) % 5) as f64).collect();
        let elems: Vec<ComplexMatrix> = (0..n)
            .map(|k| ComplexMatrix::from_fn(n, 1, |i, _| if i == k { u[k].into() } else { 0.0.into() }))
            .collect();
        let shape = EuclideanNorm { rows: n, cols: 1 };
        let exact = gaussian_average(&elems, &shape, 0, &SeedSpec::default()).unwrap();
        assert!(exact.is_exact());
        let mc = gaussian_average(&elems, &Opaque(shape), 10_000, &SeedSpec::new(21, t as u64)).unwrap();
        assert!((mc.mean - exact.mean).abs() <= 3.0 * mc.stderr, "{} ± {} vs {}", mc.mean, mc.stderr, exact.mean);
    }
}

#[test]
fn sampling_is_independent_of_thread_count() {
    let x = VVElement::grid(3, blocks(9, 3, 4)).unwrap();
    let norm = SchattenNorm::square(3, Exponent::INF);
    let seed = SeedSpec::new(77, 5);
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| gaussian_grid_average(&x, &norm, 300, &seed).unwrap())
    };
    let one = run(1);
    for threads in [2, 4] {
        let other = run(threads);
        assert_eq!(one.mean.to_bits(), other.mean.to_bits());
        assert_eq!(one.stderr.to_bits(), other.stderr.to_bits());
    }
}

#[test]
fn vector_valued_norm_is_not_monotone_in_p() {
    // Σ_j e_1j ⊗ e_1j: a row of R_n tensored with its own coordinates. At
    // p = ∞ this is the row norm √n, at p = 2 the OH value n^{1/4}.
    let n = 4;
    let blocks =
        (0..n * n).map(|k| if k < n { ComplexMatrix::unit(n, n, 0, k) } else { ComplexMatrix::zeros(n, n) }).collect();
    let y = VVElement::grid(n, blocks).unwrap();
    let cfg = AscentConfig::default().with_restarts(8);
    let two = mm_spn_norm(&y, Exponent::TWO, &cfg).unwrap().value;
    let inf = mm_spn_norm(&y, Exponent::INF, &cfg).unwrap().value;
    let oh = oh_norm(&opct::opspace::coefficient_matrices(&y).unwrap()).unwrap();
    assert!((oh - (n as f64).powf(0.25)).abs() < 1e-12);
    assert!((two - oh).abs() < 1e-6 * oh, "{two} vs {oh}");
    assert!((inf - (n as f64).sqrt()).abs() < 1e-9, "{inf}");
    assert!(two < inf);
}

#[test]
fn quartic_inequality_needs_monotone_input() {
    // Increasing lists can break the inequality.
    assert!(quartic_margin_raw(&[0.0, 1.0]) < 0.0);
    assert!(quartic_margin_raw(&[0.1, 0.2, 1.0]) < 0.0);
    assert!(DiagonalMap::new(vec![0.0, 1.0]).is_err());
}

#[test]
fn svd_reconstructs_random_matrices() {
    let mut worst: f64 = 0.0;
    for t in 0..1000u64 {
        let rows = 1 + (t * 37 % 64) as usize;
        let cols = 1 + (t * 53 % 64) as usize;
        let rank = if t % 4 == 0 { 1 + (t % 5) as usize } else { 64 };
        let a = matrix(rows, cols, rank, 1000 + t);
        let s = svd(&a).unwrap();
        let err = s.reconstruct().sub(&a).unwrap().frobenius_norm() / a.frobenius_norm();
        worst = worst.max(err);
    }
    assert!(worst <= opct::linalg::SVD_TOL, "worst relative reconstruction error {worst:e}");
}
