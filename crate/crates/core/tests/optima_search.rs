use ndarray::Array3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tt_optima::optima::{best_candidate_row, join_first_indices, split_joined_index};
use tt_optima::oracle::{brute_argmax_abs, brute_min_max, brute_top_abs};
use tt_optima::{
    optima_tt, optima_tt_max, optima_tt_max_bidir, pruning_bound, tt_const, tt_random, MultiIndex, TtCore, TtTensor,
};

fn random_case(rng: &mut ChaCha8Rng, d_range: (usize, usize), n_range: (usize, usize), r_max: usize) -> TtTensor {
    let d = rng.random_range(d_range.0..=d_range.1);
    let shape: Vec<usize> = (0..d).map(|_| rng.random_range(n_range.0..=n_range.1)).collect();
    let r = rng.random_range(1..=r_max);
    tt_random(&shape, &vec![r; d - 1], rng.random()).unwrap()
}

fn rank_one(vectors: &[Vec<f64>]) -> TtTensor {
    let cores = vectors.iter().map(|v| TtCore::from_vec((1, v.len(), 1), v.clone()).unwrap()).collect();
    TtTensor::new(cores).unwrap()
}

#[test]
fn rank_one_maximum_factorizes() {
    let t = rank_one(&[vec![0.5, -3.0, 1.0], vec![2.0, -0.1], vec![0.3, 0.2, -4.0, 1.0]]);
    for k in [1, 2, 100] {
        let (idx, _) = optima_tt_max(&t, k).unwrap();
        assert_eq!(idx.to_one_based(), vec![2, 1, 3]);
    }
}

#[test]
fn two_by_two_outer_product() {
    let t = rank_one(&[vec![-2.0, 1.0], vec![1.0, 3.0]]);
    let r = optima_tt(&t, 100).unwrap();
    assert_eq!((r.y_min, r.i_min.to_one_based()), (-6.0, vec![1, 2]));
    assert_eq!((r.y_max, r.i_max.to_one_based()), (3.0, vec![2, 2]));
}

#[test]
fn constant_tensor_has_equal_extremes() {
    let r = optima_tt(&tt_const(&[3, 3], 4.0).unwrap(), 100).unwrap();
    assert!((r.y_min - 4.0).abs() < 1e-14 && (r.y_max - 4.0).abs() < 1e-14);
}

#[test]
fn no_pruning_is_exact_and_beam_is_the_oracle_top_k() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..60 {
        let t = random_case(&mut rng, (2, 4), (2, 6), 3);
        let full = t.to_full().unwrap();
        let numel = full.len();
        let (idx, beam) = optima_tt_max(&t, numel).unwrap();
        let (_, best) = brute_argmax_abs(&full).unwrap();
        assert!((t.eval(&idx).unwrap().abs() - best.abs()).abs() <= 1e-12 * best.abs());
        let top = brute_top_abs(&full, numel.min(10));
        for (row, (_, v)) in top.iter().enumerate() {
            let got = t.eval(&beam.multi_index(row)).unwrap().abs();
            assert!((got - v.abs()).abs() <= 1e-10 * best.abs());
        }
    }
}

#[test]
fn largest_modulus_matches_brute_force_on_random_tensors() {
    let mut rng = ChaCha8Rng::seed_from_u64(2023);
    for _ in 0..100 {
        let t = random_case(&mut rng, (4, 6), (5, 20), 5);
        let (_, best) = brute_argmax_abs(&t.to_full().unwrap()).unwrap();
        let found = t.eval(&optima_tt_max(&t, 100).unwrap().0).unwrap();
        assert!((found.abs() - best.abs()).abs() <= 1e-12 * best.abs().max(1.0));
    }
}

#[test]
fn first_row_is_the_best_final_candidate() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..40 {
        let t = random_case(&mut rng, (3, 6), (3, 9), 4);
        let (idx, beam) = optima_tt_max(&t, 20).unwrap();
        let best = best_candidate_row(&t, &beam).unwrap();
        let (a, b) = (t.eval(&idx).unwrap().abs(), t.eval(&beam.multi_index(best)).unwrap().abs());
        assert!((a - b).abs() <= 1e-12 * b, "row 0 {a} vs row {best} {b}");
    }
}

#[test]
fn worst_case_bounds_hold() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let t = random_case(&mut rng, (2, 5), (2, 5), 3);
        let full = t.to_full().unwrap();
        let (_, best) = brute_argmax_abs(&full).unwrap();
        let shape = t.shape();
        let ks = [1, 2, shape[0], shape[0] * shape.get(1).copied().unwrap_or(1)];
        for k in ks {
            let (idx, _) = optima_tt_max(&t, k).unwrap();
            let found = t.eval(&idx).unwrap();
            let bound = pruning_bound(&shape, k);
            assert!(found * found >= bound * best * best * (1.0 - 1e-9), "k={k} shape={shape:?}");
        }
    }
}

#[test]
fn joining_preserves_values() {
    let t = tt_random(&[3, 4, 2, 3], &[2, 3, 2], 1).unwrap();
    let shape = t.shape();
    assert_eq!(join_first_indices(&t, 1).unwrap(), t);
    let j = join_first_indices(&t, 2).unwrap();
    assert_eq!(j.shape(), vec![12, 2, 3]);
    for off in 0..j.numel() as usize {
        let jidx = MultiIndex::from_flat_offset(off, &j.shape());
        let orig = split_joined_index(&shape, 2, &jidx);
        // little-endian merge: first mode fastest
        assert_eq!(jidx.as_slice()[0], orig.as_slice()[0] + 3 * orig.as_slice()[1]);
        assert!((j.eval(&jidx).unwrap() - t.eval(&orig).unwrap()).abs() <= 1e-12);
    }
    assert!(join_first_indices(&t, 4).is_err());
}

/// A tensor where a single sweep at K=1 is misled: the heavy marginal of the
/// first mode does not contain the largest element.
fn adversarial() -> TtTensor {
    // Y[i, j] = A[i, j] with row 0 spread out and row 1 peaked.
    let n = 6;
    let mut a = Array3::<f64>::zeros((1, 2, n));
    for j in 0..n {
        a[[0, 0, j]] = 1.0;
    }
    a[[0, 1, 2]] = 2.0;
    let eye = Array3::from_shape_fn((n, n, 1), |(r, l, _)| if r == l { 1.0 } else { 0.0 });
    TtTensor::from_arrays(vec![a, eye]).unwrap()
}

#[test]
fn bidirectional_pass_recovers_from_a_misleading_first_mode() {
    let t = adversarial();
    let fwd = optima_tt_max(&t, 1).unwrap().0;
    assert_eq!(t.eval(&fwd).unwrap(), 1.0);
    let both = optima_tt_max_bidir(&t, 1).unwrap();
    assert_eq!(t.eval(&both).unwrap(), 2.0);
    let full = t.to_full().unwrap();
    assert_eq!(brute_min_max(&full).unwrap().y_max, 2.0);
    // joining the two modes removes the pruning entirely
    let joined = join_first_indices(&t, 1).unwrap();
    assert_eq!(joined, t);
}

#[test]
fn bidirectional_never_worse_than_forward() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let t = random_case(&mut rng, (3, 5), (3, 8), 3);
        let f = t.eval(&optima_tt_max(&t, 1).unwrap().0).unwrap().abs();
        let b = t.eval(&optima_tt_max_bidir(&t, 1).unwrap()).unwrap().abs();
        assert!(b >= f);
    }
}

#[test]
fn reversed_tensor_runs_the_backward_pass() {
    let t = tt_random(&[4, 5, 6], &[2, 3], 8).unwrap();
    let r = t.reversed();
    let (ir, _) = optima_tt_max(&r, 3).unwrap();
    let back = ir.reversed();
    assert!((r.eval(&ir).unwrap() - t.eval(&back).unwrap()).abs() <= 1e-12);
    assert_eq!(r.reversed(), t);
}

#[test]
fn optima_matches_brute_force_on_random_tensors() {
    let mut rng = ChaCha8Rng::seed_from_u64(2023);
    for _ in 0..100 {
        let t = random_case(&mut rng, (4, 6), (5, 20), 5);
        let full = t.to_full().unwrap();
        let truth = brute_min_max(&full).unwrap();
        let r = optima_tt(&t, 100).unwrap();
        assert!(r.y_min <= r.y_max);
        assert_eq!(r.y_min, t.eval(&r.i_min).unwrap());
        assert!((r.y_min - truth.y_min).abs() <= 1e-10);
        assert!(
            (r.y_max - truth.y_max).abs() <= 1e-10,
            "{:?} {:?} got {} {} want {} {}",
            t.shape(),
            t.ranks(),
            r.y_min,
            r.y_max,
            truth.y_min,
            truth.y_max
        );
    }
}

#[test]
fn one_mode_tensor() {
    let t = rank_one(&[vec![1.0, -5.0, 3.0]]);
    let r = optima_tt(&t, 1).unwrap();
    assert_eq!((r.y_min, r.y_max), (-5.0, 3.0));
}

#[test]
fn squared_row_norms_beyond_f64_range_still_rank_correctly() {
    // Every element is about 1e200, so squared prefix norms overflow.
    let t = rank_one(&[vec![1e100, 3e100, 2e100], vec![2e100, 1e100, 3e100], vec![1.0, 3.0, 2.0]]);
    for k in [1, 2, 5] {
        let (idx, _) = optima_tt_max(&t, k).unwrap();
        assert_eq!(idx.as_slice(), &[1, 2, 1], "K={k}");
    }
}
