//! Property tests over Haar-random inputs.

use entdist::channels::{self, apply_channel, ChannelFamily};
use entdist::measures::{
    negativity, pure_measure, Bipartition, Classification, MeasureKind, ProtocolRecord,
};
use entdist::states::{haar_sample, is_normalized, schmidt, DensityMatrix};
use entdist::tensor::{
    hermitian_eigen, hermitian_eigenvalues, partial_trace, partial_transpose, trace_norm, Dims,
};
use proptest::prelude::*;

fn dims_strategy() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(2usize..=3, 2..=3)
}

fn mixed(dims: &[usize], seed: u64) -> DensityMatrix {
    let mut full = dims.to_vec();
    full.push(3);
    let psi = haar_sample(Dims::new(full).unwrap(), seed, 0);
    let keep: Vec<usize> = (0..dims.len()).collect();
    psi.density().reduced(&keep).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn haar_states_are_normalized(dims in dims_strategy(), seed in any::<u64>()) {
        let psi = haar_sample(Dims::new(dims).unwrap(), seed, 0);
        prop_assert!(is_normalized(&psi));
    }

    #[test]
    fn partial_transpose_is_a_trace_preserving_involution(
        dims in dims_strategy(),
        seed in any::<u64>(),
        side in 0usize..3,
    ) {
        let rho = mixed(&dims, seed);
        let cut = [side % dims.len()];
        let pt = partial_transpose(rho.matrix(), rho.dims(), &cut).unwrap();
        prop_assert!((pt.trace().re - 1.0).abs() < 1e-12);
        prop_assert!(pt.hermiticity_defect() < 1e-12);
        prop_assert!(trace_norm(&pt).unwrap() >= 1.0 - 1e-10);
        let back = partial_transpose(&pt, rho.dims(), &cut).unwrap();
        prop_assert!(back.max_abs_diff(rho.matrix()) < 1e-15);
    }

    #[test]
    fn partial_traces_compose(seed in any::<u64>(), da in 2usize..=3, db in 2usize..=3, dc in 2usize..=3) {
        let rho = mixed(&[da, db, dc], seed);
        let ac = partial_trace(rho.matrix(), rho.dims(), &[0, 2]).unwrap();
        let a_two_step = partial_trace(&ac, &Dims::new(vec![da, dc]).unwrap(), &[0]).unwrap();
        let a_direct = partial_trace(rho.matrix(), rho.dims(), &[0]).unwrap();
        prop_assert!(a_two_step.max_abs_diff(&a_direct) < 1e-13);
    }

    #[test]
    fn local_unitaries_preserve_spectrum_and_negativity(seed in any::<u64>()) {
        let rho = mixed(&[2, 3, 2], seed);
        // Eigenvectors of a random Hermitian matrix form a unitary.
        let u = hermitian_eigen(mixed(&[3], seed ^ 1).matrix()).unwrap().vectors;
        let out = rho.apply_unitary(&u, &[1]).unwrap();
        let before = hermitian_eigenvalues(rho.matrix()).unwrap().eigenvalues;
        let after = hermitian_eigenvalues(out.matrix()).unwrap().eigenvalues;
        for (a, b) in before.iter().zip(&after) {
            prop_assert!((a - b).abs() < 1e-10);
        }
        for side in 0..3 {
            let cut = Bipartition::new(vec![side]);
            let n0 = negativity(&rho, &cut).unwrap();
            let n1 = negativity(&out, &cut).unwrap();
            prop_assert!((n0 - n1).abs() < 1e-9);
        }
    }

    #[test]
    fn permutation_then_inverse_is_identity(seed in any::<u64>(), perm in Just(vec![0usize, 1, 2]).prop_shuffle()) {
        let rho = mixed(&[2, 3, 2], seed);
        let mut inverse = vec![0; 3];
        for (k, &p) in perm.iter().enumerate() {
            inverse[p] = k;
        }
        let back = rho.permute(&perm).unwrap().permute(&inverse).unwrap();
        prop_assert_eq!(back.dims(), rho.dims());
        prop_assert!(back.matrix().max_abs_diff(rho.matrix()) < 1e-15);
    }

    #[test]
    fn schmidt_coefficients_agree_on_both_sides(dims in dims_strategy(), seed in any::<u64>()) {
        let psi = haar_sample(Dims::new(dims.clone()).unwrap(), seed, 0);
        let left = Bipartition::new(vec![0]);
        let right = Bipartition::new((1..dims.len()).collect());
        let a = schmidt(&psi, &left).unwrap();
        let b = schmidt(&psi, &right).unwrap();
        prop_assert_eq!(a.rank, b.rank);
        prop_assert!((a.negativity() - b.negativity()).abs() < 1e-10);
        let total: f64 = a.coefficients.iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-10);
    }

    #[test]
    fn discarding_a_party_cannot_raise_negativity(seed in any::<u64>(), da in 2usize..=3) {
        let psi = haar_sample(Dims::new(vec![da, 2, 2]).unwrap(), seed, 0);
        let whole = pure_measure(&psi, &Bipartition::new(vec![0]), MeasureKind::Negativity).unwrap();
        let ab = psi.density().reduced(&[0, 1]).unwrap();
        let part = negativity(&ab, &Bipartition::new(vec![0])).unwrap();
        prop_assert!(part <= whole + 1e-10);
    }

    #[test]
    fn noise_channels_output_valid_states(seed in any::<u64>(), delta in 0.0f64..=1.0, target in 0usize..3) {
        let rho = mixed(&[2, 2, 2], seed);
        for family in ChannelFamily::NOISE {
            let out = apply_channel(&rho, &family.build(delta).unwrap(), target).unwrap();
            prop_assert!(out.validate().is_ok());
        }
        let out = apply_channel(&rho, &channels::lambda1(), target).unwrap();
        prop_assert!(out.validate().is_ok());
    }

    #[test]
    fn classification_follows_the_margins(e_in in 0.0f64..2.0, e_com in 0.0f64..2.0, e_fin in 0.0f64..2.0) {
        let r = ProtocolRecord::new(MeasureKind::Negativity, e_in, e_com, e_fin);
        prop_assert!(r.is_consistent());
        let expected = if r.delta_e <= 1e-9 {
            Classification::NoGain
        } else if r.delta_e > e_com + 1e-9 {
            Classification::Excessive
        } else {
            Classification::NonExcessive
        };
        prop_assert_eq!(r.classification, expected);
    }
}
