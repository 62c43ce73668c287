mod common;

use isospec::cli::io::{emit_matrix, parse_matrix_str};
use isospec::frames::{
    analysis_operator, dual_frame, frame_bounds, frame_operator, reconstruct, Frame,
};
use isospec::gframes::{
    g_analysis, g_dual, g_frame_operator, g_reconstruct, g_synthesis, projection_gframe,
};
use isospec::intertwining::{
    build_partner, build_reverse_partner, map_eigenpairs, match_spectra, option_select,
    FrameOption, PartnerInput,
};
use isospec::numerics::{hermitian_eig, strict_inverse, ComplexMatrix, Tolerances, C64};
use proptest::prelude::*;

use common::{
    descending, gaussian_vector, max_abs_diff, partner_case, random_frame, random_hermitian, rng,
};

fn tol() -> Tolerances {
    Tolerances::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn eigendecomposition_reconstructs(seed in any::<u64>(), n in 1usize..12) {
        let h = random_hermitian(&mut rng(seed), n);
        let e = hermitian_eig(&h, &tol()).unwrap();
        prop_assert!(e.reconstruct().max_abs_diff(&h) <= 1e-12 * (1.0 + h.norm()));
        let v = &e.eigenvectors;
        prop_assert!((&v.adjoint() * v).max_abs_diff(&ComplexMatrix::identity(n)) <= 1e-12);
        prop_assert!(e.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn strict_inverse_of_positive_matrix(seed in any::<u64>(), n in 1usize..10) {
        let g = common::gaussian_matrix(&mut rng(seed), n, n);
        let p = &(&g.adjoint() * &g) + &ComplexMatrix::identity(n);
        let inv = strict_inverse(&p, &tol()).unwrap();
        prop_assert!((&inv * &p).max_abs_diff(&ComplexMatrix::identity(n)) <= 1e-10);
    }

    #[test]
    fn partner_conditions_and_inclusion(seed in any::<u64>(), d2 in 1usize..8, extra in 0usize..6) {
        let t = tol();
        let case = partner_case(&mut rng(seed), d2 + extra, d2);
        let input = PartnerInput::new(case.h1.clone(), case.x.clone()).unwrap();
        let p = build_partner(&input, &t).unwrap();
        prop_assert!(p.h2.max_abs_diff(&case.h2) <= 1e-10);
        let report = map_eigenpairs(&input, &p, &t).unwrap();
        prop_assert!(report.inclusion.included);
        prop_assert_eq!(report.kept_eigenvectors.len(), d2);
        prop_assert_eq!(report.dropped_eigenvectors.len(), extra);
        let got = hermitian_eig(&p.h2, &t).unwrap().eigenvalues;
        prop_assert!(max_abs_diff(&got, &descending(&case.mu)) <= 1e-10);
    }

    #[test]
    fn reverse_undoes_forward_for_invertible_n1(seed in any::<u64>(), d in 1usize..9) {
        let t = tol();
        let case = partner_case(&mut rng(seed), d, d);
        let p = build_partner(&PartnerInput::new(case.h1.clone(), case.x.clone()).unwrap(), &t).unwrap();
        prop_assert!(p.residual_beta_strong <= 1e-12);
        let back = build_reverse_partner(&p.h2, &case.x, &t).unwrap();
        prop_assert!(back.max_abs_diff(&case.h1) <= 1e-10 * (1.0 + case.h1.norm()));
    }

    #[test]
    fn dual_frame_bounds_and_reconstruction(seed in any::<u64>(), n in 1usize..7, more in 2usize..6) {
        let t = tol();
        let mut r = rng(seed);
        let frame = random_frame(&mut r, n, n + more);
        let b = frame_bounds(&frame, &t).unwrap();
        let dual = dual_frame(&frame, &t).unwrap();
        let d = frame_bounds(&dual, &t).unwrap();
        prop_assert!((d.lower * b.upper - 1.0).abs() <= 1e-9);
        prop_assert!((d.upper * b.lower - 1.0).abs() <= 1e-9);
        let f = gaussian_vector(&mut r, n);
        let (a, c) = reconstruct(&frame, &f, &t).unwrap();
        prop_assert!((&a - &f).norm() <= 1e-10 * f.norm());
        prop_assert!((&c - &f).norm() <= 1e-10 * f.norm());
    }

    #[test]
    fn normalized_frame_is_parseval_and_takes_option_ii(seed in any::<u64>(), n in 1usize..6, more in 1usize..5) {
        let t = tol();
        let frame = random_frame(&mut rng(seed), n, n + more);
        // S^{-1/2} applied to every vector yields a Parseval frame.
        let e = hermitian_eig(&frame_operator(&frame), &t).unwrap();
        let root: Vec<f64> = e.eigenvalues.iter().map(|v| 1.0 / v.sqrt()).collect();
        let s = &(&e.eigenvectors * &ComplexMatrix::from_real_diagonal(&root)) * &e.eigenvectors.adjoint();
        let parseval = Frame::new(n, frame.vectors().iter().map(|v| s.apply(v)).collect()).unwrap();
        let b = frame_bounds(&parseval, &t).unwrap();
        prop_assert!((b.lower - 1.0).abs() <= 1e-10 && (b.upper - 1.0).abs() <= 1e-10);
        let choice = option_select(&parseval, &t).unwrap();
        prop_assert_eq!(choice.option, FrameOption::II);
        prop_assert!(choice.x.max_abs_diff(&analysis_operator(&parseval)) == 0.0);
    }

    #[test]
    fn projection_gframe_is_parseval(seed in any::<u64>(), sizes in prop::collection::vec(1usize..4, 1..5)) {
        let t = tol();
        let mut start = 0;
        let partition: Vec<Vec<usize>> = sizes
            .iter()
            .map(|&k| {
                let cell = (start..start + k).collect();
                start += k;
                cell
            })
            .collect();
        let g = projection_gframe(start, &partition).unwrap();
        prop_assert!(g_frame_operator(&g).max_abs_diff(&ComplexMatrix::identity(start)) <= 1e-15);
        let f = gaussian_vector(&mut rng(seed), start);
        let back = g_synthesis(&g, &g_analysis(&g, &f).unwrap()).unwrap();
        prop_assert!((&back - &f).norm() <= 1e-12 * f.norm());
        let (a, c) = g_reconstruct(&g, &f, &t).unwrap();
        prop_assert!((&a - &f).norm() <= 1e-12 * f.norm() && (&c - &f).norm() <= 1e-12 * f.norm());
        prop_assert_eq!(g_dual(&g, &t).unwrap().members().len(), partition.len());
    }

    #[test]
    fn sub_multisets_are_included(values in prop::collection::vec(-10.0f64..10.0, 1..10), mask in any::<u16>()) {
        let all = descending(&values);
        let subset: Vec<f64> = all.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, v)| *v).collect();
        prop_assert!(match_spectra(&all, &subset, 1e-9).included);
        let mut outside = subset.clone();
        outside.push(11.0);
        prop_assert!(!match_spectra(&all, &descending(&outside), 1e-9).included);
    }

    #[test]
    fn matrix_json_round_trip_is_bit_exact(
        entries in prop::collection::vec((any::<f64>(), any::<f64>()), 1..12),
    ) {
        let entries: Vec<C64> = entries
            .into_iter()
            .map(|(a, b)| C64::new(if a.is_finite() { a } else { 0.0 }, if b.is_finite() { b } else { 0.0 }))
            .collect();
        let n = entries.len();
        let m = ComplexMatrix::from_row_major(1, n, entries).unwrap();
        let back = parse_matrix_str(&emit_matrix(&m)).unwrap();
        for (a, b) in m.row_major_entries().iter().zip(back.row_major_entries()) {
            prop_assert_eq!(a.re.to_bits(), b.re.to_bits());
            prop_assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
    }
}
