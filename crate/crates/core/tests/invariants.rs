use qeis::partitions::{in_lambda, in_omega, lambda_nm, omega_nm, partitions_of};
use qeis::recursions::{closure_witness, odd_k_relations, trace_consistency, TraceVariant};
use qeis::series::{rat, ratio};
use qeis::theta::{extract_coeffs, unimodal_at_one_check, unimodal_from_series, TaylorFamily};

#[test]
fn constrained_families_match_brute_force() {
    for n in 1..=25 {
        for m in 1..=n {
            let brute: Vec<_> = partitions_of(n).filter(|p| in_lambda(p, m)).collect();
            assert_eq!(lambda_nm(n, m), brute, "Lambda({n}, {m})");
        }
        for m in 1..=3 * n {
            let brute: Vec<_> = partitions_of(n).filter(|p| in_omega(p, m)).collect();
            assert_eq!(omega_nm(n, m), brute, "Omega({n}, {m})");
        }
    }
}

#[test]
fn constant_terms() {
    for family in [TaylorFamily::G, TaylorFamily::H] {
        for (i, s) in extract_coeffs(family, 8, 4).unwrap().iter().enumerate() {
            let expected = if i == 0 { ratio(-1, 2) } else { rat(0) };
            assert_eq!(*s.coeff(0), expected, "{family:?}_{}", i + 1);
        }
    }
}

#[test]
fn rank_histograms_are_symmetric() {
    for h in unimodal_from_series(12).unwrap() {
        assert!(h.is_symmetric());
    }
}

#[test]
fn unimodal_at_one_to_order_25() {
    assert!(unimodal_at_one_check(25).unwrap().pass);
}

#[test]
fn closure_witness_holds() {
    assert!(closure_witness(15).unwrap().pass);
}

#[test]
fn trace_recursion_with_extracted_inputs() {
    let report = trace_consistency(TraceVariant::HalfFactorial, 8, 15).unwrap();
    assert!(report.pass, "{report:?}");
    assert!(
        odd_k_relations(TraceVariant::HalfFactorial, &[1, 3, 5, 7], 15)
            .unwrap()
            .pass
    );
    assert!(
        !trace_consistency(TraceVariant::Literal, 8, 15)
            .unwrap()
            .pass
    );
}
