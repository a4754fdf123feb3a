use proptest::prelude::*;

use uncertainty::bounds::{Family, PairStats};
use uncertainty::hilbert::{
    deviation_vector, inner, orthonormal_complement_basis, variance, Ket, StateVector, C64,
};
use uncertainty::verify::random_instance;

fn complex() -> impl Strategy<Value = C64> {
    (-3.0..3.0f64, -3.0..3.0f64).prop_map(|(re, im)| C64::new(re, im))
}

fn ket(dim: usize) -> impl Strategy<Value = Ket> {
    prop::collection::vec(complex(), dim).prop_map(|amps| Ket::new(amps).unwrap())
}

fn close(x: C64, y: C64, tol: f64) -> bool {
    (x - y).norm() <= tol * 1f64.max(x.norm()).max(y.norm())
}

fn instance() -> impl Strategy<Value = (usize, u64)> {
    (prop::sample::select(vec![2usize, 3, 4, 6, 8]), any::<u64>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn inner_product_is_sesquilinear(
        (x, y, z) in (1usize..6).prop_flat_map(|d| (ket(d), ket(d), ket(d))),
        a in complex(),
        b in complex(),
    ) {
        // linear in the second argument
        let combo = y.scaled(a).plus_scaled(b, &z).unwrap();
        let lhs = inner(&x, &combo).unwrap();
        let rhs = a * inner(&x, &y).unwrap() + b * inner(&x, &z).unwrap();
        prop_assert!(close(lhs, rhs, 1e-12));
        // conjugate-linear in the first
        let lhs = inner(&x.scaled(a), &y).unwrap();
        prop_assert!(close(lhs, a.conj() * inner(&x, &y).unwrap(), 1e-12));
        // Hermitian symmetry
        prop_assert!(close(inner(&y, &x).unwrap(), inner(&x, &y).unwrap().conj(), 1e-12));
    }

    #[test]
    fn deviation_norm_is_variance((dim, seed) in instance()) {
        let inst = random_instance(dim, seed).unwrap();
        let dev = deviation_vector(&inst.a, &inst.psi).unwrap();
        let var = variance(&inst.a, &inst.psi).unwrap();
        prop_assert!((dev.norm_sqr() - var).abs() <= 1e-10 * var.max(1.0));
        prop_assert!(inner(inst.psi.ket(), &dev).unwrap().norm() <= 1e-10 * var.sqrt().max(1.0));
    }

    #[test]
    fn complement_basis_is_orthonormal((dim, seed) in instance()) {
        let psi = random_instance(dim, seed).unwrap().psi;
        let basis = orthonormal_complement_basis(&psi);
        prop_assert_eq!(basis.len(), dim - 1);
        for (i, q) in basis.iter().enumerate() {
            prop_assert!(inner(psi.ket(), q.ket()).unwrap().norm() < 1e-12);
            for (j, r) in basis.iter().enumerate() {
                let expected = if i == j { 1.0 } else { 0.0 };
                prop_assert!((inner(q.ket(), r.ket()).unwrap() - expected).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn every_family_holds((dim, seed) in instance()) {
        let inst = random_instance(dim, seed).unwrap();
        let stats = PairStats::new(&inst.a, &inst.b, &inst.psi).unwrap();
        for family in Family::ALL {
            let report = stats.report(family, Some(&inst.psi_perp), None).unwrap();
            prop_assert!(report.satisfied, "{} slack {}", family, report.slack);
        }
    }

    #[test]
    fn perp_phase_does_not_matter((dim, seed) in instance(), phi in 0.0..std::f64::consts::TAU) {
        let inst = random_instance(dim, seed).unwrap();
        let stats = PairStats::new(&inst.a, &inst.b, &inst.psi).unwrap();
        let rotated = inst.psi_perp.with_phase(phi);
        for family in Family::ALL {
            let base = stats.report(family, Some(&inst.psi_perp), None).unwrap();
            let turned = stats.report(family, Some(&rotated), None).unwrap();
            let tol = 1e-10 * base.scale();
            prop_assert!((base.rhs - turned.rhs).abs() <= tol, "{}", family);
            prop_assert!((base.lhs - turned.lhs).abs() <= tol, "{}", family);
        }
    }

    #[test]
    fn scaling_operators_scales_bounds((dim, seed) in instance(), c in 0.2..5.0f64) {
        let inst = random_instance(dim, seed).unwrap();
        let (sa, sb) = (inst.a.scaled(c), inst.b.scaled(c));
        let base = PairStats::new(&inst.a, &inst.b, &inst.psi).unwrap();
        let scaled = PairStats::new(&sa, &sb, &inst.psi).unwrap();
        for family in Family::ALL {
            let r0 = base.report(family, Some(&inst.psi_perp), None).unwrap();
            let r1 = scaled.report(family, Some(&inst.psi_perp), None).unwrap();
            // sums scale as c², products as c⁴
            let factor = if family.is_product() { c.powi(4) } else { c * c };
            let tol = 1e-9 * r1.scale();
            prop_assert!((r1.rhs - factor * r0.rhs).abs() <= tol, "{} rhs", family);
            prop_assert!((r1.lhs - factor * r0.lhs).abs() <= tol, "{} lhs", family);
        }
    }

    #[test]
    fn state_phase_does_not_matter((dim, seed) in instance(), phi in 0.0..std::f64::consts::TAU) {
        let inst = random_instance(dim, seed).unwrap();
        let psi: StateVector = inst.psi.with_phase(phi);
        let base = PairStats::new(&inst.a, &inst.b, &inst.psi).unwrap();
        let turned = PairStats::new(&inst.a, &inst.b, &psi).unwrap();
        for family in Family::ALL {
            let r0 = base.report(family, Some(&inst.psi_perp), None).unwrap();
            let r1 = turned.report(family, Some(&inst.psi_perp), None).unwrap();
            prop_assert!((r0.rhs - r1.rhs).abs() <= 1e-10 * r0.scale(), "{}", family);
        }
    }
}
