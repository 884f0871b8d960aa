mod common;

use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;

use common::*;
use cusphere::closed_form::{embed_complex, group_matrix, group_matrix_ce, group_matrix_u3};
use cusphere::dynamics::{rotate, SixVector};
use cusphere::generators::{Angles, ScaleParams};
use cusphere::group::{enumerate_group, identify, multiply, SignedElement};
use cusphere::numerics::{det, residual_orthogonal, residual_unitary, ComplexMatrix};

fn angle() -> impl Strategy<Value = f64> {
    -PI..PI
}

fn cz(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closed_form_matches_taylor_oracle(x in angle(), y in angle(), z in angle()) {
        let g = group_matrix(&Angles::new(x, y, z));
        prop_assert!(max_diff(&g, &expm_taylor(&generator_real(x, y, z))) <= 1e-10);
    }

    #[test]
    fn near_equal_angles_stay_accurate(t in angle(), dx in -1e-5..1e-5f64, dy in -1e-5..1e-5f64) {
        let (x, y, z) = (t + dx, t + dy, t);
        let g = group_matrix(&Angles::new(x, y, z));
        prop_assert!(max_diff(&g, &expm_taylor(&generator_real(x, y, z))) <= 1e-10);
    }

    #[test]
    fn complex_angles_match_oracle(
        x in angle(), y in angle(), z in angle(),
        xi in -1.0..1.0f64, yi in -1.0..1.0f64, zi in -1.0..1.0f64,
    ) {
        let a = Angles::new(cz(x, xi), cz(y, yi), cz(z, zi));
        let oracle = expm_taylor(&generator(a.x, a.y, a.z, 0.0, 0.0));
        let g = group_matrix(&a);
        let scale = oracle.iter().flatten().map(|v| v.norm()).fold(1.0, f64::max);
        prop_assert!(max_diff(&g, &oracle) <= 1e-10 * scale);
        // complex orthogonality uses the plain transpose
        prop_assert!(residual_orthogonal(&g) <= 1e-9 * scale * scale);
    }

    #[test]
    fn inverse_is_negated_angles(x in angle(), y in angle(), z in angle()) {
        let g = group_matrix(&Angles::new(x, y, z));
        let h = group_matrix(&Angles::new(-x, -y, -z));
        prop_assert!((&g * &h).max_abs_diff(&cusphere::Matrix::identity(6)) <= 1e-12);
        prop_assert!(g.transpose().max_abs_diff(&h) <= 1e-12);
    }

    #[test]
    fn special_orthogonal(x in angle(), y in angle(), z in angle()) {
        let g = group_matrix(&Angles::new(x, y, z));
        prop_assert!(residual_orthogonal(&g) <= 1e-12);
        prop_assert!((det(&g) - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn u3_matches_oracle_and_embeds(x in angle(), y in angle(), z in angle()) {
        let a = Angles::new(x, y, z);
        let u = group_matrix_u3(&a);
        let oracle = expm_taylor(&u3_generator(x, y, z));
        prop_assert!(max_diff(&u, &oracle) <= 1e-10);
        prop_assert!(residual_unitary(&u) <= 1e-12);
        prop_assert!((det(&u) - cz(0.0, x + y + z).exp()).norm() <= 1e-12);
        prop_assert!(embed_complex(&u).max_abs_diff(&group_matrix(&a)) <= 1e-10);
        prop_assert!(u.max_abs_diff(&u.transpose()) == 0.0);
    }

    #[test]
    fn scaled_generator_matches_oracle(
        x in angle(), y in angle(), z in angle(),
        c in -1.0..1.0f64, e in -1.0..1.0f64,
    ) {
        let g = group_matrix_ce(&Angles::new(x, y, z), &ScaleParams::new(c, e)).unwrap();
        let oracle = expm_taylor(&generator(cz(x, 0.0), cz(y, 0.0), cz(z, 0.0), c, e));
        prop_assert!(max_diff(&g, &oracle) <= 1e-10);
        prop_assert!((det(&g) - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn opposite_scales_preserve_norm(x in angle(), y in angle(), z in angle(), c in -1.0..1.0f64) {
        let g = group_matrix_ce(&Angles::new(x, y, z), &ScaleParams::new(c, -c)).unwrap();
        prop_assert!(residual_orthogonal(&g) <= 1e-10);
    }

    #[test]
    fn rotation_is_row_action(
        x in angle(), y in angle(), z in angle(),
        v in prop::array::uniform6(-1.0..1.0f64),
    ) {
        let g = group_matrix(&Angles::new(x, y, z));
        let lib = rotate(&SixVector(v), &g);
        let oracle_g = expm_taylor(&generator_real(x, y, z));
        let vc: Vec<Complex64> = v.iter().map(|&r| cz(r, 0.0)).collect();
        let oracle = row_apply(&vc, &oracle_g);
        for (a, b) in lib.0.iter().zip(&oracle) {
            prop_assert!((a - b.re).abs() <= 1e-10);
        }
        prop_assert!((lib.norm() - SixVector(v).norm()).abs() <= 1e-12);
    }

    #[test]
    fn group_products_agree_with_matrices(i in 0usize..12, j in 0usize..12) {
        let all: Vec<SignedElement> = SignedElement::all().collect();
        let (p, q) = (all[i], all[j]);
        prop_assert_eq!(identify(&(p.matrix() * q.matrix())), Ok(multiply(p, q)));
    }
}

#[test]
fn group_has_twelve_elements() {
    let g = enumerate_group();
    assert_eq!(g.len(), 12);
    for token in CAYLEY.iter().flatten() {
        let m = token_matrix(token);
        assert!(g.iter().any(|e| e.matrix().0 == m), "{token}");
    }
}

#[test]
fn embedding_of_identity_is_identity() {
    let e = embed_complex(&ComplexMatrix::identity(3));
    assert_eq!(e, cusphere::Matrix::identity(6));
}
