// Lives in its own test binary: the cap is process-global.
use dihom_core::exactlin::{set_max_matrix_dim, smith_normal_form, DEFAULT_MAX_MATRIX_DIM};
use dihom_core::homology::chain_complex;
use dihom_core::{corpus, CoefficientRing, Error, Matrix};

#[test]
fn oversized_inputs_are_rejected() {
    let z = CoefficientRing::Integers;
    set_max_matrix_dim(3);
    assert!(matches!(
        smith_normal_form(&Matrix::zeros(z, 4, 2)),
        Err(Error::MatrixTooLarge { dim: 4, cap: 3 })
    ));
    assert!(smith_normal_form(&Matrix::zeros(z, 3, 3)).is_ok());
    let cx = chain_complex(&corpus::square(2), z).unwrap();
    assert!(matches!(
        dihom_core::homology::homology(&cx, 0),
        Err(Error::MatrixTooLarge { .. })
    ));
    set_max_matrix_dim(DEFAULT_MAX_MATRIX_DIM);
    assert!(dihom_core::homology::homology(&cx, 0).is_ok());
}
