//! Small dense symmetric linear algebra helpers.
//!
//! Every matrix inverted in this crate is a (theoretically) symmetric
//! positive-definite information matrix of side at most `4(K+1)`. Inversion
//! goes through a symmetric eigendecomposition so a condition-number estimate
//! falls out for free; ill-conditioned inputs are rejected rather than
//! silently pseudo-inverted, because a singular information matrix is itself
//! a meaningful signal (the unstable-estimation regime).

use nalgebra::DMatrix;

use crate::error::{DaisError, Result};

/// Condition-number gate for information-matrix inverses.
pub const MAX_CONDITION: f64 = 1e12;

/// Force exact symmetry by averaging with the transpose.
pub fn symmetrize(m: &DMatrix<f64>) -> DMatrix<f64> {
    0.5 * (m + m.transpose())
}

/// Eigenvalues of a symmetric matrix, ascending.
pub fn sym_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    let mut ev: Vec<f64> = symmetrize(m)
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ev
}

/// Outcome of a gated symmetric inversion.
pub struct SymInverse {
    pub inverse: DMatrix<f64>,
    /// `λ_max / λ_min` estimate from the eigendecomposition.
    pub condition: f64,
}

/// Invert a symmetric positive-definite matrix, failing when the spectrum
/// indicates the inverse is meaningless.
///
/// `what` names the matrix in the error for diagnosis.
pub fn sym_inverse(m: &DMatrix<f64>, what: &'static str) -> Result<SymInverse> {
    let sym = symmetrize(m);
    let eig = sym.symmetric_eigen();
    let lambda_max = eig.eigenvalues.iter().cloned().fold(f64::MIN, f64::max);
    let lambda_min = eig.eigenvalues.iter().cloned().fold(f64::MAX, f64::min);
    let condition = if lambda_min > 0.0 {
        lambda_max / lambda_min
    } else {
        f64::INFINITY
    };
    if !(lambda_min > 0.0) || condition > MAX_CONDITION || !condition.is_finite() {
        return Err(DaisError::SingularMatrix { what, cond: condition });
    }
    let n = sym.nrows();
    let mut scaled = eig.eigenvectors.clone();
    for j in 0..n {
        let inv_l = 1.0 / eig.eigenvalues[j];
        for i in 0..n {
            scaled[(i, j)] *= inv_l;
        }
    }
    let inverse = symmetrize(&(scaled * eig.eigenvectors.transpose()));
    Ok(SymInverse { inverse, condition })
}

/// Schur complement of the trailing block: for `m = [[a, b], [c, d]]` split
/// at row/column `split`, returns `a - b d⁻¹ c`.
pub fn schur_complement(m: &DMatrix<f64>, split: usize, what: &'static str) -> Result<DMatrix<f64>> {
    let n = m.nrows();
    assert!(split < n && m.is_square(), "bad schur split");
    let a = m.view((0, 0), (split, split));
    let b = m.view((0, split), (split, n - split));
    let c = m.view((split, 0), (n - split, split));
    let d = m.view((split, split), (n - split, n - split)).into_owned();

    let d_inv = sym_inverse(&d, what).map_err(|e| match e {
        DaisError::SingularMatrix { cond, .. } => DaisError::SingularNuisance { block: what, cond },
        other => other,
    })?;
    Ok(symmetrize(&(a - b * d_inv.inverse * c)))
}

/// Smallest eigenvalue of a symmetric matrix (for PSD checks).
pub fn min_eigenvalue(m: &DMatrix<f64>) -> f64 {
    sym_eigenvalues(m)[0]
}

/// Largest eigenvalue of a symmetric matrix.
pub fn max_eigenvalue(m: &DMatrix<f64>) -> f64 {
    *sym_eigenvalues(m).last().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverts_spd_matrix() {
        let m = DMatrix::from_row_slice(2, 2, &[4.0, 1.0, 1.0, 3.0]);
        let inv = sym_inverse(&m, "test").unwrap();
        let id = &m * &inv.inverse;
        assert!((id - DMatrix::identity(2, 2)).amax() < 1e-12);
        assert!(inv.condition > 1.0 && inv.condition < 10.0);
    }

    #[test]
    fn rejects_indefinite_matrix() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]);
        assert!(sym_inverse(&m, "test").is_err());
    }

    #[test]
    fn rejects_ill_conditioned_matrix() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 1e-14]);
        match sym_inverse(&m, "test") {
            Err(DaisError::SingularMatrix { cond, .. }) => assert!(cond > MAX_CONDITION),
            other => panic!("expected conditioning failure, got {other:?}"),
        }
    }

    #[test]
    fn schur_complement_matches_hand_value() {
        // [[4, 2], [2, 2]] with 1x1 blocks: 4 - 2 * (1/2) * 2 = 2.
        let m = DMatrix::from_row_slice(2, 2, &[4.0, 2.0, 2.0, 2.0]);
        let s = schur_complement(&m, 1, "gain block").unwrap();
        assert!((s[(0, 0)] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn schur_complement_zero_coupling_is_identity_on_head_block() {
        let m = DMatrix::from_row_slice(4, 4, &[
            3.0, 0.5, 0.0, 0.0, //
            0.5, 2.0, 0.0, 0.0, //
            0.0, 0.0, 5.0, 0.0, //
            0.0, 0.0, 0.0, 6.0,
        ]);
        let s = schur_complement(&m, 2, "gain block").unwrap();
        assert!((s - m.view((0, 0), (2, 2)).into_owned()).amax() < 1e-14);
    }

    #[test]
    fn schur_singular_tail_names_the_block() {
        let m = DMatrix::from_row_slice(2, 2, &[4.0, 2.0, 2.0, 0.0]);
        match schur_complement(&m, 1, "gain block") {
            Err(DaisError::SingularNuisance { block, .. }) => assert_eq!(block, "gain block"),
            other => panic!("expected singular nuisance, got {other:?}"),
        }
    }
}
