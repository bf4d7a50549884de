//! The small groups used throughout the tests, examples and sample files.

use crate::cartan::{self, CoxeterMatrix};
use crate::coxeter::CoxeterGroup;
use crate::error::Result;
use crate::linalg::Matrix;
use crate::scalar::{ratio, Scalar};

const LETTERS: [&str; 8] = ["p", "q", "r", "s", "t", "u", "v", "x"];

/// A group with the default Cartan matrix for its Coxeter matrix
/// (0 encodes ∞).
pub fn from_codes<F: Scalar>(names: &[&str], codes: &[&[u32]]) -> Result<CoxeterGroup<F>> {
    let m = CoxeterMatrix::from_codes(names, codes)?;
    Ok(CoxeterGroup::new(cartan::standard_crystallographic_cartan(
        &m,
    )?))
}

fn path_codes(labels: &[u32]) -> Vec<Vec<u32>> {
    let n = labels.len() + 1;
    let mut m = vec![vec![2; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    for (i, &l) in labels.iter().enumerate() {
        m[i][i + 1] = l;
        m[i + 1][i] = l;
    }
    m
}

fn from_path<F: Scalar>(names: &[&str], labels: &[u32]) -> Result<CoxeterGroup<F>> {
    let codes = path_codes(labels);
    let rows: Vec<&[u32]> = codes.iter().map(Vec::as_slice).collect();
    from_codes(names, &rows)
}

/// A_n on generators p, q, r, … (n ≤ 8).
pub fn type_a<F: Scalar>(n: usize) -> Result<CoxeterGroup<F>> {
    from_path(&LETTERS[..n], &vec![3; n.saturating_sub(1)])
}

/// B₂ on p, q with the Cartan matrix [[2, −2], [−1, 2]] and δ = (1/2, 1).
pub fn type_b2<F: Scalar>() -> Result<CoxeterGroup<F>> {
    let m = CoxeterMatrix::from_codes(&["p", "q"], &[&[1, 4], &[4, 1]])?;
    let a = Matrix::from_rows(vec![
        vec![F::from_int(2), F::from_int(-2)],
        vec![F::from_int(-1), F::from_int(2)],
    ]);
    let data = cartan::validate_cartan_with_delta(a, m, vec![ratio(1, 2), F::one()])?;
    Ok(CoxeterGroup::new(data))
}

/// B₃ on r, s, t with m(r,s) = 4, m(s,t) = 3.
pub fn type_b3<F: Scalar>() -> Result<CoxeterGroup<F>> {
    from_path(&["r", "s", "t"], &[4, 3])
}

/// Ã₂ on p, q, r: every label 3.
pub fn affine_a2<F: Scalar>() -> Result<CoxeterGroup<F>> {
    from_codes(&["p", "q", "r"], &[&[1, 3, 3], &[3, 1, 3], &[3, 3, 1]])
}

/// G̃₂ on r, s, t with m(r,s) = 6, m(s,t) = 3.
pub fn affine_g2<F: Scalar>() -> Result<CoxeterGroup<F>> {
    from_path(&["r", "s", "t"], &[6, 3])
}

/// The hyperbolic group on r, s, t with m(r,s) = 5, m(s,t) = 4, m(r,t) = 2.
/// Needs a field containing √5.
pub fn hyperbolic_542<F: Scalar>() -> Result<CoxeterGroup<F>> {
    from_path(&["r", "s", "t"], &[5, 4])
}
