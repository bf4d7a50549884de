//! Coxeter matrices, generalized Cartan matrices and symmetrizing weights.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{CartanCondition, Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// An entry m(s,s') of a Coxeter matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    Finite(u32),
    Infinite,
}

impl Label {
    pub fn is_odd(self) -> bool {
        matches!(self, Label::Finite(m) if m % 2 == 1)
    }

    /// Encodes ∞ as 0, as in group files.
    pub fn from_code(code: u32) -> Label {
        if code == 0 {
            Label::Infinite
        } else {
            Label::Finite(code)
        }
    }

    pub fn code(self) -> u32 {
        match self {
            Label::Finite(m) => m,
            Label::Infinite => 0,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Finite(m) => write!(f, "{m}"),
            Label::Infinite => f.write_str("∞"),
        }
    }
}

/// Generator names together with the symmetric table of labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterMatrix {
    names: Vec<String>,
    m: Vec<Vec<Label>>,
}

impl CoxeterMatrix {
    pub fn new(names: Vec<String>, m: Vec<Vec<Label>>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::InvalidCoxeterMatrix("no generators".into()));
        }
        if m.len() != n || m.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidCoxeterMatrix(format!(
                "table must be {n}×{n}"
            )));
        }
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || name.contains(',') {
                return Err(Error::InvalidCoxeterMatrix(format!(
                    "bad generator name {name:?}"
                )));
            }
            if names[..i].contains(name) {
                return Err(Error::InvalidCoxeterMatrix(format!(
                    "duplicate generator {name}"
                )));
            }
        }
        for i in 0..n {
            if m[i][i] != Label::Finite(1) {
                return Err(Error::InvalidCoxeterMatrix(format!(
                    "diagonal entry at {} must be 1",
                    names[i]
                )));
            }
            for j in 0..n {
                if m[i][j] != m[j][i] {
                    return Err(Error::InvalidCoxeterMatrix("table is not symmetric".into()));
                }
                if i != j && matches!(m[i][j], Label::Finite(x) if x < 2) {
                    return Err(Error::InvalidCoxeterMatrix(format!(
                        "off-diagonal entry at ({}, {}) must be at least 2",
                        names[i], names[j]
                    )));
                }
            }
        }
        Ok(CoxeterMatrix { names, m })
    }

    /// Builds a matrix from integer codes, 0 meaning ∞.
    pub fn from_codes(names: &[&str], codes: &[&[u32]]) -> Result<Self> {
        let m = codes
            .iter()
            .map(|row| row.iter().map(|&c| Label::from_code(c)).collect())
            .collect();
        Self::new(names.iter().map(|s| s.to_string()).collect(), m)
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn label(&self, i: usize, j: usize) -> Label {
        self.m[i][j]
    }

    pub fn commute(&self, i: usize, j: usize) -> bool {
        i == j || self.m[i][j] == Label::Finite(2)
    }
}

/// Connected components of the graph whose edges join generators with an odd
/// label. Two simple generators are conjugate exactly when they share a class.
pub fn simple_conjugacy_classes(m: &CoxeterMatrix) -> Vec<Vec<usize>> {
    components(m.rank(), |i, j| m.label(i, j).is_odd())
}

fn components(n: usize, edge: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if !seen[j] && i != j && edge(i, j) {
                    seen[j] = true;
                    comp.push(j);
                    queue.push_back(j);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// The exact value of 4cos²(π/m), when it lies in a quadratic field.
pub fn four_cos_squared<F: Scalar>(m: u32) -> Option<F> {
    let q = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
    match m {
        2 => Some(F::zero()),
        3 => Some(F::one()),
        4 => Some(F::from_int(2)),
        6 => Some(F::from_int(3)),
        5 => F::from_quadratic(q(3, 2), q(1, 2), 5),
        8 => F::from_quadratic(q(2, 1), q(1, 1), 2),
        10 => F::from_quadratic(q(5, 2), q(1, 2), 5),
        12 => F::from_quadratic(q(2, 1), q(1, 1), 3),
        _ => None,
    }
}

/// A validated, symmetrizable generalized Cartan matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanData<F> {
    a: Matrix<F>,
    delta: Vec<F>,
    coxeter: CoxeterMatrix,
}

impl<F: Scalar> CartanData<F> {
    pub fn a(&self) -> &Matrix<F> {
        &self.a
    }

    pub fn entry(&self, i: usize, j: usize) -> &F {
        self.a.get(i, j)
    }

    pub fn delta(&self) -> &[F] {
        &self.delta
    }

    pub fn coxeter(&self) -> &CoxeterMatrix {
        &self.coxeter
    }

    pub fn rank(&self) -> usize {
        self.coxeter.rank()
    }

    /// The square-free d of the coefficient field.
    pub fn field_d(&self) -> u64 {
        field_of(self.a.rows().iter().flatten().chain(&self.delta)).unwrap_or(1)
    }

    /// K(α_i, α_j) = δ(i)·a_ij.
    pub fn form_entry(&self, i: usize, j: usize) -> F {
        self.delta[i].clone() * self.a.get(i, j).clone()
    }
}

fn field_of<'a, F: Scalar>(values: impl IntoIterator<Item = &'a F>) -> Option<u64> {
    let mut d = None;
    for v in values {
        let vd = v.field_d();
        if vd != 1 {
            match d {
                None => d = Some(vd),
                Some(x) if x != vd => return Some(0),
                _ => {}
            }
        }
    }
    d
}

fn check_entries<F: Scalar>(a: &Matrix<F>, m: &CoxeterMatrix) -> Result<()> {
    let n = m.rank();
    if a.size() != n {
        return Err(Error::InvalidCoxeterMatrix(format!(
            "Cartan matrix has size {}, Coxeter matrix has rank {n}",
            a.size()
        )));
    }
    if field_of(a.rows().iter().flatten()) == Some(0) {
        return Err(Error::MixedFields);
    }
    let names = m.names();
    let fail = |condition, i: usize, j: usize| Error::NotCartan {
        condition,
        row: names[i].clone(),
        col: names[j].clone(),
    };
    for i in 0..n {
        if *a.get(i, i) != F::from_int(2) {
            return Err(fail(CartanCondition::Diagonal, i, i));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let (aij, aji) = (a.get(i, j), a.get(j, i));
            if aij.is_zero() != aji.is_zero() {
                return Err(fail(CartanCondition::ZeroPattern, i, j));
            }
            if aij.is_positive() {
                return Err(fail(CartanCondition::Products, i, j));
            }
            let product = aij.clone() * aji.clone();
            let ok = match m.label(i, j) {
                Label::Infinite => product >= F::from_int(4),
                Label::Finite(k) => four_cos_squared::<F>(k).is_some_and(|v| v == product),
            };
            if !ok {
                return Err(fail(CartanCondition::Products, i, j));
            }
        }
    }
    Ok(())
}

fn check_odd_edges<F: Scalar>(delta: &[F], m: &CoxeterMatrix) -> Result<()> {
    let n = m.rank();
    for i in 0..n {
        for j in i + 1..n {
            if m.label(i, j).is_odd() && delta[i] != delta[j] {
                let names = m.names();
                return Err(Error::DeltaConflict(names[i].clone(), names[j].clone()));
            }
        }
    }
    Ok(())
}

/// Validates `a` against `m` and computes symmetrizing weights.
///
/// δ is fixed up to one scale per connected component of the Coxeter graph;
/// it is normalized to 1 on the first generator of each component.
pub fn validate_cartan<F: Scalar>(a: Matrix<F>, m: CoxeterMatrix) -> Result<CartanData<F>> {
    check_entries(&a, &m)?;
    let n = m.rank();
    let mut delta: Vec<Option<F>> = vec![None; n];
    for comp in components(n, |i, j| !a.get(i, j).is_zero()) {
        let root = comp[0];
        delta[root] = Some(F::one());
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            let di = delta[i].clone().expect("visited");
            for j in 0..n {
                if i == j || a.get(i, j).is_zero() {
                    continue;
                }
                let forced = di.clone() * a.get(i, j).clone() / a.get(j, i).clone();
                match &delta[j] {
                    None => {
                        delta[j] = Some(forced);
                        queue.push_back(j);
                    }
                    Some(dj) if *dj != forced => return Err(Error::NotSymmetrizable),
                    Some(_) => {}
                }
            }
        }
    }
    let delta: Vec<F> = delta.into_iter().map(|d| d.expect("all visited")).collect();
    check_odd_edges(&delta, &m)?;
    Ok(CartanData {
        a,
        delta,
        coxeter: m,
    })
}

/// Validates `a` against `m` with caller-chosen symmetrizing weights.
pub fn validate_cartan_with_delta<F: Scalar>(
    a: Matrix<F>,
    m: CoxeterMatrix,
    delta: Vec<F>,
) -> Result<CartanData<F>> {
    check_entries(&a, &m)?;
    let n = m.rank();
    if delta.len() != n || delta.iter().any(|d| !d.is_positive()) {
        return Err(Error::NotSymmetrizable);
    }
    for i in 0..n {
        for j in 0..n {
            if delta[i].clone() * a.get(i, j).clone() != delta[j].clone() * a.get(j, i).clone() {
                return Err(Error::NotSymmetrizable);
            }
        }
    }
    check_odd_edges(&delta, &m)?;
    Ok(CartanData {
        a,
        delta,
        coxeter: m,
    })
}

/// The default Cartan matrix for `m`.
///
/// For s before s' in generator order the pair (a_ss', a_s's) is (0,0), (−1,−1),
/// (−1,−2), (−1,−3) or (−2,−2) for labels 2, 3, 4, 6 and ∞. Label 5 uses the
/// symmetric golden pair a_ss' = a_s's = −(1+√5)/2, which needs a field
/// containing √5.
pub fn standard_crystallographic_cartan<F: Scalar>(m: &CoxeterMatrix) -> Result<CartanData<F>> {
    let n = m.rank();
    let mut a = Matrix::identity(n);
    for i in 0..n {
        a.set(i, i, F::from_int(2));
        for j in i + 1..n {
            let (x, y): (F, F) = match m.label(i, j) {
                Label::Finite(2) => (F::zero(), F::zero()),
                Label::Finite(3) => (F::from_int(-1), F::from_int(-1)),
                Label::Finite(4) => (F::from_int(-1), F::from_int(-2)),
                Label::Finite(6) => (F::from_int(-1), F::from_int(-3)),
                Label::Infinite => (F::from_int(-2), F::from_int(-2)),
                Label::Finite(5) => {
                    let phi = F::from_quadratic(
                        BigRational::new(BigInt::from(1), BigInt::from(2)),
                        BigRational::new(BigInt::from(1), BigInt::from(2)),
                        5,
                    )
                    .ok_or(Error::UnsupportedLabel(5))?;
                    (-phi.clone(), -phi)
                }
                Label::Finite(k) => return Err(Error::UnsupportedLabel(k)),
            };
            a.set(i, j, x);
            a.set(j, i, y);
        }
    }
    validate_cartan(a, m.clone())
}
