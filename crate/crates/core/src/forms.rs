//! Coxeter elements, the Euler form E_c and its antisymmetrization ω_c.

use std::cmp::Ordering;

use crate::coxeter::{CoxeterGroup, Reflection, Root};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::rank_two::RankTwoSubgroup;
use crate::scalar::Scalar;

/// A Coxeter element of W_J, given by an ordering of J.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoxeterElement {
    word: Vec<usize>,
    commute: Vec<Vec<bool>>,
}

impl CoxeterElement {
    /// A Coxeter element of the whole group: every generator exactly once.
    pub fn new<F: Scalar>(group: &CoxeterGroup<F>, word: Vec<usize>) -> Result<Self> {
        let n = group.rank();
        let mut sorted = word.clone();
        sorted.sort_unstable();
        if sorted != (0..n).collect::<Vec<_>>() {
            return Err(Error::InvalidCoxeterElement(format!(
                "{} does not use every generator exactly once",
                group.format_word(&word)
            )));
        }
        Ok(Self::over(group, word))
    }

    /// Parses "p,q,r" (or "pqr" when every generator name is one character).
    pub fn parse<F: Scalar>(group: &CoxeterGroup<F>, text: &str) -> Result<Self> {
        let word = if text.contains(',') || group.names().iter().any(|n| n.chars().count() != 1) {
            group.parse_word(text)?
        } else {
            group.parse_compact(text)?
        };
        Self::new(group, word)
    }

    fn over<F: Scalar>(group: &CoxeterGroup<F>, word: Vec<usize>) -> Self {
        let n = group.rank();
        let m = group.coxeter_matrix();
        let commute = (0..n)
            .map(|i| (0..n).map(|j| m.commute(i, j)).collect())
            .collect();
        CoxeterElement { word, commute }
    }

    /// A Coxeter element of a standard parabolic subgroup, given by a word
    /// using each of its generators once.
    pub fn parabolic<F: Scalar>(group: &CoxeterGroup<F>, word: Vec<usize>) -> Result<Self> {
        let mut sorted = word.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != word.len() || word.iter().any(|&s| s >= group.rank()) {
            return Err(Error::InvalidCoxeterElement(
                "repeated or unknown letter".into(),
            ));
        }
        Ok(Self::over(group, word))
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// Generators of the parabolic subgroup this element lives in, sorted.
    pub fn support(&self) -> Vec<usize> {
        let mut s = self.word.clone();
        s.sort_unstable();
        s
    }

    pub fn position(&self, s: usize) -> Option<usize> {
        self.word.iter().position(|&x| x == s)
    }

    /// s can be moved to the front by commutations.
    pub fn is_initial(&self, s: usize) -> bool {
        match self.position(s) {
            Some(i) => self.word[..i].iter().all(|&x| self.commute[x][s]),
            None => false,
        }
    }

    /// s can be moved to the back by commutations.
    pub fn is_final(&self, s: usize) -> bool {
        match self.position(s) {
            Some(i) => self.word[i + 1..].iter().all(|&x| self.commute[x][s]),
            None => false,
        }
    }

    pub fn initial_letters(&self) -> Vec<usize> {
        self.word
            .iter()
            .copied()
            .filter(|&s| self.is_initial(s))
            .collect()
    }

    pub fn final_letters(&self) -> Vec<usize> {
        self.word
            .iter()
            .copied()
            .filter(|&s| self.is_final(s))
            .collect()
    }

    /// Keeps only the letters in J.
    pub fn restrict(&self, j: &[usize]) -> Self {
        CoxeterElement {
            word: self
                .word
                .iter()
                .copied()
                .filter(|s| j.contains(s))
                .collect(),
            commute: self.commute.clone(),
        }
    }

    /// Deletes the letter s.
    pub fn without(&self, s: usize) -> Self {
        CoxeterElement {
            word: self.word.iter().copied().filter(|&x| x != s).collect(),
            commute: self.commute.clone(),
        }
    }

    /// scs for s initial: s moves from the front to the back.
    pub fn rotate_initial(&self, s: usize) -> Self {
        debug_assert!(self.is_initial(s));
        let mut word: Vec<usize> = self.word.iter().copied().filter(|&x| x != s).collect();
        word.push(s);
        CoxeterElement {
            word,
            commute: self.commute.clone(),
        }
    }

    /// scs for s final: s moves from the back to the front.
    pub fn rotate_final(&self, s: usize) -> Self {
        debug_assert!(self.is_final(s));
        let mut word = vec![s];
        word.extend(self.word.iter().copied().filter(|&x| x != s));
        CoxeterElement {
            word,
            commute: self.commute.clone(),
        }
    }

    /// Every word for the same element, i.e. every linear extension of the
    /// orientation this ordering puts on the Coxeter graph.
    pub fn commutation_class(&self) -> Vec<CoxeterElement> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        let mut remaining = self.clone();
        self.extend_class(&mut remaining, &mut current, &mut out);
        out
    }

    fn extend_class(
        &self,
        rest: &mut CoxeterElement,
        prefix: &mut Vec<usize>,
        out: &mut Vec<Self>,
    ) {
        if rest.is_empty() {
            out.push(CoxeterElement {
                word: prefix.clone(),
                commute: self.commute.clone(),
            });
            return;
        }
        for s in rest.initial_letters() {
            let mut next = rest.without(s);
            prefix.push(s);
            self.extend_class(&mut next, prefix, out);
            prefix.pop();
        }
    }
}

impl<F: Scalar> CoxeterGroup<F> {
    /// The matrix of c acting on root space.
    pub fn coxeter_element_matrix(&self, c: &CoxeterElement) -> Matrix<F> {
        self.from_word(c.word()).matrix().clone()
    }

    /// E_c(α_i^∨, α_j): a_ij if i comes after j in c, 1 if i = j, 0 otherwise.
    fn euler_entry(&self, c: &CoxeterElement, i: usize, j: usize) -> F {
        let (Some(pi), Some(pj)) = (c.position(i), c.position(j)) else {
            return F::zero();
        };
        match pi.cmp(&pj) {
            Ordering::Greater => self.cartan().entry(i, j).clone(),
            Ordering::Equal => F::one(),
            Ordering::Less => F::zero(),
        }
    }

    /// E_c(x, y) with x in coroot coordinates and y in root coordinates.
    pub fn euler_form(&self, c: &CoxeterElement, x: &[F], y: &Root<F>) -> F {
        let n = self.rank();
        let mut acc = F::zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y.coords[j].is_zero() {
                    continue;
                }
                let e = self.euler_entry(c, i, j);
                if !e.is_zero() {
                    acc = acc + x[i].clone() * y.coords[j].clone() * e;
                }
            }
        }
        acc
    }

    /// Coroot coordinates of a vector given in root coordinates.
    pub fn to_coroot_coordinates(&self, x: &Root<F>) -> Vec<F> {
        x.coords
            .iter()
            .zip(self.cartan().delta())
            .map(|(a, d)| a.clone() * d.clone())
            .collect()
    }

    /// E_c(x, y) with both arguments in root coordinates.
    pub fn euler_form_roots(&self, c: &CoxeterElement, x: &Root<F>, y: &Root<F>) -> F {
        self.euler_form(c, &self.to_coroot_coordinates(x), y)
    }

    /// ω_c(x, y) = E_c(x, y) − E_c(y, x).
    pub fn omega(&self, c: &CoxeterElement, x: &Root<F>, y: &Root<F>) -> F {
        self.euler_form_roots(c, x, y) - self.euler_form_roots(c, y, x)
    }

    /// Checks that ω_c(β_{t_i}, β_{t_j}) ≥ 0 for i ≤ j along the reflection
    /// sequence of `word`, strictly unless t_i and t_j commute.
    pub fn compatible_reflection_sequence(
        &self,
        c: &CoxeterElement,
        word: &[usize],
    ) -> Result<bool> {
        if !self.is_reduced(word) {
            return Err(Error::NotReduced);
        }
        let roots = self.reflection_sequence(word);
        for i in 0..roots.len() {
            for j in i + 1..roots.len() {
                let w = self.omega(c, &roots[i], &roots[j]);
                if w.is_negative() {
                    return Ok(false);
                }
                if w.is_zero() && !self.form(&roots[i], &roots[j]).is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Orders the canonical generators so that ω_c(β_r1, β_r2) ≥ 0.
    pub fn orient_rank_two(
        &self,
        c: &CoxeterElement,
        sub: &RankTwoSubgroup<F>,
    ) -> RankTwoSubgroup<F> {
        if self.omega(c, sub.r1.root(), sub.r2.root()).is_negative() {
            sub.reversed()
        } else {
            sub.clone()
        }
    }

    /// The vector ζ_c spanning the (−1)-eigenspace of c in rank 3.
    ///
    /// The first nonzero coordinate is ±1, with the sign chosen so that
    /// ω_c(α_s, α_s') and det[α_s | α_s' | ζ_c] agree for the first pair of
    /// noncommuting simple generators.
    pub fn zeta(&self, c: &CoxeterElement) -> Result<Root<F>> {
        let n = self.rank();
        if n != 3 {
            return Err(Error::RankNotThree(n));
        }
        let m = self.coxeter_element_matrix(c).add(&Matrix::identity(n));
        let kernel = linalg::nullspace(&m.rows(), n);
        let mut z = match kernel.len() {
            1 => kernel.into_iter().next().unwrap(),
            _ => {
                // ω_c(x, y) = det[x | y | z] for z = (ω₂₃, ω₃₁, ω₁₂).
                let a = |i| self.simple_root(i);
                let dual = vec![
                    self.omega(c, &a(1), &a(2)),
                    self.omega(c, &a(2), &a(0)),
                    self.omega(c, &a(0), &a(1)),
                ];
                if dual.iter().all(|x| x.is_zero()) {
                    kernel
                        .into_iter()
                        .next()
                        .ok_or_else(|| Error::Inconsistent("c has no (−1)-eigenvector".into()))?
                } else {
                    dual
                }
            }
        };
        let lead = z
            .iter()
            .find(|x| !x.is_zero())
            .cloned()
            .expect("nonzero kernel vector");
        z = linalg::scale(&z, &(F::one() / lead));
        let zeta = Root::new(z);
        for i in 0..n {
            for j in i + 1..n {
                if self.coxeter_matrix().commute(i, j) {
                    continue;
                }
                let w = self
                    .omega(c, &self.simple_root(i), &self.simple_root(j))
                    .sign();
                let d = self
                    .volume(&self.simple_root(i), &self.simple_root(j), &zeta)
                    .sign();
                return Ok(if w == d || w == Ordering::Equal {
                    zeta
                } else {
                    zeta.neg()
                });
            }
        }
        Ok(zeta)
    }

    /// det[x | y | z] in the simple-root basis.
    pub fn volume(&self, x: &Root<F>, y: &Root<F>, z: &Root<F>) -> F {
        let rows = (0..3)
            .map(|i| {
                vec![
                    x.coords[i].clone(),
                    y.coords[i].clone(),
                    z.coords[i].clone(),
                ]
            })
            .collect();
        linalg::determinant(rows)
    }

    /// Whether ω_c vanishes on the pair of reflections.
    pub fn omega_reflections(&self, c: &CoxeterElement, t: &Reflection<F>, u: &Reflection<F>) -> F {
        self.omega(c, t.root(), u.root())
    }
}
