//! The right weak order: comparisons, intervals, meets, bounded joins and
//! canonical join representations.

use std::collections::HashSet;

use crate::coxeter::{CoxeterGroup, GroupElement, Reflection};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A set of pairwise incomparable elements, shortlex sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Antichain<F> {
    pub elements: Vec<GroupElement<F>>,
}

/// Outcome of a bounded join search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JoinSearch<F> {
    Found(GroupElement<F>),
    Undetermined,
}

impl<F: Scalar> CoxeterGroup<F> {
    /// x ≤ y, i.e. inv(x) ⊆ inv(y).
    pub fn leq(&self, x: &GroupElement<F>, y: &GroupElement<F>) -> bool {
        if x.length() > y.length() {
            return false;
        }
        x.inversion_roots()
            .iter()
            .all(|beta| y.has_inversion(&Reflection::from_root(beta)))
    }

    /// Every element below `w`, shortlex sorted.
    pub fn interval_below(&self, w: &GroupElement<F>) -> Vec<GroupElement<F>> {
        let mut seen: HashSet<GroupElement<F>> = HashSet::from([w.clone()]);
        let mut layer = vec![w.clone()];
        while !layer.is_empty() {
            let mut next = Vec::new();
            for g in &layer {
                for s in g.right_descents() {
                    let h = self.mul_gen_right(g, s);
                    if seen.insert(h.clone()) {
                        next.push(h);
                    }
                }
            }
            layer = next;
        }
        let mut out: Vec<_> = seen.into_iter().collect();
        out.sort();
        out
    }

    /// The unique maximal element of `candidates`, which must contain one.
    fn maximum(&self, candidates: &[GroupElement<F>]) -> Option<GroupElement<F>> {
        let top = candidates.iter().max_by_key(|g| g.length())?;
        candidates
            .iter()
            .all(|g| self.leq(g, top))
            .then(|| top.clone())
    }

    fn minimum(&self, candidates: &[GroupElement<F>]) -> Option<GroupElement<F>> {
        let bottom = candidates.iter().min_by_key(|g| g.length())?;
        candidates
            .iter()
            .all(|g| self.leq(bottom, g))
            .then(|| bottom.clone())
    }

    /// x ∧ y.
    pub fn meet(&self, x: &GroupElement<F>, y: &GroupElement<F>) -> GroupElement<F> {
        let (short, long) = if x.length() <= y.length() {
            (x, y)
        } else {
            (y, x)
        };
        if self.leq(short, long) {
            return short.clone();
        }
        let common: Vec<_> = self
            .interval_below(short)
            .into_iter()
            .filter(|g| self.leq(g, long))
            .collect();
        self.maximum(&common)
            .expect("the weak order is a meet-semilattice")
    }

    /// The meet of a nonempty set.
    pub fn meet_all(&self, xs: &[GroupElement<F>]) -> GroupElement<F> {
        let mut it = xs.iter();
        let first = it.next().expect("meet of an empty set").clone();
        it.fold(first, |acc, x| self.meet(&acc, x))
    }

    /// The least upper bound of `xs` among elements of [e, bound].
    ///
    /// This is the join of `xs` whenever that join exists and lies below
    /// `bound`.
    pub fn join_bounded(
        &self,
        xs: &[GroupElement<F>],
        bound: &GroupElement<F>,
    ) -> Result<GroupElement<F>> {
        if xs.iter().any(|x| !self.leq(x, bound)) {
            return Err(Error::NoUpperBoundInInterval);
        }
        let uppers: Vec<_> = self
            .interval_below(bound)
            .into_iter()
            .filter(|g| xs.iter().all(|x| self.leq(x, g)))
            .collect();
        self.minimum(&uppers).ok_or(Error::NoUpperBoundInInterval)
    }

    /// Searches for a common upper bound of length at most `max_length` and
    /// returns the join certified by the shortest one found.
    pub fn join_exists_search(&self, xs: &[GroupElement<F>], max_length: usize) -> JoinSearch<F> {
        let Some(start) = xs.iter().max_by_key(|g| g.length()) else {
            return JoinSearch::Found(self.identity());
        };
        let mut seen: HashSet<GroupElement<F>> = HashSet::from([start.clone()]);
        let mut layer = vec![start.clone()];
        let mut len = start.length();
        loop {
            if let Some(bound) = layer.iter().find(|g| xs.iter().all(|x| self.leq(x, g))) {
                return match self.join_bounded(xs, bound) {
                    Ok(j) => JoinSearch::Found(j),
                    Err(_) => JoinSearch::Undetermined,
                };
            }
            if len >= max_length {
                return JoinSearch::Undetermined;
            }
            let mut next = Vec::new();
            for g in &layer {
                for s in 0..self.rank() {
                    if g.has_right_descent(s) {
                        continue;
                    }
                    let h = self.mul_gen_right(g, s);
                    if seen.insert(h.clone()) {
                        next.push(h);
                    }
                }
            }
            next.sort();
            layer = next;
            len += 1;
        }
    }

    /// j(w,t): the minimum of {v ≤ w : t ∈ inv(v)} for t ∈ cov(w).
    pub fn lower_join_witness(&self, w: &GroupElement<F>, t: &Reflection<F>) -> GroupElement<F> {
        let candidates: Vec<_> = self
            .interval_below(w)
            .into_iter()
            .filter(|v| v.has_inversion(t))
            .collect();
        self.minimum(&candidates)
            .expect("elements below w containing a cover reflection form an interval")
    }

    /// {j(w,t) : t ∈ cov(w)}.
    pub fn canonical_join_representation(&self, w: &GroupElement<F>) -> Antichain<F> {
        let mut elements: Vec<_> = self
            .cover_reflections(w)
            .iter()
            .map(|t| self.lower_join_witness(w, t))
            .collect();
        elements.sort();
        Antichain { elements }
    }

    pub fn is_join_irreducible(&self, w: &GroupElement<F>) -> bool {
        w.right_descents().len() == 1
    }

    /// Whether `xs` is pairwise incomparable.
    pub fn is_antichain(&self, xs: &[GroupElement<F>]) -> bool {
        xs.iter().enumerate().all(|(i, x)| {
            xs.iter()
                .enumerate()
                .all(|(j, y)| i == j || !self.leq(x, y))
        })
    }

    /// A ≤≤ B: every a ∈ A lies below some b ∈ B.
    pub fn dominated_by(&self, a: &[GroupElement<F>], b: &[GroupElement<F>]) -> bool {
        a.iter().all(|x| b.iter().any(|y| self.leq(x, y)))
    }
}
