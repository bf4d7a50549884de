//! c-sorting words, sortability, skips, the walls C_c(v), the projection
//! π↓^c, the Cambrian semilattice operations, nc_c and the bijection between
//! c-sortable and scs-sortable elements.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::coxeter::{CoxeterGroup, GroupElement, Reflection, Root};
use crate::error::{Error, Result};
use crate::forms::CoxeterElement;
use crate::linalg::Matrix;
use crate::rank_two::{RankTwoSubgroup, SegmentType, DEFAULT_RANK_TWO_CAP};
use crate::scalar::Scalar;

/// The first omitted occurrence of a generator while extracting a sorting word.
#[derive(Clone, PartialEq, Eq)]
pub struct Skip<F> {
    /// 1-based: the skip sits before letter `position` of the sorting word.
    pub position: usize,
    pub generator: usize,
    pub forced: bool,
    /// a₁⋯a_i r a_i⋯a₁.
    pub reflection: Reflection<F>,
    /// a₁⋯a_i α_r, negative exactly when the skip is forced.
    pub wall: Root<F>,
}

/// The c-sorting word of an element, split into its passes through c.
#[derive(Clone, PartialEq, Eq)]
pub struct SortingWord<F> {
    pub blocks: Vec<Vec<usize>>,
    /// One skip per generator of c, ordered by generator index.
    pub skips: Vec<Skip<F>>,
}

impl<F: Scalar> fmt::Debug for SortingWord<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SortingWord")
            .field("blocks", &self.blocks)
            .field("skips", &self.skips)
            .finish()
    }
}

impl<F: Scalar> SortingWord<F> {
    pub fn letters(&self) -> Vec<usize> {
        self.blocks.concat()
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn block_supports(&self) -> Vec<Vec<usize>> {
        self.blocks
            .iter()
            .map(|b| {
                let mut s = b.clone();
                s.sort_unstable();
                s
            })
            .collect()
    }

    /// Block supports weakly decrease under inclusion.
    pub fn has_nested_blocks(&self) -> bool {
        self.block_supports()
            .windows(2)
            .all(|w| w[1].iter().all(|s| w[0].contains(s)))
    }

    /// fs_c(w).
    pub fn forced(&self) -> Vec<Reflection<F>> {
        self.skips
            .iter()
            .filter(|k| k.forced)
            .map(|k| k.reflection.clone())
            .collect()
    }

    /// ufs_c(w).
    pub fn unforced(&self) -> Vec<Reflection<F>> {
        self.skips
            .iter()
            .filter(|k| !k.forced)
            .map(|k| k.reflection.clone())
            .collect()
    }
}

impl<F: Scalar> fmt::Debug for Skip<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Skip")
            .field("position", &self.position)
            .field("generator", &self.generator)
            .field("forced", &self.forced)
            .field("wall", &self.wall)
            .finish()
    }
}

/// Which of the three equivalent sortability tests to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SortMethod {
    /// Nested block supports of the sorting word.
    Word,
    /// Induction on length and rank through an initial letter of c.
    Recursive,
    /// Alignment with ω_c on every rank-two subgroup meeting inv(w) twice.
    Aligned,
}

/// The n walls of the Cambrian cone of a sortable element.
#[derive(Clone, PartialEq, Eq)]
pub struct CcData<F> {
    /// C_c^r(v) for each generator r, indexed by r.
    pub roots: Vec<Root<F>>,
    /// Negative members of C_c(v).
    pub lower: Vec<Root<F>>,
    /// Positive members of C_c(v).
    pub upper: Vec<Root<F>>,
}

impl<F: Scalar> fmt::Debug for CcData<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CcData")
            .field("roots", &self.roots)
            .finish()
    }
}

impl<F: Scalar> CoxeterGroup<F> {
    /// The leftmost subword of c^∞ that is a reduced word for w, with skips.
    ///
    /// Errors if w does not lie in the parabolic subgroup c generates.
    pub fn sorting_word(&self, c: &CoxeterElement, w: &GroupElement<F>) -> Result<SortingWord<F>> {
        let n = self.rank();
        let mut prefix: Matrix<F> = Matrix::identity(n);
        let mut rest_inverse = w.inverse_matrix().clone();
        let mut blocks = Vec::new();
        let mut skips: Vec<Option<Skip<F>>> = vec![None; n];
        let mut taken = 0;
        loop {
            let mut block = Vec::new();
            for &s in c.word() {
                let col = rest_inverse.column(s);
                if Root::new(col).is_negative() {
                    prefix = self.mul_gen_right_matrix(&prefix, s);
                    rest_inverse = self.mul_gen_right_matrix(&rest_inverse, s);
                    block.push(s);
                    taken += 1;
                } else if skips[s].is_none() {
                    let wall = Root::new(prefix.column(s));
                    skips[s] = Some(Skip {
                        position: taken + 1,
                        generator: s,
                        forced: wall.is_negative(),
                        reflection: Reflection::from_root(&wall),
                        wall,
                    });
                }
            }
            if block.is_empty() {
                if taken != w.length() {
                    return Err(Error::InvalidCoxeterElement(format!(
                        "{} is not in the subgroup generated by {}",
                        self.compact_word(w.word()),
                        self.compact_word(c.word())
                    )));
                }
                break;
            }
            blocks.push(block);
        }
        Ok(SortingWord {
            blocks,
            skips: skips.into_iter().flatten().collect(),
        })
    }

    pub fn is_sortable(&self, c: &CoxeterElement, w: &GroupElement<F>, method: SortMethod) -> bool {
        match method {
            SortMethod::Word => self
                .sorting_word(c, w)
                .map(|sw| sw.has_nested_blocks())
                .unwrap_or(false),
            SortMethod::Recursive => self.is_sortable_recursive(c, w),
            SortMethod::Aligned => self.is_aligned(c, w),
        }
    }

    fn is_sortable_recursive(&self, c: &CoxeterElement, w: &GroupElement<F>) -> bool {
        let Some(&s) = c.word().first() else {
            return w.is_identity();
        };
        if w.has_left_descent(s) {
            self.is_sortable_recursive(&c.rotate_initial(s), &self.mul_gen_left(s, w))
        } else {
            let rest = c.without(s);
            self.in_parabolic(w, rest.word()) && self.is_sortable_recursive(&rest, w)
        }
    }

    /// c-alignment of w with respect to every noncommutative rank-two
    /// subgroup spanned by two inversions of w.
    ///
    /// Subgroups meeting inv(w) at most once never fail: a lone inversion in
    /// a rank-two subgroup is one of its canonical generators, by convexity
    /// of inversion sets.
    fn is_aligned(&self, c: &CoxeterElement, w: &GroupElement<F>) -> bool {
        let inv = w.inversions();
        let mut seen: Vec<RankTwoSubgroup<F>> = Vec::new();
        for i in 0..inv.len() {
            for j in i + 1..inv.len() {
                // Two reflections lie in exactly one maximal rank-two subgroup.
                if seen
                    .iter()
                    .any(|sub| sub.contains(&inv[i]) && sub.contains(&inv[j]))
                {
                    continue;
                }
                let Ok(sub) = self.span_subgroup(&inv[i], &inv[j], DEFAULT_RANK_TWO_CAP) else {
                    return false;
                };
                seen.push(sub.clone());
                if sub.is_commutative() {
                    continue;
                }
                let sub = self.orient_rank_two(c, &sub);
                let omega = self.omega(c, sub.r1.root(), sub.r2.root());
                let aligned = if omega.is_zero() {
                    inv.iter().filter(|t| sub.contains(t)).count() <= 1
                } else {
                    matches!(
                        self.segment_type(&sub, &inv),
                        SegmentType::Initial(_) | SegmentType::Final(1)
                    )
                };
                if !aligned {
                    return false;
                }
            }
        }
        true
    }

    /// π↓^c(w), always recursing through the first letter of c.
    pub fn pidown(&self, c: &CoxeterElement, w: &GroupElement<F>) -> GroupElement<F> {
        let Some(&s) = c.word().first() else {
            return self.identity();
        };
        if w.has_left_descent(s) {
            let below = self.pidown(&c.rotate_initial(s), &self.mul_gen_left(s, w));
            self.mul_gen_left(s, &below)
        } else {
            let rest = c.without(s);
            self.pidown(&rest, &self.parabolic_project(w, rest.word()))
        }
    }

    /// π↓^c(w) evaluated through every initial letter at every step.
    /// Errors if two choices disagree anywhere in the recursion.
    pub fn pidown_all_choices(
        &self,
        c: &CoxeterElement,
        w: &GroupElement<F>,
    ) -> Result<GroupElement<F>> {
        let mut memo = HashMap::new();
        self.pidown_choices(c, w, &mut memo)
    }

    fn pidown_choices(
        &self,
        c: &CoxeterElement,
        w: &GroupElement<F>,
        memo: &mut HashMap<(Vec<usize>, GroupElement<F>), GroupElement<F>>,
    ) -> Result<GroupElement<F>> {
        if c.is_empty() {
            return Ok(self.identity());
        }
        let key = (c.word().to_vec(), w.clone());
        if let Some(v) = memo.get(&key) {
            return Ok(v.clone());
        }
        let mut value: Option<GroupElement<F>> = None;
        for s in c.initial_letters() {
            let v = if w.has_left_descent(s) {
                let below =
                    self.pidown_choices(&c.rotate_initial(s), &self.mul_gen_left(s, w), memo)?;
                self.mul_gen_left(s, &below)
            } else {
                let rest = c.without(s);
                self.pidown_choices(&rest, &self.parabolic_project(w, rest.word()), memo)?
            };
            match &value {
                None => value = Some(v),
                Some(prev) if *prev != v => {
                    return Err(Error::Inconsistent(format!(
                        "π↓ of {} depends on the initial letter",
                        self.compact_word(w.word())
                    )))
                }
                Some(_) => {}
            }
        }
        let v = value.expect("a nonempty Coxeter element has an initial letter");
        memo.insert(key, v.clone());
        Ok(v)
    }

    /// C_c^r(v) by the recursion through initial letters, for r in c.
    fn walls_recursive(
        &self,
        c: &CoxeterElement,
        v: &GroupElement<F>,
    ) -> Result<Vec<(usize, Root<F>)>> {
        let Some(&s) = c.word().first() else {
            return if v.is_identity() {
                Ok(Vec::new())
            } else {
                Err(Error::NotSortable(self.compact_word(v.word())))
            };
        };
        if v.has_left_descent(s) {
            let inner = self.walls_recursive(&c.rotate_initial(s), &self.mul_gen_left(s, v))?;
            let gen = self.generator(s);
            Ok(inner
                .into_iter()
                .map(|(r, root)| (r, self.apply(&gen, &root)))
                .collect())
        } else {
            let rest = c.without(s);
            if !self.in_parabolic(v, rest.word()) {
                return Err(Error::NotSortable(self.compact_word(v.word())));
            }
            let mut inner = self.walls_recursive(&rest, v)?;
            inner.push((s, self.simple_root(s)));
            Ok(inner)
        }
    }

    /// C_c(v), computed by the recursion and cross-checked against the skips
    /// of the sorting word.
    pub fn cc_data(&self, c: &CoxeterElement, v: &GroupElement<F>) -> Result<CcData<F>> {
        let mut recursive = self.walls_recursive(c, v)?;
        recursive.sort_by_key(|(r, _)| *r);
        let sw = self.sorting_word(c, v)?;
        if recursive.len() != sw.skips.len() {
            return Err(Error::Inconsistent(
                "wall count differs from skip count".into(),
            ));
        }
        for ((r, root), skip) in recursive.iter().zip(&sw.skips) {
            if *r != skip.generator || *root != skip.wall {
                return Err(Error::Inconsistent(format!(
                    "wall for {} differs between recursion and skips",
                    self.name(*r)
                )));
            }
        }
        let roots: Vec<Root<F>> = recursive.into_iter().map(|(_, root)| root).collect();
        let lower = roots.iter().filter(|r| r.is_negative()).cloned().collect();
        let upper = roots.iter().filter(|r| r.is_positive()).cloned().collect();
        Ok(CcData {
            roots,
            lower,
            upper,
        })
    }

    /// ufs_c(w).
    pub fn unforced_skips(
        &self,
        c: &CoxeterElement,
        w: &GroupElement<F>,
    ) -> Result<Vec<Reflection<F>>> {
        Ok(self.sorting_word(c, w)?.unforced())
    }

    /// fs_c(w).
    pub fn forced_skips(
        &self,
        c: &CoxeterElement,
        w: &GroupElement<F>,
    ) -> Result<Vec<Reflection<F>>> {
        Ok(self.sorting_word(c, w)?.forced())
    }

    fn require_sortable(&self, c: &CoxeterElement, v: &GroupElement<F>) -> Result<()> {
        if self.is_sortable(c, v, SortMethod::Word) {
            Ok(())
        } else {
            Err(Error::NotSortable(self.compact_word(v.word())))
        }
    }

    /// The meet of c-sortable elements, which is again c-sortable.
    pub fn sortable_meet(
        &self,
        c: &CoxeterElement,
        xs: &[GroupElement<F>],
    ) -> Result<GroupElement<F>> {
        for x in xs {
            self.require_sortable(c, x)?;
        }
        let m = self.meet_all(xs);
        self.require_sortable(c, &m)
            .map_err(|_| Error::Inconsistent("meet of sortable elements is not sortable".into()))?;
        Ok(m)
    }

    /// The join of c-sortable elements below a common upper bound.
    pub fn sortable_join(
        &self,
        c: &CoxeterElement,
        xs: &[GroupElement<F>],
        bound: &GroupElement<F>,
    ) -> Result<GroupElement<F>> {
        for x in xs {
            self.require_sortable(c, x)?;
        }
        let j = self.join_bounded(xs, bound)?;
        self.require_sortable(c, &j)
            .map_err(|_| Error::Inconsistent("join of sortable elements is not sortable".into()))?;
        Ok(j)
    }

    /// v ↦ sv if v ≥ s, else s ∨ v, from c-sortables to scs-sortables.
    ///
    /// `bound` must be an upper bound of s and v whenever v ≱ s; it is what
    /// certifies that the join exists.
    pub fn reflection_functor(
        &self,
        c: &CoxeterElement,
        s: usize,
        v: &GroupElement<F>,
        bound: Option<&GroupElement<F>>,
    ) -> Result<GroupElement<F>> {
        if !c.is_initial(s) {
            return Err(Error::InvalidCoxeterElement(format!(
                "{} is not initial",
                self.name(s)
            )));
        }
        self.require_sortable(c, v)?;
        if v.has_left_descent(s) {
            return Ok(self.mul_gen_left(s, v));
        }
        let bound = bound.ok_or(Error::JoinUnavailable)?;
        self.join_bounded(&[self.generator(s), v.clone()], bound)
            .map_err(|_| Error::JoinUnavailable)
    }

    /// The inverse map: x ↦ sx if x ≱ s, else x_⟨s⟩.
    pub fn reflection_functor_inverse(
        &self,
        c: &CoxeterElement,
        s: usize,
        x: &GroupElement<F>,
    ) -> Result<GroupElement<F>> {
        if !c.is_initial(s) {
            return Err(Error::InvalidCoxeterElement(format!(
                "{} is not initial",
                self.name(s)
            )));
        }
        self.require_sortable(&c.rotate_initial(s), x)?;
        if x.has_left_descent(s) {
            Ok(self.parabolic_project(x, &self.all_but(s)))
        } else {
            Ok(self.mul_gen_left(s, x))
        }
    }

    /// nc_c(v): the product of cov(v) in reflection-sequence order of the
    /// c-sorting word.
    pub fn nc(&self, c: &CoxeterElement, v: &GroupElement<F>) -> Result<GroupElement<F>> {
        let sw = self.sorting_word(c, v)?;
        if !sw.has_nested_blocks() {
            return Err(Error::NotSortable(self.compact_word(v.word())));
        }
        let cov: HashSet<Reflection<F>> = self.cover_reflections(v).into_iter().collect();
        let mut m: Matrix<F> = Matrix::identity(self.rank());
        for root in self.reflection_sequence(&sw.letters()) {
            let t = Reflection::from_root(&root);
            if cov.contains(&t) {
                m = m.mul(&self.reflection_matrix(&t));
            }
        }
        Ok(self.element_from_matrix(m))
    }

    /// [1, c]_T in the absolute order of a finite group, by breadth-first
    /// search for reflection length.
    pub fn absolute_interval(
        &self,
        c: &CoxeterElement,
        cap: usize,
    ) -> Result<Vec<GroupElement<F>>> {
        let all: Vec<usize> = (0..self.rank()).collect();
        let w0 = self
            .longest_element(&all, cap)
            .map_err(|_| Error::InfiniteGroup)?;
        let reflections: Vec<Matrix<F>> = w0
            .inversions()
            .iter()
            .map(|t| self.reflection_matrix(t))
            .collect();
        let mut dist: HashMap<GroupElement<F>, usize> = HashMap::from([(self.identity(), 0)]);
        let mut queue = VecDeque::from([self.identity()]);
        while let Some(g) = queue.pop_front() {
            let d = dist[&g];
            for t in &reflections {
                let h = self.element_from_matrix(g.matrix().mul(t));
                if !dist.contains_key(&h) {
                    dist.insert(h.clone(), d + 1);
                    queue.push_back(h);
                }
            }
        }
        let ce = self.from_word(c.word());
        let lc = dist[&ce];
        let mut out: Vec<_> = dist
            .iter()
            .filter(|(x, &d)| d + dist[&self.multiply(&self.invert(x), &ce)] == lc)
            .map(|(x, _)| x.clone())
            .collect();
        out.sort();
        Ok(out)
    }

    /// All c-sortable elements of length at most `max_length`, shortlex
    /// sorted. Each sortable element of positive length extends a shorter
    /// one by a single letter, so a breadth-first search finds them all.
    pub fn enumerate_sortables(
        &self,
        c: &CoxeterElement,
        max_length: usize,
    ) -> Vec<GroupElement<F>> {
        let mut seen: HashSet<GroupElement<F>> = HashSet::from([self.identity()]);
        let mut layer = vec![self.identity()];
        let mut out = layer.clone();
        for _ in 0..max_length {
            let mut next = Vec::new();
            for g in &layer {
                for s in 0..self.rank() {
                    if g.has_right_descent(s) {
                        continue;
                    }
                    let h = self.mul_gen_right(g, s);
                    if seen.insert(h.clone()) && self.is_sortable(c, &h, SortMethod::Word) {
                        next.push(h);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out.sort();
        out
    }
}
