//! Group elements acting on root space, roots, reflections, inversions and
//! parabolic projections.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex};

use crate::cartan::{CartanData, CoxeterMatrix};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::rank_two::RankTwoSubgroup;
use crate::scalar::Scalar;

/// A vector in root space, in the basis of simple roots.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root<F> {
    pub coords: Vec<F>,
}

impl<F: Scalar> Root<F> {
    pub fn new(coords: Vec<F>) -> Self {
        Root { coords }
    }

    pub fn simple(n: usize, s: usize) -> Self {
        let mut coords = vec![F::zero(); n];
        coords[s] = F::one();
        Root { coords }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|x| x.is_zero())
    }

    /// Sign of the first nonzero coordinate. For a root this decides
    /// positivity, since every root is positive or negative.
    pub fn leading_sign(&self) -> Ordering {
        self.coords
            .iter()
            .map(|x| x.sign())
            .find(|s| *s != Ordering::Equal)
            .unwrap_or(Ordering::Equal)
    }

    /// All coordinates nonnegative and at least one positive.
    pub fn is_positive(&self) -> bool {
        self.coords.iter().all(|x| !x.is_negative()) && self.coords.iter().any(|x| x.is_positive())
    }

    pub fn is_negative(&self) -> bool {
        self.coords.iter().all(|x| !x.is_positive()) && self.coords.iter().any(|x| x.is_negative())
    }

    pub fn neg(&self) -> Self {
        Root::new(linalg::neg(&self.coords))
    }

    /// The positive member of {self, −self}.
    pub fn abs(&self) -> Self {
        if self.leading_sign() == Ordering::Less {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Root::new(linalg::add(&self.coords, &other.coords))
    }

    pub fn scale(&self, k: &F) -> Self {
        Root::new(linalg::scale(&self.coords, k))
    }

    /// Coordinate sum.
    pub fn height(&self) -> F {
        self.coords.iter().cloned().fold(F::zero(), |a, b| a + b)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.coords.len())
            .filter(|&i| !self.coords[i].is_zero())
            .collect()
    }
}

impl<F: fmt::Display> fmt::Debug for Root<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A reflection, identified with its positive root.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Reflection<F>(Root<F>);

impl<F: Scalar> Reflection<F> {
    /// The reflection orthogonal to `root`; the sign of `root` is ignored.
    pub fn from_root(root: &Root<F>) -> Self {
        Reflection(root.abs())
    }

    pub fn root(&self) -> &Root<F> {
        &self.0
    }
}

impl<F: fmt::Display> fmt::Debug for Reflection<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{:?}", self.0)
    }
}

struct ElementData<F> {
    matrix: Matrix<F>,
    inverse: Matrix<F>,
    word: Vec<usize>,
    inversions: Vec<Root<F>>,
}

/// An element of W.
///
/// The element is its matrix on root space; the canonical reduced word is
/// a function of that matrix, so equality and hashing go through the word.
#[derive(Clone)]
pub struct GroupElement<F>(Arc<ElementData<F>>);

impl<F: Scalar> GroupElement<F> {
    pub fn matrix(&self) -> &Matrix<F> {
        &self.0.matrix
    }

    pub fn inverse_matrix(&self) -> &Matrix<F> {
        &self.0.inverse
    }

    /// Canonical reduced word, as generator indices.
    pub fn word(&self) -> &[usize] {
        &self.0.word
    }

    pub fn length(&self) -> usize {
        self.0.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.word.is_empty()
    }

    /// Roots of the reflection sequence of the canonical word, in order.
    pub fn inversion_roots(&self) -> &[Root<F>] {
        &self.0.inversions
    }

    pub fn inversions(&self) -> Vec<Reflection<F>> {
        self.0
            .inversions
            .iter()
            .map(|r| Reflection(r.clone()))
            .collect()
    }

    /// Whether `t` is an inversion, i.e. w⁻¹β_t is negative.
    pub fn has_inversion(&self, t: &Reflection<F>) -> bool {
        Root::new(self.0.inverse.apply(&t.root().coords)).leading_sign() == Ordering::Less
    }

    /// Whether s is a right descent (w α_s negative).
    pub fn has_right_descent(&self, s: usize) -> bool {
        column_sign(&self.0.matrix, s) == Ordering::Less
    }

    /// Whether s is a left descent (w ≥ s in weak order).
    pub fn has_left_descent(&self, s: usize) -> bool {
        column_sign(&self.0.inverse, s) == Ordering::Less
    }

    pub fn right_descents(&self) -> Vec<usize> {
        (0..self.0.matrix.size())
            .filter(|&s| self.has_right_descent(s))
            .collect()
    }

    pub fn left_descents(&self) -> Vec<usize> {
        (0..self.0.matrix.size())
            .filter(|&s| self.has_left_descent(s))
            .collect()
    }

    /// The set of generators appearing in any reduced word.
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.0.word.clone();
        s.sort_unstable();
        s.dedup();
        s
    }
}

impl<F> PartialEq for GroupElement<F> {
    fn eq(&self, other: &Self) -> bool {
        self.0.word == other.0.word
    }
}

impl<F> Eq for GroupElement<F> {}

impl<F> Hash for GroupElement<F> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.word.hash(state)
    }
}

impl<F> PartialOrd for GroupElement<F> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Shortlex on canonical words.
impl<F> Ord for GroupElement<F> {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.0.word.len(), &self.0.word).cmp(&(other.0.word.len(), &other.0.word))
    }
}

impl<F> fmt::Debug for GroupElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w{:?}", self.0.word)
    }
}

fn column_sign<F: Scalar>(m: &Matrix<F>, s: usize) -> Ordering {
    (0..m.size())
        .map(|i| m.get(i, s).sign())
        .find(|x| *x != Ordering::Equal)
        .unwrap_or(Ordering::Equal)
}

/// Which side a coset of a parabolic subgroup is taken on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// W_J g
    Left,
    /// g W_J
    Right,
}

/// Canonical generators already found, keyed by the pair and cap.
pub(crate) type RankTwoCache<F> =
    Mutex<HashMap<(Reflection<F>, Reflection<F>, usize), RankTwoSubgroup<F>>>;

struct GroupData<F> {
    cartan: CartanData<F>,
    form: Matrix<F>,
    generators: Vec<Matrix<F>>,
    rank_two: RankTwoCache<F>,
}

/// A Coxeter group together with its reflection representation.
#[derive(Clone)]
pub struct CoxeterGroup<F>(Arc<GroupData<F>>);

impl<F: Scalar> CoxeterGroup<F> {
    pub fn new(cartan: CartanData<F>) -> Self {
        let n = cartan.rank();
        let mut form = Matrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                form.set(i, j, cartan.form_entry(i, j));
            }
        }
        let generators = (0..n)
            .map(|s| {
                let mut m: Matrix<F> = Matrix::identity(n);
                for j in 0..n {
                    let v = m.get(s, j).clone() - cartan.entry(s, j).clone();
                    m.set(s, j, v);
                }
                m
            })
            .collect();
        CoxeterGroup(Arc::new(GroupData {
            cartan,
            form,
            generators,
            rank_two: Mutex::new(HashMap::new()),
        }))
    }

    pub(crate) fn rank_two_cache(&self) -> &RankTwoCache<F> {
        &self.0.rank_two
    }

    pub fn rank(&self) -> usize {
        self.0.cartan.rank()
    }

    pub fn cartan(&self) -> &CartanData<F> {
        &self.0.cartan
    }

    pub fn coxeter_matrix(&self) -> &CoxeterMatrix {
        self.0.cartan.coxeter()
    }

    pub fn names(&self) -> &[String] {
        self.coxeter_matrix().names()
    }

    pub fn name(&self, s: usize) -> &str {
        &self.names()[s]
    }

    pub fn generator_index(&self, name: &str) -> Result<usize> {
        self.names()
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    /// Parses a comma-separated list of generator names. Empty input is the
    /// empty word.
    pub fn parse_word(&self, text: &str) -> Result<Vec<usize>> {
        let text = text.trim();
        if text.is_empty() || text == "e" && self.generator_index("e").is_err() {
            return Ok(Vec::new());
        }
        text.split(',')
            .map(|t| self.generator_index(t.trim()))
            .collect()
    }

    /// Comma-separated generator names.
    pub fn format_word(&self, word: &[usize]) -> String {
        word.iter()
            .map(|&s| self.name(s))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Generator names concatenated, or "e" for the empty word.
    pub fn compact_word(&self, word: &[usize]) -> String {
        if word.is_empty() {
            "e".to_string()
        } else {
            word.iter().map(|&s| self.name(s)).collect()
        }
    }

    /// The matrix of the simple reflection s acting on root space.
    pub fn generator_matrix(&self, s: usize) -> &Matrix<F> {
        &self.0.generators[s]
    }

    /// The Gram matrix K(α_i, α_j).
    pub fn form_matrix(&self) -> &Matrix<F> {
        &self.0.form
    }

    /// K(x, y).
    pub fn form(&self, x: &Root<F>, y: &Root<F>) -> F {
        linalg::dot(&x.coords, &self.0.form.apply(&y.coords))
    }

    pub fn simple_root(&self, s: usize) -> Root<F> {
        Root::simple(self.rank(), s)
    }

    /// β^∨ = (2 / K(β,β)) β.
    pub fn coroot(&self, beta: &Root<F>) -> Root<F> {
        let k = self.form(beta, beta);
        beta.scale(&(F::from_int(2) / k))
    }

    /// t·x = x − K(β_t^∨, x) β_t.
    pub fn reflect(&self, t: &Reflection<F>, x: &Root<F>) -> Root<F> {
        let beta = t.root();
        let k = self.form(&self.coroot(beta), x);
        Root::new(linalg::sub(&x.coords, &beta.scale(&k).coords))
    }

    pub fn apply(&self, g: &GroupElement<F>, r: &Root<F>) -> Root<F> {
        Root::new(g.matrix().apply(&r.coords))
    }

    pub fn apply_inverse(&self, g: &GroupElement<F>, r: &Root<F>) -> Root<F> {
        Root::new(g.inverse_matrix().apply(&r.coords))
    }

    /// Right multiplication of a matrix by the simple reflection s.
    pub(crate) fn mul_gen_right_matrix(&self, m: &Matrix<F>, s: usize) -> Matrix<F> {
        let n = self.rank();
        let a = self.0.cartan.a();
        let col_s = m.column(s);
        let mut out = m.clone();
        for j in 0..n {
            let asj = a.get(s, j);
            if asj.is_zero() {
                continue;
            }
            for i in 0..n {
                if col_s[i].is_zero() {
                    continue;
                }
                let v = out.get(i, j).clone() - asj.clone() * col_s[i].clone();
                out.set(i, j, v);
            }
        }
        out
    }

    /// Builds the element with the given matrix, computing its canonical word.
    ///
    /// The word is found by repeatedly stripping the smallest right descent.
    /// The same pass yields the inverse matrix and the reflection sequence.
    pub fn element_from_matrix(&self, matrix: Matrix<F>) -> GroupElement<F> {
        let n = self.rank();
        let mut g = matrix.clone();
        let mut inverse = Matrix::identity(n);
        let mut letters = Vec::new();
        let mut roots = Vec::new();
        while let Some(s) = (0..n).find(|&s| column_sign(&g, s) == Ordering::Less) {
            roots.push(Root::new(linalg::neg(&g.column(s))));
            letters.push(s);
            g = self.mul_gen_right_matrix(&g, s);
            inverse = self.mul_gen_right_matrix(&inverse, s);
        }
        debug_assert!(g == Matrix::identity(n), "matrix is not a group element");
        letters.reverse();
        roots.reverse();
        GroupElement(Arc::new(ElementData {
            matrix,
            inverse,
            word: letters,
            inversions: roots,
        }))
    }

    pub fn identity(&self) -> GroupElement<F> {
        let n = self.rank();
        GroupElement(Arc::new(ElementData {
            matrix: Matrix::identity(n),
            inverse: Matrix::identity(n),
            word: Vec::new(),
            inversions: Vec::new(),
        }))
    }

    pub fn generator(&self, s: usize) -> GroupElement<F> {
        self.element_from_matrix(self.0.generators[s].clone())
    }

    /// The product of the letters of `word`, which need not be reduced.
    pub fn from_word(&self, word: &[usize]) -> GroupElement<F> {
        let mut m = Matrix::identity(self.rank());
        for &s in word {
            m = self.mul_gen_right_matrix(&m, s);
        }
        self.element_from_matrix(m)
    }

    /// Parses and multiplies a comma-separated word.
    pub fn element(&self, text: &str) -> Result<GroupElement<F>> {
        Ok(self.from_word(&self.parse_word(text)?))
    }

    /// Like [`Self::element`] for words of single-character generator names
    /// written without commas ("pqrpr").
    pub fn element_compact(&self, text: &str) -> Result<GroupElement<F>> {
        let word = self.parse_compact(text)?;
        Ok(self.from_word(&word))
    }

    pub fn parse_compact(&self, text: &str) -> Result<Vec<usize>> {
        if text == "e" || text.is_empty() {
            return Ok(Vec::new());
        }
        text.chars()
            .map(|c| self.generator_index(&c.to_string()))
            .collect()
    }

    pub fn multiply(&self, g: &GroupElement<F>, h: &GroupElement<F>) -> GroupElement<F> {
        self.element_from_matrix(g.matrix().mul(h.matrix()))
    }

    pub fn invert(&self, g: &GroupElement<F>) -> GroupElement<F> {
        self.element_from_matrix(g.inverse_matrix().clone())
    }

    pub fn mul_gen_right(&self, g: &GroupElement<F>, s: usize) -> GroupElement<F> {
        self.element_from_matrix(self.mul_gen_right_matrix(g.matrix(), s))
    }

    pub fn mul_gen_left(&self, s: usize, g: &GroupElement<F>) -> GroupElement<F> {
        self.element_from_matrix(self.0.generators[s].mul(g.matrix()))
    }

    /// The matrix of the reflection t: x ↦ x − K(β^∨, x) β.
    pub fn reflection_matrix(&self, t: &Reflection<F>) -> Matrix<F> {
        let n = self.rank();
        let beta = t.root();
        let functional = self.0.form.apply(&self.coroot(beta).coords);
        let mut m: Matrix<F> = Matrix::identity(n);
        for i in 0..n {
            for j in 0..n {
                let v = m.get(i, j).clone() - beta.coords[i].clone() * functional[j].clone();
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn reflection_element(&self, t: &Reflection<F>) -> GroupElement<F> {
        self.element_from_matrix(self.reflection_matrix(t))
    }

    /// The reflection conjugate to s by g: g s g⁻¹.
    pub fn conjugate_generator(&self, g: &GroupElement<F>, s: usize) -> Reflection<F> {
        Reflection::from_root(&self.apply(g, &self.simple_root(s)))
    }

    /// Whether the reflections commute, i.e. their roots are K-orthogonal.
    pub fn reflections_commute(&self, t: &Reflection<F>, u: &Reflection<F>) -> bool {
        t == u || self.form(t.root(), u.root()).is_zero()
    }

    /// Length and inversion set, the latter in reflection-sequence order of
    /// the canonical word.
    pub fn length_and_inversions(&self, g: &GroupElement<F>) -> (usize, Vec<Reflection<F>>) {
        (g.length(), g.inversions())
    }

    /// {g s g⁻¹ : g s < g}, ordered by s.
    pub fn cover_reflections(&self, g: &GroupElement<F>) -> Vec<Reflection<F>> {
        g.right_descents()
            .into_iter()
            .map(|s| self.conjugate_generator(g, s))
            .collect()
    }

    /// The projection w_J, whose inversion set is inv(w) ∩ W_J.
    pub fn parabolic_project(&self, g: &GroupElement<F>, j: &[usize]) -> GroupElement<F> {
        let mut x = self.identity();
        loop {
            let next = j.iter().copied().find(|&s| {
                let root = self.apply(&x, &self.simple_root(s));
                root.leading_sign() == Ordering::Greater
                    && self.apply_inverse(g, &root).leading_sign() == Ordering::Less
            });
            match next {
                Some(s) => x = self.mul_gen_right(&x, s),
                None => return x,
            }
        }
    }

    /// The factorization w = w_J · ᴶw.
    pub fn parabolic_factorization(
        &self,
        g: &GroupElement<F>,
        j: &[usize],
    ) -> (GroupElement<F>, GroupElement<F>) {
        let wj = self.parabolic_project(g, j);
        let rest = self.multiply(&self.invert(&wj), g);
        (wj, rest)
    }

    /// The minimal-length element of W_J g (left) or g W_J (right).
    pub fn min_coset_representative(
        &self,
        g: &GroupElement<F>,
        j: &[usize],
        side: Side,
    ) -> GroupElement<F> {
        let mut x = g.clone();
        loop {
            let next = match side {
                Side::Right => j.iter().copied().find(|&s| x.has_right_descent(s)),
                Side::Left => j.iter().copied().find(|&s| x.has_left_descent(s)),
            };
            match (next, side) {
                (Some(s), Side::Right) => x = self.mul_gen_right(&x, s),
                (Some(s), Side::Left) => x = self.mul_gen_left(s, &x),
                (None, _) => return x,
            }
        }
    }

    /// All elements of length at most `max_length`, shortlex sorted.
    pub fn elements_up_to(&self, max_length: usize) -> Vec<GroupElement<F>> {
        let mut seen: HashSet<GroupElement<F>> = HashSet::new();
        let mut layer = vec![self.identity()];
        seen.insert(self.identity());
        let mut all = layer.clone();
        for _ in 0..max_length {
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
            if next.is_empty() {
                break;
            }
            all.extend(next.iter().cloned());
            layer = next;
        }
        all.sort();
        all
    }

    /// The longest element of W_J, if W_J has at most `cap` length.
    pub fn longest_element(&self, j: &[usize], cap: usize) -> Result<GroupElement<F>> {
        let mut x = self.identity();
        while let Some(s) = j.iter().copied().find(|&s| !x.has_right_descent(s)) {
            if x.length() >= cap {
                return Err(Error::CapTooSmall(cap));
            }
            x = self.mul_gen_right(&x, s);
        }
        Ok(x)
    }

    /// Every element of a finite group. Reports `InfiniteGroup` when no
    /// longest element of length at most `cap` exists.
    pub fn all_elements(&self, cap: usize) -> Result<Vec<GroupElement<F>>> {
        let all: Vec<usize> = (0..self.rank()).collect();
        let w0 = match self.longest_element(&all, cap) {
            Ok(w0) => w0,
            Err(_) => return Err(Error::InfiniteGroup),
        };
        Ok(self.elements_up_to(w0.length()))
    }

    /// Positive roots reachable from a simple root by at most
    /// `max_depth − 1` height-increasing simple reflections.
    pub fn positive_roots_up_to_depth(&self, max_depth: usize) -> Vec<Root<F>> {
        let n = self.rank();
        let mut seen: HashMap<Root<F>, usize> = HashMap::new();
        let mut queue = VecDeque::new();
        for s in 0..n {
            let r = self.simple_root(s);
            seen.insert(r.clone(), 1);
            queue.push_back((r, 1));
        }
        let mut out = Vec::new();
        while let Some((r, depth)) = queue.pop_front() {
            out.push(r.clone());
            if depth == max_depth {
                continue;
            }
            for s in 0..n {
                let k = self.form(&self.coroot(&self.simple_root(s)), &r);
                if !k.is_negative() {
                    continue;
                }
                let image = self.reflect(&Reflection(self.simple_root(s)), &r);
                if !seen.contains_key(&image) {
                    seen.insert(image.clone(), depth + 1);
                    queue.push_back((image, depth + 1));
                }
            }
        }
        out
    }

    /// A reflection given by the compact word of any element conjugating a
    /// simple generator, e.g. "pqrqp".
    pub fn reflection_from_compact(&self, text: &str) -> Result<Reflection<F>> {
        let g = self.element_compact(text)?;
        let word = g.word();
        if word.len() % 2 == 0 {
            return Err(Error::Parse(format!("{text} is not a reflection")));
        }
        let t = Reflection::from_root(&self.reflection_root_of(&g)?);
        Ok(t)
    }

    fn reflection_root_of(&self, g: &GroupElement<F>) -> Result<Root<F>> {
        let word = g.word();
        let mid = word.len() / 2;
        let prefix = self.from_word(&word[..mid]);
        let root = self.apply(&prefix, &self.simple_root(word[mid]));
        let t = Reflection::from_root(&root);
        if self.reflection_element(&t) != *g {
            return Err(Error::Parse(format!(
                "{} is not a reflection",
                self.compact_word(word)
            )));
        }
        Ok(root)
    }

    /// Canonical word of the reflection t, compact.
    pub fn reflection_name(&self, t: &Reflection<F>) -> String {
        self.compact_word(self.reflection_element(t).word())
    }

    /// Whether `word` is reduced.
    pub fn is_reduced(&self, word: &[usize]) -> bool {
        self.from_word(word).length() == word.len()
    }

    /// The reflection sequence t_i = a₁⋯a_i⋯a₁ of a word, as roots
    /// a₁⋯a_{i−1} α_{a_i}.
    pub fn reflection_sequence(&self, word: &[usize]) -> Vec<Root<F>> {
        let mut prefix = Matrix::identity(self.rank());
        let mut out = Vec::with_capacity(word.len());
        for &s in word {
            out.push(Root::new(prefix.column(s)));
            prefix = self.mul_gen_right_matrix(&prefix, s);
        }
        out
    }

    /// Whether the element lies in W_J.
    pub fn in_parabolic(&self, g: &GroupElement<F>, j: &[usize]) -> bool {
        g.word().iter().all(|s| j.contains(s))
    }

    /// Whether β lies in the span of {α_s : s ∈ J}.
    pub fn root_in_parabolic(&self, beta: &Root<F>, j: &[usize]) -> bool {
        beta.support().iter().all(|s| j.contains(s))
    }

    /// The complement S ∖ {s}.
    pub fn all_but(&self, s: usize) -> Vec<usize> {
        (0..self.rank()).filter(|&x| x != s).collect()
    }
}

impl<F: Scalar> fmt::Debug for CoxeterGroup<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoxeterGroup")
            .field("generators", &self.names())
            .field("cartan", self.0.cartan.a())
            .finish()
    }
}
