//! Property suites over a bounded set of chambers, shared by the CLI and
//! the tests. Every check records how many cases it ran and what failed.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::str::FromStr;

use serde::Serialize;

use crate::coxeter::{CoxeterGroup, GroupElement, Reflection, Root};
use crate::error::{Error, Result};
use crate::forms::CoxeterElement;
use crate::rank_two::DihedralOrder;
use crate::scalar::Scalar;
use crate::sortable::SortMethod;

/// Violations kept per check; the count is always exact.
const KEPT_VIOLATIONS: usize = 20;

/// Finite groups whose longest element is at most this long are enumerated
/// completely, whatever the length cap.
const FINITE_LENGTH_CAP: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Forms,
    Sortable,
    Lattice,
    Fan,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "forms" => Ok(Suite::Forms),
            "sortable" => Ok(Suite::Sortable),
            "lattice" => Ok(Suite::Lattice),
            "fan" => Ok(Suite::Fan),
            "all" => Ok(Suite::All),
            other => Err(Error::Parse(format!("unknown suite {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    /// Chambers of length at most this are checked in infinite groups.
    /// Finite groups with ℓ(w₀) ≤ 64 are checked completely.
    pub max_length: usize,
    /// Extra chamber layers used by the fan check.
    pub fan_margin: usize,
    /// Reduced words examined per element by the inversion-ordering check.
    pub words_per_element: usize,
    /// Faces examined by the star check.
    pub star_faces: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_length: 8,
            fan_margin: 2,
            words_per_element: 500,
            star_faces: 40,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub cases: usize,
    pub violation_count: usize,
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub coxeter_element: String,
    pub max_length: usize,
    pub checks: Vec<CheckReport>,
    pub passed: bool,
}

impl SuiteReport {
    pub fn check(&self, name: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.name == name)
    }
}

struct Check {
    report: CheckReport,
}

impl Check {
    fn new(name: &str) -> Self {
        Check {
            report: CheckReport {
                name: name.to_string(),
                cases: 0,
                violation_count: 0,
                violations: Vec::new(),
            },
        }
    }

    fn case(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.report.cases += 1;
        if !ok {
            self.fail(describe());
        }
    }

    fn fail(&mut self, message: String) {
        self.report.violation_count += 1;
        if self.report.violations.len() < KEPT_VIOLATIONS {
            self.report.violations.push(message);
        }
    }
}

/// Everything the suites share: the chambers, the sortables among them
/// and π↓^c on each chamber.
struct Context<'a, F: Scalar> {
    g: &'a CoxeterGroup<F>,
    c: &'a CoxeterElement,
    config: VerifyConfig,
    chambers: Vec<GroupElement<F>>,
    sortables: Vec<GroupElement<F>>,
    pidown: HashMap<GroupElement<F>, GroupElement<F>>,
    /// The longest element, when the whole group was enumerated.
    w0: Option<GroupElement<F>>,
    index: HashMap<GroupElement<F>, usize>,
    /// inv(w) of each chamber as a bitset over the reflections involved.
    bits: Vec<Vec<u64>>,
}

impl<'a, F: Scalar> Context<'a, F> {
    fn new(g: &'a CoxeterGroup<F>, c: &'a CoxeterElement, config: VerifyConfig) -> Self {
        let all: Vec<usize> = (0..g.rank()).collect();
        let w0 = g.longest_element(&all, FINITE_LENGTH_CAP).ok();
        let cap = w0.as_ref().map_or(config.max_length, GroupElement::length);
        let chambers = g.elements_up_to(cap);
        let sortables: Vec<_> = chambers
            .iter()
            .filter(|w| g.is_sortable(c, w, SortMethod::Word))
            .cloned()
            .collect();
        let pidown = chambers
            .iter()
            .map(|w| (w.clone(), g.pidown(c, w)))
            .collect();
        let reflections: BTreeSet<Reflection<F>> =
            chambers.iter().flat_map(|w| w.inversions()).collect();
        let position: HashMap<Reflection<F>, usize> = reflections
            .into_iter()
            .enumerate()
            .map(|(i, t)| (t, i))
            .collect();
        let words = position.len().div_ceil(64);
        let bits = chambers
            .iter()
            .map(|w| {
                let mut b = vec![0u64; words];
                for t in w.inversions() {
                    let i = position[&t];
                    b[i / 64] |= 1 << (i % 64);
                }
                b
            })
            .collect();
        let index = chambers
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        Context {
            g,
            c,
            config,
            chambers,
            sortables,
            pidown,
            w0,
            index,
            bits,
        }
    }

    fn subset(a: &[u64], b: &[u64]) -> bool {
        a.iter().zip(b).all(|(x, y)| x & !y == 0)
    }

    /// x ∧ y. The chambers are closed downward, so the meet is among them
    /// and is the longest common lower bound.
    fn meet(&self, x: &GroupElement<F>, y: &GroupElement<F>) -> GroupElement<F> {
        let both: Vec<u64> = self.bits[self.index[x]]
            .iter()
            .zip(&self.bits[self.index[y]])
            .map(|(a, b)| a & b)
            .collect();
        let k = (0..self.chambers.len())
            .rev()
            .find(|&k| Self::subset(&self.bits[k], &both))
            .expect("e is a lower bound");
        self.chambers[k].clone()
    }

    /// The join of `xs`, when some upper bound lies among the chambers.
    /// Bounded sets have joins, and the join is then the shortest chamber
    /// above every member.
    fn join(&self, xs: &[GroupElement<F>]) -> Option<GroupElement<F>> {
        let words = self.bits.first().map_or(0, Vec::len);
        let mut union = vec![0u64; words];
        for x in xs {
            for (u, b) in union.iter_mut().zip(&self.bits[*self.index.get(x)?]) {
                *u |= b;
            }
        }
        (0..self.chambers.len())
            .find(|&k| Self::subset(&union, &self.bits[k]))
            .map(|k| self.chambers[k].clone())
    }

    fn name(&self, w: &GroupElement<F>) -> String {
        let s = self.g.compact_word(w.word());
        if s.is_empty() {
            "e".into()
        } else {
            s
        }
    }

    fn reflection_name(&self, t: &Reflection<F>) -> String {
        self.g.reflection_name(t)
    }

    fn cover_set(&self, w: &GroupElement<F>) -> BTreeSet<Reflection<F>> {
        self.g.cover_reflections(w).into_iter().collect()
    }

    /// Reflections among inversions of the chambers, sorted.
    fn reflections(&self) -> Vec<Reflection<F>> {
        let set: BTreeSet<Reflection<F>> =
            self.chambers.iter().flat_map(|w| w.inversions()).collect();
        set.into_iter().collect()
    }

    fn proper_subsets(&self) -> Vec<Vec<usize>> {
        let n = self.g.rank();
        (1..(1usize << n) - 1)
            .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
            .collect()
    }

    fn generator_reflection(&self, s: usize) -> Reflection<F> {
        Reflection::from_root(&self.g.simple_root(s))
    }

    /// s t s as a reflection.
    fn conjugate_by(&self, s: usize, t: &Reflection<F>) -> Reflection<F> {
        Reflection::from_root(&self.g.reflect(&self.generator_reflection(s), t.root()))
    }
}

impl<F: Scalar> CoxeterGroup<F> {
    /// Runs one suite (or all of them) on chambers of bounded length.
    pub fn verify(&self, c: &CoxeterElement, suite: Suite, config: VerifyConfig) -> SuiteReport {
        let ctx = Context::new(self, c, config);
        let mut checks = Vec::new();
        if matches!(suite, Suite::Forms | Suite::All) {
            checks.extend(forms_suite(&ctx));
        }
        if matches!(suite, Suite::Sortable | Suite::All) {
            checks.extend(sortable_suite(&ctx));
        }
        if matches!(suite, Suite::Lattice | Suite::All) {
            checks.extend(lattice_suite(&ctx));
        }
        if matches!(suite, Suite::Fan | Suite::All) {
            checks.extend(fan_suite(&ctx));
        }
        let checks: Vec<CheckReport> = checks.into_iter().map(|c| c.report).collect();
        SuiteReport {
            coxeter_element: self.compact_word(c.word()),
            max_length: ctx.chambers.last().map_or(0, GroupElement::length),
            passed: checks.iter().all(|c| c.violation_count == 0),
            checks,
        }
    }
}

fn forms_suite<F: Scalar>(ctx: &Context<F>) -> Vec<Check> {
    let (g, c) = (ctx.g, ctx.c);
    let n = g.rank();
    let simple: Vec<Root<F>> = (0..n).map(|s| g.simple_root(s)).collect();
    let reflections = ctx.reflections();
    let mut out = Vec::new();

    let mut check = Check::new("euler-symmetrization");
    for x in &simple {
        for y in &simple {
            let sym = g.euler_form_roots(c, x, y) + g.euler_form_roots(c, y, x);
            check.case(sym == g.form(x, y), || {
                format!("E(x,y)+E(y,x) != K(x,y) at {x:?}, {y:?}")
            });
        }
    }
    out.push(check);

    let mut euler = Check::new("euler-invariance");
    let mut omega = Check::new("omega-invariance");
    for s in 0..n {
        let rotated = if c.is_initial(s) {
            c.rotate_initial(s)
        } else if c.is_final(s) {
            c.rotate_final(s)
        } else {
            continue;
        };
        let gs = ctx.generator_reflection(s);
        for x in &simple {
            for y in &simple {
                let lhs = g.euler_form_roots(c, x, y);
                let rhs = g.euler_form_roots(&rotated, &g.reflect(&gs, x), &g.reflect(&gs, y));
                euler.case(lhs == rhs, || format!("s = {}, {x:?}, {y:?}", g.name(s)));
            }
        }
        for t in reflections.iter().take(40) {
            for u in reflections.iter().take(40) {
                let lhs = g.omega(c, t.root(), u.root());
                let rhs = g.omega(
                    &rotated,
                    &g.reflect(&gs, t.root()),
                    &g.reflect(&gs, u.root()),
                );
                omega.case(lhs == rhs, || {
                    format!(
                        "s = {}, {} and {}",
                        g.name(s),
                        ctx.reflection_name(t),
                        ctx.reflection_name(u)
                    )
                });
            }
        }
    }
    out.push(euler);
    out.push(omega);

    let mut check = Check::new("omega-restriction");
    for j in ctx.proper_subsets() {
        let cj = c.restrict(&j);
        let inside: Vec<&Reflection<F>> = reflections
            .iter()
            .filter(|t| g.root_in_parabolic(t.root(), &j))
            .collect();
        for t in &inside {
            for u in &inside {
                check.case(
                    g.omega(c, t.root(), u.root()) == g.omega(&cj, t.root(), u.root()),
                    || {
                        format!(
                            "J = {}, {} and {}",
                            g.compact_word(&j),
                            ctx.reflection_name(t),
                            ctx.reflection_name(u)
                        )
                    },
                );
            }
        }
    }
    out.push(check);

    let mut initial = Check::new("euler-initial");
    let mut fin = Check::new("euler-final");
    for s in 0..n {
        let others = g.all_but(s);
        let mut e_s = vec![F::zero(); n];
        e_s[s] = F::one();
        for t in &reflections {
            let beta = t.root();
            let outside = g.root_in_parabolic(beta, &others);
            if c.is_initial(s) {
                let e = g.euler_form(c, &e_s, beta);
                initial.case(e == beta.coords[s] && (e.is_zero() == outside), || {
                    format!("s = {}, t = {}", g.name(s), ctx.reflection_name(t))
                });
            }
            if c.is_final(s) {
                let coroot = g.to_coroot_coordinates(&g.coroot(beta));
                let e = g.euler_form(c, &coroot, &simple[s]);
                fin.case(e == coroot[s] && (e.is_zero() == outside), || {
                    format!("s = {}, t = {}", g.name(s), ctx.reflection_name(t))
                });
            }
        }
    }
    out.push(initial);
    out.push(fin);

    let mut check = Check::new("omega-sign-initial-final");
    for s in 0..n {
        let gs = ctx.generator_reflection(s);
        for t in &reflections {
            let w = g.omega(c, &simple[s], t.root());
            let commute = g.reflections_commute(&gs, t);
            if c.is_initial(s) {
                check.case(!w.is_negative() && (!w.is_zero() || commute), || {
                    format!("s = {} initial, t = {}", g.name(s), ctx.reflection_name(t))
                });
            }
            if c.is_final(s) {
                check.case(!w.is_positive() && (!w.is_zero() || commute), || {
                    format!("s = {} final, t = {}", g.name(s), ctx.reflection_name(t))
                });
            }
        }
    }
    out.push(check);

    let mut check = Check::new("omega-cyclic");
    let mut seen = HashSet::new();
    for w in &ctx.chambers {
        let inv = w.inversions();
        for i in 0..inv.len() {
            for j in i + 1..inv.len() {
                let Ok(sub) = g.span_subgroup(&inv[i], &inv[j], 64) else {
                    continue;
                };
                if sub.is_commutative() || !seen.insert((sub.r1.clone(), sub.r2.clone())) {
                    continue;
                }
                let k = match sub.m {
                    DihedralOrder::Finite(m) => m,
                    DihedralOrder::Infinite => 8,
                };
                let us = g.reflection_prefix(&sub, k);
                let signs: BTreeSet<_> = (0..us.len())
                    .flat_map(|a| (a + 1..us.len()).map(move |b| (a, b)))
                    .map(|(a, b)| g.omega(c, us[a].root(), us[b].root()).sign())
                    .collect();
                check.case(signs.len() <= 1, || {
                    format!(
                        "subgroup {} / {}",
                        ctx.reflection_name(&sub.r1),
                        ctx.reflection_name(&sub.r2)
                    )
                });
            }
        }
    }
    out.push(check);

    if n == 3 {
        let mut check = Check::new("zeta-orientation");
        match g.zeta(c) {
            Ok(zeta) => {
                for t in &reflections {
                    for u in &reflections {
                        let w = g.omega(c, t.root(), u.root()).sign();
                        let d = g.volume(t.root(), u.root(), &zeta).sign();
                        check.case(w == d, || {
                            format!("{} and {}", ctx.reflection_name(t), ctx.reflection_name(u))
                        });
                    }
                }
            }
            Err(e) => check.fail(e.to_string()),
        }
        out.push(check);
    }
    out
}

/// The lexicographically first word commutation-equivalent to `word`.
fn commutation_normal_form<F: Scalar>(g: &CoxeterGroup<F>, word: &[usize]) -> Vec<usize> {
    let m = g.coxeter_matrix();
    let mut rest = word.to_vec();
    let mut out = Vec::with_capacity(word.len());
    while !rest.is_empty() {
        let pick = (0..rest.len())
            .filter(|&i| {
                rest[..i]
                    .iter()
                    .all(|&x| x != rest[i] && m.commute(x, rest[i]))
            })
            .min_by_key(|&i| rest[i])
            .expect("the first letter can always move to the front");
        out.push(rest.remove(pick));
    }
    out
}

/// Up to `limit` reduced words for w, built by peeling right descents.
fn reduced_words<F: Scalar>(
    g: &CoxeterGroup<F>,
    w: &GroupElement<F>,
    limit: usize,
) -> Vec<Vec<usize>> {
    fn go<F: Scalar>(
        g: &CoxeterGroup<F>,
        w: &GroupElement<F>,
        suffix: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if w.is_identity() {
            out.push(suffix.iter().rev().copied().collect());
            return;
        }
        for s in w.right_descents() {
            suffix.push(s);
            go(g, &g.mul_gen_right(w, s), suffix, out, limit);
            suffix.pop();
        }
    }
    let mut out = Vec::new();
    go(g, w, &mut Vec::new(), &mut out, limit);
    out
}

fn sortable_suite<F: Scalar>(ctx: &Context<F>) -> Vec<Check> {
    let (g, c) = (ctx.g, ctx.c);
    let n = g.rank();
    let sortable_set: HashSet<&GroupElement<F>> = ctx.sortables.iter().collect();
    let mut out = Vec::new();

    let mut check = Check::new("three-way-agreement");
    for w in &ctx.chambers {
        let a = g.is_sortable(c, w, SortMethod::Word);
        let b = g.is_sortable(c, w, SortMethod::Recursive);
        let d = g.is_sortable(c, w, SortMethod::Aligned);
        check.case(a == b && b == d, || {
            format!("{}: word {a}, recursive {b}, aligned {d}", ctx.name(w))
        });
    }
    out.push(check);

    let mut check = Check::new("skips");
    for w in &ctx.chambers {
        match g.sorting_word(c, w) {
            Ok(sw) => {
                let generators: BTreeSet<usize> = sw.skips.iter().map(|k| k.generator).collect();
                let forced_ok = sw
                    .skips
                    .iter()
                    .all(|k| k.forced == w.has_inversion(&k.reflection));
                check.case(
                    sw.skips.len() == n && generators.len() == n && forced_ok,
                    || ctx.name(w),
                );
            }
            Err(e) => check.fail(format!("{}: {e}", ctx.name(w))),
        }
    }
    out.push(check);

    let mut check = Check::new("cc-data");
    for v in &ctx.sortables {
        match g.cc_data(c, v) {
            Ok(data) => {
                let lower: BTreeSet<Reflection<F>> =
                    data.lower.iter().map(Reflection::from_root).collect();
                let upper: BTreeSet<Reflection<F>> =
                    data.upper.iter().map(Reflection::from_root).collect();
                let ufs: BTreeSet<Reflection<F>> = g
                    .unforced_skips(c, v)
                    .unwrap_or_default()
                    .into_iter()
                    .collect();
                check.case(lower == ctx.cover_set(v) && upper == ufs, || ctx.name(v));
            }
            Err(e) => check.fail(format!("{}: {e}", ctx.name(v))),
        }
    }
    out.push(check);

    let mut check = Check::new("inversion-ordering");
    for w in &ctx.chambers {
        let sortable = sortable_set.contains(w);
        let target = g
            .sorting_word(c, w)
            .map(|sw| commutation_normal_form(g, &sw.letters()))
            .unwrap_or_default();
        for word in reduced_words(g, w, ctx.config.words_per_element) {
            let expected = sortable && commutation_normal_form(g, &word) == target;
            let got = g.compatible_reflection_sequence(c, &word).unwrap_or(false);
            check.case(got == expected, || {
                format!("word {}", g.compact_word(&word))
            });
        }
    }
    out.push(check);

    let mut choices = Check::new("pidown-choice-independent");
    let mut decreasing = Check::new("pidown-decreasing-idempotent");
    for w in &ctx.chambers {
        let v = &ctx.pidown[w];
        match g.pidown_all_choices(c, w) {
            Ok(x) => choices.case(&x == v, || ctx.name(w)),
            Err(e) => choices.fail(format!("{}: {e}", ctx.name(w))),
        }
        let ok = g.leq(v, w)
            && sortable_set.contains(v)
            && ctx.pidown.get(v).is_none_or(|x| x == v)
            && ((v == w) == sortable_set.contains(w));
        decreasing.case(ok, || ctx.name(w));
    }
    out.push(choices);
    out.push(decreasing);

    let mut check = Check::new("order-preserving");
    for w in &ctx.chambers {
        for s in 0..n {
            if w.has_right_descent(s) {
                continue;
            }
            let ws = g.mul_gen_right(w, s);
            if let Some(vs) = ctx.pidown.get(&ws) {
                check.case(g.leq(&ctx.pidown[w], vs), || {
                    format!("{} < {}", ctx.name(w), ctx.name(&ws))
                });
            }
        }
    }
    out.push(check);

    let mut check = Check::new("fiber-description");
    for w in &ctx.chambers {
        let v = &ctx.pidown[w];
        let hits: Vec<&GroupElement<F>> = ctx
            .sortables
            .iter()
            .filter(|u| u.length() <= w.length() && g.chamber_in_cone(c, u, w))
            .collect();
        check.case(hits == [v], || {
            format!(
                "{}: pidown {}, cones {:?}",
                ctx.name(w),
                ctx.name(v),
                hits.iter().map(|u| ctx.name(u)).collect::<Vec<_>>()
            )
        });
    }
    out.push(check);

    let mut para = Check::new("pidown-parabolic");
    let mut sort_para = Check::new("sortable-parabolic");
    for j in ctx.proper_subsets() {
        let cj = c.restrict(&j);
        for w in &ctx.chambers {
            let lhs = g.pidown(&cj, &g.parabolic_project(w, &j));
            let rhs = g.parabolic_project(&ctx.pidown[w], &j);
            para.case(lhs == rhs, || {
                format!("J = {}, w = {}", g.compact_word(&j), ctx.name(w))
            });
        }
        for v in &ctx.sortables {
            let vj = g.parabolic_project(v, &j);
            sort_para.case(g.is_sortable(&cj, &vj, SortMethod::Word), || {
                format!("J = {}, v = {}", g.compact_word(&j), ctx.name(v))
            });
        }
    }
    out.push(para);
    out.push(sort_para);

    let mut check = Check::new("above-initial");
    for s in c.initial_letters() {
        for w in &ctx.chambers {
            check.case(
                w.has_left_descent(s) == ctx.pidown[w].has_left_descent(s),
                || format!("s = {}, w = {}", g.name(s), ctx.name(w)),
            );
        }
    }
    out.push(check);

    let mut last_cover = Check::new("final-letter-cover");
    let mut cc_final = Check::new("cover-final");
    let mut cc_initial = Check::new("cover-initial");
    for v in &ctx.sortables {
        for s in 0..n {
            let gs = ctx.generator_reflection(s);
            let cov = ctx.cover_set(v);
            let vs = g.parabolic_project(v, &g.all_but(s));
            let decomposes = |check: &mut Check, ufs_expected: BTreeSet<Reflection<F>>| {
                let joined = g.join_bounded(&[g.generator(s), vs.clone()], v).ok();
                let mut cov_expected = ctx.cover_set(&vs);
                cov_expected.insert(gs.clone());
                let ufs: BTreeSet<Reflection<F>> = g
                    .unforced_skips(c, v)
                    .unwrap_or_default()
                    .into_iter()
                    .collect();
                check.case(
                    joined.as_ref() == Some(v) && cov == cov_expected && ufs == ufs_expected,
                    || format!("s = {}, v = {}", g.name(s), ctx.name(v)),
                );
            };
            if c.is_final(s) && v.has_left_descent(s) {
                last_cover.case(cov.contains(&gs), || {
                    format!("s = {}, v = {}", g.name(s), ctx.name(v))
                });
                let expected = g
                    .unforced_skips(&c.without(s), &vs)
                    .unwrap_or_default()
                    .into_iter()
                    .collect();
                decomposes(&mut cc_final, expected);
            }
            if c.is_initial(s) && cov.contains(&gs) {
                let expected = g
                    .unforced_skips(&c.without(s), &vs)
                    .unwrap_or_default()
                    .iter()
                    .map(|t| ctx.conjugate_by(s, t))
                    .collect();
                decomposes(&mut cc_initial, expected);
            }
        }
    }
    out.push(last_cover);
    out.push(cc_final);
    out.push(cc_initial);
    out
}

fn lattice_suite<F: Scalar>(ctx: &Context<F>) -> Vec<Check> {
    let (g, c) = (ctx.g, ctx.c);
    let sortable_set: HashSet<&GroupElement<F>> = ctx.sortables.iter().collect();
    let mut out = Vec::new();

    let mut meets = Check::new("pidown-preserves-meets");
    let mut joins = Check::new("pidown-preserves-joins");
    let chambers = &ctx.chambers;
    for i in 0..chambers.len() {
        for j in i + 1..chambers.len() {
            let (x, y) = (&chambers[i], &chambers[j]);
            let (px, py) = (&ctx.pidown[x], &ctx.pidown[y]);
            let m = ctx.meet(x, y);
            meets.case(ctx.pidown[&m] == ctx.meet(px, py), || {
                format!("{} ∧ {}", ctx.name(x), ctx.name(y))
            });
            if let Some(xy) = ctx.join(&[x.clone(), y.clone()]) {
                let rhs = ctx.join(&[px.clone(), py.clone()]);
                joins.case(rhs.as_ref() == Some(&ctx.pidown[&xy]), || {
                    format!("{} ∨ {}", ctx.name(x), ctx.name(y))
                });
            }
        }
    }
    out.push(meets);
    out.push(joins);

    let mut closed = Check::new("sortables-closed-under-meet-and-join");
    let s = &ctx.sortables;
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            let m = ctx.meet(&s[i], &s[j]);
            closed.case(sortable_set.contains(&m), || {
                format!("{} ∧ {}", ctx.name(&s[i]), ctx.name(&s[j]))
            });
            if let Some(j) = ctx.join(&[s[i].clone(), s[j].clone()]) {
                closed.case(sortable_set.contains(&j), || {
                    format!("{} ∨ {}", ctx.name(&s[i]), ctx.name(&j))
                });
            }
        }
    }
    out.push(closed);

    let mut cjr = Check::new("canonical-join-representation");
    let mut csort = Check::new("canonical-joinands-sortable");
    for w in &ctx.chambers {
        let a = g.canonical_join_representation(w).elements;
        let joined = if a.is_empty() {
            Ok(g.identity())
        } else {
            g.join_bounded(&a, w)
        };
        let mut covers: Vec<Reflection<F>> =
            a.iter().flat_map(|j| g.cover_reflections(j)).collect();
        covers.sort();
        let expected: Vec<Reflection<F>> = ctx.cover_set(w).into_iter().collect();
        let ok = joined.as_ref() == Ok(w)
            && g.is_antichain(&a)
            && a.iter().all(|j| g.is_join_irreducible(j))
            && covers == expected;
        cjr.case(ok, || ctx.name(w));
        if sortable_set.contains(w) {
            csort.case(
                a.iter().all(|j| g.is_sortable(c, j, SortMethod::Word)),
                || ctx.name(w),
            );
        }
    }
    out.push(cjr);
    out.push(csort);

    let mut check = Check::new("join-irreducible-cover-injective");
    let mut seen: HashMap<Reflection<F>, &GroupElement<F>> = HashMap::new();
    for v in ctx.sortables.iter().filter(|v| g.is_join_irreducible(v)) {
        let t = g.cover_reflections(v).remove(0);
        let clash = seen.insert(t, v);
        check.case(clash.is_none(), || {
            format!("{} and {}", ctx.name(v), ctx.name(clash.unwrap()))
        });
    }
    out.push(check);

    let mut nc_check = Check::new("nc-injective");
    let mut images: HashMap<GroupElement<F>, &GroupElement<F>> = HashMap::new();
    let mut cov_images: HashMap<BTreeSet<Reflection<F>>, &GroupElement<F>> = HashMap::new();
    for v in &ctx.sortables {
        match g.nc(c, v) {
            Ok(x) => {
                let clash = images.insert(x, v);
                nc_check.case(clash.is_none(), || {
                    format!("{} and {}", ctx.name(v), ctx.name(clash.unwrap()))
                });
            }
            Err(e) => nc_check.fail(format!("{}: {e}", ctx.name(v))),
        }
        let clash = cov_images.insert(ctx.cover_set(v), v);
        nc_check.case(clash.is_none(), || {
            format!("cov of {} and {}", ctx.name(v), ctx.name(clash.unwrap()))
        });
    }
    if let Some(w0) = &ctx.w0 {
        match g.absolute_interval(c, w0.length()) {
            Ok(interval) => {
                let interval: HashSet<_> = interval.into_iter().collect();
                nc_check.case(
                    images.keys().all(|x| interval.contains(x)) && images.len() == interval.len(),
                    || format!("image {} vs interval {}", images.len(), interval.len()),
                );
            }
            Err(e) => nc_check.fail(e.to_string()),
        }
    }
    out.push(nc_check);

    let mut check = Check::new("reflection-functor");
    for s in c.initial_letters() {
        let scs = c.rotate_initial(s);
        let mut image = HashSet::new();
        let mut complete = true;
        for v in &ctx.sortables {
            let bound = if v.has_left_descent(s) {
                None
            } else {
                ctx.join(&[g.generator(s), v.clone()])
            };
            if !v.has_left_descent(s) && bound.is_none() {
                complete = false;
                continue;
            }
            match g.reflection_functor(c, s, v, bound.as_ref()) {
                Ok(x) => {
                    let back = g.reflection_functor_inverse(c, s, &x);
                    check.case(back.as_ref() == Ok(v), || {
                        format!("s = {}, v = {}", g.name(s), ctx.name(v))
                    });
                    image.insert(x);
                }
                Err(e) => check.fail(format!("s = {}, v = {}: {e}", g.name(s), ctx.name(v))),
            }
        }
        if ctx.w0.is_some() && complete {
            let target: HashSet<_> = ctx
                .chambers
                .iter()
                .filter(|w| g.is_sortable(&scs, w, SortMethod::Word))
                .cloned()
                .collect();
            check.case(image == target, || {
                format!("s = {}: image is not every scs-sortable", g.name(s))
            });
        }
    }
    out.push(check);
    out
}

fn fan_suite<F: Scalar>(ctx: &Context<F>) -> Vec<Check> {
    let (g, c) = (ctx.g, ctx.c);
    let mut out = Vec::new();

    let mut check = Check::new("fan-in-tits");
    let (length, margin) = match &ctx.w0 {
        Some(w0) => (w0.length(), 0),
        None => (ctx.config.max_length, ctx.config.fan_margin),
    };
    match g.fan_check_in_tits(c, length, margin) {
        Ok(report) => {
            check.report.cases = report.chambers + report.cones;
            for v in &report.violations {
                check.fail(serde_json::to_string(v).unwrap_or_default());
            }
        }
        Err(e) => check.fail(e.to_string()),
    }
    out.push(check);

    let mut check = Check::new("cones-avoid-simple-walls");
    check.report.cases = ctx.sortables.len();
    for (v, s) in g.fiber_crossings(c, &ctx.chambers) {
        check.fail(format!(
            "the fiber of {} crosses the wall of {}",
            ctx.name(&v),
            g.name(s)
        ));
    }
    out.push(check);

    let mut check = Check::new("fan-parabolic-coarsening");
    for j in ctx.proper_subsets() {
        let cj = c.restrict(&j);
        let mut seen: HashMap<&GroupElement<F>, GroupElement<F>> = HashMap::new();
        for w in &ctx.chambers {
            let image = g.pidown(&cj, &g.parabolic_project(w, &j));
            match seen.get(&ctx.pidown[w]) {
                Some(x) => check.case(*x == image, || {
                    format!("J = {}, w = {}", g.compact_word(&j), ctx.name(w))
                }),
                None => {
                    seen.insert(&ctx.pidown[w], image);
                }
            }
        }
    }
    out.push(check);

    let mut check = Check::new("stars");
    let mut faces = 0;
    'outer: for v in &ctx.sortables {
        let descents = v.right_descents();
        for mask in 1..1usize << descents.len() {
            if faces >= ctx.config.star_faces {
                break 'outer;
            }
            let j: Vec<usize> = (0..descents.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| descents[i])
                .collect();
            if g.longest_element(&j, 64).is_err() {
                continue;
            }
            faces += 1;
            let face = crate::fan::FaceDescriptor {
                v: v.clone(),
                j: j.clone(),
            };
            match g.verify_star(c, &face, 64) {
                Ok(violations) => check.case(violations.is_empty(), || {
                    format!("v = {}, J = {}", ctx.name(v), g.compact_word(&j))
                }),
                Err(e) => check.fail(format!(
                    "v = {}, J = {}: {e}",
                    ctx.name(v),
                    g.compact_word(&j)
                )),
            }
        }
    }
    out.push(check);
    out
}
