//! End-to-end acceptance checks. Each check prints one PASS or FAIL line
//! with its running time; the process fails if any check fails.
//!
//! Where a check needs a reference answer it is computed here by brute
//! force (permutations, greedy sorting, exhaustive lattice search), not by
//! the library routine under test.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cambrian::catalog;
use cambrian::coxeter::{CoxeterGroup, GroupElement, Root};
use cambrian::fan::FaceDescriptor;
use cambrian::forms::CoxeterElement;
use cambrian::render::RenderSpec;
use cambrian::sortable::SortMethod;
use cambrian::weak_order::JoinSearch;
use cambrian::{QuadraticNumber, Rational, Scalar};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---------------------------------------------------------------- helpers

fn cox<F: Scalar>(g: &CoxeterGroup<F>, c: &str) -> CoxeterElement {
    CoxeterElement::parse(g, c).unwrap()
}

fn name<F: Scalar>(g: &CoxeterGroup<F>, w: &GroupElement<F>) -> String {
    g.compact_word(w.word())
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// One Coxeter element per commutation class.
fn coxeter_elements<F: Scalar>(g: &CoxeterGroup<F>) -> Vec<CoxeterElement> {
    let mut seen = HashSet::new();
    permutations(g.rank())
        .into_iter()
        .map(|p| CoxeterElement::new(g, p).unwrap())
        .filter(|c| seen.insert(g.from_word(c.word())))
        .collect()
}

/// Sortability by greedy extraction of the leftmost reduced subword of
/// c^∞ and a direct test of nested block supports.
fn greedy_sortable<F: Scalar>(
    g: &CoxeterGroup<F>,
    c: &CoxeterElement,
    w: &GroupElement<F>,
) -> bool {
    let n = c.len();
    let mut u = g.identity();
    let mut blocks: Vec<BTreeSet<usize>> = Vec::new();
    let mut i = 0;
    while u != *w {
        if i % n == 0 {
            blocks.push(BTreeSet::new());
        }
        let s = c.word()[i % n];
        let us = g.mul_gen_right(&u, s);
        if us.length() > u.length() && g.leq(&us, w) {
            u = us;
            blocks.last_mut().unwrap().insert(s);
        }
        i += 1;
        assert!(i <= n * (w.length() + 1), "greedy sort did not terminate");
    }
    blocks.windows(2).all(|b| b[1].is_subset(&b[0]))
}

/// Down-sets of a finite list of chambers as bitsets, for brute-force
/// meets and joins. `below[i]` has bit k set when chambers[k] ≤ chambers[i].
struct Poset {
    below: Vec<u64>,
}

impl Poset {
    fn new<F: Scalar>(g: &CoxeterGroup<F>, chambers: &[GroupElement<F>]) -> Self {
        assert!(chambers.len() <= 64);
        let below = chambers
            .iter()
            .map(|y| {
                chambers
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| g.leq(x, y))
                    .fold(0u64, |b, (k, _)| b | 1 << k)
            })
            .collect();
        Poset { below }
    }

    fn leq(&self, x: usize, y: usize) -> bool {
        self.below[y] >> x & 1 == 1
    }

    /// The greatest common lower bound, found by scanning all lower bounds.
    fn meet(&self, x: usize, y: usize) -> usize {
        let lower = self.below[x] & self.below[y];
        let candidates: Vec<usize> = (0..self.below.len())
            .filter(|&k| lower >> k & 1 == 1)
            .collect();
        let top: Vec<usize> = candidates
            .iter()
            .copied()
            .filter(|&k| candidates.iter().all(|&m| self.leq(m, k)))
            .collect();
        assert_eq!(top.len(), 1, "meet is not unique");
        top[0]
    }

    /// The least common upper bound of the set `xs` (a bitset), if any.
    fn join(&self, xs: u64) -> Option<usize> {
        let uppers: Vec<usize> = (0..self.below.len())
            .filter(|&k| self.below[k] & xs == xs)
            .collect();
        uppers
            .iter()
            .copied()
            .find(|&k| uppers.iter().all(|&m| self.leq(k, m)))
    }
}

// ------------------------------------------------------------- type A oracle

/// A permutation in one-line notation; generator i swaps positions i, i+1.
fn perm_length(p: &[usize]) -> usize {
    (0..p.len())
        .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count()
}

fn perm_inversions(p: &[usize]) -> HashSet<(usize, usize)> {
    let mut out = HashSet::new();
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                out.insert((p[j], p[i]));
            }
        }
    }
    out
}

/// The c-sorting word of a permutation and whether its blocks are nested,
/// computed entirely in the symmetric group.
fn perm_sorting(p: &[usize], c: &[usize]) -> (Vec<usize>, bool) {
    let target = perm_inversions(p);
    let mut u: Vec<usize> = (0..p.len()).collect();
    let mut word = Vec::new();
    let mut blocks: Vec<BTreeSet<usize>> = Vec::new();
    let mut i = 0;
    while u != p {
        if i % c.len() == 0 {
            blocks.push(BTreeSet::new());
        }
        let s = c[i % c.len()];
        let mut us = u.clone();
        us.swap(s, s + 1);
        if perm_length(&us) > perm_length(&u) && perm_inversions(&us).is_subset(&target) {
            u = us;
            word.push(s);
            blocks.last_mut().unwrap().insert(s);
        }
        i += 1;
    }
    (word, blocks.windows(2).all(|b| b[1].is_subset(&b[0])))
}

fn perm_sortables(n: usize, c: &[usize]) -> Vec<Vec<usize>> {
    permutations(n + 1)
        .into_iter()
        .map(|p| perm_sorting(&p, c))
        .filter(|(_, nested)| *nested)
        .map(|(w, _)| w)
        .collect()
}

fn binomial(n: u64, k: u64) -> u64 {
    (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
}

// ---------------------------------------------------------------- checks

fn a3_listed_sortables() -> Outcome {
    let g = catalog::type_a::<Rational>(3).unwrap();
    let c = cox(&g, "pqr");
    let got: BTreeSet<GroupElement<Rational>> = g.enumerate_sortables(&c, 20).into_iter().collect();
    let listed = [
        "", "p", "pq", "pqr", "pqrp", "pqrpq", "pqrpqp", "pqrq", "pqp", "pr", "q", "qr", "qrq", "r",
    ];
    let want: BTreeSet<_> = listed
        .iter()
        .map(|w| g.element_compact(w).unwrap())
        .collect();
    ensure(got == want, || {
        format!(
            "got {:?}",
            got.iter().map(|w| name(&g, w)).collect::<Vec<_>>()
        )
    })?;
    // Each listed word is already the canonical pqr-sorting word.
    for w in listed {
        let sw = g
            .sorting_word(&c, &g.element_compact(w).unwrap())
            .map_err(|e| e.to_string())?;
        ensure(g.parse_compact(w).unwrap() == sw.letters(), || {
            format!("{w} sorts as {}", g.compact_word(&sw.letters()))
        })?;
    }
    let oracle: BTreeSet<_> = perm_sortables(3, &[0, 1, 2])
        .iter()
        .map(|w| g.from_word(w))
        .collect();
    ensure(oracle == want, || {
        "permutation oracle disagrees with the list".into()
    })?;
    Ok(format!("{} elements", got.len()))
}

fn catalan_counts() -> Outcome {
    let mut checked = Vec::new();
    for n in 2..=4usize {
        let catalan = binomial(2 * n as u64 + 2, n as u64 + 1) / (n as u64 + 2);
        let g = catalog::type_a::<Rational>(n).unwrap();
        let orders: Vec<Vec<usize>> = vec![(0..n).collect(), (0..n).rev().collect(), {
            let mut v: Vec<usize> = (0..n).step_by(2).collect();
            v.extend((1..n).step_by(2));
            v
        }];
        let mut orders = orders;
        orders.sort();
        orders.dedup();
        for order in orders {
            let c = CoxeterElement::new(&g, order.clone()).unwrap();
            let got: BTreeSet<_> = g.enumerate_sortables(&c, 100).into_iter().collect();
            let oracle: BTreeSet<_> = perm_sortables(n, &order)
                .iter()
                .map(|w| g.from_word(w))
                .collect();
            ensure(got.len() as u64 == catalan, || {
                format!(
                    "A{n} c={}: {} sortables, want {catalan}",
                    g.compact_word(&order),
                    got.len()
                )
            })?;
            ensure(got == oracle, || {
                format!(
                    "A{n} c={}: permutation oracle differs",
                    g.compact_word(&order)
                )
            })?;
            checked.push(format!("A{n}:{}", g.compact_word(&order)));
        }
    }
    Ok(format!("5/14/42 for {}", checked.join(" ")))
}

fn affine_a2_cone_walls() -> Outcome {
    let g = catalog::affine_a2::<Rational>().unwrap();
    let c = cox(&g, "pqr");
    let v = g.element_compact("pqrpr").unwrap();
    let cc = g.cc_data(&c, &v).map_err(|e| e.to_string())?;
    let beta = |w: &str| g.reflection_from_compact(w).unwrap().root().clone();
    let want = [beta("pqrqp").neg(), beta("pqrpqprqp"), beta("q").neg()];
    ensure(cc.roots == want, || format!("walls {:?}", cc.roots))?;
    let cov: BTreeSet<_> = g.cover_reflections(&v).into_iter().collect();
    let want: BTreeSet<_> = ["pqrqp", "q"]
        .iter()
        .map(|w| g.reflection_from_compact(w).unwrap())
        .collect();
    ensure(cov == want, || "cover reflections differ".into())?;
    Ok("three walls and cov(v) exact".into())
}

fn fiber_description() -> Outcome {
    fn run<F: Scalar>(
        g: &CoxeterGroup<F>,
        chambers: &[GroupElement<F>],
        tag: &str,
    ) -> Result<usize, String> {
        let mut cases = 0;
        for c in coxeter_elements(g) {
            let sortables: Vec<_> = chambers
                .iter()
                .filter(|w| greedy_sortable(g, &c, w))
                .cloned()
                .collect();
            let walls: Vec<_> = sortables
                .iter()
                .map(|v| {
                    let cov: Vec<_> = g.cover_reflections(v);
                    let ufs = g.unforced_skips(&c, v).unwrap();
                    (cov, ufs)
                })
                .collect();
            for w in chambers {
                let p = g.pidown(&c, w);
                // Brute force: the longest sortable below w is its maximum.
                let below: Vec<_> = sortables.iter().filter(|v| g.leq(v, w)).collect();
                let top = below.iter().max_by_key(|v| v.length()).unwrap();
                ensure(p == **top, || {
                    format!(
                        "{tag}: pidown({}) is not the largest sortable below",
                        name(g, w)
                    )
                })?;
                for (v, (cov, ufs)) in sortables.iter().zip(&walls) {
                    let inside = cov.iter().all(|t| w.has_inversion(t))
                        && !ufs.iter().any(|t| w.has_inversion(t));
                    cases += 1;
                    ensure(inside == (p == *v), || {
                        format!(
                            "{tag} c={}: w={} v={}",
                            g.compact_word(c.word()),
                            name(g, w),
                            name(g, v)
                        )
                    })?;
                }
            }
        }
        Ok(cases)
    }
    let b3 = catalog::type_b3::<Rational>().unwrap();
    let all = b3.all_elements(20).unwrap();
    ensure(all.len() == 48, || format!("B3 has {} elements", all.len()))?;
    let a = run(&b3, &all, "B3")?;
    let g = catalog::affine_a2::<Rational>().unwrap();
    let b = run(&g, &g.elements_up_to(8), "A~2")?;
    Ok(format!("{} (w, v) pairs, no violations", a + b))
}

fn three_way_agreement() -> Outcome {
    fn run<F: Scalar>(
        g: &CoxeterGroup<F>,
        chambers: &[GroupElement<F>],
        tag: &str,
    ) -> Result<usize, String> {
        let mut cases = 0;
        for c in coxeter_elements(g) {
            for w in chambers {
                let oracle = greedy_sortable(g, &c, w);
                let got = [SortMethod::Word, SortMethod::Recursive, SortMethod::Aligned]
                    .map(|m| g.is_sortable(&c, w, m));
                cases += 1;
                ensure(got.iter().all(|&x| x == oracle), || {
                    format!(
                        "{tag} c={} w={}: oracle {oracle}, got {got:?}",
                        g.compact_word(c.word()),
                        name(g, w)
                    )
                })?;
            }
        }
        Ok(cases)
    }
    let b3 = catalog::type_b3::<Rational>().unwrap();
    let a = run(&b3, &b3.all_elements(20).unwrap(), "B3")?;
    let g = catalog::affine_a2::<Rational>().unwrap();
    let b = run(&g, &g.elements_up_to(10), "A~2")?;
    Ok(format!("{} (c, w) cases agree", a + b))
}

fn semilattice_laws() -> Outcome {
    let g = catalog::type_b3::<Rational>().unwrap();
    let all = g.all_elements(20).unwrap();
    let poset = Poset::new(&g, &all);
    let index: HashMap<_, _> = all
        .iter()
        .enumerate()
        .map(|(i, w)| (w.clone(), i))
        .collect();
    let mut pairs = 0;
    for c in coxeter_elements(&g) {
        let pi: Vec<usize> = all.iter().map(|w| index[&g.pidown(&c, w)]).collect();
        let sortable: Vec<bool> = all.iter().map(|w| greedy_sortable(&g, &c, w)).collect();
        let word = g.compact_word(c.word());
        for x in 0..all.len() {
            for y in 0..all.len() {
                pairs += 1;
                let m = poset.meet(x, y);
                let j = poset.join(1 << x | 1 << y).unwrap();
                ensure(pi[m] == poset.meet(pi[x], pi[y]), || {
                    format!(
                        "c={word}: meet law fails at {}, {}",
                        name(&g, &all[x]),
                        name(&g, &all[y])
                    )
                })?;
                ensure(
                    pi[j] == poset.join(1 << pi[x] | 1 << pi[y]).unwrap(),
                    || {
                        format!(
                            "c={word}: join law fails at {}, {}",
                            name(&g, &all[x]),
                            name(&g, &all[y])
                        )
                    },
                )?;
                if sortable[x] && sortable[y] {
                    ensure(sortable[m] && sortable[j], || {
                        format!(
                            "c={word}: sortables not closed at {}, {}",
                            name(&g, &all[x]),
                            name(&g, &all[y])
                        )
                    })?;
                    let lib_m = g
                        .sortable_meet(&c, &[all[x].clone(), all[y].clone()])
                        .map_err(|e| e.to_string())?;
                    let lib_j = g
                        .sortable_join(&c, &[all[x].clone(), all[y].clone()], &all[all.len() - 1])
                        .map_err(|e| e.to_string())?;
                    ensure(lib_m == all[m] && lib_j == all[j], || {
                        format!(
                            "c={word}: library meet/join differ at {}, {}",
                            name(&g, &all[x]),
                            name(&g, &all[y])
                        )
                    })?;
                }
            }
        }
    }
    Ok(format!("{pairs} pairs over every c"))
}

fn reflection_functor() -> Outcome {
    fn finite<F: Scalar>(g: &CoxeterGroup<F>, tag: &str) -> Result<usize, String> {
        let all = g.all_elements(30).unwrap();
        let w0 = all.iter().max_by_key(|w| w.length()).unwrap().clone();
        let mut maps = 0;
        for c in coxeter_elements(g) {
            for s in c.initial_letters() {
                let c2 = c.rotate_initial(s);
                let xs: BTreeSet<_> = all
                    .iter()
                    .filter(|w| greedy_sortable(g, &c, w))
                    .cloned()
                    .collect();
                let ys: BTreeSet<_> = all
                    .iter()
                    .filter(|w| greedy_sortable(g, &c2, w))
                    .cloned()
                    .collect();
                let image: BTreeSet<_> = xs
                    .iter()
                    .map(|v| g.reflection_functor(&c, s, v, Some(&w0)).unwrap())
                    .collect();
                let label = format!("{tag} c={} s={}", g.compact_word(c.word()), g.name(s));
                ensure(image == ys && xs.len() == ys.len(), || {
                    format!("{label}: not a bijection onto the sortables")
                })?;
                for v in &xs {
                    let x = g.reflection_functor(&c, s, v, Some(&w0)).unwrap();
                    ensure(
                        g.reflection_functor_inverse(&c, s, &x).unwrap() == *v,
                        || format!("{label}: round trip fails at {}", name(g, v)),
                    )?;
                }
                for x in &ys {
                    let v = g.reflection_functor_inverse(&c, s, x).unwrap();
                    ensure(
                        g.reflection_functor(&c, s, &v, Some(&w0)).unwrap() == *x,
                        || format!("{label}: inverse round trip fails at {}", name(g, x)),
                    )?;
                }
                maps += 1;
            }
        }
        Ok(maps)
    }
    fn infinite<F: Scalar>(
        g: &CoxeterGroup<F>,
        c: &str,
        tag: &str,
    ) -> Result<(usize, usize), String> {
        let c = cox(g, c);
        let (mut certified, mut skipped) = (0, 0);
        let apply = |s: usize, v: &GroupElement<F>| -> Option<GroupElement<F>> {
            if v.has_left_descent(s) {
                return Some(g.reflection_functor(&c, s, v, None).unwrap());
            }
            match g.join_exists_search(&[g.generator(s), v.clone()], 16) {
                JoinSearch::Found(bound) => {
                    Some(g.reflection_functor(&c, s, v, Some(&bound)).unwrap())
                }
                JoinSearch::Undetermined => None,
            }
        };
        for s in c.initial_letters() {
            let c2 = c.rotate_initial(s);
            for v in g.enumerate_sortables(&c, 8) {
                match apply(s, &v) {
                    Some(x) => {
                        certified += 1;
                        ensure(greedy_sortable(g, &c2, &x), || {
                            format!("{tag}: image of {} is not sortable", name(g, &v))
                        })?;
                        ensure(
                            g.reflection_functor_inverse(&c, s, &x).unwrap() == v,
                            || format!("{tag}: round trip fails at {}", name(g, &v)),
                        )?;
                    }
                    None => skipped += 1,
                }
            }
            for x in g.enumerate_sortables(&c2, 8) {
                let v = g.reflection_functor_inverse(&c, s, &x).unwrap();
                ensure(greedy_sortable(g, &c, &v), || {
                    format!("{tag}: preimage of {} is not sortable", name(g, &x))
                })?;
                match apply(s, &v) {
                    Some(y) => {
                        certified += 1;
                        ensure(y == x, || {
                            format!("{tag}: inverse round trip fails at {}", name(g, &x))
                        })?;
                    }
                    None => skipped += 1,
                }
            }
        }
        Ok((certified, skipped))
    }
    let mut maps = finite(&catalog::type_a::<Rational>(2).unwrap(), "A2")?;
    maps += finite(&catalog::type_b2::<Rational>().unwrap(), "B2")?;
    maps += finite(&catalog::type_b3::<Rational>().unwrap(), "B3")?;
    let (a, sa) = infinite(&catalog::affine_g2::<Rational>().unwrap(), "srt", "G~2")?;
    let (b, sb) = infinite(&catalog::affine_a2::<Rational>().unwrap(), "pqr", "A~2")?;
    Ok(format!(
        "{maps} finite bijections; {} affine round trips certified, {} without a certified join",
        a + b,
        sa + sb
    ))
}

fn noncrossing_map() -> Outcome {
    let g = catalog::type_b3::<Rational>().unwrap();
    let all = g.all_elements(20).unwrap();
    // Reflections are the conjugates of the generators; reflection length
    // by breadth-first search over right multiplication.
    let reflections: BTreeSet<_> = all
        .iter()
        .flat_map(|w| (0..3).map(move |s| (w, s)))
        .map(|(w, s)| g.multiply(&g.mul_gen_right(w, s), &g.invert(w)))
        .collect();
    ensure(reflections.len() == 9, || {
        format!("{} reflections", reflections.len())
    })?;
    let mut dist: HashMap<GroupElement<Rational>, usize> = HashMap::from([(g.identity(), 0)]);
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(x) = queue.pop_front() {
        for t in &reflections {
            let y = g.multiply(&x, t);
            if !dist.contains_key(&y) {
                dist.insert(y.clone(), dist[&x] + 1);
                queue.push_back(y);
            }
        }
    }
    let mut sizes = Vec::new();
    for c in coxeter_elements(&g) {
        let ce = g.from_word(c.word());
        let interval: BTreeSet<_> = all
            .iter()
            .filter(|x| dist[*x] + dist[&g.multiply(&g.invert(x), &ce)] == dist[&ce])
            .cloned()
            .collect();
        let sortables: Vec<_> = all.iter().filter(|w| greedy_sortable(&g, &c, w)).collect();
        let image: BTreeSet<_> = sortables.iter().map(|v| g.nc(&c, v).unwrap()).collect();
        let word = g.compact_word(c.word());
        ensure(image.len() == sortables.len(), || {
            format!("c={word}: nc is not injective")
        })?;
        ensure(image.len() == 20, || {
            format!("c={word}: image has {} elements", image.len())
        })?;
        ensure(image == interval, || {
            format!("c={word}: image differs from the absolute interval")
        })?;
        let lib: BTreeSet<_> = g.absolute_interval(&c, 20).unwrap().into_iter().collect();
        ensure(lib == interval, || {
            format!("c={word}: library absolute interval differs")
        })?;
        sizes.push(format!("{word}:{}", image.len()));
    }
    Ok(format!("image = [1,c]_T for {}", sizes.join(" ")))
}

fn canonical_join_representations() -> Outcome {
    /// Checks w's representation against every antichain below w that
    /// joins to w. Returns the number of antichains examined.
    fn check<F: Scalar>(g: &CoxeterGroup<F>, w: &GroupElement<F>) -> Result<usize, String> {
        let rep = g.canonical_join_representation(w).elements;
        ensure(g.is_antichain(&rep), || {
            format!("{}: not an antichain", name(g, w))
        })?;
        let mut covs: Vec<_> = rep.iter().flat_map(|j| g.cover_reflections(j)).collect();
        let n = covs.len();
        covs.sort();
        covs.dedup();
        let mut cov = g.cover_reflections(w);
        cov.sort();
        ensure(n == covs.len() && covs == cov, || {
            format!("{}: cov(w) is not the disjoint union", name(g, w))
        })?;
        ensure(rep.iter().all(|j| g.is_join_irreducible(j)), || {
            format!("{}: a joinand is not join-irreducible", name(g, w))
        })?;
        let interval = g.interval_below(w);
        let poset = Poset::new(g, &interval);
        let index: HashMap<_, _> = interval
            .iter()
            .enumerate()
            .map(|(i, x)| (x.clone(), i))
            .collect();
        let top = index[w];
        let a: Vec<usize> = rep.iter().map(|j| index[j]).collect();
        ensure(
            poset.join(a.iter().fold(0, |b, &k| b | 1 << k)) == Some(top),
            || format!("{}: joinands do not join to w", name(g, w)),
        )?;
        let k = interval.len();
        let comparable: Vec<u64> = (0..k)
            .map(|x| {
                (0..k)
                    .filter(|&y| poset.leq(x, y) || poset.leq(y, x))
                    .fold(0, |b, y| b | 1 << y)
            })
            .collect();
        let mut count = 0;
        let mut failure = None;
        // Depth-first enumeration of antichains by increasing index.
        let mut stack = vec![(0u64, 0u64, 0usize)];
        while let Some((set, blocked, next)) = stack.pop() {
            if set != 0 && poset.join(set) == Some(top) {
                count += 1;
                let dominated = a
                    .iter()
                    .all(|&x| (0..k).any(|y| set >> y & 1 == 1 && poset.leq(x, y)));
                if !dominated && failure.is_none() {
                    failure = Some(set);
                }
            }
            for y in next..k {
                if blocked >> y & 1 == 0 {
                    stack.push((set | 1 << y, blocked | comparable[y], y + 1));
                }
            }
        }
        ensure(failure.is_none(), || {
            format!(
                "{}: an antichain is not above the representation",
                name(g, w)
            )
        })?;
        Ok(count)
    }
    let b3 = catalog::type_b3::<Rational>().unwrap();
    let mut antichains = 0;
    let mut elements = 0;
    for w in b3.all_elements(20).unwrap() {
        antichains += check(&b3, &w)?;
        elements += 1;
    }
    let a2 = catalog::affine_a2::<Rational>().unwrap();
    for w in a2.elements_up_to(8) {
        antichains += check(&a2, &w)?;
        elements += 1;
    }
    let g2 = catalog::affine_g2::<Rational>().unwrap();
    let w = g2.element_compact("srtsrsrs").unwrap();
    let rep: BTreeSet<_> = g2
        .canonical_join_representation(&w)
        .elements
        .into_iter()
        .collect();
    let want: BTreeSet<_> = ["sr", "t"]
        .iter()
        .map(|x| g2.element_compact(x).unwrap())
        .collect();
    ensure(rep == want, || {
        format!(
            "G~2 srtsrsrs gives {:?}",
            rep.iter().map(|x| name(&g2, x)).collect::<Vec<_>>()
        )
    })?;
    let c = cox(&g2, "srt");
    ensure(
        rep.iter().chain([&w]).all(|x| greedy_sortable(&g2, &c, x)),
        || "G~2 joinands are not srt-sortable".into(),
    )?;
    Ok(format!(
        "{elements} elements, {antichains} joining antichains; srtsrsrs = sr ∨ t"
    ))
}

fn fan_and_stars() -> Outcome {
    let mut notes = Vec::new();
    let b3 = catalog::type_b3::<Rational>().unwrap();
    for c in coxeter_elements(&b3) {
        let r = b3.fan_check_in_tits(&c, 9, 0).map_err(|e| e.to_string())?;
        ensure(r.passed() && r.cones == 20 && r.chambers == 48, || {
            format!("B3 c={}: {:?}", b3.compact_word(c.word()), r.violations)
        })?;
    }
    notes.push("B3 complete".to_string());
    let a2 = catalog::affine_a2::<Rational>().unwrap();
    let r = a2
        .fan_check_in_tits(&cox(&a2, "pqr"), 8, 2)
        .map_err(|e| e.to_string())?;
    ensure(r.passed(), || format!("A~2: {:?}", r.violations))?;
    notes.push(format!("A~2 {} cells", r.cells));
    let g2 = catalog::affine_g2::<Rational>().unwrap();
    let c = cox(&g2, "srt");
    let r = g2.fan_check_in_tits(&c, 8, 2).map_err(|e| e.to_string())?;
    ensure(r.passed(), || format!("G~2: {:?}", r.violations))?;
    notes.push(format!("G~2 {} cells", r.cells));
    let h = catalog::hyperbolic_542::<QuadraticNumber>().unwrap();
    let r = h
        .fan_check_in_tits(&cox(&h, "rst"), 7, 2)
        .map_err(|e| e.to_string())?;
    ensure(r.passed(), || format!("(5,4,2): {:?}", r.violations))?;
    notes.push(format!("(5,4,2) {} cells", r.cells));

    // The two faces below srtsrsrs in G~2.
    let v = g2.element_compact("srtsrsrs").unwrap();
    let s = g2.generator_index("s").unwrap();
    let r_ = g2.generator_index("r").unwrap();
    let edge = FaceDescriptor {
        v: v.clone(),
        j: vec![r_],
    };
    let (w, _) = g2.star_of_face(&c, &edge, 20).map_err(|e| e.to_string())?;
    ensure(w == g2.element_compact("stsrsrs").unwrap(), || {
        format!("edge gives w = {}", name(&g2, &w))
    })?;
    let ray = FaceDescriptor { v, j: vec![r_, s] };
    let (_, star) = g2.star_of_face(&c, &ray, 20).map_err(|e| e.to_string())?;
    ensure(g2.compact_word(star.word()) == "rs", || {
        format!("ray gives Cox = {}", g2.compact_word(star.word()))
    })?;
    for face in [&edge, &ray] {
        let bad = g2.verify_star(&c, face, 20).map_err(|e| e.to_string())?;
        ensure(bad.is_empty(), || format!("G~2 star: {bad:?}"))?;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let classes = coxeter_elements(&b3);
    let all = b3.all_elements(20).unwrap();
    let mut faces = 0;
    while faces < 20 {
        let c = classes.choose(&mut rng).unwrap();
        let sortables: Vec<_> = all.iter().filter(|w| greedy_sortable(&b3, c, w)).collect();
        let v = (*sortables.choose(&mut rng).unwrap()).clone();
        let descents = v.right_descents();
        if descents.is_empty() {
            continue;
        }
        let j: Vec<usize> = descents
            .iter()
            .copied()
            .filter(|_| rng.gen_bool(0.5))
            .collect();
        if j.is_empty() {
            continue;
        }
        let face = FaceDescriptor { v, j };
        let bad = b3.verify_star(c, &face, 20).map_err(|e| e.to_string())?;
        ensure(bad.is_empty(), || {
            format!("B3 star at {}: {bad:?}", name(&b3, &face.v))
        })?;
        faces += 1;
    }
    notes.push("2 G~2 faces and 20 random B3 faces".into());
    Ok(notes.join(", "))
}

fn omega_orientation() -> Outcome {
    /// ω_c from the Cartan entries, written out independently: in coroot
    /// coordinates E(α_i^∨, α_j) is a_ij when i comes after j in c, 1 on
    /// the diagonal and 0 otherwise.
    fn omega<F: Scalar>(g: &CoxeterGroup<F>, c: &CoxeterElement, x: &Root<F>, y: &Root<F>) -> F {
        let n = g.rank();
        let pos = |s: usize| c.word().iter().position(|&t| t == s).unwrap();
        let e = |i: usize, j: usize| -> F {
            if i == j {
                F::one()
            } else if pos(i) > pos(j) {
                g.cartan().entry(i, j).clone()
            } else {
                F::zero()
            }
        };
        let delta = g.cartan().delta();
        let mut total = F::zero();
        for i in 0..n {
            for j in 0..n {
                let xy = x.coords[i].clone() * delta[i].clone() * y.coords[j].clone() * e(i, j);
                let yx = y.coords[i].clone() * delta[i].clone() * x.coords[j].clone() * e(i, j);
                total = total + xy - yx;
            }
        }
        total
    }
    fn det<F: Scalar>(a: &Root<F>, b: &Root<F>, z: &Root<F>) -> F {
        let m = |r: &Root<F>, i: usize| r.coords[i].clone();
        m(a, 0) * (m(b, 1) * m(z, 2) - m(b, 2) * m(z, 1))
            - m(a, 1) * (m(b, 0) * m(z, 2) - m(b, 2) * m(z, 0))
            + m(a, 2) * (m(b, 0) * m(z, 1) - m(b, 1) * m(z, 0))
    }
    fn run<F: Scalar>(g: &CoxeterGroup<F>, tag: &str) -> Result<usize, String> {
        // A reflection of length 2k+1 is an inversion of a chamber of
        // length k+1, so chambers up to length 5 reach every ℓ(t) ≤ 8.
        let roots: Vec<Root<F>> = g
            .elements_up_to(5)
            .iter()
            .flat_map(|w| w.inversions())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .filter(|t| g.reflection_element(t).length() <= 8)
            .map(|t| t.root().clone())
            .collect();
        let mut pairs = 0;
        for c in coxeter_elements(g) {
            let zeta = g.zeta(&c).map_err(|e| e.to_string())?;
            // ζ is a (−1)-eigenvector of c.
            let image = c.word().iter().rev().fold(zeta.clone(), |x, &s| {
                g.reflect(
                    &cambrian::coxeter::Reflection::from_root(&g.simple_root(s)),
                    &x,
                )
            });
            ensure(image == zeta.neg(), || {
                format!("{tag}: ζ is not a (−1)-eigenvector")
            })?;
            for a in &roots {
                for b in &roots {
                    pairs += 1;
                    let w = omega(g, &c, a, b);
                    ensure(w == g.omega(&c, a, b), || {
                        format!("{tag}: ω differs from the library")
                    })?;
                    ensure(w.sign() == det(a, b, &zeta).sign(), || {
                        format!("{tag} c={}: sign mismatch", g.compact_word(c.word()))
                    })?;
                }
            }
        }
        Ok(pairs)
    }
    let mut pairs = run(&catalog::type_b3::<Rational>().unwrap(), "B3")?;
    pairs += run(&catalog::affine_a2::<Rational>().unwrap(), "A~2")?;
    pairs += run(&catalog::affine_g2::<Rational>().unwrap(), "G~2")?;
    let h = catalog::hyperbolic_542::<QuadraticNumber>().unwrap();
    pairs += run(&h, "(5,4,2)")?;
    let c = cox(&h, "rst");
    let word = h.parse_compact("rstrsts").unwrap();
    ensure(
        h.compatible_reflection_sequence(&c, &word) == Ok(true),
        || "rstrsts is not compatible".into(),
    )?;
    ensure(greedy_sortable(&h, &c, &h.from_word(&word)), || {
        "rstrsts is not rst-sortable".into()
    })?;
    Ok(format!(
        "{pairs} root pairs over every c; rstrsts compatible"
    ))
}

fn rendering() -> Outcome {
    let g = catalog::affine_g2::<Rational>().unwrap();
    let c = cox(&g, "srt");
    let spec = RenderSpec::default();
    let first = g.render_svg(&c, &spec).map_err(|e| e.to_string())?;
    let second = g.render_svg(&c, &spec).map_err(|e| e.to_string())?;
    ensure(first == second, || "two renders differ".into())?;
    let shaded: BTreeSet<String> = first
        .lines()
        .filter(|l| l.contains("class=\"chamber sortable\""))
        .filter_map(|l| {
            let start = l.find("data-word=\"")? + 11;
            Some(l[start..start + l[start..].find('"')?].to_string())
        })
        .collect();
    let want: BTreeSet<String> = g
        .elements_up_to(spec.length_cap)
        .iter()
        .filter(|w| greedy_sortable(&g, &c, w))
        .map(|w| g.compact_word(w.word()))
        .collect();
    ensure(shaded == want, || {
        format!("{} shaded, {} sortable", shaded.len(), want.len())
    })?;
    let listed: BTreeSet<String> = g
        .enumerate_sortables(&c, spec.length_cap)
        .iter()
        .map(|w| g.compact_word(w.word()))
        .collect();
    ensure(listed == want, || {
        "enumeration differs from the oracle".into()
    })?;
    Ok(format!(
        "{} shaded chambers, {} bytes, identical",
        shaded.len(),
        first.len()
    ))
}

fn main() -> ExitCode {
    let checks: [(&str, u64, fn() -> Outcome); 12] = [
        (
            "A3 sortables match the listed fourteen",
            1,
            a3_listed_sortables,
        ),
        ("Catalan counts in A2, A3, A4", 10, catalan_counts),
        ("A~2 cone walls of pqrpr", 1, affine_a2_cone_walls),
        ("fiber description of pidown", 60, fiber_description),
        (
            "word, recursive and aligned sortability agree",
            60,
            three_way_agreement,
        ),
        ("pidown preserves meets and joins", 60, semilattice_laws),
        ("reflection functor round trips", 120, reflection_functor),
        ("nc is a bijection onto [1,c]_T", 120, noncrossing_map),
        (
            "canonical join representations",
            120,
            canonical_join_representations,
        ),
        ("Cambrian fans and stars of faces", 300, fan_and_stars),
        ("omega signs and zeta orientation", 60, omega_orientation),
        ("rendering shades the sortables", 60, rendering),
    ];
    let mut failed = 0;
    for (label, limit, run) in checks {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > Duration::from_secs(limit) => {
                Err(format!("{detail}; took longer than the {limit} s limit"))
            }
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS  {label} ({:.2} s): {detail}", elapsed.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("FAIL  {label} ({:.2} s): {why}", elapsed.as_secs_f64());
            }
        }
    }
    println!("{} of 12 acceptance checks passed", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
