//! Generalized rank-two parabolic subgroups: the reflections whose roots lie
//! in a plane spanned by two roots.

use std::cmp::Ordering;
use std::collections::HashSet;

use crate::coxeter::{CoxeterGroup, Reflection, Root};
use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::Scalar;

/// Default cap for rank-two searches.
pub const DEFAULT_RANK_TWO_CAP: usize = 64;

/// The order of r1·r2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DihedralOrder {
    Finite(usize),
    Infinite,
}

/// Position in the sequence u₁, u₂, …, u_m. `FromEnd(k)` is u_{m−k}, used
/// when m = ∞.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankTwoIndex {
    Front(usize),
    FromEnd(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SegmentType {
    Initial(usize),
    Final(usize),
    Neither,
}

/// A generalized rank-two parabolic subgroup with canonical generators
/// r1, r2. The reflections are u₁ = r1, u₂ = r1r2r1, …, u_m = r2.
#[derive(Clone, PartialEq, Eq)]
pub struct RankTwoSubgroup<F> {
    pub r1: Reflection<F>,
    pub r2: Reflection<F>,
    pub m: DihedralOrder,
}

impl<F: Scalar> std::fmt::Debug for RankTwoSubgroup<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RankTwoSubgroup")
            .field("r1", &self.r1)
            .field("r2", &self.r2)
            .field("m", &self.m)
            .finish()
    }
}

impl<F: Scalar> RankTwoSubgroup<F> {
    /// Swaps the roles of r1 and r2, reversing the u-order.
    pub fn reversed(&self) -> Self {
        RankTwoSubgroup {
            r1: self.r2.clone(),
            r2: self.r1.clone(),
            m: self.m,
        }
    }

    /// Coordinates of `x` in the basis (β_r1, β_r2), if `x` lies in the plane.
    pub fn plane_coordinates(&self, x: &Root<F>) -> Option<(F, F)> {
        plane_coordinates(self.r1.root(), self.r2.root(), x)
    }

    pub fn contains(&self, t: &Reflection<F>) -> bool {
        self.plane_coordinates(t.root()).is_some()
    }

    pub fn is_commutative(&self) -> bool {
        self.m == DihedralOrder::Finite(2)
    }
}

fn plane_coordinates<F: Scalar>(a: &Root<F>, b: &Root<F>, x: &Root<F>) -> Option<(F, F)> {
    let sol = linalg::solve_in_span(&[a.coords.clone(), b.coords.clone()], &x.coords)?;
    let mut it = sol.into_iter();
    Some((it.next()?, it.next()?))
}

/// Orientation of `y` relative to `x` inside the plane with basis (a, b).
fn cross<F: Scalar>(x: &(F, F), y: &(F, F)) -> Ordering {
    (x.0.clone() * y.1.clone() - x.1.clone() * y.0.clone()).sign()
}

impl<F: Scalar> CoxeterGroup<F> {
    /// The two extreme roots of a set of positive roots in the plane (a, b):
    /// the first has every other root counterclockwise of it, the second
    /// clockwise.
    fn plane_extremes(&self, a: &Root<F>, b: &Root<F>, roots: &[Root<F>]) -> (Root<F>, Root<F>) {
        let coords: Vec<(F, F)> = roots
            .iter()
            .map(|r| plane_coordinates(a, b, r).expect("root lies in the plane"))
            .collect();
        let mut lo = 0;
        let mut hi = 0;
        for i in 1..roots.len() {
            if cross(&coords[i], &coords[lo]) == Ordering::Greater {
                lo = i;
            }
            if cross(&coords[hi], &coords[i]) == Ordering::Greater {
                hi = i;
            }
        }
        (roots[lo].clone(), roots[hi].clone())
    }

    /// Inversions of the reflection with root `r` that lie in the plane.
    fn plane_inversions(&self, r: &Root<F>, a: &Root<F>, b: &Root<F>) -> Vec<Root<F>> {
        self.reflection_element(&Reflection::from_root(r))
            .inversion_roots()
            .iter()
            .filter(|x| plane_coordinates(a, b, x).is_some())
            .cloned()
            .collect()
    }

    /// The generalized rank-two parabolic subgroup containing t1 and t2.
    ///
    /// Canonical generators are the reflections r in the plane whose only
    /// inversion in the plane is r itself. Candidates are the extreme roots
    /// among the current pair and their in-plane inversions; the search stops
    /// once both extremes certify themselves.
    pub fn span_subgroup(
        &self,
        t1: &Reflection<F>,
        t2: &Reflection<F>,
        cap: usize,
    ) -> Result<RankTwoSubgroup<F>> {
        let key = (t1.clone(), t2.clone(), cap);
        if let Some(sub) = self.rank_two_cache().lock().expect("cache lock").get(&key) {
            return Ok(sub.clone());
        }
        let sub = self.search_span_subgroup(t1, t2, cap)?;
        self.rank_two_cache()
            .lock()
            .expect("cache lock")
            .insert(key, sub.clone());
        Ok(sub)
    }

    fn search_span_subgroup(
        &self,
        t1: &Reflection<F>,
        t2: &Reflection<F>,
        cap: usize,
    ) -> Result<RankTwoSubgroup<F>> {
        let (p, q) = (t1.root().clone(), t2.root().clone());
        if linalg::rank(&[p.coords.clone(), q.coords.clone()]) < 2 {
            return Err(Error::Inconsistent(
                "span_subgroup needs two distinct reflections".into(),
            ));
        }
        let (mut a, mut b) = self.plane_extremes(&p, &q, &[p.clone(), q.clone()]);
        let mut certified = false;
        for _ in 0..cap {
            let na = self.plane_inversions(&a, &p, &q);
            let nb = self.plane_inversions(&b, &p, &q);
            if na.len() == 1 && nb.len() == 1 {
                certified = true;
                break;
            }
            let mut pool = vec![a.clone(), b.clone()];
            pool.extend(na);
            pool.extend(nb);
            // Reflecting by the extremes reaches roots on the far side of an
            // isotropic direction, which inversions alone never do.
            let ta = Reflection::from_root(&a);
            let tb = Reflection::from_root(&b);
            let reflected: Vec<Root<F>> = pool
                .iter()
                .flat_map(|x| [self.reflect(&ta, x).abs(), self.reflect(&tb, x).abs()])
                .collect();
            pool.extend(reflected);
            let (a2, b2) = self.plane_extremes(&p, &q, &pool);
            if a2 == a && b2 == b {
                return Err(Error::Inconsistent(
                    "non-canonical extreme root with no progress".into(),
                ));
            }
            a = a2;
            b = b2;
        }
        if !certified {
            return Err(Error::CapTooSmall(cap));
        }
        let r1 = Reflection::from_root(&a);
        let r2 = Reflection::from_root(&b);
        let m = self.dihedral_order(&r1, &r2, cap);
        Ok(RankTwoSubgroup { r1, r2, m })
    }

    /// The order of r1·r2 for a canonical pair.
    fn dihedral_order(&self, r1: &Reflection<F>, r2: &Reflection<F>, cap: usize) -> DihedralOrder {
        let (a, b) = (r1.root(), r2.root());
        let p = self.form(&self.coroot(a), b) * self.form(&self.coroot(b), a);
        if p >= F::from_int(4) {
            return DihedralOrder::Infinite;
        }
        let sub = RankTwoSubgroup {
            r1: r1.clone(),
            r2: r2.clone(),
            m: DihedralOrder::Infinite,
        };
        for k in 1..=cap {
            if self.u_term(&sub, k).root() == b {
                return DihedralOrder::Finite(k);
            }
        }
        DihedralOrder::Infinite
    }

    /// u_k counted from r1: (r1 r2)^i β_r1 for k = 2i+1 and
    /// (r1 r2)^i r1 β_r2 for k = 2i+2.
    fn u_term(&self, sub: &RankTwoSubgroup<F>, k: usize) -> Reflection<F> {
        let mut root = if k % 2 == 1 {
            sub.r1.root().clone()
        } else {
            self.reflect(&sub.r1, sub.r2.root())
        };
        for _ in 0..(k - 1) / 2 {
            root = self.reflect(&sub.r1, &self.reflect(&sub.r2, &root));
        }
        Reflection::from_root(&root)
    }

    /// u₁, …, u_k.
    pub fn reflection_prefix(&self, sub: &RankTwoSubgroup<F>, k: usize) -> Vec<Reflection<F>> {
        let k = match sub.m {
            DihedralOrder::Finite(m) => k.min(m),
            DihedralOrder::Infinite => k,
        };
        (1..=k).map(|i| self.u_term(sub, i)).collect()
    }

    /// u_m, u_{m−1}, …, k terms counted from r2.
    pub fn reflection_suffix(&self, sub: &RankTwoSubgroup<F>, k: usize) -> Vec<Reflection<F>> {
        self.reflection_prefix(&sub.reversed(), k)
    }

    /// Position of t in the u-order, searching `cap` terms from each end.
    pub fn rank_two_position(
        &self,
        sub: &RankTwoSubgroup<F>,
        t: &Reflection<F>,
        cap: usize,
    ) -> Option<RankTwoIndex> {
        if !sub.contains(t) {
            return None;
        }
        let rev = sub.reversed();
        for k in 1..=cap {
            if self.u_term(sub, k) == *t {
                return Some(RankTwoIndex::Front(k));
            }
            if self.u_term(&rev, k) == *t {
                return Some(match sub.m {
                    DihedralOrder::Finite(m) => RankTwoIndex::Front(m + 1 - k),
                    DihedralOrder::Infinite => RankTwoIndex::FromEnd(k - 1),
                });
            }
        }
        None
    }

    /// Classifies the reflections of `set` lying in `sub` against the u-order.
    pub fn segment_type(&self, sub: &RankTwoSubgroup<F>, set: &[Reflection<F>]) -> SegmentType {
        let inside: HashSet<&Reflection<F>> = set.iter().filter(|t| sub.contains(t)).collect();
        let k = inside.len();
        if k == 0 {
            return SegmentType::Initial(0);
        }
        if let DihedralOrder::Finite(m) = sub.m {
            if k > m {
                return SegmentType::Neither;
            }
        }
        let prefix = self.reflection_prefix(sub, k);
        if prefix.len() == k && prefix.iter().all(|t| inside.contains(t)) {
            return SegmentType::Initial(k);
        }
        let suffix = self.reflection_suffix(sub, k);
        if suffix.len() == k && suffix.iter().all(|t| inside.contains(t)) {
            return SegmentType::Final(k);
        }
        SegmentType::Neither
    }
}
