//! Cambrian cones, chamber membership, the fan check inside the Tits cone,
//! Tits-cone membership of points, and stars of faces.
//!
//! Points of the dual space V* are written by their values on the simple
//! roots, so ⟨x, β⟩ is the dot product of coordinate vectors. The chamber wD
//! is spanned by the rows of the matrix of w⁻¹.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::Serialize;

use crate::coxeter::{CoxeterGroup, GroupElement, Root};
use crate::error::{Error, Result};
use crate::forms::CoxeterElement;
use crate::linalg;
use crate::scalar::Scalar;

/// Largest rank for the exact face checks.
pub const MAX_FAN_RANK: usize = 4;

/// A closed simplicial cone {x : ⟨x, β⟩ ≥ 0 for β in normals}.
#[derive(Clone, PartialEq, Eq)]
pub struct Cone<F> {
    pub normals: Vec<Root<F>>,
    /// The sortable element whose cone this is.
    pub source: GroupElement<F>,
}

impl<F: Scalar> std::fmt::Debug for Cone<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Cone")
            .field("normals", &self.normals)
            .finish()
    }
}

impl<F: Scalar> Cone<F> {
    pub fn contains(&self, x: &[F]) -> bool {
        self.normals
            .iter()
            .all(|b| !linalg::dot(x, &b.coords).is_negative())
    }

    /// Indices of the normals vanishing at x.
    fn zero_set(&self, x: &[F]) -> BTreeSet<usize> {
        (0..self.normals.len())
            .filter(|&i| linalg::dot(x, &self.normals[i].coords).is_zero())
            .collect()
    }
}

/// Result of locating a point of V* by descent into D.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TitsMembership<F> {
    /// The point lies in the interior of wD.
    InTits(GroupElement<F>),
    /// The descent reached D with the point on a wall of D.
    Boundary(GroupElement<F>),
    /// No conclusion after this many reflections.
    NotInTits(usize),
}

/// A face of a Cambrian cone: v is the sortable element above it, J the
/// simple generators through it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceDescriptor<F> {
    pub v: GroupElement<F>,
    pub j: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub pair: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_chamber: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_point: Option<Vec<String>>,
    pub violation_kind: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FanReport {
    pub chambers: usize,
    pub cones: usize,
    pub cells: usize,
    pub violations: Vec<Violation>,
}

impl FanReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A relatively open cell wD_K of the Coxeter complex, w minimal in wW_K.
struct Cell<F> {
    chamber: GroupElement<F>,
    point: Vec<F>,
}

impl<F: Scalar> CoxeterGroup<F> {
    /// Cone_c(v), with normals C_c(v).
    pub fn cone_of(&self, c: &CoxeterElement, v: &GroupElement<F>) -> Result<Cone<F>> {
        let data = self.cc_data(c, v)?;
        Ok(Cone {
            normals: data.roots,
            source: v.clone(),
        })
    }

    /// wD ⊆ Cone_c(v), decided combinatorially: cov(v) ⊆ inv(w) and
    /// ufs_c(v) ∩ inv(w) = ∅.
    pub fn chamber_in_cone(
        &self,
        c: &CoxeterElement,
        v: &GroupElement<F>,
        w: &GroupElement<F>,
    ) -> bool {
        let Ok(ufs) = self.unforced_skips(c, v) else {
            return false;
        };
        self.cover_reflections(v).iter().all(|t| w.has_inversion(t))
            && ufs.iter().all(|t| !w.has_inversion(t))
    }

    /// The rays of wD: rows of the matrix of w⁻¹.
    pub fn chamber_rays(&self, w: &GroupElement<F>) -> Vec<Vec<F>> {
        w.inverse_matrix().rows()
    }

    /// A point in the relative interior of the face of wD where the simple
    /// coordinates in K vanish.
    fn cell_point(&self, w: &GroupElement<F>, k: &[usize]) -> Vec<F> {
        let rays = self.chamber_rays(w);
        let mut p = vec![F::zero(); self.rank()];
        for (s, ray) in rays.iter().enumerate() {
            if !k.contains(&s) {
                p = linalg::add(&p, ray);
            }
        }
        p
    }

    /// Locates x by reflecting it into D. Stops after `cap` reflections.
    pub fn tits_membership(&self, x: &[F], cap: usize) -> TitsMembership<F> {
        let a = self.cartan().a();
        let mut x = x.to_vec();
        let mut word = Vec::new();
        while let Some(s) = (0..self.rank()).find(|&s| x[s].is_negative()) {
            if word.len() >= cap {
                return TitsMembership::NotInTits(cap);
            }
            let xs = x[s].clone();
            for (t, xt) in x.iter_mut().enumerate() {
                *xt = xt.clone() - a.get(s, t).clone() * xs.clone();
            }
            word.push(s);
        }
        let w = self.from_word(&word);
        if x.iter().any(|v| v.is_zero()) {
            TitsMembership::Boundary(w)
        } else {
            TitsMembership::InTits(w)
        }
    }

    /// Every cell of the Coxeter complex all of whose incident chambers have
    /// length at most `region`, except the apex.
    fn cells(&self, chambers: &[GroupElement<F>], region: usize) -> Vec<Cell<F>> {
        let n = self.rank();
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) - 1 {
            let k: Vec<usize> = (0..n).filter(|&s| mask & (1 << s) != 0).collect();
            let Ok(w0) = self.longest_element(&k, region + 1) else {
                continue;
            };
            for w in chambers {
                if k.iter().any(|&s| w.has_right_descent(s)) {
                    continue;
                }
                if w.length() + w0.length() > region {
                    continue;
                }
                out.push(Cell {
                    chamber: w.clone(),
                    point: self.cell_point(w, &k),
                });
            }
        }
        out
    }

    /// Checks that the Cambrian cones of sortables of length at most
    /// `max_length` form a fan on the chambers of length at most
    /// `max_length + margin`.
    ///
    /// Three things are checked. Every chamber of length at most
    /// `max_length` lies in exactly one cone, which is the cone of its π↓^c
    /// and agrees with [`Self::chamber_in_cone`]. Every chamber in the region
    /// lies in at most one cone. For every pair of cones, the cells of the
    /// region lying in both make up a face of each: any cell of one cone on
    /// the face cut out by the normals vanishing on the shared cells lies in
    /// the other cone too.
    pub fn fan_check_in_tits(
        &self,
        c: &CoxeterElement,
        max_length: usize,
        margin: usize,
    ) -> Result<FanReport> {
        if self.rank() > MAX_FAN_RANK {
            return Err(Error::RankTooLarge(self.rank()));
        }
        let cones: Vec<Cone<F>> = self
            .enumerate_sortables(c, max_length)
            .iter()
            .map(|v| self.cone_of(c, v))
            .collect::<Result<_>>()?;
        Ok(self.check_cones(c, &cones, max_length, margin))
    }

    /// The checks of [`Self::fan_check_in_tits`] on caller-supplied cones,
    /// one per sortable element of length at most `max_length`.
    pub fn check_cones(
        &self,
        c: &CoxeterElement,
        cones: &[Cone<F>],
        max_length: usize,
        margin: usize,
    ) -> FanReport {
        let region = max_length + margin;
        let chambers = self.elements_up_to(region);
        let sortables: Vec<GroupElement<F>> = cones.iter().map(|k| k.source.clone()).collect();
        let cells = self.cells(&chambers, region);
        let mut violations = Vec::new();
        let name = |v: &GroupElement<F>| self.compact_word(v.word());

        for w in &chambers {
            let p = self.cell_point(w, &[]);
            let holders: Vec<usize> = (0..cones.len())
                .filter(|&i| cones[i].contains(&p))
                .collect();
            if w.length() <= max_length && holders.len() != 1 {
                violations.push(Violation {
                    pair: holders.iter().map(|&i| name(&sortables[i])).collect(),
                    witness_chamber: Some(name(w)),
                    witness_point: None,
                    violation_kind: format!("chamber lies in {} cones", holders.len()),
                });
                continue;
            }
            if holders.len() > 1 {
                violations.push(Violation {
                    pair: holders.iter().map(|&i| name(&sortables[i])).collect(),
                    witness_chamber: Some(name(w)),
                    witness_point: None,
                    violation_kind: "chamber lies in several cones".into(),
                });
                continue;
            }
            if let Some(&i) = holders.first() {
                let v = &sortables[i];
                if self.pidown(c, w) != *v || !self.chamber_in_cone(c, v, w) {
                    violations.push(Violation {
                        pair: vec![name(v)],
                        witness_chamber: Some(name(w)),
                        witness_point: None,
                        violation_kind: "geometric cone disagrees with pidown".into(),
                    });
                }
            }
        }

        // Per cone: which cells it contains and where its normals vanish.
        let inside: Vec<Vec<bool>> = cones
            .iter()
            .map(|cone| {
                cells
                    .iter()
                    .map(|cell| cone.contains(&cell.point))
                    .collect()
            })
            .collect();
        let zeros: Vec<HashMap<usize, BTreeSet<usize>>> = cones
            .iter()
            .enumerate()
            .map(|(i, cone)| {
                (0..cells.len())
                    .filter(|&k| inside[i][k])
                    .map(|k| (k, cone.zero_set(&cells[k].point)))
                    .collect()
            })
            .collect();
        for a in 0..cones.len() {
            for b in a + 1..cones.len() {
                let shared: Vec<usize> = (0..cells.len())
                    .filter(|&k| inside[a][k] && inside[b][k])
                    .collect();
                if shared.is_empty() {
                    continue;
                }
                for (x, y) in [(a, b), (b, a)] {
                    let face: BTreeSet<usize> = shared
                        .iter()
                        .map(|k| zeros[x][k].clone())
                        .reduce(|p, q| p.intersection(&q).copied().collect())
                        .unwrap_or_default();
                    let escape = zeros[x]
                        .iter()
                        .filter(|(k, z)| !inside[y][**k] && face.is_subset(z))
                        .map(|(k, _)| *k)
                        .min();
                    if let Some(k) = escape {
                        violations.push(Violation {
                            pair: vec![name(&sortables[x]), name(&sortables[y])],
                            witness_chamber: Some(name(&cells[k].chamber)),
                            witness_point: Some(
                                cells[k].point.iter().map(|v| v.to_string()).collect(),
                            ),
                            violation_kind: "intersection is not a face".into(),
                        });
                    }
                }
            }
        }
        FanReport {
            chambers: chambers.len(),
            cones: cones.len(),
            cells: cells.len(),
            violations,
        }
    }

    /// The element below a face and the Coxeter element Cox_c of W_J.
    ///
    /// Cox_c orders J so that s_i comes before s_j whenever
    /// ω_c(β_{w s_i w⁻¹}, β_{w s_j w⁻¹}) > 0; unordered pairs keep generator
    /// order.
    pub fn star_of_face(
        &self,
        c: &CoxeterElement,
        face: &FaceDescriptor<F>,
        cap: usize,
    ) -> Result<(GroupElement<F>, CoxeterElement)> {
        let v = &face.v;
        let mut j = face.j.clone();
        j.sort_unstable();
        j.dedup();
        if let Some(&s) = j.iter().find(|&&s| !v.has_right_descent(s)) {
            return Err(Error::NotAFace(format!(
                "{} is not a right descent of {}",
                self.name(s),
                self.compact_word(v.word())
            )));
        }
        let w0 = self
            .longest_element(&j, cap)
            .map_err(|_| Error::NotAFace("W_J is infinite".into()))?;
        let w = self.multiply(v, &w0);
        let roots: Vec<Root<F>> = j
            .iter()
            .map(|&s| self.apply(&w, &self.simple_root(s)).abs())
            .collect();
        let mut order = Vec::new();
        let mut left: Vec<usize> = (0..j.len()).collect();
        while !left.is_empty() {
            let pick = left
                .iter()
                .position(|&i| {
                    left.iter()
                        .all(|&k| k == i || !self.omega(c, &roots[k], &roots[i]).is_positive())
                })
                .ok_or_else(|| Error::Inconsistent("ω_c orientation of W_J has a cycle".into()))?;
            order.push(j[left.remove(pick)]);
        }
        Ok((w, CoxeterElement::parabolic(self, order)?))
    }

    /// Checks that π↓^{Cox_c} on W_J and x ↦ π↓^c(wx) have the same fibers.
    pub fn verify_star(
        &self,
        c: &CoxeterElement,
        face: &FaceDescriptor<F>,
        cap: usize,
    ) -> Result<Vec<Violation>> {
        let (w, cox) = self.star_of_face(c, face, cap)?;
        let j = cox.support();
        // W_J is the interval below its longest element.
        let elements = self.interval_below(&self.longest_element(&j, cap)?);
        let local: Vec<GroupElement<F>> = elements.iter().map(|x| self.pidown(&cox, x)).collect();
        let global: Vec<GroupElement<F>> = elements
            .iter()
            .map(|x| self.pidown(c, &self.multiply(&w, x)))
            .collect();
        let mut out = Vec::new();
        for a in 0..elements.len() {
            for b in a + 1..elements.len() {
                if (local[a] == local[b]) != (global[a] == global[b]) {
                    out.push(Violation {
                        pair: vec![
                            self.compact_word(elements[a].word()),
                            self.compact_word(elements[b].word()),
                        ],
                        witness_chamber: Some(self.compact_word(w.word())),
                        witness_point: None,
                        violation_kind: "star fibers differ".into(),
                    });
                }
            }
        }
        Ok(out)
    }

    /// Fibers of π↓^c on the given chambers, keyed by the sortable element.
    pub fn fibers(
        &self,
        c: &CoxeterElement,
        chambers: &[GroupElement<F>],
    ) -> HashMap<GroupElement<F>, Vec<GroupElement<F>>> {
        let mut out: HashMap<GroupElement<F>, Vec<GroupElement<F>>> = HashMap::new();
        for w in chambers {
            out.entry(self.pidown(c, w)).or_default().push(w.clone());
        }
        out
    }

    /// Chambers in the fiber of v on both sides of H_s, for each simple s.
    pub fn fiber_crossings(
        &self,
        c: &CoxeterElement,
        chambers: &[GroupElement<F>],
    ) -> Vec<(GroupElement<F>, usize)> {
        let mut out = Vec::new();
        let mut fibers: Vec<_> = self.fibers(c, chambers).into_iter().collect();
        fibers.sort_by(|a, b| a.0.cmp(&b.0));
        for (v, fiber) in fibers {
            for s in 0..self.rank() {
                let sides: HashSet<bool> = fiber.iter().map(|w| w.has_left_descent(s)).collect();
                if sides.len() > 1 {
                    out.push((v.clone(), s));
                }
            }
        }
        out
    }
}
