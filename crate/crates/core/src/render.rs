//! Deterministic SVG pictures of rank-three Cambrian fans.
//!
//! Chamber shading and bold walls come from the exact combinatorics;
//! floating point is used only to place points on the page.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::coxeter::{CoxeterGroup, GroupElement};
use crate::error::{Error, Result};
use crate::fan::TitsMembership;
use crate::forms::CoxeterElement;
use crate::linalg::{self, Matrix};
use crate::scalar::Scalar;
use crate::sortable::SortMethod;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Projection {
    /// Affine groups: the slice ⟨x, δ⟩ = 1 of the Tits half-space.
    AffineSlice,
    /// Finite groups: the unit sphere projected from the antipode of D.
    Stereographic,
    /// Hyperbolic groups: the hyperboloid sent to the Poincaré disk.
    PoincareDisk,
}

impl FromStr for Projection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "affine-slice" => Ok(Projection::AffineSlice),
            "stereographic" => Ok(Projection::Stereographic),
            "poincare-disk" => Ok(Projection::PoincareDisk),
            other => Err(Error::Parse(format!("unknown projection {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderSpec {
    pub projection: Projection,
    pub length_cap: usize,
    pub highlight_sortable: bool,
    /// Width and height of the image in pixels.
    pub size: u32,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            projection: Projection::AffineSlice,
            length_cap: 8,
            highlight_sortable: true,
            size: 800,
        }
    }
}

type V3 = [f64; 3];

fn dot3(a: &V3, b: &V3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn mat_vec(m: &[V3; 3], x: &V3) -> V3 {
    [dot3(&m[0], x), dot3(&m[1], x), dot3(&m[2], x)]
}

fn to_f64<F: Scalar>(m: &Matrix<F>) -> [V3; 3] {
    let mut out = [[0.0; 3]; 3];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = m.get(i, j).to_f64();
        }
    }
    out
}

/// Exact inverse of a 3×3 matrix by cofactors.
fn inverse<F: Scalar>(m: &Matrix<F>) -> Option<Matrix<F>> {
    let det = m.determinant();
    if det.is_zero() {
        return None;
    }
    let g = |i: usize, j: usize| m.get(i % 3, j % 3).clone();
    let mut inv = Matrix::zero(3);
    for i in 0..3 {
        for j in 0..3 {
            // Cofactor of (j, i).
            let c = g(j + 1, i + 1) * g(j + 2, i + 2) - g(j + 1, i + 2) * g(j + 2, i + 1);
            inv.set(i, j, c / det.clone());
        }
    }
    Some(inv)
}

/// Lower-triangular L with L Lᵀ = m, for m positive definite.
fn cholesky(m: &[V3; 3]) -> [V3; 3] {
    let mut l = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..=i {
            let s: f64 = (0..j).map(|k| l[i][k] * l[j][k]).sum();
            if i == j {
                l[i][j] = (m[i][i] - s).max(0.0).sqrt();
            } else {
                l[i][j] = (m[i][j] - s) / l[j][j];
            }
        }
    }
    l
}

enum Projector {
    Slice {
        delta: V3,
        pair: (usize, usize),
        /// Lᵀ for L Lᵀ = G⁻¹, G the form on the finite pair.
        frame: [[f64; 2]; 2],
    },
    Sphere {
        /// Lᵀ for L Lᵀ = K⁻¹.
        frame: [V3; 3],
        pole: V3,
        e1: V3,
        e2: V3,
    },
    Disk {
        q: [V3; 3],
        e: [V3; 3],
    },
}

impl Projector {
    fn project(&self, x: &V3) -> Option<(f64, f64)> {
        match self {
            Projector::Slice { delta, pair, frame } => {
                let h = dot3(x, delta);
                if h <= 1e-12 {
                    return None;
                }
                let y = [x[pair.0] / h, x[pair.1] / h];
                Some((
                    frame[0][0] * y[0] + frame[0][1] * y[1],
                    frame[1][0] * y[0] + frame[1][1] * y[1],
                ))
            }
            Projector::Sphere {
                frame,
                pole,
                e1,
                e2,
            } => {
                let e = mat_vec(frame, x);
                let norm = dot3(&e, &e).sqrt();
                let u = [e[0] / norm, e[1] / norm, e[2] / norm];
                let k = 1.0 + dot3(&u, pole);
                if k < 1e-9 {
                    return None;
                }
                Some((dot3(&u, e1) / k, dot3(&u, e2) / k))
            }
            Projector::Disk { q, e } => {
                let form = |a: &V3, b: &V3| dot3(a, &mat_vec(q, b));
                let t = -form(x, &e[0]);
                let a = form(x, &e[1]);
                let b = form(x, &e[2]);
                let n2 = t * t - a * a - b * b;
                if n2 <= 1e-12 || t <= 0.0 {
                    return None;
                }
                let n = n2.sqrt();
                Some((a / (t + n), b / (t + n)))
            }
        }
    }

    fn is_curved(&self) -> bool {
        !matches!(self, Projector::Slice { .. })
    }
}

impl<F: Scalar> CoxeterGroup<F> {
    fn projector(&self, projection: Projection) -> Result<Projector> {
        let k = self.form_matrix();
        let kf = to_f64(k);
        match projection {
            Projection::AffineSlice => {
                let kernel = linalg::nullspace(&k.rows(), 3);
                let null = match kernel.as_slice() {
                    [v] if v.iter().all(|x| x.is_positive()) => v.clone(),
                    [v] if v.iter().all(|x| x.is_negative()) => linalg::neg(v),
                    _ => return Err(Error::Projection("the form is not affine".into())),
                };
                let pair = (0..3)
                    .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
                    .find(|&(i, j)| {
                        (k.get(i, i).clone() * k.get(j, j).clone()
                            - k.get(i, j).clone() * k.get(j, i).clone())
                        .is_positive()
                    })
                    .ok_or_else(|| Error::Projection("no finite rank-two parabolic".into()))?;
                let (i, j) = pair;
                let g = [[kf[i][i], kf[i][j]], [kf[j][i], kf[j][j]]];
                let det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
                let ginv = [
                    [g[1][1] / det, -g[0][1] / det],
                    [-g[1][0] / det, g[0][0] / det],
                ];
                let l00 = ginv[0][0].sqrt();
                let l10 = ginv[1][0] / l00;
                let l11 = (ginv[1][1] - l10 * l10).max(0.0).sqrt();
                Ok(Projector::Slice {
                    delta: [null[0].to_f64(), null[1].to_f64(), null[2].to_f64()],
                    pair,
                    frame: [[l00, l10], [0.0, l11]],
                })
            }
            Projection::Stereographic => {
                let minors_positive = k.get(0, 0).is_positive()
                    && (k.get(0, 0).clone() * k.get(1, 1).clone()
                        - k.get(0, 1).clone() * k.get(1, 0).clone())
                    .is_positive()
                    && k.determinant().is_positive();
                if !minors_positive {
                    return Err(Error::Projection("the group is not finite".into()));
                }
                let inv = to_f64(&inverse(k).expect("definite form is invertible"));
                let l = cholesky(&inv);
                let frame = [
                    [l[0][0], l[1][0], l[2][0]],
                    [l[0][1], l[1][1], l[2][1]],
                    [l[0][2], l[1][2], l[2][2]],
                ];
                let rho = mat_vec(&frame, &[1.0, 1.0, 1.0]);
                let n = dot3(&rho, &rho).sqrt();
                let pole = [rho[0] / n, rho[1] / n, rho[2] / n];
                let (e1, e2) = plane_basis(&pole);
                Ok(Projector::Sphere {
                    frame,
                    pole,
                    e1,
                    e2,
                })
            }
            Projection::PoincareDisk => {
                let det = k.determinant();
                let pair_definite =
                    (0..3)
                        .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
                        .any(|(i, j)| {
                            (k.get(i, i).clone() * k.get(j, j).clone()
                                - k.get(i, j).clone() * k.get(j, i).clone())
                            .is_positive()
                        });
                if !(det.is_negative() && pair_definite) {
                    return Err(Error::Projection(
                        "the form does not have signature (2,1)".into(),
                    ));
                }
                let minus_rho = vec![-F::one(), -F::one(), -F::one()];
                if !matches!(
                    self.tits_membership(&minus_rho, 200),
                    TitsMembership::NotInTits(_)
                ) {
                    return Err(Error::Projection(
                        "the Tits cone is not a proper cone".into(),
                    ));
                }
                let q = to_f64(&inverse(k).expect("nondegenerate form is invertible"));
                let form = |a: &V3, b: &V3| dot3(a, &mat_vec(&q, b));
                let rho = [1.0, 1.0, 1.0];
                let qr = form(&rho, &rho);
                if qr >= 0.0 {
                    return Err(Error::Projection("D does not meet the hyperboloid".into()));
                }
                let e0 = scale3(&rho, 1.0 / (-qr).sqrt());
                let mut basis = vec![e0];
                for cand in [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]] {
                    if basis.len() == 3 {
                        break;
                    }
                    let mut v = cand;
                    for (idx, b) in basis.iter().enumerate() {
                        let sign = if idx == 0 { -1.0 } else { 1.0 };
                        let c = sign * form(&v, b);
                        v = [v[0] - c * b[0], v[1] - c * b[1], v[2] - c * b[2]];
                    }
                    let nv = form(&v, &v);
                    if nv > 1e-9 {
                        basis.push(scale3(&v, 1.0 / nv.sqrt()));
                    }
                }
                Ok(Projector::Disk {
                    q,
                    e: [basis[0], basis[1], basis[2]],
                })
            }
        }
    }

    /// Draws the chambers wD with ℓ(w) ≤ cap, shading c-sortable chambers
    /// and drawing walls between different fibers of π↓^c in bold.
    pub fn render_svg(&self, c: &CoxeterElement, spec: &RenderSpec) -> Result<String> {
        if self.rank() != 3 {
            return Err(Error::RankNotThree(self.rank()));
        }
        let projector = self.projector(spec.projection)?;
        let steps = if projector.is_curved() { 12 } else { 1 };
        let chambers = self.elements_up_to(spec.length_cap);
        let ray_f64 = |w: &GroupElement<F>| -> Vec<V3> {
            self.chamber_rays(w)
                .iter()
                .map(|r| [r[0].to_f64(), r[1].to_f64(), r[2].to_f64()])
                .collect()
        };
        let edge = |a: &V3, b: &V3| -> Option<Vec<(f64, f64)>> {
            (0..steps)
                .map(|i| {
                    let t = i as f64 / steps as f64;
                    projector.project(&[
                        a[0] * (1.0 - t) + b[0] * t,
                        a[1] * (1.0 - t) + b[1] * t,
                        a[2] * (1.0 - t) + b[2] * t,
                    ])
                })
                .collect()
        };

        let mut polygons = Vec::new();
        // The pole of the stereographic projection is inside w0 D, whose
        // image is the outside of a triangle. It is drawn as the background.
        let mut exterior = None;
        for w in &chambers {
            if matches!(projector, Projector::Sphere { .. }) && w.right_descents().len() == 3 {
                exterior = Some(w.clone());
                continue;
            }
            let rays = ray_f64(w);
            let mut outline = Vec::new();
            let mut ok = true;
            for i in 0..3 {
                match edge(&rays[i], &rays[(i + 1) % 3]) {
                    Some(pts) => outline.extend(pts),
                    None => ok = false,
                }
            }
            if ok {
                polygons.push((w.clone(), outline, rays));
            }
        }

        let mut bold = Vec::new();
        for (w, _, rays) in &polygons {
            let v = self.pidown(c, w);
            for s in 0..3 {
                if w.has_right_descent(s) {
                    continue;
                }
                let ws = self.mul_gen_right(w, s);
                if ws.length() > spec.length_cap || self.pidown(c, &ws) == v {
                    continue;
                }
                let others: Vec<usize> = (0..3).filter(|&t| t != s).collect();
                if let Some(mut pts) = edge(&rays[others[0]], &rays[others[1]]) {
                    if let Some(end) = projector.project(&rays[others[1]]) {
                        pts.push(end);
                    }
                    bold.push(pts);
                }
            }
        }

        let (lo, hi) = match projector {
            Projector::Disk { .. } => ((-1.0, -1.0), (1.0, 1.0)),
            _ => bounds(polygons.iter().flat_map(|(_, o, _)| o.iter())),
        };
        let size = spec.size as f64;
        let margin = 0.04 * size;
        let span = (hi.0 - lo.0).max(hi.1 - lo.1).max(1e-9);
        let k = (size - 2.0 * margin) / span;
        let cx = (lo.0 + hi.0) / 2.0;
        let cy = (lo.1 + hi.1) / 2.0;
        let map = |p: &(f64, f64)| (size / 2.0 + k * (p.0 - cx), size / 2.0 - k * (p.1 - cy));

        let mut out = String::new();
        let _ = writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{0}\" viewBox=\"0 0 {0} {0}\">",
            spec.size
        );
        let _ = writeln!(
            out,
            "<rect width=\"{0}\" height=\"{0}\" fill=\"white\"/>",
            spec.size
        );
        if let Projector::Disk { .. } = projector {
            let (x, y) = map(&(0.0, 0.0));
            let _ = writeln!(
                out,
                "<circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"{:.3}\" fill=\"none\" stroke=\"black\"/>",
                k
            );
        }
        if let Some(w) = &exterior {
            let sortable = spec.highlight_sortable && self.is_sortable(c, w, SortMethod::Word);
            let _ =
                writeln!(
                out,
                "<rect class=\"{}\" data-word=\"{}\" width=\"{2}\" height=\"{2}\" fill=\"{3}\"/>",
                if sortable { "chamber sortable" } else { "chamber" },
                self.compact_word(w.word()),
                spec.size,
                if sortable { "#bbbbbb" } else { "white" }
            );
        }
        for (w, outline, _) in &polygons {
            let sortable = spec.highlight_sortable && self.is_sortable(c, w, SortMethod::Word);
            let points: Vec<String> = outline
                .iter()
                .map(|p| {
                    let (x, y) = map(p);
                    format!("{x:.3},{y:.3}")
                })
                .collect();
            let _ = writeln!(
                out,
                "<polygon class=\"{}\" data-word=\"{}\" points=\"{}\" fill=\"{}\" stroke=\"#888888\" stroke-width=\"0.5\"/>",
                if sortable { "chamber sortable" } else { "chamber" },
                self.compact_word(w.word()),
                points.join(" "),
                if sortable { "#bbbbbb" } else { "white" }
            );
        }
        for pts in &bold {
            let points: Vec<String> = pts
                .iter()
                .map(|p| {
                    let (x, y) = map(p);
                    format!("{x:.3},{y:.3}")
                })
                .collect();
            let _ = writeln!(
                out,
                "<polyline class=\"wall\" points=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"2.5\"/>",
                points.join(" ")
            );
        }
        out.push_str("</svg>\n");
        Ok(out)
    }
}

fn scale3(v: &V3, k: f64) -> V3 {
    [v[0] * k, v[1] * k, v[2] * k]
}

/// Two orthonormal vectors orthogonal to the unit vector n.
fn plane_basis(n: &V3) -> (V3, V3) {
    let seed = if n[0].abs() < 0.9 {
        [1.0, 0.0, 0.0]
    } else {
        [0.0, 1.0, 0.0]
    };
    let d = dot3(&seed, n);
    let a = [seed[0] - d * n[0], seed[1] - d * n[1], seed[2] - d * n[2]];
    let a = scale3(&a, 1.0 / dot3(&a, &a).sqrt());
    let b = [
        n[1] * a[2] - n[2] * a[1],
        n[2] * a[0] - n[0] * a[2],
        n[0] * a[1] - n[1] * a[0],
    ];
    (a, b)
}

fn bounds<'a>(points: impl Iterator<Item = &'a (f64, f64)>) -> ((f64, f64), (f64, f64)) {
    let mut lo = (f64::INFINITY, f64::INFINITY);
    let mut hi = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in points {
        lo = (lo.0.min(p.0), lo.1.min(p.1));
        hi = (hi.0.max(p.0), hi.1.max(p.1));
    }
    if lo.0 > hi.0 {
        ((-1.0, -1.0), (1.0, 1.0))
    } else {
        (lo, hi)
    }
}
