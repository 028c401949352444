//! Triangle meshes sampled from a parametric surface, written as OBJ.

use std::collections::HashMap;
use std::io::Write;

use cmc_core::surface::frame_at;
use cmc_core::{Cycle, Surface, Tolerances, Vec3};

#[derive(Debug, Clone, Default)]
pub struct Mesh {
    pub vertices: Vec<[f64; 3]>,
    pub normals: Vec<[f64; 3]>,
    /// Counterclockwise about the normal, 0-based.
    pub faces: Vec<[usize; 3]>,
    /// A periodic direction whose seam did not close up.
    pub open_seam: bool,
}

/// `n` samples of `[a, b]`; the right end is dropped when `wrap`, and an
/// extra sample at `b` is added for a periodic direction whose seam does not
/// close up.
fn samples(a: f64, b: f64, n: usize, periodic: bool, wrap: bool) -> Vec<f64> {
    let steps = if periodic { n } else { n.saturating_sub(1).max(1) };
    let mut out: Vec<f64> = (0..n).map(|i| a + (b - a) * i as f64 / steps as f64).collect();
    if periodic && !wrap {
        out.push(b);
    }
    out
}

fn arr(v: Vec3) -> [f64; 3] {
    [v.x, v.y, v.z]
}

/// Whether `x(p) = x(p + period)` along a few lines across the seam.
fn seam_closes(surface: &Surface, along_u: bool) -> bool {
    let d = surface.domain();
    let (lo, hi) = if along_u { d.u } else { d.v };
    let (clo, chi) = if along_u { d.v } else { d.u };
    (0..5).all(|k| {
        let c = clo + (chi - clo) * (k as f64 + 0.5) / 5.0;
        let at = |p: f64| if along_u { surface.position(p, c) } else { surface.position(c, p) };
        match (at(lo), at(hi)) {
            (Ok(a), Ok(b)) => (a - b).norm() <= 1e-9 * (1.0 + a.norm()),
            _ => true,
        }
    })
}

/// Samples `surface` on an `nu x nv` vertex grid. Periodic directions wrap
/// when the seam closes up, otherwise the seam is left open with a duplicate
/// column; `poles` (bottom, top) cap the `v` ends with triangle fans.
/// Vertices in holes of the domain, or where the immersion fails, are
/// dropped together with their faces.
pub fn build(surface: &Surface, nu: usize, nv: usize, poles: &[Vec3]) -> Mesh {
    let d = surface.domain();
    let wrap_u = d.periodic_u && seam_closes(surface, true);
    let wrap_v = d.periodic_v && seam_closes(surface, false);
    let us = samples(d.u.0, d.u.1, nu, d.periodic_u, wrap_u);
    let vs = samples(d.v.0, d.v.1, nv, d.periodic_v, wrap_v);
    let (cu, cv) = (us.len(), vs.len());
    let mut mesh = Mesh { open_seam: (d.periodic_u && !wrap_u) || (d.periodic_v && !wrap_v), ..Mesh::default() };
    let mut index = vec![vec![None; cv]; cu];
    for (i, &u) in us.iter().enumerate() {
        for (j, &v) in vs.iter().enumerate() {
            if !d.contains(u, v) {
                continue;
            }
            if let Ok(f) = frame_at(surface, u, v) {
                index[i][j] = Some(mesh.vertices.len());
                mesh.vertices.push(arr(f.position()));
                mesh.normals.push(arr(f.normal));
            }
        }
    }
    let cells_u = if wrap_u { cu } else { cu.saturating_sub(1) };
    let cells_v = if wrap_v { cv } else { cv.saturating_sub(1) };
    for i in 0..cells_u {
        let i1 = (i + 1) % cu;
        for j in 0..cells_v {
            let j1 = (j + 1) % cv;
            if let (Some(a), Some(b), Some(c), Some(e)) = (index[i][j], index[i1][j], index[i1][j1], index[i][j1]) {
                mesh.faces.push([a, b, c]);
                mesh.faces.push([a, c, e]);
            }
        }
    }
    if poles.len() == 2 && wrap_u && !d.periodic_v {
        for (k, pole) in poles.iter().enumerate() {
            let j = if k == 0 { 0 } else { cv - 1 };
            let p = mesh.vertices.len();
            let avg = (0..cu)
                .filter_map(|i| index[i][j].map(|n| Vec3::from(mesh.normals[n])))
                .fold(Vec3::zero(), |s, n| s + n);
            mesh.vertices.push(arr(*pole));
            mesh.normals.push(arr(avg.normalized().unwrap_or(Vec3::e3())));
            for i in 0..cu {
                let i1 = (i + 1) % cu;
                if let (Some(a), Some(b)) = (index[i][j], index[i1][j]) {
                    mesh.faces.push(if k == 0 { [b, a, p] } else { [a, b, p] });
                }
            }
        }
    }
    mesh
}

/// Surface arclengths of the grid edges used by [`build`], `u`-edges first.
/// Periodic seams are included; edges leaving the domain are skipped.
pub fn edge_arclengths(surface: &Surface, nu: usize, nv: usize, tol: &Tolerances) -> cmc_core::Result<Vec<f64>> {
    let d = surface.domain();
    let us = samples(d.u.0, d.u.1, nu, d.periodic_u, false);
    let vs = samples(d.v.0, d.v.1, nv, d.periodic_v, false);
    let mut out = Vec::new();
    for (du, dv) in [(1, 0), (0, 1)] {
        for i in 0..us.len() - du {
            for j in 0..vs.len() - dv {
                let (a, b) = ([us[i], vs[j]], [us[i + du], vs[j + dv]]);
                if !d.contains(a[0], a[1]) || !d.contains(b[0], b[1]) {
                    continue;
                }
                let len = (b[0] - a[0]).hypot(b[1] - a[1]);
                let dir = [(b[0] - a[0]) / len, (b[1] - a[1]) / len];
                let edge = Cycle::line("edge", a, dir, len);
                let q = edge.integrate(
                    |s| {
                        let (p, v) = edge.eval(s);
                        frame_at(surface, p[0], p[1]).map(|f| f.norm(v.into()))
                    },
                    tol,
                )?;
                out.push(q.value);
            }
        }
    }
    Ok(out)
}

/// `max |a_k - b_k| / a_k`.
pub fn max_relative_deviation(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs() / x.abs()).fold(0.0, f64::max)
}

impl Mesh {
    /// Undirected edge -> number of incident faces.
    fn edge_counts(&self) -> HashMap<(usize, usize), usize> {
        let mut counts = HashMap::new();
        for f in &self.faces {
            for k in 0..3 {
                let (a, b) = (f[k], f[(k + 1) % 3]);
                *counts.entry((a.min(b), a.max(b))).or_insert(0) += 1;
            }
        }
        counts
    }

    /// Edges with exactly one incident face.
    pub fn boundary_edges(&self) -> usize {
        self.edge_counts().values().filter(|&&c| c == 1).count()
    }

    /// Every edge is shared by exactly two faces.
    pub fn is_watertight(&self) -> bool {
        !self.faces.is_empty() && self.edge_counts().values().all(|&c| c == 2)
    }

    pub fn write_obj(&self, out: &mut dyn Write, comment: &str) -> std::io::Result<()> {
        writeln!(out, "# {comment}")?;
        for v in &self.vertices {
            writeln!(out, "v {:.12} {:.12} {:.12}", v[0], v[1], v[2])?;
        }
        for n in &self.normals {
            writeln!(out, "vn {:.12} {:.12} {:.12}", n[0], n[1], n[2])?;
        }
        for f in &self.faces {
            let [a, b, c] = f.map(|k| k + 1);
            writeln!(out, "f {a}//{a} {b}//{b} {c}//{c}")?;
        }
        Ok(())
    }
}

/// Vertices and faces read back from OBJ text (`v` and `f` lines only).
pub fn read_obj(text: &str) -> anyhow::Result<Mesh> {
    let mut mesh = Mesh::default();
    for line in text.lines() {
        let mut it = line.split_whitespace();
        match it.next() {
            Some("v") => {
                let c: Vec<f64> = it.map(str::parse).collect::<Result<_, _>>()?;
                anyhow::ensure!(c.len() == 3, "bad vertex line '{line}'");
                mesh.vertices.push([c[0], c[1], c[2]]);
            }
            Some("f") => {
                let idx: Vec<usize> = it
                    .map(|t| t.split('/').next().unwrap_or("").parse::<usize>().map(|k| k - 1))
                    .collect::<Result<_, _>>()?;
                anyhow::ensure!(idx.len() == 3, "bad face line '{line}'");
                mesh.faces.push([idx[0], idx[1], idx[2]]);
            }
            _ => {}
        }
    }
    Ok(mesh)
}
