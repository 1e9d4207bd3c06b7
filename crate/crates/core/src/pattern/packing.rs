//! Start for right-angled ideal polyhedra: send one vertex to ∞, solve the
//! Euclidean orthogonal circle pattern in log radii (a convex problem) and
//! lay it out.

use std::collections::{HashMap, VecDeque};
use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};

use super::solver::{signed_area, InitialGuess};
use crate::combin::CombPolyhedron;
use crate::error::{Error, Result};
use crate::geom::{ideal_point, to_mink_plane, ComplexPoint, GenCircle, Mobius, C64};

const GRAD_TOL: f64 = 1e-13;
const MAX_NEWTON: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq)]
enum Side {
    Circle(usize),
    Line,
}

/// Faces around every vertex, neighbor faces across every face edge.
struct Adjacency {
    /// nbr[f][i]: face across edge (cyc[i], cyc[i+1]).
    nbr: Vec<Vec<usize>>,
    faces_at: Vec<Vec<usize>>,
}

fn adjacency(p: &CombPolyhedron) -> Result<Adjacency> {
    let mut across = HashMap::new();
    for e in p.edges()? {
        across.insert((e.u, e.v), (e.left, e.right));
        across.insert((e.v, e.u), (e.left, e.right));
    }
    let mut nbr = Vec::with_capacity(p.faces.len());
    let mut faces_at = vec![Vec::new(); p.vertex_count];
    for (f, cyc) in p.faces.iter().enumerate() {
        let k = cyc.len();
        let mut row = Vec::with_capacity(k);
        for i in 0..k {
            let (a, b) = (cyc[i], cyc[(i + 1) % k]);
            let &(l, r) = across.get(&(a, b)).ok_or_else(|| Error::InvalidInput(format!("edge {a}-{b} missing")))?;
            row.push(if l == f { r } else { l });
            faces_at[a].push(f);
        }
        nbr.push(row);
    }
    Ok(Adjacency { nbr, faces_at })
}

/// Angle sums minus their targets; the gradient of the convex functional.
fn gradient(rho: &[f64], sides: &[Side], adj: &Adjacency, circles: &[usize]) -> Vec<f64> {
    circles
        .iter()
        .map(|&f| {
            let mut g = 2.0 * PI;
            for &h in &adj.nbr[f] {
                g -= match sides[h] {
                    Side::Line => PI,
                    Side::Circle(j) => 2.0 * (rho[j] - rho[ci(sides, f)]).exp().atan(),
                };
            }
            g
        })
        .collect()
}

fn ci(sides: &[Side], f: usize) -> usize {
    match sides[f] {
        Side::Circle(i) => i,
        Side::Line => unreachable!("line face has no radius"),
    }
}

/// Log radii with ρ₀ = 0, by damped Newton.
fn solve_radii(sides: &[Side], adj: &Adjacency, circles: &[usize]) -> Result<Vec<f64>> {
    let m = circles.len();
    let mut rho = vec![0.0; m];
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    for _ in 0..MAX_NEWTON {
        let g = gradient(&rho, sides, adj, circles);
        if g.iter().fold(0.0f64, |a, v| a.max(v.abs())) < GRAD_TOL {
            return Ok(rho);
        }
        let mut h = DMatrix::<f64>::zeros(m - 1, m - 1);
        for (i, &f) in circles.iter().enumerate().skip(1) {
            for &nb in &adj.nbr[f] {
                if let Side::Circle(j) = sides[nb] {
                    let w = 1.0 / (rho[j] - rho[i]).cosh();
                    h[(i - 1, i - 1)] += w;
                    if j > 0 {
                        h[(i - 1, j - 1)] -= w;
                    }
                }
            }
        }
        let rhs = DVector::from_iterator(m - 1, g[1..].iter().map(|v| -v));
        let sol = h
            .cholesky()
            .ok_or_else(|| Error::ConstructionFailed("singular radius Hessian".into()))?
            .solve(&rhs);
        let mut d = vec![0.0; m];
        d[1..].copy_from_slice(sol.as_slice());
        // convex along d: shrink until the slope is still non-positive
        let mut t = 1.0;
        loop {
            let trial: Vec<f64> = rho.iter().zip(&d).map(|(r, s)| r + t * s).collect();
            let gt = gradient(&trial, sides, adj, circles);
            if dot(&gt, &d) <= 0.0 || t < 1e-12 {
                rho = trial;
                break;
            }
            t *= 0.5;
        }
    }
    let g = gradient(&rho, sides, adj, circles);
    if g.iter().fold(0.0f64, |a, v| a.max(v.abs())) < 1e-9 {
        Ok(rho)
    } else {
        Err(Error::ConstructionFailed("radius iteration did not settle".into()))
    }
}

/// Every vertex four-valent and every angle right.
pub fn orthogonal_guess(p: &CombPolyhedron) -> Result<InitialGuess> {
    let adj = adjacency(p)?;
    if adj.faces_at.iter().any(|fs| fs.len() != 4) {
        return Err(Error::InvalidInput("orthogonal start needs four-valent vertices".into()));
    }
    let deg = |v: usize| adj.faces_at[v].iter().map(|&f| p.faces[f].len()).sum::<usize>();
    let inf = (0..p.vertex_count).max_by_key(|&v| (deg(v), usize::MAX - v)).expect("vertices");
    let nf = p.faces.len();
    let mut sides = vec![Side::Line; nf];
    let mut circles = Vec::new();
    for f in 0..nf {
        if !adj.faces_at[inf].contains(&f) {
            sides[f] = Side::Circle(circles.len());
            circles.push(f);
        }
    }
    let rho = solve_radii(&sides, &adj, &circles)?;
    let radius: Vec<f64> = rho.iter().map(|r| r.exp()).collect();
    let half = |f: usize, h: usize| match sides[h] {
        Side::Line => PI / 2.0,
        Side::Circle(j) => (radius[j] / radius[ci(&sides, f)]).atan(),
    };

    // breadth-first layout: centers and the direction to each neighbor
    let mut center = vec![None; circles.len()];
    let mut dirs: Vec<Vec<f64>> = vec![Vec::new(); circles.len()];
    let set_dirs = |f: usize, k0: usize, d0: f64| -> Vec<f64> {
        let k = adj.nbr[f].len();
        let mut out = vec![0.0; k];
        out[k0] = d0;
        for s in 1..k {
            let (a, b) = ((k0 + s - 1) % k, (k0 + s) % k);
            out[b] = out[a] + half(f, adj.nbr[f][a]) + half(f, adj.nbr[f][b]);
        }
        out
    };
    center[0] = Some(C64::new(0.0, 0.0));
    dirs[0] = set_dirs(circles[0], 0, 0.0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let f = circles[i];
        let c = center[i].expect("placed");
        for (k, &h) in adj.nbr[f].iter().enumerate() {
            let Side::Circle(j) = sides[h] else { continue };
            if center[j].is_some() {
                continue;
            }
            let d = dirs[i][k];
            center[j] = Some(c + C64::from_polar((radius[i].powi(2) + radius[j].powi(2)).sqrt(), d));
            let back = adj.nbr[h].iter().position(|&x| x == f).expect("symmetric adjacency");
            dirs[j] = set_dirs(h, back, d + PI);
            queue.push_back(j);
        }
    }
    let center: Vec<C64> = center
        .into_iter()
        .map(|c| c.ok_or_else(|| Error::ConstructionFailed("disconnected circle faces".into())))
        .collect::<Result<_>>()?;

    let mut pos = vec![None; p.vertex_count];
    for (i, &f) in circles.iter().enumerate() {
        let cyc = &p.faces[f];
        let k = cyc.len();
        for (e, &h) in adj.nbr[f].iter().enumerate() {
            let a = half(f, h);
            for (v, ang) in [(cyc[e], dirs[i][e] - a), (cyc[(e + 1) % k], dirs[i][e] + a)] {
                if pos[v].is_none() {
                    pos[v] = Some(center[i] + C64::from_polar(radius[i], ang));
                }
            }
        }
    }
    let mut flip = false;
    if let Some(&f) = circles.first() {
        let pts: Vec<C64> = p.faces[f].iter().map(|&v| pos[v].expect("circle vertex")).collect();
        flip = signed_area(&pts) < 0.0;
    }
    let fix = |z: C64| if flip { z.conj() } else { z };
    let center: Vec<C64> = center.into_iter().map(fix).collect();
    let pos: Vec<Option<C64>> = pos.into_iter().map(|z| z.map(fix)).collect();

    let mid = center.iter().sum::<C64>() / center.len() as f64;
    let mut normals = Vec::with_capacity(nf);
    for f in 0..nf {
        let n = match sides[f] {
            Side::Circle(i) => to_mink_plane(&GenCircle::circle(center[i], radius[i])?),
            Side::Line => {
                let on: Vec<C64> = p.faces[f].iter().filter(|&&v| v != inf).filter_map(|&v| pos[v]).collect();
                if on.len() < 2 {
                    return Err(Error::ConstructionFailed("line face with fewer than two finite vertices".into()));
                }
                let (a, b) = (on[0], on[on.len() - 1]);
                let normal = (b - a) * C64::new(0.0, 1.0);
                let n = to_mink_plane(&GenCircle::line(normal, (normal.conj() * a).re)?);
                if n.dot(&ideal_point(&ComplexPoint::Finite(mid))) > 0.0 {
                    n * -1.0
                } else {
                    n
                }
            }
        };
        normals.push(n);
    }

    // finite picture: invert about a circle center, recenter and rescale the
    // vertices, keep the choice with the smallest largest normal
    let mut best: Option<(f64, Mobius)> = None;
    for &c in &center {
        let inv = Mobius::new(C64::new(0.0, 0.0), C64::new(1.0, 0.0), C64::new(1.0, 0.0), -c)?;
        let pts: Vec<C64> = (0..p.vertex_count)
            .filter(|&v| v != inf)
            .filter_map(|v| inv.apply(ComplexPoint::Finite(pos[v].expect("placed"))).finite())
            .collect();
        let mid = pts.iter().sum::<C64>() / pts.len() as f64;
        let mut d: Vec<f64> = pts.iter().map(|z| (z - mid).norm()).collect();
        d.sort_by(f64::total_cmp);
        let scale = d[d.len() / 2];
        if !(scale > 0.0) {
            continue;
        }
        let m = Mobius::new(C64::new(1.0 / scale, 0.0), -mid / scale, C64::new(0.0, 0.0), C64::new(1.0, 0.0))?.compose(&inv);
        let worst = normals.iter().map(|n| m.apply_plane(n).euclid_norm()).fold(0.0, f64::max);
        if best.as_ref().map_or(true, |(w, _)| worst < *w) {
            best = Some((worst, m));
        }
    }
    let (_, m) = best.ok_or_else(|| Error::ConstructionFailed("no usable normalization".into()))?;
    let normals = normals.iter().map(|n| m.apply_plane(n)).collect();
    let points = (0..p.vertex_count)
        .map(|v| {
            let z = if v == inf {
                ComplexPoint::Infinity
            } else {
                ComplexPoint::Finite(pos[v].ok_or_else(|| Error::ConstructionFailed(format!("vertex {v} not placed")))?)
            };
            m.apply(z)
                .finite()
                .ok_or_else(|| Error::ConstructionFailed("vertex sent to infinity".into()))
        })
        .collect::<Result<Vec<C64>>>()?;
    Ok(InitialGuess { normals, points })
}
