//! Damped Gauss-Newton (Levenberg-Marquardt) realization of circle patterns
//! with prescribed intersection angles, driven along a Newton homotopy from a
//! Tutte-embedding start.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};

use nalgebra::{DMatrix, DVector};

use super::types::{AngleAssignment, CirclePattern};
use crate::combin::CombPolyhedron;
use crate::error::{Error, Result};
use crate::geom::{ideal_point, to_mink_plane, tri_plane_vertex, ComplexPoint, GenCircle, MinkVector, Mobius, C64};

/// Accepted patterns have every constraint violation below this.
pub const ACCEPT_RESIDUAL: f64 = 1e-9;
const FINAL_TOL: f64 = 1e-13;
const STAGE_TOL: f64 = 1e-8;

#[derive(Clone, Debug)]
pub struct RealizeOptions {
    pub max_iter: usize,
    /// Vertices pinned during the solve; chosen automatically when `None`.
    pub gauge: Option<[usize; 3]>,
    pub targets: [ComplexPoint; 3],
}

impl Default for RealizeOptions {
    fn default() -> Self {
        RealizeOptions {
            max_iter: 200,
            gauge: None,
            targets: [
                ComplexPoint::new(0.0, 0.0),
                ComplexPoint::new(1.0, 0.0),
                ComplexPoint::Finite(C64::from_polar(1.0, FRAC_PI_3)),
            ],
        }
    }
}

/// Starting configuration: a normal per face and a point per ideal vertex
/// (finite vertices ignored).
#[derive(Clone, Debug)]
pub struct InitialGuess {
    pub normals: Vec<MinkVector>,
    pub points: Vec<C64>,
}

/// Classifies vertices: `true` for ideal (exterior angles sum to 2π).
pub fn vertex_kinds(p: &CombPolyhedron, a: &AngleAssignment) -> Result<Vec<bool>> {
    let rot = p.rotations()?;
    let mut kinds = Vec::with_capacity(p.vertex_count);
    for (v, nb) in rot.iter().enumerate() {
        let mut ext = 0.0;
        for &w in nb {
            let t = a.angle(v, w);
            if !(t > 0.0 && t < PI) {
                return Err(Error::InadmissibleAngles(format!("edge {v}-{w} angle {t} outside (0, pi)")));
            }
            ext += PI - t;
        }
        if (ext - 2.0 * PI).abs() <= 1e-9 {
            kinds.push(true);
        } else if ext < 2.0 * PI {
            kinds.push(false);
        } else {
            return Err(Error::InadmissibleAngles(format!(
                "vertex {v}: exterior angles sum to {ext} > 2 pi"
            )));
        }
    }
    if !kinds.iter().any(|k| *k) {
        return Err(Error::InadmissibleAngles("no ideal vertex".into()));
    }
    Ok(kinds)
}

struct System {
    nf: usize,
    /// Per vertex: index of its free point variable block, if any.
    var_of: Vec<Option<usize>>,
    pinned: Vec<Option<C64>>,
    incid: Vec<(usize, usize)>,
    pairs: Vec<(usize, usize, f64)>,
    nvars: usize,
}

fn hat_and_grad(z: C64) -> (MinkVector, MinkVector, MinkVector) {
    let (x, y) = (z.re, z.im);
    let m = x * x + y * y;
    let s = 1.0 + m;
    let s2 = s * s;
    let p = ideal_point(&ComplexPoint::Finite(z));
    let dx = MinkVector::new(2.0 / s - 4.0 * x * x / s2, -4.0 * x * y / s2, 4.0 * x / s2, 0.0);
    let dy = MinkVector::new(-4.0 * x * y / s2, 2.0 / s - 4.0 * y * y / s2, 4.0 * y / s2, 0.0);
    (p, dx, dy)
}

fn jv(v: &MinkVector) -> [f64; 4] {
    [v.0[0], v.0[1], v.0[2], -v.0[3]]
}

impl System {
    fn normal(&self, x: &[f64], f: usize) -> MinkVector {
        MinkVector([x[4 * f], x[4 * f + 1], x[4 * f + 2], x[4 * f + 3]])
    }

    fn point(&self, x: &[f64], v: usize) -> C64 {
        match self.var_of[v] {
            Some(k) => C64::new(x[k], x[k + 1]),
            None => self.pinned[v].expect("pinned or free"),
        }
    }

    fn rows(&self) -> usize {
        self.nf + self.incid.len() + self.pairs.len()
    }

    fn residual(&self, x: &[f64]) -> Vec<f64> {
        let mut r = Vec::with_capacity(self.rows());
        for f in 0..self.nf {
            let n = self.normal(x, f);
            r.push(n.norm_sq() - 1.0);
        }
        for &(f, v) in &self.incid {
            r.push(self.normal(x, f).dot(&ideal_point(&ComplexPoint::Finite(self.point(x, v)))));
        }
        for &(f, g, c) in &self.pairs {
            r.push(self.normal(x, f).dot(&self.normal(x, g)) + c);
        }
        r
    }

    /// Sparse Jacobian rows.
    fn jacobian(&self, x: &[f64]) -> Vec<Vec<(usize, f64)>> {
        let mut rows = Vec::with_capacity(self.rows());
        for f in 0..self.nf {
            let j = jv(&self.normal(x, f));
            rows.push((0..4).map(|i| (4 * f + i, 2.0 * j[i])).collect());
        }
        for &(f, v) in &self.incid {
            let n = self.normal(x, f);
            let (p, dx, dy) = hat_and_grad(self.point(x, v));
            let jp = jv(&p);
            let mut row: Vec<(usize, f64)> = (0..4).map(|i| (4 * f + i, jp[i])).collect();
            if let Some(k) = self.var_of[v] {
                row.push((k, n.dot(&dx)));
                row.push((k + 1, n.dot(&dy)));
            }
            rows.push(row);
        }
        for &(f, g, _) in &self.pairs {
            let jf = jv(&self.normal(x, f));
            let jg = jv(&self.normal(x, g));
            let mut row: Vec<(usize, f64)> = (0..4).map(|i| (4 * f + i, jg[i])).collect();
            row.extend((0..4).map(|i| (4 * g + i, jf[i])));
            rows.push(row);
        }
        rows
    }
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

struct LmOutcome {
    converged: bool,
    /// Least-squares stationary point reached (possibly with nonzero residual).
    stationary: bool,
    iterations: usize,
    trace: Vec<f64>,
}

/// Levenberg-Marquardt on `r(x) - offset`.
fn levenberg(sys: &System, x: &mut Vec<f64>, offset: &[f64], max_iter: usize, tol: f64) -> LmOutcome {
    let n = sys.nvars;
    let eval = |x: &[f64]| -> Vec<f64> { sys.residual(x).iter().zip(offset).map(|(a, b)| a - b).collect() };
    let mut r = eval(x);
    let mut cost: f64 = r.iter().map(|v| v * v).sum();
    let mut lambda = 1e-4;
    let mut trace = vec![max_abs(&r)];
    for it in 0..max_iter {
        if max_abs(&r) < tol {
            return LmOutcome { converged: true, stationary: true, iterations: it, trace };
        }
        let rows = sys.jacobian(x);
        let mut jtj = DMatrix::<f64>::zeros(n, n);
        let mut g = DVector::<f64>::zeros(n);
        for (row, ri) in rows.iter().zip(&r) {
            for &(a, va) in row {
                g[a] += va * ri;
                for &(b, vb) in row {
                    jtj[(a, b)] += va * vb;
                }
            }
        }
        let gnorm = g.amax();
        let mut improved = false;
        let old_cost = cost;
        while lambda < 1e14 {
            let mut a = jtj.clone();
            for i in 0..n {
                a[(i, i)] += lambda * (jtj[(i, i)].max(1e-9));
            }
            let step = match a.cholesky() {
                Some(ch) => ch.solve(&g),
                None => {
                    lambda *= 10.0;
                    continue;
                }
            };
            let xn: Vec<f64> = x.iter().zip(step.iter()).map(|(a, s)| a - s).collect();
            let rn = eval(&xn);
            let cn: f64 = rn.iter().map(|v| v * v).sum();
            if cn.is_finite() && cn < cost {
                *x = xn;
                r = rn;
                cost = cn;
                lambda = (lambda / 5.0).max(1e-15);
                improved = true;
                break;
            }
            lambda *= 8.0;
        }
        trace.push(max_abs(&r));
        let small_gain = old_cost - cost <= 1e-12 * old_cost;
        if !improved || small_gain || gnorm < 1e-15 {
            return LmOutcome { converged: max_abs(&r) < tol, stationary: true, iterations: it + 1, trace };
        }
    }
    LmOutcome { converged: max_abs(&r) < tol, stationary: false, iterations: max_iter, trace }
}

/// Tutte embedding with the given outer face on the unit circle; inner faces
/// come out counterclockwise.
pub fn tutte_embedding(p: &CombPolyhedron, outer: usize) -> Result<Vec<C64>> {
    let rot = p.rotations()?;
    let nv = p.vertex_count;
    let cyc = &p.faces[outer];
    let mut pos = vec![C64::new(0.0, 0.0); nv];
    let mut fixed = vec![false; nv];
    let k = cyc.len();
    for (i, &v) in cyc.iter().enumerate() {
        pos[v] = C64::from_polar(1.0, -2.0 * PI * i as f64 / k as f64);
        fixed[v] = true;
    }
    let free: Vec<usize> = (0..nv).filter(|v| !fixed[*v]).collect();
    let mut idx = vec![usize::MAX; nv];
    for (i, &v) in free.iter().enumerate() {
        idx[v] = i;
    }
    let m = free.len();
    if m > 0 {
        let mut a = DMatrix::<f64>::zeros(m, m);
        let mut bx = DVector::<f64>::zeros(m);
        let mut by = DVector::<f64>::zeros(m);
        for (i, &v) in free.iter().enumerate() {
            for &w in &rot[v] {
                a[(i, i)] += 1.0;
                if fixed[w] {
                    bx[i] += pos[w].re;
                    by[i] += pos[w].im;
                } else {
                    a[(i, idx[w])] -= 1.0;
                }
            }
        }
        let lu = a.lu();
        let sx = lu.solve(&bx).ok_or_else(|| Error::ConstructionFailed("singular Tutte system".into()))?;
        let sy = lu.solve(&by).ok_or_else(|| Error::ConstructionFailed("singular Tutte system".into()))?;
        for (i, &v) in free.iter().enumerate() {
            pos[v] = C64::new(sx[i], sy[i]);
        }
    }
    // inner faces counterclockwise
    let inner = (0..p.faces.len()).find(|&f| f != outer).expect("at least two faces");
    if signed_area(&p.faces[inner].iter().map(|&v| pos[v]).collect::<Vec<_>>()) < 0.0 {
        for z in &mut pos {
            *z = z.conj();
        }
    }
    Ok(pos)
}

pub fn signed_area(poly: &[C64]) -> f64 {
    let n = poly.len();
    (0..n).map(|i| (poly[i].conj() * poly[(i + 1) % n]).im).sum::<f64>() * 0.5
}

/// Algebraic least-squares circle through `pts`.
fn fit_circle(pts: &[C64]) -> Result<GenCircle> {
    let mut a = DMatrix::<f64>::zeros(pts.len(), 3);
    let mut b = DVector::<f64>::zeros(pts.len());
    for (i, z) in pts.iter().enumerate() {
        a[(i, 0)] = z.re;
        a[(i, 1)] = z.im;
        a[(i, 2)] = 1.0;
        b[i] = -z.norm_sqr();
    }
    let sol = a
        .svd(true, true)
        .solve(&b, 1e-14)
        .map_err(|e| Error::ConstructionFailed(e.to_string()))?;
    let c = C64::new(-sol[0] / 2.0, -sol[1] / 2.0);
    let r2 = c.norm_sqr() - sol[2];
    if !(r2 > 0.0) {
        return Err(Error::ConstructionFailed("degenerate circle fit".into()));
    }
    GenCircle::circle(c, r2.sqrt())
}

/// Tutte start: largest face outside on the unit circle, fitted circles inside.
pub fn tutte_guess(p: &CombPolyhedron) -> Result<InitialGuess> {
    let outer = (0..p.faces.len()).max_by_key(|&f| (p.faces[f].len(), usize::MAX - f)).expect("faces");
    let pos = tutte_embedding(p, outer)?;
    let mut normals = Vec::with_capacity(p.faces.len());
    for (f, cyc) in p.faces.iter().enumerate() {
        if f == outer {
            normals.push(-to_mink_plane(&GenCircle::circle(C64::new(0.0, 0.0), 1.0)?));
        } else {
            let pts: Vec<C64> = cyc.iter().map(|&v| pos[v]).collect();
            normals.push(to_mink_plane(&fit_circle(&pts)?));
        }
    }
    Ok(InitialGuess { normals, points: pos })
}

/// Gauge vertices: ideal, pairwise non-adjacent when possible.
pub fn choose_gauge(p: &CombPolyhedron, ideal: &[bool]) -> Result<[usize; 3]> {
    let rot = p.rotations()?;
    let cand: Vec<usize> = (0..p.vertex_count).filter(|&v| ideal[v]).collect();
    if cand.len() < 3 {
        return Err(Error::InadmissibleAngles("fewer than three ideal vertices".into()));
    }
    let adj = |a: usize, b: usize| rot[a].contains(&b);
    let mut chosen = vec![cand[0]];
    for pass in 0..2 {
        for &v in &cand {
            if chosen.len() == 3 {
                break;
            }
            if chosen.contains(&v) {
                continue;
            }
            if pass == 1 || chosen.iter().all(|&c| !adj(c, v)) {
                chosen.push(v);
            }
        }
    }
    Ok([chosen[0], chosen[1], chosen[2]])
}

pub fn pattern_residual(pat: &CirclePattern) -> f64 {
    let mut worst: f64 = 0.0;
    for n in &pat.normals {
        worst = worst.max((n.norm_sq() - 1.0).abs());
    }
    for (f, cyc) in pat.poly.faces.iter().enumerate() {
        for &v in cyc {
            if let Some(p) = pat.ideal_vector(v) {
                worst = worst.max(pat.normals[f].dot(&p).abs());
            }
        }
    }
    if let Ok(edges) = pat.poly.edges() {
        for e in edges {
            let c = pat.angles.angle(e.u, e.v).cos();
            worst = worst.max((pat.normals[e.left].dot(&pat.normals[e.right]) + c).abs());
        }
    }
    worst
}

/// Solves from `guess`. Normals in the guess must be outward.
pub fn realize_from(
    p: &CombPolyhedron,
    a: &AngleAssignment,
    guess: &InitialGuess,
    opts: &RealizeOptions,
) -> Result<CirclePattern> {
    let report = p.validate();
    if !report.ok() {
        return Err(Error::InvalidInput(report.failures.join("; ")));
    }
    let kinds = vertex_kinds(p, a)?;
    let gauge = match opts.gauge {
        Some(g) => g,
        None => choose_gauge(p, &kinds)?,
    };
    let nf = p.faces.len();
    let mut var_of = vec![None; p.vertex_count];
    let mut pinned = vec![None; p.vertex_count];
    let mut nvars = 4 * nf;
    for v in 0..p.vertex_count {
        if !kinds[v] {
            continue;
        }
        if gauge.contains(&v) {
            pinned[v] = Some(guess.points[v]);
        } else {
            var_of[v] = Some(nvars);
            nvars += 2;
        }
    }
    let mut incid = Vec::new();
    for (f, cyc) in p.faces.iter().enumerate() {
        for &v in cyc {
            if kinds[v] {
                incid.push((f, v));
            }
        }
    }
    let pairs: Vec<(usize, usize, f64)> = p
        .edges()?
        .iter()
        .map(|e| (e.left, e.right, a.angle(e.u, e.v).cos()))
        .collect();
    let sys = System { nf, var_of, pinned, incid, pairs, nvars };
    let mut x = vec![0.0; nvars];
    for f in 0..nf {
        x[4 * f..4 * f + 4].copy_from_slice(&guess.normals[f].0);
    }
    for v in 0..p.vertex_count {
        if let Some(k) = sys.var_of[v] {
            x[k] = guess.points[v].re;
            x[k + 1] = guess.points[v].im;
        }
    }
    let r0 = sys.residual(&x);
    let mut trace = Vec::new();
    let mut s = 0.0;
    let mut ds: f64 = 1.0;
    let mut stage_budget = 40 * opts.max_iter;
    while s < 1.0 {
        let st = (s + ds).min(1.0);
        let off: Vec<f64> = r0.iter().map(|v| (1.0 - st) * v).collect();
        let mut xt = x.clone();
        let out = levenberg(&sys, &mut xt, &off, 40, STAGE_TOL);
        stage_budget = stage_budget.saturating_sub(out.iterations.max(1));
        trace.extend(out.trace.last().copied());
        if out.converged || out.stationary {
            x = xt;
            s = st;
            ds = (ds * 2.0).min(1.0);
        } else {
            ds /= 4.0;
            if ds < 1e-5 || stage_budget == 0 {
                return Err(Error::NoConvergence { iterations: trace.len(), residual: max_abs(&sys.residual(&x)), trace });
            }
        }
    }
    let out = levenberg(&sys, &mut x, &vec![0.0; r0.len()], opts.max_iter, FINAL_TOL);
    trace.extend(out.trace);
    let res = max_abs(&sys.residual(&x));
    if res > ACCEPT_RESIDUAL {
        return Err(Error::NoConvergence { iterations: out.iterations, residual: res, trace });
    }
    let normals: Vec<MinkVector> = (0..nf).map(|f| sys.normal(&x, f)).collect();
    let ideal: Vec<Option<ComplexPoint>> = (0..p.vertex_count)
        .map(|v| if kinds[v] { Some(ComplexPoint::Finite(sys.point(&x, v))) } else { None })
        .collect();
    let pat = CirclePattern {
        poly: p.clone(),
        angles: a.clone(),
        normals,
        ideal,
        finite: vec![None; p.vertex_count],
        residual: res,
        gauge,
    };
    let mut pat = orient_and_check(pat)?;
    if opts.gauge.is_none() {
        pat.gauge = spread_gauge(&pat, &kinds)?;
    }
    let gauge = pat.gauge;
    let src = gauge.map(|v| pat.ideal[v].expect("ideal gauge"));
    let m = Mobius::from_triple(src, opts.targets)?;
    let mut out = pat.transformed(&m);
    // pin exactly
    for (i, &v) in gauge.iter().enumerate() {
        out.ideal[v] = Some(opts.targets[i]);
    }
    out.residual = pattern_residual(&out);
    if out.residual > ACCEPT_RESIDUAL {
        return Err(Error::ResidualTooLarge(out.residual));
    }
    Ok(out)
}

/// Three ideal vertices, pairwise non-adjacent when possible, as far apart
/// on the sphere as possible; pinning them keeps the picture well scaled.
fn spread_gauge(pat: &CirclePattern, ideal: &[bool]) -> Result<[usize; 3]> {
    let rot = pat.poly.rotations()?;
    let cand: Vec<(usize, C64)> = (0..pat.poly.vertex_count)
        .filter(|&v| ideal[v])
        .filter_map(|v| pat.ideal[v].and_then(|z| z.finite()).map(|z| (v, z)))
        .collect();
    let chord = |z: C64, w: C64| 2.0 * (z - w).norm() / ((1.0 + z.norm_sqr()) * (1.0 + w.norm_sqr())).sqrt();
    for strict in [true, false] {
        let ok = |a: usize, b: usize| !strict || !rot[a].contains(&b);
        let mut best: Option<(f64, [usize; 3])> = None;
        for i in 0..cand.len() {
            for j in i + 1..cand.len() {
                if !ok(cand[i].0, cand[j].0) {
                    continue;
                }
                let dij = chord(cand[i].1, cand[j].1);
                if best.is_some_and(|(b, _)| dij <= b) {
                    continue;
                }
                for k in j + 1..cand.len() {
                    if !ok(cand[i].0, cand[k].0) || !ok(cand[j].0, cand[k].0) {
                        continue;
                    }
                    let d = dij.min(chord(cand[i].1, cand[k].1)).min(chord(cand[j].1, cand[k].1));
                    if best.map_or(true, |(b, _)| d > b) {
                        best = Some((d, [cand[i].0, cand[j].0, cand[k].0]));
                    }
                }
            }
        }
        if let Some((_, g)) = best {
            return Ok(g);
        }
    }
    Err(Error::InadmissibleAngles("fewer than three ideal vertices".into()))
}

/// Right-angled ideal polyhedra start from the orthogonal circle pattern,
/// everything else from the Tutte embedding.
pub fn realize(p: &CombPolyhedron, a: &AngleAssignment, opts: &RealizeOptions) -> Result<CirclePattern> {
    let right = p.edges()?.iter().all(|e| a.angle(e.u, e.v) == FRAC_PI_2);
    if right {
        if let Ok(guess) = super::packing::orthogonal_guess(p) {
            if let Ok(pat) = realize_from(p, a, &guess, opts) {
                return Ok(pat);
            }
        }
    }
    let guess = tutte_guess(p)?;
    realize_from(p, a, &guess, opts)
}

/// Makes every normal outward (all other vertices on its non-positive side),
/// derives finite vertices and checks convexity.
fn orient_and_check(mut pat: CirclePattern) -> Result<CirclePattern> {
    let nv = pat.poly.vertex_count;
    let rot = pat.poly.rotations()?;
    let face_of_vertex: Vec<Vec<usize>> = {
        let mut m = vec![Vec::new(); nv];
        for (f, cyc) in pat.poly.faces.iter().enumerate() {
            for &v in cyc {
                m[v].push(f);
            }
        }
        m
    };
    let derive_finite = |pat: &CirclePattern| -> Result<Vec<Option<MinkVector>>> {
        (0..nv)
            .map(|v| {
                if pat.ideal[v].is_some() {
                    return Ok(None);
                }
                let fs = &face_of_vertex[v];
                if fs.len() < 3 || rot[v].len() < 3 {
                    return Err(Error::ConstructionFailed(format!("finite vertex {v} has valence < 3")));
                }
                tri_plane_vertex(&pat.normals[fs[0]], &pat.normals[fs[1]], &pat.normals[fs[2]]).map(Some)
            })
            .collect()
    };
    pat.finite = derive_finite(&pat)?;
    let scale = |x: &MinkVector| x.euclid_norm();
    for f in 0..pat.normals.len() {
        let on: Vec<usize> = pat.poly.faces[f].clone();
        let mut pos = 0;
        let mut neg = 0;
        for v in 0..nv {
            if on.contains(&v) {
                continue;
            }
            let pt = match (pat.ideal_vector(v), pat.finite[v]) {
                (Some(p), _) => p,
                (None, Some(x)) => x * (1.0 / scale(&x)),
                _ => continue,
            };
            let s = pat.normals[f].dot(&pt);
            if s > 1e-9 {
                pos += 1;
            } else if s < -1e-9 {
                neg += 1;
            }
        }
        if pos > 0 && neg > 0 {
            return Err(Error::ConstructionFailed(format!("face {f} plane separates the vertices")));
        }
        if pos > 0 {
            pat.normals[f] = -pat.normals[f];
        }
    }
    pat.residual = pattern_residual(&pat);
    if pat.residual > ACCEPT_RESIDUAL {
        return Err(Error::ConstructionFailed(format!(
            "no consistent outward orientation (residual {:.3e})",
            pat.residual
        )));
    }
    // finite vertices must lie on all their faces
    for v in 0..nv {
        if let Some(x) = pat.finite[v] {
            for &f in &face_of_vertex[v] {
                if pat.normals[f].dot(&x).abs() > 1e-7 * x.0[3].max(1.0) {
                    return Err(Error::ConstructionFailed(format!("finite vertex {v} off face {f}")));
                }
            }
        }
    }
    Ok(pat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin::drum;
    use crate::geom::{dihedral_angle, PairTag};
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn octahedron_pattern() {
        let d = drum(3).unwrap();
        let pat = realize(&d, &AngleAssignment::right(), &RealizeOptions::default()).unwrap();
        assert!(pat.residual < ACCEPT_RESIDUAL);
        for e in d.edges().unwrap() {
            let t = dihedral_angle(&pat.normals[e.left], &pat.normals[e.right]);
            assert!((t - FRAC_PI_2).abs() < 1e-8);
        }
        let opts = RealizeOptions::default();
        for (i, &v) in pat.gauge.iter().enumerate() {
            assert_eq!(pat.ideal[v], Some(opts.targets[i]));
        }
    }

    #[test]
    fn drum4_squares_disjoint() {
        let d = drum(4).unwrap();
        let pat = realize(&d, &AngleAssignment::right(), &RealizeOptions::default()).unwrap();
        let inv = crate::geom::plane_pair_invariant(&pat.normals[0], &pat.normals[1]);
        assert!(matches!(inv.tag, PairTag::Distance(_)), "{inv:?}");
    }

    #[test]
    fn rejects_bad_angles() {
        let d = drum(4).unwrap();
        let a = AngleAssignment::right().with(0, 1, 0.3);
        assert!(matches!(realize(&d, &a, &RealizeOptions::default()), Err(Error::InadmissibleAngles(_))));
    }
}
