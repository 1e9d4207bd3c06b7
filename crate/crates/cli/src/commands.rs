//! One function per subcommand. Each returns a table and, in check mode,
//! the invariant verdicts for that command.

use std::f64::consts::{FRAC_PI_4, PI};
use std::fs;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use hypdrill::bounds::{
    bend_integral, combinatorial_k, distinct_surgeries, drill_inventory, drill_report, family_bend_check, thin_inventory,
    DrillVerdict, BOUND_SLACK,
};
use hypdrill::brooks::{build_pn, family_experiment, greedy_cfrac, solve_r, funnel_quad, AUDIT_TOL};
use hypdrill::combin::{
    check_rigidity_dichotomy, cube, drum, enumerate_basic, sign_indices, tetrahedron, CombPolyhedron, Quarters, Sign,
    SignedPolyhedron, SurgerySpec, surgery,
};
use hypdrill::dual::{bent_dual, edge_geodesic_search, scale_and_polarize};
use hypdrill::error::Error;
use hypdrill::geom::{dihedral_angle, lobachevsky, quad_perpendiculars, ComplexPoint, C64};
use hypdrill::pattern::{
    deform_family, polyhedron_volume, realize, schlafli_residual, svg_string, AngleAssignment, CirclePattern,
    RealizeOptions, ACCEPT_RESIDUAL,
};

use crate::report::{Cell, Check, Table};

pub enum CliError {
    Usage(String),
    Numeric(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(_) => CliError::Usage(e.to_string()),
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Numeric(format!("io: {e}"))
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// What a command hands back to the driver.
pub struct Outcome {
    pub table: Table,
    pub checks: Vec<Check>,
    /// Replaces the table on output when set (SVG text).
    pub raw: Option<String>,
}

impl Outcome {
    fn table(table: Table, checks: Vec<Check>) -> Self {
        Outcome { table, checks, raw: None }
    }
}

/// Paths relative to the default output directory when one is configured.
pub fn resolve(path: &Path, out_dir: Option<&Path>) -> PathBuf {
    match out_dir {
        Some(d) if path.is_relative() => d.join(path),
        _ => path.to_path_buf(),
    }
}

/// `a..b` (inclusive), `a,b,c` or a single integer.
pub fn parse_range(s: &str) -> CliResult<Vec<usize>> {
    let bad = || usage(format!("bad range '{s}'"));
    let out: Vec<usize> = if let Some((a, b)) = s.split_once("..") {
        let b = b.strip_prefix('=').unwrap_or(b);
        let (a, b): (usize, usize) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
        if a > b {
            return Err(bad());
        }
        (a..=b).collect()
    } else {
        s.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect::<CliResult<_>>()?
    };
    if out.is_empty() || out.windows(2).any(|w| w[0] >= w[1]) {
        return Err(usage(format!("range '{s}' must be increasing")));
    }
    Ok(out)
}

pub fn load_poly(drum_n: Option<usize>, file: Option<&Path>) -> CliResult<CombPolyhedron> {
    match (drum_n, file) {
        (Some(n), None) => Ok(drum(n)?),
        (None, Some(f)) => {
            let text = fs::read_to_string(f)?;
            CombPolyhedron::from_json(&text).map_err(|e| usage(format!("{}: {e}", f.display())))
        }
        _ => Err(usage("give exactly one of --drum N or --poly FILE")),
    }
}

pub fn parse_spec(p: &CombPolyhedron, face: &str, edges: &str) -> CliResult<SurgerySpec> {
    let f = match face {
        "top" => 0,
        "bottom" => 1,
        other => other.parse().map_err(|_| usage(format!("bad face '{other}'")))?,
    };
    let (a, b) = edges.split_once(',').ok_or_else(|| usage(format!("--edges wants 'a,b', got '{edges}'")))?;
    let e1 = a.trim().parse().map_err(|_| usage(format!("bad edge '{a}'")))?;
    let e2 = b.trim().parse().map_err(|_| usage(format!("bad edge '{b}'")))?;
    let s = SurgerySpec::new(f, e1, e2);
    s.check(p).map_err(|e| usage(e.to_string()))?;
    Ok(s)
}

fn right(p: &CombPolyhedron) -> CliResult<CirclePattern> {
    Ok(realize(p, &AngleAssignment::right(), &RealizeOptions::default())?)
}

pub fn enumerate(seeds: &str, generations: usize, check: bool) -> CliResult<Outcome> {
    let seeds: Vec<CombPolyhedron> = parse_range(seeds)?.into_iter().map(drum).collect::<Result<_, _>>()?;
    let entries = enumerate_basic(&seeds, generations)?;
    let mut t = Table::new(&["index", "generation", "code", "faces", "vertices", "parent", "face", "e1", "e2"]);
    for (i, e) in entries.iter().enumerate() {
        let (parent, f, e1, e2) = match e.parent {
            Some((j, s)) => (Cell::from(j), Cell::from(s.face), Cell::from(s.e1), Cell::from(s.e2)),
            None => (Cell::from(""), Cell::from(""), Cell::from(""), Cell::from("")),
        };
        t.push(vec![
            i.into(),
            e.generation.into(),
            e.code.short().into(),
            e.poly.faces.len().into(),
            e.poly.vertex_count.into(),
            parent,
            f,
            e1,
            e2,
        ]);
    }
    let mut checks = Vec::new();
    if check {
        let bad: Vec<usize> = (0..entries.len()).filter(|&i| !entries[i].poly.validate_basic().ok()).collect();
        checks.push(Check::new("basic", bad.is_empty(), format!("{} entries, invalid {bad:?}", entries.len())));
        let mut codes: Vec<_> = entries.iter().map(|e| e.code.clone()).collect();
        codes.sort();
        codes.dedup();
        checks.push(Check::new("distinct", codes.len() == entries.len(), format!("{} classes", codes.len())));
    }
    Ok(Outcome::table(t, checks))
}

/// Exhaustive signings over {+, −, 0}: zero-free total index and the
/// rigidity dichotomy for every pair of disjoint faces.
pub fn signings(which: &str, check: bool) -> CliResult<Outcome> {
    let base = match which {
        "cube" => cube(),
        "tetrahedron" => tetrahedron(),
        other => return Err(usage(format!("unknown signing base '{other}'"))),
    };
    let m = base.edge_count();
    let total = 3usize.pow(m as u32);
    let nf = base.faces.len();
    let disjoint = |a: usize, b: usize| base.faces[a].iter().all(|v| !base.faces[b].contains(v));
    let pairs: Vec<(usize, usize)> =
        (0..nf).flat_map(|a| (a + 1..nf).map(move |b| (a, b))).filter(|&(a, b)| disjoint(a, b)).collect();
    let alphabet = [Sign::Plus, Sign::Minus, Sign::Zero];
    let counts = (0..total)
        .into_par_iter()
        .map(|mut code| -> Result<[usize; 4], Error> {
            let signs: Vec<Sign> = (0..m)
                .map(|_| {
                    let s = alphabet[code % 3];
                    code /= 3;
                    s
                })
                .collect();
            let zero_free = signs.iter().all(|s| *s != Sign::Zero);
            let sp = SignedPolyhedron::new(base.clone(), signs)?;
            let mut c = [0usize; 4];
            if zero_free {
                c[0] = 1;
                if sign_indices(&sp)?.total == Quarters(8) {
                    c[1] = 1;
                }
            }
            for &(f1, f2) in &pairs {
                let v = check_rigidity_dichotomy(&sp, f1, f2)?;
                if v.hypothesis {
                    c[2] += 1;
                    c[3] += v.conclusion as usize;
                }
            }
            Ok(c)
        })
        .try_reduce(|| [0; 4], |a, b| Ok([a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]))?;
    let mut t = Table::new(&["base", "signings", "zero_free", "zero_free_index_two", "face_pairs", "hypothesis", "conclusion"]);
    t.push(vec![
        which.into(),
        total.into(),
        counts[0].into(),
        counts[1].into(),
        pairs.len().into(),
        counts[2].into(),
        counts[3].into(),
    ]);
    let mut checks = Vec::new();
    if check {
        checks.push(Check::new("index_two", counts[0] == counts[1], format!("{}/{}", counts[1], counts[0])));
        checks.push(Check::new(
            "dichotomy",
            counts[2] == counts[3],
            format!("{}/{}", counts[3], counts[2]),
        ));
    }
    Ok(Outcome::table(t, checks))
}

pub fn realize_cmd(p: &CombPolyhedron, svg: Option<&Path>, pattern: Option<&Path>, check: bool) -> CliResult<Outcome> {
    let pat = right(p)?;
    let vol = polyhedron_volume(&pat)?;
    if let Some(path) = svg {
        fs::write(path, svg_string(&pat))?;
    }
    if let Some(path) = pattern {
        fs::write(path, pat.to_json())?;
    }
    let mut t = Table::new(&["faces", "vertices", "edges", "volume", "residual"]);
    t.push(vec![p.faces.len().into(), p.vertex_count.into(), p.edge_count().into(), vol.into(), pat.residual.into()]);
    let mut checks = Vec::new();
    if check {
        checks.push(Check::new("residual", pat.residual < ACCEPT_RESIDUAL, fmt(pat.residual)));
        let worst = p
            .edges()?
            .iter()
            .map(|e| (dihedral_angle(&pat.normals[e.left], &pat.normals[e.right]) - PI / 2.0).abs())
            .fold(0.0, f64::max);
        checks.push(Check::new("right_angles", worst < 1e-8, fmt(worst)));
        if *p == drum(3)? {
            let exact = 8.0 * lobachevsky(FRAC_PI_4);
            checks.push(Check::new("octahedron_volume", (vol - exact).abs() < 1e-8, fmt(vol - exact)));
        }
    }
    Ok(Outcome::table(t, checks))
}

fn verdict_row(v: &DrillVerdict) -> Vec<Cell> {
    vec![
        v.polyhedron_code.clone().into(),
        v.spec.face.into(),
        v.spec.e1.into(),
        v.spec.e2.into(),
        v.face_n.into(),
        v.l.into(),
        v.volume_before.into(),
        v.volume_after.into(),
        v.delta_v.into(),
        v.pi_bound.into(),
        v.k_bound.into(),
        v.delta_v_cover.into(),
        v.length_cover.into(),
        v.pi_l_cover.into(),
        v.pass_pi.into(),
        v.pass_k.into(),
    ]
}

const VERDICT_COLUMNS: [&str; 16] = [
    "code", "face", "e1", "e2", "n", "l", "V", "V_prime", "dV", "pi_l_half", "K_bound", "dV_cover", "L_cover",
    "pi_L_cover", "pass_pi", "pass_k",
];

pub fn drill(polys: &[CombPolyhedron], spec: Option<SurgerySpec>, check: bool) -> CliResult<Outcome> {
    let opts = RealizeOptions::default();
    let rows = match spec {
        Some(s) => vec![drill_report(&polys[0], &s, &opts)?],
        None => drill_inventory(polys, &opts)?,
    };
    let mut t = Table::new(&VERDICT_COLUMNS);
    for v in &rows {
        t.push(verdict_row(v));
    }
    let mut checks = Vec::new();
    if check {
        let worst = rows.iter().map(|v| v.delta_v - v.pi_bound).fold(f64::NEG_INFINITY, f64::max);
        let positive = rows.iter().all(|v| v.delta_v > 0.0);
        checks.push(Check::new(
            "pi_l_bound",
            positive && rows.iter().all(|v| v.pass_pi),
            format!("{} surgeries, max dV - pi l/2 = {}", rows.len(), fmt(worst)),
        ));
        let worst_k = rows.iter().map(|v| v.delta_v - v.k_bound).fold(f64::NEG_INFINITY, f64::max);
        checks.push(Check::new("k_bound", rows.iter().all(|v| v.pass_k), format!("max dV - K(n-3) = {}", fmt(worst_k))));
        let cover = rows.iter().all(|v| v.delta_v_cover <= v.pi_l_cover + 4.0 * BOUND_SLACK);
        checks.push(Check::new("cover_chain", cover, "4 dV <= pi L, L = 2 l"));
    }
    Ok(Outcome::table(t, checks))
}

/// from, from + step, ... below `to`, then `to` itself.
pub fn theta_grid(from: f64, to: f64, step: f64) -> CliResult<Vec<f64>> {
    if !(step > 0.0) || !(from > 0.0) || !(from < to) || to > PI / 2.0 + 1e-12 {
        return Err(usage("theta grid needs 0 < from < to <= pi/2 and step > 0"));
    }
    let mut g = Vec::new();
    let mut k = 0usize;
    loop {
        let th = from + step * k as f64;
        if th >= to - 1e-9 * step {
            break;
        }
        g.push(th);
        k += 1;
    }
    g.push(to);
    if g.len() < 3 {
        return Err(usage("theta grid needs at least three points"));
    }
    Ok(g)
}

pub fn deform(p: &CombPolyhedron, s: &SurgerySpec, grid: &[f64], step: f64, check: bool) -> CliResult<Outcome> {
    let opts = RealizeOptions::default();
    let fam = deform_family(p, s, grid, &opts)?;
    let n = p.faces[s.face].len();
    let bends = family_bend_check(&fam, n)?;
    let mut t = Table::new(&["theta", "l", "volume", "bend_bound", "pass"]);
    for (smp, b) in fam.samples.iter().zip(&bends) {
        t.push(vec![smp.theta.into(), smp.l.into(), smp.volume.into(), b.bound.into(), b.pass.into()]);
    }
    let mut checks = Vec::new();
    if check {
        let res = schlafli_residual(&fam)?;
        checks.push(Check::new("schlafli", res < 1e-4, format!("max |dV/dtheta + l/2| = {}", fmt(res))));
        let fine_grid = theta_grid(grid[0], *grid.last().expect("grid"), step / 10.0)?;
        let fine = schlafli_residual(&deform_family(p, s, &fine_grid, &opts)?)?;
        checks.push(Check::new("schlafli_refined", fine * 10.0 <= res, format!("{} -> {}", fmt(res), fmt(fine))));
        let smp = &fam.samples;
        let l_up = smp.windows(2).all(|w| w[1].l > w[0].l);
        let v_down = smp.windows(2).all(|w| w[1].volume < w[0].volume);
        checks.push(Check::new("l_increasing", l_up, format!("{} samples", smp.len())));
        checks.push(Check::new("volume_decreasing", v_down, format!("{} samples", smp.len())));
        checks.push(Check::new("bend_bound", bends.iter().all(|b| b.pass), "l <= bend_bound(theta, n)"));
    }
    Ok(Outcome::table(t, checks))
}

/// Four points on a random circle, sorted by angle and not too close.
pub fn random_quad(rng: &mut ChaCha8Rng) -> [ComplexPoint; 4] {
    loop {
        let center = C64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let radius = rng.gen_range(0.2..4.0);
        let mut t: Vec<f64> = (0..4).map(|_| rng.gen_range(0.0..2.0 * PI)).collect();
        t.sort_by(f64::total_cmp);
        let gap = (0..4).map(|i| (t[(i + 1) % 4] - t[i]).rem_euclid(2.0 * PI)).fold(f64::INFINITY, f64::min);
        if gap >= 0.05 {
            let q: Vec<ComplexPoint> = t.iter().map(|&a| ComplexPoint::Finite(center + C64::from_polar(radius, a))).collect();
            return [q[0], q[1], q[2], q[3]];
        }
    }
}

const CATALAN: f64 = 0.915_965_594_177_219_015;

pub fn bounds(quads: usize, seed: u64, drums: &str, check: bool) -> CliResult<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst_perp: f64 = 0.0;
    for _ in 0..quads {
        let (d1, d2) = quad_perpendiculars(random_quad(&mut rng))?;
        worst_perp = worst_perp.max(((d1 / 2.0).sinh() * (d2 / 2.0).sinh() - 1.0).abs());
    }
    let integral = bend_integral(40);
    let k = combinatorial_k();
    let polys: Vec<CombPolyhedron> = parse_range(drums)?.into_iter().map(drum).collect::<Result<_, _>>()?;
    let mut worst_thin = f64::NEG_INFINITY;
    let mut thin_count = 0usize;
    // the drums and every polyhedron one surgery away
    let mut inventory = polys.clone();
    for p in &polys {
        for s in distinct_surgeries(p)? {
            inventory.push(surgery(p, &s)?);
        }
    }
    for p in &inventory {
        for r in thin_inventory(&right(p)?)? {
            worst_thin = worst_thin.max(r.lhs);
            thin_count += 1;
        }
    }
    let verdicts = drill_inventory(&polys, &RealizeOptions::default())?;
    let worst_k = verdicts.iter().map(|v| v.delta_v - v.k_bound).fold(f64::NEG_INFINITY, f64::max);
    let mut t = Table::new(&["quantity", "value", "reference", "pass"]);
    let perp_ok = worst_perp < 1e-9;
    let int_ok = (integral - 4.0 * CATALAN).abs() < 1e-10;
    let k_ok = (k - 10.083).abs() < 1e-3;
    let thin_ok = worst_thin <= 1.0 + 1e-9;
    let kb_ok = worst_k <= BOUND_SLACK;
    t.push(vec!["perpendicular_identity_max_dev".into(), worst_perp.into(), 0.0.into(), perp_ok.into()]);
    t.push(vec!["bend_integral".into(), integral.into(), (4.0 * CATALAN).into(), int_ok.into()]);
    t.push(vec!["K".into(), k.into(), 10.083.into(), k_ok.into()]);
    t.push(vec!["thin_lhs_max".into(), worst_thin.into(), 1.0.into(), thin_ok.into()]);
    t.push(vec!["dV_minus_K_max".into(), worst_k.into(), 0.0.into(), kb_ok.into()]);
    let mut checks = Vec::new();
    if check {
        checks.push(Check::new("perpendiculars", perp_ok, format!("{quads} quads, {}", fmt(worst_perp))));
        checks.push(Check::new("catalan", int_ok, fmt(integral - 4.0 * CATALAN)));
        checks.push(Check::new("k_value", k_ok, fmt(k)));
        checks.push(Check::new("thin_polygons", thin_ok && thin_count > 0, format!("{thin_count} faces, max lhs {}", fmt(worst_thin))));
        checks.push(Check::new("k_bound", kb_ok, format!("{} surgeries", verdicts.len())));
    }
    Ok(Outcome::table(t, checks))
}

fn fmt(x: f64) -> String {
    crate::report::fmt_num(x)
}

pub fn brooks(ns: &[usize], a: f64, svg_dir: Option<&Path>, check: bool) -> CliResult<Outcome> {
    if !(a > 0.0) {
        return Err(usage("--a must be positive"));
    }
    let rows = family_experiment(ns, a, &RealizeOptions::default())?;
    let mut t = Table::new(&["n", "r_n", "l_n", "V_Pn", "V_Pn_prime", "dV", "K_bound", "ratio"]);
    for r in &rows {
        t.push(vec![
            r.n.into(),
            r.r_n.into(),
            r.l_n.into(),
            r.v_pn.into(),
            r.v_pn_prime.into(),
            r.dv.into(),
            r.k_bound.into(),
            r.ratio.into(),
        ]);
    }
    if let Some(dir) = svg_dir {
        fs::create_dir_all(dir)?;
        for &n in ns {
            fs::write(dir.join(format!("P{n}.svg")), svg_string(&build_pn(n)?.pattern))?;
        }
    }
    let mut checks = Vec::new();
    if check {
        let r_up = rows.windows(2).all(|w| w[0].r_n < w[1].r_n);
        checks.push(Check::new("r_increasing", r_up, rows.iter().map(|r| fmt(r.r_n)).collect::<Vec<_>>().join(" ")));
        let mut digits_ok = true;
        let mut worst_audit: f64 = 0.0;
        for &n in ns {
            let r = solve_r(n)?;
            let c = greedy_cfrac(&funnel_quad(r)?, 3)?;
            digits_ok &= c.digits == [n as u64] && c.terminated;
            let b = build_pn(n)?;
            worst_audit = worst_audit.max(b.graph.audit_error());
        }
        checks.push(Check::new("digits", digits_ok, "c(Q_r_n) = [n]"));
        checks.push(Check::new("audits", worst_audit < AUDIT_TOL, fmt(worst_audit)));
        let l_up = rows.windows(2).all(|w| w[0].l_n < w[1].l_n);
        checks.push(Check::new("l_increasing", l_up, rows.iter().map(|r| fmt(r.l_n)).collect::<Vec<_>>().join(" ")));
        if let (Some(first), Some(last)) = (rows.iter().find(|r| r.n == 1), rows.iter().find(|r| r.n == 6)) {
            let gap = last.l_n - first.l_n;
            checks.push(Check::new("l_spread", gap > 2.0, format!("l_6 - l_1 = {}", fmt(gap))));
        }
        checks.push(Check::new("dV_le_K", rows.iter().all(|r| r.dv > 0.0 && r.dv <= r.k_bound), ""));
        let ratio_down = rows.windows(2).all(|w| w[0].ratio > w[1].ratio);
        checks.push(Check::new("ratio_decreasing", ratio_down, rows.iter().map(|r| fmt(r.ratio)).collect::<Vec<_>>().join(" ")));
    }
    Ok(Outcome::table(t, checks))
}

pub fn dual_check(p: &CombPolyhedron, s: &SurgerySpec, thetas: &[f64], ts: &[f64], budget: usize, check: bool) -> CliResult<Outcome> {
    let mut t = Table::new(&["theta", "t", "min_cone_angle", "cone_violations", "shortest_edge_geodesic", "pass"]);
    let mut all = true;
    for &theta in thetas {
        let st = bent_dual(p, &AngleAssignment::right(), s, theta)?;
        let boundary = edge_geodesic_search(&st, budget);
        let len = boundary.as_ref().map(|g| g.length);
        let ok = len.is_some_and(|l| (l - 2.0 * PI).abs() < 1e-12);
        let min0 = st.cone_angles().into_iter().fold(f64::INFINITY, f64::min);
        all &= ok;
        t.push(vec![theta.into(), 0.0.into(), min0.into(), "".into(), len.map_or(Cell::from("none"), Cell::from), ok.into()]);
        for &tt in ts {
            let s2 = scale_and_polarize(&st, tt)?;
            let viol = s2.cone_violations(0.0).len();
            let min = s2.cone_angles().into_iter().fold(f64::INFINITY, f64::min);
            let g = edge_geodesic_search(&s2, budget).map(|g| g.length);
            let ok = viol == 0 && g.is_none_or(|l| l > 2.0 * PI);
            all &= ok;
            t.push(vec![theta.into(), tt.into(), min.into(), viol.into(), g.map_or(Cell::from("none"), Cell::from), ok.into()]);
        }
    }
    let mut checks = Vec::new();
    if check {
        checks.push(Check::new("dual_conditions", all, "cone angles > 2pi, no edge geodesic <= 2pi, equator at 2pi for t = 0"));
    }
    Ok(Outcome::table(t, checks))
}

pub fn render(p: Option<&CombPolyhedron>, brooks_n: Option<usize>) -> CliResult<Outcome> {
    let pat = match (p, brooks_n) {
        (Some(p), None) => right(p)?,
        (None, Some(n)) => build_pn(n)?.pattern,
        _ => return Err(usage("render needs a polyhedron or --brooks N")),
    };
    Ok(Outcome { table: Table::default(), checks: Vec::new(), raw: Some(svg_string(&pat)) })
}

