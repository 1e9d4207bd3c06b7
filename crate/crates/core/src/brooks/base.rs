//! The five-circle family, its expanded copy and the tangency audit.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{to_mink_plane, ComplexPoint, GenCircle, MinkVector, C64};

/// Tolerance for tangency and orthogonality audits on Minkowski products.
pub const AUDIT_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BasePattern {
    pub r: f64,
    /// C0, C1, C1′, C2, C2′.
    pub circles: [GenCircle; 5],
}

pub fn base_pattern(r: f64) -> Result<BasePattern> {
    if !(r > 1.0) || !r.is_finite() {
        return Err(Error::InvalidParameter(format!("r = {r} must exceed 1")));
    }
    let s1 = (1.0 + r * r).sqrt();
    let s2 = (1.0 + 1.0 / (r * r)).sqrt();
    Ok(BasePattern {
        r,
        circles: [
            GenCircle::circle(C64::new(0.0, 0.0), 1.0)?,
            GenCircle::circle(C64::new(s1, 0.0), r)?,
            GenCircle::circle(C64::new(-s1, 0.0), r)?,
            GenCircle::circle(C64::new(0.0, s2), 1.0 / r)?,
            GenCircle::circle(C64::new(0.0, -s2), 1.0 / r)?,
        ],
    })
}

/// k_r = r² + √(r⁴ − 1), the larger root of k² − 2r²k + 1 = 0.
pub fn expansion_factor(r: f64) -> Result<f64> {
    if !(r >= 1.0) || !r.is_finite() {
        return Err(Error::InvalidParameter(format!("no real expansion factor for r = {r}")));
    }
    let r2 = r * r;
    Ok(r2 + ((r2 - 1.0) * (r2 + 1.0)).sqrt())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Incidence {
    Tangent,
    Orthogonal,
    Disjoint,
    Crossing,
    Nested,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LabeledCircle {
    pub label: String,
    /// 0 for the base family, 1 for its image, 2 for packed circles, 3 for
    /// truncation circles.
    pub family: u8,
    pub circle: GenCircle,
    /// Unit normal, positive on the side the circle cuts away.
    pub normal: MinkVector,
}

impl LabeledCircle {
    pub fn new(label: impl Into<String>, family: u8, circle: GenCircle) -> Self {
        LabeledCircle { label: label.into(), family, circle, normal: to_mink_plane(&circle) }
    }

    /// Same curve, cutting away the other side.
    pub fn flipped(mut self) -> Self {
        self.normal = self.normal * -1.0;
        self
    }

    pub fn cuts_exterior(&self) -> bool {
        match self.circle {
            GenCircle::Circle { center, .. } => {
                let p = crate::geom::ideal_point(&ComplexPoint::Finite(center));
                self.normal.dot(&p) < 0.0
            }
            GenCircle::Line { .. } => false,
        }
    }
}

/// ⟨ν_a, ν_b⟩. Two circles use (r_a² + r_b² − d²)/(2 r_a r_b), which keeps
/// its accuracy when the normals have large components.
pub fn pair_value(a: &LabeledCircle, b: &LabeledCircle) -> f64 {
    match (a.circle, b.circle) {
        (GenCircle::Circle { center: ca, radius: ra }, GenCircle::Circle { center: cb, radius: rb }) => {
            let sign = |c: &LabeledCircle| c.normal.dot(&to_mink_plane(&c.circle)).signum();
            let d2 = (ca - cb).norm_sqr();
            sign(a) * sign(b) * (ra * ra + rb * rb - d2) / (2.0 * ra * rb)
        }
        _ => a.normal.dot(&b.normal),
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairRecord {
    pub a: usize,
    pub b: usize,
    pub value: f64,
    pub kind: Incidence,
}

pub fn classify(value: f64) -> Incidence {
    if (value + 1.0).abs() <= AUDIT_TOL {
        Incidence::Tangent
    } else if value.abs() <= AUDIT_TOL {
        Incidence::Orthogonal
    } else if value < -1.0 {
        Incidence::Disjoint
    } else if value < 1.0 {
        Incidence::Crossing
    } else {
        Incidence::Nested
    }
}

/// Circles with every pairwise incidence and the tangency points.
#[derive(Clone, Debug, PartialEq)]
pub struct TangencyGraph {
    pub circles: Vec<LabeledCircle>,
    pub pairs: Vec<PairRecord>,
    /// (a, b, point) for every tangent pair.
    pub tangency_points: Vec<(usize, usize, C64)>,
}

impl TangencyGraph {
    pub fn new(circles: Vec<LabeledCircle>) -> Result<Self> {
        let mut g = TangencyGraph { circles: Vec::new(), pairs: Vec::new(), tangency_points: Vec::new() };
        for c in circles {
            g.push(c)?;
        }
        Ok(g)
    }

    /// Adds a circle and audits it against all earlier ones.
    pub fn push(&mut self, c: LabeledCircle) -> Result<usize> {
        let b = self.circles.len();
        for a in 0..b {
            let value = pair_value(&self.circles[a], &c);
            let kind = classify(value);
            if kind == Incidence::Tangent {
                let t = tangency_point(&self.circles[a].circle, &c.circle)?;
                self.tangency_points.push((a, b, t));
            }
            self.pairs.push(PairRecord { a, b, value, kind });
        }
        self.circles.push(c);
        Ok(b)
    }

    pub fn index(&self, label: &str) -> Option<usize> {
        self.circles.iter().position(|c| c.label == label)
    }

    pub fn pair(&self, a: usize, b: usize) -> Option<&PairRecord> {
        let (a, b) = (a.min(b), a.max(b));
        self.pairs.iter().find(|p| p.a == a && p.b == b)
    }

    pub fn tangent_neighbors(&self, a: usize) -> Vec<(usize, C64)> {
        self.tangency_points
            .iter()
            .filter_map(|&(x, y, t)| if x == a { Some((y, t)) } else if y == a { Some((x, t)) } else { None })
            .collect()
    }

    /// Largest deviation of a tangent or orthogonal pair from its exact value.
    pub fn audit_error(&self) -> f64 {
        self.pairs
            .iter()
            .map(|p| match p.kind {
                Incidence::Tangent => (p.value + 1.0).abs(),
                Incidence::Orthogonal => p.value.abs(),
                _ => 0.0,
            })
            .fold(0.0, f64::max)
    }
}

/// Point of contact of two tangent circles (or a circle and a line).
pub fn tangency_point(a: &GenCircle, b: &GenCircle) -> Result<C64> {
    match (*a, *b) {
        (GenCircle::Circle { center: ca, radius: ra }, GenCircle::Circle { center: cb, radius: rb }) => {
            let d = cb - ca;
            let len = d.norm();
            if len == 0.0 {
                return Err(Error::InvalidInput("concentric circles are not tangent".into()));
            }
            let u = d / len;
            // the contact lies on the center line, on both circles
            let pick = |c: C64, r: f64, oc: C64, or: f64| {
                let (p, q) = (c + u * r, c - u * r);
                if ((p - oc).norm() - or).abs() <= ((q - oc).norm() - or).abs() {
                    p
                } else {
                    q
                }
            };
            Ok((pick(ca, ra, cb, rb) + pick(cb, rb, ca, ra)) * 0.5)
        }
        (GenCircle::Circle { center, .. }, GenCircle::Line { normal, offset })
        | (GenCircle::Line { normal, offset }, GenCircle::Circle { center, .. }) => {
            let s = (normal.conj() * center).re - offset;
            Ok(center - normal * s)
        }
        _ => Err(Error::InvalidInput("parallel lines touch at infinity".into())),
    }
}

/// The ten circles of the base family and its image under z ↦ i·k_r·z.
/// The image of C0 cuts away its exterior.
pub fn extended_pattern(r: f64) -> Result<TangencyGraph> {
    let base = base_pattern(r)?;
    let k = expansion_factor(r)?;
    let names = ["C0", "C1", "C1'", "C2", "C2'"];
    let mut circles = Vec::with_capacity(10);
    for (name, c) in names.iter().zip(base.circles) {
        circles.push(LabeledCircle::new(*name, 0, c));
    }
    for (i, (name, c)) in names.iter().zip(base.circles).enumerate() {
        let GenCircle::Circle { center, radius } = c else { unreachable!() };
        let img = GenCircle::circle(C64::new(0.0, k) * center, k * radius)?;
        let lc = LabeledCircle::new(format!("M({name})"), 1, img);
        circles.push(if i == 0 { lc.flipped() } else { lc });
    }
    let g = TangencyGraph::new(circles)?;
    let mut cross_tangent = Vec::new();
    for p in &g.pairs {
        if g.circles[p.a].family == g.circles[p.b].family {
            continue;
        }
        match p.kind {
            Incidence::Disjoint => {}
            Incidence::Tangent => cross_tangent.push((g.circles[p.a].label.clone(), g.circles[p.b].label.clone())),
            _ => return Err(Error::RTooSmall(r)),
        }
    }
    let mut want: Vec<(String, String)> = ["C1", "C1'"]
        .iter()
        .flat_map(|a| ["M(C1)", "M(C1')"].iter().map(move |b| (a.to_string(), b.to_string())))
        .collect();
    want.sort();
    cross_tangent.sort();
    if cross_tangent != want {
        return Err(Error::RTooSmall(r));
    }
    for fam in 0..2u8 {
        let at = |l: &str| g.index(&if fam == 0 { l.to_string() } else { format!("M({l})") }).expect("label");
        for side in ["C1", "C1'", "C2", "C2'"] {
            expect(&g, at("C0"), at(side), Incidence::Orthogonal)?;
        }
        for (a, b) in [("C2", "C1"), ("C2", "C1'"), ("C2'", "C1"), ("C2'", "C1'")] {
            expect(&g, at(a), at(b), Incidence::Tangent)?;
        }
    }
    Ok(g)
}

fn expect(g: &TangencyGraph, a: usize, b: usize, kind: Incidence) -> Result<()> {
    let p = g.pair(a, b).expect("pair recorded");
    if p.kind != kind {
        return Err(Error::ConstructionViolated(format!(
            "{} and {} should be {kind:?}, product {}",
            g.circles[a].label, g.circles[b].label, p.value
        )));
    }
    Ok(())
}
