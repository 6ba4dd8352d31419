//! Two-dimensional interference landscapes.
//!
//! Each concept gets a Gaussian intensity field `|ψ|²` on the plane. Every
//! exemplar is placed where both fields take its probabilities, a phase field
//! is interpolated between the exemplars, and the fields are sampled as
//!
//! ```text
//! classical = ½(|ψ_A|² + |ψ_B|²)
//! quantum   = classical + |ψ_A| |ψ_B| cos θ(x, y)
//! ```

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::ops::Range;

use crate::error::{Error, Offender, Result};
use crate::hilbert::{DisjunctionData, DisjunctionModel};
use crate::math::{acos_deg, sincos_deg};

pub const SIGMA_SWEEP_MIN: f64 = 0.5;
pub const SIGMA_SWEEP_MAX: f64 = 50.0;
pub const SIGMA_SWEEP_STEP: f64 = 0.05;
/// Factor applied to the smallest fully feasible sigma.
pub const SIGMA_MARGIN: f64 = 1.05;
/// Minimum share of (non-peak) exemplars whose circles must intersect.
pub const MIN_FEASIBLE_FRACTION: f64 = 0.9;
/// Intensity tolerance for an exact placement.
pub const PLACEMENT_TOLERANCE: f64 = 1e-9;
/// Distance below which a preferred intersection point counts as occupied.
pub const CROWDING_DISTANCE: f64 = 0.1;

/// Default centers: `A` at the origin, `B` at `(10, 4)`.
pub const DEFAULT_CENTER_A: Point = Point::new(0.0, 0.0);
pub const DEFAULT_CENTER_B: Point = Point::new(10.0, 4.0);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance(self, other: Point) -> f64 {
        libm::hypot(self.x - other.x, self.y - other.y)
    }
}

/// Isotropic Gaussian intensity `amplitude · exp(-r² / 2σ²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianField {
    center: Point,
    sigma: f64,
    amplitude: f64,
}

impl GaussianField {
    pub fn new(center: Point, sigma: f64, amplitude: f64) -> Result<Self> {
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::data(format!("sigma must be positive, got {sigma}")));
        }
        if !(amplitude > 0.0 && amplitude.is_finite()) {
            return Err(Error::data(format!(
                "amplitude must be positive, got {amplitude}"
            )));
        }
        Ok(Self {
            center,
            sigma,
            amplitude,
        })
    }

    pub fn center(&self) -> Point {
        self.center
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    /// `|ψ|²` at `p`.
    pub fn intensity(&self, p: Point) -> f64 {
        let d2 = (p.x - self.center.x) * (p.x - self.center.x)
            + (p.y - self.center.y) * (p.y - self.center.y);
        self.amplitude * libm::exp(-d2 / (2.0 * self.sigma * self.sigma))
    }

    /// `|ψ|` at `p`.
    pub fn magnitude(&self, p: Point) -> f64 {
        libm::sqrt(self.intensity(p))
    }

    /// Distance from the center at which the intensity equals `weight`.
    pub fn target_radius(&self, weight: f64) -> Result<f64> {
        Ok(self.sigma * unit_radius(self.amplitude, weight)?)
    }
}

/// Target radius for `sigma = 1`.
fn unit_radius(amplitude: f64, weight: f64) -> Result<f64> {
    if weight > amplitude {
        return Err(Error::data(format!(
            "weight {weight} exceeds the field amplitude {amplitude}"
        )));
    }
    if !(weight > 0.0) {
        return Err(Error::data(format!(
            "weight {weight} has no finite radius in a Gaussian field"
        )));
    }
    Ok(libm::sqrt(2.0 * libm::log(amplitude / weight)))
}

fn circles_meet(ra: f64, rb: f64, dist: f64) -> bool {
    let eps = 1e-12 * dist;
    (ra - rb).abs() <= dist + eps && dist <= ra + rb + eps
}

/// Fits both fields to the data: amplitudes at the column maxima and one
/// shared sigma from a sweep over `[0.5, 50]` in steps of `0.05`.
///
/// Exemplars sitting at a field's peak are pinned to that field's center and
/// left out of the feasibility count. The chosen sigma is `1.05 ×` the
/// smallest sigma for which the two target circles of every other exemplar
/// intersect (or that smallest sigma if the margin breaks feasibility). When
/// no sigma works for everyone, the smallest sigma with the most feasible
/// exemplars is used, provided it reaches 90%.
pub fn fit_fields(
    d: &DisjunctionData,
    center_a: Point,
    center_b: Point,
) -> Result<(GaussianField, GaussianField)> {
    let dist = center_a.distance(center_b);
    if !(dist > 0.0) {
        return Err(Error::data("field centers must be distinct"));
    }
    let amp_a = d.mu_a().iter().copied().fold(0.0, f64::max);
    let amp_b = d.mu_b().iter().copied().fold(0.0, f64::max);
    let rho: Vec<(f64, f64)> = (0..d.len())
        .map(|k| {
            Ok((
                unit_radius(amp_a, d.mu_a()[k])?,
                unit_radius(amp_b, d.mu_b()[k])?,
            ))
        })
        .collect::<Result<_>>()?;
    let free: Vec<usize> = (0..d.len())
        .filter(|&k| rho[k].0 > 0.0 && rho[k].1 > 0.0)
        .collect();
    let feasible_at = |sigma: f64| {
        free.iter()
            .filter(|&&k| circles_meet(rho[k].0 * sigma, rho[k].1 * sigma, dist))
            .count()
    };

    let steps = libm::round((SIGMA_SWEEP_MAX - SIGMA_SWEEP_MIN) / SIGMA_SWEEP_STEP) as usize;
    let sweep = (0..=steps).map(|i| SIGMA_SWEEP_MIN + SIGMA_SWEEP_STEP * i as f64);
    let mut best: Option<(f64, usize)> = None;
    let mut chosen = None;
    for sigma in sweep {
        let count = feasible_at(sigma);
        if count == free.len() {
            let widened = SIGMA_MARGIN * sigma;
            chosen = Some(if feasible_at(widened) == free.len() {
                widened
            } else {
                sigma
            });
            break;
        }
        if best.is_none_or(|(_, c)| count > c) {
            best = Some((sigma, count));
        }
    }
    let sigma = match (chosen, best) {
        (Some(s), _) => s,
        (None, Some((s, count))) if count as f64 >= MIN_FEASIBLE_FRACTION * free.len() as f64 => s,
        (None, best) => {
            let (s, count) = best.unwrap_or((SIGMA_SWEEP_MIN, 0));
            let offenders = free
                .iter()
                .filter(|&&k| !circles_meet(rho[k].0 * s, rho[k].1 * s, dist))
                .map(|&k| {
                    let (ra, rb) = (rho[k].0 * s, rho[k].1 * s);
                    let gap = if ra + rb < dist {
                        dist - ra - rb
                    } else {
                        (ra - rb).abs() - dist
                    };
                    Offender {
                        index: k,
                        label: d.labels()[k].clone(),
                        value: gap,
                    }
                })
                .collect();
            return Err(Error::Infeasible {
                reason: format!(
                    "best sigma {s} places only {count} of {} exemplars exactly (circle gaps listed)",
                    free.len()
                ),
                offenders,
            });
        }
    };
    Ok((
        GaussianField::new(center_a, sigma, amp_a)?,
        GaussianField::new(center_b, sigma, amp_b)?,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Placement {
    pub position: Point,
    /// `√((|p - c_A| - r_A)² + (|p - c_B| - r_B)²)`.
    pub residual: f64,
    /// Both field intensities match the exemplar's weights within `1e-9`.
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlacementSet {
    placements: Vec<Placement>,
}

impl PlacementSet {
    pub fn new(placements: Vec<Placement>) -> Self {
        Self { placements }
    }

    pub fn len(&self) -> usize {
        self.placements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.placements.is_empty()
    }

    pub fn as_slice(&self) -> &[Placement] {
        &self.placements
    }

    pub fn positions(&self) -> impl Iterator<Item = Point> + '_ {
        self.placements.iter().map(|p| p.position)
    }

    pub fn exact_count(&self) -> usize {
        self.placements.iter().filter(|p| p.exact).count()
    }
}

impl core::ops::Index<usize> for PlacementSet {
    type Output = Placement;

    fn index(&self, i: usize) -> &Placement {
        &self.placements[i]
    }
}

/// Intersection points of two circles, `None` when they do not meet.
fn circle_intersections(ca: Point, ra: f64, cb: Point, rb: f64) -> Option<(Point, Point)> {
    let dist = ca.distance(cb);
    if !circles_meet(ra, rb, dist) {
        return None;
    }
    let (ux, uy) = ((cb.x - ca.x) / dist, (cb.y - ca.y) / dist);
    let along = (ra * ra - rb * rb + dist * dist) / (2.0 * dist);
    let h = libm::sqrt((ra * ra - along * along).max(0.0));
    let (mx, my) = (ca.x + along * ux, ca.y + along * uy);
    Some((
        Point::new(mx - h * uy, my + h * ux),
        Point::new(mx + h * uy, my - h * ux),
    ))
}

/// Point on the line through both centers minimising the squared radial
/// errors.
fn radial_compromise(ca: Point, ra: f64, cb: Point, rb: f64) -> Point {
    let dist = ca.distance(cb);
    let cost = |t: f64| {
        let ea = t.abs() - ra;
        let eb = (dist - t).abs() - rb;
        ea * ea + eb * eb
    };
    let candidates = [
        ((dist - ra - rb) / 2.0).min(0.0),
        ((ra + dist - rb) / 2.0).clamp(0.0, dist),
        ((ra + dist + rb) / 2.0).max(dist),
    ];
    let t = candidates
        .into_iter()
        .fold((f64::INFINITY, 0.0), |(best_cost, best_t), t| {
            let c = cost(t);
            if c < best_cost {
                (c, t)
            } else {
                (best_cost, best_t)
            }
        })
        .1;
    Point::new(
        ca.x + t * (cb.x - ca.x) / dist,
        ca.y + t * (cb.y - ca.y) / dist,
    )
}

/// Places every exemplar so that `|ψ_A|²` and `|ψ_B|²` take its weights.
///
/// A peak exemplar sits on its field's center. Otherwise the exemplar goes to
/// the intersection of its two target circles with the larger `y` (larger `x`
/// on ties), or the other intersection when that point is within `0.1` of an
/// earlier placement. Circles that miss each other fall back to the radial
/// least-squares point on the line through the centers, flagged inexact.
pub fn place_exemplars(
    d: &DisjunctionData,
    field_a: &GaussianField,
    field_b: &GaussianField,
) -> Result<PlacementSet> {
    let (ca, cb) = (field_a.center(), field_b.center());
    let mut placed: Vec<Placement> = Vec::with_capacity(d.len());
    for k in 0..d.len() {
        let (wa, wb) = (d.mu_a()[k], d.mu_b()[k]);
        let ra = field_a.target_radius(wa)?;
        let rb = field_b.target_radius(wb)?;
        let (position, can_be_exact) = if ra == 0.0 {
            (ca, true)
        } else if rb == 0.0 {
            (cb, true)
        } else if let Some((p, q)) = circle_intersections(ca, ra, cb, rb) {
            let (first, second) = if (p.y, p.x) >= (q.y, q.x) {
                (p, q)
            } else {
                (q, p)
            };
            let crowded = placed
                .iter()
                .any(|pl| pl.position.distance(first) < CROWDING_DISTANCE);
            (if crowded { second } else { first }, true)
        } else {
            (radial_compromise(ca, ra, cb, rb), false)
        };
        let ea = position.distance(ca) - ra;
        let eb = position.distance(cb) - rb;
        let exact = can_be_exact
            && (field_a.intensity(position) - wa).abs() <= PLACEMENT_TOLERANCE
            && (field_b.intensity(position) - wb).abs() <= PLACEMENT_TOLERANCE;
        placed.push(Placement {
            position,
            residual: libm::sqrt(ea * ea + eb * eb),
            exact,
        });
    }
    Ok(PlacementSet::new(placed))
}

/// Phase that makes `½(μ_A + μ_B) + √(μ_A μ_B) cos θ̃_k` hit `μ(A or B)_k`
/// exactly, i.e. `β_k` with `c_k` absorbed. Sign follows `λ_k`.
pub fn effective_phase(d: &DisjunctionData, model: &DisjunctionModel, k: usize) -> f64 {
    let root = libm::sqrt(d.mu_a()[k] * d.mu_b()[k]);
    if root == 0.0 {
        return 90.0;
    }
    model.signs()[k].value() * acos_deg(d.deviation(k) / root)
}

pub fn effective_phases(d: &DisjunctionData, model: &DisjunctionModel) -> Result<Vec<f64>> {
    if d.len() != model.len() {
        return Err(Error::data(format!(
            "model has {} exemplars, data has {}",
            model.len(),
            d.len()
        )));
    }
    Ok((0..d.len()).map(|k| effective_phase(d, model, k)).collect())
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct PhaseNode {
    position: Point,
    deg: f64,
    cos: f64,
    sin: f64,
}

/// Phase field interpolated by inverse squared distance on unit vectors
/// `(cos θ, sin θ)`. At a node the node's own phase is returned exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseField {
    nodes: Vec<PhaseNode>,
}

impl PhaseField {
    pub fn new(placements: &PlacementSet, phases_deg: &[f64]) -> Result<Self> {
        let points: Vec<Point> = placements.positions().collect();
        Self::from_points(&points, phases_deg)
    }

    pub fn from_points(points: &[Point], phases_deg: &[f64]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::data("phase field needs at least one node"));
        }
        if points.len() != phases_deg.len() {
            return Err(Error::data(format!(
                "{} placements but {} phases",
                points.len(),
                phases_deg.len()
            )));
        }
        let nodes = points
            .iter()
            .zip(phases_deg)
            .map(|(&position, &deg)| {
                let (sin, cos) = sincos_deg(deg);
                PhaseNode {
                    position,
                    deg,
                    cos,
                    sin,
                }
            })
            .collect();
        Ok(Self { nodes })
    }

    /// A field with the same phase everywhere.
    pub fn constant(deg: f64) -> Self {
        Self::from_points(&[Point::new(0.0, 0.0)], &[deg]).expect("one node")
    }

    fn nearest(&self, p: Point) -> &PhaseNode {
        let mut best = &self.nodes[0];
        let mut best_d = best.position.distance(p);
        for n in &self.nodes[1..] {
            let d = n.position.distance(p);
            if d < best_d {
                best = n;
                best_d = d;
            }
        }
        best
    }

    /// `(cos θ, sin θ)` at `p`.
    pub fn direction(&self, p: Point) -> (f64, f64) {
        let nearest = self.nearest(p);
        if nearest.position.distance(p) == 0.0 || self.nodes.len() == 1 {
            return (nearest.cos, nearest.sin);
        }
        let (mut c, mut s) = (0.0, 0.0);
        for n in &self.nodes {
            let dx = n.position.x - p.x;
            let dy = n.position.y - p.y;
            let w = 1.0 / (dx * dx + dy * dy);
            c += w * n.cos;
            s += w * n.sin;
        }
        let norm = libm::hypot(c, s);
        if norm == 0.0 {
            return (nearest.cos, nearest.sin);
        }
        (c / norm, s / norm)
    }

    /// `θ` in degrees at `p`, in `(-180, 180]` away from nodes.
    pub fn angle_deg(&self, p: Point) -> f64 {
        let nearest = self.nearest(p);
        if nearest.position.distance(p) == 0.0 || self.nodes.len() == 1 {
            return nearest.deg;
        }
        let (c, s) = self.direction(p);
        libm::atan2(s, c).to_degrees()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GridKind {
    FieldA,
    FieldB,
    Classical,
    Quantum,
    /// `|ψ_A||ψ_B| cos θ` on its own.
    Interference,
}

impl GridKind {
    pub const ALL: [GridKind; 5] = [
        GridKind::FieldA,
        GridKind::FieldB,
        GridKind::Classical,
        GridKind::Quantum,
        GridKind::Interference,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            GridKind::FieldA => "fieldA",
            GridKind::FieldB => "fieldB",
            GridKind::Classical => "classical",
            GridKind::Quantum => "quantum",
            GridKind::Interference => "interference",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extent {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

impl Extent {
    pub fn new(xmin: f64, xmax: f64, ymin: f64, ymax: f64) -> Result<Self> {
        let finite = [xmin, xmax, ymin, ymax].iter().all(|v| v.is_finite());
        if !finite || !(xmin < xmax) || !(ymin < ymax) {
            return Err(Error::data(format!(
                "degenerate extent x [{xmin}, {xmax}], y [{ymin}, {ymax}]"
            )));
        }
        Ok(Self {
            xmin,
            xmax,
            ymin,
            ymax,
        })
    }

    /// Bounding box of the placements padded by `2σ` on every side.
    pub fn around(placements: &PlacementSet, sigma: f64) -> Result<Self> {
        let mut it = placements.positions();
        let first = it
            .next()
            .ok_or_else(|| Error::data("no placements to bound"))?;
        let (mut x0, mut x1, mut y0, mut y1) = (first.x, first.x, first.y, first.y);
        for p in it {
            x0 = x0.min(p.x);
            x1 = x1.max(p.x);
            y0 = y0.min(p.y);
            y1 = y1.max(p.y);
        }
        let pad = 2.0 * sigma;
        Self::new(x0 - pad, x1 + pad, y0 - pad, y1 + pad)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Resolution {
    pub nx: usize,
    pub ny: usize,
}

impl Resolution {
    pub const DEFAULT: Resolution = Resolution { nx: 400, ny: 300 };

    pub fn new(nx: usize, ny: usize) -> Result<Self> {
        if nx < 2 || ny < 2 {
            return Err(Error::data(format!("resolution {nx}x{ny} is below 2x2")));
        }
        Ok(Self { nx, ny })
    }
}

/// Sample positions of a grid. Row 0 is the top edge (`y = ymax`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridGeometry {
    pub extent: Extent,
    pub resolution: Resolution,
}

impl GridGeometry {
    pub fn x_at(&self, i: usize) -> f64 {
        let e = &self.extent;
        e.xmin + (e.xmax - e.xmin) * i as f64 / (self.resolution.nx - 1) as f64
    }

    pub fn y_at(&self, j: usize) -> f64 {
        let e = &self.extent;
        e.ymax - (e.ymax - e.ymin) * j as f64 / (self.resolution.ny - 1) as f64
    }

    pub fn point(&self, i: usize, j: usize) -> Point {
        Point::new(self.x_at(i), self.y_at(j))
    }
}

/// Row-major samples, row 0 at `ymax`.
#[derive(Debug, Clone, PartialEq)]
pub struct InterferenceGrid {
    pub geometry: GridGeometry,
    pub kind: GridKind,
    values: Vec<f64>,
}

impl InterferenceGrid {
    pub fn from_values(geometry: GridGeometry, kind: GridKind, values: Vec<f64>) -> Result<Self> {
        let expected = geometry.resolution.nx * geometry.resolution.ny;
        if values.len() != expected {
            return Err(Error::data(format!(
                "grid needs {expected} values, got {}",
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::data("grid values must be finite"));
        }
        Ok(Self {
            geometry,
            kind,
            values,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[j * self.geometry.resolution.nx + i]
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Both fields plus the phase field; samples every [`GridKind`].
#[derive(Debug, Clone, PartialEq)]
pub struct Landscape {
    pub field_a: GaussianField,
    pub field_b: GaussianField,
    pub phase: PhaseField,
}

impl Landscape {
    pub fn new(field_a: GaussianField, field_b: GaussianField, phase: PhaseField) -> Self {
        Self {
            field_a,
            field_b,
            phase,
        }
    }

    /// Fits fields, places exemplars and interpolates the effective phases.
    pub fn build(
        d: &DisjunctionData,
        model: &DisjunctionModel,
        center_a: Point,
        center_b: Point,
    ) -> Result<(Self, PlacementSet)> {
        let (fa, fb) = fit_fields(d, center_a, center_b)?;
        let placements = place_exemplars(d, &fa, &fb)?;
        let phases = effective_phases(d, model)?;
        let phase = PhaseField::new(&placements, &phases)?;
        Ok((Self::new(fa, fb, phase), placements))
    }

    pub fn sample(&self, kind: GridKind, p: Point) -> f64 {
        let ia = self.field_a.intensity(p);
        let ib = self.field_b.intensity(p);
        let interference = || libm::sqrt(ia) * libm::sqrt(ib) * self.phase.direction(p).0;
        match kind {
            GridKind::FieldA => ia,
            GridKind::FieldB => ib,
            GridKind::Classical => 0.5 * (ia + ib),
            GridKind::Quantum => 0.5 * (ia + ib) + interference(),
            GridKind::Interference => interference(),
        }
    }

    /// Samples of rows `rows` (row 0 at the top), row-major.
    pub fn render_rows(
        &self,
        kind: GridKind,
        geometry: &GridGeometry,
        rows: Range<usize>,
    ) -> Vec<f64> {
        let nx = geometry.resolution.nx;
        let mut out = Vec::with_capacity(rows.len() * nx);
        for j in rows {
            for i in 0..nx {
                out.push(self.sample(kind, geometry.point(i, j)));
            }
        }
        out
    }

    pub fn render(
        &self,
        kind: GridKind,
        extent: Extent,
        resolution: Resolution,
    ) -> Result<InterferenceGrid> {
        let geometry = GridGeometry { extent, resolution };
        let values = self.render_rows(kind, &geometry, 0..resolution.ny);
        InterferenceGrid::from_values(geometry, kind, values)
    }
}

/// Renders one grid of `kind` from fitted fields and a phase field.
pub fn render(
    field_a: &GaussianField,
    field_b: &GaussianField,
    phase: &PhaseField,
    extent: Extent,
    resolution: Resolution,
    kind: GridKind,
) -> Result<InterferenceGrid> {
    Landscape::new(*field_a, *field_b, phase.clone()).render(kind, extent, resolution)
}

/// Human-readable description of a placement outcome, used in reports.
pub fn describe_placement(label: &str, p: &Placement) -> String {
    format!(
        "{label} at ({:.4}, {:.4}) {} residual {:e}",
        p.position.x,
        p.position.y,
        if p.exact { "exact" } else { "inexact" },
        p.residual
    )
}
