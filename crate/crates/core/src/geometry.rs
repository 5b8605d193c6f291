//! Two-dimensional slices of rate regions.
//!
//! A capacity region here is a union over `lambda in [0, 1]` of polyhedra
//! `{ r : a_i . r <= b_i(lambda) }` in three rate coordinates. A slice fixes one
//! coordinate and traces the upper boundary of the remaining two as a polyline:
//! for each x sample, y is the largest value feasible for some `lambda`.

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::search::{self, Maximum, DEFAULT_LAMBDA_GRID};

/// Feasibility slack applied to every facet inequality.
pub const FEASIBILITY_TOL: f64 = 1e-9;

/// Default number of x samples per slice.
pub const DEFAULT_SAMPLES: usize = 512;

/// Minimum number of x samples per slice.
pub const MIN_SAMPLES: usize = 16;

const CORNER_DECADES: usize = 12;
const CORNER_STEPS_PER_DECADE: usize = 8;

/// `coeffs . r <= bound`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constraint {
    pub coeffs: [f64; 3],
    pub bound: f64,
}

impl Constraint {
    pub fn new(coeffs: [f64; 3], bound: f64) -> Self {
        Constraint { coeffs, bound }
    }

    /// `bound - coeffs . r`; nonnegative when satisfied.
    pub fn slack(&self, r: [f64; 3]) -> f64 {
        self.bound - self.coeffs.iter().zip(r).map(|(a, x)| a * x).sum::<f64>()
    }
}

/// A rate region given as a `lambda`-indexed family of linear facet systems.
///
/// Implementors must have nonnegative coefficients, so that every rate axis is
/// only bounded from above by the facets.
pub trait FacetRegion {
    /// Labels of the three rate coordinates, in coefficient order.
    fn axes(&self) -> [&'static str; 3];

    fn constraints_at(&self, lambda: f64) -> Result<Vec<Constraint>>;
}

/// Largest `lambda`-wise minimum slack of `point`.
pub fn max_slack<R: FacetRegion + ?Sized>(region: &R, point: [f64; 3], grid: usize) -> Maximum {
    search::maximize(
        |lambda| match region.constraints_at(lambda) {
            Ok(cs) => cs
                .iter()
                .map(|c| c.slack(point))
                .fold(f64::INFINITY, f64::min),
            Err(_) => f64::NEG_INFINITY,
        },
        grid,
    )
}

/// True iff some `lambda` satisfies every facet within [`FEASIBILITY_TOL`].
pub fn is_member<R: FacetRegion + ?Sized>(region: &R, point: [f64; 3], grid: usize) -> bool {
    max_slack(region, point, grid).value >= -FEASIBILITY_TOL
}

/// Which two coordinates are free, the value of the third, and the grid sizes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SliceSpec {
    pub x_axis: usize,
    pub y_axis: usize,
    pub fixed_value: f64,
    /// Lower limit imposed on y, if any. Needed when y is a rate that could
    /// otherwise be consumed without bound (e.g. Q in the (C,Q) slice).
    pub y_floor: Option<f64>,
    pub samples: usize,
    pub lambda_grid: usize,
}

impl SliceSpec {
    /// First vs. second coordinate, third fixed at 0, second kept nonnegative.
    /// For the trade-off region this is the (C,Q) slice at E = 0.
    pub fn first_second() -> Self {
        SliceSpec {
            x_axis: 0,
            y_axis: 1,
            fixed_value: 0.0,
            y_floor: Some(0.0),
            samples: DEFAULT_SAMPLES,
            lambda_grid: DEFAULT_LAMBDA_GRID,
        }
    }

    /// First vs. third coordinate, second fixed at 0, third unrestricted.
    /// For the trade-off region this is the (C,E) slice at Q = 0.
    pub fn first_third() -> Self {
        SliceSpec {
            x_axis: 0,
            y_axis: 2,
            fixed_value: 0.0,
            y_floor: None,
            samples: DEFAULT_SAMPLES,
            lambda_grid: DEFAULT_LAMBDA_GRID,
        }
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }

    pub fn with_lambda_grid(mut self, lambda_grid: usize) -> Self {
        self.lambda_grid = lambda_grid;
        self
    }

    fn fixed_axis(&self) -> usize {
        3 - self.x_axis - self.y_axis
    }

    fn validate(&self) -> Result<()> {
        if self.x_axis > 2 || self.y_axis > 2 || self.x_axis == self.y_axis {
            return Err(domain("slice needs two distinct free axes among three"));
        }
        if self.samples < MIN_SAMPLES {
            return Err(domain(format!(
                "slice needs at least {MIN_SAMPLES} samples"
            )));
        }
        if self.lambda_grid < 2 {
            return Err(domain("lambda grid needs at least 2 points"));
        }
        if !self.fixed_value.is_finite() {
            return Err(domain("fixed rate must be finite"));
        }
        Ok(())
    }
}

/// Upper boundary of a region projection, vertices strictly increasing in x.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegionSlice {
    pub axis_x: String,
    pub axis_y: String,
    pub vertices: Vec<(f64, f64)>,
    /// Maximizing `lambda` for each vertex, when the slice came from a `lambda` union.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub lambdas: Vec<f64>,
}

impl RegionSlice {
    pub fn new(
        axis_x: impl Into<String>,
        axis_y: impl Into<String>,
        vertices: Vec<(f64, f64)>,
    ) -> Result<Self> {
        if vertices.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(domain("slice vertices must be strictly increasing in x"));
        }
        Ok(RegionSlice {
            axis_x: axis_x.into(),
            axis_y: axis_y.into(),
            vertices,
            lambdas: Vec::new(),
        })
    }

    /// Polyline through `(x(lambda), y(lambda))` for a parametric boundary with
    /// x nondecreasing in `lambda`. Repeated x values keep the largest y.
    pub fn from_parametric(
        axis_x: impl Into<String>,
        axis_y: impl Into<String>,
        samples: usize,
        curve: impl Fn(f64) -> Result<(f64, f64)>,
    ) -> Result<Self> {
        let mut vertices: Vec<(f64, f64)> = Vec::with_capacity(samples);
        let mut lambdas = Vec::with_capacity(samples);
        for lambda in search::lambda_grid(samples) {
            let (x, y) = curve(lambda)?;
            match vertices.last_mut() {
                Some(last) if x <= last.0 => {
                    if x < last.0 - FEASIBILITY_TOL {
                        return Err(domain("parametric boundary is not monotone in x"));
                    }
                    if y > last.1 {
                        *last = (last.0, y);
                        *lambdas.last_mut().unwrap() = lambda;
                    }
                }
                _ => {
                    vertices.push((x, y));
                    lambdas.push(lambda);
                }
            }
        }
        let mut slice = RegionSlice::new(axis_x, axis_y, vertices)?;
        slice.lambdas = lambdas;
        Ok(slice)
    }

    pub fn first(&self) -> Option<(f64, f64)> {
        self.vertices.first().copied()
    }

    pub fn last(&self) -> Option<(f64, f64)> {
        self.vertices.last().copied()
    }

    /// Linear interpolation of the boundary; `None` outside the x-range.
    pub fn interpolate(&self, x: f64) -> Option<f64> {
        let (x0, _) = self.first()?;
        let (x1, y1) = self.last()?;
        if x < x0 || x > x1 {
            return None;
        }
        if x == x1 {
            return Some(y1);
        }
        let i = self.vertices.partition_point(|v| v.0 <= x);
        let (xa, ya) = self.vertices[i - 1];
        let (xb, yb) = self.vertices[i];
        Some(ya + (yb - ya) * (x - xa) / (xb - xa))
    }
}

/// Per-`lambda` maximum of y at fixed x, or `-inf` when x is infeasible.
fn y_max_at<R: FacetRegion + ?Sized>(region: &R, spec: &SliceSpec, lambda: f64, x: f64) -> f64 {
    let Ok(constraints) = region.constraints_at(lambda) else {
        return f64::NEG_INFINITY;
    };
    let z = spec.fixed_axis();
    let mut y_max = f64::INFINITY;
    for c in &constraints {
        let rhs = c.bound - c.coeffs[z] * spec.fixed_value - c.coeffs[spec.x_axis] * x;
        let ay = c.coeffs[spec.y_axis];
        if ay > 0.0 {
            y_max = y_max.min(rhs / ay);
        } else if rhs < -FEASIBILITY_TOL {
            return f64::NEG_INFINITY;
        }
    }
    match spec.y_floor {
        Some(floor) if y_max < floor - FEASIBILITY_TOL => f64::NEG_INFINITY,
        Some(floor) => y_max.max(floor),
        None => y_max,
    }
}

/// x values where the per-`lambda` response `y_max_at` changes slope: crossings
/// of two facets that bound y, and points where a facet or the floor starts
/// to bind.
fn breakpoints_at<R: FacetRegion + ?Sized>(region: &R, spec: &SliceSpec, lambda: f64) -> Vec<f64> {
    let Ok(constraints) = region.constraints_at(lambda) else {
        return Vec::new();
    };
    let z = spec.fixed_axis();
    // each facet as y <= p - s x, or x <= p / s when it does not involve y
    let mut lines = Vec::new();
    let mut out = Vec::new();
    for c in &constraints {
        let rhs = c.bound - c.coeffs[z] * spec.fixed_value;
        let (ax, ay) = (c.coeffs[spec.x_axis], c.coeffs[spec.y_axis]);
        if ay > 0.0 {
            lines.push((rhs / ay, ax / ay));
        } else if ax > 0.0 {
            out.push(rhs / ax);
        }
    }
    if let Some(floor) = spec.y_floor {
        lines.push((floor, 0.0));
    }
    for (i, &(p1, s1)) in lines.iter().enumerate() {
        for &(p2, s2) in &lines[i + 1..] {
            if s1 != s2 {
                out.push((p1 - p2) / (s1 - s2));
            }
        }
    }
    out.retain(|x| x.is_finite());
    out
}

/// Per-`lambda` maximum of x such that some y (above the floor) is feasible.
fn x_max_at<R: FacetRegion + ?Sized>(region: &R, spec: &SliceSpec, lambda: f64) -> f64 {
    let Ok(constraints) = region.constraints_at(lambda) else {
        return f64::NEG_INFINITY;
    };
    let z = spec.fixed_axis();
    let mut x_max = f64::INFINITY;
    for c in &constraints {
        let ax = c.coeffs[spec.x_axis];
        if ax <= 0.0 {
            continue;
        }
        let ay = c.coeffs[spec.y_axis];
        let mut rhs = c.bound - c.coeffs[z] * spec.fixed_value;
        match spec.y_floor {
            Some(floor) => rhs -= ay * floor,
            None if ay > 0.0 => continue,
            None => {}
        }
        x_max = x_max.min(rhs / ax);
    }
    x_max
}

/// Largest feasible x of the slice and the `lambda` achieving it.
pub fn slice_extent<R: FacetRegion + ?Sized>(region: &R, spec: &SliceSpec) -> Result<Maximum> {
    spec.validate()?;
    let best = search::maximize(|lambda| x_max_at(region, spec, lambda), spec.lambda_grid);
    if best.value.is_infinite() && best.value > 0.0 {
        return Err(Error::Unbounded(format!(
            "{} is unbounded in this slice",
            region.axes()[spec.x_axis]
        )));
    }
    if !best.value.is_finite() {
        return Err(domain("slice is empty"));
    }
    Ok(best)
}

/// Upper-envelope value of the slice at one x, with its maximizing `lambda`.
/// `None` if no `lambda` admits x.
pub fn envelope_at<R: FacetRegion + ?Sized>(
    region: &R,
    spec: &SliceSpec,
    x: f64,
) -> Option<Maximum> {
    let best = search::maximize(|lambda| y_max_at(region, spec, lambda, x), spec.lambda_grid);
    best.value.is_finite().then_some(best)
}

/// Traces the slice on `spec.samples` equally spaced x values in `[0, x_max]`,
/// plus the corners of the per-`lambda` responses. Infeasible samples are omitted.
pub fn slice<R: FacetRegion + ?Sized>(region: &R, spec: &SliceSpec) -> Result<RegionSlice> {
    let extent = slice_extent(region, spec)?;
    let x_end = extent.value.max(0.0);
    let axes = region.axes();
    let mut vertices = Vec::with_capacity(spec.samples);
    let mut lambdas = Vec::with_capacity(spec.samples);
    for k in 0..spec.samples {
        let x = x_end * k as f64 / (spec.samples - 1) as f64;
        let mut best = envelope_at(region, spec, x);
        // The extent's own lambda is a feasible witness at the far end even
        // when the grid search misses the narrow feasible window there.
        let witness = y_max_at(region, spec, extent.lambda, x);
        if witness.is_finite() && best.is_none_or(|b| witness > b.value) {
            best = Some(Maximum {
                lambda: extent.lambda,
                value: witness,
            });
        }
        if let Some(b) = best {
            if vertices.last().is_none_or(|&(px, _)| x > px) {
                vertices.push((x, b.value));
                lambdas.push(b.lambda);
            }
        }
    }
    // Equal spacing cuts under corners of the envelope. Add the corners of each
    // per-lambda response, with a geometric lambda grid toward 0 where the
    // corner locus bends fastest.
    let near_zero = (1..=CORNER_DECADES * CORNER_STEPS_PER_DECADE)
        .map(|k| 10f64.powf(-(k as f64) / CORNER_STEPS_PER_DECADE as f64));
    let mut extra = Vec::new();
    for lambda in search::lambda_grid(spec.lambda_grid).chain(near_zero) {
        for x in breakpoints_at(region, spec, lambda) {
            if !(x > 0.0 && x < x_end) {
                continue;
            }
            let own = y_max_at(region, spec, lambda, x);
            if !own.is_finite() {
                continue;
            }
            let best = match envelope_at(region, spec, x) {
                Some(e) if e.value >= own => e,
                _ => Maximum { lambda, value: own },
            };
            extra.push((x, best.value, best.lambda));
        }
    }
    if !extra.is_empty() {
        let mut all: Vec<(f64, f64, f64)> = vertices
            .iter()
            .zip(&lambdas)
            .map(|(&(x, y), &l)| (x, y, l))
            .chain(extra)
            .collect();
        all.sort_by(|a, b| a.0.total_cmp(&b.0));
        all.dedup_by(|b, a| b.0 <= a.0);
        vertices = all.iter().map(|&(x, y, _)| (x, y)).collect();
        lambdas = all.iter().map(|&(_, _, l)| l).collect();
    }
    let mut out = RegionSlice::new(axes[spec.x_axis], axes[spec.y_axis], vertices)?;
    out.lambdas = lambdas;
    Ok(out)
}

/// Points not weakly dominated by any other point, sorted by x.
///
/// Exact duplicates are collapsed to one representative.
pub fn pareto_filter(points: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut sorted: Vec<(f64, f64)> = points.to_vec();
    // x descending, then y descending
    sorted.sort_by(|a, b| b.0.total_cmp(&a.0).then(b.1.total_cmp(&a.1)));
    let mut kept: Vec<(f64, f64)> = Vec::new();
    let mut best_y = f64::NEG_INFINITY;
    for p in sorted {
        if p.1 > best_y {
            kept.push(p);
            best_y = p.1;
        }
    }
    kept.reverse();
    kept
}

/// True iff every vertex of `inner` lies on or below `outer` within `tol`.
pub fn contains(outer: &RegionSlice, inner: &RegionSlice, tol: f64) -> Result<bool> {
    if outer.axis_x != inner.axis_x || outer.axis_y != inner.axis_y {
        return Err(Error::AxisMismatch(
            outer.axis_x.clone(),
            outer.axis_y.clone(),
            inner.axis_x.clone(),
            inner.axis_y.clone(),
        ));
    }
    let (Some((x0, _)), Some((x1, _))) = (outer.first(), outer.last()) else {
        return Ok(inner.vertices.is_empty());
    };
    Ok(inner.vertices.iter().all(|&(x, y)| {
        if x < x0 - tol || x > x1 + tol {
            return false;
        }
        let bound = outer
            .interpolate(x.clamp(x0, x1))
            .unwrap_or(f64::NEG_INFINITY);
        y <= bound + tol
    }))
}
