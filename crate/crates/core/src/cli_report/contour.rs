//! Marching-squares tracing of `{X = 0}` and `{Y = 0}` on a regular grid.

use std::collections::HashMap;

use serde::Serialize;

use crate::exact_arith::rational::to_f64;
use crate::field_core::{kernel_f64, ChargeSystem, Component};

use super::config::LoadedConfig;
use super::ReportError;

pub const MIN_GRID: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PlotWindow {
    pub x_lo: f64,
    pub x_hi: f64,
    pub y_lo: f64,
    pub y_hi: f64,
}

impl PlotWindow {
    pub fn square(r: f64) -> Self {
        Self { x_lo: -r, x_hi: r, y_lo: -r, y_hi: r }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurveSample {
    pub component: Component,
    pub polylines: Vec<Vec<(f64, f64)>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LevelSets {
    pub x: CurveSample,
    pub y: CurveSample,
    /// Cells left out because a charge lies in them.
    pub skipped_cells: usize,
    pub notes: Vec<String>,
}

/// Cell edges: horizontal `(i, j)` joins nodes `(i, j)` and `(i + 1, j)`,
/// vertical `(i, j)` joins `(i, j)` and `(i, j + 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Edge {
    H(usize, usize),
    V(usize, usize),
}

struct Grid {
    n: usize,
    xs: Vec<f64>,
    ys: Vec<f64>,
    /// `values[c][i * (n + 1) + j]` for component `c`.
    values: [Vec<f64>; 2],
    skip: Vec<bool>,
}

impl Grid {
    fn value(&self, c: usize, i: usize, j: usize) -> f64 {
        self.values[c][i * (self.n + 1) + j]
    }

    fn node(&self, i: usize, j: usize) -> (f64, f64) {
        (self.xs[i], self.ys[j])
    }

    fn ends(e: Edge) -> ((usize, usize), (usize, usize)) {
        match e {
            Edge::H(i, j) => ((i, j), (i + 1, j)),
            Edge::V(i, j) => ((i, j), (i, j + 1)),
        }
    }

    fn crosses(&self, c: usize, e: Edge) -> bool {
        let ((i0, j0), (i1, j1)) = Self::ends(e);
        (self.value(c, i0, j0) >= 0.0) != (self.value(c, i1, j1) >= 0.0)
    }

    /// Linear interpolation of the sign change along an edge.
    fn crossing(&self, c: usize, e: Edge) -> (f64, f64) {
        let ((i0, j0), (i1, j1)) = Self::ends(e);
        let (v0, v1) = (self.value(c, i0, j0), self.value(c, i1, j1));
        let t = v0 / (v0 - v1);
        let (p, q) = (self.node(i0, j0), self.node(i1, j1));
        (p.0 + t * (q.0 - p.0), p.1 + t * (q.1 - p.1))
    }
}

fn build_grid(sys: &ChargeSystem, w: &PlotWindow, n: usize) -> Grid {
    let xs: Vec<f64> = (0..=n).map(|i| w.x_lo + (w.x_hi - w.x_lo) * i as f64 / n as f64).collect();
    let ys: Vec<f64> = (0..=n).map(|j| w.y_lo + (w.y_hi - w.y_lo) * j as f64 / n as f64).collect();
    let mut vx = Vec::with_capacity((n + 1) * (n + 1));
    let mut vy = Vec::with_capacity((n + 1) * (n + 1));
    for &x in &xs {
        for &y in &ys {
            let (a, b) = kernel_f64(sys, x, y, 1);
            vx.push(a);
            vy.push(b);
        }
    }
    let charges: Vec<f64> = sys.positions().map(to_f64).collect();
    let mut skip = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            let has_charge = ys[j] <= 0.0
                && 0.0 <= ys[j + 1]
                && charges.iter().any(|&c| xs[i] <= c && c <= xs[i + 1]);
            let corners = [(i, j), (i + 1, j), (i, j + 1), (i + 1, j + 1)];
            let finite = corners.iter().all(|&(a, b)| {
                let k = a * (n + 1) + b;
                vx[k].is_finite() && vy[k].is_finite()
            });
            skip[i * n + j] = has_charge || !finite;
        }
    }
    Grid { n, xs, ys, values: [vx, vy], skip }
}

/// Segments of one component, as pairs of crossed edges, cell by cell.
fn segments(sys: &ChargeSystem, g: &Grid, c: usize) -> Vec<(Edge, Edge)> {
    let mut out = Vec::new();
    for i in 0..g.n {
        for j in 0..g.n {
            if g.skip[i * g.n + j] {
                continue;
            }
            // counter-clockwise from the bottom edge
            let edges = [Edge::H(i, j), Edge::V(i + 1, j), Edge::H(i, j + 1), Edge::V(i, j)];
            let crossed: Vec<Edge> = edges.iter().copied().filter(|&e| g.crosses(c, e)).collect();
            match crossed.len() {
                2 => out.push((crossed[0], crossed[1])),
                4 => {
                    // saddle: the centre value decides which corners connect
                    let (cx, cy) = ((g.xs[i] + g.xs[i + 1]) / 2.0, (g.ys[j] + g.ys[j + 1]) / 2.0);
                    let (fx, fy) = kernel_f64(sys, cx, cy, 1);
                    let centre = if c == 0 { fx } else { fy };
                    let corner_positive = g.value(c, i, j) >= 0.0;
                    if (centre >= 0.0) == corner_positive {
                        out.push((edges[0], edges[1]));
                        out.push((edges[2], edges[3]));
                    } else {
                        out.push((edges[3], edges[0]));
                        out.push((edges[1], edges[2]));
                    }
                }
                _ => {}
            }
        }
    }
    out
}

/// Joins segments sharing a crossed edge into polylines.
fn chain(g: &Grid, c: usize, segs: &[(Edge, Edge)]) -> Vec<Vec<(f64, f64)>> {
    let mut at: HashMap<Edge, Vec<usize>> = HashMap::new();
    for (k, &(a, b)) in segs.iter().enumerate() {
        at.entry(a).or_default().push(k);
        at.entry(b).or_default().push(k);
    }
    let mut used = vec![false; segs.len()];
    let mut lines = Vec::new();
    let walk = |start: usize, from: Edge, used: &mut Vec<bool>| {
        let mut edges = vec![from];
        let mut cur = start;
        loop {
            used[cur] = true;
            let (a, b) = segs[cur];
            let next_edge = if a == *edges.last().unwrap() { b } else { a };
            edges.push(next_edge);
            match at[&next_edge].iter().find(|&&k| !used[k]) {
                Some(&k) => cur = k,
                None => break,
            }
        }
        edges
    };
    // open chains start at an edge touched by a single segment
    for pass in 0..2 {
        for k in 0..segs.len() {
            if used[k] {
                continue;
            }
            let (a, b) = segs[k];
            let from = if pass == 1 || at[&a].len() == 1 {
                a
            } else if at[&b].len() == 1 {
                b
            } else {
                continue;
            };
            let edges = walk(k, from, &mut used);
            lines.push(edges.into_iter().map(|e| g.crossing(c, e)).collect());
        }
    }
    lines
}

/// Traces both zero sets in `window` on an `n x n` cell grid.
pub fn sample_level_sets(sys: &ChargeSystem, window: &PlotWindow, n: usize) -> Result<LevelSets, ReportError> {
    if n < MIN_GRID {
        return Err(ReportError::Invalid(format!("grid must have at least {MIN_GRID} cells per side")));
    }
    if !(window.x_lo < window.x_hi && window.y_lo < window.y_hi) {
        return Err(ReportError::Invalid("plot window is empty".into()));
    }
    let g = build_grid(sys, window, n);
    let skipped = g.skip.iter().filter(|&&s| s).count();
    let mut notes = Vec::new();
    if skipped > 0 {
        notes.push(format!("{skipped} cell(s) containing a charge were skipped"));
    }
    let trace = |c: usize, component| CurveSample { component, polylines: chain(&g, c, &segments(sys, &g, c)) };
    Ok(LevelSets { x: trace(0, Component::X), y: trace(1, Component::Y), skipped_cells: skipped, notes })
}

/// Largest `|component|` over the corners of the grid cell holding `p`.
/// Interpolated vertices are checked against this.
pub fn cell_tolerance(sys: &ChargeSystem, window: &PlotWindow, n: usize, component: Component, p: (f64, f64)) -> f64 {
    let hx = (window.x_hi - window.x_lo) / n as f64;
    let hy = (window.y_hi - window.y_lo) / n as f64;
    let i = (((p.0 - window.x_lo) / hx).floor() as usize).min(n - 1);
    let j = (((p.1 - window.y_lo) / hy).floor() as usize).min(n - 1);
    let mut m: f64 = 0.0;
    for (a, b) in [(i, j), (i + 1, j), (i, j + 1), (i + 1, j + 1)] {
        let (x, y) = (window.x_lo + hx * a as f64, window.y_lo + hy * b as f64);
        let (fx, fy) = kernel_f64(sys, x, y, 1);
        m = m.max(if component == Component::X { fx.abs() } else { fy.abs() });
    }
    m
}

/// CSV with columns `polyline_id,x,y`.
/// Contours a loaded configuration. `window` and the returned vertices are in
/// the input frame.
pub fn sample_config(cfg: &LoadedConfig, window: &PlotWindow, n: usize) -> Result<LevelSets, ReportError> {
    let dx = to_f64(&cfg.shift);
    let shifted = PlotWindow { x_lo: window.x_lo + dx, x_hi: window.x_hi + dx, ..*window };
    let mut ls = sample_level_sets(&cfg.system, &shifted, n)?;
    for sample in [&mut ls.x, &mut ls.y] {
        for p in sample.polylines.iter_mut().flatten() {
            p.0 -= dx;
        }
    }
    Ok(ls)
}

/// Square window around the charges, input frame, with `margin` on each side.
pub fn default_window(cfg: &LoadedConfig, margin: f64) -> PlotWindow {
    let dx = to_f64(&cfg.shift);
    let lo = to_f64(cfg.system.min_position()) - dx;
    let hi = to_f64(cfg.system.max_position()) - dx;
    let half = (hi - lo) / 2.0 + margin;
    let mid = (hi + lo) / 2.0;
    PlotWindow { x_lo: mid - half, x_hi: mid + half, y_lo: -half, y_hi: half }
}

pub fn to_csv(sample: &CurveSample) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["polyline_id", "x", "y"]).expect("in-memory write");
    for (id, line) in sample.polylines.iter().enumerate() {
        for &(x, y) in line {
            w.serialize((id, x, y)).expect("in-memory write");
        }
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}
