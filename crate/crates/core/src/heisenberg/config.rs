use serde::{Deserialize, Serialize};

use super::{gaussian_window, h_plancherel_defect, HeisenbergGrid, LambdaGrid, LineGrid, SchrodingerRep};
use crate::error::Result;

/// Grid parameters for a Heisenberg run. `line_half_width` defaults to `√M`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HeisenbergConfig {
    #[serde(default = "default_box")]
    pub box_half_width: [f64; 3],
    #[serde(default = "default_counts")]
    pub counts: [usize; 3],
    #[serde(default = "default_line_points")]
    pub line_points: usize,
    #[serde(default)]
    pub line_half_width: Option<f64>,
    #[serde(default = "default_lambda_max")]
    pub lambda_max: f64,
    #[serde(default = "default_lambda_count")]
    pub lambda_count: usize,
    #[serde(default = "default_floor")]
    pub lambda_floor: f64,
    /// Translation grid for the weak reconstruction (not refined with the rest).
    #[serde(default = "default_outer_half_width")]
    pub outer_half_width: f64,
    #[serde(default = "default_outer_count")]
    pub outer_count: usize,
}

fn default_box() -> [f64; 3] {
    [2.5; 3]
}
fn default_counts() -> [usize; 3] {
    [8; 3]
}
fn default_line_points() -> usize {
    16
}
fn default_lambda_max() -> f64 {
    4.0
}
fn default_lambda_count() -> usize {
    16
}
fn default_floor() -> f64 {
    0.25
}
fn default_outer_half_width() -> f64 {
    2.5
}
fn default_outer_count() -> usize {
    10
}

impl Default for HeisenbergConfig {
    fn default() -> Self {
        Self {
            box_half_width: default_box(),
            counts: default_counts(),
            line_points: default_line_points(),
            line_half_width: None,
            lambda_max: default_lambda_max(),
            lambda_count: default_lambda_count(),
            lambda_floor: default_floor(),
            outer_half_width: default_outer_half_width(),
            outer_count: default_outer_count(),
        }
    }
}

impl HeisenbergConfig {
    pub fn grid(&self) -> Result<HeisenbergGrid> {
        HeisenbergGrid::new(self.box_half_width, self.counts)
    }

    pub fn outer_grid(&self) -> Result<HeisenbergGrid> {
        HeisenbergGrid::cube(self.outer_half_width, self.outer_count)
    }

    /// Desk grid for the weak reconstruction: the second ladder rung.
    pub fn weak_desk() -> Self {
        Self::default().refined()
    }

    pub fn line(&self) -> Result<LineGrid> {
        match self.line_half_width {
            Some(x) => LineGrid::new(self.line_points, x),
            None => LineGrid::balanced(self.line_points),
        }
    }

    pub fn lambdas(&self) -> Result<LambdaGrid> {
        LambdaGrid::midpoint(self.lambda_max, self.lambda_count, self.lambda_floor)
    }

    /// Next ladder rung: doubles the box counts, `M` and the λ-node count.
    /// `Λ` doubles too so `Δλ` stays fixed and the floor stays a node; an
    /// explicit line half-width is kept, the default `√M` follows `M`.
    pub fn refined(&self) -> Self {
        Self {
            counts: self.counts.map(|n| 2 * n),
            line_points: 2 * self.line_points,
            lambda_max: 2.0 * self.lambda_max,
            lambda_count: 2 * self.lambda_count,
            ..self.clone()
        }
    }

    pub fn ladder(&self, rungs: usize) -> Vec<Self> {
        std::iter::successors(Some(self.clone()), |c| Some(c.refined()))
            .take(rungs)
            .collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RungReport {
    pub config: HeisenbergConfig,
    pub line_half_width: f64,
    pub lambda_nodes: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub defect: f64,
    /// Largest `q` snap distance over the grid and λ-nodes.
    pub max_q_snap: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct LadderReport {
    pub grids: Vec<RungReport>,
    pub defects: Vec<f64>,
    pub strictly_decreasing: bool,
}

/// Plancherel defect of the Gaussian window along the refinement ladder.
pub fn run_ladder(base: &HeisenbergConfig, rungs: usize) -> Result<LadderReport> {
    let mut grids = Vec::with_capacity(rungs);
    for cfg in base.ladder(rungs) {
        let grid = cfg.grid()?;
        let line = cfg.line()?;
        let lambdas = cfg.lambdas()?;
        let f = grid.sample(gaussian_window);
        let r = h_plancherel_defect(&f, &grid, &line, &lambdas)?;
        let mut max_q_snap = 0.0_f64;
        for &l in lambdas.nodes() {
            let rep = SchrodingerRep::new(l, line.clone())?;
            for q in grid.axis(1) {
                max_q_snap = max_q_snap.max((rep.snap_q(q) - q).abs());
            }
        }
        grids.push(RungReport {
            line_half_width: line.half_width(),
            lambda_nodes: lambdas.len(),
            lhs: r.lhs,
            rhs: r.rhs,
            defect: r.defect,
            max_q_snap,
            config: cfg,
        });
    }
    let defects: Vec<f64> = grids.iter().map(|g| g.defect).collect();
    let strictly_decreasing = defects.windows(2).all(|w| w[1] < w[0]);
    Ok(LadderReport {
        grids,
        defects,
        strictly_decreasing,
    })
}
