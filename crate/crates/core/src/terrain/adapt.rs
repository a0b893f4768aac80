//! The strategy adapted to a terrain.
//!
//! The searcher follows a translated copy of the planned path. When the copy
//! runs into the terrain on a forth leg at `u_c`, the searcher gets the budget
//! `B = 2 (U - u_c) / cos(alpha)` the copy would have spent on its way to the
//! turn at depth `U` and back to `u_c`. It climbs the terrain while the terrain
//! is steeper than the climb angle and otherwise moves at the climb angle. It
//! turns as soon as the remaining budget only suffices to return to `u_c` at
//! slope `alpha`, and from the regained point it follows a copy shifted upward.

use serde::{Deserialize, Serialize};

use super::model::{tol_at, Profile, Terrain};
use crate::error::{Error, Result};
use crate::geometry::{Point, SearchPath, Side};
use crate::strategy::{axis_height, turning_point, StrategyParams, TurnIndex};

const MAX_STEPS: usize = 100_000;

/// What the searcher is doing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AdaptMode {
    OnPlan,
    OnTerrain,
    Returning,
}

/// Snapshot of the adaptation state at a mode change.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdaptedState {
    pub mode: AdaptMode,
    pub excursion: u32,
    pub budget_total: f64,
    pub budget_used: f64,
    /// Where the current copy of the plan places the start.
    pub plan_copy_origin: Point,
    /// X-coordinate to regain: the planned turn on the plan, the contact
    /// point during an episode.
    pub target_x: f64,
}

/// One contact with the terrain and the recovery after it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Episode {
    pub excursion: u32,
    pub side: Side,
    pub contact: Point,
    /// Highest point at which the path touched the terrain.
    pub top: Point,
    pub turn: Point,
    pub regained: Point,
    /// Turn and regained point of the unshifted plan.
    pub planned_turn: Point,
    pub planned_regained: Point,
    pub budget: f64,
    pub arc_at_contact: f64,
    pub arc_at_regained: f64,
    /// Arc length of the unshifted plan up to its regained point.
    pub plan_arc_at_regained: f64,
}

impl Episode {
    /// Upward translation of the plan caused by this episode.
    pub fn shift(&self) -> f64 {
        self.regained.y - self.planned_regained.y
    }
}

/// Adapted path with its bookkeeping.
#[derive(Debug, Clone, PartialEq)]
pub struct AdaptedPath {
    pub params: StrategyParams,
    pub path: SearchPath,
    pub episodes: Vec<Episode>,
    pub transitions: Vec<AdaptedState>,
    /// Index of the first vertex of every excursion (its axis point).
    pub excursion_starts: Vec<usize>,
    /// Accumulated upward shift of the plan at the start of every excursion.
    pub shifts: Vec<f64>,
}

impl AdaptedPath {
    /// Excursion a vertex belongs to.
    pub fn excursion_of(&self, vertex: usize) -> u32 {
        (self.excursion_starts.partition_point(|&s| s <= vertex) - 1) as u32
    }

    /// Vertex range `[start, end)` of excursions `first..=last`.
    pub fn vertex_range(&self, first: u32, last: u32) -> std::ops::Range<usize> {
        let n = self.excursion_starts.len() as u32;
        let start = self.excursion_starts[first.min(n - 1) as usize];
        let end = if last + 1 < n { self.excursion_starts[(last + 1) as usize] } else { self.path.len() };
        start..end
    }
}

/// Strategy with `n_turns` excursions adapted to `terrain`.
pub fn adapt_strategy(params: &StrategyParams, terrain: &Terrain, n_turns: u32) -> Result<SearchPath> {
    adapt_strategy_detailed(params, terrain, n_turns).map(|a| a.path)
}

/// Like [`adapt_strategy`], keeping episodes and state transitions.
pub fn adapt_strategy_detailed(params: &StrategyParams, terrain: &Terrain, n_turns: u32) -> Result<AdaptedPath> {
    if n_turns < 1 {
        return Err(Error::InvalidArgument("n_turns must be at least 1".into()));
    }
    let profiles = [terrain.profile(Side::Right), terrain.profile(Side::Left)];
    let (t, cos_a) = (params.alpha.tan(), params.alpha.cos());
    let mut path = SearchPath::start_at(Point::ORIGIN);
    let mut episodes = Vec::new();
    let mut transitions = Vec::new();
    let mut excursion_starts = Vec::new();
    let mut shifts = Vec::new();
    let mut shift = 0.0;

    for j in 0..n_turns {
        let side = TurnIndex::new(j + 1)?.side();
        let sign = side.sign();
        let depth = params.r.powi(j as i32);
        let y_axis = axis_height(params, j) + shift;
        let last = j + 1 == n_turns;
        excursion_starts.push(path.len() - 1);
        shifts.push(shift);
        let state = |mode, total, used, shift: f64, target: f64| AdaptedState {
            mode,
            excursion: j,
            budget_total: total,
            budget_used: used,
            plan_copy_origin: Point::new(0.0, shift),
            target_x: sign * target,
        };
        transitions.push(state(AdaptMode::OnPlan, 0.0, 0.0, shift, depth));

        let prof = &profiles[if side == Side::Right { 0 } else { 1 }];
        let walker = Walker { prof, t, cos_a };
        let contact = walker
            .first_block(0.0, y_axis, depth)
            .filter(|&(u, _)| u < depth - 1e-12 * depth.max(1.0));
        let Some((u_c, on)) = contact else {
            let turn = turning_point(params, TurnIndex::new(j + 1)?) + Point::new(0.0, shift);
            path.push(turn)?;
            if !last {
                let axis = Point::new(0.0, axis_height(params, j + 1) + shift);
                check_free(terrain, turn, axis)?;
                path.push(axis)?;
            }
            continue;
        };

        let to_x = |u: f64, y: f64| Point::new(sign * u, y);
        let contact_pt = to_x(u_c, y_axis + u_c * t);
        path.push(contact_pt)?;
        let arc_at_contact = path.total_length();
        let budget = 2.0 * (depth - u_c) / cos_a;
        transitions.push(state(AdaptMode::OnTerrain, budget, 0.0, shift, u_c));

        let walk = walker.episode(u_c, contact_pt.y, budget, on)?;
        for &(u, y) in &walk.points {
            path.push(to_x(u, y))?;
        }
        let (u_t, y_t) = walk.turn;
        let turn = to_x(u_t, y_t);
        let used = path.total_length() - arc_at_contact;
        transitions.push(state(AdaptMode::Returning, budget, used, shift, u_c));

        let regained = to_x(u_c, y_t + (u_t - u_c) * t);
        check_free(terrain, turn, regained)?;
        path.push(regained)?;
        let arc_at_regained = path.total_length();
        let y_q = y_axis + 2.0 * depth * t - u_c * t;
        let planned_turn = turning_point(params, TurnIndex::new(j + 1)?);
        let planned_regained = to_x(u_c, y_q - shift);
        let plan_arc = 2.0 * params.geometric_sum(j) / cos_a + u_c / cos_a + budget;
        shift += regained.y - y_q;
        transitions.push(state(AdaptMode::OnPlan, budget, path.total_length() - arc_at_contact, shift, depth));
        episodes.push(Episode {
            excursion: j,
            side,
            contact: contact_pt,
            top: to_x(walk.top.0, walk.top.1),
            turn,
            regained,
            planned_turn,
            planned_regained,
            budget,
            arc_at_contact,
            arc_at_regained,
            plan_arc_at_regained: plan_arc,
        });
        if !last {
            let axis = Point::new(0.0, axis_height(params, j + 1) + shift);
            check_free(terrain, regained, axis)?;
            path.push(axis)?;
        }
    }
    Ok(AdaptedPath { params: *params, path, episodes, transitions, excursion_starts, shifts })
}

fn check_free(terrain: &Terrain, a: Point, b: Point) -> Result<()> {
    if terrain.segment_is_free(a, b) {
        Ok(())
    } else {
        Err(Error::ReturnBlocked { x: a.x, y: a.y })
    }
}

/// Terrain feature the searcher stands on, in profile indices.
#[derive(Debug, Clone, Copy, PartialEq)]
enum On {
    /// Chain piece `k`, from vertex `k - 1` to vertex `k`.
    Piece(usize),
    Barrier(usize),
}

struct EpisodeWalk {
    /// Vertices after the contact point, ending at the turn.
    points: Vec<(f64, f64)>,
    turn: (f64, f64),
    top: (f64, f64),
}

struct Walker<'a> {
    prof: &'a Profile,
    t: f64,
    cos_a: f64,
}

impl Walker<'_> {
    /// First point in `(u0, u_max]` where the climb-angle line from `(u0, y0)`
    /// enters the terrain.
    fn first_block(&self, u0: f64, y0: f64, u_max: f64) -> Option<(f64, On)> {
        let tol = |u: f64, y: f64| tol_at(Point::new(u, y));
        match self.prof {
            Profile::Barriers(bs) => bs.iter().enumerate().find_map(|(k, &(ub, h))| {
                let y = y0 + (ub - u0) * self.t;
                (ub > u0 + tol(u0, y0) && ub <= u_max && y < h - tol(ub, h)).then_some((ub, On::Barrier(k)))
            }),
            Profile::Chain(c) => {
                for k in 1..c.len() {
                    let (a, b) = (c[k - 1], c[k]);
                    if b.x <= u0 {
                        continue;
                    }
                    let lo = a.x.max(u0);
                    let hi = b.x.min(u_max);
                    if hi < lo {
                        break;
                    }
                    let f = |u: f64| a.y + (b.y - a.y) * (u - a.x) / (b.x - a.x);
                    let g = |u: f64| y0 + (u - u0) * self.t - f(u);
                    let (ga, gb) = (g(lo).max(0.0), g(hi));
                    if gb < -tol(hi, f(hi)) {
                        let root = lo + ga / (ga - gb) * (hi - lo);
                        return Some((root, On::Piece(k)));
                    }
                }
                None
            }
        }
    }

    fn episode(&self, u_c: f64, y_c: f64, budget: f64, first: On) -> Result<EpisodeWalk> {
        let (mut u, mut y) = (u_c, y_c);
        let mut slack = budget;
        let mut on = Some(first);
        let mut points = Vec::new();
        let mut top = (u, y);
        let eps = 1e-13 * budget.max(1.0);
        for _ in 0..MAX_STEPS {
            if slack <= eps {
                return Ok(EpisodeWalk { points, turn: (u, y), top });
            }
            match on.and_then(|o| self.climb_target(o)) {
                Some(Climb { end, rate, next }) => {
                    let len = ((end.0 - u).powi(2) + (end.1 - y).powi(2)).sqrt();
                    let d = slack / rate;
                    if d >= len {
                        (u, y) = end;
                        slack -= len * rate;
                        on = next;
                    } else {
                        let f = d / len;
                        (u, y) = (u + (end.0 - u) * f, y + (end.1 - y) * f);
                        slack = 0.0;
                    }
                    top = (u, y);
                    points.push((u, y));
                }
                None => {
                    let reach = u + 0.5 * slack * self.cos_a;
                    match self.first_block(u, y, reach) {
                        Some((ub, hit)) if ub < reach => {
                            let d = (ub - u) / self.cos_a;
                            (u, y) = (ub, y + (ub - u) * self.t);
                            slack -= 2.0 * d;
                            on = Some(hit);
                            top = (u, y);
                        }
                        _ => {
                            y += (reach - u) * self.t;
                            u = reach;
                            slack = 0.0;
                        }
                    }
                    points.push((u, y));
                }
            }
        }
        Err(Error::BudgetInfeasible { x: u })
    }

    /// Where climbing on `on` leads, or `None` if the searcher should leave
    /// the terrain at the climb angle.
    fn climb_target(&self, on: On) -> Option<Climb> {
        match (self.prof, on) {
            (Profile::Barriers(bs), On::Barrier(k)) => {
                let (ub, h) = bs[k];
                Some(Climb { end: (ub, h), rate: 1.0, next: None })
            }
            (Profile::Chain(c), On::Piece(k)) if k >= 1 && k < c.len() => {
                let (a, b) = (c[k - 1], c[k]);
                let (du, dy) = (b.x - a.x, b.y - a.y);
                if dy <= du * self.t {
                    return None;
                }
                let len = (du * du + dy * dy).sqrt();
                Some(Climb { end: (b.x, b.y), rate: 1.0 + du / (len * self.cos_a), next: Some(On::Piece(k + 1)) })
            }
            _ => None,
        }
    }
}

struct Climb {
    end: (f64, f64),
    /// Budget spent per unit length.
    rate: f64,
    next: Option<On>,
}
