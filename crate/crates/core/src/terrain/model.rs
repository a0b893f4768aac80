use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Point, SearchPath, Side};

/// Vertical segment from the ground `y = 0` up to `height` at `x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Barrier {
    pub x: f64,
    pub height: f64,
}

impl Barrier {
    pub fn top(&self) -> Point {
        Point::new(self.x, self.height)
    }
}

/// Shape of the terrain below the free space.
#[derive(Debug, Clone, PartialEq)]
pub enum TerrainKind {
    /// Strictly x-monotone chain, extended horizontally beyond its ends.
    Monotone(Vec<Point>),
    /// Vertical barriers standing on the ground line, sorted by `x`.
    Barriers(Vec<Barrier>),
}

/// A 1.5D terrain whose ground line passes through the start.
#[derive(Debug, Clone, PartialEq)]
pub struct Terrain {
    kind: TerrainKind,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
enum TerrainFile {
    Chain(Vec<[f64; 2]>),
    Barriers(Vec<[f64; 2]>),
}

pub(crate) fn tol_at(p: Point) -> f64 {
    1e-12 * p.x.abs().max(p.y.abs()).max(1.0)
}

impl Terrain {
    /// Terrain without obstacles.
    pub fn empty() -> Self {
        Terrain { kind: TerrainKind::Barriers(Vec::new()) }
    }

    pub fn monotone(chain: Vec<Point>) -> Result<Self> {
        if chain.len() < 2 {
            return Err(Error::InvalidTerrain("a chain needs at least two vertices".into()));
        }
        if chain.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidTerrain("non-finite chain vertex".into()));
        }
        if chain.windows(2).any(|w| !(w[1].x > w[0].x)) {
            return Err(Error::InvalidTerrain("chain is not strictly x-monotone".into()));
        }
        let t = Terrain { kind: TerrainKind::Monotone(chain) };
        if t.surface(0.0) > tol_at(Point::ORIGIN) {
            return Err(Error::InvalidTerrain("start lies below the terrain".into()));
        }
        Ok(t)
    }

    pub fn barriers(mut list: Vec<Barrier>) -> Result<Self> {
        if list.iter().any(|b| !(b.x.is_finite() && b.height.is_finite())) {
            return Err(Error::InvalidTerrain("non-finite barrier".into()));
        }
        if list.iter().any(|b| b.x == 0.0) {
            return Err(Error::InvalidTerrain("barrier at the start".into()));
        }
        if list.iter().any(|b| !(b.height > 0.0)) {
            return Err(Error::InvalidTerrain("barrier heights must be positive".into()));
        }
        list.sort_by(|a, b| a.x.total_cmp(&b.x));
        if list.windows(2).any(|w| w[0].x == w[1].x) {
            return Err(Error::InvalidTerrain("barriers must have distinct x".into()));
        }
        Ok(Terrain { kind: TerrainKind::Barriers(list) })
    }

    pub fn kind(&self) -> &TerrainKind {
        &self.kind
    }

    pub fn is_empty(&self) -> bool {
        matches!(&self.kind, TerrainKind::Barriers(b) if b.is_empty())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        match serde_json::from_str::<TerrainFile>(text)? {
            TerrainFile::Chain(pts) => Terrain::monotone(pts.iter().map(|p| Point::new(p[0], p[1])).collect()),
            TerrainFile::Barriers(bs) => Terrain::barriers(bs.iter().map(|b| Barrier { x: b[0], height: b[1] }).collect()),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let file = match &self.kind {
            TerrainKind::Monotone(c) => TerrainFile::Chain(c.iter().map(|p| [p.x, p.y]).collect()),
            TerrainKind::Barriers(b) => TerrainFile::Barriers(b.iter().map(|b| [b.x, b.height]).collect()),
        };
        Ok(serde_json::to_string_pretty(&file)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Terrain::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }

    /// Height of a chain terrain at `x`; the ground line for barriers.
    pub fn surface(&self, x: f64) -> f64 {
        match &self.kind {
            TerrainKind::Monotone(c) => chain_height(c, x),
            TerrainKind::Barriers(_) => 0.0,
        }
    }

    /// Obstacle vertices a shortest path may bend around.
    pub fn corners(&self) -> Vec<Point> {
        match &self.kind {
            TerrainKind::Monotone(c) => c.clone(),
            TerrainKind::Barriers(b) => b.iter().map(Barrier::top).collect(),
        }
    }

    /// Whether the closed segment `a b` stays in the closed free space.
    ///
    /// Barriers block segments that pass strictly across their `x` below the top.
    pub fn segment_is_free(&self, a: Point, b: Point) -> bool {
        let tol = tol_at(a).max(tol_at(b));
        match &self.kind {
            TerrainKind::Monotone(c) => {
                let clear = |p: Point| p.y >= chain_height(c, p.x) - tol - chain_slope(c, p.x) * tol_at(p);
                if !clear(a) || !clear(b) {
                    return false;
                }
                let (lo, hi) = if a.x <= b.x { (a, b) } else { (b, a) };
                if hi.x == lo.x {
                    return true;
                }
                c.iter().filter(|v| v.x > lo.x && v.x < hi.x).all(|v| {
                    let y = lo.y + (hi.y - lo.y) * (v.x - lo.x) / (hi.x - lo.x);
                    y >= v.y - tol
                })
            }
            TerrainKind::Barriers(list) => {
                let (lo, hi) = if a.x <= b.x { (a, b) } else { (b, a) };
                let xtol = tol;
                list.iter().filter(|bar| bar.x > lo.x + xtol && bar.x < hi.x - xtol).all(|bar| {
                    let y = lo.y + (hi.y - lo.y) * (bar.x - lo.x) / (hi.x - lo.x);
                    y >= bar.height - tol
                }) && a.y >= -tol
                    && b.y >= -tol
            }
        }
    }

    /// First vertex index at which `path` violates the free space, if any.
    ///
    /// Chains are checked at vertices, segment midpoints and chain breakpoints;
    /// barriers are checked wherever the path changes sides of a barrier.
    pub fn clearance_violation(&self, path: &SearchPath, tol: f64) -> Option<usize> {
        let v = path.vertices();
        match &self.kind {
            TerrainKind::Monotone(c) => {
                let below = |p: Point| p.y < chain_height(c, p.x) - tol * p.x.abs().max(p.y.abs()).max(1.0);
                if below(v[0]) {
                    return Some(0);
                }
                for k in 1..v.len() {
                    if below(v[k]) || below(v[k - 1].lerp(v[k], 0.5)) {
                        return Some(k);
                    }
                    let (lo, hi) = if v[k - 1].x <= v[k].x { (v[k - 1], v[k]) } else { (v[k], v[k - 1]) };
                    for q in c.iter().filter(|q| q.x > lo.x && q.x < hi.x) {
                        let y = lo.y + (hi.y - lo.y) * (q.x - lo.x) / (hi.x - lo.x);
                        if y < q.y - tol * q.x.abs().max(q.y.abs()).max(1.0) {
                            return Some(k);
                        }
                    }
                }
                None
            }
            TerrainKind::Barriers(list) => {
                for bar in list {
                    let scale = tol * bar.x.abs().max(bar.height).max(1.0);
                    let side = |p: Point| {
                        if p.x > bar.x + scale {
                            1
                        } else if p.x < bar.x - scale {
                            -1
                        } else {
                            0
                        }
                    };
                    let mut last: Option<(usize, i32)> = None;
                    for k in 0..v.len() {
                        let s = side(v[k]);
                        if s == 0 {
                            continue;
                        }
                        if let Some((j, prev)) = last {
                            if prev != s {
                                let y = if j + 1 == k {
                                    let (a, b) = (v[j], v[k]);
                                    a.y + (b.y - a.y) * (bar.x - a.x) / (b.x - a.x)
                                } else {
                                    v[k - 1].y
                                };
                                if y < bar.height - scale {
                                    return Some(k);
                                }
                            }
                        }
                        last = Some((k, s));
                    }
                }
                None
            }
        }
    }

    /// The terrain seen from one side, in the outward coordinate `u = sign * x`.
    pub(crate) fn profile(&self, side: Side) -> Profile {
        let s = side.sign();
        match &self.kind {
            TerrainKind::Monotone(c) => {
                let mut pts: Vec<Point> = c.iter().map(|p| Point::new(s * p.x, p.y)).collect();
                if side == Side::Left {
                    pts.reverse();
                }
                Profile::Chain(pts)
            }
            TerrainKind::Barriers(list) => {
                let mut bs: Vec<(f64, f64)> =
                    list.iter().filter(|b| b.x * s > 0.0).map(|b| (b.x * s, b.height)).collect();
                bs.sort_by(|a, b| a.0.total_cmp(&b.0));
                Profile::Barriers(bs)
            }
        }
    }
}

/// Steepest slope magnitude of the chain pieces meeting at `x`.
fn chain_slope(c: &[Point], x: f64) -> f64 {
    let k = c.partition_point(|p| p.x < x);
    let slope = |j: usize| {
        if j == 0 || j >= c.len() {
            0.0
        } else {
            ((c[j].y - c[j - 1].y) / (c[j].x - c[j - 1].x)).abs()
        }
    };
    slope(k).max(slope(k + 1))
}

pub(crate) fn chain_height(c: &[Point], x: f64) -> f64 {
    let first = c[0];
    let last = c[c.len() - 1];
    if x <= first.x {
        return first.y;
    }
    if x >= last.x {
        return last.y;
    }
    let k = c.partition_point(|p| p.x <= x);
    let (a, b) = (c[k - 1], c[k]);
    a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x)
}

/// One side of a terrain in outward coordinates.
#[derive(Debug, Clone)]
pub(crate) enum Profile {
    /// Chain sorted by increasing `u`.
    Chain(Vec<Point>),
    /// `(u, height)` with `u > 0`, sorted.
    Barriers(Vec<(f64, f64)>),
}
