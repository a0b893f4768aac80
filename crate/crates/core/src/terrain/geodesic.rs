//! Shortest path from the start to a ray above a terrain.

use super::model::{Terrain, TerrainKind};
use crate::error::{Error, Result};
use crate::geometry::{Point, RaySpec};

/// Visibility graph over the start and the terrain's corners, with shortest
/// distances from the start already computed.
#[derive(Debug, Clone)]
pub struct GeodesicOracle {
    terrain: Terrain,
    nodes: Vec<Point>,
    dist: Vec<f64>,
}

impl GeodesicOracle {
    pub fn new(terrain: &Terrain) -> Self {
        let mut nodes = vec![Point::ORIGIN];
        nodes.extend(terrain.corners().into_iter().filter(|&c| c != Point::ORIGIN));
        let n = nodes.len();
        let mut dist = vec![f64::INFINITY; n];
        let mut done = vec![false; n];
        dist[0] = 0.0;
        for _ in 0..n {
            let Some(u) = (0..n).filter(|&k| !done[k] && dist[k].is_finite()).min_by(|&a, &b| dist[a].total_cmp(&dist[b]))
            else {
                break;
            };
            done[u] = true;
            for v in 0..n {
                if done[v] {
                    continue;
                }
                let d = dist[u] + nodes[u].dist(nodes[v]);
                if d < dist[v] && terrain.segment_is_free(nodes[u], nodes[v]) {
                    dist[v] = d;
                }
            }
        }
        GeodesicOracle { terrain: terrain.clone(), nodes, dist }
    }

    pub fn terrain(&self) -> &Terrain {
        &self.terrain
    }

    /// Shortest distances from the start to every graph node.
    pub fn node_distances(&self) -> impl Iterator<Item = (Point, f64)> + '_ {
        self.nodes.iter().copied().zip(self.dist.iter().copied())
    }

    /// Length of the shortest free path from the start to `ray`.
    pub fn distance(&self, ray: &RaySpec) -> Result<f64> {
        ray.validate()?;
        let extra = match self.terrain.kind() {
            TerrainKind::Monotone(chain) => chain_crossings(chain, ray),
            TerrainKind::Barriers(_) => Vec::new(),
        };
        let dir = ray.direction();
        let t_min = hidden_length(&self.terrain, ray);
        let source = ray.source() + dir * t_min;
        let mut best = f64::INFINITY;
        for (k, (&v, &dv)) in self.nodes.iter().zip(&self.dist).enumerate() {
            if !dv.is_finite() || dv >= best {
                continue;
            }
            let t = (v - ray.source()).dot(dir);
            let foot = if t > t_min { ray.source() + dir * t } else { source };
            let mut consider = |goal: Point, len: f64| {
                if dv + len < best && self.terrain.segment_is_free(v, goal) {
                    best = dv + len;
                }
            };
            let foot_len = if k == 0 && t > t_min { ray.perp_distance() } else { v.dist(foot) };
            consider(foot, foot_len);
            consider(source, v.dist(source));
            for &p in extra.iter().filter(|p| (**p - ray.source()).dot(dir) >= t_min) {
                consider(p, v.dist(p));
            }
        }
        if best.is_finite() {
            Ok(best)
        } else {
            Err(Error::Unreachable)
        }
    }
}

/// Length of the part of a vertical ray that runs along a barrier face.
///
/// Such a ray is the limit of rays just beyond the barrier, so that part can
/// only be reached from behind the barrier and is left out of the goal.
fn hidden_length(terrain: &Terrain, ray: &RaySpec) -> f64 {
    let TerrainKind::Barriers(list) = terrain.kind() else { return 0.0 };
    if ray.beta != std::f64::consts::FRAC_PI_2 {
        return 0.0;
    }
    let x = ray.source().x;
    list.iter()
        .filter(|b| (b.x - x).abs() <= 1e-12 * x.abs().max(1.0))
        .map(|b| b.height)
        .fold(0.0, f64::max)
}

/// Points where `ray` meets the chain; they bound the free parts of the ray.
fn chain_crossings(chain: &[Point], ray: &RaySpec) -> Vec<Point> {
    let source = ray.source();
    let dir = ray.direction();
    let mut out = Vec::new();
    for w in chain.windows(2) {
        let (a, b) = (w[0], w[1]);
        let e = b - a;
        let denom = dir.cross(e);
        if denom == 0.0 {
            continue;
        }
        let t = (a - source).cross(e) / denom;
        let s = (a - source).cross(dir) / denom;
        if t >= 0.0 && (0.0..=1.0).contains(&s) {
            out.push(source + dir * t);
        }
    }
    out
}

/// One-off [`GeodesicOracle::distance`].
pub fn geodesic_opt(terrain: &Terrain, ray: &RaySpec) -> Result<f64> {
    GeodesicOracle::new(terrain).distance(ray)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Side;
    use crate::terrain::model::Barrier;

    #[test]
    fn empty_terrain_is_the_perpendicular() {
        let ray = RaySpec::new(Side::Left, 0.4, Point::new(-3.0, 2.0)).unwrap();
        let d = geodesic_opt(&Terrain::empty(), &ray).unwrap();
        assert_eq!(d, ray.perp_distance());
    }

    #[test]
    fn single_barrier_detour() {
        let (b, h, d) = (1.0, 2.0, 3.0);
        let t = Terrain::barriers(vec![Barrier { x: b, height: h }]).unwrap();
        let ray = RaySpec::vertical(d).unwrap();
        let got = geodesic_opt(&t, &ray).unwrap();
        assert!((got - ((b * b + h * h).sqrt() + (d - b))).abs() < 1e-12);
        let low = Terrain::barriers(vec![Barrier { x: b, height: 1e-3 }]).unwrap();
        let got = geodesic_opt(&low, &RaySpec::new(Side::Right, 0.3, Point::new(d, 0.0)).unwrap()).unwrap();
        assert!(got >= d * 0.3f64.sin() - 1e-12);
    }

    #[test]
    fn ray_on_a_barrier_face_lies_behind_it() {
        let t = Terrain::barriers(vec![Barrier { x: 2.0, height: 3.0 }]).unwrap();
        let got = geodesic_opt(&t, &RaySpec::vertical(2.0).unwrap()).unwrap();
        assert!((got - 13f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn chain_blocks_the_foot() {
        // a wall in front of a vertical ray; the best goal is where the ray leaves the wall
        let chain = vec![Point::new(-1.0, 0.0), Point::new(1.0, 0.0), Point::new(1.0 + 1e-9, 5.0), Point::new(4.0, 5.0)];
        let t = Terrain::monotone(chain).unwrap();
        let ray = RaySpec::vertical(2.0).unwrap();
        let got = geodesic_opt(&t, &ray).unwrap();
        let corner = Point::new(1.0 + 1e-9, 5.0);
        let want = corner.norm() + corner.dist(Point::new(2.0, 5.0));
        assert!((got - want).abs() < 1e-6, "{got} {want}");
    }
}
