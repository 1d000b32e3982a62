//! Quickhull over `R³` with exact orientation signs.
//!
//! Faces come out as outward, counter-clockwise vertex cycles over the input
//! indices, with nearly coplanar triangles merged into polygons.

use std::collections::{BTreeMap, HashMap};

use nalgebra::Vector3;
use robust::{orient2d, orient3d, Coord, Coord3D};

use crate::error::{GeomError, Result};
use crate::forms::EPS_GEOM;

/// Dihedral deviation below which two adjacent triangles share a face.
pub const MERGE_ANGLE: f64 = 1e-7;

fn c3(p: &Vector3<f64>) -> Coord3D<f64> {
    Coord3D {
        x: p.x,
        y: p.y,
        z: p.z,
    }
}

/// Negative iff `d` is on the outer side of the counter-clockwise triangle
/// `(a, b, c)`.
fn orient(pts: &[Vector3<f64>], a: usize, b: usize, c: usize, d: usize) -> f64 {
    orient3d(c3(&pts[a]), c3(&pts[b]), c3(&pts[c]), c3(&pts[d]))
}

#[derive(Debug)]
struct Tri {
    v: [usize; 3],
    outside: Vec<usize>,
    alive: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RawHull {
    /// Outward counter-clockwise cycles over input indices.
    pub faces: Vec<Vec<usize>>,
    /// True when the input was planar and the result is a doubly covered
    /// polygon.
    pub doubled: bool,
}

fn scale_of(pts: &[Vector3<f64>]) -> f64 {
    pts.iter().map(|p| p.amax()).fold(1.0, f64::max)
}

fn plane_distance(pts: &[Vector3<f64>], t: &[usize; 3], p: usize) -> f64 {
    let (a, b, c) = (pts[t[0]], pts[t[1]], pts[t[2]]);
    let n = (b - a).cross(&(c - a));
    let len = n.norm();
    if len == 0.0 {
        0.0
    } else {
        -(pts[p] - a).dot(&n) / len
    }
}

pub fn hull(pts: &[Vector3<f64>]) -> Result<RawHull> {
    if pts.len() < 4 {
        return Err(GeomError::TooFewPoints(pts.len()));
    }
    let scale = scale_of(pts);
    let tol = EPS_GEOM * scale;

    // initial simplex from extreme points
    let mut i0 = 0;
    let mut i1 = 0;
    for (i, p) in pts.iter().enumerate() {
        if p.x < pts[i0].x {
            i0 = i;
        }
        if p.x > pts[i1].x {
            i1 = i;
        }
    }
    if (pts[i1] - pts[i0]).norm() <= tol {
        // all x equal; fall back to the farthest pair from point 0
        i1 = (0..pts.len())
            .max_by(|&a, &b| (pts[a] - pts[i0]).norm().total_cmp(&(pts[b] - pts[i0]).norm()))
            .unwrap();
        if (pts[i1] - pts[i0]).norm() <= tol {
            return Err(GeomError::Degenerate("all points coincide"));
        }
    }
    let dir = (pts[i1] - pts[i0]).normalize();
    let line_dist = |p: &Vector3<f64>| {
        let d = p - pts[i0];
        (d - dir * d.dot(&dir)).norm()
    };
    let i2 = (0..pts.len())
        .max_by(|&a, &b| line_dist(&pts[a]).total_cmp(&line_dist(&pts[b])))
        .unwrap();
    if line_dist(&pts[i2]) <= tol {
        return Err(GeomError::Degenerate("all points are collinear"));
    }
    let i3 = (0..pts.len())
        .max_by(|&a, &b| {
            plane_distance(pts, &[i0, i1, i2], a)
                .abs()
                .total_cmp(&plane_distance(pts, &[i0, i1, i2], b).abs())
        })
        .unwrap();
    if plane_distance(pts, &[i0, i1, i2], i3).abs() <= tol
        || orient(pts, i0, i1, i2, i3) == 0.0
    {
        return planar_hull(pts, [i0, i1, i2]);
    }

    let (a, b, c, d) = if orient(pts, i0, i1, i2, i3) > 0.0 {
        (i0, i1, i2, i3)
    } else {
        (i0, i2, i1, i3)
    };
    // (a,b,c) has d on its inner side
    let mut tris: Vec<Tri> = [[a, b, c], [a, d, b], [b, d, c], [c, d, a]]
        .into_iter()
        .map(|v| Tri {
            v,
            outside: Vec::new(),
            alive: true,
        })
        .collect();
    let mut edge_owner: HashMap<(usize, usize), usize> = HashMap::new();
    for (f, t) in tris.iter().enumerate() {
        for k in 0..3 {
            edge_owner.insert((t.v[k], t.v[(k + 1) % 3]), f);
        }
    }

    let assign = |tris: &mut Vec<Tri>, candidates: &[usize], points: &[usize]| {
        for &p in points {
            let mut best: Option<(usize, f64)> = None;
            for &f in candidates {
                let t = &tris[f].v;
                if orient(pts, t[0], t[1], t[2], p) < 0.0 {
                    let dist = plane_distance(pts, t, p);
                    if best.is_none_or(|(_, bd)| dist > bd) {
                        best = Some((f, dist));
                    }
                }
            }
            if let Some((f, _)) = best {
                tris[f].outside.push(p);
            }
        }
    };
    let all: Vec<usize> = (0..pts.len()).filter(|&i| ![a, b, c, d].contains(&i)).collect();
    assign(&mut tris, &[0, 1, 2, 3], &all);

    loop {
        let Some(f0) = tris.iter().position(|t| t.alive && !t.outside.is_empty()) else {
            break;
        };
        let eye = *tris[f0]
            .outside
            .iter()
            .max_by(|&&p, &&q| {
                plane_distance(pts, &tris[f0].v, p)
                    .total_cmp(&plane_distance(pts, &tris[f0].v, q))
                    .then(q.cmp(&p))
            })
            .unwrap();

        // visible region by flood fill
        let mut visible = vec![f0];
        let mut seen = std::collections::HashSet::from([f0]);
        let mut stack = vec![f0];
        while let Some(f) = stack.pop() {
            let v = tris[f].v;
            for k in 0..3 {
                let g = edge_owner[&(v[(k + 1) % 3], v[k])];
                if seen.insert(g) {
                    let w = tris[g].v;
                    if orient(pts, w[0], w[1], w[2], eye) < 0.0 {
                        visible.push(g);
                        stack.push(g);
                    }
                }
            }
        }
        let vis_set: std::collections::HashSet<usize> = visible.iter().copied().collect();
        let mut horizon = Vec::new();
        for &f in &visible {
            let v = tris[f].v;
            for k in 0..3 {
                let (x, y) = (v[k], v[(k + 1) % 3]);
                if !vis_set.contains(&edge_owner[&(y, x)]) {
                    horizon.push((x, y));
                }
            }
        }

        let mut orphans = Vec::new();
        for &f in &visible {
            tris[f].alive = false;
            orphans.append(&mut tris[f].outside);
            let v = tris[f].v;
            for k in 0..3 {
                edge_owner.remove(&(v[k], v[(k + 1) % 3]));
            }
        }
        orphans.retain(|&p| p != eye);

        let mut created = Vec::new();
        for (x, y) in horizon {
            let id = tris.len();
            tris.push(Tri {
                v: [x, y, eye],
                outside: Vec::new(),
                alive: true,
            });
            edge_owner.insert((x, y), id);
            edge_owner.insert((y, eye), id);
            edge_owner.insert((eye, x), id);
            created.push(id);
        }
        assign(&mut tris, &created, &orphans);
    }

    let live: Vec<usize> = (0..tris.len()).filter(|&f| tris[f].alive).collect();
    let faces = merge_coplanar(pts, &tris, &live, &edge_owner, tol);
    Ok(RawHull {
        faces,
        doubled: false,
    })
}

fn unit_normal(pts: &[Vector3<f64>], v: &[usize; 3]) -> Vector3<f64> {
    let (a, b, c) = (pts[v[0]], pts[v[1]], pts[v[2]]);
    let n = (b - a).cross(&(c - a));
    let len = n.norm();
    if len == 0.0 {
        n
    } else {
        n / len
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

fn merge_coplanar(
    pts: &[Vector3<f64>],
    tris: &[Tri],
    live: &[usize],
    edge_owner: &HashMap<(usize, usize), usize>,
    tol: f64,
) -> Vec<Vec<usize>> {
    let slot: HashMap<usize, usize> = live.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let mut parent: Vec<usize> = (0..live.len()).collect();
    for (i, &f) in live.iter().enumerate() {
        let v = tris[f].v;
        let nf = unit_normal(pts, &v);
        for k in 0..3 {
            let g = edge_owner[&(v[(k + 1) % 3], v[k])];
            let j = slot[&g];
            if j <= i {
                continue;
            }
            let w = tris[g].v;
            let ng = unit_normal(pts, &w);
            let angle = 2.0 * ((nf - ng).norm() / 2.0).min(1.0).asin();
            let coplanar = angle < MERGE_ANGLE || {
                // slivers have unreliable normals; test the far vertices instead
                let far_g = w.iter().copied().find(|x| !v.contains(x)).unwrap();
                let far_f = v.iter().copied().find(|x| !w.contains(x)).unwrap();
                let (big, small_far) = if area2(pts, &v) >= area2(pts, &w) {
                    (v, far_g)
                } else {
                    (w, far_f)
                };
                plane_distance(pts, &big, small_far).abs() <= tol
            };
            if coplanar {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }

    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..live.len() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(live[i]);
    }
    let mut faces = Vec::new();
    for members in groups.values() {
        let mut directed: HashMap<usize, usize> = HashMap::new();
        let mut set = std::collections::HashSet::new();
        for &f in members {
            let v = tris[f].v;
            for k in 0..3 {
                set.insert((v[k], v[(k + 1) % 3]));
            }
        }
        for &(x, y) in &set {
            if !set.contains(&(y, x)) {
                directed.insert(x, y);
            }
        }
        let start = *directed.keys().min().unwrap();
        let mut cycle = vec![start];
        let mut cur = directed[&start];
        while cur != start && cycle.len() <= directed.len() {
            cycle.push(cur);
            cur = directed[&cur];
        }
        faces.push(cycle);
    }
    canonical_faces(faces)
}

fn area2(pts: &[Vector3<f64>], v: &[usize; 3]) -> f64 {
    (pts[v[1]] - pts[v[0]]).cross(&(pts[v[2]] - pts[v[0]])).norm()
}

/// Rotates every cycle to start at its smallest index and sorts the faces.
pub fn canonical_faces(mut faces: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    for f in &mut faces {
        let k = (0..f.len()).min_by_key(|&i| f[i]).unwrap_or(0);
        f.rotate_left(k);
    }
    faces.sort();
    faces
}

/// Doubly covered convex polygon of a planar point set.
fn planar_hull(pts: &[Vector3<f64>], seed: [usize; 3]) -> Result<RawHull> {
    let o = pts[seed[0]];
    let e1 = (pts[seed[1]] - o).normalize();
    let n = e1.cross(&(pts[seed[2]] - o)).normalize();
    let e2 = n.cross(&e1);
    let flat: Vec<Coord<f64>> = pts
        .iter()
        .map(|p| {
            let d = p - o;
            Coord {
                x: d.dot(&e1),
                y: d.dot(&e2),
            }
        })
        .collect();
    // monotone chain
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by(|&a, &b| {
        flat[a]
            .x
            .total_cmp(&flat[b].x)
            .then(flat[a].y.total_cmp(&flat[b].y))
    });
    let mut chain: Vec<usize> = Vec::new();
    for pass in 0..2 {
        let base = chain.len();
        let iter: Box<dyn Iterator<Item = &usize>> = if pass == 0 {
            Box::new(order.iter())
        } else {
            Box::new(order.iter().rev())
        };
        for &i in iter {
            while chain.len() >= base + 2
                && orient2d(flat[chain[chain.len() - 2]], flat[chain[chain.len() - 1]], flat[i])
                    <= 0.0
            {
                chain.pop();
            }
            chain.push(i);
        }
        chain.pop();
    }
    if chain.len() < 3 {
        return Err(GeomError::Degenerate("all points are collinear"));
    }
    let reversed: Vec<usize> = chain.iter().rev().copied().collect();
    Ok(RawHull {
        faces: canonical_faces(vec![chain, reversed]),
        doubled: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: f64, y: f64, z: f64) -> Vector3<f64> {
        Vector3::new(x, y, z)
    }

    fn cube() -> Vec<Vector3<f64>> {
        let mut out = Vec::new();
        for i in 0..8 {
            let s = |b: usize| if i >> b & 1 == 1 { 1.0 } else { -1.0 };
            out.push(v(s(0), s(1), s(2)));
        }
        out
    }

    fn check_outward(pts: &[Vector3<f64>], faces: &[Vec<usize>]) {
        let centroid = pts.iter().sum::<Vector3<f64>>() / pts.len() as f64;
        for f in faces {
            let n = (pts[f[1]] - pts[f[0]]).cross(&(pts[f[2]] - pts[f[0]]));
            assert!(n.dot(&(pts[f[0]] - centroid)) > 0.0, "face {f:?} points inward");
        }
    }

    #[test]
    fn tetrahedron() {
        let pts = [v(0., 0., 0.), v(1., 0., 0.), v(0., 1., 0.), v(0., 0., 1.)];
        let h = hull(&pts).unwrap();
        assert_eq!(h.faces.len(), 4);
        assert!(h.faces.iter().all(|f| f.len() == 3));
        check_outward(&pts, &h.faces);
    }

    #[test]
    fn cube_merges_to_quads() {
        let pts = cube();
        let h = hull(&pts).unwrap();
        assert_eq!(h.faces.len(), 6);
        assert!(h.faces.iter().all(|f| f.len() == 4));
        check_outward(&pts, &h.faces);
    }

    #[test]
    fn interior_points_are_dropped() {
        let mut pts = cube();
        pts.push(v(0.1, 0.2, -0.3));
        pts.push(v(0., 0., 0.));
        let h = hull(&pts).unwrap();
        let used: std::collections::BTreeSet<usize> = h.faces.iter().flatten().copied().collect();
        assert_eq!(used, (0..8).collect());
    }

    #[test]
    fn planar_input_doubles() {
        let pts = [v(0., 0., 0.), v(1., 0., 0.), v(1., 1., 0.), v(0., 1., 0.), v(0.5, 0.5, 0.)];
        let h = hull(&pts).unwrap();
        assert!(h.doubled);
        assert_eq!(h.faces.len(), 2);
        assert_eq!(h.faces[0].len(), 4);
        let mut back = h.faces[1].clone();
        back.reverse();
        let k = back.iter().position(|&x| x == h.faces[0][0]).unwrap();
        back.rotate_left(k);
        assert_eq!(back, h.faces[0]);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(matches!(hull(&[v(0., 0., 0.); 3]), Err(GeomError::TooFewPoints(3))));
        let line = [v(0., 0., 0.), v(1., 0., 0.), v(2., 0., 0.), v(3., 0., 0.)];
        assert!(matches!(hull(&line), Err(GeomError::Degenerate(_))));
    }
}
