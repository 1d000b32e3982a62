//! Polyhedral surfaces as convex hulls of point sets and truncated orbits.

pub mod quickhull;

use std::collections::{BTreeMap, BTreeSet};

use nalgebra::Vector3;
use serde::Serialize;

use crate::error::{GeomError, Result};
use crate::forms::{AmbientPoint, FormSpace, SpaceKind};
use crate::groups::{GroupSpec, Isometry, OrbitPoint, PointIndex, Word};

/// An undirected edge with its one or two incident faces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub faces: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolyhedralSurface {
    pub vertices: Vec<AmbientPoint>,
    /// Orbit word of each vertex; empty words for plain point sets.
    pub words: Vec<Word>,
    /// Vertex cycles, counter-clockwise seen from outside the hull.
    pub faces: Vec<Vec<usize>>,
    pub edges: Vec<Edge>,
    pub space: FormSpace,
    /// Faces all of whose vertices have word length at most `depth - 1`.
    pub stable: Vec<bool>,
    /// Vertices of word length at most `depth - 1` whose link is a full
    /// cycle of faces.
    pub settled: Vec<bool>,
    /// Orbit depth the surface was built from, if any.
    pub depth: Option<usize>,
}

/// A vertex link: neighbours and incident faces in cyclic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Link {
    pub neighbours: Vec<usize>,
    pub faces: Vec<usize>,
    /// Whether the faces close up around the vertex.
    pub closed: bool,
}

pub(crate) fn build_edges(faces: &[Vec<usize>]) -> Vec<Edge> {
    let mut map: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (f, cyc) in faces.iter().enumerate() {
        for k in 0..cyc.len() {
            let (x, y) = (cyc[k], cyc[(k + 1) % cyc.len()]);
            map.entry((x.min(y), x.max(y))).or_default().push(f);
        }
    }
    map.into_iter()
        .map(|((a, b), faces)| Edge { a, b, faces })
        .collect()
}

impl PolyhedralSurface {
    /// Surface from explicit faces over `vertices`, with every face stable.
    pub fn from_faces(
        space: FormSpace,
        vertices: Vec<AmbientPoint>,
        faces: Vec<Vec<usize>>,
    ) -> Result<Self> {
        for v in &vertices {
            if v.space() != space {
                return Err(GeomError::Config(format!(
                    "vertex in {} for a surface in {space}",
                    v.space()
                )));
            }
        }
        if let Some(&bad) = faces.iter().flatten().find(|&&i| i >= vertices.len()) {
            return Err(GeomError::Config(format!("face refers to missing vertex {bad}")));
        }
        let edges = build_edges(&faces);
        let n = vertices.len();
        let mut s = Self {
            words: vec![Word::empty(); n],
            vertices,
            stable: vec![true; faces.len()],
            faces,
            edges,
            space,
            settled: vec![true; n],
            depth: None,
        };
        s.settled = (0..n).map(|v| s.link(v).closed).collect();
        Ok(s)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_closed(&self) -> bool {
        self.edges.iter().all(|e| e.faces.len() == 2)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    /// Affine chart coordinates of every vertex.
    pub fn chart(&self) -> Result<Vec<Vector3<f64>>> {
        self.vertices.iter().map(|v| v.affine_chart()).collect()
    }

    /// Index of the vertex carrying the empty word, if the surface came from
    /// an orbit.
    pub fn base_vertex(&self) -> Option<usize> {
        self.depth?;
        self.words.iter().position(|w| w.is_empty())
    }

    /// Outward unit normal and offset `n · x = d` of a face in the chart.
    pub fn face_plane(&self, f: usize) -> Result<(Vector3<f64>, f64)> {
        let pts: Vec<Vector3<f64>> = self.faces[f]
            .iter()
            .map(|&i| self.vertices[i].affine_chart())
            .collect::<Result<_>>()?;
        plane_of(&pts)
    }

    pub fn link(&self, v: usize) -> Link {
        // in-neighbour u (edge u -> v) to out-neighbour w (edge v -> w), per face
        let mut step: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
        let mut count = 0;
        for (f, cyc) in self.faces.iter().enumerate() {
            if let Some(k) = cyc.iter().position(|&x| x == v) {
                let n = cyc.len();
                step.insert(cyc[(k + n - 1) % n], (cyc[(k + 1) % n], f));
                count += 1;
            }
        }
        if count == 0 {
            return Link {
                neighbours: Vec::new(),
                faces: Vec::new(),
                closed: false,
            };
        }
        // start where the chain cannot be extended backwards, if anywhere
        let outs: BTreeSet<usize> = step.values().map(|&(w, _)| w).collect();
        let start = step
            .keys()
            .copied()
            .find(|u| !outs.contains(u))
            .unwrap_or(*step.keys().next().unwrap());
        let mut neighbours = vec![start];
        let mut faces = Vec::new();
        let mut cur = start;
        while let Some(&(w, f)) = step.get(&cur) {
            faces.push(f);
            if w == start || faces.len() > count {
                break;
            }
            neighbours.push(w);
            cur = w;
        }
        let closed = faces.len() == count && step.get(&cur).map(|&(w, _)| w) == Some(start);
        Link {
            neighbours,
            faces,
            closed,
        }
    }

    /// Faces incident to vertex `v`, in index order.
    pub fn star(&self, v: usize) -> Vec<usize> {
        (0..self.faces.len())
            .filter(|&f| self.faces[f].contains(&v))
            .collect()
    }

    /// Restriction to a subset of faces, dropping unused vertices.
    pub fn restrict(&self, keep: &[usize]) -> PolyhedralSurface {
        let used: BTreeSet<usize> = keep.iter().flat_map(|&f| self.faces[f].iter().copied()).collect();
        let remap: BTreeMap<usize, usize> = used.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let faces: Vec<Vec<usize>> = keep
            .iter()
            .map(|&f| self.faces[f].iter().map(|v| remap[v]).collect())
            .collect();
        let mut s = PolyhedralSurface {
            vertices: used.iter().map(|&v| self.vertices[v].clone()).collect(),
            words: used.iter().map(|&v| self.words[v].clone()).collect(),
            edges: build_edges(&faces),
            stable: keep.iter().map(|&f| self.stable[f]).collect(),
            faces,
            space: self.space,
            settled: Vec::new(),
            depth: self.depth,
        };
        s.mark_settled();
        s
    }

    /// Demotes stable faces that are truncation artifacts: a face of the
    /// infinite hull carried back by `w⁻¹` from any vertex `w·p` must be a
    /// face at the base vertex whenever all its corners are present. Settled vertices lose that status
    /// when they touch a demoted face or their neighbour cycle does not
    /// carry back onto that of the base vertex.
    pub fn certify_stable(&mut self, spec: &GroupSpec) -> Result<()> {
        let Some(base) = self.base_vertex() else { return Ok(()) };
        let mut index = PointIndex::default();
        for v in &self.vertices {
            index.insert(v.coords().clone());
        }
        let mut at_base: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for f in self.star(base) {
            let mut key = self.faces[f].clone();
            key.sort_unstable();
            at_base.insert(key, f);
        }
        let mut back: BTreeMap<Word, Isometry> = BTreeMap::new();
        let mut demoted = vec![false; self.faces.len()];
        for f in 0..self.faces.len() {
            if !self.stable[f] {
                continue;
            }
            let mut ok = true;
            for &v in &self.faces[f] {
                let w = &self.words[v];
                if !back.contains_key(w) {
                    back.insert(w.clone(), spec.word_isometry(&w.inverse())?);
                }
                let g = &back[w];
                let mapped: Option<Vec<usize>> = self.faces[f]
                    .iter()
                    .map(|&u| index.find(&g.apply_vec(self.vertices[u].coords())))
                    .collect();
                let Some(mut key) = mapped else { continue };
                key.sort_unstable();
                if !at_base.contains_key(&key) {
                    ok = false;
                    break;
                }
            }
            self.stable[f] = ok;
            demoted[f] = !ok;
        }
        let base_link = self.link(base).neighbours;
        for v in 0..self.vertices.len() {
            if !self.settled[v] {
                continue;
            }
            if self.star(v).iter().any(|&f| demoted[f]) {
                self.settled[v] = false;
                continue;
            }
            let g = spec.word_isometry(&self.words[v].inverse())?;
            let mapped: Option<Vec<usize>> = self
                .link(v)
                .neighbours
                .iter()
                .map(|&u| index.find(&g.apply_vec(self.vertices[u].coords())))
                .collect();
            if let Some(mapped) = mapped {
                self.settled[v] = same_cycle(&mapped, &base_link);
            }
        }
        Ok(())
    }

    fn mark_settled(&mut self) {
        let limit = self.depth.map(|d| d as isize - 1);
        self.settled = (0..self.vertices.len())
            .map(|v| {
                limit.is_none_or(|l| self.words[v].len() as isize <= l) && self.link(v).closed
            })
            .collect();
    }

    fn mark_stable(&mut self) {
        let limit = self.depth.map(|d| d as isize - 1);
        self.stable = self
            .faces
            .iter()
            .map(|f| {
                limit.is_none_or(|l| f.iter().all(|&v| self.words[v].len() as isize <= l))
            })
            .collect();
    }
}

pub(crate) fn plane_of(pts: &[Vector3<f64>]) -> Result<(Vector3<f64>, f64)> {
    // Newell's method: robust for polygons with nearly collinear corners
    let mut n = Vector3::zeros();
    for k in 0..pts.len() {
        let (a, b) = (pts[k], pts[(k + 1) % pts.len()]);
        n += Vector3::new(
            (a.y - b.y) * (a.z + b.z),
            (a.z - b.z) * (a.x + b.x),
            (a.x - b.x) * (a.y + b.y),
        );
    }
    let len = n.norm();
    if !(len > 0.0) {
        return Err(GeomError::Degenerate("face has zero area"));
    }
    let n = n / len;
    let centroid = pts.iter().sum::<Vector3<f64>>() / pts.len() as f64;
    Ok((n, n.dot(&centroid)))
}

/// Boundary complex of the convex hull of `points` in their affine chart.
///
/// Points that are not hull vertices are dropped; the remaining vertices
/// keep their input order.
pub fn convex_hull(points: &[AmbientPoint]) -> Result<PolyhedralSurface> {
    let words = vec![Word::empty(); points.len()];
    hull_with_words(points, &words, None)
}

fn hull_with_words(
    points: &[AmbientPoint],
    words: &[Word],
    depth: Option<usize>,
) -> Result<PolyhedralSurface> {
    let Some(first) = points.first() else {
        return Err(GeomError::TooFewPoints(0));
    };
    let space = first.space();
    if points.iter().any(|p| p.space() != space) {
        return Err(GeomError::Config("points from different spaces".into()));
    }
    let chart: Vec<Vector3<f64>> = points.iter().map(|p| p.affine_chart()).collect::<Result<_>>()?;
    let raw = quickhull::hull(&chart)?;
    let used: BTreeSet<usize> = raw.faces.iter().flatten().copied().collect();
    let remap: BTreeMap<usize, usize> = used.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let faces = quickhull::canonical_faces(
        raw.faces
            .iter()
            .map(|f| f.iter().map(|v| remap[v]).collect())
            .collect(),
    );
    let mut s = PolyhedralSurface {
        vertices: used.iter().map(|&v| points[v].clone()).collect(),
        words: used.iter().map(|&v| words[v].clone()).collect(),
        edges: build_edges(&faces),
        stable: Vec::new(),
        faces,
        space,
        settled: Vec::new(),
        depth,
    };
    s.mark_stable();
    s.mark_settled();
    Ok(s)
}

/// Full convex hull of a truncated orbit, keeping the words.
pub fn orbit_hull(orbit: &[OrbitPoint], depth: usize) -> Result<PolyhedralSurface> {
    let points: Vec<AmbientPoint> = orbit.iter().map(|o| o.point.clone()).collect();
    let words: Vec<Word> = orbit.iter().map(|o| o.word.clone()).collect();
    hull_with_words(&points, &words, Some(depth))
}

/// The hull faces looking down towards the origin of `R^{2,1}`: those whose
/// outward normal has negative time-like component. Stable faces must be
/// space-like.
pub fn lower_hull_fuchsian(orbit: &[OrbitPoint], depth: usize) -> Result<PolyhedralSurface> {
    let full = orbit_hull(orbit, depth)?;
    if full.space.kind() != SpaceKind::Minkowski {
        return Err(GeomError::Unsupported {
            op: "lower_hull_fuchsian",
            space: full.space.name(),
        });
    }
    let mut keep = Vec::new();
    for f in 0..full.faces.len() {
        let (n, _) = full.face_plane(f)?;
        if n.z < 0.0 {
            keep.push(f);
        }
    }
    let surface = full.restrict(&keep);
    for f in 0..surface.faces.len() {
        if surface.stable[f] && !face_is_space_like(&surface, f)? {
            return Err(GeomError::NonSpaceLikeFace { face: f });
        }
    }
    Ok(surface)
}

/// A face plane of `R^{2,1}` is space-like iff its Minkowski normal
/// `(n₁, n₂, -n₃)` is time-like.
pub fn face_is_space_like(surface: &PolyhedralSurface, f: usize) -> Result<bool> {
    let (n, _) = surface.face_plane(f)?;
    Ok(n.x * n.x + n.y * n.y < n.z * n.z)
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct EquivarianceReport {
    pub checked_faces: usize,
    pub checked_vertices: usize,
    pub violations: Vec<String>,
}

impl EquivarianceReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn same_cycle(a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    let Some(k) = b.iter().position(|&x| x == a[0]) else {
        return false;
    };
    let n = a.len();
    let fwd = (0..n).all(|i| a[i] == b[(k + i) % n]);
    let bwd = (0..n).all(|i| a[i] == b[(k + n - i) % n]);
    fwd || bwd
}

/// Checks that generators and their inverses carry stable faces to faces,
/// and the neighbour cycle of each settled vertex onto that of its image
/// whenever everything involved is present in the truncation.
pub fn equivariance_check(surface: &PolyhedralSurface, spec: &GroupSpec) -> EquivarianceReport {
    let mut report = EquivarianceReport::default();
    if spec.generators.is_empty() {
        return report;
    }
    let mut index = PointIndex::default();
    for v in &surface.vertices {
        index.insert(v.coords().clone());
    }
    let mut by_set: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for (f, cyc) in surface.faces.iter().enumerate() {
        let mut key = cyc.clone();
        key.sort_unstable();
        by_set.insert(key, f);
    }
    for l in spec.letters() {
        let g = spec.letter(l);
        let image: Vec<Option<usize>> = surface
            .vertices
            .iter()
            .map(|v| index.find(&g.apply_vec(v.coords())))
            .collect();
        let letter = Word::from_letters(vec![l]);
        for (f, cyc) in surface.faces.iter().enumerate() {
            if !surface.stable[f] {
                continue;
            }
            let Some(mapped) = cyc.iter().map(|&v| image[v]).collect::<Option<Vec<usize>>>() else {
                continue;
            };
            report.checked_faces += 1;
            let mut key = mapped.clone();
            key.sort_unstable();
            match by_set.get(&key) {
                Some(&h) if same_cycle(&mapped, &surface.faces[h]) => {}
                _ => report
                    .violations
                    .push(format!("{letter} maps face {f} {cyc:?} to non-face {mapped:?}")),
            }
        }
        for v in 0..surface.vertices.len() {
            if !surface.settled[v] {
                continue;
            }
            let Some(gv) = image[v] else { continue };
            if !surface.settled[gv] {
                continue;
            }
            let link = surface.link(v);
            let Some(mapped) = link
                .neighbours
                .iter()
                .map(|&u| image[u])
                .collect::<Option<Vec<usize>>>()
            else {
                continue;
            };
            report.checked_vertices += 1;
            if !same_cycle(&mapped, &surface.link(gv).neighbours) {
                report.violations.push(format!(
                    "{letter} maps the link of vertex {v} ({}) off the link of vertex {gv}",
                    surface.words[v]
                ));
            }
        }
    }
    report
}
