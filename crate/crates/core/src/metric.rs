//! Induced cone metrics: face geometry, cone angles, Gauss–Bonnet and the
//! classification of `(K, ε)` metrics.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use nalgebra::{DMatrix, DVector, Vector3};
use serde::{Serialize, Serializer};

use crate::error::{GeomError, Result};
use crate::forms::{AmbientPoint, FormSpace, SpaceKind, EPS_GEOM, EPS_REPORT};
use crate::groups::{GroupSpec, Isometry, Word};
use crate::hull::{plane_of, PolyhedralSurface};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FaceGeometry {
    pub lengths: Vec<f64>,
    /// Interior angle at each vertex of the cycle.
    pub angles: Vec<f64>,
    pub area: f64,
}

/// Angle between two vectors on which the form is positive, computed from
/// the chord of the unit vectors so that small and near-straight angles keep
/// full precision.
fn angle_between(space: FormSpace, u: &DVector<f64>, w: &DVector<f64>) -> Option<f64> {
    let q = |x: &DVector<f64>| space.form(x.as_slice(), x.as_slice());
    let (qu, qw) = (q(u), q(w));
    if !(qu > 0.0 && qw > 0.0) {
        return None;
    }
    let eu = u / qu.sqrt();
    let ew = w / qw.sqrt();
    let minus = q(&(&eu - &ew));
    let plus = q(&(&eu + &ew));
    if minus < -EPS_GEOM || plus < -EPS_GEOM {
        return None;
    }
    Some(2.0 * minus.max(0.0).sqrt().atan2(plus.max(0.0).sqrt()))
}

/// Edge lengths, interior angles and area of a convex polygon given by its
/// ambient vertex coordinates.
pub fn polygon_geometry(space: FormSpace, verts: &[DVector<f64>]) -> Result<FaceGeometry> {
    let n = verts.len();
    if n < 3 {
        return Err(GeomError::Degenerate("polygon with fewer than 3 vertices"));
    }
    let nsf = || GeomError::NonSpaceLikeFace { face: usize::MAX };
    match space.kind() {
        SpaceKind::Euclidean | SpaceKind::Minkowski => flat_polygon(space, verts).ok_or_else(nsf),
        SpaceKind::Hyperbolic | SpaceKind::HyperbolicPlane | SpaceKind::DeSitter | SpaceKind::Sphere => {
            let level = f64::from(space.model_constant());
            let mut lengths = Vec::with_capacity(n);
            let mut angles = Vec::with_capacity(n);
            for k in 0..n {
                let v = &verts[k];
                let a = AmbientPoint::new_unchecked(space, v.clone());
                let b = AmbientPoint::new_unchecked(space, verts[(k + 1) % n].clone());
                lengths.push(crate::forms::geodesic_distance(&a, &b)?);
                // tangent directions at v towards its two neighbours
                let tangent = |x: &DVector<f64>| x - v * (space.form(x.as_slice(), v.as_slice()) / level);
                let tu = tangent(&verts[(k + n - 1) % n]);
                let tw = tangent(&verts[(k + 1) % n]);
                angles.push(angle_between(space, &tu, &tw).ok_or_else(nsf)?);
            }
            let sum: f64 = angles.iter().sum();
            let flat = (n as f64 - 2.0) * PI;
            let area = if level < 0.0 { flat - sum } else { sum - flat };
            Ok(FaceGeometry {
                lengths,
                angles,
                area,
            })
        }
        SpaceKind::AntiDeSitter => Err(GeomError::Unsupported {
            op: "polygon_geometry",
            space: space.name(),
        }),
    }
}

fn flat_polygon(space: FormSpace, verts: &[DVector<f64>]) -> Option<FaceGeometry> {
    let n = verts.len();
    let q = |x: &DVector<f64>, y: &DVector<f64>| space.form(x.as_slice(), y.as_slice());
    // form-orthonormal frame of the face plane
    let o = &verts[0];
    let d1 = &verts[1] - o;
    let q1 = q(&d1, &d1);
    if !(q1 > 0.0) {
        return None;
    }
    let e1 = &d1 / q1.sqrt();
    let mut best: Option<(DVector<f64>, f64)> = None;
    for v in &verts[2..] {
        let d = v - o;
        let r = &d - &e1 * q(&d, &e1);
        let qr = q(&r, &r);
        let size = r.norm();
        if best.as_ref().is_none_or(|(b, _)| size > b.norm()) {
            best = Some((r, qr));
        }
    }
    let (r, qr) = best?;
    if !(qr > EPS_GEOM * r.norm_squared()) {
        return None;
    }
    let e2 = &r / qr.sqrt();
    let flat: Vec<(f64, f64)> = verts
        .iter()
        .map(|v| {
            let d = v - o;
            (q(&d, &e1), q(&d, &e2))
        })
        .collect();
    let mut lengths = Vec::with_capacity(n);
    let mut angles = Vec::with_capacity(n);
    let mut twice_area = 0.0;
    for k in 0..n {
        let (a, b, c) = (flat[(k + n - 1) % n], flat[k], flat[(k + 1) % n]);
        lengths.push((c.0 - b.0).hypot(c.1 - b.1));
        let (u, w) = ((a.0 - b.0, a.1 - b.1), (c.0 - b.0, c.1 - b.1));
        angles.push((u.0 * w.1 - u.1 * w.0).abs().atan2(u.0 * w.0 + u.1 * w.1));
        twice_area += b.0 * c.1 - c.0 * b.1;
    }
    Some(FaceGeometry {
        lengths,
        angles,
        area: 0.5 * twice_area.abs(),
    })
}

pub fn face_geometry(surface: &PolyhedralSurface, f: usize) -> Result<FaceGeometry> {
    let verts: Vec<DVector<f64>> = surface.faces[f]
        .iter()
        .map(|&v| surface.vertices[v].coords().clone())
        .collect();
    polygon_geometry(surface.space, &verts).map_err(|e| match e {
        GeomError::NonSpaceLikeFace { .. } => GeomError::NonSpaceLikeFace { face: f },
        e => e,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConePoint {
    pub vertex: usize,
    pub word: Word,
    pub theta: f64,
    pub k: f64,
}

/// Cone angle of every vertex whose link is complete; other vertices are
/// left out.
pub fn cone_angles(surface: &PolyhedralSurface) -> Result<Vec<ConePoint>> {
    let mut theta: BTreeMap<usize, f64> = BTreeMap::new();
    let settled: Vec<usize> = (0..surface.vertices.len()).filter(|&v| surface.settled[v]).collect();
    let mut cache: BTreeMap<usize, FaceGeometry> = BTreeMap::new();
    for &v in &settled {
        let mut sum = 0.0;
        for f in surface.link(v).faces {
            if !cache.contains_key(&f) {
                cache.insert(f, face_geometry(surface, f)?);
            }
            let k = surface.faces[f].iter().position(|&x| x == v).unwrap();
            sum += cache[&f].angles[k];
        }
        theta.insert(v, sum);
    }
    Ok(theta
        .into_iter()
        .map(|(v, t)| ConePoint {
            vertex: v,
            word: surface.words[v].clone(),
            theta: t,
            k: 2.0 * PI - t,
        })
        .collect())
}

/// Sign class of the cone curvatures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Positive,
    Negative,
    Mixed,
    /// No cone points at all.
    Empty,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Positive => "+",
            Sign::Negative => "-",
            Sign::Mixed => "mixed",
            Sign::Empty => "none",
        })
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn sign_of(points: &[ConePoint]) -> Sign {
    if points.is_empty() {
        Sign::Empty
    } else if points.iter().all(|c| c.k > EPS_REPORT) {
        Sign::Positive
    } else if points.iter().all(|c| c.k < -EPS_REPORT) {
        Sign::Negative
    } else {
        Sign::Mixed
    }
}

/// Local form of the "large" condition on `(1, -)` metrics.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LargeFlag {
    pub all_cone_angles_exceed_2pi: bool,
    pub scope: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConeMetricReport {
    #[serde(rename = "K")]
    pub k_const: i8,
    pub epsilon: Sign,
    pub genus: i64,
    pub euler_characteristic: i64,
    pub cone_points: Vec<ConePoint>,
    pub face_areas: Vec<f64>,
    pub total_area: f64,
    pub gb_residual: f64,
    pub large_flag: Option<LargeFlag>,
}

impl ConeMetricReport {
    pub fn total_curvature(&self) -> f64 {
        self.cone_points.iter().map(|c| c.k).sum()
    }

    fn assemble(
        space: FormSpace,
        chi: i64,
        all_points: Vec<ConePoint>,
        face_areas: Vec<f64>,
    ) -> Result<Self> {
        if chi % 2 != 0 {
            return Err(GeomError::Config(format!(
                "odd Euler characteristic {chi}: not a closed orientable surface"
            )));
        }
        let genus = (2 - chi) / 2;
        let k_const = match space.kind() {
            SpaceKind::Euclidean | SpaceKind::Minkowski => 0,
            SpaceKind::Hyperbolic | SpaceKind::HyperbolicPlane => -1,
            SpaceKind::Sphere | SpaceKind::DeSitter => 1,
            SpaceKind::AntiDeSitter => {
                return Err(GeomError::Unsupported {
                    op: "cone metric",
                    space: space.name(),
                })
            }
        };
        let total_area: f64 = face_areas.iter().sum();
        let sum_k: f64 = all_points.iter().map(|c| c.k).sum();
        let gb_residual = (sum_k - 2.0 * PI * chi as f64 + f64::from(k_const) * total_area).abs();
        let cone_points: Vec<ConePoint> =
            all_points.into_iter().filter(|c| c.k.abs() > EPS_REPORT).collect();
        let epsilon = sign_of(&cone_points);
        let large_flag = (k_const == 1 && epsilon == Sign::Negative).then(|| LargeFlag {
            all_cone_angles_exceed_2pi: cone_points.iter().all(|c| c.theta > 2.0 * PI),
            scope: "local check only",
        });
        Ok(Self {
            k_const,
            epsilon,
            genus,
            euler_characteristic: chi,
            cone_points,
            face_areas,
            total_area,
            gb_residual,
            large_flag,
        })
    }
}

/// Cone metric of a closed surface acted on by the trivial group.
pub fn closed_metric(surface: &PolyhedralSurface) -> Result<ConeMetricReport> {
    if let Some(e) = surface.edges.iter().find(|e| e.faces.len() != 2) {
        return Err(GeomError::OpenSurface(e.a, e.b));
    }
    let face_areas = (0..surface.faces.len())
        .map(|f| face_geometry(surface, f).map(|g| g.area))
        .collect::<Result<Vec<_>>>()?;
    let points = cone_angles(surface)?;
    if points.len() != surface.vertices.len() {
        return Err(GeomError::Config("some vertex links do not close up".into()));
    }
    ConeMetricReport::assemble(surface.space, surface.euler_characteristic(), points, face_areas)
}

fn plane_contains(n: &Vector3<f64>, d: f64, x: &Vector3<f64>) -> bool {
    (n.dot(x) - d).abs() <= 1e-7 * x.norm().max(1.0)
}

fn chart(space: FormSpace, v: &DVector<f64>) -> Result<Vector3<f64>> {
    AmbientPoint::new_unchecked(space, v.clone()).affine_chart()
}

/// Cone metric of the quotient of an equivariant surface by its group.
///
/// The orbit has a single vertex class, the base vertex. Faces at the base
/// are grouped into orbits by following, for each vertex `w(p)` of a face,
/// the translate by `w⁻¹` back to the base. The full face of each orbit is
/// rebuilt from these translates, so the truncation never enters the areas.
pub fn quotient_metric(surface: &PolyhedralSurface, spec: &GroupSpec) -> Result<ConeMetricReport> {
    if spec.generators.is_empty() {
        return closed_metric(surface);
    }
    let space = surface.space;
    let p = surface
        .base_vertex()
        .ok_or_else(|| GeomError::NoFundamentalSet("surface has no base vertex".into()))?;
    if !surface.settled[p] {
        return Err(GeomError::NoFundamentalSet(
            "the base vertex link is cut by the truncation; increase depth".into(),
        ));
    }
    let link = surface.link(p);
    let star = link.faces.clone();
    let planes: Vec<(Vector3<f64>, f64)> = star
        .iter()
        .map(|&f| surface.face_plane(f))
        .collect::<Result<_>>()?;
    let dim = space.dim();

    // transform[i]: maps the class root onto star face i
    let mut transform: Vec<Option<DMatrix<f64>>> = vec![None; star.len()];
    let mut class: Vec<usize> = vec![usize::MAX; star.len()];
    let mut roots = Vec::new();
    for seed in 0..star.len() {
        if transform[seed].is_some() {
            continue;
        }
        let c = roots.len();
        roots.push(seed);
        transform[seed] = Some(DMatrix::identity(dim, dim));
        class[seed] = c;
        let mut queue = vec![seed];
        while let Some(x) = queue.pop() {
            let ax = transform[x].clone().unwrap();
            for &q in &surface.faces[star[x]] {
                let w = &surface.words[q];
                if w.is_empty() {
                    continue;
                }
                let winv = spec.word_isometry(&w.inverse())?;
                let moved: Vec<Vector3<f64>> = surface.faces[star[x]]
                    .iter()
                    .map(|&v| chart(space, &winv.apply_vec(surface.vertices[v].coords())))
                    .collect::<Result<_>>()?;
                let y = (0..star.len())
                    .find(|&y| {
                        let (n, d) = planes[y];
                        moved.iter().all(|m| plane_contains(&n, d, m))
                    })
                    .ok_or_else(|| {
                        GeomError::NoFundamentalSet(format!(
                            "translate of star face {} by {} is not at the base vertex",
                            star[x],
                            w.inverse()
                        ))
                    })?;
                if transform[y].is_none() {
                    transform[y] = Some(winv.matrix() * &ax);
                    class[y] = c;
                    queue.push(y);
                } else if class[y] != c {
                    return Err(GeomError::NoFundamentalSet("inconsistent face classes".into()));
                }
            }
        }
    }

    // rebuild each full face from the base vertex translates
    let base = surface.vertices[p].coords().clone();
    let mut face_areas = Vec::new();
    for (c, &root) in roots.iter().enumerate() {
        let members: Vec<usize> = (0..star.len()).filter(|&i| class[i] == c).collect();
        let corners: Vec<DVector<f64>> = members
            .iter()
            .map(|&i| {
                let a = Isometry::new(space, transform[i].clone().unwrap(), Word::empty())?;
                Ok(a.inverse().apply_vec(&base))
            })
            .collect::<Result<_>>()?;
        let ordered = order_on_plane(space, corners, &planes[root].0)?;
        face_areas.push(polygon_geometry(space, &ordered)?.area);
    }

    let mut theta = 0.0;
    for &f in &star {
        let g = face_geometry(surface, f)?;
        let k = surface.faces[f].iter().position(|&x| x == p).unwrap();
        theta += g.angles[k];
    }
    let degree = link.neighbours.len();
    if degree % 2 != 0 {
        return Err(GeomError::NoFundamentalSet("odd vertex degree at the base".into()));
    }
    let chi = 1 - (degree / 2) as i64 + roots.len() as i64;
    let points = vec![ConePoint {
        vertex: p,
        word: Word::empty(),
        theta,
        k: 2.0 * PI - theta,
    }];
    ConeMetricReport::assemble(space, chi, points, face_areas)
}

/// Sorts coplanar points counter-clockwise about `normal` in the chart.
fn order_on_plane(
    space: FormSpace,
    pts: Vec<DVector<f64>>,
    normal: &Vector3<f64>,
) -> Result<Vec<DVector<f64>>> {
    let c: Vec<Vector3<f64>> = pts.iter().map(|v| chart(space, v)).collect::<Result<_>>()?;
    let centroid = c.iter().sum::<Vector3<f64>>() / c.len() as f64;
    let e1 = (c[0] - centroid).normalize();
    let e2 = normal.cross(&e1);
    let mut idx: Vec<(f64, usize)> = c
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let d = x - centroid;
            (d.dot(&e2).atan2(d.dot(&e1)), i)
        })
        .collect();
    idx.sort_by(|a, b| a.0.total_cmp(&b.0));
    let ordered: Vec<DVector<f64>> = idx.into_iter().map(|(_, i)| pts[i].clone()).collect();
    let ochart: Vec<Vector3<f64>> = ordered.iter().map(|v| chart(space, v)).collect::<Result<_>>()?;
    plane_of(&ochart)?;
    Ok(ordered)
}

/// A row of the table of the ten realizable `(g, K, ε)` cases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub row: u8,
    pub genus: &'static str,
    #[serde(rename = "K")]
    pub k_const: i8,
    pub epsilon: &'static str,
    pub realization: &'static str,
}

pub const TABLE: [TableRow; 10] = [
    TableRow { row: 1, genus: "0", k_const: -1, epsilon: "+", realization: "convex polytope in H3" },
    TableRow { row: 2, genus: "0", k_const: 0, epsilon: "+", realization: "convex polytope in R3" },
    TableRow { row: 3, genus: "0", k_const: 1, epsilon: "+", realization: "convex polytope in S3" },
    TableRow { row: 4, genus: "0", k_const: 1, epsilon: "-", realization: "convex polytope in dS3" },
    TableRow { row: 5, genus: "1", k_const: -1, epsilon: "+", realization: "parabolic polyhedron in H3" },
    TableRow { row: 6, genus: "1", k_const: 1, epsilon: "-", realization: "parabolic polyhedron in dS3" },
    TableRow { row: 7, genus: ">=2", k_const: -1, epsilon: "+", realization: "Fuchsian polyhedron in H3" },
    TableRow { row: 8, genus: ">=2", k_const: -1, epsilon: "-", realization: "Fuchsian polyhedron in AdS3" },
    TableRow { row: 9, genus: ">=2", k_const: 0, epsilon: "-", realization: "Fuchsian polyhedron in R21" },
    TableRow { row: 10, genus: ">=2", k_const: 1, epsilon: "-", realization: "Fuchsian polyhedron in dS3" },
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Classification {
    Row(TableRow),
    OutsideTable,
}

/// Looks up `(g, K, ε)` in the table. Combinations missing from it are
/// exactly those where the sign of `Σk = 2π(2-2g) - K·A` is forced against
/// `ε`.
pub fn classify_triple(genus: i64, k_const: i8, epsilon: Sign) -> Result<Classification> {
    let eps = match epsilon {
        Sign::Positive => "+",
        Sign::Negative => "-",
        Sign::Mixed | Sign::Empty => return Err(GeomError::MixedCurvature),
    };
    let g = match genus {
        0 => "0",
        1 => "1",
        g if g >= 2 => ">=2",
        _ => return Ok(Classification::OutsideTable),
    };
    Ok(TABLE
        .iter()
        .find(|r| r.genus == g && r.k_const == k_const && r.epsilon == eps)
        .map_or(Classification::OutsideTable, |r| Classification::Row(*r)))
}

pub fn classify(report: &ConeMetricReport) -> Result<Classification> {
    classify_triple(report.genus, report.k_const, report.epsilon)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::klein_lift;
    use crate::groups::{octagon_fuchsian_generators, orbit, parabolic_square_generators};
    use crate::hull::{convex_hull, lower_hull_fuchsian, orbit_hull};

    fn dv(c: &[f64]) -> DVector<f64> {
        DVector::from_column_slice(c)
    }

    fn r3(c: [f64; 3]) -> AmbientPoint {
        AmbientPoint::new(FormSpace::EUCLIDEAN, &c).unwrap()
    }

    #[test]
    fn unit_square() {
        let sq = [dv(&[0., 0., 0.]), dv(&[1., 0., 0.]), dv(&[1., 1., 0.]), dv(&[0., 1., 0.])];
        let g = polygon_geometry(FormSpace::EUCLIDEAN, &sq).unwrap();
        for (l, a) in g.lengths.iter().zip(&g.angles) {
            assert!((l - 1.0).abs() < 1e-15);
            assert!((a - PI / 2.0).abs() < 1e-15);
        }
        assert!((g.area - 1.0).abs() < 1e-15);
    }

    #[test]
    fn equiangular_hyperbolic_triangle() {
        let angle = PI / 6.0;
        // side from the angle cosine rule, circumradius from the side
        let cosh_a = (angle.cos() + angle.cos().powi(2)) / angle.sin().powi(2);
        let side = cosh_a.acosh();
        let r = ((side / 2.0).sinh() / (PI / 3.0).sin()).asinh();
        let t = r.tanh();
        let verts: Vec<DVector<f64>> = (0..3)
            .map(|k| {
                let a = 2.0 * PI * k as f64 / 3.0;
                klein_lift(&[t * a.cos(), t * a.sin(), 0.0]).unwrap().coords().clone()
            })
            .collect();
        let g = polygon_geometry(FormSpace::HYPERBOLIC, &verts).unwrap();
        for a in &g.angles {
            assert!((a - angle).abs() < 1e-12, "{a}");
        }
        assert!((g.area - PI / 2.0).abs() < 1e-12);
        for l in &g.lengths {
            assert!((l - side).abs() < 1e-12);
        }
    }

    #[test]
    fn flat_scaling() {
        let tri = [dv(&[0., 0., 0.]), dv(&[2., 0.3, 0.1]), dv(&[0.4, 1.5, -0.2])];
        let g = polygon_geometry(FormSpace::EUCLIDEAN, &tri).unwrap();
        let big: Vec<DVector<f64>> = tri.iter().map(|v| v * 3.0).collect();
        let h = polygon_geometry(FormSpace::EUCLIDEAN, &big).unwrap();
        assert!((h.area - 9.0 * g.area).abs() < 1e-12);
        for (a, b) in g.angles.iter().zip(&h.angles) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!((g.angles.iter().sum::<f64>() - PI).abs() < 1e-14);
    }

    #[test]
    fn cube_corners() {
        let mut pts = Vec::new();
        for i in 0..8 {
            let s = |b: usize| if i >> b & 1 == 1 { 1.0 } else { -1.0 };
            pts.push(r3([s(0), s(1), s(2)]));
        }
        let h = convex_hull(&pts).unwrap();
        let r = closed_metric(&h).unwrap();
        assert_eq!(r.cone_points.len(), 8);
        for c in &r.cone_points {
            assert!((c.theta - 1.5 * PI).abs() < 1e-14);
            assert!((c.k - PI / 2.0).abs() < 1e-14);
        }
        assert_eq!((r.genus, r.k_const, r.epsilon), (0, 0, Sign::Positive));
        assert!(r.gb_residual < 1e-12);
        assert_eq!(classify(&r).unwrap(), Classification::Row(TABLE[1]));
    }

    #[test]
    fn flat_hexagonal_vertex() {
        let mut verts = vec![dv(&[0., 0., 0.])];
        for k in 0..6 {
            let a = PI / 3.0 * k as f64;
            verts.push(dv(&[a.cos(), a.sin(), 0.0]));
        }
        let theta: f64 = (0..6)
            .map(|k| {
                let tri = [verts[0].clone(), verts[1 + k].clone(), verts[1 + (k + 1) % 6].clone()];
                polygon_geometry(FormSpace::EUCLIDEAN, &tri).unwrap().angles[0]
            })
            .sum();
        assert!((theta - 2.0 * PI).abs() < 1e-14);
    }

    #[test]
    fn doubled_square() {
        let pts: Vec<AmbientPoint> = [[0., 0., 0.], [1., 0., 0.], [1., 1., 0.], [0., 1., 0.]]
            .into_iter()
            .map(r3)
            .collect();
        let s = convex_hull(&pts).unwrap();
        let r = closed_metric(&s).unwrap();
        assert_eq!(r.genus, 0);
        assert_eq!(r.cone_points.len(), 4);
        assert!((r.total_curvature() - 4.0 * PI).abs() < 1e-12);
        assert!(r.gb_residual < 1e-12);
        for c in &r.cone_points {
            assert!((c.k - PI).abs() < 1e-12);
        }
    }

    #[test]
    fn fuchsian_quotient() {
        let spec = octagon_fuchsian_generators();
        let p = AmbientPoint::new(FormSpace::MINKOWSKI, &[0., 0., 1.]).unwrap();
        for depth in [1, 2, 3] {
            let orb = orbit(&spec, &p, depth).unwrap();
            let s = lower_hull_fuchsian(&orb, depth).unwrap();
            let r = quotient_metric(&s, &spec).unwrap();
            assert_eq!((r.genus, r.k_const, r.epsilon), (2, 0, Sign::Negative), "depth {depth}");
            assert_eq!(r.cone_points.len(), 1);
            assert!((r.cone_points[0].theta - 6.0 * PI).abs() < 1e-9);
            assert!((r.cone_points[0].k + 4.0 * PI).abs() < 1e-9);
            assert!(r.gb_residual < 1e-9);
            assert_eq!(r.face_areas.len(), 1);
            assert_eq!(classify(&r).unwrap(), Classification::Row(TABLE[8]));
        }
    }

    #[test]
    fn parabolic_quotient() {
        let spec = parabolic_square_generators();
        let p = klein_lift(&[0., 0., 0.]).unwrap();
        let orb = orbit(&spec, &p, 3).unwrap();
        let s = orbit_hull(&orb, 3).unwrap();
        let r = quotient_metric(&s, &spec).unwrap();
        assert_eq!((r.genus, r.k_const, r.epsilon), (1, -1, Sign::Positive));
        assert_eq!(r.cone_points.len(), 1);
        assert!((r.cone_points[0].k - r.total_area).abs() < 1e-9);
        assert!(r.gb_residual < 1e-9);
        assert_eq!(classify(&r).unwrap(), Classification::Row(TABLE[4]));
    }

    #[test]
    fn classification_rules() {
        let row = |g, k, e| classify_triple(g, k, e).unwrap();
        assert_eq!(row(0, 0, Sign::Positive), Classification::Row(TABLE[1]));
        assert_eq!(row(2, 0, Sign::Negative), Classification::Row(TABLE[8]));
        assert_eq!(row(5, 0, Sign::Negative), Classification::Row(TABLE[8]));
        assert_eq!(row(0, 0, Sign::Negative), Classification::OutsideTable);
        assert_eq!(row(1, 0, Sign::Positive), Classification::OutsideTable);
        assert_eq!(row(2, 1, Sign::Positive), Classification::OutsideTable);
        assert!(matches!(
            classify_triple(0, 0, Sign::Mixed),
            Err(GeomError::MixedCurvature)
        ));
        // every listed row is consistent with the sign of Σk
        for r in TABLE {
            let g = match r.genus {
                "0" => 0.0,
                "1" => 1.0,
                _ => 2.0,
            };
            let euler = 2.0 * PI * (2.0 - 2.0 * g);
            let s = if r.epsilon == "+" { 1.0 } else { -1.0 };
            // Σk = euler - K·A for some A > 0 must be able to take sign s
            let possible = euler * s > 0.0 || -f64::from(r.k_const) * s > 0.0;
            assert!(possible, "row {}", r.row);
        }
    }
}
