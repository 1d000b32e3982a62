//! Quadratic forms, pseudo-sphere models and the maps between them.
//!
//! Coordinates follow one convention everywhere: in every Lorentzian ambient
//! the time-like coordinates come last. `R^{2,1}` has signature `(+,+,-)` and
//! its third coordinate is the height; `R^{3,1}` has signature `(+,+,+,-)`.
//! The hyperbolic sheet is the one with positive time-like coordinate.

use nalgebra::{DMatrix, DVector, Vector3};
use serde::{Serialize, Serializer};

use crate::error::{GeomError, Result};

/// Tolerance for incidence and membership predicates.
pub const EPS_GEOM: f64 = 1e-9;
/// Tolerance for reported metric quantities.
pub const EPS_REPORT: f64 = 1e-6;

/// Dilation of the upper half-space model applied before mapping it to the
/// hyperboloid. With this scale the horizontal plane at height 1 lands on the
/// ellipsoid with semi-axes `(1/2, 1/2, 1/4)` tangent to the unit sphere at
/// the north pole.
pub const HALFSPACE_SCALE: f64 = 1.732_050_807_568_877_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpaceKind {
    /// `R^3`, flat Riemannian.
    Euclidean,
    /// `S^3` in `R^4`.
    Sphere,
    /// `H^3`, upper sheet in `R^{3,1}`.
    Hyperbolic,
    /// `R^{2,1}`, flat Lorentzian.
    Minkowski,
    /// `dS^3` in `R^{3,1}`.
    DeSitter,
    /// `AdS^3` in `R^{2,2}`.
    AntiDeSitter,
    /// `H^2`, upper sheet in `R^{2,1}`.
    HyperbolicPlane,
}

/// A quadratic form together with the level set it singles out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FormSpace {
    kind: SpaceKind,
}

const SIG_E3: [f64; 3] = [1.0, 1.0, 1.0];
const SIG_E4: [f64; 4] = [1.0, 1.0, 1.0, 1.0];
const SIG_M3: [f64; 3] = [1.0, 1.0, -1.0];
const SIG_M4: [f64; 4] = [1.0, 1.0, 1.0, -1.0];
const SIG_22: [f64; 4] = [1.0, 1.0, -1.0, -1.0];

impl FormSpace {
    pub const EUCLIDEAN: Self = Self::of(SpaceKind::Euclidean);
    pub const SPHERE: Self = Self::of(SpaceKind::Sphere);
    pub const HYPERBOLIC: Self = Self::of(SpaceKind::Hyperbolic);
    pub const MINKOWSKI: Self = Self::of(SpaceKind::Minkowski);
    pub const DE_SITTER: Self = Self::of(SpaceKind::DeSitter);
    pub const ANTI_DE_SITTER: Self = Self::of(SpaceKind::AntiDeSitter);
    pub const HYPERBOLIC_PLANE: Self = Self::of(SpaceKind::HyperbolicPlane);

    pub const fn of(kind: SpaceKind) -> Self {
        Self { kind }
    }

    /// Looks up the supported space with the given signature and level.
    pub fn from_signature(signature: &[i8], model_constant: i8) -> Result<Self> {
        let kind = match (signature, model_constant) {
            ([1, 1, 1], 0) => SpaceKind::Euclidean,
            ([1, 1, 1, 1], 1) => SpaceKind::Sphere,
            ([1, 1, 1, -1], -1) => SpaceKind::Hyperbolic,
            ([1, 1, -1], 0) => SpaceKind::Minkowski,
            ([1, 1, 1, -1], 1) => SpaceKind::DeSitter,
            ([1, 1, -1, -1], -1) => SpaceKind::AntiDeSitter,
            ([1, 1, -1], -1) => SpaceKind::HyperbolicPlane,
            _ => {
                return Err(GeomError::Config(format!(
                    "unsupported signature {signature:?} with level {model_constant}"
                )))
            }
        };
        Ok(Self { kind })
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.signature().len()
    }

    pub fn signature(&self) -> &'static [f64] {
        match self.kind {
            SpaceKind::Euclidean => &SIG_E3,
            SpaceKind::Sphere => &SIG_E4,
            SpaceKind::Hyperbolic | SpaceKind::DeSitter => &SIG_M4,
            SpaceKind::Minkowski | SpaceKind::HyperbolicPlane => &SIG_M3,
            SpaceKind::AntiDeSitter => &SIG_22,
        }
    }

    /// Level of the pseudo-sphere; `0` means the flat ambient itself.
    pub fn model_constant(&self) -> i8 {
        match self.kind {
            SpaceKind::Euclidean | SpaceKind::Minkowski => 0,
            SpaceKind::Sphere | SpaceKind::DeSitter => 1,
            SpaceKind::Hyperbolic | SpaceKind::AntiDeSitter | SpaceKind::HyperbolicPlane => -1,
        }
    }

    /// Sectional curvature of the space form.
    pub fn curvature(&self) -> i8 {
        self.model_constant()
    }

    pub fn is_lorentzian(&self) -> bool {
        matches!(
            self.kind,
            SpaceKind::Minkowski | SpaceKind::DeSitter | SpaceKind::AntiDeSitter
        )
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            SpaceKind::Euclidean => "R3",
            SpaceKind::Sphere => "S3",
            SpaceKind::Hyperbolic => "H3",
            SpaceKind::Minkowski => "R21",
            SpaceKind::DeSitter => "dS3",
            SpaceKind::AntiDeSitter => "AdS3",
            SpaceKind::HyperbolicPlane => "H2",
        }
    }

    /// Diagonal Gram matrix of the form.
    pub fn gram(&self) -> DMatrix<f64> {
        DMatrix::from_diagonal(&DVector::from_column_slice(self.signature()))
    }

    /// Bilinear form without dimension checks.
    #[inline]
    pub fn form(&self, x: &[f64], y: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim());
        debug_assert_eq!(y.len(), self.dim());
        self.signature()
            .iter()
            .zip(x.iter().zip(y))
            .map(|(s, (a, b))| s * a * b)
            .sum()
    }
}

impl Serialize for FormSpace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl std::fmt::Display for FormSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// `Σ signature_i · x_i · y_i`.
pub fn form_eval(space: FormSpace, x: &[f64], y: &[f64]) -> Result<f64> {
    for v in [x, y] {
        if v.len() != space.dim() {
            return Err(GeomError::DimensionMismatch {
                expected: space.dim(),
                got: v.len(),
            });
        }
    }
    Ok(space.form(x, y))
}

/// A point of an ambient vector space, constrained to the model surface when
/// the space has a nonzero level.
#[derive(Debug, Clone, PartialEq)]
pub struct AmbientPoint {
    coords: DVector<f64>,
    space: FormSpace,
}

impl AmbientPoint {
    pub fn new(space: FormSpace, coords: &[f64]) -> Result<Self> {
        Self::from_vector(space, DVector::from_column_slice(coords))
    }

    pub fn from_vector(space: FormSpace, coords: DVector<f64>) -> Result<Self> {
        if coords.len() != space.dim() {
            return Err(GeomError::DimensionMismatch {
                expected: space.dim(),
                got: coords.len(),
            });
        }
        let p = Self { coords, space };
        let residual = p.membership_residual();
        if residual > EPS_GEOM * p.coords.norm_squared().max(1.0) {
            return Err(GeomError::OffSurface {
                space: space.name(),
                residual,
            });
        }
        if matches!(
            space.kind(),
            SpaceKind::Hyperbolic | SpaceKind::HyperbolicPlane
        ) && p.coords[space.dim() - 1] <= 0.0
        {
            return Err(GeomError::LowerSheet);
        }
        Ok(p)
    }

    pub(crate) fn new_unchecked(space: FormSpace, coords: DVector<f64>) -> Self {
        debug_assert_eq!(coords.len(), space.dim());
        Self { coords, space }
    }

    pub fn coords(&self) -> &DVector<f64> {
        &self.coords
    }

    pub fn as_slice(&self) -> &[f64] {
        self.coords.as_slice()
    }

    pub fn space(&self) -> FormSpace {
        self.space
    }

    pub fn form_value(&self) -> f64 {
        self.space.form(self.as_slice(), self.as_slice())
    }

    /// `|<x,x> - level|`, or zero for flat ambients.
    pub fn membership_residual(&self) -> f64 {
        if self.space.model_constant() == 0 {
            0.0
        } else {
            (self.form_value() - f64::from(self.space.model_constant())).abs()
        }
    }

    /// Coordinates in the affine chart used for hulls: the coordinates
    /// themselves in 3-dimensional ambients, central projection onto the
    /// hyperplane `x_4 = 1` otherwise.
    pub fn affine_chart(&self) -> Result<Vector3<f64>> {
        let c = &self.coords;
        match self.space.dim() {
            3 => Ok(Vector3::new(c[0], c[1], c[2])),
            _ => {
                let w = c[3];
                if w.abs() <= EPS_GEOM * c.norm() {
                    return Err(GeomError::Unsupported {
                        op: "affine_chart (point at infinity)",
                        space: self.space.name(),
                    });
                }
                Ok(Vector3::new(c[0] / w, c[1] / w, c[2] / w))
            }
        }
    }
}

/// Length of the geodesic segment between two points of the same space.
///
/// Small distances are computed from the chord `b - a` rather than from an
/// inverse cosine, which keeps nearby points accurate to machine precision.
pub fn geodesic_distance(a: &AmbientPoint, b: &AmbientPoint) -> Result<f64> {
    let space = a.space();
    if b.space() != space {
        return Err(GeomError::Config(format!(
            "points live in different spaces ({} and {})",
            space,
            b.space()
        )));
    }
    let delta = b.coords() - a.coords();
    let chord2 = space.form(delta.as_slice(), delta.as_slice());
    match space.kind() {
        SpaceKind::Hyperbolic | SpaceKind::HyperbolicPlane => {
            // <b-a,b-a> = 2(cosh d - 1) = 4 sinh^2(d/2)
            Ok(2.0 * (chord2.max(0.0).sqrt() / 2.0).asinh())
        }
        SpaceKind::Sphere => Ok(2.0 * (chord2.max(0.0).sqrt() / 2.0).min(1.0).asin()),
        SpaceKind::Euclidean => Ok(chord2.sqrt()),
        SpaceKind::Minkowski => {
            let scale = delta.norm_squared();
            if scale == 0.0 {
                Ok(0.0)
            } else if chord2 > EPS_GEOM * scale {
                Ok(chord2.sqrt())
            } else {
                Err(GeomError::NotSpaceLike(chord2))
            }
        }
        SpaceKind::DeSitter => {
            // <b-a,b-a> = 2 - 2<a,b>; space-like pairs have |<a,b>| <= 1,
            // i.e. chord2 in [0, 4].
            let ab = space.form(a.as_slice(), b.as_slice());
            if delta.norm_squared() == 0.0 {
                Ok(0.0)
            } else if chord2 < -EPS_GEOM || ab < -1.0 - EPS_GEOM {
                Err(GeomError::NotSpaceLike(chord2))
            } else {
                Ok(2.0 * (chord2.max(0.0).sqrt() / 2.0).min(1.0).asin())
            }
        }
        SpaceKind::AntiDeSitter => Err(GeomError::Unsupported {
            op: "geodesic_distance",
            space: space.name(),
        }),
    }
}

fn check_in_ball(x: &[f64]) -> Result<f64> {
    let n = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if n >= 1.0 {
        Err(GeomError::OutsideBall { norm: n })
    } else {
        Ok(n)
    }
}

/// Hilbert distance of the open unit ball: half the log of the cross-ratio
/// `[a,x,y,b] = (|ay|·|bx|) / (|ax|·|by|)`, where `a` and `b` are the ends of
/// the chord through `x` and `y`, `a` on the side of `x`.
pub fn hilbert_distance(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(GeomError::DimensionMismatch {
            expected: x.len(),
            got: y.len(),
        });
    }
    let nx = check_in_ball(x)?;
    check_in_ball(y)?;
    let d: Vec<f64> = y.iter().zip(x).map(|(a, b)| a - b).collect();
    let len = d.iter().map(|v| v * v).sum::<f64>().sqrt();
    if len == 0.0 {
        return Ok(0.0);
    }
    // |x + t u|^2 = 1 with |u| = 1
    let b = x.iter().zip(&d).map(|(p, q)| p * q / len).sum::<f64>();
    let c = (1.0 - nx) * (1.0 + nx);
    let disc = (b * b + c).sqrt();
    let t_a = -b - disc;
    let t_b = -b + disc;
    let ax = -t_a;
    let ay = len - t_a;
    let bx = t_b;
    let by = t_b - len;
    Ok(0.5 * ((ay / ax).ln() + (bx / by).ln()))
}

/// Central projection of a hyperboloid point to the Klein ball.
pub fn klein_project(p: &AmbientPoint) -> Result<DVector<f64>> {
    match p.space().kind() {
        SpaceKind::Hyperbolic | SpaceKind::HyperbolicPlane => {
            let n = p.space().dim();
            let w = p.coords()[n - 1];
            if w <= 0.0 {
                return Err(GeomError::LowerSheet);
            }
            Ok(p.coords().rows(0, n - 1) / w)
        }
        _ => Err(GeomError::Unsupported {
            op: "klein_project",
            space: p.space().name(),
        }),
    }
}

/// Inverse of [`klein_project`]: `(x, 1) / sqrt(1 - |x|^2)`.
pub fn klein_lift(x: &[f64]) -> Result<AmbientPoint> {
    let space = match x.len() {
        2 => FormSpace::HYPERBOLIC_PLANE,
        3 => FormSpace::HYPERBOLIC,
        n => {
            return Err(GeomError::DimensionMismatch {
                expected: 3,
                got: n,
            })
        }
    };
    let n = check_in_ball(x)?;
    let s = 1.0 / ((1.0 - n) * (1.0 + n)).sqrt();
    let mut coords = DVector::from_element(x.len() + 1, s);
    for (i, v) in x.iter().enumerate() {
        coords[i] = v * s;
    }
    Ok(AmbientPoint::new_unchecked(space, coords))
}

/// Pole of an affine plane `n · x = d` (with `|n| = 1`) with respect to the
/// unit sphere, as a unit vector of `R^{3,1}`: on the hyperboloid when the
/// plane misses the closed ball, on de Sitter space when it cuts the ball.
pub fn plane_pole(normal: &Vector3<f64>, offset: f64) -> Result<AmbientPoint> {
    let n = normal.normalize();
    let d = offset / normal.norm();
    if d.abs() <= EPS_GEOM {
        return Err(GeomError::PoleAtInfinity);
    }
    let q = (1.0 - d) * (1.0 + d);
    if q.abs() <= EPS_GEOM {
        return Err(GeomError::IdealPole);
    }
    let s = d.signum() / q.abs().sqrt();
    let coords = DVector::from_column_slice(&[n.x * s, n.y * s, n.z * s, d * s]);
    let space = if q > 0.0 {
        FormSpace::DE_SITTER
    } else {
        FormSpace::HYPERBOLIC
    };
    Ok(AmbientPoint::new_unchecked(space, coords))
}

/// Upper half-space point `(u, v, h)` to the hyperboloid of `R^{3,1}`.
pub fn halfspace_to_hyperboloid(q: [f64; 3]) -> Result<AmbientPoint> {
    let [u, v, h] = q.map(|c| c * HALFSPACE_SCALE);
    if !(h > 0.0) {
        return Err(GeomError::NonPositiveHeight(q[2]));
    }
    let r2 = u * u + v * v + h * h;
    let coords = DVector::from_column_slice(&[
        u / h,
        v / h,
        (r2 - 1.0) / (2.0 * h),
        (r2 + 1.0) / (2.0 * h),
    ]);
    Ok(AmbientPoint::new_unchecked(FormSpace::HYPERBOLIC, coords))
}

/// Upper half-space model to the Klein ball.
pub fn halfspace_to_klein(q: [f64; 3]) -> Result<Vector3<f64>> {
    halfspace_to_hyperboloid(q)?.affine_chart()
}

/// An ellipsoid of revolution about the vertical axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Ellipsoid {
    pub center: [f64; 3],
    pub semi_axes: [f64; 3],
}

impl Ellipsoid {
    /// `Σ ((x_i - c_i) / a_i)^2 - 1`.
    pub fn residual(&self, x: &Vector3<f64>) -> f64 {
        (0..3)
            .map(|i| ((x[i] - self.center[i]) / self.semi_axes[i]).powi(2))
            .sum::<f64>()
            - 1.0
    }
}

/// Klein image of the horosphere `{h = height}` of the half-space model.
///
/// Every such image is tangent to the unit sphere at `(0, 0, 1)`, and its
/// vertical semi-axis is the square of the horizontal one.
pub fn horosphere_image(height: f64) -> Result<Ellipsoid> {
    if !(height > 0.0) {
        return Err(GeomError::NonPositiveHeight(height));
    }
    let c = 1.0 / (HALFSPACE_SCALE * height);
    let denom = 1.0 + c * c;
    let a = c / denom.sqrt();
    let b = c * c / denom;
    Ok(Ellipsoid {
        center: [0.0, 0.0, 1.0 / denom],
        semi_axes: [a, a, b],
    })
}

/// Tangency point of every horosphere image with the unit sphere.
pub const HOROSPHERE_TANGENCY: [f64; 3] = [0.0, 0.0, 1.0];

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn form_eval_examples() {
        let h2 = FormSpace::MINKOWSKI;
        assert_eq!(form_eval(h2, &[0., 0., 1.], &[0., 0., 1.]).unwrap(), -1.0);
        let m4 = FormSpace::HYPERBOLIC;
        assert_eq!(
            form_eval(m4, &[1., 0., 0., 0.], &[0., 0., 0., 1.]).unwrap(),
            0.0
        );
        assert_eq!(
            form_eval(FormSpace::EUCLIDEAN, &[1., 2., 2.], &[1., 2., 2.]).unwrap(),
            9.0
        );
        assert!(matches!(
            form_eval(h2, &[1., 0.], &[0., 0., 1.]),
            Err(GeomError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn signature_lookup() {
        assert_eq!(
            FormSpace::from_signature(&[1, 1, -1, -1], -1).unwrap(),
            FormSpace::ANTI_DE_SITTER
        );
        assert_eq!(
            FormSpace::from_signature(&[1, 1, 1, -1], 1).unwrap(),
            FormSpace::DE_SITTER
        );
        assert!(FormSpace::from_signature(&[1, -1, 1], 0).is_err());
        for s in [
            FormSpace::EUCLIDEAN,
            FormSpace::SPHERE,
            FormSpace::HYPERBOLIC,
            FormSpace::MINKOWSKI,
            FormSpace::DE_SITTER,
            FormSpace::ANTI_DE_SITTER,
        ] {
            assert_eq!(s.signature().len(), s.dim());
        }
    }

    #[test]
    fn membership_is_enforced() {
        assert!(AmbientPoint::new(FormSpace::HYPERBOLIC_PLANE, &[0., 0., 1.]).is_ok());
        assert!(matches!(
            AmbientPoint::new(FormSpace::HYPERBOLIC_PLANE, &[0., 0., -1.]),
            Err(GeomError::LowerSheet)
        ));
        assert!(matches!(
            AmbientPoint::new(FormSpace::HYPERBOLIC_PLANE, &[0., 0., 2.]),
            Err(GeomError::OffSurface { .. })
        ));
        assert!(AmbientPoint::new(FormSpace::DE_SITTER, &[1., 0., 0., 0.]).is_ok());
    }

    #[test]
    fn hyperbolic_distance_examples() {
        let h2 = FormSpace::HYPERBOLIC_PLANE;
        let a = AmbientPoint::new(h2, &[0., 0., 1.]).unwrap();
        assert_eq!(geodesic_distance(&a, &a).unwrap(), 0.0);
        let b = AmbientPoint::new(h2, &[0., 1f64.sinh(), 1f64.cosh()]).unwrap();
        assert!((geodesic_distance(&a, &b).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn sphere_and_de_sitter_distances() {
        let s = FormSpace::SPHERE;
        let a = AmbientPoint::new(s, &[1., 0., 0., 0.]).unwrap();
        let b = AmbientPoint::new(s, &[0., 1., 0., 0.]).unwrap();
        assert!((geodesic_distance(&a, &b).unwrap() - PI / 2.0).abs() < 1e-14);

        let ds = FormSpace::DE_SITTER;
        let a = AmbientPoint::new(ds, &[1., 0., 0., 0.]).unwrap();
        let b = AmbientPoint::new(ds, &[0.6f64.cos(), 0.6f64.sin(), 0., 0.]).unwrap();
        assert!((geodesic_distance(&a, &b).unwrap() - 0.6).abs() < 1e-14);
        // <a,b> = cosh 1 > 1: time-like separation along a boost
        let c = AmbientPoint::new(ds, &[1f64.cosh(), 0., 0., 1f64.sinh()]).unwrap();
        assert!(matches!(
            geodesic_distance(&a, &c),
            Err(GeomError::NotSpaceLike(_))
        ));
    }

    #[test]
    fn minkowski_separation() {
        let m = FormSpace::MINKOWSKI;
        let a = AmbientPoint::new(m, &[0., 0., 0.]).unwrap();
        let b = AmbientPoint::new(m, &[3., 4., 0.]).unwrap();
        assert_eq!(geodesic_distance(&a, &b).unwrap(), 5.0);
        let c = AmbientPoint::new(m, &[1., 0., 1.]).unwrap();
        assert!(geodesic_distance(&a, &c).is_err());
        let d = AmbientPoint::new(m, &[0., 0., 2.]).unwrap();
        assert!(geodesic_distance(&a, &d).is_err());
        let ads = AmbientPoint::new(FormSpace::ANTI_DE_SITTER, &[0., 0., 1., 0.]).unwrap();
        assert!(matches!(
            geodesic_distance(&ads, &ads),
            Err(GeomError::Unsupported { .. })
        ));
    }

    #[test]
    fn klein_projection_examples() {
        let h2 = FormSpace::HYPERBOLIC_PLANE;
        let p = AmbientPoint::new(h2, &[0., 0., 1.]).unwrap();
        assert_eq!(klein_project(&p).unwrap().as_slice(), &[0.0, 0.0]);
        let q = AmbientPoint::new(h2, &[0., 1f64.sinh(), 1f64.cosh()]).unwrap();
        let k = klein_project(&q).unwrap();
        assert!(k[0].abs() < 1e-15 && (k[1] - 1f64.tanh()).abs() < 1e-15);
        let back = klein_lift(k.as_slice()).unwrap();
        assert!((back.coords() - q.coords()).norm() < 1e-12);
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(hilbert_distance(&[0.3, 0., 0.], &[0.3, 0., 0.]).unwrap(), 0.0);
        let d = hilbert_distance(&[0., 0., 0.], &[1f64.tanh(), 0., 0.]).unwrap();
        assert!((d - 1.0).abs() < 1e-12);
        assert!(matches!(
            hilbert_distance(&[1.0, 0., 0.], &[0., 0., 0.]),
            Err(GeomError::OutsideBall { .. })
        ));
    }

    #[test]
    fn halfspace_examples() {
        // the height-1 plane lands on the ellipsoid of semi-axes (1/2,1/2,1/4)
        let e = horosphere_image(1.0).unwrap();
        assert!((e.semi_axes[0] - 0.5).abs() < 1e-15);
        assert!((e.semi_axes[2] - 0.25).abs() < 1e-15);
        assert!((e.center[2] - 0.75).abs() < 1e-15);
        let k = halfspace_to_klein([0., 0., 1.]).unwrap();
        assert!((k - Vector3::new(0., 0., 0.5)).norm() < 1e-15);
        assert!(e.residual(&k).abs() < 1e-12);
        // Klein origin sits on the horosphere through the origin
        let h0 = 1.0 / HALFSPACE_SCALE;
        assert!(halfspace_to_klein([0., 0., h0]).unwrap().norm() < 1e-15);
        assert!(halfspace_to_klein([0., 0., 0.]).is_err());
    }

    #[test]
    fn pole_of_planes() {
        let n = Vector3::new(0., 0., 1.);
        let p = plane_pole(&n, 0.5).unwrap();
        assert_eq!(p.space(), FormSpace::DE_SITTER);
        assert!((p.form_value() - 1.0).abs() < 1e-15);
        let k = p.affine_chart().unwrap();
        assert!((k - Vector3::new(0., 0., 2.)).norm() < 1e-14);
        let q = plane_pole(&n, 2.0).unwrap();
        assert_eq!(q.space(), FormSpace::HYPERBOLIC);
        assert!((q.affine_chart().unwrap() - Vector3::new(0., 0., 0.5)).norm() < 1e-14);
        assert!(matches!(plane_pole(&n, 0.0), Err(GeomError::PoleAtInfinity)));
        assert!(matches!(plane_pole(&n, 1.0), Err(GeomError::IdealPole)));
    }
}
