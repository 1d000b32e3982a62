//! Seeded random inputs: points in balls, convex polytopes, Klein polytopes.

use std::f64::consts::PI;

use nalgebra::Vector3;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dual::{hyperbolic_dihedral_angles, klein_polytope};
use crate::error::{GeomError, Result};
use crate::forms::{AmbientPoint, FormSpace};
use crate::hull::{convex_hull, PolyhedralSurface};

pub const MAX_ATTEMPTS: usize = 1000;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform point in the open ball of radius `r` by rejection.
pub fn point_in_ball<R: Rng>(rng: &mut R, r: f64) -> Vector3<f64> {
    loop {
        let v = Vector3::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        );
        if v.norm_squared() < 1.0 {
            return v * r;
        }
    }
}

/// Closed convex polytope in `R³` with exactly `n` vertices, sampled near
/// the unit sphere so that every point is extreme.
pub fn random_convex_polytope<R: Rng>(rng: &mut R, n: usize) -> Result<PolyhedralSurface> {
    for _ in 0..MAX_ATTEMPTS {
        let pts: Vec<AmbientPoint> = (0..n)
            .map(|_| {
                let d = point_in_ball(rng, 1.0);
                let d = if d.norm() < 1e-3 { Vector3::z() } else { d.normalize() };
                let r = rng.random_range(0.85..1.0);
                AmbientPoint::new(FormSpace::EUCLIDEAN, (d * r).as_slice())
            })
            .collect::<Result<_>>()?;
        let Ok(h) = convex_hull(&pts) else { continue };
        if h.vertices.len() == n && h.is_closed() {
            return Ok(h);
        }
    }
    Err(GeomError::SamplingExhausted(MAX_ATTEMPTS))
}

/// Klein-model polytope from `n` points in the ball of radius `radius`,
/// with the origin at least `margin` inside every face plane and every
/// dihedral angle below `π - 1e-3`.
pub fn random_klein_polytope<R: Rng>(
    rng: &mut R,
    n: usize,
    radius: f64,
    margin: f64,
) -> Result<PolyhedralSurface> {
    'attempt: for _ in 0..MAX_ATTEMPTS {
        let pts: Vec<Vector3<f64>> = (0..n).map(|_| point_in_ball(rng, radius)).collect();
        let Ok(p) = klein_polytope(&pts) else { continue };
        if !p.is_closed() {
            continue;
        }
        for f in 0..p.faces.len() {
            let (_, d) = p.face_plane(f)?;
            if d < margin {
                continue 'attempt;
            }
        }
        if hyperbolic_dihedral_angles(&p)?.iter().any(|&a| a >= PI - 1e-3) {
            continue;
        }
        return Ok(p);
    }
    Err(GeomError::SamplingExhausted(MAX_ATTEMPTS))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_streams_repeat() {
        let a: Vec<Vector3<f64>> = (0..5).map(|_| point_in_ball(&mut rng(7), 0.8)).collect();
        let b: Vec<Vector3<f64>> = (0..5).map(|_| point_in_ball(&mut rng(7), 0.8)).collect();
        assert_eq!(a, b);
        assert!(a.iter().all(|v| v.norm() < 0.8));
    }

    #[test]
    fn polytopes_have_requested_vertices() {
        let mut r = rng(1);
        let p = random_convex_polytope(&mut r, 10).unwrap();
        assert_eq!(p.vertices.len(), 10);
        assert_eq!(p.euler_characteristic(), 2);
        let k = random_klein_polytope(&mut r, 10, 0.8, 0.05).unwrap();
        assert!(k.is_closed());
        for f in 0..k.faces.len() {
            assert!(k.face_plane(f).unwrap().1 >= 0.05);
        }
    }
}
