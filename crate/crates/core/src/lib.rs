//! Polyhedral surfaces in the Euclidean, spherical, hyperbolic, Minkowski and
//! de Sitter spaces, with their induced cone metrics.

pub mod dual;
pub mod error;
pub mod export;
pub mod forms;
pub mod groups;
pub mod hull;
pub mod metric;
pub mod rigidity;
pub mod sampling;
pub mod scene;
pub mod verify;

pub use error::{GeomError, Result};
pub use forms::{AmbientPoint, FormSpace, SpaceKind};
pub use groups::{GroupKind, GroupSpec, Isometry, OrbitPoint, Word};
pub use hull::PolyhedralSurface;
pub use metric::ConeMetricReport;
pub use scene::{run_scene, SceneConfig, SceneKind};
