//! The acceptance suite behind `spaceform-poly verify`.

use std::f64::consts::PI;

use nalgebra::Vector3;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::dual::{dual_edge_check, dual_metric, polar_dual, truncate_and_classify, VertexClass};
use crate::error::{GeomError, Result};
use crate::forms::{
    geodesic_distance, halfspace_to_klein, hilbert_distance, horosphere_image, klein_lift, AmbientPoint,
    FormSpace,
};
use crate::groups::{octagon_fuchsian_generators, Letter, Word};
use crate::hull::convex_hull;
use crate::metric::{closed_metric, face_geometry, Sign};
use crate::rigidity::{deformation_space, projective_invariance_check, MapKind};
use crate::sampling::{point_in_ball, random_klein_polytope, rng};
use crate::scene::{
    generalized_preset, rigidity_surfaces, run_scene, Assertion, SceneConfig, SceneKind, PROJECTIVE_TRIALS,
    RIGIDITY_RANDOM_HULLS,
};

pub const CRITERIA: usize = 10;

/// Bounds used by the suite. Any field may be overridden from a JSON file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub cone_angle: f64,
    pub curvature: f64,
    pub height: f64,
    pub square_spread: f64,
    pub area: f64,
    pub ellipsoid: f64,
    pub hilbert: f64,
    pub involution: f64,
    pub dual_edge: f64,
    pub gb_flat: f64,
    pub gb_curved: f64,
    pub doubled_square: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            cone_angle: 1e-6,
            curvature: 1e-6,
            height: 1e-9,
            square_spread: 1e-9,
            area: 1e-6,
            ellipsoid: 1e-9,
            hilbert: 1e-9,
            involution: 1e-9,
            dual_edge: 1e-9,
            gb_flat: 1e-8,
            gb_curved: 1e-6,
            doubled_square: 1e-12,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: String,
    pub passed: bool,
    pub checks: Vec<Assertion>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifySummary {
    pub seed: u64,
    pub tolerances: Tolerances,
    pub criteria: Vec<CriterionResult>,
    pub passed: bool,
}

impl VerifySummary {
    /// One `PASS`/`FAIL` line per criterion.
    pub fn table(&self) -> String {
        let mut out = String::new();
        for c in &self.criteria {
            let status = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{status} {:>2} {}\n", c.id, c.name));
            for a in c.checks.iter().filter(|a| !a.pass) {
                out.push_str(&format!("        {}: measured {:e}, bound {:e}\n", a.name, a.measured, a.bound));
            }
            if let Some(e) = &c.error {
                out.push_str(&format!("        error: {e}\n"));
            }
        }
        out
    }
}

/// Gauss-Bonnet residuals gathered from every surface built so far.
#[derive(Debug, Default)]
struct Residuals {
    flat: Vec<(String, f64)>,
    curved: Vec<(String, f64)>,
}

pub fn criterion_name(id: usize) -> &'static str {
    match id {
        1 => "genus-2 cone angle and curvature",
        2 => "orbit growth",
        3 => "parabolic torus of squares",
        4 => "horosphere image is the ellipsoid",
        5 => "Hilbert distance matches hyperboloid distance",
        6 => "polar duality",
        7 => "generalized polyhedra classification",
        8 => "Gauss-Bonnet on every surface",
        9 => "infinitesimal rigidity and projective invariance",
        10 => "determinism",
        _ => "unknown",
    }
}

/// Runs criterion `id` alone. Criterion 8 rebuilds every surface it checks,
/// and criterion 10 runs the whole suite twice.
pub fn run_criterion(id: usize, seed: u64, tol: &Tolerances) -> CriterionResult {
    match id {
        8 => {
            let mut res = Residuals::default();
            for k in [1, 3, 6, 9] {
                let _ = evaluate(k, seed, tol, &mut res);
            }
            evaluate(8, seed, tol, &mut res)
        }
        10 => determinism(seed, tol),
        _ => evaluate(id, seed, tol, &mut Residuals::default()),
    }
}

/// Runs the whole suite.
pub fn verify(seed: u64, tol: &Tolerances) -> VerifySummary {
    let mut criteria = first_nine(seed, tol);
    criteria.push(determinism(seed, tol));
    VerifySummary {
        seed,
        tolerances: tol.clone(),
        passed: criteria.iter().all(|c| c.passed),
        criteria,
    }
}

fn first_nine(seed: u64, tol: &Tolerances) -> Vec<CriterionResult> {
    let mut res = Residuals::default();
    (1..=9).map(|id| evaluate(id, seed, tol, &mut res)).collect()
}

fn determinism(seed: u64, tol: &Tolerances) -> CriterionResult {
    let run = || crate::export::to_json(&first_nine(seed, tol));
    let checks = match (run(), run()) {
        (Ok(a), Ok(b)) => vec![Assertion::equals(
            "identical report bytes",
            f64::from(u8::from(a == b)),
            1.0,
        )],
        (Err(e), _) | (_, Err(e)) => return finish(10, Err(e)),
    };
    finish(10, Ok(checks))
}

fn evaluate(id: usize, seed: u64, tol: &Tolerances, res: &mut Residuals) -> CriterionResult {
    let checks = match id {
        1 => fuchsian(tol, res),
        2 => orbit_growth(tol),
        3 => parabolic(tol, res),
        4 => horosphere(seed, tol),
        5 => hilbert(seed, tol),
        6 => duality(seed, tol, res),
        7 => generalized(),
        8 => gauss_bonnet(tol, res),
        9 => rigidity(seed, res),
        _ => Err(GeomError::Config(format!("no criterion {id}"))),
    };
    finish(id, checks)
}

fn finish(id: usize, checks: Result<Vec<Assertion>>) -> CriterionResult {
    let (checks, error) = match checks {
        Ok(c) => (c, None),
        Err(e) => (Vec::new(), Some(e.to_string())),
    };
    CriterionResult {
        id,
        name: criterion_name(id).into(),
        passed: error.is_none() && !checks.is_empty() && checks.iter().all(|a| a.pass),
        checks,
        error,
    }
}

fn scene_metric(kind: SceneKind) -> Result<(crate::scene::SceneReport, crate::metric::ConeMetricReport)> {
    let out = run_scene(&SceneConfig::new(kind))?;
    let report = out.report;
    match report.metric.clone() {
        Some(m) => Ok((report, m)),
        None => Err(GeomError::Config(format!("scene {kind} failed: {:?}", report.failures))),
    }
}

fn fuchsian(tol: &Tolerances, res: &mut Residuals) -> Result<Vec<Assertion>> {
    let (report, m) = scene_metric(SceneKind::FuchsianGenus2)?;
    res.flat.push(("fuchsian-genus2".into(), m.gb_residual));
    let theta = m.cone_points.first().map_or(f64::NAN, |c| c.theta);
    let k = m.total_curvature();
    let violations = report.equivariance.map_or(0, |e| e.violations.len());
    Ok(vec![
        Assertion::equals("cone points", m.cone_points.len() as f64, 1.0),
        Assertion::at_most("|θ - 6π|", (theta - 6.0 * PI).abs(), tol.cone_angle),
        Assertion::at_most("|k + 4π|", (k + 4.0 * PI).abs(), tol.curvature),
        Assertion::at_most("Gauss-Bonnet residual", m.gb_residual, tol.gb_curved),
        Assertion::equals("genus", m.genus as f64, 2.0),
        Assertion::equals("equivariance violations", violations as f64, 0.0),
    ])
}

/// All reduced words of length `n` in the letters of `spec`.
fn reduced_words(letters: &[Letter], n: usize) -> Vec<Word> {
    let mut words = vec![Word::empty()];
    for _ in 0..n {
        words = words
            .iter()
            .flat_map(|w| {
                letters.iter().filter_map(move |&l| {
                    let next = w.prepend(l);
                    next.is_reduced().then_some(next)
                })
            })
            .collect();
    }
    words
}

fn orbit_growth(tol: &Tolerances) -> Result<Vec<Assertion>> {
    let spec = octagon_fuchsian_generators();
    let base = nalgebra::DVector::from_column_slice(&[0.0, 0.0, 1.0]);
    let height = |w: &Word| spec.word_isometry(w).map(|g| g.apply_vec(&base)[2]);
    let max_height = |n: usize| -> Result<f64> {
        reduced_words(&spec.letters(), n)
            .iter()
            .map(height)
            .try_fold(f64::NEG_INFINITY, |m, h| h.map(|h| m.max(h)))
    };
    let h1 = height(&Word::parse("a")?)?;
    let h2 = max_height(2)?;
    let h3 = max_height(3)?;
    let closed = 5.0 + 4.0 * 2f64.sqrt();
    let in_range = |name: &str, h: f64, lo: f64, hi: f64| {
        let l = h.log10();
        let a = Assertion::at_most(name, (l - (lo + hi) / 2.0).abs(), (hi - lo) / 2.0);
        Assertion { measured: l, ..a }
    };
    let mut checks = vec![Assertion::at_most("|height(a·p) - (5+4√2)|", (h1 - closed).abs(), tol.height)];
    checks.push(in_range("log10 max height at length 2 within [1.5, 2.5]", h2, 1.5, 2.5));
    checks.push(in_range("log10 max height at length 3 within [2.5, 3.5]", h3, 2.5, 3.5));
    Ok(checks)
}

fn parabolic(tol: &Tolerances, res: &mut Residuals) -> Result<Vec<Assertion>> {
    let out = run_scene(&SceneConfig::new(SceneKind::ParabolicTorus))?;
    let surface = out
        .surface
        .ok_or_else(|| GeomError::Config("parabolic scene built no surface".into()))?;
    let m = out
        .report
        .metric
        .ok_or_else(|| GeomError::Config(format!("{:?}", out.report.failures)))?;
    res.curved.push(("parabolic-torus".into(), m.gb_residual));
    let mut lengths = Vec::new();
    let mut non_squares = 0;
    let mut stable = 0;
    for f in (0..surface.faces.len()).filter(|&f| surface.stable[f]) {
        let g = face_geometry(&surface, f)?;
        stable += 1;
        if g.lengths.len() != 4 {
            non_squares += 1;
        }
        lengths.extend(g.lengths);
    }
    let spread = lengths.iter().copied().fold(f64::NEG_INFINITY, f64::max)
        - lengths.iter().copied().fold(f64::INFINITY, f64::min);
    let k = m.cone_points.first().map_or(f64::NAN, |c| c.k);
    Ok(vec![
        Assertion::above("stable faces", stable as f64, 0.0),
        Assertion::equals("stable faces that are not quadrilaterals", non_squares as f64, 0.0),
        Assertion::at_most("edge length spread", spread, tol.square_spread),
        Assertion::equals("genus", m.genus as f64, 1.0),
        Assertion::equals("K", f64::from(m.k_const), -1.0),
        Assertion::equals("cone points", m.cone_points.len() as f64, 1.0),
        Assertion::above("k", k, 0.0),
        Assertion::at_most("|k - area|", (k - m.total_area).abs(), tol.area),
    ])
}

fn horosphere(seed: u64, tol: &Tolerances) -> Result<Vec<Assertion>> {
    let e = horosphere_image(1.0)?;
    let axes = [0.5, 0.5, 0.25];
    let axis_err = (0..3).map(|i| (e.semi_axes[i] - axes[i]).abs()).fold(0.0, f64::max);
    let mut worst: f64 = 0.0;
    for x in horosphere_samples(seed, 100)? {
        let residual = (0..3).map(|i| ((x[i] - e.center[i]) / axes[i]).powi(2)).sum::<f64>() - 1.0;
        worst = worst.max(residual.abs());
    }
    Ok(vec![
        Assertion::at_most("semi-axes minus (1/2, 1/2, 1/4)", axis_err, tol.ellipsoid),
        Assertion::at_most("worst ellipsoid residual over 100 points", worst, tol.ellipsoid),
    ])
}

fn hilbert(seed: u64, tol: &Tolerances) -> Result<Vec<Assertion>> {
    let mut r = rng(seed.wrapping_add(5));
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let x = point_in_ball(&mut r, 0.9);
        let y = point_in_ball(&mut r, 0.9);
        let h = hilbert_distance(x.as_slice(), y.as_slice())?;
        let d = geodesic_distance(&klein_lift(x.as_slice())?, &klein_lift(y.as_slice())?)?;
        worst = worst.max((h - d).abs());
    }
    Ok(vec![Assertion::at_most("worst |Hilbert - arcosh| over 1000 pairs", worst, tol.hilbert)])
}

fn duality(seed: u64, tol: &Tolerances, res: &mut Residuals) -> Result<Vec<Assertion>> {
    let mut r = rng(seed.wrapping_add(6));
    let (mut involution, mut edge, mut gb): (f64, f64, f64) = (0.0, 0.0, 0.0);
    let mut min_theta = f64::INFINITY;
    let (mut bad_incidence, mut bad_triple) = (0, 0);
    for i in 0..50 {
        let p = random_klein_polytope(&mut r, 10, 0.8, 0.05)?;
        let d = polar_dual(&p)?;
        let dd = polar_dual(&d)?;
        if (d.vertices.len(), d.faces.len(), d.edges.len()) != (p.faces.len(), p.vertices.len(), p.edges.len()) {
            bad_incidence += 1;
        }
        for (a, b) in p.vertices.iter().zip(&dd.vertices) {
            involution = involution.max((a.coords() - b.coords()).amax());
        }
        for (len, expected) in dual_edge_check(&p, &d)? {
            edge = edge.max((len - expected).abs());
        }
        let m = dual_metric(&d)?;
        gb = gb.max(m.gb_residual);
        res.curved.push((format!("polar-dual-{i}"), m.gb_residual));
        for c in &m.cone_points {
            min_theta = min_theta.min(c.theta);
        }
        if (m.k_const, m.genus, m.epsilon) != (1, 0, Sign::Negative) {
            bad_triple += 1;
        }
    }
    Ok(vec![
        Assertion::equals("duals whose incidence is not transposed", bad_incidence as f64, 0.0),
        Assertion::at_most("worst |(P*)* - P|", involution, tol.involution),
        Assertion::at_most("worst |dual edge - (π - dihedral)|", edge, tol.dual_edge),
        Assertion::above("smallest dual cone angle minus 2π", min_theta - 2.0 * PI, 0.0),
        Assertion::at_most("worst Gauss-Bonnet residual", gb, tol.gb_curved),
        Assertion::equals("duals not of type (K=1, g=0, ε=-)", bad_triple as f64, 0.0),
    ])
}

fn generalized() -> Result<Vec<Assertion>> {
    let mut checks = Vec::new();
    for (name, class, n) in [
        ("ideal-tetrahedron", VertexClass::Ideal, 4),
        ("hyperideal-cube", VertexClass::Hyperideal, 8),
    ] {
        let (verts, _) = generalized_preset(name).expect("known preset");
        let classes = truncate_and_classify(&verts)?;
        let count = classes.iter().filter(|c| c.class == class).count();
        checks.push(Assertion::equals(&format!("{name}: vertices of the expected class"), count as f64, n as f64));
    }
    let (verts, _) = generalized_preset("bad-cube").expect("known preset");
    let rejected = matches!(truncate_and_classify(&verts), Err(GeomError::EdgeMissesBall(..)));
    checks.push(Assertion::equals("bad-cube rejected", f64::from(u8::from(rejected)), 1.0));
    Ok(checks)
}

fn gauss_bonnet(tol: &Tolerances, res: &Residuals) -> Result<Vec<Assertion>> {
    let square: Vec<AmbientPoint> = [[0., 0., 0.], [1., 0., 0.], [1., 1., 0.], [0., 1., 0.]]
        .iter()
        .map(|c| AmbientPoint::new(FormSpace::EUCLIDEAN, c))
        .collect::<Result<_>>()?;
    let m = closed_metric(&convex_hull(&square)?)?;
    let worst = |v: &[(String, f64)]| v.iter().map(|x| x.1).fold(0.0, f64::max);
    let mut checks = vec![
        Assertion::above("surfaces checked", (res.flat.len() + res.curved.len()) as f64, 0.0),
        Assertion::at_most("worst flat residual", worst(&res.flat), tol.gb_flat),
        Assertion::at_most("worst curved residual", worst(&res.curved), tol.gb_curved),
        Assertion::at_most(
            "doubled square: |Σk - 4π|",
            (m.total_curvature() - 4.0 * PI).abs(),
            tol.doubled_square,
        ),
    ];
    checks.push(Assertion::at_most("doubled square residual", m.gb_residual, tol.doubled_square));
    Ok(checks)
}

fn rigidity(seed: u64, res: &mut Residuals) -> Result<Vec<Assertion>> {
    let surfaces = rigidity_surfaces(seed, RIGIDITY_RANDOM_HULLS)?;
    let mut r = rng(seed.wrapping_add(1));
    let (mut wrong_dim, mut changed, mut trials) = (0, 0, 0);
    for (name, s) in &surfaces {
        res.flat.push((name.clone(), closed_metric(s)?.gb_residual));
        let rep = deformation_space(s)?;
        if rep.deformation_dim != 6 {
            wrong_dim += 1;
        }
        let proj = projective_invariance_check(s, PROJECTIVE_TRIALS, MapKind::Projective, &mut r)?;
        trials += proj.trials.len();
        changed += proj.trials.iter().filter(|t| t.deformation_dim != rep.deformation_dim).count();
    }
    Ok(vec![
        Assertion::equals("surfaces", surfaces.len() as f64, 22.0),
        Assertion::equals("surfaces with deformation dim other than 6", wrong_dim as f64, 0.0),
        Assertion::equals("projective trials", trials as f64, (surfaces.len() * PROJECTIVE_TRIALS) as f64),
        Assertion::equals("projective images with a different dim", changed as f64, 0.0),
    ])
}

/// Klein images of random points on the height-1 horosphere.
pub fn horosphere_samples(seed: u64, n: usize) -> Result<Vec<Vector3<f64>>> {
    let mut r = rng(seed);
    (0..n)
        .map(|_| {
            let u = r.random_range(-5.0..5.0);
            let v = r.random_range(-5.0..5.0);
            halfspace_to_klein([u, v, 1.0])
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_word_counts() {
        let letters = octagon_fuchsian_generators().letters();
        assert_eq!(reduced_words(&letters, 1).len(), 8);
        assert_eq!(reduced_words(&letters, 2).len(), 56);
        assert_eq!(reduced_words(&letters, 3).len(), 392);
    }

    #[test]
    fn tolerances_override_partially() {
        let t: Tolerances = serde_json::from_str(r#"{"hilbert": 1e-3}"#).unwrap();
        assert_eq!(t.hilbert, 1e-3);
        assert_eq!(t.gb_flat, 1e-8);
        assert!(serde_json::from_str::<Tolerances>(r#"{"nope": 1}"#).is_err());
    }

    #[test]
    fn cheap_criteria() {
        let t = Tolerances::default();
        for id in [4, 5, 7] {
            let c = run_criterion(id, 0, &t);
            assert!(c.passed, "{}", c.name);
        }
    }

    #[test]
    fn zero_tolerance_fails() {
        let strict = Tolerances {
            hilbert: 0.0,
            ..Tolerances::default()
        };
        assert!(!run_criterion(5, 0, &strict).passed);
    }
}
