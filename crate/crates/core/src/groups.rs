//! Isometry groups of the ambient spaces and truncated orbit enumeration.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use nalgebra::{DMatrix, DVector};
use serde::{Serialize, Serializer};

use crate::error::{GeomError, Result};
use crate::forms::{AmbientPoint, Ellipsoid, FormSpace, EPS_GEOM, HALFSPACE_SCALE};

/// Largest orbit depth accepted anywhere.
pub const MAX_DEPTH: usize = 8;

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub generator: u8,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: u8, inverse: bool) -> Self {
        Self { generator, inverse }
    }

    pub fn inv(self) -> Self {
        Self {
            inverse: !self.inverse,
            ..self
        }
    }
}

/// Word in the generators; `abc` is the isometry `a ∘ b ∘ c`. Generators are
/// written `a, b, c, ...` and their inverses `A, B, C, ...`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Self(letters)
    }

    /// Parses the `aBc` notation.
    pub fn parse(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| {
                if c.is_ascii_lowercase() {
                    Ok(Letter::new(c as u8 - b'a', false))
                } else if c.is_ascii_uppercase() {
                    Ok(Letter::new(c as u8 - b'A', true))
                } else {
                    Err(GeomError::Config(format!("bad letter {c:?} in word {s:?}")))
                }
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// `letter · self`
    pub fn prepend(&self, letter: Letter) -> Self {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(letter);
        v.extend_from_slice(&self.0);
        Self(v)
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    /// True when no letter is followed by its inverse.
    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1].inv())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for l in &self.0 {
            let base = if l.inverse { b'A' } else { b'a' };
            write!(f, "{}", (base + l.generator) as char)?;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A linear map preserving the form of `space`.
#[derive(Debug, Clone, PartialEq)]
pub struct Isometry {
    matrix: DMatrix<f64>,
    space: FormSpace,
    label: Word,
}

impl Isometry {
    pub fn new(space: FormSpace, matrix: DMatrix<f64>, label: Word) -> Result<Self> {
        if matrix.nrows() != space.dim() || matrix.ncols() != space.dim() {
            return Err(GeomError::DimensionMismatch {
                expected: space.dim(),
                got: matrix.nrows(),
            });
        }
        let iso = Self {
            matrix,
            space,
            label,
        };
        let defect = iso.form_defect();
        if defect > EPS_GEOM {
            return Err(GeomError::NotAnIsometry(defect));
        }
        Ok(iso)
    }

    pub fn identity(space: FormSpace) -> Self {
        Self {
            matrix: DMatrix::identity(space.dim(), space.dim()),
            space,
            label: Word::empty(),
        }
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn space(&self) -> FormSpace {
        self.space
    }

    pub fn label(&self) -> &Word {
        &self.label
    }

    /// `max |Mᵀ G M - G|`, relative to the squared size of `M` so that long
    /// compositions with large entries are judged fairly.
    pub fn form_defect(&self) -> f64 {
        let g = self.space.gram();
        let diff = self.matrix.transpose() * &g * &self.matrix - g;
        let scale = self.matrix.amax().powi(2).max(1.0);
        diff.amax() / scale
    }

    /// `self ∘ other`, re-verified.
    pub fn compose(&self, other: &Isometry) -> Result<Isometry> {
        let mut label = self.label.0.clone();
        label.extend_from_slice(&other.label.0);
        Isometry::new(self.space, &self.matrix * &other.matrix, Word(label))
    }

    /// `G Mᵀ G`, exact inverse of a form-preserving matrix.
    pub fn inverse(&self) -> Isometry {
        let g = self.space.gram();
        Isometry {
            matrix: &g * self.matrix.transpose() * &g,
            space: self.space,
            label: self.label.inverse(),
        }
    }

    pub fn apply_vec(&self, v: &DVector<f64>) -> DVector<f64> {
        &self.matrix * v
    }

    pub fn apply(&self, p: &AmbientPoint) -> AmbientPoint {
        AmbientPoint::new_unchecked(p.space(), self.apply_vec(p.coords()))
    }

    /// Distance to the identity in the max norm.
    pub fn distance_to_identity(&self) -> f64 {
        (&self.matrix - DMatrix::identity(self.space.dim(), self.space.dim())).amax()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    Trivial,
    Fuchsian,
    Parabolic,
}

/// The totally umbilic surface a group acts on cocompactly.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum UmbilicSurface {
    None,
    /// Upper sheet of `<x,x> = -1` in `R^{2,1}`.
    HyperboloidSheet,
    /// Horosphere seen in the Klein model: an ellipsoid tangent to the unit
    /// sphere at `tangency`. `ellipsoid` is the image of the height-1 plane.
    Horosphere {
        tangency: [f64; 3],
        ellipsoid: Ellipsoid,
    },
}

#[derive(Debug, Clone)]
pub struct GroupSpec {
    pub generators: Vec<Isometry>,
    pub kind: GroupKind,
    pub umbilic_surface: UmbilicSurface,
    pub space: FormSpace,
}

impl GroupSpec {
    pub fn trivial(space: FormSpace) -> Self {
        Self {
            generators: Vec::new(),
            kind: GroupKind::Trivial,
            umbilic_surface: UmbilicSurface::None,
            space,
        }
    }

    pub fn letter(&self, l: Letter) -> Isometry {
        let g = &self.generators[l.generator as usize];
        if l.inverse {
            g.inverse()
        } else {
            g.clone()
        }
    }

    /// Generators followed by their inverses: `a, A, b, B, ...`.
    pub fn letters(&self) -> Vec<Letter> {
        (0..self.generators.len() as u8)
            .flat_map(|g| [Letter::new(g, false), Letter::new(g, true)])
            .collect()
    }

    /// Isometry spelled by `word`.
    pub fn word_isometry(&self, word: &Word) -> Result<Isometry> {
        let mut m = DMatrix::identity(self.space.dim(), self.space.dim());
        for &l in word.letters() {
            if l.generator as usize >= self.generators.len() {
                return Err(GeomError::Config(format!("word {word} uses an unknown generator")));
            }
            m *= self.letter(l).matrix();
        }
        Isometry::new(self.space, m, word.clone())
    }

    /// Defining relation of the octagon group in side-pairing order.
    pub fn surface_relation() -> Word {
        Word::parse("aBcDAbCd").expect("static word")
    }
}

fn boost_x(len: f64) -> DMatrix<f64> {
    let (s, c) = (len.sinh(), len.cosh());
    DMatrix::from_row_slice(3, 3, &[c, 0.0, s, 0.0, 1.0, 0.0, s, 0.0, c])
}

fn rotation_z(angle: f64) -> DMatrix<f64> {
    let (s, c) = angle.sin_cos();
    DMatrix::from_row_slice(3, 3, &[c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0])
}

/// Distance from the center of the regular octagon with
/// interior angles `π/4` to the midpoint of a side: `cosh r = cot(π/8)`.
pub fn octagon_inradius() -> f64 {
    (1.0 / (PI / 8.0).tan()).acosh()
}

/// Four hyperbolic translations of `R^{2,1}` pairing opposite sides of the
/// regular octagon centered at `(0,0,1)` with interior angles `π/4`.
///
/// Generator `k` translates by `2r` along the axis at angle `kπ/4`, so that
/// `aBcDAbCd` is the identity.
pub fn octagon_fuchsian_generators() -> GroupSpec {
    let space = FormSpace::MINKOWSKI;
    let t = boost_x(2.0 * octagon_inradius());
    let generators = (0..4u8)
        .map(|k| {
            let angle = f64::from(k) * PI / 4.0;
            let m = rotation_z(angle) * &t * rotation_z(-angle);
            Isometry::new(space, m, Word(vec![Letter::new(k, false)]))
                .expect("boost conjugates preserve the form")
        })
        .collect();
    GroupSpec {
        generators,
        kind: GroupKind::Fuchsian,
        umbilic_surface: UmbilicSurface::HyperboloidSheet,
        space,
    }
}

/// The parabolic isometry of `R^{3,1}` induced by the half-space translation
/// `(u, v, h) ↦ (u + b₀, v + b₁, h)`.
pub fn halfspace_translation(b: [f64; 2]) -> DMatrix<f64> {
    // with s = x4 - x3: x1 += b0 s, x2 += b1 s, x3,x4 += b·(x1,x2) + |b|^2 s / 2
    let [b0, b1] = b.map(|c| c * HALFSPACE_SCALE);
    let q = 0.5 * (b0 * b0 + b1 * b1);
    DMatrix::from_row_slice(
        4,
        4,
        &[
            1.0, 0.0, -b0, b0, //
            0.0, 1.0, -b1, b1, //
            b0, b1, 1.0 - q, q, //
            b0, b1, -q, 1.0 + q,
        ],
    )
}

/// The two unit translations of the half-space model, acting on `H^3`.
pub fn parabolic_square_generators() -> GroupSpec {
    let space = FormSpace::HYPERBOLIC;
    let generators = [[1.0, 0.0], [0.0, 1.0]]
        .into_iter()
        .enumerate()
        .map(|(k, b)| {
            Isometry::new(
                space,
                halfspace_translation(b),
                Word(vec![Letter::new(k as u8, false)]),
            )
            .expect("parabolic translations preserve the form")
        })
        .collect();
    GroupSpec {
        generators,
        kind: GroupKind::Parabolic,
        umbilic_surface: UmbilicSurface::Horosphere {
            tangency: crate::forms::HOROSPHERE_TANGENCY,
            ellipsoid: crate::forms::horosphere_image(1.0).expect("positive height"),
        },
        space,
    }
}

/// An element of a truncated orbit with its shortest producing word.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitPoint {
    pub point: AmbientPoint,
    pub word: Word,
}

#[derive(Debug, Clone, Copy)]
struct Key(f64);

impl PartialEq for Key {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other).is_eq()
    }
}

impl Eq for Key {}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// Approximate point lookup: two vectors are identified when they differ by
/// less than `EPS_GEOM · max(1, |p|)`. Keys on the last coordinate.
#[derive(Debug, Default)]
pub(crate) struct PointIndex {
    by_key: BTreeMap<Key, Vec<usize>>,
    points: Vec<DVector<f64>>,
}

impl PointIndex {
    pub fn tolerance(p: &DVector<f64>) -> f64 {
        EPS_GEOM * p.norm().max(1.0)
    }

    pub fn find(&self, p: &DVector<f64>) -> Option<usize> {
        let tol = Self::tolerance(p);
        let last = p[p.len() - 1];
        self.by_key
            .range(Key(last - tol)..=Key(last + tol))
            .flat_map(|(_, ids)| ids.iter().copied())
            .find(|&i| (&self.points[i] - p).amax() < tol)
    }

    pub fn insert(&mut self, p: DVector<f64>) -> usize {
        let id = self.points.len();
        self.by_key.entry(Key(p[p.len() - 1])).or_default().push(id);
        self.points.push(p);
        id
    }
}

/// All distinct points `g(p)` for words of length at most `depth`, each with
/// its shortest (then lexicographically smallest) word. Output is sorted by
/// word length, then word.
pub fn orbit(spec: &GroupSpec, p: &AmbientPoint, depth: usize) -> Result<Vec<OrbitPoint>> {
    if depth > MAX_DEPTH {
        return Err(GeomError::DepthOutOfRange(depth));
    }
    if p.space() != spec.space {
        return Err(GeomError::Config(format!(
            "base point lives in {} but the group acts on {}",
            p.space(),
            spec.space
        )));
    }
    let letters: Vec<(Letter, DMatrix<f64>)> = spec
        .letters()
        .into_iter()
        .map(|l| (l, spec.letter(l).matrix().clone()))
        .collect();

    let mut index = PointIndex::default();
    let mut words: Vec<Word> = Vec::new();
    index.insert(p.coords().clone());
    words.push(Word::empty());
    let mut frontier = vec![0usize];

    for _ in 0..depth {
        let mut next = Vec::new();
        for &id in &frontier {
            let base = index.points[id].clone();
            let base_word = words[id].clone();
            for (l, m) in &letters {
                let w = base_word.prepend(*l);
                if !w.is_reduced() {
                    continue;
                }
                let q = m * &base;
                match index.find(&q) {
                    Some(j) => {
                        if words[j].len() == w.len() && w < words[j] {
                            words[j] = w;
                        }
                    }
                    None => {
                        let j = index.insert(q);
                        words.push(w);
                        next.push(j);
                    }
                }
            }
        }
        frontier = next;
    }

    let mut out: Vec<OrbitPoint> = index
        .points
        .into_iter()
        .zip(words)
        .map(|(c, word)| OrbitPoint {
            point: AmbientPoint::new_unchecked(p.space(), c),
            word,
        })
        .collect();
    out.sort_by(|a, b| (a.word.len(), &a.word).cmp(&(b.word.len(), &b.word)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{geodesic_distance, halfspace_to_hyperboloid};

    #[test]
    fn words_print_and_parse() {
        let w = Word::parse("aBcD").unwrap();
        assert_eq!(w.to_string(), "aBcD");
        assert_eq!(w.inverse().to_string(), "dCbA");
        assert_eq!(Word::empty().to_string(), "e");
        assert!(!Word::parse("aAb").unwrap().is_reduced());
        assert!(Word::parse("a1").is_err());
    }

    #[test]
    fn octagon_generators_preserve_form_and_sheet() {
        let spec = octagon_fuchsian_generators();
        let p = AmbientPoint::new(FormSpace::MINKOWSKI, &[0., 0., 1.]).unwrap();
        for g in &spec.generators {
            assert!(g.form_defect() < 1e-9);
            let q = g.apply(&p);
            assert!(q.coords()[2] > 0.0);
            let prod = g.compose(&g.inverse()).unwrap();
            assert!(prod.distance_to_identity() < 1e-12);
        }
    }

    #[test]
    fn octagon_relation_holds() {
        let spec = octagon_fuchsian_generators();
        let rel = spec.word_isometry(&GroupSpec::surface_relation()).unwrap();
        assert!(rel.distance_to_identity() < 1e-6, "{}", rel.distance_to_identity());
    }

    #[test]
    fn octagon_translation_length() {
        let spec = octagon_fuchsian_generators();
        let h = FormSpace::HYPERBOLIC_PLANE;
        let p = AmbientPoint::new(h, &[0., 0., 1.]).unwrap();
        let ell = 2.0 * (1.0 / (PI / 8.0).tan()).acosh();
        for g in &spec.generators {
            let q = AmbientPoint::from_vector(h, g.apply_vec(p.coords())).unwrap();
            assert!((geodesic_distance(&p, &q).unwrap() - ell).abs() < 1e-12);
            assert!((q.coords()[2] - (5.0 + 4.0 * 2f64.sqrt())).abs() < 1e-12);
        }
        assert!((ell - 3.057_141_838_961_996).abs() < 1e-12);
    }

    #[test]
    fn parabolic_generators_match_halfspace_translations() {
        let spec = parabolic_square_generators();
        let q = [0.3, -0.7, 1.4];
        let p = halfspace_to_hyperboloid(q).unwrap();
        let img = spec.generators[0].apply(&p);
        let expected = halfspace_to_hyperboloid([q[0] + 1.0, q[1], q[2]]).unwrap();
        assert!((img.coords() - expected.coords()).amax() < 1e-12);
        let img = spec.generators[1].apply(&p);
        let expected = halfspace_to_hyperboloid([q[0], q[1] + 1.0, q[2]]).unwrap();
        assert!((img.coords() - expected.coords()).amax() < 1e-12);

        let (a, b) = (&spec.generators[0], &spec.generators[1]);
        let comm = a
            .compose(b)
            .unwrap()
            .compose(&a.inverse())
            .unwrap()
            .compose(&b.inverse())
            .unwrap();
        assert!(comm.distance_to_identity() < 1e-12);
        // fixes the light-like direction of the tangency point
        let l = DVector::from_column_slice(&[0., 0., 1., 1.]);
        for g in &spec.generators {
            assert!((g.apply_vec(&l) - &l).amax() < 1e-15);
        }
    }

    #[test]
    fn orbit_depth_limits() {
        let spec = octagon_fuchsian_generators();
        let p = AmbientPoint::new(FormSpace::MINKOWSKI, &[0., 0., 1.]).unwrap();
        assert_eq!(orbit(&spec, &p, 0).unwrap().len(), 1);
        assert_eq!(orbit(&spec, &p, 1).unwrap().len(), 9);
        assert!(matches!(
            orbit(&spec, &p, 9),
            Err(GeomError::DepthOutOfRange(9))
        ));
        let wrong = AmbientPoint::new(FormSpace::EUCLIDEAN, &[0., 0., 1.]).unwrap();
        assert!(orbit(&spec, &wrong, 1).is_err());
    }

    #[test]
    fn orbit_words_reproduce_points() {
        let spec = octagon_fuchsian_generators();
        let p = AmbientPoint::new(FormSpace::MINKOWSKI, &[0., 0., 1.]).unwrap();
        let orb = orbit(&spec, &p, 3).unwrap();
        for o in &orb {
            let g = spec.word_isometry(&o.word).unwrap();
            let q = g.apply(&p);
            assert!((q.coords() - o.point.coords()).amax() < 1e-6);
            let f = o.point.form_value();
            assert!((f + 1.0).abs() < 1e-6);
        }
        for w in orb.windows(2) {
            assert!((w[0].word.len(), &w[0].word) < (w[1].word.len(), &w[1].word));
        }
    }
}
