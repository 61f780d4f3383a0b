//! Vectorized map elements: fixed-length point sequences, arc-length
//! resampling, and the permutation groups that leave an element's shape
//! unchanged (reversal for polylines, circular shifts for polygons).

use crate::error::{Error, Result};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// A 2D point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn dist(&self, other: &Point2) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

/// Coordinate frame a sequence lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Frame {
    /// Meters in the BEV window.
    Meters,
    /// Normalized to the unit square.
    Normalized,
}

/// Whether an element is an open polyline or a closed polygon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ElementKind {
    Open,
    Closed,
}

/// An ordered, fixed-length 2D point sequence.
///
/// Closed sequences never store a duplicated endpoint; the wrap-around
/// edge from the last point back to the first is implicit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointSequence {
    pub points: Vec<Point2>,
    pub frame: Frame,
}

impl PointSequence {
    pub fn new(points: Vec<Point2>, frame: Frame) -> Self {
        PointSequence { points, frame }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn all_finite(&self) -> bool {
        self.points.iter().all(Point2::is_finite)
    }
}

/// Number of map element classes.
pub const NUM_CLASSES: usize = 3;

/// Class ids follow the dataset convention: 0 = pedestrian crossing,
/// 1 = lane divider, 2 = road boundary.
pub const CLASS_PED_CROSSING: u8 = 0;
pub const CLASS_LANE_DIVIDER: u8 = 1;
pub const CLASS_ROAD_BOUNDARY: u8 = 2;

/// Expected kind for each class: crossings are closed polygons, dividers
/// and boundaries are open polylines.
pub fn expected_kind(class_id: u8) -> ElementKind {
    if class_id == CLASS_PED_CROSSING {
        ElementKind::Closed
    } else {
        ElementKind::Open
    }
}

/// One ground-truth map instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MapElement {
    pub class_id: u8,
    pub kind: ElementKind,
    pub sequence: PointSequence,
}

impl MapElement {
    /// Checks the class/kind convention, endpoint storage, and finiteness.
    pub fn validate(&self) -> Result<()> {
        if self.class_id as usize >= NUM_CLASSES {
            return Err(Error::DegenerateGeometry(format!(
                "class id {} out of range [0, {})",
                self.class_id, NUM_CLASSES
            )));
        }
        if self.kind != expected_kind(self.class_id) {
            return Err(Error::DegenerateGeometry(format!(
                "class {} must be {:?}",
                self.class_id,
                expected_kind(self.class_id)
            )));
        }
        if self.sequence.len() < 2 {
            return Err(Error::DegenerateGeometry(
                "element needs at least 2 points".into(),
            ));
        }
        if !self.sequence.all_finite() {
            return Err(Error::DegenerateGeometry(
                "element contains non-finite coordinates".into(),
            ));
        }
        if self.kind == ElementKind::Closed {
            let first = self.sequence.points[0];
            let last = *self.sequence.points.last().unwrap();
            if first == last {
                return Err(Error::DegenerateGeometry(
                    "closed element stores a duplicated endpoint".into(),
                ));
            }
        }
        Ok(())
    }
}

/// An order-reorganizing transform that preserves an element's shape.
///
/// `CircularShift(s)` maps index `i` to input index `(i + s) mod n`;
/// `ShiftAndReverse(s)` is the circular shift followed by a reversal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Permutation {
    Identity,
    Reverse,
    CircularShift(usize),
    ShiftAndReverse(usize),
}

impl Permutation {
    /// Source index in the input sequence for output position `i`.
    pub fn source_index(&self, i: usize, n: usize) -> usize {
        match *self {
            Permutation::Identity => i,
            Permutation::Reverse => n - 1 - i,
            Permutation::CircularShift(s) => (i + s) % n,
            Permutation::ShiftAndReverse(s) => (n - 1 - i + s) % n,
        }
    }

    /// The inverse transform for sequences of length `n`.
    pub fn inverse(&self, n: usize) -> Permutation {
        match *self {
            Permutation::Identity => Permutation::Identity,
            Permutation::Reverse => Permutation::Reverse,
            Permutation::CircularShift(s) => Permutation::CircularShift((n - s % n) % n),
            // Shift-then-reverse is an involution.
            Permutation::ShiftAndReverse(s) => Permutation::ShiftAndReverse(s),
        }
    }

    fn shift(&self) -> Option<usize> {
        match *self {
            Permutation::CircularShift(s) | Permutation::ShiftAndReverse(s) => Some(s),
            _ => None,
        }
    }

    fn validate(&self, n: usize) -> Result<()> {
        if let Some(s) = self.shift() {
            if s >= n {
                return Err(Error::InvalidPermutation(format!(
                    "shift {} out of range [0, {})",
                    s, n
                )));
            }
        }
        Ok(())
    }
}

/// How the permutation group for an element is sampled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GroupMode {
    /// Every shape-preserving reordering: 2 for open, 2·n for closed.
    Full,
    /// The practical restriction: closed elements shift without reversing;
    /// open elements keep identity and reverse.
    ShiftOnly,
    /// At most `m` members drawn from the shift-only base, identity always
    /// retained, remainder drawn uniformly without replacement.
    Subset { m: usize, seed: u64 },
}

/// The permutation group of one element.
#[derive(Debug, Clone, PartialEq)]
pub struct PermutationGroup {
    pub element_kind: ElementKind,
    pub members: Vec<Permutation>,
    pub mode: GroupMode,
}

impl PermutationGroup {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

fn full_group(kind: ElementKind, n: usize) -> Vec<Permutation> {
    match kind {
        ElementKind::Open => vec![Permutation::Identity, Permutation::Reverse],
        ElementKind::Closed => {
            let mut members = Vec::with_capacity(2 * n);
            members.push(Permutation::Identity);
            members.extend((1..n).map(Permutation::CircularShift));
            members.extend((0..n).map(Permutation::ShiftAndReverse));
            members
        }
    }
}

fn shift_only_group(kind: ElementKind, n: usize) -> Vec<Permutation> {
    match kind {
        // Shifts do not preserve an open polyline's shape; the practical
        // group for polylines is always identity + reversal.
        ElementKind::Open => vec![Permutation::Identity, Permutation::Reverse],
        ElementKind::Closed => {
            let mut members = Vec::with_capacity(n);
            members.push(Permutation::Identity);
            members.extend((1..n).map(Permutation::CircularShift));
            members
        }
    }
}

/// Builds the permutation group for an element of the given kind and length.
///
/// Subset sampling always includes the identity, then fills up to `m`
/// members uniformly without replacement from the shift-only base group;
/// the draw is deterministic given the seed.
pub fn permutation_group(kind: ElementKind, n_points: usize, mode: GroupMode) -> Result<PermutationGroup> {
    if n_points < 2 {
        return Err(Error::DegenerateGeometry(format!(
            "permutation group needs n_points >= 2, got {}",
            n_points
        )));
    }
    let members = match mode {
        GroupMode::Full => full_group(kind, n_points),
        GroupMode::ShiftOnly => shift_only_group(kind, n_points),
        GroupMode::Subset { m, seed } => {
            if m < 1 {
                return Err(Error::InvalidPermutation(
                    "subset mode needs m >= 1".into(),
                ));
            }
            let base = shift_only_group(kind, n_points);
            let target = m.min(base.len());
            let mut members = vec![Permutation::Identity];
            let mut rest: Vec<Permutation> =
                base.into_iter().filter(|p| *p != Permutation::Identity).collect();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rest.shuffle(&mut rng);
            members.extend(rest.into_iter().take(target - 1));
            members
        }
    };
    Ok(PermutationGroup {
        element_kind: kind,
        members,
        mode,
    })
}

/// Applies a permutation, returning the reordered sequence.
pub fn apply_permutation(seq: &PointSequence, perm: &Permutation) -> Result<PointSequence> {
    let n = seq.len();
    if n == 0 {
        return Err(Error::DegenerateGeometry("empty sequence".into()));
    }
    perm.validate(n)?;
    let points = (0..n).map(|i| seq.points[perm.source_index(i, n)]).collect();
    Ok(PointSequence {
        points,
        frame: seq.frame,
    })
}

/// Resamples a polyline (or polygon, wrapping around) to `n_points`
/// equidistant samples along its arc length. The first output point
/// coincides with the first input point; consecutive samples are spaced
/// `total_length / n_points` apart for closed curves and
/// `total_length / (n_points - 1)` for open ones. Linear interpolation
/// between input vertices.
pub fn resample_equidistant(
    raw_points: &[Point2],
    kind: ElementKind,
    n_points: usize,
    frame: Frame,
) -> Result<PointSequence> {
    if n_points < 2 {
        return Err(Error::DegenerateGeometry(format!(
            "resampling needs n_points >= 2, got {}",
            n_points
        )));
    }
    if raw_points.len() < 2 {
        return Err(Error::DegenerateGeometry(format!(
            "resampling needs at least 2 input points, got {}",
            raw_points.len()
        )));
    }
    if raw_points.iter().any(|p| !p.is_finite()) {
        return Err(Error::DegenerateGeometry(
            "input contains non-finite coordinates".into(),
        ));
    }

    // Vertex list including the wrap-around vertex for closed curves.
    let mut verts: Vec<Point2> = raw_points.to_vec();
    if kind == ElementKind::Closed {
        if verts.first() == verts.last() {
            // Tolerate an explicitly duplicated endpoint in raw input.
            verts.pop();
        }
        if verts.len() < 2 {
            return Err(Error::DegenerateGeometry(
                "closed input collapses to fewer than 2 distinct vertices".into(),
            ));
        }
        let first = verts[0];
        verts.push(first);
    }

    let mut cum = Vec::with_capacity(verts.len());
    cum.push(0.0);
    for w in verts.windows(2) {
        let d = w[0].dist(&w[1]);
        cum.push(cum.last().unwrap() + d);
    }
    let total = *cum.last().unwrap();
    if total <= 0.0 {
        return Err(Error::DegenerateGeometry(
            "zero total arc length (all points identical)".into(),
        ));
    }

    let spacing = match kind {
        ElementKind::Open => total / (n_points - 1) as f64,
        ElementKind::Closed => total / n_points as f64,
    };

    let mut out = Vec::with_capacity(n_points);
    let mut seg = 0usize;
    for i in 0..n_points {
        let target = spacing * i as f64;
        // The last open sample lands exactly on the final vertex.
        if kind == ElementKind::Open && i == n_points - 1 {
            out.push(*verts.last().unwrap());
            continue;
        }
        while seg + 2 < cum.len() && cum[seg + 1] <= target {
            seg += 1;
        }
        let seg_len = cum[seg + 1] - cum[seg];
        let t = if seg_len > 0.0 {
            ((target - cum[seg]) / seg_len).clamp(0.0, 1.0)
        } else {
            0.0
        };
        let a = verts[seg];
        let b = verts[seg + 1];
        out.push(Point2::new(a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t));
    }

    Ok(PointSequence {
        points: out,
        frame,
    })
}
