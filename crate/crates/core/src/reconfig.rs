//! Conversion to sliding unit-disc reconfiguration.
//!
//! Every unit-square robot becomes a unit-diameter disc centered on its
//! cell, every obstacle cell becomes a fixed disc (start = target), and the
//! one-cell-thick ring of cells surrounding the workspace becomes fixed
//! discs as well, so the rectangular boundary is enforced by discs alone.
//!
//! A slide moves one disc along a polyline while all other discs stand
//! still; the motion is collision free when the moving center keeps
//! distance at least 1 from every stationary center (tangency is legal:
//! interiors stay disjoint). Lattice-aligned polylines are checked in exact
//! integer arithmetic; general polylines fall back to squared-distance
//! comparisons with a 1e-9 tolerance.

use alloc::vec::Vec;

use core::fmt;

use thiserror::Error;

use crate::grid::{validate_monotone_plan, Instance, MonotonePlan, Violation};

/// Disc index within a [`DiscInstance`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DiscId(pub u32);

impl DiscId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for DiscId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An integer lattice point (disc center).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// A unit-diameter disc. Fixed discs (obstacles) have start = target.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Disc {
    pub id: DiscId,
    pub start: LatticePoint,
    pub target: LatticePoint,
    pub mobile: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiscError {
    #[error("disc at list position {position} has id {id}, expected dense ids 0..n-1")]
    NonDenseIds { position: usize, id: DiscId },
    #[error("discs {first} and {second} share the start center {center}")]
    DuplicateStart {
        first: DiscId,
        second: DiscId,
        center: LatticePoint,
    },
    #[error("discs {first} and {second} share the target center {center}")]
    DuplicateTarget {
        first: DiscId,
        second: DiscId,
        center: LatticePoint,
    },
    #[error("fixed disc {id} has different start and target centers")]
    MovingFixedDisc { id: DiscId },
}

/// A reconfiguration instance of unit-diameter discs on the integer
/// lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscInstance {
    discs: Vec<Disc>,
}

impl DiscInstance {
    pub fn new(discs: Vec<Disc>) -> Result<Self, DiscError> {
        for (position, disc) in discs.iter().enumerate() {
            if disc.id.index() != position {
                return Err(DiscError::NonDenseIds {
                    position,
                    id: disc.id,
                });
            }
            if !disc.mobile && disc.start != disc.target {
                return Err(DiscError::MovingFixedDisc { id: disc.id });
            }
        }
        for (i, a) in discs.iter().enumerate() {
            for b in discs.iter().skip(i + 1) {
                if a.start == b.start {
                    return Err(DiscError::DuplicateStart {
                        first: a.id,
                        second: b.id,
                        center: a.start,
                    });
                }
                if a.target == b.target {
                    return Err(DiscError::DuplicateTarget {
                        first: a.id,
                        second: b.id,
                        center: a.target,
                    });
                }
            }
        }
        Ok(Self { discs })
    }

    pub fn discs(&self) -> &[Disc] {
        &self.discs
    }

    pub fn disc(&self, id: DiscId) -> Option<&Disc> {
        self.discs.get(id.index())
    }

    pub fn disc_count(&self) -> usize {
        self.discs.len()
    }

    pub fn mobile_count(&self) -> usize {
        self.discs.iter().filter(|d| d.mobile).count()
    }

    pub fn fixed_count(&self) -> usize {
        self.discs.iter().filter(|d| !d.mobile).count()
    }
}

/// A polyline vertex; conversion always emits lattice-valued coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlidePoint {
    pub x: f64,
    pub y: f64,
}

impl SlidePoint {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn from_lattice(p: LatticePoint) -> Self {
        Self {
            x: p.x as f64,
            y: p.y as f64,
        }
    }

    /// Exact lattice coordinates when both components are integral.
    pub fn as_lattice(self) -> Option<LatticePoint> {
        let xi = self.x as i64;
        let yi = self.y as i64;
        if xi as f64 == self.x && yi as f64 == self.y {
            Some(LatticePoint::new(xi, yi))
        } else {
            None
        }
    }
}

impl fmt::Display for SlidePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// One slide: a disc and the polyline its center follows.
#[derive(Debug, Clone, PartialEq)]
pub struct SlideMove {
    pub disc: DiscId,
    pub polyline: Vec<SlidePoint>,
}

/// An ordered list of slides.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SlidePlan {
    moves: Vec<SlideMove>,
}

impl SlidePlan {
    pub fn new(moves: Vec<SlideMove>) -> Self {
        Self { moves }
    }

    pub fn moves(&self) -> &[SlideMove] {
        &self.moves
    }

    pub fn move_count(&self) -> usize {
        self.moves.len()
    }
}

/// Maps a grid instance to the disc world: cell (c, r) becomes center
/// (c, r), robots become mobile discs, and obstacle cells plus the
/// surrounding one-cell ring become fixed discs. The disc count is
/// `robots + obstacles + 2*(width + 2) + 2*height`.
pub fn to_disc_instance(instance: &Instance) -> DiscInstance {
    let mut discs: Vec<Disc> = Vec::new();
    for robot in instance.robots() {
        discs.push(Disc {
            id: DiscId(discs.len() as u32),
            start: LatticePoint::new(robot.start.col as i64, robot.start.row as i64),
            target: LatticePoint::new(robot.target.col as i64, robot.target.row as i64),
            mobile: true,
        });
    }
    let fixed = |center: LatticePoint, discs: &mut Vec<Disc>| {
        discs.push(Disc {
            id: DiscId(discs.len() as u32),
            start: center,
            target: center,
            mobile: false,
        });
    };
    for cell in instance.workspace().obstacles() {
        fixed(
            LatticePoint::new(cell.col as i64, cell.row as i64),
            &mut discs,
        );
    }
    let width = instance.workspace().width() as i64;
    let height = instance.workspace().height() as i64;
    for x in -1..=width {
        fixed(LatticePoint::new(x, -1), &mut discs);
    }
    for y in 0..height {
        fixed(LatticePoint::new(-1, y), &mut discs);
        fixed(LatticePoint::new(width, y), &mut discs);
    }
    for x in -1..=width {
        fixed(LatticePoint::new(x, height), &mut discs);
    }
    DiscInstance::new(discs).expect("converted discs have distinct centers")
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("plan is not valid for the source grid instance: {0}")]
pub struct ConversionError(pub Violation);

/// Converts a valid monotone grid plan into slides: one polyline through
/// the path's cell centers per moving robot. Robots already standing on
/// their targets contribute no slide, so the slide count never exceeds the
/// robot count.
pub fn grid_plan_to_slide_plan(
    instance: &Instance,
    plan: &MonotonePlan,
) -> Result<SlidePlan, ConversionError> {
    validate_monotone_plan(instance, plan).map_err(ConversionError)?;
    let mut moves = Vec::new();
    for (id, path) in plan.moves() {
        if path.len() == 1 {
            continue;
        }
        let polyline = path
            .cells()
            .iter()
            .map(|&cell| SlidePoint::new(cell.col as f64, cell.row as f64))
            .collect();
        moves.push(SlideMove {
            disc: DiscId(id.0),
            polyline,
        });
    }
    Ok(SlidePlan::new(moves))
}

/// Tolerance for general (non-lattice) polylines, applied to squared
/// distances.
pub const SLIDE_TOLERANCE: f64 = 1e-9;

/// A stationary disc approached closer than the sum of radii.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlideViolation {
    pub move_index: usize,
    /// Polyline segment within the move (0 = first segment).
    pub segment_index: usize,
    pub moving_disc: DiscId,
    pub stationary_disc: DiscId,
    /// Squared center distance at the closest approach.
    pub squared_distance: f64,
}

impl fmt::Display for SlideViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "move {} segment {}: disc {} approaches disc {} at squared distance {} < 1",
            self.move_index,
            self.segment_index,
            self.moving_disc,
            self.stationary_disc,
            self.squared_distance
        )
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SlideCheckError {
    #[error("move {index} references unknown disc {disc}")]
    UnknownDisc { index: usize, disc: DiscId },
    #[error("move {index} slides fixed disc {disc}")]
    FixedDisc { index: usize, disc: DiscId },
    #[error("move {index} polyline needs at least 2 points")]
    DegeneratePolyline { index: usize },
    #[error("move {index} polyline starts at {found}, but disc {disc} is at {expected}")]
    StartMismatch {
        index: usize,
        disc: DiscId,
        found: SlidePoint,
        expected: SlidePoint,
    },
    #[error("{0}")]
    Collision(SlideViolation),
    #[error("disc {disc} finishes at {found}, not its target {expected}")]
    Unfinished {
        disc: DiscId,
        found: SlidePoint,
        expected: SlidePoint,
    },
}

/// Summary of a successful validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SlideReport {
    pub move_count: usize,
    /// Every polyline was lattice-aligned and checked with exact integer
    /// arithmetic.
    pub exact: bool,
}

/// Simulates slides in order. The plan is valid when every segment keeps
/// squared center distance >= 1 from every stationary disc and every disc
/// finishes on its target.
pub fn validate_slide_plan(
    instance: &DiscInstance,
    plan: &SlidePlan,
) -> Result<SlideReport, SlideCheckError> {
    let mut positions: Vec<SlidePoint> = instance
        .discs()
        .iter()
        .map(|d| SlidePoint::from_lattice(d.start))
        .collect();
    let mut all_exact = true;

    for (move_index, slide) in plan.moves().iter().enumerate() {
        let Some(disc) = instance.disc(slide.disc) else {
            return Err(SlideCheckError::UnknownDisc {
                index: move_index,
                disc: slide.disc,
            });
        };
        if !disc.mobile {
            return Err(SlideCheckError::FixedDisc {
                index: move_index,
                disc: slide.disc,
            });
        }
        if slide.polyline.len() < 2 {
            return Err(SlideCheckError::DegeneratePolyline { index: move_index });
        }
        let current = positions[slide.disc.index()];
        if slide.polyline[0] != current {
            return Err(SlideCheckError::StartMismatch {
                index: move_index,
                disc: slide.disc,
                found: slide.polyline[0],
                expected: current,
            });
        }

        let exact = slide.polyline.iter().all(|p| p.as_lattice().is_some());
        all_exact &= exact;
        for (segment_index, segment) in slide.polyline.windows(2).enumerate() {
            for other in instance.discs() {
                if other.id == slide.disc {
                    continue;
                }
                let center = positions[other.id.index()];
                let clear = if exact {
                    let a = segment[0].as_lattice().expect("checked above");
                    let b = segment[1].as_lattice().expect("checked above");
                    let c = center
                        .as_lattice()
                        .expect("stationary centers stay on the lattice in exact plans");
                    segment_clearance_exact(a, b, c)
                } else {
                    let d2 = segment_distance_sq(segment[0], segment[1], center);
                    (d2 >= 1.0 - SLIDE_TOLERANCE, d2)
                };
                if !clear.0 {
                    return Err(SlideCheckError::Collision(SlideViolation {
                        move_index,
                        segment_index,
                        moving_disc: slide.disc,
                        stationary_disc: other.id,
                        squared_distance: clear.1,
                    }));
                }
            }
        }
        positions[slide.disc.index()] = *slide.polyline.last().expect("len >= 2");
    }

    for disc in instance.discs() {
        let expected = SlidePoint::from_lattice(disc.target);
        let found = positions[disc.id.index()];
        if found != expected {
            return Err(SlideCheckError::Unfinished {
                disc: disc.id,
                found,
                expected,
            });
        }
    }

    Ok(SlideReport {
        move_count: plan.move_count(),
        exact: all_exact,
    })
}

/// Exact check that the segment a-b keeps squared distance >= 1 from point
/// p; also returns the squared distance for reporting (as f64).
fn segment_clearance_exact(a: LatticePoint, b: LatticePoint, p: LatticePoint) -> (bool, f64) {
    let ab = (b.x - a.x, b.y - a.y);
    let ap = (p.x - a.x, p.y - a.y);
    let len2 = (ab.0 as i128) * (ab.0 as i128) + (ab.1 as i128) * (ab.1 as i128);
    if len2 == 0 {
        let d2 = (ap.0 as i128) * (ap.0 as i128) + (ap.1 as i128) * (ap.1 as i128);
        return (d2 >= 1, d2 as f64);
    }
    let dot = (ap.0 as i128) * (ab.0 as i128) + (ap.1 as i128) * (ab.1 as i128);
    if dot <= 0 {
        let d2 = (ap.0 as i128) * (ap.0 as i128) + (ap.1 as i128) * (ap.1 as i128);
        (d2 >= 1, d2 as f64)
    } else if dot >= len2 {
        let bp = (p.x - b.x, p.y - b.y);
        let d2 = (bp.0 as i128) * (bp.0 as i128) + (bp.1 as i128) * (bp.1 as i128);
        (d2 >= 1, d2 as f64)
    } else {
        // Perpendicular case: d^2 = cross^2 / len^2, so d^2 >= 1 iff
        // cross^2 >= len^2.
        let cross = (ab.0 as i128) * (ap.1 as i128) - (ab.1 as i128) * (ap.0 as i128);
        let cross2 = cross * cross;
        (cross2 >= len2, cross2 as f64 / len2 as f64)
    }
}

/// Squared distance from point p to segment a-b, in floating point.
fn segment_distance_sq(a: SlidePoint, b: SlidePoint, p: SlidePoint) -> f64 {
    let ab = (b.x - a.x, b.y - a.y);
    let ap = (p.x - a.x, p.y - a.y);
    let len2 = ab.0 * ab.0 + ab.1 * ab.1;
    if len2 == 0.0 {
        return ap.0 * ap.0 + ap.1 * ap.1;
    }
    let t = (ap.0 * ab.0 + ap.1 * ab.1) / len2;
    let t = if t < 0.0 {
        0.0
    } else if t > 1.0 {
        1.0
    } else {
        t
    };
    let dx = p.x - (a.x + t * ab.0);
    let dy = p.y - (a.y + t * ab.1);
    dx * dx + dy * dy
}
