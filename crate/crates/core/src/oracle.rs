//! Sampling verifier for inclusions between sets and windows.
//!
//! Subject points come from a polar grid over the region's bounding
//! annulus sector, seeded random points in the same sector, and probes placed
//! next to the landmarks where inclusions break first. Every subject point is
//! inside its region with slack at least `margin`; a counterexample must also
//! leave the target by at least `margin`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{
    chord_half_angle, chord_half_angle_raw, in_set, in_window, BoundaryPoint, CarlesonSet,
    CarlesonWindow, Height, PlanePoint,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Region {
    Set(CarlesonSet),
    Window(CarlesonWindow),
}

impl From<CarlesonSet> for Region {
    fn from(s: CarlesonSet) -> Self {
        Region::Set(s)
    }
}

impl From<CarlesonWindow> for Region {
    fn from(w: CarlesonWindow) -> Self {
        Region::Window(w)
    }
}

impl Region {
    pub fn base(&self) -> BoundaryPoint {
        match self {
            Region::Set(s) => s.base,
            Region::Window(w) => w.base,
        }
    }

    pub fn height(&self) -> Height {
        match self {
            Region::Set(s) => s.height,
            Region::Window(w) => w.height,
        }
    }

    pub fn contains(&self, z: PlanePoint) -> bool {
        match self {
            Region::Set(s) => in_set(s, z),
            Region::Window(w) => in_window(w, z),
        }
    }

    /// Signed slack of each defining inequality; positive means satisfied.
    fn slacks(&self, z: PlanePoint) -> ([f64; 3], usize) {
        let h = self.height().value();
        let b = self.base().point();
        let r = z.norm();
        match self {
            Region::Set(_) => ([1.0 - r, h - z.distance(b), 0.0], 2),
            Region::Window(_) => {
                let angular = if r > 0.0 {
                    h - PlanePoint::raw(z.x() / r, z.y() / r).distance(b)
                } else {
                    f64::NEG_INFINITY
                };
                ([r - (1.0 - h), 1.0 - r, angular], 3)
            }
        }
    }

    /// Every defining inequality holds with slack at least `margin`, and the
    /// exact predicate agrees.
    pub fn contains_with_margin(&self, z: PlanePoint, margin: f64) -> bool {
        let (s, n) = self.slacks(z);
        s[..n].iter().all(|&v| v >= margin) && self.contains(z)
    }

    /// Some defining inequality is violated by at least `margin`, and the
    /// exact predicate agrees.
    pub fn excludes_with_margin(&self, z: PlanePoint, margin: f64) -> bool {
        let (s, n) = self.slacks(z);
        s[..n].iter().any(|&v| v <= -margin) && !self.contains(z)
    }

    /// `(r_min, r_max, half_angle)` of the bounding annulus sector in the frame
    /// of the base point.
    fn sector(&self) -> (f64, f64, f64) {
        let h = self.height();
        let half_angle = match self {
            Region::Set(_) => h.value().asin(),
            Region::Window(_) => chord_half_angle(h),
        };
        (1.0 - h.value(), 1.0, half_angle)
    }

    /// Points adjacent to the landmarks where inclusions fail first: the inner
    /// corners `P`, `Q` of a window; for a set, a ring just inside its circle
    /// and points just past the window edge along the ray through `M'`.
    fn probes(&self, margin: f64) -> Vec<PlanePoint> {
        let h = self.height().value();
        let offsets = [2.0 * margin, 1e-5, 1e-4, 1e-3];
        let mut frame = Vec::new();
        match self {
            Region::Window(_) => {
                for &dr in &offsets {
                    for &da in &offsets {
                        if da >= h {
                            continue;
                        }
                        let angle = 2.0 * (0.5 * (h - da)).asin();
                        for sign in [1.0, -1.0] {
                            frame.push(PlanePoint::polar(1.0 - h + dr, sign * angle));
                        }
                    }
                }
            }
            Region::Set(_) => {
                const RING: usize = 720;
                for &dr in &offsets {
                    let radius = h - dr;
                    if radius <= 0.0 {
                        continue;
                    }
                    for i in 0..RING {
                        let t = std::f64::consts::TAU * i as f64 / RING as f64;
                        let (s, c) = t.sin_cos();
                        frame.push(PlanePoint::raw(1.0 + radius * c, radius * s));
                    }
                }
                let theta = chord_half_angle_raw(h);
                let inner = (1.0 - h) * (1.0 + h);
                for &da in &offsets {
                    for i in 1..=8 {
                        let radius = inner + (1.0 - inner) * i as f64 / 9.0;
                        for sign in [1.0, -1.0] {
                            frame.push(PlanePoint::polar(radius, sign * (theta + da)));
                        }
                    }
                }
            }
        }
        let base = self.base();
        frame
            .into_iter()
            .map(|z| z.from_frame(base))
            .filter(|&z| self.contains_with_margin(z, margin))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplingPlan {
    pub radial_steps: usize,
    pub angular_steps: usize,
    pub margin: f64,
    pub random_samples: usize,
    pub seed: u64,
}

impl Default for SamplingPlan {
    fn default() -> Self {
        SamplingPlan {
            radial_steps: 400,
            angular_steps: 400,
            margin: 1e-6,
            random_samples: 10_000,
            seed: 0,
        }
    }
}

impl SamplingPlan {
    fn validate(&self, regions: &[&Region]) -> Result<()> {
        if self.radial_steps < 2 || self.angular_steps < 2 {
            return Err(Error::InvalidPlan(format!(
                "grid {}x{} needs at least 2 steps per axis",
                self.radial_steps, self.angular_steps
            )));
        }
        if !(self.margin > 0.0 && self.margin.is_finite()) {
            return Err(Error::InvalidPlan(format!(
                "margin {} must be positive",
                self.margin
            )));
        }
        let smallest = regions
            .iter()
            .map(|r| r.height().value())
            .fold(f64::INFINITY, f64::min);
        if self.margin >= smallest / 4.0 {
            return Err(Error::InvalidPlan(format!(
                "margin {} must be below a quarter of the smallest height {}",
                self.margin, smallest
            )));
        }
        Ok(())
    }
}

fn sample_unchecked(region: &Region, plan: &SamplingPlan) -> Vec<PlanePoint> {
    let (r_min, r_max, half) = region.sector();
    let base = region.base();
    let accept = |z: PlanePoint| region.contains_with_margin(z, plan.margin);

    let dr = (r_max - r_min) / plan.radial_steps as f64;
    let da = 2.0 * half / plan.angular_steps as f64;
    let mut points: Vec<PlanePoint> = (0..plan.radial_steps)
        .into_par_iter()
        .flat_map_iter(|i| {
            let radius = r_min + (i as f64 + 0.5) * dr;
            (0..plan.angular_steps).filter_map(move |j| {
                let angle = -half + (j as f64 + 0.5) * da;
                let z = PlanePoint::polar(radius, angle).from_frame(base);
                accept(z).then_some(z)
            })
        })
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
    for _ in 0..plan.random_samples {
        let radius = rng.gen_range(r_min..r_max);
        let angle = rng.gen_range(-half..=half);
        let z = PlanePoint::polar(radius, angle).from_frame(base);
        if accept(z) {
            points.push(z);
        }
    }
    points
}

/// Grid points (radial-major, then angular) followed by seeded random points,
/// all inside `region` with slack at least `plan.margin`.
pub fn sample_region(region: &Region, plan: &SamplingPlan) -> Result<Vec<PlanePoint>> {
    plan.validate(&[region])?;
    let points = sample_unchecked(region, plan);
    if points.is_empty() {
        return Err(Error::EmptySample);
    }
    Ok(points)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Verified,
    Refuted,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InclusionVerdict {
    outcome: Outcome,
    tested_points: usize,
    witness: Option<PlanePoint>,
    marginal_failures: usize,
}

impl InclusionVerdict {
    pub fn outcome(&self) -> Outcome {
        self.outcome
    }

    pub fn holds(&self) -> bool {
        self.outcome == Outcome::Verified
    }

    pub fn tested_points(&self) -> usize {
        self.tested_points
    }

    /// Present exactly when the inclusion is refuted.
    pub fn witness(&self) -> Option<PlanePoint> {
        self.witness
    }

    /// Subject points outside the target by less than the margin. These fall
    /// within rounding distance of a boundary and decide nothing.
    pub fn marginal_failures(&self) -> usize {
        self.marginal_failures
    }
}

/// Tests `subject ⊂ target` on the subject's sample points and landmark
/// probes. The witness of a refutation is the first point in scan order that
/// lies outside the target by at least the margin.
pub fn check_inclusion(
    subject: &Region,
    target: &Region,
    plan: &SamplingPlan,
) -> Result<InclusionVerdict> {
    if subject.base().point().distance(target.base().point()) > 1e-12 {
        return Err(Error::BaseMismatch);
    }
    plan.validate(&[subject, target])?;
    let mut points = sample_unchecked(subject, plan);
    points.extend(subject.probes(plan.margin));
    if points.is_empty() {
        return Err(Error::EmptySample);
    }

    let failures: Vec<usize> = points
        .par_iter()
        .enumerate()
        .filter(|(_, &z)| !target.contains(z))
        .map(|(i, _)| i)
        .collect();

    let witness = failures.iter().map(|&i| points[i]).find(|&z| {
        subject.contains_with_margin(z, plan.margin) && target.excludes_with_margin(z, plan.margin)
    });
    let (outcome, marginal_failures) = match witness {
        Some(_) => (Outcome::Refuted, 0),
        None => (Outcome::Verified, failures.len()),
    };
    Ok(InclusionVerdict {
        outcome,
        tested_points: points.len(),
        witness,
        marginal_failures,
    })
}

pub fn find_counterexample(
    subject: &Region,
    target: &Region,
    plan: &SamplingPlan,
) -> Result<Option<PlanePoint>> {
    Ok(check_inclusion(subject, target, plan)?.witness())
}
