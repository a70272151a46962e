//! Points of the plane, the two region families anchored at a boundary point,
//! and the named landmarks of a window.
//!
//! All membership predicates are evaluated exactly in floating point, without
//! tolerance slack. Landmark construction works in the frame where the base
//! point is `(1, 0)` and rotates the result back.

use std::f64::consts::FRAC_PI_3;

use crate::error::{domain, Error, Result};

/// Tolerance on `|b| = 1` accepted by [`BoundaryPoint::new`].
pub const UNIT_MODULUS_TOL: f64 = 1e-12;

/// A point of the complex plane in Cartesian coordinates. Both coordinates are
/// always finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanePoint {
    x: f64,
    y: f64,
}

impl PlanePoint {
    pub const ORIGIN: PlanePoint = PlanePoint { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Result<Self> {
        if x.is_finite() && y.is_finite() {
            Ok(PlanePoint { x, y })
        } else {
            Err(Error::NonFinite { x, y })
        }
    }

    /// Internal constructor for values that are finite by construction.
    pub(crate) fn raw(x: f64, y: f64) -> Self {
        debug_assert!(x.is_finite() && y.is_finite());
        PlanePoint { x, y }
    }

    pub(crate) fn polar(radius: f64, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        PlanePoint::raw(radius * c, radius * s)
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_sq(&self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    /// Argument in `(-π, π]`.
    pub fn arg(&self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn distance(&self, other: PlanePoint) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn distance_sq(&self, other: PlanePoint) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    /// Rotation about the origin by `angle` radians.
    pub fn rotate(&self, angle: f64) -> PlanePoint {
        let (s, c) = angle.sin_cos();
        self.mul_unit(c, s)
    }

    fn mul_unit(&self, c: f64, s: f64) -> PlanePoint {
        PlanePoint::raw(self.x * c - self.y * s, self.x * s + self.y * c)
    }

    /// Expresses `self` in the frame where `base` sits at `(1, 0)`.
    pub fn to_frame(&self, base: BoundaryPoint) -> PlanePoint {
        self.mul_unit(base.point.x, -base.point.y)
    }

    /// Inverse of [`PlanePoint::to_frame`].
    pub fn from_frame(&self, base: BoundaryPoint) -> PlanePoint {
        self.mul_unit(base.point.x, base.point.y)
    }
}

/// A point of the unit circle, the base point `b` of a set or window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryPoint {
    point: PlanePoint,
}

impl BoundaryPoint {
    pub const ONE: BoundaryPoint = BoundaryPoint {
        point: PlanePoint { x: 1.0, y: 0.0 },
    };

    /// Accepts `point` when `||point| - 1| <= 1e-12` and stores it rescaled to
    /// unit modulus.
    pub fn new(point: PlanePoint) -> Result<Self> {
        let modulus = point.norm();
        if (modulus - 1.0).abs() > UNIT_MODULUS_TOL {
            return Err(Error::NotOnUnitCircle {
                x: point.x,
                y: point.y,
                modulus,
            });
        }
        Ok(BoundaryPoint {
            point: PlanePoint::raw(point.x / modulus, point.y / modulus),
        })
    }

    pub fn from_angle(angle: f64) -> Result<Self> {
        if !angle.is_finite() {
            return Err(domain("angle", angle, "finite reals"));
        }
        let (s, c) = angle.sin_cos();
        BoundaryPoint::new(PlanePoint::raw(c, s))
    }

    pub fn point(&self) -> PlanePoint {
        self.point
    }

    pub fn angle(&self) -> f64 {
        self.point.arg()
    }
}

/// The height parameter `h`, restricted to the open interval `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Height(f64);

impl Height {
    pub fn new(value: f64) -> Result<Self> {
        if value > 0.0 && value < 1.0 {
            Ok(Height(value))
        } else {
            Err(Error::HeightOutOfRange(value))
        }
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

/// The Carleson set `S(b, h) = { z in D : |z - b| < h }`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CarlesonSet {
    pub base: BoundaryPoint,
    pub height: Height,
}

impl CarlesonSet {
    pub fn new(base: BoundaryPoint, height: Height) -> Self {
        CarlesonSet { base, height }
    }

    pub fn contains(&self, z: PlanePoint) -> bool {
        in_set(self, z)
    }
}

/// The Carleson window `W(b, h)`: points of the disk with `|z| > 1 - h` whose
/// radial projection lies in the closure of `S(b, h)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CarlesonWindow {
    pub base: BoundaryPoint,
    pub height: Height,
}

impl CarlesonWindow {
    pub fn new(base: BoundaryPoint, height: Height) -> Self {
        CarlesonWindow { base, height }
    }

    pub fn contains(&self, z: PlanePoint) -> bool {
        in_window(self, z)
    }

    pub fn landmarks(&self) -> WindowLandmarks {
        landmarks(self.base, self.height)
    }
}

/// `|z| < 1` and `|z - b| < h`, both strict.
pub fn in_set(set: &CarlesonSet, z: PlanePoint) -> bool {
    z.norm() < 1.0 && z.distance(set.base.point) < set.height.value()
}

/// `1 - h < |z| < 1` and `|z/|z| - b| <= h`.
///
/// The angular bound is closed and evaluated in chord form.
pub fn in_window(window: &CarlesonWindow, z: PlanePoint) -> bool {
    let h = window.height.value();
    let r = z.norm();
    if !(r > 1.0 - h && r < 1.0) {
        return false;
    }
    let projection = PlanePoint::raw(z.x / r, z.y / r);
    projection.distance(window.base.point) <= h
}

/// Boundary landmarks of `W(b, h)` together with the point `M'` where the ray
/// `OM` re-enters the circle of radius `h` about `b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowLandmarks {
    /// Half the angular width of the window's outer arc, in radians.
    pub theta: f64,
    pub m: PlanePoint,
    pub n: PlanePoint,
    pub p: PlanePoint,
    pub q: PlanePoint,
    pub m_prime: PlanePoint,
}

pub(crate) fn chord_half_angle_raw(h: f64) -> f64 {
    2.0 * (0.5 * h).asin()
}

/// Angle `θ` between `Ob` and `OM` where `|M - b| = h`, i.e. `2 - 2 cos θ = h²`.
pub fn chord_half_angle(h: Height) -> f64 {
    let theta = chord_half_angle_raw(h.value());
    debug_assert!(theta > 0.0 && theta < FRAC_PI_3);
    theta
}

pub fn landmarks(base: BoundaryPoint, height: Height) -> WindowLandmarks {
    let h = height.value();
    let theta = chord_half_angle(height);
    let inner = 1.0 - h;
    // power of the origin with respect to the circle |z - b| = h
    let power = (1.0 - h) * (1.0 + h);
    let at = |radius: f64, angle: f64| PlanePoint::polar(radius, angle).from_frame(base);
    WindowLandmarks {
        theta,
        m: at(1.0, theta),
        n: at(1.0, -theta),
        p: at(inner, theta),
        q: at(inner, -theta),
        m_prime: at(power, theta),
    }
}

/// Squared distance from `b` to the inner corner `P` of `W(b, r)`:
/// `2r² - r³`.
pub fn corner_distance_sq(r: f64) -> Result<f64> {
    if !(r > 0.0 && r < 1.0) {
        return Err(domain("r", r, "(0, 1)"));
    }
    Ok(r * r * (2.0 - r))
}

pub(crate) fn wedge_distance_sq_raw(s: f64) -> f64 {
    let s2 = s * s;
    s2 - 0.25 * s2 * s2
}

/// Squared distance from `b` to the straight edges of `W(b, s)`:
/// `s² - s⁴/4`.
pub fn wedge_distance_sq(s: f64) -> Result<f64> {
    if !(s > 0.0 && s < 1.0) {
        return Err(domain("s", s, "(0, 1)"));
    }
    Ok(wedge_distance_sq_raw(s))
}

/// An explicit point of `S(b, h)` that is not in `W(b, h)`.
///
/// In the frame of `b` the point is `cos φ · e^{iφ}`, the foot of the
/// perpendicular from `b` onto the ray at angle `φ`, with `φ` halfway between
/// the window's half-angle `θ` and `arcsin h`. Its distance to `b` is
/// `sin φ < h`, while its argument exceeds `θ`.
pub fn prop1_witness(base: BoundaryPoint, height: Height) -> PlanePoint {
    let theta = chord_half_angle(height);
    let phi = 0.5 * (theta + height.value().asin());
    PlanePoint::polar(phi.cos(), phi).from_frame(base)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn h(v: f64) -> Height {
        Height::new(v).unwrap()
    }

    fn grid() -> impl Iterator<Item = f64> {
        (1..=19).map(|i| i as f64 * 0.05)
    }

    #[test]
    fn constructors_reject_bad_input() {
        assert!(PlanePoint::new(f64::NAN, 0.0).is_err());
        assert!(PlanePoint::new(0.0, f64::INFINITY).is_err());
        assert!(Height::new(0.0).is_err());
        assert!(Height::new(1.0).is_err());
        assert!(Height::new(-0.2).is_err());
        assert!(Height::new(f64::NAN).is_err());
        assert!(BoundaryPoint::new(PlanePoint::new(1.0 + 1e-9, 0.0).unwrap()).is_err());
    }

    #[test]
    fn boundary_point_is_renormalized() {
        let b = BoundaryPoint::new(PlanePoint::new(0.6, 0.8 + 5e-13).unwrap()).unwrap();
        assert!((b.point().norm() - 1.0).abs() <= f64::EPSILON);
    }

    #[test]
    fn chord_half_angle_values() {
        assert!((chord_half_angle_raw(1.0) - FRAC_PI_3).abs() < 1e-15);
        assert!(chord_half_angle(h(1e-12)) < 1e-11);
        // 2·arcsin(0.3) to 30 digits: 0.609385308030794992667...
        let theta = chord_half_angle(h(0.6));
        assert!((theta - 0.609_385_308_030_795).abs() < 1e-14);
        assert!((2.0 - 2.0 * theta.cos() - 0.36).abs() < 1e-14);
    }

    #[test]
    fn set_membership_examples() {
        let s = CarlesonSet::new(BoundaryPoint::ONE, h(0.5));
        assert!(s.contains(PlanePoint::new(0.9, 0.0).unwrap()));
        assert!(!s.contains(PlanePoint::new(0.4, 0.0).unwrap()));
        assert!(!s.contains(PlanePoint::new(0.5, 0.0).unwrap()));
        assert!(!s.contains(PlanePoint::new(1.0, 0.0).unwrap()));
    }

    #[test]
    fn window_membership_examples() {
        let w = CarlesonWindow::new(BoundaryPoint::ONE, h(0.5));
        assert!(w.contains(PlanePoint::new(0.9, 0.0).unwrap()));
        assert!(!w.contains(PlanePoint::new(0.4, 0.0).unwrap()));
        assert!(!w.contains(PlanePoint::ORIGIN));
        assert!(!w.contains(PlanePoint::new(1.0, 0.0).unwrap()));

        let theta = chord_half_angle(h(0.5));
        let edge = PlanePoint::polar(1.0, theta);
        assert!((edge.distance(BoundaryPoint::ONE.point()) - 0.5).abs() < 1e-12);
        assert!(w.contains(PlanePoint::polar(0.9, theta)));
        assert!(!w.contains(PlanePoint::polar(0.9, theta + 1e-9)));
    }

    #[test]
    fn landmark_invariants_on_grid() {
        for b in [BoundaryPoint::ONE, BoundaryPoint::from_angle(2.1).unwrap()] {
            for hv in grid() {
                let lm = landmarks(b, h(hv));
                let bp = b.point();
                assert!((lm.m.norm() - 1.0).abs() < 1e-12);
                assert!((lm.n.norm() - 1.0).abs() < 1e-12);
                assert!((lm.p.norm() - (1.0 - hv)).abs() < 1e-12);
                assert!((lm.q.norm() - (1.0 - hv)).abs() < 1e-12);
                assert!((lm.m_prime.norm() - (1.0 - hv * hv)).abs() < 1e-12);
                assert!((lm.m.distance(bp) - hv).abs() < 1e-12);
                assert!((lm.n.distance(bp) - hv).abs() < 1e-12);
                // M' lies on the same circle about b as M
                assert!((lm.m_prime.distance(bp) - hv).abs() < 1e-12);
                assert!(lm.theta > 0.0 && lm.theta < FRAC_PI_3);
            }
        }
    }

    #[test]
    fn landmark_symmetry_and_rotation() {
        let lm = landmarks(BoundaryPoint::ONE, h(0.6));
        assert!((lm.m_prime.norm() - 0.64).abs() < 1e-12);
        assert_eq!(lm.n.x(), lm.m.x());
        assert_eq!(lm.n.y(), -lm.m.y());

        let top = BoundaryPoint::new(PlanePoint::new(0.0, 1.0).unwrap()).unwrap();
        let a = landmarks(BoundaryPoint::ONE, h(0.5));
        let r = landmarks(top, h(0.5));
        for (p, q) in [
            (a.m, r.m),
            (a.n, r.n),
            (a.p, r.p),
            (a.q, r.q),
            (a.m_prime, r.m_prime),
        ] {
            assert!(p.rotate(FRAC_PI_2).distance(q) < 1e-15);
        }
    }

    #[test]
    fn corner_distance_examples() {
        assert_eq!(corner_distance_sq(0.5).unwrap(), 0.375);
        assert!(corner_distance_sq(1e-9).unwrap() < 1e-17);
        assert!(corner_distance_sq(0.0).is_err());
        assert!(corner_distance_sq(1.0).is_err());
        let lm = landmarks(BoundaryPoint::ONE, h(0.3));
        assert!((lm.p.distance_sq(BoundaryPoint::ONE.point()) - 0.153).abs() < 1e-12);
        assert!((corner_distance_sq(0.3).unwrap() - 0.153).abs() < 1e-15);
    }

    #[test]
    fn wedge_distance_examples() {
        assert_eq!(wedge_distance_sq_raw(1.0), 0.75);
        assert!((FRAC_PI_3.sin().powi(2) - 0.75).abs() < 1e-15);
        assert_eq!(wedge_distance_sq(0.5).unwrap(), 0.234375);
        let via_angle = (2.0 * 0.35f64.asin()).sin().powi(2);
        assert!((wedge_distance_sq(0.7).unwrap() - via_angle).abs() < 1e-12);
        assert!(wedge_distance_sq(1.0).is_err());
    }

    #[test]
    fn witness_lies_in_set_but_not_window() {
        let bases = [
            BoundaryPoint::ONE,
            BoundaryPoint::from_angle(FRAC_PI_2).unwrap(),
            BoundaryPoint::from_angle(-2.5).unwrap(),
            BoundaryPoint::from_angle(PI).unwrap(),
        ];
        for b in bases {
            for hv in grid().chain([0.1, 0.6, 0.9]) {
                let w = prop1_witness(b, h(hv));
                assert!(CarlesonSet::new(b, h(hv)).contains(w), "h={hv}");
                assert!(!CarlesonWindow::new(b, h(hv)).contains(w), "h={hv}");
            }
        }
        // φ = (2·asin 0.3 + asin 0.6)/2 = 0.626443208412...
        let w = prop1_witness(BoundaryPoint::ONE, h(0.6));
        assert!((w.arg() - 0.626_443_208_412_04).abs() < 1e-12);
        assert!((w.norm() - 0.810_117_857_934_85).abs() < 1e-12);
    }
}
