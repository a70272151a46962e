//! Admissible constants `c > 1` for the inclusions
//! `W(b, h/c) ⊂ S(b, h)` and `S(b, h) ⊂ W(b, ch)`.
//!
//! The window-in-set inclusion is governed by the corner cubic
//! `2c - c³ <= h`; the set-in-window inclusion by the wedge quadratic
//! `h²y² - 4y + 4 <= 0` in `y = c²` together with the cap `ch < 1`. Both
//! hold together on `[max(cubic root, wedge root), 1/h)`, which is nonempty
//! exactly when `h < √3/2`.

use std::f64::consts::SQRT_2;

use crate::error::{domain, Error, Result};

/// `√3/2`, the largest height (exclusive) for which a set-in-window constant
/// exists.
pub const SQRT3_OVER_2: f64 = 0.866_025_403_784_438_6;

pub const DEFAULT_TOL: f64 = 1e-12;

pub const MAX_BISECTIONS: usize = 200;

/// Bracket for the crossover root.
pub const CROSSOVER_BRACKET: (f64, f64) = (0.82, 0.83);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootResult {
    pub value: f64,
    pub residual: f64,
    pub iterations: usize,
}

fn check_height(h: f64) -> Result<()> {
    if h > 0.0 && h < 1.0 {
        Ok(())
    } else {
        Err(domain("h", h, "(0, 1)"))
    }
}

fn check_below_threshold(h: f64) -> Result<()> {
    if h > 0.0 && h < SQRT3_OVER_2 {
        Ok(())
    } else {
        Err(domain("h", h, "(0, sqrt(3)/2)"))
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(domain("tol", tol, "(0, inf)"))
    }
}

#[inline]
fn cubic(x: f64) -> f64 {
    2.0 * x - x * x * x
}

#[inline]
fn wedge_quadratic(h: f64, c: f64) -> f64 {
    let y = c * c;
    h * h * y * y - 4.0 * y + 4.0
}

/// Bisection for a function that is positive at `lo` and non-positive at
/// `hi`. The returned point is always the `hi` end of the final bracket, so
/// `g(value) <= 0` holds exactly as evaluated.
fn bisect_decreasing(
    mut lo: f64,
    mut hi: f64,
    g: impl Fn(f64) -> f64,
    tol: f64,
) -> Result<RootResult> {
    let mut g_hi = g(hi);
    if !(g(lo) > 0.0 && g_hi <= 0.0) {
        return Err(Error::NoBracket { lo, hi });
    }
    for iterations in 0..=MAX_BISECTIONS {
        if g_hi.abs() <= tol {
            return Ok(RootResult {
                value: hi,
                residual: g_hi,
                iterations,
            });
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let g_mid = g(mid);
        if g_mid > 0.0 {
            lo = mid;
        } else {
            hi = mid;
            g_hi = g_mid;
        }
    }
    Err(Error::NoConvergence {
        tol,
        iterations: MAX_BISECTIONS,
    })
}

/// The corner cubic `2x - x³` on `x > 1`, strictly decreasing there.
pub fn corner_cubic(x: f64) -> Result<f64> {
    if !(x > 1.0 && x.is_finite()) {
        return Err(domain("x", x, "(1, inf)"));
    }
    Ok(cubic(x))
}

/// The unique `c ∈ (1, √2)` with `2c - c³ = h`, by bisection on `[1, √2]`.
///
/// The returned root always satisfies `2c - c³ <= h`, so it belongs to the
/// ray of admissible constants as evaluated.
pub fn corner_cubic_inverse(h: f64, tol: f64) -> Result<RootResult> {
    check_height(h)?;
    check_tol(tol)?;
    bisect_decreasing(1.0, SQRT_2, |c| cubic(c) - h, tol)
}

/// Lower end of the set-in-window range,
/// `(√2/h)·√(1 - √(1 - h²))`, evaluated as `√(2 / (1 + √(1 - h²)))` to avoid
/// cancellation for small `h`.
pub fn wedge_lower_bound(h: f64) -> Result<f64> {
    check_height(h)?;
    Ok(wedge_lower_bound_raw(h))
}

fn wedge_lower_bound_raw(h: f64) -> f64 {
    let root = ((1.0 - h) * (1.0 + h)).sqrt();
    (2.0 / (1.0 + root)).sqrt()
}

/// Both roots in `c` of `h²c⁴ - 4c² + 4 = 0`, from the quadratic formula in
/// `y = c²`, before the `ch < 1` cap is applied.
pub fn wedge_quadratic_roots(h: f64) -> Result<(f64, f64)> {
    check_height(h)?;
    Ok(wedge_quadratic_roots_raw(h))
}

fn wedge_quadratic_roots_raw(h: f64) -> (f64, f64) {
    let a = h * h;
    let disc = 16.0 * (1.0 - h) * (1.0 + h);
    let sq = disc.sqrt();
    let y_low = (4.0 - sq) / (2.0 * a);
    let y_high = (4.0 + sq) / (2.0 * a);
    (y_low.sqrt(), y_high.sqrt())
}

/// `F(h) = f(k(h)) - h`: positive while the cubic root dominates the combined
/// lower bound, negative once the wedge root does.
pub fn crossover_gap(h: f64) -> Result<f64> {
    check_below_threshold(h)?;
    Ok(crossover_gap_raw(h))
}

fn crossover_gap_raw(h: f64) -> f64 {
    cubic(wedge_lower_bound_raw(h)) - h
}

/// Root `h₀ ≈ 0.82056` of [`crossover_gap`], by bisection on `[0.82, 0.83]`.
pub fn solve_crossover(tol: f64) -> Result<RootResult> {
    check_tol(tol)?;
    let (lo, hi) = CROSSOVER_BRACKET;
    bisect_decreasing(lo, hi, crossover_gap_raw, tol)
}

/// Combined lower bound `max(cubic root, wedge root)` for `h < √3/2`.
pub fn combined_lower_bound(h: f64, tol: f64) -> Result<f64> {
    check_below_threshold(h)?;
    let cubic_root = corner_cubic_inverse(h, tol)?.value;
    Ok(cubic_root.max(wedge_lower_bound_raw(h)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IntervalKind {
    /// `[cubic root, ∞)` for `W(b, h/c) ⊂ S(b, h)`.
    WindowInSetRay,
    /// `[wedge root, 1/h)` for `S(b, h) ⊂ W(b, ch)`.
    SetInWindow,
    /// `[combined bound, 1/h)` for both inclusions at once.
    Sandwich,
    Empty,
}

/// A range of admissible constants `c`, closed at the lower end and open at
/// the upper end (`upper = ∞` for a ray).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdmissibleInterval {
    kind: IntervalKind,
    lower: f64,
    upper: f64,
}

impl AdmissibleInterval {
    pub const EMPTY: AdmissibleInterval = AdmissibleInterval {
        kind: IntervalKind::Empty,
        lower: f64::NAN,
        upper: f64::NAN,
    };

    fn bounded(kind: IntervalKind, lower: f64, upper: f64) -> Self {
        if lower < upper {
            AdmissibleInterval { kind, lower, upper }
        } else {
            Self::EMPTY
        }
    }

    pub fn kind(&self) -> IntervalKind {
        self.kind
    }

    pub fn is_empty(&self) -> bool {
        self.kind == IntervalKind::Empty
    }

    pub fn lower(&self) -> Option<f64> {
        (!self.is_empty()).then_some(self.lower)
    }

    /// `f64::INFINITY` for a ray.
    pub fn upper(&self) -> Option<f64> {
        (!self.is_empty()).then_some(self.upper)
    }

    pub fn contains(&self, c: f64) -> bool {
        !self.is_empty() && self.lower <= c && c < self.upper
    }

    /// Whether the closed range `[a, b]` lies inside.
    pub fn contains_closed(&self, a: f64, b: f64) -> bool {
        self.contains(a) && self.contains(b)
    }

    pub fn midpoint(&self) -> Option<f64> {
        match self.kind {
            IntervalKind::Empty | IntervalKind::WindowInSetRay => None,
            _ => Some(0.5 * (self.lower + self.upper)),
        }
    }
}

/// Ray of constants with `W(b, h/c) ⊂ S(b, h)`.
pub fn window_in_set_ray(h: f64, tol: f64) -> Result<AdmissibleInterval> {
    let lower = corner_cubic_inverse(h, tol)?.value;
    Ok(AdmissibleInterval {
        kind: IntervalKind::WindowInSetRay,
        lower,
        upper: f64::INFINITY,
    })
}

/// Constants with `S(b, h) ⊂ W(b, ch)`; empty for `h >= √3/2`.
pub fn set_in_window_interval(h: f64) -> Result<AdmissibleInterval> {
    check_height(h)?;
    if h >= SQRT3_OVER_2 {
        return Ok(AdmissibleInterval::EMPTY);
    }
    Ok(AdmissibleInterval::bounded(
        IntervalKind::SetInWindow,
        wedge_lower_bound_raw(h),
        1.0 / h,
    ))
}

/// Constants with `W(b, h/c) ⊂ S(b, h) ⊂ W(b, ch)`; empty for `h >= √3/2`.
pub fn sandwich_interval(h: f64, tol: f64) -> Result<AdmissibleInterval> {
    check_height(h)?;
    check_tol(tol)?;
    if h >= SQRT3_OVER_2 {
        return Ok(AdmissibleInterval::EMPTY);
    }
    Ok(AdmissibleInterval::bounded(
        IntervalKind::Sandwich,
        combined_lower_bound(h, tol)?,
        1.0 / h,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Inclusion {
    /// `W(b, h/c) ⊂ S(b, h)`
    WindowInSet,
    /// `S(b, h) ⊂ W(b, ch)`
    SetInWindow,
    /// Both of the above.
    Sandwich,
}

// Rounding allowance for the direct inequality tests, relative to the size of
// the terms being summed. Keeps a solved endpoint inside its own interval.
const ROUNDING_SLACK: f64 = 8.0 * f64::EPSILON;

fn corner_condition(h: f64, c: f64) -> bool {
    let scale = 2.0 * c + c * c * c + h;
    cubic(c) - h <= ROUNDING_SLACK * scale
}

fn wedge_condition(h: f64, c: f64) -> bool {
    let y = c * c;
    let scale = h * h * y * y + 4.0 * y + 4.0;
    wedge_quadratic(h, c) <= ROUNDING_SLACK * scale && c * h < 1.0
}

/// Decides an inclusion straight from its defining inequalities rather than
/// through the solved endpoints.
pub fn analytic_verdict(which: Inclusion, h: f64, c: f64) -> Result<bool> {
    check_height(h)?;
    if !(c > 1.0 && c.is_finite()) {
        return Err(domain("c", c, "(1, inf)"));
    }
    Ok(match which {
        Inclusion::WindowInSet => corner_condition(h, c),
        Inclusion::SetInWindow => wedge_condition(h, c),
        Inclusion::Sandwich => corner_condition(h, c) && wedge_condition(h, c),
    })
}
