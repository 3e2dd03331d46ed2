//! Exact central charges and slopes on the stability half-plane.
//!
//! A point of the half-plane is a pair `(s, u)` of rationals with `u = t^2 > 0`.
//! The central charge of a class `(r, c, chi)` at `(s, t)` expands to
//!
//! ```text
//! Z = -chi + 2sc - r(s^2 - t^2)  +  2it (c - rs)
//! ```
//!
//! and the slope is `-Re Z / Im Z`, infinite exactly when `c - rs = 0`. Storing
//! `u = t^2` keeps every slope comparison exact: the slope is
//! `N / (2t * D)` with `N = chi - 2sc + r(s^2 - u)` and `D = c - rs`, and since
//! `2t > 0` every comparison reduces to signed cross-multiplication of `(N, D)`
//! pairs — `t` itself (often irrational on walls) is never materialized.
//!
//! Slope queries here are purely numerical: whether an object with the given
//! class actually lies in the tilted heart at `s` is sheaf-level information
//! this module does not track.

use crate::lattice::ChernVector;
use crate::rat::serde_ratio;
use num_rational::Rational64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

/// A point `(s, u)` of the stability half-plane, `u = t^2 > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityPoint {
    #[serde(with = "serde_ratio")]
    s: Rational64,
    #[serde(with = "serde_ratio")]
    u: Rational64,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("stability points need u = t^2 > 0, got u = {0}")]
pub struct InvalidStabilityPoint(pub Rational64);

impl StabilityPoint {
    pub fn new(s: Rational64, u: Rational64) -> Result<Self, InvalidStabilityPoint> {
        if u <= Rational64::zero() {
            return Err(InvalidStabilityPoint(u));
        }
        Ok(StabilityPoint { s, u })
    }

    /// Convenience constructor from integer pairs `(sn/sd, un/ud)`.
    pub fn from_ints(sn: i64, sd: i64, un: i64, ud: i64) -> Self {
        StabilityPoint::new(Rational64::new(sn, sd), Rational64::new(un, ud)).expect("positive u")
    }

    pub fn s(&self) -> Rational64 {
        self.s
    }

    /// Squared imaginary part `t^2`.
    pub fn u(&self) -> Rational64 {
        self.u
    }
}

/// A Bridgeland slope value, ordered with `Infinite` above every finite slope.
///
/// A finite value stores the raw pair `(num, den)` with `den > 0`; the
/// mathematical slope is `num / (2t * den)`. Equality and ordering are
/// projective — `(num, den)` and `(k*num, k*den)` compare equal for `k > 0` —
/// so slopes of a class and its positive multiples coincide.
#[derive(Debug, Clone, Copy)]
pub enum SlopeValue {
    Finite {
        num: Rational64,
        /// Imaginary part over `2t`; strictly positive by construction.
        den: Rational64,
    },
    Infinite,
}

impl PartialEq for SlopeValue {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for SlopeValue {}

impl PartialOrd for SlopeValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SlopeValue {
    fn cmp(&self, other: &Self) -> Ordering {
        use SlopeValue::*;
        match (self, other) {
            (Infinite, Infinite) => Ordering::Equal,
            (Infinite, Finite { .. }) => Ordering::Greater,
            (Finite { .. }, Infinite) => Ordering::Less,
            (Finite { num: n1, den: d1 }, Finite { num: n2, den: d2 }) => {
                // both denominators positive, so cross-multiplication preserves order
                (*n1 * *d2).cmp(&(*n2 * *d1))
            }
        }
    }
}

impl fmt::Display for SlopeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SlopeValue::Finite { num, den } => write!(f, "({num})/(2t*{den})"),
            SlopeValue::Infinite => f.write_str("infinity"),
        }
    }
}

/// Real part and imaginary-part-over-`2t` of the central charge of `v` at `p`.
/// The true charge is `re + i * 2t * im_over_2t`.
pub fn charge_components(v: &ChernVector, p: &StabilityPoint) -> (Rational64, Rational64) {
    let r = Rational64::from_integer(v.r);
    let c = Rational64::from_integer(v.c);
    let chi = Rational64::from_integer(v.chi);
    let re = -chi + Rational64::from_integer(2) * p.s * c - r * (p.s * p.s - p.u);
    let im_over_2t = c - r * p.s;
    (re, im_over_2t)
}

/// Slope of `v` at `p`: `Finite(-re, im/2t)` normalized to a positive stored
/// denominator, or `Infinite` when the imaginary part vanishes.
pub fn slope(v: &ChernVector, p: &StabilityPoint) -> SlopeValue {
    let (re, im) = charge_components(v, p);
    if im.is_zero() {
        return SlopeValue::Infinite;
    }
    let (num, den) = if im > Rational64::zero() {
        (-re, im)
    } else {
        (re, -im)
    };
    SlopeValue::Finite { num, den }
}

/// Exact ordering of the slopes of `v` and `w` at `p`. Two infinite slopes
/// compare `Equal`; an infinite slope exceeds every finite one.
pub fn slope_compare(v: &ChernVector, w: &ChernVector, p: &StabilityPoint) -> Ordering {
    slope(v, p).cmp(&slope(w, p))
}

/// Necessary numerical condition for `w` to be the class of a proper
/// destabilizing subobject of `v` at `p`: both imaginary parts positive and
/// strictly sandwiched, `0 < Im Z(w) < Im Z(v)`.
pub fn sandwich_test(v: &ChernVector, w: &ChernVector, p: &StabilityPoint) -> bool {
    let im_v = Rational64::from_integer(v.c) - Rational64::from_integer(v.r) * p.s;
    let im_w = Rational64::from_integer(w.c) - Rational64::from_integer(w.r) * p.s;
    Rational64::zero() < im_w && im_w < im_v
}
