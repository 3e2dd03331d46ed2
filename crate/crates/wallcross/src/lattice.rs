//! Integer arithmetic on the rank-3 lattice of Chern characters.
//!
//! On a principally polarized abelian surface with `Pic = <l>` and `l^2 = 2`,
//! the Chern character of an object is a triple `(r, c*l, chi)` with all three
//! entries integral: the rank, the coefficient of the polarization class, and
//! the integrated degree-2 part, which equals the Euler characteristic because
//! the canonical class is trivial. The constants below all have the factor 2
//! from `l^2` baked in; the lattice is not configurable.
//!
//! Derived-category operations descend to this lattice as follows:
//!
//! - tensor product: `(r, c, x) ⊗ (r', c', x') = (rr', rc' + r'c, rx' + r'x + 2cc')`
//! - dual: `(r, c, x)^∨ = (r, -c, x)`
//! - odd shift: `v[1] = -v`
//! - Euler pairing: `chi(v, w) = r_v x_w + r_w x_v - 2 c_v c_w` (symmetric)
//! - Fourier-Mukai transform: `Φ(r, c, x) = (-x, c, -r)`, an involutive isometry
//!
//! The Bogomolov discriminant `Δ(v) = c^2 - r*x` is nonnegative on classes of
//! slope-semistable sheaves and prunes the wall search; nonempty moduli of
//! semistable objects in class `v` have dimension `2Δ(v) + 2`.
//!
//! Twisting by a flat line bundle (class `(1, 0, 0)`) and translating the
//! surface both leave every component unchanged, so they are invisible here:
//! the lattice does not model them, by design.

use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeTuple;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

/// A Chern character `(r, c*l, chi)` on the fixed lattice `Z^3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChernVector {
    /// Rank.
    pub r: i64,
    /// Coefficient of the polarization class `l`.
    pub c: i64,
    /// Integrated ch2; equals the Euler characteristic.
    pub chi: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("the zero class is not a valid query input")]
    ZeroVector,
    #[error("class {0} has negative discriminant {1}; no nonempty moduli")]
    NegativeDiscriminant(ChernVector, i64),
    #[error("kernel classes need a > 0, got a = {0}")]
    NonPositiveRank(i64),
    #[error("kernel classes need gcd(a, b) = 1, got ({0}, {1})")]
    NotCoprime(i64, i64),
}

impl ChernVector {
    /// Unit of the tensor product: the class of the structure sheaf.
    pub const UNIT: ChernVector = ChernVector { r: 1, c: 0, chi: 0 };

    pub const fn new(r: i64, c: i64, chi: i64) -> Self {
        ChernVector { r, c, chi }
    }

    pub fn is_zero(&self) -> bool {
        self.r == 0 && self.c == 0 && self.chi == 0
    }

    /// Lattice tensor product; commutative and associative with unit `(1,0,0)`.
    pub fn tensor(&self, other: &ChernVector) -> ChernVector {
        ChernVector {
            r: self.r * other.r,
            c: self.r * other.c + other.r * self.c,
            chi: self.r * other.chi + other.r * self.chi + 2 * self.c * other.c,
        }
    }

    /// Class of the derived dual.
    pub fn dual(&self) -> ChernVector {
        ChernVector {
            r: self.r,
            c: -self.c,
            chi: self.chi,
        }
    }

    /// Class of the odd homological shift `[1]`.
    pub fn shift(&self) -> ChernVector {
        -*self
    }

    /// Symmetric Euler pairing `chi(v, w)`.
    pub fn euler_pairing(&self, other: &ChernVector) -> i64 {
        self.r * other.chi + other.r * self.chi - 2 * self.c * other.c
    }

    /// Bogomolov discriminant `Δ = c^2 - r*chi`. Nonnegative on classes of
    /// slope-semistable sheaves.
    pub fn discriminant(&self) -> i64 {
        self.c * self.c - self.r * self.chi
    }

    /// Dimension `2Δ + 2` of the moduli space of semistable objects in this
    /// class. Rejects the zero class and classes of negative discriminant
    /// rather than clamping: a silent 0 would mask enumeration bugs.
    pub fn moduli_dim(&self) -> Result<i64, LatticeError> {
        if self.is_zero() {
            return Err(LatticeError::ZeroVector);
        }
        let d = self.discriminant();
        if d < 0 {
            return Err(LatticeError::NegativeDiscriminant(*self, d));
        }
        Ok(2 * d + 2)
    }

    /// Fourier-Mukai action `(r, c, chi) -> (-chi, c, -r)`: an involution and
    /// an isometry of the Euler pairing.
    pub fn fm_transform(&self) -> ChernVector {
        ChernVector {
            r: -self.chi,
            c: self.c,
            chi: -self.r,
        }
    }

    /// Tensor with the class `(1, m, m^2)` of the m-th power of the
    /// polarizing line bundle. Group action: twisting by `m` then `k` equals
    /// twisting by `m + k`.
    pub fn twist_by_l(&self, m: i64) -> ChernVector {
        self.tensor(&ChernVector::new(1, m, m * m))
    }
}

/// Class `(a^2, -a*b, b^2)` of a semi-homogeneous kernel restriction with slope
/// parameter `b/a` in lowest form. Always has discriminant 0.
pub fn kernel_class(a: i64, b: i64) -> Result<ChernVector, LatticeError> {
    if a <= 0 {
        return Err(LatticeError::NonPositiveRank(a));
    }
    if num_integer::gcd(a, b) != 1 {
        return Err(LatticeError::NotCoprime(a, b));
    }
    Ok(ChernVector::new(a * a, -a * b, b * b))
}

impl Add for ChernVector {
    type Output = ChernVector;
    fn add(self, rhs: ChernVector) -> ChernVector {
        ChernVector::new(self.r + rhs.r, self.c + rhs.c, self.chi + rhs.chi)
    }
}

impl Sub for ChernVector {
    type Output = ChernVector;
    fn sub(self, rhs: ChernVector) -> ChernVector {
        ChernVector::new(self.r - rhs.r, self.c - rhs.c, self.chi - rhs.chi)
    }
}

impl Neg for ChernVector {
    type Output = ChernVector;
    fn neg(self) -> ChernVector {
        ChernVector::new(-self.r, -self.c, -self.chi)
    }
}

impl fmt::Display for ChernVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.r, self.c, self.chi)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not a Chern vector of the form r,c,chi: {0:?}")]
pub struct ParseChernVectorError(pub String);

impl FromStr for ChernVector {
    type Err = ParseChernVectorError;

    /// Parses `r,c,chi` (an optional surrounding `( )` is tolerated).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = trimmed.split(',').collect();
        if parts.len() != 3 {
            return Err(ParseChernVectorError(s.to_owned()));
        }
        let parse = |p: &str| {
            p.trim()
                .parse::<i64>()
                .map_err(|_| ParseChernVectorError(s.to_owned()))
        };
        Ok(ChernVector::new(
            parse(parts[0])?,
            parse(parts[1])?,
            parse(parts[2])?,
        ))
    }
}

// JSON representation is the bare 3-element array [r, c, chi].
impl Serialize for ChernVector {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let mut tup = ser.serialize_tuple(3)?;
        tup.serialize_element(&self.r)?;
        tup.serialize_element(&self.c)?;
        tup.serialize_element(&self.chi)?;
        tup.end()
    }
}

impl<'de> Deserialize<'de> for ChernVector {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = ChernVector;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a 3-element integer array [r, c, chi]")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<ChernVector, A::Error> {
                let r = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(0, &self))?;
                let c = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(1, &self))?;
                let chi = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(2, &self))?;
                if seq.next_element::<i64>()?.is_some() {
                    return Err(de::Error::invalid_length(4, &self));
                }
                Ok(ChernVector::new(r, c, chi))
            }
        }
        de.deserialize_tuple(3, V)
    }
}
