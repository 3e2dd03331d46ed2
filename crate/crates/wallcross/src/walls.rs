//! Walls, chambers, wall counts and the pseudo-wall search.
//!
//! Fix a class `v`. For every candidate class `w`, the locus where the slopes
//! of `v` and `w` agree is obtained by cross-multiplying the two slopes:
//!
//! ```text
//! (r_w c_v - r_v c_w)(u + s^2) + (r_v x_w - r_w x_v) s + (x_v c_w - x_w c_v) = 0
//! ```
//!
//! a circle centred on the `s`-axis when the leading coefficient is nonzero, a
//! vertical line when only the linear coefficient survives, and nothing when the
//! locus is empty or `w` is proportional to `v`. All coefficients are integers,
//! so wall centres and squared radii are exact rationals.
//!
//! Two searches coexist deliberately:
//!
//! - [`actual_walls`] is the curated list for the twisted ideal-sheaf classes
//!   `(1, 2, 4-n)`: the rank-one family indexed by `0 <= m < (n-2)/2` plus the
//!   single higher-rank wall, which exists only for `n = 5`.
//! - [`enumerate_pseudo_walls`] is a complete numerical superset: every class
//!   `w` within a rank bound that passes the Bogomolov test on both sides
//!   (`Δ(w) >= 0` and `Δ(v-w) >= 0`) and whose wall carries a point inside the
//!   region where the imaginary parts strictly sandwich (`0 < Im w < Im v`).
//!
//! That the two coincide along `s = 0` is a verified statement, not an
//! assumption — the acceptance suite compares them exhaustively. Off that line
//! pseudo-walls can genuinely outnumber actual walls: for `n = 2` the search
//! reports the circle through `(1/2, 1/4)` with witness `(1,1,1)` inside
//! `0 < s < 1`, a locus whose actual status is not settled by the numerics.
//! Callers should treat pseudo-walls outside the documented families as
//! candidates only.

use crate::lattice::ChernVector;
use crate::rat::{int_lower_bound, int_upper_bound, serde_ratio, serde_ratio_opt};
use num_rational::Rational64;
use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

type Rat = Rational64;

fn rat(n: i64) -> Rat {
    Rat::from_integer(n)
}

/// Geometric shape of a wall in the `(s, u)` half-plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WallShape {
    Circle {
        #[serde(with = "serde_ratio")]
        center_s: Rat,
        #[serde(with = "serde_ratio")]
        radius_sq: Rat,
    },
    Vertical {
        #[serde(with = "serde_ratio")]
        s: Rat,
    },
}

impl WallShape {
    /// Height `u` at which the wall crosses the line `s = 0`, if it does.
    pub fn u_at_s0(&self) -> Option<Rat> {
        match self {
            WallShape::Circle {
                center_s,
                radius_sq,
            } => {
                let u = *radius_sq - *center_s * *center_s;
                (u > Rat::zero()).then_some(u)
            }
            WallShape::Vertical { .. } => None,
        }
    }

    fn center_coordinate(&self) -> Rat {
        match self {
            WallShape::Circle { center_s, .. } => *center_s,
            WallShape::Vertical { s } => *s,
        }
    }
}

/// A wall together with the destabilizer classes that produce it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wall {
    pub shape: WallShape,
    /// Destabilizer classes on this locus, deduplicated under the
    /// sub/quotient symmetry `w <-> v - w`.
    pub witnesses: Vec<ChernVector>,
}

impl Wall {
    pub fn u_at_s0(&self) -> Option<Rat> {
        self.shape.u_at_s0()
    }
}

impl Serialize for Wall {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let mut st = ser.serialize_struct("Wall", 3)?;
        st.serialize_field("shape", &self.shape)?;
        st.serialize_field("witnesses", &self.witnesses)?;
        st.serialize_field(
            "u_at_s0",
            &self.u_at_s0().map(|u| crate::rat::format_rational(&u)),
        )?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Wall {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct WallFields {
            shape: WallShape,
            witnesses: Vec<ChernVector>,
        }
        let fields = WallFields::deserialize(de)?;
        Ok(Wall {
            shape: fields.shape,
            witnesses: fields.witnesses,
        })
    }
}

/// Search window in the half-plane: `s` in `[s_min, s_max)`, `u` in
/// `(0, u_max]` (unbounded above when `u_max` is `None`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Region {
    #[serde(with = "serde_ratio")]
    pub s_min: Rat,
    #[serde(with = "serde_ratio")]
    pub s_max: Rat,
    #[serde(with = "serde_ratio_opt")]
    pub u_max: Option<Rat>,
}

impl Region {
    pub fn new(s_min: Rat, s_max: Rat, u_max: Option<Rat>) -> Result<Self, WallError> {
        if s_min >= s_max {
            return Err(WallError::InvalidRegion { s_min, s_max });
        }
        if let Some(u) = u_max {
            if u <= Rat::zero() {
                return Err(WallError::InvalidUMax(u));
            }
        }
        Ok(Region {
            s_min,
            s_max,
            u_max,
        })
    }
}

/// Open chamber along the line `s = 0`, between consecutive wall crossings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chamber {
    pub label: String,
    #[serde(with = "serde_ratio")]
    pub u_lo: Rat,
    /// `None` for the unbounded top chamber.
    #[serde(with = "serde_ratio_opt")]
    pub u_hi: Option<Rat>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WallError {
    #[error("the zero class has no walls")]
    ZeroVector,
    #[error("invalid region: s_min = {s_min} must be below s_max = {s_max}")]
    InvalidRegion { s_min: Rat, s_max: Rat },
    #[error("invalid region: u_max = {0} must be positive")]
    InvalidUMax(Rat),
    #[error("rank bound must be at least 1")]
    RankBoundTooSmall,
    #[error("class {0} has negative discriminant; the search is not defined")]
    NegativeDiscriminant(ChernVector),
    #[error("candidate family r = {r}, c = {c} admits unboundedly many classes in this region")]
    UnboundedCandidateFamily { r: i64, c: i64 },
    #[error("no rank-one wall for n = {n}, m = {m}: need 0 <= m < (n-2)/2")]
    NoRankOneWall { n: u32, m: u32 },
    #[error("collinear length k = {k} out of range for n = {n}: need 2 <= k <= n")]
    BadCollinearLength { n: u32, k: u32 },
}

/// Wall on which the slopes of `v` and `w` agree.
///
/// Returns `Ok(None)` when the locus is empty (`radius_sq <= 0`), when `w` is
/// proportional to `v` (the locus is everything), or when either class has
/// identically infinite slope (`r = c = 0`). Rejects the zero class.
pub fn wall_between(v: &ChernVector, w: &ChernVector) -> Result<Option<Wall>, WallError> {
    if v.is_zero() || w.is_zero() {
        return Err(WallError::ZeroVector);
    }
    if (v.r == 0 && v.c == 0) || (w.r == 0 && w.c == 0) {
        return Ok(None);
    }
    // coefficients of (u + s^2), s, 1 in the cross-multiplied slope equality
    let quad = w.r * v.c - v.r * w.c;
    let lin = v.r * w.chi - w.r * v.chi;
    let cst = v.chi * w.c - w.chi * v.c;
    if quad == 0 {
        if lin == 0 {
            return Ok(None);
        }
        return Ok(Some(Wall {
            shape: WallShape::Vertical {
                s: Rat::new(-cst, lin),
            },
            witnesses: vec![*w],
        }));
    }
    let center_s = Rat::new(-lin, 2 * quad);
    let radius_sq = center_s * center_s - Rat::new(cst, quad);
    if radius_sq <= Rat::zero() {
        return Ok(None);
    }
    Ok(Some(Wall {
        shape: WallShape::Circle {
            center_s,
            radius_sq,
        },
        witnesses: vec![*w],
    }))
}

/// Canonical representative of the sub/quotient pair `{w, v - w}`: the member
/// with lexicographically smaller `(|r|, |c|, |chi|)`, ties broken by the
/// plain field ordering.
pub fn canonical_witness(v: &ChernVector, w: &ChernVector) -> ChernVector {
    let alt = *v - *w;
    let key = |x: &ChernVector| (x.r.abs(), x.c.abs(), x.chi.abs());
    match key(w).cmp(&key(&alt)) {
        Ordering::Less => *w,
        Ordering::Greater => alt,
        Ordering::Equal => {
            if (w.r, w.c, w.chi) <= (alt.r, alt.c, alt.chi) {
                *w
            } else {
                alt
            }
        }
    }
}

/// The `m`-indexed rank-one wall for the class `(1, 2, 4-n)`: destabilizers of
/// rank 1 and degree 1 whose quotient carries `m` extra points. Valid for
/// `0 <= m < (n-2)/2`; the circle crosses `s = 0` at `u = n - 2 - 2m`.
pub fn rank_one_wall(n: u32, m: u32) -> Result<Wall, WallError> {
    let (ni, mi) = (i64::from(n), i64::from(m));
    if n < 3 || 2 * mi >= ni - 2 {
        return Err(WallError::NoRankOneWall { n, m });
    }
    let center_s = Rat::new(-(ni - mi - 3), 2);
    let radius_sq = center_s * center_s + rat(ni - 2 - 2 * mi);
    Ok(Wall {
        shape: WallShape::Circle {
            center_s,
            radius_sq,
        },
        witnesses: vec![ChernVector::new(1, 1, 1 - mi)],
    })
}

/// Number of actual walls for the class `(1, 2, 4-n)`: `floor((n-1)/2)`,
/// except that `n = 5` carries one extra (higher-rank) wall.
pub fn wall_count(n: u32) -> usize {
    if n == 5 {
        3
    } else {
        (n.saturating_sub(1) / 2) as usize
    }
}

/// The curated walls for the class `(1, 2, 4-n)`, ordered by decreasing
/// crossing height at `s = 0`. Empty for `n < 3`.
pub fn actual_walls(n: u32) -> Vec<Wall> {
    let mut walls = Vec::new();
    if n < 3 {
        return walls;
    }
    let mut m = 0;
    while 2 * i64::from(m) < i64::from(n) - 2 {
        walls.push(rank_one_wall(n, m).expect("m in range"));
        m += 1;
    }
    if n == 5 {
        let v = ChernVector::new(1, 2, -1);
        let hr = wall_between(&v, &ChernVector::new(-1, 1, -1))
            .expect("nonzero")
            .expect("genuine wall");
        walls.push(hr);
    }
    sort_walls(&mut walls);
    walls
}

/// Coefficients, up to degree `max_n`, of the power series of
///
/// ```text
/// x^3 (1 + x^2 - x^3 - x^4 + x^5) / ((1 + x)(1 - x)^2)
/// ```
///
/// computed by exact polynomial long division. Coefficient `n` is the wall
/// count for length-`n` ideal-sheaf twists, including the `n = 5` exception.
pub fn series_coefficients(max_n: u32) -> Vec<i64> {
    let len = max_n as usize + 1;
    // numerator x^3 + x^5 - x^6 - x^7 + x^8; denominator 1 - x - x^2 + x^3
    let numerator = |k: usize| -> i64 {
        match k {
            3 | 5 | 8 => 1,
            6 | 7 => -1,
            _ => 0,
        }
    };
    let mut coeffs = vec![0i64; len];
    for k in 0..len {
        let mut a = numerator(k);
        if k >= 1 {
            a += coeffs[k - 1];
        }
        if k >= 2 {
            a += coeffs[k - 2];
        }
        if k >= 3 {
            a -= coeffs[k - 3];
        }
        coeffs[k] = a;
    }
    coeffs
}

/// Squared stability threshold `max(0, 2k - n - 2)` for an ideal-sheaf twist
/// of length `n` whose maximal collinear subscheme has length `k`.
pub fn threshold_u(n: u32, k: u32) -> Result<Rat, WallError> {
    if k < 2 || k > n {
        return Err(WallError::BadCollinearLength { n, k });
    }
    let value = 2 * i64::from(k) - i64::from(n) - 2;
    Ok(rat(value.max(0)))
}

/// Open chamber decomposition of the ray `s = 0`, labelled `M_0` (topmost,
/// unbounded) down to `M_{wall_count}`.
pub fn chambers(n: u32) -> Vec<Chamber> {
    let crossings: Vec<Rat> = actual_walls(n)
        .iter()
        .map(|w| w.u_at_s0().expect("actual walls cross s = 0"))
        .collect();
    let mut out = Vec::with_capacity(crossings.len() + 1);
    let mut upper: Option<Rat> = None;
    for (i, &u) in crossings.iter().enumerate() {
        out.push(Chamber {
            label: format!("M_{i}"),
            u_lo: u,
            u_hi: upper,
        });
        upper = Some(u);
    }
    out.push(Chamber {
        label: format!("M_{}", crossings.len()),
        u_lo: Rat::zero(),
        u_hi: upper,
    });
    out
}

/// Exhaustive pseudo-wall search for `v` over candidate destabilizers `w`
/// with `|r_w| <= rank_bound`.
///
/// A candidate survives when all of the following hold:
///
/// 1. `Δ(w) >= 0` and `Δ(v - w) >= 0` (Bogomolov on both sides),
/// 2. the wall between `v` and `w` exists, and
/// 3. some point of the wall lies inside the region, has `u > 0`, and
///    strictly sandwiches the imaginary parts, `0 < Im w < Im v`.
///
/// For each rank the sandwich condition confines the degree to a finite
/// interval; the two discriminant inequalities plus the wall-point
/// parametrization then confine `chi`. Should every bound on one side be
/// vacuous for some family — possible only for exotic ambient classes — the
/// family is reported as an error instead of looping.
///
/// Output walls are deduplicated by shape with witness sets merged and
/// canonicalized, then ordered by decreasing crossing at `s = 0` with walls
/// missing that crossing appended by centre.
pub fn enumerate_pseudo_walls(
    v: &ChernVector,
    region: &Region,
    rank_bound: u32,
) -> Result<Vec<Wall>, WallError> {
    if v.is_zero() {
        return Err(WallError::ZeroVector);
    }
    if v.discriminant() < 0 {
        return Err(WallError::NegativeDiscriminant(*v));
    }
    if rank_bound < 1 {
        return Err(WallError::RankBoundTooSmall);
    }
    Region::new(region.s_min, region.s_max, region.u_max)?;

    let mut found: BTreeMap<WallShape, BTreeSet<ChernVector>> = BTreeMap::new();
    let bound = i64::from(rank_bound);
    for r_w in -bound..=bound {
        let (c_lo, c_hi) = degree_range(v, region, r_w);
        for c_w in c_lo..=c_hi {
            let Some(sandwich) = sandwich_interval(v, region, r_w, c_w) else {
                continue;
            };
            let (chi_lo, chi_hi) = chi_range(v, r_w, c_w, &sandwich)?;
            for chi_w in chi_lo..=chi_hi {
                let w = ChernVector::new(r_w, c_w, chi_w);
                if w.is_zero() || w.discriminant() < 0 || (*v - w).discriminant() < 0 {
                    continue;
                }
                let Some(wall) = wall_between(v, &w)? else {
                    continue;
                };
                if !wall_meets_sandwich(&wall.shape, &sandwich, region.u_max) {
                    continue;
                }
                found
                    .entry(wall.shape)
                    .or_default()
                    .insert(canonical_witness(v, &w));
            }
        }
    }

    let mut walls: Vec<Wall> = found
        .into_iter()
        .map(|(shape, witnesses)| Wall {
            shape,
            witnesses: witnesses.into_iter().collect(),
        })
        .collect();
    sort_walls(&mut walls);
    Ok(walls)
}

/// True when the wall shape carries a point inside the given `s`-window with
/// `0 < u <= u_max`. Used by the renderer for window clipping; the sandwich
/// filter of the enumerator goes through the same interval machinery.
pub fn wall_intersects_strip(
    shape: &WallShape,
    s_min: Rat,
    s_max: Rat,
    u_max: Option<Rat>,
) -> bool {
    let window = RatInterval {
        lo: Some((s_min, true)),
        hi: Some((s_max, true)),
        empty: s_min > s_max,
    };
    wall_meets_sandwich(shape, &window, u_max)
}

// ---------------------------------------------------------------------------
// candidate bounds
// ---------------------------------------------------------------------------

/// Degrees `c_w` compatible with the sandwich condition somewhere in the
/// closed `s`-hull of the region: `c_w > min(r_w s)` and
/// `c_w < c_v + max((r_w - r_v) s)`.
fn degree_range(v: &ChernVector, region: &Region, r_w: i64) -> (i64, i64) {
    let lo = (rat(r_w) * region.s_min).min(rat(r_w) * region.s_max);
    let hi = rat(v.c) + (rat(r_w - v.r) * region.s_min).max(rat(r_w - v.r) * region.s_max);
    (int_lower_bound(lo, true), int_upper_bound(hi, true))
}

/// Integer range of `chi_w` compatible with both Bogomolov inequalities and
/// with the wall carrying a sandwich point. On the wall, at a sandwich point
/// `(s, u)`,
///
/// ```text
/// chi_w = (A(u + s^2) + chi_v * f(s)) / g(s),   A = r_w c_v - r_v c_w,
/// ```
///
/// with `f/g` in `(0, 1)` and `g` bounded by its values at the ends of the
/// sandwich interval; this yields the bound on the side the discriminants
/// leave open.
fn chi_range(
    v: &ChernVector,
    r_w: i64,
    c_w: i64,
    sandwich: &RatInterval,
) -> Result<(i64, i64), WallError> {
    let (sig_lo, _) = sandwich.lo.expect("sandwich interval is bounded");
    let (sig_hi, _) = sandwich.hi.expect("sandwich interval is bounded");
    let min_s_sq = if sig_lo <= Rat::zero() && Rat::zero() <= sig_hi {
        Rat::zero()
    } else {
        (sig_lo * sig_lo).min(sig_hi * sig_hi)
    };
    let g_at = |s: Rat| rat(v.c) - rat(v.r) * s;
    let g_max = g_at(sig_lo).max(g_at(sig_hi));
    debug_assert!(g_max > Rat::zero());

    let a = r_w * v.c - v.r * c_w;
    // (value, strict)
    let mut lowers: Vec<(Rat, bool)> = Vec::new();
    let mut uppers: Vec<(Rat, bool)> = Vec::new();

    if r_w > 0 {
        uppers.push((Rat::new(c_w * c_w, r_w), false));
    } else if r_w < 0 {
        lowers.push((Rat::new(c_w * c_w, r_w), false));
    }
    let dr = v.r - r_w;
    if dr != 0 {
        let b = rat(v.chi) - Rat::new((v.c - c_w) * (v.c - c_w), dr);
        if dr > 0 {
            lowers.push((b, false));
        } else {
            uppers.push((b, false));
        }
    }
    let chi_v = rat(v.chi);
    match a.cmp(&0) {
        Ordering::Greater => {
            lowers.push((rat(a) * min_s_sq / g_max + chi_v.min(Rat::zero()), true));
        }
        Ordering::Less => {
            uppers.push((rat(a) * min_s_sq / g_max + chi_v.max(Rat::zero()), true));
        }
        Ordering::Equal => {
            let strict = v.chi != 0;
            lowers.push((chi_v.min(Rat::zero()), strict));
            uppers.push((chi_v.max(Rat::zero()), strict));
        }
    }

    if lowers.is_empty() || uppers.is_empty() {
        return Err(WallError::UnboundedCandidateFamily { r: r_w, c: c_w });
    }
    let chi_lo = lowers
        .iter()
        .map(|&(val, strict)| int_lower_bound(val, strict))
        .max()
        .unwrap();
    let chi_hi = uppers
        .iter()
        .map(|&(val, strict)| int_upper_bound(val, strict))
        .min()
        .unwrap();
    Ok((chi_lo, chi_hi))
}

// ---------------------------------------------------------------------------
// exact interval logic
// ---------------------------------------------------------------------------

/// Interval of `s` with rational endpoints and open/closed flags.
#[derive(Debug, Clone, Copy)]
struct RatInterval {
    lo: Option<(Rat, bool)>,
    hi: Option<(Rat, bool)>,
    empty: bool,
}

impl RatInterval {
    fn all() -> Self {
        RatInterval {
            lo: None,
            hi: None,
            empty: false,
        }
    }

    fn empty() -> Self {
        RatInterval {
            lo: None,
            hi: None,
            empty: true,
        }
    }

    fn normalize(mut self) -> Self {
        if self.empty {
            return Self::empty();
        }
        if let (Some((lo, lo_closed)), Some((hi, hi_closed))) = (self.lo, self.hi) {
            match lo.cmp(&hi) {
                Ordering::Greater => return Self::empty(),
                Ordering::Equal if !(lo_closed && hi_closed) => return Self::empty(),
                _ => {}
            }
        }
        self.empty = false;
        self
    }

    fn clamp_lo(mut self, value: Rat, closed: bool) -> Self {
        match self.lo {
            Some((cur, cur_closed)) => match value.cmp(&cur) {
                Ordering::Greater => self.lo = Some((value, closed)),
                Ordering::Equal => self.lo = Some((cur, cur_closed && closed)),
                Ordering::Less => {}
            },
            None => self.lo = Some((value, closed)),
        }
        self.normalize()
    }

    fn clamp_hi(mut self, value: Rat, closed: bool) -> Self {
        match self.hi {
            Some((cur, cur_closed)) => match value.cmp(&cur) {
                Ordering::Less => self.hi = Some((value, closed)),
                Ordering::Equal => self.hi = Some((cur, cur_closed && closed)),
                Ordering::Greater => {}
            },
            None => self.hi = Some((value, closed)),
        }
        self.normalize()
    }

    /// Intersects with the strict solution set of `coeff * s + constant > 0`.
    fn restrict_linear_positive(self, coeff: Rat, constant: Rat) -> Self {
        if self.empty {
            return self;
        }
        if coeff.is_zero() {
            return if constant > Rat::zero() {
                self
            } else {
                Self::empty()
            };
        }
        let root = -constant / coeff;
        if coeff > Rat::zero() {
            self.clamp_lo(root, false)
        } else {
            self.clamp_hi(root, false)
        }
    }

    fn contains(&self, s: Rat) -> bool {
        if self.empty {
            return false;
        }
        if let Some((lo, closed)) = self.lo {
            if s < lo || (s == lo && !closed) {
                return false;
            }
        }
        if let Some((hi, closed)) = self.hi {
            if s > hi || (s == hi && !closed) {
                return false;
            }
        }
        true
    }
}

/// Endpoint algebra for circle arcs: values are rational or `k ± sqrt(d)`.
#[derive(Debug, Clone, Copy)]
enum EndVal {
    Exact(Rat),
    /// `k + sqrt(d)` when `plus`, else `k - sqrt(d)`; `d > 0`.
    Quad {
        k: Rat,
        plus: bool,
        d: Rat,
    },
}

fn quad_end(k: Rat, plus: bool, d: Rat) -> EndVal {
    debug_assert!(d >= Rat::zero());
    if d.is_zero() {
        EndVal::Exact(k)
    } else {
        EndVal::Quad { k, plus, d }
    }
}

fn cmp_end(a: &EndVal, b: &EndVal) -> Ordering {
    match (a, b) {
        (EndVal::Exact(x), EndVal::Exact(y)) => x.cmp(y),
        (EndVal::Exact(q), EndVal::Quad { k, plus, d }) => cmp_rat_quad(*q, *k, *plus, *d),
        (EndVal::Quad { k, plus, d }, EndVal::Exact(q)) => {
            cmp_rat_quad(*q, *k, *plus, *d).reverse()
        }
        (
            EndVal::Quad {
                k: k1,
                plus: p1,
                d: d1,
            },
            EndVal::Quad {
                k: k2,
                plus: p2,
                d: d2,
            },
        ) => {
            // arc and band endpoints always share the circle centre
            assert_eq!(k1, k2, "quadratic endpoints from different circles");
            match (p1, p2) {
                (true, true) => d1.cmp(d2),
                (false, false) => d2.cmp(d1),
                (false, true) => Ordering::Less,
                (true, false) => Ordering::Greater,
            }
        }
    }
}

/// Compares a rational `q` against `k ± sqrt(d)` with `d > 0`.
fn cmp_rat_quad(q: Rat, k: Rat, plus: bool, d: Rat) -> Ordering {
    if plus {
        let x = q - k;
        if x <= Rat::zero() {
            Ordering::Less
        } else {
            (x * x).cmp(&d)
        }
    } else {
        let x = k - q;
        if x <= Rat::zero() {
            Ordering::Greater
        } else {
            (x * x).cmp(&d).reverse()
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct ArcBand {
    lo: EndVal,
    lo_closed: bool,
    hi: EndVal,
    hi_closed: bool,
}

/// True when the rational interval meets the band.
fn band_intersects(rs: &RatInterval, band: &ArcBand) -> bool {
    if rs.empty {
        return false;
    }
    let (mut lo, mut lo_closed) = (band.lo, band.lo_closed);
    if let Some((r_lo, r_closed)) = rs.lo {
        match cmp_end(&EndVal::Exact(r_lo), &lo) {
            Ordering::Greater => {
                lo = EndVal::Exact(r_lo);
                lo_closed = r_closed;
            }
            Ordering::Equal => lo_closed = lo_closed && r_closed,
            Ordering::Less => {}
        }
    }
    let (mut hi, mut hi_closed) = (band.hi, band.hi_closed);
    if let Some((r_hi, r_closed)) = rs.hi {
        match cmp_end(&EndVal::Exact(r_hi), &hi) {
            Ordering::Less => {
                hi = EndVal::Exact(r_hi);
                hi_closed = r_closed;
            }
            Ordering::Equal => hi_closed = hi_closed && r_closed,
            Ordering::Greater => {}
        }
    }
    match cmp_end(&lo, &hi) {
        Ordering::Less => true,
        Ordering::Equal => lo_closed && hi_closed,
        Ordering::Greater => false,
    }
}

/// The strict sandwich window for candidates of rank `r_w` and degree `c_w`:
/// `s` in the region with `f(s) = c_w - r_w s > 0` and `g(s) - f(s) > 0`.
/// `None` when empty.
fn sandwich_interval(v: &ChernVector, region: &Region, r_w: i64, c_w: i64) -> Option<RatInterval> {
    let iv = RatInterval::all()
        .clamp_lo(region.s_min, true)
        .clamp_hi(region.s_max, false)
        .restrict_linear_positive(rat(-r_w), rat(c_w))
        .restrict_linear_positive(rat(r_w - v.r), rat(v.c - c_w));
    (!iv.empty).then_some(iv)
}

/// True when the wall shape carries a point with `s` in the window and
/// `0 < u <= u_max`.
fn wall_meets_sandwich(shape: &WallShape, window: &RatInterval, u_max: Option<Rat>) -> bool {
    if window.empty {
        return false;
    }
    match *shape {
        WallShape::Vertical { s } => window.contains(s),
        WallShape::Circle {
            center_s: k,
            radius_sq: rho_sq,
        } => {
            if rho_sq <= Rat::zero() {
                return false;
            }
            let whole = ArcBand {
                lo: quad_end(k, false, rho_sq),
                lo_closed: false,
                hi: quad_end(k, true, rho_sq),
                hi_closed: false,
            };
            match u_max {
                Some(u_cap) if rho_sq > u_cap => {
                    // u <= u_cap only on the two side bands |s - k| >= delta
                    let delta_sq = rho_sq - u_cap;
                    let left = ArcBand {
                        lo: whole.lo,
                        lo_closed: false,
                        hi: quad_end(k, false, delta_sq),
                        hi_closed: true,
                    };
                    let right = ArcBand {
                        lo: quad_end(k, true, delta_sq),
                        lo_closed: true,
                        hi: whole.hi,
                        hi_closed: false,
                    };
                    band_intersects(window, &left) || band_intersects(window, &right)
                }
                _ => band_intersects(window, &whole),
            }
        }
    }
}

// ---------------------------------------------------------------------------
// ordering
// ---------------------------------------------------------------------------

/// Decreasing crossing height at `s = 0` first; walls without that crossing
/// follow, ordered by centre.
fn sort_walls(walls: &mut [Wall]) {
    walls.sort_by(|a, b| match (a.u_at_s0(), b.u_at_s0()) {
        (Some(ua), Some(ub)) => ub.cmp(&ua).then_with(|| a.shape.cmp(&b.shape)),
        (Some(_), None) => Ordering::Less,
        (None, Some(_)) => Ordering::Greater,
        (None, None) => a
            .shape
            .center_coordinate()
            .cmp(&b.shape.center_coordinate())
            .then_with(|| a.shape.cmp(&b.shape)),
    });
}
