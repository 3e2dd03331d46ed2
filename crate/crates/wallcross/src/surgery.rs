//! Per-wall surgery bookkeeping and the explicit length-3 moduli isomorphism.
//!
//! Crossing a wall replaces the locus `P` of newly unstable objects by its dual
//! fibration. For a wall whose destabilizers decompose the ambient class as
//! `e1 + e2`, the locus is a projective bundle over the product of the two
//! destabilizer moduli `B1 x B2` with fibers of dimension
//! `N = -chi(e1, e2) - 1`; the surgery hypothesis needs `N > 1`. [`flop_record`]
//! assembles those numbers per wall and [`moduli_chain`] strings them together
//! with the chamber decomposition.
//!
//! Two walls get an explanatory flag instead of silent numbers:
//!
//! - the single wall at length `n = 3` has `N = 1`, so the projective-bundle
//!   surgery theorem does not apply (the wall is a `P^1`-bundle divisor and the
//!   two moduli spaces are exchanged by an explicit isomorphism instead);
//! - the higher-rank wall at `n = 5`, where the bundle formula gives a
//!   codimension-3 locus while the known stratification of this surgery records
//!   codimension 4. The two numbers are both reported; reconciling them (the
//!   stratum may be a proper subvariety of the wall locus) is out of scope.
//!
//! The length-3 isomorphism acts on a quadruple of points of the torus (three
//! points of a reduced length-3 subscheme plus the dual-torus twist) through an
//! integer matrix of determinant 1; [`TorusPoint`] models rational points of
//! the underlying real 4-torus so the action and its inverse stay exact.

use crate::lattice::ChernVector;
use crate::walls::{actual_walls, chambers, wall_count, Chamber, Wall};
use num_rational::Rational64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Neg};

type Rat = Rational64;

/// Flag text for walls where the `N > 1` surgery hypothesis fails.
pub const FLAG_FIBER_DIMENSION_ONE: &str =
    "fiber dimension N = 1: projective-bundle surgery hypothesis N > 1 fails; \
     the wall locus is a P^1-bundle divisor";

/// Flag text for the higher-rank wall codimension discrepancy.
pub const FLAG_HIGHER_RANK_CODIM: &str =
    "higher-rank wall: bundle formula gives codimension 3, recorded stratum \
     codimension is 4; both reported, reconciliation unresolved";

/// Surgery data for one wall: destabilizer pair, moduli dimensions, fiber
/// dimension and the codimension of the surgery locus in the ambient space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlopRecord {
    pub wall: Wall,
    pub e1: ChernVector,
    pub e2: ChernVector,
    #[serde(rename = "dim_B1")]
    pub dim_b1: i64,
    #[serde(rename = "dim_B2")]
    pub dim_b2: i64,
    #[serde(rename = "N")]
    pub fiber_dim: i64,
    #[serde(rename = "dim_P")]
    pub dim_p: i64,
    pub codim: i64,
    pub flags: Vec<String>,
}

/// Chambers and surgery records for the class `(1, 2, 4-n)`, top chamber first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuliChain {
    pub n: u32,
    pub chambers: Vec<Chamber>,
    pub records: Vec<FlopRecord>,
    pub ambient_dim: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SurgeryError {
    #[error("wall index {index} out of range: n = {n} has {count} walls")]
    WallIndexOutOfRange { n: u32, index: usize, count: usize },
}

/// Surgery record for the `wall_index`-th wall (top-down) of the class
/// `(1, 2, 4-n)`.
pub fn flop_record(n: u32, wall_index: usize) -> Result<FlopRecord, SurgeryError> {
    let count = wall_count(n);
    if wall_index >= count {
        return Err(SurgeryError::WallIndexOutOfRange {
            n,
            index: wall_index,
            count,
        });
    }
    let walls = actual_walls(n);
    let wall = walls[wall_index].clone();
    let ni = i64::from(n);
    let ambient = ChernVector::new(1, 2, 4 - ni);

    let higher_rank = n == 5 && wall_index == 2;
    let (e1, e2) = if higher_rank {
        (ChernVector::new(2, 1, 0), ChernVector::new(-1, 1, -1))
    } else {
        let m = wall_index as i64;
        (
            ChernVector::new(1, 1, 1 - m),
            ChernVector::new(0, 1, 3 - ni + m),
        )
    };
    debug_assert_eq!(e1 + e2, ambient);

    let dim_b1 = e1.moduli_dim().expect("destabilizer has nonempty moduli");
    let dim_b2 = e2.moduli_dim().expect("quotient has nonempty moduli");
    let fiber_dim = -e1.euler_pairing(&e2) - 1;
    let dim_p = dim_b1 + dim_b2 + fiber_dim;
    let codim = ambient.moduli_dim().expect("ambient moduli nonempty") - dim_p;

    let mut flags = Vec::new();
    if fiber_dim <= 1 {
        flags.push(FLAG_FIBER_DIMENSION_ONE.to_owned());
    }
    if higher_rank {
        flags.push(FLAG_HIGHER_RANK_CODIM.to_owned());
    }

    Ok(FlopRecord {
        wall,
        e1,
        e2,
        dim_b1,
        dim_b2,
        fiber_dim,
        dim_p,
        codim,
        flags,
    })
}

/// Full chamber-and-surgery chain for the class `(1, 2, 4-n)`.
pub fn moduli_chain(n: u32) -> ModuliChain {
    let records = (0..wall_count(n))
        .map(|i| flop_record(n, i).expect("index in range"))
        .collect();
    ModuliChain {
        n,
        chambers: chambers(n),
        records,
        ambient_dim: 2 * i64::from(n) + 2,
    }
}

// ---------------------------------------------------------------------------
// the length-3 isomorphism
// ---------------------------------------------------------------------------

/// A 4x4 integer matrix acting on quadruples of torus points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntMatrix4(pub [[i64; 4]; 4]);

impl IntMatrix4 {
    /// Determinant by fraction-free expansion along the first row.
    pub fn det(&self) -> i64 {
        fn minor(m: &[Vec<i64>], skip_col: usize) -> Vec<Vec<i64>> {
            m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter_map(|(j, &x)| (j != skip_col).then_some(x))
                        .collect()
                })
                .collect()
        }
        fn det_rec(m: &[Vec<i64>]) -> i64 {
            match m.len() {
                1 => m[0][0],
                _ => m[0]
                    .iter()
                    .enumerate()
                    .map(|(j, &x)| {
                        let sign = if j % 2 == 0 { 1 } else { -1 };
                        sign * x * det_rec(&minor(m, j))
                    })
                    .sum(),
            }
        }
        let rows: Vec<Vec<i64>> = self.0.iter().map(|r| r.to_vec()).collect();
        det_rec(&rows)
    }

    /// Exact inverse via the adjugate; defined only for determinant `±1`.
    pub fn inverse_unimodular(&self) -> Option<IntMatrix4> {
        let det = self.det();
        if det != 1 && det != -1 {
            return None;
        }
        let mut inv = [[0i64; 4]; 4];
        let rows: Vec<Vec<i64>> = self.0.iter().map(|r| r.to_vec()).collect();
        for (j, inv_row) in inv.iter_mut().enumerate() {
            for (i, slot) in inv_row.iter_mut().enumerate() {
                // cofactor C_ij of the original, transposed into row j
                let sub: Vec<Vec<i64>> = rows
                    .iter()
                    .enumerate()
                    .filter(|&(r, _)| r != i)
                    .map(|(_, row)| {
                        row.iter()
                            .enumerate()
                            .filter_map(|(c, &x)| (c != j).then_some(x))
                            .collect()
                    })
                    .collect();
                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                *slot = det * sign * det3(&sub);
            }
        }
        Some(IntMatrix4(inv))
    }

    /// Componentwise action on a quadruple of torus points: output point `i`
    /// is the torus sum of `self[i][j] * pts[j]`.
    pub fn apply_torus(&self, pts: &[TorusPoint; 4]) -> [TorusPoint; 4] {
        std::array::from_fn(|i| {
            (0..4)
                .map(|j| pts[j].scale(self.0[i][j]))
                .fold(TorusPoint::zero(), |acc, p| acc + p)
        })
    }
}

fn det3(m: &[Vec<i64>]) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// The integer matrix of the length-3 wall-crossing isomorphism, acting on the
/// quadruple (p, q, y, x^) of a reduced length-3 subscheme and its twist.
pub fn n3_matrix() -> IntMatrix4 {
    IntMatrix4([
        [-1, -1, 0, -1],
        [0, -1, -1, -1],
        [-1, 0, -1, -1],
        [1, 1, 1, 1],
    ])
}

/// Applies the length-3 isomorphism to a quadruple of torus points. Bijective
/// on rational points because the matrix is unimodular.
pub fn n3_iso_apply(pts: &[TorusPoint; 4]) -> [TorusPoint; 4] {
    n3_matrix().apply_torus(pts)
}

/// A rational point of the real 4-torus underlying the abelian surface (and,
/// through the principal polarization, its dual). Coordinates are kept
/// canonicalized to `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TorusPoint {
    #[serde(with = "torus_coords")]
    coords: [Rat; 4],
}

impl TorusPoint {
    pub fn new(coords: [Rat; 4]) -> Self {
        TorusPoint {
            coords: coords.map(reduce_mod_one),
        }
    }

    pub fn zero() -> Self {
        TorusPoint {
            coords: [Rat::zero(); 4],
        }
    }

    pub fn coords(&self) -> [Rat; 4] {
        self.coords
    }

    /// Scalar multiple in the torus group.
    pub fn scale(&self, factor: i64) -> Self {
        TorusPoint::new(self.coords.map(|x| x * Rat::from_integer(factor)))
    }
}

fn reduce_mod_one(x: Rat) -> Rat {
    x - x.floor()
}

impl Add for TorusPoint {
    type Output = TorusPoint;
    fn add(self, rhs: TorusPoint) -> TorusPoint {
        TorusPoint::new(std::array::from_fn(|i| self.coords[i] + rhs.coords[i]))
    }
}

impl Neg for TorusPoint {
    type Output = TorusPoint;
    fn neg(self) -> TorusPoint {
        TorusPoint::new(self.coords.map(|x| -x))
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

mod torus_coords {
    use super::*;
    use serde::de;

    pub fn serialize<S: serde::Serializer>(coords: &[Rat; 4], ser: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
        serde::Serialize::serialize(&strings, ser)
    }

    pub fn deserialize<'de, D: serde::Deserializer<'de>>(de: D) -> Result<[Rat; 4], D::Error> {
        let strings: Vec<String> = serde::Deserialize::deserialize(de)?;
        if strings.len() != 4 {
            return Err(de::Error::invalid_length(strings.len(), &"4 coordinates"));
        }
        let mut coords = [Rat::zero(); 4];
        for (slot, text) in coords.iter_mut().zip(&strings) {
            *slot = crate::rat::parse_rational(text).map_err(de::Error::custom)?;
        }
        Ok(coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(r: i64, c: i64, chi: i64) -> ChernVector {
        ChernVector::new(r, c, chi)
    }

    #[test]
    fn n3_record_is_flagged_p1_divisor() {
        let rec = flop_record(3, 0).unwrap();
        assert_eq!(rec.e1, v(1, 1, 1));
        assert_eq!(rec.e2, v(0, 1, 0));
        assert_eq!(rec.fiber_dim, 1);
        assert_eq!(rec.dim_b1, 2);
        assert_eq!(rec.dim_b2, 4);
        assert_eq!(rec.dim_p, 7);
        assert_eq!(rec.codim, 1);
        assert_eq!(rec.flags, vec![FLAG_FIBER_DIMENSION_ONE.to_owned()]);
    }

    #[test]
    fn n5_strata_codimensions() {
        let a = flop_record(5, 0).unwrap();
        assert_eq!(a.codim, 3);
        assert!(a.flags.is_empty());
        let b = flop_record(5, 1).unwrap();
        assert_eq!(b.codim, 2);
        let c = flop_record(5, 2).unwrap();
        assert_eq!(c.e1, v(2, 1, 0));
        assert_eq!(c.e2, v(-1, 1, -1));
        assert_eq!(c.dim_b1, 4);
        assert_eq!(c.dim_b2, 2);
        assert_eq!(c.fiber_dim, 3);
        assert_eq!(c.dim_p, 9);
        assert_eq!(c.codim, 3);
        assert_eq!(c.flags, vec![FLAG_HIGHER_RANK_CODIM.to_owned()]);
    }

    #[test]
    fn rank_one_records_symbolic_grid() {
        for n in 4u32..=20 {
            let ni = i64::from(n);
            let rank_one_count = if n == 5 { 2 } else { wall_count(n) };
            for index in 0..rank_one_count {
                let m = index as i64;
                let rec = flop_record(n, index).unwrap();
                assert_eq!(rec.e1, v(1, 1, 1 - m), "n={n} m={m}");
                assert_eq!(rec.e2, v(0, 1, 3 - ni + m), "n={n} m={m}");
                assert_eq!(rec.dim_b1, 2 * m + 2);
                assert_eq!(rec.dim_b2, 4);
                assert_eq!(rec.fiber_dim, ni - m - 2);
                assert_eq!(rec.dim_p, ni + m + 4);
                assert_eq!(rec.codim, ni - m - 2);
                assert_eq!(rec.e1 + rec.e2, v(1, 2, 4 - ni));
                assert!(rec.fiber_dim > 1, "N > 1 must hold for n >= 4");
            }
        }
    }

    #[test]
    fn flop_record_rejects_out_of_range() {
        assert!(matches!(
            flop_record(5, 3),
            Err(SurgeryError::WallIndexOutOfRange { count: 3, .. })
        ));
        assert!(flop_record(2, 0).is_err());
    }

    #[test]
    fn moduli_chain_examples() {
        let chain5 = moduli_chain(5);
        assert_eq!(chain5.chambers.len(), 4);
        assert_eq!(chain5.records.len(), 3);
        assert_eq!(chain5.ambient_dim, 12);

        let chain0 = moduli_chain(0);
        assert_eq!(chain0.chambers.len(), 1);
        assert_eq!(chain0.records.len(), 0);
        assert_eq!(chain0.ambient_dim, 2);

        let chain4 = moduli_chain(4);
        assert_eq!(chain4.chambers.len(), 2);
        assert_eq!(chain4.records.len(), 1);
        assert_eq!(chain4.records[0].codim, 2);
    }

    #[test]
    fn ambient_dim_matches_moduli_dim() {
        for n in 0u32..=20 {
            let chain = moduli_chain(n);
            let ambient = v(1, 2, 4 - i64::from(n));
            assert_eq!(chain.ambient_dim, ambient.moduli_dim().unwrap());
            assert_eq!(chain.records.len(), wall_count(n));
        }
    }

    #[test]
    fn n3_matrix_entries_and_determinant() {
        let m = n3_matrix();
        assert_eq!(m.0[3][3], 1);
        assert_eq!(m.det(), 1);
    }

    #[test]
    fn inverse_round_trips_matrix() {
        let m = n3_matrix();
        let inv = m.inverse_unimodular().unwrap();
        // m * inv = identity, checked entrywise
        for i in 0..4 {
            for j in 0..4 {
                let entry: i64 = (0..4).map(|k| m.0[i][k] * inv.0[k][j]).sum();
                assert_eq!(entry, i64::from(i == j), "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn torus_point_canonicalizes() {
        let p = TorusPoint::new([
            Rat::new(3, 2),
            Rat::new(-1, 3),
            Rat::from_integer(2),
            Rat::new(-7, 4),
        ]);
        assert_eq!(
            p.coords(),
            [Rat::new(1, 2), Rat::new(2, 3), Rat::zero(), Rat::new(1, 4)]
        );
    }

    #[test]
    fn iso_fixes_origin_and_matches_hand_evaluation() {
        let zero = [TorusPoint::zero(); 4];
        assert_eq!(n3_iso_apply(&zero), zero);

        // p = (1/2, 0, 0, 0), q = y = xhat = 0:
        // output rows scale p by -1, 0, -1, 1; -1/2 = 1/2 on the torus
        let half = TorusPoint::new([Rat::new(1, 2), Rat::zero(), Rat::zero(), Rat::zero()]);
        let out = n3_iso_apply(&[
            half,
            TorusPoint::zero(),
            TorusPoint::zero(),
            TorusPoint::zero(),
        ]);
        assert_eq!(out[0], half);
        assert_eq!(out[1], TorusPoint::zero());
        assert_eq!(out[2], half);
        assert_eq!(out[3], half);
    }

    #[test]
    fn iso_inverse_round_trips() {
        let m = n3_matrix();
        let inv = m.inverse_unimodular().unwrap();
        let pts = [
            TorusPoint::new([Rat::new(1, 3), Rat::new(2, 5), Rat::zero(), Rat::new(6, 7)]),
            TorusPoint::new([Rat::new(1, 2), Rat::new(3, 4), Rat::new(5, 6), Rat::zero()]),
            TorusPoint::new([Rat::zero(), Rat::new(1, 7), Rat::new(2, 9), Rat::new(1, 11)]),
            TorusPoint::new([Rat::new(4, 5), Rat::zero(), Rat::new(1, 8), Rat::new(2, 3)]),
        ];
        let round_trip = inv.apply_torus(&m.apply_torus(&pts));
        assert_eq!(round_trip, pts);
    }
}
