//! Property tests for the lattice, slope and wall invariants.

use num_rational::Rational64;
use proptest::prelude::*;
use std::cmp::Ordering;
use wallcross::lattice::kernel_class;
use wallcross::stability::{charge_components, slope, slope_compare, StabilityPoint};
use wallcross::surgery::{n3_iso_apply, TorusPoint};
use wallcross::walls::{actual_walls, chambers, wall_between, wall_count, Wall};
use wallcross::ChernVector;

type Rat = Rational64;

fn chern() -> impl Strategy<Value = ChernVector> {
    (-30i64..=30, -30i64..=30, -30i64..=30).prop_map(|(r, c, chi)| ChernVector::new(r, c, chi))
}

fn nonzero_chern() -> impl Strategy<Value = ChernVector> {
    chern().prop_filter("nonzero", |v| !v.is_zero())
}

fn rational(span: i64) -> impl Strategy<Value = Rat> {
    (-span..=span, 1i64..=12).prop_map(|(n, d)| Rat::new(n, d))
}

fn stability_point() -> impl Strategy<Value = StabilityPoint> {
    (rational(12), (1i64..=60, 1i64..=12))
        .prop_map(|(s, (un, ud))| StabilityPoint::new(s, Rat::new(un, ud)).unwrap())
}

proptest! {
    #[test]
    fn tensor_is_commutative_associative_unital(a in chern(), b in chern(), c in chern()) {
        prop_assert_eq!(a.tensor(&b), b.tensor(&a));
        prop_assert_eq!(a.tensor(&b).tensor(&c), a.tensor(&b.tensor(&c)));
        prop_assert_eq!(a.tensor(&ChernVector::UNIT), a);
    }

    #[test]
    fn euler_pairing_is_symmetric(a in chern(), b in chern()) {
        prop_assert_eq!(a.euler_pairing(&b), b.euler_pairing(&a));
    }

    #[test]
    fn fm_transform_is_an_involutive_isometry(a in chern(), b in chern()) {
        prop_assert_eq!(a.fm_transform().fm_transform(), a);
        prop_assert_eq!(
            a.fm_transform().euler_pairing(&b.fm_transform()),
            a.euler_pairing(&b)
        );
    }

    #[test]
    fn discriminant_survives_shift_and_dual(a in chern()) {
        prop_assert_eq!(a.shift().discriminant(), a.discriminant());
        prop_assert_eq!(a.dual().discriminant(), a.discriminant());
    }

    #[test]
    fn self_pairing_is_minus_twice_discriminant(a in chern()) {
        prop_assert_eq!(a.euler_pairing(&a), -2 * a.discriminant());
        if !a.is_zero() && a.discriminant() >= 0 {
            prop_assert_eq!(a.moduli_dim().unwrap(), -a.euler_pairing(&a) + 2);
        }
    }

    #[test]
    fn twist_by_l_is_a_group_action(a in chern(), m in -8i64..=8, k in -8i64..=8) {
        prop_assert_eq!(a.twist_by_l(m).twist_by_l(k), a.twist_by_l(m + k));
    }

    #[test]
    fn kernel_classes_are_isotropic(a in 1i64..=9, b in -9i64..=9) {
        prop_assume!(num_gcd(a, b) == 1);
        prop_assert_eq!(kernel_class(a, b).unwrap().discriminant(), 0);
    }

    #[test]
    fn charge_is_additive(a in chern(), b in chern(), p in stability_point()) {
        let (re_a, im_a) = charge_components(&a, &p);
        let (re_b, im_b) = charge_components(&b, &p);
        let (re_sum, im_sum) = charge_components(&(a + b), &p);
        prop_assert_eq!(re_sum, re_a + re_b);
        prop_assert_eq!(im_sum, im_a + im_b);
    }

    #[test]
    fn slope_ignores_positive_scaling(a in nonzero_chern(), k in 1i64..=6, p in stability_point()) {
        let scaled = ChernVector::new(k * a.r, k * a.c, k * a.chi);
        prop_assert_eq!(slope(&a, &p), slope(&scaled, &p));
    }

    #[test]
    fn slope_compare_is_antisymmetric(a in chern(), b in chern(), p in stability_point()) {
        prop_assert_eq!(slope_compare(&a, &b, &p), slope_compare(&b, &a, &p).reverse());
    }

    #[test]
    fn walls_are_invariant_under_quotient_and_translation(
        v in nonzero_chern(),
        w in nonzero_chern(),
        lambda in -3i64..=3,
    ) {
        let shape = |wall: Option<Wall>| wall.map(|x| x.shape);
        if let (Ok(direct), Ok(mirrored)) = (wall_between(&v, &w), wall_between(&v, &(v - w))) {
            // both defined: the numerical wall of w and of v - w coincide
            if let (Some(a), Some(b)) = (&direct, &mirrored) {
                prop_assert_eq!(a.shape, b.shape);
            }
            let translated = w + ChernVector::new(lambda * v.r, lambda * v.c, lambda * v.chi);
            if !translated.is_zero() && !(translated.r == 0 && translated.c == 0) {
                if let Ok(shifted) = wall_between(&v, &translated) {
                    // a translate by a multiple of v cuts the same locus, as
                    // long as it still defines one
                    if direct.is_some() && shifted.is_some() {
                        prop_assert_eq!(shape(direct), shape(shifted));
                    }
                }
            }
        }
    }

    #[test]
    fn slope_equality_exactly_on_the_wall(n in 3u32..=12, j in -64i64..=64, du in 1i64..=5) {
        let ambient = ChernVector::new(1, 2, 4 - i64::from(n));
        for wall in actual_walls(n) {
            let witness = wall.witnesses[0];
            let (center, radius_sq) = match wall.shape {
                wallcross::WallShape::Circle { center_s, radius_sq } => (center_s, radius_sq),
                wallcross::WallShape::Vertical { .. } => continue,
            };
            let s = center + Rat::new(j, 65) * approx_radius_bound(radius_sq);
            let u = radius_sq - (s - center) * (s - center);
            if u <= Rat::from_integer(0) {
                continue;
            }
            let on = StabilityPoint::new(s, u).unwrap();
            prop_assert_eq!(slope_compare(&ambient, &witness, &on), Ordering::Equal);
            // off the wall (u shifted) slopes differ
            let off = StabilityPoint::new(s, u + Rat::new(du, 7)).unwrap();
            prop_assert_ne!(slope_compare(&ambient, &witness, &off), Ordering::Equal);
        }
    }

    #[test]
    fn torsion_classes_have_finite_slopes(c in 1i64..=20, chi in -20i64..=20, p in stability_point()) {
        // rank 0, positive degree: the imaginary part is the constant c
        match slope(&ChernVector::new(0, c, chi), &p) {
            wallcross::SlopeValue::Finite { num, den } => {
                prop_assert_eq!(den, Rat::from_integer(c));
                prop_assert_eq!(num, Rat::from_integer(chi) - Rat::from_integer(2 * c) * p.s());
            }
            wallcross::SlopeValue::Infinite => prop_assert!(false, "torsion slope must be finite"),
        }
    }

    #[test]
    fn actual_walls_are_found_by_the_search(n in 3u32..=8) {
        // a region containing every arc: the curated walls are a subset of
        // the pseudo-walls already at rank bound 2
        let region = wallcross::Region::new(
            Rat::from_integer(-(i64::from(n))),
            Rat::from_integer(1),
            None,
        ).unwrap();
        let ambient = ChernVector::new(1, 2, 4 - i64::from(n));
        let found: std::collections::BTreeSet<_> =
            wallcross::walls::enumerate_pseudo_walls(&ambient, &region, 2)
                .unwrap()
                .into_iter()
                .map(|w| w.shape)
                .collect();
        for wall in actual_walls(n) {
            prop_assert!(found.contains(&wall.shape), "missing {:?}", wall.shape);
        }
    }

    #[test]
    fn fm_transform_reciprocates_wall_crossings(n in 3u32..=8) {
        // the transform exchanges t and 1/t, so the s = 0 crossings of the
        // image class are the reciprocals of the original crossings
        let ambient = ChernVector::new(1, 2, 4 - i64::from(n));
        let region = wallcross::Region::new(Rat::from_integer(0), Rat::from_integer(1), None)
            .unwrap();
        let image_crossings: std::collections::BTreeSet<Rat> =
            wallcross::walls::enumerate_pseudo_walls(&ambient.fm_transform(), &region, 6)
                .unwrap()
                .iter()
                .filter_map(Wall::u_at_s0)
                .collect();
        let reciprocals: std::collections::BTreeSet<Rat> = actual_walls(n)
            .iter()
            .filter_map(Wall::u_at_s0)
            .map(|u| u.recip())
            .collect();
        prop_assert_eq!(image_crossings, reciprocals);
    }

    #[test]
    fn crossing_heights_are_distinct_with_known_extremes(n in 3u32..=40) {
        let crossings: Vec<Rat> = actual_walls(n).iter().filter_map(Wall::u_at_s0).collect();
        let as_set: std::collections::BTreeSet<_> = crossings.iter().collect();
        prop_assert_eq!(as_set.len(), crossings.len(), "repeated crossing");
        prop_assert_eq!(crossings[0], Rat::from_integer(i64::from(n) - 2));
        // lowest rank-one crossing: 1 for odd lengths, 2 for even
        let rank_one_low = crossings
            .iter()
            .copied()
            .filter(|u| n != 5 || *u != Rat::new(1, 3))
            .last()
            .unwrap();
        prop_assert_eq!(rank_one_low, Rat::from_integer(1 + i64::from((n + 1) % 2)));
    }

    #[test]
    fn chamber_intervals_tile_the_ray(n in 0u32..=40) {
        let list = chambers(n);
        prop_assert_eq!(list.len(), wall_count(n) + 1);
        prop_assert_eq!(list[0].u_hi, None);
        prop_assert_eq!(list[list.len() - 1].u_lo, Rat::from_integer(0));
        for pair in list.windows(2) {
            prop_assert_eq!(pair[1].u_hi, Some(pair[0].u_lo));
            prop_assert!(pair[1].u_lo < pair[0].u_lo);
        }
    }

    #[test]
    fn torus_map_is_additive(
        xs in proptest::array::uniform4(torus_point()),
        ys in proptest::array::uniform4(torus_point()),
    ) {
        let sum: [TorusPoint; 4] = std::array::from_fn(|i| xs[i] + ys[i]);
        let fx = n3_iso_apply(&xs);
        let fy = n3_iso_apply(&ys);
        let f_sum = n3_iso_apply(&sum);
        for i in 0..4 {
            prop_assert_eq!(f_sum[i], fx[i] + fy[i]);
        }
    }

    #[test]
    fn wall_json_round_trips(n in 3u32..=12) {
        for wall in actual_walls(n) {
            let json = serde_json::to_string(&wall).unwrap();
            let back: Wall = serde_json::from_str(&json).unwrap();
            prop_assert_eq!(back.shape, wall.shape);
            prop_assert_eq!(back.witnesses, wall.witnesses);
        }
    }

    #[test]
    fn rational_strings_round_trip(numer in -10_000i64..=10_000, denom in 1i64..=9999) {
        let value = Rat::new(numer, denom);
        let text = wallcross::rat::format_rational(&value);
        prop_assert_eq!(wallcross::rat::parse_rational(&text).unwrap(), value);
    }
}

fn torus_point() -> impl Strategy<Value = TorusPoint> {
    proptest::array::uniform4((-40i64..=40, 1i64..=20))
        .prop_map(|coords| TorusPoint::new(coords.map(|(n, d)| Rat::new(n, d))))
}

fn num_gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        num_gcd(b, a % b)
    }
}

/// A rational lower bound on the radius, used to pick sample points inside
/// the arc without taking square roots: for radius_sq = p/q, the value
/// p/(q*ceil(sqrt(p*q))) is at most sqrt(p/q).
fn approx_radius_bound(radius_sq: Rat) -> Rat {
    let p = *radius_sq.numer();
    let q = *radius_sq.denom();
    let mut root = 1i64;
    while root * root < p * q {
        root += 1;
    }
    Rat::new(p, q * root)
}
