use proptest::prelude::*;
use toric_chow::ehrhart::{ehrhart_polynomial, futaki_ono_fo};
use toric_chow::hull::Polytope;
use toric_chow::integrate::{interior_moments, trapezoid, Affine};
use toric_chow::lattice::{build_polytope, LatticePolytope};
use toric_chow::rational::{fmt_rat, parse_rat, rat, ri, Rat};
use toric_chow::stability::{chow_functional, envelope_from_values, envelope_oracle, lambda_ratio, lattice_values, norm_delta, PlFunction};
use toric_chow::weights::{apex_region, weights_via_q};

fn polygon() -> impl Strategy<Value = LatticePolytope> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, 2), 3..7).prop_filter_map("flat", |pts| build_polytope(&pts).ok())
}

fn unimodular() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (-2i64..=2, -2i64..=2, any::<bool>()).prop_map(|(a, b, flip)| {
        // [[1,a],[0,1]] [[1,0],[b,1]], optionally with the rows swapped
        let m = vec![vec![1 + a * b, a], vec![b, 1]];
        if flip {
            vec![m[1].clone(), m[0].clone()]
        } else {
            m
        }
    })
}

fn affine(n: usize) -> impl Strategy<Value = Affine> {
    (prop::collection::vec(-4i64..=4, n), -4i64..=4).prop_map(|(g, c)| Affine { grad: g.into_iter().map(ri).collect(), c: ri(c) })
}

fn convex(n: usize) -> impl Strategy<Value = PlFunction> {
    prop::collection::vec(affine(n), 1..4).prop_map(|p| PlFunction::new(p).unwrap())
}

fn lattice_count(p: &LatticePolytope, k: i64) -> i64 {
    p.lattice_points(k).len() as i64
}

fn boundary_count(p: &LatticePolytope) -> i64 {
    p.lattice_points(1).iter().filter(|q| p.facets.iter().any(|f| f.eval(&q.coords) == 0)).count() as i64
}

fn rect(x0: i64, x1: i64, h: i64) -> Polytope {
    let v = [(x0, 0), (x1, 0), (x0, h), (x1, h)].map(|(x, y)| vec![ri(x), ri(y)]);
    Polytope::from_points(&v).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pick_theorem(p in polygon()) {
        // area = interior + boundary/2 - 1
        let b = boundary_count(&p);
        let i = lattice_count(&p, 1) - b;
        prop_assert_eq!(p.euclidean_volume(), ri(i) + rat(b, 2) - ri(1));
        let e = ehrhart_polynomial(&p).unwrap();
        prop_assert_eq!(&e.coeffs[2], &p.euclidean_volume());
        prop_assert_eq!(&e.coeffs[1], &rat(b, 2));
        prop_assert_eq!(e.eval(5), ri(lattice_count(&p, 5)));
    }

    #[test]
    fn ehrhart_is_unimodular_invariant(p in polygon(), g in unimodular(), t in prop::collection::vec(-5i64..=5, 2)) {
        let q = p.transform(&g).translate(&t);
        prop_assert_eq!(ehrhart_polynomial(&p).unwrap(), ehrhart_polynomial(&q).unwrap());
    }

    #[test]
    fn weights_are_unimodular_invariant(p in polygon(), g in unimodular()) {
        let weights = |p: &LatticePolytope| {
            let mut w: Vec<_> = p.vertex_cones().iter().map(|c| apex_region(c).and_then(|r| weights_via_q(&r)).ok()).collect();
            w.sort();
            w
        };
        prop_assert_eq!(weights(&p), weights(&p.transform(&g)));
    }

    #[test]
    fn trapezoid_matches_moments(p in polygon(), l in affine(2)) {
        let (vol, m) = interior_moments(&p.poly);
        let exact = &l.c * &vol + &l.grad[0] * &m[0] + &l.grad[1] * &m[1];
        let mut by_pieces = Rat::from_integer(0.into());
        for s in p.poly.triangulate() {
            let vals: Vec<Rat> = s.iter().map(|&i| l.eval(&p.poly.vertices[i])).collect();
            by_pieces += trapezoid(&p.poly.simplex_volume(&s), &vals);
        }
        prop_assert_eq!(by_pieces, exact);
    }

    #[test]
    fn integrals_add_over_a_partition(f in convex(2), c in 1i64..4, h in 1i64..4) {
        let whole = f.integrate(&rect(0, 4, h));
        prop_assert_eq!(whole, f.integrate(&rect(0, c, h)) + f.integrate(&rect(c, 4, h)));
    }

    #[test]
    fn envelope_recovers_convex_values(p in polygon(), f in convex(2), k in 1i64..3) {
        let values = lattice_values(&p, k, &f);
        let g = envelope_from_values(&p, k, &values).unwrap();
        prop_assert_eq!(&lattice_values(&p, k, &g), &values);
        let again = envelope_from_values(&p, k, &lattice_values(&p, k, &g)).unwrap();
        let nv = ri(p.poly.vertices.len() as i64);
        let mid: Vec<Rat> = (0..2).map(|i| p.poly.vertices.iter().map(|v| &v[i]).sum::<Rat>() / &nv).collect();
        for v in &p.poly.vertices {
            let x: Vec<Rat> = v.iter().zip(&mid).map(|(a, m)| (a * rat(2, 3) + m * rat(1, 3)) * ri(k)).collect();
            prop_assert_eq!(again.eval(&x), g.eval(&x));
            prop_assert_eq!(g.eval(&x), envelope_oracle(&p, k, &values, &x).unwrap());
        }
    }

    #[test]
    fn norm_is_nonnegative_homogeneous_and_affine_blind(p in polygon(), f in convex(2), l in affine(2), c in 1i64..5) {
        let n = norm_delta(&p, &f).unwrap();
        prop_assert!(n >= ri(0));
        prop_assert_eq!(norm_delta(&p, &f.scale(&ri(c))).unwrap(), &n * ri(c));
        prop_assert_eq!(norm_delta(&p, &f.add_affine(&l)).unwrap(), n);
    }

    #[test]
    fn lambda_ratio_is_scale_invariant(f in convex(2), c in 1i64..5) {
        let p = build_polytope(&[vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]]).unwrap();
        if let Ok(r) = lambda_ratio(&p, &f) {
            prop_assert_eq!(lambda_ratio(&p, &f.scale(&rat(c, 3))).unwrap(), r);
        }
    }

    #[test]
    fn chow_of_affine_is_futaki_ono(p in polygon(), l in affine(2), k in 1i64..4) {
        let v = chow_functional(&p, &PlFunction::affine(l.clone()), k).unwrap();
        prop_assert_eq!(v.value, futaki_ono_fo(&p, &l, k));
    }

    #[test]
    fn rationals_round_trip(n in -1000i64..1000, d in 1i64..1000) {
        let r = rat(n, d);
        prop_assert_eq!(parse_rat(&fmt_rat(&r)).unwrap(), r);
    }
}
