//! Library results against brute-force references.

mod common;

use std::collections::BTreeSet;

use rand::Rng;

use common::oracle;
use toric_chow::chow::{class_invariant, multiplicity, ChowQuotient};
use toric_chow::lattice::{ivec, smith_normal_form, Int, IntMatrix, IntVec, Sublattice};
use toric_chow::monoid::AffineMonoid;
use toric_chow::polyhedra::{affine_slice_dim, Cone, Fan};

#[test]
fn smith_matches_gcd_of_minors() {
    let mut rng = common::rng(1);
    for _ in 0..300 {
        let rows = rng.gen_range(1..=4);
        let cols = rng.gen_range(1..=4);
        let m = common::random_matrix(&mut rng, rows, cols, 6);
        let plain: Vec<Vec<i64>> = m.rows().iter().map(|r| common::to_i64(r)).collect();
        let got: Vec<i64> = smith_normal_form(&m).diagonal().iter().map(|d| i64::try_from(d).unwrap()).collect();
        assert_eq!(got, oracle::elementary_divisors(&plain), "{plain:?}");
    }
}

#[test]
fn sublattice_index_matches_coset_count() {
    let mut rng = common::rng(2);
    for _ in 0..200 {
        let r = rng.gen_range(1..=3);
        let gens: Vec<IntVec> = (0..r).map(|_| common::random_vec(&mut rng, r, 4)).collect();
        let plain: Vec<Vec<i64>> = gens.iter().map(|g| common::to_i64(g)).collect();
        if oracle::det(&plain) == 0 {
            continue;
        }
        let l = Sublattice::new(r, &gens);
        let divisors: Int = l.elementary_divisors().iter().product();
        assert_eq!(divisors, Int::from(oracle::parallelepiped_count(&plain)), "{plain:?}");
    }
}

#[test]
fn multiplicity_matches_coset_count() {
    let f = Fan::from_maximal_cones(
        2,
        &[
            Cone::from_i64(&[&[1, 0], &[0, 1]]),
            Cone::from_i64(&[&[0, 1], &[-1, -1]]),
            Cone::from_i64(&[&[-1, -1], &[1, 0]]),
        ],
    );
    let sigma = f.index_of(&Cone::from_i64(&[&[1, 0]])).unwrap();
    for (a, b) in [(1, 2), (2, 1), (3, 5), (-4, 7), (5, 0)] {
        let l = Sublattice::new(2, &[ivec(&[a, b])]).saturate();
        let lb = common::to_i64(&l.basis()[0]);
        match multiplicity(&f, &l, sigma) {
            Ok(c) => assert_eq!(c, Int::from(oracle::multiplicity_by_cosets(&[lb], &[vec![1, 0]]))),
            Err(_) => assert_eq!(b, 0),
        }
    }
}

/// Rays of a rank-2 cone in counterclockwise order.
fn ccw(c: &Cone) -> Vec<Vec<i64>> {
    let mut rays: Vec<Vec<i64>> = c.rays().iter().map(|v| common::to_i64(v)).collect();
    if rays.len() == 2 && common::det2(&rays[0], &rays[1]) < 0 {
        rays.swap(0, 1);
    }
    rays
}

#[test]
fn class_invariant_matches_grid_scan() {
    let mut rng = common::rng(3);
    for _ in 0..15 {
        let rays = common::random_fan2(&mut rng, 2);
        let f = common::fan2(&rays);
        let l = common::random_sublattice(&mut rng, 2, 1, 2);
        let cones: Vec<Vec<Vec<i64>>> = f.cones().iter().map(ccw).collect();
        let lb = common::to_i64(&l.basis()[0]);
        for _ in 0..8 {
            let psi = [rng.gen_range(-4..=4), rng.gen_range(-4..=4)];
            let got = class_invariant(&f, &l, &ivec(&psi));
            assert_eq!(got, oracle::slice_class_2d(&cones, &psi, &lb), "{rays:?} {lb:?} {psi:?}");
        }
    }
}

#[test]
fn slice_dimensions_by_hand() {
    let c = Cone::from_i64(&[&[1, 0, 0], &[0, 1, 0]]);
    let l = Sublattice::new(3, &[ivec(&[0, 0, 1])]);
    assert_eq!(affine_slice_dim(&c, &ivec(&[1, 1, 5]), &l), Some(0));
    assert_eq!(affine_slice_dim(&c, &ivec(&[-1, 1, 5]), &l), None);
    let l2 = Sublattice::new(3, &[ivec(&[1, -1, 0])]);
    assert_eq!(affine_slice_dim(&c, &ivec(&[1, 1, 0]), &l2), Some(1));
    assert_eq!(affine_slice_dim(&c, &ivec(&[1, 1, 1]), &l2), None);
}

/// Nonnegative integer combinations of `gens` inside the box `|x_i| <= b`.
fn closure(gens: &[Vec<i64>], b: i64) -> BTreeSet<Vec<i64>> {
    let r = gens[0].len();
    let mut seen = BTreeSet::from([vec![0; r]]);
    let mut stack = vec![vec![0; r]];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y: Vec<i64> = x.iter().zip(g).map(|(a, b)| a + b).collect();
            if y.iter().all(|v| v.abs() <= b) && seen.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    seen
}

fn box_points(r: usize, b: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..r {
        out = out.into_iter().flat_map(|p: Vec<i64>| (-b..=b).map(move |x| [p.clone(), vec![x]].concat())).collect();
    }
    out
}

#[test]
fn hilbert_basis_generates_every_lattice_point() {
    let mut rng = common::rng(4);
    for _ in 0..40 {
        let r = rng.gen_range(2..=3);
        let c = common::random_cone(&mut rng, r, 3);
        let m = AffineMonoid::from_cone_full(&c).unwrap();
        let hb: Vec<Vec<i64>> = m.hilbert_basis().iter().map(|v| common::to_i64(v)).collect();
        let b = 6;
        // Combinations may leave the box on the way, so compare on a smaller box.
        let reach = closure(&hb, 3 * b);
        for x in box_points(r, b) {
            let inside = c.contains(&ivec(&x));
            assert_eq!(m.member(&ivec(&x)), inside, "{c} {x:?}");
            if inside && x.iter().map(|v| v.abs()).max().unwrap() <= 2 {
                assert!(reach.contains(&x), "{c}: {x:?} not generated by {hb:?}");
            }
        }
        // Irreducibility: no element is a sum of two nonzero monoid elements
        // of smaller grade.
        let g = m.grading();
        for h in m.hilbert_basis() {
            let gh = toric_chow::lattice::dot(&g, h);
            for e in m.elements_up_to(&g, &gh) {
                if toric_chow::lattice::is_zero(&e) || &e == h {
                    continue;
                }
                let rest = toric_chow::lattice::sub(h, &e);
                assert!(!m.member(&rest) || toric_chow::lattice::is_zero(&rest), "{h:?} = {e:?} + {rest:?}");
            }
        }
    }
}

#[test]
fn membership_matches_exhaustive_search() {
    let mut rng = common::rng(5);
    for _ in 0..60 {
        let r = rng.gen_range(1..=2);
        let k = rng.gen_range(1..=3);
        let gens: Vec<Vec<i64>> = (0..k)
            .map(|_| {
                let mut v: Vec<i64> = (0..r).map(|_| rng.gen_range(-3..=3)).collect();
                v[0] = rng.gen_range(1..=4);
                v
            })
            .collect();
        let m = AffineMonoid::from_generators(r, &gens.iter().map(|g| ivec(g)).collect::<Vec<_>>()).unwrap();
        let reach = closure(&gens, 40);
        for x in box_points(r, 8) {
            assert_eq!(m.member(&ivec(&x)), reach.contains(&x), "{gens:?} {x:?}");
        }
    }
}

#[test]
fn quotient_projection_is_surjective_with_kernel_l() {
    let mut rng = common::rng(6);
    for _ in 0..50 {
        let r = rng.gen_range(2..=4);
        let k = rng.gen_range(1..r);
        let l = common::random_sublattice(&mut rng, r, k, 3);
        let p = toric_chow::lattice::QuotientMap::new(&l).unwrap();
        assert!(p.is_surjective());
        for b in l.basis() {
            assert!(toric_chow::lattice::is_zero(&p.apply(b)));
        }
        for _ in 0..5 {
            let q = common::random_vec(&mut rng, r - k, 5);
            assert_eq!(p.apply(&p.lift(&q)), q);
        }
        let m: IntMatrix = p.matrix().clone();
        assert_eq!(m.nrows(), r - k);
    }
}

#[test]
fn chow_quotient_of_rank_three_corpus() {
    for (name, f, l) in common::corpus().into_iter().filter(|(_, f, _)| f.ambient_rank() == 3) {
        let cq = ChowQuotient::new(&f, &l).unwrap();
        assert!(cq.quotient_fan().is_complete(), "{name}");
        assert!(cq.diagnostics().is_empty(), "{name}: {:?}", cq.diagnostics());
    }
}
