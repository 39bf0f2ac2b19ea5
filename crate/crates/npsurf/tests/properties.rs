//! Property-based tests for the invariants that quantify over random
//! inputs: rank laws, basis-change invariance, the splitting law,
//! monotonicity of failure, and the chain identity.

use proptest::prelude::*;

use npsurf::enumerate::min_isotropic_degree;
use npsurf::fixtures;
use npsurf::koszul::{koszul_cohomology_dim, splitting_check};
use npsurf::lattice::{DivisorClass, PicardLattice};
use npsurf::matrix::RationalMatrix;
use npsurf::surface::{chain_self_intersection, PolarizedSurface, SurfaceFlags, SurfaceKind};
use npsurf::theorems::{enriques_verdict, mukai_multiple_verdict, theorem_a_verdict};
use npsurf::verdict::Outcome;

fn small_matrix() -> impl Strategy<Value = RationalMatrix> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(rows, cols)| {
        prop::collection::vec(prop::collection::vec(-3i64..=3, cols), rows)
            .prop_map(|data| RationalMatrix::from_rows(&data))
    })
}

proptest! {
    #[test]
    fn rank_equals_rank_of_transpose(m in small_matrix()) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn rank_nullity(m in small_matrix()) {
        prop_assert_eq!(m.rank() + m.kernel_dim(), m.cols());
        let basis = m.kernel_basis();
        prop_assert_eq!(basis.len(), m.kernel_dim());
        for v in basis {
            let image = m.apply(&v).unwrap();
            prop_assert!(image.iter().all(num_traits::Zero::is_zero));
        }
    }
}

fn point_configuration() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=2, 2usize..=4).prop_flat_map(|(dim, count)| {
        prop::collection::btree_set(prop::collection::vec(0i64..=3, dim), count)
            .prop_map(|set| set.into_iter().collect::<Vec<_>>())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn splitting_law_on_random_configurations(
        points in point_configuration(),
        extra in 1usize..=2,
        p in 0usize..=3,
        q in 0i64..=2,
    ) {
        let table = fixtures::point_configuration(&points, 3).unwrap();
        let cmp = splitting_check(&table, extra, p, q).unwrap();
        prop_assert!(cmp.equal, "u={} (p,q)=({},{}): {} != {}",
            extra, p, q, cmp.extended, cmp.weighted_sum);
    }

    #[test]
    fn subspace_koszul_dimensions_never_exceed_extension(
        points in point_configuration(),
        p in 0usize..=3,
        q in 0i64..=2,
    ) {
        let table = fixtures::point_configuration(&points, 3).unwrap();
        let extended = table.extend_by_annihilators(2);
        let small = koszul_cohomology_dim(&table, p, q).unwrap();
        let big = koszul_cohomology_dim(&extended, p, q).unwrap();
        prop_assert!(small <= big);
    }

    #[test]
    fn projectively_normal_line_fixtures_generated_in_degree_zero(d in 1usize..=5, q in 1i64..=2) {
        let table = fixtures::rational_normal_curve(d, 3).unwrap();
        prop_assert_eq!(koszul_cohomology_dim(&table, 0, q).unwrap(), 0);
    }
}

/// An invertible integral change of basis assembled from elementary column
/// operations, tracked together with its inverse.
#[derive(Clone, Debug)]
enum ElementaryOp {
    AddMultiple { to: usize, from: usize, factor: i64 },
    Swap(usize, usize),
    Negate(usize),
}

fn unimodular_pair(rank: usize, ops: &[ElementaryOp]) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    // `cols[i]` is the i-th new basis vector in old coordinates; `inv` is the
    // full inverse matrix in row-major layout.
    let mut cols: Vec<Vec<i64>> = (0..rank)
        .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut inv: Vec<Vec<i64>> = cols.clone();
    for op in ops {
        match *op {
            ElementaryOp::AddMultiple { to, from, factor } => {
                if to == from {
                    continue;
                }
                for r in 0..rank {
                    cols[to][r] += factor * cols[from][r];
                }
                for c in 0..rank {
                    inv[from][c] -= factor * inv[to][c];
                }
            }
            ElementaryOp::Swap(i, j) => {
                cols.swap(i, j);
                inv.swap(i, j);
            }
            ElementaryOp::Negate(i) => {
                for r in 0..rank {
                    cols[i][r] = -cols[i][r];
                }
                for c in 0..rank {
                    inv[i][c] = -inv[i][c];
                }
            }
        }
    }
    (cols, inv)
}

fn apply_inverse(inv: &[Vec<i64>], coords: &[i64]) -> Vec<i64> {
    (0..inv.len())
        .map(|r| (0..inv.len()).map(|c| inv[r][c] * coords[c]).sum())
        .collect()
}

fn elementary_ops(rank: usize) -> impl Strategy<Value = Vec<ElementaryOp>> {
    let op = prop_oneof![
        (0..rank, 0..rank, -2i64..=2).prop_map(|(to, from, factor)| ElementaryOp::AddMultiple {
            to,
            from,
            factor
        }),
        (0..rank, 0..rank).prop_map(|(i, j)| ElementaryOp::Swap(i, j)),
        (0..rank).prop_map(ElementaryOp::Negate),
    ];
    prop::collection::vec(op, 0..=4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn min_isotropic_degree_is_basis_invariant(ops in elementary_ops(2)) {
        let lat = PicardLattice::new(vec![vec![0, 1], vec![1, 0]]).unwrap();
        let l = DivisorClass::new(vec![2, 3]);
        let (cols, inv) = unimodular_pair(2, &ops);
        let moved_lat = lat.basis_change(&cols).unwrap();
        let moved_l = DivisorClass::new(apply_inverse(&inv, &l.coords));
        prop_assert_eq!(moved_lat.self_int(&moved_l).unwrap(), lat.self_int(&l).unwrap());
        prop_assert_eq!(
            min_isotropic_degree(&moved_lat, &moved_l).unwrap(),
            min_isotropic_degree(&lat, &l).unwrap()
        );
    }

    #[test]
    fn enriques_verdict_is_basis_invariant(ops in elementary_ops(2), p in 0u32..=2) {
        let lat = PicardLattice::new(vec![vec![0, 1], vec![1, 0]]).unwrap();
        let flags = SurfaceFlags { ample: true, globally_generated: true };
        for l_coords in [vec![3i64, 9], vec![1, 20], vec![5, 6]] {
            let l = DivisorClass::new(l_coords);
            let base = PolarizedSurface::new(
                SurfaceKind::Enriques, lat.clone(), l.clone(), flags,
            ).unwrap();
            let (cols, inv) = unimodular_pair(2, &ops);
            let moved = PolarizedSurface::new(
                SurfaceKind::Enriques,
                lat.basis_change(&cols).unwrap(),
                DivisorClass::new(apply_inverse(&inv, &l.coords)),
                flags,
            ).unwrap();
            let expected = enriques_verdict(&base, p).unwrap();
            let got = enriques_verdict(&moved, p).unwrap();
            prop_assert_eq!(got.outcome, expected.outcome);
            prop_assert_eq!(got.witnesses.len(), expected.witnesses.len());
        }
    }

    #[test]
    fn failure_is_monotone_where_threshold_persists(
        a in 1i64..=6,
        b in 1i64..=24,
        p in 1u32..=3,
    ) {
        // a witness of degree <= p+2 is a witness of degree <= p'+2 for any
        // p' >= p, so failure propagates upward as long as the degree
        // hypothesis keeps holding
        let lat = PicardLattice::new(vec![vec![0, 1], vec![1, 0]]).unwrap();
        let surface = PolarizedSurface::new(
            SurfaceKind::K3,
            lat,
            DivisorClass::new(vec![a, b]),
            SurfaceFlags { ample: true, globally_generated: true },
        ).unwrap();
        let at_p = theorem_a_verdict(&surface, p).unwrap();
        prop_assume!(at_p.outcome == Outcome::FailsNp);
        for larger in p + 1..=p + 2 {
            let v = theorem_a_verdict(&surface, larger).unwrap();
            if v.outcome != Outcome::HypothesisNotMet {
                prop_assert_eq!(v.outcome, Outcome::FailsNp);
            }
        }
    }

    #[test]
    fn mukai_top_multiple_never_fails(a in -3i64..=3, b in -5i64..=5, c in -3i64..=3, p in 0u32..=4) {
        let gram = vec![vec![2 * a, b], vec![b, 2 * c]];
        let lat = PicardLattice::new(gram).unwrap();
        prop_assume!(lat.require_hyperbolic().is_ok());
        let mut l = None;
        for x in -4i64..=4 {
            for y in -4i64..=4 {
                let cand = DivisorClass::new(vec![x, y]);
                if lat.self_int(&cand).unwrap() > 0 {
                    l = Some(cand);
                }
            }
        }
        prop_assume!(l.is_some());
        let surface = PolarizedSurface::new(
            SurfaceKind::K3,
            lat,
            l.unwrap(),
            SurfaceFlags { ample: true, globally_generated: false },
        ).unwrap();
        let v = mukai_multiple_verdict(&surface, p + 3, p).unwrap();
        prop_assert_eq!(v.outcome, Outcome::HoldsNp);
    }

    #[test]
    fn chain_identity(list in prop::collection::vec(1i64..=4, 1..=6)) {
        let value = chain_self_intersection(&list).unwrap();
        let mut gram_total = 0i64;
        for i in 0..list.len() {
            gram_total += -2 * list[i] * list[i];
            if i + 1 < list.len() {
                gram_total += 2 * list[i] * list[i + 1];
            }
        }
        prop_assert_eq!(value, -gram_total);
        prop_assert!(value >= 1);
    }
}
