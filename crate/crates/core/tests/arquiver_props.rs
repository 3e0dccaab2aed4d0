//! Structural properties of the diagonal AR quiver: mesh symmetry, rotation
//! equivariance, degree profile, and deterministic DOT export.

use k0gon::arquiver::ArQuiver;
use k0gon::polygon::PolygonModel;
use num_bigint::BigInt;
use std::collections::HashSet;

fn grid() -> impl Iterator<Item = PolygonModel> {
    (1..=4u32).flat_map(|d| (1..=6u32).map(move |n| PolygonModel::new(d, n)))
}

#[test]
fn arrows_satisfy_mesh_symmetry() {
    // u -> v is an arrow exactly when tau(v) -> u is: the mesh starting at
    // tau(v) and the mesh ending at v share their middle terms.
    for model in grid() {
        let q = ArQuiver::build(&model);
        let arrows: HashSet<(usize, usize)> = q.arrows().iter().copied().collect();
        for &(u, v) in q.arrows() {
            assert!(
                arrows.contains(&(q.translate_index(v), u)),
                "d={} n={}: missing dual of {u}->{v}",
                model.d(),
                model.n()
            );
        }
    }
}

#[test]
fn arrows_are_rotation_equivariant() {
    for model in grid() {
        let q = ArQuiver::build(&model);
        let arrows: HashSet<(u32, u32, u32, u32)> = q
            .arrows()
            .iter()
            .map(|&(s, t)| {
                let (u, v) = (q.vertices()[s], q.vertices()[t]);
                (u.a(), u.b(), v.a(), v.b())
            })
            .collect();
        for k in [1i64, 2, 5] {
            for &(s, t) in q.arrows() {
                let u = model.rotate(q.vertices()[s], k);
                let v = model.rotate(q.vertices()[t], k);
                assert!(arrows.contains(&(u.a(), u.b(), v.a(), v.b())));
            }
        }
    }
}

#[test]
fn translation_is_a_fixed_point_free_permutation_preserving_arrows() {
    for model in grid() {
        let q = ArQuiver::build(&model);
        let g = q.vertices().len();
        let mut seen = vec![false; g];
        for i in 0..g {
            let j = q.translate_index(i);
            assert_ne!(i, j);
            assert!(!seen[j]);
            seen[j] = true;
        }
        let arrows: HashSet<(usize, usize)> = q.arrows().iter().copied().collect();
        for &(s, t) in q.arrows() {
            assert!(arrows.contains(&(q.translate_index(s), q.translate_index(t))));
        }
    }
}

#[test]
fn in_degree_profile_matches_the_grid_shape() {
    for model in grid() {
        let q = ArQuiver::build(&model);
        let g = q.vertices().len();
        let w = model.vertex_count() as usize;
        let n = model.n() as usize;
        let mut in_deg = vec![0usize; g];
        for &(_, t) in q.arrows() {
            in_deg[t] += 1;
        }
        if n == 1 {
            assert!(in_deg.iter().all(|&d| d == 0));
            assert!(q.arrows().is_empty());
        } else {
            let ones = in_deg.iter().filter(|&&d| d == 1).count();
            let twos = in_deg.iter().filter(|&&d| d == 2).count();
            assert_eq!(ones, w, "d={} n={}", model.d(), model.n());
            assert_eq!(twos, g - w);
            assert!(in_deg.iter().all(|&d| d == 1 || d == 2));
            assert_eq!(q.arrows().len(), w * (n - 1));
        }
    }
}

#[test]
fn mesh_matrix_rows_encode_their_triangle() {
    for model in grid() {
        let q = ArQuiver::build(&model);
        let m = q.mesh_relation_matrix();
        let g = q.vertices().len();
        assert_eq!((m.rows(), m.cols()), (g, g));
        let mut in_deg = vec![0usize; g];
        for &(_, t) in q.arrows() {
            in_deg[t] += 1;
        }
        for i in 0..g {
            let sum: BigInt = m.row(i).iter().sum();
            assert_eq!(sum, BigInt::from(2 - in_deg[i] as i64));
            assert_eq!(m[(i, i)], BigInt::from(1));
            assert_eq!(m[(i, q.translate_index(i))], BigInt::from(1));
        }
    }
}

#[test]
fn dot_export_is_deterministic() {
    for model in grid().take(8) {
        let a = ArQuiver::build(&model).to_dot();
        let b = ArQuiver::build(&model).to_dot();
        assert_eq!(a, b);
        assert!(!a.contains('\r'));
        let g = ArQuiver::build(&model).vertices().len();
        let solid = a.matches(" -> ").count();
        let dashed = a.matches("style=dashed").count();
        assert_eq!(dashed, g);
        assert_eq!(solid, ArQuiver::build(&model).arrows().len() + g);
    }
}
