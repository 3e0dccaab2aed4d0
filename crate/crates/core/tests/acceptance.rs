//! Acceptance gate: one test per release criterion. Each prints a PASS line
//! (visible with `--nocapture`); any failure fails the build.

use std::collections::HashSet;
use std::ops::ControlFlow;
use std::time::Instant;

use k0gon::derived::HomOracle;
use k0gon::intlattice::{
    cokernel, hnf, lattice_contains, lattice_equal, snf, FpGroup, IntMatrix,
};
use k0gon::k0::{
    closed_form, fan_relations, im_psi_lattice, k0_fan, k0_index_group, verify_cell, MeshK0,
};
use k0gon::polygon::{Angulation, Diagonal, EnumerationLimits, PolygonModel};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[test]
fn criterion_1_group_grid_agrees_across_routes() {
    let started = Instant::now();
    for d in 1..=4u32 {
        for n in 1..=6u32 {
            let model = PolygonModel::new(d, n);
            let mesh = MeshK0::new(&model);
            let reference = closed_form(d, n);
            assert_eq!(*mesh.group(), reference, "mesh route d={d} n={n}");
            assert_eq!(k0_fan(&model), reference, "fan route d={d} n={n}");
            let kernel = k0_index_group(&mesh, &model.fan_tilting()).unwrap();
            assert_eq!(kernel, reference, "kernel route d={d} n={n}");
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 60, "grid took {elapsed:?}");
    println!("PASS criterion 1: all three routes match the closed form on d<=4, n<=6 ({elapsed:?})");
}

#[test]
fn criterion_2_worked_example_ledger() {
    let model = PolygonModel::new(2, 3);
    let report = verify_cell(2, 3, false);
    assert!(report.agree);
    assert_eq!(
        report.ledger,
        vec!["[T2]=-2[T1]".to_string(), "[T3]=3[T1]".to_string(), "4[T1]=0".to_string()]
    );
    let mesh = MeshK0::new(&model);
    let psi = im_psi_lattice(&mesh, &model.fan_tilting()).unwrap();
    let member = |v: [i64; 3]| {
        let row: Vec<BigInt> = v.into_iter().map(BigInt::from).collect();
        lattice_contains(&psi, &row)
    };
    assert!(member([2, 1, 0]), "e2 + 2 e1");
    assert!(member([-3, 0, 1]), "e3 - 3 e1");
    assert!(member([4, 0, 0]), "4 e1");
    let fan = fan_relations(&model);
    assert_eq!(
        fan,
        IntMatrix::from_rows(3, &[vec![2, 1, 0], vec![1, 2, 1], vec![0, 1, 2]])
    );
    assert_eq!(fan.det(), BigInt::from(4));
    assert_eq!(*mesh.group(), closed_form(2, 3));
    assert_eq!(k0_fan(&model), closed_form(2, 3));
    assert_eq!(k0_index_group(&mesh, &model.fan_tilting()).unwrap(), closed_form(2, 3));
    println!("PASS criterion 2: (2,3) gives Z/4 on every route with the exact relation ledger");
}

#[test]
fn criterion_3_relation_lattice_identity() {
    let mut cells = 0;
    for d in 1..=28u32 {
        for n in 1..=28u32 {
            if d * (n + 1) + 2 > 30 {
                continue;
            }
            let model = PolygonModel::new(d, n);
            let mesh = MeshK0::new(&model);
            let psi = im_psi_lattice(&mesh, &model.fan_tilting()).unwrap();
            assert!(lattice_equal(&fan_relations(&model), &psi), "d={d} n={n}");
            cells += 1;
        }
    }
    assert!(cells >= 60, "swept {cells} cells");
    println!("PASS criterion 3: fan relation rows span the full relation lattice on {cells} cells (W<=30)");
}

#[test]
fn criterion_4_tilting_independence() {
    // Counts are the Fuss-Catalan numbers binom((d+1)(n+1), n)/(n+1).
    for (d, n, expected_count) in [(1u32, 2u32, 5u64), (1, 3, 14), (2, 2, 12), (2, 3, 55)] {
        let model = PolygonModel::new(d, n);
        let mesh = MeshK0::new(&model);
        let reference = closed_form(d, n);
        let visited = model
            .visit_angulations(&EnumerationLimits::default(), |set| {
                let tilting = Angulation::new(&model, set.to_vec()).unwrap();
                let group = k0_index_group(&mesh, &tilting)
                    .unwrap_or_else(|_| panic!("non-generating tilting {set:?} d={d} n={n}"));
                assert_eq!(group, reference, "tilting {set:?} d={d} n={n}");
                ControlFlow::Continue(())
            })
            .unwrap();
        assert_eq!(visited, expected_count, "angulation count d={d} n={n}");
    }
    println!("PASS criterion 4: every angulation (5, 14, 12, 55 of them) generates and presents the same group");
}

#[test]
fn criterion_5_ar_quiver_matches_the_reference_figure() {
    let model = PolygonModel::new(2, 3);
    let mesh = MeshK0::new(&model);
    let quiver = mesh.quiver();
    let dg = |a: u32, b: u32| model.diagonal(a, b).unwrap();
    let rows: [[Diagonal; 5]; 3] = [
        [dg(1, 8), dg(3, 10), dg(5, 2), dg(7, 4), dg(9, 6)],
        [dg(1, 6), dg(3, 8), dg(5, 10), dg(7, 2), dg(9, 4)],
        [dg(1, 4), dg(3, 6), dg(5, 8), dg(7, 10), dg(9, 2)],
    ];
    // 15 named vertices.
    let expected_vertices: HashSet<Diagonal> = rows.iter().flatten().copied().collect();
    assert_eq!(expected_vertices.len(), 15);
    let got_vertices: HashSet<Diagonal> = quiver.vertices().iter().copied().collect();
    assert_eq!(got_vertices, expected_vertices);

    // The figure's arrow set: within each column step, up-right and down-right.
    let mut expected_arrows: HashSet<(Diagonal, Diagonal)> = HashSet::new();
    for c in 0..5 {
        let right = (c + 1) % 5;
        expected_arrows.insert((rows[0][c], rows[1][right])); // top -> middle
        expected_arrows.insert((rows[1][c], rows[0][c])); // middle -> top
        expected_arrows.insert((rows[1][c], rows[2][right])); // middle -> bottom
        expected_arrows.insert((rows[2][c], rows[1][c])); // bottom -> middle
    }
    assert_eq!(expected_arrows.len(), 20);
    let got_arrows: HashSet<(Diagonal, Diagonal)> = quiver
        .arrows()
        .iter()
        .map(|&(i, j)| (quiver.vertices()[i], quiver.vertices()[j]))
        .collect();
    assert_eq!(got_arrows.len(), quiver.arrows().len());
    assert_eq!(got_arrows, expected_arrows);

    // Translation orbits run along the figure's dotted rows, moving left.
    for row in &rows {
        for c in 0..5 {
            let left = (c + 4) % 5;
            assert_eq!(model.ar_translate(row[c]), row[left]);
            let i = quiver.vertex_index(&row[c]).unwrap();
            assert_eq!(quiver.vertices()[quiver.translate_index(i)], row[left]);
        }
    }
    println!("PASS criterion 5: the (2,3) AR quiver reproduces the reference figure exactly");
}

#[test]
fn criterion_6_rigidity_is_noncrossing() {
    let mut pairs = 0u64;
    for d in 1..=18u32 {
        for n in 1..=18u32 {
            if d * (n + 1) + 2 > 20 {
                continue;
            }
            let model = PolygonModel::new(d, n);
            let oracle = HomOracle::new(&model).unwrap();
            let diagonals = model.enumerate_diagonals();
            for &u in &diagonals {
                for &v in &diagonals {
                    let some_ext = (1..=d).any(|k| oracle.ext_c(u, v, k) != 0);
                    assert_eq!(
                        some_ext,
                        k0gon::polygon::crosses(&u, &v),
                        "d={d} n={n} u={u} v={v}"
                    );
                    pairs += 1;
                }
            }
        }
    }
    println!("PASS criterion 6: crossing matches extension support on {pairs} pairs (W<=20)");
}

#[test]
fn criterion_7_calabi_yau_duality() {
    let mut pairs = 0u64;
    for d in 1..=18u32 {
        for n in 1..=18u32 {
            if d * (n + 1) + 2 > 20 {
                continue;
            }
            let model = PolygonModel::new(d, n);
            let oracle = HomOracle::new(&model).unwrap();
            let diagonals = model.enumerate_diagonals();
            for &u in &diagonals {
                for &v in &diagonals {
                    for k in 1..=d {
                        assert_eq!(
                            oracle.ext_c(u, v, k),
                            oracle.ext_c(v, u, d + 1 - k),
                            "d={d} n={n} u={u} v={v} k={k}"
                        );
                    }
                    pairs += 1;
                }
            }
        }
    }
    println!("PASS criterion 7: duality ext(u,v,k) = ext(v,u,d+1-k) on {pairs} pairs (W<=20)");
}

#[test]
fn criterion_8_worked_vanishings() {
    let model = PolygonModel::new(2, 3);
    let oracle = HomOracle::new(&model).unwrap();
    let dg = |a: u32, b: u32| model.diagonal(a, b).unwrap();
    assert_eq!(oracle.hom_c(dg(9, 6), dg(3, 10)), 0, "Hom((9,6),(3,10))");
    assert_eq!(oracle.hom_c(dg(9, 6), dg(9, 4)), 0, "Hom((9,6),(9,4))");
    assert_eq!(oracle.ext_c(dg(3, 10), dg(5, 8), 1), 0, "Ext^1((3,10),(5,8))");
    assert_eq!(oracle.ext_c(dg(9, 4), dg(5, 8), 1), 0, "Ext^1((9,4),(5,8))");
    println!("PASS criterion 8: the quoted Hom and Ext^1 vanishings hold on (2,3)");
}

#[test]
fn criterion_9_randomized_and_counting_suites() {
    // Integer linear algebra invariants on random matrices.
    let mut rng = StdRng::seed_from_u64(0x5EED_CAFE);
    let mut checked = 0u32;
    while checked < 1000 {
        let r = rng.gen_range(1..=6usize);
        let c = rng.gen_range(1..=6usize);
        let rows: Vec<Vec<i64>> =
            (0..r).map(|_| (0..c).map(|_| rng.gen_range(-20i64..=20)).collect()).collect();
        let a = IntMatrix::from_rows(c, &rows);

        let hf = hnf(&a);
        assert_eq!(hf.u.mul(&a), hf.h);
        assert_eq!(hf.u.det().abs(), BigInt::from(1));

        let sf = snf(&a);
        assert_eq!(sf.u.mul(&a).mul(&sf.v), sf.s);
        assert_eq!(sf.u.det().abs(), BigInt::from(1));
        assert_eq!(sf.v.det().abs(), BigInt::from(1));
        let mut diag = Vec::new();
        for i in 0..sf.s.rows() {
            for j in 0..sf.s.cols() {
                if i != j {
                    assert!(sf.s[(i, j)].is_zero(), "off-diagonal in SNF");
                } else if !sf.s[(i, j)].is_zero() {
                    diag.push(sf.s[(i, j)].clone());
                }
            }
        }
        for w in diag.windows(2) {
            assert!((&w[1] % &w[0]).is_zero(), "divisibility chain");
        }
        if r == c {
            let product = diag.iter().fold(BigInt::from(1), |acc, x| acc * x);
            let det = a.det().abs();
            if diag.len() == r {
                assert_eq!(det, product, "determinant equals invariant factor product");
            } else {
                assert!(det.is_zero(), "rank-deficient square matrix has zero determinant");
            }
        }
        assert_eq!(
            cokernel(&a),
            *FpGroup::from_relations(a.cols(), &a).group(),
            "two presentations of the same quotient"
        );
        checked += 1;
    }
    assert!(checked >= 1000);

    // Angulation counts for the pentagon and the octagon.
    let limits = EnumerationLimits::default();
    let pentagon = PolygonModel::new(1, 2).visit_angulations(&limits, |_| ControlFlow::Continue(())).unwrap();
    assert_eq!(pentagon, 5);
    let octagon = PolygonModel::new(2, 2).visit_angulations(&limits, |_| ControlFlow::Continue(())).unwrap();
    assert_eq!(octagon, 12);

    // Diagonal counts across the small grid.
    for d in 1..=5u32 {
        for n in 1..=6u32 {
            let model = PolygonModel::new(d, n);
            let count = model.enumerate_diagonals().len() as u64;
            assert_eq!(
                count,
                u64::from(model.n()) * u64::from(model.vertex_count()) / 2,
                "d={d} n={n}"
            );
        }
    }
    println!("PASS criterion 9: {checked} random matrices, pentagon 5, octagon 12, diagonal counts verified");
}
