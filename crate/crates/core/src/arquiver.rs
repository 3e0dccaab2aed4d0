//! The Auslander–Reiten quiver on d-diagonals: mesh triangles, the quiver
//! with its translation, the mesh relation matrix presenting K_0, and DOT
//! export.
//!
//! For a diagonal z = (a, b) the incoming mesh has middle terms given by the
//! valid diagonals among (a-d, b) and (a, b-d), and starts at the translate
//! of z. Candidates that degenerate to polygon edges are dropped, which is
//! exactly what happens at the boundary rows of the quiver.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::intlattice::IntMatrix;
use crate::polygon::{Diagonal, PolygonModel};

/// The mesh (AR triangle) ending at `end`: translate(end) -> middles -> end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArTriangle {
    pub start: Diagonal,
    pub middles: Vec<Diagonal>,
    pub end: Diagonal,
}

/// Middle terms of the mesh ending at `z`, in lexicographic order.
pub fn ar_triangle(model: &PolygonModel, z: Diagonal) -> ArTriangle {
    let w = i64::from(model.vertex_count());
    let d = i64::from(model.d());
    let norm = |v: i64| -> u32 { ((v - 1).rem_euclid(w) + 1) as u32 };
    let (a, b) = (i64::from(z.a()), i64::from(z.b()));
    let mut middles = Vec::new();
    for (p, q) in [(a - d, b), (a, b - d)] {
        if let Ok(m) = model.diagonal(norm(p), norm(q)) {
            middles.push(m);
        }
    }
    middles.sort();
    middles.dedup();
    let start = model.ar_translate(z);
    assert_ne!(start, z, "AR translation has no fixed diagonals");
    ArTriangle { start, middles, end: z }
}

/// The AR quiver: all diagonals as vertices, mesh arrows, and the translation.
#[derive(Clone, Debug)]
pub struct ArQuiver {
    model: PolygonModel,
    vertices: Vec<Diagonal>,
    index: HashMap<Diagonal, usize>,
    /// Arrow (i, j) means an irreducible map vertex[i] -> vertex[j].
    arrows: Vec<(usize, usize)>,
    /// translation[i] is the vertex index of the translate of vertex[i].
    translation: Vec<usize>,
}

impl ArQuiver {
    pub fn build(model: &PolygonModel) -> Self {
        let vertices = model.enumerate_diagonals();
        let index: HashMap<Diagonal, usize> =
            vertices.iter().enumerate().map(|(i, d)| (*d, i)).collect();
        let mut arrows = Vec::new();
        let mut translation = Vec::with_capacity(vertices.len());
        for (i, &z) in vertices.iter().enumerate() {
            let tri = ar_triangle(model, z);
            for m in &tri.middles {
                arrows.push((index[m], i));
            }
            translation.push(index[&tri.start]);
        }
        arrows.sort();
        ArQuiver { model: *model, vertices, index, arrows, translation }
    }

    pub fn model(&self) -> &PolygonModel {
        &self.model
    }

    pub fn vertices(&self) -> &[Diagonal] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn vertex_index(&self, d: &Diagonal) -> Option<usize> {
        self.index.get(d).copied()
    }

    /// Index of the translate of vertex `i`.
    pub fn translate_index(&self, i: usize) -> usize {
        self.translation[i]
    }

    /// Mesh relation matrix: one row per vertex z, with +1 at translate(z),
    /// -1 at each middle term, +1 at z, contributions accumulated.
    pub fn mesh_relation_matrix(&self) -> IntMatrix {
        let g = self.vertices.len();
        let mut m = IntMatrix::zeros(g, g);
        for (i, &z) in self.vertices.iter().enumerate() {
            let tri = ar_triangle(&self.model, z);
            m[(i, self.index[&tri.start])] += 1;
            for mid in &tri.middles {
                m[(i, self.index[mid])] -= 1;
            }
            m[(i, i)] += 1;
        }
        m
    }

    /// GraphViz export: solid mesh arrows, dashed translation edges
    /// (z -> translate(z)), all sorted for byte-stable output.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        out.push_str("digraph arquiver {\n");
        let _ = writeln!(
            out,
            "  // d = {}, n = {}, polygon vertices = {}",
            self.model.d(),
            self.model.n(),
            self.model.vertex_count()
        );
        for v in &self.vertices {
            let _ = writeln!(out, "  \"{v}\";");
        }
        for &(i, j) in &self.arrows {
            let _ = writeln!(out, "  \"{}\" -> \"{}\";", self.vertices[i], self.vertices[j]);
        }
        let mut tau_edges: Vec<(usize, usize)> =
            self.translation.iter().enumerate().map(|(i, &t)| (i, t)).collect();
        tau_edges.sort();
        for (i, t) in tau_edges {
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\" [style=dashed];",
                self.vertices[i], self.vertices[t]
            );
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(model: &PolygonModel, a: u32, b: u32) -> Diagonal {
        model.diagonal(a, b).unwrap()
    }

    #[test]
    fn triangle_with_two_middles() {
        let m = PolygonModel::new(2, 3);
        let tri = ar_triangle(&m, diag(&m, 3, 8));
        assert_eq!(tri.start, diag(&m, 1, 6));
        assert_eq!(tri.middles, vec![diag(&m, 1, 8), diag(&m, 3, 6)]);
    }

    #[test]
    fn triangle_with_edge_candidate_dropped() {
        let m = PolygonModel::new(2, 3);
        let tri = ar_triangle(&m, diag(&m, 1, 4));
        assert_eq!(tri.start, diag(&m, 2, 9));
        assert_eq!(tri.middles, vec![diag(&m, 4, 9)]);
    }

    #[test]
    fn triangle_in_the_top_row() {
        let m = PolygonModel::new(2, 3);
        let tri = ar_triangle(&m, diag(&m, 1, 8));
        assert_eq!(tri.start, diag(&m, 6, 9));
        assert_eq!(tri.middles, vec![diag(&m, 1, 6)]);
    }

    #[test]
    fn diameters_have_empty_middles() {
        for d in 1..=4 {
            let m = PolygonModel::new(d, 1);
            for z in m.enumerate_diagonals() {
                assert!(ar_triangle(&m, z).middles.is_empty());
            }
        }
    }

    #[test]
    fn mesh_row_example() {
        let m = PolygonModel::new(2, 3);
        let q = ArQuiver::build(&m);
        let rel = q.mesh_relation_matrix();
        let row = q.vertex_index(&diag(&m, 3, 8)).unwrap();
        let expect = |d: Diagonal| q.vertex_index(&d).unwrap();
        for j in 0..q.vertices().len() {
            let v = rel[(row, j)].clone();
            let v: i64 = v.try_into().unwrap();
            if j == expect(diag(&m, 1, 6)) || j == row {
                assert_eq!(v, 1);
            } else if j == expect(diag(&m, 1, 8)) || j == expect(diag(&m, 3, 6)) {
                assert_eq!(v, -1);
            } else {
                assert_eq!(v, 0);
            }
        }
    }

    #[test]
    fn quiver_size_matches_diagonal_count() {
        let m = PolygonModel::new(2, 3);
        let q = ArQuiver::build(&m);
        assert_eq!(q.vertices().len(), 15);
        assert_eq!(q.arrows().len(), 20);
    }

    #[test]
    fn dot_export_smallest_model() {
        let m = PolygonModel::new(1, 1);
        let q = ArQuiver::build(&m);
        let dot = q.to_dot();
        assert_eq!(dot.matches("->").count(), 2);
        assert_eq!(dot.matches("style=dashed").count(), 2);
        assert!(dot.contains("\"(1,3)\";"));
        assert!(dot.contains("\"(2,4)\";"));
        // Byte-stable output.
        assert_eq!(dot, q.to_dot());
        assert!(!dot.contains('\r'));
    }
}
