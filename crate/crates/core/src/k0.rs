//! Grothendieck-group computations for the polygon model, three independent
//! ways: the mesh presentation from the AR quiver, the explicit relation
//! matrix of the fan tilting set, and the index-vector quotient of a tilting
//! set (kernel route). A closed-form classification serves as the reference:
//! Z/(n+1) for d even, Z for d and n odd, 0 for d odd and n even.

use std::fmt;
use std::ops::RangeInclusive;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::arquiver::ArQuiver;
use crate::intlattice::{
    cokernel, hnf_nonzero, kernel_lattice, lattice_contains, solve_mod_lattice,
    AbelianGroup, FpGroup, IntMatrix,
};
use crate::polygon::{Angulation, Diagonal, PolygonModel};

/// A presentation of K_0: free group on `generators`, modulo the rows of
/// `relations`.
#[derive(Clone, Debug)]
pub struct K0Presentation<L> {
    pub generators: Vec<L>,
    pub relations: IntMatrix,
}

/// The mesh presentation of K_0 in diagonalized form, computed once per
/// model and reused for class and index computations.
pub struct MeshK0 {
    quiver: ArQuiver,
    relations: IntMatrix,
    fp: FpGroup,
}

/// A class in K_0 in diagonalized coordinates: one coordinate per torsion
/// generator (reduced modulo its order) followed by the free coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassVector {
    pub torsion: Vec<BigInt>,
    pub free: Vec<BigInt>,
}

impl ClassVector {
    pub fn is_zero(&self) -> bool {
        self.torsion.iter().all(Zero::is_zero) && self.free.iter().all(Zero::is_zero)
    }

    fn as_row(&self) -> Vec<BigInt> {
        let mut row = self.torsion.clone();
        row.extend(self.free.iter().cloned());
        row
    }
}

impl MeshK0 {
    pub fn new(model: &PolygonModel) -> Self {
        let quiver = ArQuiver::build(model);
        let relations = quiver.mesh_relation_matrix();
        let fp = FpGroup::from_relations(relations.cols(), &relations);
        MeshK0 { quiver, relations, fp }
    }

    pub fn model(&self) -> &PolygonModel {
        self.quiver.model()
    }

    pub fn quiver(&self) -> &ArQuiver {
        &self.quiver
    }

    pub fn group(&self) -> &AbelianGroup {
        self.fp.group()
    }

    pub fn presentation(&self) -> K0Presentation<Diagonal> {
        K0Presentation {
            generators: self.quiver.vertices().to_vec(),
            relations: self.relations.clone(),
        }
    }

    /// Class of a single diagonal.
    pub fn class_of(&self, u: Diagonal) -> ClassVector {
        let idx = self
            .quiver
            .vertex_index(&u)
            .expect("diagonal belongs to the model");
        let g = self.quiver.vertices().len();
        let mut e = vec![BigInt::zero(); g];
        e[idx] = BigInt::from(1);
        self.class_of_vector(&e)
    }

    /// Class of an arbitrary integer combination of diagonals.
    pub fn class_of_vector(&self, x: &[BigInt]) -> ClassVector {
        let coords = self.fp.project(x);
        let t = self.fp.torsion_orders().len();
        ClassVector { torsion: coords[..t].to_vec(), free: coords[t..].to_vec() }
    }

    /// Orders of the torsion generators in diagonalized coordinates.
    pub fn torsion_orders(&self) -> Vec<BigInt> {
        self.fp.torsion_orders().to_vec()
    }
}

/// The mesh-route Grothendieck group of the model.
pub fn k0_mesh(model: &PolygonModel) -> AbelianGroup {
    MeshK0::new(model).group().clone()
}

/// The n x g matrix whose i-th row is the basis vector of the i-th tilting
/// summand in the diagonal basis of the quiver.
pub fn tilting_map(quiver: &ArQuiver, tilting: &Angulation) -> IntMatrix {
    let g = quiver.vertices().len();
    let mut m = IntMatrix::zeros(tilting.len(), g);
    for (i, t) in tilting.diagonals().iter().enumerate() {
        let idx = quiver.vertex_index(t).expect("tilting summand belongs to the model");
        m[(i, idx)] = BigInt::from(1);
    }
    m
}

/// The classes of the tilting summands fail to generate K_0; the tilting data
/// is unusable for index computations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotGenerating;

impl fmt::Display for NotGenerating {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tilting classes do not generate the Grothendieck group")
    }
}

impl std::error::Error for NotGenerating {}

/// Index computations against a fixed tilting set: the lattice of relations
/// among the summand classes and the quotient group it presents.
pub struct TiltingContext<'a> {
    mesh: &'a MeshK0,
    /// n x m matrix of summand classes in diagonalized coordinates.
    class_rows: IntMatrix,
    /// Relations of the diagonalized presentation: order * generator.
    diag_relations: IntMatrix,
    /// HNF basis of { x in Z^n : sum x_i [T_i] = 0 }.
    im_psi: IntMatrix,
}

impl<'a> TiltingContext<'a> {
    /// Checks that the summand classes generate K_0.
    pub fn new(mesh: &'a MeshK0, tilting: &Angulation) -> Result<Self, NotGenerating> {
        let torsion = mesh.torsion_orders();
        let t = torsion.len();
        let m = t + mesh.group().free_rank;
        let n = tilting.len();
        let mut class_rows = IntMatrix::zeros(n, m);
        for (i, u) in tilting.diagonals().iter().enumerate() {
            let row = mesh.class_of(*u).as_row();
            for (j, v) in row.into_iter().enumerate() {
                class_rows[(i, j)] = v;
            }
        }
        let mut diag_relations = IntMatrix::zeros(t, m);
        for (k, order) in torsion.iter().enumerate() {
            diag_relations[(k, k)] = order.clone();
        }
        let stacked = class_rows.vstack(&diag_relations);
        if !cokernel(&stacked).is_trivial() {
            return Err(NotGenerating);
        }
        let im_psi = hnf_nonzero(&kernel_lattice(&stacked).take_cols(n));
        Ok(TiltingContext { mesh, class_rows, diag_relations, im_psi })
    }

    /// The lattice of integer relations among the summand classes, in HNF.
    pub fn im_psi_lattice(&self) -> &IntMatrix {
        &self.im_psi
    }

    /// K_0 presented on the summands: Z^n modulo the relation lattice.
    pub fn index_group(&self) -> AbelianGroup {
        cokernel(&self.im_psi)
    }

    /// Index of a diagonal: coordinates x with sum x_i [T_i] = [u], reduced
    /// to the canonical representative modulo the relation lattice.
    pub fn index_of(&self, u: Diagonal) -> IndexVector {
        let b = self.mesh.class_of(u).as_row();
        let coords = solve_mod_lattice(&self.class_rows, &self.diag_relations, &b)
            .expect("generating classes admit an index for every object");
        IndexVector { coords, modulus: self.im_psi.clone() }
    }

    /// Echo check: does `index` really express `[u]` in the summand classes?
    pub fn verify_index(&self, index: &IndexVector, u: Diagonal) -> bool {
        let combo = self.class_rows.act_on(&index.coords);
        let target = self.mesh.class_of(u).as_row();
        let diff: Vec<BigInt> = combo
            .iter()
            .zip(target.iter())
            .map(|(a, b)| a - b)
            .collect();
        let diag_hnf = hnf_nonzero(&self.diag_relations);
        lattice_contains(&diag_hnf, &diff)
    }
}

/// Coordinates of an object with respect to a tilting set, together with the
/// relation lattice the coordinates are understood modulo.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexVector {
    pub coords: Vec<BigInt>,
    pub modulus: IntMatrix,
}

/// Relation lattice of the tilting summand classes, as the kernel of the
/// composition Z^n -> Z^g -> K_0 (mesh quotient).
pub fn im_psi_lattice(
    mesh: &MeshK0,
    tilting: &Angulation,
) -> Result<IntMatrix, NotGenerating> {
    Ok(TiltingContext::new(mesh, tilting)?.im_psi_lattice().clone())
}

/// Kernel-route Grothendieck group: Z^n modulo the index relation lattice.
pub fn k0_index_group(
    mesh: &MeshK0,
    tilting: &Angulation,
) -> Result<AbelianGroup, NotGenerating> {
    Ok(TiltingContext::new(mesh, tilting)?.index_group())
}

/// Index of `u` with respect to `tilting`.
pub fn index_in_quotient(
    mesh: &MeshK0,
    tilting: &Angulation,
    u: Diagonal,
) -> Result<IndexVector, NotGenerating> {
    Ok(TiltingContext::new(mesh, tilting)?.index_of(u))
}

/// Relation matrix satisfied by the fan tilting classes [T_1], ..., [T_n].
///
/// For d even row i reads [T_{i-1}] + 2[T_i] + [T_{i+1}] = 0 (truncated at
/// the ends); for d odd the doubled middle term cancels and row i reads
/// [T_{i-1}] + [T_{i+1}] = 0.
pub fn fan_relations(model: &PolygonModel) -> IntMatrix {
    let n = model.n() as usize;
    let even = model.d() % 2 == 0;
    if n == 1 {
        return if even {
            IntMatrix::from_rows(1, &[vec![2]])
        } else {
            IntMatrix::zeros(0, 1)
        };
    }
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = vec![0i64; n];
        if even {
            row[i] = 2;
        }
        if i > 0 {
            row[i - 1] = 1;
        }
        if i + 1 < n {
            row[i + 1] = 1;
        }
        rows.push(row);
    }
    IntMatrix::from_rows(n, &rows)
}

/// Fan-route Grothendieck group: cokernel of the fan relation matrix.
pub fn k0_fan(model: &PolygonModel) -> AbelianGroup {
    cokernel(&fan_relations(model))
}

/// The closed-form classification of K_0.
pub fn closed_form(d: u32, n: u32) -> AbelianGroup {
    if d % 2 == 0 {
        AbelianGroup::cyclic(u64::from(n) + 1)
    } else if n % 2 == 1 {
        AbelianGroup::free(1)
    } else {
        AbelianGroup::trivial()
    }
}

/// Group shape in the JSON report.
#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct GroupReport {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl From<&AbelianGroup> for GroupReport {
    fn from(g: &AbelianGroup) -> Self {
        GroupReport {
            rank: g.free_rank,
            torsion: g
                .torsion
                .iter()
                .map(|t| t.to_u64().expect("torsion order fits in u64"))
                .collect(),
        }
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct RoutesReport {
    pub mesh: GroupReport,
    pub fan: GroupReport,
    pub kernel: GroupReport,
    pub closed_form: GroupReport,
}

/// Verification result for a single (d, n) cell.
#[derive(Serialize, Clone, Debug)]
pub struct CellReport {
    pub d: u32,
    pub n: u32,
    pub routes: RoutesReport,
    pub agree: bool,
    pub ledger: Vec<String>,
    pub ms: u64,
}

/// Compute all four routes for one cell, check the fan ledger relations, and
/// summarize. `timings` controls whether `ms` reports wall time (when off it
/// is a deterministic 0 so identical runs print identical bytes).
pub fn verify_cell(d: u32, n: u32, timings: bool) -> CellReport {
    let started = Instant::now();
    let model = PolygonModel::new(d, n);
    let mesh = MeshK0::new(&model);
    let fan = model.fan_tilting();
    let ctx = TiltingContext::new(&mesh, &fan).expect("fan tilting generates K_0");
    let mesh_group = mesh.group().clone();
    let fan_group = k0_fan(&model);
    let kernel_group = ctx.index_group();
    let reference = closed_form(d, n);
    let (ledger, ledger_ok) = fan_ledger(&model, ctx.im_psi_lattice());
    let agree = mesh_group == reference
        && fan_group == reference
        && kernel_group == reference
        && ledger_ok;
    let ms = if timings { started.elapsed().as_millis() as u64 } else { 0 };
    CellReport {
        d,
        n,
        routes: RoutesReport {
            mesh: (&mesh_group).into(),
            fan: (&fan_group).into(),
            kernel: (&kernel_group).into(),
            closed_form: (&reference).into(),
        },
        agree,
        ledger,
        ms,
    }
}

/// Verify a rectangle of cells; ranges are inclusive.
pub fn verify_cells(
    d_range: RangeInclusive<u32>,
    n_range: RangeInclusive<u32>,
    timings: bool,
) -> Vec<CellReport> {
    let mut out = Vec::new();
    for d in d_range {
        for n in n_range.clone() {
            out.push(verify_cell(d, n, timings));
        }
    }
    out
}

/// Human-readable relations satisfied by the fan classes, each one verified
/// as a membership in the relation lattice. Lines that fail verification are
/// prefixed with `failed:` and flip the cell to disagreement.
fn fan_ledger(model: &PolygonModel, im_psi: &IntMatrix) -> (Vec<String>, bool) {
    let n = model.n() as usize;
    let mut lines = Vec::new();
    let mut ok = true;
    let mut push_checked = |relation: Vec<BigInt>, text: String, ok: &mut bool| {
        if lattice_contains(im_psi, &relation) {
            lines.push(text);
        } else {
            lines.push(format!("failed:{text}"));
            *ok = false;
        }
    };
    let e = |i: usize, c: i64| -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); n];
        v[i] = BigInt::from(c);
        v
    };
    if model.d() % 2 == 0 {
        // [T_i] = (-1)^{i+1} i [T_1] and (n+1)[T_1] = 0.
        for i in 2..=n {
            let c: i64 = if i % 2 == 0 { -(i as i64) } else { i as i64 };
            let mut rel = e(i - 1, 1);
            rel[0] = BigInt::from(-c);
            push_checked(rel, format!("[T{i}]={c}[T1]"), &mut ok);
        }
        push_checked(e(0, n as i64 + 1), format!("{}[T1]=0", n + 1), &mut ok);
    } else {
        // Even-indexed classes vanish; odd-indexed ones alternate in sign.
        for i in 2..=n {
            if i % 2 == 0 {
                push_checked(e(i - 1, 1), format!("[T{i}]=0"), &mut ok);
            } else {
                let sign = if ((i - 1) / 2) % 2 == 0 { 1 } else { -1 };
                let mut rel = e(i - 1, 1);
                rel[0] = BigInt::from(-sign);
                let c = if sign == 1 { "" } else { "-" };
                push_checked(rel, format!("[T{i}]={c}[T1]"), &mut ok);
            }
        }
        if n % 2 == 0 {
            push_checked(e(0, 1), "[T1]=0".to_string(), &mut ok);
        }
    }
    (lines, ok)
}
