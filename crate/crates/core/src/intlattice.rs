//! Exact linear algebra over the integers: Hermite and Smith normal forms,
//! kernel lattices, cokernels as abelian groups, and solving linear systems
//! modulo a lattice.
//!
//! Matrices act on row vectors (`x * M`), relations are matrix rows, and a
//! lattice is always the row span of a matrix.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense matrix of arbitrary-precision integers, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Build from machine-integer rows; all rows must have equal length.
    /// An empty row list gives a 0 x `cols` matrix.
    pub fn from_rows(cols: usize, rows: &[Vec<i64>]) -> Self {
        let mut m = IntMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row {i} has wrong length");
            for (j, v) in r.iter().enumerate() {
                m[(i, j)] = BigInt::from(*v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    fn row_is_zero(&self, i: usize) -> bool {
        self.row(i).iter().all(|v| v.is_zero())
    }

    /// Stack `other` below `self`; column counts must match.
    pub fn vstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols, "vstack: column mismatch");
        let mut m = IntMatrix::zeros(self.rows + other.rows, self.cols);
        m.data[..self.data.len()].clone_from_slice(&self.data);
        m.data[self.data.len()..].clone_from_slice(&other.data);
        m
    }

    /// Keep only the first `k` columns of every row.
    pub fn take_cols(&self, k: usize) -> IntMatrix {
        assert!(k <= self.cols);
        let mut m = IntMatrix::zeros(self.rows, k);
        for i in 0..self.rows {
            for j in 0..k {
                m[(i, j)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "mul: dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let prod = a * b;
                        out[(i, j)] += prod;
                    }
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn act_on(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.rows, "act_on: dimension mismatch");
        let mut out = vec![BigInt::zero(); self.cols];
        for i in 0..self.rows {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.cols {
                let prod = &x[i] * &self[(i, j)];
                out[j] += prod;
            }
        }
        out
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        if i == k {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(i * self.cols + j, k * self.cols + j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }

    /// row[i] -= q * row[k]
    fn row_submul(&mut self, i: usize, k: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let sub = q * &self[(k, j)];
            self[(i, j)] -= sub;
        }
    }

    fn swap_cols(&mut self, j: usize, l: usize) {
        if j == l {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + j, i * self.cols + l);
        }
    }

    /// col[j] -= q * col[l]
    fn col_submul(&mut self, j: usize, l: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let sub = q * &self[(i, l)];
            self[(i, j)] -= sub;
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination; square matrices only.
    /// Kept independent of the normal-form code so the two can cross-check.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "det: matrix not square");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&r| !m[(r, k)].is_zero()) {
                    Some(r) => {
                        m.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)];
                    let (q, r) = num.div_rem(&prev);
                    debug_assert!(r.is_zero(), "Bareiss division must be exact");
                    m[(i, j)] = q;
                }
            }
            prev = m[(k, k)].clone();
        }
        let d = m[(n - 1, n - 1)].clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let entries: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", entries.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Row-style Hermite normal form `u * a = h` with `u` unimodular.
///
/// `h` is upper echelon: pivots positive, entries above a pivot reduced into
/// `[0, pivot)`, zero rows last.
pub struct HermiteForm {
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub rank: usize,
}

pub fn hnf(a: &IntMatrix) -> HermiteForm {
    let mut h = a.clone();
    let mut u = IntMatrix::identity(a.rows());
    let mut pivot_row = 0;
    for col in 0..h.cols() {
        if pivot_row == h.rows() {
            break;
        }
        // Repeatedly reduce the column below `pivot_row` by its smallest
        // nonzero entry until a single nonzero entry remains.
        loop {
            let candidate = (pivot_row..h.rows())
                .filter(|&r| !h[(r, col)].is_zero())
                .min_by_key(|&r| h[(r, col)].abs());
            let Some(best) = candidate else { break };
            h.swap_rows(pivot_row, best);
            u.swap_rows(pivot_row, best);
            let mut done = true;
            for r in pivot_row + 1..h.rows() {
                if h[(r, col)].is_zero() {
                    continue;
                }
                let q = h[(r, col)].div_floor(&h[(pivot_row, col)]);
                h.row_submul(r, pivot_row, &q);
                u.row_submul(r, pivot_row, &q);
                if !h[(r, col)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(pivot_row, col)].is_zero() {
            continue;
        }
        if h[(pivot_row, col)].is_negative() {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        for r in 0..pivot_row {
            let q = h[(r, col)].div_floor(&h[(pivot_row, col)]);
            h.row_submul(r, pivot_row, &q);
            u.row_submul(r, pivot_row, &q);
        }
        pivot_row += 1;
    }
    HermiteForm { h, u, rank: pivot_row }
}

/// Smith normal form `u * a * v = s` with `u`, `v` unimodular and `s`
/// diagonal, entries nonnegative with each dividing the next.
pub struct SmithForm {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

pub fn snf(a: &IntMatrix) -> SmithForm {
    let mut s = a.clone();
    let mut u = IntMatrix::identity(a.rows());
    let mut v = IntMatrix::identity(a.cols());
    let n = a.rows().min(a.cols());
    let mut rank = 0;
    for k in 0..n {
        // Move the submatrix entry of least nonzero magnitude to (k, k).
        let pivot = (k..s.rows())
            .flat_map(|i| (k..s.cols()).map(move |j| (i, j)))
            .filter(|&(i, j)| !s[(i, j)].is_zero())
            .min_by_key(|&(i, j)| s[(i, j)].abs());
        let Some((pi, pj)) = pivot else { break };
        s.swap_rows(k, pi);
        u.swap_rows(k, pi);
        s.swap_cols(k, pj);
        v.swap_cols(k, pj);
        loop {
            // Clear column k below the pivot, then row k to its right,
            // re-selecting a smaller pivot whenever a remainder survives.
            let mut dirty = false;
            for i in k + 1..s.rows() {
                if s[(i, k)].is_zero() {
                    continue;
                }
                let q = s[(i, k)].div_floor(&s[(k, k)]);
                s.row_submul(i, k, &q);
                u.row_submul(i, k, &q);
                if !s[(i, k)].is_zero() {
                    s.swap_rows(k, i);
                    u.swap_rows(k, i);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            for j in k + 1..s.cols() {
                if s[(k, j)].is_zero() {
                    continue;
                }
                let q = s[(k, j)].div_floor(&s[(k, k)]);
                s.col_submul(j, k, &q);
                v.col_submul(j, k, &q);
                if !s[(k, j)].is_zero() {
                    s.swap_cols(k, j);
                    v.swap_cols(k, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Pivot divides everything in its row/column; enforce global
            // divisibility by folding in any offending row.
            let offender = (k + 1..s.rows())
                .flat_map(|i| (k + 1..s.cols()).map(move |j| (i, j)))
                .find(|&(i, j)| !s[(i, j)].mod_floor(&s[(k, k)]).is_zero());
            match offender {
                Some((i, _)) => {
                    let minus_one = BigInt::from(-1);
                    s.row_submul(k, i, &minus_one);
                    u.row_submul(k, i, &minus_one);
                }
                None => break,
            }
        }
        if s[(k, k)].is_negative() {
            s.negate_row(k);
            u.negate_row(k);
        }
        rank += 1;
    }
    SmithForm { s, u, v, rank }
}

/// Finitely generated abelian group in invariant-factor form.
///
/// `torsion` entries are each at least 2 and each divides the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup { free_rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { free_rank: rank, torsion: Vec::new() }
    }

    pub fn cyclic(order: u64) -> Self {
        assert!(order >= 2);
        AbelianGroup { free_rank: 0, torsion: vec![BigInt::from(order)] }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Cokernel of the row action: the abelian group `Z^cols / rowspan(a)`.
pub fn cokernel(a: &IntMatrix) -> AbelianGroup {
    let sf = snf(a);
    let mut torsion = Vec::new();
    for k in 0..sf.rank {
        let d = &sf.s[(k, k)];
        if *d >= BigInt::from(2) {
            torsion.push(d.clone());
        }
    }
    AbelianGroup { free_rank: a.cols() - sf.rank, torsion }
}

/// A finitely presented abelian group `Z^g / rowspan(relations)` together
/// with the projection of generator space onto diagonalized coordinates.
///
/// Large sparse presentations (one relation per mesh, say) are reduced
/// cheaply by eliminating generators along unit pivots; only the small
/// remaining core goes through Smith reduction. The substitutions performed
/// on the way are recorded, so the class of any integer combination of the
/// original generators can still be computed exactly.
pub struct FpGroup {
    generators: usize,
    group: AbelianGroup,
    /// g x (t + f) matrix; row u is the class of generator u, torsion
    /// coordinates reduced modulo the matching invariant factor.
    projection: IntMatrix,
}

impl FpGroup {
    pub fn from_relations(generators: usize, relations: &IntMatrix) -> FpGroup {
        assert_eq!(relations.cols(), generators, "relation width must match generator count");
        let g = generators;
        let mut rows: Vec<BTreeMap<usize, BigInt>> = (0..relations.rows())
            .map(|i| {
                relations
                    .row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(j, v)| (j, v.clone()))
                    .collect()
            })
            .collect();
        let mut row_live: Vec<bool> = rows.iter().map(|r| !r.is_empty()).collect();
        let mut col_live = vec![true; g];
        let mut col_count = vec![0usize; g];
        for (i, row) in rows.iter().enumerate() {
            if row_live[i] {
                for &j in row.keys() {
                    col_count[j] += 1;
                }
            }
        }
        // Generators eliminated so far, each with its expansion in the
        // generators that were still live at elimination time.
        let mut subs: Vec<(usize, BTreeMap<usize, BigInt>)> = Vec::new();

        loop {
            // Unit pivot with the least fill-in, Markowitz style.
            let mut best: Option<(usize, usize, usize)> = None;
            for (r, row) in rows.iter().enumerate() {
                if !row_live[r] {
                    continue;
                }
                for (&c, v) in row {
                    if !v.is_one() && !(-v).is_one() {
                        continue;
                    }
                    let score = (row.len() - 1) * (col_count[c] - 1);
                    if best.map_or(true, |(_, _, s)| score < s) {
                        best = Some((r, c, score));
                    }
                }
                if matches!(best, Some((_, _, 0))) {
                    break;
                }
            }
            let Some((r, c, _)) = best else { break };
            if (-&rows[r][&c]).is_one() {
                for v in rows[r].values_mut() {
                    *v = -&*v;
                }
            }
            let pivot_row = rows[r].clone();
            for r2 in 0..rows.len() {
                if r2 == r || !row_live[r2] {
                    continue;
                }
                let Some(coef) = rows[r2].get(&c).cloned() else { continue };
                for (&j, pv) in &pivot_row {
                    let delta = &coef * pv;
                    match rows[r2].entry(j) {
                        std::collections::btree_map::Entry::Occupied(mut e) => {
                            *e.get_mut() -= delta;
                            if e.get().is_zero() {
                                e.remove();
                                col_count[j] -= 1;
                            }
                        }
                        std::collections::btree_map::Entry::Vacant(e) => {
                            e.insert(-delta);
                            col_count[j] += 1;
                        }
                    }
                }
                debug_assert!(!rows[r2].contains_key(&c));
                if rows[r2].is_empty() {
                    row_live[r2] = false;
                }
            }
            let mut expansion = pivot_row;
            for &j in expansion.keys().cloned().collect::<Vec<_>>().iter() {
                col_count[j] -= 1;
            }
            expansion.remove(&c);
            for v in expansion.values_mut() {
                *v = -&*v;
            }
            subs.push((c, expansion));
            row_live[r] = false;
            col_live[c] = false;
        }

        // Diagonalize the remaining core by Smith reduction.
        let core_cols: Vec<usize> = (0..g).filter(|&j| col_live[j]).collect();
        let col_pos: BTreeMap<usize, usize> =
            core_cols.iter().enumerate().map(|(p, &j)| (j, p)).collect();
        let live_rows: Vec<usize> = (0..rows.len()).filter(|&r| row_live[r]).collect();
        let mut core = IntMatrix::zeros(live_rows.len(), core_cols.len());
        for (i, &r) in live_rows.iter().enumerate() {
            for (&j, v) in &rows[r] {
                core[(i, col_pos[&j])] = v.clone();
            }
        }
        let sf = snf(&core);
        let mut orders = Vec::new();
        let mut torsion_coords = Vec::new();
        for k in 0..sf.rank {
            let s = sf.s[(k, k)].clone();
            if s >= BigInt::from(2) {
                torsion_coords.push(k);
                orders.push(s);
            }
        }
        let t = orders.len();
        let f = core_cols.len() - sf.rank;
        let m = t + f;
        let layout = |vrow: &[BigInt]| -> Vec<BigInt> {
            let mut out = Vec::with_capacity(m);
            for (i, &k) in torsion_coords.iter().enumerate() {
                out.push(vrow[k].mod_floor(&orders[i]));
            }
            out.extend_from_slice(&vrow[sf.rank..]);
            out
        };

        let mut final_rows: Vec<Option<Vec<BigInt>>> = vec![None; g];
        for (p, &j) in core_cols.iter().enumerate() {
            final_rows[j] = Some(layout(sf.v.row(p)));
        }
        for (c, expansion) in subs.iter().rev() {
            let mut acc = vec![BigInt::zero(); m];
            for (&j, coef) in expansion {
                let row = final_rows[j]
                    .as_ref()
                    .expect("expansion refers to an already-resolved generator");
                for (k, slot) in acc.iter_mut().enumerate() {
                    *slot += coef * &row[k];
                }
            }
            for (i, order) in orders.iter().enumerate() {
                acc[i] = acc[i].mod_floor(order);
            }
            final_rows[*c] = Some(acc);
        }

        let mut projection = IntMatrix::zeros(g, m);
        for (u, row) in final_rows.into_iter().enumerate() {
            for (k, v) in row.expect("every generator resolves").into_iter().enumerate() {
                projection[(u, k)] = v;
            }
        }
        let group = AbelianGroup { free_rank: f, torsion: orders };
        FpGroup { generators: g, group, projection }
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    /// The invariant factors the leading class coordinates are reduced by.
    pub fn torsion_orders(&self) -> &[BigInt] {
        &self.group.torsion
    }

    /// Class of an integer combination of generators, as diagonalized
    /// coordinates (torsion first, reduced; then free).
    pub fn project(&self, x: &[BigInt]) -> Vec<BigInt> {
        let mut out = self.projection.act_on(x);
        for (i, order) in self.group.torsion.iter().enumerate() {
            out[i] = out[i].mod_floor(order);
        }
        out
    }
}

/// Basis of the left kernel `{ x : x * a = 0 }`, returned in Hermite normal
/// form with zero rows dropped. The basis may be empty (0 x rows).
pub fn kernel_lattice(a: &IntMatrix) -> IntMatrix {
    let hf = hnf(a);
    let mut rows = Vec::new();
    for i in hf.rank..a.rows() {
        debug_assert!(hf.h.row_is_zero(i));
        rows.push(hf.u.row(i).to_vec());
    }
    let mut k = IntMatrix::zeros(rows.len(), a.rows());
    for (i, r) in rows.into_iter().enumerate() {
        for (j, v) in r.into_iter().enumerate() {
            k[(i, j)] = v;
        }
    }
    hnf_nonzero(&k)
}

/// HNF of `a` with zero rows removed: the canonical basis of rowspan(a).
pub fn hnf_nonzero(a: &IntMatrix) -> IntMatrix {
    let hf = hnf(a);
    let mut out = IntMatrix::zeros(hf.rank, a.cols());
    for i in 0..hf.rank {
        for j in 0..a.cols() {
            out[(i, j)] = hf.h[(i, j)].clone();
        }
    }
    out
}

/// Do two row spans define the same lattice?
pub fn lattice_equal(a: &IntMatrix, b: &IntMatrix) -> bool {
    assert_eq!(a.cols(), b.cols(), "lattice_equal: ambient dimension mismatch");
    hnf_nonzero(a) == hnf_nonzero(b)
}

/// Is `x` in the row span of `basis`?
pub fn lattice_contains(basis_hnf: &IntMatrix, x: &[BigInt]) -> bool {
    reduce_mod_lattice(x, basis_hnf).iter().all(|v| v.is_zero())
}

/// Canonical coset representative of `x` modulo the row span of `basis_hnf`
/// (which must be in HNF with zero rows dropped): at each pivot column the
/// result lies in `[0, pivot)`.
pub fn reduce_mod_lattice(x: &[BigInt], basis_hnf: &IntMatrix) -> Vec<BigInt> {
    assert_eq!(x.len(), basis_hnf.cols(), "reduce_mod_lattice: dimension mismatch");
    let mut out = x.to_vec();
    for i in 0..basis_hnf.rows() {
        let Some(p) = (0..basis_hnf.cols()).find(|&j| !basis_hnf[(i, j)].is_zero()) else {
            continue;
        };
        let q = out[p].div_floor(&basis_hnf[(i, p)]);
        if q.is_zero() {
            continue;
        }
        for j in 0..basis_hnf.cols() {
            let sub = &q * &basis_hnf[(i, j)];
            out[j] -= sub;
        }
    }
    out
}

/// No integer solution exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NoSolution;

impl fmt::Display for NoSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "no integer solution modulo the given lattice")
    }
}

impl std::error::Error for NoSolution {}

/// Solve `x * m ≡ b (mod rowspan(l))` for integer `x`.
///
/// The returned solution is the canonical representative of its coset modulo
/// the solution lattice `{ x : x * m ∈ rowspan(l) }`.
pub fn solve_mod_lattice(
    m: &IntMatrix,
    l: &IntMatrix,
    b: &[BigInt],
) -> Result<Vec<BigInt>, NoSolution> {
    assert_eq!(m.cols(), l.cols(), "solve_mod_lattice: ambient dimension mismatch");
    assert_eq!(b.len(), m.cols(), "solve_mod_lattice: rhs dimension mismatch");
    let stacked = m.vstack(l);
    let hf = hnf(&stacked);
    // Forward-substitute z * h = b, requiring exact division at each pivot.
    let mut residual = b.to_vec();
    let mut z = vec![BigInt::zero(); stacked.rows()];
    for i in 0..hf.rank {
        let p = (0..hf.h.cols())
            .find(|&j| !hf.h[(i, j)].is_zero())
            .expect("nonzero row within rank");
        if residual[p].is_zero() {
            continue;
        }
        let (q, r) = residual[p].div_rem(&hf.h[(i, p)]);
        if !r.is_zero() {
            return Err(NoSolution);
        }
        for j in 0..hf.h.cols() {
            let sub = &q * &hf.h[(i, j)];
            residual[j] -= sub;
        }
        z[i] = q;
    }
    if residual.iter().any(|v| !v.is_zero()) {
        return Err(NoSolution);
    }
    let y = hf.u.act_on(&z)[..m.rows()].to_vec();
    // Canonicalize modulo the lattice of homogeneous solutions, i.e. the
    // projection of the left kernel of the stacked matrix onto the x-block.
    let kern = kernel_lattice(&stacked);
    let solution_lattice = hnf_nonzero(&kern.take_cols(m.rows()));
    Ok(reduce_mod_lattice(&y, &solution_lattice))
}
