//! Independent Hom/Ext oracle.
//!
//! Indecomposables of the bounded derived category of the linearly oriented
//! A_n path algebra are shifted interval modules `M[lo, hi][shift]`. This
//! module implements their Hom spaces combinatorially, forms the orbit
//! category under `orbit_functor = tau^{-1} . Sigma^d`, and matches its AR
//! quiver against the diagonal quiver of the polygon model. The resulting
//! bijection turns polygon questions (crossings, rigidity) into Hom
//! computations that never touch the mesh or fan matrices.

use std::collections::HashMap;
use std::fmt;

use crate::arquiver::{ar_triangle, ArQuiver};
use crate::polygon::{Diagonal, PolygonModel};

/// A shifted interval module: the module supported on `lo..=hi` placed in
/// cohomological degree `-shift` (so `shift` counts suspensions).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DbObject {
    pub lo: u32,
    pub hi: u32,
    pub shift: i64,
}

impl DbObject {
    pub fn new(lo: u32, hi: u32, shift: i64) -> Self {
        assert!(1 <= lo && lo <= hi, "interval must satisfy 1 <= lo <= hi");
        DbObject { lo, hi, shift }
    }
}

impl fmt::Display for DbObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M[{},{}][{}]", self.lo, self.hi, self.shift)
    }
}

/// Hom dimension between shifted interval modules.
///
/// In the same shift this is the interval-overlap rule for module
/// homomorphisms; one shift apart it is the extension rule; hereditary
/// algebras admit nothing else.
pub fn hom_db(n: u32, x: DbObject, y: DbObject) -> u64 {
    debug_assert!(x.hi <= n && y.hi <= n, "intervals must fit the rank");
    match y.shift - x.shift {
        0 => u64::from(y.lo <= x.lo && x.lo <= y.hi && y.hi <= x.hi),
        1 => u64::from(x.lo < y.lo && y.lo <= x.hi + 1 && x.hi + 1 <= y.hi),
        _ => 0,
    }
}

/// AR translation: slide the interval up, wrapping projectives to shifted
/// injectives.
pub fn tau_db(n: u32, x: DbObject) -> DbObject {
    if x.hi < n {
        DbObject::new(x.lo + 1, x.hi + 1, x.shift)
    } else {
        DbObject::new(1, x.lo, x.shift - 1)
    }
}

/// Inverse AR translation.
pub fn tau_db_inv(n: u32, x: DbObject) -> DbObject {
    if x.lo > 1 {
        DbObject::new(x.lo - 1, x.hi - 1, x.shift)
    } else {
        DbObject::new(x.hi, n, x.shift + 1)
    }
}

/// Suspension by `k`.
pub fn sigma_db(x: DbObject, k: i64) -> DbObject {
    DbObject::new(x.lo, x.hi, x.shift + k)
}

/// The identification functor of the orbit construction: `tau^{-1} . Sigma^d`.
/// It raises the shift by `d` or `d + 1`, so orbits meet each shift window
/// finitely often.
pub fn orbit_functor(n: u32, d: u32, x: DbObject) -> DbObject {
    tau_db_inv(n, sigma_db(x, i64::from(d)))
}

/// Inverse of [`orbit_functor`].
pub fn orbit_functor_inv(n: u32, d: u32, x: DbObject) -> DbObject {
    sigma_db(tau_db(n, x), -i64::from(d))
}

/// The canonical representative of the orbit of `x`: the unique element with
/// nonnegative shift whose predecessor has negative shift.
pub fn canonical_rep(n: u32, d: u32, x: DbObject) -> DbObject {
    let mut z = x;
    while z.shift < 0 {
        z = orbit_functor(n, d, z);
    }
    while orbit_functor_inv(n, d, z).shift >= 0 {
        z = orbit_functor_inv(n, d, z);
    }
    z
}

/// Hom dimension in the orbit category: sum of Hom into all translates of
/// `y`. Only translates whose shift lands in the two-shift window around `x`
/// can contribute, so the sum is finite.
pub fn hom_orbit(n: u32, d: u32, x: DbObject, y: DbObject) -> u64 {
    let mut z = y;
    while z.shift >= x.shift {
        z = orbit_functor_inv(n, d, z);
    }
    let mut total = 0;
    while z.shift <= x.shift + 1 {
        total += hom_db(n, x, z);
        z = orbit_functor(n, d, z);
    }
    total
}

/// Middle terms of the AR mesh ending at `x`.
pub fn middles_db(n: u32, x: DbObject) -> Vec<DbObject> {
    let mut out = Vec::with_capacity(2);
    if x.hi < n {
        out.push(DbObject::new(x.lo, x.hi + 1, x.shift));
    }
    if x.lo < x.hi {
        out.push(DbObject::new(x.lo + 1, x.hi, x.shift));
    }
    if x.hi == n && x.lo >= 2 {
        out.push(DbObject::new(1, x.lo - 1, x.shift - 1));
    }
    out
}

/// AR quiver of the orbit category on canonical representatives.
pub struct OrbitQuiver {
    n: u32,
    d: u32,
    reps: Vec<DbObject>,
    index: HashMap<DbObject, usize>,
    /// Arrows (source index, target index), one per mesh middle.
    arrows: Vec<(usize, usize)>,
    /// AR translation as a permutation of representative indices.
    translation: Vec<usize>,
}

impl OrbitQuiver {
    pub fn build(n: u32, d: u32) -> Self {
        let w = u64::from(d) * (u64::from(n) + 1) + 2;
        let mut reps = Vec::new();
        for s in 0..=i64::from(d) {
            for lo in 1..=n {
                for hi in lo..=n {
                    let x = DbObject::new(lo, hi, s);
                    if orbit_functor_inv(n, d, x).shift < 0 {
                        reps.push(x);
                    }
                }
            }
        }
        reps.sort();
        assert_eq!(
            reps.len() as u64 * 2,
            u64::from(n) * w,
            "orbit representative count must match the diagonal count"
        );
        let index: HashMap<DbObject, usize> =
            reps.iter().enumerate().map(|(i, x)| (*x, i)).collect();
        let mut arrows = Vec::new();
        for (i, x) in reps.iter().enumerate() {
            for m in middles_db(n, *x) {
                let j = index[&canonical_rep(n, d, m)];
                arrows.push((j, i));
            }
        }
        arrows.sort_unstable();
        let translation = reps
            .iter()
            .map(|x| index[&canonical_rep(n, d, tau_db(n, *x))])
            .collect();
        OrbitQuiver { n, d, reps, index, arrows, translation }
    }

    pub fn reps(&self) -> &[DbObject] {
        &self.reps
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn index_of(&self, x: DbObject) -> usize {
        self.index[&canonical_rep(self.n, self.d, x)]
    }

    pub fn translate_index(&self, i: usize) -> usize {
        self.translation[i]
    }
}

/// The anchored matching of orbit representatives to diagonals failed: the
/// two quivers are not isomorphic the way the construction expects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnchorMismatch {
    pub reason: String,
}

impl fmt::Display for AnchorMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "orbit/diagonal matching failed: {}", self.reason)
    }
}

impl std::error::Error for AnchorMismatch {}

/// Hom/Ext oracle for the polygon model, backed by the orbit category.
///
/// Construction anchors the orbit of `M[1,1][0]` at the diagonal
/// `(1, d + 2)`, propagates along AR translation and mesh middles until every
/// representative is matched, and then verifies the match is a quiver
/// isomorphism commuting with translation.
pub struct HomOracle {
    model: PolygonModel,
    to_diag: HashMap<DbObject, Diagonal>,
    to_obj: HashMap<Diagonal, DbObject>,
}

impl HomOracle {
    pub fn new(model: &PolygonModel) -> Result<Self, AnchorMismatch> {
        let (n, d) = (model.n(), model.d());
        let orbit = OrbitQuiver::build(n, d);
        let ar = ArQuiver::build(model);
        let v = orbit.reps().len();
        let fail = |reason: String| AnchorMismatch { reason };
        if v != ar.vertices().len() {
            return Err(fail("vertex counts differ".into()));
        }
        let mut inbound: Vec<Vec<usize>> = vec![Vec::new(); v];
        for &(src, dst) in orbit.arrows() {
            inbound[dst].push(src);
        }

        let mut phi: Vec<Option<Diagonal>> = vec![None; v];
        let assign = |phi: &mut Vec<Option<Diagonal>>, i: usize, u: Diagonal| -> Result<bool, AnchorMismatch> {
            match phi[i] {
                None => {
                    phi[i] = Some(u);
                    Ok(true)
                }
                Some(w) if w == u => Ok(false),
                Some(w) => Err(AnchorMismatch {
                    reason: format!("representative matched to both {w} and {u}"),
                }),
            }
        };
        let anchor = orbit.index_of(DbObject::new(1, 1, 0));
        let anchor_diag = model
            .diagonal(1, d + 2)
            .expect("(1, d + 2) is a valid diagonal in every model");
        assign(&mut phi, anchor, anchor_diag)?;

        loop {
            let mut changed = false;
            // Translation closure.
            for i in 0..v {
                if let Some(u) = phi[i] {
                    let j = orbit.translate_index(i);
                    changed |= assign(&mut phi, j, model.ar_translate(u))?;
                }
            }
            // Mesh forcing: once a mesh end is matched, its middles must fill
            // the polygon middles; a single unmatched slot is forced.
            for i in 0..v {
                let u = match phi[i] {
                    Some(u) => u,
                    None => continue,
                };
                let tri = ar_triangle(model, u);
                if inbound[i].len() != tri.middles.len() {
                    return Err(fail(format!(
                        "mesh at {u} expects {} middles, orbit has {}",
                        tri.middles.len(),
                        inbound[i].len()
                    )));
                }
                let mut free: Vec<Diagonal> = tri.middles.clone();
                let mut open = Vec::new();
                for &m in &inbound[i] {
                    match phi[m] {
                        Some(w) => match free.iter().position(|p| *p == w) {
                            Some(pos) => {
                                free.remove(pos);
                            }
                            None => {
                                return Err(fail(format!(
                                    "middle {w} of mesh at {u} is not a polygon middle"
                                )))
                            }
                        },
                        None => open.push(m),
                    }
                }
                if open.len() == 1 && free.len() == 1 {
                    changed |= assign(&mut phi, open[0], free[0])?;
                }
            }
            if !changed {
                break;
            }
        }

        let mut to_diag = HashMap::with_capacity(v);
        let mut to_obj = HashMap::with_capacity(v);
        for (i, x) in orbit.reps().iter().enumerate() {
            let u = phi[i].ok_or_else(|| fail(format!("propagation never reached {x}")))?;
            to_diag.insert(*x, u);
            if to_obj.insert(u, *x).is_some() {
                return Err(fail(format!("two representatives matched {u}")));
            }
        }
        // Full isomorphism check: arrows and translation must correspond.
        let polygon_arrows: std::collections::HashSet<(Diagonal, Diagonal)> = ar
            .arrows()
            .iter()
            .map(|&(s, t)| (ar.vertices()[s], ar.vertices()[t]))
            .collect();
        if orbit.arrows().len() != ar.arrows().len() {
            return Err(fail("arrow counts differ".into()));
        }
        for &(s, t) in orbit.arrows() {
            let edge = (phi[s].unwrap(), phi[t].unwrap());
            if !polygon_arrows.contains(&edge) {
                return Err(fail(format!("arrow {}->{} has no polygon counterpart", edge.0, edge.1)));
            }
        }
        for (i, x) in orbit.reps().iter().enumerate() {
            let lhs = phi[orbit.translate_index(i)].unwrap();
            let rhs = model.ar_translate(phi[i].unwrap());
            if lhs != rhs {
                return Err(fail(format!("translation differs at {x}")));
            }
        }
        Ok(HomOracle { model: *model, to_diag, to_obj })
    }

    pub fn model(&self) -> &PolygonModel {
        &self.model
    }

    /// Canonical representative matched to a diagonal.
    pub fn object_of(&self, u: Diagonal) -> DbObject {
        self.to_obj[&u]
    }

    /// Diagonal matched to the orbit of an arbitrary object.
    pub fn diagonal_of(&self, x: DbObject) -> Diagonal {
        self.to_diag[&canonical_rep(self.model.n(), self.model.d(), x)]
    }

    /// Hom dimension between the objects of two diagonals.
    pub fn hom_c(&self, u: Diagonal, v: Diagonal) -> u64 {
        hom_orbit(
            self.model.n(),
            self.model.d(),
            self.object_of(u),
            self.object_of(v),
        )
    }

    /// Dimension of the degree-`k` extension space between two diagonals.
    pub fn ext_c(&self, u: Diagonal, v: Diagonal, k: u32) -> u64 {
        hom_orbit(
            self.model.n(),
            self.model.d(),
            self.object_of(u),
            sigma_db(self.object_of(v), i64::from(k)),
        )
    }

    /// Is the pair extension-free in every intermediate degree?
    pub fn is_rigid_pair(&self, u: Diagonal, v: Diagonal) -> bool {
        (1..=self.model.d()).all(|k| self.ext_c(u, v, k) == 0)
    }

    /// The suspension induced on diagonals by the bijection.
    pub fn suspend_induced(&self, u: Diagonal) -> Diagonal {
        self.diagonal_of(sigma_db(self.object_of(u), 1))
    }
}
