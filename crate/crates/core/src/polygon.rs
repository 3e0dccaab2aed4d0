//! The polygon model: d-diagonals of a regular W-gon, W = d(n+1)+2, with the
//! rotation actions that realize suspension and the Auslander–Reiten
//! translation, plus enumeration of (d+2)-angulations.
//!
//! Vertices are labelled 1..=W clockwise. A d-diagonal cuts the polygon into
//! two cells that can each be filled by smaller (d+2)-gon cells; concretely,
//! both arcs spanned by the diagonal must have length at least d+1 and
//! congruent to 1 mod d.

use std::fmt;
use std::ops::ControlFlow;

/// The ambient polygon for fixed (d, n).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PolygonModel {
    d: u32,
    n: u32,
    vertex_count: u32,
}

/// A d-diagonal, stored with endpoints in increasing label order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Diagonal {
    a: u32,
    b: u32,
}

impl Diagonal {
    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    /// Textual form used by the CLI: `a,b`.
    pub fn to_pair_string(&self) -> String {
        format!("{},{}", self.a, self.b)
    }
}

impl fmt::Display for Diagonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

impl fmt::Debug for Diagonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// The endpoints do not form a d-diagonal of the model's polygon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvalidDiagonal {
    pub a: u32,
    pub b: u32,
}

impl fmt::Display for InvalidDiagonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{}) is not a valid d-diagonal", self.a, self.b)
    }
}

impl std::error::Error for InvalidDiagonal {}

impl PolygonModel {
    /// Model for the d-cluster category of A_n; requires d, n >= 1.
    pub fn new(d: u32, n: u32) -> Self {
        assert!(d >= 1 && n >= 1, "model requires d >= 1 and n >= 1");
        let w = u64::from(d) * (u64::from(n) + 1) + 2;
        assert!(w <= u32::MAX as u64 / 2, "polygon too large");
        PolygonModel { d, n, vertex_count: w as u32 }
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of polygon vertices, W = d(n+1)+2.
    pub fn vertex_count(&self) -> u32 {
        self.vertex_count
    }

    /// Map any integer onto the vertex labels 1..=W.
    fn normalize_vertex(&self, v: i64) -> u32 {
        let w = i64::from(self.vertex_count);
        ((v - 1).rem_euclid(w) + 1) as u32
    }

    /// Both arcs cut off by (a, b) must hold at least one (d+2)-cell:
    /// arc length in [d+1, W-(d+1)] and congruent to 1 mod d.
    pub fn is_valid_diagonal(&self, a: u32, b: u32) -> bool {
        let w = self.vertex_count;
        if a == 0 || b == 0 || a > w || b > w || a == b {
            return false;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let diff = hi - lo;
        diff >= self.d + 1 && diff <= w - (self.d + 1) && diff % self.d == 1 % self.d
    }

    /// Canonicalize endpoints (either order) into a validated diagonal.
    pub fn diagonal(&self, a: u32, b: u32) -> Result<Diagonal, InvalidDiagonal> {
        if self.is_valid_diagonal(a, b) {
            Ok(Diagonal { a: a.min(b), b: a.max(b) })
        } else {
            Err(InvalidDiagonal { a, b })
        }
    }

    /// Rotate a diagonal by `k` vertices clockwise (negative = the other way).
    pub fn rotate(&self, u: Diagonal, k: i64) -> Diagonal {
        let a = self.normalize_vertex(i64::from(u.a) + k);
        let b = self.normalize_vertex(i64::from(u.b) + k);
        debug_assert!(self.is_valid_diagonal(a, b));
        Diagonal { a: a.min(b), b: a.max(b) }
    }

    /// Suspension acts on diagonals as rotation by -k.
    pub fn suspend(&self, u: Diagonal, k: i64) -> Diagonal {
        self.rotate(u, -k)
    }

    /// The AR translation is rotation by -d, so translate^{-1} ∘ suspend^d = id.
    pub fn ar_translate(&self, u: Diagonal) -> Diagonal {
        self.rotate(u, -i64::from(self.d))
    }

    pub fn ar_translate_inv(&self, u: Diagonal) -> Diagonal {
        self.rotate(u, i64::from(self.d))
    }

    /// All d-diagonals in lexicographic endpoint order. There are n·W/2.
    pub fn enumerate_diagonals(&self) -> Vec<Diagonal> {
        let w = self.vertex_count;
        let mut out = Vec::new();
        for a in 1..=w {
            for b in a + 1..=w {
                if self.is_valid_diagonal(a, b) {
                    out.push(Diagonal { a, b });
                }
            }
        }
        debug_assert_eq!(out.len() as u64, u64::from(self.n) * u64::from(w) / 2);
        out
    }

    /// The fan-shaped tilting set T_1, ..., T_n (order significant).
    pub fn fan_tilting(&self) -> Angulation {
        let w = i64::from(self.vertex_count);
        let d = i64::from(self.d);
        let mut diagonals = Vec::with_capacity(self.n as usize);
        for i in 1..=i64::from(self.n) {
            let (a, b) = if i % 2 == 1 {
                ((i + 1) / 2 * d + 1, w - (i - 1) / 2 * d)
            } else {
                ((i + 2) / 2 * d, w - 1 - (i - 2) / 2 * d)
            };
            let diag = self
                .diagonal(self.normalize_vertex(a), self.normalize_vertex(b))
                .expect("fan tilting produces valid diagonals");
            diagonals.push(diag);
        }
        Angulation::new(self, diagonals).expect("fan tilting is an angulation")
    }

    /// Parse `a,b` (whitespace-tolerant) and validate against this model.
    pub fn parse_diagonal(&self, s: &str) -> Result<Diagonal, ParseDiagonalError> {
        let mut parts = s.split(',');
        let (Some(sa), Some(sb), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(ParseDiagonalError::Syntax(s.trim().to_string()));
        };
        let a: u32 = sa
            .trim()
            .parse()
            .map_err(|_| ParseDiagonalError::Syntax(s.trim().to_string()))?;
        let b: u32 = sb
            .trim()
            .parse()
            .map_err(|_| ParseDiagonalError::Syntax(s.trim().to_string()))?;
        self.diagonal(a, b).map_err(ParseDiagonalError::Invalid)
    }

    /// Parse a `;`-separated list of diagonals.
    pub fn parse_diagonal_set(&self, s: &str) -> Result<Vec<Diagonal>, ParseDiagonalError> {
        s.split(';').map(|part| self.parse_diagonal(part)).collect()
    }

    /// Enumerate all (d+2)-angulations (maximal pairwise-noncrossing sets of
    /// d-diagonals, always of size n), in lexicographic order.
    pub fn enumerate_angulations(
        &self,
        limits: &EnumerationLimits,
    ) -> Result<Vec<Angulation>, ResourceLimit> {
        let mut out = Vec::new();
        self.visit_angulations(limits, |diags| {
            out.push(Angulation { diagonals: diags.to_vec() });
            ControlFlow::Continue(())
        })?;
        Ok(out)
    }

    /// Backtracking enumeration driving a visitor; returns the number of
    /// angulations visited. The visitor may stop the search early.
    pub fn visit_angulations(
        &self,
        limits: &EnumerationLimits,
        mut visit: impl FnMut(&[Diagonal]) -> ControlFlow<()>,
    ) -> Result<u64, ResourceLimit> {
        let all = self.enumerate_diagonals();
        let g = all.len();
        let mut crossing = vec![false; g * g];
        for i in 0..g {
            for j in 0..g {
                crossing[i * g + j] = crosses(&all[i], &all[j]);
            }
        }
        let mut search = AngulationSearch {
            all: &all,
            crossing: &crossing,
            target: self.n as usize,
            chosen: Vec::with_capacity(self.n as usize),
            nodes: 0,
            max_nodes: limits.max_nodes,
            count: 0,
            visit: &mut visit,
        };
        let _ = search.recurse(0)?;
        Ok(search.count)
    }
}

/// Search budget for angulation enumeration.
#[derive(Clone, Copy, Debug)]
pub struct EnumerationLimits {
    /// Maximum number of search-tree nodes to expand.
    pub max_nodes: u64,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits { max_nodes: 10_000_000 }
    }
}

/// The search budget was exhausted before enumeration finished.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResourceLimit {
    pub nodes: u64,
}

impl fmt::Display for ResourceLimit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "search budget exhausted after {} nodes", self.nodes)
    }
}

impl std::error::Error for ResourceLimit {}

struct AngulationSearch<'a, F: FnMut(&[Diagonal]) -> ControlFlow<()>> {
    all: &'a [Diagonal],
    crossing: &'a [bool],
    target: usize,
    chosen: Vec<usize>,
    nodes: u64,
    max_nodes: u64,
    count: u64,
    visit: &'a mut F,
}

impl<F: FnMut(&[Diagonal]) -> ControlFlow<()>> AngulationSearch<'_, F> {
    fn recurse(&mut self, from: usize) -> Result<ControlFlow<()>, ResourceLimit> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(ResourceLimit { nodes: self.nodes });
        }
        if self.chosen.len() == self.target {
            self.count += 1;
            let diags: Vec<Diagonal> = self.chosen.iter().map(|&i| self.all[i]).collect();
            return Ok((self.visit)(&diags));
        }
        let needed = self.target - self.chosen.len();
        for i in from..self.all.len() {
            if self.all.len() - i < needed {
                break;
            }
            let g = self.all.len();
            if self.chosen.iter().any(|&j| self.crossing[j * g + i]) {
                continue;
            }
            self.chosen.push(i);
            let flow = self.recurse(i + 1)?;
            self.chosen.pop();
            if flow.is_break() {
                return Ok(ControlFlow::Break(()));
            }
        }
        Ok(ControlFlow::Continue(()))
    }
}

/// Do two diagonals cross in the interior? Sharing an endpoint is not a
/// crossing; otherwise the endpoints must strictly interleave on the circle.
pub fn crosses(u: &Diagonal, v: &Diagonal) -> bool {
    if u.a == v.a || u.a == v.b || u.b == v.a || u.b == v.b {
        return false;
    }
    let inside = |x: u32| u.a < x && x < u.b;
    inside(v.a) != inside(v.b)
}

/// Pairwise noncrossing, i.e. vanishing of the model's extension spaces in
/// degrees 1..=d for all pairs.
pub fn is_d_rigid(set: &[Diagonal]) -> bool {
    for (i, u) in set.iter().enumerate() {
        for v in &set[i + 1..] {
            if crosses(u, v) {
                return false;
            }
        }
    }
    true
}

/// A (d+2)-angulation / tilting set: exactly n pairwise-noncrossing
/// d-diagonals. Summand order is preserved because relation matrices index
/// rows by position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Angulation {
    diagonals: Vec<Diagonal>,
}

/// Why a diagonal set fails to be an angulation of the model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TiltingError {
    WrongSize { got: usize, expected: usize },
    Duplicate(Diagonal),
    Crossing(Diagonal, Diagonal),
}

impl fmt::Display for TiltingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TiltingError::WrongSize { got, expected } => {
                write!(f, "tilting set has {got} diagonals, expected {expected}")
            }
            TiltingError::Duplicate(d) => write!(f, "duplicate diagonal {d}"),
            TiltingError::Crossing(u, v) => write!(f, "diagonals {u} and {v} cross"),
        }
    }
}

impl std::error::Error for TiltingError {}

impl Angulation {
    /// Validate size, distinctness and rigidity against the model.
    pub fn new(model: &PolygonModel, diagonals: Vec<Diagonal>) -> Result<Self, TiltingError> {
        if diagonals.len() != model.n() as usize {
            return Err(TiltingError::WrongSize {
                got: diagonals.len(),
                expected: model.n() as usize,
            });
        }
        for (i, u) in diagonals.iter().enumerate() {
            for v in &diagonals[i + 1..] {
                if u == v {
                    return Err(TiltingError::Duplicate(*u));
                }
                if crosses(u, v) {
                    return Err(TiltingError::Crossing(*u, *v));
                }
            }
        }
        Ok(Angulation { diagonals })
    }

    pub fn diagonals(&self) -> &[Diagonal] {
        &self.diagonals
    }

    pub fn len(&self) -> usize {
        self.diagonals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diagonals.is_empty()
    }

    /// Order-insensitive comparison.
    pub fn same_set(&self, other: &Angulation) -> bool {
        let mut a = self.diagonals.clone();
        let mut b = other.diagonals.clone();
        a.sort();
        b.sort();
        a == b
    }

    /// Textual form used by the CLI: `a,b;c,d;...`.
    pub fn to_set_string(&self) -> String {
        self.diagonals
            .iter()
            .map(Diagonal::to_pair_string)
            .collect::<Vec<_>>()
            .join(";")
    }
}

/// Parse failure for the `a,b` / `a,b;c,d` textual formats.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseDiagonalError {
    Syntax(String),
    Invalid(InvalidDiagonal),
}

impl fmt::Display for ParseDiagonalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseDiagonalError::Syntax(s) => write!(f, "cannot parse diagonal from {s:?}"),
            ParseDiagonalError::Invalid(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for ParseDiagonalError {}
