//! Primitive-level layer: NOT, CNOT, controlled-V and controlled-V†.
//!
//! Basis states are packed like the boolean layer (line `k` = bit `k`), so a
//! gate's permutation matrix has a 1 at `(perm[x], x)`. Sequences apply
//! left to right: the first primitive acts on the state first.

use std::fmt;

use num_complex::{Complex, Complex64};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gate::{gate_permutation, GateKind, Permutation};
use crate::scalar::{modulus_sqr, Scalar};

pub const MAX_MATRIX_LINES: usize = 12;
pub const MAX_SEARCH_LEN: usize = 6;

/// Dense square complex matrix of dimension `2^n`, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Unitary<T> {
    dim: usize,
    data: Vec<Complex<T>>,
}

impl<T: Scalar> Unitary<T> {
    pub fn identity(dim: usize) -> Self {
        let mut u = Self::zeros(dim);
        for i in 0..dim {
            u.data[i * dim + i] = Complex::new(T::one(), T::zero());
        }
        u
    }

    fn zeros(dim: usize) -> Self {
        Unitary {
            dim,
            data: vec![Complex::new(T::zero(), T::zero()); dim * dim],
        }
    }

    /// Row-major entries; panics unless `entries.len()` is a square.
    pub fn from_rows(dim: usize, entries: Vec<Complex<T>>) -> Self {
        assert_eq!(entries.len(), dim * dim, "expected {dim}x{dim} entries");
        Unitary { dim, data: entries }
    }

    pub fn from_permutation(perm: &Permutation) -> Self {
        let dim = perm.size();
        let mut u = Self::zeros(dim);
        for x in 0..dim {
            u.data[perm.apply(x) * dim + x] = Complex::new(T::one(), T::zero());
        }
        u
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &Complex<T> {
        &self.data[row * self.dim + col]
    }

    pub fn mul(&self, rhs: &Unitary<T>) -> Unitary<T> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.re.is_zero() && a.im.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let prod = a.clone() * rhs.data[k * n + j].clone();
                    out.data[i * n + j] = out.data[i * n + j].clone() + prod;
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> Unitary<T> {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        out
    }

    /// Largest squared entrywise modulus of `self - other`.
    pub fn max_dist_sqr(&self, other: &Unitary<T>) -> T {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| modulus_sqr(&(a.clone() - b.clone())))
            .fold(T::zero(), |m, d| if d > m { d } else { m })
    }

    /// Largest entrywise modulus of `self - other`, as `f64`.
    pub fn max_abs_diff(&self, other: &Unitary<T>) -> f64 {
        self.max_dist_sqr(other).to_f64().sqrt()
    }

    pub fn approx_eq(&self, other: &Unitary<T>, tol: T) -> bool {
        self.max_dist_sqr(other) <= tol.clone() * tol
    }

    /// `U U† = I` within `tol`.
    pub fn is_unitary(&self, tol: T) -> bool {
        self.mul(&self.adjoint()).approx_eq(&Self::identity(self.dim), tol)
    }

    /// Left-multiplies by primitive `p` in place via row operations.
    fn apply_left(&mut self, p: Primitive) {
        let n = self.dim;
        let (control, target) = match p {
            Primitive::Not { target } => (None, target),
            Primitive::Cnot { control, target }
            | Primitive::Cv { control, target }
            | Primitive::Cvdag { control, target } => (Some(control), target),
        };
        let t = 1usize << target;
        let m = p.target_matrix::<T>();
        for r0 in (0..n).filter(|r| r & t == 0) {
            if let Some(c) = control {
                if r0 >> c & 1 == 0 {
                    continue;
                }
            }
            let r1 = r0 | t;
            for j in 0..n {
                let x0 = self.data[r0 * n + j].clone();
                let x1 = self.data[r1 * n + j].clone();
                self.data[r0 * n + j] = m[0].clone() * x0.clone() + m[1].clone() * x1.clone();
                self.data[r1 * n + j] = m[2].clone() * x0 + m[3].clone() * x1;
            }
        }
    }
}

/// Square root of NOT: `½·[[1+i, 1−i], [1−i, 1+i]]`.
pub fn v_matrix<T: Scalar>() -> Unitary<T> {
    Unitary::from_rows(2, v_entries::<T>(false).to_vec())
}

pub fn vdag_matrix<T: Scalar>() -> Unitary<T> {
    Unitary::from_rows(2, v_entries::<T>(true).to_vec())
}

/// Pauli X.
pub fn not_matrix<T: Scalar>() -> Unitary<T> {
    Unitary::from_rows(2, x_entries::<T>().to_vec())
}

fn v_entries<T: Scalar>(dagger: bool) -> [Complex<T>; 4] {
    let h = T::half();
    let plus = Complex::new(h.clone(), h.clone());
    let minus = Complex::new(h.clone(), -h);
    let (d, o) = if dagger { (minus, plus) } else { (plus, minus) };
    [d.clone(), o.clone(), o, d]
}

fn x_entries<T: Scalar>() -> [Complex<T>; 4] {
    let zero = Complex::new(T::zero(), T::zero());
    let one = Complex::new(T::one(), T::zero());
    [zero.clone(), one.clone(), one, zero]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Primitive {
    Not { target: usize },
    Cnot { control: usize, target: usize },
    Cv { control: usize, target: usize },
    Cvdag { control: usize, target: usize },
}

impl Primitive {
    pub fn lines(&self) -> (Option<usize>, usize) {
        match *self {
            Primitive::Not { target } => (None, target),
            Primitive::Cnot { control, target }
            | Primitive::Cv { control, target }
            | Primitive::Cvdag { control, target } => (Some(control), target),
        }
    }

    pub fn is_two_line(&self) -> bool {
        !matches!(self, Primitive::Not { .. })
    }

    fn target_matrix<T: Scalar>(&self) -> [Complex<T>; 4] {
        match self {
            Primitive::Not { .. } | Primitive::Cnot { .. } => x_entries(),
            Primitive::Cv { .. } => v_entries(false),
            Primitive::Cvdag { .. } => v_entries(true),
        }
    }

    fn check(&self, n: usize) -> Result<()> {
        let (control, target) = self.lines();
        if target >= n || control.is_some_and(|c| c >= n) {
            return Err(Error::InvalidArgument(format!(
                "{self} out of range for {n} lines"
            )));
        }
        if control == Some(target) {
            return Err(Error::InvalidArgument(format!(
                "{self}: control equals target"
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Primitive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Primitive::Not { target } => write!(f, "NOT({target})"),
            Primitive::Cnot { control, target } => write!(f, "CNOT({control},{target})"),
            Primitive::Cv { control, target } => write!(f, "CV({control},{target})"),
            Primitive::Cvdag { control, target } => write!(f, "CVDAG({control},{target})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimitiveSeq {
    pub line_count: usize,
    pub ops: Vec<Primitive>,
}

impl PrimitiveSeq {
    pub fn new(line_count: usize, ops: Vec<Primitive>) -> Self {
        PrimitiveSeq { line_count, ops }
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn count(&self, pred: impl Fn(&Primitive) -> bool) -> usize {
        self.ops.iter().filter(|p| pred(p)).count()
    }
}

impl fmt::Display for PrimitiveSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.ops.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

fn check_lines(n: usize) -> Result<()> {
    if n > MAX_MATRIX_LINES {
        return Err(Error::Capacity {
            what: "matrix lines",
            actual: n,
            limit: MAX_MATRIX_LINES,
        });
    }
    Ok(())
}

/// Full `2^n` matrix of one primitive, built entry by entry.
pub fn primitive_unitary<T: Scalar>(p: Primitive, n: usize) -> Result<Unitary<T>> {
    check_lines(n)?;
    p.check(n)?;
    let (control, target) = p.lines();
    let m = p.target_matrix::<T>();
    let dim = 1usize << n;
    let mut u = Unitary::<T>::zeros(dim);
    let t = 1usize << target;
    for col in 0..dim {
        let active = control.is_none_or(|c| col >> c & 1 == 1);
        if !active {
            u.data[col * dim + col] = Complex::new(T::one(), T::zero());
            continue;
        }
        let col_bit = usize::from(col & t != 0);
        for row_bit in 0..2 {
            let row = (col & !t) | if row_bit == 1 { t } else { 0 };
            u.data[row * dim + col] = m[row_bit * 2 + col_bit].clone();
        }
    }
    Ok(u)
}

pub fn sequence_unitary<T: Scalar>(seq: &PrimitiveSeq) -> Result<Unitary<T>> {
    check_lines(seq.line_count)?;
    for p in &seq.ops {
        p.check(seq.line_count)?;
    }
    let mut u = Unitary::identity(1 << seq.line_count);
    for &p in &seq.ops {
        u.apply_left(p);
    }
    Ok(u)
}

fn cv(control: usize, target: usize) -> Primitive {
    Primitive::Cv { control, target }
}

fn cvdag(control: usize, target: usize) -> Primitive {
    Primitive::Cvdag { control, target }
}

fn cnot(control: usize, target: usize) -> Primitive {
    Primitive::Cnot { control, target }
}

fn toffoli_ops(a: usize, b: usize, c: usize) -> [Primitive; 5] {
    [cv(b, c), cnot(a, b), cvdag(b, c), cnot(a, b), cv(a, c)]
}

/// Realization of a catalog gate over {NOT, CNOT, CV, CV†}, lines in the
/// gate's `(A, B, C)` order.
pub fn decompose(kind: GateKind) -> PrimitiveSeq {
    let n = kind.arity();
    let ops = match kind {
        GateKind::Not => vec![Primitive::Not { target: 0 }],
        GateKind::Feynman => vec![cnot(0, 1)],
        GateKind::Toffoli => toffoli_ops(0, 1, 2).to_vec(),
        GateKind::Peres => vec![cv(0, 2), cv(1, 2), cnot(0, 1), cvdag(1, 2)],
        GateKind::Tr => {
            let mut ops = vec![Primitive::Not { target: 1 }];
            ops.extend(toffoli_ops(0, 1, 2));
            ops.extend([Primitive::Not { target: 1 }, cnot(0, 1)]);
            ops
        }
        // CNOT(c,b) · Toffoli · CNOT(c,b), with the Toffoli terms ordered so
        // that each outer CNOT shares a line pair with its neighbour. The
        // trailing CNOT(a,b) commutes past CNOT(c,b) (same target).
        GateKind::Fredkin => vec![
            cnot(2, 1),
            cv(1, 2),
            cv(0, 2),
            cnot(0, 1),
            cvdag(1, 2),
            cnot(2, 1),
            cnot(0, 1),
        ],
    };
    PrimitiveSeq::new(n, ops)
}

/// Cost counting each maximal run of two-line primitives on one line pair
/// as a single unit. NOTs are free and only break a run when they touch a
/// line outside the current pair.
pub fn grouped_cost(seq: &PrimitiveSeq) -> u32 {
    let mut cost = 0;
    let mut pair: Option<(usize, usize)> = None;
    for p in &seq.ops {
        match p.lines() {
            (None, t) => {
                if pair.is_some_and(|(x, y)| t != x && t != y) {
                    pair = None;
                }
            }
            (Some(c), t) => {
                let key = (c.min(t), c.max(t));
                if pair != Some(key) {
                    cost += 1;
                    pair = Some(key);
                }
            }
        }
    }
    cost
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecompositionReport {
    pub kind: GateKind,
    pub sequence: PrimitiveSeq,
    pub unitary_match: bool,
    pub max_error: f64,
    pub computed_cost: u32,
    pub catalog_cost: u32,
}

pub const UNITARY_TOLERANCE: f64 = 1e-10;

pub fn verify_decomposition(kind: GateKind) -> DecompositionReport {
    let sequence = decompose(kind);
    let u = sequence_unitary::<f64>(&sequence).expect("catalog gates fit the guard");
    let target = Unitary::from_permutation(&gate_permutation(kind));
    let max_error = u.max_abs_diff(&target);
    DecompositionReport {
        kind,
        unitary_match: max_error < UNITARY_TOLERANCE,
        max_error,
        computed_cost: grouped_cost(&sequence),
        catalog_cost: kind.quantum_cost(),
        sequence,
    }
}

/// The 18 two-line primitives on three lines, in search order:
/// kind (CNOT, CV, CV†), then control, then target.
pub fn search_alphabet() -> Vec<Primitive> {
    let mut out = Vec::with_capacity(18);
    let ctors: [fn(usize, usize) -> Primitive; 3] = [cnot, cv, cvdag];
    for ctor in ctors {
        for c in 0..3 {
            for t in (0..3).filter(|&t| t != c) {
                out.push(ctor(c, t));
            }
        }
    }
    out
}

type Mat8 = [[Complex64; 8]; 8];

fn apply8(m: &Mat8, p: Primitive) -> Mat8 {
    let mut out = *m;
    let (control, target) = p.lines();
    let t = 1usize << target;
    let e = p.target_matrix::<f64>();
    for r0 in (0..8).filter(|r| r & t == 0) {
        if control.is_some_and(|c| r0 >> c & 1 == 0) {
            continue;
        }
        let r1 = r0 | t;
        for j in 0..8 {
            let (x0, x1) = (m[r0][j], m[r1][j]);
            out[r0][j] = e[0] * x0 + e[1] * x1;
            out[r1][j] = e[2] * x0 + e[3] * x1;
        }
    }
    out
}

fn matches8(m: &Mat8, target: &Mat8) -> bool {
    let tol = UNITARY_TOLERANCE * UNITARY_TOLERANCE;
    m.iter()
        .flatten()
        .zip(target.iter().flatten())
        .all(|(a, b)| (a - b).norm_sqr() < tol)
}

/// Exhaustive search for the shortest sequence of at most `max_len`
/// primitives from [`search_alphabet`] whose unitary equals the gate's
/// permutation matrix exactly (no global phase). Among sequences of the
/// shortest length, returns the lexicographically first.
pub fn search_decomposition(kind: GateKind, max_len: usize) -> Result<Option<PrimitiveSeq>> {
    if kind.arity() != 3 {
        return Err(Error::InvalidArgument(format!(
            "search needs a three-line gate, {kind} has {} lines",
            kind.arity()
        )));
    }
    if max_len > MAX_SEARCH_LEN {
        return Err(Error::Capacity {
            what: "search length",
            actual: max_len,
            limit: MAX_SEARCH_LEN,
        });
    }
    let perm = gate_permutation(kind);
    let mut target = [[Complex64::new(0.0, 0.0); 8]; 8];
    for x in 0..8 {
        target[perm.apply(x)][x] = Complex64::new(1.0, 0.0);
    }
    let alphabet = search_alphabet();
    let mut identity = [[Complex64::new(0.0, 0.0); 8]; 8];
    for (i, row) in identity.iter_mut().enumerate() {
        row[i] = Complex64::new(1.0, 0.0);
    }

    for len in 1..=max_len {
        // One task per leading primitive; the first hit in alphabet order
        // wins, so the result is independent of scheduling.
        let hits: Vec<Option<Vec<usize>>> = (0..alphabet.len())
            .into_par_iter()
            .map(|first| {
                let m = apply8(&identity, alphabet[first]);
                let mut path = vec![first];
                dfs(&m, len - 1, &alphabet, &target, &mut path).then_some(path)
            })
            .collect();
        if let Some(path) = hits.into_iter().flatten().next() {
            let ops = path.into_iter().map(|i| alphabet[i]).collect();
            return Ok(Some(PrimitiveSeq::new(3, ops)));
        }
    }
    Ok(None)
}

fn dfs(m: &Mat8, remaining: usize, alphabet: &[Primitive], target: &Mat8, path: &mut Vec<usize>) -> bool {
    if remaining == 0 {
        return matches8(m, target);
    }
    for (i, &p) in alphabet.iter().enumerate() {
        path.push(i);
        if dfs(&apply8(m, p), remaining - 1, alphabet, target, path) {
            return true;
        }
        path.pop();
    }
    false
}
