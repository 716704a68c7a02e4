//! The reversible gate catalog.
//!
//! Every gate is a bijection on `arity` lines. Line `k` of a gate plays the
//! `k`-th role in the `(A, B, C)` listing; when tuples are packed into an
//! index, `A` is bit 0.

use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Not};
use std::str::FromStr;

use crate::error::{Error, Result};

/// A value that can carry boolean signals: a single `bool`, or a `u64` word
/// holding 64 independent vectors side by side.
pub trait Bits:
    Copy
    + BitAnd<Output = Self>
    + BitOr<Output = Self>
    + BitXor<Output = Self>
    + Not<Output = Self>
{
}

impl<T> Bits for T where
    T: Copy + BitAnd<Output = T> + BitOr<Output = T> + BitXor<Output = T> + Not<Output = T>
{
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    Not,
    /// Feynman / CNOT.
    Feynman,
    Toffoli,
    Peres,
    Fredkin,
    Tr,
}

impl GateKind {
    pub const ALL: [GateKind; 6] = [
        GateKind::Not,
        GateKind::Feynman,
        GateKind::Toffoli,
        GateKind::Peres,
        GateKind::Fredkin,
        GateKind::Tr,
    ];

    pub const fn arity(self) -> usize {
        match self {
            GateKind::Not => 1,
            GateKind::Feynman => 2,
            _ => 3,
        }
    }

    /// Catalog quantum cost. Authoritative for all metric computations.
    pub const fn quantum_cost(self) -> u32 {
        match self {
            GateKind::Not => 0,
            GateKind::Feynman => 1,
            GateKind::Toffoli => 5,
            GateKind::Peres => 4,
            GateKind::Fredkin => 5,
            GateKind::Tr => 6,
        }
    }

    /// Short mnemonic used by the `.revnet` format.
    pub const fn mnemonic(self) -> &'static str {
        match self {
            GateKind::Not => "NOT",
            GateKind::Feynman => "FG",
            GateKind::Toffoli => "TOF",
            GateKind::Peres => "PG",
            GateKind::Fredkin => "F",
            GateKind::Tr => "TR",
        }
    }

    pub const fn long_name(self) -> &'static str {
        match self {
            GateKind::Not => "NOT",
            GateKind::Feynman => "FEYNMAN",
            GateKind::Toffoli => "TOFFOLI",
            GateKind::Peres => "PERES",
            GateKind::Fredkin => "FREDKIN",
            GateKind::Tr => "TR",
        }
    }

    /// Accepts mnemonics, long names and the CNOT alias, case-insensitively.
    pub fn from_name(name: &str) -> Option<GateKind> {
        let upper = name.to_ascii_uppercase();
        let kind = match upper.as_str() {
            "NOT" => GateKind::Not,
            "FG" | "FEYNMAN" | "CNOT" => GateKind::Feynman,
            "TOF" | "TG" | "TOFFOLI" => GateKind::Toffoli,
            "PG" | "PERES" => GateKind::Peres,
            "F" | "FREDKIN" => GateKind::Fredkin,
            "TR" => GateKind::Tr,
            _ => return None,
        };
        Some(kind)
    }

    pub fn spec(self) -> GateSpec {
        gate_spec(self)
    }

    /// Applies the gate in place to `lines`, which must hold exactly
    /// `arity` values in `(A, B, C)` order.
    ///
    /// Callers are responsible for the length; use [`apply_gate`] for a
    /// checked version.
    pub fn apply_in_place<B: Bits>(self, lines: &mut [B]) {
        match self {
            GateKind::Not => lines[0] = !lines[0],
            GateKind::Feynman => lines[1] = lines[0] ^ lines[1],
            GateKind::Toffoli => lines[2] = (lines[0] & lines[1]) ^ lines[2],
            GateKind::Peres => {
                let (a, b, c) = (lines[0], lines[1], lines[2]);
                lines[1] = a ^ b;
                lines[2] = (a & b) ^ c;
            }
            GateKind::Fredkin => {
                let (a, b, c) = (lines[0], lines[1], lines[2]);
                lines[1] = (!a & b) | (a & c);
                lines[2] = (a & b) | (!a & c);
            }
            GateKind::Tr => {
                let (a, b, c) = (lines[0], lines[1], lines[2]);
                lines[1] = a ^ b;
                lines[2] = (a & !b) ^ c;
            }
        }
    }

    /// Image of a packed basis index (`A` = bit 0).
    pub fn apply_index(self, index: usize) -> usize {
        let n = self.arity();
        let mut bits = [false; 3];
        for (k, bit) in bits.iter_mut().enumerate().take(n) {
            *bit = index >> k & 1 == 1;
        }
        self.apply_in_place(&mut bits[..n]);
        pack(&bits[..n])
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.long_name())
    }
}

impl FromStr for GateKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GateKind::from_name(s).ok_or_else(|| Error::InvalidArgument(format!("unknown gate {s}")))
    }
}

/// Immutable catalog entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GateSpec {
    pub kind: GateKind,
    pub arity: usize,
    pub quantum_cost: u32,
}

impl GateSpec {
    pub fn map(&self, input: &[bool]) -> Result<Vec<bool>> {
        apply_gate(self.kind, input)
    }
}

pub fn gate_spec(kind: GateKind) -> GateSpec {
    GateSpec {
        kind,
        arity: kind.arity(),
        quantum_cost: kind.quantum_cost(),
    }
}

pub fn apply_gate(kind: GateKind, input: &[bool]) -> Result<Vec<bool>> {
    if input.len() != kind.arity() {
        return Err(Error::InvalidArgument(format!(
            "{kind} takes {} bits, got {}",
            kind.arity(),
            input.len()
        )));
    }
    let mut out = input.to_vec();
    kind.apply_in_place(&mut out);
    Ok(out)
}

/// Packs bits into an index, first bit least significant.
pub fn pack(bits: &[bool]) -> usize {
    bits.iter()
        .enumerate()
        .fold(0, |acc, (k, &b)| acc | (usize::from(b) << k))
}

pub fn unpack(index: usize, width: usize) -> Vec<bool> {
    (0..width).map(|k| index >> k & 1 == 1).collect()
}

/// A bijection on `[0, size)`, stored as `table[i]` = image of `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    table: Vec<usize>,
}

impl Permutation {
    pub fn identity(size: usize) -> Self {
        Permutation {
            table: (0..size).collect(),
        }
    }

    /// Checks bijectivity before accepting the table.
    pub fn from_table(table: Vec<usize>) -> Result<Self> {
        if !is_bijection(&table) {
            return Err(Error::InvalidArgument(
                "table is not a bijection".to_string(),
            ));
        }
        Ok(Permutation { table })
    }

    pub fn size(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, index: usize) -> usize {
        self.table[index]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.table.len()];
        for (i, &img) in self.table.iter().enumerate() {
            inv[img] = i;
        }
        Permutation { table: inv }
    }

    /// `self` first, then `next`.
    pub fn then(&self, next: &Permutation) -> Permutation {
        Permutation {
            table: self.table.iter().map(|&i| next.table[i]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.table.iter().enumerate().all(|(i, &j)| i == j)
    }
}

pub fn is_bijection(table: &[usize]) -> bool {
    let mut seen = vec![false; table.len()];
    for &img in table {
        if img >= table.len() || seen[img] {
            return false;
        }
        seen[img] = true;
    }
    true
}

pub fn gate_permutation(kind: GateKind) -> Permutation {
    let size = 1 << kind.arity();
    Permutation {
        table: (0..size).map(|i| kind.apply_index(i)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(v: &[u8]) -> Vec<bool> {
        v.iter().map(|&b| b == 1).collect()
    }

    #[test]
    fn catalog_costs() {
        assert_eq!(gate_spec(GateKind::Tr).quantum_cost, 6);
        assert_eq!(gate_spec(GateKind::Peres).quantum_cost, 4);
        let not = gate_spec(GateKind::Not);
        assert_eq!((not.arity, not.quantum_cost), (1, 0));
        assert_eq!(gate_spec(GateKind::Feynman).quantum_cost, 1);
        assert_eq!(gate_spec(GateKind::Toffoli).quantum_cost, 5);
        assert_eq!(gate_spec(GateKind::Fredkin).quantum_cost, 5);
    }

    #[test]
    fn apply_examples() {
        let cases: [(GateKind, &[u8], &[u8]); 4] = [
            (GateKind::Feynman, &[1, 1], &[1, 0]),
            (GateKind::Tr, &[1, 0, 0], &[1, 1, 1]),
            (GateKind::Fredkin, &[1, 0, 1], &[1, 1, 0]),
            (GateKind::Peres, &[1, 1, 0], &[1, 0, 1]),
        ];
        for (kind, input, output) in cases {
            assert_eq!(apply_gate(kind, &bits(input)).unwrap(), bits(output), "{kind}");
        }
    }

    #[test]
    fn arity_mismatch_is_rejected() {
        let err = apply_gate(GateKind::Toffoli, &[true, false]).unwrap_err();
        assert!(matches!(err, Error::InvalidArgument(_)));
        assert!(apply_gate(GateKind::Not, &[]).is_err());
    }

    #[test]
    fn permutation_examples() {
        assert_eq!(gate_permutation(GateKind::Feynman).table(), &[0, 3, 2, 1]);
        assert_eq!(gate_permutation(GateKind::Not).table(), &[1, 0]);
        assert_eq!(gate_permutation(GateKind::Toffoli).apply(7), 3);
    }

    #[test]
    fn every_gate_is_bijective_and_keeps_first_line() {
        for kind in GateKind::ALL {
            let perm = gate_permutation(kind);
            assert!(is_bijection(perm.table()), "{kind}");
            if kind.arity() == 3 {
                for i in 0..8 {
                    assert_eq!(perm.apply(i) & 1, i & 1, "{kind} moved A");
                }
            }
        }
    }

    #[test]
    fn self_inverse_gates() {
        for kind in GateKind::ALL {
            let perm = gate_permutation(kind);
            let twice = perm.then(&perm);
            let expected = matches!(
                kind,
                GateKind::Not | GateKind::Feynman | GateKind::Toffoli | GateKind::Fredkin
            );
            assert_eq!(twice.is_identity(), expected, "{kind}");
        }
    }

    #[test]
    fn tr_is_peres_with_b_complemented_in_product() {
        for i in 0..8 {
            let input = unpack(i, 3);
            let tr = apply_gate(GateKind::Tr, &input).unwrap();
            let flipped = [input[0], !input[1], input[2]];
            let peres = apply_gate(GateKind::Peres, &flipped).unwrap();
            assert_eq!(tr[2], peres[2]);
            assert_eq!(tr[1], input[0] ^ input[1]);
        }
    }

    #[test]
    fn word_parallel_matches_scalar() {
        for kind in GateKind::ALL {
            let n = kind.arity();
            // Lane i of the words holds input index i.
            let mut words: Vec<u64> = (0..n)
                .map(|k| (0..1u64 << n).fold(0, |w, i| w | ((i >> k & 1) << i)))
                .collect();
            kind.apply_in_place(&mut words);
            for i in 0..1usize << n {
                let lane: Vec<bool> = words.iter().map(|w| w >> i & 1 == 1).collect();
                assert_eq!(pack(&lane), kind.apply_index(i));
            }
        }
    }

    #[test]
    fn names_round_trip() {
        for kind in GateKind::ALL {
            assert_eq!(GateKind::from_name(kind.mnemonic()), Some(kind));
            assert_eq!(GateKind::from_name(kind.long_name()), Some(kind));
        }
        assert_eq!(GateKind::from_name("cnot"), Some(GateKind::Feynman));
        assert_eq!(GateKind::from_name("XYZ"), None);
    }

    #[test]
    fn permutation_inverse_and_validation() {
        let p = gate_permutation(GateKind::Peres);
        assert!(p.then(&p.inverse()).is_identity());
        assert!(Permutation::from_table(vec![0, 0]).is_err());
        assert!(Permutation::from_table(vec![1, 0]).is_ok());
    }
}
