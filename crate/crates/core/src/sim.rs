//! Boolean simulation of circuits.
//!
//! Single-vector [`evaluate`] is the reference path. Sweeps run 64 vectors
//! at once by carrying one `u64` word per line, using the same catalog
//! mappings through [`GateKind::apply_in_place`](crate::gate::GateKind::apply_in_place).

use std::collections::{BTreeMap, BTreeSet};

use crate::designs::Mode;
use crate::error::{Error, Result};
use crate::gate::{Bits, Permutation};
use crate::netlist::{Circuit, InputRole, OutputRole};

/// Primary-input name to bit.
pub type Assignment = BTreeMap<String, bool>;

pub const TRUTH_TABLE_MAX_INPUTS: usize = 24;
pub const PERMUTATION_MAX_LINES: usize = 20;

/// Runs the circuit's gates over per-line values.
pub fn run_gates<B: Bits>(circuit: &Circuit, state: &mut [B]) {
    if state.is_empty() {
        return;
    }
    let mut scratch = [state[0]; 3];
    for gate in circuit.gates() {
        let n = gate.lines.len();
        for (slot, &l) in scratch.iter_mut().zip(&gate.lines) {
            *slot = state[l];
        }
        gate.kind.apply_in_place(&mut scratch[..n]);
        for (slot, &l) in scratch.iter().zip(&gate.lines) {
            state[l] = *slot;
        }
    }
}

/// Final line values of one simulation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub lines: Vec<bool>,
    outputs: Vec<(String, bool)>,
}

impl Evaluation {
    pub fn output(&self, name: &str) -> Option<bool> {
        self.outputs.iter().find(|(n, _)| n == name).map(|&(_, b)| b)
    }

    /// Primary outputs in line order.
    pub fn primary_outputs(&self) -> &[(String, bool)] {
        &self.outputs
    }
}

pub fn evaluate(circuit: &Circuit, assignment: &Assignment) -> Result<Evaluation> {
    circuit.check()?;
    let names = circuit.input_names();
    let missing: Vec<&str> = names
        .iter()
        .copied()
        .filter(|n| !assignment.contains_key(*n))
        .collect();
    let extra: Vec<&str> = assignment
        .keys()
        .map(String::as_str)
        .filter(|k| !names.contains(k))
        .collect();
    if !missing.is_empty() || !extra.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "assignment mismatch: missing [{}], unexpected [{}]",
            missing.join(", "),
            extra.join(", ")
        )));
    }

    let mut state: Vec<bool> = circuit
        .lines()
        .iter()
        .map(|l| match &l.input {
            InputRole::Primary(n) => assignment[n],
            InputRole::Constant(b) => *b,
        })
        .collect();
    run_gates(circuit, &mut state);

    let outputs = circuit
        .lines()
        .iter()
        .zip(&state)
        .filter_map(|(l, &v)| match &l.output {
            OutputRole::Primary(n) => Some((n.clone(), v)),
            OutputRole::Garbage => None,
        })
        .collect();
    Ok(Evaluation {
        lines: state,
        outputs,
    })
}

/// Word-parallel simulation. `inputs[j]` carries the `j`-th primary input
/// (line order) for 64 vectors; returns the final word of every line.
pub fn simulate_words(circuit: &Circuit, inputs: &[u64]) -> Vec<u64> {
    let mut next = inputs.iter();
    let mut state: Vec<u64> = circuit
        .lines()
        .iter()
        .map(|l| match l.input {
            InputRole::Primary(_) => *next.next().expect("one word per primary input"),
            InputRole::Constant(b) => if b { u64::MAX } else { 0 },
        })
        .collect();
    run_gates(circuit, &mut state);
    state
}

/// Input words for rows `64*block .. 64*block+63` of an enumeration where
/// input `j` is bit `j` of the row index.
pub fn enumeration_words(inputs: usize, block: u64) -> Vec<u64> {
    const LANE_PATTERNS: [u64; 6] = [
        0xAAAA_AAAA_AAAA_AAAA,
        0xCCCC_CCCC_CCCC_CCCC,
        0xF0F0_F0F0_F0F0_F0F0,
        0xFF00_FF00_FF00_FF00,
        0xFFFF_0000_FFFF_0000,
        0xFFFF_FFFF_0000_0000,
    ];
    (0..inputs)
        .map(|j| match j {
            0..=5 => LANE_PATTERNS[j],
            _ if block >> (j - 6) & 1 == 1 => u64::MAX,
            _ => 0,
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruthTable {
    pub inputs: Vec<String>,
    /// Primary outputs in line order, then garbage lines named `g1`, `g2`, ...
    pub outputs: Vec<String>,
    bits: Vec<bool>,
}

impl TruthTable {
    pub fn row_count(&self) -> usize {
        1 << self.inputs.len()
    }

    /// Output bits for packed input index `index`.
    pub fn row(&self, index: usize) -> &[bool] {
        let w = self.outputs.len();
        &self.bits[index * w..(index + 1) * w]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[bool]> {
        (0..self.row_count()).map(move |i| self.row(i))
    }
}

pub fn truth_table(circuit: &Circuit) -> Result<TruthTable> {
    circuit.check()?;
    let inputs: Vec<String> = circuit.input_names().into_iter().map(String::from).collect();
    let k = inputs.len();
    if k > TRUTH_TABLE_MAX_INPUTS {
        return Err(Error::Capacity {
            what: "primary inputs",
            actual: k,
            limit: TRUTH_TABLE_MAX_INPUTS,
        });
    }

    let mut order: Vec<usize> = Vec::new();
    let mut outputs = Vec::new();
    for (i, l) in circuit.lines().iter().enumerate() {
        if let OutputRole::Primary(n) = &l.output {
            order.push(i);
            outputs.push(n.clone());
        }
    }
    let mut g = 0;
    for (i, l) in circuit.lines().iter().enumerate() {
        if l.output == OutputRole::Garbage {
            g += 1;
            order.push(i);
            outputs.push(format!("g{g}"));
        }
    }

    let rows = 1usize << k;
    let mut bits = Vec::with_capacity(rows * order.len());
    for block in 0..rows.div_ceil(64) as u64 {
        let words = simulate_words(circuit, &enumeration_words(k, block));
        let lanes = (rows - block as usize * 64).min(64);
        for lane in 0..lanes {
            bits.extend(order.iter().map(|&l| words[l] >> lane & 1 == 1));
        }
    }
    Ok(TruthTable {
        inputs,
        outputs,
        bits,
    })
}

/// Permutation over the full line state (bit `k` = line `k`), treating
/// constants as free inputs.
pub fn line_permutation(circuit: &Circuit) -> Result<Permutation> {
    circuit.check()?;
    let n = circuit.line_count();
    if n > PERMUTATION_MAX_LINES {
        return Err(Error::Capacity {
            what: "lines",
            actual: n,
            limit: PERMUTATION_MAX_LINES,
        });
    }
    let size = 1usize << n;
    let mut table = Vec::with_capacity(size);
    for block in 0..size.div_ceil(64) as u64 {
        let words = simulate_words_free(circuit, &enumeration_words(n, block));
        let lanes = (size - block as usize * 64).min(64);
        for lane in 0..lanes {
            let image = words
                .iter()
                .enumerate()
                .fold(0usize, |acc, (k, w)| acc | ((w >> lane & 1) as usize) << k);
            table.push(image);
        }
    }
    // Composition of bijections, but asserted rather than assumed.
    Permutation::from_table(table)
}

fn simulate_words_free(circuit: &Circuit, state: &[u64]) -> Vec<u64> {
    let mut state = state.to_vec();
    run_gates(circuit, &mut state);
    state
}

/// True iff both circuits produce the same primary outputs for every
/// assignment. Garbage is ignored; names are matched, not positions.
pub fn equivalent(c1: &Circuit, c2: &Circuit) -> Result<bool> {
    c1.check()?;
    c2.check()?;
    let in1: BTreeSet<&str> = c1.input_names().into_iter().collect();
    let in2: BTreeSet<&str> = c2.input_names().into_iter().collect();
    let out1: BTreeSet<&str> = c1.output_names().into_iter().collect();
    let out2: BTreeSet<&str> = c2.output_names().into_iter().collect();
    if in1 != in2 || out1 != out2 {
        let diff = |a: &BTreeSet<&str>, b: &BTreeSet<&str>| -> Vec<String> {
            a.symmetric_difference(b).map(|s| s.to_string()).collect()
        };
        let mut names = diff(&in1, &in2);
        names.extend(diff(&out1, &out2));
        return Err(Error::InterfaceMismatch(format!(
            "differing names: {}",
            names.join(", ")
        )));
    }
    let k = in1.len();
    if k > TRUTH_TABLE_MAX_INPUTS {
        return Err(Error::Capacity {
            what: "primary inputs",
            actual: k,
            limit: TRUTH_TABLE_MAX_INPUTS,
        });
    }

    // Enumerate in c1's input order; permute words into c2's order.
    let names1 = c1.input_names();
    let perm2: Vec<usize> = c2
        .input_names()
        .iter()
        .map(|n| names1.iter().position(|m| m == n).unwrap())
        .collect();
    let outputs: Vec<(usize, usize)> = c1
        .output_names()
        .iter()
        .map(|n| (c1.output_line(n).unwrap(), c2.output_line(n).unwrap()))
        .collect();

    let rows = 1u64 << k;
    let mask_last = if rows >= 64 { u64::MAX } else { (1u64 << rows) - 1 };
    for block in 0..rows.div_ceil(64) {
        let words1 = enumeration_words(k, block);
        let words2: Vec<u64> = perm2.iter().map(|&j| words1[j]).collect();
        let s1 = simulate_words(c1, &words1);
        let s2 = simulate_words(c2, &words2);
        if outputs
            .iter()
            .any(|&(l1, l2)| (s1[l1] ^ s2[l2]) & mask_last != 0)
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Ground truth for n-bit addition and borrow-chain subtraction.
/// Returns `(result mod 2^n, carry or borrow)`.
pub fn addsub_oracle(width: u32, mode: Mode, a: u64, b: u64) -> Result<(u64, bool)> {
    if !(1..=64).contains(&width) {
        return Err(Error::InvalidArgument(format!(
            "width {width} outside 1..=64"
        )));
    }
    let modulus = 1u128 << width;
    let (a, b) = (u128::from(a), u128::from(b));
    if a >= modulus || b >= modulus {
        return Err(Error::InvalidArgument(format!(
            "operands must be below 2^{width}"
        )));
    }
    let (value, flag) = match mode {
        Mode::Add => ((a + b) % modulus, a + b >= modulus),
        Mode::Sub => ((a + modulus - b) % modulus, a < b),
    };
    Ok((value as u64, flag))
}
