//! Circuit intermediate representation.
//!
//! A circuit is an ordered list of lines, each with an input role (primary
//! input or constant) and an output role (primary output or garbage), plus
//! the gate instances applied to those lines in execution order.

mod revnet;

use std::collections::HashSet;
use std::fmt;
use std::iter::Sum;
use std::ops::Add;

pub use revnet::{parse, serialize};

use crate::error::{Error, Result};
use crate::gate::GateKind;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum InputRole {
    Primary(String),
    /// An ancilla fed a fixed value.
    Constant(bool),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum OutputRole {
    Primary(String),
    Garbage,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Line {
    pub input: InputRole,
    pub output: OutputRole,
}

impl Line {
    pub fn new(input: InputRole, output: OutputRole) -> Self {
        Line { input, output }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GateInstance {
    pub kind: GateKind,
    /// Position `k` plays the `k`-th role of the catalog mapping.
    pub lines: Vec<usize>,
}

impl GateInstance {
    pub fn new(kind: GateKind, lines: impl Into<Vec<usize>>) -> Self {
        GateInstance {
            kind,
            lines: lines.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Circuit {
    name: String,
    lines: Vec<Line>,
    gates: Vec<GateInstance>,
}

impl Circuit {
    /// Assembles a circuit without checking it; see [`Circuit::validate`].
    pub fn new(name: impl Into<String>, lines: Vec<Line>, gates: Vec<GateInstance>) -> Self {
        Circuit {
            name: name.into(),
            lines,
            gates,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn gates(&self) -> &[GateInstance] {
        &self.gates
    }

    pub fn line_count(&self) -> usize {
        self.lines.len()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Primary input names in line order.
    pub fn input_names(&self) -> Vec<&str> {
        self.lines
            .iter()
            .filter_map(|l| match &l.input {
                InputRole::Primary(n) => Some(n.as_str()),
                InputRole::Constant(_) => None,
            })
            .collect()
    }

    /// Primary output names in line order.
    pub fn output_names(&self) -> Vec<&str> {
        self.lines
            .iter()
            .filter_map(|l| match &l.output {
                OutputRole::Primary(n) => Some(n.as_str()),
                OutputRole::Garbage => None,
            })
            .collect()
    }

    pub fn input_line(&self, name: &str) -> Option<usize> {
        self.lines
            .iter()
            .position(|l| matches!(&l.input, InputRole::Primary(n) if n == name))
    }

    pub fn output_line(&self, name: &str) -> Option<usize> {
        self.lines
            .iter()
            .position(|l| matches!(&l.output, OutputRole::Primary(n) if n == name))
    }

    /// Returns every rule violation, each naming the offending gate or line.
    pub fn validate(&self) -> std::result::Result<(), Vec<String>> {
        let mut violations = Vec::new();
        if !is_identifier(&self.name) {
            violations.push(format!("circuit name `{}` is not an identifier", self.name));
        }

        let mut inputs = HashSet::new();
        let mut outputs = HashSet::new();
        for (i, line) in self.lines.iter().enumerate() {
            if let InputRole::Primary(n) = &line.input {
                if !is_identifier(n) {
                    violations.push(format!("line {i}: input name `{n}` is not an identifier"));
                } else if !inputs.insert(n.as_str()) {
                    violations.push(format!("line {i}: duplicate input name {n}"));
                }
            }
            if let OutputRole::Primary(n) = &line.output {
                if !is_identifier(n) {
                    violations.push(format!("line {i}: output name `{n}` is not an identifier"));
                } else if !outputs.insert(n.as_str()) {
                    violations.push(format!("line {i}: duplicate output name {n}"));
                }
            }
        }

        for (g, gate) in self.gates.iter().enumerate() {
            if gate.lines.len() != gate.kind.arity() {
                violations.push(format!(
                    "gate {g}: {} expects {} lines, got {}",
                    gate.kind.mnemonic(),
                    gate.kind.arity(),
                    gate.lines.len()
                ));
            }
            for (k, &l) in gate.lines.iter().enumerate() {
                if l >= self.lines.len() {
                    violations.push(format!(
                        "gate {g}: line index {l} out of range (circuit has {} lines)",
                        self.lines.len()
                    ));
                }
                if gate.lines[..k].contains(&l) {
                    violations.push(format!("duplicate line in gate {g}"));
                }
            }
        }

        if violations.is_empty() {
            Ok(())
        } else {
            Err(violations)
        }
    }

    pub fn check(&self) -> Result<()> {
        self.validate().map_err(Error::InvalidCircuit)
    }

    /// Appends `other`'s gates after this circuit's, on the same lines.
    /// Line roles are taken from `self`.
    pub fn concat(&self, other: &Circuit) -> Result<Circuit> {
        if self.lines.len() != other.lines.len() {
            return Err(Error::InvalidArgument(format!(
                "cannot concatenate circuits with {} and {} lines",
                self.lines.len(),
                other.lines.len()
            )));
        }
        let mut out = self.clone();
        out.gates.extend(other.gates.iter().cloned());
        Ok(out)
    }

    /// Same roles and gates, ignoring names.
    pub fn same_structure(&self, other: &Circuit) -> bool {
        fn shape(l: &Line) -> (Option<bool>, bool) {
            let input = match l.input {
                InputRole::Primary(_) => None,
                InputRole::Constant(b) => Some(b),
            };
            (input, l.output == OutputRole::Garbage)
        }
        self.gates == other.gates
            && self.lines.len() == other.lines.len()
            && self
                .lines
                .iter()
                .zip(&other.lines)
                .all(|(a, b)| shape(a) == shape(b))
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.')
}

/// The four cost figures tracked for every design.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Metrics {
    pub gate_count: u64,
    pub garbage_inputs: u64,
    pub garbage_outputs: u64,
    pub quantum_cost: u64,
}

impl Metrics {
    pub const fn new(
        gate_count: u64,
        garbage_inputs: u64,
        garbage_outputs: u64,
        quantum_cost: u64,
    ) -> Self {
        Metrics {
            gate_count,
            garbage_inputs,
            garbage_outputs,
            quantum_cost,
        }
    }

    pub fn scaled(self, k: u64) -> Metrics {
        Metrics::new(
            self.gate_count * k,
            self.garbage_inputs * k,
            self.garbage_outputs * k,
            self.quantum_cost * k,
        )
    }

    /// Field-wise `<=`.
    pub fn dominated_by(&self, other: &Metrics) -> bool {
        self.gate_count <= other.gate_count
            && self.garbage_inputs <= other.garbage_inputs
            && self.garbage_outputs <= other.garbage_outputs
            && self.quantum_cost <= other.quantum_cost
    }
}

impl Add for Metrics {
    type Output = Metrics;

    fn add(self, rhs: Metrics) -> Metrics {
        Metrics::new(
            self.gate_count + rhs.gate_count,
            self.garbage_inputs + rhs.garbage_inputs,
            self.garbage_outputs + rhs.garbage_outputs,
            self.quantum_cost + rhs.quantum_cost,
        )
    }
}

impl Sum for Metrics {
    fn sum<I: Iterator<Item = Metrics>>(iter: I) -> Metrics {
        iter.fold(Metrics::default(), Add::add)
    }
}

impl fmt::Display for Metrics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "gates={} garbage_in={} garbage_out={} qc={}",
            self.gate_count, self.garbage_inputs, self.garbage_outputs, self.quantum_cost
        )
    }
}

pub fn compute_metrics(circuit: &Circuit) -> Result<Metrics> {
    circuit.check()?;
    let constants = circuit
        .lines()
        .iter()
        .filter(|l| matches!(l.input, InputRole::Constant(_)))
        .count();
    let garbage = circuit
        .lines()
        .iter()
        .filter(|l| l.output == OutputRole::Garbage)
        .count();
    let cost: u64 = circuit
        .gates()
        .iter()
        .map(|g| u64::from(g.kind.quantum_cost()))
        .sum();
    Ok(Metrics::new(
        circuit.gates().len() as u64,
        constants as u64,
        garbage as u64,
        cost,
    ))
}

/// Incremental construction helper used by the generators.
#[derive(Debug, Default)]
pub struct CircuitBuilder {
    lines: Vec<Line>,
    gates: Vec<GateInstance>,
}

impl CircuitBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a primary input line; its output defaults to garbage.
    pub fn input(&mut self, name: impl Into<String>) -> usize {
        self.push(InputRole::Primary(name.into()))
    }

    pub fn constant(&mut self, value: bool) -> usize {
        self.push(InputRole::Constant(value))
    }

    fn push(&mut self, input: InputRole) -> usize {
        self.lines.push(Line::new(input, OutputRole::Garbage));
        self.lines.len() - 1
    }

    pub fn gate(&mut self, kind: GateKind, lines: &[usize]) -> &mut Self {
        self.gates.push(GateInstance::new(kind, lines));
        self
    }

    pub fn output(&mut self, line: usize, name: impl Into<String>) -> &mut Self {
        self.lines[line].output = OutputRole::Primary(name.into());
        self
    }

    pub fn finish(self, name: impl Into<String>) -> Circuit {
        Circuit::new(name, self.lines, self.gates)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lines(n: usize) -> Vec<Line> {
        (0..n)
            .map(|i| {
                Line::new(
                    InputRole::Primary(format!("x{i}")),
                    OutputRole::Primary(format!("y{i}")),
                )
            })
            .collect()
    }

    #[test]
    fn duplicate_gate_line_is_reported() {
        let c = Circuit::new(
            "dup",
            lines(4),
            vec![GateInstance::new(GateKind::Toffoli, [2, 2, 3])],
        );
        let v = c.validate().unwrap_err();
        assert!(v.iter().any(|m| m == "duplicate line in gate 0"), "{v:?}");
    }

    #[test]
    fn empty_circuit_is_valid() {
        assert!(Circuit::new("empty", vec![], vec![]).validate().is_ok());
    }

    #[test]
    fn range_arity_and_names() {
        let mut ls = lines(2);
        ls[1].output = OutputRole::Primary("y0".into());
        let c = Circuit::new(
            "bad",
            ls,
            vec![
                GateInstance::new(GateKind::Feynman, [0, 5]),
                GateInstance::new(GateKind::Not, [0, 1]),
            ],
        );
        let v = c.validate().unwrap_err();
        assert_eq!(v.len(), 3, "{v:?}");
        assert!(v[0].contains("duplicate output name y0"));
        assert!(v[1].contains("gate 0") && v[1].contains("out of range"));
        assert!(v[2].contains("gate 1") && v[2].contains("expects 1"));
    }

    #[test]
    fn single_not_metrics() {
        let c = Circuit::new("n", lines(1), vec![GateInstance::new(GateKind::Not, [0])]);
        assert_eq!(compute_metrics(&c).unwrap(), Metrics::new(1, 0, 0, 0));
    }

    #[test]
    fn metrics_reject_invalid_circuit() {
        let c = Circuit::new("n", lines(1), vec![GateInstance::new(GateKind::Feynman, [0])]);
        assert!(matches!(compute_metrics(&c), Err(Error::InvalidCircuit(_))));
    }

    #[test]
    fn metrics_count_roles() {
        let mut b = CircuitBuilder::new();
        let a = b.input("a");
        let k = b.constant(false);
        let g = b.constant(false);
        b.gate(GateKind::Peres, &[a, k, g]).output(g, "out");
        let c = b.finish("t");
        assert_eq!(compute_metrics(&c).unwrap(), Metrics::new(1, 2, 2, 4));
    }

    #[test]
    fn concat_adds_gate_metrics() {
        let a = Circuit::new("a", lines(3), vec![GateInstance::new(GateKind::Tr, [0, 1, 2])]);
        let b = Circuit::new(
            "b",
            lines(3),
            vec![
                GateInstance::new(GateKind::Feynman, [2, 1]),
                GateInstance::new(GateKind::Fredkin, [1, 0, 2]),
            ],
        );
        let ab = a.concat(&b).unwrap();
        let (ma, mb, mab) = (
            compute_metrics(&a).unwrap(),
            compute_metrics(&b).unwrap(),
            compute_metrics(&ab).unwrap(),
        );
        assert_eq!(mab.gate_count, ma.gate_count + mb.gate_count);
        assert_eq!(mab.quantum_cost, ma.quantum_cost + mb.quantum_cost);
        assert!(a.concat(&Circuit::new("c", lines(2), vec![])).is_err());
    }

    #[test]
    fn identifiers() {
        assert!(is_identifier("S_D0"));
        assert!(is_identifier("_x.y"));
        assert!(!is_identifier("0a"));
        assert!(!is_identifier("-"));
        assert!(!is_identifier(""));
    }
}
