//! Adder/subtractor generators.
//!
//! Each design comes as a half unit, a full unit and an N-bit ripple chain.
//! Unit builders take existing lines for their operands and allocate their
//! own zero ancillas, so the same code emits standalone units and ripple
//! stages. The `ctrl` line passes through every unit unchanged and is reused
//! by the next stage rather than fanned out.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gate::GateKind::{self, Feynman, Fredkin, Peres, Tr};
use crate::netlist::{compute_metrics, Circuit, CircuitBuilder, Metrics};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DesignId {
    D1,
    D2,
    D3,
}

impl DesignId {
    pub const ALL: [DesignId; 3] = [DesignId::D1, DesignId::D2, DesignId::D3];

    pub fn number(self) -> u8 {
        match self {
            DesignId::D1 => 1,
            DesignId::D2 => 2,
            DesignId::D3 => 3,
        }
    }

    pub fn from_number(n: u8) -> Option<DesignId> {
        match n {
            1 => Some(DesignId::D1),
            2 => Some(DesignId::D2),
            3 => Some(DesignId::D3),
            _ => None,
        }
    }

    /// Recovers the design from a generated circuit name such as `d2_full`.
    pub fn from_circuit_name(name: &str) -> Option<DesignId> {
        let rest = name.strip_prefix('d')?;
        let (digit, tail) = rest.split_at_checked(1)?;
        if !tail.starts_with('_') {
            return None;
        }
        DesignId::from_number(digit.parse().ok()?)
    }
}

impl fmt::Display for DesignId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let roman = ["I", "II", "III"][usize::from(self.number()) - 1];
        write!(f, "Design {roman}")
    }
}

impl FromStr for DesignId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim_start_matches(['d', 'D']);
        t.parse()
            .ok()
            .and_then(DesignId::from_number)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown design {s}, expected 1, 2 or 3")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Add,
    Sub,
}

impl Mode {
    pub const BOTH: [Mode; 2] = [Mode::Add, Mode::Sub];
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Add => "add",
            Mode::Sub => "sub",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "add" => Ok(Mode::Add),
            "sub" => Ok(Mode::Sub),
            _ => Err(Error::InvalidArgument(format!("unknown mode {s}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UnitKind {
    Half,
    Full,
}

/// The ctrl value selecting `mode`.
///
/// The PG-based design adds at ctrl=0. The TR-based designs add at ctrl=1:
/// TR's product term carries a complemented operand, so their cores see the
/// inverted minuend exactly when ctrl is high.
pub fn mode_to_ctrl(design: DesignId, mode: Mode) -> bool {
    match (design, mode) {
        (DesignId::D3, Mode::Add) => false,
        (DesignId::D3, Mode::Sub) => true,
        (_, Mode::Add) => true,
        (_, Mode::Sub) => false,
    }
}

/// Line handles for one unit; `carry_in` is absent for half units.
#[derive(Clone, Copy, Debug)]
struct UnitLines {
    a: usize,
    b: usize,
    carry_in: Option<usize>,
    ctrl: usize,
}

/// Lines holding S/D and C/B after the unit.
#[derive(Clone, Copy, Debug)]
struct UnitOutputs {
    sum: usize,
    carry: usize,
}

fn emit_unit(bld: &mut CircuitBuilder, design: DesignId, io: UnitLines) -> UnitOutputs {
    let UnitLines { a, b, carry_in, ctrl } = io;
    match (design, carry_in) {
        (DesignId::D3, None) => {
            let k = bld.constant(false);
            bld.gate(Feynman, &[ctrl, a])
                .gate(Peres, &[a, b, k])
                .gate(Feynman, &[ctrl, b]);
            UnitOutputs { sum: b, carry: k }
        }
        (DesignId::D3, Some(cin)) => {
            let k = bld.constant(false);
            bld.gate(Feynman, &[ctrl, a])
                .gate(Peres, &[a, b, k])
                .gate(Peres, &[b, cin, k])
                .gate(Feynman, &[ctrl, cin]);
            UnitOutputs { sum: cin, carry: k }
        }
        (DesignId::D2, None) => {
            let k = bld.constant(false);
            bld.gate(Feynman, &[ctrl, a])
                .gate(Tr, &[b, a, k])
                .gate(Feynman, &[ctrl, a]);
            UnitOutputs { sum: a, carry: k }
        }
        (DesignId::D2, Some(cin)) => {
            let k = bld.constant(false);
            bld.gate(Feynman, &[ctrl, a])
                .gate(Tr, &[b, a, k])
                .gate(Tr, &[cin, a, k])
                .gate(Feynman, &[ctrl, a]);
            UnitOutputs { sum: a, carry: k }
        }
        (DesignId::D1, None) => {
            let copy = bld.constant(false);
            let prod = bld.constant(false);
            // b becomes A'B, prod becomes AB; F2 steers one of them onto b.
            bld.gate(Feynman, &[b, copy])
                .gate(Fredkin, &[a, b, prod])
                .gate(Feynman, &[a, copy])
                .gate(Fredkin, &[ctrl, prod, b]);
            UnitOutputs { sum: copy, carry: b }
        }
        (DesignId::D1, Some(cin)) => {
            let copy = bld.constant(false);
            let prod = bld.constant(false);
            let tap = bld.constant(false);
            bld.gate(Feynman, &[b, copy])
                .gate(Fredkin, &[a, b, prod])
                .gate(Feynman, &[a, copy])
                .gate(Fredkin, &[ctrl, b, prod])
                .gate(Feynman, &[ctrl, copy])
                .gate(Tr, &[cin, copy, b])
                .gate(Feynman, &[ctrl, copy])
                .gate(Feynman, &[ctrl, tap]);
            UnitOutputs { sum: copy, carry: b }
        }
    }
}

fn circuit_name(design: DesignId, what: &str) -> String {
    format!("d{}_{what}", design.number())
}

/// Half unit: inputs `A B ctrl`, outputs `S_D C_B`.
pub fn build_half(design: DesignId) -> Circuit {
    let mut bld = CircuitBuilder::new();
    let a = bld.input("A");
    let b = bld.input("B");
    let ctrl = bld.input("ctrl");
    let out = emit_unit(
        &mut bld,
        design,
        UnitLines {
            a,
            b,
            carry_in: None,
            ctrl,
        },
    );
    bld.output(out.sum, "S_D").output(out.carry, "C_B");
    bld.finish(circuit_name(design, "half"))
}

/// Full unit: inputs `A B Cin ctrl`, outputs `S_D C_B`.
pub fn build_full(design: DesignId) -> Circuit {
    let mut bld = CircuitBuilder::new();
    let a = bld.input("A");
    let b = bld.input("B");
    let cin = bld.input("Cin");
    let ctrl = bld.input("ctrl");
    let out = emit_unit(
        &mut bld,
        design,
        UnitLines {
            a,
            b,
            carry_in: Some(cin),
            ctrl,
        },
    );
    bld.output(out.sum, "S_D").output(out.carry, "C_B");
    bld.finish(circuit_name(design, "full"))
}

pub fn build_unit(design: DesignId, kind: UnitKind) -> Circuit {
    match kind {
        UnitKind::Half => build_half(design),
        UnitKind::Full => build_full(design),
    }
}

pub const MAX_WIDTH: u32 = 64;

fn check_width(width: u32) -> Result<()> {
    if !(1..=MAX_WIDTH).contains(&width) {
        return Err(Error::InvalidArgument(format!(
            "width {width} outside 1..={MAX_WIDTH}"
        )));
    }
    Ok(())
}

/// N-bit ripple chain: a half unit on bit 0, full units above it, each
/// stage's C/B line becoming the next stage's carry-in.
///
/// Inputs `A0.. B0.. ctrl` (interleaved per stage in line order), outputs
/// `S_D0..S_D{n-1}` and `C_B{n}`.
pub fn build_ripple(design: DesignId, width: u32) -> Result<Circuit> {
    check_width(width)?;
    let mut bld = CircuitBuilder::new();
    let mut ctrl = None;
    let mut carry = None;
    for i in 0..width {
        let a = bld.input(format!("A{i}"));
        let b = bld.input(format!("B{i}"));
        let ctrl_line = *ctrl.get_or_insert_with(|| bld.input("ctrl"));
        let out = emit_unit(
            &mut bld,
            design,
            UnitLines {
                a,
                b,
                carry_in: carry,
                ctrl: ctrl_line,
            },
        );
        bld.output(out.sum, format!("S_D{i}"));
        carry = Some(out.carry);
    }
    bld.output(carry.expect("width >= 1"), format!("C_B{width}"));
    Ok(bld.finish(circuit_name(design, &format!("ripple{width}"))))
}

/// Metrics summed per unit: one half unit plus `width - 1` full units.
/// This counts each unit's ctrl output as garbage, as the published tables
/// do, where the fused netlist carries a single ctrl line.
pub fn ripple_metrics_paper(design: DesignId, width: u32) -> Result<Metrics> {
    check_width(width)?;
    let half = compute_metrics(&build_half(design))?;
    let full = compute_metrics(&build_full(design))?;
    Ok(half + full.scaled(u64::from(width - 1)))
}

/// Metrics of the fused ripple netlist.
pub fn ripple_metrics_as_built(design: DesignId, width: u32) -> Result<Metrics> {
    compute_metrics(&build_ripple(design, width)?)
}

/// Wraps a generated circuit so its mode input is named `sub` with
/// `sub = 0` meaning add for every design. Lets circuits of different
/// designs be compared with [`crate::sim::equivalent`].
pub fn with_mode_input(circuit: &Circuit, design: DesignId) -> Result<Circuit> {
    use crate::netlist::{GateInstance, InputRole, Line};

    let ctrl = circuit
        .input_line("ctrl")
        .ok_or_else(|| Error::InvalidArgument(format!("{} has no ctrl input", circuit.name())))?;
    let mut lines: Vec<Line> = circuit.lines().to_vec();
    lines[ctrl].input = InputRole::Primary("sub".to_string());
    let mut gates = Vec::new();
    let inverted = mode_to_ctrl(design, Mode::Add);
    if inverted {
        gates.push(GateInstance::new(GateKind::Not, [ctrl]));
    }
    gates.extend(circuit.gates().iter().cloned());
    Ok(Circuit::new(format!("{}_moded", circuit.name()), lines, gates))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::{evaluate, Assignment};

    fn run(c: &Circuit, inputs: &[(&str, bool)]) -> (bool, bool) {
        let a: Assignment = inputs.iter().map(|&(n, v)| (n.to_string(), v)).collect();
        let e = evaluate(c, &a).unwrap();
        (e.output("S_D").unwrap(), e.output("C_B").unwrap())
    }

    #[test]
    fn ctrl_polarity() {
        assert!(!mode_to_ctrl(DesignId::D3, Mode::Add));
        assert!(mode_to_ctrl(DesignId::D3, Mode::Sub));
        assert!(mode_to_ctrl(DesignId::D2, Mode::Add));
        assert!(!mode_to_ctrl(DesignId::D1, Mode::Sub));
    }

    #[test]
    fn half_unit_metrics() {
        let expect = [
            (DesignId::D1, Metrics::new(4, 2, 3, 12)),
            (DesignId::D2, Metrics::new(3, 1, 2, 8)),
            (DesignId::D3, Metrics::new(3, 1, 2, 6)),
        ];
        for (d, m) in expect {
            assert_eq!(compute_metrics(&build_half(d)).unwrap(), m, "{d}");
        }
    }

    #[test]
    fn full_unit_metrics() {
        let expect = [
            (DesignId::D1, Metrics::new(8, 3, 5, 21)),
            (DesignId::D2, Metrics::new(4, 1, 3, 14)),
            (DesignId::D3, Metrics::new(4, 1, 3, 10)),
        ];
        for (d, m) in expect {
            assert_eq!(compute_metrics(&build_full(d)).unwrap(), m, "{d}");
        }
    }

    #[test]
    fn d1_full_inventory() {
        let c = build_full(DesignId::D1);
        let count = |k| c.gates().iter().filter(|g| g.kind == k).count();
        assert_eq!((count(Feynman), count(Fredkin), count(Tr)), (5, 2, 1));
        assert_eq!(c.line_count(), 7);
    }

    #[test]
    fn unit_examples() {
        let d3h = build_half(DesignId::D3);
        assert_eq!(run(&d3h, &[("A", true), ("B", true), ("ctrl", false)]), (false, true));
        assert_eq!(run(&d3h, &[("A", false), ("B", false), ("ctrl", true)]), (false, false));

        let d2h = build_half(DesignId::D2);
        let sub = mode_to_ctrl(DesignId::D2, Mode::Sub);
        assert_eq!(run(&d2h, &[("A", true), ("B", true), ("ctrl", sub)]), (false, false));

        let d2f = build_full(DesignId::D2);
        let add = mode_to_ctrl(DesignId::D2, Mode::Add);
        assert_eq!(
            run(&d2f, &[("A", true), ("B", true), ("Cin", true), ("ctrl", add)]),
            (true, true)
        );

        let d3f = build_full(DesignId::D3);
        let sub = mode_to_ctrl(DesignId::D3, Mode::Sub);
        assert_eq!(
            run(&d3f, &[("A", true), ("B", false), ("Cin", true), ("ctrl", sub)]),
            (false, false)
        );
    }

    #[test]
    fn ripple_shape() {
        let c = build_ripple(DesignId::D3, 8).unwrap();
        let outs = c.output_names();
        assert_eq!(outs.iter().filter(|n| n.starts_with("S_D")).count(), 8);
        assert_eq!(outs.iter().filter(|n| n.starts_with("C_B")).count(), 1);
        assert!(c.output_line("C_B8").is_some());
        assert_eq!(c.input_names().len(), 17);
        assert_eq!(c.line_count(), 25);
        assert!(c.validate().is_ok());
        assert!(build_ripple(DesignId::D3, 0).is_err());
        assert!(build_ripple(DesignId::D3, 65).is_err());
    }

    #[test]
    fn single_stage_ripple_is_half_unit() {
        for d in DesignId::ALL {
            let r = build_ripple(d, 1).unwrap();
            assert!(r.same_structure(&build_half(d)), "{d}");
        }
    }

    #[test]
    fn paper_accounting() {
        assert_eq!(
            ripple_metrics_paper(DesignId::D3, 8).unwrap(),
            Metrics::new(31, 8, 23, 76)
        );
        assert_eq!(
            ripple_metrics_paper(DesignId::D1, 8).unwrap(),
            Metrics::new(60, 23, 38, 159)
        );
        assert_eq!(
            ripple_metrics_paper(DesignId::D2, 8).unwrap(),
            Metrics::new(31, 8, 23, 106)
        );
        assert_eq!(
            ripple_metrics_paper(DesignId::D2, 1).unwrap(),
            Metrics::new(3, 1, 2, 8)
        );
    }

    #[test]
    fn as_built_never_exceeds_summed_units() {
        for d in DesignId::ALL {
            for w in 1..=16 {
                let built = ripple_metrics_as_built(d, w).unwrap();
                let summed = ripple_metrics_paper(d, w).unwrap();
                assert!(built.dominated_by(&summed), "{d} width {w}");
                assert_eq!(built.gate_count, summed.gate_count);
                assert_eq!(built.quantum_cost, summed.quantum_cost);
                assert_eq!(built.garbage_inputs, summed.garbage_inputs);
            }
        }
    }

    #[test]
    fn cost_ordering() {
        for w in 1..=32 {
            let qc = |d| ripple_metrics_paper(d, w).unwrap().quantum_cost;
            assert!(qc(DesignId::D3) < qc(DesignId::D2));
            assert!(qc(DesignId::D2) < qc(DesignId::D1));
        }
    }

    #[test]
    fn names() {
        assert_eq!(DesignId::from_circuit_name("d2_full"), Some(DesignId::D2));
        assert_eq!(DesignId::from_circuit_name("d3_ripple8"), Some(DesignId::D3));
        assert_eq!(DesignId::from_circuit_name("d4_full"), None);
        assert_eq!(DesignId::from_circuit_name("dx"), None);
        assert_eq!("3".parse::<DesignId>().unwrap(), DesignId::D3);
        assert!("0".parse::<DesignId>().is_err());
        assert_eq!(DesignId::D2.to_string(), "Design II");
    }
}
