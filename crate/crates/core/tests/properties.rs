use proptest::prelude::*;

use revarith::designs::{build_full, build_half, build_ripple, with_mode_input, DesignId};
use revarith::gate::{gate_permutation, GateKind};
use revarith::netlist::{compute_metrics, parse, serialize, Circuit, GateInstance, InputRole, Line, OutputRole};
use revarith::quantum::{grouped_cost, sequence_unitary, Primitive, PrimitiveSeq};
use revarith::sim::{equivalent, line_permutation};
use revarith::ExactUnitary;

fn arb_gate(lines: usize) -> impl Strategy<Value = GateInstance> {
    let fitting: Vec<GateKind> = GateKind::ALL.into_iter().filter(|k| k.arity() <= lines).collect();
    prop::sample::select(fitting)
        .prop_flat_map(move |k| {
            Just((0..lines).collect::<Vec<_>>())
                .prop_shuffle()
                .prop_map(move |v| GateInstance::new(k, &v[..k.arity()]))
        })
}

fn arb_circuit() -> impl Strategy<Value = Circuit> {
    circuit_with_lines(1..=6)
}

fn circuit_with_lines(lines: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Circuit> {
    lines
        .prop_flat_map(|n| {
            (
                prop::collection::vec(prop::option::of(any::<bool>()), n),
                prop::collection::vec(any::<bool>(), n),
                prop::collection::vec(arb_gate(n), 0..12),
            )
        })
        .prop_map(|(inputs, garbage, gates)| {
            let lines = inputs
                .iter()
                .zip(&garbage)
                .enumerate()
                .map(|(i, (c, &g))| {
                    let input = match c {
                        Some(v) => InputRole::Constant(*v),
                        None => InputRole::Primary(format!("x{i}")),
                    };
                    let output = if g { OutputRole::Garbage } else { OutputRole::Primary(format!("y{i}")) };
                    Line::new(input, output)
                })
                .collect();
            Circuit::new("random", lines, gates)
        })
}

fn arb_primitive(n: usize) -> impl Strategy<Value = Primitive> {
    (0..4u8, 0..n, 1..n).prop_map(move |(k, c, off)| {
        let t = (c + off) % n;
        match k {
            0 => Primitive::Not { target: t },
            1 => Primitive::Cnot { control: c, target: t },
            2 => Primitive::Cv { control: c, target: t },
            _ => Primitive::Cvdag { control: c, target: t },
        }
    })
}

proptest! {
    #[test]
    fn netlist_round_trip(c in arb_circuit()) {
        prop_assert!(c.validate().is_ok());
        let text = serialize(&c).unwrap();
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(serialize(&back).unwrap(), text);
    }

    #[test]
    fn circuits_are_bijections(c in arb_circuit()) {
        let p = line_permutation(&c).unwrap();
        prop_assert!(p.then(&p.inverse()).is_identity());
        // Running the gate list backwards undoes it.
        let mut rev: Vec<_> = c.gates().to_vec();
        rev.reverse();
        let back = Circuit::new("rev", c.lines().to_vec(), rev);
        let q = line_permutation(&back).unwrap();
        // Every catalog gate except Peres and TR is self-inverse.
        let self_inverse = c.gates().iter().all(|g| {
            let gp = gate_permutation(g.kind);
            gp.then(&gp).is_identity()
        });
        if self_inverse {
            prop_assert!(p.then(&q).is_identity());
        }
    }

    #[test]
    fn metrics_add_under_concatenation(a in circuit_with_lines(6..=6), extra in prop::collection::vec(arb_gate(6), 0..6)) {
        let b = Circuit::new("tail", a.lines().to_vec(), extra);
        let joined = a.concat(&b).unwrap();
        let (ma, mb, mj) = (compute_metrics(&a).unwrap(), compute_metrics(&b).unwrap(), compute_metrics(&joined).unwrap());
        prop_assert_eq!(mj.gate_count, ma.gate_count + mb.gate_count);
        prop_assert_eq!(mj.quantum_cost, ma.quantum_cost + mb.quantum_cost);
        prop_assert_eq!(mj.garbage_outputs, ma.garbage_outputs);
    }

    #[test]
    fn primitive_products_are_exactly_unitary(ops in prop::collection::vec(arb_primitive(3), 0..10)) {
        let u: ExactUnitary = sequence_unitary(&PrimitiveSeq::new(3, ops)).unwrap();
        prop_assert!(u.is_unitary(num_rational::Rational64::from_integer(0)));
    }

    #[test]
    fn not_inside_the_pair_keeps_grouping(ops in prop::collection::vec(arb_primitive(3), 1..10), at in any::<prop::sample::Index>()) {
        let i = at.index(ops.len());
        let (c, t) = ops[i].lines();
        prop_assume!(c.is_some());
        let mut with_not = ops.clone();
        with_not.insert(i + 1, Primitive::Not { target: t });
        prop_assert_eq!(
            grouped_cost(&PrimitiveSeq::new(3, with_not)),
            grouped_cost(&PrimitiveSeq::new(3, ops))
        );
    }
}

#[test]
fn designs_agree_once_polarity_is_normalized() {
    for build in [build_half, build_full] {
        let units: Vec<Circuit> = DesignId::ALL
            .iter()
            .map(|&d| with_mode_input(&build(d), d).unwrap())
            .collect();
        for u in &units[1..] {
            assert!(equivalent(&units[0], u).unwrap(), "{} vs {}", units[0].name(), u.name());
        }
    }
    // Raw, Designs II and III add at opposite control values.
    assert!(!equivalent(&build_full(DesignId::D2), &build_full(DesignId::D3)).unwrap());

    let r1 = with_mode_input(&build_ripple(DesignId::D1, 4).unwrap(), DesignId::D1).unwrap();
    let r3 = with_mode_input(&build_ripple(DesignId::D3, 4).unwrap(), DesignId::D3).unwrap();
    assert!(equivalent(&r1, &r3).unwrap());
}
