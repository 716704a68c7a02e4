//! The `.revnet` text format.
//!
//! ```text
//! .version 1
//! .name <identifier>
//! .lines <n>
//! .inputs <tok> ...      # name, or 0/1 for a constant
//! .outputs <tok> ...     # name, or '-' for garbage
//! .gate <MNEMONIC> <i0> [i1 [i2]]
//! .end
//! ```
//!
//! Sections appear in exactly this order; `#` comments run to end of line.

use std::collections::HashSet;
use std::fmt::Write as _;

use super::{is_identifier, Circuit, GateInstance, InputRole, Line, OutputRole};
use crate::error::{Error, Result};
use crate::gate::GateKind;

const VERSION: &str = "1";

/// Renders a valid circuit. Output is deterministic and newline terminated.
pub fn serialize(circuit: &Circuit) -> Result<String> {
    circuit.check()?;
    let mut out = String::new();
    let _ = writeln!(out, ".version {VERSION}");
    let _ = writeln!(out, ".name {}", circuit.name());
    let _ = writeln!(out, ".lines {}", circuit.line_count());

    let inputs: Vec<&str> = circuit
        .lines()
        .iter()
        .map(|l| match &l.input {
            InputRole::Primary(n) => n.as_str(),
            InputRole::Constant(false) => "0",
            InputRole::Constant(true) => "1",
        })
        .collect();
    let outputs: Vec<&str> = circuit
        .lines()
        .iter()
        .map(|l| match &l.output {
            OutputRole::Primary(n) => n.as_str(),
            OutputRole::Garbage => "-",
        })
        .collect();
    write_list(&mut out, ".inputs", &inputs);
    write_list(&mut out, ".outputs", &outputs);

    for gate in circuit.gates() {
        out.push_str(".gate ");
        out.push_str(gate.kind.mnemonic());
        for l in &gate.lines {
            let _ = write!(out, " {l}");
        }
        out.push('\n');
    }
    out.push_str(".end\n");
    Ok(out)
}

fn write_list(out: &mut String, directive: &str, tokens: &[&str]) {
    out.push_str(directive);
    for t in tokens {
        out.push(' ');
        out.push_str(t);
    }
    out.push('\n');
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Section {
    Start,
    Version,
    Name,
    Lines,
    Inputs,
    Outputs,
    Gates,
    End,
}

impl Section {
    fn expected(self) -> &'static str {
        match self {
            Section::Start => ".version",
            Section::Version => ".name",
            Section::Name => ".lines",
            Section::Lines => ".inputs",
            Section::Inputs => ".outputs",
            Section::Outputs | Section::Gates => ".gate or .end",
            Section::End => "end of input",
        }
    }
}

pub fn parse(text: &str) -> Result<Circuit> {
    let mut section = Section::Start;
    let mut name = String::new();
    let mut line_count = 0usize;
    let mut inputs: Vec<InputRole> = Vec::new();
    let mut outputs: Vec<OutputRole> = Vec::new();
    let mut gates = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = content.split_whitespace();
        let Some(directive) = tokens.next() else {
            continue;
        };
        let args: Vec<&str> = tokens.collect();

        let next = match directive {
            ".version" => Section::Version,
            ".name" => Section::Name,
            ".lines" => Section::Lines,
            ".inputs" => Section::Inputs,
            ".outputs" => Section::Outputs,
            ".gate" => Section::Gates,
            ".end" => Section::End,
            other => {
                return Err(Error::parse(lineno, format!("unknown directive {other}")));
            }
        };
        let in_order = match next {
            Section::Gates => matches!(section, Section::Outputs | Section::Gates),
            Section::End => matches!(section, Section::Outputs | Section::Gates),
            _ => next as u8 == section as u8 + 1,
        };
        if !in_order {
            return Err(Error::parse(
                lineno,
                format!("expected {}, found {directive}", section.expected()),
            ));
        }
        section = next;

        match next {
            Section::Version => {
                let v = single(lineno, directive, &args)?;
                if v != VERSION {
                    return Err(Error::parse(lineno, format!("unsupported version {v}")));
                }
            }
            Section::Name => {
                let n = single(lineno, directive, &args)?;
                if !is_identifier(n) {
                    return Err(Error::parse(lineno, format!("invalid name {n}")));
                }
                name = n.to_string();
            }
            Section::Lines => {
                let n = single(lineno, directive, &args)?;
                line_count = n
                    .parse()
                    .map_err(|_| Error::parse(lineno, format!("invalid line count {n}")))?;
            }
            Section::Inputs => {
                expect_count(lineno, directive, &args, line_count)?;
                let mut seen = HashSet::new();
                for &tok in &args {
                    let role = match tok {
                        "0" => InputRole::Constant(false),
                        "1" => InputRole::Constant(true),
                        n if is_identifier(n) => {
                            if !seen.insert(n) {
                                return Err(Error::parse(
                                    lineno,
                                    format!("duplicate input name {n}"),
                                ));
                            }
                            InputRole::Primary(n.to_string())
                        }
                        other => {
                            return Err(Error::parse(lineno, format!("invalid input token {other}")))
                        }
                    };
                    inputs.push(role);
                }
            }
            Section::Outputs => {
                expect_count(lineno, directive, &args, line_count)?;
                let mut seen = HashSet::new();
                for &tok in &args {
                    let role = match tok {
                        "-" => OutputRole::Garbage,
                        n if is_identifier(n) => {
                            if !seen.insert(n) {
                                return Err(Error::parse(
                                    lineno,
                                    format!("duplicate output name {n}"),
                                ));
                            }
                            OutputRole::Primary(n.to_string())
                        }
                        other => {
                            return Err(Error::parse(
                                lineno,
                                format!("invalid output token {other}"),
                            ))
                        }
                    };
                    outputs.push(role);
                }
            }
            Section::Gates => gates.push(parse_gate(lineno, &args, line_count)?),
            Section::End => {
                if !args.is_empty() {
                    return Err(Error::parse(lineno, format!("unexpected token {}", args[0])));
                }
            }
            Section::Start => unreachable!(),
        }
    }

    if section != Section::End {
        return Err(Error::parse(
            text.lines().count() + 1,
            format!("expected {}, found end of input", section.expected()),
        ));
    }

    let lines = inputs
        .into_iter()
        .zip(outputs)
        .map(|(i, o)| Line::new(i, o))
        .collect();
    Ok(Circuit::new(name, lines, gates))
}

fn single<'a>(lineno: usize, directive: &str, args: &[&'a str]) -> Result<&'a str> {
    match args {
        [one] => Ok(one),
        [] => Err(Error::parse(lineno, format!("{directive} needs a value"))),
        [_, extra, ..] => Err(Error::parse(lineno, format!("unexpected token {extra}"))),
    }
}

fn expect_count(lineno: usize, directive: &str, args: &[&str], n: usize) -> Result<()> {
    if args.len() != n {
        return Err(Error::parse(
            lineno,
            format!("{directive} lists {} tokens, expected {n}", args.len()),
        ));
    }
    Ok(())
}

fn parse_gate(lineno: usize, args: &[&str], line_count: usize) -> Result<GateInstance> {
    let Some((&mnemonic, operands)) = args.split_first() else {
        return Err(Error::parse(lineno, ".gate needs a mnemonic"));
    };
    let kind = GateKind::from_name(mnemonic)
        .ok_or_else(|| Error::parse(lineno, format!("unknown gate {mnemonic}")))?;
    if operands.len() != kind.arity() {
        return Err(Error::parse(
            lineno,
            format!(
                "gate {mnemonic} expects {} lines, got {}",
                kind.arity(),
                operands.len()
            ),
        ));
    }
    let mut lines = Vec::with_capacity(operands.len());
    for &tok in operands {
        let l: usize = tok
            .parse()
            .map_err(|_| Error::parse(lineno, format!("invalid line index {tok}")))?;
        if l >= line_count {
            return Err(Error::parse(lineno, format!("line index {l} out of range")));
        }
        if lines.contains(&l) {
            return Err(Error::parse(lineno, format!("duplicate line {l} in gate")));
        }
        lines.push(l);
    }
    Ok(GateInstance::new(kind, lines))
}
