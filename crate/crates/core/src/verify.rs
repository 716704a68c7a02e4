//! Functional verification of ripple adder/subtractors against
//! [`addsub_oracle`].

use std::thread;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::designs::{build_ripple, mode_to_ctrl, DesignId, Mode};
use crate::error::{Error, Result};
use crate::netlist::{Circuit, InputRole};
use crate::sim::{addsub_oracle, simulate_words};

/// Exhaustive sweeps enumerate `2^(2*width)` operand pairs per mode.
pub const MAX_EXHAUSTIVE_WIDTH: u32 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coverage {
    Exhaustive,
    Sampled { samples: u64, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub mode: Mode,
    pub a: u64,
    pub b: u64,
    pub expected: (u64, bool),
    pub actual: (u64, bool),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub design: DesignId,
    pub width: u32,
    /// Operand pairs checked, summed over both modes.
    pub vectors: u64,
    pub failures: u64,
    pub first_failure: Option<Mismatch>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

enum Source {
    A(u32),
    B(u32),
    Ctrl,
}

/// Precomputed wiring of a ripple circuit's ports.
struct Harness<'a> {
    circuit: &'a Circuit,
    design: DesignId,
    width: u32,
    sources: Vec<Source>,
    sum_lines: Vec<usize>,
    carry_line: usize,
}

impl<'a> Harness<'a> {
    fn new(circuit: &'a Circuit, design: DesignId, width: u32) -> Result<Self> {
        let missing = |n: &str| Error::InvalidArgument(format!("ripple circuit lacks {n}"));
        let mut sources = Vec::new();
        for line in circuit.lines() {
            let InputRole::Primary(name) = &line.input else {
                continue;
            };
            let source = if name == "ctrl" {
                Source::Ctrl
            } else if let Some(i) = name.strip_prefix('A').and_then(|s| s.parse().ok()) {
                Source::A(i)
            } else if let Some(i) = name.strip_prefix('B').and_then(|s| s.parse().ok()) {
                Source::B(i)
            } else {
                return Err(Error::InvalidArgument(format!("unexpected input {name}")));
            };
            sources.push(source);
        }
        let sum_lines = (0..width)
            .map(|i| {
                let n = format!("S_D{i}");
                circuit.output_line(&n).ok_or_else(|| missing(&n))
            })
            .collect::<Result<Vec<_>>>()?;
        let carry_name = format!("C_B{width}");
        let carry_line = circuit
            .output_line(&carry_name)
            .ok_or_else(|| missing(&carry_name))?;
        Ok(Harness {
            circuit,
            design,
            width,
            sources,
            sum_lines,
            carry_line,
        })
    }

    /// Checks up to 64 operand pairs in one word-parallel pass.
    fn check_batch(
        &self,
        mode: Mode,
        start: u64,
        pairs: &[(u64, u64)],
        report: &mut Tally,
    ) -> Result<()> {
        debug_assert!(pairs.len() <= 64);
        let ctrl = if mode_to_ctrl(self.design, mode) { u64::MAX } else { 0 };
        let lane_word = |pick: &dyn Fn(&(u64, u64)) -> bool| {
            pairs
                .iter()
                .enumerate()
                .fold(0u64, |w, (lane, p)| w | u64::from(pick(p)) << lane)
        };
        let inputs: Vec<u64> = self
            .sources
            .iter()
            .map(|s| match *s {
                Source::Ctrl => ctrl,
                Source::A(i) => lane_word(&|&(a, _)| a >> i & 1 == 1),
                Source::B(i) => lane_word(&|&(_, b)| b >> i & 1 == 1),
            })
            .collect();
        let words = simulate_words(self.circuit, &inputs);
        for (lane, &(a, b)) in pairs.iter().enumerate() {
            let value = self
                .sum_lines
                .iter()
                .enumerate()
                .fold(0u64, |v, (i, &l)| v | (words[l] >> lane & 1) << i);
            let flag = words[self.carry_line] >> lane & 1 == 1;
            let expected = addsub_oracle(self.width, mode, a, b)?;
            report.vectors += 1;
            if (value, flag) != expected {
                report.failures += 1;
                let m = Mismatch {
                    mode,
                    a,
                    b,
                    expected,
                    actual: (value, flag),
                };
                report.first.get_or_insert((start + lane as u64, m));
            }
        }
        Ok(())
    }
}

#[derive(Default)]
struct Tally {
    vectors: u64,
    failures: u64,
    /// Pair index and mismatch.
    first: Option<(u64, Mismatch)>,
}

/// Sweeps both modes of the `width`-bit ripple circuit of `design`.
/// `jobs > 1` partitions the work across threads; the report does not
/// depend on `jobs`.
pub fn verify_ripple(design: DesignId, width: u32, coverage: Coverage, jobs: usize) -> Result<VerifyReport> {
    let circuit = build_ripple(design, width)?;
    verify_circuit(&circuit, design, width, coverage, jobs)
}

pub fn verify_circuit(
    circuit: &Circuit,
    design: DesignId,
    width: u32,
    coverage: Coverage,
    jobs: usize,
) -> Result<VerifyReport> {
    circuit.check()?;
    let harness = Harness::new(circuit, design, width)?;
    let mask = if width == 64 { u64::MAX } else { (1u64 << width) - 1 };

    let pair_at: Box<dyn Fn(u64) -> (u64, u64) + Sync> = match coverage {
        Coverage::Exhaustive => {
            if width > MAX_EXHAUSTIVE_WIDTH {
                return Err(Error::Capacity {
                    what: "exhaustive width",
                    actual: width as usize,
                    limit: MAX_EXHAUSTIVE_WIDTH as usize,
                });
            }
            Box::new(move |p| (p & mask, p >> width))
        }
        Coverage::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let pairs: Vec<(u64, u64)> = (0..samples)
                .map(|_| (rng.random::<u64>() & mask, rng.random::<u64>() & mask))
                .collect();
            Box::new(move |p| pairs[p as usize])
        }
    };
    let total = match coverage {
        Coverage::Exhaustive => 1u64 << (2 * width),
        Coverage::Sampled { samples, .. } => samples,
    };

    let blocks = total.div_ceil(64);
    let jobs = jobs.max(1) as u64;
    let run_range = |lo: u64, hi: u64| -> Result<Tally> {
        let mut tally = Tally::default();
        let mut pairs = Vec::with_capacity(64);
        for mode in Mode::BOTH {
            for block in lo..hi {
                pairs.clear();
                let start = block * 64;
                pairs.extend((start..(start + 64).min(total)).map(&pair_at));
                harness.check_batch(mode, start, &pairs, &mut tally)?;
            }
        }
        Ok(tally)
    };

    let chunk = blocks.div_ceil(jobs).max(1);
    let tallies: Vec<Result<Tally>> = if jobs == 1 {
        vec![run_range(0, blocks)]
    } else {
        thread::scope(|s| {
            let handles: Vec<_> = (0..blocks)
                .step_by(chunk as usize)
                .map(|lo| {
                    let run = &run_range;
                    s.spawn(move || run(lo, (lo + chunk).min(blocks)))
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
        })
    };

    let mut report = VerifyReport {
        design,
        width,
        vectors: 0,
        failures: 0,
        first_failure: None,
    };
    // Each range runs Add before Sub, so order by mode, then pair index.
    let mut firsts = Vec::new();
    for t in tallies {
        let t = t?;
        report.vectors += t.vectors;
        report.failures += t.failures;
        firsts.extend(t.first);
    }
    firsts.sort_by_key(|(i, m)| (m.mode == Mode::Sub, *i));
    report.first_failure = firsts.into_iter().next().map(|(_, m)| m);
    Ok(report)
}
