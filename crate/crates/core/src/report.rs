//! Comparison of generated designs against the published figures.

use std::fmt::Write as _;

use num_rational::Rational64;
use num_traits::{FromPrimitive, Num};
use serde::Deserialize;

use crate::designs::{build_full, ripple_metrics_paper, DesignId};
use crate::error::{Error, Result};
use crate::netlist::{compute_metrics, Metrics};

/// Published percentages may differ from exact recomputation by this much.
pub const PERCENT_TOLERANCE: f64 = 2.0;

const PUBLISHED_TOML: &str = include_str!("../data/published.toml");

/// Relative improvement `100 * (old - new) / new`.
pub fn improvement<T>(old: T, new: T) -> Result<T>
where
    T: Num + PartialOrd + Clone + FromPrimitive,
{
    if new <= T::zero() {
        return Err(Error::InvalidArgument(
            "improvement baseline must be positive".to_string(),
        ));
    }
    let hundred = T::from_u8(100).expect("100 is representable");
    Ok(hundred * (old - new.clone()) / new)
}

/// Formats a percentage to two decimals, rounding half away from zero on
/// the exact value.
pub fn format_percent(value: Rational64) -> String {
    let cents = (value * Rational64::from_integer(100)).round().to_integer();
    let sign = if cents < 0 { "-" } else { "" };
    let cents = cents.abs();
    format!("{sign}{}.{:02}", cents / 100, cents % 100)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Deserialize)]
pub enum Scope {
    #[serde(rename = "unit")]
    Unit,
    #[serde(rename = "8-bit")]
    EightBit,
}

impl Scope {
    pub fn label(self) -> &'static str {
        match self {
            Scope::Unit => "unit",
            Scope::EightBit => "8-bit",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MetricField {
    Gates,
    GarbageOutputs,
    GarbageInputs,
    QuantumCost,
}

impl MetricField {
    /// Column order of the published tables.
    pub const ALL: [MetricField; 4] = [
        MetricField::Gates,
        MetricField::GarbageOutputs,
        MetricField::GarbageInputs,
        MetricField::QuantumCost,
    ];

    pub fn label(self) -> &'static str {
        match self {
            MetricField::Gates => "gates",
            MetricField::GarbageOutputs => "garbage_outputs",
            MetricField::GarbageInputs => "garbage_inputs",
            MetricField::QuantumCost => "quantum_cost",
        }
    }

    pub fn of(self, m: &Metrics) -> u64 {
        match self {
            MetricField::Gates => m.gate_count,
            MetricField::GarbageOutputs => m.garbage_outputs,
            MetricField::GarbageInputs => m.garbage_inputs,
            MetricField::QuantumCost => m.quantum_cost,
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct PublishedMetrics {
    pub scope: Scope,
    pub design: u8,
    pub gates: u64,
    pub garbage_outputs: u64,
    pub garbage_inputs: u64,
    pub quantum_cost: u64,
    pub source: String,
}

impl PublishedMetrics {
    pub fn metrics(&self) -> Metrics {
        Metrics::new(
            self.gates,
            self.garbage_inputs,
            self.garbage_outputs,
            self.quantum_cost,
        )
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct PublishedImprovement {
    pub scope: Scope,
    pub metric: MetricField,
    pub from: u8,
    pub to: u8,
    pub stated: f64,
    pub source: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Published {
    pub version: u32,
    pub metrics: Vec<PublishedMetrics>,
    pub improvements: Vec<PublishedImprovement>,
}

impl Published {
    pub fn load() -> Published {
        toml::from_str(PUBLISHED_TOML).expect("embedded reference table parses")
    }

    pub fn metrics_for(&self, scope: Scope, design: DesignId) -> Option<&PublishedMetrics> {
        self.metrics
            .iter()
            .find(|m| m.scope == scope && m.design == design.number())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MetricRow {
    pub scope: Scope,
    pub design: DesignId,
    pub computed: Metrics,
    pub published: Metrics,
}

impl MetricRow {
    pub fn delta(&self, field: MetricField) -> i64 {
        field.of(&self.computed) as i64 - field.of(&self.published) as i64
    }

    pub fn matches(&self) -> bool {
        self.computed == self.published
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ImprovementRow {
    pub scope: Scope,
    pub metric: MetricField,
    pub from: DesignId,
    pub to: DesignId,
    pub computed: Rational64,
    pub stated: f64,
}

impl ImprovementRow {
    /// Computed value rounded to two decimals.
    pub fn computed_rounded(&self) -> f64 {
        format_percent(self.computed).parse().expect("formatted number")
    }

    pub fn difference(&self) -> f64 {
        (self.computed_rounded() - self.stated).abs()
    }

    pub fn within_tolerance(&self) -> bool {
        self.difference() <= PERCENT_TOLERANCE
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComparisonReport {
    pub metrics: Vec<MetricRow>,
    pub improvements: Vec<ImprovementRow>,
}

impl ComparisonReport {
    pub fn passed(&self) -> bool {
        self.metrics.iter().all(MetricRow::matches)
            && self.improvements.iter().all(ImprovementRow::within_tolerance)
    }

    pub fn row(&self, scope: Scope, design: DesignId) -> Option<&MetricRow> {
        self.metrics
            .iter()
            .find(|r| r.scope == scope && r.design == design)
    }

    pub fn improvement(
        &self,
        scope: Scope,
        metric: MetricField,
        from: DesignId,
    ) -> Option<&ImprovementRow> {
        self.improvements
            .iter()
            .find(|r| r.scope == scope && r.metric == metric && r.from == from)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str("Metrics (computed vs published)\n");
        let _ = writeln!(
            out,
            "{:<6} {:<12} {:<16} {:>9} {:>10} {:>6}",
            "scope", "design", "metric", "computed", "published", "delta"
        );
        for row in &self.metrics {
            for field in MetricField::ALL {
                let _ = writeln!(
                    out,
                    "{:<6} {:<12} {:<16} {:>9} {:>10} {:>6}",
                    row.scope.label(),
                    row.design.to_string(),
                    field.label(),
                    field.of(&row.computed),
                    field.of(&row.published),
                    row.delta(field)
                );
            }
        }
        out.push('\n');
        out.push_str("Improvements in percent (computed vs published)\n");
        let _ = writeln!(
            out,
            "{:<6} {:<16} {:<10} {:>9} {:>10} {:>6}  {}",
            "scope", "metric", "designs", "computed", "published", "diff", "status"
        );
        for row in &self.improvements {
            let status = match (row.within_tolerance(), row.difference() > 0.005) {
                (false, _) => "FAIL",
                (true, true) => "ok (published rounding differs)",
                (true, false) => "ok",
            };
            let _ = writeln!(
                out,
                "{:<6} {:<16} {:<10} {:>9} {:>10.2} {:>6.2}  {}",
                row.scope.label(),
                row.metric.label(),
                format!("{} -> {}", row.from.number(), row.to.number()),
                format_percent(row.computed),
                row.stated,
                row.difference(),
                status
            );
        }
        out.push('\n');
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(
            out,
            "result: {verdict} (metric deltas must be zero; percentages within {PERCENT_TOLERANCE:.2} points)"
        );
        out
    }

    pub fn render_tsv(&self) -> String {
        let mut out = String::from("scope\tdesign\tmetric\tcomputed\tpublished\tdelta\n");
        for row in &self.metrics {
            for field in MetricField::ALL {
                let _ = writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}\t{}",
                    row.scope.label(),
                    row.design.number(),
                    field.label(),
                    field.of(&row.computed),
                    field.of(&row.published),
                    row.delta(field)
                );
            }
        }
        out.push('\n');
        out.push_str("scope\tmetric\tfrom\tto\tcomputed\tpublished\tdiff\twithin_tolerance\n");
        for row in &self.improvements {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{:.2}\t{:.2}\t{}",
                row.scope.label(),
                row.metric.label(),
                row.from.number(),
                row.to.number(),
                format_percent(row.computed),
                row.stated,
                row.difference(),
                row.within_tolerance()
            );
        }
        out
    }
}

fn design(n: u8) -> Result<DesignId> {
    DesignId::from_number(n)
        .ok_or_else(|| Error::InvalidArgument(format!("reference table names design {n}")))
}

/// Metrics as tabulated: full units are counted on their netlists, the
/// eight-bit rows with per-unit accounting.
pub fn computed_metrics(scope: Scope, d: DesignId) -> Result<Metrics> {
    match scope {
        Scope::Unit => compute_metrics(&build_full(d)),
        Scope::EightBit => ripple_metrics_paper(d, 8),
    }
}

pub fn paper_compare() -> Result<ComparisonReport> {
    let published = Published::load();
    let mut metrics = Vec::new();
    for scope in [Scope::Unit, Scope::EightBit] {
        for d in DesignId::ALL {
            let reference = published.metrics_for(scope, d).ok_or_else(|| {
                Error::InvalidArgument(format!("no reference row for {} {d}", scope.label()))
            })?;
            metrics.push(MetricRow {
                scope,
                design: d,
                computed: computed_metrics(scope, d)?,
                published: reference.metrics(),
            });
        }
    }

    let mut improvements = Vec::new();
    for entry in &published.improvements {
        let (from, to) = (design(entry.from)?, design(entry.to)?);
        let old = entry.metric.of(&computed_metrics(entry.scope, from)?);
        let new = entry.metric.of(&computed_metrics(entry.scope, to)?);
        let computed = improvement(
            Rational64::from_integer(old as i64),
            Rational64::from_integer(new as i64),
        )?;
        improvements.push(ImprovementRow {
            scope: entry.scope,
            metric: entry.metric,
            from,
            to,
            computed,
            stated: entry.stated,
        });
    }
    Ok(ComparisonReport {
        metrics,
        improvements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn improvement_examples() {
        let r = |a, b| format_percent(improvement(Rational64::from_integer(a), Rational64::from_integer(b)).unwrap());
        assert_eq!(r(60, 31), "93.55");
        assert_eq!(r(159, 76), "109.21");
        assert_eq!(r(10, 10), "0.00");
        assert_eq!(r(5, 3), "66.67");
        assert_eq!(r(23, 8), "187.50");
        assert_eq!(r(3, 4), "-25.00");
    }

    #[test]
    fn improvement_is_generic() {
        let f = improvement(60.0_f64, 31.0).unwrap();
        assert!((f - 93.548_387).abs() < 1e-5);
        assert_eq!(improvement(30_i64, 10).unwrap(), 200);
        assert!(improvement(1.0_f64, 0.0).is_err());
        assert!(improvement(1_i64, -2).is_err());
    }

    #[test]
    fn reference_table_loads() {
        let p = Published::load();
        assert_eq!(p.version, 1);
        assert_eq!(p.metrics.len(), 6);
        assert_eq!(p.improvements.len(), 10);
        assert!(p.metrics.iter().all(|m| !m.source.is_empty()));
        let d2 = p.metrics_for(Scope::EightBit, DesignId::D2).unwrap();
        assert_eq!(d2.metrics(), Metrics::new(31, 8, 23, 106));
    }

    #[test]
    fn comparison_passes() {
        let report = paper_compare().unwrap();
        assert!(report.passed(), "{}", report.render_text());
        let gi = report
            .improvement(Scope::EightBit, MetricField::GarbageInputs, DesignId::D1)
            .unwrap();
        assert_eq!(format_percent(gi.computed), "187.50");
        let go = report
            .improvement(Scope::Unit, MetricField::GarbageOutputs, DesignId::D1)
            .unwrap();
        assert_eq!(format_percent(go.computed), "66.67");
        assert_eq!(go.stated, 65.0);
        assert!(go.within_tolerance());
    }

    #[test]
    fn rendering_is_deterministic() {
        let a = paper_compare().unwrap();
        let b = paper_compare().unwrap();
        assert_eq!(a.render_text(), b.render_text());
        assert_eq!(a.render_tsv(), b.render_tsv());
        assert!(a.render_tsv().lines().all(|l| l.is_empty() || l.contains('\t')));
    }
}
