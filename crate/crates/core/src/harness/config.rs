use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::closed::{OddSignReading, TableReading};
use crate::power::EnumerationCap;
use crate::square_class::FieldMode;

/// Values a sweep parameter takes: a single integer, an explicit list, or
/// an inclusive range `{ from = 0, to = 10 }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValues {
    Single(i64),
    List(Vec<i64>),
    Range { from: i64, to: i64 },
}

impl ParamValues {
    pub fn range(from: i64, to: i64) -> Self {
        ParamValues::Range { from, to }
    }

    pub fn values(&self) -> Vec<i64> {
        match self {
            ParamValues::Single(v) => vec![*v],
            ParamValues::List(v) => v.clone(),
            ParamValues::Range { from, to } => (*from..=*to).collect(),
        }
    }
}

/// Options shared by every cell of a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct VerifyOptions {
    /// Overrides each identity's required mode.
    pub mode: Option<FieldMode>,
    pub odd_sign: OddSignReading,
    pub table_reading: TableReading,
    pub enum_cap: EnumerationCap,
}

/// A sweep: identity id → parameter name → values. Cells are the cartesian
/// product of each identity's parameter values; cells outside the
/// identity's domain are skipped.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    #[serde(default)]
    pub mode: Option<FieldMode>,
    #[serde(default)]
    pub odd_sign: OddSignReading,
    #[serde(default)]
    pub table_reading: TableReading,
    #[serde(default)]
    pub enum_cap: Option<u64>,
    /// Adds the `P12-negative` check: `P12` at `n = 4, k = 4` must fail in GENERIC.
    #[serde(default)]
    pub p12_negative: bool,
    #[serde(default)]
    pub sweep: BTreeMap<String, BTreeMap<String, ParamValues>>,
}

impl SuiteConfig {
    pub fn options(&self) -> VerifyOptions {
        VerifyOptions {
            mode: self.mode,
            odd_sign: self.odd_sign,
            table_reading: self.table_reading,
            enum_cap: self
                .enum_cap
                .map(EnumerationCap)
                .unwrap_or_else(EnumerationCap::from_env),
        }
    }

    pub fn with(mut self, id: &str, params: &[(&str, ParamValues)]) -> Self {
        self.sweep.insert(
            id.to_string(),
            params
                .iter()
                .map(|(k, v)| (k.to_string(), v.clone()))
                .collect(),
        );
        self
    }

    /// The full default sweep, covering every registered identity.
    pub fn defaults() -> Self {
        use ParamValues::{List, Range, Single};
        let r = ParamValues::range;
        let mut cfg = SuiteConfig {
            p12_negative: true,
            ..Default::default()
        };
        cfg = cfg
            .with("N1", &[("h", r(1, 12)), ("k", r(0, 10))])
            .with("N2", &[("h", r(1, 12)), ("k", r(0, 10))])
            .with("S4", &[("h", r(1, 12)), ("k", r(0, 24))])
            .with("S5", &[("h", r(1, 12)), ("k", r(0, 24))])
            .with(
                "L1",
                &[
                    ("m", r(1, 20)),
                    ("k", r(0, 12)),
                    ("sign", List(vec![1, -1])),
                ],
            )
            .with("L2", &[("p", r(0, 30)), ("r", r(0, 30))])
            .with("L3", &[("r", r(1, 30)), ("s", r(1, 30))])
            .with("R1", &[("r", r(1, 30)), ("s", r(1, 30))])
            .with("GV", &[("p", r(0, 20)), ("q", r(0, 20)), ("r", r(0, 30))])
            .with("P1", &[("n", r(1, 9))])
            .with("P10", &[("n", List(vec![1, 3, 5, 7, 9])), ("k", r(0, 8))])
            .with("P11", &[("n", List(vec![2, 4, 6, 8])), ("k", r(0, 7))])
            .with("P12", &[("n", List(vec![2, 4, 6, 8])), ("k", r(0, 7))])
            .with("DISP", &[("n", List(vec![2, 4, 6, 8])), ("k", r(3, 8))])
            .with("LT", &[("n", r(1, 8)), ("k", r(0, 8))])
            .with(
                "S3EQ",
                &[
                    ("seed", Single(42)),
                    ("sample", Range { from: 0, to: 199 }),
                    ("k", r(0, 8)),
                ],
            );
        cfg
    }
}
