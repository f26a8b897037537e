//! Parameter sweeps that compare closed forms and binomial identities
//! against the brute-force power engine.
//!
//! Every identity has a stable id (see [`REGISTRY`]). A cell is one
//! identity at one parameter assignment; cells are independent, run in
//! parallel, and are reported in canonical `(id, params)` order.

mod config;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use config::{ParamValues, SuiteConfig, VerifyOptions};

use crate::closed::{
    ext_hyp_closed, ext_trace_closed_with, sym_hyp_closed, sym_trace_closed, sym_trace_displayed,
    trace_form_with, ClosedForm, TraceParams,
};
use crate::combinatorics::{
    binomial, binomial_general, check_vandermonde_l2, choose, gen_vandermonde, multichoose,
};
use crate::error::{Error, Result};
use crate::form::DiagonalForm;
use crate::normal::{normalize, NormalForm};
use crate::power::{lambda_power, naive_lambda, naive_sym, sym_power, sym_power_via_s3};
use crate::square_class::{Atom, FieldMode, SquareClass};

/// Registered identity ids.
///
/// `S4`/`S5`: exterior powers of `h x H`. `N1`/`N2`: symmetric powers of
/// `h x H`. `L1`: `S^k(m x <±1>)`. `L2`, `L3`, `R1`, `GV`: binomial
/// identities. `P1`: the trace form against `S^1` of the closed forms.
/// `P10`–`P12`: `S^k T_S`. `LT`: `Λ^k T_S` from the summary table.
/// `DISP`: displayed against pre-simplified `S^k T_S` for even `n`.
/// `S3EQ`: route equivalence on seeded random forms.
pub const REGISTRY: &[&str] = &[
    "S4", "S5", "N1", "N2", "L1", "L2", "L3", "R1", "GV", "P1", "P10", "P11", "P12", "LT", "DISP",
    "S3EQ",
];

/// Id of the expected-failure report added by [`SuiteConfig::p12_negative`].
pub const P12_NEGATIVE: &str = "P12-negative";

pub type Params = BTreeMap<String, i64>;

/// One side of a comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Side {
    Form { normal: NormalForm },
    Integer { value: String },
    Error { message: String },
}

impl Side {
    fn int(v: &BigInt) -> Self {
        Side::Integer {
            value: v.to_string(),
        }
    }

    fn form(f: &DiagonalForm, mode: FieldMode) -> Self {
        Side::Form {
            normal: normalize(f, mode),
        }
    }

    fn error(e: impl ToString) -> Self {
        Side::Error {
            message: e.to_string(),
        }
    }

    fn is_error(&self) -> bool {
        matches!(self, Side::Error { .. })
    }
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::Form { normal } => write!(f, "{normal}"),
            Side::Integer { value } => f.write_str(value),
            Side::Error { message } => write!(f, "error: {message}"),
        }
    }
}

/// Outcome of one cell.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity_id: String,
    pub params: Params,
    pub mode: FieldMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub passed: bool,
    pub lhs: Side,
    pub rhs: Side,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(rename = "elapsed_us", with = "micros")]
    pub elapsed: Duration,
}

mod micros {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u64(d.as_micros() as u64)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        Ok(Duration::from_micros(u64::deserialize(d)?))
    }
}

/// Equality ignores `elapsed`.
impl PartialEq for IdentityReport {
    fn eq(&self, o: &Self) -> bool {
        self.identity_id == o.identity_id
            && self.params == o.params
            && self.mode == o.mode
            && self.seed == o.seed
            && self.passed == o.passed
            && self.lhs == o.lhs
            && self.rhs == o.rhs
            && self.note == o.note
    }
}

impl Eq for IdentityReport {}

impl IdentityReport {
    fn new(id: &str, params: &Params, mode: FieldMode, lhs: Side, rhs: Side) -> Self {
        let passed = !lhs.is_error() && !rhs.is_error() && lhs == rhs;
        IdentityReport {
            identity_id: id.to_string(),
            params: params.clone(),
            mode,
            seed: None,
            passed,
            lhs,
            rhs,
            note: None,
            elapsed: Duration::ZERO,
        }
    }

    /// `P12 n=4 k=4 [GENERIC]`.
    pub fn label(&self) -> String {
        let ps: Vec<String> = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        format!("{} {} [{}]", self.identity_id, ps.join(" "), self.mode)
    }
}

fn param(id: &str, params: &Params, name: &str) -> Result<i64> {
    params
        .get(name)
        .copied()
        .ok_or_else(|| Error::MissingParam {
            id: id.to_string(),
            param: name.to_string(),
        })
}

fn require(id: &str, ok: bool, constraint: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Domain {
            id: id.to_string(),
            constraint: constraint.to_string(),
        })
    }
}

fn to_u64(v: i64) -> u64 {
    v as u64
}

/// Checks that `params` lie in the documented domain of `id`.
pub fn check_domain(id: &str, params: &Params) -> Result<()> {
    let p = |name| param(id, params, name);
    match id {
        "S4" => {
            let (h, k) = (p("h")?, p("k")?);
            require(id, h >= 1, "h >= 1")?;
            require(
                id,
                k % 2 == 1 && k >= 1 && k < 2 * h,
                "k odd with 1 <= k <= 2h-1",
            )
        }
        "S5" => {
            let (h, k) = (p("h")?, p("k")?);
            require(id, h >= 1, "h >= 1")?;
            require(
                id,
                k % 2 == 0 && (0..=2 * h).contains(&k),
                "k even with 0 <= k <= 2h",
            )
        }
        "N1" => {
            let (h, k) = (p("h")?, p("k")?);
            require(id, h >= 1, "h >= 1")?;
            require(id, k >= 1 && k % 2 == 1, "k odd and positive")
        }
        "N2" => {
            let (h, k) = (p("h")?, p("k")?);
            require(id, h >= 1, "h >= 1")?;
            require(id, k >= 0 && k % 2 == 0, "k even and non-negative")
        }
        "L1" => {
            let (m, k, s) = (p("m")?, p("k")?, p("sign")?);
            require(id, m >= 1, "m >= 1")?;
            require(id, k >= 0, "k >= 0")?;
            require(id, s == 1 || s == -1, "sign is 1 or -1")
        }
        "L2" => require(id, p("p")? >= 0 && p("r")? >= 0, "p, r >= 0"),
        "L3" => {
            let (r, s) = (p("r")?, p("s")?);
            require(id, r >= 1 && s >= 1 && s <= r, "1 <= s <= r")
        }
        "R1" => require(id, p("r")? >= 1 && p("s")? >= 1, "r, s >= 1"),
        "GV" => require(
            id,
            p("p")? >= 0 && p("q")? >= 0 && p("r")? >= 0,
            "p, q, r >= 0",
        ),
        "P1" => require(id, p("n")? >= 1, "n >= 1"),
        "P10" => {
            let (n, k) = (p("n")?, p("k")?);
            require(id, n >= 1 && n % 2 == 1, "n odd")?;
            require(id, k >= 0, "k >= 0")
        }
        "P11" => {
            let (n, k) = (p("n")?, p("k")?);
            require(id, n >= 2 && n % 2 == 0, "n even")?;
            require(id, k >= 1 && k % 2 == 1, "k odd")
        }
        "P12" => {
            let (n, k) = (p("n")?, p("k")?);
            require(id, n >= 2 && n % 2 == 0, "n even")?;
            require(id, k >= 0 && k % 2 == 0, "k even")
        }
        "DISP" => {
            let (n, k) = (p("n")?, p("k")?);
            require(id, n >= 2 && n % 2 == 0, "n even")?;
            require(
                id,
                k >= 3 && (k % 2 == 1 || k >= 4),
                "odd k >= 3 or even k >= 4",
            )
        }
        "LT" => {
            let (n, k) = (p("n")?, p("k")?);
            require(id, n >= 1, "n >= 1")?;
            require(id, k >= 0 && k <= n * n, "0 <= k <= n²")
        }
        "S3EQ" => {
            require(
                id,
                p("seed")? >= 0 && p("sample")? >= 0,
                "seed, sample >= 0",
            )?;
            require(id, p("k")? >= 0, "k >= 0")?;
            for (name, lo) in [("max_dim", 1), ("max_classes", 1), ("atoms", 0)] {
                if let Some(&v) = params.get(name) {
                    require(id, v >= lo, &format!("{name} >= {lo}"))?;
                }
            }
            Ok(())
        }
        other => Err(Error::UnknownIdentity(other.to_string())),
    }
}

/// Runs one cell. Errors only for unknown ids and parameters outside the domain.
pub fn verify(id: &str, params: &Params, opts: &VerifyOptions) -> Result<IdentityReport> {
    check_domain(id, params)?;
    let start = Instant::now();
    let mut report = run_cell(id, params, opts);
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Compares the oracle against each candidate and reports the first
/// disagreeing candidate (or the last one when all agree).
fn against(
    id: &str,
    params: &Params,
    mode: FieldMode,
    oracle: &DiagonalForm,
    candidates: Vec<Result<ClosedForm>>,
) -> IdentityReport {
    let lhs = Side::form(oracle, mode);
    let mut rhs = Side::error("no candidate");
    for c in candidates {
        rhs = match c {
            Ok(cf) => Side::form(&cf.form(), mode),
            Err(e) => Side::error(e),
        };
        if rhs != lhs {
            break;
        }
    }
    IdentityReport::new(id, params, mode, lhs, rhs)
}

fn trace_params(n: i64) -> TraceParams {
    TraceParams::new(n as u64).expect("domain checked")
}

fn run_cell(id: &str, params: &Params, opts: &VerifyOptions) -> IdentityReport {
    let p = |name: &str| params[name];
    let generic = opts.mode.unwrap_or(FieldMode::Generic);
    match id {
        "S4" | "S5" | "N1" | "N2" => {
            let (h, k) = (p("h"), p("k"));
            let hyp = DiagonalForm::hyperbolic(h).expect("h >= 1");
            let (oracle, closed) = if id.starts_with('S') {
                (lambda_power(&hyp, k), ext_hyp_closed(to_u64(h), to_u64(k)))
            } else {
                (
                    sym_power(&hyp, k).expect("k >= 0"),
                    sym_hyp_closed(to_u64(h), to_u64(k)),
                )
            };
            against(id, params, generic, &oracle, vec![closed])
        }
        "L1" => {
            let (m, k, s) = (p("m"), p("k"), p("sign"));
            let class = if s == 1 {
                SquareClass::one()
            } else {
                SquareClass::minus_one()
            };
            let base = DiagonalForm::repeated(class.clone(), BigUint::from(to_u64(m)));
            let oracle = sym_power(&base, k).expect("k >= 0");
            let count = binomial(m + k - 1, k).expect("m >= 1");
            let closed = DiagonalForm::repeated(class.pow(to_u64(k)), count.magnitude().clone());
            IdentityReport::new(
                id,
                params,
                generic,
                Side::form(&oracle, generic),
                Side::form(&closed, generic),
            )
        }
        "L2" => {
            let c = check_vandermonde_l2(to_u64(p("p")), to_u64(p("r")));
            IdentityReport::new(id, params, generic, Side::int(&c.lhs), Side::int(&c.rhs))
        }
        "L3" => {
            let (r, s) = (p("r"), p("s"));
            let lhs = binomial_general(r - 1, s) + binomial_general(r - 1, s - 1);
            IdentityReport::new(
                id,
                params,
                generic,
                Side::int(&lhs),
                Side::int(&binomial_general(r, s)),
            )
        }
        "R1" => {
            let (r, s) = (p("r"), p("s"));
            let lhs = BigInt::from(s) * binomial_general(r, s);
            let rhs = BigInt::from(r) * binomial_general(r - 1, s - 1);
            IdentityReport::new(id, params, generic, Side::int(&lhs), Side::int(&rhs))
        }
        "GV" => {
            let c = gen_vandermonde(to_u64(p("p")), to_u64(p("q")), to_u64(p("r")));
            IdentityReport::new(id, params, generic, Side::int(&c.lhs), Side::int(&c.rhs))
        }
        "P1" => {
            let tp = trace_params(p("n"));
            let mode = opts.mode.unwrap_or(tp.required_mode());
            let form = trace_form_with(&tp, opts.odd_sign);
            let mut report = against(id, params, mode, &form, vec![sym_trace_closed(&tp, 1)]);
            if form.dim() != BigUint::from(to_u64(p("n") * p("n"))) {
                report.passed = false;
                report.note = Some("trace form dimension differs from n²".into());
            }
            report
        }
        "P10" | "P11" | "P12" => {
            let (tp, k) = (trace_params(p("n")), p("k"));
            let mode = opts.mode.unwrap_or(tp.required_mode());
            let oracle = sym_power(&trace_form_with(&tp, opts.odd_sign), k).expect("k >= 0");
            let mut candidates = Vec::new();
            match sym_trace_displayed(&tp, to_u64(k)) {
                Ok(Some(shown)) => candidates.push(Ok(shown)),
                Ok(None) => {}
                Err(e) => candidates.push(Err(e)),
            }
            candidates.push(sym_trace_closed(&tp, to_u64(k)));
            against(id, params, mode, &oracle, candidates)
        }
        "DISP" => {
            let (tp, k) = (trace_params(p("n")), to_u64(p("k")));
            let mode = opts.mode.unwrap_or(tp.required_mode());
            let side = |r: Result<Option<ClosedForm>>| match r {
                Ok(Some(cf)) => Side::form(&cf.form(), mode),
                Ok(None) => Side::error("displayed form undefined"),
                Err(e) => Side::error(e),
            };
            let lhs = side(sym_trace_displayed(&tp, k));
            let rhs = side(sym_trace_closed(&tp, k).map(Some));
            IdentityReport::new(id, params, mode, lhs, rhs)
        }
        "LT" => {
            let (tp, k) = (trace_params(p("n")), p("k"));
            let mode = opts.mode.unwrap_or(tp.required_mode());
            let oracle = lambda_power(&trace_form_with(&tp, opts.odd_sign), k);
            against(
                id,
                params,
                mode,
                &oracle,
                vec![ext_trace_closed_with(&tp, to_u64(k), opts.table_reading)],
            )
        }
        "S3EQ" => route_equivalence(params, generic, opts),
        other => IdentityReport::new(
            other,
            params,
            generic,
            Side::error("unknown identity"),
            Side::error("unknown identity"),
        ),
    }
}

/// Seeded random form over at most `atoms` atoms plus `-1`, with at most
/// `max_classes` distinct classes and dimension at most `max_dim`.
pub fn random_form(
    seed: u64,
    sample: u64,
    max_dim: u64,
    max_classes: usize,
    atoms: usize,
) -> DiagonalForm {
    const NAMES: [&str; 8] = ["a", "b", "c", "d", "e", "f", "g", "h"];
    let atoms = atoms.min(NAMES.len());
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ sample.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let universe = 1usize << (atoms + 1);
    let classes = rng.gen_range(1..=max_classes.min(universe).min(max_dim as usize));
    let mut masks: Vec<usize> = Vec::with_capacity(classes);
    while masks.len() < classes {
        let m = rng.gen_range(0..universe);
        if !masks.contains(&m) {
            masks.push(m);
        }
    }
    let dim = rng.gen_range(classes as u64..=max_dim);
    let mut mults = vec![1u64; classes];
    for _ in classes as u64..dim {
        mults[rng.gen_range(0..classes)] += 1;
    }
    let mut form = DiagonalForm::zero();
    for (mask, mult) in masks.into_iter().zip(mults) {
        let class = SquareClass::from_atoms((0..=atoms).filter(|b| mask >> b & 1 == 1).map(|b| {
            if b == 0 {
                Atom::MinusOne
            } else {
                Atom::named(NAMES[b - 1]).expect("valid name")
            }
        }));
        form.add_entry(class, BigUint::from(mult));
    }
    form
}

fn route_equivalence(params: &Params, mode: FieldMode, opts: &VerifyOptions) -> IdentityReport {
    let get = |name: &str, default: i64| params.get(name).copied().unwrap_or(default);
    let (seed, sample, k) = (
        to_u64(get("seed", 0)),
        to_u64(get("sample", 0)),
        get("k", 0),
    );
    let form = random_form(
        seed,
        sample,
        to_u64(get("max_dim", 40)),
        get("max_classes", 8) as usize,
        get("atoms", 4) as usize,
    );
    let conv = sym_power(&form, k).expect("k >= 0");
    let lhs = Side::form(&conv, mode);
    let mut notes = Vec::new();
    let mut rhs = Side::form(&sym_power_via_s3(&form, k).expect("k >= 0"), mode);

    let n = form.dim();
    let conv_lambda = lambda_power(&form, k);
    if rhs == lhs && conv.dim() != multichoose(&n, to_u64(k)) {
        rhs = Side::error("dim S^k differs from C(n+k-1, k)");
    }
    if rhs == lhs && conv_lambda.dim() != choose(&n, to_u64(k)) {
        rhs = Side::error("dim Λ^k differs from C(n, k)");
    }
    if rhs == lhs {
        match naive_sym(&form, k, opts.enum_cap) {
            Ok(naive) => {
                notes.push("naive_sym checked");
                rhs = Side::form(&naive, mode);
            }
            Err(Error::EnumerationTooLarge { .. }) => notes.push("naive_sym skipped (cap)"),
            Err(e) => rhs = Side::error(e),
        }
    }
    if rhs == lhs {
        match naive_lambda(&form, k, opts.enum_cap) {
            Ok(naive) if naive == conv_lambda => notes.push("naive_lambda checked"),
            Ok(_) => rhs = Side::error("naive_lambda differs from convolution Λ^k"),
            Err(Error::EnumerationTooLarge { .. }) => notes.push("naive_lambda skipped (cap)"),
            Err(e) => rhs = Side::error(e),
        }
    }
    let mut report = IdentityReport::new("S3EQ", params, mode, lhs, rhs);
    report.seed = Some(seed);
    report.note = Some(format!("dim {n}; {}", notes.join("; ")));
    report
}

/// Expands a sweep into its in-domain cells, in canonical order.
pub fn cells(config: &SuiteConfig) -> Vec<(String, Params)> {
    let mut out = Vec::new();
    for (id, sweep) in &config.sweep {
        let mut assignments: Vec<Params> = vec![Params::new()];
        for (name, values) in sweep {
            let vs = values.values();
            assignments = assignments
                .into_iter()
                .flat_map(|a| {
                    vs.iter().map(move |v| {
                        let mut a = a.clone();
                        a.insert(name.clone(), *v);
                        a
                    })
                })
                .collect();
        }
        for a in assignments {
            match check_domain(id, &a) {
                Ok(()) => out.push((id.clone(), a)),
                Err(Error::Domain { .. }) => {}
                // Unknown ids and missing parameters surface as failed reports.
                Err(_) => out.push((id.clone(), a)),
            }
        }
    }
    out.sort();
    out
}

/// Result of a full sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteOutcome {
    pub reports: Vec<IdentityReport>,
    pub all_passed: bool,
}

/// Runs every cell of `config`. Individual failures are reported, never thrown.
pub fn run_suite(config: &SuiteConfig) -> SuiteOutcome {
    let opts = config.options();
    let mut reports: Vec<IdentityReport> = cells(config)
        .par_iter()
        .map(|(id, params)| {
            verify(id, params, &opts).unwrap_or_else(|e| {
                let mut r = IdentityReport::new(
                    id,
                    params,
                    FieldMode::Generic,
                    Side::error(&e),
                    Side::error(&e),
                );
                r.note = Some(e.to_string());
                r
            })
        })
        .collect();
    if config.p12_negative {
        reports.push(p12_negative(&opts));
    }
    reports.sort_by(|a, b| (&a.identity_id, &a.params).cmp(&(&b.identity_id, &b.params)));
    let all_passed = reports.iter().all(|r| r.passed);
    SuiteOutcome {
        reports,
        all_passed,
    }
}

/// `P12` at `n = 4, k = 4` forced into GENERIC; passes iff that comparison fails.
pub fn p12_negative(opts: &VerifyOptions) -> IdentityReport {
    let params: Params = [("n".to_string(), 4), ("k".to_string(), 4)].into();
    let forced = VerifyOptions {
        mode: Some(FieldMode::Generic),
        ..*opts
    };
    let start = Instant::now();
    let inner = run_cell("P12", &params, &forced);
    IdentityReport {
        identity_id: P12_NEGATIVE.to_string(),
        passed: !inner.passed,
        note: Some("expects the GENERIC comparison to fail".into()),
        elapsed: start.elapsed(),
        ..inner
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(pairs: &[(&str, i64)]) -> Params {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    fn opts() -> VerifyOptions {
        VerifyOptions::default()
    }

    #[test]
    fn n1_example() {
        let r = verify("N1", &ps(&[("h", 2), ("k", 3)]), &opts()).unwrap();
        assert!(r.passed);
        assert_eq!(r.lhs.to_string(), "10 x H");
        assert_eq!(r.rhs, r.lhs);
    }

    #[test]
    fn p12_mode_override() {
        let params = ps(&[("n", 4), ("k", 4)]);
        let generic = VerifyOptions {
            mode: Some(FieldMode::Generic),
            ..opts()
        };
        assert!(!verify("P12", &params, &generic).unwrap().passed);
        let auto = verify("P12", &params, &opts()).unwrap();
        assert!(auto.passed);
        assert_eq!(auto.mode, FieldMode::MinusOneSquare);
    }

    #[test]
    fn s3eq_example() {
        let r = verify(
            "S3EQ",
            &ps(&[("seed", 42), ("sample", 0), ("k", 6), ("max_dim", 6)]),
            &opts(),
        )
        .unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.seed, Some(42));
    }

    #[test]
    fn errors() {
        assert!(matches!(
            verify("BOGUS", &Params::new(), &opts()),
            Err(Error::UnknownIdentity(_))
        ));
        assert!(matches!(
            verify("N1", &ps(&[("h", 2)]), &opts()),
            Err(Error::MissingParam { .. })
        ));
        let err = verify("P11", &ps(&[("n", 3), ("k", 3)]), &opts()).unwrap_err();
        assert!(err.to_string().contains("n even"), "{err}");
    }

    #[test]
    fn default_suite_covers_registry_and_passes() {
        let cfg = SuiteConfig::defaults();
        for id in REGISTRY {
            assert!(cells(&cfg).iter().any(|(i, _)| i == id), "{id} not swept");
        }
        let start = Instant::now();
        let a = run_suite(&cfg);
        eprintln!(
            "default suite: {} cells in {:?}",
            a.reports.len(),
            start.elapsed()
        );
        let failed: Vec<String> = a
            .reports
            .iter()
            .filter(|r| !r.passed)
            .map(|r| format!("{} {} / {}", r.label(), r.lhs, r.rhs))
            .collect();
        assert!(failed.is_empty(), "{failed:#?}");
        assert!(a.all_passed);
        assert_eq!(a, run_suite(&cfg));
    }

    #[test]
    fn empty_config_is_vacuous() {
        let out = run_suite(&SuiteConfig::default());
        assert!(out.reports.is_empty());
        assert!(out.all_passed);
    }

    #[test]
    fn p12_negative_report() {
        let r = p12_negative(&opts());
        assert!(r.passed);
        assert_eq!(r.mode, FieldMode::Generic);
        assert_ne!(r.lhs, r.rhs);
    }

    #[test]
    fn sweep_filters_domain() {
        let cfg = SuiteConfig::default().with(
            "N1",
            &[
                ("h", ParamValues::Single(1)),
                ("k", ParamValues::range(0, 5)),
            ],
        );
        let c = cells(&cfg);
        assert_eq!(
            c.iter().map(|(_, p)| p["k"]).collect::<Vec<_>>(),
            vec![1, 3, 5]
        );
    }

    #[test]
    fn random_forms_respect_bounds() {
        for s in 0..200 {
            let f = random_form(42, s, 40, 8, 4);
            assert!(f.distinct_classes() <= 8);
            assert!(f.dim() <= BigUint::from(40u32) && f.dim() >= BigUint::from(1u32));
            assert_eq!(f, random_form(42, s, 40, 8, 4));
        }
    }

    #[test]
    fn literal_odd_sign_is_rejected() {
        let o = VerifyOptions {
            odd_sign: crate::closed::OddSignReading::Literal,
            ..opts()
        };
        assert!(
            !verify("P10", &ps(&[("n", 3), ("k", 1)]), &o)
                .unwrap()
                .passed
        );
        assert!(!verify("P1", &ps(&[("n", 3)]), &o).unwrap().passed);
        assert!(
            verify("P10", &ps(&[("n", 3), ("k", 0)]), &o)
                .unwrap()
                .passed
        );
    }
}
