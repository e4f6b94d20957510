//! Computational checks of the domination-polynomial results for cycles,
//! wheels and paths.
//!
//! Every check returns a [`VerificationReport`]. A report passes exactly when
//! it carries no counterexamples, and each counterexample holds enough data
//! (graph6 text or cycle lengths, plus both polynomials) to reproduce it.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::cycle::{self, ceil_div3, cycle_polynomial};
use crate::graph::{build_family, disjoint_union, Graph, GraphFamily};
use crate::graph6::{self, Record};
use crate::oracle::{self, DominationNumber, OracleOptions};
use crate::poly::IntPolynomial;

/// `(b_1 .. b_30) mod 9` as printed alongside the period-27 argument.
pub const PRINTED_B_MOD9: [u8; 30] = [
    1, 1, 3, 3, 7, 6, 2, 7, 3, 7, 7, 3, 3, 4, 6, 5, 4, 3, 4, 4, 3, 3, 1, 6, 8, 1, 3, 1, 1, 3,
];

/// Residues of `n mod 27` (for `n ≡ 1 mod 3`) where `ord_3 a_n` is one larger.
pub const EXCEPTIONAL_MOD27: [u64; 3] = [4, 13, 22];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum LemmaId {
    #[serde(rename = "L2-union")]
    L2Union,
    #[serde(rename = "L3-cycle")]
    L3Cycle,
    #[serde(rename = "L4-gamma")]
    L4Gamma,
    #[serde(rename = "L5-alpha")]
    L5Alpha,
    #[serde(rename = "L6-ord3")]
    L6Ord3,
    #[serde(rename = "R1-remark")]
    R1Remark,
    #[serde(rename = "REL2-beta")]
    Rel2Beta,
    #[serde(rename = "REL3-theta")]
    Rel3Theta,
    #[serde(rename = "T5-partitions")]
    T5Partitions,
    #[serde(rename = "T5-ten-cases")]
    T5TenCases,
    #[serde(rename = "T5-corpus")]
    T5Corpus,
    #[serde(rename = "COR-wheel")]
    CorWheel,
    #[serde(rename = "P-path-class")]
    PPathClass,
}

impl LemmaId {
    pub const ALL: [LemmaId; 13] = [
        LemmaId::L2Union,
        LemmaId::L3Cycle,
        LemmaId::L4Gamma,
        LemmaId::L5Alpha,
        LemmaId::L6Ord3,
        LemmaId::R1Remark,
        LemmaId::Rel2Beta,
        LemmaId::Rel3Theta,
        LemmaId::T5Partitions,
        LemmaId::T5TenCases,
        LemmaId::T5Corpus,
        LemmaId::CorWheel,
        LemmaId::PPathClass,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LemmaId::L2Union => "L2-union",
            LemmaId::L3Cycle => "L3-cycle",
            LemmaId::L4Gamma => "L4-gamma",
            LemmaId::L5Alpha => "L5-alpha",
            LemmaId::L6Ord3 => "L6-ord3",
            LemmaId::R1Remark => "R1-remark",
            LemmaId::Rel2Beta => "REL2-beta",
            LemmaId::Rel3Theta => "REL3-theta",
            LemmaId::T5Partitions => "T5-partitions",
            LemmaId::T5TenCases => "T5-ten-cases",
            LemmaId::T5Corpus => "T5-corpus",
            LemmaId::CorWheel => "COR-wheel",
            LemmaId::PPathClass => "P-path-class",
        }
    }

    /// The statement a report with this id checks.
    pub fn statement(self) -> &'static str {
        match self {
            LemmaId::L2Union => "D(G ⊔ H, x) = D(G, x) D(H, x)",
            LemmaId::L3Cycle => "D(C_n) = x (D(C_n-1) + D(C_n-2) + D(C_n-3)), n >= 4",
            LemmaId::L4Gamma => "gamma(C_n) = ceil(n/3); gamma additive over cycle unions",
            LemmaId::L5Alpha => "D(C_n, -1) = 3 if 4 | n, else -1",
            LemmaId::L6Ord3 => "ord_3 D(C_n, -3) by n mod 3; 9 does not divide b_n",
            LemmaId::R1Remark => "b_n mod 9 table, period 27, exceptional set {4, 13, 22} mod 27",
            LemmaId::Rel2Beta => "D'(C_n, -1) = -n, n, 0 by n mod 4",
            LemmaId::Rel3Theta => "D''(C_n, -1) closed form by n mod 4",
            LemmaId::T5Partitions => "no other union of cycles shares D(C_n)",
            LemmaId::T5TenCases => "three-cycle unions: ten residue cases, each eliminated",
            LemmaId::T5Corpus => "C_n alone in its class among all graphs of order n",
            LemmaId::CorWheel => "W_n alone in its class among all graphs of order n",
            LemmaId::PPathClass => "class of P_n (3 | n) has two members",
        }
    }

    /// Default upper bound of the checked range.
    pub fn default_max_n(self) -> u64 {
        match self {
            LemmaId::L2Union => 8,
            LemmaId::L3Cycle | LemmaId::L4Gamma => 15,
            LemmaId::L5Alpha | LemmaId::Rel2Beta | LemmaId::Rel3Theta => 200,
            LemmaId::L6Ord3 | LemmaId::R1Remark => 1000,
            LemmaId::T5Partitions => 40,
            LemmaId::T5TenCases => 60,
            LemmaId::T5Corpus | LemmaId::CorWheel => 8,
            LemmaId::PPathClass => 6,
        }
    }

    pub fn needs_corpus(self) -> bool {
        matches!(
            self,
            LemmaId::T5Corpus | LemmaId::CorWheel | LemmaId::PPathClass
        )
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LemmaId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LemmaId::ALL
            .into_iter()
            .find(|id| id.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown check id {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub subject: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<IntPolynomial>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub actual: Option<IntPolynomial>,
}

impl Counterexample {
    pub fn new(subject: impl Into<String>, message: impl Into<String>) -> Self {
        Counterexample {
            subject: subject.into(),
            message: message.into(),
            expected: None,
            actual: None,
        }
    }

    pub fn with_polynomials(mut self, expected: IntPolynomial, actual: IntPolynomial) -> Self {
        self.expected = Some(expected);
        self.actual = Some(actual);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CheckedRange {
    pub from: u64,
    pub to: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub lemma_id: LemmaId,
    pub range: CheckedRange,
    pub status: Status,
    pub counterexamples: Vec<Counterexample>,
    pub notes: Vec<String>,
    pub timing_ms: u64,
}

impl VerificationReport {
    fn finish(
        lemma_id: LemmaId,
        (from, to): (u64, u64),
        counterexamples: Vec<Counterexample>,
        notes: Vec<String>,
        started: Instant,
    ) -> Self {
        let status = if counterexamples.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        };
        VerificationReport {
            lemma_id,
            range: CheckedRange { from, to },
            status,
            counterexamples,
            notes,
            timing_ms: started.elapsed().as_millis() as u64,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

// ---------------------------------------------------------------------------
// Cycle partitions

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum MinPart {
    /// Cycles of length 1 and 2 (`K1`, `K2`) are allowed.
    One,
    /// Only genuine cycles.
    Three,
}

impl MinPart {
    pub fn value(self) -> u64 {
        match self {
            MinPart::One => 1,
            MinPart::Three => 3,
        }
    }
}

impl TryFrom<u64> for MinPart {
    type Error = String;

    fn try_from(v: u64) -> Result<Self, Self::Error> {
        match v {
            1 => Ok(MinPart::One),
            3 => Ok(MinPart::Three),
            _ => Err(format!("min part must be 1 or 3, got {v}")),
        }
    }
}

/// Cycle lengths of a disjoint union of cycles, non-increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CyclePartition {
    parts: Vec<u64>,
    #[serde(skip)]
    min_part: MinPart,
}

impl CyclePartition {
    pub fn new(mut parts: Vec<u64>, min_part: MinPart) -> Result<Self, String> {
        if parts.is_empty() {
            return Err("a partition needs at least one part".into());
        }
        if let Some(&p) = parts.iter().find(|&&p| p < min_part.value()) {
            return Err(format!("part {p} below the minimum {}", min_part.value()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(CyclePartition { parts, min_part })
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn total(&self) -> u64 {
        self.parts.iter().sum()
    }

    pub fn min_part(&self) -> MinPart {
        self.min_part
    }

    pub fn is_trivial(&self) -> bool {
        self.parts.len() == 1
    }

    /// The disjoint union of the cycles, in part order.
    pub fn graph(&self) -> Graph {
        self.parts
            .iter()
            .map(|&p| build_family(GraphFamily::Cycle(p as usize)).expect("parts are positive"))
            .fold(Graph::empty(0), |acc, c| disjoint_union(&acc, &c))
    }
}

impl fmt::Display for CyclePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(u64::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Can `total` be split into parts within `[lo, hi]`? With `k` parts the
/// reachable sums are exactly `k*lo ..= k*hi`.
fn fillable(total: u64, lo: u64, hi: u64) -> bool {
    if total == 0 {
        return true;
    }
    if hi < lo {
        return false;
    }
    let k_min = total.div_ceil(hi);
    let k_max = total / lo;
    k_min <= k_max
}

/// Lexicographically largest partition of `total` with parts in `[lo, hi]`.
fn greedy_fill(mut total: u64, lo: u64, mut hi: u64, out: &mut Vec<u64>) -> bool {
    while total > 0 {
        let mut p = hi.min(total);
        while p >= lo && !fillable(total - p, lo, p) {
            p -= 1;
        }
        if p < lo {
            return false;
        }
        out.push(p);
        total -= p;
        hi = p;
    }
    true
}

/// Streams the partitions of `n` into parts `>= min_part` in decreasing
/// lexicographic order, starting from `{n}`.
pub struct Partitions {
    current: Option<Vec<u64>>,
    min: u64,
    min_part: MinPart,
}

impl Iterator for Partitions {
    type Item = CyclePartition;

    fn next(&mut self) -> Option<CyclePartition> {
        let out = self.current.clone()?;
        self.current = self.successor(&out);
        Some(CyclePartition {
            parts: out,
            min_part: self.min_part,
        })
    }
}

impl Partitions {
    fn successor(&self, parts: &[u64]) -> Option<Vec<u64>> {
        let mut suffix = 0u64;
        for i in (0..parts.len()).rev() {
            suffix += parts[i];
            let mut v = parts[i];
            while v > self.min {
                v -= 1;
                let rest = suffix - v;
                if fillable(rest, self.min, v) {
                    let mut next = parts[..i].to_vec();
                    next.push(v);
                    if greedy_fill(rest, self.min, v, &mut next) {
                        return Some(next);
                    }
                }
            }
        }
        None
    }
}

pub fn enumerate_partitions(n: u64, min_part: MinPart) -> Partitions {
    let min = min_part.value();
    let current = (n >= min).then(|| vec![n]);
    Partitions {
        current,
        min,
        min_part,
    }
}

pub fn partition_polynomial(p: &CyclePartition) -> IntPolynomial {
    p.parts
        .iter()
        .map(|&k| cycle_polynomial(k).expect("parts are positive"))
        .product()
}

// ---------------------------------------------------------------------------
// Product law, recurrence and domination number

fn random_graph(rng: &mut StdRng, max_order: usize) -> Graph {
    let n = rng.gen_range(1..=max_order);
    let density: f64 = rng.gen_range(0.1..0.9);
    let edges: Vec<(usize, usize)> = (1..n)
        .flat_map(|v| (0..v).map(move |u| (u, v)))
        .filter(|_| rng.gen_bool(density))
        .collect();
    Graph::from_edges(n, edges).expect("generated edges are valid")
}

fn describe(g: &Graph) -> String {
    graph6::encode_graph6(g).unwrap_or_else(|_| format!("graph of order {}", g.order()))
}

/// Random pairs `(G, H)` of order at most `max_order`: the brute-force
/// polynomial of `G ⊔ H` must be the product of the two.
pub fn verify_union_product(
    pairs: usize,
    max_order: usize,
    seed: u64,
    opts: &OracleOptions,
) -> VerificationReport {
    let started = Instant::now();
    let raw = OracleOptions {
        split_components: false,
        ..*opts
    };
    let mut rng = StdRng::seed_from_u64(seed);
    let graphs: Vec<(Graph, Graph)> = (0..pairs)
        .map(|_| (random_graph(&mut rng, max_order), random_graph(&mut rng, max_order)))
        .collect();
    let counterexamples: Vec<Counterexample> = graphs
        .par_iter()
        .filter_map(|(g, h)| {
            let subject = format!("{} ⊔ {}", describe(g), describe(h));
            let run = || -> Result<Option<Counterexample>, oracle::OracleError> {
                let union = oracle::domination_polynomial_with(&disjoint_union(g, h), &raw)?;
                let product = &oracle::domination_polynomial_with(g, &raw)?
                    * &oracle::domination_polynomial_with(h, &raw)?;
                Ok((union != product).then(|| {
                    Counterexample::new(subject.clone(), "union polynomial differs from product")
                        .with_polynomials(product, union)
                }))
            };
            run().unwrap_or_else(|e| Some(Counterexample::new(subject.clone(), e.to_string())))
        })
        .collect();
    let notes = vec![format!("{pairs} random pairs, seed {seed}")];
    VerificationReport::finish(
        LemmaId::L2Union,
        (1, max_order as u64),
        counterexamples,
        notes,
        started,
    )
}

/// Brute-force `D(C_n)` against the recurrence for `1 <= n <= n_max`.
pub fn verify_cycle_recurrence(n_max: u64, opts: &OracleOptions) -> VerificationReport {
    let started = Instant::now();
    let counterexamples: Vec<Counterexample> = (1..=n_max)
        .into_par_iter()
        .filter_map(|n| {
            let subject = format!("C{n}");
            let g = build_family(GraphFamily::Cycle(n as usize)).expect("n >= 1");
            let recurrence = cycle_polynomial(n).expect("n >= 1");
            match oracle::domination_polynomial_with(&g, opts) {
                Ok(brute) if brute == recurrence => None,
                Ok(brute) => Some(
                    Counterexample::new(subject, "brute force differs from recurrence")
                        .with_polynomials(recurrence, brute),
                ),
                Err(e) => Some(Counterexample::new(subject, e.to_string())),
            }
        })
        .collect();
    VerificationReport::finish(LemmaId::L3Cycle, (1, n_max), counterexamples, vec![], started)
}

const GAMMA_ORACLE_MAX: u64 = 15;
const GAMMA_PARTITION_MAX: u64 = 20;

/// Three checks on the domination number of cycles and their unions:
///
/// * every partition of `n <= n_max` whose polynomial equals `D(C_n)`
///   satisfies `ceil(n/3) = sum ceil(n_i/3)`;
/// * the oracle gives `gamma(C_n) = ceil(n/3)` for `n <= min(n_max, 15)`;
/// * the lowest term of every partition polynomial (`n <= max(n_max, 20)`)
///   sits at the sum of the part ceilings.
pub fn verify_gamma_additivity_and_ceiling(
    n_max: u64,
    opts: &OracleOptions,
) -> VerificationReport {
    let started = Instant::now();
    let mut counterexamples = Vec::new();
    let mut notes = Vec::new();

    let mut matching = 0usize;
    for n in 3..=n_max {
        let target = cycle_polynomial(n).expect("n >= 1");
        for p in enumerate_partitions(n, MinPart::Three) {
            if partition_polynomial(&p) == target {
                matching += 1;
                let sum: u64 = p.parts().iter().map(|&k| ceil_div3(k)).sum();
                if sum != ceil_div3(n) {
                    counterexamples.push(Counterexample::new(
                        p.to_string(),
                        format!("ceiling sum {sum} differs from ceil({n}/3)"),
                    ));
                }
            }
        }
    }
    notes.push(format!("{matching} partitions reproduce D(C_n) for n <= {n_max}"));

    let oracle_max = n_max.min(GAMMA_ORACLE_MAX);
    let oracle_failures: Vec<Counterexample> = (1..=oracle_max)
        .into_par_iter()
        .filter_map(|n| {
            let g = build_family(GraphFamily::Cycle(n as usize)).expect("n >= 1");
            match oracle::domination_number_with(&g, opts) {
                Ok(DominationNumber::Finite(k)) if k as u64 == ceil_div3(n) => None,
                Ok(other) => Some(Counterexample::new(
                    format!("C{n}"),
                    format!("oracle gamma {other:?}, expected {}", ceil_div3(n)),
                )),
                Err(e) => Some(Counterexample::new(format!("C{n}"), e.to_string())),
            }
        })
        .collect();
    counterexamples.extend(oracle_failures);
    notes.push(format!("oracle gamma checked for 1 <= n <= {oracle_max}"));

    let partition_max = n_max.max(GAMMA_PARTITION_MAX);
    let mut checked = 0usize;
    for min_part in [MinPart::Three, MinPart::One] {
        for n in 1..=partition_max {
            for p in enumerate_partitions(n, min_part) {
                checked += 1;
                let sum: u64 = p.parts().iter().map(|&k| ceil_div3(k)).sum();
                let lowest = partition_polynomial(&p).lowest_degree().map(|d| d as u64);
                if lowest != Some(sum) {
                    counterexamples.push(Counterexample::new(
                        p.to_string(),
                        format!("lowest degree {lowest:?}, part ceilings sum to {sum}"),
                    ));
                }
            }
        }
    }
    notes.push(format!(
        "lowest-degree additivity over {checked} partitions of n <= {partition_max}"
    ));

    VerificationReport::finish(LemmaId::L4Gamma, (1, n_max), counterexamples, notes, started)
}

// ---------------------------------------------------------------------------
// Evaluations at -1 and -3

/// Closed form, recurrence and polynomial evaluation of the `order`-th
/// derivative at `-1` must agree.
fn verify_minus_one_sequence(
    lemma_id: LemmaId,
    n_max: u64,
    order: usize,
    closed: fn(u64) -> BigInt,
    recurrence: fn(u64) -> BigInt,
) -> VerificationReport {
    let started = Instant::now();
    let mut counterexamples = Vec::new();
    for n in 1..=n_max {
        let poly = cycle_polynomial(n).expect("n >= 1");
        let evaluated = poly.nth_derivative(order).eval_i64(-1);
        let c = closed(n);
        let r = recurrence(n);
        if c != evaluated || r != evaluated {
            counterexamples.push(Counterexample::new(
                format!("n = {n}"),
                format!("closed form {c}, recurrence {r}, evaluation {evaluated}"),
            ));
        }
    }
    VerificationReport::finish(lemma_id, (1, n_max), counterexamples, vec![], started)
}

pub fn verify_alpha(n_max: u64) -> VerificationReport {
    verify_minus_one_sequence(
        LemmaId::L5Alpha,
        n_max,
        0,
        cycle::alpha,
        cycle::alpha_recurrence,
    )
}

pub fn verify_beta(n_max: u64) -> VerificationReport {
    verify_minus_one_sequence(
        LemmaId::Rel2Beta,
        n_max,
        1,
        cycle::beta,
        cycle::beta_recurrence,
    )
}

pub fn verify_theta(n_max: u64) -> VerificationReport {
    verify_minus_one_sequence(
        LemmaId::Rel3Theta,
        n_max,
        2,
        cycle::theta,
        cycle::theta_recurrence,
    )
}

const POLY_CROSSCHECK_MAX: u64 = 200;

/// `ord_3 a_n` against the residue table, `9 ∤ b_n`, and agreement of the two
/// routes to `b_n`. For `n <= 200` `a_n` is also checked against `D(C_n, -3)`.
pub fn verify_ord3(n_max: u64) -> VerificationReport {
    let started = Instant::now();
    let mut counterexamples = Vec::new();
    let nine = BigInt::from(9);
    for n in 1..=n_max {
        let subject = format!("n = {n}");
        let predicted = cycle::ord3_classification(n).predicted_ord;
        let observed = cycle::ord3_of_a(n);
        if predicted != observed {
            counterexamples.push(Counterexample::new(
                subject.clone(),
                format!("ord_3 a_n = {observed}, table predicts {predicted}"),
            ));
        }
        let b = cycle::b_seq(n);
        if b.is_multiple_of(&nine) {
            counterexamples.push(Counterexample::new(subject.clone(), "9 divides b_n"));
        }
        match cycle::b_by_factoring(n) {
            Ok(f) if f == b => {}
            Ok(f) => counterexamples.push(Counterexample::new(
                subject.clone(),
                format!("recurrence b_n = {b}, factored b_n = {f}"),
            )),
            Err(e) => counterexamples.push(Counterexample::new(subject.clone(), e.to_string())),
        }
        if n <= POLY_CROSSCHECK_MAX {
            let evaluated = cycle_polynomial(n).expect("n >= 1").eval_i64(-3);
            if evaluated != cycle::a_seq(n) {
                counterexamples.push(Counterexample::new(
                    subject,
                    format!("a_n = {} but D(C_n, -3) = {evaluated}", cycle::a_seq(n)),
                ));
            }
        }
    }
    let notes = vec![format!(
        "a_n cross-checked against D(C_n, -3) for n <= {}",
        n_max.min(POLY_CROSSCHECK_MAX)
    )];
    VerificationReport::finish(LemmaId::L6Ord3, (1, n_max), counterexamples, notes, started)
}

/// The printed residue table, the period-27 congruence for `t + 27 <= n_max`,
/// and the exceptional residues for `n ≡ 1 (mod 3)`.
pub fn verify_remark(n_max: u64) -> VerificationReport {
    let started = Instant::now();
    let mut counterexamples = Vec::new();
    let mut notes = Vec::new();

    let table_len = (n_max as usize).min(PRINTED_B_MOD9.len());
    for (i, &printed) in PRINTED_B_MOD9[..table_len].iter().enumerate() {
        let n = i as u64 + 1;
        let got = cycle::b_mod9(n);
        if got != printed {
            counterexamples.push(Counterexample::new(
                format!("n = {n}"),
                format!("b_n mod 9 = {got}, table lists {printed}"),
            ));
        }
    }

    for t in 1..=n_max.saturating_sub(27) {
        if cycle::b_mod9(t + 27) != cycle::b_mod9(t) {
            counterexamples.push(Counterexample::new(
                format!("t = {t}"),
                "b_{t+27} and b_t differ mod 9",
            ));
        }
    }
    notes.push(format!(
        "period checked for 1 <= t <= {}",
        n_max.saturating_sub(27)
    ));

    for n in (1..=n_max).filter(|n| n % 3 == 1) {
        let exceptional = EXCEPTIONAL_MOD27.contains(&(n % 27));
        let raised = cycle::ord3_of_a(n) == ceil_div3(n) + 1;
        if exceptional != raised {
            counterexamples.push(Counterexample::new(
                format!("n = {n}"),
                format!("n mod 27 = {}, ord_3 a_n = {}", n % 27, cycle::ord3_of_a(n)),
            ));
        }
    }

    let nonpositive: Vec<u64> = (1..=n_max).filter(|&n| !cycle::b_is_positive(n)).collect();
    if nonpositive.is_empty() {
        notes.push(format!("b_n > 0 for 1 <= n <= {n_max}, so a_n has sign (-1)^n"));
    } else {
        notes.push(format!("b_n <= 0 at n in {nonpositive:?}"));
    }

    VerificationReport::finish(LemmaId::R1Remark, (1, n_max), counterexamples, notes, started)
}

// ---------------------------------------------------------------------------
// Uniqueness among unions of cycles

/// Every partition of `n` other than `{n}` must give a polynomial different
/// from `D(C_n)`.
pub fn verify_cycle_uniqueness(n: u64, min_part: MinPart) -> VerificationReport {
    verify_cycle_uniqueness_range(n, n, min_part)
}

pub fn verify_cycle_uniqueness_range(from: u64, to: u64, min_part: MinPart) -> VerificationReport {
    let started = Instant::now();
    let per_n: Vec<(u64, usize, Vec<Counterexample>)> = (from.max(1)..=to)
        .into_par_iter()
        .map(|n| {
            let target = cycle_polynomial(n).expect("n >= 1");
            let mut compared = 0usize;
            let mut found = Vec::new();
            for p in enumerate_partitions(n, min_part) {
                compared += 1;
                if p.is_trivial() {
                    continue;
                }
                let candidate = partition_polynomial(&p);
                if candidate == target {
                    found.push(
                        Counterexample::new(p.to_string(), format!("shares D(C{n})"))
                            .with_polynomials(target.clone(), candidate),
                    );
                }
            }
            (n, compared, found)
        })
        .collect();
    let mut counterexamples = Vec::new();
    let mut notes = Vec::new();
    let mut total = 0usize;
    for (n, compared, found) in per_n {
        total += compared;
        if from == to {
            notes.push(format!("n = {n}: {compared} partitions compared"));
        }
        counterexamples.extend(found);
    }
    notes.push(format!(
        "min part {}; {total} partitions compared",
        min_part.value()
    ));
    VerificationReport::finish(
        LemmaId::T5Partitions,
        (from, to),
        counterexamples,
        notes,
        started,
    )
}

/// Residue pattern `(n mod 4; sorted residues of the three parts mod 4)`.
pub type ResiduePattern = (u64, [u64; 3]);

/// The ten residue patterns left after comparing values at `-1`, numbered as
/// in the case analysis. Cases 7 and 10 need the second derivative; the rest
/// fall to the first.
pub const TEN_CASES: [ResiduePattern; 10] = [
    (0, [0, 1, 3]),
    (0, [0, 2, 2]),
    (1, [1, 1, 3]),
    (1, [1, 2, 2]),
    (1, [3, 3, 3]),
    (2, [1, 2, 3]),
    (2, [2, 2, 2]),
    (3, [1, 1, 1]),
    (3, [1, 3, 3]),
    (3, [2, 2, 3]),
];

fn needs_second_derivative(case: usize) -> bool {
    matches!(case, 7 | 10)
}

pub fn residue_pattern(parts: [u64; 3]) -> ResiduePattern {
    let n: u64 = parts.iter().sum();
    let mut r = parts.map(|p| p % 4);
    r.sort_unstable();
    (n % 4, r)
}

/// 1-based case number of a residue pattern, if it is one of the ten.
pub fn ten_case_index(pattern: ResiduePattern) -> Option<usize> {
    TEN_CASES.iter().position(|c| *c == pattern).map(|i| i + 1)
}

/// Values of the product `D(C_a) D(C_b) D(C_c)` and its first two
/// derivatives at `-1`, expanded by the product rule from the closed forms.
pub fn leibniz_at_minus_one(parts: [u64; 3]) -> (BigInt, BigInt, BigInt) {
    let a = parts.map(cycle::alpha);
    let b = parts.map(cycle::beta);
    let t = parts.map(cycle::theta);
    let value = &a[0] * &a[1] * &a[2];
    let first = &b[0] * &a[1] * &a[2] + &a[0] * &b[1] * &a[2] + &a[0] * &a[1] * &b[2];
    let two = BigInt::from(2);
    let second = &t[0] * &a[1] * &a[2]
        + &a[0] * &t[1] * &a[2]
        + &a[0] * &a[1] * &t[2]
        + &two * &b[0] * &b[1] * &a[2]
        + &two * &b[0] * &b[2] * &a[1]
        + &two * &b[1] * &b[2] * &a[0];
    (value, first, second)
}

#[derive(Default)]
struct CaseTally {
    triples: usize,
    first_mismatch: usize,
    second_mismatch: usize,
    example: Option<String>,
}

/// Every triple of cycle lengths `>= 3` with sum `n <= n_max` and
/// `alpha_n = alpha_a alpha_b alpha_c` must land in one of the ten residue
/// cases and be ruled out by the derivative the case calls for. The product
/// polynomial is also compared with `D(C_n)` directly, and the product-rule
/// values are checked against the actual derivatives of the product.
pub fn verify_ten_case_table(n_max: u64) -> VerificationReport {
    let started = Instant::now();
    let mut triples = Vec::new();
    for a in 3..=n_max {
        for b in 3..=a {
            for c in 3..=b {
                if a + b + c <= n_max {
                    triples.push([a, b, c]);
                }
            }
        }
    }

    struct Outcome {
        parts: [u64; 3],
        case: Option<usize>,
        compatible: bool,
        first_mismatch: bool,
        second_mismatch: bool,
        detail: String,
        problems: Vec<Counterexample>,
    }

    let outcomes: Vec<Outcome> = triples
        .par_iter()
        .map(|&parts| {
            let n: u64 = parts.iter().sum();
            let subject = format!("({},{},{}), n = {n}", parts[0], parts[1], parts[2]);
            let (value, first, second) = leibniz_at_minus_one(parts);
            let compatible = value == cycle::alpha(n);
            let mut problems = Vec::new();

            let product: IntPolynomial = parts
                .iter()
                .map(|&k| cycle_polynomial(k).expect("k >= 3"))
                .product();
            let target = cycle_polynomial(n).expect("n >= 9");
            if product == target {
                problems.push(
                    Counterexample::new(subject.clone(), "product equals D(C_n)")
                        .with_polynomials(target.clone(), product.clone()),
                );
            }
            let direct = (
                product.eval_i64(-1),
                product.derivative().eval_i64(-1),
                product.nth_derivative(2).eval_i64(-1),
            );
            if direct != (value.clone(), first.clone(), second.clone()) {
                problems.push(Counterexample::new(
                    subject.clone(),
                    format!(
                        "product rule gives ({value}, {first}, {second}), direct evaluation {direct:?}"
                    ),
                ));
            }

            let case = ten_case_index(residue_pattern(parts));
            let first_mismatch = first != cycle::beta(n);
            let second_mismatch = second != cycle::theta(n);
            if compatible {
                match case {
                    None => problems.push(Counterexample::new(
                        subject.clone(),
                        format!("residue pattern {:?} is outside the ten cases", residue_pattern(parts)),
                    )),
                    Some(k) => {
                        let eliminated = if needs_second_derivative(k) {
                            second_mismatch
                        } else {
                            first_mismatch
                        };
                        if !eliminated {
                            problems.push(Counterexample::new(
                                subject.clone(),
                                format!("case {k} survives its derivative test"),
                            ));
                        }
                    }
                }
            }
            let detail = format!(
                "{subject}: D' at -1 {first} vs {}, D'' at -1 {second} vs {}",
                cycle::beta(n),
                cycle::theta(n)
            );
            Outcome {
                parts,
                case,
                compatible,
                first_mismatch,
                second_mismatch,
                detail,
                problems,
            }
        })
        .collect();

    let mut tallies: BTreeMap<usize, CaseTally> = BTreeMap::new();
    let mut counterexamples = Vec::new();
    let mut incompatible = 0usize;
    for o in outcomes {
        counterexamples.extend(o.problems);
        if !o.compatible {
            incompatible += 1;
            continue;
        }
        if let Some(k) = o.case {
            let tally = tallies.entry(k).or_default();
            tally.triples += 1;
            tally.first_mismatch += usize::from(o.first_mismatch);
            tally.second_mismatch += usize::from(o.second_mismatch);
            if tally.example.is_none() {
                tally.example = Some(o.detail);
            }
        }
        debug_assert!(o.parts.iter().all(|&p| p >= 3));
    }
    let mut notes = vec![format!(
        "{} triples with sum <= {n_max}; {incompatible} ruled out by values at -1",
        triples.len()
    )];
    for (k, t) in &tallies {
        let (n_res, parts) = TEN_CASES[k - 1];
        notes.push(format!(
            "case {k} (n ≡ {n_res}; parts ≡ {parts:?} mod 4): {} triples, first-derivative mismatch {}, second-derivative mismatch {}; e.g. {}",
            t.triples,
            t.first_mismatch,
            t.second_mismatch,
            t.example.as_deref().unwrap_or("-")
        ));
    }
    VerificationReport::finish(
        LemmaId::T5TenCases,
        (9, n_max),
        counterexamples,
        notes,
        started,
    )
}

// ---------------------------------------------------------------------------
// Corpus classification

#[derive(Debug, Clone, Serialize)]
pub struct EquivalenceClassReport {
    pub key_polynomial: IntPolynomial,
    pub members: Vec<String>,
    pub class_size: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct RecordError {
    pub line: usize,
    pub record: String,
    pub message: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub classes: Vec<EquivalenceClassReport>,
    pub errors: Vec<RecordError>,
}

impl Classification {
    pub fn class_of(&self, key: &IntPolynomial) -> Option<&EquivalenceClassReport> {
        self.classes.iter().find(|c| &c.key_polynomial == key)
    }
}

struct Member {
    label: String,
    graph: Graph,
    poly: IntPolynomial,
}

fn evaluate_records(records: &[Record], opts: &OracleOptions) -> (Vec<Member>, Vec<RecordError>) {
    let results: Vec<Result<Member, RecordError>> = records
        .par_iter()
        .map(|r| {
            let err = |message: String| RecordError {
                line: r.line,
                record: r.text.clone(),
                message,
            };
            let g = r.graph.clone().map_err(|e| err(e.to_string()))?;
            let poly = oracle::domination_polynomial_with(&g, opts).map_err(|e| err(e.to_string()))?;
            Ok(Member {
                label: r.text.clone(),
                graph: g,
                poly,
            })
        })
        .collect();
    let mut members = Vec::new();
    let mut errors = Vec::new();
    for r in results {
        match r {
            Ok(m) => members.push(m),
            Err(e) => errors.push(e),
        }
    }
    (members, errors)
}

fn group(members: Vec<Member>) -> Vec<(IntPolynomial, Vec<Member>)> {
    let mut by_key: BTreeMap<Vec<u8>, (IntPolynomial, Vec<Member>)> = BTreeMap::new();
    for m in members {
        by_key
            .entry(m.poly.canonical_key())
            .or_insert_with(|| (m.poly.clone(), Vec::new()))
            .1
            .push(m);
    }
    let mut classes: Vec<(IntPolynomial, Vec<Member>)> = by_key.into_values().collect();
    for (key, members) in &mut classes {
        // keys are byte-exact, so this only guards the encoding itself
        assert!(members.iter().all(|m| &m.poly == key));
        members.sort_by(|a, b| a.label.cmp(&b.label));
    }
    classes.sort_by(|a, b| b.1.len().cmp(&a.1.len()).then_with(|| a.0.cmp(&b.0)));
    classes
}

/// Groups the records by exact domination polynomial. Classes are ordered by
/// decreasing size, then by key polynomial; members are sorted. Unparseable or
/// oversized records are collected as errors.
pub fn classify_corpus(records: &[Record], opts: &OracleOptions) -> Classification {
    let (members, errors) = evaluate_records(records, opts);
    let classes = group(members)
        .into_iter()
        .map(|(key, members)| EquivalenceClassReport {
            class_size: members.len(),
            members: members.into_iter().map(|m| m.label).collect(),
            key_polynomial: key,
        })
        .collect();
    Classification { classes, errors }
}

pub fn load_corpus(path: &Path) -> std::io::Result<Vec<Record>> {
    let file = std::fs::File::open(path)?;
    graph6::read_records(std::io::BufReader::new(file))
}

fn sorted_degrees(g: &Graph) -> Vec<usize> {
    let mut d = g.degrees();
    d.sort_unstable();
    d
}

/// Members of `records` of the target's order sharing its polynomial.
fn class_members(
    target: &Graph,
    records: &[Record],
    opts: &OracleOptions,
) -> Result<(IntPolynomial, Vec<Member>, usize, Vec<RecordError>), oracle::OracleError> {
    let key = oracle::domination_polynomial_with(target, opts)?;
    let same_order: Vec<Record> = records
        .iter()
        .filter(|r| r.graph.as_ref().map_or(true, |g| g.order() == target.order()))
        .cloned()
        .collect();
    let (members, errors) = evaluate_records(&same_order, opts);
    let scanned = members.len();
    let mut class: Vec<Member> = members.into_iter().filter(|m| m.poly == key).collect();
    class.sort_by(|a, b| a.label.cmp(&b.label));
    Ok((key, class, scanned, errors))
}

fn record_errors_as_counterexamples(errors: Vec<RecordError>) -> Vec<Counterexample> {
    errors
        .into_iter()
        .map(|e| Counterexample::new(format!("line {}: {}", e.line, e.record), e.message))
        .collect()
}

/// The class of `target` among the corpus graphs of the same order must be a
/// single graph with the target's degree sequence.
pub fn verify_singleton_class(
    lemma_id: LemmaId,
    target: &Graph,
    label: &str,
    records: &[Record],
    opts: &OracleOptions,
) -> VerificationReport {
    let started = Instant::now();
    let n = target.order() as u64;
    let (key, class, scanned, errors) = match class_members(target, records, opts) {
        Ok(v) => v,
        Err(e) => {
            return VerificationReport::finish(
                lemma_id,
                (n, n),
                vec![Counterexample::new(label, e.to_string())],
                vec![],
                started,
            )
        }
    };
    let mut counterexamples = record_errors_as_counterexamples(errors);
    let members: Vec<&str> = class.iter().map(|m| m.label.as_str()).collect();
    match class.as_slice() {
        [only] if sorted_degrees(&only.graph) == sorted_degrees(target) => {}
        [only] => counterexamples.push(
            Counterexample::new(only.label.clone(), format!("sole member is not {label}"))
                .with_polynomials(key.clone(), only.poly.clone()),
        ),
        [] => counterexamples.push(Counterexample::new(
            label,
            "no corpus graph has this polynomial; corpus incomplete",
        )),
        _ => {
            for m in class.iter() {
                counterexamples.push(
                    Counterexample::new(m.label.clone(), format!("shares D({label})"))
                        .with_polynomials(key.clone(), m.poly.clone()),
                );
            }
        }
    }
    let notes = vec![
        format!("{scanned} graphs of order {n} scanned"),
        format!("class of {label}: {members:?}"),
    ];
    VerificationReport::finish(lemma_id, (n, n), counterexamples, notes, started)
}

pub fn verify_cycle_class(n: usize, records: &[Record], opts: &OracleOptions) -> VerificationReport {
    match build_family(GraphFamily::Cycle(n)) {
        Ok(g) => verify_singleton_class(LemmaId::T5Corpus, &g, &format!("C{n}"), records, opts),
        Err(e) => parameter_failure(LemmaId::T5Corpus, n as u64, e.to_string()),
    }
}

pub fn verify_wheel_uniqueness(
    n: usize,
    records: &[Record],
    opts: &OracleOptions,
) -> VerificationReport {
    match build_family(GraphFamily::Wheel(n)) {
        Ok(g) => verify_singleton_class(LemmaId::CorWheel, &g, &format!("W{n}"), records, opts),
        Err(e) => parameter_failure(LemmaId::CorWheel, n as u64, e.to_string()),
    }
}

fn parameter_failure(lemma_id: LemmaId, n: u64, message: String) -> VerificationReport {
    VerificationReport::finish(
        lemma_id,
        (n, n),
        vec![Counterexample::new(format!("n = {n}"), message)],
        vec![],
        Instant::now(),
    )
}

/// Two readings of "two new vertices joined to two adjacent vertices of
/// `C_{n-2}`", with cycle vertices `0` and `1` as the adjacent pair and the
/// new vertices numbered `n-2` and `n-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PathCompanion {
    /// Each new vertex is a pendant on its own cycle vertex.
    Pendant,
    /// Both new vertices are joined to both cycle vertices.
    Twin,
}

impl PathCompanion {
    pub const ALL: [PathCompanion; 2] = [PathCompanion::Pendant, PathCompanion::Twin];

    /// Requires `n >= 5` so that the cycle has an edge.
    pub fn build(self, n: usize) -> Option<Graph> {
        if n < 5 {
            return None;
        }
        let m = n - 2;
        let mut edges: Vec<(usize, usize)> = (0..m).map(|i| (i, (i + 1) % m)).collect();
        match self {
            PathCompanion::Pendant => edges.extend([(m, 0), (m + 1, 1)]),
            PathCompanion::Twin => edges.extend([(m, 0), (m, 1), (m + 1, 0), (m + 1, 1)]),
        }
        Some(Graph::from_edges(n, edges).expect("valid construction"))
    }
}

fn is_path(g: &Graph) -> bool {
    let n = g.order();
    g.is_connected() && g.edge_count() + 1 == n && g.degrees().iter().all(|&d| d <= 2)
}

/// The class of `P_n` (`3 | n`) in the corpus must have exactly two members:
/// the path itself and a graph matching one of the [`PathCompanion`]
/// constructions (same polynomial, same degree sequence). Both constructions
/// are tried and the notes record which one reproduces `D(P_n)`.
pub fn verify_path_class(n: usize, records: &[Record], opts: &OracleOptions) -> VerificationReport {
    let started = Instant::now();
    let lemma_id = LemmaId::PPathClass;
    if n % 3 != 0 || n < 6 {
        return parameter_failure(lemma_id, n as u64, format!("n must be a multiple of 3 and at least 6, got {n}"));
    }
    let path = build_family(GraphFamily::Path(n)).expect("n >= 1");
    let (key, class, scanned, errors) = match class_members(&path, records, opts) {
        Ok(v) => v,
        Err(e) => return parameter_failure(lemma_id, n as u64, e.to_string()),
    };
    let mut counterexamples = record_errors_as_counterexamples(errors);
    let mut notes = vec![format!("{scanned} graphs of order {n} scanned")];

    let mut matching_variants = Vec::new();
    for variant in PathCompanion::ALL {
        let g = variant.build(n).expect("n >= 6");
        match oracle::domination_polynomial_with(&g, opts) {
            Ok(p) if p == key => {
                notes.push(format!("{variant:?} construction reproduces D(P{n})"));
                matching_variants.push((variant, g));
            }
            Ok(p) => notes.push(format!("{variant:?} construction differs: {p}")),
            Err(e) => counterexamples.push(Counterexample::new(format!("{variant:?}"), e.to_string())),
        }
    }

    let labels: Vec<&str> = class.iter().map(|m| m.label.as_str()).collect();
    notes.push(format!("class of P{n}: {labels:?}"));
    if class.len() != 2 {
        counterexamples.push(Counterexample::new(
            format!("P{n}"),
            format!("class has {} members: {labels:?}", class.len()),
        ));
    } else {
        let others: Vec<&Member> = class.iter().filter(|m| !is_path(&m.graph)).collect();
        match others.as_slice() {
            [other] => {
                let resolved: Vec<PathCompanion> = matching_variants
                    .iter()
                    .filter(|(_, g)| sorted_degrees(g) == sorted_degrees(&other.graph))
                    .map(|(v, _)| *v)
                    .collect();
                if resolved.is_empty() {
                    counterexamples.push(Counterexample::new(
                        other.label.clone(),
                        "second member matches no construction",
                    ));
                } else {
                    notes.push(format!("second member {} resolved by {resolved:?}", other.label));
                }
            }
            _ => counterexamples.push(Counterexample::new(
                format!("P{n}"),
                format!("expected exactly one non-path member, class is {labels:?}"),
            )),
        }
    }
    VerificationReport::finish(lemma_id, (n as u64, n as u64), counterexamples, notes, started)
}

// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    /// Per-check override of the upper bound.
    pub max_n: Option<u64>,
    pub min_part: MinPart,
    pub oracle: OracleOptions,
    /// Corpora directory holding `graphs<n>.g6` files; corpus checks are
    /// skipped without one.
    pub corpus_dir: Option<std::path::PathBuf>,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            max_n: None,
            min_part: MinPart::Three,
            oracle: OracleOptions::default(),
            corpus_dir: None,
            seed: 0x5eed,
        }
    }
}

pub const UNION_PAIRS: usize = 200;

pub fn corpus_path(dir: &Path, n: u64) -> std::path::PathBuf {
    dir.join(format!("graphs{n}.g6"))
}

/// Runs one check. Corpus checks read `graphs<n>.g6` from the corpus
/// directory and fail with an input error when it is missing.
pub fn run_check(id: LemmaId, cfg: &SuiteConfig) -> std::io::Result<VerificationReport> {
    let n_max = cfg.max_n.unwrap_or_else(|| id.default_max_n());
    let opts = &cfg.oracle;
    let report = match id {
        LemmaId::L2Union => verify_union_product(UNION_PAIRS, n_max as usize, cfg.seed, opts),
        LemmaId::L3Cycle => verify_cycle_recurrence(n_max, opts),
        LemmaId::L4Gamma => verify_gamma_additivity_and_ceiling(n_max, opts),
        LemmaId::L5Alpha => verify_alpha(n_max),
        LemmaId::L6Ord3 => verify_ord3(n_max),
        LemmaId::R1Remark => verify_remark(n_max),
        LemmaId::Rel2Beta => verify_beta(n_max),
        LemmaId::Rel3Theta => verify_theta(n_max),
        LemmaId::T5Partitions => verify_cycle_uniqueness_range(3, n_max, cfg.min_part),
        LemmaId::T5TenCases => verify_ten_case_table(n_max),
        LemmaId::T5Corpus | LemmaId::CorWheel => {
            let dir = corpus_dir(cfg)?;
            let started = Instant::now();
            let mut counterexamples = Vec::new();
            let mut notes = Vec::new();
            let lo = if id == LemmaId::CorWheel { 4 } else { 3 };
            for n in lo..=n_max {
                let records = load_corpus(&corpus_path(dir, n))?;
                let r = if id == LemmaId::CorWheel {
                    verify_wheel_uniqueness(n as usize, &records, opts)
                } else {
                    verify_cycle_class(n as usize, &records, opts)
                };
                counterexamples.extend(r.counterexamples);
                notes.extend(r.notes.into_iter().map(|s| format!("n = {n}: {s}")));
            }
            VerificationReport::finish(id, (lo, n_max), counterexamples, notes, started)
        }
        LemmaId::PPathClass => {
            let dir = corpus_dir(cfg)?;
            let records = load_corpus(&corpus_path(dir, n_max))?;
            verify_path_class(n_max as usize, &records, opts)
        }
    };
    Ok(report)
}

fn corpus_dir(cfg: &SuiteConfig) -> std::io::Result<&Path> {
    cfg.corpus_dir.as_deref().ok_or_else(|| {
        std::io::Error::new(
            std::io::ErrorKind::NotFound,
            "this check needs --corpus-dir with graphs<n>.g6 files",
        )
    })
}
