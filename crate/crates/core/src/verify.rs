//! Check suites with machine-readable reports.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::coxeter::{CoxeterGroup, DEFAULT_BALL_CAP};
use crate::error::{Error, Result};
use crate::glue_table;
use crate::nodes::NodeSet;
use crate::poset::{el_check, lex_least_chain, DEFAULT_CHAIN_CAP, DEFAULT_SEED};
use crate::qk::{AtlasContext, LabelSide};
use crate::twisted::TwistedContext;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: String,
    pub elements: Vec<String>,
    pub detail: String,
}

impl Violation {
    pub fn new(kind: &str, elements: Vec<String>, detail: impl Into<String>) -> Self {
        Self { kind: kind.to_string(), elements, detail: detail.into() }
    }
}

/// Outcome of one check. An empty violation list means the check passed.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub check: String,
    pub config: String,
    pub passed: bool,
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub direction: Option<String>,
    pub violations: Vec<Violation>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(check: &str, config: impl Into<String>) -> Self {
        Self {
            check: check.to_string(),
            config: config.into(),
            passed: false,
            checked: 0,
            direction: None,
            violations: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// Sets `passed` from the violation list.
    pub fn finish(mut self) -> Self {
        self.passed = self.violations.is_empty();
        self
    }

    pub fn summary(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        let mut line = format!(
            "{status} {} [{}]: {} checked, {} violations",
            self.check,
            self.config,
            self.checked,
            self.violations.len()
        );
        if let Some(d) = &self.direction {
            line.push_str(&format!(", direction {d}"));
        }
        line
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Check {
    Iso,
    Image,
    Convex,
    Thin,
    El,
    Oracles,
    Breve,
    GlueTable,
}

impl Check {
    pub const ALL: [Check; 8] =
        [Check::Iso, Check::Image, Check::Convex, Check::Thin, Check::El, Check::Oracles, Check::Breve, Check::GlueTable];

    pub fn name(self) -> &'static str {
        match self {
            Check::Iso => "iso",
            Check::Image => "image",
            Check::Convex => "convex",
            Check::Thin => "thin",
            Check::El => "el",
            Check::Oracles => "oracles",
            Check::Breve => "breve",
            Check::GlueTable => "glue-table",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| Error::Config(format!("unknown check {s:?}")))
    }
}

/// Parses a comma-separated check list.
pub fn parse_checks(csv: &str) -> Result<Vec<Check>> {
    csv.split(',').filter(|s| !s.trim().is_empty()).map(str::parse).collect()
}

#[derive(Clone, Copy, Debug)]
pub struct Settings {
    pub max_length: usize,
    pub seed: u64,
    pub ball_cap: usize,
    pub chain_cap: usize,
    pub label_side: LabelSide,
}

impl Default for Settings {
    fn default() -> Self {
        Self { max_length: 4, seed: DEFAULT_SEED, ball_cap: DEFAULT_BALL_CAP, chain_cap: DEFAULT_CHAIN_CAP, label_side: LabelSide::Left }
    }
}

/// Runs one check on the group `base` with subset `k`.
pub fn run(check: Check, base: &CoxeterGroup, k: NodeSet, s: &Settings) -> Result<Report> {
    let tilde = || AtlasContext::tilde(base.clone(), k, s.ball_cap);
    match check {
        Check::Iso => tilde()?.verify_iso(s.max_length),
        Check::Image => tilde()?.verify_image(s.max_length),
        Check::Convex => tilde()?.verify_convexity(s.max_length),
        Check::Thin => check_thin(&tilde()?, s),
        Check::El => check_el(&tilde()?, s),
        Check::Oracles => check_oracles(base, s.max_length, s.ball_cap),
        Check::Breve => AtlasContext::breve(base.clone(), k, s.ball_cap)?.verify_iso(s.max_length),
        Check::GlueTable => check_glue_table(),
    }
}

fn config_name(ctx: &AtlasContext, s: &Settings) -> String {
    let k = ctx.base().names(ctx.k()).join(",");
    format!("{} K={{{k}}} L={}", ctx.gluing(), s.max_length)
}

/// Thinness and gradedness of `Q_K` with a least element adjoined.
pub fn check_thin(ctx: &AtlasContext, s: &Settings) -> Result<Report> {
    let atlas = ctx.atlas_poset(s.max_length, s.seed, s.label_side)?;
    let p = &atlas.poset;
    let mut report = Report::new("thin", config_name(ctx, s));
    let names = p.names();
    for (a, b) in p.rank_violations() {
        report.violations.push(Violation::new("cover not graded", vec![names[a].clone(), names[b].clone()], ""));
    }
    if let Err((x, y)) = p.is_pure() {
        report.violations.push(Violation::new("not pure", vec![names[x].clone(), names[y].clone()], ""));
    }
    match p.is_thin() {
        Ok(count) => report.checked = count,
        Err((x, y, size)) => report.violations.push(Violation::new(
            "not thin",
            vec![names[x].clone(), names[y].clone()],
            format!("length-two interval with {size} elements"),
        )),
    }
    report.notes.push(format!("{} elements, {} covers", p.len(), p.covers().len()));
    Ok(report.finish())
}

/// EL-shellability of `Q_K` with a least element adjoined, plus a scan of
/// the lexicographically least chains down to the least element. The scan
/// is reported in the notes and does not affect the verdict.
pub fn check_el(ctx: &AtlasContext, s: &Settings) -> Result<Report> {
    let atlas = ctx.atlas_poset(s.max_length, s.seed, s.label_side)?;
    let p = &atlas.poset;
    let el = el_check(p, &atlas.labeling, s.chain_cap)?;
    let mut report = Report::new("el", config_name(ctx, s));
    report.checked = el.intervals;
    for v in &el.violations {
        let chains: Vec<String> = v.chains.iter().map(|c| c.join(" ")).collect();
        report.violations.push(Violation::new(
            "not EL",
            vec![v.lower.clone(), v.upper.clone()],
            format!("{}; chains: {}", v.detail, chains.join(" | ")),
        ));
    }
    let g = ctx.base();
    let index_of = |v: &crate::GroupElement, w: &crate::GroupElement| {
        atlas.elements.iter().position(|q| &q.v == v && &q.w == w).map(|i| i + 1)
    };
    let scan: Vec<Result<Option<String>>> = (0..atlas.elements.len())
        .into_par_iter()
        .map(|i| {
            let q = &atlas.elements[i];
            let (chain, labels) = lex_least_chain(p, &atlas.labeling, 0, i + 1, s.chain_cap)?
                .expect("every element lies above the least element");
            let r = g.min_coset_rep_right(&q.v, ctx.k());
            let expected = index_of(&r, &r);
            let avoids = labels.iter().all(|&l| l <= atlas.bottom_label);
            let ends = chain.len() >= 2 && Some(chain[chain.len() - 2]) == expected;
            Ok((!(avoids && ends)).then(|| p.names()[i + 1].clone()))
        })
        .collect();
    let mut odd = Vec::new();
    for r in scan {
        odd.extend(r?);
    }
    report.notes.push(format!(
        "reflection order: {} labels, seed {}, {} attempt(s)",
        atlas.labeling.names.len(),
        atlas.order.seed,
        atlas.order.attempts
    ));
    report.notes.push(format!(
        "least-chain scan: {} of {} chains avoid flat labels and end at (r, r){}",
        atlas.elements.len() - odd.len(),
        atlas.elements.len(),
        if odd.is_empty() { String::new() } else { format!("; exceptions: {}", odd.join(", ")) }
    ));
    report.notes.push(format!("{} maximal chains examined", el.chains));
    Ok(report.finish())
}

/// Twisted order and length against independent computations, for every
/// subset `J`:
///
/// - the generating-relation closure on the ball of radius `max_len`,
///   compared on the sub-window of radius `max_len - 2`;
/// - for finite `W_J`, `a <=_J b` iff `w_J a <= w_J b` and
///   `jlength(w) = l(w_J w) - l(w_J)`;
/// - twisted length by factorization against the inversion count, and the
///   degenerate cases `J` empty and `J = I` finite.
pub fn check_oracles(g: &CoxeterGroup, max_len: usize, cap: usize) -> Result<Report> {
    let mut report = Report::new("oracles", format!("rank {} L={max_len}", g.rank()));
    let group = Arc::new(g.clone());
    let ball = g.enumerate_ball(max_len, cap)?.elements;
    let sub = max_len.saturating_sub(2);
    for j in NodeSet::all_subsets(g.rank()) {
        let t = TwistedContext::new(Arc::clone(&group), j);
        let jname = format!("J={{{}}}", g.names(j).join(","));
        let jname = jname.as_str();
        let oracle = t.closure_oracle(max_len, cap)?;
        let window: Vec<_> = ball.iter().filter(|w| w.length() <= sub).collect();
        let mismatches: Vec<Violation> = window
            .par_iter()
            .flat_map_iter(|a| {
                let (t, oracle, window) = (&t, &oracle, &window);
                window.iter().filter_map(move |b| {
                    let closure = oracle.leq(a, b).expect("sub-window lies in the ball");
                    let direct = t.jleq(a, b);
                    (closure != direct).then(|| {
                        Violation::new(
                            "closure oracle",
                            vec![jname.to_string(), g.format_element(a), g.format_element(b)],
                            format!("closure {closure}, witness {direct}"),
                        )
                    })
                })
            })
            .collect();
        report.checked += window.len() * window.len();
        report.violations.extend(mismatches);

        match g.longest_element(j, cap) {
            Ok(wj) => {
                let mismatches: Vec<Violation> = ball
                    .par_iter()
                    .flat_map_iter(|a| {
                        let (t, ball, wj) = (&t, &ball, &wj);
                        let wa = g.multiply(wj, a);
                        ball.iter().filter_map(move |b| {
                            let translated = g.bruhat_leq(&wa, &g.multiply(wj, b));
                            let direct = t.jleq(a, b);
                            (translated != direct).then(|| {
                                Violation::new(
                                    "finite translation",
                                    vec![jname.to_string(), g.format_element(a), g.format_element(b)],
                                    format!("translated {translated}, witness {direct}"),
                                )
                            })
                        })
                    })
                    .collect();
                report.checked += ball.len() * ball.len();
                report.violations.extend(mismatches);
                for w in &ball {
                    let by_translation = g.multiply(&wj, w).length() as i64 - wj.length() as i64;
                    if t.jlength(w) != by_translation {
                        report.violations.push(Violation::new(
                            "finite length",
                            vec![jname.to_string(), g.format_element(w)],
                            format!("{} vs {by_translation}", t.jlength(w)),
                        ));
                    }
                }
            }
            Err(Error::ParabolicNotFinite(_)) => {}
            Err(e) => return Err(e),
        }

        for w in &ball {
            report.checked += 1;
            let (a, b) = (t.jlength(w), t.jlength_by_inversions(w));
            if a != b {
                report.violations.push(Violation::new(
                    "length formulas",
                    vec![jname.to_string(), g.format_element(w)],
                    format!("factorization {a}, inversions {b}"),
                ));
            }
            let l = w.length() as i64;
            let degenerate = if j.is_empty() {
                Some(l)
            } else if j == g.all_nodes() && g.longest_element(j, cap).is_ok() {
                Some(-l)
            } else {
                None
            };
            if let Some(expected) = degenerate {
                if a != expected {
                    report.violations.push(Violation::new(
                        "degenerate length",
                        vec![jname.to_string(), g.format_element(w)],
                        format!("{a} vs {expected}"),
                    ));
                }
            }
        }
    }
    Ok(report.finish())
}

/// Both gluings of every reference row.
pub fn check_glue_table() -> Result<Report> {
    let mut report = Report::new("glue-table", "reference rows");
    for r in glue_table::check_rows()? {
        report.checked += 1;
        if !r.passed {
            report.violations.push(Violation::new("diagram mismatch", vec![r.row, r.gluing], r.detail));
        }
    }
    Ok(report.finish())
}
