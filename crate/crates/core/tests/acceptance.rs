//! Acceptance suite: one test per criterion, each printing a single
//! `[PASS]` or `[FAIL]` line.
//!
//! Pinned parameters:
//! - oracle balls: radius 6 for finite types, 8 for affine A1, compared on
//!   the sub-window of radius two less;
//! - atlas windows: `l(w) <= 4`, and `l(w) <= 5` for affine A1;
//! - reflection order seed `DEFAULT_SEED`, chain cap `DEFAULT_CHAIN_CAP`;
//! - all comparisons are exact: zero mismatches are tolerated.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use bbatlas::catalog;
use bbatlas::coxeter::DEFAULT_BALL_CAP;
use bbatlas::glue_table;
use bbatlas::poset::{DEFAULT_CHAIN_CAP, DEFAULT_SEED};
use bbatlas::verify::{check_el, check_oracles, check_thin, Report, Settings};
use bbatlas::{AtlasContext, CoxeterGroup, LabelSide, NodeSet};

struct Config {
    group: &'static str,
    k: NodeSet,
    max_len: usize,
}

impl Config {
    fn name(&self) -> String {
        let g = group(self.group);
        format!("{} K={{{}}}", self.group, g.names(self.k).join(","))
    }

    fn settings(&self) -> Settings {
        Settings {
            max_length: self.max_len,
            seed: DEFAULT_SEED,
            ball_cap: DEFAULT_BALL_CAP,
            chain_cap: DEFAULT_CHAIN_CAP,
            label_side: LabelSide::Left,
        }
    }

    fn tilde(&self) -> AtlasContext {
        AtlasContext::tilde(group(self.group), self.k, DEFAULT_BALL_CAP).unwrap()
    }
}

fn group(name: &str) -> CoxeterGroup {
    CoxeterGroup::new(catalog::named(name).unwrap())
}

/// A2, A3 and B2 with every K at L = 4; affine A1 with every K at L = 5.
fn atlas_configs() -> Vec<Config> {
    let mut out = Vec::new();
    for (name, len) in [("A2", 4), ("A3", 4), ("B2", 4), ("affine-A1", 5)] {
        let rank = group(name).rank();
        for k in NodeSet::all_subsets(rank) {
            out.push(Config { group: name, k, max_len: len });
        }
    }
    out
}

fn verdict(criterion: u32, passed: bool, detail: &str) {
    let status = if passed { "PASS" } else { "FAIL" };
    println!("[{status}] criterion {criterion}: {detail}");
}

fn failures(reports: &[Report]) -> Vec<String> {
    reports.iter().filter(|r| !r.passed).map(|r| format!("{}\n{}", r.summary(), first_violation(r))).collect()
}

fn first_violation(r: &Report) -> String {
    r.violations.first().map(|v| format!("  {} {:?}: {}", v.kind, v.elements, v.detail)).unwrap_or_default()
}

#[test]
fn criterion_01_glue_table() {
    let start = Instant::now();
    let rows = glue_table::check_rows().unwrap();
    let elapsed = start.elapsed();
    let bad: Vec<_> = rows.iter().filter(|r| !r.passed).collect();
    let passed = bad.is_empty() && rows.len() == 14 && elapsed < Duration::from_secs(1);
    verdict(1, passed, &format!("{} diagrams (7 rows, both gluings) in {elapsed:?}", rows.len()));
    for r in &bad {
        println!("  {} {}: {}", r.row, r.gluing, r.detail);
    }
    assert!(passed);
}

fn oracle_reports() -> Vec<Report> {
    [("A2", 6), ("B2", 6), ("A1xA1", 6), ("A3", 6), ("affine-A1", 8)]
        .iter()
        .map(|&(name, len)| {
            let mut r = check_oracles(&group(name), len, DEFAULT_BALL_CAP).unwrap();
            r.config = format!("{name} {}", r.config);
            r
        })
        .collect()
}

fn kind_count(reports: &[Report], kinds: &[&str]) -> usize {
    reports.iter().flat_map(|r| &r.violations).filter(|v| kinds.contains(&v.kind.as_str())).count()
}

#[test]
fn criterion_02_twisted_order_oracles() {
    let reports = oracle_reports();
    let kinds = ["closure oracle", "finite translation"];
    let bad = kind_count(&reports, &kinds);
    verdict(2, bad == 0, &format!("closure and w_J-translation oracles over all J of 5 groups, {bad} mismatches"));
    for r in &reports {
        for v in r.violations.iter().filter(|v| kinds.contains(&v.kind.as_str())).take(3) {
            println!("  {}: {} {:?} {}", r.config, v.kind, v.elements, v.detail);
        }
    }
    assert_eq!(bad, 0);
}

#[test]
fn criterion_03_twisted_length() {
    let reports = oracle_reports();
    let kinds = ["length formulas", "degenerate length", "finite length"];
    let bad = kind_count(&reports, &kinds);
    verdict(3, bad == 0, &format!("factorization, inversion and degenerate twisted lengths, {bad} mismatches"));
    for r in &reports {
        for v in r.violations.iter().filter(|v| kinds.contains(&v.kind.as_str())).take(3) {
            println!("  {}: {} {:?} {}", r.config, v.kind, v.elements, v.detail);
        }
    }
    assert_eq!(bad, 0);
}

#[test]
fn criterion_04_atlas_isomorphism() {
    let configs = atlas_configs();
    let reports: Vec<Report> = configs.iter().map(|c| c.tilde().verify_iso(c.max_len).unwrap()).collect();
    let bad = failures(&reports);
    let checked: usize = reports.iter().map(|r| r.checked).sum();
    verdict(4, bad.is_empty(), &format!("{} configurations, {checked} pairs compared", configs.len()));
    bad.iter().for_each(|b| println!("  {b}"));
    assert!(bad.is_empty());
}

#[test]
fn criterion_05_image_and_convexity() {
    let configs = atlas_configs();
    let mut reports = Vec::new();
    for c in &configs {
        let ctx = c.tilde();
        reports.push(ctx.verify_image(c.max_len).unwrap());
        reports.push(ctx.verify_convexity(c.max_len).unwrap());
    }
    let bad = failures(&reports);
    verdict(5, bad.is_empty(), &format!("image and convexity on {} configurations", configs.len()));
    bad.iter().for_each(|b| println!("  {b}"));
    assert!(bad.is_empty());
}

#[test]
fn criterion_06_thinness() {
    let configs = atlas_configs();
    let reports: Vec<Report> = configs.iter().map(|c| check_thin(&c.tilde(), &c.settings()).unwrap()).collect();
    let bad = failures(&reports);
    let intervals: usize = reports.iter().map(|r| r.checked).sum();
    verdict(6, bad.is_empty(), &format!("{intervals} length-two intervals over {} configurations", configs.len()));
    bad.iter().for_each(|b| println!("  {b}"));
    assert!(bad.is_empty());
}

#[test]
fn criterion_07_el_shellability() {
    let configs = atlas_configs();
    let mut reports = Vec::new();
    for c in &configs {
        let r = check_el(&c.tilde(), &c.settings()).unwrap();
        println!("  {}: {}", c.name(), r.notes.join("; "));
        reports.push(r);
    }
    let bad = failures(&reports);
    let intervals: usize = reports.iter().map(|r| r.checked).sum();
    verdict(
        7,
        bad.is_empty(),
        &format!("{intervals} intervals over {} configurations, labels w (w')^-1 read top-down", configs.len()),
    );
    bad.iter().for_each(|b| println!("  {b}"));
    assert!(bad.is_empty());
}

#[test]
fn criterion_08_cardinalities() {
    let a2 = AtlasContext::tilde(group("A2"), [1].into_iter().collect(), DEFAULT_BALL_CAP).unwrap();
    let size = a2.qk_enumerate(2).unwrap().len();
    let mut ok = size == 7;
    let mut notes = vec![format!("|Q_K| for A2, K={{2}}, L=2 is {size}")];
    for c in atlas_configs() {
        let ctx = c.tilde();
        let atlas = ctx.atlas_poset(c.max_len, DEFAULT_SEED, LabelSide::Left).unwrap();
        // Minimal elements of Q_K are the elements covering the adjoined 0.
        let minimal: BTreeSet<usize> =
            atlas.poset.covers().iter().filter(|&&(a, _)| a == 0).map(|&(_, b)| b).collect();
        let reps = ctx.min_coset_reps(c.max_len).unwrap().len();
        let listed = ctx.minimal_elements(c.max_len).unwrap().len();
        if minimal.len() != reps || listed != reps {
            ok = false;
            notes.push(format!("{}: {} minimal, {} listed, {reps} coset reps", c.name(), minimal.len(), listed));
        }
    }
    verdict(8, ok, &notes.join("; "));
    assert!(ok);
}

#[test]
fn criterion_09_gradedness() {
    let mut bad = Vec::new();
    let mut covers = 0;
    for c in atlas_configs() {
        let ctx = c.tilde();
        let atlas = ctx.atlas_poset(c.max_len, DEFAULT_SEED, LabelSide::Left).unwrap();
        covers += atlas.poset.covers().len();
        for (a, b) in atlas.poset.rank_violations() {
            bad.push(format!("{}: {} < {}", c.name(), atlas.poset.names()[a], atlas.poset.names()[b]));
        }
        // Twisted intervals of the glued group from each minimal image up to
        // every image above it.
        let t = ctx.twisted();
        let images: Vec<_> = atlas.elements.iter().map(|p| ctx.nu(p)).collect();
        for (i, p) in atlas.elements.iter().enumerate() {
            if p.v != p.w {
                continue;
            }
            for top in &images {
                if !t.jleq(&images[i], top) {
                    continue;
                }
                let (members, poset) = t.jcovers(&images[i], top, DEFAULT_BALL_CAP).unwrap();
                covers += poset.covers().len();
                for (a, b) in poset.rank_violations() {
                    let g = ctx.glued();
                    bad.push(format!(
                        "{}: {} < {}",
                        c.name(),
                        g.format_element(&members[a]),
                        g.format_element(&members[b])
                    ));
                }
            }
        }
    }
    verdict(9, bad.is_empty(), &format!("{covers} cover edges, {} with rank difference other than one", bad.len()));
    bad.iter().take(10).for_each(|b| println!("  {b}"));
    assert!(bad.is_empty());
}

#[test]
fn criterion_10_breve_direction() {
    let mut directions = BTreeSet::new();
    let mut lines = Vec::new();
    for c in atlas_configs() {
        let ctx = match AtlasContext::breve(group(c.group), c.k, DEFAULT_BALL_CAP) {
            Ok(ctx) => ctx,
            Err(bbatlas::Error::ParabolicNotFinite(_)) => continue,
            Err(e) => panic!("{e}"),
        };
        let r = ctx.verify_iso(c.max_len).unwrap();
        let d = r.direction.clone().unwrap();
        lines.push(format!("{}: {d}", c.name()));
        directions.insert(d);
    }
    // "both" is compatible with either direction.
    directions.remove("both");
    let passed = directions.len() == 1 && !directions.contains("neither");
    verdict(10, passed, &format!("breve embedding direction {directions:?} over {} configurations", lines.len()));
    lines.iter().for_each(|l| println!("  {l}"));
    assert!(passed);
}
