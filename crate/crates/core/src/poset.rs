//! Finite posets: covers, purity, thinness, reflection orders and
//! EL-labellings.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::coxeter::RootVector;
use crate::error::{Error, Result};
use crate::nodes::NodeSet;

pub const DEFAULT_CHAIN_CAP: usize = 100_000;
pub const DEFAULT_SEED: u64 = 20_240_601;
const MAX_ORDER_ATTEMPTS: u64 = 32;

/// A finite partial order given by its full relation.
#[derive(Clone, Debug)]
pub struct FinitePoset {
    names: Vec<String>,
    leq: Vec<Vec<bool>>,
    rank: Option<Vec<i64>>,
    covers: Vec<(usize, usize)>,
    down: Vec<Vec<usize>>,
}

impl FinitePoset {
    /// Checks that `leq` is a partial order and computes the covers.
    pub fn from_leq(names: Vec<String>, leq: Vec<Vec<bool>>, rank: Option<Vec<i64>>) -> Result<Self> {
        let n = names.len();
        if leq.len() != n || leq.iter().any(|r| r.len() != n) || rank.as_ref().is_some_and(|r| r.len() != n) {
            return Err(Error::Shape(format!("poset relation must be {n} x {n}")));
        }
        for i in 0..n {
            if !leq[i][i] {
                return Err(Error::Precondition(format!("relation is not reflexive at {}", names[i])));
            }
            for j in 0..n {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(Error::Precondition(format!(
                        "relation is not antisymmetric: {} and {}",
                        names[i], names[j]
                    )));
                }
            }
        }
        for m in 0..n {
            for i in 0..n {
                if leq[i][m] {
                    for j in 0..n {
                        if leq[m][j] && !leq[i][j] {
                            return Err(Error::Precondition(format!(
                                "relation is not transitive: {} <= {} <= {}",
                                names[i], names[m], names[j]
                            )));
                        }
                    }
                }
            }
        }
        let covers = transitive_reduction(&leq);
        Ok(Self::assemble(names, leq, rank, covers))
    }

    /// Builds the poset whose order is the transitive closure of `covers`
    /// (pairs `(lower, upper)`).
    pub fn from_covers(names: Vec<String>, covers: &[(usize, usize)], rank: Option<Vec<i64>>) -> Result<Self> {
        let n = names.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in covers {
            if a >= n || b >= n {
                return Err(Error::Shape(format!("cover ({a}, {b}) out of range")));
            }
            leq[a][b] = true;
        }
        for m in 0..n {
            let through = leq[m].clone();
            for row in leq.iter_mut().filter(|row| row[m]) {
                row.iter_mut().zip(&through).for_each(|(x, &y)| *x |= y);
            }
        }
        Self::from_leq(names, leq, rank)
    }

    fn assemble(names: Vec<String>, leq: Vec<Vec<bool>>, rank: Option<Vec<i64>>, covers: Vec<(usize, usize)>) -> Self {
        let mut down = vec![Vec::new(); names.len()];
        for &(a, b) in &covers {
            down[b].push(a);
        }
        Self { names, leq, rank, covers, down }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn rank(&self) -> Option<&[i64]> {
        self.rank.as_deref()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    /// Cover edges `(lower, upper)`, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// Elements covered by `x`.
    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.down[x]
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| (0..self.len()).all(|j| j == i || !self.leq[j][i])).collect()
    }

    pub fn interval(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.len()).filter(|&z| self.leq[x][z] && self.leq[z][y]).collect()
    }

    /// Covers whose ranks differ by anything other than one.
    pub fn rank_violations(&self) -> Vec<(usize, usize)> {
        match &self.rank {
            Some(r) => self.covers.iter().copied().filter(|&(a, b)| r[b] - r[a] != 1).collect(),
            None => Vec::new(),
        }
    }

    /// Shortest and longest maximal chain lengths from each element down to
    /// `x`, for every element above `x`.
    fn chain_lengths_to(&self, x: usize) -> Vec<Option<(usize, usize)>> {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).filter(|&z| self.leq[x][z]).collect();
        // Any linear extension works; count of elements below is one.
        order.sort_by_key(|&z| (0..n).filter(|&u| self.leq[u][z]).count());
        let mut out = vec![None; n];
        out[x] = Some((0, 0));
        for &z in &order {
            if z == x {
                continue;
            }
            let mut acc: Option<(usize, usize)> = None;
            for &c in &self.down[z] {
                if let Some((lo, hi)) = out[c] {
                    acc = Some(match acc {
                        None => (lo + 1, hi + 1),
                        Some((a, b)) => (a.min(lo + 1), b.max(hi + 1)),
                    });
                }
            }
            out[z] = acc;
        }
        out
    }

    /// Every interval has all maximal chains of one length. Returns the first
    /// offending interval otherwise.
    pub fn is_pure(&self) -> std::result::Result<(), (usize, usize)> {
        for x in 0..self.len() {
            let lengths = self.chain_lengths_to(x);
            for (y, l) in lengths.iter().enumerate() {
                if let Some((lo, hi)) = l {
                    if lo != hi {
                        return Err((x, y));
                    }
                }
            }
        }
        Ok(())
    }

    /// Every interval of length two has exactly four elements. The witness is
    /// `(x, y, size)` for the first offending interval.
    pub fn is_thin(&self) -> std::result::Result<usize, (usize, usize, usize)> {
        let mut checked = 0;
        for x in 0..self.len() {
            let lengths = self.chain_lengths_to(x);
            for (y, l) in lengths.iter().enumerate() {
                if let Some((lo, hi)) = *l {
                    if lo == 2 || hi == 2 {
                        checked += 1;
                        let size = self.interval(x, y).len();
                        if lo != hi || size != 4 {
                            return Err((x, y, size));
                        }
                    }
                }
            }
        }
        Ok(checked)
    }

    /// Maximal chains of `[x, y]`, each read from `y` down to `x`.
    pub fn maximal_chains(&self, x: usize, y: usize, cap: usize) -> Result<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        let mut path = vec![y];
        self.chains_rec(x, &mut path, &mut out, cap)?;
        Ok(out)
    }

    fn chains_rec(&self, x: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, cap: usize) -> Result<()> {
        let top = *path.last().expect("nonempty path");
        if top == x {
            if out.len() >= cap {
                return Err(Error::ChainCapExceeded {
                    cap,
                    interval: format!("[{}, {}]", self.names[x], self.names[path[0]]),
                });
            }
            out.push(path.clone());
            return Ok(());
        }
        for &c in &self.down[top] {
            if self.leq[x][c] {
                path.push(c);
                self.chains_rec(x, path, out, cap)?;
                path.pop();
            }
        }
        Ok(())
    }

    /// Adds a new least element below exactly `minimal`, which must be the
    /// set of minimal elements. The new element is index 0 with rank one less
    /// than the least rank; old indices shift by one.
    pub fn augment_zero_hat(&self, minimal: &[usize], name: &str) -> Result<FinitePoset> {
        let mut given = minimal.to_vec();
        given.sort_unstable();
        given.dedup();
        if given != self.minimal_elements() {
            return Err(Error::Precondition("the given set is not the set of minimal elements".into()));
        }
        let n = self.len();
        let mut names = vec![name.to_string()];
        names.extend(self.names.iter().cloned());
        let mut leq = vec![vec![true; n + 1]];
        for row in &self.leq {
            let mut r = vec![false];
            r.extend_from_slice(row);
            leq.push(r);
        }
        let rank = self.rank.as_ref().map(|r| {
            let bottom = r.iter().min().copied().unwrap_or(0) - 1;
            std::iter::once(bottom).chain(r.iter().copied()).collect()
        });
        let mut covers: Vec<(usize, usize)> = given.iter().map(|&m| (0, m + 1)).collect();
        covers.extend(self.covers.iter().map(|&(a, b)| (a + 1, b + 1)));
        covers.sort_unstable();
        Ok(Self::assemble(names, leq, rank, covers))
    }

    /// Deterministic JSON: elements, covers, rank and optional labels.
    pub fn to_json(&self, labeling: Option<&EdgeLabeling>) -> Value {
        let mut obj = json!({
            "elements": self.names,
            "covers": self.covers.iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
            "rank": self.rank,
        });
        if let Some(l) = labeling {
            let labels: BTreeMap<String, String> = self
                .covers
                .iter()
                .filter_map(|&(a, b)| l.label(a, b).map(|id| (format!("{a},{b}"), l.names[id].clone())))
                .collect();
            obj["labels"] = json!(labels);
        }
        obj
    }

    /// Graphviz rendering of the Hasse diagram, one row per rank.
    pub fn to_dot(&self, labeling: Option<&EdgeLabeling>) -> String {
        let mut out = String::from("digraph poset {\n  rankdir=BT;\n  node [shape=box];\n");
        for (i, name) in self.names.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", name.replace('"', "\\\""));
        }
        if let Some(rank) = &self.rank {
            let mut by_rank: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
            for (i, &r) in rank.iter().enumerate() {
                by_rank.entry(r).or_default().push(i);
            }
            for members in by_rank.values() {
                let ids: Vec<String> = members.iter().map(|i| format!("n{i}")).collect();
                let _ = writeln!(out, "  {{ rank=same; {}; }}", ids.join("; "));
            }
        }
        for &(a, b) in &self.covers {
            match labeling.and_then(|l| l.label(a, b).map(|id| &l.names[id])) {
                Some(label) => {
                    let _ = writeln!(out, "  n{a} -> n{b} [label=\"{label}\"];");
                }
                None => {
                    let _ = writeln!(out, "  n{a} -> n{b};");
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Cover pairs `(lower, upper)` of a partial order, sorted.
pub fn transitive_reduction(leq: &[Vec<bool>]) -> Vec<(usize, usize)> {
    let n = leq.len();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b && leq[a][b] && !(0..n).any(|c| c != a && c != b && leq[a][c] && leq[c][b]) {
                out.push((a, b));
            }
        }
    }
    out
}

/// A label for each cover edge, drawn from a totally ordered set. Label ids
/// are positions in that order.
#[derive(Clone, Debug, Default)]
pub struct EdgeLabeling {
    pub names: Vec<String>,
    labels: HashMap<(usize, usize), usize>,
}

impl EdgeLabeling {
    pub fn new(names: Vec<String>) -> Self {
        Self { names, labels: HashMap::new() }
    }

    pub fn set(&mut self, lower: usize, upper: usize, label: usize) {
        assert!(label < self.names.len(), "label id out of range");
        self.labels.insert((lower, upper), label);
    }

    pub fn label(&self, lower: usize, upper: usize) -> Option<usize> {
        self.labels.get(&(lower, upper)).copied()
    }

    /// Label sequence of a chain read from the top down.
    pub fn chain_labels(&self, chain: &[usize]) -> Option<Vec<usize>> {
        chain.windows(2).map(|p| self.label(p[1], p[0])).collect()
    }

    /// The same labels on a poset whose elements were renumbered by `perm`
    /// (old index to new index).
    pub fn permuted(&self, perm: &[usize]) -> Self {
        Self {
            names: self.names.clone(),
            labels: self.labels.iter().map(|(&(a, b), &l)| ((perm[a], perm[b]), l)).collect(),
        }
    }
}

/// An interval violating the EL conditions.
#[derive(Clone, Debug, Serialize)]
pub struct ElViolation {
    pub lower: String,
    pub upper: String,
    pub increasing_chains: usize,
    pub detail: String,
    pub chains: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ElReport {
    pub intervals: usize,
    pub chains: usize,
    pub violations: Vec<ElViolation>,
}

impl ElReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// For every interval: exactly one maximal chain has strictly increasing
/// labels (read from the top down), and it is strictly lexicographically
/// least among all maximal chains.
pub fn el_check(poset: &FinitePoset, labeling: &EdgeLabeling, chain_cap: usize) -> Result<ElReport> {
    let n = poset.len();
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|&(x, y)| x != y && poset.leq(x, y)).collect();
    let results: Vec<Result<(usize, Option<ElViolation>)>> = pairs
        .par_iter()
        .map(|&(x, y)| {
            let chains = poset.maximal_chains(x, y, chain_cap)?;
            let labelled: Vec<Vec<usize>> = chains
                .iter()
                .map(|c| labeling.chain_labels(c).ok_or_else(|| Error::Precondition("unlabelled cover".into())))
                .collect::<Result<_>>()?;
            let increasing: Vec<usize> = (0..labelled.len())
                .filter(|&i| labelled[i].windows(2).all(|p| p[0] < p[1]))
                .collect();
            let detail = match increasing.as_slice() {
                [] => Some("no increasing chain".to_string()),
                [i] => {
                    let least = labelled.iter().enumerate().all(|(k, l)| k == *i || labelled[*i] < *l);
                    (!least).then(|| "the increasing chain is not lexicographically least".to_string())
                }
                _ => Some("more than one increasing chain".to_string()),
            };
            let violation = detail.map(|detail| ElViolation {
                lower: poset.names()[x].clone(),
                upper: poset.names()[y].clone(),
                increasing_chains: increasing.len(),
                detail,
                chains: chains
                    .iter()
                    .zip(&labelled)
                    .map(|(c, l)| {
                        let mut parts = vec![poset.names()[c[0]].clone()];
                        for (k, &id) in l.iter().enumerate() {
                            parts.push(format!("--{}-->", labeling.names[id]));
                            parts.push(poset.names()[c[k + 1]].clone());
                        }
                        parts
                    })
                    .collect(),
            });
            Ok((chains.len(), violation))
        })
        .collect();
    let mut report = ElReport { intervals: pairs.len(), chains: 0, violations: Vec::new() };
    for r in results {
        let (count, violation) = r?;
        report.chains += count;
        report.violations.extend(violation);
    }
    Ok(report)
}

/// The lexicographically least maximal chain of `[x, y]`, read top-down,
/// with its labels.
pub fn lex_least_chain(
    poset: &FinitePoset,
    labeling: &EdgeLabeling,
    x: usize,
    y: usize,
    cap: usize,
) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    let chains = poset.maximal_chains(x, y, cap)?;
    Ok(chains
        .into_iter()
        .filter_map(|c| labeling.chain_labels(&c).map(|l| (c, l)))
        .min_by(|a, b| a.1.cmp(&b.1)))
}

/// A reflection order for the twisted positive system in which the roots
/// supported on `final_section` are negated, with those roots last.
///
/// Roots are stored by their positive representative. In every plane the
/// single root of the final section sits at one end of the angular order;
/// negating it moves it to the other end, so monotonicity is checked on that
/// rearranged sequence.
#[derive(Clone, Debug)]
pub struct ReflectionOrder {
    /// Roots in increasing order.
    pub roots: Vec<RootVector>,
    pub final_section: NodeSet,
    pub seed: u64,
    /// Number of perturbations tried, including the accepted one.
    pub attempts: u64,
}

impl ReflectionOrder {
    pub fn position(&self, beta: &RootVector) -> Option<usize> {
        self.roots.iter().position(|r| r == beta)
    }

    /// Index of the first root in the final section.
    pub fn final_start(&self) -> usize {
        self.roots.iter().position(|r| r.support().is_subset(self.final_section)).unwrap_or(self.roots.len())
    }
}

/// Orders `roots` by `theta1 / height`, where `theta1` puts a large weight
/// on the nodes of `final_section` and a seeded random perturbation on every
/// node, then reverses the order inside each of the two blocks. This is the
/// slope order read backwards with its initial section (the final-section
/// roots) rotated to the end, which is a reflection order for the twisted
/// positive system. The result is validated; ties or violations trigger a
/// new perturbation.
pub fn build_reflection_order(roots: &[RootVector], final_section: NodeSet, seed: u64) -> Result<ReflectionOrder> {
    let mut roots: Vec<RootVector> = roots.to_vec();
    roots.sort();
    roots.dedup();
    if let Some(bad) = roots.iter().find(|r| !r.is_positive()) {
        return Err(Error::NotARealRoot(bad.to_string()));
    }
    let Some(rank) = roots.first().map(RootVector::rank) else {
        return Ok(ReflectionOrder { roots, final_section, seed, attempts: 1 });
    };
    let max_height = roots.iter().map(RootVector::height).max().unwrap_or_default();
    // The final-section weight must beat every perturbation: a mixed root
    // loses at least scale / height against a pure one.
    let scale = BigInt::from(10_000) * &max_height * &max_height + 1;
    let mut last_error = String::new();
    for attempt in 0..MAX_ORDER_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt));
        let eps: Vec<BigInt> = (0..rank).map(|_| BigInt::from(rng.gen_range(1..=1000i64))).collect();
        let theta = |beta: &RootVector| -> BigInt {
            beta.coords()
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let w = if final_section.contains(i) { &scale + &eps[i] } else { eps[i].clone() };
                    c * w
                })
                .sum()
        };
        let keyed: Vec<(BigInt, BigInt, &RootVector)> = roots.iter().map(|r| (theta(r), r.height(), r)).collect();
        let mut idx: Vec<usize> = (0..keyed.len()).collect();
        idx.sort_by(|&a, &b| slope_cmp(&keyed[a].0, &keyed[a].1, &keyed[b].0, &keyed[b].1));
        let tie = idx
            .windows(2)
            .any(|p| slope_cmp(&keyed[p[0]].0, &keyed[p[0]].1, &keyed[p[1]].0, &keyed[p[1]].1) == Ordering::Equal);
        if tie {
            last_error = "slope tie".into();
            continue;
        }
        idx.reverse();
        let inside = |i: &usize| keyed[*i].2.support().is_subset(final_section);
        let (tail, head): (Vec<usize>, Vec<usize>) = idx.into_iter().partition(inside);
        let ordered: Vec<RootVector> = head.iter().chain(&tail).map(|&i| keyed[i].2.clone()).collect();
        match validate_reflection_order(&ordered, final_section) {
            Ok(()) => return Ok(ReflectionOrder { roots: ordered, final_section, seed, attempts: attempt + 1 }),
            Err(e) => last_error = e,
        }
    }
    Err(Error::ReflectionOrder { attempts: MAX_ORDER_ATTEMPTS as usize, detail: last_error })
}

fn slope_cmp(n1: &BigInt, d1: &BigInt, n2: &BigInt, d2: &BigInt) -> Ordering {
    (n1 * d2).cmp(&(n2 * d1))
}

/// Checks the final-section condition and, on every plane spanned by two of
/// the roots, that the order is monotone along the angular order of the
/// twisted positive system (final-section roots negated).
pub fn validate_reflection_order(order: &[RootVector], final_section: NodeSet) -> std::result::Result<(), String> {
    let inside = |r: &RootVector| r.support().is_subset(final_section);
    if let Some(first_in) = order.iter().position(inside) {
        if let Some(late) = order[first_in..].iter().find(|r| !inside(r)) {
            return Err(format!("{late} follows {} from the final section", order[first_in]));
        }
    }
    let m = order.len();
    for i in 0..m {
        for j in i + 1..m {
            let (b, g) = (&order[i], &order[j]);
            let Some((p, q)) = independent_coords(b, g) else {
                continue;
            };
            let members: Vec<usize> = (0..m).filter(|&k| in_plane(b, g, &order[k], p, q)).collect();
            // Each plane once, from its first two members.
            if members[0] != i || members[1] != j || members.len() < 3 {
                continue;
            }
            let c = (0..b.rank())
                .find(|&c| &b.coords()[c] * g.height() != &g.coords()[c] * b.height())
                .expect("independent roots have distinct directions");
            let mut by_angle = members.clone();
            by_angle.sort_by(|&x, &y| {
                let (rx, ry) = (&order[x], &order[y]);
                slope_cmp(&rx.coords()[c], &rx.height(), &ry.coords()[c], &ry.height())
            });
            let listed = |seq: &[usize]| seq.iter().map(|&k| order[k].to_string()).collect::<Vec<_>>().join(" ");
            let flat: Vec<usize> = (0..by_angle.len()).filter(|&k| inside(&order[by_angle[k]])).collect();
            if !flat.is_empty() && flat.len() < by_angle.len() {
                // A plane meets the span of the final section in a line, so
                // it holds one such root, at an end of the angular order.
                let last = by_angle.len() - 1;
                match flat[..] {
                    [0] => by_angle.rotate_left(1),
                    [k] if k == last => by_angle.rotate_right(1),
                    _ => return Err(format!("final-section roots not extreme on the plane of {}", listed(&by_angle))),
                }
            }
            let up = by_angle.windows(2).all(|w| w[0] < w[1]);
            let down = by_angle.windows(2).all(|w| w[0] > w[1]);
            if !up && !down {
                return Err(format!("dihedral condition fails on the plane of {}", listed(&by_angle)));
            }
        }
    }
    Ok(())
}

fn independent_coords(b: &RootVector, g: &RootVector) -> Option<(usize, usize)> {
    let n = b.rank();
    (0..n)
        .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
        .find(|&(p, q)| minor(b, g, p, q) != BigInt::from(0))
}

fn minor(b: &RootVector, g: &RootVector, p: usize, q: usize) -> BigInt {
    &b.coords()[p] * &g.coords()[q] - &b.coords()[q] * &g.coords()[p]
}

fn in_plane(b: &RootVector, g: &RootVector, d: &RootVector, p: usize, q: usize) -> bool {
    // Cramer on coordinates p, q, then check every coordinate.
    let det = minor(b, g, p, q);
    let x = minor(d, g, p, q);
    let y = minor(b, d, p, q);
    (0..b.rank()).all(|c| &d.coords()[c] * &det == &x * &b.coords()[c] + &y * &g.coords()[c])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    fn diamond() -> FinitePoset {
        FinitePoset::from_covers(names(4), &[(0, 1), (0, 2), (1, 3), (2, 3)], Some(vec![0, 1, 1, 2])).unwrap()
    }

    #[test]
    fn boolean_lattice_is_thin() {
        let p = diamond();
        assert!(p.is_pure().is_ok());
        assert_eq!(p.is_thin(), Ok(1));
        assert!(p.rank_violations().is_empty());
    }

    #[test]
    fn chain_is_pure_not_thin() {
        let p = FinitePoset::from_covers(names(3), &[(0, 1), (1, 2)], None).unwrap();
        assert!(p.is_pure().is_ok());
        assert_eq!(p.is_thin(), Err((0, 2, 3)));
    }

    #[test]
    fn impure_poset_detected() {
        let p = FinitePoset::from_covers(names(4), &[(0, 1), (1, 3), (0, 3)], None);
        // (0, 3) is implied by the chain, so it is not a cover.
        let p = p.unwrap();
        assert_eq!(p.covers(), &[(0, 1), (1, 3)]);
        let q = FinitePoset::from_covers(names(4), &[(0, 1), (1, 2), (0, 3), (3, 2)], None).unwrap();
        assert!(q.is_pure().is_ok());
        let r = FinitePoset::from_covers(names(4), &[(0, 1), (1, 2), (0, 2)], None).unwrap();
        assert!(r.is_pure().is_ok());
        let s = FinitePoset::from_covers(names(5), &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)], None).unwrap();
        assert_eq!(s.is_pure(), Err((0, 4)));
    }

    #[test]
    fn rejects_non_orders() {
        let leq = vec![vec![true, true], vec![true, true]];
        assert!(FinitePoset::from_leq(names(2), leq, None).is_err());
        let leq = vec![vec![false]];
        assert!(FinitePoset::from_leq(names(1), leq, None).is_err());
    }

    #[test]
    fn zero_hat_augmentation() {
        let p = FinitePoset::from_covers(names(3), &[(0, 2), (1, 2)], Some(vec![0, 0, 1])).unwrap();
        assert!(p.augment_zero_hat(&[0], "0").is_err());
        let q = p.augment_zero_hat(&[1, 0], "bottom").unwrap();
        assert_eq!(q.names()[0], "bottom");
        assert_eq!(q.rank().unwrap(), &[-1, 0, 0, 1]);
        assert_eq!(q.covers(), &[(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert_eq!(q.is_thin(), Ok(1));
    }

    #[test]
    fn el_on_diamond() {
        let p = diamond();
        let mut l = EdgeLabeling::new(vec!["a".into(), "b".into()]);
        // Top-down chains: 3-1-0 reads (a, b), 3-2-0 reads (b, a).
        l.set(1, 3, 0);
        l.set(0, 1, 1);
        l.set(2, 3, 1);
        l.set(0, 2, 0);
        let report = el_check(&p, &l, 100).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.intervals, 5);
        let (chain, labels) = lex_least_chain(&p, &l, 0, 3, 100).unwrap().unwrap();
        assert_eq!(chain, vec![3, 1, 0]);
        assert_eq!(labels, vec![0, 1]);
        // Both chains increasing.
        l.set(0, 2, 1);
        l.set(2, 3, 0);
        assert!(!el_check(&p, &l, 100).unwrap().passed());
    }

    #[test]
    fn chain_cap_is_enforced() {
        let p = diamond();
        assert!(matches!(p.maximal_chains(0, 3, 1), Err(Error::ChainCapExceeded { .. })));
    }

    #[test]
    fn reflection_order_on_a2() {
        let roots = vec![
            RootVector::from_i64(&[1, 0]),
            RootVector::from_i64(&[0, 1]),
            RootVector::from_i64(&[1, 1]),
        ];
        let order = build_reflection_order(&roots, NodeSet::empty(), 7).unwrap();
        // The mediant lies between the two simple roots.
        assert_eq!(order.roots[1], RootVector::from_i64(&[1, 1]));
        // Negating the final root 10 makes 11 and -10 the simple roots of the
        // twisted system, so 11 comes first.
        let last: NodeSet = [0].into_iter().collect();
        let with_final = build_reflection_order(&roots, last, 7).unwrap();
        let expected: Vec<RootVector> = [[1, 1], [0, 1], [1, 0]].iter().map(|r| RootVector::from_i64(r)).collect();
        assert_eq!(with_final.roots, expected);
        assert_eq!(with_final.final_start(), 2);
        let untwisted: Vec<RootVector> = [[0, 1], [1, 1], [1, 0]].iter().map(|r| RootVector::from_i64(r)).collect();
        assert!(validate_reflection_order(&untwisted, last).is_err());
        let bad = vec![roots[0].clone(), roots[1].clone(), roots[2].clone()];
        assert!(validate_reflection_order(&bad, NodeSet::empty()).is_err());
    }

    #[test]
    fn reflection_order_on_g2() {
        let roots: Vec<RootVector> = [[1, 0], [0, 1], [1, 1], [1, 2], [1, 3], [2, 3]]
            .iter()
            .map(|r| RootVector::from_i64(r))
            .collect();
        for seed in 0..5 {
            let order = build_reflection_order(&roots, NodeSet::empty(), seed).unwrap();
            assert!(validate_reflection_order(&order.roots, NodeSet::empty()).is_ok());
        }
    }

    #[test]
    fn json_and_dot_are_deterministic() {
        let p = diamond();
        let mut l = EdgeLabeling::new(vec!["x".into()]);
        for &(a, b) in p.covers() {
            l.set(a, b, 0);
        }
        let j = p.to_json(Some(&l));
        assert_eq!(j["covers"], json!([[0, 1], [0, 2], [1, 3], [2, 3]]));
        assert_eq!(j["labels"]["1,3"], "x");
        assert_eq!(p.to_dot(Some(&l)), p.to_dot(Some(&l)));
        assert!(p.to_dot(None).contains("rank=same"));
    }
}
