//! The poset `Q_K`, the glued atlas groups and the embeddings into their
//! twisted Bruhat orders.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use rayon::prelude::*;
use serde_json::json;

use crate::cartan::{glue_breve, glue_tilde, GluedDiagram, Gluing};
use crate::coxeter::{CoxeterGroup, GroupElement, RootVector};
use crate::error::{Error, Result};
use crate::nodes::NodeSet;
use crate::poset::{build_reflection_order, EdgeLabeling, FinitePoset, ReflectionOrder};
use crate::twisted::{search_parabolic, TwistedContext};
use crate::verify::{Report, Violation};

/// Name of the adjoined least element of `Q_K`.
pub const ZERO_HAT: &str = "0";
/// Label of the edges at the adjoined least element.
pub const BOTTOM_LABEL: &str = "bot";

/// Which reflection labels the cover `w' < w` of the glued group.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum LabelSide {
    /// `w (w')^{-1}`.
    #[default]
    Left,
    /// `(w')^{-1} w`.
    Right,
}

impl std::str::FromStr for LabelSide {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(LabelSide::Left),
            "right" => Ok(LabelSide::Right),
            _ => Err(Error::Config(format!("label side must be left or right, not {s:?}"))),
        }
    }
}

/// A pair `(v, w)` with `w` in `W^K` and `v <= w`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QkElement {
    pub v: GroupElement,
    pub w: GroupElement,
}

/// A base group with the subset `K`, the glued group and its twisted order
/// for `I^flat`.
pub struct AtlasContext {
    base: Arc<CoxeterGroup>,
    k: NodeSet,
    diagram: GluedDiagram,
    glued: Arc<CoxeterGroup>,
    twisted: TwistedContext,
    wk: Option<GroupElement>,
    cap: usize,
}

impl AtlasContext {
    /// The breve gluing needs `W_K` finite and fails otherwise.
    pub fn new(base: CoxeterGroup, k: NodeSet, gluing: Gluing, cap: usize) -> Result<Self> {
        let (diagram, wk) = match gluing {
            Gluing::Tilde => (glue_tilde(base.cartan(), k)?, None),
            Gluing::Breve => {
                let wk = base.longest_element(k, cap)?;
                let partner = base.minus_wk_permutation(k, cap)?;
                (glue_breve(base.cartan(), k, &partner)?, Some(wk))
            }
        };
        let glued = Arc::new(CoxeterGroup::new(diagram.matrix.clone()));
        let twisted = TwistedContext::new(Arc::clone(&glued), diagram.flat_nodes());
        Ok(Self { base: Arc::new(base), k, diagram, glued, twisted, wk, cap })
    }

    pub fn tilde(base: CoxeterGroup, k: NodeSet, cap: usize) -> Result<Self> {
        Self::new(base, k, Gluing::Tilde, cap)
    }

    pub fn breve(base: CoxeterGroup, k: NodeSet, cap: usize) -> Result<Self> {
        Self::new(base, k, Gluing::Breve, cap)
    }

    pub fn base(&self) -> &CoxeterGroup {
        &self.base
    }

    pub fn glued(&self) -> &CoxeterGroup {
        &self.glued
    }

    pub fn twisted(&self) -> &TwistedContext {
        &self.twisted
    }

    pub fn diagram(&self) -> &GluedDiagram {
        &self.diagram
    }

    pub fn gluing(&self) -> Gluing {
        self.diagram.gluing
    }

    pub fn k(&self) -> NodeSet {
        self.k
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn flat(&self, w: &GroupElement) -> GroupElement {
        self.glued.embed(&self.base, w, &self.diagram.flat_map)
    }

    pub fn sharp(&self, w: &GroupElement) -> GroupElement {
        self.glued.embed(&self.base, w, &self.diagram.sharp_map)
    }

    pub fn in_min_coset_reps(&self, w: &GroupElement) -> bool {
        self.k.iter().all(|j| !self.base.has_right_descent(w, j))
    }

    /// Elements of `W^K` of length at most `max_len`, canonically ordered.
    pub fn min_coset_reps(&self, max_len: usize) -> Result<Vec<GroupElement>> {
        let ball = self.base.enumerate_ball(max_len, self.cap)?;
        Ok(ball.elements.into_iter().filter(|w| self.in_min_coset_reps(w)).collect())
    }

    /// `{(v, w) : w in W^K, l(w) <= max_len, v <= w}`, sorted by `w` and then
    /// `v`. The window is downward closed, so intervals below its elements
    /// are complete.
    pub fn qk_enumerate(&self, max_len: usize) -> Result<Vec<QkElement>> {
        let g = &*self.base;
        let mut out = Vec::new();
        for w in self.min_coset_reps(max_len)? {
            let mut vs = g.bruhat_lower_interval(&w);
            g.sort_canonical(&mut vs);
            out.extend(vs.into_iter().map(|v| QkElement { v, w: w.clone() }));
        }
        Ok(out)
    }

    /// `(v', w') <= (v, w)` iff some `u` in `W_K` has `v <= v'u <= w'u <= w`.
    pub fn qk_leq(&self, lower: &QkElement, upper: &QkElement) -> bool {
        lower == upper || self.qk_search(lower, upper, false).is_some()
    }

    /// The least witness `u` by length and reduced word.
    pub fn qk_leq_witness(&self, lower: &QkElement, upper: &QkElement) -> Option<GroupElement> {
        self.qk_search(lower, upper, true)
    }

    fn qk_search(&self, lower: &QkElement, upper: &QkElement, canonical: bool) -> Option<GroupElement> {
        let g = &*self.base;
        if lower.w.length() > upper.w.length() {
            return None;
        }
        // w' is in W^K, so l(w'u) = l(w') + l(u).
        search_parabolic(
            g,
            self.k,
            upper.w.length() - lower.w.length(),
            &[&lower.v, &lower.w],
            |p| g.bruhat_leq(&p[1], &upper.w),
            |_, p| g.bruhat_leq(&upper.v, &p[0]) && g.bruhat_leq(&p[0], &p[1]),
            canonical,
        )
    }

    /// The minimal strata `(r, r)`, `r` in `W^K`.
    pub fn minimal_elements(&self, max_len: usize) -> Result<Vec<QkElement>> {
        Ok(self.min_coset_reps(max_len)?.into_iter().map(|r| QkElement { v: r.clone(), w: r }).collect())
    }

    /// The embedding of the current gluing.
    pub fn nu(&self, p: &QkElement) -> GroupElement {
        match self.gluing() {
            Gluing::Tilde => self.tilde_map(p),
            Gluing::Breve => self.breve_map(p),
        }
    }

    /// `(v, w) -> v^flat (w^{-1})^sharp`.
    pub fn nu_tilde(&self, p: &QkElement) -> Result<GroupElement> {
        if self.gluing() != Gluing::Tilde {
            return Err(Error::Precondition("nu_tilde needs the tilde gluing".into()));
        }
        Ok(self.tilde_map(p))
    }

    /// `(v, w) -> (w w_K)^flat (v^{-1})^sharp`.
    pub fn nu_breve(&self, p: &QkElement) -> Result<GroupElement> {
        if self.gluing() != Gluing::Breve {
            return Err(Error::Precondition("nu_breve needs the breve gluing".into()));
        }
        Ok(self.breve_map(p))
    }

    fn tilde_map(&self, p: &QkElement) -> GroupElement {
        self.glued.multiply(&self.flat(&p.v), &self.sharp(&self.base.inverse(&p.w)))
    }

    fn breve_map(&self, p: &QkElement) -> GroupElement {
        let wk = self.wk.as_ref().expect("breve gluing has w_K");
        let top = self.base.multiply(&p.w, wk);
        self.glued.multiply(&self.flat(&top), &self.sharp(&self.base.inverse(&p.v)))
    }

    pub fn format(&self, p: &QkElement) -> String {
        format!("({} | {})", self.base.format_element(&p.v), self.base.format_element(&p.w))
    }

    fn config_name(&self) -> String {
        let k = self.base.names(self.k).join(",");
        format!("{} K={{{k}}}", self.gluing())
    }

    /// Compares `Q_K` with its image in the twisted order of the glued group.
    ///
    /// For the tilde gluing the map must be an injective order embedding.
    /// For the breve gluing the direction is recorded: `reversing`,
    /// `preserving`, `both` or `neither`, and only `neither` fails.
    pub fn verify_iso(&self, max_len: usize) -> Result<Report> {
        let elements = self.qk_enumerate(max_len)?;
        let images: Vec<GroupElement> = elements.iter().map(|p| self.nu(p)).collect();
        let n = elements.len();
        let rows: Vec<Vec<(bool, bool, bool)>> = (0..n)
            .into_par_iter()
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (
                            self.qk_leq(&elements[i], &elements[j]),
                            self.twisted.jleq(&images[i], &images[j]),
                            self.twisted.jleq(&images[j], &images[i]),
                        )
                    })
                    .collect()
            })
            .collect();
        let mut report = Report::new("iso", self.config_name());
        report.checked = n * n;
        match self.gluing() {
            Gluing::Tilde => {
                let mut seen: HashMap<&GroupElement, usize> = HashMap::new();
                for (i, img) in images.iter().enumerate() {
                    if let Some(&j) = seen.get(img) {
                        report.violations.push(Violation::new(
                            "not injective",
                            vec![self.format(&elements[j]), self.format(&elements[i])],
                            self.glued.format_element(img),
                        ));
                    }
                    seen.insert(img, i);
                }
                for (i, row) in rows.iter().enumerate() {
                    for (j, &(q, forward, _)) in row.iter().enumerate() {
                        if q != forward {
                            report.violations.push(Violation::new(
                                "order mismatch",
                                vec![self.format(&elements[i]), self.format(&elements[j])],
                                format!("Q_K says {q}, twisted order says {forward}"),
                            ));
                        }
                    }
                }
            }
            Gluing::Breve => {
                let reversing = rows.iter().flatten().all(|&(q, _, back)| q == back);
                let preserving = rows.iter().flatten().all(|&(q, forward, _)| q == forward);
                let direction = match (reversing, preserving) {
                    (true, true) => "both",
                    (true, false) => "reversing",
                    (false, true) => "preserving",
                    (false, false) => "neither",
                };
                report.direction = Some(direction.to_string());
                if direction == "neither" {
                    for (i, row) in rows.iter().enumerate() {
                        for (j, &(q, _, back)) in row.iter().enumerate() {
                            if q != back {
                                report.violations.push(Violation::new(
                                    "not order-reversing",
                                    vec![self.format(&elements[i]), self.format(&elements[j])],
                                    format!("Q_K says {q}, reversed twisted order says {back}"),
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok(report.finish())
    }

    /// Inside the window `x y^{-1}` (`x` in the flat parabolic subgroup,
    /// `y` a minimal coset representative for `I^flat`, both of length at
    /// most `max_len`), the image of `Q_K` is exactly the set of elements
    /// lying in `W_{I^flat} W_{I^sharp}` and above some `nu(r, r)`.
    pub fn verify_image(&self, max_len: usize) -> Result<Report> {
        self.require_tilde()?;
        let g = &*self.glued;
        let flat = self.diagram.flat_nodes();
        let sharp = self.diagram.sharp_nodes();
        let image: HashSet<GroupElement> =
            self.qk_enumerate(max_len)?.iter().map(|p| self.tilde_map(p)).collect();
        let bottoms: Vec<GroupElement> =
            self.minimal_elements(max_len)?.iter().map(|p| self.tilde_map(p)).collect();
        let xs = g.enumerate_parabolic(flat, max_len, self.cap)?.elements;
        let ys: Vec<GroupElement> = g
            .enumerate_ball(max_len, self.cap)?
            .elements
            .into_iter()
            .filter(|y| flat.iter().all(|j| !g.has_right_descent(y, j)))
            .collect();
        let window: Vec<(GroupElement, bool)> = ys
            .iter()
            .flat_map(|y| {
                let in_product = g.in_parabolic(y, sharp);
                let yinv = g.inverse(y);
                xs.iter().map(move |x| (g.multiply(x, &yinv), in_product)).collect::<Vec<_>>()
            })
            .collect();
        let results: Vec<Option<Violation>> = window
            .par_iter()
            .map(|(w, in_product)| {
                let predicted = *in_product && bottoms.iter().any(|b| self.twisted.jleq(b, w));
                let actual = image.contains(w);
                (predicted != actual).then(|| {
                    Violation::new(
                        "image mismatch",
                        vec![g.format_element(w)],
                        format!("in image: {actual}, characterization: {predicted}"),
                    )
                })
            })
            .collect();
        let mut report = Report::new("image", self.config_name());
        report.checked = window.len();
        report.violations = results.into_iter().flatten().collect();
        let missing = image.iter().filter(|w| !window.iter().any(|(c, _)| c == *w)).count();
        if missing > 0 {
            report.violations.push(Violation::new("window", Vec::new(), format!("{missing} image elements outside the window")));
        }
        Ok(report.finish())
    }

    /// For every comparable pair of image elements, the whole twisted
    /// interval between them lies in the image, and its covers are graded.
    pub fn verify_convexity(&self, max_len: usize) -> Result<Report> {
        self.require_tilde()?;
        let elements = self.qk_enumerate(max_len)?;
        let images: Vec<GroupElement> = elements.iter().map(|p| self.tilde_map(p)).collect();
        let image: HashSet<&GroupElement> = images.iter().collect();
        let n = images.len();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j)
            .collect();
        let results: Vec<Result<Vec<Violation>>> = pairs
            .par_iter()
            .map(|&(i, j)| {
                if !self.twisted.jleq(&images[i], &images[j]) {
                    return Ok(Vec::new());
                }
                let interval = self.twisted.jinterval(&images[i], &images[j], self.cap)?;
                Ok(interval
                    .iter()
                    .filter(|c| !image.contains(c))
                    .map(|c| {
                        Violation::new(
                            "not convex",
                            vec![self.format(&elements[i]), self.format(&elements[j])],
                            format!("{} lies between them", self.glued.format_element(c)),
                        )
                    })
                    .collect())
            })
            .collect();
        let mut report = Report::new("convex", self.config_name());
        for r in results {
            report.violations.extend(r?);
        }
        report.checked = pairs.len();
        // Covers of an interval are covers of any interval containing it, so
        // the intervals from the minimal elements carry every cover.
        let minimal: Vec<usize> = (0..n).filter(|&i| elements[i].v == elements[i].w).collect();
        let graded: Vec<Result<Vec<Violation>>> = minimal
            .par_iter()
            .flat_map(|&m| (0..n).into_par_iter().map(move |j| (m, j)))
            .map(|(m, j)| {
                if !self.twisted.jleq(&images[m], &images[j]) {
                    return Ok(Vec::new());
                }
                let (members, poset) = self.twisted.jcovers(&images[m], &images[j], self.cap)?;
                Ok(poset
                    .rank_violations()
                    .into_iter()
                    .map(|(a, b)| {
                        Violation::new(
                            "cover not graded",
                            vec![self.glued.format_element(&members[a]), self.glued.format_element(&members[b])],
                            format!("twisted lengths {} and {}", self.twisted.jlength(&members[a]), self.twisted.jlength(&members[b])),
                        )
                    })
                    .collect())
            })
            .collect();
        for r in graded {
            report.violations.extend(r?);
        }
        Ok(report.finish())
    }

    fn require_tilde(&self) -> Result<()> {
        if self.gluing() != Gluing::Tilde {
            return Err(Error::Precondition("this check needs the tilde gluing".into()));
        }
        Ok(())
    }

    /// `Q_K` in the window with a least element adjoined, ranked by twisted
    /// length and labelled by reflections.
    pub fn atlas_poset(&self, max_len: usize, seed: u64, side: LabelSide) -> Result<AtlasPoset> {
        self.require_tilde()?;
        let elements = self.qk_enumerate(max_len)?;
        let images: Vec<GroupElement> = elements.iter().map(|p| self.tilde_map(p)).collect();
        let n = elements.len();
        let leq: Vec<Vec<bool>> = (0..n)
            .into_par_iter()
            .map(|i| (0..n).map(|j| self.qk_leq(&elements[i], &elements[j])).collect())
            .collect();
        let names: Vec<String> = elements.iter().map(|p| self.format(p)).collect();
        let rank: Vec<i64> = images.iter().map(|w| self.twisted.jlength(w)).collect();
        let qk = FinitePoset::from_leq(names, leq, Some(rank))?;
        let minimal: Vec<usize> = (0..n).filter(|&i| elements[i].v == elements[i].w).collect();
        let poset = qk.augment_zero_hat(&minimal, ZERO_HAT)?;

        let g = &*self.glued;
        let mut edge_roots: Vec<((usize, usize), RootVector)> = Vec::new();
        for &(a, b) in qk.covers() {
            let t = match side {
                LabelSide::Left => g.multiply(&images[b], &g.inverse(&images[a])),
                LabelSide::Right => g.multiply(&g.inverse(&images[a]), &images[b]),
            };
            let root = g.root_of_reflection(&t).ok_or_else(|| {
                Error::Precondition(format!(
                    "cover {} < {} is not labelled by a reflection",
                    qk.names()[a],
                    qk.names()[b]
                ))
            })?;
            edge_roots.push(((a + 1, b + 1), root));
        }
        let roots: Vec<RootVector> = edge_roots.iter().map(|(_, r)| r.clone()).collect();
        let order = build_reflection_order(&roots, self.diagram.flat_nodes(), seed)?;
        let split = order.final_start();
        let mut names: Vec<String> = order.roots[..split].iter().map(label_name).collect();
        names.push(BOTTOM_LABEL.to_string());
        names.extend(order.roots[split..].iter().map(label_name));
        let id = |r: &RootVector| {
            let pos = order.position(r).expect("label root is ordered");
            if pos < split {
                pos
            } else {
                pos + 1
            }
        };
        let mut labeling = EdgeLabeling::new(names);
        for ((a, b), r) in &edge_roots {
            labeling.set(*a, *b, id(r));
        }
        for &m in &minimal {
            labeling.set(0, m + 1, split);
        }
        Ok(AtlasPoset { elements, poset, labeling, order, bottom_label: split })
    }
}

fn label_name(r: &RootVector) -> String {
    let parts: Vec<String> = r.coords().iter().map(ToString::to_string).collect();
    format!("t[{}]", parts.join(","))
}

/// `Q_K` with a least element, as built by [`AtlasContext::atlas_poset`].
/// Poset index `i + 1` is `elements[i]`; index 0 is the adjoined element.
pub struct AtlasPoset {
    pub elements: Vec<QkElement>,
    pub poset: FinitePoset,
    pub labeling: EdgeLabeling,
    pub order: ReflectionOrder,
    /// Label id of the edges at the least element.
    pub bottom_label: usize,
}

impl AtlasPoset {
    pub fn to_json(&self, ctx: &AtlasContext) -> serde_json::Value {
        let mut out = self.poset.to_json(Some(&self.labeling));
        let minimal: Vec<usize> =
            (0..self.elements.len()).filter(|&i| self.elements[i].v == self.elements[i].w).map(|i| i + 1).collect();
        out["minimal"] = json!(minimal);
        out["zero"] = json!(0);
        out["group"] = json!(ctx.base().cartan().nodes());
        out["K"] = json!(ctx.base().names(ctx.k()));
        out["label_order"] = json!(self.labeling.names);
        out
    }
}
