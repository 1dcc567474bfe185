//! Exact arithmetic in the Coxeter group of a generalized Cartan matrix.
//!
//! Elements are represented by their action on the root lattice in the basis
//! of simple roots. The generator `s_j` sends `alpha_i` to
//! `alpha_i - a_ij alpha_j`, so column `i` of an element's matrix is the
//! image of `alpha_i`. This representation is faithful, so equality of
//! elements is equality of matrices.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cartan::GeneralizedCartanMatrix;
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::nodes::NodeSet;

/// Default element cap for enumerations whose size is not otherwise bounded.
pub const DEFAULT_BALL_CAP: usize = 1_000_000;

/// Hard cap on descent-stripping steps when validating a raw matrix.
const STRIP_CAP: usize = 1_000_000;

/// An element of a Coxeter group, with its inverse and length cached.
#[derive(Clone)]
pub struct GroupElement {
    action: IntMatrix,
    inverse: IntMatrix,
    length: usize,
}

impl GroupElement {
    /// Images of the simple roots, as columns.
    pub fn action(&self) -> &IntMatrix {
        &self.action
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.action == other.action
    }
}

impl Eq for GroupElement {}

impl Hash for GroupElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.action.hash(state);
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupElement")
            .field("length", &self.length)
            .field("action", &self.action)
            .finish()
    }
}

/// Integer coordinates in the basis of simple roots.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootVector(Vec<BigInt>);

impl RootVector {
    pub fn new(coords: Vec<BigInt>) -> Self {
        RootVector(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        RootVector(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![BigInt::zero(); rank];
        v[i] = BigInt::one();
        RootVector(v)
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn height(&self) -> BigInt {
        self.0.iter().sum()
    }

    /// Nonzero with all coordinates nonnegative.
    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|c| !c.is_negative()) && self.0.iter().any(|c| !c.is_zero())
    }

    pub fn is_negative(&self) -> bool {
        self.0.iter().all(|c| !c.is_positive()) && self.0.iter().any(|c| !c.is_zero())
    }

    pub fn is_sign_coherent(&self) -> bool {
        self.is_positive() || self.is_negative()
    }

    pub fn support(&self) -> NodeSet {
        self.0.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| i).collect()
    }

    pub fn negated(&self) -> Self {
        RootVector(self.0.iter().map(|c| -c).collect())
    }

    /// Coordinates as `i64`, if they fit.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.0.iter().map(ToPrimitive::to_i64).collect()
    }
}

impl fmt::Debug for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// A reflection `s_beta` together with its positive root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reflection {
    pub root: RootVector,
    pub element: GroupElement,
}

/// Result of a length-windowed enumeration.
#[derive(Clone, Debug)]
pub struct Ball {
    /// Elements in canonical order: by length, then reduced word.
    pub elements: Vec<GroupElement>,
    /// True when the enumeration ran out of elements before reaching the
    /// length bound, i.e. the whole (sub)group was enumerated.
    pub saturated: bool,
}

/// Serialized form of an element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementRecord {
    pub word: Vec<String>,
    pub length: usize,
}

/// Upper bound on the length of the longest element of any finite Weyl
/// group of the given rank (`|Phi^+| <= r^2` except for E7 and E8).
pub fn finite_length_bound(rank: usize) -> usize {
    rank * rank + 56
}

/// The Coxeter group of a generalized Cartan matrix.
#[derive(Clone, Debug)]
pub struct CoxeterGroup {
    cartan: GeneralizedCartanMatrix,
}

impl CoxeterGroup {
    pub fn new(cartan: GeneralizedCartanMatrix) -> Self {
        Self { cartan }
    }

    pub fn cartan(&self) -> &GeneralizedCartanMatrix {
        &self.cartan
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn all_nodes(&self) -> NodeSet {
        NodeSet::full(self.rank())
    }

    fn a(&self) -> &[i64] {
        self.cartan.entries()
    }

    pub fn identity(&self) -> GroupElement {
        let id = IntMatrix::identity(self.rank());
        GroupElement { action: id.clone(), inverse: id, length: 0 }
    }

    pub fn generator(&self, j: usize) -> Result<GroupElement> {
        if j >= self.rank() {
            return Err(Error::UnknownNode(format!("index {j}")));
        }
        Ok(self.mul_gen_right(&self.identity(), j))
    }

    pub fn generator_by_name(&self, name: &str) -> Result<GroupElement> {
        self.generator(self.cartan.node_index(name)?)
    }

    /// `w(alpha_j)` is negative.
    pub fn has_right_descent(&self, w: &GroupElement, j: usize) -> bool {
        w.action.column_sign(j) == Ordering::Less
    }

    /// `w^{-1}(alpha_j)` is negative.
    pub fn has_left_descent(&self, w: &GroupElement, j: usize) -> bool {
        w.inverse.column_sign(j) == Ordering::Less
    }

    pub fn right_descents(&self, w: &GroupElement) -> NodeSet {
        (0..self.rank()).filter(|&j| self.has_right_descent(w, j)).collect()
    }

    pub fn left_descents(&self, w: &GroupElement) -> NodeSet {
        (0..self.rank()).filter(|&j| self.has_left_descent(w, j)).collect()
    }

    /// `w s_j`.
    pub fn mul_gen_right(&self, w: &GroupElement, j: usize) -> GroupElement {
        let down = self.has_right_descent(w, j);
        GroupElement {
            action: w.action.reflect_right(j, self.a()),
            inverse: w.inverse.reflect_left(j, self.a()),
            length: if down { w.length - 1 } else { w.length + 1 },
        }
    }

    /// `s_j w`.
    pub fn mul_gen_left(&self, j: usize, w: &GroupElement) -> GroupElement {
        let down = self.has_left_descent(w, j);
        GroupElement {
            action: w.action.reflect_left(j, self.a()),
            inverse: w.inverse.reflect_right(j, self.a()),
            length: if down { w.length - 1 } else { w.length + 1 },
        }
    }

    pub fn multiply(&self, u: &GroupElement, v: &GroupElement) -> GroupElement {
        if v.length <= u.length {
            self.reduced_word(v).into_iter().fold(u.clone(), |acc, j| self.mul_gen_right(&acc, j))
        } else {
            self.reduced_word(u).into_iter().rev().fold(v.clone(), |acc, j| self.mul_gen_left(j, &acc))
        }
    }

    pub fn inverse(&self, u: &GroupElement) -> GroupElement {
        GroupElement { action: u.inverse.clone(), inverse: u.action.clone(), length: u.length }
    }

    /// The product of the generators along `word` (not necessarily reduced).
    pub fn element_from_word(&self, word: &[usize]) -> Result<GroupElement> {
        if let Some(&bad) = word.iter().find(|&&j| j >= self.rank()) {
            return Err(Error::UnknownNode(format!("index {bad}")));
        }
        Ok(word.iter().fold(self.identity(), |acc, &j| self.mul_gen_right(&acc, j)))
    }

    /// Validates a raw matrix as a group element by re-deriving a reduced
    /// word and multiplying it back out.
    pub fn element_from_matrix(&self, m: IntMatrix) -> Result<GroupElement> {
        if m.dim() != self.rank() {
            return Err(Error::CorruptElement(format!("dimension {} for rank {}", m.dim(), self.rank())));
        }
        let mut cur = m.clone();
        let mut strip = Vec::new();
        while let Some(j) = (0..self.rank()).find(|&j| cur.column_sign(j) == Ordering::Less) {
            if strip.len() >= STRIP_CAP {
                return Err(Error::CorruptElement(format!("no termination within {STRIP_CAP} steps")));
            }
            cur = cur.reflect_right(j, self.a());
            strip.push(j);
        }
        if !cur.is_identity() {
            return Err(Error::CorruptElement(format!("{m:?}")));
        }
        strip.reverse();
        let w = self.element_from_word(&strip)?;
        if w.action != m {
            return Err(Error::CorruptElement(format!("{m:?}")));
        }
        Ok(w)
    }

    /// A reduced word for `w`: repeatedly strip the lowest-indexed right
    /// descent, then read the stripped letters backwards.
    pub fn reduced_word(&self, w: &GroupElement) -> Vec<usize> {
        let mut cur = w.action.clone();
        let mut strip = Vec::with_capacity(w.length);
        for _ in 0..w.length {
            let j = (0..self.rank())
                .find(|&j| cur.column_sign(j) == Ordering::Less)
                .expect("element of positive length has a right descent");
            cur = cur.reflect_right(j, self.a());
            strip.push(j);
        }
        strip.reverse();
        strip
    }

    /// Canonical sort key: length, then reduced word.
    pub fn canonical_key(&self, w: &GroupElement) -> (usize, Vec<usize>) {
        (w.length, self.reduced_word(w))
    }

    pub fn sort_canonical(&self, elements: &mut [GroupElement]) {
        elements.sort_by_cached_key(|w| self.canonical_key(w));
    }

    /// Bruhat order `v <= w`, by walking a reduced word of `w` from the right
    /// and stripping `v` along it whenever the letter is a descent of `v`.
    pub fn bruhat_leq(&self, v: &GroupElement, w: &GroupElement) -> bool {
        if v.length > w.length {
            return false;
        }
        if v.length == w.length {
            return v == w;
        }
        if v.length == 0 {
            return true;
        }
        let word = self.reduced_word(w);
        let mut cur = v.action.clone();
        let mut cur_len = v.length;
        for (remaining, &j) in word.iter().enumerate().rev().map(|(i, j)| (i + 1, j)) {
            if cur_len == 0 {
                return true;
            }
            if cur_len > remaining {
                return false;
            }
            if cur.column_sign(j) == Ordering::Less {
                cur = cur.reflect_right(j, self.a());
                cur_len -= 1;
            }
        }
        cur_len == 0
    }

    /// The Bruhat interval `[e, w]`, as the set of all subword products of a
    /// reduced word of `w`, in canonical order.
    pub fn bruhat_lower_interval(&self, w: &GroupElement) -> Vec<GroupElement> {
        let mut set: HashSet<GroupElement> = HashSet::from([self.identity()]);
        for j in self.reduced_word(w) {
            let extended: Vec<GroupElement> = set.iter().map(|u| self.mul_gen_right(u, j)).collect();
            set.extend(extended);
        }
        let mut out: Vec<GroupElement> = set.into_iter().collect();
        self.sort_canonical(&mut out);
        out
    }

    /// The Bruhat interval `[v, w]` in canonical order (empty unless `v <= w`).
    pub fn bruhat_interval(&self, v: &GroupElement, w: &GroupElement) -> Vec<GroupElement> {
        if !self.bruhat_leq(v, w) {
            return Vec::new();
        }
        self.bruhat_lower_interval(w).into_iter().filter(|u| self.bruhat_leq(v, u)).collect()
    }

    /// Splits `w = rep * u` with `u` in `W_J` and `rep` in `W^J`.
    pub fn split_right(&self, w: &GroupElement, j_set: NodeSet) -> (GroupElement, GroupElement) {
        let mut rep = w.clone();
        let mut strip = Vec::new();
        while let Some(j) = j_set.iter().find(|&j| j < self.rank() && self.has_right_descent(&rep, j)) {
            rep = self.mul_gen_right(&rep, j);
            strip.push(j);
        }
        let u = strip.iter().rev().fold(self.identity(), |acc, &j| self.mul_gen_right(&acc, j));
        (rep, u)
    }

    /// The minimal-length representative of `w W_J`.
    pub fn min_coset_rep_right(&self, w: &GroupElement, j_set: NodeSet) -> GroupElement {
        self.split_right(w, j_set).0
    }

    /// The minimal-length representative of `W_J w`.
    pub fn min_coset_rep_left(&self, w: &GroupElement, j_set: NodeSet) -> GroupElement {
        self.inverse(&self.min_coset_rep_right(&self.inverse(w), j_set))
    }

    /// `w = x y` with `x` in `W_J` and `y` in `^J W`.
    pub fn parabolic_factorize_left(&self, w: &GroupElement, j_set: NodeSet) -> (GroupElement, GroupElement) {
        let (rep, u) = self.split_right(&self.inverse(w), j_set);
        (self.inverse(&u), self.inverse(&rep))
    }

    pub fn in_parabolic(&self, w: &GroupElement, j_set: NodeSet) -> bool {
        self.min_coset_rep_right(w, j_set).is_identity()
    }

    /// All elements of length at most `max_len`.
    pub fn enumerate_ball(&self, max_len: usize, cap: usize) -> Result<Ball> {
        self.bfs(self.all_nodes(), max_len, cap, "enumerating the ball")
    }

    /// All elements of `W_J` of length at most `max_len`.
    pub fn enumerate_parabolic(&self, j_set: NodeSet, max_len: usize, cap: usize) -> Result<Ball> {
        self.bfs(j_set.intersection(self.all_nodes()), max_len, cap, "enumerating a parabolic subgroup")
    }

    fn bfs(&self, gens: NodeSet, max_len: usize, cap: usize, context: &str) -> Result<Ball> {
        let mut elements = vec![self.identity()];
        let mut level = vec![self.identity()];
        let mut len = 0;
        while len < max_len {
            let mut next: HashSet<GroupElement> = HashSet::new();
            for w in &level {
                for j in gens.iter() {
                    if !self.has_right_descent(w, j) {
                        next.insert(self.mul_gen_right(w, j));
                    }
                }
            }
            if next.is_empty() {
                return Ok(Ball { elements, saturated: true });
            }
            if elements.len() + next.len() > cap {
                return Err(Error::CapExceeded { cap, context: context.to_string() });
            }
            level = next.into_iter().collect();
            self.sort_canonical(&mut level);
            elements.extend(level.iter().cloned());
            len += 1;
        }
        // Saturated if nothing lies one step further.
        let saturated = level
            .iter()
            .all(|w| gens.iter().all(|j| self.has_right_descent(w, j)));
        Ok(Ball { elements, saturated })
    }

    /// The longest element of the finite parabolic subgroup `W_J`.
    pub fn longest_element(&self, j_set: NodeSet, cap: usize) -> Result<GroupElement> {
        let bound = finite_length_bound(j_set.len());
        let ball = self.enumerate_parabolic(j_set, bound + 1, cap)?;
        if !ball.saturated {
            return Err(Error::ParabolicNotFinite(self.names(j_set).join(",")));
        }
        let w = ball.elements.last().expect("ball contains the identity").clone();
        debug_assert!(j_set.iter().all(|j| self.has_right_descent(&w, j)));
        Ok(w)
    }

    /// The involution `j -> j'` of `K` with `w_K(alpha_j) = -alpha_j'`,
    /// extended by the identity outside `K`.
    pub fn minus_wk_permutation(&self, k: NodeSet, cap: usize) -> Result<Vec<usize>> {
        let wk = self.longest_element(k, cap)?;
        let mut perm: Vec<usize> = (0..self.rank()).collect();
        for j in k.iter() {
            let image = RootVector::new(wk.action.column(j)).negated();
            let partner = (0..self.rank())
                .find(|&p| image == RootVector::simple(self.rank(), p))
                .filter(|&p| k.contains(p))
                .ok_or_else(|| Error::Precondition(format!("-w_K(alpha_{j}) = {image} is not simple")))?;
            perm[j] = partner;
        }
        Ok(perm)
    }

    /// Positive real roots `w(alpha_i)` with `l(w) + 1 <= bound`, sorted by
    /// height and then coordinates.
    pub fn positive_real_roots(&self, bound: usize, cap: usize) -> Result<Vec<RootVector>> {
        if bound == 0 {
            return Ok(Vec::new());
        }
        let ball = self.enumerate_ball(bound - 1, cap)?;
        let mut roots: HashSet<RootVector> = HashSet::new();
        for w in &ball.elements {
            for i in 0..self.rank() {
                let beta = RootVector::new(w.action.column(i));
                if beta.is_positive() {
                    roots.insert(beta);
                }
            }
        }
        let mut roots: Vec<RootVector> = roots.into_iter().collect();
        roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.cmp(b)));
        Ok(roots)
    }

    /// `<alpha_j^vee, beta>`.
    pub fn pairing(&self, j: usize, beta: &RootVector) -> BigInt {
        beta.coords()
            .iter()
            .enumerate()
            .map(|(i, c)| c * self.cartan.entry(i, j))
            .sum()
    }

    /// The reflection `s_beta` for a positive real root `beta`, built as
    /// `w s_i w^{-1}` from a descent of `beta` to a simple root.
    pub fn reflection_from_root(&self, beta: &RootVector) -> Result<Reflection> {
        if beta.rank() != self.rank() || !beta.is_positive() {
            return Err(Error::NotARealRoot(beta.to_string()));
        }
        let mut cur = beta.clone();
        let mut path = Vec::new();
        let simple = loop {
            if let Some(i) = (0..self.rank()).find(|&i| cur == RootVector::simple(self.rank(), i)) {
                break i;
            }
            let (j, c) = (0..self.rank())
                .map(|j| (j, self.pairing(j, &cur)))
                .find(|(_, c)| c.is_positive())
                .ok_or_else(|| Error::NotARealRoot(beta.to_string()))?;
            let mut coords = cur.coords().to_vec();
            coords[j] -= c;
            cur = RootVector::new(coords);
            if !cur.is_positive() {
                return Err(Error::NotARealRoot(beta.to_string()));
            }
            path.push(j);
        };
        let mut word = path.clone();
        word.push(simple);
        word.extend(path.iter().rev());
        let element = self.element_from_word(&word)?;
        Ok(Reflection { root: beta.clone(), element })
    }

    /// The positive root of `t`, if `t` is a reflection.
    pub fn root_of_reflection(&self, t: &GroupElement) -> Option<RootVector> {
        if t.length.is_multiple_of(2) {
            return None;
        }
        let n = self.rank();
        // t - I has rank one with image spanned by the root.
        let col = (0..n).find_map(|c| {
            let mut v = t.action.column(c);
            v[c] -= 1;
            v.iter().any(|x| !x.is_zero()).then_some(v)
        })?;
        let g = col.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        let mut root = RootVector::new(col.into_iter().map(|x| x / &g).collect());
        if root.is_negative() {
            root = root.negated();
        }
        let refl = self.reflection_from_root(&root).ok()?;
        (refl.element == *t).then_some(root)
    }

    pub fn is_reflection(&self, t: &GroupElement) -> bool {
        self.root_of_reflection(t).is_some()
    }

    /// `{beta > 0 : w(beta) < 0}`, optionally restricted to roots supported
    /// on `J`.
    pub fn inversion_set(&self, w: &GroupElement, restrict: Option<NodeSet>) -> Vec<RootVector> {
        let word = self.reduced_word(w);
        let mut suffix = self.identity();
        let mut out = Vec::with_capacity(word.len());
        for &a in word.iter().rev() {
            out.push(RootVector::new(suffix.action.column(a)));
            suffix = self.mul_gen_right(&suffix, a);
        }
        if let Some(j_set) = restrict {
            out.retain(|beta| beta.support().is_subset(j_set));
        }
        out.sort();
        out
    }

    /// Relabels a reduced word of `w` (an element of `source`) along
    /// `node_map` and multiplies it out in `self`.
    pub fn embed(&self, source: &CoxeterGroup, w: &GroupElement, node_map: &[usize]) -> GroupElement {
        let word: Vec<usize> = source.reduced_word(w).into_iter().map(|j| node_map[j]).collect();
        self.element_from_word(&word).expect("node map targets valid nodes")
    }

    pub fn names(&self, set: NodeSet) -> Vec<String> {
        set.iter().map(|i| self.cartan.nodes()[i].clone()).collect()
    }

    /// Space-separated node names; `e` for the empty word.
    pub fn format_word(&self, word: &[usize]) -> String {
        if word.is_empty() {
            return "e".to_string();
        }
        word.iter().map(|&j| self.cartan.nodes()[j].as_str()).collect::<Vec<_>>().join(" ")
    }

    pub fn format_element(&self, w: &GroupElement) -> String {
        self.format_word(&self.reduced_word(w))
    }

    /// Parses space-separated node names. The empty string and `e` denote
    /// the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Vec<usize>> {
        let text = text.trim();
        if text.is_empty() || text == "e" {
            return Ok(Vec::new());
        }
        text.split_whitespace().map(|t| self.cartan.node_index(t)).collect()
    }

    pub fn parse_element(&self, text: &str) -> Result<GroupElement> {
        self.element_from_word(&self.parse_word(text)?)
    }

    pub fn record(&self, w: &GroupElement) -> ElementRecord {
        ElementRecord {
            word: self.reduced_word(w).into_iter().map(|j| self.cartan.nodes()[j].clone()).collect(),
            length: w.length,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::{affine_a1, group, word};

    #[test]
    fn generator_matrices_follow_the_convention() {
        let a2 = group("A2");
        let s1 = a2.generator(0).unwrap();
        assert_eq!(s1.action().to_i64_rows().unwrap(), vec![vec![-1, 1], vec![0, 1]]);
        let aff = affine_a1();
        let s1 = aff.generator(0).unwrap();
        // alpha_2 -> 2 alpha_1 + alpha_2
        assert_eq!(s1.action().column(1), vec![BigInt::from(2), BigInt::from(1)]);
        for g in [&a2, &aff] {
            for j in 0..2 {
                let s = g.generator(j).unwrap();
                assert!(g.multiply(&s, &s).is_identity());
                assert_eq!(s.length(), 1);
            }
        }
        assert!(a2.generator(5).is_err());
    }

    #[test]
    fn braid_relation_in_a2() {
        let g = group("A2");
        let x = word(&g, &[0, 1, 0]);
        let y = word(&g, &[1, 0, 1]);
        assert_eq!(x, y);
        assert_eq!(x.length(), 3);
        assert_eq!(word(&g, &[0, 1]).length(), 2);
    }

    #[test]
    fn affine_lengths_grow_without_relations() {
        let g = affine_a1();
        let w = word(&g, &[0, 1, 0, 1, 0, 1]);
        assert_eq!(w.length(), 6);
        assert_eq!(g.reduced_word(&w), vec![0, 1, 0, 1, 0, 1]);
    }

    #[test]
    fn inverse_is_matrix_inverse() {
        let g = group("B2");
        let w = word(&g, &[0, 1, 0]);
        let wi = g.inverse(&w);
        assert!(w.action().mul(wi.action()).is_identity());
        assert_eq!(g.inverse(&wi), w);
    }

    #[test]
    fn coset_representatives() {
        let g = group("A2");
        let j = NodeSet::from_iter([1]);
        let w = word(&g, &[1, 0, 1]);
        let rep = g.min_coset_rep_right(&w, j);
        assert_eq!(rep, word(&g, &[1, 0]));
        assert_eq!(g.min_coset_rep_right(&w, NodeSet::empty()), w);
        assert!(g.min_coset_rep_right(&w, g.all_nodes()).is_identity());
        let (x, y) = g.parabolic_factorize_left(&word(&g, &[0, 1]), NodeSet::from_iter([0]));
        assert_eq!(x, word(&g, &[0]));
        assert_eq!(y, word(&g, &[1]));
        let (x, y) = g.parabolic_factorize_left(&word(&g, &[1]), NodeSet::from_iter([0]));
        assert!(x.is_identity());
        assert_eq!(y, word(&g, &[1]));
    }

    #[test]
    fn ball_sizes() {
        assert_eq!(group("A2").enumerate_ball(3, 100).unwrap().elements.len(), 6);
        assert!(group("A2").enumerate_ball(3, 100).unwrap().saturated);
        let aff = affine_a1().enumerate_ball(4, 100).unwrap();
        assert_eq!(aff.elements.len(), 9);
        assert!(!aff.saturated);
        assert_eq!(group("A3").enumerate_ball(0, 100).unwrap().elements.len(), 1);
        assert!(matches!(group("A3").enumerate_ball(6, 10), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn roots_and_reflections() {
        let g = group("A2");
        let roots = g.positive_real_roots(3, 100).unwrap();
        assert_eq!(roots, vec![
            RootVector::from_i64(&[0, 1]),
            RootVector::from_i64(&[1, 0]),
            RootVector::from_i64(&[1, 1]),
        ]);
        for i in 0..2 {
            let r = g.reflection_from_root(&RootVector::simple(2, i)).unwrap();
            assert_eq!(r.element, g.generator(i).unwrap());
        }
        let aff = affine_a1().positive_real_roots(3, 100).unwrap();
        assert!(aff.contains(&RootVector::from_i64(&[2, 1])));
        assert!(aff.contains(&RootVector::from_i64(&[1, 2])));
        // The imaginary root delta is not real.
        assert!(affine_a1().reflection_from_root(&RootVector::from_i64(&[1, 1])).is_err());
    }

    #[test]
    fn longest_elements_and_partners() {
        let a3 = group("A3");
        let k = NodeSet::from_iter([1, 2]);
        let wk = a3.longest_element(k, 1000).unwrap();
        assert_eq!(wk, word(&a3, &[1, 2, 1]));
        assert_eq!(a3.minus_wk_permutation(k, 1000).unwrap(), vec![0, 2, 1]);
        let ends = NodeSet::from_iter([0, 2]);
        assert_eq!(a3.minus_wk_permutation(ends, 1000).unwrap(), vec![0, 1, 2]);
        let single = NodeSet::from_iter([1]);
        assert_eq!(a3.longest_element(single, 1000).unwrap(), word(&a3, &[1]));
        assert!(matches!(
            affine_a1().longest_element(NodeSet::from_iter([0, 1]), 100_000),
            Err(Error::ParabolicNotFinite(_))
        ));
    }

    #[test]
    fn element_from_matrix_rejects_non_elements() {
        let g = group("A2");
        let w = word(&g, &[0, 1]);
        assert_eq!(g.element_from_matrix(w.action().clone()).unwrap(), w);
        let bogus = IntMatrix::from_rows(&[vec![2, 0], vec![0, 1]]);
        assert!(g.element_from_matrix(bogus).is_err());
    }

    #[test]
    fn word_parsing() {
        let g = group("A3");
        assert_eq!(g.parse_word("1 2 1").unwrap(), vec![0, 1, 0]);
        assert!(g.parse_word("").unwrap().is_empty());
        assert!(g.parse_word("7").is_err());
        assert_eq!(g.format_word(&[]), "e");
    }
}
