//! Generalized Cartan matrices and the two ways of gluing two copies of a
//! diagram along a subset `K` of its nodes.

use std::collections::{HashMap, VecDeque};
use std::fmt::{self, Write as _};

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::nodes::NodeSet;

/// Suffix of node names in the first copy of a glued diagram.
pub const FLAT_SUFFIX: &str = "#flat";
/// Suffix of node names in the second copy of a glued diagram.
pub const SHARP_SUFFIX: &str = "#sharp";

/// A validated generalized Cartan matrix over named nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedCartanMatrix {
    nodes: Vec<String>,
    entries: Vec<i64>,
    symmetrizable: bool,
}

/// Order of the product of two simple reflections, as read off the Cartan
/// matrix. Used for display and diagram comparison only.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bond {
    Finite(u32),
    Infinite,
}

impl Bond {
    pub fn from_product(p: i64) -> Bond {
        match p {
            0 => Bond::Finite(2),
            1 => Bond::Finite(3),
            2 => Bond::Finite(4),
            3 => Bond::Finite(6),
            _ => Bond::Infinite,
        }
    }
}

impl fmt::Display for Bond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bond::Finite(m) => write!(f, "{m}"),
            Bond::Infinite => f.write_str("inf"),
        }
    }
}

impl GeneralizedCartanMatrix {
    /// Validates `rows` as a generalized Cartan matrix on `nodes`.
    ///
    /// Symmetrizability is computed and exposed through
    /// [`is_symmetrizable`](Self::is_symmetrizable); it is not an error.
    pub fn validate(nodes: Vec<String>, rows: &[Vec<i64>]) -> Result<Self> {
        let n = nodes.len();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Shape(format!(
                "{} nodes but matrix rows have lengths {:?}",
                n,
                rows.iter().map(Vec::len).collect::<Vec<_>>()
            )));
        }
        if n > NodeSet::MAX_RANK {
            return Err(Error::Shape(format!("rank {n} exceeds {}", NodeSet::MAX_RANK)));
        }
        let mut seen = HashMap::new();
        for name in &nodes {
            if seen.insert(name.as_str(), ()).is_some() {
                return Err(Error::DuplicateNode(name.clone()));
            }
        }
        for i in 0..n {
            if rows[i][i] != 2 {
                return Err(Error::Diagonal { node: nodes[i].clone(), value: rows[i][i] });
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                let v = rows[i][j];
                if v > 0 {
                    return Err(Error::PositiveOffDiagonal {
                        row: nodes[i].clone(),
                        col: nodes[j].clone(),
                        value: v,
                    });
                }
                if v == 0 && rows[j][i] != 0 {
                    return Err(Error::ZeroAsymmetry {
                        row: nodes[i].clone(),
                        col: nodes[j].clone(),
                        value: rows[j][i],
                    });
                }
            }
        }
        let entries: Vec<i64> = rows.iter().flatten().copied().collect();
        let symmetrizable = symmetrizer(n, &entries).is_some();
        Ok(Self { nodes, entries, symmetrizable })
    }

    pub fn rank(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.rank() + j]
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.rank()).map(<[i64]>::to_vec).collect()
    }

    pub fn is_symmetrizable(&self) -> bool {
        self.symmetrizable
    }

    /// Positive diagonal `d` with `d_i a_ij = d_j a_ji`, as reduced
    /// fractions `(num, den)`, if one exists.
    pub fn symmetrizer(&self) -> Option<Vec<(i128, i128)>> {
        symmetrizer(self.rank(), &self.entries)
    }

    pub fn node_index(&self, name: &str) -> Result<usize> {
        self.nodes
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownNode(name.to_string()))
    }

    /// Parses a list of node names into a [`NodeSet`].
    pub fn node_set<S: AsRef<str>>(&self, names: &[S]) -> Result<NodeSet> {
        names.iter().map(|n| self.node_index(n.as_ref())).collect()
    }

    pub fn bond(&self, i: usize, j: usize) -> Bond {
        Bond::from_product(self.entry(i, j) * self.entry(j, i))
    }

    /// Edges `(i, j, bond)` with `i < j` and `m_ij > 2`.
    pub fn edges(&self) -> Vec<(usize, usize, Bond)> {
        let n = self.rank();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.entry(i, j) != 0 {
                    out.push((i, j, self.bond(i, j)));
                }
            }
        }
        out
    }

    /// The principal submatrix on `subset`, keeping node names.
    pub fn restrict(&self, subset: NodeSet) -> GeneralizedCartanMatrix {
        let idx: Vec<usize> = subset.iter().filter(|&i| i < self.rank()).collect();
        let rows: Vec<Vec<i64>> =
            idx.iter().map(|&i| idx.iter().map(|&j| self.entry(i, j)).collect()).collect();
        let nodes = idx.iter().map(|&i| self.nodes[i].clone()).collect();
        GeneralizedCartanMatrix::validate(nodes, &rows).expect("principal submatrix of a GCM")
    }
}

/// Chases ratios `d_j = d_i a_ij / a_ji` along diagram paths.
fn symmetrizer(n: usize, a: &[i64]) -> Option<Vec<(i128, i128)>> {
    let mut d: Vec<Option<(i128, i128)>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some((1, 1));
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let (num, den) = d[i].unwrap();
            for j in 0..n {
                let (aij, aji) = (a[i * n + j], a[j * n + i]);
                if i == j || aij == 0 {
                    continue;
                }
                let (p, q) = (num * aij as i128, den * aji as i128);
                let g = p.gcd(&q);
                let cand = (p / g, q / g);
                let cand = if cand.1 < 0 { (-cand.0, -cand.1) } else { cand };
                match d[j] {
                    None => {
                        d[j] = Some(cand);
                        queue.push_back(j);
                    }
                    Some(existing) if existing != cand => return None,
                    Some(_) => {}
                }
            }
        }
    }
    d.into_iter().collect()
}

/// Which of the two gluings produced a [`GluedDiagram`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gluing {
    /// `k^flat = k^sharp` for `k` in `K`.
    Tilde,
    /// `k^flat = partner(k)^sharp`, where `partner` is induced by `-w_K`.
    Breve,
}

impl fmt::Display for Gluing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Gluing::Tilde => "tilde",
            Gluing::Breve => "breve",
        })
    }
}

/// Role of a node of a glued diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeKind {
    FlatOnly,
    Shared,
    SharpOnly,
}

/// Two copies of a diagram glued along `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluedDiagram {
    pub gluing: Gluing,
    pub matrix: GeneralizedCartanMatrix,
    /// `i -> i^flat`.
    pub flat_map: Vec<usize>,
    /// `i -> i^sharp`.
    pub sharp_map: Vec<usize>,
    /// Projection from the flat copy back to the base nodes.
    pub natural_flat: Vec<Option<usize>>,
    /// Projection from the sharp copy back to the base nodes.
    pub natural_sharp: Vec<Option<usize>>,
    /// The gluing subset, in base indices.
    pub k: NodeSet,
}

impl GluedDiagram {
    /// The nodes `I^flat` of the glued diagram.
    pub fn flat_nodes(&self) -> NodeSet {
        self.flat_map.iter().copied().collect()
    }

    /// The nodes `I^sharp` of the glued diagram.
    pub fn sharp_nodes(&self) -> NodeSet {
        self.sharp_map.iter().copied().collect()
    }

    pub fn kind(&self, node: usize) -> NodeKind {
        match (self.natural_flat[node].is_some(), self.natural_sharp[node].is_some()) {
            (true, true) => NodeKind::Shared,
            (true, false) => NodeKind::FlatOnly,
            (false, true) => NodeKind::SharpOnly,
            (false, false) => unreachable!("every glued node lies in one of the copies"),
        }
    }

    /// The base node a glued node projects to, preferring the flat copy.
    pub fn natural(&self, node: usize) -> usize {
        self.natural_flat[node].or(self.natural_sharp[node]).expect("node in one of the copies")
    }

    /// A plain-text rendering: nodes with their roles, then bonds.
    pub fn render_ascii(&self) -> String {
        let m = &self.matrix;
        let mut out = String::new();
        let _ = writeln!(out, "{} gluing, {} nodes", self.gluing, m.rank());
        for (i, name) in m.nodes().iter().enumerate() {
            let role = match self.kind(i) {
                NodeKind::FlatOnly => "flat",
                NodeKind::SharpOnly => "sharp",
                NodeKind::Shared => "shared",
            };
            let _ = writeln!(out, "  [{role:>6}] {name}");
        }
        for (i, j, bond) in m.edges() {
            let link = match bond {
                Bond::Finite(3) => "---".to_string(),
                b => format!("-{b}-"),
            };
            let _ = writeln!(out, "  {} {link} {}", m.nodes()[i], m.nodes()[j]);
        }
        out
    }
}

/// Glues two copies of `a` along `k` with `k^flat = k^sharp`.
pub fn glue_tilde(a: &GeneralizedCartanMatrix, k: NodeSet) -> Result<GluedDiagram> {
    check_subset(a, k)?;
    let identity: Vec<usize> = (0..a.rank()).collect();
    glue(a, k, &identity, Gluing::Tilde)
}

/// Glues two copies of `a` along `k` with `k^flat = partner(k)^sharp`.
///
/// `partner` is indexed by base node; entries outside `k` are ignored. It
/// must restrict to an involution of `k` that preserves the Cartan entries.
pub fn glue_breve(
    a: &GeneralizedCartanMatrix,
    k: NodeSet,
    partner: &[usize],
) -> Result<GluedDiagram> {
    check_subset(a, k)?;
    if partner.len() != a.rank() {
        return Err(Error::NotInvolution(format!(
            "partner map has {} entries for {} nodes",
            partner.len(),
            a.rank()
        )));
    }
    let name = |i: usize| a.nodes()[i].clone();
    for j in k.iter() {
        let p = partner[j];
        if !k.contains(p) || partner[p] != j {
            return Err(Error::NotInvolution(format!("{} -> {}", name(j), name(p))));
        }
    }
    for j1 in k.iter() {
        for j2 in k.iter() {
            let (p1, p2) = (partner[j1], partner[j2]);
            if a.entry(j1, j2) != a.entry(p1, p2) {
                return Err(Error::InconsistentGluing(name(j1), name(j2), name(p1), name(p2)));
            }
        }
    }
    glue(a, k, partner, Gluing::Breve)
}

fn check_subset(a: &GeneralizedCartanMatrix, k: NodeSet) -> Result<()> {
    if !k.is_subset(NodeSet::full(a.rank())) {
        let bad = k.iter().find(|&i| i >= a.rank()).unwrap();
        return Err(Error::UnknownNode(format!("index {bad}")));
    }
    Ok(())
}

fn glue(
    a: &GeneralizedCartanMatrix,
    k: NodeSet,
    partner: &[usize],
    gluing: Gluing,
) -> Result<GluedDiagram> {
    let n = a.rank();
    // Flat copy first, in base order, then the sharp-only nodes.
    let mut names: Vec<String> = a.nodes().iter().map(|s| format!("{s}{FLAT_SUFFIX}")).collect();
    let flat_map: Vec<usize> = (0..n).collect();
    let mut sharp_map = vec![usize::MAX; n];
    for i in 0..n {
        if k.contains(i) {
            sharp_map[i] = flat_map[partner[i]];
        } else {
            sharp_map[i] = names.len();
            names.push(format!("{}{SHARP_SUFFIX}", a.nodes()[i]));
        }
    }
    let total = names.len();
    let mut natural_flat = vec![None; total];
    let mut natural_sharp = vec![None; total];
    for i in 0..n {
        natural_flat[flat_map[i]] = Some(i);
        natural_sharp[sharp_map[i]] = Some(i);
    }
    let mut rows = vec![vec![0i64; total]; total];
    for (p, row) in rows.iter_mut().enumerate() {
        for (q, cell) in row.iter_mut().enumerate() {
            *cell = match (natural_flat[p], natural_flat[q], natural_sharp[p], natural_sharp[q]) {
                (Some(i), Some(j), _, _) => a.entry(i, j),
                (_, _, Some(i), Some(j)) => a.entry(i, j),
                _ => 0,
            };
        }
    }
    let matrix = GeneralizedCartanMatrix::validate(names, &rows)?;
    Ok(GluedDiagram { gluing, matrix, flat_map, sharp_map, natural_flat, natural_sharp, k })
}
