//! Underlying trees of spine vertices: which vertices carry a nontrivial
//! group, and an optional base vertex.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StarClass {
    ZeroStar,
    FStar,
    Other,
}

/// A finite tree whose vertices are either labeled (group of order 2) or trivial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GraphShape {
    adj: Vec<Vec<usize>>,
    labeled: Vec<bool>,
    base: Option<usize>,
}

impl GraphShape {
    /// Builds and validates a shape from an edge list.
    pub fn new(
        n_vertices: usize,
        edges: &[(usize, usize)],
        labeled: Vec<bool>,
        base: Option<usize>,
    ) -> Result<Self> {
        if labeled.len() != n_vertices {
            return Err(Error::Unsupported("label mask length".into()));
        }
        let mut adj = vec![Vec::new(); n_vertices];
        for &(a, b) in edges {
            if a >= n_vertices || b >= n_vertices || a == b {
                return Err(Error::Unsupported(format!("bad edge ({a}, {b})")));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        for l in &mut adj {
            l.sort_unstable();
        }
        let s = GraphShape {
            adj,
            labeled,
            base,
        };
        s.validate()?;
        Ok(s)
    }

    pub(crate) fn from_adjacency(adj: Vec<Vec<usize>>, labeled: Vec<bool>, base: Option<usize>) -> Self {
        GraphShape {
            adj,
            labeled,
            base,
        }
    }

    /// Checks the tree and labeling conditions.
    pub fn validate(&self) -> Result<()> {
        let v = self.adj.len();
        let bad = |m: &str| Err(Error::Unsupported(format!("invalid shape: {m}")));
        if v == 0 {
            return bad("empty");
        }
        let e: usize = self.adj.iter().map(Vec::len).sum::<usize>() / 2;
        if e + 1 != v {
            return bad("edge count is not |V| - 1");
        }
        let mut seen = vec![false; v];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(x) = queue.pop_front() {
            for &y in &self.adj[x] {
                if !std::mem::replace(&mut seen[y], true) {
                    queue.push_back(y);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return bad("not connected");
        }
        for x in 0..v {
            let d = self.adj[x].len();
            if d <= 1 && !self.labeled[x] && v > 1 {
                return bad("a leaf carries the trivial group");
            }
            if !self.labeled[x] && d < 3 {
                return bad("a trivial vertex has degree below 3");
            }
        }
        if let Some(b) = self.base {
            if b >= v {
                return bad("base out of range");
            }
        }
        Ok(())
    }

    pub fn n_vertices(&self) -> usize {
        self.adj.len()
    }

    /// Number of labeled vertices, the rank `n`.
    pub fn rank(&self) -> usize {
        self.labeled.iter().filter(|&&l| l).count()
    }

    pub fn is_labeled(&self, v: usize) -> bool {
        self.labeled[v]
    }

    pub fn labeled_mask(&self) -> &[bool] {
        &self.labeled
    }

    pub fn base(&self) -> Option<usize> {
        self.base
    }

    pub fn is_pointed(&self) -> bool {
        self.base.is_some()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.adj[v].len() <= 1
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.n_vertices()).filter(|&v| self.is_leaf(v)).collect()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.adj.len() && self.adj[a].binary_search(&b).is_ok()
    }

    /// Edges as `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, l) in self.adj.iter().enumerate() {
            for &b in l {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn with_base(&self, base: Option<usize>) -> Self {
        GraphShape {
            adj: self.adj.clone(),
            labeled: self.labeled.clone(),
            base,
        }
    }

    /// The one or two vertices minimising eccentricity.
    pub fn centers(&self) -> Vec<usize> {
        let v = self.n_vertices();
        if v <= 2 {
            return (0..v).collect();
        }
        let mut deg: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        let mut layer: Vec<usize> = (0..v).filter(|&x| deg[x] <= 1).collect();
        let mut remaining = v;
        while remaining > 2 {
            remaining -= layer.len();
            let mut next = Vec::new();
            for &x in &layer {
                for &y in &self.adj[x] {
                    if deg[y] > 1 {
                        deg[y] -= 1;
                        if deg[y] == 1 {
                            next.push(y);
                        }
                    }
                }
                deg[x] = 0;
            }
            layer = next;
        }
        let mut c = layer;
        c.sort_unstable();
        c
    }

    /// Colored AHU string of the tree rooted at `root`, skipping `avoid`.
    fn rooted_code(&self, root: usize, avoid: Option<usize>) -> String {
        fn rec(s: &GraphShape, v: usize, parent: Option<usize>) -> String {
            let mut kids: Vec<String> = s.adj[v]
                .iter()
                .filter(|&&c| Some(c) != parent)
                .map(|&c| rec(s, c, Some(v)))
                .collect();
            kids.sort();
            format!("({}{})", if s.labeled[v] { 'L' } else { 'T' }, kids.concat())
        }
        rec(self, root, avoid)
    }

    /// A string equal for two shapes iff they are isomorphic (base-preserving
    /// when pointed).
    pub fn canonical_code(&self) -> String {
        if let Some(b) = self.base {
            return format!("P{}", self.rooted_code(b, None));
        }
        self.centers()
            .into_iter()
            .map(|c| self.rooted_code(c, None))
            .min()
            .expect("nonempty tree")
    }

    fn rooted_automorphisms(&self, v: usize, parent: Option<usize>) -> u128 {
        let mut count: u128 = 1;
        let mut groups: BTreeMap<String, u128> = BTreeMap::new();
        for &c in &self.adj[v] {
            if Some(c) == parent {
                continue;
            }
            count *= self.rooted_automorphisms(c, Some(v));
            *groups.entry(self.rooted_code(c, Some(v))).or_insert(0) += 1;
        }
        for k in groups.values() {
            count *= (1..=*k).product::<u128>();
        }
        count
    }

    /// Order of the group of label-preserving (and base-preserving) tree automorphisms.
    pub fn automorphism_count(&self) -> u128 {
        if let Some(b) = self.base {
            return self.rooted_automorphisms(b, None);
        }
        match self.centers().as_slice() {
            [c] => self.rooted_automorphisms(*c, None),
            [a, b] => {
                let ha = self.rooted_automorphisms(*a, Some(*b));
                let hb = self.rooted_automorphisms(*b, Some(*a));
                let swap = self.rooted_code(*a, Some(*b)) == self.rooted_code(*b, Some(*a));
                ha * hb * if swap { 2 } else { 1 }
            }
            _ => unreachable!("a tree has one or two centers"),
        }
    }

    /// Rank of the twist subgroup: sum of `deg - 1` over labeled vertices, with a
    /// labeled base contributing its full degree.
    pub fn twist_kernel_rank(&self) -> usize {
        (0..self.n_vertices())
            .filter(|&v| self.labeled[v])
            .map(|v| {
                if self.base == Some(v) {
                    self.degree(v)
                } else {
                    self.degree(v) - 1
                }
            })
            .sum()
    }

    pub fn classify_star(&self) -> StarClass {
        let n = self.rank();
        let v = self.n_vertices();
        let leaves = self.leaves().len();
        let class = if v == n + 1 && leaves == n {
            StarClass::ZeroStar
        } else if v == n && leaves + 1 == n {
            StarClass::FStar
        } else {
            StarClass::Other
        };
        if class == StarClass::Other {
            return class;
        }
        match self.base {
            Some(b) if self.is_leaf(b) => StarClass::Other,
            _ => class,
        }
    }

    /// Graphviz rendering; `labels[v]` overrides the vertex caption.
    pub fn to_dot(&self, name: &str, labels: Option<&[String]>) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "graph \"{name}\" {{");
        for v in 0..self.n_vertices() {
            let caption = match labels {
                Some(l) => l[v].clone(),
                None if self.labeled[v] => "F".into(),
                None => "0".into(),
            };
            let shape = if self.base == Some(v) {
                "doublecircle"
            } else {
                "circle"
            };
            let style = if self.labeled[v] { "" } else { ", style=dashed" };
            let _ = writeln!(s, "  v{v} [label=\"{caption}\", shape={shape}{style}];");
        }
        for (a, b) in self.edges() {
            let _ = writeln!(s, "  v{a} -- v{b};");
        }
        s.push_str("}\n");
        s
    }
}

/// All uncolored trees on `v` vertices, one per isomorphism class.
fn trees(v: usize) -> Vec<Vec<Vec<usize>>> {
    let mut level: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new()]];
    for size in 2..=v {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for t in &level {
            for x in 0..t.len() {
                let mut t2 = t.clone();
                t2.push(vec![x]);
                t2[x].push(size - 1);
                let s = GraphShape::from_adjacency(t2.clone(), vec![true; size], None);
                if seen.insert(s.canonical_code()) {
                    next.push(t2);
                }
            }
        }
        level = next;
    }
    level
}

fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut with: Vec<Vec<usize>> = subsets(&items[1..], k - 1)
        .into_iter()
        .map(|mut s| {
            s.insert(0, items[0]);
            s
        })
        .collect();
    with.extend(subsets(&items[1..], k));
    with
}

/// Every shape of rank `n` up to isomorphism; when `pointed`, every choice
/// of base vertex up to base-preserving isomorphism.
///
/// Sorted by vertex count, then canonical code.
pub fn enumerate_shapes(n: usize, pointed: bool) -> Result<Vec<GraphShape>> {
    if !(2..=6).contains(&n) {
        return Err(Error::Unsupported(format!("shape enumeration at n = {n}")));
    }
    let mut found: BTreeMap<(usize, String), GraphShape> = BTreeMap::new();
    // A valid shape has at most n - 2 trivial vertices.
    for v in n..=2 * n - 2 {
        for mut adj in trees(v) {
            for l in &mut adj {
                l.sort_unstable();
            }
            let forced: Vec<usize> = (0..v).filter(|&x| adj[x].len() <= 2).collect();
            let optional: Vec<usize> = (0..v).filter(|&x| adj[x].len() >= 3).collect();
            if forced.len() > n {
                continue;
            }
            for chosen in subsets(&optional, n - forced.len()) {
                let mut labeled = vec![false; v];
                for &x in forced.iter().chain(&chosen) {
                    labeled[x] = true;
                }
                let s = GraphShape::from_adjacency(adj.clone(), labeled, None);
                debug_assert!(s.validate().is_ok());
                if pointed {
                    for b in 0..v {
                        let p = s.with_base(Some(b));
                        found.entry((v, p.canonical_code())).or_insert(p);
                    }
                } else {
                    found.entry((v, s.canonical_code())).or_insert(s);
                }
            }
        }
    }
    Ok(found.into_values().collect())
}

/// JSON row for an enumerated shape.
#[derive(Clone, Debug, Serialize)]
pub struct ShapeSummary {
    pub shape_id: usize,
    pub vertices: usize,
    pub leaves: usize,
    pub labeled: usize,
    pub rank: usize,
    pub star_class: StarClass,
    pub twist_rank: usize,
    pub automorphisms: u128,
    pub edges: Vec<(usize, usize)>,
    pub labeled_vertices: Vec<usize>,
    pub base: Option<usize>,
}

impl ShapeSummary {
    pub fn new(shape_id: usize, s: &GraphShape) -> Self {
        ShapeSummary {
            shape_id,
            vertices: s.n_vertices(),
            leaves: s.leaves().len(),
            labeled: s.rank(),
            rank: s.rank(),
            star_class: s.classify_star(),
            twist_rank: s.twist_kernel_rank(),
            automorphisms: s.automorphism_count(),
            edges: s.edges(),
            labeled_vertices: (0..s.n_vertices()).filter(|&v| s.is_labeled(v)).collect(),
            base: s.base(),
        }
    }
}
