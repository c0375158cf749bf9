//! Marked graphs of groups over a tree and their equivalence classes.
//!
//! A marked graph assigns to each labeled vertex `v` an involution `y_v`; the
//! labels form a free-product basis of `W_n`. Two marked graphs are equivalent
//! when they differ by a tree isomorphism, a simultaneous conjugation of all
//! labels, and twists (conjugating the labels beyond an edge by the label of
//! the edge's origin). For pointed graphs the simultaneous conjugation is
//! dropped and the tree isomorphism must fix the base.

use std::collections::VecDeque;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::automorphism::{CoxAutomorphism, OuterClass};
use crate::error::{Error, Result};
use crate::spine::shape::{GraphShape, StarClass};
use crate::word::Word;

#[derive(Clone, Debug)]
pub struct MarkedGraph {
    shape: GraphShape,
    labels: Vec<Option<Word>>,
    /// `slots[v] = k` records `y_v = marking(x_k)`.
    slots: Vec<Option<usize>>,
    marking: Option<CoxAutomorphism>,
}

impl MarkedGraph {
    /// Labels given directly, with no marking automorphism attached.
    ///
    /// Only a necessary basis condition is checked: labels are involutions
    /// conjugate to pairwise distinct generators.
    pub fn from_labels(shape: GraphShape, labels: Vec<Option<Word>>) -> Result<Self> {
        if labels.len() != shape.n_vertices() {
            return Err(Error::Unsupported("one label slot per vertex".into()));
        }
        let n = shape.rank();
        let mut classes = Vec::new();
        for (v, l) in labels.iter().enumerate() {
            match (shape.is_labeled(v), l) {
                (true, Some(w)) => {
                    if w.rank() != n {
                        return Err(Error::RankMismatch {
                            left: n,
                            right: w.rank(),
                        });
                    }
                    classes.push(w.involution_decompose()?.1);
                }
                (false, None) => {}
                _ => {
                    return Err(Error::Unsupported(format!(
                        "vertex {v}: labels must sit exactly on labeled vertices"
                    )))
                }
            }
        }
        classes.sort_unstable();
        classes.dedup();
        if classes.len() != n {
            return Err(Error::Unsupported(
                "labels are not conjugate to distinct generators".into(),
            ));
        }
        Ok(MarkedGraph {
            slots: vec![None; shape.n_vertices()],
            shape,
            labels,
            marking: None,
        })
    }

    /// Labels `y_v = marking(x_{slots[v]})`.
    pub fn with_marking(
        shape: GraphShape,
        slots: Vec<Option<usize>>,
        marking: CoxAutomorphism,
    ) -> Result<Self> {
        let n = shape.rank();
        if marking.rank() != n || slots.len() != shape.n_vertices() {
            return Err(Error::RankMismatch {
                left: n,
                right: marking.rank(),
            });
        }
        let mut used = vec![false; n + 1];
        let mut labels = Vec::with_capacity(slots.len());
        for (v, s) in slots.iter().enumerate() {
            match (shape.is_labeled(v), s) {
                (true, Some(k)) if *k >= 1 && *k <= n && !used[*k] => {
                    used[*k] = true;
                    labels.push(Some(marking.image(*k)));
                }
                (false, None) => labels.push(None),
                _ => {
                    return Err(Error::Unsupported(format!(
                        "vertex {v}: slots must be a bijection onto labeled vertices"
                    )))
                }
            }
        }
        Ok(MarkedGraph {
            shape,
            labels,
            slots,
            marking: Some(marking),
        })
    }

    pub fn shape(&self) -> &GraphShape {
        &self.shape
    }

    pub fn rank(&self) -> usize {
        self.shape.rank()
    }

    pub fn label(&self, v: usize) -> Option<&Word> {
        self.labels[v].as_ref()
    }

    pub fn labels(&self) -> &[Option<Word>] {
        &self.labels
    }

    pub fn marking(&self) -> Option<&CoxAutomorphism> {
        self.marking.as_ref()
    }

    fn conjugate_all(&mut self, g: &Word) {
        if g.is_identity() {
            return;
        }
        for l in self.labels.iter_mut().flatten() {
            *l = l.conjugate(g).expect("same rank");
        }
        if let Some(m) = &self.marking {
            self.marking = Some(CoxAutomorphism::ad(g).compose(m).expect("same rank"));
        }
    }

    /// Vertices on the `far` side of the edge `near`-`far`.
    fn far_side(&self, near: usize, far: usize) -> Vec<usize> {
        let mut out = vec![far];
        let mut queue = VecDeque::from([(far, near)]);
        while let Some((x, p)) = queue.pop_front() {
            for &y in self.shape.neighbors(x) {
                if y != p {
                    out.push(y);
                    queue.push_back((y, x));
                }
            }
        }
        out
    }

    /// The standard-coordinate automorphism `∏ σ_{slot(u), slot(o)}` over labeled `u` beyond the edge.
    fn twist_in_slots(&self, origin: usize, far: &[usize]) -> Option<CoxAutomorphism> {
        let so = self.slots[origin]?;
        let n = self.rank();
        let mut t = CoxAutomorphism::identity(n);
        for &u in far {
            if let Some(su) = self.slots[u] {
                t = t
                    .compose(&CoxAutomorphism::sigma(su, so, n).expect("distinct slots"))
                    .expect("same rank");
            }
        }
        Some(t)
    }

    /// Conjugates every label beyond the edge `origin`-`child` by `y_origin`.
    fn twist_in_place(&mut self, origin: usize, child: usize) {
        let y = self.labels[origin].clone().expect("origin is labeled");
        let far = self.far_side(origin, child);
        for &u in &far {
            if let Some(l) = &self.labels[u] {
                self.labels[u] = Some(l.conjugate(&y).expect("same rank"));
            }
        }
        if self.marking.is_some() {
            let t = self.twist_in_slots(origin, &far).expect("slots present with a marking");
            let m = self.marking.take().expect("checked");
            self.marking = Some(m.compose(&t).expect("same rank"));
        }
    }

    fn apply(&self, a: &CoxAutomorphism) -> Result<MarkedGraph> {
        if a.rank() != self.rank() {
            return Err(Error::RankMismatch {
                left: a.rank(),
                right: self.rank(),
            });
        }
        let mut out = self.clone();
        for l in out.labels.iter_mut().flatten() {
            *l = a.apply(l)?;
        }
        if let Some(m) = &self.marking {
            out.marking = Some(a.compose(m)?);
        }
        Ok(out)
    }

    /// Children of each vertex when rooted at `root`, plus BFS order.
    fn rooted(&self, root: usize) -> (Vec<usize>, Vec<Vec<usize>>) {
        let v = self.shape.n_vertices();
        let mut children = vec![Vec::new(); v];
        let mut order = vec![root];
        let mut seen = vec![false; v];
        seen[root] = true;
        let mut head = 0;
        while head < order.len() {
            let x = order[head];
            head += 1;
            for &y in self.shape.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    children[x].push(y);
                    order.push(y);
                }
            }
        }
        (order, children)
    }

    /// Labeled vertices reachable from `c` through trivial vertices only.
    fn first_layer(&self, c: usize, children: &[Vec<usize>]) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![c];
        while let Some(x) = stack.pop() {
            if self.shape.is_labeled(x) {
                out.push(x);
            } else {
                stack.extend(&children[x]);
            }
        }
        out
    }

    /// Normal form with respect to twists and (unless pointed) conjugation,
    /// with the tree rooted at `root`.
    fn normalise_at(&self, root: usize, conjugate: bool) -> (String, MarkedGraph, Vec<Vec<usize>>) {
        let mut m = self.clone();
        if conjugate {
            let (w, _) = m.labels[root]
                .as_ref()
                .expect("labeled root")
                .involution_decompose()
                .expect("labels are involutions");
            m.conjugate_all(&w.inverse());
        }
        let (order, children) = m.rooted(root);
        for &v in &order {
            let Some(y) = m.labels[v].clone() else {
                continue;
            };
            for &c in &children[v] {
                let layer = m.first_layer(c, &children);
                let here = layer
                    .iter()
                    .map(|&u| m.labels[u].clone().expect("labeled"))
                    .min()
                    .expect("every branch ends in labeled leaves");
                let there = layer
                    .iter()
                    .map(|&u| m.labels[u].as_ref().expect("labeled").conjugate(&y).expect("rank"))
                    .min()
                    .expect("nonempty");
                if there < here {
                    m.twist_in_place(v, c);
                }
            }
        }
        let code = m.code(root, &children);
        (code, m, children)
    }

    fn code(&self, v: usize, children: &[Vec<usize>]) -> String {
        let mut kids: Vec<String> = children[v].iter().map(|&c| self.code(c, children)).collect();
        kids.sort();
        let tag = match &self.labels[v] {
            Some(w) => format!("[{w}]"),
            None => "*".into(),
        };
        format!("({tag}{})", kids.concat())
    }

    /// Renumbers vertices in preorder with children sorted by code.
    fn renumber(&self, root: usize, children: &[Vec<usize>]) -> MarkedGraph {
        let v = self.shape.n_vertices();
        let mut new_id = vec![usize::MAX; v];
        let mut order = Vec::with_capacity(v);
        fn visit(
            g: &MarkedGraph,
            x: usize,
            children: &[Vec<usize>],
            order: &mut Vec<usize>,
        ) {
            order.push(x);
            let mut kids: Vec<(String, usize)> = children[x]
                .iter()
                .map(|&c| (g.code(c, children), c))
                .collect();
            kids.sort();
            for (_, c) in kids {
                visit(g, c, children, order);
            }
        }
        visit(self, root, children, &mut order);
        for (k, &x) in order.iter().enumerate() {
            new_id[x] = k;
        }
        let mut adj = vec![Vec::new(); v];
        for (x, l) in (0..v).map(|x| (x, self.shape.neighbors(x))) {
            let mut nl: Vec<usize> = l.iter().map(|&y| new_id[y]).collect();
            nl.sort_unstable();
            adj[new_id[x]] = nl;
        }
        let labeled = order.iter().map(|&x| self.shape.is_labeled(x)).collect();
        let base = self.shape.base().map(|b| new_id[b]);
        MarkedGraph {
            shape: GraphShape::from_adjacency(adj, labeled, base),
            labels: order.iter().map(|&x| self.labels[x].clone()).collect(),
            slots: order.iter().map(|&x| self.slots[x]).collect(),
            marking: self.marking.clone(),
        }
    }

    /// The equivalence class of this marked graph.
    pub fn canonicalize(&self) -> SpineVertex {
        let candidates: Vec<(String, MarkedGraph, Vec<Vec<usize>>, usize)> = match self.shape.base() {
            Some(b) => {
                let (c, m, ch) = self.normalise_at(b, false);
                vec![(c, m, ch, b)]
            }
            None => (0..self.shape.n_vertices())
                .filter(|&r| self.shape.is_labeled(r))
                .map(|r| {
                    let (c, m, ch) = self.normalise_at(r, true);
                    (c, m, ch, r)
                })
                .collect(),
        };
        let (code, m, children, root) = candidates
            .into_iter()
            .min_by(|a, b| a.0.cmp(&b.0))
            .expect("at least one labeled vertex");
        let prefix = if self.shape.is_pointed() { "P" } else { "U" };
        SpineVertex {
            key: format!("{prefix}{code}"),
            graph: m.renumber(root, &children),
        }
    }
}

/// A spine vertex: a marked graph in canonical position together with its key.
#[derive(Clone, Debug)]
pub struct SpineVertex {
    key: String,
    graph: MarkedGraph,
}

impl PartialEq for SpineVertex {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for SpineVertex {}

impl Hash for SpineVertex {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key.hash(state);
    }
}

impl PartialOrd for SpineVertex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SpineVertex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key.cmp(&other.key)
    }
}

impl fmt::Display for SpineVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key)
    }
}

impl SpineVertex {
    pub fn key(&self) -> &str {
        &self.key
    }

    pub fn graph(&self) -> &MarkedGraph {
        &self.graph
    }

    pub fn shape(&self) -> &GraphShape {
        &self.graph.shape
    }

    pub fn rank(&self) -> usize {
        self.graph.rank()
    }

    pub fn star_class(&self) -> StarClass {
        self.graph.shape.classify_star()
    }

    /// Acts by an automorphism on every label.
    pub fn act_aut(&self, a: &CoxAutomorphism) -> Result<SpineVertex> {
        Ok(self.graph.apply(a)?.canonicalize())
    }

    /// Acts by an outer class; only meaningful for unpointed vertices.
    pub fn act(&self, c: &OuterClass) -> Result<SpineVertex> {
        if self.graph.shape.is_pointed() {
            return Err(Error::Unsupported("outer classes act on unpointed vertices".into()));
        }
        self.act_aut(c.representative())
    }

    pub fn stabilizes(&self, c: &OuterClass) -> Result<bool> {
        Ok(&self.act(c)? == self)
    }

    pub fn stabilizes_aut(&self, a: &CoxAutomorphism) -> Result<bool> {
        Ok(&self.act_aut(a)? == self)
    }

    /// Labeled non-leaf origins with their edges, in the canonical numbering.
    pub fn twist_edges(&self) -> Vec<(usize, usize)> {
        let s = &self.graph.shape;
        let mut out = Vec::new();
        for o in 0..s.n_vertices() {
            if s.is_labeled(o) && !s.is_leaf(o) {
                for &t in s.neighbors(o) {
                    out.push((o, t));
                }
            }
        }
        out
    }

    /// The twist by `z` around the edge `origin -> target`, as an automorphism of `W_n`.
    pub fn twist(&self, edge: (usize, usize), z: &Word) -> Result<CoxAutomorphism> {
        let (o, t) = edge;
        let g = &self.graph;
        let s = &g.shape;
        if !s.has_edge(o, t) {
            return Err(Error::Unsupported(format!("({o}, {t}) is not an edge")));
        }
        let y = g.labels[o].as_ref().ok_or(Error::OriginNotLabeled(o))?;
        if s.is_leaf(o) {
            return Err(Error::OriginIsLeaf(o));
        }
        if z.is_identity() {
            return Ok(CoxAutomorphism::identity(g.rank()));
        }
        if z != y {
            return Err(Error::Unsupported(format!(
                "z = {z} is not in the vertex group generated by {y}"
            )));
        }
        let marking = g
            .marking
            .as_ref()
            .ok_or_else(|| Error::Unsupported("marked graph has no marking automorphism".into()))?;
        let far = g.far_side(o, t);
        let tw = g.twist_in_slots(o, &far).expect("marking implies slots");
        marking.compose(&tw)?.compose(&marking.inverse())
    }

    /// Collapses every edge of `forest`.
    pub fn collapse(&self, forest: &[(usize, usize)]) -> Result<SpineVertex> {
        let g = &self.graph;
        let s = &g.shape;
        let v = s.n_vertices();
        let mut parent: Vec<usize> = (0..v).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for &(a, b) in forest {
            if !s.has_edge(a, b) {
                return Err(Error::IllegalCollapse(format!("({a}, {b}) is not an edge")));
            }
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
        let roots: Vec<usize> = (0..v).map(|x| find(&mut parent, x)).collect();
        let mut comp_ids: Vec<usize> = roots.clone();
        comp_ids.sort_unstable();
        comp_ids.dedup();
        let idx = |r: usize| comp_ids.binary_search(&r).expect("root listed");
        let k = comp_ids.len();
        let mut labels: Vec<Option<Word>> = vec![None; k];
        let mut slots: Vec<Option<usize>> = vec![None; k];
        for (x, &root) in roots.iter().enumerate() {
            if let Some(l) = &g.labels[x] {
                let c = idx(root);
                if labels[c].is_some() {
                    return Err(Error::IllegalCollapse(
                        "the forest joins two labeled vertices".into(),
                    ));
                }
                labels[c] = Some(l.clone());
                slots[c] = g.slots[x];
            }
        }
        let mut adj = vec![Vec::new(); k];
        for (a, b) in s.edges() {
            let (ca, cb) = (idx(roots[a]), idx(roots[b]));
            if ca != cb {
                adj[ca].push(cb);
                adj[cb].push(ca);
            }
        }
        for l in &mut adj {
            l.sort_unstable();
        }
        let labeled: Vec<bool> = labels.iter().map(Option::is_some).collect();
        let base = s.base().map(|b| idx(roots[b]));
        let shape = GraphShape::from_adjacency(adj, labeled, base);
        shape
            .validate()
            .map_err(|e| Error::IllegalCollapse(e.to_string()))?;
        let collapsed = MarkedGraph {
            shape,
            labels,
            slots,
            marking: g.marking.clone(),
        };
        Ok(collapsed.canonicalize())
    }

    /// Graphviz rendering with word labels.
    pub fn to_dot(&self, name: &str) -> String {
        let captions: Vec<String> = self
            .graph
            .labels
            .iter()
            .map(|l| l.as_ref().map_or("0".to_string(), |w| w.to_string()))
            .collect();
        self.graph.shape.to_dot(name, Some(&captions))
    }
}

fn star_shape(leaves: usize, center_labeled: bool, pointed: bool) -> GraphShape {
    let edges: Vec<(usize, usize)> = (1..=leaves).map(|i| (0, i)).collect();
    let mut labeled = vec![true; leaves + 1];
    labeled[0] = center_labeled;
    GraphShape::new(leaves + 1, &edges, labeled, pointed.then_some(0)).expect("a star is a valid shape")
}

fn check_star_rank(n: usize) -> Result<()> {
    if n < 3 || n > u8::MAX as usize {
        return Err(Error::Unsupported(format!("standard stars need n >= 3, got {n}")));
    }
    Ok(())
}

fn zero_star_with(marking: CoxAutomorphism, pointed: bool) -> SpineVertex {
    let n = marking.rank();
    let mut slots = vec![None];
    slots.extend((1..=n).map(Some));
    MarkedGraph::with_marking(star_shape(n, false, pointed), slots, marking)
        .expect("star slots are a bijection")
        .canonicalize()
}

/// Leaves `w_i` labeled `x_i`, trivial center.
pub fn standard_zero_star(n: usize) -> Result<SpineVertex> {
    check_star_rank(n)?;
    Ok(zero_star_with(CoxAutomorphism::identity(n), false))
}

/// Leaves `v_1..v_{n-1}` labeled `x_i`, center labeled `x_n`.
pub fn standard_f_star(n: usize) -> Result<SpineVertex> {
    check_star_rank(n)?;
    Ok(f_star(n, false))
}

/// The pointed variants, based at the center.
pub fn standard_zero_star_pointed(n: usize) -> Result<SpineVertex> {
    check_star_rank(n)?;
    Ok(zero_star_with(CoxAutomorphism::identity(n), true))
}

pub fn standard_f_star_pointed(n: usize) -> Result<SpineVertex> {
    check_star_rank(n)?;
    Ok(f_star(n, true))
}

fn f_star(n: usize, pointed: bool) -> SpineVertex {
    let mut slots = vec![Some(n)];
    slots.extend((1..n).map(Some));
    MarkedGraph::with_marking(star_shape(n - 1, true, pointed), slots, CoxAutomorphism::identity(n))
        .expect("star slots are a bijection")
        .canonicalize()
}

/// A {0}-star next to the standard F-star, with every exponent vector that produced it.
#[derive(Clone, Debug)]
pub struct AdjacentZeroStar {
    pub vertex: SpineVertex,
    pub alphas: Vec<Vec<u8>>,
}

/// The {0}-stars with leaf labels `x_n^{α_i} x_i x_n^{α_i}` (`i < n`) and `x_n`,
/// deduplicated; each is checked to collapse onto the standard F-star.
pub fn zero_stars_adjacent_to_f_star(n: usize) -> Result<Vec<AdjacentZeroStar>> {
    if !(3..=6).contains(&n) {
        return Err(Error::Unsupported(format!("adjacency family at n = {n}")));
    }
    let f = standard_f_star(n)?;
    let mut out: Vec<AdjacentZeroStar> = Vec::new();
    for mask in 0u32..(1 << (n - 1)) {
        let alpha: Vec<u8> = (0..n - 1).map(|i| ((mask >> i) & 1) as u8).collect();
        let mut marking = CoxAutomorphism::identity(n);
        for (i, &a) in alpha.iter().enumerate() {
            if a == 1 {
                marking = marking.compose(&CoxAutomorphism::sigma(i + 1, n, n)?)?;
            }
        }
        let z = zero_star_with(marking, false);
        let vn = labeled_vertex_of_class(&z, n).expect("x_n labels a leaf");
        let center = star_center(&z);
        let collapsed = z.collapse(&[(center, vn)])?;
        if collapsed != f {
            return Err(Error::assertion(
                "adjacent",
                format!("α = {alpha:?}: collapsing gives {collapsed}, not the F-star"),
            ));
        }
        match out.iter_mut().find(|a| a.vertex == z) {
            Some(a) => a.alphas.push(alpha),
            None => out.push(AdjacentZeroStar {
                vertex: z,
                alphas: vec![alpha],
            }),
        }
    }
    Ok(out)
}

/// The vertex of largest degree.
pub fn star_center(v: &SpineVertex) -> usize {
    let s = v.shape();
    (0..s.n_vertices())
        .max_by_key(|&x| s.degree(x))
        .expect("nonempty tree")
}

/// The vertex whose label is conjugate to `x_k`.
pub fn labeled_vertex_of_class(v: &SpineVertex, k: usize) -> Option<usize> {
    v.graph
        .labels
        .iter()
        .position(|l| l.as_ref().is_some_and(|w| w.involution_decompose().map(|d| d.1) == Ok(k)))
}
