mod common;

use std::collections::{BTreeSet, HashSet, VecDeque};

use common::*;
use coxrig::spine::*;
use coxrig::subgroup::{standard, DEFAULT_CLOSURE_CAP};
use coxrig::{CoxAutomorphism, FiniteSubgroup, OuterClass, Word};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// ---------- brute-force shape oracle ----------

fn prufer_edges(seq: &[usize], v: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1; v];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::new();
    for &x in seq {
        let leaf = (0..v).find(|&y| degree[y] == 1).unwrap();
        edges.push((leaf, x));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..v).filter(|&y| degree[y] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

fn all_labeled_trees(v: usize) -> Vec<Vec<(usize, usize)>> {
    if v == 1 {
        return vec![vec![]];
    }
    if v == 2 {
        return vec![vec![(0, 1)]];
    }
    let mut out = Vec::new();
    let total = v.pow((v - 2) as u32);
    for mut code in 0..total {
        let mut seq = Vec::with_capacity(v - 2);
        for _ in 0..v - 2 {
            seq.push(code % v);
            code /= v;
        }
        out.push(prufer_edges(&seq, v));
    }
    out
}

fn permutations(v: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for k in 0..v {
        let mut next = Vec::new();
        for p in &out {
            for pos in 0..=k {
                let mut q = p.clone();
                q.insert(pos, k);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

type Key = (Vec<(usize, usize)>, Vec<bool>, Option<usize>);

fn relabel(edges: &[(usize, usize)], labeled: &[bool], base: Option<usize>, p: &[usize]) -> Key {
    let mut e: Vec<(usize, usize)> = edges
        .iter()
        .map(|&(a, b)| (p[a].min(p[b]), p[a].max(p[b])))
        .collect();
    e.sort();
    let mut l = vec![false; labeled.len()];
    for (x, &b) in labeled.iter().enumerate() {
        l[p[x]] = b;
    }
    (e, l, base.map(|b| p[b]))
}

fn valid(edges: &[(usize, usize)], labeled: &[bool]) -> bool {
    let mut deg = vec![0; labeled.len()];
    for &(a, b) in edges {
        deg[a] += 1;
        deg[b] += 1;
    }
    (0..labeled.len()).all(|x| labeled[x] || deg[x] >= 3)
}

/// Isomorphism classes (base-preserving when pointed), by exhaustive relabeling.
fn brute_shape_count(n: usize, pointed: bool) -> usize {
    let mut classes = 0;
    for v in n..=2 * n - 2 {
        let perms = permutations(v);
        let mut seen: HashSet<Key> = HashSet::new();
        for edges in all_labeled_trees(v) {
            for mask in 0u32..(1 << v) {
                if mask.count_ones() as usize != n {
                    continue;
                }
                let labeled: Vec<bool> = (0..v).map(|x| mask >> x & 1 == 1).collect();
                if !valid(&edges, &labeled) {
                    continue;
                }
                let bases: Vec<Option<usize>> = if pointed { (0..v).map(Some).collect() } else { vec![None] };
                for base in bases {
                    let key = relabel(&edges, &labeled, base, &(0..v).collect::<Vec<_>>());
                    if seen.contains(&key) {
                        continue;
                    }
                    classes += 1;
                    for p in &perms {
                        seen.insert(relabel(&edges, &labeled, base, p));
                    }
                }
            }
        }
    }
    classes
}

fn brute_automorphisms(s: &GraphShape) -> u128 {
    let v = s.n_vertices();
    let edges = s.edges();
    let labeled = s.labeled_mask().to_vec();
    let id = relabel(&edges, &labeled, s.base(), &(0..v).collect::<Vec<_>>());
    permutations(v)
        .iter()
        .filter(|p| relabel(&edges, &labeled, s.base(), p) == id)
        .count() as u128
}

#[test]
fn shape_enumeration_matches_brute_force() {
    for n in 2..=4 {
        for pointed in [false, true] {
            let got = enumerate_shapes(n, pointed).unwrap().len();
            assert_eq!(got, brute_shape_count(n, pointed), "n = {n}, pointed = {pointed}");
        }
    }
}

#[test]
fn automorphism_counts_match_brute_force() {
    for n in 3..=5 {
        for pointed in [false, true] {
            for s in enumerate_shapes(n, pointed).unwrap() {
                if s.n_vertices() <= 8 {
                    assert_eq!(s.automorphism_count(), brute_automorphisms(&s), "{}", s.canonical_code());
                }
            }
        }
    }
}

#[test]
fn shapes_are_valid_and_distinct() {
    for n in 2..=6 {
        let shapes = enumerate_shapes(n, false).unwrap();
        let codes: BTreeSet<String> = shapes.iter().map(GraphShape::canonical_code).collect();
        assert_eq!(codes.len(), shapes.len());
        for s in &shapes {
            s.validate().unwrap();
            assert_eq!(s.rank(), n);
            assert!(s.n_vertices() - s.rank() <= n.saturating_sub(2));
        }
    }
    assert_eq!(enumerate_shapes(2, false).unwrap().len(), 1);
    assert!(enumerate_shapes(7, false).is_err());
}

#[test]
fn twist_rank_bounds() {
    for n in 3..=5 {
        for (pointed, bound) in [(false, n - 2), (true, n - 1)] {
            for s in enumerate_shapes(n, pointed).unwrap() {
                let k = s.twist_kernel_rank();
                assert!(k <= bound);
                assert_eq!(k == bound, s.n_vertices() == n, "{}", s.canonical_code());
            }
        }
    }
}

#[test]
fn stabilizer_bound() {
    for n in 4..=5 {
        let bound: u128 = (1 << (n - 2)) * (1..n as u128).product::<u128>();
        for s in enumerate_shapes(n, false).unwrap() {
            assert!((1u128 << s.twist_kernel_rank()) * s.automorphism_count() <= bound);
        }
    }
    // At rank 3 the {0}-star alone already breaks it: 2^0 * 3! > 2^1 * 2!.
    let z = standard_zero_star(3).unwrap();
    assert_eq!(z.shape().automorphism_count(), 6);
}

// ---------- marked graphs ----------

fn far_side(s: &GraphShape, near: usize, far: usize) -> Vec<usize> {
    let mut out = vec![far];
    let mut q = VecDeque::from([(far, near)]);
    while let Some((x, p)) = q.pop_front() {
        for &y in s.neighbors(x) {
            if y != p {
                out.push(y);
                q.push_back((y, x));
            }
        }
    }
    out
}

/// A random marked graph: a random shape, random slots, a random marking.
fn random_marked<R: Rng>(rng: &mut R, n: usize) -> MarkedGraph {
    let shapes = enumerate_shapes(n, false).unwrap();
    let s = shapes.choose(rng).unwrap().clone();
    let mut ks: Vec<usize> = (1..=n).collect();
    ks.shuffle(rng);
    let mut it = ks.into_iter();
    let slots: Vec<Option<usize>> = (0..s.n_vertices())
        .map(|v| if s.is_labeled(v) { it.next() } else { None })
        .collect();
    MarkedGraph::with_marking(s, slots, random_aut(rng, n, 5)).unwrap()
}

/// Renumbers vertices, conjugates every label, and applies random twists.
fn scramble<R: Rng>(rng: &mut R, m: &MarkedGraph) -> MarkedGraph {
    let s = m.shape();
    let v = s.n_vertices();
    let mut labels: Vec<Option<Word>> = m.labels().to_vec();
    for _ in 0..3 {
        let origins: Vec<usize> = (0..v).filter(|&o| s.is_labeled(o) && !s.is_leaf(o)).collect();
        if let Some(&o) = origins.choose(rng) {
            let t = *s.neighbors(o).choose(rng).unwrap();
            let y = labels[o].clone().unwrap();
            for u in far_side(s, o, t) {
                if let Some(l) = &labels[u] {
                    labels[u] = Some(l.conjugate(&y).unwrap());
                }
            }
        }
    }
    let g = random_word(rng, m.rank(), 6);
    for l in labels.iter_mut().flatten() {
        *l = l.conjugate(&g).unwrap();
    }
    let mut p: Vec<usize> = (0..v).collect();
    p.shuffle(rng);
    let edges: Vec<(usize, usize)> = s.edges().iter().map(|&(a, b)| (p[a], p[b])).collect();
    let mut new_labels = vec![None; v];
    let mut mask = vec![false; v];
    for x in 0..v {
        new_labels[p[x]] = labels[x].clone();
        mask[p[x]] = s.is_labeled(x);
    }
    let shape = GraphShape::new(v, &edges, mask, None).unwrap();
    MarkedGraph::from_labels(shape, new_labels).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_is_invariant(seed in any::<u64>(), n in 3usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_marked(&mut rng, n);
        let a = m.canonicalize();
        let b = scramble(&mut rng, &m).canonicalize();
        prop_assert_eq!(a.key(), b.key());
        prop_assert_eq!(a.graph().canonicalize(), a);
    }

    #[test]
    fn action_is_an_action(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = random_marked(&mut rng, 4).canonicalize();
        let a = random_aut(&mut rng, 4, 4);
        let b = random_aut(&mut rng, 4, 4);
        let lhs = v.act_aut(&b).unwrap().act_aut(&a).unwrap();
        let rhs = v.act_aut(&a.compose(&b).unwrap()).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        let (ca, cb) = (a.outer(), b.outer());
        prop_assert_eq!(v.act(&cb).unwrap().act(&ca).unwrap(), v.act(&ca.mul(&cb).unwrap()).unwrap());
    }

    #[test]
    fn action_ignores_inner_perturbation(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = random_marked(&mut rng, 4).canonicalize();
        let a = random_aut(&mut rng, 4, 4);
        let g = random_word(&mut rng, 4, 6);
        let a2 = CoxAutomorphism::ad(&g).compose(&a).unwrap();
        prop_assert_eq!(v.act_aut(&a).unwrap(), v.act_aut(&a2).unwrap());
    }

    #[test]
    fn twists_fix_their_vertex(seed in any::<u64>(), n in 3usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = random_marked(&mut rng, n).canonicalize();
        for (o, t) in v.twist_edges() {
            let y = v.graph().label(o).unwrap().clone();
            let d = v.twist((o, t), &y).unwrap();
            prop_assert!(v.stabilizes_aut(&d).unwrap());
            prop_assert!(d.compose(&d).unwrap().is_identity());
        }
    }
}

#[test]
fn canonical_form_separates() {
    let z = standard_zero_star(4).unwrap();
    let mut distinct = BTreeSet::new();
    for i in 1..=4 {
        for j in 1..=4 {
            if i != j {
                let s = CoxAutomorphism::sigma(i, j, 4).unwrap();
                distinct.insert(z.act_aut(&s).unwrap().key().to_string());
            }
        }
    }
    // σ_{i,j} moves the {0}-star to a star depending only on i and j.
    assert_eq!(distinct.len(), 12);
    assert!(!distinct.contains(z.key()));
}

fn out_group(gens: Vec<CoxAutomorphism>) -> FiniteSubgroup<OuterClass> {
    FiniteSubgroup::generated_by(standard::outer(&gens), DEFAULT_CLOSURE_CAP).unwrap()
}

#[test]
fn stabilizers_contain_the_standard_groups() {
    let z = standard_zero_star(4).unwrap();
    let f = standard_f_star(4).unwrap();
    for g in out_group(standard::a_tilde(4)).elements() {
        assert!(z.stabilizes(g).unwrap());
    }
    for g in out_group(standard::u_tilde(4)).elements() {
        assert!(f.stabilizes(g).unwrap());
    }
    assert!(!z.stabilizes(&CoxAutomorphism::sigma(1, 4, 4).unwrap().outer()).unwrap());
    assert!(!f.stabilizes(&CoxAutomorphism::tau(3, 4).unwrap().outer()).unwrap());
}

#[test]
fn twists_at_the_f_star() {
    let f = standard_f_star(4).unwrap();
    let c = star_center(&f);
    let y = f.graph().label(c).unwrap().clone();
    let ts: Vec<CoxAutomorphism> = f.shape().neighbors(c).iter().map(|&t| f.twist((c, t), &y).unwrap()).collect();
    for a in &ts {
        assert!(a.compose(a).unwrap().is_identity());
        for b in &ts {
            assert_eq!(a.compose(b).unwrap(), b.compose(a).unwrap());
        }
    }
    let mut classes: Vec<OuterClass> = ts.iter().map(CoxAutomorphism::outer).collect();
    classes.sort();
    let mut want = standard::outer(&standard::twists(4));
    want.sort();
    assert_eq!(classes, want);
    assert!(f.twist((c, f.shape().neighbors(c)[0]), &Word::identity(4)).unwrap().is_identity());
    let other = Word::generator(1, 4).unwrap();
    assert!(f.twist((c, f.shape().neighbors(c)[0]), &other).is_err());
}

#[test]
fn twist_needs_a_marking() {
    let f = standard_f_star(4).unwrap();
    let m = MarkedGraph::from_labels(f.shape().clone(), f.graph().labels().to_vec()).unwrap();
    let v = m.canonicalize();
    let c = star_center(&v);
    let y = v.graph().label(c).unwrap().clone();
    assert!(matches!(v.twist((c, v.shape().neighbors(c)[0]), &y), Err(coxrig::Error::Unsupported(_))));
}

#[test]
fn collapsing_star_edges() {
    for n in 3..=5 {
        let z = standard_zero_star(n).unwrap();
        let c = star_center(&z);
        for &l in z.shape().neighbors(c) {
            let col = z.collapse(&[(c, l)]).unwrap();
            assert_eq!(col.star_class(), StarClass::FStar);
        }
        let f = standard_f_star(n).unwrap();
        let c = star_center(&f);
        for &l in f.shape().neighbors(c) {
            assert!(f.collapse(&[(c, l)]).is_err());
        }
    }
}

/// The {0}-stars whose leaf labels are `x_i` or `x_k x_i x_k` and which
/// collapse onto the standard F-star along some leaf edge.
fn brute_adjacent(n: usize) -> BTreeSet<String> {
    let f = standard_f_star(n).unwrap();
    let edges: Vec<(usize, usize)> = (1..=n).map(|i| (0, i)).collect();
    let mut mask = vec![true; n + 1];
    mask[0] = false;
    let shape = GraphShape::new(n + 1, &edges, mask, None).unwrap();
    let choices: Vec<Vec<Word>> = (1..=n)
        .map(|i| {
            let xi = Word::generator(i, n).unwrap();
            let mut c = vec![xi.clone()];
            for k in (1..=n).filter(|&k| k != i) {
                c.push(xi.conjugate(&Word::generator(k, n).unwrap()).unwrap());
            }
            c
        })
        .collect();
    let mut out = BTreeSet::new();
    let total = n.pow(n as u32);
    for mut code in 0..total {
        let mut labels = vec![None];
        for c in &choices {
            labels.push(Some(c[code % n].clone()));
            code /= n;
        }
        let v = MarkedGraph::from_labels(shape.clone(), labels).unwrap().canonicalize();
        let c = star_center(&v);
        if v.shape().neighbors(c).iter().any(|&l| v.collapse(&[(c, l)]).unwrap() == f) {
            out.insert(v.key().to_string());
        }
    }
    out
}

#[test]
fn adjacency_matches_brute_force() {
    let found: BTreeSet<String> = zero_stars_adjacent_to_f_star(4)
        .unwrap()
        .iter()
        .map(|s| s.vertex.key().to_string())
        .collect();
    assert_eq!(found, brute_adjacent(4));
    assert_eq!(found.len(), 4);
}

#[test]
fn adjacency_is_the_u4_orbit_of_the_zero_star() {
    let z = standard_zero_star(4).unwrap();
    let orbit: BTreeSet<String> = out_group(standard::u_tilde(4))
        .elements()
        .iter()
        .map(|g| z.act(g).unwrap().key().to_string())
        .collect();
    let found: BTreeSet<String> = zero_stars_adjacent_to_f_star(4)
        .unwrap()
        .iter()
        .map(|s| s.vertex.key().to_string())
        .collect();
    assert_eq!(orbit, found);
}

#[test]
fn adjacency_at_other_ranks() {
    for n in 3..=5 {
        let stars = zero_stars_adjacent_to_f_star(n).unwrap();
        assert_eq!(stars.len(), 1 << (n - 2));
        let b = standard::outer(&standard::b_tilde(n));
        let fixed = stars
            .iter()
            .filter(|s| b.iter().all(|g| s.vertex.stabilizes(g).unwrap()))
            .count();
        // At rank 3 both classes are fixed: τ1 swaps α = (1, 0) and (0, 1),
        // which already lie in one class.
        assert_eq!(fixed, if n == 3 { 2 } else { 1 }, "n = {n}");
    }
}

#[test]
fn pointed_stars() {
    let f = standard_f_star_pointed(4).unwrap();
    assert_eq!(f.shape().twist_kernel_rank(), 3);
    assert_eq!(f.star_class(), StarClass::FStar);
    let z = standard_zero_star_pointed(4).unwrap();
    assert_eq!(z.star_class(), StarClass::ZeroStar);
    assert_ne!(z, standard_zero_star(4).unwrap());
    assert!(z.act(&CoxAutomorphism::tau(1, 4).unwrap().outer()).is_err());
    let c = star_center(&f);
    let y = f.graph().label(c).unwrap().clone();
    let ts: Vec<CoxAutomorphism> = f.shape().neighbors(c).iter().map(|&t| f.twist((c, t), &y).unwrap()).collect();
    let aut = FiniteSubgroup::generated_by(ts, DEFAULT_CLOSURE_CAP).unwrap();
    assert_eq!(aut.order(), 8);
    assert!(aut.is_abelian());
}

#[test]
fn dot_output() {
    let f = standard_f_star_pointed(4).unwrap();
    let dot = f.to_dot("f");
    assert!(dot.starts_with("graph \"f\" {"));
    assert!(dot.contains("doublecircle"));
    assert_eq!(dot.matches(" -- ").count(), 3);
    let z = standard_zero_star(4).unwrap();
    assert!(z.to_dot("z").contains("style=dashed"));
}
