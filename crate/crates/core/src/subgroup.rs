//! Explicitly enumerated finite subgroups of `Aut(W_n)`, `Out(W_n)` and `Sym(m)`.

use std::collections::HashSet;
use std::fmt::Debug;
use std::hash::Hash;

use rayon::prelude::*;

use crate::automorphism::{CoxAutomorphism, OuterClass};
use crate::error::{Error, Result};
use crate::perm::Perm;

/// Default element cap for [`FiniteSubgroup::closure`].
pub const DEFAULT_CLOSURE_CAP: usize = 50_000;

/// Largest group accepted by [`FiniteSubgroup::normal_two_subgroups`].
pub const NORMAL_SEARCH_LIMIT: usize = 10_000;

/// The operations a closure needs. Implementors must share one ambient group
/// (same rank or degree) within a subgroup.
pub trait GroupElement: Clone + Eq + Ord + Hash + Send + Sync + Debug {
    fn op(&self, other: &Self) -> Self;
    fn inv(&self) -> Self;
    fn is_one(&self) -> bool;
    /// The identity of the ambient group of `self`.
    fn one_like(&self) -> Self;
}

impl GroupElement for Perm {
    fn op(&self, other: &Self) -> Self {
        self.compose(other)
    }
    fn inv(&self) -> Self {
        self.inverse()
    }
    fn is_one(&self) -> bool {
        self.is_identity()
    }
    fn one_like(&self) -> Self {
        Perm::identity(self.degree())
    }
}

impl GroupElement for CoxAutomorphism {
    fn op(&self, other: &Self) -> Self {
        self.compose(other).expect("elements of one subgroup share a rank")
    }
    fn inv(&self) -> Self {
        self.inverse()
    }
    fn is_one(&self) -> bool {
        self.is_identity()
    }
    fn one_like(&self) -> Self {
        CoxAutomorphism::identity(self.rank())
    }
}

impl GroupElement for OuterClass {
    fn op(&self, other: &Self) -> Self {
        self.mul(other).expect("elements of one subgroup share a rank")
    }
    fn inv(&self) -> Self {
        self.inverse()
    }
    fn is_one(&self) -> bool {
        self.is_identity()
    }
    fn one_like(&self) -> Self {
        OuterClass::identity(self.rank())
    }
}

/// Order of a single element, or `None` past `bound`.
pub fn element_order<G: GroupElement>(g: &G, bound: usize) -> Option<usize> {
    let mut acc = g.clone();
    for k in 1..=bound {
        if acc.is_one() {
            return Some(k);
        }
        acc = acc.op(g);
    }
    None
}

/// A finite subgroup with its complete, sorted element list.
#[derive(Clone, Debug)]
pub struct FiniteSubgroup<G: GroupElement> {
    generators: Vec<G>,
    elements: Vec<G>,
}

impl<G: GroupElement> PartialEq for FiniteSubgroup<G> {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl<G: GroupElement> Eq for FiniteSubgroup<G> {}

impl<G: GroupElement> FiniteSubgroup<G> {
    /// Breadth-first closure of `generators` under right multiplication,
    /// starting from `one`.
    pub fn closure(one: G, generators: Vec<G>, cap: usize) -> Result<Self> {
        let mut seen: HashSet<G> = HashSet::new();
        seen.insert(one.clone());
        let mut frontier = vec![one];
        while !frontier.is_empty() {
            let products: Vec<G> = frontier
                .par_iter()
                .flat_map_iter(|x| generators.iter().map(move |g| x.op(g)))
                .collect();
            let mut next = Vec::new();
            for p in products {
                if !seen.contains(&p) {
                    seen.insert(p.clone());
                    if seen.len() > cap {
                        return Err(Error::CapExceeded(cap));
                    }
                    next.push(p);
                }
            }
            frontier = next;
        }
        let mut elements: Vec<G> = seen.into_iter().collect();
        elements.sort();
        Ok(FiniteSubgroup {
            generators,
            elements,
        })
    }

    /// Closure of a nonempty generator list.
    pub fn generated_by(generators: Vec<G>, cap: usize) -> Result<Self> {
        let one = generators
            .first()
            .ok_or_else(|| Error::Unsupported("empty generating set".into()))?
            .one_like();
        Self::closure(one, generators, cap)
    }

    /// Wraps a set already known to be a subgroup.
    fn from_subgroup_elements(mut elements: Vec<G>) -> Self {
        elements.sort();
        elements.dedup();
        FiniteSubgroup {
            generators: elements.clone(),
            elements,
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[G] {
        &self.elements
    }

    pub fn generators(&self) -> &[G] {
        &self.generators
    }

    pub fn identity(&self) -> &G {
        self.elements
            .iter()
            .find(|g| g.is_one())
            .expect("a subgroup contains the identity")
    }

    pub fn contains(&self, g: &G) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Self) -> bool {
        self.elements.iter().all(|g| other.contains(g))
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter()
            .all(|a| gens.iter().all(|b| a.op(b) == b.op(a)))
    }

    /// Checks closure under products and inverses; used by tests.
    pub fn is_closed(&self) -> bool {
        self.elements.iter().any(|g| g.is_one())
            && self.elements.par_iter().all(|a| {
                self.contains(&a.inv()) && self.elements.iter().all(|b| self.contains(&a.op(b)))
            })
    }

    pub fn center(&self) -> Self {
        let gens = &self.generators;
        let elems: Vec<G> = self
            .elements
            .par_iter()
            .filter(|h| gens.iter().all(|g| g.op(h) == h.op(g)))
            .cloned()
            .collect();
        Self::from_subgroup_elements(elems)
    }

    fn conj(g: &G, g_inv: &G, h: &G) -> G {
        g.op(h).op(g_inv)
    }

    /// True iff `g G g^-1 = G`.
    pub fn is_normalized_by(&self, g: &G) -> bool {
        let g_inv = g.inv();
        self.generators
            .iter()
            .all(|h| self.contains(&Self::conj(g, &g_inv, h)))
    }

    /// Elements of `self` fixed by conjugation by `g`.
    pub fn fixed_set(&self, g: &G) -> Result<Self> {
        if !self.is_normalized_by(g) {
            return Err(Error::NotNormalizing);
        }
        let g_inv = g.inv();
        let elems: Vec<G> = self
            .elements
            .par_iter()
            .filter(|h| &Self::conj(g, &g_inv, h) == *h)
            .cloned()
            .collect();
        Ok(Self::from_subgroup_elements(elems))
    }

    /// Smallest normal subgroup of `self` containing `xs`.
    pub fn normal_closure(&self, xs: &[G]) -> Self {
        let mut conjugates: Vec<G> = self
            .elements
            .par_iter()
            .flat_map_iter(|g| {
                let g_inv = g.inv();
                xs.iter()
                    .map(move |x| Self::conj(g, &g_inv, x))
                    .collect::<Vec<_>>()
            })
            .collect();
        conjugates.sort();
        conjugates.dedup();
        let one = self.identity().clone();
        Self::closure(one, conjugates, self.order()).expect("bounded by the ambient group")
    }

    /// Subgroup generated by all commutators.
    pub fn derived_subgroup(&self) -> Self {
        let mut comms: Vec<G> = self
            .generators
            .par_iter()
            .flat_map_iter(|a| {
                let ai = a.inv();
                self.generators
                    .iter()
                    .map(move |b| a.op(b).op(&ai).op(&b.inv()))
                    .collect::<Vec<_>>()
            })
            .filter(|c| !c.is_one())
            .collect();
        comms.sort();
        comms.dedup();
        // Normal closure of the generator commutators is the derived subgroup.
        self.normal_closure(&comms)
    }

    /// No normal subgroups other than `1` and `self`.
    pub fn is_simple(&self) -> bool {
        if self.order() == 1 {
            return false;
        }
        self.elements
            .iter()
            .filter(|g| !g.is_one())
            .all(|g| self.normal_closure(std::slice::from_ref(g)).order() == self.order())
    }

    /// All nontrivial normal subgroups of 2-power order, ordered by size then elements.
    ///
    /// Each such subgroup is generated by normal closures of its elements, and
    /// products of normal 2-subgroups are normal 2-subgroups, so joining
    /// normal closures of 2-elements to a fixpoint reaches all of them.
    pub fn normal_two_subgroups(&self) -> Result<Vec<Self>> {
        if self.order() > NORMAL_SEARCH_LIMIT {
            return Err(Error::Unsupported(format!(
                "normal subgroup search on a group of order {}",
                self.order()
            )));
        }
        let is_pow2 = |k: usize| k.is_power_of_two();
        let two_elements: Vec<&G> = self
            .elements
            .iter()
            .filter(|g| !g.is_one())
            .filter(|g| element_order(*g, self.order()).is_some_and(is_pow2))
            .collect();
        let mut found: Vec<Self> = Vec::new();
        let push = |h: Self, found: &mut Vec<Self>| -> bool {
            if is_pow2(h.order()) && h.order() > 1 && !found.contains(&h) {
                found.push(h);
                true
            } else {
                false
            }
        };
        for g in two_elements {
            let nc = self.normal_closure(std::slice::from_ref(g));
            push(nc, &mut found);
        }
        loop {
            let mut added = false;
            let snapshot = found.clone();
            for (i, a) in snapshot.iter().enumerate() {
                for b in &snapshot[i + 1..] {
                    let mut gens = a.elements.clone();
                    gens.extend(b.elements.iter().cloned());
                    let one = self.identity().clone();
                    let joined = Self::closure(one, gens, self.order())?;
                    added |= push(joined, &mut found);
                }
            }
            if !added {
                break;
            }
        }
        found.sort_by(|a, b| a.order().cmp(&b.order()).then(a.elements.cmp(&b.elements)));
        Ok(found)
    }

    /// Image of the subgroup under a map given on elements.
    pub fn map<H: GroupElement>(&self, f: impl Fn(&G) -> H + Sync, cap: usize) -> Result<FiniteSubgroup<H>> {
        let gens: Vec<H> = self.generators.iter().map(&f).collect();
        FiniteSubgroup::generated_by(gens, cap)
    }
}

impl FiniteSubgroup<Perm> {
    pub fn degree(&self) -> usize {
        self.elements[0].degree()
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut orbit: Vec<usize> = self.elements.iter().map(|g| g.apply(point)).collect();
        orbit.sort_unstable();
        orbit.dedup();
        orbit
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(1).len() == self.degree()
    }

    /// Points fixed by every element.
    pub fn fixed_points(&self) -> Vec<usize> {
        (1..=self.degree())
            .filter(|&p| self.generators.iter().all(|g| g.fixes(p)))
            .collect()
    }

    /// `{f : f(i) = i}` in `Sym(m)`.
    pub fn point_stabilizer(i: usize, m: usize) -> Self {
        let gens: Vec<Perm> = (1..=m)
            .filter(|&k| k != i)
            .flat_map(|a| {
                (a + 1..=m)
                    .filter(move |&b| b != i)
                    .map(move |b| Perm::transposition(a, b, m).expect("in range"))
            })
            .collect();
        Self::closure(Perm::identity(m), gens, DEFAULT_CLOSURE_CAP).expect("order (m-1)!")
    }

    pub fn symmetric(m: usize) -> Self {
        let gens: Vec<Perm> = (1..m)
            .map(|i| Perm::transposition(i, i + 1, m).expect("in range"))
            .collect();
        Self::closure(Perm::identity(m), gens, usize::MAX).expect("finite")
    }
}

/// Assertion helper: turns a failed condition into [`Error::AssertionFailed`].
pub(crate) fn ensure(cond: bool, clause: &str, details: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::assertion(clause, details()))
    }
}

/// The four generators quoted for the transitive `S_5` inside `Sym(6)`.
pub fn exceptional_s6_generators() -> Vec<Perm> {
    let c = |cycles: &[&[usize]]| Perm::from_cycles(cycles, 6).expect("valid cycles");
    vec![
        c(&[&[1, 2], &[3, 4], &[5, 6]]),
        c(&[&[1, 6], &[2, 4], &[3, 5]]),
        c(&[&[1, 4], &[2, 3], &[5, 6]]),
        c(&[&[1, 6], &[2, 5], &[3, 4]]),
    ]
}

/// Recognises a transitive, fixed-point-free copy of `S_5` in `Sym(6)`.
///
/// `S_5` is identified by order 120, trivial center and a simple derived
/// subgroup of order 60.
pub fn check_transitive_s5(gens: &[Perm]) -> Result<String> {
    let h = FiniteSubgroup::generated_by(gens.to_vec(), DEFAULT_CLOSURE_CAP)?;
    ensure(h.degree() == 6, "degree", || format!("degree {}", h.degree()))?;
    ensure(h.order() == 120, "order", || format!("|H| = {}", h.order()))?;
    ensure(h.is_transitive(), "transitive", || {
        format!("orbit of 1 is {:?}", h.orbit(1))
    })?;
    let fixed = h.fixed_points();
    ensure(fixed.is_empty(), "no-fixed-point", || {
        format!("fixed points {fixed:?}")
    })?;
    let z = h.center();
    ensure(z.order() == 1, "trivial-center", || {
        format!("|Z(H)| = {}", z.order())
    })?;
    let d = h.derived_subgroup();
    ensure(d.order() == 60, "derived-order", || {
        format!("|[H,H]| = {}", d.order())
    })?;
    ensure(d.is_simple(), "derived-simple", || {
        "derived subgroup has a proper nontrivial normal subgroup".into()
    })?;
    Ok("|H| = 120, transitive, no fixed point, |Z(H)| = 1, |[H,H]| = 60 simple".to_string())
}

pub fn verify_s6_exceptional() -> Result<String> {
    check_transitive_s5(&exceptional_s6_generators())
}

fn recognise_symmetric(g: &FiniteSubgroup<Perm>, k: usize) -> bool {
    match k {
        3 => g.order() == 6 && !g.is_abelian(),
        // The only group of order 24 with trivial center is S_4.
        4 => g.order() == 24 && g.center().order() == 1 && g.derived_subgroup().order() == 12,
        _ => false,
    }
}

/// Every subgroup of `Sym(n)` isomorphic to `S_{n-1}` fixes a point.
///
/// `S_{n-1}` is 2-generated, so closures of element pairs reach every such
/// subgroup. Returns the number found.
pub fn verify_point_stabilizers(n: usize) -> Result<(usize, String)> {
    if n == 6 {
        return Err(Error::Unsupported(
            "n = 6: Sym(6) has transitive subgroups isomorphic to S_5".into(),
        ));
    }
    if n != 4 && n != 5 {
        return Err(Error::Unsupported(format!("n = {n}; only 4 and 5 are checked")));
    }
    let sym = FiniteSubgroup::symmetric(n);
    let target: usize = (1..n).product();
    let elems = sym.elements();
    let pairs: Vec<(usize, usize)> = (0..elems.len())
        .flat_map(|i| (i + 1..elems.len()).map(move |j| (i, j)))
        .collect();
    let mut subs: Vec<Vec<Perm>> = pairs
        .par_iter()
        .filter_map(|&(i, j)| {
            let g = FiniteSubgroup::closure(
                Perm::identity(n),
                vec![elems[i].clone(), elems[j].clone()],
                sym.order(),
            )
            .expect("inside Sym(n)");
            (g.order() == target && recognise_symmetric(&g, n - 1)).then_some(g.elements)
        })
        .collect();
    subs.sort();
    subs.dedup();
    for s in &subs {
        let g = FiniteSubgroup::from_subgroup_elements(s.clone());
        let fixed = g.fixed_points();
        ensure(fixed.len() == 1, "point-stabilizer", || {
            format!("subgroup of order {} fixes {:?}", g.order(), fixed)
        })?;
        let stab = FiniteSubgroup::point_stabilizer(fixed[0], n);
        ensure(stab == g, "point-stabilizer", || {
            format!("subgroup fixing {} is not the full stabilizer", fixed[0])
        })?;
    }
    ensure(subs.len() == n, "count", || {
        format!("found {} subgroups isomorphic to S_{}", subs.len(), n - 1)
    })?;
    Ok((
        subs.len(),
        format!(
            "{} subgroups of Sym({n}) isomorphic to S_{}, each a point stabilizer",
            subs.len(),
            n - 1
        ),
    ))
}

/// Standard generating sets in `Aut(W_n)`.
pub mod standard {
    use super::*;

    fn taus(upto: usize, n: usize) -> Vec<CoxAutomorphism> {
        (1..=upto)
            .map(|i| CoxAutomorphism::tau(i, n).expect("valid index"))
            .collect()
    }

    /// `τ_1, …, τ_{n-1}` (generating `Ã_n ≅ S_n`).
    pub fn a_tilde(n: usize) -> Vec<CoxAutomorphism> {
        taus(n - 1, n)
    }

    /// `τ_1, …, τ_{n-2}` (generating `B̃_n ≅ S_{n-1}`).
    pub fn b_tilde(n: usize) -> Vec<CoxAutomorphism> {
        taus(n - 2, n)
    }

    /// `τ_1, …, τ_{n-2}, σ_{1,n}`.
    pub fn u_tilde(n: usize) -> Vec<CoxAutomorphism> {
        let mut g = taus(n - 2, n);
        g.push(CoxAutomorphism::sigma(1, n, n).expect("valid indices"));
        g
    }

    /// `σ_{1,n}, …, σ_{n-1,n}`.
    pub fn twists(n: usize) -> Vec<CoxAutomorphism> {
        (1..n)
            .map(|i| CoxAutomorphism::sigma(i, n, n).expect("valid indices"))
            .collect()
    }

    pub fn outer(gens: &[CoxAutomorphism]) -> Vec<OuterClass> {
        gens.iter().map(CoxAutomorphism::outer).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::standard::*;
    use super::*;
    use crate::word::Word;

    fn out_group(gens: Vec<CoxAutomorphism>) -> FiniteSubgroup<OuterClass> {
        FiniteSubgroup::generated_by(outer(&gens), DEFAULT_CLOSURE_CAP).unwrap()
    }

    fn aut_group(gens: Vec<CoxAutomorphism>) -> FiniteSubgroup<CoxAutomorphism> {
        FiniteSubgroup::generated_by(gens, DEFAULT_CLOSURE_CAP).unwrap()
    }

    #[test]
    fn closure_examples() {
        assert_eq!(out_group(a_tilde(4)).order(), 24);
        assert_eq!(out_group(u_tilde(4)).order(), 24);
        assert_eq!(aut_group(u_tilde(5)).order(), 384);
    }

    #[test]
    fn closure_respects_cap() {
        let inf = vec![
            CoxAutomorphism::sigma(1, 2, 3).unwrap(),
            CoxAutomorphism::sigma(2, 1, 3).unwrap(),
        ];
        assert_eq!(
            FiniteSubgroup::generated_by(outer(&inf), 500),
            Err(Error::CapExceeded(500))
        );
    }

    #[test]
    fn center_examples() {
        let u = aut_group(u_tilde(4));
        let z = u.center();
        assert_eq!(z.order(), 2);
        let x4 = Word::generator(4, 4).unwrap();
        assert!(z.contains(&CoxAutomorphism::ad(&x4)));
        assert_eq!(out_group(a_tilde(4)).center().order(), 1);
        let v = out_group(twists(4));
        assert_eq!(v.center(), v);
    }

    #[test]
    fn fixed_set_example() {
        let t = aut_group(twists(4));
        assert_eq!(t.order(), 8);
        let tau2 = CoxAutomorphism::tau(2, 4).unwrap();
        let f = t.fixed_set(&tau2).unwrap();
        let s = |i| CoxAutomorphism::sigma(i, 4, 4).unwrap();
        let expected = vec![
            CoxAutomorphism::identity(4),
            s(1),
            s(2).compose(&s(3)).unwrap(),
            s(1).compose(&s(2)).unwrap().compose(&s(3)).unwrap(),
        ];
        assert_eq!(f.order(), 4);
        for e in &expected {
            assert!(f.contains(e), "{e:?}");
        }
        assert_eq!(t.fixed_set(&CoxAutomorphism::identity(4)).unwrap(), t);
        let sig12 = CoxAutomorphism::sigma(1, 2, 4).unwrap();
        assert_eq!(t.fixed_set(&sig12), Err(Error::NotNormalizing));
    }

    #[test]
    fn normal_two_subgroups_examples() {
        let u = out_group(u_tilde(4));
        let ns = u.normal_two_subgroups().unwrap();
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0], out_group(twists(4)));

        let a = out_group(a_tilde(4));
        let ns = a.normal_two_subgroups().unwrap();
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0].order(), 4);

        let s5 = FiniteSubgroup::symmetric(5);
        assert!(s5.normal_two_subgroups().unwrap().is_empty());
    }

    #[test]
    fn s6_exceptional() {
        verify_s6_exceptional().unwrap();
        let stab = FiniteSubgroup::point_stabilizer(6, 6);
        let err = check_transitive_s5(stab.generators()).unwrap_err();
        assert!(matches!(err, Error::AssertionFailed { ref clause, .. } if clause == "transitive"));
        let one = vec![exceptional_s6_generators()[0].clone()];
        let err = check_transitive_s5(&one).unwrap_err();
        assert!(matches!(err, Error::AssertionFailed { ref clause, .. } if clause == "order"));
    }

    #[test]
    fn point_stabilizers() {
        assert_eq!(verify_point_stabilizers(4).unwrap().0, 4);
        assert_eq!(verify_point_stabilizers(5).unwrap().0, 5);
        assert!(matches!(
            verify_point_stabilizers(6),
            Err(Error::Unsupported(_))
        ));
    }
}
