//! Gilbert's presentation of `Out(W_n)` and the exceptional map on `Out(W_4)`.
//!
//! Relators are evaluated in `Out(W_n)` through canonical outer forms, so the
//! presentation is checked against the free-product model rather than by
//! rewriting inside the presentation.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::automorphism::{CoxAutomorphism, OuterClass};
use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::subgroup::{ensure, FiniteSubgroup, DEFAULT_CLOSURE_CAP};
use crate::word::Word;

/// A generator of the presentation: `[i j]` or `[σ_{i,j}]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum GeneratorSymbol {
    /// The transposition class `[i j]`, stored with `i < j`.
    Trans(usize, usize),
    Sig(usize, usize),
}

impl GeneratorSymbol {
    pub fn trans(i: usize, j: usize) -> Self {
        GeneratorSymbol::Trans(i.min(j), i.max(j))
    }

    pub fn sig(i: usize, j: usize) -> Self {
        GeneratorSymbol::Sig(i, j)
    }

    fn indices(&self) -> (usize, usize) {
        match *self {
            GeneratorSymbol::Trans(i, j) | GeneratorSymbol::Sig(i, j) => (i, j),
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        let (i, j) = self.indices();
        for k in [i, j] {
            if k == 0 || k > n {
                return Err(Error::IndexOutOfRank { index: k, rank: n });
            }
        }
        if i == j {
            return Err(Error::EqualIndices(i));
        }
        Ok(())
    }

    /// The standard interpretation in `Out(W_n)`.
    pub fn interpret(&self, n: usize) -> Result<OuterClass> {
        self.validate(n)?;
        let a = match *self {
            GeneratorSymbol::Trans(i, j) => CoxAutomorphism::transposition(i, j, n)?,
            GeneratorSymbol::Sig(i, j) => CoxAutomorphism::sigma(i, j, n)?,
        };
        Ok(a.outer())
    }

    /// Every symbol of the generating set for rank `n`.
    pub fn all(n: usize) -> Vec<GeneratorSymbol> {
        let mut out = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                out.push(GeneratorSymbol::Trans(i, j));
            }
        }
        for i in 1..=n {
            for j in 1..=n {
                if i != j {
                    out.push(GeneratorSymbol::Sig(i, j));
                }
            }
        }
        out
    }
}

impl fmt::Display for GeneratorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSymbol::Trans(i, j) => write!(f, "p{i},{j}"),
            GeneratorSymbol::Sig(i, j) => write!(f, "s{i},{j}"),
        }
    }
}

/// A generator or its formal inverse.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Letter {
    pub symbol: GeneratorSymbol,
    pub inverted: bool,
}

impl Letter {
    pub fn new(symbol: GeneratorSymbol) -> Self {
        Letter {
            symbol,
            inverted: false,
        }
    }

    pub fn inverse(self) -> Self {
        Letter {
            symbol: self.symbol,
            inverted: !self.inverted,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol)?;
        if self.inverted {
            f.write_str("^-1")?;
        }
        Ok(())
    }
}

pub fn format_symbol_word(word: &[Letter]) -> String {
    if word.is_empty() {
        return "e".into();
    }
    word.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")
}

fn inverse_word(word: &[Letter]) -> Vec<Letter> {
    word.iter().rev().map(|l| l.inverse()).collect()
}

pub fn parse_symbol(s: &str) -> Result<GeneratorSymbol> {
    let s = s.trim();
    let (kind, rest) = s
        .char_indices()
        .nth(1)
        .map(|(k, _)| s.split_at(k))
        .ok_or_else(|| Error::Parse(format!("bad symbol `{s}`")))?;
    let (a, b) = rest
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("bad symbol `{s}`")))?;
    let idx = |t: &str| {
        t.parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad index in `{s}`")))
    };
    let (i, j) = (idx(a)?, idx(b)?);
    match kind {
        "p" => Ok(GeneratorSymbol::trans(i, j)),
        "s" => Ok(GeneratorSymbol::sig(i, j)),
        _ => Err(Error::Parse(format!("bad symbol `{s}`"))),
    }
}

pub fn parse_letter(s: &str) -> Result<Letter> {
    match s.strip_suffix("^-1") {
        Some(body) => Ok(Letter::new(parse_symbol(body)?).inverse()),
        None => Ok(Letter::new(parse_symbol(s)?)),
    }
}

/// Parses one line of a relator dump. `e` or an empty line is the empty word.
pub fn parse_relator_line(line: &str) -> Result<Vec<Letter>> {
    let line = line.trim();
    if line.is_empty() || line == "e" {
        return Ok(Vec::new());
    }
    line.split_whitespace().map(parse_letter).collect()
}

/// The relation families (a)-(g).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::E,
        Family::F,
        Family::G,
    ];
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => 'a',
            Family::B => 'b',
            Family::C => 'c',
            Family::D => 'd',
            Family::E => 'e',
            Family::F => 'f',
            Family::G => 'g',
        };
        write!(f, "({c})")
    }
}

/// One instance of a relation family, kept as `lhs = rhs`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RelatorInstance {
    pub family: Family,
    pub indices: Vec<usize>,
    pub lhs: Vec<Letter>,
    pub rhs: Vec<Letter>,
}

impl RelatorInstance {
    /// The relator word `lhs · rhs^-1`.
    pub fn word(&self) -> Vec<Letter> {
        let mut w = self.lhs.clone();
        w.extend(inverse_word(&self.rhs));
        w
    }
}

impl fmt::Display for RelatorInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:?}: {} = {}",
            self.family,
            self.indices,
            format_symbol_word(&self.lhs),
            format_symbol_word(&self.rhs)
        )
    }
}

fn ordered_tuples(n: usize, k: usize, distinct: bool) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::new();
        for t in &out {
            for x in 1..=n {
                if !distinct || !t.contains(&x) {
                    let mut t2 = t.clone();
                    t2.push(x);
                    next.push(t2);
                }
            }
        }
        out = next;
    }
    out
}

/// Every instance of (a)-(g) at rank `n`, all index collisions included.
pub fn enumerate_relators(n: usize) -> Result<Vec<RelatorInstance>> {
    if n < 3 {
        return Err(Error::Unsupported(format!("presentation needs n >= 3, got {n}")));
    }
    let l = |s: GeneratorSymbol| Letter::new(s);
    let p = GeneratorSymbol::trans;
    let s = GeneratorSymbol::sig;
    let swap = |i: usize, j: usize, k: usize| {
        if k == i {
            j
        } else if k == j {
            i
        } else {
            k
        }
    };
    let mut out = Vec::new();
    let mut push = |family, indices: Vec<usize>, lhs, rhs| {
        out.push(RelatorInstance {
            family,
            indices,
            lhs,
            rhs,
        })
    };

    for i in 1..=n {
        let lhs = (1..=n).filter(|&j| j != i).map(|j| l(s(j, i))).collect();
        push(Family::A, vec![i], lhs, vec![]);
    }
    for ij in ordered_tuples(n, 2, true) {
        for kl in ordered_tuples(n, 2, true) {
            let (i, j, k, m) = (ij[0], ij[1], kl[0], kl[1]);
            push(
                Family::B,
                vec![i, j, k, m],
                vec![l(p(i, j)), l(p(k, m))],
                vec![l(p(swap(i, j, k), swap(i, j, m))), l(p(i, j))],
            );
        }
    }
    for t in ordered_tuples(n, 3, true) {
        // (c) is indexed by j first, then the distinct pair i, k.
        let (j, i, k) = (t[0], t[1], t[2]);
        push(
            Family::C,
            vec![i, j, k],
            vec![l(s(i, j)), l(s(k, j))],
            vec![l(s(k, j)), l(s(i, j))],
        );
    }
    for t in ordered_tuples(n, 2, true) {
        let (i, j) = (t[0], t[1]);
        push(Family::D, vec![i, j], vec![l(s(i, j)), l(s(i, j))], vec![]);
    }
    for t in ordered_tuples(n, 4, true) {
        let (i, j, k, m) = (t[0], t[1], t[2], t[3]);
        push(
            Family::E,
            vec![i, j, k, m],
            vec![l(s(i, j)), l(s(k, m))],
            vec![l(s(k, m)), l(s(i, j))],
        );
    }
    for ij in ordered_tuples(n, 2, true) {
        for kl in ordered_tuples(n, 2, true) {
            let (i, j, k, m) = (ij[0], ij[1], kl[0], kl[1]);
            push(
                Family::F,
                vec![i, j, k, m],
                vec![l(p(i, j)), l(s(k, m))],
                vec![l(s(swap(i, j, k), swap(i, j, m))), l(p(i, j))],
            );
        }
    }
    for t in ordered_tuples(n, 3, true) {
        let (i, j, k) = (t[0], t[1], t[2]);
        push(
            Family::G,
            vec![i, j, k],
            vec![l(s(j, i)), l(s(i, k)), l(s(j, k))],
            vec![l(s(j, k)), l(s(i, k)), l(s(j, i))],
        );
    }
    Ok(out)
}

/// Images of every generator symbol, as words in the symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorAssignment {
    pub n: usize,
    pub images: BTreeMap<GeneratorSymbol, Vec<Letter>>,
}

impl GeneratorAssignment {
    pub fn identity(n: usize) -> Self {
        let images = GeneratorSymbol::all(n)
            .into_iter()
            .map(|s| (s, vec![Letter::new(s)]))
            .collect();
        GeneratorAssignment { n, images }
    }

    pub fn image(&self, s: &GeneratorSymbol) -> Result<&[Letter]> {
        self.images
            .get(s)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::Unsupported(format!("assignment has no image for {s}")))
    }

    fn check_total(&self) -> Result<()> {
        for s in GeneratorSymbol::all(self.n) {
            self.image(&s)?;
        }
        Ok(())
    }

    /// Substitutes images letter by letter.
    pub fn substitute(&self, word: &[Letter]) -> Result<Vec<Letter>> {
        let mut out = Vec::new();
        for l in word {
            let img = self.image(&l.symbol)?;
            if l.inverted {
                out.extend(inverse_word(img));
            } else {
                out.extend_from_slice(img);
            }
        }
        Ok(out)
    }

    /// The outer classes of all images under the standard interpretation.
    pub fn evaluate(&self) -> Result<Interpretation> {
        self.check_total()?;
        let base = Interpretation::standard(self.n)?;
        let mut classes = BTreeMap::new();
        for (s, w) in &self.images {
            classes.insert(*s, base.eval(w)?);
        }
        Ok(Interpretation {
            n: self.n,
            classes,
        })
    }
}

/// A map from symbols to outer classes, extended multiplicatively to words.
#[derive(Clone, Debug)]
pub struct Interpretation {
    n: usize,
    classes: BTreeMap<GeneratorSymbol, OuterClass>,
}

impl Interpretation {
    pub fn standard(n: usize) -> Result<Self> {
        let mut classes = BTreeMap::new();
        for s in GeneratorSymbol::all(n) {
            classes.insert(s, s.interpret(n)?);
        }
        Ok(Interpretation { n, classes })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn class(&self, s: &GeneratorSymbol) -> Result<&OuterClass> {
        self.classes
            .get(s)
            .ok_or_else(|| Error::Unsupported(format!("no class for {s}")))
    }

    /// Product of the letters, left to right.
    pub fn eval(&self, word: &[Letter]) -> Result<OuterClass> {
        let mut acc = OuterClass::identity(self.n);
        for l in word {
            let c = self.class(&l.symbol)?;
            let c = if l.inverted { c.inverse() } else { c.clone() };
            acc = acc.mul(&c)?;
        }
        Ok(acc)
    }
}

/// Outcome of evaluating a relator list under an interpretation.
#[derive(Clone, Debug, Serialize)]
pub struct RelatorReport {
    pub n: usize,
    pub total: usize,
    pub counts: BTreeMap<String, usize>,
    pub failed_counts: BTreeMap<String, usize>,
    pub failures: Vec<String>,
}

impl RelatorReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary(&self) -> String {
        let counts: Vec<String> = self
            .counts
            .iter()
            .map(|(f, c)| format!("{f}={c}"))
            .collect();
        format!(
            "n={}: {} relators [{}], {} failed",
            self.n,
            self.total,
            counts.join(" "),
            self.failures.len()
        )
    }

    fn into_result(self, clause: &str) -> Result<RelatorReport> {
        if self.passed() {
            Ok(self)
        } else {
            let shown: Vec<&str> = self.failures.iter().take(8).map(String::as_str).collect();
            Err(Error::assertion(
                clause,
                format!("{}; first failures: {}", self.summary(), shown.join("; ")),
            ))
        }
    }
}

pub fn evaluate_relators(interp: &Interpretation, relators: &[RelatorInstance]) -> Result<RelatorReport> {
    let verdicts: Vec<bool> = relators
        .par_iter()
        .map(|r| Ok(interp.eval(&r.lhs)? == interp.eval(&r.rhs)?))
        .collect::<Result<_>>()?;
    let mut counts = BTreeMap::new();
    let mut failed_counts = BTreeMap::new();
    let mut failures = Vec::new();
    for (r, ok) in relators.iter().zip(verdicts) {
        *counts.entry(r.family.to_string()).or_insert(0) += 1;
        if !ok {
            *failed_counts.entry(r.family.to_string()).or_insert(0) += 1;
            failures.push(r.to_string());
        }
    }
    Ok(RelatorReport {
        n: interp.rank(),
        total: relators.len(),
        counts,
        failed_counts,
        failures,
    })
}

/// Every relator at rank `n` holds in `Out(W_n)`.
pub fn verify_presentation(n: usize) -> Result<RelatorReport> {
    if !(3..=6).contains(&n) {
        return Err(Error::Unsupported(format!("presentation check at n = {n}")));
    }
    let relators = enumerate_relators(n)?;
    evaluate_relators(&Interpretation::standard(n)?, &relators)?.into_result("relators")
}

/// Drops the last left-hand factor of the first family-(a) relator; a negative control.
pub fn mutate_relators(relators: &mut [RelatorInstance]) {
    if let Some(r) = relators.iter_mut().find(|r| r.family == Family::A) {
        r.lhs.pop();
    }
}

/// The assignment preserves every relator, hence extends to an endomorphism.
pub fn check_assignment_extends(asg: &GeneratorAssignment) -> Result<RelatorReport> {
    let relators = enumerate_relators(asg.n)?;
    evaluate_relators(&asg.evaluate()?, &relators)?.into_result("relators-preserved")
}

/// The exceptional assignment on the generators of `Out(W_4)`.
pub fn exceptional_w4_assignment() -> GeneratorAssignment {
    let l = |s: GeneratorSymbol| Letter::new(s);
    let p = GeneratorSymbol::trans;
    let s = GeneratorSymbol::sig;
    let mut images = BTreeMap::new();
    for i in 1..=3 {
        for j in i + 1..=3 {
            images.insert(p(i, j), vec![l(p(i, j))]);
        }
    }
    for i in 1..=3usize {
        let rest: Vec<usize> = (1..=3).filter(|&x| x != i).collect();
        let (j, k) = (rest[0], rest[1]);
        images.insert(p(i, 4), vec![l(p(j, k)), l(s(i, 4))]);
        images.insert(s(i, 4), vec![l(p(j, k)), l(p(i, 4))]);
    }
    for i in 1..=4usize {
        for j in 1..=3usize {
            if i == j {
                continue;
            }
            let rest: Vec<usize> = (1..=4).filter(|&x| x != i && x != j).collect();
            let (k, m) = (rest[0], rest[1]);
            images.insert(
                s(i, j),
                vec![l(s(j, 4)), l(p(i, j)), l(p(k, m)), l(s(j, 4))],
            );
        }
    }
    GeneratorAssignment { n: 4, images }
}

fn outer_group(gens: Vec<OuterClass>) -> Result<FiniteSubgroup<OuterClass>> {
    FiniteSubgroup::generated_by(gens, DEFAULT_CLOSURE_CAP)
}

fn classes(interp: &Interpretation, syms: &[GeneratorSymbol]) -> Result<Vec<OuterClass>> {
    syms.iter().map(|s| interp.class(s).cloned()).collect()
}

/// Result of one clause of [`verify_exceptional_w4`].
#[derive(Clone, Debug, Serialize)]
pub struct ClauseOutcome {
    pub clause: String,
    pub pass: bool,
    pub details: String,
}

fn outcome(clause: &str, r: Result<String>) -> ClauseOutcome {
    match r {
        Ok(details) => ClauseOutcome {
            clause: clause.into(),
            pass: true,
            details,
        },
        Err(e) => ClauseOutcome {
            clause: clause.into(),
            pass: false,
            details: e.to_string(),
        },
    }
}

/// Generating sets used for the exchange checks at rank 4.
pub mod w4 {
    use super::GeneratorSymbol as S;

    pub fn a4() -> Vec<S> {
        vec![S::trans(1, 2), S::trans(2, 3), S::trans(3, 4)]
    }

    pub fn u4() -> Vec<S> {
        vec![S::trans(1, 2), S::trans(2, 3), S::sig(1, 4)]
    }

    pub fn twists() -> Vec<S> {
        vec![S::sig(1, 4), S::sig(2, 4), S::sig(3, 4)]
    }
}

/// Every clause of the exceptional-map check, in order.
pub fn exceptional_w4_clauses() -> Result<Vec<ClauseOutcome>> {
    let asg = exceptional_w4_assignment();
    let std4 = Interpretation::standard(4)?;
    let alpha = asg.evaluate()?;
    let mut out = Vec::new();

    out.push(outcome(
        "relators-preserved",
        check_assignment_extends(&asg).map(|r| r.summary()),
    ));

    out.push(outcome("involution", (|| {
        let mut bad = Vec::new();
        for s in GeneratorSymbol::all(4) {
            let twice = asg.substitute(asg.image(&s)?)?;
            if std4.eval(&twice)? != *std4.class(&s)? {
                bad.push(s.to_string());
            }
        }
        ensure(bad.is_empty(), "involution", || format!("α̃² moves {bad:?}"))?;
        Ok("α̃² fixes all 18 generators".to_string())
    })()));

    out.push(outcome("not-inner", (|| {
        let s34 = GeneratorSymbol::sig(3, 4);
        let before = std4.class(&s34)?.class_permutation().clone();
        let after = alpha.class(&s34)?.class_permutation().clone();
        let expected = Perm::from_cycles(&[&[1, 2], &[3, 4]], 4)?;
        ensure(before.is_identity() && after == expected, "not-inner", || {
            format!("class permutations {before} and {after}")
        })?;
        Ok(format!(
            "class permutation of [σ3,4] is {before}, of its image is {after}"
        ))
    })()));

    out.push(outcome("exchange-a-u", (|| {
        let a4 = outer_group(classes(&std4, &w4::a4())?)?;
        let u4 = outer_group(classes(&std4, &w4::u4())?)?;
        let alpha_a = outer_group(classes(&alpha, &w4::a4())?)?;
        let alpha_u = outer_group(classes(&alpha, &w4::u4())?)?;
        ensure(a4.order() == 24 && u4.order() == 24, "exchange-a-u", || {
            format!("|A4| = {}, |U4| = {}", a4.order(), u4.order())
        })?;
        ensure(alpha_a == u4, "exchange-a-u", || {
            format!("α̃(A4) has order {} and differs from U4", alpha_a.order())
        })?;
        ensure(alpha_u == a4, "exchange-a-u", || {
            format!("α̃(U4) has order {} and differs from A4", alpha_u.order())
        })?;
        Ok("α̃(A4) = U4 and α̃(U4) = A4, both of order 24".to_string())
    })()));

    out.push(outcome("klein-image", (|| {
        let p = GeneratorSymbol::trans;
        let v_gens = [
            vec![Letter::new(p(1, 2)), Letter::new(p(3, 4))],
            vec![Letter::new(p(1, 3)), Letter::new(p(2, 4))],
        ];
        let images = v_gens
            .iter()
            .map(|w| alpha.eval(w))
            .collect::<Result<Vec<_>>>()?;
        let image = outer_group(images)?;
        let twists = outer_group(classes(&std4, &w4::twists())?)?;
        ensure(image == twists && image.order() == 4, "klein-image", || {
            format!("α̃(V) has order {}", image.order())
        })?;
        Ok("α̃(V) = ⟨[σ1,4], [σ2,4], [σ3,4]⟩ of order 4".to_string())
    })()));

    Ok(out)
}

/// Runs all clauses and fails on the first failing one.
pub fn verify_exceptional_w4() -> Result<String> {
    let clauses = exceptional_w4_clauses()?;
    for c in &clauses {
        if !c.pass {
            return Err(Error::assertion(c.clause.clone(), c.details.clone()));
        }
    }
    Ok(clauses
        .iter()
        .map(|c| c.clause.as_str())
        .collect::<Vec<_>>()
        .join(", "))
}

/// The two images of `x_1` under the hypothetical twist assignment
/// `σ_{1,2} ↦ σ_{3,2}σ_{4,2}`, `σ_{3,4} ↦ σ_{1,4}σ_{2,4}` at rank 4,
/// composed in both orders.
pub fn noncommuting_twist_images() -> Result<(Word, Word)> {
    let s = |i, j| CoxAutomorphism::sigma(i, j, 4);
    let a12 = s(3, 2)?.compose(&s(4, 2)?)?;
    let a34 = s(1, 4)?.compose(&s(2, 4)?)?;
    let x1 = Word::generator(1, 4)?;
    let left = a12.compose(&a34)?.apply(&x1)?;
    let right = a34.compose(&a12)?.apply(&x1)?;
    Ok((left, right))
}
