//! The claim suite behind `coxrig verify`.
//!
//! Each claim is a named check producing a [`ClaimReport`]. Claims run in
//! parallel; reports come back sorted by id.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::automorphism::CoxAutomorphism;
use crate::error::{Error, Result};
use crate::gilbert::{
    enumerate_relators, evaluate_relators, exceptional_w4_clauses, mutate_relators,
    noncommuting_twist_images, Interpretation,
};
use crate::rank3;
use crate::spine::{
    enumerate_shapes, labeled_vertex_of_class, standard_f_star, standard_zero_star, star_center,
    zero_stars_adjacent_to_f_star,
};
use crate::subgroup::{
    standard, verify_point_stabilizers, verify_s6_exceptional, FiniteSubgroup,
    DEFAULT_CLOSURE_CAP,
};
use crate::word::Word;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimReport {
    pub claim_id: String,
    pub paper_ref: String,
    pub status: Status,
    pub details: String,
    pub elapsed_ms: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Scope {
    All,
    Gilbert,
    W4,
    S6,
    Spine,
    Rank3,
    Subgroups,
}

impl Scope {
    fn includes(self, other: Scope) -> bool {
        self == Scope::All || self == other
    }
}

impl FromStr for Scope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => Scope::All,
            "gilbert" => Scope::Gilbert,
            "w4" => Scope::W4,
            "s6" => Scope::S6,
            "spine" => Scope::Spine,
            "rank3" => Scope::Rank3,
            "subgroups" => Scope::Subgroups,
            _ => return Err(Error::Parse(format!("unknown scope `{s}`"))),
        })
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Scope::All => "all",
            Scope::Gilbert => "gilbert",
            Scope::W4 => "w4",
            Scope::S6 => "s6",
            Scope::Spine => "spine",
            Scope::Rank3 => "rank3",
            Scope::Subgroups => "subgroups",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub scope: Scope,
    pub n_min: usize,
    pub n_max: usize,
    pub seed: u64,
    pub max_closure: usize,
    /// Corrupts one relator so the presentation claims fail.
    pub mutate_relator: bool,
    pub rank3_samples: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            scope: Scope::All,
            n_min: 3,
            n_max: 5,
            seed: 0,
            max_closure: DEFAULT_CLOSURE_CAP,
            mutate_relator: false,
            rank3_samples: 1000,
        }
    }
}

type Check = Box<dyn Fn(&VerifyOptions, u64) -> Result<String> + Send + Sync>;

struct Claim {
    id: String,
    paper_ref: &'static str,
    /// `None` runs the check; `Some(reason)` reports it as skipped.
    skip: Option<String>,
    check: Check,
}

fn claim(
    id: impl Into<String>,
    paper_ref: &'static str,
    check: impl Fn(&VerifyOptions, u64) -> Result<String> + Send + Sync + 'static,
) -> Claim {
    Claim {
        id: id.into(),
        paper_ref,
        skip: None,
        check: Box::new(check),
    }
}

fn skipped(id: impl Into<String>, paper_ref: &'static str, reason: String) -> Claim {
    Claim {
        id: id.into(),
        paper_ref,
        skip: Some(reason),
        check: Box::new(|_, _| Ok(String::new())),
    }
}

fn ensure(ok: bool, clause: &str, details: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::assertion(clause, details()))
    }
}

fn factorial(k: usize) -> usize {
    (1..=k).product()
}

/// Number of relator instances per family, from the index constraints.
pub fn expected_relator_count(n: usize) -> usize {
    let p2 = n * (n - 1);
    let p3 = p2 * (n - 2);
    let p4 = p3 * n.saturating_sub(3);
    n + p2 * p2 + p3 + p2 + p4 + p2 * p2 + p3
}

fn gilbert_claim(n: usize) -> Claim {
    claim(
        format!("gilbert.relators.n{n}"),
        "finite presentation of Out(W_n): every relator is trivial",
        move |o, _| {
            let mut rels = enumerate_relators(n)?;
            if o.mutate_relator {
                mutate_relators(&mut rels);
            }
            ensure(rels.len() == expected_relator_count(n), "count", || {
                format!("{} relators, expected {}", rels.len(), expected_relator_count(n))
            })?;
            let report = evaluate_relators(&Interpretation::standard(n)?, &rels)?;
            ensure(report.passed(), "relators", || {
                let shown: Vec<&str> = report.failures.iter().take(5).map(String::as_str).collect();
                format!("{}; e.g. {}", report.summary(), shown.join("; "))
            })?;
            Ok(report.summary())
        },
    )
}

fn w4_claims() -> Vec<Claim> {
    let clauses = [
        ("relators-preserved", "exceptional map at n = 4 preserves every relator"),
        ("involution", "exceptional map at n = 4 squares to the identity"),
        ("not-inner", "exceptional map at n = 4 is not inner"),
        ("exchange-a-u", "exceptional map at n = 4 exchanges A_4 and U_4"),
        ("klein-image", "exceptional map at n = 4 sends the Klein subgroup onto the twists"),
    ];
    let mut out: Vec<Claim> = clauses
        .into_iter()
        .map(|(name, r)| {
            claim(format!("w4.{name}"), r, move |_, _| {
                let all = exceptional_w4_clauses()?;
                let c = all
                    .into_iter()
                    .find(|c| c.clause == name)
                    .ok_or_else(|| Error::assertion(name, "clause missing"))?;
                ensure(c.pass, name, || c.details.clone())?;
                Ok(c.details)
            })
        })
        .collect();
    out.push(claim(
        "w4.twist-images",
        "hypothetical twist assignment: the two composites disagree on x_1",
        |_, _| {
            let (l, r) = noncommuting_twist_images()?;
            ensure(
                l.to_string() == "2 4 2 1 2 4 2" && r.to_string() == "4 1 4",
                "twist-images",
                || format!("got {l} and {r}"),
            )?;
            Ok(format!("{l} != {r}"))
        },
    ));
    out
}

fn s6_claims(o: &VerifyOptions) -> Vec<Claim> {
    let mut out = vec![claim(
        "s6.exceptional",
        "a transitive S_5 inside Sym(6) with no fixed point",
        |_, _| verify_s6_exceptional(),
    )];
    for n in 4..=5 {
        let id = format!("s6.point-stabilizers.n{n}");
        let r = "subgroups of Sym(n) isomorphic to S_{n-1} are point stabilizers";
        if (o.n_min..=o.n_max).contains(&n) {
            out.push(claim(id, r, move |_, _| Ok(verify_point_stabilizers(n)?.1)));
        } else {
            out.push(skipped(id, r, format!("n = {n} outside the requested range")));
        }
    }
    out
}

fn out_group(gens: Vec<CoxAutomorphism>, cap: usize) -> Result<FiniteSubgroup<crate::OuterClass>> {
    FiniteSubgroup::generated_by(standard::outer(&gens), cap)
}

fn subgroup_claims(n: usize) -> Vec<Claim> {
    let mut out = vec![claim(
        format!("subgroups.orders.n{n}"),
        "orders of A_n, B_n, U_n in Out(W_n) and of Ũ_n in Aut(W_n)",
        move |o, _| {
            let cap = o.max_closure;
            let a = out_group(standard::a_tilde(n), cap)?.order();
            let b = out_group(standard::b_tilde(n), cap)?.order();
            let u = out_group(standard::u_tilde(n), cap)?.order();
            let ut = FiniteSubgroup::generated_by(standard::u_tilde(n), cap)?.order();
            let want = (
                factorial(n),
                factorial(n - 1),
                (1 << (n - 2)) * factorial(n - 1),
                (1 << (n - 1)) * factorial(n - 1),
            );
            ensure((a, b, u, ut) == want, "orders", || {
                format!("|A|={a} |B|={b} |U|={u} |Ũ|={ut}, expected {want:?}")
            })?;
            Ok(format!("|A_{n}|={a} |B_{n}|={b} |U_{n}|={u} |Ũ_{n}|={ut}"))
        },
    )];
    let id = format!("subgroups.center.n{n}");
    let r = "the center of Ũ_n is generated by the product of the twists σ_{i,n}";
    out.push(claim(id, r, move |o, _| {
        let ut = FiniteSubgroup::generated_by(standard::u_tilde(n), o.max_closure)?;
        let z = ut.center();
        let adx = CoxAutomorphism::ad(&Word::generator(n, n)?);
        ensure(z.order() == 2 && z.contains(&adx), "center", || {
            format!("center has order {}", z.order())
        })?;
        Ok(format!("center(Ũ_{n}) = {{id, ad(x_{n})}}"))
    }));
    out
}

fn twist_group_claim(n: usize) -> Claim {
    claim(
        format!("spine.twist-group.n{n}"),
        "twists at the standard F-star form an elementary abelian 2-group",
        move |o, _| {
            let f = standard_f_star(n)?;
            let c = star_center(&f);
            let y = f.graph().label(c).expect("labeled center").clone();
            let twists = f
                .shape()
                .neighbors(c)
                .iter()
                .map(|&t| f.twist((c, t), &y))
                .collect::<Result<Vec<_>>>()?;
            let aut = FiniteSubgroup::generated_by(twists.clone(), o.max_closure)?;
            let out = out_group(twists.clone(), o.max_closure)?;
            ensure(aut.is_abelian() && aut.order() == 1 << (n - 1), "aut-order", || {
                format!("order {} in Aut", aut.order())
            })?;
            ensure(out.is_abelian() && out.order() == 1 << (n - 2), "out-order", || {
                format!("order {} in Out", out.order())
            })?;
            let mut prod = CoxAutomorphism::identity(n);
            for s in standard::twists(n) {
                prod = prod.compose(&s)?;
            }
            let adx = CoxAutomorphism::ad(&Word::generator(n, n)?);
            ensure(prod == adx, "product", || format!("product is {}", prod.trace_string()))?;
            let mut gens = twists;
            gens.extend(standard::b_tilde(n));
            let tb = out_group(gens, o.max_closure)?;
            let u = out_group(standard::u_tilde(n), o.max_closure)?;
            ensure(tb == u, "with-b", || {
                format!("twists with B_n give order {}, U_n has {}", tb.order(), u.order())
            })?;
            Ok(format!(
                "order {} in Aut, {} in Out; ∏σ_i,{n} = ad(x_{n}); with B_{n} they generate U_{n} (order {})",
                aut.order(),
                out.order(),
                u.order()
            ))
        },
    )
}

fn twist_rank_claim(n: usize, pointed: bool) -> Claim {
    let (id, bound) = if pointed {
        (format!("spine.twist-rank-pointed.n{n}"), n - 1)
    } else {
        (format!("spine.twist-rank.n{n}"), n - 2)
    };
    claim(
        id,
        "twist-kernel rank bound on every shape, with equality exactly on n-vertex shapes",
        move |_, _| {
            let shapes = enumerate_shapes(n, pointed)?;
            for s in &shapes {
                let k = s.twist_kernel_rank();
                let ok = k <= bound && ((k == bound) == (s.n_vertices() == n));
                ensure(ok, "twist-rank", || {
                    format!("{}: rank {k}, {} vertices", s.canonical_code(), s.n_vertices())
                })?;
            }
            Ok(format!("{} shapes, rank <= {bound}", shapes.len()))
        },
    )
}

fn stabilizer_bound_claim(n: usize) -> Claim {
    let id = format!("spine.stabilizer-bound.n{n}");
    let r = "2^rank times the shape automorphism count is at most |U_n|";
    if n < 4 {
        return skipped(id, r, "the bound is stated for n >= 4".into());
    }
    claim(id, r, move |_, _| {
        let bound = (1u128 << (n - 2)) * factorial(n - 1) as u128;
        let shapes = enumerate_shapes(n, false)?;
        let mut max = 0;
        for s in &shapes {
            let v = (1u128 << s.twist_kernel_rank()) * s.automorphism_count();
            max = max.max(v);
            ensure(v <= bound, "stabilizer-bound", || {
                format!("{}: {v} > {bound}", s.canonical_code())
            })?;
        }
        Ok(format!("{} shapes, max {max} <= {bound}", shapes.len()))
    })
}

fn spine_n4_claims() -> Vec<Claim> {
    vec![
        claim(
            "spine.adjacency.n4",
            "{0}-stars adjacent to the F-star: the exponent family, one B_n-fixed",
            |_, _| {
                let stars = zero_stars_adjacent_to_f_star(4)?;
                let b4 = standard::outer(&standard::b_tilde(4));
                let mut fixed = Vec::new();
                for s in &stars {
                    if b4.iter().map(|g| s.vertex.stabilizes(g)).collect::<Result<Vec<_>>>()?.iter().all(|&b| b) {
                        fixed.push(s);
                    }
                }
                ensure(fixed.len() == 1, "b4-fixed", || format!("{} fixed stars", fixed.len()))?;
                ensure(fixed[0].vertex == standard_zero_star(4)?, "b4-fixed", || {
                    "the fixed star is not the standard one".into()
                })?;
                Ok(format!(
                    "{} classes from 8 exponent vectors, one fixed by B_4",
                    stars.len()
                ))
            },
        ),
        claim("spine.stabilizers.n4", "A_n fixes the {0}-star and U_n fixes the F-star", |_, _| {
            let z = standard_zero_star(4)?;
            let f = standard_f_star(4)?;
            for g in standard::outer(&standard::a_tilde(4)) {
                ensure(z.stabilizes(&g)?, "a4", || format!("{} moves the {{0}}-star", g.representative().trace_string()))?;
            }
            for g in standard::outer(&standard::u_tilde(4)) {
                ensure(f.stabilizes(&g)?, "u4", || format!("{} moves the F-star", g.representative().trace_string()))?;
            }
            let s14 = CoxAutomorphism::sigma(1, 4, 4)?.outer();
            ensure(!z.stabilizes(&s14)?, "s14", || "[σ1,4] fixes the {0}-star".into())?;
            let v = labeled_vertex_of_class(&f, 4);
            ensure(v == Some(star_center(&f)), "f-center", || "x_4 is not the center label".into())?;
            Ok("A_4 fixes the {0}-star, U_4 fixes the F-star, [σ1,4] moves the {0}-star".into())
        }),
    ]
}

fn rank3_claims() -> Vec<Claim> {
    vec![
        claim(
            "rank3.bridge",
            "Out(W_3) maps to PGL(2, Z): inner classes die, products are respected",
            |o, seed| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rank3::verify_pgl_bridge(&mut rng, o.rank3_samples)
            },
        ),
        claim(
            "rank3.round-trip",
            "the even subgroup of W_3 is free on x1x2 and x2x3",
            |_, _| {
                let words = crate::word::all_words(3, 8);
                let mut count = 0;
                for u in words.iter().filter(|u| u.len() % 2 == 0) {
                    let f = rank3::to_free(u)?;
                    ensure(rank3::from_free(&f) == *u, "round-trip", || format!("{u} -> {f}"))?;
                    count += 1;
                }
                Ok(format!("{count} even words of length <= 8"))
            },
        ),
        claim(
            "rank3.gl2-generators",
            "the induced matrices reach generators of GL(2, Z) up to sign",
            |_, _| {
                let classes = rank3::reachable_pgl_classes(6)?;
                for m in [[[0, 1], [1, 0]], [[1, 1], [0, 1]], [[-1, 0], [0, 1]]] {
                    let m = rank3::IntMatrix2(m);
                    ensure(classes.contains(&m.pgl_normalized()), "gl2", || format!("{m} not reached"))?;
                }
                Ok(format!("{} classes within 6 factors", classes.len()))
            },
        ),
    ]
}

fn build_claims(o: &VerifyOptions) -> Vec<Claim> {
    let ns = o.n_min..=o.n_max;
    let mut out = Vec::new();
    if o.scope.includes(Scope::Gilbert) {
        out.extend(ns.clone().filter(|n| (3..=6).contains(n)).map(gilbert_claim));
    }
    if o.scope.includes(Scope::W4) {
        out.extend(w4_claims());
    }
    if o.scope.includes(Scope::S6) {
        out.extend(s6_claims(o));
    }
    if o.scope.includes(Scope::Subgroups) {
        for n in ns.clone().filter(|n| (3..=6).contains(n)) {
            out.extend(subgroup_claims(n));
        }
    }
    if o.scope.includes(Scope::Spine) {
        for n in ns.clone().filter(|n| (3..=6).contains(n)) {
            out.push(twist_rank_claim(n, false));
            out.push(twist_rank_claim(n, true));
            out.push(stabilizer_bound_claim(n));
            out.push(twist_group_claim(n));
        }
        if ns.contains(&4) {
            out.extend(spine_n4_claims());
        }
    }
    if o.scope.includes(Scope::Rank3) {
        out.extend(rank3_claims());
    }
    out
}

/// Checks that the requested range is supported.
pub fn validate_options(o: &VerifyOptions) -> Result<()> {
    if o.n_min > o.n_max || o.n_min < 2 || o.n_max > 6 {
        return Err(Error::Unsupported(format!(
            "n range {}..{} (supported: within 2..6)",
            o.n_min, o.n_max
        )));
    }
    Ok(())
}

pub fn run(o: &VerifyOptions) -> Result<Vec<ClaimReport>> {
    validate_options(o)?;
    let claims = build_claims(o);
    let mut reports: Vec<ClaimReport> = claims
        .par_iter()
        .enumerate()
        .map(|(k, c)| {
            let start = Instant::now();
            let (status, details) = match &c.skip {
                Some(reason) => (Status::Skipped, reason.clone()),
                None => match (c.check)(o, o.seed.wrapping_add(k as u64)) {
                    Ok(d) => (Status::Pass, d),
                    Err(e) => (Status::Fail, e.to_string()),
                },
            };
            ClaimReport {
                claim_id: c.id.clone(),
                paper_ref: c.paper_ref.to_string(),
                status,
                details,
                elapsed_ms: start.elapsed().as_millis() as u64,
            }
        })
        .collect();
    reports.sort_by(|a, b| a.claim_id.cmp(&b.claim_id));
    Ok(reports)
}

pub fn all_passed(reports: &[ClaimReport]) -> bool {
    reports.iter().all(|r| r.status != Status::Fail)
}
