//! Contract batteries for the equaliser, coequaliser and coreflection
//! constructions. Each returns the number of cones it checked, or a
//! description of the first failure.

use std::sync::Arc;

use pfl_core::bp::{self, rp_compose, rp_equal, BpEqualiser};
use pfl_core::cspa::{self, is_concrete, is_convergent_pair, CspaEqualiser};
use pfl_core::{compose, BasicPair, Carrier, Relation, RelationPair};
use rand::Rng;

use super::*;

pub type Outcome = Result<usize, String>;

pub fn same(p: &RelationPair, q: &RelationPair) -> bool {
    rp_equal(p, q).expect("parallel pairs")
}

/// The trace `⊩₂ ∘ r` computed from scratch.
pub fn trace_oracle(p: &RelationPair) -> Vec<u64> {
    relation_compose_oracle(p.target().forces(), p.point_rel())
}

/// Completes `r` with the greatest `s`, or `None` if no `s` closes the square.
pub fn complete(source: &BasicPair, target: &BasicPair, r: Relation) -> Option<RelationPair> {
    RelationPair::from_point_rel(source, target, r).ok()
}

pub fn random_relation_pair(
    rng: &mut Rng8,
    b1: &BasicPair,
    b2: &BasicPair,
    tries: usize,
) -> Option<RelationPair> {
    (0..tries).find_map(|_| {
        let p = rng.gen_range(0.2..0.8);
        complete(b1, b2, random_relation(rng, b1.points(), b2.points(), p))
    })
}

/// Every relation pair `B1 → B2`, one per point relation that some `s`
/// completes.
pub fn all_relation_pairs(b1: &BasicPair, b2: &BasicPair) -> Vec<RelationPair> {
    all_relations(b1.points().size(), b2.points().size())
        .into_iter()
        .filter_map(|rows| {
            complete(
                b1,
                b2,
                Relation::new(b1.points(), b2.points(), rows).unwrap(),
            )
        })
        .collect()
}

pub fn basic_pair(x: &Arc<Carrier>, s: &Arc<Carrier>, rows: Vec<u64>) -> BasicPair {
    BasicPair::new(Relation::new(x, s, rows).unwrap())
}

// ---------------------------------------------------------------- basic pairs

/// Cones `(u, v) : Z → B₁` with `p₁ ∘ (u,v) ~ p₂ ∘ (u,v)`. Point rows are
/// unions of weak-equaliser generators; `Z` is either `(Z, ⊩₁ ∘ u, S₁)`
/// (square closed by the identity) or random, kept when `v` exists.
pub fn bp_cones(rng: &mut Rng8, eq: &BpEqualiser, count: usize) -> Vec<RelationPair> {
    let (p1, _) = eq.pair();
    let b1 = p1.source();
    let gens = eq.weak.generators.masks();
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < count * 20 {
        attempts += 1;
        let z = carrier("Z", rng.gen_range(1..=3));
        let rows: Vec<u64> = (0..z.size())
            .map(|_| {
                gens.iter()
                    .filter(|_| rng.gen_bool(0.5))
                    .fold(0, |m, &g| m | g)
            })
            .collect();
        let u = Relation::new(&z, b1.points(), rows).unwrap();
        let zb = if rng.gen_bool(0.5) {
            BasicPair::new(compose(b1.forces(), &u).unwrap())
        } else {
            let obs = carrier("O", rng.gen_range(0..=3));
            BasicPair::new(random_relation(rng, &z, &obs, 0.5))
        };
        if let Some(c) = complete(&zb, b1, u) {
            out.push(c);
        }
    }
    out
}

/// Equalising, mediator existence and, when `exhaustive` is set,
/// ~-uniqueness over every point relation `Z → E`.
pub fn bp_equaliser_battery(
    p1: &RelationPair,
    p2: &RelationPair,
    cones: &[RelationPair],
    exhaustive: bool,
) -> Outcome {
    let eq = bp::equaliser(p1, p2).map_err(|e| format!("equaliser: {e}"))?;
    let a = rp_compose(p1, &eq.arrow).unwrap();
    let b = rp_compose(p2, &eq.arrow).unwrap();
    if trace_oracle(&a) != trace_oracle(&b) {
        return Err("arrow does not equalise".into());
    }
    for cone in cones {
        if !same(
            &rp_compose(p1, cone).unwrap(),
            &rp_compose(p2, cone).unwrap(),
        ) {
            return Err("battery produced a non-equalising cone".into());
        }
        let m = eq.mediate(cone).map_err(|e| format!("mediate: {e}"))?;
        if trace_oracle(&rp_compose(&eq.arrow, &m).unwrap()) != trace_oracle(cone) {
            return Err("mediator does not factor the cone".into());
        }
        if exhaustive {
            for rows in all_relations(cone.source().points().size(), eq.apex.points().size()) {
                let r = Relation::new(cone.source().points(), eq.apex.points(), rows).unwrap();
                let Some(other) = complete(cone.source(), &eq.apex, r) else {
                    continue;
                };
                if same(&rp_compose(&eq.arrow, &other).unwrap(), cone) && !same(&other, &m) {
                    return Err(format!(
                        "second mediator {:?} differs from {:?}",
                        other.point_rel(),
                        m.point_rel()
                    ));
                }
            }
        }
    }
    Ok(cones.len())
}

/// The coequaliser battery: coequalising, mediator existence for cocones,
/// and (when `exhaustive`) ~-uniqueness.
pub fn bp_coequaliser_battery(
    p1: &RelationPair,
    p2: &RelationPair,
    cocones: &[RelationPair],
    exhaustive: bool,
) -> Outcome {
    let co = bp::coequaliser(p1, p2).map_err(|e| format!("coequaliser: {e}"))?;
    let a = rp_compose(&co.arrow, p1).unwrap();
    let b = rp_compose(&co.arrow, p2).unwrap();
    if trace_oracle(&a) != trace_oracle(&b) {
        return Err("arrow does not coequalise".into());
    }
    for c in cocones {
        if !same(&rp_compose(c, p1).unwrap(), &rp_compose(c, p2).unwrap()) {
            return Err("battery produced a non-coequalising cocone".into());
        }
        let m = co.mediate(c).map_err(|e| format!("mediate: {e}"))?;
        if trace_oracle(&rp_compose(&m, &co.arrow).unwrap()) != trace_oracle(c) {
            return Err("mediator does not factor the cocone".into());
        }
        if exhaustive {
            for rows in all_relations(co.apex.points().size(), c.target().points().size()) {
                let r = Relation::new(co.apex.points(), c.target().points(), rows).unwrap();
                let Some(other) = complete(&co.apex, c.target(), r) else {
                    continue;
                };
                if same(&rp_compose(&other, &co.arrow).unwrap(), c) && !same(&other, &m) {
                    return Err("second cocone mediator".into());
                }
            }
        }
    }
    Ok(cocones.len())
}

/// Cocones `c : B₂ → Z` with `c ∘ p₁ ~ c ∘ p₂`: every completed point
/// relation into a few random targets, filtered by the condition.
pub fn bp_cocones(
    rng: &mut Rng8,
    p1: &RelationPair,
    p2: &RelationPair,
    targets: usize,
) -> Vec<RelationPair> {
    let b2 = p1.target();
    let mut out = Vec::new();
    for _ in 0..targets {
        let z = carrier("Z", rng.gen_range(1..=2));
        let obs = carrier("O", rng.gen_range(1..=2));
        let zb = BasicPair::new(random_relation(rng, &z, &obs, 0.6));
        for c in all_relation_pairs(b2, &zb) {
            if same(&rp_compose(&c, p1).unwrap(), &rp_compose(&c, p2).unwrap()) {
                out.push(c);
            }
        }
    }
    out
}

// ---------------------------------------------------------------- concrete spaces

pub fn concrete(b: &BasicPair) -> bool {
    is_concrete(b).concrete
}

pub fn convergent(p: &RelationPair) -> bool {
    is_convergent_pair(p).map(|r| r.convergent).unwrap_or(false)
}

/// A random concrete space on at most `n` points and `m` observables.
pub fn random_concrete(rng: &mut Rng8, n: usize, m: usize) -> BasicPair {
    loop {
        let x = carrier("X", rng.gen_range(1..=n));
        let s = carrier("S", rng.gen_range(1..=m));
        let p = rng.gen_range(0.3..0.9);
        let b = BasicPair::new(random_relation(rng, &x, &s, p));
        if concrete(&b) {
            return b;
        }
    }
}

/// Convergent equalising cones: discrete `k_Δ` sources with E-class rows,
/// plus random concrete sources kept when convergent and equalising.
pub fn cspa_cones(rng: &mut Rng8, eq: &CspaEqualiser, count: usize) -> Vec<RelationPair> {
    let (p1, p2) = eq.pair();
    let b1 = p1.source();
    let e = eq.eclass.masks();
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < count * 30 {
        attempts += 1;
        let cone = if !e.is_empty() && rng.gen_bool(0.5) {
            let z = carrier("Z", rng.gen_range(1..=3));
            let rows = (0..z.size())
                .map(|_| e[rng.gen_range(0..e.len())])
                .collect();
            let u = Relation::new(&z, b1.points(), rows).unwrap();
            complete(&pfl_core::bp::delta_pair(&z), b1, u)
        } else {
            let zb = random_concrete(rng, 3, 3);
            let u = random_relation(rng, zb.points(), b1.points(), 0.5);
            complete(&zb, b1, u)
        };
        let Some(cone) = cone else { continue };
        if convergent(&cone)
            && same(
                &rp_compose(p1, &cone).unwrap(),
                &rp_compose(p2, &cone).unwrap(),
            )
        {
            out.push(cone);
        }
    }
    out
}

/// Concreteness of the apex, convergence and equalising of the arrow,
/// mediators for every cone and (when `exhaustive`) ~-uniqueness among
/// convergent candidates.
pub fn cspa_equaliser_battery(
    eq: &CspaEqualiser,
    cones: &[RelationPair],
    exhaustive: bool,
) -> Outcome {
    let (p1, p2) = eq.pair();
    if !concrete(&eq.apex) {
        return Err("apex is not concrete".into());
    }
    if !convergent(&eq.arrow) {
        return Err("arrow is not convergent".into());
    }
    let a = rp_compose(p1, &eq.arrow).unwrap();
    let b = rp_compose(p2, &eq.arrow).unwrap();
    if trace_oracle(&a) != trace_oracle(&b) {
        return Err("arrow does not equalise".into());
    }
    for cone in cones {
        let m = eq.mediate(cone).map_err(|e| format!("mediate: {e}"))?;
        if !convergent(&m) {
            return Err("mediator is not convergent".into());
        }
        if trace_oracle(&rp_compose(&eq.arrow, &m).unwrap()) != trace_oracle(cone) {
            return Err("mediator does not factor the cone".into());
        }
        if exhaustive {
            let cells = cone.source().points().size() * eq.apex.points().size();
            if cells > 16 {
                continue;
            }
            for rows in all_relations(cone.source().points().size(), eq.apex.points().size()) {
                let r = Relation::new(cone.source().points(), eq.apex.points(), rows).unwrap();
                let Some(other) = complete(cone.source(), &eq.apex, r) else {
                    continue;
                };
                if convergent(&other)
                    && same(&rp_compose(&eq.arrow, &other).unwrap(), cone)
                    && !same(&other, &m)
                {
                    return Err("second convergent mediator".into());
                }
            }
        }
    }
    Ok(cones.len())
}

/// The equalisers built on the minimal and on the full E-class factor
/// through each other, and the round trips are ~ the identity.
pub fn generator_choice_is_irrelevant(min: &CspaEqualiser) -> Result<(), String> {
    let (p1, p2) = min.pair();
    let full = cspa::equaliser_with_points(p1, p2, &min.eclass, min.eclass.clone())
        .map_err(|e| e.to_string())?;
    let there = full
        .mediate(&min.arrow)
        .map_err(|e| format!("min -> full: {e}"))?;
    let back = min
        .mediate(&full.arrow)
        .map_err(|e| format!("full -> min: {e}"))?;
    let id_min = bp::rp_identity(&min.apex);
    let id_full = bp::rp_identity(&full.apex);
    if !same(&rp_compose(&back, &there).unwrap(), &id_min)
        || !same(&rp_compose(&there, &back).unwrap(), &id_full)
    {
        return Err("apexes are not ~-isomorphic".into());
    }
    Ok(())
}

/// Universal property of the coreflection for morphisms from concrete
/// spaces, with ~-uniqueness searched over every `Y → Pow(X)` when small.
pub fn coreflection_battery(b: &BasicPair, morphisms: &[RelationPair]) -> Outcome {
    let cor = cspa::coreflect(b).map_err(|e| format!("coreflect: {e}"))?;
    if !concrete(cor.space.pair()) {
        return Err("coreflection is not concrete".into());
    }
    for uv in morphisms {
        let m = cspa::coreflect_morphism(&cor, uv).map_err(|e| format!("factor: {e}"))?;
        if !convergent(&m) {
            return Err("factor is not convergent".into());
        }
        if trace_oracle(&rp_compose(&cor.counit, &m).unwrap()) != trace_oracle(uv) {
            return Err("factor does not commute".into());
        }
        let target = cor.space.pair();
        let cells = uv.source().points().size() * target.points().size();
        if cells > 16 {
            continue;
        }
        for rows in all_relations(uv.source().points().size(), target.points().size()) {
            let r = Relation::new(uv.source().points(), target.points(), rows).unwrap();
            let Some(other) = complete(uv.source(), target, r) else {
                continue;
            };
            if convergent(&other)
                && same(&rp_compose(&cor.counit, &other).unwrap(), uv)
                && !same(&other, &m)
            {
                return Err("second convergent factor".into());
            }
        }
    }
    Ok(morphisms.len())
}

/// Relation pairs into `b` from small random concrete spaces.
pub fn morphisms_into(rng: &mut Rng8, b: &BasicPair, count: usize) -> Vec<RelationPair> {
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < count * 30 {
        attempts += 1;
        let y = random_concrete(rng, 2, 2);
        if let Some(p) = random_relation_pair(rng, &y, b, 4) {
            out.push(p);
        }
    }
    out
}
