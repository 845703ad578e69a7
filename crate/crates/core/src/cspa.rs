//! Concrete spaces and convergent relation pairs.
//!
//! Here `ext a = {x | x ⊩ a}` and `a ↓ b = {c | ext c ⊆ ext a ∩ ext b}`.
//! Because the condition on `c` splits, `U ↓ V = up(U) ∩ up(V)` where
//! `up(U) = {c | ∃a ∈ U (ext c ⊆ ext a)}`; every check below uses that form.

use std::sync::Arc;

use crate::bp::{delta_pair, rp_compose, rp_equal, BasicPair, RelationPair};
use crate::carrier::{
    all_masks, bits, ensure_same, fin_carrier, Carrier, FinCarrier, Subset, SubsetFamily,
};
use crate::error::{Error, Result};
use crate::generation::{generates, minimal_generating, Witness};
use crate::relcat::{
    compose, family_inclusion, identity, image_mask, left_residual, preimage_mask, Relation,
};
use crate::rules::RuleSet;

/// Precomputed `ext` and `up` tables of a basic pair.
#[derive(Debug, Clone)]
struct ExtTable {
    ext: Vec<u64>,
    up: Vec<u64>,
    ext_all: u64,
}

impl ExtTable {
    fn new(b: &BasicPair) -> ExtTable {
        let n_obs = b.observables().size();
        let ext: Vec<u64> = (0..n_obs)
            .map(|a| preimage_mask(b.forces(), 1 << a))
            .collect();
        let up = (0..n_obs)
            .map(|c| {
                (0..n_obs)
                    .filter(|&a| ext[c] & !ext[a] == 0)
                    .fold(0u64, |m, a| m | (1 << a))
            })
            .collect();
        let ext_all = ext.iter().fold(0u64, |m, &e| m | e);
        ExtTable { ext, up, ext_all }
    }

    fn ext_of(&self, u: u64) -> u64 {
        bits(u).fold(0u64, |m, a| m | self.ext[a])
    }

    fn down(&self, u: u64, v: u64) -> u64 {
        self.up
            .iter()
            .enumerate()
            .filter(|(_, &up)| up & u != 0 && up & v != 0)
            .fold(0u64, |m, (c, _)| m | (1 << c))
    }
}

pub fn ext(b: &BasicPair, a: usize) -> Subset {
    Subset::from_mask(b.points(), preimage_mask(b.forces(), 1 << a))
}

/// `ext U = ⋃_{a ∈ U} ext a`.
pub fn ext_of(b: &BasicPair, u: &Subset) -> Result<Subset> {
    ensure_same(b.observables(), u.carrier())?;
    Ok(Subset::from_mask(
        b.points(),
        preimage_mask(b.forces(), u.mask()),
    ))
}

/// `◇U = {a | ∃x ∈ U (x ⊩ a)}`.
pub fn diamond(b: &BasicPair, u: &Subset) -> Result<Subset> {
    ensure_same(b.points(), u.carrier())?;
    Ok(Subset::from_mask(
        b.observables(),
        image_mask(b.forces(), u.mask()),
    ))
}

/// `a ↓ b` on the observables, defined through `ext`.
pub fn down(b: &BasicPair, a: usize, c: usize) -> Subset {
    let t = ExtTable::new(b);
    Subset::from_mask(b.observables(), t.down(1 << a, 1 << c))
}

pub fn down_of(b: &BasicPair, u: &Subset, v: &Subset) -> Result<Subset> {
    ensure_same(b.observables(), u.carrier())?;
    ensure_same(b.observables(), v.carrier())?;
    let t = ExtTable::new(b);
    Ok(Subset::from_mask(
        b.observables(),
        t.down(u.mask(), v.mask()),
    ))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConcreteFailure {
    /// A point forcing nothing, so `X ≠ ext S`.
    Uncovered { point: usize },
    /// `ext a ∩ ext b ≠ ext(a ↓ b)`.
    Meet { a: usize, b: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcreteReport {
    pub concrete: bool,
    pub failure: Option<ConcreteFailure>,
}

pub fn is_concrete(b: &BasicPair) -> ConcreteReport {
    let fail = |f| ConcreteReport {
        concrete: false,
        failure: Some(f),
    };
    let t = ExtTable::new(b);
    let missing = b.points().full_mask() & !t.ext_all;
    if missing != 0 {
        return fail(ConcreteFailure::Uncovered {
            point: missing.trailing_zeros() as usize,
        });
    }
    let n = b.observables().size();
    for a in 0..n {
        for c in a..n {
            if t.ext[a] & t.ext[c] != t.ext_of(t.down(1 << a, 1 << c)) {
                return fail(ConcreteFailure::Meet { a, b: c });
            }
        }
    }
    ConcreteReport {
        concrete: true,
        failure: None,
    }
}

/// A basic pair validated as concrete.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcreteSpace {
    pair: BasicPair,
}

impl ConcreteSpace {
    pub fn new(pair: BasicPair) -> Result<ConcreteSpace> {
        match is_concrete(&pair).failure {
            None => Ok(ConcreteSpace { pair }),
            Some(ConcreteFailure::Uncovered { point }) => Err(Error::NotConcrete(format!(
                "point `{}` forces no observable",
                pair.points().label(point)
            ))),
            Some(ConcreteFailure::Meet { a, b }) => Err(Error::NotConcrete(format!(
                "ext {} ∩ ext {} differs from ext({} ↓ {})",
                pair.observables().label(a),
                pair.observables().label(b),
                pair.observables().label(a),
                pair.observables().label(b)
            ))),
        }
    }

    pub fn pair(&self) -> &BasicPair {
        &self.pair
    }

    pub fn into_pair(self) -> BasicPair {
        self.pair
    }
}

/// `Fin(S)_⊇ = (Fin(S), ⊇, Fin(S))`.
pub fn fin_space(s: &Arc<Carrier>) -> Result<(FinCarrier, ConcreteSpace)> {
    let fin = fin_carrier(s)?;
    let c = fin.carrier();
    let forces = Relation::from_fn(c, c, |a, b| b & !a == 0);
    let space = ConcreteSpace::new(BasicPair::new(forces))?;
    Ok((fin, space))
}

/// `{*}_Δ`.
pub fn one_point() -> BasicPair {
    delta_pair(&Carrier::singleton("1"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConvergenceFailure {
    /// `ext₁ S₁ ≠ r⁻ ext₂ S₂`, witnessed by a point of `X₁`.
    Totality { point: usize },
    /// `ext₁(s⁻a ↓ s⁻b) ≠ r⁻ ext₂(a ↓ b)`.
    Meet { a: usize, b: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergenceReport {
    pub convergent: bool,
    pub failure: Option<ConvergenceFailure>,
}

/// Evaluates both convergence conditions; endpoints must be concrete.
pub fn is_convergent_pair(p: &RelationPair) -> Result<ConvergenceReport> {
    for end in [p.source(), p.target()] {
        ConcreteSpace::new(end.clone())?;
    }
    Ok(convergence(p))
}

fn convergence(p: &RelationPair) -> ConvergenceReport {
    let fail = |f| ConvergenceReport {
        convergent: false,
        failure: Some(f),
    };
    let t1 = ExtTable::new(p.source());
    let t2 = ExtTable::new(p.target());
    let r = p.point_rel();
    let s = p.obs_rel();
    let lhs = t1.ext_all;
    let rhs = preimage_mask(r, t2.ext_all);
    if lhs != rhs {
        return fail(ConvergenceFailure::Totality {
            point: (lhs ^ rhs).trailing_zeros() as usize,
        });
    }
    let n = p.target().observables().size();
    let s_pre: Vec<u64> = (0..n).map(|a| preimage_mask(s, 1 << a)).collect();
    for a in 0..n {
        for b in a..n {
            let left = t1.ext_of(t1.down(s_pre[a], s_pre[b]));
            let right = preimage_mask(r, t2.ext_of(t2.down(1 << a, 1 << b)));
            if left != right {
                return fail(ConvergenceFailure::Meet { a, b });
            }
        }
    }
    ConvergenceReport {
        convergent: true,
        failure: None,
    }
}

fn is_convergent_subset(t: &ExtTable, d: u64) -> bool {
    if d & t.ext_all == 0 {
        return false;
    }
    let seen: Vec<usize> = (0..t.ext.len()).filter(|&a| t.ext[a] & d != 0).collect();
    let seen_mask = seen.iter().fold(0u64, |m, &a| m | (1 << a));
    seen.iter().enumerate().all(|(i, &a)| {
        seen[i..]
            .iter()
            .all(|&b| t.down(1 << a, 1 << b) & seen_mask != 0)
    })
}

/// `Conv(B)`: `D ≬ ext S` and `D ≬ ext a ∧ D ≬ ext b ⟹ D ≬ ext(a ↓ b)`.
pub fn convergent_subsets(b: &BasicPair) -> Result<SubsetFamily> {
    let all = all_masks("convergent-subset enumeration", b.points())?;
    let t = ExtTable::new(b);
    Ok(SubsetFamily::from_masks(
        b.points(),
        all.filter(|&d| is_convergent_subset(&t, d)),
    ))
}

fn ensure_parallel(p1: &RelationPair, p2: &RelationPair) -> Result<()> {
    if p1.source() != p2.source() || p1.target() != p2.target() {
        return Err(Error::Precondition(
            "relation pairs are not parallel".to_string(),
        ));
    }
    Ok(())
}

/// Rules on `X₁` whose closed subsets are the convergent `D` with
/// `◇₂ r₁ D = ◇₂ r₂ D`. Duplicate rules are dropped.
pub fn eclass_rules(p1: &RelationPair, p2: &RelationPair) -> Result<RuleSet> {
    ensure_parallel(p1, p2)?;
    let b1 = p1.source();
    let t1 = ExtTable::new(b1);
    let t2 = ExtTable::new(p1.target());
    let tr1 = p1.trace();
    let tr2 = p2.trace();
    let r1 = p1.point_rel();
    let r2 = p2.point_rel();
    let mut pairs: Vec<(u64, u64)> = vec![(0, t1.ext_all)];
    let forced: Vec<(usize, usize)> = b1.forces().pairs().collect();
    let mut meets = Vec::new();
    for &(x, a) in &forced {
        for &(y, b) in &forced {
            meets.push(((1u64 << x) | (1 << y), t1.ext_of(t1.down(1 << a, 1 << b))));
        }
    }
    meets.sort_unstable();
    meets.dedup();
    pairs.extend(meets);
    for (forward, r_other) in [(&tr1, r2), (&tr2, r1)] {
        for x in 0..b1.points().size() {
            for c in bits(forward.rows()[x]) {
                pairs.push((1 << x, preimage_mask(r_other, t2.ext[c])));
            }
        }
    }
    let mut seen = std::collections::HashSet::new();
    pairs.retain(|p| seen.insert(*p));
    Ok(RuleSet::from_masks(b1.points(), pairs))
}

/// The direct description of the E-class, for cross-checking [`eclass_rules`].
pub fn eclass_by_filter(p1: &RelationPair, p2: &RelationPair) -> Result<SubsetFamily> {
    ensure_parallel(p1, p2)?;
    let conv = convergent_subsets(p1.source())?;
    let tr1 = p1.trace();
    let tr2 = p2.trace();
    Ok(conv.filter(|d| image_mask(&tr1, d) == image_mask(&tr2, d)))
}

/// An equaliser of convergent `p₁, p₂ : X₁ → X₂` whose apex points name a
/// generating family `G` of the E-class, with `D ⊩_E a ⟺ D ≬ ext₁ a`
/// and arrow `(∋, Δ)`.
#[derive(Debug, Clone)]
pub struct CspaEqualiser {
    pub apex: BasicPair,
    pub arrow: RelationPair,
    pub generators: SubsetFamily,
    pub eclass: SubsetFamily,
    p1: RelationPair,
    p2: RelationPair,
}

pub fn equaliser(p1: &RelationPair, p2: &RelationPair) -> Result<CspaEqualiser> {
    ensure_parallel(p1, p2)?;
    for end in [p1.source(), p1.target()] {
        ConcreteSpace::new(end.clone())?;
    }
    for (i, p) in [p1, p2].into_iter().enumerate() {
        if let Some(f) = convergence(p).failure {
            return Err(Error::Precondition(format!(
                "pair {} is not convergent: {f:?}",
                i + 1
            )));
        }
    }
    let eclass = eclass_rules(p1, p2)?.enumerate_closed()?;
    let generators = minimal_generating(&eclass);
    equaliser_with_points(p1, p2, &eclass, generators)
}

/// The same construction with a caller-chosen generating family of the
/// E-class as apex points.
pub fn equaliser_with_points(
    p1: &RelationPair,
    p2: &RelationPair,
    eclass: &SubsetFamily,
    generators: SubsetFamily,
) -> Result<CspaEqualiser> {
    let b1 = p1.source();
    if let Some(&bad) = generators
        .masks()
        .iter()
        .find(|&&m| !eclass.contains_mask(m))
    {
        return Err(Error::GenerationFailed(format!(
            "apex point {} is not in the E-class",
            b1.points().mask_label(bad)
        )));
    }
    if let Some((alpha, w)) = generates(&generators, eclass)?.witness_failure {
        return Err(Error::GenerationFailed(format!(
            "apex points do not generate the E-class: {}",
            describe_gap(&alpha, &w)
        )));
    }
    let (points, inclusion) = family_inclusion("E", &generators)?;
    let forces = compose(b1.forces(), &inclusion)?;
    let apex = BasicPair::new(Relation::new(
        &points,
        b1.observables(),
        forces.rows().to_vec(),
    )?);
    let arrow = RelationPair::new(&apex, b1, inclusion, identity(b1.observables()))?;
    let eq = CspaEqualiser {
        apex,
        arrow,
        generators,
        eclass: eclass.clone(),
        p1: p1.clone(),
        p2: p2.clone(),
    };
    eq.check_contract()?;
    Ok(eq)
}

impl CspaEqualiser {
    fn check_contract(&self) -> Result<()> {
        if let Err(e) = ConcreteSpace::new(self.apex.clone()) {
            return Err(Error::Contract(format!("equaliser apex: {e}")));
        }
        if let Some(f) = convergence(&self.arrow).failure {
            return Err(Error::Contract(format!(
                "equaliser arrow is not convergent: {f:?}"
            )));
        }
        let a = rp_compose(&self.p1, &self.arrow)?;
        let b = rp_compose(&self.p2, &self.arrow)?;
        if !rp_equal(&a, &b)? {
            return Err(Error::Contract(
                "equaliser arrow does not equalise".to_string(),
            ));
        }
        Ok(())
    }

    pub fn pair(&self) -> (&RelationPair, &RelationPair) {
        (&self.p1, &self.p2)
    }

    /// Factors a convergent cone `(u, v) : Z → X₁` from a concrete space
    /// with `p₁ ∘ (u,v) ~ p₂ ∘ (u,v)`, via `z ū D ⟺ D ⊆ u z`.
    pub fn mediate(&self, cone: &RelationPair) -> Result<RelationPair> {
        if cone.target() != self.p1.source() {
            return Err(Error::Precondition(
                "cone does not end at the source".to_string(),
            ));
        }
        ConcreteSpace::new(cone.source().clone())?;
        if let Some(f) = convergence(cone).failure {
            return Err(Error::Precondition(format!(
                "cone is not convergent: {f:?}"
            )));
        }
        if !rp_equal(&rp_compose(&self.p1, cone)?, &rp_compose(&self.p2, cone)?)? {
            return Err(Error::Precondition(
                "cone does not equalise the pair".to_string(),
            ));
        }
        let u = cone.point_rel();
        let g = self.generators.masks();
        let u_bar = Relation::from_fn(u.src(), self.apex.points(), |z, i| g[i] & !u.rows()[z] == 0);
        let m = match RelationPair::new(cone.source(), &self.apex, u_bar, cone.obs_rel().clone()) {
            Ok(m) => m,
            Err(e) => return Err(Error::FactorizationFailed(e.to_string())),
        };
        if let Some(f) = convergence(&m).failure {
            return Err(Error::Contract(format!(
                "mediator is not convergent: {f:?}"
            )));
        }
        if !rp_equal(&rp_compose(&self.arrow, &m)?, cone)? {
            return Err(Error::Contract(
                "mediator does not factor the cone".to_string(),
            ));
        }
        Ok(m)
    }
}

/// A coreflection of a basic pair `B = (X, ⊩, S)` into concrete spaces.
///
/// The space is `(Pow(X), ⊩̃, Fin(S))` with `A ⊩̃ B ⟺ B ⊆ ◇A`, and the
/// counit is `(∋, ∋)`: `A r x ⟺ x ∈ A`, `B s a ⟺ a ∈ B`.
#[derive(Debug, Clone)]
pub struct Coreflection {
    pub space: ConcreteSpace,
    pub counit: RelationPair,
    pub points: FinCarrier,
    pub observables: FinCarrier,
    base: BasicPair,
}

pub fn coreflect(b: &BasicPair) -> Result<Coreflection> {
    let points = fin_carrier(b.points())?;
    let observables = fin_carrier(b.observables())?;
    let forces = b.forces();
    let pc = points.carrier();
    let oc = observables.carrier();
    let reach: Vec<u64> = (0..pc.size())
        .map(|a| image_mask(forces, a as u64))
        .collect();
    let tilde = Relation::from_fn(pc, oc, |a, obs| obs as u64 & !reach[a] == 0);
    let space = match ConcreteSpace::new(BasicPair::new(tilde)) {
        Ok(s) => s,
        Err(e) => return Err(Error::Contract(format!("coreflection space: {e}"))),
    };
    let r = Relation::from_fn(pc, b.points(), |a, x| a & (1 << x) != 0);
    let s = Relation::from_fn(oc, b.observables(), |o, y| o & (1 << y) != 0);
    let counit = match RelationPair::new(space.pair(), b, r, s) {
        Ok(c) => c,
        Err(e) => return Err(Error::Contract(format!("coreflection counit: {e}"))),
    };
    Ok(Coreflection {
        space,
        counit,
        points,
        observables,
        base: b.clone(),
    })
}

impl Coreflection {
    pub fn base(&self) -> &BasicPair {
        &self.base
    }
}

/// The convergent `(ũ, v̂) : Y → X̃` factoring `(u, v) : Y → B` through
/// the counit: `y ũ A ⟺ A ⊆ u y`, and `v̂` the greatest relation with
/// `v̂ ∘ ⊩_Y ⊆ ⊩̃ ∘ ũ`, checked to close the square.
pub fn coreflect_morphism(cor: &Coreflection, uv: &RelationPair) -> Result<RelationPair> {
    if uv.target() != &cor.base {
        return Err(Error::Precondition(
            "morphism does not end at the coreflected pair".to_string(),
        ));
    }
    ConcreteSpace::new(uv.source().clone())?;
    let u = uv.point_rel();
    let target = cor.space.pair();
    let u_tilde = Relation::from_fn(u.src(), target.points(), |y, a| {
        a as u64 & !u.rows()[y] == 0
    });
    let t = compose(target.forces(), &u_tilde)?;
    let v_hat = left_residual(&t, uv.source().forces())?;
    let m = match RelationPair::new(uv.source(), target, u_tilde, v_hat) {
        Ok(m) => m,
        Err(e) => return Err(Error::FactorizationFailed(e.to_string())),
    };
    if let Some(f) = convergence(&m).failure {
        return Err(Error::Contract(format!(
            "factorization is not convergent: {f:?}"
        )));
    }
    if !rp_equal(&rp_compose(&cor.counit, &m)?, uv)? {
        return Err(Error::Contract(
            "factorization does not commute".to_string(),
        ));
    }
    Ok(m)
}

/// The parallel pair `(r₁, r₁), (r₂, r₂) : Fin(S)_⊇ → R_Δ` of a rule set,
/// with `A r₁ (a,b) ⟺ A ⊇ a` and `A r₂ (a,b) ⟺ ∃y ∈ b (A ⊇ a ∪ {y})`.
#[derive(Debug, Clone)]
pub struct RuleParallelPair {
    pub fin: FinCarrier,
    pub source: ConcreteSpace,
    pub target: BasicPair,
    pub p1: RelationPair,
    pub p2: RelationPair,
}

pub fn rules_to_parallel_pair(r: &RuleSet) -> Result<RuleParallelPair> {
    let (fin, source) = fin_space(r.carrier())?;
    let names = Carrier::indexed("R", r.len())?;
    let target = delta_pair(&names);
    let rules: Vec<(u64, u64)> = r.masks().collect();
    let fc = fin.carrier();
    let r1 = Relation::from_fn(fc, &names, |a, j| rules[j].0 & !(a as u64) == 0);
    let r2 = Relation::from_fn(fc, &names, |a, j| {
        let a = a as u64;
        rules[j].0 & !a == 0 && rules[j].1 & a != 0
    });
    let p1 = RelationPair::new(source.pair(), &target, r1.clone(), r1)?;
    let p2 = RelationPair::new(source.pair(), &target, r2.clone(), r2)?;
    Ok(RuleParallelPair {
        fin,
        source,
        target,
        p1,
        p2,
    })
}

/// The probe `(p_β, q_β) : {*}_Δ → Fin(S)_⊇` with `* p_β A ⟺ A ⊆ β`.
pub fn probe(fin: &FinCarrier, source: &ConcreteSpace, beta: &Subset) -> Result<RelationPair> {
    ensure_same(fin.base(), beta.carrier())?;
    let one = one_point();
    let p = Relation::from_fn(one.points(), fin.carrier(), |_, a| {
        a as u64 & !beta.mask() == 0
    });
    RelationPair::new(&one, source.pair(), p.clone(), p)
}

/// `α_x = ⋃{A | x p A}` for each apex point `x` of an equaliser into `Fin(S)_⊇`.
pub fn extract_generators(fin: &FinCarrier, arrow: &RelationPair) -> Result<SubsetFamily> {
    let p = arrow.point_rel();
    ensure_same(fin.carrier(), p.dst())?;
    Ok(SubsetFamily::from_masks(
        fin.base(),
        p.rows()
            .iter()
            .map(|&row| bits(row).fold(0u64, |m, a| m | a as u64)),
    ))
}

fn describe_gap(alpha: &Subset, w: &Witness) -> String {
    match w {
        Witness::Element(x) => format!(
            "no member contains `{}` inside {alpha}",
            alpha.carrier().label(*x)
        ),
        Witness::Finite(s) => format!("no member covers {s} inside {alpha}"),
    }
}

/// Every stage of the rule-set-to-generators construction.
#[derive(Debug, Clone)]
pub struct GeneratorPipeline {
    pub parallel: RuleParallelPair,
    pub coreflection: Coreflection,
    pub tilde1: RelationPair,
    pub tilde2: RelationPair,
    pub equaliser: CspaEqualiser,
    pub generators: SubsetFamily,
}

/// Equalises the coreflected parallel pair of `R` and reads off a family
/// of `R`-closed subsets, then checks that it generates the closed class.
pub fn generator_pipeline(r: &RuleSet) -> Result<GeneratorPipeline> {
    let parallel = rules_to_parallel_pair(r)?;
    let coreflection = coreflect(&parallel.target)?;
    let tilde1 = coreflect_morphism(&coreflection, &parallel.p1)?;
    let tilde2 = coreflect_morphism(&coreflection, &parallel.p2)?;
    let equaliser = equaliser(&tilde1, &tilde2)?;
    let generators = extract_generators(&parallel.fin, &equaliser.arrow)?;
    if let Some(bad) = generators.masks().iter().find(|&&m| !r.is_closed_mask(m)) {
        return Err(Error::GenerationFailed(format!(
            "extracted subset {} is not closed",
            r.carrier().mask_label(*bad)
        )));
    }
    let closed = r.enumerate_closed()?;
    let report = generates(&generators, &closed)?;
    if let Some((alpha, w)) = report.witness_failure {
        return Err(Error::GenerationFailed(format!(
            "extracted family falls short: {}",
            describe_gap(&alpha, &w)
        )));
    }
    Ok(GeneratorPipeline {
        parallel,
        coreflection,
        tilde1,
        tilde2,
        equaliser,
        generators,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bp::rp_identity;

    fn s(n: usize) -> Arc<Carrier> {
        Carrier::indexed("S", n).unwrap()
    }

    #[test]
    fn ext_examples() {
        let d = delta_pair(&s(2));
        assert_eq!(ext(&d, 1).mask(), 0b10);
        assert!(diamond(&d, &Subset::empty(d.points())).unwrap().is_empty());
        let (fin, space) = fin_space(&s(1)).unwrap();
        // ext {0} = {A | A ⊇ {0}} = {{0}}, the element with index 1
        assert_eq!(ext(space.pair(), 1).mask(), 0b10);
        assert_eq!(fin.size(), 2);
        assert_eq!(down(&d, 0, 1).mask(), 0);
        assert_eq!(down(&d, 1, 1).mask(), 0b10);
    }

    #[test]
    fn concreteness_examples() {
        assert!(is_concrete(&delta_pair(&s(3))).concrete);
        for n in 0..=3 {
            assert!(fin_space(&s(n)).is_ok());
        }
        let empty = BasicPair::new(Relation::empty(&s(1), &s(1)));
        assert_eq!(
            is_concrete(&empty).failure,
            Some(ConcreteFailure::Uncovered { point: 0 })
        );
        // two points both forcing a and b, nothing below: ext a ∩ ext b = X but a ↓ b = {a, b}
        let x = s(2);
        let obs = Carrier::new("O", ["a", "b"]).unwrap();
        let split = BasicPair::new(Relation::from_pairs(&x, &obs, [(0, 0), (1, 1)]).unwrap());
        assert!(is_concrete(&split).concrete);
    }

    #[test]
    fn convergent_subset_examples() {
        let d = delta_pair(&s(1));
        assert_eq!(convergent_subsets(&d).unwrap().masks(), &[0b1]);
        let (_, space) = fin_space(&s(1)).unwrap();
        let conv = convergent_subsets(space.pair()).unwrap();
        assert!(conv.contains_mask(0b01));
        assert!(!conv.contains_mask(0));
    }

    #[test]
    fn convergence_examples() {
        let d = delta_pair(&s(2));
        assert!(is_convergent_pair(&rp_identity(&d)).unwrap().convergent);
        let empty = RelationPair::new(
            &d,
            &d,
            Relation::empty(&s(2), &s(2)),
            Relation::empty(&s(2), &s(2)),
        )
        .unwrap();
        let r = is_convergent_pair(&empty).unwrap();
        assert_eq!(r.failure, Some(ConvergenceFailure::Totality { point: 0 }));
    }

    #[test]
    fn probe_of_closed_subset_converges() {
        let r = RuleSet::from_masks(&s(2), [(0b01, 0b10)]);
        let (fin, space) = fin_space(r.carrier()).unwrap();
        for beta in r.enumerate_closed().unwrap().iter() {
            let p = probe(&fin, &space, &beta).unwrap();
            assert!(is_convergent_pair(&p).unwrap().convergent, "{beta}");
        }
    }

    #[test]
    fn eclass_identity_pair() {
        let d = delta_pair(&s(1));
        let id = rp_identity(&d);
        let rules = eclass_rules(&id, &id).unwrap();
        assert_eq!(rules.enumerate_closed().unwrap().masks(), &[0b1]);
        let eq = equaliser(&id, &id).unwrap();
        assert_eq!(eq.generators.masks(), &[0b1]);
        assert_eq!(eq.apex.points().size(), 1);
        assert_eq!(eq.apex.forces().rows(), &[0b1]);
    }

    #[test]
    fn eclass_matches_filter_on_fin_space() {
        let (_, space) = fin_space(&s(2)).unwrap();
        let id = rp_identity(space.pair());
        let rules = eclass_rules(&id, &id).unwrap();
        assert_eq!(
            rules.enumerate_closed().unwrap(),
            convergent_subsets(space.pair()).unwrap()
        );
        assert_eq!(
            eclass_by_filter(&id, &id).unwrap(),
            rules.enumerate_closed().unwrap()
        );
    }

    #[test]
    fn rules_to_parallel_pair_examples() {
        let r = RuleSet::from_masks(&s(2), [(0b01, 0b10), (0b10, 0b01)]);
        let pp = rules_to_parallel_pair(&r).unwrap();
        let r1 = pp.p1.point_rel();
        let r2 = pp.p2.point_rel();
        assert!(r1.contains(0b11, 0) && r2.contains(0b11, 0));
        assert!(!r1.contains(0, 0) && !r2.contains(0, 0));
        assert!(r1.contains(0b01, 0) && !r2.contains(0b01, 0));
    }

    #[test]
    fn coreflection_of_delta() {
        let d = delta_pair(&s(1));
        let cor = coreflect(&d).unwrap();
        assert_eq!(cor.space.pair().points().size(), 2);
        let one = one_point();
        let x = Relation::from_pairs(one.points(), d.points(), [(0, 0)]).unwrap();
        let uv = RelationPair::new(&one, &d, x.clone(), x).unwrap();
        let m = coreflect_morphism(&cor, &uv).unwrap();
        assert_eq!(m.point_rel().rows(), &[0b11]);
        let e = Relation::empty(one.points(), d.points());
        let uv = RelationPair::new(&one, &d, e.clone(), e).unwrap();
        let m = coreflect_morphism(&cor, &uv).unwrap();
        // only ∅ lies below the empty row
        assert_eq!(m.point_rel().rows(), &[0b01]);

        let empty = BasicPair::new(Relation::empty(&s(0), &s(0)));
        assert!(coreflect(&empty).is_ok());
    }

    #[test]
    fn pipeline_examples() {
        for (n, rules) in [
            (2, vec![(0b01u64, 0b10u64)]),
            (2, vec![]),
            (1, vec![(0, 0b1)]),
        ] {
            let r = RuleSet::from_masks(&s(n), rules);
            let run = generator_pipeline(&r).unwrap();
            assert!(
                generates(&run.generators, &r.enumerate_closed().unwrap())
                    .unwrap()
                    .generates
            );
        }
    }
}
