//! Basic pairs `(X, ⊩, S)` and relation pairs between them.
//!
//! Two relation pairs `(r₁, s₁), (r₂, s₂) : B₁ → B₂` are equal when
//! `⊩₂ ∘ r₁ = ⊩₂ ∘ r₂`; the observable components play no part.

use std::sync::Arc;

use crate::carrier::{ensure_same, Carrier};
use crate::error::{Error, Result};
use crate::relcat::{
    self, biproduct, compose, converse, first_difference, identity, left_residual, Biproduct,
    Relation, WeakEqualiser,
};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasicPair {
    forces: Relation,
}

impl BasicPair {
    pub fn new(forces: Relation) -> BasicPair {
        BasicPair { forces }
    }

    pub fn points(&self) -> &Arc<Carrier> {
        self.forces.src()
    }

    pub fn observables(&self) -> &Arc<Carrier> {
        self.forces.dst()
    }

    pub fn forces(&self) -> &Relation {
        &self.forces
    }

    /// `(S, Δ_S, S)` for an identity-forced pair.
    pub fn is_delta(&self) -> bool {
        self.points() == self.observables() && self.forces == identity(self.points())
    }
}

/// `S_Δ = (S, Δ_S, S)`.
pub fn delta_pair(s: &Arc<Carrier>) -> BasicPair {
    BasicPair::new(identity(s))
}

/// `(r, s) : B₁ → B₂` with `⊩₂ ∘ r = s ∘ ⊩₁`, checked on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationPair {
    source: BasicPair,
    target: BasicPair,
    r: Relation,
    s: Relation,
}

impl RelationPair {
    pub fn new(
        source: &BasicPair,
        target: &BasicPair,
        r: Relation,
        s: Relation,
    ) -> Result<RelationPair> {
        ensure_same(source.points(), r.src())?;
        ensure_same(target.points(), r.dst())?;
        ensure_same(source.observables(), s.src())?;
        ensure_same(target.observables(), s.dst())?;
        let lhs = compose(target.forces(), &r)?;
        let rhs = compose(&s, source.forces())?;
        if let Some((x, a)) = first_difference(&lhs, &rhs) {
            return Err(Error::SquareViolation {
                point: source.points().label(x).to_string(),
                observable: target.observables().label(a).to_string(),
            });
        }
        Ok(RelationPair {
            source: source.clone(),
            target: target.clone(),
            r,
            s,
        })
    }

    /// Completes `r` to a relation pair, using the greatest `s` with
    /// `s ∘ ⊩₁ ⊆ ⊩₂ ∘ r`; fails when no `s` closes the square.
    pub fn from_point_rel(
        source: &BasicPair,
        target: &BasicPair,
        r: Relation,
    ) -> Result<RelationPair> {
        ensure_same(target.points(), r.dst())?;
        let t = compose(target.forces(), &r)?;
        let s = left_residual(&t, source.forces())?;
        RelationPair::new(source, target, r, s)
    }

    pub fn source(&self) -> &BasicPair {
        &self.source
    }

    pub fn target(&self) -> &BasicPair {
        &self.target
    }

    pub fn point_rel(&self) -> &Relation {
        &self.r
    }

    pub fn obs_rel(&self) -> &Relation {
        &self.s
    }

    /// `⊩₂ ∘ r`, the part of the pair that ~ sees.
    pub fn trace(&self) -> Relation {
        compose(self.target.forces(), &self.r).expect("validated pair")
    }
}

pub fn rp_equal(p: &RelationPair, q: &RelationPair) -> Result<bool> {
    same_endpoints(p, q)?;
    Ok(p.trace() == q.trace())
}

fn same_endpoints(p: &RelationPair, q: &RelationPair) -> Result<()> {
    if p.source != q.source || p.target != q.target {
        return Err(Error::Precondition(
            "relation pairs do not share source and target".to_string(),
        ));
    }
    Ok(())
}

/// `q ∘ p = (r_q ∘ r_p, s_q ∘ s_p)`.
pub fn rp_compose(q: &RelationPair, p: &RelationPair) -> Result<RelationPair> {
    if p.target != q.source {
        return Err(Error::Precondition(
            "relation pairs are not composable".to_string(),
        ));
    }
    Ok(RelationPair {
        source: p.source.clone(),
        target: q.target.clone(),
        r: compose(&q.r, &p.r)?,
        s: compose(&q.s, &p.s)?,
    })
}

pub fn rp_identity(b: &BasicPair) -> RelationPair {
    RelationPair {
        source: b.clone(),
        target: b.clone(),
        r: identity(b.points()),
        s: identity(b.observables()),
    }
}

/// `(r, r) : X_Δ → Y_Δ`, a relation pair by construction.
pub fn delta_lift(r: &Relation) -> RelationPair {
    RelationPair {
        source: delta_pair(r.src()),
        target: delta_pair(r.dst()),
        r: r.clone(),
        s: r.clone(),
    }
}

/// An equaliser of `p₁, p₂ : B₁ → B₂` with apex `(E, ⊩₁ ∘ e, S₁)` and
/// arrow `(e, Δ_{S₁})`, where `e` weakly equalises `⊩₂ ∘ r₁` and `⊩₂ ∘ r₂`.
#[derive(Debug, Clone)]
pub struct BpEqualiser {
    pub apex: BasicPair,
    pub arrow: RelationPair,
    pub weak: WeakEqualiser,
    p1: RelationPair,
    p2: RelationPair,
}

pub fn equaliser(p1: &RelationPair, p2: &RelationPair) -> Result<BpEqualiser> {
    same_endpoints(p1, p2)?;
    let weak = relcat::weak_equaliser(&p1.trace(), &p2.trace())?;
    let e = weak.inclusion.clone();
    let b1 = p1.source();
    let apex = BasicPair::new(compose(b1.forces(), &e)?);
    let arrow = RelationPair::new(&apex, b1, e, identity(b1.observables()))?;
    Ok(BpEqualiser {
        apex,
        arrow,
        weak,
        p1: p1.clone(),
        p2: p2.clone(),
    })
}

impl BpEqualiser {
    pub fn pair(&self) -> (&RelationPair, &RelationPair) {
        (&self.p1, &self.p2)
    }

    /// The factorization `(ū, v)` of a cone `(u, v) : Z → B₁` with
    /// `p₁ ∘ (u,v) ~ p₂ ∘ (u,v)`; `e ∘ ū = u` holds on the nose.
    pub fn mediate(&self, cone: &RelationPair) -> Result<RelationPair> {
        if cone.target() != self.p1.source() {
            return Err(Error::Precondition(
                "cone does not end at the source".to_string(),
            ));
        }
        let a = rp_compose(&self.p1, cone)?;
        let b = rp_compose(&self.p2, cone)?;
        if !rp_equal(&a, &b)? {
            return Err(Error::Precondition(
                "cone does not equalise the pair".to_string(),
            ));
        }
        let u_bar = relcat::mediate(&self.weak, cone.point_rel())?;
        RelationPair::new(cone.source(), &self.apex, u_bar, cone.obs_rel().clone())
    }
}

/// The point relation of an equaliser between `S_Δ` pairs, which is a weak
/// equaliser in relations.
pub fn weak_equaliser_from_bp(eq: &BpEqualiser) -> Result<Relation> {
    let (p1, _) = eq.pair();
    if !p1.source().is_delta() || !p1.target().is_delta() {
        return Err(Error::Precondition(
            "endpoints are not of the form S_Δ".to_string(),
        ));
    }
    Ok(eq.arrow.point_rel().clone())
}

/// `(X, ⊩, S) ↦ (S, ⊩˘, X)`.
pub fn dual(b: &BasicPair) -> BasicPair {
    BasicPair::new(converse(b.forces()))
}

/// `(r, s) : B₁ → B₂ ↦ (s˘, r˘) : B₂* → B₁*`.
pub fn dual_pair(p: &RelationPair) -> RelationPair {
    RelationPair {
        source: dual(&p.target),
        target: dual(&p.source),
        r: converse(&p.s),
        s: converse(&p.r),
    }
}

/// A coequaliser of `p₁, p₂ : B₁ → B₂`, the dual of an equaliser in the
/// dual category.
#[derive(Debug, Clone)]
pub struct BpCoequaliser {
    pub apex: BasicPair,
    pub arrow: RelationPair,
    inner: BpEqualiser,
}

pub fn coequaliser(p1: &RelationPair, p2: &RelationPair) -> Result<BpCoequaliser> {
    let inner = equaliser(&dual_pair(p1), &dual_pair(p2))?;
    Ok(BpCoequaliser {
        apex: dual(&inner.apex),
        arrow: dual_pair(&inner.arrow),
        inner,
    })
}

impl BpCoequaliser {
    /// Factors a cocone `c : B₂ → Z` with `c ∘ p₁ ~ c ∘ p₂` through the arrow.
    pub fn mediate(&self, cocone: &RelationPair) -> Result<RelationPair> {
        let m = self.inner.mediate(&dual_pair(cocone))?;
        Ok(dual_pair(&m))
    }
}

/// `B₁ ⊎ B₂` with block-diagonal forcing; both a product and a coproduct.
#[derive(Debug, Clone)]
pub struct BpBiproduct {
    pub pair: BasicPair,
    pub inl: RelationPair,
    pub inr: RelationPair,
    pub outl: RelationPair,
    pub outr: RelationPair,
    points: Biproduct,
    observables: Biproduct,
}

pub fn coproduct(b1: &BasicPair, b2: &BasicPair) -> Result<BpBiproduct> {
    let points = biproduct(b1.points(), b2.points())?;
    let observables = biproduct(b1.observables(), b2.observables())?;
    let forces = points.copairing(
        &compose(&observables.inl, b1.forces())?,
        &compose(&observables.inr, b2.forces())?,
    )?;
    let pair = BasicPair::new(forces);
    let inl = RelationPair::new(b1, &pair, points.inl.clone(), observables.inl.clone())?;
    let inr = RelationPair::new(b2, &pair, points.inr.clone(), observables.inr.clone())?;
    let outl = RelationPair::new(&pair, b1, points.outl.clone(), observables.outl.clone())?;
    let outr = RelationPair::new(&pair, b2, points.outr.clone(), observables.outr.clone())?;
    Ok(BpBiproduct {
        pair,
        inl,
        inr,
        outl,
        outr,
        points,
        observables,
    })
}

/// Same object as [`coproduct`]; use the projections and [`BpBiproduct::pairing`].
pub fn product(b1: &BasicPair, b2: &BasicPair) -> Result<BpBiproduct> {
    coproduct(b1, b2)
}

impl BpBiproduct {
    /// `[f, g] : B₁ ⊎ B₂ → Z`.
    pub fn copairing(&self, f: &RelationPair, g: &RelationPair) -> Result<RelationPair> {
        let r = self.points.copairing(f.point_rel(), g.point_rel())?;
        let s = self.observables.copairing(f.obs_rel(), g.obs_rel())?;
        RelationPair::new(&self.pair, f.target(), r, s)
    }

    /// `⟨f, g⟩ : Z → B₁ ⊎ B₂`.
    pub fn pairing(&self, f: &RelationPair, g: &RelationPair) -> Result<RelationPair> {
        let r = self.points.pairing(f.point_rel(), g.point_rel())?;
        let s = self.observables.pairing(f.obs_rel(), g.obs_rel())?;
        RelationPair::new(f.source(), &self.pair, r, s)
    }
}
