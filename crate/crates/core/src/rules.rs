//! Rule systems and the translations between rule fragments.
//!
//! A rule `(a, b)` closes `α` when `a ⊆ α ⟹ b ≬ α` and bicloses it when
//! `a ≬ α ⟺ b ≬ α`. Every translation here comes with the closure law it
//! preserves; the tests check those laws by enumeration.

use std::fmt;
use std::sync::Arc;

use crate::carrier::{
    bits, ensure_same, fin_carrier, submasks, Carrier, FinCarrier, Subset, SubsetFamily,
};
use crate::error::{Error, Result};
use crate::geom::{FormulaBody, GeometricAxiom, GeometricTheory};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rule {
    pub premise: Subset,
    pub conclusion: Subset,
}

impl Rule {
    pub fn new(premise: Subset, conclusion: Subset) -> Result<Rule> {
        ensure_same(premise.carrier(), conclusion.carrier())?;
        Ok(Rule {
            premise,
            conclusion,
        })
    }

    pub fn arity(&self) -> usize {
        self.premise.len()
    }

    fn closes(&self, alpha: u64) -> bool {
        self.premise.mask() & !alpha != 0 || self.conclusion.mask() & alpha != 0
    }

    fn bicloses(&self, alpha: u64) -> bool {
        (self.premise.mask() & alpha != 0) == (self.conclusion.mask() & alpha != 0)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.premise, self.conclusion)
    }
}

/// An ordered list of rules on one carrier. Duplicates are allowed; the
/// closure predicates do not depend on order or multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleSet {
    carrier: Arc<Carrier>,
    rules: Vec<Rule>,
}

impl RuleSet {
    pub fn new(carrier: &Arc<Carrier>, rules: Vec<Rule>) -> Result<RuleSet> {
        for r in &rules {
            ensure_same(carrier, r.premise.carrier())?;
            ensure_same(carrier, r.conclusion.carrier())?;
        }
        Ok(RuleSet {
            carrier: carrier.clone(),
            rules,
        })
    }

    pub fn empty(carrier: &Arc<Carrier>) -> RuleSet {
        RuleSet {
            carrier: carrier.clone(),
            rules: Vec::new(),
        }
    }

    /// Panics on masks outside the carrier.
    pub fn from_masks(
        carrier: &Arc<Carrier>,
        pairs: impl IntoIterator<Item = (u64, u64)>,
    ) -> RuleSet {
        let rules = pairs
            .into_iter()
            .map(|(a, b)| Rule {
                premise: Subset::from_mask(carrier, a),
                conclusion: Subset::from_mask(carrier, b),
            })
            .collect();
        RuleSet {
            carrier: carrier.clone(),
            rules,
        }
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn masks(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.rules
            .iter()
            .map(|r| (r.premise.mask(), r.conclusion.mask()))
    }

    pub fn max_arity(&self) -> usize {
        self.rules.iter().map(Rule::arity).max().unwrap_or(0)
    }

    pub fn is_nullary(&self) -> bool {
        self.rules.iter().all(|r| r.arity() == 0)
    }

    pub fn is_elementary(&self) -> bool {
        self.rules.iter().all(|r| r.arity() == 1)
    }

    /// Every premise is the image of `{0, …, n-1}`, i.e. has at most `n` elements.
    pub fn is_n_ary(&self, n: usize) -> bool {
        self.max_arity() <= n
    }

    pub fn is_closed(&self, alpha: &Subset) -> Result<bool> {
        ensure_same(&self.carrier, alpha.carrier())?;
        Ok(self.is_closed_mask(alpha.mask()))
    }

    pub fn is_closed_mask(&self, alpha: u64) -> bool {
        self.rules.iter().all(|r| r.closes(alpha))
    }

    pub fn is_biclosed(&self, alpha: &Subset) -> Result<bool> {
        ensure_same(&self.carrier, alpha.carrier())?;
        Ok(self.is_biclosed_mask(alpha.mask()))
    }

    pub fn is_biclosed_mask(&self, alpha: u64) -> bool {
        self.rules.iter().all(|r| r.bicloses(alpha))
    }

    pub fn enumerate_closed(&self) -> Result<SubsetFamily> {
        let all = crate::carrier::all_masks("closed-subset enumeration", &self.carrier)?;
        Ok(SubsetFamily::from_masks(
            &self.carrier,
            all.filter(|&m| self.is_closed_mask(m)),
        ))
    }

    pub fn enumerate_biclosed(&self) -> Result<SubsetFamily> {
        let all = crate::carrier::all_masks("biclosed-subset enumeration", &self.carrier)?;
        Ok(SubsetFamily::from_masks(
            &self.carrier,
            all.filter(|&m| self.is_biclosed_mask(m)),
        ))
    }

    /// `{({x}, b) | (a,b) ∈ R, x ∈ a} ∪ {({y}, a) | (a,b) ∈ R, y ∈ b}`:
    /// its closed subsets are exactly the `R`-biclosed ones.
    pub fn biclosed_to_elementary(&self) -> RuleSet {
        let forward = self
            .masks()
            .flat_map(|(a, b)| bits(a).map(move |x| (1u64 << x, b)));
        let backward = self
            .masks()
            .flat_map(|(a, b)| bits(b).map(move |y| (1u64 << y, a)));
        let pairs: Vec<_> = forward.chain(backward).collect();
        RuleSet::from_masks(&self.carrier, pairs)
    }

    /// `{(a ∪ b, b) | (a,b) ∈ R}` for elementary `R`: its biclosed subsets
    /// are exactly the `R`-closed ones.
    pub fn elementary_to_biclosed(&self) -> Result<RuleSet> {
        if let Some(index) = self.rules.iter().position(|r| r.arity() != 1) {
            return Err(Error::NotElementary { index });
        }
        let pairs: Vec<_> = self.masks().map(|(a, b)| (a | b, b)).collect();
        Ok(RuleSet::from_masks(&self.carrier, pairs))
    }

    /// Replaces nullary premises by a fresh element `*`.
    ///
    /// Rules keep their positions; `(∅, b)` becomes `({*}, b)`.
    pub fn binarize(&self) -> Result<Binarization> {
        if let Some(index) = self.rules.iter().position(|r| r.arity() > 2) {
            return Err(Error::PremiseTooLarge {
                index,
                size: self.rules[index].arity(),
                max: 2,
            });
        }
        if self.carrier.index_of(STAR).is_some() {
            return Err(Error::ReservedLabel(self.carrier.name().to_string()));
        }
        let labels = self
            .carrier
            .labels()
            .iter()
            .cloned()
            .chain(std::iter::once(STAR.to_string()));
        let extended = Carrier::new(format!("{}+*", self.carrier.name()), labels)?;
        let star = self.carrier.size();
        let pairs: Vec<_> = self
            .masks()
            .map(|(a, b)| if a == 0 { (1u64 << star, b) } else { (a, b) })
            .collect();
        let rules = RuleSet::from_masks(&extended, pairs);
        Ok(Binarization {
            base: self.carrier.clone(),
            star,
            rules,
        })
    }

    /// `T_R`: one axiom `⋀a ⊢ ⋁_{y ∈ b} y` per rule.
    pub fn to_theory(&self) -> GeometricTheory {
        let axioms = self
            .rules
            .iter()
            .map(|r| GeometricAxiom {
                premise: r.premise.clone(),
                body: FormulaBody::disjunction_of(r.conclusion.iter().map(|y| 1u64 << y)),
            })
            .collect();
        GeometricTheory::new(&self.carrier, axioms).expect("axioms share the rule carrier")
    }
}

impl fmt::Display for RuleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rules {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

/// Reserved label of the fresh element introduced by [`RuleSet::binarize`].
pub const STAR: &str = "*";

/// The output of [`RuleSet::binarize`].
#[derive(Debug, Clone)]
pub struct Binarization {
    base: Arc<Carrier>,
    star: usize,
    rules: RuleSet,
}

impl Binarization {
    pub fn base(&self) -> &Arc<Carrier> {
        &self.base
    }

    pub fn extended(&self) -> &Arc<Carrier> {
        self.rules.carrier()
    }

    pub fn star(&self) -> usize {
        self.star
    }

    pub fn rules(&self) -> &RuleSet {
        &self.rules
    }

    /// `H = {α ∩ S | α ∈ G, * ∈ α}`.
    pub fn restrict_generators(&self, g: &SubsetFamily) -> Result<SubsetFamily> {
        ensure_same(self.extended(), g.carrier())?;
        let star = 1u64 << self.star;
        let base_mask = self.base.full_mask();
        Ok(SubsetFamily::from_masks(
            &self.base,
            g.masks()
                .iter()
                .filter(|&&m| m & star != 0)
                .map(|&m| m & base_mask),
        ))
    }

    /// `β ∪ {*}` on the extended carrier.
    pub fn extend(&self, beta: &Subset) -> Result<Subset> {
        ensure_same(&self.base, beta.carrier())?;
        Ok(Subset::from_mask(
            self.extended(),
            beta.mask() | (1 << self.star),
        ))
    }
}

/// The rule set on `Fin(S)` whose closed subsets correspond to the models
/// of a rank-1 theory `T`, in the order
/// `(∅, {∅})`, `({A},{B})` for `B ⊆ A`, `({A,B},{A ∪ B})` for all `A, B`,
/// then `({A}, {Bᵢ})` per axiom `⋀A ⊢ ⋁ᵢ ⋀Bᵢ`.
///
/// The join family ranges over ordered pairs, so `{A,B}` with `A ≠ B`
/// appears twice.
pub fn rules_from_theory(t: &GeometricTheory) -> Result<(FinCarrier, RuleSet)> {
    let fin = fin_carrier(t.carrier())?;
    let n = fin.size();
    let mut pairs: Vec<(u64, u64)> = Vec::new();
    // (∅, {∅})
    pairs.push((0, 1));
    // ({A}, {B}) for B ⊆ A
    for a in 0..n as u64 {
        for b in submasks(a) {
            pairs.push((1 << a, 1 << b));
        }
    }
    // ({A, B}, {A ∪ B})
    for a in 0..n as u64 {
        for b in 0..n as u64 {
            pairs.push(((1 << a) | (1 << b), 1 << (a | b)));
        }
    }
    for (index, ax) in t.axioms().iter().enumerate() {
        let gamma = ax.body.as_rank1().ok_or(Error::NotRankOne { index })?;
        let conclusion = gamma.iter().fold(0u64, |m, &bi| m | (1 << bi));
        pairs.push((1 << ax.premise.mask(), conclusion));
    }
    let rules = RuleSet::from_masks(fin.carrier(), pairs);
    Ok((fin, rules))
}

/// `Φ(α) = ⋃α`.
pub fn phi(fin: &FinCarrier, alpha: &Subset) -> Result<Subset> {
    ensure_same(fin.carrier(), alpha.carrier())?;
    let m = alpha.iter().fold(0u64, |m, i| m | i as u64);
    Ok(Subset::from_mask(fin.base(), m))
}

/// `Ψ(m) = Fin(m)`, as a subset of `Fin(S)`.
pub fn psi(fin: &FinCarrier, m: &Subset) -> Result<Subset> {
    ensure_same(fin.base(), m.carrier())?;
    let mask = submasks(m.mask()).fold(0u64, |acc, a| acc | (1 << a));
    Ok(Subset::from_mask(fin.carrier(), mask))
}

/// The theory `T_R` of a rule set; see [`RuleSet::to_theory`].
pub fn theory_from_rules(r: &RuleSet) -> GeometricTheory {
    r.to_theory()
}
