//! Propositional geometric theories over a finite carrier.
//!
//! An axiom is `⋀σ ⊢ φ` where `σ` is a subset and `φ` an And/Or tree over
//! atoms. Rank-1 axioms have bodies `⋁ᵢ ⋀Bᵢ`; deeper alternations give the
//! rank-n theories, of which the formal-topology-map encoding in
//! [`crate::ftop`] is an instance.

use std::fmt;
use std::sync::Arc;

use crate::carrier::{bits, ensure_same, Carrier, Subset, SubsetFamily};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FormulaBody {
    Or(Vec<FormulaBody>),
    And(Vec<FormulaBody>),
    Atom(usize),
}

impl FormulaBody {
    /// `⋁_{U ∈ Γ} ⋀U` for a family `Γ` given by masks.
    pub fn disjunction_of(conjuncts: impl IntoIterator<Item = u64>) -> FormulaBody {
        FormulaBody::Or(
            conjuncts
                .into_iter()
                .map(|m| FormulaBody::And(bits(m).map(FormulaBody::Atom).collect()))
                .collect(),
        )
    }

    pub fn truth() -> FormulaBody {
        FormulaBody::And(Vec::new())
    }

    pub fn falsity() -> FormulaBody {
        FormulaBody::Or(Vec::new())
    }

    /// Evaluates the body in the model whose true atoms are `mask`.
    pub fn eval(&self, mask: u64) -> bool {
        match self {
            FormulaBody::Atom(i) => *i < 64 && mask & (1 << i) != 0,
            FormulaBody::And(cs) => cs.iter().all(|c| c.eval(mask)),
            FormulaBody::Or(cs) => cs.iter().any(|c| c.eval(mask)),
        }
    }

    /// Number of `Or` levels on the deepest branch: `⋁⋀` is rank 1,
    /// `⋁⋀⋁⋀` rank 2, atoms and pure conjunctions rank 0.
    pub fn rank(&self) -> usize {
        match self {
            FormulaBody::Atom(_) => 0,
            FormulaBody::And(cs) => cs.iter().map(FormulaBody::rank).max().unwrap_or(0),
            FormulaBody::Or(cs) => 1 + cs.iter().map(FormulaBody::rank).max().unwrap_or(0),
        }
    }

    /// Strict alternating normal form of the given rank: `Or` of `And`s whose
    /// children are atoms (rank 1) or normal forms of rank `n - 1`.
    pub fn is_normal_form(&self, rank: usize) -> bool {
        let FormulaBody::Or(disjuncts) = self else {
            return false;
        };
        if rank == 0 {
            return false;
        }
        disjuncts.iter().all(|d| match d {
            FormulaBody::And(factors) => factors.iter().all(|f| match f {
                FormulaBody::Atom(_) => rank == 1,
                other => rank > 1 && other.is_normal_form(rank - 1),
            }),
            _ => false,
        })
    }

    /// Reads a rank-1 body as its family `Γ` of conjunct masks.
    ///
    /// Nested `Or`s inside an `Or` and nested `And`s inside an `And` are
    /// flattened, so `q | false`, a bare `⋀B` and a bare atom all qualify.
    pub fn as_rank1(&self) -> Option<Vec<u64>> {
        fn conj(f: &FormulaBody) -> Option<u64> {
            match f {
                FormulaBody::Atom(i) => Some(1 << i),
                FormulaBody::And(cs) => cs.iter().try_fold(0u64, |m, c| conj(c).map(|c| m | c)),
                FormulaBody::Or(ds) if ds.len() == 1 => conj(&ds[0]),
                FormulaBody::Or(_) => None,
            }
        }
        fn disj(f: &FormulaBody, out: &mut Vec<u64>) -> Option<()> {
            match f {
                FormulaBody::Or(ds) => ds.iter().try_for_each(|d| disj(d, out)),
                other => {
                    out.push(conj(other)?);
                    Some(())
                }
            }
        }
        let mut out = Vec::new();
        disj(self, &mut out)?;
        Some(out)
    }

    pub fn max_atom(&self) -> Option<usize> {
        match self {
            FormulaBody::Atom(i) => Some(*i),
            FormulaBody::And(cs) | FormulaBody::Or(cs) => {
                cs.iter().filter_map(FormulaBody::max_atom).max()
            }
        }
    }

    pub fn display<'a>(&'a self, carrier: &'a Carrier) -> BodyDisplay<'a> {
        BodyDisplay {
            body: self,
            carrier,
        }
    }
}

/// Renders a body with `|`, `&`, parentheses, `true` and `false`.
///
/// Trees shaped like the parser's output (`Or` of `And` of atoms or
/// parenthesised `Or`s) print back to text that parses to the same tree.
pub struct BodyDisplay<'a> {
    body: &'a FormulaBody,
    carrier: &'a Carrier,
}

impl BodyDisplay<'_> {
    fn disj(&self, f: &mut fmt::Formatter<'_>, b: &FormulaBody) -> fmt::Result {
        match b {
            FormulaBody::Or(ds) if ds.is_empty() => f.write_str("false"),
            FormulaBody::Or(ds) => {
                for (k, d) in ds.iter().enumerate() {
                    if k > 0 {
                        f.write_str(" | ")?;
                    }
                    self.conj(f, d)?;
                }
                Ok(())
            }
            other => self.conj(f, other),
        }
    }

    fn conj(&self, f: &mut fmt::Formatter<'_>, b: &FormulaBody) -> fmt::Result {
        match b {
            FormulaBody::And(cs) if cs.is_empty() => f.write_str("true"),
            FormulaBody::And(cs) => {
                for (k, c) in cs.iter().enumerate() {
                    if k > 0 {
                        f.write_str(" & ")?;
                    }
                    self.factor(f, c)?;
                }
                Ok(())
            }
            other => self.factor(f, other),
        }
    }

    fn factor(&self, f: &mut fmt::Formatter<'_>, b: &FormulaBody) -> fmt::Result {
        match b {
            FormulaBody::Atom(i) => f.write_str(self.carrier.label(*i)),
            other => {
                f.write_str("(")?;
                self.disj(f, other)?;
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for BodyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.disj(f, self.body)
    }
}

fn check_atoms(carrier: &Carrier, body: &FormulaBody) -> Result<()> {
    match body.max_atom() {
        Some(i) if i >= carrier.size() => Err(Error::UnknownElement {
            carrier: carrier.name().to_string(),
            label: format!("#{i}"),
        }),
        _ => Ok(()),
    }
}

/// `alpha ⊨ phi`.
pub fn satisfies(alpha: &Subset, phi: &FormulaBody) -> Result<bool> {
    check_atoms(alpha.carrier(), phi)?;
    Ok(phi.eval(alpha.mask()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeometricAxiom {
    pub premise: Subset,
    pub body: FormulaBody,
}

impl GeometricAxiom {
    pub fn holds_in(&self, mask: u64) -> bool {
        self.premise.mask() & !mask != 0 || self.body.eval(mask)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeometricTheory {
    carrier: Arc<Carrier>,
    axioms: Vec<GeometricAxiom>,
}

impl GeometricTheory {
    pub fn new(carrier: &Arc<Carrier>, axioms: Vec<GeometricAxiom>) -> Result<GeometricTheory> {
        for ax in &axioms {
            ensure_same(carrier, ax.premise.carrier())?;
            check_atoms(carrier, &ax.body)?;
        }
        Ok(GeometricTheory {
            carrier: carrier.clone(),
            axioms,
        })
    }

    pub fn empty(carrier: &Arc<Carrier>) -> GeometricTheory {
        GeometricTheory {
            carrier: carrier.clone(),
            axioms: Vec::new(),
        }
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    pub fn axioms(&self) -> &[GeometricAxiom] {
        &self.axioms
    }

    pub fn rank(&self) -> usize {
        self.axioms.iter().map(|a| a.body.rank()).max().unwrap_or(0)
    }

    /// Every axiom body reads as `⋁ᵢ ⋀Bᵢ`.
    pub fn is_rank1(&self) -> bool {
        self.axioms.iter().all(|a| a.body.as_rank1().is_some())
    }

    pub fn is_model(&self, alpha: &Subset) -> Result<bool> {
        ensure_same(&self.carrier, alpha.carrier())?;
        Ok(self.is_model_mask(alpha.mask()))
    }

    pub fn is_model_mask(&self, mask: u64) -> bool {
        self.axioms.iter().all(|a| a.holds_in(mask))
    }

    /// `Mod(T)`, the class `M(Z)`, in canonical order.
    pub fn enumerate_models(&self) -> Result<SubsetFamily> {
        let masks = crate::carrier::all_masks("model enumeration", &self.carrier)?;
        Ok(SubsetFamily::from_masks(
            &self.carrier,
            masks.filter(|&m| self.is_model_mask(m)),
        ))
    }

    pub fn display(&self) -> TheoryDisplay<'_> {
        TheoryDisplay(self)
    }
}

/// One axiom per line as `{σ} |- body`.
pub struct TheoryDisplay<'a>(&'a GeometricTheory);

impl fmt::Display for TheoryDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.0.carrier;
        for ax in &self.0.axioms {
            writeln!(f, "{} |- {}", ax.premise, ax.body.display(c))?;
        }
        Ok(())
    }
}
