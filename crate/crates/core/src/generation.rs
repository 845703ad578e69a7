//! Set-generation of a class of subsets by a subfamily.

use crate::carrier::{bits, ensure_same, submasks, Subset, SubsetFamily};
use crate::error::Result;
use crate::limits;

/// Outcome of a generation check, with a counterexample on failure.
///
/// For [`generates`] the witness is `(α, x)` with `x ∈ α` not covered; for
/// [`strongly_generates`] it is `(α, σ)` with `σ ⊆ α` not covered.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenerationReport {
    pub generates: bool,
    pub witness_failure: Option<(Subset, Witness)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Element(usize),
    Finite(Subset),
}

impl GenerationReport {
    fn ok() -> GenerationReport {
        GenerationReport {
            generates: true,
            witness_failure: None,
        }
    }

    fn fail(alpha: Subset, w: Witness) -> GenerationReport {
        GenerationReport {
            generates: false,
            witness_failure: Some((alpha, w)),
        }
    }
}

/// `∀α ∈ C ∀x ∈ α ∃β ∈ G (x ∈ β ⊆ α)`.
pub fn generates(g: &SubsetFamily, c: &SubsetFamily) -> Result<GenerationReport> {
    ensure_same(c.carrier(), g.carrier())?;
    for &alpha in c.masks() {
        let covered = g
            .masks()
            .iter()
            .filter(|&&b| b & !alpha == 0)
            .fold(0u64, |acc, &b| acc | b);
        let missing = alpha & !covered;
        if missing != 0 {
            let x = missing.trailing_zeros() as usize;
            return Ok(GenerationReport::fail(
                Subset::from_mask(c.carrier(), alpha),
                Witness::Element(x),
            ));
        }
    }
    Ok(GenerationReport::ok())
}

/// [`generates`] together with `G ⊆ C`.
pub fn generates_within(g: &SubsetFamily, c: &SubsetFamily) -> Result<bool> {
    Ok(g.is_subfamily_of(c) && generates(g, c)?.generates)
}

/// `∀α ∈ C ∀σ ∈ Fin(α) ∃β ∈ G (σ ⊆ β ⊆ α)`, with `σ = ∅` included.
pub fn strongly_generates(g: &SubsetFamily, c: &SubsetFamily) -> Result<GenerationReport> {
    ensure_same(c.carrier(), g.carrier())?;
    for &alpha in c.masks() {
        limits::check_powerset(
            "finite subsets of a class member",
            alpha.count_ones() as usize,
        )?;
        let inside: Vec<u64> = g
            .masks()
            .iter()
            .copied()
            .filter(|&b| b & !alpha == 0)
            .collect();
        for sigma in submasks(alpha) {
            if !inside.iter().any(|&b| sigma & !b == 0) {
                return Ok(GenerationReport::fail(
                    Subset::from_mask(c.carrier(), alpha),
                    Witness::Finite(Subset::from_mask(c.carrier(), sigma)),
                ));
            }
        }
    }
    Ok(GenerationReport::ok())
}

/// The least generating subfamily of `C`.
///
/// `β ∈ C` is essential when some `x ∈ β` lies in no other `γ ∈ C` with
/// `γ ⊆ β`. Any generating `G ⊆ C` must contain every essential `β`: the
/// only way to cover that `x` below `β` is `β` itself. Conversely the
/// essential members generate: given `x ∈ α ∈ C`, pick a ⊆-minimal
/// `β ∈ C` with `x ∈ β ⊆ α`; nothing strictly below `β` contains `x`, so
/// `β` is essential. Hence the essential members form the minimum.
pub fn minimal_generating(c: &SubsetFamily) -> SubsetFamily {
    c.filter(|beta| {
        let below = c
            .masks()
            .iter()
            .filter(|&&gamma| gamma != beta && gamma & !beta == 0)
            .fold(0u64, |acc, &gamma| acc | gamma);
        bits(beta).any(|x| below & (1 << x) == 0)
    })
}

/// The least strongly generating subfamily, which is `C` itself: taking
/// `σ = α` forces `α ∈ G` for every finite `α ∈ C`.
pub fn minimal_strongly_generating(c: &SubsetFamily) -> SubsetFamily {
    c.clone()
}
