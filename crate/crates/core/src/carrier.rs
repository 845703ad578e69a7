//! Finite carriers and their subsets.
//!
//! A [`Subset`] is a characteristic bit-vector: bit `i` stands for the `i`-th
//! declared element. Families of subsets are kept in canonical order, which
//! is ascending mask value.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::limits::{self, MAX_CARRIER};

/// Bits of `mask`, lowest first.
pub fn bits(mask: u64) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        }
    })
}

/// All submasks of `mask` in ascending order, `0` and `mask` included.
pub fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == mask {
            None
        } else {
            Some(((cur | !mask).wrapping_add(1)) & mask)
        };
        Some(cur)
    })
}

pub(crate) fn full_mask(size: usize) -> u64 {
    if size >= 64 {
        u64::MAX
    } else {
        (1u64 << size) - 1
    }
}

/// A named finite set with a fixed element order.
#[derive(Debug, Clone, Eq)]
pub struct Carrier {
    name: String,
    labels: Vec<String>,
}

impl PartialEq for Carrier {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other) || (self.name == other.name && self.labels == other.labels)
    }
}

impl Hash for Carrier {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.name.hash(state);
        self.labels.hash(state);
    }
}

impl Carrier {
    pub fn new<N, I, L>(name: N, labels: I) -> Result<Arc<Carrier>>
    where
        N: Into<String>,
        I: IntoIterator<Item = L>,
        L: Into<String>,
    {
        let name = name.into();
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() > MAX_CARRIER {
            return Err(Error::LimitExceeded {
                what: "carrier size",
                size: labels.len(),
                limit: MAX_CARRIER,
            });
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel {
                    carrier: name,
                    label: l.clone(),
                });
            }
        }
        Ok(Arc::new(Carrier { name, labels }))
    }

    /// A carrier with elements labelled `0`, `1`, ... `n-1`.
    pub fn indexed(name: impl Into<String>, n: usize) -> Result<Arc<Carrier>> {
        Carrier::new(name, (0..n).map(|i| i.to_string()))
    }

    /// The one-element carrier `{*}`.
    pub fn singleton(name: impl Into<String>) -> Arc<Carrier> {
        Carrier::new(name, ["*"]).expect("valid one-element carrier")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn full_mask(&self) -> u64 {
        full_mask(self.size())
    }

    pub(crate) fn mask_label(&self, mask: u64) -> String {
        let mut out = String::from("{");
        for (k, i) in bits(mask).enumerate() {
            if k > 0 {
                out.push_str(", ");
            }
            out.push_str(&self.labels[i]);
        }
        out.push('}');
        out
    }
}

pub(crate) fn ensure_same(expected: &Arc<Carrier>, found: &Arc<Carrier>) -> Result<()> {
    if Arc::ptr_eq(expected, found) || expected == found {
        Ok(())
    } else {
        Err(Error::CarrierMismatch {
            expected: expected.name().to_string(),
            found: found.name().to_string(),
        })
    }
}

/// A subset of a carrier.
#[derive(Clone)]
pub struct Subset {
    carrier: Arc<Carrier>,
    mask: u64,
}

impl Subset {
    pub fn empty(carrier: &Arc<Carrier>) -> Subset {
        Subset {
            carrier: carrier.clone(),
            mask: 0,
        }
    }

    pub fn full(carrier: &Arc<Carrier>) -> Subset {
        Subset {
            carrier: carrier.clone(),
            mask: carrier.full_mask(),
        }
    }

    /// Panics if `mask` has bits outside the carrier.
    pub fn from_mask(carrier: &Arc<Carrier>, mask: u64) -> Subset {
        assert!(
            mask & !carrier.full_mask() == 0,
            "mask {mask:#b} out of range for carrier `{}`",
            carrier.name()
        );
        Subset {
            carrier: carrier.clone(),
            mask,
        }
    }

    pub fn from_indices(
        carrier: &Arc<Carrier>,
        indices: impl IntoIterator<Item = usize>,
    ) -> Subset {
        let mask = indices.into_iter().fold(0u64, |m, i| {
            assert!(i < carrier.size(), "index {i} out of range");
            m | (1 << i)
        });
        Subset {
            carrier: carrier.clone(),
            mask,
        }
    }

    pub fn from_labels<S: AsRef<str>>(carrier: &Arc<Carrier>, labels: &[S]) -> Result<Subset> {
        let mut mask = 0u64;
        for l in labels {
            let i = carrier
                .index_of(l.as_ref())
                .ok_or_else(|| Error::UnknownElement {
                    carrier: carrier.name().to_string(),
                    label: l.as_ref().to_string(),
                })?;
            mask |= 1 << i;
        }
        Ok(Subset {
            carrier: carrier.clone(),
            mask,
        })
    }

    pub fn singleton(carrier: &Arc<Carrier>, i: usize) -> Subset {
        Subset::from_indices(carrier, [i])
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn contains(&self, i: usize) -> bool {
        i < 64 && self.mask & (1 << i) != 0
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn is_inhabited(&self) -> bool {
        self.mask != 0
    }

    /// Element indices in declared order.
    pub fn iter(&self) -> impl Iterator<Item = usize> {
        bits(self.mask)
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        bits(self.mask).map(|i| self.carrier.label(i))
    }

    fn check(&self, other: &Subset) -> Result<()> {
        ensure_same(&self.carrier, &other.carrier)
    }

    pub fn union(&self, other: &Subset) -> Result<Subset> {
        self.check(other)?;
        Ok(self.with_mask(self.mask | other.mask))
    }

    pub fn intersection(&self, other: &Subset) -> Result<Subset> {
        self.check(other)?;
        Ok(self.with_mask(self.mask & other.mask))
    }

    pub fn difference(&self, other: &Subset) -> Result<Subset> {
        self.check(other)?;
        Ok(self.with_mask(self.mask & !other.mask))
    }

    pub fn complement(&self) -> Subset {
        self.with_mask(!self.mask & self.carrier.full_mask())
    }

    pub fn is_subset_of(&self, other: &Subset) -> Result<bool> {
        self.check(other)?;
        Ok(self.mask & !other.mask == 0)
    }

    /// `self ≬ other`: the two subsets share an element.
    pub fn meets(&self, other: &Subset) -> Result<bool> {
        self.check(other)?;
        Ok(self.mask & other.mask != 0)
    }

    pub(crate) fn with_mask(&self, mask: u64) -> Subset {
        Subset {
            carrier: self.carrier.clone(),
            mask,
        }
    }
}

/// True iff `a ∩ b` is inhabited.
pub fn meets(a: &Subset, b: &Subset) -> Result<bool> {
    a.meets(b)
}

impl PartialEq for Subset {
    fn eq(&self, other: &Self) -> bool {
        self.mask == other.mask && self.carrier == other.carrier
    }
}

impl Eq for Subset {}

impl Hash for Subset {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.carrier.name().hash(state);
        self.mask.hash(state);
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.mask
            .cmp(&other.mask)
            .then_with(|| self.carrier.name().cmp(other.carrier.name()))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.carrier.mask_label(self.mask))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.carrier.name(), self)
    }
}

/// A duplicate-free family of subsets of one carrier, in canonical order.
#[derive(Clone, PartialEq, Eq)]
pub struct SubsetFamily {
    carrier: Arc<Carrier>,
    masks: Vec<u64>,
}

impl SubsetFamily {
    pub fn empty(carrier: &Arc<Carrier>) -> SubsetFamily {
        SubsetFamily {
            carrier: carrier.clone(),
            masks: Vec::new(),
        }
    }

    pub fn new<'a>(
        carrier: &Arc<Carrier>,
        members: impl IntoIterator<Item = &'a Subset>,
    ) -> Result<SubsetFamily> {
        let mut masks = Vec::new();
        for m in members {
            ensure_same(carrier, m.carrier())?;
            masks.push(m.mask);
        }
        Ok(SubsetFamily::from_masks(carrier, masks))
    }

    /// Sorts and deduplicates. Panics on out-of-range masks.
    pub fn from_masks(
        carrier: &Arc<Carrier>,
        masks: impl IntoIterator<Item = u64>,
    ) -> SubsetFamily {
        let full = carrier.full_mask();
        let mut masks: Vec<u64> = masks.into_iter().collect();
        assert!(masks.iter().all(|m| m & !full == 0), "mask out of range");
        masks.sort_unstable();
        masks.dedup();
        SubsetFamily {
            carrier: carrier.clone(),
            masks,
        }
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    pub fn masks(&self) -> &[u64] {
        &self.masks
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn get(&self, i: usize) -> Subset {
        Subset::from_mask(&self.carrier, self.masks[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = Subset> + '_ {
        self.masks
            .iter()
            .map(|&m| Subset::from_mask(&self.carrier, m))
    }

    pub fn contains(&self, s: &Subset) -> bool {
        s.carrier == self.carrier && self.contains_mask(s.mask)
    }

    pub fn contains_mask(&self, mask: u64) -> bool {
        self.masks.binary_search(&mask).is_ok()
    }

    pub fn is_subfamily_of(&self, other: &SubsetFamily) -> bool {
        self.carrier == other.carrier && self.masks.iter().all(|&m| other.contains_mask(m))
    }

    pub fn filter(&self, mut keep: impl FnMut(u64) -> bool) -> SubsetFamily {
        SubsetFamily {
            carrier: self.carrier.clone(),
            masks: self.masks.iter().copied().filter(|&m| keep(m)).collect(),
        }
    }
}

impl fmt::Display for SubsetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &m in &self.masks {
            writeln!(f, "{}", self.carrier.mask_label(m))?;
        }
        Ok(())
    }
}

impl fmt::Debug for SubsetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self
            .masks
            .iter()
            .map(|&m| self.carrier.mask_label(m))
            .collect();
        write!(f, "{}:[{}]", self.carrier.name(), items.join(", "))
    }
}

/// All `2^|c|` subsets in canonical order.
pub fn powerset(c: &Arc<Carrier>) -> Result<SubsetFamily> {
    limits::check_powerset("powerset", c.size())?;
    Ok(SubsetFamily {
        carrier: c.clone(),
        masks: (0..=c.full_mask()).collect(),
    })
}

/// Masks `0..2^n` after a limit check, for internal enumerations.
pub(crate) fn all_masks(what: &'static str, c: &Carrier) -> Result<std::ops::RangeInclusive<u64>> {
    limits::check_powerset(what, c.size())?;
    Ok(0..=c.full_mask())
}

/// `Fin(S)`: a carrier whose `i`-th element is the subset of the base with mask `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCarrier {
    base: Arc<Carrier>,
    carrier: Arc<Carrier>,
}

pub fn fin_carrier(c: &Arc<Carrier>) -> Result<FinCarrier> {
    limits::check_fin_base("Fin(S) base", c.size())?;
    let labels = (0..=c.full_mask()).map(|m| c.mask_label(m));
    let carrier = Carrier::new(format!("Fin({})", c.name()), labels)?;
    Ok(FinCarrier {
        base: c.clone(),
        carrier,
    })
}

impl FinCarrier {
    pub fn base(&self) -> &Arc<Carrier> {
        &self.base
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    pub fn size(&self) -> usize {
        self.carrier.size()
    }

    /// The element of `Fin(S)` naming `s`.
    pub fn element(&self, s: &Subset) -> Result<usize> {
        ensure_same(&self.base, s.carrier())?;
        Ok(s.mask() as usize)
    }

    /// The subset of the base named by element `i`.
    pub fn decode(&self, i: usize) -> Subset {
        Subset::from_mask(&self.base, i as u64)
    }

    /// `{s}` as a subset of `Fin(S)`.
    pub fn singleton_of(&self, s: &Subset) -> Result<Subset> {
        Ok(Subset::singleton(&self.carrier, self.element(s)?))
    }
}

/// `S × T` with labels `(a,b)`; element `(i, j)` has index `i * |T| + j`.
pub fn product_carrier(s: &Arc<Carrier>, t: &Arc<Carrier>) -> Result<Arc<Carrier>> {
    let size = s.size() * t.size();
    if size > MAX_CARRIER {
        return Err(Error::LimitExceeded {
            what: "product carrier size",
            size,
            limit: MAX_CARRIER,
        });
    }
    let mut labels = Vec::with_capacity(size);
    for a in s.labels() {
        for b in t.labels() {
            labels.push(format!("({a},{b})"));
        }
    }
    Carrier::new(format!("{}x{}", s.name(), t.name()), labels)
}
