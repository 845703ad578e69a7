//! Finite sets and relations.
//!
//! A relation `X → Y` is stored as one mask over `Y` per element of `X`.

use std::fmt;
use std::sync::Arc;

use crate::carrier::{all_masks, bits, ensure_same, Carrier, Subset, SubsetFamily};
use crate::error::{Error, Result};
use crate::generation::minimal_generating;
use crate::rules::RuleSet;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    src: Arc<Carrier>,
    dst: Arc<Carrier>,
    rows: Vec<u64>,
}

impl Relation {
    pub fn new(src: &Arc<Carrier>, dst: &Arc<Carrier>, rows: Vec<u64>) -> Result<Relation> {
        if rows.len() != src.size() {
            return Err(Error::Precondition(format!(
                "relation from `{}` needs {} rows, got {}",
                src.name(),
                src.size(),
                rows.len()
            )));
        }
        if let Some(x) = rows.iter().position(|&r| r & !dst.full_mask() != 0) {
            return Err(Error::Precondition(format!(
                "row `{}` leaves the target `{}`",
                src.label(x),
                dst.name()
            )));
        }
        Ok(Relation {
            src: src.clone(),
            dst: dst.clone(),
            rows,
        })
    }

    pub fn empty(src: &Arc<Carrier>, dst: &Arc<Carrier>) -> Relation {
        Relation {
            src: src.clone(),
            dst: dst.clone(),
            rows: vec![0; src.size()],
        }
    }

    pub fn full(src: &Arc<Carrier>, dst: &Arc<Carrier>) -> Relation {
        Relation {
            src: src.clone(),
            dst: dst.clone(),
            rows: vec![dst.full_mask(); src.size()],
        }
    }

    /// Builds `{(x, y) | f(x, y)}`.
    pub fn from_fn(
        src: &Arc<Carrier>,
        dst: &Arc<Carrier>,
        mut f: impl FnMut(usize, usize) -> bool,
    ) -> Relation {
        let rows = (0..src.size())
            .map(|x| {
                (0..dst.size())
                    .filter(|&y| f(x, y))
                    .fold(0u64, |m, y| m | (1 << y))
            })
            .collect();
        Relation {
            src: src.clone(),
            dst: dst.clone(),
            rows,
        }
    }

    pub fn from_pairs(
        src: &Arc<Carrier>,
        dst: &Arc<Carrier>,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Relation> {
        let mut rows = vec![0u64; src.size()];
        for (x, y) in pairs {
            if x >= src.size() || y >= dst.size() {
                return Err(Error::Precondition(format!("pair ({x}, {y}) out of range")));
            }
            rows[x] |= 1 << y;
        }
        Ok(Relation {
            src: src.clone(),
            dst: dst.clone(),
            rows,
        })
    }

    pub fn src(&self) -> &Arc<Carrier> {
        &self.src
    }

    pub fn dst(&self) -> &Arc<Carrier> {
        &self.dst
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.rows[x] & (1 << y) != 0
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(x, &r)| bits(r).map(move |y| (x, y)))
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn is_subrelation_of(&self, other: &Relation) -> Result<bool> {
        self.same_shape(other)?;
        Ok(self.rows.iter().zip(&other.rows).all(|(a, b)| a & !b == 0))
    }

    pub fn union(&self, other: &Relation) -> Result<Relation> {
        self.same_shape(other)?;
        Ok(self.with_rows(
            self.rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| a | b)
                .collect(),
        ))
    }

    pub fn intersection(&self, other: &Relation) -> Result<Relation> {
        self.same_shape(other)?;
        Ok(self.with_rows(
            self.rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| a & b)
                .collect(),
        ))
    }

    fn with_rows(&self, rows: Vec<u64>) -> Relation {
        Relation {
            src: self.src.clone(),
            dst: self.dst.clone(),
            rows,
        }
    }

    fn same_shape(&self, other: &Relation) -> Result<()> {
        ensure_same(&self.src, &other.src)?;
        ensure_same(&self.dst, &other.dst)
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}:[", self.src.name(), self.dst.name())?;
        for (i, (x, y)) in self.pairs().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({}, {})", self.src.label(x), self.dst.label(y))?;
        }
        write!(f, "]")
    }
}

/// One `x -> y` pair per line, rows in source order.
impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (x, y) in self.pairs() {
            writeln!(f, "{} -> {}", self.src.label(x), self.dst.label(y))?;
        }
        Ok(())
    }
}

/// `g ∘ f`: `a (g∘f) c ⟺ ∃b (a f b ∧ b g c)`.
pub fn compose(g: &Relation, f: &Relation) -> Result<Relation> {
    ensure_same(f.dst(), g.src())?;
    let rows = f
        .rows
        .iter()
        .map(|&r| bits(r).fold(0u64, |m, b| m | g.rows[b]))
        .collect();
    Ok(Relation {
        src: f.src.clone(),
        dst: g.dst.clone(),
        rows,
    })
}

pub fn identity(c: &Arc<Carrier>) -> Relation {
    Relation {
        src: c.clone(),
        dst: c.clone(),
        rows: (0..c.size()).map(|i| 1u64 << i).collect(),
    }
}

pub fn converse(r: &Relation) -> Relation {
    let mut rows = vec![0u64; r.dst.size()];
    for (x, y) in r.pairs() {
        rows[y] |= 1 << x;
    }
    Relation {
        src: r.dst.clone(),
        dst: r.src.clone(),
        rows,
    }
}

/// `rU = {y | ∃x ∈ U (x r y)}`.
pub fn image(r: &Relation, u: &Subset) -> Result<Subset> {
    ensure_same(r.src(), u.carrier())?;
    Ok(Subset::from_mask(r.dst(), image_mask(r, u.mask())))
}

pub(crate) fn image_mask(r: &Relation, u: u64) -> u64 {
    bits(u).fold(0u64, |m, x| m | r.rows[x])
}

/// `r⁻y = {x | x r y}`.
pub fn preimage_of(r: &Relation, y: usize) -> Subset {
    Subset::from_mask(r.src(), preimage_mask(r, 1 << y))
}

/// `{x | ∃y ∈ V (x r y)}`.
pub fn preimage(r: &Relation, v: &Subset) -> Result<Subset> {
    ensure_same(r.dst(), v.carrier())?;
    Ok(Subset::from_mask(r.src(), preimage_mask(r, v.mask())))
}

pub(crate) fn preimage_mask(r: &Relation, v: u64) -> u64 {
    r.rows
        .iter()
        .enumerate()
        .filter(|(_, &row)| row & v != 0)
        .fold(0u64, |m, (x, _)| m | (1 << x))
}

/// `r z = {x | z r x}`.
pub fn row(r: &Relation, z: usize) -> Subset {
    Subset::from_mask(r.dst(), r.rows[z])
}

/// The greatest `v : B → C` with `v ∘ g ⊆ t`:
/// `b v c ⟺ ∀a (a g b ⟹ a t c)`.
pub fn left_residual(t: &Relation, g: &Relation) -> Result<Relation> {
    ensure_same(t.src(), g.src())?;
    let mut rows = vec![t.dst.full_mask(); g.dst.size()];
    for (a, b) in g.pairs() {
        rows[b] &= t.rows[a];
    }
    Ok(Relation {
        src: g.dst.clone(),
        dst: t.dst.clone(),
        rows,
    })
}

/// A weak equaliser of `r1, r2 : X → Y` whose apex elements name a
/// generating family of `{U | r1 U = r2 U}`.
#[derive(Debug, Clone)]
pub struct WeakEqualiser {
    pub apex: Arc<Carrier>,
    pub inclusion: Relation,
    pub generators: SubsetFamily,
    r1: Relation,
    r2: Relation,
}

impl WeakEqualiser {
    pub fn r1(&self) -> &Relation {
        &self.r1
    }

    pub fn r2(&self) -> &Relation {
        &self.r2
    }
}

/// `{U ∈ Pow(X) | r1 U = r2 U}`.
pub fn balanced_subsets(r1: &Relation, r2: &Relation) -> Result<SubsetFamily> {
    r1.same_shape(r2)?;
    let all = all_masks("weak-equaliser class", r1.src())?;
    Ok(SubsetFamily::from_masks(
        r1.src(),
        all.filter(|&u| image_mask(r1, u) == image_mask(r2, u)),
    ))
}

pub fn weak_equaliser(r1: &Relation, r2: &Relation) -> Result<WeakEqualiser> {
    let e = balanced_subsets(r1, r2)?;
    let generators = minimal_generating(&e);
    let (apex, inclusion) = family_inclusion("E", &generators)?;
    Ok(WeakEqualiser {
        apex,
        inclusion,
        generators,
        r1: r1.clone(),
        r2: r2.clone(),
    })
}

/// A carrier naming the members of `g`, with `U r x ⟺ x ∈ U`.
pub(crate) fn family_inclusion(name: &str, g: &SubsetFamily) -> Result<(Arc<Carrier>, Relation)> {
    let labels = g.masks().iter().map(|&m| g.carrier().mask_label(m));
    let apex = Carrier::new(name, labels)?;
    let inclusion = Relation {
        src: apex.clone(),
        dst: g.carrier().clone(),
        rows: g.masks().to_vec(),
    };
    Ok((apex, inclusion))
}

/// `z s̄ U ⟺ U ⊆ s z`, for a cone `s : Z → X` with `r1 ∘ s = r2 ∘ s`.
///
/// Weak equalisers do not have unique mediators; this is the canonical
/// (greatest) one.
pub fn mediate(w: &WeakEqualiser, s: &Relation) -> Result<Relation> {
    ensure_same(s.dst(), w.r1.src())?;
    let a = compose(&w.r1, s)?;
    let b = compose(&w.r2, s)?;
    if let Some((z, y)) = first_difference(&a, &b) {
        return Err(Error::Precondition(format!(
            "cone does not equalise: r1 and r2 disagree at `{}` -> `{}`",
            s.src().label(z),
            w.r1.dst().label(y)
        )));
    }
    Ok(Relation::from_fn(s.src(), &w.apex, |z, i| {
        w.generators.masks()[i] & !s.rows[z] == 0
    }))
}

/// Some `(x, y)` on which the relations differ.
pub fn first_difference(a: &Relation, b: &Relation) -> Option<(usize, usize)> {
    a.rows
        .iter()
        .zip(&b.rows)
        .enumerate()
        .find(|(_, (p, q))| p != q)
        .map(|(x, (p, q))| (x, (p ^ q).trailing_zeros() as usize))
}

/// `{(r1⁻y, r2⁻y) | y ∈ Y}`: its biclosed subsets are those `U` with `r1 U = r2 U`.
pub fn equalising_rules(r1: &Relation, r2: &Relation) -> Result<RuleSet> {
    r1.same_shape(r2)?;
    let pairs: Vec<_> = (0..r1.dst().size())
        .map(|y| (preimage_mask(r1, 1 << y), preimage_mask(r2, 1 << y)))
        .collect();
    Ok(RuleSet::from_masks(r1.src(), pairs))
}

/// Relations `r1, r2 : S → R` with `x rᵢ j` iff `x` is in the premise
/// (`i = 1`) or conclusion (`i = 2`) of rule `j`.
pub fn rules_as_relations(r: &RuleSet) -> Result<(Relation, Relation)> {
    let names = Carrier::indexed("R", r.len())?;
    let a: Vec<_> = r.masks().map(|(a, _)| a).collect();
    let b: Vec<_> = r.masks().map(|(_, b)| b).collect();
    let r1 = Relation::from_fn(r.carrier(), &names, |x, j| a[j] & (1 << x) != 0);
    let r2 = Relation::from_fn(r.carrier(), &names, |x, j| b[j] & (1 << x) != 0);
    Ok((r1, r2))
}

/// `{e z | z ∈ apex}` for an arrow `e : apex → X`.
pub fn row_family(e: &Relation) -> SubsetFamily {
    SubsetFamily::from_masks(e.dst(), e.rows.iter().copied())
}

/// `X ⊎ Y` with its injections and projections; a product and coproduct at once.
#[derive(Debug, Clone)]
pub struct Biproduct {
    pub carrier: Arc<Carrier>,
    pub inl: Relation,
    pub inr: Relation,
    pub outl: Relation,
    pub outr: Relation,
}

pub fn biproduct(x: &Arc<Carrier>, y: &Arc<Carrier>) -> Result<Biproduct> {
    let labels = x
        .labels()
        .iter()
        .map(|l| format!("inl({l})"))
        .chain(y.labels().iter().map(|l| format!("inr({l})")));
    let carrier = Carrier::new(format!("{}+{}", x.name(), y.name()), labels)?;
    let n = x.size();
    let inl = Relation::from_fn(x, &carrier, |a, c| c == a);
    let inr = Relation::from_fn(y, &carrier, |b, c| c == n + b);
    Ok(Biproduct {
        outl: converse(&inl),
        outr: converse(&inr),
        carrier,
        inl,
        inr,
    })
}

impl Biproduct {
    /// `⟨f, g⟩ : Z → X ⊎ Y`, the unique `h` with `outl ∘ h = f` and `outr ∘ h = g`.
    pub fn pairing(&self, f: &Relation, g: &Relation) -> Result<Relation> {
        compose(&self.inl, f)?.union(&compose(&self.inr, g)?)
    }

    /// `[f, g] : X ⊎ Y → Z`, the unique `h` with `h ∘ inl = f` and `h ∘ inr = g`.
    pub fn copairing(&self, f: &Relation, g: &Relation) -> Result<Relation> {
        compose(f, &self.outl)?.union(&compose(g, &self.outr)?)
    }
}
