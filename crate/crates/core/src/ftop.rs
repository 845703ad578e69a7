//! Inductively generated formal topologies on a finite preorder.
//!
//! A topology is a preorder with an axiom-set `(I, C)`; its cover `⊲` is the
//! least relation closed under the formal-topology conditions, computed as
//! a table `cover[U] = {a | a ⊲ U}` over all `U ⊆ S`.

use std::sync::{Arc, OnceLock};

use crate::carrier::{
    all_masks, bits, ensure_same, fin_carrier, product_carrier, Carrier, FinCarrier, Subset,
    SubsetFamily,
};
use crate::error::{Error, Result};
use crate::geom::{FormulaBody, GeometricAxiom, GeometricTheory};
use crate::limits;
use crate::relcat::{preimage_mask, Relation};
use crate::rules::RuleSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Preorder {
    carrier: Arc<Carrier>,
    /// `up[a] = {b | a ≤ b}`
    up: Vec<u64>,
    /// `down[b] = {a | a ≤ b}`
    down: Vec<u64>,
}

impl Preorder {
    /// Validates `leq` (with `a leq b` meaning `a ≤ b`) as reflexive and transitive.
    pub fn new(leq: &Relation) -> Result<Preorder> {
        let c = leq.src();
        ensure_same(c, leq.dst())?;
        let up = leq.rows().to_vec();
        for a in 0..c.size() {
            if up[a] & (1 << a) == 0 {
                return Err(Error::NotPreorder {
                    carrier: c.name().to_string(),
                    reason: format!("`{}` ≤ `{}` fails", c.label(a), c.label(a)),
                });
            }
            for b in bits(up[a]) {
                if let Some(d) = bits(up[b] & !up[a]).next() {
                    return Err(Error::NotPreorder {
                        carrier: c.name().to_string(),
                        reason: format!(
                            "`{}` ≤ `{}` ≤ `{}` but not `{}` ≤ `{}`",
                            c.label(a),
                            c.label(b),
                            c.label(d),
                            c.label(a),
                            c.label(d)
                        ),
                    });
                }
            }
        }
        Ok(Preorder::from_up(c, up))
    }

    /// The reflexive-transitive closure of the given pairs.
    pub fn generated_by(
        c: &Arc<Carrier>,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Preorder> {
        let mut up: Vec<u64> = (0..c.size()).map(|a| 1u64 << a).collect();
        for (a, b) in pairs {
            if a >= c.size() || b >= c.size() {
                return Err(Error::Precondition(format!("pair ({a}, {b}) out of range")));
            }
            up[a] |= 1 << b;
        }
        // Warshall
        for k in 0..c.size() {
            for a in 0..c.size() {
                if up[a] & (1 << k) != 0 {
                    up[a] |= up[k];
                }
            }
        }
        Ok(Preorder::from_up(c, up))
    }

    pub fn discrete(c: &Arc<Carrier>) -> Preorder {
        Preorder::from_up(c, (0..c.size()).map(|a| 1u64 << a).collect())
    }

    fn from_up(c: &Arc<Carrier>, up: Vec<u64>) -> Preorder {
        let mut down = vec![0u64; c.size()];
        for (a, &u) in up.iter().enumerate() {
            for b in bits(u) {
                down[b] |= 1 << a;
            }
        }
        Preorder {
            carrier: c.clone(),
            up,
            down,
        }
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a] & (1 << b) != 0
    }

    pub fn relation(&self) -> Relation {
        Relation::new(&self.carrier, &self.carrier, self.up.clone()).expect("rows fit the carrier")
    }

    /// `↓U = {c | ∃a ∈ U (c ≤ a)}`.
    pub fn lower(&self, u: u64) -> u64 {
        bits(u).fold(0u64, |m, a| m | self.down[a])
    }

    pub fn upper(&self, u: u64) -> u64 {
        bits(u).fold(0u64, |m, a| m | self.up[a])
    }

    /// `U ↓ V = ↓U ∩ ↓V`.
    pub fn meet(&self, u: u64, v: u64) -> u64 {
        self.lower(u) & self.lower(v)
    }
}

/// `U ↓ V = {c | ∃a ∈ U ∃b ∈ V (c ≤ a ∧ c ≤ b)}`.
pub fn down_leq(order: &Preorder, u: &Subset, v: &Subset) -> Result<Subset> {
    ensure_same(order.carrier(), u.carrier())?;
    ensure_same(order.carrier(), v.carrier())?;
    Ok(Subset::from_mask(
        order.carrier(),
        order.meet(u.mask(), v.mask()),
    ))
}

/// An axiom-set: `covers[a]` lists `C(a, i)` for `i ∈ I(a) = 0..len`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomSet {
    carrier: Arc<Carrier>,
    covers: Vec<Vec<u64>>,
}

impl AxiomSet {
    pub fn new(c: &Arc<Carrier>, covers: Vec<Vec<u64>>) -> Result<AxiomSet> {
        if covers.len() != c.size() {
            return Err(Error::Precondition(format!(
                "axiom-set on `{}` needs {} index families, got {}",
                c.name(),
                c.size(),
                covers.len()
            )));
        }
        if covers.iter().flatten().any(|&m| m & !c.full_mask() != 0) {
            return Err(Error::Precondition(
                "axiom cover leaves the carrier".to_string(),
            ));
        }
        Ok(AxiomSet {
            carrier: c.clone(),
            covers,
        })
    }

    pub fn empty(c: &Arc<Carrier>) -> AxiomSet {
        AxiomSet {
            carrier: c.clone(),
            covers: vec![Vec::new(); c.size()],
        }
    }

    /// Adds `C(a, i) = u` under the next index of `I(a)`.
    pub fn push(&mut self, a: usize, u: &Subset) -> Result<usize> {
        ensure_same(&self.carrier, u.carrier())?;
        self.covers[a].push(u.mask());
        Ok(self.covers[a].len() - 1)
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    pub fn covers(&self, a: usize) -> &[u64] {
        &self.covers[a]
    }

    pub fn len(&self) -> usize {
        self.covers.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `(a, i, C(a, i))` in index order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.covers
            .iter()
            .enumerate()
            .flat_map(|(a, cs)| cs.iter().enumerate().map(move |(i, &m)| (a, i, m)))
    }
}

/// `cover[U]` is the set of `a` with `a ⊲ U`, indexed by the mask of `U`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverTable {
    carrier: Arc<Carrier>,
    table: Vec<u64>,
}

impl CoverTable {
    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    pub fn table(&self) -> &[u64] {
        &self.table
    }

    pub fn covers(&self, a: usize, u: u64) -> bool {
        self.table[u as usize] & (1 << a) != 0
    }

    pub fn covered_by(&self, u: u64) -> u64 {
        self.table[u as usize]
    }

    /// `U ⊲ V ⟺ ∀a ∈ U (a ⊲ V)`.
    pub fn covers_all(&self, u: u64, v: u64) -> bool {
        u & !self.table[v as usize] == 0
    }
}

/// Saturates the cover table under: reflexivity, `a ≤ b ⊲ U ⟹ a ⊲ U`,
/// `a ⊲ C(a,i)`, `a ≤ b ⟹ a ⊲ {b}`, monotonicity in `U`, transitivity and
/// `a ⊲ U, a ⊲ V ⟹ a ⊲ U ↓ V`.
///
/// Monotonicity follows from reflexivity and transitivity, so adding it
/// does not move the fixpoint; it lets transitivity be one lookup.
pub fn generate_cover(order: &Preorder, axioms: &AxiomSet) -> Result<CoverTable> {
    let c = order.carrier();
    ensure_same(c, axioms.carrier())?;
    limits::check_cover("cover table", c.size())?;
    let n = c.size();
    let size = 1usize << n;
    let mut table: Vec<u64> = (0..size as u64).collect();
    for (a, _, m) in axioms.iter() {
        table[m as usize] |= 1 << a;
    }
    for b in 0..n {
        table[1 << b] |= order.down[b];
    }
    loop {
        let before = table.clone();
        for u in 0..size {
            // ≤-left closure
            table[u] = order.lower(table[u]);
            // monotonicity, ascending so one pass suffices
            let mut rest = u as u64;
            while rest != 0 {
                let x = rest.trailing_zeros();
                rest &= rest - 1;
                table[u] |= table[u & !(1 << x)];
            }
        }
        for v in 0..size {
            table[v] |= table[table[v] as usize];
        }
        for u in 0..size {
            for v in u..size {
                let both = table[u] & table[v];
                if both != 0 {
                    let m = order.meet(u as u64, v as u64) as usize;
                    table[m] |= both;
                }
            }
        }
        if table == before {
            break;
        }
    }
    Ok(CoverTable {
        carrier: c.clone(),
        table,
    })
}

/// A preorder with an axiom-set; the cover is computed on first use.
#[derive(Debug, Clone)]
pub struct InductiveTopology {
    order: Preorder,
    axioms: AxiomSet,
    cover: OnceLock<CoverTable>,
}

impl PartialEq for InductiveTopology {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.axioms == other.axioms
    }
}

impl InductiveTopology {
    pub fn new(order: Preorder, axioms: AxiomSet) -> Result<InductiveTopology> {
        ensure_same(order.carrier(), axioms.carrier())?;
        Ok(InductiveTopology {
            order,
            axioms,
            cover: OnceLock::new(),
        })
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        self.order.carrier()
    }

    pub fn order(&self) -> &Preorder {
        &self.order
    }

    pub fn axioms(&self) -> &AxiomSet {
        &self.axioms
    }

    pub fn cover(&self) -> Result<&CoverTable> {
        if let Some(t) = self.cover.get() {
            return Ok(t);
        }
        let t = generate_cover(&self.order, &self.axioms)?;
        Ok(self.cover.get_or_init(|| t))
    }
}

fn point_base(order: &Preorder, alpha: u64) -> bool {
    // P1 and P2
    alpha != 0 && bits(alpha).all(|a| bits(alpha).all(|b| order.meet(1 << a, 1 << b) & alpha != 0))
}

/// The point conditions, checked against the generated cover.
pub fn is_point(alpha: &Subset, t: &InductiveTopology) -> Result<bool> {
    ensure_same(t.carrier(), alpha.carrier())?;
    let cover = t.cover()?;
    Ok(is_point_mask(cover, t.order(), alpha.mask()))
}

fn is_point_mask(cover: &CoverTable, order: &Preorder, alpha: u64) -> bool {
    if !point_base(order, alpha) {
        return false;
    }
    // P3: no U missing α is covered by a member of α
    let outside = cover.carrier().full_mask() & !alpha;
    crate::carrier::submasks(outside).all(|u| cover.covered_by(u) & alpha == 0)
}

/// P1, P2, upward closure and `α ≬ C(a, i)` for `a ∈ α`.
pub fn is_point_axiomatic(alpha: &Subset, t: &InductiveTopology) -> Result<bool> {
    ensure_same(t.carrier(), alpha.carrier())?;
    Ok(is_point_axiomatic_mask(t, alpha.mask()))
}

fn is_point_axiomatic_mask(t: &InductiveTopology, alpha: u64) -> bool {
    point_base(t.order(), alpha)
        && t.order().upper(alpha) == alpha
        && bits(alpha).all(|a| t.axioms().covers(a).iter().all(|&c| c & alpha != 0))
}

/// Points by the axiomatic characterisation; no cover table needed.
pub fn enumerate_points(t: &InductiveTopology) -> Result<SubsetFamily> {
    let all = all_masks("point enumeration", t.carrier())?;
    Ok(SubsetFamily::from_masks(
        t.carrier(),
        all.filter(|&m| is_point_axiomatic_mask(t, m)),
    ))
}

/// Points by the point conditions over the generated cover.
pub fn enumerate_points_by_cover(t: &InductiveTopology) -> Result<SubsetFamily> {
    let cover = t.cover()?;
    let all = all_masks("point enumeration", t.carrier())?;
    Ok(SubsetFamily::from_masks(
        t.carrier(),
        all.filter(|&m| is_point_mask(cover, t.order(), m)),
    ))
}

/// `{(∅, S)} ∪ {({a,b}, a ↓ b)} ∪ {({a},{b}) | a ≤ b} ∪ {({a}, C(a,i))}`,
/// whose closed subsets are the points.
pub fn point_rules(t: &InductiveTopology) -> RuleSet {
    let c = t.carrier();
    let o = t.order();
    let n = c.size();
    let mut pairs = vec![(0u64, c.full_mask())];
    for a in 0..n {
        for b in a..n {
            pairs.push(((1 << a) | (1 << b), o.meet(1 << a, 1 << b)));
        }
    }
    for a in 0..n {
        for b in bits(o.up[a]) {
            pairs.push((1 << a, 1 << b));
        }
    }
    for (a, _, m) in t.axioms().iter() {
        pairs.push((1 << a, m));
    }
    RuleSet::from_masks(c, pairs)
}

/// The topology on `Fin(S)` ordered by `⊇` with `I(a)` the rules of
/// premise `a` and `C(a, (a,c)) = {{y} | y ∈ c}`.
pub fn topology_from_rules(r: &RuleSet) -> Result<(FinCarrier, InductiveTopology)> {
    let fin = fin_carrier(r.carrier())?;
    let c = fin.carrier();
    let leq = Relation::from_fn(c, c, |a, b| b & !a == 0);
    let order = Preorder::new(&leq)?;
    let mut covers = vec![Vec::new(); c.size()];
    for (a, b) in r.masks() {
        covers[a as usize].push(bits(b).fold(0u64, |m, y| m | (1 << (1u64 << y))));
    }
    let axioms = AxiomSet::new(c, covers)?;
    Ok((fin, InductiveTopology::new(order, axioms)?))
}

/// An axiom-set read as a presentation: `a ⊲ U ⟺ ∃i ∈ I(a) (C(a,i) ⊆ U)`,
/// validated to satisfy the formal-topology conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetPresentation {
    order: Preorder,
    axioms: AxiomSet,
}

impl SetPresentation {
    pub fn new(order: Preorder, axioms: AxiomSet) -> Result<SetPresentation> {
        ensure_same(order.carrier(), axioms.carrier())?;
        let p = SetPresentation { order, axioms };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        let c = self.carrier();
        limits::check_cover("presented cover validation", c.size())?;
        let n = c.size();
        let table: Vec<u64> = (0..=c.full_mask()).map(|u| self.covered_by(u)).collect();
        let bad = |what: String| Err(Error::InvalidPresentation(what));
        for (u, &cov) in table.iter().enumerate() {
            if let Some(a) = bits(u as u64 & !cov).next() {
                return bad(format!(
                    "`{}` is in {} but does not cover it",
                    c.label(a),
                    c.mask_label(u as u64)
                ));
            }
            if let Some(a) = bits(table[cov as usize] & !cov).next() {
                return bad(format!(
                    "transitivity fails for `{}` and {}",
                    c.label(a),
                    c.mask_label(u as u64)
                ));
            }
        }
        for u in 0..table.len() {
            for v in u..table.len() {
                let m = self.order.meet(u as u64, v as u64);
                if let Some(a) = bits(table[u] & table[v] & !table[m as usize]).next() {
                    return bad(format!(
                        "`{}` covers {} and {} but not their meet",
                        c.label(a),
                        c.mask_label(u as u64),
                        c.mask_label(v as u64)
                    ));
                }
            }
        }
        for a in 0..n {
            for b in bits(self.order.up[a]) {
                if table[1 << b] & (1 << a) == 0 {
                    return bad(format!(
                        "`{}` ≤ `{}` but `{}` does not cover it",
                        c.label(a),
                        c.label(b),
                        c.label(a)
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        self.order.carrier()
    }

    pub fn order(&self) -> &Preorder {
        &self.order
    }

    pub fn axioms(&self) -> &AxiomSet {
        &self.axioms
    }

    pub fn covers(&self, a: usize, u: u64) -> bool {
        self.axioms.covers(a).iter().any(|&c| c & !u == 0)
    }

    pub fn covered_by(&self, u: u64) -> u64 {
        (0..self.carrier().size())
            .filter(|&a| self.covers(a, u))
            .fold(0u64, |m, a| m | (1 << a))
    }

    /// `U ⊲ V ⟺ ∀a ∈ U (a ⊲ V)`.
    pub fn covers_all(&self, u: u64, v: u64) -> bool {
        bits(u).all(|a| self.covers(a, v))
    }
}

/// `𝟏 = ({*}, =, ∈)`, presented by `I(*) = {0}`, `C(*, 0) = {*}`, and the
/// same data as an inductively generated topology.
pub fn one_point() -> (SetPresentation, InductiveTopology) {
    let c = Carrier::singleton("1");
    let order = Preorder::discrete(&c);
    let axioms = AxiomSet::new(&c, vec![vec![1]]).expect("fits");
    let p = SetPresentation::new(order.clone(), axioms.clone()).expect("𝟏 is a formal topology");
    let t = InductiveTopology::new(order, axioms).expect("same carrier");
    (p, t)
}

/// `* r_α a ⟺ a ∈ α`, from the carrier of [`one_point`].
pub fn point_map(alpha: &Subset) -> Relation {
    let one = Carrier::singleton("1");
    Relation::new(&one, alpha.carrier(), vec![alpha.mask()]).expect("one row")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FtmFailure {
    /// `S ⊲ r⁻T` fails at `a`.
    Ftm1 { a: usize },
    /// `r⁻a ↓ r⁻b ⊲ r⁻(a ↓′ b)` fails.
    Ftm2 { a: usize, b: usize },
    /// `a ≤′ b` but `r⁻a ⋪ r⁻b`.
    Ftm3a { a: usize, b: usize },
    /// `r⁻a ⋪ r⁻C(a, i)`.
    Ftm3b { a: usize, i: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FtmReport {
    pub ftm: bool,
    pub failure: Option<FtmFailure>,
}

/// FTM1, FTM2, FTM3a and FTM3b, with source covers taken from the presentation.
pub fn is_ftm(
    r: &Relation,
    source: &SetPresentation,
    target: &InductiveTopology,
) -> Result<FtmReport> {
    ensure_same(source.carrier(), r.src())?;
    ensure_same(target.carrier(), r.dst())?;
    let fail = |f| {
        Ok(FtmReport {
            ftm: false,
            failure: Some(f),
        })
    };
    let s_all = source.carrier().full_mask();
    let pre = |v: u64| preimage_mask(r, v);
    let t_all = target.carrier().full_mask();
    if let Some(a) = bits(s_all).find(|&a| !source.covers(a, pre(t_all))) {
        return fail(FtmFailure::Ftm1 { a });
    }
    let n = target.carrier().size();
    let to = target.order();
    for a in 0..n {
        for b in a..n {
            let lhs = source.order().meet(pre(1 << a), pre(1 << b));
            if !source.covers_all(lhs, pre(to.meet(1 << a, 1 << b))) {
                return fail(FtmFailure::Ftm2 { a, b });
            }
        }
    }
    for a in 0..n {
        for b in bits(to.up[a]) {
            if !source.covers_all(pre(1 << a), pre(1 << b)) {
                return fail(FtmFailure::Ftm3a { a, b });
            }
        }
    }
    for (a, i, m) in target.axioms().iter() {
        if !source.covers_all(pre(1 << a), pre(m)) {
            return fail(FtmFailure::Ftm3b { a, i });
        }
    }
    Ok(FtmReport {
        ftm: true,
        failure: None,
    })
}

/// `r⁻a ⊲ s⁻a` and `s⁻a ⊲ r⁻a` for every `a`; on failure, the first such `a`.
pub fn ftm_difference(
    r: &Relation,
    s: &Relation,
    source: &SetPresentation,
) -> Result<Option<usize>> {
    ensure_same(source.carrier(), r.src())?;
    ensure_same(r.src(), s.src())?;
    ensure_same(r.dst(), s.dst())?;
    Ok((0..r.dst().size()).find(|&a| {
        let (x, y) = (preimage_mask(r, 1 << a), preimage_mask(s, 1 << a));
        !(source.covers_all(x, y) && source.covers_all(y, x))
    }))
}

pub fn ftm_equal(r: &Relation, s: &Relation, source: &SetPresentation) -> Result<bool> {
    Ok(ftm_difference(r, s, source)?.is_none())
}

/// The theory over `S × T` whose models are exactly the formal topology
/// maps from `source` to `target`. Atom `(a, b)` has index `a·|T| + b`.
pub fn ftm_theory(source: &SetPresentation, target: &InductiveTopology) -> Result<GeometricTheory> {
    let s = source.carrier();
    let t = target.carrier();
    let prod = product_carrier(s, t)?;
    let nt = t.size();
    let at = |a: usize, b: usize| a * nt + b;
    let lit = |a: usize, b: usize| FormulaBody::And(vec![FormulaBody::Atom(at(a, b))]);
    let to = target.order();
    let so = source.order();
    let sa = source.axioms();
    // ⋁_{i ∈ I(a)} ⋀_{a' ∈ C(a,i)} body(a')
    let over_cover = |a: usize, body: &dyn Fn(usize) -> FormulaBody| {
        FormulaBody::Or(
            sa.covers(a)
                .iter()
                .map(|&m| FormulaBody::And(bits(m).map(body).collect()))
                .collect(),
        )
    };
    let some_of = |targets: u64| {
        move |a2: usize| FormulaBody::Or(bits(targets).map(|d| lit(a2, d)).collect())
    };
    let mut axioms = Vec::new();
    let premise = |atoms: &[usize]| Subset::from_indices(&prod, atoms.iter().copied());

    for a in 0..s.size() {
        axioms.push(GeometricAxiom {
            premise: Subset::empty(&prod),
            body: over_cover(a, &some_of(t.full_mask())),
        });
    }
    for b1 in 0..s.size() {
        for b in 0..nt {
            for c1 in 0..s.size() {
                for c in 0..nt {
                    let meet = to.meet(1 << b, 1 << c);
                    for a in bits(so.meet(1 << b1, 1 << c1)) {
                        axioms.push(GeometricAxiom {
                            premise: premise(&[at(b1, b), at(c1, c)]),
                            body: over_cover(a, &some_of(meet)),
                        });
                    }
                }
            }
        }
    }
    for a in 0..s.size() {
        for b in 0..nt {
            for c in bits(to.up[b]) {
                axioms.push(GeometricAxiom {
                    premise: premise(&[at(a, b)]),
                    body: FormulaBody::Or(
                        sa.covers(a)
                            .iter()
                            .map(|&m| {
                                FormulaBody::And(
                                    bits(m).map(|a2| FormulaBody::Atom(at(a2, c))).collect(),
                                )
                            })
                            .collect(),
                    ),
                });
            }
        }
    }
    for a in 0..s.size() {
        for b in 0..nt {
            for &d in target.axioms().covers(b) {
                axioms.push(GeometricAxiom {
                    premise: premise(&[at(a, b)]),
                    body: over_cover(a, &some_of(d)),
                });
            }
        }
    }
    GeometricTheory::new(&prod, axioms)
}

/// The graph of `r : S → T` as a subset of `S × T`.
pub fn graph(r: &Relation, prod: &Arc<Carrier>) -> Result<Subset> {
    let nt = r.dst().size();
    if prod.size() != r.src().size() * nt {
        return Err(Error::Precondition(
            "product carrier does not match the relation".to_string(),
        ));
    }
    Ok(Subset::from_indices(
        prod,
        r.pairs().map(|(a, b)| a * nt + b),
    ))
}

/// The relation `S → T` whose graph is `m ⊆ S × T`.
pub fn ungraph(m: &Subset, s: &Arc<Carrier>, t: &Arc<Carrier>) -> Result<Relation> {
    if m.carrier().size() != s.size() * t.size() {
        return Err(Error::Precondition(
            "product carrier does not match the relation".to_string(),
        ));
    }
    let nt = t.size();
    Ok(Relation::from_fn(s, t, |a, b| m.contains(a * nt + b)))
}
