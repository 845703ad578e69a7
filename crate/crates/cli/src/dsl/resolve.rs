//! Name resolution: turns a syntactic document into kernel values.

use std::collections::HashMap;
use std::sync::Arc;

use pfl_core::ftop::{AxiomSet, Preorder};
use pfl_core::{
    BasicPair, Carrier, FormulaBody, GeometricAxiom, GeometricTheory, Relation, Rule, RuleSet,
    Subset,
};

use super::ast::*;
use crate::error::{CliError, Result};

#[derive(Debug, Clone)]
pub struct Axioms {
    pub order: Preorder,
    pub axioms: AxiomSet,
    /// Entry labels, indexed like `axioms.covers(a)`.
    pub labels: Vec<Vec<String>>,
}

#[derive(Debug, Clone)]
pub enum Item {
    Carrier(Arc<Carrier>),
    Relation(Relation),
    Rules(RuleSet),
    Order(Preorder),
    Axioms(Axioms),
    Theory(GeometricTheory),
    Space(BasicPair),
}

impl Item {
    fn kind(&self) -> &'static str {
        match self {
            Item::Carrier(_) => "carrier",
            Item::Relation(_) => "relation",
            Item::Rules(_) => "rules",
            Item::Order(_) => "order",
            Item::Axioms(_) => "axioms",
            Item::Theory(_) => "theory",
            Item::Space(_) => "space",
        }
    }
}

/// The resolved declarations of a document, by name.
#[derive(Debug, Clone, Default)]
pub struct Env {
    items: HashMap<String, Item>,
}

macro_rules! getter {
    ($fn:ident, $variant:ident, $ty:ty, $what:literal) => {
        pub fn $fn(&self, name: &str) -> Result<&$ty> {
            match self.items.get(name) {
                Some(Item::$variant(x)) => Ok(x),
                Some(other) => Err(CliError::Usage(format!(
                    "`{name}` is {} declaration, not {}",
                    article(other.kind()),
                    $what
                ))),
                None => Err(CliError::Usage(format!("no declaration named `{name}`"))),
            }
        }
    };
}

fn article(kind: &str) -> String {
    let an = matches!(kind.as_bytes()[0], b'a' | b'o');
    format!("{} {kind}", if an { "an" } else { "a" })
}

impl Env {
    getter!(carrier, Carrier, Arc<Carrier>, "a carrier");
    getter!(relation, Relation, Relation, "a relation");
    getter!(rules, Rules, RuleSet, "a rule set");
    getter!(order, Order, Preorder, "an order");
    getter!(axioms, Axioms, Axioms, "an axiom set");
    getter!(theory, Theory, GeometricTheory, "a theory");
    getter!(space, Space, BasicPair, "a space");

    pub fn get(&self, name: &str) -> Option<&Item> {
        self.items.get(name)
    }
}

struct Resolver<'d> {
    doc: &'d Document,
    items: HashMap<String, Item>,
}

impl Resolver<'_> {
    fn lookup(&self, id: &Ident, want: &'static str) -> Result<&Item> {
        let item = self
            .items
            .get(&id.text)
            .ok_or_else(|| CliError::resolve(id.pos, format!("unknown name `{}`", id.text)))?;
        if item.kind() != want
            && !(want == "carrier or order" && matches!(item, Item::Carrier(_) | Item::Order(_)))
        {
            return Err(CliError::resolve(
                id.pos,
                format!(
                    "`{}` is {}, expected {}",
                    id.text,
                    article(item.kind()),
                    article(want)
                ),
            ));
        }
        Ok(item)
    }

    fn carrier(&self, id: &Ident) -> Result<Arc<Carrier>> {
        match self.lookup(id, "carrier")? {
            Item::Carrier(c) => Ok(c.clone()),
            _ => unreachable!(),
        }
    }

    fn element(c: &Carrier, id: &Ident) -> Result<usize> {
        c.index_of(&id.text).ok_or_else(|| {
            CliError::resolve(
                id.pos,
                format!("unknown element `{}` of carrier `{}`", id.text, c.name()),
            )
        })
    }

    fn subset(c: &Arc<Carrier>, s: &SubsetLit) -> Result<Subset> {
        let idx = s
            .elements
            .iter()
            .map(|e| Self::element(c, e))
            .collect::<Result<Vec<_>>>()?;
        Ok(Subset::from_indices(c, idx))
    }

    fn relation(
        src: &Arc<Carrier>,
        dst: &Arc<Carrier>,
        pairs: &[(Ident, Ident)],
    ) -> Result<Relation> {
        let mut rows = vec![0u64; src.size()];
        for (a, b) in pairs {
            rows[Self::element(src, a)?] |= 1 << Self::element(dst, b)?;
        }
        Ok(Relation::new(src, dst, rows)?)
    }

    fn body(c: &Carrier, b: &Body) -> Result<FormulaBody> {
        Ok(match b {
            Body::Or(ds) => {
                FormulaBody::Or(ds.iter().map(|d| Self::body(c, d)).collect::<Result<_>>()?)
            }
            Body::And(cs) => {
                FormulaBody::And(cs.iter().map(|d| Self::body(c, d)).collect::<Result<_>>()?)
            }
            Body::Atom(a) => FormulaBody::Atom(Self::element(c, a)?),
            Body::True => FormulaBody::truth(),
            Body::False => FormulaBody::falsity(),
        })
    }

    fn resolve(&self, d: &Decl) -> Result<Item> {
        Ok(match &d.kind {
            DeclKind::Carrier { labels } => {
                let mut seen: HashMap<&str, Pos> = HashMap::new();
                for l in labels {
                    if let Some(first) = seen.insert(&l.text, l.pos) {
                        return Err(CliError::resolve(
                            l.pos,
                            format!(
                                "duplicate element `{}` in carrier `{}` (first at {first})",
                                l.text, d.name.text
                            ),
                        ));
                    }
                }
                if labels.len() > pfl_core::limits::MAX_CARRIER {
                    return Err(CliError::resolve(
                        d.pos,
                        format!(
                            "carrier `{}` has more than {} elements",
                            d.name.text,
                            pfl_core::limits::MAX_CARRIER
                        ),
                    ));
                }
                Item::Carrier(Carrier::new(
                    d.name.text.clone(),
                    labels.iter().map(|l| l.text.clone()),
                )?)
            }
            DeclKind::Relation { src, dst, pairs } => Item::Relation(Self::relation(
                &self.carrier(src)?,
                &self.carrier(dst)?,
                pairs,
            )?),
            DeclKind::Rules { carrier, rules } => {
                let c = self.carrier(carrier)?;
                let rs = rules
                    .iter()
                    .map(|(a, b)| Ok(Rule::new(Self::subset(&c, a)?, Self::subset(&c, b)?)?))
                    .collect::<Result<Vec<_>>>()?;
                Item::Rules(RuleSet::new(&c, rs)?)
            }
            DeclKind::Order { carrier, pairs } => {
                let c = self.carrier(carrier)?;
                let ps = pairs
                    .iter()
                    .map(|(a, b)| Ok((Self::element(&c, a)?, Self::element(&c, b)?)))
                    .collect::<Result<Vec<_>>>()?;
                Item::Order(Preorder::generated_by(&c, ps)?)
            }
            DeclKind::Axioms { base, entries } => {
                let order = match self.lookup(base, "carrier or order")? {
                    Item::Carrier(c) => Preorder::discrete(c),
                    Item::Order(o) => o.clone(),
                    _ => unreachable!(),
                };
                let c = order.carrier().clone();
                let mut axioms = AxiomSet::empty(&c);
                let mut labels: Vec<Vec<String>> = vec![Vec::new(); c.size()];
                let mut sites: HashMap<(usize, &str), Pos> = HashMap::new();
                for e in entries {
                    let a = Self::element(&c, &e.element)?;
                    if let Some(first) = sites.insert((a, &e.label.text), e.label.pos) {
                        return Err(CliError::resolve(
                            e.label.pos,
                            format!(
                                "duplicate axiom label `{}` for `{}` (first at {first})",
                                e.label.text, e.element.text
                            ),
                        ));
                    }
                    axioms.push(a, &Self::subset(&c, &e.cover)?)?;
                    labels[a].push(e.label.text.clone());
                }
                Item::Axioms(Axioms {
                    order,
                    axioms,
                    labels,
                })
            }
            DeclKind::Theory { carrier, axioms } => {
                let c = self.carrier(carrier)?;
                let ax = axioms
                    .iter()
                    .map(|(p, b)| {
                        Ok(GeometricAxiom {
                            premise: Self::subset(&c, p)?,
                            body: Self::body(&c, b)?,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Item::Theory(GeometricTheory::new(&c, ax)?)
            }
            DeclKind::Space {
                points,
                observables,
                pairs,
            } => Item::Space(BasicPair::new(Self::relation(
                &self.carrier(points)?,
                &self.carrier(observables)?,
                pairs,
            )?)),
        })
    }
}

/// Phase in which a declaration resolves; references only point to earlier
/// phases, so declarations may appear in any order.
fn phase(k: &DeclKind) -> u8 {
    match k {
        DeclKind::Carrier { .. } => 0,
        DeclKind::Axioms { .. } => 2,
        _ => 1,
    }
}

pub fn resolve(doc: &Document) -> Result<Env> {
    let mut first: HashMap<&str, Pos> = HashMap::new();
    for d in &doc.decls {
        if let Some(prev) = first.insert(&d.name.text, d.name.pos) {
            return Err(CliError::resolve(
                d.name.pos,
                format!(
                    "duplicate name `{}`: declared at {prev} and {}",
                    d.name.text, d.name.pos
                ),
            ));
        }
    }
    let mut r = Resolver {
        doc,
        items: HashMap::new(),
    };
    for p in 0..3 {
        for d in r.doc.decls.iter().filter(|d| phase(&d.kind) == p) {
            let item = r.resolve(d)?;
            r.items.insert(d.name.text.clone(), item);
        }
    }
    Ok(Env { items: r.items })
}
