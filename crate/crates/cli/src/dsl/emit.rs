//! Declarations built from kernel values, for commands whose output is
//! itself a document.

use pfl_core::carrier::Carrier;
use pfl_core::ftop::{AxiomSet, Preorder};
use pfl_core::{bits, FormulaBody, GeometricTheory, RuleSet};

use super::ast::*;

fn decl(name: &str, kind: DeclKind) -> Decl {
    Decl {
        name: Ident::new(name),
        kind,
        pos: Pos::default(),
    }
}

fn subset(c: &Carrier, mask: u64) -> SubsetLit {
    SubsetLit::new(bits(mask).map(|i| c.label(i).to_string()))
}

pub fn carrier(c: &Carrier) -> Decl {
    decl(
        c.name(),
        DeclKind::Carrier {
            labels: c.labels().iter().map(Ident::new).collect(),
        },
    )
}

pub fn rules(name: &str, r: &RuleSet) -> Decl {
    let c = r.carrier();
    decl(
        name,
        DeclKind::Rules {
            carrier: Ident::new(c.name()),
            rules: r
                .masks()
                .map(|(a, b)| (subset(c, a), subset(c, b)))
                .collect(),
        },
    )
}

/// Collapses one-child `Or`/`And` nodes so the result has the shape the
/// parser produces.
pub fn body(c: &Carrier, f: &FormulaBody) -> Body {
    match f {
        FormulaBody::Atom(i) => Body::Atom(Ident::new(c.label(*i))),
        FormulaBody::Or(ds) if ds.is_empty() => Body::False,
        FormulaBody::And(cs) if cs.is_empty() => Body::True,
        FormulaBody::Or(ds) if ds.len() == 1 => body(c, &ds[0]),
        FormulaBody::And(cs) if cs.len() == 1 => body(c, &cs[0]),
        FormulaBody::Or(ds) => Body::Or(ds.iter().map(|d| body(c, d)).collect()),
        FormulaBody::And(cs) => Body::And(cs.iter().map(|d| body(c, d)).collect()),
    }
}

pub fn theory(name: &str, t: &GeometricTheory) -> Decl {
    let c = t.carrier();
    decl(
        name,
        DeclKind::Theory {
            carrier: Ident::new(c.name()),
            axioms: t
                .axioms()
                .iter()
                .map(|ax| (subset(c, ax.premise.mask()), body(c, &ax.body)))
                .collect(),
        },
    )
}

/// Lists every non-reflexive pair of the order.
pub fn order(name: &str, o: &Preorder) -> Decl {
    let c = o.carrier();
    let n = c.size();
    let pairs = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| a != b && o.leq(a, b))
        .map(|(a, b)| (Ident::new(c.label(a)), Ident::new(c.label(b))))
        .collect();
    decl(
        name,
        DeclKind::Order {
            carrier: Ident::new(c.name()),
            pairs,
        },
    )
}

/// Axioms labelled by their index among the element's axioms.
pub fn axioms(name: &str, base: &str, ax: &AxiomSet) -> Decl {
    let c = ax.carrier();
    decl(
        name,
        DeclKind::Axioms {
            base: Ident::new(base),
            entries: ax
                .iter()
                .map(|(a, i, m)| AxiomEntry {
                    element: Ident::new(c.label(a)),
                    label: Ident::new(i.to_string()),
                    cover: subset(c, m),
                })
                .collect(),
        },
    )
}
