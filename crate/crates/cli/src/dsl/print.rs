//! Canonical text for documents: one declaration per paragraph, entries
//! one per line, names quoted only when they would not lex as a word.

use std::fmt::Write;

use super::ast::*;
use super::parse::is_word_char;

pub fn quote(name: &str) -> String {
    let bare =
        !name.is_empty() && name.chars().all(is_word_char) && name != "true" && name != "false";
    if bare {
        name.to_string()
    } else {
        let mut s = String::from("\"");
        for c in name.chars() {
            if c == '"' || c == '\\' {
                s.push('\\');
            }
            s.push(c);
        }
        s.push('"');
        s
    }
}

fn name(i: &Ident) -> String {
    quote(&i.text)
}

pub fn subset(s: &SubsetLit) -> String {
    let inner: Vec<String> = s.elements.iter().map(name).collect();
    format!("{{{}}}", inner.join(", "))
}

pub fn body(b: &Body) -> String {
    fn disj(b: &Body, out: &mut String) {
        match b {
            Body::Or(ds) => {
                for (k, d) in ds.iter().enumerate() {
                    if k > 0 {
                        out.push_str(" | ");
                    }
                    conj(d, out);
                }
            }
            other => conj(other, out),
        }
    }
    fn conj(b: &Body, out: &mut String) {
        match b {
            Body::And(cs) => {
                for (k, c) in cs.iter().enumerate() {
                    if k > 0 {
                        out.push_str(" & ");
                    }
                    factor(c, out);
                }
            }
            other => factor(other, out),
        }
    }
    fn factor(b: &Body, out: &mut String) {
        match b {
            Body::Atom(i) => out.push_str(&name(i)),
            Body::True => out.push_str("true"),
            Body::False => out.push_str("false"),
            other => {
                out.push('(');
                disj(other, out);
                out.push(')');
            }
        }
    }
    let mut out = String::new();
    disj(b, &mut out);
    out
}

fn block(out: &mut String, head: String, lines: Vec<String>) {
    if lines.is_empty() {
        let _ = writeln!(out, "{head} {{}}");
        return;
    }
    let _ = writeln!(out, "{head} {{");
    for l in lines {
        let _ = writeln!(out, "  {l};");
    }
    out.push_str("}\n");
}

pub fn decl(d: &Decl) -> String {
    let mut out = String::new();
    let n = name(&d.name);
    let pairs = |ps: &[(Ident, Ident)], sep: &str| -> Vec<String> {
        ps.iter()
            .map(|(a, b)| format!("{} {sep} {}", name(a), name(b)))
            .collect()
    };
    match &d.kind {
        DeclKind::Carrier { labels } => {
            let inner: Vec<String> = labels.iter().map(name).collect();
            let _ = writeln!(out, "carrier {n} = {{{}}}", inner.join(", "));
        }
        DeclKind::Relation {
            src,
            dst,
            pairs: ps,
        } => {
            block(
                &mut out,
                format!("relation {n} : {} -> {}", name(src), name(dst)),
                pairs(ps, "->"),
            );
        }
        DeclKind::Rules { carrier, rules } => {
            let lines = rules
                .iter()
                .map(|(a, b)| format!("{} -> {}", subset(a), subset(b)))
                .collect();
            block(&mut out, format!("rules {n} on {}", name(carrier)), lines);
        }
        DeclKind::Order { carrier, pairs: ps } => {
            block(
                &mut out,
                format!("order {n} on {}", name(carrier)),
                pairs(ps, "<="),
            );
        }
        DeclKind::Axioms { base, entries } => {
            let lines = entries
                .iter()
                .map(|e| {
                    format!(
                        "{} : {} => {}",
                        name(&e.element),
                        name(&e.label),
                        subset(&e.cover)
                    )
                })
                .collect();
            block(&mut out, format!("axioms {n} on {}", name(base)), lines);
        }
        DeclKind::Theory { carrier, axioms } => {
            let lines = axioms
                .iter()
                .map(|(p, b)| format!("{} |- {}", subset(p), body(b)))
                .collect();
            block(&mut out, format!("theory {n} on {}", name(carrier)), lines);
        }
        DeclKind::Space {
            points,
            observables,
            pairs: ps,
        } => {
            block(
                &mut out,
                format!("space {n} on {}, {}", name(points), name(observables)),
                pairs(ps, "->"),
            );
        }
    }
    out
}

pub fn document(doc: &Document) -> String {
    let parts: Vec<String> = doc.decls.iter().map(decl).collect();
    parts.join("\n")
}
