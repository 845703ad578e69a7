//! Subcommand implementations. Each returns the full text to print.

use std::fmt::Write;

use pfl_core::bp::{self, RelationPair};
use pfl_core::carrier::Carrier;
use pfl_core::cspa;
use pfl_core::ftop::{self, FtmFailure, InductiveTopology, SetPresentation};
use pfl_core::generation::minimal_strongly_generating;
use pfl_core::relcat::weak_equaliser;
use pfl_core::rules::rules_from_theory;
use pfl_core::{minimal_generating, BasicPair, Subset, SubsetFamily};

use crate::dsl::{self, ast::Document, emit, parse, resolve::Axioms, Env};
use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorMode {
    Minimal,
    Strong,
    Pipeline,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Translation {
    BiToElem,
    ElemToBi,
    Binarize,
    RulesToTheory,
    TheoryToRules,
    PointRules,
    RulesToTopology,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Closed,
    Biclosed,
    Generators(GeneratorMode),
    Models,
    Weq,
    BpEq { coequaliser: bool },
    CspaEq { points: Option<String> },
    Coreflect,
    Cover,
    Points { by_cover: bool },
    CheckFtm,
    EncodeFtm { models: bool },
    Translate(Translation),
}

fn arity(names: &[String], want: &[usize], usage: &str) -> Result<()> {
    if want.contains(&names.len()) {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "expected {usage}, got {} name(s)",
            names.len()
        )))
    }
}

fn family_lines(f: &SubsetFamily) -> String {
    let mut masks = f.masks().to_vec();
    masks.sort_unstable();
    masks.dedup();
    let mut out = String::new();
    for m in masks {
        let _ = writeln!(out, "{}", Subset::from_mask(f.carrier(), m));
    }
    out
}

/// One line per point: `label ||- {observables}`.
fn forcing_lines(b: &BasicPair) -> String {
    let f = b.forces();
    let mut out = String::new();
    for (x, &row) in f.rows().iter().enumerate() {
        let _ = writeln!(
            out,
            "{} ||- {}",
            b.points().label(x),
            Subset::from_mask(b.observables(), row)
        );
    }
    out
}

fn topology(a: &Axioms) -> Result<InductiveTopology> {
    Ok(InductiveTopology::new(a.order.clone(), a.axioms.clone())?)
}

fn presentation(a: &Axioms) -> Result<SetPresentation> {
    Ok(SetPresentation::new(a.order.clone(), a.axioms.clone())?)
}

/// `B1 B2 r1 r2` or `B1 B2 r1 s1 r2 s2`; a missing `s` is the greatest one
/// closing the square.
fn parallel_pair(env: &Env, names: &[String]) -> Result<(RelationPair, RelationPair)> {
    arity(names, &[4, 6], "B1 B2 r1 r2 or B1 B2 r1 s1 r2 s2")?;
    let b1 = env.space(&names[0])?;
    let b2 = env.space(&names[1])?;
    if names.len() == 4 {
        let p1 = RelationPair::from_point_rel(b1, b2, env.relation(&names[2])?.clone())?;
        let p2 = RelationPair::from_point_rel(b1, b2, env.relation(&names[3])?.clone())?;
        Ok((p1, p2))
    } else {
        let rel = |i: usize| env.relation(&names[i]).cloned();
        let p1 = RelationPair::new(b1, b2, rel(2)?, rel(3)?)?;
        let p2 = RelationPair::new(b1, b2, rel(4)?, rel(5)?)?;
        Ok((p1, p2))
    }
}

fn subsets_of(c: &std::sync::Arc<Carrier>, text: &str) -> Result<SubsetFamily> {
    let lits = parse::parse_subset_list(text)?;
    let mut masks = Vec::new();
    for lit in lits {
        let mut m = 0u64;
        for e in &lit.elements {
            let i = c.index_of(&e.text).ok_or_else(|| {
                CliError::Usage(format!(
                    "unknown element `{}` of carrier `{}`",
                    e.text,
                    c.name()
                ))
            })?;
            m |= 1 << i;
        }
        masks.push(m);
    }
    Ok(SubsetFamily::from_masks(c, masks))
}

fn ftm_failure(f: &FtmFailure, src: &Carrier, dst: &Carrier, ax: &Axioms) -> String {
    let t = |i: usize| dst.label(i);
    match *f {
        FtmFailure::Ftm1 { a } => format!(
            "FTM1 fails: `{}` is not covered by the preimage of the whole target",
            src.label(a)
        ),
        FtmFailure::Ftm2 { a, b } => format!("FTM2 fails at `{}`, `{}`", t(a), t(b)),
        FtmFailure::Ftm3a { a, b } => format!("FTM3a fails at `{}` <= `{}`", t(a), t(b)),
        FtmFailure::Ftm3b { a, i } => {
            format!("FTM3b fails at axiom `{} : {}`", t(a), ax.labels[a][i])
        }
    }
}

fn document(decls: Vec<dsl::ast::Decl>) -> String {
    dsl::print::document(&Document { decls })
}

pub fn run(cmd: &Command, env: &Env, names: &[String]) -> Result<String> {
    let one = |what: &str| arity(names, &[1], what);
    match cmd {
        Command::Closed => {
            one("one rule set")?;
            Ok(family_lines(&env.rules(&names[0])?.enumerate_closed()?))
        }
        Command::Biclosed => {
            one("one rule set")?;
            Ok(family_lines(&env.rules(&names[0])?.enumerate_biclosed()?))
        }
        Command::Generators(mode) => {
            one("one rule set")?;
            let r = env.rules(&names[0])?;
            let g = match mode {
                GeneratorMode::Minimal => minimal_generating(&r.enumerate_closed()?),
                GeneratorMode::Strong => minimal_strongly_generating(&r.enumerate_closed()?),
                GeneratorMode::Pipeline => cspa::generator_pipeline(r)?.generators,
            };
            Ok(family_lines(&g))
        }
        Command::Models => {
            one("one theory")?;
            Ok(family_lines(&env.theory(&names[0])?.enumerate_models()?))
        }
        Command::Weq => {
            arity(names, &[2], "two relations r1 r2")?;
            let w = weak_equaliser(env.relation(&names[0])?, env.relation(&names[1])?)?;
            Ok(family_lines(&w.generators))
        }
        Command::BpEq { coequaliser } => {
            let (p1, p2) = parallel_pair(env, names)?;
            let apex = if *coequaliser {
                bp::coequaliser(&p1, &p2)?.apex
            } else {
                bp::equaliser(&p1, &p2)?.apex
            };
            Ok(forcing_lines(&apex))
        }
        Command::CspaEq { points } => {
            let (p1, p2) = parallel_pair(env, names)?;
            let mut eq = cspa::equaliser(&p1, &p2)?;
            if let Some(text) = points {
                let g = subsets_of(p1.source().points(), text)?;
                eq = cspa::equaliser_with_points(&p1, &p2, &eq.eclass, g)?;
            }
            Ok(forcing_lines(&eq.apex))
        }
        Command::Coreflect => {
            one("one space")?;
            let c = cspa::coreflect(env.space(&names[0])?)?;
            Ok(forcing_lines(c.space.pair()))
        }
        Command::Cover => {
            one("one axiom set")?;
            let t = topology(env.axioms(&names[0])?)?;
            let cover = t.cover()?;
            let c = t.carrier();
            let mut out = String::new();
            for (u, &covered) in cover.table().iter().enumerate() {
                let _ = writeln!(
                    out,
                    "{} <| {}",
                    Subset::from_mask(c, covered),
                    Subset::from_mask(c, u as u64)
                );
            }
            Ok(out)
        }
        Command::Points { by_cover } => {
            one("one axiom set")?;
            let t = topology(env.axioms(&names[0])?)?;
            let pts = if *by_cover {
                ftop::enumerate_points_by_cover(&t)?
            } else {
                ftop::enumerate_points(&t)?
            };
            Ok(family_lines(&pts))
        }
        Command::CheckFtm => {
            arity(
                names,
                &[3],
                "a relation, a source axiom set and a target axiom set",
            )?;
            let r = env.relation(&names[0])?;
            let source = presentation(env.axioms(&names[1])?)?;
            let target_ax = env.axioms(&names[2])?;
            let target = topology(target_ax)?;
            let report = ftop::is_ftm(r, &source, &target)?;
            Ok(match report.failure {
                None => "ftm\n".to_string(),
                Some(f) => format!(
                    "not ftm: {}\n",
                    ftm_failure(&f, r.src(), r.dst(), target_ax)
                ),
            })
        }
        Command::EncodeFtm { models } => {
            arity(names, &[2], "a source axiom set and a target axiom set")?;
            let source = presentation(env.axioms(&names[0])?)?;
            let target = topology(env.axioms(&names[1])?)?;
            let th = ftop::ftm_theory(&source, &target)?;
            if *models {
                Ok(family_lines(&th.enumerate_models()?))
            } else {
                let name = format!("{}_{}_ftm", names[0], names[1]);
                Ok(document(vec![
                    emit::carrier(th.carrier()),
                    emit::theory(&name, &th),
                ]))
            }
        }
        Command::Translate(how) => {
            one("one declaration")?;
            translate(*how, env, &names[0])
        }
    }
}

fn translate(how: Translation, env: &Env, name: &str) -> Result<String> {
    let decls = match how {
        Translation::BiToElem
        | Translation::ElemToBi
        | Translation::Binarize
        | Translation::RulesToTheory => {
            let r = env.rules(name)?;
            let base = emit::carrier(r.carrier());
            match how {
                Translation::BiToElem => vec![
                    base,
                    emit::rules(&format!("{name}_elem"), &r.biclosed_to_elementary()),
                ],
                Translation::ElemToBi => vec![
                    base,
                    emit::rules(&format!("{name}_bi"), &r.elementary_to_biclosed()?),
                ],
                Translation::Binarize => {
                    let b = r.binarize()?;
                    vec![
                        emit::carrier(b.extended()),
                        emit::rules(&format!("{name}_bin"), b.rules()),
                    ]
                }
                _ => vec![
                    base,
                    emit::theory(&format!("{name}_theory"), &r.to_theory()),
                ],
            }
        }
        Translation::TheoryToRules => {
            let (fin, r) = rules_from_theory(env.theory(name)?)?;
            vec![
                emit::carrier(fin.carrier()),
                emit::rules(&format!("{name}_rules"), &r),
            ]
        }
        Translation::PointRules => {
            let t = topology(env.axioms(name)?)?;
            vec![
                emit::carrier(t.carrier()),
                emit::rules(&format!("{name}_points"), &ftop::point_rules(&t)),
            ]
        }
        Translation::RulesToTopology => {
            let (fin, t) = ftop::topology_from_rules(env.rules(name)?)?;
            let order = format!("{name}_order");
            vec![
                emit::carrier(fin.carrier()),
                emit::order(&order, t.order()),
                emit::axioms(&format!("{name}_topology"), &order, t.axioms()),
            ]
        }
    };
    Ok(document(decls))
}
