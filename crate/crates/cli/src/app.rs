//! Argument parsing and the process entry point.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use pfl_core::limits;

use crate::commands::{self, Command, GeneratorMode, Translation};
use crate::dsl;
use crate::error::{CliError, Result};

#[derive(Debug, Parser)]
#[command(
    name = "pfl",
    version,
    about = "Closure systems, relation pairs and formal topologies on finite carriers"
)]
#[command(
    after_help = "Set PFL_LIMIT to `N` or `powerset=N,fin=N,cover=N` to change enumeration caps."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Cmd,
}

#[derive(Debug, Args)]
pub struct Target {
    /// The .pfl document.
    pub file: PathBuf,
    /// Declarations the command works on.
    #[arg(required = true)]
    pub names: Vec<String>,
}

#[derive(Debug, Args)]
#[group(required = false, multiple = false)]
pub struct GenFlags {
    /// Essential members of the closed class (the default).
    #[arg(long)]
    pub minimal: bool,
    /// A minimal strongly generating family.
    #[arg(long)]
    pub strong: bool,
    /// Generators read off the concrete-space equaliser construction.
    #[arg(long)]
    pub pipeline: bool,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct TranslateFlags {
    #[arg(long)]
    pub bi_to_elem: bool,
    #[arg(long)]
    pub elem_to_bi: bool,
    #[arg(long)]
    pub binarize: bool,
    #[arg(long)]
    pub rules_to_theory: bool,
    #[arg(long)]
    pub theory_to_rules: bool,
    #[arg(long)]
    pub point_rules: bool,
    #[arg(long)]
    pub rules_to_topology: bool,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Closed subsets of a rule set.
    Closed(Target),
    /// Biclosed subsets of a rule set.
    Biclosed(Target),
    /// A generating family of the closed subsets.
    Generators {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        mode: GenFlags,
    },
    /// Models of a theory.
    Models(Target),
    /// Weak equaliser of two relations: R1 R2.
    Weq(Target),
    /// Equaliser of relation pairs: B1 B2 r1 r2 (or B1 B2 r1 s1 r2 s2).
    BpEq {
        #[command(flatten)]
        target: Target,
        /// Build the coequaliser instead.
        #[arg(long)]
        coequaliser: bool,
    },
    /// Equaliser of convergent pairs between concrete spaces.
    CspaEq {
        #[command(flatten)]
        target: Target,
        /// Apex points to use, as `{x}; {x, y}`.
        #[arg(long, value_name = "SUBSETS")]
        points: Option<String>,
    },
    /// Concrete coreflection of a space.
    Coreflect(Target),
    /// Cover table of a topology.
    Cover(Target),
    /// Points of a topology.
    Points {
        #[command(flatten)]
        target: Target,
        /// Check points against the saturated cover instead of the axioms.
        #[arg(long)]
        by_cover: bool,
    },
    /// Checks whether a relation is a formal topology map: R SOURCE TARGET.
    CheckFtm(Target),
    /// Theory whose models are the formal topology maps: SOURCE TARGET.
    EncodeFtm {
        #[command(flatten)]
        target: Target,
        /// Print the models instead of the theory.
        #[arg(long)]
        models: bool,
    },
    /// Prints a translated document.
    Translate {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        how: TranslateFlags,
    },
}

impl Cmd {
    pub fn split(self) -> (Command, Target) {
        match self {
            Cmd::Closed(t) => (Command::Closed, t),
            Cmd::Biclosed(t) => (Command::Biclosed, t),
            Cmd::Generators { target, mode } => {
                let m = if mode.strong {
                    GeneratorMode::Strong
                } else if mode.pipeline {
                    GeneratorMode::Pipeline
                } else {
                    GeneratorMode::Minimal
                };
                (Command::Generators(m), target)
            }
            Cmd::Models(t) => (Command::Models, t),
            Cmd::Weq(t) => (Command::Weq, t),
            Cmd::BpEq {
                target,
                coequaliser,
            } => (Command::BpEq { coequaliser }, target),
            Cmd::CspaEq { target, points } => (Command::CspaEq { points }, target),
            Cmd::Coreflect(t) => (Command::Coreflect, t),
            Cmd::Cover(t) => (Command::Cover, t),
            Cmd::Points { target, by_cover } => (Command::Points { by_cover }, target),
            Cmd::CheckFtm(t) => (Command::CheckFtm, t),
            Cmd::EncodeFtm { target, models } => (Command::EncodeFtm { models }, target),
            Cmd::Translate { target, how } => {
                let t = if how.bi_to_elem {
                    Translation::BiToElem
                } else if how.elem_to_bi {
                    Translation::ElemToBi
                } else if how.binarize {
                    Translation::Binarize
                } else if how.rules_to_theory {
                    Translation::RulesToTheory
                } else if how.theory_to_rules {
                    Translation::TheoryToRules
                } else if how.point_rules {
                    Translation::PointRules
                } else {
                    Translation::RulesToTopology
                };
                (Command::Translate(t), target)
            }
        }
    }
}

fn apply_limit_override() -> Result<()> {
    let Ok(text) = std::env::var("PFL_LIMIT") else {
        return Ok(());
    };
    let parsed = limits::limits()
        .parse_override(&text)
        .ok_or_else(|| CliError::Usage(format!("cannot parse PFL_LIMIT=`{text}`")))?;
    limits::set_limits(parsed);
    Ok(())
}

/// Reads the file, resolves it and runs the command.
pub fn execute(cmd: &Command, target: &Target) -> Result<String> {
    apply_limit_override()?;
    let path = target.file.display().to_string();
    let text = std::fs::read_to_string(&target.file).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })?;
    let (_, env) = dsl::load(&text)?;
    commands::run(cmd, &env, &target.names)
}

pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let (cmd, target) = cli.command.split();
    match execute(&cmd, &target) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.as_bytes());
            let _ = stdout.flush();
            0
        }
        Err(e) => {
            match &e {
                CliError::Parse { .. } | CliError::Resolve { .. } => {
                    eprintln!("pfl: {}:{e}", target.file.display())
                }
                _ => eprintln!("pfl: {e}"),
            }
            e.exit_code()
        }
    }
}
