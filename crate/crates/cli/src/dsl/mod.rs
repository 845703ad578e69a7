//! The `.pfl` text format; the grammar is in `docs/GRAMMAR`.

pub mod ast;
pub mod emit;
pub mod parse;
pub mod print;
pub mod resolve;

pub use ast::Document;
pub use resolve::{Env, Item};

use crate::error::Result;

/// Parses and resolves a document, keeping only the syntax tree.
pub fn parse(text: &str) -> Result<Document> {
    load(text).map(|(doc, _)| doc)
}

/// Parses and resolves a document.
pub fn load(text: &str) -> Result<(Document, Env)> {
    let doc = parse::parse_syntax(text)?;
    let env = resolve::resolve(&doc)?;
    Ok((doc, env))
}
