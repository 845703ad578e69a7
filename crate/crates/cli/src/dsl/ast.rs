use std::fmt;

/// A 1-based line/column position in the source text.
///
/// Positions never take part in equality, so a document and its reprint
/// compare equal.
#[derive(Debug, Clone, Copy, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl PartialEq for Pos {
    fn eq(&self, _: &Pos) -> bool {
        true
    }
}

impl Eq for Pos {}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ident {
    pub text: String,
    pub pos: Pos,
}

impl Ident {
    pub fn new(text: impl Into<String>) -> Ident {
        Ident {
            text: text.into(),
            pos: Pos::default(),
        }
    }
}

/// `{e1, e2}` as written.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetLit {
    pub elements: Vec<Ident>,
    pub pos: Pos,
}

impl SubsetLit {
    pub fn new<S: Into<String>>(elements: impl IntoIterator<Item = S>) -> SubsetLit {
        SubsetLit {
            elements: elements.into_iter().map(Ident::new).collect(),
            pos: Pos::default(),
        }
    }
}

/// Body of a theory axiom. The parser drops parentheses and only builds
/// `Or`/`And` nodes with at least two children.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Body {
    Or(Vec<Body>),
    And(Vec<Body>),
    Atom(Ident),
    True,
    False,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomEntry {
    pub element: Ident,
    pub label: Ident,
    pub cover: SubsetLit,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DeclKind {
    Carrier {
        labels: Vec<Ident>,
    },
    Relation {
        src: Ident,
        dst: Ident,
        pairs: Vec<(Ident, Ident)>,
    },
    Rules {
        carrier: Ident,
        rules: Vec<(SubsetLit, SubsetLit)>,
    },
    Order {
        carrier: Ident,
        pairs: Vec<(Ident, Ident)>,
    },
    /// `base` names a carrier (discrete order) or an order.
    Axioms {
        base: Ident,
        entries: Vec<AxiomEntry>,
    },
    Theory {
        carrier: Ident,
        axioms: Vec<(SubsetLit, Body)>,
    },
    /// A basic pair; each pair is `point -> observable`.
    Space {
        points: Ident,
        observables: Ident,
        pairs: Vec<(Ident, Ident)>,
    },
}

impl DeclKind {
    pub fn keyword(&self) -> &'static str {
        match self {
            DeclKind::Carrier { .. } => "carrier",
            DeclKind::Relation { .. } => "relation",
            DeclKind::Rules { .. } => "rules",
            DeclKind::Order { .. } => "order",
            DeclKind::Axioms { .. } => "axioms",
            DeclKind::Theory { .. } => "theory",
            DeclKind::Space { .. } => "space",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decl {
    pub name: Ident,
    pub kind: DeclKind,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Document {
    pub decls: Vec<Decl>,
}

impl Document {
    pub fn get(&self, name: &str) -> Option<&Decl> {
        self.decls.iter().find(|d| d.name.text == name)
    }
}
