//! A straightedge-only construction DSL.
//!
//! Programs are line-oriented text: `given` declarations, assignment steps
//! over the five straightedge primitives, and `output` declarations naming a
//! result and the predicate it must satisfy. There is no compass: the only
//! circle in a program is the given one (with known center), and it can only
//! be met by drawn lines.
//!
//! ```text
//! given k : circle_with_center
//! given A : point
//! given B : point
//! l = join(A, B)
//! P = on_line(l, "between")
//! output l : parallel_to_AB
//! ```

mod builtins;
mod exec;
mod parse;
mod verify;

pub use builtins::{builtin, BuiltinId};
pub use exec::{execute, Object, Provenance, Scene};
pub use parse::parse;
pub use verify::{run_sampled, verify};

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    SyntaxError { line: usize, col: usize, msg: String },
    #[error("unknown identifier '{name}' at line {line}")]
    UnknownIdentifier { line: usize, name: String },
    #[error("wrong number of arguments at line {line}")]
    ArityError { line: usize },
    #[error("identifier '{name}' defined twice (line {line})")]
    DuplicateIdentifier { line: usize, name: String },
    #[error("missing given '{0}'")]
    MissingGiven(String),
    #[error("'{0}' is not of the kind the step requires")]
    WrongKind(String),
    #[error("step '{0}' degenerated")]
    DegenerateStep(String),
    #[error("the program declares no circle")]
    NoCircle,
    #[error("unknown predicate '{0}'")]
    UnknownPredicate(String),
    #[error("free-point sampling failed for step '{0}'")]
    FreePointExhausted(String),
    #[error(transparent)]
    Kernel(#[from] crate::kernel::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Kind of a given object.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Point,
    CircleWithCenter,
}

/// One straightedge primitive call.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Call {
    /// Line through two named points.
    Join(String, String),
    /// Intersection point of two named lines.
    Meet(String, String),
    /// Free point on a named line, placed by the seeded sampler.
    OnLine(String, String),
    /// Free point on the given circle.
    OnCircle(String),
    /// Second intersection of a named line with the given circle, the first
    /// being the named known point.
    SecondMeet(String, String),
}

impl Call {
    /// Identifiers consumed by the call.
    pub fn inputs(&self) -> Vec<&str> {
        match self {
            Call::Join(a, b) | Call::Meet(a, b) | Call::SecondMeet(a, b) => vec![a, b],
            Call::OnLine(l, _) => vec![l],
            Call::OnCircle(_) => vec![],
        }
    }

    pub fn is_free_choice(&self) -> bool {
        matches!(self, Call::OnLine(..) | Call::OnCircle(..))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub name: String,
    pub call: Call,
    pub line_no: usize,
}

/// A parsed straightedge program.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Program {
    pub givens: Vec<(String, Kind)>,
    pub steps: Vec<Step>,
    /// `(object name, predicate id)` pairs.
    pub outputs: Vec<(String, String)>,
}

impl Program {
    pub fn given_names(&self) -> impl Iterator<Item = &str> {
        self.givens.iter().map(|(n, _)| n.as_str())
    }

    pub fn free_choice_count(&self) -> usize {
        self.steps.iter().filter(|s| s.call.is_free_choice()).count()
    }
}

/// Static straightedge-soundness audit: every step is one of the five
/// primitives, every identifier is defined before use and never redefined,
/// and nothing constructs a circle. The parser enforces most of this; the
/// audit re-walks the AST so a hand-built `Program` gets the same guarantee.
pub fn straightedge_audit(p: &Program) -> Result<()> {
    let mut defined = std::collections::BTreeSet::new();
    for (name, _) in &p.givens {
        if !defined.insert(name.clone()) {
            return Err(Error::DuplicateIdentifier { line: 0, name: name.clone() });
        }
    }
    for step in &p.steps {
        for input in step.call.inputs() {
            if !defined.contains(input) {
                return Err(Error::UnknownIdentifier {
                    line: step.line_no,
                    name: input.to_string(),
                });
            }
        }
        match &step.call {
            Call::Join(..) | Call::Meet(..) | Call::OnLine(..) | Call::OnCircle(..)
            | Call::SecondMeet(..) => {}
        }
        if !defined.insert(step.name.clone()) {
            return Err(Error::DuplicateIdentifier {
                line: step.line_no,
                name: step.name.clone(),
            });
        }
    }
    for (name, _) in &p.outputs {
        if !defined.contains(name) {
            return Err(Error::UnknownIdentifier { line: 0, name: name.clone() });
        }
    }
    Ok(())
}
