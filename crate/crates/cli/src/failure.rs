//! Errors reported on stdout as a JSON object, with the exit code class.

use std::fmt;

use mipkit::algebra::AlgebraError;
use mipkit::canonical::CanonicalError;
use mipkit::decomposition::DecompositionError;
use mipkit::group::GroupError;
use serde_json::json;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    /// unreadable or malformed input; exit 2
    Parse,
    /// a size or search limit; exit 3
    Cap,
    /// a verification inside the library failed; exit 4
    Internal,
}

#[derive(Debug)]
pub struct Failure {
    pub kind: Kind,
    pub message: String,
}

impl Failure {
    pub fn parse(message: impl Into<String>) -> Self {
        Failure {
            kind: Kind::Parse,
            message: message.into(),
        }
    }

    pub fn cap(message: impl Into<String>) -> Self {
        Failure {
            kind: Kind::Cap,
            message: message.into(),
        }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        Failure {
            kind: Kind::Internal,
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self.kind {
            Kind::Parse => 2,
            Kind::Cap => 3,
            Kind::Internal => 4,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let kind = match self.kind {
            Kind::Parse => "parse",
            Kind::Cap => "cap",
            Kind::Internal => "internal",
        };
        json!({
            "error": { "exit_code": self.exit_code(), "kind": kind, "message": self.message },
            "version": mipkit::VERSION,
        })
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

fn group_kind(e: &GroupError) -> Kind {
    match e {
        GroupError::UnsupportedPrime(_) | GroupError::OrderCap { .. } => Kind::Cap,
        GroupError::NotPrimePower { .. }
        | GroupError::InvalidTable(_)
        | GroupError::NonAssociative { .. }
        | GroupError::NotPGroup { .. }
        | GroupError::PresentationSyntax { .. }
        | GroupError::InconsistentPresentation(_)
        | GroupError::PrimeMismatch(..) => Kind::Parse,
        _ => Kind::Internal,
    }
}

fn algebra_kind(e: &AlgebraError) -> Kind {
    match e {
        AlgebraError::Group(g) => group_kind(g),
        AlgebraError::SearchCap(_) => Kind::Cap,
        _ => Kind::Internal,
    }
}

impl From<GroupError> for Failure {
    fn from(e: GroupError) -> Self {
        Failure {
            kind: group_kind(&e),
            message: e.to_string(),
        }
    }
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        Failure {
            kind: algebra_kind(&e),
            message: e.to_string(),
        }
    }
}

impl From<DecompositionError> for Failure {
    fn from(e: DecompositionError) -> Self {
        let kind = match &e {
            DecompositionError::Group(g) => group_kind(g),
            DecompositionError::Algebra(a) => algebra_kind(a),
            _ => Kind::Internal,
        };
        Failure {
            kind,
            message: e.to_string(),
        }
    }
}

impl From<CanonicalError> for Failure {
    fn from(e: CanonicalError) -> Self {
        let kind = match &e {
            CanonicalError::Group(g) => group_kind(g),
            CanonicalError::Decomposition(DecompositionError::Group(g)) => group_kind(g),
            CanonicalError::PrimeMismatch(..) => Kind::Parse,
            _ => Kind::Internal,
        };
        Failure {
            kind,
            message: e.to_string(),
        }
    }
}
