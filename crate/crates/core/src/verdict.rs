//! Three-valued outcomes shared by every decision procedure.

use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

/// Which of the three outcomes a procedure reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum VerdictKind {
    /// Every iterate is irreducible (complete criterion).
    ProvedDynamicallyIrreducible,
    /// The iterate carried by the verdict is reducible.
    ReducibleAtIterate,
    /// Iterates up to the carried bound are irreducible; nothing is claimed beyond.
    IrreducibleThrough,
}

impl VerdictKind {
    /// CLI exit code: 0 proved, 1 reducible, 2 inconclusive.
    pub fn exit_code(self) -> i32 {
        match self {
            VerdictKind::ProvedDynamicallyIrreducible => 0,
            VerdictKind::ReducibleAtIterate => 1,
            VerdictKind::IrreducibleThrough => 2,
        }
    }
}

/// Machine-checkable explanation attached to a verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "code", rename_all = "snake_case")]
pub enum Reason {
    /// A value of the adjusted orbit (or a Dickson/Chu quantity) is an r-th power.
    PowerFound {
        value: String,
        r: u64,
        witness: String,
    },
    /// `q = 1 mod r` (or `q = 1 mod 4`) fails, so the first iterate has a root.
    HypothesisFailure { conditions: Vec<String> },
    /// A quantity required to be a nonzero square is zero or a nonsquare.
    NotNonzeroSquare { quantity: String, value: String },
    /// A quantity required to be a non-cube is a cube.
    CubeFound {
        quantity: String,
        value: String,
        witness: String,
    },
    /// The factorization oracle exhibited a proper factor.
    OracleFactor { factor: String, degree: usize },
    /// Input of a shape the criterion rejects outright (e.g. a root at 0).
    Degenerate { detail: String },
    /// A complete criterion certified every iterate.
    Criterion { name: String },
    /// A theorem forces the carried iterate to be reducible.
    Theorem { name: String, detail: String },
    /// The procedure stopped at a bound without a decision beyond it.
    BoundReached { detail: String },
}

/// A decision with its evidence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    /// Least reducible iterate, or the last iterate known irreducible.
    pub iterate: Option<usize>,
    pub reason: Reason,
}

impl Verdict {
    pub fn proved(criterion: &str) -> Verdict {
        Verdict {
            kind: VerdictKind::ProvedDynamicallyIrreducible,
            iterate: None,
            reason: Reason::Criterion {
                name: criterion.to_string(),
            },
        }
    }

    pub fn reducible_at(n: usize, reason: Reason) -> Verdict {
        Verdict {
            kind: VerdictKind::ReducibleAtIterate,
            iterate: Some(n),
            reason,
        }
    }

    pub fn irreducible_through(n: usize, detail: impl Into<String>) -> Verdict {
        Verdict {
            kind: VerdictKind::IrreducibleThrough,
            iterate: Some(n),
            reason: Reason::BoundReached {
                detail: detail.into(),
            },
        }
    }

    pub fn is_proved(&self) -> bool {
        self.kind == VerdictKind::ProvedDynamicallyIrreducible
    }

    /// `Some(n)` when the verdict says iterate `n` is reducible.
    pub fn reducible_iterate(&self) -> Option<usize> {
        match self.kind {
            VerdictKind::ReducibleAtIterate => self.iterate,
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": self.kind,
            "iterate": self.iterate,
            "reason": self.reason,
        })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.kind, self.iterate) {
            (VerdictKind::ProvedDynamicallyIrreducible, _) => write!(f, "ProvedDynamicallyIrreducible"),
            (VerdictKind::ReducibleAtIterate, Some(n)) => write!(f, "ReducibleAtIterate({n})"),
            (VerdictKind::IrreducibleThrough, Some(n)) => write!(f, "IrreducibleThrough({n})"),
            (kind, None) => write!(f, "{kind:?}"),
        }
    }
}
