//! Verdicts on Morita equivalence and isomorphism of the algebras of two
//! purely infinite simple graphs, read off the Franks invariants.
//!
//! * different groups: not Morita equivalent (the group is a Morita invariant);
//! * equal groups and determinants: Morita equivalent, and isomorphic
//!   exactly when some group isomorphism matches the unit classes;
//! * equal groups, determinants of opposite sign: unknown. Whether the sign
//!   alone can obstruct equivalence is an open question, so no claim is made.

use std::fmt;

use serde_json::{json, Value};

use crate::exactla::{group_iso, Answer};
use crate::graph::{classify_graph, MultiGraph};
use crate::invariants::{equiv_unitary_pair, franks_triple, FranksTriple};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Level {
    Isomorphic,
    /// Morita equivalent, with isomorphism ruled out.
    MoritaEquivalentNotIsomorphic,
    /// Morita equivalent, isomorphism undetermined.
    MoritaEquivalent,
    NotMoritaEquivalent,
    Unknown,
}

impl Level {
    pub fn name(self) -> &'static str {
        match self {
            Level::Isomorphic => "Isomorphic",
            Level::MoritaEquivalentNotIsomorphic => "MoritaEquivalent+NotIsomorphic",
            Level::MoritaEquivalent => "MoritaEquivalent",
            Level::NotMoritaEquivalent => "NotMoritaEquivalent",
            Level::Unknown => "Unknown",
        }
    }
}

/// Why a verdict was reached; exactly one per verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Reason {
    /// Groups, unit classes and determinants all agree.
    FranksTriple,
    /// Groups and determinants agree; unit classes are inequivalent.
    UnitClassMismatch,
    /// The Grothendieck groups differ.
    GroupMismatch,
    /// Groups agree, determinants differ in sign.
    DeterminantSignGap,
    /// The unit-class comparison hit a resource bound.
    PointedResourceCap,
    /// An input is outside the purely infinite simple class (or has a
    /// source, where required).
    NonPisInput,
}

impl Reason {
    pub fn tag(self) -> &'static str {
        match self {
            Reason::FranksTriple => "franks-triple",
            Reason::UnitClassMismatch => "unit-class-mismatch",
            Reason::GroupMismatch => "group-mismatch",
            Reason::DeterminantSignGap => "determinant-sign-gap",
            Reason::PointedResourceCap => "pointed-resource-cap",
            Reason::NonPisInput => "non-pis-input",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub level: Level,
    pub morita_equivalent: Answer,
    pub isomorphic: Answer,
    pub reason: Reason,
    pub explanation: String,
    /// The invariants that were compared.
    pub left: FranksTriple,
    pub right: FranksTriple,
}

impl Verdict {
    pub fn to_json(&self) -> Value {
        json!({
            "level": self.level.name(),
            "morita_equivalent": answer_name(self.morita_equivalent),
            "isomorphic": answer_name(self.isomorphic),
            "reason": self.reason.tag(),
            "explanation": self.explanation,
            "left": self.left.to_json(),
            "right": self.right.to_json(),
        })
    }
}

fn answer_name(a: Answer) -> &'static str {
    match a {
        Answer::Yes => "yes",
        Answer::No => "no",
        Answer::Unknown => "unknown",
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verdict: {}", self.level.name())?;
        writeln!(f, "reason: {} ({})", self.reason.tag(), self.explanation)?;
        writeln!(f, "left:  {} det {}", self.left.pointed(), self.left.determinant())?;
        write!(f, "right: {} det {}", self.right.pointed(), self.right.determinant())
    }
}

fn verdict(
    level: Level,
    morita: Answer,
    iso: Answer,
    reason: Reason,
    explanation: String,
    left: FranksTriple,
    right: FranksTriple,
) -> Verdict {
    Verdict { level, morita_equivalent: morita, isomorphic: iso, reason, explanation, left, right }
}

pub fn decide(e: &MultiGraph, f: &MultiGraph) -> Verdict {
    let (a, b) = (franks_triple(e), franks_triple(f));
    decide_triples(a, b)
}

/// [`decide`] on precomputed invariants.
pub fn decide_triples(a: FranksTriple, b: FranksTriple) -> Verdict {
    use Answer::*;
    if !a.is_pis() || !b.is_pis() {
        let which = match (a.is_pis(), b.is_pis()) {
            (false, false) => "neither graph is",
            (false, true) => "the first graph is not",
            _ => "the second graph is not",
        };
        let text = format!("{which} purely infinite simple; the invariants do not classify such algebras");
        return verdict(Level::Unknown, Unknown, Unknown, Reason::NonPisInput, text, a, b);
    }
    if !group_iso(a.group(), b.group()) {
        let text = format!("Grothendieck groups differ: {} vs {}", a.group(), b.group());
        return verdict(Level::NotMoritaEquivalent, No, No, Reason::GroupMismatch, text, a, b);
    }
    let unit = equiv_unitary_pair(&a, &b);
    if a.determinant() != b.determinant() {
        let text = format!(
            "groups agree but det(I - A^t) = {} vs {} differ in sign; it is open whether the sign alone obstructs equivalence",
            a.determinant(),
            b.determinant()
        );
        let iso = if unit == No { No } else { Unknown };
        return verdict(Level::Unknown, Unknown, iso, Reason::DeterminantSignGap, text, a, b);
    }
    match unit {
        Yes => {
            let text = "groups, unit classes and determinants agree".to_string();
            verdict(Level::Isomorphic, Yes, Yes, Reason::FranksTriple, text, a, b)
        }
        No => {
            let text = "groups and determinants agree, but no group isomorphism matches the unit classes".to_string();
            verdict(Level::MoritaEquivalentNotIsomorphic, Yes, No, Reason::UnitClassMismatch, text, a, b)
        }
        Unknown => {
            let text =
                "groups and determinants agree; the unit-class comparison exceeded its resource bounds".to_string();
            verdict(Level::Unknown, Yes, Unknown, Reason::PointedResourceCap, text, a, b)
        }
    }
}

/// A purely infinite simple graph without sources against its transpose:
/// always Morita equivalent, since transposition preserves both the
/// group and the determinant.
pub fn decide_transpose(g: &MultiGraph) -> Verdict {
    let t = g.transpose();
    let (a, b) = (franks_triple(g), franks_triple(&t));
    let report = classify_graph(g);
    if !report.purely_infinite_simple || report.has_sources {
        let text = "the graph must be purely infinite simple without sources".to_string();
        return verdict(Level::Unknown, Answer::Unknown, Answer::Unknown, Reason::NonPisInput, text, a, b);
    }
    let v = decide_triples(a, b);
    if v.reason == Reason::PointedResourceCap {
        return Verdict { level: Level::MoritaEquivalent, ..v };
    }
    v
}
