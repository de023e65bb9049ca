//! The queryable consequence abstraction shared by explicit structures and
//! matrix-induced logics, together with verdicts and their certificates.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;

/// Outcome of a classification question.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    Holds,
    Fails,
    Unknown,
}

impl Status {
    pub fn from_bool(holds: bool) -> Self {
        if holds {
            Status::Holds
        } else {
            Status::Fails
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Holds => "Holds",
            Status::Fails => "Fails",
            Status::Unknown => "Unknown",
        })
    }
}

/// Fragment parameters behind a bounded answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvidenceBound {
    pub vars: usize,
    pub depth: usize,
    pub fresh: usize,
    pub formulas: usize,
}

/// Answer to a single `Γ ⊢ α` query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Entailment {
    Holds,
    Fails { countermodel: Option<String> },
}

impl Entailment {
    pub fn holds(&self) -> bool {
        matches!(self, Entailment::Holds)
    }
}

/// Answer to `C(Γ) = L?`; a non-trivial set names a conclusion it misses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Triviality<I> {
    Trivial,
    Escapes {
        conclusion: I,
        countermodel: Option<String>,
    },
}

impl<I> Triviality<I> {
    pub fn is_trivial(&self) -> bool {
        matches!(self, Triviality::Trivial)
    }
}

/// Which structural rules a consequence relation satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Laws {
    pub reflexive: bool,
    pub monotone: bool,
    /// Cut: `Δ ⊆ C(Γ)` implies `C(Γ ∪ Δ) ⊆ C(Γ)`.
    pub transitive: bool,
    /// Premise replacement: `Δ ⊆ C(Γ)` implies `C(Δ) ⊆ C(Γ)`.
    pub strongly_transitive: bool,
}

impl Laws {
    pub const TARSKIAN: Laws = Laws {
        reflexive: true,
        monotone: true,
        transitive: true,
        strongly_transitive: true,
    };

    pub fn tarskian(&self) -> bool {
        self.reflexive && self.monotone && self.transitive
    }
}

/// An element whose fusion with anything stays designated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Absorber {
    pub element: String,
    pub infectious: bool,
}

/// A consequence relation that can be queried for finite premise sets.
///
/// `scope` is what the classifiers quantify over. For explicit structures it
/// is the whole carrier; for matrix logics it is a formula fragment, and the
/// structural hooks (`generic`, `fresh`, fixpoints, absorbers) supply the
/// arguments that make schema-level answers exact anyway.
pub trait Logic: Sync {
    type Item: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn scope(&self) -> Vec<Self::Item>;

    /// True when `scope` is the entire language.
    fn scope_is_complete(&self) -> bool;

    fn evidence_bound(&self) -> Option<EvidenceBound>;

    fn describe(&self, item: &Self::Item) -> String;

    fn entails(&self, premises: &[Self::Item], conclusion: &Self::Item) -> Result<Entailment>;

    fn trivializes(&self, premises: &[Self::Item]) -> Result<Triviality<Self::Item>>;

    fn laws(&self) -> Result<Laws>;

    /// Distinct schematic items such that a rule checked on them holds for
    /// every instance (structural logics only).
    fn generic(&self, _count: usize) -> Option<Vec<Self::Item>> {
        None
    }

    /// An item sharing nothing with `avoid` (structural logics only).
    fn fresh(&self, _avoid: &[Self::Item]) -> Option<Self::Item> {
        None
    }

    /// `context` with `item` substituted for the first generic item.
    fn instantiate(&self, _context: &Self::Item, _item: &Self::Item) -> Option<Self::Item> {
        None
    }

    /// A designated value fixed by every operation and constant.
    fn designated_fixpoint(&self) -> Option<String> {
        None
    }

    /// For a binary schema over the first two generic items, an element `e`
    /// such that the schema stays designated whenever its left argument is `e`.
    fn designated_absorber(&self, _fused: &Self::Item) -> Option<Absorber> {
        None
    }
}

pub trait UnaryOperator<I> {
    fn apply(&self, a: &I) -> I;
}

pub trait BinaryOperator<I> {
    fn apply(&self, a: &I, b: &I) -> I;
}

/// A single replayable claim about the consequence relation.
#[derive(Clone, Debug, PartialEq)]
pub enum Fact<I> {
    Trivial {
        premises: Vec<I>,
    },
    Escapes {
        premises: Vec<I>,
        conclusion: I,
        countermodel: Option<String>,
    },
    Entails {
        premises: Vec<I>,
        conclusion: I,
    },
}

impl<I: Clone + PartialEq + fmt::Debug + Send + Sync> Fact<I> {
    pub fn replay<L: Logic<Item = I> + ?Sized>(&self, logic: &L) -> Result<bool> {
        Ok(match self {
            Fact::Trivial { premises } => logic.trivializes(premises)?.is_trivial(),
            Fact::Escapes {
                premises,
                conclusion,
                ..
            } => !logic.entails(premises, conclusion)?.holds(),
            Fact::Entails {
                premises,
                conclusion,
            } => logic.entails(premises, conclusion)?.holds(),
        })
    }

    pub fn render<L: Logic<Item = I> + ?Sized>(&self, logic: &L) -> String {
        let set = |items: &[I]| {
            let names: Vec<String> = items.iter().map(|i| logic.describe(i)).collect();
            format!("{{{}}}", names.join(", "))
        };
        match self {
            Fact::Trivial { premises } => format!("C({}) = L", set(premises)),
            Fact::Escapes {
                premises,
                conclusion,
                countermodel,
            } => {
                let mut s = format!("{} ⊬ {}", set(premises), logic.describe(conclusion));
                if let Some(cm) = countermodel {
                    s.push_str(&format!(" [{cm}]"));
                }
                s
            }
            Fact::Entails {
                premises,
                conclusion,
            } => format!("{} ⊢ {}", set(premises), logic.describe(conclusion)),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate<I> {
    pub witness: Option<I>,
    pub facts: Vec<Fact<I>>,
    pub note: Option<String>,
}

impl<I> Default for Certificate<I> {
    fn default() -> Self {
        Certificate {
            witness: None,
            facts: Vec::new(),
            note: None,
        }
    }
}

impl<I> Certificate<I> {
    pub fn note(note: impl Into<String>) -> Self {
        Certificate {
            witness: None,
            facts: Vec::new(),
            note: Some(note.into()),
        }
    }
}

/// Three-valued classification result with its certificate.
#[derive(Clone, Debug, PartialEq)]
pub struct Verdict<I> {
    pub status: Status,
    pub certificate: Certificate<I>,
    pub evidence: Option<EvidenceBound>,
}

impl<I: Clone + PartialEq + fmt::Debug + Send + Sync> Verdict<I> {
    pub fn new(status: Status, certificate: Certificate<I>) -> Self {
        Verdict {
            status,
            certificate,
            evidence: None,
        }
    }

    pub fn unknown(certificate: Certificate<I>, evidence: Option<EvidenceBound>) -> Self {
        Verdict {
            status: Status::Unknown,
            certificate,
            evidence,
        }
    }

    pub fn holds(&self) -> bool {
        self.status == Status::Holds
    }

    pub fn fails(&self) -> bool {
        self.status == Status::Fails
    }

    /// Re-checks every fact of the certificate against the logic.
    pub fn replay<L: Logic<Item = I> + ?Sized>(&self, logic: &L) -> Result<bool> {
        for fact in &self.certificate.facts {
            if !fact.replay(logic)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn render<L: Logic<Item = I> + ?Sized>(&self, logic: &L) -> String {
        self.lines(logic).join("; ")
    }

    /// Witness, note and the first few facts, one per line.
    pub fn lines<L: Logic<Item = I> + ?Sized>(&self, logic: &L) -> Vec<String> {
        let mut parts = Vec::new();
        if let Some(w) = &self.certificate.witness {
            parts.push(format!("witness {}", logic.describe(w)));
        }
        if let Some(note) = &self.certificate.note {
            parts.push(note.clone());
        }
        const SHOWN: usize = 6;
        let facts = &self.certificate.facts;
        for fact in facts.iter().take(SHOWN) {
            parts.push(fact.render(logic));
        }
        if facts.len() > SHOWN {
            parts.push(format!("… {} more facts", facts.len() - SHOWN));
        }
        parts
    }
}
