//! Explosion principles and paraconsistency classifiers.
//!
//! Every check quantifies over the logic's items. Explicit structures are
//! searched exhaustively. Matrix logics are structural, so a rule checked at
//! distinct variables holds for every instance; for the existential notions
//! (NF, NFF) they rely on fixpoint/absorber certificates and on trivializing
//! contexts, and fall back to `Unknown` with the fragment bound otherwise.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::logic::{
    BinaryOperator, Certificate, Fact, Logic, Status, Triviality, UnaryOperator, Verdict,
};
use crate::structures::Carrier;

pub type Unary<'a, I> = &'a dyn UnaryOperator<I>;
pub type Binary<'a, I> = &'a dyn BinaryOperator<I>;

const SCHEMATIC: &str = "checked at distinct variables; exact by substitution";

/// A total unary map on a carrier.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NegationMap(pub Vec<usize>);

impl NegationMap {
    pub fn new(carrier: &Carrier, map: Vec<usize>) -> Result<Self> {
        if map.len() != carrier.len() {
            return Err(Error::InvalidStructure(format!(
                "negation map has {} entries on a carrier of {}",
                map.len(),
                carrier.len()
            )));
        }
        for &x in &map {
            carrier.check_index(x)?;
        }
        Ok(NegationMap(map))
    }
}

impl UnaryOperator<usize> for NegationMap {
    fn apply(&self, a: &usize) -> usize {
        self.0[*a]
    }
}

/// A total binary map on a carrier, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FusionMap {
    n: usize,
    table: Vec<usize>,
}

impl FusionMap {
    pub fn new(carrier: &Carrier, table: Vec<usize>) -> Result<Self> {
        let n = carrier.len();
        if table.len() != n * n {
            return Err(Error::InvalidStructure(format!(
                "fusion table has {} entries, expected {}",
                table.len(),
                n * n
            )));
        }
        for &x in &table {
            carrier.check_index(x)?;
        }
        Ok(FusionMap { n, table })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        FusionMap {
            n,
            table: (0..n * n).map(|i| f(i / n, i % n)).collect(),
        }
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }
}

impl BinaryOperator<usize> for FusionMap {
    fn apply(&self, a: &usize, b: &usize) -> usize {
        self.table[a * self.n + b]
    }
}

fn tuples<I: Clone>(scope: &[I], arity: usize) -> Vec<Vec<I>> {
    let mut out = vec![Vec::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|t| {
                scope.iter().map(move |x| {
                    let mut t = t.clone();
                    t.push(x.clone());
                    t
                })
            })
            .collect();
    }
    out
}

/// `(is trivial, fact)` for a premise set.
fn triviality_fact<L: Logic + ?Sized>(p: &L, premises: Vec<L::Item>) -> Result<(bool, Fact<L::Item>)> {
    Ok(match p.trivializes(&premises)? {
        Triviality::Trivial => (true, Fact::Trivial { premises }),
        Triviality::Escapes {
            conclusion,
            countermodel,
        } => (
            false,
            Fact::Escapes {
                premises,
                conclusion,
                countermodel,
            },
        ),
    })
}

fn entailment_fact<L: Logic + ?Sized>(
    p: &L,
    premises: Vec<L::Item>,
    conclusion: L::Item,
) -> Result<(bool, Fact<L::Item>)> {
    Ok(match p.entails(&premises, &conclusion)? {
        crate::logic::Entailment::Holds => (
            true,
            Fact::Entails {
                premises,
                conclusion,
            },
        ),
        crate::logic::Entailment::Fails { countermodel } => (
            false,
            Fact::Escapes {
                premises,
                conclusion,
                countermodel,
            },
        ),
    })
}

/// Checks a universally quantified rule of the given arity. The witness of a
/// failure is the first item of the failing tuple.
fn universal<L: Logic + ?Sized>(
    p: &L,
    arity: usize,
    mut test: impl FnMut(&[L::Item]) -> Result<(bool, Vec<Fact<L::Item>>)>,
) -> Result<Verdict<L::Item>> {
    let (cases, exact, note) = match p.generic(arity) {
        Some(g) => (vec![g], true, Some(SCHEMATIC.to_string())),
        None => (tuples(&p.scope(), arity), p.scope_is_complete(), None),
    };
    let mut facts = Vec::new();
    for case in &cases {
        let (ok, mut case_facts) = test(case)?;
        if !ok {
            let failing = case_facts.pop().expect("a failing case reports a fact");
            return Ok(Verdict::new(
                Status::Fails,
                Certificate {
                    witness: case.first().cloned(),
                    facts: vec![failing],
                    note,
                },
            ));
        }
        facts.extend(case_facts);
    }
    let cert = Certificate {
        witness: None,
        facts,
        note,
    };
    Ok(if exact {
        Verdict::new(Status::Holds, cert)
    } else {
        Verdict::unknown(cert, p.evidence_bound())
    })
}

/// `{α, ¬α}` trivializes for every `α`. Fails exactly when the logic is
/// paraconsistent.
pub fn check_ecq<L: Logic + ?Sized>(p: &L, neg: Unary<L::Item>) -> Result<Verdict<L::Item>> {
    universal(p, 1, |t| {
        let (ok, fact) = triviality_fact(p, vec![t[0].clone(), neg.apply(&t[0])])?;
        Ok((ok, vec![fact]))
    })
}

/// `{α ⋏ ¬α}` trivializes for every `α` (∧-ECQ when ⋏ is conjunction).
pub fn check_conj_ecq<L: Logic + ?Sized>(
    p: &L,
    neg: Unary<L::Item>,
    fus: Binary<L::Item>,
) -> Result<Verdict<L::Item>> {
    universal(p, 1, |t| {
        let (ok, fact) = triviality_fact(p, vec![fus.apply(&t[0], &neg.apply(&t[0]))])?;
        Ok((ok, vec![fact]))
    })
}

/// `∅ ⊢ (α ∧ ¬α) → β` for all `α, β`.
pub fn check_aecq<L: Logic + ?Sized>(
    p: &L,
    neg: Unary<L::Item>,
    conj: Binary<L::Item>,
    imp: Binary<L::Item>,
) -> Result<Verdict<L::Item>> {
    universal(p, 2, |t| {
        let (a, b) = (&t[0], &t[1]);
        let f = imp.apply(&conj.apply(a, &neg.apply(a)), b);
        let (ok, fact) = entailment_fact(p, Vec::new(), f)?;
        Ok((ok, vec![fact]))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AefqVariant {
    /// `¬α → (α → β)`.
    One,
    /// `α → (¬α → β)`.
    Two,
}

pub fn check_aefq<L: Logic + ?Sized>(
    p: &L,
    neg: Unary<L::Item>,
    imp: Binary<L::Item>,
    variant: AefqVariant,
) -> Result<Verdict<L::Item>> {
    universal(p, 2, |t| {
        let (a, b) = (&t[0], &t[1]);
        let na = neg.apply(a);
        let f = match variant {
            AefqVariant::One => imp.apply(&na, &imp.apply(a, b)),
            AefqVariant::Two => imp.apply(a, &imp.apply(&na, b)),
        };
        let (ok, fact) = entailment_fact(p, Vec::new(), f)?;
        Ok((ok, vec![fact]))
    })
}

/// Holds iff `C({⊥}) ≠ L`.
pub fn check_bot_paraconsistency<L: Logic + ?Sized>(p: &L, bot: &L::Item) -> Result<Verdict<L::Item>> {
    let (trivial, fact) = triviality_fact(p, vec![bot.clone()])?;
    let witness = match &fact {
        Fact::Escapes { conclusion, .. } => Some(conclusion.clone()),
        _ => None,
    };
    Ok(Verdict::new(
        Status::from_bool(!trivial),
        Certificate {
            witness,
            facts: vec![fact],
            note: None,
        },
    ))
}

/// Searches the scope exhaustively for an `α` that no `β` in `betas`
/// trivializes together with `α`, given a premise builder.
fn exhaustive_exists_forall<L: Logic + ?Sized>(
    p: &L,
    alphas: &[L::Item],
    betas: &[L::Item],
    premises: impl Fn(&L::Item, &L::Item) -> Vec<L::Item>,
) -> Result<Verdict<L::Item>> {
    let mut refutations = Vec::new();
    'alpha: for a in alphas {
        let mut escapes = Vec::new();
        for b in betas {
            let (trivial, fact) = triviality_fact(p, premises(a, b))?;
            if trivial {
                refutations.push(fact);
                continue 'alpha;
            }
            escapes.push(fact);
        }
        return Ok(Verdict::new(
            Status::Holds,
            Certificate {
                witness: Some(a.clone()),
                facts: escapes,
                note: None,
            },
        ));
    }
    Ok(Verdict::new(
        Status::Fails,
        Certificate {
            witness: None,
            facts: refutations,
            note: None,
        },
    ))
}

/// Structural refutation: a context `s` with `premises(x1, s)` trivial gives
/// every `α` the partner `s[x1 := α]`.
fn trivializing_context<L: Logic + ?Sized>(
    p: &L,
    premises: impl Fn(&L::Item, &L::Item) -> Vec<L::Item>,
) -> Result<Option<Verdict<L::Item>>> {
    let Some(g) = p.generic(1) else {
        return Ok(None);
    };
    let x1 = &g[0];
    for s in p.scope() {
        let (trivial, fact) = triviality_fact(p, premises(x1, &s))?;
        if trivial {
            let note = format!(
                "context {} trivializes with {}; substituting any α for {} gives its partner",
                p.describe(&s),
                p.describe(x1),
                p.describe(x1)
            );
            return Ok(Some(Verdict::new(
                Status::Fails,
                Certificate {
                    witness: Some(s),
                    facts: vec![fact],
                    note: Some(note),
                },
            )));
        }
    }
    Ok(None)
}

fn escapes_over_scope<L: Logic + ?Sized>(
    p: &L,
    premises: impl Fn(&L::Item) -> Vec<L::Item>,
) -> Result<Vec<Fact<L::Item>>> {
    p.scope()
        .iter()
        .map(|b| triviality_fact(p, premises(b)).map(|(_, f)| f))
        .collect()
}

/// NF-paraconsistency: some `α` with `C({α, β}) ≠ L` for every `β`
/// (including `β = α`).
pub fn check_nf_paraconsistency<L: Logic + ?Sized>(p: &L) -> Result<Verdict<L::Item>> {
    let scope = p.scope();
    if p.scope_is_complete() {
        return exhaustive_exists_forall(p, &scope, &scope, |a, b| vec![a.clone(), b.clone()]);
    }
    if let (Some(d), Some(g)) = (p.designated_fixpoint(), p.generic(1)) {
        let x1 = g[0].clone();
        let facts = escapes_over_scope(p, |b| vec![x1.clone(), b.clone()])?;
        return Ok(Verdict::new(
            Status::Holds,
            Certificate {
                witness: Some(x1),
                facts,
                note: Some(format!(
                    "designated fixpoint {d}: the constant valuation designates every formula"
                )),
            },
        ));
    }
    if let Some(v) = trivializing_context(p, |a, s| vec![a.clone(), s.clone()])? {
        return Ok(v);
    }
    Ok(Verdict::unknown(
        Certificate::note("no designated fixpoint and no trivializing context in the fragment"),
        p.evidence_bound(),
    ))
}

/// `α ⋏ β ⊢ β ⋏ α` for all `α, β`.
pub fn check_fusion_commutativity<L: Logic + ?Sized>(
    p: &L,
    fus: Binary<L::Item>,
) -> Result<Verdict<L::Item>> {
    universal(p, 2, |t| {
        let (ok, fact) = entailment_fact(p, vec![fus.apply(&t[0], &t[1])], fus.apply(&t[1], &t[0]))?;
        Ok((ok, vec![fact]))
    })
}

fn require_commutative<L: Logic + ?Sized>(p: &L, fus: Binary<L::Item>) -> Result<()> {
    let v = check_fusion_commutativity(p, fus)?;
    if v.fails() {
        let fact = v.certificate.facts.first().map(|f| f.render(p)).unwrap_or_default();
        return Err(Error::NonCommutativeFusion(fact));
    }
    Ok(())
}

/// NFF-paraconsistency: some `α` with `C({α ⋏ β}) ≠ L` for every `β`.
pub fn check_nff_paraconsistency<L: Logic + ?Sized>(
    p: &L,
    fus: Binary<L::Item>,
) -> Result<Verdict<L::Item>> {
    require_commutative(p, fus)?;
    let scope = p.scope();
    if p.scope_is_complete() {
        return exhaustive_exists_forall(p, &scope, &scope, |a, b| vec![fus.apply(a, b)]);
    }
    if let Some(g) = p.generic(2) {
        let fused = fus.apply(&g[0], &g[1]);
        if let Some(abs) = p.designated_absorber(&fused) {
            let x1 = g[0].clone();
            let facts = escapes_over_scope(p, |b| vec![fus.apply(&x1, b)])?;
            let kind = if abs.infectious {
                "infectious designated element"
            } else {
                "designated absorber"
            };
            return Ok(Verdict::new(
                Status::Holds,
                Certificate {
                    witness: Some(x1),
                    facts,
                    note: Some(format!(
                        "{kind} {}: sending the witness to it designates every fusion",
                        abs.element
                    )),
                },
            ));
        }
    }
    if let Some(v) = trivializing_context(p, |a, s| vec![fus.apply(a, s)])? {
        return Ok(v);
    }
    Ok(Verdict::unknown(
        Certificate::note("no designated absorber and no trivializing context in the fragment"),
        p.evidence_bound(),
    ))
}

/// ⋏I: `{α, β} ⊢ α ⋏ β`.
pub fn validate_fusion_intro<L: Logic + ?Sized>(
    p: &L,
    fus: Binary<L::Item>,
) -> Result<Verdict<L::Item>> {
    universal(p, 2, |t| {
        let (ok, fact) = entailment_fact(p, t.to_vec(), fus.apply(&t[0], &t[1]))?;
        Ok((ok, vec![fact]))
    })
}

/// ⋏E: `α ⋏ β ⊢ α` and `α ⋏ β ⊢ β`.
pub fn validate_fusion_elim<L: Logic + ?Sized>(
    p: &L,
    fus: Binary<L::Item>,
) -> Result<Verdict<L::Item>> {
    universal(p, 2, |t| {
        let fused = fus.apply(&t[0], &t[1]);
        let mut facts = Vec::new();
        for side in [&t[0], &t[1]] {
            let (ok, fact) = entailment_fact(p, vec![fused.clone()], side.clone())?;
            facts.push(fact);
            if !ok {
                return Ok((false, facts));
            }
        }
        Ok((true, facts))
    })
}

/// K-paraconsistency: some `α` with `C({α, β}) ≠ L` for every `β ∈ K`.
pub fn check_k_paraconsistency<L: Logic + ?Sized>(p: &L, k: &[L::Item]) -> Result<Verdict<L::Item>> {
    let scope = p.scope();
    if p.scope_is_complete() {
        return exhaustive_exists_forall(p, &scope, k, |a, b| vec![a.clone(), b.clone()]);
    }
    let Some(alpha) = p.fresh(k) else {
        return Ok(Verdict::unknown(
            Certificate::note("no fresh item available"),
            p.evidence_bound(),
        ));
    };
    if p.laws()?.monotone {
        for b in k {
            let (trivial, fact) = triviality_fact(p, vec![b.clone()])?;
            if trivial {
                return Ok(Verdict::new(
                    Status::Fails,
                    Certificate {
                        witness: Some(b.clone()),
                        facts: vec![fact],
                        note: Some("trivial on its own, so every pair containing it is trivial".into()),
                    },
                ));
            }
        }
    }
    let mut facts = Vec::new();
    for b in k {
        let (trivial, fact) = triviality_fact(p, vec![alpha.clone(), b.clone()])?;
        if trivial {
            return Ok(Verdict::unknown(
                Certificate {
                    witness: Some(b.clone()),
                    facts: vec![fact],
                    note: Some("non-monotone logic: a fresh item did not settle the question".into()),
                },
                p.evidence_bound(),
            ));
        }
        facts.push(fact);
    }
    Ok(Verdict::new(
        Status::Holds,
        Certificate {
            witness: Some(alpha),
            facts,
            note: Some("the witness shares no variable with K".into()),
        },
    ))
}

/// One theorem-consistency check: whenever the hypotheses hold, the
/// conclusion's verdict must agree with the theorem.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremCheck {
    pub theorem: &'static str,
    pub applicable: bool,
    pub consistent: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub checks: Vec<TheoremCheck>,
}

impl TheoremReport {
    pub fn violations(&self) -> impl Iterator<Item = &TheoremCheck> {
        self.checks.iter().filter(|c| !c.consistent)
    }

    pub fn consistent(&self) -> bool {
        self.checks.iter().all(|c| c.consistent)
    }

    fn push(&mut self, theorem: &'static str, applicable: bool, consistent: bool, detail: String) {
        self.checks.push(TheoremCheck {
            theorem,
            applicable,
            consistent: !applicable || consistent,
            detail,
        });
    }
}

pub const THEOREM_NF_PARA: &str = "NF-paraconsistent implies paraconsistent";
pub const THEOREM_NF_BOT: &str = "monotone and not ⊥-paraconsistent implies not NF-paraconsistent";
pub const THEOREM_FUSION_INTRO: &str = "⋏I: NF-paraconsistent implies NFF-paraconsistent";
pub const THEOREM_FUSION_ELIM: &str = "⋏E: NFF-paraconsistent implies NF-paraconsistent";
pub const THEOREM_ECQ_CONJ: &str = "∧I and ∧E: ECQ iff ∧-ECQ";

/// Cross-checks the implications between the classifiers on one structure.
///
/// The fusion lemma and the ECQ/∧-ECQ equivalence are applied only to
/// strongly transitive logics, the property their proofs use.
pub fn theorem_suite<L: Logic + ?Sized>(
    p: &L,
    neg: Option<Unary<L::Item>>,
    bot: Option<&L::Item>,
    fus: Option<Binary<L::Item>>,
) -> Result<TheoremReport> {
    let mut report = TheoremReport::default();
    let laws = p.laws()?;
    let nf = check_nf_paraconsistency(p)?.status;
    let ecq = match neg {
        Some(n) => Some(check_ecq(p, n)?.status),
        None => None,
    };
    if let Some(ecq) = ecq {
        report.push(
            THEOREM_NF_PARA,
            nf == Status::Holds,
            ecq == Status::Fails,
            format!("NF {nf}, ECQ {ecq}"),
        );
    }
    if let Some(b) = bot {
        let bp = check_bot_paraconsistency(p, b)?.status;
        report.push(
            THEOREM_NF_BOT,
            laws.monotone && bp == Status::Fails,
            nf == Status::Fails,
            format!("monotone {}, ⊥-para {bp}, NF {nf}", laws.monotone),
        );
    }
    if let Some(f) = fus {
        let nff = match check_nff_paraconsistency(p, f) {
            Ok(v) => Some(v.status),
            Err(Error::NonCommutativeFusion(_)) => None,
            Err(e) => return Err(e),
        };
        let intro = validate_fusion_intro(p, f)?.status;
        let elim = validate_fusion_elim(p, f)?.status;
        let st = laws.strongly_transitive;
        match nff {
            Some(nff) => {
                report.push(
                    THEOREM_FUSION_INTRO,
                    st && intro == Status::Holds && nf == Status::Holds,
                    nff == Status::Holds,
                    format!("⋏I {intro}, NF {nf}, NFF {nff}"),
                );
                report.push(
                    THEOREM_FUSION_ELIM,
                    st && elim == Status::Holds && nff == Status::Holds,
                    nf == Status::Holds,
                    format!("⋏E {elim}, NFF {nff}, NF {nf}"),
                );
            }
            None => {
                let detail = "fusion violates commutativity".to_string();
                report.push(THEOREM_FUSION_INTRO, false, true, detail.clone());
                report.push(THEOREM_FUSION_ELIM, false, true, detail);
            }
        }
        if let (Some(n), Some(ecq)) = (neg, ecq) {
            let conj = check_conj_ecq(p, n, f)?.status;
            let decided = ecq != Status::Unknown && conj != Status::Unknown;
            report.push(
                THEOREM_ECQ_CONJ,
                st && intro == Status::Holds && elim == Status::Holds && decided,
                ecq == conj,
                format!("∧I {intro}, ∧E {elim}, ECQ {ecq}, ∧-ECQ {conj}"),
            );
        }
    }
    Ok(report)
}
