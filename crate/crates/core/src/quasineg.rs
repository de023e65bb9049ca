//! Quasi-negations: `QN(α) = {β : C({α, β}) = L}`.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::classify::{check_bot_paraconsistency, check_ecq, check_nf_paraconsistency, TheoremReport, Unary};
use crate::error::{Error, Result};
use crate::formulas::{Formula, Signature};
use crate::logic::{Certificate, EvidenceBound, Fact, Logic, Status, Verdict};
use crate::matrix::{MatrixConsequence, Valuation};

/// `QN(α)` restricted to a universe of candidate partners.
#[derive(Clone, Debug, PartialEq)]
pub struct QuasiNegationSet<I> {
    pub subject: I,
    pub members: Vec<I>,
    pub universe_size: usize,
    pub evidence: Option<EvidenceBound>,
}

impl<I> QuasiNegationSet<I> {
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

pub fn qn_set<L: Logic + ?Sized>(p: &L, alpha: &L::Item, universe: &[L::Item]) -> Result<QuasiNegationSet<L::Item>> {
    let mut members = Vec::new();
    for b in universe {
        if p.trivializes(&[alpha.clone(), b.clone()])?.is_trivial() {
            members.push(b.clone());
        }
    }
    Ok(QuasiNegationSet {
        subject: alpha.clone(),
        members,
        universe_size: universe.len(),
        evidence: p.evidence_bound(),
    })
}

/// `α ∈ QN(β)` for every `β ∈ QN(α)`.
pub fn check_quasi_double_negation<L: Logic + ?Sized>(
    p: &L,
    alpha: &L::Item,
    universe: &[L::Item],
) -> Result<Verdict<L::Item>> {
    let qn = qn_set(p, alpha, universe)?;
    let mut facts = Vec::new();
    for b in &qn.members {
        let premises = vec![b.clone(), alpha.clone()];
        if !p.trivializes(&premises)?.is_trivial() {
            return Ok(Verdict::new(
                Status::Fails,
                Certificate {
                    witness: Some(b.clone()),
                    facts: vec![Fact::Trivial {
                        premises: vec![alpha.clone(), b.clone()],
                    }],
                    note: Some("trivial in one order but not the other".into()),
                },
            ));
        }
        facts.push(Fact::Trivial { premises });
    }
    let note = qn.is_empty().then(|| "QN is empty; holds vacuously".to_string());
    Ok(Verdict::new(
        Status::Holds,
        Certificate {
            witness: None,
            facts,
            note,
        },
    ))
}

/// `QN(β) ⊆ QN(α)` when `α ⊢ β` in a Tarskian logic.
pub fn check_qn_antitone<L: Logic + ?Sized>(
    p: &L,
    alpha: &L::Item,
    beta: &L::Item,
    universe: &[L::Item],
) -> Result<Verdict<L::Item>> {
    if !p.laws()?.tarskian() {
        return Err(Error::Inapplicable("the logic is not Tarskian".into()));
    }
    if !p.entails(std::slice::from_ref(alpha), beta)?.holds() {
        return Err(Error::Inapplicable(format!(
            "{} does not entail {}",
            p.describe(alpha),
            p.describe(beta)
        )));
    }
    let mut facts = vec![Fact::Entails {
        premises: vec![alpha.clone()],
        conclusion: beta.clone(),
    }];
    for g in qn_set(p, beta, universe)?.members {
        let premises = vec![alpha.clone(), g.clone()];
        match p.trivializes(&premises)? {
            crate::logic::Triviality::Trivial => facts.push(Fact::Trivial { premises }),
            crate::logic::Triviality::Escapes {
                conclusion,
                countermodel,
            } => {
                return Ok(Verdict::new(
                    Status::Fails,
                    Certificate {
                        witness: Some(g.clone()),
                        facts: vec![
                            Fact::Trivial {
                                premises: vec![beta.clone(), g],
                            },
                            Fact::Escapes {
                                premises,
                                conclusion,
                                countermodel,
                            },
                        ],
                        note: Some("theorem violated: implementation fault".into()),
                    },
                ))
            }
        }
    }
    Ok(Verdict::new(
        Status::Holds,
        Certificate {
            witness: None,
            facts,
            note: None,
        },
    ))
}

/// First pair `(α, β)` of the universe with `β ∈ QN(α)` but `α ∉ QN(β)`.
pub fn qn_symmetry_violation<L: Logic + ?Sized>(p: &L, universe: &[L::Item]) -> Result<Option<(L::Item, L::Item)>> {
    for a in universe {
        for b in universe {
            let ab = p.trivializes(&[a.clone(), b.clone()])?.is_trivial();
            let ba = p.trivializes(&[b.clone(), a.clone()])?.is_trivial();
            if ab != ba {
                return Ok(Some((a.clone(), b.clone())));
            }
        }
    }
    Ok(None)
}

pub const LINK_PARA: &str = "paraconsistent iff some ¬α ∉ QN(α)";
pub const LINK_NF: &str = "NF-paraconsistent iff some QN(α) is empty";
pub const LINK_BOT: &str = "monotone and QN(⊥) ≠ L implies ⊥-paraconsistent";

/// Compares the QN characterizations of paraconsistency with the
/// classifier verdicts, over the logic's scope.
pub fn qn_paraconsistency_links<L: Logic + ?Sized>(
    p: &L,
    neg: Option<Unary<L::Item>>,
    bot: Option<&L::Item>,
) -> Result<TheoremReport> {
    let scope = p.scope();
    let mut report = TheoremReport::default();
    let mut push = |theorem, applicable: bool, consistent: bool, detail: String| {
        report.checks.push(crate::classify::TheoremCheck {
            theorem,
            applicable,
            consistent: !applicable || consistent,
            detail,
        })
    };
    if let Some(n) = neg {
        let ecq = check_ecq(p, n)?.status;
        let mut outside = None;
        for a in &scope {
            if !p.trivializes(&[a.clone(), n.apply(a)])?.is_trivial() {
                outside = Some(a);
                break;
            }
        }
        let detail = match outside {
            Some(a) => format!("ECQ {ecq}; ¬α ∉ QN(α) at α = {}", p.describe(a)),
            None => format!("ECQ {ecq}; ¬α ∈ QN(α) throughout"),
        };
        push(LINK_PARA, ecq != Status::Unknown, (ecq == Status::Fails) == outside.is_some(), detail);
    }
    // a refuting context supplies each α's partner, which may lie outside
    // the scope
    let nf = check_nf_paraconsistency(p)?;
    let context = if nf.fails() { nf.certificate.witness.clone() } else { None };
    let nf = nf.status;
    let mut empty = None;
    for a in &scope {
        let mut universe = scope.clone();
        if let Some(inst) = context.as_ref().and_then(|s| p.instantiate(s, a)) {
            if !universe.contains(&inst) {
                universe.push(inst);
            }
        }
        if qn_set(p, a, &universe)?.is_empty() {
            empty = Some(a);
            break;
        }
    }
    let detail = match empty {
        Some(a) => format!("NF {nf}; QN({}) = ∅", p.describe(a)),
        None => format!("NF {nf}; every QN(α) is non-empty"),
    };
    push(LINK_NF, nf != Status::Unknown, (nf == Status::Holds) == empty.is_some(), detail);
    if let Some(b) = bot {
        let monotone = p.laws()?.monotone;
        let qn = qn_set(p, b, &scope)?;
        let proper = qn.members.len() < scope.len();
        let bp = check_bot_paraconsistency(p, b)?.status;
        push(
            LINK_BOT,
            monotone && proper,
            bp == Status::Holds,
            format!(
                "monotone {monotone}; |QN(⊥)| = {} of {}; ⊥-para {bp}",
                qn.members.len(),
                scope.len()
            ),
        );
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum KiteProperty {
    Contraposition,
    GaloisDoubleNegation,
    ConstructiveDoubleNegation,
    ClassicalDoubleNegation,
    Absurdity,
}

impl KiteProperty {
    pub const ALL: [KiteProperty; 5] = [
        KiteProperty::Contraposition,
        KiteProperty::GaloisDoubleNegation,
        KiteProperty::ConstructiveDoubleNegation,
        KiteProperty::ClassicalDoubleNegation,
        KiteProperty::Absurdity,
    ];

    pub fn number(self) -> usize {
        self as usize + 1
    }

    pub fn name(self) -> &'static str {
        match self {
            KiteProperty::Contraposition => "contraposition",
            KiteProperty::GaloisDoubleNegation => "Galois double negation",
            KiteProperty::ConstructiveDoubleNegation => "constructive double negation",
            KiteProperty::ClassicalDoubleNegation => "classical double negation",
            KiteProperty::Absurdity => "absurdity",
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            KiteProperty::Contraposition => "α ⊢ β implies ∼β ⊢ ∼α",
            KiteProperty::GaloisDoubleNegation => "α ⊢ ¬∼α and α ⊢ ∼¬α",
            KiteProperty::ConstructiveDoubleNegation => "α ⊢ ∼∼α",
            KiteProperty::ClassicalDoubleNegation => "∼∼α ⊢ α",
            KiteProperty::Absurdity => "α ∧ ∼α ⊢ β",
        }
    }
}

/// A valuation refuting a kite property at subject `alpha` (and `beta` for
/// contraposition).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KiteCountermodel {
    #[serde(skip)]
    pub alpha: Formula,
    #[serde(skip)]
    pub beta: Option<Formula>,
    #[serde(skip)]
    pub valuation: Valuation,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KiteResult {
    pub property: KiteProperty,
    pub status: Status,
    pub countermodel: Option<KiteCountermodel>,
    /// Subjects whose relevant quasi-negation set was empty.
    pub vacuous: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KiteReport {
    pub results: Vec<KiteResult>,
    pub evidence: EvidenceBound,
}

impl KiteReport {
    pub fn status(&self, p: KiteProperty) -> Status {
        self.results
            .iter()
            .find(|r| r.property == p)
            .map_or(Status::Unknown, |r| r.status)
    }
}

struct KiteOps {
    and: usize,
    or: usize,
    not: usize,
}

fn kite_ops(sig: &Signature) -> Result<KiteOps> {
    let find = |name: &'static str| {
        sig.find(name)
            .filter(|&c| sig.get(c).arity == if name == "¬" { 1 } else { 2 })
            .ok_or(Error::MissingOperator(name))
    };
    Ok(KiteOps {
        and: find("∧")?,
        or: find("∨")?,
        not: find("¬")?,
    })
}

/// Value vectors over the fragment valuations, with `∼` read as the join of
/// the quasi-negations in the fragment: `v(∼X) = ⋁ {v(β) : β ∈ QN(X)}`.
/// In premise position this is the same as quantifying over every member.
struct Kite<'a> {
    mc: &'a MatrixConsequence,
    ops: KiteOps,
    valuations: usize,
}

type Vector = Vec<u8>;

impl<'a> Kite<'a> {
    fn designated(&self, x: u8) -> bool {
        self.mc.matrix().is_designated(x as usize)
    }

    fn profile(&self, x: &[u8]) -> FixedBitSet {
        let mut bits = FixedBitSet::with_capacity(self.valuations);
        for (j, &v) in x.iter().enumerate() {
            bits.set(j, self.designated(v));
        }
        bits
    }

    fn unary(&self, c: usize, x: &[u8]) -> Vector {
        let a = self.mc.matrix().algebra();
        x.iter().map(|&v| a.apply(c, &[v as usize]) as u8).collect()
    }

    fn binary(&self, c: usize, x: &[u8], y: &[u8]) -> Vector {
        let a = self.mc.matrix().algebra();
        x.iter()
            .zip(y)
            .map(|(&u, &v)| a.apply(c, &[u as usize, v as usize]) as u8)
            .collect()
    }

    /// `∼X`, or `None` when `QN(X)` is empty in the fragment.
    fn tilde(&self, x: &[u8]) -> Option<Vector> {
        let px = self.profile(x);
        let mut acc: Option<Vector> = None;
        for i in 0..self.mc.fragment().len() {
            if px.is_disjoint(self.mc.profile_at(i)) {
                let vi = self.mc.values_at(i);
                acc = Some(match acc {
                    None => vi.to_vec(),
                    Some(a) => self.binary(self.ops.or, &a, vi),
                });
            }
        }
        acc
    }

    /// First valuation designating `x` but not `y`.
    fn refute(&self, x: &[u8], y: &[u8]) -> Option<usize> {
        (0..self.valuations).find(|&j| self.designated(x[j]) && !self.designated(y[j]))
    }

    fn show(&self, x: u8) -> &str {
        self.mc.matrix().algebra().element(x as usize)
    }
}

/// Checks the five kite properties over the fragment of `mc`.
pub fn kite_property_suite(mc: &MatrixConsequence) -> Result<KiteReport> {
    let kite = Kite {
        mc,
        ops: kite_ops(mc.matrix().signature())?,
        valuations: mc.valuation_count(),
    };
    let frag = mc.fragment();
    let n = frag.len();
    let tildes: Vec<Option<Vector>> = (0..n).map(|i| kite.tilde(mc.values_at(i))).collect();
    let describe = |i: usize| mc.describe(&frag.formulas()[i]);
    let cx = |alpha: usize, beta: Option<usize>, j: usize, detail: String| KiteCountermodel {
        alpha: frag.formulas()[alpha].clone(),
        beta: beta.map(|b| frag.formulas()[b].clone()),
        valuation: mc.valuation(j),
        detail,
    };
    let render_v = |j: usize| mc.valuation(j).render(mc.matrix().algebra());

    let mut results = Vec::new();
    for property in KiteProperty::ALL {
        let mut vacuous = 0;
        let mut counter = None;
        'subjects: for i in 0..n {
            let na = mc.values_at(i);
            let Some(ta) = &tildes[i] else {
                if property != KiteProperty::Contraposition {
                    vacuous += 1;
                }
                continue;
            };
            match property {
                KiteProperty::Contraposition => {
                    let pa = mc.profile_at(i);
                    for b in 0..n {
                        if !pa.is_subset(mc.profile_at(b)) {
                            continue;
                        }
                        let Some(tb) = &tildes[b] else {
                            vacuous += 1;
                            continue;
                        };
                        if let Some(j) = kite.refute(tb, ta) {
                            counter = Some(cx(i, Some(b), j, format!(
                                "{} ⊢ {} but at {}: v(∼β) = {}, v(∼α) = {}",
                                describe(i), describe(b), render_v(j), kite.show(tb[j]), kite.show(ta[j])
                            )));
                            break 'subjects;
                        }
                    }
                }
                KiteProperty::GaloisDoubleNegation => {
                    let not_tilde = kite.unary(kite.ops.not, ta);
                    if let Some(j) = kite.refute(na, &not_tilde) {
                        counter = Some(cx(i, None, j, format!(
                            "α = {} at {}: v(α) = {}, v(¬∼α) = {}",
                            describe(i), render_v(j), kite.show(na[j]), kite.show(not_tilde[j])
                        )));
                        break;
                    }
                    let Some(tilde_not) = kite.tilde(&kite.unary(kite.ops.not, na)) else {
                        vacuous += 1;
                        continue;
                    };
                    if let Some(j) = kite.refute(na, &tilde_not) {
                        counter = Some(cx(i, None, j, format!(
                            "α = {} at {}: v(α) = {}, v(∼¬α) = {}",
                            describe(i), render_v(j), kite.show(na[j]), kite.show(tilde_not[j])
                        )));
                        break;
                    }
                }
                KiteProperty::ConstructiveDoubleNegation | KiteProperty::ClassicalDoubleNegation => {
                    let Some(tt) = kite.tilde(ta) else {
                        vacuous += 1;
                        continue;
                    };
                    let (from, to) = if property == KiteProperty::ConstructiveDoubleNegation {
                        (na, tt.as_slice())
                    } else {
                        (tt.as_slice(), na)
                    };
                    if let Some(j) = kite.refute(from, to) {
                        counter = Some(cx(i, None, j, format!(
                            "α = {} at {}: v(α) = {}, v(∼∼α) = {}",
                            describe(i), render_v(j), kite.show(na[j]), kite.show(tt[j])
                        )));
                        break;
                    }
                }
                KiteProperty::Absurdity => {
                    let both = kite.binary(kite.ops.and, na, ta);
                    if let Some(j) = (0..kite.valuations).find(|&j| kite.designated(both[j])) {
                        counter = Some(cx(i, None, j, format!(
                            "α = {} at {}: v(α ∧ ∼α) = {} is designated",
                            describe(i), render_v(j), kite.show(both[j])
                        )));
                        break;
                    }
                }
            }
        }
        results.push(KiteResult {
            property,
            status: if counter.is_some() { Status::Fails } else { Status::Holds },
            countermodel: counter,
            vacuous,
        });
    }
    Ok(KiteReport {
        results,
        evidence: mc.evidence_bound().expect("matrix logics are bounded"),
    })
}

/// Re-derives a kite countermodel from entailment queries and direct
/// evaluation, independently of the cached value vectors.
pub fn replay_kite_countermodel(
    mc: &MatrixConsequence,
    property: KiteProperty,
    cx: &KiteCountermodel,
) -> Result<bool> {
    let ops = kite_ops(mc.matrix().signature())?;
    let a = mc.matrix().algebra();
    let scope = mc.scope();
    let vals: Vec<Valuation> = (0..mc.valuation_count()).map(|j| mc.valuation(j)).collect();
    let eval = |f: &Formula, v: &Valuation| a.evaluate(f, &v.0);
    let d = |x: usize| mc.matrix().is_designated(x);
    // members of QN for a vector given by its values at every valuation
    let qn_of = |x: &[usize]| -> Result<Vec<&Formula>> {
        let mut out = Vec::new();
        for b in &scope {
            let mut clash = false;
            for (v, &xv) in vals.iter().zip(x) {
                if d(xv) && d(eval(b, v)?) {
                    clash = true;
                    break;
                }
            }
            if !clash {
                out.push(b);
            }
        }
        Ok(out)
    };
    let join = |members: &[&Formula], v: &Valuation| -> Result<Option<usize>> {
        let mut acc = None;
        for m in members {
            let x = eval(m, v)?;
            acc = Some(match acc {
                None => x,
                Some(y) => a.apply(ops.or, &[y, x]),
            });
        }
        Ok(acc)
    };
    let tilde_all = |x: &[usize]| -> Result<Option<Vec<usize>>> {
        let members = qn_of(x)?;
        if members.is_empty() {
            return Ok(None);
        }
        vals.iter().map(|v| join(&members, v).map(|o| o.expect("non-empty"))).collect::<Result<Vec<_>>>().map(Some)
    };
    let values_of = |f: &Formula| -> Result<Vec<usize>> { vals.iter().map(|v| eval(f, v)).collect() };
    let j = vals.iter().position(|v| *v == cx.valuation).ok_or_else(|| {
        Error::InvalidStructure("countermodel valuation is outside the fragment".into())
    })?;
    let alpha = values_of(&cx.alpha)?;
    let Some(ta) = tilde_all(&alpha)? else {
        return Ok(false);
    };
    Ok(match property {
        KiteProperty::Contraposition => {
            let Some(beta) = &cx.beta else { return Ok(false) };
            let entailed = mc.entails(std::slice::from_ref(&cx.alpha), beta)?.holds();
            let Some(tb) = tilde_all(&values_of(beta)?)? else {
                return Ok(false);
            };
            entailed && d(tb[j]) && !d(ta[j])
        }
        KiteProperty::GaloisDoubleNegation => {
            let first = d(alpha[j]) && !d(a.apply(ops.not, &[ta[j]]));
            let neg: Vec<usize> = alpha.iter().map(|&x| a.apply(ops.not, &[x])).collect();
            let second = match tilde_all(&neg)? {
                Some(t) => d(alpha[j]) && !d(t[j]),
                None => false,
            };
            first || second
        }
        KiteProperty::ConstructiveDoubleNegation | KiteProperty::ClassicalDoubleNegation => {
            let Some(tt) = tilde_all(&ta)? else {
                return Ok(false);
            };
            if property == KiteProperty::ConstructiveDoubleNegation {
                d(alpha[j]) && !d(tt[j])
            } else {
                d(tt[j]) && !d(alpha[j])
            }
        }
        KiteProperty::Absurdity => d(a.apply(ops.and, &[alpha[j], ta[j]])),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::{enumerate_fragment, parse, UnaryTemplate};
    use crate::matrix::builtin_matrix;
    use crate::structures::{
        poset_consequence, purely_reflexive, Carrier, ConsequenceMap, ConsequenceProvider,
        Direction, ElementSet, Poset,
    };

    fn matrix(name: &str, vars: usize, depth: usize) -> MatrixConsequence {
        let m = builtin_matrix(name).unwrap();
        let frag = enumerate_fragment(m.signature(), vars, depth).unwrap();
        MatrixConsequence::new(m, frag).unwrap()
    }

    fn form(mc: &MatrixConsequence, s: &str) -> Formula {
        parse(s, mc.matrix().signature()).unwrap()
    }

    #[test]
    fn qn_examples() {
        let pr = purely_reflexive(Carrier::new(["a", "b", "c"]).unwrap());
        assert!(qn_set(&pr, &0, &pr.scope()).unwrap().is_empty());

        let cpc = matrix("boolean2", 1, 2);
        let universe: Vec<Formula> = ["p", "~p", "(p & ~p)"].iter().map(|s| form(&cpc, s)).collect();
        let qn = qn_set(&cpc, &universe[0], &universe).unwrap();
        assert_eq!(qn.members, universe[1..].to_vec());

        let pwk0 = matrix("pwk0", 2, 1);
        let zero = form(&pwk0, "0");
        for a in pwk0.scope() {
            assert!(qn_set(&pwk0, &a, &pwk0.scope()).unwrap().members.contains(&zero));
        }
    }

    #[test]
    fn quasi_double_negation() {
        let cpc = matrix("boolean2", 2, 1);
        let scope = cpc.scope();
        for a in &scope {
            assert!(check_quasi_double_negation(&cpc, a, &scope).unwrap().holds());
        }
        let np = form(&cpc, "~p");
        assert!(qn_set(&cpc, &np, &scope).unwrap().members.contains(&form(&cpc, "p")));
        let pr = purely_reflexive(Carrier::new(["a", "b", "c"]).unwrap());
        let v = check_quasi_double_negation(&pr, &0, &pr.scope()).unwrap();
        assert!(v.holds() && v.certificate.note.is_some());
    }

    #[test]
    fn antitone_examples() {
        let cpc = matrix("boolean2", 2, 2);
        let scope = cpc.scope();
        let v = check_qn_antitone(&cpc, &form(&cpc, "(p & q)"), &form(&cpc, "p"), &scope).unwrap();
        assert!(v.holds() && v.replay(&cpc).unwrap());
        assert!(matches!(
            check_qn_antitone(&cpc, &form(&cpc, "p"), &form(&cpc, "q"), &scope),
            Err(Error::Inapplicable(_))
        ));

        let c = Carrier::new(["0", "1", "2"]).unwrap();
        let poset = poset_consequence(Poset::from_names(c, &[("0", "1")]).unwrap(), Direction::Up);
        assert!(matches!(
            check_qn_antitone(&poset, &0, &1, &poset.scope()),
            Err(Error::Inapplicable(_))
        ));
    }

    /// Closure operators on three elements, built from every family of
    /// closed sets containing the carrier and closed under intersection.
    fn tarskian_maps() -> Vec<ConsequenceProvider> {
        let c = Carrier::of_size(3).unwrap();
        let full = c.full();
        let mut out = Vec::new();
        for family in 0u32..(1 << 8) {
            let closed: Vec<ElementSet> = (0..8u64).filter(|s| family >> s & 1 == 1).map(ElementSet).collect();
            if !closed.contains(&full) {
                continue;
            }
            let meet_closed = closed
                .iter()
                .all(|a| closed.iter().all(|b| closed.contains(&a.intersection(*b))));
            if !meet_closed {
                continue;
            }
            let map = ConsequenceMap::from_fn(c.clone(), |g| {
                closed.iter().filter(|s| g.is_subset(**s)).fold(full, |acc, s| acc.intersection(*s))
            })
            .unwrap();
            out.push(ConsequenceProvider::Explicit(map));
        }
        out
    }

    #[test]
    fn antitone_on_all_closure_operators() {
        let maps = tarskian_maps();
        assert_eq!(maps.len(), 61);
        for p in &maps {
            assert!(p.laws().unwrap().tarskian());
            let scope = p.scope();
            for a in 0..3 {
                for b in 0..3 {
                    if p.entails(&[a], &b).unwrap().holds() {
                        assert!(check_qn_antitone(p, &a, &b, &scope).unwrap().holds());
                    }
                }
            }
        }
    }

    #[test]
    fn links_examples() {
        let pr = purely_reflexive(Carrier::new(["a", "b", "c"]).unwrap());
        let r = qn_paraconsistency_links(&pr, None, Some(&0)).unwrap();
        assert!(r.consistent());

        let pwk0 = matrix("pwk0", 2, 1);
        let neg = UnaryTemplate::parse("~", pwk0.matrix().signature()).unwrap();
        let zero = form(&pwk0, "0");
        let qn = qn_set(&pwk0, &zero, &pwk0.scope()).unwrap();
        assert_eq!(qn.members.len(), pwk0.scope().len());
        let r = qn_paraconsistency_links(&pwk0, Some(&neg), Some(&zero)).unwrap();
        assert!(r.consistent(), "{r:?}");

        let cpc = matrix("boolean2", 2, 1);
        let r = qn_paraconsistency_links(&cpc, Some(&neg), None).unwrap();
        assert!(r.consistent(), "{r:?}");
        assert!(r.checks[0].applicable && r.checks[0].detail.contains("ECQ Holds"));
    }

    #[test]
    fn symmetry_everywhere() {
        for name in ["pwk", "pwk0", "boolean2", "godel3"] {
            let mc = matrix(name, 2, 1);
            assert_eq!(qn_symmetry_violation(&mc, &mc.scope()).unwrap(), None);
        }
    }

    #[test]
    fn kite_boolean_and_godel() {
        let cpc = matrix("boolean2", 2, 2);
        let r = kite_property_suite(&cpc).unwrap();
        for res in &r.results {
            assert_eq!(res.status, Status::Holds, "{:?}", res);
        }

        let g3 = matrix("godel3", 2, 2);
        let r = kite_property_suite(&g3).unwrap();
        for res in &r.results {
            let expected = if res.property == KiteProperty::ClassicalDoubleNegation {
                Status::Fails
            } else {
                Status::Holds
            };
            assert_eq!(res.status, expected, "{:?}", res);
        }
        let failing = r.results.iter().find(|x| x.status == Status::Fails).unwrap();
        let cx = failing.countermodel.as_ref().unwrap();
        assert!(replay_kite_countermodel(&g3, failing.property, cx).unwrap());
    }

    #[test]
    fn kite_needs_its_connectives() {
        let m = builtin_matrix("pwk").unwrap();
        let sig = Signature::new(vec![m.signature().get(2).clone()]).unwrap();
        let a = crate::matrix::FiniteAlgebra::new(m.algebra().elements().to_vec(), sig.clone(), vec![m.algebra().table(2).to_vec()])
            .unwrap();
        let neg_only = crate::matrix::Matrix::new(a, m.designated()).unwrap();
        let mc = MatrixConsequence::new(neg_only, enumerate_fragment(&sig, 1, 1).unwrap()).unwrap();
        assert_eq!(kite_property_suite(&mc).unwrap_err(), Error::MissingOperator("∧"));
    }
}
