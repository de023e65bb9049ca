//! Classifier runs over loaded structures.

use serde::Serialize;

use paracons_core::classify::{
    check_aecq, check_aefq, check_bot_paraconsistency, check_conj_ecq, check_ecq, check_fusion_commutativity,
    check_nf_paraconsistency, check_nff_paraconsistency, theorem_suite, validate_fusion_elim, validate_fusion_intro,
    AefqVariant, Binary, TheoremCheck, Unary,
};
use paracons_core::error::{Error, Result};
use paracons_core::formulas::{enumerate_fragment_with_limit, parse, Formula, DEFAULT_FORMULA_LIMIT};
use paracons_core::logic::{Logic, Status};
use paracons_core::matrix::MatrixConsequence;
use paracons_core::quasineg::{
    check_quasi_double_negation, kite_property_suite, qn_paraconsistency_links, qn_set, qn_symmetry_violation,
    replay_kite_countermodel, KiteReport,
};
use paracons_core::structures::{
    check_monotonicity, check_reflexivity, check_strong_transitivity, check_transitivity, ConsequenceProvider,
};

use crate::report::{FragmentInfo, ReportItem};
use crate::structure::{MatrixStructure, SetStructure, Structure};

pub const FORMULA_LIMIT_VAR: &str = "PARACONS_FORMULA_LIMIT";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FragmentConfig {
    pub vars: usize,
    pub depth: usize,
    pub limit: usize,
}

impl Default for FragmentConfig {
    fn default() -> Self {
        FragmentConfig {
            vars: 2,
            depth: 2,
            limit: DEFAULT_FORMULA_LIMIT,
        }
    }
}

impl FragmentConfig {
    pub fn info(&self) -> FragmentInfo {
        FragmentInfo {
            vars: self.vars,
            depth: self.depth,
            fresh: 1,
        }
    }
}

pub fn matrix_logic(m: &MatrixStructure, cfg: FragmentConfig) -> Result<MatrixConsequence> {
    let frag = enumerate_fragment_with_limit(m.matrix.signature(), cfg.vars, cfg.depth, cfg.limit)?;
    MatrixConsequence::new(m.matrix.clone(), frag)
}

/// Optional operators handed to the generic classifier pass.
pub struct Ops<'a, I> {
    pub negation: Option<Unary<'a, I>>,
    pub fusion: Option<Binary<'a, I>>,
    pub conjunction: Option<Binary<'a, I>>,
    pub implication: Option<Binary<'a, I>>,
    pub bottom: Option<I>,
}

impl<'a> Ops<'a, usize> {
    pub fn of_set(s: &'a SetStructure) -> Self {
        Ops {
            negation: s.negation.as_ref().map(|n| n as Unary<usize>),
            fusion: s.fusion.as_ref().map(|f| f as Binary<usize>),
            conjunction: s.conjunction.as_ref().map(|f| f as Binary<usize>),
            implication: s.implication.as_ref().map(|f| f as Binary<usize>),
            bottom: s.bottom,
        }
    }
}

impl<'a> Ops<'a, Formula> {
    pub fn of_matrix(m: &'a MatrixStructure) -> Self {
        Ops {
            negation: m.negation.as_ref().map(|n| n as Unary<Formula>),
            fusion: m.fusion.as_ref().map(|f| f as Binary<Formula>),
            conjunction: m.conjunction.as_ref().map(|f| f as Binary<Formula>),
            implication: m.implication.as_ref().map(|f| f as Binary<Formula>),
            bottom: m.bottom.clone(),
        }
    }
}

pub fn theorem_item(prefix: &str, c: &TheoremCheck) -> ReportItem {
    let mut item = ReportItem::check(format!("{prefix}/{}", slug(c.theorem)), c.theorem, c.consistent);
    item.certificate.push(if c.applicable {
        c.detail.clone()
    } else {
        format!("hypotheses not met ({})", c.detail)
    });
    item
}

/// Short identifier for a theorem statement.
pub fn slug(text: &str) -> String {
    let map: &[(&str, &str)] = &[
        ("NF-paraconsistent implies paraconsistent", "nf-implies-para"),
        ("monotone and not ⊥-paraconsistent implies not NF-paraconsistent", "bot-explosion-blocks-nf"),
        ("⋏I: NF-paraconsistent implies NFF-paraconsistent", "fusion-intro-lemma"),
        ("⋏E: NFF-paraconsistent implies NF-paraconsistent", "fusion-elim-lemma"),
        ("∧I and ∧E: ECQ iff ∧-ECQ", "ecq-iff-conj-ecq"),
        ("paraconsistent iff some ¬α ∉ QN(α)", "qn-para"),
        ("NF-paraconsistent iff some QN(α) is empty", "qn-nf"),
        ("monotone and QN(⊥) ≠ L implies ⊥-paraconsistent", "qn-bot"),
        ("β ∈ QN(α) iff α ∈ QN(β)", "qn-symmetry"),
    ];
    map.iter()
        .find(|(t, _)| *t == text)
        .map(|(_, s)| s.to_string())
        .unwrap_or_else(|| text.to_string())
}

/// Every classifier whose operators are present.
pub fn classifier_items<L: Logic + ?Sized>(p: &L, ops: &Ops<L::Item>) -> Result<Vec<ReportItem>> {
    let mut items = Vec::new();
    let nf = check_nf_paraconsistency(p)?;
    items.push(ReportItem::verdict(p, "nf", "NF-paraconsistent", &nf)?);
    if let Some(b) = &ops.bottom {
        let v = check_bot_paraconsistency(p, b)?;
        items.push(ReportItem::verdict(p, "bot", format!("⊥-paraconsistent (⊥ = {})", p.describe(b)), &v)?);
    }
    if let Some(n) = ops.negation {
        items.push(ReportItem::verdict(p, "ecq", "ECQ", &check_ecq(p, n)?)?);
        if let Some(c) = ops.conjunction {
            items.push(ReportItem::verdict(p, "conj-ecq", "∧-ECQ", &check_conj_ecq(p, n, c)?)?);
            if let Some(i) = ops.implication {
                items.push(ReportItem::verdict(p, "aecq", "aECQ", &check_aecq(p, n, c, i)?)?);
            }
        }
        if let Some(i) = ops.implication {
            for (id, q, var) in [("aefq1", "aEFQ1 ¬α → (α → β)", AefqVariant::One), ("aefq2", "aEFQ2 α → (¬α → β)", AefqVariant::Two)] {
                items.push(ReportItem::verdict(p, id, q, &check_aefq(p, n, i, var)?)?);
            }
        }
    }
    if let Some(f) = ops.fusion {
        let comm = check_fusion_commutativity(p, f)?;
        items.push(ReportItem::verdict(p, "fusion/commutative", "fusion commutes (α⋏β ⊢ β⋏α)", &comm)?);
        match check_nff_paraconsistency(p, f) {
            Ok(v) => items.push(ReportItem::verdict(p, "nff", "NFF-paraconsistent", &v)?),
            Err(Error::NonCommutativeFusion(why)) => items.push(
                ReportItem::new("nff", "NFF-paraconsistent", Status::Unknown)
                    .with_line(format!("not a fusion: {why}")),
            ),
            Err(e) => return Err(e),
        }
        items.push(ReportItem::verdict(p, "fusion/intro", "⋏I: α, β ⊢ α⋏β", &validate_fusion_intro(p, f)?)?);
        items.push(ReportItem::verdict(p, "fusion/elim", "⋏E: α⋏β ⊢ α and α⋏β ⊢ β", &validate_fusion_elim(p, f)?)?);
    }
    let report = theorem_suite(p, ops.negation, ops.bottom.as_ref(), ops.fusion)?;
    items.extend(report.checks.iter().map(|c| theorem_item("theorem", c)));
    let links = qn_paraconsistency_links(p, ops.negation, ops.bottom.as_ref())?;
    items.extend(links.checks.iter().map(|c| theorem_item("qn", c)));
    Ok(items)
}

pub fn law_items(p: &ConsequenceProvider) -> Result<Vec<ReportItem>> {
    let m = p.materialize()?;
    let c = m.carrier();
    let checks = [
        ("laws/reflexive", check_reflexivity(&m)),
        ("laws/monotone", check_monotonicity(&m)),
        ("laws/transitive", check_transitivity(&m)),
        ("laws/strongly-transitive", check_strong_transitivity(&m)),
    ];
    let tarskian = checks[..3].iter().all(|(_, l)| l.passed());
    let mut items: Vec<ReportItem> = checks
        .iter()
        .map(|(id, l)| {
            let mut item = ReportItem::new(*id, l.law, l.status);
            if !l.passed() {
                item.certificate.push(l.render(c));
            }
            item
        })
        .collect();
    items.push(ReportItem::new("laws/tarskian", "Tarskian", Status::from_bool(tarskian)));
    Ok(items)
}

pub fn analyze_set(s: &SetStructure) -> Result<Vec<ReportItem>> {
    let mut items = law_items(&s.provider)?;
    items.extend(classifier_items(&s.provider, &Ops::of_set(s))?);
    Ok(items)
}

pub fn analyze_matrix(m: &MatrixStructure, cfg: FragmentConfig) -> Result<Vec<ReportItem>> {
    let mc = matrix_logic(m, cfg)?;
    let a = m.matrix.algebra();
    let mut items = vec![ReportItem::new("laws/tarskian", "Tarskian", Status::Holds)
        .with_line("matrix consequence is reflexive, monotone and transitive")];
    let fix = m.matrix.find_designated_fixpoint();
    items.push(
        ReportItem::new("matrix/fixpoint", "designated fixpoint", Status::from_bool(fix.is_some()))
            .with_line(fix.map_or("none".to_string(), |e| a.element(e).to_string())),
    );
    let inf = a.find_infectious();
    let names: Vec<&str> = inf.elements.iter().map(|&e| a.element(e)).collect();
    let mut item = ReportItem::new("matrix/infectious", "infectious elements", Status::from_bool(!names.is_empty()))
        .with_line(format!("{{{}}}", names.join(", ")));
    if inf.constant_escapes {
        item.certificate.push("a constant denotes a non-infectious value".into());
    }
    items.push(item);
    items.extend(classifier_items(&mc, &Ops::of_matrix(m))?);
    if let Ok(kite) = kite_property_suite(&mc) {
        items.extend(kite_items(&mc, &kite)?);
    }
    Ok(items)
}

pub fn kite_items(mc: &MatrixConsequence, kite: &KiteReport) -> Result<Vec<ReportItem>> {
    kite.results
        .iter()
        .map(|r| {
            let mut item = ReportItem::new(
                format!("kite/{}", r.property.number()),
                format!("({}) {}", r.property.number(), r.property.statement()),
                r.status,
            );
            item.evidence_bound = Some(kite.evidence);
            if r.vacuous > 0 {
                item.certificate.push(format!("{} subjects with empty QN", r.vacuous));
            }
            if let Some(cx) = &r.countermodel {
                let ok = replay_kite_countermodel(mc, r.property, cx)?;
                item.certificate.push(cx.detail.clone());
                item.replayed = Some(ok);
                item.pass = ok;
            }
            Ok(item)
        })
        .collect()
}

pub fn analyze(s: &Structure, cfg: FragmentConfig) -> Result<Vec<ReportItem>> {
    match s {
        Structure::Set(s) => analyze_set(s),
        Structure::Matrix(m) => analyze_matrix(m, cfg),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureOutput {
    pub gamma: Vec<String>,
    pub consequences: Vec<String>,
    /// Whether the listing covers the whole language.
    pub complete: bool,
    pub trivial: bool,
}

impl ClosureOutput {
    pub fn render_text(&self) -> String {
        let mut s = format!(
            "C({{{}}}) = {{{}}}\n",
            self.gamma.join(", "),
            self.consequences.join(", ")
        );
        if !self.complete {
            s.push_str(&format!(
                "listing restricted to the fragment; C(Γ) {} L\n",
                if self.trivial { "=" } else { "≠" }
            ));
        }
        s
    }
}

pub fn closure(s: &Structure, gamma: &[String], cfg: FragmentConfig) -> Result<ClosureOutput> {
    match s {
        Structure::Set(s) => {
            let c = s.provider.carrier();
            let g = c.set_of(gamma)?;
            let out = s.provider.consequences(g)?;
            Ok(ClosureOutput {
                gamma: g.iter().map(|i| c.name(i).to_string()).collect(),
                consequences: out.iter().map(|i| c.name(i).to_string()).collect(),
                complete: true,
                trivial: out == c.full(),
            })
        }
        Structure::Matrix(m) => {
            let mc = matrix_logic(m, cfg)?;
            let sig = m.matrix.signature();
            let premises = gamma.iter().map(|t| Ok(parse(t, sig)?)).collect::<Result<Vec<_>>>()?;
            let out = mc.closure(&premises)?;
            let show = |f: &Formula| f.display(sig).to_string();
            Ok(ClosureOutput {
                gamma: premises.iter().map(show).collect(),
                consequences: out.iter().map(show).collect(),
                complete: false,
                trivial: mc.trivializes(&premises)?.is_trivial(),
            })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QnEntry {
    pub subject: String,
    pub members: Vec<String>,
    pub universe_size: usize,
}

pub fn qn_listing<L: Logic + ?Sized>(p: &L, subjects: &[L::Item], universe: &[L::Item]) -> Result<Vec<QnEntry>> {
    subjects
        .iter()
        .map(|a| {
            let q = qn_set(p, a, universe)?;
            Ok(QnEntry {
                subject: p.describe(a),
                members: q.members.iter().map(|b| p.describe(b)).collect(),
                universe_size: q.universe_size,
            })
        })
        .collect()
}

pub fn qn_properties<L: Logic + ?Sized>(
    p: &L,
    subjects: &[L::Item],
    universe: &[L::Item],
    ops: &Ops<L::Item>,
) -> Result<Vec<ReportItem>> {
    let mut items = Vec::new();
    for a in subjects {
        let v = check_quasi_double_negation(p, a, universe)?;
        items.push(ReportItem::verdict(
            p,
            format!("qn/double-negation/{}", p.describe(a)),
            format!("α ∈ QN(β) for every β ∈ QN({})", p.describe(a)),
            &v,
        )?);
    }
    let sym = qn_symmetry_violation(p, universe)?;
    let mut item = ReportItem::check("qn/symmetry", "β ∈ QN(α) iff α ∈ QN(β)", sym.is_none());
    if let Some((a, b)) = sym {
        item.certificate.push(format!("{} and {}", p.describe(&a), p.describe(&b)));
    }
    items.push(item);
    let links = qn_paraconsistency_links(p, ops.negation, ops.bottom.as_ref())?;
    items.extend(links.checks.iter().map(|c| theorem_item("qn", c)));
    Ok(items)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QnOutput {
    pub subjects: Vec<QnEntry>,
    pub fragment: Option<FragmentInfo>,
    pub properties: Vec<ReportItem>,
}

impl QnOutput {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(|i| i.pass)
    }

    pub fn render_text(&self) -> String {
        let width = self.subjects.iter().map(|e| e.subject.chars().count()).max().unwrap_or(0);
        let mut s = String::new();
        for e in &self.subjects {
            s.push_str(&format!(
                "QN({}){:pad$} = {{{}}}  ({} of {})\n",
                e.subject,
                "",
                e.members.join(", "),
                e.members.len(),
                e.universe_size,
                pad = width - e.subject.chars().count()
            ));
        }
        let width = self.properties.iter().map(|i| i.id.chars().count()).max().unwrap_or(0);
        for i in &self.properties {
            s.push_str(&format!(
                "[{}] {:<width$}  {}: {}\n",
                if i.pass { "ok  " } else { "FAIL" },
                i.id,
                i.question,
                i.status
            ));
        }
        s
    }
}

pub fn qn(s: &Structure, subjects: &[String], universe: Option<&[String]>, cfg: FragmentConfig) -> Result<QnOutput> {
    match s {
        Structure::Set(s) => {
            let c = s.provider.carrier();
            let pick = |names: &[String]| -> Result<Vec<usize>> { Ok(c.set_of(names)?.iter().collect()) };
            let subj = if subjects.is_empty() { s.provider.scope() } else { pick(subjects)? };
            let uni = match universe {
                Some(u) => pick(u)?,
                None => s.provider.scope(),
            };
            Ok(QnOutput {
                subjects: qn_listing(&s.provider, &subj, &uni)?,
                fragment: None,
                properties: qn_properties(&s.provider, &subj, &uni, &Ops::of_set(s))?,
            })
        }
        Structure::Matrix(m) => {
            let mc = matrix_logic(m, cfg)?;
            let sig = m.matrix.signature();
            let formulas = |texts: &[String]| -> Result<Vec<Formula>> {
                texts.iter().map(|t| Ok(parse(t, sig)?)).collect()
            };
            let subj = if subjects.is_empty() {
                (0..cfg.vars).map(Formula::var).collect()
            } else {
                formulas(subjects)?
            };
            let uni = match universe {
                Some(u) => formulas(u)?,
                None => mc.scope(),
            };
            let mut properties = qn_properties(&mc, &subj, &uni, &Ops::of_matrix(m))?;
            if let Ok(kite) = kite_property_suite(&mc) {
                properties.extend(kite_items(&mc, &kite)?);
            }
            Ok(QnOutput {
                subjects: qn_listing(&mc, &subj, &uni)?,
                fragment: Some(cfg.info()),
                properties,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::builtin;

    fn get(name: &str) -> Structure {
        builtin(name).unwrap().unwrap()
    }

    fn status(items: &[ReportItem], id: &str) -> Status {
        items.iter().find(|i| i.id == id).unwrap_or_else(|| panic!("no item {id}")).status
    }

    #[test]
    fn poset_analysis() {
        let items = analyze(&get("poset-1"), FragmentConfig::default()).unwrap();
        assert_eq!(status(&items, "nf"), Status::Holds);
        assert_eq!(status(&items, "laws/tarskian"), Status::Fails);
        assert!(items.iter().all(|i| i.pass));
    }

    #[test]
    fn pwk0_analysis() {
        let items = analyze(&get("pwk0"), FragmentConfig::default()).unwrap();
        assert_eq!(status(&items, "bot"), Status::Fails);
        assert_eq!(status(&items, "ecq"), Status::Fails);
        assert_eq!(status(&items, "nff"), Status::Holds);
        assert_eq!(status(&items, "nf"), Status::Fails);
        assert!(items.iter().all(|i| i.pass), "{:?}", items.iter().find(|i| !i.pass));
    }

    #[test]
    fn closures() {
        let cfg = FragmentConfig::default();
        let c = closure(&get("purely-reflexive-3"), &["a".into()], cfg).unwrap();
        assert_eq!(c.consequences, vec!["a"]);
        let c = closure(&get("poset-1"), &["0".into()], cfg).unwrap();
        assert_eq!(c.consequences, vec!["0", "1"]);
        let c = closure(&get("pwk"), &["(p & ~p)".into()], cfg).unwrap();
        assert!(!c.trivial && !c.complete);
        assert!(c.consequences.contains(&"p".to_string()));
        assert!(c.consequences.contains(&"~p".to_string()));
    }

    #[test]
    fn quasi_negation_listings() {
        let cfg = FragmentConfig::default();
        let out = qn(&get("purely-reflexive-3"), &["a".into()], None, cfg).unwrap();
        assert!(out.subjects[0].members.is_empty());
        let uni: Vec<String> = ["p", "~p", "(p & ~p)"].map(String::from).to_vec();
        let out = qn(&get("boolean2"), &["p".into()], Some(&uni), cfg).unwrap();
        assert_eq!(out.subjects[0].members, vec!["~p", "(p & ~p)"]);
        assert!(out.passed());
        let out = qn(&get("pwk0"), &[], None, cfg).unwrap();
        assert!(out.subjects.iter().all(|e| e.members.contains(&"0".to_string())));
    }
}
