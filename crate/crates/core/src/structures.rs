//! Finite carriers, explicit and induced consequence relations, and checks of
//! the structural (Tarskian) rules.
//!
//! Consequence relations are stored as plain subset-to-subset tables; none of
//! the closure laws is assumed by the representation.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::logic::{
    Certificate, Entailment, Fact, Laws, Logic, Status, Triviality, Verdict,
};

/// Largest carrier for which subset tables are materialized.
pub const EXPLICIT_LIMIT: usize = 16;
/// Width of the element bitmask; induced providers answer queries up to this size.
pub const MASK_WIDTH: usize = 64;

/// A subset of a carrier, as a bitmask over element indices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ElementSet(pub u64);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    pub fn full(n: usize) -> Self {
        if n >= 64 {
            ElementSet(u64::MAX)
        } else {
            ElementSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        ElementSet(1u64 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(items: I) -> Self {
        ElementSet(items.into_iter().fold(0, |m, i| m | (1u64 << i)))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 & (1u64 << i) != 0
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u64 << i;
    }

    pub fn with(self, i: usize) -> Self {
        ElementSet(self.0 | (1u64 << i))
    }

    pub fn union(self, other: Self) -> Self {
        ElementSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ElementSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        ElementSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }

    /// All subsets of `self`, in increasing mask order.
    pub fn subsets(self) -> impl Iterator<Item = ElementSet> {
        let mask = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == mask {
                None
            } else {
                Some((cur.wrapping_sub(mask)) & mask)
            };
            Some(ElementSet(cur))
        })
    }
}

/// The set `L` of a logical structure: distinct, ordered element names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Carrier {
    names: Vec<String>,
}

impl Carrier {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidStructure("carrier must be non-empty".into()));
        }
        if names.len() > MASK_WIDTH {
            return Err(Error::ResourceLimit(format!(
                "carrier of {} elements exceeds the bitmask width {MASK_WIDTH}",
                names.len()
            )));
        }
        let mut seen = HashSet::new();
        for n in &names {
            if !seen.insert(n.as_str()) {
                return Err(Error::InvalidStructure(format!("duplicate element `{n}`")));
            }
        }
        Ok(Carrier { names })
    }

    /// Elements named `a`, `b`, `c`, … (then `e26`, `e27`, …).
    pub fn of_size(n: usize) -> Result<Self> {
        Carrier::new((0..n).map(|i| {
            if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("e{i}")
            }
        }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn full(&self) -> ElementSet {
        ElementSet::full(self.len())
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn set_of<S: AsRef<str>>(&self, names: &[S]) -> Result<ElementSet> {
        let mut set = ElementSet::EMPTY;
        for n in names {
            set.insert(self.index_of(n.as_ref())?);
        }
        Ok(set)
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.len() {
            Ok(())
        } else {
            Err(Error::Domain {
                index: i,
                size: self.len(),
            })
        }
    }

    pub fn check_set(&self, set: ElementSet) -> Result<()> {
        if set.is_subset(self.full()) {
            Ok(())
        } else {
            let stray = set.difference(self.full()).first().unwrap_or(0);
            Err(Error::Domain {
                index: stray,
                size: self.len(),
            })
        }
    }

    /// Number of subsets, failing above the explicit-table limit.
    pub fn subset_count(&self) -> Result<usize> {
        if self.len() > EXPLICIT_LIMIT {
            return Err(Error::ResourceLimit(format!(
                "explicit tables are limited to {EXPLICIT_LIMIT} elements, got {}",
                self.len()
            )));
        }
        Ok(1usize << self.len())
    }

    pub fn render(&self, set: ElementSet) -> String {
        let names: Vec<&str> = set.iter().map(|i| self.name(i)).collect();
        format!("{{{}}}", names.join(", "))
    }
}

/// An explicit table `2^L → 2^L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsequenceMap {
    carrier: Carrier,
    table: Vec<ElementSet>,
}

impl ConsequenceMap {
    pub fn new(carrier: Carrier, table: Vec<ElementSet>) -> Result<Self> {
        let size = carrier.subset_count()?;
        if table.len() != size {
            return Err(Error::InvalidStructure(format!(
                "table has {} rows, expected {size}",
                table.len()
            )));
        }
        for row in &table {
            carrier.check_set(*row)?;
        }
        Ok(ConsequenceMap { carrier, table })
    }

    pub fn from_fn(carrier: Carrier, f: impl Fn(ElementSet) -> ElementSet) -> Result<Self> {
        let size = carrier.subset_count()?;
        let full = carrier.full();
        let table = (0..size as u64)
            .map(|m| f(ElementSet(m)).intersection(full))
            .collect();
        Ok(ConsequenceMap { carrier, table })
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn table(&self) -> &[ElementSet] {
        &self.table
    }

    pub fn get(&self, gamma: ElementSet) -> ElementSet {
        self.table[gamma.0 as usize]
    }
}

/// A counterexample to a structural law.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LawCounterexample {
    pub gamma: ElementSet,
    /// `Σ` for monotonicity, `Δ` for the transitivity forms.
    pub other: Option<ElementSet>,
    pub element: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LawCheck {
    pub law: &'static str,
    pub status: Status,
    pub counterexample: Option<LawCounterexample>,
}

impl LawCheck {
    fn holds(law: &'static str) -> Self {
        LawCheck {
            law,
            status: Status::Holds,
            counterexample: None,
        }
    }

    fn fails(law: &'static str, gamma: ElementSet, other: Option<ElementSet>, element: usize) -> Self {
        LawCheck {
            law,
            status: Status::Fails,
            counterexample: Some(LawCounterexample {
                gamma,
                other,
                element,
            }),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Holds
    }

    pub fn render(&self, carrier: &Carrier) -> String {
        match self.counterexample {
            None => format!("{}: {}", self.law, self.status),
            Some(cx) => {
                let other = cx
                    .other
                    .map(|o| format!(", {}", carrier.render(o)))
                    .unwrap_or_default();
                format!(
                    "{}: {} at ({}{other}) on {}",
                    self.law,
                    self.status,
                    carrier.render(cx.gamma),
                    carrier.name(cx.element)
                )
            }
        }
    }
}

/// `Γ ⊆ C(Γ)` for every `Γ`.
pub fn check_reflexivity(m: &ConsequenceMap) -> LawCheck {
    for (g, c) in m.table.iter().enumerate() {
        let gamma = ElementSet(g as u64);
        if let Some(missing) = gamma.difference(*c).first() {
            return LawCheck::fails("reflexivity", gamma, None, missing);
        }
    }
    LawCheck::holds("reflexivity")
}

/// `Γ ⊆ Σ` implies `C(Γ) ⊆ C(Σ)`; one-element extensions suffice.
pub fn check_monotonicity(m: &ConsequenceMap) -> LawCheck {
    let n = m.carrier.len();
    for (g, c) in m.table.iter().enumerate() {
        let gamma = ElementSet(g as u64);
        for x in 0..n {
            if gamma.contains(x) {
                continue;
            }
            let sigma = gamma.with(x);
            if let Some(lost) = c.difference(m.get(sigma)).first() {
                return LawCheck::fails("monotonicity", gamma, Some(sigma), lost);
            }
        }
    }
    LawCheck::holds("monotonicity")
}

/// Cut: `Δ ⊆ C(Γ)` implies `C(Γ ∪ Δ) ⊆ C(Γ)`.
pub fn check_transitivity(m: &ConsequenceMap) -> LawCheck {
    for (g, c) in m.table.iter().enumerate() {
        let gamma = ElementSet(g as u64);
        for delta in c.subsets() {
            if let Some(extra) = m.get(gamma.union(delta)).difference(*c).first() {
                return LawCheck::fails("transitivity", gamma, Some(delta), extra);
            }
        }
    }
    LawCheck::holds("transitivity")
}

/// Premise replacement: `Δ ⊆ C(Γ)` implies `C(Δ) ⊆ C(Γ)`.
///
/// Equivalent to cut under monotonicity; this is the form the fusion and
/// quasi-negation arguments use when monotonicity is not available.
pub fn check_strong_transitivity(m: &ConsequenceMap) -> LawCheck {
    for (g, c) in m.table.iter().enumerate() {
        let gamma = ElementSet(g as u64);
        for delta in c.subsets() {
            if let Some(extra) = m.get(delta).difference(*c).first() {
                return LawCheck::fails("strong transitivity", gamma, Some(delta), extra);
            }
        }
    }
    LawCheck::holds("strong transitivity")
}

pub fn laws_of(m: &ConsequenceMap) -> Laws {
    Laws {
        reflexive: check_reflexivity(m).passed(),
        monotone: check_monotonicity(m).passed(),
        transitive: check_transitivity(m).passed(),
        strongly_transitive: check_strong_transitivity(m).passed(),
    }
}

/// A finite partial order, stored as up-sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    carrier: Carrier,
    up: Vec<ElementSet>,
}

impl Poset {
    /// Builds the order from `x ≤ y` pairs. Reflexive pairs are implied;
    /// antisymmetry and transitivity are checked, never repaired.
    pub fn new(carrier: Carrier, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = carrier.len();
        let mut up: Vec<ElementSet> = (0..n).map(ElementSet::singleton).collect();
        for &(x, y) in pairs {
            carrier.check_index(x)?;
            carrier.check_index(y)?;
            up[x].insert(y);
        }
        for x in 0..n {
            for y in up[x].iter() {
                if x != y && up[y].contains(x) {
                    return Err(Error::InvalidStructure(format!(
                        "order is not antisymmetric: {} ≤ {} ≤ {}",
                        carrier.name(x),
                        carrier.name(y),
                        carrier.name(x)
                    )));
                }
                if let Some(z) = up[y].difference(up[x]).first() {
                    return Err(Error::InvalidStructure(format!(
                        "order is not transitive: {} ≤ {} ≤ {} but not {} ≤ {}",
                        carrier.name(x),
                        carrier.name(y),
                        carrier.name(z),
                        carrier.name(x),
                        carrier.name(z)
                    )));
                }
            }
        }
        Ok(Poset { carrier, up })
    }

    pub fn from_names<S: AsRef<str>>(carrier: Carrier, pairs: &[(S, S)]) -> Result<Self> {
        let idx: Result<Vec<(usize, usize)>> = pairs
            .iter()
            .map(|(x, y)| Ok((carrier.index_of(x.as_ref())?, carrier.index_of(y.as_ref())?)))
            .collect();
        Poset::new(carrier, &idx?)
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    pub fn up_set(&self, x: usize) -> ElementSet {
        self.up[x]
    }

    pub fn down_set(&self, y: usize) -> ElementSet {
        ElementSet::from_indices((0..self.carrier.len()).filter(|&x| self.leq(x, y)))
    }

    pub fn incomparable(&self, x: usize, y: usize) -> bool {
        !self.leq(x, y) && !self.leq(y, x)
    }

    /// Non-reflexive `≤` pairs, in index order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.carrier.len() {
            for y in self.up[x].iter() {
                if x != y {
                    out.push((x, y));
                }
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// `Γ ⊢ α` iff `γ ≤ α` for all `γ ∈ Γ`.
    Up,
    /// `Γ ⊢ α` iff `α ≤ γ` for all `γ ∈ Γ`.
    Down,
}

/// A non-empty set of maps from a domain carrier into a poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuationFamily {
    domain: Carrier,
    codomain: Poset,
    valuations: Vec<Vec<usize>>,
}

impl ValuationFamily {
    pub fn new(domain: Carrier, codomain: Poset, valuations: Vec<Vec<usize>>) -> Result<Self> {
        if valuations.is_empty() {
            return Err(Error::InvalidStructure(
                "valuation family must be non-empty".into(),
            ));
        }
        for v in &valuations {
            if v.len() != domain.len() {
                return Err(Error::InvalidStructure(format!(
                    "valuation assigns {} values on a domain of {}",
                    v.len(),
                    domain.len()
                )));
            }
            for &p in v {
                codomain.carrier().check_index(p)?;
            }
        }
        Ok(ValuationFamily {
            domain,
            codomain,
            valuations,
        })
    }

    pub fn domain(&self) -> &Carrier {
        &self.domain
    }

    pub fn codomain(&self) -> &Poset {
        &self.codomain
    }

    pub fn valuations(&self) -> &[Vec<usize>] {
        &self.valuations
    }
}

/// A monotone operator with `W(Γ ∪ W(Γ)) = W(Γ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QConsequenceTable {
    carrier: Carrier,
    table: Vec<ElementSet>,
}

impl QConsequenceTable {
    pub fn new(carrier: Carrier, table: Vec<ElementSet>) -> Result<Self> {
        let map = ConsequenceMap::new(carrier, table)?;
        if let Some(cx) = check_monotonicity(&map).counterexample {
            return Err(Error::LawViolation {
                law: "monotonicity",
                gamma: format!(
                    "{} ⊆ {}",
                    map.carrier.render(cx.gamma),
                    map.carrier.render(cx.other.unwrap_or_default())
                ),
            });
        }
        if let Some(gamma) = weak_idempotence_violation(&map) {
            return Err(Error::LawViolation {
                law: "weak idempotence",
                gamma: map.carrier.render(gamma),
            });
        }
        let ConsequenceMap { carrier, table } = map;
        Ok(QConsequenceTable { carrier, table })
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn get(&self, gamma: ElementSet) -> ElementSet {
        self.table[gamma.0 as usize]
    }

    pub fn table(&self) -> &[ElementSet] {
        &self.table
    }
}

/// First `Γ` with `W(Γ ∪ W(Γ)) ≠ W(Γ)`.
pub fn weak_idempotence_violation(m: &ConsequenceMap) -> Option<ElementSet> {
    m.table.iter().enumerate().find_map(|(g, w)| {
        let gamma = ElementSet(g as u64);
        (m.get(gamma.union(*w)) != *w).then_some(gamma)
    })
}

/// A consequence relation over a finite carrier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConsequenceProvider {
    Explicit(ConsequenceMap),
    Poset { poset: Poset, direction: Direction },
    ValuationOrder(ValuationFamily),
    PurelyReflexive(Carrier),
    QConsequence(QConsequenceTable),
}

pub fn poset_consequence(poset: Poset, direction: Direction) -> ConsequenceProvider {
    ConsequenceProvider::Poset { poset, direction }
}

pub fn valuation_order_consequence(family: ValuationFamily) -> ConsequenceProvider {
    ConsequenceProvider::ValuationOrder(family)
}

pub fn purely_reflexive(carrier: Carrier) -> ConsequenceProvider {
    ConsequenceProvider::PurelyReflexive(carrier)
}

pub fn q_consequence_provider(w: QConsequenceTable) -> ConsequenceProvider {
    ConsequenceProvider::QConsequence(w)
}

pub fn consequences(p: &ConsequenceProvider, gamma: ElementSet) -> Result<ElementSet> {
    p.consequences(gamma)
}

/// `C(Γ) = L?` as a verdict; exact for every provider that answers it.
pub fn is_trivializing<L: Logic + ?Sized>(p: &L, gamma: &[L::Item]) -> Result<Verdict<L::Item>> {
    Ok(match p.trivializes(gamma)? {
        Triviality::Trivial => Verdict::new(
            Status::Holds,
            Certificate {
                facts: vec![Fact::Trivial {
                    premises: gamma.to_vec(),
                }],
                ..Certificate::default()
            },
        ),
        Triviality::Escapes {
            conclusion,
            countermodel,
        } => Verdict::new(
            Status::Fails,
            Certificate {
                witness: Some(conclusion.clone()),
                facts: vec![Fact::Escapes {
                    premises: gamma.to_vec(),
                    conclusion,
                    countermodel,
                }],
                note: None,
            },
        ),
    })
}

impl ConsequenceProvider {
    pub fn carrier(&self) -> &Carrier {
        match self {
            ConsequenceProvider::Explicit(m) => m.carrier(),
            ConsequenceProvider::Poset { poset, .. } => poset.carrier(),
            ConsequenceProvider::ValuationOrder(f) => f.domain(),
            ConsequenceProvider::PurelyReflexive(c) => c,
            ConsequenceProvider::QConsequence(w) => w.carrier(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ConsequenceProvider::Explicit(_) => "explicit",
            ConsequenceProvider::Poset {
                direction: Direction::Up,
                ..
            } => "poset",
            ConsequenceProvider::Poset {
                direction: Direction::Down,
                ..
            } => "poset-dual",
            ConsequenceProvider::ValuationOrder(_) => "valuation-order",
            ConsequenceProvider::PurelyReflexive(_) => "purely-reflexive",
            ConsequenceProvider::QConsequence(_) => "q-consequence",
        }
    }

    /// `{α : Γ ⊢ α}`.
    pub fn consequences(&self, gamma: ElementSet) -> Result<ElementSet> {
        let carrier = self.carrier();
        carrier.check_set(gamma)?;
        let full = carrier.full();
        Ok(match self {
            ConsequenceProvider::Explicit(m) => m.get(gamma),
            ConsequenceProvider::QConsequence(w) => w.get(gamma),
            ConsequenceProvider::PurelyReflexive(_) => gamma,
            ConsequenceProvider::Poset { poset, direction } => {
                gamma.iter().fold(full, |acc, g| {
                    acc.intersection(match direction {
                        Direction::Up => poset.up_set(g),
                        Direction::Down => poset.down_set(g),
                    })
                })
            }
            ConsequenceProvider::ValuationOrder(family) => {
                let order = family.codomain();
                ElementSet::from_indices((0..carrier.len()).filter(|&alpha| {
                    family.valuations().iter().all(|v| {
                        gamma.iter().all(|beta| order.leq(v[beta], v[alpha]))
                    })
                }))
            }
        })
    }

    /// The full subset table of this provider.
    pub fn materialize(&self) -> Result<ConsequenceMap> {
        if let ConsequenceProvider::Explicit(m) = self {
            return Ok(m.clone());
        }
        let carrier = self.carrier().clone();
        let size = carrier.subset_count()?;
        let table = (0..size as u64)
            .map(|g| self.consequences(ElementSet(g)))
            .collect::<Result<Vec<_>>>()?;
        ConsequenceMap::new(carrier, table)
    }

    fn premise_set(&self, premises: &[usize]) -> Result<ElementSet> {
        let carrier = self.carrier();
        let mut set = ElementSet::EMPTY;
        for &p in premises {
            carrier.check_index(p)?;
            set.insert(p);
        }
        Ok(set)
    }
}

impl Logic for ConsequenceProvider {
    type Item = usize;

    fn scope(&self) -> Vec<usize> {
        (0..self.carrier().len()).collect()
    }

    fn scope_is_complete(&self) -> bool {
        true
    }

    fn evidence_bound(&self) -> Option<crate::logic::EvidenceBound> {
        None
    }

    fn describe(&self, item: &usize) -> String {
        self.carrier()
            .names()
            .get(*item)
            .cloned()
            .unwrap_or_else(|| format!("#{item}"))
    }

    fn entails(&self, premises: &[usize], conclusion: &usize) -> Result<Entailment> {
        self.carrier().check_index(*conclusion)?;
        let c = self.consequences(self.premise_set(premises)?)?;
        Ok(if c.contains(*conclusion) {
            Entailment::Holds
        } else {
            Entailment::Fails { countermodel: None }
        })
    }

    fn trivializes(&self, premises: &[usize]) -> Result<Triviality<usize>> {
        let c = self.consequences(self.premise_set(premises)?)?;
        Ok(match self.carrier().full().difference(c).first() {
            None => Triviality::Trivial,
            Some(missing) => Triviality::Escapes {
                conclusion: missing,
                countermodel: None,
            },
        })
    }

    fn laws(&self) -> Result<Laws> {
        Ok(laws_of(&self.materialize()?))
    }
}

impl fmt::Display for ConsequenceProvider {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} on {}", self.kind(), self.carrier().render(self.carrier().full()))
    }
}
