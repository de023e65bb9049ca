//! Exhaustive and seeded random enumeration of explicit consequence maps.

use std::fmt;
use std::str::FromStr;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::classify::{
    check_bot_paraconsistency, check_ecq, check_nf_paraconsistency, theorem_suite, FusionMap,
    NegationMap, TheoremCheck,
};
use crate::error::{Error, Result};
use crate::logic::{BinaryOperator, Logic, Status};
use crate::quasineg::{qn_paraconsistency_links, qn_symmetry_violation};
use crate::structures::{
    check_monotonicity, check_reflexivity, check_strong_transitivity, check_transitivity, Carrier,
    ConsequenceMap, ConsequenceProvider, ElementSet, QConsequenceTable, EXPLICIT_LIMIT,
};

/// Exhaustive runs refuse spaces larger than this.
pub const SPACE_LIMIT: u128 = 100_000_000;
pub const RNG_NAME: &str = "ChaCha8 (rand_chacha), seeded with seed_from_u64";
const CHUNK: u64 = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    Reflexive,
    Monotone,
    Transitive,
    StronglyTransitive,
    Tarskian,
    NfParaconsistent,
    /// ECQ fails for some negation map.
    Paraconsistent,
    /// Some element trivializes on its own.
    HasBotTrivializer,
    /// Some element does not trivialize on its own.
    BotParaconsistent,
    QConsequence,
}

impl Atom {
    pub const ALL: [Atom; 10] = [
        Atom::Reflexive,
        Atom::Monotone,
        Atom::Transitive,
        Atom::StronglyTransitive,
        Atom::Tarskian,
        Atom::NfParaconsistent,
        Atom::Paraconsistent,
        Atom::HasBotTrivializer,
        Atom::BotParaconsistent,
        Atom::QConsequence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Atom::Reflexive => "reflexive",
            Atom::Monotone => "monotone",
            Atom::Transitive => "transitive",
            Atom::StronglyTransitive => "strongly_transitive",
            Atom::Tarskian => "tarskian",
            Atom::NfParaconsistent => "nf_paraconsistent",
            Atom::Paraconsistent => "paraconsistent",
            Atom::HasBotTrivializer => "has_bot_trivializer",
            Atom::BotParaconsistent => "bot_paraconsistent",
            Atom::QConsequence => "q_consequence",
        }
    }
}

/// A conjunction of possibly negated atoms, written `a,b,not_c`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StructurePredicate {
    literals: Vec<(Atom, bool)>,
}

impl StructurePredicate {
    pub fn new(literals: Vec<(Atom, bool)>) -> Self {
        StructurePredicate { literals }
    }

    pub fn literals(&self) -> &[(Atom, bool)] {
        &self.literals
    }

    /// Whether reflexivity is required, so generation can skip the rest.
    pub fn requires_reflexive(&self) -> bool {
        self.literals
            .iter()
            .any(|&(a, pos)| pos && matches!(a, Atom::Reflexive | Atom::Tarskian))
    }

    pub fn matches(&self, table: &[ElementSet], n: usize) -> bool {
        self.literals
            .iter()
            .all(|&(atom, pos)| fast_atom(atom, table, n) == pos)
    }

    /// Re-checks a table through the classifiers and law checkers.
    pub fn revalidate(&self, map: &ConsequenceMap) -> Result<bool> {
        for &(atom, pos) in &self.literals {
            if checked_atom(atom, map)? != pos {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl FromStr for StructurePredicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut literals = Vec::new();
        for raw in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let (name, pos) = match raw.strip_prefix("not_") {
                Some(rest) => (rest, false),
                None => (raw, true),
            };
            let atom = Atom::ALL
                .into_iter()
                .find(|a| a.name() == name)
                .ok_or_else(|| Error::Unsupported(format!("unknown predicate atom `{raw}`")))?;
            literals.push((atom, pos));
        }
        Ok(StructurePredicate { literals })
    }
}

impl fmt::Display for StructurePredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .literals
            .iter()
            .map(|&(a, pos)| format!("{}{}", if pos { "" } else { "not_" }, a.name()))
            .collect();
        f.write_str(&parts.join(","))
    }
}

fn pair(a: usize, b: usize) -> ElementSet {
    ElementSet::singleton(a).with(b)
}

fn fast_atom(atom: Atom, t: &[ElementSet], n: usize) -> bool {
    let full = ElementSet::full(n);
    let at = |g: ElementSet| t[g.0 as usize];
    let subsets = || (0..t.len() as u64).map(ElementSet);
    match atom {
        Atom::Reflexive => subsets().all(|g| g.is_subset(at(g))),
        Atom::Monotone => subsets().all(|g| {
            full.difference(g)
                .iter()
                .all(|i| at(g).is_subset(at(g.with(i))))
        }),
        Atom::Transitive => subsets().all(|g| at(g).subsets().all(|d| at(g.union(d)).is_subset(at(g)))),
        Atom::StronglyTransitive => subsets().all(|g| at(g).subsets().all(|d| at(d).is_subset(at(g)))),
        Atom::Tarskian => [Atom::Reflexive, Atom::Monotone, Atom::Transitive]
            .iter()
            .all(|&a| fast_atom(a, t, n)),
        Atom::NfParaconsistent => (0..n).any(|a| (0..n).all(|b| at(pair(a, b)) != full)),
        Atom::Paraconsistent => (0..n).any(|a| (0..n).any(|b| at(pair(a, b)) != full)),
        Atom::HasBotTrivializer => (0..n).any(|a| at(ElementSet::singleton(a)) == full),
        Atom::BotParaconsistent => (0..n).any(|a| at(ElementSet::singleton(a)) != full),
        Atom::QConsequence => {
            fast_atom(Atom::Monotone, t, n) && subsets().all(|g| at(g.union(at(g))) == at(g))
        }
    }
}

/// Every total map on `n` elements, in lexicographic order.
pub fn all_unary_maps(n: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = n.pow(n as u32);
    (0..total).map(move |mut i| {
        let mut out = vec![0; n];
        for slot in out.iter_mut().rev() {
            *slot = i % n;
            i /= n;
        }
        out
    })
}

fn checked_atom(atom: Atom, map: &ConsequenceMap) -> Result<bool> {
    let p = ConsequenceProvider::Explicit(map.clone());
    let n = map.carrier().len();
    Ok(match atom {
        Atom::Reflexive => check_reflexivity(map).passed(),
        Atom::Monotone => check_monotonicity(map).passed(),
        Atom::Transitive => check_transitivity(map).passed(),
        Atom::StronglyTransitive => check_strong_transitivity(map).passed(),
        Atom::Tarskian => p.laws()?.tarskian(),
        Atom::NfParaconsistent => check_nf_paraconsistency(&p)?.holds(),
        Atom::Paraconsistent => {
            let mut any = false;
            for neg in all_unary_maps(n) {
                if check_ecq(&p, &NegationMap(neg))?.fails() {
                    any = true;
                    break;
                }
            }
            any
        }
        Atom::HasBotTrivializer | Atom::BotParaconsistent => {
            let want = if atom == Atom::HasBotTrivializer {
                Status::Fails
            } else {
                Status::Holds
            };
            let mut any = false;
            for bot in 0..n {
                if check_bot_paraconsistency(&p, &bot)?.status == want {
                    any = true;
                    break;
                }
            }
            any
        }
        Atom::QConsequence => QConsequenceTable::new(map.carrier().clone(), map.table().to_vec()).is_ok(),
    })
}

/// Decoder from a mixed-radix index to a table: each subset `Γ` owns as many
/// bits as it has free elements (all of them, or the complement of `Γ` when
/// reflexivity is imposed).
#[derive(Clone, Debug)]
pub struct TableSpace {
    reflexive: bool,
    free: Vec<ElementSet>,
    bits: u32,
}

impl TableSpace {
    pub fn new(n: usize, reflexive: bool) -> Result<Self> {
        if n == 0 || n > EXPLICIT_LIMIT {
            return Err(Error::ResourceLimit(format!("carrier size {n} (1..={EXPLICIT_LIMIT})")));
        }
        let full = ElementSet::full(n);
        let free: Vec<ElementSet> = (0..1u64 << n)
            .map(|g| if reflexive { full.difference(ElementSet(g)) } else { full })
            .collect();
        let bits = free.iter().map(|f| f.len() as u32).sum();
        Ok(TableSpace {
            reflexive,
            free,
            bits,
        })
    }

    /// Number of tables, or `None` past `u128`.
    pub fn size(&self) -> Option<u128> {
        (self.bits < 128).then(|| 1u128 << self.bits)
    }

    pub fn decode(&self, mut index: u64, out: &mut Vec<ElementSet>) {
        out.clear();
        for (g, free) in self.free.iter().enumerate() {
            let mut c = if self.reflexive { ElementSet(g as u64) } else { ElementSet::EMPTY };
            for i in free.iter() {
                if index & 1 == 1 {
                    c.insert(i);
                }
                index >>= 1;
            }
            out.push(c);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// Position in the enumeration (exhaustive) or sample number (random).
    pub index: u64,
    pub carrier: Carrier,
    pub table: Vec<ElementSet>,
}

impl Witness {
    pub fn to_map(&self) -> ConsequenceMap {
        ConsequenceMap::new(self.carrier.clone(), self.table.clone()).expect("generated tables are valid")
    }
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            index: u64,
            elements: &'a [String],
            table: Vec<[Vec<&'a str>; 2]>,
        }
        let names = |set: ElementSet| set.iter().map(|i| self.carrier.name(i)).collect::<Vec<_>>();
        Repr {
            index: self.index,
            elements: self.carrier.names(),
            table: self
                .table
                .iter()
                .enumerate()
                .map(|(g, c)| [names(ElementSet(g as u64)), names(*c)])
                .collect(),
        }
        .serialize(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SearchMode {
    Exhaustive,
    Random { seed: u64, samples: u64, bias: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchResult {
    pub size: usize,
    pub predicate: String,
    pub mode: SearchMode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rng: Option<&'static str>,
    /// Tables in the enumeration space (after reflexive pruning).
    pub space: String,
    pub visited: u64,
    pub count: u64,
    pub witnesses: Vec<Witness>,
}

/// Seeded table with each element included in `C(Γ)` with probability
/// `bias`, drawn from the top 53 bits of successive 64-bit outputs.
pub fn random_structure(n: usize, seed: u64, bias: f64) -> Result<ConsequenceMap> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_table(&mut rng, n, bias)
}

fn random_table(rng: &mut ChaCha8Rng, n: usize, bias: f64) -> Result<ConsequenceMap> {
    if !(0.0..=1.0).contains(&bias) {
        return Err(Error::Unsupported(format!("bias {bias} outside [0, 1]")));
    }
    let carrier = Carrier::of_size(n)?;
    let size = carrier.subset_count()?;
    let table = (0..size)
        .map(|_| {
            let mut c = ElementSet::EMPTY;
            for i in 0..n {
                let u = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
                if u < bias {
                    c.insert(i);
                }
            }
            c
        })
        .collect();
    ConsequenceMap::new(carrier, table)
}

/// `count` consecutive tables from one seeded stream.
pub fn random_structures(n: usize, seed: u64, bias: f64, count: u64) -> Result<Vec<ConsequenceMap>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_table(&mut rng, n, bias)).collect()
}

#[derive(Default)]
struct Tally {
    count: u64,
    witnesses: Vec<(u64, Vec<ElementSet>)>,
}

impl Tally {
    fn merge(mut self, other: Tally, cap: usize) -> Tally {
        self.count += other.count;
        self.witnesses.extend(other.witnesses);
        self.witnesses.sort_by_key(|w| w.0);
        self.witnesses.truncate(cap);
        self
    }
}

pub fn enumerate_structures(
    n: usize,
    pred: &StructurePredicate,
    mode: SearchMode,
    witness_cap: usize,
) -> Result<SearchResult> {
    let carrier = Carrier::of_size(n)?;
    let (space, visited, tally) = match mode {
        SearchMode::Exhaustive => {
            let ts = TableSpace::new(n, pred.requires_reflexive())?;
            let size = ts.size().filter(|&s| s <= SPACE_LIMIT).ok_or_else(|| {
                Error::ResourceLimit(format!(
                    "exhaustive space 2^{} exceeds {SPACE_LIMIT}; require reflexivity or use random mode",
                    ts.bits
                ))
            })? as u64;
            let chunks: Vec<u64> = (0..size.div_ceil(CHUNK)).collect();
            let tally = chunks
                .into_par_iter()
                .map(|c| {
                    let mut buf = Vec::new();
                    let mut t = Tally::default();
                    for index in c * CHUNK..((c + 1) * CHUNK).min(size) {
                        ts.decode(index, &mut buf);
                        if pred.matches(&buf, n) {
                            t.count += 1;
                            if t.witnesses.len() < witness_cap {
                                t.witnesses.push((index, buf.clone()));
                            }
                        }
                    }
                    t
                })
                .reduce(Tally::default, |a, b| a.merge(b, witness_cap));
            (size.to_string(), size, tally)
        }
        SearchMode::Random { seed, samples, bias } => {
            let maps = random_structures(n, seed, bias, samples)?;
            let tally = maps
                .par_iter()
                .enumerate()
                .map(|(i, m)| {
                    let mut t = Tally::default();
                    if pred.matches(m.table(), n) {
                        t.count = 1;
                        if witness_cap > 0 {
                            t.witnesses.push((i as u64, m.table().to_vec()));
                        }
                    }
                    t
                })
                .reduce(Tally::default, |a, b| a.merge(b, witness_cap));
            let bits = (n as u32) << n;
            let space = if bits < 128 {
                (1u128 << bits).to_string()
            } else {
                format!("2^{bits}")
            };
            (space, samples, tally)
        }
    };
    let witnesses: Vec<Witness> = tally
        .witnesses
        .into_iter()
        .map(|(index, table)| Witness {
            index,
            carrier: carrier.clone(),
            table,
        })
        .collect();
    for w in &witnesses {
        if !pred.revalidate(&w.to_map())? {
            return Err(Error::InvalidStructure(format!(
                "witness {} failed re-validation against `{pred}`",
                w.index
            )));
        }
    }
    Ok(SearchResult {
        size: n,
        predicate: pred.to_string(),
        mode,
        rng: matches!(mode, SearchMode::Random { .. }).then_some(RNG_NAME),
        space,
        visited,
        count: tally.count,
        witnesses,
    })
}

/// Runs `f` on a dedicated pool of `threads` workers.
pub fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Unsupported(e.to_string()))?;
    Ok(pool.install(f))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MinimalResult {
    pub predicate: String,
    pub n_max: usize,
    /// Smallest size with a witness.
    pub minimal_size: Option<usize>,
    pub witness: Option<Witness>,
    /// Exhaustive count per size tried, starting at 1.
    pub counts: Vec<u64>,
}

pub fn minimal_example(pred: &StructurePredicate, n_max: usize) -> Result<MinimalResult> {
    let mut counts = Vec::new();
    for n in 1..=n_max {
        let r = enumerate_structures(n, pred, SearchMode::Exhaustive, 1)?;
        counts.push(r.count);
        if r.count > 0 {
            return Ok(MinimalResult {
                predicate: pred.to_string(),
                n_max,
                minimal_size: Some(n),
                witness: r.witnesses.into_iter().next(),
                counts,
            });
        }
    }
    Ok(MinimalResult {
        predicate: pred.to_string(),
        n_max,
        minimal_size: None,
        witness: None,
        counts,
    })
}

/// Every fusion table whose cell `(a, b)` lies in `allowed(a, b)` and that
/// obeys `α ⋏ β ⊢ β ⋏ α`.
fn fusion_tables(
    p: &ConsequenceProvider,
    allowed: impl Fn(usize, usize) -> ElementSet,
) -> Result<Vec<FusionMap>> {
    let n = p.carrier().len();
    let cells: Vec<Vec<usize>> = (0..n * n).map(|i| allowed(i / n, i % n).iter().collect()).collect();
    if cells.iter().any(Vec::is_empty) {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; n * n];
    loop {
        let table: Vec<usize> = idx.iter().zip(&cells).map(|(&i, c)| c[i]).collect();
        let fus = FusionMap::from_fn(n, |a, b| table[a * n + b]);
        let mut commutes = true;
        'law: for a in 0..n {
            for b in 0..n {
                let c = p.consequences(ElementSet::singleton(fus.apply(&a, &b)))?;
                if !c.contains(fus.apply(&b, &a)) {
                    commutes = false;
                    break 'law;
                }
            }
        }
        if commutes {
            out.push(fus);
        }
        let mut k = n * n;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < cells[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepViolation {
    pub structure: usize,
    pub operators: String,
    pub check: TheoremCheck,
}

/// Tallies of one theorem sweep.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub structures: usize,
    /// Theorem instances whose hypotheses held, by theorem.
    pub applicable: Vec<(String, u64)>,
    pub violations: Vec<SweepViolation>,
}

impl SweepReport {
    fn note(&mut self, structure: usize, operators: impl Fn() -> String, check: &TheoremCheck) {
        if check.applicable {
            match self.applicable.iter_mut().find(|(t, _)| t == check.theorem) {
                Some((_, c)) => *c += 1,
                None => self.applicable.push((check.theorem.to_string(), 1)),
            }
        }
        if !check.consistent {
            self.violations.push(SweepViolation {
                structure,
                operators: operators(),
                check: check.clone(),
            });
        }
    }

    fn merge(mut self, other: SweepReport) -> SweepReport {
        self.structures += other.structures;
        for (t, c) in other.applicable {
            match self.applicable.iter_mut().find(|(u, _)| *u == t) {
                Some((_, d)) => *d += c,
                None => self.applicable.push((t, c)),
            }
        }
        self.violations.extend(other.violations);
        self
    }

    pub fn applicable_count(&self, theorem: &str) -> u64 {
        self.applicable
            .iter()
            .find(|(t, _)| t == theorem)
            .map_or(0, |(_, c)| *c)
    }
}

pub const THEOREM_QN_SYMMETRY: &str = "β ∈ QN(α) iff α ∈ QN(β)";

/// Checks every theorem of the classifier and quasi-negation modules on one
/// structure, for every negation map, every choice of ⊥, and every
/// commutative fusion table validating ⋏I or ⋏E.
pub fn sweep_structure(index: usize, map: &ConsequenceMap) -> Result<SweepReport> {
    let p = ConsequenceProvider::Explicit(map.clone());
    let n = map.carrier().len();
    let mut report = SweepReport {
        structures: 1,
        ..SweepReport::default()
    };
    let negs: Vec<NegationMap> = all_unary_maps(n).map(NegationMap).collect();
    for neg in &negs {
        let mut r = theorem_suite(&p, Some(neg), None, None)?;
        r.checks.extend(qn_paraconsistency_links(&p, Some(neg), None)?.checks);
        for c in &r.checks {
            report.note(index, || format!("negation {:?}", neg.0), c);
        }
    }
    for bot in 0..n {
        let mut r = theorem_suite(&p, None, Some(&bot), None)?;
        r.checks.extend(qn_paraconsistency_links(&p, None, Some(&bot))?.checks);
        for c in &r.checks {
            report.note(index, || format!("bot {}", map.carrier().name(bot)), c);
        }
    }
    let symmetric = qn_symmetry_violation(&p, &p.scope())?.is_none();
    report.note(
        index,
        String::new,
        &TheoremCheck {
            theorem: THEOREM_QN_SYMMETRY,
            applicable: true,
            consistent: symmetric,
            detail: String::new(),
        },
    );
    for c in &qn_paraconsistency_links(&p, None, None)?.checks {
        report.note(index, String::new, c);
    }
    if p.laws()?.strongly_transitive {
        let pairs = |a: usize, b: usize| map.get(pair(a, b));
        let intro = fusion_tables(&p, pairs)?;
        let elim = fusion_tables(&p, |a, b| {
            ElementSet::from_indices((0..n).filter(|&x| pair(a, b).is_subset(map.get(ElementSet::singleton(x)))))
        })?;
        for fus in intro.iter().chain(elim.iter().filter(|f| !intro.contains(f))) {
            let r = theorem_suite(&p, None, None, Some(fus))?;
            for c in &r.checks {
                report.note(index, || format!("fusion {:?}", fus.table()), c);
            }
        }
        for fus in intro.iter().filter(|f| elim.contains(f)) {
            for neg in &negs {
                let r = theorem_suite(&p, Some(neg), None, Some(fus))?;
                for c in r.checks.iter().filter(|c| c.theorem == crate::classify::THEOREM_ECQ_CONJ) {
                    report.note(index, || format!("negation {:?}, fusion {:?}", neg.0, fus.table()), c);
                }
            }
        }
    }
    Ok(report)
}

pub fn theorem_sweep(maps: &[ConsequenceMap]) -> Result<SweepReport> {
    maps.par_iter()
        .enumerate()
        .map(|(i, m)| sweep_structure(i, m))
        .try_reduce(SweepReport::default, |a, b| Ok(a.merge(b)))
        .map(|mut r| {
            r.applicable.sort();
            r.violations.sort_by_key(|v| v.structure);
            r
        })
}

/// Every table on `n` elements, optionally only the reflexive ones.
pub fn all_structures(n: usize, reflexive: bool) -> Result<Vec<ConsequenceMap>> {
    let ts = TableSpace::new(n, reflexive)?;
    let size = ts.size().filter(|&s| s <= SPACE_LIMIT).ok_or_else(|| {
        Error::ResourceLimit(format!("space 2^{} exceeds {SPACE_LIMIT}", ts.bits))
    })? as u64;
    let carrier = Carrier::of_size(n)?;
    let mut buf = Vec::new();
    (0..size)
        .map(|i| {
            ts.decode(i, &mut buf);
            ConsequenceMap::new(carrier.clone(), buf.clone())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::THEOREM_FUSION_INTRO;

    fn pred(s: &str) -> StructurePredicate {
        s.parse().unwrap()
    }

    #[test]
    fn predicate_parsing() {
        let p = pred("reflexive, not_nf_paraconsistent");
        assert_eq!(p.literals(), &[(Atom::Reflexive, true), (Atom::NfParaconsistent, false)]);
        assert_eq!(p.to_string(), "reflexive,not_nf_paraconsistent");
        assert!("bogus".parse::<StructurePredicate>().is_err());
        assert!(pred("").literals().is_empty());
    }

    #[test]
    fn fast_atoms_agree_with_classifiers_on_all_small_maps() {
        for n in 1..=2 {
            for map in all_structures(n, false).unwrap() {
                for atom in Atom::ALL {
                    assert_eq!(
                        fast_atom(atom, map.table(), n),
                        checked_atom(atom, &map).unwrap(),
                        "{atom:?} on {:?}",
                        map.table()
                    );
                }
            }
        }
    }

    #[test]
    fn fast_atoms_agree_on_random_triples() {
        for map in random_structures(3, 7, 0.6, 300).unwrap() {
            for atom in Atom::ALL {
                assert_eq!(fast_atom(atom, map.table(), 3), checked_atom(atom, &map).unwrap());
            }
        }
    }

    #[test]
    fn spec_counts() {
        let r = enumerate_structures(2, &pred("reflexive,nf_paraconsistent"), SearchMode::Exhaustive, 3).unwrap();
        assert_eq!((r.visited, r.count), (16, 0));
        let r = enumerate_structures(2, &pred("reflexive"), SearchMode::Exhaustive, 0).unwrap();
        assert_eq!(r.count, 4 * 2 * 2);
        let r = enumerate_structures(2, &pred(""), SearchMode::Exhaustive, 0).unwrap();
        assert_eq!(r.count, 256);
    }

    /// Independent count of reflexive maps: each `C(Γ)` is any superset of `Γ`.
    #[test]
    fn reflexive_counts_match_product_formula() {
        for n in 1..=3usize {
            let expected: u64 = (0..1u64 << n).map(|g| 1u64 << (n - g.count_ones() as usize)).product();
            let r = enumerate_structures(n, &pred("reflexive"), SearchMode::Exhaustive, 0).unwrap();
            assert_eq!(r.count, expected);
        }
    }

    #[test]
    fn purely_reflexive_is_the_first_reflexive_nf_witness() {
        let r = enumerate_structures(3, &pred("reflexive,nf_paraconsistent"), SearchMode::Exhaustive, 5).unwrap();
        assert!(r.count > 0);
        let w = &r.witnesses[0];
        assert_eq!(w.index, 0);
        assert!(w.table.iter().enumerate().all(|(g, c)| c.0 == g as u64));
        let nf = pred("nf_paraconsistent");
        assert!(nf.matches(&w.table, 3));
    }

    #[test]
    fn minimal_examples() {
        let m = minimal_example(&pred("reflexive,nf_paraconsistent"), 3).unwrap();
        assert_eq!(m.minimal_size, Some(3));
        assert_eq!(&m.counts[..2], &[0, 0]);
        let m = minimal_example(&pred("nf_paraconsistent"), 3).unwrap();
        assert_eq!(m.minimal_size, Some(1));
        assert_eq!(m.witness.unwrap().table, vec![ElementSet::EMPTY; 2]);
        // one element: C({a}) = {a} is already everything
        let m = minimal_example(&pred("tarskian,paraconsistent"), 2).unwrap();
        assert_eq!(m.minimal_size, Some(2));
    }

    #[test]
    fn exhaustive_counts_are_schedule_independent() {
        let p = pred("not_monotone,nf_paraconsistent");
        let runs: Vec<SearchResult> = [1, 2, 3]
            .iter()
            .map(|&t| with_threads(t, || enumerate_structures(3, &p, SearchMode::Exhaustive, 4)).unwrap().unwrap())
            .collect();
        assert!(runs.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn random_structures_are_reproducible() {
        assert_eq!(random_structure(3, 1, 0.5).unwrap(), random_structure(3, 1, 0.5).unwrap());
        assert_ne!(random_structure(3, 1, 0.5).unwrap(), random_structure(3, 2, 0.5).unwrap());
        let full = random_structure(3, 9, 1.0).unwrap();
        assert!(full.table().iter().all(|c| *c == ElementSet::full(3)));
        assert!(!pred("nf_paraconsistent").matches(full.table(), 3));
        assert!(random_structure(3, 1, 1.5).is_err());
        let mode = SearchMode::Random {
            seed: 11,
            samples: 200,
            bias: 0.5,
        };
        let a = with_threads(1, || enumerate_structures(3, &pred("monotone"), mode, 3)).unwrap().unwrap();
        let b = with_threads(3, || enumerate_structures(3, &pred("monotone"), mode, 3)).unwrap().unwrap();
        assert_eq!(a, b);
        assert_eq!(a.rng, Some(RNG_NAME));
    }

    #[test]
    fn oversized_space_is_refused() {
        assert!(matches!(
            enumerate_structures(4, &pred(""), SearchMode::Exhaustive, 0),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn sweep_on_small_spaces() {
        let maps = all_structures(2, false).unwrap();
        let r = theorem_sweep(&maps).unwrap();
        assert_eq!(r.structures, 256);
        assert!(r.violations.is_empty(), "{:?}", r.violations.first());
        assert!(r.applicable_count(THEOREM_FUSION_INTRO) > 0);
        assert!(r.applicable_count(crate::classify::THEOREM_ECQ_CONJ) > 0);
    }

    /// Cut alone does not carry the fusion lemma: on {a, b} with C(∅) = ∅,
    /// C({a}) = C({a, b}) = {b}, C({b}) = L and ⋏ constantly b, ⋏I holds and
    /// the logic is NF- but not NFF-paraconsistent.
    #[test]
    fn cut_transitivity_is_not_enough_for_the_fusion_lemma() {
        use crate::classify::{check_nff_paraconsistency, validate_fusion_intro};
        let c = Carrier::new(["a", "b"]).unwrap();
        let b = ElementSet::singleton(1);
        let map = ConsequenceMap::new(c, vec![ElementSet::EMPTY, b, ElementSet::full(2), b]).unwrap();
        assert!(check_transitivity(&map).passed());
        assert!(!check_strong_transitivity(&map).passed());
        let p = ConsequenceProvider::Explicit(map);
        let fus = FusionMap::from_fn(2, |_, _| 1);
        assert!(validate_fusion_intro(&p, &fus).unwrap().holds());
        assert!(check_nf_paraconsistency(&p).unwrap().holds());
        assert!(check_nff_paraconsistency(&p, &fus).unwrap().fails());
    }
}
