//! Finite algebras, logical matrices and the consequence relations they
//! induce on formulas.

use std::fmt;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::formulas::{print, variable_name, Connective, Formula, Fragment, Signature};
use crate::logic::{Absorber, Entailment, EvidenceBound, Laws, Logic, Triviality};
use crate::structures::{ElementSet, MASK_WIDTH};

/// Valuations range over at most this many variables.
pub const MAX_VALUATION_VARS: usize = 6;

/// Element names plus one operation table per connective of the signature.
///
/// Tables are flat, row-major in the arguments: the entry for `(a, b)` of a
/// binary operation sits at `a * n + b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebra {
    elements: Vec<String>,
    signature: Signature,
    tables: Vec<Vec<usize>>,
}

impl FiniteAlgebra {
    pub fn new(elements: Vec<String>, signature: Signature, tables: Vec<Vec<usize>>) -> Result<Self> {
        let n = elements.len();
        if n == 0 || n > MASK_WIDTH {
            return Err(Error::InvalidStructure(format!(
                "an algebra needs between 1 and {MASK_WIDTH} elements, got {n}"
            )));
        }
        for (i, e) in elements.iter().enumerate() {
            if elements[..i].contains(e) {
                return Err(Error::InvalidStructure(format!("element `{e}` is listed twice")));
            }
        }
        if tables.len() != signature.len() {
            return Err(Error::InvalidStructure(format!(
                "{} tables for {} connectives",
                tables.len(),
                signature.len()
            )));
        }
        for (c, table) in signature.connectives().iter().zip(&tables) {
            let expected = n.pow(c.arity as u32);
            if table.len() != expected {
                return Err(Error::InvalidStructure(format!(
                    "table for `{}` has {} entries, expected {expected}",
                    c.name,
                    table.len()
                )));
            }
            if let Some(&bad) = table.iter().find(|&&x| x >= n) {
                return Err(Error::Domain { index: bad, size: n });
            }
        }
        Ok(FiniteAlgebra {
            elements,
            signature,
            tables,
        })
    }

    pub fn from_fn(
        elements: Vec<String>,
        signature: Signature,
        op: impl Fn(usize, &[usize]) -> usize,
    ) -> Result<Self> {
        let n = elements.len();
        let tables = signature
            .connectives()
            .iter()
            .enumerate()
            .map(|(c, conn)| {
                (0..n.pow(conn.arity as u32))
                    .map(|i| op(c, &decode(i, n, conn.arity)))
                    .collect()
            })
            .collect();
        FiniteAlgebra::new(elements, signature, tables)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.elements
            .iter()
            .position(|e| e == name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn table(&self, connective: usize) -> &[usize] {
        &self.tables[connective]
    }

    pub fn apply(&self, connective: usize, args: &[usize]) -> usize {
        let n = self.len();
        let idx = args.iter().fold(0, |acc, &a| acc * n + a);
        self.tables[connective][idx]
    }

    /// Adds a constant denoting `value`.
    pub fn with_constant(&self, name: &str, value: usize) -> Result<Self> {
        if value >= self.len() {
            return Err(Error::Domain {
                index: value,
                size: self.len(),
            });
        }
        let mut conns = self.signature.connectives().to_vec();
        conns.push(Connective::new(name, 0, None));
        let mut tables = self.tables.clone();
        tables.push(vec![value]);
        FiniteAlgebra::new(self.elements.clone(), Signature::new(conns)?, tables)
    }

    /// Homomorphic extension of `v` to `f`.
    pub fn evaluate(&self, f: &Formula, v: &[usize]) -> Result<usize> {
        match f {
            Formula::Var(i) => v.get(*i).copied().ok_or_else(|| {
                Error::InvalidStructure(format!("valuation does not cover {}", variable_name(*i)))
            }),
            Formula::App(c, ch) => {
                let conn = self
                    .signature
                    .connectives()
                    .get(*c)
                    .ok_or_else(|| Error::Uninterpreted(format!("#{c}")))?;
                if conn.arity != ch.len() {
                    return Err(Error::Uninterpreted(conn.name.clone()));
                }
                let mut args = [0usize; crate::formulas::MAX_ARITY];
                for (k, child) in ch.iter().enumerate() {
                    args[k] = self.evaluate(child, v)?;
                }
                Ok(self.apply(*c, &args[..ch.len()]))
            }
        }
    }

    /// Elements returned by every non-nullary operation whenever they occur
    /// among its arguments.
    pub fn find_infectious(&self) -> Infectious {
        let n = self.len();
        let elements: Vec<usize> = (0..n)
            .filter(|&e| {
                self.signature.connectives().iter().enumerate().all(|(c, conn)| {
                    conn.arity == 0
                        || (0..n.pow(conn.arity as u32)).all(|i| {
                            let args = decode(i, n, conn.arity);
                            !args.contains(&e) || self.tables[c][i] == e
                        })
                })
            })
            .collect();
        let constant_escapes = self
            .signature
            .constants()
            .any(|c| elements.iter().any(|&e| self.tables[c][0] != e));
        Infectious {
            elements,
            constant_escapes,
        }
    }
}

/// Mixed-radix digits of `i`, most significant first.
fn decode(mut i: usize, n: usize, arity: usize) -> Vec<usize> {
    let mut out = vec![0; arity];
    for slot in out.iter_mut().rev() {
        *slot = i % n;
        i /= n;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Infectious {
    pub elements: Vec<usize>,
    /// Some constant denotes a value other than an infectious element.
    pub constant_escapes: bool,
}

pub fn find_infectious(a: &FiniteAlgebra) -> Infectious {
    a.find_infectious()
}

/// An assignment of algebra elements to `x1 … xk`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Valuation(pub Vec<usize>);

impl Valuation {
    pub fn render(&self, algebra: &FiniteAlgebra) -> String {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &x)| format!("{}={}", variable_name(i), algebra.element(x)))
            .collect::<Vec<_>>()
            .join(", ")
    }

    /// The `index`-th valuation of `vars` variables in lexicographic order,
    /// first variable most significant.
    pub fn nth(index: usize, vars: usize, size: usize) -> Self {
        Valuation(decode(index, size, vars))
    }
}

pub fn evaluate(f: &Formula, v: &Valuation, a: &FiniteAlgebra) -> Result<usize> {
    a.evaluate(f, &v.0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    algebra: FiniteAlgebra,
    designated: ElementSet,
}

impl Matrix {
    pub fn new(algebra: FiniteAlgebra, designated: ElementSet) -> Result<Self> {
        if designated.is_empty() {
            return Err(Error::InvalidStructure(
                "the designated set must be non-empty".into(),
            ));
        }
        if !designated.is_subset(ElementSet::full(algebra.len())) {
            return Err(Error::Domain {
                index: 63 - designated.0.leading_zeros() as usize,
                size: algebra.len(),
            });
        }
        Ok(Matrix {
            algebra,
            designated,
        })
    }

    pub fn from_names<S: AsRef<str>>(algebra: FiniteAlgebra, designated: &[S]) -> Result<Self> {
        let mut set = ElementSet::EMPTY;
        for d in designated {
            set.insert(algebra.index_of(d.as_ref())?);
        }
        Matrix::new(algebra, set)
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    pub fn signature(&self) -> &Signature {
        self.algebra.signature()
    }

    pub fn designated(&self) -> ElementSet {
        self.designated
    }

    pub fn is_designated(&self, x: usize) -> bool {
        self.designated.contains(x)
    }

    /// True when every element is designated, which makes triviality
    /// undecidable by the fresh-variable argument.
    pub fn designates_everything(&self) -> bool {
        self.designated == ElementSet::full(self.algebra.len())
    }

    /// A designated `d` with `f(d, …, d) = d` for every operation and every
    /// constant equal to `d`.
    pub fn find_designated_fixpoint(&self) -> Option<usize> {
        let a = &self.algebra;
        self.designated.iter().find(|&d| {
            a.signature()
                .connectives()
                .iter()
                .enumerate()
                .all(|(c, conn)| a.apply(c, &vec![d; conn.arity]) == d)
        })
    }
}

pub fn find_designated_fixpoint(m: &Matrix) -> Option<usize> {
    m.find_designated_fixpoint()
}

fn classical_signature(implication: bool) -> Signature {
    let mut conns = vec![
        Connective::new("∧", 2, Some("&")),
        Connective::new("∨", 2, Some("|")),
        Connective::new("¬", 1, Some("~")),
    ];
    if implication {
        conns.push(Connective::new("→", 2, Some("->")));
    }
    Signature::new(conns).expect("static signature")
}

/// The weak Kleene algebra on `0, ω, 1`.
pub fn wk_algebra() -> FiniteAlgebra {
    const AND: [usize; 9] = [0, 1, 0, 1, 1, 1, 0, 1, 2];
    const OR: [usize; 9] = [0, 1, 2, 1, 1, 1, 2, 1, 2];
    const NOT: [usize; 3] = [2, 1, 0];
    FiniteAlgebra::new(
        vec!["0".into(), "ω".into(), "1".into()],
        classical_signature(false),
        vec![AND.to_vec(), OR.to_vec(), NOT.to_vec()],
    )
    .expect("static tables")
}

pub fn boolean2() -> FiniteAlgebra {
    FiniteAlgebra::from_fn(vec!["0".into(), "1".into()], classical_signature(false), |c, a| match c {
        0 => a[0] & a[1],
        1 => a[0] | a[1],
        _ => 1 - a[0],
    })
    .expect("static tables")
}

/// The Gödel chain `0 < 1/(n-1) < … < 1` with min, max, pseudo-complement
/// and relative pseudo-complement.
pub fn godel_chain(n: usize) -> Result<FiniteAlgebra> {
    if n < 2 {
        return Err(Error::InvalidStructure("a Gödel chain needs two elements".into()));
    }
    let top = n - 1;
    let names = (0..n)
        .map(|i| match i {
            0 => "0".to_string(),
            i if i == top => "1".to_string(),
            i => format!("{i}/{top}"),
        })
        .collect();
    FiniteAlgebra::from_fn(names, classical_signature(true), |c, a| match c {
        0 => a[0].min(a[1]),
        1 => a[0].max(a[1]),
        2 => {
            if a[0] == 0 {
                top
            } else {
                0
            }
        }
        _ => {
            if a[0] <= a[1] {
                top
            } else {
                a[1]
            }
        }
    })
}

pub const BUILTIN_MATRICES: [&str; 6] = ["wk", "pwk", "pwk0", "boolean2", "godel3", "godel4"];

pub fn builtin_matrix(name: &str) -> Option<Matrix> {
    let top_only = |a: FiniteAlgebra| {
        let top = a.len() - 1;
        Matrix::new(a, ElementSet::singleton(top)).ok()
    };
    match name {
        "wk" => top_only(wk_algebra()),
        "pwk" => Matrix::new(wk_algebra(), ElementSet::from_indices([1, 2])).ok(),
        "pwk0" => Matrix::new(
            wk_algebra().with_constant("0", 0).ok()?,
            ElementSet::from_indices([1, 2]),
        )
        .ok(),
        "boolean2" => top_only(boolean2()),
        "godel3" => top_only(godel_chain(3).ok()?),
        "godel4" => top_only(godel_chain(4).ok()?),
        _ => None,
    }
}

/// The consequence relation of a matrix, with the formulas of a fragment
/// precomputed as value vectors over every valuation of its variables.
#[derive(Clone, Debug)]
pub struct MatrixConsequence {
    matrix: Matrix,
    fragment: Fragment,
    valuations: usize,
    values: Vec<Vec<u8>>,
    profiles: Vec<FixedBitSet>,
}

impl MatrixConsequence {
    pub fn new(matrix: Matrix, fragment: Fragment) -> Result<Self> {
        if fragment.signature() != matrix.signature() {
            return Err(Error::InvalidStructure(
                "fragment signature differs from the algebra's".into(),
            ));
        }
        let k = fragment.vars();
        if k > MAX_VALUATION_VARS {
            return Err(Error::ResourceLimit(format!(
                "{k} fragment variables (maximum {MAX_VALUATION_VARS})"
            )));
        }
        let a = matrix.algebra();
        let n = a.len();
        if n > u8::MAX as usize {
            return Err(Error::ResourceLimit(format!("{n} algebra elements")));
        }
        let valuations = n.pow(k as u32);
        let columns: Vec<Valuation> = (0..valuations).map(|i| Valuation::nth(i, k, n)).collect();
        let mut values: Vec<Vec<u8>> = Vec::with_capacity(fragment.len());
        for f in fragment.formulas() {
            let row = match f {
                Formula::Var(i) => columns.iter().map(|v| v.0[*i] as u8).collect(),
                Formula::App(c, ch) => {
                    let rows: Vec<&Vec<u8>> = ch
                        .iter()
                        .map(|g| &values[fragment.position(g).expect("subformula closed")])
                        .collect();
                    let mut args = [0usize; crate::formulas::MAX_ARITY];
                    (0..valuations)
                        .map(|j| {
                            for (slot, r) in args.iter_mut().zip(&rows) {
                                *slot = r[j] as usize;
                            }
                            a.apply(*c, &args[..rows.len()]) as u8
                        })
                        .collect()
                }
            };
            values.push(row);
        }
        let profiles = values
            .iter()
            .map(|row| {
                let mut bits = FixedBitSet::with_capacity(valuations);
                for (j, &x) in row.iter().enumerate() {
                    bits.set(j, matrix.is_designated(x as usize));
                }
                bits
            })
            .collect();
        Ok(MatrixConsequence {
            matrix,
            fragment,
            valuations,
            values,
            profiles,
        })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn fragment(&self) -> &Fragment {
        &self.fragment
    }

    /// Number of valuations of the fragment variables.
    pub fn valuation_count(&self) -> usize {
        self.valuations
    }

    pub fn valuation(&self, index: usize) -> Valuation {
        Valuation::nth(index, self.fragment.vars(), self.matrix.algebra().len())
    }

    fn index(&self, f: &Formula) -> Result<usize> {
        self.fragment
            .position(f)
            .ok_or_else(|| Error::OutsideFragment(print(f, self.matrix.signature())))
    }

    /// Values of a fragment formula under every fragment valuation.
    pub fn values(&self, f: &Formula) -> Result<&[u8]> {
        Ok(&self.values[self.index(f)?])
    }

    /// The valuations designating a fragment formula.
    pub fn profile(&self, f: &Formula) -> Result<&FixedBitSet> {
        Ok(&self.profiles[self.index(f)?])
    }

    pub fn values_at(&self, i: usize) -> &[u8] {
        &self.values[i]
    }

    pub fn profile_at(&self, i: usize) -> &FixedBitSet {
        &self.profiles[i]
    }

    /// Fragment formulas entailed by `gamma`, in fragment order.
    pub fn closure(&self, gamma: &[Formula]) -> Result<Vec<Formula>> {
        let mut out = Vec::new();
        for f in self.fragment.formulas() {
            if self.entails(gamma, f)?.holds() {
                out.push(f.clone());
            }
        }
        Ok(out)
    }

    fn fast_indices(&self, items: &[&Formula]) -> Option<Vec<usize>> {
        items.iter().map(|f| self.fragment.position(f)).collect()
    }

    /// First valuation (over `span` variables) designating every premise and,
    /// when given, not designating `conclusion`.
    fn search(&self, premises: &[Formula], conclusion: Option<&Formula>) -> Result<Option<Valuation>> {
        let mut all: Vec<&Formula> = premises.iter().collect();
        all.extend(conclusion);
        let a = self.matrix.algebra();
        if let Some(idx) = self.fast_indices(&all) {
            let (prem, concl) = match conclusion {
                Some(_) => idx.split_at(idx.len() - 1),
                None => (&idx[..], &[][..]),
            };
            let mut acc = FixedBitSet::with_capacity(self.valuations);
            acc.insert_range(..);
            for &i in prem {
                acc.intersect_with(&self.profiles[i]);
            }
            if let Some(&c) = concl.first() {
                acc.difference_with(&self.profiles[c]);
            }
            return Ok(acc.ones().next().map(|j| self.valuation(j)));
        }
        let span = all.iter().map(|f| f.var_span()).max().unwrap_or(0);
        if span > MAX_VALUATION_VARS {
            return Err(Error::ResourceLimit(format!(
                "query over {span} variables (maximum {MAX_VALUATION_VARS})"
            )));
        }
        for f in &all {
            f.check(self.matrix.signature())?;
        }
        let n = a.len();
        for j in 0..n.pow(span as u32) {
            let v = Valuation::nth(j, span, n);
            let mut ok = true;
            for p in premises {
                if !self.matrix.is_designated(a.evaluate(p, &v.0)?) {
                    ok = false;
                    break;
                }
            }
            if ok {
                if let Some(c) = conclusion {
                    ok = !self.matrix.is_designated(a.evaluate(c, &v.0)?);
                }
            }
            if ok {
                return Ok(Some(v));
            }
        }
        Ok(None)
    }

    /// Value of a binary schema in `x1, x2` at `(e, b)`.
    fn eval2(&self, f: &Formula, e: usize, b: usize) -> Result<usize> {
        self.matrix.algebra().evaluate(f, &[e, b])
    }
}

pub fn matrix_consequence(m: Matrix, frag: Fragment) -> Result<MatrixConsequence> {
    MatrixConsequence::new(m, frag)
}

/// `C(Γ) = L` for the matrix logic: exact by the fresh-variable argument.
pub fn matrix_trivializing(
    mc: &MatrixConsequence,
    gamma: &[Formula],
) -> Result<crate::logic::Verdict<Formula>> {
    crate::structures::is_trivializing(mc, gamma)
}

impl Logic for MatrixConsequence {
    type Item = Formula;

    fn scope(&self) -> Vec<Formula> {
        self.fragment.formulas().to_vec()
    }

    fn scope_is_complete(&self) -> bool {
        false
    }

    fn evidence_bound(&self) -> Option<EvidenceBound> {
        Some(EvidenceBound {
            vars: self.fragment.vars(),
            depth: self.fragment.depth(),
            fresh: 1,
            formulas: self.fragment.len(),
        })
    }

    fn describe(&self, item: &Formula) -> String {
        print(item, self.matrix.signature())
    }

    fn entails(&self, premises: &[Formula], conclusion: &Formula) -> Result<Entailment> {
        Ok(match self.search(premises, Some(conclusion))? {
            None => Entailment::Holds,
            Some(v) => Entailment::Fails {
                countermodel: Some(v.render(self.matrix.algebra())),
            },
        })
    }

    fn trivializes(&self, premises: &[Formula]) -> Result<Triviality<Formula>> {
        if self.matrix.designates_everything() {
            return Err(Error::Unsupported(
                "every element is designated, so triviality cannot be reduced to valuation search"
                    .into(),
            ));
        }
        Ok(match self.search(premises, None)? {
            None => Triviality::Trivial,
            Some(v) => {
                let fresh = self.fresh(premises).expect("structural");
                let a = self.matrix.algebra();
                let mut values = v.0;
                values.resize(fresh_index(&fresh), 0);
                let undesignated = (0..a.len())
                    .find(|&x| !self.matrix.is_designated(x))
                    .expect("checked above");
                values.push(undesignated);
                Triviality::Escapes {
                    conclusion: fresh,
                    countermodel: Some(Valuation(values).render(a)),
                }
            }
        })
    }

    fn laws(&self) -> Result<Laws> {
        Ok(Laws::TARSKIAN)
    }

    fn generic(&self, count: usize) -> Option<Vec<Formula>> {
        Some((0..count).map(Formula::Var).collect())
    }

    fn fresh(&self, avoid: &[Formula]) -> Option<Formula> {
        let span = avoid.iter().map(Formula::var_span).max().unwrap_or(0);
        Some(Formula::Var(span.max(self.fragment.vars())))
    }

    fn instantiate(&self, context: &Formula, item: &Formula) -> Option<Formula> {
        Some(context.substitute(std::slice::from_ref(item)))
    }

    fn designated_fixpoint(&self) -> Option<String> {
        self.matrix
            .find_designated_fixpoint()
            .map(|d| self.matrix.algebra().element(d).to_string())
    }

    fn designated_absorber(&self, fused: &Formula) -> Option<Absorber> {
        if fused.var_span() > 2 {
            return None;
        }
        let a = self.matrix.algebra();
        let infectious = a.find_infectious();
        self.matrix
            .designated()
            .iter()
            .find(|&e| {
                (0..a.len()).all(|b| {
                    self.eval2(fused, e, b)
                        .map(|x| self.matrix.is_designated(x))
                        .unwrap_or(false)
                })
            })
            .map(|e| Absorber {
                element: a.element(e).to_string(),
                infectious: infectious.elements.contains(&e),
            })
    }
}

fn fresh_index(f: &Formula) -> usize {
    match f {
        Formula::Var(i) => *i,
        Formula::App(..) => unreachable!("fresh items are variables"),
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = &self.algebra;
        let d: Vec<&str> = self.designated.iter().map(|i| a.element(i)).collect();
        write!(f, "⟨{{{}}}, {{{}}}⟩", a.elements().join(", "), d.join(", "))
    }
}

/// Number of fragment valuations designating all of `gamma`, computed over
/// `chunks` parallel ranges.
pub fn count_designating(mc: &MatrixConsequence, gamma: &[Formula], chunks: usize) -> Result<usize> {
    let idx: Vec<usize> = gamma.iter().map(|f| mc.index(f)).collect::<Result<_>>()?;
    let total = mc.valuation_count();
    let step = total.div_ceil(chunks.max(1)).max(1);
    Ok((0..total)
        .step_by(step)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|start| {
            (start..(start + step).min(total))
                .filter(|&j| idx.iter().all(|&i| mc.profile_at(i).contains(j)))
                .count()
        })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::{enumerate_fragment, parse};
    use proptest::prelude::*;

    fn pwk() -> Matrix {
        builtin_matrix("pwk").unwrap()
    }

    fn logic(name: &str, vars: usize, depth: usize) -> MatrixConsequence {
        let m = builtin_matrix(name).unwrap();
        let frag = enumerate_fragment(m.signature(), vars, depth).unwrap();
        MatrixConsequence::new(m, frag).unwrap()
    }

    fn f(mc: &MatrixConsequence, s: &str) -> Formula {
        parse(s, mc.matrix().signature()).unwrap()
    }

    #[test]
    fn wk_table_spot_checks() {
        let a = wk_algebra();
        let (zero, w, one) = (0, 1, 2);
        assert_eq!(a.apply(0, &[w, one]), w);
        assert_eq!(a.apply(2, &[w]), w);
        assert_eq!(a.apply(1, &[zero, one]), one);
    }

    #[test]
    fn boolean_tables() {
        let a = boolean2();
        assert_eq!(a.apply(0, &[1, 0]), 0);
        assert_eq!(a.apply(2, &[0]), 1);
        assert_eq!(a.apply(1, &[1, 0]), 1);
    }

    #[test]
    fn godel_tables() {
        let a = godel_chain(3).unwrap();
        assert_eq!(a.elements(), ["0", "1/2", "1"]);
        assert_eq!(a.apply(3, &[2, 1]), 1);
        assert_eq!(a.apply(3, &[1, 2]), 2);
        assert_eq!(a.apply(2, &[1]), 0);
        let b = godel_chain(4).unwrap();
        assert_eq!(b.elements(), ["0", "1/3", "2/3", "1"]);
    }

    #[test]
    fn evaluation_examples() {
        let mc = logic("pwk0", 1, 1);
        let a = mc.matrix().algebra();
        let contradiction = f(&mc, "(p & ~p)");
        assert_eq!(evaluate(&contradiction, &Valuation(vec![1]), a).unwrap(), 1);
        assert_eq!(evaluate(&f(&mc, "0"), &Valuation(vec![2]), a).unwrap(), 0);
        assert_eq!(evaluate(&contradiction, &Valuation(vec![1]), &boolean2()).unwrap(), 0);
        let bad = Formula::app(9, vec![]);
        assert!(matches!(a.evaluate(&bad, &[0]), Err(Error::Uninterpreted(_))));
    }

    #[test]
    fn pwk_consequence_examples() {
        let mc = logic("pwk", 2, 1);
        let (p, q, np) = (f(&mc, "p"), f(&mc, "q"), f(&mc, "~p"));
        match mc.entails(&[p.clone(), np.clone()], &q).unwrap() {
            Entailment::Fails { countermodel } => {
                assert_eq!(countermodel.as_deref(), Some("p=ω, q=0"))
            }
            Entailment::Holds => panic!("PWK is paraconsistent"),
        }
        let cpc = logic("boolean2", 2, 1);
        assert!(cpc.entails(&[p.clone(), np.clone()], &q).unwrap().holds());
        let pwk0 = logic("pwk0", 2, 1);
        let zero = f(&pwk0, "0");
        for g in pwk0.fragment().formulas() {
            assert!(pwk0.entails(std::slice::from_ref(&zero), g).unwrap().holds());
        }
    }

    #[test]
    fn trivialization_examples() {
        let mc = logic("pwk", 1, 1);
        let (p, np) = (f(&mc, "p"), f(&mc, "~p"));
        let v = matrix_trivializing(&mc, &[p.clone(), np.clone()]).unwrap();
        assert!(v.fails());
        assert!(v.replay(&mc).unwrap());
        assert!(v.render(&mc).contains("p=ω"));
        let cpc = logic("boolean2", 1, 1);
        assert!(matrix_trivializing(&cpc, &[p.clone(), np]).unwrap().holds());
        let pwk0 = logic("pwk0", 1, 1);
        let zero = f(&pwk0, "0");
        assert!(matrix_trivializing(&pwk0, &[zero.clone()]).unwrap().holds());
        assert!(matrix_trivializing(&pwk0, &[p, zero]).unwrap().holds());
    }

    #[test]
    fn all_designated_is_unsupported() {
        let m = Matrix::new(wk_algebra(), ElementSet::full(3)).unwrap();
        let frag = enumerate_fragment(m.signature(), 1, 0).unwrap();
        let mc = MatrixConsequence::new(m, frag).unwrap();
        assert!(matches!(
            mc.trivializes(&[Formula::Var(0)]),
            Err(Error::Unsupported(_))
        ));
        assert!(Matrix::new(wk_algebra(), ElementSet::EMPTY).is_err());
    }

    #[test]
    fn infectious_elements() {
        assert_eq!(
            find_infectious(&wk_algebra()),
            Infectious {
                elements: vec![1],
                constant_escapes: false
            }
        );
        assert!(find_infectious(&boolean2()).elements.is_empty());
        let with_zero = wk_algebra().with_constant("0", 0).unwrap();
        assert_eq!(
            find_infectious(&with_zero),
            Infectious {
                elements: vec![1],
                constant_escapes: true
            }
        );
    }

    #[test]
    fn designated_fixpoints() {
        assert_eq!(pwk().find_designated_fixpoint(), Some(1));
        assert_eq!(builtin_matrix("pwk0").unwrap().find_designated_fixpoint(), None);
        assert_eq!(builtin_matrix("boolean2").unwrap().find_designated_fixpoint(), None);
        assert_eq!(builtin_matrix("wk").unwrap().find_designated_fixpoint(), None);
    }

    #[test]
    fn default_fragment_sizes() {
        assert_eq!(logic("pwk", 2, 2).fragment().len(), 302);
        assert_eq!(logic("pwk0", 2, 2).fragment().len(), 1179);
    }

    #[test]
    fn infectious_element_is_preserved() {
        let mc = logic("pwk", 2, 3);
        let a = mc.matrix().algebra();
        for g in mc.fragment().formulas() {
            assert_eq!(a.evaluate(g, &[1, 1]).unwrap(), 1);
        }
    }

    #[test]
    fn trivializing_agrees_with_exhaustive_entailment() {
        for name in ["pwk", "pwk0", "boolean2", "godel3", "wk"] {
            let mc = logic(name, 1, 2);
            let fresh = Formula::Var(mc.fragment().vars());
            let formulas = mc.fragment().formulas();
            for (i, a) in formulas.iter().enumerate() {
                for b in &formulas[i..] {
                    let gamma = [a.clone(), b.clone()];
                    let trivial = mc.trivializes(&gamma).unwrap().is_trivial();
                    let everything = formulas
                        .iter()
                        .chain(std::iter::once(&fresh))
                        .all(|g| mc.entails(&gamma, g).unwrap().holds());
                    assert_eq!(trivial, everything, "{name}: {gamma:?}");
                }
            }
        }
    }

    #[test]
    fn partition_independent_counts() {
        let mc = logic("godel4", 2, 1);
        let gamma = [f(&mc, "(p | q)")];
        let counts: Vec<usize> = (1..6).map(|c| count_designating(&mc, &gamma, c).unwrap()).collect();
        assert!(counts.windows(2).all(|w| w[0] == w[1]));
        assert_eq!(counts[0], 7);
    }

    proptest! {
        #[test]
        fn evaluation_is_homomorphic(idx in 0usize..302, v0 in 0usize..3, v1 in 0usize..3) {
            let mc = logic("pwk", 2, 2);
            let a = mc.matrix().algebra();
            let g = &mc.fragment().formulas()[idx];
            if let Formula::App(c, ch) = g {
                let args: Vec<usize> = ch.iter().map(|x| a.evaluate(x, &[v0, v1]).unwrap()).collect();
                prop_assert_eq!(a.evaluate(g, &[v0, v1]).unwrap(), a.apply(*c, &args));
            }
            let j = v0 * 3 + v1;
            prop_assert_eq!(mc.values_at(idx)[j] as usize, a.evaluate(g, &[v0, v1]).unwrap());
        }
    }
}
