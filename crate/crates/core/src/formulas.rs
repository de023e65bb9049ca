//! Signatures, formula terms, their concrete syntax, and bounded fragments of
//! the formula algebra.
//!
//! Grammar (binary connectives need parentheses, except for a single
//! outermost one):
//!
//! ```text
//! formula := variable | constant
//!          | unary formula
//!          | '(' formula binary formula ')'
//!          | connective '(' formula (',' formula)* ')'     -- arity ≥ 2
//! ```
//!
//! Variables are `p q r s` and `x1 x2 …` (`x1` is the same variable as `p`).

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::logic::{BinaryOperator, UnaryOperator};

pub const MAX_ARITY: usize = 3;
pub const DEFAULT_FORMULA_LIMIT: usize = 1_000_000;

const LETTER_VARIABLES: [&str; 4] = ["p", "q", "r", "s"];

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Connective {
    pub name: String,
    pub arity: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alias: Option<String>,
}

impl Connective {
    pub fn new(name: &str, arity: usize, alias: Option<&str>) -> Self {
        Connective {
            name: name.to_string(),
            arity,
            alias: alias.map(str::to_string),
        }
    }

    /// The token used when printing: the ASCII alias if there is one.
    pub fn token(&self) -> &str {
        self.alias.as_deref().unwrap_or(&self.name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Signature {
    connectives: Vec<Connective>,
}

fn is_word_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn is_word(s: &str) -> bool {
    !s.is_empty() && s.chars().all(is_word_char)
}

fn is_symbol(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| !is_word_char(c) && !c.is_whitespace() && !matches!(c, '(' | ')' | ','))
}

impl Signature {
    pub fn new(connectives: Vec<Connective>) -> Result<Self> {
        let mut tokens = HashSet::new();
        for c in &connectives {
            if c.arity > MAX_ARITY {
                return Err(Error::InvalidStructure(format!(
                    "connective `{}` has arity {} (maximum {MAX_ARITY})",
                    c.name, c.arity
                )));
            }
            for tok in std::iter::once(&c.name).chain(c.alias.iter()) {
                if !(is_word(tok) || is_symbol(tok)) {
                    return Err(Error::InvalidStructure(format!(
                        "connective token `{tok}` mixes word and symbol characters"
                    )));
                }
                if variable_index(tok).is_some() {
                    return Err(Error::InvalidStructure(format!(
                        "connective token `{tok}` is reserved for variables"
                    )));
                }
                if !tokens.insert(tok.clone()) {
                    return Err(Error::InvalidStructure(format!(
                        "connective token `{tok}` is declared twice"
                    )));
                }
            }
        }
        Ok(Signature { connectives })
    }

    pub fn connectives(&self) -> &[Connective] {
        &self.connectives
    }

    pub fn get(&self, id: usize) -> &Connective {
        &self.connectives[id]
    }

    pub fn len(&self) -> usize {
        self.connectives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.connectives.is_empty()
    }

    /// Looks a connective up by name or alias.
    pub fn find(&self, token: &str) -> Option<usize> {
        self.connectives
            .iter()
            .position(|c| c.name == token || c.alias.as_deref() == Some(token))
    }

    pub fn constants(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&i| self.connectives[i].arity == 0)
    }

    pub fn has_constants(&self) -> bool {
        self.constants().next().is_some()
    }

    fn symbols(&self) -> Vec<(&str, usize)> {
        let mut out = Vec::new();
        for (i, c) in self.connectives.iter().enumerate() {
            for tok in std::iter::once(c.name.as_str()).chain(c.alias.as_deref()) {
                if is_symbol(tok) {
                    out.push((tok, i));
                }
            }
        }
        out
    }
}

/// A term over a signature: a variable or a connective applied to children.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Var(usize),
    App(usize, Arc<[Formula]>),
}

impl Formula {
    pub fn var(i: usize) -> Self {
        Formula::Var(i)
    }

    pub fn app(connective: usize, children: Vec<Formula>) -> Self {
        Formula::App(connective, children.into())
    }

    pub fn constant(connective: usize) -> Self {
        Formula::App(connective, Arc::from(Vec::new()))
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Var(_) => 0,
            Formula::App(_, ch) => ch.iter().map(|c| c.depth() + 1).max().unwrap_or(0),
        }
    }

    pub fn max_var(&self) -> Option<usize> {
        match self {
            Formula::Var(i) => Some(*i),
            Formula::App(_, ch) => ch.iter().filter_map(Formula::max_var).max(),
        }
    }

    /// Number of variables a valuation must cover (`max index + 1`).
    pub fn var_span(&self) -> usize {
        self.max_var().map_or(0, |m| m + 1)
    }

    pub fn occurs(&self, var: usize) -> bool {
        match self {
            Formula::Var(i) => *i == var,
            Formula::App(_, ch) => ch.iter().any(|c| c.occurs(var)),
        }
    }

    /// Replaces variable `i` by `args[i]`; variables past `args` are kept.
    pub fn substitute(&self, args: &[Formula]) -> Formula {
        match self {
            Formula::Var(i) => args.get(*i).cloned().unwrap_or(Formula::Var(*i)),
            Formula::App(c, ch) => {
                Formula::App(*c, ch.iter().map(|x| x.substitute(args)).collect())
            }
        }
    }

    /// Checks connective ids and arities against `sig`.
    pub fn check(&self, sig: &Signature) -> Result<()> {
        match self {
            Formula::Var(_) => Ok(()),
            Formula::App(c, ch) => {
                let conn = sig.connectives.get(*c).ok_or_else(|| {
                    Error::InvalidStructure(format!("connective id {c} is not in the signature"))
                })?;
                if conn.arity != ch.len() {
                    return Err(ParseError::ArityMismatch {
                        name: conn.name.clone(),
                        expected: conn.arity,
                        found: ch.len(),
                        offset: 0,
                    }
                    .into());
                }
                ch.iter().try_for_each(|x| x.check(sig))
            }
        }
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> Printed<'a> {
        Printed { formula: self, sig }
    }
}

pub fn variable_name(i: usize) -> String {
    match LETTER_VARIABLES.get(i) {
        Some(name) => (*name).to_string(),
        None => format!("x{}", i + 1),
    }
}

pub fn variable_index(name: &str) -> Option<usize> {
    if let Some(i) = LETTER_VARIABLES.iter().position(|v| *v == name) {
        return Some(i);
    }
    let digits = name.strip_prefix('x')?;
    if digits.is_empty() || digits.starts_with('0') || !digits.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    digits.parse::<usize>().ok().map(|n| n - 1)
}

pub struct Printed<'a> {
    formula: &'a Formula,
    sig: &'a Signature,
}

impl fmt::Display for Printed<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(f, self.formula, self.sig)
    }
}

fn write_formula(f: &mut fmt::Formatter<'_>, formula: &Formula, sig: &Signature) -> fmt::Result {
    match formula {
        Formula::Var(i) => f.write_str(&variable_name(*i)),
        Formula::App(c, ch) => {
            let tok = sig.get(*c).token();
            match ch.len() {
                0 => f.write_str(tok),
                1 => {
                    f.write_str(tok)?;
                    if is_word(tok) {
                        f.write_str(" ")?;
                    }
                    write_formula(f, &ch[0], sig)
                }
                2 => {
                    f.write_str("(")?;
                    write_formula(f, &ch[0], sig)?;
                    write!(f, " {tok} ")?;
                    write_formula(f, &ch[1], sig)?;
                    f.write_str(")")
                }
                _ => {
                    write!(f, "{tok}(")?;
                    for (k, c) in ch.iter().enumerate() {
                        if k > 0 {
                            f.write_str(", ")?;
                        }
                        write_formula(f, c, sig)?;
                    }
                    f.write_str(")")
                }
            }
        }
    }
}

pub fn print(formula: &Formula, sig: &Signature) -> String {
    formula.display(sig).to_string()
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown connective `{name}` at offset {offset}")]
    UnknownConnective { name: String, offset: usize },
    #[error("connective `{name}` takes {expected} argument(s), given {found} (offset {offset})")]
    ArityMismatch {
        name: String,
        expected: usize,
        found: usize,
        offset: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    Comma,
    Word(String),
    Symbol(usize),
    End,
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    sig: &'a Signature,
    symbols: Vec<(&'a str, usize)>,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    /// Returns the next token and its start offset without consuming it.
    fn peek(&mut self) -> std::result::Result<(Tok, usize, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.text[start..];
        let Some(c) = rest.chars().next() else {
            return Ok((Tok::End, start, start));
        };
        let simple = match c {
            '(' => Some(Tok::Open),
            ')' => Some(Tok::Close),
            ',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(t) = simple {
            return Ok((t, start, start + 1));
        }
        if is_word_char(c) {
            let len = rest.find(|ch: char| !is_word_char(ch)).unwrap_or(rest.len());
            return Ok((Tok::Word(rest[..len].to_string()), start, start + len));
        }
        let best = self
            .symbols
            .iter()
            .filter(|(tok, _)| rest.starts_with(tok))
            .max_by_key(|(tok, _)| tok.len());
        match best {
            Some((tok, id)) => Ok((Tok::Symbol(*id), start, start + tok.len())),
            None => {
                let len = rest
                    .find(|ch: char| is_word_char(ch) || ch.is_whitespace() || matches!(ch, '(' | ')' | ','))
                    .unwrap_or(rest.len());
                Err(ParseError::UnknownConnective {
                    name: rest[..len].to_string(),
                    offset: start,
                })
            }
        }
    }

    fn next(&mut self) -> std::result::Result<(Tok, usize), ParseError> {
        let (tok, start, end) = self.peek()?;
        self.pos = end;
        Ok((tok, start))
    }

    fn syntax(offset: usize, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            offset,
            message: message.into(),
        }
    }

    fn formula(&mut self) -> std::result::Result<Formula, ParseError> {
        let (tok, at) = self.next()?;
        match tok {
            Tok::Open => {
                let left = self.formula()?;
                let (tok, op_at) = self.next()?;
                let id = match tok {
                    Tok::Close => return Ok(left),
                    Tok::Symbol(id) => id,
                    Tok::Word(w) => match self.sig.find(&w) {
                        Some(id) => id,
                        None => {
                            return Err(ParseError::UnknownConnective {
                                name: w,
                                offset: op_at,
                            })
                        }
                    },
                    _ => return Err(Self::syntax(op_at, "expected a binary connective")),
                };
                self.expect_binary(id, op_at)?;
                let right = self.formula()?;
                let (tok, close_at) = self.next()?;
                if tok != Tok::Close {
                    return Err(Self::syntax(close_at, "expected `)`"));
                }
                Ok(Formula::app(id, vec![left, right]))
            }
            Tok::Word(w) => {
                if let Some(i) = variable_index(&w) {
                    return Ok(Formula::Var(i));
                }
                match self.sig.find(&w) {
                    Some(id) => self.application(id, at),
                    None => Err(ParseError::UnknownConnective { name: w, offset: at }),
                }
            }
            Tok::Symbol(id) => self.application(id, at),
            Tok::Close | Tok::Comma | Tok::End => Err(Self::syntax(at, "expected a formula")),
        }
    }

    fn expect_binary(&self, id: usize, at: usize) -> std::result::Result<(), ParseError> {
        let conn = self.sig.get(id);
        if conn.arity == 2 {
            Ok(())
        } else {
            Err(ParseError::ArityMismatch {
                name: conn.name.clone(),
                expected: conn.arity,
                found: 2,
                offset: at,
            })
        }
    }

    /// A connective in prefix position.
    fn application(&mut self, id: usize, at: usize) -> std::result::Result<Formula, ParseError> {
        let conn = self.sig.get(id);
        match conn.arity {
            0 => Ok(Formula::constant(id)),
            1 => Ok(Formula::app(id, vec![self.formula()?])),
            arity => {
                let (tok, open_at, _) = self.peek()?;
                if tok != Tok::Open {
                    return Err(ParseError::ArityMismatch {
                        name: conn.name.clone(),
                        expected: arity,
                        found: 0,
                        offset: open_at,
                    });
                }
                self.next()?;
                let mut args = vec![self.formula()?];
                loop {
                    let (tok, sep_at) = self.next()?;
                    match tok {
                        Tok::Comma => args.push(self.formula()?),
                        Tok::Close => break,
                        _ => return Err(Self::syntax(sep_at, "expected `,` or `)`")),
                    }
                }
                if args.len() != arity {
                    return Err(ParseError::ArityMismatch {
                        name: conn.name.clone(),
                        expected: arity,
                        found: args.len(),
                        offset: at,
                    });
                }
                Ok(Formula::app(id, args))
            }
        }
    }

    fn top(&mut self) -> std::result::Result<Formula, ParseError> {
        let mut f = self.formula()?;
        let (tok, at, _) = self.peek()?;
        let infix = match &tok {
            Tok::Symbol(id) => Some(*id),
            Tok::Word(w) if variable_index(w).is_none() => self.sig.find(w),
            _ => None,
        };
        if let Some(id) = infix {
            self.next()?;
            self.expect_binary(id, at)?;
            let right = self.formula()?;
            f = Formula::app(id, vec![f, right]);
        }
        let (tok, at) = self.next()?;
        if tok != Tok::End {
            return Err(Self::syntax(at, "unexpected trailing input"));
        }
        Ok(f)
    }
}

pub fn parse(text: &str, sig: &Signature) -> std::result::Result<Formula, ParseError> {
    Parser {
        text,
        pos: 0,
        sig,
        symbols: sig.symbols(),
    }
    .top()
}

/// All distinct subterms of `f`, children before parents.
pub fn subformulas(f: &Formula) -> Vec<Formula> {
    fn walk(f: &Formula, seen: &mut HashSet<Formula>, out: &mut Vec<Formula>) {
        if let Formula::App(_, ch) = f {
            for c in ch.iter() {
                walk(c, seen, out);
            }
        }
        if seen.insert(f.clone()) {
            out.push(f.clone());
        }
    }
    let mut out = Vec::new();
    walk(f, &mut HashSet::new(), &mut out);
    out
}

/// Every formula of depth at most `depth` over `vars` variables.
#[derive(Clone, Debug)]
pub struct Fragment {
    signature: Signature,
    vars: usize,
    depth: usize,
    formulas: Vec<Formula>,
    index: HashMap<Formula, usize>,
}

impl Fragment {
    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn formulas(&self) -> &[Formula] {
        &self.formulas
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }

    pub fn position(&self, f: &Formula) -> Option<usize> {
        self.index.get(f).copied()
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.index.contains_key(f)
    }
}

/// Size of the fragment by the layer recurrence, saturating at `u128::MAX`.
pub fn fragment_size(sig: &Signature, vars: usize, depth: usize) -> u128 {
    let atoms = (vars + sig.constants().count()) as u128;
    let mut total = atoms;
    for _ in 0..depth {
        let mut next = atoms;
        for c in sig.connectives() {
            if c.arity > 0 {
                let mut term: u128 = 1;
                for _ in 0..c.arity {
                    term = term.saturating_mul(total);
                }
                next = next.saturating_add(term);
            }
        }
        total = next;
    }
    total
}

pub fn enumerate_fragment(sig: &Signature, vars: usize, depth: usize) -> Result<Fragment> {
    enumerate_fragment_with_limit(sig, vars, depth, DEFAULT_FORMULA_LIMIT)
}

pub fn enumerate_fragment_with_limit(
    sig: &Signature,
    vars: usize,
    depth: usize,
    limit: usize,
) -> Result<Fragment> {
    if vars == 0 && !sig.has_constants() {
        return Err(Error::InvalidStructure(
            "a fragment needs a variable or a constant".into(),
        ));
    }
    let expected = fragment_size(sig, vars, depth);
    if expected > limit as u128 {
        return Err(Error::ResourceLimit(format!(
            "fragment ({vars} vars, depth {depth}) has {expected} formulas, limit is {limit}"
        )));
    }
    let mut formulas: Vec<Formula> = (0..vars).map(Formula::Var).collect();
    formulas.extend(sig.constants().map(Formula::constant));
    let mut layer_start = 0;
    for _ in 0..depth {
        let below = formulas.len();
        let mut layer = Vec::new();
        for (id, conn) in sig.connectives().iter().enumerate() {
            if conn.arity == 0 {
                continue;
            }
            let mut idx = vec![0usize; conn.arity];
            'tuples: loop {
                if idx.iter().any(|&i| i >= layer_start) {
                    layer.push(Formula::app(id, idx.iter().map(|&i| formulas[i].clone()).collect()));
                }
                for k in (0..conn.arity).rev() {
                    idx[k] += 1;
                    if idx[k] < below {
                        continue 'tuples;
                    }
                    idx[k] = 0;
                }
                break;
            }
        }
        layer_start = below;
        formulas.extend(layer);
    }
    debug_assert_eq!(formulas.len() as u128, expected);
    let index = formulas
        .iter()
        .enumerate()
        .map(|(i, f)| (f.clone(), i))
        .collect();
    Ok(Fragment {
        signature: sig.clone(),
        vars,
        depth,
        formulas,
        index,
    })
}

/// A unary operation given by a formula in the variable `x1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnaryTemplate(pub Formula);

/// A binary operation given by a formula in the variables `x1`, `x2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryTemplate(pub Formula);

impl UnaryTemplate {
    pub fn connective(id: usize) -> Self {
        UnaryTemplate(Formula::app(id, vec![Formula::Var(0)]))
    }

    /// A bare unary connective token, or a formula in `p`/`x1`.
    pub fn parse(text: &str, sig: &Signature) -> Result<Self> {
        if let Some(id) = sig.find(text.trim()) {
            if sig.get(id).arity == 1 {
                return Ok(UnaryTemplate::connective(id));
            }
        }
        let f = parse(text, sig)?;
        if f.var_span() > 1 {
            return Err(Error::InvalidStructure(format!(
                "unary template `{text}` may only use the variable p"
            )));
        }
        Ok(UnaryTemplate(f))
    }
}

impl BinaryTemplate {
    pub fn connective(id: usize) -> Self {
        BinaryTemplate(Formula::app(id, vec![Formula::Var(0), Formula::Var(1)]))
    }

    /// A bare binary connective token, or a formula in `p`, `q`.
    pub fn parse(text: &str, sig: &Signature) -> Result<Self> {
        if let Some(id) = sig.find(text.trim()) {
            if sig.get(id).arity == 2 {
                return Ok(BinaryTemplate::connective(id));
            }
        }
        let f = parse(text, sig)?;
        if f.var_span() > 2 {
            return Err(Error::InvalidStructure(format!(
                "binary template `{text}` may only use the variables p and q"
            )));
        }
        Ok(BinaryTemplate(f))
    }
}

impl UnaryOperator<Formula> for UnaryTemplate {
    fn apply(&self, a: &Formula) -> Formula {
        self.0.substitute(std::slice::from_ref(a))
    }
}

impl BinaryOperator<Formula> for BinaryTemplate {
    fn apply(&self, a: &Formula, b: &Formula) -> Formula {
        self.0.substitute(&[a.clone(), b.clone()])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn and_not() -> Signature {
        Signature::new(vec![
            Connective::new("∧", 2, Some("&")),
            Connective::new("¬", 1, Some("~")),
        ])
        .unwrap()
    }

    fn rich() -> Signature {
        Signature::new(vec![
            Connective::new("∧", 2, Some("&")),
            Connective::new("∨", 2, Some("|")),
            Connective::new("¬", 1, Some("~")),
            Connective::new("→", 2, Some("->")),
            Connective::new("0", 0, None),
            Connective::new("neg", 1, None),
            Connective::new("ite", 3, None),
        ])
        .unwrap()
    }

    #[test]
    fn parses_conjunction_with_negation() {
        let sig = and_not();
        let f = parse("(p & ~p)", &sig).unwrap();
        let p = Formula::Var(0);
        assert_eq!(f, Formula::app(0, vec![p.clone(), Formula::app(1, vec![p])]));
        assert_eq!(parse("(p ∧ ¬p)", &sig).unwrap(), f);
        assert_eq!(print(&f, &sig), "(p & ~p)");
    }

    #[test]
    fn parses_constant() {
        let sig = rich();
        assert_eq!(parse("0", &sig).unwrap(), Formula::constant(4));
    }

    #[test]
    fn dangling_binary_reports_offset() {
        let err = parse("p &", &and_not()).unwrap_err();
        assert_eq!(
            err,
            ParseError::Syntax {
                offset: 3,
                message: "expected a formula".into()
            }
        );
    }

    #[test]
    fn parse_errors() {
        let sig = rich();
        assert!(matches!(
            parse("(p # q)", &sig),
            Err(ParseError::UnknownConnective { offset: 3, .. })
        ));
        assert!(matches!(
            parse("foo", &sig),
            Err(ParseError::UnknownConnective { .. })
        ));
        assert!(matches!(
            parse("(p ~ q)", &sig),
            Err(ParseError::ArityMismatch { expected: 1, found: 2, .. })
        ));
        assert!(matches!(
            parse("ite(p, q)", &sig),
            Err(ParseError::ArityMismatch { expected: 3, found: 2, .. })
        ));
        assert!(matches!(parse("(p & q", &sig), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("p q", &sig), Err(ParseError::Syntax { offset: 2, .. })));
    }

    #[test]
    fn variables_and_aliases() {
        let sig = rich();
        assert_eq!(parse("x1", &sig).unwrap(), Formula::Var(0));
        assert_eq!(parse("x7", &sig).unwrap(), Formula::Var(6));
        assert_eq!(variable_name(6), "x7");
        assert!(variable_index("x0").is_none());
        let f = parse("neg ~(p -> q)", &sig).unwrap();
        assert_eq!(print(&f, &sig), "neg ~(p -> q)");
        let g = parse("ite(p, 0, ~q)", &sig).unwrap();
        assert_eq!(print(&g, &sig), "ite(p, 0, ~q)");
        assert_eq!(parse("&(p, q)", &sig).unwrap(), parse("(p & q)", &sig).unwrap());
        assert_eq!(parse("p | q", &sig).unwrap(), parse("(p | q)", &sig).unwrap());
    }

    #[test]
    fn signature_validation() {
        assert!(Signature::new(vec![Connective::new("p", 0, None)]).is_err());
        assert!(Signature::new(vec![Connective::new("&", 4, None)]).is_err());
        assert!(Signature::new(vec![Connective::new("a&", 2, None)]).is_err());
        assert!(Signature::new(vec![
            Connective::new("&", 2, None),
            Connective::new("and", 2, Some("&"))
        ])
        .is_err());
    }

    #[test]
    fn subformula_examples() {
        let sig = and_not();
        let show = |f: &Formula| -> Vec<String> {
            subformulas(f).iter().map(|g| print(g, &sig)).collect()
        };
        assert_eq!(show(&parse("(p & ~p)", &sig).unwrap()), ["p", "~p", "(p & ~p)"]);
        assert_eq!(show(&parse("p", &sig).unwrap()), ["p"]);
        assert_eq!(show(&parse("~~p", &sig).unwrap()), ["p", "~p", "~~p"]);
    }

    /// Independent count: formulas of depth ≤ d by recursion on the tree shape.
    fn count_oracle(arities: &[usize], atoms: u64, depth: usize) -> u64 {
        if depth == 0 {
            return atoms;
        }
        let below = count_oracle(arities, atoms, depth - 1);
        atoms + arities.iter().filter(|&&a| a > 0).map(|&a| below.pow(a as u32)).sum::<u64>()
    }

    #[test]
    fn fragment_examples() {
        let sig = and_not();
        let f = enumerate_fragment(&sig, 1, 1).unwrap();
        let shown: Vec<String> = f.formulas().iter().map(|g| print(g, &sig)).collect();
        assert_eq!(shown, ["p", "(p & p)", "~p"]);

        let neg = Signature::new(vec![Connective::new("¬", 1, Some("~"))]).unwrap();
        let f = enumerate_fragment(&neg, 1, 2).unwrap();
        let shown: Vec<String> = f.formulas().iter().map(|g| print(g, &neg)).collect();
        assert_eq!(shown, ["p", "~p", "~~p"]);

        let f = enumerate_fragment(&sig, 2, 0).unwrap();
        assert_eq!(f.formulas(), &[Formula::Var(0), Formula::Var(1)]);
    }

    #[test]
    fn fragment_counts_match_oracle() {
        let sigs = [and_not(), rich()];
        for sig in &sigs {
            let arities: Vec<usize> = sig.connectives().iter().map(|c| c.arity).collect();
            let consts = arities.iter().filter(|&&a| a == 0).count() as u64;
            for vars in 0..=3usize {
                for depth in 0..=3usize {
                    let expected = count_oracle(&arities, vars as u64 + consts, depth);
                    if expected == 0 || expected > 10_000 {
                        continue;
                    }
                    let frag = enumerate_fragment(sig, vars, depth).unwrap();
                    assert_eq!(frag.len() as u64, expected, "vars {vars} depth {depth}");
                    let distinct: HashSet<&Formula> = frag.formulas().iter().collect();
                    assert_eq!(distinct.len(), frag.len());
                    for g in frag.formulas() {
                        assert!(g.depth() <= depth);
                        for s in subformulas(g) {
                            assert!(frag.contains(&s));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn fragment_limit_and_empty_pool() {
        let sig = and_not();
        assert!(matches!(
            enumerate_fragment_with_limit(&sig, 3, 3, 1000),
            Err(Error::ResourceLimit(_))
        ));
        assert!(enumerate_fragment(&sig, 0, 2).is_err());
    }

    #[test]
    fn templates_substitute() {
        let sig = rich();
        let imp = BinaryTemplate::parse("(~p | q)", &sig).unwrap();
        let a = parse("(p & q)", &sig).unwrap();
        let b = parse("r", &sig).unwrap();
        assert_eq!(print(&imp.apply(&a, &b), &sig), "(~(p & q) | r)");
        let neg = UnaryTemplate::parse("~", &sig).unwrap();
        assert_eq!(print(&neg.apply(&a), &sig), "~(p & q)");
        assert!(UnaryTemplate::parse("(p & q)", &sig).is_err());
    }

    fn arb_formula() -> impl Strategy<Value = Formula> {
        let leaf = prop_oneof![(0usize..6).prop_map(Formula::Var), Just(Formula::constant(4))];
        leaf.prop_recursive(4, 32, 3, |inner| {
            prop_oneof![
                (0usize..2, inner.clone(), inner.clone())
                    .prop_map(|(c, a, b)| Formula::app(c, vec![a, b])),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::app(3, vec![a, b])),
                inner.clone().prop_map(|a| Formula::app(2, vec![a])),
                inner.clone().prop_map(|a| Formula::app(5, vec![a])),
                (inner.clone(), inner.clone(), inner)
                    .prop_map(|(a, b, c)| Formula::app(6, vec![a, b, c])),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_then_parse_is_identity(f in arb_formula()) {
            let sig = rich();
            let text = print(&f, &sig);
            prop_assert_eq!(parse(&text, &sig).unwrap(), f.clone());
            prop_assert_eq!(print(&parse(&text, &sig).unwrap(), &sig), text);
        }
    }
}
