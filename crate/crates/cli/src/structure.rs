//! Loaded structures: built-in registry and JSON structure files.

use std::collections::BTreeMap;

use serde::Deserialize;

use paracons_core::classify::{FusionMap, NegationMap};
use paracons_core::error::{Error, Result};
use paracons_core::formulas::{parse, BinaryTemplate, Connective, Formula, Signature, UnaryTemplate};
use paracons_core::matrix::{builtin_matrix, FiniteAlgebra, Matrix, BUILTIN_MATRICES};
use paracons_core::structures::{
    purely_reflexive, Carrier, ConsequenceMap, ConsequenceProvider, Direction, ElementSet, Poset,
    QConsequenceTable, ValuationFamily,
};

/// A set-based consequence relation with optional operators on its carrier.
#[derive(Clone, Debug)]
pub struct SetStructure {
    pub provider: ConsequenceProvider,
    pub negation: Option<NegationMap>,
    pub fusion: Option<FusionMap>,
    pub conjunction: Option<FusionMap>,
    pub implication: Option<FusionMap>,
    pub bottom: Option<usize>,
}

/// A matrix with operators given as formula templates.
#[derive(Clone, Debug)]
pub struct MatrixStructure {
    pub matrix: Matrix,
    pub negation: Option<UnaryTemplate>,
    pub fusion: Option<BinaryTemplate>,
    pub conjunction: Option<BinaryTemplate>,
    pub implication: Option<BinaryTemplate>,
    pub bottom: Option<Formula>,
}

#[derive(Clone, Debug)]
pub enum Structure {
    Set(SetStructure),
    Matrix(MatrixStructure),
}

impl SetStructure {
    pub fn bare(provider: ConsequenceProvider) -> Self {
        SetStructure {
            provider,
            negation: None,
            fusion: None,
            conjunction: None,
            implication: None,
            bottom: None,
        }
    }
}

impl MatrixStructure {
    /// Operators picked from the signature: `¬`, `∧` (also as fusion), `→`
    /// or else `¬p ∨ q`, and a constant named `0`.
    pub fn with_defaults(matrix: Matrix) -> Self {
        let sig = matrix.signature().clone();
        let find = |name: &str, arity: usize| sig.find(name).filter(|&id| sig.get(id).arity == arity);
        let neg = find("¬", 1);
        let and = find("∧", 2);
        let implication = match (find("→", 2), find("∨", 2), neg) {
            (Some(imp), _, _) => Some(BinaryTemplate::connective(imp)),
            (None, Some(or), Some(n)) => Some(BinaryTemplate(Formula::app(
                or,
                vec![Formula::app(n, vec![Formula::var(0)]), Formula::var(1)],
            ))),
            _ => None,
        };
        MatrixStructure {
            negation: neg.map(UnaryTemplate::connective),
            fusion: and.map(BinaryTemplate::connective),
            conjunction: and.map(BinaryTemplate::connective),
            implication,
            bottom: find("0", 0).map(Formula::constant),
            matrix,
        }
    }
}

pub const BUILTIN_STRUCTURES: [&str; 7] = [
    "poset-1",
    "poset-1-dual",
    "poset-2",
    "poset-2-dual",
    "purely-reflexive-2",
    "purely-reflexive-3",
    "q-sample",
];

pub fn builtin_names() -> impl Iterator<Item = &'static str> {
    BUILTIN_STRUCTURES.into_iter().chain(BUILTIN_MATRICES)
}

fn poset(order: &[(&str, &str)], direction: Direction) -> Result<ConsequenceProvider> {
    let c = Carrier::new(["0", "1", "2"])?;
    Ok(ConsequenceProvider::Poset {
        poset: Poset::from_names(c, order)?,
        direction,
    })
}

pub fn builtin(name: &str) -> Result<Option<Structure>> {
    let set = |p| Ok(Some(Structure::Set(SetStructure::bare(p))));
    match name {
        "poset-1" => set(poset(&[("0", "1")], Direction::Up)?),
        "poset-1-dual" => set(poset(&[("0", "1")], Direction::Down)?),
        "poset-2" => set(poset(&[("0", "2"), ("1", "2")], Direction::Up)?),
        // the order 2 ≤ 0, 1 read downwards
        "poset-2-dual" => set(poset(&[("2", "0"), ("2", "1")], Direction::Down)?),
        "purely-reflexive-2" => set(purely_reflexive(Carrier::new(["a", "b"])?)),
        "purely-reflexive-3" => set(purely_reflexive(Carrier::new(["a", "b", "c"])?)),
        "q-sample" => {
            let c = Carrier::new(["a", "b"])?;
            let a = ElementSet::singleton(0);
            let table = (0..4u64).map(|g| ElementSet(g).intersection(a)).collect();
            set(ConsequenceProvider::QConsequence(QConsequenceTable::new(c, table)?))
        }
        _ => Ok(builtin_matrix(name).map(|m| Structure::Matrix(MatrixStructure::with_defaults(m)))),
    }
}

#[derive(Debug, Deserialize, PartialEq, Eq, Clone, Copy)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Explicit,
    Poset,
    PosetDual,
    ValuationOrder,
    PurelyReflexive,
    QConsequence,
    Matrix,
}

type SetTable = Vec<(Vec<String>, Vec<String>)>;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodomainSpec {
    pub elements: Vec<String>,
    #[serde(default)]
    pub order: Vec<(String, String)>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConnectiveSpec {
    pub name: String,
    pub arity: usize,
    #[serde(default)]
    pub alias: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub elements: Vec<String>,
    /// Row-major value lists keyed by connective name.
    pub tables: BTreeMap<String, Vec<String>>,
}

/// A unary map, a list of `[x, y, x ⋏ y]` triples, or a formula template.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum OperatorSpec {
    Template(String),
    Unary(BTreeMap<String, String>),
    Binary(Vec<(String, String, String)>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    pub kind: Kind,
    #[serde(default)]
    pub elements: Option<Vec<String>>,
    #[serde(default)]
    pub table: Option<SetTable>,
    #[serde(default)]
    pub order: Option<Vec<(String, String)>>,
    #[serde(default)]
    pub valuations: Option<Vec<BTreeMap<String, String>>>,
    #[serde(default)]
    pub codomain: Option<CodomainSpec>,
    #[serde(default)]
    pub w_table: Option<SetTable>,
    #[serde(default)]
    pub builtin: Option<String>,
    #[serde(default)]
    pub connectives: Option<Vec<ConnectiveSpec>>,
    #[serde(default)]
    pub algebra: Option<AlgebraSpec>,
    #[serde(default)]
    pub designated: Option<Vec<String>>,
    #[serde(default)]
    pub negation: Option<OperatorSpec>,
    #[serde(default)]
    pub fusion: Option<OperatorSpec>,
    #[serde(default)]
    pub conjunction: Option<OperatorSpec>,
    #[serde(default)]
    pub implication: Option<OperatorSpec>,
    #[serde(default)]
    pub bottom: Option<String>,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidStructure(msg.into())
}

/// Parses and validates a structure file; JSON errors carry line and column.
pub fn parse_structure(text: &str) -> Result<Structure> {
    let file: StructureFile =
        serde_json::from_str(text).map_err(|e| invalid(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    build(file)
}

fn require<T>(field: Option<T>, name: &str, kind: Kind) -> Result<T> {
    field.ok_or_else(|| invalid(format!("kind {kind:?} requires `{name}`")))
}

fn reject(present: bool, name: &str, kind: Kind) -> Result<()> {
    if present {
        Err(invalid(format!("`{name}` does not apply to kind {kind:?}")))
    } else {
        Ok(())
    }
}

fn set_table(c: &Carrier, rows: &SetTable, field: &str) -> Result<Vec<ElementSet>> {
    let size = c.subset_count()?;
    let mut table: Vec<Option<ElementSet>> = vec![None; size];
    for (gamma, cons) in rows {
        let g = c.set_of(gamma)?;
        if table[g.0 as usize].replace(c.set_of(cons)?).is_some() {
            return Err(invalid(format!("`{field}` lists {} twice", c.render(g))));
        }
    }
    table
        .into_iter()
        .enumerate()
        .map(|(g, v)| v.ok_or_else(|| invalid(format!("`{field}` misses {}", c.render(ElementSet(g as u64))))))
        .collect()
}

fn binary_map(c: &Carrier, spec: OperatorSpec, field: &str) -> Result<FusionMap> {
    let OperatorSpec::Binary(rows) = spec else {
        return Err(invalid(format!("`{field}` must be a list of [x, y, value] triples")));
    };
    let n = c.len();
    let mut table = vec![None; n * n];
    for (x, y, v) in rows {
        let cell = c.index_of(&x)? * n + c.index_of(&y)?;
        if table[cell].replace(c.index_of(&v)?).is_some() {
            return Err(invalid(format!("`{field}` defines ({x}, {y}) twice")));
        }
    }
    let table = table
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| invalid(format!("`{field}` misses ({}, {})", c.name(i / n), c.name(i % n)))))
        .collect::<Result<Vec<_>>>()?;
    FusionMap::new(c, table)
}

fn build(f: StructureFile) -> Result<Structure> {
    let kind = f.kind;
    if kind == Kind::Matrix {
        return build_matrix(f);
    }
    for (present, name) in [
        (f.builtin.is_some(), "builtin"),
        (f.connectives.is_some(), "connectives"),
        (f.algebra.is_some(), "algebra"),
        (f.designated.is_some(), "designated"),
    ] {
        reject(present, name, kind)?;
    }
    let c = Carrier::new(require(f.elements, "elements", kind)?)?;
    reject(f.table.is_some() && kind != Kind::Explicit, "table", kind)?;
    reject(f.w_table.is_some() && kind != Kind::QConsequence, "w_table", kind)?;
    reject(
        f.order.is_some() && !matches!(kind, Kind::Poset | Kind::PosetDual),
        "order",
        kind,
    )?;
    reject(
        (f.valuations.is_some() || f.codomain.is_some()) && kind != Kind::ValuationOrder,
        "valuations",
        kind,
    )?;
    let provider = match kind {
        Kind::Explicit => {
            let t = set_table(&c, &require(f.table, "table", kind)?, "table")?;
            ConsequenceProvider::Explicit(ConsequenceMap::new(c.clone(), t)?)
        }
        Kind::QConsequence => {
            let t = set_table(&c, &require(f.w_table, "w_table", kind)?, "w_table")?;
            ConsequenceProvider::QConsequence(QConsequenceTable::new(c.clone(), t)?)
        }
        Kind::Poset | Kind::PosetDual => ConsequenceProvider::Poset {
            poset: Poset::from_names(c.clone(), &f.order.unwrap_or_default())?,
            direction: if kind == Kind::Poset { Direction::Up } else { Direction::Down },
        },
        Kind::PurelyReflexive => purely_reflexive(c.clone()),
        Kind::ValuationOrder => {
            let cod = require(f.codomain, "codomain", kind)?;
            let cod = Poset::from_names(Carrier::new(cod.elements)?, &cod.order)?;
            let vals = require(f.valuations, "valuations", kind)?
                .into_iter()
                .map(|v| {
                    if let Some(extra) = v.keys().find(|k| c.index_of(k).is_err()) {
                        return Err(invalid(format!("valuation names unknown element `{extra}`")));
                    }
                    c.names()
                        .iter()
                        .map(|e| {
                            let x = v.get(e).ok_or_else(|| invalid(format!("valuation misses `{e}`")))?;
                            cod.carrier().index_of(x)
                        })
                        .collect()
                })
                .collect::<Result<Vec<Vec<usize>>>>()?;
            ConsequenceProvider::ValuationOrder(ValuationFamily::new(c.clone(), cod, vals)?)
        }
        Kind::Matrix => unreachable!(),
    };
    let negation = match f.negation {
        None => None,
        Some(OperatorSpec::Unary(m)) => {
            if let Some(extra) = m.keys().find(|k| c.index_of(k).is_err()) {
                return Err(invalid(format!("`negation` names unknown element `{extra}`")));
            }
            let map = c
                .names()
                .iter()
                .map(|e| c.index_of(m.get(e).ok_or_else(|| invalid(format!("`negation` misses `{e}`")))?))
                .collect::<Result<Vec<_>>>()?;
            Some(NegationMap::new(&c, map)?)
        }
        Some(_) => return Err(invalid("`negation` must map every element to an element")),
    };
    let bin = |spec: Option<OperatorSpec>, name| spec.map(|s| binary_map(&c, s, name)).transpose();
    Ok(Structure::Set(SetStructure {
        negation,
        fusion: bin(f.fusion, "fusion")?,
        conjunction: bin(f.conjunction, "conjunction")?,
        implication: bin(f.implication, "implication")?,
        bottom: f.bottom.map(|b| c.index_of(&b)).transpose()?,
        provider,
    }))
}

fn build_matrix(f: StructureFile) -> Result<Structure> {
    let kind = Kind::Matrix;
    for (present, name) in [
        (f.table.is_some(), "table"),
        (f.w_table.is_some(), "w_table"),
        (f.order.is_some(), "order"),
        (f.valuations.is_some(), "valuations"),
        (f.codomain.is_some(), "codomain"),
        (f.elements.is_some(), "elements"),
    ] {
        reject(present, name, kind)?;
    }
    let matrix = match f.builtin {
        Some(name) => {
            if f.connectives.is_some() || f.algebra.is_some() || f.designated.is_some() {
                return Err(invalid("a built-in matrix takes no `connectives`, `algebra` or `designated`"));
            }
            builtin_matrix(&name).ok_or_else(|| invalid(format!("unknown built-in matrix `{name}`")))?
        }
        None => {
            let sig = Signature::new(
                require(f.connectives, "connectives", kind)?
                    .into_iter()
                    .map(|c| Connective::new(&c.name, c.arity, c.alias.as_deref()))
                    .collect(),
            )?;
            let alg = require(f.algebra, "algebra", kind)?;
            if let Some(extra) = alg.tables.keys().find(|k| sig.find(k).is_none()) {
                return Err(invalid(format!("table for undeclared connective `{extra}`")));
            }
            let c = Carrier::new(alg.elements.clone())?;
            let tables = sig
                .connectives()
                .iter()
                .map(|con| {
                    let t = alg
                        .tables
                        .get(&con.name)
                        .ok_or_else(|| invalid(format!("missing table for `{}`", con.name)))?;
                    t.iter().map(|x| c.index_of(x)).collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            let algebra = FiniteAlgebra::new(alg.elements, sig, tables)?;
            Matrix::from_names(algebra, &require(f.designated, "designated", kind)?)?
        }
    };
    let mut s = MatrixStructure::with_defaults(matrix);
    let sig = s.matrix.signature().clone();
    let template = |spec: OperatorSpec, name: &str| match spec {
        OperatorSpec::Template(t) => Ok(t),
        _ => Err(invalid(format!("`{name}` of a matrix must be a formula template"))),
    };
    if let Some(spec) = f.negation {
        s.negation = Some(UnaryTemplate::parse(&template(spec, "negation")?, &sig)?);
    }
    if let Some(spec) = f.fusion {
        s.fusion = Some(BinaryTemplate::parse(&template(spec, "fusion")?, &sig)?);
    }
    if let Some(spec) = f.conjunction {
        s.conjunction = Some(BinaryTemplate::parse(&template(spec, "conjunction")?, &sig)?);
    }
    if let Some(spec) = f.implication {
        s.implication = Some(BinaryTemplate::parse(&template(spec, "implication")?, &sig)?);
    }
    if let Some(b) = f.bottom {
        s.bottom = Some(parse(&b, &sig)?);
    }
    Ok(Structure::Matrix(s))
}
