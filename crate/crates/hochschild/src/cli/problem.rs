//! Problem files: a TOML document naming algebras, bimodules and the instance
//! to compute on. Coefficients are written as strings: rationals such as
//! `"-3/2"`, the parameter `"q"`, or products like `"2q"` and `"-1/2*q"`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::catalog::{linear_path_algebra, matrix_algebra, quantum_exterior, semisimple, truncated_polynomial};
use crate::algebra::{
    free_corner_bimodule, ground_field, monomial_algebra, parse_word, AlgRef, Arrow, Bimodule, FinDimAlgebra, Quiver,
    RewritePresentation, Rule,
};
use crate::error::{Error, Result};
use crate::exactla::sparse::normalize;
use crate::exactla::{Field, FieldSpec, SparseVec};
use crate::qset::{free_rank_one, QSet, SquareData};
use crate::structure::{radical_square_zero, PeirceSquareQuiver};

pub const PROBLEM_FORMAT: &str = "hochschild-problem/1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub format: String,
    #[serde(default)]
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub run: Option<RunSpec>,
    /// A single algebra to compute on, by name.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
    #[serde(default, rename = "algebra", skip_serializing_if = "Vec::is_empty")]
    pub algebras: Vec<AlgebraSpec>,
    #[serde(default, rename = "bimodule", skip_serializing_if = "Vec::is_empty")]
    pub bimodules: Vec<BimoduleSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub qset: Option<QSetSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub square: Option<SquareSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub peirce: Option<PeirceSpec>,
}

/// Defaults for the command line.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub command: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    /// Paths for `along-path`; every arrow when empty.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub paths: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub name: String,
    #[serde(flatten)]
    pub kind: AlgebraKind,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AlgebraKind {
    Field,
    TruncatedPolynomial {
        n: usize,
    },
    LinearPath {
        n: usize,
    },
    QuantumExterior {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        q: Option<String>,
    },
    Semisimple {
        n: usize,
    },
    Matrix {
        n: usize,
    },
    /// Path algebra modulo the listed paths.
    Monomial {
        vertices: Vec<String>,
        #[serde(default)]
        arrows: Vec<[String; 3]>,
        #[serde(default)]
        zero: Vec<String>,
        cap: usize,
    },
    RadicalSquareZero {
        vertices: Vec<String>,
        #[serde(default)]
        arrows: Vec<[String; 3]>,
    },
    /// Rewriting rules `lead -> sum c * word`, decreasing in degree-lexicographic order.
    Presentation {
        vertices: Vec<String>,
        #[serde(default)]
        arrows: Vec<[String; 3]>,
        #[serde(default)]
        rules: Vec<RuleSpec>,
        cap: usize,
    },
    /// Structure constants: `products` lists the nonzero products as
    /// `"x*y = <combination>"`; the system pairs labels with idempotents.
    Structure {
        basis: Vec<String>,
        unit: String,
        #[serde(default)]
        products: Vec<String>,
        #[serde(default)]
        system: Vec<[String; 2]>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleSpec {
    pub lead: String,
    /// Pairs of coefficient and path.
    #[serde(default)]
    pub replacement: Vec<[String; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BimoduleSpec {
    pub name: String,
    #[serde(flatten)]
    pub kind: BimoduleKind,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BimoduleKind {
    Regular {
        algebra: String,
    },
    /// `left ⊗ right`, free of rank one.
    Free {
        left: String,
        right: String,
    },
    /// `left f ⊗ e right` for system labels `f` of `left` and `e` of `right`.
    FreeCorner {
        left: String,
        left_idempotent: String,
        right: String,
        right_idempotent: String,
    },
    Zero {
        left: String,
        right: String,
    },
    Sum {
        parts: Vec<String>,
    },
    /// Explicit actions: for each algebra basis label, the images of the
    /// module basis vectors as combinations of module basis labels.
    /// Unlisted basis elements act by zero.
    Actions {
        left: String,
        right: String,
        basis: Vec<String>,
        #[serde(default)]
        left_action: BTreeMap<String, Vec<String>>,
        #[serde(default)]
        right_action: BTreeMap<String, Vec<String>>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QSetSpec {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<[String; 3]>,
    /// Vertex label to algebra name.
    pub algebras: BTreeMap<String, String>,
    /// Arrow label to bimodule name.
    #[serde(default)]
    pub bimodules: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SquareSpec {
    pub a: String,
    pub b: String,
    pub m: String,
    pub n: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FloorSpec {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<[String; 3]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerticalSpec {
    pub from: String,
    pub to: String,
    #[serde(default = "one")]
    pub multiplicity: usize,
}

fn one() -> usize {
    1
}

/// A two-floor Peirce quiver, realized with radical square zero floors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PeirceSpec {
    pub upper: FloorSpec,
    pub lower: FloorSpec,
    #[serde(default)]
    pub down: Vec<VerticalSpec>,
    #[serde(default)]
    pub up: Vec<VerticalSpec>,
}

fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self> {
        let p: ProblemFile = toml::from_str(text).map_err(|e| {
            let (line, column) = e.span().map_or((0, 0), |s| line_column(text, s.start));
            Error::Parse { line, column, message: e.message().to_string() }
        })?;
        if p.format != PROBLEM_FORMAT {
            return Err(Error::Input(format!("unsupported format '{}', expected '{}'", p.format, PROBLEM_FORMAT)));
        }
        Ok(p)
    }

    pub fn read(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {}", path.display(), e)))?;
        Self::parse(&text)
    }

    /// The canonical text of the problem.
    pub fn emit(&self) -> String {
        toml::to_string(self).expect("problem files serialize")
    }

    pub fn field_spec(&self) -> Result<FieldSpec> {
        self.field.as_deref().map_or(Ok(FieldSpec::Rationals), FieldSpec::parse)
    }
}

/// A coefficient `c * q^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Coefficient {
    pub value: BigRational,
    pub q_power: u32,
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

pub fn parse_coefficient(s: &str) -> Result<Coefficient> {
    let bad = || Error::Input(format!("bad coefficient '{}'", s));
    let mut t = s.trim().replace(' ', "");
    let negative = t.starts_with('-');
    if negative || t.starts_with('+') {
        t.remove(0);
    }
    let (num, q_power) = match t.strip_suffix('q') {
        Some(rest) => (rest.strip_suffix('*').unwrap_or(rest).to_string(), 1),
        None => (t, 0),
    };
    let mut value = if num.is_empty() { BigRational::one() } else { parse_rational(&num).ok_or_else(bad)? };
    if negative {
        value = -value;
    }
    Ok(Coefficient { value, q_power })
}

/// Splits `2 x - 1/2*y + q z` into signed terms `(coefficient, label)`.
pub fn parse_combination(s: &str) -> Result<Vec<(Coefficient, String)>> {
    let s = s.trim();
    if s == "0" || s.is_empty() {
        return Ok(Vec::new());
    }
    let mut terms = Vec::new();
    let mut current = String::new();
    let mut prev = ' ';
    for c in s.chars() {
        // a sign starts a new term unless it follows '/', '*' or another sign
        if (c == '+' || c == '-') && !current.trim().is_empty() && !matches!(prev, '/' | '*' | '+' | '-') {
            terms.push(std::mem::take(&mut current));
        }
        current.push(c);
        if !c.is_whitespace() {
            prev = c;
        }
    }
    terms.push(current);
    terms
        .iter()
        .map(|t| {
            let t = t.trim();
            let (sign, body) = match t.strip_prefix('-') {
                Some(b) => ("-", b.trim()),
                None => ("", t.strip_prefix('+').unwrap_or(t).trim()),
            };
            let (coef, label) = if let Some((c, l)) = body.rsplit_once('*') {
                (c.trim().to_string(), l.trim())
            } else if let Some((c, l)) = body.split_once(char::is_whitespace) {
                (c.trim().to_string(), l.trim())
            } else {
                (String::new(), body)
            };
            if label.is_empty() {
                return Err(Error::Input(format!("term '{}' has no basis label", t)));
            }
            Ok((parse_coefficient(&format!("{}{}", sign, coef))?, label.to_string()))
        })
        .collect()
}

/// Evaluates parsed coefficients in a field with a value for `q`.
pub struct Scalars<'a, F: Field> {
    pub field: &'a F,
    pub q: Option<F::Elem>,
}

impl<F: Field> Scalars<'_, F> {
    pub fn eval(&self, c: &Coefficient) -> Result<F::Elem> {
        let v = self.field.from_rational(&c.value)?;
        if c.q_power == 0 {
            return Ok(v);
        }
        let q = self.q.as_ref().ok_or_else(|| Error::Input("the parameter q is used but not set".into()))?;
        Ok(self.field.mul(&v, &self.field.pow(q, c.q_power)))
    }

    pub fn parse(&self, s: &str) -> Result<F::Elem> {
        self.eval(&parse_coefficient(s)?)
    }

    fn combination(&self, s: &str, labels: &[String]) -> Result<SparseVec<F::Elem>> {
        let mut out = Vec::new();
        for (c, l) in parse_combination(s)? {
            let i = labels
                .iter()
                .position(|x| *x == l)
                .ok_or_else(|| Error::Input(format!("unknown basis label '{}' in '{}'", l, s)))?;
            out.push((i as u32, self.eval(&c)?));
        }
        Ok(normalize(self.field, out))
    }
}

fn quiver(vertices: &[String], arrows: &[[String; 3]]) -> Result<Quiver> {
    let find = |l: &str| {
        vertices.iter().position(|v| v == l).ok_or_else(|| Error::Input(format!("unknown vertex '{}'", l)))
    };
    let arrows = arrows
        .iter()
        .map(|[l, s, t]| Ok(Arrow { label: l.clone(), source: find(s)?, target: find(t)? }))
        .collect::<Result<Vec<_>>>()?;
    Quiver::new(vertices.to_vec(), arrows)
}

/// What a problem asks to compute on.
pub enum Instance<F: Field> {
    Algebra(AlgRef<F>),
    QSet(QSet<F>),
    /// A square, with whether both corners were declared free of rank one.
    Square { square: SquareData<F>, free_rank_one: bool },
    Peirce { quiver: PeirceSquareQuiver, square: SquareData<F> },
}

/// A problem instantiated over a field.
pub struct Model<F: Field> {
    pub name: String,
    pub algebras: BTreeMap<String, AlgRef<F>>,
    pub bimodules: BTreeMap<String, Bimodule<F>>,
    pub instance: Instance<F>,
}

impl<F: Field> Model<F> {
    pub fn build(p: &ProblemFile, field: &F, q: Option<F::Elem>) -> Result<Self> {
        let sc = Scalars { field, q };
        let mut algebras: BTreeMap<String, AlgRef<F>> = BTreeMap::new();
        for spec in &p.algebras {
            if algebras.contains_key(&spec.name) {
                return Err(Error::Input(format!("algebra '{}' is defined twice", spec.name)));
            }
            let a = build_algebra(&sc, &spec.kind).map_err(|e| context(e, "algebra", &spec.name))?;
            algebras.insert(spec.name.clone(), a);
        }
        let alg = |name: &str| {
            algebras.get(name).cloned().ok_or_else(|| Error::Input(format!("unknown algebra '{}'", name)))
        };
        let mut bimodules: BTreeMap<String, Bimodule<F>> = BTreeMap::new();
        let mut free_specs = BTreeMap::new();
        for spec in &p.bimodules {
            if bimodules.contains_key(&spec.name) {
                return Err(Error::Input(format!("bimodule '{}' is defined twice", spec.name)));
            }
            let m = build_bimodule(&sc, &spec.kind, &alg, &bimodules).map_err(|e| context(e, "bimodule", &spec.name))?;
            if let BimoduleKind::Free { left, right } = &spec.kind {
                free_specs.insert(spec.name.clone(), (left.clone(), right.clone()));
            }
            bimodules.insert(spec.name.clone(), m);
        }
        let bim = |name: &str| {
            bimodules.get(name).cloned().ok_or_else(|| Error::Input(format!("unknown bimodule '{}'", name)))
        };
        let declared = [p.target.is_some(), p.qset.is_some(), p.square.is_some(), p.peirce.is_some()];
        if declared.iter().filter(|x| **x).count() != 1 {
            return Err(Error::Input("a problem declares exactly one of target, qset, square, peirce".into()));
        }
        let instance = if let Some(t) = &p.target {
            Instance::Algebra(alg(t)?)
        } else if let Some(qs) = &p.qset {
            let q = quiver(&qs.vertices, &qs.arrows)?;
            let algs = q
                .vertices()
                .iter()
                .map(|v| {
                    let name = qs.algebras.get(v).ok_or_else(|| Error::Input(format!("vertex '{}' has no algebra", v)))?;
                    alg(name)
                })
                .collect::<Result<Vec<_>>>()?;
            let bims = q
                .arrows()
                .iter()
                .map(|a| {
                    let name = qs
                        .bimodules
                        .get(&a.label)
                        .ok_or_else(|| Error::Input(format!("arrow '{}' has no bimodule", a.label)))?;
                    bim(name)
                })
                .collect::<Result<Vec<_>>>()?;
            Instance::QSet(QSet::new(q, algs, bims)?)
        } else if let Some(s) = &p.square {
            let square = SquareData::null(alg(&s.a)?, alg(&s.b)?, bim(&s.m)?, bim(&s.n)?)?;
            let is_free = |name: &str, l: &str, r: &str| free_specs.get(name) == Some(&(l.to_string(), r.to_string()));
            let free_rank_one = is_free(&s.m, &s.b, &s.a) && is_free(&s.n, &s.a, &s.b);
            Instance::Square { square, free_rank_one }
        } else {
            let ps = p.peirce.as_ref().expect("one instance is declared");
            let upper = quiver(&ps.upper.vertices, &ps.upper.arrows)?;
            let lower = quiver(&ps.lower.vertices, &ps.lower.arrows)?;
            let idx = |q: &Quiver, l: &str| {
                q.vertex_index(l).ok_or_else(|| Error::Input(format!("unknown Peirce vertex '{}'", l)))
            };
            let down = ps
                .down
                .iter()
                .map(|v| Ok((idx(&upper, &v.from)?, idx(&lower, &v.to)?, v.multiplicity)))
                .collect::<Result<Vec<_>>>()?;
            let up = ps
                .up
                .iter()
                .map(|v| Ok((idx(&lower, &v.from)?, idx(&upper, &v.to)?, v.multiplicity)))
                .collect::<Result<Vec<_>>>()?;
            let pq = PeirceSquareQuiver::new(upper, lower, down, up)?;
            let square = crate::structure::realize(field, &pq)?;
            Instance::Peirce { quiver: pq, square }
        };
        Ok(Model { name: p.name.clone(), algebras, bimodules, instance })
    }

    /// The instance as a Q-set, when it is one.
    pub fn qset(&self) -> Result<QSet<F>> {
        match &self.instance {
            Instance::Algebra(a) => QSet::new(Quiver::from_labels(&["x"], &[])?, vec![a.clone()], vec![]),
            Instance::QSet(q) => Ok(q.clone()),
            Instance::Square { square, .. } | Instance::Peirce { square, .. } => square.qset(),
        }
    }

    pub fn square(&self) -> Option<&SquareData<F>> {
        match &self.instance {
            Instance::Square { square, .. } | Instance::Peirce { square, .. } => Some(square),
            _ => None,
        }
    }
}

fn context(e: Error, what: &str, name: &str) -> Error {
    match e {
        Error::Input(m) => Error::Input(format!("{} '{}': {}", what, name, m)),
        other => other,
    }
}

fn build_algebra<F: Field>(sc: &Scalars<F>, kind: &AlgebraKind) -> Result<AlgRef<F>> {
    let f = sc.field;
    let a = match kind {
        AlgebraKind::Field => ground_field(f),
        AlgebraKind::TruncatedPolynomial { n } => truncated_polynomial(f, *n)?,
        AlgebraKind::LinearPath { n } => linear_path_algebra(f, *n)?,
        AlgebraKind::QuantumExterior { q } => {
            let q = match q {
                Some(s) => sc.parse(s)?,
                None => sc.q.clone().ok_or_else(|| Error::Input("the parameter q is used but not set".into()))?,
            };
            quantum_exterior(f, q)?
        }
        AlgebraKind::Semisimple { n } => semisimple(f, *n)?,
        AlgebraKind::Matrix { n } => matrix_algebra(f, *n)?,
        AlgebraKind::Monomial { vertices, arrows, zero, cap } => {
            let zero: Vec<&str> = zero.iter().map(|s| s.as_str()).collect();
            monomial_algebra(f, quiver(vertices, arrows)?, &zero, *cap)?
        }
        AlgebraKind::RadicalSquareZero { vertices, arrows } => return radical_square_zero(f, &quiver(vertices, arrows)?),
        AlgebraKind::Presentation { vertices, arrows, rules, cap } => {
            let q = quiver(vertices, arrows)?;
            let rules = rules
                .iter()
                .map(|r| {
                    let replacement = r
                        .replacement
                        .iter()
                        .map(|[c, w]| Ok((sc.parse(c)?, parse_word(&q, w)?)))
                        .collect::<Result<Vec<_>>>()?
                        .into_iter()
                        .filter(|(c, _)| !f.is_zero(c))
                        .collect();
                    Ok(Rule { lead: parse_word(&q, &r.lead)?, replacement })
                })
                .collect::<Result<Vec<_>>>()?;
            RewritePresentation::new(f, q, rules, *cap)?.to_algebra()?
        }
        AlgebraKind::Structure { basis, unit, products, system } => {
            let dim = basis.len();
            let mut table = vec![Vec::new(); dim * dim];
            for p in products {
                let (lhs, rhs) =
                    p.split_once('=').ok_or_else(|| Error::Input(format!("product '{}' has no '='", p)))?;
                let (x, y) =
                    lhs.split_once('*').ok_or_else(|| Error::Input(format!("product '{}' needs 'x*y' on the left", p)))?;
                let find = |l: &str| {
                    basis.iter().position(|b| b == l.trim()).ok_or_else(|| Error::Input(format!("unknown basis label '{}'", l.trim())))
                };
                let (i, j) = (find(x)?, find(y)?);
                table[i * dim + j] = sc.combination(rhs, basis)?;
            }
            let unit = sc.combination(unit, basis)?;
            let sys = system.iter().map(|[_, e]| sc.combination(e, basis)).collect::<Result<Vec<_>>>()?;
            let labels = system.iter().map(|[l, _]| l.clone()).collect();
            FinDimAlgebra::from_structure_constants(f, basis.clone(), table, unit, sys, labels)?
        }
    };
    Ok(Arc::new(a))
}

fn build_bimodule<F: Field>(
    sc: &Scalars<F>,
    kind: &BimoduleKind,
    alg: &dyn Fn(&str) -> Result<AlgRef<F>>,
    earlier: &BTreeMap<String, Bimodule<F>>,
) -> Result<Bimodule<F>> {
    match kind {
        BimoduleKind::Regular { algebra } => Ok(Bimodule::regular(alg(algebra)?)),
        BimoduleKind::Free { left, right } => free_rank_one(&alg(left)?, &alg(right)?),
        BimoduleKind::FreeCorner { left, left_idempotent, right, right_idempotent } => {
            free_corner_bimodule(&alg(left)?, left_idempotent, right_idempotent, &alg(right)?)
        }
        BimoduleKind::Zero { left, right } => Ok(Bimodule::zero(alg(left)?, alg(right)?)),
        BimoduleKind::Sum { parts } => {
            let get = |n: &String| {
                earlier.get(n).ok_or_else(|| Error::Input(format!("unknown bimodule '{}' (parts must come first)", n)))
            };
            let (first, rest) = parts.split_first().ok_or_else(|| Error::Input("empty direct sum".into()))?;
            let mut m = get(first)?.clone();
            for p in rest {
                m = m.direct_sum(get(p)?)?;
            }
            Ok(m)
        }
        BimoduleKind::Actions { left, right, basis, left_action, right_action } => {
            let (l, r) = (alg(left)?, alg(right)?);
            let dim = basis.len();
            let images = |a: &AlgRef<F>, table: &BTreeMap<String, Vec<String>>| -> Result<Vec<Vec<SparseVec<F::Elem>>>> {
                let mut out = vec![vec![Vec::new(); dim]; a.dim()];
                for (label, imgs) in table {
                    let i = a
                        .labels()
                        .iter()
                        .position(|x| x == label)
                        .ok_or_else(|| Error::Input(format!("unknown algebra basis label '{}'", label)))?;
                    if imgs.len() != dim {
                        return Err(Error::Input(format!("action of '{}' lists {} images, expected {}", label, imgs.len(), dim)));
                    }
                    out[i] = imgs.iter().map(|s| sc.combination(s, basis)).collect::<Result<_>>()?;
                }
                Ok(out)
            };
            let li = images(&l, left_action)?;
            let ri = images(&r, right_action)?;
            Bimodule::from_fn(l, r, dim, |i, k| li[i][k].clone(), |k, j| ri[j][k].clone())
        }
    }
}
