//! Specialised stepper generation.
//!
//! [`expand`] turns a coefficient table and a noise dimension into a
//! [`StepExpansion`]: every stage and the update written out as lists of
//! nonzero terms, with each distinct `(field, state, time)` evaluation point
//! named once. Emission is driven by templates stored as data files, one
//! directory per dialect (`rust`, `python` ship with the crate).
//!
//! The expansion has `O(s² m²)` terms for the vector kinds, which is why the
//! noise dimension is capped (6 by default).

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use minijinja::{Environment, UndefinedBehavior};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::ito_integrals::IntegralNeeds;
use crate::tables::{CoefficientTable, Rational, TableKind};

/// Largest noise dimension generated unless a caller asks for more.
pub const DEFAULT_MAX_NOISE_DIM: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StageFamily {
    /// `X0`, feeding drift evaluations.
    Zero,
    /// `X^k` (0-based `k`), feeding diffusion evaluations.
    Noise(usize),
    /// `X̂^k` of the weak scheme.
    Hat(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StageSymbol {
    pub family: StageFamily,
    /// 0-based stage index.
    pub stage: usize,
}

impl StageSymbol {
    fn var_name(&self) -> String {
        let i = self.stage + 1;
        match self.family {
            StageFamily::Zero => format!("x0_{i}"),
            StageFamily::Noise(k) => format!("x{}_{i}", k + 1),
            StageFamily::Hat(k) => format!("xh{}_{i}", k + 1),
        }
    }

    fn latex(&self, index: &str) -> String {
        let i = self.stage + 1;
        match self.family {
            StageFamily::Zero => format!("X^{{0{i}{index}}}"),
            StageFamily::Noise(k) => format!("X^{{{}{i}{index}}}", k + 1),
            StageFamily::Hat(k) => format!("\\hat{{X}}^{{{}{i}{index}}}", k + 1),
        }
    }
}

/// A single table coefficient: block key plus 1-based position.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoefRef {
    pub block: &'static str,
    pub row: usize,
    pub col: Option<usize>,
    pub value: Rational,
}

impl CoefRef {
    fn new(block: &'static str, row: usize, col: Option<usize>, value: Rational) -> Self {
        Self { block, row, col, value }
    }

    /// Constant name in generated code, e.g. `A0_2_1`, `ALPHA_1`, `BETA2_3`.
    pub fn const_name(&self) -> String {
        let base = match self.block {
            "a" => "ALPHA".to_string(),
            "b1" | "b2" | "b3" | "b4" => format!("BETA{}", &self.block[1..]),
            other => other.to_uppercase(),
        };
        match self.col {
            Some(c) => format!("{base}_{}_{c}", self.row),
            None => format!("{base}_{}", self.row),
        }
    }

    /// LaTeX label: `A_{01}^{2}` for `A0[2][1]`, `b_{2}^{3}` for `b2[3]`,
    /// `c_{0}^{2}`, `a_{1}`.
    pub fn latex(&self) -> String {
        let (letter, digit) = self.block.split_at(1);
        match (self.col, digit.is_empty()) {
            (Some(c), _) => format!("{letter}_{{{digit}{c}}}^{{{}}}", self.row),
            (None, true) => format!("{letter}_{{{}}}", self.row),
            (None, false) => format!("{letter}_{{{digit}}}^{{{}}}", self.row),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Drift,
    Diffusion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StateRef {
    /// `x_n` itself (every alias stage resolves here).
    Base,
    Stage(StageSymbol),
}

/// One named function evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalPoint {
    pub field: Field,
    pub state: StateRef,
    /// Time offset coefficient; `None` means `t_n`.
    pub time: Option<CoefRef>,
}

impl EvalPoint {
    fn key(&self) -> (Field, StateRef, Rational) {
        (self.field, self.state, self.time.as_ref().map_or(Rational::ZERO, |c| c.value))
    }
}

/// Random (or step-size) factor multiplying a term. Indices are 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RandomFactor {
    /// `h`
    H,
    /// `√h`
    SqrtH,
    /// `I^a`
    Single(usize),
    /// `I^{ab}/√h`
    CrossSqrtH(usize, usize),
    /// `I^{a0}/h`
    TimeRightH(usize),
    /// `I^{aaa}/h`
    TripleH(usize),
    /// `Î^a`
    IHat(usize),
    /// `Î^{ab}/√h` (diagonal included)
    IHatPairSqrtH(usize, usize),
}

impl RandomFactor {
    pub fn var_name(&self) -> String {
        match *self {
            RandomFactor::H => "h".into(),
            RandomFactor::SqrtH => "sqrt_h".into(),
            RandomFactor::Single(a) => format!("i_{}", a + 1),
            RandomFactor::CrossSqrtH(a, b) => format!("i_{}_{}_sqrt_h", a + 1, b + 1),
            RandomFactor::TimeRightH(a) => format!("i_{}_0_h", a + 1),
            RandomFactor::TripleH(a) => format!("i_{0}_{0}_{0}_h", a + 1),
            RandomFactor::IHat(a) => format!("ihat_{}", a + 1),
            RandomFactor::IHatPairSqrtH(a, b) => format!("ihat_{}_{}_sqrt_h", a + 1, b + 1),
        }
    }

    fn kind_name(&self) -> &'static str {
        match self {
            RandomFactor::H => "h",
            RandomFactor::SqrtH => "sqrt_h",
            RandomFactor::Single(_) => "single",
            RandomFactor::CrossSqrtH(..) => "cross_sqrt_h",
            RandomFactor::TimeRightH(_) => "time_right_h",
            RandomFactor::TripleH(_) => "triple_h",
            RandomFactor::IHat(_) => "ihat",
            RandomFactor::IHatPairSqrtH(..) => "ihat_pair_sqrt_h",
        }
    }

    fn indices(&self) -> (usize, usize) {
        match *self {
            RandomFactor::H | RandomFactor::SqrtH => (0, 0),
            RandomFactor::Single(a)
            | RandomFactor::TimeRightH(a)
            | RandomFactor::TripleH(a)
            | RandomFactor::IHat(a) => (a, a),
            RandomFactor::CrossSqrtH(a, b) | RandomFactor::IHatPairSqrtH(a, b) => (a, b),
        }
    }

    fn uses_sqrt_h(&self) -> bool {
        matches!(
            self,
            RandomFactor::SqrtH
                | RandomFactor::CrossSqrtH(..)
                | RandomFactor::IHatPairSqrtH(..)
        )
    }

    pub fn latex(&self) -> String {
        let frac = |num: String, den: &str| format!("\\frac{{{num}}}{{{den}}}");
        match *self {
            RandomFactor::H => "h_n".into(),
            RandomFactor::SqrtH => "\\sqrt{h_n}".into(),
            RandomFactor::Single(a) => format!("I^{{{}}}(h_n)", a + 1),
            RandomFactor::CrossSqrtH(a, b) => frac(format!("I^{{{}{}}}(h_n)", a + 1, b + 1), "\\sqrt{h_n}"),
            RandomFactor::TimeRightH(a) => frac(format!("I^{{{}0}}(h_n)", a + 1), "h_n"),
            RandomFactor::TripleH(a) => frac(format!("I^{{{0}{0}{0}}}(h_n)", a + 1), "h_n"),
            RandomFactor::IHat(a) => format!("\\hat{{I}}^{{{}}}", a + 1),
            RandomFactor::IHatPairSqrtH(a, b) => frac(format!("\\hat{{I}}^{{{}{}}}", a + 1, b + 1), "\\sqrt{h_n}"),
        }
    }
}

/// `coeff · factor · field(eval)[column]`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: CoefRef,
    pub factor: RandomFactor,
    /// Index into [`StepExpansion::evals`].
    pub eval: usize,
    /// Diffusion column; `None` for drift terms.
    pub column: Option<usize>,
    /// Stage whose evaluation this term reads, as written in the scheme.
    pub source: StageSymbol,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageDef {
    pub symbol: StageSymbol,
    /// Empty for stages equal to `x_n`.
    pub terms: Vec<Term>,
    /// Evaluation made at this stage.
    pub eval: usize,
}

impl StageDef {
    pub fn is_alias(&self) -> bool {
        self.terms.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepExpansion {
    pub table_name: String,
    pub kind: TableKind,
    pub m: usize,
    /// In dependency order.
    pub stage_defs: Vec<StageDef>,
    /// In creation order; each appears once.
    pub evals: Vec<EvalPoint>,
    pub update_terms: Vec<Term>,
}

impl StepExpansion {
    /// Auxiliary integrals the expansion reads.
    pub fn integral_needs(&self) -> IntegralNeeds {
        let mut needs = IntegralNeeds::NONE;
        for t in self.all_terms() {
            match t.factor {
                RandomFactor::TimeRightH(_) => needs.time_mixed = true,
                RandomFactor::CrossSqrtH(a, b) if a != b => needs.cross = true,
                _ => {}
            }
        }
        needs
    }

    pub fn all_terms(&self) -> impl Iterator<Item = &Term> {
        self.stage_defs.iter().flat_map(|s| s.terms.iter()).chain(self.update_terms.iter())
    }

    pub fn count_evals(&self, field: Field) -> usize {
        self.evals.iter().filter(|e| e.field == field).count()
    }

    /// Conventional generated function name, `<prefix>_<stem>_w<m>`.
    pub fn function_name(&self) -> String {
        function_name(&self.table_name, self.kind, self.m)
    }
}

/// `strong_srk1_w2` for `SRK1Wm` at `m = 2`, `scalar_srk1_w1` for `SRK1W1`,
/// `weak_ri1_w3` for `RI1` at `m = 3`. A trailing `Wm`/`W1` is dropped from
/// the table name.
pub fn function_name(table_name: &str, kind: TableKind, m: usize) -> String {
    let prefix = match kind {
        TableKind::ScalarStrong => "scalar",
        TableKind::VectorStrong => "strong",
        TableKind::VectorWeak => "weak",
    };
    let lower = table_name.to_ascii_lowercase();
    let stem = ["wm", "w1"]
        .iter()
        .find_map(|suffix| lower.strip_suffix(suffix).filter(|s| !s.is_empty()))
        .unwrap_or(&lower)
        .trim_end_matches('_');
    format!("{prefix}_{stem}_w{m}")
}

fn mat_coef(block: &'static str, m: &[Vec<Rational>], i: usize, j: usize) -> Option<CoefRef> {
    let v = m[i][j];
    (!v.is_zero()).then(|| CoefRef::new(block, i + 1, Some(j + 1), v))
}

fn vec_coef(block: &'static str, v: &[Rational], i: usize) -> Option<CoefRef> {
    let x = v[i];
    (!x.is_zero()).then(|| CoefRef::new(block, i + 1, None, x))
}

fn column_used(block: &[Vec<Rational>], j: usize) -> bool {
    block.iter().skip(j + 1).any(|row| !row[j].is_zero())
}

struct Builder {
    evals: Vec<EvalPoint>,
    stage_defs: Vec<StageDef>,
    /// Evaluation index per live stage.
    eval_of: std::collections::HashMap<StageSymbol, usize>,
}

impl Builder {
    fn term(&self, coeff: Option<CoefRef>, factor: RandomFactor, source: StageSymbol, column: Option<usize>) -> Option<Term> {
        let coeff = coeff?;
        let eval = *self.eval_of.get(&source).expect("referenced stages are live");
        Some(Term {
            coeff,
            factor,
            eval,
            column,
            source,
        })
    }

    fn define(&mut self, symbol: StageSymbol, terms: Vec<Term>, field: Field, time: Option<CoefRef>) {
        let state = if terms.is_empty() {
            StateRef::Base
        } else {
            StateRef::Stage(symbol)
        };
        let point = EvalPoint { field, state, time };
        let eval = match self.evals.iter().position(|e| e.key() == point.key()) {
            Some(idx) => idx,
            None => {
                self.evals.push(point);
                self.evals.len() - 1
            }
        };
        self.eval_of.insert(symbol, eval);
        self.stage_defs.push(StageDef { symbol, terms, eval });
    }
}

/// Expansion with the default noise-dimension limit.
pub fn expand(table: &CoefficientTable, m: usize) -> Result<StepExpansion> {
    expand_with_limit(table, m, DEFAULT_MAX_NOISE_DIM)
}

pub fn expand_with_limit(table: &CoefficientTable, m: usize, max_m: usize) -> Result<StepExpansion> {
    match table.kind {
        TableKind::ScalarStrong if m != 1 => {
            return Err(Error::Codegen(format!(
                "{} is a scalar-noise table; it expands only for m = 1, not {m}",
                table.name
            )))
        }
        _ if m == 0 || m > max_m => {
            return Err(Error::Codegen(format!(
                "noise dimension {m} outside the generation range 1..={max_m}"
            )))
        }
        _ => {}
    }
    let report = crate::tables::validate(table);
    if let Some(check) = report.checks.iter().find(|c| c.name == "shapes" || c.name == "explicit").filter(|c| !c.passed) {
        return Err(Error::Codegen(format!("{}: {}", table.name, check.detail)));
    }

    let s = table.stages;
    let weak = table.kind == TableKind::VectorWeak;
    let zero = |i| StageSymbol {
        family: StageFamily::Zero,
        stage: i,
    };
    let noise = |k, i| StageSymbol {
        family: StageFamily::Noise(k),
        stage: i,
    };
    let hat = |k, i| StageSymbol {
        family: StageFamily::Hat(k),
        stage: i,
    };

    let need_f: Vec<bool> = (0..s)
        .map(|j| {
            !table.alpha[j].is_zero()
                || column_used(&table.a0, j)
                || column_used(&table.a1, j)
                || column_used(table.a2(), j)
        })
        .collect();
    let need_g: Vec<bool> = (0..s)
        .map(|j| {
            let b34 = table.kind == TableKind::ScalarStrong
                && (!table.beta3()[j].is_zero() || !table.beta4()[j].is_zero());
            !table.beta1[j].is_zero()
                || !table.beta2[j].is_zero()
                || b34
                || column_used(&table.b0, j)
                || column_used(&table.b1, j)
                || (weak && m > 1 && column_used(table.b2(), j))
        })
        .collect();
    let need_gh: Vec<bool> =
        (0..s).map(|j| weak && (!table.beta3()[j].is_zero() || !table.beta4()[j].is_zero())).collect();

    let mut b = Builder {
        evals: Vec::new(),
        stage_defs: Vec::new(),
        eval_of: Default::default(),
    };

    for i in 0..s {
        if need_f[i] {
            let mut terms = Vec::new();
            for j in 0..i {
                terms.extend(b.term(mat_coef("A0", &table.a0, i, j), RandomFactor::H, zero(j), None));
            }
            for j in 0..i {
                match table.kind {
                    TableKind::ScalarStrong => {
                        terms.extend(b.term(mat_coef("B0", &table.b0, i, j), RandomFactor::TimeRightH(0), noise(0, j), Some(0)))
                    }
                    TableKind::VectorStrong => {
                        for l in 0..m {
                            terms.extend(b.term(mat_coef("B0", &table.b0, i, j), RandomFactor::Single(l), noise(l, j), Some(l)));
                        }
                    }
                    TableKind::VectorWeak => {
                        for l in 0..m {
                            terms.extend(b.term(mat_coef("B0", &table.b0, i, j), RandomFactor::IHat(l), noise(l, j), Some(l)));
                        }
                    }
                }
            }
            b.define(zero(i), terms, Field::Drift, vec_coef("c0", &table.c0, i));
        }
        if need_g[i] {
            for k in 0..m {
                let mut terms = Vec::new();
                for j in 0..i {
                    terms.extend(b.term(mat_coef("A1", &table.a1, i, j), RandomFactor::H, zero(j), None));
                }
                for j in 0..i {
                    match table.kind {
                        TableKind::ScalarStrong => {
                            terms.extend(b.term(mat_coef("B1", &table.b1, i, j), RandomFactor::SqrtH, noise(0, j), Some(0)))
                        }
                        TableKind::VectorStrong => {
                            for l in 0..m {
                                let factor = if table.transpose_cross {
                                    RandomFactor::CrossSqrtH(k, l)
                                } else {
                                    RandomFactor::CrossSqrtH(l, k)
                                };
                                terms.extend(b.term(mat_coef("B1", &table.b1, i, j), factor, noise(l, j), Some(l)));
                            }
                        }
                        TableKind::VectorWeak => {
                            terms.extend(b.term(mat_coef("B1", &table.b1, i, j), RandomFactor::SqrtH, noise(k, j), Some(k)))
                        }
                    }
                }
                b.define(noise(k, i), terms, Field::Diffusion, vec_coef("c1", &table.c1, i));
            }
        }
        if need_gh[i] {
            for k in 0..m {
                let mut terms = Vec::new();
                for j in 0..i {
                    terms.extend(b.term(mat_coef("A2", table.a2(), i, j), RandomFactor::H, zero(j), None));
                }
                for j in 0..i {
                    for l in (0..m).filter(|&l| l != k) {
                        terms.extend(b.term(mat_coef("B2", table.b2(), i, j), RandomFactor::IHatPairSqrtH(k, l), noise(l, j), Some(l)));
                    }
                }
                b.define(hat(k, i), terms, Field::Diffusion, vec_coef("c2", table.c2(), i));
            }
        }
    }

    let mut update = Vec::new();
    for i in 0..s {
        update.extend(b.term(vec_coef("a", &table.alpha, i), RandomFactor::H, zero(i), None));
    }
    match table.kind {
        TableKind::ScalarStrong => {
            for i in 0..s {
                let src = noise(0, i);
                update.extend(b.term(vec_coef("b1", &table.beta1, i), RandomFactor::Single(0), src, Some(0)));
                update.extend(b.term(vec_coef("b2", &table.beta2, i), RandomFactor::CrossSqrtH(0, 0), src, Some(0)));
                update.extend(b.term(vec_coef("b3", table.beta3(), i), RandomFactor::TimeRightH(0), src, Some(0)));
                update.extend(b.term(vec_coef("b4", table.beta4(), i), RandomFactor::TripleH(0), src, Some(0)));
            }
        }
        TableKind::VectorStrong => {
            for k in 0..m {
                for i in 0..s {
                    update.extend(b.term(vec_coef("b1", &table.beta1, i), RandomFactor::Single(k), noise(k, i), Some(k)));
                    update.extend(b.term(vec_coef("b2", &table.beta2, i), RandomFactor::SqrtH, noise(k, i), Some(k)));
                }
            }
        }
        TableKind::VectorWeak => {
            for k in 0..m {
                for i in 0..s {
                    update.extend(b.term(vec_coef("b1", &table.beta1, i), RandomFactor::IHat(k), noise(k, i), Some(k)));
                    update.extend(b.term(vec_coef("b2", &table.beta2, i), RandomFactor::IHatPairSqrtH(k, k), noise(k, i), Some(k)));
                }
                for i in 0..s {
                    update.extend(b.term(vec_coef("b3", table.beta3(), i), RandomFactor::IHat(k), hat(k, i), Some(k)));
                    update.extend(b.term(vec_coef("b4", table.beta4(), i), RandomFactor::SqrtH, hat(k, i), Some(k)));
                }
            }
        }
    }

    Ok(StepExpansion {
        table_name: table.name.clone(),
        kind: table.kind,
        m,
        stage_defs: b.stage_defs,
        evals: b.evals,
        update_terms: update,
    })
}

/// Templates for one output language.
#[derive(Debug, Clone)]
pub struct Dialect {
    pub name: String,
    /// File extension of emitted units, without the dot.
    pub extension: String,
    /// File name of the emitted index unit.
    pub index_file: String,
    step_template: String,
    index_template: String,
}

#[derive(Deserialize)]
struct DialectMeta {
    name: String,
    extension: String,
    index_file: String,
}

const BUILTIN_DIALECTS: &[(&str, &str, &str, &str)] = &[
    (
        "rust",
        include_str!("../templates/rust/dialect.json"),
        include_str!("../templates/rust/step.jinja"),
        include_str!("../templates/rust/index.jinja"),
    ),
    (
        "python",
        include_str!("../templates/python/dialect.json"),
        include_str!("../templates/python/step.jinja"),
        include_str!("../templates/python/index.jinja"),
    ),
];

impl Dialect {
    pub fn builtin_names() -> Vec<&'static str> {
        BUILTIN_DIALECTS.iter().map(|d| d.0).collect()
    }

    pub fn builtin(name: &str) -> Result<Self> {
        let (_, meta, step, index) = BUILTIN_DIALECTS
            .iter()
            .find(|d| d.0 == name)
            .ok_or_else(|| Error::UnknownDialect(name.to_string()))?;
        Self::from_parts(meta, step, index)
    }

    /// Loads `dialect.json`, `step.jinja` and `index.jinja` from `dir`.
    pub fn load(dir: &Path) -> Result<Self> {
        let read = |f: &str| {
            let p = dir.join(f);
            std::fs::read_to_string(&p).map_err(|e| Error::io(p, e))
        };
        Self::from_parts(&read("dialect.json")?, &read("step.jinja")?, &read("index.jinja")?)
    }

    /// A built-in name, or else a directory holding a dialect.
    pub fn resolve(name_or_dir: &str) -> Result<Self> {
        match Self::builtin(name_or_dir) {
            Ok(d) => Ok(d),
            Err(e) => {
                let dir = Path::new(name_or_dir);
                if dir.is_dir() {
                    Self::load(dir)
                } else {
                    Err(e)
                }
            }
        }
    }

    fn from_parts(meta: &str, step: &str, index: &str) -> Result<Self> {
        let meta: DialectMeta =
            serde_json::from_str(meta).map_err(|e| Error::Template(format!("dialect.json: {e}")))?;
        let dialect = Self {
            name: meta.name,
            extension: meta.extension,
            index_file: meta.index_file,
            step_template: step.to_string(),
            index_template: index.to_string(),
        };
        dialect.environment()?;
        Ok(dialect)
    }

    fn environment(&self) -> Result<Environment<'static>> {
        let mut env = Environment::new();
        env.set_trim_blocks(true);
        env.set_lstrip_blocks(true);
        env.set_keep_trailing_newline(true);
        env.set_undefined_behavior(UndefinedBehavior::Strict);
        env.add_template_owned("step", self.step_template.clone())
            .map_err(|e| Error::Template(format!("{}/step: {e}", self.name)))?;
        env.add_template_owned("index", self.index_template.clone())
            .map_err(|e| Error::Template(format!("{}/index: {e}", self.name)))?;
        Ok(env)
    }

    fn render<S: Serialize>(&self, template: &str, ctx: &S) -> Result<String> {
        let env = self.environment()?;
        let tmpl = env.get_template(template).map_err(|e| Error::Template(e.to_string()))?;
        tmpl.render(ctx)
            .map_err(|e| Error::Template(format!("{}/{template}: {e:#}", self.name)))
    }
}

#[derive(Serialize)]
struct ConstCtx {
    name: String,
    value: String,
    rational: String,
}

#[derive(Serialize)]
struct FactorCtx {
    name: String,
    kind: &'static str,
    a: usize,
    b: usize,
}

#[derive(Serialize)]
struct TermCtx {
    /// `(CONST * factor)`
    scale: String,
    eval: String,
    column: Option<usize>,
}

#[derive(Serialize)]
struct StatementCtx {
    /// `"stage"` or `"eval"`
    op: &'static str,
    name: String,
    field: &'static str,
    time_const: Option<String>,
    state: String,
    terms: Vec<TermCtx>,
}

#[derive(Serialize)]
struct StepCtx {
    function: String,
    table: String,
    kind: &'static str,
    m: usize,
    noise_type: &'static str,
    noise_arg: &'static str,
    consts: Vec<ConstCtx>,
    uses_sqrt_h: bool,
    factors: Vec<FactorCtx>,
    statements: Vec<StatementCtx>,
    update: Vec<TermCtx>,
    drift_evals: usize,
    diffusion_evals: usize,
}

fn float_literal(r: &Rational) -> String {
    format!("{:?}", r.to_f64())
}

fn eval_name(exp: &StepExpansion, idx: usize) -> String {
    let e = &exp.evals[idx];
    let ordinal = exp.evals[..=idx].iter().filter(|p| p.field == e.field).count();
    match e.field {
        Field::Drift => format!("f_{ordinal}"),
        Field::Diffusion => format!("g_{ordinal}"),
    }
}

fn step_context(exp: &StepExpansion) -> StepCtx {
    let mut consts: Vec<ConstCtx> = Vec::new();
    let mut seen = BTreeSet::new();
    let mut push_const = |c: &CoefRef, consts: &mut Vec<ConstCtx>| {
        let name = c.const_name();
        if seen.insert(name.clone()) {
            consts.push(ConstCtx {
                name,
                value: float_literal(&c.value),
                rational: c.value.to_string(),
            });
        }
    };
    let mut factors: Vec<RandomFactor> = Vec::new();
    let term_ctx = |t: &Term| TermCtx {
        scale: format!("({} * {})", t.coeff.const_name(), t.factor.var_name()),
        eval: eval_name(exp, t.eval),
        column: t.column,
    };

    let mut statements = Vec::new();
    let mut emitted = vec![false; exp.evals.len()];
    for def in &exp.stage_defs {
        for t in &def.terms {
            push_const(&t.coeff, &mut consts);
            if !factors.contains(&t.factor) {
                factors.push(t.factor);
            }
        }
        if !def.is_alias() {
            statements.push(StatementCtx {
                op: "stage",
                name: def.symbol.var_name(),
                field: "",
                time_const: None,
                state: String::new(),
                terms: def.terms.iter().map(term_ctx).collect(),
            });
        }
        if !emitted[def.eval] {
            emitted[def.eval] = true;
            let point = &exp.evals[def.eval];
            if let Some(c) = &point.time {
                push_const(c, &mut consts);
            }
            statements.push(StatementCtx {
                op: "eval",
                name: eval_name(exp, def.eval),
                field: match point.field {
                    Field::Drift => "drift",
                    Field::Diffusion => "diffusion",
                },
                time_const: point.time.as_ref().map(CoefRef::const_name),
                state: match point.state {
                    StateRef::Base => "x".into(),
                    StateRef::Stage(s) => s.var_name(),
                },
                terms: Vec::new(),
            });
        }
    }
    for t in &exp.update_terms {
        push_const(&t.coeff, &mut consts);
        if !factors.contains(&t.factor) {
            factors.push(t.factor);
        }
    }
    let uses_sqrt_h = factors.iter().any(RandomFactor::uses_sqrt_h);
    let factors = factors
        .iter()
        .filter(|f| !matches!(f, RandomFactor::H | RandomFactor::SqrtH))
        .map(|f| {
            let (a, b) = f.indices();
            FactorCtx {
                name: f.var_name(),
                kind: f.kind_name(),
                a,
                b,
            }
        })
        .collect();
    let weak = exp.kind == TableKind::VectorWeak;
    StepCtx {
        function: exp.function_name(),
        table: exp.table_name.clone(),
        kind: exp.kind.as_str(),
        m: exp.m,
        noise_type: if weak { "WeakRandomSet" } else { "ItoIntegralSet" },
        noise_arg: if weak { "w" } else { "ints" },
        consts,
        uses_sqrt_h,
        factors,
        statements,
        update: exp.update_terms.iter().map(term_ctx).collect(),
        drift_evals: exp.count_evals(Field::Drift),
        diffusion_evals: exp.count_evals(Field::Diffusion),
    }
}

/// Source text of one specialised step function.
pub fn emit_stepper_source(exp: &StepExpansion, dialect: &Dialect) -> Result<String> {
    dialect.render("step", &step_context(exp))
}

/// LaTeX listing of the stage equations and the update. Alias stages stay
/// visible here even though emitted code inlines them.
pub fn emit_math(exp: &StepExpansion) -> String {
    let scalar = exp.kind == TableKind::ScalarStrong;
    let alpha = "\\alpha";
    let eval_latex = |t: &Term| {
        let point = &exp.evals[t.eval];
        let time = match &point.time {
            Some(c) => format!("t_n + {} h_n", c.latex()),
            None => "t_n".into(),
        };
        let arg = t.source.latex("\\beta");
        match (point.field, t.column) {
            (Field::Drift, _) => format!("f^{alpha}({time}, {arg})"),
            (Field::Diffusion, _) if scalar => format!("g^{alpha}({time}, {arg})"),
            (Field::Diffusion, col) => format!("G_{{{}}}^{alpha}({time}, {arg})", col.unwrap_or(0) + 1),
        }
    };
    let drift_group = |terms: &[&Term]| {
        let inner: Vec<String> = terms.iter().map(|t| format!("{} {}", t.coeff.latex(), eval_latex(t))).collect();
        format!("h_n \\left[{} \\right]", inner.join(" + "))
    };
    let write_rhs = |out: &mut String, lhs: &str, pieces: Vec<String>, end: &str| {
        let mut lines: Vec<String> = Vec::new();
        let mut current = format!("{lhs} &= x_n^{alpha}");
        let mut on_line = 0;
        for p in pieces {
            if on_line == 2 {
                lines.push(current);
                current = "&\\quad".to_string();
                on_line = 0;
            }
            let _ = write!(current, " + {p}");
            on_line += 1;
        }
        lines.push(format!("{current}{end}"));
        out.push_str(&lines.join(" \\\\\n"));
        out.push_str(if end == "." { "\n" } else { " \\\\\n" });
    };

    let mut out = String::new();
    let _ = writeln!(out, "% {} ({}, m = {})", exp.function_name(), exp.kind, exp.m);
    let mut nonzero: Vec<String> = Vec::new();
    let mut seen = BTreeSet::new();
    let mut note = |c: &CoefRef, nonzero: &mut Vec<String>| {
        if seen.insert((c.block, c.row, c.col)) {
            nonzero.push(format!("{} = {}", c.latex(), c.value));
        }
    };
    for t in exp.all_terms() {
        note(&t.coeff, &mut nonzero);
        if let Some(c) = &exp.evals[t.eval].time {
            note(c, &mut nonzero);
        }
    }
    let _ = writeln!(out, "% nonzero coefficients: {}", nonzero.join(", "));
    out.push_str("\\begin{aligned}\n");

    let mut i = 0;
    let defs = &exp.stage_defs;
    while i < defs.len() {
        if defs[i].is_alias() {
            let stage = defs[i].symbol.stage;
            let mut names = Vec::new();
            while i < defs.len() && defs[i].is_alias() && defs[i].symbol.stage == stage {
                names.push(defs[i].symbol.latex(alpha));
                i += 1;
            }
            let parts: Vec<String> = names.iter().map(|n| format!("{n} = x_n^{alpha}")).collect();
            let first = parts[0].replacen(" = ", " &= ", 1);
            let rest: Vec<String> = std::iter::once(first).chain(parts[1..].iter().cloned()).collect();
            let _ = writeln!(out, "{}, \\\\", rest.join(", "));
            continue;
        }
        let def = &defs[i];
        let drift: Vec<&Term> = def.terms.iter().filter(|t| t.column.is_none()).collect();
        let mut pieces = Vec::new();
        if !drift.is_empty() {
            pieces.push(drift_group(&drift));
        }
        for t in def.terms.iter().filter(|t| t.column.is_some()) {
            pieces.push(format!("{} {} {}", t.coeff.latex(), eval_latex(t), t.factor.latex()));
        }
        write_rhs(&mut out, &def.symbol.latex(alpha), pieces, ",");
        i += 1;
    }

    let drift: Vec<&Term> = exp.update_terms.iter().filter(|t| t.column.is_none()).collect();
    let mut pieces = Vec::new();
    if !drift.is_empty() {
        pieces.push(drift_group(&drift));
    }
    for t in exp.update_terms.iter().filter(|t| t.column.is_some()) {
        pieces.push(format!("{} {} {}", t.coeff.latex(), t.factor.latex(), eval_latex(t)));
    }
    write_rhs(&mut out, &format!("x_{{n+1}}^{alpha}"), pieces, ".");
    out.push_str("\\end{aligned}\n");
    out
}

/// One generated unit in a [`Manifest`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub function: String,
    pub table: String,
    pub kind: String,
    pub m: usize,
    pub dialect: String,
    pub path: String,
    pub sha256: String,
    pub drift_evals: usize,
    pub diffusion_evals: usize,
    pub time_mixed: bool,
    pub cross: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub dialect: String,
    pub index: Option<ManifestIndex>,
    pub functions: Vec<ManifestEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestIndex {
    pub path: String,
    pub sha256: String,
}

pub const MANIFEST_FILE: &str = "manifest.json";

fn sha256_hex(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// Every emitted file of a bundle, by relative path, without touching disk.
pub fn render_bundle(
    tables: &[CoefficientTable],
    m_range: RangeInclusive<usize>,
    max_m: usize,
    dialect: &Dialect,
) -> Result<(Manifest, Vec<(PathBuf, String)>)> {
    let mut names = BTreeSet::new();
    for t in tables {
        if !names.insert(t.name.to_ascii_lowercase()) {
            return Err(Error::Codegen(format!("duplicate table name `{}`", t.name)));
        }
    }
    let mut functions = Vec::new();
    let mut files = Vec::new();
    let mut fn_names = BTreeSet::new();
    for table in tables {
        for m in m_range.clone() {
            if table.kind == TableKind::ScalarStrong && m != 1 {
                continue;
            }
            let exp = expand_with_limit(table, m, max_m)?;
            let function = exp.function_name();
            if !fn_names.insert(function.clone()) {
                return Err(Error::Codegen(format!("two tables both generate `{function}`")));
            }
            let source = emit_stepper_source(&exp, dialect)?;
            let path = format!("{function}.{}", dialect.extension);
            let needs = exp.integral_needs();
            functions.push(ManifestEntry {
                function,
                table: table.name.clone(),
                kind: table.kind.as_str().into(),
                m,
                dialect: dialect.name.clone(),
                sha256: sha256_hex(&source),
                path: path.clone(),
                drift_evals: exp.count_evals(Field::Drift),
                diffusion_evals: exp.count_evals(Field::Diffusion),
                time_mixed: needs.time_mixed,
                cross: needs.cross,
            });
            files.push((PathBuf::from(path), source));
        }
    }
    let index_source = dialect.render("index", &minijinja::context! { functions => &functions, dialect => &dialect.name })?;
    let index = ManifestIndex {
        path: dialect.index_file.clone(),
        sha256: sha256_hex(&index_source),
    };
    files.push((PathBuf::from(&dialect.index_file), index_source));
    let manifest = Manifest {
        dialect: dialect.name.clone(),
        index: Some(index),
        functions,
    };
    let manifest_text = serde_json::to_string_pretty(&manifest).expect("manifest serialises") + "\n";
    files.push((PathBuf::from(MANIFEST_FILE), manifest_text));
    Ok((manifest, files))
}

/// Writes one unit per `(table, m)`, an index unit and `manifest.json` into
/// `out_dir`. Scalar-noise tables are generated for `m = 1` only.
pub fn generate_bundle(
    tables: &[CoefficientTable],
    m_range: RangeInclusive<usize>,
    dialect: &Dialect,
    out_dir: &Path,
) -> Result<Manifest> {
    let max_m = (*m_range.end()).max(DEFAULT_MAX_NOISE_DIM);
    let (manifest, files) = render_bundle(tables, m_range, max_m, dialect)?;
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    for (rel, text) in files {
        let path = out_dir.join(rel);
        std::fs::write(&path, text).map_err(|e| Error::io(path, e))?;
    }
    Ok(manifest)
}
