//! Stochastic Butcher tables with exact rational coefficients.
//!
//! Tables are read from JSON documents whose coefficients are strings such as
//! `"3/4"` or `"-1"`:
//!
//! ```json
//! { "name": "SRK1W1", "description": "...", "stage": 4,
//!   "det_order": "2.0", "stoch_order": "1.5",
//!   "A0": [[...]], "B0": [[...]], "A1": [[...]], "B1": [[...]],
//!   "c0": [...], "c1": [...], "a": [...], "b1": [...], "b2": [...],
//!   "b3": [...], "b4": [...] }
//! ```
//!
//! The kind is inferred from the keys present: `A2`/`B2`/`c2` mark a weak
//! vector method, `b3`/`b4` alone a scalar-noise strong method, and neither a
//! strong vector method. An explicit `"kind"` key overrides inference.

use std::fmt::{self, Write as _};
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Rational64;
use serde_json::{Map, Value};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("missing key `{0}`")]
    MissingKey(&'static str),
    #[error("key `{key}`: malformed fraction `{value}`")]
    MalformedFraction { key: String, value: String },
    #[error("key `{key}`: expected {expected}, found {found}")]
    Shape {
        key: String,
        expected: String,
        found: String,
    },
    #[error("key `{key}`: entry ({row}, {col}) on or above the diagonal is nonzero; only explicit methods are supported")]
    NotExplicit { key: String, row: usize, col: usize },
    #[error("key `{key}` is not used by {kind} tables")]
    UnexpectedKey { key: String, kind: &'static str },
    #[error("invalid method name `{0}`: use letters, digits and underscores only")]
    InvalidName(String),
    #[error("unknown table kind `{0}`")]
    UnknownKind(String),
    #[error("no bundled table named `{0}`")]
    UnknownBundled(String),
}

/// Exact fraction in lowest terms with a positive denominator.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(Rational64);

impl Rational {
    pub const ZERO: Rational = Rational(Rational64::ZERO);
    pub const ONE: Rational = Rational(Rational64::ONE);

    pub fn new(numer: i64, denom: i64) -> Option<Self> {
        if denom == 0 {
            None
        } else {
            Some(Rational(Rational64::new(numer, denom)))
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(Rational64::from_integer(n))
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.numer() == 0
    }

    pub fn is_integer(&self) -> bool {
        self.denom() == 1
    }

    pub fn to_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }

    /// Decimal text rounded (half away from zero) to `digits` significant
    /// digits, clamped to `1..=17`. Trailing fractional zeros are dropped but
    /// one fractional digit is always kept: `1/3 → "0.333"`, `-5 → "-5.0"`.
    pub fn to_decimal(&self, digits: usize) -> String {
        let digits = digits.clamp(1, 17) as i32;
        let negative = self.numer() < 0;
        let num = self.numer().unsigned_abs() as u128;
        let den = self.denom() as u128;
        if num == 0 {
            return "0.0".into();
        }
        // exponent e with 10^e <= num/den < 10^(e+1)
        let mut exp: i32 = 0;
        {
            let (mut n, mut d) = (num, den);
            while n >= d * 10 {
                d *= 10;
                exp += 1;
            }
            while n < d {
                n *= 10;
                exp -= 1;
            }
        }
        let shift = digits - 1 - exp;
        let (n, d) = if shift >= 0 {
            (num * 10u128.pow(shift as u32), den)
        } else {
            (num, den * 10u128.pow((-shift) as u32))
        };
        let (mut q, r) = n.div_rem(&d);
        if 2 * r >= d {
            q += 1;
        }
        if q == 10u128.pow(digits as u32) {
            q /= 10;
            exp += 1;
        }
        let mantissa = q.to_string();
        let (int_part, frac_part) = if exp >= 0 {
            let e = exp as usize;
            if e + 1 >= mantissa.len() {
                (format!("{mantissa}{}", "0".repeat(e + 1 - mantissa.len())), String::new())
            } else {
                (mantissa[..=e].to_string(), mantissa[e + 1..].to_string())
            }
        } else {
            ("0".to_string(), format!("{}{mantissa}", "0".repeat((-exp - 1) as usize)))
        };
        let frac = frac_part.trim_end_matches('0');
        let frac = if frac.is_empty() { "0" } else { frac };
        format!("{}{int_part}.{frac}", if negative { "-" } else { "" })
    }

    /// Nearest float to the decimal rounding at `digits` significant digits.
    pub fn to_f64_with_precision(&self, digits: usize) -> f64 {
        self.to_decimal(digits)
            .parse()
            .expect("decimal rendering is valid float syntax")
    }

    /// `\frac{n}{d}` or an integer.
    pub fn to_latex(&self) -> String {
        if self.is_integer() {
            self.numer().to_string()
        } else {
            let sign = if self.numer() < 0 { "-" } else { "" };
            format!("{sign}\\frac{{{}}}{{{}}}", self.numer().unsigned_abs(), self.denom())
        }
    }

    /// Rendering used for orders: `"2.0"`, `"1.5"`, falling back to `"a/b"`
    /// when the decimal expansion does not terminate.
    pub fn to_order_string(&self) -> String {
        let mut d = self.denom();
        while d % 2 == 0 {
            d /= 2;
        }
        while d % 5 == 0 {
            d /= 5;
        }
        if d == 1 {
            self.to_decimal(17)
        } else {
            self.to_string()
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParseRationalError;

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("malformed fraction")
    }
}

impl std::error::Error for ParseRationalError {}

impl FromStr for Rational {
    type Err = ParseRationalError;

    /// Accepts `"n"`, `"n/d"` and terminating decimals such as `"1.5"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n: i64 = n.trim().parse().map_err(|_| ParseRationalError)?;
            let d: i64 = d.trim().parse().map_err(|_| ParseRationalError)?;
            return Rational::new(n, d).ok_or(ParseRationalError);
        }
        if let Some((int, frac)) = s.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) || frac.len() > 17 {
                return Err(ParseRationalError);
            }
            let negative = int.starts_with('-');
            let int_val: i64 = match int.trim_start_matches(['-', '+']) {
                "" => 0,
                digits => digits.parse().map_err(|_| ParseRationalError)?,
            };
            let scale = 10i64.checked_pow(frac.len() as u32).ok_or(ParseRationalError)?;
            let frac_val: i64 = frac.parse().map_err(|_| ParseRationalError)?;
            let magnitude = int_val
                .checked_mul(scale)
                .and_then(|v| v.checked_add(frac_val))
                .ok_or(ParseRationalError)?;
            let numer = if negative { -magnitude } else { magnitude };
            return Rational::new(numer, scale).ok_or(ParseRationalError);
        }
        let n: i64 = s.parse().map_err(|_| ParseRationalError)?;
        Ok(Rational::from_integer(n))
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        Rational(self.0 + rhs.0)
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        Rational(self.0 - rhs.0)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        Rational(self.0 * rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::ZERO, |a, b| a + b)
    }
}

pub type RMatrix = Vec<Vec<Rational>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TableKind {
    ScalarStrong,
    VectorStrong,
    VectorWeak,
}

impl TableKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            TableKind::ScalarStrong => "scalar_strong",
            TableKind::VectorStrong => "vector_strong",
            TableKind::VectorWeak => "vector_weak",
        }
    }
}

impl fmt::Display for TableKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TableKind {
    type Err = TableError;
    fn from_str(s: &str) -> Result<Self, TableError> {
        match s {
            "scalar_strong" => Ok(TableKind::ScalarStrong),
            "vector_strong" => Ok(TableKind::VectorStrong),
            "vector_weak" => Ok(TableKind::VectorWeak),
            other => Err(TableError::UnknownKind(other.to_string())),
        }
    }
}

/// A stochastic Butcher tableau.
///
/// `a0..a2` couple stages to drift evaluations, `b0..b2` to diffusion
/// evaluations; `alpha` are the drift weights of the update (`a` in the file
/// format) and `beta1..beta4` its stochastic weights (`b1..b4`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientTable {
    pub name: String,
    pub description: String,
    pub comment: Option<String>,
    pub kind: TableKind,
    pub stages: usize,
    pub det_order: Rational,
    pub stoch_order: Rational,
    /// Read the cross integrals of the strong vector stages as `I^{kl}`
    /// instead of `I^{lk}`.
    pub transpose_cross: bool,
    pub a0: RMatrix,
    pub a1: RMatrix,
    pub a2: Option<RMatrix>,
    pub b0: RMatrix,
    pub b1: RMatrix,
    pub b2: Option<RMatrix>,
    pub c0: Vec<Rational>,
    pub c1: Vec<Rational>,
    pub c2: Option<Vec<Rational>>,
    pub alpha: Vec<Rational>,
    pub beta1: Vec<Rational>,
    pub beta2: Vec<Rational>,
    pub beta3: Option<Vec<Rational>>,
    pub beta4: Option<Vec<Rational>>,
}

const ZERO_SLICE: &[Rational] = &[];

impl CoefficientTable {
    /// A table of the given kind with every coefficient zero.
    pub fn zeros(name: &str, kind: TableKind, stages: usize) -> Self {
        let mat = || vec![vec![Rational::ZERO; stages]; stages];
        let vec = || vec![Rational::ZERO; stages];
        let weak = kind == TableKind::VectorWeak;
        let with_b34 = kind != TableKind::VectorStrong;
        Self {
            name: name.to_string(),
            description: String::new(),
            comment: None,
            kind,
            stages,
            det_order: Rational::ONE,
            stoch_order: Rational::ONE,
            transpose_cross: false,
            a0: mat(),
            a1: mat(),
            a2: weak.then(mat),
            b0: mat(),
            b1: mat(),
            b2: weak.then(mat),
            c0: vec(),
            c1: vec(),
            c2: weak.then(vec),
            alpha: vec(),
            beta1: vec(),
            beta2: vec(),
            beta3: with_b34.then(vec),
            beta4: with_b34.then(vec),
        }
    }

    pub fn a2(&self) -> &[Vec<Rational>] {
        self.a2.as_deref().unwrap_or(&[])
    }

    pub fn b2(&self) -> &[Vec<Rational>] {
        self.b2.as_deref().unwrap_or(&[])
    }

    pub fn c2(&self) -> &[Rational] {
        self.c2.as_deref().unwrap_or(ZERO_SLICE)
    }

    pub fn beta3(&self) -> &[Rational] {
        self.beta3.as_deref().unwrap_or(ZERO_SLICE)
    }

    pub fn beta4(&self) -> &[Rational] {
        self.beta4.as_deref().unwrap_or(ZERO_SLICE)
    }

    /// Every matrix block with its file-format key.
    pub fn matrices(&self) -> Vec<(&'static str, &RMatrix)> {
        let mut out = vec![("A0", &self.a0), ("B0", &self.b0), ("A1", &self.a1), ("B1", &self.b1)];
        if let Some(m) = &self.a2 {
            out.push(("A2", m));
        }
        if let Some(m) = &self.b2 {
            out.push(("B2", m));
        }
        out
    }

    /// Every vector block with its file-format key.
    pub fn vectors(&self) -> Vec<(&'static str, &Vec<Rational>)> {
        let mut out = vec![("c0", &self.c0), ("c1", &self.c1)];
        if let Some(v) = &self.c2 {
            out.push(("c2", v));
        }
        out.extend([("a", &self.alpha), ("b1", &self.beta1), ("b2", &self.beta2)]);
        if let Some(v) = &self.beta3 {
            out.push(("b3", v));
        }
        if let Some(v) = &self.beta4 {
            out.push(("b4", v));
        }
        out
    }

    /// Serialises to the JSON file format, one matrix row per line.
    pub fn to_json(&self) -> String {
        let quote = |s: &str| serde_json::to_string(s).expect("strings serialise");
        let row = |v: &[Rational]| {
            let cells: Vec<String> = v.iter().map(|r| quote(&r.to_string())).collect();
            format!("[{}]", cells.join(", "))
        };
        let mut out = String::from("{\n");
        let _ = writeln!(out, "  \"name\": {},", quote(&self.name));
        let _ = writeln!(out, "  \"description\": {},", quote(&self.description));
        if let Some(c) = &self.comment {
            let _ = writeln!(out, "  \"comment\": {},", quote(c));
        }
        if self.transpose_cross {
            out.push_str("  \"transpose_cross\": true,\n");
        }
        let _ = writeln!(out, "  \"stage\": {},", self.stages);
        let _ = writeln!(out, "  \"det_order\": {},", quote(&self.det_order.to_order_string()));
        let _ = writeln!(out, "  \"stoch_order\": {},", quote(&self.stoch_order.to_order_string()));
        let mut entries: Vec<String> = Vec::new();
        for (key, m) in self.matrices() {
            let rows: Vec<String> = m.iter().map(|r| format!("    {}", row(r))).collect();
            entries.push(format!("  \"{key}\": [\n{}\n  ]", rows.join(",\n")));
        }
        for (key, v) in self.vectors() {
            entries.push(format!("  \"{key}\": {}", row(v)));
        }
        out.push_str(&entries.join(",\n"));
        out.push_str("\n}\n");
        out
    }

    /// Tableau in LaTeX `array` markup:
    ///
    /// ```text
    /// c0 | A0 | B0 |
    /// c1 | A1 | B1 |
    /// c2 | A2 | B2 |      (weak only)
    ///    | a  | b1 | b2
    ///    |    | b3 | b4   (when present)
    /// ```
    pub fn render_math(&self) -> String {
        let s = self.stages;
        let cols = format!("c|{}|{}|{}", "c".repeat(s), "c".repeat(s), "c".repeat(s));
        let mut out = String::new();
        let _ = writeln!(out, "% {} ({}, s = {}, p_d = {}, p_s = {})", self.name, self.kind, s, self.det_order.to_order_string(), self.stoch_order.to_order_string());
        let _ = writeln!(out, "\\begin{{array}}{{{cols}}}");
        let blank = vec![String::new(); s];
        let cells = |v: &[Rational]| v.iter().map(Rational::to_latex).collect::<Vec<_>>();
        let line = |lead: String, blocks: [Vec<String>; 3]| {
            let mut parts = vec![lead];
            for b in blocks {
                parts.extend(b);
            }
            format!("  {} \\\\\n", parts.join(" & "))
        };
        let mut families: Vec<(&[Rational], &RMatrix, &RMatrix)> = vec![(&self.c0, &self.a0, &self.b0), (&self.c1, &self.a1, &self.b1)];
        if let (Some(c2), Some(a2), Some(b2)) = (&self.c2, &self.a2, &self.b2) {
            families.push((c2, a2, b2));
        }
        for (c, a, b) in families {
            for i in 0..s {
                out.push_str(&line(c[i].to_latex(), [cells(&a[i]), cells(&b[i]), blank.clone()]));
            }
            out.push_str("  \\hline\n");
        }
        out.push_str(&line(String::new(), [cells(&self.alpha), cells(&self.beta1), cells(&self.beta2)]));
        if let (Some(b3), Some(b4)) = (&self.beta3, &self.beta4) {
            out.push_str(&line(String::new(), [blank.clone(), cells(b3), cells(b4)]));
        }
        out.push_str("\\end{array}\n");
        out
    }
}

fn get<'a>(obj: &'a Map<String, Value>, key: &'static str) -> Result<&'a Value, TableError> {
    obj.get(key).ok_or(TableError::MissingKey(key))
}

fn parse_scalar(key: &str, v: &Value) -> Result<Rational, TableError> {
    let malformed = || TableError::MalformedFraction {
        key: key.to_string(),
        value: v.to_string(),
    };
    match v {
        Value::String(s) => s.parse().map_err(|_| malformed()),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Rational::from_integer(i)),
            None => n.to_string().parse().map_err(|_| malformed()),
        },
        _ => Err(malformed()),
    }
}

fn parse_vector(key: &str, v: &Value, s: usize) -> Result<Vec<Rational>, TableError> {
    let arr = v.as_array().ok_or_else(|| TableError::Shape {
        key: key.to_string(),
        expected: format!("array of {s} entries"),
        found: kind_name(v).into(),
    })?;
    if arr.len() != s {
        return Err(TableError::Shape {
            key: key.to_string(),
            expected: format!("{s} entries"),
            found: format!("{} entries", arr.len()),
        });
    }
    arr.iter().map(|x| parse_scalar(key, x)).collect()
}

fn parse_matrix(key: &str, v: &Value, s: usize) -> Result<RMatrix, TableError> {
    let rows = v.as_array().ok_or_else(|| TableError::Shape {
        key: key.to_string(),
        expected: format!("{s}x{s} matrix"),
        found: kind_name(v).into(),
    })?;
    if rows.len() != s {
        return Err(TableError::Shape {
            key: key.to_string(),
            expected: format!("{s} rows"),
            found: format!("{} rows", rows.len()),
        });
    }
    rows.iter()
        .enumerate()
        .map(|(i, r)| parse_vector(&format!("{key}[{i}]"), r, s))
        .collect()
}

fn kind_name(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "boolean",
        Value::Number(_) => "number",
        Value::String(_) => "string",
        Value::Array(_) => "array",
        Value::Object(_) => "object",
    }
}

fn check_explicit(key: &str, m: &RMatrix) -> Result<(), TableError> {
    for (i, row) in m.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if j >= i && !x.is_zero() {
                return Err(TableError::NotExplicit {
                    key: key.to_string(),
                    row: i + 1,
                    col: j + 1,
                });
            }
        }
    }
    Ok(())
}

/// Parses a coefficient document.
pub fn parse_table(document: &str) -> Result<CoefficientTable, TableError> {
    let value: Value = serde_json::from_str(document).map_err(|e| TableError::Json(e.to_string()))?;
    let obj = value
        .as_object()
        .ok_or_else(|| TableError::Json("top level must be an object".into()))?;

    let name = get(obj, "name")?
        .as_str()
        .ok_or_else(|| TableError::InvalidName("<non-string>".into()))?
        .to_string();
    if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Err(TableError::InvalidName(name));
    }
    let description = obj.get("description").and_then(Value::as_str).unwrap_or_default().to_string();
    let comment = obj.get("comment").and_then(Value::as_str).map(str::to_string);
    let transpose_cross = obj.get("transpose_cross").and_then(Value::as_bool).unwrap_or(false);

    let stage_value = get(obj, "stage")?;
    let stages = stage_value
        .as_u64()
        .filter(|&s| s >= 1)
        .ok_or_else(|| TableError::Shape {
            key: "stage".into(),
            expected: "positive integer".into(),
            found: stage_value.to_string(),
        })? as usize;
    let det_order = parse_scalar("det_order", get(obj, "det_order")?)?;
    let stoch_order = parse_scalar("stoch_order", get(obj, "stoch_order")?)?;

    let has = |k: &str| obj.contains_key(k);
    let kind = match obj.get("kind") {
        Some(v) => v
            .as_str()
            .ok_or_else(|| TableError::UnknownKind(v.to_string()))?
            .parse()?,
        None if has("A2") || has("B2") || has("c2") => TableKind::VectorWeak,
        None if has("b3") || has("b4") => TableKind::ScalarStrong,
        None => TableKind::VectorStrong,
    };
    let weak_keys = ["A2", "B2", "c2"];
    let unexpected: &[&str] = match kind {
        TableKind::VectorWeak => &[],
        TableKind::ScalarStrong => &weak_keys,
        TableKind::VectorStrong => &["A2", "B2", "c2", "b3", "b4"],
    };
    if let Some(k) = unexpected.iter().find(|k| has(k)) {
        return Err(TableError::UnexpectedKey {
            key: k.to_string(),
            kind: kind.as_str(),
        });
    }

    let matrix = |key: &'static str| -> Result<RMatrix, TableError> {
        let m = parse_matrix(key, get(obj, key)?, stages)?;
        check_explicit(key, &m)?;
        Ok(m)
    };
    let vector = |key: &'static str| parse_vector(key, get(obj, key)?, stages);
    let weak = kind == TableKind::VectorWeak;
    let with_b34 = kind != TableKind::VectorStrong;

    Ok(CoefficientTable {
        name,
        description,
        comment,
        kind,
        stages,
        det_order,
        stoch_order,
        transpose_cross,
        a0: matrix("A0")?,
        b0: matrix("B0")?,
        a1: matrix("A1")?,
        b1: matrix("B1")?,
        a2: weak.then(|| matrix("A2")).transpose()?,
        b2: weak.then(|| matrix("B2")).transpose()?,
        c0: vector("c0")?,
        c1: vector("c1")?,
        c2: weak.then(|| vector("c2")).transpose()?,
        alpha: vector("a")?,
        beta1: vector("b1")?,
        beta2: vector("b2")?,
        beta3: with_b34.then(|| vector("b3")).transpose()?,
        beta4: with_b34.then(|| vector("b4")).transpose()?,
    })
}

/// One line of a [`ValidationReport`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub mandatory: bool,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub table: String,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    /// True when every mandatory check passed; advisory checks are ignored.
    pub fn passed(&self) -> bool {
        self.checks.iter().filter(|c| c.mandatory).all(|c| c.passed)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "table {}", self.table)?;
        for c in &self.checks {
            let status = match (c.passed, c.mandatory) {
                (true, _) => "ok",
                (false, true) => "FAIL",
                (false, false) => "warn",
            };
            let level = if c.mandatory { "mandatory" } else { "advisory" };
            writeln!(f, "  [{status:>4}] {:<14} ({level}) {}", c.name, c.detail)?;
        }
        write!(f, "result: {}", if self.passed() { "valid" } else { "INVALID" })
    }
}

/// Mandatory: block shapes, explicitness, `Σa = 1`, `Σb1 = 1`.
/// Advisory: `Σb2 = 0`, and `Σb3 = 0`, `Σb4 = 0` when present.
pub fn validate(table: &CoefficientTable) -> ValidationReport {
    let s = table.stages;
    let mut checks = Vec::new();

    let mut shape_problems = Vec::new();
    for (key, m) in table.matrices() {
        if m.len() != s || m.iter().any(|r| r.len() != s) {
            shape_problems.push(format!("{key} is not {s}x{s}"));
        }
    }
    for (key, v) in table.vectors() {
        if v.len() != s {
            shape_problems.push(format!("{key} has {} entries, expected {s}", v.len()));
        }
    }
    let needs_weak = table.kind == TableKind::VectorWeak;
    let needs_b34 = table.kind != TableKind::VectorStrong;
    if needs_weak != (table.a2.is_some() && table.b2.is_some() && table.c2.is_some()) {
        shape_problems.push(format!("A2/B2/c2 presence does not match kind {}", table.kind));
    }
    if needs_b34 != (table.beta3.is_some() && table.beta4.is_some()) {
        shape_problems.push(format!("b3/b4 presence does not match kind {}", table.kind));
    }
    checks.push(Check {
        name: "shapes".into(),
        mandatory: true,
        passed: shape_problems.is_empty(),
        detail: if shape_problems.is_empty() {
            format!("all blocks {s}-stage")
        } else {
            shape_problems.join("; ")
        },
    });

    let mut upper = Vec::new();
    for (key, m) in table.matrices() {
        for (i, row) in m.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if j >= i && !x.is_zero() {
                    upper.push(format!("{key}[{},{}] = {x}", i + 1, j + 1));
                }
            }
        }
    }
    checks.push(Check {
        name: "explicit".into(),
        mandatory: true,
        passed: upper.is_empty(),
        detail: if upper.is_empty() {
            "all A/B blocks strictly lower triangular".into()
        } else {
            upper.join(", ")
        },
    });

    let mut sum_check = |name: &str, key: &str, v: &[Rational], target: Rational, mandatory: bool| {
        let sum: Rational = v.iter().copied().sum();
        checks.push(Check {
            name: name.into(),
            mandatory,
            passed: sum == target,
            detail: format!("sum({key}) = {sum}, expected {target}"),
        });
    };
    sum_check("sum_a", "a", &table.alpha, Rational::ONE, true);
    sum_check("sum_b1", "b1", &table.beta1, Rational::ONE, true);
    sum_check("sum_b2", "b2", &table.beta2, Rational::ZERO, false);
    if let Some(b3) = &table.beta3 {
        sum_check("sum_b3", "b3", b3, Rational::ZERO, false);
    }
    if let Some(b4) = &table.beta4 {
        sum_check("sum_b4", "b4", b4, Rational::ZERO, false);
    }

    ValidationReport {
        table: table.name.clone(),
        checks,
    }
}

/// A table with every coefficient converted to `f64`.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatTable {
    pub name: String,
    pub kind: TableKind,
    pub stages: usize,
    pub a0: Vec<Vec<f64>>,
    pub a1: Vec<Vec<f64>>,
    pub a2: Vec<Vec<f64>>,
    pub b0: Vec<Vec<f64>>,
    pub b1: Vec<Vec<f64>>,
    pub b2: Vec<Vec<f64>>,
    pub c0: Vec<f64>,
    pub c1: Vec<f64>,
    pub c2: Vec<f64>,
    pub alpha: Vec<f64>,
    pub beta1: Vec<f64>,
    pub beta2: Vec<f64>,
    pub beta3: Vec<f64>,
    pub beta4: Vec<f64>,
    pub transpose_cross: bool,
}

/// Converts every coefficient to the nearest float of its decimal rounding at
/// `precision` significant digits. Blocks the kind lacks become zeros.
pub fn to_float(table: &CoefficientTable, precision: usize) -> FloatTable {
    let s = table.stages;
    let v = |x: &[Rational]| -> Vec<f64> {
        if x.is_empty() {
            vec![0.0; s]
        } else {
            x.iter().map(|r| r.to_f64_with_precision(precision)).collect()
        }
    };
    let m = |x: &[Vec<Rational>]| -> Vec<Vec<f64>> {
        if x.is_empty() {
            vec![vec![0.0; s]; s]
        } else {
            x.iter().map(|r| v(r)).collect()
        }
    };
    FloatTable {
        name: table.name.clone(),
        kind: table.kind,
        stages: s,
        a0: m(&table.a0),
        a1: m(&table.a1),
        a2: m(table.a2()),
        b0: m(&table.b0),
        b1: m(&table.b1),
        b2: m(table.b2()),
        c0: v(&table.c0),
        c1: v(&table.c1),
        c2: v(table.c2()),
        alpha: v(&table.alpha),
        beta1: v(&table.beta1),
        beta2: v(&table.beta2),
        beta3: v(table.beta3()),
        beta4: v(table.beta4()),
        transpose_cross: table.transpose_cross,
    }
}

/// Deterministic LaTeX tableau.
pub fn render_table_math(table: &CoefficientTable) -> String {
    table.render_math()
}

const BUNDLED_SOURCES: &[(&str, &str)] = &[
    ("SRK1W1", include_str!("../tables/SRK1W1.json")),
    ("SRK2W1", include_str!("../tables/SRK2W1.json")),
    ("K1P1", include_str!("../tables/K1P1.json")),
    ("SRK1Wm", include_str!("../tables/SRK1Wm.json")),
    ("SRK2Wm", include_str!("../tables/SRK2Wm.json")),
    ("RI1", include_str!("../tables/RI1.json")),
];

/// Names of the tables shipped with the crate.
pub fn bundled_names() -> Vec<&'static str> {
    BUNDLED_SOURCES.iter().map(|(n, _)| *n).collect()
}

/// Every bundled table, in a fixed order.
pub fn bundled() -> Vec<CoefficientTable> {
    BUNDLED_SOURCES
        .iter()
        .map(|(_, src)| parse_table(src).expect("bundled tables parse"))
        .collect()
}

/// Bundled table by name, case-insensitively.
pub fn bundled_table(name: &str) -> Result<CoefficientTable, TableError> {
    BUNDLED_SOURCES
        .iter()
        .find(|(n, _)| n.eq_ignore_ascii_case(name))
        .map(|(_, src)| parse_table(src).expect("bundled tables parse"))
        .ok_or_else(|| TableError::UnknownBundled(name.to_string()))
}

/// Raw JSON source of a bundled table.
pub fn bundled_source(name: &str) -> Option<&'static str> {
    BUNDLED_SOURCES
        .iter()
        .find(|(n, _)| n.eq_ignore_ascii_case(name))
        .map(|(_, src)| *src)
}
