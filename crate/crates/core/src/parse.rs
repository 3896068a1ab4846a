//! Line-oriented text format for structure equations and named forms.
//!
//! ```text
//! # comment
//! name etabeta5
//! dimension 5
//! scalars sqrt 6          # optional; permits sqrt(6) in scalar expressions
//! param a = 1/2 + i
//! d phi5 = -phi[1,3] - phi[2,4]
//! form Omega (3,3) = sigma(3) * (phi[1,2,3;1,2,3] + ...)
//! vform theta1 bar1 = a
//! curve linear
//! ```
//!
//! Monomials are written `phi[i1,...;j1,...]`: holomorphic indices before the
//! semicolon, antiholomorphic after. `phi[1,3]` is holomorphic, `phi[;2]`
//! purely antiholomorphic. Scalar atoms: integers, `i`, `sqrt(D)`,
//! `sigma(p)`, `conj(x)`, and parameter names. `*` multiplies scalars and
//! wedges forms; `/` divides by scalars only.

use crate::form::InvariantForm;
use crate::scalar::{is_valid_radicand, rat, sigma, Scalar};
use crate::structure::StructureEquations;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, col {}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for ParseError {}

/// Result of parsing a whole file.
pub struct StructureFile {
    pub structure: StructureEquations,
    pub forms: BTreeMap<String, InvariantForm>,
    /// `vform[lambda-1][mu-1]` is the coefficient of `phibar^mu (x) theta_lambda`
    /// in the file's (0,1)-vector form, if any `vform` lines were present.
    pub vform: Option<Vec<Vec<Scalar>>>,
    pub curve_linear: bool,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Plus,
    Minus,
    Star,
    Slash,
    Eq,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    col: usize,
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> ParseError {
    ParseError {
        line,
        col,
        msg: msg.into(),
    }
}

fn tokenize(line_no: usize, text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            '#' => break,
            c if c.is_whitespace() => {
                i += 1;
            }
            '(' => {
                out.push(Spanned { tok: Tok::LParen, col });
                i += 1;
            }
            ')' => {
                out.push(Spanned { tok: Tok::RParen, col });
                i += 1;
            }
            '[' => {
                out.push(Spanned { tok: Tok::LBracket, col });
                i += 1;
            }
            ']' => {
                out.push(Spanned { tok: Tok::RBracket, col });
                i += 1;
            }
            ',' => {
                out.push(Spanned { tok: Tok::Comma, col });
                i += 1;
            }
            ';' => {
                out.push(Spanned { tok: Tok::Semi, col });
                i += 1;
            }
            '+' => {
                out.push(Spanned { tok: Tok::Plus, col });
                i += 1;
            }
            '-' => {
                out.push(Spanned { tok: Tok::Minus, col });
                i += 1;
            }
            '*' => {
                out.push(Spanned { tok: Tok::Star, col });
                i += 1;
            }
            '/' => {
                out.push(Spanned { tok: Tok::Slash, col });
                i += 1;
            }
            '=' => {
                out.push(Spanned { tok: Tok::Eq, col });
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let v: i64 = s
                    .parse()
                    .map_err(|_| err(line_no, col, format!("integer too large: {s}")))?;
                out.push(Spanned { tok: Tok::Int(v), col });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Spanned { tok: Tok::Ident(s), col });
            }
            other => return Err(err(line_no, col, format!("unexpected character '{other}'"))),
        }
    }
    Ok(out)
}

/// Either a scalar constant or a form; scalars coerce to (0,0)-forms when
/// mixed with forms in sums and products.
#[derive(Clone)]
enum Value {
    Num(Scalar),
    Form(InvariantForm),
}

struct ExprParser<'a> {
    toks: &'a [Spanned],
    pos: usize,
    line: usize,
    n: u8,
    radicand: u64,
    params: &'a BTreeMap<String, Scalar>,
    forms: &'a BTreeMap<String, InvariantForm>,
}

impl<'a> ExprParser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn col(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|s| s.col)
            .unwrap_or_else(|| self.toks.last().map(|s| s.col + 1).unwrap_or(1))
    }

    fn bump(&mut self) -> Option<&Spanned> {
        let t = self.toks.get(self.pos);
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: &Tok, what: &str) -> Result<(), ParseError> {
        let col = self.col();
        match self.bump() {
            Some(s) if &s.tok == want => Ok(()),
            _ => Err(err(self.line, col, format!("expected {what}"))),
        }
    }

    fn fail<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(err(self.line, self.col(), msg))
    }

    fn parse_expr(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.parse_term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let rhs = self.parse_term()?;
                    acc = self.add(acc, rhs)?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let rhs = self.parse_term()?;
                    acc = self.add(acc, self.negate(rhs))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_term(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.parse_factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    let rhs = self.parse_factor()?;
                    acc = self.mul(acc, rhs)?;
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let col = self.col();
                    let rhs = self.parse_factor()?;
                    let d = match rhs {
                        Value::Num(s) => s,
                        Value::Form(_) => {
                            return Err(err(self.line, col, "can only divide by a scalar"))
                        }
                    };
                    if d.is_zero() {
                        return Err(err(self.line, col, "division by zero"));
                    }
                    acc = match acc {
                        Value::Num(s) => Value::Num(&s / &d),
                        Value::Form(f) => Value::Form(f.scale(&d.inv())),
                    };
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_factor(&mut self) -> Result<Value, ParseError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                let v = self.parse_factor()?;
                Ok(self.negate(v))
            }
            _ => self.parse_atom(),
        }
    }

    fn parse_atom(&mut self) -> Result<Value, ParseError> {
        let col = self.col();
        let Some(s) = self.bump() else {
            return Err(err(self.line, col, "unexpected end of expression"));
        };
        match s.tok.clone() {
            Tok::Int(v) => Ok(Value::Num(Scalar::from_int(v))),
            Tok::LParen => {
                let v = self.parse_expr()?;
                self.expect(&Tok::RParen, "')'")?;
                Ok(v)
            }
            Tok::Ident(name) => match name.as_str() {
                "i" => Ok(Value::Num(Scalar::i())),
                "phi" => self.parse_monomial(col),
                "sqrt" => {
                    self.expect(&Tok::LParen, "'(' after sqrt")?;
                    let dcol = self.col();
                    let Some(Spanned { tok: Tok::Int(d), .. }) = self.bump().cloned() else {
                        return Err(err(self.line, dcol, "expected integer radicand"));
                    };
                    self.expect(&Tok::RParen, "')'")?;
                    let d = d as u64;
                    if !is_valid_radicand(d) {
                        return Err(err(self.line, dcol, format!("invalid radicand {d}")));
                    }
                    if self.radicand != 0 && d != 0 && d != self.radicand {
                        return Err(err(
                            self.line,
                            dcol,
                            format!("radicand {d} conflicts with declared sqrt {}", self.radicand),
                        ));
                    }
                    if self.radicand == 0 && d != 0 {
                        return Err(err(
                            self.line,
                            dcol,
                            format!("sqrt({d}) used without a 'scalars sqrt {d}' declaration"),
                        ));
                    }
                    Ok(Value::Num(Scalar::sqrt(d)))
                }
                "sigma" => {
                    self.expect(&Tok::LParen, "'(' after sigma")?;
                    let pcol = self.col();
                    let Some(Spanned { tok: Tok::Int(p), .. }) = self.bump().cloned() else {
                        return Err(err(self.line, pcol, "expected integer degree"));
                    };
                    self.expect(&Tok::RParen, "')'")?;
                    if !(0..=32).contains(&p) {
                        return Err(err(self.line, pcol, "sigma degree out of range"));
                    }
                    Ok(Value::Num(sigma(p as u32)))
                }
                "conj" => {
                    self.expect(&Tok::LParen, "'(' after conj")?;
                    let v = self.parse_expr()?;
                    self.expect(&Tok::RParen, "')'")?;
                    Ok(match v {
                        Value::Num(s) => Value::Num(s.conj()),
                        Value::Form(f) => Value::Form(f.conjugate()),
                    })
                }
                other => {
                    if let Some(p) = self.params.get(other) {
                        Ok(Value::Num(p.clone()))
                    } else if let Some(f) = self.forms.get(other) {
                        Ok(Value::Form(f.clone()))
                    } else {
                        Err(err(self.line, col, format!("unknown name '{other}'")))
                    }
                }
            },
            _ => Err(err(self.line, col, "expected a value")),
        }
    }

    fn parse_monomial(&mut self, col: usize) -> Result<Value, ParseError> {
        self.expect(&Tok::LBracket, "'[' after phi")?;
        let mut hol = Vec::new();
        let mut anti = Vec::new();
        let mut in_anti = false;
        loop {
            match self.peek() {
                Some(Tok::RBracket) => {
                    self.bump();
                    break;
                }
                Some(Tok::Semi) => {
                    if in_anti {
                        return self.fail("second ';' in monomial");
                    }
                    in_anti = true;
                    self.bump();
                }
                Some(Tok::Int(v)) => {
                    let v = *v;
                    let icol = self.col();
                    self.bump();
                    if v < 1 || v > self.n as i64 {
                        return Err(err(
                            self.line,
                            icol,
                            format!("index {v} out of range 1..={}", self.n),
                        ));
                    }
                    if in_anti {
                        anti.push(v as u8);
                    } else {
                        hol.push(v as u8);
                    }
                    if let Some(Tok::Comma) = self.peek() {
                        self.bump();
                    }
                }
                _ => return self.fail("expected index, ';' or ']'"),
            }
        }
        match InvariantForm::monomial(self.n, &hol, &anti, Scalar::one()) {
            Ok(f) => Ok(Value::Form(f)),
            Err(e) => Err(err(self.line, col, e.to_string())),
        }
    }

    fn as_form(&self, v: Value) -> InvariantForm {
        match v {
            Value::Num(s) => InvariantForm::constant(self.n, s),
            Value::Form(f) => f,
        }
    }

    fn negate(&self, v: Value) -> Value {
        match v {
            Value::Num(s) => Value::Num(-&s),
            Value::Form(f) => Value::Form(f.neg()),
        }
    }

    fn add(&self, a: Value, b: Value) -> Result<Value, ParseError> {
        match (a, b) {
            (Value::Num(x), Value::Num(y)) => Ok(Value::Num(&x + &y)),
            (a, b) => {
                let fa = self.as_form(a);
                let fb = self.as_form(b);
                fa.add(&fb)
                    .map(Value::Form)
                    .map_err(|e| err(self.line, self.col(), e.to_string()))
            }
        }
    }

    fn mul(&self, a: Value, b: Value) -> Result<Value, ParseError> {
        match (a, b) {
            (Value::Num(x), Value::Num(y)) => Ok(Value::Num(&x * &y)),
            (Value::Num(x), Value::Form(f)) | (Value::Form(f), Value::Num(x)) => {
                Ok(Value::Form(f.scale(&x)))
            }
            (Value::Form(x), Value::Form(y)) => x
                .wedge(&y)
                .map(Value::Form)
                .map_err(|e| err(self.line, self.col(), e.to_string())),
        }
    }
}

/// Parses a complete structure file.
pub fn parse_structure_file(text: &str) -> Result<StructureFile, ParseError> {
    let mut n: Option<u8> = None;
    let mut radicand: u64 = 0;
    let mut name = String::from("unnamed");
    let mut params: BTreeMap<String, Scalar> = BTreeMap::new();
    let mut forms: BTreeMap<String, InvariantForm> = BTreeMap::new();
    let mut vform: Option<Vec<Vec<Scalar>>> = None;
    let mut d_phi: BTreeMap<u8, InvariantForm> = BTreeMap::new();
    let mut curve_linear = false;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let toks = tokenize(line_no, raw)?;
        if toks.is_empty() {
            continue;
        }
        let head = match &toks[0].tok {
            Tok::Ident(s) => s.clone(),
            _ => return Err(err(line_no, toks[0].col, "expected a keyword")),
        };
        let require_n = |n: &Option<u8>| -> Result<u8, ParseError> {
            n.ok_or_else(|| err(line_no, 1, "'dimension' must come first"))
        };
        match head.as_str() {
            "name" => {
                let Some(Spanned { tok: Tok::Ident(v), .. }) = toks.get(1) else {
                    return Err(err(line_no, 1, "usage: name <identifier>"));
                };
                name = v.clone();
            }
            "dimension" => {
                let Some(Spanned { tok: Tok::Int(v), col }) = toks.get(1) else {
                    return Err(err(line_no, 1, "usage: dimension <n>"));
                };
                if !(1..=8).contains(v) {
                    return Err(err(line_no, *col, "dimension must be between 1 and 8"));
                }
                if n.is_some() {
                    return Err(err(line_no, 1, "duplicate 'dimension'"));
                }
                n = Some(*v as u8);
            }
            "scalars" => {
                let ok = matches!(
                    (toks.get(1).map(|s| &s.tok), toks.get(2).map(|s| &s.tok)),
                    (Some(Tok::Ident(k)), Some(Tok::Int(_))) if k == "sqrt"
                );
                if !ok || toks.len() != 3 {
                    return Err(err(line_no, 1, "usage: scalars sqrt <d>"));
                }
                let Tok::Int(d) = toks[2].tok else { unreachable!() };
                let d = d as u64;
                if !is_valid_radicand(d) || d == 0 {
                    return Err(err(line_no, toks[2].col, format!("invalid radicand {d}")));
                }
                radicand = d;
            }
            "param" => {
                let nn = require_n(&n)?;
                let Some(Spanned { tok: Tok::Ident(pname), .. }) = toks.get(1) else {
                    return Err(err(line_no, 1, "usage: param <name> = <scalar>"));
                };
                let pname = pname.clone();
                if !matches!(toks.get(2).map(|s| &s.tok), Some(Tok::Eq)) {
                    return Err(err(line_no, 1, "usage: param <name> = <scalar>"));
                }
                let mut p = ExprParser {
                    toks: &toks[3..],
                    pos: 0,
                    line: line_no,
                    n: nn,
                    radicand,
                    params: &params,
                    forms: &forms,
                };
                let v = p.parse_expr()?;
                if p.pos != p.toks.len() {
                    return p.fail("trailing tokens");
                }
                let Value::Num(s) = v else {
                    return Err(err(line_no, 1, "parameter value must be a scalar"));
                };
                params.insert(pname, s);
            }
            "d" => {
                let nn = require_n(&n)?;
                let Some(Spanned { tok: Tok::Ident(gen), col }) = toks.get(1) else {
                    return Err(err(line_no, 1, "usage: d phi<j> = <2-form>"));
                };
                let j: u8 = gen
                    .strip_prefix("phi")
                    .and_then(|s| s.parse().ok())
                    .filter(|&j| j >= 1 && j <= nn)
                    .ok_or_else(|| err(line_no, *col, format!("expected phi1..phi{nn}")))?;
                if !matches!(toks.get(2).map(|s| &s.tok), Some(Tok::Eq)) {
                    return Err(err(line_no, 1, "usage: d phi<j> = <2-form>"));
                }
                let mut p = ExprParser {
                    toks: &toks[3..],
                    pos: 0,
                    line: line_no,
                    n: nn,
                    radicand,
                    params: &params,
                    forms: &forms,
                };
                let v = p.parse_expr()?;
                if p.pos != p.toks.len() {
                    return p.fail("trailing tokens");
                }
                let f = match v {
                    Value::Form(f) => f,
                    Value::Num(s) if s.is_zero() => InvariantForm::zero(nn),
                    Value::Num(_) => {
                        return Err(err(line_no, 1, "differential must be a 2-form"))
                    }
                };
                for ((pp, q), _) in f.bidegree_components() {
                    if pp + q != 2 {
                        return Err(err(line_no, 1, "differential must be a 2-form"));
                    }
                }
                if d_phi.insert(j, f).is_some() {
                    return Err(err(line_no, 1, format!("duplicate 'd phi{j}'")));
                }
            }
            "form" => {
                let nn = require_n(&n)?;
                let Some(Spanned { tok: Tok::Ident(fname), .. }) = toks.get(1) else {
                    return Err(err(line_no, 1, "usage: form <name> [(p,q)] = <form>"));
                };
                let fname = fname.clone();
                let mut pos = 2;
                let mut expect_bidegree = None;
                if matches!(toks.get(pos).map(|s| &s.tok), Some(Tok::LParen)) {
                    let (Some(Tok::Int(p)), Some(Tok::Comma), Some(Tok::Int(q)), Some(Tok::RParen)) = (
                        toks.get(pos + 1).map(|s| &s.tok),
                        toks.get(pos + 2).map(|s| &s.tok),
                        toks.get(pos + 3).map(|s| &s.tok),
                        toks.get(pos + 4).map(|s| &s.tok),
                    ) else {
                        return Err(err(line_no, toks[pos].col, "expected (p,q)"));
                    };
                    expect_bidegree = Some((*p as usize, *q as usize));
                    pos += 5;
                }
                if !matches!(toks.get(pos).map(|s| &s.tok), Some(Tok::Eq)) {
                    return Err(err(line_no, 1, "usage: form <name> [(p,q)] = <form>"));
                }
                let mut p = ExprParser {
                    toks: &toks[pos + 1..],
                    pos: 0,
                    line: line_no,
                    n: nn,
                    radicand,
                    params: &params,
                    forms: &forms,
                };
                let v = p.parse_expr()?;
                if p.pos != p.toks.len() {
                    return p.fail("trailing tokens");
                }
                let f = p.as_form(v);
                if let Some(bd) = expect_bidegree {
                    if !f.is_zero() && f.bidegree() != Some(bd) {
                        return Err(err(
                            line_no,
                            1,
                            format!("form '{fname}' is not homogeneous of bidegree {bd:?}"),
                        ));
                    }
                }
                forms.insert(fname, f);
            }
            "vform" => {
                let nn = require_n(&n)?;
                // vform theta<lambda> bar<mu> = <scalar expr>
                let (Some(Tok::Ident(th)), Some(Tok::Ident(bar)), Some(Tok::Eq)) = (
                    toks.get(1).map(|s| &s.tok),
                    toks.get(2).map(|s| &s.tok),
                    toks.get(3).map(|s| &s.tok),
                ) else {
                    return Err(err(line_no, 1, "usage: vform theta<k> bar<m> = <scalar>"));
                };
                let lambda: u8 = th
                    .strip_prefix("theta")
                    .and_then(|s| s.parse().ok())
                    .filter(|&j| j >= 1 && j <= nn)
                    .ok_or_else(|| err(line_no, toks[1].col, format!("expected theta1..theta{nn}")))?;
                let mu: u8 = bar
                    .strip_prefix("bar")
                    .and_then(|s| s.parse().ok())
                    .filter(|&j| j >= 1 && j <= nn)
                    .ok_or_else(|| err(line_no, toks[2].col, format!("expected bar1..bar{nn}")))?;
                let mut p = ExprParser {
                    toks: &toks[4..],
                    pos: 0,
                    line: line_no,
                    n: nn,
                    radicand,
                    params: &params,
                    forms: &forms,
                };
                let v = p.parse_expr()?;
                if p.pos != p.toks.len() {
                    return p.fail("trailing tokens");
                }
                let Value::Num(s) = v else {
                    return Err(err(line_no, 1, "vform entries are scalar coefficients"));
                };
                let m = vform
                    .get_or_insert_with(|| vec![vec![Scalar::zero(); nn as usize]; nn as usize]);
                m[lambda as usize - 1][mu as usize - 1] = s;
            }
            "curve" => {
                if !matches!(toks.get(1).map(|s| &s.tok), Some(Tok::Ident(k)) if k == "linear") {
                    return Err(err(line_no, 1, "usage: curve linear"));
                }
                curve_linear = true;
            }
            other => {
                return Err(err(line_no, toks[0].col, format!("unknown keyword '{other}'")))
            }
        }
    }

    let nn = n.ok_or_else(|| err(1, 1, "missing 'dimension' line"))?;
    let d: Vec<InvariantForm> = (1..=nn)
        .map(|j| d_phi.remove(&j).unwrap_or_else(|| InvariantForm::zero(nn)))
        .collect();
    let structure = StructureEquations::new(nn, &name, d)
        .map_err(|e| err(1, 1, e.to_string()))?
        .with_params(params, radicand);
    Ok(StructureFile {
        structure,
        forms,
        vform,
        curve_linear,
    })
}

/// Parses a standalone form expression against a given structure context.
pub fn parse_form_expr(
    text: &str,
    structure: &StructureEquations,
    forms: &BTreeMap<String, InvariantForm>,
) -> Result<InvariantForm, ParseError> {
    let toks = tokenize(1, text)?;
    let mut p = ExprParser {
        toks: &toks,
        pos: 0,
        line: 1,
        n: structure.dimension(),
        radicand: structure.radicand(),
        params: structure.params(),
        forms,
    };
    let v = p.parse_expr()?;
    if p.pos != p.toks.len() {
        return p.fail("trailing tokens");
    }
    Ok(p.as_form(v))
}

/// Exact rational scalar, e.g. `1/3` or `-2/5`, for command-line parameters.
pub fn parse_rational(text: &str) -> Result<Scalar, ParseError> {
    let text = text.trim();
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (num, den) = match body.split_once('/') {
        Some((a, b)) => (a, b),
        None => (body, "1"),
    };
    let bad = || err(1, 1, format!("invalid rational '{text}'"));
    let num: i64 = num.trim().parse().map_err(|_| bad())?;
    let den: i64 = den.trim().parse().map_err(|_| bad())?;
    if den == 0 {
        return Err(bad());
    }
    let v = Scalar::from_rational(rat(if neg { -num } else { num }, den));
    Ok(v)
}
