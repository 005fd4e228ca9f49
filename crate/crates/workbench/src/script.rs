//! Workbench scripts: declarations of rings, ideals, elements and tasks.
//!
//! ```text
//! script  := decl+
//! decl    := ring | ideal | element | task
//! ring    := "ring" NAME "=" "char" (PRIME | "Z") "vars" names
//!            ["weights" ints] ["relations" polys] ["domain"] ";"
//! ideal   := "ideal" NAME "=" polys ";"
//! element := "element" NAME "=" poly ";"
//! task    := "task" ["models"] KIND NAME arg* option* ";"
//! option  := KEY INT | "primes" ints
//! poly    := ["+" | "-"] term (("+" | "-") term)*
//! term    := factor ("*" factor)*
//! factor  := atom ["^" INT]
//! atom    := INT | NAME | "(" poly ")"
//! ```
//!
//! Ideals and elements belong to the most recently declared ring. Names in
//! polynomials are variables of that ring or earlier elements of it.
//! `#` starts a comment.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use tightclosure_core::field::is_prime;
use tightclosure_core::models::IntPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScriptError {
    #[error("{pos}: expected {}, found {found}", expected.join(" or "))]
    Parse { pos: Pos, expected: Vec<String>, found: String },
    #[error("{pos}: name `{name}` is already declared at {previous}")]
    NameClash { name: String, pos: Pos, previous: Pos },
    #[error("{pos}: unresolved name `{name}`")]
    UnresolvedName { name: String, pos: Pos },
    #[error("{pos}: {message}")]
    Invalid { pos: Pos, message: String },
}

impl ScriptError {
    pub fn code(&self) -> &'static str {
        match self {
            ScriptError::Parse { .. } => "parse-error",
            ScriptError::NameClash { .. } => "name-clash",
            ScriptError::UnresolvedName { .. } => "unresolved-name",
            ScriptError::Invalid { .. } => "invalid-script",
        }
    }

    pub fn pos(&self) -> Pos {
        match self {
            ScriptError::Parse { pos, .. }
            | ScriptError::NameClash { pos, .. }
            | ScriptError::UnresolvedName { pos, .. }
            | ScriptError::Invalid { pos, .. } => *pos,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Characteristic {
    Prime(u64),
    Integers,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingDecl {
    pub name: String,
    pub characteristic: Characteristic,
    pub vars: Vec<String>,
    pub weights: Option<Vec<u32>>,
    pub relations: Vec<IntPoly>,
    pub domain: bool,
}

impl RingDecl {
    pub fn weights_or_default(&self) -> Vec<u32> {
        self.weights.clone().unwrap_or_else(|| vec![1; self.vars.len()])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealDecl {
    pub name: String,
    pub ring: String,
    pub generators: Vec<IntPoly>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementDecl {
    pub name: String,
    pub ring: String,
    pub value: IntPoly,
}

macro_rules! keyed_enum {
    ($(#[$m:meta])* $name:ident { $($variant:ident => $text:literal),* $(,)? }) => {
        $(#[$m])*
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum $name { $($variant),* }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),*];

            pub fn name(self) -> &'static str {
                match self { $($name::$variant => $text),* }
            }

            pub fn from_name(s: &str) -> Option<Self> {
                match s { $($text => Some($name::$variant),)* _ => None }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.name())
            }
        }
    };
}

keyed_enum!(TaskKind {
    TcHull => "tc-hull",
    TcMembership => "tc-membership",
    Certificate => "certificate",
    Persistence => "persistence",
    PlusWitness => "plus-witness",
    Bracket => "bracket",
    Jacobian => "jacobian",
    Parameters => "parameters",
    ColonCapture => "colon-capture",
    MonomialColon => "monomial-colon",
    IntegralClosure => "integral-closure",
    BrianconSkoda => "briancon-skoda",
    Mather => "mather",
    FRegular => "f-regular",
    FRational => "f-rational",
    Hk => "hk",
    Hs => "hs",
    HkCompare => "hk-compare",
    LcZero => "lc-zero",
    LcFrobenius => "lc-frobenius",
    ZeroStar => "zero-star",
    AInvariant => "a-invariant",
    Fujita => "fujita",
    Kodaira => "kodaira",
});

keyed_enum!(OptKey {
    Bound => "bound",
    Emin => "emin",
    Emax => "emax",
    Kpow => "kpow",
    Window => "window",
    Degree => "degree",
    From => "from",
    To => "to",
    E => "e",
    T => "t",
    N => "n",
    Index => "index",
    Smax => "smax",
    Primes => "primes",
});

/// Kinds of positional task arguments.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arg {
    Ideal,
    Element,
    /// A second ring; following arguments belong to it.
    Ring,
    /// One or more ideals.
    Ideals,
}

impl TaskKind {
    /// Positional arguments after the ring.
    pub fn signature(self) -> &'static [Arg] {
        use Arg::*;
        match self {
            TaskKind::TcHull | TaskKind::Bracket | TaskKind::IntegralClosure | TaskKind::BrianconSkoda => &[Ideal],
            TaskKind::Hk | TaskKind::Hs => &[Ideal],
            TaskKind::TcMembership => &[Ideal, Element],
            TaskKind::Certificate => &[Ideal, Element, Element],
            TaskKind::Persistence => &[Ideal, Element, Element, Ideal],
            TaskKind::PlusWitness => &[Ideal, Element, Ring, Ideal, Ideal],
            TaskKind::Jacobian | TaskKind::AInvariant => &[],
            TaskKind::Parameters | TaskKind::ColonCapture | TaskKind::MonomialColon => &[Ideal],
            TaskKind::Fujita | TaskKind::Kodaira => &[Ideal],
            TaskKind::Mather => &[Element],
            TaskKind::FRegular | TaskKind::FRational => &[Ideals],
            TaskKind::HkCompare => &[Ideal, Ideal],
            TaskKind::LcZero | TaskKind::LcFrobenius | TaskKind::ZeroStar => &[Ideal, Element],
        }
    }

    pub fn options(self) -> &'static [OptKey] {
        use OptKey::*;
        const CLOSURE: &[OptKey] = &[Emax, Kpow, Window, Degree];
        match self {
            TaskKind::TcHull => &[Bound, Emax, Kpow, Window, Degree],
            TaskKind::TcMembership => CLOSURE,
            TaskKind::ZeroStar => &[T, Emax, Kpow, Window, Degree],
            TaskKind::PlusWitness => CLOSURE,
            TaskKind::Certificate | TaskKind::Persistence => &[From, To],
            TaskKind::Bracket => &[E],
            TaskKind::ColonCapture => &[Index, Emax, Kpow, Window, Degree],
            TaskKind::MonomialColon => &[T, Bound, Emax, Kpow, Window, Degree],
            TaskKind::FRegular | TaskKind::FRational | TaskKind::Kodaira => &[Bound, Emax, Kpow, Window, Degree],
            TaskKind::Hk | TaskKind::HkCompare => &[Emin, Emax],
            TaskKind::Hs => &[N],
            TaskKind::LcZero => &[T, Smax],
            TaskKind::LcFrobenius => &[T, E],
            TaskKind::Fujita => &[N, T, Emax, Kpow, Window, Degree],
            TaskKind::Jacobian
            | TaskKind::Parameters
            | TaskKind::IntegralClosure
            | TaskKind::BrianconSkoda
            | TaskKind::Mather
            | TaskKind::AInvariant => &[],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaskOption {
    pub key: OptKey,
    pub values: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaskDecl {
    pub kind: TaskKind,
    /// Run on every fiber of an integer ring (`task models …`).
    pub models: bool,
    pub ring: String,
    pub args: Vec<String>,
    pub options: Vec<TaskOption>,
}

impl TaskDecl {
    pub fn option(&self, key: OptKey) -> Option<u64> {
        self.options.iter().find(|o| o.key == key).and_then(|o| o.values.first().copied())
    }

    pub fn list_option(&self, key: OptKey) -> Option<&[u64]> {
        self.options.iter().find(|o| o.key == key).map(|o| o.values.as_slice())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decl {
    Ring(RingDecl),
    Ideal(IdealDecl),
    Element(ElementDecl),
    Task(TaskDecl),
}

impl Decl {
    pub fn name(&self) -> Option<&str> {
        match self {
            Decl::Ring(r) => Some(&r.name),
            Decl::Ideal(i) => Some(&i.name),
            Decl::Element(e) => Some(&e.name),
            Decl::Task(_) => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct WorkbenchScript {
    pub decls: Vec<Decl>,
    /// Start of each declaration.
    pub spans: Vec<Pos>,
}

impl WorkbenchScript {
    pub fn lookup(&self, name: &str) -> Option<&Decl> {
        self.decls.iter().find(|d| d.name() == Some(name))
    }

    pub fn ring(&self, name: &str) -> Option<&RingDecl> {
        match self.lookup(name) {
            Some(Decl::Ring(r)) => Some(r),
            _ => None,
        }
    }

    pub fn ideal(&self, name: &str) -> Option<&IdealDecl> {
        match self.lookup(name) {
            Some(Decl::Ideal(i)) => Some(i),
            _ => None,
        }
    }

    pub fn element(&self, name: &str) -> Option<&ElementDecl> {
        match self.lookup(name) {
            Some(Decl::Element(e)) => Some(e),
            _ => None,
        }
    }

    pub fn tasks(&self) -> impl Iterator<Item = (Pos, &TaskDecl)> {
        self.decls.iter().zip(&self.spans).filter_map(|(d, p)| match d {
            Decl::Task(t) => Some((*p, t)),
            _ => None,
        })
    }
}

// ---- tokens ----

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    Sym(char),
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    pos: Pos,
    start: usize,
    end: usize,
}

impl Token {
    fn describe(&self) -> String {
        match &self.tok {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<Token>, ScriptError> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut col = 1;
    let mut it = text.char_indices().peekable();
    while let Some(&(i, c)) = it.peek() {
        let pos = Pos { line, col };
        if c == '\n' {
            it.next();
            line += 1;
            col = 1;
        } else if c.is_whitespace() {
            it.next();
            col += 1;
        } else if c == '#' {
            while let Some(&(_, c)) = it.peek() {
                if c == '\n' {
                    break;
                }
                it.next();
            }
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&(_, c)) = it.peek() {
                if c.is_ascii_alphanumeric() || c == '_' || c == '\'' {
                    s.push(c);
                    it.next();
                    col += 1;
                } else {
                    break;
                }
            }
            let end = i + s.len();
            out.push(Token { tok: Tok::Ident(s), pos, start: i, end });
        } else if c.is_ascii_digit() {
            let mut n: u64 = 0;
            let mut len = 0;
            while let Some(&(_, c)) = it.peek() {
                let Some(d) = c.to_digit(10) else { break };
                n = n.checked_mul(10).and_then(|n| n.checked_add(d as u64)).ok_or_else(|| ScriptError::Parse {
                    pos,
                    expected: vec!["an integer below 2^64".into()],
                    found: "a longer integer".into(),
                })?;
                it.next();
                col += 1;
                len += 1;
            }
            out.push(Token { tok: Tok::Int(n), pos, start: i, end: i + len });
        } else if "=;,+-*^()".contains(c) {
            it.next();
            col += 1;
            out.push(Token { tok: Tok::Sym(c), pos, start: i, end: i + 1 });
        } else {
            return Err(ScriptError::Parse { pos, expected: vec!["a token".into()], found: format!("`{c}`") });
        }
    }
    let end = text.len();
    out.push(Token { tok: Tok::Eof, pos: Pos { line, col }, start: end, end });
    Ok(out)
}

// ---- polynomials during parsing ----

/// Sparse polynomial with exact integer coefficients, reduced mod p when a
/// prime is given.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Sparse(BTreeMap<Vec<u32>, i128>);

struct Arith {
    modulus: Option<u64>,
    nvars: usize,
}

impl Arith {
    fn norm(&self, c: i128) -> i128 {
        match self.modulus {
            Some(p) => {
                let p = p as i128;
                let r = c.rem_euclid(p);
                if 2 * r > p {
                    r - p
                } else {
                    r
                }
            }
            None => c,
        }
    }

    fn constant(&self, c: i128) -> Sparse {
        let mut m = BTreeMap::new();
        let c = self.norm(c);
        if c != 0 {
            m.insert(vec![0; self.nvars], c);
        }
        Sparse(m)
    }

    fn var(&self, i: usize) -> Sparse {
        let mut e = vec![0; self.nvars];
        e[i] = 1;
        Sparse(BTreeMap::from([(e, 1)]))
    }

    fn add(&self, a: &Sparse, b: &Sparse, sign: i128) -> Option<Sparse> {
        let mut m = a.0.clone();
        for (e, c) in &b.0 {
            let v = m.get(e).copied().unwrap_or(0).checked_add(c.checked_mul(sign)?)?;
            let v = self.norm(v);
            if v == 0 {
                m.remove(e);
            } else {
                m.insert(e.clone(), v);
            }
        }
        Some(Sparse(m))
    }

    fn mul(&self, a: &Sparse, b: &Sparse) -> Option<Sparse> {
        let mut out = Sparse::default();
        for (ea, ca) in &a.0 {
            for (eb, cb) in &b.0 {
                let e = ea.iter().zip(eb).map(|(x, y)| x.checked_add(*y)).collect::<Option<Vec<u32>>>()?;
                let term = Sparse(BTreeMap::from([(e, self.norm(ca.checked_mul(*cb)?))]));
                out = self.add(&out, &term, 1)?;
            }
        }
        Some(out)
    }

    fn pow(&self, a: &Sparse, k: u64) -> Option<Sparse> {
        let mut acc = self.constant(1);
        let mut base = a.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base)?;
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base)?;
            }
        }
        Some(acc)
    }
}

fn to_int_poly(s: &Sparse, weights: &[u32]) -> Option<IntPoly> {
    let mut terms: IntPoly = s.0.iter().map(|(e, c)| Some((e.clone(), i64::try_from(*c).ok()?))).collect::<Option<_>>()?;
    canonicalize(&mut terms, weights);
    Some(terms)
}

/// Canonical term order of script polynomials: weighted degree descending,
/// then exponent vectors descending.
pub fn canonicalize(terms: &mut IntPoly, weights: &[u32]) {
    let deg = |e: &[u32]| -> u64 { e.iter().zip(weights).map(|(&a, &w)| a as u64 * w as u64).sum() };
    terms.retain(|(_, c)| *c != 0);
    terms.sort_by(|a, b| deg(&b.0).cmp(&deg(&a.0)).then_with(|| b.0.cmp(&a.0)));
}

// ---- parser ----

struct Scope<'a> {
    ring: &'a RingDecl,
    elements: &'a HashMap<String, (String, IntPoly)>,
}

struct Parser {
    toks: Vec<Token>,
    at: usize,
    decls: Vec<Decl>,
    spans: Vec<Pos>,
    names: HashMap<String, Pos>,
    /// element name -> (ring, value)
    elements: HashMap<String, (String, IntPoly)>,
    active_ring: Option<usize>,
}

pub fn parse_script(text: &str) -> Result<WorkbenchScript, ScriptError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        at: 0,
        decls: Vec::new(),
        spans: Vec::new(),
        names: HashMap::new(),
        elements: HashMap::new(),
        active_ring: None,
    };
    loop {
        if p.peek().tok == Tok::Eof {
            if p.decls.is_empty() {
                return Err(p.unexpected(&["`ring`", "`ideal`", "`element`", "`task`"]));
            }
            break;
        }
        p.decl()?;
    }
    Ok(WorkbenchScript { decls: p.decls, spans: p.spans })
}

fn expected(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.at]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.at].clone();
        if t.tok != Tok::Eof {
            self.at += 1;
        }
        t
    }

    fn unexpected(&self, exp: &[&str]) -> ScriptError {
        let t = self.peek();
        ScriptError::Parse { pos: t.pos, expected: expected(exp), found: t.describe() }
    }

    fn is_sym(&self, c: char) -> bool {
        self.peek().tok == Tok::Sym(c)
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(s) if s == w)
    }

    fn sym(&mut self, c: char) -> Result<(), ScriptError> {
        if self.is_sym(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&[&format!("`{c}`")]))
        }
    }

    fn word(&mut self, w: &str) -> Result<(), ScriptError> {
        if self.is_word(w) {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&[&format!("`{w}`")]))
        }
    }

    fn name(&mut self) -> Result<(String, Pos), ScriptError> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let s = s.clone();
                let pos = self.bump().pos;
                Ok((s, pos))
            }
            _ => Err(self.unexpected(&["a name"])),
        }
    }

    fn int(&mut self) -> Result<(u64, Pos), ScriptError> {
        match self.peek().tok {
            Tok::Int(n) => {
                let pos = self.bump().pos;
                Ok((n, pos))
            }
            _ => Err(self.unexpected(&["an integer"])),
        }
    }

    fn int_list(&mut self) -> Result<Vec<u64>, ScriptError> {
        let mut v = vec![self.int()?.0];
        while self.is_sym(',') {
            self.bump();
            v.push(self.int()?.0);
        }
        Ok(v)
    }

    /// A hyphenated word such as `tc-hull`, written without spaces.
    fn kind_word(&mut self) -> Result<(String, Pos), ScriptError> {
        let (mut s, pos) = self.name()?;
        while self.is_sym('-') && self.peek().start == self.toks[self.at - 1].end {
            let next = &self.toks[self.at + 1];
            if !matches!(next.tok, Tok::Ident(_)) || next.start != self.peek().end {
                break;
            }
            self.bump();
            s.push('-');
            s.push_str(&self.name()?.0);
        }
        Ok((s, pos))
    }

    fn declare(&mut self, name: &str, pos: Pos) -> Result<(), ScriptError> {
        if let Some(prev) = self.names.get(name) {
            return Err(ScriptError::NameClash { name: name.into(), pos, previous: *prev });
        }
        if let Some(i) = self.active_ring {
            if let Decl::Ring(r) = &self.decls[i] {
                if r.vars.iter().any(|v| v == name) {
                    return Err(ScriptError::NameClash { name: name.into(), pos, previous: self.spans[i] });
                }
            }
        }
        self.names.insert(name.into(), pos);
        Ok(())
    }

    fn decl(&mut self) -> Result<(), ScriptError> {
        let pos = self.peek().pos;
        let d = if self.is_word("ring") {
            self.ring()?
        } else if self.is_word("ideal") {
            self.ideal()?
        } else if self.is_word("element") {
            self.element()?
        } else if self.is_word("task") {
            self.task()?
        } else {
            return Err(self.unexpected(&["`ring`", "`ideal`", "`element`", "`task`"]));
        };
        if matches!(d, Decl::Ring(_)) {
            self.active_ring = Some(self.decls.len());
        }
        self.decls.push(d);
        self.spans.push(pos);
        Ok(())
    }

    fn ring(&mut self) -> Result<Decl, ScriptError> {
        self.word("ring")?;
        let (name, pos) = self.name()?;
        self.declare(&name, pos)?;
        self.sym('=')?;
        self.word("char")?;
        let characteristic = match self.peek().tok.clone() {
            Tok::Ident(s) if s == "Z" => {
                self.bump();
                Characteristic::Integers
            }
            Tok::Int(n) => {
                if !is_prime(n) || n >= 1 << 31 {
                    return Err(ScriptError::Parse {
                        pos: self.peek().pos,
                        expected: expected(&["a prime below 2^31", "`Z`"]),
                        found: format!("`{n}`"),
                    });
                }
                self.bump();
                Characteristic::Prime(n)
            }
            _ => return Err(self.unexpected(&["a prime", "`Z`"])),
        };
        self.word("vars")?;
        let mut vars = Vec::new();
        loop {
            let (v, vpos) = self.name()?;
            if vars.contains(&v) {
                return Err(ScriptError::NameClash { name: v, pos: vpos, previous: pos });
            }
            if RESERVED.contains(&v.as_str()) {
                return Err(ScriptError::Parse {
                    pos: vpos,
                    expected: expected(&["a variable name"]),
                    found: format!("keyword `{v}`"),
                });
            }
            vars.push(v);
            if !self.is_sym(',') {
                break;
            }
            self.bump();
        }
        let mut decl = RingDecl { name, characteristic, vars, weights: None, relations: Vec::new(), domain: false };
        if self.is_word("weights") {
            let wpos = self.bump().pos;
            let w = self.int_list()?;
            if w.len() != decl.vars.len() || w.iter().any(|&x| x == 0 || x > u32::MAX as u64) {
                return Err(ScriptError::Invalid {
                    pos: wpos,
                    message: format!("expected {} positive weights", decl.vars.len()),
                });
            }
            decl.weights = Some(w.into_iter().map(|x| x as u32).collect());
        }
        if self.is_word("relations") {
            self.bump();
            let empty = HashMap::new();
            loop {
                let rel = self.poly_value(&Scope { ring: &decl, elements: &empty })?;
                decl.relations.push(rel);
                if !self.is_sym(',') {
                    break;
                }
                self.bump();
            }
        }
        if self.is_word("domain") {
            self.bump();
            decl.domain = true;
        }
        if !self.is_sym(';') {
            let mut exp = vec!["`;`", "`domain`"];
            if decl.relations.is_empty() {
                exp.insert(0, "`relations`");
            } else {
                exp.extend(["`,`", "`+`", "`-`", "`*`", "`^`"]);
            }
            if decl.weights.is_none() && decl.relations.is_empty() {
                exp.insert(0, "`weights`");
            }
            return Err(self.unexpected(&exp));
        }
        self.bump();
        Ok(Decl::Ring(decl))
    }

    fn active(&self, pos: Pos) -> Result<&RingDecl, ScriptError> {
        match self.active_ring.map(|i| &self.decls[i]) {
            Some(Decl::Ring(r)) => Ok(r),
            _ => Err(ScriptError::Invalid { pos, message: "no ring declared before this declaration".into() }),
        }
    }

    fn ideal(&mut self) -> Result<Decl, ScriptError> {
        let start = self.bump().pos;
        let (name, pos) = self.name()?;
        self.sym('=')?;
        let ring = self.active(start)?.clone();
        let elements = self.elements.clone();
        let mut generators = Vec::new();
        loop {
            let g = self.poly_value(&Scope { ring: &ring, elements: &elements })?;
            generators.push(g);
            if !self.is_sym(',') {
                break;
            }
            self.bump();
        }
        self.end_decl()?;
        self.declare(&name, pos)?;
        Ok(Decl::Ideal(IdealDecl { name, ring: ring.name, generators }))
    }

    fn element(&mut self) -> Result<Decl, ScriptError> {
        let start = self.bump().pos;
        let (name, pos) = self.name()?;
        self.sym('=')?;
        let ring = self.active(start)?.clone();
        let value = self.poly_value(&Scope { ring: &ring, elements: &self.elements.clone() })?;
        self.end_decl()?;
        self.declare(&name, pos)?;
        self.elements.insert(name.clone(), (ring.name.clone(), value.clone()));
        Ok(Decl::Element(ElementDecl { name, ring: ring.name, value }))
    }

    fn end_decl(&mut self) -> Result<(), ScriptError> {
        if self.is_sym(';') {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&["`,`", "`;`", "`+`", "`-`", "`*`", "`^`"]))
        }
    }

    fn task(&mut self) -> Result<Decl, ScriptError> {
        self.bump();
        let mut models = false;
        let (mut word, mut wpos) = self.kind_word()?;
        if word == "models" {
            models = true;
            let (r, _) = self.name()?;
            (word, wpos) = self.kind_word()?;
            return self.task_body(models, Some(r), word, wpos);
        }
        self.task_body(models, None, word, wpos)
    }

    fn task_body(&mut self, models: bool, ring: Option<String>, word: String, wpos: Pos) -> Result<Decl, ScriptError> {
        let Some(kind) = TaskKind::from_name(&word) else {
            let mut exp: Vec<String> = TaskKind::ALL.iter().map(|k| format!("`{k}`")).collect();
            if !models {
                exp.insert(0, "`models`".into());
            }
            return Err(ScriptError::Parse { pos: wpos, expected: exp, found: format!("`{word}`") });
        };
        // `task KIND R …` or `task models R KIND …`
        let (ring, rpos) = match ring {
            Some(r) => (r, wpos),
            None => self.name()?,
        };
        let ring_decl = self.resolve_ring(&ring, rpos)?.clone();
        match (models, ring_decl.characteristic) {
            (true, Characteristic::Prime(_)) => {
                return Err(ScriptError::Invalid {
                    pos: rpos,
                    message: format!("`models` needs a ring over Z, `{ring}` has prime characteristic"),
                })
            }
            (false, Characteristic::Integers) => {
                return Err(ScriptError::Invalid {
                    pos: rpos,
                    message: format!("ring `{ring}` is over Z; run tasks on it with `task models`"),
                })
            }
            _ => {}
        }
        let mut current_ring = ring.clone();
        let mut args = Vec::new();
        for a in kind.signature() {
            match a {
                Arg::Ring => {
                    let (n, p) = self.name()?;
                    let r = self.resolve_ring(&n, p)?;
                    if r.characteristic != ring_decl.characteristic {
                        return Err(ScriptError::Invalid { pos: p, message: format!("ring `{n}` has a different characteristic") });
                    }
                    current_ring = n.clone();
                    args.push(n);
                }
                Arg::Ideal | Arg::Element => {
                    let (n, p) = self.name()?;
                    self.resolve_member(&n, p, *a, &current_ring)?;
                    args.push(n);
                }
                Arg::Ideals => {
                    let (n, p) = self.name()?;
                    self.resolve_member(&n, p, Arg::Ideal, &current_ring)?;
                    args.push(n);
                    while let Tok::Ident(s) = &self.peek().tok {
                        if OptKey::from_name(s).is_some() {
                            break;
                        }
                        let (n, p) = self.name()?;
                        self.resolve_member(&n, p, Arg::Ideal, &current_ring)?;
                        args.push(n);
                    }
                }
            }
        }
        let mut options: Vec<TaskOption> = Vec::new();
        let allowed: Vec<OptKey> = kind.options().iter().copied().chain(models.then_some(OptKey::Primes)).collect();
        loop {
            match &self.peek().tok {
                Tok::Sym(';') => {
                    self.bump();
                    break;
                }
                Tok::Ident(s) if OptKey::from_name(s).is_some_and(|k| allowed.contains(&k)) => {
                    let key = OptKey::from_name(s).unwrap();
                    let kpos = self.bump().pos;
                    if options.iter().any(|o| o.key == key) {
                        return Err(ScriptError::Invalid { pos: kpos, message: format!("option `{key}` given twice") });
                    }
                    let values = if key == OptKey::Primes { self.int_list()? } else { vec![self.int()?.0] };
                    options.push(TaskOption { key, values });
                }
                _ => {
                    let mut exp: Vec<String> = allowed.iter().map(|k| format!("`{k}`")).collect();
                    exp.push("`;`".into());
                    let exp: Vec<&str> = exp.iter().map(|s| s.as_str()).collect();
                    return Err(self.unexpected(&exp));
                }
            }
        }
        Ok(Decl::Task(TaskDecl { kind, models, ring, args, options }))
    }

    fn resolve_ring(&self, name: &str, pos: Pos) -> Result<&RingDecl, ScriptError> {
        match self.decls.iter().find(|d| d.name() == Some(name)) {
            Some(Decl::Ring(r)) => Ok(r),
            Some(_) => Err(ScriptError::Invalid { pos, message: format!("`{name}` is not a ring") }),
            None => Err(ScriptError::UnresolvedName { name: name.into(), pos }),
        }
    }

    fn resolve_member(&self, name: &str, pos: Pos, want: Arg, ring: &str) -> Result<(), ScriptError> {
        let (kind, owner) = match self.decls.iter().find(|d| d.name() == Some(name)) {
            Some(Decl::Ideal(i)) => (Arg::Ideal, &i.ring),
            Some(Decl::Element(e)) => (Arg::Element, &e.ring),
            Some(_) => {
                return Err(ScriptError::Invalid { pos, message: format!("`{name}` is not an ideal or element") })
            }
            None => return Err(ScriptError::UnresolvedName { name: name.into(), pos }),
        };
        if kind != want {
            let w = if want == Arg::Ideal { "an ideal" } else { "an element" };
            return Err(ScriptError::Invalid { pos, message: format!("`{name}` is not {w}") });
        }
        if owner != ring {
            return Err(ScriptError::Invalid { pos, message: format!("`{name}` belongs to ring `{owner}`, not `{ring}`") });
        }
        Ok(())
    }

    fn poly_value(&mut self, scope: &Scope<'_>) -> Result<IntPoly, ScriptError> {
        let pos = self.peek().pos;
        let ar = Arith {
            modulus: match scope.ring.characteristic {
                Characteristic::Prime(p) => Some(p),
                Characteristic::Integers => None,
            },
            nvars: scope.ring.vars.len(),
        };
        let s = self.poly(scope, &ar)?;
        to_int_poly(&s, &scope.ring.weights_or_default()).ok_or_else(|| overflow(pos))
    }

    fn poly(&mut self, scope: &Scope<'_>, ar: &Arith) -> Result<Sparse, ScriptError> {
        let mut sign = 1;
        if (self.is_sym('-') || self.is_sym('+'))
            && self.bump().tok == Tok::Sym('-') {
                sign = -1;
            }
        let pos = self.peek().pos;
        let first = self.term(scope, ar)?;
        let mut acc = ar.add(&Sparse::default(), &first, sign).ok_or_else(|| overflow(pos))?;
        while self.is_sym('+') || self.is_sym('-') {
            let sign = if self.bump().tok == Tok::Sym('-') { -1 } else { 1 };
            let pos = self.peek().pos;
            let t = self.term(scope, ar)?;
            acc = ar.add(&acc, &t, sign).ok_or_else(|| overflow(pos))?;
        }
        Ok(acc)
    }

    fn term(&mut self, scope: &Scope<'_>, ar: &Arith) -> Result<Sparse, ScriptError> {
        let mut acc = self.factor(scope, ar)?;
        while self.is_sym('*') {
            let pos = self.bump().pos;
            let f = self.factor(scope, ar)?;
            acc = ar.mul(&acc, &f).ok_or_else(|| overflow(pos))?;
        }
        Ok(acc)
    }

    fn factor(&mut self, scope: &Scope<'_>, ar: &Arith) -> Result<Sparse, ScriptError> {
        let base = self.atom(scope, ar)?;
        if self.is_sym('^') {
            let pos = self.bump().pos;
            let (k, _) = self.int()?;
            return ar.pow(&base, k).ok_or_else(|| overflow(pos));
        }
        Ok(base)
    }

    fn atom(&mut self, scope: &Scope<'_>, ar: &Arith) -> Result<Sparse, ScriptError> {
        match self.peek().tok.clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(ar.constant(n as i128))
            }
            Tok::Ident(s) => {
                let pos = self.bump().pos;
                if let Some(i) = scope.ring.vars.iter().position(|v| *v == s) {
                    return Ok(ar.var(i));
                }
                match scope.elements.get(&s) {
                    Some((ring, value)) if *ring == scope.ring.name => {
                        let m = value.iter().map(|(e, c)| (e.clone(), ar.norm(*c as i128))).filter(|(_, c)| *c != 0);
                        Ok(Sparse(m.collect()))
                    }
                    Some((ring, _)) => Err(ScriptError::Invalid {
                        pos,
                        message: format!("element `{s}` belongs to ring `{ring}`, not `{}`", scope.ring.name),
                    }),
                    None => Err(ScriptError::UnresolvedName { name: s, pos }),
                }
            }
            Tok::Sym('(') => {
                self.bump();
                let p = self.poly(scope, ar)?;
                self.sym(')')?;
                Ok(p)
            }
            _ => Err(self.unexpected(&["an integer", "a name", "`(`"])),
        }
    }
}

fn overflow(pos: Pos) -> ScriptError {
    ScriptError::Invalid { pos, message: "coefficient or exponent overflow".into() }
}

/// Words with a fixed meaning in declarations.
pub const RESERVED: &[&str] = &["ring", "ideal", "element", "task", "char", "vars", "weights", "relations", "domain", "models"];
