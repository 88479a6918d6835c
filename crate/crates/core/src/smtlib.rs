//! SMT-LIB 2 frontend for the quantifier-free nonlinear real arithmetic
//! fragment the engine handles: real-valued zero-arity declarations and
//! asserted conjunctions of polynomial comparisons.
//!
//! Supported commands: `set-logic QF_NRA`, `declare-fun` (zero arity, sort
//! Real), `declare-const`, `assert`, `check-sat`, `get-model`, `exit`;
//! `set-info` and `set-option` are accepted and ignored. Inside asserts:
//! `and` (flattened), `not` on a binary atom, the chainable comparisons
//! `< <= > >= =`, `distinct` (pairwise), arithmetic `+ - * /` (division by a
//! nonzero constant), exact decimal literals, `let` (inlined), and `!`
//! annotations (unwrapped). Atoms with no variables are folded away.
//!
//! Variables are ordered by declaration, which fixes the solver's level
//! order.

use crate::engine::{Constraint, Formula, Relation};
use crate::poly::Polynomial;
use crate::rational::{parse_decimal, Rational};
use crate::realalg::RealAlgebraicNumber;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error)]
#[error("{line}:{col}: {msg}")]
pub struct ParseError {
    pub line: u32,
    pub col: u32,
    pub msg: String,
}

fn err<T>(line: u32, col: u32, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, col, msg: msg.into() })
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    LParen,
    RParen,
    Sym(String),
    Num(String),
    Dec(String),
    Str(String),
    Key(String),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: u32,
    col: u32,
}

fn is_symbol_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || "~!@$%^&*_-+=<>.?/".contains(c)
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: u32,
    col: u32,
}

impl Lexer<'_> {
    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> char {
        let c = self.chars.next().unwrap();
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        c
    }

    fn take_while(&mut self, into: &mut String, keep: fn(char) -> bool) {
        while let Some(d) = self.peek() {
            if keep(d) {
                into.push(self.bump());
            } else {
                break;
            }
        }
    }
}

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut toks = Vec::new();
    let mut lx = Lexer { chars: src.chars().peekable(), line: 1, col: 1 };
    while let Some(c) = lx.peek() {
        let (tl, tc) = (lx.line, lx.col);
        match c {
            ';' => {
                while let Some(d) = lx.peek() {
                    lx.bump();
                    if d == '\n' {
                        break;
                    }
                }
            }
            c if c.is_whitespace() => {
                lx.bump();
            }
            '(' => {
                lx.bump();
                toks.push(Token { tok: Tok::LParen, line: tl, col: tc });
            }
            ')' => {
                lx.bump();
                toks.push(Token { tok: Tok::RParen, line: tl, col: tc });
            }
            '"' => {
                lx.bump();
                let mut s = String::new();
                loop {
                    match lx.peek() {
                        None => return err(tl, tc, "unterminated string literal"),
                        Some('"') => {
                            lx.bump();
                            if lx.peek() == Some('"') {
                                s.push(lx.bump());
                            } else {
                                break;
                            }
                        }
                        Some(_) => s.push(lx.bump()),
                    }
                }
                toks.push(Token { tok: Tok::Str(s), line: tl, col: tc });
            }
            ':' => {
                lx.bump();
                let mut s = String::new();
                lx.take_while(&mut s, is_symbol_char);
                if s.is_empty() {
                    return err(tl, tc, "lone ':'");
                }
                toks.push(Token { tok: Tok::Key(s), line: tl, col: tc });
            }
            c if c.is_ascii_digit() => {
                let mut s = String::new();
                lx.take_while(&mut s, |d| d.is_ascii_digit());
                if lx.peek() == Some('.') {
                    s.push(lx.bump());
                    let before = s.len();
                    lx.take_while(&mut s, |d| d.is_ascii_digit());
                    if s.len() == before {
                        return err(tl, tc, "decimal needs digits after the point");
                    }
                    toks.push(Token { tok: Tok::Dec(s), line: tl, col: tc });
                } else {
                    toks.push(Token { tok: Tok::Num(s), line: tl, col: tc });
                }
            }
            c if is_symbol_char(c) => {
                let mut s = String::new();
                lx.take_while(&mut s, is_symbol_char);
                toks.push(Token { tok: Tok::Sym(s), line: tl, col: tc });
            }
            c => return err(tl, tc, format!("unexpected character {c:?}")),
        }
    }
    Ok(toks)
}

#[derive(Clone, Debug)]
enum SExpr {
    Atom(Token),
    List(Vec<SExpr>, u32, u32),
}

impl SExpr {
    fn pos(&self) -> (u32, u32) {
        match self {
            SExpr::Atom(t) => (t.line, t.col),
            SExpr::List(_, l, c) => (*l, *c),
        }
    }

    fn as_sym(&self) -> Option<&str> {
        match self {
            SExpr::Atom(Token { tok: Tok::Sym(s), .. }) => Some(s),
            _ => None,
        }
    }
}

fn parse_sexprs(toks: &[Token]) -> Result<Vec<SExpr>, ParseError> {
    let mut stack: Vec<(Vec<SExpr>, u32, u32)> = Vec::new();
    let mut top = Vec::new();
    for t in toks {
        match &t.tok {
            Tok::LParen => stack.push((std::mem::take(&mut top), t.line, t.col)),
            Tok::RParen => match stack.pop() {
                None => return err(t.line, t.col, "unmatched ')'"),
                Some((outer, l, c)) => {
                    let inner = std::mem::replace(&mut top, outer);
                    top.push(SExpr::List(inner, l, c));
                }
            },
            _ => top.push(SExpr::Atom(t.clone())),
        }
    }
    if let Some((_, l, c)) = stack.pop() {
        return err(l, c, "unclosed '('");
    }
    Ok(top)
}

/// A parsed script, ready to hand to the engine.
#[derive(Debug)]
pub struct Script {
    /// `None` only when the script declares no variables (then
    /// `trivially_false` must hold, or parsing fails).
    pub formula: Option<Formula>,
    /// Some asserted atom folded to a constant falsehood.
    pub trivially_false: bool,
    pub wants_model: bool,
}

struct Builder {
    var_names: Vec<String>,
    var_index: HashMap<String, usize>,
    constraints: Vec<Constraint>,
    trivially_false: bool,
    wants_model: bool,
}

pub fn parse_script(src: &str) -> Result<Script, ParseError> {
    let toks = lex(src)?;
    let cmds = parse_sexprs(&toks)?;
    // Declarations first, so every assert sees the full variable list.
    let mut b = Builder {
        var_names: Vec::new(),
        var_index: HashMap::new(),
        constraints: Vec::new(),
        trivially_false: false,
        wants_model: false,
    };
    for cmd in &cmds {
        let items = match cmd {
            SExpr::List(items, ..) if !items.is_empty() => items,
            _ => {
                let (l, c) = cmd.pos();
                return err(l, c, "expected a command");
            }
        };
        if items[0].as_sym() == Some("exit") {
            break;
        }
        match items[0].as_sym() {
            Some("declare-fun") => declare_fun(&mut b, cmd, items)?,
            Some("declare-const") => declare_const(&mut b, cmd, items)?,
            _ => {}
        }
    }
    for cmd in &cmds {
        let items = match cmd {
            SExpr::List(items, ..) => items,
            _ => unreachable!("validated above"),
        };
        let (l, c) = cmd.pos();
        let head = match items[0].as_sym() {
            Some(h) => h,
            None => return err(l, c, "command head must be a symbol"),
        };
        match head {
            "exit" => break,
            "set-logic" => {
                let logic = items.get(1).and_then(|s| s.as_sym());
                if logic != Some("QF_NRA") {
                    return err(l, c, "only logic QF_NRA is supported");
                }
            }
            "set-info" | "set-option" => {}
            "declare-fun" | "declare-const" => {}
            "assert" => {
                if items.len() != 2 {
                    return err(l, c, "assert takes exactly one term");
                }
                let env = HashMap::new();
                parse_bool(&mut b, &items[1], &env)?;
            }
            "check-sat" => {}
            "get-model" => b.wants_model = true,
            other => return err(l, c, format!("unsupported command {other}")),
        }
    }
    if b.var_names.is_empty() {
        if b.trivially_false {
            return Ok(Script { formula: None, trivially_false: true, wants_model: b.wants_model });
        }
        return err(1, 1, "no variables declared");
    }
    let formula = Formula::new(b.var_names, b.constraints)
        .map_err(|msg| ParseError { line: 1, col: 1, msg })?;
    Ok(Script {
        formula: Some(formula),
        trivially_false: b.trivially_false,
        wants_model: b.wants_model,
    })
}

fn declare_var(b: &mut Builder, cmd: &SExpr, name: &SExpr) -> Result<(), ParseError> {
    let (l, c) = name.pos();
    let name = match name.as_sym() {
        Some(s) => s.to_string(),
        None => return err(l, c, "variable name must be a symbol"),
    };
    if b.var_index.contains_key(&name) {
        let (l, c) = cmd.pos();
        return err(l, c, format!("{name} is already declared"));
    }
    b.var_index.insert(name.clone(), b.var_names.len());
    b.var_names.push(name);
    Ok(())
}

fn expect_real(sort: &SExpr) -> Result<(), ParseError> {
    if sort.as_sym() != Some("Real") {
        let (l, c) = sort.pos();
        return err(l, c, "only sort Real is supported");
    }
    Ok(())
}

fn declare_fun(b: &mut Builder, cmd: &SExpr, items: &[SExpr]) -> Result<(), ParseError> {
    let (l, c) = cmd.pos();
    if items.len() != 4 {
        return err(l, c, "declare-fun takes a name, an argument list, and a sort");
    }
    match &items[2] {
        SExpr::List(args, ..) if args.is_empty() => {}
        other => {
            let (l, c) = other.pos();
            return err(l, c, "only zero-arity declarations are supported");
        }
    }
    expect_real(&items[3])?;
    declare_var(b, cmd, &items[1])
}

fn declare_const(b: &mut Builder, cmd: &SExpr, items: &[SExpr]) -> Result<(), ParseError> {
    let (l, c) = cmd.pos();
    if items.len() != 3 {
        return err(l, c, "declare-const takes a name and a sort");
    }
    expect_real(&items[2])?;
    declare_var(b, cmd, &items[1])
}

type Env = HashMap<String, Polynomial>;

fn relation_of(sym: &str) -> Option<Relation> {
    match sym {
        "<" => Some(Relation::Lt),
        "<=" => Some(Relation::Le),
        "=" => Some(Relation::Eq),
        ">=" => Some(Relation::Ge),
        ">" => Some(Relation::Gt),
        _ => None,
    }
}

fn negated(rel: Relation) -> Relation {
    match rel {
        Relation::Lt => Relation::Ge,
        Relation::Le => Relation::Gt,
        Relation::Eq => Relation::Ne,
        Relation::Ne => Relation::Eq,
        Relation::Ge => Relation::Lt,
        Relation::Gt => Relation::Le,
    }
}

/// Parses a boolean term, pushing the constraints it denotes.
fn parse_bool(b: &mut Builder, e: &SExpr, env: &Env) -> Result<(), ParseError> {
    let (l, c) = e.pos();
    if let Some(s) = e.as_sym() {
        return match s {
            "true" => Ok(()),
            "false" => {
                b.trivially_false = true;
                Ok(())
            }
            _ => err(l, c, format!("expected a boolean term, found {s}")),
        };
    }
    let items = match e {
        SExpr::List(items, ..) if !items.is_empty() => items,
        _ => return err(l, c, "expected a boolean term"),
    };
    let head = match items[0].as_sym() {
        Some(h) => h,
        None => return err(l, c, "expected an operator"),
    };
    match head {
        "and" => {
            for conj in &items[1..] {
                parse_bool(b, conj, env)?;
            }
            Ok(())
        }
        "not" => {
            if items.len() != 2 {
                return err(l, c, "not takes one argument");
            }
            parse_negated_atom(b, &items[1], env)
        }
        "!" => {
            if items.len() < 2 {
                return err(l, c, "'!' needs a term");
            }
            parse_bool(b, &items[1], env)
        }
        "let" => {
            let (bindings, body) = split_let(e, items)?;
            let inner = extend_env(b, env, bindings)?;
            parse_bool(b, body, &inner)
        }
        "distinct" => {
            let args = parse_args(b, &items[1..], env, e, 2)?;
            for i in 0..args.len() {
                for j in i + 1..args.len() {
                    push_atom(b, &args[i] - &args[j], Relation::Ne);
                }
            }
            Ok(())
        }
        _ => match relation_of(head) {
            Some(rel) => {
                let args = parse_args(b, &items[1..], env, e, 2)?;
                for w in args.windows(2) {
                    push_atom(b, &w[0] - &w[1], rel);
                }
                Ok(())
            }
            None => err(l, c, format!("unsupported boolean operator {head}")),
        },
    }
}

fn parse_negated_atom(b: &mut Builder, e: &SExpr, env: &Env) -> Result<(), ParseError> {
    let (l, c) = e.pos();
    let items = match e {
        SExpr::List(items, ..) if !items.is_empty() => items,
        _ => {
            if e.as_sym() == Some("true") {
                b.trivially_false = true;
                return Ok(());
            }
            if e.as_sym() == Some("false") {
                return Ok(());
            }
            return err(l, c, "not expects a comparison");
        }
    };
    let head = match items[0].as_sym() {
        Some(h) => h,
        None => return err(l, c, "not expects a comparison"),
    };
    if head == "!" && items.len() >= 2 {
        return parse_negated_atom(b, &items[1], env);
    }
    let rel = match head {
        "distinct" => Relation::Ne,
        _ => match relation_of(head) {
            Some(r) => r,
            None => return err(l, c, format!("cannot negate {head}")),
        },
    };
    if items.len() != 3 {
        return err(l, c, "only binary comparisons can be negated");
    }
    let t1 = parse_term(b, &items[1], env)?;
    let t2 = parse_term(b, &items[2], env)?;
    push_atom(b, &t1 - &t2, negated(rel));
    Ok(())
}

fn parse_args(
    b: &mut Builder,
    args: &[SExpr],
    env: &Env,
    ctx: &SExpr,
    min: usize,
) -> Result<Vec<Polynomial>, ParseError> {
    if args.len() < min {
        let (l, c) = ctx.pos();
        return err(l, c, "too few arguments");
    }
    args.iter().map(|a| parse_term(b, a, env)).collect()
}

/// Folds constant atoms; keeps the rest as constraints.
fn push_atom(b: &mut Builder, poly: Polynomial, rel: Relation) {
    match poly.constant_value() {
        Some(v) => {
            let sign = if v.is_zero() {
                0
            } else if v.is_positive() {
                1
            } else {
                -1
            };
            if !rel.holds(sign) {
                b.trivially_false = true;
            }
        }
        None => b.constraints.push(Constraint { poly, rel }),
    }
}

fn split_let<'a>(
    e: &'a SExpr,
    items: &'a [SExpr],
) -> Result<(&'a [SExpr], &'a SExpr), ParseError> {
    let (l, c) = e.pos();
    if items.len() != 3 {
        return err(l, c, "let takes a binding list and a body");
    }
    match &items[1] {
        SExpr::List(bindings, ..) => Ok((bindings, &items[2])),
        other => {
            let (l, c) = other.pos();
            err(l, c, "let bindings must be a list")
        }
    }
}

/// Evaluates let bindings (in parallel, as the standard requires) and
/// returns the extended environment.
fn extend_env(b: &mut Builder, env: &Env, bindings: &[SExpr]) -> Result<Env, ParseError> {
    let mut inner = env.clone();
    for binding in bindings {
        let (l, c) = binding.pos();
        let pair = match binding {
            SExpr::List(pair, ..) if pair.len() == 2 => pair,
            _ => return err(l, c, "a let binding is (name term)"),
        };
        let name = match pair[0].as_sym() {
            Some(s) => s.to_string(),
            None => return err(l, c, "binding name must be a symbol"),
        };
        let value = parse_term(b, &pair[1], env)?;
        inner.insert(name, value);
    }
    Ok(inner)
}

fn parse_term(b: &Builder, e: &SExpr, env: &Env) -> Result<Polynomial, ParseError> {
    let n = b.var_names.len();
    let (l, c) = e.pos();
    match e {
        SExpr::Atom(t) => match &t.tok {
            Tok::Num(s) => {
                let v: Rational = s.parse::<num_bigint::BigInt>().unwrap().into();
                Ok(Polynomial::constant(n, v))
            }
            Tok::Dec(s) => {
                let v = parse_decimal(s)
                    .ok_or(ParseError { line: l, col: c, msg: format!("bad decimal {s}") })?;
                Ok(Polynomial::constant(n, v))
            }
            Tok::Sym(s) => {
                if let Some(p) = env.get(s) {
                    return Ok(p.clone());
                }
                match b.var_index.get(s) {
                    Some(&i) => Ok(Polynomial::var(n, i)),
                    None => err(l, c, format!("unknown symbol {s}")),
                }
            }
            _ => err(l, c, "expected a term"),
        },
        SExpr::List(items, ..) => {
            let head = match items.first().and_then(|h| h.as_sym()) {
                Some(h) => h,
                None => return err(l, c, "expected an arithmetic operator"),
            };
            let args = &items[1..];
            match head {
                "+" => {
                    if args.is_empty() {
                        return err(l, c, "+ needs arguments");
                    }
                    let mut acc = Polynomial::zero(n);
                    for a in args {
                        acc = &acc + &parse_term(b, a, env)?;
                    }
                    Ok(acc)
                }
                "-" => {
                    if args.is_empty() {
                        return err(l, c, "- needs arguments");
                    }
                    let first = parse_term(b, &args[0], env)?;
                    if args.len() == 1 {
                        return Ok(-&first);
                    }
                    let mut acc = first;
                    for a in &args[1..] {
                        acc = &acc - &parse_term(b, a, env)?;
                    }
                    Ok(acc)
                }
                "*" => {
                    if args.is_empty() {
                        return err(l, c, "* needs arguments");
                    }
                    let mut acc = Polynomial::one(n);
                    for a in args {
                        acc = &acc * &parse_term(b, a, env)?;
                    }
                    Ok(acc)
                }
                "/" => {
                    if args.len() < 2 {
                        return err(l, c, "/ needs two arguments");
                    }
                    let mut acc = parse_term(b, &args[0], env)?;
                    for a in &args[1..] {
                        let d = parse_term(b, a, env)?;
                        let (dl, dc) = a.pos();
                        match d.constant_value() {
                            Some(v) if !v.is_zero() => {
                                acc = acc.scale(&(Rational::one() / v));
                            }
                            Some(_) => return err(dl, dc, "division by zero"),
                            None => {
                                return err(dl, dc, "division only by nonzero constants")
                            }
                        }
                    }
                    Ok(acc)
                }
                "!" => {
                    if args.is_empty() {
                        return err(l, c, "'!' needs a term");
                    }
                    parse_term(b, &args[0], env)
                }
                "let" => {
                    let (bindings, body) = split_let(e, items)?;
                    // Bindings cannot push constraints, so the builder is
                    // only read here.
                    let mut inner = env.clone();
                    for binding in bindings {
                        let (bl, bc) = binding.pos();
                        let pair = match binding {
                            SExpr::List(pair, ..) if pair.len() == 2 => pair,
                            _ => return err(bl, bc, "a let binding is (name term)"),
                        };
                        let name = match pair[0].as_sym() {
                            Some(s) => s.to_string(),
                            None => return err(bl, bc, "binding name must be a symbol"),
                        };
                        inner.insert(name, parse_term(b, &pair[1], env)?);
                    }
                    parse_term(b, body, &inner)
                }
                other => err(l, c, format!("unsupported function {other}")),
            }
        }
    }
}

/// Renders a rational constant as an SMT-LIB term.
pub fn rational_term(q: &Rational) -> String {
    let neg = q.is_negative();
    let a = q.numer().magnitude();
    let d = q.denom().magnitude();
    let body = if d.is_one() { a.to_string() } else { format!("(/ {a} {d})") };
    if neg {
        format!("(- {body})")
    } else {
        body
    }
}

/// Renders a polynomial as an SMT-LIB term over the given variable names.
pub fn poly_to_term(p: &Polynomial, names: &[String]) -> String {
    assert!(p.nvars() <= names.len());
    if p.is_zero() {
        return "0".into();
    }
    let parts: Vec<String> = p
        .terms()
        .iter()
        .map(|(mono, coeff)| {
            let mut factors = Vec::new();
            for (v, &e) in mono.0.iter().enumerate() {
                for _ in 0..e {
                    factors.push(names[v].clone());
                }
            }
            if factors.is_empty() {
                rational_term(coeff)
            } else if coeff.is_one() && factors.len() == 1 {
                factors.pop().unwrap()
            } else {
                format!("(* {} {})", rational_term(coeff), factors.join(" "))
            }
        })
        .collect();
    if parts.len() == 1 {
        parts.into_iter().next().unwrap()
    } else {
        format!("(+ {})", parts.join(" "))
    }
}

/// Renders one model value; algebraic numbers come out as
/// `(root-of <term in ?x> <lo> <hi>)` with an isolating rational interval.
pub fn value_term(v: &RealAlgebraicNumber) -> String {
    match v.as_rational() {
        Some(q) => rational_term(q),
        None => {
            let (d, lo, hi) = v.defining().expect("algebraic without defining data");
            let poly = d.to_polynomial(1, 0);
            let names = vec!["?x".to_string()];
            format!(
                "(root-of {} {} {})",
                poly_to_term(&poly, &names),
                rational_term(&lo),
                rational_term(&hi)
            )
        }
    }
}

/// Renders a whole formula as a script; parsing the result reproduces the
/// formula. Used to dump generated instances.
pub fn script_text(f: &Formula) -> String {
    let mut out = String::from("(set-logic QF_NRA)\n");
    for name in f.var_names() {
        let _ = writeln!(out, "(declare-fun {name} () Real)");
    }
    for c in f.constraints() {
        let term = poly_to_term(&c.poly, f.var_names());
        let _ = match c.rel {
            Relation::Ne => writeln!(out, "(assert (not (= {term} 0)))"),
            rel => writeln!(out, "(assert ({} {term} 0))", rel.symbol()),
        };
    }
    out.push_str("(check-sat)\n");
    out
}

/// The `get-model` response for a satisfying assignment.
pub fn print_model(names: &[String], point: &[RealAlgebraicNumber]) -> String {
    assert_eq!(names.len(), point.len());
    let mut out = String::from("(\n");
    for (name, v) in names.iter().zip(point) {
        let _ = writeln!(out, "  (define-fun {name} () Real {})", value_term(v));
    }
    out.push(')');
    out
}
