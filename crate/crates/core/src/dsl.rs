//! Concrete syntax: the theory language, predicates with their context,
//! and generator expressions.
//!
//! ```text
//! theory   := "theory" IDENT decl*
//! decl     := "sort" IDENT | "rel" IDENT ":" IDENT+ | "axiom" IDENT ":" ctx formula "|-" formula
//! ctx      := "[" [binding ("," binding)*] "]"
//! binding  := IDENT ":" IDENT
//! formula  := "true" | IDENT "(" [IDENT ("," IDENT)*] ")" | IDENT "=" IDENT
//!           | formula "/\" formula | "exists" IDENT ":" IDENT "." formula | "(" formula ")"
//! ```
//!
//! `/\` associates to the left and an `exists` body extends as far right
//! as possible. `#` starts a comment running to the end of the line.

use crate::error::{Error, Result};
use crate::formulas::{Formula, Sequent, Theory};
use crate::laws::Expr;
use crate::typed::{Context, Sort};
use crate::wiring::Generator;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Colon,
    Comma,
    LBrack,
    RBrack,
    LParen,
    RParen,
    Eq,
    And,
    Turnstile,
    Dot,
    Semi,
    Plus,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Colon => "`:`".into(),
            Tok::Comma => "`,`".into(),
            Tok::LBrack => "`[`".into(),
            Tok::RBrack => "`]`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Eq => "`=`".into(),
            Tok::And => "`/\\`".into(),
            Tok::Turnstile => "`|-`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Plus => "`+`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\'' || c == '′'
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let mut advance = |n: usize, i: &mut usize| {
            *i += n;
            col += n;
        };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            advance(1, &mut i);
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let two: String = chars[i..(i + 2).min(chars.len())].iter().collect();
        let tok = if two == "/\\" {
            advance(2, &mut i);
            Tok::And
        } else if two == "|-" {
            advance(2, &mut i);
            Tok::Turnstile
        } else if is_ident_char(c) {
            let start = i;
            while i < chars.len() && is_ident_char(chars[i]) {
                advance(1, &mut i);
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else {
            let t = match c {
                ':' => Tok::Colon,
                ',' => Tok::Comma,
                '[' => Tok::LBrack,
                ']' => Tok::RBrack,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '=' => Tok::Eq,
                '∧' => Tok::And,
                '⊢' => Tok::Turnstile,
                '.' => Tok::Dot,
                ';' | '⨾' => Tok::Semi,
                '+' | '⊗' => Tok::Plus,
                _ => return Err(Error::Parse { line, col, msg: format!("unexpected character {c:?}") }),
            };
            advance(1, &mut i);
            t
        };
        out.push(Spanned { tok, line: l0, col: c0 });
    }
    out.push(Spanned { tok: Tok::End, line, col });
    Ok(out)
}

const KEYWORDS: [&str; 6] = ["theory", "sort", "rel", "axiom", "true", "exists"];

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    /// `None` parses against an open signature.
    sig: Option<Theory>,
}

impl Parser {
    fn new(text: &str, sig: Option<&Theory>) -> Result<Parser> {
        Ok(Parser { toks: lex(text)?, pos: 0, sig: sig.cloned() })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn here(&self) -> (usize, usize) {
        let t = &self.toks[self.pos];
        (t.line, t.col)
    }

    fn error_at(&self, at: (usize, usize), msg: impl Into<String>) -> Error {
        Error::Parse { line: at.0, col: at.1, msg: msg.into() }
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        self.error_at(self.here(), msg)
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!("expected {}, found {}", want.describe(), self.peek().describe())))
        }
    }

    fn keyword(&mut self, kw: &str) -> bool {
        if *self.peek() == Tok::Ident(kw.into()) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn ident(&mut self, what: &str) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                self.bump();
                Ok(s)
            }
            t => Err(self.error(format!("expected {what}, found {}", t.describe()))),
        }
    }

    fn sort(&mut self) -> Result<Sort> {
        let at = self.here();
        let s = Sort::new(self.ident("a sort")?);
        if let Some(th) = &self.sig {
            if !th.sorts.contains(&s) {
                return Err(self.error_at(at, format!("unknown sort {s}")));
            }
        }
        Ok(s)
    }

    fn context(&mut self) -> Result<(Vec<String>, Context)> {
        self.expect(Tok::LBrack)?;
        let (mut names, mut sorts) = (Vec::new(), Vec::new());
        if *self.peek() != Tok::RBrack {
            loop {
                let at = self.here();
                let name = self.ident("a variable")?;
                if names.contains(&name) {
                    return Err(self.error_at(at, format!("variable {name} bound twice")));
                }
                self.expect(Tok::Colon)?;
                sorts.push(self.sort()?);
                names.push(name);
                if *self.peek() != Tok::Comma {
                    break;
                }
                self.bump();
            }
        }
        self.expect(Tok::RBrack)?;
        Ok((names, sorts))
    }

    fn formula(&mut self, env: &mut Vec<(String, Sort)>) -> Result<Formula> {
        let mut f = self.unary(env)?;
        while *self.peek() == Tok::And {
            self.bump();
            let g = self.unary(env)?;
            f = Formula::and(f, g);
        }
        Ok(f)
    }

    fn var(&mut self, env: &[(String, Sort)]) -> Result<(usize, Sort)> {
        let at = self.here();
        let name = self.ident("a variable")?;
        match env.iter().rposition(|(n, _)| *n == name) {
            Some(i) => Ok((i, env[i].1.clone())),
            None => Err(self.error_at(at, format!("unbound variable {name}"))),
        }
    }

    fn unary(&mut self, env: &mut Vec<(String, Sort)>) -> Result<Formula> {
        let at = self.here();
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let f = self.formula(env)?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Ident(k) if k == "true" => {
                self.bump();
                Ok(Formula::True)
            }
            Tok::Ident(k) if k == "exists" => {
                self.bump();
                let name = self.ident("a variable")?;
                self.expect(Tok::Colon)?;
                let s = self.sort()?;
                self.expect(Tok::Dot)?;
                env.push((name, s.clone()));
                let body = self.formula(env);
                env.pop();
                Ok(Formula::exists(s, body?))
            }
            Tok::Ident(_) => {
                if self.toks[self.pos + 1].tok == Tok::LParen {
                    let rel = self.ident("a relation")?;
                    self.bump();
                    let mut args = Vec::new();
                    let mut sorts = Vec::new();
                    if *self.peek() != Tok::RParen {
                        loop {
                            let (v, s) = self.var(env)?;
                            args.push(v);
                            sorts.push(s);
                            if *self.peek() != Tok::Comma {
                                break;
                            }
                            self.bump();
                        }
                    }
                    self.expect(Tok::RParen)?;
                    if let Some(th) = &self.sig {
                        let arity = th.relsyms.get(&rel).ok_or_else(|| self.error_at(at, format!("unknown relation {rel}")))?;
                        if *arity != sorts {
                            return Err(self.error_at(
                                at,
                                format!("{rel} expects {}, applied to {}", show_sorts(arity), show_sorts(&sorts)),
                            ));
                        }
                    }
                    Ok(Formula::Atom(rel, args))
                } else {
                    let (a, sa) = self.var(env)?;
                    self.expect(Tok::Eq)?;
                    let (b, sb) = self.var(env)?;
                    if sa != sb {
                        return Err(self.error_at(at, format!("equality between sorts {sa} and {sb}")));
                    }
                    Ok(Formula::eq(a, b))
                }
            }
            t => Err(self.error(format!("expected a formula, found {}", t.describe()))),
        }
    }

    fn pred(&mut self) -> Result<(Context, Formula)> {
        let (names, sorts) = self.context()?;
        let mut env: Vec<(String, Sort)> = names.into_iter().zip(sorts.iter().cloned()).collect();
        let f = self.formula(&mut env)?;
        Ok((sorts, f))
    }

    fn finish(&self) -> Result<()> {
        match self.peek() {
            Tok::End => Ok(()),
            t => Err(self.error(format!("unexpected {} after the end", t.describe()))),
        }
    }
}

fn show_sorts(s: &[Sort]) -> String {
    let v: Vec<&str> = s.iter().map(Sort::as_str).collect();
    format!("({})", v.join(" "))
}

/// Parses a theory, checking sorts, arities and sortedness as it goes.
pub fn parse_theory(text: &str) -> Result<Theory> {
    let mut th = Theory::default();
    let mut p = Parser::new(text, None)?;
    if !p.keyword("theory") {
        return Err(p.error(format!("expected `theory`, found {}", p.peek().describe())));
    }
    th.name = p.ident("a theory name")?;
    loop {
        let at = p.here();
        if p.keyword("sort") {
            let s = p.ident("a sort name")?;
            if !th.sorts.insert(Sort::new(s.clone())) {
                return Err(p.error_at(at, format!("sort {s} declared twice")));
            }
        } else if p.keyword("rel") {
            let r = p.ident("a relation name")?;
            p.expect(Tok::Colon)?;
            let mut arity = Vec::new();
            while matches!(p.peek(), Tok::Ident(s) if !KEYWORDS.contains(&s.as_str())) {
                let sat = p.here();
                let s = Sort::new(p.ident("a sort")?);
                if !th.sorts.contains(&s) {
                    return Err(p.error_at(sat, format!("unknown sort {s}")));
                }
                arity.push(s);
            }
            if arity.is_empty() {
                return Err(p.error("a relation needs at least one sort"));
            }
            if th.relsyms.insert(r.clone(), arity).is_some() {
                return Err(p.error_at(at, format!("relation {r} declared twice")));
            }
        } else if p.keyword("axiom") {
            let name = p.ident("an axiom name")?;
            p.expect(Tok::Colon)?;
            p.sig = Some(th.clone());
            let parsed = (|| -> Result<Sequent> {
                let (names, context) = p.context()?;
                let mut env: Vec<(String, Sort)> = names.into_iter().zip(context.iter().cloned()).collect();
                let lhs = p.formula(&mut env)?;
                p.expect(Tok::Turnstile)?;
                let rhs = p.formula(&mut env)?;
                Ok(Sequent { name, context, lhs, rhs })
            })();
            p.sig = None;
            th.axioms.push(parsed?);
        } else {
            p.finish()?;
            break;
        }
    }
    Ok(th)
}

/// Parses `[x:X, ..] formula`; against `theory` when given, otherwise
/// against an open signature.
pub fn parse_pred(text: &str, theory: Option<&Theory>) -> Result<(Context, Formula)> {
    let mut p = Parser::new(text, theory)?;
    let r = p.pred()?;
    p.finish()?;
    Ok(r)
}

/// Parses a formula over the named context variables.
pub fn parse_formula(text: &str, vars: &[(&str, Sort)], theory: Option<&Theory>) -> Result<Formula> {
    let mut p = Parser::new(text, theory)?;
    let mut env: Vec<(String, Sort)> = vars.iter().map(|(n, s)| (n.to_string(), s.clone())).collect();
    let f = p.formula(&mut env)?;
    p.finish()?;
    Ok(f)
}

pub fn show_context(c: &[Sort]) -> String {
    let parts: Vec<String> = c.iter().enumerate().map(|(i, s)| format!("x{i}:{s}")).collect();
    format!("[{}]", parts.join(", "))
}

/// `[x0:X, ..] φ`, readable back by [`parse_pred`].
pub fn show_pred(c: &[Sort], phi: &Formula) -> String {
    format!("{} {}", show_context(c), phi.show(c.len()))
}

/// The theory in the input syntax.
pub fn show_theory(th: &Theory) -> String {
    let mut out = format!("theory {}\n", th.name);
    for s in &th.sorts {
        out.push_str(&format!("sort {s}\n"));
    }
    for (r, a) in &th.relsyms {
        let v: Vec<&str> = a.iter().map(Sort::as_str).collect();
        out.push_str(&format!("rel {r} : {}\n", v.join(" ")));
    }
    for ax in &th.axioms {
        let n = ax.context.len();
        out.push_str(&format!("axiom {} : {} {} |- {}\n", ax.name, show_context(&ax.context), ax.lhs.show(n), ax.rhs.show(n)));
    }
    out
}

/// Parses a generator expression such as `delta ; (epsilon + id)`;
/// `+` binds tighter than `;`.
pub fn parse_expr(text: &str) -> Result<Expr> {
    let mut p = Parser::new(text, None)?;
    let e = expr_seq(&mut p)?;
    p.finish()?;
    e.arity()?;
    Ok(e)
}

fn expr_seq(p: &mut Parser) -> Result<Expr> {
    let mut e = expr_par(p)?;
    while *p.peek() == Tok::Semi {
        p.bump();
        let at = p.here();
        let next = expr_par(p)?;
        let (_, n) = e.arity()?;
        let (m, _) = next.arity()?;
        if n != m {
            return Err(p.error_at(at, format!("composing an expression with codomain {n} and one with domain {m}")));
        }
        e = e.then(next);
    }
    Ok(e)
}

fn expr_par(p: &mut Parser) -> Result<Expr> {
    let mut e = expr_atom(p)?;
    while *p.peek() == Tok::Plus {
        p.bump();
        e = e.par(expr_atom(p)?);
    }
    Ok(e)
}

fn expr_atom(p: &mut Parser) -> Result<Expr> {
    let at = p.here();
    match p.bump() {
        Tok::LParen => {
            let e = expr_seq(p)?;
            p.expect(Tok::RParen)?;
            Ok(e)
        }
        Tok::Ident(name) => {
            let mut full = name.clone();
            if *p.peek() == Tok::Colon {
                p.bump();
                match p.bump() {
                    Tok::Ident(n) => full = format!("{name}:{n}"),
                    t => return Err(p.error_at(at, format!("expected a number after `:`, found {}", t.describe()))),
                }
            }
            Generator::parse(&full).map(Expr::Gen).ok_or_else(|| p.error_at(at, format!("unknown generator {full}")))
        }
        t => Err(p.error_at(at, format!("expected a generator, found {}", t.describe()))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::typed::ctx;

    pub const PREORDER: &str = "theory Preorder
sort X
rel P : X X
axiom refl : [x:X] true |- P(x,x)
axiom trans : [x:X, z:X] exists y:X. P(x,y) /\\ P(y,z) |- P(x,z)
";

    #[test]
    fn preorder_source() {
        let th = parse_theory(PREORDER).unwrap();
        assert_eq!((th.sorts.len(), th.relsyms.len(), th.axioms.len()), (1, 1, 2));
        let p = |a, b| Formula::atom("P", &[a, b]);
        assert_eq!(th.axioms[1].lhs, Formula::exists("X", Formula::and(p(0, 2), p(2, 1))));
        assert_eq!(parse_theory(&show_theory(&th)).unwrap(), th);
    }

    #[test]
    fn empty_theory() {
        let th = parse_theory("theory Empty").unwrap();
        assert!(th.sorts.is_empty() && th.relsyms.is_empty() && th.axioms.is_empty());
    }

    #[test]
    fn diagnostics_have_locations() {
        match parse_theory("theory T\nrel P : X X") {
            Err(Error::Parse { line: 2, col: 9, msg }) => assert!(msg.contains("unknown sort X")),
            r => panic!("{r:?}"),
        }
        match parse_theory("theory T\nsort X\nrel P : X\naxiom a : [x:X] P(x,x) |- true") {
            Err(Error::Parse { line: 4, col: 17, .. }) => {}
            r => panic!("{r:?}"),
        }
        assert!(matches!(parse_theory("theory T\nsort X\n$"), Err(Error::Parse { line: 3, col: 1, .. })));
    }

    #[test]
    fn predicates_round_trip() {
        let th = parse_theory(PREORDER).unwrap();
        match parse_pred("[a:X, b:X] (exists m:X. P(a,m)) /\\ P(m,b)", Some(&th)) {
            Err(Error::Parse { msg, .. }) => assert!(msg.contains("unbound variable m")),
            r => panic!("{r:?}"),
        }
        let (c, f) = parse_pred("[a:X, b:X] (exists m:X. P(a,m) /\\ P(m,b)) /\\ a = b", Some(&th)).unwrap();
        assert_eq!(c, ctx(&["X", "X"]));
        assert_eq!(parse_pred(&show_pred(&c, &f), Some(&th)).unwrap(), (c.clone(), f.clone()));
        let chain = Formula::and(Formula::and(Formula::True, Formula::True), Formula::True);
        assert_eq!(parse_pred(&show_pred(&[], &chain), None).unwrap().1, chain);
    }

    #[test]
    fn expressions() {
        let e = parse_expr("delta ; (epsilon + id)").unwrap();
        assert_eq!(e.arity().unwrap(), (1, 1));
        assert_eq!(e.eval_w().unwrap(), crate::wiring::WMor::identity(1));
        assert!(parse_expr("delta ; mu ; mu").is_err());
        assert_eq!(parse_expr("id:2 ; mu").unwrap().arity().unwrap(), (2, 1));
    }
}
