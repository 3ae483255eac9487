//! The input language.
//!
//! ```text
//! script    := statement*
//! statement := ring | module | command
//! ring      := 'ring' NAME '=' 'poly' '(' 'p' '=' INT ',' 'vars' '=' '[' NAME (',' NAME)* ']'
//!              [',' 'order' '=' ('degrevlex' | 'lex' | 'deglex')] ')' ';'
//!            | 'ring' NAME '=' NAME '/' '(' POLY ')' ';'
//! module    := 'module' NAME 'over' NAME '=' 'coker' matrix ['degrees' '[' INT (',' INT)* ']'] ';'
//! matrix    := '[' [row (',' row)*] ']'
//! row       := '[' [POLY (',' POLY)*] ']'
//! command   := 'resolve' M ['length' INT] ';'
//!            | ('ext' | 'tor') M N ['max' INT] ';'
//!            | ('grade' | 'pdim' | 'emodule') M ';'
//!            | 'theta' M N ';'
//!            | ('chi' | 'xibar') M N ['index' INT] ';'
//!            | 'check' CHECK M [N] ['index' INT] ['max' INT] ';'
//!            | 'campaign' CHECK ['over' RING] ['trials' INT] ['seed' INT] ';'
//! ```
//!
//! Each row of a matrix belongs to one generator; the columns are the
//! relations. `coker [[x, y]]` is `R/(x, y)`, while `coker [[x], [y]]` is
//! `R^2` modulo the single relation `x e_1 + y e_2`. Generator degrees
//! default to zero; each relation's degree is read off its entries. A ring
//! name used where a module is expected stands for the ring itself as a
//! free module of rank one. Comments start with `#` or `//`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::freemap::GradedFreeMap;
use crate::module::PresentedModule;
use crate::poly::parse::{parse_prefix, Cursor};
use crate::poly::{MonomialOrder, PolyRing, Polynomial};
use crate::rigidity::CHECK_NAMES;
use crate::ring::RingContext;

/// A parse or name-resolution error with its source position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub offset: usize,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl Diagnostic {
    fn at(src: &str, offset: usize, message: String) -> Self {
        let offset = offset.min(src.len());
        let before = &src[..offset];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Diagnostic {
            offset,
            line,
            column,
            message,
        }
    }

    fn from_error(src: &str, fallback: usize, e: Error) -> Self {
        match e {
            Error::Parse { offset, message } => Diagnostic::at(src, offset, message),
            other => Diagnostic::at(src, fallback, other.to_string()),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for Diagnostic {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Resolve { m: String, length: Option<usize> },
    Ext { m: String, n: String, max: Option<usize> },
    Tor { m: String, n: String, max: Option<usize> },
    Grade { m: String },
    Pdim { m: String },
    Theta { m: String, n: String },
    Chi { m: String, n: String, index: Option<usize> },
    XiBar { m: String, n: String, index: Option<usize> },
    EModule { m: String },
    Check { name: String, m: String, n: Option<String>, index: Option<usize>, max: Option<usize> },
    Campaign { name: String, over: Option<String>, trials: Option<usize>, seed: Option<u64> },
}

#[derive(Clone, Debug)]
pub enum StatementKind {
    Ring { name: String, ring: Arc<RingContext> },
    Module { name: String, module: PresentedModule },
    Command(Command),
}

#[derive(Clone, Debug)]
pub struct Statement {
    pub kind: StatementKind,
    /// Source text of the statement, without the trailing `;`.
    pub text: String,
    pub line: usize,
}

#[derive(Clone, Debug, Default)]
pub struct SessionScript {
    pub statements: Vec<Statement>,
}

impl SessionScript {
    pub fn commands(&self) -> impl Iterator<Item = (&Command, &Statement)> {
        self.statements.iter().filter_map(|s| match &s.kind {
            StatementKind::Command(c) => Some((c, s)),
            _ => None,
        })
    }
}

#[derive(Clone, Debug)]
pub enum Binding {
    Ring(Arc<RingContext>),
    Module(PresentedModule),
}

impl Binding {
    pub fn as_module(&self) -> PresentedModule {
        match self {
            Binding::Ring(r) => PresentedModule::free(r.clone(), vec![0]),
            Binding::Module(m) => m.clone(),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    cur: Cursor<'a>,
    names: BTreeMap<String, Binding>,
    degree_cap: Option<u32>,
}

type PResult<T> = std::result::Result<T, Diagnostic>;

impl<'a> Parser<'a> {
    fn diag(&self, offset: usize, message: impl Into<String>) -> Diagnostic {
        Diagnostic::at(self.src, offset, message.into())
    }

    fn lift<T>(&self, r: Result<T>) -> PResult<T> {
        let pos = self.cur.pos();
        r.map_err(|e| Diagnostic::from_error(self.src, pos, e))
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        let r = self.cur.expect(c);
        self.lift(r)
    }

    fn name(&mut self, what: &str) -> PResult<(String, usize)> {
        self.cur.skip_ws();
        let at = self.cur.pos();
        let r = self.cur.expect_ident(what).map(str::to_string);
        Ok((self.lift(r)?, at))
    }

    fn keyword(&mut self, word: &str) -> PResult<()> {
        if self.cur.keyword(word) {
            Ok(())
        } else {
            let e = self.cur.unexpected(format!("expected `{word}`"));
            Err(self.lift::<()>(Err(e)).unwrap_err())
        }
    }

    fn uint(&mut self, what: &str) -> PResult<u64> {
        let r = self.cur.uint(what);
        self.lift(r)
    }

    fn int(&mut self, what: &str) -> PResult<i64> {
        let r = self.cur.int(what);
        self.lift(r)
    }

    fn fresh(&self, name: &str, at: usize) -> PResult<()> {
        if self.names.contains_key(name) {
            Err(self.diag(at, format!("`{name}` is already declared")))
        } else {
            Ok(())
        }
    }

    fn lookup_ring(&self, name: &str, at: usize) -> PResult<Arc<RingContext>> {
        match self.names.get(name) {
            Some(Binding::Ring(r)) => Ok(r.clone()),
            Some(Binding::Module(_)) => Err(self.diag(at, format!("`{name}` is a module, not a ring"))),
            None => Err(self.diag(at, format!("undeclared ring `{name}`"))),
        }
    }

    fn module_name(&mut self) -> PResult<String> {
        let (name, at) = self.name("a module name")?;
        if self.names.contains_key(&name) {
            Ok(name)
        } else {
            Err(self.diag(at, format!("undeclared name `{name}`")))
        }
    }

    fn script(&mut self) -> PResult<SessionScript> {
        let mut statements = Vec::new();
        while !self.cur.at_end() {
            let start = self.cur.pos();
            let (word, at) = self.name("a statement")?;
            let kind = match word.as_str() {
                "ring" => self.ring_decl()?,
                "module" => self.module_decl()?,
                _ => StatementKind::Command(self.command(&word, at)?),
            };
            let end = self.cur.pos();
            self.expect(';')?;
            let line = Diagnostic::at(self.src, start, String::new()).line;
            statements.push(Statement {
                kind,
                text: self.src[start..end].trim().to_string(),
                line,
            });
        }
        Ok(SessionScript { statements })
    }

    fn ring_decl(&mut self) -> PResult<StatementKind> {
        let (name, at) = self.name("a ring name")?;
        self.fresh(&name, at)?;
        self.expect('=')?;
        let (head, head_at) = self.name("`poly` or a ring name")?;
        let ring = if head == "poly" {
            self.poly_ring()?
        } else {
            let base = self.lookup_ring(&head, head_at)?;
            if base.is_hypersurface() {
                return Err(self.diag(head_at, "quotients are only formed from polynomial rings"));
            }
            self.expect('/')?;
            self.expect('(')?;
            let f = self.polynomial(base.poly())?.0;
            self.expect(')')?;
            let r = RingContext::hypersurface(base.poly().clone(), f);
            self.lift(r)?
        };
        let ring = match self.degree_cap {
            Some(cap) => ring.with_degree_cap(cap),
            None => ring,
        };
        self.names.insert(name.clone(), Binding::Ring(ring.clone()));
        Ok(StatementKind::Ring { name, ring })
    }

    fn poly_ring(&mut self) -> PResult<Arc<RingContext>> {
        self.expect('(')?;
        self.keyword("p")?;
        self.expect('=')?;
        let p = self.uint("a prime")?;
        self.expect(',')?;
        self.keyword("vars")?;
        self.expect('=')?;
        self.expect('[')?;
        let mut vars = Vec::new();
        loop {
            vars.push(self.name("a variable name")?.0);
            if !self.cur.eat(',') {
                break;
            }
        }
        self.expect(']')?;
        let mut order = MonomialOrder::DegRevLex;
        if self.cur.eat(',') {
            self.keyword("order")?;
            self.expect('=')?;
            let (o, at) = self.name("a monomial order")?;
            order = MonomialOrder::from_name(&o)
                .ok_or_else(|| self.diag(at, format!("unknown monomial order `{o}`")))?;
        }
        self.expect(')')?;
        let poly = PolyRing::new(p, &vars, order);
        Ok(RingContext::regular(self.lift(poly)?))
    }

    fn polynomial(&mut self, ring: &PolyRing) -> PResult<(Polynomial, usize)> {
        self.cur.skip_ws();
        let at = self.cur.pos();
        let (poly, end) = parse_prefix(ring, self.src, at).map_err(|e| Diagnostic::from_error(self.src, at, e))?;
        self.cur = Cursor::new(self.src, end);
        Ok((poly, at))
    }

    fn module_decl(&mut self) -> PResult<StatementKind> {
        let (name, at) = self.name("a module name")?;
        self.fresh(&name, at)?;
        self.keyword("over")?;
        let (ring_name, ring_at) = self.name("a ring name")?;
        let ring = self.lookup_ring(&ring_name, ring_at)?;
        self.expect('=')?;
        self.keyword("coker")?;
        let matrix_at = self.cur.pos();
        let rows = self.matrix(ring.poly())?;
        let mut degrees = vec![0i32; rows.len()];
        if self.cur.keyword("degrees") {
            self.cur.skip_ws();
            let deg_at = self.cur.pos();
            self.expect('[')?;
            let mut given = Vec::new();
            if !self.cur.eat(']') {
                loop {
                    let d = self.int("a degree")?;
                    given.push(i32::try_from(d).map_err(|_| self.diag(deg_at, "degree out of range"))?);
                    if !self.cur.eat(',') {
                        break;
                    }
                }
                self.expect(']')?;
            }
            if given.len() != rows.len() {
                return Err(self.diag(
                    deg_at,
                    format!("{} degrees given for {} generators", given.len(), rows.len()),
                ));
            }
            degrees = given;
        }
        let module = self.build_module(&ring, rows, degrees, matrix_at)?;
        self.names.insert(name.clone(), Binding::Module(module.clone()));
        Ok(StatementKind::Module { name, module })
    }

    fn matrix(&mut self, ring: &PolyRing) -> PResult<Vec<Vec<(Polynomial, usize)>>> {
        self.expect('[')?;
        let mut rows = Vec::new();
        if self.cur.eat(']') {
            return Ok(rows);
        }
        loop {
            self.expect('[')?;
            let mut row = Vec::new();
            if !self.cur.eat(']') {
                loop {
                    row.push(self.polynomial(ring)?);
                    if !self.cur.eat(',') {
                        break;
                    }
                }
                self.expect(']')?;
            }
            rows.push(row);
            if !self.cur.eat(',') {
                break;
            }
        }
        self.expect(']')?;
        Ok(rows)
    }

    fn build_module(
        &self,
        ring: &Arc<RingContext>,
        rows: Vec<Vec<(Polynomial, usize)>>,
        degrees: Vec<i32>,
        at: usize,
    ) -> PResult<PresentedModule> {
        let ncols = rows.first().map_or(0, |r| r.len());
        for row in &rows {
            if row.len() != ncols {
                let pos = row.first().map_or(at, |e| e.1);
                return Err(self.diag(pos, format!("row has {} entries, expected {ncols}", row.len())));
            }
        }
        let mut source = Vec::with_capacity(ncols);
        for j in 0..ncols {
            let mut col_deg: Option<i64> = None;
            for (i, row) in rows.iter().enumerate() {
                let (p, pos) = &row[j];
                if p.is_zero() {
                    continue;
                }
                let d = match p.homogeneous_degree() {
                    Some(d) => d as i64 + degrees[i] as i64,
                    None => return Err(self.diag(*pos, "entry is not homogeneous")),
                };
                match col_deg {
                    None => col_deg = Some(d),
                    Some(c) if c != d => {
                        return Err(self.diag(
                            *pos,
                            format!("entry has degree {} but its relation has degree {c}", d - degrees[i] as i64),
                        ))
                    }
                    _ => {}
                }
            }
            source.push(col_deg.unwrap_or(0) as i32);
        }
        let entries: Vec<Vec<Polynomial>> = rows.into_iter().map(|r| r.into_iter().map(|e| e.0).collect()).collect();
        let map = GradedFreeMap::new(ring.clone(), degrees, source, entries);
        Ok(PresentedModule::new(map.map_err(|e| Diagnostic::from_error(self.src, at, e))?))
    }

    /// Optional `key INT` arguments in any order.
    fn options(&mut self, allowed: &[&str]) -> PResult<BTreeMap<String, u64>> {
        let mut out = BTreeMap::new();
        loop {
            self.cur.skip_ws();
            let at = self.cur.pos();
            let save = self.cur.clone();
            let Some(word) = self.cur.ident() else { break };
            if !allowed.contains(&word) {
                self.cur = save;
                return Err(self.diag(at, format!("unexpected `{word}`; expected one of {}", allowed.join(", "))));
            }
            if out.contains_key(word) {
                return Err(self.diag(at, format!("`{word}` given twice")));
            }
            let v = self.uint("an integer")?;
            out.insert(word.to_string(), v);
        }
        Ok(out)
    }

    fn command(&mut self, word: &str, at: usize) -> PResult<Command> {
        let us = |v: Option<&u64>| v.map(|&x| x as usize);
        let cmd = match word {
            "resolve" => {
                let m = self.module_name()?;
                let o = self.options(&["length"])?;
                Command::Resolve { m, length: us(o.get("length")) }
            }
            "ext" | "tor" => {
                let m = self.module_name()?;
                let n = self.module_name()?;
                let o = self.options(&["max"])?;
                let max = us(o.get("max"));
                if word == "ext" {
                    Command::Ext { m, n, max }
                } else {
                    Command::Tor { m, n, max }
                }
            }
            "grade" => Command::Grade { m: self.module_name()? },
            "pdim" => Command::Pdim { m: self.module_name()? },
            "emodule" => Command::EModule { m: self.module_name()? },
            "theta" => {
                let m = self.module_name()?;
                let n = self.module_name()?;
                Command::Theta { m, n }
            }
            "chi" | "xibar" => {
                let m = self.module_name()?;
                let n = self.module_name()?;
                let o = self.options(&["index"])?;
                let index = us(o.get("index"));
                if word == "chi" {
                    Command::Chi { m, n, index }
                } else {
                    Command::XiBar { m, n, index }
                }
            }
            "check" => {
                let (name, name_at) = self.name("a check name")?;
                if !CHECK_NAMES.contains(&name.as_str()) {
                    return Err(self.diag(name_at, format!("unknown check `{name}`")));
                }
                let m = self.module_name()?;
                let save = self.cur.clone();
                let n = match self.cur.ident() {
                    Some(w) if self.names.contains_key(w) => Some(w.to_string()),
                    _ => {
                        self.cur = save;
                        None
                    }
                };
                let o = self.options(&["index", "max"])?;
                Command::Check { name, m, n, index: us(o.get("index")), max: us(o.get("max")) }
            }
            "campaign" => {
                let (name, name_at) = self.name("a check name")?;
                if name != "rigidity" && !CHECK_NAMES.contains(&name.as_str()) {
                    return Err(self.diag(name_at, format!("unknown campaign `{name}`")));
                }
                let mut over = None;
                if self.cur.keyword("over") {
                    let (r, r_at) = self.name("a ring name")?;
                    self.lookup_ring(&r, r_at)?;
                    over = Some(r);
                }
                let o = self.options(&["trials", "seed"])?;
                Command::Campaign { name, over, trials: us(o.get("trials")), seed: o.get("seed").copied() }
            }
            _ => return Err(self.diag(at, format!("unknown statement `{word}`"))),
        };
        Ok(cmd)
    }
}

/// Parses and elaborates a script: rings and modules are built, names are
/// resolved, and entries are checked for homogeneity.
pub fn parse_script(src: &str) -> std::result::Result<SessionScript, Diagnostic> {
    parse_script_with(src, None)
}

/// Same as [`parse_script`] with a degree cap applied to every ring.
pub fn parse_script_with(src: &str, degree_cap: Option<u32>) -> std::result::Result<SessionScript, Diagnostic> {
    let mut p = Parser {
        src,
        cur: Cursor::new(src, 0),
        names: BTreeMap::new(),
        degree_cap,
    };
    p.script()
}

/// Name bindings of a parsed script.
pub(crate) fn bindings(script: &SessionScript) -> BTreeMap<String, Binding> {
    let mut out = BTreeMap::new();
    for s in &script.statements {
        match &s.kind {
            StatementKind::Ring { name, ring } => {
                out.insert(name.clone(), Binding::Ring(ring.clone()));
            }
            StatementKind::Module { name, module } => {
                out.insert(name.clone(), Binding::Module(module.clone()));
            }
            StatementKind::Command(_) => {}
        }
    }
    out
}

/// Declarations of `ring`: the polynomial ring under `poly_name` and, for
/// a hypersurface, the quotient under `quotient_name`.
pub fn render_ring_decls(ring: &RingContext, poly_name: &str, quotient_name: &str) -> String {
    let poly = ring.poly();
    let mut out = format!(
        "ring {poly_name} = poly(p={}, vars=[{}], order={});\n",
        ring.characteristic(),
        poly.var_names().join(", "),
        poly.order().name()
    );
    if let Some(f) = ring.hypersurface_equation() {
        out.push_str(&format!("ring {quotient_name} = {poly_name} / ({});\n", poly.render(f)));
    }
    out
}

pub fn render_module_decl(m: &PresentedModule, name: &str, ring_name: &str) -> String {
    let rows: Vec<String> = m
        .presentation()
        .render_rows()
        .into_iter()
        .map(|r| format!("[{}]", r.join(", ")))
        .collect();
    let degrees: Vec<String> = m.generator_degrees().iter().map(|d| d.to_string()).collect();
    let mut out = format!("module {name} over {ring_name} = coker [{}]", rows.join(", "));
    if m.generator_degrees().iter().any(|&d| d != 0) {
        out.push_str(&format!(" degrees [{}]", degrees.join(", ")));
    }
    out.push_str(";\n");
    out
}
