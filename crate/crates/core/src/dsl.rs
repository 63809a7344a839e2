//! The `.sm` input language: declarations of rings, ideals, modules and
//! complexes, plus commands that drive the engine. Parsing is recursive
//! descent with line/column error reporting; running a session emits one JSON
//! record per command.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{EngineError, Result};
use crate::field::FieldSpec;
use crate::groebner::ModuleVector;
use crate::homology::{self, Completeness};
use crate::module::{FPModule, FreeModule, ModuleMap};
use crate::multiplicity;
use crate::resolution::{detect_periodicity, free_resolution, FreeComplex};
use crate::ring::{parse_polynomial, MonomialOrder, Polynomial, QuotientRing, RingSpec};

/// Global overrides applied while parsing ring declarations.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    pub field: Option<FieldSpec>,
    pub order: Option<MonomialOrder>,
}

#[derive(Debug, Clone)]
pub enum Arg {
    Int(i64),
    Module(FPModule, String),
    Ideal(Vec<Polynomial>, String),
    Complex(String),
}

#[derive(Debug, Clone)]
pub struct Command {
    pub name: String,
    pub args: Vec<Arg>,
    pub line: usize,
}

#[derive(Debug, Clone)]
enum Statement {
    Ring(String),
    Ideal(String),
    Module(String),
    Complex(String),
    Command(Command),
}

#[derive(Debug, Clone)]
pub struct DeclaredRing {
    pub ring: Arc<QuotientRing>,
}

#[derive(Debug, Clone)]
pub struct DeclaredComplex {
    pub modules: Vec<FreeModule>,
    pub maps: Vec<ModuleMap>,
}

/// A parsed program: named declarations plus the command list, in source
/// order.
#[derive(Debug, Clone, Default)]
pub struct Session {
    rings: BTreeMap<String, DeclaredRing>,
    ideals: BTreeMap<String, Vec<Polynomial>>,
    modules: BTreeMap<String, FPModule>,
    complexes: BTreeMap<String, DeclaredComplex>,
    statements: Vec<Statement>,
}

impl Session {
    pub fn commands(&self) -> impl Iterator<Item = &Command> {
        self.statements.iter().filter_map(|s| match s {
            Statement::Command(c) => Some(c),
            _ => None,
        })
    }

    pub fn module(&self, name: &str) -> Option<&FPModule> {
        self.modules.get(name)
    }

    pub fn complex(&self, name: &str) -> Option<&DeclaredComplex> {
        self.complexes.get(name)
    }

    /// Canonical source form; parsing it again yields a session that prints
    /// identically.
    pub fn pretty(&self) -> String {
        let mut out = String::new();
        for s in &self.statements {
            match s {
                Statement::Ring(name) => {
                    let r = &self.rings[name].ring;
                    let field = fmt_field(&r.base.field);
                    let vars = r.base.vars.join(", ");
                    let order = fmt_order(r.base.order);
                    if r.relations.is_empty() {
                        let _ = writeln!(out, "ring {name} = {field}[{vars}] {order};");
                    } else {
                        let rels: Vec<String> =
                            r.relations.iter().map(|f| f.to_string()).collect();
                        let _ = writeln!(
                            out,
                            "ring {name} = {field}[{vars}] {order} / ({});",
                            rels.join(", ")
                        );
                    }
                }
                Statement::Ideal(name) => {
                    let gens: Vec<String> =
                        self.ideals[name].iter().map(|f| f.to_string()).collect();
                    let _ = writeln!(out, "ideal {name} = ({});", gens.join(", "));
                }
                Statement::Module(name) => {
                    let m = &self.modules[name];
                    let _ = writeln!(
                        out,
                        "module {name} = coker {} shifts {};",
                        fmt_matrix(&m.presentation),
                        fmt_shifts(m.gen_shifts())
                    );
                }
                Statement::Complex(name) => {
                    let c = &self.complexes[name];
                    let mats: Vec<String> = c.maps.iter().map(fmt_matrix).collect();
                    let _ = writeln!(
                        out,
                        "complex {name} = ({}) shifts {};",
                        mats.join(", "),
                        fmt_shifts(&c.modules[0].shifts)
                    );
                }
                Statement::Command(c) => {
                    let args: Vec<String> = c.args.iter().map(fmt_arg).collect();
                    let _ = writeln!(out, "{}({});", c.name, args.join(", "));
                }
            }
        }
        out
    }
}

fn fmt_field(f: &FieldSpec) -> String {
    if f.characteristic == 0 {
        "QQ".into()
    } else {
        format!("FP{}", f.characteristic)
    }
}

fn fmt_order(o: MonomialOrder) -> &'static str {
    match o {
        MonomialOrder::Grevlex => "grevlex",
        MonomialOrder::Lex => "lex",
    }
}

fn fmt_shifts(shifts: &[i64]) -> String {
    let parts: Vec<String> = shifts.iter().map(|s| s.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn fmt_matrix(map: &ModuleMap) -> String {
    let rows: Vec<String> = map
        .matrix
        .iter()
        .map(|row| {
            let cells: Vec<String> = row.iter().map(|f| f.to_string()).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

fn fmt_arg(a: &Arg) -> String {
    match a {
        Arg::Int(n) => n.to_string(),
        Arg::Module(_, t) => t.clone(),
        Arg::Ideal(_, t) => t.clone(),
        Arg::Complex(n) => n.clone(),
    }
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
}

impl Cursor {
    fn new(src: &str) -> Cursor {
        Cursor { chars: src.chars().collect(), pos: 0, line: 1, col: 1 }
    }

    fn err(&self, msg: impl Into<String>) -> EngineError {
        EngineError::Parse { line: self.line, col: self.col, msg: msg.into() }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        loop {
            match self.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('#') => {
                    while let Some(c) = self.peek() {
                        if c == '\n' {
                            break;
                        }
                        self.bump();
                    }
                }
                _ => break,
            }
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.peek().is_none()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            Some(got) if got == c => {
                self.bump();
                Ok(())
            }
            Some(got) => Err(self.err(format!("expected '{c}', found '{got}'"))),
            None => Err(self.err(format!("expected '{c}', found end of input"))),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let mut s = String::new();
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
            _ => return Err(self.err("expected an identifier")),
        }
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' {
                s.push(c);
                self.bump();
            } else {
                break;
            }
        }
        Ok(s)
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        let save = (self.pos, self.line, self.col);
        if let Ok(id) = self.ident() {
            if id == kw {
                return true;
            }
        }
        (self.pos, self.line, self.col) = save;
        false
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let mut s = String::new();
        if self.peek() == Some('-') {
            s.push('-');
            self.bump();
        }
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() {
                s.push(c);
                self.bump();
            } else {
                break;
            }
        }
        s.parse().map_err(|_| self.err("expected an integer"))
    }

    /// Raw polynomial text up to the next top-level ',', ']', ')' or ';'.
    fn poly_text(&mut self) -> Result<String> {
        self.skip_ws();
        let mut s = String::new();
        let mut depth = 0i32;
        loop {
            match self.peek() {
                None => break,
                Some(c) => {
                    if depth == 0 && matches!(c, ',' | ']' | ')' | ';') {
                        break;
                    }
                    if c == '(' || c == '[' {
                        depth += 1;
                    }
                    if c == ')' || c == ']' {
                        depth -= 1;
                    }
                    s.push(c);
                    self.bump();
                }
            }
        }
        if s.trim().is_empty() {
            return Err(self.err("expected a polynomial"));
        }
        Ok(s)
    }
}

struct Parser {
    cur: Cursor,
    overrides: Overrides,
    session: Session,
    current_ring: Option<String>,
}

/// Parse a whole `.sm` program, evaluating declarations as they appear so
/// later statements can reference them.
pub fn parse_program(src: &str, overrides: &Overrides) -> Result<Session> {
    let mut p = Parser {
        cur: Cursor::new(src),
        overrides: *overrides,
        session: Session::default(),
        current_ring: None,
    };
    while !p.cur.at_end() {
        p.statement()?;
    }
    Ok(p.session)
}

impl Parser {
    fn ring(&self) -> Result<Arc<QuotientRing>> {
        let name = self
            .current_ring
            .as_ref()
            .ok_or_else(|| self.cur.err("no ring declared yet"))?;
        Ok(self.session.rings[name].ring.clone())
    }

    fn poly(&mut self) -> Result<Polynomial> {
        let (line, col) = (self.cur.line, self.cur.col);
        let ring = self.ring()?;
        let text = self.cur.poly_text()?;
        parse_polynomial(&ring.base, &text).map_err(|e| match e {
            EngineError::Parse { msg, .. } => EngineError::Parse { line, col, msg },
            other => other,
        })
    }

    fn statement(&mut self) -> Result<()> {
        let line = self.cur.line;
        let kw = self.cur.ident()?;
        match kw.as_str() {
            "ring" => self.ring_decl()?,
            "ideal" => self.ideal_decl()?,
            "module" => self.module_decl()?,
            "complex" => self.complex_decl()?,
            _ => self.command(kw, line)?,
        }
        Ok(())
    }

    fn check_fresh(&self, name: &str) -> Result<()> {
        if self.session.rings.contains_key(name)
            || self.session.ideals.contains_key(name)
            || self.session.modules.contains_key(name)
            || self.session.complexes.contains_key(name)
        {
            return Err(self.cur.err(format!("name '{name}' is already declared")));
        }
        Ok(())
    }

    fn ring_decl(&mut self) -> Result<()> {
        let name = self.cur.ident()?;
        self.check_fresh(&name)?;
        self.cur.expect('=')?;
        let field_id = self.cur.ident()?;
        let mut field = if field_id == "QQ" {
            FieldSpec::QQ
        } else if let Some(p) = field_id.strip_prefix("FP") {
            let p: u32 = p
                .parse()
                .map_err(|_| self.cur.err("expected FP<prime>, e.g. FP32003"))?;
            FieldSpec::prime_field(p)?
        } else {
            return Err(self.cur.err(format!("unknown field '{field_id}'")));
        };
        if let Some(f) = self.overrides.field {
            field = f;
        }
        self.cur.expect('[')?;
        let mut vars = Vec::new();
        loop {
            vars.push(self.cur.ident()?);
            if !self.cur.eat(',') {
                break;
            }
        }
        self.cur.expect(']')?;
        let order_id = self.cur.ident()?;
        let mut order = match order_id.as_str() {
            "grevlex" => MonomialOrder::Grevlex,
            "lex" => MonomialOrder::Lex,
            other => return Err(self.cur.err(format!("unknown order '{other}'"))),
        };
        if let Some(o) = self.overrides.order {
            order = o;
        }
        let base = RingSpec::new(field, vars, order)?;
        let ring = if self.cur.eat('/') {
            self.cur.expect('(')?;
            let mut rels = Vec::new();
            // relations are parsed in the base ring being declared
            loop {
                let (line, col) = (self.cur.line, self.cur.col);
                let text = self.cur.poly_text()?;
                let f = parse_polynomial(&base, &text).map_err(|e| match e {
                    EngineError::Parse { msg, .. } => EngineError::Parse { line, col, msg },
                    other => other,
                })?;
                rels.push(f);
                if !self.cur.eat(',') {
                    break;
                }
            }
            self.cur.expect(')')?;
            QuotientRing::new(&base, rels)?
        } else {
            QuotientRing::polynomial(&base)
        };
        self.cur.expect(';')?;
        self.session.rings.insert(name.clone(), DeclaredRing { ring });
        self.session.statements.push(Statement::Ring(name.clone()));
        self.current_ring = Some(name);
        Ok(())
    }

    fn ideal_decl(&mut self) -> Result<()> {
        let name = self.cur.ident()?;
        self.check_fresh(&name)?;
        self.cur.expect('=')?;
        let gens = self.ideal_literal()?;
        self.cur.expect(';')?;
        self.session.ideals.insert(name.clone(), gens);
        self.session.statements.push(Statement::Ideal(name));
        Ok(())
    }

    fn ideal_literal(&mut self) -> Result<Vec<Polynomial>> {
        self.cur.expect('(')?;
        let mut gens = Vec::new();
        loop {
            gens.push(self.poly()?);
            if !self.cur.eat(',') {
                break;
            }
        }
        self.cur.expect(')')?;
        Ok(gens)
    }

    /// `[[p, p, ...], [p, ...], ...]` - row-major.
    fn matrix(&mut self) -> Result<Vec<Vec<Polynomial>>> {
        self.cur.expect('[')?;
        let mut rows = Vec::new();
        loop {
            self.cur.expect('[')?;
            let mut row = Vec::new();
            loop {
                row.push(self.poly()?);
                if !self.cur.eat(',') {
                    break;
                }
            }
            self.cur.expect(']')?;
            if let Some(first) = rows.first() {
                let first: &Vec<Polynomial> = first;
                if first.len() != row.len() {
                    return Err(self.cur.err("matrix rows have differing lengths"));
                }
            }
            rows.push(row);
            if !self.cur.eat(',') {
                break;
            }
        }
        self.cur.expect(']')?;
        Ok(rows)
    }

    fn shift_list(&mut self) -> Result<Vec<i64>> {
        self.cur.expect('[')?;
        let mut shifts = Vec::new();
        loop {
            shifts.push(self.cur.integer()?);
            if !self.cur.eat(',') {
                break;
            }
        }
        self.cur.expect(']')?;
        Ok(shifts)
    }

    fn build_map(
        &self,
        ring: &Arc<QuotientRing>,
        target: &FreeModule,
        rows: Vec<Vec<Polynomial>>,
    ) -> Result<ModuleMap> {
        if rows.len() != target.rank() {
            return Err(self
                .cur
                .err(format!("matrix has {} rows but the target has rank {}", rows.len(), target.rank())));
        }
        let ncols = rows[0].len();
        let mut cols = Vec::with_capacity(ncols);
        for j in 0..ncols {
            let comps: Vec<Polynomial> = rows.iter().map(|r| r[j].clone()).collect();
            let v = ModuleVector { components: comps };
            if !v.is_zero() {
                cols.push(v);
            }
        }
        let _ = ring;
        if cols.is_empty() {
            return Ok(ModuleMap::zero_from(target.clone()));
        }
        ModuleMap::from_columns(target, &cols)
    }

    fn coker_module(&mut self) -> Result<FPModule> {
        let ring = self.ring()?;
        let rows = self.matrix()?;
        let nrows = rows.len();
        let shifts = if self.cur.eat_keyword("shifts") {
            let s = self.shift_list()?;
            if s.len() != nrows {
                return Err(self.cur.err("shift list length must match the row count"));
            }
            s
        } else {
            vec![0; nrows]
        };
        let target = FreeModule::new(&ring, shifts);
        let map = self.build_map(&ring, &target, rows)?;
        Ok(FPModule::cokernel_of(map))
    }

    fn module_decl(&mut self) -> Result<()> {
        let name = self.cur.ident()?;
        self.check_fresh(&name)?;
        self.cur.expect('=')?;
        if !self.cur.eat_keyword("coker") {
            return Err(self.cur.err("expected 'coker'"));
        }
        let m = self.coker_module()?;
        self.cur.expect(';')?;
        self.session.modules.insert(name.clone(), m);
        self.session.statements.push(Statement::Module(name));
        Ok(())
    }

    fn complex_decl(&mut self) -> Result<()> {
        let name = self.cur.ident()?;
        self.check_fresh(&name)?;
        self.cur.expect('=')?;
        let ring = self.ring()?;
        self.cur.expect('(')?;
        let mut matrices = Vec::new();
        loop {
            matrices.push(self.matrix()?);
            if !self.cur.eat(',') {
                break;
            }
        }
        self.cur.expect(')')?;
        let first_rows = matrices[0].len();
        let shifts = if self.cur.eat_keyword("shifts") {
            let s = self.shift_list()?;
            if s.len() != first_rows {
                return Err(self.cur.err("shift list length must match the first matrix's rows"));
            }
            s
        } else {
            vec![0; first_rows]
        };
        self.cur.expect(';')?;
        let mut modules = vec![FreeModule::new(&ring, shifts)];
        let mut maps = Vec::new();
        for rows in matrices {
            let target = modules.last().unwrap().clone();
            let map = self.build_map(&ring, &target, rows)?;
            modules.push(map.source.clone());
            maps.push(map);
        }
        self.session
            .complexes
            .insert(name.clone(), DeclaredComplex { modules, maps });
        self.session.statements.push(Statement::Complex(name));
        Ok(())
    }

    fn command(&mut self, name: String, line: usize) -> Result<()> {
        let known = [
            "chi", "xi", "chi_i", "tor", "ext", "resolve", "betti", "dim", "length", "hilbert",
            "e", "koszul_e", "theta", "verify", "diagonal_check",
        ];
        if !known.contains(&name.as_str()) {
            return Err(self.cur.err(format!("unknown command '{name}'")));
        }
        self.cur.expect('(')?;
        let mut args = Vec::new();
        if !self.cur.eat(')') {
            loop {
                args.push(self.argument()?);
                if !self.cur.eat(',') {
                    break;
                }
            }
            self.cur.expect(')')?;
        }
        self.cur.expect(';')?;
        self.session
            .statements
            .push(Statement::Command(Command { name, args, line }));
        Ok(())
    }

    fn argument(&mut self) -> Result<Arg> {
        self.cur.skip_ws();
        match self.cur.peek() {
            Some(c) if c.is_ascii_digit() || c == '-' => Ok(Arg::Int(self.cur.integer()?)),
            Some('(') => {
                let gens = self.ideal_literal()?;
                let text = format!(
                    "({})",
                    gens.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(", ")
                );
                Ok(Arg::Ideal(gens, text))
            }
            _ => {
                let save = (self.cur.pos, self.cur.line, self.cur.col);
                let id = self.cur.ident()?;
                if id == "coker" {
                    let m = self.coker_module()?;
                    let text = format!(
                        "coker {} shifts {}",
                        fmt_matrix(&m.presentation),
                        fmt_shifts(m.gen_shifts())
                    );
                    return Ok(Arg::Module(m, text));
                }
                if self.cur.eat('/') {
                    // RING/IDEAL: the cyclic module
                    let ideal_name = self.cur.ident()?;
                    let ring = self
                        .session
                        .rings
                        .get(&id)
                        .ok_or_else(|| self.cur.err(format!("unknown ring '{id}'")))?
                        .ring
                        .clone();
                    let gens = self
                        .session
                        .ideals
                        .get(&ideal_name)
                        .ok_or_else(|| self.cur.err(format!("unknown ideal '{ideal_name}'")))?
                        .clone();
                    let m = FPModule::cyclic(&ring, gens)?;
                    return Ok(Arg::Module(m, format!("{id}/{ideal_name}")));
                }
                (self.cur.pos, self.cur.line, self.cur.col) = save;
                let id = self.cur.ident()?;
                if let Some(m) = self.session.modules.get(&id) {
                    return Ok(Arg::Module(m.clone(), id));
                }
                if let Some(gens) = self.session.ideals.get(&id) {
                    return Ok(Arg::Ideal(gens.clone(), id));
                }
                if self.session.complexes.contains_key(&id) {
                    return Ok(Arg::Complex(id));
                }
                Err(self.cur.err(format!("unknown name '{id}'")))
            }
        }
    }
}

thread_local! {
    static DEFAULT_MAX_LEN: std::cell::Cell<Option<usize>> = const { std::cell::Cell::new(None) };
}

/// Default resolution length for commands that omit one (`betti(M)`).
pub fn set_default_max_len(n: Option<usize>) {
    DEFAULT_MAX_LEN.with(|c| c.set(n));
}

fn default_max_len(fallback: usize) -> usize {
    DEFAULT_MAX_LEN.with(|c| c.get()).unwrap_or(fallback)
}

/// Result of running a session: one record per command, plus an exit code
/// (0 all pass, 1 verdict failure, 3 resource limit).
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub records: Vec<Value>,
    pub exit: i32,
}

pub fn run_session(session: &Session) -> RunOutcome {
    let mut records = Vec::new();
    let mut exit = 0;
    for cmd in session.commands() {
        match run_command(session, cmd) {
            Ok((value, pass)) => {
                if !pass {
                    exit = exit.max(1);
                }
                records.push(value);
            }
            Err(e) => {
                if matches!(e, EngineError::ResourceLimitExceeded(_)) {
                    exit = 3;
                } else {
                    exit = exit.max(1);
                }
                records.push(json!({
                    "cmd": cmd.name,
                    "error": e.to_string(),
                    "pass": false,
                }));
            }
        }
    }
    RunOutcome { records, exit }
}

fn want_module<'a>(cmd: &'a Command, i: usize) -> Result<&'a FPModule> {
    match cmd.args.get(i) {
        Some(Arg::Module(m, _)) => Ok(m),
        _ => Err(EngineError::Config(format!(
            "{}: argument {} must be a module",
            cmd.name,
            i + 1
        ))),
    }
}

fn want_ideal<'a>(cmd: &'a Command, i: usize) -> Result<&'a [Polynomial]> {
    match cmd.args.get(i) {
        Some(Arg::Ideal(g, _)) => Ok(g),
        _ => Err(EngineError::Config(format!(
            "{}: argument {} must be an ideal",
            cmd.name,
            i + 1
        ))),
    }
}

fn want_int(cmd: &Command, i: usize) -> Result<i64> {
    match cmd.args.get(i) {
        Some(Arg::Int(n)) => Ok(*n),
        _ => Err(EngineError::Config(format!(
            "{}: argument {} must be an integer",
            cmd.name,
            i + 1
        ))),
    }
}

fn betti_json(shifts: &[Vec<i64>]) -> Value {
    json!(shifts)
}

fn certificate_json(cert: &Option<crate::resolution::PeriodicityCertificate>) -> Value {
    match cert {
        Some(c) => json!({
            "onset": c.onset,
            "period": c.period,
            "shift_step": c.shift_step,
        }),
        None => Value::Null,
    }
}

fn run_command(session: &Session, cmd: &Command) -> Result<(Value, bool)> {
    match cmd.name.as_str() {
        "chi" => {
            let v = multiplicity::chi(want_module(cmd, 0)?, want_module(cmd, 1)?)?;
            Ok((json!({"cmd": "chi", "chi": v}), true))
        }
        "xi" => {
            let v = multiplicity::xi(want_module(cmd, 0)?, want_module(cmd, 1)?)?;
            Ok((json!({"cmd": "xi", "xi": v}), true))
        }
        "chi_i" => {
            let i = want_int(cmd, 2)?;
            if i < 0 {
                return Err(EngineError::Config("chi_i: index must be nonnegative".into()));
            }
            let v = multiplicity::chi_higher(want_module(cmd, 0)?, want_module(cmd, 1)?, i as usize)?;
            Ok((json!({"cmd": "chi_i", "i": i, "chi_i": v}), true))
        }
        "tor" => {
            let upto = want_int(cmd, 2)?.max(0) as usize;
            let p = homology::tor(want_module(cmd, 0)?, want_module(cmd, 1)?, upto)?;
            Ok((
                json!({
                    "cmd": "tor",
                    "tor_lengths": p.lengths,
                    "complete": p.completeness == Completeness::Complete,
                }),
                true,
            ))
        }
        "ext" => {
            let upto = want_int(cmd, 2)?.max(0) as usize;
            let p = homology::ext(want_module(cmd, 0)?, want_module(cmd, 1)?, upto)?;
            Ok((
                json!({
                    "cmd": "ext",
                    "ext_lengths": p.lengths,
                    "complete": p.completeness == Completeness::Complete,
                }),
                true,
            ))
        }
        "resolve" => {
            let m = want_module(cmd, 0)?;
            let len = want_int(cmd, 1)?.max(0) as usize;
            let res = free_resolution(m, len)?;
            Ok((
                json!({
                    "cmd": "resolve",
                    "betti": betti_json(&res.betti_table().shifts),
                    "complete": res.complete,
                    "certificate": certificate_json(&res.certificate),
                }),
                true,
            ))
        }
        "betti" => match cmd.args.first() {
            Some(Arg::Complex(name)) => {
                let c = session.complex(name).unwrap();
                let shifts: Vec<Vec<i64>> = c
                    .modules
                    .iter()
                    .map(|f| {
                        let mut s = f.shifts.clone();
                        s.sort();
                        s
                    })
                    .collect();
                Ok((json!({"cmd": "betti", "betti": betti_json(&shifts)}), true))
            }
            _ => {
                let m = want_module(cmd, 0)?;
                let len = match cmd.args.get(1) {
                    Some(Arg::Int(n)) => (*n).max(0) as usize,
                    _ => default_max_len(m.ring().base.nvars() + 4),
                };
                let res = free_resolution(m, len)?;
                Ok((
                    json!({"cmd": "betti", "betti": betti_json(&res.betti_table().shifts)}),
                    true,
                ))
            }
        },
        "dim" => {
            let d = want_module(cmd, 0)?.krull_dim()?;
            Ok((json!({"cmd": "dim", "dim": d}), true))
        }
        "length" => {
            let l = want_module(cmd, 0)?.length()?;
            Ok((json!({"cmd": "length", "length": l}), true))
        }
        "hilbert" => {
            let data = want_module(cmd, 0)?.hilbert_data()?;
            let values: Vec<Value> = data.values.iter().map(|(d, v)| json!([d, v])).collect();
            let poly: Vec<String> = data.polynomial.iter().map(|c| c.to_string()).collect();
            Ok((
                json!({
                    "cmd": "hilbert",
                    "values": values,
                    "polynomial": poly,
                    "stabilization": data.stabilization,
                }),
                true,
            ))
        }
        "e" => {
            let m = want_module(cmd, 0)?;
            let gens = want_ideal(cmd, 1)?;
            let k = match cmd.args.get(2) {
                Some(Arg::Int(n)) => (*n).max(0) as usize,
                _ => m.krull_dim()?.max(0) as usize,
            };
            let d = multiplicity::hilbert_samuel(m, gens, k)?;
            Ok((json!({"cmd": "e", "e": d.e, "k": d.k}), true))
        }
        "koszul_e" => {
            let gens = want_ideal(cmd, 0)?;
            let m = want_module(cmd, 1)?;
            let v = multiplicity::koszul_euler(gens, m)?;
            Ok((json!({"cmd": "koszul_e", "koszul_e": v}), true))
        }
        "theta" => {
            let v = multiplicity::theta(want_module(cmd, 0)?, want_module(cmd, 1)?)?;
            Ok((json!({"cmd": "theta", "theta": v}), true))
        }
        "diagonal_check" => {
            let d = multiplicity::diagonal_reduction_check(want_module(cmd, 0)?, want_module(cmd, 1)?)?;
            Ok((
                json!({
                    "cmd": "diagonal_check",
                    "pass": d.matches,
                    "tor_a": d.tor_a,
                    "tor_b": d.tor_b,
                }),
                d.matches,
            ))
        }
        "verify" => match cmd.args.first() {
            Some(Arg::Complex(name)) => verify_complex(session.complex(name).unwrap()),
            _ => {
                let r = multiplicity::verify_serre_pair(want_module(cmd, 0)?, want_module(cmd, 1)?)?;
                let pass = r.all_pass();
                let mut v = serde_json::to_value(&r).unwrap();
                let obj = v.as_object_mut().unwrap();
                obj.insert("cmd".into(), json!("verify"));
                obj.insert("pass".into(), json!(pass));
                Ok((v, pass))
            }
        },
        other => Err(EngineError::Config(format!("unknown command '{other}'"))),
    }
}

/// Checks a declared complex: d^2 = 0 entrywise, exactness at the interior
/// indices, and reports its Betti shifts and any periodicity certificate.
fn verify_complex(c: &DeclaredComplex) -> Result<(Value, bool)> {
    let complex = match FreeComplex::new(c.modules.clone(), c.maps.clone(), true) {
        Ok(x) => x,
        Err(_) => {
            return Ok((
                json!({
                    "cmd": "verify",
                    "d_squared": false,
                    "exact": false,
                    "pass": false,
                }),
                false,
            ))
        }
    };
    let mut exact = true;
    for i in 1..complex.len() {
        if !complex.is_exact_at(i)? {
            exact = false;
            break;
        }
    }
    let cert = detect_periodicity(&complex);
    let pass = exact;
    Ok((
        json!({
            "cmd": "verify",
            "d_squared": true,
            "exact": exact,
            "betti": betti_json(&complex.betti_table().shifts),
            "certificate": certificate_json(&cert),
            "pass": pass,
        }),
        pass,
    ))
}

/// Aligned text rendering of a record stream for `--text` mode.
pub fn render_text(records: &[Value]) -> String {
    let mut out = String::new();
    for r in records {
        let cmd = r.get("cmd").and_then(|c| c.as_str()).unwrap_or("?");
        let mut parts = Vec::new();
        if let Some(obj) = r.as_object() {
            for (k, v) in obj {
                if k == "cmd" {
                    continue;
                }
                parts.push(format!("{k}={v}"));
            }
        }
        let _ = writeln!(out, "{cmd:<16} {}", parts.join("  "));
    }
    out
}
