use indexmap::IndexMap;

use super::lexer::{tokenize, Tok, Token};
use super::{ParseError, ParseErrorKind, SourceProgram, DEFAULT_DEPTH_LIMIT};
use crate::action::{Action, Episodic, ProcessLattice};
use crate::grid::Grid;
use crate::template::{Template, Term};

/// Recursive-descent parser with a configurable nesting limit.
#[derive(Debug, Clone, Copy)]
pub struct Parser {
    max_depth: usize,
}

impl Default for Parser {
    fn default() -> Self {
        Self {
            max_depth: DEFAULT_DEPTH_LIMIT,
        }
    }
}

impl Parser {
    pub fn with_depth_limit(max_depth: usize) -> Self {
        Self { max_depth }
    }

    pub fn depth_limit(&self) -> usize {
        self.max_depth
    }

    pub fn parse(&self, text: &str) -> Result<SourceProgram, ParseError> {
        let tokens = tokenize(text)?;
        let mut st = State {
            tokens,
            pos: 0,
            defs: IndexMap::new(),
            max_depth: self.max_depth,
        };
        st.file()
    }

    pub fn parse_term(&self, text: &str) -> Result<Term, ParseError> {
        let prog = self.parse(text)?;
        prog.main.ok_or_else(|| {
            let line = text.lines().count().max(1);
            ParseError::new(line, 1, ParseErrorKind::NoExpression)
        })
    }

    pub fn parse_action(&self, text: &str) -> Result<Action, ParseError> {
        let prog = self.parse(text)?;
        let (line, col) = prog.main_pos.unwrap_or((1, 1));
        let term = prog
            .main
            .ok_or(ParseError::new(line, col, ParseErrorKind::NoExpression))?;
        term.to_action()
            .ok_or(ParseError::new(line, col, ParseErrorKind::UnexpectedHole))
    }

    pub fn parse_lattice(&self, text: &str) -> Result<ProcessLattice, ParseError> {
        let pos = self.parse(text)?.main_pos.unwrap_or((1, 1));
        match self.parse_action(text)? {
            Action::Flow(l) => Ok(l),
            Action::Episodic(_) => Err(ParseError::new(
                pos.0,
                pos.1,
                ParseErrorKind::ExpectedLattice,
            )),
        }
    }

    pub fn parse_template(&self, text: &str) -> Result<Template, ParseError> {
        let prog = self.parse(text)?;
        let (line, col) = prog.main_pos.unwrap_or((1, 1));
        match prog.main {
            Some(Term::Lattice(g)) => Ok(Template::new(g)),
            Some(_) => Err(ParseError::new(line, col, ParseErrorKind::ExpectedLattice)),
            None => Err(ParseError::new(line, col, ParseErrorKind::NoExpression)),
        }
    }
}

struct State {
    tokens: Vec<Token>,
    pos: usize,
    defs: IndexMap<String, (Term, usize)>,
    max_depth: usize,
}

impl State {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        let i = (self.pos + offset).min(self.tokens.len() - 1);
        &self.tokens[i].tok
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn err_here(&self, expected: &str) -> ParseError {
        let t = self.peek();
        ParseError::new(
            t.line,
            t.col,
            ParseErrorKind::Unexpected {
                expected: expected.into(),
                found: t.tok.describe(),
            },
        )
    }

    fn file(&mut self) -> Result<SourceProgram, ParseError> {
        let mut main = None;
        let mut main_pos = None;
        loop {
            match &self.peek().tok {
                Tok::Eof => break,
                Tok::Newline => {
                    self.bump();
                    continue;
                }
                Tok::Name(_) if *self.peek_at(1) == Tok::Equals => self.definition()?,
                _ => {
                    let start = self.peek();
                    let pos = (start.line, start.col);
                    let (term, _) = self.expr(0)?;
                    main = Some(term);
                    main_pos = Some(pos);
                }
            }
            match self.peek().tok {
                Tok::Newline | Tok::Eof => {}
                _ => return Err(self.err_here("end of line")),
            }
        }
        Ok(SourceProgram {
            definitions: self.defs.drain(..).map(|(k, (t, _))| (k, t)).collect(),
            main,
            main_pos,
        })
    }

    fn definition(&mut self) -> Result<(), ParseError> {
        let name_tok = self.bump();
        let Tok::Name(name) = name_tok.tok else {
            unreachable!("definition starts with a name")
        };
        self.bump(); // '='
        if self.defs.contains_key(&name) {
            return Err(ParseError::new(
                name_tok.line,
                name_tok.col,
                ParseErrorKind::DuplicateDefinition(name),
            ));
        }
        let term = self.expr(0)?;
        self.defs.insert(name, term);
        Ok(())
    }

    /// Returns the term and its nesting depth.
    fn expr(&mut self, depth: usize) -> Result<(Term, usize), ParseError> {
        let t = self.peek().clone();
        match t.tok {
            Tok::W => {
                self.bump();
                Ok((Term::Atom(Episodic::Fail), 0))
            }
            Tok::WStar => {
                self.bump();
                Ok((Term::Atom(Episodic::Succeed), 0))
            }
            Tok::Hole => {
                self.bump();
                Ok((Term::Hole, 0))
            }
            Tok::Name(name) => {
                self.bump();
                let (term, d) = self.defs.get(&name).cloned().ok_or_else(|| {
                    ParseError::new(t.line, t.col, ParseErrorKind::UnknownName(name))
                })?;
                if depth + d > self.max_depth {
                    return Err(ParseError::new(
                        t.line,
                        t.col,
                        ParseErrorKind::DepthLimit(self.max_depth),
                    ));
                }
                Ok((term, d))
            }
            Tok::LBracket => self.lattice(depth),
            _ => Err(self.err_here("an expression")),
        }
    }

    fn lattice(&mut self, depth: usize) -> Result<(Term, usize), ParseError> {
        let open = self.bump();
        if depth + 1 > self.max_depth {
            return Err(ParseError::new(
                open.line,
                open.col,
                ParseErrorKind::DepthLimit(self.max_depth),
            ));
        }
        let mut rows: Vec<Vec<Term>> = Vec::new();
        let mut row_starts = Vec::new();
        let mut inner = 0;
        if self.peek().tok == Tok::RBracket {
            self.bump();
            return Ok((Term::Lattice(Grid::empty()), 1));
        }
        loop {
            let start = self.peek().clone();
            row_starts.push((start.line, start.col));
            let mut row = Vec::new();
            loop {
                match self.peek().tok {
                    Tok::Semi | Tok::RBracket => break,
                    _ => {
                        let (t, d) = self.expr(depth + 1)?;
                        inner = inner.max(d);
                        row.push(t);
                    }
                }
            }
            if row.is_empty() {
                return Err(self.err_here("an expression"));
            }
            rows.push(row);
            match self.bump().tok {
                Tok::Semi => continue,
                Tok::RBracket => break,
                _ => unreachable!("row loop stops at ';' or ']'"),
            }
        }
        let expected = rows[0].len();
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != expected) {
            let (line, col) = row_starts[i];
            return Err(ParseError::new(
                line,
                col,
                ParseErrorKind::RaggedRow {
                    row: i + 1,
                    found: r.len(),
                    expected,
                },
            ));
        }
        let grid = Grid::from_rows(rows).expect("rows checked rectangular");
        Ok((Term::Lattice(grid), inner + 1))
    }
}
