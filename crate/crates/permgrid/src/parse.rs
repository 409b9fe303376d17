//! Recursive-descent parser for the class-expression DSL.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr     := "Av(" permlist ")" | "merge(" expr "," expr ")"
//!           | "grid(" "[" row ("," row)* "]" ")" | "set(" permlist ")"
//!           | "sumclose(" expr ")" | "skewclose(" expr ")"
//!           | "inter(" expr ("," expr)* ")"
//!           | "staircase(" ("inc"|"spiral") "," expr "," expr "," integer ")"
//! row      := "[" cell ("," cell)* "]"
//! cell     := expr | "E"
//! permlist := perm ("," perm)* | ""
//! ```
//!
//! Inside a permlist a permutation is a digit string ("321"); the literal
//! `e` denotes the empty permutation. Rows of `grid(...)` are written top
//! row first and converted to Cartesian indexing; `staircase(...)` desugars
//! to the corresponding grid.

use std::fmt;

use thiserror::Error;

use crate::class::ClassExpr;
use crate::grid::{build_increasing_staircase, build_spiral_staircase, GridMatrix};
use crate::perm::Permutation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

pub fn parse_class_expr(text: &str) -> Result<ClassExpr, ParseError> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    let expr = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.err("trailing input after expression"));
    }
    Ok(expr)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, message: impl fmt::Display) -> ParseError {
        ParseError {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn err_at(&self, position: usize, message: impl fmt::Display) -> ParseError {
        ParseError {
            position,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        match self.peek() {
            Some(found) if found == c => {
                self.pos += 1;
                Ok(())
            }
            Some(found) => Err(self.err(format!(
                "expected {:?}, found {:?}",
                c as char, found as char
            ))),
            None => Err(self.err(format!("expected {:?}, found end of input", c as char))),
        }
    }

    fn ident(&mut self) -> Result<(usize, String), ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a name"));
        }
        Ok((
            start,
            std::str::from_utf8(&self.bytes[start..self.pos])
                .unwrap()
                .to_string(),
        ))
    }

    fn integer(&mut self) -> Result<usize, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected an integer"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|e| self.err_at(start, format!("invalid integer: {e}")))
    }

    fn expr(&mut self) -> Result<ClassExpr, ParseError> {
        let (start, name) = self.ident()?;
        match name.as_str() {
            "Av" => {
                self.expect(b'(')?;
                let basis = self.permlist()?;
                self.expect(b')')?;
                ClassExpr::avoid(basis).map_err(|e| self.err_at(start, e))
            }
            "set" => {
                self.expect(b'(')?;
                let members = self.permlist()?;
                self.expect(b')')?;
                Ok(ClassExpr::finite_set(members))
            }
            "merge" => {
                self.expect(b'(')?;
                let left = self.expr()?;
                self.expect(b',')?;
                let right = self.expr()?;
                self.expect(b')')?;
                Ok(ClassExpr::merge(left, right))
            }
            "sumclose" => {
                self.expect(b'(')?;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(ClassExpr::sum_closure(inner))
            }
            "skewclose" => {
                self.expect(b'(')?;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(ClassExpr::skew_closure(inner))
            }
            "inter" => {
                self.expect(b'(')?;
                let mut parts = vec![self.expr()?];
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    parts.push(self.expr()?);
                }
                self.expect(b')')?;
                ClassExpr::intersection(parts).map_err(|e| self.err_at(start, e))
            }
            "grid" => {
                self.expect(b'(')?;
                self.expect(b'[')?;
                let mut rows = vec![self.row()?];
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    rows.push(self.row()?);
                }
                self.expect(b']')?;
                self.expect(b')')?;
                let matrix =
                    GridMatrix::from_rows_top_first(rows).map_err(|e| self.err_at(start, e))?;
                Ok(ClassExpr::grid(matrix))
            }
            "staircase" => {
                self.expect(b'(')?;
                let (kind_pos, kind) = self.ident()?;
                self.expect(b',')?;
                let c = self.expr()?;
                self.expect(b',')?;
                let d = self.expr()?;
                self.expect(b',')?;
                let steps_pos = {
                    self.skip_ws();
                    self.pos
                };
                let steps = self.integer()?;
                self.expect(b')')?;
                if steps == 0 {
                    return Err(self.err_at(steps_pos, "a staircase has at least one step"));
                }
                let matrix = match kind.as_str() {
                    "inc" => build_increasing_staircase(&c, &d, steps),
                    "spiral" => build_spiral_staircase(&c, &d, steps),
                    other => {
                        return Err(self.err_at(
                            kind_pos,
                            format!("unknown staircase kind {other:?}; use \"inc\" or \"spiral\""),
                        ))
                    }
                };
                Ok(ClassExpr::grid(matrix))
            }
            other => Err(self.err_at(start, format!("unknown class constructor {other:?}"))),
        }
    }

    fn row(&mut self) -> Result<Vec<Option<ClassExpr>>, ParseError> {
        self.expect(b'[')?;
        let mut cells = vec![self.cell()?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            cells.push(self.cell()?);
        }
        self.expect(b']')?;
        Ok(cells)
    }

    fn cell(&mut self) -> Result<Option<ClassExpr>, ParseError> {
        if self.peek() == Some(b'E') {
            self.pos += 1;
            return Ok(None);
        }
        Ok(Some(self.expr()?))
    }

    /// Zero or more permutations. Within the DSL each permutation is a digit
    /// string; `e` denotes ε. (The comma-separated textual form would clash
    /// with the list separator and is only accepted by the standalone
    /// permutation parser.)
    fn permlist(&mut self) -> Result<Vec<Permutation>, ParseError> {
        let mut perms = Vec::new();
        if self.peek() == Some(b')') {
            return Ok(perms);
        }
        loop {
            perms.push(self.perm_token()?);
            if self.peek() == Some(b',') {
                self.pos += 1;
            } else {
                return Ok(perms);
            }
        }
    }

    fn perm_token(&mut self) -> Result<Permutation, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.bytes.get(self.pos) == Some(&b'e') {
            self.pos += 1;
            return Ok(Permutation::empty());
        }
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a permutation"));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        let values: Result<Vec<u8>, ParseError> = text
            .bytes()
            .map(|b| {
                let d = b - b'0';
                if d == 0 {
                    Err(self.err_at(start, "permutation values are 1-based; 0 is not a value"))
                } else {
                    Ok(d)
                }
            })
            .collect();
        Permutation::new(values?).map_err(|e| self.err_at(start, e))
    }
}
