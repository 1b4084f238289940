//! Plain-text poset files and the family expression language.
//!
//! File format:
//!
//! ```text
//! # comment
//! n 4
//! 1 < 2
//! 1 < 3 < 4
//! label 1 h-
//! ```
//!
//! Expressions combine named families with `+` (disjoint union), e.g.
//! `zeta(7/3) + chain(4)`, `(1,2,5)`, `<2,3,2>`, `K + chain(5)`.

use std::fmt::Write as _;

use num_traits::{One, ToPrimitive};
use thiserror::Error;

use super::{
    antichain, chain, crown, dynkin_d, dynkin_e, example2, example4, extended_d, extended_e, fence, kleiner_k,
    primitive, standard_star, v_poset, wattle, Poset, PosetError,
};
use crate::classify::zeta_orders;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TextError {
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error(transparent)]
    Poset(#[from] PosetError),
}

fn err<T>(line: usize, column: usize, message: impl Into<String>) -> Result<T, TextError> {
    Err(TextError::Parse { line, column, message: message.into() })
}

/// Parse the line-oriented file format.
pub fn parse_poset_file(text: &str) -> Result<Poset, TextError> {
    let mut n: Option<usize> = None;
    let mut pairs = Vec::new();
    let mut labels: Vec<(usize, String)> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let column = raw.len() - raw.trim_start().len() + 1;
        let words: Vec<&str> = trimmed.split_whitespace().collect();
        match words[0] {
            "n" => {
                if n.is_some() {
                    return err(line_no, column, "duplicate `n` line");
                }
                match words.as_slice() {
                    [_, count] => match count.parse::<usize>() {
                        Ok(c) => n = Some(c),
                        Err(_) => return err(line_no, column + 2, format!("bad element count `{count}`")),
                    },
                    _ => return err(line_no, column, "expected `n <count>`"),
                }
            }
            "label" => {
                let Some(count) = n else {
                    return err(line_no, column, "`n <count>` must come first");
                };
                let [_, idx, name] = words.as_slice() else {
                    return err(line_no, column, "expected `label <i> <name>`");
                };
                let i = element(idx, count, line_no, column + 6)?;
                labels.push((i, (*name).to_string()));
            }
            _ => {
                let Some(count) = n else {
                    return err(line_no, column, "`n <count>` must come first");
                };
                let toks = relation_tokens(content);
                let mut prev: Option<usize> = None;
                for (k, (word, col)) in toks.iter().enumerate() {
                    let want_elem = k % 2 == 0;
                    if want_elem {
                        let e = element(word, count, line_no, *col)?;
                        if let Some(p) = prev {
                            pairs.push((p, e));
                        }
                        prev = Some(e);
                    } else if word != "<" {
                        return err(line_no, *col, format!("expected `<`, found `{word}`"));
                    }
                }
                if toks.len() < 3 || toks.len().is_multiple_of(2) {
                    let col = toks.last().map_or(column, |(w, c)| c + w.chars().count());
                    return err(line_no, col, "expected a relation `i < j`");
                }
            }
        }
    }
    let Some(n) = n else {
        return err(1, 1, "missing `n <count>` line");
    };
    let mut p = Poset::from_relations(n, &pairs)?;
    if !labels.is_empty() {
        let mut names: Vec<String> = (1..=n).map(|i| format!("s{i}")).collect();
        for (i, name) in labels {
            names[i] = name;
        }
        p = p.with_labels(names);
    }
    Ok(p)
}

/// Split a relation line into words and `<` marks with 1-based columns.
fn relation_tokens(line: &str) -> Vec<(String, usize)> {
    let mut out: Vec<(String, usize)> = Vec::new();
    let mut current: Option<(String, usize)> = None;
    for (k, c) in line.chars().enumerate() {
        if c.is_whitespace() || c == '<' {
            out.extend(current.take());
            if c == '<' {
                out.push(("<".to_string(), k + 1));
            }
        } else {
            current.get_or_insert_with(|| (String::new(), k + 1)).0.push(c);
        }
    }
    out.extend(current);
    out
}

fn element(word: &str, n: usize, line: usize, column: usize) -> Result<usize, TextError> {
    match word.parse::<usize>() {
        Ok(i) if (1..=n).contains(&i) => Ok(i - 1),
        Ok(i) => err(line, column, format!("element {i} out of range 1..={n}")),
        Err(_) => err(line, column, format!("expected an element number, found `{word}`")),
    }
}

/// Write a poset file listing the covering relations.
pub fn to_poset_file(p: &Poset, comment: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(c) = comment {
        for line in c.lines() {
            let _ = writeln!(out, "# {line}");
        }
    }
    let _ = writeln!(out, "n {}", p.len());
    if let Some(labels) = p.labels() {
        for (i, l) in labels.iter().enumerate() {
            let _ = writeln!(out, "label {} {}", i + 1, l);
        }
    }
    for (i, j) in p.quiver().arrows {
        let _ = writeln!(out, "{} < {}", i + 1, j + 1);
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Number(String),
    Open,
    Close,
    OpenAngle,
    CloseAngle,
    Comma,
    Plus,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    end: usize,
}

fn lex(src: &str) -> Result<Lexer, TextError> {
    let chars: Vec<char> = src.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            _ if c.is_whitespace() => i += 1,
            '(' | ')' | ',' | ';' | '+' | '<' | '>' | '⟨' | '⟩' => {
                toks.push((
                    match c {
                        '(' => Tok::Open,
                        ')' => Tok::Close,
                        ',' | ';' => Tok::Comma,
                        '+' => Tok::Plus,
                        '<' | '⟨' => Tok::OpenAngle,
                        _ => Tok::CloseAngle,
                    },
                    col,
                ));
                i += 1;
            }
            _ if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/' || chars[i] == '.') {
                    i += 1;
                }
                toks.push((Tok::Number(chars[start..i].iter().collect()), col));
            }
            _ if c.is_alphabetic() || c == '~' || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '~' || chars[i] == '_') {
                    i += 1;
                }
                toks.push((Tok::Ident(chars[start..i].iter().collect()), col));
            }
            _ => return err(1, col, format!("unexpected character `{c}`")),
        }
    }
    Ok(Lexer { toks, end: chars.len() + 1 })
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.1)
    }

    fn expr(&mut self) -> Result<Poset, TextError> {
        let mut acc = self.term()?;
        while self.peek() == Some(&Tok::Plus) {
            self.pos += 1;
            acc = acc.disjoint_union(&self.term()?);
        }
        Ok(acc)
    }

    /// Comma-separated numbers up to (and consuming) `close`.
    fn numbers(&mut self, close: &Tok) -> Result<Vec<(Rational, usize)>, TextError> {
        let mut out = Vec::new();
        if self.peek() == Some(close) {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            let col = self.column();
            match self.peek().cloned() {
                Some(Tok::Number(s)) => {
                    let Some(r) = rational::parse(&s) else {
                        return err(1, col, format!("bad number `{s}`"));
                    };
                    out.push((r, col));
                    self.pos += 1;
                }
                _ => return err(1, col, "expected a number"),
            }
            match self.peek() {
                Some(Tok::Comma) => self.pos += 1,
                Some(t) if t == close => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => return err(1, self.column(), "expected `,` or a closing bracket"),
            }
        }
    }

    fn term(&mut self) -> Result<Poset, TextError> {
        let col = self.column();
        let tok = self.peek().cloned();
        self.pos += 1;
        match tok {
            Some(Tok::Open) => {
                let args = self.numbers(&Tok::Close)?;
                Ok(primitive(&counts(&args, 1)?))
            }
            Some(Tok::OpenAngle) => {
                let args = self.numbers(&Tok::CloseAngle)?;
                wattle(&counts(&args, 1)?).map_err(|e| at(col, e))
            }
            Some(Tok::Ident(name)) => {
                let args = if self.peek() == Some(&Tok::Open) {
                    self.pos += 1;
                    self.numbers(&Tok::Close)?
                } else {
                    Vec::new()
                };
                family(&name, &args, col)
            }
            _ => err(1, col, "expected a family name, `(` or `<`"),
        }
    }
}

fn at(column: usize, e: PosetError) -> TextError {
    TextError::Parse { line: 1, column, message: e.to_string() }
}

fn counts(args: &[(Rational, usize)], min: usize) -> Result<Vec<usize>, TextError> {
    args.iter()
        .map(|(r, col)| match (r.is_integer(), r.to_integer().to_usize()) {
            (true, Some(k)) if k >= min => Ok(k),
            _ => err(1, *col, format!("expected an integer >= {min}, found {}", rational::to_string(r))),
        })
        .collect()
}

fn family(name: &str, args: &[(Rational, usize)], col: usize) -> Result<Poset, TextError> {
    let ints = |min: usize| counts(args, min);
    let one = |min: usize| -> Result<usize, TextError> {
        match ints(min)?.as_slice() {
            [k] => Ok(*k),
            _ => err(1, col, format!("`{name}` takes exactly one argument")),
        }
    };
    let none = || -> Result<(), TextError> {
        if args.is_empty() {
            Ok(())
        } else {
            err(1, col, format!("`{name}` takes no arguments"))
        }
    };
    let lower = name.to_lowercase();
    let result = match lower.as_str() {
        "chain" | "z" | "a" => Ok(chain(one(1)?)),
        "antichain" => Ok(antichain(one(1)?)),
        "primitive" => Ok(primitive(&ints(1)?)),
        "crown" | "w" => crown(one(1)?),
        "fence" => match ints(1)?.as_slice() {
            [a, b] => fence(*a, *b),
            _ => return err(1, col, "`fence` takes two arguments"),
        },
        "v" => {
            none()?;
            Ok(v_poset())
        }
        "k" => {
            none()?;
            Ok(kleiner_k())
        }
        "wattle" => wattle(&ints(1)?),
        "zeta" => match args {
            [(r, rcol)] => {
                if *r < Rational::one() {
                    return err(1, *rcol, "zeta needs r >= 1");
                }
                wattle(&zeta_orders(r).map_err(|e| at(*rcol, e))?)
            }
            _ => return err(1, col, "`zeta` takes one rational argument"),
        },
        "star" => standard_star(&ints(2)?),
        "d" => dynkin_d(one(1)?),
        "e" => dynkin_e(one(1)?),
        "dtilde" | "~d" => extended_d(one(1)?),
        "etilde" | "~e" => extended_e(one(1)?),
        "example2" => {
            none()?;
            Ok(example2())
        }
        "example4" => {
            none()?;
            Ok(example4())
        }
        _ => return err(1, col, format!("unknown family `{name}`")),
    };
    result.map_err(|e| at(col, e))
}

/// Parse a family expression.
pub fn parse_dsl(src: &str) -> Result<Poset, TextError> {
    let Lexer { toks, end } = lex(src)?;
    let mut p = Parser { toks, pos: 0, end };
    let poset = p.expr()?;
    if p.pos < p.toks.len() {
        return err(1, p.column(), "unexpected trailing input");
    }
    Ok(poset)
}

/// A poset file if the text contains an `n <count>` line, else an expression.
pub fn parse_any(text: &str) -> Result<Poset, TextError> {
    let looks_like_file = text.lines().any(|l| {
        let mut w = l.split('#').next().unwrap_or("").split_whitespace();
        w.next() == Some("n") && w.next().is_some_and(|c| c.parse::<usize>().is_ok()) && w.next().is_none()
    });
    if looks_like_file {
        parse_poset_file(text)
    } else {
        parse_dsl(text.trim())
    }
}
