//! Text encodings: one-digit-per-entry tables, `AGMON 1` databases, and
//! cycle notation for permutations.
//!
//! Database layout (ASCII, `\n` line endings):
//!
//! ```text
//! AGMON 1 n=3 kind=cm count=5
//! 012111212
//! ...
//! ```

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use thiserror::Error;

use crate::error::Error;
use crate::perm::Permutation;
use crate::table::{CayleyTable, StructureKind};

pub const FORMAT_MAGIC: &str = "AGMON";
pub const FORMAT_VERSION: u32 = 1;
/// Largest order representable with one decimal digit per entry.
pub const MAX_ENCODED_ORDER: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableCodecError {
    #[error("order {0} cannot be encoded with one digit per entry")]
    OrderTooLarge(usize),
    #[error("expected {expected} characters, found {found}")]
    Length { expected: usize, found: usize },
    #[error("character {0:?} is not a decimal digit")]
    NotADigit(char),
    #[error("digit {digit} out of range for order {order}")]
    DigitOutOfRange { digit: usize, order: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycleParseError {
    #[error("malformed cycle notation at byte {pos}: {reason}")]
    Syntax { pos: usize, reason: &'static str },
    #[error("element {element} out of range for degree {degree}")]
    OutOfRange { element: usize, degree: usize },
    #[error("element {0} repeated")]
    Repeated(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DbParseError {
    #[error("line 1: malformed header: {0}")]
    Header(String),
    #[error("header declares {declared} tables but the body has {found}")]
    CountMismatch { declared: usize, found: usize },
    #[error("line {line}: bad table: {source}")]
    Table {
        line: usize,
        #[source]
        source: TableCodecError,
    },
    #[error("line {0}: empty input")]
    Empty(usize),
}

impl StructureKind {
    pub fn tag(self) -> &'static str {
        match self {
            StructureKind::CommutativeMonoid => "cm",
            StructureKind::AgMonoid => "ag",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "cm" => Some(StructureKind::CommutativeMonoid),
            "ag" => Some(StructureKind::AgMonoid),
            _ => None,
        }
    }
}

/// Row-major digits, one character per entry.
pub fn encode_table(t: &CayleyTable) -> Result<String, TableCodecError> {
    if t.order() > MAX_ENCODED_ORDER {
        return Err(TableCodecError::OrderTooLarge(t.order()));
    }
    Ok(t.raw().iter().map(|&c| char::from(b'0' + c)).collect())
}

pub fn decode_table(line: &str, n: usize) -> Result<CayleyTable, TableCodecError> {
    if n == 0 || n > MAX_ENCODED_ORDER {
        return Err(TableCodecError::OrderTooLarge(n));
    }
    let found = line.chars().count();
    if found != n * n {
        return Err(TableCodecError::Length {
            expected: n * n,
            found,
        });
    }
    let mut cells = Vec::with_capacity(n * n);
    for ch in line.chars() {
        let digit = ch.to_digit(10).ok_or(TableCodecError::NotADigit(ch))? as usize;
        if digit >= n {
            return Err(TableCodecError::DigitOutOfRange { digit, order: n });
        }
        cells.push(digit as u8);
    }
    Ok(CayleyTable::from_raw(n, cells))
}

/// Canonical tables of one order and kind, in file order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableDatabase {
    order: usize,
    kind: StructureKind,
    tables: Vec<CayleyTable>,
}

impl TableDatabase {
    pub fn new(order: usize, kind: StructureKind, tables: Vec<CayleyTable>) -> Result<Self, Error> {
        if order == 0 || order > MAX_ENCODED_ORDER {
            return Err(TableCodecError::OrderTooLarge(order).into());
        }
        if let Some(t) = tables.iter().find(|t| t.order() != order) {
            return Err(Error::SizeMismatch {
                left: order,
                right: t.order(),
            });
        }
        Ok(Self {
            order,
            kind,
            tables,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn kind(&self) -> StructureKind {
        self.kind
    }

    pub fn count(&self) -> usize {
        self.tables.len()
    }

    pub fn tables(&self) -> &[CayleyTable] {
        &self.tables
    }

    pub fn into_tables(self) -> Vec<CayleyTable> {
        self.tables
    }

    pub fn header(&self) -> String {
        format!(
            "{FORMAT_MAGIC} {FORMAT_VERSION} n={} kind={} count={}",
            self.order,
            self.kind.tag(),
            self.count()
        )
    }
}

pub fn write_db<W: Write>(db: &TableDatabase, mut out: W) -> Result<(), Error> {
    writeln!(out, "{}", db.header())?;
    for t in &db.tables {
        out.write_all(encode_table(t)?.as_bytes())?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_db_file(db: &TableDatabase, path: &Path) -> Result<(), Error> {
    write_db(db, BufWriter::new(File::create(path)?))
}

fn parse_header(line: &str) -> Result<(usize, StructureKind, usize), DbParseError> {
    let bad = |msg: &str| DbParseError::Header(msg.to_string());
    let fields: Vec<&str> = line.split(' ').collect();
    let [magic, version, n, kind, count] = fields[..] else {
        return Err(bad("expected 5 space-separated fields"));
    };
    if magic != FORMAT_MAGIC {
        return Err(bad("missing AGMON magic"));
    }
    if version != FORMAT_VERSION.to_string() {
        return Err(DbParseError::Header(format!(
            "unsupported version {version:?}"
        )));
    }
    let n: usize = n
        .strip_prefix("n=")
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| bad("bad n= field"))?;
    if n == 0 || n > MAX_ENCODED_ORDER {
        return Err(DbParseError::Header(format!("order {n} out of range")));
    }
    let kind = kind
        .strip_prefix("kind=")
        .and_then(StructureKind::from_tag)
        .ok_or_else(|| bad("bad kind= field"))?;
    let count: usize = count
        .strip_prefix("count=")
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| bad("bad count= field"))?;
    Ok((n, kind, count))
}

pub fn read_db<R: BufRead>(input: R) -> Result<TableDatabase, Error> {
    let mut lines = input.lines();
    let header = lines.next().ok_or(DbParseError::Empty(1))??;
    let (order, kind, declared) = parse_header(&header)?;
    let mut tables = Vec::with_capacity(declared.min(1 << 20));
    for (idx, line) in lines.enumerate() {
        let line = line?;
        let lineno = idx + 2;
        tables.push(
            decode_table(&line, order).map_err(|source| DbParseError::Table {
                line: lineno,
                source,
            })?,
        );
    }
    if tables.len() != declared {
        return Err(DbParseError::CountMismatch {
            declared,
            found: tables.len(),
        }
        .into());
    }
    Ok(TableDatabase {
        order,
        kind,
        tables,
    })
}

pub fn read_db_file(path: &Path) -> Result<TableDatabase, Error> {
    read_db(BufReader::new(File::open(path)?))
}

/// Parses disjoint cycles such as `(1,5)(2,4)`; `()` is the identity.
/// Whitespace between tokens is ignored.
pub fn parse_cycle_notation(text: &str, n: usize) -> Result<Permutation, CycleParseError> {
    let bytes = text.as_bytes();
    let mut images: Vec<usize> = (0..n).collect();
    let mut seen = vec![false; n];
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    skip_ws(&mut pos);
    if pos == bytes.len() {
        return Err(CycleParseError::Syntax {
            pos,
            reason: "empty input",
        });
    }
    while pos < bytes.len() {
        if bytes[pos] != b'(' {
            return Err(CycleParseError::Syntax {
                pos,
                reason: "expected '('",
            });
        }
        pos += 1;
        skip_ws(&mut pos);
        let mut cycle = Vec::new();
        if pos < bytes.len() && bytes[pos] == b')' {
            pos += 1;
        } else {
            loop {
                skip_ws(&mut pos);
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if start == pos {
                    return Err(CycleParseError::Syntax {
                        pos,
                        reason: "expected an element",
                    });
                }
                let element: usize =
                    text[start..pos]
                        .parse()
                        .map_err(|_| CycleParseError::Syntax {
                            pos: start,
                            reason: "element too large",
                        })?;
                if element >= n {
                    return Err(CycleParseError::OutOfRange { element, degree: n });
                }
                if std::mem::replace(&mut seen[element], true) {
                    return Err(CycleParseError::Repeated(element));
                }
                cycle.push(element);
                skip_ws(&mut pos);
                match bytes.get(pos) {
                    Some(b',') => pos += 1,
                    Some(b')') => {
                        pos += 1;
                        break;
                    }
                    _ => {
                        return Err(CycleParseError::Syntax {
                            pos,
                            reason: "expected ',' or ')'",
                        })
                    }
                }
            }
        }
        for (k, &x) in cycle.iter().enumerate() {
            images[x] = cycle[(k + 1) % cycle.len()];
        }
        skip_ws(&mut pos);
    }
    Ok(Permutation::from_images_unchecked(
        images.into_iter().map(|i| i as u8).collect(),
    ))
}

pub fn format_cycle_notation(p: &Permutation) -> String {
    p.to_string()
}

/// Moves the unique left identity of `t` to index 0 by a transposition.
pub fn relabel_identity_to_zero(t: &CayleyTable) -> Result<(CayleyTable, Permutation), Error> {
    let ids = t.left_identities();
    let [e] = ids[..] else {
        return Err(Error::LeftIdentity(ids.len()));
    };
    let swap = Permutation::transposition(t.order(), 0, e)?;
    Ok((t.apply_permutation(&swap)?, swap))
}
