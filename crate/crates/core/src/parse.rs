//! Text syntax for words and presentations.
//!
//! ```text
//! word := term (ws term)* | "1"
//! term := generator ("^" integer)?
//! generator := "x" index | "y" index | "a" | "c"
//! ```
//!
//! Indices are 1-based. Powers expand to runs of letters; nothing is reduced.

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::word::{Letter, TwoGen, TwoGenWord, TwoLetter, Word};

const MAX_POWER: i64 = 1_000_000;

/// Generator symbol as written.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Symbol {
    Indexed { prefix: char, index: i64 },
    Named(String),
}

struct Term {
    symbol: Symbol,
    power: i64,
    position: usize,
}

fn err(position: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        position,
        message: message.into(),
    }
}

fn scan_integer(bytes: &[u8], mut i: usize, signed: bool) -> Result<(i64, usize)> {
    let start = i;
    if signed && i < bytes.len() && (bytes[i] == b'-' || bytes[i] == b'+') {
        i += 1;
    }
    let digits = i;
    while i < bytes.len() && bytes[i].is_ascii_digit() {
        i += 1;
    }
    if i == digits {
        return Err(err(start, "expected an integer"));
    }
    let text = std::str::from_utf8(&bytes[start..i]).expect("ascii");
    let value = text
        .parse::<i64>()
        .map_err(|_| err(start, "integer out of range"))?;
    Ok((value, i))
}

/// Split into terms. Identifiers are `[A-Za-z_][A-Za-z0-9_]*`; `x12` and
/// `y3` are read as indexed symbols.
fn terms(text: &str) -> Result<Vec<Term>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    if text.trim() == "1" {
        return Ok(out);
    }
    while i < bytes.len() {
        if bytes[i].is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let position = i;
        if !(bytes[i].is_ascii_alphabetic() || bytes[i] == b'_') {
            return Err(err(i, format!("unexpected character `{}`", text[i..].chars().next().unwrap_or('?'))));
        }
        let mut j = i + 1;
        while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_') {
            j += 1;
        }
        let ident = &text[i..j];
        let first = ident.as_bytes()[0];
        let rest = &ident[1..];
        let symbol = if (first == b'x' || first == b'y')
            && !rest.is_empty()
            && rest.bytes().all(|b| b.is_ascii_digit())
        {
            let (index, _) = scan_integer(bytes, i + 1, false)?;
            Symbol::Indexed {
                prefix: first as char,
                index,
            }
        } else {
            Symbol::Named(ident.to_string())
        };
        i = j;
        let mut power = 1;
        if i < bytes.len() && bytes[i] == b'^' {
            let (p, next) = scan_integer(bytes, i + 1, true)?;
            if p.abs() > MAX_POWER {
                return Err(err(i + 1, format!("power {p} is larger than {MAX_POWER}")));
            }
            power = p;
            i = next;
        }
        if i < bytes.len() && !bytes[i].is_ascii_whitespace() {
            return Err(err(i, "terms must be separated by whitespace"));
        }
        out.push(Term {
            symbol,
            power,
            position,
        });
    }
    Ok(out)
}

/// A word over `x_1..x_n` (or `y_1..y_n`; the two prefixes may not mix).
pub fn parse_word(text: &str, n: usize) -> Result<Word> {
    if n == 0 {
        return Err(Error::InvalidParameters("n must be positive".into()));
    }
    let mut letters = Vec::new();
    let mut prefix_seen: Option<char> = None;
    for t in terms(text)? {
        let (prefix, index) = match t.symbol {
            Symbol::Indexed { prefix, index } => (prefix, index),
            Symbol::Named(name) => {
                return Err(err(t.position, format!("expected x<i> or y<i>, found `{name}`")));
            }
        };
        if *prefix_seen.get_or_insert(prefix) != prefix {
            return Err(err(t.position, "x and y generators cannot be mixed"));
        }
        if index < 1 || index as usize > n {
            return Err(err(t.position, format!("index {index} out of range 1..{n}")));
        }
        let l = Letter::new(index as usize - 1, t.power < 0);
        letters.extend(std::iter::repeat_n(l, t.power.unsigned_abs() as usize));
    }
    Ok(Word::from_letters(n, letters))
}

/// A word over `a, c`. Not reduced.
pub fn parse_two_gen(text: &str) -> Result<TwoGenWord> {
    let mut letters = Vec::new();
    for t in terms(text)? {
        let gen = match &t.symbol {
            Symbol::Named(s) if s == "a" => TwoGen::A,
            Symbol::Named(s) if s == "c" => TwoGen::C,
            _ => return Err(err(t.position, "expected `a` or `c`")),
        };
        let l = TwoLetter {
            gen,
            inverse: t.power < 0,
        };
        letters.extend(std::iter::repeat_n(l, t.power.unsigned_abs() as usize));
    }
    Ok(TwoGenWord::from_letters(letters))
}

/// `< g1, g2, ... | r1, r2, ... >` with arbitrary generator names.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let trimmed = text.trim();
    let open = text.find('<').ok_or_else(|| err(0, "expected `<`"))?;
    let close = text.rfind('>').ok_or_else(|| err(trimmed.len(), "expected `>`"))?;
    let bar = text[open..close]
        .find('|')
        .map(|b| b + open)
        .ok_or_else(|| err(open, "expected `|`"))?;
    let generators: Vec<String> = text[open + 1..bar]
        .split(',')
        .map(|g| g.trim().to_string())
        .filter(|g| !g.is_empty())
        .collect();
    for (i, g) in generators.iter().enumerate() {
        if generators[..i].contains(g) {
            return Err(err(open + 1, format!("generator `{g}` repeated")));
        }
    }
    let mut relators = Vec::new();
    let mut offset = bar + 1;
    for chunk in text[bar + 1..close].split(',') {
        if !chunk.trim().is_empty() {
            relators.push(word_over(chunk, &generators).map_err(|e| match e {
                Error::Parse { position, message } => err(position + offset, message),
                other => other,
            })?);
        }
        offset += chunk.len() + 1;
    }
    if generators.is_empty() {
        return Err(err(open + 1, "no generators"));
    }
    Ok(Presentation::new(generators, relators))
}

fn word_over(text: &str, generators: &[String]) -> Result<Word> {
    let mut letters = Vec::new();
    for t in terms(text)? {
        let name = match t.symbol {
            Symbol::Indexed { prefix, index } => format!("{prefix}{index}"),
            Symbol::Named(s) => s,
        };
        let index = generators
            .iter()
            .position(|g| *g == name)
            .ok_or_else(|| err(t.position, format!("unknown generator `{name}`")))?;
        let l = Letter::new(index, t.power < 0);
        letters.extend(std::iter::repeat_n(l, t.power.unsigned_abs() as usize));
    }
    Ok(Word::from_letters(generators.len(), letters))
}
