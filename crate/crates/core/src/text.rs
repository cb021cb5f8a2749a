//! Token reader shared by the line-oriented input formats.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

pub(crate) struct Tokens<'a> {
    items: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Tokens<'a> {
    /// Splits on whitespace, dropping lines that start with `%`.
    pub(crate) fn new(text: &'a str) -> Self {
        let items = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim_start().starts_with('%'))
            .flat_map(|(n, l)| l.split_whitespace().map(move |t| (n + 1, t)))
            .collect();
        Tokens { items, pos: 0 }
    }

    pub(crate) fn line(&self) -> usize {
        self.items
            .get(self.pos)
            .or_else(|| self.items.last())
            .map_or(0, |&(n, _)| n)
    }

    pub(crate) fn peek(&self) -> Option<&'a str> {
        self.items.get(self.pos).map(|&(_, t)| t)
    }

    pub(crate) fn next(&mut self, what: &str) -> Result<&'a str> {
        match self.items.get(self.pos) {
            Some(&(_, t)) => {
                self.pos += 1;
                Ok(t)
            }
            None => Err(Error::parse(self.line(), format!("expected {what}, found end of input"))),
        }
    }

    pub(crate) fn expect(&mut self, keyword: &str) -> Result<()> {
        let line = self.line();
        let t = self.next(keyword)?;
        if t == keyword {
            Ok(())
        } else {
            Err(Error::parse(line, format!("expected `{keyword}`, found `{t}`")))
        }
    }

    pub(crate) fn usize(&mut self, what: &str) -> Result<usize> {
        let line = self.line();
        let t = self.next(what)?;
        t.parse()
            .map_err(|_| Error::parse(line, format!("bad {what} `{t}`")))
    }

    pub(crate) fn int(&mut self) -> Result<BigInt> {
        let line = self.line();
        let t = self.next("integer")?;
        t.parse()
            .map_err(|_| Error::parse(line, format!("bad integer `{t}`")))
    }

    /// A generator letter `a..z`, returned as a 0-based index.
    pub(crate) fn letter(&mut self) -> Result<usize> {
        let line = self.line();
        let t = self.next("generator letter")?;
        let mut cs = t.chars();
        match (cs.next(), cs.next()) {
            (Some(c @ 'a'..='z'), None) => Ok(c as usize - 'a' as usize),
            _ => Err(Error::parse(line, format!("bad generator letter `{t}`"))),
        }
    }

    pub(crate) fn matrix(&mut self, rows: usize, cols: usize) -> Result<IntMatrix> {
        let mut data = Vec::with_capacity(rows);
        for _ in 0..rows {
            let row = (0..cols).map(|_| self.int()).collect::<Result<Vec<_>>>()?;
            data.push(row);
        }
        IntMatrix::from_rows(data, cols)
    }

    pub(crate) fn finish(&self) -> Result<()> {
        match self.items.get(self.pos) {
            Some(&(n, t)) => Err(Error::parse(n, format!("unexpected `{t}`"))),
            None => Ok(()),
        }
    }
}

/// Collects `(letter, value)` pairs into a vector indexed by letter, requiring
/// the letters to be exactly `a, b, ...` without gaps or repeats.
pub(crate) fn by_letter<T>(entries: Vec<(usize, T)>) -> Result<Vec<T>> {
    let n = entries.len();
    let mut slots: Vec<Option<T>> = (0..n).map(|_| None).collect();
    for (k, v) in entries {
        if k >= n {
            return Err(Error::parse(
                0,
                format!("generator `{}` given but only {n} generators present", letter(k)),
            ));
        }
        if slots[k].replace(v).is_some() {
            return Err(Error::parse(0, format!("generator `{}` given twice", letter(k))));
        }
    }
    Ok(slots.into_iter().map(|s| s.expect("all slots filled")).collect())
}

pub(crate) fn letter(k: usize) -> char {
    (b'a' + k as u8) as char
}

pub(crate) fn matrix_rows(m: &IntMatrix) -> String {
    let mut s = String::new();
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|x| x.to_string()).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}
