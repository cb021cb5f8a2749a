//! Words, finite presentations, homomorphisms and Fox calculus.
//!
//! A letter is a nonzero `i32`: `k + 1` stands for generator `k` and
//! `-(k + 1)` for its inverse. In text, generator `k` is the `k`-th lowercase
//! ASCII letter and its inverse the matching uppercase letter, so `abAB` is
//! the commutator of the first two generators.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, IntMatrix};

/// Letters are limited to `a..=z` in text.
pub const MAX_TEXT_RANK: usize = 26;

fn letter_key(l: i32) -> (u32, bool) {
    (l.unsigned_abs(), l < 0)
}

/// A freely reduced word in a free group.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<i32>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn generator(k: usize) -> Self {
        Word(vec![k as i32 + 1])
    }

    /// Builds a word from letters, reducing freely. Panics on a zero letter.
    pub fn from_letters(letters: impl IntoIterator<Item = i32>) -> Self {
        let mut out: Vec<i32> = Vec::new();
        for l in letters {
            assert!(l != 0, "zero is not a letter");
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Parses letters `a..z` / `A..Z`. A lone `1` (or the empty string) is the
    /// identity.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(Word::identity());
        }
        let letters = s
            .chars()
            .map(|c| match c {
                'a'..='z' => Ok(c as i32 - 'a' as i32 + 1),
                'A'..='Z' => Ok(-(c as i32 - 'A' as i32 + 1)),
                _ => Err(Error::InvalidArgument(format!("bad letter `{c}` in word `{s}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Word::from_letters(letters))
    }

    /// Parses and checks every letter against `rank`.
    pub fn parse_in_rank(s: &str, rank: usize) -> Result<Self> {
        let w = Word::parse(s)?;
        w.check_rank(rank)?;
        Ok(w)
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest generator index used, plus one.
    pub fn min_rank(&self) -> usize {
        self.0.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0)
    }

    pub fn check_rank(&self, rank: usize) -> Result<()> {
        match self.0.iter().find(|l| l.unsigned_abs() as usize > rank) {
            Some(&l) => Err(Error::InvalidGenerator {
                index: l.unsigned_abs() as i64 - 1,
                rank,
            }),
            None => Ok(()),
        }
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| -l).collect())
    }

    pub fn mul(&self, other: &Word) -> Word {
        Word::from_letters(self.0.iter().chain(&other.0).copied())
    }

    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let n = e.unsigned_abs() as usize;
        Word::from_letters(std::iter::repeat_n(base.0, n).flatten())
    }

    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.mul(b).mul(&a.inverse()).mul(&b.inverse())
    }

    pub fn conjugate_by(&self, c: &Word) -> Word {
        c.mul(self).mul(&c.inverse())
    }

    /// Exponent sum of each generator, i.e. the image in `Z^rank`.
    pub fn exponent_vector(&self, rank: usize) -> Vec<BigInt> {
        let mut v = vec![0i64; rank];
        for &l in &self.0 {
            v[l.unsigned_abs() as usize - 1] += l.signum() as i64;
        }
        v.into_iter().map(BigInt::from).collect()
    }

    /// Substitutes `images[k]` for generator `k`.
    pub fn substitute(&self, images: &[Word]) -> Word {
        Word::from_letters(self.0.iter().flat_map(|&l| {
            let w = &images[l.unsigned_abs() as usize - 1];
            if l > 0 {
                w.0.clone()
            } else {
                w.inverse().0
            }
        }))
    }
}

/// Shortlex: shorter words first, then letter by letter with
/// `x1 < x1^-1 < x2 < x2^-1 < ...`.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| {
            self.0
                .iter()
                .map(|&l| letter_key(l))
                .cmp(other.0.iter().map(|&l| letter_key(l)))
        })
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for &l in &self.0 {
            let k = l.unsigned_abs() as usize - 1;
            if k < MAX_TEXT_RANK {
                let c = (b'a' + k as u8) as char;
                let c = if l < 0 { c.to_ascii_uppercase() } else { c };
                write!(f, "{c}")?;
            } else if l < 0 {
                write!(f, "[x{}^-1]", k + 1)?;
            } else {
                write!(f, "[x{}]", k + 1)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// Reduces a raw letter sequence, rejecting letters outside `1..=rank`.
pub fn free_reduce(letters: &[i32], rank: usize) -> Result<Word> {
    if let Some(&l) = letters
        .iter()
        .find(|&&l| l == 0 || l.unsigned_abs() as usize > rank)
    {
        return Err(Error::InvalidGenerator {
            index: l.unsigned_abs() as i64 - 1,
            rank,
        });
    }
    Ok(Word::from_letters(letters.iter().copied()))
}

/// A finite presentation `< x1..xn | r1..rk >`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Presentation {
    rank: usize,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(rank: usize, relators: Vec<Word>) -> Result<Self> {
        for r in &relators {
            if r.is_empty() {
                return Err(Error::InvalidPresentation("empty relator".into()));
            }
            r.check_rank(rank)?;
        }
        Ok(Presentation { rank, relators })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn is_free(&self) -> bool {
        self.relators.is_empty()
    }

    /// One row per relator, one column per generator.
    pub fn exponent_matrix(&self) -> IntMatrix {
        let rows = self
            .relators
            .iter()
            .map(|r| r.exponent_vector(self.rank))
            .collect();
        IntMatrix::from_rows(rows, self.rank).expect("uniform rows")
    }

    /// Parses the line-oriented presentation format:
    ///
    /// ```text
    /// % comment
    /// gens a b c d
    /// rel abAB
    /// ```
    ///
    /// Generator letters are listed on the `gens` line; each gets the index
    /// of its position there.
    pub fn parse(text: &str) -> Result<Self> {
        let mut names: Option<Vec<char>> = None;
        let mut relators = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('%') {
                continue;
            }
            let mut parts = line.split_whitespace();
            match parts.next() {
                Some("gens") => {
                    if names.is_some() {
                        return Err(Error::parse(line_no, "duplicate `gens` line"));
                    }
                    let mut list = Vec::new();
                    for tok in parts {
                        let mut cs = tok.chars();
                        match (cs.next(), cs.next()) {
                            (Some(c @ 'a'..='z'), None) if !list.contains(&c) => list.push(c),
                            _ => {
                                return Err(Error::parse(
                                    line_no,
                                    format!("bad generator name `{tok}`"),
                                ))
                            }
                        }
                    }
                    names = Some(list);
                }
                Some("rel") => {
                    let names = names
                        .as_ref()
                        .ok_or_else(|| Error::parse(line_no, "`rel` before `gens`"))?;
                    let body: String = parts.collect();
                    if body.is_empty() {
                        return Err(Error::parse(line_no, "empty relator"));
                    }
                    let mut letters = Vec::with_capacity(body.len());
                    for c in body.chars() {
                        let idx = names
                            .iter()
                            .position(|&n| n == c.to_ascii_lowercase())
                            .ok_or_else(|| {
                                Error::parse(line_no, format!("unknown generator `{c}`"))
                            })?;
                        let l = idx as i32 + 1;
                        letters.push(if c.is_ascii_uppercase() { -l } else { l });
                    }
                    let w = Word::from_letters(letters);
                    if w.is_empty() {
                        return Err(Error::parse(line_no, "relator reduces to the identity"));
                    }
                    relators.push(w);
                }
                Some(other) => {
                    return Err(Error::parse(line_no, format!("unknown directive `{other}`")))
                }
                None => unreachable!(),
            }
        }
        let names = names.ok_or_else(|| Error::parse(0, "missing `gens` line"))?;
        Presentation::new(names.len(), relators)
    }

    /// Serializes with the default alphabet `a, b, c, ...`.
    pub fn to_text(&self) -> Result<String> {
        if self.rank > MAX_TEXT_RANK {
            return Err(Error::InvalidArgument(format!(
                "rank {} exceeds the {MAX_TEXT_RANK} letters of the text format",
                self.rank
            )));
        }
        let gens: Vec<String> = (0..self.rank)
            .map(|k| ((b'a' + k as u8) as char).to_string())
            .collect();
        let mut s = format!("gens {}\n", gens.join(" "));
        for r in &self.relators {
            s.push_str(&format!("rel {r}\n"));
        }
        Ok(s)
    }
}

/// Closed orientable surface group: generators `a1, b1, ..., ag, bg` (in that
/// order) and the single relator `[a1,b1]...[ag,bg]`.
pub fn surface_presentation(genus: usize) -> Result<Presentation> {
    if genus == 0 {
        return Err(Error::InvalidArgument(
            "genus must be at least 1 (the sphere group is trivial)".into(),
        ));
    }
    Presentation::new(2 * genus, vec![surface_relator(genus, 0)])
}

/// `[x_off+1, x_off+2] ... ` for `genus` handles starting at generator `offset`.
pub(crate) fn surface_relator(genus: usize, offset: usize) -> Word {
    Word::from_letters((0..genus).flat_map(|i| {
        let a = (offset + 2 * i) as i32 + 1;
        let b = a + 1;
        [a, b, -a, -b]
    }))
}

pub fn free_presentation(rank: usize) -> Result<Presentation> {
    if rank == 0 {
        return Err(Error::InvalidArgument("free rank must be at least 1".into()));
    }
    Presentation::new(rank, Vec::new())
}

/// `free_rank` copies of `Z` plus the cyclic torsion factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    /// Each factor is greater than one and divides the next.
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn is_free_abelian(&self) -> bool {
        self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 {
                "Z".into()
            } else {
                format!("Z^{}", self.free_rank)
            });
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

pub fn abelianization(p: &Presentation) -> AbelianInvariants {
    let snf = smith_normal_form(&p.exponent_matrix());
    AbelianInvariants {
        free_rank: p.rank() - snf.rank(),
        torsion: snf.torsion(),
    }
}

/// A homomorphism given by generator images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    source: Presentation,
    target: Presentation,
    images: Vec<Word>,
    verified: bool,
}

impl GroupHom {
    /// For a free target every source relator must map to the identity; this is
    /// checked. Otherwise well-definedness is taken on trust and
    /// [`GroupHom::is_verified`] reports `false`.
    pub fn new(source: Presentation, target: Presentation, images: Vec<Word>) -> Result<Self> {
        if images.len() != source.rank() {
            return Err(Error::Dimension(format!(
                "{} images for {} generators",
                images.len(),
                source.rank()
            )));
        }
        for w in &images {
            w.check_rank(target.rank())?;
        }
        let verified = target.is_free();
        if verified {
            for r in source.relators() {
                let img = r.substitute(&images);
                if !img.is_empty() {
                    return Err(Error::NotWellDefined(format!(
                        "relator {r} maps to {img}"
                    )));
                }
            }
        }
        Ok(GroupHom {
            source,
            target,
            images,
            verified,
        })
    }

    pub fn source(&self) -> &Presentation {
        &self.source
    }

    pub fn target(&self) -> &Presentation {
        &self.target
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub fn apply(&self, w: &Word) -> Word {
        w.substitute(&self.images)
    }

    /// The induced map on abelianizations as a `target_rank x source_rank`
    /// matrix: column `j` is the exponent vector of the image of generator `j`.
    pub fn abelianized_matrix(&self) -> IntMatrix {
        let cols: Vec<Vec<BigInt>> = self
            .images
            .iter()
            .map(|w| w.exponent_vector(self.target.rank()))
            .collect();
        IntMatrix::from_columns(&cols, self.target.rank())
    }
}

/// The surjection `a_i, b_i -> x_i` for `i <= n` and `a_i, b_i -> 1` for
/// `i > n`, from the genus-`g` surface group onto the free group of rank `n`.
/// Exists only for `n <= g`.
pub fn standard_surjection(genus: usize, n: usize) -> Result<GroupHom> {
    if n == 0 {
        return Err(Error::InvalidArgument("free rank must be at least 1".into()));
    }
    if n > genus {
        return Err(Error::InvalidArgument(format!(
            "no surjection from the genus-{genus} surface group onto a free group of rank {n}: \
             requires genus >= rank"
        )));
    }
    let images = (0..genus)
        .flat_map(|i| {
            let w = if i < n {
                Word::generator(i)
            } else {
                Word::identity()
            };
            [w.clone(), w]
        })
        .collect();
    GroupHom::new(surface_presentation(genus)?, free_presentation(n)?, images)
}

/// A finite `Z`-linear combination of group elements (words).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GroupRingElement {
    terms: BTreeMap<Word, i64>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, Word::identity())
    }

    pub fn monomial(coeff: i64, w: Word) -> Self {
        let mut e = Self::zero();
        e.add_term(coeff, w);
        e
    }

    pub fn add_term(&mut self, coeff: i64, w: Word) {
        if coeff == 0 {
            return;
        }
        let c = self.terms.entry(w.clone()).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.remove(&w);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in shortlex order of their words.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn coefficient(&self, w: &Word) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(c, w.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(-c, w.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (u, a) in self.terms() {
            for (v, b) in other.terms() {
                out.add_term(a * b, u.mul(v));
            }
        }
        out
    }

    /// Sum of coefficients.
    pub fn augmentation(&self) -> i64 {
        self.terms.values().sum()
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms().enumerate() {
            let sign = if c < 0 { "-" } else if i > 0 { "+" } else { "" };
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(sign)?;
            if i > 0 && !sign.is_empty() {
                f.write_str(" ")?;
            }
            let a = c.unsigned_abs();
            match (a, w.is_empty()) {
                (1, true) => f.write_str("1")?,
                (1, false) => write!(f, "{w}")?,
                (_, true) => write!(f, "{a}")?,
                (_, false) => write!(f, "{a}{w}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupRingElement({self})")
    }
}

/// Fox derivative of `w` with respect to generator `j` (0-based).
///
/// For `w = y1 ... yk` this is the sum over positions of the prefix
/// `y1 ... y(i-1)` where `y_i = x_j`, minus the prefix `y1 ... y_i` where
/// `y_i = x_j^-1`.
pub fn fox_derivative(w: &Word, j: usize) -> GroupRingElement {
    let target = j as i32 + 1;
    let mut out = GroupRingElement::zero();
    let mut prefix: Vec<i32> = Vec::with_capacity(w.len());
    for &l in w.letters() {
        if l == target {
            out.add_term(1, Word::from_letters(prefix.iter().copied()));
        }
        prefix.push(l);
        if l == -target {
            out.add_term(-1, Word::from_letters(prefix.iter().copied()));
        }
    }
    out
}
