use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use super::word::{Letter, Word};
use crate::abelian::FinGenAbelian;
use crate::error::ParseError;

/// `< generators | relators >`. Relators are freely reduced words over the
/// generator indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpPresentation {
    generator_names: Vec<String>,
    relators: Vec<Word>,
}

impl FpPresentation {
    /// Panics if a relator references a generator out of range.
    pub fn new(generator_names: Vec<String>, relators: Vec<Word>) -> Self {
        let n = generator_names.len();
        for r in &relators {
            if let Some(g) = r.max_generator() {
                assert!(g < n, "relator references generator {g} but only {n} exist");
            }
        }
        let relators = relators.iter().map(super::word::reduce).collect();
        Self {
            generator_names,
            relators,
        }
    }

    /// Generators named `x0, x1, ...`.
    pub fn with_anonymous_generators(num_gens: usize, relators: Vec<Word>) -> Self {
        Self::new((0..num_gens).map(|i| format!("x{i}")).collect(), relators)
    }

    pub fn num_gens(&self) -> usize {
        self.generator_names.len()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generator_names.iter().position(|n| n == name)
    }

    /// Cyclically reduces every relator, drops trivial ones and removes
    /// duplicates (keeping first occurrences). The group is unchanged.
    pub fn deduplicated(&self) -> Self {
        let mut seen = HashSet::new();
        let relators = self
            .relators
            .iter()
            .map(Word::cyclically_reduced)
            .filter(|r| !r.is_empty())
            .filter(|r| seen.insert(r.clone()))
            .collect();
        Self {
            generator_names: self.generator_names.clone(),
            relators,
        }
    }

    /// `G^ab`: Smith form of the relator exponent-sum matrix.
    pub fn abelianization(&self) -> FinGenAbelian {
        let n = self.num_gens();
        let rows = self.relators.iter().map(|r| {
            r.exponent_sums(n)
                .into_iter()
                .enumerate()
                .filter(|(_, e)| *e != 0)
                .map(|(j, e)| (j, BigInt::from(e)))
                .collect::<Vec<_>>()
        });
        FinGenAbelian::from_sparse_relations(n, rows)
    }

    /// Parses a word over this presentation's generator names.
    pub fn parse_word(&self, text: &str) -> Result<Word, ParseError> {
        let mut p = Parser::new(text);
        let w = p.word(&self.generator_names)?;
        p.skip_ws();
        if let Some(c) = p.peek() {
            return Err(ParseError::new(p.pos, format!("unexpected {c:?} after word")));
        }
        Ok(w)
    }
}

pub fn abelianization(p: &FpPresentation) -> FinGenAbelian {
    p.abelianization()
}

impl fmt::Display for FpPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "< {} |", self.generator_names.join(", "))?;
        for (i, r) in self.relators.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, " {}", r.display_with(&self.generator_names))?;
        }
        f.write_str(" >")
    }
}

impl FromStr for FpPresentation {
    type Err = ParseError;

    /// Grammar: `< a, b | a^2, b^-3, (a b)^3, [a, b], a b a = b a b >`.
    /// Words are juxtaposed factors, optionally separated by `*`; exponents
    /// may be negative; `lhs = rhs` becomes the relator `lhs rhs^-1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser::new(s);
        p.expect('<')?;
        let mut names = Vec::new();
        p.skip_ws();
        if p.peek() != Some('|') {
            loop {
                p.skip_ws();
                let at = p.pos;
                let name = p.ident()?;
                if names.contains(&name) {
                    return Err(ParseError::new(at, format!("duplicate generator {name:?}")));
                }
                names.push(name);
                p.skip_ws();
                match p.peek() {
                    Some(',') => p.bump(),
                    Some('|') => break,
                    Some(c) => return Err(ParseError::new(p.pos, format!("expected ',' or '|', found {c:?}"))),
                    None => return Err(ParseError::new(p.pos, "unterminated presentation")),
                }
            }
        }
        p.expect('|')?;
        let mut relators = Vec::new();
        p.skip_ws();
        if p.peek() != Some('>') {
            loop {
                let lhs = p.word(&names)?;
                p.skip_ws();
                let rel = if p.peek() == Some('=') {
                    p.bump();
                    let rhs = p.word(&names)?;
                    lhs.mul(&rhs.inverse())
                } else {
                    lhs
                };
                relators.push(rel);
                p.skip_ws();
                match p.peek() {
                    Some(',') => p.bump(),
                    Some('>') => break,
                    Some(c) => return Err(ParseError::new(p.pos, format!("expected ',' or '>', found {c:?}"))),
                    None => return Err(ParseError::new(p.pos, "unterminated presentation")),
                }
            }
        }
        p.expect('>')?;
        p.skip_ws();
        if let Some(c) = p.peek() {
            return Err(ParseError::new(p.pos, format!("trailing input {c:?}")));
        }
        Ok(Self::new(names, relators))
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Self { src, pos: 0 }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) {
        if let Some(c) = self.peek() {
            self.pos += c.len_utf8();
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(x) if x == c => {
                self.bump();
                Ok(())
            }
            Some(x) => Err(ParseError::new(self.pos, format!("expected {c:?}, found {x:?}"))),
            None => Err(ParseError::new(self.pos, format!("expected {c:?}, found end of input"))),
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_alphabetic() => self.bump(),
            Some(c) => return Err(ParseError::new(self.pos, format!("expected generator name, found {c:?}"))),
            None => return Err(ParseError::new(self.pos, "expected generator name, found end of input")),
        }
        while self.peek().is_some_and(|c| c.is_alphanumeric() || c == '_') {
            self.bump();
        }
        Ok(self.src[start..self.pos].to_string())
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.peek(), Some('-') | Some('+')) {
            self.bump();
        }
        let digits = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        if digits == self.pos {
            return Err(ParseError::new(self.pos, "expected an integer exponent"));
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| ParseError::new(start, "exponent out of range"))
    }

    fn word(&mut self, names: &[String]) -> Result<Word, ParseError> {
        let mut w = Word::identity();
        loop {
            self.skip_ws();
            match self.peek() {
                Some('*') | Some('.') => {
                    self.bump();
                    continue;
                }
                Some(c) if c.is_alphabetic() || c == '(' || c == '[' || c == '1' => {
                    let f = self.factor(names)?;
                    w = w.mul(&f);
                }
                _ => break,
            }
        }
        Ok(w)
    }

    fn factor(&mut self, names: &[String]) -> Result<Word, ParseError> {
        self.skip_ws();
        let atom = match self.peek() {
            Some('(') => {
                self.bump();
                let w = self.word(names)?;
                self.expect(')')?;
                w
            }
            Some('[') => {
                self.bump();
                let x = self.word(names)?;
                self.expect(',')?;
                let y = self.word(names)?;
                self.expect(']')?;
                Word::commutator(&x, &y)
            }
            Some('1') => {
                self.bump();
                Word::identity()
            }
            _ => {
                let at = self.pos;
                let name = self.ident()?;
                let g = names
                    .iter()
                    .position(|n| *n == name)
                    .ok_or_else(|| ParseError::new(at, format!("unknown generator {name:?}")))?;
                Word::new([Letter::pos(g)])
            }
        };
        self.skip_ws();
        if self.peek() == Some('^') {
            self.bump();
            let e = self.integer()?;
            Ok(atom.pow(e))
        } else {
            Ok(atom)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_grammar_example() {
        let p: FpPresentation = "< a, b | a^2, b^2, (a b)^3 >".parse().unwrap();
        assert_eq!(p.num_gens(), 2);
        assert_eq!(p.relators().len(), 3);
        assert_eq!(p.relators()[2], Word::from_signed(&[1, 2, 1, 2, 1, 2]));
        assert_eq!(p.to_string(), "< a, b | a^2, b^2, a b a b a b >");
    }

    #[test]
    fn equations_and_commutators() {
        let p: FpPresentation = "<s1,s2 | s1 s2 s1 = s2 s1 s2, [s1, s2^-1]>".parse().unwrap();
        assert_eq!(p.relators()[0], Word::from_signed(&[1, 2, 1, -2, -1, -2]));
        assert_eq!(p.relators()[1], Word::from_signed(&[-1, 2, 1, -2]));
    }

    #[test]
    fn unknown_generator_is_rejected_with_position() {
        let err = "< a, b | a^2, c b >".parse::<FpPresentation>().unwrap_err();
        assert_eq!(err.position, 14);
        assert!(err.message.contains("\"c\""));
    }

    #[test]
    fn malformed_inputs() {
        assert!("< a | a^ >".parse::<FpPresentation>().is_err());
        assert!("< a, a | >".parse::<FpPresentation>().is_err());
        assert!("< a | a".parse::<FpPresentation>().is_err());
        assert!("a | a >".parse::<FpPresentation>().is_err());
    }

    #[test]
    fn trivial_and_free_presentations() {
        let p: FpPresentation = "< | >".parse().unwrap();
        assert!(p.abelianization().is_trivial());
        let f: FpPresentation = "< x, y, z | >".parse().unwrap();
        assert_eq!(f.abelianization(), FinGenAbelian::free(3));
    }

    #[test]
    fn abelianization_examples() {
        let b3: FpPresentation = "< s1, s2 | s1 s2 s1 = s2 s1 s2 >".parse().unwrap();
        assert_eq!(b3.abelianization(), FinGenAbelian::free(1));
        let z2: FpPresentation = "< a | a^2 >".parse().unwrap();
        assert_eq!(z2.abelianization(), FinGenAbelian::cyclic(2));
    }

    #[test]
    fn dedup_removes_conjugate_copies() {
        let p: FpPresentation = "< a, b | a^2, b a^2 b^-1, a^2, 1 >".parse().unwrap();
        assert_eq!(p.deduplicated().relators().len(), 1);
    }
}
