use std::fmt;

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        Self { gen, inverse }
    }

    pub fn pos(gen: usize) -> Self {
        Self::new(gen, false)
    }

    pub fn neg(gen: usize) -> Self {
        Self::new(gen, true)
    }

    pub fn inv(self) -> Self {
        Self::new(self.gen, !self.inverse)
    }

    /// Coset-table column: `2 * gen` for the generator, `2 * gen + 1` for its inverse.
    pub fn column(self) -> usize {
        2 * self.gen + usize::from(self.inverse)
    }

    pub fn from_column(col: usize) -> Self {
        Self::new(col / 2, col % 2 == 1)
    }
}

/// Freely reduced word in the free group on `0..n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Self(Vec::new())
    }

    /// Builds a word and freely reduces it.
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut w = Self(Vec::new());
        for l in letters {
            w.push(l);
        }
        w
    }

    /// Builds a word from signed generator numbers: `k + 1` is generator `k`,
    /// `-(k + 1)` its inverse.
    pub fn from_signed(letters: &[i64]) -> Self {
        Self::new(letters.iter().map(|&x| {
            assert!(x != 0, "signed letters are 1-based");
            Letter::new(x.unsigned_abs() as usize - 1, x < 0)
        }))
    }

    pub fn gen(g: usize) -> Self {
        Self(vec![Letter::pos(g)])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Appends a letter, cancelling against the last one if they are inverse.
    pub fn push(&mut self, l: Letter) {
        if self.0.last() == Some(&l.inv()) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &l in &other.0 {
            w.push(l);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::identity();
        for _ in 0..e.unsigned_abs() {
            w = w.mul(&base);
        }
        w
    }

    /// `x^-1 y^-1 x y`
    pub fn commutator(x: &Word, y: &Word) -> Word {
        x.inverse().mul(&y.inverse()).mul(x).mul(y)
    }

    /// Strips inverse pairs from the two ends. Used for relators, which only
    /// matter up to conjugation.
    pub fn cyclically_reduced(&self) -> Word {
        let mut lo = 0;
        let mut hi = self.0.len();
        while hi - lo >= 2 && self.0[lo] == self.0[hi - 1].inv() {
            lo += 1;
            hi -= 1;
        }
        Word(self.0[lo..hi].to_vec())
    }

    /// Substitutes a word for each generator.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut w = Word::identity();
        for l in &self.0 {
            let img = &images[l.gen];
            if l.inverse {
                for &x in img.0.iter().rev() {
                    w.push(x.inv());
                }
            } else {
                for &x in &img.0 {
                    w.push(x);
                }
            }
        }
        w
    }

    /// Exponent sum of each generator.
    pub fn exponent_sums(&self, num_gens: usize) -> Vec<i64> {
        let mut v = vec![0; num_gens];
        for l in &self.0 {
            v[l.gen] += if l.inverse { -1 } else { 1 };
        }
        v
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.gen).max()
    }

    /// Renders with the given generator names, using `^-1` for inverses and
    /// collapsing runs into powers.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        WordDisplay { word: self, names }
    }
}

/// Freely reduces a word. Idempotent.
pub fn reduce(w: &Word) -> Word {
    Word::new(w.0.iter().copied())
}

struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("1");
        }
        let letters = &self.word.0;
        let mut i = 0;
        let mut first = true;
        while i < letters.len() {
            let mut j = i;
            while j < letters.len() && letters[j] == letters[i] {
                j += 1;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            let l = letters[i];
            let run = (j - i) as i64;
            let e = if l.inverse { -run } else { run };
            let name = self.names.get(l.gen).map_or_else(|| format!("g{}", l.gen), Clone::clone);
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
            i = j;
        }
        Ok(())
    }
}
