use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::braid_space::Generator;
use crate::error::{Error, Result};

/// A generator raised to a nonzero power.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub generator: Generator,
    pub power: i32,
}

impl Letter {
    pub fn new(generator: Generator, power: i32) -> Result<Self> {
        if power == 0 {
            return Err(Error::WordParse("letter power must be nonzero".into()));
        }
        Ok(Letter { generator, power })
    }

    pub fn inverse(self) -> Letter {
        Letter { generator: self.generator, power: -self.power }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.power == 1 {
            write!(f, "s{}", self.generator.index())
        } else {
            write!(f, "s{}^{}", self.generator.index(), self.power)
        }
    }
}

impl FromStr for Letter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .strip_prefix('s')
            .or_else(|| s.strip_prefix('σ'))
            .ok_or_else(|| Error::WordParse(format!("letter `{s}` must start with `s`")))?;
        let (index, power) = match body.split_once('^') {
            Some((i, p)) => (i, p.parse::<i32>().map_err(|e| Error::WordParse(format!("power in `{s}`: {e}")))?),
            None => (body, 1),
        };
        let index = index.parse::<u32>().map_err(|e| Error::WordParse(format!("generator in `{s}`: {e}")))?;
        let generator = Generator::try_from(index).map_err(|_| Error::WordParse(format!("unknown generator in `{s}`")))?;
        Letter::new(generator, power)
    }
}

/// A product of generator powers.
///
/// Letters are stored in the order they act on states: `letters()[0]` is
/// applied first, so the word `[l0, l1, l2]` evaluates to `M(l2) M(l1) M(l0)`
/// and concatenating `w1` then `w2` evaluates to `U(w2) U(w1)`.
///
/// The text form is the operator product as written in formulas, with the
/// rightmost letter acting first: `"s12^4 s23^-2 s12^2"` applies `s12^2`
/// first. The empty word prints as `id`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn empty() -> Self {
        BraidWord::default()
    }

    /// Build from letters in application order.
    pub fn from_letters(letters: Vec<Letter>) -> Result<Self> {
        if letters.iter().any(|l| l.power == 0) {
            return Err(Error::WordParse("letter power must be nonzero".into()));
        }
        Ok(BraidWord { letters })
    }

    /// Build from an operator product written left to right, where the
    /// rightmost factor acts first.
    pub fn from_operator_product(factors: &[(Generator, i32)]) -> Result<Self> {
        let letters = factors.iter().rev().map(|&(g, p)| Letter::new(g, p)).collect::<Result<Vec<_>>>()?;
        Ok(BraidWord { letters })
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of elementary exchanges, `sum |power|`.
    pub fn crossings(&self) -> u32 {
        self.letters.iter().map(|l| l.power.unsigned_abs()).sum()
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &BraidWord) -> BraidWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { letters }
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    /// Merge adjacent letters on the same generator and drop zero powers.
    pub fn canonicalize(&self) -> BraidWord {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &letter in &self.letters {
            match out.last_mut() {
                Some(last) if last.generator == letter.generator => {
                    last.power += letter.power;
                    if last.power == 0 {
                        out.pop();
                    }
                }
                _ => out.push(letter),
            }
        }
        BraidWord { letters: out }
    }

    pub fn is_canonical(&self) -> bool {
        self.letters.windows(2).all(|w| w[0].generator != w[1].generator)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "id");
        }
        let parts: Vec<String> = self.letters.iter().rev().map(Letter::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for BraidWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        if trimmed.is_empty() || trimmed == "id" {
            return Ok(BraidWord::empty());
        }
        let mut letters = trimmed
            .split(|ch: char| ch.is_whitespace() || ch == '*' || ch == '.')
            .filter(|t| !t.is_empty())
            .map(Letter::from_str)
            .collect::<Result<Vec<_>>>()?;
        letters.reverse();
        Ok(BraidWord { letters })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let w: BraidWord = "s12^4 s23^-2 s12".parse().unwrap();
        assert_eq!(w.letters()[0], Letter { generator: Generator::S12, power: 1 });
        assert_eq!(w.to_string(), "s12^4 s23^-2 s12");
        assert_eq!("id".parse::<BraidWord>().unwrap(), BraidWord::empty());
    }

    #[test]
    fn parse_errors() {
        assert!("s13".parse::<BraidWord>().is_err());
        assert!("s12^0".parse::<BraidWord>().is_err());
        assert!("x12".parse::<BraidWord>().is_err());
        assert!("s12^a".parse::<BraidWord>().is_err());
    }

    #[test]
    fn canonicalize_merges_and_cancels() {
        let w: BraidWord = "s23 s12^2 s12^-2 s23^2".parse().unwrap();
        let c = w.canonicalize();
        assert_eq!(c.to_string(), "s23^3");
        assert!(c.is_canonical());
        assert!(!w.is_canonical());
    }
}
