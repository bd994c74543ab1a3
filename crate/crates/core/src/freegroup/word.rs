use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_RANK: u8 = 4;

/// A signed generator: `g` for the generator with index `g`, `-g` for its inverse.
pub type Letter = i8;

const LOWER: [char; 4] = ['a', 'b', 'c', 'd'];
const UPPER: [char; 4] = ['A', 'B', 'C', 'D'];

pub fn letter_char(l: Letter) -> char {
    let i = (l.unsigned_abs() - 1) as usize;
    if l > 0 {
        LOWER[i]
    } else {
        UPPER[i]
    }
}

/// Parses one ASCII letter. `x`, `y`, `z`, `w` are accepted as aliases for
/// `a`, `b`, `c`, `d`.
pub fn parse_letter(ch: char) -> Option<Letter> {
    let (idx, pos) = match ch {
        'a' | 'x' => (1, true),
        'b' | 'y' => (2, true),
        'c' | 'z' => (3, true),
        'd' | 'w' => (4, true),
        'A' | 'X' => (1, false),
        'B' | 'Y' => (2, false),
        'C' | 'Z' => (3, false),
        'D' | 'W' => (4, false),
        _ => return None,
    };
    Some(if pos { idx } else { -idx })
}

/// Total order on letters used for canonical forms: `a < b < c < d < A < B < C < D`.
pub(crate) fn letter_key(l: Letter) -> u8 {
    if l > 0 {
        l as u8
    } else {
        MAX_RANK + l.unsigned_abs()
    }
}

pub(crate) fn cmp_letters(x: &[Letter], y: &[Letter]) -> Ordering {
    x.iter()
        .map(|&l| letter_key(l))
        .cmp(y.iter().map(|&l| letter_key(l)))
}

fn check_rank(rank: u8) -> Result<()> {
    if !(2..=MAX_RANK).contains(&rank) {
        return Err(Error::malformed(format!("rank {rank} outside 2..=4")));
    }
    Ok(())
}

/// A freely reduced word in the free group of the given rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Word {
    letters: Vec<Letter>,
    rank: u8,
}

impl Word {
    pub fn identity(rank: u8) -> Self {
        Word {
            letters: Vec::new(),
            rank,
        }
    }

    /// Freely reduces `raw`. Fails when a letter is zero or exceeds `rank`.
    pub fn reduce(raw: &[Letter], rank: u8) -> Result<Self> {
        check_rank(rank)?;
        let mut letters: Vec<Letter> = Vec::with_capacity(raw.len());
        for &l in raw {
            if l == 0 || l.unsigned_abs() > rank {
                return Err(Error::malformed(format!(
                    "generator index {} outside 1..={rank}",
                    l.unsigned_abs()
                )));
            }
            if letters.last() == Some(&-l) {
                letters.pop();
            } else {
                letters.push(l);
            }
        }
        Ok(Word { letters, rank })
    }

    pub fn parse(s: &str, rank: u8) -> Result<Self> {
        let raw = s
            .chars()
            .map(|ch| {
                parse_letter(ch).ok_or_else(|| Error::malformed(format!("bad letter {ch:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Word::reduce(&raw, rank)
    }

    /// Parses with the smallest admissible rank (at least 2) covering every letter.
    pub fn parse_auto(s: &str) -> Result<Self> {
        let rank = s
            .chars()
            .filter_map(parse_letter)
            .map(|l| l.unsigned_abs())
            .max()
            .unwrap_or(2)
            .max(2);
        Word::parse(s, rank)
    }

    pub(crate) fn from_reduced(letters: Vec<Letter>, rank: u8) -> Self {
        debug_assert!(letters.windows(2).all(|w| w[0] != -w[1]));
        Word { letters, rank }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn rank(&self) -> u8 {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| -l).collect(),
            rank: self.rank,
        }
    }

    pub fn mul(&self, other: &Word) -> Result<Word> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        let mut raw = self.letters.clone();
        raw.extend_from_slice(&other.letters);
        Word::reduce(&raw, self.rank)
    }

    /// Same letters read in a larger free group.
    pub fn with_rank(&self, rank: u8) -> Result<Word> {
        Word::reduce(&self.letters, rank)
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(f), Some(l)) => self.letters.len() == 1 || *f != -*l,
            _ => true,
        }
    }

    /// Exponent sum of each generator.
    pub fn abelianization(&self) -> Vec<i64> {
        let mut v = vec![0i64; self.rank as usize];
        for &l in &self.letters {
            v[(l.unsigned_abs() - 1) as usize] += l.signum() as i64;
        }
        v
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.letters {
            write!(f, "{}", letter_char(l))?;
        }
        Ok(())
    }
}

/// A conjugacy class, up to inversion, stored as its canonical cyclically
/// reduced representative: the least rotation of the word or of its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CyclicWord {
    letters: Vec<Letter>,
    rank: u8,
}

fn strip_conjugation(letters: &[Letter]) -> &[Letter] {
    let mut lo = 0;
    let mut hi = letters.len();
    while hi - lo >= 2 && letters[lo] == -letters[hi - 1] {
        lo += 1;
        hi -= 1;
    }
    &letters[lo..hi]
}

fn least_rotation(letters: &[Letter]) -> Vec<Letter> {
    let n = letters.len();
    let mut best: Option<Vec<Letter>> = None;
    for r in 0..n {
        let rot: Vec<Letter> = letters[r..].iter().chain(&letters[..r]).copied().collect();
        if best
            .as_ref()
            .is_none_or(|b| cmp_letters(&rot, b) == Ordering::Less)
        {
            best = Some(rot);
        }
    }
    best.unwrap_or_default()
}

impl CyclicWord {
    pub fn from_word(w: &Word) -> Self {
        let core = strip_conjugation(w.letters());
        let fwd = least_rotation(core);
        let inv: Vec<Letter> = core.iter().rev().map(|l| -l).collect();
        let bwd = least_rotation(&inv);
        let letters = if cmp_letters(&bwd, &fwd) == Ordering::Less {
            bwd
        } else {
            fwd
        };
        CyclicWord {
            letters,
            rank: w.rank(),
        }
    }

    pub fn parse(s: &str, rank: u8) -> Result<Self> {
        Ok(CyclicWord::from_word(&Word::parse(s, rank)?))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn rank(&self) -> u8 {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn to_word(&self) -> Word {
        Word::from_reduced(self.letters.clone(), self.rank)
    }

    pub fn with_rank(&self, rank: u8) -> Result<CyclicWord> {
        Ok(CyclicWord::from_word(&self.to_word().with_rank(rank)?))
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_word(), f)
    }
}

/// Canonical cyclic word of `w`.
pub fn cyclic_reduce(w: &Word) -> CyclicWord {
    CyclicWord::from_word(w)
}
