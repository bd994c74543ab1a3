use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::word::{cmp_letters, cyclic_reduce, letter_char, CyclicWord, Letter, Word};
use crate::error::{Error, Result};

/// A Whitehead automorphism of a free group of rank `rank`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WhiteheadAut {
    /// Generator `i` (1-based) maps to `images[i - 1]`.
    Permutation { rank: u8, images: Vec<Letter> },
    /// `set` contains `multiplier` but not its inverse. A generator `x` other than
    /// the multiplier `m` maps to `x m` if only `x` is in the set, `m⁻¹ x` if only
    /// `x⁻¹` is, and `m⁻¹ x m` if both are.
    TypeII {
        rank: u8,
        multiplier: Letter,
        set: Vec<Letter>,
    },
}

impl WhiteheadAut {
    pub fn identity(rank: u8) -> Self {
        WhiteheadAut::Permutation {
            rank,
            images: (1..=rank as Letter).collect(),
        }
    }

    pub fn permutation(rank: u8, images: Vec<Letter>) -> Result<Self> {
        let mut seen = vec![false; rank as usize];
        if images.len() != rank as usize {
            return Err(Error::malformed(
                "permutation needs one image per generator",
            ));
        }
        for &l in &images {
            let i = l.unsigned_abs() as usize;
            if l == 0 || i > rank as usize || seen[i - 1] {
                return Err(Error::malformed("images are not a signed permutation"));
            }
            seen[i - 1] = true;
        }
        Ok(WhiteheadAut::Permutation { rank, images })
    }

    pub fn type_ii(
        rank: u8,
        multiplier: Letter,
        set: impl IntoIterator<Item = Letter>,
    ) -> Result<Self> {
        let mut set: Vec<Letter> = set.into_iter().collect();
        set.push(multiplier);
        set.sort_by_key(|&l| super::word::letter_key(l));
        set.dedup();
        for &l in &set {
            if l == 0 || l.unsigned_abs() > rank {
                return Err(Error::malformed("letter outside rank in Whitehead set"));
            }
        }
        if set.contains(&-multiplier) {
            return Err(Error::malformed(
                "Whitehead set contains the inverse multiplier",
            ));
        }
        Ok(WhiteheadAut::TypeII {
            rank,
            multiplier,
            set,
        })
    }

    pub fn rank(&self) -> u8 {
        match self {
            WhiteheadAut::Permutation { rank, .. } | WhiteheadAut::TypeII { rank, .. } => *rank,
        }
    }

    /// Image of a single signed letter, as an unreduced letter sequence.
    fn image_of(&self, l: Letter) -> Vec<Letter> {
        match self {
            WhiteheadAut::Permutation { images, .. } => {
                let img = images[(l.unsigned_abs() - 1) as usize];
                vec![if l > 0 { img } else { -img }]
            }
            WhiteheadAut::TypeII {
                multiplier, set, ..
            } => {
                let m = *multiplier;
                if l == m || l == -m {
                    return vec![l];
                }
                let x = l.abs();
                let mut img = Vec::with_capacity(3);
                if set.contains(&-x) {
                    img.push(-m);
                }
                img.push(x);
                if set.contains(&x) {
                    img.push(m);
                }
                if l > 0 {
                    img
                } else {
                    img.iter().rev().map(|c| -c).collect()
                }
            }
        }
    }

    pub fn inverse(&self) -> WhiteheadAut {
        match self {
            WhiteheadAut::Permutation { rank, images } => {
                let mut inv = vec![0; images.len()];
                for (i, &img) in images.iter().enumerate() {
                    let g = (i + 1) as Letter;
                    inv[(img.unsigned_abs() - 1) as usize] = if img > 0 { g } else { -g };
                }
                WhiteheadAut::Permutation {
                    rank: *rank,
                    images: inv,
                }
            }
            WhiteheadAut::TypeII {
                rank,
                multiplier,
                set,
            } => {
                let m = *multiplier;
                let mut s: Vec<Letter> = set.iter().copied().filter(|&l| l != m).collect();
                s.push(-m);
                s.sort_by_key(|&l| super::word::letter_key(l));
                WhiteheadAut::TypeII {
                    rank: *rank,
                    multiplier: -m,
                    set: s,
                }
            }
        }
    }

    /// Every signed permutation and every nontrivial type-II automorphism of the given rank.
    pub fn all(rank: u8) -> Vec<WhiteheadAut> {
        let mut out = Vec::new();
        let n = rank as usize;
        let mut perms: Vec<Vec<Letter>> = vec![vec![]];
        for _ in 0..n {
            let mut next = Vec::new();
            for p in &perms {
                for g in 1..=rank as Letter {
                    if p.iter().any(|&l: &Letter| l.abs() == g) {
                        continue;
                    }
                    for s in [g, -g] {
                        let mut q = p.clone();
                        q.push(s);
                        next.push(q);
                    }
                }
            }
            perms = next;
        }
        for images in perms {
            out.push(WhiteheadAut::Permutation { rank, images });
        }
        out.extend(Self::all_type_ii(rank));
        out
    }

    /// Nontrivial type-II automorphisms of the given rank.
    pub fn all_type_ii(rank: u8) -> Vec<WhiteheadAut> {
        let mut out = Vec::new();
        let letters: Vec<Letter> = (1..=rank as Letter).flat_map(|g| [g, -g]).collect();
        for &m in &letters {
            let others: Vec<Letter> = letters
                .iter()
                .copied()
                .filter(|&l| l.abs() != m.abs())
                .collect();
            for mask in 1u32..(1 << others.len()) {
                let chosen = others
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, &l)| l);
                out.push(
                    WhiteheadAut::type_ii(rank, m, chosen).expect("well-formed by construction"),
                );
            }
        }
        out
    }
}

impl fmt::Display for WhiteheadAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WhiteheadAut::Permutation { images, .. } => {
                write!(f, "perm(")?;
                for (i, &img) in images.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(
                        f,
                        "{}->{}",
                        letter_char((i + 1) as Letter),
                        letter_char(img)
                    )?;
                }
                write!(f, ")")
            }
            WhiteheadAut::TypeII {
                multiplier, set, ..
            } => {
                write!(f, "({}; {{", letter_char(*multiplier))?;
                for (i, &l) in set.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{}", letter_char(l))?;
                }
                write!(f, "}})")
            }
        }
    }
}

pub fn apply_whitehead(t: &WhiteheadAut, w: &Word) -> Result<Word> {
    if t.rank() != w.rank() {
        return Err(Error::RankMismatch {
            left: t.rank(),
            right: w.rank(),
        });
    }
    let raw: Vec<Letter> = w.letters().iter().flat_map(|&l| t.image_of(l)).collect();
    Word::reduce(&raw, w.rank())
}

fn apply_cyclic(t: &WhiteheadAut, w: &CyclicWord) -> CyclicWord {
    let img = apply_whitehead(t, &w.to_word()).expect("ranks agree");
    cyclic_reduce(&img)
}

/// Applies an arbitrary endomorphism given by generator images.
pub fn substitute(w: &Word, images: &[Word]) -> Result<Word> {
    if images.len() != w.rank() as usize {
        return Err(Error::Arity {
            expected: w.rank() as usize,
            got: images.len(),
        });
    }
    let target = images.first().map_or(w.rank(), |i| i.rank());
    let mut raw = Vec::new();
    for &l in w.letters() {
        let img = &images[(l.unsigned_abs() - 1) as usize];
        if l > 0 {
            raw.extend_from_slice(img.letters());
        } else {
            raw.extend(img.letters().iter().rev().map(|c| -c));
        }
    }
    Word::reduce(&raw, target)
}

/// One step of a primitivity decision.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub automorphism: String,
    pub word: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimitivityTrace {
    pub primitive: bool,
    pub start: String,
    pub steps: Vec<TraceStep>,
    /// Size of the same-length orbit explored at the terminal local minimum, if any.
    pub orbit_size: Option<usize>,
}

/// Whether `w` is conjugate to a free basis element.
///
/// A curve on a handlebody boundary is taken to meet some meridian disk once
/// exactly when its word is primitive in this sense; nothing here checks the
/// disk side.
pub fn is_primitive(w: &CyclicWord) -> Result<bool> {
    Ok(primitivity_trace(w)?.primitive)
}

/// Whitehead length descent with a full same-length orbit search at local minima.
pub fn primitivity_trace(w: &CyclicWord) -> Result<PrimitivityTrace> {
    if w.is_empty() {
        return Err(Error::Degenerate(
            "the trivial word is not primitive".into(),
        ));
    }
    let rank = w.rank();
    let type_ii = WhiteheadAut::all_type_ii(rank);
    let all = WhiteheadAut::all(rank);
    let mut cur = w.clone();
    let mut steps = Vec::new();
    loop {
        if cur.len() == 1 {
            return Ok(PrimitivityTrace {
                primitive: true,
                start: w.to_string(),
                steps,
                orbit_size: None,
            });
        }
        if let Some((t, img)) = best_reduction(&type_ii, &cur) {
            steps.push(TraceStep {
                automorphism: t.to_string(),
                word: img.to_string(),
            });
            cur = img;
            continue;
        }
        // Local minimum: search the orbit at this length for a further reduction.
        let mut seen: HashSet<CyclicWord> = HashSet::new();
        let mut parent: HashMap<CyclicWord, (CyclicWord, String)> = HashMap::new();
        let mut queue = VecDeque::new();
        seen.insert(cur.clone());
        queue.push_back(cur.clone());
        let mut escape = None;
        'bfs: while let Some(u) = queue.pop_front() {
            for t in &all {
                let img = apply_cyclic(t, &u);
                if img.len() < u.len() {
                    escape = Some((u.clone(), t.to_string(), img));
                    break 'bfs;
                }
                if img.len() == u.len() && seen.insert(img.clone()) {
                    parent.insert(img.clone(), (u.clone(), t.to_string()));
                    queue.push_back(img);
                }
            }
        }
        match escape {
            None => {
                return Ok(PrimitivityTrace {
                    primitive: false,
                    start: w.to_string(),
                    steps,
                    orbit_size: Some(seen.len()),
                })
            }
            Some((u, tname, img)) => {
                let mut path = Vec::new();
                let mut v = u;
                while let Some((p, name)) = parent.get(&v) {
                    path.push(TraceStep {
                        automorphism: name.clone(),
                        word: v.to_string(),
                    });
                    v = p.clone();
                }
                path.reverse();
                steps.extend(path);
                steps.push(TraceStep {
                    automorphism: tname,
                    word: img.to_string(),
                });
                cur = img;
            }
        }
    }
}

fn best_reduction(auts: &[WhiteheadAut], w: &CyclicWord) -> Option<(WhiteheadAut, CyclicWord)> {
    let mut best: Option<(WhiteheadAut, CyclicWord)> = None;
    for t in auts {
        let img = apply_cyclic(t, w);
        if img.len() >= w.len() {
            continue;
        }
        let better = match &best {
            None => true,
            Some((_, b)) => {
                img.len() < b.len()
                    || (img.len() == b.len() && cmp_letters(img.letters(), b.letters()).is_lt())
            }
        };
        if better {
            best = Some((t.clone(), img));
        }
    }
    best
}
