use super::curve::{validate, ChordCurve};
use super::fixtures;
use super::octagon::OctagonModel;
use crate::error::{Error, Result};
use crate::freegroup::{cyclic_reduce, CyclicWord, Letter, Word};

/// The curve as an element of the surface group, one letter per side pair
/// crossed: `a, b, c, d` for the classes of sides 0, 1, 4, 5. Passing from
/// side `s` into its partner `s'` is positive when `s' < s`.
pub fn surface_word(c: &ChordCurve) -> Result<Word> {
    if let Some(v) = validate(c).first() {
        return Err(Error::InvalidCurve(v.to_string()));
    }
    let letters: Vec<Letter> = c
        .chords()
        .iter()
        .map(|ch| {
            let exit = ch.to.side;
            let g = match OctagonModel::pair_class(exit) {
                0 => 1,
                1 => 2,
                4 => 3,
                _ => 4,
            };
            if OctagonModel::partner(exit) < exit {
                g
            } else {
                -g
            }
        })
        .collect();
    Word::reduce(&letters, 4)
}

/// The single defining relation, read off the loop around the vertex.
pub fn surface_relator() -> CyclicWord {
    cyclic_reduce(&surface_word(&fixtures::vertex_loop()).expect("vertex loop is valid"))
}

fn rotations(r: &[Letter]) -> Vec<Vec<Letter>> {
    let inv: Vec<Letter> = r.iter().rev().map(|&l| -l).collect();
    let mut out = Vec::new();
    for w in [r, &inv[..]] {
        for i in 0..w.len() {
            out.push(w[i..].iter().chain(&w[..i]).copied().collect());
        }
    }
    out
}

fn cyclically_reduce(w: &mut Vec<Letter>) {
    let mut reduced: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in w.iter() {
        if reduced.last() == Some(&-l) {
            reduced.pop();
        } else {
            reduced.push(l);
        }
    }
    let (mut i, mut j) = (0, reduced.len());
    while j > i + 1 && reduced[i] == -reduced[j - 1] {
        i += 1;
        j -= 1;
    }
    *w = reduced[i..j].to_vec();
}

/// Dehn's algorithm on cyclic words: trivial iff repeatedly replacing more
/// than half of a relator by the inverse of the rest empties the word.
pub fn is_trivial_in_surface_group(w: &Word) -> bool {
    let rels = rotations(surface_relator().letters());
    let half = surface_relator().len() / 2;
    let mut w = w.letters().to_vec();
    loop {
        cyclically_reduce(&mut w);
        let n = w.len();
        if n == 0 {
            return true;
        }
        let mut hit = None;
        'search: for i in 0..n {
            for r in &rels {
                let mut k = 0;
                while k < r.len() && k < n && w[(i + k) % n] == r[k] {
                    k += 1;
                }
                if k > half {
                    hit = Some((i, k, r));
                    break 'search;
                }
            }
        }
        let Some((i, k, r)) = hit else {
            return false;
        };
        let mut next: Vec<Letter> = r[k..].iter().rev().map(|&l| -l).collect();
        next.extend((k..n).map(|j| w[(i + j) % n]));
        w = next;
    }
}

/// A simple closed curve bounds a disk exactly when it is null-homotopic.
pub fn bounds_disk(c: &ChordCurve) -> Result<bool> {
    Ok(is_trivial_in_surface_group(&surface_word(c)?))
}
