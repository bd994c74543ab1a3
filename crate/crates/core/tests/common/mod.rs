//! Brute-force oracles written against plain strings and integers, sharing no
//! code with the library beyond its public types.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use heegaard::chart;
use heegaard::distance::{verify_certificate, DistanceCertificate};
use heegaard::surface::{crossing_points, fixtures, word_of, ChordCurve, MeridianSystem};

fn inv(c: char) -> char {
    if c.is_ascii_lowercase() {
        c.to_ascii_uppercase()
    } else {
        c.to_ascii_lowercase()
    }
}

pub fn reduce(s: &str) -> String {
    let mut out: Vec<char> = Vec::new();
    for c in s.chars() {
        if out.last() == Some(&inv(c)) {
            out.pop();
        } else {
            out.push(c);
        }
    }
    out.into_iter().collect()
}

pub fn inverse(s: &str) -> String {
    s.chars().rev().map(inv).collect()
}

fn cyclic_core(s: &str) -> String {
    let mut w: Vec<char> = reduce(s).chars().collect();
    while w.len() > 1 && w[0] == inv(w[w.len() - 1]) {
        w.remove(0);
        w.pop();
    }
    w.into_iter().collect()
}

/// Least rotation of the word or its inverse, in `a < b < A < B` order.
pub fn canon(s: &str) -> String {
    let core = cyclic_core(s);
    let key = |w: &str| -> Vec<u8> {
        w.chars()
            .map(|c| match c {
                'a' => 0,
                'b' => 1,
                'A' => 2,
                _ => 3,
            })
            .collect()
    };
    let mut best: Option<String> = None;
    for w in [core.clone(), inverse(&core)] {
        for i in 0..w.len().max(1) {
            let r: String = w[i..].chars().chain(w[..i].chars()).collect();
            if best.as_ref().is_none_or(|b| key(&r) < key(b)) {
                best = Some(r);
            }
        }
    }
    best.unwrap_or_default()
}

/// Every freely reduced word over `a, b` of length at most `n`.
pub fn reduced_words(n: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut layer = vec![String::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &layer {
            for c in ['a', 'b', 'A', 'B'] {
                if !w.ends_with(inv(c)) {
                    next.push(format!("{w}{c}"));
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Canonical cyclic classes of nontrivial rank-2 words of length at most `n`.
pub fn cyclic_classes(n: usize) -> BTreeSet<String> {
    reduced_words(n)
        .into_iter()
        .map(|w| canon(&w))
        .filter(|w| !w.is_empty())
        .collect()
}

fn substitute(w: &str, a: &str, b: &str) -> String {
    let mut out = String::new();
    for c in w.chars() {
        out.push_str(&match c {
            'a' => a.to_string(),
            'b' => b.to_string(),
            'A' => inverse(a),
            _ => inverse(b),
        });
    }
    reduce(&out)
}

/// Images of the generators under the signed permutations and transvections
/// generating `Aut(F2)`.
fn aut_generators() -> Vec<(String, String)> {
    let mut out = Vec::new();
    for (x, y) in [("a", "b"), ("b", "a")] {
        for sx in [false, true] {
            for sy in [false, true] {
                let f = |s: &str, neg: bool| if neg { inverse(s) } else { s.to_string() };
                out.push((f(x, sx), f(y, sy)));
            }
        }
    }
    for t in ["ab", "ba", "aB", "Ba"] {
        out.push((t.to_string(), "b".to_string()));
    }
    for t in ["ba", "ab", "bA", "Ab"] {
        out.push(("a".to_string(), t.to_string()));
    }
    out
}

/// The orbit of `a` under `Aut(F2)`, as cyclic classes of length at most `n`.
pub fn primitive_orbit(n: usize) -> HashSet<String> {
    let gens = aut_generators();
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert("a".to_string());
    queue.push_back("a".to_string());
    while let Some(w) = queue.pop_front() {
        for (x, y) in &gens {
            let v = canon(&substitute(&w, x, y));
            if v.len() <= n && seen.insert(v.clone()) {
                queue.push_back(v);
            }
        }
    }
    seen
}

/// Ordered bases of `F2` reachable from `(a, b)` by elementary Nielsen moves
/// through pairs whose words stay within `bound` letters.
pub fn nielsen_bases(bound: usize) -> HashSet<(String, String)> {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    let start = ("a".to_string(), "b".to_string());
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some((u, v)) = queue.pop_front() {
        let mut next = vec![(v.clone(), u.clone()), (inverse(&u), v.clone())];
        for m in [v.clone(), inverse(&v)] {
            next.push((reduce(&format!("{u}{m}")), v.clone()));
            next.push((reduce(&format!("{m}{u}")), v.clone()));
        }
        for p in next {
            if p.0.len() <= bound && p.1.len() <= bound && seen.insert(p.clone()) {
                queue.push_back(p);
            }
        }
    }
    seen
}

/// Reduced slopes `p/q` with `|p|, q <= n`, `q >= 0`, including `1/0`.
pub fn slope_box(n: i64) -> Vec<(i64, i64)> {
    let gcd = |mut a: i64, mut b: i64| {
        a = a.abs();
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    };
    let mut out = vec![(1, 0)];
    for q in 1..=n {
        for p in -n..=n {
            if gcd(p, q) == 1 {
                out.push((p, q));
            }
        }
    }
    out
}

/// Farey-graph distances from each of `sources` to each of `sources`, by
/// breadth-first search in the subgraph of slopes with `|p|, q <= n`.
pub fn farey_bfs(n: i64, sources: &[(i64, i64)]) -> Vec<Vec<u32>> {
    let verts = slope_box(n);
    let index: BTreeMap<(i64, i64), usize> =
        verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut adj = vec![Vec::new(); verts.len()];
    for i in 0..verts.len() {
        for j in i + 1..verts.len() {
            let ((p, q), (r, s)) = (verts[i], verts[j]);
            if (p * s - q * r).abs() == 1 {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    let targets: Vec<usize> = sources.iter().map(|t| index[t]).collect();
    sources
        .iter()
        .map(|src| {
            let mut dist = vec![u32::MAX; verts.len()];
            let s = index[src];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &y in &adj[x] {
                    if dist[y] == u32::MAX {
                        dist[y] = dist[x] + 1;
                        queue.push_back(y);
                    }
                }
            }
            targets.iter().map(|&t| dist[t]).collect()
        })
        .collect()
}

/// Every cyclically reduced nontrivial word over `a, b` of length at most `n`.
pub fn cyclically_reduced_words(n: usize) -> Vec<String> {
    reduced_words(n)
        .into_iter()
        .filter(|w| {
            let (f, l) = (w.chars().next(), w.chars().last());
            matches!((f, l), (Some(f), Some(l)) if w.len() == 1 || f != inv(l))
        })
        .collect()
}

/// A system among the standard side-pair systems and `extra` on which `c`
/// reads a nontrivial word.
pub fn system_missing(c: &ChordCurve, extra: &[&MeridianSystem]) -> MeridianSystem {
    let mut v: Vec<MeridianSystem> = extra.iter().map(|m| (*m).clone()).collect();
    for (x, y) in [('a', 'c'), ('a', 'd'), ('b', 'c'), ('b', 'd')] {
        v.push(MeridianSystem::side_pairs(x, y).unwrap());
    }
    let pool = chart::landmarks();
    for (i, x) in pool.iter().enumerate() {
        for y in &pool[i + 1..] {
            if let Ok(m) = MeridianSystem::curves(x.clone(), y.clone()) {
                v.push(m);
            }
        }
    }
    v.into_iter()
        .find(|m| matches!(word_of(c, m), Ok(w) if !w.is_empty()))
        .expect("some system misses the curve")
}

/// Whether two chords of a convex polygon cross, by exact orientation tests
/// on the vertex-interpolated endpoints.
pub fn chords_cross_by_orientation(a: [(i64, i64); 2], b: [(i64, i64); 2]) -> bool {
    let orient = |p: (i64, i64), q: (i64, i64), r: (i64, i64)| {
        ((q.0 - p.0) * (r.1 - p.1) - (q.1 - p.1) * (r.0 - p.0)).signum()
    };
    let d1 = orient(a[0], a[1], b[0]);
    let d2 = orient(a[0], a[1], b[1]);
    let d3 = orient(b[0], b[1], a[0]);
    let d4 = orient(b[0], b[1], a[1]);
    d1 * d2 < 0 && d3 * d4 < 0
}

/// Single-field tamperings of a distance certificate, each breaking a
/// checked clause: every curve replaced by the vertex loop, every curve
/// replaced by an essential curve crossing a neighbour, each meridian system
/// replaced by one on which its end curve no longer bounds, and the schema.
pub fn tamperings(cert: &DistanceCertificate) -> Vec<(String, String)> {
    let mut out = Vec::new();
    let mut pool = chart::landmarks();
    pool.extend([
        fixtures::b_crossing(),
        fixtures::d_crossing(),
        fixtures::separating(),
    ]);
    let n = cert.curves.len();
    for i in 0..n {
        let mut t = cert.clone();
        t.curves[i] = fixtures::vertex_loop();
        out.push((format!("c{i}=vertex-loop"), t.to_json().unwrap()));
        let nb = if i + 1 < n { i + 1 } else { i - 1 };
        let crossing = pool.iter().find(|c| {
            !word_of(c, &cert.side1_meridians).map_or(true, |w| w.is_empty())
                && !matches!(crossing_points(c, &cert.curves[nb]), Ok(x) if x.is_empty())
        });
        let c = crossing.expect("pool has a curve crossing each neighbour");
        let mut t = cert.clone();
        t.curves[i] = c.clone();
        out.push((format!("c{i}=crosses-c{nb}"), t.to_json().unwrap()));
    }
    for (field, end) in [("side1_meridians", 0), ("side2_meridians", n - 1)] {
        let m = system_missing(
            &cert.curves[end],
            &[&cert.side1_meridians, &cert.side2_meridians],
        );
        let mut t = cert.clone();
        if end == 0 {
            t.side1_meridians = m;
        } else {
            t.side2_meridians = m;
        }
        out.push((field.to_string(), t.to_json().unwrap()));
    }
    let mut t = cert.clone();
    t.schema = "heegaard-cert/0".into();
    out.push(("schema".into(), t.to_json().unwrap()));
    out
}

/// A tampered certificate is rejected when it fails to parse, errors, or fails a clause.
pub fn rejected(json: &str) -> bool {
    match DistanceCertificate::from_json(json) {
        Err(_) => true,
        Ok(c) => !matches!(verify_certificate(&c), Ok(v) if v.is_ok()),
    }
}
