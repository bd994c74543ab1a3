//! Slopes on the one-holed torus and distances in the Farey graph.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A reduced fraction `p/q` with `q >= 0`; `1/0` is the slope ∞.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Slope {
    p: i64,
    q: i64,
}

impl Slope {
    pub const INF: Slope = Slope { p: 1, q: 0 };

    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p == 0 && q == 0 {
            return Err(Error::malformed("0/0 is not a slope"));
        }
        let g = p.gcd(&q);
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 || (q == 0 && p < 0) {
            p = -p;
            q = -q;
        }
        Ok(Slope { p, q })
    }

    pub fn integer(n: i64) -> Self {
        Slope { p: n, q: 1 }
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn is_inf(&self) -> bool {
        self.q == 0
    }

    /// Image under the unimodular matrix `[[a, b], [c, d]]` acting by `z ↦ (az + b)/(cz + d)`.
    pub fn transform(&self, m: [[i64; 2]; 2]) -> Slope {
        let [[a, b], [c, d]] = m;
        Slope::new(a * self.p + b * self.q, c * self.p + d * self.q)
            .expect("unimodular image is nonzero")
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Slope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s == "∞" {
            return Ok(Slope::INF);
        }
        let parse = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::malformed(format!("bad slope {s:?}")))
        };
        match s.split_once('/') {
            Some((p, q)) => Slope::new(parse(p)?, parse(q)?),
            None => Ok(Slope::integer(parse(s)?)),
        }
    }
}

impl TryFrom<String> for Slope {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Slope> for String {
    fn from(s: Slope) -> String {
        s.to_string()
    }
}

pub fn adjacent(s1: Slope, s2: Slope) -> bool {
    (s1.p * s2.q - s1.q * s2.p).abs() == 1
}

/// A matrix in SL(2, Z) sending ∞ to `s`.
fn to_infinity_frame(s: Slope) -> [[i64; 2]; 2] {
    // Columns (p, q) and (b, d) with p d - b q = 1.
    let e = s.p.extended_gcd(&s.q);
    let (a, c) = (s.p, s.q);
    let (d, b) = (e.x * e.gcd, -e.y * e.gcd);
    debug_assert_eq!(a * d - b * c, 1);
    [[a, b], [c, d]]
}

fn inverse(m: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
    let [[a, b], [c, d]] = m;
    [[d, -b], [-c, a]]
}

/// Farey-graph distance, by continued-fraction descent after moving `s1` to ∞.
pub fn distance(s1: Slope, s2: Slope) -> u32 {
    let x = s2.transform(inverse(to_infinity_frame(s1)));
    let mut memo = HashMap::new();
    dist_from_inf(x, &mut memo)
}

fn dist_from_inf(x: Slope, memo: &mut HashMap<Slope, u32>) -> u32 {
    if x.is_inf() {
        return 0;
    }
    if x.q == 1 {
        return 1;
    }
    if let Some(&d) = memo.get(&x) {
        return d;
    }
    let n = Integer::div_floor(&x.p, &x.q);
    // z ↦ -1/(z - m) sends m to ∞ and preserves the graph.
    let via = |m: i64| x.transform([[0, -1], [1, -m]]);
    let d = 1 + dist_from_inf(via(n), memo).min(dist_from_inf(via(n + 1), memo));
    memo.insert(x, d);
    d
}

fn tie_key(s: &Slope) -> (i64, i64, bool) {
    (s.q, s.p.abs(), s.p < 0)
}

/// A slope adjacent to both inputs when they are at distance at most two.
/// Ties are broken by least denominator, then least absolute numerator, then
/// positive before negative.
pub fn common_neighbor(s1: Slope, s2: Slope) -> Option<Slope> {
    let frame = to_infinity_frame(s1);
    let back = |m: i64| Slope::integer(m).transform(frame);
    let x = s2.transform(inverse(frame));
    let candidates: Vec<Slope> = match distance(s1, s2) {
        0 => {
            // Neighbors of ∞ are the integers; search near the one whose image has least denominator.
            let [[_, _], [c, d]] = frame;
            if c == 0 {
                vec![back(0), back(1), back(-1)]
            } else {
                let centre = Integer::div_floor(&-d, &c);
                (centre - 2..=centre + 2).map(back).collect()
            }
        }
        1 => {
            let mediant = Slope::new(s1.p + s2.p, s1.q + s2.q).ok();
            let diff = Slope::new(s1.p - s2.p, s1.q - s2.q).ok();
            mediant.into_iter().chain(diff).collect()
        }
        2 => {
            let (u, v) = (x.p, x.q);
            [u - 1, u + 1]
                .into_iter()
                .filter(|t| t.rem_euclid(v) == 0)
                .map(|t| back(t / v))
                .collect()
        }
        _ => return None,
    };
    candidates
        .into_iter()
        .filter(|c| adjacent(*c, s1) && adjacent(*c, s2))
        .min_by_key(tie_key)
}
