//! Combinatorics of the type-A quiver `A_n(τ)`: orientations, intervals, the
//! `⊵` relation between interval representations and the order `≺`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `n` accepted for type-A utilities.
pub const MAX_AN: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    /// `i -> i+1`
    Forward,
    /// `i <- i+1`
    Backward,
}

impl Direction {
    pub fn as_char(self) -> char {
        match self {
            Direction::Forward => 'f',
            Direction::Backward => 'b',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Orientation {
    dirs: Vec<Direction>,
}

impl Orientation {
    pub fn new(dirs: Vec<Direction>) -> Result<Self> {
        if dirs.len() + 1 > MAX_AN {
            return Err(Error::Parse(format!("orientation too long: n = {} exceeds {MAX_AN}", dirs.len() + 1)));
        }
        Ok(Orientation { dirs })
    }

    /// Parse a string over `{f, b}`; for `n = 1` pass `""` or `"-"`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = if s == "-" { "" } else { s };
        let dirs = s
            .chars()
            .map(|c| match c {
                'f' | 'F' => Ok(Direction::Forward),
                'b' | 'B' => Ok(Direction::Backward),
                _ => Err(Error::Parse(format!("bad orientation character {c:?} in {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(dirs)
    }

    pub fn n(&self) -> usize {
        self.dirs.len() + 1
    }

    pub fn dirs(&self) -> &[Direction] {
        &self.dirs
    }

    /// Direction of the arrow between vertices `i` and `i + 1` (1-based, `1 <= i < n`).
    pub fn arrow(&self, i: usize) -> Direction {
        self.dirs[i - 1]
    }

    /// Source and target vertex of the arrow between `i` and `i + 1` (1-based).
    pub fn arrow_ends(&self, i: usize) -> (usize, usize) {
        match self.arrow(i) {
            Direction::Forward => (i, i + 1),
            Direction::Backward => (i + 1, i),
        }
    }

    /// All `2^(n-1)` orientations for the given `n`, in lexicographic order with `f < b`.
    pub fn all(n: usize) -> Vec<Orientation> {
        assert!((1..=MAX_AN).contains(&n));
        let k = n - 1;
        (0..1usize << k)
            .map(|mask| {
                let dirs = (0..k)
                    .map(|i| {
                        if mask >> (k - 1 - i) & 1 == 1 {
                            Direction::Backward
                        } else {
                            Direction::Forward
                        }
                    })
                    .collect();
                Orientation { dirs }
            })
            .collect()
    }

    pub fn intervals(&self) -> Vec<Interval> {
        Interval::all(self.n())
    }

    pub fn check_interval(&self, i: Interval) -> Result<()> {
        if i.birth < 1 || i.birth > i.death || i.death > self.n() {
            return Err(Error::IntervalOutOfRange { interval: i, n: self.n() });
        }
        Ok(())
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dirs.is_empty() {
            return write!(f, "-");
        }
        for d in &self.dirs {
            write!(f, "{}", d.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for Orientation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Orientation::parse(s)
    }
}

/// The interval `[birth, death]` of vertices, 1-based and inclusive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "[usize; 2]", try_from = "[usize; 2]")]
pub struct Interval {
    pub birth: usize,
    pub death: usize,
}

impl Default for Interval {
    fn default() -> Self {
        Interval::new(1, 1)
    }
}

impl Interval {
    pub const fn new(birth: usize, death: usize) -> Self {
        Interval { birth, death }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.birth <= v && v <= self.death
    }

    pub fn overlap(&self, other: &Interval) -> Option<Interval> {
        let b = self.birth.max(other.birth);
        let d = self.death.min(other.death);
        (b <= d).then_some(Interval::new(b, d))
    }

    /// All intervals of `{1..n}` ordered by `(birth, death)`.
    pub fn all(n: usize) -> Vec<Interval> {
        let mut v = Vec::with_capacity(n * (n + 1) / 2);
        for b in 1..=n {
            for d in b..=n {
                v.push(Interval::new(b, d));
            }
        }
        v
    }

    /// Indicator of the support, as one digit per vertex.
    pub fn support(&self, n: usize) -> Vec<usize> {
        (1..=n).map(|v| usize::from(self.contains(v))).collect()
    }
}

impl From<Interval> for [usize; 2] {
    fn from(i: Interval) -> Self {
        [i.birth, i.death]
    }
}

impl TryFrom<[usize; 2]> for Interval {
    type Error = String;
    fn try_from(v: [usize; 2]) -> std::result::Result<Self, String> {
        if v[0] < 1 || v[0] > v[1] {
            return Err(format!("invalid interval [{},{}]", v[0], v[1]));
        }
        Ok(Interval::new(v[0], v[1]))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.birth, self.death)
    }
}

impl FromStr for Interval {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected an interval like [2,3], got {s:?}"));
        let inner = s.trim().trim_start_matches(['[', '<']).trim_end_matches([']', '>']);
        let (b, d) = inner.split_once(',').ok_or_else(bad)?;
        let b: usize = b.trim().parse().map_err(|_| bad())?;
        let d: usize = d.trim().parse().map_err(|_| bad())?;
        Interval::try_from([b, d]).map_err(|_| bad())
    }
}

/// `Hom(I[src], I[tgt]) != 0`, decided by the two arrows bounding the overlap.
pub fn hom_nonzero(tau: &Orientation, src: Interval, tgt: Interval) -> Result<bool> {
    tau.check_interval(src)?;
    tau.check_interval(tgt)?;
    Ok(hom_nonzero_unchecked(tau, src, tgt))
}

fn hom_nonzero_unchecked(tau: &Orientation, src: Interval, tgt: Interval) -> bool {
    let Some(ov) = src.overlap(&tgt) else {
        return false;
    };
    let (p, q) = (ov.birth, ov.death);
    if p > 1 {
        // arrow between p-1 and p: an arrow into the overlap forces the source to
        // start there, an arrow out of it forces the target to start there
        let ok = match tau.arrow(p - 1) {
            Direction::Forward => src.birth == p,
            Direction::Backward => tgt.birth == p,
        };
        if !ok {
            return false;
        }
    }
    if q < tau.n() {
        let ok = match tau.arrow(q) {
            Direction::Forward => tgt.death == q,
            Direction::Backward => src.death == q,
        };
        if !ok {
            return false;
        }
    }
    true
}

/// Brute-force version of [`hom_nonzero`]: take `g` equal to 1 on the overlap
/// and 0 elsewhere and test every commuting square. Any nonzero morphism is a
/// multiple of this `g`, since the interval maps are identities on the overlap.
pub fn hom_nonzero_by_squares(tau: &Orientation, src: Interval, tgt: Interval) -> Result<bool> {
    tau.check_interval(src)?;
    tau.check_interval(tgt)?;
    let Some(ov) = src.overlap(&tgt) else {
        return Ok(false);
    };
    let g = |v: usize| u8::from(ov.contains(v));
    let a_map = |u: usize, w: usize| u8::from(src.contains(u) && src.contains(w));
    let b_map = |u: usize, w: usize| u8::from(tgt.contains(u) && tgt.contains(w));
    for i in 1..tau.n() {
        let (u, w) = tau.arrow_ends(i);
        if g(w) * a_map(u, w) != b_map(u, w) * g(u) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `f[B->C] ∘ f[A->B]` is the nonzero basis morphism `f[A->C]`.
pub fn compose_nonzero(tau: &Orientation, a: Interval, b: Interval, c: Interval) -> Result<bool> {
    if !hom_nonzero(tau, a, b)? || !hom_nonzero(tau, b, c)? {
        return Err(Error::Precondition(format!(
            "compose_nonzero needs {a} ⊵ {b} and {b} ⊵ {c}"
        )));
    }
    hom_nonzero(tau, a, c)
}

/// The `⊵` table, the order `≺` and the covering arrows for one orientation.
#[derive(Clone, Debug)]
pub struct HomStructure {
    tau: Orientation,
    order: Vec<Interval>,
    position: HashMap<Interval, usize>,
    /// `nonzero[i][j]` = `Hom(order[i], order[j]) != 0`
    nonzero: Vec<Vec<bool>>,
    ar_arrows: Vec<(Interval, Interval)>,
}

impl HomStructure {
    pub fn new(tau: &Orientation) -> Self {
        let all = tau.intervals();
        let k = all.len();
        let table: Vec<Vec<bool>> = all
            .iter()
            .map(|&a| all.iter().map(|&b| hom_nonzero_unchecked(tau, a, b)).collect())
            .collect();
        let strict = |i: usize, j: usize| i != j && table[i][j];

        // Every Hom space here has dimension at most 1 and composites of basis
        // morphisms are either the basis morphism or zero, so a radical map
        // A -> B lies in rad^2 exactly when it factors as A ⊳ L ⊳ B.
        let mut covers = Vec::new();
        for i in 0..k {
            for j in 0..k {
                if strict(i, j) && !(0..k).any(|l| l != i && l != j && strict(i, l) && strict(l, j)) {
                    covers.push((i, j));
                }
            }
        }

        // Layered topological sort: each layer is the set of current sources,
        // listed by descending (birth, death), then removed together.
        let mut indeg = vec![0usize; k];
        for &(_, j) in &covers {
            indeg[j] += 1;
        }
        let mut done = vec![false; k];
        let mut order_idx = Vec::with_capacity(k);
        while order_idx.len() < k {
            let mut layer: Vec<usize> = (0..k).filter(|&i| !done[i] && indeg[i] == 0).collect();
            assert!(!layer.is_empty(), "covering relation of a directed poset is acyclic");
            layer.sort_by_key(|&i| std::cmp::Reverse((all[i].birth, all[i].death)));
            for &i in &layer {
                done[i] = true;
            }
            for &(i, j) in &covers {
                if layer.contains(&i) {
                    indeg[j] -= 1;
                }
            }
            order_idx.extend(layer);
        }

        let order: Vec<Interval> = order_idx.iter().map(|&i| all[i]).collect();
        let position: HashMap<Interval, usize> = order.iter().enumerate().map(|(p, &iv)| (iv, p)).collect();
        let nonzero = order_idx
            .iter()
            .map(|&i| order_idx.iter().map(|&j| table[i][j]).collect())
            .collect();
        let mut ar_arrows: Vec<(Interval, Interval)> = covers.iter().map(|&(i, j)| (all[i], all[j])).collect();
        ar_arrows.sort_by_key(|(a, b)| (position[a], position[b]));
        HomStructure { tau: tau.clone(), order, position, nonzero, ar_arrows }
    }

    pub fn orientation(&self) -> &Orientation {
        &self.tau
    }

    pub fn n(&self) -> usize {
        self.tau.n()
    }

    /// Intervals in increasing `≺`.
    pub fn order(&self) -> &[Interval] {
        &self.order
    }

    pub fn ar_arrows(&self) -> &[(Interval, Interval)] {
        &self.ar_arrows
    }

    /// Rank of `i` in `≺`; panics on an interval outside `1..=n`.
    pub fn position(&self, i: Interval) -> usize {
        self.position[&i]
    }

    /// `a ⊵ b`, i.e. `Hom(I[a], I[b]) != 0`.
    pub fn hom(&self, a: Interval, b: Interval) -> bool {
        self.nonzero[self.position(a)][self.position(b)]
    }

    pub fn hom_by_position(&self, i: usize, j: usize) -> bool {
        self.nonzero[i][j]
    }

    pub fn compose(&self, a: Interval, b: Interval, c: Interval) -> Option<bool> {
        (self.hom(a, b) && self.hom(b, c)).then(|| self.hom(a, c))
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("orientation {} (n = {})\n", self.tau, self.n());
        let chain: Vec<String> = self.order.iter().map(|i| i.to_string()).collect();
        out.push_str(&format!("order: {}\n", chain.join(" < ")));
        out.push_str(&format!("arrows ({}):\n", self.ar_arrows.len()));
        for (a, b) in &self.ar_arrows {
            out.push_str(&format!("  {a} -> {b}\n"));
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let mut out = format!("digraph \"A{}({})\" {{\n  rankdir=LR;\n", self.n(), self.tau);
        for (p, i) in self.order.iter().enumerate() {
            out.push_str(&format!("  \"{i}\" [label=\"{i}\\n#{}\"];\n", p + 1));
        }
        for (a, b) in &self.ar_arrows {
            out.push_str(&format!("  \"{a}\" -> \"{b}\";\n"));
        }
        out.push_str("}\n");
        out
    }
}

pub fn ar_order(tau: &Orientation) -> HomStructure {
    HomStructure::new(tau)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(b: usize, d: usize) -> Interval {
        Interval::new(b, d)
    }

    #[test]
    fn closed_form_matches_squares_exhaustively() {
        for n in 1..=MAX_AN {
            for tau in Orientation::all(n) {
                for a in tau.intervals() {
                    for b in tau.intervals() {
                        assert_eq!(
                            hom_nonzero(&tau, a, b).unwrap(),
                            hom_nonzero_by_squares(&tau, a, b).unwrap(),
                            "{tau} {a} -> {b}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn reflexive_and_antisymmetric() {
        for n in 1..=5 {
            for tau in Orientation::all(n) {
                for a in tau.intervals() {
                    assert!(hom_nonzero(&tau, a, a).unwrap());
                    for b in tau.intervals() {
                        if a != b {
                            assert!(!(hom_nonzero(&tau, a, b).unwrap() && hom_nonzero(&tau, b, a).unwrap()));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn known_hom_values() {
        let f = Orientation::parse("f").unwrap();
        assert!(hom_nonzero(&f, iv(2, 2), iv(1, 2)).unwrap());
        let fb = Orientation::parse("fb").unwrap();
        assert!(hom_nonzero(&fb, iv(2, 2), iv(1, 3)).unwrap());
        assert!(!hom_nonzero(&fb, iv(1, 1), iv(3, 3)).unwrap());
        assert!(hom_nonzero(&fb, iv(1, 1), iv(4, 4)).is_err());
    }

    #[test]
    fn composition_examples() {
        let f = Orientation::parse("f").unwrap();
        assert!(!compose_nonzero(&f, iv(2, 2), iv(1, 2), iv(1, 1)).unwrap());
        let fb = Orientation::parse("fb").unwrap();
        assert!(compose_nonzero(&fb, iv(2, 2), iv(2, 3), iv(1, 3)).unwrap());
        assert!(compose_nonzero(&fb, iv(1, 2), iv(1, 2), iv(1, 2)).unwrap());
        assert!(compose_nonzero(&fb, iv(1, 1), iv(3, 3), iv(3, 3)).is_err());
    }

    #[test]
    fn orders_for_small_orientations() {
        let one = ar_order(&Orientation::parse("").unwrap());
        assert_eq!(one.order(), &[iv(1, 1)]);
        let f = ar_order(&Orientation::parse("f").unwrap());
        assert_eq!(f.order(), &[iv(2, 2), iv(1, 2), iv(1, 1)]);
        let fb = ar_order(&Orientation::parse("fb").unwrap());
        assert_eq!(fb.order(), &[iv(2, 2), iv(2, 3), iv(1, 2), iv(1, 3), iv(3, 3), iv(1, 1)]);
        let fff = ar_order(&Orientation::parse("fff").unwrap());
        assert_eq!(
            fff.order(),
            &[
                iv(4, 4),
                iv(3, 4),
                iv(3, 3),
                iv(2, 4),
                iv(2, 3),
                iv(1, 4),
                iv(2, 2),
                iv(1, 3),
                iv(1, 2),
                iv(1, 1)
            ]
        );
    }

    #[test]
    fn fb_ar_quiver_arrows() {
        let fb = ar_order(&Orientation::parse("fb").unwrap());
        let mut arrows = fb.ar_arrows().to_vec();
        arrows.sort();
        let mut expected = vec![
            (iv(2, 2), iv(2, 3)),
            (iv(2, 2), iv(1, 2)),
            (iv(2, 3), iv(1, 3)),
            (iv(1, 2), iv(1, 3)),
            (iv(1, 3), iv(3, 3)),
            (iv(1, 3), iv(1, 1)),
        ];
        expected.sort();
        assert_eq!(arrows, expected);
    }

    #[test]
    fn order_extends_hom_relation() {
        for n in 1..=6 {
            for tau in Orientation::all(n) {
                let h = ar_order(&tau);
                assert_eq!(h.order().len(), n * (n + 1) / 2);
                for (i, &a) in h.order().iter().enumerate() {
                    for (j, &b) in h.order().iter().enumerate() {
                        if a != b && h.hom(a, b) {
                            assert!(i < j, "{tau}: {a} ⊳ {b} but not before it");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn parsing_and_display() {
        let tau: Orientation = "fbf".parse().unwrap();
        assert_eq!(tau.to_string(), "fbf");
        assert_eq!(tau.n(), 4);
        assert!(Orientation::parse("fx").is_err());
        assert_eq!(Orientation::parse("-").unwrap().n(), 1);
        assert_eq!("[2,3]".parse::<Interval>().unwrap(), iv(2, 3));
        assert!("[3,2]".parse::<Interval>().is_err());
        assert_eq!(serde_json::to_string(&iv(1, 3)).unwrap(), "[1,3]");
        assert_eq!(Orientation::all(4).len(), 8);
        let dot = ar_order(&tau).to_dot();
        assert!(dot.starts_with("digraph"));
    }
}
