//! Generalized persistence diagrams: multiplicities of indecomposables keyed
//! by dimension vector.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intervals::Interval;

/// Dimension vector of a ladder module, written `top/bottom`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DimVector {
    pub top: Vec<usize>,
    pub bottom: Vec<usize>,
}

impl DimVector {
    pub fn new(top: Vec<usize>, bottom: Vec<usize>) -> Self {
        DimVector { top, bottom }
    }

    pub fn n(&self) -> usize {
        self.top.len()
    }

    pub fn total(&self) -> usize {
        self.top.iter().chain(&self.bottom).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total() == 0
    }

    /// Sum of interval indicator vectors.
    pub fn from_intervals(n: usize, top: &[Interval], bottom: &[Interval]) -> Self {
        let count = |ivs: &[Interval]| (1..=n).map(|v| ivs.iter().filter(|i| i.contains(v)).count()).collect();
        DimVector { top: count(top), bottom: count(bottom) }
    }

    pub fn add(&self, other: &Self) -> Self {
        let zip = |a: &[usize], b: &[usize]| a.iter().zip(b).map(|(x, y)| x + y).collect();
        DimVector { top: zip(&self.top, &other.top), bottom: zip(&self.bottom, &other.bottom) }
    }

    pub fn scaled(&self, k: usize) -> Self {
        DimVector {
            top: self.top.iter().map(|x| x * k).collect(),
            bottom: self.bottom.iter().map(|x| x * k).collect(),
        }
    }
}

/// Rows are digit strings when every entry is below 10, otherwise comma
/// lists (a one-vertex row keeps a trailing comma, as in `3,/18,`).
fn write_row(f: &mut fmt::Formatter<'_>, row: &[usize], wide: bool) -> fmt::Result {
    if !wide {
        for d in row {
            write!(f, "{d}")?;
        }
        Ok(())
    } else {
        let parts: Vec<String> = row.iter().map(|d| d.to_string()).collect();
        write!(f, "{}", parts.join(","))?;
        if row.len() == 1 {
            f.write_str(",")?;
        }
        Ok(())
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.top.iter().chain(&self.bottom).any(|&d| d >= 10);
        write_row(f, &self.top, wide)?;
        f.write_str("/")?;
        write_row(f, &self.bottom, wide)
    }
}

fn parse_row(s: &str) -> Result<Vec<usize>> {
    let bad = || Error::Parse(format!("bad dimension row {s:?}"));
    if s.contains(',') {
        let s = s.strip_suffix(',').unwrap_or(s);
        s.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect()
    } else {
        s.chars().map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad)).collect()
    }
}

impl FromStr for DimVector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (t, b) = s.trim().split_once('/').ok_or_else(|| Error::Parse(format!("dimension vector {s:?} lacks '/'")))?;
        let dv = DimVector { top: parse_row(t)?, bottom: parse_row(b)? };
        if dv.top.len() != dv.bottom.len() || dv.top.is_empty() {
            return Err(Error::Parse(format!("dimension vector {s:?} has rows of different length")));
        }
        Ok(dv)
    }
}

/// Identity-block structure of one indecomposable summand in a terminal
/// normal form: the interval summands of both rows and the identity blocks
/// `(column interval, row interval)` joining them.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PivotPattern {
    pub top: Vec<Interval>,
    pub bottom: Vec<Interval>,
    pub identities: Vec<(Interval, Interval)>,
}

impl PivotPattern {
    pub fn dim_vector(&self, n: usize) -> DimVector {
        DimVector::from_intervals(n, &self.top, &self.bottom)
    }

    pub fn canonicalize(&mut self) {
        self.top.sort();
        self.bottom.sort();
        self.identities.sort();
    }
}

impl fmt::Display for PivotPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |v: &[Interval]| {
            if v.is_empty() {
                "0".to_string()
            } else {
                v.iter().map(|i| i.to_string()).collect::<Vec<_>>().join("+")
            }
        };
        write!(f, "{} over {}", side(&self.top), side(&self.bottom))?;
        for (c, r) in &self.identities {
            write!(f, " E{c}->{r}")?;
        }
        Ok(())
    }
}

/// Multiplicity of each indecomposable, keyed by dimension vector.
///
/// Equality compares multiplicities only; the pivot pattern recorded for a
/// dimension vector is annotation, and the ladder length is implied by the
/// entries (an empty diagram file cannot record it).
#[derive(Clone, Debug, Default)]
pub struct PersistenceDiagram {
    n: usize,
    entries: BTreeMap<DimVector, usize>,
    patterns: BTreeMap<DimVector, PivotPattern>,
}

impl PartialEq for PersistenceDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
    }
}

impl Eq for PersistenceDiagram {}

#[derive(Serialize, Deserialize)]
struct EntryLabel {
    dim_vector: DimVector,
    #[serde(default)]
    pivot_pattern: Vec<(Interval, Interval)>,
}

#[derive(Serialize, Deserialize)]
struct DiagramEntry {
    label: EntryLabel,
    multiplicity: usize,
}

impl PersistenceDiagram {
    pub fn new(n: usize) -> Self {
        PersistenceDiagram { n, entries: BTreeMap::new(), patterns: BTreeMap::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add(&mut self, d: DimVector, mult: usize) {
        if mult > 0 && !d.is_zero() {
            *self.entries.entry(d).or_insert(0) += mult;
        }
    }

    /// Adds a summand; the smallest pattern seen for a dimension vector is kept.
    pub fn add_pattern(&mut self, p: PivotPattern, mult: usize) {
        let d = p.dim_vector(self.n);
        if mult == 0 || d.is_zero() {
            return;
        }
        match self.patterns.get(&d) {
            Some(old) if *old <= p => {}
            _ => {
                self.patterns.insert(d.clone(), p);
            }
        }
        self.add(d, mult);
    }

    pub fn multiplicity(&self, d: &DimVector) -> usize {
        self.entries.get(d).copied().unwrap_or(0)
    }

    pub fn pattern(&self, d: &DimVector) -> Option<&PivotPattern> {
        self.patterns.get(d)
    }

    pub fn entries(&self) -> &BTreeMap<DimVector, usize> {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of indecomposable summands counted with multiplicity.
    pub fn total_count(&self) -> usize {
        self.entries.values().sum()
    }

    /// Dimension vector of the module the diagram describes.
    pub fn total_dim_vector(&self) -> DimVector {
        let z = DimVector::new(vec![0; self.n], vec![0; self.n]);
        self.entries.iter().fold(z, |acc, (d, &m)| acc.add(&d.scaled(m)))
    }

    pub fn merge(&mut self, other: &Self) {
        for (d, &m) in &other.entries {
            match other.patterns.get(d) {
                Some(p) => self.add_pattern(p.clone(), m),
                None => self.add(d.clone(), m),
            }
        }
    }

    /// Top-level JSON array of `{label: {dim_vector, pivot_pattern}, multiplicity}`.
    pub fn to_json(&self) -> String {
        let list: Vec<DiagramEntry> = self
            .entries
            .iter()
            .map(|(d, &m)| DiagramEntry {
                label: EntryLabel {
                    dim_vector: d.clone(),
                    pivot_pattern: self.patterns.get(d).map(|p| p.identities.clone()).unwrap_or_default(),
                },
                multiplicity: m,
            })
            .collect();
        serde_json::to_string_pretty(&list).expect("diagram serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let list: Vec<DiagramEntry> = serde_json::from_str(s)?;
        let n = list.first().map_or(0, |e| e.label.dim_vector.n());
        let mut d = PersistenceDiagram::new(n);
        for e in list {
            let dv = e.label.dim_vector;
            if dv.n() != n || dv.bottom.len() != n {
                return Err(Error::Parse("diagram entries of different lengths".into()));
            }
            if e.multiplicity == 0 {
                return Err(Error::Parse(format!("zero multiplicity for {dv}")));
            }
            if d.entries.contains_key(&dv) {
                return Err(Error::Parse(format!("duplicate label {dv}")));
            }
            d.add(dv, e.multiplicity);
        }
        Ok(d)
    }
}

impl fmt::Display for PersistenceDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (d, m) in &self.entries {
            writeln!(f, "{d}  x{m}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dim_vector_text_round_trip() {
        let d: DimVector = "121/010".parse().unwrap();
        assert_eq!(d.top, vec![1, 2, 1]);
        assert_eq!(d.to_string(), "121/010");
        let big = DimVector::new(vec![12, 0], vec![1, 1]);
        assert_eq!(big.to_string().parse::<DimVector>().unwrap(), big);
        assert!("12/1".parse::<DimVector>().is_err());
    }

    #[test]
    fn from_intervals_counts_support() {
        let d = DimVector::from_intervals(3, &[Interval::new(1, 1), Interval::new(3, 3)], &[Interval::new(1, 3)]);
        assert_eq!(d.to_string(), "101/111");
    }

    #[test]
    fn diagram_json_round_trip() {
        let mut p = PersistenceDiagram::new(2);
        p.add("11/01".parse().unwrap(), 2);
        p.add("11/01".parse().unwrap(), 1);
        p.add("00/00".parse().unwrap(), 5);
        assert_eq!(p.len(), 1);
        assert_eq!(p.total_dim_vector().to_string(), "33/03");
        let q = PersistenceDiagram::from_json(&p.to_json()).unwrap();
        assert_eq!(p, q);
    }
}
