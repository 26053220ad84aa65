//! Reading indecomposable summands off a terminal normal form.

use crate::diagram::PivotPattern;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::intervals::{HomStructure, Interval};
use crate::ladder::{BlockId, BlockProblem, BlockStatus, CLRep};
use crate::linalg::Matrix;
use crate::zigzag::{canonical_labels, ZigzagRep};

/// One connected component of the identity-block graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub pattern: PivotPattern,
    pub multiplicity: usize,
    /// Labels of the component's row strips, top to bottom.
    pub row_labels: Vec<Interval>,
    /// Labels of the component's column strips, left to right.
    pub col_labels: Vec<Interval>,
    /// Identity blocks as `(row, column)` positions in the two lists above.
    pub identities: Vec<(usize, usize)>,
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Components of the bipartite graph on strips whose edges are identity
/// blocks. Requires a terminal form (no unprocessed block of positive area).
pub fn extract_summands<F: Field>(p: &BlockProblem<F>) -> Result<Vec<Summand>> {
    let (nr, nc) = (p.row_strips().len(), p.col_strips().len());
    let mut dsu = Dsu((0..nr + nc).collect());
    let mut edges = Vec::new();
    for i in 0..nr {
        for j in 0..nc {
            let b = BlockId { row: i, col: j };
            match p.status(b) {
                BlockStatus::Unprocessed if p.area(b) > 0 => {
                    return Err(Error::Internal(format!("block {} is still unprocessed", p.block_name(b))));
                }
                BlockStatus::Identity => {
                    if p.row_strips()[i].width != p.col_strips()[j].width || !p.block(b).is_identity() {
                        return Err(Error::Internal(format!("identity block {} is not an identity", p.block_name(b))));
                    }
                    dsu.union(i, nr + j);
                    edges.push((i, j));
                }
                _ => {}
            }
        }
    }
    let mut roots: Vec<usize> = Vec::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    for x in 0..nr + nc {
        let w = if x < nr { p.row_strips()[x].width } else { p.col_strips()[x - nr].width };
        if w == 0 {
            continue;
        }
        let r = dsu.find(x);
        match roots.iter().position(|&y| y == r) {
            Some(k) => members[k].push(x),
            None => {
                roots.push(r);
                members.push(vec![x]);
            }
        }
    }
    let mut out = Vec::new();
    for m in members {
        let rows: Vec<usize> = m.iter().copied().filter(|&x| x < nr).collect();
        let cols: Vec<usize> = m.iter().copied().filter(|&x| x >= nr).map(|x| x - nr).collect();
        let widths: Vec<usize> = rows
            .iter()
            .map(|&i| p.row_strips()[i].width)
            .chain(cols.iter().map(|&j| p.col_strips()[j].width))
            .collect();
        if widths.iter().any(|&w| w != widths[0]) {
            return Err(Error::Internal("strips of one component have different widths".into()));
        }
        let row_labels: Vec<Interval> = rows.iter().map(|&i| p.row_strips()[i].label).collect();
        let col_labels: Vec<Interval> = cols.iter().map(|&j| p.col_strips()[j].label).collect();
        let identities: Vec<(usize, usize)> = edges
            .iter()
            .filter(|(i, _)| rows.contains(i))
            .map(|&(i, j)| {
                (
                    rows.iter().position(|&x| x == i).expect("row in component"),
                    cols.iter().position(|&y| y == j).expect("column in component"),
                )
            })
            .collect();
        let mut pattern = PivotPattern {
            top: row_labels.clone(),
            bottom: col_labels.clone(),
            identities: identities.iter().map(|&(i, j)| (col_labels[j], row_labels[i])).collect(),
        };
        pattern.canonicalize();
        out.push(Summand { pattern, multiplicity: widths[0], row_labels, col_labels, identities });
    }
    Ok(out)
}

/// An explicit module isomorphic to one copy of the summand: interval
/// modules on both rows joined by the basis morphisms of its identity blocks.
pub fn realize_summand<F: Field>(field: &F, hs: &HomStructure, s: &Summand) -> Result<CLRep<F>> {
    let tau = hs.orientation();
    let n = hs.n();
    let parts = |labels: &[Interval]| -> Vec<(Interval, usize)> {
        hs.order()
            .iter()
            .filter_map(|iv| {
                let c = labels.iter().filter(|l| *l == iv).count();
                (c > 0).then_some((*iv, c))
            })
            .collect()
    };
    let copy_index = |labels: &[Interval], k: usize| labels[..k].iter().filter(|l| **l == labels[k]).count();
    let (bp, tp) = (parts(&s.col_labels), parts(&s.row_labels));
    let bottom = ZigzagRep::canonical(field, tau, &bp);
    let top = ZigzagRep::canonical(field, tau, &tp);
    let (bl, tl) = (canonical_labels(n, &bp), canonical_labels(n, &tp));
    let mut vertical: Vec<Matrix<F>> = (0..n).map(|v| Matrix::zeros(field, tl[v].len(), bl[v].len())).collect();
    for &(i, j) in &s.identities {
        let (ri, cj) = (s.row_labels[i], s.col_labels[j]);
        if !hs.hom(cj, ri) {
            return Err(Error::Internal(format!("identity block {cj} -> {ri} without a basis morphism")));
        }
        let rk = (ri, copy_index(&s.row_labels, i));
        let ck = (cj, copy_index(&s.col_labels, j));
        for v in 1..=n {
            if ri.contains(v) && cj.contains(v) {
                let a = tl[v - 1].iter().position(|&x| x == rk).expect("top label");
                let b = bl[v - 1].iter().position(|&x| x == ck).expect("bottom label");
                vertical[v - 1].set(a, b, field.one());
            }
        }
    }
    CLRep::new_validated(bottom, top, vertical)
}
