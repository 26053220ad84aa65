//! Erasability search and process trees.
//!
//! A target block is row erasable if some identity block in its column strip
//! lies in a row strip from which additions into the target's row are
//! permissible, and every side effect of those additions either lands in an
//! unprocessed or strongly zero block, or lands in a zero block that is itself
//! erasable without using the identity block that caused it.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{OpKind, Reducer};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::ladder::{BlockId, BlockStatus};
use crate::reduction::ops;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EraseDirection {
    /// additions of rows of `via` into the target's rows
    Row,
    /// additions of columns of `via` into the target's columns
    Col,
}

/// `target` is zeroed using the identity block `via`; each child repairs one
/// side effect and is executed after its parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProcessTree {
    pub target: BlockId,
    pub via: BlockId,
    pub direction: EraseDirection,
    pub children: Vec<ProcessTree>,
}

impl ProcessTree {
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(ProcessTree::size).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.children.iter().map(ProcessTree::depth).max().unwrap_or(0)
    }

    /// Preorder list of `(target, via, direction)`.
    pub fn preorder(&self) -> Vec<(BlockId, BlockId, EraseDirection)> {
        let mut out = vec![(self.target, self.via, self.direction)];
        for c in &self.children {
            out.extend(c.preorder());
        }
        out
    }
}

impl<F: Field> Reducer<F> {
    fn nonzero(&self, b: BlockId) -> bool {
        let p = self.problem();
        matches!(p.status(b), BlockStatus::Unprocessed | BlockStatus::Identity) && p.area(b) > 0
    }

    /// Blocks in `v`'s row strip that are neither zero nor strongly zero.
    pub fn nonzero_row_neighbors(&self, v: BlockId) -> Vec<BlockId> {
        (0..self.problem().col_strips().len())
            .map(|j| BlockId { row: v.row, col: j })
            .filter(|&b| b != v && self.nonzero(b))
            .collect()
    }

    /// Blocks in `v`'s column strip that are neither zero nor strongly zero.
    pub fn nonzero_col_neighbors(&self, v: BlockId) -> Vec<BlockId> {
        (0..self.problem().row_strips().len())
            .map(|i| BlockId { row: i, col: v.col })
            .filter(|&b| b != v && self.nonzero(b))
            .collect()
    }

    /// Row strip `a` may add into row strip `b`.
    pub fn row_permissible(&self, a: usize, b: usize) -> bool {
        let p = self.problem();
        ops::permissible(p.hom(), OpKind::RowAdd, p.row_strips()[a].label, p.row_strips()[b].label)
    }

    /// Column strip `a` may add into column strip `b`.
    pub fn col_permissible(&self, a: usize, b: usize) -> bool {
        let p = self.problem();
        ops::permissible(p.hom(), OpKind::ColAdd, p.col_strips()[a].label, p.col_strips()[b].label)
    }

    /// Increasing `≺` of the strip label, then partition ordinal.
    fn by_row_order(&self, mut v: Vec<BlockId>) -> Vec<BlockId> {
        let p = self.problem();
        v.sort_by_key(|b| (p.hom().position(p.row_strips()[b.row].label), b.row));
        v
    }

    fn by_col_order(&self, mut v: Vec<BlockId>) -> Vec<BlockId> {
        let p = self.problem();
        v.sort_by_key(|b| (p.hom().position(p.col_strips()[b.col].label), b.col));
        v
    }

    pub fn erasable(&self, target: BlockId) -> Option<ProcessTree> {
        self.erasable_from(target, None, &mut BTreeSet::new())
    }

    /// Row erasability first, then column erasability, never using `flag`.
    pub fn erasable_from(&self, t: BlockId, flag: Option<BlockId>, visited: &mut BTreeSet<BlockId>) -> Option<ProcessTree> {
        let snapshot = visited.clone();
        if let Some(tree) = self.row_erasable(t, flag, visited) {
            return Some(tree);
        }
        *visited = snapshot;
        self.col_erasable(t, flag, visited)
    }

    pub fn row_erasable(&self, t: BlockId, flag: Option<BlockId>, visited: &mut BTreeSet<BlockId>) -> Option<ProcessTree> {
        let candidates = self.by_row_order(self.col_side_effect(t));
        visited.insert(t);
        'cand: for e in candidates {
            if visited.contains(&e) || Some(e) == flag || !self.row_permissible(e.row, t.row) {
                continue;
            }
            let snapshot = visited.clone();
            let mut children = Vec::new();
            for u in self.nonzero_row_neighbors(e) {
                let side = BlockId { row: t.row, col: u.col };
                if visited.contains(&side) {
                    *visited = snapshot;
                    continue 'cand;
                }
                match self.problem().status(side) {
                    BlockStatus::Identity => {
                        *visited = snapshot;
                        continue 'cand;
                    }
                    BlockStatus::Zero => match self.erasable_from(side, Some(u), visited) {
                        Some(child) => children.push(child),
                        None => {
                            *visited = snapshot;
                            continue 'cand;
                        }
                    },
                    BlockStatus::Unprocessed | BlockStatus::StronglyZero => {}
                }
            }
            return Some(ProcessTree { target: t, via: e, direction: EraseDirection::Row, children });
        }
        None
    }

    pub fn col_erasable(&self, t: BlockId, flag: Option<BlockId>, visited: &mut BTreeSet<BlockId>) -> Option<ProcessTree> {
        let candidates = self.by_col_order(self.row_side_effect(t));
        visited.insert(t);
        'cand: for e in candidates {
            if visited.contains(&e) || Some(e) == flag || !self.col_permissible(e.col, t.col) {
                continue;
            }
            let snapshot = visited.clone();
            let mut children = Vec::new();
            for u in self.nonzero_col_neighbors(e) {
                let side = BlockId { row: u.row, col: t.col };
                if visited.contains(&side) {
                    *visited = snapshot;
                    continue 'cand;
                }
                match self.problem().status(side) {
                    BlockStatus::Identity => {
                        *visited = snapshot;
                        continue 'cand;
                    }
                    BlockStatus::Zero => match self.erasable_from(side, Some(u), visited) {
                        Some(child) => children.push(child),
                        None => {
                            *visited = snapshot;
                            continue 'cand;
                        }
                    },
                    BlockStatus::Unprocessed | BlockStatus::StronglyZero => {}
                }
            }
            return Some(ProcessTree { target: t, via: e, direction: EraseDirection::Col, children });
        }
        None
    }

    /// Carry out a process tree in preorder with scalars read from the
    /// current matrix.
    pub fn execute_tree(&mut self, t: &ProcessTree) -> Result<()> {
        let (rows, cols) = (self.problem().row_strips().to_vec(), self.problem().col_strips().to_vec());
        let block = self.problem().block(t.target);
        let f = self.problem().field().clone();
        let (rt, ct) = (rows[t.target.row], cols[t.target.col]);
        for i in 0..rt.width {
            for j in 0..ct.width {
                let x = block.get(i, j);
                if f.is_zero(x) {
                    continue;
                }
                match t.direction {
                    EraseDirection::Row => {
                        let src = rows[t.via.row].start + j;
                        self.op(OpKind::RowAdd, src, rt.start + i, f.neg(x))?;
                    }
                    EraseDirection::Col => {
                        let src = cols[t.via.col].start + i;
                        self.op(OpKind::ColAdd, src, ct.start + j, f.neg(x))?;
                    }
                }
            }
        }
        if !self.problem().block(t.target).is_zero() {
            return Err(Error::Internal(format!("process tree left {} nonzero", self.problem().block_name(t.target))));
        }
        for c in &t.children {
            self.execute_tree(c)?;
        }
        Ok(())
    }
}
