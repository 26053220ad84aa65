//! The block matrix reduction engine.
//!
//! Each outer step picks the bottommost unprocessed block of the rightmost
//! column strip that still has one, brings it to rank normal form by inner
//! operations, repairs disturbed identity blocks, splits strips so the new
//! identity is a block of its own, and then zeroes every block that is
//! erasable until none is.

pub mod erasable;
pub mod extract;
pub mod ops;
pub mod transcript;

use std::collections::BTreeSet;

use serde::Serialize;

use crate::diagram::PersistenceDiagram;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::intervals::{HomStructure, Interval};
use crate::ladder::{build_block_problem_with, BlockContext, BlockId, BlockProblem, BlockStatus, CLRep, Strip};

pub use erasable::{EraseDirection, ProcessTree};
pub use extract::{extract_summands, realize_summand, Summand};
pub use ops::{ElementaryOp, OpKind};
pub use transcript::{Axis, Event, Transcript, VerifyReport};

#[derive(Clone, Debug)]
pub struct ReductionOptions {
    /// Outer steps allowed per block of the finest possible partition.
    pub outer_cap_factor: usize,
    /// Keep a status grid snapshot in every step record.
    pub record_grids: bool,
}

impl Default for ReductionOptions {
    fn default() -> Self {
        ReductionOptions { outer_cap_factor: 16, record_grids: false }
    }
}

/// One node of an executed process tree, with blocks named as they were at the time.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeRecord {
    pub target: String,
    pub target_labels: (Interval, Interval),
    pub via: String,
    pub via_labels: (Interval, Interval),
    pub direction: EraseDirection,
    pub children: Vec<TreeRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ErasureRecord {
    pub step: usize,
    pub target: String,
    pub target_labels: (Interval, Interval),
    pub was_identity: bool,
    pub tree: TreeRecord,
    pub ops: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    pub step: usize,
    pub target: String,
    pub target_labels: (Interval, Interval),
    pub rank: usize,
    pub snf_ops: usize,
    pub fixes: Vec<String>,
    pub splits: Vec<String>,
    pub erased: Vec<ErasureRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub steps: usize,
    pub ops: usize,
    pub fixes: usize,
    pub splits: usize,
    pub erasures: usize,
    pub identity_erasures: Vec<ErasureRecord>,
}

/// Single-owner state of one reduction run.
pub struct Reducer<F: Field> {
    p: BlockProblem<F>,
    transcript: Transcript<F>,
    trace: Vec<StepRecord>,
    stats: Stats,
    opts: ReductionOptions,
    cur: StepRecord,
    fix_cap: usize,
    step_cap: usize,
    done: bool,
}

impl<F: Field> Reducer<F> {
    pub fn new(p: BlockProblem<F>, opts: ReductionOptions) -> Self {
        let transcript = Transcript::start(&p);
        let kr = p.row_labels.len() + p.rows.len();
        let kc = p.col_labels.len() + p.cols.len();
        let step_cap = opts.outer_cap_factor.max(1) * (kr * kc).max(1);
        Reducer {
            p,
            transcript,
            trace: Vec::new(),
            stats: Stats::default(),
            opts,
            cur: StepRecord::default(),
            fix_cap: (kr * kc).max(4),
            step_cap,
            done: false,
        }
    }

    pub fn problem(&self) -> &BlockProblem<F> {
        &self.p
    }
    pub fn trace(&self) -> &[StepRecord] {
        &self.trace
    }
    pub fn stats(&self) -> &Stats {
        &self.stats
    }
    pub fn transcript(&self) -> &Transcript<F> {
        &self.transcript
    }
    pub fn is_done(&self) -> bool {
        self.done
    }

    /// Block by labels and 1-based partition ordinals.
    pub fn find_block(&self, row: Interval, row_part: usize, col: Interval, col_part: usize) -> Option<BlockId> {
        let r = (0..self.p.rows.len()).find(|&i| self.p.rows[i].label == row && self.p.row_part(i) == row_part)?;
        let c = (0..self.p.cols.len()).find(|&j| self.p.cols[j].label == col && self.p.col_part(j) == col_part)?;
        Some(BlockId { row: r, col: c })
    }

    /// Run to the terminal normal form.
    pub fn run(&mut self) -> Result<()> {
        while self.step()?.is_some() {}
        Ok(())
    }

    /// One outer step; `None` once no unprocessed block remains.
    pub fn step(&mut self) -> Result<Option<&StepRecord>> {
        if self.done {
            return Ok(None);
        }
        let Some(v) = self.select_target() else {
            self.done = true;
            self.transcript.finish(&self.p);
            return Ok(None);
        };
        if self.stats.steps >= self.step_cap {
            return Err(Error::IterationCap(format!(
                "outer loop exceeded {} steps\n{}",
                self.step_cap,
                self.p.grid_text()
            )));
        }
        self.stats.steps += 1;
        self.cur = StepRecord {
            step: self.stats.steps,
            target: self.p.live_block_name(v),
            target_labels: self.p.block_labels(v),
            ..StepRecord::default()
        };
        let before = self.stats.ops;
        let rank = self.snf_block(v)?;
        self.cur.rank = rank;
        self.cur.snf_ops = self.stats.ops - before;

        let f_r = self.row_side_effect(v);
        let f_c = self.col_side_effect(v);
        for b in f_r {
            self.col_fix(b, 0)?;
        }
        for b in f_c {
            self.row_fix(b, 0)?;
        }
        let check = self.p.block(v);
        let (h, w) = check.shape();
        let snf_ok = (0..h).all(|i| (0..w).all(|j| {
            let x = check.get(i, j);
            if i == j && i < rank {
                self.p.field.is_one(x)
            } else {
                self.p.field.is_zero(x)
            }
        }));
        if !snf_ok {
            return Err(Error::Internal(format!(
                "fixing identity blocks disturbed the target {}",
                self.cur.target
            )));
        }
        self.repartition(v, rank)?;
        self.erase_loop()?;
        self.check_invariants()?;
        if self.opts.record_grids {
            self.cur.grid = Some(self.p.grid_text());
        }
        let rec = std::mem::take(&mut self.cur);
        self.trace.push(rec);
        Ok(self.trace.last())
    }

    pub fn select_target(&self) -> Option<BlockId> {
        for j in (0..self.p.cols.len()).rev() {
            if self.p.cols[j].width == 0 {
                continue;
            }
            for i in (0..self.p.rows.len()).rev() {
                let b = BlockId { row: i, col: j };
                if self.p.status(b) == BlockStatus::Unprocessed && self.p.area(b) > 0 {
                    return Some(b);
                }
            }
        }
        None
    }

    fn op(&mut self, kind: OpKind, src: usize, tgt: usize, scalar: F::Elem) -> Result<()> {
        let op = ElementaryOp { kind, src, tgt, scalar };
        ops::apply(&self.p.hom, &mut self.p.coeff, &self.p.row_labels, &self.p.col_labels, &op)?;
        self.transcript.events.push(Event::Op(op));
        self.stats.ops += 1;
        Ok(())
    }

    fn neg(&self, x: &F::Elem) -> F::Elem {
        self.p.field.neg(x)
    }

    /// Rank normal form of one block by inner operations; returns the rank.
    pub fn snf_block(&mut self, b: BlockId) -> Result<usize> {
        let (rs, cs) = (self.p.rows[b.row], self.p.cols[b.col]);
        let (h, w) = (rs.width, cs.width);
        let mut k = 0;
        while k < h.min(w) {
            let pivot = (k..w).find_map(|j| (k..h).find(|&i| !self.p.field.is_zero(self.p.coeff.get(rs.start + i, cs.start + j))).map(|i| (i, j)));
            let Some((i, j)) = pivot else { break };
            if j != k {
                self.op(OpKind::ColSwap, cs.start + j, cs.start + k, self.p.field.one())?;
            }
            if i != k {
                self.op(OpKind::RowSwap, rs.start + i, rs.start + k, self.p.field.one())?;
            }
            let x = self.p.coeff.get(rs.start + k, cs.start + k).clone();
            if !self.p.field.is_one(&x) {
                let inv = self.p.field.inv(&x).expect("pivot is nonzero");
                self.op(OpKind::RowScale, rs.start + k, rs.start + k, inv)?;
            }
            for i2 in 0..h {
                let y = self.p.coeff.get(rs.start + i2, cs.start + k).clone();
                if i2 != k && !self.p.field.is_zero(&y) {
                    self.op(OpKind::RowAdd, rs.start + k, rs.start + i2, self.neg(&y))?;
                }
            }
            for j2 in 0..w {
                let y = self.p.coeff.get(rs.start + k, cs.start + j2).clone();
                if j2 != k && !self.p.field.is_zero(&y) {
                    self.op(OpKind::ColAdd, cs.start + k, cs.start + j2, self.neg(&y))?;
                }
            }
            k += 1;
        }
        Ok(k)
    }

    fn identities_where(&self, pred: impl Fn(BlockId) -> bool) -> Vec<BlockId> {
        let mut out = Vec::new();
        for i in 0..self.p.rows.len() {
            for j in 0..self.p.cols.len() {
                let b = BlockId { row: i, col: j };
                if self.p.status(b) == BlockStatus::Identity && pred(b) {
                    out.push(b);
                }
            }
        }
        out
    }

    /// Identity blocks sharing `v`'s row strip.
    pub fn row_side_effect(&self, v: BlockId) -> Vec<BlockId> {
        self.identities_where(|b| b.row == v.row && b != v)
    }

    /// Identity blocks sharing `v`'s column strip.
    pub fn col_side_effect(&self, v: BlockId) -> Vec<BlockId> {
        self.identities_where(|b| b.col == v.col && b != v)
    }

    fn fix_depth_check(&self, depth: usize, b: BlockId) -> Result<()> {
        if depth > self.fix_cap {
            return Err(Error::IterationCap(format!(
                "identity repair recursion deeper than {} at {}\n{}",
                self.fix_cap,
                self.p.block_name(b),
                self.p.grid_text()
            )));
        }
        Ok(())
    }

    /// Restore identity block `b` by inner column operations, then repair the
    /// identity blocks this disturbed in its column.
    pub fn col_fix(&mut self, b: BlockId, depth: usize) -> Result<()> {
        self.fix_depth_check(depth, b)?;
        if self.p.block(b).is_identity() {
            return Ok(());
        }
        self.stats.fixes += 1;
        self.cur.fixes.push(format!("col_fix {}", self.p.live_block_name(b)));
        let (rs, cs) = (self.p.rows[b.row], self.p.cols[b.col]);
        let w = cs.width;
        let at = |s: &Self, i: usize, j: usize| s.p.coeff.get(rs.start + i, cs.start + j).clone();
        for i in 0..w {
            let Some(j) = (i..w).find(|&j| !self.p.field.is_zero(&at(self, i, j))) else {
                return Err(Error::Internal(format!("identity block {} became singular", self.p.block_name(b))));
            };
            if j != i {
                self.op(OpKind::ColSwap, cs.start + j, cs.start + i, self.p.field.one())?;
            }
            let x = at(self, i, i);
            if !self.p.field.is_one(&x) {
                self.op(OpKind::ColScale, cs.start + i, cs.start + i, self.p.field.inv(&x).expect("nonzero"))?;
            }
            for j2 in 0..w {
                let y = at(self, i, j2);
                if j2 != i && !self.p.field.is_zero(&y) {
                    self.op(OpKind::ColAdd, cs.start + i, cs.start + j2, self.neg(&y))?;
                }
            }
        }
        for e in self.col_side_effect(b) {
            self.row_fix(e, depth + 1)?;
        }
        Ok(())
    }

    /// Restore identity block `b` by inner row operations, then repair the
    /// identity blocks this disturbed in its row.
    pub fn row_fix(&mut self, b: BlockId, depth: usize) -> Result<()> {
        self.fix_depth_check(depth, b)?;
        if self.p.block(b).is_identity() {
            return Ok(());
        }
        self.stats.fixes += 1;
        self.cur.fixes.push(format!("row_fix {}", self.p.live_block_name(b)));
        let (rs, cs) = (self.p.rows[b.row], self.p.cols[b.col]);
        let h = rs.width;
        let at = |s: &Self, i: usize, j: usize| s.p.coeff.get(rs.start + i, cs.start + j).clone();
        for j in 0..h {
            let Some(i) = (j..h).find(|&i| !self.p.field.is_zero(&at(self, i, j))) else {
                return Err(Error::Internal(format!("identity block {} became singular", self.p.block_name(b))));
            };
            if i != j {
                self.op(OpKind::RowSwap, rs.start + i, rs.start + j, self.p.field.one())?;
            }
            let x = at(self, j, j);
            if !self.p.field.is_one(&x) {
                self.op(OpKind::RowScale, rs.start + j, rs.start + j, self.p.field.inv(&x).expect("nonzero"))?;
            }
            for i2 in 0..h {
                let y = at(self, i2, j);
                if i2 != j && !self.p.field.is_zero(&y) {
                    self.op(OpKind::RowAdd, rs.start + j, rs.start + i2, self.neg(&y))?;
                }
            }
        }
        for e in self.row_side_effect(b) {
            self.col_fix(e, depth + 1)?;
        }
        Ok(())
    }

    /// Split `v`'s strips after its rank normal form so the identity part is a
    /// block of its own. Cuts propagate through identity blocks so these stay
    /// square and whole.
    pub fn repartition(&mut self, v: BlockId, rank: usize) -> Result<()> {
        let (h, w) = (self.p.rows[v.row].width, self.p.cols[v.col].width);
        if rank == 0 {
            self.p.status[v.row][v.col] = BlockStatus::Zero;
            return Ok(());
        }
        if rank == h && rank == w {
            self.p.status[v.row][v.col] = BlockStatus::Identity;
            return Ok(());
        }
        let mut row_cuts = BTreeSet::new();
        let mut col_cuts = BTreeSet::new();
        if rank < h {
            row_cuts.insert(self.p.rows[v.row].start + rank);
        }
        if rank < w {
            col_cuts.insert(self.p.cols[v.col].start + rank);
        }
        let ids = self.identities_where(|_| true);
        loop {
            let mut changed = false;
            for b in &ids {
                let (rs, cs) = (self.p.rows[b.row], self.p.cols[b.col]);
                let inner = |s: &Strip, c: usize| c > s.start && c < s.start + s.width;
                let from_cols: Vec<usize> = col_cuts.iter().filter(|&&c| inner(&cs, c)).map(|&c| rs.start + (c - cs.start)).collect();
                let from_rows: Vec<usize> = row_cuts.iter().filter(|&&c| inner(&rs, c)).map(|&c| cs.start + (c - rs.start)).collect();
                for c in from_cols {
                    changed |= row_cuts.insert(c);
                }
                for c in from_rows {
                    changed |= col_cuts.insert(c);
                }
            }
            if !changed {
                break;
            }
        }

        // (old strip, offset inside it, new strip)
        let split = |strips: &[Strip], cuts: &BTreeSet<usize>| -> Vec<(usize, usize, Strip)> {
            let mut out = Vec::new();
            for (k, s) in strips.iter().enumerate() {
                let mut bounds = vec![s.start];
                bounds.extend(cuts.iter().copied().filter(|&c| c > s.start && c < s.start + s.width));
                bounds.push(s.start + s.width);
                for win in bounds.windows(2) {
                    out.push((k, win[0] - s.start, Strip { label: s.label, start: win[0], width: win[1] - win[0] }));
                }
            }
            out
        };
        let new_rows = split(&self.p.rows, &row_cuts);
        let new_cols = split(&self.p.cols, &col_cuts);
        let mut status = vec![vec![BlockStatus::Zero; new_cols.len()]; new_rows.len()];
        for (ni, &(oi, ro, ref rstrip)) in new_rows.iter().enumerate() {
            for (nj, &(oj, co, ref cstrip)) in new_cols.iter().enumerate() {
                let old = self.p.status[oi][oj];
                let diag = if (oi, oj) == (v.row, v.col) {
                    Some(rank)
                } else if old == BlockStatus::Identity {
                    Some(self.p.rows[oi].width)
                } else {
                    None
                };
                status[ni][nj] = match diag {
                    None => old,
                    Some(r) => {
                        let (hw, ww) = (rstrip.width, cstrip.width);
                        if ro == co && hw == ww && ro + hw <= r {
                            BlockStatus::Identity
                        } else {
                            let lo = ro.max(co);
                            let hi = (ro + hw).min(co + ww).min(r);
                            if lo < hi {
                                return Err(Error::Internal(format!(
                                    "repartition cuts through the identity part of {}",
                                    self.p.block_name(BlockId { row: oi, col: oj })
                                )));
                            }
                            BlockStatus::Zero
                        }
                    }
                };
            }
        }
        for &c in &row_cuts {
            let s = self.p.row_strip_of(c);
            self.cur.splits.push(format!("row {} at +{}", self.p.row_name(s), c - self.p.rows[s].start));
            self.transcript.events.push(Event::Split { axis: Axis::Row, at: c });
        }
        for &c in &col_cuts {
            let s = self.p.col_strip_of(c);
            self.cur.splits.push(format!("column {} at +{}", self.p.col_name(s), c - self.p.cols[s].start));
            self.transcript.events.push(Event::Split { axis: Axis::Col, at: c });
        }
        self.stats.splits += row_cuts.len() + col_cuts.len();
        self.p.rows = new_rows.into_iter().map(|t| t.2).collect();
        self.p.cols = new_cols.into_iter().map(|t| t.2).collect();
        self.p.status = status;
        Ok(())
    }

    /// Zero erasable blocks, scanning row-major and restarting after each
    /// success, until none is erasable.
    fn erase_loop(&mut self) -> Result<()> {
        'outer: loop {
            for i in 0..self.p.rows.len() {
                for j in 0..self.p.cols.len() {
                    let b = BlockId { row: i, col: j };
                    let s = self.p.status(b);
                    if !matches!(s, BlockStatus::Unprocessed | BlockStatus::Identity) || self.p.area(b) == 0 {
                        continue;
                    }
                    if let Some(tree) = self.erasable(b) {
                        self.erase_with(&tree)?;
                        continue 'outer;
                    }
                }
            }
            return Ok(());
        }
    }

    fn tree_record(&self, t: &ProcessTree) -> TreeRecord {
        TreeRecord {
            target: self.p.live_block_name(t.target),
            target_labels: self.p.block_labels(t.target),
            via: self.p.live_block_name(t.via),
            via_labels: self.p.block_labels(t.via),
            direction: t.direction,
            children: t.children.iter().map(|c| self.tree_record(c)).collect(),
        }
    }

    /// Execute a process tree and mark its target zero.
    pub fn erase_with(&mut self, tree: &ProcessTree) -> Result<()> {
        let was_identity = self.p.status(tree.target) == BlockStatus::Identity;
        let rec = self.tree_record(tree);
        let before = self.stats.ops;
        self.execute_tree(tree)?;
        self.p.status[tree.target.row][tree.target.col] = BlockStatus::Zero;
        self.check_invariants()?;
        self.stats.erasures += 1;
        let er = ErasureRecord {
            step: self.stats.steps,
            target: rec.target.clone(),
            target_labels: rec.target_labels,
            was_identity,
            tree: rec,
            ops: self.stats.ops - before,
        };
        if was_identity {
            self.stats.identity_erasures.push(er.clone());
        }
        self.cur.erased.push(er);
        Ok(())
    }

    /// Every block agrees numerically with its status.
    pub fn check_invariants(&self) -> Result<()> {
        for i in 0..self.p.rows.len() {
            for j in 0..self.p.cols.len() {
                let b = BlockId { row: i, col: j };
                let m = self.p.block(b);
                let ok = match self.p.status(b) {
                    BlockStatus::StronglyZero | BlockStatus::Zero => m.is_zero(),
                    BlockStatus::Identity => m.is_identity(),
                    BlockStatus::Unprocessed => true,
                };
                if !ok {
                    return Err(Error::Internal(format!(
                        "block {} does not match its status {}\n{}",
                        self.p.block_name(b),
                        self.p.status(b),
                        self.p.grid_text()
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn into_parts(self) -> (BlockProblem<F>, Transcript<F>, Vec<StepRecord>, Stats) {
        (self.p, self.transcript, self.trace, self.stats)
    }
}

/// Everything a decomposition run produces.
#[derive(Clone, Debug)]
pub struct Decomposition<F: Field> {
    pub diagram: PersistenceDiagram,
    pub summands: Vec<Summand>,
    pub normal_form: BlockProblem<F>,
    pub context: BlockContext<F>,
    pub transcript: Transcript<F>,
    pub trace: Vec<StepRecord>,
    pub stats: Stats,
}

impl<F: Field> Decomposition<F> {
    /// The step log in the layout of a hand-worked reduction.
    pub fn trace_text(&self) -> String {
        trace_text(&self.trace, &self.summands, self.normal_form.hom().n())
    }
}

pub fn decompose<F: Field>(m: &CLRep<F>) -> Result<Decomposition<F>> {
    decompose_with(m, &HomStructure::new(m.orientation()), ReductionOptions::default())
}

pub fn decompose_with<F: Field>(m: &CLRep<F>, hs: &HomStructure, opts: ReductionOptions) -> Result<Decomposition<F>> {
    let (p, context) = build_block_problem_with(m, hs)?;
    let mut r = Reducer::new(p, opts);
    r.run()?;
    let (normal_form, transcript, trace, stats) = r.into_parts();
    let summands = extract_summands(&normal_form)?;
    let mut diagram = PersistenceDiagram::new(m.n());
    for s in &summands {
        diagram.add_pattern(s.pattern.clone(), s.multiplicity);
    }
    if diagram.total_dim_vector() != m.dim_vector() {
        return Err(Error::Internal(format!(
            "summands add up to {} but the module has dimension vector {}",
            diagram.total_dim_vector(),
            m.dim_vector()
        )));
    }
    Ok(Decomposition { diagram, summands, normal_form, context, transcript, trace, stats })
}

fn tree_text(t: &TreeRecord, depth: usize, out: &mut String) {
    let how = match t.direction {
        EraseDirection::Row => "row",
        EraseDirection::Col => "column",
    };
    out.push_str(&format!("{}{} by {how} operations from {}\n", "    ".repeat(depth + 2), t.target, t.via));
    for c in &t.children {
        tree_text(c, depth + 1, out);
    }
}

pub fn trace_text(trace: &[StepRecord], summands: &[Summand], n: usize) -> String {
    let mut out = String::new();
    for s in trace {
        out.push_str(&format!("{}. v_* = {}  rank {}  ({} inner operations)\n", s.step, s.target, s.rank, s.snf_ops));
        for f in &s.fixes {
            out.push_str(&format!("  {f}\n"));
        }
        for sp in &s.splits {
            out.push_str(&format!("  split {sp}\n"));
        }
        for e in &s.erased {
            let what = if e.was_identity { "erasable identity" } else { "erased" };
            out.push_str(&format!("  {what} {} ({} operations)\n", e.target, e.ops));
            tree_text(&e.tree, 0, &mut out);
        }
        if let Some(g) = &s.grid {
            for line in g.lines() {
                out.push_str(&format!("  | {line}\n"));
            }
        }
    }
    out.push_str("extracted:\n");
    for s in summands {
        out.push_str(&format!("  {}  x{}  ({})\n", s.pattern.dim_vector(n), s.multiplicity, s.pattern));
    }
    out
}
