//! Persistence modules on the commutative ladder `CL_n(τ)` and their block
//! matrix problems.

use std::fmt;

use crate::diagram::DimVector;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::intervals::{HomStructure, Interval, Orientation};
use crate::linalg::Matrix;
use crate::quiver::{Arrow, QuiverRep};
use crate::zigzag::{decompose_with, IntervalDecomposition, ZigzagRep};

/// Ladders are representation-finite only up to this length.
pub const MAX_LADDER: usize = 4;

/// A representation of `CL_n(τ)`: two zigzag rows joined by vertical maps
/// from the bottom row to the top row.
#[derive(Clone, Debug, PartialEq)]
pub struct CLRep<F: Field> {
    bottom: ZigzagRep<F>,
    top: ZigzagRep<F>,
    /// `vertical[v]` is `top.dim(v+1) x bottom.dim(v+1)`.
    vertical: Vec<Matrix<F>>,
}

impl<F: Field> CLRep<F> {
    /// Checks shapes and `n <= 4`; commutativity is reported by [`CLRep::validate_cl`].
    pub fn new(bottom: ZigzagRep<F>, top: ZigzagRep<F>, vertical: Vec<Matrix<F>>) -> Result<Self> {
        let n = bottom.n();
        if n > MAX_LADDER {
            return Err(Error::RepresentationInfinite { n });
        }
        if top.orientation() != bottom.orientation() {
            return Err(Error::OrientationMismatch(format!(
                "top row is {} but bottom row is {}",
                top.orientation(),
                bottom.orientation()
            )));
        }
        if vertical.len() != n {
            return Err(Error::DimensionMismatch(format!("expected {n} vertical maps, got {}", vertical.len())));
        }
        for (v, m) in vertical.iter().enumerate() {
            let want = (top.dims()[v], bottom.dims()[v]);
            if m.shape() != want {
                return Err(Error::DimensionMismatch(format!(
                    "vertical map at vertex {} is {}x{}, expected {}x{}",
                    v + 1,
                    m.rows(),
                    m.cols(),
                    want.0,
                    want.1
                )));
            }
        }
        Ok(CLRep { bottom, top, vertical })
    }

    /// Like [`CLRep::new`] but also rejects non-commuting squares.
    pub fn new_validated(bottom: ZigzagRep<F>, top: ZigzagRep<F>, vertical: Vec<Matrix<F>>) -> Result<Self> {
        let m = Self::new(bottom, top, vertical)?;
        let bad = m.validate_cl();
        if !bad.is_empty() {
            return Err(Error::InvalidModule(bad.join("; ")));
        }
        Ok(m)
    }

    pub fn zero(field: &F, tau: &Orientation) -> Result<Self> {
        let z = ZigzagRep::zero(field, tau);
        let vertical = vec![Matrix::zeros(field, 0, 0); tau.n()];
        Self::new(z.clone(), z, vertical)
    }

    pub fn field(&self) -> &F {
        self.bottom.field()
    }
    pub fn orientation(&self) -> &Orientation {
        self.bottom.orientation()
    }
    pub fn n(&self) -> usize {
        self.bottom.n()
    }
    pub fn bottom(&self) -> &ZigzagRep<F> {
        &self.bottom
    }
    pub fn top(&self) -> &ZigzagRep<F> {
        &self.top
    }
    pub fn vertical(&self) -> &[Matrix<F>] {
        &self.vertical
    }

    pub fn dim_vector(&self) -> DimVector {
        DimVector { top: self.top.dims().to_vec(), bottom: self.bottom.dims().to_vec() }
    }

    pub fn total_dim(&self) -> usize {
        self.top.total_dim() + self.bottom.total_dim()
    }

    /// Non-commuting squares; empty iff the module is valid.
    pub fn validate_cl(&self) -> Vec<String> {
        let tau = self.orientation();
        let mut out = Vec::new();
        for i in 1..self.n() {
            let (s, t) = tau.arrow_ends(i);
            let lhs = self.top.map(i).mul(&self.vertical[s - 1]);
            let rhs = self.vertical[t - 1].mul(self.bottom.map(i));
            if lhs != rhs {
                out.push(format!("square between vertices {s} and {t} does not commute"));
            }
        }
        out
    }

    /// The bound quiver with bottom vertices `0..n` and top vertices `n..2n`.
    pub fn to_quiver(&self) -> QuiverRep<F> {
        let n = self.n();
        let mut dims = self.bottom.dims().to_vec();
        dims.extend_from_slice(self.top.dims());
        let mut arrows = Vec::new();
        for a in self.bottom.to_quiver().arrows {
            arrows.push(a);
        }
        for a in self.top.to_quiver().arrows {
            arrows.push(Arrow { src: a.src + n, tgt: a.tgt + n, map: a.map });
        }
        for (v, m) in self.vertical.iter().enumerate() {
            arrows.push(Arrow { src: v, tgt: v + n, map: m.clone() });
        }
        QuiverRep { field: self.field().clone(), dims, arrows }
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        let bottom = self.bottom.direct_sum(&other.bottom)?;
        let top = self.top.direct_sum(&other.top)?;
        let vertical = self
            .vertical
            .iter()
            .zip(&other.vertical)
            .map(|(a, b)| Matrix::block_diag(self.field(), &[a.clone(), b.clone()]))
            .collect();
        Self::new(bottom, top, vertical)
    }

    /// Basis change by `g_bottom` and `g_top` at every vertex.
    pub fn conjugate(&self, g_bottom: &[Matrix<F>], g_top: &[Matrix<F>]) -> Result<Self> {
        let gb_inv = crate::zigzag::invert_all(g_bottom)?;
        let bottom = self.bottom.conjugate_with_inverses(g_bottom, &gb_inv)?;
        let top = self.top.conjugate(g_top)?;
        let vertical = self
            .vertical
            .iter()
            .enumerate()
            .map(|(v, m)| g_top[v].mul(m).mul(&gb_inv[v]))
            .collect();
        Self::new(bottom, top, vertical)
    }

    /// DOT rendering of the ladder with dimensions and matrices on the arrows.
    pub fn to_dot(&self) -> String {
        let tau = self.orientation();
        let n = self.n();
        let mut out = format!("digraph \"CL{n}({tau})\" {{\n  node [shape=box];\n");
        for v in 1..=n {
            out.push_str(&format!("  b{v} [label=\"{}\"];\n  t{v} [label=\"{}\"];\n", self.bottom.dim(v), self.top.dim(v)));
            out.push_str(&format!("  {{ rank=same; b{v}; t{v}; }}\n"));
        }
        let mat = |m: &Matrix<F>| m.to_string().trim_end().replace('\n', "\\n");
        for i in 1..n {
            let (s, t) = tau.arrow_ends(i);
            out.push_str(&format!("  b{s} -> b{t} [label=\"{}\"];\n", mat(self.bottom.map(i))));
            out.push_str(&format!("  t{s} -> t{t} [label=\"{}\"];\n", mat(self.top.map(i))));
        }
        for v in 1..=n {
            out.push_str(&format!("  b{v} -> t{v} [label=\"{}\"];\n", mat(&self.vertical[v - 1])));
        }
        out.push_str("}\n");
        out
    }
}

/// An object of the arrow category: a morphism `phi: V -> W` of zigzag modules.
#[derive(Clone, Debug, PartialEq)]
pub struct ArrowRep<F: Field> {
    pub v: ZigzagRep<F>,
    pub w: ZigzagRep<F>,
    pub phi: Vec<Matrix<F>>,
}

impl<F: Field> ArrowRep<F> {
    pub fn is_morphism(&self) -> bool {
        self.v.to_quiver().is_morphism(&self.w.to_quiver(), &self.phi)
    }
}

pub fn to_arrow<F: Field>(m: &CLRep<F>) -> ArrowRep<F> {
    ArrowRep { v: m.bottom.clone(), w: m.top.clone(), phi: m.vertical.clone() }
}

pub fn from_arrow<F: Field>(a: ArrowRep<F>) -> Result<CLRep<F>> {
    CLRep::new_validated(a.v, a.w, a.phi)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlockStatus {
    /// `*`
    Unprocessed,
    /// `∅`: no basis morphism from the column interval to the row interval
    StronglyZero,
    /// `E`
    Identity,
    /// `0`
    Zero,
}

impl BlockStatus {
    pub fn symbol(self) -> &'static str {
        match self {
            BlockStatus::Unprocessed => "*",
            BlockStatus::StronglyZero => "∅",
            BlockStatus::Identity => "E",
            BlockStatus::Zero => "0",
        }
    }
}

impl fmt::Display for BlockStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// A contiguous run of K-rows or K-columns carrying one interval label.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Strip {
    pub label: Interval,
    pub start: usize,
    pub width: usize,
}

impl Strip {
    pub fn range(&self) -> std::ops::Range<usize> {
        self.start..self.start + self.width
    }
}

/// The block matrix problem of a module: coefficients of `Φ` with respect to
/// the basis morphisms between interval summands of the two rows, partitioned
/// into strips with a status per block.
///
/// Columns run left to right in increasing `≺`, rows top to bottom in
/// decreasing `≺`.
#[derive(Clone, Debug)]
pub struct BlockProblem<F: Field> {
    pub(crate) field: F,
    pub(crate) hom: HomStructure,
    pub(crate) cols: Vec<Strip>,
    pub(crate) rows: Vec<Strip>,
    pub(crate) col_labels: Vec<Interval>,
    pub(crate) row_labels: Vec<Interval>,
    pub(crate) coeff: Matrix<F>,
    /// `[row strip][column strip]`
    pub(crate) status: Vec<Vec<BlockStatus>>,
}

/// Block position by strip indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockId {
    pub row: usize,
    pub col: usize,
}

impl<F: Field> BlockProblem<F> {
    /// Fresh problem with one strip per interval (width = multiplicity, possibly 0).
    pub fn from_coefficients(
        field: &F,
        hom: &HomStructure,
        col_mult: &[(Interval, usize)],
        row_mult: &[(Interval, usize)],
        coeff: Matrix<F>,
    ) -> Result<Self> {
        let mult = |list: &[(Interval, usize)], iv: Interval| list.iter().find(|(i, _)| *i == iv).map_or(0, |(_, m)| *m);
        let mut cols = Vec::new();
        let mut col_labels = Vec::new();
        for &iv in hom.order() {
            let w = mult(col_mult, iv);
            cols.push(Strip { label: iv, start: col_labels.len(), width: w });
            col_labels.extend(std::iter::repeat_n(iv, w));
        }
        let mut rows = Vec::new();
        let mut row_labels = Vec::new();
        for &iv in hom.order().iter().rev() {
            let w = mult(row_mult, iv);
            rows.push(Strip { label: iv, start: row_labels.len(), width: w });
            row_labels.extend(std::iter::repeat_n(iv, w));
        }
        if coeff.shape() != (row_labels.len(), col_labels.len()) {
            return Err(Error::DimensionMismatch(format!(
                "coefficient matrix is {}x{}, expected {}x{}",
                coeff.rows(),
                coeff.cols(),
                row_labels.len(),
                col_labels.len()
            )));
        }
        let status = rows
            .iter()
            .map(|r| {
                cols.iter()
                    .map(|c| {
                        if hom.hom(c.label, r.label) {
                            BlockStatus::Unprocessed
                        } else {
                            BlockStatus::StronglyZero
                        }
                    })
                    .collect()
            })
            .collect();
        let p = BlockProblem { field: field.clone(), hom: hom.clone(), cols, rows, col_labels, row_labels, coeff, status };
        p.check_strongly_zero()?;
        Ok(p)
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn hom(&self) -> &HomStructure {
        &self.hom
    }
    pub fn col_strips(&self) -> &[Strip] {
        &self.cols
    }
    pub fn row_strips(&self) -> &[Strip] {
        &self.rows
    }
    pub fn col_labels(&self) -> &[Interval] {
        &self.col_labels
    }
    pub fn row_labels(&self) -> &[Interval] {
        &self.row_labels
    }
    pub fn coeff(&self) -> &Matrix<F> {
        &self.coeff
    }
    pub fn status(&self, b: BlockId) -> BlockStatus {
        self.status[b.row][b.col]
    }
    pub fn status_grid(&self) -> &[Vec<BlockStatus>] {
        &self.status
    }

    pub fn area(&self, b: BlockId) -> usize {
        self.rows[b.row].width * self.cols[b.col].width
    }

    pub fn block(&self, b: BlockId) -> Matrix<F> {
        let (r, c) = (self.rows[b.row], self.cols[b.col]);
        self.coeff.submatrix(r.start, c.start, r.width, c.width)
    }

    /// 1-based ordinal of a strip among the strips sharing its label.
    pub fn col_part(&self, j: usize) -> usize {
        let l = self.cols[j].label;
        self.cols[..j].iter().filter(|s| s.label == l).count() + 1
    }

    pub fn row_part(&self, i: usize) -> usize {
        let l = self.rows[i].label;
        self.rows[..i].iter().filter(|s| s.label == l).count() + 1
    }

    fn strip_name(label: Interval, part: usize, siblings: usize) -> String {
        if siblings > 1 {
            format!("<{},{}>{}", label.birth, label.death, part)
        } else {
            format!("<{},{}>", label.birth, label.death)
        }
    }

    pub fn row_name(&self, i: usize) -> String {
        let l = self.rows[i].label;
        Self::strip_name(l, self.row_part(i), self.rows.iter().filter(|s| s.label == l).count())
    }

    pub fn col_name(&self, j: usize) -> String {
        let l = self.cols[j].label;
        Self::strip_name(l, self.col_part(j), self.cols.iter().filter(|s| s.label == l).count())
    }

    pub fn block_name(&self, b: BlockId) -> String {
        format!("({}, {})", self.row_name(b.row), self.col_name(b.col))
    }

    /// Strips whose identity-block component still meets an unprocessed
    /// block of positive area; the others belong to finished summands.
    pub fn live_strips(&self) -> (Vec<bool>, Vec<bool>) {
        let (nr, nc) = (self.rows.len(), self.cols.len());
        let mut live = vec![false; nr + nc];
        for i in 0..nr {
            for j in 0..nc {
                let b = BlockId { row: i, col: j };
                if self.status[i][j] == BlockStatus::Unprocessed && self.area(b) > 0 {
                    live[i] = true;
                    live[nr + j] = true;
                }
            }
        }
        let mut stack: Vec<usize> = (0..nr + nc).filter(|&x| live[x]).collect();
        while let Some(x) = stack.pop() {
            let next: Vec<usize> = if x < nr {
                (0..nc).filter(|&j| self.status[x][j] == BlockStatus::Identity).map(|j| nr + j).collect()
            } else {
                (0..nr).filter(|&i| self.status[i][x - nr] == BlockStatus::Identity).collect()
            };
            for y in next {
                if !live[y] {
                    live[y] = true;
                    stack.push(y);
                }
            }
        }
        let cols = live.split_off(nr);
        (live, cols)
    }

    fn live_name(strips: &[Strip], live: &[bool], k: usize) -> String {
        let l = strips[k].label;
        let same = |x: &usize| strips[*x].label == l && live[*x];
        let part = (0..k).filter(same).count() + 1;
        Self::strip_name(l, part, (0..strips.len()).filter(same).count())
    }

    /// Like [`block_name`](Self::block_name), but partitions are numbered
    /// among live strips only, so finished summands drop out of the names.
    pub fn live_block_name(&self, b: BlockId) -> String {
        let (lr, lc) = self.live_strips();
        format!("({}, {})", Self::live_name(&self.rows, &lr, b.row), Self::live_name(&self.cols, &lc, b.col))
    }

    pub fn block_labels(&self, b: BlockId) -> (Interval, Interval) {
        (self.rows[b.row].label, self.cols[b.col].label)
    }

    /// Strip containing K-row `k`.
    pub fn row_strip_of(&self, k: usize) -> usize {
        self.rows.iter().position(|s| s.range().contains(&k)).expect("K-row in range")
    }

    pub fn col_strip_of(&self, k: usize) -> usize {
        self.cols.iter().position(|s| s.range().contains(&k)).expect("K-column in range")
    }

    /// Every strongly-zero region holds only zeros.
    pub fn check_strongly_zero(&self) -> Result<()> {
        for (i, r) in self.rows.iter().enumerate() {
            for (j, c) in self.cols.iter().enumerate() {
                if self.status[i][j] == BlockStatus::StronglyZero && !self.block(BlockId { row: i, col: j }).is_zero() {
                    return Err(Error::Internal(format!(
                        "nonzero entry in strongly zero block ({}, {})",
                        r.label, c.label
                    )));
                }
            }
        }
        Ok(())
    }

    /// Status grid with labels, one line per row strip.
    pub fn grid_text(&self) -> String {
        let names_r: Vec<String> = (0..self.rows.len()).map(|i| self.row_name(i)).collect();
        let names_c: Vec<String> = (0..self.cols.len()).map(|j| self.col_name(j)).collect();
        let lw = names_r.iter().map(|s| s.chars().count()).max().unwrap_or(0);
        let cw = names_c.iter().map(|s| s.chars().count()).max().unwrap_or(1).max(1);
        let mut out = format!("{:lw$} ", "");
        for c in &names_c {
            out.push_str(&format!(" {c:>cw$}"));
        }
        out.push('\n');
        for (i, r) in names_r.iter().enumerate() {
            out.push_str(&format!("{r:>lw$} "));
            for j in 0..self.cols.len() {
                let s = self.status[i][j].symbol();
                out.push_str(&format!(" {s:>cw$}"));
            }
            out.push_str(&format!("   (width {})\n", self.rows[i].width));
        }
        out
    }

    /// Evaluate a K-matrix of basis-morphism coefficients at vertex `v`: keep
    /// indices whose interval contains `v`; drop entries with no basis morphism.
    pub fn eval_at(
        &self,
        m: &Matrix<F>,
        row_labels: &[Interval],
        col_labels: &[Interval],
        v: usize,
    ) -> Matrix<F> {
        let ri: Vec<usize> = (0..row_labels.len()).filter(|&i| row_labels[i].contains(v)).collect();
        let ci: Vec<usize> = (0..col_labels.len()).filter(|&j| col_labels[j].contains(v)).collect();
        Matrix::from_fn(&self.field, ri.len(), ci.len(), |a, b| {
            if self.hom.hom(col_labels[ci[b]], row_labels[ri[a]]) {
                m.get(ri[a], ci[b]).clone()
            } else {
                self.field.zero()
            }
        })
    }
}

/// Bookkeeping needed to map a block problem back to the module.
#[derive(Clone, Debug)]
pub struct BlockContext<F: Field> {
    pub bottom: IntervalDecomposition<F>,
    pub top: IntervalDecomposition<F>,
}

/// Position of K-index `(interval, copy)` within the canonical basis at vertex `v`.
fn canonical_position(labels: &[Vec<(Interval, usize)>], v: usize, key: (Interval, usize)) -> usize {
    labels[v - 1].iter().position(|&l| l == key).expect("label present at vertex")
}

fn k_indices(mult: &[(Interval, usize)], order: &[Interval]) -> Vec<(Interval, usize)> {
    order
        .iter()
        .flat_map(|iv| {
            let m = mult.iter().find(|(i, _)| i == iv).map_or(0, |(_, m)| *m);
            (0..m).map(move |c| (*iv, c))
        })
        .collect()
}

pub fn build_block_problem<F: Field>(m: &CLRep<F>) -> Result<(BlockProblem<F>, BlockContext<F>)> {
    let hs = HomStructure::new(m.orientation());
    build_block_problem_with(m, &hs)
}

pub fn build_block_problem_with<F: Field>(m: &CLRep<F>, hs: &HomStructure) -> Result<(BlockProblem<F>, BlockContext<F>)> {
    let bad = m.validate_cl();
    if !bad.is_empty() {
        return Err(Error::InvalidModule(bad.join("; ")));
    }
    let f = m.field();
    let n = m.n();
    let bottom = decompose_with(&m.bottom, hs)?;
    let top = decompose_with(&m.top, hs)?;
    let phi: Vec<Matrix<F>> = (0..n).map(|v| top.eta[v].mul(&m.vertical[v]).mul(&bottom.eta_inv[v])).collect();

    let rev: Vec<Interval> = hs.order().iter().rev().copied().collect();
    let cols = k_indices(&bottom.multiplicities, hs.order());
    let rows = k_indices(&top.multiplicities, &rev);
    let mut coeff = Matrix::zeros(f, rows.len(), cols.len());
    for (a, &rk) in rows.iter().enumerate() {
        for (b, &ck) in cols.iter().enumerate() {
            let Some(ov) = rk.0.overlap(&ck.0) else { continue };
            let entries: Vec<&F::Elem> = (ov.birth..=ov.death)
                .map(|v| {
                    phi[v - 1].get(canonical_position(&top.labels, v, rk), canonical_position(&bottom.labels, v, ck))
                })
                .collect();
            if hs.hom(ck.0, rk.0) {
                if entries.iter().any(|e| *e != entries[0]) {
                    return Err(Error::Internal(format!(
                        "coefficient of the basis morphism {} -> {} differs across vertices",
                        ck.0, rk.0
                    )));
                }
                coeff.set(a, b, entries[0].clone());
            } else if entries.iter().any(|e| !f.is_zero(e)) {
                return Err(Error::Internal(format!(
                    "nonzero entry where no morphism {} -> {} exists",
                    ck.0, rk.0
                )));
            }
        }
    }
    let p = BlockProblem::from_coefficients(f, hs, &bottom.multiplicities, &top.multiplicities, coeff)?;
    Ok((p, BlockContext { bottom, top }))
}

/// Vertical maps, in the original bases, of the module whose block problem
/// has the given coefficient matrix.
pub fn reconstruct_vertical<F: Field>(p: &BlockProblem<F>, ctx: &BlockContext<F>, coeff: &Matrix<F>) -> Vec<Matrix<F>> {
    let f = &p.field;
    let n = p.hom.n();
    let hs = &p.hom;
    let rev: Vec<Interval> = hs.order().iter().rev().copied().collect();
    let cols = k_indices(&ctx.bottom.multiplicities, hs.order());
    let rows = k_indices(&ctx.top.multiplicities, &rev);
    (1..=n)
        .map(|v| {
            let mut phi = Matrix::zeros(f, ctx.top.labels[v - 1].len(), ctx.bottom.labels[v - 1].len());
            for (a, &rk) in rows.iter().enumerate() {
                if !rk.0.contains(v) {
                    continue;
                }
                for (b, &ck) in cols.iter().enumerate() {
                    if ck.0.contains(v) && hs.hom(ck.0, rk.0) {
                        let i = canonical_position(&ctx.top.labels, v, rk);
                        let j = canonical_position(&ctx.bottom.labels, v, ck);
                        phi.set(i, j, coeff.get(a, b).clone());
                    }
                }
            }
            ctx.top.eta_inv[v - 1].mul(&phi).mul(&ctx.bottom.eta[v - 1])
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::intervals::Interval as I;

    fn dim2_b(f: &PrimeField) -> CLRep<PrimeField> {
        let tau = Orientation::parse("fb").unwrap();
        let top = ZigzagRep::interval(f, &tau, I::new(1, 3));
        let bottom = ZigzagRep::new(
            f,
            &tau,
            vec![1, 2, 1],
            vec![Matrix::from_i64(f, &[&[1], &[0]]), Matrix::from_i64(f, &[&[0], &[1]])],
        )
        .unwrap();
        let vertical = vec![
            Matrix::from_i64(f, &[&[1]]),
            Matrix::from_i64(f, &[&[1, 1]]),
            Matrix::from_i64(f, &[&[1]]),
        ];
        CLRep::new_validated(bottom, top, vertical).unwrap()
    }

    #[test]
    fn rejects_long_ladders_and_bad_squares() {
        let f = PrimeField::default();
        let tau = Orientation::parse("ffff").unwrap();
        let z = ZigzagRep::zero(&f, &tau);
        assert!(matches!(
            CLRep::new(z.clone(), z, vec![Matrix::zeros(&f, 0, 0); 5]),
            Err(Error::RepresentationInfinite { n: 5 })
        ));
        let tau = Orientation::parse("f").unwrap();
        let full = ZigzagRep::interval(&f, &tau, I::new(1, 2));
        let bad = CLRep::new(full.clone(), full, vec![Matrix::from_i64(&f, &[&[1]]), Matrix::from_i64(&f, &[&[0]])]).unwrap();
        assert_eq!(bad.validate_cl().len(), 1);
    }

    #[test]
    fn arrow_view_round_trip() {
        let f = PrimeField::default();
        let m = dim2_b(&f);
        let a = to_arrow(&m);
        assert!(a.is_morphism());
        assert_eq!(from_arrow(a).unwrap(), m);
    }

    #[test]
    fn block_problem_of_dim2_module() {
        let f = PrimeField::default();
        let m = dim2_b(&f);
        let (p, ctx) = build_block_problem(&m).unwrap();
        assert_eq!(p.coeff().shape(), (1, 2));
        let v = reconstruct_vertical(&p, &ctx, p.coeff());
        assert_eq!(v, m.vertical());
        assert!(m.to_dot().contains("b1 -> t1"));
    }

    #[test]
    fn zero_module_has_empty_strips() {
        let f = PrimeField::default();
        let m = CLRep::zero(&f, &Orientation::parse("fb").unwrap()).unwrap();
        let (p, _) = build_block_problem(&m).unwrap();
        assert_eq!(p.col_strips().len(), 6);
        assert!(p.col_strips().iter().all(|s| s.width == 0));
        assert_eq!(p.coeff().shape(), (0, 0));
    }
}
