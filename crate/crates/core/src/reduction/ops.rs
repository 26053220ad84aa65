//! Elementary operations on coefficient matrices of basis morphisms.
//!
//! Adding a multiple of one row (column) to another composes with a basis
//! morphism between the two interval summands; wherever the composite basis
//! morphism vanishes the contribution is dropped.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::intervals::{HomStructure, Interval};
use crate::linalg::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OpKind {
    RowAdd,
    RowScale,
    RowSwap,
    ColAdd,
    ColScale,
    ColSwap,
}

impl OpKind {
    pub fn name(self) -> &'static str {
        match self {
            OpKind::RowAdd => "row_add",
            OpKind::RowScale => "row_scale",
            OpKind::RowSwap => "row_swap",
            OpKind::ColAdd => "col_add",
            OpKind::ColScale => "col_scale",
            OpKind::ColSwap => "col_swap",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "row_add" => OpKind::RowAdd,
            "row_scale" => OpKind::RowScale,
            "row_swap" => OpKind::RowSwap,
            "col_add" => OpKind::ColAdd,
            "col_scale" => OpKind::ColScale,
            "col_swap" => OpKind::ColSwap,
            _ => return Err(Error::Parse(format!("unknown operation {s:?}"))),
        })
    }

    pub fn is_row(self) -> bool {
        matches!(self, OpKind::RowAdd | OpKind::RowScale | OpKind::RowSwap)
    }
}

/// `row_add`: row `tgt += scalar * row src`; `col_add`: column `tgt += scalar * column src`.
/// For scalings `src == tgt`; for swaps the scalar is 1.
#[derive(Clone, Debug, PartialEq)]
pub struct ElementaryOp<F: Field> {
    pub kind: OpKind,
    pub src: usize,
    pub tgt: usize,
    pub scalar: F::Elem,
}

impl<F: Field> ElementaryOp<F> {
    pub fn to_json(&self, f: &F) -> Value {
        json!({
            "op": self.kind.name(),
            "src": self.src,
            "tgt": self.tgt,
            "scalar": f.elem_to_json(&self.scalar),
        })
    }

    pub fn from_json(f: &F, v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("operation lacks {what}"));
        let kind = OpKind::parse(v.get("op").and_then(Value::as_str).ok_or_else(|| bad("op"))?)?;
        let idx = |k: &str| v.get(k).and_then(Value::as_u64).map(|x| x as usize).ok_or_else(|| bad(k));
        let scalar = f.elem_from_json(v.get("scalar").ok_or_else(|| bad("scalar"))?)?;
        Ok(ElementaryOp { kind, src: idx("src")?, tgt: idx("tgt")?, scalar })
    }
}

/// Whether an operation between K-indices with these labels respects `⊵`.
pub fn permissible(hom: &HomStructure, kind: OpKind, src: Interval, tgt: Interval) -> bool {
    match kind {
        OpKind::RowAdd => src == tgt || hom.hom(src, tgt),
        OpKind::ColAdd => src == tgt || hom.hom(tgt, src),
        _ => src == tgt,
    }
}

/// Apply `op` to a coefficient matrix whose rows and columns carry interval
/// labels. The same rule serves `Φ`, the column transform (labels of `V` on
/// both sides) and the inverse row transform (labels of `W` on both sides).
pub fn apply<F: Field>(
    hom: &HomStructure,
    m: &mut Matrix<F>,
    row_labels: &[Interval],
    col_labels: &[Interval],
    op: &ElementaryOp<F>,
) -> Result<()> {
    let f = m.field().clone();
    let kind = op.kind;
    let (len, labels) = if kind.is_row() { (m.rows(), row_labels) } else { (m.cols(), col_labels) };
    if op.src >= len || op.tgt >= len {
        return Err(Error::Impermissible(format!("{} index out of range", kind.name())));
    }
    let (a, b) = (labels[op.src], labels[op.tgt]);
    if !permissible(hom, kind, a, b) {
        return Err(Error::Impermissible(format!("{} from {a} to {b}", kind.name())));
    }
    match kind {
        OpKind::RowScale | OpKind::ColScale if f.is_zero(&op.scalar) => {
            return Err(Error::Impermissible("scaling by zero".into()));
        }
        _ => {}
    }
    match kind {
        OpKind::RowAdd => {
            if op.src == op.tgt {
                return Err(Error::Impermissible("row_add onto itself".into()));
            }
            for (c, &cl) in col_labels.iter().enumerate() {
                if hom.hom(cl, a) && hom.hom(cl, b) {
                    let x = m.get(op.src, c);
                    if !f.is_zero(x) {
                        let y = f.add(m.get(op.tgt, c), &f.mul(&op.scalar, x));
                        m.set(op.tgt, c, y);
                    }
                }
            }
        }
        OpKind::ColAdd => {
            if op.src == op.tgt {
                return Err(Error::Impermissible("col_add onto itself".into()));
            }
            for (r, &rl) in row_labels.iter().enumerate() {
                if hom.hom(b, rl) && hom.hom(a, rl) {
                    let x = m.get(r, op.src);
                    if !f.is_zero(x) {
                        let y = f.add(m.get(r, op.tgt), &f.mul(&op.scalar, x));
                        m.set(r, op.tgt, y);
                    }
                }
            }
        }
        OpKind::RowScale => m.scale_row(op.tgt, &op.scalar),
        OpKind::ColScale => m.scale_col(op.tgt, &op.scalar),
        OpKind::RowSwap => m.swap_rows(op.src, op.tgt),
        OpKind::ColSwap => m.swap_cols(op.src, op.tgt),
    }
    Ok(())
}
