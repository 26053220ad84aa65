//! Replayable record of a reduction run and its verification.

use serde::Serialize;
use serde_json::{json, Value};

use super::ops::{self, ElementaryOp};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::intervals::{HomStructure, Interval, Orientation};
use crate::ladder::BlockProblem;
use crate::linalg::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    Row,
    Col,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Event<F: Field> {
    Op(ElementaryOp<F>),
    /// A strip boundary introduced before K-index `at`.
    Split { axis: Axis, at: usize },
}

/// Initial coefficients, labels of every K-row and K-column, and the events
/// of one run. `Φ_final = S⁻¹ Φ₀ R` where `R` accumulates the column
/// operations and `S⁻¹` the row operations.
#[derive(Clone, Debug, PartialEq)]
pub struct Transcript<F: Field> {
    pub field: F,
    pub orientation: Orientation,
    pub row_labels: Vec<Interval>,
    pub col_labels: Vec<Interval>,
    pub initial: Matrix<F>,
    pub events: Vec<Event<F>>,
    pub final_coeff: Option<Matrix<F>>,
}

/// Outcome of [`Transcript::verify`]; `ok()` iff every check passed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub ops: usize,
    pub splits: usize,
    pub permissible: bool,
    pub support_respects_hom: bool,
    pub invertible: bool,
    pub replay_matches_final: bool,
    pub vertexwise_identity: bool,
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.permissible && self.support_respects_hom && self.invertible && self.replay_matches_final && self.vertexwise_identity
    }
}

/// Matrices replayed from a transcript.
#[derive(Clone, Debug)]
pub struct Replay<F: Field> {
    pub coeff: Matrix<F>,
    /// column transform, indexed by `V` summands on both sides
    pub r: Matrix<F>,
    /// inverse row transform, indexed by `W` summands on both sides
    pub s_inv: Matrix<F>,
}

fn matrix_json<F: Field>(m: &Matrix<F>) -> Value {
    let f = m.field();
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(|x| f.elem_to_json(x)).collect())).collect())
}

fn matrix_from_json<F: Field>(f: &F, v: &Value, rows: usize, cols: usize) -> Result<Matrix<F>> {
    let bad = || Error::Parse("malformed matrix in transcript".into());
    let arr = v.as_array().ok_or_else(bad)?;
    if arr.len() != rows {
        return Err(bad());
    }
    let mut data = Vec::with_capacity(rows);
    for r in arr {
        let r = r.as_array().ok_or_else(bad)?;
        data.push(r.iter().map(|x| f.elem_from_json(x)).collect::<Result<Vec<_>>>()?);
    }
    Matrix::from_rows(f, cols, data)
}

impl<F: Field> Transcript<F> {
    pub(crate) fn start(p: &BlockProblem<F>) -> Self {
        Transcript {
            field: p.field().clone(),
            orientation: p.hom().orientation().clone(),
            row_labels: p.row_labels().to_vec(),
            col_labels: p.col_labels().to_vec(),
            initial: p.coeff().clone(),
            events: Vec::new(),
            final_coeff: None,
        }
    }

    pub(crate) fn finish(&mut self, p: &BlockProblem<F>) {
        self.final_coeff = Some(p.coeff().clone());
    }

    pub fn op_count(&self) -> usize {
        self.events.iter().filter(|e| matches!(e, Event::Op(_))).count()
    }

    pub fn replay(&self) -> Result<Replay<F>> {
        let hs = HomStructure::new(&self.orientation);
        self.replay_with(&hs)
    }

    fn replay_with(&self, hs: &HomStructure) -> Result<Replay<F>> {
        let f = &self.field;
        let mut coeff = self.initial.clone();
        let mut r = Matrix::identity(f, self.col_labels.len());
        let mut s_inv = Matrix::identity(f, self.row_labels.len());
        for e in &self.events {
            if let Event::Op(op) = e {
                ops::apply(hs, &mut coeff, &self.row_labels, &self.col_labels, op)?;
                if op.kind.is_row() {
                    ops::apply(hs, &mut s_inv, &self.row_labels, &self.row_labels, op)?;
                } else {
                    ops::apply(hs, &mut r, &self.col_labels, &self.col_labels, op)?;
                }
            }
        }
        Ok(Replay { coeff, r, s_inv })
    }

    /// Replays every operation and checks `S⁻¹Φ₀R = Φ_final` by composing the
    /// underlying morphisms vertex by vertex.
    pub fn verify(&self) -> VerifyReport {
        let hs = HomStructure::new(&self.orientation);
        let mut rep = VerifyReport {
            ops: self.op_count(),
            splits: self.events.len() - self.op_count(),
            ..VerifyReport::default()
        };
        let replay = match self.replay_with(&hs) {
            Ok(x) => x,
            Err(e) => {
                rep.failures.push(format!("replay failed: {e}"));
                return rep;
            }
        };
        rep.permissible = true;
        let Some(fin) = &self.final_coeff else {
            rep.failures.push("transcript has no final matrix".into());
            return rep;
        };
        rep.replay_matches_final = replay.coeff == *fin;
        if !rep.replay_matches_final {
            rep.failures.push("replayed matrix differs from the recorded final matrix".into());
        }
        let support = |m: &Matrix<F>, labels: &[Interval]| {
            (0..m.rows()).all(|i| (0..m.cols()).all(|j| self.field.is_zero(m.get(i, j)) || hs.hom(labels[j], labels[i])))
        };
        rep.support_respects_hom = support(&replay.r, &self.col_labels)
            && support(&replay.s_inv, &self.row_labels)
            && (0..fin.rows()).all(|i| {
                (0..fin.cols()).all(|j| self.field.is_zero(fin.get(i, j)) || hs.hom(self.col_labels[j], self.row_labels[i]))
            });
        if !rep.support_respects_hom {
            rep.failures.push("a transform has an entry without a basis morphism".into());
        }
        let eval = |m: &Matrix<F>, rl: &[Interval], cl: &[Interval], v: usize| -> Matrix<F> {
            let ri: Vec<usize> = (0..rl.len()).filter(|&i| rl[i].contains(v)).collect();
            let ci: Vec<usize> = (0..cl.len()).filter(|&j| cl[j].contains(v)).collect();
            Matrix::from_fn(&self.field, ri.len(), ci.len(), |a, b| {
                if hs.hom(cl[ci[b]], rl[ri[a]]) {
                    m.get(ri[a], ci[b]).clone()
                } else {
                    self.field.zero()
                }
            })
        };
        rep.invertible = true;
        rep.vertexwise_identity = true;
        for v in 1..=hs.n() {
            let rv = eval(&replay.r, &self.col_labels, &self.col_labels, v);
            let sv = eval(&replay.s_inv, &self.row_labels, &self.row_labels, v);
            if !rv.is_invertible() || !sv.is_invertible() {
                rep.invertible = false;
                rep.failures.push(format!("transform not invertible at vertex {v}"));
            }
            let lhs = sv.mul(&eval(&self.initial, &self.row_labels, &self.col_labels, v)).mul(&rv);
            if lhs != eval(fin, &self.row_labels, &self.col_labels, v) {
                rep.vertexwise_identity = false;
                rep.failures.push(format!("S⁻¹Φ₀R differs from the final matrix at vertex {v}"));
            }
        }
        rep
    }

    pub fn to_json(&self) -> Value {
        let f = &self.field;
        let events: Vec<Value> = self
            .events
            .iter()
            .map(|e| match e {
                Event::Op(op) => op.to_json(f),
                Event::Split { axis, at } => json!({ "split": axis, "at": at }),
            })
            .collect();
        json!({
            "tau": self.orientation.to_string(),
            "field": f.spec().to_string(),
            "row_labels": self.row_labels,
            "col_labels": self.col_labels,
            "initial": matrix_json(&self.initial),
            "final": self.final_coeff.as_ref().map(matrix_json),
            "events": events,
        })
    }

    pub fn from_json(f: &F, v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("transcript lacks {what}"));
        let orientation = Orientation::parse(v.get("tau").and_then(Value::as_str).ok_or_else(|| bad("tau"))?)?;
        let row_labels: Vec<Interval> = serde_json::from_value(v.get("row_labels").cloned().ok_or_else(|| bad("row_labels"))?)?;
        let col_labels: Vec<Interval> = serde_json::from_value(v.get("col_labels").cloned().ok_or_else(|| bad("col_labels"))?)?;
        let (nr, nc) = (row_labels.len(), col_labels.len());
        let initial = matrix_from_json(f, v.get("initial").ok_or_else(|| bad("initial"))?, nr, nc)?;
        let final_coeff = match v.get("final") {
            None | Some(Value::Null) => None,
            Some(m) => Some(matrix_from_json(f, m, nr, nc)?),
        };
        let mut events = Vec::new();
        for e in v.get("events").and_then(Value::as_array).ok_or_else(|| bad("events"))? {
            if let Some(axis) = e.get("split") {
                let axis = match axis.as_str() {
                    Some("row") => Axis::Row,
                    Some("col") => Axis::Col,
                    _ => return Err(bad("split axis")),
                };
                let at = e.get("at").and_then(Value::as_u64).ok_or_else(|| bad("split position"))? as usize;
                events.push(Event::Split { axis, at });
            } else {
                events.push(Event::Op(ElementaryOp::from_json(f, e)?));
            }
        }
        Ok(Transcript { field: f.clone(), orientation, row_labels, col_labels, initial, events, final_coeff })
    }
}
