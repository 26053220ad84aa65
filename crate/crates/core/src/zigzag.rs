//! Representations of `A_n(τ)` and their interval decomposition with explicit
//! basis changes.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::intervals::{HomStructure, Interval, Orientation};
use crate::linalg::Matrix;
use crate::quiver::{Arrow, QuiverRep};

#[derive(Clone, Debug, PartialEq)]
pub struct ZigzagRep<F: Field> {
    field: F,
    tau: Orientation,
    dims: Vec<usize>,
    /// `maps[i]` sits on the arrow between vertices `i + 1` and `i + 2`
    /// (1-based) and has shape `dim(target) x dim(source)`.
    maps: Vec<Matrix<F>>,
}

/// Shape problems of a candidate representation, one message per offending arrow.
pub fn shape_violations<F: Field>(tau: &Orientation, dims: &[usize], maps: &[Matrix<F>]) -> Vec<String> {
    let mut out = Vec::new();
    if dims.len() != tau.n() {
        out.push(format!("expected {} vertex dimensions, got {}", tau.n(), dims.len()));
        return out;
    }
    if maps.len() + 1 != tau.n() {
        out.push(format!("expected {} arrow maps, got {}", tau.n() - 1, maps.len()));
        return out;
    }
    for (k, m) in maps.iter().enumerate() {
        let (s, t) = tau.arrow_ends(k + 1);
        let want = (dims[t - 1], dims[s - 1]);
        if m.shape() != want {
            out.push(format!(
                "arrow {s}->{t}: map is {}x{}, expected {}x{}",
                m.rows(),
                m.cols(),
                want.0,
                want.1
            ));
        }
    }
    out
}

impl<F: Field> ZigzagRep<F> {
    pub fn new(field: &F, tau: &Orientation, dims: Vec<usize>, maps: Vec<Matrix<F>>) -> Result<Self> {
        let bad = shape_violations(tau, &dims, &maps);
        if !bad.is_empty() {
            return Err(Error::DimensionMismatch(bad.join("; ")));
        }
        Ok(ZigzagRep { field: field.clone(), tau: tau.clone(), dims, maps })
    }

    pub fn zero(field: &F, tau: &Orientation) -> Self {
        Self::with_dims_zero(field, tau, vec![0; tau.n()])
    }

    /// All maps zero.
    pub fn with_dims_zero(field: &F, tau: &Orientation, dims: Vec<usize>) -> Self {
        let maps = (1..tau.n())
            .map(|i| {
                let (s, t) = tau.arrow_ends(i);
                Matrix::zeros(field, dims[t - 1], dims[s - 1])
            })
            .collect();
        ZigzagRep { field: field.clone(), tau: tau.clone(), dims, maps }
    }

    pub fn interval(field: &F, tau: &Orientation, iv: Interval) -> Self {
        Self::canonical(field, tau, &[(iv, 1)])
    }

    /// Direct sum of the given intervals with multiplicity, in the listed order;
    /// within each vertex the basis is grouped by interval, then by copy.
    pub fn canonical(field: &F, tau: &Orientation, parts: &[(Interval, usize)]) -> Self {
        let n = tau.n();
        let labels = canonical_labels(n, parts);
        let dims: Vec<usize> = labels.iter().map(|l| l.len()).collect();
        let maps = (1..n)
            .map(|i| {
                let (s, t) = tau.arrow_ends(i);
                let (ls, lt) = (&labels[s - 1], &labels[t - 1]);
                Matrix::from_fn(field, lt.len(), ls.len(), |r, c| {
                    if lt[r] == ls[c] {
                        field.one()
                    } else {
                        field.zero()
                    }
                })
            })
            .collect();
        ZigzagRep { field: field.clone(), tau: tau.clone(), dims, maps }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn orientation(&self) -> &Orientation {
        &self.tau
    }
    pub fn n(&self) -> usize {
        self.tau.n()
    }
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
    /// Dimension at vertex `v` (1-based).
    pub fn dim(&self, v: usize) -> usize {
        self.dims[v - 1]
    }
    pub fn maps(&self) -> &[Matrix<F>] {
        &self.maps
    }
    /// Map on the arrow between `i` and `i + 1` (1-based).
    pub fn map(&self, i: usize) -> &Matrix<F> {
        &self.maps[i - 1]
    }
    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn validate(&self) -> bool {
        shape_violations(&self.tau, &self.dims, &self.maps).is_empty()
    }

    pub fn to_quiver(&self) -> QuiverRep<F> {
        let arrows = self
            .maps
            .iter()
            .enumerate()
            .map(|(k, m)| {
                let (s, t) = self.tau.arrow_ends(k + 1);
                Arrow { src: s - 1, tgt: t - 1, map: m.clone() }
            })
            .collect();
        QuiverRep { field: self.field.clone(), dims: self.dims.clone(), arrows }
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.tau != other.tau {
            return Err(Error::OrientationMismatch(format!("{} vs {}", self.tau, other.tau)));
        }
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| Matrix::block_diag(&self.field, &[a.clone(), b.clone()]))
            .collect();
        Ok(ZigzagRep { field: self.field.clone(), tau: self.tau.clone(), dims, maps })
    }

    /// Change of basis: each map becomes `g[target] * map * g[source]^-1`.
    pub fn conjugate(&self, g: &[Matrix<F>]) -> Result<Self> {
        self.conjugate_with_inverses(g, &invert_all(g)?)
    }

    pub fn conjugate_with_inverses(&self, g: &[Matrix<F>], g_inv: &[Matrix<F>]) -> Result<Self> {
        if g.len() != self.n() || g.iter().zip(&self.dims).any(|(m, &d)| m.shape() != (d, d)) {
            return Err(Error::DimensionMismatch("basis change does not match the vertex dimensions".into()));
        }
        let maps = self
            .maps
            .iter()
            .enumerate()
            .map(|(k, m)| {
                let (s, t) = self.tau.arrow_ends(k + 1);
                g[t - 1].mul(m).mul(&g_inv[s - 1])
            })
            .collect();
        Ok(ZigzagRep { field: self.field.clone(), tau: self.tau.clone(), dims: self.dims.clone(), maps })
    }
}

pub(crate) fn invert_all<F: Field>(g: &[Matrix<F>]) -> Result<Vec<Matrix<F>>> {
    g.iter()
        .enumerate()
        .map(|(v, m)| {
            m.inverse()
                .ok_or_else(|| Error::InvalidModule(format!("basis change at vertex {} is not invertible", v + 1)))
        })
        .collect()
}

/// Per vertex, the `(interval, copy)` label of each canonical basis vector.
pub fn canonical_labels(n: usize, parts: &[(Interval, usize)]) -> Vec<Vec<(Interval, usize)>> {
    (1..=n)
        .map(|v| {
            parts
                .iter()
                .filter(|(iv, _)| iv.contains(v))
                .flat_map(|&(iv, m)| (0..m).map(move |c| (iv, c)))
                .collect()
        })
        .collect()
}

pub fn hom_dim_zz<F: Field>(m: &ZigzagRep<F>, n: &ZigzagRep<F>) -> Result<usize> {
    if m.tau != n.tau {
        return Err(Error::OrientationMismatch(format!("{} vs {}", m.tau, n.tau)));
    }
    m.to_quiver().hom_dim(&n.to_quiver())
}

/// Interval multiplicities from `dim Hom(I[J], M)` for every interval `J`.
pub fn multiplicities_by_homcount<F: Field>(m: &ZigzagRep<F>) -> Result<BTreeMap<Interval, usize>> {
    let hs = HomStructure::new(&m.tau);
    multiplicities_with(m, &hs)
}

pub(crate) fn multiplicities_with<F: Field>(m: &ZigzagRep<F>, hs: &HomStructure) -> Result<BTreeMap<Interval, usize>> {
    let order = hs.order();
    let k = order.len();
    for i in 0..k {
        if !hs.hom_by_position(i, i) || (0..i).any(|j| hs.hom_by_position(i, j)) {
            return Err(Error::Internal(format!(
                "hom-count system for {} is not unitriangular in the interval order",
                m.tau
            )));
        }
    }
    let mq = m.to_quiver();
    let h: Vec<usize> = order
        .iter()
        .map(|&j| ZigzagRep::interval(&m.field, &m.tau, j).to_quiver().hom_dim(&mq))
        .collect::<Result<_>>()?;
    // back substitution from the last interval in ≺
    let mut mult = vec![0i64; k];
    for j in (0..k).rev() {
        let mut x = h[j] as i64;
        for i in j + 1..k {
            if hs.hom_by_position(j, i) {
                x -= mult[i];
            }
        }
        if x < 0 {
            return Err(Error::Internal(format!("negative multiplicity for {}", order[j])));
        }
        mult[j] = x;
    }
    Ok(order
        .iter()
        .zip(mult)
        .filter(|(_, c)| *c > 0)
        .map(|(&iv, c)| (iv, c as usize))
        .collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct IntervalDecomposition<F: Field> {
    /// Nonzero multiplicities, listed in increasing `≺`.
    pub multiplicities: Vec<(Interval, usize)>,
    /// `eta[v]` maps the original basis at vertex `v + 1` to the canonical one.
    pub eta: Vec<Matrix<F>>,
    pub eta_inv: Vec<Matrix<F>>,
    /// Canonical basis labels per vertex.
    pub labels: Vec<Vec<(Interval, usize)>>,
}

impl<F: Field> IntervalDecomposition<F> {
    pub fn multiplicity(&self, iv: Interval) -> usize {
        self.multiplicities.iter().find(|(i, _)| *i == iv).map_or(0, |(_, m)| *m)
    }

    pub fn as_map(&self) -> BTreeMap<Interval, usize> {
        self.multiplicities.iter().copied().collect()
    }
}

pub fn decompose<F: Field>(m: &ZigzagRep<F>) -> Result<IntervalDecomposition<F>> {
    decompose_with(m, &HomStructure::new(&m.tau))
}

/// Split off one interval summand at a time, in `≺` order, through a pair
/// `s: I -> M`, `r: M -> I` with `r ∘ s` invertible; the remainder is `ker r`.
pub fn decompose_with<F: Field>(m: &ZigzagRep<F>, hs: &HomStructure) -> Result<IntervalDecomposition<F>> {
    if hs.orientation() != &m.tau {
        return Err(Error::OrientationMismatch("Hom structure built for another orientation".into()));
    }
    let f = &m.field;
    let n = m.n();
    let mults = multiplicities_with(m, hs)?;
    let parts: Vec<(Interval, usize)> = hs
        .order()
        .iter()
        .filter_map(|iv| mults.get(iv).map(|&c| (*iv, c)))
        .collect();

    let mut cur = m.clone();
    // columns of q[v] span the current remainder inside the original space
    let mut q: Vec<Matrix<F>> = m.dims.iter().map(|&d| Matrix::identity(f, d)).collect();
    // vectors[v] collects the canonical basis at vertex v in (interval, copy) order
    let mut vectors: Vec<Vec<Vec<F::Elem>>> = vec![Vec::new(); n];

    for &(iv, count) in &parts {
        let ivq = ZigzagRep::interval(f, &m.tau, iv).to_quiver();
        for _ in 0..count {
            let cq = cur.to_quiver();
            let sections = ivq.hom_basis(&cq)?;
            let retractions = cq.hom_basis(&ivq)?;
            let v0 = iv.birth - 1;
            let mut found = None;
            'search: for s in &sections {
                for r in &retractions {
                    let c = r[v0].mul(&s[v0]);
                    if !f.is_zero(c.get(0, 0)) {
                        found = Some((s, r, c.get(0, 0).clone()));
                        break 'search;
                    }
                }
            }
            let (s, r, c) = found.ok_or_else(|| {
                Error::Internal(format!("no split pair for {iv} although its multiplicity is positive"))
            })?;
            let c_inv = f.inv(&c).expect("nonzero");
            for v in 1..=n {
                if iv.contains(v) {
                    let sv = s[v - 1].scale(&c_inv);
                    vectors[v - 1].push(q[v - 1].mul(&sv).column(0));
                }
            }
            // remainder: ker r, with maps restricted through N_tgt X = φ N_src
            let kernels: Vec<Matrix<F>> = (0..n)
                .map(|v| {
                    if iv.contains(v + 1) {
                        r[v].nullspace()
                    } else {
                        Matrix::identity(f, cur.dims[v])
                    }
                })
                .collect();
            let mut maps = Vec::with_capacity(n - 1);
            for (k, phi) in cur.maps.iter().enumerate() {
                let (sv, tv) = m.tau.arrow_ends(k + 1);
                let rhs = phi.mul(&kernels[sv - 1]);
                let x = kernels[tv - 1].solve_matrix(&rhs)?.ok_or_else(|| {
                    Error::Internal(format!("kernel of a retraction onto {iv} is not a subrepresentation"))
                })?;
                maps.push(x);
            }
            let dims = kernels.iter().map(|k| k.cols()).collect();
            cur = ZigzagRep { field: f.clone(), tau: m.tau.clone(), dims, maps };
            for v in 0..n {
                q[v] = q[v].mul(&kernels[v]);
            }
        }
    }
    if cur.total_dim() != 0 {
        return Err(Error::Internal("interval splitting left a nonzero remainder".into()));
    }

    let mut eta = Vec::with_capacity(n);
    let mut eta_inv = Vec::with_capacity(n);
    for v in 0..n {
        let d = m.dims[v];
        let cols = &vectors[v];
        let b = Matrix::from_fn(f, d, cols.len(), |i, j| cols[j][i].clone());
        let inv = b
            .inverse()
            .ok_or_else(|| Error::Internal(format!("canonical basis at vertex {} is not a basis", v + 1)))?;
        eta.push(inv);
        eta_inv.push(b);
    }
    let labels = canonical_labels(n, &parts);
    Ok(IntervalDecomposition { multiplicities: parts, eta, eta_inv, labels })
}
