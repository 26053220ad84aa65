//! Ladder modules from pairs of filtrations, via simplicial homology.
//!
//! A complex file holds one simplex per line as whitespace-separated vertex
//! integers; `#` starts a comment. Listed simplices are closed under faces,
//! so listing maximal simplices is enough.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::intervals::Orientation;
use crate::ladder::CLRep;
use crate::linalg::Matrix;
use crate::zigzag::ZigzagRep;

pub type Simplex = Vec<u32>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimplicialComplex {
    simplices: BTreeSet<Simplex>,
}

fn normalize(s: &[u32]) -> Result<Simplex> {
    let mut v = s.to_vec();
    v.sort_unstable();
    v.dedup();
    if v.len() != s.len() {
        return Err(Error::Parse(format!("simplex {s:?} repeats a vertex")));
    }
    if v.is_empty() {
        return Err(Error::Parse("empty simplex".into()));
    }
    Ok(v)
}

impl SimplicialComplex {
    /// Complex from a face-closed list; fails if some face is missing.
    pub fn new(simplices: impl IntoIterator<Item = Simplex>) -> Result<Self> {
        let set = simplices.into_iter().map(|s| normalize(&s)).collect::<Result<BTreeSet<_>>>()?;
        let c = SimplicialComplex { simplices: set };
        for s in &c.simplices {
            if s.len() > 1 {
                for i in 0..s.len() {
                    let mut face = s.clone();
                    face.remove(i);
                    if !c.simplices.contains(&face) {
                        return Err(Error::Parse(format!("face {face:?} of {s:?} is missing")));
                    }
                }
            }
        }
        Ok(c)
    }

    /// Smallest complex containing the given simplices.
    pub fn closure(simplices: impl IntoIterator<Item = Simplex>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for s in simplices {
            let s = normalize(&s)?;
            let k = s.len();
            for mask in 1u64..(1u64 << k) {
                set.insert((0..k).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect::<Simplex>());
            }
        }
        Ok(SimplicialComplex { simplices: set })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut out = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let s = line
                .split_whitespace()
                .map(|t| t.parse::<u32>().map_err(|_| Error::Parse(format!("line {}: bad vertex {t:?}", ln + 1))))
                .collect::<Result<Simplex>>()?;
            out.push(s);
        }
        Self::closure(out)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }

    pub fn simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter()
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Top dimension, `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.simplices.iter().map(|s| s.len() - 1).max()
    }

    /// `k`-simplices in lexicographic order.
    pub fn faces(&self, k: usize) -> Vec<&Simplex> {
        self.simplices.iter().filter(|s| s.len() == k + 1).collect()
    }

    pub fn is_subcomplex_of(&self, other: &Self) -> bool {
        self.simplices.is_subset(&other.simplices)
    }

    pub fn union(&self, other: &Self) -> Self {
        SimplicialComplex { simplices: self.simplices.union(&other.simplices).cloned().collect() }
    }

    pub fn vertices(&self) -> BTreeSet<u32> {
        self.simplices.iter().flatten().copied().collect()
    }

    /// Relabel vertices by adding `offset`.
    pub fn shifted(&self, offset: u32) -> Self {
        SimplicialComplex { simplices: self.simplices.iter().map(|s| s.iter().map(|v| v + offset).collect()).collect() }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.simplices {
            let v: Vec<String> = s.iter().map(u32::to_string).collect();
            out.push_str(&v.join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Matrix of `∂_k : C_k → C_{k-1}` with rows and columns in `faces` order.
pub fn boundary_matrix<F: Field>(f: &F, c: &SimplicialComplex, k: usize) -> Matrix<F> {
    let cols = c.faces(k);
    if k == 0 {
        return Matrix::zeros(f, 0, cols.len());
    }
    let rows = c.faces(k - 1);
    let index: BTreeMap<&Simplex, usize> = rows.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let mut m = Matrix::zeros(f, rows.len(), cols.len());
    for (j, s) in cols.iter().enumerate() {
        for i in 0..s.len() {
            let mut face = (*s).clone();
            face.remove(i);
            let sign = if i % 2 == 0 { f.one() } else { f.neg(&f.one()) };
            m.set(index[&face], j, sign);
        }
    }
    m
}

/// `H_k` of one complex: a basis of the boundaries followed by cycle
/// representatives completing it to a basis of the cycles.
#[derive(Clone, Debug)]
pub struct Homology<F: Field> {
    pub degree: usize,
    simplices: Vec<Simplex>,
    boundaries: Matrix<F>,
    reps: Matrix<F>,
}

impl<F: Field> Homology<F> {
    pub fn dim(&self) -> usize {
        self.reps.cols()
    }

    /// Cycle representatives as columns over the `k`-simplices.
    pub fn representatives(&self) -> &Matrix<F> {
        &self.reps
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    /// Coordinates of the class of a cycle in the representative basis.
    pub fn coordinates(&self, cycle: &[F::Elem]) -> Result<Vec<F::Elem>> {
        let basis = self.boundaries.hstack(&self.reps);
        let x = basis
            .solve(cycle)?
            .ok_or_else(|| Error::Internal("chain is not a cycle of this complex".into()))?;
        Ok(x[self.boundaries.cols()..].to_vec())
    }
}

pub fn homology_basis<F: Field>(f: &F, c: &SimplicialComplex, k: usize) -> Homology<F> {
    let simplices: Vec<Simplex> = c.faces(k).into_iter().cloned().collect();
    let z = boundary_matrix(f, c, k).nullspace();
    let b = boundary_matrix(f, c, k + 1);
    let bi = b.independent_columns();
    let boundaries = b.select(&(0..b.rows()).collect::<Vec<_>>(), &bi);
    let both = boundaries.hstack(&z);
    let extra: Vec<usize> = both
        .independent_columns()
        .into_iter()
        .filter(|&j| j >= boundaries.cols())
        .map(|j| j - boundaries.cols())
        .collect();
    let reps = z.select(&(0..z.rows()).collect::<Vec<_>>(), &extra);
    Homology { degree: k, simplices, boundaries, reps }
}

/// Matrix of `H_k(C) → H_k(D)` induced by the inclusion `C ⊆ D`.
pub fn induced_map<F: Field>(f: &F, c: &SimplicialComplex, d: &SimplicialComplex, k: usize) -> Result<Matrix<F>> {
    if !c.is_subcomplex_of(d) {
        return Err(Error::InvalidModule("induced map requested for a non-inclusion".into()));
    }
    induced_between(f, &homology_basis(f, c, k), &homology_basis(f, d, k))
}

fn induced_between<F: Field>(f: &F, hc: &Homology<F>, hd: &Homology<F>) -> Result<Matrix<F>> {
    let index: BTreeMap<&Simplex, usize> = hd.simplices.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut out = Matrix::zeros(f, hd.dim(), hc.dim());
    for j in 0..hc.dim() {
        let mut chain = vec![f.zero(); hd.simplices.len()];
        for (i, s) in hc.simplices.iter().enumerate() {
            let pos = *index.get(s).ok_or_else(|| Error::Internal(format!("simplex {s:?} missing from the larger complex")))?;
            chain[pos] = hc.reps.get(i, j).clone();
        }
        for (i, x) in hd.coordinates(&chain)?.into_iter().enumerate() {
            out.set(i, j, x);
        }
    }
    Ok(out)
}

/// Two filtrations `X₁ ⊆ X₂` and `Y₁ ⊆ Y₂` with a homology degree.
#[derive(Clone, Debug)]
pub struct FiltrationPair {
    pub x1: SimplicialComplex,
    pub x2: SimplicialComplex,
    pub y1: SimplicialComplex,
    pub y2: SimplicialComplex,
    pub degree: usize,
}

impl FiltrationPair {
    pub fn new(
        x1: SimplicialComplex,
        x2: SimplicialComplex,
        y1: SimplicialComplex,
        y2: SimplicialComplex,
        degree: usize,
    ) -> Result<Self> {
        if !x1.is_subcomplex_of(&x2) {
            return Err(Error::InvalidModule("X1 is not a subcomplex of X2".into()));
        }
        if !y1.is_subcomplex_of(&y2) {
            return Err(Error::InvalidModule("Y1 is not a subcomplex of Y2".into()));
        }
        Ok(FiltrationPair { x1, x2, y1, y2, degree })
    }

    /// Both filtrations side by side, the second relabeled onto disjoint vertices.
    pub fn disjoint_union(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::Precondition("filtration pairs use different homology degrees".into()));
        }
        let all = [&self.x2, &self.y2];
        let off = all.iter().flat_map(|c| c.vertices()).max().map_or(0, |v| v + 1);
        Self::new(
            self.x1.union(&other.x1.shifted(off)),
            self.x2.union(&other.x2.shifted(off)),
            self.y1.union(&other.y1.shifted(off)),
            self.y2.union(&other.y2.shifted(off)),
            self.degree,
        )
    }
}

/// `H(X₁) → H(X₁∪Y₁) ← H(Y₁)` under `H(X₂) → H(X₂∪Y₂) ← H(Y₂)`, joined by
/// the maps induced from the inclusions.
pub fn build_cl3fb<F: Field>(f: &F, pair: &FiltrationPair) -> Result<CLRep<F>> {
    let k = pair.degree;
    let tau = Orientation::parse("fb")?;
    let u1 = pair.x1.union(&pair.y1);
    let u2 = pair.x2.union(&pair.y2);
    let lower = [&pair.x1, &u1, &pair.y1].map(|c| homology_basis(f, c, k));
    let upper = [&pair.x2, &u2, &pair.y2].map(|c| homology_basis(f, c, k));
    let row = |h: &[Homology<F>; 3]| -> Result<ZigzagRep<F>> {
        let maps = vec![induced_between(f, &h[0], &h[1])?, induced_between(f, &h[2], &h[1])?];
        ZigzagRep::new(f, &tau, h.iter().map(Homology::dim).collect(), maps)
    };
    let bottom = row(&lower)?;
    let top = row(&upper)?;
    let vertical = (0..3).map(|v| induced_between(f, &lower[v], &upper[v])).collect::<Result<Vec<_>>>()?;
    CLRep::new_validated(bottom, top, vertical)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn gf2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    #[test]
    fn triangle_homology() {
        let hollow = SimplicialComplex::parse("0 1\n1 2\n0 2\n").unwrap();
        let filled = SimplicialComplex::parse("0 1 2 # a 2-simplex\n").unwrap();
        assert_eq!(homology_basis(&gf2(), &hollow, 1).dim(), 1);
        assert_eq!(homology_basis(&gf2(), &filled, 1).dim(), 0);
        assert_eq!(homology_basis(&gf2(), &filled, 0).dim(), 1);
        let point = SimplicialComplex::parse("7").unwrap();
        assert_eq!(homology_basis(&gf2(), &point, 0).dim(), 1);
    }

    #[test]
    fn face_closure_is_checked() {
        assert!(SimplicialComplex::new(vec![vec![0, 1]]).is_err());
        assert!(SimplicialComplex::new(vec![vec![0], vec![1], vec![1, 0]]).is_ok());
        assert!(SimplicialComplex::parse("0 0").is_err());
    }

    #[test]
    fn filling_kills_the_loop() {
        let f = PrimeField::new(3).unwrap();
        let hollow = SimplicialComplex::parse("0 1\n1 2\n0 2\n").unwrap();
        let filled = SimplicialComplex::parse("0 1 2").unwrap();
        let m = induced_map(&f, &hollow, &filled, 1).unwrap();
        assert_eq!(m.shape(), (0, 1));
        let m = induced_map(&f, &hollow, &hollow, 1).unwrap();
        assert!(m.is_identity());
        assert!(induced_map(&f, &filled, &hollow, 1).is_err());
    }
}
