//! Brute-force oracles, random generators and indecomposable catalogs.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagram::{DimVector, PersistenceDiagram, PivotPattern};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::intervals::{HomStructure, Interval, Orientation};
use crate::ladder::{build_block_problem_with, CLRep};
use crate::linalg::Matrix;
use crate::quiver::Morphism;
use crate::reduction::{decompose_with, realize_summand, ReductionOptions, Summand, Transcript, VerifyReport};
use crate::zigzag::ZigzagRep;

pub type Rng64 = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix<F: Field, R: Rng + ?Sized>(f: &F, rows: usize, cols: usize, rng: &mut R) -> Matrix<F> {
    Matrix::from_fn(f, rows, cols, |_, _| f.random_elem(rng))
}

/// Random matrix of rank at most `rank`, as a product of random factors.
pub fn random_low_rank<F: Field, R: Rng + ?Sized>(f: &F, rows: usize, cols: usize, rank: usize, rng: &mut R) -> Matrix<F> {
    let a = random_matrix(f, rows, rank, rng);
    let b = random_matrix(f, rank, cols, rng);
    a.mul(&b)
}

/// Product of a unit lower triangular and an upper triangular matrix with
/// nonzero diagonal: always invertible.
pub fn random_invertible<F: Field, R: Rng + ?Sized>(f: &F, n: usize, rng: &mut R) -> Matrix<F> {
    let l = Matrix::from_fn(f, n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Greater => f.random_elem(rng),
        std::cmp::Ordering::Equal => f.one(),
        std::cmp::Ordering::Less => f.zero(),
    });
    let u = Matrix::from_fn(f, n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Less => f.random_elem(rng),
        std::cmp::Ordering::Equal => f.random_nonzero(rng),
        std::cmp::Ordering::Greater => f.zero(),
    });
    l.mul(&u)
}

/// Zigzag module with the given dimensions and maps of random rank.
pub fn random_zigzag<F: Field, R: Rng + ?Sized>(f: &F, tau: &Orientation, dims: &[usize], rng: &mut R) -> ZigzagRep<F> {
    let maps = (1..tau.n())
        .map(|i| {
            let (s, t) = tau.arrow_ends(i);
            let (r, c) = (dims[t - 1], dims[s - 1]);
            let rank = rng.gen_range(0..=r.min(c));
            random_low_rank(f, r, c, rank, rng)
        })
        .collect();
    ZigzagRep::new(f, tau, dims.to_vec(), maps).expect("shapes are consistent")
}

pub fn random_morphism<F: Field, R: Rng + ?Sized>(v: &ZigzagRep<F>, w: &ZigzagRep<F>, rng: &mut R) -> Result<Morphism<F>> {
    let f = v.field();
    let basis = v.to_quiver().hom_basis(&w.to_quiver())?;
    let mut phi: Morphism<F> = (0..v.n()).map(|k| Matrix::zeros(f, w.dims()[k], v.dims()[k])).collect();
    let sparse = rng.gen_bool(0.5);
    for b in basis {
        if sparse && rng.gen_bool(0.4) {
            continue;
        }
        let c = f.random_elem(rng);
        for (p, m) in phi.iter_mut().zip(&b) {
            *p = p.add(&m.scale(&c));
        }
    }
    Ok(phi)
}

/// Random module with per-vertex dimensions at most `max_dim`: random zigzag
/// rows joined by a random morphism between them.
pub fn random_module<F: Field, R: Rng + ?Sized>(f: &F, tau: &Orientation, max_dim: usize, rng: &mut R) -> Result<CLRep<F>> {
    let n = tau.n();
    let dims = |rng: &mut R| (0..n).map(|_| rng.gen_range(0..=max_dim)).collect::<Vec<_>>();
    let (db, dt) = (dims(rng), dims(rng));
    let v = random_zigzag(f, tau, &db, rng);
    let w = random_zigzag(f, tau, &dt, rng);
    let phi = random_morphism(&v, &w, rng)?;
    CLRep::new_validated(v, w, phi)
}

/// Independent random basis changes on every vertex of both rows.
pub fn random_conjugate<F: Field, R: Rng + ?Sized>(m: &CLRep<F>, rng: &mut R) -> Result<CLRep<F>> {
    let f = m.field();
    let gb: Vec<Matrix<F>> = m.bottom().dims().iter().map(|&d| random_invertible(f, d, rng)).collect();
    let gt: Vec<Matrix<F>> = m.top().dims().iter().map(|&d| random_invertible(f, d, rng)).collect();
    m.conjugate(&gb, &gt)
}

pub fn hom_dim_cl<F: Field>(m: &CLRep<F>, n: &CLRep<F>) -> Result<usize> {
    if m.orientation() != n.orientation() {
        return Err(Error::OrientationMismatch("modules over different ladders".into()));
    }
    m.to_quiver().hom_dim(&n.to_quiver())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Locality {
    /// the endomorphism ring is local: indecomposable
    Local,
    /// a nontrivial idempotent exists
    Decomposable,
    /// neither could be established within the caps
    Inconclusive,
}

/// Largest number of endomorphisms enumerated exactly.
pub const IDEMPOTENT_ENUMERATION_CAP: u64 = 1 << 20;

fn flatten<F: Field>(f: &F, g: &Morphism<F>) -> Matrix<F> {
    Matrix::block_diag(f, g)
}

fn power<F: Field>(m: &Matrix<F>, k: usize) -> Matrix<F> {
    let mut out = Matrix::identity(m.field(), m.rows());
    for _ in 0..k {
        out = out.mul(m);
    }
    out
}

/// Decides whether `End(M)` has an idempotent other than 0 and 1.
pub fn end_is_local<F: Field>(m: &CLRep<F>, seed: u64) -> Result<Locality> {
    let f = m.field();
    if m.total_dim() == 0 {
        return Ok(Locality::Decomposable);
    }
    let q = m.to_quiver();
    let basis: Vec<Matrix<F>> = q.hom_basis(&q)?.iter().map(|g| flatten(f, g)).collect();
    let d = basis.len();
    if d == 1 {
        return Ok(Locality::Local);
    }
    let n = m.total_dim();
    let id = Matrix::identity(f, n);
    let combo = |c: &[F::Elem]| {
        let mut acc = Matrix::zeros(f, n, n);
        for (b, x) in basis.iter().zip(c) {
            acc = acc.add(&b.scale(x));
        }
        acc
    };
    // Fitting: a power of an endomorphism that is neither zero nor invertible
    // yields a proper direct summand.
    // Over a small prime field also shift by each eigenvalue in K: in a local
    // End a singular shift lies in the radical, so it must be nilpotent.
    let shifts: Vec<F::Elem> = match f.order() {
        Some(p) if p <= 256 => (0..p).map(|k| f.nth_elem(k)).collect(),
        _ => Vec::new(),
    };
    let mut rng = rng_from_seed(seed);
    for _ in 0..32 {
        let c: Vec<F::Elem> = (0..d).map(|_| f.random_elem(&mut rng)).collect();
        let e = combo(&c);
        let g = power(&e, n);
        if !g.is_zero() && !g.is_invertible() {
            return Ok(Locality::Decomposable);
        }
        for lam in &shifts {
            let s = e.sub(&id.scale(lam));
            if !s.is_invertible() && !power(&s, n).is_zero() {
                return Ok(Locality::Decomposable);
            }
        }
    }
    if let Some(p) = f.order() {
        if (p as f64).powi(d as i32) <= IDEMPOTENT_ENUMERATION_CAP as f64 {
            let total = p.pow(d as u32);
            for k in 0..total {
                let mut c = Vec::with_capacity(d);
                let mut x = k;
                for _ in 0..d {
                    c.push(f.nth_elem(x % p));
                    x /= p;
                }
                let e = combo(&c);
                if !e.is_zero() && e != id && e.mul(&e) == e {
                    return Ok(Locality::Decomposable);
                }
            }
            return Ok(Locality::Local);
        }
    }
    if radical_certificate(f, &basis, &id) {
        return Ok(Locality::Local);
    }
    Ok(Locality::Inconclusive)
}

/// `End = K·1 ⊕ J` with `J` spanned by nilpotents and closed under products.
fn radical_certificate<F: Field>(f: &F, basis: &[Matrix<F>], id: &Matrix<F>) -> bool {
    let n = id.rows();
    let nf = f.from_i64(n as i64);
    let Some(n_inv) = f.inv(&nf) else { return false };
    let mut j = Vec::new();
    for b in basis {
        let tr = (0..n).fold(f.zero(), |acc, i| f.add(&acc, b.get(i, i)));
        let lam = f.mul(&tr, &n_inv);
        let c = b.sub(&id.scale(&lam));
        if !power(&c, n).is_zero() {
            return false;
        }
        j.push(c);
    }
    let as_row = |m: &Matrix<F>| m.to_rows().concat();
    let span = |ms: &[Matrix<F>]| Matrix::from_rows(f, n * n, ms.iter().map(as_row).collect()).expect("rows have equal length");
    let jr = span(&j).rank();
    if jr + 1 != basis.len() {
        return false;
    }
    for a in &j {
        for b in &j {
            let mut ext = j.clone();
            ext.push(a.mul(b));
            if span(&ext).rank() != jr {
                return false;
            }
        }
    }
    true
}

/// One indecomposable with an explicit representative.
#[derive(Clone, Debug)]
pub struct CatalogEntry<F: Field> {
    pub dim_vector: DimVector,
    pub pattern: Option<PivotPattern>,
    pub module: CLRep<F>,
}

#[derive(Clone, Debug)]
pub struct IndecomposableCatalog<F: Field> {
    pub orientation: Orientation,
    pub entries: Vec<CatalogEntry<F>>,
}

impl<F: Field> IndecomposableCatalog<F> {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, d: &DimVector) -> Option<&CatalogEntry<F>> {
        self.entries.iter().find(|e| e.dim_vector == *d)
    }

    pub fn dim_vectors(&self) -> BTreeSet<DimVector> {
        self.entries.iter().map(|e| e.dim_vector.clone()).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .entries
            .iter()
            .map(|e| {
                serde_json::json!({
                    "dim_vector": e.dim_vector,
                    "pivot_pattern": e.pattern.as_ref().map(|p| p.identities.clone()),
                    "module": crate::io::module_to_json(&e.module),
                })
            })
            .collect();
        serde_json::json!({ "tau": self.orientation.to_string(), "entries": entries })
    }
}

type Spec = (&'static [(usize, usize)], &'static [(usize, usize)]);

/// `(top intervals, bottom intervals)`; every pair with a basis morphism
/// from the bottom interval to the top one carries an identity block.
const CL2F: &[Spec] = &[
    (&[(1, 1)], &[(1, 1)]),
    (&[], &[(1, 1)]),
    (&[(1, 2)], &[(1, 2)]),
    (&[(1, 1)], &[(1, 2)]),
    (&[(1, 1)], &[]),
    (&[], &[(1, 2)]),
    (&[(2, 2)], &[(2, 2)]),
    (&[(2, 2)], &[]),
    (&[(1, 2)], &[(2, 2)]),
    (&[(1, 2)], &[]),
    (&[], &[(2, 2)]),
];

const CL3FB: &[Spec] = &[
    (&[(1, 1)], &[(1, 1)]),
    (&[], &[(1, 1)]),
    (&[(3, 3)], &[(3, 3)]),
    (&[], &[(3, 3)]),
    (&[(1, 3)], &[(1, 3)]),
    (&[(1, 1)], &[(1, 3)]),
    (&[], &[(1, 3)]),
    (&[(1, 1), (3, 3)], &[(1, 3)]),
    (&[(3, 3)], &[(1, 3)]),
    (&[(1, 2)], &[(1, 2)]),
    (&[(1, 1)], &[(1, 2)]),
    (&[(1, 1)], &[]),
    (&[], &[(1, 2)]),
    (&[(2, 3)], &[(2, 3)]),
    (&[(1, 3)], &[(2, 3)]),
    (&[(1, 3)], &[(1, 2)]),
    (&[(1, 3)], &[(2, 3), (1, 2)]),
    (&[(3, 3)], &[(2, 3)]),
    (&[(3, 3)], &[]),
    (&[], &[(2, 3)]),
    (&[(2, 2)], &[(2, 2)]),
    (&[(2, 2)], &[]),
    (&[(2, 3)], &[]),
    (&[(1, 2)], &[(2, 2)]),
    (&[(1, 3)], &[(2, 2)]),
    (&[(1, 3)], &[]),
    (&[], &[(2, 2)]),
    (&[(2, 3)], &[(2, 2)]),
    (&[(2, 3), (1, 2)], &[(2, 2)]),
    (&[(1, 2)], &[]),
];

fn from_spec<F: Field>(f: &F, hs: &HomStructure, spec: &Spec) -> Result<CatalogEntry<F>> {
    let row_labels: Vec<Interval> = spec.0.iter().map(|&(b, d)| Interval::new(b, d)).collect();
    let col_labels: Vec<Interval> = spec.1.iter().map(|&(b, d)| Interval::new(b, d)).collect();
    let mut identities = Vec::new();
    for (i, r) in row_labels.iter().enumerate() {
        for (j, c) in col_labels.iter().enumerate() {
            if hs.hom(*c, *r) {
                identities.push((i, j));
            }
        }
    }
    let mut pattern = PivotPattern {
        top: row_labels.clone(),
        bottom: col_labels.clone(),
        identities: identities.iter().map(|&(i, j)| (col_labels[j], row_labels[i])).collect(),
    };
    pattern.canonicalize();
    let s = Summand { pattern: pattern.clone(), multiplicity: 1, row_labels, col_labels, identities };
    let module = realize_summand(f, hs, &s)?;
    Ok(CatalogEntry { dim_vector: module.dim_vector(), pattern: Some(pattern), module })
}

/// The two indecomposables of `CL_3(fb)` with a 2-dimensional vector space,
/// in the bases in which they are usually displayed.
pub fn cl3fb_dimension_two<F: Field>(f: &F) -> (CLRep<F>, CLRep<F>) {
    let tau = Orientation::parse("fb").expect("valid orientation");
    let m = |rows: &[&[i64]]| Matrix::from_i64(f, rows);
    let ins = vec![m(&[&[1], &[0]]), m(&[&[0], &[1]])];
    // 121/010: top K -> K^2 <- K, bottom 0 -> K <- 0
    let top = ZigzagRep::new(f, &tau, vec![1, 2, 1], ins.clone()).expect("shapes");
    let bottom = ZigzagRep::new(f, &tau, vec![0, 1, 0], vec![Matrix::zeros(f, 1, 0), Matrix::zeros(f, 1, 0)]).expect("shapes");
    let vertical = vec![Matrix::zeros(f, 1, 0), m(&[&[1], &[1]]), Matrix::zeros(f, 1, 0)];
    let a = CLRep::new_validated(bottom, top, vertical).expect("commuting squares");
    // 111/121: top the full interval, bottom K -> K^2 <- K
    let top = ZigzagRep::interval(f, &tau, Interval::new(1, 3));
    let bottom = ZigzagRep::new(f, &tau, vec![1, 2, 1], ins).expect("shapes");
    let vertical = vec![m(&[&[1]]), m(&[&[1, 1]]), m(&[&[1]])];
    let b = CLRep::new_validated(bottom, top, vertical).expect("commuting squares");
    (a, b)
}

/// Catalog of indecomposables: written out for `CL_2(f)` and `CL_3(fb)`,
/// bootstrapped from reductions of random modules otherwise.
pub fn build_catalog<F: Field>(f: &F, tau: &Orientation) -> Result<IndecomposableCatalog<F>> {
    let hs = HomStructure::new(tau);
    let table = match tau.to_string().as_str() {
        "f" => Some(CL2F),
        "fb" => Some(CL3FB),
        _ => None,
    };
    let Some(table) = table else {
        return bootstrap_catalog(f, tau, 0xC4_7A10, 600);
    };
    let mut entries = Vec::new();
    for spec in table {
        entries.push(from_spec(f, &hs, spec)?);
    }
    if tau.to_string() == "fb" {
        let (a, b) = cl3fb_dimension_two(f);
        for e in entries.iter_mut() {
            if e.dim_vector == a.dim_vector() {
                e.module = a.clone();
            } else if e.dim_vector == b.dim_vector() {
                e.module = b.clone();
            }
        }
    }
    Ok(IndecomposableCatalog { orientation: tau.clone(), entries })
}

/// Realize every summand type met while reducing `trials` random modules,
/// then while reducing generic modules of every dimension vector with
/// entries at most 2 (types with a 2 somewhere are rare among the former).
pub fn bootstrap_catalog<F: Field>(f: &F, tau: &Orientation, seed: u64, trials: usize) -> Result<IndecomposableCatalog<F>> {
    let hs = HomStructure::new(tau);
    let n = tau.n();
    let mut rng = rng_from_seed(seed);
    let mut found: BTreeMap<DimVector, CatalogEntry<F>> = BTreeMap::new();
    let mut absorb = |m: &CLRep<F>, check_seed: u64| -> Result<()> {
        let d = decompose_with(m, &hs, ReductionOptions::default())?;
        for s in &d.summands {
            let dv = s.pattern.dim_vector(n);
            if found.contains_key(&dv) {
                continue;
            }
            let module = realize_summand(f, &hs, s)?;
            if end_is_local(&module, check_seed)? == Locality::Decomposable {
                return Err(Error::Internal(format!("bootstrapped summand {dv} is decomposable")));
            }
            found.insert(dv.clone(), CatalogEntry { dim_vector: dv, pattern: Some(s.pattern.clone()), module });
        }
        Ok(())
    };
    let max_dim = if n >= 4 { 3 } else { 2 };
    for t in 0..trials {
        let m = random_module(f, tau, max_dim, &mut rng)?;
        absorb(&m, seed ^ t as u64)?;
    }
    for code in 0..3usize.pow(2 * n as u32) {
        let digits: Vec<usize> = (0..2 * n).map(|k| code / 3usize.pow(k as u32) % 3).collect();
        let (db, dt) = digits.split_at(n);
        for generic in [true, false] {
            let (v, w) = if generic {
                (generic_zigzag(f, tau, db, &mut rng), generic_zigzag(f, tau, dt, &mut rng))
            } else {
                (random_zigzag(f, tau, db, &mut rng), random_zigzag(f, tau, dt, &mut rng))
            };
            let phi = generic_morphism(&v, &w, &mut rng)?;
            absorb(&CLRep::new_validated(v, w, phi)?, seed ^ code as u64)?;
        }
    }
    Ok(IndecomposableCatalog { orientation: tau.clone(), entries: found.into_values().collect() })
}

fn generic_zigzag<F: Field, R: Rng + ?Sized>(f: &F, tau: &Orientation, dims: &[usize], rng: &mut R) -> ZigzagRep<F> {
    let maps = (1..tau.n())
        .map(|i| {
            let (s, t) = tau.arrow_ends(i);
            let (r, c) = (dims[t - 1], dims[s - 1]);
            random_low_rank(f, r, c, r.min(c), rng)
        })
        .collect();
    ZigzagRep::new(f, tau, dims.to_vec(), maps).expect("shapes are consistent")
}

fn generic_morphism<F: Field, R: Rng + ?Sized>(v: &ZigzagRep<F>, w: &ZigzagRep<F>, rng: &mut R) -> Result<Morphism<F>> {
    let f = v.field();
    let basis = v.to_quiver().hom_basis(&w.to_quiver())?;
    let mut phi: Morphism<F> = (0..v.n()).map(|k| Matrix::zeros(f, w.dims()[k], v.dims()[k])).collect();
    for b in basis {
        let c = f.random_nonzero(rng);
        for (p, m) in phi.iter_mut().zip(&b) {
            *p = p.add(&m.scale(&c));
        }
    }
    Ok(phi)
}

/// Multiset of catalog entries to plant.
#[derive(Clone, Debug)]
pub struct PlantSpec {
    pub summands: Vec<(DimVector, usize)>,
    pub seed: u64,
}

/// Direct sum of catalog entries in random bases, with its expected diagram.
pub fn plant<F: Field>(cat: &IndecomposableCatalog<F>, spec: &PlantSpec) -> Result<(CLRep<F>, PersistenceDiagram)> {
    let f = cat
        .entries
        .first()
        .map(|e| e.module.field().clone())
        .ok_or_else(|| Error::Precondition("empty catalog".into()))?;
    let mut m = CLRep::zero(&f, &cat.orientation)?;
    let mut expected = PersistenceDiagram::new(cat.orientation.n());
    for (d, k) in &spec.summands {
        let e = cat.get(d).ok_or_else(|| Error::Precondition(format!("{d} is not in the catalog")))?;
        for _ in 0..*k {
            m = m.direct_sum(&e.module)?;
        }
        expected.add(d.clone(), *k);
    }
    let mut rng = rng_from_seed(spec.seed);
    let m = random_conjugate(&m, &mut rng)?;
    let bad = m.validate_cl();
    if !bad.is_empty() {
        return Err(Error::Internal(bad.join("; ")));
    }
    Ok((m, expected))
}

/// Check that the transcript starts at the block problem of `m0`, replays
/// to `final_coeff`, and is sound.
pub fn verify_transcript<F: Field>(m0: &CLRep<F>, t: &Transcript<F>, final_coeff: &crate::linalg::Matrix<F>) -> Result<VerifyReport> {
    let hs = HomStructure::new(m0.orientation());
    let (p, _) = build_block_problem_with(m0, &hs)?;
    let mut rep = t.verify();
    if p.coeff() != &t.initial || p.row_labels() != t.row_labels.as_slice() || p.col_labels() != t.col_labels.as_slice() {
        rep.replay_matches_final = false;
        rep.failures.push("transcript does not start at the module's block problem".into());
    }
    if t.final_coeff.as_ref() != Some(final_coeff) {
        rep.replay_matches_final = false;
        rep.failures.push("transcript does not end at the given matrix".into());
    }
    Ok(rep)
}

/// `hom(X, M) = Σ mult(Y)·hom(X, Y)` for every catalog entry `X`; returns the
/// failing entries.
pub fn hom_count_mismatches<F: Field>(cat: &IndecomposableCatalog<F>, m: &CLRep<F>, pd: &PersistenceDiagram) -> Result<Vec<DimVector>> {
    let mut bad = Vec::new();
    for x in &cat.entries {
        let lhs = hom_dim_cl(&x.module, m)?;
        let mut rhs = 0;
        for (y, k) in pd.entries() {
            let ye = cat.get(y).ok_or_else(|| Error::Precondition(format!("{y} is not in the catalog")))?;
            rhs += k * hom_dim_cl(&x.module, &ye.module)?;
        }
        if lhs != rhs {
            bad.push(x.dim_vector.clone());
        }
    }
    Ok(bad)
}
