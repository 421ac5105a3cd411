//! Isotypic decomposition, unitary equivalence, classification and ideal splits.
//!
//! A tuple `A` on `C^d` splits as `U (⊕ m_i ⊙ P_i) U*` with pairwise inequivalent irreducible
//! atoms `P_i`. The minimal central projections of the commutant give the isotypic blocks;
//! inside a block, the commutant is `1 ⊗ M_m`, and a random Hermitian element of it separates the
//! `m` copies of the atom.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fs::File;
use std::path::{Path, PathBuf};
use std::sync::{Arc, RwLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde_json::{json, Value};

use crate::algebra::{center_basis, central_projections_from_center, clusters, commutant_basis, sylvester_null_space, SylvesterPair, RETRIES};
use crate::classes::{PrimeLabel, TupleClass};
use crate::error::{Error, Result};
use crate::jsonio::{read_json, write_json};
use crate::matrices::{hermitian_eigen, matrix_from_json, matrix_to_json, spectral_norm, CMat, MatrixTuple, C64};
use crate::scalars::ExtScalar;

/// Rounding quantum of invariant keys.
pub const KEY_QUANTUM: f64 = 1e-6;
/// Longest trace word used by [`invariant_key`].
pub const KEY_MAX_WORD_LEN: usize = 4;

/// One isotypic block: `multiplicity` copies of `atom` living on the range of `isometry`.
#[derive(Clone, Debug)]
pub struct Block {
    pub atom: MatrixTuple,
    pub multiplicity: usize,
    /// `d × (multiplicity · atom_dim)`, columns ordered copy by copy.
    pub isometry: CMat,
    pub key: Vec<C64>,
}

impl Block {
    pub fn atom_dim(&self) -> usize {
        self.atom.dim()
    }

    /// Orthogonal projection onto the isotypic subspace.
    pub fn projection(&self) -> CMat {
        &self.isometry * self.isometry.adjoint()
    }

    /// `V (I_m ⊗ atom) V*`, this block's share of the tuple.
    pub fn reassemble(&self) -> MatrixTuple {
        let eye = CMat::identity(self.multiplicity, self.multiplicity);
        MatrixTuple::new(self.atom.mats().iter().map(|p| &self.isometry * eye.kronecker(p) * self.isometry.adjoint()).collect())
            .expect("shapes agree")
    }
}

#[derive(Clone, Debug)]
pub struct DecompositionReport {
    pub n: usize,
    pub dim: usize,
    pub blocks: Vec<Block>,
    /// `max_j ||A_j − Σ V (I ⊗ P_j) V*||_F`.
    pub residual: f64,
}

impl DecompositionReport {
    pub fn to_json(&self) -> Value {
        let blocks: Vec<Value> = self
            .blocks
            .iter()
            .map(|b| {
                json!({
                    "atom": b.atom.to_json(),
                    "atom_dim": b.atom_dim(),
                    "multiplicity": b.multiplicity,
                    "isometry": matrix_to_json(&b.isometry),
                })
            })
            .collect();
        json!({"n": self.n, "dim": self.dim, "blocks": blocks, "residual": self.residual})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let n = v.get("n").and_then(Value::as_u64).ok_or_else(|| Error::input("report needs n"))? as usize;
        let dim = v.get("dim").and_then(Value::as_u64).ok_or_else(|| Error::input("report needs dim"))? as usize;
        let residual = v.get("residual").and_then(Value::as_f64).unwrap_or(0.0);
        let mut blocks = Vec::new();
        for b in v.get("blocks").and_then(Value::as_array).ok_or_else(|| Error::input("report needs blocks"))? {
            let atom = MatrixTuple::from_json(b.get("atom").ok_or_else(|| Error::input("block needs atom"))?)?;
            let multiplicity = b.get("multiplicity").and_then(Value::as_u64).ok_or_else(|| Error::input("block needs multiplicity"))? as usize;
            let isometry = matrix_from_json(b.get("isometry").ok_or_else(|| Error::input("block needs isometry"))?, multiplicity * atom.dim())?;
            let key = invariant_key(&atom);
            blocks.push(Block { atom, multiplicity, isometry, key });
        }
        Ok(DecompositionReport { n, dim, blocks, residual })
    }

    /// The multiplicity function with atoms named by block index, for quick inspection.
    pub fn summary(&self) -> Vec<(usize, usize)> {
        self.blocks.iter().map(|b| (b.atom_dim(), b.multiplicity)).collect()
    }
}

fn gaussian(rng: &mut impl Rng) -> f64 {
    rng.sample(StandardNormal)
}

fn consistency(msg: impl Into<String>) -> Error {
    Error::numerical(format!("internal consistency check failed (tolerance too loose?): {}", msg.into()))
}

/// Closest isometry to `m` (polar factor), used to remove round-off from assembled bases.
fn polar_clean(m: &CMat) -> CMat {
    if m.ncols() == 0 {
        return m.clone();
    }
    let svd = m.clone().svd(true, true);
    svd.u.expect("requested") * svd.v_t.expect("requested")
}

/// Split one isotypic block (given by an isometry `w`, `d × r`) into copies of its atom.
fn split_block(a: &MatrixTuple, w: &CMat, commutant: &[CMat], tol: f64, rng: &mut impl Rng) -> Result<Block> {
    let r = w.ncols();
    let wa = w.adjoint();
    let projected: Vec<CMat> = commutant.iter().map(|c| &wa * c * w).collect();
    // The projected commutant elements span the block commutant; their Gram matrix is a
    // projection because the commutant basis is orthonormal and block diagonal.
    let k = projected.len();
    let mut gram = CMat::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let g = projected[i].dotc(&projected[j]);
            gram[(i, j)] = g;
            gram[(j, i)] = g.conj();
        }
    }
    let (gvals, gvecs) = hermitian_eigen(&gram);
    let block_basis: Vec<CMat> = gvals
        .iter()
        .enumerate()
        .filter(|(_, &l)| l > 0.5)
        .map(|(i, _)| projected.iter().zip(gvecs.column(i).iter()).fold(CMat::zeros(r, r), |acc, (p, z)| acc + p * *z))
        .collect();
    let rank = block_basis.len();
    if gvals.iter().any(|&l| (l * (1.0 - l)).abs() > 1e-6) {
        return Err(consistency("block commutant Gram matrix is not a projection"));
    }
    let rand_element = |rng: &mut dyn FnMut() -> f64| {
        block_basis.iter().fold(CMat::zeros(r, r), |acc, b| acc + b * C64::new(rng(), rng()))
    };
    for _ in 0..RETRIES {
        let mut draw = || gaussian(rng);
        let g = rand_element(&mut draw);
        let h = (&g + g.adjoint()) * C64::new(0.5, 0.0);
        let (vals, vecs) = hermitian_eigen(&h);
        let magnitude = vals[0].abs().max(vals[r - 1].abs());
        let spread = (vals[r - 1] - vals[0]).max(1e-4 * magnitude);
        let groups = clusters(&vals, 10.0 * tol * spread.max(f64::MIN_POSITIVE));
        let m = groups.len();
        let n = groups[0].len();
        if groups.iter().any(|g| g.len() != n) || m * n != r {
            continue;
        }
        if m * m != rank {
            return Err(consistency(format!("multiplicity {m} but block commutant has dimension {rank}")));
        }
        let copies: Vec<CMat> = groups.iter().map(|g| vecs.columns(g.start, g.len()).into_owned()).collect();
        let w1 = &copies[0];
        let t = rand_element(&mut draw);
        let mut aligned = vec![w1.clone()];
        let mut ok = true;
        for wk in &copies[1..] {
            let y = wk.adjoint() * &t * w1;
            let svd = y.clone().svd(true, true);
            let sv = &svd.singular_values;
            let (smax, smin) = (sv.max(), sv.min());
            if smax <= 1e-6 * t.norm() || smin < (1.0 - 1e-6) * smax {
                ok = false;
                break;
            }
            aligned.push(wk * (svd.u.expect("requested") * svd.v_t.expect("requested")));
        }
        if !ok {
            continue;
        }
        let stacked = CMat::from_columns(&aligned.iter().flat_map(|x| x.column_iter().map(|c| c.into_owned()).collect::<Vec<_>>()).collect::<Vec<_>>());
        let v = polar_clean(&(w * stacked));
        let v1 = v.columns(0, n).into_owned();
        let atom = a.compress(&v1);
        let key = invariant_key(&atom);
        return Ok(Block { atom, multiplicity: m, isometry: v, key });
    }
    Err(Error::numerical(format!("could not separate the copies of an atom in a block of dimension {r}")))
}

fn cmp_keys(a: &[C64], b: &[C64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im));
        if o != Ordering::Equal {
            return o;
        }
    }
    a.len().cmp(&b.len())
}

/// Decompose `A` into isotypic blocks.
///
/// Blocks are ordered by atom dimension (ascending), multiplicity (descending), then key.
pub fn isotypic_decomposition(a: &MatrixTuple, tol: f64, seed: u64) -> Result<DecompositionReport> {
    let d = a.dim();
    if d == 0 {
        return Ok(DecompositionReport { n: a.n(), dim: 0, blocks: Vec::new(), residual: 0.0 });
    }
    let c = commutant_basis(a, tol)?;
    let z = center_basis(&c, tol)?;
    let central = central_projections_from_center(&z, tol, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(1));
    let mut blocks = Vec::with_capacity(central.isometries.len());
    for w in &central.isometries {
        blocks.push(split_block(a, w, &c.basis, tol, &mut rng)?);
    }
    blocks.sort_by(|x, y| {
        x.atom_dim()
            .cmp(&y.atom_dim())
            .then(y.multiplicity.cmp(&x.multiplicity))
            .then_with(|| cmp_keys(&round_key(&x.key), &round_key(&y.key)))
    });
    let mut residual: f64 = 0.0;
    let parts: Vec<MatrixTuple> = blocks.iter().map(Block::reassemble).collect();
    for j in 0..a.n() {
        let sum = parts.iter().fold(CMat::zeros(d, d), |acc, p| acc + p.get(j));
        residual = residual.max((a.get(j) - sum).norm());
    }
    if residual > tol * (1.0 + a.frobenius_norm()) {
        return Err(consistency(format!("reconstruction residual {residual:.3e}")));
    }
    Ok(DecompositionReport { n: a.n(), dim: d, blocks, residual })
}

/// Words over `(A_1..A_N, A_1*..A_N*)` in length-lexicographic order, longest length `len`.
fn trace_words(a: &MatrixTuple, len: usize) -> Vec<C64> {
    let letters: Vec<CMat> = a.mats().iter().cloned().chain(a.mats().iter().map(|m| m.adjoint())).collect();
    let mut out = Vec::new();
    let mut layer: Vec<CMat> = vec![CMat::identity(a.dim(), a.dim())];
    for _ in 0..len {
        let mut next = Vec::with_capacity(layer.len() * letters.len());
        for w in &layer {
            for l in &letters {
                let p = w * l;
                out.push(p.trace());
                next.push(p);
            }
        }
        layer = next;
    }
    out
}

/// Word length used for keys of `d`-dimensional tuples: `min(2d², KEY_MAX_WORD_LEN)`.
pub fn key_word_len(d: usize) -> usize {
    (2 * d * d).min(KEY_MAX_WORD_LEN)
}

/// Unrounded trace-word fingerprint; its length depends only on `(N, d)`.
pub fn raw_invariant_key(a: &MatrixTuple) -> Vec<C64> {
    trace_words(a, key_word_len(a.dim()))
}

fn round_key(k: &[C64]) -> Vec<C64> {
    let r = |x: f64| {
        let y = (x / KEY_QUANTUM).round() * KEY_QUANTUM;
        if y == 0.0 { 0.0 } else { y }
    };
    k.iter().map(|z| C64::new(r(z.re), r(z.im))).collect()
}

/// Traces of words in `A_j, A_j*`, rounded to [`KEY_QUANTUM`]. Invariant under unitary conjugation.
pub fn invariant_key(a: &MatrixTuple) -> Vec<C64> {
    round_key(&raw_invariant_key(a))
}

/// Tolerant comparison of unrounded keys, robust to values sitting on a rounding boundary.
pub fn keys_close(a: &[C64], b: &[C64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).norm() <= KEY_QUANTUM * (1.0 + x.norm().max(y.norm())))
}

/// Intertwiners `T` (`q.dim × p.dim`) with `T P_j = Q_j T` and `T P_j* = Q_j* T`.
pub fn intertwiners(p: &MatrixTuple, q: &MatrixTuple, tol: f64) -> Result<Vec<CMat>> {
    let (rows, cols) = (q.dim(), p.dim());
    let unknowns: Vec<(usize, usize)> = (0..rows).flat_map(|r| (0..cols).map(move |c| (r, c))).collect();
    let adj_p: Vec<CMat> = p.mats().iter().map(|m| m.adjoint()).collect();
    let adj_q: Vec<CMat> = q.mats().iter().map(|m| m.adjoint()).collect();
    let mut pairs = Vec::new();
    for j in 0..p.n() {
        pairs.push(SylvesterPair { a: p.get(j), b: q.get(j) });
        pairs.push(SylvesterPair { a: &adj_p[j], b: &adj_q[j] });
    }
    sylvester_null_space(rows, cols, &unknowns, &pairs, tol)
}

/// Equivalence of two irreducible tuples via Schur's lemma.
pub fn atoms_equivalent(p: &MatrixTuple, q: &MatrixTuple, tol: f64) -> Result<bool> {
    if p.n() != q.n() {
        return Err(Error::input("tuple lengths differ"));
    }
    if p.dim() != q.dim() {
        return Ok(false);
    }
    if !keys_close(&raw_invariant_key(p), &raw_invariant_key(q)) {
        return Ok(false);
    }
    let space = intertwiners(p, q, tol)?;
    match space.len() {
        0 => Ok(false),
        1 => {
            let n = p.dim();
            let u = &space[0] * C64::new((n as f64).sqrt() / space[0].norm(), 0.0);
            let defect = (u.adjoint() * &u - CMat::identity(n, n)).norm();
            Ok(defect <= 1e-6)
        }
        k => Err(consistency(format!("{k}-dimensional intertwiner space between atoms"))),
    }
}

/// Unitary equivalence of two tuples.
pub fn are_equivalent(a: &MatrixTuple, b: &MatrixTuple, tol: f64) -> Result<bool> {
    if a.n() != b.n() {
        return Err(Error::input(format!("tuple lengths differ: {} vs {}", a.n(), b.n())));
    }
    if a.dim() != b.dim() {
        return Ok(false);
    }
    if !keys_close(&raw_invariant_key(a), &raw_invariant_key(b)) {
        return Ok(false);
    }
    let ra = isotypic_decomposition(a, tol, 0)?;
    let rb = isotypic_decomposition(b, tol, 0)?;
    if ra.blocks.len() != rb.blocks.len() {
        return Ok(false);
    }
    let mut used = vec![false; rb.blocks.len()];
    for x in &ra.blocks {
        let mut found = false;
        for (i, y) in rb.blocks.iter().enumerate() {
            if used[i] || y.multiplicity != x.multiplicity || y.atom_dim() != x.atom_dim() {
                continue;
            }
            if atoms_equivalent(&x.atom, &y.atom, tol)? {
                used[i] = true;
                found = true;
                break;
            }
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug)]
pub struct AtomEntry {
    pub id: String,
    pub representative: MatrixTuple,
    pub key: Vec<C64>,
}

/// Store of canonical atom representatives, shared by concurrent classifications.
///
/// Reads take a shared lock; inserting a new atom takes the exclusive lock and re-checks.
/// A registry opened from a directory holds an exclusive file lock until dropped.
#[derive(Debug, Default)]
pub struct AtomRegistry {
    entries: RwLock<Vec<Arc<AtomEntry>>>,
    dir: Option<PathBuf>,
    _lock: Option<File>,
}

impl AtomRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.read().expect("poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn entries(&self) -> Vec<Arc<AtomEntry>> {
        self.entries.read().expect("poisoned").clone()
    }

    pub fn get(&self, id: &str) -> Option<Arc<AtomEntry>> {
        self.entries.read().expect("poisoned").iter().find(|e| e.id == id).cloned()
    }

    fn find(entries: &[Arc<AtomEntry>], atom: &MatrixTuple, key: &[C64], tol: f64) -> Result<Option<String>> {
        for e in entries {
            if e.representative.n() == atom.n() && e.representative.dim() == atom.dim() && keys_close(&e.key, key) && atoms_equivalent(&e.representative, atom, tol)? {
                return Ok(Some(e.id.clone()));
            }
        }
        Ok(None)
    }

    /// The id of the registered atom equivalent to `atom`, registering it if new.
    pub fn resolve(&self, atom: &MatrixTuple, tol: f64) -> Result<String> {
        let key = raw_invariant_key(atom);
        let seen = {
            let entries = self.entries.read().expect("poisoned");
            if let Some(id) = Self::find(&entries, atom, &key, tol)? {
                return Ok(id);
            }
            entries.len()
        };
        let mut entries = self.entries.write().expect("poisoned");
        if let Some(id) = Self::find(&entries[seen..], atom, &key, tol)? {
            return Ok(id);
        }
        let id = format!("atom-{:04}", entries.len() + 1);
        entries.push(Arc::new(AtomEntry { id: id.clone(), representative: atom.clone(), key }));
        Ok(id)
    }

    /// Open (creating if needed) a registry directory and lock it exclusively.
    pub fn open(dir: &Path) -> Result<Self> {
        let io = |e: std::io::Error| Error::input(format!("registry {}: {e}", dir.display()));
        std::fs::create_dir_all(dir.join("atoms")).map_err(io)?;
        let lock = File::options().create(true).truncate(false).write(true).open(dir.join(".lock")).map_err(io)?;
        lock.lock().map_err(io)?;
        let index_path = dir.join("index.json");
        let mut entries = Vec::new();
        if index_path.exists() {
            let index = read_json(&index_path)?;
            for item in index.get("atoms").and_then(Value::as_array).ok_or_else(|| Error::input("registry index needs an atoms array"))? {
                let id = item.get("id").and_then(Value::as_str).ok_or_else(|| Error::input("registry entry needs an id"))?;
                let representative = MatrixTuple::from_json(&read_json(&dir.join("atoms").join(format!("{id}.json")))?)?;
                let key = raw_invariant_key(&representative);
                entries.push(Arc::new(AtomEntry { id: id.to_string(), representative, key }));
            }
        }
        Ok(AtomRegistry { entries: RwLock::new(entries), dir: Some(dir.to_path_buf()), _lock: Some(lock) })
    }

    /// Write the index and every atom file. No-op for in-memory registries.
    pub fn save(&self) -> Result<()> {
        let Some(dir) = &self.dir else { return Ok(()) };
        let entries = self.entries.read().expect("poisoned");
        for e in entries.iter() {
            let path = dir.join("atoms").join(format!("{}.json", e.id));
            if !path.exists() {
                write_json(&path, &e.representative.to_json())?;
            }
        }
        let atoms: Vec<Value> = entries
            .iter()
            .map(|e| json!({"id": e.id, "n": e.representative.n(), "dim": e.representative.dim(), "file": format!("atoms/{}.json", e.id)}))
            .collect();
        write_json(&dir.join("index.json"), &json!({ "atoms": atoms }))
    }
}

/// The multiplicity function of `A` over registry atoms.
pub fn classify(a: &MatrixTuple, registry: &AtomRegistry, tol: f64, seed: u64) -> Result<TupleClass> {
    let report = isotypic_decomposition(a, tol, seed)?;
    classify_report(&report, registry, tol)
}

pub fn classify_report(report: &DecompositionReport, registry: &AtomRegistry, tol: f64) -> Result<TupleClass> {
    let mut acc = TupleClass::zero();
    for b in &report.blocks {
        let id = registry.resolve(&b.atom, tol)?;
        let part = TupleClass::single(PrimeLabel::atom(&id, b.atom_dim() as u32), ExtScalar::int(b.multiplicity as i128))?;
        acc = acc.oplus(&part);
    }
    Ok(acc)
}

type AtomTest = Arc<dyn Fn(&MatrixTuple, f64) -> bool + Send + Sync>;

/// A unitarily invariant property of irreducible tuples, evaluated at a tolerance.
#[derive(Clone)]
pub struct Predicate {
    pub name: String,
    test: AtomTest,
}

impl std::fmt::Debug for Predicate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Predicate({})", self.name)
    }
}

impl Predicate {
    pub fn new(name: impl Into<String>, test: impl Fn(&MatrixTuple, f64) -> bool + Send + Sync + 'static) -> Self {
        Predicate { name: name.into(), test: Arc::new(test) }
    }

    pub fn holds(&self, atom: &MatrixTuple, tol: f64) -> bool {
        (self.test)(atom, tol)
    }

    /// Atom dimension one: the atom is a point of the joint spectrum.
    pub fn jointly_normal() -> Self {
        Self::new("jointly-normal", |a, _| a.dim() == 1)
    }

    /// Every coordinate of the atom is a normal matrix.
    pub fn separately_normal() -> Self {
        Self::new("separately-normal", |a, tol| {
            a.mats().iter().all(|m| {
                let ma = m.adjoint();
                (m * &ma - &ma * m).norm() <= 10.0 * tol * (1.0 + m.norm_squared())
            })
        })
    }

    pub fn norm_at_most(r: f64) -> Self {
        Self::new(format!("norm<={r}"), move |a, tol| crate::matrices::tuple_norm(a) <= r + tol * (1.0 + r))
    }

    /// Parse `jointly-normal`, `separately-normal` or `norm<=r`.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim().replace('_', "-");
        match t.as_str() {
            "jointly-normal" | "normal" => Ok(Self::jointly_normal()),
            "separately-normal" => Ok(Self::separately_normal()),
            _ => match t.strip_prefix("norm<=") {
                Some(r) => r
                    .trim()
                    .parse::<f64>()
                    .ok()
                    .filter(|r| r.is_finite() && *r >= 0.0)
                    .map(Self::norm_at_most)
                    .ok_or_else(|| Error::input(format!("bad radius in {s:?}"))),
                None => Err(Error::input(format!("unknown ideal {s:?}; expected jointly-normal, separately-normal or norm<=r"))),
            },
        }
    }
}

/// The named predicates available without parameters, plus the unit ball.
pub fn builtin_predicates() -> Vec<Predicate> {
    vec![Predicate::jointly_normal(), Predicate::separately_normal(), Predicate::norm_at_most(1.0)]
}

/// The restriction of a tuple to a reducing subspace.
#[derive(Clone, Debug)]
pub struct Part {
    /// `W* A W` for the isometry `W` below.
    pub tuple: MatrixTuple,
    pub isometry: CMat,
    pub projection: CMat,
}

impl Part {
    fn from_blocks(a: &MatrixTuple, blocks: &[&Block]) -> Self {
        let d = a.dim();
        let cols: Vec<_> = blocks.iter().flat_map(|b| b.isometry.column_iter().map(|c| c.into_owned()).collect::<Vec<_>>()).collect();
        let isometry = if cols.is_empty() { CMat::zeros(d, 0) } else { CMat::from_columns(&cols) };
        let tuple = if cols.is_empty() { MatrixTuple::zeros(a.n(), 0) } else { a.compress(&isometry) };
        let projection = &isometry * isometry.adjoint();
        Part { tuple, isometry, projection }
    }

    pub fn dim(&self) -> usize {
        self.isometry.ncols()
    }
}

#[derive(Clone, Debug)]
pub struct Split {
    pub part: Part,
    pub complement: Part,
}

/// Largest reducing subspace on which every atom satisfies `pred`, and its complement.
pub fn ideal_split(a: &MatrixTuple, pred: &Predicate, tol: f64, seed: u64) -> Result<Split> {
    let report = isotypic_decomposition(a, tol, seed)?;
    Ok(split_report(a, &report, pred, tol))
}

pub fn split_report(a: &MatrixTuple, report: &DecompositionReport, pred: &Predicate, tol: f64) -> Split {
    let (yes, no): (Vec<&Block>, Vec<&Block>) = report.blocks.iter().partition(|b| pred.holds(&b.atom, tol));
    Split { part: Part::from_blocks(a, &yes), complement: Part::from_blocks(a, &no) }
}

/// Joint split by `k` predicates into `2^k` parts, keyed by which predicates hold.
pub fn multi_split(a: &MatrixTuple, preds: &[Predicate], tol: f64, seed: u64) -> Result<BTreeMap<Vec<bool>, Part>> {
    let report = isotypic_decomposition(a, tol, seed)?;
    let mut groups: BTreeMap<Vec<bool>, Vec<&Block>> = BTreeMap::new();
    for mask in 0..(1usize << preds.len()) {
        groups.insert((0..preds.len()).map(|i| mask & (1 << i) != 0).collect(), Vec::new());
    }
    for b in &report.blocks {
        let sig: Vec<bool> = preds.iter().map(|p| p.holds(&b.atom, tol)).collect();
        groups.get_mut(&sig).expect("all signatures present").push(b);
    }
    Ok(groups.into_iter().map(|(k, v)| (k, Part::from_blocks(a, &v))).collect())
}

/// Jointly normal part, purely separately normal part, and the rest, as two nested splits.
pub fn normal_three_way(a: &MatrixTuple, tol: f64, seed: u64) -> Result<[Part; 3]> {
    let report = isotypic_decomposition(a, tol, seed)?;
    let outer = split_report(a, &report, &Predicate::separately_normal(), tol);
    let jn = Predicate::jointly_normal();
    let (yes, mid): (Vec<&Block>, Vec<&Block>) = report
        .blocks
        .iter()
        .filter(|b| Predicate::separately_normal().holds(&b.atom, tol))
        .partition(|b| jn.holds(&b.atom, tol));
    Ok([Part::from_blocks(a, &yes), Part::from_blocks(a, &mid), outer.complement])
}

/// Norm-based split of a contraction.
#[derive(Clone, Debug)]
pub struct ContractionParts {
    /// Every reduced part has norm below 1.
    pub h0: Part,
    /// Norm 1 but not attained; always trivial in finite dimensions.
    pub h1: Part,
    /// Norm 1 and attained.
    pub h2: Part,
}

pub fn contraction_parts(a: &MatrixTuple, tol: f64, seed: u64) -> Result<ContractionParts> {
    let nrm = crate::matrices::tuple_norm(a);
    if nrm > 1.0 + tol {
        return Err(Error::input(format!("not a contraction: norm {nrm:.17e}")));
    }
    let report = isotypic_decomposition(a, tol, seed)?;
    let at_one = |b: &Block| crate::matrices::tuple_norm(&b.atom) >= 1.0 - tol;
    let attained = |b: &Block| {
        b.atom.mats().iter().any(|m| {
            let svd = m.clone().svd(false, true);
            let v_t = svd.v_t.expect("requested");
            let i = svd.singular_values.imax();
            let x = v_t.row(i).adjoint();
            (m * x).norm() >= 1.0 - tol && spectral_norm(m) >= 1.0 - tol
        })
    };
    let h0: Vec<&Block> = report.blocks.iter().filter(|b| !at_one(b)).collect();
    let h1: Vec<&Block> = report.blocks.iter().filter(|b| at_one(b) && !attained(b)).collect();
    let h2: Vec<&Block> = report.blocks.iter().filter(|b| at_one(b) && attained(b)).collect();
    if !h1.is_empty() {
        return Err(consistency("a finite-dimensional reduced part failed to attain its norm"));
    }
    Ok(ContractionParts { h0: Part::from_blocks(a, &h0), h1: Part::from_blocks(a, &h1), h2: Part::from_blocks(a, &h2) })
}
