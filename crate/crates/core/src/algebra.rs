//! Commutants, centers and central projections of finite matrix tuples.
//!
//! The commutant is the null space of `T ↦ (T A_j − A_j T, T A_j* − A_j* T)_j`. Instead of
//! decomposing that `d² × d²` map directly, we first diagonalize a random Hermitian element
//! `H` of the algebra generated by the tuple. Every commutant element commutes with `H`, so
//! it is block diagonal in `H`'s eigenbasis, which usually shrinks the unknowns to a handful.
//! Rank decisions are made on directly computed residuals, not on squared Gram eigenvalues.

use std::ops::Range;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::matrices::{hermitian_eigen, CMat, MatrixTuple, C64};

/// Default relative tolerance.
pub const DEFAULT_TOL: f64 = 1e-8;
/// Retries for randomized steps before giving up.
pub const RETRIES: usize = 8;

const INTERNAL_SEED: u64 = 0x0c0_ffee;
/// Largest singular values below this fraction of the data norm are treated as round-off.
const NOISE_FLOOR: f64 = 1e-4;

/// An orthonormal (trace inner product) basis of a subspace of `d × d` matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct CommutantBasis {
    pub dim: usize,
    pub basis: Vec<CMat>,
}

impl CommutantBasis {
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Frobenius distance between the orthogonal projectors onto both spans.
    ///
    /// Uses `||P - Q||² = ||(I - Q)P||² + ||(I - P)Q||²` summed over basis elements, which
    /// avoids the cancellation of `k1 + k2 - 2||P Q||²` near zero.
    pub fn span_distance(&self, other: &CommutantBasis) -> f64 {
        let leak = |from: &CommutantBasis, to: &CommutantBasis| -> f64 {
            from.basis
                .iter()
                .map(|c| {
                    let mut r = c.clone();
                    for d in &to.basis {
                        r -= d * d.dotc(c);
                    }
                    r.norm_squared()
                })
                .sum()
        };
        (leak(self, other) + leak(other, self)).sqrt()
    }

    /// Distance from `m` to the span, relative to `||m||_F`.
    pub fn relative_distance(&self, m: &CMat) -> f64 {
        let nrm = m.norm();
        if nrm == 0.0 {
            return 0.0;
        }
        let mut r = m.clone();
        for b in &self.basis {
            r -= b * b.dotc(m);
        }
        r.norm() / nrm
    }
}

/// Mutually orthogonal Hermitian idempotents summing to the identity.
#[derive(Clone, Debug, PartialEq)]
pub struct CentralProjectionSet {
    pub projections: Vec<CMat>,
    /// `isometries[i]` has orthonormal columns spanning the range of `projections[i]`.
    pub isometries: Vec<CMat>,
}

/// Split ascending values into maximal runs whose consecutive gaps are at most `gap`.
pub fn clusters(vals: &[f64], gap: f64) -> Vec<Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=vals.len() {
        if i == vals.len() || vals[i] - vals[i - 1] > gap {
            if i > start {
                out.push(start..i);
            }
            start = i;
        }
    }
    out
}

fn herm_part(m: &CMat) -> CMat {
    (m + m.adjoint()) * C64::new(0.5, 0.0)
}

fn gaussian(rng: &mut impl Rng) -> f64 {
    rng.sample(StandardNormal)
}

/// One equation block `X ↦ X a − b X` of a Sylvester-type system, `X` being `p × q`.
pub struct SylvesterPair<'a> {
    pub a: &'a CMat,
    pub b: &'a CMat,
}

/// Orthonormal basis (in the coordinates `unknowns`) of `{X : X a_k = b_k X for all k}`
/// among `p × q` matrices supported on the listed entries.
///
/// The threshold is `tol · σ_max · d` where `d = max(p, q)`; a residual within a factor of 10
/// of it is reported as an ambiguity error carrying the offending singular values.
pub fn sylvester_null_space(p: usize, q: usize, unknowns: &[(usize, usize)], pairs: &[SylvesterPair<'_>], tol: f64) -> Result<Vec<CMat>> {
    let k = unknowns.len();
    if k == 0 {
        return Ok(Vec::new());
    }
    let aat: Vec<CMat> = pairs.iter().map(|s| s.a * s.a.adjoint()).collect();
    let btb: Vec<CMat> = pairs.iter().map(|s| s.b.adjoint() * s.b).collect();
    let mut gram = CMat::zeros(k, k);
    for (u, &(a, b)) in unknowns.iter().enumerate() {
        for (v, &(c, d)) in unknowns.iter().enumerate().skip(u) {
            let mut g = C64::new(0.0, 0.0);
            for (s, pair) in pairs.iter().enumerate() {
                if a == c {
                    g += aat[s][(d, b)];
                }
                if b == d {
                    g += btb[s][(a, c)];
                }
                g -= pair.a[(b, d)].conj() * pair.b[(a, c)];
                g -= pair.b[(c, a)].conj() * pair.a[(d, b)];
            }
            gram[(u, v)] = g;
            gram[(v, u)] = g.conj();
        }
    }
    let (vals, vecs) = hermitian_eigen(&gram);
    let lmax = vals.last().copied().unwrap_or(0.0).max(0.0);
    let smax = lmax.sqrt();
    let to_matrix = |z: &[C64]| {
        let mut x = CMat::zeros(p, q);
        for (coef, &(a, b)) in z.iter().zip(unknowns) {
            x[(a, b)] = *coef;
        }
        x
    };
    if smax == 0.0 {
        return Ok((0..k).map(|i| to_matrix(vecs.column(i).as_slice())).collect());
    }
    let d = p.max(q) as f64;
    // If every coefficient nearly commutes, σ_max is itself round-off; anchor it to the data.
    let data: f64 = pairs.iter().map(|s| s.a.norm_squared() + s.b.norm_squared()).sum::<f64>().sqrt();
    let sref = smax.max(NOISE_FLOOR * data);
    let thr = tol * sref * d;
    // Gram eigenvalues carry an absolute error of about eps·K·||data||², so they only resolve
    // singular values down to sqrt(eps·K)·||data||. Everything below a generous cutoff is
    // re-examined through directly computed residuals.
    let gram_noise = (f64::EPSILON * k as f64).sqrt() * data;
    let cutoff = (100.0 * thr).max(1e-5 * sref).max(100.0 * gram_noise);
    let cand: Vec<usize> = (0..k).filter(|&i| vals[i].max(0.0).sqrt() <= cutoff).collect();
    if cand.is_empty() {
        return Ok(Vec::new());
    }
    let rows: usize = pairs.iter().map(|_| p * q).sum();
    let mut resid = CMat::zeros(rows, cand.len());
    for (col, &i) in cand.iter().enumerate() {
        let x = to_matrix(vecs.column(i).as_slice());
        let mut off = 0;
        for pair in pairs {
            let r = &x * pair.a - pair.b * &x;
            for (t, z) in r.iter().enumerate() {
                resid[(off + t, col)] = *z;
            }
            off += p * q;
        }
    }
    let svd = resid.svd(false, true);
    let v_t = svd.v_t.expect("requested");
    let sv: Vec<f64> = svd.singular_values.iter().copied().collect();
    if let Some(&bad) = sv.iter().find(|&&s| s > thr / 10.0 && s < 10.0 * thr) {
        let mut spectrum = sv.clone();
        spectrum.sort_by(f64::total_cmp);
        return Err(Error::numerical_with(
            format!("ambiguous rank: singular value {bad:.3e} is within a factor 10 of the threshold {thr:.3e}"),
            spectrum,
        ));
    }
    let cand_vecs = CMat::from_columns(&cand.iter().map(|&i| vecs.column(i).into_owned()).collect::<Vec<_>>());
    let mut out = Vec::new();
    for (r, &s) in sv.iter().enumerate() {
        if s <= thr {
            let w = v_t.row(r).adjoint();
            let z = &cand_vecs * w;
            out.push(to_matrix(z.as_slice()));
        }
    }
    Ok(out)
}

/// A random Hermitian element of the *-algebra generated by the tuple: a real combination of
/// Hermitian parts of letters and of length-two words. Also returns `Σ |coef| · ||term||_F`,
/// the size the element would have without cancellation, which is what round-off scales with.
fn random_algebra_element(a: &MatrixTuple, rng: &mut impl Rng) -> (CMat, f64) {
    let d = a.dim();
    let i = C64::new(0.0, 1.0);
    let letters: Vec<CMat> = a.mats().iter().flat_map(|m| [m.clone(), m.adjoint()]).collect();
    let mut h = CMat::zeros(d, d);
    let mut bound = 0.0;
    let mut add = |h: &mut CMat, term: CMat, coef: f64| {
        bound += coef.abs() * term.norm();
        *h += term * C64::new(coef, 0.0);
    };
    for x in &letters {
        add(&mut h, herm_part(x), gaussian(rng));
        add(&mut h, herm_part(&(x * i)), gaussian(rng));
    }
    for x in &letters {
        for y in &letters {
            let w = x * y;
            add(&mut h, herm_part(&w), 0.5 * gaussian(rng));
            add(&mut h, herm_part(&(w * i)), 0.5 * gaussian(rng));
        }
    }
    (h, bound)
}

/// Orthonormal basis of `W'(A)`, the *-commutant.
pub fn commutant_basis(a: &MatrixTuple, tol: f64) -> Result<CommutantBasis> {
    let d = a.dim();
    if d == 0 {
        return Ok(CommutantBasis { dim: 0, basis: Vec::new() });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(INTERNAL_SEED);
    let (h, scale) = random_algebra_element(a, &mut rng);
    let (vals, u) = hermitian_eigen(&h);
    // Merging distinct eigenvalues only costs speed; splitting a degenerate one would be wrong.
    let groups = clusters(&vals, 1e-9 * scale);
    let unknowns: Vec<(usize, usize)> = groups
        .iter()
        .flat_map(|g| g.clone().flat_map(move |r| g.clone().map(move |c| (r, c))))
        .collect();
    let ua = u.adjoint();
    let rotated: Vec<CMat> = a.mats().iter().flat_map(|m| {
        let t = &ua * m * &u;
        let ta = t.adjoint();
        [t, ta]
    }).collect();
    let pairs: Vec<SylvesterPair> = rotated.iter().map(|m| SylvesterPair { a: m, b: m }).collect();
    let null = sylvester_null_space(d, d, &unknowns, &pairs, tol)?;
    Ok(CommutantBasis { dim: d, basis: null.into_iter().map(|x| &u * x * &ua).collect() })
}

/// Orthonormal basis of the center `{T ∈ span C : TS = ST for all S ∈ C}`.
pub fn center_basis(c: &CommutantBasis, tol: f64) -> Result<CommutantBasis> {
    let d = c.dim;
    let k = c.len();
    if k == 0 {
        return Ok(c.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(INTERNAL_SEED ^ 0xc3);
    for attempt in 0..RETRIES {
        let ng = 2 + attempt;
        let gens: Vec<CMat> = (0..ng)
            .map(|_| {
                c.basis.iter().fold(CMat::zeros(d, d), |acc, b| acc + b * C64::new(gaussian(&mut rng), gaussian(&mut rng)))
            })
            .collect();
        let rows = ng * d * d;
        let mut m = CMat::zeros(rows, k);
        for (col, b) in c.basis.iter().enumerate() {
            for (l, g) in gens.iter().enumerate() {
                let comm = b * g - g * b;
                for (t, z) in comm.iter().enumerate() {
                    m[(l * d * d + t, col)] = *z;
                }
            }
        }
        let gnorm = gens.iter().map(|g| g.norm()).fold(0.0, f64::max);
        let coeffs = null_columns(&m, tol, d, NOISE_FLOOR * gnorm)?;
        let center: Vec<CMat> = coeffs
            .iter()
            .map(|z| c.basis.iter().zip(z.iter()).fold(CMat::zeros(d, d), |acc, (b, w)| acc + b * *w))
            .collect();
        let verify = (100.0 * tol * d as f64).max(1e-10);
        let ok = center.iter().all(|z| c.basis.iter().all(|b| (z * b - b * z).norm() <= verify));
        if ok {
            return Ok(CommutantBasis { dim: d, basis: center });
        }
    }
    Err(Error::numerical("center computation did not stabilize"))
}

/// Right null vectors of `m` at threshold `tol · max(σ_max, floor) · d`, with the ambiguity check.
fn null_columns(m: &CMat, tol: f64, d: usize, floor: f64) -> Result<Vec<nalgebra::DVector<C64>>> {
    let k = m.ncols();
    // Pad with zero rows so the SVD always returns k right singular vectors.
    let mm = if m.nrows() < k {
        let mut x = CMat::zeros(k, k);
        x.view_mut((0, 0), (m.nrows(), k)).copy_from(m);
        x
    } else {
        m.clone()
    };
    let svd = mm.svd(false, true);
    let v_t = svd.v_t.expect("requested");
    let sv: Vec<f64> = svd.singular_values.iter().copied().collect();
    let smax = sv.iter().copied().fold(0.0, f64::max).max(floor);
    if smax == 0.0 {
        return Ok((0..k).map(|i| v_t.row(i).adjoint()).collect());
    }
    let thr = tol * smax * d as f64;
    if let Some(&bad) = sv.iter().find(|&&s| s > thr / 10.0 && s < 10.0 * thr) {
        let mut spectrum = sv.clone();
        spectrum.sort_by(f64::total_cmp);
        return Err(Error::numerical_with(
            format!("ambiguous rank: singular value {bad:.3e} is within a factor 10 of the threshold {thr:.3e}"),
            spectrum,
        ));
    }
    Ok(sv.iter().enumerate().filter(|(_, &s)| s <= thr).map(|(i, _)| v_t.row(i).adjoint()).collect())
}

/// Minimal central projections given a precomputed center.
pub fn central_projections_from_center(center: &CommutantBasis, tol: f64, seed: u64) -> Result<CentralProjectionSet> {
    let d = center.dim;
    if d == 0 {
        return Ok(CentralProjectionSet { projections: Vec::new(), isometries: Vec::new() });
    }
    let i = C64::new(0.0, 1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RETRIES {
        let mut h = CMat::zeros(d, d);
        for z in &center.basis {
            h += herm_part(z) * C64::new(gaussian(&mut rng), 0.0);
            h += herm_part(&(z * i)) * C64::new(gaussian(&mut rng), 0.0);
        }
        let (vals, v) = hermitian_eigen(&h);
        let magnitude = vals[0].abs().max(vals[d - 1].abs());
        let spread = (vals[d - 1] - vals[0]).max(NOISE_FLOOR * magnitude);
        let groups = clusters(&vals, 10.0 * tol * spread);
        if groups.len() != center.len() {
            continue;
        }
        let isometries: Vec<CMat> = groups.iter().map(|g| v.columns(g.start, g.len()).into_owned()).collect();
        let projections = isometries.iter().map(|w| w * w.adjoint()).collect();
        return Ok(CentralProjectionSet { projections, isometries });
    }
    Err(Error::numerical(format!(
        "could not separate {} central blocks after {RETRIES} random central elements",
        center.len()
    )))
}

/// The minimal central projections of `W'(A)`, one per isotypic block.
pub fn minimal_central_projections(a: &MatrixTuple, tol: f64, seed: u64) -> Result<CentralProjectionSet> {
    let c = commutant_basis(a, tol)?;
    let z = center_basis(&c, tol)?;
    central_projections_from_center(&z, tol, seed)
}

pub fn is_irreducible(a: &MatrixTuple, tol: f64) -> Result<bool> {
    Ok(a.dim() > 0 && commutant_basis(a, tol)?.len() == 1)
}

pub fn is_factor(a: &MatrixTuple, tol: f64) -> Result<bool> {
    if a.dim() == 0 {
        return Ok(false);
    }
    let c = commutant_basis(a, tol)?;
    Ok(center_basis(&c, tol)?.len() == 1)
}

/// Whether the range of the projection `P` reduces every coordinate.
pub fn reduces(a: &MatrixTuple, p: &CMat, tol: f64) -> Result<bool> {
    let d = a.dim();
    if p.nrows() != d || p.ncols() != d {
        return Err(Error::input("projection has the wrong size"));
    }
    let pn = 1.0 + p.norm();
    if (p * p - p).norm() > tol * pn * d as f64 || (p - p.adjoint()).norm() > tol * pn * d as f64 {
        return Err(Error::input("P is not an orthogonal projection"));
    }
    let scale = tol * (1.0 + a.frobenius_norm()) * pn;
    Ok(a.mats().iter().all(|m| (p * m - m * p).norm() <= scale && (p * m.adjoint() - m.adjoint() * p).norm() <= scale))
}

/// Random element of the span of a basis, complex Gaussian coefficients.
pub fn random_element(b: &CommutantBasis, rng: &mut impl Rng) -> CMat {
    let d = b.dim;
    b.basis.iter().fold(CMat::zeros(d, d), |acc, x| acc + x * C64::new(gaussian(rng), gaussian(rng)))
}

/// Random Hermitian element of the span of a *-closed basis.
pub fn random_hermitian_element(b: &CommutantBasis, rng: &mut impl Rng) -> CMat {
    herm_part(&random_element(b, rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrices::{ampl, b_transform, direct_sum, random};
    use nalgebra::DVector;

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }
    fn diag(v: &[f64]) -> CMat {
        CMat::from_diagonal(&DVector::from_iterator(v.len(), v.iter().map(|&x| c(x))))
    }
    fn j2() -> CMat {
        CMat::from_row_slice(2, 2, &[c(0.0), c(0.0), c(1.0), c(0.0)])
    }
    fn single(m: CMat) -> MatrixTuple {
        MatrixTuple::new(vec![m]).unwrap()
    }
    const TOL: f64 = DEFAULT_TOL;

    /// Oracle: null space of the full d²-dimensional commutation map by SVD.
    fn brute_commutant_dim(a: &MatrixTuple) -> usize {
        let d = a.dim();
        let eye = CMat::identity(d, d);
        let mut blocks = Vec::new();
        for m in a.mats() {
            for x in [m.clone(), m.adjoint()] {
                // vec(TX - XT) = (X^T ⊗ I - I ⊗ X) vec(T)
                blocks.push(x.transpose().kronecker(&eye) - eye.kronecker(&x));
            }
        }
        let rows = blocks.len() * d * d;
        let mut big = CMat::zeros(rows, d * d);
        for (i, b) in blocks.iter().enumerate() {
            big.view_mut((i * d * d, 0), (d * d, d * d)).copy_from(b);
        }
        let sv = big.singular_values();
        let smax = sv.max();
        sv.iter().filter(|&&s| s <= 1e-8 * smax.max(1e-300)).count()
    }

    fn check_commutant(a: &MatrixTuple, cb: &CommutantBasis) {
        for (i, x) in cb.basis.iter().enumerate() {
            for y in &cb.basis[i..] {
                let ip = x.dotc(y);
                let expected = if std::ptr::eq(x, y) { 1.0 } else { 0.0 };
                assert!((ip - c(expected)).norm() < 1e-10);
            }
            for m in a.mats() {
                assert!((x * m - m * x).norm() < 1e-9 * (1.0 + m.norm()));
                assert!((x * m.adjoint() - m.adjoint() * x).norm() < 1e-9 * (1.0 + m.norm()));
            }
            assert!(cb.relative_distance(&x.adjoint()) < 1e-9);
        }
    }

    #[test]
    fn commutant_examples() {
        assert_eq!(commutant_basis(&single(CMat::identity(2, 2)), TOL).unwrap().len(), 4);
        assert_eq!(commutant_basis(&single(diag(&[1.0, 2.0])), TOL).unwrap().len(), 2);
        assert_eq!(commutant_basis(&single(j2()), TOL).unwrap().len(), 1);
        assert_eq!(commutant_basis(&single(CMat::zeros(3, 3)), TOL).unwrap().len(), 9);
    }

    #[test]
    fn commutant_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for trial in 0..12 {
            let p = random::tuple(&mut rng, 2, 1 + trial % 3);
            let q = random::tuple(&mut rng, 2, 2);
            let a = direct_sum(&ampl(1 + trial % 3, &p).unwrap(), &q).unwrap();
            let u = random::unitary(&mut rng, a.dim());
            let a = a.conjugate(&u);
            let cb = commutant_basis(&a, TOL).unwrap();
            check_commutant(&a, &cb);
            assert_eq!(cb.len(), brute_commutant_dim(&a));
        }
    }

    #[test]
    fn center_examples() {
        let cb = commutant_basis(&single(CMat::identity(2, 2)), TOL).unwrap();
        assert_eq!(center_basis(&cb, TOL).unwrap().len(), 1);
        let cb = commutant_basis(&single(diag(&[1.0, 2.0])), TOL).unwrap();
        assert_eq!(center_basis(&cb, TOL).unwrap().len(), 2);
        let jj = ampl(2, &single(j2())).unwrap();
        let cb = commutant_basis(&jj, TOL).unwrap();
        assert_eq!(cb.len(), 4);
        assert_eq!(center_basis(&cb, TOL).unwrap().len(), 1);
    }

    #[test]
    fn projection_examples() {
        let set = minimal_central_projections(&single(j2()), TOL, 0).unwrap();
        assert_eq!(set.projections.len(), 1);
        assert!((&set.projections[0] - CMat::identity(2, 2)).norm() < 1e-10);

        let set = minimal_central_projections(&single(diag(&[1.0, 1.0, 2.0])), TOL, 0).unwrap();
        let mut got: Vec<CMat> = set.projections.clone();
        got.sort_by(|x, y| x.trace().re.total_cmp(&y.trace().re));
        assert!((&got[0] - diag(&[0.0, 0.0, 1.0])).norm() < 1e-10);
        assert!((&got[1] - diag(&[1.0, 1.0, 0.0])).norm() < 1e-10);
    }

    #[test]
    fn projection_count_matches_center() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for trial in 0..100 {
            let d = 1 + trial % 4;
            let a = random::tuple(&mut rng, 1 + trial % 2, d);
            let a = if trial % 3 == 0 { direct_sum(&a, &a).unwrap() } else { a };
            let cb = commutant_basis(&a, TOL).unwrap();
            let z = center_basis(&cb, TOL).unwrap();
            let set = central_projections_from_center(&z, TOL, trial as u64).unwrap();
            assert_eq!(set.projections.len(), z.len());
            let total = set.projections.iter().fold(CMat::zeros(a.dim(), a.dim()), |acc, p| acc + p);
            assert!((total - CMat::identity(a.dim(), a.dim())).norm() < 1e-10);
            for p in &set.projections {
                assert!(reduces(&a, p, TOL).unwrap());
                for x in &cb.basis {
                    assert!((p * x - x * p).norm() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn predicates() {
        assert!(is_irreducible(&single(j2()), TOL).unwrap());
        let jj = ampl(2, &single(j2())).unwrap();
        assert!(is_factor(&jj, TOL).unwrap() && !is_irreducible(&jj, TOL).unwrap());
        let dg = single(diag(&[1.0, 2.0]));
        assert!(!is_factor(&dg, TOL).unwrap() && !is_irreducible(&dg, TOL).unwrap());

        assert!(reduces(&dg, &CMat::identity(2, 2), TOL).unwrap());
        assert!(reduces(&dg, &diag(&[1.0, 0.0]), TOL).unwrap());
        assert!(!reduces(&single(j2()), &diag(&[1.0, 0.0]), TOL).unwrap());
        assert!(matches!(reduces(&dg, &diag(&[0.5, 0.0]), TOL), Err(Error::Input(_))));
    }

    #[test]
    fn commutant_invariant_under_b_transform_and_conjugation() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..10 {
            let p = random::tuple(&mut rng, 2, 2);
            let a = direct_sum(&ampl(2, &p).unwrap(), &random::tuple(&mut rng, 2, 1)).unwrap();
            let u = random::unitary(&mut rng, a.dim());
            let a = a.conjugate(&u).map(|m| m * c(2.5));
            let ca = commutant_basis(&a, TOL).unwrap();
            let cb = commutant_basis(&b_transform(&a), TOL).unwrap();
            assert!(ca.span_distance(&cb) < 1e-8);

            let v = random::unitary(&mut rng, a.dim());
            let cv = commutant_basis(&a.conjugate(&v), TOL).unwrap();
            let moved = CommutantBasis { dim: a.dim(), basis: ca.basis.iter().map(|x| &v * x * v.adjoint()).collect() };
            assert!(cv.span_distance(&moved) < 1e-8);
        }
    }

    #[test]
    fn disjointness_via_block_diagonal_commutant() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for shared in [false, true] {
            let p = random::tuple(&mut rng, 2, 2);
            let q = random::tuple(&mut rng, 2, 2);
            let a = p.clone();
            let b = if shared { direct_sum(&q, &p).unwrap() } else { q };
            let x = direct_sum(&a, &b).unwrap();
            let d = x.dim();
            let first = CMat::from_diagonal(&DVector::from_iterator(d, (0..d).map(|i| c(if i < a.dim() { 1.0 } else { 0.0 }))));
            let cb = commutant_basis(&x, TOL).unwrap();
            let block_diagonal = cb.basis.iter().all(|t| (&first * t - t * &first).norm() < 1e-9);
            // The projector lies in the bicommutant exactly when it commutes with the commutant.
            assert_eq!(block_diagonal, !shared);
        }
    }

    #[test]
    fn clusters_split_on_gaps() {
        let g = clusters(&[0.0, 1e-12, 1.0, 1.0, 3.0], 1e-6);
        assert_eq!(g, vec![0..2, 2..4, 4..5]);
        assert!(clusters(&[], 1.0).is_empty());
    }
}
