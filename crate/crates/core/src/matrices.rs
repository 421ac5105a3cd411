//! Finite tuples of complex square matrices and the coordinatewise operator calculus.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde_json::{json, Value};

use crate::error::{Error, Result};

pub type CMat = DMatrix<Complex64>;
pub type C64 = Complex64;

/// Default refusal margin of [`inverse_b_transform`].
pub const INVERSE_B_MARGIN: f64 = 1e-10;

/// `N` complex `d × d` matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixTuple {
    dim: usize,
    mats: Vec<CMat>,
}

impl MatrixTuple {
    /// Validates that every matrix is square, of one size, and finite.
    pub fn new(mats: Vec<CMat>) -> Result<Self> {
        let first = mats.first().ok_or_else(|| Error::input("a tuple needs at least one matrix"))?;
        let dim = first.nrows();
        for (j, m) in mats.iter().enumerate() {
            if m.nrows() != dim || m.ncols() != dim {
                return Err(Error::input(format!(
                    "matrix {j} is {}x{}, expected {dim}x{dim}",
                    m.nrows(),
                    m.ncols()
                )));
            }
            if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::input(format!("matrix {j} has a non-finite entry")));
            }
        }
        Ok(MatrixTuple { dim, mats })
    }

    pub fn zeros(n: usize, d: usize) -> Self {
        assert!(n >= 1);
        MatrixTuple { dim: d, mats: vec![CMat::zeros(d, d); n] }
    }

    /// Tuple length `N`.
    pub fn n(&self) -> usize {
        self.mats.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mats(&self) -> &[CMat] {
        &self.mats
    }

    pub fn get(&self, j: usize) -> &CMat {
        &self.mats[j]
    }

    pub fn map(&self, f: impl Fn(&CMat) -> CMat) -> Self {
        MatrixTuple { dim: self.dim, mats: self.mats.iter().map(f).collect() }
    }

    /// `(U A_1 U*, ..., U A_N U*)`. `U` may be rectangular (`k × d`), giving a `k`-dimensional tuple.
    pub fn conjugate(&self, u: &CMat) -> Self {
        let ua = u.adjoint();
        MatrixTuple { dim: u.nrows(), mats: self.mats.iter().map(|a| u * a * &ua).collect() }
    }

    /// Compression `W* A W` onto the range of an isometry `W` (`d × k`).
    pub fn compress(&self, w: &CMat) -> Self {
        self.conjugate(&w.adjoint())
    }

    /// `sqrt(Σ_j ||A_j||_F²)`.
    pub fn frobenius_norm(&self) -> f64 {
        self.mats.iter().map(|m| m.norm_squared()).sum::<f64>().sqrt()
    }

    /// `max_j ||A_j - B_j||_F`.
    pub fn max_distance(&self, other: &Self) -> f64 {
        self.mats.iter().zip(&other.mats).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> Value {
        let mats: Vec<Value> = self
            .mats
            .iter()
            .map(|m| {
                Value::Array(
                    (0..self.dim)
                        .map(|r| Value::Array((0..self.dim).map(|c| json!([m[(r, c)].re, m[(r, c)].im])).collect()))
                        .collect(),
                )
            })
            .collect();
        json!({"n": self.n(), "dim": self.dim, "matrices": mats})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let n = v.get("n").and_then(Value::as_u64).ok_or_else(|| Error::input("tuple JSON needs integer n"))? as usize;
        let d = v.get("dim").and_then(Value::as_u64).ok_or_else(|| Error::input("tuple JSON needs integer dim"))? as usize;
        let mats = v.get("matrices").and_then(Value::as_array).ok_or_else(|| Error::input("tuple JSON needs matrices"))?;
        if n == 0 || mats.len() != n {
            return Err(Error::input(format!("n = {n} but {} matrices given", mats.len())));
        }
        let mut out = Vec::with_capacity(n);
        for (j, m) in mats.iter().enumerate() {
            let rows = m.as_array().filter(|r| r.len() == d).ok_or_else(|| Error::input(format!("matrix {j} must have {d} rows")))?;
            let mut mat = CMat::zeros(d, d);
            for (r, row) in rows.iter().enumerate() {
                let row = row.as_array().filter(|x| x.len() == d).ok_or_else(|| Error::input(format!("matrix {j} row {r} must have {d} entries")))?;
                for (c, z) in row.iter().enumerate() {
                    mat[(r, c)] = parse_complex(z).ok_or_else(|| Error::input(format!("matrix {j} entry ({r},{c}) is not [re, im]")))?;
                }
            }
            out.push(mat);
        }
        Self::new(out)
    }
}

/// Row-major JSON of a (possibly rectangular) matrix with `[re, im]` entries.
pub fn matrix_to_json(m: &CMat) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|r| Value::Array((0..m.ncols()).map(|c| json!([m[(r, c)].re, m[(r, c)].im])).collect()))
            .collect(),
    )
}

/// Inverse of [`matrix_to_json`]; `cols` is needed for matrices with no rows.
pub fn matrix_from_json(v: &Value, cols: usize) -> Result<CMat> {
    let rows = v.as_array().ok_or_else(|| Error::input("matrix JSON must be an array of rows"))?;
    let mut m = CMat::zeros(rows.len(), cols);
    for (r, row) in rows.iter().enumerate() {
        let row = row.as_array().filter(|x| x.len() == cols).ok_or_else(|| Error::input(format!("row {r} must have {cols} entries")))?;
        for (c, z) in row.iter().enumerate() {
            m[(r, c)] = parse_complex(z).ok_or_else(|| Error::input(format!("entry ({r},{c}) is not [re, im]")))?;
        }
    }
    Ok(m)
}

fn parse_complex(z: &Value) -> Option<C64> {
    match z {
        Value::Array(p) if p.len() == 2 => Some(C64::new(p[0].as_f64()?, p[1].as_f64()?)),
        Value::Number(x) => Some(C64::new(x.as_f64()?, 0.0)),
        _ => None,
    }
}

fn check_same_n(a: &MatrixTuple, b: &MatrixTuple) -> Result<()> {
    if a.n() != b.n() {
        return Err(Error::input(format!("tuple lengths differ: {} vs {}", a.n(), b.n())));
    }
    Ok(())
}

/// Block diagonal `diag(A, B)`.
pub fn block_diag(a: &CMat, b: &CMat) -> CMat {
    let (p, q) = (a.nrows(), b.nrows());
    let mut m = CMat::zeros(p + q, p + q);
    m.view_mut((0, 0), (p, p)).copy_from(a);
    m.view_mut((p, p), (q, q)).copy_from(b);
    m
}

/// Coordinatewise `A ⊕ B`.
pub fn direct_sum(a: &MatrixTuple, b: &MatrixTuple) -> Result<MatrixTuple> {
    check_same_n(a, b)?;
    Ok(MatrixTuple {
        dim: a.dim + b.dim,
        mats: a.mats.iter().zip(&b.mats).map(|(x, y)| block_diag(x, y)).collect(),
    })
}

/// `m`-fold direct sum of `A` with itself.
pub fn ampl(m: usize, a: &MatrixTuple) -> Result<MatrixTuple> {
    if m == 0 {
        return Err(Error::input("ampl needs m >= 1"));
    }
    let eye = CMat::identity(m, m);
    Ok(MatrixTuple { dim: m * a.dim, mats: a.mats.iter().map(|x| eye.kronecker(x)).collect() })
}

pub fn adjoint(a: &MatrixTuple) -> MatrixTuple {
    a.map(|m| m.adjoint())
}

/// Eigen-decomposition of a Hermitian matrix with eigenvalues in ascending order.
pub fn hermitian_eigen(h: &CMat) -> (Vec<f64>, CMat) {
    let d = h.nrows();
    if d == 0 {
        return (Vec::new(), CMat::zeros(0, 0));
    }
    let sym = (h + h.adjoint()) * C64::new(0.5, 0.0);
    let eig = sym.symmetric_eigen();
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let vals = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vecs = CMat::from_columns(&order.iter().map(|&i| eig.eigenvectors.column(i).into_owned()).collect::<Vec<DVector<C64>>>());
    (vals, vecs)
}

/// `V diag(f(λ)) V*` for the eigen-decomposition of `M*M`, with `λ` the clamped singular values.
fn gram_function(m: &CMat, f: impl Fn(f64) -> f64) -> CMat {
    let (vals, v) = hermitian_eigen(&(m.adjoint() * m));
    let diag = CMat::from_diagonal(&DVector::from_iterator(vals.len(), vals.iter().map(|&l| C64::new(f(l.max(0.0).sqrt()), 0.0))));
    &v * diag * v.adjoint()
}

/// `|M| = (M*M)^{1/2}`.
pub fn abs_matrix(m: &CMat) -> CMat {
    gram_function(m, |s| s)
}

/// Coordinatewise `|A_j|`.
pub fn abs(a: &MatrixTuple) -> MatrixTuple {
    a.map(abs_matrix)
}

/// The partial isometry `Q` with `M = Q|M|` and `ker Q = ker M`.
pub fn polar_isometry_matrix(m: &CMat) -> CMat {
    let d = m.nrows();
    let (vals, v) = hermitian_eigen(&(m.adjoint() * m));
    let smax = vals.last().copied().unwrap_or(0.0).max(0.0).sqrt();
    let thr = smax * (d as f64) * 1e-13;
    let mut q = CMat::zeros(d, d);
    for (i, &l) in vals.iter().enumerate() {
        let s = l.max(0.0).sqrt();
        if s > thr && s > 0.0 {
            let col = v.column(i);
            q += (m * col) * col.adjoint() / C64::new(s, 0.0);
        }
    }
    q
}

pub fn polar_isometry(a: &MatrixTuple) -> MatrixTuple {
    a.map(polar_isometry_matrix)
}

/// `T (I + |T|)^{-1}`.
pub fn b_transform_matrix(t: &CMat) -> CMat {
    t * gram_function(t, |s| 1.0 / (1.0 + s))
}

/// Coordinatewise B-transform; every coordinate of the result is a strict contraction.
pub fn b_transform(a: &MatrixTuple) -> MatrixTuple {
    a.map(b_transform_matrix)
}

/// Coordinatewise `S (I - |S|)^{-1}`. Refuses when some `||S_j|| >= 1 - 1e-10`.
pub fn inverse_b_transform(s: &MatrixTuple) -> Result<MatrixTuple> {
    for (j, m) in s.mats.iter().enumerate() {
        let nrm = spectral_norm(m);
        if nrm >= 1.0 - INVERSE_B_MARGIN {
            return Err(Error::input(format!(
                "coordinate {j} has norm {nrm:.17e}; the inverse B-transform needs norm < 1 - {INVERSE_B_MARGIN:e}"
            )));
        }
    }
    Ok(s.map(|m| m * gram_function(m, |x| 1.0 / (1.0 - x))))
}

/// Largest singular value.
pub fn spectral_norm(m: &CMat) -> f64 {
    if m.nrows() == 0 {
        return 0.0;
    }
    m.singular_values().iter().copied().fold(0.0, f64::max)
}

/// `max_j ||A_j||`.
pub fn tuple_norm(a: &MatrixTuple) -> f64 {
    a.mats.iter().map(spectral_norm).fold(0.0, f64::max)
}

/// Seeded random matrices for examples, tests and randomized algorithms.
pub mod random {
    use super::*;

    pub fn gaussian(rng: &mut impl Rng, rows: usize, cols: usize) -> CMat {
        CMat::from_fn(rows, cols, |_, _| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
        })
    }

    pub fn hermitian(rng: &mut impl Rng, d: usize) -> CMat {
        let g = gaussian(rng, d, d);
        (&g + g.adjoint()) * C64::new(0.5, 0.0)
    }

    /// Haar-distributed unitary via QR with phase correction.
    pub fn unitary(rng: &mut impl Rng, d: usize) -> CMat {
        if d == 0 {
            return CMat::zeros(0, 0);
        }
        let qr = gaussian(rng, d, d).qr();
        let (q, r) = (qr.q(), qr.r());
        let phases = CMat::from_diagonal(&DVector::from_iterator(
            d,
            (0..d).map(|i| {
                let z = r[(i, i)];
                if z.norm() > 0.0 { z / z.norm() } else { C64::new(1.0, 0.0) }
            }),
        ));
        q * phases
    }

    /// `N` independent Gaussian matrices; irreducible with probability one when `N >= 2` or `d <= 2`.
    pub fn tuple(rng: &mut impl Rng, n: usize, d: usize) -> MatrixTuple {
        MatrixTuple::new((0..n).map(|_| gaussian(rng, d, d)).collect()).expect("valid by construction")
    }

    pub fn normal(rng: &mut impl Rng, d: usize) -> CMat {
        let u = unitary(rng, d);
        let diag = CMat::from_diagonal(&DVector::from_iterator(d, (0..d).map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))));
        &u * diag * u.adjoint()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn j2() -> CMat {
        CMat::from_row_slice(2, 2, &[c(0.0), c(0.0), c(1.0), c(0.0)])
    }

    fn single(m: CMat) -> MatrixTuple {
        MatrixTuple::new(vec![m]).unwrap()
    }

    fn diag(v: &[f64]) -> CMat {
        CMat::from_diagonal(&DVector::from_iterator(v.len(), v.iter().map(|&x| c(x))))
    }

    #[test]
    fn direct_sum_and_ampl() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = random::tuple(&mut rng, 2, 2);
        let b = random::tuple(&mut rng, 2, 3);
        let s = direct_sum(&a, &b).unwrap();
        assert_eq!(s.dim(), 5);
        assert_eq!(s.get(1).view((2, 2), (3, 3)), b.get(1).view((0, 0), (3, 3)));
        let empty = MatrixTuple::zeros(2, 0);
        assert_eq!(direct_sum(&a, &empty).unwrap(), a);
        assert_eq!(ampl(1, &a).unwrap(), a);
        assert_eq!(ampl(2, &a).unwrap(), direct_sum(&a, &a).unwrap());
        assert!(direct_sum(&a, &random::tuple(&mut rng, 3, 2)).is_err());
    }

    #[test]
    fn abs_and_polar() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let u = random::unitary(&mut rng, 3);
        assert!((abs_matrix(&u) - CMat::identity(3, 3)).norm() < 1e-12);
        assert!((abs_matrix(&j2()) - diag(&[1.0, 0.0])).norm() < 1e-12);
        let q = polar_isometry_matrix(&j2());
        assert!((&q * abs_matrix(&j2()) - j2()).norm() < 1e-12);
        // Kernel of Q matches the kernel of J2, spanned by e2.
        assert!((q.column(1)).norm() < 1e-12);
        let m = random::gaussian(&mut rng, 4, 4);
        assert!((polar_isometry_matrix(&m) * abs_matrix(&m) - &m).norm() < 1e-10);
    }

    #[test]
    fn b_transform_examples() {
        assert_eq!(b_transform_matrix(&CMat::zeros(2, 2)), CMat::zeros(2, 2));
        assert!((b_transform_matrix(&CMat::identity(2, 2)) - diag(&[0.5, 0.5])).norm() < 1e-14);
        let expected = CMat::from_row_slice(2, 2, &[c(0.0), c(0.0), c(0.5), c(0.0)]);
        assert!((b_transform_matrix(&j2()) - expected).norm() < 1e-14);

        let half = single(diag(&[0.5, 0.5]));
        assert!(inverse_b_transform(&half).unwrap().max_distance(&single(CMat::identity(2, 2))) < 1e-14);
        assert!(matches!(inverse_b_transform(&single(j2())), Err(Error::Input(_))));
    }

    #[test]
    fn b_transform_identities_on_random_tuples() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let a = random::tuple(&mut rng, 2, 4).map(|m| m * c(3.0));
            let b = b_transform(&a);
            assert!(tuple_norm(&b) < 1.0);
            assert!(b_transform(&adjoint(&a)).max_distance(&adjoint(&b)) < 1e-10);
            assert!(inverse_b_transform(&b).unwrap().max_distance(&a) < 1e-9);
            assert!(abs(&b).max_distance(&b_transform(&abs(&a))) < 1e-10);
            assert!(polar_isometry(&b).max_distance(&polar_isometry(&a)) < 1e-9);
            let other = random::tuple(&mut rng, 2, 3);
            let lhs = b_transform(&direct_sum(&a, &other).unwrap());
            let rhs = direct_sum(&b, &b_transform(&other)).unwrap();
            assert!(lhs.max_distance(&rhs) < 1e-12);
        }
    }

    #[test]
    fn norm_examples() {
        let t = MatrixTuple::new(vec![CMat::identity(2, 2), diag(&[2.0, 2.0])]).unwrap();
        assert!((tuple_norm(&t) - 2.0).abs() < 1e-14);
        assert!((tuple_norm(&single(j2())) - 1.0).abs() < 1e-14);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = random::tuple(&mut rng, 3, 5);
        let u = random::unitary(&mut rng, 5);
        assert!((tuple_norm(&a) - tuple_norm(&a.conjugate(&u))).abs() < 1e-10);
    }

    #[test]
    fn json_round_trip_and_rejections() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = random::tuple(&mut rng, 2, 3);
        assert_eq!(MatrixTuple::from_json(&a.to_json()).unwrap(), a);
        let bad = json!({"n": 1, "dim": 2, "matrices": [[[[1.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]]]});
        assert!(matches!(MatrixTuple::from_json(&bad), Err(Error::Input(_))));
        let bad_n = json!({"n": 2, "dim": 1, "matrices": [[[[1.0, 0.0]]]]});
        assert!(MatrixTuple::from_json(&bad_n).is_err());
    }

    #[test]
    fn unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let u = random::unitary(&mut rng, 6);
        assert!((u.adjoint() * &u - CMat::identity(6, 6)).norm() < 1e-12);
    }
}
