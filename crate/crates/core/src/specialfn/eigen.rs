use crate::error::{Error, Result};

/// Dense real symmetric matrix.
///
/// Only ever built symmetric: constructors evaluate the upper triangle and
/// mirror it, so `get(i, j) == get(j, i)` holds bit for bit.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    order: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    /// Builds the matrix from `entry(i, j)`, called once per pair `i ≤ j`.
    pub fn from_fn(order: usize, mut entry: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidParameter("matrix order must be at least 1".into()));
        }
        let mut data = vec![0.0; order * order];
        for i in 0..order {
            for j in i..order {
                let v = entry(i, j);
                data[i * order + j] = v;
                data[j * order + i] = v;
            }
        }
        Ok(SymMatrix { order, data })
    }

    /// Builds the matrix from rows, requiring exact symmetry.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let order = rows.len();
        if rows.iter().any(|r| r.len() != order) {
            return Err(Error::InvalidParameter("rows must form a square matrix".into()));
        }
        for i in 0..order {
            for j in 0..i {
                if rows[i][j].to_bits() != rows[j][i].to_bits() {
                    return Err(Error::InvalidParameter(format!(
                        "entries ({i}, {j}) and ({j}, {i}) differ"
                    )));
                }
            }
        }
        Self::from_fn(order, |i, j| rows[i][j])
    }

    pub fn diagonal(values: &[f64]) -> Result<Self> {
        Self::from_fn(values.len(), |i, j| if i == j { values[i] } else { 0.0 })
    }

    pub fn identity(order: usize) -> Result<Self> {
        Self::from_fn(order, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.order + j]
    }

    /// Leading principal `k × k` submatrix.
    pub fn leading(&self, k: usize) -> Result<Self> {
        if k == 0 || k > self.order {
            return Err(Error::InvalidParameter(format!(
                "leading block of order {k} from a matrix of order {}",
                self.order
            )));
        }
        Self::from_fn(k, |i, j| self.get(i, j))
    }

    /// Principal submatrix on the given (distinct) indices.
    pub fn principal(&self, indices: &[usize]) -> Result<Self> {
        if indices.iter().any(|&i| i >= self.order) {
            return Err(Error::InvalidParameter("principal index out of range".into()));
        }
        Self::from_fn(indices.len(), |i, j| self.get(indices[i], indices[j]))
    }

    pub fn scaled(&self, factor: f64) -> Self {
        SymMatrix {
            order: self.order,
            data: self.data.iter().map(|v| v * factor).collect(),
        }
    }

    /// Infinity norm, an upper bound on the spectral radius.
    pub fn norm_inf(&self) -> f64 {
        (0..self.order)
            .map(|i| (0..self.order).map(|j| self.get(i, j).abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    fn check_finite(&self) -> Result<()> {
        match self.data.iter().position(|v| !v.is_finite()) {
            Some(pos) => Err(Error::NonFinite {
                row: pos / self.order,
                col: pos % self.order,
            }),
            None => Ok(()),
        }
    }
}

/// Smallest eigenvalue of a symmetric matrix.
///
/// Householder reduction to tridiagonal form followed by bisection on the
/// Sturm sequence count. Deterministic, and accurate to a few ulps of the
/// matrix norm.
pub fn min_eigenvalue(m: &SymMatrix) -> Result<f64> {
    m.check_finite()?;
    let (d, e) = tridiagonalize(m);
    Ok(lowest_tridiagonal_eigenvalue(&d, &e))
}

/// Householder tridiagonalization. Returns the diagonal `d` and the
/// sub-diagonal `e` (`e[i]` couples rows `i` and `i + 1`).
fn tridiagonalize(m: &SymMatrix) -> (Vec<f64>, Vec<f64>) {
    let n = m.order;
    let mut a = m.data.clone();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n.saturating_sub(1)];
    let mut v = vec![0.0; n];
    let mut p = vec![0.0; n];

    for k in 0..n.saturating_sub(2) {
        let col = |a: &[f64], i: usize| a[i * n + k];
        let norm = ((k + 1)..n).map(|i| col(&a, i).powi(2)).sum::<f64>().sqrt();
        d[k] = a[k * n + k];
        if norm == 0.0 {
            e[k] = 0.0;
            continue;
        }
        let x0 = col(&a, k + 1);
        let alpha = if x0 > 0.0 { -norm } else { norm };
        for i in (k + 1)..n {
            v[i] = col(&a, i);
        }
        v[k + 1] -= alpha;
        let vtv: f64 = ((k + 1)..n).map(|i| v[i] * v[i]).sum();
        if vtv == 0.0 {
            e[k] = x0;
            continue;
        }
        let beta = 2.0 / vtv;
        // p = beta * A_sub v
        for i in (k + 1)..n {
            let row = &a[i * n..(i + 1) * n];
            p[i] = beta * ((k + 1)..n).map(|j| row[j] * v[j]).sum::<f64>();
        }
        let kappa = 0.5 * beta * ((k + 1)..n).map(|i| v[i] * p[i]).sum::<f64>();
        for i in (k + 1)..n {
            p[i] -= kappa * v[i];
        }
        for i in (k + 1)..n {
            for j in (k + 1)..=i {
                let upd = a[i * n + j] - v[i] * p[j] - p[i] * v[j];
                a[i * n + j] = upd;
                a[j * n + i] = upd;
            }
        }
        e[k] = alpha;
    }
    if n >= 2 {
        d[n - 2] = a[(n - 2) * n + (n - 2)];
        e[n - 2] = a[(n - 1) * n + (n - 2)];
    }
    d[n - 1] = a[(n - 1) * n + (n - 1)];
    (d, e)
}

/// Number of eigenvalues of the tridiagonal matrix strictly below `x`.
fn sturm_count(d: &[f64], e: &[f64], x: f64, pivmin: f64) -> usize {
    let mut count = 0;
    let mut q = d[0] - x;
    if q.abs() < pivmin {
        q = -pivmin;
    }
    if q < 0.0 {
        count += 1;
    }
    for i in 1..d.len() {
        q = d[i] - x - e[i - 1] * e[i - 1] / q;
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

fn lowest_tridiagonal_eigenvalue(d: &[f64], e: &[f64]) -> f64 {
    let n = d.len();
    if n == 1 {
        return d[0];
    }
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let left = if i > 0 { e[i - 1].abs() } else { 0.0 };
        let right = if i + 1 < n { e[i].abs() } else { 0.0 };
        lo = lo.min(d[i] - left - right);
        hi = hi.max(d[i] + left + right);
    }
    let scale = lo.abs().max(hi.abs());
    if scale == 0.0 {
        return 0.0;
    }
    let max_e2 = e.iter().map(|v| v * v).fold(0.0, f64::max);
    let pivmin = f64::MIN_POSITIVE * max_e2.max(1.0);
    lo -= 2.0 * f64::EPSILON * scale;
    hi += 2.0 * f64::EPSILON * scale;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= 2.0 * f64::EPSILON * scale {
            break;
        }
        if sturm_count(d, e, mid, pivmin) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Full eigen-decomposition: eigenvalues in ascending order and the matching
/// unit eigenvectors (`vectors[k]` belongs to `values[k]`).
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
    pub sweeps: usize,
}

const JACOBI_REL_TOL: f64 = 1e-14;
const JACOBI_MAX_SWEEPS: usize = 100;

/// Cyclic Jacobi diagonalization.
///
/// Sweeps until the off-diagonal Frobenius norm falls to `1e-14` of its
/// initial value, at most 100 sweeps.
pub fn jacobi_eigen(m: &SymMatrix) -> Result<Eigen> {
    m.check_finite()?;
    let n = m.order;
    let mut a = m.data.clone();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let off = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i * n + j] * a[i * n + j];
                }
            }
        }
        s.sqrt()
    };
    let initial = off(&a);
    let target = JACOBI_REL_TOL * initial;
    let mut sweeps = 0;
    while sweeps < JACOBI_MAX_SWEEPS && off(&a) > target {
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]));
    let values = order.iter().map(|&i| a[i * n + i]).collect();
    let vectors = order
        .iter()
        .map(|&col| (0..n).map(|row| v[row * n + col]).collect())
        .collect();
    Ok(Eigen { values, vectors, sweeps })
}

/// Smallest eigenvalue together with a unit eigenvector, for use as a
/// detection witness.
pub fn min_eigenpair(m: &SymMatrix) -> Result<(f64, Vec<f64>)> {
    let mut eig = jacobi_eigen(m)?;
    Ok((eig.values[0], eig.vectors.swap_remove(0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn random_sym(n: usize, seed: &[f64]) -> SymMatrix {
        SymMatrix::from_fn(n, |i, j| seed[(i * 31 + j * 17) % seed.len()] * if i == j { 3.0 } else { 1.0 })
            .unwrap()
    }

    #[test]
    fn trivial_spectra() {
        assert!((min_eigenvalue(&SymMatrix::identity(3).unwrap()).unwrap() - 1.0).abs() < 1e-15);
        let d = SymMatrix::diagonal(&[5.0, -2.0, 7.0]).unwrap();
        assert!((min_eigenvalue(&d).unwrap() + 2.0).abs() < 1e-14);
        let m = SymMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        assert!((min_eigenvalue(&m).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_non_finite_and_asymmetric() {
        let m = SymMatrix::from_fn(3, |i, j| if i == 1 && j == 2 { f64::NAN } else { 1.0 }).unwrap();
        assert!(matches!(min_eigenvalue(&m), Err(Error::NonFinite { .. })));
        assert!(matches!(jacobi_eigen(&m), Err(Error::NonFinite { .. })));
        assert!(SymMatrix::from_rows(&[vec![1.0, 2.0], vec![2.5, 1.0]]).is_err());
    }

    #[test]
    fn jacobi_eigenvectors_satisfy_definition() {
        let m = random_sym(7, &[0.3, -1.2, 0.8, 2.1, -0.4, 0.05, 1.7]);
        let eig = jacobi_eigen(&m).unwrap();
        let scale = m.norm_inf();
        for (lam, vec) in eig.values.iter().zip(&eig.vectors) {
            for i in 0..7 {
                let av: f64 = (0..7).map(|j| m.get(i, j) * vec[j]).sum();
                assert!((av - lam * vec[i]).abs() < 1e-12 * scale);
            }
        }
        let (lam, _) = min_eigenpair(&m).unwrap();
        assert!((lam - min_eigenvalue(&m).unwrap()).abs() < 1e-12 * scale);
    }

    fn sym_strategy() -> impl Strategy<Value = SymMatrix> {
        (1usize..=20).prop_flat_map(|n| {
            prop::collection::vec(-10.0f64..10.0, n * n).prop_map(move |raw| {
                SymMatrix::from_fn(n, |i, j| raw[i * n + j]).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn bisection_agrees_with_jacobi(m in sym_strategy()) {
            let scale = m.norm_inf().max(1.0);
            let a = min_eigenvalue(&m).unwrap();
            let b = jacobi_eigen(&m).unwrap().values[0];
            prop_assert!((a - b).abs() <= 1e-10 * scale, "{} vs {}", a, b);
        }

        #[test]
        fn min_is_minus_max_of_negation(m in sym_strategy()) {
            let scale = m.norm_inf().max(1.0);
            let lo = min_eigenvalue(&m).unwrap();
            let hi_neg = jacobi_eigen(&m.scaled(-1.0)).unwrap().values.last().copied().unwrap();
            prop_assert!((lo + hi_neg).abs() <= 1e-10 * scale);
        }

        #[test]
        fn principal_submatrices_interlace(m in sym_strategy(), pick in prop::collection::vec(any::<bool>(), 20)) {
            let idx: Vec<usize> = (0..m.order()).filter(|&i| pick[i]).collect();
            prop_assume!(!idx.is_empty());
            let scale = m.norm_inf().max(1.0);
            let full = min_eigenvalue(&m).unwrap();
            let sub = min_eigenvalue(&m.principal(&idx).unwrap()).unwrap();
            prop_assert!(sub >= full - 1e-12 * scale);
        }
    }
}
