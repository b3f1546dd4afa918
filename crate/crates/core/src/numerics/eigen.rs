use crate::error::{Error, Result};

/// Largest dimension accepted by the dense eigen-solver.
pub const MAX_DENSE_DIMENSION: usize = 64;

const MAX_SWEEPS: usize = 100;

/// Real symmetric matrix stored as a packed upper triangle, so that
/// `get(i, j) == get(j, i)` holds exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    dimension: usize,
    packed: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn zeros(dimension: usize) -> Self {
        Self { dimension, packed: vec![0.0; dimension * (dimension + 1) / 2] }
    }

    pub fn identity(dimension: usize) -> Self {
        Self::from_fn(dimension, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    pub fn diagonal(values: &[f64]) -> Self {
        Self::from_fn(values.len(), |i, j| if i == j { values[i] } else { 0.0 })
    }

    /// Builds the matrix from `f(i, j)` evaluated on the upper triangle only.
    pub fn from_fn(dimension: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(dimension);
        for i in 0..dimension {
            for j in i..dimension {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    fn index(&self, i: usize, j: usize) -> usize {
        let (r, c) = if i <= j { (i, j) } else { (j, i) };
        assert!(c < self.dimension, "index ({i}, {j}) out of bounds for dimension {}", self.dimension);
        r * self.dimension - r * (r + 1) / 2 + c
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.packed[self.index(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        let k = self.index(i, j);
        self.packed[k] = value;
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        (0..self.dimension).map(|i| (0..self.dimension).map(|j| self.get(i, j)).collect()).collect()
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        (0..self.dimension).map(|i| (0..self.dimension).map(|j| self.get(i, j) * v[j]).sum()).collect()
    }

    pub fn frobenius_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.dimension {
            for j in 0..self.dimension {
                s += self.get(i, j).powi(2);
            }
        }
        s.sqrt()
    }

    /// `P^T M P` for the permutation sending row `k` to row `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        Self::from_fn(self.dimension, |i, j| self.get(perm[i], perm[j]))
    }
}

/// Eigenvalues in ascending order with matching unit eigenvectors.
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    /// `vectors[k]` is the eigenvector belonging to `values[k]`.
    pub vectors: Vec<Vec<f64>>,
}

/// Cyclic Jacobi sweeps until the off-diagonal mass is negligible.
pub fn eigen_symmetric(m: &SymmetricMatrix) -> Result<SymmetricEigen> {
    let n = m.dimension();
    if n > MAX_DENSE_DIMENSION {
        return Err(Error::DimensionTooLarge { dimension: n, limit: MAX_DENSE_DIMENSION });
    }
    let mut a = m.to_dense();
    let mut v: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
    let scale = m.frobenius_norm();

    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[p][q] * a[p][q];
            }
        }
        if off.sqrt() <= 1e-15 * scale || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let vp = row[p];
                    let vq = row[q];
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i][i].total_cmp(&a[j][j]));
    Ok(SymmetricEigen {
        values: order.iter().map(|&k| a[k][k]).collect(),
        vectors: order.iter().map(|&k| (0..n).map(|i| v[i][k]).collect()).collect(),
    })
}

/// Ascending eigenvalues of a small dense symmetric matrix.
pub fn eigenvalues_symmetric(m: &SymmetricMatrix) -> Result<Vec<f64>> {
    eigen_symmetric(m).map(|e| e.values)
}
