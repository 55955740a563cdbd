//! Dense complex matrices in row-major `Vec<Vec<_>>` form, for the paths
//! that have no exact representation.

use num_complex::Complex64;
use num_traits::{One, Zero};

pub type FloatMatrix = Vec<Vec<Complex64>>;

pub fn zeros(rows: usize, cols: usize) -> FloatMatrix {
    vec![vec![Complex64::zero(); cols]; rows]
}

pub fn identity(n: usize) -> FloatMatrix {
    let mut m = zeros(n, n);
    (0..n).for_each(|k| m[k][k] = Complex64::one());
    m
}

pub fn add(a: &FloatMatrix, b: &FloatMatrix) -> FloatMatrix {
    a.iter().zip(b).map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x + y).collect()).collect()
}

pub fn scale(a: &FloatMatrix, s: f64) -> FloatMatrix {
    a.iter().map(|r| r.iter().map(|x| x * s).collect()).collect()
}

pub fn matmul(a: &FloatMatrix, b: &FloatMatrix) -> FloatMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|ra| (0..cols).map(|c| (0..inner).map(|k| ra[k] * b[k][c]).sum()).collect())
        .collect()
}

pub fn kron(a: &FloatMatrix, b: &FloatMatrix) -> FloatMatrix {
    let (br, bc) = (b.len(), b.first().map_or(0, Vec::len));
    let ac = a.first().map_or(0, Vec::len);
    let mut out = zeros(a.len() * br, ac * bc);
    for (i, ra) in a.iter().enumerate() {
        for (j, x) in ra.iter().enumerate() {
            for (k, rb) in b.iter().enumerate() {
                for (l, y) in rb.iter().enumerate() {
                    out[i * br + k][j * bc + l] = x * y;
                }
            }
        }
    }
    out
}

pub fn apply(a: &FloatMatrix, v: &[Complex64]) -> Vec<Complex64> {
    a.iter().map(|r| r.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}
