//! One-sided Jacobi SVD for small complex matrices.

use num_complex::Complex64;

const MAX_SWEEPS: usize = 60;

/// Singular values of the `rows x cols` matrix `a`, in descending order.
///
/// Columns are orthogonalized pairwise by complex Jacobi rotations until
/// every pair is orthogonal to machine precision; the singular values are the
/// final column norms.
pub fn singular_values(a: &[Vec<Complex64>]) -> Vec<f64> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    // work on columns
    let mut c: Vec<Vec<Complex64>> = (0..cols).map(|j| (0..rows).map(|i| a[i][j]).collect()).collect();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let alpha: f64 = c[p].iter().map(|x| x.norm_sqr()).sum();
                let beta: f64 = c[q].iter().map(|x| x.norm_sqr()).sum();
                let gamma: Complex64 = c[p].iter().zip(&c[q]).map(|(x, y)| x.conj() * y).sum();
                let g = gamma.norm();
                if g <= f64::EPSILON * (alpha * beta).sqrt() || g == 0.0 {
                    continue;
                }
                rotated = true;
                // rotate the phase of column q so the overlap is real
                let phase = gamma.conj() / g;
                c[q].iter_mut().for_each(|y| *y *= phase);
                let zeta = (beta - alpha) / (2.0 * g);
                let sign = if zeta >= 0.0 { 1.0 } else { -1.0 };
                let t = sign / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                for i in 0..rows {
                    let (x, y) = (c[p][i], c[q][i]);
                    c[p][i] = x * cs - y * sn;
                    c[q][i] = x * sn + y * cs;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<f64> = c.iter().map(|col| col.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()).collect();
    sv.sort_by(|x, y| y.total_cmp(x));
    sv.truncate(rows.min(cols));
    sv
}
