use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exactnum::{GaussianRational, Rational};

/// Row echelon form together with its pivot positions `(row, col)`.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rows: Vec<Vec<GaussianRational>>,
    pub pivots: Vec<(usize, usize)>,
}

fn lcm_of_denominators<'a>(values: impl Iterator<Item = &'a GaussianRational>) -> BigInt {
    values.fold(BigInt::one(), |acc, g| acc.lcm(g.re.denom()).lcm(g.im.denom()))
}

/// Fraction-free (Bareiss) forward elimination.
///
/// Rows are first scaled to Gaussian integers; every subsequent update
/// `(p * a_ik - a_ic * p_k) / previous_pivot` is an exact division in Z[i].
pub fn echelon_form(matrix: &[Vec<GaussianRational>]) -> Echelon {
    let mut m: Vec<Vec<GaussianRational>> = matrix
        .iter()
        .map(|row| {
            let l = Rational::from_integer(lcm_of_denominators(row.iter()));
            row.iter().map(|g| g.scale(&l)).collect()
        })
        .collect();
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);

    let mut pivots = Vec::new();
    let mut previous = GaussianRational::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        let inv_prev = previous.invert().expect("Bareiss pivots are nonzero");
        for i in r + 1..nrows {
            let lead = m[i][c].clone();
            for k in c + 1..ncols {
                let updated = &(&(&pivot * &m[i][k]) - &(&lead * &m[r][k])) * &inv_prev;
                m[i][k] = updated;
            }
            m[i][c] = GaussianRational::zero();
        }
        previous = pivot;
        pivots.push((r, c));
        r += 1;
    }
    Echelon { rows: m, pivots }
}

pub fn rank(matrix: &[Vec<GaussianRational>]) -> usize {
    echelon_form(matrix).pivots.len()
}

/// Reduces a vector of Gaussian rationals to a primitive Gaussian-integer
/// multiple: denominators cleared, common integer content removed.
fn primitive(mut v: Vec<GaussianRational>) -> Vec<GaussianRational> {
    let l = Rational::from_integer(lcm_of_denominators(v.iter()));
    v.iter_mut().for_each(|g| *g = g.scale(&l));
    let content = v
        .iter()
        .flat_map(|g| [g.re.numer().abs(), g.im.numer().abs()])
        .fold(BigInt::zero(), |acc, n| acc.gcd(&n));
    if !content.is_zero() && !content.is_one() {
        let inv = Rational::new(BigInt::one(), content);
        v.iter_mut().for_each(|g| *g = g.scale(&inv));
    }
    v
}

/// Exact basis of `{x : A x = 0}`, one primitive vector per free column.
pub fn nullspace(matrix: &[Vec<GaussianRational>], ncols: usize) -> Vec<Vec<GaussianRational>> {
    let Echelon { rows, pivots } = echelon_form(matrix);
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    (0..ncols)
        .filter(|c| !pivot_cols.contains(c))
        .map(|free| {
            let mut x = vec![GaussianRational::zero(); ncols];
            x[free] = GaussianRational::one();
            for &(r, c) in pivots.iter().rev() {
                let mut acc = GaussianRational::zero();
                for k in c + 1..ncols {
                    if !x[k].is_zero() {
                        acc += &(&rows[r][k] * &x[k]);
                    }
                }
                x[c] = -(acc.checked_div(&rows[r][c]).expect("pivot is nonzero"));
            }
            primitive(x)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_rows(rows: &[&[i64]]) -> Vec<Vec<GaussianRational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| GaussianRational::from_integer(x)).collect())
            .collect()
    }

    #[test]
    fn rank_of_singular_matrix() {
        let m = int_rows(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&m), 2);
        assert_eq!(rank(&int_rows(&[&[0, 0], &[0, 0]])), 0);
    }

    #[test]
    fn nullspace_is_annihilated() {
        let m = int_rows(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 1);
        for row in &m {
            let dot = row
                .iter()
                .zip(&ns[0])
                .fold(GaussianRational::zero(), |acc, (a, b)| acc + a * b);
            assert!(dot.is_zero());
        }
        // primitive integer representative
        assert_eq!(ns[0], int_rows(&[&[-1, -1, 1]])[0]);
    }

    #[test]
    fn complex_entries() {
        let i = GaussianRational::i();
        let one = GaussianRational::one();
        // [[1, i], [-i, 1]] has rank 1 with kernel spanned by (-i, 1)
        let m = vec![vec![one.clone(), i.clone()], vec![-&i, one.clone()]];
        assert_eq!(rank(&m), 1);
        let ns = nullspace(&m, 2);
        assert_eq!(ns, vec![vec![-&i, one]]);
    }
}
