//! Small dense linear algebra over exact rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_q_matrix(m: &[Vec<i64>]) -> Vec<Vec<Q>> {
    m.iter()
        .map(|row| row.iter().map(|&x| q(x)).collect())
        .collect()
}

pub fn identity(n: usize) -> Vec<Vec<Q>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Q::one() } else { Q::zero() })
                .collect()
        })
        .collect()
}

/// Determinant by fraction-exact Gaussian elimination.
pub fn determinant(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m.to_vec();
    let mut det = Q::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Q::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &pivot;
            for c in col..n {
                let t = &f * &a[col][c];
                a[r][c] -= t;
            }
        }
    }
    det
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m.to_vec();
    let mut inv = identity(n);
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(p, col);
        inv.swap(p, col);
        let pivot = a[col][col].clone();
        for c in 0..n {
            a[col][c] /= &pivot;
            inv[col][c] /= &pivot;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..n {
                let t = &f * &a[col][c];
                a[r][c] -= t;
                let t = &f * &inv[col][c];
                inv[r][c] -= t;
            }
        }
    }
    Some(inv)
}

/// Basis of `{ x : m x = 0 }`.
pub fn kernel(m: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let mut a: Vec<Vec<Q>> = m.to_vec();
    let nrows = a.len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        let Some(p) = (row..nrows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(p, row);
        let pivot = a[row][col].clone();
        for c in 0..ncols {
            a[row][c] /= &pivot;
        }
        for r in 0..nrows {
            if r == row || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..ncols {
                let t = &f * &a[row][c];
                a[r][c] -= t;
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); ncols];
            v[f] = Q::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[r][f].clone();
            }
            v
        })
        .collect()
}

pub fn mat_vec(m: &[Vec<Q>], v: &[Q]) -> Vec<Q> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(Q::zero(), |acc, (a, b)| acc + a * b))
        .collect()
}

pub fn vec_mat(v: &[Q], m: &[Vec<Q>]) -> Vec<Q> {
    let ncols = m.first().map_or(0, Vec::len);
    (0..ncols)
        .map(|c| {
            v.iter()
                .zip(m)
                .fold(Q::zero(), |acc, (a, row)| acc + a * &row[c])
        })
        .collect()
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Q>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Scales a rational vector to the primitive integer vector on the same ray.
pub fn primitive_integer(v: &[Q]) -> Vec<BigInt> {
    let d = lcm_of_denominators(v);
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &d).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Primitive integer vector with its first nonzero entry made positive.
pub fn normalized_direction(v: &[Q]) -> Vec<i64> {
    let mut p = primitive_integer(v);
    if p.iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative())
    {
        p.iter_mut().for_each(|x| *x = -x.clone());
    }
    p.iter()
        .map(|x| x.to_i64().expect("coefficient fits in i64"))
        .collect()
}

pub fn to_i64(x: &Q) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_a2_cartan() {
        let a = to_q_matrix(&[vec![2, -1], vec![-1, 2]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(inv[0][0], q_frac(2, 3));
        assert_eq!(inv[0][1], q_frac(1, 3));
        assert_eq!(determinant(&a), q(3));
    }

    #[test]
    fn kernel_of_rank_deficient_matrix() {
        let m = to_q_matrix(&[vec![1, 1, 0], vec![0, 1, 1]]);
        let k = kernel(&m, 3);
        assert_eq!(k.len(), 1);
        assert_eq!(normalized_direction(&k[0]), vec![1, -1, 1]);
    }

    #[test]
    fn singular_has_no_inverse() {
        let m = to_q_matrix(&[vec![1, 2], vec![2, 4]]);
        assert!(inverse(&m).is_none());
        assert!(determinant(&m).is_zero());
    }
}
