//! Smith normal form over the integers with transform tracking.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `u * a * v = diag(diagonal)` with `u`, `v` unimodular; `v_inv` is the
/// inverse of `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub u: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
    pub v_inv: Vec<Vec<BigInt>>,
    pub reduced: Vec<Vec<BigInt>>,
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect()
}

struct State {
    a: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
    v_inv: Vec<Vec<BigInt>>,
    rows: usize,
    cols: usize,
}

impl State {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            row.swap(i, j);
        }
        self.v_inv.swap(i, j);
    }

    /// row_i -= f * row_t
    fn row_sub(&mut self, i: usize, t: usize, f: &BigInt) {
        for c in 0..self.cols {
            let x = f * &self.a[t][c];
            self.a[i][c] -= x;
        }
        for c in 0..self.rows {
            let x = f * &self.u[t][c];
            self.u[i][c] -= x;
        }
    }

    /// col_j -= f * col_t
    fn col_sub(&mut self, j: usize, t: usize, f: &BigInt) {
        for r in 0..self.rows {
            let x = f * &self.a[r][t];
            self.a[r][j] -= x;
        }
        for r in 0..self.cols {
            let x = f * &self.v[r][t];
            self.v[r][j] -= x;
        }
        for c in 0..self.cols {
            let x = f * &self.v_inv[j][c];
            self.v_inv[t][c] += x;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut().chain(self.u[i].iter_mut()) {
            *x = -x.clone();
        }
    }

    fn smallest_nonzero(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for r in t..self.rows {
            for c in t..self.cols {
                let x = &self.a[r][c];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(br, bc)| x.abs() < self.a[br][bc].abs()) {
                    best = Some((r, c));
                }
            }
        }
        best
    }
}

pub fn smith_normal_form(a: &[Vec<BigInt>], cols: usize) -> SmithForm {
    let rows = a.len();
    let mut s = State {
        a: a.to_vec(),
        u: identity(rows),
        v: identity(cols),
        v_inv: identity(cols),
        rows,
        cols,
    };
    let mut diagonal = Vec::new();
    for t in 0..rows.min(cols) {
        let Some((pr, pc)) = s.smallest_nonzero(t) else {
            break;
        };
        s.swap_rows(t, pr);
        s.swap_cols(t, pc);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if s.a[i][t].is_zero() {
                    continue;
                }
                let f = s.a[i][t].div_floor(&s.a[t][t]);
                s.row_sub(i, t, &f);
                if !s.a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if s.a[t][j].is_zero() {
                    continue;
                }
                let f = s.a[t][j].div_floor(&s.a[t][t]);
                s.col_sub(j, t, &f);
                if !s.a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                let (pr, pc) = s.smallest_nonzero(t).expect("nonzero entries remain");
                s.swap_rows(t, pr);
                s.swap_cols(t, pc);
                continue;
            }
            let pivot = s.a[t][t].clone();
            let offending =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !s.a[i][j].is_multiple_of(&pivot)));
            match offending {
                Some(i) => {
                    // row_t += row_i brings a non-multiple into row t
                    s.row_sub(t, i, &-BigInt::one());
                }
                None => break,
            }
        }
        if s.a[t][t].is_negative() {
            s.negate_row(t);
        }
        diagonal.push(s.a[t][t].clone());
    }
    SmithForm {
        diagonal,
        u: s.u,
        v: s.v,
        v_inv: s.v_inv,
        reduced: s.a,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
        m.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
        let k = b.len();
        let n = b.first().map_or(0, Vec::len);
        a.iter()
            .map(|row| {
                (0..n)
                    .map(|j| (0..k).fold(BigInt::zero(), |acc, t| acc + &row[t] * &b[t][j]))
                    .collect()
            })
            .collect()
    }

    fn check(m: &[Vec<i64>], cols: usize, expect: &[i64]) {
        let a = big(m);
        let s = smith_normal_form(&a, cols);
        let d: Vec<i64> = s.diagonal.iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(d, expect);
        assert_eq!(mul(&mul(&s.u, &a), &s.v), s.reduced);
        assert_eq!(mul(&s.v, &s.v_inv), identity(cols));
        for (i, row) in s.reduced.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if i != j {
                    assert!(x.is_zero());
                }
            }
        }
        for w in d.windows(2) {
            assert_eq!(w[1] % w[0], 0);
        }
    }

    #[test]
    fn textbook_examples() {
        check(
            &[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]],
            3,
            &[2, 6, 12],
        );
        check(&[vec![2, 0], vec![0, 3]], 2, &[1, 6]);
        check(&[vec![4, 0], vec![0, 6], vec![2, 2]], 2, &[2, 2]);
        check(&[vec![0, 0], vec![0, 0]], 2, &[]);
        check(&[vec![2, -1], vec![-1, 2]], 2, &[1, 3]);
    }
}
