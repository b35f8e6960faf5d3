//! Hermite and Smith normal forms over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// Column Hermite normal form `h = m * u` with `u` unimodular.
#[derive(Clone, Debug)]
pub struct Hermite {
    pub h: IntMatrix,
    pub u: IntMatrix,
    /// Number of nonzero columns of `h`; they come first.
    pub rank: usize,
    /// Row index of the pivot of each nonzero column.
    pub pivot_rows: Vec<usize>,
}

/// Computes the column Hermite normal form.
///
/// The nonzero columns of `h` form a staircase: column `k` is zero above its pivot row,
/// the pivot is positive and the entries to its left in the pivot row lie in `[0, pivot)`.
/// This form is unique for the column span of `m`. The trailing columns of `u` span the
/// integer kernel of `m`.
pub fn hermite_normal_form(m: &IntMatrix) -> Hermite {
    let (rows, cols) = (m.rows(), m.cols());
    let mut h = m.clone();
    let mut u = IntMatrix::identity(cols);
    let mut k = 0;
    let mut pivot_rows = Vec::new();
    for i in 0..rows {
        if k == cols {
            break;
        }
        loop {
            let piv = (k..cols).filter(|&j| !h[(i, j)].is_zero()).min_by(|&a, &b| h[(i, a)].abs().cmp(&h[(i, b)].abs()));
            let Some(piv) = piv else { break };
            h.swap_cols(k, piv);
            u.swap_cols(k, piv);
            let mut done = true;
            for j in k + 1..cols {
                if h[(i, j)].is_zero() {
                    continue;
                }
                let q = -h[(i, j)].div_floor(&h[(i, k)]);
                h.add_col_multiple(j, k, &q);
                u.add_col_multiple(j, k, &q);
                if !h[(i, j)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(i, k)].is_zero() {
            continue;
        }
        if h[(i, k)].is_negative() {
            h.negate_col(k);
            u.negate_col(k);
        }
        for j in 0..k {
            let q = -h[(i, j)].div_floor(&h[(i, k)]);
            h.add_col_multiple(j, k, &q);
            u.add_col_multiple(j, k, &q);
        }
        pivot_rows.push(i);
        k += 1;
    }
    Hermite { h, u, rank: k, pivot_rows }
}

/// Integer kernel of `m` as the columns of a matrix. The basis is saturated.
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    let herm = hermite_normal_form(m);
    let idx: Vec<usize> = (herm.rank..m.cols()).collect();
    herm.u.select_columns(&idx)
}

/// Smith normal form `s = u * m * v` with `u`, `v` unimodular and `d1 | d2 | ...`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

impl Smith {
    /// The diagonal entries `s[i][i]` for `i < min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols())).map(|i| self.s[(i, i)].clone()).collect()
    }
}

struct SmithState {
    s: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
}

impl SmithState {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.s.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.s.swap_cols(a, b);
        self.v.swap_cols(a, b);
    }

    /// row[dst] += q * row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.s.add_row_multiple(dst, src, q);
        self.u.add_row_multiple(dst, src, q);
        self.u_inv.add_col_multiple(src, dst, &-q);
    }

    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.s.add_col_multiple(dst, src, q);
        self.v.add_col_multiple(dst, src, q);
    }

    fn negate_row(&mut self, i: usize) {
        self.s.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }
}

/// Computes the Smith normal form using the entry of least absolute value as pivot.
pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let (rows, cols) = (m.rows(), m.cols());
    let mut st = SmithState { s: m.clone(), u: IntMatrix::identity(rows), u_inv: IntMatrix::identity(rows), v: IntMatrix::identity(cols) };
    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = &st.s[(i, j)];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < st.s[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        st.swap_rows(t, bi);
        st.swap_cols(t, bj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if st.s[(i, t)].is_zero() {
                    continue;
                }
                let q = -st.s[(i, t)].div_floor(&st.s[(t, t)]);
                st.add_row(i, t, &q);
                if !st.s[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if st.s[(t, j)].is_zero() {
                    continue;
                }
                let q = -st.s[(t, j)].div_floor(&st.s[(t, t)]);
                st.add_col(j, t, &q);
                if !st.s[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // Bring the smallest remainder in row t or column t to the pivot.
                let mut best = (t, t);
                for i in t + 1..rows {
                    if !st.s[(i, t)].is_zero() && st.s[(i, t)].abs() < st.s[best].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !st.s[(t, j)].is_zero() && st.s[(t, j)].abs() < st.s[best].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    st.swap_rows(t, best.0);
                } else if best.1 != t {
                    st.swap_cols(t, best.1);
                }
                continue;
            }
            let pivot = st.s[(t, t)].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !st.s[(i, j)].is_multiple_of(&pivot)));
            match bad {
                Some(i) => st.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if st.s[(t, t)].is_negative() {
            st.negate_row(t);
        }
        t += 1;
    }
    Smith { s: st.s, u: st.u, u_inv: st.u_inv, v: st.v, rank: t }
}

/// Invariant factors (diagonal of the Smith form, zeros omitted).
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    smith_normal_form(m).diagonal().into_iter().filter(|d| !d.is_zero()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::matrix::int;

    #[test]
    fn hnf_of_small_matrix() {
        let m = IntMatrix::from_i64_rows(&[vec![2, 4], vec![6, 8]]);
        let h = hermite_normal_form(&m);
        assert_eq!(m.mul(&h.u).unwrap(), h.h);
        assert_eq!(h.rank, 2);
        assert_eq!(h.h, IntMatrix::from_i64_rows(&[vec![2, 0], vec![2, 4]]));
    }

    #[test]
    fn kernel_is_annihilated() {
        let m = IntMatrix::from_i64_rows(&[vec![1, 2, 3], vec![2, 4, 6]]);
        let k = integer_kernel(&m);
        assert_eq!(k.cols(), 2);
        assert!(m.mul(&k).unwrap().is_zero());
    }

    #[test]
    fn snf_examples() {
        let m = IntMatrix::from_i64_rows(&[vec![2, 4], vec![6, 8]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.diagonal(), vec![int(2), int(4)]);
        assert_eq!(s.u.mul(&m).unwrap().mul(&s.v).unwrap(), s.s);
        let d = IntMatrix::from_i64_rows(&[vec![6, 0], vec![0, 4]]);
        assert_eq!(smith_normal_form(&d).diagonal(), vec![int(2), int(12)]);
        assert_eq!(s.u.mul(&s.u_inv).unwrap(), IntMatrix::identity(2));
    }
}
