//! Smith and Hermite normal forms, integer kernels and saturation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{abs, IntMatrix};

/// Output of [`smith_decompose`]: `u * m * v == d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    /// The nonzero diagonal entries of `d`, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d[(i, i)].clone()).take_while(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Smith normal form with unimodular transforms.
///
/// The pivot is always the absolutely smallest nonzero entry of the
/// remaining block, ties broken by the lexicographic order of `(row, col)`.
pub fn smith_decompose(m: &IntMatrix) -> Smith {
    let (r, c) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    for t in 0..r.min(c) {
        loop {
            let mut best: Option<(usize, usize, BigInt)> = None;
            for i in t..r {
                for j in t..c {
                    let x = &a[(i, j)];
                    if x.is_zero() {
                        continue;
                    }
                    let ax = abs(x);
                    if best.as_ref().is_none_or(|(_, _, b)| ax < *b) {
                        best = Some((i, j, ax));
                    }
                }
            }
            let Some((pi, pj, _)) = best else {
                return Smith { u, d: a, v };
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);
            let mut clean = true;
            for i in t + 1..r {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -(&a[(i, t)] / &a[(t, t)]);
                a.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                if !a[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..c {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -(&a[(t, j)] / &a[(t, t)]);
                a.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                if !a[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let p = a[(t, t)].clone();
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !a[(i, j)].is_multiple_of(&p)));
            if let Some(i) = bad {
                let one = BigInt::one();
                a.add_row_multiple(t, i, &one);
                u.add_row_multiple(t, i, &one);
                continue;
            }
            break;
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    Smith { u, d: a, v }
}

/// Row-style Hermite normal form: returns `(h, u)` with `u * m == h`,
/// `u` unimodular, `h` in row echelon form with positive pivots, entries
/// above each pivot reduced into `[0, pivot)` and zero rows at the bottom.
pub fn hermite_decompose(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (r, c) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut cur = 0;
    for col in 0..c {
        if cur == r {
            break;
        }
        loop {
            let mut best: Option<(usize, BigInt)> = None;
            for i in cur..r {
                let x = &a[(i, col)];
                if !x.is_zero() {
                    let ax = abs(x);
                    if best.as_ref().is_none_or(|(_, b)| ax < *b) {
                        best = Some((i, ax));
                    }
                }
            }
            let Some((pi, _)) = best else { break };
            a.swap_rows(cur, pi);
            u.swap_rows(cur, pi);
            let mut done = true;
            for i in cur + 1..r {
                if a[(i, col)].is_zero() {
                    continue;
                }
                let q = -(&a[(i, col)] / &a[(cur, col)]);
                a.add_row_multiple(i, cur, &q);
                u.add_row_multiple(i, cur, &q);
                if !a[(i, col)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[(cur, col)].is_zero() {
            continue;
        }
        if a[(cur, col)].is_negative() {
            a.negate_row(cur);
            u.negate_row(cur);
        }
        let p = a[(cur, col)].clone();
        for i in 0..cur {
            let q = -a[(i, col)].div_floor(&p);
            a.add_row_multiple(i, cur, &q);
            u.add_row_multiple(i, cur, &q);
        }
        cur += 1;
    }
    (a, u)
}

/// Hermite normal form with zero rows removed.
pub fn hermite_basis(m: &IntMatrix) -> IntMatrix {
    let (h, _) = hermite_decompose(m);
    let keep: Vec<usize> = (0..h.rows()).filter(|&i| h.row(i).iter().any(|x| !x.is_zero())).collect();
    h.select_rows(&keep)
}

/// Saturated integer basis (as rows, in Hermite form) of `{x : m x = 0}`.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let smith = smith_decompose(m);
    let rank = smith.rank();
    let n = m.cols();
    let cols: Vec<usize> = (rank..n).collect();
    let basis = smith.v.select_cols(&cols).transpose();
    if basis.rows() == 0 {
        return IntMatrix::zeros(0, n);
    }
    hermite_basis(&basis)
}

/// Saturated integer basis of `{x : x m = 0}`.
pub fn left_kernel_basis(m: &IntMatrix) -> IntMatrix {
    kernel_basis(&m.transpose())
}

/// Saturation `span_Q(rows) ∩ Z^n` of the lattice spanned by the rows.
pub fn saturation(m: &IntMatrix) -> IntMatrix {
    let n = m.cols();
    if m.rows() == 0 || m.is_zero() {
        return IntMatrix::zeros(0, n);
    }
    let perp = kernel_basis(m);
    if perp.rows() == 0 {
        return IntMatrix::identity(n);
    }
    kernel_basis(&perp)
}

/// Solves `x * basis = target` over the integers for a row basis in echelon
/// form, returning the coefficient vector when `target` lies in the lattice.
pub fn echelon_coordinates(basis: &IntMatrix, target: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut rest = target.to_vec();
    let mut coeffs = vec![BigInt::zero(); basis.rows()];
    for (k, coeff) in coeffs.iter_mut().enumerate() {
        let row = basis.row(k);
        let p = row.iter().position(|x| !x.is_zero())?;
        let (q, rem) = rest[p].div_rem(&row[p]);
        if !rem.is_zero() {
            return None;
        }
        if !q.is_zero() {
            for (x, b) in rest.iter_mut().zip(row) {
                *x -= &q * b;
            }
        }
        *coeff = q;
    }
    if rest.iter().all(Zero::is_zero) {
        Some(coeffs)
    } else {
        None
    }
}

/// Integer right inverse `r` with `m * r = identity` for a surjective `m`.
pub fn right_inverse(m: &IntMatrix) -> Option<IntMatrix> {
    let smith = smith_decompose(m);
    let f = smith.invariant_factors();
    if f.len() != m.rows() || f.iter().any(|x| !x.is_one()) {
        return None;
    }
    let cols: Vec<usize> = (0..m.rows()).collect();
    smith.v.select_cols(&cols).mul(&smith.u).ok()
}
