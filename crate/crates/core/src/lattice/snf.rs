//! Smith normal form over the integers with unimodular transforms.
//!
//! Pivot rule: the smallest nonzero absolute value in the active block,
//! first in row-major order. The rule is fixed so repeated runs on the same
//! input produce identical transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// `u * a * v == d`, with `u`, `v` unimodular and `d` diagonal with
/// `d[0] | d[1] | ...`, nonzero entries positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    u_inv: Option<IntMatrix>,
    v_inv: Option<IntMatrix>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        let n = self.d.rows().min(self.d.cols());
        (0..n).take_while(|&i| !self.d[(i, i)].is_zero()).count()
    }

    /// Diagonal entries `d[i][i]` for `i < min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// Nonzero diagonal entries (including ones).
    pub fn factors(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().filter(|x| !x.is_zero()).collect()
    }

    /// `u^-1`, available when requested through [`SnfOptions`].
    pub fn u_inv(&self) -> Option<&IntMatrix> {
        self.u_inv.as_ref()
    }

    pub fn v_inv(&self) -> Option<&IntMatrix> {
        self.v_inv.as_ref()
    }
}

/// Which transforms to accumulate.
#[derive(Clone, Copy, Debug)]
pub struct SnfOptions {
    pub u: bool,
    pub v: bool,
    pub u_inv: bool,
    pub v_inv: bool,
}

impl SnfOptions {
    pub const ALL: SnfOptions = SnfOptions {
        u: true,
        v: true,
        u_inv: true,
        v_inv: true,
    };
    pub const UV: SnfOptions = SnfOptions {
        u: true,
        v: true,
        u_inv: false,
        v_inv: false,
    };
}

pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    smith_normal_form_with(a, SnfOptions::UV)
}

pub fn smith_normal_form_with(a: &IntMatrix, opts: SnfOptions) -> SnfResult {
    let mut calc = SnfCalc::new(a.clone(), opts);
    calc.run();
    let (r, c) = a.shape();
    SnfResult {
        u: calc.u.unwrap_or_else(|| IntMatrix::zeros(r, r)),
        d: calc.a,
        v: calc.v.unwrap_or_else(|| IntMatrix::zeros(c, c)),
        u_inv: calc.u_inv,
        v_inv: calc.v_inv,
    }
}

/// Invariant factors only (nonzero diagonal entries of the normal form).
pub fn invariant_factors(a: &IntMatrix) -> Vec<BigInt> {
    let opts = SnfOptions {
        u: false,
        v: false,
        u_inv: false,
        v_inv: false,
    };
    smith_normal_form_with(a, opts).factors()
}

struct SnfCalc {
    a: IntMatrix,
    u: Option<IntMatrix>,
    u_inv: Option<IntMatrix>,
    v: Option<IntMatrix>,
    v_inv: Option<IntMatrix>,
}

impl SnfCalc {
    fn new(a: IntMatrix, opts: SnfOptions) -> Self {
        let (r, c) = a.shape();
        let id = |n, flag: bool| flag.then(|| IntMatrix::identity(n));
        SnfCalc {
            u: id(r, opts.u),
            u_inv: id(r, opts.u_inv),
            v: id(c, opts.v),
            v_inv: id(c, opts.v_inv),
            a,
        }
    }

    // Row operations act on u (left) and on u_inv from the right.
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap_rows(i, j);
        if let Some(u) = &mut self.u {
            u.swap_rows(i, j);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.swap_cols(i, j);
        }
    }

    /// row[dst] += k row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_row_multiple(dst, src, k);
        if let Some(u) = &mut self.u {
            u.add_row_multiple(dst, src, k);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.add_col_multiple(src, dst, &-k);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        if let Some(u) = &mut self.u {
            u.negate_row(i);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.negate_col(i);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap_cols(i, j);
        if let Some(v) = &mut self.v {
            v.swap_cols(i, j);
        }
        if let Some(vi) = &mut self.v_inv {
            vi.swap_rows(i, j);
        }
    }

    /// col[dst] += k col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_col_multiple(dst, src, k);
        if let Some(v) = &mut self.v {
            v.add_col_multiple(dst, src, k);
        }
        if let Some(vi) = &mut self.v_inv {
            vi.add_row_multiple(src, dst, &-k);
        }
    }

    /// Smallest nonzero |entry| in rows/cols >= t, row-major first.
    fn select_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let (r, c) = self.a.shape();
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..r {
            for j in t..c {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs();
                let better = match &best {
                    None => true,
                    Some((_, _, b)) => ax < *b,
                };
                if better {
                    if ax.is_one() {
                        return Some((i, j));
                    }
                    best = Some((i, j, ax));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn run(&mut self) {
        let (r, c) = self.a.shape();
        let n = r.min(c);
        for t in 0..n {
            let Some((pi, pj)) = self.select_pivot(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                self.clear_cross(t);
                // Divisibility: every remaining entry must be a multiple of the pivot.
                let p = self.a[(t, t)].clone();
                if p.abs().is_one() {
                    break;
                }
                let offender = (t + 1..r).find(|&i| {
                    (t + 1..c).any(|j| !self.a[(i, j)].is_multiple_of(&p))
                });
                match offender {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[(t, t)].is_negative() {
                self.negate_row(t);
            }
        }
    }

    /// Clears row t and column t outside the pivot, re-pivoting on the
    /// smallest remainder until both are zero.
    fn clear_cross(&mut self, t: usize) {
        let (r, c) = self.a.shape();
        loop {
            let p = self.a[(t, t)].clone();
            debug_assert!(!p.is_zero());
            let mut clean = true;
            for i in t + 1..r {
                if self.a[(i, t)].is_zero() {
                    continue;
                }
                let q = self.a[(i, t)].div_floor(&p);
                if !q.is_zero() {
                    self.add_row(i, t, &-q);
                }
                if !self.a[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..c {
                if self.a[(t, j)].is_zero() {
                    continue;
                }
                let q = self.a[(t, j)].div_floor(&p);
                if !q.is_zero() {
                    self.add_col(j, t, &-q);
                }
                if !self.a[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                return;
            }
            // Move the smallest nonzero remainder in the cross onto the pivot.
            let mut best: (BigInt, bool, usize) = (p.abs(), true, t);
            for i in t + 1..r {
                let x = self.a[(i, t)].abs();
                if !x.is_zero() && x < best.0 {
                    best = (x, true, i);
                }
            }
            for j in t + 1..c {
                let x = self.a[(t, j)].abs();
                if !x.is_zero() && x < best.0 {
                    best = (x, false, j);
                }
            }
            match best {
                (_, true, i) if i != t => self.swap_rows(t, i),
                (_, false, j) => self.swap_cols(t, j),
                _ => {}
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntMatrix) -> SnfResult {
        let s = smith_normal_form_with(a, SnfOptions::ALL);
        assert_eq!(&(&s.u * a) * &s.v, s.d);
        assert!(s.u.is_unimodular() && s.v.is_unimodular());
        assert!((&s.u * s.u_inv().unwrap()).is_identity());
        assert!((&s.v * s.v_inv().unwrap()).is_identity());
        assert!(s.d.is_diagonal());
        let diag = s.diagonal();
        for w in diag.windows(2) {
            if w[0].is_zero() {
                assert!(w[1].is_zero());
            } else {
                assert!(w[1].is_multiple_of(&w[0]));
            }
        }
        s
    }

    fn diag_i64(s: &SnfResult) -> Vec<i64> {
        use num_traits::ToPrimitive;
        s.diagonal().iter().map(|x| x.to_i64().unwrap()).collect()
    }

    #[test]
    fn identity_is_fixed() {
        let s = check(&IntMatrix::identity(3));
        assert!(s.d.is_identity());
    }

    #[test]
    fn diag_two_three() {
        let s = check(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(diag_i64(&s), vec![1, 6]);
    }

    #[test]
    fn rank_one_symmetric() {
        let s = check(&IntMatrix::from_rows(&[vec![4, 6], vec![6, 9]]));
        assert_eq!(diag_i64(&s), vec![1, 0]);
        assert_eq!(s.rank(), 1);
    }

    #[test]
    fn rectangular_and_empty() {
        let s = check(&IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]));
        assert_eq!(diag_i64(&s), vec![2, 6, 12]);
        let e = check(&IntMatrix::zeros(0, 3));
        assert_eq!(e.rank(), 0);
        let z = check(&IntMatrix::zeros(2, 3));
        assert_eq!(z.rank(), 0);
    }
}
