use crate::exactla::Matrix;
use crate::scalar::IntScalar;

/// `U · A · V = S` with `U`, `V` unimodular and `S` in Smith normal form.
///
/// The inverses of `U` and `V` are tracked alongside so that cokernel
/// generators can be pulled back without a second elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition<T> {
    pub u: Matrix<T>,
    pub s: Matrix<T>,
    pub v: Matrix<T>,
    pub u_inv: Matrix<T>,
    pub v_inv: Matrix<T>,
}

impl<T: IntScalar> SmithDecomposition<T> {
    /// Diagonal entries `d₁ | d₂ | …`, zeros last.
    pub fn diagonal(&self) -> Vec<T> {
        (0..self.s.rows().min(self.s.cols())).map(|i| self.s[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|d| !d.is_zero()).count()
    }
}

struct Reducer<T> {
    a: Matrix<T>,
    u: Matrix<T>,
    u_inv: Matrix<T>,
    v: Matrix<T>,
    v_inv: Matrix<T>,
}

impl<T: IntScalar> Reducer<T> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    /// row[dst] += k row[src]; the inverse picks up col[src] -= k col[dst].
    fn add_row(&mut self, dst: usize, src: usize, k: &T) {
        self.a.add_row_multiple(dst, src, k);
        self.u.add_row_multiple(dst, src, k);
        self.u_inv.add_col_multiple(src, dst, &-k.clone());
    }

    fn add_col(&mut self, dst: usize, src: usize, k: &T) {
        self.a.add_col_multiple(dst, src, k);
        self.v.add_col_multiple(dst, src, k);
        self.v_inv.add_row_multiple(src, dst, &-k.clone());
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Least nonzero |entry| in the trailing block; ties go to the smallest
    /// row, then the smallest column.
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, T)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = self.a[(i, j)].abs();
                if x.is_zero() {
                    continue;
                }
                if best.as_ref().is_none_or(|(_, _, b)| x < *b) {
                    best = Some((i, j, x));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn run(&mut self) {
        let (m, n) = (self.a.rows(), self.a.cols());
        for t in 0..m.min(n) {
            loop {
                let Some((pi, pj)) = self.pivot(t) else { return };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                let p = self.a[(t, t)].clone();

                let mut clean = true;
                for i in t + 1..m {
                    let q = self.a[(i, t)].clone() / p.clone();
                    self.add_row(i, t, &-q);
                    clean &= self.a[(i, t)].is_zero();
                }
                for j in t + 1..n {
                    let q = self.a[(t, j)].clone() / p.clone();
                    self.add_col(j, t, &-q);
                    clean &= self.a[(t, j)].is_zero();
                }
                if !clean {
                    continue;
                }
                // Pivot must divide the whole trailing block.
                let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !self.a[(i, j)].is_multiple_of(&p)));
                match offender {
                    Some(i) => self.add_row(t, i, &T::one()),
                    None => break,
                }
            }
            if self.a[(t, t)].is_negative() {
                self.negate_row(t);
            }
        }
    }
}

/// Smith normal form with transformation matrices.
///
/// Deterministic: the pivot rule is fixed, so equal inputs give equal outputs.
pub fn smith_normal_form<T: IntScalar>(a: &Matrix<T>) -> SmithDecomposition<T> {
    let (m, n) = (a.rows(), a.cols());
    let mut r = Reducer {
        a: a.clone(),
        u: Matrix::identity(m),
        u_inv: Matrix::identity(m),
        v: Matrix::identity(n),
        v_inv: Matrix::identity(n),
    };
    r.run();
    SmithDecomposition { u: r.u, s: r.a, v: r.v, u_inv: r.u_inv, v_inv: r.v_inv }
}
