//! LLL reduction (δ = 3/4) of small integer lattices, in the all-integer
//! formulation: Gram–Schmidt data is kept as the integers dᵢ and λᵢⱼ, so no
//! rational arithmetic is needed.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Largest supported lattice dimension.
pub const MAX_DIM: usize = 8;

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Nearest integer to a / b for b > 0 (ties rounded up).
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    (a * &two + b).div_floor(&(b * two))
}

/// LLL-reduce the rows of `basis`. Rows must be linearly independent and
/// there may be at most eight rows and eight columns.
pub fn lattice_reduce_small(basis: &[Vec<BigInt>]) -> Result<Vec<Vec<BigInt>>> {
    let n = basis.len();
    let m = basis.first().map_or(0, Vec::len);
    if n > MAX_DIM || m > MAX_DIM {
        return Err(Error::DimensionTooLarge(n.max(m)));
    }
    if basis.iter().any(|r| r.len() != m) {
        return Err(Error::InvalidInput("basis rows have different lengths".into()));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut reducer = Lll::new(basis.to_vec());
    reducer.run()?;
    Ok(reducer.b)
}

/// State of the integral LLL algorithm; indices are 1-based internally
/// to match the textbook recurrences (`b[k-1]` is vector k).
struct Lll {
    b: Vec<Vec<BigInt>>,
    /// d[0] = 1, d[i] = Gram determinant of the first i vectors.
    d: Vec<BigInt>,
    /// lambda[i][j] for 1 ≤ j < i ≤ n.
    lambda: Vec<Vec<BigInt>>,
}

impl Lll {
    fn new(b: Vec<Vec<BigInt>>) -> Self {
        let n = b.len();
        Lll {
            b,
            d: vec![BigInt::zero(); n + 1],
            lambda: vec![vec![BigInt::zero(); n + 1]; n + 1],
        }
    }

    fn vec(&self, i: usize) -> &[BigInt] {
        &self.b[i - 1]
    }

    fn run(&mut self) -> Result<()> {
        let n = self.b.len();
        self.d[0] = BigInt::from(1);
        self.d[1] = dot(self.vec(1), self.vec(1));
        if self.d[1].is_zero() {
            return Err(Error::InvalidInput("basis rows are linearly dependent".into()));
        }
        let mut k = 2;
        let mut k_max = 1;
        while k <= n {
            if k > k_max {
                k_max = k;
                for j in 1..=k {
                    let mut u = dot(self.vec(k), self.vec(j));
                    for i in 1..j {
                        u = (&self.d[i] * &u - &self.lambda[k][i] * &self.lambda[j][i]) / &self.d[i - 1];
                    }
                    if j < k {
                        self.lambda[k][j] = u;
                    } else {
                        if u.is_zero() {
                            return Err(Error::InvalidInput("basis rows are linearly dependent".into()));
                        }
                        self.d[k] = u;
                    }
                }
            }
            loop {
                self.red(k, k - 1);
                let lhs = BigInt::from(4) * &self.d[k] * &self.d[k - 2];
                let lam = &self.lambda[k][k - 1];
                let rhs = BigInt::from(3) * &self.d[k - 1] * &self.d[k - 1] - BigInt::from(4) * lam * lam;
                if lhs < rhs {
                    self.swap(k, k_max);
                    k = (k - 1).max(2);
                } else {
                    break;
                }
            }
            for l in (1..k - 1).rev() {
                self.red(k, l);
            }
            k += 1;
        }
        Ok(())
    }

    fn red(&mut self, k: usize, l: usize) {
        let two_abs = self.lambda[k][l].abs() * 2;
        if two_abs <= self.d[l] {
            return;
        }
        let q = round_div(&self.lambda[k][l], &self.d[l]);
        let bl = self.b[l - 1].clone();
        for (x, y) in self.b[k - 1].iter_mut().zip(&bl) {
            *x -= &q * y;
        }
        let t = &q * &self.d[l];
        self.lambda[k][l] -= t;
        for i in 1..l {
            let t = &q * &self.lambda[l][i];
            self.lambda[k][i] -= t;
        }
    }

    fn swap(&mut self, k: usize, k_max: usize) {
        self.b.swap(k - 1, k - 2);
        for j in 1..k - 1 {
            let t = std::mem::take(&mut self.lambda[k][j]);
            self.lambda[k][j] = std::mem::replace(&mut self.lambda[k - 1][j], t);
        }
        let lam = self.lambda[k][k - 1].clone();
        let big_b = (&self.d[k - 2] * &self.d[k] + &lam * &lam) / &self.d[k - 1];
        for i in k + 1..=k_max {
            let t = self.lambda[i][k].clone();
            let new_ik = (&self.d[k] * &self.lambda[i][k - 1] - &lam * &t) / &self.d[k - 1];
            let new_ik1 = (&big_b * &t + &lam * &new_ik) / &self.d[k];
            self.lambda[i][k] = new_ik;
            self.lambda[i][k - 1] = new_ik1;
        }
        self.d[k - 1] = big_b;
    }
}

/// Determinant of a square integer matrix by fraction-free (Bareiss)
/// elimination.
pub fn determinant(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let mut prev = BigInt::from(1);
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Absolute value of the determinant of a square integer matrix.
pub fn abs_determinant(rows: &[Vec<BigInt>]) -> BigInt {
    determinant(rows).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
    }

    #[test]
    fn identity_is_reduced() {
        let id = m(&[&[1, 0], &[0, 1]]);
        assert_eq!(lattice_reduce_small(&id).unwrap(), id);
    }

    #[test]
    fn shears_are_undone() {
        let r = lattice_reduce_small(&m(&[&[1, 0], &[10, 1]])).unwrap();
        assert!(r.iter().any(|v| v.iter().all(|c| c.abs() <= BigInt::from(1))));
        assert_eq!(abs_determinant(&r), BigInt::from(1));
    }

    #[test]
    fn signed_determinants() {
        assert_eq!(determinant(&m(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(determinant(&m(&[&[2, 3, 1], &[4, 1, 5], &[0, 2, 7]])), BigInt::from(-82));
    }

    #[test]
    fn rejects_large_or_dependent() {
        let big = vec![vec![BigInt::from(1); 9]; 9];
        assert_eq!(lattice_reduce_small(&big), Err(Error::DimensionTooLarge(9)));
        assert!(lattice_reduce_small(&m(&[&[1, 2], &[2, 4]])).is_err());
    }
}
