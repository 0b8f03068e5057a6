//! Determinants of small rational matrices.

use num_traits::{One, Zero};

use crate::rational::Rational;

/// Determinant by Bareiss fraction-free elimination. Every division in the
/// recurrence is exact, so intermediate entries stay minors of the input.
pub fn determinant(matrix: &[Vec<Rational>]) -> Rational {
    let n = matrix.len();
    if n == 0 {
        return Rational::one();
    }
    assert!(matrix.iter().all(|row| row.len() == n), "matrix must be square");
    let mut m: Vec<Vec<Rational>> = matrix.to_vec();
    let mut sign = Rational::one();
    let mut prev = Rational::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return Rational::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    /// Leibniz expansion over all permutations.
    fn leibniz(m: &[Vec<Rational>]) -> Rational {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..n {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let n = m.len();
        perms(n)
            .into_iter()
            .map(|p| {
                let inversions = (0..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .filter(|&(i, j)| p[i] > p[j])
                    .count();
                let prod = (0..n).fold(Rational::one(), |acc, i| acc * &m[i][p[i]]);
                if inversions % 2 == 0 { prod } else { -prod }
            })
            .fold(Rational::zero(), |a, b| a + b)
    }

    #[test]
    fn small_cases() {
        assert_eq!(determinant(&[]), int(1));
        assert_eq!(determinant(&mat(&[&[5]])), int(5));
        assert_eq!(determinant(&mat(&[&[1, 2], &[3, 4]])), int(-2));
        assert_eq!(determinant(&mat(&[&[0, 1], &[1, 0]])), int(-1));
        assert_eq!(determinant(&mat(&[&[1, 2], &[2, 4]])), int(0));
    }

    #[test]
    fn agrees_with_leibniz() {
        let m = vec![
            vec![rat(1, 2), int(0), int(3), int(-1)],
            vec![int(0), int(0), rat(2, 3), int(4)],
            vec![int(2), int(1), int(1), int(0)],
            vec![int(-3), rat(5, 7), int(0), int(2)],
        ];
        assert_eq!(determinant(&m), leibniz(&m));
    }
}
