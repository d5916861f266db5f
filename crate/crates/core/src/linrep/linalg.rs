//! Exact linear algebra over `BigRational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Row vector times matrix.
pub fn row_times(v: &[Rational], m: &[Vec<Rational>]) -> Vec<Rational> {
    let cols = m.first().map_or(0, Vec::len);
    let mut out = vec![Rational::zero(); cols];
    for (x, row) in v.iter().zip(m) {
        if x.is_zero() {
            continue;
        }
        for (o, y) in out.iter_mut().zip(row) {
            if !y.is_zero() {
                *o += x * y;
            }
        }
    }
    out
}

/// Matrix times column vector.
pub fn times_col(m: &[Vec<Rational>], c: &[Rational]) -> Vec<Rational> {
    m.iter().map(|row| dot(row, c)).collect()
}

/// `a - s * b`, elementwise.
fn sub_scaled(a: &mut [Rational], s: &Rational, b: &[Rational]) {
    for (x, y) in a.iter_mut().zip(b) {
        if !y.is_zero() {
            *x -= s * y;
        }
    }
}

/// Rank by fraction-free (Bareiss) elimination on integer rows obtained by
/// clearing denominators. The pivot is the entry of largest magnitude in the
/// current column; ties go to the lowest row index.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| clear_denominators(r)).collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let mut best: Option<usize> = None;
        for i in r..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            if best.map_or(true, |b| m[i][c].abs() > m[b][c].abs()) {
                best = Some(i);
            }
        }
        let Some(p) = best else { continue };
        m.swap(r, p);
        for i in r + 1..m.len() {
            for j in c + 1..ncols {
                let v = (&m[r][c] * &m[i][j] - &m[i][c] * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

fn clear_denominators(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
}

/// An independent set of vectors kept alongside a reduced echelon form, so
/// that membership tests also yield the (unique) coefficients over the set.
#[derive(Debug, Clone)]
pub struct Span {
    dim: usize,
    basis: Vec<Vec<Rational>>,
    // (pivot column, echelon row with 1 at the pivot, row as a combination of `basis`)
    echelon: Vec<(usize, Vec<Rational>, Vec<Rational>)>,
}

impl Span {
    pub fn new(dim: usize) -> Self {
        Span { dim, basis: Vec::new(), echelon: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// The inserted independent vectors, in insertion order.
    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn into_basis(self) -> Vec<Vec<Rational>> {
        self.basis
    }

    /// Residual of `v` after elimination, and coefficients over the basis of the eliminated part.
    fn reduce(&self, v: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        assert_eq!(v.len(), self.dim, "vector dimension");
        let mut residual = v.to_vec();
        let mut coeffs = vec![Rational::zero(); self.basis.len()];
        for (pivot, row, combo) in &self.echelon {
            if residual[*pivot].is_zero() {
                continue;
            }
            let f = residual[*pivot].clone();
            sub_scaled(&mut residual, &f, row);
            for (c, x) in coeffs.iter_mut().zip(combo) {
                if !x.is_zero() {
                    *c += &f * x;
                }
            }
        }
        (residual, coeffs)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        is_zero_vec(&self.reduce(v).0)
    }

    /// Coefficients `c` with `v = Σ c[i] basis[i]`, or `None` if `v` is outside the span.
    pub fn express(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let (residual, coeffs) = self.reduce(v);
        is_zero_vec(&residual).then_some(coeffs)
    }

    /// Adds `v` if it is independent of the current basis; returns whether it was added.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let (mut residual, coeffs) = self.reduce(v);
        let Some(pivot) = residual.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let m = self.basis.len();
        // residual = v - Σ coeffs[i] basis[i]
        let mut combo: Vec<Rational> = coeffs.into_iter().map(|c| -c).collect();
        combo.push(Rational::one());
        let scale = residual[pivot].recip();
        for x in residual.iter_mut().chain(combo.iter_mut()) {
            *x *= &scale;
        }
        for (_, _, c) in &mut self.echelon {
            c.push(Rational::zero());
        }
        self.echelon.push((pivot, residual, combo));
        self.basis.push(v.to_vec());
        debug_assert_eq!(self.basis.len(), m + 1);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn rv(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| r(x)).collect()
    }

    #[test]
    fn bareiss_rank() {
        assert_eq!(rank(&[rv(&[1, 2]), rv(&[2, 4])]), 1);
        assert_eq!(rank(&[rv(&[1, 2]), rv(&[2, 5])]), 2);
        assert_eq!(rank(&[rv(&[0, 0, 0])]), 0);
        assert_eq!(rank(&[rv(&[1, 0, 1]), rv(&[0, 1, 1]), rv(&[1, 1, 2]), rv(&[0, 0, 3])]), 3);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn span_expresses_dependents() {
        let mut s = Span::new(2);
        assert!(s.insert(&rv(&[2, 4])));
        assert!(s.insert(&rv(&[-2, 18])));
        assert!(!s.insert(&rv(&[8, -2])));
        let c = s.express(&rv(&[8, -2])).unwrap();
        let half = |p: i64, q: i64| Rational::new(p.into(), q.into());
        assert_eq!(c, vec![half(35, 11), half(-9, 11)]);
    }

    #[test]
    fn span_rank_agrees_with_bareiss() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        for _ in 0..200 {
            let dim = rng.gen_range(1..7);
            let count = rng.gen_range(0..9);
            let rows: Vec<Vec<Rational>> = (0..count)
                .map(|_| (0..dim).map(|_| Rational::new(rng.gen_range(-2..3).into(), rng.gen_range(1..4).into())).collect())
                .collect();
            let mut s = Span::new(dim);
            for row in &rows {
                s.insert(row);
            }
            assert_eq!(s.rank(), rank(&rows));
            for row in &rows {
                let c = s.express(row).unwrap();
                let mut back = vec![Rational::zero(); dim];
                for (ci, b) in c.iter().zip(s.basis()) {
                    for (x, y) in back.iter_mut().zip(b) {
                        *x += ci * y;
                    }
                }
                assert_eq!(&back, row);
            }
        }
    }
}
