use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Matrix = Vec<Vec<BigInt>>;

/// `U * A * V = D` with `U`, `V` unimodular and `D` diagonal, each diagonal
/// entry dividing the next.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: Matrix,
    pub v: Matrix,
    pub d: Matrix,
}

impl SmithForm {
    /// Non-zero diagonal entries, all positive.
    pub fn invariants(&self) -> Vec<BigInt> {
        let k = self.d.len().min(self.d.first().map_or(0, Vec::len));
        (0..k)
            .map(|i| self.d[i][i].clone())
            .filter(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariants().len()
    }

    /// Recomputes `U * A * V` and compares with `D`.
    pub fn certifies(&self, a: &Matrix) -> bool {
        multiply(&multiply(&self.u, a), &self.v) == self.d
            && self
                .d
                .iter()
                .enumerate()
                .all(|(i, row)| row.iter().enumerate().all(|(j, x)| i == j || x.is_zero()))
            && self
                .invariants()
                .windows(2)
                .all(|w| (&w[1] % &w[0]).is_zero())
    }
}

pub fn to_big(rows: &[Vec<i64>]) -> Matrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn multiply(a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

/// Smith normal form with transforms, for an `m x n` matrix given row-wise.
/// Every row must have length `n`; `n` is taken from the first row.
pub fn smith_form(a: &Matrix) -> SmithForm {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut d = a.clone();
    let mut u = identity(m);
    let mut v = identity(n);

    let mut t = 0;
    while t < m.min(n) {
        // pivot: smallest non-zero entry in the remaining block
        let pivot = (t..m)
            .flat_map(|i| (t..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !d[i][j].is_zero())
            .min_by(|&(i, j), &(k, l)| d[i][j].abs().cmp(&d[k][l].abs()));
        let Some((pi, pj)) = pivot else { break };
        d.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut d, t, pj);
        swap_cols(&mut v, t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if d[i][t].is_zero() {
                    continue;
                }
                let q = d[i][t].div_floor(&d[t][t]);
                add_row(&mut d, i, t, &-&q);
                add_row(&mut u, i, t, &-&q);
                if !d[i][t].is_zero() {
                    d.swap(t, i);
                    u.swap(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..n {
                if d[t][j].is_zero() {
                    continue;
                }
                let q = d[t][j].div_floor(&d[t][t]);
                add_col(&mut d, j, t, &-&q);
                add_col(&mut v, j, t, &-&q);
                if !d[t][j].is_zero() {
                    swap_cols(&mut d, t, j);
                    swap_cols(&mut v, t, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // pivot must divide the rest of the block
            let bad = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !(&d[i][j] % &d[t][t]).is_zero());
            match bad {
                Some((i, _)) => {
                    add_row(&mut d, t, i, &BigInt::one());
                    add_row(&mut u, t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d[t][t].is_negative() {
            for x in d[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
        t += 1;
    }
    SmithForm { u, v, d }
}

fn swap_cols(a: &mut Matrix, i: usize, j: usize) {
    if i != j {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
    }
}

/// `row[target] += k * row[source]`.
fn add_row(a: &mut Matrix, target: usize, source: usize, k: &BigInt) {
    if k.is_zero() {
        return;
    }
    let src = a[source].clone();
    for (x, s) in a[target].iter_mut().zip(src) {
        *x += k * s;
    }
}

/// `col[target] += k * col[source]`.
fn add_col(a: &mut Matrix, target: usize, source: usize, k: &BigInt) {
    if k.is_zero() {
        return;
    }
    for row in a.iter_mut() {
        let s = row[source].clone();
        row[target] += k * s;
    }
}

/// Invariant factors of an integer matrix.
pub fn smith_normal_form(rows: &[Vec<i64>]) -> Vec<BigInt> {
    let a = to_big(rows);
    let s = smith_form(&a);
    debug_assert!(s.certifies(&a), "Smith form certificate failed");
    s.invariants()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_examples() {
        assert_eq!(smith_normal_form(&[vec![2, 0], vec![0, 0]]), ints(&[2]));
        assert_eq!(smith_normal_form(&[vec![2, 4], vec![6, 8]]), ints(&[2, 4]));
        assert!(smith_normal_form(&[vec![0, 0, 0], vec![0, 0, 0]]).is_empty());
        assert_eq!(smith_normal_form(&[vec![4, 0], vec![0, 6]]), ints(&[2, 12]));
        assert!(smith_normal_form(&[]).is_empty());
    }

    fn gcd_of_minors(a: &[Vec<i64>], k: usize) -> i64 {
        let (m, n) = (a.len(), a[0].len());
        let mut g = 0i64;
        for rows in subsets(m, k) {
            for cols in subsets(n, k) {
                let sub: Vec<Vec<i64>> = rows
                    .iter()
                    .map(|&i| cols.iter().map(|&j| a[i][j]).collect())
                    .collect();
                g = g.gcd(&det(&sub));
            }
        }
        g
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = subsets(n - 1, k);
        for mut s in subsets(n - 1, k - 1) {
            s.push(n - 1);
            out.push(s);
        }
        out
    }

    fn det(a: &[Vec<i64>]) -> i64 {
        match a.len() {
            0 => 1,
            1 => a[0][0],
            n => (0..n)
                .map(|j| {
                    let minor: Vec<Vec<i64>> = a[1..]
                        .iter()
                        .map(|r| {
                            r.iter()
                                .enumerate()
                                .filter(|&(c, _)| c != j)
                                .map(|(_, &x)| x)
                                .collect()
                        })
                        .collect();
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    sign * a[0][j] * det(&minor)
                })
                .sum(),
        }
    }

    proptest! {
        #[test]
        fn products_of_invariants_are_minor_gcds(
            m in 1usize..4, n in 1usize..4,
            seed in proptest::collection::vec(-9i64..10, 9)
        ) {
            let a: Vec<Vec<i64>> = (0..m).map(|i| (0..n).map(|j| seed[i * 3 + j]).collect()).collect();
            let big = to_big(&a);
            let s = smith_form(&big);
            prop_assert!(s.certifies(&big));
            let inv = s.invariants();
            let mut prod = BigInt::one();
            for k in 1..=m.min(n) {
                let g = gcd_of_minors(&a, k);
                if k <= inv.len() {
                    prod *= &inv[k - 1];
                    prop_assert_eq!(prod.clone(), BigInt::from(g));
                } else {
                    prop_assert_eq!(g, 0);
                }
            }
        }
    }
}
