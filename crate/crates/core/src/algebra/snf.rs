//! Smith normal form over the integers, dense (with transforms) and sparse
//! (invariant factors only).

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{abs_min_nonzero, gcd_transform, IntegerMatrix};
use crate::error::{Error, Result};

/// `U * m * V = D` with `U`, `V` unimodular and `D` diagonal, `d1 | d2 | ...`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries, all positive.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.d.diagonal().into_iter().filter(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let mut d = m.clone();
    let mut u = IntegerMatrix::identity(m.rows());
    let mut v = IntegerMatrix::identity(m.cols());
    reduce(&mut d, Some((&mut u, &mut v)));
    SmithForm { u, d, v }
}

/// Diagonal of the Smith form without accumulating transforms.
pub fn smith_diagonal(m: &IntegerMatrix) -> Vec<BigInt> {
    let mut d = m.clone();
    reduce(&mut d, None);
    d.diagonal().into_iter().filter(|x| !x.is_zero()).collect()
}

fn reduce(d: &mut IntegerMatrix, mut transforms: Option<(&mut IntegerMatrix, &mut IntegerMatrix)>) {
    let (rows, cols) = (d.rows(), d.cols());
    let n = rows.min(cols);
    for t in 0..n {
        let Some((pi, pj)) = abs_min_nonzero(
            (t..rows).flat_map(|i| (t..cols).map(move |j| (i, j))).map(|(i, j)| (i, j, &d[(i, j)])),
        ) else {
            break;
        };
        d.swap_rows(t, pi);
        d.swap_cols(t, pj);
        if let Some((u, v)) = transforms.as_mut() {
            u.swap_rows(t, pi);
            v.swap_cols(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let (a, b) = (d[(t, t)].clone(), d[(i, t)].clone());
                if b.is_multiple_of(&a) {
                    let q = -(&b / &a);
                    d.add_row_multiple(i, t, &q);
                    if let Some((u, _)) = transforms.as_mut() {
                        u.add_row_multiple(i, t, &q);
                    }
                } else {
                    let g = gcd_transform(&a, &b);
                    d.combine_rows(t, i, &g);
                    if let Some((u, _)) = transforms.as_mut() {
                        u.combine_rows(t, i, &g);
                    }
                }
            }
            for j in t + 1..cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let (a, b) = (d[(t, t)].clone(), d[(t, j)].clone());
                if b.is_multiple_of(&a) {
                    let q = -(&b / &a);
                    d.add_col_multiple(j, t, &q);
                    if let Some((_, v)) = transforms.as_mut() {
                        v.add_col_multiple(j, t, &q);
                    }
                } else {
                    let g = gcd_transform(&a, &b);
                    d.combine_cols(t, j, &g);
                    if let Some((_, v)) = transforms.as_mut() {
                        v.combine_cols(t, j, &g);
                    }
                    dirty = true;
                }
            }
            if dirty || (t + 1..rows).any(|i| !d[(i, t)].is_zero()) {
                continue;
            }
            // divisibility chain: fold a offending row into the pivot row
            let p = d[(t, t)].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !d[(i, j)].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    d.add_row_multiple(t, i, &BigInt::one());
                    if let Some((u, _)) = transforms.as_mut() {
                        u.add_row_multiple(t, i, &BigInt::one());
                    }
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            if let Some((u, _)) = transforms.as_mut() {
                u.negate_row(t);
            }
        }
    }
}

/// Witness for `m * w = v` when `v` lies in the integer column span of `m`.
pub fn in_image(m: &IntegerMatrix, v: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if v.len() != m.rows() {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} against a matrix with {} rows",
            v.len(),
            m.rows()
        )));
    }
    let snf = smith_normal_form(m);
    let y = snf.u.mul_vec(v);
    let diag = snf.d.diagonal();
    let mut z = vec![BigInt::zero(); m.cols()];
    for (i, yi) in y.iter().enumerate() {
        let di = diag.get(i).cloned().unwrap_or_else(BigInt::zero);
        if di.is_zero() {
            if !yi.is_zero() {
                return Ok(None);
            }
        } else {
            let (q, r) = yi.div_rem(&di);
            if !r.is_zero() {
                return Ok(None);
            }
            z[i] = q;
        }
    }
    Ok(Some(snf.v.mul_vec(&z)))
}

/// Sparse integer matrix stored by columns, used for boundary-style matrices
/// whose Smith form is dominated by unit pivots.
#[derive(Clone, Debug, Default)]
pub struct SparseIntegerMatrix {
    rows: usize,
    columns: Vec<BTreeMap<usize, BigInt>>,
}

impl SparseIntegerMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseIntegerMatrix {
            rows,
            columns: vec![BTreeMap::new(); cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    /// Adds `value` to entry `(i, j)`.
    pub fn add(&mut self, i: usize, j: usize, value: BigInt) {
        assert!(i < self.rows, "row {i} out of range");
        if value.is_zero() {
            return;
        }
        let col = &mut self.columns[j];
        let entry = col.entry(i).or_insert_with(BigInt::zero);
        *entry += value;
        if entry.is_zero() {
            col.remove(&i);
        }
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.columns[j].get(&i).cloned().unwrap_or_default()
    }

    pub fn column(&self, j: usize) -> &BTreeMap<usize, BigInt> {
        &self.columns[j]
    }

    pub fn to_dense(&self) -> IntegerMatrix {
        let mut m = IntegerMatrix::zeros(self.rows, self.cols());
        for (j, col) in self.columns.iter().enumerate() {
            for (&i, v) in col {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn from_dense(m: &IntegerMatrix) -> Self {
        let mut s = Self::new(m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if !m[(i, j)].is_zero() {
                    s.add(i, j, m[(i, j)].clone());
                }
            }
        }
        s
    }

    /// Nonzero invariant factors (positive, in divisibility order).
    ///
    /// Unit pivots are eliminated first with a fewest-entries heuristic; the
    /// remainder goes through the dense reduction.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let mut cols = self.columns.clone();
        let mut row_sets: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); self.rows];
        for (j, col) in cols.iter().enumerate() {
            for &i in col.keys() {
                row_sets[i].insert(j);
            }
        }
        let mut alive = vec![true; cols.len()];
        let mut units = 0usize;
        let mut heap: BinaryHeap<Reverse<(usize, usize)>> = cols
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_empty())
            .map(|(j, c)| Reverse((c.len(), j)))
            .collect();

        while let Some(Reverse((len, j))) = heap.pop() {
            if !alive[j] || cols[j].len() != len || len == 0 {
                continue;
            }
            let pivot_row = cols[j]
                .iter()
                .filter(|(_, v)| v.abs().is_one())
                .map(|(&i, _)| i)
                .min_by_key(|&i| row_sets[i].len());
            let Some(r) = pivot_row else {
                continue;
            };
            let p = cols[j][&r].clone();
            let pivot_col = std::mem::take(&mut cols[j]);
            for &i in pivot_col.keys() {
                row_sets[i].remove(&j);
            }
            alive[j] = false;
            let others: Vec<usize> = row_sets[r].iter().copied().collect();
            for c in others {
                let a = cols[c][&r].clone();
                let factor = -(&a * &p);
                for (&i, v) in &pivot_col {
                    let entry = cols[c].entry(i).or_insert_with(BigInt::zero);
                    *entry += &factor * v;
                    if entry.is_zero() {
                        cols[c].remove(&i);
                        row_sets[i].remove(&c);
                    } else {
                        row_sets[i].insert(c);
                    }
                }
                debug_assert!(!cols[c].contains_key(&r));
                if !cols[c].is_empty() {
                    heap.push(Reverse((cols[c].len(), c)));
                }
            }
            units += 1;
        }

        let rest: Vec<usize> = (0..cols.len()).filter(|&j| alive[j] && !cols[j].is_empty()).collect();
        let mut factors = vec![BigInt::one(); units];
        if !rest.is_empty() {
            let used_rows: BTreeSet<usize> = rest.iter().flat_map(|&j| cols[j].keys().copied()).collect();
            let row_index: BTreeMap<usize, usize> = used_rows.iter().enumerate().map(|(k, &i)| (i, k)).collect();
            let mut dense = IntegerMatrix::zeros(used_rows.len(), rest.len());
            for (k, &j) in rest.iter().enumerate() {
                for (i, v) in &cols[j] {
                    dense[(row_index[i], k)] = v.clone();
                }
            }
            factors.extend(smith_diagonal(&dense));
        }
        factors
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Gcd of all `k x k` minors, the classical closed form of `d1 * ... * dk`.
/// Exponential; reserved for tests on small matrices.
pub fn determinantal_divisor(m: &IntegerMatrix, k: usize) -> BigInt {
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
    let mut g = BigInt::zero();
    for rs in subsets(m.rows(), k) {
        for cs in subsets(m.cols(), k) {
            let mut minor = IntegerMatrix::zeros(k, k);
            for (a, &i) in rs.iter().enumerate() {
                for (b, &j) in cs.iter().enumerate() {
                    minor[(a, b)] = m[(i, j)].clone();
                }
            }
            g = g.gcd(&minor.determinant());
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn identity_and_zero() {
        let snf = smith_normal_form(&IntegerMatrix::identity(2));
        assert_eq!(snf.d, IntegerMatrix::identity(2));
        let z = IntegerMatrix::zeros(2, 3);
        assert_eq!(smith_normal_form(&z).d, z);
    }

    #[test]
    fn two_by_two_invariant_factors() {
        // d1 = gcd of entries = 2, d1*d2 = |det| = 8
        let m = IntegerMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        assert_eq!(determinantal_divisor(&m, 1), BigInt::from(2));
        assert_eq!(determinantal_divisor(&m, 2), BigInt::from(8));
        let snf = smith_normal_form(&m);
        assert_eq!(snf.d, IntegerMatrix::from_rows(&[vec![2, 0], vec![0, 4]]));
        assert_eq!(&(&snf.u * &m) * &snf.v, snf.d);
    }

    #[test]
    fn in_image_examples() {
        let m = IntegerMatrix::from_rows(&[vec![2]]);
        assert_eq!(in_image(&m, &big(&[4])).unwrap(), Some(big(&[2])));
        assert_eq!(in_image(&m, &big(&[3])).unwrap(), None);
        let m = IntegerMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let w = in_image(&m, &big(&[2, 6])).unwrap().unwrap();
        assert_eq!(m.mul_vec(&w), big(&[2, 6]));
        assert!(in_image(&m, &big(&[1, 0])).unwrap().is_none());
        assert!(matches!(in_image(&m, &big(&[1])), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn sparse_matches_dense_on_torsion() {
        let m = IntegerMatrix::from_rows(&[vec![2, 0, 0], vec![0, 3, 0], vec![1, 1, 0]]);
        let sparse = SparseIntegerMatrix::from_dense(&m).invariant_factors();
        assert_eq!(sparse, smith_diagonal(&m));
    }

    fn matrix_strategy() -> impl Strategy<Value = IntegerMatrix> {
        (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-9i64..=9, r * c).prop_map(move |v| {
                let rows: Vec<Vec<i64>> = v.chunks(c).map(<[i64]>::to_vec).collect();
                IntegerMatrix::from_rows(&rows)
            })
        })
    }

    proptest! {
        #[test]
        fn smith_identity_holds(m in matrix_strategy()) {
            let snf = smith_normal_form(&m);
            prop_assert_eq!(&(&snf.u * &m) * &snf.v, snf.d.clone());
            prop_assert!(snf.d.is_diagonal());
            prop_assert!(snf.u.determinant().abs().is_one());
            prop_assert!(snf.v.determinant().abs().is_one());
            let diag = snf.d.diagonal();
            for w in diag.windows(2) {
                prop_assert!(!w[0].is_negative());
                if w[0].is_zero() { prop_assert!(w[1].is_zero()); }
                else { prop_assert!(w[1].is_multiple_of(&w[0])); }
            }
        }

        #[test]
        fn sparse_factors_agree(m in matrix_strategy()) {
            prop_assert_eq!(SparseIntegerMatrix::from_dense(&m).invariant_factors(), smith_diagonal(&m));
        }
    }
}
