//! Graded cell posets and their order complexes.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};

/// A graded poset of cells given by its covering relation, with the order
/// complex (vertices are cells, simplices are chains).
#[derive(Clone, Debug)]
pub struct CellPoset {
    dims: Vec<usize>,
    facets: Vec<Vec<usize>>,
    cofacets: Vec<Vec<usize>>,
    below: Vec<Vec<usize>>,
    order: SimplicialComplex,
}

impl CellPoset {
    /// `dims[c]` is the dimension of cell `c`; cells must be sorted by dimension.
    /// Each pair `(face, coface)` must raise the dimension by exactly one.
    pub fn from_covering(dims: Vec<usize>, covering: &[(usize, usize)]) -> Result<Self> {
        let n = dims.len();
        if n == 0 {
            return Err(Error::InvalidInput("empty cell poset".into()));
        }
        if dims.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidInput("cells must be sorted by dimension".into()));
        }
        let mut facets = vec![BTreeSet::new(); n];
        for &(a, b) in covering {
            if a >= n || b >= n {
                return Err(Error::InvalidInput(format!("face pair ({a}, {b}) names a missing cell")));
            }
            if dims[a] + 1 != dims[b] {
                return Err(Error::InvalidInput(format!(
                    "face pair ({a}, {b}) joins dimensions {} and {}; the poset must be graded",
                    dims[a], dims[b]
                )));
            }
            facets[b].insert(a);
        }
        for c in 0..n {
            if dims[c] > 0 && facets[c].is_empty() {
                return Err(Error::InvalidInput(format!("cell {c} of dimension {} has no faces", dims[c])));
            }
        }
        let facets: Vec<Vec<usize>> = facets.into_iter().map(|s| s.into_iter().collect()).collect();
        let mut cofacets = vec![Vec::new(); n];
        for (c, fs) in facets.iter().enumerate() {
            for &f in fs {
                cofacets[f].push(c);
            }
        }
        // cells are sorted by dimension, so faces are closed before their cofaces
        let mut below: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for c in 0..n {
            let mut set = BTreeSet::new();
            for &f in &facets[c] {
                set.insert(f);
                set.extend(below[f].iter().copied());
            }
            below[c] = set;
        }
        let mut maximal = Vec::new();
        for c in (0..n).filter(|&c| cofacets[c].is_empty()) {
            for chain in saturated_chains(&facets, c) {
                maximal.push(chain);
            }
        }
        let order = SimplicialComplex::with_vertices(n, &maximal)?;
        Ok(CellPoset {
            dims,
            facets,
            cofacets,
            below: below.into_iter().map(|s| s.into_iter().collect()).collect(),
            order,
        })
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dim_of(&self, c: usize) -> usize {
        self.dims[c]
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().copied().max().unwrap_or(0)
    }

    pub fn cells_of_dim(&self, k: usize) -> Vec<usize> {
        (0..self.len()).filter(|&c| self.dims[c] == k).collect()
    }

    pub fn facets(&self, c: usize) -> &[usize] {
        &self.facets[c]
    }

    pub fn cofacets(&self, c: usize) -> &[usize] {
        &self.cofacets[c]
    }

    pub fn below(&self, c: usize) -> &[usize] {
        &self.below[c]
    }

    pub fn order_complex(&self) -> &SimplicialComplex {
        &self.order
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims.iter().map(|d| if d % 2 == 0 { 1 } else { -1 }).sum()
    }

    /// Covering pairs `(face, coface)`, sorted.
    pub fn covering(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = (0..self.len())
            .flat_map(|c| self.facets[c].iter().map(move |&f| (f, c)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Full-length chains ending at `c`, ascending, in lexicographic order.
    pub fn chains_ending_at(&self, c: usize) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = saturated_chains(&self.facets, c)
            .into_iter()
            .filter(|ch| ch.len() == self.dims[c] + 1)
            .collect();
        out.sort();
        out
    }

    /// Cells whose lower link does not have the Euler characteristic of a
    /// sphere of one dimension less.
    pub fn irregular_cells(&self) -> Vec<(usize, i64)> {
        let mut g = vec![0i64; self.len()];
        let mut out = Vec::new();
        for c in 0..self.len() {
            g[c] = 1 - self.below[c].iter().map(|&b| g[b]).sum::<i64>();
            let expected = if self.dims[c] % 2 == 0 { 1 } else { -1 };
            if g[c] != expected {
                out.push((c, 1 - g[c]));
            }
        }
        out
    }

    /// Orientation of the subdivided cell `c`: signed order-complex simplices,
    /// coherent across faces through `c`, with the smallest chain positive.
    pub fn cell_orientation(&self, c: usize) -> Result<Vec<(usize, i8)>> {
        let chains = self.chains_ending_at(c);
        let k = self.dims[c];
        // interior faces: drop a position other than the last
        let mut faces: HashMap<Vec<usize>, Vec<(usize, usize)>> = HashMap::new();
        for (t, ch) in chains.iter().enumerate() {
            for i in 0..k {
                let mut f = ch.clone();
                f.remove(i);
                faces.entry(f).or_default().push((t, i));
            }
        }
        let mut adj: Vec<Vec<(usize, i8)>> = vec![Vec::new(); chains.len()];
        for inc in faces.values() {
            if let [(a, i), (b, j)] = inc[..] {
                let rel = if (i + j) % 2 == 0 { -1 } else { 1 };
                adj[a].push((b, rel));
                adj[b].push((a, rel));
            }
        }
        let mut sign = vec![0i8; chains.len()];
        if !chains.is_empty() {
            sign[0] = 1;
            let mut queue = VecDeque::from([0usize]);
            while let Some(t) = queue.pop_front() {
                for &(u, rel) in &adj[t] {
                    let want = sign[t] * rel;
                    if sign[u] == 0 {
                        sign[u] = want;
                        queue.push_back(u);
                    } else if sign[u] != want {
                        return Err(Error::OrientationUnavailable(format!("cell {c} is not orientable")));
                    }
                }
            }
        }
        if sign.contains(&0) {
            return Err(Error::OrientationUnavailable(format!("cell {c} has a disconnected interior")));
        }
        Ok(chains
            .iter()
            .zip(sign)
            .map(|(ch, s)| (self.order.index_of(ch).expect("chain"), s))
            .collect())
    }
}

/// All saturated chains from `c` down to a minimal cell, ascending.
fn saturated_chains(facets: &[Vec<usize>], c: usize) -> Vec<Vec<usize>> {
    fn go(facets: &[Vec<usize>], stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let top = *stack.last().expect("nonempty");
        if facets[top].is_empty() {
            let mut ch = stack.clone();
            ch.reverse();
            out.push(ch);
            return;
        }
        for &f in &facets[top] {
            stack.push(f);
            go(facets, stack, out);
            stack.pop();
        }
    }
    let mut out = Vec::new();
    go(facets, &mut vec![c], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Face poset of a triangle: 3 vertices, 3 edges, 1 face.
    fn triangle() -> CellPoset {
        let dims = vec![0, 0, 0, 1, 1, 1, 2];
        let cover = [(0, 3), (1, 3), (1, 4), (2, 4), (0, 5), (2, 5), (3, 6), (4, 6), (5, 6)];
        CellPoset::from_covering(dims, &cover).unwrap()
    }

    #[test]
    fn triangle_order_complex_is_its_subdivision() {
        let p = triangle();
        assert_eq!(p.order_complex().f_vector(), vec![7, 12, 6]);
        assert_eq!(p.chains_ending_at(6).len(), 6);
        assert!(p.irregular_cells().is_empty());
        assert_eq!(p.euler_characteristic(), 1);
    }

    #[test]
    fn cell_orientation_is_a_relative_cycle() {
        let p = triangle();
        let o = p.cell_orientation(6).unwrap();
        let k = p.order_complex();
        // boundary of the oriented cell lives on chains avoiding the cell itself
        let mut b: HashMap<usize, i64> = HashMap::new();
        for &(t, s) in &o {
            for (i, f) in k.facets(crate::complex::SimplexId::new(2, t)).into_iter().enumerate() {
                *b.entry(f).or_default() += if i % 2 == 0 { s as i64 } else { -(s as i64) };
            }
        }
        for (f, v) in b {
            if v != 0 {
                assert!(!k.simplices(1)[f].contains(&6));
            }
        }
    }

    #[test]
    fn rejects_ungraded_pairs() {
        assert!(CellPoset::from_covering(vec![0, 2], &[(0, 1)]).is_err());
        assert!(CellPoset::from_covering(vec![0, 1], &[]).is_err());
        assert!(CellPoset::from_covering(vec![1, 0], &[]).is_err());
    }
}
