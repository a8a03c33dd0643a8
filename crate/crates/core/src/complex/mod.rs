//! Finite abstract simplicial complexes with closure-complete storage.

mod chain;
mod homology;
mod orientation;
mod subdivision;

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;

pub use chain::{Chain, Cochain, Cocycle};
pub use homology::{boundary_sparse, chain_complex_homology, homology, homology_all};
pub use orientation::{orient_coherently, Orientation, OrientationVerdict};
pub use subdivision::{barycentric_subdivision, stellar_subdivision, Subdivision};

use crate::algebra::IntegerMatrix;
use crate::error::{Error, Result};

/// A simplex addressed by dimension and position in that dimension's sorted list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexId {
    pub dim: usize,
    pub index: usize,
}

impl SimplexId {
    pub fn new(dim: usize, index: usize) -> Self {
        SimplexId { dim, index }
    }
}

#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    vertex_count: usize,
    simplices: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count && self.simplices == other.simplices
    }
}

impl Eq for SimplicialComplex {}

impl SimplicialComplex {
    /// Closure of the given simplices; vertices are `0..=max index`.
    pub fn build(maximal: &[Vec<usize>]) -> Result<Self> {
        let v = maximal.iter().flatten().max().map_or(0, |&m| m + 1);
        Self::with_vertices(v, maximal)
    }

    /// Closure of the given simplices over the vertex set `0..vertex_count`.
    pub fn with_vertices(vertex_count: usize, maximal: &[Vec<usize>]) -> Result<Self> {
        if maximal.is_empty() && vertex_count == 0 {
            return Err(Error::InvalidInput("empty complex".into()));
        }
        let mut layers: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new()];
        for v in 0..vertex_count {
            layers[0].insert(vec![v]);
        }
        for s in maximal {
            let mut s = s.clone();
            s.sort_unstable();
            s.dedup();
            if s.is_empty() {
                return Err(Error::InvalidInput("empty simplex".into()));
            }
            if let Some(&v) = s.iter().find(|&&v| v >= vertex_count) {
                return Err(Error::InvalidInput(format!(
                    "vertex {v} out of range (complex has {vertex_count} vertices)"
                )));
            }
            let d = s.len() - 1;
            while layers.len() <= d {
                layers.push(BTreeSet::new());
            }
            if layers[d].contains(&s) {
                continue;
            }
            // all nonempty subsets
            let n = s.len();
            for mask in 1u64..(1u64 << n) {
                let face: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| s[i]).collect();
                layers[face.len() - 1].insert(face);
            }
        }
        let simplices: Vec<Vec<Vec<usize>>> = layers.into_iter().map(|l| l.into_iter().collect()).collect();
        let index = simplices
            .iter()
            .map(|layer| layer.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        Ok(SimplicialComplex {
            vertex_count,
            simplices,
            index,
        })
    }

    pub fn dim(&self) -> usize {
        self.simplices.len() - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn simplices(&self, k: usize) -> &[Vec<usize>] {
        self.simplices.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, k: usize) -> usize {
        self.simplices(k).len()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn simplex(&self, id: SimplexId) -> &[usize] {
        &self.simplices[id.dim][id.index]
    }

    /// Index of a sorted vertex list, if present.
    pub fn index_of(&self, s: &[usize]) -> Option<usize> {
        if s.is_empty() {
            return None;
        }
        self.index.get(s.len() - 1)?.get(s).copied()
    }

    /// Like [`index_of`](Self::index_of) but sorts the vertices first.
    pub fn find(&self, vertices: &[usize]) -> Option<SimplexId> {
        let mut s = vertices.to_vec();
        s.sort_unstable();
        s.dedup();
        let i = self.index_of(&s)?;
        Some(SimplexId::new(s.len() - 1, i))
    }

    pub fn contains(&self, vertices: &[usize]) -> bool {
        self.find(vertices).is_some()
    }

    pub fn ids(&self) -> impl Iterator<Item = SimplexId> + '_ {
        self.simplices
            .iter()
            .enumerate()
            .flat_map(|(d, l)| (0..l.len()).map(move |i| SimplexId::new(d, i)))
    }

    /// Codimension-one faces (index in dimension `dim - 1`), in removal order.
    pub fn facets(&self, id: SimplexId) -> Vec<usize> {
        if id.dim == 0 {
            return vec![];
        }
        let s = self.simplex(id);
        (0..s.len())
            .map(|i| {
                let mut f = s.to_vec();
                f.remove(i);
                self.index_of(&f).expect("closure-complete")
            })
            .collect()
    }

    /// For each `k`-simplex, the indices of the `(k+1)`-simplices containing it.
    pub fn cofacets(&self, k: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.count(k)];
        if k < self.dim() {
            for j in 0..self.count(k + 1) {
                for f in self.facets(SimplexId::new(k + 1, j)) {
                    out[f].push(j);
                }
            }
        }
        out
    }

    /// Simplices that are not a face of any other simplex.
    pub fn maximal_simplices(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for k in 0..=self.dim() {
            let cof = self.cofacets(k);
            for (i, c) in cof.iter().enumerate() {
                if c.is_empty() {
                    out.push(self.simplices[k][i].clone());
                }
            }
        }
        out
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(d, l)| if d % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) })
            .sum()
    }

    /// Every `(d-1)`-simplex lies in at most two top simplices; returns the
    /// first offender otherwise.
    pub fn check_pseudomanifold(&self) -> Result<()> {
        let d = self.dim();
        if d == 0 {
            return Ok(());
        }
        for (i, c) in self.cofacets(d - 1).iter().enumerate() {
            if c.len() > 2 {
                return Err(Error::NotPseudomanifold {
                    face: self.simplices[d - 1][i].clone(),
                    count: c.len(),
                });
            }
        }
        Ok(())
    }

    /// Pseudomanifold without boundary: every `(d-1)`-simplex in exactly two top simplices.
    pub fn is_closed_pseudomanifold(&self) -> bool {
        let d = self.dim();
        d > 0 && self.cofacets(d - 1).iter().all(|c| c.len() == 2)
    }

    /// Boundary matrix: rows index `(k-1)`-simplices, columns `k`-simplices.
    pub fn boundary_matrix(&self, k: usize) -> Result<IntegerMatrix> {
        if k == 0 || k > self.dim() {
            return Err(Error::InvalidInput(format!(
                "boundary degree {k} outside 1..={}",
                self.dim()
            )));
        }
        let mut m = IntegerMatrix::zeros(self.count(k - 1), self.count(k));
        for j in 0..self.count(k) {
            for (i, f) in self.facets(SimplexId::new(k, j)).into_iter().enumerate() {
                m[(f, j)] = BigInt::from(if i % 2 == 0 { 1 } else { -1 });
            }
        }
        Ok(m)
    }

    /// Connected components of the 1-skeleton, as a component id per vertex.
    pub fn vertex_components(&self) -> Vec<usize> {
        let mut uf = crate::union_find::UnionFind::new(self.vertex_count);
        for e in self.simplices(1) {
            uf.union(e[0], e[1]);
        }
        uf.labels()
    }
}

/// Sign of the permutation sorting `v` (distinct entries), or 0 when entries repeat.
pub fn permutation_sign(v: &[usize]) -> i8 {
    let mut sign = 1i8;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] == v[j] {
                return 0;
            }
            if v[i] > v[j] {
                sign = -sign;
            }
        }
    }
    sign
}
