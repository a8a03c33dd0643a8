//! Reeb spaces as graded cell posets over open target simplices.

mod build;
mod sweep;

use std::collections::{BTreeSet, HashMap};

pub use build::build_reeb;
pub use sweep::{compare_with_reeb, sweep_oracle, OracleMatch, ReebGraph};

use crate::algebra::{AbelianGroup, CoefficientModule};
use crate::complex::{homology_all, permutation_sign, SimplexId, SimplicialComplex};
use crate::error::Result;
use crate::poset::CellPoset;

/// How many top cells meet an `(n-1)`-cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WallKind {
    Interior,
    Boundary,
    Branching(usize),
    Isolated,
}

impl WallKind {
    pub fn from_coface_count(count: usize) -> Self {
        match count {
            0 => WallKind::Isolated,
            1 => WallKind::Boundary,
            2 => WallKind::Interior,
            k => WallKind::Branching(k),
        }
    }

    pub fn is_interior(self) -> bool {
        self == WallKind::Interior
    }

    pub fn name(self) -> &'static str {
        match self {
            WallKind::Interior => "interior",
            WallKind::Boundary => "boundary",
            WallKind::Branching(_) => "branching",
            WallKind::Isolated => "isolated",
        }
    }
}

/// A connected component of the preimage of an open target simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReebCell {
    pub sigma: SimplexId,
    /// Position among the components over `sigma`.
    pub component: usize,
    /// Source simplices whose piece over `sigma` lies in this component, sorted.
    pub pieces: Vec<SimplexId>,
}

impl ReebCell {
    pub fn dim(&self) -> usize {
        self.sigma.dim
    }
}

#[derive(Clone, Debug)]
pub struct ReebComplex {
    target_dim: usize,
    target_simplices: Vec<Vec<Vec<usize>>>,
    cells: Vec<ReebCell>,
    poset: CellPoset,
    piece_cell: HashMap<(SimplexId, SimplexId), usize>,
    warnings: Vec<String>,
}

impl ReebComplex {
    pub(crate) fn assemble(
        target: &SimplicialComplex,
        cells: Vec<ReebCell>,
        below: Vec<BTreeSet<usize>>,
        piece_cell: HashMap<(SimplexId, SimplexId), usize>,
        mut warnings: Vec<String>,
    ) -> Result<Self> {
        let dims: Vec<usize> = cells.iter().map(ReebCell::dim).collect();
        let covering: Vec<(usize, usize)> = below
            .iter()
            .enumerate()
            .flat_map(|(c, set)| {
                let dims = &dims;
                set.iter().filter(move |&&b| dims[b] + 1 == dims[c]).map(move |&b| (b, c))
            })
            .collect();
        let poset = CellPoset::from_covering(dims, &covering)?;
        let added: usize = (0..cells.len())
            .map(|c| poset.below(c).iter().filter(|b| !below[c].contains(b)).count())
            .sum();
        if added > 0 {
            warnings.push(format!("face relation needed {added} transitive additions"));
        }
        for (c, chi) in poset.irregular_cells() {
            warnings.push(format!(
                "cell {c} (dim {}) has a lower link with Euler characteristic {chi}",
                cells[c].dim()
            ));
        }
        let target_simplices = (0..=target.dim()).map(|d| target.simplices(d).to_vec()).collect();
        Ok(ReebComplex {
            target_dim: target.dim(),
            target_simplices,
            cells,
            poset,
            piece_cell,
            warnings,
        })
    }

    pub fn cells(&self) -> &[ReebCell] {
        &self.cells
    }

    pub fn cell(&self, i: usize) -> &ReebCell {
        &self.cells[i]
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn poset(&self) -> &CellPoset {
        &self.poset
    }

    /// Highest cell dimension.
    pub fn dim(&self) -> usize {
        self.poset.dim()
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn target_simplex(&self, sigma: SimplexId) -> &[usize] {
        &self.target_simplices[sigma.dim][sigma.index]
    }

    pub fn cells_of_dim(&self, k: usize) -> Vec<usize> {
        self.poset.cells_of_dim(k)
    }

    pub fn counts(&self) -> Vec<usize> {
        let mut out = vec![0; self.dim() + 1];
        for c in &self.cells {
            out[c.dim()] += 1;
        }
        out
    }

    /// Top cells: the cells of the target dimension.
    pub fn top_cells(&self) -> Vec<usize> {
        self.cells_of_dim(self.target_dim)
    }

    pub fn facets(&self, c: usize) -> &[usize] {
        self.poset.facets(c)
    }

    pub fn cofacets(&self, c: usize) -> &[usize] {
        self.poset.cofacets(c)
    }

    /// Covering pairs `(face, coface)` in cell order.
    pub fn face_relation(&self) -> Vec<(usize, usize)> {
        self.poset.covering()
    }

    /// Classification of a codimension-one cell by its number of top cofaces.
    pub fn wall_kind(&self, c: usize) -> Option<WallKind> {
        if self.target_dim == 0 || self.cells[c].dim() + 1 != self.target_dim {
            return None;
        }
        Some(WallKind::from_coface_count(self.cofacets(c).len()))
    }

    pub fn walls(&self) -> Vec<usize> {
        if self.target_dim == 0 {
            return vec![];
        }
        self.cells_of_dim(self.target_dim - 1)
    }

    /// The cell containing the piece of source simplex `phi` over `sigma`.
    pub fn cell_of(&self, phi: SimplexId, sigma: SimplexId) -> Option<usize> {
        self.piece_cell.get(&(phi, sigma)).copied()
    }

    pub fn order_complex(&self) -> &SimplicialComplex {
        self.poset.order_complex()
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Alternating count of cells.
    pub fn euler_characteristic(&self) -> i64 {
        self.poset.euler_characteristic()
    }

    /// Top simplices of the order complex refining cell `c`, each with the sign
    /// that orients it like the cell's target simplex in sorted vertex order.
    pub fn refinement(&self, c: usize) -> Vec<(usize, i8)> {
        let mut out: Vec<(usize, i8)> = self
            .poset
            .chains_ending_at(c)
            .into_iter()
            .map(|chain| {
                let mut seq = Vec::with_capacity(chain.len());
                let mut prev: &[usize] = &[];
                for &x in &chain {
                    let s = self.target_simplex(self.cells[x].sigma);
                    seq.extend(s.iter().filter(|v| !prev.contains(v)));
                    prev = s;
                }
                let idx = self.order_complex().index_of(&chain).expect("chain of the poset");
                (idx, permutation_sign(&seq))
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn homology(&self, module: &CoefficientModule) -> Result<Vec<AbelianGroup>> {
        homology_all(self.order_complex(), module)
    }
}
