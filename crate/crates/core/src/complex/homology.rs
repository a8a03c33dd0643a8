use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::{SimplexId, SimplicialComplex};
use crate::algebra::{AbelianGroup, CoefficientModule, SparseIntegerMatrix};
use crate::error::{Error, Result};

/// Boundary map `C_k -> C_{k-1}` in sparse form (`k >= 1`).
pub fn boundary_sparse(k: &SimplicialComplex, degree: usize) -> SparseIntegerMatrix {
    let mut m = SparseIntegerMatrix::new(k.count(degree.saturating_sub(1)), k.count(degree));
    if degree == 0 {
        return m;
    }
    for j in 0..k.count(degree) {
        for (i, f) in k.facets(SimplexId::new(degree, j)).into_iter().enumerate() {
            m.add(f, j, BigInt::from(if i % 2 == 0 { 1 } else { -1 }));
        }
    }
    m
}

/// Homology of a free chain complex with coefficients in `module`.
///
/// `sizes[k]` is the rank of `C_k`; `boundaries[k - 1]` is `d_k : C_k -> C_{k-1}`.
/// Returns groups for degrees `0..sizes.len()`.
///
/// The module is presented as `Z^s / L` with `L` free of rank `r`. Tensoring the
/// resolution `0 -> Z^r -> Z^s -> A -> 0` with the complex is exact, so the
/// homology equals that of the mapping cone of `1 (x) R`, a free complex over `Z`.
pub fn chain_complex_homology(
    sizes: &[usize],
    boundaries: &[SparseIntegerMatrix],
    module: &CoefficientModule,
) -> Result<Vec<AbelianGroup>> {
    let top = sizes.len();
    if boundaries.len() + 1 != top.max(1) {
        return Err(Error::DimensionMismatch(format!(
            "{} boundary maps for {} chain groups",
            boundaries.len(),
            top
        )));
    }
    for (k, b) in boundaries.iter().enumerate() {
        if b.rows() != sizes[k] || b.cols() != sizes[k + 1] {
            return Err(Error::DimensionMismatch(format!("boundary map d_{} has the wrong shape", k + 1)));
        }
    }
    let s = module.rank();
    let rel = module.lattice_basis();
    let r = rel.len();
    let size = |k: usize| -> usize {
        let y = sizes.get(k).map_or(0, |n| n * s);
        let x = if k == 0 { 0 } else { sizes.get(k - 1).map_or(0, |n| n * r) };
        y + x
    };
    // total degree k: y-block (simplex j, coordinate a) at j*s + a,
    // then x-block (simplex j of degree k-1, relation b) at n_k*s + j*r + b
    let cone_boundary = |k: usize| -> SparseIntegerMatrix {
        let mut m = SparseIntegerMatrix::new(size(k - 1), size(k));
        let yk = sizes.get(k).copied().unwrap_or(0);
        let ykm1 = sizes[k - 1];
        if k < top {
            for (j, col) in (0..yk).map(|j| (j, boundaries[k - 1].column(j))) {
                for (&f, v) in col {
                    for a in 0..s {
                        m.add(f * s + a, j * s + a, v.clone());
                    }
                }
            }
        }
        for j in 0..ykm1 {
            for (b, relation) in rel.iter().enumerate() {
                let col = yk * s + j * r + b;
                for (a, v) in relation.iter().enumerate() {
                    if !v.is_zero() {
                        m.add(j * s + a, col, v.clone());
                    }
                }
                if k >= 2 {
                    for (&f, v) in boundaries[k - 2].column(j) {
                        m.add(ykm1 * s + f * r + b, col, -v);
                    }
                }
            }
        }
        m
    };
    // d_1 ..= d_top over total degrees 0..=top
    let factors: Vec<Vec<BigInt>> = (1..=top)
        .into_par_iter()
        .map(|k| cone_boundary(k).invariant_factors())
        .collect();
    Ok((0..top)
        .map(|k| {
            let rank_in = if k == 0 { 0 } else { factors[k - 1].len() };
            let out = &factors[k];
            let free = size(k) - rank_in - out.len();
            AbelianGroup::new(free, out.iter().filter(|d| !d.is_one()).cloned())
        })
        .collect())
}

/// Homology in all degrees `0..=dim`.
pub fn homology_all(k: &SimplicialComplex, module: &CoefficientModule) -> Result<Vec<AbelianGroup>> {
    let sizes = k.f_vector();
    let boundaries: Vec<SparseIntegerMatrix> = (1..sizes.len()).map(|d| boundary_sparse(k, d)).collect();
    chain_complex_homology(&sizes, &boundaries, module)
}

pub fn homology(k: &SimplicialComplex, module: &CoefficientModule, degree: usize) -> Result<AbelianGroup> {
    if degree > k.dim() {
        return Ok(AbelianGroup::default());
    }
    Ok(homology_all(k, module)?.swap_remove(degree))
}
