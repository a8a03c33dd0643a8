use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;

use super::{ReebCell, ReebComplex};
use crate::complex::SimplexId;
use crate::error::Result;
use crate::map::SimplicialMap;
use crate::union_find::UnionFind;

/// Nonempty faces of a sorted vertex list, as vertex lists.
pub(crate) fn faces(s: &[usize]) -> Vec<Vec<usize>> {
    (1u32..(1 << s.len()))
        .map(|mask| (0..s.len()).filter(|&i| mask >> i & 1 == 1).map(|i| s[i]).collect())
        .collect()
}

/// Cells are the components of pieces `(sigma, phi)` with `sigma` a face of
/// `f(phi)`, two pieces over the same `sigma` being joined when one source
/// simplex is a facet of the other.
pub fn build_reeb(f: &SimplicialMap) -> Result<ReebComplex> {
    let source = f.source();
    let target = f.target();
    source.check_pseudomanifold()?;

    let sigmas: Vec<SimplexId> = target.ids().collect();
    let position: HashMap<SimplexId, usize> = sigmas.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let mut pieces: Vec<Vec<SimplexId>> = vec![Vec::new(); sigmas.len()];
    for phi in source.ids() {
        for face in faces(target.simplex(f.image(phi))) {
            let sigma = target.find(&face).expect("face of an image simplex");
            pieces[position[&sigma]].push(phi);
        }
    }

    // per target simplex: components ordered by smallest piece
    let components: Vec<Vec<Vec<SimplexId>>> = sigmas
        .par_iter()
        .zip(pieces.par_iter())
        .map(|(&sigma, list)| {
            let local: HashMap<SimplexId, usize> = list.iter().enumerate().map(|(i, &p)| (p, i)).collect();
            let mut uf = UnionFind::new(list.len());
            for (i, &phi) in list.iter().enumerate() {
                for facet in source.facets(phi) {
                    let psi = SimplexId::new(phi.dim - 1, facet);
                    if f.covers(psi, sigma) {
                        uf.union(i, local[&psi]);
                    }
                }
            }
            let labels = uf.labels();
            let count = labels.iter().max().map_or(0, |m| m + 1);
            let mut comps = vec![Vec::new(); count];
            for (i, &l) in labels.iter().enumerate() {
                comps[l].push(list[i]);
            }
            comps.iter_mut().for_each(|c| c.sort_unstable());
            comps.sort();
            comps
        })
        .collect();

    let mut cells = Vec::new();
    let mut piece_cell = HashMap::new();
    for (&sigma, comps) in sigmas.iter().zip(components) {
        for (component, members) in comps.into_iter().enumerate() {
            for &phi in &members {
                piece_cell.insert((phi, sigma), cells.len());
            }
            cells.push(ReebCell {
                sigma,
                component,
                pieces: members,
            });
        }
    }

    let mut below: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); cells.len()];
    for phi in source.ids() {
        let img_faces: Vec<SimplexId> = faces(target.simplex(f.image(phi)))
            .iter()
            .map(|s| target.find(s).expect("face"))
            .collect();
        for &sigma in &img_faces {
            let upper = piece_cell[&(phi, sigma)];
            for &tau in &img_faces {
                if tau.dim < sigma.dim && target.simplex(tau).iter().all(|v| target.simplex(sigma).contains(v)) {
                    below[upper].insert(piece_cell[&(phi, tau)]);
                }
            }
        }
    }
    let warnings = Vec::new();
    ReebComplex::assemble(target, cells, below, piece_cell, warnings)
}
