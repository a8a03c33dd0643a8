//! Simplicial maps given by vertex assignments.

use rayon::prelude::*;

use crate::algebra::CoefficientModule;
use crate::complex::{
    barycentric_subdivision, permutation_sign, stellar_subdivision, Cochain, SimplexId, SimplicialComplex,
    Subdivision,
};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct SimplicialMap {
    source: SimplicialComplex,
    target: SimplicialComplex,
    assignment: Vec<usize>,
    images: Vec<Vec<SimplexId>>,
}

impl PartialEq for SimplicialMap {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source && self.target == other.target && self.assignment == other.assignment
    }
}

/// Source simplices whose image vertices do not span a target simplex.
/// Errors when the assignment is not total or names missing target vertices.
pub fn validate_map(
    source: &SimplicialComplex,
    target: &SimplicialComplex,
    assignment: &[usize],
) -> Result<Vec<Vec<usize>>> {
    if assignment.len() != source.vertex_count() {
        return Err(Error::InvalidInput(format!(
            "assignment covers {} of {} source vertices",
            assignment.len(),
            source.vertex_count()
        )));
    }
    if let Some((v, &t)) = assignment.iter().enumerate().find(|(_, &t)| t >= target.vertex_count()) {
        return Err(Error::InvalidInput(format!(
            "source vertex {v} assigned to missing target vertex {t}"
        )));
    }
    let mut bad: Vec<Vec<usize>> = (1..=source.dim())
        .into_par_iter()
        .flat_map_iter(|d| {
            source
                .simplices(d)
                .iter()
                .filter(|s| !target.contains(&s.iter().map(|&v| assignment[v]).collect::<Vec<_>>()))
                .cloned()
                .collect::<Vec<_>>()
        })
        .collect();
    // keep only minimal violations: a violating simplex whose faces all map fine
    bad.sort_by_key(|s| (s.len(), s.clone()));
    let mut minimal: Vec<Vec<usize>> = Vec::new();
    for s in bad {
        if !minimal.iter().any(|m| m.iter().all(|v| s.contains(v))) {
            minimal.push(s);
        }
    }
    Ok(minimal)
}

impl SimplicialMap {
    pub fn new(source: SimplicialComplex, target: SimplicialComplex, assignment: Vec<usize>) -> Result<Self> {
        let violations = validate_map(&source, &target, &assignment)?;
        if !violations.is_empty() {
            return Err(Error::NotSimplicial { violations });
        }
        let images = (0..=source.dim())
            .map(|d| {
                source
                    .simplices(d)
                    .iter()
                    .map(|s| {
                        let img: Vec<usize> = s.iter().map(|&v| assignment[v]).collect();
                        target.find(&img).expect("validated")
                    })
                    .collect()
            })
            .collect();
        Ok(SimplicialMap {
            source,
            target,
            assignment,
            images,
        })
    }

    pub fn identity(k: &SimplicialComplex) -> Self {
        Self::new(k.clone(), k.clone(), (0..k.vertex_count()).collect()).expect("identity is simplicial")
    }

    pub fn constant(source: &SimplicialComplex, target: &SimplicialComplex, vertex: usize) -> Result<Self> {
        Self::new(source.clone(), target.clone(), vec![vertex; source.vertex_count()])
    }

    pub fn source(&self) -> &SimplicialComplex {
        &self.source
    }

    pub fn target(&self) -> &SimplicialComplex {
        &self.target
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// Relative dimension `m - n`; negative values are reported as errors by callers.
    pub fn codimension(&self) -> isize {
        self.source.dim() as isize - self.target.dim() as isize
    }

    pub fn image(&self, id: SimplexId) -> SimplexId {
        self.images[id.dim][id.index]
    }

    pub fn is_degenerate(&self, id: SimplexId) -> bool {
        self.image(id).dim < id.dim
    }

    /// True iff the image vertex set of `phi` equals that of the target simplex `sigma`.
    pub fn surjects_onto(&self, phi: SimplexId, sigma: SimplexId) -> bool {
        self.image(phi) == sigma
    }

    /// True iff `sigma` is a face of the image of `phi`.
    pub fn covers(&self, phi: SimplexId, sigma: SimplexId) -> bool {
        let img = self.target.simplex(self.image(phi));
        self.target.simplex(sigma).iter().all(|v| img.contains(v))
    }

    /// Source simplices whose image is exactly `sigma`.
    pub fn preimage_simplices(&self, sigma: SimplexId) -> Vec<SimplexId> {
        self.source.ids().filter(|&id| self.image(id) == sigma).collect()
    }
}

/// Induced map between barycentric subdivisions, with both subdivisions.
pub fn subdivide_map(f: &SimplicialMap) -> Result<(SimplicialMap, Subdivision, Subdivision)> {
    let sd_source = barycentric_subdivision(f.source())?;
    let sd_target = barycentric_subdivision(f.target())?;
    let target_vertex = |id: SimplexId| -> usize {
        (0..id.dim).map(|d| f.target().count(d)).sum::<usize>() + id.index
    };
    let assignment = sd_source.carriers.iter().map(|&phi| target_vertex(f.image(phi))).collect();
    let g = SimplicialMap::new(sd_source.complex.clone(), sd_target.complex.clone(), assignment)?;
    Ok((g, sd_source, sd_target))
}

/// Stellar subdivision of the source at `phi`; the new vertex maps to
/// `f(phi)`'s vertex number `choice` (taken modulo the image size).
pub fn stellar_subdivide_source(f: &SimplicialMap, phi: SimplexId, choice: usize) -> Result<(SimplicialMap, Subdivision)> {
    let sub = stellar_subdivision(f.source(), phi)?;
    let img = f.target().simplex(f.image(phi));
    let mut assignment = f.assignment().to_vec();
    assignment.push(img[choice % img.len()]);
    let g = SimplicialMap::new(sub.complex.clone(), f.target().clone(), assignment)?;
    Ok((g, sub))
}

/// Simplicial retraction of a subdivision onto its parent: each vertex goes to
/// the smallest vertex of its carrier.
pub fn retraction(sub: &Subdivision, parent: &SimplicialComplex) -> Vec<usize> {
    sub.carriers.iter().map(|&c| parent.simplex(c)[0]).collect()
}

/// Pullback of a cochain on `target` along the vertex map `vertex_map` from `source`.
pub fn pullback_cochain(
    source: &SimplicialComplex,
    target: &SimplicialComplex,
    vertex_map: &[usize],
    module: &CoefficientModule,
    c: &Cochain,
) -> Result<Cochain> {
    let k = c.degree();
    let values = source
        .simplices(k)
        .iter()
        .map(|s| {
            let img: Vec<usize> = s.iter().map(|&v| vertex_map[v]).collect();
            if permutation_sign(&img) == 0 {
                Ok(module.zero())
            } else {
                c.evaluate(target, module, &img)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Cochain::from_values(source, module, k, values)
}
