//! Fibers over barycenters of top target simplices.

use std::collections::HashMap;

use crate::algebra::{CoefficientModule, IntegerMatrix, ModuleElement};
use crate::complex::{Cocycle, Orientation, SimplexId};
use crate::error::{Error, Result};
use crate::map::SimplicialMap;
use crate::union_find::UnionFind;

/// Cells of the fiber over the barycenter of `sigma`: one `(dim phi - n)`-cell
/// per source simplex `phi` mapping onto `sigma`.
#[derive(Clone, Debug)]
pub struct FiberComplex {
    sigma: SimplexId,
    n: usize,
    cells: Vec<SimplexId>,
    component_of: Vec<usize>,
    components: usize,
}

pub fn fiber_over(f: &SimplicialMap, sigma: SimplexId) -> Result<FiberComplex> {
    let n = f.target().dim();
    if sigma.dim != n {
        return Err(Error::Precondition(format!(
            "fibers are taken over top simplices (dimension {n}), got dimension {}",
            sigma.dim
        )));
    }
    if f.codimension() < 0 {
        return Err(Error::Precondition("source dimension is below target dimension".into()));
    }
    let cells = f.preimage_simplices(sigma);
    let local: HashMap<SimplexId, usize> = cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut uf = UnionFind::new(cells.len());
    for (i, &phi) in cells.iter().enumerate() {
        if phi.dim == 0 {
            continue;
        }
        for facet in f.source().facets(phi) {
            if let Some(&j) = local.get(&SimplexId::new(phi.dim - 1, facet)) {
                uf.union(i, j);
            }
        }
    }
    // components numbered by their smallest cell, matching the Reeb cell order
    let labels = uf.labels();
    let components = labels.iter().max().map_or(0, |m| m + 1);
    Ok(FiberComplex {
        sigma,
        n,
        cells,
        component_of: labels,
        components,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RepresentativeRule {
    Smallest,
    Largest,
}

/// Closed edge path approximating a fiber circle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedLoop {
    /// Traversed top simplices with the entry and exit faces (as `(n)`-simplex indices).
    pub steps: Vec<(usize, usize, usize)>,
    /// Directed source edges; steps whose representatives coincide contribute none.
    pub edges: Vec<(usize, usize)>,
    /// True when the direction comes from source and target orientations.
    pub oriented: bool,
}

impl OrientedLoop {
    pub fn reversed(&self) -> Self {
        OrientedLoop {
            steps: self.steps.iter().rev().map(|&(p, a, b)| (p, b, a)).collect(),
            edges: self.edges.iter().rev().map(|&(a, b)| (b, a)).collect(),
            oriented: self.oriented,
        }
    }
}

impl FiberComplex {
    pub fn sigma(&self) -> SimplexId {
        self.sigma
    }

    pub fn cells(&self) -> &[SimplexId] {
        &self.cells
    }

    pub fn component_count(&self) -> usize {
        self.components
    }

    pub fn component_cells(&self, component: usize) -> Vec<SimplexId> {
        self.cells
            .iter()
            .zip(&self.component_of)
            .filter(|(_, &c)| c == component)
            .map(|(&s, _)| s)
            .collect()
    }

    /// Cell counts by fiber dimension.
    pub fn census(&self, component: usize) -> Vec<usize> {
        let cells = self.component_cells(component);
        let top = cells.iter().map(|c| c.dim - self.n).max().unwrap_or(0);
        let mut out = vec![0; top + 1];
        for c in cells {
            out[c.dim - self.n] += 1;
        }
        out
    }

    pub fn euler_characteristic(&self, component: usize) -> Result<i64> {
        if component >= self.components {
            return Err(Error::InvalidInput(format!(
                "fiber over {:?} has {} components",
                self.sigma, self.components
            )));
        }
        Ok(self
            .component_cells(component)
            .iter()
            .map(|c| if (c.dim - self.n) % 2 == 0 { 1 } else { -1 })
            .sum())
    }

    /// Edge loop of a circle component (`m - n = 1`).
    ///
    /// With both orientations present, the direction `d` in each top simplex
    /// makes `(d, lifts of the edges of sigma)` a positive frame of the
    /// source, twisted by the sign of `sigma` in the target orientation.
    pub fn fiber_loop(
        &self,
        f: &SimplicialMap,
        component: usize,
        rule: RepresentativeRule,
        source_orientation: Option<&Orientation>,
        target_orientation: Option<&Orientation>,
    ) -> Result<OrientedLoop> {
        if f.codimension() != 1 {
            return Err(Error::Precondition(format!(
                "fiber loops need source dimension one more than the target, got m - n = {}",
                f.codimension()
            )));
        }
        let n = self.n;
        let m = n + 1;
        let cells = self.component_cells(component);
        if cells.is_empty() {
            return Err(Error::InvalidInput(format!("no fiber component {component}")));
        }
        let source = f.source();
        let points: Vec<usize> = cells.iter().filter(|c| c.dim == n).map(|c| c.index).collect();
        let segments: Vec<usize> = cells.iter().filter(|c| c.dim == m).map(|c| c.index).collect();
        // endpoints of each segment: its two faces mapping onto sigma
        let mut ends: HashMap<usize, [usize; 2]> = HashMap::new();
        let mut incident: HashMap<usize, Vec<usize>> = points.iter().map(|&p| (p, Vec::new())).collect();
        for &s in &segments {
            let fs: Vec<usize> = source
                .facets(SimplexId::new(m, s))
                .into_iter()
                .filter(|&g| f.image(SimplexId::new(n, g)) == self.sigma)
                .collect();
            let [a, b] = fs[..] else {
                return Err(Error::Precondition(format!("segment {s} does not have two endpoints")));
            };
            ends.insert(s, [a, b]);
            incident.get_mut(&a).expect("same component").push(s);
            incident.get_mut(&b).expect("same component").push(s);
        }
        if let Some((p, list)) = incident.iter().find(|(_, l)| l.len() != 2) {
            return Err(Error::Precondition(format!(
                "fiber component {component} is not a circle: point {p} meets {} segments",
                list.len()
            )));
        }

        let direction = match (source_orientation, target_orientation) {
            (Some(so), Some(to)) => Some((so, to.sign(self.sigma.index))),
            _ => None,
        };
        // (entry face, exit face) per segment
        let oriented_ends = |s: usize| -> [usize; 2] {
            let [a, b] = ends[&s];
            match direction {
                None => [a, b],
                Some((so, eps)) => {
                    let sign = self.frame_sign(f, s, a, b) * so.sign(s) * eps;
                    if sign > 0 {
                        [a, b]
                    } else {
                        [b, a]
                    }
                }
            }
        };

        let start = *points.iter().min().expect("nonempty");
        let mut steps = Vec::new();
        let mut current = start;
        let mut previous: Option<usize> = None;
        loop {
            let options = &incident[&current];
            let next = match direction {
                Some(_) => *options
                    .iter()
                    .find(|&&s| oriented_ends(s)[0] == current)
                    .ok_or_else(|| Error::Precondition("fiber directions are not coherent".into()))?,
                None => {
                    let mut o = options.clone();
                    o.sort_unstable();
                    match previous {
                        None => o[0],
                        Some(p) => *o.iter().find(|&&s| s != p).unwrap_or(&o[0]),
                    }
                }
            };
            let [a, b] = ends[&next];
            let exit = if a == current { b } else { a };
            if direction.is_some() && oriented_ends(next)[1] != exit {
                return Err(Error::Precondition("fiber directions are not coherent".into()));
            }
            steps.push((next, current, exit));
            previous = Some(next);
            current = exit;
            if current == start {
                break;
            }
            if steps.len() > segments.len() {
                return Err(Error::Precondition("fiber traversal did not close".into()));
            }
        }
        if steps.len() != segments.len() {
            return Err(Error::Precondition(format!(
                "fiber component {component} is not a single circle"
            )));
        }
        let rep = |face: usize| -> usize {
            let s = source.simplex(SimplexId::new(n, face));
            match rule {
                RepresentativeRule::Smallest => s[0],
                RepresentativeRule::Largest => s[s.len() - 1],
            }
        };
        let edges = steps
            .iter()
            .map(|&(_, a, b)| (rep(a), rep(b)))
            .filter(|(a, b)| a != b)
            .collect();
        Ok(OrientedLoop {
            steps,
            edges,
            oriented: direction.is_some(),
        })
    }

    /// Sign of `det[e_x - e_y, lifts of sigma's edges]` where moving along
    /// `e_x - e_y` enters through face `entry` (opposite x) and leaves through `exit`.
    fn frame_sign(&self, f: &SimplicialMap, segment: usize, entry: usize, exit: usize) -> i8 {
        let source = f.source();
        let m = self.n + 1;
        let phi = source.simplex(SimplexId::new(m, segment));
        let entry_s = source.simplex(SimplexId::new(self.n, entry));
        let exit_s = source.simplex(SimplexId::new(self.n, exit));
        let x = phi.iter().position(|v| !entry_s.contains(v)).expect("entry face");
        let y = phi.iter().position(|v| !exit_s.contains(v)).expect("exit face");
        let sigma = f.target().simplex(self.sigma);
        let lift = |t: usize| -> usize {
            phi.iter()
                .position(|&v| f.assignment()[v] == t)
                .expect("phi maps onto sigma")
        };
        // coordinates: drop barycentric coordinate 0
        let vector = |plus: usize, minus: usize| -> Vec<i64> {
            let mut v = vec![0i64; m + 1];
            v[plus] += 1;
            v[minus] -= 1;
            v[1..].to_vec()
        };
        let mut columns = vec![vector(x, y)];
        for k in 1..sigma.len() {
            columns.push(vector(lift(sigma[k]), lift(sigma[0])));
        }
        let rows: Vec<Vec<i64>> = (0..m).map(|i| columns.iter().map(|c| c[i]).collect()).collect();
        let det = IntegerMatrix::from_rows(&rows).determinant();
        use num_traits::Signed;
        if det.is_positive() {
            1
        } else {
            -1
        }
    }
}

/// Sum of the cocycle over the directed edges of the loop.
pub fn evaluate_cocycle_on_loop(
    f: &SimplicialMap,
    module: &CoefficientModule,
    z: &Cocycle,
    l: &OrientedLoop,
) -> Result<ModuleElement> {
    if z.degree() != 1 {
        return Err(Error::Precondition(format!("loops pair with degree 1 cocycles, got degree {}", z.degree())));
    }
    l.edges.iter().try_fold(module.zero(), |acc, &(a, b)| {
        Ok(module.add(&acc, &z.cochain().evaluate(f.source(), module, &[a, b])?))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::orient_coherently;
    use crate::generators;
    use crate::reeb::build_reeb;

    #[test]
    fn torus_fiber_is_a_circle() {
        let (_, f) = generators::torus(3, 4).unwrap();
        for e in 0..3 {
            let fib = fiber_over(&f, SimplexId::new(1, e)).unwrap();
            assert_eq!(fib.component_count(), 1);
            assert_eq!(fib.euler_characteristic(0).unwrap(), 0);
            // four crossing edges, eight triangles... the staircase gives 2b of each
            assert_eq!(fib.census(0), vec![8, 8]);
        }
    }

    #[test]
    fn octahedron_equator() {
        let f = generators::octahedron_height();
        let mid = f.target().index_of(&[1, 2]).unwrap();
        let low = f.target().index_of(&[0, 1]).unwrap();
        let fib = fiber_over(&f, SimplexId::new(1, low)).unwrap();
        assert_eq!(fib.census(0), vec![4, 4]);
        let fib = fiber_over(&f, SimplexId::new(1, mid)).unwrap();
        assert_eq!(fib.component_count(), 1);
        let l = fib.fiber_loop(&f, 0, RepresentativeRule::Smallest, None, None).unwrap();
        // the crossing edges run from the equator up to the pole, so the
        // representatives are the four equator vertices
        assert_eq!(l.edges.len(), 4);
        let mut vs: Vec<usize> = l.edges.iter().map(|e| e.0).collect();
        vs.sort_unstable();
        assert_eq!(vs, vec![0, 1, 2, 3]);
    }

    #[test]
    fn rp2_fiber_euler_characteristic() {
        let f = generators::rp2_x_s1(3).unwrap();
        let fib = fiber_over(&f, SimplexId::new(1, 0)).unwrap();
        assert_eq!(fib.component_count(), 1);
        assert_eq!(fib.euler_characteristic(0).unwrap(), 1);
        let f = generators::t3(3, 3, 3).unwrap();
        let fib = fiber_over(&f, SimplexId::new(1, 0)).unwrap();
        assert_eq!(fib.euler_characteristic(0).unwrap(), 0);
    }

    #[test]
    fn components_match_reeb_cells() {
        let f = generators::torus_height(3).unwrap();
        let w = build_reeb(&f).unwrap();
        for e in 0..f.target().count(1) {
            let sigma = SimplexId::new(1, e);
            let fib = fiber_over(&f, sigma).unwrap();
            let cells: Vec<usize> = w.top_cells().into_iter().filter(|&c| w.cell(c).sigma == sigma).collect();
            assert_eq!(fib.component_count(), cells.len());
            for (i, &c) in cells.iter().enumerate() {
                for phi in fib.component_cells(i) {
                    assert_eq!(w.cell_of(phi, sigma), Some(c));
                }
            }
        }
    }

    #[test]
    fn dual_cocycle_evaluates_to_one_and_reverses() {
        let (t, f) = generators::torus(3, 4).unwrap();
        let (_, z) = generators::dual_cocycle_torus(3, 4).unwrap();
        let so = orient_coherently(&t).unwrap().orientation().unwrap().clone();
        let to = orient_coherently(f.target()).unwrap().orientation().unwrap().clone();
        let zm = CoefficientModule::integers();
        let mut values = Vec::new();
        for e in 0..3 {
            let fib = fiber_over(&f, SimplexId::new(1, e)).unwrap();
            let l = fib.fiber_loop(&f, 0, RepresentativeRule::Smallest, Some(&so), Some(&to)).unwrap();
            assert!(l.oriented);
            let v = evaluate_cocycle_on_loop(&f, &zm, &z, &l).unwrap();
            let w = evaluate_cocycle_on_loop(&f, &zm, &z, &l.reversed()).unwrap();
            assert_eq!(w, zm.neg(&v));
            let rev = fib.fiber_loop(&f, 0, RepresentativeRule::Smallest, Some(&so), Some(&to.reversed())).unwrap();
            assert_eq!(evaluate_cocycle_on_loop(&f, &zm, &z, &rev).unwrap(), w);
            values.push(v);
        }
        // coherent orientations give the same value on every edge of the target
        assert!(values.iter().all(|v| v == &values[0]));
        assert!(values[0] == zm.element(&[1]).unwrap() || values[0] == zm.element(&[-1]).unwrap());
    }
}
