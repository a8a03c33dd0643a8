use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::ReebComplex;
use crate::complex::SimplexId;
use crate::error::{Error, Result};
use crate::map::SimplicialMap;
use crate::union_find::UnionFind;

/// Reeb graph of a map to a 1-dimensional target, computed from level sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReebGraph {
    /// `(target vertex, source vertices in the component)`.
    pub vertices: Vec<(usize, Vec<usize>)>,
    /// `(target edge index, crossing source edges, endpoint graph vertices)`.
    pub edges: Vec<(usize, Vec<[usize; 2]>, BTreeSet<usize>)>,
}

impl ReebGraph {
    pub fn first_betti_number(&self) -> usize {
        let mut uf = UnionFind::new(self.vertices.len());
        let mut independent = 0;
        for (_, _, ends) in &self.edges {
            let e: Vec<usize> = ends.iter().copied().collect();
            let merged = match e[..] {
                [a, b] => uf.union(a, b),
                _ => false,
            };
            if merged {
                independent += 1;
            }
        }
        self.edges.len() - independent
    }
}

/// Level-set sweep: components of each vertex level, and components of the
/// set of source edges crossing each target edge (joined through triangles).
pub fn sweep_oracle(f: &SimplicialMap) -> Result<ReebGraph> {
    let target = f.target();
    let source = f.source();
    if target.dim() != 1 {
        return Err(Error::Precondition(format!(
            "the sweep oracle needs a 1-dimensional target, got dimension {}",
            target.dim()
        )));
    }
    let level = f.assignment();
    let mut uf = UnionFind::new(source.vertex_count());
    for e in source.simplices(1) {
        if level[e[0]] == level[e[1]] {
            uf.union(e[0], e[1]);
        }
    }
    let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..source.vertex_count() {
        by_root.entry(uf.find(v)).or_default().push(v);
    }
    let mut vertices: Vec<(usize, Vec<usize>)> = by_root.into_values().map(|vs| (level[vs[0]], vs)).collect();
    vertices.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    let mut vertex_of = vec![0usize; source.vertex_count()];
    for (i, (_, vs)) in vertices.iter().enumerate() {
        for &v in vs {
            vertex_of[v] = i;
        }
    }

    let crossing: Vec<usize> = (0..source.count(1))
        .filter(|&j| {
            let e = &source.simplices(1)[j];
            level[e[0]] != level[e[1]]
        })
        .collect();
    let local: HashMap<usize, usize> = crossing.iter().enumerate().map(|(i, &j)| (j, i)).collect();
    let mut cuf = UnionFind::new(crossing.len());
    for t in 0..source.count(2) {
        let crossed: Vec<usize> = source
            .facets(SimplexId::new(2, t))
            .into_iter()
            .filter(|e| local.contains_key(e))
            .collect();
        // a triangle over an edge has exactly two crossing edges
        if crossed.len() == 2 {
            let (a, b) = (crossed[0], crossed[1]);
            let ea = &source.simplices(1)[a];
            let eb = &source.simplices(1)[b];
            let img = |e: &Vec<usize>| {
                let mut x = [level[e[0]], level[e[1]]];
                x.sort_unstable();
                x
            };
            if img(ea) == img(eb) {
                cuf.union(local[&a], local[&b]);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, &j) in crossing.iter().enumerate() {
        groups.entry(cuf.find(i)).or_default().push(j);
    }
    let mut edges: Vec<(usize, Vec<[usize; 2]>, BTreeSet<usize>)> = groups
        .into_values()
        .map(|js| {
            let first = &source.simplices(1)[js[0]];
            let img = target
                .index_of(&{
                    let mut x = vec![level[first[0]], level[first[1]]];
                    x.sort_unstable();
                    x
                })
                .expect("validated map");
            let members: Vec<[usize; 2]> = js.iter().map(|&j| {
                let e = &source.simplices(1)[j];
                [e[0], e[1]]
            }).collect();
            let ends: BTreeSet<usize> = members.iter().flat_map(|e| [vertex_of[e[0]], vertex_of[e[1]]]).collect();
            (img, members, ends)
        })
        .collect();
    edges.sort();
    Ok(ReebGraph { vertices, edges })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleMatch {
    pub vertex_counts: (usize, usize),
    pub edge_counts: (usize, usize),
    pub incidence_agrees: bool,
}

impl OracleMatch {
    pub fn matches(&self) -> bool {
        self.vertex_counts.0 == self.vertex_counts.1 && self.edge_counts.0 == self.edge_counts.1 && self.incidence_agrees
    }
}

/// Matches oracle components to Reeb cells through their member source
/// vertices and edges, then compares incidences.
pub fn compare_with_reeb(graph: &ReebGraph, reeb: &ReebComplex, f: &SimplicialMap) -> OracleMatch {
    let source = f.source();
    let reeb_vertices = reeb.cells_of_dim(0);
    let reeb_edges = reeb.cells_of_dim(1);
    let mut agrees = true;
    let mut vertex_match: HashMap<usize, usize> = HashMap::new();
    for (i, (t, members)) in graph.vertices.iter().enumerate() {
        let cells: BTreeSet<Option<usize>> = members
            .iter()
            .map(|&v| reeb.cell_of(SimplexId::new(0, v), SimplexId::new(0, *t)))
            .collect();
        match cells.into_iter().collect::<Vec<_>>()[..] {
            [Some(c)] => {
                vertex_match.insert(i, c);
            }
            _ => agrees = false,
        }
    }
    let matched: BTreeSet<usize> = vertex_match.values().copied().collect();
    agrees &= matched.len() == graph.vertices.len() && matched.len() == reeb_vertices.len();
    let mut edge_cells = BTreeSet::new();
    for (t, members, ends) in &graph.edges {
        let cells: BTreeSet<Option<usize>> = members
            .iter()
            .map(|e| {
                let j = source.index_of(&e[..]).expect("source edge");
                reeb.cell_of(SimplexId::new(1, j), SimplexId::new(1, *t))
            })
            .collect();
        match cells.into_iter().collect::<Vec<_>>()[..] {
            [Some(c)] => {
                edge_cells.insert(c);
                let expected: BTreeSet<usize> = ends.iter().filter_map(|v| vertex_match.get(v).copied()).collect();
                let actual: BTreeSet<usize> = reeb.facets(c).iter().copied().collect();
                agrees &= expected == actual;
            }
            _ => agrees = false,
        }
    }
    agrees &= edge_cells.len() == graph.edges.len() && edge_cells.len() == reeb_edges.len();
    OracleMatch {
        vertex_counts: (graph.vertices.len(), reeb_vertices.len()),
        edge_counts: (graph.edges.len(), reeb_edges.len()),
        incidence_agrees: agrees,
    }
}
