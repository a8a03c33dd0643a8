use super::{SimplexId, SimplicialComplex};
use crate::error::{Error, Result};

/// A subdivision together with the carrier (smallest containing simplex of
/// the parent complex) of each new vertex.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub complex: SimplicialComplex,
    pub carriers: Vec<SimplexId>,
}

/// Barycentric subdivision. Vertex `i` is the barycenter of the `i`-th simplex of
/// the parent in `(dim, index)` order, so original vertices keep their numbers.
pub fn barycentric_subdivision(k: &SimplicialComplex) -> Result<Subdivision> {
    let carriers: Vec<SimplexId> = k.ids().collect();
    let mut offset = vec![0usize; k.dim() + 2];
    for d in 0..=k.dim() {
        offset[d + 1] = offset[d] + k.count(d);
    }
    let vertex_of = |s: &[usize]| -> usize {
        let d = s.len() - 1;
        offset[d] + k.index_of(s).expect("face of the parent")
    };
    let mut flags = Vec::new();
    for top in k.maximal_simplices() {
        // every ordering of the vertices gives one maximal flag
        let mut perm = top.clone();
        for_each_permutation(&mut perm, 0, &mut |p| {
            let mut flag = Vec::with_capacity(p.len());
            let mut face: Vec<usize> = Vec::with_capacity(p.len());
            for &v in p {
                let pos = face.partition_point(|&x| x < v);
                face.insert(pos, v);
                flag.push(vertex_of(&face));
            }
            flags.push(flag);
        });
    }
    let complex = SimplicialComplex::with_vertices(carriers.len(), &flags)?;
    Ok(Subdivision { complex, carriers })
}

fn for_each_permutation(v: &mut Vec<usize>, start: usize, f: &mut impl FnMut(&[usize])) {
    if start == v.len() {
        f(v);
        return;
    }
    for i in start..v.len() {
        v.swap(start, i);
        for_each_permutation(v, start + 1, f);
        v.swap(start, i);
    }
}

/// Stellar subdivision at `simplex` (dimension at least one); the new vertex is
/// numbered `vertex_count`.
pub fn stellar_subdivision(k: &SimplicialComplex, simplex: SimplexId) -> Result<Subdivision> {
    if simplex.dim == 0 {
        return Err(Error::InvalidInput("stellar subdivision at a vertex is trivial".into()));
    }
    let phi = k.simplex(simplex).to_vec();
    let v = k.vertex_count();
    let mut maximal = Vec::new();
    for top in k.maximal_simplices() {
        if !phi.iter().all(|x| top.contains(x)) {
            maximal.push(top);
            continue;
        }
        for w in &phi {
            let mut s: Vec<usize> = top.iter().copied().filter(|x| x != w).collect();
            s.push(v);
            maximal.push(s);
        }
    }
    let complex = SimplicialComplex::with_vertices(v + 1, &maximal)?;
    let mut carriers: Vec<SimplexId> = (0..v).map(|i| SimplexId::new(0, i)).collect();
    carriers.push(simplex);
    Ok(Subdivision { complex, carriers })
}
