use std::collections::VecDeque;

use super::{SimplexId, SimplicialComplex};
use crate::error::Result;

/// A sign per top simplex, relative to its sorted vertex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    signs: Vec<i8>,
}

impl Orientation {
    pub fn from_signs(signs: Vec<i8>) -> Self {
        Orientation { signs }
    }

    pub fn sign(&self, top_index: usize) -> i8 {
        self.signs[top_index]
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn reversed(&self) -> Self {
        Orientation {
            signs: self.signs.iter().map(|s| -s).collect(),
        }
    }

    /// Integer boundary of the signed sum of all top simplices, as coefficients
    /// on `(d-1)`-simplices.
    pub fn fundamental_boundary(&self, k: &SimplicialComplex) -> Vec<i64> {
        let d = k.dim();
        let mut out = vec![0i64; k.count(d.saturating_sub(1))];
        if d == 0 {
            return out;
        }
        for (t, &s) in self.signs.iter().enumerate() {
            for (i, f) in k.facets(SimplexId::new(d, t)).into_iter().enumerate() {
                out[f] += if i % 2 == 0 { s as i64 } else { -(s as i64) };
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrientationVerdict {
    Orientable(Orientation),
    /// Closed walk of adjacent top simplices along which signs cannot be propagated consistently.
    NonOrientable { cycle: Vec<usize> },
}

impl OrientationVerdict {
    pub fn orientation(&self) -> Option<&Orientation> {
        match self {
            OrientationVerdict::Orientable(o) => Some(o),
            OrientationVerdict::NonOrientable { .. } => None,
        }
    }

    pub fn is_orientable(&self) -> bool {
        matches!(self, OrientationVerdict::Orientable(_))
    }
}

/// Propagates signs across shared codimension-one faces, component by
/// component; the smallest top simplex of each component is positive.
pub fn orient_coherently(k: &SimplicialComplex) -> Result<OrientationVerdict> {
    k.check_pseudomanifold()?;
    let d = k.dim();
    let n = k.count(d);
    if d == 0 {
        return Ok(OrientationVerdict::Orientable(Orientation::from_signs(vec![1; n])));
    }
    // face -> [(top, position of removed vertex)]
    let mut incident: Vec<Vec<(usize, usize)>> = vec![Vec::new(); k.count(d - 1)];
    for t in 0..n {
        for (i, f) in k.facets(SimplexId::new(d, t)).into_iter().enumerate() {
            incident[f].push((t, i));
        }
    }
    let mut neighbours: Vec<Vec<(usize, i8)>> = vec![Vec::new(); n];
    for inc in &incident {
        if let [(a, i), (b, j)] = inc[..] {
            // coherent: s_a (-1)^i = - s_b (-1)^j
            let rel = if (i + j) % 2 == 0 { -1 } else { 1 };
            neighbours[a].push((b, rel));
            neighbours[b].push((a, rel));
        }
    }
    let mut signs = vec![0i8; n];
    let mut parent = vec![usize::MAX; n];
    for root in 0..n {
        if signs[root] != 0 {
            continue;
        }
        signs[root] = 1;
        let mut queue = VecDeque::from([root]);
        while let Some(t) = queue.pop_front() {
            for &(u, rel) in &neighbours[t] {
                let want = signs[t] * rel;
                if signs[u] == 0 {
                    signs[u] = want;
                    parent[u] = t;
                    queue.push_back(u);
                } else if signs[u] != want {
                    return Ok(OrientationVerdict::NonOrientable {
                        cycle: contradiction_cycle(&parent, t, u),
                    });
                }
            }
        }
    }
    Ok(OrientationVerdict::Orientable(Orientation::from_signs(signs)))
}

fn contradiction_cycle(parent: &[usize], a: usize, b: usize) -> Vec<usize> {
    let path = |mut x: usize| {
        let mut p = vec![x];
        while parent[x] != usize::MAX {
            x = parent[x];
            p.push(x);
        }
        p.reverse();
        p
    };
    let (pa, pb) = (path(a), path(b));
    let common = pa.iter().zip(&pb).take_while(|(x, y)| x == y).count();
    // walk: lca -> ... -> a -> b -> ... -> lca
    let mut cycle: Vec<usize> = pa[common - 1..].to_vec();
    cycle.extend(pb[common..].iter().rev());
    cycle
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::tests::rp2;

    fn octahedron() -> SimplicialComplex {
        let mut tris = Vec::new();
        for i in 0..4 {
            tris.push(vec![i, (i + 1) % 4, 4]);
            tris.push(vec![i, (i + 1) % 4, 5]);
        }
        SimplicialComplex::build(&tris).unwrap()
    }

    #[test]
    fn octahedron_is_orientable_and_closed() {
        let s2 = octahedron();
        let v = orient_coherently(&s2).unwrap();
        let o = v.orientation().expect("orientable");
        assert!(o.fundamental_boundary(&s2).iter().all(|&c| c == 0));
    }

    #[test]
    fn rp2_reports_a_contradiction_cycle() {
        let k = rp2();
        match orient_coherently(&k).unwrap() {
            OrientationVerdict::NonOrientable { cycle } => {
                assert!(cycle.len() >= 2);
                // consecutive entries share an edge (the walk closes through its ends)
                let tops = k.simplices(2);
                for w in cycle.windows(2) {
                    let shared = tops[w[0]].iter().filter(|v| tops[w[1]].contains(v)).count();
                    assert_eq!(shared, 2);
                }
                let (first, last) = (&tops[cycle[0]], &tops[*cycle.last().unwrap()]);
                assert_eq!(first.iter().filter(|v| last.contains(v)).count(), 2);
            }
            other => panic!("expected non-orientable, got {other:?}"),
        }
    }

    #[test]
    fn disc_with_boundary_orients() {
        let disc = SimplicialComplex::build(&[vec![0, 1, 2], vec![0, 2, 3]]).unwrap();
        let o = orient_coherently(&disc).unwrap();
        let o = o.orientation().unwrap();
        assert_eq!(o.signs(), &[1, 1]);
        assert_eq!(o.fundamental_boundary(&disc).iter().filter(|&&c| c != 0).count(), 4);
    }
}
