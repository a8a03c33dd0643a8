//! Deterministic fixture complexes, maps and cochains.

use crate::algebra::CoefficientModule;
use crate::complex::{Cochain, Cocycle, SimplicialComplex};
use crate::error::{Error, Result};
use crate::map::{pullback_cochain, SimplicialMap};
use crate::pq::{self, PseudoQuotient};

pub fn circle(k: usize) -> Result<SimplicialComplex> {
    if k < 3 {
        return Err(Error::InvalidInput(format!("circle needs at least 3 vertices, got {k}")));
    }
    SimplicialComplex::build(&(0..k).map(|i| vec![i, (i + 1) % k]).collect::<Vec<_>>())
}

/// Path with `k` vertices.
pub fn path(k: usize) -> Result<SimplicialComplex> {
    if k < 2 {
        return Err(Error::InvalidInput(format!("path needs at least 2 vertices, got {k}")));
    }
    SimplicialComplex::build(&(0..k - 1).map(|i| vec![i, i + 1]).collect::<Vec<_>>())
}

/// Equator `0..4`, north pole 4, south pole 5.
pub fn sphere_octahedron() -> SimplicialComplex {
    let mut tris = Vec::new();
    for i in 0..4 {
        tris.push(vec![i, (i + 1) % 4, 4]);
        tris.push(vec![i, (i + 1) % 4, 5]);
    }
    SimplicialComplex::build(&tris).expect("octahedron")
}

/// Minimal 6-vertex real projective plane.
pub fn rp2_6() -> SimplicialComplex {
    SimplicialComplex::build(&[
        vec![0, 1, 2],
        vec![0, 2, 3],
        vec![0, 3, 4],
        vec![0, 4, 5],
        vec![0, 5, 1],
        vec![1, 2, 4],
        vec![2, 3, 5],
        vec![3, 4, 1],
        vec![4, 5, 2],
        vec![5, 1, 3],
    ])
    .expect("rp2")
}

/// Staircase triangulation of `K x L`; vertex `(i, j)` is `i * |L| + j`.
/// Returns the product with its two projections.
pub fn product(k: &SimplicialComplex, l: &SimplicialComplex) -> Result<(SimplicialComplex, SimplicialMap, SimplicialMap)> {
    let w = l.vertex_count();
    let mut tops = Vec::new();
    for s in k.maximal_simplices() {
        for t in l.maximal_simplices() {
            let (p, q) = (s.len() - 1, t.len() - 1);
            // lattice paths from (0,0) to (p,q): choose which of the p+q steps go right
            for mask in 0u64..(1 << (p + q)) {
                if mask.count_ones() as usize != p {
                    continue;
                }
                let (mut a, mut b) = (0, 0);
                let mut simplex = vec![s[0] * w + t[0]];
                for step in 0..p + q {
                    if mask >> step & 1 == 1 {
                        a += 1;
                    } else {
                        b += 1;
                    }
                    simplex.push(s[a] * w + t[b]);
                }
                tops.push(simplex);
            }
        }
    }
    let prod = SimplicialComplex::with_vertices(k.vertex_count() * w, &tops)?;
    let first = SimplicialMap::new(prod.clone(), k.clone(), (0..prod.vertex_count()).map(|v| v / w).collect())?;
    let second = SimplicialMap::new(prod.clone(), l.clone(), (0..prod.vertex_count()).map(|v| v % w).collect())?;
    Ok((prod, first, second))
}

/// `C_a x C_b` with its projection to the first factor.
pub fn torus(a: usize, b: usize) -> Result<(SimplicialComplex, SimplicialMap)> {
    let (t, p, _) = product(&circle(a)?, &circle(b)?)?;
    Ok((t, p))
}

/// Map to a path given by one level per vertex; adjacent vertices must differ by at most one.
pub fn height(c: &SimplicialComplex, levels: &[usize]) -> Result<SimplicialMap> {
    if levels.len() != c.vertex_count() {
        return Err(Error::InvalidInput(format!(
            "{} levels for {} vertices",
            levels.len(),
            c.vertex_count()
        )));
    }
    for e in c.simplices(1) {
        if levels[e[0]].abs_diff(levels[e[1]]) > 1 {
            return Err(Error::InvalidInput(format!(
                "edge {:?} joins levels {} and {}",
                e, levels[e[0]], levels[e[1]]
            )));
        }
    }
    let top = levels.iter().max().copied().unwrap_or(0);
    SimplicialMap::new(c.clone(), path(top.max(1) + 1)?, levels.to_vec())
}

pub fn octahedron_height() -> SimplicialMap {
    height(&sphere_octahedron(), &[1, 1, 1, 1, 2, 0]).expect("octahedron height")
}

/// Torus standing on one of its meridians: `C_4 x C_k` with levels 0,1,2,1 along the first factor.
pub fn torus_height(k: usize) -> Result<SimplicialMap> {
    let (t, _, _) = product(&circle(4)?, &circle(k)?)?;
    let levels: Vec<usize> = (0..t.vertex_count()).map(|v| [0, 1, 2, 1][v / k]).collect();
    height(&t, &levels)
}

/// A sphere with one minimum and two maxima separated by a chord at the middle level.
pub fn two_bump_sphere() -> SimplicialMap {
    let (s, t1, t2) = (6, 7, 8);
    let mut tris = Vec::new();
    for i in 0..6 {
        tris.push(vec![s, i, (i + 1) % 6]);
    }
    for i in 0..3 {
        tris.push(vec![t1, i, i + 1]);
        tris.push(vec![t2, i + 3, (i + 4) % 6]);
    }
    tris.push(vec![t1, 0, 3]);
    tris.push(vec![t2, 0, 3]);
    let c = SimplicialComplex::build(&tris).expect("two-bump sphere");
    height(&c, &[1, 1, 1, 1, 1, 1, 0, 2, 2]).expect("levels differ by one")
}

/// Suspension of the octahedron standing on its two cone points.
pub fn s3_height() -> SimplicialMap {
    let oct = sphere_octahedron();
    let mut tops = Vec::new();
    for t in oct.simplices(2) {
        for apex in [6, 7] {
            let mut s = t.clone();
            s.push(apex);
            tops.push(s);
        }
    }
    let c = SimplicialComplex::build(&tops).expect("suspension");
    height(&c, &[1, 1, 1, 1, 1, 1, 0, 2]).expect("levels differ by one")
}

/// `RP^2 x C_k` projected to the circle.
pub fn rp2_x_s1(k: usize) -> Result<SimplicialMap> {
    Ok(product(&rp2_6(), &circle(k)?)?.2)
}

/// `C_a x C_b x C_c` projected to the last circle.
pub fn t3(a: usize, b: usize, c: usize) -> Result<SimplicialMap> {
    let (t, _, _) = product(&circle(a)?, &circle(b)?)?;
    Ok(product(&t, &circle(c)?)?.2)
}

/// Klein bottle on an `a x b` grid: the seam `i = a` is glued to `i = 0` with `j -> -j`.
pub fn klein(a: usize, b: usize) -> Result<SimplicialComplex> {
    if a < 3 || b < 3 {
        return Err(Error::InvalidInput("klein needs a, b >= 3".into()));
    }
    let vertex = |i: usize, j: usize| -> usize {
        if i == a {
            (b - j % b) % b
        } else {
            i * b + j % b
        }
    };
    let mut tris = Vec::new();
    for i in 0..a {
        for j in 0..b {
            let (p00, p10, p01, p11) = (vertex(i, j), vertex(i + 1, j), vertex(i, j + 1), vertex(i + 1, j + 1));
            tris.push(vec![p00, p10, p11]);
            tris.push(vec![p00, p01, p11]);
        }
    }
    let k = SimplicialComplex::build(&tris)?;
    if k.count(2) != 2 * a * b || !k.is_closed_pseudomanifold() {
        return Err(Error::InvalidInput(format!("klein {a} {b} does not give a simplicial surface")));
    }
    Ok(k)
}

/// Degree-one cocycle on `torus a b` pulled back from the generator of the
/// second circle supported on its edge `{0, b-1}`. It evaluates to one on each
/// fiber of the projection to the first factor.
pub fn dual_cocycle_torus(a: usize, b: usize) -> Result<(SimplicialComplex, Cocycle)> {
    let cb = circle(b)?;
    let (t, _, second) = product(&circle(a)?, &cb)?;
    let z = CoefficientModule::integers();
    let mut gen = Cochain::zero(&cb, &z, 1);
    gen.set(&z, cb.index_of(&[0, b - 1]).expect("cut edge"), &z.element(&[-1])?);
    let pulled = pullback_cochain(&t, &cb, second.assignment(), &z, &gen)?;
    let cocycle = Cocycle::new(&t, &z, pulled)?;
    Ok((t, cocycle))
}

/// Output of [`generate`].
#[derive(Clone, Debug)]
pub enum Generated {
    Complex(SimplicialComplex),
    Map(SimplicialMap),
    Quotient(PseudoQuotient),
    Cocycle(SimplicialComplex, Cocycle),
}

pub const CATALOG: &[&str] = &[
    "circle k",
    "path k",
    "sphere-octahedron",
    "rp2-6",
    "torus a b",
    "torus-projection a b",
    "klein a b",
    "product K L",
    "height C l0 l1 ...",
    "octahedron-height",
    "torus-height [k]",
    "two-bump-sphere",
    "s3-height",
    "rp2xS1 k",
    "t3 a b c",
    "round-fold-s2xs2",
    "special-generic-disc",
    "dual-cocycle torus a b",
];

/// Builds a catalog entry. `args` are the words after the name; `product`
/// takes two complex specs of the form `name:p1,p2` (for example `circle:3`).
pub fn generate(name: &str, args: &[String]) -> Result<Generated> {
    let nums = |count: usize| -> Result<Vec<usize>> {
        if args.len() != count {
            return Err(Error::InvalidInput(format!(
                "{name} takes {count} parameter(s), got {}",
                args.len()
            )));
        }
        args.iter()
            .map(|a| {
                a.parse::<usize>()
                    .map_err(|_| Error::InvalidInput(format!("{name}: parameter {a:?} is not a nonnegative integer")))
            })
            .collect()
    };
    Ok(match name {
        "circle" => Generated::Complex(circle(nums(1)?[0])?),
        "path" => Generated::Complex(path(nums(1)?[0])?),
        "sphere-octahedron" => {
            nums(0)?;
            Generated::Complex(sphere_octahedron())
        }
        "rp2-6" => {
            nums(0)?;
            Generated::Complex(rp2_6())
        }
        "torus" => {
            let p = nums(2)?;
            Generated::Complex(torus(p[0], p[1])?.0)
        }
        "torus-projection" => {
            let p = nums(2)?;
            Generated::Map(torus(p[0], p[1])?.1)
        }
        "klein" => {
            let p = nums(2)?;
            Generated::Complex(klein(p[0], p[1])?)
        }
        "product" => {
            if args.len() != 2 {
                return Err(Error::InvalidInput("product takes two complex specs".into()));
            }
            let k = complex_spec(&args[0])?;
            let l = complex_spec(&args[1])?;
            Generated::Map(product(&k, &l)?.1)
        }
        "height" => {
            let Some((spec, levels)) = args.split_first() else {
                return Err(Error::InvalidInput("height takes a complex spec and one level per vertex".into()));
            };
            let c = complex_spec(spec)?;
            let levels = levels
                .iter()
                .map(|a| a.parse::<usize>().map_err(|_| Error::InvalidInput(format!("bad level {a:?}"))))
                .collect::<Result<Vec<_>>>()?;
            Generated::Map(height(&c, &levels)?)
        }
        "octahedron-height" => {
            nums(0)?;
            Generated::Map(octahedron_height())
        }
        "torus-height" => {
            let k = if args.is_empty() { 3 } else { nums(1)?[0] };
            Generated::Map(torus_height(k)?)
        }
        "two-bump-sphere" => {
            nums(0)?;
            Generated::Map(two_bump_sphere())
        }
        "s3-height" => {
            nums(0)?;
            Generated::Map(s3_height())
        }
        "rp2xS1" => Generated::Map(rp2_x_s1(nums(1)?[0])?),
        "t3" => {
            let p = nums(3)?;
            Generated::Map(t3(p[0], p[1], p[2])?)
        }
        "round-fold-s2xs2" => {
            nums(0)?;
            Generated::Quotient(pq::round_fold_s2xs2())
        }
        "special-generic-disc" => {
            nums(0)?;
            Generated::Quotient(pq::special_generic_disc())
        }
        "dual-cocycle" => {
            if args.first().map(String::as_str) != Some("torus") {
                return Err(Error::InvalidInput("usage: dual-cocycle torus a b".into()));
            }
            let rest = &args[1..];
            let p = generate_nums(rest)?;
            if p.len() != 2 {
                return Err(Error::InvalidInput("usage: dual-cocycle torus a b".into()));
            }
            let (t, c) = dual_cocycle_torus(p[0], p[1])?;
            Generated::Cocycle(t, c)
        }
        other => {
            return Err(Error::InvalidInput(format!(
                "unknown generator {other:?}; known: {}",
                CATALOG.join(", ")
            )))
        }
    })
}

fn generate_nums(args: &[String]) -> Result<Vec<usize>> {
    args.iter()
        .map(|a| a.parse::<usize>().map_err(|_| Error::InvalidInput(format!("bad parameter {a:?}"))))
        .collect()
}

/// Parses `name` or `name:p1,p2` for a complex-valued catalog entry.
pub fn complex_spec(spec: &str) -> Result<SimplicialComplex> {
    let (name, params) = spec.split_once(':').unwrap_or((spec, ""));
    let args: Vec<String> = params.split(',').filter(|s| !s.is_empty()).map(str::to_string).collect();
    match generate(name, &args)? {
        Generated::Complex(c) => Ok(c),
        _ => Err(Error::InvalidInput(format!("{name} does not produce a complex"))),
    }
}
