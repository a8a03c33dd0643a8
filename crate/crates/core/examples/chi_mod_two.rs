//! Surface fibers labeled by Euler characteristic mod 2: the projection
//! RP2 x S1 -> S1 has a nonzero class in H1 of its Reeb space with Z/2
//! coefficients.

use reebcycle::cycle::{build_cycle, check_cycle, nontriviality, Labeler};
use reebcycle::generators;
use reebcycle::reeb::build_reeb;

fn main() -> reebcycle::Result<()> {
    let f = generators::rp2_x_s1(3)?;
    let w = build_reeb(&f)?;
    let c = build_cycle(&f, &w, &Labeler::ChiModTwo)?;
    let labels: Vec<String> = c.labels.iter().map(|(cell, v)| format!("c{cell}={v}")).collect();
    println!("labels: {}", labels.join(" "));
    println!("cycle: {}", check_cycle(&c, &w).passed());
    let v = nontriviality(&c, &w)?;
    println!("H1(W; Z/2) = {}, nonzero: {}", v.top_homology, v.nontrivial);

    // a torus fiber has even Euler characteristic, so T3 gives the zero chain
    let g = generators::t3(3, 3, 3)?;
    let wg = build_reeb(&g)?;
    let cg = build_cycle(&g, &wg, &Labeler::ChiModTwo)?;
    println!("T3 -> S1: chain is zero: {}", cg.is_zero());
    Ok(())
}
