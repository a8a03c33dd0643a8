//! The fiber-class cycle of the torus projection: each fiber circle pairs to
//! one with the dual cocycle, the labels close up, and the class is nonzero.

use reebcycle::algebra::CoefficientModule;
use reebcycle::cycle::{build_cycle, check_cycle, nontriviality, Labeler};
use reebcycle::generators;
use reebcycle::reeb::build_reeb;

fn main() -> reebcycle::Result<()> {
    let (a, b) = (3, 4);
    let (_, f) = generators::torus(a, b)?;
    let (_, z) = generators::dual_cocycle_torus(a, b)?;
    let w = build_reeb(&f)?;
    let c = build_cycle(&f, &w, &Labeler::cocycle(CoefficientModule::integers(), z))?;
    for (cell, label) in &c.labels {
        println!("top cell c{cell} over {:?}: label {label}", w.target_simplex(w.cell(*cell).sigma));
    }
    let check = check_cycle(&c, &w);
    println!("walls with nonzero residual: {:?}", check.nonzero_walls());
    let v = nontriviality(&c, &w)?;
    println!("H{} = {}, class nonzero: {}", v.degree, v.top_homology, v.nontrivial);

    // a single wrong label breaks the cycle at exactly that cell's walls
    let one = c.module.element(&[1])?;
    let top = w.top_cells()[0];
    let bad = c.perturbed(top, &one);
    println!(
        "after bumping c{top}: residual at {:?} (faces {:?})",
        check_cycle(&bad, &w).nonzero_walls(),
        w.facets(top)
    );
    Ok(())
}
