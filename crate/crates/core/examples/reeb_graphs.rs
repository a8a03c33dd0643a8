//! Reeb graphs of height functions, compared with the level-set sweep.

use reebcycle::algebra::CoefficientModule;
use reebcycle::generators;
use reebcycle::map::SimplicialMap;
use reebcycle::reeb::{build_reeb, compare_with_reeb, sweep_oracle};

fn main() -> reebcycle::Result<()> {
    let maps: Vec<(&str, SimplicialMap)> = vec![
        ("octahedron height", generators::octahedron_height()),
        ("two-bump sphere", generators::two_bump_sphere()),
        ("torus height", generators::torus_height(3)?),
        ("torus projection", generators::torus(3, 4)?.1),
    ];
    for (name, f) in &maps {
        let w = build_reeb(f)?;
        let oracle = sweep_oracle(f)?;
        let agree = compare_with_reeb(&oracle, &w, f).matches();
        let h1 = &w.homology(&CoefficientModule::integers())?[1];
        println!(
            "{name:<18} cells {:?}  H1 = {h1:<3} sweep b1 = {}  oracle agrees: {agree}",
            w.counts(),
            oracle.first_betti_number()
        );
        for c in w.cells_of_dim(0) {
            let cell = w.cell(c);
            println!(
                "    vertex c{c} over target vertex {:?}, valence {}",
                w.target_simplex(cell.sigma),
                w.cofacets(c).len()
            );
        }
    }
    Ok(())
}
