//! User-supplied labels in a presented module: one generator gives a nonzero
//! class, and killing the generator collapses it.

use reebcycle::algebra::QuotientLabelModule;
use reebcycle::cycle::{build_cycle, nontriviality, LabelTable, Labeler};
use reebcycle::generators;
use reebcycle::reeb::build_reeb;

fn main() -> reebcycle::Result<()> {
    let (_, f) = generators::torus(3, 3)?;
    let w = build_reeb(&f)?;
    let mut module = QuotientLabelModule::new(["g"])?;
    for round in 0..2 {
        let mut table = LabelTable::new(module.clone());
        table.set_default(&[("g", 1)])?;
        let c = build_cycle(&f, &w, &Labeler::Table(table))?;
        let v = nontriviality(&c, &w)?;
        println!(
            "labels in {}: H1 = {}, class nonzero: {}",
            c.module.structure(),
            v.top_homology,
            v.nontrivial
        );
        if round == 0 {
            module.add_relation(&[("g", 1)])?;
        }
    }
    Ok(())
}
