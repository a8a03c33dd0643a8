//! Subdividing the map leaves the Reeb homology and the cycle verdict alone;
//! cocycles are carried over by pulling back along the vertex retraction.

use reebcycle::algebra::CoefficientModule;
use reebcycle::complex::Cocycle;
use reebcycle::cycle::{build_cycle, nontriviality, Labeler};
use reebcycle::generators;
use reebcycle::map::{pullback_cochain, retraction, subdivide_map};
use reebcycle::reeb::build_reeb;

fn main() -> reebcycle::Result<()> {
    let module = CoefficientModule::integers();
    let (_, f) = generators::torus(3, 3)?;
    let (_, z) = generators::dual_cocycle_torus(3, 3)?;
    let (g, sd_source, _) = subdivide_map(&f)?;
    let r = retraction(&sd_source, f.source());
    let zg = Cocycle::new(g.source(), &module, pullback_cochain(g.source(), f.source(), &r, &module, z.cochain())?)?;
    for (name, map, cocycle) in [("original", &f, z), ("subdivided", &g, zg)] {
        let w = build_reeb(map)?;
        let c = build_cycle(map, &w, &Labeler::cocycle(module.clone(), cocycle))?;
        let v = nontriviality(&c, &w)?;
        let labels: Vec<String> = c.labels.iter().map(|(_, l)| l.to_string()).collect();
        println!(
            "{name:<10} source f={:?} reeb {:?} labels [{}] H1 = {} nonzero {}",
            map.source().f_vector(),
            w.counts(),
            labels.join(" "),
            v.top_homology,
            v.nontrivial
        );
    }
    Ok(())
}
