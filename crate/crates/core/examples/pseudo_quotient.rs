//! Pseudo-quotient spaces: the round fold model, a special generic disc, a
//! hand-built space, and the export of a concrete Reeb complex.

use reebcycle::algebra::CoefficientModule;
use reebcycle::cycle::{build_cycle, Labeler};
use reebcycle::generators;
use reebcycle::pq::{self, pq_verify, LocalModel, PqBuilder, PseudoQuotient};
use reebcycle::reeb::build_reeb;

fn report(name: &str, p: &PseudoQuotient) -> reebcycle::Result<()> {
    let r = pq_verify(p)?;
    let h: Vec<String> = r.homology.iter().map(ToString::to_string).collect();
    println!(
        "{name}: walls consistent {}, cycle {}, nontrivial {:?}, H = [{}]",
        r.walls_consistent(),
        r.check.passed(),
        r.nontrivial,
        h.join(", ")
    );
    for w in r.walls.iter().filter(|w| !w.consistent()) {
        println!("    wall {} ({}) residual {}", p.id(w.cell), w.model, w.residual);
    }
    Ok(())
}

fn main() -> reebcycle::Result<()> {
    report("round fold", &pq::round_fold_s2xs2())?;
    report("special generic disc", &pq::special_generic_disc())?;

    // three sheets on a branching edge, labeled 1, 1, 0: the edge balances,
    // but each fold-birth arc bounding a labeled sheet does not
    let mut b = PqBuilder::new(2, CoefficientModule::z2());
    b.cell("p", 0).cell("q", 0).cell("e", 1).faces("e", &["p", "q"]);
    for (i, t) in ["x", "y", "z"].iter().enumerate() {
        let arc = format!("arc{i}");
        b.cell(&arc, 1).faces(&arc, &["p", "q"]);
        b.cell(t, 2).faces(t, &["e", &arc]).label_i64(t, &[(i < 2) as i64]);
        b.wall(&arc, LocalModel::FoldBirth);
    }
    b.wall("e", LocalModel::FoldMerge);
    report("theta", &b.build()?)?;

    let (_, f) = generators::torus(3, 3)?;
    let (_, z) = generators::dual_cocycle_torus(3, 3)?;
    let w = build_reeb(&f)?;
    let c = build_cycle(&f, &w, &Labeler::cocycle(CoefficientModule::integers(), z))?;
    let exported = PseudoQuotient::from_reeb(&w, &c)?;
    report("exported torus projection", &exported)?;
    print!("{}", reebcycle::io::write_pq(&exported));
    Ok(())
}
