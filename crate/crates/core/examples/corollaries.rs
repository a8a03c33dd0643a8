//! Corollary reporters: when the relevant top homology of the Reeb space
//! vanishes, every fiber class is forced to vanish.

use reebcycle::cycle::{corollary_report, CorollaryMode};
use reebcycle::generators;
use reebcycle::map::SimplicialMap;
use reebcycle::reeb::build_reeb;

fn main() -> reebcycle::Result<()> {
    let cases: Vec<(&str, SimplicialMap, CorollaryMode)> = vec![
        ("octahedron height", generators::octahedron_height(), CorollaryMode::Spin),
        ("torus projection", generators::torus(3, 3)?.1, CorollaryMode::Spin),
        ("S3 height", generators::s3_height(), CorollaryMode::Lagrangian),
        ("RP2 x S1", generators::rp2_x_s1(3)?, CorollaryMode::SpinC),
    ];
    for (name, f, mode) in cases {
        let w = build_reeb(&f)?;
        let r = corollary_report(&f, &w, mode)?;
        println!(
            "{name:<18} {:<10} H over {:<2} = {:<4} {}",
            mode.name(),
            r.coefficients,
            r.group.to_string(),
            r.conclusion()
        );
    }
    Ok(())
}
