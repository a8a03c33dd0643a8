//! Fibers over open target edges: components, Euler characteristics and the
//! oriented fiber circles a degree-one cocycle is evaluated on.

use reebcycle::algebra::CoefficientModule;
use reebcycle::complex::{orient_coherently, SimplexId};
use reebcycle::fiber::{evaluate_cocycle_on_loop, fiber_over, RepresentativeRule};
use reebcycle::generators;

fn main() -> reebcycle::Result<()> {
    let (_, f) = generators::torus(3, 4)?;
    let (_, z) = generators::dual_cocycle_torus(3, 4)?;
    let z_mod = CoefficientModule::integers();
    let so = orient_coherently(f.source())?.orientation().cloned();
    let to = orient_coherently(f.target())?.orientation().cloned();
    for e in 0..f.target().count(1) {
        let sigma = SimplexId::new(1, e);
        let fib = fiber_over(&f, sigma)?;
        for comp in 0..fib.component_count() {
            let l = fib.fiber_loop(&f, comp, RepresentativeRule::Smallest, so.as_ref(), to.as_ref())?;
            let value = evaluate_cocycle_on_loop(&f, &z_mod, &z, &l)?;
            println!(
                "edge {:?} component {comp}: census {:?}, chi {}, loop {:?}, cocycle {value}",
                f.target().simplex(sigma),
                fib.census(comp),
                fib.euler_characteristic(comp)?,
                l.edges
            );
        }
    }

    let g = generators::rp2_x_s1(3)?;
    let fib = fiber_over(&g, SimplexId::new(1, 0))?;
    println!(
        "RP2 x S1 over an edge: {} component(s), chi {}",
        fib.component_count(),
        fib.euler_characteristic(0)?
    );
    Ok(())
}
