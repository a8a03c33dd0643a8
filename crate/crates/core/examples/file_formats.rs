//! Text formats: write fixtures, read them back, and compare.

use reebcycle::algebra::CoefficientModule;
use reebcycle::generators;
use reebcycle::io;
use reebcycle::pq;

fn main() -> reebcycle::Result<()> {
    let (_, f) = generators::torus(3, 3)?;
    let source = io::write_complex(f.source());
    let target = io::write_complex(f.target());
    let map = io::write_map(&f);
    print!("{target}{map}");
    let s = io::parse_complex(&source, "source")?;
    let t = io::parse_complex(&target, "target")?;
    println!("map round trip: {}", io::parse_map(&map, "map", &s, &t)? == f);

    let (k, z) = generators::dual_cocycle_torus(3, 3)?;
    let module = CoefficientModule::integers();
    let text = io::write_cochain(&k, &module, z.cochain());
    print!("{text}");
    println!("cochain round trip: {}", &io::parse_cochain(&text, "dual", &k, &module)? == z.cochain());

    let m = io::parse_module("module Z rank=2\nrel 2 0\nrel 0 4\n", "module")?;
    println!("module {}", m.describe());

    let p = pq::special_generic_disc();
    println!("pq round trip: {}", io::parse_pq(&io::write_pq(&p), "pq")? == p);

    match io::parse_complex("complex dim=1 vertices=2\nsimplex 0 one\n", "broken.complex") {
        Err(e) => println!("{e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
