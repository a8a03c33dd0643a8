//! Homology of the fixture surfaces over the integers and over Z/2, before and
//! after barycentric subdivision.

use reebcycle::algebra::CoefficientModule;
use reebcycle::complex::{barycentric_subdivision, homology_all, SimplicialComplex};
use reebcycle::generators;

fn show(name: &str, k: &SimplicialComplex) -> reebcycle::Result<()> {
    for module in [CoefficientModule::integers(), CoefficientModule::z2()] {
        let h = homology_all(k, &module)?;
        let h: Vec<String> = h.iter().map(ToString::to_string).collect();
        println!("{name:<8} over {:<4} f={:?}  H = [{}]", module.ring().tag(), k.f_vector(), h.join(", "));
    }
    Ok(())
}

fn main() -> reebcycle::Result<()> {
    let fixtures = [
        ("S2", generators::sphere_octahedron()),
        ("T2", generators::torus(3, 3)?.0),
        ("RP2", generators::rp2_6()),
        ("Klein", generators::klein(3, 3)?),
    ];
    for (name, k) in &fixtures {
        show(name, k)?;
    }
    let sd = barycentric_subdivision(&generators::rp2_6())?;
    show("sd RP2", &sd.complex)?;
    Ok(())
}
