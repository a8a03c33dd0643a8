use std::fs;
use std::path::Path;

use reebcycle::algebra::CoefficientModule;
use reebcycle::cli::{run, Outcome};
use reebcycle::complex::Cochain;
use reebcycle::generators;
use reebcycle::io::{self, Report};
use tempfile::TempDir;

fn cli(args: &[&str]) -> Outcome {
    run(std::iter::once("reebcycle").chain(args.iter().copied()))
}

fn p(dir: &Path, name: &str) -> String {
    dir.join(name).to_string_lossy().into_owned()
}

fn report(o: &Outcome) -> Report {
    Report::parse(&o.stdout)
}

/// Torus projection with its dual cocycle, written into a fresh directory.
fn torus_fixture() -> TempDir {
    let d = TempDir::new().unwrap();
    let out = d.path().to_string_lossy().into_owned();
    assert_eq!(cli(&["generate", "torus-projection", "3", "4", "--out", &out]).code, 0);
    assert_eq!(cli(&["generate", "dual-cocycle", "torus", "3", "4", "--out", &out]).code, 0);
    d
}

fn map_args(d: &Path) -> Vec<String> {
    vec![
        "--source".into(),
        p(d, "source.complex"),
        "--target".into(),
        p(d, "target.complex"),
        "--map".into(),
        p(d, "map.map"),
    ]
}

fn with<'a>(head: &[&'a str], tail: &'a [String]) -> Vec<&'a str> {
    head.iter().copied().chain(tail.iter().map(String::as_str)).collect()
}

#[test]
fn torus_verify_is_nontrivial() {
    let d = torus_fixture();
    let m = map_args(d.path());
    let coc = p(d.path(), "dual.coc");
    let o = cli(&with(&["verify", "--cocycle", &coc], &m));
    assert_eq!(o.code, 0, "{}{}", o.stdout, o.stderr);
    let r = report(&o);
    assert_eq!(r.get("cycle"), Some("true"));
    assert_eq!(r.get("verdict"), Some("nontrivial"));
    assert_eq!(r.get("exit"), Some("0"));
}

#[test]
fn subdivision_keeps_the_verdict() {
    let d = torus_fixture();
    let m = map_args(d.path());
    let coc = p(d.path(), "dual.coc");
    let o = cli(&with(&["verify", "--cocycle", &coc, "--subdivide", "1"], &m));
    assert_eq!(o.code, 0, "{}{}", o.stdout, o.stderr);
    assert_eq!(report(&o).get("verdict"), Some("nontrivial"));
}

#[test]
fn octahedron_height_is_trivial() {
    let d = TempDir::new().unwrap();
    let out = d.path().to_string_lossy().into_owned();
    assert_eq!(cli(&["generate", "octahedron-height", "--out", &out]).code, 0);
    // any 1-cocycle on the sphere is a coboundary; use a nonzero one
    let k = generators::sphere_octahedron();
    let z = CoefficientModule::integers();
    let mut g = Cochain::zero(&k, &z, 0);
    g.set(&z, 0, &z.element(&[1]).unwrap());
    io::write_file(&d.path().join("dg.coc"), &io::write_cochain(&k, &z, &g.coboundary(&k, &z))).unwrap();
    let m = map_args(d.path());
    let coc = p(d.path(), "dg.coc");
    let o = cli(&with(&["verify", "--cocycle", &coc], &m));
    assert_eq!(o.code, 0, "{}{}", o.stdout, o.stderr);
    assert_eq!(report(&o).get("verdict"), Some("trivial"));
}

#[test]
fn reeb_oracle_agrees_on_torus_height() {
    let d = TempDir::new().unwrap();
    let out = d.path().to_string_lossy().into_owned();
    assert_eq!(cli(&["generate", "torus-height", "--out", &out]).code, 0);
    let o = cli(&with(&["reeb", "--oracle"], &map_args(d.path())));
    assert_eq!(o.code, 0, "{}{}", o.stdout, o.stderr);
    assert_eq!(report(&o).get("oracle-match"), Some("true"));
}

#[test]
fn exported_pq_verifies_and_perturbation_fails() {
    let d = torus_fixture();
    let m = map_args(d.path());
    let coc = p(d.path(), "dual.coc");
    let pq = p(d.path(), "e.pq");
    assert_eq!(cli(&with(&["verify", "--cocycle", &coc, "--export-pq", &pq], &m)).code, 0);
    let o = cli(&["pq-verify", "--pq", &pq]);
    assert_eq!(o.code, 0, "{}{}", o.stdout, o.stderr);
    let r = report(&o);
    assert_eq!(r.get("walls-consistent"), Some("true"));
    assert_eq!(r.get("verdict"), Some("nontrivial"));

    let text = fs::read_to_string(&pq).unwrap();
    let line = text.lines().find(|l| l.starts_with("label ")).unwrap().to_string();
    let mut words: Vec<&str> = line.split(' ').collect();
    let bumped = (words[2].parse::<i64>().unwrap() + 1).to_string();
    words[2] = &bumped;
    fs::write(&pq, text.replacen(&line, &words.join(" "), 1)).unwrap();
    let o = cli(&["pq-verify", "--pq", &pq]);
    assert_eq!(o.code, 2, "{}", o.stdout);
    assert_eq!(report(&o).get("walls-consistent"), Some("false"));
}

#[test]
fn builtin_pq_fixtures() {
    let d = TempDir::new().unwrap();
    let out = d.path().to_string_lossy().into_owned();
    assert_eq!(cli(&["generate", "round-fold-s2xs2", "--out", &out]).code, 0);
    let o = cli(&["homology", "--pq", &p(d.path(), "round-fold-s2xs2.pq")]);
    assert_eq!(o.code, 0, "{}{}", o.stdout, o.stderr);
    assert_eq!(report(&o).get("homology"), Some("H0=Z/2 H1=0 H2=Z/2"));
    assert_eq!(cli(&["pq-verify", "--pq", &p(d.path(), "round-fold-s2xs2.pq")]).code, 0);
}

#[test]
fn exit_codes() {
    let d = torus_fixture();
    let src = p(d.path(), "source.complex");
    // precondition: missing target
    let o = cli(&["reeb", "--source", &src, "--map", &p(d.path(), "map.map")]);
    assert_eq!(o.code, 3, "{}", o.stderr);
    // precondition: wrong codimension for chi2
    let o = cli(&with(&["verify", "--labeler", "chi2"], &map_args(d.path())));
    assert_eq!(o.code, 3, "{}", o.stderr);
    // parse error
    let bad = p(d.path(), "bad.complex");
    fs::write(&bad, "complex dim=2\nsimplex 0 x\n").unwrap();
    let o = cli(&["validate", "--complex", &bad]);
    assert_eq!(o.code, 4);
    assert!(o.stderr.contains("bad.complex"), "{}", o.stderr);
    // missing file
    let o = cli(&["validate", "--complex", &p(d.path(), "nope.complex")]);
    assert_eq!(o.code, 4);
    // residual: one labeled edge over a circle is not a cycle
    let table = p(d.path(), "one.labels");
    fs::write(&table, "labels gens=a\nlabel 0,1 0 a:1\ndefault\n").unwrap();
    let lab = format!("table:{table}");
    let o = cli(&with(&["cycle", "--labeler", &lab], &map_args(d.path())));
    assert_eq!(o.code, 2, "{}{}", o.stdout, o.stderr);
    assert_eq!(report(&o).get("cycle"), Some("false"));
    // table labeler cannot be combined with subdivision
    let o = cli(&with(&["cycle", "--labeler", &lab, "--subdivide", "1"], &map_args(d.path())));
    assert_eq!(o.code, 3, "{}", o.stderr);
}

#[test]
fn reports_are_byte_stable_and_written_to_file() {
    let d = torus_fixture();
    let m = map_args(d.path());
    let coc = p(d.path(), "dual.coc");
    let out = p(d.path(), "report.txt");
    let args = with(&["verify", "--cocycle", &coc, "--report", &out], &m);
    let a = cli(&args);
    let b = cli(&args);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(fs::read_to_string(&out).unwrap(), a.stdout);
}

#[test]
fn generated_files_round_trip() {
    let d = torus_fixture();
    for name in ["source.complex", "target.complex"] {
        let text = fs::read_to_string(d.path().join(name)).unwrap();
        let k = io::parse_complex(&text, name).unwrap();
        assert_eq!(io::write_complex(&k), text);
    }
    let src = io::parse_complex(&fs::read_to_string(d.path().join("source.complex")).unwrap(), "s").unwrap();
    let tgt = io::parse_complex(&fs::read_to_string(d.path().join("target.complex")).unwrap(), "t").unwrap();
    let text = fs::read_to_string(d.path().join("map.map")).unwrap();
    let f = io::parse_map(&text, "map.map", &src, &tgt).unwrap();
    assert_eq!(io::write_map(&f), text);
    let z = CoefficientModule::integers();
    let text = fs::read_to_string(d.path().join("dual.coc")).unwrap();
    let c = io::parse_cochain(&text, "dual.coc", &src, &z).unwrap();
    assert_eq!(io::write_cochain(&src, &z, &c), text);
}
