//! Line-oriented text formats for complexes, maps, modules, cochains, label
//! tables and pseudo-quotients, plus `key value` reports.
//!
//! Every format ignores blank lines and `#` comments and starts with a header
//! line naming the format.

mod report;

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::algebra::{BaseRing, CoefficientModule, IntegerMatrix, QuotientLabelModule};
use crate::complex::{permutation_sign, Cochain, SimplicialComplex};
use crate::cycle::LabelTable;
use crate::error::{Error, Result};
use crate::map::SimplicialMap;
use crate::pq::{Gleam, LocalModel, PqBuilder, PseudoQuotient};

pub use report::Report;

pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

struct Line<'a> {
    number: usize,
    tokens: Vec<&'a str>,
}

struct Reader<'a> {
    file: &'a str,
    lines: Vec<Line<'a>>,
}

impl<'a> Reader<'a> {
    fn new(text: &'a str, file: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .filter_map(|(i, l)| {
                let l = l.split('#').next().unwrap_or("");
                let tokens: Vec<&str> = l.split_whitespace().collect();
                (!tokens.is_empty()).then_some(Line { number: i + 1, tokens })
            })
            .collect();
        Reader { file, lines }
    }

    fn err(&self, line: &Line, token: &str, msg: impl Into<String>) -> Error {
        Error::parse(self.file, line.number, token, msg)
    }

    /// Splits off the header, which must start with `keyword`.
    fn header(&self, keyword: &str) -> Result<(&Line<'a>, &[Line<'a>])> {
        match self.lines.split_first() {
            Some((h, rest)) if h.tokens[0] == keyword => Ok((h, rest)),
            Some((h, _)) => Err(self.err(h, h.tokens[0], format!("expected a `{keyword}` header"))),
            None => Err(Error::parse(self.file, 1, "", format!("empty input, expected a `{keyword}` header"))),
        }
    }

    fn number<T: FromStr>(&self, line: &Line, token: &str) -> Result<T> {
        token
            .parse()
            .map_err(|_| self.err(line, token, "expected an integer"))
    }

    fn numbers<T: FromStr>(&self, line: &Line, tokens: &[&str]) -> Result<Vec<T>> {
        tokens.iter().map(|t| self.number(line, t)).collect()
    }

    /// Value of `key=value` among the tokens after the keyword.
    fn keyed<'t>(&self, line: &'t Line, key: &str) -> Result<&'t str> {
        line.tokens[1..]
            .iter()
            .find_map(|t| t.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
            .ok_or_else(|| self.err(line, line.tokens[0], format!("missing `{key}=`")))
    }

    fn arity(&self, line: &Line, expected: usize) -> Result<()> {
        if line.tokens.len() != expected {
            return Err(self.err(
                line,
                line.tokens[0],
                format!("expected {} fields, found {}", expected - 1, line.tokens.len() - 1),
            ));
        }
        Ok(())
    }

    /// Relocates a semantic error onto a line.
    fn at(&self, line: &Line, e: Error) -> Error {
        match e {
            Error::Parse { .. } => e,
            other => self.err(line, line.tokens[0], other.to_string()),
        }
    }
}

pub fn parse_complex(text: &str, file: &str) -> Result<SimplicialComplex> {
    let r = Reader::new(text, file);
    let (h, body) = r.header("complex")?;
    let dim: usize = r.number(h, r.keyed(h, "dim")?)?;
    let vertices: usize = r.number(h, r.keyed(h, "vertices")?)?;
    let mut maximal = Vec::new();
    for line in body {
        if line.tokens[0] != "simplex" {
            return Err(r.err(line, line.tokens[0], "expected `simplex`"));
        }
        let s: Vec<usize> = r.numbers(line, &line.tokens[1..])?;
        if s.is_empty() {
            return Err(r.err(line, "simplex", "empty simplex"));
        }
        if let Some(v) = s.iter().find(|&&v| v >= vertices) {
            return Err(r.err(line, &v.to_string(), format!("vertex out of range 0..{vertices}")));
        }
        let mut sorted = s.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != s.len() {
            return Err(r.err(line, "simplex", "repeated vertex"));
        }
        maximal.push(sorted);
    }
    let k = SimplicialComplex::with_vertices(vertices, &maximal).map_err(|e| r.at(h, e))?;
    if k.dim() != dim {
        return Err(r.err(h, "dim", format!("header says dim={dim} but the simplices span dimension {}", k.dim())));
    }
    Ok(k)
}

pub fn write_complex(k: &SimplicialComplex) -> String {
    let mut out = format!("complex dim={} vertices={}\n", k.dim(), k.vertex_count());
    for s in k.maximal_simplices() {
        out.push_str("simplex");
        for v in s {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn parse_map(text: &str, file: &str, source: &SimplicialComplex, target: &SimplicialComplex) -> Result<SimplicialMap> {
    let r = Reader::new(text, file);
    let (h, body) = r.header("map")?;
    let mut assignment: Vec<Option<usize>> = vec![None; source.vertex_count()];
    for line in body {
        if line.tokens[0] != "assign" {
            return Err(r.err(line, line.tokens[0], "expected `assign`"));
        }
        r.arity(line, 3)?;
        let s: usize = r.number(line, line.tokens[1])?;
        let t: usize = r.number(line, line.tokens[2])?;
        let slot = assignment
            .get_mut(s)
            .ok_or_else(|| r.err(line, line.tokens[1], "no such source vertex"))?;
        if slot.replace(t).is_some() {
            return Err(r.err(line, line.tokens[1], "vertex assigned twice"));
        }
    }
    let assignment = assignment
        .iter()
        .enumerate()
        .map(|(v, t)| t.ok_or_else(|| r.err(h, "map", format!("source vertex {v} is not assigned"))))
        .collect::<Result<Vec<_>>>()?;
    SimplicialMap::new(source.clone(), target.clone(), assignment)
}

pub fn write_map(f: &SimplicialMap) -> String {
    let mut out = String::from("map\n");
    for (s, t) in f.assignment().iter().enumerate() {
        writeln!(out, "assign {s} {t}").unwrap();
    }
    out
}

/// `Z`, `Z2`, or a presentation file's contents.
pub fn parse_module(text: &str, file: &str) -> Result<CoefficientModule> {
    match text.trim() {
        "Z" => return Ok(CoefficientModule::integers()),
        "Z2" => return Ok(CoefficientModule::z2()),
        _ => {}
    }
    let r = Reader::new(text, file);
    let (h, body) = r.header("module")?;
    let (module, used) = module_from_lines(&r, h, body)?;
    if let Some(extra) = body.get(used) {
        return Err(r.err(extra, extra.tokens[0], "expected `rel`"));
    }
    Ok(module)
}

/// Reads a `module` header and the `rel` lines after it; returns how many
/// body lines were consumed.
fn module_from_lines(r: &Reader, h: &Line, body: &[Line]) -> Result<(CoefficientModule, usize)> {
    if h.tokens.len() < 2 {
        return Err(r.err(h, "module", "expected a ring (Z or Z2)"));
    }
    let ring = match h.tokens[1] {
        "Z" => BaseRing::Integers,
        "Z2" => BaseRing::Mod2,
        other => return Err(r.err(h, other, "unknown ring, expected Z or Z2")),
    };
    let rank: usize = r.number(h, r.keyed(h, "rank")?)?;
    let mut rels: Vec<Vec<BigInt>> = Vec::new();
    let mut used = 0;
    for line in body.iter().take_while(|l| l.tokens[0] == "rel") {
        r.arity(line, rank + 1)?;
        rels.push(r.numbers(line, &line.tokens[1..])?);
        used += 1;
    }
    let m = IntegerMatrix::from_columns(rank, &rels);
    let module = CoefficientModule::new(ring, rank, m).map_err(|e| r.at(h, e))?;
    Ok((module, used))
}

pub fn write_module(m: &CoefficientModule) -> String {
    let mut out = format!("module {} rank={}\n", m.ring().tag(), m.rank());
    let rel = m.relations();
    for j in 0..rel.cols() {
        out.push_str("rel");
        for x in rel.column(j) {
            write!(out, " {x}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// Simplices not listed get zero. Vertex order on a `value` line matters: an
/// odd permutation of the sorted order negates the value.
pub fn parse_cochain(text: &str, file: &str, k: &SimplicialComplex, module: &CoefficientModule) -> Result<Cochain> {
    let r = Reader::new(text, file);
    let (h, body) = r.header("cochain")?;
    let degree: usize = r.number(h, r.keyed(h, "degree")?)?;
    let rank: usize = r.number(h, r.keyed(h, "rank")?)?;
    if rank != module.rank() {
        return Err(r.err(h, "rank", format!("cochain rank {rank} but the module has rank {}", module.rank())));
    }
    let mut c = Cochain::zero(k, module, degree);
    let mut seen = vec![false; k.count(degree)];
    for line in body {
        if line.tokens[0] != "value" {
            return Err(r.err(line, line.tokens[0], "expected `value`"));
        }
        r.arity(line, degree + rank + 2)?;
        let vs: Vec<usize> = r.numbers(line, &line.tokens[1..degree + 2])?;
        let coords: Vec<BigInt> = r.numbers(line, &line.tokens[degree + 2..])?;
        let sign = permutation_sign(&vs);
        let mut sorted = vs.clone();
        sorted.sort_unstable();
        let idx = k
            .index_of(&sorted)
            .filter(|_| sign != 0)
            .ok_or_else(|| r.err(line, line.tokens[1], format!("{vs:?} is not a {degree}-simplex")))?;
        if std::mem::replace(&mut seen[idx], true) {
            return Err(r.err(line, line.tokens[1], "simplex given twice"));
        }
        let v = module.canonical(&coords).map_err(|e| r.at(line, e))?;
        c.set(module, idx, &module.scale_i64(&v, sign as i64));
    }
    Ok(c)
}

pub fn write_cochain(k: &SimplicialComplex, module: &CoefficientModule, c: &Cochain) -> String {
    let mut out = format!("cochain degree={} rank={}\n", c.degree(), module.rank());
    for (s, v) in k.simplices(c.degree()).iter().zip(c.values()) {
        if v.is_zero() {
            continue;
        }
        out.push_str("value");
        for x in s {
            write!(out, " {x}").unwrap();
        }
        for x in v.coordinates() {
            write!(out, " {x}").unwrap();
        }
        out.push('\n');
    }
    out
}

fn terms<'t>(r: &Reader, line: &Line, tokens: &[&'t str]) -> Result<Vec<(&'t str, i64)>> {
    tokens
        .iter()
        .map(|t| {
            let (g, c) = t
                .split_once(':')
                .ok_or_else(|| r.err(line, t, "expected generator:coefficient"))?;
            Ok((g, r.number(line, c)?))
        })
        .collect()
}

/// Label table: `labels gens=a,b`, then `rel a:2 b:-1`, `label 0,1 0 a:1` (target
/// top simplex, component, terms) and an optional `default a:0`.
pub fn parse_label_table(text: &str, file: &str) -> Result<LabelTable> {
    let r = Reader::new(text, file);
    let (h, body) = r.header("labels")?;
    let gens: Vec<&str> = r.keyed(h, "gens")?.split(',').filter(|g| !g.is_empty()).collect();
    let mut module = QuotientLabelModule::new(gens).map_err(|e| r.at(h, e))?;
    let mut rows = Vec::new();
    for line in body {
        match line.tokens[0] {
            "rel" => {
                let t = terms(&r, line, &line.tokens[1..])?;
                module.add_relation(&t).map_err(|e| r.at(line, e))?;
            }
            "label" | "default" => rows.push(line),
            other => return Err(r.err(line, other, "expected `rel`, `label` or `default`")),
        }
    }
    let mut table = LabelTable::new(module);
    for line in rows {
        if line.tokens[0] == "default" {
            let t = terms(&r, line, &line.tokens[1..])?;
            table.set_default(&t).map_err(|e| r.at(line, e))?;
            continue;
        }
        if line.tokens.len() < 3 {
            return Err(r.err(line, "label", "expected simplex, component and terms"));
        }
        let mut sigma: Vec<usize> = r.numbers(line, &line.tokens[1].split(',').collect::<Vec<_>>())?;
        sigma.sort_unstable();
        let component: usize = r.number(line, line.tokens[2])?;
        let t = terms(&r, line, &line.tokens[3..])?;
        if table.entries.contains_key(&(sigma.clone(), component)) {
            return Err(r.err(line, line.tokens[1], "label given twice"));
        }
        table.set(sigma, component, &t).map_err(|e| r.at(line, e))?;
    }
    Ok(table)
}

fn write_terms(out: &mut String, gens: &[String], v: &[BigInt]) {
    for (g, c) in gens.iter().zip(v) {
        if *c != BigInt::from(0) {
            write!(out, " {g}:{c}").unwrap();
        }
    }
}

pub fn write_label_table(t: &LabelTable) -> String {
    let gens = t.module.generators();
    let mut out = format!("labels gens={}\n", gens.join(","));
    for rel in t.module.relations() {
        out.push_str("rel");
        write_terms(&mut out, gens, rel);
        out.push('\n');
    }
    for ((sigma, comp), v) in &t.entries {
        let s: Vec<String> = sigma.iter().map(ToString::to_string).collect();
        write!(out, "label {} {comp}", s.join(",")).unwrap();
        write_terms(&mut out, gens, v);
        out.push('\n');
    }
    if let Some(v) = &t.default {
        out.push_str("default");
        write_terms(&mut out, gens, v);
        out.push('\n');
    }
    out
}

/// Pseudo-quotient format, version 1. The coefficient module defaults to `Z`.
pub fn parse_pq(text: &str, file: &str) -> Result<PseudoQuotient> {
    let r = Reader::new(text, file);
    let (h, body) = r.header("pq")?;
    let dim: usize = r.number(h, r.keyed(h, "dim")?)?;
    if let Ok(v) = r.keyed(h, "version") {
        if v != "1" {
            return Err(r.err(h, v, "unsupported pq version"));
        }
    }
    let (module, body) = match body.first() {
        Some(m) if m.tokens[0] == "module" => {
            let (module, used) = module_from_lines(&r, m, &body[1..])?;
            (module, &body[1 + used..])
        }
        _ => (CoefficientModule::integers(), body),
    };
    let mut b = PqBuilder::new(dim, module);
    let mut walls = std::collections::HashSet::new();
    let mut labeled = std::collections::HashSet::new();
    for line in body {
        let t = &line.tokens;
        match t[0] {
            "cell" => {
                r.arity(line, 3)?;
                b.cell(t[1], r.number(line, r.keyed(line, "dim")?)?);
            }
            "face" => {
                r.arity(line, 3)?;
                b.face(t[1], t[2]);
            }
            "label" => {
                r.arity(line, b.module().rank() + 2)?;
                if !labeled.insert(t[1]) {
                    return Err(r.err(line, t[1], "cell labeled twice"));
                }
                b.label(t[1], r.numbers(line, &t[2..])?);
            }
            "wall" => {
                r.arity(line, 3)?;
                let model = LocalModel::parse(r.keyed(line, "model")?).map_err(|e| r.at(line, e))?;
                if !walls.insert(t[1]) {
                    return Err(r.err(line, t[1], "wall annotated twice"));
                }
                b.wall(t[1], model);
            }
            "gleam" => {
                r.arity(line, 3)?;
                let (p, q) = t[2].split_once('/').unwrap_or((t[2], "1"));
                let g = Gleam::new(r.number(line, p)?, r.number(line, q)?).map_err(|e| r.at(line, e))?;
                b.gleam(t[1], g);
            }
            other => return Err(r.err(line, other, "expected cell, face, label, wall or gleam")),
        }
    }
    b.build().map_err(|e| r.at(h, e))
}

pub fn write_pq(p: &PseudoQuotient) -> String {
    let mut out = format!("pq dim={} version=1\n", p.dim());
    out.push_str(&write_module(p.module()));
    let poset = p.poset();
    for (c, id) in p.ids().iter().enumerate() {
        writeln!(out, "cell {id} dim={}", poset.dim_of(c)).unwrap();
    }
    for (a, c) in poset.covering() {
        writeln!(out, "face {} {}", p.id(a), p.id(c)).unwrap();
    }
    for (c, v) in p.labels() {
        write!(out, "label {}", p.id(*c)).unwrap();
        for x in v.coordinates() {
            write!(out, " {x}").unwrap();
        }
        out.push('\n');
    }
    for (c, m) in p.walls() {
        writeln!(out, "wall {} model={m}", p.id(*c)).unwrap();
    }
    for (c, g) in p.gleams() {
        writeln!(out, "gleam {} {g}", p.id(*c)).unwrap();
    }
    out
}
