//! Labeled top chains on Reeb complexes: assembly, cycle check, verdict and
//! corollary reporting.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::algebra::{AbelianGroup, CoefficientModule, ModuleElement, QuotientLabelModule};
use crate::complex::{orient_coherently, Chain, Cocycle, Orientation, SimplexId};
use crate::error::{Error, Result};
use crate::fiber::{evaluate_cocycle_on_loop, fiber_over, RepresentativeRule};
use crate::map::SimplicialMap;
use crate::poset::CellPoset;
use crate::reeb::{ReebComplex, WallKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    CocycleEvaluation,
    ChiModTwo,
    UserLabel,
}

impl Provenance {
    pub fn name(self) -> &'static str {
        match self {
            Provenance::CocycleEvaluation => "cocycle",
            Provenance::ChiModTwo => "chi2",
            Provenance::UserLabel => "table",
        }
    }
}

/// Labels for top cells chosen by target top simplex (as sorted vertices) and
/// component index, with an optional default.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelTable {
    pub module: QuotientLabelModule,
    pub entries: BTreeMap<(Vec<usize>, usize), Vec<BigInt>>,
    pub default: Option<Vec<BigInt>>,
}

impl LabelTable {
    pub fn new(module: QuotientLabelModule) -> Self {
        LabelTable {
            module,
            entries: BTreeMap::new(),
            default: None,
        }
    }

    pub fn set(&mut self, sigma: Vec<usize>, component: usize, terms: &[(&str, i64)]) -> Result<()> {
        let v = self.module.combination(terms)?;
        self.entries.insert((sigma, component), v);
        Ok(())
    }

    pub fn set_default(&mut self, terms: &[(&str, i64)]) -> Result<()> {
        self.default = Some(self.module.combination(terms)?);
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub enum Labeler {
    /// Evaluation of a degree-one cocycle on oriented fiber circles.
    Cocycle {
        module: CoefficientModule,
        cocycle: Cocycle,
        rule: RepresentativeRule,
    },
    /// Euler characteristic mod 2 of surface fibers, in `Z/2`.
    ChiModTwo,
    Table(LabelTable),
}

impl Labeler {
    pub fn cocycle(module: CoefficientModule, cocycle: Cocycle) -> Self {
        Labeler::Cocycle {
            module,
            cocycle,
            rule: RepresentativeRule::Smallest,
        }
    }

    pub fn module(&self) -> CoefficientModule {
        match self {
            Labeler::Cocycle { module, .. } => module.clone(),
            Labeler::ChiModTwo => CoefficientModule::z2(),
            Labeler::Table(t) => t.module.quotient_module(),
        }
    }

    pub fn provenance(&self) -> Provenance {
        match self {
            Labeler::Cocycle { .. } => Provenance::CocycleEvaluation,
            Labeler::ChiModTwo => Provenance::ChiModTwo,
            Labeler::Table(_) => Provenance::UserLabel,
        }
    }
}

/// Coefficients on top Reeb cells, relative to the orientation each cell
/// inherits from its target simplex (when signs matter).
#[derive(Clone, Debug)]
pub struct LabeledTopChain {
    pub module: CoefficientModule,
    pub labels: Vec<(usize, ModuleElement)>,
    pub provenance: Provenance,
    /// Target orientation used for signs; absent when the module is all 2-torsion.
    pub target_orientation: Option<Orientation>,
}

impl LabeledTopChain {
    pub fn is_zero(&self) -> bool {
        self.labels.iter().all(|(_, v)| v.is_zero())
    }

    pub fn label(&self, cell: usize) -> Option<&ModuleElement> {
        self.labels.iter().find(|(c, _)| *c == cell).map(|(_, v)| v)
    }

    /// Adds `delta` to the label of `cell`.
    pub fn perturbed(&self, cell: usize, delta: &ModuleElement) -> Self {
        let mut out = self.clone();
        for (c, v) in out.labels.iter_mut() {
            if *c == cell {
                *v = self.module.add(v, delta);
            }
        }
        out
    }

    pub fn add(&self, other: &LabeledTopChain) -> Result<Self> {
        if self.module != other.module || self.labels.len() != other.labels.len() {
            return Err(Error::DimensionMismatch("chains over different cells or modules".into()));
        }
        let mut out = self.clone();
        for ((c, v), (d, w)) in out.labels.iter_mut().zip(&other.labels) {
            debug_assert_eq!(c, d);
            *v = self.module.add(v, w);
        }
        Ok(out)
    }

    /// Image in the order complex of the Reeb space.
    pub fn push_forward(&self, w: &ReebComplex) -> Chain {
        let n = w.target_dim();
        let mut chain = Chain::zero(n);
        for (c, label) in &self.labels {
            let eps = self
                .target_orientation
                .as_ref()
                .map_or(1, |o| o.sign(w.cell(*c).sigma.index));
            for (t, s) in w.refinement(*c) {
                chain.add_term(&self.module, t, &self.module.scale_i64(label, (eps * s) as i64));
            }
        }
        chain
    }
}

fn orientations(f: &SimplicialMap) -> Result<(Option<Orientation>, Option<Orientation>)> {
    let so = orient_coherently(f.source())?.orientation().cloned();
    let to = orient_coherently(f.target())?.orientation().cloned();
    Ok((so, to))
}

pub fn build_cycle(f: &SimplicialMap, w: &ReebComplex, labeler: &Labeler) -> Result<LabeledTopChain> {
    let module = labeler.module();
    let signed = !module.all_two_torsion();
    let codim = f.codimension();
    let n = f.target().dim();
    let tops = w.top_cells();
    let (so, to) = orientations(f)?;
    if signed && to.is_none() {
        return Err(Error::OrientationUnavailable(
            "the target is not orientable and the coefficients have elements of order other than 2".into(),
        ));
    }
    let labels: Vec<(usize, ModuleElement)> = match labeler {
        Labeler::Cocycle { cocycle, rule, .. } => {
            if codim != 1 {
                return Err(Error::Precondition(format!(
                    "the cocycle labeler needs m - n = 1, got {codim}"
                )));
            }
            if signed && so.is_none() {
                return Err(Error::OrientationUnavailable(
                    "the source is not orientable and the coefficients have elements of order other than 2".into(),
                ));
            }
            let (so, to) = if signed { (so.as_ref(), to.as_ref()) } else { (None, None) };
            tops.par_iter()
                .map(|&c| {
                    let cell = w.cell(c);
                    let fib = fiber_over(f, cell.sigma)?;
                    let l = fib.fiber_loop(f, cell.component, *rule, so, to)?;
                    Ok((c, evaluate_cocycle_on_loop(f, &module, cocycle, &l)?))
                })
                .collect::<Result<_>>()?
        }
        Labeler::ChiModTwo => {
            if codim != 2 {
                return Err(Error::Precondition(format!(
                    "the chi2 labeler needs m - n = 2, got {codim}"
                )));
            }
            tops.par_iter()
                .map(|&c| {
                    let cell = w.cell(c);
                    let chi = fiber_over(f, cell.sigma)?.euler_characteristic(cell.component)?;
                    Ok((c, module.element(&[chi.rem_euclid(2)])?))
                })
                .collect::<Result<_>>()?
        }
        Labeler::Table(table) => tops
            .iter()
            .map(|&c| {
                let cell = w.cell(c);
                let key = (f.target().simplex(cell.sigma).to_vec(), cell.component);
                let raw = table.entries.get(&key).or(table.default.as_ref()).ok_or_else(|| {
                    Error::Precondition(format!(
                        "label table has no entry for top simplex {:?} component {}",
                        key.0, key.1
                    ))
                })?;
                Ok((c, module.canonical(raw)?))
            })
            .collect::<Result<_>>()?,
    };
    debug_assert!(tops.len() == labels.len() && n == w.target_dim());
    Ok(LabeledTopChain {
        module,
        labels,
        provenance: labeler.provenance(),
        target_orientation: if signed { to } else { None },
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallResidual {
    pub cell: usize,
    pub kind: WallKind,
    pub residual: ModuleElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleCheck {
    pub walls: Vec<WallResidual>,
    /// Order-complex simplices with nonzero boundary coefficient not accounted
    /// for by a wall's representative chain.
    pub internal: Vec<(usize, ModuleElement)>,
    /// Top cells meeting a boundary wall that carry a nonzero label.
    pub boundary_contract: Vec<usize>,
}

impl CycleCheck {
    pub fn passed(&self) -> bool {
        self.walls.iter().all(|w| w.residual.is_zero()) && self.internal.is_empty()
    }

    pub fn nonzero_walls(&self) -> Vec<usize> {
        self.walls.iter().filter(|w| !w.residual.is_zero()).map(|w| w.cell).collect()
    }
}

/// Boundary of a pushed top chain, read off per wall on its smallest chain.
pub(crate) fn residuals(
    poset: &CellPoset,
    module: &CoefficientModule,
    pushed: &Chain,
    walls: &[(usize, WallKind)],
) -> (Vec<WallResidual>, Vec<(usize, ModuleElement)>) {
    let order = poset.order_complex();
    let b = pushed.boundary(order, module);
    let mut representative = BTreeMap::new();
    let out: Vec<WallResidual> = walls
        .iter()
        .map(|&(cell, kind)| {
            let rep = poset.chains_ending_at(cell).into_iter().next().expect("chain");
            let idx = order.index_of(&rep).expect("chain");
            representative.insert(idx, cell);
            WallResidual {
                cell,
                kind,
                residual: b.coefficient(idx).cloned().unwrap_or_else(|| module.zero()),
            }
        })
        .collect();
    let mut internal = Vec::new();
    for (idx, v) in b.support() {
        if representative.contains_key(&idx) {
            continue;
        }
        // other chains ending at a wall carry the wall residual up to sign
        let last = *order.simplices(b.degree())[idx].last().expect("nonempty");
        let explained = walls.iter().any(|&(cell, _)| cell == last) && {
            let r = &out.iter().find(|w| w.cell == last).expect("wall").residual;
            v == r || *v == module.neg(r)
        };
        if !explained {
            internal.push((idx, v.clone()));
        }
    }
    (out, internal)
}

pub fn check_cycle(c: &LabeledTopChain, w: &ReebComplex) -> CycleCheck {
    let pushed = c.push_forward(w);
    let walls: Vec<(usize, WallKind)> = w
        .walls()
        .into_iter()
        .map(|cell| (cell, w.wall_kind(cell).expect("wall")))
        .collect();
    let (walls_out, internal) = residuals(w.poset(), &c.module, &pushed, &walls);
    let mut boundary_contract: Vec<usize> = walls
        .iter()
        .filter(|(_, k)| *k == WallKind::Boundary)
        .flat_map(|(cell, _)| w.cofacets(*cell).iter().copied())
        .filter(|&top| c.label(top).is_some_and(|v| !v.is_zero()))
        .collect();
    boundary_contract.sort_unstable();
    boundary_contract.dedup();
    CycleCheck {
        walls: walls_out,
        internal,
        boundary_contract,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub nontrivial: bool,
    pub degree: usize,
    pub top_homology: AbelianGroup,
    pub homology: Vec<AbelianGroup>,
}

/// A nonzero top-dimensional cycle is a nonzero class: there are no chains above it.
pub fn nontriviality(c: &LabeledTopChain, w: &ReebComplex) -> Result<Verdict> {
    if !check_cycle(c, w).passed() {
        return Err(Error::Precondition("the labeled chain is not a cycle".into()));
    }
    let homology = w.homology(&c.module)?;
    let n = w.target_dim();
    Ok(Verdict {
        nontrivial: !c.push_forward(w).is_zero(),
        degree: n,
        top_homology: homology.get(n).cloned().unwrap_or_default(),
        homology,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CorollaryMode {
    Lagrangian,
    Spin,
    SpinC,
}

impl CorollaryMode {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "lagrangian" => Ok(CorollaryMode::Lagrangian),
            "spin" => Ok(CorollaryMode::Spin),
            "spin-c" => Ok(CorollaryMode::SpinC),
            other => Err(Error::InvalidInput(format!(
                "unknown corollary mode {other:?} (lagrangian, spin, spin-c)"
            ))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CorollaryMode::Lagrangian => "lagrangian",
            CorollaryMode::Spin => "spin",
            CorollaryMode::SpinC => "spin-c",
        }
    }

    fn codimension(self) -> isize {
        match self {
            CorollaryMode::Spin => 1,
            CorollaryMode::Lagrangian | CorollaryMode::SpinC => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorollaryReport {
    pub mode: CorollaryMode,
    pub coefficients: &'static str,
    pub group: AbelianGroup,
    pub forced: bool,
}

impl CorollaryReport {
    pub fn conclusion(&self) -> &'static str {
        if self.forced {
            "FORCED"
        } else {
            "NOT DETERMINED"
        }
    }
}

/// When the relevant top homology of the Reeb space vanishes, every fiber
/// component's class is zero, which is the corollary's conclusion.
pub fn corollary_report(f: &SimplicialMap, w: &ReebComplex, mode: CorollaryMode) -> Result<CorollaryReport> {
    if f.codimension() != mode.codimension() {
        return Err(Error::Precondition(format!(
            "{} mode needs m - n = {}, got {}",
            mode.name(),
            mode.codimension(),
            f.codimension()
        )));
    }
    let n = w.target_dim();
    let (module, coefficients) = match mode {
        CorollaryMode::Spin => (CoefficientModule::z2(), "Z2"),
        CorollaryMode::Lagrangian => (CoefficientModule::integers(), "Q"),
        CorollaryMode::SpinC => (CoefficientModule::integers(), "Z"),
    };
    let h = w.homology(&module)?.get(n).cloned().unwrap_or_default();
    let group = match mode {
        CorollaryMode::Lagrangian => AbelianGroup::free(h.free_rank),
        _ => h,
    };
    Ok(CorollaryReport {
        mode,
        coefficients,
        forced: group.is_zero(),
        group,
    })
}

/// Orientation sign of top simplex `sigma` of the target, or 1 without one.
pub fn target_sign(c: &LabeledTopChain, sigma: SimplexId) -> i8 {
    c.target_orientation.as_ref().map_or(1, |o| o.sign(sigma.index))
}
