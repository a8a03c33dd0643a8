//! Pseudo-quotient spaces: graded cell posets with labeled top cells and
//! annotated walls, checked without a source triangulation.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::{AbelianGroup, CoefficientModule, ModuleElement};
use crate::complex::{homology_all, Chain};
use crate::cycle::{residuals, CycleCheck, LabeledTopChain};
use crate::error::{Error, Result};
use crate::poset::CellPoset;
use crate::reeb::{ReebComplex, WallKind};

/// Local picture across a wall. The rule on labels is always the vanishing of
/// the signed sum of incident top-cell labels; the model fixes the arity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LocalModel {
    /// A fiber component dies: one top cell, whose label must vanish.
    FoldBirth,
    /// Two sides with matching labels.
    Regular,
    /// One component splits into two: `a = b + c`.
    FoldMerge,
    /// Two components on each side with equal sums.
    II3,
    /// Any number of top cells.
    Generic,
}

impl LocalModel {
    pub const ALL: [LocalModel; 5] = [
        LocalModel::FoldBirth,
        LocalModel::Regular,
        LocalModel::FoldMerge,
        LocalModel::II3,
        LocalModel::Generic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LocalModel::FoldBirth => "fold-birth",
            LocalModel::Regular => "regular",
            LocalModel::FoldMerge => "fold-merge",
            LocalModel::II3 => "II3",
            LocalModel::Generic => "generic",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown local model {s:?}")))
    }

    /// Number of incident top cells, or `None` for any.
    pub fn arity(self) -> Option<usize> {
        match self {
            LocalModel::FoldBirth => Some(1),
            LocalModel::Regular => Some(2),
            LocalModel::FoldMerge => Some(3),
            LocalModel::II3 => Some(4),
            LocalModel::Generic => None,
        }
    }

    pub fn from_arity(k: usize) -> Self {
        Self::ALL.into_iter().find(|m| m.arity() == Some(k)).unwrap_or(LocalModel::Generic)
    }
}

impl fmt::Display for LocalModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A rational weight `num/den` in lowest terms with `den > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gleam {
    pub num: BigInt,
    pub den: BigInt,
}

impl Gleam {
    pub fn new(num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidInput("gleam with zero denominator".into()));
        }
        let g = num.gcd(&den);
        let sign = if den.is_negative() { -BigInt::one() } else { BigInt::one() };
        Ok(Gleam {
            num: &num / &g * &sign,
            den: &den / &g * &sign,
        })
    }
}

impl fmt::Display for Gleam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Collects cells, faces, labels and annotations by name, then validates.
#[derive(Clone, Debug)]
pub struct PqBuilder {
    dim: usize,
    module: CoefficientModule,
    cells: Vec<(String, usize)>,
    faces: Vec<(String, String)>,
    labels: Vec<(String, Vec<BigInt>)>,
    walls: Vec<(String, LocalModel)>,
    gleams: Vec<(String, Gleam)>,
}

impl PqBuilder {
    pub fn new(dim: usize, module: CoefficientModule) -> Self {
        PqBuilder {
            dim,
            module,
            cells: Vec::new(),
            faces: Vec::new(),
            labels: Vec::new(),
            walls: Vec::new(),
            gleams: Vec::new(),
        }
    }

    pub fn module(&self) -> &CoefficientModule {
        &self.module
    }

    /// Replaces the coefficient module; labels are reduced into it on build.
    pub fn set_module(&mut self, module: CoefficientModule) -> &mut Self {
        self.module = module;
        self
    }

    pub fn cell(&mut self, id: &str, dim: usize) -> &mut Self {
        self.cells.push((id.to_string(), dim));
        self
    }

    pub fn face(&mut self, face: &str, coface: &str) -> &mut Self {
        self.faces.push((face.to_string(), coface.to_string()));
        self
    }

    /// Declares every listed face of `coface`.
    pub fn faces(&mut self, coface: &str, faces: &[&str]) -> &mut Self {
        for f in faces {
            self.face(f, coface);
        }
        self
    }

    /// Sets the label of a top cell, replacing an earlier one.
    pub fn label(&mut self, id: &str, coords: Vec<BigInt>) -> &mut Self {
        self.labels.retain(|(l, _)| l != id);
        self.labels.push((id.to_string(), coords));
        self
    }

    pub fn label_i64(&mut self, id: &str, coords: &[i64]) -> &mut Self {
        self.label(id, coords.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// Annotates a wall, replacing an earlier annotation of the same cell.
    pub fn wall(&mut self, id: &str, model: LocalModel) -> &mut Self {
        self.walls.retain(|(w, _)| w != id);
        self.walls.push((id.to_string(), model));
        self
    }

    pub fn gleam(&mut self, id: &str, g: Gleam) -> &mut Self {
        self.gleams.push((id.to_string(), g));
        self
    }

    pub fn build(&self) -> Result<PseudoQuotient> {
        let n = self.dim;
        let mut order: Vec<usize> = (0..self.cells.len()).collect();
        order.sort_by_key(|&i| self.cells[i].1);
        let ids: Vec<String> = order.iter().map(|&i| self.cells[i].0.clone()).collect();
        let dims: Vec<usize> = order.iter().map(|&i| self.cells[i].1).collect();
        let mut index = HashMap::new();
        for (i, id) in ids.iter().enumerate() {
            if index.insert(id.as_str(), i).is_some() {
                return Err(Error::InvalidInput(format!("cell {id} declared twice")));
            }
            if dims[i] > n {
                return Err(Error::InvalidInput(format!("cell {id} has dimension {} above {n}", dims[i])));
            }
        }
        let lookup = |id: &str| -> Result<usize> {
            index
                .get(id)
                .copied()
                .ok_or_else(|| Error::InvalidInput(format!("unknown cell {id}")))
        };
        let covering = self
            .faces
            .iter()
            .map(|(a, b)| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>>>()?;
        let poset = CellPoset::from_covering(dims.clone(), &covering)?;

        let mut labels: BTreeMap<usize, ModuleElement> = BTreeMap::new();
        for (id, coords) in &self.labels {
            let c = lookup(id)?;
            if dims[c] != n {
                return Err(Error::InvalidInput(format!("label on {id}, which is not a top cell")));
            }
            labels.insert(c, self.module.canonical(coords)?);
        }
        let tops = poset.cells_of_dim(n);
        if let Some(&c) = tops.iter().find(|c| !labels.contains_key(c)) {
            return Err(Error::InvalidInput(format!("top cell {} has no label", ids[c])));
        }
        if tops.is_empty() {
            return Err(Error::InvalidInput(format!("no cells of dimension {n}")));
        }

        let mut walls: BTreeMap<usize, LocalModel> = BTreeMap::new();
        for (id, model) in &self.walls {
            let c = lookup(id)?;
            if n == 0 || dims[c] + 1 != n {
                return Err(Error::InvalidInput(format!("wall {id} is not of dimension {}", n.saturating_sub(1))));
            }
            walls.insert(c, *model);
        }
        if n > 0 {
            for c in poset.cells_of_dim(n - 1) {
                let model = *walls.entry(c).or_insert(LocalModel::Generic);
                let k = poset.cofacets(c).len();
                if model.arity().is_some_and(|a| a != k) {
                    return Err(Error::InvalidInput(format!(
                        "wall {} declared {model} (arity {}) meets {k} top cell(s)",
                        ids[c],
                        model.arity().unwrap_or(0)
                    )));
                }
            }
        }

        let mut gleams = BTreeMap::new();
        for (id, g) in &self.gleams {
            let c = lookup(id)?;
            if dims[c] != 2 {
                return Err(Error::InvalidInput(format!("gleam on {id}, which is not a 2-cell")));
            }
            gleams.insert(c, g.clone());
        }

        Ok(PseudoQuotient {
            dim: n,
            ids,
            poset,
            module: self.module.clone(),
            labels: labels.into_iter().collect(),
            walls: walls.into_iter().collect(),
            gleams: gleams.into_iter().collect(),
        })
    }
}

/// A validated pseudo-quotient space. Cells are ordered by dimension, then by
/// declaration order.
#[derive(Clone, Debug)]
pub struct PseudoQuotient {
    dim: usize,
    ids: Vec<String>,
    poset: CellPoset,
    module: CoefficientModule,
    labels: Vec<(usize, ModuleElement)>,
    walls: Vec<(usize, LocalModel)>,
    gleams: Vec<(usize, Gleam)>,
}

impl PartialEq for PseudoQuotient {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.ids == other.ids
            && (0..self.ids.len()).all(|c| self.poset.dim_of(c) == other.poset.dim_of(c))
            && self.poset.covering() == other.poset.covering()
            && self.module == other.module
            && self.labels == other.labels
            && self.walls == other.walls
            && self.gleams == other.gleams
    }
}

impl Eq for PseudoQuotient {}

impl PseudoQuotient {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, c: usize) -> &str {
        &self.ids[c]
    }

    pub fn poset(&self) -> &CellPoset {
        &self.poset
    }

    pub fn module(&self) -> &CoefficientModule {
        &self.module
    }

    pub fn labels(&self) -> &[(usize, ModuleElement)] {
        &self.labels
    }

    pub fn walls(&self) -> &[(usize, LocalModel)] {
        &self.walls
    }

    pub fn gleams(&self) -> &[(usize, Gleam)] {
        &self.gleams
    }

    pub fn top_cells(&self) -> Vec<usize> {
        self.poset.cells_of_dim(self.dim)
    }

    /// A builder reproducing this space, for edits.
    pub fn to_builder(&self) -> PqBuilder {
        let mut b = PqBuilder::new(self.dim, self.module.clone());
        for (c, id) in self.ids.iter().enumerate() {
            b.cell(id, self.poset.dim_of(c));
        }
        for (a, c) in self.poset.covering() {
            b.face(&self.ids[a], &self.ids[c]);
        }
        for (c, v) in &self.labels {
            b.label(&self.ids[*c], v.coordinates().to_vec());
        }
        for (c, m) in &self.walls {
            b.wall(&self.ids[*c], *m);
        }
        for (c, g) in &self.gleams {
            b.gleam(&self.ids[*c], g.clone());
        }
        b
    }

    /// The same space with new labels, one per top cell in order.
    pub fn relabeled(&self, labels: Vec<ModuleElement>) -> Result<Self> {
        let tops = self.top_cells();
        if labels.len() != tops.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for {} top cells",
                labels.len(),
                tops.len()
            )));
        }
        let mut out = self.clone();
        out.labels = tops.into_iter().zip(labels).collect();
        Ok(out)
    }

    /// Signed order-complex simplices of a top cell.
    fn cell_chain(&self, c: usize) -> Result<Vec<(usize, i8)>> {
        if self.module.all_two_torsion() {
            let order = self.poset.order_complex();
            return Ok(self
                .poset
                .chains_ending_at(c)
                .iter()
                .map(|ch| (order.index_of(ch).expect("chain"), 1))
                .collect());
        }
        self.poset.cell_orientation(c)
    }

    pub fn push_forward(&self) -> Result<Chain> {
        let mut chain = Chain::zero(self.dim);
        for (c, label) in &self.labels {
            for (t, s) in self.cell_chain(*c)? {
                chain.add_term(&self.module, t, &self.module.scale_i64(label, s as i64));
            }
        }
        Ok(chain)
    }

    pub fn homology(&self) -> Result<Vec<AbelianGroup>> {
        homology_all(self.poset.order_complex(), &self.module)
    }

    /// Concrete-to-abstract export: cell `i` becomes `c<i>`, walls get the model
    /// matching their arity, and labels are rescaled so that the pushed chain
    /// is unchanged.
    pub fn from_reeb(w: &ReebComplex, c: &LabeledTopChain) -> Result<Self> {
        let n = w.target_dim();
        let mut b = PqBuilder::new(n, c.module.clone());
        for i in 0..w.len() {
            b.cell(&format!("c{i}"), w.cell(i).dim());
        }
        for (a, d) in w.face_relation() {
            b.face(&format!("c{a}"), &format!("c{d}"));
        }
        let order = w.order_complex();
        for (cell, label) in &c.labels {
            let mut v = label.clone();
            if !c.module.all_two_torsion() {
                let eps = crate::cycle::target_sign(c, w.cell(*cell).sigma);
                let first = w.poset().chains_ending_at(*cell).into_iter().next().expect("chain");
                let idx = order.index_of(&first).expect("chain");
                let s = w.refinement(*cell).iter().find(|x| x.0 == idx).expect("refinement").1;
                v = c.module.scale_i64(&v, (eps * s) as i64);
            }
            b.label(&format!("c{cell}"), v.coordinates().to_vec());
        }
        for wall in w.walls() {
            b.wall(&format!("c{wall}"), LocalModel::from_arity(w.cofacets(wall).len()));
        }
        b.build()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallReport {
    pub cell: usize,
    pub model: LocalModel,
    pub arity: usize,
    pub residual: ModuleElement,
}

impl WallReport {
    pub fn consistent(&self) -> bool {
        self.model.arity().is_none_or(|a| a == self.arity) && self.residual.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PqReport {
    pub walls: Vec<WallReport>,
    pub check: CycleCheck,
    /// `None` when the labels do not form a cycle.
    pub nontrivial: Option<bool>,
    pub homology: Vec<AbelianGroup>,
}

impl PqReport {
    pub fn walls_consistent(&self) -> bool {
        self.walls.iter().all(WallReport::consistent)
    }

    pub fn top_homology(&self) -> AbelianGroup {
        self.homology.last().cloned().unwrap_or_default()
    }
}

/// Checks every wall rule, the cycle condition and, for cycles, whether the
/// labeled chain is a nonzero top class.
pub fn pq_verify(p: &PseudoQuotient) -> Result<PqReport> {
    let pushed = p.push_forward()?;
    let kinds: Vec<(usize, WallKind)> = p
        .walls
        .iter()
        .map(|&(c, _)| (c, WallKind::from_coface_count(p.poset.cofacets(c).len())))
        .collect();
    let (wall_res, internal) = residuals(&p.poset, &p.module, &pushed, &kinds);
    let walls: Vec<WallReport> = p
        .walls
        .iter()
        .zip(&wall_res)
        .map(|(&(cell, model), r)| WallReport {
            cell,
            model,
            arity: p.poset.cofacets(cell).len(),
            residual: r.residual.clone(),
        })
        .collect();
    let mut boundary_contract: Vec<usize> = p
        .walls
        .iter()
        .filter(|(c, _)| p.poset.cofacets(*c).len() == 1)
        .flat_map(|(c, _)| p.poset.cofacets(*c).iter().copied())
        .filter(|top| p.labels.iter().any(|(c, v)| c == top && !v.is_zero()))
        .collect();
    boundary_contract.sort_unstable();
    boundary_contract.dedup();
    let check = CycleCheck {
        walls: wall_res,
        internal,
        boundary_contract,
    };
    let nontrivial = check.passed().then(|| !pushed.is_zero());
    Ok(PqReport {
        walls,
        check,
        nontrivial,
        homology: p.homology()?,
    })
}

/// Round fold model of `S^2 x S^2` over the plane: an annulus (one sphere per
/// fiber) around two discs (two spheres) glued along the inner circle, with
/// sphere counts reduced to the labels the fold rules allow over `Z/2`.
pub fn round_fold_s2xs2() -> PseudoQuotient {
    let mut b = PqBuilder::new(2, CoefficientModule::z2());
    for k in 0..3 {
        b.cell(&format!("i{k}"), 0).cell(&format!("o{k}"), 0);
    }
    for k in 0..3 {
        let k1 = (k + 1) % 3;
        b.cell(&format!("ie{k}"), 1)
            .faces(&format!("ie{k}"), &[&format!("i{k}"), &format!("i{k1}")]);
        b.cell(&format!("oe{k}"), 1)
            .faces(&format!("oe{k}"), &[&format!("o{k}"), &format!("o{k1}")]);
        b.cell(&format!("s{k}"), 1)
            .faces(&format!("s{k}"), &[&format!("i{k}"), &format!("o{k}")]);
    }
    for k in 0..3 {
        let k1 = (k + 1) % 3;
        let a = format!("a{k}");
        b.cell(&a, 2)
            .faces(&a, &[&format!("ie{k}"), &format!("oe{k}"), &format!("s{k}"), &format!("s{k1}")])
            .label_i64(&a, &[0]);
    }
    for d in ["d1", "d2"] {
        b.cell(d, 2).faces(d, &["ie0", "ie1", "ie2"]).label_i64(d, &[1]);
    }
    for k in 0..3 {
        b.wall(&format!("oe{k}"), LocalModel::FoldBirth)
            .wall(&format!("ie{k}"), LocalModel::FoldMerge)
            .wall(&format!("s{k}"), LocalModel::Regular);
    }
    b.build().expect("round fold model")
}

/// Special generic model over a disc: every fiber a sphere, dying on the
/// boundary circle; labels are zero.
pub fn special_generic_disc() -> PseudoQuotient {
    let mut b = PqBuilder::new(2, CoefficientModule::z2());
    b.cell("c", 0);
    for k in 0..3 {
        b.cell(&format!("b{k}"), 0);
    }
    for k in 0..3 {
        let k1 = (k + 1) % 3;
        b.cell(&format!("e{k}"), 1)
            .faces(&format!("e{k}"), &[&format!("b{k}"), &format!("b{k1}")]);
        b.cell(&format!("r{k}"), 1).faces(&format!("r{k}"), &["c", &format!("b{k}")]);
    }
    for k in 0..3 {
        let k1 = (k + 1) % 3;
        let t = format!("t{k}");
        b.cell(&t, 2)
            .faces(&t, &[&format!("r{k}"), &format!("r{k1}"), &format!("e{k}")])
            .label_i64(&t, &[0]);
    }
    for k in 0..3 {
        b.wall(&format!("e{k}"), LocalModel::FoldBirth)
            .wall(&format!("r{k}"), LocalModel::Regular);
    }
    b.build().expect("special generic model")
}
