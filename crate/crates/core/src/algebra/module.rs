//! Finitely generated coefficient modules presented by relation matrices.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntegerMatrix;
use super::snf::smith_diagonal;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseRing {
    Integers,
    Mod2,
}

impl BaseRing {
    pub fn tag(self) -> &'static str {
        match self {
            BaseRing::Integers => "Z",
            BaseRing::Mod2 => "Z2",
        }
    }
}

/// Isomorphism type of a finitely generated abelian group:
/// `Z^free_rank` plus cyclic summands `Z/t` for each torsion coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    /// Builds the group from invariant factors, dropping units.
    pub fn new(free_rank: usize, factors: impl IntoIterator<Item = BigInt>) -> Self {
        let mut torsion: Vec<BigInt> = factors.into_iter().filter(|d| !d.is_one()).collect();
        torsion.sort();
        AbelianGroup { free_rank, torsion }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            free_rank: rank,
            torsion: vec![],
        }
    }

    pub fn cyclic(order: i64) -> Self {
        AbelianGroup::new(0, [BigInt::from(order)])
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        write!(f, "{}", parts.join(" + "))
    }
}

/// Element of a [`CoefficientModule`], stored in canonical coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModuleElement(Vec<BigInt>);

impl ModuleElement {
    pub fn coordinates(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// `R^s / (relation lattice)` for `R` the integers or `Z/2`.
///
/// Everything is handled as a Z-module: a `Z2` module gets `2 e_i` added to its
/// relation lattice. An echelon basis of the lattice is computed once and used
/// for canonical reduction.
#[derive(Clone, Debug)]
pub struct CoefficientModule {
    ring: BaseRing,
    rank: usize,
    relations: IntegerMatrix,
    echelon: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    all_two_torsion: bool,
}

impl PartialEq for CoefficientModule {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.echelon == other.echelon
    }
}

impl Eq for CoefficientModule {}

impl CoefficientModule {
    /// `relations` has `rank` rows; each column is a relator.
    pub fn new(ring: BaseRing, rank: usize, relations: IntegerMatrix) -> Result<Self> {
        if relations.cols() > 0 && relations.rows() != rank {
            return Err(Error::DimensionMismatch(format!(
                "relation matrix has {} rows but the module rank is {rank}",
                relations.rows()
            )));
        }
        let mut generators: Vec<Vec<BigInt>> = (0..relations.cols()).map(|j| relations.column(j)).collect();
        if ring == BaseRing::Mod2 {
            for i in 0..rank {
                let mut v = vec![BigInt::zero(); rank];
                v[i] = BigInt::from(2);
                generators.push(v);
            }
        }
        let (echelon, pivots) = echelon_basis(rank, generators);
        let mut module = CoefficientModule {
            ring,
            rank,
            relations: if relations.cols() == 0 {
                IntegerMatrix::zeros(rank, 0)
            } else {
                relations
            },
            echelon,
            pivots,
            all_two_torsion: false,
        };
        module.all_two_torsion = (0..rank).all(|i| {
            let mut v = vec![BigInt::zero(); rank];
            v[i] = BigInt::from(2);
            module.reduce(v).iter().all(Zero::is_zero)
        });
        Ok(module)
    }

    pub fn integers() -> Self {
        Self::new(BaseRing::Integers, 1, IntegerMatrix::zeros(1, 0)).expect("Z is well formed")
    }

    pub fn z2() -> Self {
        Self::new(BaseRing::Mod2, 1, IntegerMatrix::zeros(1, 0)).expect("Z/2 is well formed")
    }

    /// Cyclic group `Z/order` over the integers.
    pub fn cyclic(order: i64) -> Self {
        Self::new(BaseRing::Integers, 1, IntegerMatrix::from_rows(&[vec![order]])).expect("cyclic module")
    }

    pub fn ring(&self) -> BaseRing {
        self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn relations(&self) -> &IntegerMatrix {
        &self.relations
    }

    /// Row basis of the full relation lattice in echelon form.
    pub fn lattice_basis(&self) -> &[Vec<BigInt>] {
        &self.echelon
    }

    /// True iff `2a = 0` for every element `a`.
    pub fn all_two_torsion(&self) -> bool {
        self.all_two_torsion
    }

    pub fn structure(&self) -> AbelianGroup {
        if self.echelon.is_empty() {
            return AbelianGroup::free(self.rank);
        }
        let m = IntegerMatrix::from_columns(self.rank, &self.echelon);
        let diag = smith_diagonal(&m);
        AbelianGroup::new(self.rank - diag.len(), diag)
    }

    pub fn is_trivial(&self) -> bool {
        self.structure().is_zero()
    }

    /// Finite cardinality, or `None` for infinite modules.
    pub fn order(&self) -> Option<BigInt> {
        if self.pivots.len() < self.rank {
            return None;
        }
        Some(self.echelon.iter().zip(&self.pivots).map(|(row, &p)| row[p].clone()).product())
    }

    fn reduce(&self, mut x: Vec<BigInt>) -> Vec<BigInt> {
        for (row, &p) in self.echelon.iter().zip(&self.pivots) {
            let q = x[p].div_floor(&row[p]);
            if q.is_zero() {
                continue;
            }
            for (xi, ri) in x.iter_mut().zip(row).skip(p) {
                *xi -= &q * ri;
            }
        }
        x
    }

    /// Canonical representative of raw coordinates.
    pub fn canonical(&self, coords: &[BigInt]) -> Result<ModuleElement> {
        if coords.len() != self.rank {
            return Err(Error::DimensionMismatch(format!(
                "element with {} coordinates in a module of rank {}",
                coords.len(),
                self.rank
            )));
        }
        Ok(ModuleElement(self.reduce(coords.to_vec())))
    }

    pub fn element(&self, coords: &[i64]) -> Result<ModuleElement> {
        let v: Vec<BigInt> = coords.iter().map(|&c| BigInt::from(c)).collect();
        self.canonical(&v)
    }

    pub fn zero(&self) -> ModuleElement {
        ModuleElement(vec![BigInt::zero(); self.rank])
    }

    /// Image of the `i`-th generator.
    pub fn generator(&self, i: usize) -> ModuleElement {
        let mut v = vec![BigInt::zero(); self.rank];
        v[i] = BigInt::one();
        ModuleElement(self.reduce(v))
    }

    pub fn add(&self, a: &ModuleElement, b: &ModuleElement) -> ModuleElement {
        ModuleElement(self.reduce(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect()))
    }

    pub fn sub(&self, a: &ModuleElement, b: &ModuleElement) -> ModuleElement {
        ModuleElement(self.reduce(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect()))
    }

    pub fn neg(&self, a: &ModuleElement) -> ModuleElement {
        ModuleElement(self.reduce(a.0.iter().map(|x| -x).collect()))
    }

    pub fn scale(&self, a: &ModuleElement, k: &BigInt) -> ModuleElement {
        ModuleElement(self.reduce(a.0.iter().map(|x| x * k).collect()))
    }

    pub fn scale_i64(&self, a: &ModuleElement, k: i64) -> ModuleElement {
        self.scale(a, &BigInt::from(k))
    }

    /// All elements of a finite module with at most `limit` elements.
    pub fn elements(&self, limit: usize) -> Option<Vec<ModuleElement>> {
        let order = self.order()?;
        if order > BigInt::from(limit) {
            return None;
        }
        // canonical forms are exactly the vectors with pivot coordinate p in [0, h_p)
        let bounds: Vec<i64> = self
            .echelon
            .iter()
            .zip(&self.pivots)
            .map(|(row, &p)| i64::try_from(&row[p]).expect("bounded by limit"))
            .collect();
        let mut out = Vec::new();
        let mut current = vec![0i64; self.rank];
        loop {
            out.push(ModuleElement(current.iter().map(|&c| BigInt::from(c)).collect()));
            let mut k = 0;
            loop {
                if k == self.rank {
                    return Some(out);
                }
                let p = self.pivots.iter().position(|&p| p == k).expect("finite module");
                current[k] += 1;
                if current[k] < bounds[p] {
                    break;
                }
                current[k] = 0;
                k += 1;
            }
        }
    }

    pub fn describe(&self) -> String {
        format!("{} (ring {}, rank {})", self.structure(), self.ring.tag(), self.rank)
    }
}

/// Integer row reduction to echelon form; returns rows and their pivot columns.
fn echelon_basis(width: usize, mut rows: Vec<Vec<BigInt>>) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    let mut basis = Vec::new();
    let mut pivots = Vec::new();
    for col in 0..width {
        loop {
            let mut with: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i][col].is_zero()).collect();
            if with.is_empty() {
                break;
            }
            with.sort_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
            let p = with[0];
            let mut done = true;
            for &i in &with[1..] {
                let q = rows[i][col].div_floor(&rows[p][col]);
                let pivot_row = rows[p].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
                if !rows[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                let mut r = rows.swap_remove(p);
                if r[col].is_negative() {
                    r.iter_mut().for_each(|x| *x = -std::mem::take(x));
                }
                basis.push(r);
                pivots.push(col);
                rows.retain(|r| r.iter().any(|x| !x.is_zero()));
                break;
            }
        }
    }
    (basis, pivots)
}

/// Coefficient module of user-named generators (fiber types) modulo user relations.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QuotientLabelModule {
    generators: Vec<String>,
    relations: Vec<Vec<BigInt>>,
}

impl QuotientLabelModule {
    pub fn new<S: Into<String>>(generators: impl IntoIterator<Item = S>) -> Result<Self> {
        let generators: Vec<String> = generators.into_iter().map(Into::into).collect();
        if generators.is_empty() {
            return Err(Error::InvalidInput("label module needs at least one generator".into()));
        }
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].contains(g) {
                return Err(Error::InvalidInput(format!("duplicate generator `{g}`")));
            }
        }
        Ok(QuotientLabelModule {
            generators,
            relations: Vec::new(),
        })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relations(&self) -> &[Vec<BigInt>] {
        &self.relations
    }

    pub fn generator_index(&self, name: &str) -> Result<usize> {
        self.generators
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| Error::InvalidInput(format!("unknown generator `{name}`")))
    }

    /// Coordinates of a formal combination of named generators.
    pub fn combination(&self, terms: &[(&str, i64)]) -> Result<Vec<BigInt>> {
        let mut v = vec![BigInt::zero(); self.generators.len()];
        for &(name, coef) in terms {
            v[self.generator_index(name)?] += coef;
        }
        Ok(v)
    }

    pub fn add_relation(&mut self, terms: &[(&str, i64)]) -> Result<()> {
        let v = self.combination(terms)?;
        self.relations.push(v);
        Ok(())
    }

    pub fn add_relation_vector(&mut self, v: Vec<BigInt>) -> Result<()> {
        if v.len() != self.generators.len() {
            return Err(Error::DimensionMismatch(format!(
                "relation of length {} over {} generators",
                v.len(),
                self.generators.len()
            )));
        }
        self.relations.push(v);
        Ok(())
    }

    /// The presented module `Z<generators> / relations`.
    pub fn quotient_module(&self) -> CoefficientModule {
        let m = IntegerMatrix::from_columns(self.generators.len(), &self.relations);
        CoefficientModule::new(BaseRing::Integers, self.generators.len(), m).expect("shapes checked on insert")
    }
}
