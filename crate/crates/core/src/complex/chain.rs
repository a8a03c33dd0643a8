use std::collections::BTreeMap;

use super::{permutation_sign, SimplexId, SimplicialComplex};
use crate::algebra::{CoefficientModule, ModuleElement};
use crate::error::{Error, Result};

/// Finitely supported simplicial chain with coefficients in a module.
/// Only nonzero canonical coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    degree: usize,
    coeffs: BTreeMap<usize, ModuleElement>,
}

impl Chain {
    pub fn zero(degree: usize) -> Self {
        Chain {
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = (usize, &ModuleElement)> {
        self.coeffs.iter().map(|(&i, c)| (i, c))
    }

    pub fn coefficient(&self, index: usize) -> Option<&ModuleElement> {
        self.coeffs.get(&index)
    }

    /// Adds `a` to the coefficient of simplex `index`.
    pub fn add_term(&mut self, module: &CoefficientModule, index: usize, a: &ModuleElement) {
        let sum = match self.coeffs.get(&index) {
            Some(c) => module.add(c, a),
            None => module.add(&module.zero(), a),
        };
        if sum.is_zero() {
            self.coeffs.remove(&index);
        } else {
            self.coeffs.insert(index, sum);
        }
    }

    /// Adds `a` times the simplex spanned by `vertices` in the given order.
    pub fn add_oriented(
        &mut self,
        k: &SimplicialComplex,
        module: &CoefficientModule,
        vertices: &[usize],
        a: &ModuleElement,
    ) -> Result<()> {
        if vertices.len() != self.degree + 1 {
            return Err(Error::DimensionMismatch(format!(
                "{} vertices for a degree {} chain",
                vertices.len(),
                self.degree
            )));
        }
        let sign = permutation_sign(vertices);
        if sign == 0 {
            return Err(Error::InvalidInput(format!("repeated vertex in {vertices:?}")));
        }
        let id = k
            .find(vertices)
            .ok_or_else(|| Error::InvalidInput(format!("{vertices:?} is not a simplex")))?;
        self.add_term(module, id.index, &module.scale_i64(a, sign as i64));
        Ok(())
    }

    pub fn boundary(&self, k: &SimplicialComplex, module: &CoefficientModule) -> Chain {
        let mut out = Chain::zero(self.degree.saturating_sub(1));
        if self.degree == 0 {
            return out;
        }
        for (&j, c) in &self.coeffs {
            let neg = module.neg(c);
            for (i, f) in k.facets(SimplexId::new(self.degree, j)).into_iter().enumerate() {
                out.add_term(module, f, if i % 2 == 0 { c } else { &neg });
            }
        }
        out
    }
}

/// Module-valued function on the `degree`-simplices, relative to sorted vertex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    degree: usize,
    values: Vec<ModuleElement>,
}

impl Cochain {
    pub fn zero(k: &SimplicialComplex, module: &CoefficientModule, degree: usize) -> Self {
        Cochain {
            degree,
            values: vec![module.zero(); k.count(degree)],
        }
    }

    /// Values in simplex order; each is reduced to canonical form.
    pub fn from_values(
        k: &SimplicialComplex,
        module: &CoefficientModule,
        degree: usize,
        values: Vec<ModuleElement>,
    ) -> Result<Self> {
        if values.len() != k.count(degree) {
            return Err(Error::DimensionMismatch(format!(
                "{} values for {} simplices of dimension {degree}",
                values.len(),
                k.count(degree)
            )));
        }
        let values = values
            .iter()
            .map(|v| module.canonical(v.coordinates()))
            .collect::<Result<_>>()?;
        Ok(Cochain { degree, values })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &[ModuleElement] {
        &self.values
    }

    pub fn value(&self, index: usize) -> &ModuleElement {
        &self.values[index]
    }

    pub fn set(&mut self, module: &CoefficientModule, index: usize, v: &ModuleElement) {
        self.values[index] = module.add(&module.zero(), v);
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(ModuleElement::is_zero)
    }

    /// Value on the simplex spanned by `vertices` in the given order.
    pub fn evaluate(
        &self,
        k: &SimplicialComplex,
        module: &CoefficientModule,
        vertices: &[usize],
    ) -> Result<ModuleElement> {
        let sign = permutation_sign(vertices);
        let id = k
            .find(vertices)
            .filter(|id| id.dim == self.degree && sign != 0)
            .ok_or_else(|| Error::InvalidInput(format!("{vertices:?} is not a {}-simplex", self.degree)))?;
        Ok(module.scale_i64(&self.values[id.index], sign as i64))
    }

    /// Pairing with a chain of the same degree. Defined only when the module is
    /// a ring with coefficient 1 acting as the identity, so the chain must be over `Z`
    /// (`integral`); returns the sum of coefficient times value.
    pub fn pair(&self, module: &CoefficientModule, integral: &[(usize, i64)]) -> ModuleElement {
        integral
            .iter()
            .fold(module.zero(), |acc, &(i, c)| module.add(&acc, &module.scale_i64(&self.values[i], c)))
    }

    pub fn coboundary(&self, k: &SimplicialComplex, module: &CoefficientModule) -> Cochain {
        let d = self.degree + 1;
        let values = (0..k.count(d))
            .map(|j| {
                k.facets(SimplexId::new(d, j))
                    .into_iter()
                    .enumerate()
                    .fold(module.zero(), |acc, (i, f)| {
                        if i % 2 == 0 {
                            module.add(&acc, &self.values[f])
                        } else {
                            module.sub(&acc, &self.values[f])
                        }
                    })
            })
            .collect();
        Cochain { degree: d, values }
    }
}

/// A cochain whose coboundary has been checked to vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle(Cochain);

impl Cocycle {
    /// Fails with the first simplex where the coboundary is nonzero.
    pub fn new(k: &SimplicialComplex, module: &CoefficientModule, c: Cochain) -> Result<Self> {
        let d = c.coboundary(k, module);
        if let Some(j) = d.values.iter().position(|v| !v.is_zero()) {
            return Err(Error::Precondition(format!(
                "cochain is not a cocycle: coboundary {} on {:?}",
                d.values[j],
                k.simplices(d.degree)[j]
            )));
        }
        Ok(Cocycle(c))
    }

    pub fn cochain(&self) -> &Cochain {
        &self.0
    }

    pub fn into_cochain(self) -> Cochain {
        self.0
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }
}
