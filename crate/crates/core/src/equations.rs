//! Covers of the line given by equations `w_l^{m_l} = F_l(z)`, where each
//! `F_l` is stored through its divisor.

use crate::cover::{BranchLabel, BranchPoint, ClassRef, ComplexRational, CoverSpec, GroupData};
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};
use num_integer::Integer;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Finite(ComplexRational),
    Infinity,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub place: Place,
    pub exponent: i64,
}

/// A rational function up to a constant, as a list of zeros and poles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredRational {
    factors: Vec<Factor>,
}

impl FactoredRational {
    /// An explicit factor at infinity must match the degree of the finite
    /// part; when absent it is derived.
    pub fn new(factors: Vec<Factor>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for f in &factors {
            if f.exponent == 0 {
                return Err(Error::InvalidEquation("zero exponent".into()));
            }
            if !seen.insert(f.place.clone()) {
                return Err(Error::InvalidEquation(format!("repeated point {:?}", f.place)));
            }
        }
        let finite: i64 = factors
            .iter()
            .filter(|f| f.place != Place::Infinity)
            .map(|f| f.exponent)
            .sum();
        if let Some(f) = factors.iter().find(|f| f.place == Place::Infinity) {
            if f.exponent != -finite {
                return Err(Error::InvalidEquation(format!(
                    "order {} at infinity, expected {}",
                    f.exponent, -finite
                )));
            }
        }
        Ok(Self { factors })
    }

    /// Product of `(z - point)^exponent` over the list.
    pub fn from_roots(roots: &[(ComplexRational, i64)]) -> Result<Self> {
        Self::new(
            roots
                .iter()
                .map(|(z, e)| Factor { place: Place::Finite(z.clone()), exponent: *e })
                .collect(),
        )
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn order_at(&self, place: &Place) -> i64 {
        match place {
            Place::Infinity => -self
                .factors
                .iter()
                .filter(|f| f.place != Place::Infinity)
                .map(|f| f.exponent)
                .sum::<i64>(),
            p => self
                .factors
                .iter()
                .find(|f| &f.place == p)
                .map_or(0, |f| f.exponent),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub degree: u64,
    pub function: FactoredRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationSystem {
    equations: Vec<Equation>,
}

impl EquationSystem {
    pub fn new(equations: Vec<Equation>) -> Result<Self> {
        for (l, eq) in equations.iter().enumerate() {
            if eq.degree < 2 {
                return Err(Error::InvalidEquation(format!(
                    "equation {l} has degree {}, need at least 2",
                    eq.degree
                )));
            }
            let at_inf = eq.function.order_at(&Place::Infinity);
            if at_inf.rem_euclid(eq.degree as i64) != 0 {
                return Err(Error::BranchedAtInfinity(format!(
                    "equation {l} has order {at_inf} at infinity, not divisible by {}",
                    eq.degree
                )));
            }
        }
        Ok(Self { equations })
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    pub fn group(&self) -> GroupSpec {
        GroupSpec::new(self.equations.iter().map(|e| e.degree).collect())
            .expect("degrees are at least 2")
    }

    /// Finite points appearing in some `F_l`, in order of first appearance.
    pub fn finite_points(&self) -> Vec<ComplexRational> {
        let mut out: Vec<ComplexRational> = Vec::new();
        for eq in &self.equations {
            for f in eq.function.factors() {
                if let Place::Finite(z) = &f.place {
                    if !out.contains(z) {
                        out.push(z.clone());
                    }
                }
            }
        }
        out
    }

    pub fn psi_at(&self, point: &ComplexRational) -> GroupElement {
        let place = Place::Finite(point.clone());
        let exps: Vec<i64> = self
            .equations
            .iter()
            .map(|eq| eq.function.order_at(&place))
            .collect();
        self.group().element_mod(&exps).expect("one entry per equation")
    }

    pub fn build_cover(&self) -> Result<CoverSpec> {
        let g = self.group();
        let points = self
            .finite_points()
            .into_iter()
            .filter_map(|z| {
                let x = self.psi_at(&z);
                (!x.is_identity()).then(|| BranchPoint {
                    label: BranchLabel::Point(z),
                    class: ClassRef::Element(x),
                })
            })
            .collect();
        CoverSpec::new(0, GroupData::Abelian(g), points)
    }

    /// First exponent vector `E` (lexicographically) for which
    /// `prod F_l^{e_l beta / m_l}` is a `beta`-th power, or `None` when the
    /// fibered product is irreducible.
    pub fn check_nondegeneracy(&self) -> Option<Vec<u64>> {
        let g = self.group();
        let mut places: Vec<Place> = self.finite_points().into_iter().map(Place::Finite).collect();
        places.push(Place::Infinity);
        let orders: Vec<Vec<i64>> = places
            .iter()
            .map(|p| self.equations.iter().map(|eq| eq.function.order_at(p)).collect())
            .collect();
        let ms = g.cyclic_orders().to_vec();
        g.characters().into_iter().skip(1).find_map(|chi| {
            let e = chi.exponents();
            let beta = e
                .iter()
                .zip(&ms)
                .fold(1u64, |acc, (&el, &m)| acc.lcm(&(m / m.gcd(&el))));
            let is_power = orders.iter().all(|ord| {
                let total: i64 = ord
                    .iter()
                    .zip(e)
                    .zip(&ms)
                    .map(|((&o, &el), &m)| o * (el * beta / m) as i64)
                    .sum();
                total % beta as i64 == 0
            });
            is_power.then(|| e.to_vec())
        })
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn line_pt(x: i64) -> ComplexRational {
        ComplexRational::real(x)
    }

    /// `w^m = prod (z - k)^{e_k}` with the roots at `1, 2, ...`.
    pub fn single(m: u64, exps: &[i64]) -> EquationSystem {
        system(&[(m, exps)])
    }

    pub fn system(eqs: &[(u64, &[i64])]) -> EquationSystem {
        EquationSystem::new(
            eqs.iter()
                .map(|&(m, exps)| Equation {
                    degree: m,
                    function: FactoredRational::from_roots(
                        &exps
                            .iter()
                            .enumerate()
                            .filter(|(_, &e)| e != 0)
                            .map(|(i, &e)| (line_pt(i as i64 + 1), e))
                            .collect::<Vec<_>>(),
                    )
                    .unwrap(),
                })
                .collect(),
        )
        .unwrap()
    }
}
