//! Multiplicities of irreducible representations in the analytic and
//! rational representations of the Jacobian, and dimensions of the
//! resulting isogeny factors.

use serde::Serialize;

use crate::arith::{euler_phi, frac, rat, to_integer, Rational};
use crate::cover::{CharRef, ClassRef, CoverSpec};
use crate::differentials::IrrepClassData;
use crate::error::{Error, Result};
use crate::group::{Character, CharacterOrbit, GroupSpec};

fn nonnegative(value: Rational, what: &str) -> Result<u64> {
    let n = to_integer(value).map_err(|v| Error::NonIntegralDimension(format!("{what} = {v}")))?;
    u64::try_from(n).map_err(|_| Error::NonIntegralDimension(format!("{what} = {n} is negative")))
}

/// Multiplicity of `rho` in the action on holomorphic differentials.
pub fn analytic_multiplicity(cover: &CoverSpec, rho: &IrrepClassData) -> Result<u64> {
    let classes = cover.branch_classes();
    let rows = rho.rows_for(cover, &classes)?;
    let mut value = rat(rho.dim as i64 * (cover.base_genus() as i64 - 1) + i64::from(rho.trivial), 1);
    for (c, row) in classes.iter().zip(&rows) {
        for (alpha, &count) in row.iter().enumerate() {
            value += frac(rat(alpha as i64, c.order as i64)) * (c.count() * count) as i64;
        }
    }
    nonnegative(value, &format!("analytic multiplicity of {}", rho.label))
}

/// Multiplicity of `rho` in the first rational homology.
pub fn rational_multiplicity(cover: &CoverSpec, rho: &IrrepClassData) -> Result<u64> {
    let classes = cover.branch_classes();
    let rows = rho.rows_for(cover, &classes)?;
    let d = rho.dim as i64;
    let mut value = d * (2 * cover.base_genus() as i64 - 2) + 2 * i64::from(rho.trivial);
    for (c, row) in classes.iter().zip(&rows) {
        value += c.count() as i64 * (d - row[0] as i64);
    }
    u64::try_from(value)
        .map_err(|_| Error::NonIntegralDimension(format!("rational multiplicity of {} = {value}", rho.label)))
}

/// An irreducible rational representation through its complex constituent:
/// dimension `d`, field degree `k`, Schur index `m` and the multiplicity of
/// the eigenvalue 1 on each branch class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalIrrepData {
    pub label: String,
    pub dim: u64,
    pub field_degree: u64,
    pub schur_index: u64,
    pub trivial: bool,
    pub fixed_counts: Vec<(ClassRef, u64)>,
}

impl RationalIrrepData {
    pub fn from_orbit(cover: &CoverSpec, orbit: &CharacterOrbit) -> Result<Self> {
        let chi = CharRef::Abelian(orbit.representative().clone());
        let fixed_counts = cover
            .branch_classes()
            .into_iter()
            .map(|c| Ok((c.class.clone(), u64::from(cover.u_value(&chi, &c.class)? == 0))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            label: chi.to_string(),
            dim: 1,
            field_degree: orbit.field_degree,
            schur_index: 1,
            trivial: orbit.order == 1,
            fixed_counts,
        })
    }

    fn defect(&self, cover: &CoverSpec) -> Result<u64> {
        if self.dim == 0 || self.field_degree == 0 || self.schur_index == 0 {
            return Err(Error::NonIntegralDimension(format!("{}: zero parameter", self.label)));
        }
        if self.dim % self.schur_index != 0 {
            return Err(Error::NonIntegralDimension(format!(
                "{}: Schur index {} does not divide {}",
                self.label, self.schur_index, self.dim
            )));
        }
        let mut total = 0;
        for c in cover.branch_classes() {
            let n0 = self
                .fixed_counts
                .iter()
                .find(|(k, _)| k == &c.class)
                .map(|(_, n)| *n)
                .ok_or_else(|| Error::NTableMismatch(format!("{}: class {} missing", self.label, c.class)))?;
            if n0 > self.dim {
                return Err(Error::NTableMismatch(format!("{}: class {} exceeds dimension", self.label, c.class)));
            }
            total += c.count() * (self.dim - n0);
        }
        Ok(total)
    }

    fn dimension(&self, cover: &CoverSpec, scale: u64, what: &str) -> Result<u64> {
        let defect = self.defect(cover)? as i64;
        let (k, g) = (self.field_degree as i64, cover.base_genus() as i64);
        let scale = scale as i64;
        let value = rat(k * self.dim as i64 * scale * (g - 1) + i64::from(self.trivial), 1) + rat(k * scale * defect, 2);
        nonnegative(value, &format!("{what} for {}", self.label))
    }

    /// Dimension of the isotypical factor `A_W`.
    pub fn dim_a(&self, cover: &CoverSpec) -> Result<u64> {
        self.dimension(cover, self.dim, "dim A_W")
    }

    /// Dimension of the factor `B_W` with `A_W ~ B_W^{d/m}`.
    pub fn dim_b(&self, cover: &CoverSpec) -> Result<u64> {
        self.dimension(cover, self.schur_index, "dim B_W")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicQuotientDim {
    /// A character whose kernel is the subgroup `N` with `Q = G/N`.
    pub character: Character,
    pub order: u64,
    pub dim: u64,
}

fn kernel_class_sum(cover: &CoverSpec, chi: &Character) -> Result<u64> {
    let chi = CharRef::Abelian(chi.clone());
    let mut total = 0;
    for c in cover.branch_classes() {
        if cover.u_value(&chi, &c.class)? != 0 {
            total += c.count();
        }
    }
    Ok(total)
}

fn quotient_dim(cover: &CoverSpec, orbit: &CharacterOrbit) -> Result<u64> {
    let outside = kernel_class_sum(cover, orbit.representative())? as i64;
    let delta = i64::from(orbit.order == 1);
    let value = (rat(cover.base_genus() as i64 - 1 + delta, 1) + rat(outside, 2)) * euler_phi(orbit.order) as i64;
    nonnegative(value, &format!("dim B_Q for {}", orbit.representative()))
}

/// One entry per cyclic quotient `Q` of the group.
pub fn cyclic_quotient_dims(cover: &CoverSpec) -> Result<Vec<CyclicQuotientDim>> {
    let g = cover.abelian_group()?;
    g.rational_character_orbits()
        .iter()
        .map(|orbit| {
            Ok(CyclicQuotientDim {
                character: orbit.representative().clone(),
                order: orbit.order,
                dim: quotient_dim(cover, orbit)?,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrymDim {
    pub character: Character,
    pub order: u64,
    pub quotient: GroupSpec,
    pub quotient_genus: u64,
    pub dim: u64,
    pub nontrivial: bool,
}

/// Dimension through the genus of `Y_Q = X/N`.
fn prym_from_quotient_genus(quotient: &CoverSpec, order: u64) -> Result<Rational> {
    let e = order as i64;
    let mut value = rat(quotient.genus()? as i64 - 1, 1);
    for c in quotient.branch_classes() {
        value += rat(e * c.count() as i64, 2 * c.order as i64);
    }
    Ok(value * rat(euler_phi(order) as i64, e) + i64::from(order == 1))
}

pub fn primitive_prym_dims(cover: &CoverSpec) -> Result<Vec<PrymDim>> {
    let g = cover.abelian_group()?;
    let mut out = Vec::new();
    for orbit in g.rational_character_orbits() {
        let chi = orbit.representative();
        let quotient = cover.quotient_cover(&g.kernel(chi))?;
        let dim = quotient_dim(cover, &orbit)?;
        let check = prym_from_quotient_genus(&quotient, orbit.order)?;
        if check != rat(dim as i64, 1) {
            return Err(Error::InternalInconsistency(format!(
                "Prym dimension for {chi}: {dim} from the kernel, {check} from the quotient genus"
            )));
        }
        out.push(PrymDim {
            character: chi.clone(),
            order: orbit.order,
            quotient: quotient.abelian_group()?.clone(),
            quotient_genus: quotient.genus()?,
            dim,
            nontrivial: dim > 0,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterMultiplicity {
    pub character: Character,
    pub analytic: u64,
    pub rational: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitDimension {
    pub members: Vec<Character>,
    pub order: u64,
    pub field_degree: u64,
    pub dim_a: u64,
    pub dim_b: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub genus: u64,
    pub characters: Vec<CharacterMultiplicity>,
    pub rational_irreps: Vec<OrbitDimension>,
    pub quotients: Vec<PrymDim>,
}

pub fn decompose(cover: &CoverSpec) -> Result<DecompositionReport> {
    let g = cover.abelian_group()?;
    let genus = cover.genus()?;
    let characters = g
        .characters()
        .into_iter()
        .map(|chi| {
            let rho = IrrepClassData::from_character(cover, &CharRef::Abelian(chi.clone()))?;
            Ok(CharacterMultiplicity {
                analytic: analytic_multiplicity(cover, &rho)?,
                rational: rational_multiplicity(cover, &rho)?,
                character: chi,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let rational_irreps = g
        .rational_character_orbits()
        .iter()
        .map(|orbit| {
            let w = RationalIrrepData::from_orbit(cover, orbit)?;
            Ok(OrbitDimension {
                members: orbit.members.clone(),
                order: orbit.order,
                field_degree: orbit.field_degree,
                dim_a: w.dim_a(cover)?,
                dim_b: w.dim_b(cover)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let total: u64 = rational_irreps.iter().map(|w| w.dim_a).sum();
    if total != genus {
        return Err(Error::InternalInconsistency(format!(
            "isotypical dimensions sum to {total}, genus is {genus}"
        )));
    }
    Ok(DecompositionReport {
        genus,
        characters,
        rational_irreps,
        quotients: primitive_prym_dims(cover)?,
    })
}
