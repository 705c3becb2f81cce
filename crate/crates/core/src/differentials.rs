//! `q`-differentials on the cover: divisors of the normalized isotypic
//! generators, dimensions of `Omega^q(1/f^*(Gamma))` per character or
//! irreducible representation, and the fixed-point trace formula.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::arith::{frac, lcm_all, rat, to_integer, Rational};
use crate::cover::{BranchClass, CharProfile, CharRef, ClassRef, CoverSpec};
use crate::error::{Error, Result};
use crate::group::GroupElement;

/// Euclidean split `q(o - 1) - u_conj = alpha * o + beta`, `0 <= beta < o`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AlphaBeta {
    pub alpha: i64,
    pub beta: u64,
}

fn split(order: u64, u: u64, q: i64) -> AlphaBeta {
    let o = order as i64;
    let ubar = (o - u as i64) % o;
    let value = q * (o - 1) - ubar;
    AlphaBeta {
        alpha: value.div_euclid(o),
        beta: value.rem_euclid(o) as u64,
    }
}

pub fn alpha_beta(cover: &CoverSpec, chi: &CharRef, class: &ClassRef, q: i64) -> Result<AlphaBeta> {
    let o = cover.class_order(class)?;
    let u = cover.u_value(chi, class)?;
    Ok(split(o, u, q))
}

/// Divisor of the normalized generator of `Omega^q(X)_chi` on a cover of
/// the line, namely `(dz)^q / (h_conj * prod (z - lambda)^alpha)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OmegaDivisor {
    pub character: CharRef,
    pub q: i64,
    /// Exponent on each branch fiber.
    pub branch: Vec<u64>,
    /// Exponent on each point over infinity.
    pub infinity: i64,
    /// Power of `z - lambda` dividing the generator, per branch point.
    pub alphas: Vec<i64>,
}

impl OmegaDivisor {
    pub fn degree(&self, cover: &CoverSpec) -> i64 {
        let n = cover.group_order() as i64;
        let finite: i64 = cover
            .branch_points()
            .iter()
            .zip(&self.branch)
            .map(|(bp, &b)| n / cover.class_order(&bp.class).expect("valid cover") as i64 * b as i64)
            .sum();
        finite + n * self.infinity
    }
}

pub fn omega_divisor(cover: &CoverSpec, chi: &CharRef, q: i64) -> Result<OmegaDivisor> {
    cover.require_line_base()?;
    let profile = cover.profile(chi)?;
    let t_conj = profile.t_conjugate()?;
    let mut branch = Vec::new();
    let mut alphas = Vec::new();
    for bp in cover.branch_points() {
        let ab = alpha_beta(cover, chi, &bp.class, q)?;
        branch.push(ab.beta);
        alphas.push(ab.alpha);
    }
    let infinity = t_conj - 2 * q + alphas.iter().sum::<i64>();
    Ok(OmegaDivisor {
        character: chi.clone(),
        q,
        branch,
        infinity,
        alphas,
    })
}

/// Whether the dimension formulas apply to `q`-differentials on a curve of
/// genus `genus`.
pub fn admissible(genus: u64, q: i64) -> bool {
    (genus >= 2 && q >= 1) || genus == 1 || (genus == 0 && q <= 1)
}

fn check_window(cover: &CoverSpec, q: i64) -> Result<u64> {
    let genus = cover.genus()?;
    if admissible(genus, q) {
        Ok(genus)
    } else {
        Err(Error::AdmissibilityViolation { genus, q })
    }
}

/// Correction to the dimension formula: `delta` and the character it is
/// attached to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaInfo {
    pub delta: u8,
    pub character: Option<CharRef>,
}

fn class_term(order: u64, alpha: u64, q: i64) -> Rational {
    let o = order as i64;
    rat((q - 1) * (o - 1), o) + frac(rat(q - 1 - alpha as i64, o))
}

fn raw_from_profile(base_genus: u64, q: i64, gamma_degree: u64, profile: &CharProfile) -> Result<i64> {
    let mut value = rat((2 * q - 1) * (base_genus as i64 - 1) + gamma_degree as i64, 1);
    for ((&u, &o), &r) in profile.u.iter().zip(&profile.orders).zip(&profile.counts) {
        value += class_term(o, u, q) * r as i64;
    }
    to_integer(value).map_err(|v| Error::InternalInconsistency(format!("non-integral dimension {v}")))
}

/// The dimension formula before the `delta` correction; it equals `-1` for
/// the exceptional character.
pub fn raw_dim_omega(cover: &CoverSpec, q: i64, gamma_degree: u64, chi: &CharRef) -> Result<i64> {
    raw_from_profile(cover.base_genus(), q, gamma_degree, &cover.profile(chi)?)
}

pub fn delta_info(cover: &CoverSpec, q: i64, gamma_degree: u64) -> Result<DeltaInfo> {
    let genus = check_window(cover, q)?;
    let delta = gamma_degree == 0 && ((genus != 1 && q == 1) || genus == 1);
    if !delta {
        return Ok(DeltaInfo { delta: 0, character: None });
    }
    // Over a base of genus one the cover is unramified and the extra form is
    // pulled back from the base.
    if genus != 1 || cover.base_genus() == 1 {
        return Ok(DeltaInfo { delta: 1, character: Some(cover.trivial_character()) });
    }
    let mut found = Vec::new();
    for profile in cover.profiles()? {
        if raw_from_profile(cover.base_genus(), q, gamma_degree, &profile)? == -1 {
            found.push(profile.character);
        }
    }
    if found.is_empty() && cover.abelian_group().is_err() {
        return Err(Error::UnknownCharacter(format!(
            "no supplied character has value -1 for q = {q}; the class table lacks a 1-dimensional character"
        )));
    }
    if found.len() != 1 {
        return Err(Error::InternalInconsistency(format!(
            "{} characters with value -1 for q = {q}",
            found.len()
        )));
    }
    let chi = found.remove(0);
    if cover.abelian_group().is_ok() {
        let l = lcm_all(cover.branch_classes().iter().map(|c| c.order)) as i64;
        let expect_trivial = (q - 1).rem_euclid(l) == 0;
        if cover.is_trivial_character(&chi)? != expect_trivial {
            return Err(Error::InternalInconsistency(format!(
                "exceptional character {chi} for q = {q} contradicts the branching orders"
            )));
        }
    }
    Ok(DeltaInfo { delta: 1, character: Some(chi) })
}

pub fn dim_omega_q_chi(cover: &CoverSpec, q: i64, gamma_degree: u64, chi: &CharRef) -> Result<u64> {
    let info = delta_info(cover, q, gamma_degree)?;
    let raw = raw_dim_omega(cover, q, gamma_degree, chi)?;
    let bonus = i64::from(info.character.as_ref() == Some(chi));
    u64::try_from(raw + bonus)
        .map_err(|_| Error::InternalInconsistency(format!("negative dimension for {chi} at q = {q}")))
}

pub fn total_dim_omega(cover: &CoverSpec, q: i64, gamma_degree: u64) -> Result<u64> {
    let info = delta_info(cover, q, gamma_degree)?;
    let g = cover.genus()? as i64;
    let n = cover.group_order() as i64;
    let total = (2 * q - 1) * (g - 1) + n * gamma_degree as i64 + info.delta as i64;
    u64::try_from(total).map_err(|_| Error::InternalInconsistency(format!("negative total {total}")))
}

fn root_of_unity(numerator: u64, denominator: u64) -> Complex64 {
    Complex64::from_polar(1.0, TAU * numerator as f64 / denominator as f64)
}

/// Contribution `count * z^q / (1 - z)` with `z = exp(2 pi i b / o)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceTerm {
    pub class: ClassRef,
    pub root_numerator: u64,
    pub root_denominator: u64,
    pub multiplicity: u64,
}

fn serialize_complex<S: Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EichlerTrace {
    pub element: GroupElement,
    pub q: i64,
    #[serde(serialize_with = "serialize_complex")]
    pub value: Complex64,
    /// `chi_delta(tau)` as the root `(numerator, denominator)` when present.
    pub delta_root: Option<(u64, u64)>,
    pub terms: Vec<TraceTerm>,
}

/// Trace of `tau` on `Omega^q(1/f^*(Gamma))` from its fixed points.
pub fn eichler_trace(cover: &CoverSpec, tau: &GroupElement, q: i64, gamma_degree: u64) -> Result<EichlerTrace> {
    let g = cover.abelian_group()?;
    g.element(tau.exponents().to_vec())?;
    if tau.is_identity() {
        return Err(Error::IdentityElement);
    }
    let info = delta_info(cover, q, gamma_degree)?;
    let n = cover.group_order();
    let mut value = Complex64::new(0.0, 0.0);
    let delta_root = match &info.character {
        Some(CharRef::Abelian(chi)) => {
            let root = (g.char_u_value(chi, tau), g.element_order(tau));
            value += root_of_unity(root.0, root.1);
            Some(root)
        }
        _ => None,
    };
    let mut terms = Vec::new();
    for class in cover.branch_classes() {
        let ClassRef::Element(sigma) = &class.class else { continue };
        let o = class.order;
        let Some(b) = (1..o).find(|&b| &g.power(sigma, b) == tau) else { continue };
        let multiplicity = class.count() * (n / o);
        let z = root_of_unity(b, o);
        value += z.powi(q as i32) / (Complex64::new(1.0, 0.0) - z) * multiplicity as f64;
        terms.push(TraceTerm {
            class: class.class.clone(),
            root_numerator: b,
            root_denominator: o,
            multiplicity,
        });
    }
    Ok(EichlerTrace {
        element: tau.clone(),
        q,
        value,
        delta_root,
        terms,
    })
}

/// An irreducible representation through its dimension and, per class, the
/// multiplicities of the eigenvalues `exp(2 pi i alpha / o)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IrrepClassData {
    pub label: String,
    pub dim: u64,
    pub trivial: bool,
    /// Set when the representation is a known character of the cover group.
    pub character: Option<CharRef>,
    pub eigenvalue_counts: Vec<(ClassRef, Vec<u64>)>,
}

impl IrrepClassData {
    pub fn from_character(cover: &CoverSpec, chi: &CharRef) -> Result<Self> {
        let eigenvalue_counts = cover
            .branch_classes()
            .iter()
            .map(|c| {
                let u = cover.u_value(chi, &c.class)?;
                let mut row = vec![0; c.order as usize];
                row[u as usize] = 1;
                Ok((c.class.clone(), row))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            label: chi.to_string(),
            dim: 1,
            trivial: cover.is_trivial_character(chi)?,
            character: Some(chi.clone()),
            eigenvalue_counts,
        })
    }

    /// Eigenvalue rows aligned with the branch classes.
    pub fn rows_for(&self, cover: &CoverSpec, classes: &[BranchClass]) -> Result<Vec<Vec<u64>>> {
        for (class, row) in &self.eigenvalue_counts {
            let o = cover.class_order(class)?;
            if row.len() as u64 != o {
                return Err(Error::NTableMismatch(format!(
                    "{}: class {class} has {} entries for order {o}",
                    self.label,
                    row.len()
                )));
            }
            if row.iter().sum::<u64>() != self.dim {
                return Err(Error::NTableMismatch(format!(
                    "{}: class {class} entries do not sum to {}",
                    self.label, self.dim
                )));
            }
        }
        classes
            .iter()
            .map(|c| {
                self.eigenvalue_counts
                    .iter()
                    .find(|(k, _)| k == &c.class)
                    .map(|(_, row)| row.clone())
                    .ok_or_else(|| Error::NTableMismatch(format!("{}: class {} missing", self.label, c.class)))
            })
            .collect()
    }

    fn matches_character(&self, cover: &CoverSpec, chi: &CharRef) -> Result<bool> {
        if let Some(own) = &self.character {
            return Ok(own == chi);
        }
        if cover.is_trivial_character(chi)? {
            return Ok(self.trivial);
        }
        if self.dim != 1 || self.trivial {
            return Ok(false);
        }
        let classes = cover.branch_classes();
        let rows = self.rows_for(cover, &classes)?;
        for (c, row) in classes.iter().zip(&rows) {
            if row[cover.u_value(chi, &c.class)? as usize] != 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Multiplicity of an irreducible representation in
/// `Omega^q(1/f^*(Gamma))`.
pub fn cw_multiplicity(cover: &CoverSpec, rho: &IrrepClassData, q: i64, gamma_degree: u64) -> Result<u64> {
    let info = delta_info(cover, q, gamma_degree)?;
    let classes = cover.branch_classes();
    let rows = rho.rows_for(cover, &classes)?;
    let d = rho.dim as i64;
    let mut value = rat(d * ((2 * q - 1) * (cover.base_genus() as i64 - 1) + gamma_degree as i64), 1);
    for (c, row) in classes.iter().zip(&rows) {
        for (alpha, &count) in row.iter().enumerate() {
            value += class_term(c.order, alpha as u64, q) * (c.count() * count) as i64;
        }
    }
    if let Some(chi) = &info.character {
        if rho.matches_character(cover, chi)? {
            value += 1;
        }
    }
    let m = to_integer(value).map_err(Error::NonIntegralDimension)?;
    u64::try_from(m).map_err(|_| Error::NTableMismatch(format!("{}: negative multiplicity {m}", rho.label)))
}
