//! Normalized invariant divisors on the cover and the dimensions of their
//! character-isotypic function and differential spaces.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::cover::{BranchClass, BranchLabel, CharProfile, CharRef, ClassRef, ComplexRational, CoverSpec};
use crate::error::{Error, Result};

/// An invariant divisor in normalized form: each branch point sits in a
/// bucket `i` (exponent `o - 1 - i` on its fiber), `p` is the exponent on the
/// fiber over the distinguished point, and `base_part` is a divisor on the
/// base carried symbolically when the base has positive genus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantDivisor<'a> {
    cover: &'a CoverSpec,
    buckets: Vec<u64>,
    p: i64,
    base_part: Vec<(String, i64)>,
}

impl Serialize for InvariantDivisor<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("InvariantDivisor", 4)?;
        st.serialize_field("buckets", &self.buckets)?;
        st.serialize_field("exponents", &self.exponents())?;
        st.serialize_field("p", &self.p)?;
        st.serialize_field("base_part", &self.base_part)?;
        st.end()
    }
}

/// Raw invariant divisor: exponents on every point of each fiber.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawDivisor {
    /// One list per branch point, over its `n / o` fiber points (or empty).
    pub branch: Vec<Vec<i64>>,
    /// Exponents on the `n` points over the distinguished point (or empty).
    pub nu: Vec<i64>,
    /// Unbranched fibers over finite points of the line.
    pub unramified: Vec<(ComplexRational, Vec<i64>)>,
}

impl RawDivisor {
    /// Divisor with one constant exponent per fiber.
    pub fn uniform(cover: &CoverSpec, branch: &[i64], nu: i64) -> Self {
        let n = cover.group_order() as usize;
        Self {
            branch: cover
                .branch_points()
                .iter()
                .zip(branch)
                .map(|(bp, &e)| {
                    let o = cover.class_order(&bp.class).expect("valid cover") as usize;
                    vec![e; n / o]
                })
                .collect(),
            nu: vec![nu; n],
            unramified: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Shift {
    pub point: BranchLabel,
    pub power: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HChiDivisor {
    pub character: CharRef,
    pub branch: Vec<u64>,
    pub infinity: i64,
}

impl HChiDivisor {
    pub fn degree(&self, cover: &CoverSpec) -> i64 {
        let n = cover.group_order() as i64;
        let finite: i64 = cover
            .branch_points()
            .iter()
            .zip(&self.branch)
            .map(|(bp, &u)| n / cover.class_order(&bp.class).expect("valid cover") as i64 * u as i64)
            .sum();
        finite + n * self.infinity
    }
}

/// The function space `L(1/Delta)_chi` on the line: `h_chi` times
/// polynomials of degree at most `degree_bound`, over the product of
/// `z - lambda` for the listed points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FunctionBasis {
    pub character: CharRef,
    pub degree_bound: i64,
    pub denominator: Vec<BranchLabel>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum BaseSymbol {
    Branch(BranchLabel),
    /// A point of the base divisor of the input.
    Point(String),
    /// The divisor attached to a character by the normalization of its
    /// eigenfunction; no effective construction is available.
    CharacterDivisor(CharRef),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymbolicTerm {
    pub symbol: BaseSymbol,
    pub exponent: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SpaceKind {
    /// Dimension is `r(1/D)`.
    Functions,
    /// Dimension is `i(D)`.
    Differentials,
}

/// A divisor `D` on the base whose `r(1/D)` or `i(D)` equals the
/// isotypic dimension on the cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReducedBaseDivisor {
    pub kind: SpaceKind,
    pub terms: Vec<SymbolicTerm>,
    /// Numeric part of the exponent of the distinguished point.
    pub nu_exponent: i64,
    /// The exponent of the distinguished point also contains these
    /// multiples of degrees of symbolic divisors.
    pub nu_exponent_degrees: Vec<SymbolicTerm>,
}

impl ReducedBaseDivisor {
    fn is_symbolic(&self) -> bool {
        self.terms
            .iter()
            .chain(&self.nu_exponent_degrees)
            .any(|t| matches!(t.symbol, BaseSymbol::CharacterDivisor(_)))
    }

    /// Degree, unless an unknown divisor is involved.
    pub fn degree(&self) -> Option<i64> {
        if self.is_symbolic() {
            return None;
        }
        Some(self.nu_exponent + self.terms.iter().map(|t| t.exponent).sum::<i64>())
    }

    /// The dimension when the base is the line, where it only depends on
    /// the degree.
    pub fn dimension_on_line(&self) -> Option<u64> {
        let d = self.degree()?;
        Some(match self.kind {
            SpaceKind::Functions => (d + 1).max(0) as u64,
            SpaceKind::Differentials => (-d - 1).max(0) as u64,
        })
    }
}

fn check_fiber(label: &BranchLabel, exps: &[i64], size: usize) -> Result<i64> {
    match exps {
        [] => Ok(0),
        [first, rest @ ..] => {
            if exps.len() != size {
                return Err(Error::NonInvariantInput(format!(
                    "fiber over {label} has {} entries, expected {size}",
                    exps.len()
                )));
            }
            if rest.iter().any(|e| e != first) {
                return Err(Error::NonInvariantInput(format!("exponents differ over {label}")));
            }
            Ok(*first)
        }
    }
}

impl<'a> InvariantDivisor<'a> {
    pub fn new(cover: &'a CoverSpec, buckets: Vec<u64>, p: i64, base_part: Vec<(String, i64)>) -> Result<Self> {
        if buckets.len() != cover.branch_points().len() {
            return Err(Error::InvalidDivisor(format!(
                "{} buckets for {} branch points",
                buckets.len(),
                cover.branch_points().len()
            )));
        }
        for (bp, &i) in cover.branch_points().iter().zip(&buckets) {
            let o = cover.class_order(&bp.class)?;
            if i >= o {
                return Err(Error::InvalidDivisor(format!(
                    "bucket {i} at {} is not below {o}",
                    bp.label
                )));
            }
        }
        if cover.base_genus() == 0 && !base_part.is_empty() {
            return Err(Error::InvalidDivisor("base part must be empty on the line".into()));
        }
        Ok(Self { cover, buckets, p, base_part })
    }

    /// Divisor with the given normalized exponents, each in `[0, o)`.
    pub fn from_exponents(cover: &'a CoverSpec, exponents: &[u64], p: i64) -> Result<Self> {
        let buckets = cover
            .branch_points()
            .iter()
            .zip(exponents)
            .map(|(bp, &e)| {
                let o = cover.class_order(&bp.class)?;
                if e >= o {
                    return Err(Error::InvalidDivisor(format!("exponent {e} at {} is not below {o}", bp.label)));
                }
                Ok(o - 1 - e)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(cover, buckets, p, Vec::new())
    }

    pub fn trivial(cover: &'a CoverSpec) -> Self {
        let buckets = cover
            .branch_points()
            .iter()
            .map(|bp| cover.class_order(&bp.class).expect("valid cover") - 1)
            .collect();
        Self { cover, buckets, p: 0, base_part: Vec::new() }
    }

    /// Unchecked constructor for enumerators that produce valid buckets.
    pub(crate) fn from_parts(cover: &'a CoverSpec, buckets: Vec<u64>, p: i64) -> Self {
        Self { cover, buckets, p, base_part: Vec::new() }
    }

    pub fn cover(&self) -> &'a CoverSpec {
        self.cover
    }

    pub fn buckets(&self) -> &[u64] {
        &self.buckets
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn base_part(&self) -> &[(String, i64)] {
        &self.base_part
    }

    fn orders(&self) -> Vec<u64> {
        self.cover
            .branch_points()
            .iter()
            .map(|bp| self.cover.class_order(&bp.class).expect("valid cover"))
            .collect()
    }

    /// Exponent of the divisor on each branch fiber.
    pub fn exponents(&self) -> Vec<u64> {
        self.orders().iter().zip(&self.buckets).map(|(o, i)| o - 1 - i).collect()
    }

    pub fn degree(&self) -> i64 {
        let n = self.cover.group_order() as i64;
        let finite: i64 = self
            .orders()
            .iter()
            .zip(&self.buckets)
            .map(|(&o, &i)| n / o as i64 * (o - 1 - i) as i64)
            .sum();
        let base: i64 = self.base_part.iter().map(|(_, e)| e).sum();
        finite + n * self.p + n * base
    }

    pub fn to_raw(&self) -> RawDivisor {
        RawDivisor::uniform(
            self.cover,
            &self.exponents().iter().map(|&e| e as i64).collect::<Vec<_>>(),
            self.p,
        )
    }

    /// Number of branch points in buckets below the `u` value of their class.
    fn count_below(&self, classes: &[BranchClass], u: &[u64]) -> i64 {
        classes
            .iter()
            .zip(u)
            .map(|(c, &uc)| c.points.iter().filter(|&&j| self.buckets[j] < uc).count() as i64)
            .sum()
    }

    pub fn a_set(&self, chi: &CharRef, class: &ClassRef) -> Result<Vec<usize>> {
        let u = self.cover.u_value(chi, class)?;
        Ok(self
            .cover
            .branch_points()
            .iter()
            .enumerate()
            .filter(|(j, bp)| &bp.class == class && self.buckets[*j] < u)
            .map(|(j, _)| j)
            .collect())
    }

    fn r_from_profile(&self, classes: &[BranchClass], profile: &CharProfile) -> Result<i64> {
        Ok(self.p + self.count_below(classes, &profile.u) - profile.t()?)
    }

    fn i_from_profile(&self, classes: &[BranchClass], profile: &CharProfile) -> Result<u64> {
        let d = profile.t_conjugate()? - self.count_below(classes, &profile.conjugate_u()) - self.p - 1;
        Ok(d.max(0) as u64)
    }

    pub fn r_chi(&self, chi: &CharRef) -> Result<u64> {
        self.cover.require_line_base()?;
        let classes = self.cover.branch_classes();
        let profile = self.cover.profile_on(chi, &classes)?;
        Ok((self.r_from_profile(&classes, &profile)? + 1).max(0) as u64)
    }

    pub fn basis_description(&self, chi: &CharRef) -> Result<FunctionBasis> {
        self.cover.require_line_base()?;
        let classes = self.cover.branch_classes();
        let profile = self.cover.profile_on(chi, &classes)?;
        let d = self.r_from_profile(&classes, &profile)?.max(-1);
        let mut denominator = Vec::new();
        for (c, &u) in classes.iter().zip(&profile.u) {
            for &j in &c.points {
                if self.buckets[j] < u {
                    denominator.push(self.cover.branch_points()[j].label.clone());
                }
            }
        }
        Ok(FunctionBasis { character: chi.clone(), degree_bound: d, denominator })
    }

    /// `r_total` with the class list and character profiles precomputed.
    pub(crate) fn r_total_from(&self, classes: &[BranchClass], profiles: &[CharProfile]) -> Result<u64> {
        let mut total = 0;
        for profile in profiles {
            total += (self.r_from_profile(classes, profile)? + 1).max(0) as u64;
        }
        Ok(total)
    }

    pub(crate) fn i_total_from(&self, classes: &[BranchClass], profiles: &[CharProfile]) -> Result<u64> {
        let mut total = 0;
        for profile in profiles {
            total += self.i_from_profile(classes, profile)?;
        }
        Ok(total)
    }

    pub fn r_total(&self) -> Result<u64> {
        self.cover.require_line_base()?;
        self.cover.abelian_group()?;
        self.r_total_from(&self.cover.branch_classes(), &self.cover.profiles()?)
    }

    pub fn i_chi(&self, chi: &CharRef) -> Result<u64> {
        self.cover.require_line_base()?;
        let classes = self.cover.branch_classes();
        let profile = self.cover.profile_on(chi, &classes)?;
        self.i_from_profile(&classes, &profile)
    }

    pub fn i_total(&self) -> Result<u64> {
        self.cover.require_line_base()?;
        self.cover.abelian_group()?;
        self.i_total_from(&self.cover.branch_classes(), &self.cover.profiles()?)
    }

    /// The base divisor whose `r` (for functions) or `i` (for differentials)
    /// equals the isotypic dimension for `chi`. The divisor attached to `chi`
    /// stays symbolic when the base has positive genus.
    pub fn reduced_base_divisor(&self, chi: &CharRef, kind: SpaceKind) -> Result<ReducedBaseDivisor> {
        let classes = self.cover.branch_classes();
        let profile = self.cover.profile_on(chi, &classes)?;
        let t = profile.t()?;
        let base_degree: i64 = self.base_part.iter().map(|(_, e)| e).sum();
        let symbolic = self.cover.base_genus() > 0 && !profile.trivial;
        let sign = match kind {
            SpaceKind::Functions => 1,
            SpaceKind::Differentials => -1,
        };
        let mut terms: Vec<SymbolicTerm> = self
            .base_part
            .iter()
            .map(|(pt, e)| SymbolicTerm { symbol: BaseSymbol::Point(pt.clone()), exponent: *e })
            .collect();
        let mut nu_exponent_degrees = Vec::new();
        if symbolic {
            terms.push(SymbolicTerm {
                symbol: BaseSymbol::CharacterDivisor(chi.clone()),
                exponent: sign,
            });
            nu_exponent_degrees.push(SymbolicTerm {
                symbol: BaseSymbol::CharacterDivisor(chi.clone()),
                exponent: -sign,
            });
        }
        let nu_exponent = match kind {
            SpaceKind::Functions => {
                for (c, &u) in classes.iter().zip(&profile.u) {
                    for &j in &c.points {
                        if self.buckets[j] < u {
                            terms.push(SymbolicTerm {
                                symbol: BaseSymbol::Branch(self.cover.branch_points()[j].label.clone()),
                                exponent: 1,
                            });
                        }
                    }
                }
                self.p - t - base_degree
            }
            SpaceKind::Differentials => {
                let ubar = profile.conjugate_u();
                for ((c, &u), &ub) in classes.iter().zip(&profile.u).zip(&ubar) {
                    if u == 0 {
                        continue;
                    }
                    for &j in &c.points {
                        if self.buckets[j] >= ub {
                            terms.push(SymbolicTerm {
                                symbol: BaseSymbol::Branch(self.cover.branch_points()[j].label.clone()),
                                exponent: -1,
                            });
                        }
                    }
                }
                self.p + t - base_degree
            }
        };
        Ok(ReducedBaseDivisor { kind, terms, nu_exponent, nu_exponent_degrees })
    }
}

/// Brings an invariant divisor on a cover of the line to normalized form
/// by dividing by powers of `z - lambda`; the powers used are returned.
pub fn normalize<'a>(cover: &'a CoverSpec, raw: &RawDivisor) -> Result<(InvariantDivisor<'a>, Vec<Shift>)> {
    cover.require_line_base()?;
    let n = cover.group_order() as usize;
    let points = cover.branch_points();
    if !raw.branch.is_empty() && raw.branch.len() != points.len() {
        return Err(Error::InvalidDivisor(format!(
            "{} branch fibers for {} branch points",
            raw.branch.len(),
            points.len()
        )));
    }
    let nu_label = BranchLabel::Name("infinity".into());
    let mut p = check_fiber(&nu_label, &raw.nu, n)?;
    let mut shifts = Vec::new();
    let mut buckets = Vec::with_capacity(points.len());
    for (j, bp) in points.iter().enumerate() {
        let o = cover.class_order(&bp.class)? as i64;
        let e = match raw.branch.get(j) {
            Some(exps) => check_fiber(&bp.label, exps, n / o as usize)?,
            None => 0,
        };
        let k = e.div_euclid(o);
        let r = e.rem_euclid(o);
        if k != 0 {
            shifts.push(Shift { point: bp.label.clone(), power: k });
        }
        p += k;
        buckets.push((o - 1 - r) as u64);
    }
    for (z, exps) in &raw.unramified {
        let label = BranchLabel::Point(z.clone());
        if points.iter().any(|bp| bp.label == label) {
            return Err(Error::InvalidDivisor(format!("{label} is a branch value")));
        }
        let e = check_fiber(&label, exps, n)?;
        if e != 0 {
            shifts.push(Shift { point: label, power: e });
        }
        p += e;
    }
    Ok((InvariantDivisor::from_parts(cover, buckets, p), shifts))
}

/// Divisor of the normalized eigenfunction of `chi` on a cover of the line.
pub fn h_chi_divisor(cover: &CoverSpec, chi: &CharRef) -> Result<HChiDivisor> {
    cover.require_line_base()?;
    let t = cover.t_chi(chi)?;
    let branch = cover
        .branch_points()
        .iter()
        .map(|bp| cover.u_value(chi, &bp.class))
        .collect::<Result<Vec<_>>>()?;
    Ok(HChiDivisor { character: chi.clone(), branch, infinity: -t })
}
