//! Branch data of a Galois cover `X -> S`: genus, the `t` invariants of the
//! characters, validation, and quotient covers.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Signed;
use serde::{Serialize, Serializer};

use crate::arith::{rat, to_integer, Rational};
use crate::error::{Error, Result};
use crate::group::{Character, ClassTable, GroupElement, GroupSpec};

/// A point of the complex line with rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComplexRational {
    pub re: Rational,
    pub im: Rational,
}

impl ComplexRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: i64) -> Self {
        Self::new(rat(re, 1), rat(0, 1))
    }
}

fn fmt_rational(x: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if x.is_integer() {
        write!(f, "{}", x.numer())
    } else {
        write!(f, "{}/{}", x.numer(), x.denom())
    }
}

impl fmt::Display for ComplexRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_rational(&self.re, f)?;
        if *self.im.numer() != 0 {
            write!(f, "{}", if *self.im.numer() < 0 { "-" } else { "+" })?;
            fmt_rational(&self.im.abs(), f)?;
            write!(f, "i")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BranchLabel {
    Point(ComplexRational),
    Name(String),
}

impl fmt::Display for BranchLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BranchLabel::Point(z) => write!(f, "{z}"),
            BranchLabel::Name(s) => write!(f, "{s}"),
        }
    }
}

impl Serialize for BranchLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The class of a branch point: an element in Abelian mode, a class id in
/// generic mode.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassRef {
    Element(GroupElement),
    Named(String),
}

impl fmt::Display for ClassRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassRef::Element(x) => write!(f, "{x}"),
            ClassRef::Named(s) => write!(f, "{s}"),
        }
    }
}

impl Serialize for ClassRef {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A character of the cover group: any character in Abelian mode, a supplied
/// one-dimensional character (by name) in generic mode.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CharRef {
    Abelian(Character),
    Supplied(String),
}

impl From<Character> for CharRef {
    fn from(chi: Character) -> Self {
        CharRef::Abelian(chi)
    }
}

impl fmt::Display for CharRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharRef::Abelian(chi) => write!(f, "{chi}"),
            CharRef::Supplied(s) => write!(f, "{s}"),
        }
    }
}

impl Serialize for CharRef {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupData {
    Abelian(GroupSpec),
    Generic(ClassTable),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchPoint {
    pub label: BranchLabel,
    pub class: ClassRef,
}

/// Branch points sharing one class, with the derived count `r_C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchClass {
    pub class: ClassRef,
    pub order: u64,
    pub points: Vec<usize>,
}

impl BranchClass {
    pub fn count(&self) -> u64 {
        self.points.len() as u64
    }
}

/// The `u` values of one character on the branch classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharProfile {
    pub character: CharRef,
    pub trivial: bool,
    pub u: Vec<u64>,
    pub orders: Vec<u64>,
    pub counts: Vec<u64>,
}

impl CharProfile {
    pub fn t_rational(&self) -> Rational {
        self.u
            .iter()
            .zip(&self.orders)
            .zip(&self.counts)
            .map(|((&u, &o), &r)| rat((r * u) as i64, o as i64))
            .sum()
    }

    pub fn t(&self) -> Result<i64> {
        to_integer(self.t_rational()).map_err(|value| Error::NonIntegralInvariant {
            character: self.character.to_string(),
            value,
        })
    }

    /// `u` values of the complex conjugate character.
    pub fn conjugate_u(&self) -> Vec<u64> {
        self.u
            .iter()
            .zip(&self.orders)
            .map(|(&u, &o)| (o - u) % o)
            .collect()
    }

    pub fn t_conjugate(&self) -> Result<i64> {
        let t: Rational = self
            .conjugate_u()
            .iter()
            .zip(&self.orders)
            .zip(&self.counts)
            .map(|((&u, &o), &r)| rat((r * u) as i64, o as i64))
            .sum();
        to_integer(t).map_err(|value| Error::NonIntegralInvariant {
            character: format!("conj {}", self.character),
            value,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterInvariant {
    pub character: CharRef,
    pub t: i64,
    pub u: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub genus: u64,
    pub invariants: Vec<CharacterInvariant>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverSpec {
    base_genus: u64,
    group: GroupData,
    branch_points: Vec<BranchPoint>,
}

fn is_reserved_label(label: &BranchLabel) -> bool {
    matches!(label, BranchLabel::Name(s) if matches!(s.as_str(), "inf" | "infinity" | "∞" | "nu" | "ν"))
}

impl CoverSpec {
    /// Checks the structural invariants; arithmetic conditions are left to
    /// [`CoverSpec::validate`].
    pub fn new(base_genus: u64, group: GroupData, branch_points: Vec<BranchPoint>) -> Result<Self> {
        let mut labels = BTreeSet::new();
        for bp in &branch_points {
            if is_reserved_label(&bp.label) {
                return Err(Error::BranchedAtInfinity(bp.label.to_string()));
            }
            if base_genus == 0 && !matches!(bp.label, BranchLabel::Point(_)) {
                return Err(Error::InvalidCover(format!(
                    "label {} must be a coordinate when the base has genus 0",
                    bp.label
                )));
            }
            if !labels.insert(bp.label.clone()) {
                return Err(Error::DuplicateLabel(bp.label.to_string()));
            }
            match (&group, &bp.class) {
                (GroupData::Abelian(g), ClassRef::Element(x)) => {
                    g.element(x.exponents().to_vec())?;
                    if x.is_identity() {
                        return Err(Error::TrivialBranchClass(bp.label.to_string()));
                    }
                }
                (GroupData::Generic(t), ClassRef::Named(id)) => {
                    let c = &t.classes()[t.class_index(id)?];
                    if c.order == 1 {
                        return Err(Error::TrivialBranchClass(bp.label.to_string()));
                    }
                }
                (_, class) => {
                    return Err(Error::UnknownClass(format!(
                        "{class} does not match the group mode"
                    )))
                }
            }
        }
        Ok(Self {
            base_genus,
            group,
            branch_points,
        })
    }

    pub fn base_genus(&self) -> u64 {
        self.base_genus
    }

    pub fn group(&self) -> &GroupData {
        &self.group
    }

    pub fn branch_points(&self) -> &[BranchPoint] {
        &self.branch_points
    }

    pub fn abelian_group(&self) -> Result<&GroupSpec> {
        match &self.group {
            GroupData::Abelian(g) => Ok(g),
            GroupData::Generic(_) => Err(Error::NotAbelian),
        }
    }

    pub fn require_line_base(&self) -> Result<()> {
        if self.base_genus == 0 {
            Ok(())
        } else {
            Err(Error::UnsupportedBaseGenus(self.base_genus))
        }
    }

    pub fn group_order(&self) -> u64 {
        match &self.group {
            GroupData::Abelian(g) => g.order(),
            GroupData::Generic(t) => t.group_order(),
        }
    }

    pub fn class_order(&self, class: &ClassRef) -> Result<u64> {
        match (&self.group, class) {
            (GroupData::Abelian(g), ClassRef::Element(x)) => {
                g.element(x.exponents().to_vec())?;
                Ok(g.element_order(x))
            }
            (GroupData::Generic(t), ClassRef::Named(id)) => Ok(t.classes()[t.class_index(id)?].order),
            _ => Err(Error::UnknownClass(class.to_string())),
        }
    }

    /// Classes carrying branch points, each with its points, in a fixed
    /// order (lexicographic elements, or table order in generic mode).
    pub fn branch_classes(&self) -> Vec<BranchClass> {
        let mut classes: Vec<BranchClass> = Vec::new();
        for (j, bp) in self.branch_points.iter().enumerate() {
            match classes.iter_mut().find(|c| c.class == bp.class) {
                Some(c) => c.points.push(j),
                None => classes.push(BranchClass {
                    class: bp.class.clone(),
                    order: self.class_order(&bp.class).expect("checked at construction"),
                    points: vec![j],
                }),
            }
        }
        match &self.group {
            GroupData::Abelian(_) => classes.sort_by(|a, b| a.class.cmp(&b.class)),
            GroupData::Generic(t) => classes.sort_by_key(|c| match &c.class {
                ClassRef::Named(id) => t.class_index(id).unwrap_or(usize::MAX),
                ClassRef::Element(_) => usize::MAX,
            }),
        }
        classes
    }

    /// Index into [`CoverSpec::branch_classes`] for every branch point.
    pub fn class_of_point(&self, classes: &[BranchClass]) -> Vec<usize> {
        let mut out = vec![0; self.branch_points.len()];
        for (c, bc) in classes.iter().enumerate() {
            for &j in &bc.points {
                out[j] = c;
            }
        }
        out
    }

    pub fn characters(&self) -> Vec<CharRef> {
        match &self.group {
            GroupData::Abelian(g) => g.characters().into_iter().map(CharRef::Abelian).collect(),
            GroupData::Generic(t) => t
                .characters()
                .iter()
                .map(|c| CharRef::Supplied(c.name.clone()))
                .collect(),
        }
    }

    pub fn trivial_character(&self) -> CharRef {
        match &self.group {
            GroupData::Abelian(g) => CharRef::Abelian(g.trivial_character()),
            GroupData::Generic(t) => CharRef::Supplied(
                t.characters()
                    .iter()
                    .find(|c| c.is_trivial())
                    .expect("class tables always hold a trivial character")
                    .name
                    .clone(),
            ),
        }
    }

    pub fn u_value(&self, chi: &CharRef, class: &ClassRef) -> Result<u64> {
        match (&self.group, chi, class) {
            (GroupData::Abelian(g), CharRef::Abelian(k), ClassRef::Element(x)) => {
                g.character(k.exponents().to_vec())?;
                g.element(x.exponents().to_vec())?;
                Ok(g.char_u_value(k, x))
            }
            (GroupData::Generic(t), CharRef::Supplied(name), ClassRef::Named(id)) => {
                let c = t.class_index(id)?;
                Ok(t.characters()[t.character_index(name)?].values[c])
            }
            (_, CharRef::Abelian(_) | CharRef::Supplied(_), ClassRef::Element(_) | ClassRef::Named(_)) => {
                Err(Error::UnknownCharacter(format!("{chi} does not match the group mode")))
            }
        }
    }

    pub fn is_trivial_character(&self, chi: &CharRef) -> Result<bool> {
        match (&self.group, chi) {
            (GroupData::Abelian(g), CharRef::Abelian(k)) => {
                g.character(k.exponents().to_vec())?;
                Ok(k.is_trivial())
            }
            (GroupData::Generic(t), CharRef::Supplied(name)) => {
                Ok(t.characters()[t.character_index(name)?].is_trivial())
            }
            _ => Err(Error::UnknownCharacter(format!("{chi} does not match the group mode"))),
        }
    }

    pub fn profile(&self, chi: &CharRef) -> Result<CharProfile> {
        self.profile_on(chi, &self.branch_classes())
    }

    pub fn profile_on(&self, chi: &CharRef, classes: &[BranchClass]) -> Result<CharProfile> {
        let trivial = self.is_trivial_character(chi)?;
        let u = classes
            .iter()
            .map(|c| self.u_value(chi, &c.class))
            .collect::<Result<Vec<_>>>()?;
        Ok(CharProfile {
            character: chi.clone(),
            trivial,
            u,
            orders: classes.iter().map(|c| c.order).collect(),
            counts: classes.iter().map(BranchClass::count).collect(),
        })
    }

    pub fn profiles(&self) -> Result<Vec<CharProfile>> {
        let classes = self.branch_classes();
        self.characters()
            .iter()
            .map(|chi| self.profile_on(chi, &classes))
            .collect()
    }

    pub fn genus_rational(&self) -> Rational {
        let n = self.group_order() as i64;
        let mut g = rat(1 + n * (self.base_genus as i64 - 1), 1);
        for c in self.branch_classes() {
            let o = c.order as i64;
            g += rat(n * c.count() as i64 * (o - 1), 2 * o);
        }
        g
    }

    pub fn genus(&self) -> Result<u64> {
        let g = to_integer(self.genus_rational()).map_err(Error::NonIntegralGenus)?;
        u64::try_from(g).map_err(|_| Error::InvalidCover(format!("negative genus {g}")))
    }

    pub fn t_chi(&self, chi: &CharRef) -> Result<i64> {
        self.profile(chi)?.t()
    }

    /// Necessary conditions for the branch data to come from a connected
    /// cover: integral nonnegative `t` for every character, and positive `t`
    /// for nontrivial characters when the base is the line. Existence is not
    /// certified when the base has positive genus.
    pub fn validate(&self) -> Result<ValidationReport> {
        if let GroupData::Generic(t) = &self.group {
            if !self.branch_classes().iter().all(|c| t.group_order() % c.order == 0) {
                return Err(Error::InvalidCover("class order does not divide the group order".into()));
            }
        }
        let mut invariants = Vec::new();
        for p in self.profiles()? {
            let t = p.t()?;
            if self.base_genus == 0 && !p.trivial && t == 0 {
                return Err(Error::DegenerateCover(p.character.to_string()));
            }
            invariants.push(CharacterInvariant {
                character: p.character,
                t,
                u: p.u,
            });
        }
        Ok(ValidationReport {
            genus: self.genus()?,
            invariants,
        })
    }

    /// The intermediate cover `X/N -> S` for the subgroup generated by
    /// `generators`; branch points whose class dies in `G/N` are dropped.
    pub fn quotient_cover(&self, generators: &[GroupElement]) -> Result<CoverSpec> {
        let g = self.abelian_group()?;
        let map = g.quotient(generators)?;
        let branch_points = self
            .branch_points
            .iter()
            .filter_map(|bp| match &bp.class {
                ClassRef::Element(x) => {
                    let image = map.apply(x);
                    (!image.is_identity()).then(|| BranchPoint {
                        label: bp.label.clone(),
                        class: ClassRef::Element(image),
                    })
                }
                ClassRef::Named(_) => None,
            })
            .collect();
        CoverSpec::new(
            self.base_genus,
            GroupData::Abelian(map.target().clone()),
            branch_points,
        )
    }
}
