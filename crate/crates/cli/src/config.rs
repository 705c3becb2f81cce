//! The JSON configuration document and its conversion to model objects.

use std::collections::BTreeMap;

use galois_cover::arith::{parse_rational, Rational};
use galois_cover::cover::{BranchLabel, BranchPoint, ClassRef, ComplexRational, CoverSpec, GroupData};
use galois_cover::equations::{Equation, EquationSystem, Factor, FactoredRational, Place};
use galois_cover::group::{ClassTable, ConjugacyClass, GroupSpec, SuppliedCharacter};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Equations,
    BranchData,
}

/// A rational written as an integer or as a string `"a/b"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalDoc {
    Int(i64),
    Text(String),
}

impl RationalDoc {
    fn parse(&self) -> Result<Rational, CliError> {
        match self {
            RationalDoc::Int(n) => Ok(Rational::from_integer(*n)),
            RationalDoc::Text(s) => parse_rational(s).map_err(CliError::Schema),
        }
    }

    fn from_rational(x: &Rational) -> Self {
        if x.is_integer() {
            RationalDoc::Int(x.to_integer())
        } else {
            RationalDoc::Text(format!("{}/{}", x.numer(), x.denom()))
        }
    }
}

fn coordinate(pair: &[RationalDoc; 2]) -> Result<ComplexRational, CliError> {
    Ok(ComplexRational::new(pair[0].parse()?, pair[1].parse()?))
}

fn coordinate_doc(z: &ComplexRational) -> [RationalDoc; 2] {
    [RationalDoc::from_rational(&z.re), RationalDoc::from_rational(&z.im)]
}

/// A point of the line: `[re, im]` or `"inf"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointDoc {
    Coordinate([RationalDoc; 2]),
    Named(String),
}

/// A branch label: `[re, im]` on the line, or a free name on a base of
/// positive genus.
pub type LabelDoc = PointDoc;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorDoc {
    pub point: PointDoc,
    pub exp: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquationDoc {
    pub m: u64,
    pub factors: Vec<FactorDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassDoc {
    pub id: String,
    pub order: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharacterDoc {
    pub name: String,
    /// `u` value on each listed class, in class order.
    pub u: Vec<u64>,
}

/// Either `cyclic_orders`, or a class table `{order, classes, characters}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cyclic_orders: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub classes: Vec<ClassDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub characters: Vec<CharacterDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchPointDoc {
    pub label: LabelDoc,
    /// Exponent vector of the class in Abelian mode.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psi: Option<Vec<i64>>,
    /// Class id in class-table mode.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDoc {
    pub mode: Mode,
    #[serde(default)]
    pub base_genus: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub equations: Vec<EquationDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub branch_points: Vec<BranchPointDoc>,
}

/// A parsed configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Model {
    Equations { system: EquationSystem, cover: CoverSpec },
    BranchData(CoverSpec),
}

impl Model {
    pub fn cover(&self) -> &CoverSpec {
        match self {
            Model::Equations { cover, .. } => cover,
            Model::BranchData(cover) => cover,
        }
    }
}

/// Deserializes a document, reporting the failing field path and position.
pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        CliError::Parse { path, message: e.into_inner().to_string() }
    })
}

pub fn parse_config(text: &str) -> Result<Model, CliError> {
    let doc: ConfigDoc = from_json(text)?;
    doc.to_model()
}

fn is_infinity(name: &str) -> bool {
    matches!(name.trim().to_ascii_lowercase().as_str(), "inf" | "infinity" | "∞")
}

impl ConfigDoc {
    pub fn to_model(&self) -> Result<Model, CliError> {
        match self.mode {
            Mode::Equations => self.equations_model(),
            Mode::BranchData => Ok(Model::BranchData(self.branch_model()?)),
        }
    }

    fn equations_model(&self) -> Result<Model, CliError> {
        if self.base_genus != 0 {
            return Err(CliError::Schema("equations mode describes covers of the line; base_genus must be 0".into()));
        }
        if !self.branch_points.is_empty() {
            return Err(CliError::Schema("branch_points is not used in equations mode".into()));
        }
        if self.equations.is_empty() {
            return Err(CliError::Schema("equations mode needs at least one equation".into()));
        }
        let mut equations = Vec::new();
        for eq in &self.equations {
            let factors = eq
                .factors
                .iter()
                .map(|f| {
                    let place = match &f.point {
                        PointDoc::Coordinate(pair) => Place::Finite(coordinate(pair)?),
                        PointDoc::Named(name) if is_infinity(name) => Place::Infinity,
                        PointDoc::Named(name) => {
                            return Err(CliError::Schema(format!("factor point {name:?} is neither [re, im] nor \"inf\"")))
                        }
                    };
                    Ok(Factor { place, exponent: f.exp })
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            equations.push(Equation { degree: eq.m, function: FactoredRational::new(factors)? });
        }
        let system = EquationSystem::new(equations)?;
        if let Some(group) = &self.group {
            let expected = system.group();
            if group.cyclic_orders.as_deref() != Some(expected.cyclic_orders()) || group.order.is_some() {
                return Err(CliError::Schema(format!(
                    "group does not match the equation degrees {:?}",
                    expected.cyclic_orders()
                )));
            }
        }
        let cover = system.build_cover()?;
        Ok(Model::Equations { system, cover })
    }

    fn branch_model(&self) -> Result<CoverSpec, CliError> {
        if !self.equations.is_empty() {
            return Err(CliError::Schema("equations is not used in branch-data mode".into()));
        }
        let group = self.group.as_ref().ok_or_else(|| CliError::Schema("branch-data mode needs a group".into()))?;
        let data = match (&group.cyclic_orders, group.order) {
            (Some(orders), None) if group.classes.is_empty() && group.characters.is_empty() => {
                GroupData::Abelian(GroupSpec::new(orders.clone())?)
            }
            (None, Some(order)) => {
                let classes = group
                    .classes
                    .iter()
                    .map(|c| ConjugacyClass { id: c.id.clone(), order: c.order })
                    .collect();
                let characters = group
                    .characters
                    .iter()
                    .map(|c| SuppliedCharacter { name: c.name.clone(), values: c.u.clone() })
                    .collect();
                GroupData::Generic(ClassTable::new(order, classes, characters)?)
            }
            _ => {
                return Err(CliError::Schema(
                    "group needs either cyclic_orders, or order with classes and characters".into(),
                ))
            }
        };
        let points = self
            .branch_points
            .iter()
            .map(|bp| {
                let label = match &bp.label {
                    PointDoc::Coordinate(pair) => BranchLabel::Point(coordinate(pair)?),
                    PointDoc::Named(name) => BranchLabel::Name(name.clone()),
                };
                let class = match (&data, &bp.psi, &bp.class) {
                    (GroupData::Abelian(g), Some(psi), None) => ClassRef::Element(g.element_mod(psi)?),
                    (GroupData::Generic(_), None, Some(id)) => ClassRef::Named(id.clone()),
                    (GroupData::Abelian(_), _, _) => {
                        return Err(CliError::Schema(format!("branch point {label} needs psi (and no class)")))
                    }
                    (GroupData::Generic(_), _, _) => {
                        return Err(CliError::Schema(format!("branch point {label} needs class (and no psi)")))
                    }
                };
                Ok(BranchPoint { label, class })
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(CoverSpec::new(self.base_genus, data, points)?)
    }
}

fn label_doc(label: &BranchLabel) -> LabelDoc {
    match label {
        BranchLabel::Point(z) => PointDoc::Coordinate(coordinate_doc(z)),
        BranchLabel::Name(s) => PointDoc::Named(s.clone()),
    }
}

/// Writes a model back as a document.
pub fn to_config(model: &Model) -> ConfigDoc {
    match model {
        Model::Equations { system, .. } => ConfigDoc {
            mode: Mode::Equations,
            base_genus: 0,
            group: None,
            equations: system
                .equations()
                .iter()
                .map(|eq| EquationDoc {
                    m: eq.degree,
                    factors: eq
                        .function
                        .factors()
                        .iter()
                        .map(|f| FactorDoc {
                            point: match &f.place {
                                Place::Finite(z) => PointDoc::Coordinate(coordinate_doc(z)),
                                Place::Infinity => PointDoc::Named("inf".into()),
                            },
                            exp: f.exponent,
                        })
                        .collect(),
                })
                .collect(),
            branch_points: Vec::new(),
        },
        Model::BranchData(cover) => {
            let group = match cover.group() {
                GroupData::Abelian(g) => GroupDoc { cyclic_orders: Some(g.cyclic_orders().to_vec()), ..Default::default() },
                GroupData::Generic(t) => GroupDoc {
                    cyclic_orders: None,
                    order: Some(t.group_order()),
                    classes: t.classes().iter().map(|c| ClassDoc { id: c.id.clone(), order: c.order }).collect(),
                    characters: t
                        .characters()
                        .iter()
                        .map(|c| CharacterDoc { name: c.name.clone(), u: c.values.clone() })
                        .collect(),
                },
            };
            ConfigDoc {
                mode: Mode::BranchData,
                base_genus: cover.base_genus(),
                group: Some(group),
                equations: Vec::new(),
                branch_points: cover
                    .branch_points()
                    .iter()
                    .map(|bp| match &bp.class {
                        ClassRef::Element(x) => BranchPointDoc {
                            label: label_doc(&bp.label),
                            psi: Some(x.exponents().iter().map(|&a| a as i64).collect()),
                            class: None,
                        },
                        ClassRef::Named(id) => BranchPointDoc { label: label_doc(&bp.label), psi: None, class: Some(id.clone()) },
                    })
                    .collect(),
            }
        }
    }
}

/// One irreducible representation in an irrep file. Eigenvalue rows are
/// keyed by class id, or by the element written `"a,b"` in Abelian mode.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IrrepDoc {
    pub label: String,
    pub dim: u64,
    #[serde(default)]
    pub trivial: bool,
    pub eigenvalues: BTreeMap<String, Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field_degree: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schur_index: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IrrepFile {
    pub irreps: Vec<IrrepDoc>,
}

pub fn parse_vector(text: &str) -> Result<Vec<i64>, CliError> {
    text.trim()
        .trim_start_matches('(')
        .trim_end_matches(')')
        .split(',')
        .map(|s| s.trim().parse::<i64>().map_err(|_| CliError::Schema(format!("not an integer vector: {text:?}"))))
        .collect()
}

/// Resolves an irrep-file class key against the cover's group.
pub fn class_key(cover: &CoverSpec, key: &str) -> Result<ClassRef, CliError> {
    match cover.group() {
        GroupData::Generic(t) => {
            t.class_index(key)?;
            Ok(ClassRef::Named(key.to_string()))
        }
        GroupData::Abelian(g) => Ok(ClassRef::Element(g.element_mod(&parse_vector(key)?)?)),
    }
}
