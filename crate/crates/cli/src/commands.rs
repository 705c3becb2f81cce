//! Report builders for each command.

use clap::ValueEnum;
use galois_cover::cover::{CharRef, CoverSpec, GroupData};
use galois_cover::differentials::{
    cw_multiplicity, delta_info, dim_omega_q_chi, eichler_trace, omega_divisor, raw_dim_omega, total_dim_omega,
    IrrepClassData,
};
use galois_cover::divisor::{h_chi_divisor, InvariantDivisor};
use galois_cover::enumerate::{count_by_cardinality, enumerate_degree_gm1, enumerate_nonspecial_integral, Family};
use galois_cover::error::ErrorFamily;
use galois_cover::group::GroupElement;
use galois_cover::jacobian::{analytic_multiplicity, decompose, rational_multiplicity, RationalIrrepData};
use serde_json::{json, Value};

use crate::config::{class_key, parse_vector, IrrepFile, Model};
use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Validate,
    Genus,
    Tchi,
    Hchi,
    Dims,
    Nonspecial,
    DegreeGm1,
    Omega,
    Traces,
    ChevalleyWeil,
    Jacobian,
    All,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Genus => "genus",
            Command::Tchi => "tchi",
            Command::Hchi => "hchi",
            Command::Dims => "dims",
            Command::Nonspecial => "nonspecial",
            Command::DegreeGm1 => "degree-gm1",
            Command::Omega => "omega",
            Command::Traces => "traces",
            Command::ChevalleyWeil => "chevalley-weil",
            Command::Jacobian => "jacobian",
            Command::All => "all",
        }
    }

    pub fn family(self) -> Option<Family> {
        match self {
            Command::Nonspecial => Some(Family::NonSpecialIntegral),
            Command::DegreeGm1 => Some(Family::DegreeGenusMinusOne),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Flags {
    pub q: i64,
    pub gamma_degree: u64,
    pub character: Option<String>,
    pub tau: Option<String>,
    pub irreps: Option<IrrepFile>,
    pub count_only: bool,
    pub cap: u128,
    pub buckets: Option<Vec<u64>>,
    pub p: i64,
}

impl Default for Flags {
    fn default() -> Self {
        Self {
            q: 1,
            gamma_degree: 0,
            character: None,
            tau: None,
            irreps: None,
            count_only: false,
            cap: galois_cover::enumerate::DEFAULT_CAP,
            buckets: None,
            p: 0,
        }
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn selected_characters(cover: &CoverSpec, flags: &Flags) -> Result<Vec<CharRef>, CliError> {
    let Some(text) = &flags.character else { return Ok(cover.characters()) };
    match cover.group() {
        GroupData::Abelian(g) => Ok(vec![CharRef::Abelian(g.character_of_monomial(&parse_vector(text)?)?)]),
        GroupData::Generic(t) => {
            t.character_index(text)?;
            Ok(vec![CharRef::Supplied(text.clone())])
        }
    }
}

fn selected_elements(cover: &CoverSpec, flags: &Flags) -> Result<Vec<GroupElement>, CliError> {
    let g = cover.abelian_group()?;
    match &flags.tau {
        Some(text) => Ok(vec![g.element_mod(&parse_vector(text)?)?]),
        None => Ok(g.elements().into_iter().skip(1).collect()),
    }
}

fn irreps(cover: &CoverSpec, file: &IrrepFile) -> Result<Vec<IrrepClassData>, CliError> {
    file.irreps
        .iter()
        .map(|doc| {
            let eigenvalue_counts = doc
                .eigenvalues
                .iter()
                .map(|(key, row)| Ok((class_key(cover, key)?, row.clone())))
                .collect::<Result<Vec<_>, CliError>>()?;
            Ok(IrrepClassData {
                label: doc.label.clone(),
                dim: doc.dim,
                trivial: doc.trivial,
                character: None,
                eigenvalue_counts,
            })
        })
        .collect()
}

fn character_irreps(cover: &CoverSpec, chars: &[CharRef]) -> Result<Vec<IrrepClassData>, CliError> {
    Ok(chars.iter().map(|chi| IrrepClassData::from_character(cover, chi)).collect::<Result<_, _>>()?)
}

/// Rounds away floating noise so that reports are stable.
fn clean(x: f64) -> f64 {
    let r = (x * 1e12).round() / 1e12;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

pub fn run_command(command: Command, model: &Model, flags: &Flags) -> Result<Value, CliError> {
    let cover = model.cover();
    let report = cover.validate()?;
    Ok(match command {
        Command::Validate => json!({
            "valid": true,
            "base_genus": cover.base_genus(),
            "group_order": cover.group_order(),
            "branch_points": cover.branch_points().len(),
            "genus": report.genus,
            "invariants": report.invariants,
        }),
        Command::Genus => json!({ "genus": report.genus }),
        Command::Tchi => tchi(cover, flags)?,
        Command::Hchi => {
            let rows = selected_characters(cover, flags)?
                .iter()
                .map(|chi| {
                    let d = h_chi_divisor(cover, chi)?;
                    Ok(json!({ "character": chi, "branch": d.branch, "infinity": d.infinity, "degree": d.degree(cover) }))
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            json!({ "branch_points": labels(cover), "divisors": rows })
        }
        Command::Dims => dims(cover, flags)?,
        Command::Nonspecial | Command::DegreeGm1 => {
            let family = command.family().expect("enumeration command");
            family_report(cover, family, flags)?
        }
        Command::Omega => omega(cover, flags)?,
        Command::Traces => {
            let traces = selected_elements(cover, flags)?
                .iter()
                .map(|tau| {
                    let t = eichler_trace(cover, tau, flags.q, flags.gamma_degree)?;
                    Ok(json!({
                        "element": t.element,
                        "re": clean(t.value.re),
                        "im": clean(t.value.im),
                        "delta_root": t.delta_root,
                        "terms": t.terms,
                    }))
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            json!({ "q": flags.q, "gamma_degree": flags.gamma_degree, "traces": traces })
        }
        Command::ChevalleyWeil => chevalley_weil(cover, flags)?,
        Command::Jacobian => jacobian(cover, flags)?,
        Command::All => all(model, flags)?,
    })
}

fn labels(cover: &CoverSpec) -> Vec<String> {
    cover.branch_points().iter().map(|bp| bp.label.to_string()).collect()
}

fn tchi(cover: &CoverSpec, flags: &Flags) -> Result<Value, CliError> {
    let classes = cover.branch_classes();
    let rows = selected_characters(cover, flags)?
        .iter()
        .map(|chi| {
            let p = cover.profile_on(chi, &classes)?;
            Ok(json!({ "character": chi, "t": p.t()?, "t_conjugate": p.t_conjugate()?, "u": p.u }))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let class_names: Vec<String> = classes.iter().map(|c| c.class.to_string()).collect();
    Ok(json!({ "classes": class_names, "characters": rows }))
}

fn dims(cover: &CoverSpec, flags: &Flags) -> Result<Value, CliError> {
    let d = match &flags.buckets {
        Some(b) => InvariantDivisor::new(cover, b.clone(), flags.p, Vec::new())?,
        None => {
            let mut d = InvariantDivisor::trivial(cover);
            if flags.p != 0 {
                d = InvariantDivisor::new(cover, d.buckets().to_vec(), flags.p, Vec::new())?;
            }
            d
        }
    };
    let genus = cover.genus()? as i64;
    let rows = selected_characters(cover, flags)?
        .iter()
        .map(|chi| Ok(json!({ "character": chi, "r": d.r_chi(chi)?, "i": d.i_chi(chi)? })))
        .collect::<Result<Vec<_>, CliError>>()?;
    let (r, i) = (d.r_total()?, d.i_total()?);
    Ok(json!({
        "divisor": d,
        "degree": d.degree(),
        "genus": genus,
        "r_total": r,
        "i_total": i,
        "riemann_roch": r as i64 - i as i64 == d.degree() + 1 - genus,
        "characters": rows,
    }))
}

fn family_name(family: Family) -> &'static str {
    match family {
        Family::NonSpecialIntegral => "non-special integral",
        Family::DegreeGenusMinusOne => "degree g-1",
    }
}

fn family_report(cover: &CoverSpec, family: Family, flags: &Flags) -> Result<Value, CliError> {
    let count = count_by_cardinality(cover, family)?;
    if flags.count_only {
        return Ok(json!({ "family": family_name(family), "count": count }));
    }
    let divisors = match family {
        Family::NonSpecialIntegral => enumerate_nonspecial_integral(cover, flags.cap)?,
        Family::DegreeGenusMinusOne => enumerate_degree_gm1(cover, flags.cap)?,
    };
    Ok(json!({
        "family": family_name(family),
        "branch_points": labels(cover),
        "count": count,
        "divisors": divisors,
    }))
}

fn omega(cover: &CoverSpec, flags: &Flags) -> Result<Value, CliError> {
    let (q, gamma) = (flags.q, flags.gamma_degree);
    let info = delta_info(cover, q, gamma)?;
    let on_line = cover.base_genus() == 0;
    let rows = selected_characters(cover, flags)?
        .iter()
        .map(|chi| {
            let mut row = json!({
                "character": chi,
                "raw": raw_dim_omega(cover, q, gamma, chi)?,
                "dim": dim_omega_q_chi(cover, q, gamma, chi)?,
            });
            if on_line {
                let w = omega_divisor(cover, chi, q)?;
                row["branch"] = to_value(&w.branch);
                row["infinity"] = json!(w.infinity);
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(json!({
        "q": q,
        "gamma_degree": gamma,
        "genus": cover.genus()?,
        "delta": info.delta,
        "delta_character": info.character,
        "total": total_dim_omega(cover, q, gamma)?,
        "characters": rows,
    }))
}

fn chevalley_weil(cover: &CoverSpec, flags: &Flags) -> Result<Value, CliError> {
    let list = match &flags.irreps {
        Some(file) => irreps(cover, file)?,
        None => character_irreps(cover, &selected_characters(cover, flags)?)?,
    };
    let (q, gamma) = (flags.q, flags.gamma_degree);
    let mut weighted = 0;
    let rows = list
        .iter()
        .map(|rho| {
            let m = cw_multiplicity(cover, rho, q, gamma)?;
            weighted += rho.dim * m;
            Ok(json!({ "label": rho.label, "dim": rho.dim, "multiplicity": m }))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(json!({
        "q": q,
        "gamma_degree": gamma,
        "total": total_dim_omega(cover, q, gamma)?,
        "weighted_sum": weighted,
        "irreps": rows,
    }))
}

fn jacobian(cover: &CoverSpec, flags: &Flags) -> Result<Value, CliError> {
    if flags.irreps.is_none() && cover.abelian_group().is_ok() {
        return Ok(to_value(&decompose(cover)?));
    }
    let docs = flags.irreps.as_ref().map(|f| f.irreps.clone()).unwrap_or_default();
    let list = match &flags.irreps {
        Some(file) => irreps(cover, file)?,
        None => character_irreps(cover, &cover.characters())?,
    };
    let rows = list
        .iter()
        .enumerate()
        .map(|(i, rho)| {
            let mut row = json!({
                "label": rho.label,
                "dim": rho.dim,
                "analytic": analytic_multiplicity(cover, rho)?,
                "rational": rational_multiplicity(cover, rho)?,
            });
            if let Some(k) = docs.get(i).and_then(|d| d.field_degree) {
                let w = RationalIrrepData {
                    label: rho.label.clone(),
                    dim: rho.dim,
                    field_degree: k,
                    schur_index: docs[i].schur_index.unwrap_or(1),
                    trivial: rho.trivial,
                    fixed_counts: rho.eigenvalue_counts.iter().map(|(c, row)| (c.clone(), row.first().copied().unwrap_or(0))).collect(),
                };
                row["dim_a"] = json!(w.dim_a(cover)?);
                row["dim_b"] = json!(w.dim_b(cover)?);
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(json!({ "genus": cover.genus()?, "irreps": rows }))
}

/// Runs the main reports; sections that do not apply to this cover record
/// the reason instead of failing the whole run.
fn all(model: &Model, flags: &Flags) -> Result<Value, CliError> {
    let counting = Flags { count_only: true, ..flags.clone() };
    let sections = [
        (Command::Validate, flags),
        (Command::Tchi, flags),
        (Command::Omega, flags),
        (Command::ChevalleyWeil, flags),
        (Command::Jacobian, flags),
        (Command::Nonspecial, &counting),
        (Command::DegreeGm1, &counting),
    ];
    let mut out = serde_json::Map::new();
    for (command, f) in sections {
        let value = match run_command(command, model, f) {
            Ok(v) => v,
            Err(CliError::Model(e)) if matches!(e.family(), ErrorFamily::Unsupported) => {
                json!({ "skipped": { "code": e.code(), "message": e.to_string() } })
            }
            Err(e) => return Err(e),
        };
        out.insert(command.name().to_string(), value);
    }
    Ok(Value::Object(out))
}
