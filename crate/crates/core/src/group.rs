//! Finite Abelian groups as products of cyclic factors, their characters,
//! and a trusted class table for non-Abelian input.

use std::fmt;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::arith::{euler_phi, frac, lcm_all, Rational};
use crate::error::{Error, Result};

/// Element `prod tau_l^{a_l}` stored as its exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(Vec<u64>);

/// Character sending `tau_l` to `exp(2 pi i k_l / m_l)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character(Vec<u64>);

impl GroupElement {
    pub fn exponents(&self) -> &[u64] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }
}

impl Character {
    pub fn exponents(&self) -> &[u64] {
        &self.0
    }

    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|&k| k == 0)
    }
}

fn fmt_vector(v: &[u64], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "(")?;
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, ")")
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_vector(&self.0, f)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_vector(&self.0, f)
    }
}

// Both serialize as their display form, matching class and character labels.
impl Serialize for GroupElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Serialize for Character {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupSpec {
    cyclic_orders: Vec<u64>,
}

/// One orbit of characters under `chi -> chi^a` with `a` prime to the order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterOrbit {
    pub members: Vec<Character>,
    pub order: u64,
    pub field_degree: u64,
}

impl CharacterOrbit {
    pub fn representative(&self) -> &Character {
        &self.members[0]
    }
}

impl GroupSpec {
    pub fn new(cyclic_orders: Vec<u64>) -> Result<Self> {
        if cyclic_orders.contains(&0) {
            return Err(Error::InvalidGroup("cyclic orders must be positive".into()));
        }
        let mut n: u64 = 1;
        for &m in &cyclic_orders {
            n = n
                .checked_mul(m)
                .ok_or_else(|| Error::InvalidGroup("group order overflows".into()))?;
        }
        Ok(Self { cyclic_orders })
    }

    pub fn cyclic(m: u64) -> Result<Self> {
        Self::new(vec![m])
    }

    pub fn cyclic_orders(&self) -> &[u64] {
        &self.cyclic_orders
    }

    pub fn rank(&self) -> usize {
        self.cyclic_orders.len()
    }

    pub fn order(&self) -> u64 {
        self.cyclic_orders.iter().product()
    }

    /// Least common multiple of the factor orders.
    pub fn exponent(&self) -> u64 {
        lcm_all(self.cyclic_orders.iter().copied())
    }

    pub fn is_cyclic(&self) -> bool {
        self.exponent() == self.order()
    }

    fn check(&self, v: &[u64]) -> Result<()> {
        if v.len() != self.rank() {
            return Err(Error::MalformedVector(format!(
                "expected {} entries, got {}",
                self.rank(),
                v.len()
            )));
        }
        for (l, (&a, &m)) in v.iter().zip(&self.cyclic_orders).enumerate() {
            if a >= m {
                return Err(Error::MalformedVector(format!(
                    "entry {l} is {a}, not below {m}"
                )));
            }
        }
        Ok(())
    }

    pub fn element(&self, exponents: Vec<u64>) -> Result<GroupElement> {
        self.check(&exponents)?;
        Ok(GroupElement(exponents))
    }

    pub fn character(&self, exponents: Vec<u64>) -> Result<Character> {
        self.check(&exponents)?;
        Ok(Character(exponents))
    }

    /// Reduces arbitrary integers into an element.
    pub fn element_mod(&self, exponents: &[i64]) -> Result<GroupElement> {
        Ok(GroupElement(self.reduce(exponents)?))
    }

    fn reduce(&self, v: &[i64]) -> Result<Vec<u64>> {
        if v.len() != self.rank() {
            return Err(Error::MalformedVector(format!(
                "expected {} entries, got {}",
                self.rank(),
                v.len()
            )));
        }
        Ok(v.iter()
            .zip(&self.cyclic_orders)
            .map(|(&a, &m)| a.rem_euclid(m as i64) as u64)
            .collect())
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.rank()])
    }

    pub fn trivial_character(&self) -> Character {
        Character(vec![0; self.rank()])
    }

    /// All index vectors in lexicographic order.
    fn vectors(&self) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::with_capacity(self.rank())];
        for &m in &self.cyclic_orders {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..m).map(move |a| {
                        let mut v = prefix.clone();
                        v.push(a);
                        v
                    })
                })
                .collect();
        }
        out
    }

    pub fn elements(&self) -> Vec<GroupElement> {
        self.vectors().into_iter().map(GroupElement).collect()
    }

    pub fn characters(&self) -> Vec<Character> {
        self.vectors().into_iter().map(Character).collect()
    }

    pub fn compose(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        GroupElement(
            x.0.iter()
                .zip(&y.0)
                .zip(&self.cyclic_orders)
                .map(|((a, b), m)| (a + b) % m)
                .collect(),
        )
    }

    pub fn inverse(&self, x: &GroupElement) -> GroupElement {
        GroupElement(
            x.0.iter()
                .zip(&self.cyclic_orders)
                .map(|(a, m)| (m - a) % m)
                .collect(),
        )
    }

    pub fn power(&self, x: &GroupElement, k: u64) -> GroupElement {
        GroupElement(
            x.0.iter()
                .zip(&self.cyclic_orders)
                .map(|(&a, &m)| ((a as u128 * k as u128) % m as u128) as u64)
                .collect(),
        )
    }

    pub fn conjugate(&self, chi: &Character) -> Character {
        Character(
            chi.0
                .iter()
                .zip(&self.cyclic_orders)
                .map(|(k, m)| (m - k) % m)
                .collect(),
        )
    }

    pub fn character_power(&self, chi: &Character, a: u64) -> Character {
        Character(self.power(&GroupElement(chi.0.clone()), a).0)
    }

    pub fn element_order(&self, x: &GroupElement) -> u64 {
        lcm_all(
            x.0.iter()
                .zip(&self.cyclic_orders)
                .map(|(&a, &m)| m / m.gcd(&a)),
        )
    }

    /// Order of a character; the dual group has the same shape.
    pub fn character_order(&self, chi: &Character) -> u64 {
        self.element_order(&GroupElement(chi.0.clone()))
    }

    /// `frac(sum_l k_l a_l / m_l)`, so that `chi(x) = exp(2 pi i * value)`.
    pub fn pairing(&self, chi: &Character, x: &GroupElement) -> Rational {
        let s = chi
            .0
            .iter()
            .zip(&x.0)
            .zip(&self.cyclic_orders)
            .map(|((&k, &a), &m)| Rational::new(((k * a) % m) as i64, m as i64))
            .sum::<Rational>();
        frac(s)
    }

    /// The `u` in `[0, o(x))` with `chi(x) = zeta_{o(x)}^u`.
    pub fn char_u_value(&self, chi: &Character, x: &GroupElement) -> u64 {
        let o = self.element_order(x) as i64;
        let u = self.pairing(chi, x) * o;
        debug_assert!(u.is_integer());
        u.to_integer() as u64
    }

    /// Character by which the group acts on the monomial `w^E`.
    pub fn character_of_monomial(&self, exponents: &[i64]) -> Result<Character> {
        Ok(Character(self.reduce(exponents)?))
    }

    pub fn rational_character_orbits(&self) -> Vec<CharacterOrbit> {
        let mut seen = std::collections::BTreeSet::new();
        let mut orbits = Vec::new();
        for chi in self.characters() {
            if seen.contains(&chi) {
                continue;
            }
            let e = self.character_order(&chi);
            let mut members: Vec<Character> = (1..=e)
                .filter(|a| a.gcd(&e) == 1)
                .map(|a| self.character_power(&chi, a))
                .collect();
            members.sort();
            members.dedup();
            for m in &members {
                seen.insert(m.clone());
            }
            orbits.push(CharacterOrbit {
                members,
                order: e,
                field_degree: euler_phi(e),
            });
        }
        orbits
    }
}

/// Projection onto `G/N`, with the quotient written as a product of cyclic
/// groups whose orders increase by divisibility.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientMap {
    target: GroupSpec,
    coefficients: Vec<Vec<i128>>,
}

impl QuotientMap {
    pub fn target(&self) -> &GroupSpec {
        &self.target
    }

    pub fn apply(&self, x: &GroupElement) -> GroupElement {
        GroupElement(
            self.coefficients
                .iter()
                .zip(self.target.cyclic_orders())
                .map(|(col, &d)| {
                    let s: i128 = col.iter().zip(&x.0).map(|(c, &a)| c * a as i128).sum();
                    s.rem_euclid(d as i128) as u64
                })
                .collect(),
        )
    }
}

impl GroupSpec {
    pub fn quotient(&self, generators: &[GroupElement]) -> Result<QuotientMap> {
        for x in generators {
            self.check(&x.0)?;
        }
        let q = self.rank();
        let mut rows: Vec<Vec<i128>> = (0..q)
            .map(|l| {
                (0..q)
                    .map(|j| if j == l { self.cyclic_orders[l] as i128 } else { 0 })
                    .collect()
            })
            .collect();
        rows.extend(generators.iter().map(|x| x.0.iter().map(|&a| a as i128).collect()));
        let (diag, v) = crate::lattice::smith_columns(rows, q);
        let mut orders = Vec::new();
        let mut coefficients = Vec::new();
        for (t, &d) in diag.iter().enumerate() {
            if d > 1 {
                orders.push(d as u64);
                coefficients.push((0..q).map(|l| v[l][t]).collect());
            }
        }
        Ok(QuotientMap {
            target: GroupSpec::new(orders)?,
            coefficients,
        })
    }

    /// Every element on which `chi` is trivial.
    pub fn kernel(&self, chi: &Character) -> Vec<GroupElement> {
        self.elements()
            .into_iter()
            .filter(|x| self.char_u_value(chi, x) == 0)
            .collect()
    }
}

/// Conjugacy class record of a trusted class table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjugacyClass {
    pub id: String,
    pub order: u64,
}

/// A one-dimensional character given by its `u` values on every class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuppliedCharacter {
    pub name: String,
    pub values: Vec<u64>,
}

impl SuppliedCharacter {
    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&u| u == 0)
    }
}

/// Class data for a group that is not enumerated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassTable {
    group_order: u64,
    classes: Vec<ConjugacyClass>,
    characters: Vec<SuppliedCharacter>,
}

impl ClassTable {
    /// Builds the table; a trivial character named `1` is added when none of
    /// the supplied characters is trivial.
    pub fn new(
        group_order: u64,
        classes: Vec<ConjugacyClass>,
        characters: Vec<SuppliedCharacter>,
    ) -> Result<Self> {
        if group_order == 0 {
            return Err(Error::InvalidGroup("group order must be positive".into()));
        }
        let mut ids = std::collections::BTreeSet::new();
        for c in &classes {
            if c.order == 0 || group_order % c.order != 0 {
                return Err(Error::InvalidGroup(format!(
                    "class {} has order {} not dividing {}",
                    c.id, c.order, group_order
                )));
            }
            if !ids.insert(c.id.clone()) {
                return Err(Error::InvalidGroup(format!("duplicate class {}", c.id)));
            }
        }
        let mut names = std::collections::BTreeSet::new();
        for chi in &characters {
            if chi.values.len() != classes.len() {
                return Err(Error::InvalidGroup(format!(
                    "character {} lists {} values for {} classes",
                    chi.name,
                    chi.values.len(),
                    classes.len()
                )));
            }
            for (u, c) in chi.values.iter().zip(&classes) {
                if *u >= c.order {
                    return Err(Error::InvalidGroup(format!(
                        "character {} has value {} on class {} of order {}",
                        chi.name, u, c.id, c.order
                    )));
                }
            }
            if !names.insert(chi.name.clone()) {
                return Err(Error::InvalidGroup(format!("duplicate character {}", chi.name)));
            }
        }
        let mut characters = characters;
        if !characters.iter().any(SuppliedCharacter::is_trivial) {
            if names.contains("1") {
                return Err(Error::InvalidGroup(
                    "character named 1 must be trivial".into(),
                ));
            }
            characters.insert(
                0,
                SuppliedCharacter {
                    name: "1".into(),
                    values: vec![0; classes.len()],
                },
            );
        }
        Ok(Self {
            group_order,
            classes,
            characters,
        })
    }

    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn characters(&self) -> &[SuppliedCharacter] {
        &self.characters
    }

    pub fn class_index(&self, id: &str) -> Result<usize> {
        self.classes
            .iter()
            .position(|c| c.id == id)
            .ok_or_else(|| Error::UnknownClass(id.to_string()))
    }

    pub fn character_index(&self, name: &str) -> Result<usize> {
        self.characters
            .iter()
            .position(|c| c.name == name)
            .ok_or_else(|| Error::UnknownCharacter(name.to_string()))
    }
}
