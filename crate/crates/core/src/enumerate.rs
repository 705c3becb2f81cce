//! Enumeration of the non-special integral divisors and of the degree
//! `g - 1` divisors without sections, on Abelian covers of the line.

use serde::Serialize;

use crate::arith::multinomial;
use crate::cover::{BranchClass, CoverSpec};
use crate::divisor::InvariantDivisor;
use crate::error::{Error, Result};

pub const DEFAULT_CAP: u128 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Family {
    /// Integral, degree `g`, `r = 1`; normalized with `p = 0`.
    NonSpecialIntegral,
    /// Degree `g - 1`, `r = 0`; normalized with `p = -1`.
    DegreeGenusMinusOne,
}

impl Family {
    pub fn p(self) -> i64 {
        match self {
            Family::NonSpecialIntegral => 0,
            Family::DegreeGenusMinusOne => -1,
        }
    }
}

/// Per-class bucket cardinalities: `counts[class][bucket]`.
type Cardinalities = Vec<Vec<u64>>;

struct Constraint {
    u: Vec<u64>,
    target: i64,
}

struct System {
    classes: Vec<BranchClass>,
    constraints: Vec<Constraint>,
}

impl System {
    fn new(cover: &CoverSpec, family: Family) -> Result<Self> {
        cover.require_line_base()?;
        cover.abelian_group()?;
        cover.validate()?;
        let classes = cover.branch_classes();
        let mut constraints: Vec<Constraint> = Vec::new();
        for profile in cover.profiles()? {
            let target = match family {
                Family::NonSpecialIntegral if profile.trivial => continue,
                Family::NonSpecialIntegral => profile.t()? - 1,
                Family::DegreeGenusMinusOne => profile.t()?,
            };
            if !constraints.iter().any(|c| c.u == profile.u && c.target == target) {
                constraints.push(Constraint { u: profile.u, target });
            }
        }
        Ok(Self { classes, constraints })
    }

    fn solve(&self) -> Vec<Cardinalities> {
        // Largest amount each later class can still add to each constraint.
        let k = self.constraints.len();
        let mut reach = vec![vec![0i64; k]; self.classes.len() + 1];
        for s in (0..self.classes.len()).rev() {
            for (c, con) in self.constraints.iter().enumerate() {
                let add = if con.u[s] > 0 { self.classes[s].count() as i64 } else { 0 };
                reach[s][c] = reach[s + 1][c] + add;
            }
        }
        let mut out = Vec::new();
        let mut current = Vec::new();
        let mut sums = vec![0i64; k];
        self.search(0, &reach, &mut sums, &mut current, &mut out);
        out
    }

    fn search(
        &self,
        s: usize,
        reach: &[Vec<i64>],
        sums: &mut Vec<i64>,
        current: &mut Cardinalities,
        out: &mut Vec<Cardinalities>,
    ) {
        let feasible = self
            .constraints
            .iter()
            .zip(sums.iter())
            .zip(&reach[s])
            .all(|((con, &sum), &r)| sum <= con.target && sum + r >= con.target);
        if !feasible {
            return;
        }
        if s == self.classes.len() {
            out.push(current.clone());
            return;
        }
        let class = &self.classes[s];
        for parts in compositions(class.count(), class.order) {
            let added: Vec<i64> = self
                .constraints
                .iter()
                .map(|con| parts[..con.u[s] as usize].iter().sum::<u64>() as i64)
                .collect();
            for (sum, a) in sums.iter_mut().zip(&added) {
                *sum += a;
            }
            current.push(parts);
            self.search(s + 1, reach, sums, current, out);
            current.pop();
            for (sum, a) in sums.iter_mut().zip(&added) {
                *sum -= a;
            }
        }
    }
}

/// All ways to write `total` as an ordered sum of `parts` nonnegative terms.
fn compositions(total: u64, parts: u64) -> Vec<Vec<u64>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Bucket cardinality vectors solving the linear conditions of the family.
pub fn cardinality_solutions(cover: &CoverSpec, family: Family) -> Result<Vec<Cardinalities>> {
    Ok(System::new(cover, family)?.solve())
}

pub fn count_by_cardinality(cover: &CoverSpec, family: Family) -> Result<u128> {
    Ok(cardinality_solutions(cover, family)?
        .iter()
        .map(|sol| sol.iter().map(|parts| multinomial(parts)).product::<u128>())
        .sum())
}

struct Frame {
    next_bucket: u64,
    candidates: Vec<usize>,
}

/// Streams the divisors of a family in lexicographic order of the bucket
/// vectors (branch index first, then bucket).
pub struct FamilyIter<'a> {
    cover: &'a CoverSpec,
    p: i64,
    solutions: Vec<Cardinalities>,
    class_of_point: Vec<usize>,
    orders: Vec<u64>,
    counts: Cardinalities,
    buckets: Vec<u64>,
    stack: Vec<Frame>,
}

impl<'a> FamilyIter<'a> {
    pub fn new(cover: &'a CoverSpec, family: Family) -> Result<Self> {
        let system = System::new(cover, family)?;
        let solutions = system.solve();
        let class_of_point = cover.class_of_point(&system.classes);
        let orders = class_of_point.iter().map(|&c| system.classes[c].order).collect();
        let counts = system.classes.iter().map(|c| vec![0; c.order as usize]).collect();
        let root = Frame {
            next_bucket: 0,
            candidates: (0..solutions.len()).collect(),
        };
        Ok(Self {
            cover,
            p: family.p(),
            solutions,
            class_of_point,
            orders,
            counts,
            buckets: vec![0; cover.branch_points().len()],
            stack: vec![root],
        })
    }

    fn pop(&mut self) {
        self.stack.pop();
        let depth = self.stack.len();
        if depth > 0 {
            let j = depth - 1;
            self.counts[self.class_of_point[j]][self.buckets[j] as usize] -= 1;
        }
    }
}

impl<'a> Iterator for FamilyIter<'a> {
    type Item = InvariantDivisor<'a>;

    fn next(&mut self) -> Option<Self::Item> {
        let n_points = self.buckets.len();
        loop {
            let j = self.stack.len().checked_sub(1)?;
            if j == n_points {
                let found = !self.stack[j].candidates.is_empty();
                self.pop();
                if found {
                    return Some(InvariantDivisor::from_parts(self.cover, self.buckets.clone(), self.p));
                }
                continue;
            }
            let frame = &mut self.stack[j];
            if frame.next_bucket >= self.orders[j] {
                self.pop();
                continue;
            }
            let b = frame.next_bucket as usize;
            frame.next_bucket += 1;
            let c = self.class_of_point[j];
            let filled = self.counts[c][b] + 1;
            let candidates: Vec<usize> = frame
                .candidates
                .iter()
                .copied()
                .filter(|&s| self.solutions[s][c][b] >= filled)
                .collect();
            if candidates.is_empty() {
                continue;
            }
            self.counts[c][b] = filled;
            self.buckets[j] = b as u64;
            self.stack.push(Frame { next_bucket: 0, candidates });
        }
    }
}

fn enumerate(cover: &CoverSpec, family: Family, cap: u128) -> Result<Vec<InvariantDivisor<'_>>> {
    let count = count_by_cardinality(cover, family)?;
    if count > cap {
        return Err(Error::OutputTooLarge { count, cap });
    }
    Ok(FamilyIter::new(cover, family)?.collect())
}

/// Normalized integral divisors of degree `g` with `r = 1`.
pub fn enumerate_nonspecial_integral(cover: &CoverSpec, cap: u128) -> Result<Vec<InvariantDivisor<'_>>> {
    enumerate(cover, Family::NonSpecialIntegral, cap)
}

/// Normalized divisors of degree `g - 1` with `p = -1` and `r = 0`.
pub fn enumerate_degree_gm1(cover: &CoverSpec, cap: u128) -> Result<Vec<InvariantDivisor<'_>>> {
    enumerate(cover, Family::DegreeGenusMinusOne, cap)
}

/// Reference scan over every bucket assignment with the given `p`, keeping
/// those with the requested degree and `r`.
pub fn brute_force_filter(
    cover: &CoverSpec,
    p: i64,
    degree: i64,
    r: u64,
    cap: u128,
) -> Result<Vec<InvariantDivisor<'_>>> {
    cover.require_line_base()?;
    cover.abelian_group()?;
    let orders: Vec<u64> = cover
        .branch_points()
        .iter()
        .map(|bp| cover.class_order(&bp.class))
        .collect::<Result<_>>()?;
    let size = orders.iter().map(|&o| o as u128).product::<u128>();
    if size > cap {
        return Err(Error::SearchSpaceTooLarge { size, cap });
    }
    let n = cover.group_order() as i64;
    let classes = cover.branch_classes();
    let profiles = cover.profiles()?;
    let mut out = Vec::new();
    let mut buckets = vec![0u64; orders.len()];
    loop {
        let deg: i64 = orders
            .iter()
            .zip(&buckets)
            .map(|(&o, &i)| n / o as i64 * (o - 1 - i) as i64)
            .sum::<i64>()
            + n * p;
        if deg == degree {
            let d = InvariantDivisor::from_parts(cover, buckets.clone(), p);
            if d.r_total_from(&classes, &profiles)? == r {
                out.push(d);
            }
        }
        // Odometer step with the last point varying fastest.
        let mut j = orders.len();
        loop {
            if j == 0 {
                return Ok(out);
            }
            j -= 1;
            buckets[j] += 1;
            if buckets[j] < orders[j] {
                break;
            }
            buckets[j] = 0;
        }
    }
}
