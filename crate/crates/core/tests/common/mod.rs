//! Shared fixtures and an equation-level oracle for abelian covers of the
//! line.
//!
//! A cover with branch data `lambda_j -> (a_1, .., a_m)` is the curve
//! `w_l^{m_l} = prod_j (z - lambda_j)^{a_l(j)}`. The oracle works with the
//! functions `g(z) w^E` directly and only uses Riemann-Roch on the line, so
//! it shares no code path with the library formulas.
#![allow(dead_code)]

use galois_cover::cover::{BranchLabel, BranchPoint, CharRef, ClassRef, ComplexRational, CoverSpec, GroupData};
use galois_cover::group::{Character, GroupElement, GroupSpec};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn cover_on_line(orders: &[u64], classes: &[Vec<u64>]) -> CoverSpec {
    let g = GroupSpec::new(orders.to_vec()).unwrap();
    let points = classes
        .iter()
        .enumerate()
        .map(|(i, a)| BranchPoint {
            label: BranchLabel::Point(ComplexRational::real(i as i64 + 1)),
            class: ClassRef::Element(g.element(a.clone()).unwrap()),
        })
        .collect();
    CoverSpec::new(0, GroupData::Abelian(g), points).unwrap()
}

/// `w^m = prod (z - j)^{e_j}`.
pub fn superelliptic(m: u64, exps: &[u64]) -> CoverSpec {
    cover_on_line(&[m], &exps.iter().map(|&e| vec![e % m]).collect::<Vec<_>>())
}

/// The four genus-one curves with no branching over infinity.
pub fn genus_one_fixtures() -> Vec<(&'static str, CoverSpec)> {
    vec![
        ("w^2=(z-1)(z-2)(z-3)(z-4)", superelliptic(2, &[1, 1, 1, 1])),
        ("w^3=(z-1)(z-2)(z-3)", superelliptic(3, &[1, 1, 1])),
        ("w^4=(z-1)(z-2)(z-3)^2", superelliptic(4, &[1, 1, 2])),
        ("w^6=(z-1)(z-2)^2(z-3)^3", superelliptic(6, &[1, 2, 3])),
    ]
}

pub fn named_fixtures() -> Vec<(&'static str, CoverSpec)> {
    let mut out = vec![
        ("hyperelliptic-6", superelliptic(2, &[1; 6])),
        ("hyperelliptic-8", superelliptic(2, &[1; 8])),
        ("line-z2", superelliptic(2, &[1, 1])),
        ("klein-four", cover_on_line(&[2, 2], &[vec![1, 0], vec![1, 0], vec![0, 1], vec![0, 1]])),
        ("z3-six", superelliptic(3, &[1, 1, 1, 1, 1, 1])),
        ("z5-mixed", superelliptic(5, &[1, 2, 3, 4])),
        ("z2xz4", cover_on_line(&[2, 4], &[vec![1, 0], vec![1, 1], vec![0, 1], vec![0, 2]])),
        ("z2xz2xz2", cover_on_line(&[2, 2, 2], &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 1]])),
    ];
    out.extend(genus_one_fixtures());
    out
}

/// Random group of order at most `max_order` as a product of cyclic factors.
pub fn random_group(rng: &mut ChaCha8Rng, max_order: u64) -> GroupSpec {
    loop {
        let rank = rng.gen_range(1..=3);
        let orders: Vec<u64> = (0..rank).map(|_| rng.gen_range(2..=12)).collect();
        if orders.iter().product::<u64>() <= max_order {
            return GroupSpec::new(orders).unwrap();
        }
    }
}

/// Random validated cover of the line with `|G| <= max_order` and at most
/// `max_points` branch points.
pub fn random_cover(rng: &mut ChaCha8Rng, max_order: u64, max_points: usize) -> CoverSpec {
    loop {
        let g = random_group(rng, max_order);
        let k = rng.gen_range(2..=max_points);
        let mut sum = vec![0i64; g.rank()];
        let mut classes: Vec<Vec<u64>> = Vec::new();
        for _ in 0..k - 1 {
            let x: Vec<u64> = g.cyclic_orders().iter().map(|&m| rng.gen_range(0..m)).collect();
            if x.iter().all(|&a| a == 0) {
                continue;
            }
            for (s, &a) in sum.iter_mut().zip(&x) {
                *s += a as i64;
            }
            classes.push(x);
        }
        let last = g.element_mod(&sum.iter().map(|s| -s).collect::<Vec<_>>()).unwrap();
        if !last.is_identity() {
            classes.push(last.exponents().to_vec());
        }
        if classes.len() < 2 {
            continue;
        }
        let cover = cover_on_line(g.cyclic_orders(), &classes);
        if cover.validate().is_ok() {
            return cover;
        }
    }
}

pub fn characters(cover: &CoverSpec) -> Vec<Character> {
    cover.abelian_group().unwrap().characters()
}

pub fn char_ref(chi: &Character) -> CharRef {
    CharRef::Abelian(chi.clone())
}

pub fn elements(cover: &CoverSpec) -> Vec<GroupElement> {
    cover.abelian_group().unwrap().elements()
}

/// Per branch point: ramification index and the order of `w^E` at a point
/// above it; last entry is the order of `w^E` at points above infinity.
pub struct MonomialOrders {
    pub branch: Vec<(i64, i64)>,
    pub infinity: i64,
}

pub fn monomial_orders(cover: &CoverSpec, e: &[u64]) -> MonomialOrders {
    let g = cover.abelian_group().unwrap();
    let ms = g.cyclic_orders();
    let mut branch = Vec::new();
    let mut at_inf_num = vec![0i64; ms.len()];
    for bp in cover.branch_points() {
        let ClassRef::Element(x) = &bp.class else { panic!("abelian fixture") };
        let o = g.element_order(x) as i64;
        let mut ord = 0i64;
        for (l, (&a, &m)) in x.exponents().iter().zip(ms).enumerate() {
            // ord_P(w_l) = o * a_l / m_l
            ord += e[l] as i64 * (o * a as i64 / m as i64);
            at_inf_num[l] -= a as i64;
        }
        branch.push((o, ord));
    }
    let infinity = at_inf_num
        .iter()
        .zip(ms)
        .zip(e)
        .map(|((&s, &m), &el)| {
            assert_eq!(s % m as i64, 0, "branching over infinity");
            el as i64 * s / m as i64
        })
        .sum();
    MonomialOrders { branch, infinity }
}

fn line_dim(degree: i64) -> u64 {
    (degree + 1).max(0) as u64
}

/// `dim { f in C(X) : f = g(z) w^E, (f) >= -D }` for the invariant divisor
/// with exponent `exps[j]` on the fiber over branch point `j` and `p` on the
/// fiber over infinity.
pub fn oracle_functions(cover: &CoverSpec, e: &[u64], exps: &[u64], p: i64) -> u64 {
    let exps: Vec<i64> = exps.iter().map(|&d| d as i64).collect();
    oracle_functions_raw(cover, e, &exps, p)
}

/// As [`oracle_functions`] with arbitrary integer exponents.
pub fn oracle_functions_raw(cover: &CoverSpec, e: &[u64], exps: &[i64], p: i64) -> u64 {
    let m = monomial_orders(cover, e);
    let finite: i64 = m
        .branch
        .iter()
        .zip(exps)
        .map(|(&(o, ord), &d)| (ord + d).div_euclid(o))
        .sum();
    line_dim(finite + m.infinity + p)
}

/// `dim { w = g(z) w^E dz : (w) >= D }`.
pub fn oracle_differentials(cover: &CoverSpec, e: &[u64], exps: &[u64], p: i64) -> u64 {
    let m = monomial_orders(cover, e);
    let finite: i64 = m
        .branch
        .iter()
        .zip(exps)
        .map(|(&(o, ord), &d)| (ord + o - 1 - d as i64).div_euclid(o))
        .sum();
    line_dim(finite + m.infinity - 2 - p)
}

/// `dim { g(z) w^E dz^q : poles bounded by f^*(Gamma) }` for a reduced
/// `Gamma` of degree `gamma_degree` away from the branch locus and infinity.
pub fn oracle_q_differentials(cover: &CoverSpec, e: &[u64], q: i64, gamma_degree: u64) -> u64 {
    let m = monomial_orders(cover, e);
    let finite: i64 = m
        .branch
        .iter()
        .map(|&(o, ord)| (ord + q * (o - 1)).div_euclid(o))
        .sum();
    line_dim(finite + m.infinity - 2 * q + gamma_degree as i64)
}

/// `exp(2 pi i k / n)`.
pub fn root(k: u64, n: u64) -> num_complex::Complex64 {
    num_complex::Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / n as f64)
}

pub fn conjugate_exponents(g: &GroupSpec, chi: &Character) -> Vec<u64> {
    g.conjugate(chi).exponents().to_vec()
}
