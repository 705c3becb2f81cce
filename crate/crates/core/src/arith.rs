//! Small exact-arithmetic helpers shared by the modules.

use num_integer::Integer;
use num_rational::Ratio;

pub type Rational = Ratio<i64>;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// Fractional part in [0, 1), i.e. `x - floor(x)`.
pub fn frac(x: Rational) -> Rational {
    x - x.floor()
}

pub fn lcm_all<I: IntoIterator<Item = u64>>(values: I) -> u64 {
    values.into_iter().fold(1, |acc, v| acc.lcm(&v))
}

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Converts an integral rational, or reports the value as a string.
pub fn to_integer(x: Rational) -> std::result::Result<i64, String> {
    if x.is_integer() {
        Ok(x.to_integer())
    } else {
        Err(format!("{}/{}", x.numer(), x.denom()))
    }
}

/// Parses `"a"` or `"a/b"`.
pub fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    let t = s.trim();
    if let Some((_, d)) = t.split_once('/') {
        if d.trim().parse::<i64>() == Ok(0) {
            return Err(format!("zero denominator in {s:?}"));
        }
    }
    t.replace(' ', "").parse::<Rational>().map_err(|_| format!("not a rational number: {s:?}"))
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Multinomial coefficient `(sum parts)! / prod(parts!)`.
pub fn multinomial(parts: &[u64]) -> u128 {
    let mut total = 0;
    let mut acc: u128 = 1;
    for &p in parts {
        total += p;
        acc *= binomial(total, p);
    }
    acc
}
