//! The quartic `F(N, j)` and the special-point evaluation it comes from.
//!
//! Under the special initial data the row-two values are
//! `c_k = (k+1) x + N - k - 1`. Choosing `x = 1 - N/(j+1)` makes `c_j` vanish,
//! and the telescoped expression for `e_{N-1}` then reduces to a multiple of
//! `F(N, j)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::par::par_map;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FError {
    #[error("F(N, j) needs N >= 3 and 1 <= j <= N-2, got N={n}, j={j}")]
    OutOfRange { n: i64, j: i64 },
}

fn check_range(n: i64, j: i64) -> Result<(), FError> {
    if n < 3 || j < 1 || j > n - 2 {
        return Err(FError::OutOfRange { n, j });
    }
    Ok(())
}

fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

fn rat(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}

fn f_unchecked(n: i64, j: i64) -> BigInt {
    let (n, j) = (int(n), int(j));
    let j2 = &j * &j;
    let j3 = &j2 * &j;
    let j4 = &j3 * &j;
    let two_n_1 = int(2) * &n - 1;
    int(180) * j4 + (int(390) - int(420) * &n) * j3
        + int(30) * (int(3) * &n - 2) * (int(4) * &n - 5) * j2
        - int(2) * &two_n_1 * (int(34) * &n * &n - int(84) * &n + 47) * &j
        + int(5) * (&n - 1) * (&n - 2) * &two_n_1 * &two_n_1
}

/// `F(N, j) = 180j^4 + (390 - 420N) j^3 + 30(3N-2)(4N-5) j^2
/// - 2(2N-1)(34N^2 - 84N + 47) j + 5(N-1)(N-2)(2N-1)^2`.
pub fn eval_f(n: i64, j: i64) -> Result<BigInt, FError> {
    check_range(n, j)?;
    Ok(f_unchecked(n, j))
}

/// The factorized forms known for `N = 3..=6`: a constant times an
/// irreducible quartic in `j`.
pub fn factored_f(n: i64, j: i64) -> Option<BigInt> {
    let (scale, coeffs): (i64, [i64; 5]) = match n {
        3 => (10, [18, -87, 147, -101, 25]),
        4 => (30, [6, -43, 110, -119, 49]),
        5 => (18, [10, -95, 325, -477, 270]),
        6 => (2, [90, -1065, 4560, -8437, 6050]),
        _ => return None,
    };
    let j = int(j);
    let quartic = coeffs.iter().fold(BigInt::zero(), |acc, &c| acc * &j + c);
    Some(quartic * scale)
}

/// `c_k = (j - k) N / (j + 1)`, the row-two value at the root `c_j = 0`.
pub fn special_c(n: i64, j: i64, k: i64) -> BigRational {
    rat((j - k) * n, j + 1)
}

/// `x = 1 - N/(j+1)`.
pub fn special_x(n: i64, j: i64) -> BigRational {
    BigRational::one() - rat(n, j + 1)
}

/// `d_k = x sum_{i<=k} c_i^2 + sum_{k<i<N} c_i^2`, summed directly.
pub fn special_d_sum(n: i64, j: i64, k: i64) -> BigRational {
    let x = special_x(n, j);
    (0..n).fold(BigRational::zero(), |acc, i| {
        let sq = special_c(n, j, i).pow(2);
        if i <= k {
            acc + &x * sq
        } else {
            acc + sq
        }
    })
}

/// Closed form of `d_k` at the root, a cubic in `k`.
pub fn special_d(n: i64, j: i64, k: i64) -> BigRational {
    let (n, j, k) = (int(n), int(j), int(k));
    let bracket = int(1) + int(7) * &j + int(6) * &j * &j + int(6) * j.pow(3) - &k
        + int(6) * &j * &k
        - int(6) * &j * &j * &k
        - int(3) * &k * &k
        + int(6) * &j * &k * &k
        - int(2) * k.pow(3)
        - int(3) * &n
        - int(9) * &j * &n
        - int(6) * &j * &j * &n
        + int(2) * &n * &n
        + int(2) * &j * &n * &n;
    BigRational::new(n.pow(3) * bracket, int(6) * (&j + int(1)).pow(3u32))
}

/// `e_{N-1}` from the telescoped form at the root, with `c_N = c_0`:
/// `c_N x/(x-1) [d_0^2/c_0 - d_{N-1}^2/c_N + sum_{k=1}^{N-1} (x-1) c_k (d_k + d_{k-1})]`.
pub fn telescoped_e_at_root(n: i64, j: i64) -> BigRational {
    let x = special_x(n, j);
    let xm1 = &x - BigRational::one();
    let c0 = special_c(n, j, 0);
    let d = |k| special_d(n, j, k);
    let mut bracket = d(0).pow(2) / &c0 - d(n - 1).pow(2) / &c0;
    for k in 1..n {
        bracket += &xm1 * special_c(n, j, k) * (d(k) + d(k - 1));
    }
    &c0 * &x / &xm1 * bracket
}

/// `F` recovered from [`telescoped_e_at_root`] through
/// `e_{N-1} = -x N (N-1) (N/(j+1))^6 F / (180 (x-1))`.
pub fn oracle_f(n: i64, j: i64) -> Result<BigRational, FError> {
    check_range(n, j)?;
    let e = telescoped_e_at_root(n, j);
    Ok(e / literal_prefactor(n, j) / rat(n, j + 1).pow(6))
}

/// `-x N (N-1) / (180 (x-1))` at the root.
pub fn literal_prefactor(n: i64, j: i64) -> BigRational {
    let x = special_x(n, j);
    -(&x * rat(n * (n - 1), 1)) / (rat(180, 1) * (&x - BigRational::one()))
}

/// `d_0` at `x = 1 - N` (the root `c_0 = 0`) and the expected `N^3 (N-1)(2N-1)/6`.
pub fn d0_at_first_root(n: i64) -> (BigRational, BigRational) {
    let expected = rat(n.pow(3) * (n - 1) * (2 * n - 1), 6);
    (special_d_sum(n, 0, 0), expected)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FPoint {
    pub n: i64,
    pub j: i64,
    #[serde(with = "bigint_string")]
    pub value: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FScanResult {
    pub n_min: i64,
    pub n_max: i64,
    pub values: Vec<FPoint>,
    pub min: FPoint,
    pub violations: Vec<FPoint>,
}

impl FScanResult {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Exact evaluation of `F` at every `3 <= N <= n_max`, `1 <= j <= N-2`.
pub fn scan_f_positivity(n_max: i64) -> Result<FScanResult, FError> {
    if n_max < 3 {
        return Err(FError::OutOfRange { n: n_max, j: 1 });
    }
    let ns: Vec<i64> = (3..=n_max).collect();
    let rows = par_map(&ns, |&n| {
        (1..=n - 2)
            .map(|j| FPoint { n, j, value: f_unchecked(n, j) })
            .collect::<Vec<_>>()
    });
    let values: Vec<FPoint> = rows.into_iter().flatten().collect();
    let min = values
        .iter()
        .min_by(|a, b| a.value.cmp(&b.value))
        .cloned()
        .expect("n_max >= 3 gives at least one point");
    let violations = values.iter().filter(|p| !p.value.is_positive()).cloned().collect();
    Ok(FScanResult { n_min: 3, n_max, values, min, violations })
}

mod bigint_string {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
