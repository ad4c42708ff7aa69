//! Exact integer kernel: 2-adic structure, generator tests, Legendre symbols,
//! the quadratic-residue relation and divisor counts by class mod 4.
//!
//! Magnitudes are `u64`, signed operands `i64`. Products that can overflow go
//! through checked arithmetic; inputs above [`INPUT_CAP`](crate::INPUT_CAP)
//! are rejected where a function accepts user-sized values.

use serde::Serialize;

use crate::error::{Error, Result};

/// `n = 2^order * odd_part` with `odd_part` odd.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TwoAdicSplit {
    pub order: u32,
    pub odd_part: u64,
}

/// `n = 4^exponent * core` with `4 ∤ core`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FourAdicSplit {
    pub exponent: u32,
    pub core: u64,
}

/// Prime factorization of an odd integer, primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OddFactorization {
    pub base: u64,
    pub primes: Vec<(u64, u32)>,
}

impl OddFactorization {
    pub fn prime_divisors(&self) -> impl Iterator<Item = u64> + '_ {
        self.primes.iter().map(|&(p, _)| p)
    }
}

/// Residue class of an odd divisor modulo 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OddClass {
    One,
    Three,
}

pub fn two_adic_split(n: u64) -> Result<TwoAdicSplit> {
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    let order = n.trailing_zeros();
    Ok(TwoAdicSplit {
        order,
        odd_part: n >> order,
    })
}

/// 2-adic order, `v₂(n)`.
pub fn v2(n: u64) -> Result<u32> {
    two_adic_split(n).map(|s| s.order)
}

pub fn four_adic_split(n: u64) -> Result<FourAdicSplit> {
    let TwoAdicSplit { order, odd_part } = two_adic_split(n)?;
    let exponent = order / 2;
    Ok(FourAdicSplit {
        exponent,
        core: odd_part << (order % 2),
    })
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for p in WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Legendre symbol `(a/p)` for an odd prime `p`; `a` is reduced into `[0, p)` first.
pub fn legendre_symbol(a: i64, p: u64) -> Result<i8> {
    if p % 2 == 0 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let reduced = (a as i128).rem_euclid(p as i128) as u64;
    Ok(jacobi(reduced, p))
}

// Binary Jacobi algorithm; for prime n this is the Legendre symbol.
fn jacobi(mut a: u64, mut n: u64) -> i8 {
    debug_assert!(n % 2 == 1);
    a %= n;
    let mut sign = 1i8;
    while a != 0 {
        let tz = a.trailing_zeros();
        a >>= tz;
        // (2/n) = -1 iff n ≡ 3, 5 (mod 8)
        if tz % 2 == 1 && matches!(n % 8, 3 | 5) {
            sign = -sign;
        }
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// The relation `a R m`: `(a/p) = 1` for every prime divisor `p` of the odd
/// modulus `m`. Vacuously true for `m = 1`.
pub fn residue_rel(a: i64, m: u64) -> Result<bool> {
    if a == 0 {
        return Err(Error::ZeroResidueOperand);
    }
    let factors = factor_odd(m)?;
    for p in factors.prime_divisors() {
        if legendre_symbol(a, p)? != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Trial division by odd candidates up to `√m`.
pub fn factor_odd(m: u64) -> Result<OddFactorization> {
    if m % 2 == 0 {
        return Err(Error::EvenModulus(m));
    }
    let mut primes = Vec::new();
    let mut rest = m;
    let mut p = 3u64;
    while p <= rest / p {
        if rest % p == 0 {
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            primes.push((p, e));
        }
        p += 2;
    }
    if rest > 1 {
        primes.push((rest, 1));
    }
    Ok(OddFactorization { base: m, primes })
}

/// `d_r(n)`: the number of positive divisors of `n` congruent to `r` mod 4.
///
/// Uses the factorization of the odd part: the odd divisors number
/// `Π(e+1)`, and `d₁ − d₃ = Π_{p≡1}(e+1) · Π_{p≡3}[e even]`.
pub fn divisor_count_mod4(n: u64, class: OddClass) -> Result<u64> {
    let odd = two_adic_split(n)?.odd_part;
    let factors = factor_odd(odd)?;
    let mut total = 1u64;
    let mut diff = 1i64;
    for &(p, e) in &factors.primes {
        total *= e as u64 + 1;
        if p % 4 == 1 {
            diff *= e as i64 + 1;
        } else if e % 2 == 1 {
            diff = 0;
        }
    }
    let d1 = ((total as i64 + diff) / 2) as u64;
    Ok(match class {
        OddClass::One => d1,
        OddClass::Three => total - d1,
    })
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn gcd_all(values: &[u64]) -> u64 {
    values.iter().fold(0, |g, &v| gcd(g, v))
}

pub fn square(k: u64) -> Option<u64> {
    k.checked_mul(k)
}

pub fn triangular(k: u64) -> Option<u64> {
    let (a, b) = if k % 2 == 0 { (k / 2, k + 1) } else { (k, k.div_ceil(2)) };
    a.checked_mul(b)
}

pub fn is_square(n: u64) -> Option<u64> {
    let r = n.isqrt();
    (r * r == n).then_some(r)
}

/// `t_k = n` iff `8n+1 = (2k+1)²`.
pub fn is_triangular(n: u64) -> Option<u64> {
    let disc = 8 * n as u128 + 1;
    let r = disc.isqrt();
    (r * r == disc).then(|| ((r - 1) / 2) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn euler_criterion(a: i64, p: u64) -> i8 {
        let r = a.rem_euclid(p as i64) as u64;
        match pow_mod(r, (p - 1) / 2, p) {
            0 => 0,
            1 => 1,
            x if x == p - 1 => -1,
            x => panic!("Euler criterion gave {x} mod {p}"),
        }
    }

    fn small_primes(limit: u64) -> Vec<u64> {
        (2..=limit)
            .filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0))
            .collect()
    }

    #[test]
    fn two_adic_examples() {
        assert_eq!(two_adic_split(1).unwrap(), TwoAdicSplit { order: 0, odd_part: 1 });
        assert_eq!(two_adic_split(12).unwrap(), TwoAdicSplit { order: 2, odd_part: 3 });
        assert_eq!(two_adic_split(40).unwrap(), TwoAdicSplit { order: 3, odd_part: 5 });
        assert_eq!(two_adic_split(0), Err(Error::ZeroInput));
    }

    #[test]
    fn two_adic_reconstructs() {
        for n in 1..=100_000u64 {
            let s = two_adic_split(n).unwrap();
            assert_eq!(s.odd_part << s.order, n);
            assert_eq!(s.odd_part % 2, 1);
        }
    }

    #[test]
    fn four_adic_examples() {
        assert_eq!(four_adic_split(7).unwrap(), FourAdicSplit { exponent: 0, core: 7 });
        assert_eq!(four_adic_split(28).unwrap(), FourAdicSplit { exponent: 1, core: 7 });
        assert_eq!(four_adic_split(64).unwrap(), FourAdicSplit { exponent: 3, core: 1 });
        assert_eq!(four_adic_split(8).unwrap(), FourAdicSplit { exponent: 1, core: 2 });
        assert!(four_adic_split(0).is_err());
        for n in 1..10_000u64 {
            let s = four_adic_split(n).unwrap();
            assert_eq!(4u64.pow(s.exponent) * s.core, n);
            assert_ne!(s.core % 4, 0);
        }
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre_symbol(1, 3).unwrap(), 1);
        assert_eq!(legendre_symbol(2, 7).unwrap(), 1);
        assert_eq!(legendre_symbol(-1, 7).unwrap(), -1);
        assert_eq!(legendre_symbol(14, 7).unwrap(), 0);
        assert_eq!(legendre_symbol(1, 2), Err(Error::NotOddPrime(2)));
        assert_eq!(legendre_symbol(1, 9), Err(Error::NotOddPrime(9)));
    }

    #[test]
    fn legendre_matches_euler() {
        for p in small_primes(97).into_iter().filter(|&p| p > 2) {
            for a in -50..=50 {
                assert_eq!(legendre_symbol(a, p).unwrap(), euler_criterion(a, p), "a={a} p={p}");
            }
        }
    }

    #[test]
    fn legendre_large_prime() {
        let p = 1_000_000_007;
        for a in [-3i64, 2, 5, 123_456_789, -987_654_321] {
            assert_eq!(legendre_symbol(a, p).unwrap(), euler_criterion(a, p));
        }
    }

    #[test]
    fn residue_rel_examples() {
        assert!(residue_rel(-12, 1).unwrap());
        assert!(residue_rel(-2, 3).unwrap());
        assert!(!residue_rel(-1, 7).unwrap());
        assert_eq!(residue_rel(-1, 8), Err(Error::EvenModulus(8)));
        assert_eq!(residue_rel(0, 3), Err(Error::ZeroResidueOperand));
    }

    #[test]
    fn residue_rel_multiplicative_on_coprime() {
        for m in (1..=99u64).step_by(2) {
            for k in (1..=99u64).step_by(2) {
                if gcd(m, k) != 1 {
                    continue;
                }
                for a in [-30i64, -7, -2, -1, 1, 2, 3, 11] {
                    assert_eq!(
                        residue_rel(a, m * k).unwrap(),
                        residue_rel(a, m).unwrap() && residue_rel(a, k).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn factor_examples() {
        assert!(factor_odd(1).unwrap().primes.is_empty());
        assert_eq!(factor_odd(15).unwrap().primes, vec![(3, 1), (5, 1)]);
        assert_eq!(factor_odd(27).unwrap().primes, vec![(3, 3)]);
        assert_eq!(factor_odd(4), Err(Error::EvenModulus(4)));
        for m in (1..5_000u64).step_by(2) {
            let f = factor_odd(m).unwrap();
            let product: u64 = f.primes.iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(product, m);
            assert!(f.primes.windows(2).all(|w| w[0].0 < w[1].0));
            assert!(f.prime_divisors().all(is_prime));
        }
    }

    fn brute_divisors_mod4(n: u64, r: u64) -> u64 {
        (1..=n).filter(|d| n % d == 0 && d % 4 == r).count() as u64
    }

    #[test]
    fn divisor_count_examples() {
        assert_eq!(divisor_count_mod4(1, OddClass::One).unwrap(), 1);
        assert_eq!(divisor_count_mod4(13, OddClass::One).unwrap(), 2);
        assert_eq!(divisor_count_mod4(13, OddClass::Three).unwrap(), 0);
    }

    #[test]
    fn divisor_count_matches_enumeration() {
        for n in 1..=2_000u64 {
            assert_eq!(
                divisor_count_mod4(n, OddClass::One).unwrap(),
                brute_divisors_mod4(n, 1),
                "n={n}"
            );
            assert_eq!(
                divisor_count_mod4(n, OddClass::Three).unwrap(),
                brute_divisors_mod4(n, 3),
                "n={n}"
            );
        }
        for n in 1..=10_000u64 {
            let odd = (1..=n).filter(|d| n % d == 0 && d % 2 == 1).count() as u64;
            let sum = divisor_count_mod4(n, OddClass::One).unwrap() + divisor_count_mod4(n, OddClass::Three).unwrap();
            assert_eq!(sum, odd);
        }
    }

    #[test]
    fn generator_tests() {
        assert_eq!(is_triangular(0), Some(0));
        assert_eq!(is_triangular(10), Some(4));
        assert_eq!(is_square(8), None);
        let mut next_sq = 0;
        let mut next_tri = 0;
        for k in 0..=10_000u64 {
            let sq = square(k).unwrap();
            let tri = triangular(k).unwrap();
            assert_eq!(is_square(sq), Some(k));
            assert_eq!(is_triangular(tri), Some(k));
            for v in next_sq..sq {
                assert_eq!(is_square(v), None);
            }
            for v in next_tri..tri {
                assert_eq!(is_triangular(v), None);
            }
            next_sq = sq + 1;
            next_tri = tri + 1;
        }
    }

    #[test]
    fn primality() {
        let brute = small_primes(2000);
        for n in 0..=2000u64 {
            assert_eq!(is_prime(n), brute.contains(&n), "n={n}");
        }
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(3_215_031_751));
    }
}
