use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{impl_ring_ops, Field, MathError, Rational, Ring};

/// Default modulus for randomized consistency checks.
pub const DEFAULT_PRIME: u64 = 1_000_003;

/// A validated prime modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self, MathError> {
        if is_prime(p) {
            Ok(PrimeModulus(p))
        } else {
            Err(MathError::NotPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

/// Deterministic Miller-Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
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

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Residue class modulo a prime, stored in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: PrimeModulus,
}

impl Fp {
    pub fn new(value: u64, modulus: PrimeModulus) -> Self {
        Fp {
            value: value % modulus.0,
            modulus,
        }
    }

    pub fn from_bigint(n: &BigInt, modulus: PrimeModulus) -> Self {
        let r = n.mod_floor(&BigInt::from(modulus.0));
        Fp::new(r.to_u64().expect("reduced residue fits in u64"), modulus)
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> PrimeModulus {
        self.modulus
    }

    fn check(self, rhs: Fp) {
        assert_eq!(
            self.modulus, rhs.modulus,
            "domain mismatch: residues modulo different primes"
        );
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus.0)
    }
}

impl Ring for Fp {
    type Ctx = PrimeModulus;

    fn zero(ctx: &PrimeModulus) -> Self {
        Fp::new(0, *ctx)
    }

    fn one(ctx: &PrimeModulus) -> Self {
        Fp::new(1, *ctx)
    }

    fn from_rational(ctx: &PrimeModulus, q: &Rational) -> Result<Self, MathError> {
        let d = Fp::from_bigint(q.denom(), *ctx);
        if d.value == 0 {
            return Err(MathError::Characteristic { p: ctx.0 });
        }
        Ok(Fp::from_bigint(q.numer(), *ctx).mul(&d.inv()?))
    }

    fn context(&self) -> PrimeModulus {
        self.modulus
    }

    fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn add(&self, rhs: &Self) -> Self {
        self.check(*rhs);
        let p = self.modulus.0;
        let s = self.value as u128 + rhs.value as u128;
        Fp::new((s % p as u128) as u64, self.modulus)
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.check(*rhs);
        let p = self.modulus.0;
        Fp::new(
            ((self.value as u128 + p as u128 - rhs.value as u128) % p as u128) as u64,
            self.modulus,
        )
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.check(*rhs);
        Fp::new(mul_mod(self.value, rhs.value, self.modulus.0), self.modulus)
    }

    fn neg(&self) -> Self {
        Fp::new((self.modulus.0 - self.value) % self.modulus.0, self.modulus)
    }
}

impl Field for Fp {
    fn inv(&self) -> Result<Self, MathError> {
        if self.value == 0 {
            return Err(MathError::DivisionByZero);
        }
        let p = self.modulus.0;
        Ok(Fp::new(pow_mod(self.value, p - 2, p), self.modulus))
    }

    fn characteristic(ctx: &PrimeModulus) -> u64 {
        ctx.0
    }
}

impl_ring_ops!(Fp);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime(DEFAULT_PRIME));
        assert!(is_prime(2));
        assert!(!is_prime(1));
        assert!(!is_prime(1_000_001));
        assert!(is_prime(18_446_744_073_709_551_557));
        assert_eq!(PrimeModulus::new(15), Err(MathError::NotPrime(15)));
    }

    #[test]
    fn inverse_round_trip() {
        let p = PrimeModulus::new(DEFAULT_PRIME).unwrap();
        for v in [1u64, 2, 3, 999_999, 1_000_002] {
            let x = Fp::new(v, p);
            assert!(x.mul(&x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn rational_reduction() {
        let p = PrimeModulus::new(7).unwrap();
        let half = Fp::from_rational(&p, &"1/2".parse().unwrap()).unwrap();
        assert_eq!(half.value(), 4);
        let neg = Fp::from_rational(&p, &"-3".parse().unwrap()).unwrap();
        assert_eq!(neg.value(), 4);
        assert_eq!(
            Fp::from_rational(&p, &"1/14".parse().unwrap()),
            Err(MathError::Characteristic { p: 7 })
        );
    }

    #[test]
    fn mixed_moduli_are_rejected() {
        let a = Fp::new(1, PrimeModulus::new(5).unwrap());
        let b = Fp::new(1, PrimeModulus::new(7).unwrap());
        assert!(matches!(a.checked_add(&b), Err(MathError::DomainMismatch(_))));
    }
}
