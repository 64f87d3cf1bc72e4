//! Word-sized prime-field arithmetic used by the multimodular linear algebra
//! and the modular polynomial gcd.
//!
//! Primes are taken just below 2^62 so that Montgomery products fit in a
//! `u128` without overflow checks. Residues are kept in Montgomery form
//! inside [`Field`]; conversion in and out is explicit.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arithmetic modulo an odd prime `p < 2^62`, Montgomery representation.
#[derive(Clone, Debug)]
pub struct Field {
    p: u64,
    /// -p^{-1} mod 2^64
    neg_inv: u64,
    /// 2^128 mod p
    r2: u64,
}

impl Field {
    pub fn new(p: u64) -> Self {
        assert!(
            p % 2 == 1 && p < (1 << 62),
            "modulus must be an odd prime below 2^62"
        );
        // Newton iteration for p^{-1} mod 2^64.
        let mut inv: u64 = 1;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        let r2 = ((r as u128 * r as u128) % p as u128) as u64;
        Field {
            p,
            neg_inv: inv.wrapping_neg(),
            r2,
        }
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    fn reduce(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.neg_inv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a as u128 * b as u128)
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    /// Canonical residue -> Montgomery form.
    #[inline]
    pub fn to_mont(&self, a: u64) -> u64 {
        self.mul(a % self.p, self.r2)
    }

    /// Montgomery form -> canonical residue.
    #[inline]
    pub fn from_mont(&self, a: u64) -> u64 {
        self.reduce(a as u128)
    }

    pub fn zero(&self) -> u64 {
        0
    }

    pub fn one(&self) -> u64 {
        self.to_mont(1)
    }

    pub fn from_i64(&self, v: i64) -> u64 {
        let r = v.rem_euclid(self.p as i64) as u64;
        self.to_mont(r)
    }

    pub fn from_bigint(&self, v: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        let r = v.mod_floor(&m).to_u64().expect("residue fits in u64");
        self.to_mont(r)
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero element (Fermat).
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.pow(a, self.p - 2)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
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

/// Primes below 2^62 in descending order.
pub fn primes() -> impl Iterator<Item = u64> {
    let mut candidate = (1u64 << 62) - 1;
    std::iter::from_fn(move || {
        while candidate > 3 {
            let c = candidate;
            candidate -= 2;
            if is_prime(c) {
                return Some(c);
            }
        }
        None
    })
}

/// Incremental Chinese remaindering of a single integer with symmetric
/// (balanced) representative.
#[derive(Clone, Debug)]
pub struct Crt {
    value: BigInt,
    modulus: BigInt,
}

impl Default for Crt {
    fn default() -> Self {
        Crt {
            value: BigInt::zero(),
            modulus: BigInt::one(),
        }
    }
}

impl Crt {
    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    /// Fold in `residue` (canonical, not Montgomery) modulo prime `p`.
    /// Returns true if the balanced representative changed.
    pub fn push(&mut self, residue: u64, p: u64) -> bool {
        let pb = BigInt::from(p);
        let current = self.value.mod_floor(&pb).to_u64().unwrap();
        let m_mod_p = self.modulus.mod_floor(&pb).to_u64().unwrap();
        let diff = (residue + p - current) % p;
        let changed = diff != 0;
        if changed {
            let k = mul_mod(diff, pow_mod(m_mod_p, p - 2, p), p);
            self.value += &self.modulus * BigInt::from(k);
        }
        self.modulus *= &pb;
        let half = &self.modulus >> 1;
        if self.value > half {
            self.value -= &self.modulus;
        } else if self.value < -&half {
            self.value += &self.modulus;
        }
        changed
    }

    pub fn value(&self) -> &BigInt {
        &self.value
    }
}

/// Garner reconstruction of many integers sharing one prime list.
/// `residues[k]` holds the canonical residues of every value modulo `primes[k]`.
pub fn crt_many(primes: &[u64], residues: &[Vec<u64>]) -> Vec<BigInt> {
    assert_eq!(primes.len(), residues.len());
    if primes.is_empty() {
        return Vec::new();
    }
    let count = residues[0].len();
    let k = primes.len();
    // Mixed-radix coefficients: x = v0 + v1 p0 + v2 p0 p1 + ...
    // inv_prefix[i] = (p0 ... p_{i-1})^{-1} mod p_i
    let mut inv_prefix = vec![0u64; k];
    for i in 0..k {
        let mut prod = 1u64;
        for &pj in &primes[..i] {
            prod = mul_mod(prod, pj % primes[i], primes[i]);
        }
        inv_prefix[i] = pow_mod(prod, primes[i] - 2, primes[i]);
    }
    let mut modulus = BigUint::one();
    for &p in primes {
        modulus *= p;
    }
    let half = &modulus >> 1;
    let modulus = BigInt::from_biguint(Sign::Plus, modulus);
    let half = BigInt::from_biguint(Sign::Plus, half);

    let mut out = Vec::with_capacity(count);
    let mut digits = vec![0u64; k];
    for idx in 0..count {
        for i in 0..k {
            let p = primes[i];
            // evaluate the partial mixed-radix number modulo p
            let mut acc = 0u64;
            let mut radix = 1u64;
            for j in 0..i {
                acc = (acc + mul_mod(digits[j], radix, p)) % p;
                radix = mul_mod(radix, primes[j] % p, p);
            }
            let r = residues[i][idx] % p;
            digits[i] = mul_mod((r + p - acc) % p, inv_prefix[i], p);
        }
        let mut value = BigInt::zero();
        for i in (0..k).rev() {
            value = value * BigInt::from(primes[i]) + BigInt::from(digits[i]);
        }
        if value > half {
            value -= &modulus;
        }
        out.push(value);
    }
    out
}

/// Number of bits of `|v|`, i.e. the smallest b with |v| < 2^b.
pub fn bit_length(v: &BigInt) -> u64 {
    v.abs().bits()
}

/// Pick primes (descending from 2^62) whose product exceeds `2^bits`,
/// skipping any for which `reject` returns true.
pub fn primes_exceeding(bits: u64, mut reject: impl FnMut(u64) -> bool) -> Vec<u64> {
    let mut chosen = Vec::new();
    let mut acc_bits = 0u64;
    for p in primes() {
        if reject(p) {
            continue;
        }
        chosen.push(p);
        // every chosen prime exceeds 2^61
        acc_bits += 61;
        if acc_bits > bits {
            break;
        }
    }
    chosen
}
