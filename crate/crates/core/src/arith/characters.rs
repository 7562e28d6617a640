//! The group of Dirichlet characters mod q.
//!
//! The unit group (Z/q)* is decomposed via CRT over the prime-power factors
//! of q. Odd prime powers contribute one cyclic factor generated by a
//! primitive root; 2^e contributes {±1} × ⟨5⟩ for e ≥ 3. A character is a
//! choice of exponent on each cyclic factor, and every character value is
//! the exact root of unity e(k/D) with D the group exponent. Values are
//! materialized on demand so conjugation and multiplication stay exact.

use std::f64::consts::TAU;

use num_complex::Complex64;

use super::lambda::{euler_phi, factorize};
use crate::error::{Error, Result};

/// Default cap on the modulus accepted by [`CharacterTable::new`].
pub const MAX_CHARACTER_MODULUS: u64 = 10_000;

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (acc as u128 * base as u128 % modulus as u128) as u64;
        }
        base = (base as u128 * base as u128 % modulus as u128) as u64;
        exp >>= 1;
    }
    acc
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Smallest primitive root mod an odd prime p.
fn primitive_root_mod_p(p: u64) -> u64 {
    let factors = factorize(p - 1);
    'next: for g in 2..p {
        for (r, _) in &factors {
            if pow_mod(g, (p - 1) / r, p) == 1 {
                continue 'next;
            }
        }
        return g;
    }
    unreachable!("every odd prime has a primitive root")
}

/// Generator of the cyclic group (Z/p^e)* for odd p.
fn primitive_root_mod_pe(p: u64, e: u32) -> u64 {
    let g = primitive_root_mod_p(p);
    if e == 1 {
        return g;
    }
    // g generates mod p^e for all e >= 2 iff g^(p-1) != 1 mod p^2.
    let p2 = p * p;
    if pow_mod(g, p - 1, p2) != 1 {
        g
    } else {
        g + p
    }
}

/// One cyclic factor of (Z/q)*: residues of the ambient prime-power part
/// mapped to their discrete log along this factor's generator.
#[derive(Debug, Clone)]
struct CyclicFactor {
    /// p^e this factor lives in (the full 2-part for the two factors of 2^e).
    part_modulus: u64,
    /// Generator as a residue mod `part_modulus`.
    generator: u64,
    order: u64,
    /// dlog[n mod part_modulus] along this factor; u64::MAX marks non-units.
    dlog: Vec<u64>,
}

/// Per-character metadata.
#[derive(Debug, Clone)]
struct CharacterMeta {
    /// Exponent a_i on each cyclic factor; the character maps the i-th
    /// generator to e(a_i / d_i).
    exponents: Vec<u64>,
    /// δ = (1 - χ(-1))/2 ∈ {0, 1}.
    parity: u8,
    conductor: u64,
    conjugate_index: usize,
    /// Index of the inducing primitive character inside
    /// `CharacterTable::new(conductor)`.
    primitive_index: usize,
}

/// The full character group mod q.
///
/// Index 0 is always the principal character; the remaining order is the
/// mixed-radix enumeration of exponent vectors over the cyclic factors,
/// least-significant factor first (stable for a fixed modulus).
#[derive(Debug, Clone)]
pub struct CharacterTable {
    modulus: u64,
    order: u64,
    /// Group exponent D = lcm of factor orders; all values are e(k/D).
    exponent: u64,
    factors: Vec<CyclicFactor>,
    chars: Vec<CharacterMeta>,
}

/// A borrowed handle on one character of a [`CharacterTable`].
#[derive(Debug, Clone, Copy)]
pub struct Character<'a> {
    table: &'a CharacterTable,
    index: usize,
}

impl CharacterTable {
    /// Build the character group mod q (q ≥ 1, capped at
    /// [`MAX_CHARACTER_MODULUS`]).
    pub fn new(q: u64) -> Result<Self> {
        let mut table = Self::build_core(q)?;
        table.fill_induction_metadata()?;
        Ok(table)
    }

    /// Components, discrete logs, exponent vectors, parity and conjugation;
    /// everything except conductor/primitive metadata.
    fn build_core(q: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidArgument("modulus must be positive".into()));
        }
        if q > MAX_CHARACTER_MODULUS {
            return Err(Error::CapExceeded {
                what: "character modulus",
                requested: q,
                cap: MAX_CHARACTER_MODULUS,
            });
        }
        let mut factors = Vec::new();
        for (p, e) in factorize(q) {
            let pe = p.pow(e);
            if p == 2 {
                match e {
                    1 => {} // (Z/2)* is trivial
                    2 => {
                        // (Z/4)* = <3>, order 2
                        factors.push(build_factor(pe, 3, 2));
                    }
                    _ => {
                        // (Z/2^e)* = {±1} × <5>
                        let (sign, five) = build_two_part(pe);
                        factors.push(sign);
                        factors.push(five);
                    }
                }
            } else {
                let g = primitive_root_mod_pe(p, e);
                factors.push(build_factor(pe, g, pe / p * (p - 1)));
            }
        }
        let order = euler_phi(q);
        let exponent = factors.iter().fold(1u64, |d, f| lcm(d, f.order));
        let radices: Vec<u64> = factors.iter().map(|f| f.order).collect();
        let mut chars = Vec::with_capacity(order as usize);
        for j in 0..order {
            let exponents = digits(j, &radices);
            chars.push(CharacterMeta {
                exponents,
                parity: 0,
                conductor: 0,
                conjugate_index: 0,
                primitive_index: 0,
            });
        }
        let mut table = CharacterTable {
            modulus: q,
            order,
            exponent,
            factors,
            chars,
        };
        // Parity and conjugation need only the exponent vectors.
        let minus_one = if q == 1 { 0 } else { q - 1 };
        for j in 0..order as usize {
            let parity = if q <= 2 {
                0
            } else {
                let k = table
                    .exponent_at(j, minus_one)
                    .expect("-1 is a unit mod q");
                debug_assert!(k == 0 || 2 * k == table.exponent);
                u8::from(k != 0)
            };
            let conj: Vec<u64> = table.chars[j]
                .exponents
                .iter()
                .zip(table.factors.iter())
                .map(|(&a, f)| if a == 0 { 0 } else { f.order - a })
                .collect();
            let radices: Vec<u64> = table.factors.iter().map(|f| f.order).collect();
            let conj_index = combine(&conj, &radices) as usize;
            table.chars[j].parity = parity;
            table.chars[j].conjugate_index = conj_index;
        }
        Ok(table)
    }

    /// Conductors and inducing-primitive indices.
    fn fill_induction_metadata(&mut self) -> Result<()> {
        let q = self.modulus;
        let divisors = divisors_of(q);
        for j in 0..self.order as usize {
            let mut conductor = q;
            for &f in &divisors {
                if self.is_induced_from(j, f) {
                    conductor = f;
                    break;
                }
            }
            self.chars[j].conductor = conductor;
            self.chars[j].primitive_index = if conductor == q {
                j
            } else {
                self.primitive_index_in(j, conductor)?
            };
        }
        Ok(())
    }

    /// Does character j factor through (Z/f)*? True iff χ(n) = 1 for every
    /// n ≡ 1 (mod f) coprime to q.
    fn is_induced_from(&self, j: usize, f: u64) -> bool {
        let q = self.modulus;
        let mut n = 1 + f;
        while n <= q {
            if gcd(n % q, q) == 1 {
                if let Some(k) = self.exponent_at(j, n % q) {
                    if k != 0 {
                        return false;
                    }
                }
            }
            n += f;
        }
        true
    }

    /// Index of the primitive character mod `f` that induces character j.
    fn primitive_index_in(&self, j: usize, f: u64) -> Result<usize> {
        let sub = CharacterTable::build_core(f)?;
        // Squarefree product of primes dividing q but not f.
        let s: u64 = factorize(self.modulus)
            .into_iter()
            .map(|(p, _)| p)
            .filter(|&p| f % p != 0)
            .product();
        let radices: Vec<u64> = sub.factors.iter().map(|c| c.order).collect();
        let mut exps = Vec::with_capacity(sub.factors.len());
        for c in &sub.factors {
            // Generator of this factor as a residue mod f, then lifted to a
            // residue mod q that is ≡ 1 at every other prime of q.
            let gen_mod_f = crt(c.generator, c.part_modulus, 1, f / c.part_modulus);
            let lift = crt(gen_mod_f, f, 1, s) % self.modulus.max(1);
            let k = self
                .exponent_at(j, lift % self.modulus)
                .expect("lift is a unit mod q");
            // e(k/D) must equal e(a/ord): a = k·ord/D, exactly divisible.
            let num = k * c.order;
            debug_assert_eq!(num % self.exponent, 0);
            exps.push(num / self.exponent % c.order);
        }
        Ok(combine(&exps, &radices) as usize)
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// φ(q), the number of characters.
    #[inline]
    pub fn order(&self) -> u64 {
        self.order
    }

    /// The group exponent D: every value is e(k/D) for an integer k.
    #[inline]
    pub fn group_exponent(&self) -> u64 {
        self.exponent
    }

    /// Handle on character `index` (0 is principal).
    pub fn character(&self, index: usize) -> Character<'_> {
        assert!(index < self.order as usize, "character index out of range");
        Character { table: self, index }
    }

    /// Iterate over all characters.
    pub fn characters(&self) -> impl Iterator<Item = Character<'_>> {
        (0..self.order as usize).map(move |index| Character { table: self, index })
    }

    /// Exponent k with χ_j(n) = e(k/D), or None when gcd(n, q) > 1.
    fn exponent_at(&self, j: usize, n_mod_q: u64) -> Option<u64> {
        if self.modulus == 1 {
            return Some(0);
        }
        if gcd(n_mod_q, self.modulus) != 1 {
            return None;
        }
        let meta = &self.chars[j];
        let mut k = 0u64;
        for (a, f) in meta.exponents.iter().zip(self.factors.iter()) {
            let l = f.dlog[(n_mod_q % f.part_modulus) as usize];
            debug_assert_ne!(l, u64::MAX);
            k = (k + a * l % self.exponent * (self.exponent / f.order)) % self.exponent;
        }
        Some(k)
    }
}

fn build_factor(part_modulus: u64, generator: u64, order: u64) -> CyclicFactor {
    let mut dlog = vec![u64::MAX; part_modulus as usize];
    let mut x = 1u64;
    for l in 0..order {
        debug_assert_eq!(dlog[x as usize], u64::MAX);
        dlog[x as usize] = l;
        x = (x as u128 * generator as u128 % part_modulus as u128) as u64;
    }
    CyclicFactor {
        part_modulus,
        generator,
        order,
        dlog,
    }
}

/// The two factors of (Z/2^e)* for e ≥ 3: every odd residue is uniquely
/// (-1)^s·5^l, so sign- and 5-logs are enumerated together.
fn build_two_part(pe: u64) -> (CyclicFactor, CyclicFactor) {
    let order5 = pe / 4;
    let mut sign_dlog = vec![u64::MAX; pe as usize];
    let mut five_dlog = vec![u64::MAX; pe as usize];
    let mut x = 1u64;
    for l in 0..order5 {
        sign_dlog[x as usize] = 0;
        five_dlog[x as usize] = l;
        let neg = (pe - x) as usize;
        sign_dlog[neg] = 1;
        five_dlog[neg] = l;
        x = x * 5 % pe;
    }
    (
        CyclicFactor {
            part_modulus: pe,
            generator: pe - 1,
            order: 2,
            dlog: sign_dlog,
        },
        CyclicFactor {
            part_modulus: pe,
            generator: 5,
            order: order5,
            dlog: five_dlog,
        },
    )
}

/// Mixed-radix digits of j, least significant first.
fn digits(mut j: u64, radices: &[u64]) -> Vec<u64> {
    let mut out = Vec::with_capacity(radices.len());
    for &r in radices {
        out.push(j % r);
        j /= r;
    }
    debug_assert_eq!(j, 0);
    out
}

fn combine(digits: &[u64], radices: &[u64]) -> u64 {
    let mut j = 0u64;
    for (&d, &r) in digits.iter().zip(radices.iter()).rev() {
        debug_assert!(d < r);
        j = j * r + d;
    }
    j
}

fn divisors_of(q: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=q).filter(|d| q % d == 0).collect();
    out.sort_unstable();
    out
}

/// CRT for coprime moduli: the residue mod m1·m2 that is a mod m1, b mod m2.
fn crt(a: u64, m1: u64, b: u64, m2: u64) -> u64 {
    if m1 == 1 {
        return b % m2.max(1);
    }
    if m2 == 1 {
        return a % m1;
    }
    debug_assert_eq!(gcd(m1, m2), 1);
    // x = a + m1 * t, t ≡ (b - a) * m1^{-1} (mod m2)
    let m1_inv = mod_inverse(m1 % m2, m2);
    let diff = ((b % m2) + m2 - (a % m2)) % m2;
    let t = (diff as u128 * m1_inv as u128 % m2 as u128) as u64;
    a + m1 * t
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    // Extended Euclid; gcd(a, m) = 1.
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    (old_s.rem_euclid(m as i128)) as u64
}

impl<'a> Character<'a> {
    #[inline]
    pub fn table(&self) -> &'a CharacterTable {
        self.table
    }

    #[inline]
    pub fn index(&self) -> usize {
        self.index
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.table.modulus
    }

    /// χ(n) as a complex number (an exact root of unity up to one sin/cos
    /// rounding), 0 when gcd(n, q) > 1.
    pub fn eval(&self, n: u64) -> Complex64 {
        match self.exponent_of(n) {
            None => Complex64::new(0.0, 0.0),
            Some(0) => Complex64::new(1.0, 0.0),
            Some(k) => {
                let d = self.table.exponent;
                // Exact half/quarter turns avoid sin/cos rounding noise.
                if 2 * k == d {
                    return Complex64::new(-1.0, 0.0);
                }
                if 4 * k == d {
                    return Complex64::new(0.0, 1.0);
                }
                if 4 * k == 3 * d {
                    return Complex64::new(0.0, -1.0);
                }
                let (s, c) = (TAU * k as f64 / d as f64).sin_cos();
                Complex64::new(c, s)
            }
        }
    }

    /// Exponent k with χ(n) = e(k/D), None when gcd(n, q) > 1.
    #[inline]
    pub fn exponent_of(&self, n: u64) -> Option<u64> {
        self.table.exponent_at(self.index, n % self.table.modulus)
    }

    /// E₀(χ): is this the principal character?
    #[inline]
    pub fn is_principal(&self) -> bool {
        self.index == 0
    }

    /// δ = (1 − χ(−1))/2: 0 for even characters, 1 for odd ones.
    #[inline]
    pub fn parity(&self) -> u8 {
        self.table.chars[self.index].parity
    }

    /// Smallest modulus whose character induces this one.
    #[inline]
    pub fn conductor(&self) -> u64 {
        self.table.chars[self.index].conductor
    }

    #[inline]
    pub fn is_primitive(&self) -> bool {
        self.conductor() == self.table.modulus
    }

    /// Index of the conjugate character in the same table.
    #[inline]
    pub fn conjugate_index(&self) -> usize {
        self.table.chars[self.index].conjugate_index
    }

    pub fn conjugate(&self) -> Character<'a> {
        Character {
            table: self.table,
            index: self.conjugate_index(),
        }
    }

    /// (conductor, index of the inducing primitive character in the table
    /// mod conductor).
    #[inline]
    pub fn inducing_primitive(&self) -> (u64, usize) {
        let meta = &self.table.chars[self.index];
        (meta.conductor, meta.primitive_index)
    }

    /// Is this character fixed by conjugation (all values real)?
    pub fn is_self_conjugate(&self) -> bool {
        self.conjugate_index() == self.index
    }

    /// Multiplicative order of the character.
    pub fn order(&self) -> u64 {
        self.table.chars[self.index]
            .exponents
            .iter()
            .zip(self.table.factors.iter())
            .fold(1u64, |acc, (&a, f)| {
                lcm(acc, if a == 0 { 1 } else { f.order / gcd(a, f.order) })
            })
    }
}

/// Gauss sum τ(χ) = Σ_{a=1}^{q} χ(a) e(a/q); requires χ primitive.
///
/// |τ(χ)| = √q for primitive characters, which callers use as a check.
pub fn gauss_sum(chi: &Character<'_>) -> Result<Complex64> {
    let q = chi.modulus();
    if q == 1 {
        // Single term e(1/1) = 1.
        return Ok(Complex64::new(1.0, 0.0));
    }
    if !chi.is_primitive() {
        return Err(Error::ImprimitiveCharacter {
            modulus: q,
            index: chi.index(),
            conductor: chi.conductor(),
        });
    }
    let mut sum = Complex64::new(0.0, 0.0);
    for a in 1..=q {
        let v = chi.eval(a);
        if v != Complex64::new(0.0, 0.0) {
            let (s, c) = (TAU * a as f64 / q as f64).sin_cos();
            sum += v * Complex64::new(c, s);
        }
    }
    Ok(sum)
}
