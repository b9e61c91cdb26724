//! Exact arithmetic in GF(p^k).
//!
//! Elements are stored as their canonical integer encoding: the element with
//! polynomial representative `c_0 + c_1 x + ... + c_{k-1} x^{k-1}` encodes as
//! `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`. Multiplication goes through
//! discrete log tables built from the field's primitive element, addition
//! through a digit table for small fields.
//!
//! Subfield towers GF(q) ⊂ GF(q^m) are two independent fields joined by an
//! explicitly computed embedding (see [`Tower`]).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use thiserror::Error;

/// Largest field order we build tables for.
pub const MAX_ORDER: u32 = 1 << 22;

/// Fields up to this order get a full addition table.
const ADD_TABLE_MAX: u32 = 1024;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{k} exceeds the supported bound {MAX_ORDER}")]
    TooLarge { p: u32, k: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("element {0} does not lie in the embedded base field")]
    NotInBase(u32),
    #[error("tower degree must be at least 1")]
    BadTowerDegree,
}

/// Raw encoded field element. Meaningful only together with its [`FieldSpec`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// GF(p^k) with a fixed monic primitive modulus.
///
/// For `k > 1` the modulus is the smallest monic primitive polynomial of
/// degree `k`, where polynomials are ordered by the integer encoding of their
/// lower coefficients. For `k = 1` the modulus is `x` and the generator is the
/// least primitive root modulo `p`.
pub struct FieldSpec {
    p: u32,
    k: u32,
    order: u32,
    modulus: Vec<u32>,
    generator: Elem,
    // exp is doubled so that exp[log a + log b] needs no reduction
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u32>>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^k`, if it is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut rest, mut k) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Dense polynomials over GF(p), coefficients from the constant term up.
mod poly {
    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    /// Remainder of `a` modulo the monic polynomial `m`.
    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        while r.len() > dm {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - dm;
            for (i, &c) in m.iter().enumerate() {
                let idx = shift + i;
                r[idx] = (r[idx] + p - (lead as u64 * c as u64 % p as u64) as u32) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u32; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = ((out[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
            }
        }
        rem(&out, m, p)
    }

    pub fn powmod(base: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
        let mut result = vec![1u32];
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                result = mulmod(&result, &b, m, p);
            }
            b = mulmod(&b, &b, m, p);
            e >>= 1;
        }
        result
    }

    /// Monic polynomial of degree `deg` whose lower coefficients are the base-p
    /// digits of `code`.
    pub fn monic_from_code(mut code: u64, deg: u32, p: u32) -> Vec<u32> {
        let mut c = Vec::with_capacity(deg as usize + 1);
        for _ in 0..deg {
            c.push((code % p as u64) as u32);
            code /= p as u64;
        }
        c.push(1);
        c
    }

    /// Irreducibility by trial division against every monic polynomial of
    /// degree 1..=deg/2.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let deg = (f.len() - 1) as u32;
        for d in 1..=deg / 2 {
            for code in 0..(p as u64).pow(d) {
                let g = monic_from_code(code, d, p);
                if rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

impl FieldSpec {
    /// Builds GF(p^k) with its deterministic modulus.
    pub fn new(p: u32, k: u32) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if k < 1 {
            return Err(FieldError::ZeroDegree);
        }
        let order = (p as u64)
            .checked_pow(k)
            .filter(|&o| o <= MAX_ORDER as u64)
            .ok_or(FieldError::TooLarge { p, k })? as u32;
        let n = (order - 1) as u64;
        let factors = prime_factors(n);

        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            let m = (0..(p as u64).pow(k))
                .map(|code| poly::monic_from_code(code, k, p))
                .find(|f| {
                    poly::is_irreducible(f, p)
                        && factors
                            .iter()
                            .all(|&r| poly::powmod(&[0, 1], n / r, f, p) != [1])
                })
                .expect("a primitive polynomial exists for every p^k");
            m
        };

        let mut exp = vec![0u32; 2 * n as usize];
        let generator;
        if k == 1 {
            let g = (1..p)
                .find(|&g| {
                    factors.iter().all(|&r| {
                        let mut acc = 1u64;
                        for _ in 0..n / r {
                            acc = acc * g as u64 % p as u64;
                        }
                        acc != 1
                    })
                })
                .unwrap_or(1);
            generator = Elem(g);
            let mut acc = 1u64;
            for slot in exp.iter_mut().take(n as usize) {
                *slot = acc as u32;
                acc = acc * g as u64 % p as u64;
            }
        } else {
            generator = Elem(p);
            let mut digits = vec![0u32; k as usize];
            digits[0] = 1;
            for slot in exp.iter_mut().take(n as usize) {
                *slot = encode(&digits, p);
                // multiply by x and reduce with x^k = -(c_0 + ... + c_{k-1} x^{k-1})
                let top = digits[k as usize - 1];
                for i in (1..k as usize).rev() {
                    digits[i] = digits[i - 1];
                }
                digits[0] = 0;
                if top != 0 {
                    for (i, d) in digits.iter_mut().enumerate() {
                        let sub = (top as u64 * modulus[i] as u64 % p as u64) as u32;
                        *d = (*d + p - sub) % p;
                    }
                }
            }
        }
        for i in 0..n as usize {
            exp[i + n as usize] = exp[i];
        }
        let mut log = vec![u32::MAX; order as usize];
        for (i, &e) in exp.iter().take(n as usize).enumerate() {
            debug_assert_eq!(log[e as usize], u32::MAX, "generator is not primitive");
            log[e as usize] = i as u32;
        }

        let neg = (0..order)
            .map(|a| {
                let d = decode(a, p, k);
                let nd: Vec<u32> = d.iter().map(|&c| (p - c) % p).collect();
                encode(&nd, p)
            })
            .collect();
        let add = (order <= ADD_TABLE_MAX).then(|| {
            let mut t = vec![0u32; (order * order) as usize];
            for a in 0..order {
                for b in 0..order {
                    t[(a * order + b) as usize] = add_digits(a, b, p);
                }
            }
            t
        });

        Ok(Self {
            p,
            k,
            order,
            modulus,
            generator,
            exp,
            log,
            neg,
            add,
        })
    }

    /// The field of order `q`, which must be a prime power.
    pub fn with_order(q: u32) -> Result<Self, FieldError> {
        let (p, k) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        Self::new(p, k)
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.k
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Modulus coefficients from the constant term up, including the leading 1.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> Elem {
        self.generator
    }

    pub fn is_even(&self) -> bool {
        self.p == 2
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.order).map(Elem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (1..self.order).map(Elem)
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn element(&self, value: u32) -> FieldElement<'_> {
        assert!(value < self.order, "encoding {value} out of range");
        FieldElement {
            field: self,
            value: Elem(value),
        }
    }

    /// Polynomial representative `[c_0, ..., c_{k-1}]` of an element.
    pub fn to_poly(&self, a: Elem) -> Vec<u32> {
        decode(a.0, self.p, self.k)
    }

    /// Element with the given polynomial representative (reduced modulo the
    /// modulus if longer than `k`).
    pub fn from_poly(&self, coeffs: &[u32]) -> Elem {
        let c: Vec<u32> = coeffs.iter().map(|&c| c % self.p).collect();
        if self.k == 1 {
            return Elem(c.first().copied().unwrap_or(0));
        }
        let mut r = poly::rem(&c, &self.modulus, self.p);
        r.resize(self.k as usize, 0);
        Elem(encode(&r, self.p))
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        match &self.add {
            Some(t) => Elem(t[(a.0 * self.order + b.0) as usize]),
            None => Elem(add_digits(a.0, b.0, self.p)),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        Elem(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    /// Multiplicative inverse. Panics on zero; see [`FieldSpec::checked_inv`].
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        assert!(!a.is_zero(), "inverse of zero in GF({})", self.order);
        let n = self.order - 1;
        Elem(self.exp[((n - self.log[a.0 as usize]) % n) as usize])
    }

    pub fn checked_inv(&self, a: Elem) -> Result<Elem, FieldError> {
        if a.is_zero() {
            Err(FieldError::DivisionByZero)
        } else {
            Ok(self.inv(a))
        }
    }

    #[inline]
    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    /// `a^e` for a signed exponent; negative exponents need `a != 0`.
    pub fn pow(&self, a: Elem, e: i64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.is_zero() {
            assert!(e > 0, "negative power of zero");
            return Elem::ZERO;
        }
        let n = (self.order - 1) as i64;
        let l = self.log[a.0 as usize] as i64;
        Elem(self.exp[(l * e.rem_euclid(n)).rem_euclid(n) as usize])
    }

    /// Discrete logarithm with respect to the generator.
    pub fn log(&self, a: Elem) -> Option<u32> {
        (!a.is_zero()).then(|| self.log[a.0 as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: Elem) -> u64 {
        let n = (self.order - 1) as u64;
        n / gcd(n, self.log[a.0 as usize] as u64)
    }

    /// Sum of several elements.
    pub fn sum<I: IntoIterator<Item = Elem>>(&self, it: I) -> Elem {
        it.into_iter().fold(Elem::ZERO, |acc, x| self.add(acc, x))
    }

    #[inline]
    pub fn dot(&self, a: &[Elem], b: &[Elem]) -> Elem {
        a.iter()
            .zip(b)
            .fold(Elem::ZERO, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }
}

fn decode(mut a: u32, p: u32, k: u32) -> Vec<u32> {
    let mut d = Vec::with_capacity(k as usize);
    for _ in 0..k {
        d.push(a % p);
        a /= p;
    }
    d
}

fn encode(digits: &[u32], p: u32) -> u32 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn add_digits(mut a: u32, mut b: u32, p: u32) -> u32 {
    let (mut out, mut scale) = (0, 1);
    while a > 0 || b > 0 {
        out += ((a % p + b % p) % p) * scale;
        a /= p;
        b /= p;
        scale *= p;
    }
    out
}

/// A field element bound to its field, with checked arithmetic.
///
/// The operator impls panic on mixed fields; the `try_*` methods report
/// [`FieldError::MixedFields`] instead.
#[derive(Clone, Copy)]
pub struct FieldElement<'a> {
    field: &'a FieldSpec,
    value: Elem,
}

impl<'a> FieldElement<'a> {
    pub fn new(field: &'a FieldSpec, value: Elem) -> Self {
        assert!(value.0 < field.order);
        Self { field, value }
    }

    pub fn field(&self) -> &'a FieldSpec {
        self.field
    }

    pub fn value(&self) -> Elem {
        self.value
    }

    fn same_field(&self, other: &Self) -> Result<(), FieldError> {
        if std::ptr::eq(self.field, other.field) || self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::MixedFields)
        }
    }

    pub fn try_add(self, other: Self) -> Result<Self, FieldError> {
        self.same_field(&other)?;
        Ok(Self::new(
            self.field,
            self.field.add(self.value, other.value),
        ))
    }

    pub fn try_sub(self, other: Self) -> Result<Self, FieldError> {
        self.same_field(&other)?;
        Ok(Self::new(
            self.field,
            self.field.sub(self.value, other.value),
        ))
    }

    pub fn try_mul(self, other: Self) -> Result<Self, FieldError> {
        self.same_field(&other)?;
        Ok(Self::new(
            self.field,
            self.field.mul(self.value, other.value),
        ))
    }

    pub fn inv(self) -> Result<Self, FieldError> {
        Ok(Self::new(self.field, self.field.checked_inv(self.value)?))
    }

    pub fn pow(self, e: i64) -> Result<Self, FieldError> {
        if self.value.is_zero() && e < 0 {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Self::new(self.field, self.field.pow(self.value, e)))
    }
}

impl PartialEq for FieldElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other).is_ok() && self.value == other.value
    }
}

impl Eq for FieldElement<'_> {}

impl fmt::Debug for FieldElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@GF({})", self.value.0, self.field.order)
    }
}

impl<'a> Add for FieldElement<'a> {
    type Output = FieldElement<'a>;
    fn add(self, rhs: Self) -> Self::Output {
        self.try_add(rhs).expect("mixed fields")
    }
}

impl<'a> Sub for FieldElement<'a> {
    type Output = FieldElement<'a>;
    fn sub(self, rhs: Self) -> Self::Output {
        self.try_sub(rhs).expect("mixed fields")
    }
}

impl<'a> Mul for FieldElement<'a> {
    type Output = FieldElement<'a>;
    fn mul(self, rhs: Self) -> Self::Output {
        self.try_mul(rhs).expect("mixed fields")
    }
}

impl<'a> Neg for FieldElement<'a> {
    type Output = FieldElement<'a>;
    fn neg(self) -> Self::Output {
        Self::new(self.field, self.field.neg(self.value))
    }
}

/// GF(q) ⊂ GF(q^m), both built as ordinary prime-power fields and joined by an
/// explicit embedding.
///
/// The base generator `g` is sent to a root of the base modulus inside the
/// extension that is a power of `g'^((q^m-1)/(q-1))`, so the image has order
/// `q - 1`. `coords` expresses every extension element in the basis
/// `1, w, ..., w^{m-1}` over the embedded base, `w` the extension generator.
pub struct Tower {
    base: Arc<FieldSpec>,
    ext: Arc<FieldSpec>,
    degree: u32,
    embed_image: Elem,
    embed: Vec<Elem>,
    restrict: Vec<Option<Elem>>,
    coords: Vec<Elem>,
}

impl fmt::Debug for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Tower(GF({}) < GF({}))",
            self.base.order(),
            self.ext.order()
        )
    }
}

impl Tower {
    pub fn new(base: Arc<FieldSpec>, degree: u32) -> Result<Self, FieldError> {
        if degree < 1 {
            return Err(FieldError::BadTowerDegree);
        }
        let (p, k, q) = (base.p, base.k, base.order);
        let ext = Arc::new(FieldSpec::new(p, k * degree)?);
        let big_n = (ext.order - 1) / (q - 1);

        let embed_image = if k == 1 {
            Elem(base.generator.0)
        } else {
            let h = ext.pow(ext.generator, big_n as i64);
            (1..q - 1)
                .filter(|&j| gcd(j as u64, (q - 1) as u64) == 1)
                .map(|j| ext.pow(h, j as i64))
                .find(|&r| {
                    let val = base
                        .modulus
                        .iter()
                        .enumerate()
                        .map(|(i, &c)| ext.mul(Elem(c), ext.pow(r, i as i64)))
                        .fold(Elem::ZERO, |acc, x| ext.add(acc, x));
                    val.is_zero()
                })
                .expect("base modulus has a root in every extension")
        };

        // for k > 1 the root of the modulus is the image of x, for k = 1 the
        // embedding is the identity on the prime field
        let x_image = if k == 1 { Elem::ONE } else { embed_image };
        let embed: Vec<Elem> = (0..q)
            .map(|a| {
                let d = decode(a, p, k);
                d.iter()
                    .enumerate()
                    .map(|(i, &c)| ext.mul(Elem(c), ext.pow(x_image, i as i64)))
                    .fold(Elem::ZERO, |acc, x| ext.add(acc, x))
            })
            .collect();
        let mut restrict = vec![None; ext.order as usize];
        for (a, &e) in embed.iter().enumerate() {
            restrict[e.0 as usize] = Some(Elem(a as u32));
        }

        let m = degree as usize;
        let w = ext.generator;
        let powers: Vec<Elem> = (0..m).map(|i| ext.pow(w, i as i64)).collect();
        let mut coords = vec![Elem::ZERO; ext.order as usize * m];
        let mut digits = vec![0u32; m];
        for _ in 0..ext.order {
            let value = digits
                .iter()
                .zip(&powers)
                .map(|(&c, &wp)| ext.mul(embed[c as usize], wp))
                .fold(Elem::ZERO, |acc, x| ext.add(acc, x));
            for (i, &c) in digits.iter().enumerate() {
                coords[value.0 as usize * m + i] = Elem(c);
            }
            // odometer over base^m
            for d in digits.iter_mut() {
                *d += 1;
                if *d < q {
                    break;
                }
                *d = 0;
            }
        }

        Ok(Self {
            base,
            ext,
            degree,
            embed_image,
            embed,
            restrict,
            coords,
        })
    }

    pub fn base(&self) -> &FieldSpec {
        &self.base
    }

    pub fn ext(&self) -> &FieldSpec {
        &self.ext
    }

    pub fn base_arc(&self) -> &Arc<FieldSpec> {
        &self.base
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn embed_image(&self) -> Elem {
        self.embed_image
    }

    #[inline]
    pub fn embed(&self, a: Elem) -> Elem {
        self.embed[a.0 as usize]
    }

    /// Checked embedding of a bound element.
    pub fn embed_element<'a>(
        &'a self,
        a: FieldElement<'_>,
    ) -> Result<FieldElement<'a>, FieldError> {
        if a.field() != &*self.base {
            return Err(FieldError::MixedFields);
        }
        Ok(FieldElement::new(&self.ext, self.embed(a.value())))
    }

    /// Inverse of [`Tower::embed`] on its image.
    #[inline]
    pub fn restrict(&self, a: Elem) -> Option<Elem> {
        self.restrict[a.0 as usize]
    }

    pub fn try_restrict(&self, a: Elem) -> Result<Elem, FieldError> {
        self.restrict(a).ok_or(FieldError::NotInBase(a.0))
    }

    /// `a^(q^i)`.
    pub fn frobenius(&self, a: Elem, i: u32) -> Elem {
        if a.is_zero() {
            return a;
        }
        let n = (self.ext.order - 1) as u64;
        let mut e = 1u64;
        for _ in 0..i % self.degree {
            e = e * self.base.order as u64 % n;
        }
        self.ext.pow(a, e as i64)
    }

    /// Coordinates of `a` over the base in the basis `1, w, ..., w^{m-1}`.
    #[inline]
    pub fn coords(&self, a: Elem) -> &[Elem] {
        let m = self.degree as usize;
        &self.coords[a.0 as usize * m..(a.0 as usize + 1) * m]
    }
}

/// GF(q) together with its quadratic and cubic extensions.
#[derive(Debug)]
pub struct Fields {
    pub base: Arc<FieldSpec>,
    pub quad: Tower,
    pub cubic: Tower,
}

impl Fields {
    pub fn new(q: u32) -> Result<Self, FieldError> {
        let base = Arc::new(FieldSpec::with_order(q)?);
        let quad = Tower::new(base.clone(), 2)?;
        let cubic = Tower::new(base.clone(), 3)?;
        Ok(Self { base, quad, cubic })
    }

    pub fn q(&self) -> u32 {
        self.base.order()
    }

    pub fn f(&self) -> &FieldSpec {
        &self.base
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Polynomial product without reduction, oracle for encoded multiplication.
    fn naive_poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut out = vec![0; a.len() + b.len()];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        out
    }

    /// Order of x modulo f by repeated multiplication.
    fn naive_order_of_x(f: &[u32], p: u32) -> u64 {
        let mut cur = vec![0u32, 1];
        let mut n = 1;
        loop {
            let r = poly::rem(&cur, f, p);
            if r == [1] {
                return n;
            }
            cur = naive_poly_mul(&r, &[0, 1], p);
            n += 1;
            assert!(n < 1_000_000);
        }
    }

    #[test]
    fn prime_field_has_trivial_modulus() {
        let f = FieldSpec::new(3, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.order(), 3);
        assert_eq!(f.generator(), Elem(2));
    }

    #[test]
    fn gf4_modulus_is_the_unique_irreducible_quadratic() {
        // exhaustive: monic quadratics over GF(2) without roots
        let irreducible: Vec<Vec<u32>> = (0..4u32)
            .map(|c| vec![c & 1, c >> 1, 1])
            .filter(|f| (0..2).all(|x| (f[0] + f[1] * x + f[2] * x * x) % 2 != 0))
            .collect();
        assert_eq!(irreducible, vec![vec![1, 1, 1]]);
        assert_eq!(FieldSpec::new(2, 2).unwrap().modulus(), &[1, 1, 1]);
    }

    #[test]
    fn gf27_modulus_is_smallest_primitive_cubic() {
        let f = FieldSpec::new(3, 3).unwrap();
        let first = (0..27u64)
            .map(|code| poly::monic_from_code(code, 3, 3))
            .find(|m| {
                (0..3).all(|x| (m[0] + m[1] * x + m[2] * x * x + x * x * x) % 3 != 0)
                    && naive_order_of_x(m, 3) == 26
            })
            .unwrap();
        assert_eq!(f.modulus(), first.as_slice());
        assert_eq!(f.mult_order(f.generator()), 26);
    }

    #[test]
    fn gf8_modulus_matches_singer_example() {
        assert_eq!(FieldSpec::new(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
    }

    #[test]
    fn small_products() {
        let f3 = FieldSpec::new(3, 1).unwrap();
        assert_eq!(f3.mul(Elem(2), Elem(2)), Elem(1));
        let f4 = FieldSpec::new(2, 2).unwrap();
        // x * (x + 1) = x^2 + x = 1
        let prod = naive_poly_mul(&[0, 1], &[1, 1], 2);
        assert_eq!(f4.from_poly(&prod), Elem(1));
        assert_eq!(f4.mul(Elem(2), Elem(3)), Elem(1));
        let f5 = FieldSpec::new(5, 1).unwrap();
        assert_eq!(f5.inv(Elem(2)), Elem(3));
        assert_eq!(f5.checked_inv(Elem(0)), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn mul_agrees_with_polynomial_oracle() {
        for &(p, k) in &[(2, 3), (3, 2), (2, 4), (5, 2), (3, 3)] {
            let f = FieldSpec::new(p, k).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    let prod = naive_poly_mul(&f.to_poly(a), &f.to_poly(b), p);
                    assert_eq!(f.mul(a, b), f.from_poly(&prod));
                }
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(FieldSpec::new(4, 1).unwrap_err(), FieldError::NotPrime(4));
        assert_eq!(FieldSpec::new(3, 0).unwrap_err(), FieldError::ZeroDegree);
        assert!(matches!(
            FieldSpec::new(2, 40),
            Err(FieldError::TooLarge { .. })
        ));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(9), Some((3, 2)));
    }

    #[test]
    fn bound_elements_check_fields() {
        let a = FieldSpec::new(5, 1).unwrap();
        let b = FieldSpec::new(7, 1).unwrap();
        let x = a.element(2);
        let y = b.element(2);
        assert_eq!(x.try_add(y), Err(FieldError::MixedFields));
        assert_eq!((x * a.element(3)).value(), Elem(1));
        assert_eq!(a.element(0).inv(), Err(FieldError::DivisionByZero));
        assert_eq!((-x + x).value(), Elem::ZERO);
    }

    fn check_axioms(f: &FieldSpec, a: Elem, b: Elem, c: Elem) {
        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        assert_eq!(f.add(a, b), f.add(b, a));
        assert_eq!(f.mul(a, b), f.mul(b, a));
    }

    #[test]
    fn field_axioms() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let f = FieldSpec::with_order(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a)), Elem::ONE);
                }
            }
            if q <= 5 {
                for a in f.elements() {
                    for b in f.elements() {
                        for c in f.elements() {
                            check_axioms(&f, a, b, c);
                        }
                    }
                }
            } else {
                for _ in 0..100_000 {
                    let [a, b, c] = [(); 3].map(|_| Elem(rng.gen_range(0..q)));
                    check_axioms(&f, a, b, c);
                }
            }
            assert_eq!(f.mult_order(f.generator()), (q - 1) as u64);
        }
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let base = Arc::new(FieldSpec::with_order(q).unwrap());
            for m in [2, 3] {
                let t = Tower::new(base.clone(), m).unwrap();
                let (b, e) = (t.base(), t.ext());
                assert_eq!(t.embed(Elem::ZERO), Elem::ZERO);
                assert_eq!(t.embed(Elem::ONE), Elem::ONE);
                assert_eq!(e.mult_order(t.embed(b.generator())), (q - 1) as u64);
                for x in b.elements() {
                    for y in b.elements() {
                        assert_eq!(t.embed(b.add(x, y)), e.add(t.embed(x), t.embed(y)));
                        assert_eq!(t.embed(b.mul(x, y)), e.mul(t.embed(x), t.embed(y)));
                    }
                    assert_eq!(t.restrict(t.embed(x)), Some(x));
                }
            }
        }
    }

    #[test]
    fn frobenius_fixes_exactly_the_base() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let base = Arc::new(FieldSpec::with_order(q).unwrap());
            for m in [2, 3] {
                let t = Tower::new(base.clone(), m).unwrap();
                if t.ext().order() > 729 {
                    continue;
                }
                let e = t.ext();
                for a in e.elements() {
                    assert_eq!(t.frobenius(a, m), a);
                    let fixed = t.frobenius(a, 1) == a;
                    assert_eq!(fixed, t.restrict(a).is_some());
                    for b in e.elements().step_by(7) {
                        assert_eq!(
                            t.frobenius(e.mul(a, b), 1),
                            e.mul(t.frobenius(a, 1), t.frobenius(b, 1))
                        );
                        assert_eq!(
                            t.frobenius(e.add(a, b), 1),
                            e.add(t.frobenius(a, 1), t.frobenius(b, 1))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_examples() {
        let base = Arc::new(FieldSpec::new(3, 1).unwrap());
        let t9 = Tower::new(base.clone(), 2).unwrap();
        for a in t9.ext().elements() {
            assert_eq!(t9.frobenius(t9.frobenius(a, 1), 1), a);
        }
        let t27 = Tower::new(base, 3).unwrap();
        let g = t27.ext().generator();
        assert_eq!(t27.frobenius(g, 1), t27.ext().pow(g, 3));

        let b2 = Arc::new(FieldSpec::new(2, 1).unwrap());
        let t8 = Tower::new(b2, 3).unwrap();
        for x in [Elem(0), Elem(1)] {
            assert_eq!(t8.frobenius(t8.embed(x), 1), t8.embed(x));
        }

        let b4 = Arc::new(FieldSpec::new(2, 2).unwrap());
        let t64 = Tower::new(b4.clone(), 3).unwrap();
        assert_eq!(t64.ext().mult_order(t64.embed(b4.generator())), 3);
    }

    #[test]
    fn coordinates_reconstruct_elements() {
        let fields = Fields::new(4).unwrap();
        let t = &fields.cubic;
        let e = t.ext();
        let w = e.generator();
        for a in e.elements() {
            let c = t.coords(a);
            let back = (0..3)
                .map(|i| e.mul(t.embed(c[i]), e.pow(w, i as i64)))
                .fold(Elem::ZERO, |acc, x| e.add(acc, x));
            assert_eq!(back, a);
        }
    }
}
