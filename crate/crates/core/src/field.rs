//! Exact arithmetic in GF(q) with q = n², n an odd prime power.
//!
//! A [`FieldContext`] fixes a deterministic irreducible modulus and
//! primitive element ω, and precomputes discrete-log/exponent tables, the
//! index-(n+1)/2 multiplicative subgroup R = ⟨ω^r⟩, the subfield
//! F_n = ⟨ω^{2r}⟩ ∪ {0}, and the unique decomposition of every element
//! over the basis {1, ω^r} of GF(q) over F_n.
//!
//! Elements are stored as packed base-p digit codes, so a [`FieldElem`]
//! is only meaningful relative to the context that produced it.

use crate::{Error, Result};

/// Default cap on the field order q; dlog and split tables are dense.
pub const DEFAULT_ORDER_CAP: u64 = 1 << 16;

/// An element of GF(q), packed as Σ cᵢ·pⁱ over its coefficient digits.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FieldElem(u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);

    /// Raw packed code, in `[0, q)`.
    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// The unique decomposition α = ev + odd with ev ∈ F_n, odd ∈ F_n·ω^r.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct EvenOddSplit {
    pub ev: FieldElem,
    pub odd: FieldElem,
}

/// Precomputed arithmetic context for GF(q), q = p^{2m} = n².
pub struct FieldContext {
    p: u32,
    m: u32,
    n: u32,
    q: u32,
    r: u32,
    degree: usize,
    /// Monic irreducible modulus of degree 2m, coefficients low-first.
    modulus: Vec<u32>,
    omega: FieldElem,
    /// exp[k] = code of ω^k for k in 0..q-1.
    exp: Vec<u32>,
    /// dlog[code] for nonzero codes; dlog[0] is a sentinel.
    dlog: Vec<u32>,
    neg: Vec<u32>,
    r_member: Vec<bool>,
    subfield_member: Vec<bool>,
    /// split[code] = (ev code, odd code) over the basis {1, ω^r}.
    split: Vec<(u32, u32)>,
}

impl FieldContext {
    /// Builds the context for GF(p^{2m}) under the default order cap.
    pub fn new(p: u32, m: u32) -> Result<Self> {
        Self::with_cap(p, m, DEFAULT_ORDER_CAP)
    }

    /// Builds the context for the subfield order n = p^m, factoring n.
    pub fn for_subfield_order(n: u32) -> Result<Self> {
        let (p, m) = odd_prime_power(n).ok_or_else(|| {
            Error::InvalidParameter(format!("{n} is not an odd prime power"))
        })?;
        Self::new(p, m)
    }

    pub fn with_cap(p: u32, m: u32, cap: u64) -> Result<Self> {
        if !is_odd_prime(p) {
            return Err(Error::InvalidParameter(format!(
                "p = {p} must be an odd prime"
            )));
        }
        if m == 0 {
            return Err(Error::InvalidParameter("m must be positive".into()));
        }
        let degree = 2 * m as usize;
        let cap = cap.min(u32::MAX as u64);
        let q64 = (0..degree).try_fold(1u64, |acc, _| {
            let next = acc.checked_mul(p as u64)?;
            (next <= cap).then_some(next)
        });
        let Some(q64) = q64 else {
            return Err(Error::Capacity(format!(
                "field order p^{{2m}} = {p}^{degree} exceeds cap {cap}"
            )));
        };
        let q = q64 as u32;
        let n = int_pow(p, m);
        let r = n.div_ceil(2);

        let modulus = smallest_irreducible(p, degree);
        let mut ctx = FieldContext {
            p,
            m,
            n,
            q,
            r,
            degree,
            modulus,
            omega: FieldElem::ZERO,
            exp: Vec::new(),
            dlog: Vec::new(),
            neg: Vec::new(),
            r_member: Vec::new(),
            subfield_member: Vec::new(),
            split: Vec::new(),
        };
        ctx.omega = ctx.find_primitive();
        ctx.build_log_tables();
        ctx.build_membership_tables();
        ctx.build_split_table();
        Ok(ctx)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Subfield order n = p^m.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Field order q = n².
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Index r = (n+1)/2 of the subgroup R in the multiplicative group.
    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem::ZERO
    }

    pub fn one(&self) -> FieldElem {
        FieldElem(encode(&decode_one(self.degree), self.p))
    }

    pub fn omega(&self) -> FieldElem {
        self.omega
    }

    /// Element from coefficient digits (low-degree first, length ≤ 2m).
    pub fn elem(&self, coeffs: &[u32]) -> Result<FieldElem> {
        if coeffs.len() > self.degree {
            return Err(Error::InvalidParameter(format!(
                "got {} coefficients for degree-{} representation",
                coeffs.len(),
                self.degree
            )));
        }
        if let Some(c) = coeffs.iter().find(|&&c| c >= self.p) {
            return Err(Error::InvalidParameter(format!(
                "coefficient {c} out of range [0, {})",
                self.p
            )));
        }
        let mut digits = vec![0u32; self.degree];
        digits[..coeffs.len()].copy_from_slice(coeffs);
        Ok(FieldElem(encode(&digits, self.p)))
    }

    pub fn from_code(&self, code: u32) -> Result<FieldElem> {
        if code < self.q {
            Ok(FieldElem(code))
        } else {
            Err(Error::InvalidParameter(format!(
                "code {code} out of range [0, {})",
                self.q
            )))
        }
    }

    pub fn coeffs(&self, a: FieldElem) -> Vec<u32> {
        decode(a.0, self.p, self.degree)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.q).map(FieldElem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElem> {
        (1..self.q).map(FieldElem)
    }

    /// Key ordering elements by coefficient vectors, low degree first.
    pub fn lex_code(&self, a: FieldElem) -> u32 {
        let digits = decode(a.0, self.p, self.degree);
        digits.iter().fold(0u32, |acc, &c| acc * self.p + c)
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let da = decode(a.0, self.p, self.degree);
        let db = decode(b.0, self.p, self.degree);
        let sum: Vec<u32> = da
            .iter()
            .zip(&db)
            .map(|(&x, &y)| {
                let s = x + y;
                if s >= self.p {
                    s - self.p
                } else {
                    s
                }
            })
            .collect();
        FieldElem(encode(&sum, self.p))
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        FieldElem(self.neg[a.0 as usize])
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.is_zero() || b.is_zero() {
            return FieldElem::ZERO;
        }
        let k = (self.dlog[a.0 as usize] + self.dlog[b.0 as usize]) % (self.q - 1);
        FieldElem(self.exp[k as usize])
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.is_zero() {
            return Err(Error::Domain("inverse of zero".into()));
        }
        let k = (self.q - 1 - self.dlog[a.0 as usize]) % (self.q - 1);
        Ok(FieldElem(self.exp[k as usize]))
    }

    pub fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        if a.is_zero() {
            return if e == 0 { self.one() } else { FieldElem::ZERO };
        }
        let k = (self.dlog[a.0 as usize] as u64 * (e % (self.q as u64 - 1))) % (self.q as u64 - 1);
        FieldElem(self.exp[k as usize])
    }

    /// ω^k for any signed exponent.
    pub fn omega_pow(&self, k: i64) -> FieldElem {
        let order = (self.q - 1) as i64;
        let k = k.rem_euclid(order) as usize;
        FieldElem(self.exp[k])
    }

    pub fn dlog(&self, a: FieldElem) -> Result<u32> {
        if a.is_zero() {
            return Err(Error::Domain("discrete log of zero".into()));
        }
        Ok(self.dlog[a.0 as usize])
    }

    /// Multiplicative order, (q−1)/gcd(dlog a, q−1).
    pub fn mult_order(&self, a: FieldElem) -> Result<u32> {
        let d = self.dlog(a)?;
        Ok((self.q - 1) / gcd(d, self.q - 1))
    }

    /// Membership in R = ⟨ω^r⟩; zero is not in R.
    pub fn in_r(&self, a: FieldElem) -> bool {
        self.r_member[a.0 as usize]
    }

    /// Membership in the subfield F_n = ⟨ω^{2r}⟩ ∪ {0}.
    pub fn in_subfield(&self, a: FieldElem) -> bool {
        self.subfield_member[a.0 as usize]
    }

    /// Label of the R-coset of `a`: dlog(a) mod r.
    pub fn coset_label(&self, a: FieldElem) -> Result<u32> {
        Ok(self.dlog(a)? % self.r)
    }

    /// Decomposes over the basis {1, ω^r}: a = ev + odd.
    pub fn even_odd_split(&self, a: FieldElem) -> EvenOddSplit {
        let (ev, odd) = self.split[a.0 as usize];
        EvenOddSplit {
            ev: FieldElem(ev),
            odd: FieldElem(odd),
        }
    }

    fn poly_mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        poly_mul_mod(a, b, &self.modulus, self.p)
    }

    /// Smallest element (coefficient vectors compared low-degree first)
    /// of multiplicative order q−1.
    fn find_primitive(&self) -> FieldElem {
        for lex in 1..self.q {
            let digits = lex_to_digits(lex, self.p, self.degree);
            let order = self.order_by_powering(&digits);
            if order == self.q - 1 {
                return FieldElem(encode(&digits, self.p));
            }
        }
        unreachable!("every finite field has a primitive element");
    }

    fn order_by_powering(&self, digits: &[u32]) -> u32 {
        let one = decode_one(self.degree);
        let mut cur = digits.to_vec();
        let mut k = 1u32;
        while cur != one {
            cur = self.poly_mul(&cur, digits);
            k += 1;
            debug_assert!(k <= self.q, "modulus is not irreducible");
        }
        k
    }

    fn build_log_tables(&mut self) {
        let q = self.q as usize;
        self.exp = vec![0; q - 1];
        self.dlog = vec![u32::MAX; q];
        let omega = decode(self.omega.0, self.p, self.degree);
        let mut cur = decode_one(self.degree);
        for k in 0..q - 1 {
            let code = encode(&cur, self.p);
            self.exp[k] = code;
            debug_assert_eq!(self.dlog[code as usize], u32::MAX);
            self.dlog[code as usize] = k as u32;
            cur = self.poly_mul(&cur, &omega);
        }
        self.neg = (0..self.q)
            .map(|code| {
                let digits = decode(code, self.p, self.degree);
                let negd: Vec<u32> = digits
                    .iter()
                    .map(|&c| if c == 0 { 0 } else { self.p - c })
                    .collect();
                encode(&negd, self.p)
            })
            .collect();
    }

    fn build_membership_tables(&mut self) {
        let q = self.q as usize;
        self.r_member = vec![false; q];
        self.subfield_member = vec![false; q];
        self.subfield_member[0] = true;
        for (k, &code) in self.exp.iter().enumerate() {
            let k = k as u32;
            if k.is_multiple_of(self.r) {
                self.r_member[code as usize] = true;
            }
            if k.is_multiple_of(2 * self.r) {
                self.subfield_member[code as usize] = true;
            }
        }
    }

    fn build_split_table(&mut self) {
        let q = self.q as usize;
        let omega_r = FieldElem(self.exp[self.r as usize]);
        let subfield: Vec<FieldElem> = (0..self.q)
            .map(FieldElem)
            .filter(|&a| self.subfield_member[a.0 as usize])
            .collect();
        debug_assert_eq!(subfield.len(), self.n as usize);
        self.split = vec![(u32::MAX, u32::MAX); q];
        for &ev in &subfield {
            for &b in &subfield {
                let odd = self.mul(b, omega_r);
                let a = self.add(ev, odd);
                debug_assert_eq!(self.split[a.0 as usize].0, u32::MAX, "split not unique");
                self.split[a.0 as usize] = (ev.0, odd.0);
            }
        }
        debug_assert!(self.split.iter().all(|&(ev, _)| ev != u32::MAX));
    }
}

/// Factors n as p^m for an odd prime p, if possible.
pub fn odd_prime_power(n: u32) -> Option<(u32, u32)> {
    if n < 3 || n.is_multiple_of(2) {
        return None;
    }
    let mut p = 3;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut rest = n;
            let mut m = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                m += 1;
            }
            return (rest == 1).then_some((p, m));
        }
        p += 2;
    }
    Some((n, 1))
}

fn is_odd_prime(p: u32) -> bool {
    if p < 3 || p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn int_pow(base: u32, exp: u32) -> u32 {
    (0..exp).fold(1u32, |acc, _| acc * base)
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn encode(digits: &[u32], p: u32) -> u32 {
    digits.iter().rev().fold(0u32, |acc, &c| acc * p + c)
}

fn decode(code: u32, p: u32, degree: usize) -> Vec<u32> {
    let mut digits = vec![0u32; degree];
    let mut rest = code;
    for d in digits.iter_mut() {
        *d = rest % p;
        rest /= p;
    }
    digits
}

fn decode_one(degree: usize) -> Vec<u32> {
    let mut one = vec![0u32; degree];
    one[0] = 1;
    one
}

/// Digits of the element with lex rank `lex` (low-degree coefficient most
/// significant in the ordering).
fn lex_to_digits(lex: u32, p: u32, degree: usize) -> Vec<u32> {
    let mut digits = vec![0u32; degree];
    let mut rest = lex;
    for i in (0..degree).rev() {
        digits[i] = rest % p;
        rest /= p;
    }
    digits
}

/// Product of two degree-<d field representatives, reduced by the monic
/// `modulus` of degree d over F_p.
fn poly_mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let d = modulus.len() - 1;
    let mut t = vec![0u64; 2 * d - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            t[i + j] += x as u64 * y as u64;
        }
    }
    let p64 = p as u64;
    for i in (d..2 * d - 1).rev() {
        let c = t[i] % p64;
        t[i] = 0;
        if c == 0 {
            continue;
        }
        // subtract c * x^{i-d} * modulus
        for (k, &mk) in modulus.iter().enumerate().take(d) {
            let sub = c * mk as u64 % p64;
            t[i - d + k] = (t[i - d + k] + p64 - sub) % p64;
        }
    }
    t[..d].iter().map(|&x| (x % p64) as u32).collect()
}

/// Remainder of `a` divided by monic `b`, over F_p.
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let db = b.len() - 1;
    let mut rem: Vec<u64> = a.iter().map(|&x| x as u64).collect();
    let p64 = p as u64;
    for i in (db..rem.len()).rev() {
        let c = rem[i] % p64;
        rem[i] = 0;
        if c == 0 {
            continue;
        }
        for (k, &bk) in b.iter().enumerate().take(db) {
            let sub = c * bk as u64 % p64;
            rem[i - db + k] = (rem[i - db + k] + p64 - sub) % p64;
        }
    }
    let mut out: Vec<u32> = rem.iter().take(db).map(|&x| (x % p64) as u32).collect();
    while out.len() > 1 && *out.last().unwrap() == 0 {
        out.pop();
    }
    out
}

fn is_zero_poly(a: &[u32]) -> bool {
    a.iter().all(|&c| c == 0)
}

/// Lexicographically smallest monic irreducible of the given degree over
/// F_p, comparing coefficient vectors low-degree first. Irreducibility by
/// trial division against every monic divisor of degree ≤ degree/2.
fn smallest_irreducible(p: u32, degree: usize) -> Vec<u32> {
    let total = int_pow(p, degree as u32);
    'cand: for lex in 0..total {
        let mut cand = lex_to_digits(lex, p, degree);
        cand.push(1);
        for dd in 1..=degree / 2 {
            let div_total = int_pow(p, dd as u32);
            for dlex in 0..div_total {
                let mut div = lex_to_digits(dlex, p, dd);
                div.push(1);
                if is_zero_poly(&poly_rem(&cand, &div, p)) {
                    continue 'cand;
                }
            }
        }
        return cand;
    }
    unreachable!("irreducible polynomials exist in every degree");
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf9() -> FieldContext {
        FieldContext::new(3, 1).unwrap()
    }

    fn gf25() -> FieldContext {
        FieldContext::new(5, 1).unwrap()
    }

    #[test]
    fn context_3_1_parameters() {
        let ctx = gf9();
        assert_eq!((ctx.n(), ctx.q(), ctx.r()), (3, 9, 2));
        let in_r = ctx.elements().filter(|&a| ctx.in_r(a)).count();
        assert_eq!(in_r, 4); // |R| = 2(n-1)
    }

    #[test]
    fn context_5_1_parameters() {
        let ctx = gf25();
        assert_eq!((ctx.n(), ctx.q(), ctx.r()), (5, 25, 3));
        let in_r = ctx.elements().filter(|&a| ctx.in_r(a)).count();
        assert_eq!(in_r, 8);
    }

    #[test]
    fn context_3_2_parameters_and_omega_order() {
        let ctx = FieldContext::new(3, 2).unwrap();
        assert_eq!((ctx.n(), ctx.q(), ctx.r()), (9, 81, 5));
        assert_eq!(ctx.elements().filter(|&a| ctx.in_r(a)).count(), 16);
        // brute-force the order of omega
        let mut cur = ctx.omega();
        let mut order = 1;
        while cur != ctx.one() {
            cur = ctx.mul(cur, ctx.omega());
            order += 1;
        }
        assert_eq!(order, 80);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(
            FieldContext::new(2, 1),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            FieldContext::new(9, 1),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            FieldContext::with_cap(251, 2, DEFAULT_ORDER_CAP),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn arithmetic_inverse_laws_exhaustive() {
        for ctx in [gf9(), gf25()] {
            for a in ctx.elements() {
                assert_eq!(ctx.add(a, ctx.neg(a)), ctx.zero());
                if !a.is_zero() {
                    assert_eq!(ctx.mul(a, ctx.inv(a).unwrap()), ctx.one());
                }
            }
        }
        assert!(gf9().inv(FieldElem::ZERO).is_err());
    }

    #[test]
    fn lagrange_exponent_in_gf9() {
        // a^8 = 1 for every nonzero a, by exhaustive powering
        let ctx = gf9();
        for a in ctx.nonzero_elements() {
            let mut cur = ctx.one();
            for _ in 0..8 {
                cur = ctx.mul(cur, a);
            }
            assert_eq!(cur, ctx.one());
        }
    }

    #[test]
    fn mul_agrees_with_polynomial_arithmetic() {
        let ctx = gf25();
        for a in ctx.elements() {
            for b in ctx.elements() {
                let pa = decode(a.code(), 5, 2);
                let pb = decode(b.code(), 5, 2);
                let prod = poly_mul_mod(&pa, &pb, ctx.modulus(), 5);
                assert_eq!(ctx.mul(a, b).code(), encode(&prod, 5));
            }
        }
    }

    #[test]
    fn mult_order_examples() {
        let ctx = gf25();
        assert_eq!(ctx.mult_order(ctx.one()).unwrap(), 1);
        assert_eq!(ctx.mult_order(ctx.omega()).unwrap(), 24);
        let minus_one = ctx.neg(ctx.one());
        // square to 1, but not 1 itself
        assert_ne!(minus_one, ctx.one());
        assert_eq!(ctx.mul(minus_one, minus_one), ctx.one());
        assert_eq!(ctx.mult_order(minus_one).unwrap(), 2);
        assert!(ctx.mult_order(ctx.zero()).is_err());
    }

    #[test]
    fn r_membership() {
        for ctx in [gf9(), gf25(), FieldContext::new(3, 2).unwrap()] {
            assert!(!ctx.in_r(ctx.zero()));
            assert!(ctx.in_r(ctx.neg(ctx.one())), "-1 must lie in R");
            // R = F_n* ∪ F_n*·ω^r as sets
            let omega_r = ctx.omega_pow(ctx.r() as i64);
            for a in ctx.nonzero_elements() {
                let in_union = ctx.in_subfield(a)
                    || ctx.in_subfield(ctx.mul(a, ctx.inv(omega_r).unwrap()));
                assert_eq!(ctx.in_r(a), in_union);
            }
            // multiplicatively closed
            let members: Vec<FieldElem> =
                ctx.nonzero_elements().filter(|&a| ctx.in_r(a)).collect();
            assert_eq!(members.len(), 2 * (ctx.n() as usize - 1));
            for &a in &members {
                for &b in &members {
                    assert!(ctx.in_r(ctx.mul(a, b)));
                }
            }
        }
    }

    #[test]
    fn split_examples_and_uniqueness() {
        let ctx = gf9();
        let z = ctx.even_odd_split(ctx.zero());
        assert_eq!((z.ev, z.odd), (ctx.zero(), ctx.zero()));

        let omega_r = ctx.omega_pow(ctx.r() as i64);
        let s = ctx.even_odd_split(omega_r);
        assert_eq!((s.ev, s.odd), (ctx.zero(), omega_r));

        // independent oracle: solve ω = a·1 + b·ω^r over all subfield pairs
        let subfield: Vec<FieldElem> = ctx
            .elements()
            .filter(|&a| ctx.in_subfield(a))
            .collect();
        let mut solutions = Vec::new();
        for &a in &subfield {
            for &b in &subfield {
                if ctx.add(a, ctx.mul(b, omega_r)) == ctx.omega() {
                    solutions.push((a, ctx.mul(b, omega_r)));
                }
            }
        }
        let s = ctx.even_odd_split(ctx.omega());
        assert_eq!(solutions, vec![(s.ev, s.odd)]);
    }

    #[test]
    fn split_laws_exhaustive() {
        for ctx in [gf9(), gf25()] {
            let omega_r = ctx.omega_pow(ctx.r() as i64);
            for a in ctx.elements() {
                let s = ctx.even_odd_split(a);
                assert_eq!(ctx.add(s.ev, s.odd), a);
                assert!(ctx.in_subfield(s.ev));
                assert!(
                    s.odd.is_zero()
                        || ctx.in_subfield(ctx.mul(s.odd, ctx.inv(omega_r).unwrap()))
                );
                // ev·odd⁻¹ lands in F_n*·ω^r when both parts are nonzero
                if !s.ev.is_zero() && !s.odd.is_zero() {
                    let ratio = ctx.mul(s.ev, ctx.inv(s.odd).unwrap());
                    assert!(!ctx.in_subfield(ratio));
                    assert!(ctx.in_r(ratio));
                }
            }
            // additivity of the even parts
            for a in ctx.elements() {
                for b in ctx.elements() {
                    let sa = ctx.even_odd_split(a);
                    let sb = ctx.even_odd_split(b);
                    let ssum = ctx.even_odd_split(ctx.add(a, b));
                    assert_eq!(ssum.ev, ctx.add(sa.ev, sb.ev));
                    assert_eq!(ssum.odd, ctx.add(sa.odd, sb.odd));
                }
            }
        }
    }

    #[test]
    fn coset_labels() {
        let ctx = gf25();
        for a in ctx.nonzero_elements() {
            if ctx.in_r(a) {
                assert_eq!(ctx.coset_label(a).unwrap(), 0);
            }
            for b in ctx.nonzero_elements().filter(|&b| ctx.in_r(b)) {
                assert_eq!(
                    ctx.coset_label(a).unwrap(),
                    ctx.coset_label(ctx.mul(a, b)).unwrap()
                );
            }
        }
        // labels partition GF(25)* into 3 classes of 8
        let mut counts = [0usize; 3];
        for a in ctx.nonzero_elements() {
            counts[ctx.coset_label(a).unwrap() as usize] += 1;
        }
        assert_eq!(counts, [8, 8, 8]);
        assert!(ctx.coset_label(ctx.zero()).is_err());
    }

    #[test]
    fn modulus_is_deterministic_and_minimal() {
        // x² + 1 over F_3: the candidates below it all have a root
        let ctx = gf9();
        assert_eq!(ctx.modulus(), &[1, 0, 1]);
        let ctx = FieldContext::new(7, 1).unwrap();
        assert_eq!(ctx.modulus(), &[1, 0, 1]);
        // -1 is a square mod 13 so x²+1 splits, x²+x+1 has discriminant
        // -3 ≡ 10 (a square), and x²+2x+1 = (x+1)²; x²+3x+1 is first
        let ctx = FieldContext::new(13, 1).unwrap();
        assert_eq!(ctx.modulus(), &[1, 3, 1]);
    }

    #[test]
    fn odd_prime_power_factoring() {
        assert_eq!(odd_prime_power(3), Some((3, 1)));
        assert_eq!(odd_prime_power(9), Some((3, 2)));
        assert_eq!(odd_prime_power(27), Some((3, 3)));
        assert_eq!(odd_prime_power(125), Some((5, 3)));
        assert_eq!(odd_prime_power(251), Some((251, 1)));
        assert_eq!(odd_prime_power(4), None);
        assert_eq!(odd_prime_power(15), None);
        assert_eq!(odd_prime_power(1), None);
    }
}
