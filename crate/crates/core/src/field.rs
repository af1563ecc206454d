//! Arithmetic in `F = GF(2^m)` and its quadratic extension `K = F[i]`,
//! where `i^2 + i + delta = 0` for a fixed `delta` of absolute trace 1.
//!
//! Elements of `F` are bit vectors in the polynomial basis. Elements of `K`
//! are pairs `re + im * i`. Everything lives on [`FieldCtx`], which is
//! immutable after construction.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MIN_DEGREE: u32 = 2;
pub const MAX_DEGREE: u32 = 16;

/// Element of `F`, stored as the coefficient bits of its polynomial representative.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FElem(pub u32);

impl FElem {
    pub const ZERO: FElem = FElem(0);
    pub const ONE: FElem = FElem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for FElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

impl fmt::Display for FElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

impl Add for FElem {
    type Output = FElem;
    // addition in characteristic 2 is bitwise xor
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: FElem) -> FElem {
        FElem(self.0 ^ rhs.0)
    }
}

impl AddAssign for FElem {
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: FElem) {
        self.0 ^= rhs.0;
    }
}

/// Element `re + im * i` of `K`. Ordered by its bit encoding `re | im << m`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct KElem {
    pub re: FElem,
    pub im: FElem,
}

impl KElem {
    pub const ZERO: KElem = KElem {
        re: FElem(0),
        im: FElem(0),
    };
    pub const ONE: KElem = KElem {
        re: FElem(1),
        im: FElem(0),
    };
    /// The generator `i` of `K` over `F`.
    pub const I: KElem = KElem {
        re: FElem(0),
        im: FElem(1),
    };

    pub const fn new(re: FElem, im: FElem) -> Self {
        KElem { re, im }
    }

    pub const fn from_f(x: FElem) -> Self {
        KElem {
            re: x,
            im: FElem(0),
        }
    }

    pub fn is_zero(self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn in_base_field(self) -> bool {
        self.im.is_zero()
    }

    /// Packs the element as `re | im << m`; this is the ordering used
    /// whenever a deterministic scan over `K` is needed.
    pub fn encode(self, m: u32) -> u64 {
        u64::from(self.re.0) | (u64::from(self.im.0) << m)
    }

    pub fn decode(bits: u64, m: u32) -> Self {
        let mask = (1u64 << m) - 1;
        KElem {
            re: FElem((bits & mask) as u32),
            im: FElem((bits >> m) as u32),
        }
    }
}

impl Ord for KElem {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.im, self.re).cmp(&(other.im, other.re))
    }
}

impl PartialOrd for KElem {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for KElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:#x}+{:#x}i)", self.re.0, self.im.0)
    }
}

impl Add for KElem {
    type Output = KElem;
    fn add(self, rhs: KElem) -> KElem {
        KElem {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl AddAssign for KElem {
    fn add_assign(&mut self, rhs: KElem) {
        self.re += rhs.re;
        self.im += rhs.im;
    }
}

impl std::iter::Sum for KElem {
    fn sum<I: Iterator<Item = KElem>>(iter: I) -> KElem {
        iter.fold(KElem::ZERO, |acc, x| acc + x)
    }
}

impl std::iter::Sum for FElem {
    fn sum<I: Iterator<Item = FElem>>(iter: I) -> FElem {
        iter.fold(FElem::ZERO, |acc, x| acc + x)
    }
}

/// Serializable description of a field tower.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDesc {
    pub m: u32,
    #[serde(with = "crate::io::hex_u32")]
    pub f_poly: u32,
    #[serde(with = "crate::io::hex_u32")]
    pub delta: u32,
}

/// Degree of a GF(2) polynomial given as bits; `None` for the zero polynomial.
fn degree(p: u64) -> Option<u32> {
    (p != 0).then(|| 63 - p.leading_zeros())
}

/// Remainder of `a` modulo `b` over GF(2).
fn gf2_rem(mut a: u64, b: u64) -> u64 {
    let db = degree(b).expect("division by the zero polynomial");
    while let Some(da) = degree(a) {
        if da < db {
            break;
        }
        a ^= b << (da - db);
    }
    a
}

/// Irreducibility over GF(2) by trial division with every polynomial of
/// degree at most `deg / 2`.
pub fn is_irreducible(poly: u32) -> bool {
    let Some(d) = degree(u64::from(poly)) else {
        return false;
    };
    if d == 0 {
        return false;
    }
    for dd in 1..=d / 2 {
        for low in 0..(1u64 << dd) {
            let divisor = (1u64 << dd) | low;
            if gf2_rem(u64::from(poly), divisor) == 0 {
                return false;
            }
        }
    }
    true
}

/// The irreducible polynomial of degree `m` with the smallest bit encoding.
pub fn smallest_irreducible(m: u32) -> u32 {
    let top = 1u32 << m;
    (0..top)
        .map(|low| top | low)
        .find(|&p| is_irreducible(p))
        .expect("irreducible polynomials exist in every degree")
}

/// Multiplication in GF(2)[t]/(poly) by shift and xor.
pub(crate) fn clmul_mod(a: u32, b: u32, poly: u32, m: u32) -> u32 {
    let mut acc: u64 = 0;
    for bit in 0..m {
        if (b >> bit) & 1 == 1 {
            acc ^= u64::from(a) << bit;
        }
    }
    gf2_rem(acc, u64::from(poly)) as u32
}

/// Distinct prime factors by trial division.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Context for `F = GF(2^m)` and `K = F[i]`.
#[derive(Clone)]
pub struct FieldCtx {
    m: u32,
    q: u32,
    f_poly: u32,
    delta: FElem,
    exp: Vec<u32>,
    log: Vec<u32>,
    unit_circle: Vec<KElem>,
    unit_pos: HashMap<KElem, usize>,
    k_generator: KElem,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("m", &self.m)
            .field("f_poly", &format_args!("{:#x}", self.f_poly))
            .field("delta", &self.delta)
            .finish()
    }
}

impl FieldCtx {
    /// Field with the default polynomial and `delta`.
    pub fn new(m: u32) -> Result<Self> {
        Self::with_params(m, None, None)
    }

    pub fn with_poly(m: u32, f_poly: Option<u32>) -> Result<Self> {
        Self::with_params(m, f_poly, None)
    }

    /// Builds the tower. `f_poly` defaults to the smallest irreducible of
    /// degree `m`; `delta` defaults to the smallest element of absolute trace 1.
    pub fn with_params(m: u32, f_poly: Option<u32>, delta: Option<u32>) -> Result<Self> {
        if !(MIN_DEGREE..=MAX_DEGREE).contains(&m) {
            return Err(Error::DegreeOutOfRange(m));
        }
        let f_poly = match f_poly {
            Some(p) => {
                if degree(u64::from(p)) != Some(m) {
                    return Err(Error::PolyDegree { poly: p, m });
                }
                if !is_irreducible(p) {
                    return Err(Error::ReduciblePoly(p));
                }
                p
            }
            None => smallest_irreducible(m),
        };
        let q = 1u32 << m;

        // log/exp tables over a generator of F*
        let order = u64::from(q - 1);
        let factors = prime_factors(order);
        let slow_pow = |base: u32, mut e: u64| {
            let mut acc = 1u32;
            let mut b = base;
            while e > 0 {
                if e & 1 == 1 {
                    acc = clmul_mod(acc, b, f_poly, m);
                }
                b = clmul_mod(b, b, f_poly, m);
                e >>= 1;
            }
            acc
        };
        let gen = (2..q)
            .find(|&g| factors.iter().all(|&p| slow_pow(g, order / p) != 1))
            .unwrap_or(1);
        let mut exp = vec![0u32; 2 * (q as usize - 1)];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for (j, slot) in exp.iter_mut().enumerate() {
            *slot = x;
            if j < q as usize - 1 {
                log[x as usize] = j as u32;
            }
            x = clmul_mod(x, gen, f_poly, m);
        }

        let mut ctx = FieldCtx {
            m,
            q,
            f_poly,
            delta: FElem::ZERO,
            exp,
            log,
            unit_circle: Vec::new(),
            unit_pos: HashMap::new(),
            k_generator: KElem::ONE,
        };

        ctx.delta = match delta {
            Some(d) => {
                let d = FElem(d);
                if d.0 >= q || ctx.abs_trace(d) != 1 {
                    return Err(Error::DeltaTrace(d.0));
                }
                d
            }
            None => (1..q)
                .map(FElem)
                .find(|&d| ctx.abs_trace(d) == 1)
                .expect("trace is a surjective linear form"),
        };

        let korder = ctx.k_order();
        let kfactors = prime_factors(korder);
        let w = (1..(1u64 << (2 * m)))
            .map(|bits| KElem::decode(bits, m))
            .find(|&w| {
                kfactors
                    .iter()
                    .all(|&p| ctx.k_pow(w, korder / p) != KElem::ONE)
            })
            .expect("K* is cyclic");
        ctx.k_generator = w;
        let step = ctx.k_pow(w, u64::from(q - 1));
        let mut u = KElem::ONE;
        ctx.unit_circle = (0..=q)
            .map(|_| {
                let cur = u;
                u = ctx.k_mul(u, step);
                cur
            })
            .collect();
        ctx.unit_pos = ctx
            .unit_circle
            .iter()
            .enumerate()
            .map(|(j, &u)| (u, j))
            .collect();
        Ok(ctx)
    }

    pub fn from_desc(desc: &FieldDesc) -> Result<Self> {
        Self::with_params(desc.m, Some(desc.f_poly), Some(desc.delta))
    }

    pub fn desc(&self) -> FieldDesc {
        FieldDesc {
            m: self.m,
            f_poly: self.f_poly,
            delta: self.delta.0,
        }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn f_poly(&self) -> u32 {
        self.f_poly
    }

    pub fn delta(&self) -> FElem {
        self.delta
    }

    /// `q^2 - 1`, the order of `K*`.
    pub fn k_order(&self) -> u64 {
        u64::from(self.q) * u64::from(self.q) - 1
    }

    /// The `q + 1` elements of norm 1, as consecutive powers of a generator
    /// of the norm-1 subgroup; index 0 is `1`.
    pub fn unit_circle(&self) -> &[KElem] {
        &self.unit_circle
    }

    /// A generator of the cyclic group `K*`.
    pub fn k_generator(&self) -> KElem {
        self.k_generator
    }

    pub fn f(&self, bits: u32) -> Result<FElem> {
        if bits >= self.q {
            return Err(Error::OutOfField(u64::from(bits)));
        }
        Ok(FElem(bits))
    }

    pub fn k(&self, re: u32, im: u32) -> Result<KElem> {
        Ok(KElem::new(self.f(re)?, self.f(im)?))
    }

    pub fn f_elements(&self) -> impl Iterator<Item = FElem> {
        (0..self.q).map(FElem)
    }

    /// All of `K` in increasing bit encoding.
    pub fn k_elements(&self) -> impl Iterator<Item = KElem> + '_ {
        (0..(1u64 << (2 * self.m))).map(|b| KElem::decode(b, self.m))
    }

    // ---- F ----

    pub fn f_mul(&self, a: FElem, b: FElem) -> FElem {
        if a.is_zero() || b.is_zero() {
            return FElem::ZERO;
        }
        let s = self.log[a.0 as usize] + self.log[b.0 as usize];
        FElem(self.exp[s as usize])
    }

    pub fn f_square(&self, a: FElem) -> FElem {
        self.f_mul(a, a)
    }

    pub fn f_inv(&self, a: FElem) -> Result<FElem> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let l = self.log[a.0 as usize];
        let e = if l == 0 { 0 } else { self.q - 1 - l };
        Ok(FElem(self.exp[e as usize]))
    }

    pub fn f_div(&self, a: FElem, b: FElem) -> Result<FElem> {
        Ok(self.f_mul(a, self.f_inv(b)?))
    }

    /// `a^e`, with `0^0 = 1`.
    pub fn f_pow(&self, a: FElem, e: u64) -> FElem {
        if e == 0 {
            return FElem::ONE;
        }
        if a.is_zero() {
            return FElem::ZERO;
        }
        let order = u64::from(self.q - 1);
        let l = (u64::from(self.log[a.0 as usize]) * (e % order)) % order;
        FElem(self.exp[l as usize])
    }

    pub fn f_sqrt(&self, a: FElem) -> FElem {
        let mut x = a;
        for _ in 1..self.m {
            x = self.f_square(x);
        }
        x
    }

    /// Absolute trace `F -> GF(2)`.
    pub fn abs_trace(&self, a: FElem) -> u32 {
        let mut acc = a;
        let mut x = a;
        for _ in 1..self.m {
            x = self.f_square(x);
            acc += x;
        }
        debug_assert!(acc.0 <= 1);
        acc.0
    }

    // ---- K ----

    pub fn k_scale(&self, lambda: FElem, z: KElem) -> KElem {
        KElem::new(self.f_mul(lambda, z.re), self.f_mul(lambda, z.im))
    }

    /// `(a + b i)(c + d i) = ac + bd delta + (ad + bc + bd) i`.
    pub fn k_mul(&self, x: KElem, y: KElem) -> KElem {
        let ac = self.f_mul(x.re, y.re);
        let bd = self.f_mul(x.im, y.im);
        let ad = self.f_mul(x.re, y.im);
        let bc = self.f_mul(x.im, y.re);
        KElem::new(ac + self.f_mul(bd, self.delta), ad + bc + bd)
    }

    pub fn k_square(&self, x: KElem) -> KElem {
        self.k_mul(x, x)
    }

    pub fn k_inv(&self, x: KElem) -> Result<KElem> {
        if x.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let n = self.norm(x);
        Ok(self.k_scale(self.f_inv(n)?, self.conj(x)))
    }

    pub fn k_div(&self, x: KElem, y: KElem) -> Result<KElem> {
        Ok(self.k_mul(x, self.k_inv(y)?))
    }

    /// `x^e` by square-and-multiply; the exponent is reduced modulo
    /// `q^2 - 1` for nonzero bases and `0^0 = 1`.
    pub fn k_pow(&self, x: KElem, e: u64) -> KElem {
        if e == 0 {
            return KElem::ONE;
        }
        if x.is_zero() {
            return KElem::ZERO;
        }
        let mut e = e % self.k_order();
        let mut acc = KElem::ONE;
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.k_mul(acc, base);
            }
            base = self.k_square(base);
            e >>= 1;
        }
        acc
    }

    /// `x^q`. Since `i^q = i + 1`, `conj(x + y i) = (x + y) + y i`.
    pub fn conj(&self, z: KElem) -> KElem {
        KElem::new(z.re + z.im, z.im)
    }

    /// `T(z) = z + conj(z)`.
    pub fn trace(&self, z: KElem) -> FElem {
        z.im
    }

    /// `N(z) = z conj(z) = x^2 + xy + delta y^2`.
    pub fn norm(&self, z: KElem) -> FElem {
        self.f_square(z.re) + self.f_mul(z.re, z.im) + self.f_mul(self.delta, self.f_square(z.im))
    }

    /// `<a, b> = T(a conj(b))`. In coordinates this is `a.re b.im + a.im b.re`.
    pub fn bform(&self, a: KElem, b: KElem) -> FElem {
        self.f_mul(a.re, b.im) + self.f_mul(a.im, b.re)
    }

    /// The unique square root, `z^(2^(2m-1))`.
    pub fn sqrt_k(&self, z: KElem) -> KElem {
        let mut x = z;
        for _ in 1..2 * self.m {
            x = self.k_square(x);
        }
        x
    }

    pub fn is_unit(&self, z: KElem) -> bool {
        self.norm(z) == FElem::ONE
    }

    /// Polar decomposition `z = lambda * u` with `lambda` in `F*` and `u` on the unit circle.
    pub fn polar(&self, z: KElem) -> Result<(FElem, KElem)> {
        if z.is_zero() {
            return Err(Error::ZeroPolar);
        }
        let lambda = self.f_sqrt(self.norm(z));
        let u = self.k_scale(self.f_inv(lambda)?, z);
        Ok((lambda, u))
    }

    /// Position of `u` in [`FieldCtx::unit_circle`].
    pub fn unit_index(&self, u: KElem) -> Option<usize> {
        self.unit_pos.get(&u).copied()
    }

    /// `<a,b>^k` as the sum over `0 <= i <= (k-1)/2` with `i` binary-dominated
    /// by `k` of `<a^(iq+k-i), b^(iq+k-i)>`.
    pub fn bracket_pow_expansion(&self, a: KElem, b: KElem, k: u32) -> FElem {
        let q = u64::from(self.q);
        let k64 = u64::from(k);
        (0..=(k64.saturating_sub(1) / 2))
            .filter(|&i| i & k64 == i)
            .map(|i| {
                let d = i * q + k64 - i;
                self.bform(self.k_pow(a, d), self.k_pow(b, d))
            })
            .sum()
    }
}
