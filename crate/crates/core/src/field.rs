//! Arithmetic in GF(2^e) for 1 <= e <= 20.
//!
//! Elements are bitmasks in the polynomial basis `1, ω, ω², …` where ω is
//! the class of `x` modulo a primitive polynomial. A [`FieldCtx`] is cheap to
//! clone and immutable once built, so it can be shared across threads.

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

/// Largest extension degree supported.
pub const MAX_DEGREE: u32 = 20;

/// Degrees up to this bound use log/antilog tables; larger ones fall back
/// to carryless multiplication with reduction.
pub const TABLE_DEGREE_LIMIT: u32 = 16;

/// Lexicographically smallest primitive polynomial for each degree 1..=20.
/// Entry `e - 1` is the modulus for degree `e`.
pub const DEFAULT_MODULI: [u64; 20] = [
    0x3, 0x7, 0xb, 0x13, 0x25, 0x43, 0x83, 0x11d, 0x211, 0x409, 0x805, 0x1053, 0x201b, 0x402b, 0x8003, 0x1002d,
    0x20009, 0x40027, 0x80027, 0x100009,
];

/// An element of some [`FieldCtx`], stored as its polynomial-basis bitmask.
///
/// Addition does not depend on the modulus and is exposed through `+`;
/// everything else goes through the owning context.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl std::ops::Add for Elem {
    type Output = Elem;
    #[inline]
    fn add(self, rhs: Elem) -> Elem {
        Elem(self.0 ^ rhs.0)
    }
}

impl std::ops::AddAssign for Elem {
    #[inline]
    fn add_assign(&mut self, rhs: Elem) {
        self.0 ^= rhs.0;
    }
}

/// Extension degree plus modulus, parsed from / printed as
/// `gf2:e=<int>[,mod=0x<hex>]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    pub degree: u32,
    pub modulus: u64,
}

impl FieldSpec {
    /// The default spec for a degree: smallest primitive polynomial.
    pub fn default_for(degree: u32) -> Result<FieldSpec> {
        if !(1..=MAX_DEGREE).contains(&degree) {
            return Err(Error::DegreeOutOfRange(degree));
        }
        Ok(FieldSpec { degree, modulus: DEFAULT_MODULI[degree as usize - 1] })
    }

    pub fn is_default(&self) -> bool {
        (1..=MAX_DEGREE).contains(&self.degree) && DEFAULT_MODULI[self.degree as usize - 1] == self.modulus
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_default() {
            write!(f, "gf2:e={}", self.degree)
        } else {
            write!(f, "gf2:e={},mod={:#x}", self.degree, self.modulus)
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<FieldSpec> {
        let bad = || Error::Parse(format!("field spec `{s}`, expected gf2:e=<int>[,mod=0x<hex>]"));
        let rest = s.trim().strip_prefix("gf2:").ok_or_else(bad)?;
        let mut degree = None;
        let mut modulus = None;
        for part in rest.split(',') {
            let (key, value) = part.split_once('=').ok_or_else(bad)?;
            match key.trim() {
                "e" => degree = Some(value.trim().parse::<u32>().map_err(|_| bad())?),
                "mod" => {
                    let hex = value.trim().strip_prefix("0x").ok_or_else(bad)?;
                    modulus = Some(u64::from_str_radix(hex, 16).map_err(|_| bad())?);
                }
                _ => return Err(bad()),
            }
        }
        let degree = degree.ok_or_else(bad)?;
        match modulus {
            Some(modulus) => Ok(FieldSpec { degree, modulus }),
            None => FieldSpec::default_for(degree),
        }
    }
}

/// Carryless product of two polynomials over F₂ (degrees < 32).
#[inline]
pub fn clmul(a: u64, b: u64) -> u64 {
    let mut acc = 0u64;
    let mut a = a;
    let mut b = b;
    while b != 0 {
        if b & 1 != 0 {
            acc ^= a;
        }
        a <<= 1;
        b >>= 1;
    }
    acc
}

#[inline]
fn poly_degree(p: u64) -> i32 {
    63 - p.leading_zeros() as i32
}

/// `a mod m` for polynomials over F₂.
pub fn poly_rem(mut a: u64, m: u64) -> u64 {
    let dm = poly_degree(m);
    while a != 0 && poly_degree(a) >= dm {
        a ^= m << (poly_degree(a) - dm);
    }
    a
}

fn poly_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = poly_rem(a, b);
        a = b;
        b = r;
    }
    a
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    poly_rem(clmul(a, b), m)
}

fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = poly_rem(1, m);
    base = poly_rem(base, m);
    while exp != 0 {
        if exp & 1 != 0 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
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

/// Rabin's irreducibility test for a polynomial of degree `e`.
pub fn is_irreducible(modulus: u64, e: u32) -> bool {
    if poly_degree(modulus) != e as i32 || e == 0 {
        return false;
    }
    if e == 1 {
        return true;
    }
    // x^(2^k) mod f, by repeated squaring
    let frob = |k: u32| {
        let mut t = 2u64;
        for _ in 0..k {
            t = mulmod(t, t, modulus);
        }
        t
    };
    if frob(e) != poly_rem(2, modulus) {
        return false;
    }
    prime_factors(e as u64).into_iter().all(|p| {
        let t = frob(e / p as u32) ^ 2;
        poly_gcd(modulus, t) == 1
    })
}

/// Whether the class of `x` has order `2^e - 1` modulo `modulus`.
pub fn is_primitive(modulus: u64, e: u32) -> bool {
    if e == 1 {
        return true;
    }
    if !is_irreducible(modulus, e) {
        return false;
    }
    let order = (1u64 << e) - 1;
    powmod(2, order, modulus) == 1 && prime_factors(order).into_iter().all(|p| powmod(2, order / p, modulus) != 1)
}

struct Tables {
    log: Vec<u32>,
    // antilog doubled so a product of two logs never needs a modular reduction
    exp: Vec<u32>,
}

struct Inner {
    spec: FieldSpec,
    order: u32,
    tables: Option<Tables>,
    trace_mask: u32,
    dual_coords: OnceLock<Vec<u32>>,
}

/// Concrete representation of GF(2^e).
#[derive(Clone)]
pub struct FieldCtx {
    inner: Arc<Inner>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldCtx({})", self.inner.spec)
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.inner.spec == other.inner.spec
    }
}

impl Eq for FieldCtx {}

/// Builds GF(2^e), using the default primitive modulus when none is given.
pub fn make_field(e: u32, modulus: Option<u64>) -> Result<FieldCtx> {
    let spec = match modulus {
        Some(modulus) => FieldSpec { degree: e, modulus },
        None => FieldSpec::default_for(e)?,
    };
    FieldCtx::new(spec)
}

impl FieldCtx {
    pub fn new(spec: FieldSpec) -> Result<FieldCtx> {
        let e = spec.degree;
        if !(1..=MAX_DEGREE).contains(&e) {
            return Err(Error::DegreeOutOfRange(e));
        }
        if poly_degree(spec.modulus) != e as i32 {
            return Err(Error::WrongModulusDegree(spec.modulus, e));
        }
        if !is_irreducible(spec.modulus, e) {
            return Err(Error::NotIrreducible(spec.modulus));
        }
        if !is_primitive(spec.modulus, e) {
            return Err(Error::NotPrimitive(spec.modulus));
        }
        let order = ((1u64 << e) - 1) as u32;
        let tables = (e <= TABLE_DEGREE_LIMIT).then(|| {
            let size = 1usize << e;
            let mut log = vec![0u32; size];
            let mut exp = vec![0u32; 2 * order as usize];
            // for e = 1 the generator is 1 itself
            let generator = if e == 1 { 1 } else { 2 };
            let mut cur = 1u64;
            for k in 0..order {
                exp[k as usize] = cur as u32;
                exp[(k + order) as usize] = cur as u32;
                log[cur as usize] = k;
                cur = mulmod(cur, generator, spec.modulus);
            }
            Tables { log, exp }
        });
        let mut ctx =
            FieldCtx { inner: Arc::new(Inner { spec, order, tables, trace_mask: 0, dual_coords: OnceLock::new() }) };
        let mut mask = 0u32;
        for i in 0..e {
            if ctx.trace_by_definition(Elem(1 << i)) {
                mask |= 1 << i;
            }
        }
        Arc::get_mut(&mut ctx.inner).expect("fresh context").trace_mask = mask;
        Ok(ctx)
    }

    pub fn spec(&self) -> FieldSpec {
        self.inner.spec
    }

    /// Extension degree `e`.
    #[inline]
    pub fn degree(&self) -> u32 {
        self.inner.spec.degree
    }

    /// Number of elements, `2^e`.
    #[inline]
    pub fn size(&self) -> usize {
        1usize << self.degree()
    }

    /// Order of the multiplicative group, `2^e - 1`.
    #[inline]
    pub fn order(&self) -> u32 {
        self.inner.order
    }

    pub fn has_tables(&self) -> bool {
        self.inner.tables.is_some()
    }

    /// The primitive element ω (class of `x`).
    pub fn generator(&self) -> Elem {
        if self.degree() == 1 {
            Elem::ONE
        } else {
            Elem(2)
        }
    }

    /// All elements in bitmask order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.size() as u32).map(Elem)
    }

    /// All nonzero elements in bitmask order.
    pub fn nonzero(&self) -> impl Iterator<Item = Elem> {
        (1..self.size() as u32).map(Elem)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        a + b
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        match &self.inner.tables {
            Some(t) => Elem(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => self.mul_clmul(a, b),
        }
    }

    /// Carryless multiply followed by reduction; table-free reference path.
    pub fn mul_clmul(&self, a: Elem, b: Elem) -> Elem {
        Elem(poly_rem(clmul(a.0 as u64, b.0 as u64), self.inner.spec.modulus) as u32)
    }

    #[inline]
    pub fn square(&self, a: Elem) -> Elem {
        self.mul(a, a)
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow_u(a, self.order() as u64 - 1))
    }

    /// Inverse extended by `0 ↦ 0`, i.e. `x^(2^e - 2)`.
    #[inline]
    pub fn inv0(&self, a: Elem) -> Elem {
        if a.is_zero() {
            Elem::ZERO
        } else {
            self.pow_u(a, self.order() as u64 - 1)
        }
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^k` for `k >= 0`, with `0^0 = 1`.
    pub fn pow_u(&self, a: Elem, k: u64) -> Elem {
        if a.is_zero() {
            return if k == 0 { Elem::ONE } else { Elem::ZERO };
        }
        let k = k % self.order() as u64;
        if let Some(t) = &self.inner.tables {
            let l = (t.log[a.0 as usize] as u64 * k) % self.order() as u64;
            return Elem(t.exp[l as usize]);
        }
        let mut acc = Elem::ONE;
        let mut base = a;
        let mut k = k;
        while k != 0 {
            if k & 1 != 0 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// `a^k` for any integer `k`. Negative powers go through the inverse;
    /// zero maps to zero for every `k != 0` (so `x^(q-2)` and `x^(-1)` agree).
    pub fn pow(&self, a: Elem, k: i64) -> Elem {
        if k >= 0 {
            return self.pow_u(a, k as u64);
        }
        if a.is_zero() {
            return Elem::ZERO;
        }
        let ord = self.order() as i64;
        self.pow_u(a, k.rem_euclid(ord) as u64)
    }

    /// `ω^k` for any integer `k`.
    pub fn exp(&self, k: i64) -> Elem {
        let ord = self.order() as i64;
        let k = k.rem_euclid(ord) as usize;
        match &self.inner.tables {
            Some(t) => Elem(t.exp[k]),
            None => self.pow_u(self.generator(), k as u64),
        }
    }

    /// Discrete log base ω; only available with tables (e <= 16).
    pub fn log(&self, a: Elem) -> Option<u32> {
        if a.is_zero() {
            return None;
        }
        self.inner.tables.as_ref().map(|t| t.log[a.0 as usize])
    }

    /// Discrete log, falling back to exhaustive search without tables.
    pub fn log_slow(&self, a: Elem) -> Option<u32> {
        if a.is_zero() {
            return None;
        }
        if let Some(l) = self.log(a) {
            return Some(l);
        }
        let mut cur = Elem::ONE;
        for k in 0..self.order() {
            if cur == a {
                return Some(k);
            }
            cur = self.mul(cur, self.generator());
        }
        None
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: Elem) -> Option<u64> {
        if a.is_zero() {
            return None;
        }
        let n = self.order() as u64;
        let mut ord = n;
        for p in prime_factors(n) {
            while ord % p == 0 && self.pow_u(a, ord / p) == Elem::ONE {
                ord /= p;
            }
        }
        Some(ord)
    }

    /// `a^(2^k)`.
    pub fn frobenius(&self, a: Elem, k: u32) -> Elem {
        let mut x = a;
        for _ in 0..(k % self.degree()) {
            x = self.square(x);
        }
        x
    }

    /// Square root: the inverse of the Frobenius map, `a^(2^(e-1))`.
    pub fn sqrt(&self, a: Elem) -> Elem {
        self.frobenius(a, self.degree() - 1)
    }

    fn trace_by_definition(&self, a: Elem) -> bool {
        let mut acc = Elem::ZERO;
        let mut x = a;
        for _ in 0..self.degree() {
            acc += x;
            x = self.mul_clmul(x, x);
        }
        debug_assert!(acc.0 <= 1);
        acc.0 == 1
    }

    /// Absolute trace `Tr_1^e(a)`, via the precomputed trace of the basis.
    #[inline]
    pub fn trace(&self, a: Elem) -> bool {
        (a.0 & self.inner.trace_mask).count_ones() & 1 == 1
    }

    /// Absolute trace computed straight from `Σ a^(2^i)`.
    pub fn trace_slow(&self, a: Elem) -> bool {
        self.trace_by_definition(a)
    }

    /// `Tr(a)` as an element (0 or 1).
    #[inline]
    pub fn trace_elem(&self, a: Elem) -> Elem {
        Elem(self.trace(a) as u32)
    }

    /// Relative trace `Tr_k^e(a) = Σ_{i < e/k} a^(2^(k i))`.
    pub fn rel_trace(&self, k: u32, a: Elem) -> Result<Elem> {
        let e = self.degree();
        if k == 0 || e % k != 0 {
            return Err(Error::NotDivisor(k as u64, e as u64));
        }
        let mut acc = Elem::ZERO;
        let mut x = a;
        for _ in 0..e / k {
            acc += x;
            x = self.frobenius(x, k);
        }
        Ok(acc)
    }

    /// Trace from the subfield of size `2^k` down to F₂, applied to an
    /// element of that subfield: `Σ_{i < k} a^(2^i)`.
    pub fn subfield_trace(&self, k: u32, a: Elem) -> bool {
        let mut acc = Elem::ZERO;
        let mut x = a;
        for _ in 0..k {
            acc += x;
            x = self.square(x);
        }
        debug_assert!(acc.0 <= 1, "argument not in subfield of degree {k}");
        acc.0 == 1
    }

    /// Whether `a` lies in the subfield of size `2^k` (`a^(2^k) = a`).
    pub fn in_subfield(&self, k: u32, a: Elem) -> bool {
        self.frobenius(a, k) == a
    }

    /// Elements of the subfield of size `2^k`, in increasing bitmask order.
    pub fn subfield_elements(&self, k: u32) -> Result<Vec<Elem>> {
        let e = self.degree();
        if k == 0 || e % k != 0 {
            return Err(Error::NotDivisor(k as u64, e as u64));
        }
        let step = (self.order() as u64) / ((1u64 << k) - 1);
        let gen = self.exp(step as i64);
        let mut v = Vec::with_capacity(1 << k);
        v.push(Elem::ZERO);
        let mut cur = Elem::ONE;
        for _ in 0..((1u64 << k) - 1) {
            v.push(cur);
            cur = self.mul(cur, gen);
        }
        v.sort();
        Ok(v)
    }

    /// Generator `ω^((2^e - 1)/d)` of the group of `d`-th roots of unity.
    pub fn unity_root(&self, d: u64) -> Result<Elem> {
        let n = self.order() as u64;
        if d == 0 || n % d != 0 {
            return Err(Error::NotDivisor(d, n));
        }
        Ok(self.exp((n / d) as i64))
    }

    /// Elements of μ_d in the order `ζ^0, ζ^1, …`.
    pub fn unity_group(&self, d: u64) -> Result<Vec<Elem>> {
        let z = self.unity_root(d)?;
        let mut out = Vec::with_capacity(d as usize);
        let mut cur = Elem::ONE;
        for _ in 0..d {
            out.push(cur);
            cur = self.mul(cur, z);
        }
        Ok(out)
    }

    /// For each `b`, the coordinates of `b` in the trace-dual of the
    /// polynomial basis, so that `Tr(b x) = parity(coords[b] & x)`.
    pub fn dual_coords(&self) -> &[u32] {
        self.inner.dual_coords.get_or_init(|| {
            let e = self.degree();
            let basis: Vec<u32> = (0..e)
                .map(|i| {
                    let b = Elem(1 << i);
                    (0..e).fold(0u32, |acc, j| acc | ((self.trace(self.mul(b, Elem(1 << j))) as u32) << j))
                })
                .collect();
            let mut out = vec![0u32; self.size()];
            for b in 1..self.size() {
                let low = b.trailing_zeros() as usize;
                out[b] = out[b & (b - 1)] ^ basis[low];
            }
            out
        })
    }

    /// The trace-dual basis `B*` of the polynomial basis `B = (1, ω, …)`:
    /// `Tr(B_i · B*_j) = δ_ij`. Obtained by inverting the Gram matrix.
    pub fn dual_basis(&self) -> Vec<Elem> {
        let e = self.degree() as usize;
        // Gram rows G[i] with bit j = Tr(ω^i ω^j), augmented with identity
        let mut rows: Vec<(u32, u32)> = (0..e)
            .map(|i| {
                let g =
                    (0..e).fold(0u32, |acc, j| acc | ((self.trace(self.mul(Elem(1 << i), Elem(1 << j))) as u32) << j));
                (g, 1u32 << i)
            })
            .collect();
        for col in 0..e {
            let pivot = (col..e).find(|&r| rows[r].0 >> col & 1 == 1).expect("Gram matrix is invertible");
            rows.swap(col, pivot);
            for r in 0..e {
                if r != col && rows[r].0 >> col & 1 == 1 {
                    rows[r].0 ^= rows[col].0;
                    rows[r].1 ^= rows[col].1;
                }
            }
        }
        // G symmetric, so the j-th dual basis element has coordinates G^{-1} e_j
        (0..e).map(|j| Elem((0..e).fold(0u32, |acc, i| acc | ((rows[i].1 >> j & 1) << i)))).collect()
    }

    /// Formats an element as `0`, `w^k` (when logs exist) or `0x<hex>`.
    pub fn format_elem(&self, a: Elem) -> String {
        if a.is_zero() {
            return "0".to_string();
        }
        match self.log(a) {
            Some(k) => format!("w^{k}"),
            None => format!("{:#x}", a.0),
        }
    }

    /// Parses `0`, `1`, `w`, `w^<k>` (k may be negative) or `0x<hex>`.
    pub fn parse_elem(&self, s: &str) -> Result<Elem> {
        let s = s.trim();
        let bad = || Error::Parse(format!("element `{s}`"));
        if let Some(hex) = s.strip_prefix("0x") {
            let v = u32::from_str_radix(hex, 16).map_err(|_| bad())?;
            if v as usize >= self.size() {
                return Err(Error::Parse(format!("element `{s}` exceeds field size")));
            }
            return Ok(Elem(v));
        }
        match s {
            "0" => return Ok(Elem::ZERO),
            "1" => return Ok(Elem::ONE),
            "w" => return Ok(self.generator()),
            _ => {}
        }
        if let Some(k) = s.strip_prefix("w^") {
            let k: i64 = k.trim().parse().map_err(|_| bad())?;
            return Ok(self.exp(k));
        }
        Err(bad())
    }
}

/// Canonical embedding of GF(2^k) (default or given modulus) into the
/// subfield `{a : a^(2^k) = a}` of a larger field.
///
/// The small generator is sent to the root of the small modulus of the form
/// `ω^((2^n-1)/(2^k-1) · j)` with the least `j`, which makes the map a field
/// isomorphism rather than just a group isomorphism.
#[derive(Debug, Clone)]
pub struct Subfield {
    pub small: FieldCtx,
    pub big: FieldCtx,
    image_basis: Vec<Elem>,
    restrict: std::collections::HashMap<u32, u32>,
}

impl Subfield {
    pub fn new(big: &FieldCtx, small: &FieldCtx) -> Result<Subfield> {
        let (n, k) = (big.degree(), small.degree());
        if n % k != 0 {
            return Err(Error::NotDivisor(k as u64, n as u64));
        }
        let step = big.order() as u64 / small.order() as u64;
        let modulus = small.spec().modulus;
        let eval = |x: Elem| {
            let mut acc = Elem::ZERO;
            let mut pw = Elem::ONE;
            for i in 0..=k {
                if modulus >> i & 1 == 1 {
                    acc += pw;
                }
                pw = big.mul(pw, x);
            }
            acc
        };
        let beta = if k == 1 {
            Elem::ONE
        } else {
            (1..small.order() as u64)
                .filter(|j| gcd(*j, small.order() as u64) == 1)
                .map(|j| big.exp((step * j) as i64))
                .find(|&x| eval(x).is_zero())
                .expect("primitive modulus has a root in the subfield")
        };
        let mut image_basis = Vec::with_capacity(k as usize);
        let mut pw = Elem::ONE;
        for _ in 0..k {
            image_basis.push(pw);
            pw = big.mul(pw, beta);
        }
        let mut sf = Subfield { small: small.clone(), big: big.clone(), image_basis, restrict: Default::default() };
        let restrict = small.elements().map(|a| (sf.embed(a).0, a.0)).collect();
        sf.restrict = restrict;
        Ok(sf)
    }

    /// Image of a small-field element in the big field.
    pub fn embed(&self, a: Elem) -> Elem {
        let mut acc = Elem::ZERO;
        for (i, b) in self.image_basis.iter().enumerate() {
            if a.0 >> i & 1 == 1 {
                acc += *b;
            }
        }
        acc
    }

    /// Preimage of a big-field element, if it lies in the subfield.
    pub fn restrict(&self, a: Elem) -> Option<Elem> {
        self.restrict.get(&a.0).map(|&v| Elem(v))
    }

    /// Image of the small field's generator.
    pub fn generator_image(&self) -> Elem {
        self.image_basis.get(1).copied().unwrap_or(Elem::ONE)
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_moduli_are_smallest_primitive() {
        for e in 2..=MAX_DEGREE {
            let m = DEFAULT_MODULI[e as usize - 1];
            assert!(is_primitive(m, e), "degree {e}");
            let smallest = ((1u64 << e) | 1..m).step_by(2).find(|&c| is_primitive(c, e));
            assert_eq!(smallest, None, "degree {e}");
        }
    }

    #[test]
    fn degree_one_is_f2() {
        let f = make_field(1, None).unwrap();
        assert_eq!(f.generator(), Elem::ONE);
        assert_eq!(f.mul(Elem::ONE, Elem::ONE), Elem::ONE);
        assert!(f.trace(Elem::ONE));
        // modulus x is accepted as the degree-one convention
        assert!(make_field(1, Some(0b10)).is_ok());
    }

    #[test]
    fn rejects_bad_moduli() {
        assert_eq!(make_field(4, Some(0b10101)).unwrap_err(), Error::NotIrreducible(0b10101));
        // x^4+x^3+x^2+x+1 is irreducible with x of order 5
        assert_eq!(make_field(4, Some(0b11111)).unwrap_err(), Error::NotPrimitive(0b11111));
        assert!(matches!(make_field(4, Some(0b111)), Err(Error::WrongModulusDegree(..))));
        assert!(matches!(make_field(21, None), Err(Error::DegreeOutOfRange(21))));
    }

    #[test]
    fn f16_examples() {
        let f = make_field(4, Some(0b10011)).unwrap();
        let w = f.generator();
        assert_eq!(f.pow_u(w, 15), Elem::ONE);
        assert_ne!(f.pow_u(w, 5), Elem::ONE);
        let prod = f.mul(f.pow_u(w, 3), f.pow_u(w, 12));
        assert_eq!(prod, Elem::ONE);
        assert_eq!(f.mul_clmul(f.pow_u(w, 3), f.pow_u(w, 12)), Elem::ONE);
        let a = f.exp(7);
        assert_eq!(a + a, Elem::ZERO);
    }

    #[test]
    fn zero_power_conventions() {
        let f = make_field(4, None).unwrap();
        assert_eq!(f.pow_u(Elem::ZERO, 0), Elem::ONE);
        assert_eq!(f.pow_u(Elem::ZERO, 2), Elem::ZERO);
        assert_eq!(f.pow(Elem::ZERO, -1), Elem::ZERO);
        assert_eq!(f.inv(Elem::ZERO), Err(Error::ZeroInverse));
        let a = f.exp(4);
        assert_eq!(f.mul(f.pow(a, -3), f.pow_u(a, 3)), Elem::ONE);
    }

    #[test]
    fn f4_trace_values() {
        let f = make_field(2, Some(0b111)).unwrap();
        let w = f.generator();
        assert_eq!(f.mul(w, f.square(w)), Elem::ONE);
        assert!(!f.trace(Elem::ZERO));
        assert!(f.trace(w));
        assert!(!f.trace(Elem::ONE));
    }

    #[test]
    fn relative_trace_lands_in_subfield() {
        let f = make_field(4, None).unwrap();
        for a in f.elements() {
            let r = f.rel_trace(2, a).unwrap();
            assert_eq!(f.pow_u(r, 4), r);
            assert_eq!(r, a + f.pow_u(a, 4));
        }
        assert_eq!(f.rel_trace(2, Elem::ONE).unwrap(), Elem::ZERO);
        assert!(f.rel_trace(3, Elem::ONE).is_err());
    }

    #[test]
    fn subfield_membership_in_f16() {
        let f = make_field(4, None).unwrap();
        assert!(f.in_subfield(2, Elem::ZERO));
        assert!(f.in_subfield(2, f.exp(5)));
        assert!(!f.in_subfield(2, f.generator()));
        assert_eq!(f.subfield_elements(2).unwrap().len(), 4);
    }

    #[test]
    fn unity_roots() {
        let f = make_field(4, None).unwrap();
        assert_eq!(f.unity_root(1).unwrap(), Elem::ONE);
        let z = f.unity_root(5).unwrap();
        assert_eq!(z, f.exp(3));
        assert_eq!(f.mult_order(z), Some(5));
        assert!(f.unity_root(7).is_err());
        let g = make_field(6, None).unwrap();
        let theta = g.unity_root(3).unwrap();
        assert_eq!(g.square(theta) + theta + Elem::ONE, Elem::ZERO);
    }

    #[test]
    fn dual_basis_is_trace_dual() {
        for e in [1, 2, 5, 8, 12] {
            let f = make_field(e, None).unwrap();
            let dual = f.dual_basis();
            for i in 0..e {
                for j in 0..e {
                    let t = f.trace(f.mul(Elem(1 << i), dual[j as usize]));
                    assert_eq!(t, i == j);
                }
            }
            let coords = f.dual_coords();
            for b in f.elements().step_by(7) {
                for x in f.elements().step_by(5) {
                    let lhs = f.trace(f.mul(b, x));
                    let rhs = (coords[b.0 as usize] & x.0).count_ones() & 1 == 1;
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn clmul_path_matches_tables() {
        let f = make_field(10, None).unwrap();
        for a in f.elements().step_by(13) {
            for b in f.elements().step_by(17) {
                assert_eq!(f.mul(a, b), f.mul_clmul(a, b));
            }
        }
        let g = make_field(18, None).unwrap();
        assert!(!g.has_tables());
        let w = g.generator();
        assert_eq!(g.pow_u(w, g.order() as u64), Elem::ONE);
        assert_eq!(g.mult_order(w), Some(g.order() as u64));
    }

    #[test]
    fn field_spec_text() {
        let s: FieldSpec = "gf2:e=4".parse().unwrap();
        assert_eq!(s, FieldSpec { degree: 4, modulus: 0x13 });
        assert_eq!(s.to_string(), "gf2:e=4");
        let t: FieldSpec = "gf2:e=4,mod=0x19".parse().unwrap();
        assert_eq!(t.modulus, 0x19);
        assert_eq!(t.to_string(), "gf2:e=4,mod=0x19");
        assert!("gf3:e=4".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn element_text() {
        let f = make_field(6, None).unwrap();
        for a in f.elements() {
            assert_eq!(f.parse_elem(&f.format_elem(a)).unwrap(), a);
        }
        assert_eq!(f.parse_elem("w^-1").unwrap(), f.inv(f.generator()).unwrap());
        assert_eq!(f.parse_elem("0x3").unwrap(), Elem(3));
        assert!(f.parse_elem("0x40").is_err());
    }

    #[test]
    fn subfield_embedding_is_a_field_map() {
        let big = make_field(12, None).unwrap();
        let small = make_field(6, None).unwrap();
        let sf = Subfield::new(&big, &small).unwrap();
        for a in small.elements() {
            let ea = sf.embed(a);
            assert!(big.in_subfield(6, ea));
            assert_eq!(sf.restrict(ea), Some(a));
            for b in small.elements().step_by(11) {
                assert_eq!(sf.embed(small.mul(a, b)), big.mul(ea, sf.embed(b)));
            }
        }
        assert_eq!(big.mult_order(sf.generator_image()), Some(63));
    }
}
