//! Boolean functions on GF(2^n) as truth tables, and the exact integer
//! transforms used as ground truth everywhere else.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};

/// Truth table of an F₂-valued function on GF(2^n), indexed by bitmask.
#[derive(Clone, PartialEq, Eq)]
pub struct BooleanFunction {
    ctx: FieldCtx,
    table: Vec<bool>,
}

impl std::fmt::Debug for BooleanFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BooleanFunction({:?}, {})", self.ctx, self.to_hex())
    }
}

/// Walsh coefficients `Σ_x (-1)^{f(x) + Tr(b x)}`, indexed by `b`'s bitmask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalshSpectrum {
    ctx: FieldCtx,
    values: Vec<i64>,
}

/// Algebraic normal form in the polynomial-basis coordinates of `x`:
/// bit `s` of `coeffs` is the coefficient of `Π_{i ∈ s} x_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Anf {
    pub num_vars: u32,
    pub coeffs: Vec<bool>,
}

impl Anf {
    pub fn degree(&self) -> u32 {
        self.coeffs.iter().enumerate().filter(|(_, &c)| c).map(|(s, _)| s.count_ones()).max().unwrap_or(0)
    }

    /// Möbius transform back to the truth table.
    pub fn to_table(&self) -> Vec<bool> {
        let mut t = self.coeffs.clone();
        mobius(&mut t);
        t
    }
}

/// Degree plus Walsh and autocorrelation absolute-value histograms.
/// All three survive EA-equivalence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EaInvariants {
    pub degree: u32,
    pub walsh_histogram: BTreeMap<u64, u64>,
    pub autocorrelation_histogram: BTreeMap<u64, u64>,
}

/// Outcome of comparing two invariant records.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EaVerdict {
    /// Some invariant differs, so the functions are EA-inequivalent.
    Distinguished,
    /// All invariants agree; nothing is implied either way.
    Inconclusive,
}

impl EaVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            EaVerdict::Distinguished => "distinguished",
            EaVerdict::Inconclusive => "inconclusive",
        }
    }
}

impl EaInvariants {
    pub fn compare(&self, other: &EaInvariants) -> EaVerdict {
        if self == other {
            EaVerdict::Inconclusive
        } else {
            EaVerdict::Distinguished
        }
    }
}

fn mobius(t: &mut [bool]) {
    let n = t.len();
    let mut h = 1;
    while h < n {
        for chunk in t.chunks_mut(2 * h) {
            let (lo, hi) = chunk.split_at_mut(h);
            for (a, b) in lo.iter().zip(hi.iter_mut()) {
                *b ^= *a;
            }
        }
        h *= 2;
    }
}

/// In-place unnormalised Walsh–Hadamard transform over bit coordinates.
pub fn fwht(v: &mut [i64]) {
    let n = v.len();
    let mut h = 1;
    while h < n {
        for chunk in v.chunks_mut(2 * h) {
            let (lo, hi) = chunk.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
}

#[inline]
fn sign(bit: bool) -> i64 {
    if bit {
        -1
    } else {
        1
    }
}

impl BooleanFunction {
    pub fn from_closure(ctx: &FieldCtx, mut g: impl FnMut(Elem) -> bool) -> BooleanFunction {
        let table = ctx.elements().map(&mut g).collect();
        BooleanFunction { ctx: ctx.clone(), table }
    }

    pub fn from_table(ctx: &FieldCtx, table: Vec<bool>) -> Result<BooleanFunction> {
        if table.len() != ctx.size() {
            return Err(Error::InvalidParams(format!(
                "truth table has {} entries, field has {}",
                table.len(),
                ctx.size()
            )));
        }
        Ok(BooleanFunction { ctx: ctx.clone(), table })
    }

    pub fn zero(ctx: &FieldCtx) -> BooleanFunction {
        BooleanFunction { ctx: ctx.clone(), table: vec![false; ctx.size()] }
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn num_vars(&self) -> u32 {
        self.ctx.degree()
    }

    pub fn table(&self) -> &[bool] {
        &self.table
    }

    #[inline]
    pub fn eval(&self, x: Elem) -> bool {
        self.table[x.0 as usize]
    }

    pub fn weight(&self) -> usize {
        self.table.iter().filter(|&&b| b).count()
    }

    /// Pointwise sum with another function on the same field.
    pub fn xor(&self, other: &BooleanFunction) -> BooleanFunction {
        let table = self.table.iter().zip(&other.table).map(|(a, b)| a ^ b).collect();
        BooleanFunction { ctx: self.ctx.clone(), table }
    }

    /// Fast transform: relabel the input to dual-basis coordinates and run
    /// the standard butterfly, `O(n 2^n)`.
    pub fn walsh(&self) -> WalshSpectrum {
        let raw = self.raw_walsh();
        let coords = self.ctx.dual_coords();
        let values = coords.iter().map(|&c| raw[c as usize]).collect();
        WalshSpectrum { ctx: self.ctx.clone(), values }
    }

    /// Transform over plain bit coordinates (`v·x` dot products).
    fn raw_walsh(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.table.iter().map(|&b| sign(b)).collect();
        fwht(&mut v);
        v
    }

    /// Direct `O(4^n)` evaluation of the definition; the oracle for
    /// [`BooleanFunction::walsh`].
    pub fn walsh_naive(&self) -> WalshSpectrum {
        let ctx = &self.ctx;
        let values = ctx
            .elements()
            .map(|b| ctx.elements().map(|x| sign(self.table[x.0 as usize] ^ ctx.trace(ctx.mul(b, x)))).sum())
            .collect();
        WalshSpectrum { ctx: ctx.clone(), values }
    }

    pub fn is_bent(&self) -> bool {
        self.walsh().is_bent()
    }

    /// Dual of a bent function: `f̃(b) = 0` iff `Ŵf(b) = +2^{n/2}`.
    pub fn dual(&self) -> Result<BooleanFunction> {
        self.walsh().dual()
    }

    pub fn anf(&self) -> Anf {
        let mut coeffs = self.table.clone();
        mobius(&mut coeffs);
        Anf { num_vars: self.num_vars(), coeffs }
    }

    /// Algebraic degree; the zero function has degree 0.
    pub fn algebraic_degree(&self) -> u32 {
        self.anf().degree()
    }

    /// `Σ_x (-1)^{f(x) + f(x+a)}` for every `a`, indexed by `a`'s bitmask.
    pub fn autocorrelation(&self) -> Vec<i64> {
        let mut sq: Vec<i64> = self.raw_walsh().into_iter().map(|w| w * w).collect();
        fwht(&mut sq);
        let n = self.ctx.size() as i64;
        sq.into_iter().map(|v| v / n).collect()
    }

    pub fn ea_invariants(&self) -> EaInvariants {
        let mut walsh_histogram = BTreeMap::new();
        for w in self.walsh().values() {
            *walsh_histogram.entry(w.unsigned_abs()).or_insert(0) += 1;
        }
        let mut autocorrelation_histogram = BTreeMap::new();
        for r in self.autocorrelation().into_iter().skip(1) {
            *autocorrelation_histogram.entry(r.unsigned_abs()).or_insert(0) += 1;
        }
        EaInvariants { degree: self.algebraic_degree(), walsh_histogram, autocorrelation_histogram }
    }

    /// Hex dump of the table read as an integer whose bit `x` is `f(x)`;
    /// the leading digit holds the highest elements.
    pub fn to_hex(&self) -> String {
        let digits = (self.table.len() / 4).max(1);
        let mut s = String::with_capacity(digits);
        for d in (0..digits).rev() {
            let mut nibble = 0u32;
            for k in 0..4 {
                if self.table.get(4 * d + k).copied().unwrap_or(false) {
                    nibble |= 1 << k;
                }
            }
            s.push(std::char::from_digit(nibble, 16).expect("nibble"));
        }
        s
    }

    pub fn from_hex(ctx: &FieldCtx, hex: &str) -> Result<BooleanFunction> {
        let hex = hex.trim().trim_start_matches("0x");
        let size = ctx.size();
        let digits = (size / 4).max(1);
        if hex.len() != digits {
            return Err(Error::Parse(format!("truth table needs {digits} hex digits, got {}", hex.len())));
        }
        let mut table = vec![false; size];
        for (i, ch) in hex.chars().rev().enumerate() {
            let nibble = ch.to_digit(16).ok_or_else(|| Error::Parse(format!("hex digit `{ch}`")))?;
            for k in 0..4 {
                let idx = 4 * i + k;
                let bit = nibble >> k & 1 == 1;
                if idx < size {
                    table[idx] = bit;
                } else if bit {
                    return Err(Error::Parse("truth table has bits beyond the field size".into()));
                }
            }
        }
        Ok(BooleanFunction { ctx: ctx.clone(), table })
    }
}

impl WalshSpectrum {
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn at(&self, b: Elem) -> i64 {
        self.values[b.0 as usize]
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    /// `Σ_b Ŵ(b)²`, always `2^{2n}`.
    pub fn parseval_sum(&self) -> i128 {
        self.values.iter().map(|&w| (w as i128) * (w as i128)).sum()
    }

    pub fn is_bent(&self) -> bool {
        let n = self.ctx.degree();
        if n % 2 != 0 {
            return false;
        }
        let target = 1i64 << (n / 2);
        self.values.iter().all(|w| w.abs() == target)
    }

    pub fn dual(&self) -> Result<BooleanFunction> {
        if !self.is_bent() {
            return Err(Error::NotBent);
        }
        let table = self.values.iter().map(|&w| w < 0).collect();
        Ok(BooleanFunction { ctx: self.ctx.clone(), table })
    }

    /// Recovers `f` from its spectrum via
    /// `(-1)^{f(x)} = 2^{-n} Σ_b Ŵ(b) (-1)^{Tr(bx)}`; `None` if the values
    /// are not a valid spectrum.
    pub fn inverse(&self) -> Option<BooleanFunction> {
        let coords = self.ctx.dual_coords();
        let mut raw = vec![0i64; self.values.len()];
        for (b, &w) in self.values.iter().enumerate() {
            raw[coords[b] as usize] = w;
        }
        fwht(&mut raw);
        let size = self.values.len() as i64;
        let mut table = Vec::with_capacity(raw.len());
        for v in raw {
            match v {
                v if v == size => table.push(false),
                v if v == -size => table.push(true),
                _ => return None,
            }
        }
        Some(BooleanFunction { ctx: self.ctx.clone(), table })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.values).expect("integer array")
    }
}

/// `K_m(a) = Σ_{x ∈ GF(2^m)} (-1)^{Tr(a x + x^{-1})}` with `0^{-1} = 0`.
pub fn kloosterman(ctx_m: &FieldCtx, a: Elem) -> i64 {
    ctx_m.elements().map(|x| sign(ctx_m.trace(ctx_m.mul(a, x) + ctx_m.inv0(x)))).sum()
}

/// `K_m(a)` for every `a ∈ GF(2^m)`, indexed by the bits of `a`, read off a
/// single Walsh transform of `x ↦ Tr(x^{-1})`.
pub fn kloosterman_table(ctx_m: &FieldCtx) -> Vec<i64> {
    let g = BooleanFunction::from_closure(ctx_m, |x| ctx_m.trace(ctx_m.inv0(x)));
    g.walsh().values().to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::quad::QuadField;

    #[test]
    fn kloosterman_table_matches_sums() {
        for m in 1..=6 {
            let ctx = make_field(m, None).unwrap();
            let table = kloosterman_table(&ctx);
            for a in ctx.elements() {
                assert_eq!(table[a.bits() as usize], kloosterman(&ctx, a));
            }
        }
    }

    #[test]
    fn kloosterman_weil_bound_and_divisibility() {
        // over F_2 itself K(1) = 2
        assert_eq!(kloosterman(&make_field(1, None).unwrap(), Elem::ONE), 2);
        for m in 2..=12 {
            let ctx = make_field(m, None).unwrap();
            let q = 1i64 << m;
            let table = kloosterman_table(&ctx);
            let mut hits_bound = false;
            for &k in &table[1..] {
                assert_eq!(k.rem_euclid(4), 0, "m={m}");
                // |K - 1| ≤ 2√q with the x = 0 term included
                assert!((k - 1) * (k - 1) <= 4 * q, "m={m}, K={k}");
                hits_bound |= k * k > 4 * q;
            }
            // the 0 ↦ 0 term can push |K| just past 2√q only when 2√q is irrational
            assert!(!hits_bound || m % 2 == 1, "m={m}");
        }
    }

    #[test]
    fn zero_function() {
        let ctx = make_field(4, None).unwrap();
        let f = BooleanFunction::zero(&ctx);
        let w = f.walsh();
        assert_eq!(w.values()[0], 16);
        assert!(w.values()[1..].iter().all(|&v| v == 0));
        assert!(!f.is_bent());
        assert_eq!(f.dual(), Err(Error::NotBent));
        assert_eq!(f.algebraic_degree(), 0);
        let inv = f.ea_invariants();
        assert_eq!(inv.degree, 0);
        assert_eq!(inv.walsh_histogram, BTreeMap::from([(0, 15), (16, 1)]));
        assert_eq!(inv.autocorrelation_histogram, BTreeMap::from([(16, 15)]));
    }

    #[test]
    fn trace_function() {
        let ctx = make_field(6, None).unwrap();
        let f = BooleanFunction::from_closure(&ctx, |x| ctx.trace(x));
        assert_eq!(f.weight(), 32);
        let w = f.walsh();
        assert_eq!(w.values()[1], 64);
        assert_eq!(w.values().iter().filter(|&&v| v != 0).count(), 1);
        assert_eq!(f.algebraic_degree(), 1);
    }

    #[test]
    fn kasami_monomial_is_bent_with_known_dual() {
        for m in 2..=4 {
            let qf = QuadField::with_m(m).unwrap();
            let ctx = qf.ctx();
            let q = qf.q();
            for a in qf.fq_elements().into_iter().skip(1) {
                let f = BooleanFunction::from_closure(ctx, |x| qf.tr_m(ctx.mul(a, qf.norm(x))));
                assert!(f.is_bent());
                assert_eq!(f.algebraic_degree(), 2);
                let ainv = ctx.inv(a).unwrap();
                let expected = BooleanFunction::from_closure(ctx, |x| !qf.tr_m(ctx.mul(ainv, ctx.pow_u(x, q + 1))));
                assert_eq!(f.dual().unwrap(), expected);
                assert_eq!(f.dual().unwrap().dual().unwrap(), f);
            }
        }
    }

    #[test]
    fn fast_walsh_matches_naive_small() {
        let ctx = make_field(5, None).unwrap();
        let f = BooleanFunction::from_closure(&ctx, |x| ctx.trace(ctx.pow_u(x, 7)));
        assert_eq!(f.walsh(), f.walsh_naive());
    }

    #[test]
    fn kloosterman_small_values() {
        let f4 = make_field(2, None).unwrap();
        assert_eq!(kloosterman(&f4, Elem::ZERO), 0);
        assert_eq!(kloosterman(&f4, Elem::ONE), 4);
        let qf = QuadField::with_m(2).unwrap();
        assert_eq!(qf.mu_character_sum(Elem::ZERO), 5);
        assert_eq!(qf.mu_character_sum(Elem::ONE), -3);
    }

    #[test]
    fn hex_dump() {
        let ctx = make_field(2, None).unwrap();
        let f = BooleanFunction::from_table(&ctx, vec![true, false, false, true]).unwrap();
        assert_eq!(f.to_hex(), "9");
        let ctx = make_field(4, None).unwrap();
        let mut t = vec![false; 16];
        t[15] = true;
        t[0] = true;
        let f = BooleanFunction::from_table(&ctx, t).unwrap();
        assert_eq!(f.to_hex(), "8001");
        assert_eq!(BooleanFunction::from_hex(&ctx, "8001").unwrap(), f);
        assert!(BooleanFunction::from_hex(&ctx, "801").is_err());
        let ctx1 = make_field(1, None).unwrap();
        let g = BooleanFunction::from_table(&ctx1, vec![false, true]).unwrap();
        assert_eq!(g.to_hex(), "2");
        assert_eq!(BooleanFunction::from_hex(&ctx1, "2").unwrap(), g);
        assert!(BooleanFunction::from_hex(&ctx1, "4").is_err());
    }

    #[test]
    fn spectrum_json() {
        let ctx = make_field(2, None).unwrap();
        let f = BooleanFunction::zero(&ctx);
        assert_eq!(f.walsh().to_json(), "[4,0,0,0]");
    }
}
