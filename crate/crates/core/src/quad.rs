//! GF(q²) viewed as a quadratic extension of GF(q), q = 2^m.
//!
//! Holds the data every cyclotomic construction shares: the generator `u`
//! of the unit circle μ_{q+1}, a generator ξ of F_q^*, the Artin–Schreier
//! solver for `x^q + x = c`, and Kloosterman sums over the subfield.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};

struct QuadInner {
    ctx: FieldCtx,
    m: u32,
    q: u64,
    u: Elem,
    u_pows: Vec<Elem>,
    xi: Elem,
    x0: Elem,
    // echelon pivots of x ↦ x^q + x as (image, preimage), sorted by leading bit of image
    as_pivots: Vec<(u32, u32)>,
    // reduced basis of the kernel F_q, sorted by descending leading bit
    as_kernel: Vec<u32>,
    kloosterman: OnceLock<std::collections::HashMap<u32, i64>>,
}

/// A field of even degree `n = 2m` together with its quadratic-extension data.
#[derive(Clone)]
pub struct QuadField {
    inner: Arc<QuadInner>,
}

impl fmt::Debug for QuadField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadField(m={}, {})", self.m(), self.ctx().spec())
    }
}

impl PartialEq for QuadField {
    fn eq(&self, other: &Self) -> bool {
        self.ctx() == other.ctx()
    }
}

/// `u = ω^((q-1)(2^(n-1)-1))`, a generator of μ_{q+1}.
pub fn compute_u(ctx: &FieldCtx) -> Result<Elem> {
    let n = ctx.degree();
    if n % 2 != 0 {
        return Err(Error::OddDegree(n));
    }
    let q = 1u64 << (n / 2);
    let order = ctx.order() as u64;
    let e = ((q - 1) % order) * (((1u64 << (n - 1)) - 1) % order) % order;
    Ok(ctx.exp(e as i64))
}

impl QuadField {
    pub fn new(ctx: &FieldCtx) -> Result<QuadField> {
        let n = ctx.degree();
        if n % 2 != 0 {
            return Err(Error::OddDegree(n));
        }
        let m = n / 2;
        let q = 1u64 << m;
        let u = compute_u(ctx)?;
        let mut u_pows = Vec::with_capacity(q as usize + 1);
        let mut cur = Elem::ONE;
        for _ in 0..=q {
            u_pows.push(cur);
            cur = ctx.mul(cur, u);
        }
        let xi = ctx.exp((q + 1) as i64);

        let mut as_pivots: Vec<(u32, u32)> = Vec::new();
        let mut kernel: Vec<u32> = Vec::new();
        for i in 0..n {
            let e = Elem(1 << i);
            let mut img = (ctx.pow_u(e, q) + e).0;
            let mut pre = e.0;
            for &(pi, pp) in &as_pivots {
                if img ^ pi < img {
                    img ^= pi;
                    pre ^= pp;
                }
            }
            if img != 0 {
                as_pivots.push((img, pre));
                as_pivots.sort_by(|a, b| b.0.cmp(&a.0));
            } else {
                kernel.push(pre);
            }
        }
        // fully reduce the kernel basis so greedy reduction yields the minimum
        let mut as_kernel: Vec<u32> = Vec::new();
        for mut k in kernel {
            for &b in &as_kernel {
                k = k.min(k ^ b);
            }
            if k != 0 {
                for b in as_kernel.iter_mut() {
                    *b = (*b).min(*b ^ k);
                }
                as_kernel.push(k);
                as_kernel.sort_by(|a, b| b.cmp(a));
            }
        }

        let mut inner = QuadInner {
            ctx: ctx.clone(),
            m,
            q,
            u,
            u_pows,
            xi,
            x0: Elem::ZERO,
            as_pivots,
            as_kernel,
            kloosterman: OnceLock::new(),
        };
        let probe = QuadField { inner: Arc::new(inner) };
        let x0 = probe.solve_artin_schreier(Elem::ONE).expect("Tr_m^n(1) = 0");
        inner = Arc::try_unwrap(probe.inner).ok().expect("unshared");
        inner.x0 = x0;
        Ok(QuadField { inner: Arc::new(inner) })
    }

    /// Convenience: default field of degree `2m`.
    pub fn with_m(m: u32) -> Result<QuadField> {
        QuadField::new(&crate::field::make_field(2 * m, None)?)
    }

    #[inline]
    pub fn ctx(&self) -> &FieldCtx {
        &self.inner.ctx
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.inner.m
    }

    #[inline]
    pub fn n(&self) -> u32 {
        2 * self.inner.m
    }

    #[inline]
    pub fn q(&self) -> u64 {
        self.inner.q
    }

    /// Generator of μ_{q+1}.
    #[inline]
    pub fn u(&self) -> Elem {
        self.inner.u
    }

    /// `u^i` for any integer `i`.
    #[inline]
    pub fn u_pow(&self, i: i64) -> Elem {
        let d = self.q() as i64 + 1;
        self.inner.u_pows[i.rem_euclid(d) as usize]
    }

    /// The unit circle μ_{q+1} as `u^0, u^1, …, u^q`.
    pub fn mu(&self) -> &[Elem] {
        &self.inner.u_pows[..self.q() as usize + 1]
    }

    /// Canonical generator ξ = ω^{q+1} of F_q^*.
    #[inline]
    pub fn xi(&self) -> Elem {
        self.inner.xi
    }

    /// Canonical solution of `x^q + x = 1`.
    #[inline]
    pub fn x0(&self) -> Elem {
        self.inner.x0
    }

    /// `a^q`, the conjugate over F_q.
    #[inline]
    pub fn conj(&self, a: Elem) -> Elem {
        self.ctx().pow_u(a, self.q())
    }

    /// `a^(q+1)`, the norm down to F_q.
    #[inline]
    pub fn norm(&self, a: Elem) -> Elem {
        self.ctx().pow_u(a, self.q() + 1)
    }

    /// `Tr_m^n(a) = a + a^q`.
    #[inline]
    pub fn rel_trace(&self, a: Elem) -> Elem {
        a + self.conj(a)
    }

    #[inline]
    pub fn in_fq(&self, a: Elem) -> bool {
        self.conj(a) == a
    }

    /// `Tr_1^m` on an element of F_q, evaluated as `Tr_1^n(a·x0)`.
    #[inline]
    pub fn tr_m(&self, a: Elem) -> bool {
        debug_assert!(self.in_fq(a));
        self.ctx().trace(self.ctx().mul(a, self.x0()))
    }

    /// Elements of F_q: `0, ξ^0, ξ^1, …, ξ^(q-2)`.
    pub fn fq_elements(&self) -> Vec<Elem> {
        let mut v = Vec::with_capacity(self.q() as usize);
        v.push(Elem::ZERO);
        let mut cur = Elem::ONE;
        for _ in 0..self.q() - 1 {
            v.push(cur);
            cur = self.ctx().mul(cur, self.xi());
        }
        v
    }

    /// `ξ^i`, with `i = None` standing for ∞ (`ξ^∞ = 0`).
    pub fn xi_pow(&self, i: Option<u64>) -> Elem {
        match i {
            None => Elem::ZERO,
            Some(i) => self.ctx().pow_u(self.xi(), i),
        }
    }

    /// Index `i ∈ Z_{q+1}` with `x ∈ u^i F_q^*`, via `log_ω(x) mod (q+1)`.
    pub fn coset_index(&self, x: Elem) -> Result<usize> {
        if x.is_zero() {
            return Err(Error::ZeroIndex);
        }
        match self.ctx().log(x) {
            Some(l) => Ok((l as u64 % (self.q() + 1)) as usize),
            None => self.coset_index_search(x),
        }
    }

    /// Index found by testing `x·u^(-i) ∈ F_q` for each candidate.
    pub fn coset_index_search(&self, x: Elem) -> Result<usize> {
        if x.is_zero() {
            return Err(Error::ZeroIndex);
        }
        let ctx = self.ctx();
        (0..=self.q() as usize).find(|&i| self.in_fq(ctx.mul(x, self.u_pow(-(i as i64))))).ok_or(Error::ZeroIndex)
    }

    /// The `t ∈ Z_{q+1}` with `b^(q-1) = u^(2t)`, for `b ≠ 0`.
    pub fn circle_index(&self, b: Elem) -> Result<usize> {
        let j = self.coset_index(b)?;
        let d = self.q() as usize + 1;
        Ok((d - j) % d)
    }

    /// Smallest-bitmask `x` with `x^q + x = rhs`, if `Tr_m^n(rhs) = 0`.
    pub fn solve_artin_schreier(&self, rhs: Elem) -> Option<Elem> {
        let mut img = rhs.0;
        let mut pre = 0u32;
        for &(pi, pp) in &self.inner.as_pivots {
            if img ^ pi < img {
                img ^= pi;
                pre ^= pp;
            }
        }
        if img != 0 {
            return None;
        }
        for &k in &self.inner.as_kernel {
            pre = pre.min(pre ^ k);
        }
        Some(Elem(pre))
    }

    /// Roots of `x² + a x + b` in μ_{q+1}, counted exhaustively.
    ///
    /// Requires `a, b ≠ 0` and `Tr_1^n(b/a²) = 0`.
    pub fn check_quadratic_roots_in_mu(&self, a: Elem, b: Elem) -> Result<u8> {
        let ctx = self.ctx();
        if a.is_zero() || b.is_zero() || ctx.trace(ctx.div(b, ctx.square(a))?) {
            return Err(Error::LemmaPrecondition);
        }
        Ok(self.mu().iter().filter(|&&z| (ctx.square(z) + ctx.mul(a, z) + b).is_zero()).count() as u8)
    }

    /// Root count in μ_{q+1} predicted by the closed-form criterion.
    ///
    /// The one-root test is `(1 + b^{q+1})(1 + a^{q+1} + b^{q+1}) + a²b^q +
    /// a^{2q}b = 0`. It comes from eliminating `z` between `z² + az + b` and its
    /// conjugate `b^q z² + a^q z + 1`; the last term must be `a^{2q}b` for the
    /// left side to lie in F_q at all.
    pub fn quadratic_roots_predicted(&self, a: Elem, b: Elem) -> Result<u8> {
        let ctx = self.ctx();
        if a.is_zero() || b.is_zero() || ctx.trace(ctx.div(b, ctx.square(a))?) {
            return Err(Error::LemmaPrecondition);
        }
        let q = self.q();
        let special = ctx.pow(a, 1 - q as i64);
        if b == special {
            let ratio = ctx.div(b, ctx.square(a))?;
            return Ok(if self.tr_m(ratio) { 2 } else { 0 });
        }
        let bn = self.norm(b);
        let an = self.norm(a);
        let lhs = ctx.mul(Elem::ONE + bn, Elem::ONE + an + bn)
            + ctx.mul(ctx.square(a), self.conj(b))
            + ctx.mul(ctx.square(self.conj(a)), b);
        Ok(if lhs.is_zero() { 1 } else { 0 })
    }

    fn kloosterman_table(&self) -> &std::collections::HashMap<u32, i64> {
        self.inner.kloosterman.get_or_init(|| {
            let ctx = self.ctx();
            let fq = self.fq_elements();
            fq.iter()
                .map(|&a| {
                    let s: i64 = fq
                        .iter()
                        .map(|&x| {
                            let arg = ctx.mul(a, x) + ctx.inv0(x);
                            if self.tr_m(arg) {
                                -1
                            } else {
                                1
                            }
                        })
                        .sum();
                    (a.0, s)
                })
                .collect()
        })
    }

    /// Kloosterman sum `K_m(a)` for `a ∈ F_q`, computed inside this field.
    pub fn kloosterman(&self, a: Elem) -> Result<i64> {
        self.kloosterman_table()
            .get(&a.0)
            .copied()
            .ok_or_else(|| Error::InvalidParams(format!("{} not in F_q", self.ctx().format_elem(a))))
    }

    /// `Σ_{z ∈ μ_{q+1}} (-1)^{Tr(a z)}`.
    pub fn mu_character_sum(&self, a: Elem) -> i64 {
        let ctx = self.ctx();
        self.mu().iter().map(|&z| if ctx.trace(ctx.mul(a, z)) { -1 } else { 1 }).sum()
    }

    /// Parses an element; besides the field syntax accepts `xi^k` (powers of
    /// ξ = ω^{q+1}) and `u^k` (powers of the unit-circle generator).
    pub fn parse_elem(&self, s: &str) -> Result<Elem> {
        let t = s.trim();
        let bad = || Error::Parse(format!("element `{t}`"));
        if let Some(k) = t.strip_prefix("xi^") {
            let k: i64 = k.parse().map_err(|_| bad())?;
            return Ok(self.ctx().pow(self.xi(), k));
        }
        if t == "xi" {
            return Ok(self.xi());
        }
        if let Some(k) = t.strip_prefix("u^") {
            let k: i64 = k.parse().map_err(|_| bad())?;
            return Ok(self.u_pow(k));
        }
        if t == "u" {
            return Ok(self.u());
        }
        self.ctx().parse_elem(t)
    }

    /// Parses an element that must lie in F_q.
    pub fn parse_fq(&self, s: &str) -> Result<Elem> {
        let a = self.parse_elem(s)?;
        if !self.in_fq(a) {
            return Err(Error::InvalidParams(format!("`{s}` is not in F_q")));
        }
        Ok(a)
    }

    /// Formats an element of F_q as `xi^k` (or `0`).
    pub fn format_fq(&self, a: Elem) -> String {
        if a.is_zero() {
            return "0".into();
        }
        match self.ctx().log(a) {
            Some(l) if l as u64 % (self.q() + 1) == 0 => format!("xi^{}", l as u64 / (self.q() + 1)),
            _ => self.ctx().format_elem(a),
        }
    }

    /// `log_ξ(a)` for nonzero `a ∈ F_q`.
    pub fn xi_log(&self, a: Elem) -> Option<u64> {
        if a.is_zero() || !self.in_fq(a) {
            return None;
        }
        let ctx = self.ctx();
        if let Some(l) = ctx.log(a) {
            if self.xi() == ctx.exp(self.q() as i64 + 1) {
                return Some(l as u64 / (self.q() + 1));
            }
        }
        let mut cur = Elem::ONE;
        for k in 0..self.q() - 1 {
            if cur == a {
                return Some(k);
            }
            cur = ctx.mul(cur, self.xi());
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn u_for_f16() {
        let ctx = make_field(4, None).unwrap();
        let u = compute_u(&ctx).unwrap();
        assert_eq!(u, ctx.exp(6));
        assert_eq!(ctx.mult_order(u), Some(5));
        let qf = QuadField::new(&ctx).unwrap();
        assert_eq!(ctx.pow_u(u, 5), Elem::ONE);
        assert_eq!(ctx.mul(ctx.exp(3), ctx.square(u)), Elem::ONE);
        assert_eq!(qf.mu().len(), 5);
    }

    #[test]
    fn u_generates_circle_for_all_m() {
        for m in 1..=8 {
            let qf = QuadField::with_m(m).unwrap();
            let ctx = qf.ctx();
            let q = qf.q();
            assert_eq!(ctx.mult_order(qf.u()), Some(q + 1));
            assert_eq!(ctx.mul(ctx.exp(q as i64 - 1), ctx.square(qf.u())), Elem::ONE);
        }
    }

    #[test]
    fn odd_degree_rejected() {
        let ctx = make_field(5, None).unwrap();
        assert_eq!(QuadField::new(&ctx).unwrap_err(), Error::OddDegree(5));
    }

    #[test]
    fn artin_schreier_examples() {
        let qf = QuadField::with_m(2).unwrap();
        assert_eq!(qf.solve_artin_schreier(Elem::ZERO), Some(Elem::ZERO));
        let x0 = qf.x0();
        assert_eq!(qf.conj(x0) + x0, Elem::ONE);
        assert_eq!(qf.rel_trace(x0), Elem::ONE);
        assert_eq!(qf.solve_artin_schreier(qf.ctx().generator()), None);
    }

    #[test]
    fn artin_schreier_canonical_is_minimal() {
        for m in 1..=4 {
            let qf = QuadField::with_m(m).unwrap();
            let ctx = qf.ctx();
            for rhs in ctx.elements() {
                let brute = ctx.elements().find(|&x| qf.rel_trace(x) == rhs);
                assert_eq!(qf.solve_artin_schreier(rhs), brute, "m={m} rhs={rhs:?}");
            }
        }
    }

    #[test]
    fn coset_index_closed_form_matches_search() {
        for m in 1..=6 {
            let qf = QuadField::with_m(m).unwrap();
            for x in qf.ctx().nonzero() {
                assert_eq!(qf.coset_index(x).unwrap(), qf.coset_index_search(x).unwrap());
            }
            assert_eq!(qf.coset_index(Elem::ZERO), Err(Error::ZeroIndex));
        }
    }

    #[test]
    fn tr_m_matches_definition() {
        let qf = QuadField::with_m(5).unwrap();
        for a in qf.fq_elements() {
            assert_eq!(qf.tr_m(a), qf.ctx().subfield_trace(5, a));
        }
    }

    #[test]
    fn quadratic_roots_examples() {
        // m odd: roots of x²+x+1 are the primitive cube roots, which lie in μ_{q+1}
        for m in [3, 5] {
            let qf = QuadField::with_m(m).unwrap();
            assert_eq!(qf.check_quadratic_roots_in_mu(Elem::ONE, Elem::ONE).unwrap(), 2);
        }
        let qf = QuadField::with_m(2).unwrap();
        assert_eq!(qf.check_quadratic_roots_in_mu(Elem::ONE, Elem::ONE).unwrap(), 0);
        assert_eq!(qf.quadratic_roots_predicted(Elem::ONE, Elem::ONE).unwrap(), 0);
        let w = qf.ctx().generator();
        let bad = qf
            .ctx()
            .elements()
            .find(|&b| !b.is_zero() && qf.ctx().trace(qf.ctx().div(b, qf.ctx().square(w)).unwrap()))
            .unwrap();
        assert_eq!(qf.check_quadratic_roots_in_mu(w, bad), Err(Error::LemmaPrecondition));
    }

    #[test]
    fn quadratic_root_criterion_is_exact() {
        for m in 2..=3 {
            let qf = QuadField::with_m(m).unwrap();
            let ctx = qf.ctx();
            let mut printed_form_wrong = false;
            for a in ctx.nonzero() {
                for b in ctx.nonzero() {
                    let Ok(brute) = qf.check_quadratic_roots_in_mu(a, b) else { continue };
                    assert_eq!(qf.quadratic_roots_predicted(a, b).unwrap(), brute);
                    if b != ctx.pow(a, 1 - qf.q() as i64) {
                        let (an, bn) = (qf.norm(a), qf.norm(b));
                        let with_aq = ctx.mul(Elem::ONE + bn, Elem::ONE + an + bn)
                            + ctx.mul(ctx.square(a), qf.conj(b))
                            + ctx.mul(qf.conj(a), b);
                        printed_form_wrong |= with_aq.is_zero() != (brute == 1);
                    }
                }
            }
            // the variant with a^q b in place of a^{2q} b is not a criterion
            assert!(printed_form_wrong);
        }
    }

    #[test]
    fn element_syntax() {
        let qf = QuadField::with_m(3).unwrap();
        assert_eq!(qf.parse_elem("xi^2").unwrap(), qf.ctx().exp(18));
        assert_eq!(qf.parse_elem("u^10").unwrap(), qf.u_pow(1));
        assert!(qf.parse_fq("w").is_err());
        let a = qf.parse_fq("xi^5").unwrap();
        assert_eq!(qf.format_fq(a), "xi^5");
        assert_eq!(qf.xi_log(a), Some(5));
    }
}
