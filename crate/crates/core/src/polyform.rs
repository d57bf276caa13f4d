//! Switching between cyclotomic form and polynomial form.
//!
//! Multiplicative specs convert through the interpolation identity over the
//! `d` cosets of the index-`d` subgroup. Additive specs convert through the
//! indicator `φ(x) = x^q + x`, both as a cheap expression tree and as an
//! expanded sparse polynomial guarded by a term cap.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::boolfun::BooleanFunction;
use crate::cyclotomic::{AddCycSpec, MultBranch, MultCycSpec};
use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx, FieldSpec};
use crate::quad::QuadField;

/// Default cap on expanded polynomial size.
pub const DEFAULT_EXPANSION_CAP: usize = 1 << 22;

/// Reduces an exponent on nonzero arguments while keeping `0` as the constant.
pub fn reduce_exponent(e: u64, order: u64) -> u64 {
    if e == 0 {
        0
    } else {
        (e - 1) % order + 1
    }
}

/// Sparse `Σ c_e x^e` with `e ∈ [0, 2^n - 1]`; `x^0 = 1` everywhere while
/// `x^{2^n-1}` vanishes at zero.
#[derive(Debug, Clone, PartialEq)]
pub struct UnivariatePoly {
    ctx: FieldCtx,
    terms: BTreeMap<u64, Elem>,
}

impl UnivariatePoly {
    pub fn zero(ctx: &FieldCtx) -> UnivariatePoly {
        UnivariatePoly { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    /// Adds `c x^e`, reducing `e` and dropping terms that cancel.
    pub fn add_term(&mut self, c: Elem, e: u64) {
        if c.is_zero() {
            return;
        }
        let e = reduce_exponent(e, self.ctx.order() as u64);
        let v = self.terms.entry(e).or_insert(Elem::ZERO);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, Elem)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().next_back().copied()
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let ctx = &self.ctx;
        self.terms.iter().fold(Elem::ZERO, |acc, (&e, &c)| acc + ctx.mul(c, ctx.pow_u(x, e)))
    }

    /// `Tr ∘ P` as a trace polynomial.
    pub fn trace_form(&self) -> TracePolynomial {
        TracePolynomial { ctx: self.ctx.clone(), terms: self.terms().map(|(e, c)| (c, e)).collect(), constant: false }
    }

    pub fn to_json(&self) -> String {
        let doc = PolyJson {
            kind: "poly".into(),
            field: self.ctx.spec().to_string(),
            terms: self
                .terms()
                .map(|(e, c)| TermJson { coeff: self.ctx.format_elem(c), exp: e, trace_to: None })
                .collect(),
            constant: None,
        };
        serde_json::to_string(&doc).expect("serializable")
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: String,
    exp: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    trace_to: Option<u32>,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    kind: String,
    field: String,
    terms: Vec<TermJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    constant: Option<u8>,
}

/// `x ↦ Σ_j Tr(c_j x^{e_j}) + constant`.
#[derive(Debug, Clone, PartialEq)]
pub struct TracePolynomial {
    pub ctx: FieldCtx,
    /// `(coefficient, exponent)`, kept in the order given.
    pub terms: Vec<(Elem, u64)>,
    pub constant: bool,
}

impl TracePolynomial {
    pub fn new(ctx: &FieldCtx, terms: Vec<(Elem, u64)>, constant: bool) -> TracePolynomial {
        TracePolynomial { ctx: ctx.clone(), terms, constant }
    }

    pub fn eval(&self, x: Elem) -> bool {
        let ctx = &self.ctx;
        let inner = self.terms.iter().fold(Elem::ZERO, |acc, &(c, e)| acc + ctx.mul(c, ctx.pow_u(x, e)));
        ctx.trace(inner) ^ self.constant
    }

    pub fn materialize(&self) -> BooleanFunction {
        BooleanFunction::from_closure(&self.ctx, |x| self.eval(x))
    }

    /// Merges equal exponents, drops zero coefficients, sorts by exponent.
    pub fn normalized(&self) -> TracePolynomial {
        let mut p = UnivariatePoly::zero(&self.ctx);
        for &(c, e) in &self.terms {
            p.add_term(c, e);
        }
        let mut t = p.trace_form();
        t.constant = self.constant;
        t
    }

    pub fn to_json(&self) -> String {
        let n = self.normalized();
        let doc = PolyJson {
            kind: "trace_poly".into(),
            field: self.ctx.spec().to_string(),
            terms: n
                .terms
                .iter()
                .map(|&(c, e)| TermJson { coeff: self.ctx.format_elem(c), exp: e, trace_to: Some(1) })
                .collect(),
            constant: Some(self.constant as u8),
        };
        serde_json::to_string(&doc).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<TracePolynomial> {
        let doc: PolyJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        if doc.kind != "trace_poly" {
            return Err(Error::Parse(format!("expected kind `trace_poly`, got `{}`", doc.kind)));
        }
        let ctx = FieldCtx::new(doc.field.parse::<FieldSpec>()?)?;
        let terms = doc
            .terms
            .iter()
            .map(|t| {
                if t.trace_to.unwrap_or(1) != 1 {
                    return Err(Error::Parse("only absolute traces are supported".into()));
                }
                Ok((ctx.parse_elem(&t.coeff)?, t.exp))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TracePolynomial::new(&ctx, terms, doc.constant.unwrap_or(0) != 0))
    }
}

// ----------------------------------------------------------------------------
// Multiplicative conversion

/// Polynomial of the index-`d` cyclotomic mapping `x ↦ a_i x^{r_i}` on
/// `ω^i C`, where `C` is the subgroup of index `d`: `P(x) = Σ_{i,j}
/// ω^{-ij(2^n-1)/d} a_i x^{j(2^n-1)/d + r_i}`, with `P(0) = 0`.
pub fn mult_to_poly_general(ctx: &FieldCtx, d: u64, branches: &[MultBranch]) -> Result<UnivariatePoly> {
    let order = ctx.order() as u64;
    if d % 2 == 0 {
        return Err(Error::EvenIndex(d));
    }
    if order % d != 0 {
        return Err(Error::NotDivisor(d, order));
    }
    if branches.len() as u64 != d {
        return Err(Error::InvalidParams(format!("expected {d} branches")));
    }
    let step = order / d;
    let mut p = UnivariatePoly::zero(ctx);
    for (i, br) in branches.iter().enumerate() {
        for j in 0..d {
            let coeff = ctx.mul(ctx.exp(-((i as u64 * j % d * step) as i64)), br.a);
            let e = j * step + br.r;
            // x^0 would survive at zero; x^{2^n-1} agrees elsewhere and vanishes there
            p.add_term(coeff, if e == 0 { order } else { e });
        }
    }
    Ok(p)
}

/// [`mult_to_poly_general`] for the `q + 1` cosets `u^i F_q^*`.
pub fn mult_to_poly(spec: &MultCycSpec) -> Result<UnivariatePoly> {
    if spec.value_at_zero {
        return Err(Error::InvalidParams("value at zero must be 0 for a field-valued form".into()));
    }
    mult_to_poly_general(spec.field.ctx(), spec.d() as u64, &spec.branches)
}

/// `Σ_{i,j=0}^{q} Tr(u^{2ij} a_i x^{(q-1)(j+l_i)})`, assembled directly.
pub fn dillon_trace_form(field: &QuadField, params: &[(Elem, u64)]) -> TracePolynomial {
    let ctx = field.ctx();
    let q = field.q();
    let mut terms = Vec::new();
    for (i, &(a, l)) in params.iter().enumerate() {
        for j in 0..=q {
            terms.push((ctx.mul(field.u_pow(2 * i as i64 * j as i64), a), (q - 1) * (j + l)));
        }
    }
    TracePolynomial::new(ctx, terms, false)
}

/// `Σ_{i,j=0}^{q} Tr(u^{2ij} a_i x^{(q-1)(j+s_i)+1})`, assembled directly.
pub fn niho_trace_form(field: &QuadField, params: &[(Elem, u64)]) -> TracePolynomial {
    let ctx = field.ctx();
    let q = field.q();
    let mut terms = Vec::new();
    for (i, &(a, s)) in params.iter().enumerate() {
        for j in 0..=q {
            terms.push((ctx.mul(field.u_pow(2 * i as i64 * j as i64), a), (q - 1) * (j + s) + 1));
        }
    }
    TracePolynomial::new(ctx, terms, false)
}

/// Shape of a trace polynomial's exponents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyShape {
    /// All exponents `t(q-1)`.
    Dillon,
    /// All exponents `s(q-1) + 1`.
    Niho,
}

pub fn poly_shape(field: &QuadField, p: &TracePolynomial) -> Result<PolyShape> {
    let qm1 = field.q() - 1;
    let first_non_dillon = p.terms.iter().map(|&(_, e)| e).find(|e| e % qm1 != 0);
    let Some(bad) = first_non_dillon else {
        return Ok(PolyShape::Dillon);
    };
    if !p.constant && p.terms.iter().all(|&(_, e)| e % qm1 == 1 % qm1) {
        return Ok(PolyShape::Niho);
    }
    Err(Error::NotPureShape(bad))
}

/// Cyclotomic form of a Dillon or Niho trace polynomial.
///
/// Dillon: branch `i` is `a_i x^{q-1}` with `a_i = Σ_t γ_t u^{-2i(t-1)}`, so
/// that `a_i x^{q-1} = Σ_t γ_t u^{-2it}` on `u^i F_q^*`. Niho: branch `i` is
/// `a_i x` with `a_i = Σ_t γ_t u^{-2 s_t i}`.
pub fn poly_to_cyclotomic(field: &QuadField, p: &TracePolynomial) -> Result<MultCycSpec> {
    if p.ctx != *field.ctx() {
        return Err(Error::FieldMismatch(p.ctx.spec().to_string(), field.ctx().spec().to_string()));
    }
    let ctx = field.ctx();
    let q = field.q();
    let d = q as i64 + 1;
    let shape = poly_shape(field, p)?;
    let mut branches = Vec::with_capacity(d as usize);
    for i in 0..d {
        let mut a = Elem::ZERO;
        for &(g, e) in &p.terms {
            let k = match shape {
                PolyShape::Dillon => -2 * i * ((e / (q - 1)) as i64 % d - 1),
                PolyShape::Niho => -2 * i * (((e - 1) / (q - 1)) as i64 % d),
            };
            a += ctx.mul(g, field.u_pow(k));
        }
        if p.constant {
            // δ with Tr(δ) = 1, spread as δu^{2i} so that a_i x^{q-1} picks up δ
            a += ctx.mul(one_trace_element(ctx), field.u_pow(2 * i));
        }
        let r = match shape {
            PolyShape::Dillon => q - 1,
            PolyShape::Niho => 1,
        };
        branches.push(MultBranch { a, r });
    }
    let mut spec = MultCycSpec::new(field, branches)?;
    spec.value_at_zero = p.eval(Elem::ZERO);
    Ok(spec)
}

fn one_trace_element(ctx: &FieldCtx) -> Elem {
    ctx.elements().find(|&x| ctx.trace(x)).expect("trace is onto")
}

/// Trace form of the μ_{3(q-1)} construction:
/// `Tr(Σ_{i<(q+1)/3} (cε x^{(3i+l_1)(q-1)} + c x^{(3i+l_2)(q-1)}) + c x^{l_2(q-1)})`.
pub fn dillon_r3_polyform(field: &QuadField, c: Elem, eps: Elem, l1: u64, l2: u64) -> Result<TracePolynomial> {
    if field.m() % 2 == 0 {
        return Err(Error::InvalidParams(format!("requires odd m, got m = {}", field.m())));
    }
    let ctx = field.ctx();
    let q = field.q();
    let ce = ctx.mul(c, eps);
    let mut terms = Vec::new();
    for i in 0..(q + 1) / 3 {
        terms.push((ce, (3 * i + l1) * (q - 1)));
        terms.push((c, (3 * i + l2) * (q - 1)));
    }
    terms.push((c, l2 * (q - 1)));
    Ok(TracePolynomial::new(ctx, terms, false))
}

// ----------------------------------------------------------------------------
// Expressions and the additive conversion

/// A small expression language over GF(2^n); traces evaluate to 0 or 1.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    X,
    Const(Elem),
    Sum(Vec<Expr>),
    Prod(Vec<Expr>),
    Pow(Box<Expr>, u64),
    /// `Tr_1^k` of the argument, which must lie in the subfield of degree `k`.
    Trace(u32, Box<Expr>),
}

impl Expr {
    pub fn eval(&self, ctx: &FieldCtx, x: Elem) -> Elem {
        match self {
            Expr::X => x,
            Expr::Const(c) => *c,
            Expr::Sum(v) => v.iter().fold(Elem::ZERO, |acc, e| acc + e.eval(ctx, x)),
            Expr::Prod(v) => {
                let mut acc = Elem::ONE;
                for e in v {
                    acc = ctx.mul(acc, e.eval(ctx, x));
                    if acc.is_zero() {
                        break;
                    }
                }
                acc
            }
            Expr::Pow(b, k) => ctx.pow_u(b.eval(ctx, x), *k),
            Expr::Trace(k, a) => Elem(ctx.subfield_trace(*k, a.eval(ctx, x)) as u32),
        }
    }

    fn fmt_with(&self, ctx: &FieldCtx, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::X => f.write_str("x"),
            Expr::Const(c) => f.write_str(&ctx.format_elem(*c)),
            Expr::Sum(v) | Expr::Prod(v) => {
                let sep = if matches!(self, Expr::Sum(_)) { " + " } else { "*" };
                f.write_str("(")?;
                for (i, e) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(sep)?;
                    }
                    e.fmt_with(ctx, f)?;
                }
                f.write_str(")")
            }
            Expr::Pow(b, k) => {
                b.fmt_with(ctx, f)?;
                write!(f, "^{k}")
            }
            Expr::Trace(k, a) => {
                write!(f, "Tr_1^{k}(")?;
                a.fmt_with(ctx, f)?;
                f.write_str(")")
            }
        }
    }

    pub fn display<'a>(&'a self, ctx: &'a FieldCtx) -> impl fmt::Display + 'a {
        struct D<'a>(&'a Expr, &'a FieldCtx);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_with(self.1, f)
            }
        }
        D(self, ctx)
    }
}

fn phi_expr(q: u64) -> Expr {
    Expr::Sum(vec![Expr::Pow(Box::new(Expr::X), q), Expr::X])
}

fn kasami_branch_expr(m: u32, q: u64, alpha: Elem) -> Expr {
    Expr::Trace(m, Box::new(Expr::Prod(vec![Expr::Const(alpha), Expr::Pow(Box::new(Expr::X), q + 1)])))
}

/// Expression and expansion of an additive spec through `φ(x) = x^q + x`.
#[derive(Debug, Clone)]
pub struct AddPolyForm {
    pub spec: AddCycSpec,
    pub expr: Expr,
}

/// `f_∞(x)(1 + φ(x)^{2^n-1}) + Σ_{j} Σ_{i=1}^{q-1} ξ^{-ij} f_j(x) φ(x)^i`
/// with `f_j(x) = Tr_1^m(α_j x^{q+1})`.
///
/// The inner exponent runs over `1..=q-1` rather than `0..q-1`: the two agree
/// whenever `φ(x) ≠ 0`, and only the former vanishes on `N_∞ = F_q`.
pub fn add_to_poly(spec: &AddCycSpec) -> AddPolyForm {
    let qf = &spec.field;
    let ctx = qf.ctx();
    let (m, q) = (qf.m(), qf.q());
    let k = q - 1;
    let order = ctx.order() as u64;
    let mut terms = vec![Expr::Prod(vec![
        kasami_branch_expr(m, q, spec.alpha_inf),
        Expr::Sum(vec![Expr::Const(Elem::ONE), Expr::Pow(Box::new(phi_expr(q)), order)]),
    ])];
    for j in 0..k {
        // Σ_i ξ^{-ij} φ^i is the indicator of φ = ξ^j
        let indicator = Expr::Sum(
            (1..=k)
                .map(|i| {
                    let c = ctx.pow(spec.xi, -((i * j % k) as i64));
                    Expr::Prod(vec![Expr::Const(c), Expr::Pow(Box::new(phi_expr(q)), i)])
                })
                .collect(),
        );
        terms.push(Expr::Prod(vec![kasami_branch_expr(m, q, spec.alphas[j as usize]), indicator]));
    }
    AddPolyForm { spec: spec.clone(), expr: Expr::Sum(terms) }
}

impl AddPolyForm {
    pub fn eval(&self, x: Elem) -> bool {
        let v = self.expr.eval(self.spec.field.ctx(), x);
        debug_assert!(v.0 <= 1);
        v.0 == 1
    }

    pub fn materialize(&self) -> BooleanFunction {
        BooleanFunction::from_closure(self.spec.field.ctx(), |x| self.eval(x))
    }

    /// Expanded sparse polynomial. `Tr_1^m(α x^{q+1}) = Σ_r α^{2^r} x^{(q+1)2^r}`
    /// and `(x^q + x)^i = Σ_{s ⊆ i} x^{qs + i - s}`, the subsets being those with
    /// odd binomial coefficient.
    pub fn expand(&self, cap: usize) -> Result<UnivariatePoly> {
        let spec = &self.spec;
        let qf = &spec.field;
        let ctx = qf.ctx();
        let (m, q) = (qf.m(), qf.q());
        let k = q - 1;
        let order = ctx.order() as u64;
        // generated (pre-merge) term count, checked before any work
        let subset_total: u64 = (1..=k).map(|i| 1u64 << i.count_ones()).sum();
        let estimate = m as u64 * (subset_total + (1u64 << order.count_ones()) + 1);
        if estimate > cap as u64 {
            return Err(Error::ExpansionCap(cap));
        }
        let mut p = UnivariatePoly::zero(ctx);
        let frob = |a: Elem, r: u32| ctx.frobenius(a, r);
        let push_phi_power = |p: &mut UnivariatePoly, coeff: Elem, base: u64, i: u64| {
            let mut s = i;
            loop {
                p.add_term(coeff, base + q * s + (i - s));
                if s == 0 {
                    break;
                }
                s = (s - 1) & i;
            }
        };
        for r in 0..m {
            let base = (q + 1) << r;
            // f_∞ (1 + φ^{2^n-1})
            let a_inf = frob(spec.alpha_inf, r);
            p.add_term(a_inf, base);
            push_phi_power(&mut p, a_inf, base, order);
            // C_{r,i} = Σ_j ξ^{-ij} α_j^{2^r}
            for i in 1..=k {
                let coeff = (0..k).fold(Elem::ZERO, |acc, j| {
                    acc + ctx.mul(ctx.pow(spec.xi, -((i * j % k) as i64)), frob(spec.alphas[j as usize], r))
                });
                if !coeff.is_zero() {
                    push_phi_power(&mut p, coeff, base, i);
                }
            }
        }
        Ok(p)
    }
}

/// `Σ_{i=0}^{q-2} Tr_1^m(α_i x^{q+1})((x^q+x+ξ^i)^{q-1} + 1) + Tr_1^m(α_∞ x^{q+1})((x^q+x)^{q-1} + 1)`.
pub fn kasami_indicator_form(spec: &AddCycSpec) -> Expr {
    let qf = &spec.field;
    let ctx = qf.ctx();
    let (m, q) = (qf.m(), qf.q());
    let branch = |alpha: Elem, shift: Elem| {
        let mut inner = vec![Expr::Pow(Box::new(Expr::X), q), Expr::X];
        if !shift.is_zero() {
            inner.push(Expr::Const(shift));
        }
        Expr::Prod(vec![
            kasami_branch_expr(m, q, alpha),
            Expr::Sum(vec![Expr::Pow(Box::new(Expr::Sum(inner)), q - 1), Expr::Const(Elem::ONE)]),
        ])
    };
    let mut terms: Vec<Expr> = (0..q - 1).map(|i| branch(spec.alphas[i as usize], ctx.pow_u(spec.xi, i))).collect();
    terms.push(branch(spec.alpha_inf, Elem::ZERO));
    Expr::Sum(terms)
}

/// `Tr_1^m(c x^{q+1})(x^q + x + c^{2^{m-1}-1})^{q-1}`.
pub fn kasami0_closed_form(field: &QuadField, c: Elem) -> Expr {
    let ctx = field.ctx();
    let (m, q) = (field.m(), field.q());
    let shift = ctx.pow_u(c, (1u64 << (m - 1)) - 1);
    Expr::Prod(vec![
        kasami_branch_expr(m, q, c),
        Expr::Pow(Box::new(Expr::Sum(vec![Expr::Pow(Box::new(Expr::X), q), Expr::X, Expr::Const(shift)])), q - 1),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{DillonParams, DillonVariant, KasamiParams, KasamiVariant};

    #[test]
    fn single_coset_is_a_monomial() {
        let ctx = crate::field::make_field(4, None).unwrap();
        let a = ctx.exp(7);
        let p = mult_to_poly_general(&ctx, 1, &[MultBranch { a, r: 6 }]).unwrap();
        assert_eq!(p.terms().collect::<Vec<_>>(), vec![(6, a)]);
        assert_eq!(mult_to_poly_general(&ctx, 3, &[MultBranch { a, r: 1 }; 3]).unwrap().eval(Elem::ZERO), Elem::ZERO);
        assert_eq!(mult_to_poly_general(&ctx, 2, &[MultBranch { a, r: 1 }; 2]), Err(Error::EvenIndex(2)));
    }

    #[test]
    fn uniform_dillon_collapses() {
        let qf = QuadField::with_m(3).unwrap();
        let c = qf.ctx().exp(5);
        let spec = MultCycSpec::uniform(&qf, c, qf.q() - 1);
        let p = mult_to_poly(&spec).unwrap();
        assert_eq!(p.terms().collect::<Vec<_>>(), vec![(qf.q() - 1, c)]);
    }

    #[test]
    fn constant_branches_keep_zero_at_origin() {
        let qf = QuadField::with_m(2).unwrap();
        let ctx = qf.ctx();
        let branches = (0..5).map(|i| MultBranch { a: ctx.exp(i), r: 0 }).collect();
        let spec = MultCycSpec::new(&qf, branches).unwrap();
        let p = mult_to_poly(&spec).unwrap();
        assert!(p.degree().unwrap() <= ctx.order() as u64);
        for x in ctx.nonzero() {
            let i = qf.coset_index(x).unwrap();
            assert_eq!(p.eval(x), spec.branches[i].a);
        }
        assert_eq!(p.eval(Elem::ZERO), Elem::ZERO);
    }

    #[test]
    fn r3_display_term_count() {
        let qf = QuadField::with_m(3).unwrap();
        let eps = qf.ctx().unity_root(3).unwrap();
        let p = dillon_r3_polyform(&qf, Elem::ONE, eps, 1, 2).unwrap();
        assert_eq!(p.terms.len(), 7);
        assert!(dillon_r3_polyform(&QuadField::with_m(2).unwrap(), Elem::ONE, Elem::ONE, 1, 1).is_err());
        let d = DillonParams::new(&qf, DillonVariant::MuR { c: Elem::ONE, eps, r: 3, l1: 1, l2: 2 }).unwrap();
        assert_eq!(p.materialize(), d.build().materialize());
    }

    #[test]
    fn additive_forms_agree() {
        let qf = QuadField::with_m(3).unwrap();
        let fq = qf.fq_elements();
        let spec = AddCycSpec::new(&qf, qf.xi(), fq[2], (0..7).map(|i| fq[(3 * i + 1) % 8]).collect()).unwrap();
        let f = spec.materialize();
        let form = add_to_poly(&spec);
        assert_eq!(form.materialize(), f);
        let expanded = form.expand(DEFAULT_EXPANSION_CAP).unwrap();
        assert_eq!(BooleanFunction::from_closure(qf.ctx(), |x| expanded.eval(x) == Elem::ONE), f);
        let ind = kasami_indicator_form(&spec);
        assert_eq!(BooleanFunction::from_closure(qf.ctx(), |x| ind.eval(qf.ctx(), x) == Elem::ONE), f);
        assert_eq!(form.expand(10).unwrap_err(), Error::ExpansionCap(10));
    }

    #[test]
    fn kasami0_closed_form_matches() {
        let qf = QuadField::with_m(3).unwrap();
        let ctx = qf.ctx();
        for c in qf.fq_elements().into_iter().skip(1) {
            let p = KasamiParams::new(&qf, KasamiVariant::ZeroBranch { c }).unwrap();
            let f = p.build().materialize();
            let e = kasami0_closed_form(&qf, c);
            assert_eq!(BooleanFunction::from_closure(ctx, |x| e.eval(ctx, x) == Elem::ONE), f);
        }
    }

    #[test]
    fn dillon_poly_round_trip() {
        let qf = QuadField::with_m(2).unwrap();
        let ctx = qf.ctx();
        let params: Vec<(Elem, u64)> = (0..5).map(|i| (ctx.exp(2 * i + 1), (i as u64 % 3) + 1)).collect();
        let d = DillonParams::new(&qf, DillonVariant::General { branches: params.clone() }).unwrap();
        let f = d.build().materialize();
        let direct = dillon_trace_form(&qf, &params);
        assert_eq!(direct.materialize(), f);
        let via = mult_to_poly(&d.build()).unwrap().trace_form();
        assert_eq!(via.materialize(), f);
        let back = poly_to_cyclotomic(&qf, &via).unwrap();
        assert_eq!(back.materialize(), f);
    }

    #[test]
    fn single_term_dillon_polynomial() {
        let qf = QuadField::with_m(3).unwrap();
        let g = qf.ctx().exp(3);
        let p = TracePolynomial::new(qf.ctx(), vec![(g, qf.q() - 1)], false);
        let spec = poly_to_cyclotomic(&qf, &p).unwrap();
        assert!(spec.branches.iter().all(|b| b.a == g && b.r == qf.q() - 1));
        let mixed = TracePolynomial::new(qf.ctx(), vec![(g, qf.q() - 1), (g, 3)], false);
        assert_eq!(poly_to_cyclotomic(&qf, &mixed).unwrap_err(), Error::NotPureShape(3));
    }

    #[test]
    fn trace_poly_json_round_trip() {
        let qf = QuadField::with_m(2).unwrap();
        let p = TracePolynomial::new(qf.ctx(), vec![(qf.ctx().exp(3), 6), (Elem::ONE, 3)], true);
        let s = p.to_json();
        assert!(s.contains(r#"{"coeff":"w^0","exp":3,"trace_to":1}"#));
        let back = TracePolynomial::from_json(&s).unwrap();
        assert_eq!(back.materialize(), p.materialize());
        assert_eq!(back.to_json(), s);
    }
}
