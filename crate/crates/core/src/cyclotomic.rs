//! Coset partitions of GF(q²) and the cyclotomic mappings defined on them.
//!
//! Multiplicative: the cosets `u^i F_q^*`, `i ∈ Z_{q+1}`, plus `{0}`.
//! Additive: the cosets `N_i = {x : x^q + x = ξ^i}`, `i ∈ {∞} ∪ Z_{q-1}`,
//! and more generally the cosets `v_i + F_{2^k}` of any subfield.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::boolfun::BooleanFunction;
use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx, FieldSpec};
use crate::quad::QuadField;

/// One branch `x ↦ a x^r` of a multiplicative mapping.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MultBranch {
    pub a: Elem,
    pub r: u64,
}

/// `f(x) = Tr(a_i x^{r_i})` on `u^i F_q^*`, `f(0) = value_at_zero`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultCycSpec {
    pub field: QuadField,
    pub branches: Vec<MultBranch>,
    pub value_at_zero: bool,
}

/// How an exponent sits modulo `q - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExponentClass {
    /// `r ≡ 0 (mod q-1)`: the branch is constant on its coset.
    Zero,
    /// `r ≡ 2^t (mod q-1)` with `0 <= t < m`.
    PowerOfTwo(u32),
}

/// Classifies `r` modulo `q - 1`; the `Zero` class wins when both apply (q = 2).
pub fn exponent_class(r: u64, m: u32) -> Option<ExponentClass> {
    let qm1 = (1u64 << m) - 1;
    let res = r % qm1;
    if res == 0 {
        return Some(ExponentClass::Zero);
    }
    (0..m).find(|&t| (1u64 << t) % qm1 == res).map(ExponentClass::PowerOfTwo)
}

impl MultCycSpec {
    pub fn new(field: &QuadField, branches: Vec<MultBranch>) -> Result<MultCycSpec> {
        let d = field.q() as usize + 1;
        if branches.len() != d {
            return Err(Error::InvalidParams(format!("expected {d} branches, got {}", branches.len())));
        }
        Ok(MultCycSpec { field: field.clone(), branches, value_at_zero: false })
    }

    /// All branches equal to `a x^r`.
    pub fn uniform(field: &QuadField, a: Elem, r: u64) -> MultCycSpec {
        let d = field.q() as usize + 1;
        MultCycSpec { field: field.clone(), branches: vec![MultBranch { a, r }; d], value_at_zero: false }
    }

    pub fn d(&self) -> usize {
        self.branches.len()
    }

    pub fn mult_coset_index(&self, x: Elem) -> Result<usize> {
        self.field.coset_index(x)
    }

    pub fn eval(&self, x: Elem) -> bool {
        let ctx = self.field.ctx();
        match self.field.coset_index(x) {
            Err(_) => self.value_at_zero,
            Ok(i) => {
                let br = self.branches[i];
                ctx.trace(ctx.mul(br.a, ctx.pow_u(x, br.r)))
            }
        }
    }

    pub fn materialize(&self) -> BooleanFunction {
        BooleanFunction::from_closure(self.field.ctx(), |x| self.eval(x))
    }

    /// `α_i = a_i u^{i r_i} + a_i^q u^{-i r_i}`, an element of F_q.
    pub fn alpha(&self, i: usize) -> Elem {
        let qf = &self.field;
        let br = self.branches[i];
        let d = self.d() as u64;
        let e = ((i as u64 % d) * (br.r % d)) % d;
        let w = qf.ctx().mul(br.a, qf.u_pow(e as i64));
        qf.rel_trace(w)
    }

    /// `S_i(b) = Σ_{x ∈ u^i F_q^*} (-1)^{Tr(a_i x^{r_i}) + Tr(b x)}` by direct summation.
    pub fn branch_sum_s(&self, i: usize, b: Elem) -> i64 {
        let ctx = self.field.ctx();
        let ui = self.field.u_pow(i as i64);
        let br = self.branches[i];
        self.field
            .fq_elements()
            .into_iter()
            .skip(1)
            .map(|y| {
                let x = ctx.mul(ui, y);
                let bit = ctx.trace(ctx.mul(br.a, ctx.pow_u(x, br.r))) ^ ctx.trace(ctx.mul(b, x));
                if bit {
                    -1
                } else {
                    1
                }
            })
            .sum()
    }

    /// `b u^i + b^q u^{-i}`, which lies in F_q.
    pub fn circle_linear(&self, i: usize, b: Elem) -> Elem {
        let qf = &self.field;
        let ctx = qf.ctx();
        ctx.mul(b, qf.u_pow(i as i64)) + ctx.mul(qf.conj(b), qf.u_pow(-(i as i64)))
    }

    /// `T_i(b) = 1` iff `b u^i + b^q u^{-i} = α_i^{2^{-t_i}}`, for a branch of
    /// class `PowerOfTwo(t_i)`.
    pub fn t_indicator(&self, i: usize, t: u32, b: Elem) -> bool {
        let m = self.field.m();
        let ctx = self.field.ctx();
        // α^{2^{-t}} = α^{2^{m-t}} inside F_q
        let root = ctx.frobenius(self.alpha(i), (m - t % m) % m);
        self.circle_linear(i, b) == root
    }

    /// Closed form of `S_i(b)` for branches whose exponent is `0` or a power
    /// of two modulo `q - 1`; `None` otherwise.
    pub fn branch_sum_closed(&self, i: usize, b: Elem) -> Option<i64> {
        let q = self.field.q() as i64;
        match exponent_class(self.branches[i].r, self.field.m())? {
            ExponentClass::Zero => {
                let s = if self.field.tr_m(self.alpha(i)) { -1 } else { 1 };
                if self.circle_linear(i, b).is_zero() {
                    Some((q - 1) * s)
                } else {
                    Some(-s)
                }
            }
            ExponentClass::PowerOfTwo(t) => Some(if self.t_indicator(i, t, b) { q - 1 } else { -1 }),
        }
    }

    pub fn to_json(&self) -> String {
        let ctx = self.field.ctx();
        let doc = MultSpecJson {
            kind: "mult".into(),
            m: self.field.m(),
            field: (!ctx.spec().is_default()).then(|| ctx.spec().to_string()),
            branches: self.branches.iter().map(|b| BranchJson { a: ctx.format_elem(b.a), r: b.r }).collect(),
            value_at_zero: self.value_at_zero.then_some(1),
        };
        serde_json::to_string(&doc).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<MultCycSpec> {
        let doc: MultSpecJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        if doc.kind != "mult" {
            return Err(Error::Parse(format!("expected kind `mult`, got `{}`", doc.kind)));
        }
        let field = field_from_json(doc.m, doc.field.as_deref())?;
        let branches = doc
            .branches
            .iter()
            .map(|b| Ok(MultBranch { a: field.parse_elem(&b.a)?, r: b.r }))
            .collect::<Result<Vec<_>>>()?;
        let mut spec = MultCycSpec::new(&field, branches)?;
        spec.value_at_zero = doc.value_at_zero.unwrap_or(0) != 0;
        Ok(spec)
    }
}

pub(crate) fn field_from_json(m: u32, field: Option<&str>) -> Result<QuadField> {
    let spec = match field {
        Some(s) => s.parse::<FieldSpec>()?,
        None => FieldSpec::default_for(2 * m)?,
    };
    if spec.degree != 2 * m {
        return Err(Error::Parse(format!("field {spec} does not have degree 2m = {}", 2 * m)));
    }
    QuadField::new(&FieldCtx::new(spec)?)
}

#[derive(Serialize, Deserialize)]
struct BranchJson {
    a: String,
    r: u64,
}

#[derive(Serialize, Deserialize)]
struct MultSpecJson {
    kind: String,
    m: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    field: Option<String>,
    branches: Vec<BranchJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    value_at_zero: Option<u8>,
}

#[derive(Serialize, Deserialize)]
struct AddSpecJson {
    kind: String,
    m: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    field: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    xi: Option<String>,
    alphas: Vec<String>,
    alpha_inf: String,
}

/// Lookup of `log_ξ` over F_q^* for an arbitrary generator ξ.
#[derive(Debug, Clone)]
pub struct XiLog {
    table: HashMap<u32, u64>,
}

impl XiLog {
    pub fn new(field: &QuadField, xi: Elem) -> XiLog {
        let ctx = field.ctx();
        let mut table = HashMap::with_capacity(field.q() as usize);
        let mut cur = Elem::ONE;
        for k in 0..field.q() - 1 {
            table.insert(cur.0, k);
            cur = ctx.mul(cur, xi);
        }
        XiLog { table }
    }

    pub fn log(&self, y: Elem) -> Option<u64> {
        self.table.get(&y.0).copied()
    }
}

/// `f(x) = Tr_1^m(α_i x^{q+1})` for `x ∈ N_i`, with `N_∞ = F_q`.
#[derive(Debug, Clone, PartialEq)]
pub struct AddCycSpec {
    pub field: QuadField,
    pub xi: Elem,
    pub alpha_inf: Elem,
    /// `α_0, …, α_{q-2}`.
    pub alphas: Vec<Elem>,
}

impl AddCycSpec {
    pub fn new(field: &QuadField, xi: Elem, alpha_inf: Elem, alphas: Vec<Elem>) -> Result<AddCycSpec> {
        let q = field.q();
        if alphas.len() as u64 != q - 1 {
            return Err(Error::InvalidParams(format!("expected {} finite alphas, got {}", q - 1, alphas.len())));
        }
        if !field.in_fq(xi) || field.ctx().mult_order(xi) != Some(q - 1) {
            return Err(Error::InvalidParams("xi must generate F_q^*".into()));
        }
        for &a in alphas.iter().chain(std::iter::once(&alpha_inf)) {
            if !field.in_fq(a) {
                return Err(Error::InvalidParams(format!("alpha {} not in F_q", field.ctx().format_elem(a))));
            }
        }
        Ok(AddCycSpec { field: field.clone(), xi, alpha_inf, alphas })
    }

    pub fn uniform(field: &QuadField, alpha: Elem) -> Result<AddCycSpec> {
        AddCycSpec::new(field, field.xi(), alpha, vec![alpha; field.q() as usize - 1])
    }

    /// `α_i` with `None` for ∞.
    pub fn alpha(&self, i: Option<u64>) -> Elem {
        match i {
            None => self.alpha_inf,
            Some(i) => self.alphas[i as usize],
        }
    }

    /// Branch labels in the order `∞, 0, 1, …, q-2`.
    pub fn labels(&self) -> impl Iterator<Item = Option<u64>> {
        std::iter::once(None).chain((0..self.alphas.len() as u64).map(Some))
    }

    pub fn xi_pow(&self, i: Option<u64>) -> Elem {
        match i {
            None => Elem::ZERO,
            Some(i) => self.field.ctx().pow_u(self.xi, i),
        }
    }

    /// Representative `v_i = ξ^i x0` of `N_i` (`v_∞ = 0`).
    pub fn representative(&self, i: Option<u64>) -> Elem {
        self.field.ctx().mul(self.xi_pow(i), self.field.x0())
    }

    /// The `i` with `x^q + x = ξ^i`.
    pub fn branch_of(&self, x: Elem, logs: &XiLog) -> Option<u64> {
        let y = self.field.rel_trace(x);
        if y.is_zero() {
            None
        } else {
            Some(logs.log(y).expect("x^q + x lies in F_q"))
        }
    }

    pub fn materialize(&self) -> BooleanFunction {
        let logs = XiLog::new(&self.field, self.xi);
        let ctx = self.field.ctx();
        BooleanFunction::from_closure(ctx, |x| {
            let alpha = self.alpha(self.branch_of(x, &logs));
            self.field.tr_m(ctx.mul(alpha, self.field.norm(x)))
        })
    }

    /// The same function as an instance of the general additive form over
    /// cosets of F_q, with `a_i = α_i x0` (so `a_i + a_i^q = α_i`) and `t_i = m`.
    pub fn to_general(&self) -> AddCycSpecGeneral {
        let ctx = self.field.ctx();
        let m = self.field.m();
        let mut reps = Vec::with_capacity(self.field.q() as usize);
        let mut branches = Vec::with_capacity(self.field.q() as usize);
        for i in self.labels() {
            reps.push(self.representative(i));
            branches.push(AddBranch { a: ctx.mul(self.alpha(i), self.field.x0()), t: m });
        }
        AddCycSpecGeneral::new(ctx, m, reps, branches).expect("N_i partition the field")
    }

    pub fn to_json(&self) -> String {
        let ctx = self.field.ctx();
        let doc = AddSpecJson {
            kind: "add".into(),
            m: self.field.m(),
            field: (!ctx.spec().is_default()).then(|| ctx.spec().to_string()),
            xi: (self.xi != self.field.xi()).then(|| ctx.format_elem(self.xi)),
            alphas: self.alphas.iter().map(|&a| ctx.format_elem(a)).collect(),
            alpha_inf: ctx.format_elem(self.alpha_inf),
        };
        serde_json::to_string(&doc).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<AddCycSpec> {
        let doc: AddSpecJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        if doc.kind != "add" {
            return Err(Error::Parse(format!("expected kind `add`, got `{}`", doc.kind)));
        }
        let field = field_from_json(doc.m, doc.field.as_deref())?;
        let xi = match &doc.xi {
            Some(s) => field.parse_elem(s)?,
            None => field.xi(),
        };
        let alphas = doc.alphas.iter().map(|s| field.parse_elem(s)).collect::<Result<Vec<_>>>()?;
        let alpha_inf = field.parse_elem(&doc.alpha_inf)?;
        AddCycSpec::new(&field, xi, alpha_inf, alphas)
    }
}

/// Quotient of GF(2^n) by its subfield GF(2^k) as an additive group.
#[derive(Debug, Clone)]
pub struct AdditiveQuotient {
    pub k: u32,
    // fully reduced basis of the subfield, by descending leading bit
    basis: Vec<u32>,
}

impl AdditiveQuotient {
    pub fn new(ctx: &FieldCtx, k: u32) -> Result<AdditiveQuotient> {
        let elems = ctx.subfield_elements(k)?;
        let mut basis: Vec<u32> = Vec::new();
        for e in elems {
            let mut v = e.0;
            for &b in &basis {
                v = v.min(v ^ b);
            }
            if v != 0 {
                for b in basis.iter_mut() {
                    *b = (*b).min(*b ^ v);
                }
                basis.push(v);
                basis.sort_by(|a, b| b.cmp(a));
            }
        }
        Ok(AdditiveQuotient { k, basis })
    }

    /// Smallest-bitmask element of `x + GF(2^k)`.
    pub fn canonical(&self, x: Elem) -> Elem {
        let mut v = x.0;
        for &b in &self.basis {
            v = v.min(v ^ b);
        }
        Elem(v)
    }

    /// All canonical representatives, increasing.
    pub fn representatives(&self, ctx: &FieldCtx) -> Vec<Elem> {
        ctx.elements().filter(|&x| self.canonical(x) == x).collect()
    }
}

/// One branch `x ↦ a x^{2^t + 1}` of a general additive mapping.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AddBranch {
    pub a: Elem,
    pub t: u32,
}

/// `f(x) = Tr(a_i x^{2^{t_i}+1})` on `v_i + GF(2^k)`.
#[derive(Debug, Clone)]
pub struct AddCycSpecGeneral {
    pub ctx: FieldCtx,
    pub k: u32,
    pub reps: Vec<Elem>,
    pub branches: Vec<AddBranch>,
    quotient: AdditiveQuotient,
    index: HashMap<u32, usize>,
}

impl AddCycSpecGeneral {
    pub fn new(ctx: &FieldCtx, k: u32, reps: Vec<Elem>, branches: Vec<AddBranch>) -> Result<AddCycSpecGeneral> {
        let n = ctx.degree();
        if k == 0 || n % k != 0 {
            return Err(Error::NotDivisor(k as u64, n as u64));
        }
        let count = 1usize << (n - k);
        if reps.len() != count || branches.len() != count {
            return Err(Error::InvalidParams(format!("expected {count} cosets")));
        }
        if let Some(b) = branches.iter().find(|b| b.t % k != 0) {
            return Err(Error::InvalidParams(format!("t = {} not divisible by k = {k}", b.t)));
        }
        let quotient = AdditiveQuotient::new(ctx, k)?;
        let mut index = HashMap::with_capacity(count);
        for (i, &v) in reps.iter().enumerate() {
            if index.insert(quotient.canonical(v).0, i).is_some() {
                return Err(Error::InvalidParams("representatives share a coset".into()));
            }
        }
        Ok(AddCycSpecGeneral { ctx: ctx.clone(), k, reps, branches, quotient, index })
    }

    pub fn coset_of(&self, x: Elem) -> usize {
        self.index[&self.quotient.canonical(x).0]
    }

    pub fn eval(&self, x: Elem) -> bool {
        let br = self.branches[self.coset_of(x)];
        let ctx = &self.ctx;
        let e = (1u64 << br.t) + 1;
        ctx.trace(ctx.mul(br.a, ctx.pow_u(x, e)))
    }

    pub fn materialize(&self) -> BooleanFunction {
        BooleanFunction::from_closure(&self.ctx, |x| self.eval(x))
    }
}

/// Builds a multiplicative or additive spec from JSON by its `kind` tag.
#[derive(Debug, Clone)]
pub enum CycSpec {
    Mult(MultCycSpec),
    Add(AddCycSpec),
}

impl CycSpec {
    pub fn from_json(s: &str) -> Result<CycSpec> {
        let v: serde_json::Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        match v.get("kind").and_then(|k| k.as_str()) {
            Some("mult") => Ok(CycSpec::Mult(MultCycSpec::from_json(s)?)),
            Some("add") => Ok(CycSpec::Add(AddCycSpec::from_json(s)?)),
            other => Err(Error::Parse(format!("unknown spec kind {other:?}"))),
        }
    }

    pub fn to_json(&self) -> String {
        match self {
            CycSpec::Mult(s) => s.to_json(),
            CycSpec::Add(s) => s.to_json(),
        }
    }

    pub fn materialize(&self) -> BooleanFunction {
        match self {
            CycSpec::Mult(s) => s.materialize(),
            CycSpec::Add(s) => s.materialize(),
        }
    }

    pub fn field(&self) -> &QuadField {
        match self {
            CycSpec::Mult(s) => &s.field,
            CycSpec::Add(s) => &s.field,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coset_index_examples() {
        let qf = QuadField::with_m(3).unwrap();
        let spec = MultCycSpec::uniform(&qf, Elem::ZERO, 0);
        for y in qf.fq_elements().into_iter().skip(1) {
            assert_eq!(spec.mult_coset_index(y).unwrap(), 0);
            let x = qf.ctx().mul(qf.u_pow(3), y);
            assert_eq!(spec.mult_coset_index(x).unwrap(), 3);
        }
        assert_eq!(spec.mult_coset_index(Elem::ZERO), Err(Error::ZeroIndex));
    }

    #[test]
    fn partitions_are_exact() {
        for m in 1..=6 {
            let qf = QuadField::with_m(m).unwrap();
            let ctx = qf.ctx();
            let mut counts = vec![0usize; qf.q() as usize + 1];
            for x in ctx.nonzero() {
                counts[qf.coset_index(x).unwrap()] += 1;
            }
            assert!(counts.iter().all(|&c| c as u64 == qf.q() - 1));
            let spec = AddCycSpec::uniform(&qf, Elem::ONE).unwrap();
            let logs = XiLog::new(&qf, qf.xi());
            let mut add_counts: HashMap<Option<u64>, usize> = HashMap::new();
            for x in ctx.elements() {
                let i = spec.branch_of(x, &logs);
                assert_eq!(qf.rel_trace(x), spec.xi_pow(i));
                let v = spec.representative(i);
                assert!(qf.in_fq(x + v));
                *add_counts.entry(i).or_default() += 1;
            }
            assert_eq!(add_counts.len() as u64, qf.q());
            assert!(add_counts.values().all(|&c| c as u64 == qf.q()));
        }
    }

    #[test]
    fn zero_coefficients_give_zero_function() {
        let qf = QuadField::with_m(2).unwrap();
        let f = MultCycSpec::uniform(&qf, Elem::ZERO, 3).materialize();
        assert_eq!(f.weight(), 0);
        let g = AddCycSpec::uniform(&qf, Elem::ZERO).unwrap().materialize();
        assert_eq!(g.weight(), 0);
    }

    #[test]
    fn monomial_special_cases() {
        let qf = QuadField::with_m(3).unwrap();
        let ctx = qf.ctx();
        let q = qf.q();
        let c = ctx.exp(11);
        let f = MultCycSpec::uniform(&qf, c, 2 * (q - 1)).materialize();
        let g = BooleanFunction::from_closure(ctx, |x| ctx.trace(ctx.mul(c, ctx.pow_u(x, 2 * (q - 1)))));
        assert_eq!(f, g);
        let a = qf.xi_pow(Some(3));
        let f = AddCycSpec::uniform(&qf, a).unwrap().materialize();
        let g = BooleanFunction::from_closure(ctx, |x| qf.tr_m(ctx.mul(a, qf.norm(x))));
        assert_eq!(f, g);
    }

    #[test]
    fn constant_niho_reduces_to_half_power() {
        // a ∉ F_q, s = 2^{m-1} + 1: Tr(a x^{s(q-1)+1}) = Tr(a x^{2^{-1}(q+1)}) = Tr_1^m(c² x^{q+1})
        let qf = QuadField::with_m(3).unwrap();
        let ctx = qf.ctx();
        let q = qf.q();
        let a = ctx.generator();
        let s = (1u64 << (qf.m() - 1)) + 1;
        let f = MultCycSpec::uniform(&qf, a, s * (q - 1) + 1).materialize();
        let g = BooleanFunction::from_closure(ctx, |x| ctx.trace(ctx.mul(a, ctx.sqrt(ctx.pow_u(x, q + 1)))));
        assert_eq!(f, g);
        let c = qf.rel_trace(a);
        let h = BooleanFunction::from_closure(ctx, |x| qf.tr_m(ctx.mul(ctx.square(c), qf.norm(x))));
        assert_eq!(f, h);
    }

    #[test]
    fn alpha_in_fq_and_decomposition() {
        let qf = QuadField::with_m(2).unwrap();
        let ctx = qf.ctx();
        let branches = (0..5).map(|i| MultBranch { a: ctx.exp(3 * i as i64 + 1), r: [0, 1, 2, 5, 7][i] }).collect();
        let spec = MultCycSpec::new(&qf, branches).unwrap();
        let w = spec.materialize().walsh();
        for i in 0..5 {
            assert!(qf.in_fq(spec.alpha(i)));
        }
        for b in ctx.elements() {
            let total: i64 = 1 + (0..5).map(|i| spec.branch_sum_s(i, b)).sum::<i64>();
            assert_eq!(w.at(b), total);
            for i in 0..5 {
                assert_eq!(spec.branch_sum_closed(i, b), Some(spec.branch_sum_s(i, b)));
            }
        }
        assert_eq!(spec.branch_sum_s(0, Elem::ZERO), 3);
    }

    #[test]
    fn exponent_classes() {
        assert_eq!(exponent_class(14, 3), Some(ExponentClass::Zero));
        assert_eq!(exponent_class(11, 3), Some(ExponentClass::PowerOfTwo(2)));
        assert_eq!(exponent_class(3, 3), None);
    }

    #[test]
    fn json_round_trip() {
        let qf = QuadField::with_m(2).unwrap();
        let ctx = qf.ctx();
        let branches = (0..5).map(|i| MultBranch { a: ctx.exp(i as i64), r: 3 * i as u64 }).collect();
        let spec = MultCycSpec::new(&qf, branches).unwrap();
        let s = spec.to_json();
        assert!(s.starts_with(r#"{"kind":"mult","m":2,"branches":[{"a":"w^0","r":0}"#));
        let back = MultCycSpec::from_json(&s).unwrap();
        assert_eq!(back, spec);
        assert_eq!(back.to_json(), s);

        let add = AddCycSpec::new(&qf, qf.xi(), qf.xi(), vec![Elem::ZERO, Elem::ONE, qf.xi()]).unwrap();
        let s = add.to_json();
        assert_eq!(s, r#"{"kind":"add","m":2,"alphas":["0","w^0","w^5"],"alpha_inf":"w^5"}"#);
        let back = AddCycSpec::from_json(&s).unwrap();
        assert_eq!(back, add);
        assert!(matches!(CycSpec::from_json(&s).unwrap(), CycSpec::Add(_)));
        assert!(CycSpec::from_json(r#"{"kind":"nope"}"#).is_err());
    }

    #[test]
    fn general_additive_matches_kasami_form() {
        let qf = QuadField::with_m(3).unwrap();
        let fq = qf.fq_elements();
        let add = AddCycSpec::new(&qf, qf.xi(), fq[3], (0..7).map(|i| fq[(i * 5) % 8]).collect()).unwrap();
        assert_eq!(add.to_general().materialize(), add.materialize());
    }
}
