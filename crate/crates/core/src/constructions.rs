//! Dillon, Niho and Kasami-type constructions.
//!
//! Every builder pairs a materialized function with the theory side: a
//! bentness predicate, a dual formula and a Walsh predictor. The oracle in
//! [`crate::boolfun`] is the ground truth these are checked against.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::boolfun::BooleanFunction;
use crate::cyclotomic::{
    exponent_class, AddBranch, AddCycSpec, AddCycSpecGeneral, ExponentClass, MultBranch, MultCycSpec, XiLog,
};
use crate::error::{Error, Result};
use crate::field::{gcd, Elem};
use crate::quad::QuadField;

fn sign(bit: bool) -> i64 {
    if bit {
        -1
    } else {
        1
    }
}

/// Named construction families, as used by the CLI and in result records.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConstructionId {
    DillonGeneral,
    DillonTwoBranch,
    DillonMuR,
    DillonR3,
    NihoGeneral,
    NihoConstAlpha,
    KasamiGeneral,
    KasamiZeroBranch,
    KasamiTwoValue,
    MixedWf,
}

impl ConstructionId {
    pub const ALL: [ConstructionId; 10] = [
        ConstructionId::DillonGeneral,
        ConstructionId::DillonTwoBranch,
        ConstructionId::DillonMuR,
        ConstructionId::DillonR3,
        ConstructionId::NihoGeneral,
        ConstructionId::NihoConstAlpha,
        ConstructionId::KasamiGeneral,
        ConstructionId::KasamiZeroBranch,
        ConstructionId::KasamiTwoValue,
        ConstructionId::MixedWf,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ConstructionId::DillonGeneral => "dillon.general",
            ConstructionId::DillonTwoBranch => "dillon.two_branch",
            ConstructionId::DillonMuR => "dillon.mu_r",
            ConstructionId::DillonR3 => "dillon.r3",
            ConstructionId::NihoGeneral => "niho.general",
            ConstructionId::NihoConstAlpha => "niho.const_alpha",
            ConstructionId::KasamiGeneral => "kasami.general",
            ConstructionId::KasamiZeroBranch => "kasami.zero_branch",
            ConstructionId::KasamiTwoValue => "kasami.two_value",
            ConstructionId::MixedWf => "mixed.wf",
        }
    }
}

impl fmt::Display for ConstructionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ConstructionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ConstructionId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown construction `{s}`")))
    }
}

// ----------------------------------------------------------------------------
// Mixed Walsh predictor

/// Predicted `Ŵf(b)` for a multiplicative spec whose exponents are all `0` or
/// a power of two modulo `q - 1`.
pub fn walsh_predictor_mixed(spec: &MultCycSpec, b: Elem) -> Result<i64> {
    let field = &spec.field;
    let q = field.q() as i64;
    if spec.value_at_zero {
        return Err(Error::InvalidParams("predictor assumes f(0) = 0".into()));
    }
    let mut classes = Vec::with_capacity(spec.d());
    for br in &spec.branches {
        classes.push(exponent_class(br.r, field.m()).ok_or(Error::MixedInapplicable(br.r))?);
    }
    let mut m0 = 0i64;
    let mut r1 = 0i64;
    let mut t_sum = 0i64;
    for (i, class) in classes.iter().enumerate() {
        match *class {
            ExponentClass::Zero => m0 += sign(field.tr_m(spec.alpha(i))),
            ExponentClass::PowerOfTwo(t) => {
                r1 += 1;
                t_sum += spec.t_indicator(i, t, b) as i64;
            }
        }
    }
    let offset = m0 + r1 - 1;
    if b.is_zero() {
        return Ok(q * (m0 + t_sum) - offset);
    }
    let t = field.circle_index(b)?;
    Ok(match classes[t] {
        ExponentClass::Zero => q * (sign(field.tr_m(spec.alpha(t))) + t_sum) - offset,
        ExponentClass::PowerOfTwo(_) => q * t_sum - offset,
    })
}

/// Bentness of a mixed spec decided from the predictor alone.
pub fn mixed_is_bent(spec: &MultCycSpec) -> Result<bool> {
    let q = spec.field.q() as i64;
    for b in spec.field.ctx().elements() {
        if walsh_predictor_mixed(spec, b)?.abs() != q {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Dual read off the predicted signs of a bent mixed spec.
pub fn mixed_dual(spec: &MultCycSpec) -> Result<BooleanFunction> {
    let ctx = spec.field.ctx();
    let mut table = Vec::with_capacity(ctx.size());
    for b in ctx.elements() {
        let w = walsh_predictor_mixed(spec, b)?;
        if w.abs() != spec.field.q() as i64 {
            return Err(Error::NotBent);
        }
        table.push(w < 0);
    }
    BooleanFunction::from_table(ctx, table)
}

// ----------------------------------------------------------------------------
// Dillon

/// Parameters of the Dillon-exponent constructions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DillonVariant {
    /// Branch `i` is `a_i x^{l_i(q-1)}`.
    General { branches: Vec<(Elem, u64)> },
    /// `a_1 x^{l_1(q-1)}` on the cosets `u^i F_q^*`, `i ∈ Z ⊆ Z_q`, else `a_2 x^{l_2(q-1)}`.
    TwoBranch { a1: Elem, l1: u64, a2: Elem, l2: u64, z: BTreeSet<u64> },
    /// `εc x^{l_1(q-1)}` on μ_{r(q-1)}, else `c x^{l_2(q-1)}`.
    MuR { c: Elem, eps: Elem, r: u64, l1: u64, l2: u64 },
    /// `a_1 x^{l_1(q-1)}` on μ_{3(q-1)}, else `a_2 x^{l_2(q-1)}`; m odd.
    R3 { a1: Elem, a2: Elem, l1: u64, l2: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct DillonParams {
    pub field: QuadField,
    pub variant: DillonVariant,
}

/// `x ∈ μ_{r(q-1)}` for `x` in coset `j`.
pub fn in_mu_r(field: &QuadField, r: u64, j: usize) -> bool {
    (j as u64) % ((field.q() + 1) / r) == 0
}

impl DillonParams {
    pub fn new(field: &QuadField, variant: DillonVariant) -> Result<DillonParams> {
        let p = DillonParams { field: field.clone(), variant };
        p.validate()?;
        Ok(p)
    }

    pub fn id(&self) -> ConstructionId {
        match self.variant {
            DillonVariant::General { .. } => ConstructionId::DillonGeneral,
            DillonVariant::TwoBranch { .. } => ConstructionId::DillonTwoBranch,
            DillonVariant::MuR { .. } => ConstructionId::DillonMuR,
            DillonVariant::R3 { .. } => ConstructionId::DillonR3,
        }
    }

    fn validate(&self) -> Result<()> {
        let qf = &self.field;
        let q = qf.q();
        let coprime = |l: u64| {
            if gcd(l, q + 1) == 1 {
                Ok(())
            } else {
                Err(Error::InvalidParams(format!("gcd({l}, q+1) != 1")))
            }
        };
        match &self.variant {
            DillonVariant::General { branches } => {
                if q <= 2 {
                    return Err(Error::InvalidParams("requires q > 2".into()));
                }
                if branches.len() as u64 != q + 1 {
                    return Err(Error::InvalidParams(format!("expected {} branches", q + 1)));
                }
            }
            DillonVariant::TwoBranch { a2, l2, z, .. } => {
                if a2.is_zero() {
                    return Err(Error::InvalidParams("a2 must be nonzero".into()));
                }
                coprime(*l2)?;
                if z.iter().any(|&i| i >= q) {
                    return Err(Error::InvalidParams("Z must be a subset of Z_q".into()));
                }
            }
            DillonVariant::MuR { c, eps, r, l1, l2 } => {
                if c.is_zero() {
                    return Err(Error::InvalidParams("c must be nonzero".into()));
                }
                if *r == 0 || (q + 1) % r != 0 {
                    return Err(Error::NotDivisor(*r, q + 1));
                }
                if qf.ctx().pow_u(*eps, *r) != Elem::ONE {
                    return Err(Error::InvalidParams("eps is not an r-th root of unity".into()));
                }
                coprime(*l1)?;
                coprime(*l2)?;
            }
            DillonVariant::R3 { a2, l1, l2, .. } => {
                let m = qf.m();
                if m % 2 == 0 || m < 3 {
                    return Err(Error::InvalidParams(format!("requires odd m > 1, got m = {m}")));
                }
                if a2.is_zero() {
                    return Err(Error::InvalidParams("a2 must be nonzero".into()));
                }
                coprime(*l1)?;
                coprime(*l2)?;
            }
        }
        Ok(())
    }

    /// `(a_i, l_i)` for each coset index `i ∈ Z_{q+1}`.
    pub fn branch_params(&self) -> Vec<(Elem, u64)> {
        let qf = &self.field;
        let d = qf.q() as usize + 1;
        match &self.variant {
            DillonVariant::General { branches } => branches.clone(),
            DillonVariant::TwoBranch { a1, l1, a2, l2, z } => {
                (0..d).map(|i| if z.contains(&(i as u64)) { (*a1, *l1) } else { (*a2, *l2) }).collect()
            }
            DillonVariant::MuR { c, eps, r, l1, l2 } => {
                let ec = qf.ctx().mul(*eps, *c);
                (0..d).map(|i| if in_mu_r(qf, *r, i) { (ec, *l1) } else { (*c, *l2) }).collect()
            }
            DillonVariant::R3 { a1, a2, l1, l2 } => {
                (0..d).map(|i| if in_mu_r(qf, 3, i) { (*a1, *l1) } else { (*a2, *l2) }).collect()
            }
        }
    }

    pub fn build(&self) -> MultCycSpec {
        let q = self.field.q();
        let branches = self.branch_params().into_iter().map(|(a, l)| MultBranch { a, r: l * (q - 1) }).collect();
        MultCycSpec::new(&self.field, branches).expect("branch count checked")
    }

    /// `(-1)^{Tr(a u^{-2il})}`.
    fn branch_sign(&self, a: Elem, l: u64, i: u64) -> i64 {
        let d = self.field.q() + 1;
        let e = (2 * (i % d) * (l % d)) % d;
        sign(self.field.ctx().trace(self.field.ctx().mul(a, self.field.u_pow(-(e as i64)))))
    }

    /// `M_0 = Σ_i (-1)^{Tr(a_i u^{-2i l_i})}`.
    pub fn m0(&self) -> i64 {
        self.branch_params().into_iter().enumerate().map(|(i, (a, l))| self.branch_sign(a, l, i as u64)).sum()
    }

    /// The variant-specific bentness criterion.
    pub fn predicate(&self) -> Result<bool> {
        let qf = &self.field;
        let ctx = qf.ctx();
        Ok(match &self.variant {
            DillonVariant::General { .. } => self.m0() == 1,
            DillonVariant::TwoBranch { a1, l1, a2, l2, z } => {
                let lhs: i64 = z.iter().map(|&i| self.branch_sign(*a1, *l1, i) - self.branch_sign(*a2, *l2, i)).sum();
                lhs == qf.kloosterman(qf.norm(*a2))?
            }
            DillonVariant::MuR { c, .. } => qf.kloosterman(qf.norm(*c))? == 0,
            DillonVariant::R3 { a1, a2, .. } => {
                let theta = ctx.unity_root(3)?;
                let k = |a: Elem| {
                    let t1 = ctx.trace(a) as i64;
                    let t2 = ctx.trace(ctx.mul(a, theta)) as i64;
                    (1 - t1) * (1 - t2)
                };
                qf.kloosterman(qf.norm(*a2))? == 4 * (k(*a1) - k(*a2))
            }
        })
    }

    /// The stated dual: `Tr(a_i x^{l_i(1-q)})` where `x^{q-1} = u^{2i}`, `0 ↦ 0`.
    pub fn dual_formula(&self) -> BooleanFunction {
        let qf = &self.field;
        let ctx = qf.ctx();
        let q = qf.q() as i64;
        let d = q as usize + 1;
        let params = self.branch_params();
        BooleanFunction::from_closure(ctx, |x| match qf.coset_index(x) {
            Err(_) => false,
            Ok(j) => {
                let (a, l) = params[(d - j) % d];
                ctx.trace(ctx.mul(a, ctx.pow(x, -(l as i64) * (q - 1))))
            }
        })
    }

    pub fn dual(&self) -> Result<BooleanFunction> {
        if !self.predicate()? {
            return Err(Error::NotBent);
        }
        Ok(self.dual_formula())
    }

    /// Predicted Walsh value from the Dillon case split.
    pub fn walsh_predicted(&self, b: Elem) -> Result<i64> {
        walsh_predictor_mixed(&self.build(), b)
    }
}

/// Number of cosets `u^i F_q^*` on which a coset-constant `f` with `f(0) = 0` is 1.
pub fn dillon_ps_count(field: &QuadField, f: &BooleanFunction) -> Result<usize> {
    if f.ctx() != field.ctx() {
        return Err(Error::FieldMismatch(f.ctx().spec().to_string(), field.ctx().spec().to_string()));
    }
    if f.eval(Elem::ZERO) {
        return Err(Error::NotDillonType("f(0) = 1".into()));
    }
    let d = field.q() as usize + 1;
    let mut value: Vec<Option<bool>> = vec![None; d];
    for x in field.ctx().nonzero() {
        let i = field.coset_index(x)?;
        let v = f.eval(x);
        match value[i] {
            None => value[i] = Some(v),
            Some(w) if w != v => {
                return Err(Error::NotDillonType(format!("not constant on coset {i}")));
            }
            _ => {}
        }
    }
    Ok(value.into_iter().filter(|v| *v == Some(true)).count())
}

/// Partial-spread criterion: bent iff the function is 1 on exactly `2^{m-1}` cosets.
pub fn dillon_ps_criterion(field: &QuadField, f: &BooleanFunction) -> Result<bool> {
    Ok(dillon_ps_count(field, f)? == 1usize << (field.m() - 1))
}

// ----------------------------------------------------------------------------
// Niho

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NihoCondition {
    Cond1,
    Cond2,
    Neither,
}

impl NihoCondition {
    pub fn as_str(self) -> &'static str {
        match self {
            NihoCondition::Cond1 => "cond1",
            NihoCondition::Cond2 => "cond2",
            NihoCondition::Neither => "neither",
        }
    }
}

/// Branch `i` is `a_i x^{s_i(q-1)+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct NihoParams {
    pub field: QuadField,
    pub branches: Vec<(Elem, u64)>,
    /// Set when every `α_i` equals this constant of F_q^*.
    pub const_alpha: Option<Elem>,
}

impl NihoParams {
    pub fn new(field: &QuadField, branches: Vec<(Elem, u64)>) -> Result<NihoParams> {
        let q = field.q();
        if branches.len() as u64 != q + 1 {
            return Err(Error::InvalidParams(format!("expected {} branches", q + 1)));
        }
        if let Some(&(_, s)) = branches.iter().find(|&&(_, s)| s > q) {
            return Err(Error::InvalidParams(format!("s = {s} exceeds q = {q}")));
        }
        Ok(NihoParams { field: field.clone(), branches, const_alpha: None })
    }

    /// `a_i = c x0 u^{-i(1-2s_i)}`, which makes every `α_i` equal to `c`.
    pub fn const_alpha(field: &QuadField, c: Elem, s: &[u64]) -> Result<NihoParams> {
        if c.is_zero() || !field.in_fq(c) {
            return Err(Error::InvalidParams("c must lie in F_q^*".into()));
        }
        let ctx = field.ctx();
        let d = field.q() as i64 + 1;
        if s.len() as i64 != d {
            return Err(Error::InvalidParams(format!("expected {d} exponents")));
        }
        let cx0 = ctx.mul(c, field.x0());
        let branches = s
            .iter()
            .enumerate()
            .map(|(i, &si)| {
                let e = (i as i64 * (1 - 2 * (si as i64 % d))).rem_euclid(d);
                (ctx.mul(cx0, field.u_pow(-e)), si)
            })
            .collect();
        let mut p = NihoParams::new(field, branches)?;
        p.const_alpha = Some(c);
        Ok(p)
    }

    pub fn id(&self) -> ConstructionId {
        if self.const_alpha.is_some() {
            ConstructionId::NihoConstAlpha
        } else {
            ConstructionId::NihoGeneral
        }
    }

    pub fn build(&self) -> MultCycSpec {
        let q = self.field.q();
        let branches = self.branches.iter().map(|&(a, s)| MultBranch { a, r: s * (q - 1) + 1 }).collect();
        MultCycSpec::new(&self.field, branches).expect("branch count checked")
    }

    /// `α_i = a_i u^{i(1-2s_i)} + a_i^q u^{i(2s_i-1)}`.
    pub fn alpha(&self, i: usize) -> Elem {
        let d = self.field.q() as i64 + 1;
        let (a, s) = self.branches[i];
        let e = (i as i64 * (1 - 2 * (s as i64 % d))).rem_euclid(d);
        self.field.rel_trace(self.field.ctx().mul(a, self.field.u_pow(e)))
    }

    pub fn alphas(&self) -> Vec<Elem> {
        (0..self.branches.len()).map(|i| self.alpha(i)).collect()
    }

    fn t_sum_with(&self, alphas: &[Elem], b: Elem) -> usize {
        let qf = &self.field;
        let ctx = qf.ctx();
        let bq = qf.conj(b);
        (0..alphas.len())
            .filter(|&i| ctx.mul(b, qf.u_pow(i as i64)) + ctx.mul(bq, qf.u_pow(-(i as i64))) == alphas[i])
            .count()
    }

    /// `Σ_i T_i(b)`.
    pub fn t_sum(&self, b: Elem) -> usize {
        self.t_sum_with(&self.alphas(), b)
    }

    /// `Ŵf(b) = q(Σ T_i(b) - 1)`.
    pub fn niho_walsh(&self, b: Elem) -> i64 {
        self.field.q() as i64 * (self.t_sum(b) as i64 - 1)
    }

    /// The bentness criterion: `Σ T_i(b) ∈ {0, 2}` for every `b`.
    pub fn niho_is_bent(&self) -> bool {
        let alphas = self.alphas();
        self.field.ctx().elements().all(|b| matches!(self.t_sum_with(&alphas, b), 0 | 2))
    }

    pub fn predicate(&self) -> bool {
        if self.const_alpha.is_some() {
            return true;
        }
        self.niho_is_bent()
    }

    /// Dual from the predicted signs; for the constant-α family this is
    /// `Tr_1^m(c^{-2}x^{q+1}) + 1`.
    pub fn dual(&self) -> Result<BooleanFunction> {
        let qf = &self.field;
        let ctx = qf.ctx();
        if let Some(c) = self.const_alpha {
            let c2 = ctx.inv(ctx.square(c))?;
            return Ok(BooleanFunction::from_closure(ctx, |x| !qf.tr_m(ctx.mul(c2, qf.norm(x)))));
        }
        let alphas = self.alphas();
        let mut table = Vec::with_capacity(ctx.size());
        for b in ctx.elements() {
            match self.t_sum_with(&alphas, b) {
                0 => table.push(true),
                2 => table.push(false),
                _ => return Err(Error::NotBent),
            }
        }
        BooleanFunction::from_table(ctx, table)
    }

    /// Classification by the two multiset conditions.
    pub fn condition_thm2(&self) -> NihoCondition {
        let qf = &self.field;
        let ctx = qf.ctx();
        let alphas = self.alphas();
        let d = alphas.len();
        let zeros: Vec<usize> = (0..d).filter(|&i| alphas[i].is_zero()).collect();
        // α_i / (u^i + u^{2t-i}), for i ≠ t
        let ratio = |i: usize, t: usize| {
            let den = qf.u_pow(i as i64) + qf.u_pow(2 * t as i64 - i as i64);
            ctx.div(alphas[i], den).expect("i != t")
        };
        let all_doubled = |t: usize, skip: &[usize]| {
            let mut counts: HashMap<u32, usize> = HashMap::new();
            for i in (0..d).filter(|i| *i != t && !skip.contains(i)) {
                *counts.entry(ratio(i, t).0).or_default() += 1;
            }
            counts.values().all(|&c| c == 2)
        };
        match zeros.as_slice() {
            [] => {
                if (0..d).all(|t| all_doubled(t, &[])) {
                    NihoCondition::Cond1
                } else {
                    NihoCondition::Neither
                }
            }
            &[i1, i2] => {
                let distinct = |t: usize| {
                    let mut seen = BTreeSet::new();
                    (0..d).filter(|&i| i != i1 && i != i2).all(|i| seen.insert(ratio(i, t).0))
                };
                if distinct(i1)
                    && distinct(i2)
                    && (0..d).filter(|&t| t != i1 && t != i2).all(|t| all_doubled(t, &[i1, i2]))
                {
                    NihoCondition::Cond2
                } else {
                    NihoCondition::Neither
                }
            }
            _ => NihoCondition::Neither,
        }
    }
}

// ----------------------------------------------------------------------------
// Kasami

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KasamiVariant {
    General {
        alpha_inf: Elem,
        alphas: Vec<Elem>,
    },
    /// `α_i = 0` at the single `i` with `ξ^i = c^{2^{m-1}-1}`, `c` elsewhere.
    ZeroBranch {
        c: Elem,
    },
    /// `α_i = a` for `i ∈ Z`, `c` elsewhere (including ∞).
    TwoValue {
        a: Elem,
        c: Elem,
        z: BTreeSet<u64>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct KasamiParams {
    pub field: QuadField,
    pub xi: Elem,
    pub variant: KasamiVariant,
}

impl KasamiParams {
    pub fn new(field: &QuadField, variant: KasamiVariant) -> Result<KasamiParams> {
        KasamiParams::with_xi(field, field.xi(), variant)
    }

    pub fn with_xi(field: &QuadField, xi: Elem, variant: KasamiVariant) -> Result<KasamiParams> {
        let q = field.q();
        let in_fq = |a: &Elem| field.in_fq(*a);
        match &variant {
            KasamiVariant::General { alpha_inf, alphas } => {
                if alphas.len() as u64 != q - 1 || !alphas.iter().all(in_fq) || !in_fq(alpha_inf) {
                    return Err(Error::InvalidParams("need q-1 finite alphas in F_q".into()));
                }
            }
            KasamiVariant::ZeroBranch { c } => {
                if c.is_zero() || !in_fq(c) {
                    return Err(Error::InvalidParams("c must lie in F_q^*".into()));
                }
            }
            KasamiVariant::TwoValue { a, c, z } => {
                if !in_fq(a) || !in_fq(c) || c.is_zero() {
                    return Err(Error::InvalidParams("a must lie in F_q and c in F_q^*".into()));
                }
                if z.iter().any(|&i| i >= q - 1) {
                    return Err(Error::InvalidParams("Z must be a subset of Z_{q-1}".into()));
                }
            }
        }
        if !field.in_fq(xi) || field.ctx().mult_order(xi) != Some(q - 1) {
            return Err(Error::InvalidParams("xi must generate F_q^*".into()));
        }
        Ok(KasamiParams { field: field.clone(), xi, variant })
    }

    pub fn id(&self) -> ConstructionId {
        match self.variant {
            KasamiVariant::General { .. } => ConstructionId::KasamiGeneral,
            KasamiVariant::ZeroBranch { .. } => ConstructionId::KasamiZeroBranch,
            KasamiVariant::TwoValue { .. } => ConstructionId::KasamiTwoValue,
        }
    }

    /// Index of the zero branch: `ξ^i = c^{2^{m-1}-1}`.
    pub fn zero_branch_index(&self, c: Elem) -> u64 {
        let ctx = self.field.ctx();
        let target = ctx.pow_u(c, (1u64 << (self.field.m() - 1)) - 1);
        XiLog::new(&self.field, self.xi).log(target).expect("nonzero element of F_q")
    }

    /// `(α_∞, [α_0, …, α_{q-2}])`.
    pub fn alphas(&self) -> (Elem, Vec<Elem>) {
        let k = self.field.q() as usize - 1;
        match &self.variant {
            KasamiVariant::General { alpha_inf, alphas } => (*alpha_inf, alphas.clone()),
            KasamiVariant::ZeroBranch { c } => {
                let i0 = self.zero_branch_index(*c) as usize;
                (*c, (0..k).map(|i| if i == i0 { Elem::ZERO } else { *c }).collect())
            }
            KasamiVariant::TwoValue { a, c, z } => {
                (*c, (0..k).map(|i| if z.contains(&(i as u64)) { *a } else { *c }).collect())
            }
        }
    }

    pub fn build(&self) -> AddCycSpec {
        let (alpha_inf, alphas) = self.alphas();
        AddCycSpec::new(&self.field, self.xi, alpha_inf, alphas).expect("validated")
    }

    fn xi_pow(&self, i: Option<u64>) -> Elem {
        i.map_or(Elem::ZERO, |i| self.field.ctx().pow_u(self.xi, i))
    }

    /// `α_i² ξ^{2i} + α_i` over all labels `∞, 0, …, q-2`.
    pub fn coverage_values(&self) -> Vec<Elem> {
        let ctx = self.field.ctx();
        let spec = self.build();
        spec.labels()
            .map(|i| {
                let a = spec.alpha(i);
                ctx.square(ctx.mul(a, self.xi_pow(i))) + a
            })
            .collect()
    }

    /// `β_i = α_i ξ^i + α_i^{1/2}`, the square roots of the coverage values.
    pub fn betas(&self) -> Vec<(Option<u64>, Elem)> {
        let ctx = self.field.ctx();
        let spec = self.build();
        spec.labels()
            .map(|i| {
                let a = spec.alpha(i);
                (i, ctx.mul(a, self.xi_pow(i)) + ctx.sqrt(a))
            })
            .collect()
    }

    /// Whether the coverage values exhaust F_q (equivalently, are distinct).
    pub fn coverage_ok(&self) -> bool {
        let vals = self.coverage_values();
        let set: BTreeSet<u32> = vals.iter().map(|e| e.0).collect();
        set.len() == vals.len()
    }

    /// `{c²ξ^{2i} + c : i ∈ Z} = {a²ξ^{2i} + a : i ∈ Z}`.
    pub fn two_value_condition(&self) -> Option<bool> {
        let KasamiVariant::TwoValue { a, c, z } = &self.variant else {
            return None;
        };
        let ctx = self.field.ctx();
        let image = |v: Elem| -> BTreeSet<u32> {
            z.iter().map(|&i| (ctx.square(ctx.mul(v, self.xi_pow(Some(i)))) + v).0).collect()
        };
        Some(image(*a) == image(*c))
    }

    pub fn predicate(&self) -> bool {
        match &self.variant {
            KasamiVariant::ZeroBranch { .. } => true,
            KasamiVariant::TwoValue { .. } => self.two_value_condition().unwrap_or(false),
            KasamiVariant::General { .. } => self.coverage_ok(),
        }
    }

    /// `φ_t(b)` for the unique `t` with `b^q + b = β_t`.
    fn phi_lookup(&self) -> Result<HashMap<u32, (Option<u64>, Elem)>> {
        if !self.coverage_ok() {
            return Err(Error::CoverageFails);
        }
        let spec = self.build();
        Ok(self.betas().into_iter().map(|(i, beta)| (beta.0, (i, spec.alpha(i)))).collect())
    }

    fn phi(&self, lookup: &HashMap<u32, (Option<u64>, Elem)>, b: Elem) -> bool {
        let qf = &self.field;
        let ctx = qf.ctx();
        let (t, alpha) = lookup[&qf.rel_trace(b).0];
        if alpha.is_zero() {
            qf.tr_m(ctx.mul(self.xi_pow(t), b))
        } else {
            !qf.tr_m(ctx.mul(ctx.inv0(alpha), qf.norm(b)))
        }
    }

    pub fn dual(&self) -> Result<BooleanFunction> {
        let lookup = self.phi_lookup()?;
        Ok(BooleanFunction::from_closure(self.field.ctx(), |b| self.phi(&lookup, b)))
    }

    /// `Ŵf(b) = q(-1)^{φ_t(b)}`.
    pub fn kasami_walsh(&self, b: Elem) -> Result<i64> {
        let lookup = self.phi_lookup()?;
        Ok(self.field.q() as i64 * sign(self.phi(&lookup, b)))
    }
}

// ----------------------------------------------------------------------------
// General additive predictor

/// `E(b) = {i : Tr_k^n(b) = Tr_k^n(a_i(v_i^{2^{t_i}} + v_i) + a_i^{1/2})}`.
pub fn e_set(spec: &AddCycSpecGeneral, b: Elem) -> Result<Vec<usize>> {
    let ctx = &spec.ctx;
    let k = spec.k;
    let tb = ctx.rel_trace(k, b)?;
    let mut out = Vec::new();
    for (i, (&v, br)) in spec.reps.iter().zip(&spec.branches).enumerate() {
        let arg = ctx.mul(br.a, ctx.frobenius(v, br.t % ctx.degree()) + v) + ctx.sqrt(br.a);
        if ctx.rel_trace(k, arg)? == tb {
            out.push(i);
        }
    }
    Ok(out)
}

/// `Ŵf(b) = 2^k Σ_{i ∈ E(b)} (-1)^{Tr(a_i v_i^{2^{t_i}+1} + b v_i)}`.
pub fn add_walsh_predictor(spec: &AddCycSpecGeneral, b: Elem) -> Result<i64> {
    let ctx = &spec.ctx;
    let scale = 1i64 << spec.k;
    let sum: i64 = e_set(spec, b)?
        .into_iter()
        .map(|i| {
            let v = spec.reps[i];
            let AddBranch { a, t } = spec.branches[i];
            let vv = ctx.mul(ctx.frobenius(v, t % ctx.degree()), v);
            sign(ctx.trace(ctx.mul(a, vv) + ctx.mul(b, v)))
        })
        .sum();
    Ok(scale * sum)
}

// ----------------------------------------------------------------------------

/// Any of the named constructions.
#[derive(Debug, Clone)]
pub enum Construction {
    Dillon(DillonParams),
    Niho(NihoParams),
    Kasami(KasamiParams),
    Mixed(MultCycSpec),
}

impl Construction {
    pub fn id(&self) -> ConstructionId {
        match self {
            Construction::Dillon(p) => p.id(),
            Construction::Niho(p) => p.id(),
            Construction::Kasami(p) => p.id(),
            Construction::Mixed(_) => ConstructionId::MixedWf,
        }
    }

    pub fn field(&self) -> &QuadField {
        match self {
            Construction::Dillon(p) => &p.field,
            Construction::Niho(p) => &p.field,
            Construction::Kasami(p) => &p.field,
            Construction::Mixed(s) => &s.field,
        }
    }

    pub fn function(&self) -> BooleanFunction {
        match self {
            Construction::Dillon(p) => p.build().materialize(),
            Construction::Niho(p) => p.build().materialize(),
            Construction::Kasami(p) => p.build().materialize(),
            Construction::Mixed(s) => s.materialize(),
        }
    }

    /// The theory-side bentness verdict.
    pub fn predicate(&self) -> Result<bool> {
        match self {
            Construction::Dillon(p) => p.predicate(),
            Construction::Niho(p) => Ok(p.predicate()),
            Construction::Kasami(p) => Ok(p.predicate()),
            Construction::Mixed(s) => mixed_is_bent(s),
        }
    }

    /// The theory-side dual; errors when the predicate fails.
    pub fn dual(&self) -> Result<BooleanFunction> {
        match self {
            Construction::Dillon(p) => p.dual(),
            Construction::Niho(p) => p.dual(),
            Construction::Kasami(p) => p.dual(),
            Construction::Mixed(s) => mixed_dual(s),
        }
    }

    /// The theory-side Walsh value at `b`.
    pub fn walsh_predicted(&self, b: Elem) -> Result<i64> {
        match self {
            Construction::Dillon(p) => p.walsh_predicted(b),
            Construction::Niho(p) => Ok(p.niho_walsh(b)),
            Construction::Kasami(p) => {
                if p.coverage_ok() {
                    p.kasami_walsh(b)
                } else {
                    add_walsh_predictor(&p.build().to_general(), b)
                }
            }
            Construction::Mixed(s) => walsh_predictor_mixed(s, b),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for id in ConstructionId::ALL {
            assert_eq!(id.as_str().parse::<ConstructionId>().unwrap(), id);
        }
        assert!("dillon.other".parse::<ConstructionId>().is_err());
    }

    #[test]
    fn mixed_zero_spec_at_origin() {
        let qf = QuadField::with_m(3).unwrap();
        let q = qf.q();
        let spec = MultCycSpec::uniform(&qf, Elem::ZERO, q - 1);
        assert_eq!(walsh_predictor_mixed(&spec, Elem::ZERO).unwrap(), (q * q) as i64);
        let bad = MultCycSpec::uniform(&qf, Elem::ONE, 3);
        assert_eq!(walsh_predictor_mixed(&bad, Elem::ONE), Err(Error::MixedInapplicable(3)));
    }

    #[test]
    fn dillon_monomial_agrees_with_kloosterman() {
        let qf = QuadField::with_m(3).unwrap();
        let ctx = qf.ctx();
        for c in ctx.nonzero() {
            let p = DillonParams::new(&qf, DillonVariant::MuR { c, eps: Elem::ONE, r: 3, l1: 1, l2: 1 }).unwrap();
            let f = p.build().materialize();
            assert_eq!(p.predicate().unwrap(), f.is_bent());
            assert_eq!(dillon_ps_criterion(&qf, &f).unwrap(), f.is_bent());
            if f.is_bent() {
                assert_eq!(p.dual().unwrap(), f.dual().unwrap());
            }
        }
    }

    #[test]
    fn dillon_preconditions() {
        let q1 = QuadField::with_m(1).unwrap();
        let gen = DillonVariant::General { branches: vec![(Elem::ONE, 1); 3] };
        assert!(DillonParams::new(&q1, gen).is_err());
        let qf = QuadField::with_m(4).unwrap();
        let r3 = DillonVariant::R3 { a1: Elem::ONE, a2: Elem::ONE, l1: 1, l2: 1 };
        assert!(DillonParams::new(&qf, r3).is_err());
        let mu = DillonVariant::MuR { c: Elem::ONE, eps: Elem::ONE, r: 3, l1: 1, l2: 1 };
        assert_eq!(DillonParams::new(&qf, mu).unwrap_err(), Error::NotDivisor(3, 17));
        let ps = BooleanFunction::from_closure(qf.ctx(), |x| x.0 == 5);
        assert!(matches!(dillon_ps_criterion(&qf, &ps), Err(Error::NotDillonType(_))));
        assert!(!dillon_ps_criterion(&qf, &BooleanFunction::zero(qf.ctx())).unwrap());
    }

    #[test]
    fn niho_const_alpha_small() {
        let qf = QuadField::with_m(2).unwrap();
        let s: Vec<u64> = (0..5).map(|i| i % 5).collect();
        for c in qf.fq_elements().into_iter().skip(1) {
            let p = NihoParams::const_alpha(&qf, c, &s).unwrap();
            assert!(p.alphas().iter().all(|&a| a == c));
            assert!(p.niho_is_bent());
            assert_eq!(p.condition_thm2(), NihoCondition::Cond1);
            let f = p.build().materialize();
            assert_eq!(p.dual().unwrap(), f.dual().unwrap());
        }
    }

    #[test]
    fn niho_single_zero_is_neither() {
        let qf = QuadField::with_m(2).unwrap();
        let mut p = NihoParams::const_alpha(&qf, Elem::ONE, &[1; 5]).unwrap();
        p.branches[2].0 = Elem::ZERO;
        p.const_alpha = None;
        assert_eq!(p.condition_thm2(), NihoCondition::Neither);
        assert_eq!(p.t_sum(Elem::ZERO), 1);
        assert!(!p.niho_is_bent());
    }

    #[test]
    fn kasami_monomial_and_zero_branch() {
        let qf = QuadField::with_m(3).unwrap();
        let ctx = qf.ctx();
        for a in qf.fq_elements().into_iter().skip(1) {
            let alphas = vec![a; 7];
            let p = KasamiParams::new(&qf, KasamiVariant::General { alpha_inf: a, alphas }).unwrap();
            assert!(p.coverage_ok());
            let f = p.build().materialize();
            let expect = BooleanFunction::from_closure(ctx, |x| !qf.tr_m(ctx.mul(ctx.inv0(a), qf.norm(x))));
            assert_eq!(p.dual().unwrap(), expect);
            assert_eq!(f.dual().unwrap(), expect);

            let z = KasamiParams::new(&qf, KasamiVariant::ZeroBranch { c: a }).unwrap();
            assert!(z.coverage_ok());
            let g = z.build().materialize();
            assert_eq!(z.dual().unwrap(), g.dual().unwrap());
        }
        let p = KasamiParams::new(&qf, KasamiVariant::General { alpha_inf: Elem::ZERO, alphas: vec![Elem::ZERO; 7] })
            .unwrap();
        assert!(!p.coverage_ok());
        assert_eq!(p.dual(), Err(Error::CoverageFails));
    }

    #[test]
    fn additive_predictor_zero_coefficients() {
        let qf = QuadField::with_m(2).unwrap();
        let spec = AddCycSpec::uniform(&qf, Elem::ZERO).unwrap().to_general();
        let ctx = qf.ctx();
        for b in ctx.elements() {
            let e = e_set(&spec, b).unwrap();
            let tb = qf.rel_trace(b);
            if tb.is_zero() {
                assert_eq!(e.len(), 4);
            } else {
                assert!(e.is_empty());
            }
            let expect: i64 = if tb.is_zero() {
                4 * e.iter().map(|&i| sign(ctx.trace(ctx.mul(b, spec.reps[i])))).sum::<i64>()
            } else {
                0
            };
            assert_eq!(add_walsh_predictor(&spec, b).unwrap(), expect);
        }
    }
}
