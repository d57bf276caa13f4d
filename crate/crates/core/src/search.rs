//! Exhaustive parameter sweeps.
//!
//! A [`SearchSpace`] maps an index in `0..size` to one candidate, so the
//! enumeration order is fixed and independent of how work is split across
//! threads. Results are gathered back into index order before they leave.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::{
    Construction, ConstructionId, DillonParams, DillonVariant, KasamiParams, KasamiVariant, NihoParams,
};
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::quad::QuadField;

/// Default limit on the number of candidates in one sweep.
pub const DEFAULT_CAP: u64 = 1 << 24;

/// A finite, indexed family of candidates.
#[derive(Debug, Clone)]
pub struct SearchSpace {
    pub id: ConstructionId,
    pub field: QuadField,
    pub kind: SpaceKind,
}

#[derive(Debug, Clone)]
pub enum SpaceKind {
    /// `ε ∈ μ_r ∖ {1}` (as powers `ε_0^k`, `k = 1..r`), `c ∈ F^*`.
    DillonMuR { r: u64, l1: u64, l2: u64, eps0: Elem },
    /// `(a_1, a_2) ∈ F × F^*`, `a_1 ≠ a_2`.
    DillonR3 { l1: u64, l2: u64 },
    /// `(a_1, a_2) ∈ F × F^*`, `a_1 ≠ a_2`, for a fixed `Z`.
    DillonTwoBranch { l1: u64, l2: u64, z: BTreeSet<u64> },
    /// `(a, c) ∈ F_q^* × F_q^*`, `a ≠ c`, for a fixed `Z`.
    KasamiTwoValue { z: BTreeSet<u64> },
    /// `c ∈ F_q^*`.
    KasamiZeroBranch,
    /// `c ∈ F_q^*` with all `s_i = s`.
    NihoConstAlpha { s: u64 },
}

/// One candidate's parameters as `(name, value)` text pairs.
pub type Params = Vec<(String, String)>;

impl SearchSpace {
    pub fn dillon_mu_r(field: &QuadField, r: u64, l1: u64, l2: u64) -> Result<SearchSpace> {
        let eps0 = field.ctx().unity_root(r)?;
        Ok(SearchSpace {
            id: ConstructionId::DillonMuR,
            field: field.clone(),
            kind: SpaceKind::DillonMuR { r, l1, l2, eps0 },
        })
    }

    pub fn dillon_r3(field: &QuadField, l1: u64, l2: u64) -> SearchSpace {
        SearchSpace { id: ConstructionId::DillonR3, field: field.clone(), kind: SpaceKind::DillonR3 { l1, l2 } }
    }

    pub fn dillon_two_branch(field: &QuadField, l1: u64, l2: u64, z: BTreeSet<u64>) -> SearchSpace {
        SearchSpace {
            id: ConstructionId::DillonTwoBranch,
            field: field.clone(),
            kind: SpaceKind::DillonTwoBranch { l1, l2, z },
        }
    }

    pub fn kasami_two_value(field: &QuadField, z: BTreeSet<u64>) -> SearchSpace {
        SearchSpace { id: ConstructionId::KasamiTwoValue, field: field.clone(), kind: SpaceKind::KasamiTwoValue { z } }
    }

    pub fn kasami_zero_branch(field: &QuadField) -> SearchSpace {
        SearchSpace { id: ConstructionId::KasamiZeroBranch, field: field.clone(), kind: SpaceKind::KasamiZeroBranch }
    }

    pub fn niho_const_alpha(field: &QuadField, s: u64) -> SearchSpace {
        SearchSpace { id: ConstructionId::NihoConstAlpha, field: field.clone(), kind: SpaceKind::NihoConstAlpha { s } }
    }

    pub fn size(&self) -> u64 {
        let big = self.field.ctx().size() as u64;
        let q = self.field.q();
        match &self.kind {
            SpaceKind::DillonMuR { r, .. } => (r - 1) * (big - 1),
            SpaceKind::DillonR3 { .. } | SpaceKind::DillonTwoBranch { .. } => (big - 1) * (big - 1),
            SpaceKind::KasamiTwoValue { .. } => (q - 1) * (q - 2),
            SpaceKind::KasamiZeroBranch | SpaceKind::NihoConstAlpha { .. } => q - 1,
        }
    }

    /// `(a_1, a_2)` with `a_2 ≠ 0`, `a_1 ≠ a_2`.
    fn distinct_pair(&self, idx: u64) -> (Elem, Elem) {
        let nz = self.field.ctx().size() as u64 - 1;
        let a2 = 1 + idx / nz;
        let j = idx % nz;
        let a1 = if j < a2 { j } else { j + 1 };
        (Elem(a1 as u32), Elem(a2 as u32))
    }

    /// `(a, c)` in F_q^* with `a ≠ c`, both as `ξ^k`.
    fn fq_pair(&self, idx: u64) -> (u64, u64) {
        let q = self.field.q();
        let c = idx / (q - 2);
        let j = idx % (q - 2);
        let a = if j < c { j } else { j + 1 };
        (a, c)
    }

    /// Candidate at `idx` with its readable parameters.
    pub fn candidate(&self, idx: u64) -> Result<(Construction, Params)> {
        let qf = &self.field;
        let ctx = qf.ctx();
        let fmt = |e: Elem| ctx.format_elem(e);
        let p = |k: &str, v: String| (k.to_string(), v);
        Ok(match &self.kind {
            SpaceKind::DillonMuR { r, l1, l2, eps0 } => {
                let nz = ctx.size() as u64 - 1;
                let k = 1 + idx / nz;
                let c = Elem((1 + idx % nz) as u32);
                let eps = ctx.pow_u(*eps0, k);
                let d = DillonParams::new(qf, DillonVariant::MuR { c, eps, r: *r, l1: *l1, l2: *l2 })?;
                (Construction::Dillon(d), vec![p("eps", fmt(eps)), p("c", fmt(c))])
            }
            SpaceKind::DillonR3 { l1, l2 } => {
                let (a1, a2) = self.distinct_pair(idx);
                let d = DillonParams::new(qf, DillonVariant::R3 { a1, a2, l1: *l1, l2: *l2 })?;
                (Construction::Dillon(d), vec![p("a1", fmt(a1)), p("a2", fmt(a2))])
            }
            SpaceKind::DillonTwoBranch { l1, l2, z } => {
                let (a1, a2) = self.distinct_pair(idx);
                let d = DillonParams::new(qf, DillonVariant::TwoBranch { a1, l1: *l1, a2, l2: *l2, z: z.clone() })?;
                (Construction::Dillon(d), vec![p("a1", fmt(a1)), p("a2", fmt(a2))])
            }
            SpaceKind::KasamiTwoValue { z } => {
                let (ka, kc) = self.fq_pair(idx);
                let (a, c) = (qf.xi_pow(Some(ka)), qf.xi_pow(Some(kc)));
                let k = KasamiParams::new(qf, KasamiVariant::TwoValue { a, c, z: z.clone() })?;
                (Construction::Kasami(k), vec![p("a", qf.format_fq(a)), p("c", qf.format_fq(c))])
            }
            SpaceKind::KasamiZeroBranch => {
                let c = qf.xi_pow(Some(idx));
                let k = KasamiParams::new(qf, KasamiVariant::ZeroBranch { c })?;
                (Construction::Kasami(k), vec![p("c", qf.format_fq(c))])
            }
            SpaceKind::NihoConstAlpha { s } => {
                let c = qf.xi_pow(Some(idx));
                let n = NihoParams::const_alpha(qf, c, &vec![*s; qf.q() as usize + 1])?;
                (Construction::Niho(n), vec![p("c", qf.format_fq(c))])
            }
        })
    }
}

/// What a sweep records per candidate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    /// Predicate only; counts.
    Count,
    /// Predicate only; passers listed.
    List,
    /// Predicate and brute-force oracle on every candidate.
    VerifyAll,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct CandidateRecord {
    pub index: u64,
    pub params: Params,
    pub predicate: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<bool>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct SearchOutcome {
    pub construction: String,
    pub total: u64,
    pub predicate_pass: u64,
    /// Candidates checked by brute force, and how many of those were bent.
    pub oracle_checked: u64,
    pub oracle_pass: u64,
    /// Candidates where predicate and oracle disagree.
    pub mismatches: Vec<CandidateRecord>,
    /// Passers (list mode) or every checked record (verify mode).
    pub records: Vec<CandidateRecord>,
}

/// Options for [`run_search`].
#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub mode: SearchMode,
    /// Cross-check this many random passers and this many random failers.
    pub oracle_sample: usize,
    pub seed: u64,
    pub cap: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { mode: SearchMode::Count, oracle_sample: 0, seed: 0, cap: DEFAULT_CAP }
    }
}

fn oracle(space: &SearchSpace, idx: u64) -> Result<(Params, bool, bool)> {
    let (c, params) = space.candidate(idx)?;
    Ok((params, c.predicate()?, c.function().is_bent()))
}

pub fn run_search(space: &SearchSpace, opts: &SearchOptions) -> Result<SearchOutcome> {
    let total = space.size();
    if total > opts.cap {
        return Err(Error::InvalidParams(format!("search space of {total} candidates exceeds cap {}", opts.cap)));
    }
    let mut records = Vec::new();
    let mut mismatches = Vec::new();
    let (mut oracle_checked, mut oracle_pass) = (0u64, 0u64);
    let verdicts: Vec<bool> = (0..total)
        .into_par_iter()
        .map(|i| space.candidate(i).and_then(|(c, _)| c.predicate()))
        .collect::<Result<Vec<_>>>()?;
    let predicate_pass = verdicts.iter().filter(|&&v| v).count() as u64;

    let mut checked: Vec<u64> = match opts.mode {
        SearchMode::VerifyAll => (0..total).collect(),
        _ => Vec::new(),
    };
    if opts.mode != SearchMode::VerifyAll && opts.oracle_sample > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let (mut pass, mut fail): (Vec<u64>, Vec<u64>) = (0..total).partition(|&i| verdicts[i as usize]);
        pass.shuffle(&mut rng);
        fail.shuffle(&mut rng);
        checked.extend(pass.into_iter().take(opts.oracle_sample));
        checked.extend(fail.into_iter().take(opts.oracle_sample));
        checked.sort_unstable();
    }
    let checks: Vec<(u64, Params, bool, bool)> = checked
        .par_iter()
        .map(|&i| oracle(space, i).map(|(p, pred, orc)| (i, p, pred, orc)))
        .collect::<Result<Vec<_>>>()?;
    for (index, params, predicate, bent) in checks {
        oracle_checked += 1;
        oracle_pass += bent as u64;
        let rec = CandidateRecord { index, params, predicate, oracle: Some(bent) };
        if predicate != bent {
            mismatches.push(rec.clone());
        }
        if opts.mode == SearchMode::VerifyAll {
            records.push(rec);
        }
    }
    if opts.mode == SearchMode::List {
        records = (0..total)
            .filter(|&i| verdicts[i as usize])
            .map(|i| {
                let (_, params) = space.candidate(i)?;
                Ok(CandidateRecord { index: i, params, predicate: true, oracle: None })
            })
            .collect::<Result<Vec<_>>>()?;
    }
    Ok(SearchOutcome {
        construction: space.id.to_string(),
        total,
        predicate_pass,
        oracle_checked,
        oracle_pass,
        mismatches,
        records,
    })
}

/// Nonzero `a ∈ F_q` with `K_m(a) = 0`, as exponents of ξ.
pub fn kloosterman_zeros(field: &QuadField) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for k in 0..field.q() - 1 {
        if field.kloosterman(field.xi_pow(Some(k)))? == 0 {
            out.push(k);
        }
    }
    Ok(out)
}
