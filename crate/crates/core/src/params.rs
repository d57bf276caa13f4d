//! `key=value` parameter lists and the construction builders behind them.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet};

use crate::constructions::{DillonParams, DillonVariant, KasamiParams, KasamiVariant, NihoParams};
use crate::search::SearchSpace;
use crate::{
    Construction, ConstructionId, Elem, Error, FieldCtx, FieldSpec, MultBranch, MultCycSpec, QuadField, Result,
};

/// Named parameters, each consumed at most once; leftovers are an error.
pub struct Params {
    map: BTreeMap<String, String>,
    used: RefCell<BTreeSet<String>>,
}

impl Params {
    pub fn parse(tokens: &[String]) -> Result<Params> {
        let mut map = BTreeMap::new();
        for t in tokens {
            let (k, v) =
                t.split_once('=').ok_or_else(|| Error::InvalidParams(format!("expected key=value, got `{t}`")))?;
            if map.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
                return Err(Error::InvalidParams(format!("parameter `{k}` given twice")));
            }
        }
        Ok(Params { map, used: RefCell::new(BTreeSet::new()) })
    }

    /// Whitespace-separated `key=value` tokens.
    pub fn parse_str(s: &str) -> Result<Params> {
        Params::parse(&s.split_whitespace().map(str::to_string).collect::<Vec<_>>())
    }

    /// The parameters as given, for echoing in reports.
    pub fn echo(&self) -> serde_json::Value {
        serde_json::Value::Object(self.map.iter().map(|(k, v)| (k.clone(), v.clone().into())).collect())
    }

    pub fn get(&self, k: &str) -> Option<&str> {
        self.used.borrow_mut().insert(k.to_string());
        self.map.get(k).map(String::as_str)
    }

    fn req(&self, k: &str) -> Result<&str> {
        self.get(k).ok_or_else(|| Error::InvalidParams(format!("missing parameter `{k}`")))
    }

    pub fn u64_or(&self, k: &str, default: u64) -> Result<u64> {
        match self.get(k) {
            None => Ok(default),
            Some(v) => v.parse().map_err(|_| Error::InvalidParams(format!("`{k}`: expected an integer, got `{v}`"))),
        }
    }

    pub fn opt_u32(&self, k: &str) -> Result<Option<u32>> {
        self.get(k)
            .map(|v| v.parse().map_err(|_| Error::InvalidParams(format!("`{k}`: expected an integer, got `{v}`"))))
            .transpose()
    }

    /// A comma list of integers; `{}` or an empty value is the empty set.
    pub fn set(&self, k: &str) -> Result<BTreeSet<u64>> {
        Ok(self.ints(k)?.unwrap_or_default().into_iter().collect())
    }

    fn ints(&self, k: &str) -> Result<Option<Vec<u64>>> {
        let Some(v) = self.get(k) else { return Ok(None) };
        let v = v.trim_start_matches('{').trim_end_matches('}');
        v.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| s.parse().map_err(|_| Error::InvalidParams(format!("`{k}`: bad integer `{s}`"))))
            .collect::<Result<Vec<_>>>()
            .map(Some)
    }

    /// Integers of length `len`; a single value is broadcast.
    fn ints_len(&self, k: &str, len: usize, default: u64) -> Result<Vec<u64>> {
        match self.ints(k)? {
            None => Ok(vec![default; len]),
            Some(v) if v.len() == 1 => Ok(vec![v[0]; len]),
            Some(v) if v.len() == len => Ok(v),
            Some(v) => Err(Error::InvalidParams(format!("`{k}`: expected 1 or {len} values, got {}", v.len()))),
        }
    }

    fn elem(&self, qf: &QuadField, k: &str) -> Result<Elem> {
        qf.parse_elem(self.req(k)?).map_err(|e| Error::InvalidParams(format!("`{k}`: {e}")))
    }

    fn elem_or(&self, qf: &QuadField, k: &str, default: Elem) -> Result<Elem> {
        if self.map.contains_key(k) {
            self.elem(qf, k)
        } else {
            self.get(k);
            Ok(default)
        }
    }

    fn fq(&self, qf: &QuadField, k: &str) -> Result<Elem> {
        qf.parse_fq(self.req(k)?).map_err(|e| Error::InvalidParams(format!("`{k}`: {e}")))
    }

    /// Elements of length `len`; a single value is broadcast.
    fn elems(&self, qf: &QuadField, k: &str, len: usize, fq_only: bool) -> Result<Vec<Elem>> {
        let v = self
            .req(k)?
            .split(',')
            .map(|s| if fq_only { qf.parse_fq(s) } else { qf.parse_elem(s) })
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::InvalidParams(format!("`{k}`: {e}")))?;
        match v.len() {
            1 => Ok(vec![v[0]; len]),
            n if n == len => Ok(v),
            n => Err(Error::InvalidParams(format!("`{k}`: expected 1 or {len} values, got {n}"))),
        }
    }

    /// Errors on keys nobody asked for.
    pub fn finish(&self) -> Result<()> {
        let used = self.used.borrow();
        match self.map.keys().find(|k| !used.contains(*k)) {
            Some(k) => Err(Error::InvalidParams(format!("unknown parameter `{k}`"))),
            None => Ok(()),
        }
    }
}

/// The quadratic field from `--field` and/or `m=`.
pub fn quad_field(field: Option<&FieldSpec>, m: Option<u32>) -> Result<QuadField> {
    let spec = match (field, m) {
        (Some(f), Some(m)) if f.degree != 2 * m => {
            return Err(Error::InvalidParams(format!("--field has degree {} but m={m}", f.degree)));
        }
        (Some(f), _) => *f,
        (None, Some(m)) => FieldSpec::default_for(2 * m)?,
        (None, None) => return Err(Error::InvalidParams("give m=<half degree> or --field".into())),
    };
    let ctx = FieldCtx::new(spec)?;
    QuadField::new(&ctx)
}

pub fn parse_id(s: &str) -> Result<ConstructionId> {
    s.parse().map_err(|e: Error| {
        let all: Vec<_> = ConstructionId::ALL.iter().map(|i| i.as_str()).collect();
        Error::InvalidParams(format!("{e}; known: {}", all.join(", ")))
    })
}

/// Builds a construction from `id` and its parameters `p`.
pub fn construction(id: ConstructionId, field: Option<&FieldSpec>, p: &Params) -> Result<Construction> {
    let qf = quad_field(field, p.opt_u32("m")?)?;
    let q = qf.q() as usize;
    let built = match id {
        ConstructionId::DillonGeneral => {
            let a = p.elems(&qf, "a", q + 1, false)?;
            let l = p.ints_len("l", a.len(), 1)?;
            dillon(&qf, DillonVariant::General { branches: a.into_iter().zip(l).collect() })?
        }
        ConstructionId::DillonTwoBranch => dillon(
            &qf,
            DillonVariant::TwoBranch {
                a1: p.elem_or(&qf, "a1", Elem::ZERO)?,
                l1: p.u64_or("l1", 1)?,
                a2: p.elem(&qf, "a2")?,
                l2: p.u64_or("l2", 1)?,
                z: p.set("z")?,
            },
        )?,
        ConstructionId::DillonMuR => dillon(
            &qf,
            DillonVariant::MuR {
                c: p.elem(&qf, "c")?,
                eps: p.elem(&qf, "eps")?,
                r: p.u64_or("r", 3)?,
                l1: p.u64_or("l1", 1)?,
                l2: p.u64_or("l2", 1)?,
            },
        )?,
        ConstructionId::DillonR3 => dillon(
            &qf,
            DillonVariant::R3 {
                a1: p.elem(&qf, "a1")?,
                a2: p.elem(&qf, "a2")?,
                l1: p.u64_or("l1", 1)?,
                l2: p.u64_or("l2", 1)?,
            },
        )?,
        ConstructionId::NihoGeneral => {
            let a = p.elems(&qf, "a", q + 1, false)?;
            let s = p.ints_len("s", a.len(), 0)?;
            Construction::Niho(NihoParams::new(&qf, a.into_iter().zip(s).collect())?)
        }
        ConstructionId::NihoConstAlpha => {
            let c = p.fq(&qf, "c")?;
            let s = p.ints_len("s", q + 1, 0)?;
            Construction::Niho(NihoParams::const_alpha(&qf, c, &s)?)
        }
        ConstructionId::KasamiGeneral => {
            let variant = KasamiVariant::General {
                alpha_inf: p.fq(&qf, "alpha_inf")?,
                alphas: p.elems(&qf, "alphas", q - 1, true)?,
            };
            kasami(&qf, p, variant)?
        }
        ConstructionId::KasamiZeroBranch => {
            let variant = KasamiVariant::ZeroBranch { c: p.fq(&qf, "c")? };
            kasami(&qf, p, variant)?
        }
        ConstructionId::KasamiTwoValue => {
            let variant = KasamiVariant::TwoValue { a: p.fq(&qf, "a")?, c: p.fq(&qf, "c")?, z: p.set("z")? };
            kasami(&qf, p, variant)?
        }
        ConstructionId::MixedWf => {
            let a = p.elems(&qf, "a", q + 1, false)?;
            let r = p.ints_len("r", a.len(), 0)?;
            let branches = a.into_iter().zip(r).map(|(a, r)| MultBranch { a, r }).collect();
            Construction::Mixed(MultCycSpec::new(&qf, branches)?)
        }
    };
    p.finish()?;
    Ok(built)
}

fn dillon(qf: &QuadField, v: DillonVariant) -> Result<Construction> {
    DillonParams::new(qf, v).map(Construction::Dillon)
}

fn kasami(qf: &QuadField, p: &Params, v: KasamiVariant) -> Result<Construction> {
    let xi = p.elem_or(qf, "xi", qf.xi())?;
    KasamiParams::with_xi(qf, xi, v).map(Construction::Kasami)
}

/// The sweep over the free parameters of `id`, the rest fixed by `p`.
pub fn search_space(id: ConstructionId, field: Option<&FieldSpec>, p: &Params) -> Result<SearchSpace> {
    let qf = quad_field(field, p.opt_u32("m")?)?;
    let l = |k| p.u64_or(k, 1);
    let space = match id {
        ConstructionId::DillonMuR => SearchSpace::dillon_mu_r(&qf, p.u64_or("r", 3)?, l("l1")?, l("l2")?)?,
        ConstructionId::DillonR3 => SearchSpace::dillon_r3(&qf, l("l1")?, l("l2")?),
        ConstructionId::DillonTwoBranch => SearchSpace::dillon_two_branch(&qf, l("l1")?, l("l2")?, p.set("z")?),
        ConstructionId::KasamiTwoValue => SearchSpace::kasami_two_value(&qf, p.set("z")?),
        ConstructionId::KasamiZeroBranch => SearchSpace::kasami_zero_branch(&qf),
        ConstructionId::NihoConstAlpha => SearchSpace::niho_const_alpha(&qf, p.u64_or("s", 0)?),
        other => return Err(Error::InvalidParams(format!("no search space for `{other}`"))),
    };
    p.finish()?;
    Ok(space)
}
