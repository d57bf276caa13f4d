//! Bent Boolean functions from cyclotomic mappings over GF(2^n).
//!
//! The crate is layered bottom-up:
//!
//! - [`field`]: GF(2^e) arithmetic, traces, subfields, roots of unity.
//! - [`quad`]: GF(q²) over GF(q): the unit circle, Artin–Schreier solving and
//!   Kloosterman sums.
//! - [`boolfun`]: truth tables with exact Walsh transforms, duals, ANF and
//!   EA-invariants; the oracle layer.
//! - [`cyclotomic`]: multiplicative and additive coset partitions and the
//!   mappings built on them.
//! - [`constructions`]: Dillon, Niho and Kasami-type builders with their
//!   bentness predicates, duals and Walsh predictors.
//! - [`polyform`]: conversions between cyclotomic and polynomial forms.
//! - [`search`]: exhaustive parameter sweeps with deterministic output.
//! - [`params`]: builds constructions and sweeps from `key=value` text.

pub mod boolfun;
pub mod constructions;
pub mod cyclotomic;
pub mod error;
pub mod field;
pub mod params;
pub mod polyform;
pub mod quad;
pub mod search;

pub use boolfun::{kloosterman, kloosterman_table, Anf, BooleanFunction, EaInvariants, EaVerdict, WalshSpectrum};
pub use constructions::{
    Construction, ConstructionId, DillonParams, DillonVariant, KasamiParams, KasamiVariant, NihoCondition, NihoParams,
};
pub use cyclotomic::{AddBranch, AddCycSpec, AddCycSpecGeneral, CycSpec, MultBranch, MultCycSpec};
pub use error::{Error, Result};
pub use field::{make_field, Elem, FieldCtx, FieldSpec, Subfield};
pub use polyform::{TracePolynomial, UnivariatePoly};
pub use quad::{compute_u, QuadField};
pub use search::{run_search, SearchMode, SearchOptions, SearchOutcome, SearchSpace};
