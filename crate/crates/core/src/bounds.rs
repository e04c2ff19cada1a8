//! Exact `D_span`, `beta_field` and `beta_field^r` of a lattice by shell search.
//!
//! * `dspan`: least `d` such that nonnegative points of norm `<= d` meet
//!   every coset of `L`.
//! * `bfield`: least `d` such that nonnegative lattice points of norm `<= d`
//!   generate `L`.
//! * `bfieldr`: the same with lattice points from every orthant.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::ControlFlow;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize, Serializer};

use crate::ball::{for_each_shell_point, Orthant};
use crate::error::SearchError;
use crate::hnf::Echelon;
use crate::lattice::{big_to_json, CosetLabel, LatticeBasis, LatticeVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Dspan,
    Bfield,
    Bfieldr,
}

impl BoundKind {
    pub const ALL: [BoundKind; 3] = [BoundKind::Dspan, BoundKind::Bfield, BoundKind::Bfieldr];

    pub fn name(self) -> &'static str {
        match self {
            BoundKind::Dspan => "dspan",
            BoundKind::Bfield => "bfield",
            BoundKind::Bfieldr => "bfieldr",
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for BoundKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "dspan" => Ok(BoundKind::Dspan),
            "bfield" => Ok(BoundKind::Bfield),
            "bfieldr" => Ok(BoundKind::Bfieldr),
            _ => Err(format!("unknown bound `{s}` (expected dspan, bfield or bfieldr)")),
        }
    }
}

/// Shared flag for aborting long searches from another thread.
#[derive(Clone, Debug, Default)]
pub struct CancelToken(Arc<AtomicBool>);

impl CancelToken {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cancel(&self) {
        self.0.store(true, Ordering::Relaxed);
    }

    pub fn is_cancelled(&self) -> bool {
        self.0.load(Ordering::Relaxed)
    }
}

#[derive(Clone, Debug, Default)]
pub struct SearchOptions {
    /// Radius cap; `None` uses the proven default for the bound.
    pub cap: Option<u64>,
    pub cancel: Option<CancelToken>,
}

impl SearchOptions {
    pub fn with_cap(cap: u64) -> Self {
        SearchOptions { cap: Some(cap), cancel: None }
    }

    fn check_cancel(&self) -> Result<(), SearchError> {
        match &self.cancel {
            Some(t) if t.is_cancelled() => Err(SearchError::Cancelled),
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witnesses {
    /// Coset label -> lexicographically least minimum-norm nonnegative representative.
    CosetRepresentatives(BTreeMap<CosetLabel, LatticeVector>),
    /// A generating set of `L`, in the order it was found.
    Generators(Vec<LatticeVector>),
}

impl Serialize for Witnesses {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Witnesses::CosetRepresentatives(map) => s.collect_map(map.iter()),
            Witnesses::Generators(gens) => gens.serialize(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeBoundReport {
    pub which: BoundKind,
    pub value: u64,
    pub witnesses: Witnesses,
    #[serde(serialize_with = "big_to_json")]
    pub index: BigInt,
    pub search_cap_used: u64,
}

impl DegreeBoundReport {
    pub fn generators(&self) -> Option<&[LatticeVector]> {
        match &self.witnesses {
            Witnesses::Generators(g) => Some(g),
            _ => None,
        }
    }

    pub fn representatives(&self) -> Option<&BTreeMap<CosetLabel, LatticeVector>> {
        match &self.witnesses {
            Witnesses::CosetRepresentatives(m) => Some(m),
            _ => None,
        }
    }
}

fn is_sign_normalized(p: &[i64]) -> bool {
    p.iter().find(|&&x| x != 0).is_none_or(|&x| x > 0)
}

fn index_u64(l: &LatticeBasis) -> Result<u64, SearchError> {
    l.index_u64().ok_or(SearchError::Lattice(crate::error::LatticeError::Overflow))
}

/// Proven upper bound used as the default search radius.
pub fn default_cap(l: &LatticeBasis, which: BoundKind) -> Result<u64, SearchError> {
    let n = index_u64(l)?;
    Ok(match which {
        BoundKind::Dspan => n.saturating_sub(1),
        BoundKind::Bfield | BoundKind::Bfieldr => n,
    })
}

pub fn compute(l: &LatticeBasis, which: BoundKind, opts: &SearchOptions) -> Result<DegreeBoundReport, SearchError> {
    match which {
        BoundKind::Dspan => dspan_with(l, opts),
        BoundKind::Bfield => bfield_with(l, opts),
        BoundKind::Bfieldr => bfieldr_with(l, opts),
    }
}

pub fn dspan(l: &LatticeBasis) -> Result<DegreeBoundReport, SearchError> {
    dspan_with(l, &SearchOptions::default())
}

pub fn dspan_with(l: &LatticeBasis, opts: &SearchOptions) -> Result<DegreeBoundReport, SearchError> {
    let index = index_u64(l)?;
    let cap = match opts.cap {
        Some(c) => c,
        None => default_cap(l, BoundKind::Dspan)?,
    };
    let m = l.dimension();
    let mut reps: BTreeMap<CosetLabel, LatticeVector> = BTreeMap::new();
    let mut err = None;
    for d in 0..=cap {
        opts.check_cancel()?;
        let flow = for_each_shell_point(m, d, Orthant::Nonnegative, |p| {
            let v = LatticeVector(p.to_vec());
            match l.coset_label(&v) {
                Ok(label) => {
                    reps.entry(label).or_insert(v);
                }
                Err(e) => {
                    err = Some(e);
                    return ControlFlow::Break(());
                }
            }
            if reps.len() as u64 == index {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        if let Some(e) = err.take() {
            return Err(e.into());
        }
        if flow.is_break() {
            return Ok(DegreeBoundReport {
                which: BoundKind::Dspan,
                value: d,
                witnesses: Witnesses::CosetRepresentatives(reps),
                index: l.index(),
                search_cap_used: cap,
            });
        }
    }
    Err(SearchError::CapExceeded { which: BoundKind::Dspan, cap })
}

pub fn bfield(l: &LatticeBasis) -> Result<DegreeBoundReport, SearchError> {
    bfield_with(l, &SearchOptions::default())
}

pub fn bfield_with(l: &LatticeBasis, opts: &SearchOptions) -> Result<DegreeBoundReport, SearchError> {
    generating_search(l, BoundKind::Bfield, opts)
}

pub fn bfieldr(l: &LatticeBasis) -> Result<DegreeBoundReport, SearchError> {
    bfieldr_with(l, &SearchOptions::default())
}

pub fn bfieldr_with(l: &LatticeBasis, opts: &SearchOptions) -> Result<DegreeBoundReport, SearchError> {
    generating_search(l, BoundKind::Bfieldr, opts)
}

/// Accumulates lattice points shell by shell into the Hermite form of the
/// sublattice they generate, stopping once its index reaches `[Z^m : L]`.
fn generating_search(
    l: &LatticeBasis,
    which: BoundKind,
    opts: &SearchOptions,
) -> Result<DegreeBoundReport, SearchError> {
    let cap = match opts.cap {
        Some(c) => c,
        None => default_cap(l, which)?,
    };
    let m = l.dimension();
    let target = l.index();
    let mode = if which == BoundKind::Bfield { Orthant::Nonnegative } else { Orthant::All };
    let mut sub = Echelon::from_generators(m, std::iter::empty());
    let mut gens = Vec::new();
    for d in 1..=cap {
        opts.check_cancel()?;
        let flow = for_each_shell_point(m, d, mode, |p| {
            // v and -v generate the same thing
            if mode == Orthant::All && !is_sign_normalized(p) {
                return ControlFlow::Continue(());
            }
            if l.contains_coords(p) && !sub.contains(p) {
                sub = sub.with_vector(p);
                gens.push(LatticeVector(p.to_vec()));
                if sub.is_full_rank() && sub.pivot_product() == target {
                    return ControlFlow::Break(());
                }
            }
            ControlFlow::Continue(())
        });
        if flow.is_break() {
            return Ok(DegreeBoundReport {
                which,
                value: d,
                witnesses: Witnesses::Generators(gens),
                index: target,
                search_cap_used: cap,
            });
        }
    }
    Err(SearchError::CapExceeded { which, cap })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundRelations {
    pub dspan: u64,
    pub bfield: u64,
    pub bfieldr: u64,
    pub index: u64,
    pub holds: bool,
}

/// Checks `bfieldr <= bfield <= 2 dspan + 1`, `dspan <= index - 1` and
/// `bfield <= index`.
pub fn bound_relations(l: &LatticeBasis) -> Result<BoundRelations, SearchError> {
    let index = index_u64(l)?;
    let ds = dspan(l)?.value;
    let bf = bfield(l)?.value;
    let bfr = bfieldr(l)?.value;
    let holds = bfr <= bf && bf <= 2 * ds + 1 && ds < index.max(1) && bf <= index.max(1);
    Ok(BoundRelations { dspan: ds, bfield: bf, bfieldr: bfr, index, holds })
}

pub fn verify_bound_relations(l: &LatticeBasis) -> Result<bool, SearchError> {
    bound_relations(l).map(|r| r.holds)
}
