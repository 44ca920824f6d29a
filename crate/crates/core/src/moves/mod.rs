//! The maps `psi1`, `psi2`, `psi3`, `sigma` on 6-tuples, the complexity
//! change `delta`, H-orbits and canonical representatives.

mod surgery;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::tuple::{admissibility, Admissibility, SixTuple};

pub use surgery::{build_gf, verify_sigma_constructively, SigmaReport, SurgeryError, SurgeryTrace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoveError {
    #[error("{tuple} is not admissible: {diagnosis}")]
    Inadmissible {
        tuple: SixTuple,
        diagnosis: Admissibility,
    },
    #[error("{0}: q0 coincides with h0 or h2, no case of sigma applies")]
    NoCase(SixTuple),
}

/// `psi1(h0,h1,h2;q0,q1,q2) = (h1,h2,h0;q1,q2,q0)`.
pub fn psi1(f: &SixTuple) -> SixTuple {
    let ([h0, h1, h2], [q0, q1, q2]) = (f.h(), f.q());
    SixTuple::reduced([h1, h2, h0], [q1, q2, q0]).expect("psi1 preserves (I)-(IV)")
}

/// `psi2(h0,h1,h2;q0,q1,q2) = (h2,h1,h0;q0,q2,q1)`.
pub fn psi2(f: &SixTuple) -> SixTuple {
    let ([h0, h1, h2], [q0, q1, q2]) = (f.h(), f.q());
    SixTuple::reduced([h2, h1, h0], [q0, q2, q1]).expect("psi2 preserves (I)-(IV)")
}

/// `psi3(h0,h1,h2;q0,q1,q2) = (h0,h1,h2;-q0,-q1,-q2)`.
pub fn psi3(f: &SixTuple) -> SixTuple {
    let [q0, q1, q2] = f.q();
    SixTuple::reduced(f.h(), [-q0, -q1, -q2]).expect("psi3 preserves (I)-(IV)")
}

/// `psi_k` for `k` in `{1,2,3}`.
pub fn apply_psi(k: u8, f: &SixTuple) -> Option<SixTuple> {
    match k {
        1 => Some(psi1(f)),
        2 => Some(psi2(f)),
        3 => Some(psi3(f)),
        _ => None,
    }
}

/// `psi1` applied `i` times.
pub fn psi1_pow(f: &SixTuple, i: usize) -> SixTuple {
    (0..i % 3).fold(*f, |g, _| psi1(&g))
}

/// The four regimes of `sigma` for `q0 != 0`, plus the identity regime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SigmaCase {
    /// `q0 = 0`.
    Identity,
    /// `0 < q0 < h0, h2`.
    Small,
    /// `q0 > h0, h2`.
    Large,
    /// `h0 < q0 < h2`.
    AboveH0,
    /// `h2 < q0 < h0`.
    AboveH2,
}

impl fmt::Display for SigmaCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SigmaCase::Identity => "q0=0",
            SigmaCase::Small => "0<q0<h0,h2",
            SigmaCase::Large => "q0>h0,h2",
            SigmaCase::AboveH0 => "h0<q0<h2",
            SigmaCase::AboveH2 => "h2<q0<h0",
        })
    }
}

pub fn sigma_case(f: &SixTuple) -> Option<SigmaCase> {
    let ([h0, _, h2], q0) = (f.h(), f.q()[0]);
    if q0 == 0 {
        Some(SigmaCase::Identity)
    } else if q0 < h0 && q0 < h2 {
        Some(SigmaCase::Small)
    } else if q0 > h0 && q0 > h2 {
        Some(SigmaCase::Large)
    } else if h0 < q0 && q0 < h2 {
        Some(SigmaCase::AboveH0)
    } else if h2 < q0 && q0 < h0 {
        Some(SigmaCase::AboveH2)
    } else {
        None
    }
}

/// The integers `L, p1, p2, r1, r2` governing the surgery behind `sigma`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TableRow {
    pub l: i64,
    pub p1: i64,
    pub p2: i64,
    pub r1: i64,
    pub r2: i64,
}

impl fmt::Display for TableRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "L={} p1={} p2={} r1={} r2={}",
            self.l, self.p1, self.p2, self.r1, self.r2
        )
    }
}

/// Row of the surgery table for `f`; `None` when `q0 = 0` or no case applies.
pub fn table_row(f: &SixTuple) -> Option<TableRow> {
    let ([h0, _, h2], q0) = (f.h(), f.q()[0]);
    let row = |l, p1, p2, r1, r2| TableRow { l, p1, p2, r1, r2 };
    Some(match sigma_case(f)? {
        SigmaCase::Identity => return None,
        SigmaCase::Small => row(q0, 0, 0, h0 - q0, h2 - q0),
        SigmaCase::Large => row(h0 + h2 - q0, q0 - h2, q0 - h0, 0, 0),
        SigmaCase::AboveH0 => row(h0, 0, q0 - h0, 0, h2 - q0),
        SigmaCase::AboveH2 => row(h2, q0 - h2, 0, h0 - q0, 0),
    })
}

/// `sigma` by its case formulas, without the admissibility check.
/// Outputs are reduced mod the new moduli.
pub fn sigma_unchecked(f: &SixTuple) -> Result<SixTuple, MoveError> {
    let ([h0, h1, h2], [q0, q1, q2]) = (f.h(), f.q());
    let (h, q) = match sigma_case(f).ok_or(MoveError::NoCase(*f))? {
        SigmaCase::Identity => return Ok(*f),
        SigmaCase::Small => (
            [h0 + h1 - q0, q0, h2 + h1 - q0],
            [h0 + h1 + h2 - 2 * q0, q0 + q1 + h1, q0 + q2 + h1],
        ),
        SigmaCase::Large => (
            [q0 + h1 - h2, h0 + h2 - q0, q0 + h1 - h0],
            [h1, q0 + q1 - h2, q0 + q2 - h0],
        ),
        SigmaCase::AboveH0 => (
            [h1, h0, h1 + h2 - h0],
            [h1 + h2 - q0, q1, 2 * q0 + q2 + h1 - h0],
        ),
        SigmaCase::AboveH2 => (
            [h1 + h0 - h2, h2, h1],
            [h1 + h0 - q0, 2 * q0 + q1 + h1 - h2, q2],
        ),
    };
    Ok(SixTuple::reduced(h, q).expect("sigma formulas keep (I)-(IV) on admissible input"))
}

/// The 2-symmetric transformation. Rejects inadmissible input.
pub fn sigma(f: &SixTuple) -> Result<SixTuple, MoveError> {
    let diagnosis = admissibility(f);
    if !diagnosis.is_admissible() {
        return Err(MoveError::Inadmissible {
            tuple: *f,
            diagnosis,
        });
    }
    sigma_unchecked(f)
}

/// `upsilon(sigma(f)) - upsilon(f)` by its case formula; `0` when no case applies.
pub fn delta(f: &SixTuple) -> i64 {
    let ([h0, h1, h2], q0) = (f.h(), f.q()[0]);
    match sigma_case(f) {
        None | Some(SigmaCase::Identity) => 0,
        Some(SigmaCase::Small) => h1 - q0,
        Some(SigmaCase::Large) => q0 + h1 - h0 - h2,
        Some(SigmaCase::AboveH0) => h1 - h0,
        Some(SigmaCase::AboveH2) => h1 - h2,
    }
}

/// All images of `f` under `<psi1, psi2, psi3>`, sorted.
pub fn h_orbit(f: &SixTuple) -> Vec<SixTuple> {
    let mut seen = BTreeSet::from([*f]);
    let mut stack = vec![*f];
    while let Some(g) = stack.pop() {
        for next in [psi1(&g), psi2(&g), psi3(&g)] {
            if seen.insert(next) {
                stack.push(next);
            }
        }
    }
    seen.into_iter().collect()
}

fn in_pm(q: i64, target: i64, modulus: i64) -> bool {
    q == target || q == (-target).rem_euclid(modulus)
}

/// `-q` represented in `{1, ..., m}`.
fn neg_upper(q: i64, m: i64) -> i64 {
    m - q
}

/// Conditions (b) to (i) of the canonical form, each read as "premise
/// implies bound". Upper bounds `-q` are taken in `{1, ..., 2l}`; the
/// equalities `q = +-q'` use least non-negative residues.
pub fn canonical_conditions(f: &SixTuple) -> [bool; 8] {
    let ([h0, h1, h2], [q0, q1, q2]) = (f.h(), f.q());
    let l = [f.half_modulus(0), f.half_modulus(1), f.half_modulus(2)];
    let m = [f.modulus(0), f.modulus(1), f.modulus(2)];
    let q0_flat = q0 == 0 || q0 == l[0];
    let q1_flat = q1 == 0 || q1 == l[1];
    // m[0] = m[2] when h0 = h1, and m[0] = m[1] when h1 = h2
    [
        q0 <= l[0],
        !q0_flat || q1 <= l[1],
        !(q0_flat && q1_flat) || q2 <= l[2],
        h0 != h1 || (q0 <= q2 && q2 <= neg_upper(q0, m[0])),
        !(h0 == h1 && in_pm(q2, q0, m[2])) || q1 <= h1,
        h1 != h2 || (q0 <= q1 && q1 <= neg_upper(q0, m[0])),
        !(h1 == h2 && in_pm(q1, q0, m[1])) || q2 <= h2,
        !(h0 == h1 && h1 == h2) || q1 <= q2,
    ]
}

fn sorted_h(f: &SixTuple) -> bool {
    let h = f.h();
    h[0] <= h[1] && h[1] <= h[2]
}

/// Condition (a) together with all of (b) to (i).
pub fn satisfies_canonical_conditions(f: &SixTuple) -> bool {
    sorted_h(f) && canonical_conditions(f).iter().all(|&c| c)
}

/// A canonical representative together with how it was chosen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub tuple: SixTuple,
    /// Members left by the condition chain.
    pub matches: usize,
    /// Members satisfying every condition at once.
    pub simultaneous: usize,
}

impl CanonicalForm {
    /// True when the chain failed to isolate one member and the least
    /// remaining member was taken.
    pub fn is_fallback(&self) -> bool {
        self.matches != 1
    }
}

/// Picks the canonical member of an orbit given as a list.
///
/// Members with sorted `h` are filtered by (b) to (i) in turn; a condition
/// that no remaining member satisfies is skipped. The least survivor is
/// returned. If no member has sorted `h` the least member is returned with
/// `matches = 0`.
pub fn select_canonical(members: &[SixTuple]) -> CanonicalForm {
    let simultaneous = members
        .iter()
        .filter(|g| satisfies_canonical_conditions(g))
        .count();
    let mut left: Vec<(SixTuple, [bool; 8])> = members
        .iter()
        .filter(|g| sorted_h(g))
        .map(|g| (*g, canonical_conditions(g)))
        .collect();
    if left.is_empty() {
        let tuple = *members.iter().min().expect("orbit is never empty");
        return CanonicalForm {
            tuple,
            matches: 0,
            simultaneous,
        };
    }
    for k in 0..8 {
        if left.iter().any(|(_, c)| c[k]) {
            left.retain(|(_, c)| c[k]);
        }
    }
    let tuple = left.iter().map(|(g, _)| *g).min().expect("non-empty");
    CanonicalForm {
        tuple,
        matches: left.len(),
        simultaneous,
    }
}

pub fn canonical_report(f: &SixTuple) -> CanonicalForm {
    select_canonical(&h_orbit(f))
}

/// The canonical representative of the H-orbit of `f`.
pub fn canonical(f: &SixTuple) -> SixTuple {
    canonical_report(f).tuple
}

/// Whether `g` lies in the H-orbit of `f`.
pub fn h_equivalent(f: &SixTuple, g: &SixTuple) -> bool {
    f.h().iter().sum::<i64>() == g.h().iter().sum::<i64>() && h_orbit(f).binary_search(g).is_ok()
}

/// Neighbours of `f` in the graph of canonical tuples linked by `sigma`:
/// the distinct canonical forms of `sigma(psi1^i(f))`, other than `f`'s own.
pub fn sigma_neighbors(f: &SixTuple) -> Vec<SixTuple> {
    let own = canonical(f);
    let mut out: Vec<SixTuple> = (0..3)
        .filter_map(|i| sigma_unchecked(&psi1_pow(f, i)).ok())
        .map(|g| canonical(&g))
        .filter(|g| *g != own)
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}
