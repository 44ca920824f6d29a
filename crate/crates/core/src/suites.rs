//! Batch verification over every admissible tuple up to a complexity bound.
//!
//! Each suite walks its tuples in parallel and collects failures in tuple
//! order, so reports are reproducible whatever the thread count.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::catalogue::{admissible_tuples, build_catalogue, enumerate_canonical, from_tsv, to_tsv};
use crate::gem::{
    cancel_block, cancel_block_by_dipoles, cp_isomorphic, cp_isomorphic_modulo, find_gluing_blocks,
    ColourSet, PAIR_SWAPS,
};
use crate::homology::{h1, h1_simplicial};
use crate::moves::{
    apply_psi, build_gf, canonical, canonical_report, delta, h_orbit, psi1, psi2, psi3,
    sigma_unchecked, verify_sigma_constructively,
};
use crate::orbits::{
    ascend_witness, explore, fails_genus_guard, is_trap, minimal_by_delta, minimal_closed_form,
    root_by_delta, root_closed_form,
};
use crate::tuple::{admissibility, build_graph, exchange_symmetry, is_admissible, SixTuple};

pub const SUITES: [&str; 8] = [
    "laws",
    "sigma-constructive",
    "homology-invariance",
    "minimality-agreement",
    "trap-closure",
    "genus-embedding",
    "canonical-uniqueness",
    "catalogue-smoke",
];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown suite `{0}` (expected one of: {list})", list = SUITES.join(", "))]
pub struct UnknownSuite(pub String);

#[derive(Clone, Debug, Default)]
pub struct SuiteReport {
    pub name: String,
    pub bound: i64,
    pub checked: usize,
    pub failures: Vec<String>,
    /// Informational lines that do not affect the outcome.
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str, bound: i64) -> Self {
        SuiteReport {
            name: name.to_string(),
            bound,
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn absorb(&mut self, per_tuple: Vec<Vec<String>>) {
        self.checked += per_tuple.len();
        self.failures.extend(per_tuple.into_iter().flatten());
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "suite {} (complexity <= {}): {} checked, {} failures",
            self.name,
            self.bound,
            self.checked,
            self.failures.len()
        )?;
        for line in &self.failures {
            writeln!(f, "FAIL\t{line}")?;
        }
        for line in &self.notes {
            writeln!(f, "note\t{line}")?;
        }
        write!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// Runs a suite at its default bound.
pub fn run_suite(name: &str) -> Result<SuiteReport, UnknownSuite> {
    let bound = match name {
        "sigma-constructive" => 11,
        "minimality-agreement" => 15,
        "catalogue-smoke" => 5,
        _ => 13,
    };
    run_suite_with_bound(name, bound)
}

pub fn run_suite_with_bound(name: &str, bound: i64) -> Result<SuiteReport, UnknownSuite> {
    Ok(match name {
        "laws" => laws(bound),
        "sigma-constructive" => sigma_constructive(bound),
        "homology-invariance" => homology_invariance(bound),
        "minimality-agreement" => minimality_agreement(bound),
        "trap-closure" => trap_closure(bound),
        "genus-embedding" => genus_embedding(bound),
        "canonical-uniqueness" => canonical_uniqueness(bound),
        "catalogue-smoke" => catalogue_smoke(bound),
        other => return Err(UnknownSuite(other.to_string())),
    })
}

fn check(out: &mut Vec<String>, ok: bool, f: &SixTuple, what: impl fmt::Display) {
    if !ok {
        out.push(format!("{f}\t{what}"));
    }
}

/// Relations between `sigma` and the `psi` maps.
pub fn laws(bound: i64) -> SuiteReport {
    let mut report = SuiteReport::new("laws", bound);
    let s = |g: &SixTuple| sigma_unchecked(g).expect("admissible tuples always fall in a case");
    let per: Vec<Vec<String>> = admissible_tuples(bound)
        .par_iter()
        .map(|f| {
            let mut out = Vec::new();
            check(&mut out, s(&s(f)) == *f, f, "sigma^2 != id");
            check(
                &mut out,
                s(&psi2(f)) == psi2(&s(f)),
                f,
                "sigma psi2 != psi2 sigma",
            );
            check(
                &mut out,
                s(&psi3(f)) == psi3(&s(f)),
                f,
                "sigma psi3 != psi3 sigma",
            );
            check(&mut out, psi1(&psi1(&psi1(f))) == *f, f, "psi1^3 != id");
            check(&mut out, psi2(&psi2(f)) == *f, f, "psi2^2 != id");
            check(&mut out, psi3(&psi3(f)) == *f, f, "psi3^2 != id");
            check(
                &mut out,
                psi1(&psi2(f)) == psi2(&psi1(&psi1(f))),
                f,
                "psi1 psi2 != psi2 psi1^2",
            );
            out
        })
        .collect();
    report.absorb(per);
    report
}

/// The block surgery realising `sigma`, for every admissible tuple with `q0 != 0`.
pub fn sigma_constructive(bound: i64) -> SuiteReport {
    let mut report = SuiteReport::new("sigma-constructive", bound);
    let tuples: Vec<SixTuple> = admissible_tuples(bound)
        .into_iter()
        .filter(|f| f.q()[0] != 0)
        .collect();
    let per: Vec<(Vec<String>, [bool; 3])> = tuples
        .par_iter()
        .map(|f| match verify_sigma_constructively(f) {
            Ok(r) => {
                let mut out = Vec::new();
                check(
                    &mut out,
                    r.table_matches(),
                    f,
                    format!("table {} measured {}", r.expected, r.measured),
                );
                check(
                    &mut out,
                    r.theta_gives_sigma,
                    f,
                    format!("cancelling Theta is not Gamma({})", r.sigma),
                );
                check(
                    &mut out,
                    r.theta_prime_agrees,
                    f,
                    "cancelling Theta' differs",
                );
                check(
                    &mut out,
                    r.gamma_restores,
                    f,
                    "cancelling Gamma(h1) differs from Gamma(f)",
                );
                check(
                    &mut out,
                    r.gamma_prime_restores,
                    f,
                    "cancelling Gamma'(h1) differs from Gamma(f)",
                );
                check(&mut out, r.gamma_coherent, f, "Gamma(h1) not coherent");
                check(
                    &mut out,
                    r.read_back.contains(&r.sigma),
                    f,
                    "sigma(f) not read back",
                );
                (
                    out,
                    [
                        r.theta_gives_sigma_strict,
                        r.theta_prime_strict,
                        r.gamma_prime_strict,
                    ],
                )
            }
            Err(e) => (vec![format!("{f}\t{e}")], [true; 3]),
        })
        .collect();
    let strict: [usize; 3] = std::array::from_fn(|k| per.iter().filter(|(_, s)| !s[k]).count());
    report.absorb(per.into_iter().map(|(o, _)| o).collect());
    for (k, what) in [
        "cancelling Theta matches Gamma(sigma(f))",
        "Theta' agrees with Theta",
        "Gamma'(h1) restores Gamma(f)",
    ]
    .iter()
    .enumerate()
    {
        report.notes.push(format!(
            "{what} only after exchanging colours within {{0,1}} or {{2,3}} in {} cases",
            strict[k]
        ));
    }
    report
}

/// `H1` and complexity bookkeeping across `sigma` and the `psi` maps, both
/// homology routes, and block surgery on `G(f)` for small tuples.
pub fn homology_invariance(bound: i64) -> SuiteReport {
    let mut report = SuiteReport::new("homology-invariance", bound);
    let per: Vec<Vec<String>> = admissible_tuples(bound)
        .par_iter()
        .map(|f| {
            let mut out = Vec::new();
            let g = build_graph(f);
            let base = match h1(&g) {
                Ok(x) => x,
                Err(e) => return vec![format!("{f}\t{e}")],
            };
            check(
                &mut out,
                h1_simplicial(&g).as_ref() == Ok(&base),
                f,
                "homology routes disagree",
            );
            let s = sigma_unchecked(f).expect("admissible tuples always fall in a case");
            check(
                &mut out,
                is_admissible(&s),
                f,
                format!("sigma image {s} inadmissible"),
            );
            check(
                &mut out,
                s.complexity() == f.complexity() + delta(f),
                f,
                "complexity of sigma(f) != complexity + delta",
            );
            check(
                &mut out,
                h1(&build_graph(&s)).as_ref() == Ok(&base),
                f,
                format!("H1 changes under sigma to {s}"),
            );
            for k in 1..=3 {
                let p = apply_psi(k, f).expect("k in 1..=3");
                check(
                    &mut out,
                    is_admissible(&p),
                    f,
                    format!("psi{k} image inadmissible"),
                );
                check(
                    &mut out,
                    h1(&build_graph(&p)).as_ref() == Ok(&base),
                    f,
                    format!("H1 changes under psi{k}"),
                );
            }
            if f.complexity() <= 9 && f.q()[0] != 0 {
                surgery_homology(f, &base, &mut out);
            }
            out
        })
        .collect();
    report.absorb(per);
    report
        .notes
        .push("H1 agreement is necessary, not sufficient, for equal manifolds".to_string());
    report
}

fn surgery_homology(
    f: &SixTuple,
    base: &crate::homology::AbelianGroupSignature,
    out: &mut Vec<String>,
) {
    let trace = match build_gf(f) {
        Ok(t) => t,
        Err(e) => return out.push(format!("{f}\t{e}")),
    };
    check(
        out,
        h1(&trace.graph).as_ref() == Ok(base),
        f,
        "H1(G(f)) differs",
    );
    for r in [2, 3] {
        for b in find_gluing_blocks(&trace.graph, 0, 1, r) {
            let (Ok(direct), Ok(stepwise)) = (
                cancel_block(&trace.graph, &b),
                cancel_block_by_dipoles(&trace.graph, &b),
            ) else {
                out.push(format!("{f}\tblock cancellation failed"));
                continue;
            };
            check(
                out,
                cp_isomorphic(&direct, &stepwise).is_some(),
                f,
                "block and dipole cancellation differ",
            );
            check(
                out,
                h1(&direct).as_ref() == Ok(base),
                f,
                format!("H1 changes cancelling a colour-{r} block"),
            );
        }
    }
}

/// Closed-form minimality and root tests against the `delta` criteria.
pub fn minimality_agreement(bound: i64) -> SuiteReport {
    let mut report = SuiteReport::new("minimality-agreement", bound);
    let per: Vec<Vec<String>> = enumerate_canonical(bound)
        .par_iter()
        .map(|f| {
            let mut out = Vec::new();
            let (mc, md) = (minimal_closed_form(f), minimal_by_delta(f));
            check(
                &mut out,
                mc == md,
                f,
                format!("minimal: closed form {mc}, delta {md}"),
            );
            let (rc, rd) = (root_closed_form(f), root_by_delta(f));
            check(
                &mut out,
                rc == rd,
                f,
                format!("root: closed form {rc}, delta {rd}"),
            );
            check(&mut out, !rc || mc, f, "root but not minimal");
            out
        })
        .collect();
    report.absorb(per);
    report
}

/// Traps have closed orbits of traps of the same type; every other canonical
/// tuple passing the genus guard can be pushed up in complexity.
pub fn trap_closure(bound: i64) -> SuiteReport {
    let mut report = SuiteReport::new("trap-closure", bound);
    let tuples = enumerate_canonical(bound);
    let per: Vec<(Vec<String>, u8)> = tuples
        .par_iter()
        .map(|f| {
            let mut out = Vec::new();
            if let Some(w) = is_trap(f) {
                let orbit = explore(f, bound + 2 * f.complexity(), 10_000);
                check(
                    &mut out,
                    orbit.is_closed(),
                    f,
                    "trap orbit not closed within bounds",
                );
                for g in &orbit.nodes {
                    let same = is_trap(g).map(|x| x.trap_type()) == Some(w.trap_type());
                    check(
                        &mut out,
                        same,
                        f,
                        format!("orbit member {g} is not a trap of type {:?}", w.trap_type()),
                    );
                }
                (out, 0)
            } else if fails_genus_guard(f) {
                (out, 1)
            } else {
                match ascend_witness(f) {
                    Ok(w) => {
                        check(
                            &mut out,
                            delta(&w) > 0,
                            f,
                            format!("witness {w} has delta {}", delta(&w)),
                        );
                        check(
                            &mut out,
                            w.complexity() == f.complexity(),
                            f,
                            format!("witness {w} changes complexity"),
                        );
                    }
                    Err(e) => out.push(format!("{f}\t{e}")),
                }
                (out, 2)
            }
        })
        .collect();
    let counts: [usize; 3] =
        std::array::from_fn(|k| per.iter().filter(|(_, c)| *c as usize == k).count());
    report.absorb(per.into_iter().map(|(o, _)| o).collect());
    report.notes.push(format!(
        "{} traps, {} genus-guard tuples, {} ascents",
        counts[0], counts[1], counts[2]
    ));
    report
}

/// Structural facts about every graph: gem, contracted, bipartite, three
/// `{2,3}`-residues, a genus-two regular embedding, an automorphism exchanging
/// colours 2 and 3, and isomorphic graphs along H-orbits.
pub fn genus_embedding(bound: i64) -> SuiteReport {
    let mut report = SuiteReport::new("genus-embedding", bound);
    let per: Vec<(Vec<String>, usize)> = admissible_tuples(bound)
        .par_iter()
        .map(|f| {
            let mut out = Vec::new();
            let g = build_graph(f);
            check(&mut out, g.is_gem(), f, "not a gem");
            check(&mut out, g.is_contracted(), f, "not contracted");
            check(&mut out, g.is_bipartite(), f, "not bipartite");
            let r = g.residue_count(ColourSet::of(&[2, 3]));
            check(&mut out, r == 3, f, format!("{r} {{2,3}}-residues"));
            let chi = g.embedding_euler([0, 2, 1, 3]);
            check(
                &mut out,
                chi == -2,
                f,
                format!("embedding Euler characteristic {chi}"),
            );
            check(
                &mut out,
                exchange_symmetry(f).is_some(),
                f,
                "no automorphism exchanging colours 2 and 3",
            );
            let mut strict_misses = 0;
            for k in 1..=3 {
                let h = build_graph(&apply_psi(k, f).expect("k in 1..=3"));
                if cp_isomorphic(&g, &h).is_none() {
                    strict_misses += 1;
                    check(
                        &mut out,
                        cp_isomorphic_modulo(&g, &h, &PAIR_SWAPS).is_some(),
                        f,
                        format!("psi{k} graph not isomorphic"),
                    );
                }
            }
            (out, strict_misses)
        })
        .collect();
    let misses: usize = per.iter().map(|(_, m)| m).sum();
    report.absorb(per.into_iter().map(|(o, _)| o).collect());
    for w in ["(3,3,3;0,0,2)", "(1,1,3;0,0,0)"] {
        let f: SixTuple = w.parse().expect("literal");
        let r = admissibility(&f).residues_23;
        if r != 5 {
            report
                .failures
                .push(format!("{f}\texpected 5 {{2,3}}-residues, found {r}"));
        }
        report.checked += 1;
    }
    report.notes.push(format!(
        "{misses} psi images match only after exchanging colours within {{0,1}} or {{2,3}}"
    ));
    report
}

/// The canonical-form conditions isolate one member of every H-orbit.
/// Ambiguous orbits are listed as notes rather than failures.
pub fn canonical_uniqueness(bound: i64) -> SuiteReport {
    let mut report = SuiteReport::new("canonical-uniqueness", bound);
    let tuples = admissible_tuples(bound);
    let reps: BTreeSet<SixTuple> = tuples.par_iter().map(canonical).collect();
    let per: Vec<(Vec<String>, Option<String>, bool)> = reps
        .par_iter()
        .map(|f| {
            let mut out = Vec::new();
            let report = canonical_report(f);
            let skipped = report.simultaneous != 1;
            check(
                &mut out,
                report.tuple == *f,
                f,
                "canonical form not a fixed point",
            );
            for g in h_orbit(f) {
                check(
                    &mut out,
                    canonical(&g) == *f,
                    f,
                    format!("member {g} has another canonical form"),
                );
            }
            let note = report.is_fallback().then(|| {
                format!(
                    "{f}\tambiguous: {} members left by the conditions",
                    report.matches
                )
            });
            (out, note, skipped)
        })
        .collect();
    let ambiguous: Vec<String> = per.iter().filter_map(|(_, n, _)| n.clone()).collect();
    let skipped = per.iter().filter(|(_, _, s)| *s).count();
    report.absorb(per.into_iter().map(|(o, _, _)| o).collect());
    report.notes.push(format!(
        "{} H-orbits, {} ambiguous, {} where no single member meets every condition at once",
        reps.len(),
        ambiguous.len(),
        skipped
    ));
    report.notes.extend(ambiguous);
    report
}

/// Ambiguous H-orbits among admissible tuples up to `bound`.
pub fn ambiguous_orbits(bound: i64) -> Vec<SixTuple> {
    let reps: BTreeSet<SixTuple> = admissible_tuples(bound).par_iter().map(canonical).collect();
    reps.into_iter()
        .filter(|f| canonical_report(f).is_fallback())
        .collect()
}

/// The smallest catalogue, its TSV round trip, and its known records.
pub fn catalogue_smoke(bound: i64) -> SuiteReport {
    let mut report = SuiteReport::new("catalogue-smoke", bound);
    let got = enumerate_canonical(bound);
    if bound == 5 {
        let want: Vec<SixTuple> = ["(1,1,1;0,0,0)", "(1,1,3;0,0,2)", "(1,1,3;2,0,2)"]
            .iter()
            .map(|s| s.parse().expect("literal"))
            .collect();
        if got != want {
            report.failures.push(format!("enumeration gave {got:?}"));
        }
    }
    match build_catalogue(bound) {
        Ok(records) => {
            report.checked = records.len();
            let text = to_tsv(&records);
            if from_tsv(&text).ok().as_ref() != Some(&records) {
                report
                    .failures
                    .push("TSV round trip changed the records".to_string());
            }
            for r in &records {
                if r.root && !r.minimal {
                    report
                        .failures
                        .push(format!("{}\troot but not minimal", r.tuple));
                }
            }
        }
        Err(e) => report.failures.push(e.to_string()),
    }
    report
}
