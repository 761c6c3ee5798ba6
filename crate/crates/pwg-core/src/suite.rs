//! The exhaustive cross-validation sweep: every right action of every
//! group of small order on small point sets (up to isomorphism), with
//! every linear-algebra verdict checked against its combinatorial
//! oracle, plus the fibred assemblies and the covering battery.
//!
//! Each instance produces a deterministic one-line summary; a parallel
//! driver (behind the `parallel` feature) must produce byte-identical
//! output to the sequential one.

use crate::classical::{
    composite_factorization, covering_regularity_check, freeness_oracle, function_hopf,
    group_algebra, gset_coaction, shear_intertwiner, CoveringData, FiniteGroup, GSet,
};
use crate::comodule::{conditional_expectation, invariants};
use crate::error::Result;
use crate::fibred::{assemble_from_fibers, fibred_pwg_check};
use crate::galois::{
    default_monoidal_family, monoidal_check, principality_check,
    surjectivity_implies_bijectivity_crosscheck,
};
use crate::hopf::{dual_hopf, haar_integral, verify_hopf};
use crate::linalg::{basis_vec, LinMap, Subspace};
use crate::scalar::{FieldSpec, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub field: FieldSpec,
    pub max_group_order: usize,
    pub max_points: usize,
    pub fibred_max_fibers: usize,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> SuiteConfig {
        SuiteConfig {
            field: FieldSpec::Rationals,
            max_group_order: 6,
            max_points: 8,
            fibred_max_fibers: 4,
            seed: 0,
        }
    }
}

/// True when cosemisimplicity fails for the function Hopf algebra of
/// a group of order `n`, which suspends the checks that lean on
/// averaging.
fn bad_characteristic(field: FieldSpec, n: usize) -> bool {
    let p = field.characteristic();
    p != 0 && (n as u64) % p == 0
}

/// Per-criterion tallies; every disagreement counter must be zero on a
/// passing run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SuiteCounters {
    pub groups: usize,
    pub actions: usize,
    pub free_actions: usize,
    /// freeness oracle vs canonical-map bijectivity
    pub freeness_disagreements: usize,
    /// lifted-rank / bijectivity / monoidal-family three-way agreement
    pub three_way_disagreements: usize,
    /// strong-connection feasibility vs principality
    pub connection_disagreements: usize,
    /// composite factorization failures on free instances
    pub composite_failures: usize,
    pub fibred_assemblies: usize,
    pub fibred_violations: usize,
    pub coverings: usize,
    pub covering_violations: usize,
    /// surjective-but-not-injective canonical maps in characteristic 0
    pub schneider_violations: usize,
    /// Hopf/coaction axiom checks, Haar closed forms, conditional
    /// expectation identities
    pub axiom_failures: usize,
    pub selfcheck_failures: usize,
    /// Checks suspended because the characteristic divides a group or
    /// fiber order; reported, never counted as failures.
    pub skipped_checks: usize,
}

impl SuiteCounters {
    pub fn all_clear(&self) -> bool {
        self.violations() == 0
    }

    fn absorb(&mut self, other: &SuiteCounters) {
        self.groups += other.groups;
        self.actions += other.actions;
        self.free_actions += other.free_actions;
        self.freeness_disagreements += other.freeness_disagreements;
        self.three_way_disagreements += other.three_way_disagreements;
        self.connection_disagreements += other.connection_disagreements;
        self.composite_failures += other.composite_failures;
        self.fibred_assemblies += other.fibred_assemblies;
        self.fibred_violations += other.fibred_violations;
        self.coverings += other.coverings;
        self.covering_violations += other.covering_violations;
        self.schneider_violations += other.schneider_violations;
        self.axiom_failures += other.axiom_failures;
        self.selfcheck_failures += other.selfcheck_failures;
        self.skipped_checks += other.skipped_checks;
    }

    pub fn violations(&self) -> usize {
        self.freeness_disagreements
            + self.three_way_disagreements
            + self.connection_disagreements
            + self.composite_failures
            + self.fibred_violations
            + self.covering_violations
            + self.schneider_violations
            + self.axiom_failures
            + self.selfcheck_failures
    }
}

#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub counters: SuiteCounters,
    pub lines: Vec<String>,
    pub failures: Vec<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.counters.all_clear()
    }
}

/// All groups of order up to the bound, one per isomorphism class:
/// cyclic groups, the Klein four-group, and the symmetric group on
/// three letters cover everything through order 6.
pub fn sweep_groups(max_order: usize) -> Vec<FiniteGroup> {
    let mut out = Vec::new();
    for n in 1..=max_order.min(6) {
        out.push(FiniteGroup::cyclic(n));
        if n == 4 {
            out.push(FiniteGroup::product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)));
        }
        if n == 6 {
            out.push(FiniteGroup::symmetric(3));
        }
    }
    out
}

/// The transitive right actions of a group, one per conjugacy class of
/// subgroups, labelled by point count with a letter to split ties.
pub fn transitive_actions(group: &FiniteGroup) -> Vec<(String, GSet)> {
    let classes = group.subgroup_conjugacy_classes();
    let mut by_size: std::collections::BTreeMap<usize, usize> = std::collections::BTreeMap::new();
    let mut out = Vec::new();
    for class in &classes {
        let act = group.coset_action(&class[0]);
        let n = act.points;
        let seen = by_size.entry(n).or_insert(0);
        let label = if classes
            .iter()
            .filter(|c| group.order / c[0].len() == n)
            .count()
            > 1
        {
            format!("{}{}", n, (b'a' + *seen as u8) as char)
        } else {
            format!("{n}")
        };
        *seen += 1;
        out.push((label, act));
    }
    out
}

/// Every action on at most `max_points` points up to isomorphism: a
/// multiset of transitive pieces.
pub fn action_instances(group: &FiniteGroup, max_points: usize) -> Vec<(String, GSet)> {
    let pool = transitive_actions(group);
    let mut out = Vec::new();
    let mut counts = vec![0usize; pool.len()];
    fn rec(
        pool: &[(String, GSet)],
        k: usize,
        budget: usize,
        counts: &mut Vec<usize>,
        out: &mut Vec<(String, GSet)>,
        group_name: &str,
    ) {
        if k == pool.len() {
            if counts.iter().any(|&c| c > 0) {
                let mut parts = Vec::new();
                let mut gset: Option<GSet> = None;
                for (i, &c) in counts.iter().enumerate() {
                    for _ in 0..c {
                        parts.push(pool[i].0.clone());
                        gset = Some(match gset {
                            None => pool[i].1.clone(),
                            Some(g) => g.disjoint_union(&pool[i].1),
                        });
                    }
                }
                out.push((format!("{}[{}]", group_name, parts.join("+")), gset.unwrap()));
            }
            return;
        }
        let size = pool[k].1.points;
        let mut c = 0;
        while c * size <= budget {
            counts[k] = c;
            rec(pool, k + 1, budget - c * size, counts, out, group_name);
            c += 1;
        }
        counts[k] = 0;
    }
    rec(&pool, 0, max_points, &mut counts, &mut out, &group.name);
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// Structural checks run once per group: both Hopf constructions
/// verify, duality between them is exact, the Haar functionals match
/// their closed forms, and the shear intertwiner certifies.
fn note(ok: bool, msg: String, counters: &mut SuiteCounters, failures: &mut Vec<String>) {
    if !ok {
        counters.axiom_failures += 1;
        failures.push(msg);
    }
}

fn run_group_checks(field: FieldSpec, group: &FiniteGroup) -> (SuiteCounters, String, Vec<String>) {
    let mut counters = SuiteCounters { groups: 1, ..Default::default() };
    let mut failures = Vec::new();

    let fh = function_hopf(field, group);
    let ga = group_algebra(field, group);
    let fh_rep = verify_hopf(&fh);
    let ga_rep = verify_hopf(&ga);
    note(fh_rep.all_passed(), format!("{}: function Hopf axioms: {}", group.name, fh_rep.failed_names().join(",")), &mut counters, &mut failures);
    note(ga_rep.all_passed(), format!("{}: group algebra axioms: {}", group.name, ga_rep.failed_names().join(",")), &mut counters, &mut failures);
    note(
        &dual_hopf(&fh) == ga.as_ref(),
        format!("{}: dual of functions is not the group algebra", group.name),
        &mut counters,
        &mut failures,
    );
    note(
        &dual_hopf(&ga) == fh.as_ref(),
        format!("{}: dual of the group algebra is not the function Hopf", group.name),
        &mut counters,
        &mut failures,
    );

    let n = group.order;
    let haar_note = if bad_characteristic(field, n) {
        counters.skipped_checks += 1;
        " haar=skip(characteristic divides order)"
    } else {
        let haar_fh = haar_integral(&fh);
        let uniform_ok = haar_fh.exists
            && !haar_fh.non_unique()
            && haar_fh.functional.as_ref().is_some_and(|phi| {
                let expect = field.inv_integer(n as u64).unwrap();
                (0..n).all(|g| phi.apply(&basis_vec(field, n, g)) == expect)
            });
        note(uniform_ok, format!("{}: Haar on functions is not uniform", group.name), &mut counters, &mut failures);
        let haar_ga = haar_integral(&ga);
        let point_ok = haar_ga.exists
            && !haar_ga.non_unique()
            && haar_ga.functional.as_ref().is_some_and(|phi| {
                (0..n).all(|g| {
                    let v = phi.apply(&basis_vec(field, n, g));
                    if g == group.identity { v.is_one() } else { v.is_zero() }
                })
            });
        note(point_ok, format!("{}: Haar on the group algebra is not the identity coefficient", group.name), &mut counters, &mut failures);
        ""
    };

    match shear_intertwiner(field, group) {
        Ok((_, rep)) => note(rep.all_passed(), format!("{}: shear certificate: {}", group.name, rep.failed_names().join(",")), &mut counters, &mut failures),
        Err(e) => note(false, format!("{}: shear construction: {e}", group.name), &mut counters, &mut failures),
    }

    let line = format!(
        "group {}: axioms={}{}",
        group.name,
        if counters.axiom_failures == 0 { "ok" } else { "FAIL" },
        haar_note
    );
    (counters, line, failures)
}

/// The full battery on one action instance.
fn run_action_instance(
    field: FieldSpec,
    group: &FiniteGroup,
    name: &str,
    gset: &GSet,
) -> (SuiteCounters, String, Vec<String>) {
    let averaging_ok = !bad_characteristic(field, group.order);
    let mut counters = SuiteCounters { actions: 1, ..Default::default() };
    let mut failures = Vec::new();

    let outcome = (|| -> Result<(bool, bool, String)> {
        let c = gset_coaction(field, group, gset)?;
        let coaction_axioms = crate::comodule::verify_coaction(&c);
        if !coaction_axioms.all_passed() {
            counters.axiom_failures += 1;
            failures.push(format!("{name}: coaction axioms: {}", coaction_axioms.failed_names().join(",")));
        }
        let free = freeness_oracle(gset, group);
        if free {
            counters.free_actions += 1;
        }

        let can = crate::galois::canonical_map(&c, None)?;
        if !can.well_defined {
            counters.axiom_failures += 1;
            failures.push(format!("{name}: canonical map not well defined over invariants"));
        }
        if can.bijective != free {
            counters.freeness_disagreements += 1;
            failures.push(format!(
                "{name}: freeness oracle says {free}, canonical map rank {}/{}x{}",
                can.rank, can.domain_dim, can.codomain_dim
            ));
        }

        // The lifted-rank criterion is dimension counting and holds
        // over every field; the comodule-family criterion leans on
        // cosemisimplicity and is suspended in bad characteristic.
        if can.lifted_surjective != can.bijective {
            counters.three_way_disagreements += 1;
            failures.push(format!(
                "{name}: lifted_surjective={} bijective={}",
                can.lifted_surjective, can.bijective
            ));
        }
        let beta_note = if averaging_ok {
            let fam = default_monoidal_family(&c)?;
            let (betas_all, _) = monoidal_check(&c, &fam)?;
            if betas_all != can.bijective {
                counters.three_way_disagreements += 1;
                failures.push(format!(
                    "{name}: betas={} bijective={}",
                    betas_all, can.bijective
                ));
            }
            ""
        } else {
            counters.skipped_checks += 1;
            " betas=skip"
        };

        let princ = principality_check(&c)?;
        if !princ.agreement || princ.principal != can.bijective {
            counters.connection_disagreements += 1;
            failures.push(format!(
                "{name}: principal={} connection={} can={}",
                princ.principal, princ.connection_exists, can.bijective
            ));
        }

        let schneider = surjectivity_implies_bijectivity_crosscheck(&c)?;
        if !schneider.consistent {
            counters.schneider_violations += 1;
            failures.push(format!("{name}: surjective canonical map failed injectivity"));
        }
        if !schneider.applicable {
            counters.skipped_checks += 1;
        }

        let comp = composite_factorization(field, group, gset)?;
        if free {
            if !(comp.applicable && comp.equals_canonical_lift) {
                counters.composite_failures += 1;
                failures.push(format!("{name}: composite factorization: {}", comp.report.failed_names().join(",")));
            }
        } else if comp.applicable || comp.notice.is_none() {
            counters.composite_failures += 1;
            failures.push(format!("{name}: non-free instance was not turned away"));
        }

        // Conditional expectation onto the invariants; needs the Haar
        // functional, hence the same characteristic gate.
        let expectation_note = if averaging_ok {
            match haar_integral(&c.hopf).functional {
                Some(phi) => {
                    let e = conditional_expectation(&c, &phi);
                    let inv = invariants(&c).subspace;
                    let idem = e.compose(&e)? == e;
                    let image_cols: Vec<Vec<Scalar>> = (0..c.dim())
                        .map(|j| e.apply(&basis_vec(field, c.dim(), j)).unwrap())
                        .collect();
                    let image = Subspace::span(field, c.dim(), &image_cols);
                    let fixes_base = inv.basis().iter().all(|b| e.apply(b).unwrap() == *b);
                    if !(idem && image.equals(&inv) && fixes_base) {
                        counters.axiom_failures += 1;
                        failures.push(format!(
                            "{name}: conditional expectation: idempotent={idem} image_is_invariants={} fixes_base={fixes_base}",
                            image.equals(&inv)
                        ));
                    }
                }
                None => {
                    counters.axiom_failures += 1;
                    failures.push(format!(
                        "{name}: Haar functional missing though the characteristic does not divide the order"
                    ));
                }
            }
            ""
        } else {
            counters.skipped_checks += 1;
            " expectation=skip"
        };

        Ok((
            free,
            can.bijective,
            format!("rank {}/{}{}{}", can.rank, can.codomain_dim, beta_note, expectation_note),
        ))
    })();

    let line = match outcome {
        Ok((free, bij, rank)) => format!(
            "action {name}: free={free} can={} {}",
            if bij { "bijective" } else { "degenerate" },
            rank
        ),
        Err(e) => {
            counters.axiom_failures += 1;
            failures.push(format!("{name}: {e}"));
            format!("action {name}: ERROR")
        }
    };
    (counters, line, failures)
}

/// Multisets of transitive actions assembled as fibred coactions; the
/// fibrewise decomposition theorem is checked on each.
pub fn fibred_instances(group: &FiniteGroup, cfg: &SuiteConfig) -> Vec<(String, Vec<GSet>)> {
    let pool = transitive_actions(group);
    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    fn rec(
        pool: &[(String, GSet)],
        start: usize,
        budget_points: usize,
        budget_fibers: usize,
        stack: &mut Vec<usize>,
        out: &mut Vec<(String, Vec<GSet>)>,
        group_name: &str,
    ) {
        if stack.len() >= 2 {
            let parts: Vec<String> = stack.iter().map(|&i| pool[i].0.clone()).collect();
            let gsets: Vec<GSet> = stack.iter().map(|&i| pool[i].1.clone()).collect();
            out.push((format!("{}<{}>", group_name, parts.join("|")), gsets));
        }
        if stack.len() == budget_fibers {
            return;
        }
        for i in start..pool.len() {
            let pts = pool[i].1.points;
            if pts > budget_points {
                continue;
            }
            stack.push(i);
            rec(pool, i, budget_points - pts, budget_fibers, stack, out, group_name);
            stack.pop();
        }
    }
    rec(&pool, 0, cfg.max_points, cfg.fibred_max_fibers, &mut stack, &mut out, &group.name);
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

fn run_fibred_instance(
    field: FieldSpec,
    group: &FiniteGroup,
    name: &str,
    fibers: &[GSet],
) -> (SuiteCounters, String, Vec<String>) {
    let mut counters = SuiteCounters { fibred_assemblies: 1, ..Default::default() };
    let mut failures = Vec::new();
    let outcome = (|| -> Result<bool> {
        let hopf = function_hopf(field, group);
        let coactions: Result<Vec<_>> =
            fibers.iter().map(|g| gset_coaction(field, group, g)).collect();
        let fc = assemble_from_fibers(hopf, &coactions?)?;
        let rep = fibred_pwg_check(&fc)?;
        let ok = rep.structure.all_passed()
            && rep.equivalence_holds
            && rep.diagram_commutes
            && rep.dimensions_add_up;
        if !ok {
            counters.fibred_violations += 1;
            failures.push(format!(
                "{name}: structure={} equivalence={} diagram={} dims={}",
                rep.structure.all_passed(),
                rep.equivalence_holds,
                rep.diagram_commutes,
                rep.dimensions_add_up
            ));
        }
        // The union action gives an independent combinatorial verdict.
        let union = fibers
            .iter()
            .skip(1)
            .fold(fibers[0].clone(), |acc, g| acc.disjoint_union(g));
        if rep.globally_free() != freeness_oracle(&union, group) {
            counters.fibred_violations += 1;
            failures.push(format!("{name}: global verdict disagrees with the union oracle"));
        }
        Ok(rep.globally_free())
    })();
    let line = match outcome {
        Ok(free) => format!("fibred {name}: globally_free={free}"),
        Err(e) => {
            counters.fibred_violations += 1;
            failures.push(format!("{name}: {e}"));
            format!("fibred {name}: ERROR")
        }
    };
    (counters, line, failures)
}

/// The covering battery: regular and irregular covers with explicit
/// deck groups, at least twenty in total.
pub fn covering_battery() -> Vec<CoveringData> {
    let mut out = Vec::new();

    // Trivial coverings: identity projections with a trivial deck.
    for n in 1..=2 {
        out.push(CoveringData {
            name: format!("trivial-{n}"),
            total: n,
            base_points: n,
            projection: (0..n).collect(),
            deck: FiniteGroup::cyclic(1),
            deck_maps: vec![(0..n).collect()],
        });
    }

    // Regular covers: each group over a single point, acting on itself
    // by left translation.
    for group in sweep_groups(6) {
        if group.order == 1 {
            continue;
        }
        let deck_maps = (0..group.order)
            .map(|g| (0..group.order).map(|x| group.mult[g][x]).collect())
            .collect();
        out.push(CoveringData {
            name: format!("{}-regular", group.name),
            total: group.order,
            base_points: 1,
            projection: vec![0; group.order],
            deck: group.clone(),
            deck_maps,
        });
    }

    // The same regular covers doubled over two base points.
    for g in [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3)] {
        let n = g.order;
        let mut deck_maps = Vec::new();
        for a in 0..n {
            let mut m: Vec<usize> = (0..n).map(|x| g.mult[a][x]).collect();
            m.extend((0..n).map(|x| n + g.mult[a][x]));
            deck_maps.push(m);
        }
        let mut projection = vec![0; n];
        projection.extend(vec![1; n]);
        out.push(CoveringData {
            name: format!("{}-regular-doubled", g.name),
            total: 2 * n,
            base_points: 2,
            projection,
            deck: g.clone(),
            deck_maps,
        });
    }

    // Irregular: deck too small to act transitively on the fiber.
    out.push(CoveringData {
        name: "z2-irregular-3".into(),
        total: 3,
        base_points: 1,
        projection: vec![0, 0, 0],
        deck: FiniteGroup::cyclic(2),
        deck_maps: vec![vec![0, 1, 2], vec![1, 0, 2]],
    });
    out.push(CoveringData {
        name: "z2-irregular-4".into(),
        total: 4,
        base_points: 1,
        projection: vec![0, 0, 0, 0],
        deck: FiniteGroup::cyclic(2),
        deck_maps: vec![vec![0, 1, 2, 3], vec![1, 0, 2, 3]],
    });

    // Irregular: deck transitive on the fiber but not free.
    let s3 = FiniteGroup::symmetric(3);
    let perms = s3_permutations();
    out.push(CoveringData {
        name: "s3-irregular-3".into(),
        total: 3,
        base_points: 1,
        projection: vec![0, 0, 0],
        deck: s3.clone(),
        deck_maps: perms.clone(),
    });

    // Irregular: regular on one fiber, forced-trivial on a singleton.
    let c3 = FiniteGroup::cyclic(3);
    out.push(CoveringData {
        name: "z3-mixed-fibers".into(),
        total: 4,
        base_points: 2,
        projection: vec![0, 0, 0, 1],
        deck: c3.clone(),
        deck_maps: (0..3)
            .map(|a| {
                let mut m: Vec<usize> = (0..3).map(|x| c3.mult[a][x]).collect();
                m.push(3);
                m
            })
            .collect(),
    });

    // Deck acting freely but intransitively: two orbits in one fiber.
    let c2 = FiniteGroup::cyclic(2);
    out.push(CoveringData {
        name: "z2-two-orbits".into(),
        total: 4,
        base_points: 1,
        projection: vec![0; 4],
        deck: c2.clone(),
        deck_maps: vec![vec![0, 1, 2, 3], vec![1, 0, 3, 2]],
    });

    // A regular 2-sheet cover over a 3-point base.
    let mut deck_maps = Vec::new();
    deck_maps.push((0..6).collect());
    deck_maps.push(vec![1, 0, 3, 2, 5, 4]);
    out.push(CoveringData {
        name: "z2-regular-over-3".into(),
        total: 6,
        base_points: 3,
        projection: vec![0, 0, 1, 1, 2, 2],
        deck: c2.clone(),
        deck_maps,
    });

    // A regular 3-sheet cover over a 3-point base.
    out.push(CoveringData {
        name: "z3-regular-tripled".into(),
        total: 9,
        base_points: 3,
        projection: vec![0, 0, 0, 1, 1, 1, 2, 2, 2],
        deck: c3.clone(),
        deck_maps: (0..3)
            .map(|a| {
                (0..9)
                    .map(|x| 3 * (x / 3) + c3.mult[a][x % 3])
                    .collect()
            })
            .collect(),
    });

    // Decks acting through proper quotients: transitive but not free.
    let v4 = FiniteGroup::product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
    out.push(CoveringData {
        name: "v4-through-quotient".into(),
        total: 2,
        base_points: 1,
        projection: vec![0, 0],
        deck: v4.clone(),
        deck_maps: vec![vec![0, 1], vec![0, 1], vec![1, 0], vec![1, 0]],
    });
    let c4 = FiniteGroup::cyclic(4);
    out.push(CoveringData {
        name: "c4-through-quotient".into(),
        total: 2,
        base_points: 1,
        projection: vec![0, 0],
        deck: c4.clone(),
        deck_maps: (0..4).map(|g| if g % 2 == 0 { vec![0, 1] } else { vec![1, 0] }).collect(),
    });

    // A deck fixing every sheet: neither free nor transitive.
    out.push(CoveringData {
        name: "z2-fixed-sheets".into(),
        total: 2,
        base_points: 1,
        projection: vec![0, 0],
        deck: c2.clone(),
        deck_maps: vec![vec![0, 1], vec![0, 1]],
    });

    out
}

fn s3_permutations() -> Vec<Vec<usize>> {
    // Matches the element order of FiniteGroup::symmetric(3):
    // lexicographically sorted permutation tables acting as functions.
    let mut perms: Vec<Vec<usize>> = vec![
        vec![0, 1, 2],
        vec![0, 2, 1],
        vec![1, 0, 2],
        vec![1, 2, 0],
        vec![2, 0, 1],
        vec![2, 1, 0],
    ];
    perms.sort();
    perms
}

fn run_covering_instance(field: FieldSpec, cov: &CoveringData) -> (SuiteCounters, String, Vec<String>) {
    let mut counters = SuiteCounters { coverings: 1, ..Default::default() };
    let mut failures = Vec::new();
    let line = match covering_regularity_check(field, cov) {
        Ok(rep) => {
            if !rep.verdicts_agree {
                counters.covering_violations += 1;
                failures.push(format!(
                    "{}: combinatorial regularity {} vs canonical map {}",
                    cov.name, rep.regular_combinatorial, rep.regular_galois
                ));
            }
            // Whenever the canonical map is bijective the invariants
            // must be exactly the pullbacks; decided by averaging, so
            // absent in bad characteristic.
            let note = if rep.invariants_are_pullbacks.is_none() {
                counters.skipped_checks += 1;
                " invariants=skip"
            } else {
                if rep.regular_galois && rep.invariants_are_pullbacks != Some(true) {
                    counters.covering_violations += 1;
                    failures.push(format!(
                        "{}: invariants are not the pullbacks on a regular cover",
                        cov.name
                    ));
                }
                ""
            };
            format!("covering {}: regular={}{note}", cov.name, rep.regular_combinatorial)
        }
        Err(e) => {
            counters.covering_violations += 1;
            failures.push(format!("{}: {e}", cov.name));
            format!("covering {}: ERROR", cov.name)
        }
    };
    (counters, line, failures)
}

/// Randomized exact-arithmetic self-check, seeded for reproducibility.
fn run_selfcheck(field: FieldSpec, seed: u64) -> (SuiteCounters, String, Vec<String>) {
    let mut counters = SuiteCounters::default();
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..16 {
        let rows = rng.gen_range(1..=5);
        let cols = rng.gen_range(1..=5);
        let data: Vec<Vec<Scalar>> = (0..rows)
            .map(|_| (0..cols).map(|_| field.integer(rng.gen_range(-3..=3))).collect())
            .collect();
        let m = LinMap::from_dense(field, &data);
        if m.rank() != m.transpose().rank() {
            counters.selfcheck_failures += 1;
            failures.push(format!("selfcheck {trial}: rank differs from transpose rank"));
        }
        let v: Vec<Scalar> = (0..cols).map(|_| field.integer(rng.gen_range(-3..=3))).collect();
        let rhs = m.apply(&v).unwrap();
        match m.solve(&rhs).unwrap() {
            Some(x) => {
                if m.apply(&x).unwrap() != rhs {
                    counters.selfcheck_failures += 1;
                    failures.push(format!("selfcheck {trial}: solver residual is nonzero"));
                }
            }
            None => {
                counters.selfcheck_failures += 1;
                failures.push(format!("selfcheck {trial}: consistent system reported infeasible"));
            }
        }
    }
    let line = format!(
        "selfcheck seed={seed}: {}",
        if counters.selfcheck_failures == 0 { "ok" } else { "FAIL" }
    );
    (counters, line, failures)
}

enum Job {
    Group(FiniteGroup),
    Action(FiniteGroup, String, GSet),
    Fibred(FiniteGroup, String, Vec<GSet>),
    Covering(CoveringData),
    SelfCheck(u64),
}

fn build_jobs(cfg: &SuiteConfig) -> Vec<Job> {
    let mut jobs = Vec::new();
    for group in sweep_groups(cfg.max_group_order) {
        jobs.push(Job::Group(group.clone()));
        for (name, gset) in action_instances(&group, cfg.max_points) {
            jobs.push(Job::Action(group.clone(), name, gset));
        }
        for (name, fibers) in fibred_instances(&group, cfg) {
            jobs.push(Job::Fibred(group.clone(), name, fibers));
        }
    }
    for cov in covering_battery() {
        jobs.push(Job::Covering(cov));
    }
    jobs.push(Job::SelfCheck(cfg.seed));
    jobs
}

fn run_job(field: FieldSpec, job: &Job) -> (SuiteCounters, String, Vec<String>) {
    match job {
        Job::Group(g) => run_group_checks(field, g),
        Job::Action(g, name, gset) => run_action_instance(field, g, name, gset),
        Job::Fibred(g, name, fibers) => run_fibred_instance(field, g, name, fibers),
        Job::Covering(cov) => run_covering_instance(field, cov),
        Job::SelfCheck(seed) => run_selfcheck(field, *seed),
    }
}

fn collect(results: Vec<(SuiteCounters, String, Vec<String>)>) -> SuiteOutcome {
    let mut counters = SuiteCounters::default();
    let mut lines = Vec::new();
    let mut failures = Vec::new();
    for (c, line, fails) in results {
        counters.absorb(&c);
        lines.push(line);
        failures.extend(fails);
    }
    lines.push(format!(
        "summary: groups={} actions={} (free {}) fibred={} coverings={} skips={} violations={}",
        counters.groups,
        counters.actions,
        counters.free_actions,
        counters.fibred_assemblies,
        counters.coverings,
        counters.skipped_checks,
        counters.violations()
    ));
    SuiteOutcome { counters, lines, failures }
}

/// The sweep on a single thread; the canonical ordering.
pub fn run_suite_seq(cfg: &SuiteConfig) -> SuiteOutcome {
    let jobs = build_jobs(cfg);
    collect(jobs.iter().map(|j| run_job(cfg.field, j)).collect())
}

/// The sweep over a rayon pool; job order is restored before
/// aggregation so the output is identical to the sequential driver.
#[cfg(feature = "parallel")]
pub fn run_suite_par(cfg: &SuiteConfig) -> SuiteOutcome {
    use rayon::prelude::*;
    let jobs = build_jobs(cfg);
    collect(jobs.par_iter().map(|j| run_job(cfg.field, j)).collect())
}

/// Dispatches to the parallel driver when compiled in.
pub fn run_suite(cfg: &SuiteConfig) -> SuiteOutcome {
    #[cfg(feature = "parallel")]
    {
        run_suite_par(cfg)
    }
    #[cfg(not(feature = "parallel"))]
    {
        run_suite_seq(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_enumeration_is_complete_through_order_six() {
        let names: Vec<String> = sweep_groups(6).into_iter().map(|g| g.name).collect();
        assert_eq!(names, vec!["C1", "C2", "C3", "C4", "C2xC2", "C5", "C6", "S3"]);
    }

    #[test]
    fn transitive_labels_disambiguate() {
        let v4 = FiniteGroup::product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
        let labels: Vec<String> = transitive_actions(&v4).into_iter().map(|(l, _)| l).collect();
        assert_eq!(labels, vec!["4", "2a", "2b", "2c", "1"]);
    }

    #[test]
    fn instance_enumeration_counts() {
        let c2 = FiniteGroup::cyclic(2);
        // points {1,2}: multisets (a,b) with a+2b <= 4, nonempty
        let insts = action_instances(&c2, 4);
        assert_eq!(insts.len(), 8);
        let c1 = FiniteGroup::cyclic(1);
        assert_eq!(action_instances(&c1, 3).len(), 3);
    }

    #[test]
    fn covering_battery_is_large_enough() {
        let battery = covering_battery();
        assert!(battery.len() >= 20, "only {} coverings", battery.len());
        for cov in &battery {
            assert!(cov.verify().all_passed(), "{}", cov.name);
        }
        let names: Vec<&str> = battery.iter().map(|c| c.name.as_str()).collect();
        assert!(names.contains(&"trivial-1"));
        assert!(names.contains(&"C3-regular"));
        assert!(names.contains(&"z2-irregular-3"));
    }

    #[test]
    fn small_suite_passes_and_drivers_agree() {
        let cfg = SuiteConfig {
            max_group_order: 3,
            max_points: 3,
            fibred_max_fibers: 2,
            seed: 7,
            ..Default::default()
        };
        let seq = run_suite_seq(&cfg);
        assert!(seq.passed(), "failures: {:?}", seq.failures);
        assert!(seq.counters.actions > 0);
        assert!(seq.counters.fibred_assemblies > 0);
        assert_eq!(seq.counters.skipped_checks, 0);
        #[cfg(feature = "parallel")]
        {
            let par = run_suite_par(&cfg);
            assert_eq!(seq.lines, par.lines);
            assert_eq!(seq.counters, par.counters);
        }
    }

    #[test]
    fn bad_characteristic_checks_skip_instead_of_failing() {
        let cfg = SuiteConfig {
            field: FieldSpec::PrimeField(2),
            max_group_order: 2,
            max_points: 2,
            fibred_max_fibers: 2,
            seed: 0,
            ..Default::default()
        };
        let out = run_suite_seq(&cfg);
        assert!(out.passed(), "failures: {:?}", out.failures);
        assert!(out.counters.skipped_checks > 0);
        assert!(out.lines.iter().any(|l| l.contains("skip")));
    }
}
