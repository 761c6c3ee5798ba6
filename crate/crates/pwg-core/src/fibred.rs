//! Coactions fibred over a finite index set: a central unital algebra
//! map from functions on the index set singles out fiber ideals, the
//! coaction descends to every fiber, and the global freeness verdict
//! decomposes into the fiberwise verdicts with an explicit commuting
//! diagram at the matrix level.

use crate::comodule::{invariants, CoactionData};
use crate::error::{Error, Result};
use crate::galois::{canonical_map, canonical_map_lift, CanReport};
use crate::hopf::{AlgebraData, HopfData};
use crate::linalg::{basis_vec, quotient_by, LinMap, QuotientData, Subspace};
use crate::report::VerificationReport;
use crate::scalar::Scalar;
use std::sync::Arc;

/// A coaction together with a fibration of its algebra over
/// `base_points` indices: `theta` maps the pointwise function algebra
/// into the center, its component idempotents are coaction-invariant,
/// and they sum to the unit.
#[derive(Debug, Clone)]
pub struct FibredCoaction {
    pub coaction: CoactionData,
    pub base_points: usize,
    /// `F^{base_points} -> A`, columns are the images of the point
    /// indicators.
    pub theta: LinMap,
}

impl FibredCoaction {
    pub fn new(coaction: CoactionData, base_points: usize, theta: LinMap) -> Result<FibredCoaction> {
        let fc = FibredCoaction { coaction, base_points, theta };
        let rep = fc.verify()?;
        if !rep.all_passed() {
            return Err(Error::StructureInvalid {
                subject: "fibred coaction".into(),
                failed: rep.failed_names().join(", "),
            });
        }
        Ok(fc)
    }

    /// The image of the indicator of point `x`.
    pub fn idempotent(&self, x: usize) -> Vec<Scalar> {
        let field = self.coaction.field();
        self.theta.apply(&basis_vec(field, self.base_points, x)).unwrap()
    }

    pub fn verify(&self) -> Result<VerificationReport> {
        self.coaction.ensure_verified()?;
        let mut rep = VerificationReport::new("fibred structure");
        let field = self.coaction.field();
        let n = self.coaction.dim();
        if self.theta.rows() != n || self.theta.cols() != self.base_points {
            return Err(Error::DimensionMismatch(format!(
                "theta is {}x{}, expected {}x{}",
                self.theta.rows(),
                self.theta.cols(),
                n,
                self.base_points
            )));
        }
        let alg = &self.coaction.algebra;
        let idems: Vec<Vec<Scalar>> = (0..self.base_points).map(|x| self.idempotent(x)).collect();

        let mut orthogonal = true;
        for (x, ex) in idems.iter().enumerate() {
            for (y, ey) in idems.iter().enumerate() {
                let prod = alg.product(ex, ey);
                let expect = if x == y { ex.clone() } else { crate::linalg::zero_vec(field, n) };
                if prod != expect {
                    orthogonal = false;
                }
            }
        }
        rep.record("orthogonal idempotents", orthogonal, || {
            "theta is not multiplicative on indicators".into()
        });

        let mut total = crate::linalg::zero_vec(field, n);
        for ex in &idems {
            total = crate::linalg::vec_add(&total, ex);
        }
        rep.record("unital", total == alg.unit, || "indicators do not sum to the unit".into());

        let central = idems.iter().all(|ex| {
            let lm = alg.left_mult(ex);
            let rm = alg.right_mult(ex);
            lm == rm
        });
        rep.record("central", central, || "an indicator image is not central".into());

        let inv = invariants(&self.coaction).subspace;
        let invariant = idems.iter().all(|ex| inv.contains(ex));
        rep.record("coaction invariant", invariant, || {
            "an indicator image is moved by the coaction".into()
        });
        Ok(rep)
    }
}

/// The fiber ideal over `x`: the two-sided ideal generated by the
/// other indicators. Computed by saturating the generator span under
/// one-sided multiplications; the round count certifies termination.
pub struct FiberIdeal {
    pub subspace: Subspace,
    pub rounds: usize,
    pub report: VerificationReport,
}

pub fn fiber_ideal(fc: &FibredCoaction, x: usize) -> FiberIdeal {
    let field = fc.coaction.field();
    let n = fc.coaction.dim();
    let alg = &fc.coaction.algebra;
    let mut gens: Vec<Vec<Scalar>> = (0..fc.base_points)
        .filter(|&y| y != x)
        .map(|y| fc.idempotent(y))
        .collect();
    let mut span = Subspace::span(field, n, &gens);
    let mut rounds = 0;
    // Dimension strictly grows each productive round, so the loop ends
    // after at most dim A rounds.
    loop {
        rounds += 1;
        let mut grew = false;
        let mut new_gens = Vec::new();
        for g in span.basis() {
            for b in 0..n {
                let e = basis_vec(field, n, b);
                for v in [alg.product(g, &e), alg.product(&e, g)] {
                    if !span.contains(&v) {
                        new_gens.push(v);
                        grew = true;
                    }
                }
            }
        }
        if !grew || rounds > n {
            break;
        }
        gens.extend(new_gens);
        span = Subspace::span(field, n, &gens);
    }
    let mut report = VerificationReport::new(format!("fiber ideal {x}"));
    report.record("saturated", rounds <= n, || "saturation failed to terminate".into());
    let closed = span.basis().iter().all(|g| {
        (0..n).all(|b| {
            let e = basis_vec(field, n, b);
            span.contains(&alg.product(g, &e)) && span.contains(&alg.product(&e, g))
        })
    });
    report.record("two-sided ideal", closed, || "span is not multiplication closed".into());
    report.pass_detail("rounds", format!("{rounds}"));
    FiberIdeal { subspace: span, rounds, report }
}

/// One fiber of a fibred coaction: the quotient algebra, the descended
/// coaction, and the projection, with every well-definedness condition
/// certified on matrices.
pub struct Fiber {
    pub coaction: CoactionData,
    pub quotient: QuotientData,
    pub report: VerificationReport,
}

pub fn fiber_coaction(fc: &FibredCoaction, x: usize) -> Result<Fiber> {
    let field = fc.coaction.field();
    let n = fc.coaction.dim();
    let dh = fc.coaction.hopf.dim();
    let ideal = fiber_ideal(fc, x);
    let mut report = VerificationReport::new(format!("fiber {x}"));
    report.merge(ideal.report);
    let q = quotient_by(&ideal.subspace);
    let alg = &fc.coaction.algebra;

    // Multiplication descends: the ideal absorbs both arguments.
    let incl = ideal.subspace.inclusion();
    let id_a = LinMap::identity(field, n);
    let left_absorb = q
        .projection
        .compose(&alg.mult)?
        .compose(&incl.tensor(&id_a)?)?;
    let right_absorb = q
        .projection
        .compose(&alg.mult)?
        .compose(&id_a.tensor(&incl)?)?;
    report.record("multiplication descends", left_absorb.is_zero_map() && right_absorb.is_zero_map(), || {
        "the fiber ideal is not absorbing".into()
    });

    // Coaction descends: delta maps the ideal into ideal (x) H.
    let id_h = LinMap::identity(field, dh);
    let delta_on_ideal = q
        .projection
        .tensor(&id_h)?
        .compose(&fc.coaction.delta)?
        .compose(&incl)?;
    report.record("coaction descends", delta_on_ideal.is_zero_map(), || {
        "delta does not preserve the fiber ideal".into()
    });
    if !report.all_passed() {
        return Err(Error::StructureInvalid {
            subject: format!("fiber {x}"),
            failed: report.failed_names().join(", "),
        });
    }

    let mult_x = q
        .projection
        .compose(&alg.mult)?
        .compose(&q.section.tensor(&q.section)?)?;
    let unit_x = q.projection.apply(&alg.unit)?;
    let algebra_x = AlgebraData::new(field, q.dim, mult_x, unit_x)?;
    let delta_x = q
        .projection
        .tensor(&id_h)?
        .compose(&fc.coaction.delta)?
        .compose(&q.section)?;
    let coaction_x = CoactionData::new(algebra_x, fc.coaction.hopf.clone(), delta_x)?;
    coaction_x.ensure_verified()?;
    report.pass_detail("fiber dimension", format!("{}", q.dim));
    Ok(Fiber { coaction: coaction_x, quotient: q, report })
}

pub struct FibredReport {
    pub structure: VerificationReport,
    pub global: CanReport,
    pub fibers: Vec<Fiber>,
    pub fiber_cans: Vec<CanReport>,
    /// Global bijectivity equals the conjunction of the fiber
    /// verdicts; this is checked, not assumed.
    pub equivalence_holds: bool,
    /// Fiber dimensions sum to the global dimension and the fiber
    /// relative tensor dimensions sum to the global one.
    pub dimensions_add_up: bool,
    /// For every fiber the projected lifted canonical map commutes
    /// with the global one as matrices.
    pub diagram_commutes: bool,
}

impl FibredReport {
    pub fn globally_free(&self) -> bool {
        self.global.bijective
    }
}

/// Decomposes the freeness question along the fibers and certifies the
/// decomposition itself.
pub fn fibred_pwg_check(fc: &FibredCoaction) -> Result<FibredReport> {
    let structure = fc.verify()?;
    let field = fc.coaction.field();
    let dh = fc.coaction.hopf.dim();
    let id_h = LinMap::identity(field, dh);
    let global = canonical_map(&fc.coaction, None)?;
    let global_lift = canonical_map_lift(&fc.coaction);

    let mut fibers = Vec::new();
    let mut fiber_cans = Vec::new();
    let mut diagram_commutes = true;
    for x in 0..fc.base_points {
        let fiber = fiber_coaction(fc, x)?;
        let can_x = canonical_map(&fiber.coaction, None)?;
        let lift_x = canonical_map_lift(&fiber.coaction);
        // can_x . (pi_x (x) pi_x) = (pi_x (x) id_H) . can_lift
        let pi = &fiber.quotient.projection;
        let lhs = lift_x.compose(&pi.tensor(pi)?)?;
        let rhs = pi.tensor(&id_h)?.compose(&global_lift)?;
        if lhs != rhs {
            diagram_commutes = false;
        }
        fibers.push(fiber);
        fiber_cans.push(can_x);
    }

    let all_fibers_free = fiber_cans.iter().all(|c| c.bijective);
    let equivalence_holds = global.bijective == all_fibers_free;
    let dim_sum: usize = fibers.iter().map(|f| f.coaction.dim()).sum();
    let rel_sum: usize = fiber_cans.iter().map(|c| c.domain_dim).sum();
    let dimensions_add_up = dim_sum == fc.coaction.dim() && rel_sum == global.domain_dim;

    Ok(FibredReport {
        structure,
        global,
        fibers,
        fiber_cans,
        equivalence_holds,
        dimensions_add_up,
        diagram_commutes,
    })
}

/// Builds the block-diagonal coaction from named fibers over a shared
/// Hopf algebra, with the indicator map onto the blocks.
pub fn assemble_from_fibers(
    hopf: Arc<HopfData>,
    fibers: &[CoactionData],
) -> Result<FibredCoaction> {
    if fibers.is_empty() {
        return Err(Error::InvalidInput("at least one fiber is required".into()));
    }
    for f in fibers {
        if f.hopf.as_ref() != hopf.as_ref() {
            return Err(Error::InvalidInput("fibers coact over different Hopf algebras".into()));
        }
    }
    let field = hopf.field();
    let dh = hopf.dim();
    let dims: Vec<usize> = fibers.iter().map(|f| f.dim()).collect();
    let total: usize = dims.iter().sum();
    let offset: Vec<usize> = dims
        .iter()
        .scan(0, |acc, &d| {
            let o = *acc;
            *acc += d;
            Some(o)
        })
        .collect();

    let mut mult = LinMap::zero(field, total, total * total);
    let mut unit = crate::linalg::zero_vec(field, total);
    let mut delta = LinMap::zero(field, total * dh, total);
    let mut theta = LinMap::zero(field, total, fibers.len());
    for (k, f) in fibers.iter().enumerate() {
        let o = offset[k];
        let d = dims[k];
        for (r, c, s) in f.algebra.mult.triples() {
            let (i, j) = (c / d, c % d);
            mult.set_entry(o + r, (o + i) * total + (o + j), s.clone());
        }
        for (i, s) in f.algebra.unit.iter().enumerate() {
            if !s.is_zero() {
                unit[o + i] = s.clone();
                theta.set_entry(o + i, k, s.clone());
            }
        }
        for (r, c, s) in f.delta.triples() {
            let (i, h) = (r / dh, r % dh);
            delta.set_entry((o + i) * dh + h, o + c, s.clone());
        }
    }
    let algebra = AlgebraData::new(field, total, mult, unit)?;
    let coaction = CoactionData::new(algebra, hopf, delta)?;
    FibredCoaction::new(coaction, fibers.len(), theta)
}
