//! Finite-dimensional algebras, coalgebras and Hopf algebras given by
//! structure constants, with full axiom verification, Haar (two-sided
//! integral) solving, and vector-space duality.
//!
//! Scalar tensor legs need no explicit identification maps: with the
//! row-major index convention, F (x) V and V (x) F share coordinates
//! with V on the nose.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{basis_vec, tensor_vec, LinMap};
use crate::report::VerificationReport;
use crate::scalar::{FieldSpec, Scalar};

/// A unital associative algebra on a based space: mult is a map
/// `A (x) A -> A`, the unit is a coordinate vector.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraData {
    pub field: FieldSpec,
    pub dim: usize,
    pub mult: LinMap,
    pub unit: Vec<Scalar>,
}

impl AlgebraData {
    pub fn new(field: FieldSpec, dim: usize, mult: LinMap, unit: Vec<Scalar>) -> Result<AlgebraData> {
        if mult.rows() != dim || mult.cols() != dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "mult must be {dim}x{}, got {}x{}",
                dim * dim,
                mult.rows(),
                mult.cols()
            )));
        }
        if mult.field() != field {
            return Err(Error::FieldMismatch("mult field differs from declared field".into()));
        }
        if unit.len() != dim {
            return Err(Error::DimensionMismatch("unit vector has wrong length".into()));
        }
        if unit.iter().any(|s| s.field() != field) {
            return Err(Error::FieldMismatch("unit entries lie in the wrong field".into()));
        }
        Ok(AlgebraData { field, dim, mult, unit })
    }

    pub fn product(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        self.mult.apply(&tensor_vec(a, b)).expect("shape checked at construction")
    }

    /// Left multiplication by `a` as a matrix.
    pub fn left_mult(&self, a: &[Scalar]) -> LinMap {
        let cols: Vec<Vec<Scalar>> = (0..self.dim)
            .map(|j| self.product(a, &basis_vec(self.field, self.dim, j)))
            .collect();
        LinMap::from_columns(self.field, self.dim, &cols)
    }

    pub fn right_mult(&self, a: &[Scalar]) -> LinMap {
        let cols: Vec<Vec<Scalar>> = (0..self.dim)
            .map(|j| self.product(&basis_vec(self.field, self.dim, j), a))
            .collect();
        LinMap::from_columns(self.field, self.dim, &cols)
    }

    /// `unit (x) id : A -> A (x) A` (and its mirror), used in axiom checks.
    fn unit_left(&self) -> LinMap {
        let cols: Vec<Vec<Scalar>> = (0..self.dim)
            .map(|j| tensor_vec(&self.unit, &basis_vec(self.field, self.dim, j)))
            .collect();
        LinMap::from_columns(self.field, self.dim * self.dim, &cols)
    }

    fn unit_right(&self) -> LinMap {
        let cols: Vec<Vec<Scalar>> = (0..self.dim)
            .map(|j| tensor_vec(&basis_vec(self.field, self.dim, j), &self.unit))
            .collect();
        LinMap::from_columns(self.field, self.dim * self.dim, &cols)
    }
}

/// A coassociative counital coalgebra: comult `C -> C (x) C`, counit
/// `C -> F` as a 1-row matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CoalgebraData {
    pub field: FieldSpec,
    pub dim: usize,
    pub comult: LinMap,
    pub counit: LinMap,
}

impl CoalgebraData {
    pub fn new(field: FieldSpec, dim: usize, comult: LinMap, counit: LinMap) -> Result<CoalgebraData> {
        if comult.rows() != dim * dim || comult.cols() != dim {
            return Err(Error::DimensionMismatch(format!(
                "comult must be {}x{dim}, got {}x{}",
                dim * dim,
                comult.rows(),
                comult.cols()
            )));
        }
        if counit.rows() != 1 || counit.cols() != dim {
            return Err(Error::DimensionMismatch("counit must be a single row".into()));
        }
        if comult.field() != field || counit.field() != field {
            return Err(Error::FieldMismatch("coalgebra maps over the wrong field".into()));
        }
        Ok(CoalgebraData { field, dim, comult, counit })
    }

    pub fn counit_of(&self, v: &[Scalar]) -> Scalar {
        self.counit.apply(v).expect("shape checked")[0].clone()
    }
}

/// Structure constants of a Hopf algebra. Constructing one checks only
/// shapes; `verify` checks the axioms.
#[derive(Debug, Clone, PartialEq)]
pub struct HopfData {
    pub algebra: AlgebraData,
    pub coalgebra: CoalgebraData,
    pub antipode: LinMap,
}

impl HopfData {
    pub fn new(algebra: AlgebraData, coalgebra: CoalgebraData, antipode: LinMap) -> Result<HopfData> {
        if algebra.field != coalgebra.field || algebra.dim != coalgebra.dim {
            return Err(Error::DimensionMismatch(
                "algebra and coalgebra parts disagree on field or dimension".into(),
            ));
        }
        if antipode.rows() != algebra.dim || antipode.cols() != algebra.dim {
            return Err(Error::DimensionMismatch("antipode must be square of the Hopf dimension".into()));
        }
        if antipode.field() != algebra.field {
            return Err(Error::FieldMismatch("antipode over the wrong field".into()));
        }
        Ok(HopfData { algebra, coalgebra, antipode })
    }

    pub fn field(&self) -> FieldSpec {
        self.algebra.field
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim
    }

    pub fn mult(&self) -> &LinMap {
        &self.algebra.mult
    }

    pub fn comult(&self) -> &LinMap {
        &self.coalgebra.comult
    }

    pub fn counit(&self) -> &LinMap {
        &self.coalgebra.counit
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.algebra.unit
    }

    /// `S^{-1}`, required for left-sided strong connection axioms.
    pub fn antipode_inverse(&self) -> Result<LinMap> {
        self.antipode.inverse().ok_or_else(|| {
            Error::StructureInvalid { subject: "hopf".into(), failed: "antipode not invertible".into() }
        })
    }

    pub fn ensure_verified(&self) -> Result<()> {
        let report = verify_hopf(self);
        if report.all_passed() {
            Ok(())
        } else {
            Err(Error::StructureInvalid {
                subject: "hopf".into(),
                failed: report.failed_names().join(", "),
            })
        }
    }
}

/// Structure constants of a subspace that is expected to be a unital
/// subalgebra, expressed in the subspace basis. Errors name the first
/// product (or the unit) that escapes the span.
pub fn subalgebra_structure(ambient: &AlgebraData, sub: &crate::linalg::Subspace) -> Result<AlgebraData> {
    if sub.ambient_dim() != ambient.dim {
        return Err(Error::DimensionMismatch("subspace lives in a different ambient space".into()));
    }
    let field = ambient.field;
    let d = sub.dim();
    let unit = sub.coords_of(&ambient.unit).ok_or_else(|| {
        Error::InvalidInput("declared base does not contain the unit".into())
    })?;
    let mut mult = LinMap::zero(field, d, d * d);
    for (i, bi) in sub.basis().iter().enumerate() {
        for (j, bj) in sub.basis().iter().enumerate() {
            let prod = ambient.product(bi, bj);
            let coords = sub.coords_of(&prod).ok_or_else(|| {
                Error::InvalidInput(format!(
                    "declared base is not closed under multiplication: b{i} * b{j} escapes the span"
                ))
            })?;
            for (k, s) in coords.into_iter().enumerate() {
                if !s.is_zero() {
                    mult.set_entry(k, i * d + j, s);
                }
            }
        }
    }
    AlgebraData::new(field, d, mult, unit)
}

/// The tensor product algebra `A (x) B` with componentwise product.
pub fn algebra_tensor(a: &AlgebraData, b: &AlgebraData) -> AlgebraData {
    let field = a.field;
    // The middle factor being straightened is B (x) A.
    let mid_flip = LinMap::identity(field, a.dim)
        .tensor(&LinMap::flip(field, b.dim, a.dim))
        .unwrap()
        .tensor(&LinMap::identity(field, b.dim))
        .unwrap();
    let mult = a
        .mult
        .tensor(&b.mult)
        .unwrap()
        .compose(&mid_flip)
        .unwrap();
    AlgebraData {
        field,
        dim: a.dim * b.dim,
        mult,
        unit: tensor_vec(&a.unit, &b.unit),
    }
}

/// None when the maps are equal; otherwise a human-readable witness
/// naming the first basis vector where they differ.
pub fn maps_equal_witness(lhs: &LinMap, rhs: &LinMap) -> Option<String> {
    let diff = lhs.sub(rhs).expect("witness comparison needs equal shapes");
    if diff.is_zero_map() {
        return None;
    }
    let col = diff.triples().map(|(_, j, _)| j).min().unwrap();
    let column: Vec<String> = diff
        .triples()
        .filter(|&(_, j, _)| j == col)
        .map(|(i, _, s)| format!("{s}*e{i}"))
        .collect();
    Some(format!("on basis vector e{col}: lhs - rhs = {}", column.join(" + ")))
}

pub fn verify_algebra(a: &AlgebraData) -> VerificationReport {
    let mut rep = VerificationReport::new("algebra");
    let field = a.field;
    let id = LinMap::identity(field, a.dim);
    let assoc_l = a.mult.compose(&a.mult.tensor(&id).unwrap()).unwrap();
    let assoc_r = a.mult.compose(&id.tensor(&a.mult).unwrap()).unwrap();
    rep.record("associative", assoc_l == assoc_r, || {
        maps_equal_witness(&assoc_l, &assoc_r).unwrap()
    });
    let unit_l = a.mult.compose(&a.unit_left()).unwrap();
    rep.record("left unit", unit_l == id, || maps_equal_witness(&unit_l, &id).unwrap());
    let unit_r = a.mult.compose(&a.unit_right()).unwrap();
    rep.record("right unit", unit_r == id, || maps_equal_witness(&unit_r, &id).unwrap());
    rep
}

pub fn verify_coalgebra(c: &CoalgebraData) -> VerificationReport {
    let mut rep = VerificationReport::new("coalgebra");
    let field = c.field;
    let id = LinMap::identity(field, c.dim);
    let coassoc_l = c.comult.tensor(&id).unwrap().compose(&c.comult).unwrap();
    let coassoc_r = id.tensor(&c.comult).unwrap().compose(&c.comult).unwrap();
    rep.record("coassociative", coassoc_l == coassoc_r, || {
        maps_equal_witness(&coassoc_l, &coassoc_r).unwrap()
    });
    // (eps (x) id) o comult : C -> F (x) C = C under flat indexing.
    let counit_l = c.counit.tensor(&id).unwrap().compose(&c.comult).unwrap();
    rep.record("left counit", counit_l == id, || maps_equal_witness(&counit_l, &id).unwrap());
    let counit_r = id.tensor(&c.counit).unwrap().compose(&c.comult).unwrap();
    rep.record("right counit", counit_r == id, || maps_equal_witness(&counit_r, &id).unwrap());
    rep
}

/// Full Hopf verification: algebra and coalgebra axioms, comult and
/// counit as unital algebra maps, both antipode identities, and
/// antipode invertibility (needed for the left coaction flip used by
/// strong connections).
pub fn verify_hopf(h: &HopfData) -> VerificationReport {
    let mut rep = VerificationReport::new("hopf");
    rep.merge(verify_algebra(&h.algebra));
    rep.merge(verify_coalgebra(&h.coalgebra));

    let field = h.field();
    let n = h.dim();
    let id = LinMap::identity(field, n);
    let hh = algebra_tensor(&h.algebra, &h.algebra);

    let comult_of_product = h.comult().compose(h.mult()).unwrap();
    let product_of_comults =
        hh.mult.compose(&h.comult().tensor(h.comult()).unwrap()).unwrap();
    rep.record("comult multiplicative", comult_of_product == product_of_comults, || {
        maps_equal_witness(&comult_of_product, &product_of_comults).unwrap()
    });

    let comult_unit = h.comult().apply(h.unit()).unwrap();
    let unit_unit = tensor_vec(h.unit(), h.unit());
    rep.record("comult unital", comult_unit == unit_unit, || {
        format!("comult(1) - 1(x)1 = {}", render_vec(&crate::linalg::vec_sub(&comult_unit, &unit_unit)))
    });

    let counit_of_product = h.counit().compose(h.mult()).unwrap();
    let counit_tensor = h.counit().tensor(h.counit()).unwrap();
    rep.record("counit multiplicative", counit_of_product == counit_tensor, || {
        maps_equal_witness(&counit_of_product, &counit_tensor).unwrap()
    });

    let counit_unit = h.coalgebra.counit_of(h.unit());
    rep.record("counit unital", counit_unit.is_one(), || format!("counit(1) = {counit_unit}"));

    // unit o counit : H -> H, target of both antipode identities.
    let unit_col = LinMap::from_columns(field, n, &[h.unit().to_vec()]);
    let unit_counit = unit_col.compose(h.counit()).unwrap();
    let s_conv_id = h
        .mult()
        .compose(&h.antipode.tensor(&id).unwrap())
        .unwrap()
        .compose(h.comult())
        .unwrap();
    rep.record("antipode left", s_conv_id == unit_counit, || {
        maps_equal_witness(&s_conv_id, &unit_counit).unwrap()
    });
    let id_conv_s = h
        .mult()
        .compose(&id.tensor(&h.antipode).unwrap())
        .unwrap()
        .compose(h.comult())
        .unwrap();
    rep.record("antipode right", id_conv_s == unit_counit, || {
        maps_equal_witness(&id_conv_s, &unit_counit).unwrap()
    });

    let s_rank = h.antipode.rank();
    rep.record("antipode bijective", s_rank == n, || {
        format!("rank(S) = {s_rank} < {n}")
    });
    rep
}

fn render_vec(v: &[Scalar]) -> String {
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, s)| !s.is_zero())
        .map(|(i, s)| format!("{s}*e{i}"))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// A normalized two-sided integral `phi : H -> F`.
#[derive(Debug, Clone, PartialEq)]
pub struct HaarFunctional {
    pub phi: LinMap,
}

impl HaarFunctional {
    pub fn apply(&self, v: &[Scalar]) -> Scalar {
        self.phi.apply(v).expect("shape checked")[0].clone()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HaarOutcome {
    #[serde(skip)]
    pub functional: Option<HaarFunctional>,
    pub exists: bool,
    /// Dimension of the unnormalized two-sided invariant space; a value
    /// above 1 is flagged because the normalization then hides a choice.
    pub invariant_space_dim: usize,
}

impl HaarOutcome {
    pub fn non_unique(&self) -> bool {
        self.invariant_space_dim > 1
    }
}

/// Solves the linear system for a normalized two-sided integral:
/// `(id (x) phi) o comult = unit . phi = (phi (x) id) o comult` and
/// `phi(1) = 1`. Existence of a solution is exactly cosemisimplicity
/// at this scale, which downstream cross-checks key on.
pub fn haar_integral(h: &HopfData) -> HaarOutcome {
    let field = h.field();
    let n = h.dim();
    // Unknowns x_k = phi(e_k). Left-invariance row (g, i):
    // sum_k comult[(i,k), g] x_k - unit[i] x_g = 0; right-invariance
    // keeps the other comult leg.
    let mut acc: std::collections::BTreeMap<(usize, usize), Scalar> = Default::default();
    let bump = |acc: &mut std::collections::BTreeMap<(usize, usize), Scalar>, key, val: Scalar| {
        acc.entry(key).and_modify(|v| *v = &*v + &val).or_insert(val);
    };
    for (rc, g, s) in h.comult().triples() {
        let (i, k) = (rc / n, rc % n);
        bump(&mut acc, (g * n + i, k), s.clone());
        bump(&mut acc, (n * n + g * n + k, i), s.clone());
    }
    for g in 0..n {
        for i in 0..n {
            if !h.unit()[i].is_zero() {
                bump(&mut acc, (g * n + i, g), h.unit()[i].neg());
                bump(&mut acc, (n * n + g * n + i, g), h.unit()[i].neg());
            }
        }
    }
    let triples: Vec<(usize, usize, Scalar)> =
        acc.into_iter().map(|((r, c), v)| (r, c, v)).filter(|(_, _, v)| !v.is_zero()).collect();
    let system = LinMap::from_triples(field, 2 * n * n, n, triples).expect("indices in range");
    let invariant_space_dim = n - system.rank();

    // Append the normalization phi(1) = 1 and solve.
    let mut full = LinMap::zero(field, 2 * n * n + 1, n);
    for (i, j, s) in system.triples() {
        full.set_entry(i, j, s.clone());
    }
    for (k, u) in h.unit().iter().enumerate() {
        if !u.is_zero() {
            full.set_entry(2 * n * n, k, u.clone());
        }
    }
    let mut rhs = crate::linalg::zero_vec(field, 2 * n * n + 1);
    rhs[2 * n * n] = field.one();
    let solution = full.solve(&rhs).expect("shapes match");
    let functional = solution.map(|x| HaarFunctional {
        phi: LinMap::from_columns(field, 1, &x.iter().map(|s| vec![s.clone()]).collect::<Vec<_>>()),
    });
    HaarOutcome { exists: functional.is_some(), functional, invariant_space_dim }
}

/// The dual Hopf algebra on the dual basis. With the flat index
/// pairing, dualization is literal matrix transposition, so
/// `dual_hopf(dual_hopf(h)) == h` on the nose.
pub fn dual_hopf(h: &HopfData) -> HopfData {
    let field = h.field();
    let n = h.dim();
    let mult = h.comult().transpose();
    let counit_t = h.counit().transpose();
    let unit: Vec<Scalar> = (0..n).map(|i| counit_t.entry(i, 0)).collect();
    let comult = h.mult().transpose();
    let counit = {
        let mut m = LinMap::zero(field, 1, n);
        for (i, u) in h.unit().iter().enumerate() {
            m.set_entry(0, i, u.clone());
        }
        m
    };
    let antipode = h.antipode.transpose();
    HopfData {
        algebra: AlgebraData { field, dim: n, mult, unit },
        coalgebra: CoalgebraData { field, dim: n, comult, counit },
        antipode,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::zero_vec;

    /// Function Hopf algebra of Z/2 written out by hand: basis
    /// (delta_e, delta_a), pointwise product, convolution coproduct.
    pub(crate) fn c2_function_hopf() -> HopfData {
        let f = FieldSpec::Rationals;
        let one = f.one();
        let mult = LinMap::from_triples(
            f,
            2,
            4,
            vec![(0, 0, one.clone()), (1, 3, one.clone())],
        )
        .unwrap();
        let unit = vec![one.clone(), one.clone()];
        let comult = LinMap::from_triples(
            f,
            4,
            2,
            vec![
                (0, 0, one.clone()), // e (x) e <- e
                (3, 0, one.clone()), // a (x) a <- e
                (1, 1, one.clone()), // e (x) a <- a
                (2, 1, one.clone()), // a (x) e <- a
            ],
        )
        .unwrap();
        let counit = LinMap::from_triples(f, 1, 2, vec![(0, 0, one.clone())]).unwrap();
        let antipode = LinMap::identity(f, 2);
        HopfData::new(
            AlgebraData::new(f, 2, mult, unit).unwrap(),
            CoalgebraData::new(f, 2, comult, counit).unwrap(),
            antipode,
        )
        .unwrap()
    }

    #[test]
    fn c2_function_hopf_passes_all_axioms() {
        let h = c2_function_hopf();
        let rep = verify_hopf(&h);
        assert!(rep.all_passed(), "{rep}");
        assert_eq!(rep.checks.len(), 13);
    }

    #[test]
    fn broken_counit_fails_with_witness() {
        let mut h = c2_function_hopf();
        // Declare eps(delta_a) = 1 as well; the counit axiom dies.
        let f = FieldSpec::Rationals;
        h.coalgebra.counit =
            LinMap::from_triples(f, 1, 2, vec![(0, 0, f.one()), (0, 1, f.one())]).unwrap();
        let rep = verify_hopf(&h);
        assert!(!rep.all_passed());
        let failed = rep.failed_names();
        assert!(failed.contains(&"coalgebra.left counit"), "{failed:?}");
        let witness = rep
            .checks
            .iter()
            .find(|c| c.name == "coalgebra.left counit")
            .and_then(|c| c.witness.clone())
            .unwrap();
        assert!(witness.contains("e0") || witness.contains("e1"), "{witness}");
    }

    #[test]
    fn broken_antipode_fails() {
        let mut h = c2_function_hopf();
        let f = FieldSpec::Rationals;
        // S = 0 breaks both antipode identities and bijectivity.
        h.antipode = LinMap::zero(f, 2, 2);
        let rep = verify_hopf(&h);
        let failed = rep.failed_names();
        assert!(failed.contains(&"antipode left"));
        assert!(failed.contains(&"antipode bijective"));
    }

    #[test]
    fn haar_on_c2_function_hopf_is_uniform() {
        let h = c2_function_hopf();
        let out = haar_integral(&h);
        let phi = out.functional.clone().unwrap();
        let f = FieldSpec::Rationals;
        let half = f.parse("1/2").unwrap();
        assert_eq!(phi.apply(&basis_vec(f, 2, 0)), half);
        assert_eq!(phi.apply(&basis_vec(f, 2, 1)), half);
        assert_eq!(out.invariant_space_dim, 1);
        assert!(!out.non_unique());
    }

    #[test]
    fn haar_absent_when_char_divides_order() {
        // Same structure constants over F2: the invariance system only
        // admits the unnormalizable uniform functional.
        let f = FieldSpec::PrimeField(2);
        let one = f.one();
        let mult =
            LinMap::from_triples(f, 2, 4, vec![(0, 0, one.clone()), (1, 3, one.clone())]).unwrap();
        let unit = vec![one.clone(), one.clone()];
        let comult = LinMap::from_triples(
            f,
            4,
            2,
            vec![(0, 0, one.clone()), (3, 0, one.clone()), (1, 1, one.clone()), (2, 1, one.clone())],
        )
        .unwrap();
        let counit = LinMap::from_triples(f, 1, 2, vec![(0, 0, one.clone())]).unwrap();
        let antipode = LinMap::identity(f, 2);
        let h = HopfData::new(
            AlgebraData::new(f, 2, mult, unit).unwrap(),
            CoalgebraData::new(f, 2, comult, counit).unwrap(),
            antipode,
        )
        .unwrap();
        assert!(verify_hopf(&h).all_passed());
        let out = haar_integral(&h);
        assert!(out.functional.is_none());
        assert_eq!(out.invariant_space_dim, 1);
    }

    #[test]
    fn dual_of_dual_is_identity() {
        let h = c2_function_hopf();
        let dd = dual_hopf(&dual_hopf(&h));
        assert_eq!(dd, h);
        assert!(verify_hopf(&dual_hopf(&h)).all_passed());
    }

    #[test]
    fn algebra_tensor_with_asymmetric_dims() {
        // Pointwise function algebras of sizes 2 and 3; the tensor is
        // the pointwise algebra on 6 flat indices. Unequal dims catch
        // any misoriented middle swap.
        let f = FieldSpec::Rationals;
        let pointwise = |n: usize| {
            let one = f.one();
            let triples: Vec<(usize, usize, Scalar)> =
                (0..n).map(|i| (i, i * n + i, one.clone())).collect();
            AlgebraData::new(f, n, LinMap::from_triples(f, n, n * n, triples).unwrap(), vec![one; n])
                .unwrap()
        };
        let t = algebra_tensor(&pointwise(2), &pointwise(3));
        assert!(verify_algebra(&t).all_passed());
        for i in 0..6 {
            for j in 0..6 {
                let p = t.product(&basis_vec(f, 6, i), &basis_vec(f, 6, j));
                let expect = if i == j { basis_vec(f, 6, i) } else { crate::linalg::zero_vec(f, 6) };
                assert_eq!(p, expect);
            }
        }
    }

    #[test]
    fn algebra_tensor_is_componentwise() {
        let h = c2_function_hopf();
        let sq = algebra_tensor(&h.algebra, &h.algebra);
        assert!(verify_algebra(&sq).all_passed());
        let f = FieldSpec::Rationals;
        // (delta_e (x) delta_a)^2 = delta_e (x) delta_a
        let v = tensor_vec(&basis_vec(f, 2, 0), &basis_vec(f, 2, 1));
        assert_eq!(sq.product(&v, &v), v);
        let w = tensor_vec(&basis_vec(f, 2, 0), &basis_vec(f, 2, 0));
        assert_eq!(sq.product(&v, &w), zero_vec(f, 4));
    }
}
