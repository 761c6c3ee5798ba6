//! Named example catalogue. The command-line tool resolves `gen` and
//! bare-name arguments here, and the acceptance tests drive the same
//! constructions, so both surfaces exercise identical objects.

use std::sync::Arc;

use crate::classical::{
    cube_root_extension, frobenius_extension, function_hopf, gset_coaction, quadratic_extension,
    CoveringData, ExtensionData, FiniteGroup, GSet,
};
use crate::comodule::CoactionData;
use crate::error::{Error, Result};
use crate::fibred::{assemble_from_fibers, FibredCoaction};
use crate::hopf::HopfData;
use crate::linalg::Subspace;
use crate::scalar::FieldSpec;
use crate::suite::covering_battery;

/// A constructed object; the variant keeps the combinatorial origin
/// so callers can render it back out as structure constants.
#[derive(Debug, Clone)]
pub enum BuiltObject {
    Hopf(Arc<HopfData>),
    Action { group: FiniteGroup, gset: GSet },
    Extension(ExtensionData),
    Covering(CoveringData),
    Fibred(FibredCoaction),
}

impl BuiltObject {
    /// The coaction a verdict command operates on, with the declared
    /// base when the example fixes one. Hopf objects become their own
    /// regular self-coaction.
    pub fn coaction(&self, field: FieldSpec) -> Result<(CoactionData, Option<Subspace>)> {
        match self {
            BuiltObject::Hopf(h) => {
                let c = CoactionData::new(h.algebra.clone(), h.clone(), h.comult().clone())?;
                Ok((c, None))
            }
            BuiltObject::Action { group, gset } => {
                Ok((gset_coaction(field, group, gset)?, None))
            }
            BuiltObject::Extension(ext) => {
                let (c, base) = ext.coaction()?;
                Ok((c, Some(base)))
            }
            BuiltObject::Covering(_) | BuiltObject::Fibred(_) => Err(Error::InvalidInput(
                "this example is not a plain coaction; use the cover or fibred command".into(),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldSupport {
    /// Builds over whatever field is requested.
    Any,
    /// Built into a specific field; requesting another is an input
    /// error rather than a silent substitution.
    Fixed(FieldSpec),
}

pub struct RegistryEntry {
    pub name: &'static str,
    pub summary: &'static str,
    pub fields: FieldSupport,
}

pub fn registry() -> Vec<RegistryEntry> {
    vec![
        RegistryEntry { name: "z2-hopf", summary: "functions on the two-element group", fields: FieldSupport::Any },
        RegistryEntry { name: "z2-free-2", summary: "the two-element group acting on itself", fields: FieldSupport::Any },
        RegistryEntry { name: "z2-fixpoint-3", summary: "a swap plus a fixed point; not free", fields: FieldSupport::Any },
        RegistryEntry { name: "z3-regular", summary: "the three-element group acting on itself", fields: FieldSupport::Any },
        RegistryEntry { name: "s3-cosets-3", summary: "S3 on three cosets; transitive but not free", fields: FieldSupport::Any },
        RegistryEntry { name: "gauss-qi", summary: "the Gaussian field over the rationals", fields: FieldSupport::Fixed(FieldSpec::Rationals) },
        RegistryEntry { name: "sqrt2", summary: "the rationals with a square root of two", fields: FieldSupport::Fixed(FieldSpec::Rationals) },
        RegistryEntry { name: "cbrt2", summary: "a cube root of two; no automorphisms, canonical map degenerates", fields: FieldSupport::Fixed(FieldSpec::Rationals) },
        RegistryEntry { name: "f4-over-f2", summary: "the four-element field over its prime field", fields: FieldSupport::Fixed(FieldSpec::PrimeField(2)) },
        RegistryEntry { name: "f8-over-f2", summary: "the eight-element field over its prime field", fields: FieldSupport::Fixed(FieldSpec::PrimeField(2)) },
        RegistryEntry { name: "f9-over-f3", summary: "the nine-element field over its prime field", fields: FieldSupport::Fixed(FieldSpec::PrimeField(3)) },
        RegistryEntry { name: "trivial-cover", summary: "an identity covering with trivial deck", fields: FieldSupport::Any },
        RegistryEntry { name: "z3-regular-cover", summary: "three sheets with cyclic deck; regular", fields: FieldSupport::Any },
        RegistryEntry { name: "z2-irregular-cover", summary: "three sheets, deck swaps two; irregular", fields: FieldSupport::Any },
        RegistryEntry { name: "s3-irregular-cover", summary: "three sheets with full symmetric deck; transitive, not free", fields: FieldSupport::Any },
        RegistryEntry { name: "mixed-fibred", summary: "a free fiber next to a fixed-point fiber", fields: FieldSupport::Any },
        RegistryEntry { name: "free-fibred", summary: "two free fibers over a two-point base", fields: FieldSupport::Any },
    ]
}

fn swap_gset() -> GSet {
    GSet { points: 2, action: vec![vec![0, 1], vec![1, 0]] }
}

fn covering_by_name(name: &str) -> Result<CoveringData> {
    let internal = match name {
        "trivial-cover" => "trivial-1",
        "z3-regular-cover" => "C3-regular",
        "z2-irregular-cover" => "z2-irregular-3",
        "s3-irregular-cover" => "s3-irregular-3",
        _ => name,
    };
    covering_battery()
        .into_iter()
        .find(|c| c.name == internal)
        .ok_or_else(|| Error::InvalidInput(format!("no covering named {name}")))
}

fn check_field(requested: FieldSpec, entry_fields: FieldSupport, name: &str) -> Result<()> {
    match entry_fields {
        FieldSupport::Any => Ok(()),
        FieldSupport::Fixed(f) if f == requested => Ok(()),
        FieldSupport::Fixed(f) => Err(Error::InvalidInput(format!(
            "{name} is built over {f}; requested {requested}"
        ))),
    }
}

/// Builds a named example over the requested field.
pub fn build_example(name: &str, field: FieldSpec) -> Result<BuiltObject> {
    let entry = registry()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| {
            let names: Vec<&str> = registry().iter().map(|e| e.name).collect();
            Error::InvalidInput(format!(
                "unknown example {name}; available: {}",
                names.join(", ")
            ))
        })?;
    check_field(field, entry.fields, name)?;

    let c2 = FiniteGroup::cyclic(2);
    let c3 = FiniteGroup::cyclic(3);
    Ok(match name {
        "z2-hopf" => BuiltObject::Hopf(function_hopf(field, &c2)),
        "z2-free-2" => BuiltObject::Action { group: c2, gset: swap_gset() },
        "z2-fixpoint-3" => BuiltObject::Action {
            group: c2,
            gset: GSet { points: 3, action: vec![vec![0, 1], vec![1, 0], vec![2, 2]] },
        },
        "z3-regular" => BuiltObject::Action {
            group: c3,
            gset: GSet {
                points: 3,
                action: (0..3).map(|x| (0..3).map(|g| (x + g) % 3).collect()).collect(),
            },
        },
        "s3-cosets-3" => {
            let s3 = FiniteGroup::symmetric(3);
            let classes = s3.subgroup_conjugacy_classes();
            let two = classes
                .iter()
                .find(|c| c[0].len() == 2)
                .expect("S3 has subgroups of order 2");
            let gset = s3.coset_action(&two[0]);
            BuiltObject::Action { group: s3, gset }
        }
        "gauss-qi" => BuiltObject::Extension(quadratic_extension(field, -1, "Q(i)")?),
        "sqrt2" => BuiltObject::Extension(quadratic_extension(field, 2, "Q(sqrt2)")?),
        "cbrt2" => BuiltObject::Extension(cube_root_extension()?),
        "f4-over-f2" => BuiltObject::Extension(frobenius_extension(2, 2)?),
        "f8-over-f2" => BuiltObject::Extension(frobenius_extension(2, 3)?),
        "f9-over-f3" => BuiltObject::Extension(frobenius_extension(3, 2)?),
        "trivial-cover" | "z3-regular-cover" | "z2-irregular-cover" | "s3-irregular-cover" => {
            BuiltObject::Covering(covering_by_name(name)?)
        }
        "mixed-fibred" => {
            let hopf = function_hopf(field, &c2);
            let fixed = GSet { points: 1, action: vec![vec![0, 0]] };
            BuiltObject::Fibred(assemble_from_fibers(
                hopf,
                &[
                    gset_coaction(field, &c2, &swap_gset())?,
                    gset_coaction(field, &c2, &fixed)?,
                ],
            )?)
        }
        "free-fibred" => {
            let hopf = function_hopf(field, &c2);
            BuiltObject::Fibred(assemble_from_fibers(
                hopf,
                &[
                    gset_coaction(field, &c2, &swap_gset())?,
                    gset_coaction(field, &c2, &swap_gset())?,
                ],
            )?)
        }
        _ => unreachable!("registry entry without a builder: {name}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::canonical_map;

    #[test]
    fn every_entry_builds_over_a_supported_field() {
        for entry in registry() {
            let field = match entry.fields {
                FieldSupport::Any => FieldSpec::Rationals,
                FieldSupport::Fixed(f) => f,
            };
            let built = build_example(entry.name, field);
            assert!(built.is_ok(), "{}: {:?}", entry.name, built.err());
        }
    }

    #[test]
    fn fixed_field_entries_reject_other_fields() {
        let err = build_example("f4-over-f2", FieldSpec::Rationals).unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)));
        let err = build_example("gauss-qi", FieldSpec::PrimeField(5)).unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)));
    }

    #[test]
    fn unknown_names_are_input_errors_listing_choices() {
        match build_example("no-such-example", FieldSpec::Rationals) {
            Err(Error::InvalidInput(msg)) => assert!(msg.contains("z2-free-2")),
            other => panic!("expected an input error, got {other:?}"),
        }
    }

    #[test]
    fn named_verdicts_match_their_summaries() {
        let field = FieldSpec::Rationals;
        let (c, base) = build_example("z2-free-2", field).unwrap().coaction(field).unwrap();
        assert!(base.is_none());
        assert!(canonical_map(&c, None).unwrap().bijective);

        let (c, base) = build_example("cbrt2", field).unwrap().coaction(field).unwrap();
        let rep = canonical_map(&c, base.as_ref()).unwrap();
        assert!(!rep.injective);
        assert_eq!((rep.domain_dim, rep.rank), (9, 3));

        let (c, _) = build_example("z2-hopf", field).unwrap().coaction(field).unwrap();
        assert!(canonical_map(&c, None).unwrap().bijective);
    }

    #[test]
    fn open_field_entries_build_over_primes() {
        for name in ["z2-free-2", "z2-fixpoint-3", "s3-cosets-3", "z3-regular-cover"] {
            assert!(build_example(name, FieldSpec::PrimeField(5)).is_ok(), "{name}");
        }
    }
}
