//! Canonical bases of the highest weight modules `V_e(s)` and `V_inf(s)`.
//!
//! Each crystal vertex gets a bar-invariant monomial `A(lambda)` in divided
//! powers along its peeling path. Subtracting bar-invariant multiples of
//! already-computed basis vectors, largest offending term first, brings every
//! coefficient other than the diagonal one into `v Z[v]`.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::combinatorics::{gamma_lex_cmp, sort_desc, Modulus, Multicharge, Multipartition};
use crate::crystal::{generate_component, peeling_sequence, CrystalGraph, PeelStep};
use crate::error::{Error, Result};
use crate::fock::{FockSpace, FockVector};
use crate::laurent::LaurentPoly;

#[derive(Clone, Debug)]
pub struct CanonicalElement {
    pub label: Multipartition,
    /// Peeling path of the monomial this vector was reduced from, outermost
    /// step first. For a non-dominant charge this is the path in the dominant
    /// crystal.
    pub peeling: Vec<PeelStep>,
    pub monomial: FockVector,
    pub vector: FockVector,
    /// Expansion of `vector` in the monomial basis, keyed by monomial label.
    pub monomial_expansion: BTreeMap<Multipartition, LaurentPoly>,
}

#[derive(Clone, Debug)]
pub struct CanonicalBasisSet {
    pub space: FockSpace,
    pub rank: usize,
    /// Sorted descending in the gamma-lex order of their labels.
    pub elements: Vec<CanonicalElement>,
}

impl CanonicalBasisSet {
    pub fn labels(&self) -> Vec<Multipartition> {
        self.elements.iter().map(|g| g.label.clone()).collect()
    }

    pub fn get(&self, label: &Multipartition) -> Option<&CanonicalElement> {
        self.elements.iter().find(|g| &g.label == label)
    }

    pub fn vector(&self, label: &Multipartition) -> Option<&FockVector> {
        self.get(label).map(|g| &g.vector)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Applies `f_{i1}^(u1) ... f_{it}^(ut)` to the vacuum (innermost step last
/// in `steps`).
pub fn apply_peeling(space: &FockSpace, steps: &[PeelStep]) -> Result<FockVector> {
    let mut x = space.vacuum();
    for &(color, u) in steps.iter().rev() {
        x = space.apply_f_divided(&x, color, u)?;
    }
    Ok(x)
}

/// The divided-power monomial along the peeling path of `lambda`, without
/// checking its coefficient at `lambda`.
pub fn peeling_monomial(lambda: &Multipartition, space: &FockSpace) -> Result<(Vec<PeelStep>, FockVector)> {
    let steps = peeling_sequence(lambda, space)?;
    let a = apply_peeling(space, &steps)?;
    Ok((steps, a))
}

/// The divided-power monomial `A(lambda)` for a crystal vertex, with its
/// peeling path; its coefficient at `lambda` must be 1.
pub fn build_a(lambda: &Multipartition, space: &FockSpace) -> Result<(Vec<PeelStep>, FockVector)> {
    let (steps, a) = peeling_monomial(lambda, space)?;
    let diag = a.coeff(lambda);
    if !diag.is_one() {
        return Err(Error::PeelingUnitriangularityViolated {
            label: lambda.to_string(),
            coeff: diag.to_string(),
        });
    }
    Ok((steps, a))
}

/// Gamma-lex greatest term other than `label` whose coefficient is not in `v Z[v]`.
fn top_offender(x: &FockVector, label: &Multipartition, charge: &Multicharge) -> Option<Multipartition> {
    x.iter()
        .filter(|(m, c)| *m != label && !c.in_v_z_v())
        .map(|(m, _)| m)
        .max_by(|a, b| gamma_lex_cmp(a, b, charge))
        .cloned()
}

enum Reduced {
    Done(CanonicalElement),
    /// Needs the basis vector of this (not yet computed) vertex first.
    Blocked(Multipartition),
}

/// Subtracts bar-invariant multiples of known basis vectors from `monomial`,
/// largest offending term first. The monomial is `G(label)` plus
/// bar-invariant multiples of other basis vectors, which at level 3 and up
/// may sit above `label` in the gamma-lex order.
fn reduce(
    label: &Multipartition,
    peeling: &[PeelStep],
    monomial: &FockVector,
    done: &BTreeMap<Multipartition, CanonicalElement>,
    vertices: &BTreeSet<Multipartition>,
    charge: &Multicharge,
) -> Result<Reduced> {
    let mut vector = monomial.clone();
    let mut expansion = BTreeMap::from([(label.clone(), LaurentPoly::one())]);
    let bound = monomial.len() * 64 + 64;
    for _ in 0..bound {
        let Some(mu) = top_offender(&vector, label, charge) else {
            let diag = vector.coeff(label);
            if !diag.is_one() {
                return Err(Error::PeelingUnitriangularityViolated {
                    label: label.to_string(),
                    coeff: diag.to_string(),
                });
            }
            return Ok(Reduced::Done(CanonicalElement {
                label: label.clone(),
                peeling: peeling.to_vec(),
                monomial: monomial.clone(),
                vector,
                monomial_expansion: expansion,
            }));
        };
        let Some(prev) = done.get(&mu) else {
            if vertices.contains(&mu) {
                return Ok(Reduced::Blocked(mu));
            }
            return Err(Error::MissingPredecessor {
                label: label.to_string(),
                offender: mu.to_string(),
            });
        };
        let m = vector.coeff(&mu).bar_symmetric_part();
        vector -= &prev.vector.scale(&m);
        for (k, c) in &prev.monomial_expansion {
            let slot = expansion.entry(k.clone()).or_default();
            *slot -= &(c * &m);
        }
        expansion.retain(|_, c| !c.is_zero());
    }
    Err(Error::NonTermination(label.to_string()))
}

/// The canonical basis of `V(s)` at rank `n`, computed from the crystal of `s`.
pub fn canonical_basis(space: &FockSpace, n: usize) -> Result<CanonicalBasisSet> {
    let crystal = generate_component(space, n);
    canonical_basis_from_crystal(&crystal, n)
}

pub fn canonical_basis_from_crystal(crystal: &CrystalGraph, n: usize) -> Result<CanonicalBasisSet> {
    let space = &crystal.space;
    let labels = crystal.vertices(n);
    let monomials: Vec<(Vec<PeelStep>, FockVector)> = labels
        .par_iter()
        .map(|label| peeling_monomial(label, space))
        .collect::<Result<_>>()?;
    let vertices: BTreeSet<Multipartition> = labels.iter().cloned().collect();
    let mut done: BTreeMap<Multipartition, CanonicalElement> = BTreeMap::new();
    // Offenders are usually lower, so go bottom up and retry blocked labels
    // once their dependencies are in.
    let mut pending: Vec<usize> = (0..labels.len()).rev().collect();
    while !pending.is_empty() {
        let mut blocked = Vec::new();
        let mut last_block = None;
        for &i in &pending {
            let (peeling, a) = &monomials[i];
            match reduce(&labels[i], peeling, a, &done, &vertices, &space.charge)? {
                Reduced::Done(g) => {
                    done.insert(labels[i].clone(), g);
                }
                Reduced::Blocked(mu) => {
                    blocked.push(i);
                    last_block = Some((i, mu));
                }
            }
        }
        if blocked.len() == pending.len() {
            let (i, mu) = last_block.expect("nonempty");
            return Err(Error::OrderViolation {
                label: labels[i].to_string(),
                offender: mu.to_string(),
            });
        }
        pending = blocked;
    }
    let mut elements: Vec<CanonicalElement> = done.into_values().collect();
    elements.sort_by(|a, b| gamma_lex_cmp(&b.label, &a.label, &space.charge));
    Ok(CanonicalBasisSet {
        space: space.clone(),
        rank: n,
        elements,
    })
}

/// Representative of the charge in the fundamental domain
/// `0 <= s_1 <= ... <= s_l < e` (for `e = infinity`, just sorted), and
/// whether the input already was that representative.
pub fn reduce_charge(charge: &Multicharge, modulus: Modulus) -> (Multicharge, bool) {
    let mut s: Vec<i64> = charge
        .as_slice()
        .iter()
        .map(|&x| match modulus {
            Modulus::Finite(e) => x.rem_euclid(i64::from(e)),
            Modulus::Infinite => x,
        })
        .collect();
    s.sort_unstable();
    let dominant = s.as_slice() == charge.as_slice();
    (Multicharge::new(s).expect("nonempty"), dominant)
}

/// Canonical basis for an arbitrary charge: monomials use the peeling paths of
/// the dominant representative and the change of basis computed there; each
/// resulting vector is labeled by its unique coefficient outside `v Z[v]`.
pub fn canonical_basis_any_charge(modulus: Modulus, charge: &Multicharge, n: usize) -> Result<CanonicalBasisSet> {
    let (dominant, is_dominant) = reduce_charge(charge, modulus);
    let target = FockSpace::new(charge.clone(), modulus);
    if is_dominant {
        return canonical_basis(&target, n);
    }
    let reference = canonical_basis(&FockSpace::new(dominant, modulus), n)?;

    let mut monomials: BTreeMap<Multipartition, FockVector> = BTreeMap::new();
    for g in &reference.elements {
        monomials.insert(g.label.clone(), apply_peeling(&target, &g.peeling)?);
    }

    let mut elements = Vec::with_capacity(reference.len());
    for g in &reference.elements {
        let mut vector = FockVector::zero();
        for (k, c) in &g.monomial_expansion {
            vector += &monomials[k].scale(c);
        }
        let heads: Vec<&Multipartition> = vector.iter().filter(|(_, c)| !c.in_v_z_v()).map(|(m, _)| m).collect();
        let label = match heads.as_slice() {
            [m] if vector.coeff(m).is_one() => (*m).clone(),
            _ => {
                return Err(Error::PeelingUnitriangularityViolated {
                    label: g.label.to_string(),
                    coeff: format!("{} terms outside v Z[v]", heads.len()),
                })
            }
        };
        elements.push(CanonicalElement {
            label,
            peeling: g.peeling.clone(),
            monomial: monomials[&g.label].clone(),
            vector,
            monomial_expansion: g.monomial_expansion.clone(),
        });
    }
    elements.sort_by(|a, b| gamma_lex_cmp(&b.label, &a.label, charge));
    Ok(CanonicalBasisSet {
        space: target,
        rank: n,
        elements,
    })
}

/// Labels of a basis set in the deterministic output order.
pub fn sorted_labels(set: &CanonicalBasisSet) -> Vec<Multipartition> {
    let mut labels = set.labels();
    sort_desc(&mut labels, &set.space.charge);
    labels
}
