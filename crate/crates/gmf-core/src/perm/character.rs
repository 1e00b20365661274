//! Degree-one (linear) characters of permutation groups.
//!
//! A linear character maps every group element to a root of unity and turns
//! products into products. Internally a character is stored as an exact
//! integer exponent per element: element `g` maps to `exp(2*pi*i * k_g / L)`
//! where `L` is a common modulus. Exact exponents keep sign characters at
//! exactly `+/-1` and make kernel membership a plain integer test.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

use super::{lcm, PermutationGroup};
use crate::error::{Error, Result};
use crate::linalg::cx;

/// Tolerance for accepting user-supplied character values: each value must
/// sit within this distance of an exact root of unity of the right order.
pub const CHARACTER_TOL: f64 = 1e-12;

/// Linear character of a specific group, stored as exact root-of-unity
/// exponents aligned with the group's canonical element order.
#[derive(Clone, Debug, PartialEq)]
pub struct Character {
    name: String,
    modulus: u64,
    exponents: Vec<u64>,
    values: Vec<C64>,
}

impl Character {
    /// The principal character: 1 on every element.
    pub fn trivial(group: &PermutationGroup) -> Character {
        Character::from_exponents("trivial".into(), 1, vec![0; group.order()])
    }

    /// Restriction of the permutation sign to the group. For a group of
    /// even permutations this coincides with the trivial character.
    pub fn sign(group: &PermutationGroup) -> Character {
        let exponents = group
            .elements()
            .iter()
            .map(|p| if p.sign() == 1 { 0 } else { 1 })
            .collect();
        Character::from_exponents("sign".into(), 2, exponents)
    }

    fn from_exponents(name: String, modulus: u64, exponents: Vec<u64>) -> Character {
        let values = exponents
            .iter()
            .map(|&k| root_of_unity(k, modulus))
            .collect();
        Character { name, modulus, exponents, values }
    }

    /// Builds the character determined by one root-of-unity value per
    /// generator of `group`, checking that each value is (within
    /// [`CHARACTER_TOL`]) a root of unity compatible with the generator's
    /// order and that the assignment extends to a homomorphism on the whole
    /// group.
    pub fn from_generator_values(group: &PermutationGroup, values: &[C64]) -> Result<Character> {
        if values.len() != group.generators().len() {
            return Err(Error::Shape(format!(
                "got {} generator values for {} generators",
                values.len(),
                group.generators().len()
            )));
        }
        let orders: Vec<u64> = group.generators().iter().map(|g| g.order() as u64).collect();
        let modulus = orders.iter().fold(1u64, |acc, &o| lcm(acc as usize, o as usize) as u64);
        let mut gen_exponents = Vec::with_capacity(values.len());
        for (idx, (&v, &o)) in values.iter().zip(&orders).enumerate() {
            // Snap to the nearest o-th root of unity, then verify the
            // original value was genuinely that close.
            let turns = v.im.atan2(v.re) / std::f64::consts::TAU;
            let k = (turns * o as f64).round().rem_euclid(o as f64) as u64 % o;
            let exact = root_of_unity(k, o);
            if (v - exact).norm() > CHARACTER_TOL {
                return Err(Error::Validation(format!(
                    "generator value {} at position {idx} is not a root of unity of order dividing {o}",
                    v
                )));
            }
            gen_exponents.push(k * (modulus / o));
        }
        let exponents = extend_over_group(group, modulus, &gen_exponents).ok_or_else(|| {
            Error::Validation(
                "generator values do not extend to a homomorphism on the group".into(),
            )
        })?;
        let mut chi = Character::from_exponents("custom".into(), modulus, exponents);
        chi.name = canonical_name(group, &chi, None);
        Ok(chi)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Character value on the element with the given canonical index.
    pub fn value(&self, element_index: usize) -> C64 {
        self.values[element_index]
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    /// The number of elements this character is defined on.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Exact test for `chi(g) == 1` on the element with the given index.
    pub fn is_in_kernel(&self, element_index: usize) -> bool {
        self.exponents[element_index] == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&k| k == 0)
    }

    /// Exact test that this character equals the sign restriction on
    /// `group` (which must be the group the character was built from).
    pub fn is_sign_of(&self, group: &PermutationGroup) -> bool {
        debug_assert_eq!(group.order(), self.len());
        group.elements().iter().zip(&self.exponents).all(|(p, &k)| {
            if p.sign() == 1 {
                k == 0
            } else {
                2 * k == self.modulus
            }
        })
    }

    /// Exponents reduced to lowest terms `(p, q)` with value
    /// `exp(2*pi*i*p/q)`; identical characters agree on this regardless of
    /// the modulus they were built with.
    pub fn reduced_exponents(&self) -> Vec<(u64, u64)> {
        self.exponents
            .iter()
            .map(|&k| {
                let g = gcd_u64(k, self.modulus);
                (k / g, self.modulus / g)
            })
            .collect()
    }
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

/// `exp(2*pi*i * k / modulus)` with exact values at the fourth roots of
/// unity, so sign characters are exactly `+/-1`.
fn root_of_unity(k: u64, modulus: u64) -> C64 {
    let g = gcd_u64(k, modulus);
    let (p, q) = (k / g, modulus / g);
    match q {
        1 => cx(1.0, 0.0),
        2 => cx(-1.0, 0.0),
        4 if p == 1 => cx(0.0, 1.0),
        4 => cx(0.0, -1.0),
        _ => {
            let angle = std::f64::consts::TAU * p as f64 / q as f64;
            cx(angle.cos(), angle.sin())
        }
    }
}

/// Propagates exponents from the generators across the Cayley graph.
/// Returns `None` when the assignment is inconsistent (not a homomorphism).
fn extend_over_group(
    group: &PermutationGroup,
    modulus: u64,
    gen_exponents: &[u64],
) -> Option<Vec<u64>> {
    let mut exponents: Vec<Option<u64>> = vec![None; group.order()];
    // Identity sits at canonical index 0 and must map to 1.
    exponents[0] = Some(0);
    let mut stack = vec![0usize];
    while let Some(idx) = stack.pop() {
        let base = exponents[idx].expect("on stack implies assigned");
        for (g, &ge) in group.generators().iter().zip(gen_exponents) {
            let child = g.compose(group.element(idx));
            let child_idx = group.index_of(&child).expect("group is closed");
            let value = (base + ge) % modulus;
            match exponents[child_idx] {
                None => {
                    exponents[child_idx] = Some(value);
                    stack.push(child_idx);
                }
                Some(existing) if existing == value => {}
                Some(_) => return None,
            }
        }
    }
    exponents.into_iter().collect()
}

fn canonical_name(group: &PermutationGroup, chi: &Character, index: Option<usize>) -> String {
    if chi.is_trivial() {
        "trivial".into()
    } else if chi.is_sign_of(group) {
        "sign".into()
    } else if let Some(i) = index {
        format!("chi{i}")
    } else {
        "custom".into()
    }
}

/// All linear characters of the group, in a canonical order (trivial
/// first, then lexicographic by exponent vector). The count equals the
/// order of the group's abelianization.
pub fn enumerate_characters(group: &PermutationGroup) -> Result<Vec<Character>> {
    let orders: Vec<u64> = group.generators().iter().map(|g| g.order() as u64).collect();
    let modulus = orders.iter().fold(1u64, |acc, &o| lcm(acc as usize, o as usize) as u64);
    let tuple_count: u128 = orders.iter().map(|&o| o as u128).product();
    if tuple_count > 100_000 {
        return Err(Error::Capacity(format!(
            "character enumeration over {tuple_count} generator assignments is not supported"
        )));
    }
    let mut found: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut tuple = vec![0u64; orders.len()];
    loop {
        let gen_exponents: Vec<u64> = tuple
            .iter()
            .zip(&orders)
            .map(|(&k, &o)| k * (modulus / o))
            .collect();
        if let Some(exponents) = extend_over_group(group, modulus, &gen_exponents) {
            found.insert(exponents);
        }
        // Advance the mixed-radix counter (k_i < o_i); stop after wrap.
        let mut pos = 0;
        loop {
            if pos == tuple.len() {
                break;
            }
            tuple[pos] += 1;
            if tuple[pos] < orders[pos] {
                break;
            }
            tuple[pos] = 0;
            pos += 1;
        }
        if pos == tuple.len() {
            break;
        }
    }
    let out: Vec<Character> = found
        .into_iter()
        .enumerate()
        .map(|(i, exponents)| {
            let mut chi = Character::from_exponents(String::new(), modulus, exponents);
            chi.name = canonical_name(group, &chi, Some(i));
            chi
        })
        .collect();
    // BTreeSet order is lexicographic on exponent vectors; the all-zero
    // (trivial) vector is first. Keep that order.
    debug_assert!(out[0].is_trivial());
    Ok(out)
}

/// JSON description of a character: either a built-in name or one explicit
/// complex value per group generator.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CharacterSpec {
    Named { name: String },
    Explicit { generator_values: Vec<[f64; 2]> },
}

impl CharacterSpec {
    /// Instantiates the description against a concrete group.
    pub fn realize(&self, group: &PermutationGroup) -> Result<Character> {
        match self {
            CharacterSpec::Named { name } => match name.as_str() {
                "trivial" => Ok(Character::trivial(group)),
                "sign" => Ok(Character::sign(group)),
                other => Err(Error::Validation(format!(
                    "unknown character name {other:?}; expected \"trivial\" or \"sign\""
                ))),
            },
            CharacterSpec::Explicit { generator_values } => {
                let values: Vec<C64> = generator_values
                    .iter()
                    .map(|&[re, im]| cx(re, im))
                    .collect();
                Character::from_generator_values(group, &values)
            }
        }
    }
}
