//! Permutations, permutation groups, and their JSON wire format.

pub mod character;

pub use character::{enumerate_characters, Character, CharacterSpec};

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

/// Permutation of `{0, .., n-1}` in one-line notation: `images[i] = sigma(i)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree).collect() }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &img in &images {
            if img >= n || seen[img] {
                return Err(Error::Validation(format!(
                    "images {images:?} are not a permutation of 0..{n}"
                )));
            }
            seen[img] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from 1-based images as used in the JSON format.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        let shifted: Vec<usize> = images
            .iter()
            .map(|&v| {
                v.checked_sub(1).ok_or_else(|| {
                    Error::Validation("1-based permutation images must be >= 1".into())
                })
            })
            .collect::<Result<_>>()?;
        Self::from_images(shifted)
    }

    /// Builds a permutation of `0..degree` from disjoint 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        for cycle in cycles {
            for w in 0..cycle.len() {
                let from = cycle[w];
                let to = cycle[(w + 1) % cycle.len()];
                if from >= degree || to >= degree {
                    return Err(Error::Validation(format!(
                        "cycle point out of range for degree {degree}"
                    )));
                }
                images[from] = to;
            }
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn one_based_images(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Composition acting on the right: `(self.compose(other))(i) =
    /// self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v] = i;
        }
        Permutation { images }
    }

    /// Order of the permutation: least common multiple of its cycle lengths.
    pub fn order(&self) -> usize {
        self.cycles().iter().fold(1, |acc, c| lcm(acc, c.len()))
    }

    /// Sign of the permutation via inversion count: `+1` even, `-1` odd.
    pub fn sign(&self) -> i32 {
        let mut inversions = 0usize;
        for i in 0..self.images.len() {
            for j in (i + 1)..self.images.len() {
                if self.images[i] > self.images[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Cycle decomposition, fixed points included, each cycle led by its
    /// smallest point, cycles sorted by leading point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut point = self.images[start];
            while point != start {
                seen[point] = true;
                cycle.push(point);
                point = self.images[point];
            }
            out.push(cycle);
        }
        out
    }

    /// Permutation matrix with entry `(k, sigma(k)) = 1`. With this
    /// convention, permuting the columns of `A` by right-multiplication
    /// `A * P` sends column `sigma(k)` of the product to column `k` of `A`.
    pub fn matrix(&self) -> ComplexMatrix {
        let n = self.degree();
        let mut m = ComplexMatrix::zeros(n, n);
        for (k, &img) in self.images.iter().enumerate() {
            m.set(k, img, crate::linalg::cx(1.0, 0.0));
        }
        m
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation with 1-based points, e.g. `(1 2 3)(4 5)`; identity
    /// prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nontrivial: Vec<Vec<usize>> =
            self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if nontrivial.is_empty() {
            return write!(f, "()");
        }
        for cycle in nontrivial {
            write!(f, "(")?;
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Finite permutation group stored as its full, canonically ordered element
/// list (identity first, remaining elements in lexicographic one-line
/// order), together with the generators it was built from.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(try_from = "GroupJson", into = "GroupJson")]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
}

impl PermutationGroup {
    /// Closure of the generators under composition, capped by
    /// `caps.max_group_order`.
    pub fn from_generators(
        degree: usize,
        generators: Vec<Permutation>,
        caps: &Caps,
    ) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Validation("group degree must be at least 1".into()));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::Shape(format!(
                    "generator degree {} does not match group degree {degree}",
                    g.degree()
                )));
            }
        }
        let mut set: BTreeSet<Permutation> = BTreeSet::new();
        set.insert(Permutation::identity(degree));
        let mut frontier: Vec<Permutation> = set.iter().cloned().collect();
        while let Some(p) = frontier.pop() {
            for g in &generators {
                let next = g.compose(&p);
                if set.insert(next.clone()) {
                    if set.len() > caps.max_group_order {
                        return Err(Error::Capacity(format!(
                            "group closure exceeds cap {}",
                            caps.max_group_order
                        )));
                    }
                    frontier.push(next);
                }
            }
        }
        // BTreeSet iterates in lexicographic order and the identity is the
        // lexicographically least permutation, so it comes first.
        let elements: Vec<Permutation> = set.into_iter().collect();
        debug_assert!(elements[0].is_identity());
        Ok(PermutationGroup { degree, generators, elements })
    }

    /// Full symmetric group on `{1..n}`.
    pub fn symmetric(n: usize, caps: &Caps) -> Result<Self> {
        let gens = match n {
            0 => return Err(Error::Validation("group degree must be at least 1".into())),
            1 => vec![],
            2 => vec![Permutation::from_cycles(2, &[&[0, 1]])?],
            _ => vec![
                Permutation::from_cycles(n, &[&[0, 1]])?,
                Permutation::from_cycles(n, &[&(0..n).collect::<Vec<_>>()])?,
            ],
        };
        Self::from_generators(n, gens, caps)
    }

    /// Alternating group on `{1..n}` (trivial for n < 3).
    pub fn alternating(n: usize, caps: &Caps) -> Result<Self> {
        let mut gens = Vec::new();
        for i in 0..n.saturating_sub(2) {
            gens.push(Permutation::from_cycles(n, &[&[i, i + 1, i + 2]])?);
        }
        Self::from_generators(n, gens, caps)
    }

    /// Cyclic group generated by the full n-cycle `(1 2 .. n)`.
    pub fn cyclic(n: usize, caps: &Caps) -> Result<Self> {
        let gens = if n >= 2 {
            vec![Permutation::from_cycles(n, &[&(0..n).collect::<Vec<_>>()])?]
        } else {
            vec![]
        };
        Self::from_generators(n, gens, caps)
    }

    /// Trivial group acting on `{1..n}`.
    pub fn trivial(n: usize, caps: &Caps) -> Result<Self> {
        Self::from_generators(n, vec![], caps)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Elements in canonical order: identity first, then lexicographic.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, index: usize) -> &Permutation {
        &self.elements[index]
    }

    /// Index of a permutation in the canonical element order.
    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.elements.binary_search(p).ok()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index_of(p).is_some()
    }

    /// True when this is the full symmetric group on its degree.
    pub fn is_full_symmetric(&self) -> bool {
        self.order() == factorial(self.degree)
    }

    /// True when the group contains only the identity.
    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }
}

pub(crate) fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Binomial coefficient `C(n, k)` in exact integer arithmetic.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut num = 1usize;
    for i in 0..k {
        num = num * (n - i) / (i + 1);
    }
    num
}

/// Enumerates every subgroup of the symmetric group on `degree` points that
/// is generated by at most two elements, deduplicated by element set. For
/// `degree <= 4` every subgroup is at most 2-generated, so this is the
/// complete subgroup list.
pub fn two_generated_subgroups(degree: usize, caps: &Caps) -> Result<Vec<PermutationGroup>> {
    let full = PermutationGroup::symmetric(degree, caps)?;
    let elems = full.elements().to_vec();
    let mut seen: BTreeSet<Vec<Permutation>> = BTreeSet::new();
    let mut out = Vec::new();
    for i in 0..elems.len() {
        for j in i..elems.len() {
            let gens: Vec<Permutation> = if i == 0 {
                // Element 0 is the identity; drop it so the one-generator
                // subgroups appear with a single generator.
                if j == 0 { vec![] } else { vec![elems[j].clone()] }
            } else {
                vec![elems[i].clone(), elems[j].clone()]
            };
            let g = PermutationGroup::from_generators(degree, gens, caps)?;
            if seen.insert(g.elements().to_vec()) {
                out.push(g);
            }
        }
    }
    Ok(out)
}

#[derive(Serialize, Deserialize)]
struct GroupJson {
    degree: usize,
    generators: Vec<Vec<usize>>,
}

impl TryFrom<GroupJson> for PermutationGroup {
    type Error = Error;
    fn try_from(j: GroupJson) -> Result<Self> {
        let gens = j
            .generators
            .iter()
            .map(|images| {
                if images.len() != j.degree {
                    return Err(Error::Shape(format!(
                        "generator has {} images but degree is {}",
                        images.len(),
                        j.degree
                    )));
                }
                Permutation::from_one_based(images)
            })
            .collect::<Result<Vec<_>>>()?;
        PermutationGroup::from_generators(j.degree, gens, &Caps::from_env())
    }
}

impl From<PermutationGroup> for GroupJson {
    fn from(g: PermutationGroup) -> GroupJson {
        GroupJson {
            degree: g.degree,
            generators: g.generators.iter().map(|p| p.one_based_images()).collect(),
        }
    }
}
