//! Combinatorics of symmetry classes: sequences, group orbits,
//! stabilizers, and the admissible representative set that indexes a
//! symmetry class of tensors.
//!
//! Throughout, a *sequence* is a multi-index `alpha = (alpha_1, ..,
//! alpha_m)` with entries in `0..n` (0-based internally; 1-based only at
//! JSON/display boundaries). A permutation group `G` of degree `m` acts on
//! positions: `(alpha . sigma)_i = alpha_{sigma(i)}`.

use num_complex::Complex64 as C64;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::perm::{Character, Permutation, PermutationGroup};

/// All `n^m` sequences in lexicographic order.
pub fn enumerate_sequences(m: usize, n: usize, caps: &Caps) -> Result<Vec<Vec<usize>>> {
    let count = sequence_count(m, n, caps)?;
    let mut out = Vec::with_capacity(count);
    let mut current = vec![0usize; m];
    loop {
        out.push(current.clone());
        // Lexicographic increment with the last position fastest.
        let mut pos = m;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            current[pos] += 1;
            if current[pos] < n {
                break;
            }
            current[pos] = 0;
        }
    }
}

/// `n^m`, checked against the sequence cap.
pub fn sequence_count(m: usize, n: usize, caps: &Caps) -> Result<usize> {
    if n == 0 {
        return Err(Error::Validation("sequence alphabet size must be >= 1".into()));
    }
    let count = n
        .checked_pow(m as u32)
        .ok_or_else(|| Error::Capacity(format!("sequence count {n}^{m} overflows")))?;
    if count > caps.max_sequences {
        return Err(Error::Capacity(format!(
            "sequence count {count} exceeds cap {}",
            caps.max_sequences
        )));
    }
    Ok(count)
}

/// Position of a sequence in lexicographic order: the first entry is the
/// most significant digit, matching the index layout of Kronecker powers.
pub fn sequence_index(alpha: &[usize], n: usize) -> usize {
    alpha.iter().fold(0, |acc, &a| acc * n + a)
}

/// Right action on positions: `(alpha . sigma)_i = alpha_{sigma(i)}`.
pub fn act(alpha: &[usize], sigma: &Permutation) -> Vec<usize> {
    (0..alpha.len()).map(|i| alpha[sigma.apply(i)]).collect()
}

/// Indices (into the group's canonical element order) of the stabilizer
/// `{sigma in G : alpha . sigma = alpha}`.
pub fn stabilizer(alpha: &[usize], group: &PermutationGroup) -> Vec<usize> {
    group
        .elements()
        .iter()
        .enumerate()
        .filter(|(_, sigma)| act(alpha, sigma) == alpha)
        .map(|(i, _)| i)
        .collect()
}

/// `Sum_{sigma in stabilizer(alpha)} chi(sigma)`. Exactly `nu(alpha)` when
/// the stabilizer lies in the kernel of `chi`, exactly `0` otherwise.
pub fn stabilizer_character_sum(
    alpha: &[usize],
    group: &PermutationGroup,
    character: &Character,
) -> C64 {
    stabilizer(alpha, group)
        .into_iter()
        .map(|i| character.value(i))
        .sum()
}

/// Lexicographically least representative of each G-orbit on sequences,
/// listed in lexicographic order.
pub fn orbit_representatives(
    m: usize,
    n: usize,
    group: &PermutationGroup,
    caps: &Caps,
) -> Result<Vec<Vec<usize>>> {
    Ok(orbit_scan(m, n, group, caps)?.0)
}

/// Single lexicographic sweep computing orbit representatives and, for
/// each, its stabilizer order. A sequence seen for the first time in a lex
/// sweep is automatically the least element of its orbit.
fn orbit_scan(
    m: usize,
    n: usize,
    group: &PermutationGroup,
    caps: &Caps,
) -> Result<(Vec<Vec<usize>>, Vec<usize>)> {
    if group.degree() != m {
        return Err(Error::Shape(format!(
            "group degree {} does not match sequence length {m}",
            group.degree()
        )));
    }
    let count = sequence_count(m, n, caps)?;
    let mut visited = vec![false; count];
    let mut reps = Vec::new();
    let mut nus = Vec::new();
    for alpha in enumerate_sequences(m, n, caps)? {
        if visited[sequence_index(&alpha, n)] {
            continue;
        }
        let mut orbit_size = 0usize;
        let mut nu = 0usize;
        for sigma in group.elements() {
            let image = act(&alpha, sigma);
            if image == alpha {
                nu += 1;
            }
            let idx = sequence_index(&image, n);
            if !visited[idx] {
                visited[idx] = true;
                orbit_size += 1;
            }
        }
        debug_assert_eq!(orbit_size * nu, group.order(), "orbit-stabilizer mismatch");
        reps.push(alpha);
        nus.push(nu);
    }
    Ok((reps, nus))
}

/// The combinatorial skeleton of a symmetry class of tensors for
/// `(G <= S_m, chi, n)`: orbit representatives, the admissible subset
/// whose stabilizers lie in `ker chi`, and their stabilizer orders.
#[derive(Clone, Debug)]
pub struct SymmetryClass {
    n: usize,
    group: PermutationGroup,
    character: Character,
    delta: Vec<Vec<usize>>,
    delta_bar: Vec<Vec<usize>>,
    nu: Vec<usize>,
}

impl SymmetryClass {
    pub fn new(
        n: usize,
        group: PermutationGroup,
        character: Character,
        caps: &Caps,
    ) -> Result<Self> {
        if character.len() != group.order() {
            return Err(Error::Validation(format!(
                "character is defined on {} elements but the group has order {}",
                character.len(),
                group.order()
            )));
        }
        let m = group.degree();
        let (delta, delta_nus) = orbit_scan(m, n, &group, caps)?;
        let mut delta_bar = Vec::new();
        let mut nu = Vec::new();
        for (alpha, &alpha_nu) in delta.iter().zip(&delta_nus) {
            // Kernel test is exact: integer root-of-unity exponents.
            let admissible = stabilizer(alpha, &group)
                .into_iter()
                .all(|i| character.is_in_kernel(i));
            if admissible {
                delta_bar.push(alpha.clone());
                nu.push(alpha_nu);
            }
        }
        Ok(SymmetryClass { n, group, character, delta, delta_bar, nu })
    }

    pub fn m(&self) -> usize {
        self.group.degree()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn group(&self) -> &PermutationGroup {
        &self.group
    }

    pub fn character(&self) -> &Character {
        &self.character
    }

    /// Orbit representatives (lex-least, lex-ordered) of all of `Gamma`.
    pub fn delta(&self) -> &[Vec<usize>] {
        &self.delta
    }

    /// The admissible representatives indexing the symmetry class.
    pub fn delta_bar(&self) -> &[Vec<usize>] {
        &self.delta_bar
    }

    /// Stabilizer orders aligned with `delta_bar`.
    pub fn nu(&self) -> &[usize] {
        &self.nu
    }

    /// Dimension of the symmetry class.
    pub fn dimension(&self) -> usize {
        self.delta_bar.len()
    }
}
