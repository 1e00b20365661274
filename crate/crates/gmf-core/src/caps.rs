//! Size caps guarding the operations that can blow up combinatorially.

/// Capacity limits for tensor powers, sequence enumeration, group closure,
/// and permanent evaluation.
///
/// Everything in this crate is desk-scale by design; the caps turn an
/// accidental `kron_power(a, 12)` into an error instead of an OOM.
#[derive(Debug, Clone)]
pub struct Caps {
    /// Maximum number of entries in any single dense matrix.
    pub max_matrix_entries: usize,
    /// Maximum number of index sequences enumerated at once.
    pub max_sequences: usize,
    /// Maximum order of an explicitly enumerated permutation group.
    pub max_group_order: usize,
    /// Maximum dimension accepted by the permanent fast path.
    pub max_permanent_dim: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_matrix_entries: 1 << 20,
            max_sequences: 1 << 20,
            max_group_order: 5040,
            max_permanent_dim: 20,
        }
    }
}

impl Caps {
    /// Default caps, with `GMF_SIZE_CAP` (if set) overriding the
    /// matrix-entry and sequence caps.
    pub fn from_env() -> Self {
        let mut caps = Caps::default();
        if let Ok(v) = std::env::var("GMF_SIZE_CAP") {
            if let Ok(n) = v.trim().parse::<usize>() {
                caps.max_matrix_entries = n;
                caps.max_sequences = n;
            }
        }
        caps
    }

    /// Largest dimension a square matrix may have under the entry cap.
    pub fn max_dim(&self) -> usize {
        self.max_matrix_entries.isqrt()
    }
}
