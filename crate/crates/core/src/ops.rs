use std::ops::AddAssign;

/// Base-operation tallies, owned by the caller and threaded through counted queries.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OpCounts {
    /// Evaluations of the underlying permutation (array reads or black-box calls).
    pub evals: u64,
    pub forward_calls: u64,
    pub inverse_calls: u64,
    /// Switch bits read while tracing a Benes path.
    pub bit_reads: u64,
    /// Central permuter evaluations.
    pub central: u64,
    /// Rank, select and membership queries on dictionaries.
    pub dict: u64,
    /// Tree navigation primitives.
    pub tree: u64,
}

impl OpCounts {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn reset(&mut self) {
        *self = Self::default();
    }
}

impl AddAssign for OpCounts {
    fn add_assign(&mut self, o: OpCounts) {
        self.evals += o.evals;
        self.forward_calls += o.forward_calls;
        self.inverse_calls += o.inverse_calls;
        self.bit_reads += o.bit_reads;
        self.central += o.central;
        self.dict += o.dict;
        self.tree += o.tree;
    }
}
