/// Deterministic work budget counted in abstract operations.
///
/// Searches tick the budget once per visited node; exceeding the limit
/// aborts the search with [`Error::BudgetExceeded`].
///
/// [`Error::BudgetExceeded`]: crate::Error::BudgetExceeded
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    limit: u64,
    spent: u64,
}

impl Budget {
    pub const DEFAULT_LIMIT: u64 = 50_000_000;

    pub fn new(limit: u64) -> Self {
        Budget { limit, spent: 0 }
    }

    pub fn unlimited() -> Self {
        Budget::new(u64::MAX)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn spent(&self) -> u64 {
        self.spent
    }

    pub fn tick(&mut self, ops: u64) -> crate::Result<()> {
        self.spent = self.spent.saturating_add(ops);
        if self.spent > self.limit {
            Err(crate::Error::BudgetExceeded { limit: self.limit })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(Self::DEFAULT_LIMIT)
    }
}
