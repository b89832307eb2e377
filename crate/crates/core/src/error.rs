use thiserror::Error;

/// Errors raised by group construction and the subgroup-level operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("malformed permutation: {0}")]
    MalformedPermutation(String),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("group too large: closure exceeded the element budget of {budget}")]
    GroupTooLarge { budget: usize },
    #[error(
        "enumeration too large: order {order} exceeds the subgroup-enumeration budget of {budget}"
    )]
    EnumerationTooLarge { order: usize, budget: usize },
    #[error("element not in parent group: {0}")]
    NotInParent(String),
    #[error("subgroups belong to different parent groups")]
    MismatchedParents,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("subgroup is not normal")]
    NotNormal,
}

impl GroupError {
    /// Budget exhaustion, as opposed to a malformed request.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            GroupError::GroupTooLarge { .. } | GroupError::EnumerationTooLarge { .. }
        )
    }
}

pub type Result<T, E = GroupError> = std::result::Result<T, E>;
