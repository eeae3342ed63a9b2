use std::time::Duration;

use thiserror::Error;

/// Errors produced across the workbench.
///
/// `Budget` is kept apart from every other variant so that an exhausted
/// search is never read as a negative answer.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HatError {
    #[error("graph6 parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("search budget exceeded after {nodes} nodes ({reason})")]
    Budget { nodes: u64, reason: String },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("precondition not met: {0}")]
    Precondition(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("construction failed: {message}")]
    ConstructionFailure { message: String, witness: String },

    #[error("claim violated: {message} (witness: {witness})")]
    ClaimViolation { message: String, witness: String },

    #[error("input error: {0}")]
    Input(String),
}

impl HatError {
    pub fn contract(msg: impl Into<String>) -> Self {
        HatError::Contract(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        HatError::Precondition(msg.into())
    }

    pub fn claim(message: impl Into<String>, witness: impl Into<String>) -> Self {
        HatError::ClaimViolation { message: message.into(), witness: witness.into() }
    }

    /// Process exit code used by the command-line frontend.
    pub fn exit_code(&self) -> i32 {
        match self {
            HatError::Budget { .. } => 2,
            HatError::ClaimViolation { .. } => 4,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, HatError>;

/// Node and wall-clock caps for exhaustive searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: u64,
    pub max_time: Option<Duration>,
}

impl Budget {
    pub const DEFAULT_NODES: u64 = 100_000_000;
    pub const DEFAULT_SECS: u64 = 60;

    pub fn new(max_nodes: u64, max_time: Option<Duration>) -> Self {
        Budget { max_nodes, max_time }
    }

    pub fn nodes(max_nodes: u64) -> Self {
        Budget { max_nodes, max_time: None }
    }

    pub fn unlimited() -> Self {
        Budget { max_nodes: u64::MAX, max_time: None }
    }

    pub fn meter(&self) -> Meter {
        Meter { budget: *self, nodes: 0, started: std::time::Instant::now() }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: Self::DEFAULT_NODES,
            max_time: Some(Duration::from_secs(Self::DEFAULT_SECS)),
        }
    }
}

/// Running counter against a [`Budget`].
#[derive(Debug, Clone)]
pub struct Meter {
    budget: Budget,
    nodes: u64,
    started: std::time::Instant,
}

impl Meter {
    #[inline]
    pub fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes {
            return Err(HatError::Budget { nodes: self.nodes, reason: "node cap".into() });
        }
        if let Some(limit) = self.budget.max_time {
            // checking the clock every node is measurable in the solver loop
            if self.nodes & 0x3ff == 0 && self.started.elapsed() > limit {
                return Err(HatError::Budget { nodes: self.nodes, reason: "time cap".into() });
            }
        }
        Ok(())
    }

    pub fn nodes(&self) -> u64 {
        self.nodes
    }
}
