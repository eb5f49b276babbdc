use std::time::{Duration, Instant};

use crate::error::{Error, Result};

/// Resource bounds shared by every computation in a ring context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest monomial degree any Gröbner computation may reach.
    pub degree_cap: u32,
    /// Wall-clock deadline; `None` means unbounded.
    pub deadline: Option<Instant>,
    /// Largest free-module rank a resolution step may produce.
    pub max_rank: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { degree_cap: 64, deadline: None, max_rank: 4000 }
    }
}

impl Limits {
    pub fn with_timeout(mut self, t: Duration) -> Self {
        self.deadline = Some(Instant::now() + t);
        self
    }

    pub fn check_time(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() >= d => Err(Error::ResourceCap("deadline reached".into())),
            _ => Ok(()),
        }
    }

    pub fn check_degree(&self, degree: u32) -> Result<()> {
        if degree > self.degree_cap {
            Err(Error::DegreeCapExceeded { cap: self.degree_cap, degree })
        } else {
            Ok(())
        }
    }

    pub fn check_rank(&self, rank: usize, what: &str) -> Result<()> {
        if rank > self.max_rank {
            Err(Error::ResourceCap(format!("{what} has rank {rank} > {}", self.max_rank)))
        } else {
            Ok(())
        }
    }
}
