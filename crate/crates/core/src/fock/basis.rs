use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Statistics {
    Bose,
    Fermi,
}

impl fmt::Display for Statistics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statistics::Bose => write!(f, "bose"),
            Statistics::Fermi => write!(f, "fermi"),
        }
    }
}

impl std::str::FromStr for Statistics {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bose" => Ok(Statistics::Bose),
            "fermi" => Ok(Statistics::Fermi),
            other => Err(Error::InvalidParameter(format!(
                "statistics must be `bose` or `fermi`, found `{other}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mode {
    statistics: Statistics,
    cutoff: usize,
}

impl Mode {
    /// Bosonic mode keeping occupations `0..cutoff`.
    pub fn bose(cutoff: usize) -> Result<Self> {
        if cutoff == 0 {
            return Err(Error::InvalidParameter("bose cutoff must be positive".into()));
        }
        Ok(Self {
            statistics: Statistics::Bose,
            cutoff,
        })
    }

    pub fn fermi() -> Self {
        Self {
            statistics: Statistics::Fermi,
            cutoff: 2,
        }
    }

    pub fn statistics(&self) -> Statistics {
        self.statistics
    }

    /// Number of occupation states kept for this mode.
    pub fn cutoff(&self) -> usize {
        self.cutoff
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.statistics {
            Statistics::Bose => write!(f, "bose:{}", self.cutoff),
            Statistics::Fermi => write!(f, "fermi"),
        }
    }
}

/// Tensor product of truncated single-mode Fock spaces.
///
/// Basis states are ordered row-major over occupation tuples, the first
/// mode being the most significant digit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FockBasis {
    modes: Vec<Mode>,
}

impl FockBasis {
    pub fn new(modes: Vec<Mode>) -> Result<Self> {
        if modes.is_empty() {
            return Err(Error::InvalidParameter("a Fock basis needs at least one mode".into()));
        }
        Ok(Self { modes })
    }

    pub fn bose(cutoff: usize) -> Result<Self> {
        Self::new(vec![Mode::bose(cutoff)?])
    }

    pub fn fermi() -> Self {
        Self {
            modes: vec![Mode::fermi()],
        }
    }

    /// `n` bosonic modes sharing one cutoff.
    pub fn bose_modes(n: usize, cutoff: usize) -> Result<Self> {
        Self::new(vec![Mode::bose(cutoff)?; n])
    }

    pub fn modes(&self) -> &[Mode] {
        &self.modes
    }

    pub fn mode_count(&self) -> usize {
        self.modes.len()
    }

    pub fn mode(&self, index: usize) -> Result<Mode> {
        self.modes.get(index).copied().ok_or(Error::InvalidMode {
            index,
            modes: self.modes.len(),
        })
    }

    pub fn dim(&self) -> usize {
        self.modes.iter().map(|m| m.cutoff).product()
    }

    pub fn index_of(&self, occupation: &[usize]) -> Option<usize> {
        if occupation.len() != self.modes.len() {
            return None;
        }
        let mut idx = 0;
        for (m, &n) in self.modes.iter().zip(occupation) {
            if n >= m.cutoff {
                return None;
            }
            idx = idx * m.cutoff + n;
        }
        Some(idx)
    }

    pub fn occupation(&self, mut index: usize) -> Vec<usize> {
        assert!(index < self.dim(), "basis index {index} out of range");
        let mut occ = vec![0; self.modes.len()];
        for (k, m) in self.modes.iter().enumerate().rev() {
            occ[k] = index % m.cutoff;
            index /= m.cutoff;
        }
        occ
    }

    /// `(−1)^F` of a basis state, `F` the total fermion number.
    pub fn parity(&self, index: usize) -> i32 {
        let occ = self.occupation(index);
        let f: usize = self
            .modes
            .iter()
            .zip(&occ)
            .filter(|(m, _)| m.statistics == Statistics::Fermi)
            .map(|(_, n)| n)
            .sum();
        if f % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn has_fermions(&self) -> bool {
        self.modes.iter().any(|m| m.statistics == Statistics::Fermi)
    }

    pub fn min_bose_cutoff(&self) -> Option<usize> {
        self.modes
            .iter()
            .filter(|m| m.statistics == Statistics::Bose)
            .map(|m| m.cutoff)
            .min()
    }

    /// Indices of states whose every bosonic occupation is at most
    /// `cutoff − 1 − margin`, in basis order.
    pub fn interior_states(&self, margin: usize) -> Result<Vec<usize>> {
        if let Some(c) = self.min_bose_cutoff() {
            if margin >= c {
                return Err(Error::EmptyInteriorBlock { margin, cutoff: c });
            }
        }
        Ok((0..self.dim())
            .filter(|&s| {
                self.occupation(s)
                    .iter()
                    .zip(&self.modes)
                    .all(|(n, m)| m.statistics == Statistics::Fermi || n + margin < m.cutoff)
            })
            .collect())
    }
}

impl fmt::Display for FockBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.modes.iter().map(|m| m.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl std::str::FromStr for FockBasis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut modes = Vec::new();
        for part in s.split_whitespace() {
            let mode = match (part, part.split_once(':')) {
                ("fermi" | "fermi:2", _) => Mode::fermi(),
                (_, Some(("bose", c))) => Mode::bose(c.parse().map_err(|_| {
                    Error::InvalidParameter(format!("bad bose cutoff in `{part}`"))
                })?)?,
                _ => {
                    return Err(Error::InvalidParameter(format!("bad mode spec `{part}`")));
                }
            };
            modes.push(mode);
        }
        Self::new(modes)
    }
}
