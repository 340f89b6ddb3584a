use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::Bipartition;

/// Assignment of subsystems to Alice's particle(s) A, Bob's B and the carrier C.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Grouping {
    a: Vec<usize>,
    b: Vec<usize>,
    c: Vec<usize>,
}

impl Grouping {
    /// Nonempty, pairwise disjoint index sets (0-based).
    pub fn new(mut a: Vec<usize>, mut b: Vec<usize>, mut c: Vec<usize>) -> Result<Self> {
        for (name, part) in [("A", &mut a), ("B", &mut b), ("C", &mut c)] {
            if part.is_empty() {
                return Err(Error::InvalidGrouping(format!("{name} is empty")));
            }
            part.sort_unstable();
            if part.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidGrouping(format!("{name} repeats an index")));
            }
        }
        let g = Self { a, b, c };
        let mut all = g.all();
        all.sort_unstable();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidGrouping("A, B and C overlap".into()));
        }
        Ok(g)
    }

    fn all(&self) -> Vec<usize> {
        self.a.iter().chain(&self.b).chain(&self.c).copied().collect()
    }

    /// Checks that the three parts exactly cover `0..n`.
    pub fn validate(&self, n: usize) -> Result<()> {
        let mut all = self.all();
        all.sort_unstable();
        if all != (0..n).collect::<Vec<_>>() {
            return Err(Error::InvalidGrouping(format!(
                "{self} does not cover exactly {n} subsystems"
            )));
        }
        Ok(())
    }

    pub fn a(&self) -> &[usize] {
        &self.a
    }

    pub fn b(&self) -> &[usize] {
        &self.b
    }

    pub fn c(&self) -> &[usize] {
        &self.c
    }

    /// A : CB, the final cut.
    pub fn cut_a(&self) -> Bipartition {
        Bipartition::new(self.a.clone())
    }

    /// AC : B, the initial cut.
    pub fn cut_b(&self) -> Bipartition {
        Bipartition::new(self.b.clone())
    }

    /// AB : C, the communication cut.
    pub fn cut_c(&self) -> Bipartition {
        Bipartition::new(self.c.clone())
    }

    /// Exchanges the roles of B and C.
    pub fn swap_bc(&self) -> Self {
        Self {
            a: self.a.clone(),
            b: self.c.clone(),
            c: self.b.clone(),
        }
    }

    /// A={2,4,5}, B={1}, C={3} over five qubits (labels 1-based).
    pub fn ame_b1() -> Self {
        Self::new(vec![1, 3, 4], vec![0], vec![2]).unwrap()
    }

    /// A={1,4,5}, B={2}, C={3} over five qubits.
    pub fn ame_b2() -> Self {
        Self::new(vec![0, 3, 4], vec![1], vec![2]).unwrap()
    }

    /// A={4,5}, B={1,2}, C={3}: qubit 1 pre-sent to Bob.
    pub fn catalysed() -> Self {
        Self::new(vec![3, 4], vec![0, 1], vec![2]).unwrap()
    }
}

fn write_labels(f: &mut fmt::Formatter<'_>, part: &[usize]) -> fmt::Result {
    let labels: Vec<String> = part.iter().map(|i| (i + 1).to_string()).collect();
    f.write_str(&labels.join(","))
}

/// `a,..:b,..:c,..` with 1-based labels.
impl fmt::Display for Grouping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_labels(f, &self.a)?;
        f.write_str(":")?;
        write_labels(f, &self.b)?;
        f.write_str(":")?;
        write_labels(f, &self.c)
    }
}

/// Parses `a,..:b,..:c,..` with 1-based subsystem labels.
impl FromStr for Grouping {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::InvalidGrouping(format!(
                "{s:?}: expected three ':'-separated parts"
            )));
        }
        let mut sets = Vec::with_capacity(3);
        for part in parts {
            let mut set = Vec::new();
            for tok in part.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                let label: usize = tok
                    .parse()
                    .map_err(|_| Error::InvalidGrouping(format!("{s:?}: bad label {tok:?}")))?;
                if label == 0 {
                    return Err(Error::InvalidGrouping(format!("{s:?}: labels start at 1")));
                }
                set.push(label - 1);
            }
            sets.push(set);
        }
        let c = sets.pop().unwrap();
        let b = sets.pop().unwrap();
        let a = sets.pop().unwrap();
        Self::new(a, b, c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_one_based_labels() {
        let g: Grouping = "2,4,5:1:3".parse().unwrap();
        assert_eq!(g, Grouping::ame_b1());
        assert_eq!(g.to_string(), "2,4,5:1:3");
        assert_eq!("4,5:1,2:3".parse::<Grouping>().unwrap(), Grouping::catalysed());
        g.validate(5).unwrap();
        assert!(g.validate(6).is_err());
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["1:2", "1:2:3:4", "0:1:2", "1,2:2:3", ":1:2", "a:1:2", "1:1:2"] {
            assert!(bad.parse::<Grouping>().is_err(), "{bad}");
        }
    }

    #[test]
    fn cuts_and_swap() {
        let g = Grouping::ame_b2();
        assert_eq!(g.cut_a().left(), &[0, 3, 4]);
        assert_eq!(g.cut_b().left(), &[1]);
        assert_eq!(g.cut_c().left(), &[2]);
        let s = g.swap_bc();
        assert_eq!(s.b(), &[2]);
        assert_eq!(s.c(), &[1]);
        assert_eq!(s.swap_bc(), g);
    }
}
