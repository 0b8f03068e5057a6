//! Ordered partitions of `[n]` and the constant-term sum over them.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::operators::{BasicSequence, OperatorSpec};
use crate::poly::Poly;
use crate::rational::{binomial_rat, Rational};

pub const DEFAULT_PARTITION_CAP: usize = 9;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderedPartition {
    blocks: Vec<Vec<usize>>,
}

impl OrderedPartition {
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// `|ρ|`, the number of blocks.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Block sizes `b_1, ..., b_k`.
    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// Partial sums `s_0 = 0, s_1 = b_1, ..., s_{k-1}`.
    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.blocks
            .iter()
            .map(|b| {
                let s = acc;
                acc += b.len();
                s
            })
            .collect()
    }
}

/// Lazily yields every ordered partition of `{1..n}` once.
///
/// The last block is chosen first among the nonempty subsets of what remains,
/// then the prefix is partitioned recursively, so the stack of frames always
/// reads `B_k, B_{k-1}, ...`.
#[derive(Debug)]
pub struct OrderedPartitions {
    n: usize,
    // (mask of elements still free before this choice, chosen submask)
    stack: Vec<(u32, u32)>,
    state: IterState,
}

#[derive(Debug, PartialEq, Eq)]
enum IterState {
    Fresh,
    Running,
    Done,
}

impl OrderedPartitions {
    fn descend(&mut self, mut free: u32) {
        while free != 0 {
            self.stack.push((free, free));
            free = 0;
        }
    }

    fn current(&self) -> OrderedPartition {
        let blocks = self
            .stack
            .iter()
            .rev()
            .map(|&(_, sub)| (0..self.n).filter(|b| sub >> b & 1 == 1).map(|b| b + 1).collect())
            .collect();
        OrderedPartition { blocks }
    }
}

impl Iterator for OrderedPartitions {
    type Item = OrderedPartition;

    fn next(&mut self) -> Option<OrderedPartition> {
        match self.state {
            IterState::Done => return None,
            IterState::Fresh => {
                self.state = IterState::Running;
                let full = if self.n == 0 { 0 } else { u32::MAX >> (32 - self.n) };
                self.descend(full);
                return Some(self.current());
            }
            IterState::Running => {}
        }
        while let Some((free, sub)) = self.stack.pop() {
            let next = (sub - 1) & free;
            if next != 0 {
                self.stack.push((free, next));
                self.descend(free & !next);
                return Some(self.current());
            }
        }
        self.state = IterState::Done;
        None
    }
}

pub fn ordered_partitions(n: usize) -> Result<OrderedPartitions> {
    ordered_partitions_capped(n, DEFAULT_PARTITION_CAP)
}

pub fn ordered_partitions_capped(n: usize, cap: usize) -> Result<OrderedPartitions> {
    if n > cap || n > 31 {
        return Err(Error::CapExceeded {
            what: "ordered partitions",
            requested: n as u128,
            cap: cap.min(31) as u128,
        });
    }
    Ok(OrderedPartitions {
        n,
        stack: Vec::new(),
        state: IterState::Fresh,
    })
}

/// `t_n(0) = sum_ρ (-1)^{|ρ|} p_{b_1}(z_0) p_{b_2}(z_{s_1}) ... p_{b_k}(z_{s_{k-1}})`.
pub fn constant_term(op: &OperatorSpec, grid: &Grid, n: usize) -> Result<Rational> {
    constant_term_capped(op, grid, n, DEFAULT_PARTITION_CAP)
}

pub fn constant_term_capped(op: &OperatorSpec, grid: &Grid, n: usize, cap: usize) -> Result<Rational> {
    let parts = ordered_partitions_capped(n, cap)?;
    let basic = BasicSequence::new(op)?;
    let nodes = grid.nodes(n)?;
    // table[b][s] = p_b(z_s)
    let table: Vec<Vec<Rational>> = (0..=n)
        .map(|b| {
            let pb = basic.get(b);
            nodes.iter().map(|z| pb.eval(z)).collect()
        })
        .collect();
    let mut total = Rational::zero();
    for rho in parts {
        let mut term = Rational::one();
        for (b, s) in rho.sizes().into_iter().zip(rho.offsets()) {
            term *= &table[b][s];
            if term.is_zero() {
                break;
            }
        }
        if rho.len() % 2 == 1 {
            total -= term;
        } else {
            total += term;
        }
    }
    Ok(total)
}

/// `t_n(x) = sum_i C(n,i) t_{n-i}(0; d, Z^{(i)}) p_i(x)` with every constant
/// term taken from the ordered-partition sum.
pub fn goncarov_partition(op: &OperatorSpec, grid: &Grid, n: usize) -> Result<Poly> {
    goncarov_partition_capped(op, grid, n, DEFAULT_PARTITION_CAP)
}

pub fn goncarov_partition_capped(op: &OperatorSpec, grid: &Grid, n: usize, cap: usize) -> Result<Poly> {
    grid.require(n)?;
    let basic = BasicSequence::new(op)?;
    let mut out = Poly::zero();
    for i in 0..=n {
        let c = binomial_rat(n, i) * constant_term_capped(op, &grid.shift(i), n - i, cap)?;
        out = &out + &basic.get(i).scale(&c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;
    use crate::enumeration::numbers::fubini;
    use crate::goncarov::goncarov_recursion;
    use crate::rational::int;

    #[test]
    fn small_enumerations() {
        let zero: Vec<_> = ordered_partitions(0).unwrap().collect();
        assert_eq!(zero.len(), 1);
        assert!(zero[0].is_empty());

        let two: HashSet<Vec<Vec<usize>>> =
            ordered_partitions(2).unwrap().map(|p| p.blocks().to_vec()).collect();
        let expected: HashSet<Vec<Vec<usize>>> =
            [vec![vec![1, 2]], vec![vec![1], vec![2]], vec![vec![2], vec![1]]].into_iter().collect();
        assert_eq!(two, expected);

        assert_eq!(ordered_partitions(4).unwrap().count(), 75);
    }

    #[test]
    fn counts_match_fubini_and_are_distinct() {
        for n in 0..=6 {
            let all: Vec<_> = ordered_partitions(n).unwrap().collect();
            assert_eq!(all.len() as u64, fubini(n), "n={n}");
            let distinct: HashSet<_> = all.iter().cloned().collect();
            assert_eq!(distinct.len(), all.len());
            for rho in &all {
                let mut flat: Vec<usize> = rho.blocks().concat();
                flat.sort_unstable();
                assert_eq!(flat, (1..=n).collect::<Vec<_>>());
                assert!(rho.blocks().iter().all(|b| !b.is_empty()));
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(ordered_partitions(10), Err(Error::CapExceeded { .. })));
        assert!(ordered_partitions_capped(10, 10).is_ok());
    }

    #[test]
    fn constant_terms() {
        let d = OperatorSpec::derivative();
        let g = Grid::from_ints(&[1, 2]);
        assert_eq!(constant_term(&d, &g, 2).unwrap(), int(3));
        assert_eq!(constant_term(&d, &g, 0).unwrap(), int(1));
        // n = 2: -p_2(z_0) + 2 p_1(z_0) p_1(z_1)
        let lag = OperatorSpec::laguerre();
        let g = Grid::from_ints(&[3, -1]);
        let basic = BasicSequence::new(&lag).unwrap();
        let expected = -basic.get(2).eval(&int(3)) + int(2) * basic.get(1).eval(&int(3)) * basic.get(1).eval(&int(-1));
        assert_eq!(constant_term(&lag, &g, 2).unwrap(), expected);
        let g = Grid::from_ints(&[2, 0, -1, 4, 1]);
        for op in OperatorSpec::delta_presets() {
            for n in 0..=5 {
                let direct = goncarov_recursion(&op, &g, n).unwrap().eval(&int(0));
                assert_eq!(constant_term(&op, &g, n).unwrap(), direct, "{op} n={n}");
                assert_eq!(
                    goncarov_partition(&op, &g, n).unwrap(),
                    goncarov_recursion(&op, &g, n).unwrap(),
                    "{op} n={n}"
                );
            }
        }
    }
}
