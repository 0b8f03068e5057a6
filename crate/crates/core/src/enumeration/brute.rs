//! Exhaustive counters used as independent oracles for `count_bounded`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

use super::counting::BoundSpec;

pub const DEFAULT_BRUTE_CAP: u128 = 10_000_000;

fn check_cap(what: &'static str, base: u64, exp: usize, cap: u128) -> Result<()> {
    let mut total: u128 = 1;
    for _ in 0..exp {
        total = total.saturating_mul(base as u128);
    }
    if total > cap {
        return Err(Error::CapExceeded {
            what,
            requested: total,
            cap,
        });
    }
    Ok(())
}

fn sorted_within(values: &mut [u64], bounds: &[u64]) -> bool {
    values.sort_unstable();
    values.iter().zip(bounds).all(|(v, z)| v <= z)
}

/// Calls `visit` on every tuple in `{0..base}^len`.
fn for_each_tuple(base: u64, len: usize, mut visit: impl FnMut(&[u64])) {
    let mut digits = vec![0u64; len];
    loop {
        visit(&digits);
        let mut i = 0;
        loop {
            if i == len {
                return;
            }
            digits[i] += 1;
            if digits[i] < base {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// Tuples in `{1..x}^n` whose order statistics satisfy the bounds.
pub fn brute_force_parking(bounds: &BoundSpec) -> Result<u64> {
    brute_force_parking_capped(bounds, DEFAULT_BRUTE_CAP)
}

pub fn brute_force_parking_capped(bounds: &BoundSpec, cap: u128) -> Result<u64> {
    let n = bounds.len();
    let x = bounds.universe_size();
    check_cap("parking scan", x, n, cap)?;
    let mut count = 0;
    let mut scratch = vec![0u64; n];
    for_each_tuple(x, n, |t| {
        for (s, v) in scratch.iter_mut().zip(t) {
            *s = v + 1;
        }
        if sorted_within(&mut scratch, bounds.bounds()) {
            count += 1;
        }
    });
    Ok(count)
}

/// Tree shapes allowed in the final preimage of a reluctant function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TreeClass {
    /// Any rooted tree.
    AllTrees,
    /// A single vertex: plain functions `S -> X`.
    Singleton,
    /// A path rooted at one of its ends.
    RootedPaths,
    /// Depth at most one.
    Stars,
    /// A path whose labels increase towards the root.
    MonotonePaths,
}

impl TreeClass {
    pub const ALL: [TreeClass; 5] = [
        TreeClass::AllTrees,
        TreeClass::Singleton,
        TreeClass::RootedPaths,
        TreeClass::Stars,
        TreeClass::MonotonePaths,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TreeClass::AllTrees => "all-trees",
            TreeClass::Singleton => "singleton",
            TreeClass::RootedPaths => "rooted-paths",
            TreeClass::Stars => "stars",
            TreeClass::MonotonePaths => "monotone-paths",
        }
    }

    /// Name of the delta operator whose basic sequence counts the class.
    pub fn operator_name(self) -> &'static str {
        match self {
            TreeClass::AllTrees => "abel:a=-1",
            TreeClass::Singleton => "D",
            TreeClass::RootedPaths => "laguerre",
            TreeClass::Stars => "lambert",
            TreeClass::MonotonePaths => "touchard",
        }
    }

    /// `f` maps `S = {0..n-1}` into `S ∪ X`, with values `>= n` in `X`.
    fn admits(self, f: &[u64], n: usize) -> bool {
        let in_s = |v: u64| (v as usize) < n;
        let mut children = vec![0usize; n];
        for &v in f {
            if in_s(v) {
                children[v as usize] += 1;
            }
        }
        match self {
            TreeClass::AllTrees => true,
            TreeClass::Singleton => f.iter().all(|&v| !in_s(v)),
            TreeClass::RootedPaths => children.iter().all(|&c| c <= 1),
            TreeClass::Stars => f.iter().all(|&v| !in_s(v) || !in_s(f[v as usize])),
            TreeClass::MonotonePaths => {
                children.iter().all(|&c| c <= 1)
                    && f.iter().enumerate().all(|(s, &v)| !in_s(v) || (s as u64) < v)
            }
        }
    }
}

impl fmt::Display for TreeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TreeClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        TreeClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown tree class `{s}`")))
    }
}

/// Final images of every element, or `None` if some element never leaves `S`.
fn final_images(f: &[u64], n: usize) -> Option<Vec<u64>> {
    let mut out = vec![0u64; n];
    for (start, slot) in out.iter_mut().enumerate() {
        let mut cur = start;
        let mut steps = 0;
        loop {
            let v = f[cur];
            if v as usize >= n {
                *slot = v - n as u64 + 1;
                break;
            }
            cur = v as usize;
            steps += 1;
            if steps > n {
                return None;
            }
        }
    }
    Some(out)
}

/// Reluctant functions `S -> S ∪ X` with `|S| = n`, `X = {1..x}`, whose final
/// preimage has every component in `class` and whose final images have order
/// statistics bounded by `bounds`.
pub fn brute_force_reluctant(class: TreeClass, bounds: &BoundSpec) -> Result<u64> {
    brute_force_reluctant_capped(class, bounds, DEFAULT_BRUTE_CAP)
}

pub fn brute_force_reluctant_capped(class: TreeClass, bounds: &BoundSpec, cap: u128) -> Result<u64> {
    let n = bounds.len();
    let x = bounds.universe_size();
    check_cap("reluctant-function scan", n as u64 + x, n, cap)?;
    let mut count = 0;
    for_each_tuple(n as u64 + x, n, |f| {
        if !class.admits(f, n) {
            return;
        }
        if let Some(mut images) = final_images(f, n) {
            if sorted_within(&mut images, bounds.bounds()) {
                count += 1;
            }
        }
    });
    Ok(count)
}

/// Sequences `1 <= x_1 <= ... <= x_n` (strictly increasing when `strict`)
/// with `x_i <= z_{i-1}`.
pub fn brute_force_lattice_paths(bounds: &BoundSpec, strict: bool) -> Result<u64> {
    brute_force_lattice_paths_capped(bounds, strict, DEFAULT_BRUTE_CAP)
}

pub fn brute_force_lattice_paths_capped(bounds: &BoundSpec, strict: bool, cap: u128) -> Result<u64> {
    let z = bounds.bounds();
    check_cap("lattice-path scan", z.last().copied().unwrap_or(1), z.len(), cap)?;
    fn walk(z: &[u64], i: usize, prev: u64, strict: bool) -> u64 {
        if i == z.len() {
            return 1;
        }
        let lo = if strict { prev + 1 } else { prev.max(1) };
        (lo..=z[i]).map(|v| walk(z, i + 1, v, strict)).sum()
    }
    Ok(walk(z, 0, 0, strict))
}
