//! Interpolation grids: an explicit list of nodes or an arithmetic progression.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, parse_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Grid {
    /// `z_0, ..., z_m`.
    List {
        #[serde(with = "crate::rational::serde_str_vec")]
        nodes: Vec<Rational>,
    },
    /// `z_i = a + b i`, unbounded.
    Affine {
        #[serde(with = "crate::rational::serde_str")]
        a: Rational,
        #[serde(with = "crate::rational::serde_str")]
        b: Rational,
    },
}

impl Grid {
    pub fn list(nodes: Vec<Rational>) -> Self {
        Grid::List { nodes }
    }

    pub fn from_ints(nodes: &[i64]) -> Self {
        Grid::List {
            nodes: nodes.iter().map(|&z| int(z)).collect(),
        }
    }

    pub fn affine(a: Rational, b: Rational) -> Self {
        Grid::Affine { a, b }
    }

    pub fn zero() -> Self {
        Grid::affine(Rational::zero(), Rational::zero())
    }

    pub fn constant(c: Rational) -> Self {
        Grid::affine(c, Rational::zero())
    }

    /// Parses `affine:a,b`, `list:z0,z1,...` or `zero`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "zero" {
            return Ok(Grid::zero());
        }
        if let Some(rest) = s.strip_prefix("affine:") {
            let parts: Vec<&str> = rest.split(',').collect();
            if parts.len() != 2 {
                return Err(Error::Parse(format!("affine grid needs `affine:a,b`, got `{s}`")));
            }
            return Ok(Grid::affine(parse_rational(parts[0])?, parse_rational(parts[1])?));
        }
        if let Some(rest) = s.strip_prefix("list:") {
            let nodes = if rest.trim().is_empty() {
                Vec::new()
            } else {
                rest.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?
            };
            return Ok(Grid::list(nodes));
        }
        Err(Error::Parse(format!(
            "grid must be `affine:a,b`, `list:z0,z1,...` or `zero`, got `{s}`"
        )))
    }

    /// Number of nodes, `None` when unbounded.
    pub fn available(&self) -> Option<usize> {
        match self {
            Grid::List { nodes } => Some(nodes.len()),
            Grid::Affine { .. } => None,
        }
    }

    /// Fails unless nodes `z_0..z_{count-1}` exist.
    pub fn require(&self, count: usize) -> Result<()> {
        match self.available() {
            Some(have) if have < count => Err(Error::InsufficientNodes {
                needed: count,
                available: have,
            }),
            _ => Ok(()),
        }
    }

    pub fn node(&self, i: usize) -> Result<Rational> {
        match self {
            Grid::List { nodes } => nodes.get(i).cloned().ok_or(Error::InsufficientNodes {
                needed: i + 1,
                available: nodes.len(),
            }),
            Grid::Affine { a, b } => Ok(a + b * int(i as i64)),
        }
    }

    pub fn nodes(&self, count: usize) -> Result<Vec<Rational>> {
        self.require(count)?;
        (0..count).map(|i| self.node(i)).collect()
    }

    /// The `j`-th shift: drops the first `j` nodes.
    pub fn shift(&self, j: usize) -> Grid {
        match self {
            Grid::List { nodes } => Grid::list(nodes.iter().skip(j).cloned().collect()),
            Grid::Affine { a, b } => Grid::affine(a + b * int(j as i64), b.clone()),
        }
    }

    /// `z_i + xi`.
    pub fn translate(&self, xi: &Rational) -> Grid {
        match self {
            Grid::List { nodes } => Grid::list(nodes.iter().map(|z| z + xi).collect()),
            Grid::Affine { a, b } => Grid::affine(a + xi, b.clone()),
        }
    }

    /// `z_i + i xi`.
    pub fn add_progression(&self, xi: &Rational) -> Grid {
        match self {
            Grid::List { nodes } => Grid::list(
                nodes
                    .iter()
                    .enumerate()
                    .map(|(i, z)| z + xi * int(i as i64))
                    .collect(),
            ),
            Grid::Affine { a, b } => Grid::affine(a.clone(), b + xi),
        }
    }

    pub fn negate(&self) -> Grid {
        match self {
            Grid::List { nodes } => Grid::list(nodes.iter().map(|z| -z).collect()),
            Grid::Affine { a, b } => Grid::affine(-a, -b),
        }
    }

    /// Copy of the first `len` nodes with node `k` replaced.
    pub fn perturb(&self, k: usize, value: Rational, len: usize) -> Result<Grid> {
        let mut nodes = self.nodes(len.max(k + 1))?;
        nodes[k] = value;
        Ok(Grid::list(nodes))
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Grid::List { nodes } => {
                let parts: Vec<String> = nodes.iter().map(format_rational).collect();
                write!(f, "list:{}", parts.join(","))
            }
            Grid::Affine { a, b } => write!(f, "affine:{},{}", format_rational(a), format_rational(b)),
        }
    }
}
