//! Jacobian (critical, sandpile) groups of I-graphs.
//!
//! Two routes: the Smith form of the full `2n x 2n` Laplacian, and the
//! compressed route through `coker(A^n - I)`, where `A` is the
//! `2(k+l) x 2(k+l)` companion matrix of `P(z)`. The second route's matrix
//! size does not depend on `n`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::igraph::{laplacian_matrix, GraphParams};
use crate::matrix::{Matrix, SmithForm};
use crate::poly::{companion_of, laurent_p};

/// Finite abelian group `Z_d1 + ... + Z_dr + Z^free_rank` with `d_i | d_(i+1)`
/// and every `d_i > 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

impl AbelianGroup {
    /// Cokernel of an integer matrix from its Smith form.
    pub fn from_smith(s: &SmithForm<BigInt>) -> Self {
        AbelianGroup {
            torsion: s
                .invariant_factors
                .iter()
                .filter(|d| !d.is_zero() && !d.is_one())
                .cloned()
                .collect(),
            free_rank: s.zero_count(),
        }
    }

    /// Order of the torsion part.
    pub fn order(&self) -> BigInt {
        self.torsion.iter().product()
    }

    /// Minimum number of generators of the torsion part.
    pub fn rank(&self) -> usize {
        self.torsion.len()
    }

    pub fn is_divisibility_chain(&self) -> bool {
        self.torsion.windows(2).all(|w| (&w[1] % &w[0]).is_zero())
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z_{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Cokernel of a connected-graph operator, which must have exactly one
/// free summand; returns its torsion part with `free_rank = 1`.
fn connected_cokernel(s: &SmithForm<BigInt>, what: &str) -> Result<AbelianGroup> {
    let g = AbelianGroup::from_smith(s);
    if g.free_rank != 1 {
        return Err(Error::InternalInconsistency(format!(
            "{what}: expected exactly one zero invariant factor, found {}",
            g.free_rank
        )));
    }
    Ok(g)
}

pub fn jacobian_via_laplacian(p: &GraphParams) -> Result<AbelianGroup> {
    let s = laplacian_matrix(p).smith_normal_form();
    connected_cokernel(&s, &format!("Laplacian of {p}"))
}

/// `A^n - I` for the companion matrix of `P(z)` with the given steps.
pub fn companion_power_minus_identity(n: u64, k: i64, l: i64) -> Result<Matrix<BigInt>> {
    let a = companion_of(&laurent_p(k, l)?)?;
    a.mat_pow(n)?.minus_identity()
}

/// Jacobian from `coker(A^n - I)` using raw (not necessarily reduced mod `n`)
/// coprime steps.
pub fn jacobian_via_companion_steps(n: u64, k: i64, l: i64) -> Result<AbelianGroup> {
    let s = companion_power_minus_identity(n, k, l)?.smith_normal_form();
    connected_cokernel(&s, &format!("A^{n} - I for steps ({k},{l})"))
}

pub fn jacobian_via_companion(p: &GraphParams) -> Result<AbelianGroup> {
    jacobian_via_companion_steps(p.n(), p.k() as i64, p.l() as i64)
}

/// Which construction to use for a Jacobian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum JacobianMethod {
    Laplacian,
    Companion,
}

/// Above this `n` the Laplacian route must be requested explicitly.
pub const LAPLACIAN_ORACLE_LIMIT: u64 = 60;

impl JacobianMethod {
    pub fn default_for(n: u64) -> Self {
        if n > LAPLACIAN_ORACLE_LIMIT {
            JacobianMethod::Companion
        } else {
            JacobianMethod::Laplacian
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            JacobianMethod::Laplacian => "laplacian",
            JacobianMethod::Companion => "companion",
        }
    }

    pub fn compute(&self, p: &GraphParams) -> Result<AbelianGroup> {
        match self {
            JacobianMethod::Laplacian => jacobian_via_laplacian(p),
            JacobianMethod::Companion => jacobian_via_companion(p),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RankReport {
    pub rank: usize,
    pub lower_ok: bool,
    pub upper_ok: bool,
}

/// Check `2 <= rank <= 2k + 2l - 1`.
pub fn rank_bounds_report(p: &GraphParams, g: &AbelianGroup) -> RankReport {
    let rank = g.rank();
    RankReport {
        rank,
        lower_ok: rank >= 2,
        upper_ok: rank <= p.max_rank(),
    }
}
