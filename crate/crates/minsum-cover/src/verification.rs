//! Executable forms of the analysis objects behind the local-search
//! guarantee: the shared-utility matrix b, its telescoping identities, and
//! the local-optimality constraint they feed.
//!
//! Entry b_ij apportions utility between the i-th element of a reference
//! permutation O and the j-th element of a candidate permutation L. For
//! coverage utilities it literally counts the ground elements first covered
//! by o_i in O and first covered by l_j in L. The identities and the
//! constraint are what the 4-approximation proof extracts from a locally
//! optimal L, so checking them numerically exercises the whole chain on
//! concrete instances.

use crate::error::{Error, Result};
use crate::instance::{Instance, UtilityOracle};
use crate::objective::objective;
use crate::perm::Permutation;
use crate::solvers::brute_force;

/// Tolerance for the identity and constraint checks (absolute).
pub const VERIFY_TOLERANCE: f64 = 1e-9;

/// The matrix b over a (local, reference) pair of permutations.
#[derive(Debug, Clone, PartialEq)]
pub struct SharedUtilityMatrix {
    /// b[i][j], 0-based: i indexes positions of `opt_perm`, j of `local_perm`.
    pub b: Vec<Vec<f64>>,
    pub local_perm: Permutation,
    pub opt_perm: Permutation,
}

impl SharedUtilityMatrix {
    pub fn n(&self) -> usize {
        self.b.len()
    }

    /// Plain numeric CSV: one row per position of the reference permutation,
    /// one column per position of the local permutation.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in &self.b {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

fn check_pair(u: &dyn UtilityOracle, local: &Permutation, opt: &Permutation) -> Result<usize> {
    if local.len() != opt.len() {
        return Err(Error::LengthMismatch {
            expected: opt.len(),
            actual: local.len(),
        });
    }
    if u.n() != local.len() {
        return Err(Error::LengthMismatch {
            expected: u.n(),
            actual: local.len(),
        });
    }
    Ok(local.len())
}

/// Members of O_{i} ∪ L_{j} (prefix lengths, 0-based counts) as a sorted
/// vector, plus a membership mask.
fn union_prefix(local: &Permutation, opt: &Permutation, i: usize, j: usize, n: usize) -> (Vec<usize>, Vec<bool>) {
    let mut member = vec![false; n];
    for &e in opt.prefix(i) {
        member[e] = true;
    }
    for &e in local.prefix(j) {
        member[e] = true;
    }
    let sorted = (0..n).filter(|&e| member[e]).collect();
    (sorted, member)
}

fn eval_with(u: &dyn UtilityOracle, base_sorted: &[usize], member: &[bool], extra: &[usize]) -> f64 {
    let mut set: Vec<usize> = base_sorted.to_vec();
    for &e in extra {
        if !member[e] && !set.contains(&e) {
            set.push(e);
        }
    }
    set.sort_unstable();
    u.eval(&set)
}

/// b_ij by the first closed form: f(o_i | O_{i−1} ∪ L_{j−1}) −
/// f(o_i | O_{i−1} ∪ L_{j−1} ∪ {l_j}).
///
/// Sets are canonicalized (sorted, deduplicated) before every oracle call, so
/// a pure oracle makes degenerate cases (o_i or l_j already in the union)
/// cancel exactly to 0.
pub fn shared_utility_matrix(
    u: &dyn UtilityOracle,
    local: &Permutation,
    opt: &Permutation,
) -> Result<SharedUtilityMatrix> {
    let n = check_pair(u, local, opt)?;
    let mut b = vec![vec![0.0; n]; n];
    for i in 0..n {
        let o = opt.as_slice()[i];
        for j in 0..n {
            let l = local.as_slice()[j];
            let (base, member) = union_prefix(local, opt, i, j, n);
            let v0 = u.eval(&base);
            let v1 = eval_with(u, &base, &member, &[o]);
            let v2 = eval_with(u, &base, &member, &[l]);
            let v3 = eval_with(u, &base, &member, &[l, o]);
            b[i][j] = (v1 - v0) - (v3 - v2);
        }
    }
    Ok(SharedUtilityMatrix {
        b,
        local_perm: local.clone(),
        opt_perm: opt.clone(),
    })
}

/// The second closed form, f(l_j | O_{i−1} ∪ L_{j−1}) −
/// f(l_j | O_{i−1} ∪ L_{j−1} ∪ {o_i}); equal to the first entrywise for any
/// set function (inclusion–exclusion), used as a cross-check.
pub fn shared_utility_matrix_alt(
    u: &dyn UtilityOracle,
    local: &Permutation,
    opt: &Permutation,
) -> Result<Vec<Vec<f64>>> {
    let n = check_pair(u, local, opt)?;
    let mut b = vec![vec![0.0; n]; n];
    for i in 0..n {
        let o = opt.as_slice()[i];
        for j in 0..n {
            let l = local.as_slice()[j];
            let (base, member) = union_prefix(local, opt, i, j, n);
            let v0 = u.eval(&base);
            let v1 = eval_with(u, &base, &member, &[o]);
            let v2 = eval_with(u, &base, &member, &[l]);
            let v3 = eval_with(u, &base, &member, &[l, o]);
            b[i][j] = (v2 - v0) - (v3 - v1);
        }
    }
    Ok(b)
}

/// Check the three telescoping identities of the matrix within
/// [`VERIFY_TOLERANCE`]:
///
/// * column sums: Σ_i b_ij = f(l_j | L_{j−1});
/// * row tail sums: Σ_{r≥j} b_ir = f(o_i | O_{i−1} ∪ L_{j−1});
/// * complements: Σ_{s≠i} b_sr = f(l_r | L_{r−1}) − b_ir.
pub fn verify_identities(m: &SharedUtilityMatrix, u: &dyn UtilityOracle) -> bool {
    let n = m.n();
    let local = &m.local_perm;
    let opt = &m.opt_perm;

    // f(l_j | L_{j-1}) for each j.
    let mut local_marginals = vec![0.0; n];
    let mut prev = 0.0;
    for j in 0..n {
        let u_j = u.eval(local.prefix(j + 1));
        local_marginals[j] = u_j - prev;
        prev = u_j;
    }

    for j in 0..n {
        let col_sum: f64 = (0..n).map(|i| m.b[i][j]).sum();
        if (col_sum - local_marginals[j]).abs() > VERIFY_TOLERANCE {
            return false;
        }
    }

    for i in 0..n {
        let o = opt.as_slice()[i];
        for j in 0..n {
            let tail: f64 = (j..n).map(|r| m.b[i][r]).sum();
            let (base, member) = union_prefix(local, opt, i, j, n);
            let expected = eval_with(u, &base, &member, &[o]) - u.eval(&base);
            if (tail - expected).abs() > VERIFY_TOLERANCE {
                return false;
            }
        }
    }

    for i in 0..n {
        for r in 0..n {
            let others: f64 = (0..n).filter(|&s| s != i).map(|s| m.b[s][r]).sum();
            if (others - (local_marginals[r] - m.b[i][r])).abs() > VERIFY_TOLERANCE {
                return false;
            }
        }
    }
    true
}

/// First (i, j) pair (1-based) violating the local-optimality constraint
///
/// Σ_{r=j..n} c(L_r)·Σ_s b_sr ≤
///   [c(o_i) + c(L_{j−1})]·Σ_{r=j..n} b_ir
///   + Σ_{r=j..n} [c(o_i) + c(L_r)]·Σ_{s≠i} b_sr,
///
/// or `None` when the constraint holds everywhere within
/// [`VERIFY_TOLERANCE`]. For a permutation that is locally optimal under
/// insertions (and a submodular, second-order-supermodular utility) the
/// constraint must hold for every (i, j).
pub fn local_constraint_witness(
    instance: &Instance,
    local: &Permutation,
    opt: &Permutation,
) -> Result<Option<(usize, usize)>> {
    let m = shared_utility_matrix(instance.utility().as_ref(), local, opt)?;
    let n = m.n();
    let costs = instance.costs();

    // c(L_r) for r = 0..n (prefix costs of the local permutation).
    let mut local_prefix_cost = vec![0.0; n + 1];
    for r in 1..=n {
        local_prefix_cost[r] = local_prefix_cost[r - 1] + costs.get(local.as_slice()[r - 1]);
    }
    let col_sums: Vec<f64> = (0..n).map(|r| (0..n).map(|s| m.b[s][r]).sum()).collect();

    for i in 1..=n {
        let c_o = costs.get(opt.as_slice()[i - 1]);
        for j in 1..=n {
            let mut lhs = 0.0;
            let mut row_tail = 0.0;
            let mut others_part = 0.0;
            for r in j..=n {
                lhs += local_prefix_cost[r] * col_sums[r - 1];
                row_tail += m.b[i - 1][r - 1];
                others_part += (c_o + local_prefix_cost[r]) * (col_sums[r - 1] - m.b[i - 1][r - 1]);
            }
            let rhs = (c_o + local_prefix_cost[j - 1]) * row_tail + others_part;
            if lhs > rhs + VERIFY_TOLERANCE {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

/// True iff the local-optimality constraint holds for all (i, j).
pub fn verify_local_constraint(
    instance: &Instance,
    local: &Permutation,
    opt: &Permutation,
) -> Result<bool> {
    Ok(local_constraint_witness(instance, local, opt)?.is_none())
}

/// objective(perm) / brute-force optimum; n ≤ 10. Both zero (utility
/// identically 0) counts as ratio 1.
pub fn approximation_ratio(instance: &Instance, perm: &Permutation) -> Result<f64> {
    let obj = objective(instance, perm)?;
    let (_, opt) = brute_force(instance)?;
    if opt == 0.0 {
        // With a monotone utility, a zero optimum forces every objective to 0.
        return Ok(if obj == 0.0 { 1.0 } else { f64::INFINITY });
    }
    Ok(obj / opt)
}
