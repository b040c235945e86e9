//! Exact rational polyhedral computations.
//!
//! Everything here is exact: the LP solver is a two-phase simplex over
//! `BigRational` with Bland's rule (guaranteed termination, no scaling,
//! no tolerances), extreme rays come from the double description method
//! with an algebraic adjacency test, and redundancy is certified by Farkas
//! multipliers rather than decided numerically.

use std::collections::BTreeSet;

use num::{One, Signed, Zero};
use serde_json::json;

use crate::linalg::{canonical_ray, primitive_integer, qv_dot, qv_zero, rank_of, QMat, Q, QV};
use crate::{Error, Result};

/// Default bound on the ambient dimension for double-description runs.
pub const DEFAULT_DUAL_DIM_BOUND: usize = 8;

/// Default node budget for monoid membership search.
pub const DEFAULT_MONOID_BUDGET: u64 = 1_000_000;

// ---------------------------------------------------------------------
// Linear programming
// ---------------------------------------------------------------------

/// Relation of a linear constraint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    /// `a . x >= b`
    Geq,
    /// `a . x == b`
    Eq,
    /// `a . x <= b`
    Leq,
}

/// A linear constraint `a . x  rel  b` on free variables.
#[derive(Debug, Clone)]
pub struct Constraint {
    pub a: QV,
    pub rel: Rel,
    pub b: Q,
}

impl Constraint {
    pub fn geq(a: QV, b: Q) -> Self {
        Constraint { a, rel: Rel::Geq, b }
    }
    pub fn leq(a: QV, b: Q) -> Self {
        Constraint { a, rel: Rel::Leq, b }
    }
    pub fn eq(a: QV, b: Q) -> Self {
        Constraint { a, rel: Rel::Eq, b }
    }
}

/// Outcome of an LP solve.
#[derive(Debug, Clone, PartialEq)]
pub enum LpResult {
    Infeasible,
    Unbounded,
    /// Optimal value and an optimal point.
    Optimal(Q, QV),
}

/// Minimize `c . x` over free variables subject to the constraints.
///
/// Free variables are split into positive and negative parts and slack
/// variables are added to reach standard form; the standard form is then
/// solved by two-phase simplex with Bland's rule.
pub fn lp_minimize(c: &[Q], cons: &[Constraint]) -> LpResult {
    let n = c.len();
    let m = cons.len();
    // Columns: x+ (n), x- (n), slacks (one per inequality).
    let n_slack = cons.iter().filter(|c| c.rel != Rel::Eq).count();
    let cols = 2 * n + n_slack;
    let mut a = QMat::zero(m, cols);
    let mut b = qv_zero(m);
    let mut slack = 0;
    for (i, con) in cons.iter().enumerate() {
        assert_eq!(con.a.len(), n, "constraint dimension mismatch");
        for j in 0..n {
            *a.at_mut(i, j) = con.a[j].clone();
            *a.at_mut(i, n + j) = -con.a[j].clone();
        }
        match con.rel {
            Rel::Geq => {
                *a.at_mut(i, 2 * n + slack) = -Q::one();
                slack += 1;
            }
            Rel::Leq => {
                *a.at_mut(i, 2 * n + slack) = Q::one();
                slack += 1;
            }
            Rel::Eq => {}
        }
        b[i] = con.b.clone();
    }
    let mut cost = qv_zero(cols);
    for j in 0..n {
        cost[j] = c[j].clone();
        cost[n + j] = -c[j].clone();
    }
    match simplex_standard(&a, &b, &cost) {
        StdResult::Infeasible => LpResult::Infeasible,
        StdResult::Unbounded => LpResult::Unbounded,
        StdResult::Optimal(v, x) => {
            let point: QV = (0..n).map(|j| &x[j] - &x[n + j]).collect();
            LpResult::Optimal(v, point)
        }
    }
}

/// Maximize `c . x`: negated minimization.
pub fn lp_maximize(c: &[Q], cons: &[Constraint]) -> LpResult {
    let neg: QV = c.iter().map(|x| -x).collect();
    match lp_minimize(&neg, cons) {
        LpResult::Optimal(v, x) => LpResult::Optimal(-v, x),
        other => other,
    }
}

enum StdResult {
    Infeasible,
    Unbounded,
    Optimal(Q, QV),
}

/// Two-phase simplex for `min c.x, A x = b, x >= 0`, Bland's rule.
fn simplex_standard(a: &QMat, b: &[Q], c: &[Q]) -> StdResult {
    let m = a.rows;
    let n = a.cols;
    // Tableau with artificial columns: rows 0..m constraints, columns
    // 0..n original, n..n+m artificial, last column rhs.
    let width = n + m + 1;
    let mut t = QMat::zero(m, width);
    for i in 0..m {
        let flip = b[i].is_negative();
        for j in 0..n {
            let v = a.at(i, j).clone();
            *t.at_mut(i, j) = if flip { -v } else { v };
        }
        *t.at_mut(i, n + i) = Q::one();
        *t.at_mut(i, width - 1) = if flip { -b[i].clone() } else { b[i].clone() };
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Phase 1: minimize the sum of artificials.
    let phase1_cost: QV = (0..n + m)
        .map(|j| if j >= n { Q::one() } else { Q::zero() })
        .collect();
    if !simplex_phase(&mut t, &mut basis, &phase1_cost, n + m) {
        // Phase 1 objective is bounded below by 0, never unbounded.
        unreachable!("phase 1 cannot be unbounded");
    }
    let phase1_value = objective_value(&t, &basis, &phase1_cost);
    if !phase1_value.is_zero() {
        return StdResult::Infeasible;
    }
    // Drive remaining artificials out of the basis where possible.
    for r in 0..m {
        if basis[r] >= n {
            if let Some(j) = (0..n).find(|&j| !t.at(r, j).is_zero()) {
                pivot(&mut t, &mut basis, r, j);
            }
            // Otherwise the row is all-zero on original columns
            // (redundant constraint); the artificial stays basic at 0.
        }
    }

    // Phase 2: original costs; artificial columns are frozen out by
    // restricting the entering-variable scan to the original columns.
    let mut phase2_cost = c.to_vec();
    phase2_cost.resize(n + m, Q::zero());
    if !simplex_phase(&mut t, &mut basis, &phase2_cost, n) {
        return StdResult::Unbounded;
    }
    let mut x = qv_zero(n);
    for r in 0..m {
        if basis[r] < n {
            x[basis[r]] = t.at(r, width - 1).clone();
        }
    }
    let value = qv_dot(&x, c);
    StdResult::Optimal(value, x)
}

fn objective_value(t: &QMat, basis: &[usize], cost: &[Q]) -> Q {
    let width = t.cols;
    basis
        .iter()
        .enumerate()
        .map(|(r, &j)| &cost[j] * t.at(r, width - 1))
        .fold(Q::zero(), |s, v| s + v)
}

/// Run simplex iterations until optimal (true) or unbounded (false).
/// Entering variables are scanned over columns `0..entering_limit`.
fn simplex_phase(t: &mut QMat, basis: &mut Vec<usize>, cost: &[Q], entering_limit: usize) -> bool {
    let m = t.rows;
    let width = t.cols;
    loop {
        // Reduced costs: c_j - c_B . column_j.
        let mut entering = None;
        for j in 0..entering_limit {
            if basis.contains(&j) {
                continue;
            }
            let mut rc = cost[j].clone();
            for r in 0..m {
                if !t.at(r, j).is_zero() {
                    rc -= &cost[basis[r]] * t.at(r, j);
                }
            }
            if rc.is_negative() {
                entering = Some(j); // Bland: smallest index
                break;
            }
        }
        let Some(j) = entering else { return true };
        // Ratio test; Bland tie-break on the smallest basis index.
        let mut best: Option<(Q, usize, usize)> = None; // (ratio, basis var, row)
        for r in 0..m {
            if t.at(r, j).is_positive() {
                let ratio = t.at(r, width - 1) / t.at(r, j);
                let key = (ratio.clone(), basis[r]);
                match &best {
                    None => best = Some((key.0, key.1, r)),
                    Some((br, bi, _)) => {
                        if key.0 < *br || (key.0 == *br && key.1 < *bi) {
                            best = Some((key.0, key.1, r));
                        }
                    }
                }
            }
        }
        let Some((_, _, r)) = best else { return false };
        pivot(t, basis, r, j);
    }
}

fn pivot(t: &mut QMat, basis: &mut [usize], r: usize, j: usize) {
    let width = t.cols;
    let inv = t.at(r, j).recip();
    for col in 0..width {
        let v = t.at(r, col) * &inv;
        *t.at_mut(r, col) = v;
    }
    for row in 0..t.rows {
        if row != r && !t.at(row, j).is_zero() {
            let f = t.at(row, j).clone();
            for col in 0..width {
                let v = t.at(row, col) - &f * t.at(r, col);
                *t.at_mut(row, col) = v;
            }
        }
    }
    basis[r] = j;
}

// ---------------------------------------------------------------------
// Double description: extreme rays of {x : a_i . x >= 0}
// ---------------------------------------------------------------------

/// Lineality basis and extreme rays of the cone cut out by the given
/// homogeneous halfspaces.  Rays are primitive integer vectors in a
/// deterministic order.
pub fn extreme_rays(dim: usize, halfspaces: &[QV]) -> (Vec<QV>, Vec<QV>) {
    struct Ray {
        v: QV,
        tight: BTreeSet<usize>,
    }
    let mut lineality: Vec<QV> = (0..dim)
        .map(|i| {
            let mut v = qv_zero(dim);
            v[i] = Q::one();
            v
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();
    let mut inserted: Vec<QV> = Vec::new();
    for a in halfspaces {
        assert_eq!(a.len(), dim);
        if a.iter().all(|x| x.is_zero()) {
            continue;
        }
        let idx = inserted.len();
        if let Some(p) = lineality.iter().position(|l| !qv_dot(a, l).is_zero()) {
            // The halfspace cuts the lineality space: one lineality
            // direction becomes a ray, everything else is projected into
            // the hyperplane.
            let mut l0 = lineality.remove(p);
            let mut val0 = qv_dot(a, &l0);
            if val0.is_negative() {
                l0 = l0.iter().map(|x| -x).collect();
                val0 = -val0;
            }
            for l in lineality.iter_mut() {
                let f = qv_dot(a, l) / &val0;
                if !f.is_zero() {
                    for (x, y) in l.iter_mut().zip(&l0) {
                        *x -= &f * y;
                    }
                }
            }
            for r in rays.iter_mut() {
                let f = qv_dot(a, &r.v) / &val0;
                if !f.is_zero() {
                    for (x, y) in r.v.iter_mut().zip(&l0) {
                        *x -= &f * y;
                    }
                }
                r.tight.insert(idx);
            }
            // l0 was in the lineality space, so every previously inserted
            // covector vanishes on it.
            let tight: BTreeSet<usize> = (0..idx).collect();
            rays.push(Ray { v: l0, tight });
        } else {
            let values: Vec<Q> = rays.iter().map(|r| qv_dot(a, &r.v)).collect();
            let mut next: Vec<Ray> = Vec::new();
            // Keep nonnegative rays; tight ones get this constraint added.
            for (r, val) in rays.iter().zip(&values) {
                if !val.is_negative() {
                    let mut tight = r.tight.clone();
                    if val.is_zero() {
                        tight.insert(idx);
                    }
                    next.push(Ray { v: r.v.clone(), tight });
                }
            }
            // Combine adjacent (positive, negative) pairs.
            let target_rank = dim.saturating_sub(lineality.len() + 2);
            for (pi, pv) in values.iter().enumerate() {
                if !pv.is_positive() {
                    continue;
                }
                for (ni, nv) in values.iter().enumerate() {
                    if !nv.is_negative() {
                        continue;
                    }
                    let common: Vec<usize> = rays[pi]
                        .tight
                        .intersection(&rays[ni].tight)
                        .copied()
                        .collect();
                    let covectors: Vec<QV> =
                        common.iter().map(|&k| inserted[k].clone()).collect();
                    if rank_of(&covectors) != target_rank {
                        continue;
                    }
                    // pv * neg - nv * pos is a nonnegative combination
                    // lying on the hyperplane.
                    let v: QV = rays[ni]
                        .v
                        .iter()
                        .zip(&rays[pi].v)
                        .map(|(nx, px)| pv * nx - nv * px)
                        .collect();
                    let mut tight: BTreeSet<usize> = common.into_iter().collect();
                    tight.insert(idx);
                    next.push(Ray { v: canonical_ray(&v), tight });
                }
            }
            rays = next;
        }
        inserted.push(a.clone());
    }
    let mut out: Vec<QV> = rays.iter().map(|r| canonical_ray(&r.v)).collect();
    out.sort();
    out.dedup();
    // Canonical lineality basis: echelon form for determinism.
    (reduced_basis(&lineality), out)
}

/// Row-reduced (echelon) basis of the span of the given vectors, with
/// primitive integer rows; deterministic.
pub fn reduced_basis(vectors: &[QV]) -> Vec<QV> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let dim = vectors[0].len();
    let mut rows: Vec<QV> = vectors.to_vec();
    let mut out: Vec<QV> = Vec::new();
    for col in 0..dim {
        let Some(p) = rows.iter().position(|r| !r[col].is_zero()) else {
            continue;
        };
        let pivot_row = rows.swap_remove(p);
        let pv = pivot_row[col].clone();
        for r in rows.iter_mut() {
            let f = &r[col] / &pv;
            if !f.is_zero() {
                for (x, y) in r.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        for o in out.iter_mut() {
            let f = &o[col] / &pv;
            if !f.is_zero() {
                for (x, y) in o.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        out.push(pivot_row);
        if rows.is_empty() {
            break;
        }
    }
    out.iter().map(|v| canonical_ray(v)).collect()
}

/// A polyhedral cone given by generators, with facets computed on demand.
#[derive(Debug, Clone)]
pub struct RationalCone {
    pub dim: usize,
    /// Generating rays (not necessarily extreme).
    pub generators: Vec<QV>,
    /// Lineality directions (both signs are in the cone).
    pub lineality: Vec<QV>,
}

impl RationalCone {
    /// Cone generated by the given rays (and optional lineality).
    pub fn from_generators(dim: usize, generators: Vec<QV>, lineality: Vec<QV>) -> Self {
        RationalCone { dim, generators, lineality }
    }

    /// Facet normals and implied equalities of the cone: the extreme rays
    /// and lineality of the dual cone.  Bounded by `max_dim` because the
    /// double description method is exponential in the dimension.
    pub fn facets(&self, max_dim: usize) -> Result<(Vec<QV>, Vec<QV>)> {
        if self.dim > max_dim {
            return Err(Error::Resource(format!(
                "dualization in dimension {} exceeds bound {max_dim}",
                self.dim
            )));
        }
        // Dual cone: {y : <g, y> >= 0 for all generators, <l, y> = 0 for
        // lineality}; equalities as opposite halfspace pairs.
        let mut hs = self.generators.clone();
        for l in &self.lineality {
            hs.push(l.clone());
            hs.push(l.iter().map(|x| -x).collect());
        }
        let (lin, rays) = extreme_rays(self.dim, &hs);
        // (facet normals, equalities satisfied by the whole cone)
        Ok((rays, lin))
    }

    /// Extreme rays of the cone itself (double dual).
    pub fn extreme(&self, max_dim: usize) -> Result<(Vec<QV>, Vec<QV>)> {
        let (facets, eqs) = self.facets(max_dim)?;
        let mut hs = facets;
        for e in eqs {
            hs.push(e.clone());
            hs.push(e.iter().map(|x| -x).collect());
        }
        let (lin, rays) = extreme_rays(self.dim, &hs);
        Ok((lin, rays))
    }

    /// Membership of a point, decided by exact LP over the generators.
    pub fn contains(&self, x: &[Q]) -> bool {
        // x = sum mu_i g_i + sum nu_j l_j, mu >= 0, nu free.
        let ng = self.generators.len();
        let nl = self.lineality.len();
        let mut cons = Vec::new();
        for d in 0..self.dim {
            let mut a = qv_zero(ng + nl);
            for (i, g) in self.generators.iter().enumerate() {
                a[i] = g[d].clone();
            }
            for (j, l) in self.lineality.iter().enumerate() {
                a[ng + j] = l[d].clone();
            }
            cons.push(Constraint::eq(a, x[d].clone()));
        }
        for i in 0..ng {
            let mut a = qv_zero(ng + nl);
            a[i] = Q::one();
            cons.push(Constraint::geq(a, Q::zero()));
        }
        !matches!(lp_minimize(&qv_zero(ng + nl), &cons), LpResult::Infeasible)
    }
}

// ---------------------------------------------------------------------
// Inequality systems with provenance
// ---------------------------------------------------------------------

/// Where a row of an inequality system came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    /// Dominance constraint on one group's weight.
    Chamber { group: String, index: usize },
    /// A Schubert-condition triple and the cubicle ray it was paired
    /// with; words are human-readable (`"s1*s2"`).
    Triple {
        wtilde: String,
        w: String,
        v: String,
        ray: Vec<i64>,
        k: Option<usize>,
    },
    /// Equality forced by a central direction.
    Center,
    /// Anything else (tests, manual rows).
    Other(String),
}

impl Provenance {
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Provenance::Chamber { group, index } => {
                json!({"kind": "chamber", "group": group, "index": index})
            }
            Provenance::Triple { wtilde, w, v, ray, k } => {
                json!({"kind": "triple", "wtilde": wtilde, "w": w, "v": v, "ray": ray, "k": k})
            }
            Provenance::Center => json!({"kind": "center"}),
            Provenance::Other(s) => json!({"kind": "other", "note": s}),
        }
    }
}

/// One row: `coeffs . x + constant >= 0` (or `== 0`).
#[derive(Debug, Clone)]
pub struct Row {
    pub coeffs: QV,
    pub constant: Q,
    pub equality: bool,
    pub provenance: Provenance,
}

impl Row {
    /// Homogeneous inequality row.
    pub fn geq0(coeffs: QV, provenance: Provenance) -> Self {
        Row { coeffs, constant: Q::zero(), equality: false, provenance }
    }

    /// Scale to primitive integer coefficients (constant included).
    pub fn canonical(&self) -> Row {
        let mut all = self.coeffs.clone();
        all.push(self.constant.clone());
        let mut ints = primitive_integer(&all);
        if self.equality {
            // Fix the sign of equalities: first nonzero entry positive.
            if let Some(first) = ints.iter().find(|x| !x.is_zero()) {
                if first.is_negative() {
                    for v in ints.iter_mut() {
                        *v = -v.clone();
                    }
                }
            }
        }
        let mut coeffs: QV = ints.iter().map(|x| Q::from_integer(x.clone())).collect();
        let constant = coeffs.pop().unwrap();
        Row { coeffs, constant, equality: self.equality, provenance: self.provenance.clone() }
    }

    /// Evaluate `coeffs . x + constant`.
    pub fn eval(&self, x: &[Q]) -> Q {
        qv_dot(&self.coeffs, x) + &self.constant
    }

    /// Key identifying the geometric content of the row.
    fn key(&self) -> (Vec<num::BigInt>, bool) {
        let c = self.canonical();
        let mut all = c.coeffs.clone();
        all.push(c.constant.clone());
        (primitive_integer(&all), c.equality)
    }
}

/// Certificate that a row is implied by the others: nonnegative Farkas
/// multipliers over the listed rows (expanded so equalities contribute a
/// signed multiplier) plus a nonnegative slack on the constant.
#[derive(Debug, Clone)]
pub struct FarkasCertificate {
    /// One multiplier per row of the implying system (signed for
    /// equality rows).
    pub multipliers: Vec<Q>,
    /// Slack on the constant term.
    pub slack: Q,
}

/// A system of linear inequalities (and equalities) with named variables.
#[derive(Debug, Clone)]
pub struct InequalitySystem {
    pub variables: Vec<String>,
    pub rows: Vec<Row>,
}

impl InequalitySystem {
    pub fn new(variables: Vec<String>) -> Self {
        InequalitySystem { variables, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.variables.len()
    }

    /// Canonical form: primitive rows, duplicates merged (first
    /// provenance wins), deterministic order.
    pub fn canonicalize(&self) -> InequalitySystem {
        let mut seen: Vec<(Vec<num::BigInt>, bool)> = Vec::new();
        let mut rows: Vec<Row> = Vec::new();
        for row in &self.rows {
            let key = row.key();
            if !seen.contains(&key) {
                seen.push(key);
                rows.push(row.canonical());
            }
        }
        rows.sort_by(|a, b| {
            (!a.equality, a.coeffs.clone(), a.constant.clone()).cmp(&(
                !b.equality,
                b.coeffs.clone(),
                b.constant.clone(),
            ))
        });
        InequalitySystem { variables: self.variables.clone(), rows }
    }

    /// True if the point satisfies every row.
    pub fn contains(&self, x: &[Q]) -> bool {
        self.rows.iter().all(|r| {
            let v = r.eval(x);
            if r.equality {
                v.is_zero()
            } else {
                !v.is_negative()
            }
        })
    }

    /// True if the system has a solution (exact LP feasibility).
    pub fn feasible(&self) -> bool {
        let cons = self.as_constraints();
        !matches!(lp_minimize(&qv_zero(self.dim()), &cons), LpResult::Infeasible)
    }

    fn as_constraints(&self) -> Vec<Constraint> {
        self.rows
            .iter()
            .map(|r| Constraint {
                a: r.coeffs.clone(),
                rel: if r.equality { Rel::Eq } else { Rel::Geq },
                b: -r.constant.clone(),
            })
            .collect()
    }

    /// Farkas implication test: is `target` valid on the feasible set of
    /// this system?  Returns a certificate when it is.
    ///
    /// The certificate satisfies `target.coeffs = sum mu_i row_i.coeffs`
    /// and `target.constant = sum mu_i row_i.constant + slack`, with
    /// `mu_i >= 0` for inequality rows and `slack >= 0`.  Assumes the
    /// system is feasible (checked by the callers that need it).
    pub fn implies(&self, target: &Row) -> Option<FarkasCertificate> {
        let n = self.dim();
        let m = self.rows.len();
        // Variables: mu_i (free for equalities, else >= 0), slack >= 0.
        let nv = m + 1;
        let mut cons = Vec::new();
        for d in 0..n {
            let mut a = qv_zero(nv);
            for (i, r) in self.rows.iter().enumerate() {
                a[i] = r.coeffs[d].clone();
            }
            cons.push(Constraint::eq(a, target.coeffs[d].clone()));
        }
        {
            let mut a = qv_zero(nv);
            for (i, r) in self.rows.iter().enumerate() {
                a[i] = r.constant.clone();
            }
            a[m] = Q::one();
            cons.push(Constraint::eq(a, target.constant.clone()));
        }
        for (i, r) in self.rows.iter().enumerate() {
            if !r.equality {
                let mut a = qv_zero(nv);
                a[i] = Q::one();
                cons.push(Constraint::geq(a, Q::zero()));
            }
        }
        {
            let mut a = qv_zero(nv);
            a[m] = Q::one();
            cons.push(Constraint::geq(a, Q::zero()));
        }
        match lp_minimize(&qv_zero(nv), &cons) {
            LpResult::Optimal(_, x) => Some(FarkasCertificate {
                multipliers: x[..m].to_vec(),
                slack: x[m].clone(),
            }),
            _ => None,
        }
    }

    /// Remove rows implied by the remaining ones; every removal is
    /// certified.  Returns the pruned system and, per removed row, the
    /// row together with its certificate against the final system.
    pub fn prune_redundant(&self) -> (InequalitySystem, Vec<(Row, FarkasCertificate)>) {
        let mut kept: Vec<Row> = self.canonicalize().rows;
        let mut removed: Vec<Row> = Vec::new();
        let mut i = 0;
        while i < kept.len() {
            let candidate = kept[i].clone();
            if candidate.equality {
                i += 1;
                continue;
            }
            let rest = InequalitySystem {
                variables: self.variables.clone(),
                rows: kept
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, r)| r.clone())
                    .collect(),
            };
            if rest.implies(&candidate).is_some() {
                removed.push(candidate);
                kept.remove(i);
            } else {
                i += 1;
            }
        }
        let pruned = InequalitySystem { variables: self.variables.clone(), rows: kept };
        let certs = removed
            .into_iter()
            .map(|r| {
                let cert = pruned
                    .implies(&r)
                    .expect("removed row must be implied by the pruned system");
                (r, cert)
            })
            .collect();
        (pruned, certs)
    }

    /// Exact equivalence of feasible sets, decided by LP both ways: each
    /// row of either system must be valid on the other.
    pub fn equivalent(&self, other: &InequalitySystem) -> bool {
        assert_eq!(self.dim(), other.dim(), "variable spaces differ");
        match (self.feasible(), other.feasible()) {
            (false, false) => return true,
            (false, true) | (true, false) => return false,
            (true, true) => {}
        }
        for r in &other.rows {
            if self.implies(r).is_none() {
                return false;
            }
            if r.equality {
                let neg = Row {
                    coeffs: r.coeffs.iter().map(|x| -x).collect(),
                    constant: -r.constant.clone(),
                    equality: false,
                    provenance: r.provenance.clone(),
                };
                if self.implies(&neg).is_none() {
                    return false;
                }
            }
        }
        for r in &self.rows {
            if other.implies(r).is_none() {
                return false;
            }
            if r.equality {
                let neg = Row {
                    coeffs: r.coeffs.iter().map(|x| -x).collect(),
                    constant: -r.constant.clone(),
                    equality: false,
                    provenance: r.provenance.clone(),
                };
                if other.implies(&neg).is_none() {
                    return false;
                }
            }
        }
        true
    }

    /// All vertices of the (bounded) solution set, deterministic order.
    /// Errors if the solution set is unbounded or empty.
    pub fn vertices(&self) -> Result<Vec<QV>> {
        let d = self.dim();
        let cons = self.as_constraints();
        // Boundedness: every coordinate must have finite min and max.
        for i in 0..d {
            let mut obj = qv_zero(d);
            obj[i] = Q::one();
            for dir in [false, true] {
                let r = if dir { lp_maximize(&obj, &cons) } else { lp_minimize(&obj, &cons) };
                match r {
                    LpResult::Unbounded => {
                        return Err(Error::Verification(format!(
                            "solution set unbounded in coordinate {i}"
                        )))
                    }
                    LpResult::Infeasible => {
                        return Err(Error::Verification("empty solution set".into()))
                    }
                    LpResult::Optimal(..) => {}
                }
            }
        }
        let rows = &self.rows;
        let m = rows.len();
        let mut verts: Vec<QV> = Vec::new();
        // Enumerate d-subsets of rows with full rank.
        let mut idx: Vec<usize> = (0..d).collect();
        if d > m {
            return Err(Error::Verification("fewer rows than dimensions".into()));
        }
        loop {
            let mat = QMat::from_rows(&idx.iter().map(|&i| rows[i].coeffs.clone()).collect::<Vec<_>>());
            if mat.rank() == d {
                let rhs: QV = idx.iter().map(|&i| -rows[i].constant.clone()).collect();
                if let Some(x) = mat.solve(&rhs) {
                    if self.contains(&x) && !verts.contains(&x) {
                        verts.push(x);
                    }
                }
            }
            // Next combination.
            let mut k = d;
            loop {
                if k == 0 {
                    idx.clear();
                    break;
                }
                k -= 1;
                if idx[k] < m - (d - k) {
                    idx[k] += 1;
                    for t in k + 1..d {
                        idx[t] = idx[t - 1] + 1;
                    }
                    break;
                }
            }
            if idx.is_empty() {
                break;
            }
        }
        verts.sort();
        Ok(verts)
    }

    /// JSON representation: variables, rows with `[num, den]` rational
    /// pairs, and provenance.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "variables": self.variables,
            "rows": self.rows.iter().map(|r| json!({
                "coeffs": r.coeffs.iter().map(q_json).collect::<Vec<_>>(),
                "constant": q_json(&r.constant),
                "relation": if r.equality { "eq" } else { "geq" },
                "provenance": r.provenance.to_json(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Rational as a `[numerator, denominator]` JSON pair.
pub fn q_json(x: &Q) -> serde_json::Value {
    json!([x.numer().to_string(), x.denom().to_string()])
}

// ---------------------------------------------------------------------
// Monoid membership
// ---------------------------------------------------------------------

/// Outcome of a monoid membership query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    /// Witness: coefficients per generator.
    Yes(Vec<u64>),
    No,
    /// Search budget exhausted without a decision.
    Unknown,
}

/// Is `x` a nonnegative integer combination of the generators?
///
/// A rational-cone LP check first rules out hopeless targets.  When the
/// generators admit a strictly positive linear functional the depth-first
/// search is finite and the answer is exact; otherwise the search is
/// budget-bounded and may return `Unknown`.
pub fn monoid_member(generators: &[QV], x: &[Q], budget: u64) -> Membership {
    let dim = x.len();
    // Integer-valued inputs are required for exact search.
    let gens: Vec<QV> = generators
        .iter()
        .filter(|g| !g.iter().all(|v| v.is_zero()))
        .cloned()
        .collect();
    if x.iter().all(|v| v.is_zero()) {
        return Membership::Yes(vec![0; generators.len()]);
    }
    if gens.is_empty() {
        return Membership::No;
    }
    // Rational relaxation.
    let cone = RationalCone::from_generators(dim, gens.clone(), vec![]);
    if !cone.contains(x) {
        return Membership::No;
    }
    // Strictly positive functional on all generators, if one exists.
    let mut cons: Vec<Constraint> = gens
        .iter()
        .map(|g| Constraint::geq(g.clone(), Q::one()))
        .collect();
    for i in 0..dim {
        let mut a = qv_zero(dim);
        a[i] = Q::one();
        cons.push(Constraint::leq(a.clone(), Q::from_integer(1000.into())));
        cons.push(Constraint::geq(a, Q::from_integer((-1000).into())));
    }
    let grading = match lp_minimize(&qv_zero(dim), &cons) {
        LpResult::Optimal(_, h) => Some(h),
        _ => None,
    };
    let mut nodes: u64 = 0;
    let mut coeffs = vec![0u64; gens.len()];
    let exhaustive = grading.is_some();
    let found = search(&gens, x, &grading, 0, &mut coeffs, &mut nodes, budget);
    match found {
        SearchOutcome::Found => {
            // Map back to original generator positions.
            let mut full = vec![0u64; generators.len()];
            let mut k = 0;
            for (i, g) in generators.iter().enumerate() {
                if !g.iter().all(|v| v.is_zero()) {
                    full[i] = coeffs[k];
                    k += 1;
                }
            }
            Membership::Yes(full)
        }
        SearchOutcome::Exhausted => {
            if exhaustive {
                Membership::No
            } else {
                Membership::Unknown
            }
        }
        SearchOutcome::Budget => Membership::Unknown,
    }
}

enum SearchOutcome {
    Found,
    Exhausted,
    Budget,
}

fn search(
    gens: &[QV],
    rem: &[Q],
    grading: &Option<QV>,
    i: usize,
    coeffs: &mut [u64],
    nodes: &mut u64,
    budget: u64,
) -> SearchOutcome {
    *nodes += 1;
    if *nodes > budget {
        return SearchOutcome::Budget;
    }
    if rem.iter().all(|v| v.is_zero()) {
        for c in coeffs[i..].iter_mut() {
            *c = 0;
        }
        return SearchOutcome::Found;
    }
    if i == gens.len() {
        return SearchOutcome::Exhausted;
    }
    if let Some(h) = grading {
        if qv_dot(h, rem).is_negative() {
            return SearchOutcome::Exhausted;
        }
    }
    // Bound on the coefficient of generator i from the grading, or a
    // budget-derived cap without one.
    let max_k: u64 = if let Some(h) = grading {
        let num = qv_dot(h, rem);
        let den = qv_dot(h, &gens[i]);
        // den >= 1 by construction of the grading.
        (num / den).floor().to_integer().try_into().unwrap_or(0)
    } else {
        64
    };
    for k in (0..=max_k).rev() {
        let next: QV = rem
            .iter()
            .zip(&gens[i])
            .map(|(r, g)| r - g * Q::from_integer(k.into()))
            .collect();
        coeffs[i] = k;
        match search(gens, &next, grading, i + 1, coeffs, nodes, budget) {
            SearchOutcome::Found => return SearchOutcome::Found,
            SearchOutcome::Budget => return SearchOutcome::Budget,
            SearchOutcome::Exhausted => {}
        }
    }
    SearchOutcome::Exhausted
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{qi, qr, qv_from};

    fn ineq(coeffs: &[i64], constant: i64) -> Row {
        Row {
            coeffs: qv_from(coeffs),
            constant: qi(constant),
            equality: false,
            provenance: Provenance::Other("test".into()),
        }
    }

    #[test]
    fn simplex_basic() {
        // min -x - y  s.t. x + y <= 4, x <= 2, x,y >= 0.
        let cons = vec![
            Constraint::leq(qv_from(&[1, 1]), qi(4)),
            Constraint::leq(qv_from(&[1, 0]), qi(2)),
            Constraint::geq(qv_from(&[1, 0]), qi(0)),
            Constraint::geq(qv_from(&[0, 1]), qi(0)),
        ];
        match lp_minimize(&qv_from(&[-1, -1]), &cons) {
            LpResult::Optimal(v, _) => assert_eq!(v, qi(-4)),
            other => panic!("unexpected {other:?}"),
        }
        // Unbounded and infeasible cases.
        assert_eq!(
            lp_minimize(&qv_from(&[-1, 0]), &[Constraint::geq(qv_from(&[1, 0]), qi(0))]),
            LpResult::Unbounded
        );
        assert_eq!(
            lp_minimize(
                &qv_from(&[0, 0]),
                &[
                    Constraint::geq(qv_from(&[1, 0]), qi(1)),
                    Constraint::leq(qv_from(&[1, 0]), qi(0))
                ]
            ),
            LpResult::Infeasible
        );
    }

    #[test]
    fn extreme_rays_of_quadrant_and_halfplane() {
        let (lin, rays) = extreme_rays(2, &[qv_from(&[1, 0]), qv_from(&[0, 1])]);
        assert!(lin.is_empty());
        assert_eq!(rays, vec![qv_from(&[0, 1]), qv_from(&[1, 0])]);
        // A single halfspace in 2d: one ray, one lineality direction.
        let (lin, rays) = extreme_rays(2, &[qv_from(&[1, 0])]);
        assert_eq!(lin.len(), 1);
        assert_eq!(rays.len(), 1);
        assert_eq!(rays[0], qv_from(&[1, 0]));
    }

    #[test]
    fn extreme_rays_of_cube_cone() {
        // Cone over a square: x >= 0 cut by four halfspaces in 3d.
        let hs = vec![
            qv_from(&[1, 1, 0]),
            qv_from(&[1, -1, 0]),
            qv_from(&[1, 0, 1]),
            qv_from(&[1, 0, -1]),
        ];
        let (lin, rays) = extreme_rays(3, &hs);
        assert!(lin.is_empty());
        assert_eq!(rays.len(), 4);
        for r in &rays {
            assert!(hs.iter().filter(|h| qv_dot(h, r).is_zero()).count() >= 2);
        }
    }

    #[test]
    fn cone_membership_and_facets() {
        let cone = RationalCone::from_generators(
            2,
            vec![qv_from(&[2, -1]), qv_from(&[-1, 2])],
            vec![],
        );
        assert!(cone.contains(&qv_from(&[1, 1])));
        assert!(!cone.contains(&qv_from(&[-1, 0])));
        let (facets, eqs) = cone.facets(8).unwrap();
        assert_eq!(facets.len(), 2);
        assert!(eqs.is_empty());
    }

    #[test]
    fn farkas_implication_and_pruning() {
        let mut sys = InequalitySystem::new(vec!["x".into(), "y".into()]);
        sys.rows.push(ineq(&[1, 0], 0));
        sys.rows.push(ineq(&[0, 1], 0));
        sys.rows.push(ineq(&[1, 1], 0)); // redundant
        let target = ineq(&[2, 3], 0);
        let cert = sys.implies(&target).expect("x,y >= 0 implies 2x+3y >= 0");
        // Certificate reconstructs the target.
        let mut acc = qv_zero(2);
        for (mu, r) in cert.multipliers.iter().zip(&sys.rows) {
            assert!(!mu.is_negative());
            for (a, c) in acc.iter_mut().zip(&r.coeffs) {
                *a += mu * c;
            }
        }
        assert_eq!(acc, target.coeffs);
        assert!(sys.implies(&ineq(&[-1, 0], 0)).is_none());
        let (pruned, removed) = sys.prune_redundant();
        assert_eq!(pruned.rows.len(), 2);
        assert_eq!(removed.len(), 1);
        assert!(pruned.equivalent(&sys));
    }

    #[test]
    fn equivalence_detects_differences() {
        let mut a = InequalitySystem::new(vec!["x".into()]);
        a.rows.push(ineq(&[1], 0));
        let mut b = InequalitySystem::new(vec!["x".into()]);
        b.rows.push(ineq(&[2], 0));
        assert!(a.equivalent(&b));
        let mut c = InequalitySystem::new(vec!["x".into()]);
        c.rows.push(ineq(&[1], -1)); // x >= 1
        assert!(!a.equivalent(&c));
    }

    #[test]
    fn vertex_enumeration_of_a_square() {
        let mut sys = InequalitySystem::new(vec!["x".into(), "y".into()]);
        sys.rows.push(ineq(&[1, 0], 0)); // x >= 0
        sys.rows.push(ineq(&[-1, 0], 2)); // x <= 2
        sys.rows.push(ineq(&[0, 1], 0));
        sys.rows.push(ineq(&[0, -1], 2));
        let v = sys.vertices().unwrap();
        assert_eq!(
            v,
            vec![qv_from(&[0, 0]), qv_from(&[0, 2]), qv_from(&[2, 0]), qv_from(&[2, 2])]
        );
        // Unbounded set is rejected.
        let mut open = InequalitySystem::new(vec!["x".into()]);
        open.rows.push(ineq(&[1], 0));
        assert!(open.vertices().is_err());
    }

    #[test]
    fn monoid_membership() {
        // A2 simple roots in fundamental-weight coordinates.
        let a1 = qv_from(&[2, -1]);
        let a2 = qv_from(&[-1, 2]);
        let gens = vec![a1.clone(), a2.clone()];
        match monoid_member(&gens, &qv_from(&[1, 1]), 10_000) {
            Membership::Yes(c) => assert_eq!(c, vec![1, 1]),
            other => panic!("expected yes, got {other:?}"),
        }
        // The fundamental weight pi_1 is in the rational cone spanned by
        // the simple roots but not in the integer monoid.
        assert_eq!(monoid_member(&gens, &qv_from(&[1, 0]), 10_000), Membership::No);
        assert_eq!(monoid_member(&gens, &qv_from(&[-1, 0]), 10_000), Membership::No);
        assert_eq!(
            monoid_member(&gens, &[qr(1, 2), qr(1, 2)], 10_000),
            Membership::No
        );
    }
}
