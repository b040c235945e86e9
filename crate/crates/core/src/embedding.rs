//! Embeddings of root data: projected roots, compatible chambers, the
//! centralizer subsystem, the cubicle subdivision of the source dominant
//! chamber, the relative Weyl set, the lifted Weyl action, and duality.
//!
//! An embedding `f: K-tilde -> K` with finite kernel is stored through the
//! weight-restriction matrix `fstar` (source weight coordinates of each
//! target basis weight as columns); the coweight inclusion is its
//! transpose.  All constructions below follow the same pattern: pick a
//! deterministic generic dominant point, act exactly, and verify the
//! defining property of the output rather than trusting genericity.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num::{BigInt, One, Signed, Zero};

use crate::linalg::{primitive_integer, qi, qv_dot, qv_is_zero, qv_zero, QMat, Q, QV};
use crate::polyhedra::{extreme_rays, lp_maximize, Constraint, LpResult, RationalCone};
use crate::rootdata::{RootDatum, WeylElement};
use crate::{Error, Result};

/// Bound on the enumeration of the centralizer Weyl group.
const BAR_WEYL_BOUND: u64 = 100_000;

/// Attempts when drawing a generic interior point.
const GENERIC_ATTEMPTS: usize = 24;

const PRIMES: [i64; 40] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
    97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173,
];

/// One full-dimensional cell of the subdivision of the source dominant
/// chamber induced by the target chamber decomposition.
#[derive(Debug, Clone)]
pub struct Cubicle {
    /// Labelling element of the relative Weyl set: the shortest
    /// representative of its left coset modulo the centralizer Weyl group.
    pub v: WeylElement,
    /// A rational coweight interior to the cell.
    pub interior_point: QV,
    /// Extreme rays of the cell (source coweights, primitive).
    pub rays: Vec<QV>,
    /// Basis of the lineality space of the cell (central directions).
    pub lineality: Vec<QV>,
    /// The projections of the `v`-translated positive roots; the cell is
    /// exactly their common nonnegativity locus.
    pub dual_generators: Vec<QV>,
}

/// The lifted action of the source Weyl group on the target torus.
#[derive(Debug, Clone)]
pub struct LiftJ {
    /// Images of the source simple reflections.
    pub generators: Vec<WeylElement>,
    /// Image of the longest source element.
    pub w0_image: WeylElement,
}

/// An embedding of root data together with its derived chamber data.
#[derive(Debug)]
pub struct EmbeddingData {
    pub source: RootDatum,
    pub target: RootDatum,
    /// Matrix of the weight restriction: `source.rank x target.rank`.
    pub fstar: QMat,
    /// Whether the chambers have been verified/made compatible.
    pub compatible: bool,
    /// The target Weyl element by which the original positive system was
    /// rotated to reach compatibility, when an adjustment was needed.
    pub chamber_adjust: Option<WeylElement>,
    /// Indices of target simple roots killed by the restriction.
    pub bar_simple: Vec<usize>,
    /// Indices (into `target.positive_roots`) of all killed positive roots.
    pub bar_positive_roots: Vec<usize>,
    bar_weyl: Vec<WeylElement>,
    cubicle_cache: OnceLock<Vec<Cubicle>>,
    lift_cache: OnceLock<LiftJ>,
}

impl EmbeddingData {
    fn new_raw(source: RootDatum, target: RootDatum, fstar: QMat) -> Result<EmbeddingData> {
        if fstar.rows != source.rank || fstar.cols != target.rank {
            return Err(Error::Config(format!(
                "restriction matrix is {}x{}, expected {}x{}",
                fstar.rows, fstar.cols, source.rank, target.rank
            )));
        }
        if fstar.rank() != source.rank {
            return Err(Error::Config(
                "embedding is not finite-kernel: the coweight inclusion has a kernel".into(),
            ));
        }
        Ok(EmbeddingData {
            source,
            target,
            fstar,
            compatible: false,
            chamber_adjust: None,
            bar_simple: Vec::new(),
            bar_positive_roots: Vec::new(),
            bar_weyl: Vec::new(),
            cubicle_cache: OnceLock::new(),
            lift_cache: OnceLock::new(),
        })
    }

    /// Embedding given by an explicit restriction matrix on weight
    /// coordinates (rows indexed by source coordinates).
    pub fn from_matrix(source: RootDatum, target: RootDatum, fstar: QMat) -> Result<Self> {
        Self::new_raw(source, target, fstar)
    }

    /// Convenience constructor with integer entries.
    pub fn from_matrix_i64(
        source: RootDatum,
        target: RootDatum,
        rows: &[Vec<i64>],
    ) -> Result<Self> {
        Self::new_raw(source, target, QMat::from_i64_rows(rows))
    }

    /// Embedding into a unitary group defined by a multiset of source
    /// weights (the weights of a representation, listed with
    /// multiplicity).  The target torus coordinates are ordered by
    /// descending height (pairing with the half-sum of positive coroots),
    /// ties broken lexicographically descending, which groups equal
    /// weights consecutively.
    pub fn from_weights(source: RootDatum, weights: &[Vec<i64>]) -> Result<Self> {
        let n = weights.len();
        if n == 0 {
            return Err(Error::Config("empty weight multiset".into()));
        }
        for w in weights {
            if w.len() != source.rank {
                return Err(Error::Config(format!(
                    "weight {:?} has wrong length, expected {}",
                    w, source.rank
                )));
            }
        }
        let rho_cw = source.rho_coweight();
        let mut sorted: Vec<QV> = weights
            .iter()
            .map(|w| w.iter().map(|&c| qi(c)).collect::<QV>())
            .collect();
        sorted.sort_by(|a, b| {
            let ha = qv_dot(a, &rho_cw);
            let hb = qv_dot(b, &rho_cw);
            hb.cmp(&ha).then_with(|| b.cmp(a))
        });
        let label = if n == 1 {
            "u1".to_string()
        } else {
            format!("A{}+u1", n - 1)
        };
        let target = RootDatum::from_type(&label)?;
        // Column j < n-1 holds the restriction of the j-th fundamental
        // weight (sum of the first j+1 torus characters); the last column
        // is the restriction of the central character (sum of all).
        let mut fstar = QMat::zero(source.rank, n);
        let mut acc = qv_zero(source.rank);
        for (j, mu) in sorted.iter().enumerate() {
            for i in 0..source.rank {
                acc[i] = &acc[i] + &mu[i];
            }
            let col = if j + 1 < n { j } else { n - 1 };
            for i in 0..source.rank {
                *fstar.at_mut(i, col) = acc[i].clone();
            }
        }
        Self::new_raw(source, target, fstar)
    }

    /// Diagonal embedding of a group into `m` copies of itself.
    pub fn diagonal(k: &RootDatum, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Config("diagonal embedding needs m >= 1".into()));
        }
        let parts: Vec<&RootDatum> = (0..m).map(|_| k).collect();
        let target = RootDatum::product(&parts)?;
        let mut fstar = QMat::zero(k.rank, m * k.rank);
        for b in 0..m {
            for i in 0..k.rank {
                *fstar.at_mut(i, b * k.rank + i) = Q::one();
            }
        }
        let source = RootDatum::product(&[k])?;
        Self::new_raw(source, target, fstar)
    }

    /// Embedding of a rank-one subgroup with dominant coweight
    /// `h = sum d_i (fundamental coweight i)` of the target; `d` carries
    /// one label per target simple root, each 0, 1 or 2 (0 marks the
    /// roots orthogonal to `h`).
    pub fn sl2(target: RootDatum, d: &[i64]) -> Result<Self> {
        if d.len() != target.ss_rank {
            return Err(Error::Config(format!(
                "expected {} labels, got {}",
                target.ss_rank,
                d.len()
            )));
        }
        if !d.iter().all(|&x| (0..=2).contains(&x)) || d.iter().all(|&x| x == 0) {
            return Err(Error::Config(
                "labels must lie in {0,1,2} and not all vanish".into(),
            ));
        }
        let mut h = qv_zero(target.rank);
        for (i, &di) in d.iter().enumerate() {
            if di != 0 {
                for (k, c) in target.fundamental_coweights[i].iter().enumerate() {
                    h[k] = &h[k] + c * qi(di);
                }
            }
        }
        let source = RootDatum::from_type("A1")?;
        let fstar = QMat::from_rows(&[h]);
        Self::new_raw(source, target, fstar)
    }

    /// Identity embedding of a datum into itself.
    pub fn identity(k: RootDatum) -> Result<Self> {
        let fstar = QMat::identity(k.rank);
        let source = RootDatum::product(&[&k])?;
        Self::new_raw(source, k, fstar)
    }

    // -----------------------------------------------------------------
    // Basic maps
    // -----------------------------------------------------------------

    /// Restrict a target weight to the source torus.
    pub fn pull_weight(&self, lam: &[Q]) -> QV {
        self.fstar.mul_vec(lam)
    }

    /// Include a source coweight into the target Cartan algebra.
    pub fn push_coweight(&self, xi: &[Q]) -> QV {
        self.fstar.transpose().mul_vec(xi)
    }

    /// Restriction of the `i`-th positive target root.
    pub fn projected_positive_root(&self, i: usize) -> QV {
        self.pull_weight(&self.target.positive_root_q(i))
    }

    /// The enumerated centralizer Weyl group (available after
    /// [`EmbeddingData::make_compatible`]).
    pub fn bar_weyl(&self) -> &[WeylElement] {
        &self.bar_weyl
    }

    // -----------------------------------------------------------------
    // Compatible chambers
    // -----------------------------------------------------------------

    /// Deterministic candidate interior point of the source dominant
    /// chamber: prime multiples of the fundamental coweights (and central
    /// directions), larger primes on earlier coordinates.
    fn candidate_point(&self, attempt: usize) -> Result<QV> {
        let d = &self.source;
        if attempt + d.rank > PRIMES.len() {
            return Err(Error::Resource(
                "exhausted the deterministic generic-point sequence".into(),
            ));
        }
        let mut xi = qv_zero(d.rank);
        for i in 0..d.ss_rank {
            let p = qi(PRIMES[attempt + d.rank - 1 - i]);
            for (k, c) in d.fundamental_coweights[i].iter().enumerate() {
                xi[k] = &xi[k] + c * &p;
            }
        }
        for i in d.ss_rank..d.rank {
            xi[i] = qi(PRIMES[attempt + d.rank - 1 - i]);
        }
        Ok(xi)
    }

    /// A verified generic interior point: strictly dominant and off every
    /// hyperplane cut out by a nonzero projected root.
    pub fn generic_interior_point(&self) -> Result<QV> {
        'outer: for attempt in 0..GENERIC_ATTEMPTS {
            let xi = self.candidate_point(attempt)?;
            for i in 0..self.target.positive_roots.len() {
                let proj = self.projected_positive_root(i);
                if !qv_is_zero(&proj) && qv_dot(&proj, &xi).is_zero() {
                    continue 'outer;
                }
            }
            return Ok(xi);
        }
        Err(Error::Resource(
            "no generic interior point found in the deterministic sequence".into(),
        ))
    }

    /// Chamber compatibility test: is there an open subset of the source
    /// dominant chamber interior on which every target simple root is
    /// nonnegative?
    fn is_chamber_compatible(&self) -> bool {
        let mut cons = Vec::new();
        for i in 0..self.source.ss_rank {
            cons.push(Constraint::geq(self.source.simple_root_q(i), Q::one()));
        }
        for j in 0..self.target.ss_rank {
            let proj = self.pull_weight(&self.target.simple_root_q(j));
            if !qv_is_zero(&proj) {
                cons.push(Constraint::geq(proj, Q::one()));
            }
        }
        matches!(
            lp_maximize(&qv_zero(self.source.rank), &cons),
            LpResult::Optimal(_, _)
        )
    }

    /// Verify or establish chamber compatibility, then derive the
    /// centralizer data.  When the given chambers are incompatible the
    /// target positive system is rotated by the Weyl element carrying a
    /// generic pushed-forward interior point to the dominant chamber; the
    /// rotation is recorded in `chamber_adjust`.
    pub fn make_compatible(mut self) -> Result<Self> {
        if !self.is_chamber_compatible() {
            let xi = self.generic_interior_point()?;
            let h = self.push_coweight(&xi);
            let (u, _) = self.target.to_dominant_coweight(&h);
            self.fstar = self.fstar.mul_mat(&u.matrix().to_qmat());
            if !self.is_chamber_compatible() {
                return Err(Error::Verification(
                    "chamber adjustment by a generic point did not reach a compatible chamber"
                        .into(),
                ));
            }
            self.chamber_adjust = Some(u);
        }
        // Killed roots and the killed simple system.
        self.bar_positive_roots = (0..self.target.positive_roots.len())
            .filter(|&i| qv_is_zero(&self.projected_positive_root(i)))
            .collect();
        self.bar_simple = (0..self.target.ss_rank)
            .filter(|&j| qv_is_zero(&self.pull_weight(&self.target.simple_root_q(j))))
            .collect();
        // With compatible chambers the killed simple roots must support
        // every killed positive root.
        for &i in &self.bar_positive_roots {
            let root = &self.target.positive_roots[i];
            let coeffs = self.simple_coefficients(root)?;
            for (j, c) in coeffs.iter().enumerate() {
                if !c.is_zero() && !self.bar_simple.contains(&j) {
                    return Err(Error::Verification(format!(
                        "killed root {:?} involves the surviving simple root {}",
                        root, j
                    )));
                }
            }
        }
        self.bar_weyl = self.target.parabolic_subgroup(&self.bar_simple, BAR_WEYL_BOUND)?;
        self.compatible = true;
        Ok(self)
    }

    /// Expansion of a target root in the simple roots.
    fn simple_coefficients(&self, root: &[i64]) -> Result<QV> {
        let d = &self.target;
        let cols: Vec<QV> = (0..d.ss_rank).map(|i| d.simple_root_q(i)).collect();
        let mat = QMat::from_rows(&cols).transpose();
        let rhs: QV = root.iter().map(|&c| qi(c)).collect();
        mat.solve(&rhs)
            .ok_or_else(|| Error::Verification("root outside the simple-root span".into()))
    }

    fn require_compatible(&self) -> Result<()> {
        if self.compatible {
            Ok(())
        } else {
            Err(Error::Config(
                "embedding not chamber-adjusted: call make_compatible first".into(),
            ))
        }
    }

    // -----------------------------------------------------------------
    // Cubicles
    // -----------------------------------------------------------------

    /// The subdivision of the source dominant chamber into cubicles,
    /// computed as the chambers of the projected-root hyperplane
    /// arrangement (never by enumerating the target Weyl group).
    pub fn cubicles(&self) -> Result<&[Cubicle]> {
        self.require_compatible()?;
        if let Some(c) = self.cubicle_cache.get() {
            return Ok(c);
        }
        let c = self.compute_cubicles()?;
        Ok(self.cubicle_cache.get_or_init(|| c))
    }

    fn compute_cubicles(&self) -> Result<Vec<Cubicle>> {
        let src = &self.source;
        // Distinct hyperplane normals among the nonzero projected roots,
        // canonicalized up to sign.
        let mut seen: BTreeSet<Vec<BigInt>> = BTreeSet::new();
        let mut normals: Vec<QV> = Vec::new();
        for i in 0..self.target.positive_roots.len() {
            let proj = self.projected_positive_root(i);
            if qv_is_zero(&proj) {
                continue;
            }
            let mut p = primitive_integer(&proj);
            if let Some(first) = p.iter().find(|c| !c.is_zero()) {
                if first.is_negative() {
                    for c in p.iter_mut() {
                        *c = -c.clone();
                    }
                }
            }
            if seen.insert(p.clone()) {
                normals.push(p.iter().map(|c| Q::from(c.clone())).collect());
            }
        }
        // Base region: the open source dominant chamber.
        let base: Vec<Constraint> = (0..src.ss_rank)
            .map(|i| Constraint::geq(src.simple_root_q(i), Q::one()))
            .collect();
        let mut regions: Vec<QV> = Vec::new();
        self.split_regions(&normals, 0, base, &mut regions)?;
        let mut out: Vec<Cubicle> = Vec::new();
        for xi in regions {
            let h = self.push_coweight(&xi);
            let (u, _) = self.target.to_dominant_coweight(&h);
            let v = self.target.min_coset_rep_left(&u, &self.bar_simple);
            if out.iter().any(|c| c.v == v) {
                return Err(Error::Verification(
                    "two arrangement chambers produced the same relative Weyl element".into(),
                ));
            }
            // The cell is dual to the cone spanned by the projected
            // v-translated positive roots.
            let mut dual_generators = Vec::new();
            for i in 0..self.target.positive_roots.len() {
                let moved = v.matrix().mul_ivec(&self.target.positive_roots[i]);
                let q: QV = moved.iter().map(|&c| qi(c)).collect();
                dual_generators.push(self.pull_weight(&q));
            }
            let halfspaces: Vec<QV> = dual_generators
                .iter()
                .filter(|g| !qv_is_zero(g))
                .cloned()
                .collect();
            let (lineality, rays) = extreme_rays(src.rank, &halfspaces);
            self.check_cubicle_invariants(&v, &dual_generators)?;
            out.push(Cubicle { v, interior_point: xi, rays, lineality, dual_generators });
        }
        out.sort_by(|a, b| a.v.cmp(&b.v));
        Ok(out)
    }

    /// Depth-first sign-vector enumeration over the arrangement; each
    /// feasible leaf contributes one strictly interior point.
    fn split_regions(
        &self,
        normals: &[QV],
        k: usize,
        cons: Vec<Constraint>,
        out: &mut Vec<QV>,
    ) -> Result<()> {
        let point = match lp_maximize(&qv_zero(self.source.rank), &cons) {
            LpResult::Optimal(_, p) => p,
            _ => return Ok(()),
        };
        if k == normals.len() {
            out.push(point);
            return Ok(());
        }
        for sign in [1i64, -1] {
            let mut next = cons.clone();
            let n: QV = normals[k].iter().map(|c| c * qi(sign)).collect();
            next.push(Constraint::geq(n, Q::one()));
            self.split_regions(normals, k + 1, next, out)?;
        }
        Ok(())
    }

    fn check_cubicle_invariants(&self, v: &WeylElement, dual_generators: &[QV]) -> Result<()> {
        // The killed simple system equals the killed part of the
        // v-translated simple system.
        let mut vs_bar: Vec<usize> = Vec::new();
        for j in 0..self.target.ss_rank {
            let moved = v.matrix().mul_ivec(&self.target.simple_roots[j]);
            let q: QV = moved.iter().map(|&c| qi(c)).collect();
            if qv_is_zero(&self.pull_weight(&q)) {
                let idx = self
                    .target
                    .positive_roots
                    .iter()
                    .position(|r| *r == moved)
                    .ok_or_else(|| {
                        Error::Verification(
                            "killed translated simple root is not positive".into(),
                        )
                    })?;
                let simple_idx = self
                    .target
                    .simple_roots
                    .iter()
                    .position(|r| *r == self.target.positive_roots[idx]);
                match simple_idx {
                    Some(s) if self.bar_simple.contains(&s) => vs_bar.push(s),
                    _ => {
                        return Err(Error::Verification(
                            "killed translated simple root is not a killed simple root".into(),
                        ))
                    }
                }
            }
        }
        vs_bar.sort_unstable();
        if vs_bar != self.bar_simple {
            return Err(Error::Verification(format!(
                "translated simple system meets the killed roots in {:?}, expected {:?}",
                vs_bar, self.bar_simple
            )));
        }
        // No projected translated positive root is a negative source root,
        // and the source root cone embeds in the projected cone.
        for g in dual_generators {
            let neg: QV = g.iter().map(|c| -c.clone()).collect();
            let is_neg_root = self.source.positive_roots.iter().any(|r| {
                r.len() == neg.len() && r.iter().zip(neg.iter()).all(|(a, b)| &qi(*a) == b)
            });
            if !qv_is_zero(g) && is_neg_root {
                return Err(Error::Verification(
                    "a projected translated positive root is negative for the source".into(),
                ));
            }
        }
        let cone = RationalCone::from_generators(
            self.source.rank,
            dual_generators
                .iter()
                .filter(|g| !qv_is_zero(g))
                .cloned()
                .collect::<Vec<_>>(),
            Vec::new(),
        );
        for i in 0..self.source.ss_rank {
            if !cone.contains(&self.source.simple_root_q(i)) {
                return Err(Error::Verification(
                    "source root cone not contained in the projected cone".into(),
                ));
            }
        }
        Ok(())
    }

    // -----------------------------------------------------------------
    // Lifted Weyl action
    // -----------------------------------------------------------------

    /// The lifting of the source Weyl group into the target Weyl group:
    /// the unique extension of the coweight inclusion's equivariance that
    /// preserves the killed simple system.
    pub fn lift_j(&self) -> Result<&LiftJ> {
        self.require_compatible()?;
        if let Some(l) = self.lift_cache.get() {
            return Ok(l);
        }
        let l = self.compute_lift()?;
        Ok(self.lift_cache.get_or_init(|| l))
    }

    fn compute_lift(&self) -> Result<LiftJ> {
        let src = &self.source;
        let tgt = &self.target;
        let xi = self.generic_interior_point()?;
        let h = self.push_coweight(&xi);
        let (u1, _) = tgt.to_dominant_coweight(&h);
        let mut generators = Vec::new();
        for i in 0..src.ss_rank {
            let s = src.simple_reflection(i);
            let moved = s.act_coweight(&xi);
            let (u2, _) = tgt.to_dominant_coweight(&self.push_coweight(&moved));
            let mut found: Option<WeylElement> = None;
            for wbar in &self.bar_weyl {
                let cand = tgt.mul(&tgt.mul(&u2, wbar), &tgt.inv(&u1));
                if self.preserves_bar_simple(&cand) && self.is_equivariant(&cand, &s) {
                    if found.is_some() {
                        return Err(Error::Verification(
                            "lifted reflection is not unique".into(),
                        ));
                    }
                    found = Some(cand);
                }
            }
            let j_i = found.ok_or_else(|| {
                Error::Verification(format!(
                    "no lift of source reflection {i} preserves the killed simple system"
                ))
            })?;
            generators.push(j_i);
        }
        // Homomorphism property on the Coxeter presentation.
        for (i, a) in generators.iter().enumerate() {
            if !tgt.mul(a, a).is_identity() {
                return Err(Error::Verification(format!("lift of s{i} is not an involution")));
            }
            for (k, b) in generators.iter().enumerate().skip(i + 1) {
                let m = match src.cartan[i][k] * src.cartan[k][i] {
                    0 => 2,
                    1 => 3,
                    2 => 4,
                    3 => 6,
                    _ => {
                        return Err(Error::Verification("invalid Cartan product".into()));
                    }
                };
                let ab = tgt.mul(a, b);
                let mut acc = tgt.identity();
                for _ in 0..m {
                    acc = tgt.mul(&acc, &ab);
                }
                if !acc.is_identity() {
                    return Err(Error::Verification(format!(
                        "braid relation of order {m} fails for lifted s{i}, s{k}"
                    )));
                }
            }
        }
        let mut w0_image = tgt.identity();
        for &i in src.longest_element().word() {
            w0_image = tgt.mul(&w0_image, &generators[i]);
        }
        Ok(LiftJ { generators, w0_image })
    }

    fn preserves_bar_simple(&self, w: &WeylElement) -> bool {
        let set: BTreeSet<Vec<i64>> = self
            .bar_simple
            .iter()
            .map(|&j| self.target.simple_roots[j].clone())
            .collect();
        set.iter().all(|r| set.contains(&w.matrix().mul_ivec(r)))
    }

    /// Full matrix equivariance: including a coweight and then acting by
    /// the candidate equals acting by the source reflection first.
    fn is_equivariant(&self, cand: &WeylElement, s: &WeylElement) -> bool {
        for k in 0..self.source.rank {
            let mut e = qv_zero(self.source.rank);
            e[k] = Q::one();
            let lhs = cand.act_coweight(&self.push_coweight(&e));
            let rhs = self.push_coweight(&s.act_coweight(&e));
            if lhs != rhs {
                return false;
            }
        }
        true
    }

    /// Image of an arbitrary source element under the lift.
    pub fn j_of(&self, wt: &WeylElement) -> Result<WeylElement> {
        let l = self.lift_j()?;
        let mut acc = self.target.identity();
        for &i in wt.word() {
            acc = self.target.mul(&acc, &l.generators[i]);
        }
        Ok(acc)
    }

    // -----------------------------------------------------------------
    // Duality
    // -----------------------------------------------------------------

    /// Dual of a target Weyl element: `j(longest source) * w * (longest
    /// target)`.
    pub fn dual_target(&self, w: &WeylElement) -> Result<WeylElement> {
        let l = self.lift_j()?;
        let w0 = self.target.longest_element();
        Ok(self.target.mul(&self.target.mul(&l.w0_image, w), &w0))
    }

    /// Dual of a source Weyl element: conjugation by the longest element.
    pub fn dual_source(&self, wt: &WeylElement) -> WeylElement {
        let w0 = self.source.longest_element();
        self.source.mul(&self.source.mul(&w0, wt), &w0)
    }

    // -----------------------------------------------------------------
    // Diagnostics
    // -----------------------------------------------------------------

    /// Machine-readable report: projected roots with multiplicities, the
    /// killed simple system, cubicles, and the lifted generators.
    pub fn diagnostics_json(&self) -> Result<serde_json::Value> {
        self.require_compatible()?;
        let mut proj_counts: Vec<(Vec<String>, usize)> = Vec::new();
        let mut tally: std::collections::BTreeMap<Vec<String>, usize> =
            std::collections::BTreeMap::new();
        for i in 0..self.target.positive_roots.len() {
            let p = self.projected_positive_root(i);
            let key: Vec<String> = p.iter().map(|c| c.to_string()).collect();
            *tally.entry(key).or_insert(0) += 1;
        }
        for (k, c) in tally {
            proj_counts.push((k, c));
        }
        let cubicles = self.cubicles()?;
        let lift = self.lift_j()?;
        let perm = |w: &WeylElement| -> serde_json::Value {
            match self.target.to_permutation(w) {
                Some(p) => serde_json::json!(crate::rootdata::cycles_string(&p)),
                None => serde_json::Value::Null,
            }
        };
        let lift_obj = {
            let mut m = serde_json::Map::new();
            for (i, g) in lift.generators.iter().enumerate() {
                m.insert(
                    format!("s{}", i + 1),
                    serde_json::json!({
                        "word": g.word_string(),
                        "cycles": perm(g),
                    }),
                );
            }
            m.insert(
                "w0".into(),
                serde_json::json!({
                    "word": lift.w0_image.word_string(),
                    "cycles": perm(&lift.w0_image),
                }),
            );
            serde_json::Value::Object(m)
        };
        Ok(serde_json::json!({
            "source": self.source.label,
            "target": self.target.label,
            "fstar": (0..self.fstar.rows).map(|i| {
                self.fstar.row(i).iter().map(crate::polyhedra::q_json).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
            "chamber_adjust": self.chamber_adjust.as_ref().map(|w| w.word_string()),
            "projected_positive_roots": proj_counts.iter().map(|(k, c)| {
                serde_json::json!({"value": k, "multiplicity": c})
            }).collect::<Vec<_>>(),
            "bar_simple": self.bar_simple,
            "bar_weyl_order": self.bar_weyl.len(),
            "cubicles": cubicles.iter().map(|c| serde_json::json!({
                "v": c.v.word_string(),
                "v_cycles": perm(&c.v),
                "v_length": c.v.length(),
                "interior_point": c.interior_point.iter().map(crate::polyhedra::q_json).collect::<Vec<_>>(),
                "rays": c.rays.iter().map(|r| r.iter().map(crate::polyhedra::q_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "lineality": c.lineality.iter().map(|r| r.iter().map(crate::polyhedra::q_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "lift": lift_obj,
        }))
    }
}
