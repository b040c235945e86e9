//! Inequality generators for branching problems: the moment cone of pairs
//! of dominant weights, the moment polytope of a single coadjoint orbit,
//! the invariant cone, the scalarized generator over subdivision rays, a
//! lattice-level necessary condition, and the duality involution.
//!
//! Every row carries provenance: either a chamber/center constraint or
//! the triple of Weyl elements (and the cell ray) that produced it
//! through the cohomological selection rule.

use std::collections::{BTreeSet, HashMap};

use num::{Signed, ToPrimitive, Zero};

use crate::embedding::EmbeddingData;
use crate::linalg::{canonical_ray, primitive_integer, qi, qv_dot, qv_neg, qv_zero, Q, QV};
use crate::polyhedra::{monoid_member, InequalitySystem, Membership, Provenance, Row};
use crate::rootdata::{RootDatum, WeylElement, DEFAULT_WEYL_BOUND};
use crate::schubert::{class_single, pull_back, Class, SchubertTable};
use crate::{Error, Result};

/// Bound on the number of target Weyl elements visited during the
/// degree-filtered enumeration.
const ENUMERATION_BOUND: u64 = 100_000;

/// What to generate.
#[derive(Debug, Clone)]
pub enum Mode {
    /// The cone of admissible pairs of dominant weights.
    Cone,
    /// The polytope of admissible source weights at a fixed dominant
    /// rational target weight.
    Polytope(QV),
    /// The cone of target weights whose restrictions contain invariants.
    Invariant,
    /// The ray-scalarized generator, equivalent to `Cone`.
    Scalar,
}

/// A fully specified problem instance.
#[derive(Debug)]
pub struct MomentProblem<'a> {
    pub embedding: &'a EmbeddingData,
    pub mode: Mode,
}

impl<'a> MomentProblem<'a> {
    pub fn solve(&self) -> Result<InequalitySystem> {
        let g = InequalityGenerator::new(self.embedding)?;
        match &self.mode {
            Mode::Cone => g.cone_inequalities(),
            Mode::Polytope(lam) => g.polytope_inequalities(lam),
            Mode::Invariant => g.invariant_inequalities(),
            Mode::Scalar => g.scalar_inequalities(),
        }
    }
}

/// One qualifying selection: the source class index, the target element,
/// the cubicle, and the (nonzero) intersection coefficient.
#[derive(Debug, Clone)]
struct SupportEntry {
    /// Source Weyl element indexing the class whose coefficient is
    /// nonzero in the pulled-back translated target class.
    utilde: WeylElement,
    /// Target element `w` with `w * v` the translated class index.
    w: WeylElement,
    /// Index into the cubicle list.
    cubicle: usize,
    /// The intersection coefficient (recorded for diagnostics).
    #[allow(dead_code)]
    coeff: Q,
}

/// Answer of the lattice-level necessary condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeAnswer {
    Yes,
    No,
    Unknown,
}

/// Shared state for the generators: Schubert tables on both sides plus
/// the memoized qualifying-triple enumeration.
pub struct InequalityGenerator<'a> {
    pub embedding: &'a EmbeddingData,
    src_table: SchubertTable<'a>,
    tgt_table: SchubertTable<'a>,
    support: std::cell::OnceCell<Vec<SupportEntry>>,
}

impl<'a> InequalityGenerator<'a> {
    pub fn new(embedding: &'a EmbeddingData) -> Result<Self> {
        if !embedding.compatible {
            return Err(Error::Config(
                "embedding not chamber-adjusted: call make_compatible first".into(),
            ));
        }
        Ok(InequalityGenerator {
            embedding,
            src_table: SchubertTable::new(&embedding.source)?,
            tgt_table: SchubertTable::new(&embedding.target)?,
            support: std::cell::OnceCell::new(),
        })
    }

    fn source(&self) -> &RootDatum {
        &self.embedding.source
    }

    fn target(&self) -> &RootDatum {
        &self.embedding.target
    }

    /// Pull back the `v`-translated class of `u` to the source.
    fn pulled(&self, v: &WeylElement, u: &WeylElement) -> Result<Class> {
        let moved = self.tgt_table.weyl_action(v, &class_single(u.clone(), qi(1)));
        pull_back(
            &self.src_table,
            &self.tgt_table,
            &self.embedding.fstar,
            &moved,
            DEFAULT_WEYL_BOUND,
        )
    }

    /// Enumerate all qualifying selections: cubicle `v` outermost, then
    /// translated target classes by degree (only degrees up to the
    /// source dimension can survive the pullback), then the support of
    /// the pulled-back class.
    fn support_entries(&self) -> Result<&[SupportEntry]> {
        if let Some(s) = self.support.get() {
            return Ok(s);
        }
        let max_deg = self.source().positive_roots.len();
        let us = self.target().elements_up_to_length(max_deg, ENUMERATION_BOUND)?;
        let mut entries = Vec::new();
        let cubicles = self.embedding.cubicles()?;
        for (ci, cubicle) in cubicles.iter().enumerate() {
            let vinv = self.target().inv(&cubicle.v);
            for u in &us {
                let pulled = self.pulled(&cubicle.v, u)?;
                if pulled.is_empty() {
                    continue;
                }
                let w = self.target().mul(u, &vinv);
                for (ut, c) in pulled {
                    if !c.is_zero() {
                        entries.push(SupportEntry {
                            utilde: ut,
                            w: w.clone(),
                            cubicle: ci,
                            coeff: c,
                        });
                    }
                }
            }
        }
        Ok(self.support.get_or_init(|| entries))
    }

    fn var_names(&self, source_side: bool, target_side: bool) -> Vec<String> {
        let mut names = Vec::new();
        if source_side {
            for i in 0..self.source().rank {
                names.push(format!("xt{}", i + 1));
            }
        }
        if target_side {
            for j in 0..self.target().rank {
                names.push(format!("x{}", j + 1));
            }
        }
        names
    }

    fn chamber_rows(&self, sys: &mut InequalitySystem, source_side: bool, target_side: bool) {
        let n = sys.variables.len();
        if source_side {
            for i in 0..self.source().ss_rank {
                let mut a = qv_zero(n);
                a[i] = qi(1);
                sys.rows.push(Row::geq0(
                    a,
                    Provenance::Chamber { group: "source".into(), index: i },
                ));
            }
        }
        if target_side {
            let off = if source_side { self.source().rank } else { 0 };
            for j in 0..self.target().ss_rank {
                let mut a = qv_zero(n);
                a[off + j] = qi(1);
                sys.rows.push(Row::geq0(
                    a,
                    Provenance::Chamber { group: "target".into(), index: j },
                ));
            }
        }
    }

    /// Central directions of the subdivision (identical for every
    /// cubicle): the lineality space of any cell.
    fn lineality(&self) -> Result<Vec<QV>> {
        let cubicles = self.embedding.cubicles()?;
        Ok(cubicles
            .first()
            .map(|c| c.lineality.clone())
            .unwrap_or_default())
    }

    /// Coefficients of the pairing of the ray against the pair
    /// `(lamt, lam)`: the ray is moved to the acting chambers on both
    /// sides.
    fn pair_coeffs(&self, wt: &WeylElement, w: &WeylElement, ray: &[Q]) -> QV {
        let mut coeffs = wt.act_coweight(ray);
        coeffs.extend(w.act_coweight(&self.embedding.push_coweight(ray)));
        coeffs
    }

    /// The moment-cone generator: rows over the cubicle rays for every
    /// qualifying triple, plus chamber rows and central equalities, in
    /// the joint variables (source weight, target weight).
    pub fn cone_inequalities(&self) -> Result<InequalitySystem> {
        let cubicles = self.embedding.cubicles()?;
        let w0t = self.src_table.w0().clone();
        let mut sys = InequalitySystem::new(self.var_names(true, true));
        self.chamber_rows(&mut sys, true, true);
        self.center_rows(&mut sys)?;
        for entry in self.support_entries()? {
            let wt = self.source().mul(&w0t, &entry.utilde);
            let cubicle = &cubicles[entry.cubicle];
            for ray in &cubicle.rays {
                sys.rows.push(Row::geq0(
                    self.pair_coeffs(&wt, &entry.w, ray),
                    self.triple_provenance(&wt, &entry.w, entry.cubicle, ray, None),
                ));
            }
        }
        Ok(sys)
    }

    /// Central equalities: on every lineality direction the pairing is
    /// Weyl-independent, so membership forces one equality per basis
    /// vector of the lineality space.
    fn center_rows(&self, sys: &mut InequalitySystem) -> Result<()> {
        for chi in self.lineality()? {
            let mut coeffs = chi.clone();
            coeffs.extend(self.embedding.push_coweight(&chi));
            sys.rows.push(Row {
                coeffs,
                constant: Q::zero(),
                equality: true,
                provenance: Provenance::Center,
            });
        }
        Ok(())
    }

    fn triple_provenance(
        &self,
        wt: &WeylElement,
        w: &WeylElement,
        cubicle: usize,
        ray: &[Q],
        k: Option<usize>,
    ) -> Provenance {
        let ints = primitive_integer(ray);
        Provenance::Triple {
            wtilde: wt.word_string(),
            w: w.word_string(),
            v: self.embedding.cubicles().unwrap()[cubicle].v.word_string(),
            ray: ints.iter().map(|x| x.to_i64().unwrap_or(0)).collect(),
            k,
        }
    }

    /// The orbit-polytope generator at a fixed dominant rational target
    /// weight: rows in the source weight only.
    pub fn polytope_inequalities(&self, lam: &[Q]) -> Result<InequalitySystem> {
        if lam.len() != self.target().rank {
            return Err(Error::Config("weight has the wrong rank".into()));
        }
        if !self.target().is_dominant_weight(lam) {
            return Err(Error::Config("polytope weight must be dominant".into()));
        }
        let cubicles = self.embedding.cubicles()?;
        let mut sys = InequalitySystem::new(self.var_names(true, false));
        self.chamber_rows(&mut sys, true, false);
        for chi in self.lineality()? {
            let constant = qv_dot(lam, &self.embedding.push_coweight(&chi));
            sys.rows.push(Row {
                coeffs: qv_neg(&chi),
                constant,
                equality: true,
                provenance: Provenance::Center,
            });
        }
        for entry in self.support_entries()? {
            let wt = &entry.utilde;
            let cubicle = &cubicles[entry.cubicle];
            for ray in &cubicle.rays {
                // <w~^{-1} lamt, ray> <= <w^{-1} lam, pushed ray>.
                let coeffs = qv_neg(&wt.act_coweight(ray));
                let constant =
                    qv_dot(lam, &entry.w.act_coweight(&self.embedding.push_coweight(ray)));
                sys.rows.push(Row {
                    coeffs,
                    constant,
                    equality: false,
                    provenance: self.triple_provenance(wt, &entry.w, entry.cubicle, ray, None),
                });
            }
        }
        Ok(sys)
    }

    /// The invariant-cone generator: target weights whose orbit polytope
    /// contains the origin; rows in the target weight only.
    pub fn invariant_inequalities(&self) -> Result<InequalitySystem> {
        let cubicles = self.embedding.cubicles()?;
        let mut sys = InequalitySystem::new(self.var_names(false, true));
        self.chamber_rows(&mut sys, false, true);
        for chi in self.lineality()? {
            sys.rows.push(Row {
                coeffs: self.embedding.push_coweight(&chi),
                constant: Q::zero(),
                equality: true,
                provenance: Provenance::Center,
            });
        }
        // Distinct (w, v) with a nonzero pulled-back translated class.
        let mut seen: BTreeSet<(usize, WeylElement)> = BTreeSet::new();
        for entry in self.support_entries()? {
            if !seen.insert((entry.cubicle, entry.w.clone())) {
                continue;
            }
            let cubicle = &cubicles[entry.cubicle];
            for ray in &cubicle.rays {
                let coeffs = entry.w.act_coweight(&self.embedding.push_coweight(ray));
                sys.rows.push(Row::geq0(
                    coeffs,
                    self.triple_provenance(
                        &self.source().identity(),
                        &entry.w,
                        entry.cubicle,
                        ray,
                        None,
                    ),
                ));
            }
        }
        Ok(sys)
    }

    /// The scalarized generator: one ray of the subdivision at a time,
    /// with minimal coset representatives modulo the ray stabilizers and
    /// the same cohomological selection evaluated at the full flag level.
    pub fn scalar_inequalities(&self) -> Result<InequalitySystem> {
        let cubicles = self.embedding.cubicles()?;
        let src = self.source();
        let tgt = self.target();
        let w0t = self.src_table.w0().clone();
        // Collect the distinct rays of the subdivision, each with one
        // cubicle containing it.
        let mut rays: Vec<(QV, usize)> = Vec::new();
        let mut seen: BTreeSet<Vec<num::BigInt>> = BTreeSet::new();
        for (ci, c) in cubicles.iter().enumerate() {
            for ray in &c.rays {
                let canon = canonical_ray(ray);
                if seen.insert(primitive_integer(&canon)) {
                    rays.push((canon, ci));
                }
            }
        }
        let mut sys = InequalitySystem::new(self.var_names(true, true));
        self.chamber_rows(&mut sys, true, true);
        self.center_rows(&mut sys)?;
        let max_deg = src.positive_roots.len();
        let mut pull_cache: HashMap<(usize, WeylElement), Class> = HashMap::new();
        for (k, (chi, ci)) in rays.iter().enumerate() {
            let v = &cubicles[*ci].v;
            let jt: Vec<usize> = (0..src.ss_rank)
                .filter(|&i| qv_dot(&src.simple_root_q(i), chi).is_zero())
                .collect();
            let hv = tgt.inv(v).act_coweight(&self.embedding.push_coweight(chi));
            if !tgt.is_dominant_coweight(&hv) {
                return Err(Error::Verification(
                    "translated pushed ray is not dominant for its cubicle".into(),
                ));
            }
            let j: Vec<usize> = (0..tgt.ss_rank)
                .filter(|&i| qv_dot(&tgt.simple_root_q(i), &hv).is_zero())
                .collect();
            let src_reps = src.coset_reps(&jt, DEFAULT_WEYL_BOUND)?;
            let tgt_reps = tgt.coset_reps(&j, DEFAULT_WEYL_BOUND)?;
            for w in &tgt_reps {
                let u = tgt.min_coset_rep_right(&tgt.mul(w, v), &j);
                if u.length() > max_deg {
                    continue;
                }
                let pulled = match pull_cache.get(&(*ci, u.clone())) {
                    Some(p) => p.clone(),
                    None => {
                        let p = self.pulled(v, &u)?;
                        pull_cache.insert((*ci, u.clone()), p.clone());
                        p
                    }
                };
                if pulled.is_empty() {
                    continue;
                }
                for wt in &src_reps {
                    let ut = src.min_coset_rep_right(&src.mul(&w0t, wt), &jt);
                    let qualifies = pulled.get(&ut).map(|c| !c.is_zero()).unwrap_or(false);
                    if qualifies {
                        sys.rows.push(Row::geq0(
                            self.pair_coeffs(wt, w, chi),
                            self.triple_provenance(wt, w, *ci, chi, Some(k)),
                        ));
                    }
                }
            }
        }
        Ok(sys)
    }

    /// Lattice-level necessary condition for the occurrence of the
    /// source irreducible `lamt` in the restriction of `lam`: the
    /// defining memberships must hold over the monoid generated by the
    /// projected translated positive roots, not just the rational cone.
    pub fn lattice_necessary(
        &self,
        lamt: &[i64],
        lam: &[i64],
        budget: u64,
    ) -> Result<LatticeAnswer> {
        let cubicles = self.embedding.cubicles()?;
        let lamt_q: QV = lamt.iter().map(|&c| qi(c)).collect();
        let lam_q: QV = lam.iter().map(|&c| qi(c)).collect();
        let mut unknown = false;
        for entry in self.support_entries()? {
            let wt = &entry.utilde;
            let cubicle = &cubicles[entry.cubicle];
            // target side of the membership: f*(w^{-1} lam) - w~^{-1} lamt
            // must be a nonnegative integer combination of the projected
            // translated positive roots.
            let winv_lam = self.target().inv(&entry.w).act_weight(&lam_q);
            let wtinv_lamt = self.source().inv(wt).act_weight(&lamt_q);
            let x: QV = self
                .embedding
                .pull_weight(&winv_lam)
                .iter()
                .zip(&wtinv_lamt)
                .map(|(a, b)| a - b)
                .collect();
            match monoid_member(&cubicle.dual_generators, &x, budget) {
                Membership::Yes(_) => {}
                Membership::No => return Ok(LatticeAnswer::No),
                Membership::Unknown => unknown = true,
            }
        }
        Ok(if unknown { LatticeAnswer::Unknown } else { LatticeAnswer::Yes })
    }

    /// Transport a system through the duality involution
    /// `(lamt, lam) -> (-w0t lamt, -w0 lam)`: every selection triple maps
    /// to its dual triple and every ray to its reflected ray.  The result
    /// describes the same set.
    pub fn apply_duality(&self, sys: &InequalitySystem) -> Result<InequalitySystem> {
        let src = self.source();
        let tgt = self.target();
        let w0t = self.src_table.w0().clone();
        let w0 = tgt.longest_element();
        let jw0 = self.embedding.lift_j()?.w0_image.clone();
        let cubicles = self.embedding.cubicles()?;
        let mut out = InequalitySystem::new(sys.variables.clone());
        for row in &sys.rows {
            let (wt_s, w_s, ray) = match &row.provenance {
                Provenance::Triple { wtilde, w, ray, .. } => (wtilde, w, ray),
                _ => {
                    out.rows.push(row.clone());
                    continue;
                }
            };
            if !row.constant.is_zero() {
                return Err(Error::Config(
                    "duality transport applies to homogeneous systems".into(),
                ));
            }
            let wt = src.element_from_word(&parse_word(wt_s)?);
            let w = tgt.element_from_word(&parse_word(w_s)?);
            // Dual source element: conjugation by the longest element.
            let wt_d = src.mul(&src.mul(&w0t, &wt), &w0t);
            // Dual target element of the inverse, inverted back.
            let w_d = tgt.mul(&tgt.mul(&w0, &w), &jw0);
            // Reflected ray, located in its (dual) cubicle.
            let ray_q: QV = ray.iter().map(|&c| qi(c)).collect();
            let chi_d: QV = qv_neg(&w0t.act_coweight(&ray_q));
            let h = self.embedding.push_coweight(&chi_d);
            let (uu, _) = tgt.to_dominant_coweight(&h);
            let v_d = tgt.min_coset_rep_left(&uu, &self.embedding.bar_simple);
            let ci = cubicles
                .iter()
                .position(|c| c.v == v_d)
                .ok_or_else(|| {
                    Error::Verification("reflected ray lies in no cubicle".into())
                })?;
            out.rows.push(Row::geq0(
                self.pair_coeffs(&wt_d, &w_d, &chi_d),
                self.triple_provenance(&wt_d, &w_d, ci, &chi_d, None),
            ));
        }
        Ok(out)
    }
}

/// Closed-form admissible interval for a rank-one subgroup embedding:
/// `max(0, -lam(h) + max_a d_a lam(a_vee)) <= lamt <= lam(h)` where `h`
/// is the defining coweight and `d_a` its simple-root labels.
pub fn sl2_interval(e: &EmbeddingData, lam: &[Q]) -> Result<(Q, Q)> {
    if e.source.ss_rank != 1 || e.source.rank != 1 {
        return Err(Error::Config("interval formula needs a rank-one source".into()));
    }
    if !e.target.is_dominant_weight(lam) {
        return Err(Error::Config("weight must be dominant".into()));
    }
    let hi = e.pull_weight(lam)[0].clone();
    let mut best: Option<Q> = None;
    for j in 0..e.target.ss_rank {
        let d = e.pull_weight(&e.target.simple_root_q(j))[0].clone();
        if d.is_zero() {
            continue;
        }
        let cand = &d * &lam[j];
        if best.as_ref().map(|b| cand > *b).unwrap_or(true) {
            best = Some(cand);
        }
    }
    let lo_raw = -&hi + best.unwrap_or_else(Q::zero);
    let lo = if lo_raw.is_negative() { Q::zero() } else { lo_raw };
    Ok((lo, hi))
}

/// Parse a word string such as `"s1*s2*s1"` (or `"e"`) back to 0-based
/// letters.
fn parse_word(s: &str) -> Result<Vec<usize>> {
    if s == "e" {
        return Ok(Vec::new());
    }
    s.split('*')
        .map(|part| {
            part.strip_prefix('s')
                .and_then(|n| n.parse::<usize>().ok())
                .and_then(|n| n.checked_sub(1))
                .ok_or_else(|| Error::Config(format!("bad word string `{s}`")))
        })
        .collect()
}

/// Machine-readable report for a generated system, in the stable schema
/// used by the command-line tool.
pub fn report_json(
    problem: serde_json::Value,
    sys: &InequalitySystem,
    pruned: bool,
    equivalences_checked: &[String],
) -> serde_json::Value {
    let rows: Vec<serde_json::Value> = sys
        .rows
        .iter()
        .map(|r| {
            let c = r.canonical();
            let mut coeffs_num: Vec<String> =
                c.coeffs.iter().map(|x| x.numer().to_string()).collect();
            let mut coeffs_den: Vec<String> =
                c.coeffs.iter().map(|x| x.denom().to_string()).collect();
            coeffs_num.push(c.constant.numer().to_string());
            coeffs_den.push(c.constant.denom().to_string());
            serde_json::json!({
                "coeffs_num": coeffs_num,
                "coeffs_den": coeffs_den,
                "equality": c.equality,
                "provenance": c.provenance.to_json(),
            })
        })
        .collect();
    serde_json::json!({
        "problem": problem,
        "variables": sys.variables,
        "rows": rows,
        "pruned": pruned,
        "equivalences_checked": equivalences_checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::qv_from;

    fn gen_for(e: &EmbeddingData) -> InequalityGenerator<'_> {
        InequalityGenerator::new(e).unwrap()
    }

    #[test]
    fn identity_embedding_forces_equality() {
        let d = RootDatum::from_type("A2").unwrap();
        let e = EmbeddingData::identity(d).unwrap().make_compatible().unwrap();
        let g = gen_for(&e);
        let cone = g.cone_inequalities().unwrap();
        // The pair cone is the graph of the duality involution: the slice
        // at a fixed second weight is the orbit polytope of its dual
        // orbit, so lamt = -w0(lam), which for A2 swaps the two
        // fundamental coordinates.
        let mut expected = InequalitySystem::new(cone.variables.clone());
        for i in 0..2 {
            let mut a = qv_zero(4);
            a[i] = qi(1);
            a[3 - i] = qi(-1);
            expected.rows.push(Row {
                coeffs: a,
                constant: Q::zero(),
                equality: true,
                provenance: Provenance::Other("equal".into()),
            });
            let mut b = qv_zero(4);
            b[i + 2] = qi(1);
            expected.rows.push(Row::geq0(b, Provenance::Other("dominant".into())));
        }
        assert!(cone.equivalent(&expected));
        assert!(cone.contains(&qv_from(&[1, 0, 0, 1])));
        assert!(!cone.contains(&qv_from(&[1, 0, 1, 0])));
        // The orbit polytope itself is in the branching normalization:
        // restricting along the identity leaves the single point lam.
        let poly = g.polytope_inequalities(&qv_from(&[0, 1])).unwrap();
        assert_eq!(poly.vertices().unwrap(), vec![qv_from(&[0, 1])]);
        let scalar = g.scalar_inequalities().unwrap();
        assert!(scalar.equivalent(&cone));
        // Invariant cone: only the zero weight.
        let inv = g.invariant_inequalities().unwrap();
        assert!(inv.contains(&qv_zero(2)));
        assert!(!inv.contains(&qv_from(&[1, 0])));
        assert!(!inv.contains(&qv_from(&[0, 1])));
    }

    #[test]
    fn torus_polytopes_are_weight_orbit_hulls() {
        let b2 = RootDatum::from_type("B2").unwrap();
        let t = RootDatum::from_type("u2").unwrap();
        let fstar = crate::linalg::QMat::identity(2);
        let e = EmbeddingData::from_matrix(t, b2, fstar)
            .unwrap()
            .make_compatible()
            .unwrap();
        assert_eq!(e.cubicles().unwrap().len(), 8);
        let g = gen_for(&e);
        let lam = qv_from(&[1, 2]);
        let sys = g.polytope_inequalities(&lam).unwrap();
        let mut verts = sys.vertices().unwrap();
        verts.sort();
        let b2 = RootDatum::from_type("B2").unwrap();
        let mut orbit: Vec<QV> = b2
            .enumerate_weyl(100)
            .unwrap()
            .iter()
            .map(|w| w.act_weight(&lam))
            .collect();
        orbit.sort();
        orbit.dedup();
        assert_eq!(verts, orbit);
    }

    #[test]
    fn rank_one_tensor_cone() {
        let a1 = RootDatum::from_type("A1").unwrap();
        let e = EmbeddingData::diagonal(&a1, 2).unwrap().make_compatible().unwrap();
        let g = gen_for(&e);
        let cone = g.cone_inequalities().unwrap();
        // Clebsch-Gordan triangle: |a-b| <= c <= a+b (parity is a lattice
        // phenomenon, invisible to the rational cone).
        for (c, a, b, inside) in [
            (1, 1, 2, true),
            (3, 1, 2, true),
            (2, 1, 2, true),
            (4, 1, 2, false),
            (0, 1, 2, false),
            (0, 2, 2, true),
        ] {
            let pt = qv_from(&[c, a, b]);
            assert_eq!(cone.contains(&pt), inside, "c={c} a={a} b={b}");
        }
        let scalar = g.scalar_inequalities().unwrap();
        assert!(scalar.equivalent(&cone));
    }

    #[test]
    fn lattice_condition_sees_parity() {
        let a1 = RootDatum::from_type("A1").unwrap();
        let e = EmbeddingData::diagonal(&a1, 2).unwrap().make_compatible().unwrap();
        let g = gen_for(&e);
        assert_eq!(g.lattice_necessary(&[2], &[1, 2], 10_000).unwrap(), LatticeAnswer::No);
        assert_eq!(g.lattice_necessary(&[3], &[1, 2], 10_000).unwrap(), LatticeAnswer::Yes);
        assert_eq!(g.lattice_necessary(&[1], &[1, 2], 10_000).unwrap(), LatticeAnswer::Yes);
    }

    #[test]
    fn diagonal_invariants_need_dual_pairs() {
        let a2 = RootDatum::from_type("A2").unwrap();
        let e = EmbeddingData::diagonal(&a2, 2).unwrap().make_compatible().unwrap();
        let g = gen_for(&e);
        let inv = g.invariant_inequalities().unwrap();
        // Invariants in V_l1 x V_l2 exist iff l2 is the dual weight; for
        // A2 the dual of (a, b) is (b, a).
        assert!(inv.contains(&qv_from(&[1, 2, 2, 1])));
        assert!(inv.contains(&qv_from(&[2, 2, 2, 2])));
        assert!(!inv.contains(&qv_from(&[1, 2, 1, 2])));
        assert!(!inv.contains(&qv_from(&[1, 0, 1, 0])));
    }

    #[test]
    fn long_root_polytope_triangle() {
        let a2 = RootDatum::from_type("A2").unwrap();
        let g2 = RootDatum::from_type("G2").unwrap();
        let e = EmbeddingData::from_matrix_i64(a2, g2, &[vec![1, 1], vec![0, 1]])
            .unwrap()
            .make_compatible()
            .unwrap();
        let g = gen_for(&e);
        let sys = g.polytope_inequalities(&qv_from(&[0, 1])).unwrap();
        let mut verts = sys.vertices().unwrap();
        verts.sort();
        assert_eq!(verts, vec![qv_from(&[0, 1]), qv_from(&[1, 0]), qv_from(&[1, 1])]);
    }

    #[test]
    fn rank_one_subgroup_interval_matches_generator() {
        for d in [[2i64, 2], [1, 1], [2, 0]] {
            let a2 = RootDatum::from_type("A2").unwrap();
            let e = match EmbeddingData::sl2(a2, &d) {
                Ok(e) => e.make_compatible().unwrap(),
                Err(_) => continue,
            };
            let g = gen_for(&e);
            for lam in [[1i64, 0], [0, 1], [2, 1], [3, 3]] {
                let lam_q = qv_from(&lam);
                let (lo, hi) = sl2_interval(&e, &lam_q).unwrap();
                let sys = g.polytope_inequalities(&lam_q).unwrap();
                let mut verts = sys.vertices().unwrap();
                verts.sort();
                let expected = if lo == hi {
                    vec![vec![lo.clone()]]
                } else {
                    vec![vec![lo.clone()], vec![hi.clone()]]
                };
                assert_eq!(verts, expected, "d={d:?} lam={lam:?}");
            }
        }
    }

    #[test]
    fn duality_preserves_the_cone() {
        let a2 = RootDatum::from_type("A2").unwrap();
        let g2 = RootDatum::from_type("G2").unwrap();
        let e = EmbeddingData::from_matrix_i64(a2, g2, &[vec![1, 1], vec![0, 1]])
            .unwrap()
            .make_compatible()
            .unwrap();
        let g = gen_for(&e);
        let cone = g.cone_inequalities().unwrap();
        let dual = g.apply_duality(&cone).unwrap();
        assert!(cone.equivalent(&dual));
        let scalar = g.scalar_inequalities().unwrap();
        assert!(scalar.equivalent(&cone));
    }

    #[test]
    fn polytope_slices_match_the_cone() {
        let a2 = RootDatum::from_type("A2").unwrap();
        let g2 = RootDatum::from_type("G2").unwrap();
        let e = EmbeddingData::from_matrix_i64(a2, g2, &[vec![1, 1], vec![0, 1]])
            .unwrap()
            .make_compatible()
            .unwrap();
        let g = gen_for(&e);
        let cone = g.cone_inequalities().unwrap();
        for lam in [[1i64, 0], [0, 1], [2, 1]] {
            let sys = g.polytope_inequalities(&qv_from(&lam)).unwrap();
            for xt in 0..5i64 {
                for yt in 0..5i64 {
                    let slice_pt = qv_from(&[xt, yt]);
                    let mut joint = qv_from(&[xt, yt]);
                    joint.extend(qv_from(&lam));
                    assert_eq!(
                        sys.contains(&slice_pt),
                        cone.contains(&joint),
                        "lam={lam:?} pt=({xt},{yt})"
                    );
                }
            }
        }
    }
}
