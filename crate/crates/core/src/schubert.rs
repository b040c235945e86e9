//! Schubert calculus on full flag varieties via divided differences.
//!
//! Rational cohomology of the flag variety of a root datum is modelled by
//! Borel's picture: classes are represented by polynomials in the weight
//! coordinates, Schubert classes `sigma_w` are recovered from the top class
//! `P_{w0} = (prod of positive roots)/|W|` by applying divided-difference
//! operators along reduced words (Bernstein–Gelfand–Gelfand / Demazure),
//! and the coefficient of `sigma_u` in a class is the constant term after
//! applying divided differences along a reduced word of `u^{-1}`.
//!
//! A convention-calibration check (`extract(P_w)(u) = delta_{w,u}`) runs at
//! table construction on all short pairs and can be run exhaustively; a
//! mismatch aborts loudly, it is never absorbed.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use num::{One, Zero};
use sha2::{Digest, Sha256};

use crate::linalg::{qi, qv_dot, QMat, Q, QV};
use crate::rootdata::{RootDatum, WeylElement};
use crate::{Error, Result};

/// Guard on `|R+|`: the top-class polynomial has this degree, so larger
/// root systems are rejected rather than expanded.
const MAX_POSITIVE_ROOTS: usize = 40;

/// Cache format version for persisted representative tables.
const CACHE_FORMAT_VERSION: u32 = 1;

// ---------------------------------------------------------------------
// Sparse polynomials
// ---------------------------------------------------------------------

/// Sparse multivariate polynomial over the rationals; keys are exponent
/// vectors of fixed length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<u32>, Q>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Poly {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Q) -> Poly {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    /// Linear form with the given coefficient vector.
    pub fn linear(coeffs: &[Q]) -> Poly {
        let mut p = Poly::zero(coeffs.len());
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0; coeffs.len()];
                e[i] = 1;
                p.terms.insert(e, c.clone());
            }
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Constant term.
    pub fn constant_term(&self) -> Q {
        self.terms
            .get(&vec![0; self.nvars])
            .cloned()
            .unwrap_or_else(Q::zero)
    }

    /// Total degree (zero polynomial reports 0).
    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    fn insert_term(&mut self, e: Vec<u32>, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.insert_term(e.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.insert_term(e.clone(), -c.clone());
        }
        p
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut p = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.insert_term(e, c1 * c2);
            }
        }
        p
    }

    /// Substitute variable `var` by a linear form over the same variables
    /// (all other variables map to themselves).
    pub fn substitute_var(&self, var: usize, form: &Poly) -> Poly {
        let mut powers: Vec<Poly> = vec![Poly::constant(self.nvars, Q::one())];
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            let k = e[var] as usize;
            while powers.len() <= k {
                let next = powers.last().unwrap().mul(form);
                powers.push(next);
            }
            let mut base = e.clone();
            base[var] = 0;
            for (pe, pc) in &powers[k].terms {
                let comb: Vec<u32> = base.iter().zip(pe).map(|(a, b)| a + b).collect();
                out.insert_term(comb, c * pc);
            }
        }
        out
    }

    /// Substitute every variable by a linear form over `new_nvars`
    /// variables; `forms[i]` is the coefficient vector for old variable
    /// `i`.  Used for pullback along an embedding.
    pub fn substitute_all(&self, forms: &[QV], new_nvars: usize) -> Poly {
        assert_eq!(forms.len(), self.nvars);
        let lin: Vec<Poly> = forms.iter().map(|f| Poly::linear(f)).collect();
        for l in &lin {
            assert_eq!(l.nvars, new_nvars);
        }
        let mut powers: Vec<Vec<Poly>> =
            (0..self.nvars).map(|_| vec![Poly::constant(new_nvars, Q::one())]).collect();
        let mut out = Poly::zero(new_nvars);
        for (e, c) in &self.terms {
            let mut acc = Poly::constant(new_nvars, c.clone());
            for (i, &k) in e.iter().enumerate() {
                let k = k as usize;
                while powers[i].len() <= k {
                    let next = powers[i].last().unwrap().mul(&lin[i]);
                    powers[i].push(next);
                }
                if k > 0 {
                    acc = acc.mul(&powers[i][k]);
                }
            }
            out = out.add(&acc);
        }
        out
    }

    /// Exact division by a linear form; `None` when the remainder is
    /// nonzero.
    pub fn divide_by_linear(&self, form: &[Q]) -> Option<Poly> {
        let var = form.iter().position(|c| !c.is_zero())?;
        let pivot = form[var].clone();
        // Long division in the variable `var`.
        let mut quotient = Poly::zero(self.nvars);
        let mut rem = self.clone();
        loop {
            let top = rem.terms.keys().map(|e| e[var]).max().unwrap_or(0);
            if top == 0 {
                break;
            }
            // Leading part in var: all terms with exponent `top`.
            let mut lead = Poly::zero(self.nvars);
            for (e, c) in &rem.terms {
                if e[var] == top {
                    let mut e2 = e.clone();
                    e2[var] -= 1;
                    lead.insert_term(e2, c / &pivot);
                }
            }
            quotient = quotient.add(&lead);
            let prod = lead.mul(&Poly::linear(form));
            rem = rem.sub(&prod);
        }
        if rem.is_zero() {
            Some(quotient)
        } else {
            None
        }
    }
}

// ---------------------------------------------------------------------
// Cohomology classes
// ---------------------------------------------------------------------

/// A rational cohomology class of the full flag variety, written in the
/// Schubert basis.
pub type Class = BTreeMap<WeylElement, Q>;

/// The class `c * sigma_w`.
pub fn class_single(w: WeylElement, c: Q) -> Class {
    let mut m = Class::new();
    if !c.is_zero() {
        m.insert(w, c);
    }
    m
}

/// `acc += c * other`.
pub fn class_add_scaled(acc: &mut Class, other: &Class, c: &Q) {
    if c.is_zero() {
        return;
    }
    for (w, v) in other {
        let entry = acc.entry(w.clone()).or_insert_with(Q::zero);
        *entry += v * c;
        if entry.is_zero() {
            acc.remove(w);
        }
    }
}

// ---------------------------------------------------------------------
// Schubert tables
// ---------------------------------------------------------------------

/// Schubert calculus context for one root datum: the longest element, the
/// top-class representative, and a memo table of BGG representatives.
pub struct SchubertTable<'a> {
    pub datum: &'a RootDatum,
    w0: WeylElement,
    top: Poly,
    bgg_cache: RefCell<HashMap<Vec<usize>, Poly>>,
}

impl<'a> SchubertTable<'a> {
    /// Build the table.  The construction runs a short calibration pass
    /// (all pairs of length at most 2) and panics on any convention
    /// mismatch; [`SchubertTable::calibrate`] runs the exhaustive check.
    pub fn new(datum: &'a RootDatum) -> Result<SchubertTable<'a>> {
        if datum.positive_roots.len() > MAX_POSITIVE_ROOTS {
            return Err(Error::Resource(format!(
                "Schubert table for {} needs a degree-{} top class",
                datum.label,
                datum.positive_roots.len()
            )));
        }
        let order = match datum.weyl_order() {
            Some(o) => o,
            None => datum.enumerate_weyl(crate::rootdata::DEFAULT_WEYL_BOUND)?.len() as u64,
        };
        let w0 = datum.longest_element();
        let mut top = Poly::constant(datum.rank, qi(1) / qi(order as i64));
        for i in 0..datum.positive_roots.len() {
            top = top.mul(&Poly::linear(&datum.positive_root_q(i)));
        }
        let table = SchubertTable { datum, w0, top, bgg_cache: RefCell::new(HashMap::new()) };
        table.calibrate_up_to_length(2)?;
        Ok(table)
    }

    /// The longest element of the Weyl group.
    pub fn w0(&self) -> &WeylElement {
        &self.w0
    }

    /// Divided difference `D_i(p) = (p - s_i p) / alpha_i`.
    pub fn divided_difference(&self, i: usize, p: &Poly) -> Poly {
        let d = self.datum;
        // The reflection substitution touches only variable i.
        let mut form = crate::linalg::qv_zero(d.rank);
        for j in 0..d.rank {
            let a = if j < d.ss_rank { d.cartan[i][j] } else { 0 };
            form[j] = if i == j { qi(-1) } else { qi(-a) };
        }
        let reflected = p.substitute_var(i, &Poly::linear(&form));
        let num = p.sub(&reflected);
        num.divide_by_linear(&d.simple_root_q(i))
            .expect("p - s_i(p) is always divisible by alpha_i")
    }

    /// BGG representative of the Schubert class `sigma_w`, memoized.
    pub fn bgg(&self, w: &WeylElement) -> Poly {
        if let Some(p) = self.bgg_cache.borrow().get(w.word()) {
            return p.clone();
        }
        let p = if w == &self.w0 {
            self.top.clone()
        } else {
            // Find a right ascent: l(w s_i) = l(w) + 1; then
            // sigma_w = D_i(sigma_{w s_i}).
            let i = (0..self.datum.ss_rank)
                .find(|&i| {
                    self.datum
                        .is_positive_root(&w.matrix().mul_ivec(&self.datum.simple_roots[i]))
                })
                .expect("only w0 has no right ascent");
            let longer = self.datum.mul(w, &self.datum.simple_reflection(i));
            let rep = self.bgg(&longer);
            self.divided_difference(i, &rep)
        };
        self.bgg_cache
            .borrow_mut()
            .insert(w.word().to_vec(), p.clone());
        p
    }

    /// Coefficient of `sigma_u` in the class represented by `p`: apply
    /// divided differences along a reduced word of `u^{-1}` (the reversed
    /// word of `u`) and take the constant term.
    pub fn extract_coeff(&self, p: &Poly, u: &WeylElement) -> Q {
        let mut acc = p.clone();
        for &i in u.word().iter().rev() {
            if acc.is_zero() {
                return Q::zero();
            }
            acc = self.divided_difference(i, &acc);
        }
        acc.constant_term()
    }

    /// Expand a polynomial representative in the Schubert basis.  Needs a
    /// full group enumeration.
    pub fn extract_class(&self, p: &Poly, bound: u64) -> Result<Class> {
        let degrees: std::collections::BTreeSet<u32> =
            p.terms.keys().map(|e| e.iter().sum()).collect();
        let mut out = Class::new();
        for w in self.datum.enumerate_weyl(bound)? {
            if !degrees.contains(&(w.length() as u32)) {
                continue;
            }
            let c = self.extract_coeff(p, w);
            if !c.is_zero() {
                out.insert(w.clone(), c);
            }
        }
        Ok(out)
    }

    /// Polynomial representative of a class.
    pub fn represent(&self, class: &Class) -> Poly {
        let mut p = Poly::zero(self.datum.rank);
        for (w, c) in class {
            p = p.add(&self.bgg(w).scale(c));
        }
        p
    }

    /// Chevalley rule: `Theta(lambda) cup sigma_w`, summed over positive
    /// roots `beta` with `l(w s_beta) = l(w) + 1`, weighted by
    /// `<lambda, beta_check>`.  Central components of `lambda` contribute
    /// nothing (their line bundles are topologically trivial).
    pub fn chevalley_mul(&self, lambda: &[Q], class: &Class) -> Class {
        let d = self.datum;
        let mut out = Class::new();
        for (w, c) in class {
            for bi in 0..d.positive_roots.len() {
                let coeff = qv_dot(lambda, &d.positive_coroot_q(bi));
                if coeff.is_zero() {
                    continue;
                }
                let ws = d.mul(w, &d.reflection(bi));
                if ws.length() == w.length() + 1 {
                    class_add_scaled(&mut out, &class_single(ws, Q::one()), &(c * coeff));
                }
            }
        }
        out
    }

    /// First Chern class map: `Theta(lambda)` as a degree-1 class.
    pub fn theta(&self, lambda: &[Q]) -> Class {
        let mut out = Class::new();
        for i in 0..self.datum.ss_rank {
            if !lambda[i].is_zero() {
                out.insert(self.datum.simple_reflection(i), lambda[i].clone());
            }
        }
        out
    }

    /// Weyl group action on cohomology:
    /// `s_i . sigma_w = sigma_w - Theta(alpha_i) cup D_i(sigma_w)`.
    pub fn weyl_action(&self, w: &WeylElement, class: &Class) -> Class {
        let d = self.datum;
        let mut acc = class.clone();
        for &i in w.word().iter().rev() {
            let mut next = Class::new();
            let alpha = d.simple_root_q(i);
            for (u, c) in &acc {
                class_add_scaled(&mut next, &class_single(u.clone(), Q::one()), c);
                let us = d.mul(u, &d.simple_reflection(i));
                if us.length() + 1 == u.length() {
                    // D_i(sigma_u) = sigma_{u s_i}
                    let chev = self.chevalley_mul(&alpha, &class_single(us, Q::one()));
                    class_add_scaled(&mut next, &chev, &-c.clone());
                }
            }
            acc = next;
        }
        acc
    }

    /// Cup product of two classes.
    pub fn cup(&self, a: &Class, b: &Class, bound: u64) -> Result<Class> {
        let p = self.represent(a).mul(&self.represent(b));
        self.extract_class(&p, bound)
    }

    /// Exhaustive calibration: `extract(bgg(w))(u) = delta_{w,u}` over all
    /// pairs of equal length.  Errors on any mismatch.
    pub fn calibrate(&self, bound: u64) -> Result<()> {
        let all = self.datum.enumerate_weyl(bound)?.to_vec();
        for w in &all {
            for u in &all {
                if w.length() != u.length() {
                    continue;
                }
                self.check_delta(w, u)?;
            }
        }
        Ok(())
    }

    fn calibrate_up_to_length(&self, max_len: usize) -> Result<()> {
        // Enumerate elements of length <= max_len by products of simple
        // reflections (no full group enumeration needed).
        let d = self.datum;
        let mut layer = vec![d.identity()];
        let mut short = layer.clone();
        for _ in 0..max_len {
            let mut next: Vec<WeylElement> = Vec::new();
            for w in &layer {
                for i in 0..d.ss_rank {
                    let ws = d.mul(w, &d.simple_reflection(i));
                    if ws.length() == w.length() + 1 && !next.contains(&ws) {
                        next.push(ws);
                    }
                }
            }
            short.extend(next.iter().cloned());
            layer = next;
        }
        for w in &short {
            for u in &short {
                if w.length() == u.length() {
                    self.check_delta(w, u)?;
                }
            }
        }
        Ok(())
    }

    fn check_delta(&self, w: &WeylElement, u: &WeylElement) -> Result<()> {
        let c = self.extract_coeff(&self.bgg(w), u);
        let expected = if w == u { Q::one() } else { Q::zero() };
        if c != expected {
            return Err(Error::Verification(format!(
                "Schubert calibration failed on {}: extract(P_{{{}}})({}) = {}, expected {}",
                self.datum.label,
                w.word_string(),
                u.word_string(),
                c,
                expected
            )));
        }
        Ok(())
    }

    // -----------------------------------------------------------------
    // Persistent representative cache
    // -----------------------------------------------------------------

    /// Fingerprint of the datum: hash of the Cartan matrix and central
    /// rank, stable across runs and platforms.
    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        h.update(format!("{:?}|{}", self.datum.cartan, self.datum.central_rank));
        format!("{:x}", h.finalize())
    }

    /// Persist the memoized representatives to a JSON file.
    pub fn save_cache(&self, path: &std::path::Path) -> Result<()> {
        let cache = self.bgg_cache.borrow();
        let entries: Vec<serde_json::Value> = cache
            .iter()
            .map(|(word, poly)| {
                serde_json::json!({
                    "word": word,
                    "terms": poly.terms.iter().map(|(e, c)| {
                        serde_json::json!([e, c.numer().to_string(), c.denom().to_string()])
                    }).collect::<Vec<_>>(),
                })
            })
            .collect();
        let doc = serde_json::json!({
            "format_version": CACHE_FORMAT_VERSION,
            "fingerprint": self.fingerprint(),
            "nvars": self.datum.rank,
            "entries": entries,
        });
        std::fs::write(path, serde_json::to_string(&doc).unwrap())
            .map_err(|e| Error::Config(format!("cannot write cache: {e}")))
    }

    /// Load previously saved representatives; silently ignored when the
    /// format version or datum fingerprint does not match.
    pub fn load_cache(&self, path: &std::path::Path) -> Result<bool> {
        let Ok(text) = std::fs::read_to_string(path) else {
            return Ok(false);
        };
        let doc: serde_json::Value = serde_json::from_str(&text)
            .map_err(|e| Error::Config(format!("corrupt cache file: {e}")))?;
        if doc["format_version"] != serde_json::json!(CACHE_FORMAT_VERSION)
            || doc["fingerprint"] != serde_json::json!(self.fingerprint())
        {
            return Ok(false);
        }
        let mut cache = self.bgg_cache.borrow_mut();
        for entry in doc["entries"].as_array().unwrap_or(&vec![]) {
            let word: Vec<usize> = entry["word"]
                .as_array()
                .unwrap_or(&vec![])
                .iter()
                .filter_map(|v| v.as_u64().map(|x| x as usize))
                .collect();
            let mut poly = Poly::zero(self.datum.rank);
            for t in entry["terms"].as_array().unwrap_or(&vec![]) {
                let e: Vec<u32> = t[0]
                    .as_array()
                    .unwrap_or(&vec![])
                    .iter()
                    .filter_map(|v| v.as_u64().map(|x| x as u32))
                    .collect();
                let n: num::BigInt = t[1].as_str().unwrap_or("0").parse().unwrap_or_default();
                let d: num::BigInt = t[2].as_str().unwrap_or("1").parse().unwrap_or_else(|_| 1.into());
                poly.terms.insert(e, Q::new(n, d));
            }
            cache.insert(word, poly);
        }
        Ok(true)
    }
}

/// Pull back a class on the target flag variety to the source flag
/// variety along an embedding with weight-restriction matrix `fstar`
/// (source weight coordinates of each target basis weight as columns).
pub fn pull_back(
    src: &SchubertTable,
    tgt: &SchubertTable,
    fstar: &QMat,
    class: &Class,
    bound: u64,
) -> Result<Class> {
    assert_eq!(fstar.rows, src.datum.rank);
    assert_eq!(fstar.cols, tgt.datum.rank);
    let forms: Vec<QV> = (0..tgt.datum.rank).map(|j| fstar.col(j)).collect();
    let max_deg = src.datum.positive_roots.len() as u32;
    let mut p = Poly::zero(src.datum.rank);
    for (w, c) in class {
        if w.length() as u32 > max_deg {
            continue; // pullback of higher degree vanishes
        }
        let rep = tgt.bgg(w).substitute_all(&forms, src.datum.rank);
        p = p.add(&rep.scale(c));
    }
    src.extract_class(&p, bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::qv_from;

    #[test]
    fn polynomial_arithmetic() {
        // (x + y)(x - y) = x^2 - y^2
        let x_plus_y = Poly::linear(&qv_from(&[1, 1]));
        let x_minus_y = Poly::linear(&qv_from(&[1, -1]));
        let prod = x_plus_y.mul(&x_minus_y);
        assert_eq!(prod.terms.len(), 2);
        // Exact division back out.
        let q = prod.divide_by_linear(&qv_from(&[1, 1])).unwrap();
        assert_eq!(q, x_minus_y);
        assert!(prod.divide_by_linear(&qv_from(&[1, 0])).is_none());
    }

    #[test]
    fn divided_differences_square_to_zero() {
        let d = RootDatum::from_type("G2").unwrap();
        let t = SchubertTable::new(&d).unwrap();
        let p = t.bgg(&d.longest_element());
        for i in 0..2 {
            let once = t.divided_difference(i, &p);
            let twice = t.divided_difference(i, &once);
            assert!(twice.is_zero());
        }
    }

    #[test]
    fn full_calibration_rank_two() {
        for ty in ["A1", "A2", "B2", "G2", "A1xA1"] {
            let d = RootDatum::from_type(ty).unwrap();
            let t = SchubertTable::new(&d).unwrap();
            t.calibrate(1000).unwrap();
        }
    }

    #[test]
    fn chevalley_in_a2() {
        let d = RootDatum::from_type("A2").unwrap();
        let t = SchubertTable::new(&d).unwrap();
        let s1 = d.simple_reflection(0);
        let s2 = d.simple_reflection(1);
        // sigma_{s1}^2 = sigma_{s2 s1}: Chevalley with lambda = pi_1.
        let sq = t.chevalley_mul(&qv_from(&[1, 0]), &class_single(s1.clone(), Q::one()));
        let s2s1 = d.mul(&s2, &s1);
        assert_eq!(sq, class_single(s2s1.clone(), Q::one()));
        // sigma_{s1} cup sigma_{s2} = sigma_{s1 s2} + sigma_{s2 s1}.
        let cup = t
            .cup(
                &class_single(s1.clone(), Q::one()),
                &class_single(s2.clone(), Q::one()),
                100,
            )
            .unwrap();
        let s1s2 = d.mul(&s1, &s2);
        assert_eq!(cup.len(), 2);
        assert_eq!(cup.get(&s1s2), Some(&Q::one()));
        assert_eq!(cup.get(&s2s1), Some(&Q::one()));
    }

    #[test]
    fn poincare_pairing_g2() {
        // sigma_w cup sigma_{w0 w} has coefficient 1 on sigma_{w0}, and
        // pairing with other complementary classes vanishes.
        let d = RootDatum::from_type("G2").unwrap();
        let t = SchubertTable::new(&d).unwrap();
        let w0 = d.longest_element();
        let all = d.enumerate_weyl(100).unwrap().to_vec();
        for w in &all {
            for u in &all {
                if w.length() + u.length() != w0.length() {
                    continue;
                }
                let p = t.bgg(w).mul(&t.bgg(u));
                let c = t.extract_coeff(&p, &w0);
                let expected = if d.mul(&w0, w) == *u { Q::one() } else { Q::zero() };
                assert_eq!(c, expected, "pairing of {} and {}", w.word_string(), u.word_string());
            }
        }
    }

    #[test]
    fn longest_element_action_conjugates_with_sign() {
        // w0 . sigma_w = (-1)^{l(w)} sigma_{w0 w w0}.
        let d = RootDatum::from_type("B2").unwrap();
        let t = SchubertTable::new(&d).unwrap();
        let w0 = d.longest_element();
        for w in d.enumerate_weyl(100).unwrap().iter() {
            let acted = t.weyl_action(&w0, &class_single(w.clone(), Q::one()));
            let conj = d.mul(&d.mul(&w0, w), &w0);
            let sign = if w.length() % 2 == 0 { Q::one() } else { -Q::one() };
            assert_eq!(acted, class_single(conj, sign), "at {}", w.word_string());
        }
    }

    #[test]
    fn pull_back_along_diagonal() {
        // Diagonal A1 in A1 x A1: sigma_{(s,1)} and sigma_{(1,s)} both
        // pull back to sigma_s.
        let src = RootDatum::from_type("A1").unwrap();
        let tgt = RootDatum::from_type("A1xA1").unwrap();
        let ts = SchubertTable::new(&src).unwrap();
        let tt = SchubertTable::new(&tgt).unwrap();
        let fstar = QMat::from_i64_rows(&[vec![1, 1]]);
        let s_left = tgt.simple_reflection(0);
        let pulled = pull_back(&ts, &tt, &fstar, &class_single(s_left, Q::one()), 100).unwrap();
        assert_eq!(pulled, class_single(src.simple_reflection(0), Q::one()));
        // The top class (degree 2) pulls back to zero in degree reasons
        // ... but degree 2 > |R+| of A1, so the pullback vanishes.
        let top = tgt.longest_element();
        let pulled_top = pull_back(&ts, &tt, &fstar, &class_single(top, Q::one()), 100).unwrap();
        assert!(pulled_top.is_empty());
    }

    #[test]
    fn cache_roundtrip() {
        let d = RootDatum::from_type("A2").unwrap();
        let t = SchubertTable::new(&d).unwrap();
        let w0 = d.longest_element();
        let p = t.bgg(&w0);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("schubert.json");
        t.save_cache(&path).unwrap();
        let t2 = SchubertTable::new(&d).unwrap();
        assert!(t2.load_cache(&path).unwrap());
        assert_eq!(t2.bgg(&w0), p);
        // A different datum refuses the cache.
        let other = RootDatum::from_type("B2").unwrap();
        let t3 = SchubertTable::new(&other).unwrap();
        assert!(!t3.load_cache(&path).unwrap());
    }
}
