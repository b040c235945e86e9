//! Root data and Weyl groups in exact arithmetic.
//!
//! A [`RootDatum`] fixes once and for all the coordinates used everywhere
//! else in the crate: weights are written in the basis of fundamental
//! weights of the semisimple part followed by a basis of central
//! characters, and coweights in the dual basis (simple coroots followed by
//! central cocharacters).  With dual bases the weight/coweight pairing is
//! the plain dot product, simple roots are rows of the Cartan matrix, and
//! every Weyl group element acts on the weight lattice by an integer
//! matrix.
//!
//! A [`WeylElement`] stores that integer matrix (authoritative for
//! equality), the matrix of its inverse, and its canonical reduced word:
//! the lexicographically least reduced word, recomputed from the matrix by
//! greedy left-descent whenever an element is formed.  Length is the word
//! length, which equals the inversion count.
//!
//! Full group enumeration is gated behind an explicit bound so that large
//! groups (the Weyl group of `A14` is `15!`) are never expanded by
//! accident; everything else (dominant representatives, minimal coset
//! representatives, longest elements, canonical words) works one reflection
//! at a time and is cheap even at rank 15.

use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use num::{One, Signed, Zero};

use crate::linalg::{qi, qv_dot, qv_from, qv_zero, IMat, QMat, Q, QV};
use crate::{Error, Result};

/// Default bound on full Weyl group enumeration (number of elements).
pub const DEFAULT_WEYL_BOUND: u64 = 1_000_000;

/// Maximum number of roots tolerated during root-system closure; explicit
/// Cartan data generating more than this is rejected as non-finite type.
const MAX_ROOTS: usize = 10_000;

/// A simple factor of a root datum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    /// Type label, e.g. `"A2"` or `"G2"`.
    pub label: String,
    /// First simple-root index of this factor.
    pub ss_start: usize,
    /// Number of simple roots in this factor.
    pub ss_len: usize,
}

/// A face of the dominant chamber: the simple roots vanishing on it plus a
/// relative-interior point.
#[derive(Debug, Clone)]
pub struct Face {
    /// Indices of simple roots vanishing on the face.
    pub j: Vec<usize>,
    /// A point in the relative interior (coweight coordinates).
    pub interior_point: QV,
}

/// A root datum: semisimple part given by a Cartan matrix plus a central
/// torus, with all derived structure precomputed.
#[derive(Debug)]
pub struct RootDatum {
    /// Human-readable label (type string or custom name).
    pub label: String,
    /// Total rank: semisimple rank plus central rank.
    pub rank: usize,
    /// Semisimple rank (number of simple roots).
    pub ss_rank: usize,
    /// Dimension of the central torus.
    pub central_rank: usize,
    /// Cartan matrix `a[i][j] = <alpha_i, alpha_j_check>`.
    pub cartan: Vec<Vec<i64>>,
    /// Inverse of the Cartan matrix.
    pub cartan_inv: QMat,
    /// Simple factors (for products); empty for a pure torus.
    pub factors: Vec<Factor>,
    /// Simple roots in weight coordinates (integer entries).
    pub simple_roots: Vec<Vec<i64>>,
    /// Positive roots in weight coordinates.
    pub positive_roots: Vec<Vec<i64>>,
    /// Coroots of the positive roots, aligned by index, in coweight
    /// coordinates.
    pub positive_coroots: Vec<Vec<i64>>,
    /// Fundamental coweights in coweight coordinates (columns of the
    /// inverse Cartan matrix, zero on the central block).
    pub fundamental_coweights: Vec<QV>,
    /// Known Weyl group order, when the type is recognized.
    pub weyl_order_hint: Option<u64>,
    /// Weights of the defining representation for a single type-A factor;
    /// used to present Weyl elements as permutations.
    pub eps_weights: Option<Vec<QV>>,
    /// Map from root weight-coordinates to index into `positive_roots`
    /// (positive roots only; negatives are looked up by sign flip).
    root_index: HashMap<Vec<i64>, usize>,
    /// Weight-action matrices of the simple reflections.
    refl: Vec<IMat>,
    /// W-invariant inner product on weights (block `A^{-1} D` per factor,
    /// identity on the central block).
    gram: QMat,
    /// Lazily built full enumeration of the Weyl group.
    weyl_cache: OnceLock<Vec<WeylElement>>,
}

impl PartialEq for RootDatum {
    fn eq(&self, other: &Self) -> bool {
        self.cartan == other.cartan && self.central_rank == other.central_rank
    }
}

/// An element of the Weyl group.
///
/// The integer matrix of the action on the weight lattice is authoritative
/// for equality and hashing; the canonical (lexicographically least)
/// reduced word is carried along for reproducible output and cheap length
/// queries.
#[derive(Debug, Clone)]
pub struct WeylElement {
    mat: IMat,
    inv: IMat,
    word: Vec<usize>,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.mat == other.mat
    }
}
impl Eq for WeylElement {}

impl std::hash::Hash for WeylElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.mat.hash(state);
    }
}

impl PartialOrd for WeylElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for WeylElement {
    /// Order by length, then canonical word, then matrix; this is the
    /// deterministic enumeration order used in all outputs.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.word.len(), &self.word, &self.mat).cmp(&(
            other.word.len(),
            &other.word,
            &other.mat,
        ))
    }
}

impl WeylElement {
    /// Coxeter length.
    pub fn length(&self) -> usize {
        self.word.len()
    }

    /// Canonical (lexicographically least) reduced word, 0-based letters.
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// Integer matrix of the action on the weight lattice.
    pub fn matrix(&self) -> &IMat {
        &self.mat
    }

    /// True for the identity element.
    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// Action on a weight (fundamental-weight coordinates).
    pub fn act_weight(&self, v: &[Q]) -> QV {
        self.mat.mul_qvec(v)
    }

    /// Action on an integer weight vector.
    pub fn act_weight_i(&self, v: &[i64]) -> Vec<i64> {
        self.mat.mul_ivec(v)
    }

    /// Action on a coweight (simple-coroot coordinates).  The coweight
    /// matrix is the transpose of the inverse weight matrix, so that the
    /// pairing is preserved.
    pub fn act_coweight(&self, v: &[Q]) -> QV {
        self.inv.transpose().mul_qvec(v)
    }

    /// Human-readable word like `"s1*s2*s1"` (1-based), `"e"` for the
    /// identity.
    pub fn word_string(&self) -> String {
        if self.word.is_empty() {
            "e".to_string()
        } else {
            self.word
                .iter()
                .map(|i| format!("s{}", i + 1))
                .collect::<Vec<_>>()
                .join("*")
        }
    }
}

impl RootDatum {
    // ------------------------------------------------------------------
    // Construction
    // ------------------------------------------------------------------

    /// Parse a type string: simple factors joined with `x` and an optional
    /// trailing `+uN` for a central torus, e.g. `"G2"`, `"A14+u1"`,
    /// `"G2xG2"`, `"u2"` (pure torus).
    ///
    /// Supported factors: `A1`–`A20`, `B2`–`B4`, `C2`–`C4`, `D4`, `G2`,
    /// `F4`.
    pub fn from_type(s: &str) -> Result<RootDatum> {
        let s = s.trim();
        let (body, central) = match s.split_once("+u") {
            Some((b, c)) => {
                let n: usize = c
                    .parse()
                    .map_err(|_| Error::Config(format!("bad central rank in type `{s}`")))?;
                (b, n)
            }
            None => (s, 0),
        };
        // A pure torus: "uN".
        if let Some(stripped) = body.strip_prefix('u') {
            if let Ok(n) = stripped.parse::<usize>() {
                return Self::build(s.to_string(), Vec::new(), vec![], n + central);
            }
        }
        let mut cartan_blocks: Vec<Vec<Vec<i64>>> = Vec::new();
        let mut factors = Vec::new();
        let mut ss_start = 0;
        for part in body.split('x') {
            let part = part.trim();
            let block = factor_cartan(part)?;
            factors.push(Factor { label: part.to_string(), ss_start, ss_len: block.len() });
            ss_start += block.len();
            cartan_blocks.push(block);
        }
        let ss = ss_start;
        let mut cartan = vec![vec![0i64; ss]; ss];
        for (f, block) in factors.iter().zip(&cartan_blocks) {
            for i in 0..f.ss_len {
                for j in 0..f.ss_len {
                    cartan[f.ss_start + i][f.ss_start + j] = block[i][j];
                }
            }
        }
        Self::build(s.to_string(), cartan, factors, central)
    }

    /// Build a root datum from an explicit Cartan matrix and central rank.
    /// The matrix is validated (diagonal 2, non-positive off-diagonal,
    /// symmetric zero pattern, finite type).
    pub fn from_cartan(label: &str, cartan: Vec<Vec<i64>>, central_rank: usize) -> Result<RootDatum> {
        let n = cartan.len();
        let factors = if n > 0 {
            vec![Factor { label: label.to_string(), ss_start: 0, ss_len: n }]
        } else {
            vec![]
        };
        Self::build(label.to_string(), cartan, factors, central_rank)
    }

    fn build(
        label: String,
        cartan: Vec<Vec<i64>>,
        factors: Vec<Factor>,
        central_rank: usize,
    ) -> Result<RootDatum> {
        let ss = cartan.len();
        let rank = ss + central_rank;
        // Validate the Cartan matrix.
        for (i, row) in cartan.iter().enumerate() {
            if row.len() != ss {
                return Err(Error::Config("Cartan matrix is not square".into()));
            }
            if row[i] != 2 {
                return Err(Error::Config(format!("Cartan diagonal entry {i} is not 2")));
            }
            for (j, &a) in row.iter().enumerate() {
                if i != j {
                    if a > 0 {
                        return Err(Error::Config(format!(
                            "positive off-diagonal Cartan entry at ({i},{j})"
                        )));
                    }
                    if (a == 0) != (cartan[j][i] == 0) {
                        return Err(Error::Config(format!(
                            "asymmetric zero pattern in Cartan matrix at ({i},{j})"
                        )));
                    }
                }
            }
        }
        let cartan_q = QMat::from_i64_rows(&cartan);
        let cartan_inv = if ss > 0 {
            cartan_q
                .inverse()
                .ok_or_else(|| Error::Config("singular Cartan matrix".into()))?
        } else {
            QMat::identity(0)
        };

        // Simple roots in weight coordinates: row i of the Cartan matrix,
        // padded with zeros on the central block.
        let simple_roots: Vec<Vec<i64>> = (0..ss)
            .map(|i| {
                let mut v = cartan[i].clone();
                v.resize(rank, 0);
                v
            })
            .collect();

        // Weight-action matrices of the simple reflections:
        // (s_i lambda)_j = lambda_j - a_{ij} lambda_i, i.e. the identity
        // with column i replaced.
        let refl: Vec<IMat> = (0..ss)
            .map(|i| {
                let mut m = IMat::identity(rank);
                for j in 0..rank {
                    let a = if j < ss { cartan[i][j] } else { 0 };
                    *m.at_mut(j, i) = if i == j { -1 } else { -a };
                }
                m
            })
            .collect();

        // Close {simple roots} under the simple reflections, tracking the
        // coroot of each root.  Coweights transform by the transposed
        // reflection matrix.
        let refl_t: Vec<IMat> = refl.iter().map(|m| m.transpose()).collect();
        let mut all: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
        let mut seen: HashMap<Vec<i64>, usize> = HashMap::new();
        for i in 0..ss {
            let mut coroot = vec![0i64; rank];
            coroot[i] = 1;
            seen.insert(simple_roots[i].clone(), all.len());
            all.push((simple_roots[i].clone(), coroot));
        }
        let mut head = 0;
        while head < all.len() {
            let (root, coroot) = all[head].clone();
            head += 1;
            for i in 0..ss {
                let r = refl[i].mul_ivec(&root);
                if !seen.contains_key(&r) {
                    let c = refl_t[i].mul_ivec(&coroot);
                    seen.insert(r.clone(), all.len());
                    all.push((r, c));
                    if all.len() > MAX_ROOTS {
                        return Err(Error::Config(
                            "Cartan matrix is not of finite type (root closure diverges)".into(),
                        ));
                    }
                }
            }
        }

        // Split into positive and negative roots by simple-root
        // coefficients c = (A^T)^{-1} * (semisimple weight coords).
        let cartan_t_inv = cartan_inv.transpose();
        let mut positive_roots = Vec::new();
        let mut positive_coroots = Vec::new();
        for (root, coroot) in &all {
            let ssv: QV = root[..ss].iter().map(|&x| qi(x)).collect();
            let c = cartan_t_inv.mul_vec(&ssv);
            let pos = c.iter().all(|x| !x.is_negative());
            let neg = c.iter().all(|x| !x.is_positive());
            if pos {
                positive_roots.push(root.clone());
                positive_coroots.push(coroot.clone());
            } else if !neg {
                return Err(Error::Config(
                    "root closure produced a root that is neither positive nor negative".into(),
                ));
            }
        }
        // Deterministic order: by height (sum of simple-root coefficients),
        // then lexicographically; simple roots come first.
        let mut order: Vec<usize> = (0..positive_roots.len()).collect();
        let height = |r: &Vec<i64>| -> Q {
            let ssv: QV = r[..ss].iter().map(|&x| qi(x)).collect();
            cartan_t_inv.mul_vec(&ssv).iter().fold(Q::zero(), |s, t| s + t)
        };
        order.sort_by(|&a, &b| {
            (height(&positive_roots[a]), &positive_roots[a])
                .cmp(&(height(&positive_roots[b]), &positive_roots[b]))
        });
        let positive_roots: Vec<Vec<i64>> = order.iter().map(|&i| positive_roots[i].clone()).collect();
        let positive_coroots: Vec<Vec<i64>> =
            order.iter().map(|&i| positive_coroots[i].clone()).collect();
        let root_index: HashMap<Vec<i64>, usize> = positive_roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), i))
            .collect();

        // Fundamental coweights: columns of the inverse Cartan matrix.
        let fundamental_coweights: Vec<QV> = (0..ss)
            .map(|j| {
                let mut v = qv_zero(rank);
                for i in 0..ss {
                    v[i] = cartan_inv.at(i, j).clone();
                }
                v
            })
            .collect();

        // Known group orders per recognized factor.
        let weyl_order_hint = factors
            .iter()
            .map(|f| factor_weyl_order(&f.label, f.ss_len))
            .try_fold(1u64, |acc, o| o.and_then(|o| acc.checked_mul(o)));

        // Defining-representation weights for a lone type-A factor: the
        // orbit of the first fundamental weight, in a fixed order.
        let eps_weights = if factors.len() == 1 && factors[0].label.starts_with('A') && ss >= 1 {
            let n = ss; // type A_n, defining rep has n+1 weights
            let mut eps = Vec::with_capacity(n + 1);
            for k in 0..=n {
                let mut v = qv_zero(rank);
                if k < n {
                    v[k] = Q::one();
                }
                if k > 0 {
                    v[k - 1] = &v[k - 1] - Q::one();
                }
                eps.push(v);
            }
            Some(eps)
        } else {
            None
        };

        // W-invariant inner product on weights.  Writing nu in the simple
        // roots, nu = sum_j c_j alpha_j with c = (A^T)^{-1} nu, gives
        // <mu, nu> = mu^T D (A^{-1})^T nu where D is the symmetrizing
        // diagonal; identity on the central block.
        let mut gram = QMat::identity(rank);
        if ss > 0 {
            let d = symmetrizer(&cartan)?;
            for i in 0..ss {
                for j in 0..ss {
                    *gram.at_mut(i, j) = &d[i] * cartan_inv.at(j, i);
                }
            }
        }

        Ok(RootDatum {
            label,
            rank,
            ss_rank: ss,
            central_rank,
            cartan,
            cartan_inv,
            factors,
            simple_roots,
            positive_roots,
            positive_coroots,
            fundamental_coweights,
            weyl_order_hint,
            eps_weights,
            root_index,
            refl,
            gram,
            weyl_cache: OnceLock::new(),
        })
    }

    /// Direct product of two root data (used for diagonal embeddings).
    /// Central coordinates of both factors are collected at the end.
    pub fn product(parts: &[&RootDatum]) -> Result<RootDatum> {
        let ss: usize = parts.iter().map(|d| d.ss_rank).sum();
        let central: usize = parts.iter().map(|d| d.central_rank).sum();
        let mut cartan = vec![vec![0i64; ss]; ss];
        let mut factors = Vec::new();
        let mut off = 0;
        for d in parts {
            for f in &d.factors {
                factors.push(Factor {
                    label: f.label.clone(),
                    ss_start: off + f.ss_start,
                    ss_len: f.ss_len,
                });
            }
            for i in 0..d.ss_rank {
                for j in 0..d.ss_rank {
                    cartan[off + i][off + j] = d.cartan[i][j];
                }
            }
            off += d.ss_rank;
        }
        let label = parts.iter().map(|d| d.label.clone()).collect::<Vec<_>>().join("x");
        let label = if central > 0 { format!("{label}+u{central}") } else { label };
        Self::build(label, cartan, factors, central)
    }

    // ------------------------------------------------------------------
    // Basic structure
    // ------------------------------------------------------------------

    /// Fundamental weight `i` in weight coordinates (a unit vector, since
    /// the coordinates are fundamental-weight coordinates).
    pub fn fundamental_weight(&self, i: usize) -> QV {
        let mut v = qv_zero(self.rank);
        v[i] = Q::one();
        v
    }

    /// Half-sum of positive roots: all-ones on the semisimple block.
    pub fn rho(&self) -> QV {
        let mut v = qv_zero(self.rank);
        for x in v.iter_mut().take(self.ss_rank) {
            *x = Q::one();
        }
        v
    }

    /// Sum of the fundamental coweights (a regular dominant coweight).
    pub fn rho_coweight(&self) -> QV {
        let mut v = qv_zero(self.rank);
        for fw in &self.fundamental_coweights {
            for i in 0..self.rank {
                v[i] += &fw[i];
            }
        }
        v
    }

    /// Simple root as a rational weight vector.
    pub fn simple_root_q(&self, i: usize) -> QV {
        self.simple_roots[i].iter().map(|&x| qi(x)).collect()
    }

    /// Positive root as a rational weight vector.
    pub fn positive_root_q(&self, i: usize) -> QV {
        self.positive_roots[i].iter().map(|&x| qi(x)).collect()
    }

    /// Coroot of positive root `i` as a rational coweight vector.
    pub fn positive_coroot_q(&self, i: usize) -> QV {
        self.positive_coroots[i].iter().map(|&x| qi(x)).collect()
    }

    /// W-invariant inner product of two weights.
    pub fn weight_inner(&self, a: &[Q], b: &[Q]) -> Q {
        qv_dot(a, &self.gram.mul_vec(b))
    }

    /// True if the integer weight vector is a negative root.
    pub fn is_negative_root(&self, v: &[i64]) -> bool {
        let neg: Vec<i64> = v.iter().map(|x| -x).collect();
        self.root_index.contains_key(&neg)
    }

    /// True if the integer weight vector is a positive root.
    pub fn is_positive_root(&self, v: &[i64]) -> bool {
        self.root_index.contains_key(v)
    }

    /// True if the weight is dominant (nonnegative pairing with every
    /// simple coroot; central coordinates are unconstrained).
    pub fn is_dominant_weight(&self, v: &[Q]) -> bool {
        v.iter().take(self.ss_rank).all(|x| !x.is_negative())
    }

    /// True if the coweight is dominant (nonnegative pairing with every
    /// simple root).
    pub fn is_dominant_coweight(&self, v: &[Q]) -> bool {
        self.simple_roots
            .iter()
            .all(|a| !qv_dot(&qv_from(a), v).is_negative())
    }

    /// Known order of the Weyl group, if the type is recognized.
    pub fn weyl_order(&self) -> Option<u64> {
        self.weyl_order_hint
    }

    /// Face of the dominant chamber on which exactly the simple roots in
    /// `j` vanish, with a canonical relative-interior point (sum of the
    /// fundamental coweights off `j`).
    pub fn chamber_face(&self, j: &[usize]) -> Face {
        let mut p = qv_zero(self.rank);
        for i in 0..self.ss_rank {
            if !j.contains(&i) {
                for k in 0..self.rank {
                    p[k] += &self.fundamental_coweights[i][k];
                }
            }
        }
        Face { j: j.to_vec(), interior_point: p }
    }

    // ------------------------------------------------------------------
    // Weyl elements
    // ------------------------------------------------------------------

    /// The identity element.
    pub fn identity(&self) -> WeylElement {
        WeylElement {
            mat: IMat::identity(self.rank),
            inv: IMat::identity(self.rank),
            word: vec![],
        }
    }

    /// Simple reflection `s_i` (0-based).
    pub fn simple_reflection(&self, i: usize) -> WeylElement {
        WeylElement { mat: self.refl[i].clone(), inv: self.refl[i].clone(), word: vec![i] }
    }

    /// Element given by a word in the simple reflections (need not be
    /// reduced; the canonical reduced word is recomputed).
    pub fn element_from_word(&self, word: &[usize]) -> WeylElement {
        let mut mat = IMat::identity(self.rank);
        for &i in word {
            mat = mat.mul(&self.refl[i]);
        }
        let mut inv = IMat::identity(self.rank);
        for &i in word.iter().rev() {
            inv = inv.mul(&self.refl[i]);
        }
        self.element_from_mats(mat, inv)
    }

    /// Rebuild an element from its weight matrix and inverse, recomputing
    /// the canonical reduced word by greedy smallest left descent.
    fn element_from_mats(&self, mat: IMat, inv: IMat) -> WeylElement {
        let mut word = Vec::new();
        let mut m = mat.clone();
        let mut mi = inv.clone();
        loop {
            // Left descent: l(s_i w) < l(w) iff w^{-1}(alpha_i) < 0.
            let descent = (0..self.ss_rank)
                .find(|&i| self.is_negative_root(&mi.mul_ivec(&self.simple_roots[i])));
            match descent {
                Some(i) => {
                    word.push(i);
                    m = self.refl[i].mul(&m);
                    mi = mi.mul(&self.refl[i]);
                }
                None => break,
            }
        }
        assert!(m.is_identity(), "matrix is not a Weyl group element");
        WeylElement { mat, inv, word }
    }

    /// Product `a * b`.
    pub fn mul(&self, a: &WeylElement, b: &WeylElement) -> WeylElement {
        self.element_from_mats(a.mat.mul(&b.mat), b.inv.mul(&a.inv))
    }

    /// Inverse.
    pub fn inv(&self, a: &WeylElement) -> WeylElement {
        self.element_from_mats(a.inv.clone(), a.mat.clone())
    }

    /// Reflection in the positive root with the given index.
    pub fn reflection(&self, root_index: usize) -> WeylElement {
        let beta = &self.positive_roots[root_index];
        let beta_check = &self.positive_coroots[root_index];
        let mut m = IMat::identity(self.rank);
        for r in 0..self.rank {
            for c in 0..self.rank {
                *m.at_mut(r, c) -= beta[r] * beta_check[c];
            }
        }
        self.element_from_mats(m.clone(), m)
    }

    /// Length computed as inversion count (number of positive roots sent
    /// to negative ones); used to cross-check canonical words.
    pub fn inversion_count(&self, w: &WeylElement) -> usize {
        self.positive_roots
            .iter()
            .filter(|r| self.is_negative_root(&w.mat.mul_ivec(r)))
            .count()
    }

    /// Longest element of the Weyl group.
    pub fn longest_element(&self) -> WeylElement {
        let mut w = self.identity();
        loop {
            // Right ascent: l(w s_i) > l(w) iff w(alpha_i) > 0.
            let ascent = (0..self.ss_rank)
                .find(|&i| self.is_positive_root(&w.mat.mul_ivec(&self.simple_roots[i])));
            match ascent {
                Some(i) => w = self.mul(&w, &self.simple_reflection(i)),
                None => return w,
            }
        }
    }

    // ------------------------------------------------------------------
    // Dominance and cosets
    // ------------------------------------------------------------------

    /// Minimal-length `u` with `u^{-1} xi` dominant, together with the
    /// dominant representative.  Always picks the smallest admissible
    /// simple reflection, so the result is deterministic; minimality of
    /// `u` holds because each step fixes exactly one inverted positive
    /// root.
    pub fn to_dominant_coweight(&self, xi: &[Q]) -> (WeylElement, QV) {
        let mut v = xi.to_vec();
        let mut word = Vec::new();
        loop {
            let neg = (0..self.ss_rank)
                .find(|&i| qv_dot(&self.simple_root_q(i), &v).is_negative());
            match neg {
                Some(i) => {
                    // Coweight action of a simple reflection is the
                    // transposed weight matrix.
                    v = self.refl[i].transpose().mul_qvec(&v);
                    word.push(i);
                }
                None => break,
            }
        }
        (self.element_from_word(&word), v)
    }

    /// Minimal-length `u` with `u^{-1} lambda` dominant, for weights.
    pub fn to_dominant_weight(&self, lambda: &[Q]) -> (WeylElement, QV) {
        let mut v = lambda.to_vec();
        let mut word = Vec::new();
        loop {
            let neg = (0..self.ss_rank).find(|&i| v[i].is_negative());
            match neg {
                Some(i) => {
                    v = self.refl[i].mul_qvec(&v);
                    word.push(i);
                }
                None => break,
            }
        }
        (self.element_from_word(&word), v)
    }

    /// Minimal-length representative of the left coset `W_J w`.
    pub fn min_coset_rep_left(&self, w: &WeylElement, j: &[usize]) -> WeylElement {
        let mut w = w.clone();
        loop {
            let descent = j
                .iter()
                .copied()
                .find(|&i| self.is_negative_root(&w.inv.mul_ivec(&self.simple_roots[i])));
            match descent {
                Some(i) => w = self.mul(&self.simple_reflection(i), &w),
                None => return w,
            }
        }
    }

    /// Minimal-length representative of the right coset `w W_J`.
    pub fn min_coset_rep_right(&self, w: &WeylElement, j: &[usize]) -> WeylElement {
        let mut w = w.clone();
        loop {
            let descent = j
                .iter()
                .copied()
                .find(|&i| self.is_negative_root(&w.mat.mul_ivec(&self.simple_roots[i])));
            match descent {
                Some(i) => w = self.mul(&w, &self.simple_reflection(i)),
                None => return w,
            }
        }
    }

    /// Enumerate the full Weyl group in deterministic order (length, then
    /// canonical word).  Errors if the group order exceeds `bound`.
    pub fn enumerate_weyl(&self, bound: u64) -> Result<&[WeylElement]> {
        if let Some(order) = self.weyl_order_hint {
            if order > bound {
                return Err(Error::Resource(format!(
                    "Weyl group of {} has order {order}, enumeration bound is {bound}",
                    self.label
                )));
            }
        }
        if let Some(cached) = self.weyl_cache.get() {
            return Ok(cached);
        }
        let mut seen: HashMap<IMat, ()> = HashMap::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        queue.push_back(self.identity());
        seen.insert(self.identity().mat, ());
        while let Some(w) = queue.pop_front() {
            out.push(w.clone());
            if out.len() as u64 > bound {
                return Err(Error::Resource(format!(
                    "Weyl group of {} exceeds enumeration bound {bound}",
                    self.label
                )));
            }
            for i in 0..self.ss_rank {
                let next = self.mul(&w, &self.simple_reflection(i));
                if !seen.contains_key(&next.mat) {
                    seen.insert(next.mat.clone(), ());
                    queue.push_back(next);
                }
            }
        }
        out.sort();
        if let Some(order) = self.weyl_order_hint {
            assert_eq!(out.len() as u64, order, "group order mismatch for {}", self.label);
        }
        Ok(self.weyl_cache.get_or_init(|| out))
    }

    /// All elements of length at most `max_len`, in deterministic order
    /// (length, then canonical word), without enumerating the full group.
    /// Errors if more than `bound` elements would be produced.
    pub fn elements_up_to_length(&self, max_len: usize, bound: u64) -> Result<Vec<WeylElement>> {
        let mut seen: HashMap<IMat, ()> = HashMap::new();
        seen.insert(self.identity().mat, ());
        let mut all = vec![self.identity()];
        let mut frontier = vec![self.identity()];
        for _ in 0..max_len {
            let mut next: Vec<WeylElement> = Vec::new();
            for w in &frontier {
                for i in 0..self.ss_rank {
                    let ws = self.mul(w, &self.simple_reflection(i));
                    if ws.length() == w.length() + 1 && !seen.contains_key(&ws.mat) {
                        seen.insert(ws.mat.clone(), ());
                        next.push(ws);
                    }
                }
            }
            next.sort();
            if (all.len() + next.len()) as u64 > bound {
                return Err(Error::Resource(format!(
                    "length-bounded enumeration of {} exceeds {bound} elements",
                    self.label
                )));
            }
            if next.is_empty() {
                break;
            }
            all.extend(next.iter().cloned());
            frontier = next;
        }
        Ok(all)
    }

    /// Minimal-length representatives of the right cosets `w W_J`,
    /// deterministic order.  Requires full enumeration.
    pub fn coset_reps(&self, j: &[usize], bound: u64) -> Result<Vec<WeylElement>> {
        let all = self.enumerate_weyl(bound)?;
        let mut reps: Vec<WeylElement> = all
            .iter()
            .filter(|w| {
                j.iter()
                    .all(|&i| self.is_positive_root(&w.mat.mul_ivec(&self.simple_roots[i])))
            })
            .cloned()
            .collect();
        reps.sort();
        Ok(reps)
    }

    /// Enumerate the standard parabolic subgroup `W_J` (no global bound
    /// needed when `J` is small).
    pub fn parabolic_subgroup(&self, j: &[usize], bound: u64) -> Result<Vec<WeylElement>> {
        let mut seen: HashMap<IMat, ()> = HashMap::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        queue.push_back(self.identity());
        seen.insert(self.identity().mat, ());
        while let Some(w) = queue.pop_front() {
            out.push(w.clone());
            if out.len() as u64 > bound {
                return Err(Error::Resource(format!(
                    "parabolic subgroup exceeds enumeration bound {bound}"
                )));
            }
            for &i in j {
                let next = self.mul(&w, &self.simple_reflection(i));
                if !seen.contains_key(&next.mat) {
                    seen.insert(next.mat.clone(), ());
                    queue.push_back(next);
                }
            }
        }
        out.sort();
        Ok(out)
    }

    // ------------------------------------------------------------------
    // Type-A permutation view
    // ------------------------------------------------------------------

    /// Present a Weyl element as a permutation of the defining-basis
    /// weights of a lone type-A factor; `None` if the datum has no such
    /// presentation.  Images are 0-based: `p[k]` is the index of the image
    /// of basis weight `k`.
    pub fn to_permutation(&self, w: &WeylElement) -> Option<Vec<usize>> {
        let eps = self.eps_weights.as_ref()?;
        let mut p = Vec::with_capacity(eps.len());
        for e in eps {
            let img = w.act_weight(e);
            let idx = eps.iter().position(|f| *f == img)?;
            p.push(idx);
        }
        Some(p)
    }
}

/// Cycle notation (1-based, fixed points omitted, cycles ordered by least
/// element) for a permutation given as 0-based images; `"e"` for the
/// identity.
pub fn cycles_string(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            seen[start] = true;
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut k = p[start];
        while k != start {
            seen[k] = true;
            cycle.push(k);
            k = p[k];
        }
        out.push('(');
        out.push_str(
            &cycle.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(" "),
        );
        out.push(')');
    }
    if out.is_empty() {
        "e".to_string()
    } else {
        out
    }
}

/// Parse cycle notation like `"(1 6)(2 12)"` into 0-based images for a
/// permutation of `n` points.  Used by tests to state expected values.
pub fn permutation_from_cycles(s: &str, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for cyc in s.split(')') {
        let cyc = cyc.trim().trim_start_matches('(').trim();
        if cyc.is_empty() || cyc == "e" {
            continue;
        }
        let items: Vec<usize> = cyc
            .split_whitespace()
            .map(|t| t.parse::<usize>().expect("bad cycle") - 1)
            .collect();
        for w in 0..items.len() {
            p[items[w]] = items[(w + 1) % items.len()];
        }
    }
    p
}

/// Cartan matrix of a recognized simple type label.
fn factor_cartan(label: &str) -> Result<Vec<Vec<i64>>> {
    let err = || Error::Config(format!("unsupported type factor `{label}`"));
    if label.len() < 2 {
        return Err(err());
    }
    let (family, n) = label.split_at(1);
    let n: usize = n.parse().map_err(|_| err())?;
    let chain = |n: usize| -> Vec<Vec<i64>> {
        let mut a = vec![vec![0i64; n]; n];
        for i in 0..n {
            a[i][i] = 2;
            if i + 1 < n {
                a[i][i + 1] = -1;
                a[i + 1][i] = -1;
            }
        }
        a
    };
    match family {
        "A" if (1..=20).contains(&n) => Ok(chain(n)),
        "B" if (2..=4).contains(&n) => {
            // alpha_n short: <alpha_{n-1}, alpha_n_check> = -2.
            let mut a = chain(n);
            a[n - 2][n - 1] = -2;
            Ok(a)
        }
        "C" if (2..=4).contains(&n) => {
            // alpha_n long: <alpha_n, alpha_{n-1}_check> = -2.
            let mut a = chain(n);
            a[n - 1][n - 2] = -2;
            Ok(a)
        }
        "D" if n == 4 => Ok(vec![
            vec![2, -1, 0, 0],
            vec![-1, 2, -1, -1],
            vec![0, -1, 2, 0],
            vec![0, -1, 0, 2],
        ]),
        "G" if n == 2 => {
            // alpha_1 short, alpha_2 long: <alpha_1, alpha_2_check> = -1,
            // <alpha_2, alpha_1_check> = -3.
            Ok(vec![vec![2, -1], vec![-3, 2]])
        }
        "F" if n == 4 => Ok(vec![
            vec![2, -1, 0, 0],
            vec![-1, 2, -2, 0],
            vec![0, -1, 2, -1],
            vec![0, 0, -1, 2],
        ]),
        _ => Err(err()),
    }
}

/// Order of the Weyl group of a recognized simple type.
fn factor_weyl_order(label: &str, n: usize) -> Option<u64> {
    let fact = |k: usize| (1..=k as u64).product::<u64>();
    match label.chars().next()? {
        'A' => Some(fact(n + 1)),
        'B' | 'C' => Some(2u64.pow(n as u32) * fact(n)),
        'D' => Some(2u64.pow(n as u32 - 1) * fact(n)),
        'G' => Some(12),
        'F' => Some(1152),
        _ => None,
    }
}

/// Symmetrizing diagonal for a Cartan matrix: positive rationals with
/// `d_i a_{ij} = d_j a_{ji}`, normalized to 1 on the first node of each
/// connected component.
fn symmetrizer(cartan: &[Vec<i64>]) -> Result<Vec<Q>> {
    let n = cartan.len();
    let mut d: Vec<Option<Q>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Q::one());
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            let di = d[i].clone().unwrap();
            for j in 0..n {
                if i != j && cartan[i][j] != 0 {
                    // With entries a_ij = <alpha_i, alpha_j^vee> and
                    // d_j = |alpha_j|^2/2, symmetry of <alpha_i, alpha_j>
                    // = a_ij d_j forces d_j = d_i a_ji / a_ij.
                    let dj = &di * qi(cartan[j][i]) / qi(cartan[i][j]);
                    match &d[j] {
                        None => {
                            d[j] = Some(dj);
                            stack.push(j);
                        }
                        Some(old) => {
                            if *old != dj {
                                return Err(Error::Config(
                                    "Cartan matrix is not symmetrizable".into(),
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(d.into_iter().map(|x| x.unwrap()).collect())
}
