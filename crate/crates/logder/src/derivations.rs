//! The graded module `D0` of syzygies on the Jacobian ideal of the defining
//! polynomial: graded pieces by exact nullspace, minimal generator and
//! relation degrees, Hilbert data, regularity, freeness, and the
//! deletion-embedding map.
//!
//! In characteristic zero the full derivation module splits off the Euler
//! derivation, so `D0 = { theta : theta(Q) = 0 }` carries all the
//! interesting structure. Everything here works degree by degree: the
//! degree-`t` piece is the nullspace of the linear map
//! `(R_t)^3 -> R_(t+d-1)`, `(a,b,c) |-> a Qx + b Qy + c Qz`.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use num::{BigInt, BigRational, Zero};

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::linalg::{QMatrix, Subspace};
use crate::monomial::{self, MonomialBasis};
use crate::poly::TriPoly;

/// The defining polynomial and its three partial derivatives.
#[derive(Debug, Clone)]
pub struct JacobianData {
    pub q: TriPoly,
    pub partials: [TriPoly; 3],
}

/// `Q = prod l_i` expanded exactly, with the partials assembled through the
/// product rule. The Euler relation `x Qx + y Qy + z Qz = d Q` is verified
/// before returning.
pub fn jacobian(arr: &Arrangement) -> Result<JacobianData> {
    arr.require_essential()?;
    let forms: Vec<TriPoly> = arr.lines().iter().map(|l| l.form()).collect();
    let d = forms.len();
    let mut prefix: Vec<TriPoly> = Vec::with_capacity(d + 1);
    prefix.push(TriPoly::one());
    for f in &forms {
        let next = &prefix[prefix.len() - 1] * f;
        prefix.push(next);
    }
    let mut suffix: Vec<TriPoly> = vec![TriPoly::one(); d + 1];
    for i in (0..d).rev() {
        suffix[i] = &forms[i] * &suffix[i + 1];
    }
    let q = prefix[d].clone();
    let mut partials = [
        TriPoly::zero(d - 1),
        TriPoly::zero(d - 1),
        TriPoly::zero(d - 1),
    ];
    for i in 0..d {
        let rest = &prefix[i] * &suffix[i + 1];
        for g in 0..3 {
            let coef = &forms[i].coeffs()[g];
            if !coef.is_zero() {
                partials[g] = &partials[g] + &rest.scale(coef);
            }
        }
    }
    let euler: TriPoly = (0..3)
        .map(|g| &TriPoly::variable(g) * &partials[g])
        .fold(TriPoly::zero(d), |acc, p| &acc + &p);
    let scaled = q.scale(&BigRational::from_integer(BigInt::from(d as i64)));
    if euler != scaled {
        return Err(Error::Inconsistency("Euler relation failed".into()));
    }
    Ok(JacobianData { q, partials })
}

/// A derivation `a dx + b dy + c dz` with homogeneous polynomial
/// coefficients of a common degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyVec {
    degree: usize,
    components: [TriPoly; 3],
}

impl PolyVec {
    pub fn new(components: [TriPoly; 3]) -> PolyVec {
        let degree = components[0].degree();
        assert!(components.iter().all(|c| c.degree() == degree));
        PolyVec { degree, components }
    }

    /// The Euler derivation `x dx + y dy + z dz`.
    pub fn euler() -> PolyVec {
        PolyVec::new([
            TriPoly::variable(0),
            TriPoly::variable(1),
            TriPoly::variable(2),
        ])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn components(&self) -> &[TriPoly; 3] {
        &self.components
    }

    /// Apply the derivation to a form: `a f_x + b f_y + c f_z`.
    pub fn apply(&self, f: &TriPoly) -> TriPoly {
        let mut acc = TriPoly::zero(self.degree + f.degree() - 1);
        for g in 0..3 {
            acc = &acc + &(&self.components[g] * &f.partial(g));
        }
        acc
    }

    /// Contract against precomputed partials: `a p0 + b p1 + c p2`.
    pub fn contract(&self, partials: &[TriPoly; 3]) -> TriPoly {
        let mut acc = TriPoly::zero(self.degree + partials[0].degree());
        for g in 0..3 {
            acc = &acc + &(&self.components[g] * &partials[g]);
        }
        acc
    }

    pub fn mul_form(&self, f: &TriPoly) -> PolyVec {
        PolyVec::new([
            f * &self.components[0],
            f * &self.components[1],
            f * &self.components[2],
        ])
    }

    pub fn sub(&self, other: &PolyVec) -> PolyVec {
        PolyVec::new([
            &self.components[0] - &other.components[0],
            &self.components[1] - &other.components[1],
            &self.components[2] - &other.components[2],
        ])
    }

    /// Coefficient vector in `(R_t)^3`, component-major.
    pub fn flatten(&self) -> Vec<BigRational> {
        let mut out = Vec::with_capacity(3 * monomial::dimension(self.degree));
        for c in &self.components {
            out.extend(c.coeffs().iter().cloned());
        }
        out
    }

    pub fn from_flat(degree: usize, flat: &[BigRational]) -> PolyVec {
        let n = monomial::dimension(degree);
        assert_eq!(flat.len(), 3 * n);
        PolyVec::new([
            TriPoly::from_coeffs(degree, flat[..n].to_vec()),
            TriPoly::from_coeffs(degree, flat[n..2 * n].to_vec()),
            TriPoly::from_coeffs(degree, flat[2 * n..].to_vec()),
        ])
    }
}

/// The degree-`t` piece of `D0` as a subspace of `(R_t)^3`.
#[derive(Debug, Clone)]
pub struct GradedPiece {
    pub degree: usize,
    pub space: Subspace,
}

impl GradedPiece {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis_vec(&self, i: usize) -> PolyVec {
        PolyVec::from_flat(self.degree, self.space.basis_row(i))
    }

    pub fn basis_vecs(&self) -> Vec<PolyVec> {
        (0..self.dim()).map(|i| self.basis_vec(i)).collect()
    }
}

/// Matrix of `(a,b,c) |-> a Qx + b Qy + c Qz` on degree-`t` coefficient
/// vectors, component-major columns.
fn syzygy_matrix(jac: &JacobianData, t: usize) -> QMatrix {
    let dp = jac.partials[0].degree();
    let rows = monomial::dimension(t + dp);
    let block = monomial::dimension(t);
    let basis_t = MonomialBasis::new(t);
    let basis_p = MonomialBasis::new(dp);
    let mut m = QMatrix::zero(rows, 3 * block);
    for g in 0..3 {
        for (mi, &(a0, a1, _)) in basis_t.exponents().iter().enumerate() {
            let col = g * block + mi;
            for (pi, &(b0, b1, _)) in basis_p.exponents().iter().enumerate() {
                let c = &jac.partials[g].coeffs()[pi];
                if !c.is_zero() {
                    let row = monomial::index_of(t + dp, a0 + b0, a1 + b1);
                    m.set(row, col, c.clone());
                }
            }
        }
    }
    m
}

/// Compute-once holder for the jacobian data and the graded pieces of an
/// arrangement's derivation module. All methods are exact; pieces are cached
/// per degree behind a mutex so the holder can be shared across threads.
pub struct DerivationModule {
    arr: Arrangement,
    jac: JacobianData,
    pieces: Mutex<BTreeMap<usize, Arc<GradedPiece>>>,
    dims: Mutex<BTreeMap<usize, usize>>,
    resolution: Mutex<Option<Resolution>>,
}

impl DerivationModule {
    pub fn new(arr: &Arrangement) -> Result<DerivationModule> {
        let jac = jacobian(arr)?;
        Ok(DerivationModule {
            arr: arr.clone(),
            jac,
            pieces: Mutex::new(BTreeMap::new()),
            dims: Mutex::new(BTreeMap::new()),
            resolution: Mutex::new(None),
        })
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arr
    }

    pub fn jacobian_data(&self) -> &JacobianData {
        &self.jac
    }

    /// The degree-`t` graded piece, with every basis element re-verified to
    /// annihilate the partials by explicit polynomial multiplication.
    pub fn piece(&self, t: usize) -> Result<Arc<GradedPiece>> {
        if let Some(p) = self.pieces.lock().unwrap().get(&t) {
            return Ok(p.clone());
        }
        let space = syzygy_matrix(&self.jac, t).nullspace();
        let piece = GradedPiece { degree: t, space };
        for theta in piece.basis_vecs() {
            if !theta.contract(&self.jac.partials).is_zero() {
                return Err(Error::Inconsistency(format!(
                    "degree-{t} nullspace element does not annihilate the Jacobian ideal"
                )));
            }
        }
        let arc = Arc::new(piece);
        self.pieces.lock().unwrap().insert(t, arc.clone());
        Ok(arc)
    }

    /// `dim (D0)_t` through the cheaper rank-only path.
    pub fn dim(&self, t: usize) -> usize {
        if let Some(p) = self.pieces.lock().unwrap().get(&t) {
            return p.dim();
        }
        if let Some(&n) = self.dims.lock().unwrap().get(&t) {
            return n;
        }
        let m = syzygy_matrix(&self.jac, t);
        let n = m.cols() - m.rank();
        self.dims.lock().unwrap().insert(t, n);
        n
    }

    /// Exact dimension table `t -> dim (D0)_t` for `0 <= t <= upto`.
    pub fn hilbert(&self, upto: usize) -> Vec<usize> {
        (0..=upto).map(|t| self.dim(t)).collect()
    }

    /// Ascending multiset of minimal generator degrees. In degree `t` the
    /// number of new generators is `dim (D0)_t` minus the rank of
    /// `x,y,z * (D0)_(t-1)`.
    pub fn generator_degrees(&self) -> Result<Vec<usize>> {
        self.arr.require_essential()?;
        let d = self.arr.d();
        let mut alphas = Vec::new();
        let mut prev: Option<Arc<GradedPiece>> = None;
        for t in 0..=d - 2 {
            let cur = self.piece(t)?;
            let span_rank = match &prev {
                None => 0,
                Some(p) if p.dim() == 0 => 0,
                Some(p) => {
                    let ambient = 3 * monomial::dimension(t);
                    let mut rows = Vec::with_capacity(3 * p.dim());
                    for theta in p.basis_vecs() {
                        for var in 0..3 {
                            rows.push(theta.mul_form(&TriPoly::variable(var)).flatten());
                        }
                    }
                    QMatrix::from_rows(ambient, rows).rank()
                }
            };
            if span_rank > cur.dim() {
                return Err(Error::Inconsistency(format!(
                    "degree-{t} span exceeds the graded piece"
                )));
            }
            alphas.extend(std::iter::repeat(t).take(cur.dim() - span_rank));
            prev = Some(cur);
        }
        Ok(alphas)
    }

    /// Relation degrees from the generator degrees and the Hilbert table
    /// through degree `d`, via `sum t^beta = sum t^alpha - H(t)(1-t)^3`.
    pub fn relation_degrees(&self, alphas: &[usize], hilbert: &[usize]) -> Result<Vec<usize>> {
        let d = self.arr.d();
        if hilbert.len() < d + 1 {
            return Err(Error::Inconsistency(format!(
                "hilbert table needs degrees 0..={d}"
            )));
        }
        let h = |n: i64| -> i64 {
            if n < 0 {
                0
            } else {
                hilbert[n as usize] as i64
            }
        };
        let mut betas = Vec::new();
        for n in 0..=d {
            let ni = n as i64;
            let series = h(ni) - 3 * h(ni - 1) + 3 * h(ni - 2) - h(ni - 3);
            let gens = alphas.iter().filter(|&&a| a == n).count() as i64;
            let count = gens - series;
            if count < 0 {
                return Err(Error::Inconsistency(format!(
                    "negative relation count {count} in degree {n}"
                )));
            }
            if n == d && count != 0 {
                return Err(Error::Inconsistency(
                    "relation degrees extend past d-1".into(),
                ));
            }
            betas.extend(std::iter::repeat(n).take(count as usize));
        }
        if betas.len() + 2 != alphas.len() {
            return Err(Error::Inconsistency(format!(
                "resolution ranks {} generators vs {} relations",
                alphas.len(),
                betas.len()
            )));
        }
        Ok(betas)
    }

    /// The minimal free resolution `0 -> R(-beta) -> R(-alpha) -> D0 -> 0`,
    /// validated against every structural invariant. Cached.
    pub fn resolve(&self) -> Result<Resolution> {
        if let Some(res) = self.resolution.lock().unwrap().as_ref() {
            return Ok(res.clone());
        }
        let d = self.arr.d();
        let alphas = self.generator_degrees()?;
        let hilbert = self.hilbert(d);
        let betas = self.relation_degrees(&alphas, &hilbert)?;
        let regularity = resolution_regularity(&alphas, &betas);
        let res = Resolution {
            alphas,
            betas,
            regularity,
            hilbert,
        };
        res.validate(
            d,
            self.arr.jacobian_degree()?,
            self.arr.max_mu()?,
        )?;
        *self.resolution.lock().unwrap() = Some(res.clone());
        Ok(res)
    }

    pub fn freeness(&self) -> Result<FreenessReport> {
        let res = self.resolve()?;
        let pi = self.arr.poincare()?;
        let is_free = res.betas.is_empty();
        let exponents = if is_free {
            Some((res.alphas[0], res.alphas[1]))
        } else {
            None
        };
        let terao_factor_check = res.alphas.len() == 2
            && res.alphas[0] as i64 + res.alphas[1] as i64 == pi.b1
            && (res.alphas[0] * res.alphas[1]) as i64 == pi.b2;
        if is_free && !terao_factor_check {
            return Err(Error::Inconsistency(
                "free module but Poincare polynomial does not factor accordingly".into(),
            ));
        }
        Ok(FreenessReport {
            is_free,
            exponents,
            terao_factor_check,
        })
    }

    pub fn regularity(&self) -> Result<usize> {
        Ok(self.resolve()?.regularity)
    }
}

/// `max(max alpha, max beta - 1)`, the module regularity of a resolution.
pub fn resolution_regularity(alphas: &[usize], betas: &[usize]) -> usize {
    let a = alphas.iter().copied().max().unwrap_or(0);
    let b = betas.iter().copied().max().map(|b| b - 1).unwrap_or(0);
    a.max(b)
}

/// Generator and relation degrees, regularity, and the Hilbert table of
/// `D0` through degree `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resolution {
    pub alphas: Vec<usize>,
    pub betas: Vec<usize>,
    pub regularity: usize,
    pub hilbert: Vec<usize>,
}

impl Resolution {
    /// Structural invariants: rank bookkeeping, degree bounds, the
    /// first-Chern sum, the Chern-polynomial congruence, the relation-degree
    /// lower bound, and the local lower bound on generator degrees.
    pub fn validate(&self, d: usize, deg_j: i64, max_mu: usize) -> Result<()> {
        let fail = |msg: String| Err(Error::Inconsistency(msg));
        let m = self.alphas.len();
        if m != self.betas.len() + 2 {
            return fail(format!("|alpha| = {m} but |beta| = {}", self.betas.len()));
        }
        if m > d - 1 {
            return fail(format!("{m} generators exceeds d-1 = {}", d - 1));
        }
        let sum_a: i64 = self.alphas.iter().map(|&a| a as i64).sum();
        let sum_b: i64 = self.betas.iter().map(|&b| b as i64).sum();
        if sum_a - sum_b != (d - 1) as i64 {
            return fail(format!("sum alpha - sum beta = {} != d-1", sum_a - sum_b));
        }
        if self
            .alphas
            .iter()
            .any(|&a| a == 0 || a > d - 2)
        {
            return fail(format!("generator degree out of [1, d-2]: {:?}", self.alphas));
        }
        if self.betas.iter().any(|&b| b > d - 1) {
            return fail(format!("relation degree above d-1: {:?}", self.betas));
        }
        if self.regularity > d - 2 {
            return fail(format!("regularity {} above d-2", self.regularity));
        }
        if !self.betas.is_empty() && self.betas[0] < self.alphas[1] + 1 {
            return fail(format!(
                "relation degree {} below alpha_2 + 1 = {}",
                self.betas[0],
                self.alphas[1] + 1
            ));
        }
        if !self.alphas.iter().any(|&a| a >= max_mu) {
            return fail(format!(
                "no generator degree reaches max mu = {max_mu}"
            ));
        }
        // Chern consistency: prod(1 - alpha t) = prod(1 - beta t) (1 + c1 t + c2 t^2) mod t^3.
        let c1 = -((d as i64) - 1);
        let c2 = ((d as i64) - 1).pow(2) - deg_j;
        let e2 = |v: &[usize]| -> i64 {
            let mut acc = 0i64;
            for i in 0..v.len() {
                for j in i + 1..v.len() {
                    acc += (v[i] * v[j]) as i64;
                }
            }
            acc
        };
        if sum_a != sum_b - c1 {
            return fail("Chern class c1 mismatch".into());
        }
        if e2(&self.alphas) != c2 - c1 * sum_b + e2(&self.betas) {
            return fail("Chern class c2 mismatch".into());
        }
        Ok(())
    }
}

/// Freeness verdict plus the factorization cross-check of Terao's theorem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FreenessReport {
    pub is_free: bool,
    pub exponents: Option<(usize, usize)>,
    pub terao_factor_check: bool,
}

/// `psi = l theta - (theta(l)/d) E`: the unique Euler-corrected lift of a
/// derivation of the deleted arrangement into the full module, one degree up.
pub fn embed_deletion(arr: &Arrangement, h: usize, theta: &PolyVec) -> Result<PolyVec> {
    let triple = arr.triple(h)?;
    let deleted_jac = jacobian(&triple.deleted)?;
    if !theta.contract(&deleted_jac.partials).is_zero() {
        return Err(Error::NotInDeletedModule);
    }
    let ell = triple.pivot.form();
    // theta(l) is the contraction against the constant partials of l.
    let [la, lb, lc] = triple.pivot.coefficients();
    let theta_l = {
        let consts = [
            constant_poly(la),
            constant_poly(lb),
            constant_poly(lc),
        ];
        theta.contract(&consts)
    };
    let d = BigRational::from_integer(BigInt::from(arr.d() as i64));
    let correction = PolyVec::euler().mul_form(&theta_l.scale(&(BigRational::from_integer(BigInt::from(1)) / d)));
    let psi = theta.mul_form(&ell).sub(&correction);
    let full_jac = jacobian(arr)?;
    if !psi.contract(&full_jac.partials).is_zero() {
        return Err(Error::Inconsistency(
            "embedded derivation does not annihilate the full Jacobian ideal".into(),
        ));
    }
    Ok(psi)
}

fn constant_poly(c: i64) -> TriPoly {
    TriPoly::from_coeffs(0, vec![BigRational::from_integer(BigInt::from(c))])
}

/// Numbers backing the two deletion identities.
#[derive(Debug, Clone)]
pub struct DeletionReport {
    pub restriction_count: usize,
    pub deg_j: i64,
    pub deg_j_deleted: i64,
    /// Rows `(t, dim (D0)_t, dim (D0')_(t-1), t + 2 - |A''|)` for
    /// `d-2 <= t <= d`.
    pub hilbert_rows: Vec<(usize, usize, usize, i64)>,
}

/// Verify the two numerical identities tying an arrangement to its deletion:
/// the Jacobian-degree drop `2d - 2 - |A''|`, and exactness of the
/// global-sections sequence in degrees `d-2..=d`.
pub fn deletion_check(arr: &Arrangement, h: usize) -> Result<DeletionReport> {
    let d = arr.d();
    if d < 4 {
        return Err(Error::TooFewLines { need: 4, have: d });
    }
    let triple = arr.triple(h)?;
    let r = triple.restriction_count() as i64;
    let deg_j = arr.jacobian_degree()?;
    let deg_j_deleted = triple.deleted.jacobian_degree()?;
    if deg_j - deg_j_deleted != 2 * (d as i64) - 2 - r {
        return Err(Error::Inconsistency(format!(
            "deg J drop {} != 2d-2-|A''| = {}",
            deg_j - deg_j_deleted,
            2 * (d as i64) - 2 - r
        )));
    }
    let full = DerivationModule::new(arr)?;
    let deleted = DerivationModule::new(&triple.deleted)?;
    let mut rows = Vec::new();
    for t in d - 2..=d {
        let lhs = full.dim(t);
        let prev = deleted.dim(t - 1);
        let expected = t as i64 + 2 - r;
        if lhs as i64 - prev as i64 != expected {
            return Err(Error::Inconsistency(format!(
                "global-sections identity fails at t = {t}: {lhs} - {prev} != {expected}"
            )));
        }
        rows.push((t, lhs, prev, expected));
    }
    Ok(DeletionReport {
        restriction_count: r as usize,
        deg_j,
        deg_j_deleted,
        hilbert_rows: rows,
    })
}

// Free-function forms of the per-arrangement operations.

pub fn graded_piece(arr: &Arrangement, t: usize) -> Result<GradedPiece> {
    let module = DerivationModule::new(arr)?;
    let piece = module.piece(t)?;
    Ok(GradedPiece {
        degree: piece.degree,
        space: piece.space.clone(),
    })
}

pub fn hilbert_table(arr: &Arrangement, upto: usize) -> Result<Vec<usize>> {
    Ok(DerivationModule::new(arr)?.hilbert(upto))
}

pub fn generator_degrees(arr: &Arrangement) -> Result<Vec<usize>> {
    DerivationModule::new(arr)?.generator_degrees()
}

pub fn resolve(arr: &Arrangement) -> Result<Resolution> {
    DerivationModule::new(arr)?.resolve()
}

pub fn freeness(arr: &Arrangement) -> Result<FreenessReport> {
    DerivationModule::new(arr)?.freeness()
}

pub fn regularity(arr: &Arrangement) -> Result<usize> {
    DerivationModule::new(arr)?.regularity()
}
