//! Two-particle angular-momentum coupling.
//!
//! Total-spin operators are built on the tensor product, the coupled basis
//! `|S, mu>` is obtained as exact joint kernels of `Sz - mu` and
//! `S^2 - S(S+1)`, and the closed-form Clebsch-Gordan coefficients provide an
//! independent route to the same amplitudes.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::entangle::{exchange_parity, Parity};
use crate::error::{Error, Result};
use crate::exactnum::{surd_normalize, GaussianRational, HalfInt, Rational, SurdComplex, SurdScalar, ToFloat};
use crate::floatmat::{self, FloatMatrix};
use crate::linalg::{dim_error, ExactMatrix, ExactVector};
use crate::spinops::{
    basis_change, spin_operators, standard_spin, standard_spin_float, BasisChange, BasisLabel,
    SpinJ,
};

/// The tensor product of two spin spaces. Composite index
/// `k = k1 * (2 j2 + 1) + k2`; the left factor is particle 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ProductSpace {
    pub j1: SpinJ,
    pub j2: SpinJ,
    pub basis1: BasisLabel,
    pub basis2: BasisLabel,
}

impl ProductSpace {
    pub fn new(j1: SpinJ, j2: SpinJ, basis: BasisLabel) -> Self {
        Self { j1, j2, basis1: basis, basis2: basis }
    }

    /// Two spin-1 particles in the `m` basis.
    pub fn two_photon() -> Self {
        Self::new(SpinJ::ONE, SpinJ::ONE, BasisLabel::StandardM)
    }

    pub fn two_photon_cartesian() -> Self {
        Self::new(SpinJ::ONE, SpinJ::ONE, BasisLabel::Cartesian)
    }

    /// Two spin-1/2 particles in the `m` basis.
    pub fn two_electron() -> Self {
        Self::new(SpinJ::HALF, SpinJ::HALF, BasisLabel::StandardM)
    }

    pub fn d1(&self) -> usize {
        self.j1.dim()
    }

    pub fn d2(&self) -> usize {
        self.j2.dim()
    }

    pub fn dim(&self) -> usize {
        self.d1() * self.d2()
    }

    pub fn index(&self, k1: usize, k2: usize) -> usize {
        k1 * self.d2() + k2
    }

    pub fn split(&self, k: usize) -> (usize, usize) {
        (k / self.d2(), k % self.d2())
    }

    /// Composite index of `|m1> (x) |m2>` in the `m` basis.
    pub fn index_of(&self, m1: HalfInt, m2: HalfInt) -> Option<usize> {
        Some(self.index(self.j1.index_of(m1)?, self.j2.index_of(m2)?))
    }

    pub fn is_standard(&self) -> bool {
        self.basis1 == BasisLabel::StandardM && self.basis2 == BasisLabel::StandardM
    }

    pub fn with_basis(&self, basis: BasisLabel) -> Self {
        Self::new(self.j1, self.j2, basis)
    }

    /// Allowed total spins `|j1 - j2|, ..., j1 + j2`, descending.
    pub fn total_spins(&self) -> Vec<HalfInt> {
        let hi = i64::from(self.j1.twice() + self.j2.twice());
        let lo = (i64::from(self.j1.twice()) - i64::from(self.j2.twice())).abs();
        (lo..=hi).rev().step_by(2).map(HalfInt::from_twice).collect()
    }

    /// The unitary taking `m`-basis coordinates to this space's coordinates.
    pub fn from_standard(&self) -> Result<BasisChange> {
        let factor = |j: SpinJ, basis: BasisLabel| -> Result<BasisChange> {
            let own = spin_operators(j, basis)?;
            let std = standard_spin(j)?;
            basis_change(&own, &std)
        };
        let u1 = factor(self.j1, self.basis1)?;
        let u2 = factor(self.j2, self.basis2)?;
        Ok(tensor_changes(&u1, &u2))
    }
}

impl fmt::Display for ProductSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "j1={} ({}) x j2={} ({})", self.j1, self.basis1, self.j2, self.basis2)
    }
}

fn tensor_changes(a: &BasisChange, b: &BasisChange) -> BasisChange {
    let cols = a
        .columns()
        .iter()
        .flat_map(|u| b.columns().iter().map(move |w| u.tensor(w)))
        .collect();
    BasisChange::from_columns(cols)
}

/// Total `Sz` and `S^2` on a product space.
#[derive(Clone, Debug)]
pub struct TotalSpinOperators {
    pub space: ProductSpace,
    pub sz: ExactMatrix,
    pub s2: ExactMatrix,
}

/// `Sz = s1z (x) 1 + 1 (x) s2z` and
/// `S^2 = s1^2 (x) 1 + 1 (x) s2^2 + 2 (s1x s2x + s1y s2y + s1z s2z)`.
pub fn total_operators(space: ProductSpace) -> Result<TotalSpinOperators> {
    let a = spin_operators(space.j1, space.basis1)?;
    let b = spin_operators(space.j2, space.basis2)?;
    let ia = ExactMatrix::identity(space.d1());
    let ib = ExactMatrix::identity(space.d2());

    let mixed = |_| {
        Error::UnsupportedSpin(format!(
            "coupling {} x {} (its total-spin operators mix radicands)",
            space.j1, space.j2
        ))
    };
    let sz = a.sz.kron(&ib).try_add(&ia.kron(&b.sz)).map_err(mixed)?;
    let one = SurdComplex::one();
    let two = SurdComplex::from_gaussian(GaussianRational::from_integer(2));
    let s2 = ExactMatrix::linear_combination(
        &[one.clone(), one, two.clone(), two.clone(), two],
        &[
            a.casimir()?.kron(&ib),
            ia.kron(&b.casimir()?),
            a.sx.kron(&b.sx),
            a.sy.kron(&b.sy),
            a.sz.kron(&b.sz),
        ],
    )
    .map_err(mixed)?;
    if !sz.commutator(&s2)?.is_zero() {
        return Err(Error::Precondition("total S^2 and Sz do not commute".into()));
    }
    Ok(TotalSpinOperators { space, sz, s2 })
}

impl TotalSpinOperators {
    fn shifted(&self, op: &ExactMatrix, value: Rational) -> Result<ExactMatrix> {
        op.try_sub(&ExactMatrix::identity(self.space.dim()).scale_rational(&value))
    }

    /// `Sz - mu`.
    pub fn sz_shifted(&self, mu: HalfInt) -> Result<ExactMatrix> {
        self.shifted(&self.sz, mu.to_rational())
    }

    /// `S^2 - S(S+1)`.
    pub fn s2_shifted(&self, spin: HalfInt) -> Result<ExactMatrix> {
        self.shifted(&self.s2, spin.casimir())
    }

    /// Distinct eigenvalues of `S^2` with their multiplicities, from exact
    /// kernel dimensions over the allowed total spins.
    pub fn s2_spectrum(&self) -> Result<Vec<(Rational, usize)>> {
        self.space
            .total_spins()
            .into_iter()
            .map(|s| Ok((s.casimir(), self.s2_shifted(s)?.nullspace().len())))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Eigensolver,
    ClebschGordan,
    Ansatz,
}

/// A normalized simultaneous eigenvector of `S^2` and `Sz`.
#[derive(Clone, Debug)]
pub struct CoupledState {
    pub spin: HalfInt,
    pub mu: HalfInt,
    pub vector: ExactVector,
    /// `None` when the two particles have different spins.
    pub exchange_parity: Option<Parity>,
    pub provenance: Provenance,
}

/// Exact basis of the `Sz = mu` eigenspace; empty when `mu` is not an
/// eigenvalue.
pub fn eigenspace_mu(ops: &TotalSpinOperators, mu: HalfInt) -> Result<Vec<ExactVector>> {
    Ok(ops.sz_shifted(mu)?.nullspace())
}

/// Exact Gram-Schmidt without normalization, so every step stays in Q(i).
fn orthogonalize(vectors: Vec<ExactVector>) -> Result<Vec<ExactVector>> {
    let mut out: Vec<ExactVector> = Vec::with_capacity(vectors.len());
    for v in vectors {
        let mut comps = v.components().to_vec();
        for u in &out {
            let uc = u.components();
            let num = uc.iter().zip(&comps).fold(GaussianRational::zero(), |acc, (a, b)| acc + a.conj() * b);
            let den = uc.iter().fold(Rational::zero(), |acc, a| acc + a.norm_sqr());
            let ratio = num.scale(&den.recip());
            for (c, a) in comps.iter_mut().zip(uc) {
                *c -= &(&ratio * a);
            }
        }
        out.push(ExactVector::from_components(comps));
    }
    Ok(out)
}

/// Normalizes, fixes the canonical phase and tags a raw eigenvector.
fn finish_state(space: &ProductSpace, vector: ExactVector, spin: HalfInt, mu: HalfInt, provenance: Provenance) -> Result<CoupledState> {
    let vector = vector.normalized()?.with_canonical_phase();
    let parity = if space.j1 == space.j2 {
        Some(exchange_parity(&vector, space.d1())?)
    } else {
        None
    };
    Ok(CoupledState { spin, mu, vector, exchange_parity: parity, provenance })
}

/// All coupled states `|S, mu>`, ordered by `S` then `mu`, both descending.
///
/// The computation runs in the `m` basis; for a Cartesian space the states
/// are carried back through the exact basis change.
pub fn coupled_eigenbasis(space: ProductSpace) -> Result<Vec<CoupledState>> {
    let std_space = space.with_basis(BasisLabel::StandardM);
    let ops = total_operators(std_space)?;
    let to_space = if space.is_standard() { None } else { Some(space.from_standard()?) };

    let mut states = Vec::with_capacity(space.dim());
    for spin in space.total_spins() {
        let s2 = ops.s2_shifted(spin)?;
        for k in 0..=spin.twice() {
            let mu = HalfInt::from_twice(spin.twice() - 2 * k);
            let joint = ops.sz_shifted(mu)?.vstack(&s2)?;
            for raw in orthogonalize(joint.nullspace())? {
                let mut state = finish_state(&std_space, raw, spin, mu, Provenance::Eigensolver)?;
                if let Some(u) = &to_space {
                    state.vector = u.apply(&state.vector)?;
                }
                states.push(state);
            }
        }
    }
    Ok(states)
}

/// Exact residuals of a failed (or passed) eigen-equation check.
#[derive(Clone, Debug)]
pub struct EigenVerdict {
    pub pass: bool,
    /// `S^2 v - S(S+1) v`
    pub s2_residual: ExactVector,
    /// `Sz v - mu v`
    pub sz_residual: ExactVector,
}

/// Checks `S^2 v = S(S+1) v` and `Sz v = mu v` exactly.
pub fn verify_eigenstate(ops: &TotalSpinOperators, v: &ExactVector, spin: HalfInt, mu: HalfInt) -> Result<EigenVerdict> {
    if v.dim() != ops.space.dim() {
        return Err(dim_error(ops.space.dim(), v.dim()));
    }
    let s2_residual = ops.s2_shifted(spin)?.apply(v)?;
    let sz_residual = ops.sz_shifted(mu)?.apply(v)?;
    Ok(EigenVerdict { pass: s2_residual.is_zero() && sz_residual.is_zero(), s2_residual, sz_residual })
}

/// Result of solving a superposition ansatz `sum_i x_i c_i`.
#[derive(Clone, Debug)]
pub struct AnsatzSolution {
    /// Coefficient ratio `x_i`, scaled to primitive Gaussian integers when
    /// the candidates carry no radicals (e.g. `a = 2b` gives `[2, 1]`).
    pub ratio: Vec<SurdComplex>,
    /// Coefficients of the normalized state.
    pub normalized: Vec<SurdComplex>,
    pub state: CoupledState,
}

/// Finds the superposition of `candidates` that is an eigenstate with total
/// spin `S` (all candidates must already have `Sz = mu`).
pub fn solve_superposition_ansatz(
    ops: &TotalSpinOperators,
    candidates: &[ExactVector],
    spin: HalfInt,
    mu: HalfInt,
) -> Result<AnsatzSolution> {
    if candidates.is_empty() {
        return Err(Error::Precondition("no candidate vectors".into()));
    }
    let sz = ops.sz_shifted(mu)?;
    for (i, c) in candidates.iter().enumerate() {
        if c.dim() != ops.space.dim() {
            return Err(dim_error(ops.space.dim(), c.dim()));
        }
        if !sz.apply(c)?.is_zero() {
            return Err(Error::Precondition(format!("candidate {i} is not in the mu = {mu} eigenspace")));
        }
    }
    let shifted = ops.s2_shifted(spin)?;
    if !shifted.prefactor().is_rational() {
        return Err(Error::Precondition("S^2 has an irrational prefactor".into()));
    }
    // With y_i = x_i p_i (p_i the candidate prefactors), the system
    // sum_i y_i (S^2 - S(S+1)) comps_i = 0 is over Q(i).
    let columns: Vec<ExactVector> = candidates
        .iter()
        .map(|c| shifted.apply(&ExactVector::from_components(c.components().to_vec())))
        .collect::<Result<_>>()?;
    let dim = ops.space.dim();
    let rows: Vec<Vec<GaussianRational>> = (0..dim)
        .map(|r| columns.iter().map(|col| col.components()[r].clone()).collect())
        .collect();
    let system = ExactMatrix::from_rows(rows)?;
    let kernel = system.nullspace();
    let y = match kernel.len() {
        0 => {
            return Err(Error::NoSolution(format!(
                "S(S+1) = {} is not an eigenvalue on the span of the candidates",
                spin.casimir()
            )))
        }
        1 => kernel.into_iter().next().expect("one vector"),
        n => {
            return Err(Error::NoSolution(format!(
                "the eigenvalue equation leaves {n} free coefficients"
            )))
        }
    };
    let mut y = y.components().to_vec();
    if y.iter().find(|g| !g.is_zero()).is_some_and(|g| g.is_real() && g.re.is_negative()) {
        y.iter_mut().for_each(|g| *g = -&*g);
    }

    let combined = candidates.iter().zip(&y).try_fold(ExactVector::zero(dim), |acc, (c, yi)| {
        acc.try_add(&ExactVector::from_components(c.components().to_vec()).scale_gaussian(yi))
    })?;
    let norm = combined.normalized()?.prefactor().clone();
    let ratio = candidates
        .iter()
        .zip(&y)
        .map(|(c, yi)| Ok(SurdComplex::from_parts(yi, &c.prefactor().recip()?)))
        .collect::<Result<Vec<_>>>()?;
    let normalized = ratio.iter().map(|x| x.mul_surd(&norm)).collect();
    let vector = combined.normalized()?;
    let parity = if ops.space.j1 == ops.space.j2 {
        Some(exchange_parity(&vector, ops.space.d1())?)
    } else {
        None
    };
    Ok(AnsatzSolution {
        ratio,
        normalized,
        state: CoupledState { spin, mu, vector, exchange_parity: parity, provenance: Provenance::Ansatz },
    })
}

/// `<j1 m1; j2 m2 | J M>` with its arguments.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CGCoefficient {
    pub j1: HalfInt,
    pub m1: HalfInt,
    pub j2: HalfInt,
    pub m2: HalfInt,
    pub j: HalfInt,
    pub m: HalfInt,
    #[serde(serialize_with = "serialize_display")]
    pub value: SurdScalar,
}

fn serialize_display<S: serde::Serializer, T: fmt::Display>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn factorial(n: i64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Integer value of a half-integer that must be integral at this point.
fn whole(x: HalfInt) -> i64 {
    debug_assert!(x.is_integer());
    x.twice() / 2
}

fn is_valid_projection(j: HalfInt, m: HalfInt) -> bool {
    j.twice() >= 0 && m.abs() <= j && (j - m).is_integer()
}

/// Clebsch-Gordan coefficient from the Racah closed form:
///
/// ```text
/// C = sqrt[(2J+1) (J+j1-j2)! (J-j1+j2)! (j1+j2-J)! / (j1+j2+J+1)!]
///   * sqrt[(J+M)! (J-M)! (j1-m1)! (j1+m1)! (j2-m2)! (j2+m2)!]
///   * sum_k (-1)^k / [k! (j1+j2-J-k)! (j1-m1-k)! (j2+m2-k)!
///                     (J-j2+m1+k)! (J-j1-m2+k)!]
/// ```
///
/// Arguments violating a selection rule give exact zero.
pub fn clebsch_gordan(j1: HalfInt, m1: HalfInt, j2: HalfInt, m2: HalfInt, j: HalfInt, m: HalfInt) -> CGCoefficient {
    let value = racah(j1, m1, j2, m2, j, m);
    CGCoefficient { j1, m1, j2, m2, j, m, value }
}

fn racah(j1: HalfInt, m1: HalfInt, j2: HalfInt, m2: HalfInt, j: HalfInt, m: HalfInt) -> SurdScalar {
    let valid = is_valid_projection(j1, m1)
        && is_valid_projection(j2, m2)
        && is_valid_projection(j, m)
        && m1 + m2 == m
        && (j1 + j2 + j).is_integer()
        && (j1 - j2).abs() <= j
        && j <= j1 + j2;
    if !valid {
        return SurdScalar::zero();
    }
    let a = whole(j1 + j2 - j);
    let b = whole(j1 - j2 + j);
    let c = whole(j2 - j1 + j);
    let n = whole(j1 + j2 + j) + 1;
    let two_j_plus_1 = j.twice() + 1;

    let triangle = Rational::new(
        BigInt::from(two_j_plus_1) * factorial(a) * factorial(b) * factorial(c),
        factorial(n),
    );
    let projections = [j1 + m1, j1 - m1, j2 + m2, j2 - m2, j + m, j - m]
        .into_iter()
        .fold(BigInt::one(), |acc, x| acc * factorial(whole(x)));

    let (j1m1m, j2m2p) = (whole(j1 - m1), whole(j2 + m2));
    let (shift1, shift2) = (whole(j - j2 + m1), whole(j - j1 - m2));
    let k_min = 0.max(-shift1).max(-shift2);
    let k_max = a.min(j1m1m).min(j2m2p);
    let mut sum = Rational::zero();
    for k in k_min..=k_max {
        let denom = factorial(k)
            * factorial(a - k)
            * factorial(j1m1m - k)
            * factorial(j2m2p - k)
            * factorial(shift1 + k)
            * factorial(shift2 + k);
        let term = Rational::new(BigInt::one(), denom);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    surd_normalize(sum, triangle * Rational::from_integer(projections)).expect("non-negative radicand")
}

/// The coupled state `|S, mu>` assembled from Clebsch-Gordan coefficients,
/// in the `m` basis.
pub fn clebsch_gordan_state(space: &ProductSpace, spin: HalfInt, mu: HalfInt) -> Result<CoupledState> {
    let std_space = space.with_basis(BasisLabel::StandardM);
    let mut values = vec![SurdComplex::zero(); std_space.dim()];
    for (k1, m1) in space.j1.m_values().into_iter().enumerate() {
        for (k2, m2) in space.j2.m_values().into_iter().enumerate() {
            let c = racah(space.j1.value(), m1, space.j2.value(), m2, spin, mu);
            values[std_space.index(k1, k2)] = c.into();
        }
    }
    let vector = ExactVector::from_surd_components(&values)?;
    if vector.is_zero() {
        return Err(Error::NoSolution(format!("no state with S = {spin}, mu = {mu}")));
    }
    let parity = if space.j1 == space.j2 { Some(exchange_parity(&vector, space.d1())?) } else { None };
    Ok(CoupledState { spin, mu, vector, exchange_parity: parity, provenance: Provenance::ClebschGordan })
}

/// One amplitude compared along both routes.
#[derive(Clone, Debug)]
pub struct CgComparison {
    pub spin: HalfInt,
    pub mu: HalfInt,
    pub m1: HalfInt,
    pub m2: HalfInt,
    pub eigensolver: SurdComplex,
    pub clebsch_gordan: SurdScalar,
}

/// Every eigensolver amplitude against the closed form, with the sign that
/// relates each `S` multiplet to the Clebsch-Gordan phase convention.
#[derive(Clone, Debug)]
pub struct CgCrossCheck {
    pub rows: Vec<CgComparison>,
    pub multiplet_signs: BTreeMap<HalfInt, i8>,
    pub pass: bool,
}

pub fn cross_check_clebsch_gordan(j1: SpinJ, j2: SpinJ) -> Result<CgCrossCheck> {
    let space = ProductSpace::new(j1, j2, BasisLabel::StandardM);
    let states = coupled_eigenbasis(space)?;
    let mut rows = Vec::new();
    for state in &states {
        for (k1, m1) in j1.m_values().into_iter().enumerate() {
            for (k2, m2) in j2.m_values().into_iter().enumerate() {
                rows.push(CgComparison {
                    spin: state.spin,
                    mu: state.mu,
                    m1,
                    m2,
                    eigensolver: state.vector.component(space.index(k1, k2)),
                    clebsch_gordan: racah(j1.value(), m1, j2.value(), m2, state.spin, state.mu),
                });
            }
        }
    }
    let mut multiplet_signs = BTreeMap::new();
    let mut pass = true;
    for row in &rows {
        let cg = SurdComplex::from(row.clebsch_gordan.clone());
        let sign = match multiplet_signs.get(&row.spin) {
            Some(&s) => s,
            None if cg.is_zero() => {
                pass &= row.eigensolver.is_zero();
                continue;
            }
            None => {
                let s = if row.eigensolver == cg {
                    1
                } else if row.eigensolver == cg.neg() {
                    -1
                } else {
                    pass = false;
                    continue;
                };
                multiplet_signs.insert(row.spin, s);
                s
            }
        };
        let expected = if sign == 1 { cg } else { cg.neg() };
        pass &= row.eigensolver == expected;
    }
    Ok(CgCrossCheck { rows, multiplet_signs, pass })
}

/// One term `<S, mu | v>` of a coupled-basis expansion.
#[derive(Clone, Debug)]
pub struct Expansion {
    pub spin: HalfInt,
    pub mu: HalfInt,
    pub amplitude: SurdComplex,
    pub amplitude_f64: Complex64,
}

/// Amplitudes of `v` on every coupled state of `space` (same basis as `v`).
pub fn expand_in_coupled_basis(space: ProductSpace, v: &ExactVector) -> Result<Vec<Expansion>> {
    if v.dim() != space.dim() {
        return Err(dim_error(space.dim(), v.dim()));
    }
    coupled_eigenbasis(space)?
        .into_iter()
        .map(|s| {
            let amplitude = s.vector.inner(v)?;
            let amplitude_f64 = amplitude.to_float();
            Ok(Expansion { spin: s.spin, mu: s.mu, amplitude, amplitude_f64 })
        })
        .collect()
}

/// Floating-point total operators for any pair of spins.
#[derive(Clone, Debug)]
pub struct FloatTotalOperators {
    pub sz: FloatMatrix,
    pub s2: FloatMatrix,
}

pub fn total_operators_float(j1: SpinJ, j2: SpinJ) -> FloatTotalOperators {
    let a = standard_spin_float(j1);
    let b = standard_spin_float(j2);
    let ia = floatmat::identity(j1.dim());
    let ib = floatmat::identity(j2.dim());
    let sq = |m: &FloatMatrix| floatmat::matmul(m, m);
    let casimir_a = floatmat::add(&floatmat::add(&sq(&a.sx), &sq(&a.sy)), &sq(&a.sz));
    let casimir_b = floatmat::add(&floatmat::add(&sq(&b.sx), &sq(&b.sy)), &sq(&b.sz));
    let cross = floatmat::add(
        &floatmat::add(&floatmat::kron(&a.sx, &b.sx), &floatmat::kron(&a.sy, &b.sy)),
        &floatmat::kron(&a.sz, &b.sz),
    );
    let s2 = floatmat::add(
        &floatmat::add(&floatmat::kron(&casimir_a, &ib), &floatmat::kron(&ia, &casimir_b)),
        &floatmat::scale(&cross, 2.0),
    );
    let sz = floatmat::add(&floatmat::kron(&a.sz, &ib), &floatmat::kron(&ia, &b.sz));
    FloatTotalOperators { sz, s2 }
}

/// Largest eigen-equation residual of the Clebsch-Gordan states of
/// `j1 (x) j2` under the floating-point operators. Covers spins whose
/// single-particle matrices have no exact representation.
pub fn float_cg_residual(j1: SpinJ, j2: SpinJ) -> f64 {
    let ops = total_operators_float(j1, j2);
    let space = ProductSpace::new(j1, j2, BasisLabel::StandardM);
    let mut worst: f64 = 0.0;
    for spin in space.total_spins() {
        for k in 0..=spin.twice() {
            let mu = HalfInt::from_twice(spin.twice() - 2 * k);
            let mut v = vec![Complex64::zero(); space.dim()];
            for (k1, m1) in j1.m_values().into_iter().enumerate() {
                for (k2, m2) in j2.m_values().into_iter().enumerate() {
                    v[space.index(k1, k2)] = Complex64::new(racah(j1.value(), m1, j2.value(), m2, spin, mu).to_f64(), 0.0);
                }
            }
            let lambda = spin.to_f64() * (spin.to_f64() + 1.0);
            let s2v = floatmat::apply(&ops.s2, &v);
            let szv = floatmat::apply(&ops.sz, &v);
            for k in 0..v.len() {
                worst = worst.max((s2v[k] - v[k] * lambda).norm());
                worst = worst.max((szv[k] - v[k] * mu.to_f64()).norm());
            }
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational;

    fn h(twice: i64) -> HalfInt {
        HalfInt::from_twice(twice)
    }

    fn int(n: i64) -> HalfInt {
        HalfInt::from_int(n)
    }

    fn photon_ket(space: &ProductSpace, m1: i64, m2: i64) -> ExactVector {
        ExactVector::basis(space.dim(), space.index_of(int(m1), int(m2)).unwrap())
    }

    #[test]
    fn cartesian_s2_matches_expansion() {
        let ops = total_operators(ProductSpace::two_photon_cartesian()).unwrap();
        let c = crate::spinops::cartesian_spin1();
        let i9 = ExactMatrix::identity(9).scale_rational(&rational(4, 1));
        let cross = c.sx.kron(&c.sx).try_add(&c.sy.kron(&c.sy)).unwrap().try_add(&c.sz.kron(&c.sz)).unwrap();
        let expected = i9.try_add(&cross.scale_rational(&rational(2, 1))).unwrap();
        assert_eq!(ops.s2, expected);
    }

    #[test]
    fn stretched_product_has_mu_two() {
        let space = ProductSpace::two_photon();
        let ops = total_operators(space).unwrap();
        let v = photon_ket(&space, 1, 1);
        assert_eq!(ops.sz.apply(&v).unwrap(), v.scale_surd(&SurdScalar::from_rational(rational(2, 1))));
    }

    #[test]
    fn spin_half_pair_spectrum() {
        let ops = total_operators(ProductSpace::two_electron()).unwrap();
        let spectrum = ops.s2_spectrum().unwrap();
        assert_eq!(spectrum, vec![(rational(2, 1), 3), (rational(0, 1), 1)]);
    }

    #[test]
    fn mu_eigenspaces() {
        let space = ProductSpace::two_photon();
        let ops = total_operators(space).unwrap();
        let top = eigenspace_mu(&ops, int(2)).unwrap();
        assert_eq!(top, vec![photon_ket(&space, 1, 1)]);
        assert_eq!(eigenspace_mu(&ops, int(0)).unwrap().len(), 3);
        assert!(eigenspace_mu(&ops, int(5)).unwrap().is_empty());
    }

    #[test]
    fn coupled_basis_ordering_and_completeness() {
        let states = coupled_eigenbasis(ProductSpace::two_photon()).unwrap();
        let labels: Vec<(i64, i64)> = states.iter().map(|s| (s.spin.twice() / 2, s.mu.twice() / 2)).collect();
        assert_eq!(
            labels,
            vec![(2, 2), (2, 1), (2, 0), (2, -1), (2, -2), (1, 1), (1, 0), (1, -1), (0, 0)]
        );
    }

    #[test]
    fn spin_two_mu_zero_state() {
        let space = ProductSpace::two_photon();
        let states = coupled_eigenbasis(space).unwrap();
        let s20 = &states[2].vector;
        let expected = photon_ket(&space, 0, 0)
            .scale_gaussian(&GaussianRational::from_integer(2))
            .try_add(&photon_ket(&space, 1, -1))
            .unwrap()
            .try_add(&photon_ket(&space, -1, 1))
            .unwrap()
            .scale_surd(&SurdScalar::inv_sqrt(6));
        assert_eq!(s20, &expected);
    }

    #[test]
    fn failing_candidate_reports_residual() {
        let space = ProductSpace::two_photon();
        let ops = total_operators(space).unwrap();
        let v = photon_ket(&space, 1, -1)
            .try_add(&photon_ket(&space, -1, 1))
            .unwrap()
            .scale_surd(&SurdScalar::inv_sqrt(2));
        let verdict = verify_eigenstate(&ops, &v, int(2), int(0)).unwrap();
        assert!(!verdict.pass);
        assert!(verdict.sz_residual.is_zero());
        // residual = -4/sqrt2 (|1,-1> + |-1,1>) + 4/sqrt2 |0,0> ... has a |0,0> component
        let k00 = space.index_of(int(0), int(0)).unwrap();
        assert!(!verdict.s2_residual.component(k00).is_zero());
    }

    #[test]
    fn ansatz_ratios() {
        let space = ProductSpace::two_photon();
        let ops = total_operators(space).unwrap();
        let c00 = photon_ket(&space, 0, 0);
        let pair = photon_ket(&space, 1, -1).try_add(&photon_ket(&space, -1, 1)).unwrap();
        let two = |x: i64| SurdComplex::from_gaussian(GaussianRational::from_integer(x));

        let sol = solve_superposition_ansatz(&ops, &[c00.clone(), pair.clone()], int(2), int(0)).unwrap();
        assert_eq!(sol.ratio, vec![two(2), two(1)]);
        assert_eq!(sol.normalized[1], SurdComplex::from(SurdScalar::inv_sqrt(6)));

        let sol = solve_superposition_ansatz(&ops, &[c00.clone(), pair.clone()], int(0), int(0)).unwrap();
        assert_eq!(sol.ratio, vec![two(1), two(-1)]);
        assert_eq!(sol.normalized[0], SurdComplex::from(SurdScalar::inv_sqrt(3)));

        let stretched = photon_ket(&space, 1, 1);
        let sol = solve_superposition_ansatz(&ops, &[stretched.clone()], int(2), int(2)).unwrap();
        assert_eq!(sol.ratio, vec![two(1)]);
        assert_eq!(sol.state.vector, stretched);

        assert!(matches!(
            solve_superposition_ansatz(&ops, &[c00.clone(), pair.clone()], int(1), int(0)),
            Err(Error::NoSolution(_))
        ));
        assert!(matches!(
            solve_superposition_ansatz(&ops, &[stretched], int(2), int(0)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn clebsch_gordan_values() {
        let cg = |j1, m1, j2, m2, j, m| clebsch_gordan(h(j1), h(m1), h(j2), h(m2), h(j), h(m)).value;
        assert_eq!(cg(2, 0, 2, 0, 4, 0), surd_normalize(rational(1, 3), rational(6, 1)).unwrap());
        assert_eq!(cg(2, 2, 2, -2, 2, 0), SurdScalar::inv_sqrt(2));
        assert_eq!(cg(1, 1, 1, -1, 2, 0), SurdScalar::inv_sqrt(2));
        assert_eq!(cg(1, 1, 1, -1, 0, 0), SurdScalar::inv_sqrt(2));
        assert_eq!(cg(1, -1, 1, 1, 0, 0), -SurdScalar::inv_sqrt(2));
        assert_eq!(cg(2, 2, 2, 2, 4, 4), SurdScalar::one());
        assert!(cg(2, 2, 2, 2, 2, 4).is_zero());
        assert!(cg(2, 0, 2, 0, 2, 0).is_zero());
        assert!(cg(2, 2, 2, 0, 4, 0).is_zero());
        // |m| > j and non-integral j - m
        assert!(cg(2, 4, 2, -2, 4, 2).is_zero());
        assert!(cg(2, 1, 2, -1, 4, 0).is_zero());
    }

    #[test]
    fn dual_route_spin_one_and_half() {
        for j in [SpinJ::HALF, SpinJ::ONE] {
            let check = cross_check_clebsch_gordan(j, j).unwrap();
            assert!(check.pass, "mismatch for j = {j}");
        }
        assert!(matches!(
            cross_check_clebsch_gordan(SpinJ::ONE, SpinJ::HALF),
            Err(Error::UnsupportedSpin(_))
        ));
    }

    #[test]
    fn expansion_of_product_state() {
        let space = ProductSpace::two_photon();
        let v = photon_ket(&space, 1, -1);
        let exp = expand_in_coupled_basis(space, &v).unwrap();
        let total: Rational = exp.iter().map(|e| e.amplitude.norm_sqr()).sum();
        assert_eq!(total, rational(1, 1));
        let find = |s: i64| exp.iter().find(|e| e.spin == int(s) && e.mu == int(0)).unwrap().amplitude.norm_sqr();
        assert_eq!((find(2), find(1), find(0)), (rational(1, 6), rational(1, 2), rational(1, 3)));
        assert!(expand_in_coupled_basis(space, &ExactVector::zero(4)).is_err());
    }

    #[test]
    fn float_path_covers_larger_spins() {
        for (a, b) in [(3, 2), (3, 3), (4, 1), (5, 4)] {
            let r = float_cg_residual(SpinJ::from_twice(a), SpinJ::from_twice(b));
            assert!(r < 1e-12, "residual {r} for 2j = ({a}, {b})");
        }
    }
}
