//! Single-particle spin operators.
//!
//! Two constructions are provided: the Cartesian (vector) representation of
//! spin 1, where `(s_k)_{ab} = -i epsilon_{kab}`, and the standard ladder
//! construction in the `|j, m>` basis ordered by descending `m`. Phases follow
//! the Condon-Shortley convention throughout.

use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{rational, GaussianRational, HalfInt, Rational, SurdComplex, SurdScalar};
use crate::linalg::{ExactMatrix, ExactVector};

/// A spin quantum number `j = twice_j / 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpinJ {
    twice_j: u32,
}

impl SpinJ {
    pub const HALF: SpinJ = SpinJ { twice_j: 1 };
    pub const ONE: SpinJ = SpinJ { twice_j: 2 };

    pub const fn from_twice(twice_j: u32) -> Self {
        Self { twice_j }
    }

    pub fn from_halfint(j: HalfInt) -> Result<Self> {
        u32::try_from(j.twice())
            .map(Self::from_twice)
            .map_err(|_| Error::Domain(format!("spin {j} must be non-negative")))
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::from_halfint(HalfInt::parse(text)?)
    }

    pub fn twice(self) -> u32 {
        self.twice_j
    }

    pub fn value(self) -> HalfInt {
        HalfInt::from_twice(self.twice_j.into())
    }

    /// Dimension `2j + 1` of the carrier space.
    pub fn dim(self) -> usize {
        self.twice_j as usize + 1
    }

    /// `m = j, j-1, ..., -j`, the standard basis order.
    pub fn m_values(self) -> Vec<HalfInt> {
        let tj = i64::from(self.twice_j);
        (0..=tj).map(|k| HalfInt::from_twice(tj - 2 * k)).collect()
    }

    /// Position of `m` in the descending basis, if it is a valid projection.
    pub fn index_of(self, m: HalfInt) -> Option<usize> {
        let tj = i64::from(self.twice_j);
        let offset = tj - m.twice();
        (m.abs().twice() <= tj && offset % 2 == 0).then_some((offset / 2) as usize)
    }
}

impl fmt::Display for SpinJ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

impl Serialize for SpinJ {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum BasisLabel {
    /// The (x, y, z) vector representation; spin 1 only.
    #[serde(rename = "cartesian")]
    Cartesian,
    /// `|j, m>` ordered by descending `m`.
    #[serde(rename = "m")]
    StandardM,
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BasisLabel::Cartesian => "cartesian",
            BasisLabel::StandardM => "m",
        })
    }
}

/// The three spin components of one particle in one basis.
#[derive(Clone, Debug)]
pub struct SpinOperatorSet {
    pub j: SpinJ,
    pub basis: BasisLabel,
    pub sx: ExactMatrix,
    pub sy: ExactMatrix,
    pub sz: ExactMatrix,
}

/// Outcome of checking the defining identities of a spin operator set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraCheck {
    pub hermitian: bool,
    pub commutators: bool,
    pub casimir: bool,
}

impl AlgebraCheck {
    pub fn all(&self) -> bool {
        self.hermitian && self.commutators && self.casimir
    }
}

impl SpinOperatorSet {
    pub fn dim(&self) -> usize {
        self.j.dim()
    }

    /// `sx^2 + sy^2 + sz^2`.
    pub fn casimir(&self) -> Result<ExactMatrix> {
        self.sx
            .matmul(&self.sx)?
            .try_add(&self.sy.matmul(&self.sy)?)?
            .try_add(&self.sz.matmul(&self.sz)?)
    }

    fn combine(&self, sign: i64) -> Result<ExactMatrix> {
        let i = GaussianRational::i().scale(&Rational::from_integer(sign.into()));
        ExactMatrix::linear_combination(
            &[SurdComplex::one(), SurdComplex::from_gaussian(i)],
            &[self.sx.clone(), self.sy.clone()],
        )
    }

    /// `s+ = sx + i sy`.
    pub fn raising(&self) -> Result<ExactMatrix> {
        self.combine(1)
    }

    /// `s- = sx - i sy`.
    pub fn lowering(&self) -> Result<ExactMatrix> {
        self.combine(-1)
    }

    /// Checks Hermiticity, `[sx, sy] = i sz` (and cyclic), and
    /// `sx^2 + sy^2 + sz^2 = j(j+1)`, all exactly.
    pub fn check_algebra(&self) -> Result<AlgebraCheck> {
        let i = GaussianRational::i();
        let hermitian = [&self.sx, &self.sy, &self.sz].iter().all(|m| m.is_hermitian());
        let commutators = self.sx.commutator(&self.sy)? == self.sz.scale_gaussian(&i)
            && self.sy.commutator(&self.sz)? == self.sx.scale_gaussian(&i)
            && self.sz.commutator(&self.sx)? == self.sy.scale_gaussian(&i);
        let expected = ExactMatrix::identity(self.dim()).scale_rational(&self.j.value().casimir());
        let casimir = self.casimir()? == expected;
        Ok(AlgebraCheck { hermitian, commutators, casimir })
    }
}

fn gaussian_rows(rows: [[(i64, i64); 3]; 3]) -> ExactMatrix {
    let rows = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&(re, im)| GaussianRational::new(rational(re, 1), rational(im, 1)))
                .collect()
        })
        .collect();
    ExactMatrix::from_rows(rows).expect("3x3")
}

/// The spin-1 matrices in the Cartesian basis, ordered (x, y, z).
pub fn cartesian_spin1() -> SpinOperatorSet {
    let o = (0, 0);
    let pi = (0, 1);
    let mi = (0, -1);
    SpinOperatorSet {
        j: SpinJ::ONE,
        basis: BasisLabel::Cartesian,
        sx: gaussian_rows([[o, o, o], [o, o, mi], [o, pi, o]]),
        sy: gaussian_rows([[o, o, pi], [o, o, o], [mi, o, o]]),
        sz: gaussian_rows([[o, mi, o], [pi, o, o], [o, o, o]]),
    }
}

/// Ladder matrix element `sqrt(j(j+1) - m(m+1))` connecting `m` to `m+1`.
fn ladder_element(j: HalfInt, m: HalfInt) -> SurdScalar {
    let value = j.casimir() - m.casimir();
    SurdScalar::sqrt(value).expect("|m| <= j keeps the radicand non-negative")
}

/// Spin matrices in the `|j, m>` basis (m descending).
///
/// Fails with `UnsupportedSpin` when the ladder elements do not share a single
/// radicand, which first happens at `j = 3/2`.
pub fn standard_spin(j: SpinJ) -> Result<SpinOperatorSet> {
    let n = j.dim();
    let ms = j.m_values();
    let jv = j.value();
    let half = SurdScalar::from_rational(Rational::new(1.into(), 2.into()));
    let i_half = GaussianRational::imag(Rational::new(1.into(), 2.into()));

    let mut sx = vec![SurdComplex::zero(); n * n];
    let mut sy = vec![SurdComplex::zero(); n * n];
    // <m+1| s+ |m> sits at (row k-1, col k); s- is its transpose.
    for k in 1..n {
        let up = ladder_element(jv, ms[k]);
        let x = SurdComplex::from(up.mul(&half));
        sx[(k - 1) * n + k] = x.clone();
        sx[k * n + (k - 1)] = x;
        // sy = (s+ - s-) / (2i)
        let y = SurdComplex::from(up).mul_gaussian(&i_half);
        sy[(k - 1) * n + k] = y.neg();
        sy[k * n + (k - 1)] = y;
    }
    let unsupported = |_| Error::UnsupportedSpin(format!("spin {j} (exact spin matrices exist for j = 0, 1/2, 1)"));
    let sx = ExactMatrix::from_surd_entries(n, n, &sx).map_err(unsupported)?;
    let sy = ExactMatrix::from_surd_entries(n, n, &sy).map_err(unsupported)?;
    let sz = ExactMatrix::diagonal(ms.iter().map(|m| m.to_rational().into()).collect());
    Ok(SpinOperatorSet { j, basis: BasisLabel::StandardM, sx, sy, sz })
}

/// Spin operators for `j` in the requested basis.
pub fn spin_operators(j: SpinJ, basis: BasisLabel) -> Result<SpinOperatorSet> {
    match basis {
        BasisLabel::StandardM => standard_spin(j),
        BasisLabel::Cartesian if j == SpinJ::ONE => Ok(cartesian_spin1()),
        BasisLabel::Cartesian => Err(Error::UnsupportedBasis {
            basis: basis.to_string(),
            spin: j.to_string(),
        }),
    }
}

/// Floating-point spin matrices for any `j`; the oracle path for spins whose
/// exact matrices are unavailable.
#[derive(Clone, Debug)]
pub struct FloatSpinOperators {
    pub j: SpinJ,
    pub sx: Vec<Vec<Complex64>>,
    pub sy: Vec<Vec<Complex64>>,
    pub sz: Vec<Vec<Complex64>>,
}

pub fn standard_spin_float(j: SpinJ) -> FloatSpinOperators {
    let n = j.dim();
    let ms = j.m_values();
    let jf = j.value().to_f64();
    let zero = vec![vec![Complex64::zero(); n]; n];
    let (mut sx, mut sy, mut sz) = (zero.clone(), zero.clone(), zero);
    for k in 0..n {
        sz[k][k] = Complex64::new(ms[k].to_f64(), 0.0);
    }
    for k in 1..n {
        let m = ms[k].to_f64();
        let up = (jf * (jf + 1.0) - m * (m + 1.0)).sqrt();
        sx[k - 1][k] = Complex64::new(up / 2.0, 0.0);
        sx[k][k - 1] = Complex64::new(up / 2.0, 0.0);
        sy[k - 1][k] = Complex64::new(0.0, -up / 2.0);
        sy[k][k - 1] = Complex64::new(0.0, up / 2.0);
    }
    FloatSpinOperators { j, sx, sy, sz }
}

/// The Cartesian spin-1 eigenvectors `(chi_1, chi_0, chi_-1)`:
/// `chi_1 = -(1/sqrt 2)(1, i, 0)`, `chi_0 = (0, 0, 1)`,
/// `chi_-1 = (1/sqrt 2)(1, -i, 0)`.
pub fn cartesian_eigenbasis() -> [ExactVector; 3] {
    let one = GaussianRational::one();
    let zero = GaussianRational::zero();
    let i = GaussianRational::i();
    let inv_root2 = SurdScalar::inv_sqrt(2);
    [
        ExactVector::new(vec![one.clone(), i.clone(), zero.clone()], -&inv_root2),
        ExactVector::new(vec![zero.clone(), zero.clone(), one.clone()], SurdScalar::one()),
        ExactVector::new(vec![one, -i, zero], inv_root2),
    ]
}

/// `chi_m` for spin 1 in the Cartesian basis.
pub fn cartesian_chi(m: i64) -> ExactVector {
    let [plus, zero, minus] = cartesian_eigenbasis();
    match m {
        1 => plus,
        0 => zero,
        -1 => minus,
        _ => panic!("spin-1 projection {m} out of range"),
    }
}

/// A unitary stored column by column, each column with its own surd
/// prefactor. The Cartesian-to-standard change of basis for spin 1 mixes
/// `1/sqrt 2` and `1` across columns, so it cannot share one prefactor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisChange {
    columns: Vec<ExactVector>,
}

impl BasisChange {
    pub fn identity(n: usize) -> Self {
        Self { columns: (0..n).map(|k| ExactVector::basis(n, k)).collect() }
    }

    pub fn from_columns(columns: Vec<ExactVector>) -> Self {
        Self { columns }
    }

    pub fn columns(&self) -> &[ExactVector] {
        &self.columns
    }

    pub fn dim(&self) -> usize {
        self.columns.len()
    }

    /// `U v = sum_k v_k u_k`.
    pub fn apply(&self, v: &ExactVector) -> Result<ExactVector> {
        if v.dim() != self.dim() {
            return Err(crate::linalg::dim_error(self.dim(), v.dim()));
        }
        let coeffs: Vec<SurdComplex> = (0..v.dim()).map(|k| v.component(k)).collect();
        ExactVector::linear_combination(&coeffs, &self.columns)
    }

    /// `U^dagger v`, component `k` being `<u_k|v>`.
    pub fn apply_adjoint(&self, v: &ExactVector) -> Result<ExactVector> {
        let values = self.columns.iter().map(|u| u.inner(v)).collect::<Result<Vec<_>>>()?;
        ExactVector::from_surd_components(&values)
    }

    /// `U^dagger A U`, exact; fails if the result needs more than one radicand.
    pub fn conjugate(&self, a: &ExactMatrix) -> Result<ExactMatrix> {
        let images = self.columns.iter().map(|u| a.apply(u)).collect::<Result<Vec<_>>>()?;
        let n = self.dim();
        let mut values = Vec::with_capacity(n * n);
        for uk in &self.columns {
            for img in &images {
                values.push(uk.inner(img)?);
            }
        }
        ExactMatrix::from_surd_entries(n, n, &values)
    }

    /// `U^dagger U` as an exact matrix.
    pub fn gram(&self) -> Result<ExactMatrix> {
        let n = self.dim();
        let mut values = Vec::with_capacity(n * n);
        for a in &self.columns {
            for b in &self.columns {
                values.push(a.inner(b)?);
            }
        }
        ExactMatrix::from_surd_entries(n, n, &values)
    }

    pub fn is_unitary(&self) -> bool {
        self.gram().is_ok_and(|g| g == ExactMatrix::identity(self.dim()))
    }

    /// Column-wise representation of `U^dagger`.
    pub fn adjoint(&self) -> Result<Self> {
        let n = self.dim();
        let columns = (0..n)
            .map(|c| {
                let values: Vec<SurdComplex> = self.columns.iter().map(|u| u.component(c).conj()).collect();
                ExactVector::from_surd_components(&values)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { columns })
    }

    /// `self * other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        let columns = other.columns.iter().map(|c| self.apply(c)).collect::<Result<Vec<_>>>()?;
        Ok(Self { columns })
    }

    /// The change as a single exact matrix, when its entries share a radicand.
    pub fn to_matrix(&self) -> Result<ExactMatrix> {
        let n = self.dim();
        let values: Vec<SurdComplex> = (0..n)
            .flat_map(|r| self.columns.iter().map(move |c| c.component(r)))
            .collect();
        ExactMatrix::from_surd_entries(n, n, &values)
    }
}

/// Columns `|j, m>` (m descending) expressed in the set's own basis:
/// highest weight from the kernel of `sz - j`, with canonical phase, and each
/// further column generated by the lowering operator.
fn standard_frame(set: &SpinOperatorSet) -> Result<BasisChange> {
    let n = set.dim();
    let jv = set.j.value();
    let shift = ExactMatrix::identity(n).scale_rational(&jv.to_rational());
    let kernel = set.sz.try_sub(&shift)?.nullspace();
    let [top] = <[ExactVector; 1]>::try_from(kernel).map_err(|k| {
        Error::Precondition(format!("highest-weight space has dimension {}", k.len()))
    })?;
    let lowering = set.lowering()?;
    let mut columns = vec![top.normalized()?.with_canonical_phase()];
    for m in set.j.m_values().into_iter().skip(1) {
        let prev = columns.last().expect("nonempty");
        // s- |m+1> = sqrt(j(j+1) - m(m+1)) |m>
        let norm = ladder_element(jv, m).recip()?;
        columns.push(lowering.apply(prev)?.scale_surd(&norm));
    }
    Ok(BasisChange { columns })
}

/// The unitary `U` with `U^dagger s_from U = s_to` for all three components.
pub fn basis_change(from: &SpinOperatorSet, to: &SpinOperatorSet) -> Result<BasisChange> {
    if from.j != to.j {
        return Err(crate::linalg::dim_error(format!("spin {}", from.j), format!("spin {}", to.j)));
    }
    if from.basis == to.basis {
        return Ok(BasisChange::identity(from.dim()));
    }
    let w_from = standard_frame(from)?;
    let w_to = standard_frame(to)?;
    w_from.compose(&w_to.adjoint()?)
}

/// Applies an operator to a state exactly.
pub fn apply(op: &ExactMatrix, v: &ExactVector) -> Result<ExactVector> {
    op.apply(v)
}

/// One evaluated single-photon identity `s_k chi_m = expected`.
#[derive(Clone, Debug)]
pub struct ActionCheck {
    pub name: String,
    pub actual: ExactVector,
    pub expected: ExactVector,
    pub pass: bool,
}

/// Evaluates the nine identities `s_{x,y,z} chi_{0,+1,-1}` in the Cartesian
/// basis against their closed forms in terms of the `chi` vectors.
pub fn verify_single_photon_actions() -> Result<Vec<ActionCheck>> {
    let set = cartesian_spin1();
    let [c1, c0, cm1] = cartesian_eigenbasis();
    let r = SurdScalar::inv_sqrt(2);
    let i_r = SurdComplex::from_parts(&GaussianRational::i(), &r);
    let r = SurdComplex::from(r);

    let cases: Vec<(&str, &ExactMatrix, &ExactVector, ExactVector)> = vec![
        ("s_x chi(0) = 1/sqrt(2) (chi(1) + chi(-1))", &set.sx, &c0, c1.try_add(&cm1)?.scale(&r)),
        ("s_x chi(1) = 1/sqrt(2) chi(0)", &set.sx, &c1, c0.scale(&r)),
        ("s_x chi(-1) = 1/sqrt(2) chi(0)", &set.sx, &cm1, c0.scale(&r)),
        ("s_y chi(0) = -i/sqrt(2) (chi(1) - chi(-1))", &set.sy, &c0, c1.try_sub(&cm1)?.scale(&i_r.neg())),
        ("s_y chi(1) = i/sqrt(2) chi(0)", &set.sy, &c1, c0.scale(&i_r)),
        ("s_y chi(-1) = -i/sqrt(2) chi(0)", &set.sy, &cm1, c0.scale(&i_r.neg())),
        ("s_z chi(0) = 0 chi(0)", &set.sz, &c0, ExactVector::zero(3)),
        ("s_z chi(1) = 1 chi(1)", &set.sz, &c1, c1.clone()),
        ("s_z chi(-1) = -1 chi(-1)", &set.sz, &cm1, cm1.neg()),
    ];
    cases
        .into_iter()
        .map(|(name, op, ket, expected)| {
            let actual = op.apply(ket)?;
            let pass = actual == expected;
            Ok(ActionCheck { name: name.to_string(), actual, expected, pass })
        })
        .collect()
}

/// Eigen-equation checks for one Cartesian eigenvector:
/// `S^2 chi = 2 chi` and `s_z chi = mu chi`.
pub fn check_cartesian_eigenvector(mu: i64) -> Result<(bool, bool)> {
    let set = cartesian_spin1();
    let chi = cartesian_chi(mu);
    let s2 = set.casimir()?.apply(&chi)? == chi.scale_surd(&SurdScalar::from_rational(rational(2, 1)));
    let sz = set.sz.apply(&chi)? == chi.scale_surd(&SurdScalar::from_rational(rational(mu, 1)));
    Ok((s2, sz))
}
