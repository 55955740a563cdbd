use proptest::prelude::*;
use spincouple::coupling::{
    clebsch_gordan, coupled_eigenbasis, float_cg_residual, total_operators, ProductSpace,
};
use spincouple::exactnum::{HalfInt, SurdComplex, SurdSum};
use spincouple::spinops::{spin_operators, BasisLabel, SpinJ};

const EXACT_SPINS: [SpinJ; 3] = [SpinJ::from_twice(0), SpinJ::HALF, SpinJ::ONE];

fn halves(j: HalfInt) -> Vec<HalfInt> {
    (0..=j.twice()).map(|k| HalfInt::from_twice(j.twice() - 2 * k)).collect()
}

#[test]
fn single_particle_algebra() {
    for j in [SpinJ::HALF, SpinJ::ONE] {
        let set = spin_operators(j, BasisLabel::StandardM).unwrap();
        let check = set.check_algebra().unwrap();
        assert!(check.all(), "j = {}: {check:?}", j.value());
    }
    let cart = spin_operators(SpinJ::ONE, BasisLabel::Cartesian).unwrap();
    assert!(cart.check_algebra().unwrap().all());
    assert!(spin_operators(SpinJ::HALF, BasisLabel::Cartesian).is_err());
}

#[test]
fn ladder_operators_shift_m() {
    for j in [SpinJ::HALF, SpinJ::ONE] {
        let set = spin_operators(j, BasisLabel::StandardM).unwrap();
        let up = set.raising().unwrap();
        let down = set.lowering().unwrap();
        // [Sz, S+] = S+ and [S+, S-] = 2 Sz
        assert_eq!(set.sz.commutator(&up).unwrap(), up);
        assert_eq!(set.sz.commutator(&down).unwrap(), down.neg());
        let two_sz = set.sz.scale_rational(&spincouple::exactnum::rational(2, 1));
        assert_eq!(up.commutator(&down).unwrap(), two_sz);
        assert_eq!(up.adjoint(), down);
    }
}

#[test]
fn total_operators_commute_and_have_casimir_spectrum() {
    for &j1 in &EXACT_SPINS {
        for &j2 in &EXACT_SPINS {
            let space = ProductSpace::new(j1, j2, BasisLabel::StandardM);
            let ops = match total_operators(space) {
                Ok(ops) => ops,
                Err(e) => {
                    assert!(j1 != j2 && j1.twice() + j2.twice() == 3, "{e}");
                    continue;
                }
            };
            assert!(ops.s2.commutator(&ops.sz).unwrap().is_zero());
            let spectrum = ops.s2_spectrum().unwrap();
            let total: usize = spectrum.iter().map(|(_, k)| k).sum();
            assert_eq!(total, space.dim());
            for ((value, mult), s) in spectrum.iter().zip(space.total_spins()) {
                assert_eq!(value, &s.casimir());
                assert_eq!(*mult as i64, s.twice() + 1);
            }
        }
    }
}

#[test]
fn cartesian_total_operators_match_m_basis() {
    let cart = ProductSpace::two_photon_cartesian();
    let u = cart.from_standard().unwrap();
    assert!(u.is_unitary());
    let m_states = coupled_eigenbasis(ProductSpace::two_photon()).unwrap();
    let c_states = coupled_eigenbasis(cart).unwrap();
    for (a, b) in m_states.iter().zip(&c_states) {
        assert_eq!(u.apply(&a.vector).unwrap(), b.vector);
    }
}

#[test]
fn eigenbasis_is_orthonormal() {
    for space in [ProductSpace::two_photon(), ProductSpace::two_electron(), ProductSpace::two_photon_cartesian()] {
        let states = coupled_eigenbasis(space).unwrap();
        assert_eq!(states.len(), space.dim());
        for (i, a) in states.iter().enumerate() {
            for (k, b) in states.iter().enumerate() {
                let ip = a.vector.inner(&b.vector).unwrap();
                if i == k {
                    assert_eq!(ip, SurdComplex::one());
                } else {
                    assert!(ip.is_zero());
                }
            }
        }
    }
}

/// Exact `sum_{m1,m2} <m1 m2|J M><m1 m2|J' M'>`.
fn overlap(j1: HalfInt, j2: HalfInt, (j, m): (HalfInt, HalfInt), (jp, mp): (HalfInt, HalfInt)) -> SurdSum {
    let mut acc = SurdSum::new();
    for m1 in halves(j1) {
        for m2 in halves(j2) {
            let a = clebsch_gordan(j1, m1, j2, m2, j, m).value;
            let b = clebsch_gordan(j1, m1, j2, m2, jp, mp).value;
            acc.add(&SurdComplex::from(a.mul(&b)));
        }
    }
    acc
}

#[test]
fn clebsch_gordan_orthonormality_exact() {
    for t1 in 0..=4 {
        for t2 in 0..=4 {
            let (j1, j2) = (HalfInt::from_twice(t1), HalfInt::from_twice(t2));
            let labels: Vec<(HalfInt, HalfInt)> = (((t1 - t2).abs())..=(t1 + t2))
                .step_by(2)
                .map(HalfInt::from_twice)
                .flat_map(|j| halves(j).into_iter().map(move |m| (j, m)))
                .collect();
            assert_eq!(labels.len() as i64, (t1 + 1) * (t2 + 1));
            for &a in &labels {
                for &b in &labels {
                    let s = overlap(j1, j2, a, b);
                    if a == b {
                        assert_eq!(s.into_single().unwrap(), SurdComplex::one(), "{a:?}");
                    } else {
                        assert!(s.is_zero(), "{a:?} vs {b:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn clebsch_gordan_completeness_exact() {
    let (j1, j2) = (HalfInt::from_twice(3), HalfInt::from_twice(2));
    for m1 in halves(j1) {
        for m2 in halves(j2) {
            for m1p in halves(j1) {
                for m2p in halves(j2) {
                    let mut acc = SurdSum::new();
                    for t in (1..=5).step_by(2) {
                        let j = HalfInt::from_twice(t);
                        for m in halves(j) {
                            let a = clebsch_gordan(j1, m1, j2, m2, j, m).value;
                            let b = clebsch_gordan(j1, m1p, j2, m2p, j, m).value;
                            acc.add(&SurdComplex::from(a.mul(&b)));
                        }
                    }
                    if (m1, m2) == (m1p, m2p) {
                        assert_eq!(acc.into_single().unwrap(), SurdComplex::one());
                    } else {
                        assert!(acc.is_zero());
                    }
                }
            }
        }
    }
}

#[test]
fn clebsch_gordan_invalid_arguments_vanish() {
    let h = HalfInt::from_twice;
    assert!(clebsch_gordan(h(2), h(2), h(2), h(2), h(2), h(4)).value.is_zero());
    assert!(clebsch_gordan(h(2), h(2), h(2), h(0), h(6), h(2)).value.is_zero());
    assert!(clebsch_gordan(h(2), h(4), h(2), h(-2), h(2), h(2)).value.is_zero());
    assert!(clebsch_gordan(h(1), h(1), h(2), h(0), h(2), h(1)).value.is_zero());
}

#[test]
fn float_path_covers_larger_spins() {
    for (a, b) in [(3, 2), (3, 3), (4, 1), (5, 4), (4, 4), (6, 2)] {
        let r = float_cg_residual(SpinJ::from_twice(a), SpinJ::from_twice(b));
        assert!(r < 1e-12, "2j = ({a}, {b}): residual {r:e}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cg_symmetry_under_exchange(t1 in 0i64..=4, t2 in 0i64..=4, k1 in 0i64..=4, k2 in 0i64..=4, tj in 0i64..=8) {
        let (j1, j2, j) = (HalfInt::from_twice(t1), HalfInt::from_twice(t2), HalfInt::from_twice(tj));
        let m1 = HalfInt::from_twice(t1 - 2 * (k1 % (t1 + 1)));
        let m2 = HalfInt::from_twice(t2 - 2 * (k2 % (t2 + 1)));
        let m = m1 + m2;
        let a = clebsch_gordan(j1, m1, j2, m2, j, m).value;
        let b = clebsch_gordan(j2, m2, j1, m1, j, m).value;
        // <j1 m1 j2 m2|J M> = (-1)^(j1+j2-J) <j2 m2 j1 m1|J M>
        let phase = (t1 + t2 - tj) / 2;
        if a.is_zero() {
            prop_assert!(b.is_zero());
        } else if phase % 2 == 0 {
            prop_assert_eq!(a, b);
        } else {
            prop_assert_eq!(a, -b);
        }
    }

    #[test]
    fn random_hermitian_combination_commutes(c in proptest::collection::vec(-5i64..=5, 3)) {
        let set = spin_operators(SpinJ::ONE, BasisLabel::Cartesian).unwrap();
        let r = |k: usize| spincouple::exactnum::rational(c[k], 1);
        let n = set.sx.scale_rational(&r(0)).try_add(&set.sy.scale_rational(&r(1))).unwrap()
            .try_add(&set.sz.scale_rational(&r(2))).unwrap();
        let casimir = set.casimir().unwrap();
        prop_assert!(n.commutator(&casimir).unwrap().is_zero());
        prop_assert!(n.is_hermitian());
    }
}
