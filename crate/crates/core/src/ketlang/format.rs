use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::eval::EvalContext;
use crate::exactnum::{GaussianRational, Rational};
use crate::linalg::ExactVector;
use crate::spinops::BasisLabel;

fn is_gaussian_integer(g: &GaussianRational) -> bool {
    g.re.is_integer() && g.im.is_integer()
}

/// Coefficient text (with a trailing space when nonempty) and whether the
/// term is written with a minus sign.
fn coefficient(g: &GaussianRational) -> (String, bool) {
    let magnitude = |r: &Rational| if r.abs().is_one() { String::new() } else { format!("{} ", r.abs()) };
    if g.im.is_zero() {
        (magnitude(&g.re), g.re.is_negative())
    } else if g.re.is_zero() {
        (format!("{}i ", magnitude(&g.im)), g.im.is_negative())
    } else {
        (format!("({g}) "), false)
    }
}

fn terms(coeffs: &[GaussianRational], ctx: &EvalContext) -> String {
    let m1s = ctx.j1.m_values();
    let m2s = ctx.j2.m_values();
    let d2 = m2s.len();
    let mut out = String::new();
    for (k, g) in coeffs.iter().enumerate().filter(|(_, g)| !g.is_zero()) {
        let (text, negative) = coefficient(g);
        match (out.is_empty(), negative) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        out.push_str(&format!("{text}chi({}) x chi({})", m1s[k / d2], m2s[k % d2]));
    }
    out
}

/// Renders a two-particle vector in ketlang syntax.
///
/// Terms follow the `m` basis order (`m1` descending, then `m2`
/// descending); only a negative leading coefficient carries a sign. A shared
/// radical is factored out front as `1/sqrt(d)` when that clears every
/// denominator, otherwise as `sqrt(d)`. Cartesian vectors are first
/// converted to `m` coordinates; one whose `m` coordinates need two
/// radicands has no ketlang form and falls back to the plain vector display.
/// The zero vector renders as `0`.
pub fn format(v: &ExactVector, ctx: &EvalContext) -> String {
    let space = ctx.space();
    if v.dim() != space.dim() {
        return v.to_string();
    }
    let v = if ctx.basis == BasisLabel::StandardM {
        v.clone()
    } else {
        match space.from_standard().and_then(|u| u.apply_adjoint(v)) {
            Ok(m) => m,
            Err(_) => return v.to_string(),
        }
    };
    if v.is_zero() {
        return "0".into();
    }
    let p = v.prefactor();
    let folded: Vec<GaussianRational> = v.components().iter().map(|g| g.scale(p.coeff())).collect();
    let radicand: &BigInt = p.radicand();
    if radicand.is_one() {
        return terms(&folded, ctx);
    }
    let d = Rational::from_integer(radicand.clone());
    let inverse: Vec<GaussianRational> = folded.iter().map(|g| g.scale(&d)).collect();
    if inverse.iter().all(is_gaussian_integer) && !folded.iter().all(is_gaussian_integer) {
        format!("1/sqrt({radicand}) * ({})", terms(&inverse, ctx))
    } else {
        format!("sqrt({radicand}) * ({})", terms(&folded, ctx))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ketlang::evaluate_str;

    fn round_trip(text: &str, ctx: &EvalContext) -> String {
        let v = evaluate_str(text, ctx).unwrap();
        let out = format(&v, ctx);
        assert_eq!(evaluate_str(&out, ctx).unwrap(), v, "{text} -> {out}");
        out
    }

    #[test]
    fn spin_two_mu_zero() {
        let ctx = EvalContext::two_photon();
        let out = round_trip("2/sqrt(6) * chi(0) x chi(0) + 1/sqrt(6) * (chi(1) x chi(-1) + chi(-1) x chi(1))", &ctx);
        assert_eq!(out, "1/sqrt(6) * (chi(1) x chi(-1) + 2 chi(0) x chi(0) + chi(-1) x chi(1))");
    }

    #[test]
    fn simple_forms() {
        let ctx = EvalContext::two_photon();
        assert_eq!(round_trip("chi(1) x chi(1)", &ctx), "chi(1) x chi(1)");
        assert_eq!(round_trip("0 * chi(1) x chi(1)", &ctx), "0");
        assert_eq!(round_trip("-chi(0) x chi(1)", &ctx), "-chi(0) x chi(1)");
        assert_eq!(round_trip("sqrt(2) chi(0) x chi(1)", &ctx), "sqrt(2) * (chi(0) x chi(1))");
        assert_eq!(
            round_trip("(1/2 - i/3) chi(0) x chi(1) - i chi(1) x chi(0) + 2/3 i chi(-1) x chi(-1)", &ctx),
            "-i chi(1) x chi(0) + (1/2 - 1/3 i) chi(0) x chi(1) + 2/3 i chi(-1) x chi(-1)"
        );
        assert_eq!(round_trip("-1/2 chi(1) x chi(1)", &ctx), "-1/2 chi(1) x chi(1)");
    }

    #[test]
    fn electrons_and_cartesian() {
        let ctx = EvalContext::two_electron();
        assert_eq!(
            round_trip("1/sqrt(2) * (chi(1/2) x chi(-1/2) - chi(-1/2) x chi(1/2))", &ctx),
            "1/sqrt(2) * (chi(1/2) x chi(-1/2) - chi(-1/2) x chi(1/2))"
        );
        let cart = EvalContext::new(ctx.j1, ctx.j2, BasisLabel::Cartesian);
        assert!(evaluate_str("chi(1/2) x chi(1/2)", &cart).is_err());
        let photon = EvalContext::new(crate::spinops::SpinJ::ONE, crate::spinops::SpinJ::ONE, BasisLabel::Cartesian);
        assert_eq!(round_trip("1/sqrt(2) * (chi(1) x chi(-1) + chi(-1) x chi(1))", &photon),
            "1/sqrt(2) * (chi(1) x chi(-1) + chi(-1) x chi(1))");
    }
}
