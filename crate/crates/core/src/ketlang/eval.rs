use std::collections::BTreeMap;

use super::parser::KetExpr;
use crate::coupling::ProductSpace;
use crate::error::{Error, Result};
use crate::exactnum::{GaussianRational, HalfInt, SurdComplex, SurdScalar, SurdSum};
use crate::linalg::ExactVector;
use crate::spinops::{BasisLabel, SpinJ};

/// The two-particle space an expression is evaluated in. `chi(m)` denotes
/// the standard `|j, m>` vector; in the Cartesian basis it is expressed in
/// (x, y, z) coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalContext {
    pub j1: SpinJ,
    pub j2: SpinJ,
    pub basis: BasisLabel,
}

impl EvalContext {
    pub fn new(j1: SpinJ, j2: SpinJ, basis: BasisLabel) -> Self {
        Self { j1, j2, basis }
    }

    pub fn two_photon() -> Self {
        Self::new(SpinJ::ONE, SpinJ::ONE, BasisLabel::StandardM)
    }

    pub fn two_electron() -> Self {
        Self::new(SpinJ::HALF, SpinJ::HALF, BasisLabel::StandardM)
    }

    pub fn space(&self) -> ProductSpace {
        ProductSpace::new(self.j1, self.j2, self.basis)
    }
}

/// Intermediate values. Coefficients are kept as radicand-grouped sums so
/// that terms may cancel before being forced into a single surd.
enum Value {
    Scalar(SurdSum),
    Ket1(BTreeMap<HalfInt, SurdSum>),
    Ket2(BTreeMap<(HalfInt, HalfInt), SurdSum>),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Scalar(_) => "scalar",
            Value::Ket1(_) => "single-particle ket",
            Value::Ket2(_) => "two-particle ket",
        }
    }

    fn scalar(x: SurdComplex) -> Self {
        let mut s = SurdSum::new();
        s.add(&x);
        Value::Scalar(s)
    }
}

fn single(sum: &SurdSum) -> Result<SurdComplex> {
    sum.clone().into_single()
}

fn scale_map<K: Ord + Clone>(map: &BTreeMap<K, SurdSum>, x: &SurdComplex) -> BTreeMap<K, SurdSum> {
    map.iter().map(|(k, v)| (k.clone(), v.scaled(x))).collect()
}

fn add_maps<K: Ord + Clone>(mut a: BTreeMap<K, SurdSum>, b: &BTreeMap<K, SurdSum>) -> BTreeMap<K, SurdSum> {
    for (k, v) in b {
        a.entry(k.clone()).or_default().merge(v);
    }
    a
}

fn negate(v: Value) -> Value {
    let minus = SurdComplex::one().neg();
    match v {
        Value::Scalar(s) => Value::Scalar(s.negated()),
        Value::Ket1(m) => Value::Ket1(scale_map(&m, &minus)),
        Value::Ket2(m) => Value::Ket2(scale_map(&m, &minus)),
    }
}

fn add(a: Value, b: Value) -> Result<Value> {
    match (a, b) {
        (Value::Scalar(mut x), Value::Scalar(y)) => {
            x.merge(&y);
            Ok(Value::Scalar(x))
        }
        (Value::Ket1(x), Value::Ket1(y)) => Ok(Value::Ket1(add_maps(x, &y))),
        (Value::Ket2(x), Value::Ket2(y)) => Ok(Value::Ket2(add_maps(x, &y))),
        (a, b) => Err(Error::Type(format!("cannot add a {} and a {}", a.kind(), b.kind()))),
    }
}

fn scale(v: Value, x: &SurdSum) -> Result<Value> {
    let x = single(x)?;
    Ok(match v {
        Value::Scalar(s) => Value::Scalar(s.scaled(&x)),
        Value::Ket1(m) => Value::Ket1(scale_map(&m, &x)),
        Value::Ket2(m) => Value::Ket2(scale_map(&m, &x)),
    })
}

fn multiply(a: Value, b: Value) -> Result<Value> {
    match (a, b) {
        (Value::Scalar(x), v) | (v, Value::Scalar(x)) => scale(v, &x),
        (a, b) => Err(Error::Type(format!(
            "cannot multiply a {} by a {}; use 'x' for the tensor product",
            a.kind(),
            b.kind()
        ))),
    }
}

fn check_label(m: HalfInt, j: SpinJ) -> Result<()> {
    if j.index_of(m).is_none() {
        return Err(Error::LabelOutOfRange { label: m.to_string(), spin: j.to_string() });
    }
    Ok(())
}

fn eval(e: &KetExpr, ctx: &EvalContext) -> Result<Value> {
    Ok(match e {
        KetExpr::RationalLit(q) => Value::scalar(SurdScalar::from_rational(q.clone()).into()),
        KetExpr::SurdLit(q) => Value::scalar(SurdScalar::sqrt(q.clone())?.into()),
        KetExpr::ImaginaryUnit => Value::scalar(GaussianRational::i().into()),
        KetExpr::SingleKet(m) => {
            let mut one = SurdSum::new();
            one.add(&SurdComplex::one());
            Value::Ket1(BTreeMap::from([(*m, one)]))
        }
        KetExpr::Neg(x) => negate(eval(x, ctx)?),
        KetExpr::Paren(x) => eval(x, ctx)?,
        KetExpr::Add(a, b) => add(eval(a, ctx)?, eval(b, ctx)?)?,
        KetExpr::Sub(a, b) => add(eval(a, ctx)?, negate(eval(b, ctx)?))?,
        KetExpr::Mul(a, b) => multiply(eval(a, ctx)?, eval(b, ctx)?)?,
        KetExpr::Div(a, b) => {
            let Value::Scalar(d) = eval(b, ctx)? else {
                return Err(Error::Type("the divisor must be a scalar".into()));
            };
            let d = single(&d)?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            let mut inv = SurdSum::new();
            inv.add(&d.recip()?);
            scale(eval(a, ctx)?, &inv)?
        }
        KetExpr::Tensor(a, b) => match (eval(a, ctx)?, eval(b, ctx)?) {
            (Value::Ket1(x), Value::Ket1(y)) => {
                let mut out = BTreeMap::new();
                for (m1, c1) in &x {
                    check_label(*m1, ctx.j1)?;
                    let c1 = single(c1)?;
                    for (m2, c2) in &y {
                        check_label(*m2, ctx.j2)?;
                        out.insert((*m1, *m2), c2.scaled(&c1));
                    }
                }
                Value::Ket2(out)
            }
            (a, b) => {
                return Err(Error::Type(format!(
                    "the tensor product needs two single-particle kets, found a {} and a {}",
                    a.kind(),
                    b.kind()
                )))
            }
        },
    })
}

/// Evaluates an expression to an exact vector of the two-particle space.
/// A bare scalar `0` evaluates to the zero vector.
pub fn evaluate(e: &KetExpr, ctx: &EvalContext) -> Result<ExactVector> {
    let space = ctx.space();
    let std_space = space.with_basis(BasisLabel::StandardM);
    let terms = match eval(e, ctx)? {
        Value::Ket2(m) => m,
        Value::Scalar(s) if s.is_zero() => BTreeMap::new(),
        other => {
            return Err(Error::Type(format!("expected a two-particle state, found a {}", other.kind())));
        }
    };
    let mut values = vec![SurdComplex::zero(); space.dim()];
    for ((m1, m2), c) in terms {
        let k = std_space.index_of(m1, m2).expect("labels checked");
        values[k] = c.into_single()?;
    }
    let v = ExactVector::from_surd_components(&values)?;
    if space.is_standard() || v.is_zero() {
        return Ok(v);
    }
    space.from_standard()?.apply(&v)
}

/// Parses and evaluates in one step.
pub fn evaluate_str(text: &str, ctx: &EvalContext) -> Result<ExactVector> {
    evaluate(&super::parse(text)?, ctx)
}

