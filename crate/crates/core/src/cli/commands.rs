use super::report::{float, Outcome, ReportDocument, Section, Verdict};
use crate::catalog;
use crate::coupling::{
    clebsch_gordan, coupled_eigenbasis, cross_check_clebsch_gordan, solve_superposition_ansatz,
    total_operators, verify_eigenstate, CoupledState, ProductSpace,
};
use crate::entangle::{bell_state, classify_paper_states, exchange_parity, schmidt_analyze, BellState, BELL_LABELS};
use crate::error::{Error, Result};
use crate::exactnum::{HalfInt, Rational, SurdScalar};
use crate::ketlang::{evaluate_str, format, EvalContext};
use crate::linalg::ExactVector;
use crate::spinops::{
    cartesian_spin1, check_cartesian_eigenvector, verify_single_photon_actions, BasisLabel, SpinJ,
};

const STATE_COLUMNS: [&str; 5] = ["S", "mu", "exchange parity", "state", "components"];

fn parity_text(p: Option<crate::entangle::Parity>) -> String {
    p.map_or_else(|| "n/a".to_string(), |p| p.to_string())
}

fn state_record(state: &CoupledState, ctx: &EvalContext) -> Vec<String> {
    vec![
        state.spin.to_string(),
        state.mu.to_string(),
        parity_text(state.exchange_parity),
        format(&state.vector, ctx),
        state.vector.to_string(),
    ]
}

fn residual_text(s2: &ExactVector, sz: &ExactVector, ctx: &EvalContext) -> String {
    format!("(S^2 - S(S+1)) v = {}; (Sz - mu) v = {}", format(s2, ctx), format(sz, ctx))
}

pub fn couple(j1: SpinJ, j2: SpinJ, basis: BasisLabel) -> Result<ReportDocument> {
    let space = ProductSpace::new(j1, j2, basis);
    let ctx = EvalContext::new(j1, j2, basis);
    let ops = total_operators(space)?;
    let states = coupled_eigenbasis(space)?;

    let mut doc = ReportDocument::new("couple").input("j1", j1).input("j2", j2).input("basis", basis);
    let mut spectrum = Section::new("total spin spectrum", &["S", "S(S+1)", "multiplicity"]);
    for (spin, (value, mult)) in space.total_spins().into_iter().zip(ops.s2_spectrum()?) {
        spectrum.push(vec![spin.to_string(), value.to_string(), mult.to_string()]);
    }
    doc.sections.push(spectrum);

    let mut table = Section::new("coupled basis", &STATE_COLUMNS)
        .note("states are written with chi(m) the standard |j, m> vectors; components are in the selected basis");
    for state in &states {
        table.push(state_record(state, &ctx));
        let v = verify_eigenstate(&ops, &state.vector, state.spin, state.mu)?;
        doc.verdicts.push(Verdict::check(
            format!("|S={}, mu={}> satisfies both eigen-equations", state.spin, state.mu),
            v.pass,
        ));
    }
    doc.sections.push(table);
    Ok(doc)
}

pub fn cg(args: [HalfInt; 6]) -> ReportDocument {
    let [j1, m1, j2, m2, j, m] = args;
    let c = clebsch_gordan(j1, m1, j2, m2, j, m);
    let mut doc = ReportDocument::new("cg")
        .input("j1", j1)
        .input("m1", m1)
        .input("j2", j2)
        .input("m2", m2)
        .input("J", j)
        .input("M", m);
    let mut s = Section::new("Clebsch-Gordan coefficient", &["<j1 m1; j2 m2 | J M>", "exact", "float"]);
    s.push(vec![
        format!("<{j1} {m1}; {j2} {m2} | {j} {m}>"),
        c.value.to_string(),
        float(c.value.to_f64()),
    ]);
    doc.sections.push(s);
    doc
}

pub fn verify(text: &str, ctx: &EvalContext, spin: HalfInt, mu: HalfInt) -> Result<ReportDocument> {
    let v = evaluate_str(text, ctx)?;
    let ops = total_operators(ctx.space())?;
    let verdict = verify_eigenstate(&ops, &v, spin, mu)?;
    let mut doc = ReportDocument::new("verify")
        .input("state", text)
        .input("S", spin)
        .input("mu", mu)
        .input("j1", ctx.j1)
        .input("j2", ctx.j2)
        .input("basis", ctx.basis);
    let mut s = Section::new("state", &["state", "components", "norm^2"]);
    s.push(vec![format(&v, ctx), v.to_string(), v.norm_sqr().to_string()]);
    doc.sections.push(s);
    let mut check = Verdict::check(format!("state is an eigenstate with S={spin}, mu={mu}"), verdict.pass);
    if !verdict.pass {
        check = check.with_residual(residual_text(&verdict.s2_residual, &verdict.sz_residual, ctx));
    }
    doc.verdicts.push(check);
    Ok(doc)
}

fn schmidt_section(v: &ExactVector, ctx: &EvalContext) -> Result<Section> {
    let space = ctx.space();
    let normalized = v.normalized()?;
    let a = schmidt_analyze(&normalized, space.d1(), space.d2())?;
    let parity = if ctx.j1 == ctx.j2 { Some(exchange_parity(v, space.d1())?) } else { None };
    let exact = a
        .exact_coefficients
        .as_ref()
        .map_or_else(|| "n/a".to_string(), |xs| xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "));
    let floats = a.schmidt_coefficients.iter().map(|x| float(*x)).collect::<Vec<_>>().join(", ");
    let mut s = Section::new(
        "Schmidt analysis",
        &["schmidt rank", "product", "coefficients (exact)", "coefficients", "entropy (nats)", "exchange parity"],
    )
    .note("entangled means Schmidt rank >= 2 across particle 1 | particle 2; entropy is -sum p ln p with p the squared coefficients");
    if !v.is_normalized() {
        s = s.note(format!("input had norm^2 = {}; analysed after normalization", v.norm_sqr()));
    }
    s.push(vec![
        a.rank.to_string(),
        a.is_product.to_string(),
        exact,
        floats,
        float(a.entropy_nats),
        parity_text(parity),
    ]);
    Ok(s)
}

pub fn entangle_expr(text: &str, ctx: &EvalContext) -> Result<ReportDocument> {
    let v = evaluate_str(text, ctx)?;
    let mut doc = ReportDocument::new("entangle")
        .input("state", text)
        .input("j1", ctx.j1)
        .input("j2", ctx.j2)
        .input("basis", ctx.basis);
    doc.sections.push(schmidt_section(&v, ctx)?);
    Ok(doc)
}

pub fn entangle_paper_state(label: &str) -> Result<ReportDocument> {
    let entry = catalog::corrected(label).ok_or_else(|| {
        let known: Vec<&str> = catalog::CORRECTED.iter().map(|e| e.label).collect();
        Error::Domain(format!("unknown state label {label:?}; expected one of {}", known.join(", ")))
    })?;
    let ctx = entry.context();
    let v = entry.evaluate()?;
    let mut doc = ReportDocument::new("entangle")
        .input("paper_state", entry.label)
        .input("state", entry.text)
        .input("S", entry.spin())
        .input("mu", entry.mu());
    doc.sections.push(schmidt_section(&v, &ctx)?);
    Ok(doc)
}

fn bell_sections(b: &BellState) -> Result<Vec<Section>> {
    let m_ctx = EvalContext::two_photon();
    let cart_ctx = EvalContext::new(SpinJ::ONE, SpinJ::ONE, BasisLabel::Cartesian);
    let mut forms = Section::new(
        format!("Bell state {}", b.label),
        &["Cartesian components", "helicity form", "schmidt rank", "exchange parity"],
    )
    .note("H is the x axis and V the y axis of the Cartesian photon space");
    forms.push(vec![
        b.cartesian.to_string(),
        format(&b.helicity, &m_ctx),
        b.schmidt_rank.to_string(),
        b.exchange_parity.to_string(),
    ]);
    debug_assert_eq!(format(&b.cartesian, &cart_ctx), format(&b.helicity, &m_ctx));
    let mut decomposition = Section::new(
        format!("Bell state {} over the coupled basis", b.label),
        &["S", "mu", "amplitude", "weight"],
    );
    for e in &b.expansion {
        decomposition.push(vec![
            e.spin.to_string(),
            e.mu.to_string(),
            e.amplitude.to_string(),
            e.amplitude.norm_sqr().to_string(),
        ]);
    }
    Ok(vec![forms, decomposition])
}

pub fn entangle_bell(label: &str) -> Result<ReportDocument> {
    let b = bell_state(label)?;
    let mut doc = ReportDocument::new("entangle").input("bell", b.label);
    let ctx = EvalContext::new(SpinJ::ONE, SpinJ::ONE, BasisLabel::Cartesian);
    doc.sections.push(schmidt_section(&b.cartesian, &ctx)?);
    doc.sections.extend(bell_sections(&b)?);
    Ok(doc)
}

fn support(b: &BellState) -> String {
    let live: Vec<String> = b
        .expansion
        .iter()
        .filter(|e| !e.amplitude.is_zero())
        .map(|e| format!("|{},{}>", e.spin, e.mu))
        .collect();
    live.join(" ")
}

fn single_photon_sections(doc: &mut ReportDocument) -> Result<()> {
    let set = cartesian_spin1();
    let algebra = set.check_algebra()?;
    let mut ops = Section::new("single-photon spin operators (Cartesian basis)", &["check", "result"]);
    ops.push(vec!["s_x, s_y, s_z hermitian".into(), algebra.hermitian.to_string()]);
    ops.push(vec!["[s_x, s_y] = i s_z and cyclic".into(), algebra.commutators.to_string()]);
    ops.push(vec!["S^2 = s_x^2 + s_y^2 + s_z^2 = 2 I".into(), algebra.casimir.to_string()]);
    doc.verdicts.push(Verdict::check("Cartesian spin-1 matrices are hermitian", algebra.hermitian));
    doc.verdicts.push(Verdict::check("Cartesian spin-1 matrices satisfy the commutation relations", algebra.commutators));
    doc.verdicts.push(Verdict::check("S^2 = 2 I for the Cartesian spin-1 matrices", algebra.casimir));
    for mu in [1, 0, -1] {
        let (s2, sz) = check_cartesian_eigenvector(mu)?;
        ops.push(vec![format!("chi({mu}) = {}", crate::spinops::cartesian_chi(mu)), format!("S^2: {s2}, s_z: {sz}")]);
        doc.verdicts.push(Verdict::check(format!("S^2 chi({mu}) = 2 chi({mu}) and s_z chi({mu}) = {mu} chi({mu})"), s2 && sz));
    }
    doc.sections.push(ops);

    let mut actions = Section::new("single-photon action identities", &["identity", "s_k chi (computed)", "holds"]);
    for a in verify_single_photon_actions()? {
        actions.push(vec![a.name.clone(), a.actual.to_string(), a.pass.to_string()]);
        doc.verdicts.push(Verdict::check(a.name, a.pass));
    }
    doc.sections.push(actions);
    Ok(())
}

fn trial_sections(doc: &mut ReportDocument) -> Result<()> {
    let ctx = EvalContext::two_photon();
    let space = ProductSpace::two_photon();
    let ops = total_operators(space)?;

    let mut spectrum = Section::new("two-photon total spin spectrum", &["S", "S(S+1)", "multiplicity"]);
    let mut dims = 0;
    let mut expected = true;
    for (spin, (value, mult)) in space.total_spins().into_iter().zip(ops.s2_spectrum()?) {
        spectrum.push(vec![spin.to_string(), value.to_string(), mult.to_string()]);
        dims += mult;
        expected &= mult == usize::try_from(spin.twice() + 1).unwrap_or(0);
    }
    doc.sections.push(spectrum);
    doc.verdicts.push(Verdict::check(
        "S^2 eigenvalues 6, 2, 0 with multiplicities 5, 3, 1 fill the 9-dim space",
        expected && dims == 9,
    ));

    let mut trials = Section::new("trial states", &["label", "S", "mu", "state", "eigenstate"])
        .note("first guesses at the nine two-photon states; two of them are not eigenstates");
    for entry in &catalog::TRIALS {
        let v = entry.evaluate()?;
        let check = verify_eigenstate(&ops, &v, entry.spin(), entry.mu())?;
        trials.push(vec![
            entry.label.into(),
            entry.spin().to_string(),
            entry.mu().to_string(),
            format(&v, &ctx),
            check.pass.to_string(),
        ]);
        let mut verdict = Verdict::new(
            format!("trial {} is an eigenstate with S={}, mu={}", entry.label, entry.spin(), entry.mu()),
            Outcome::from_bool(entry.is_eigenstate),
            Outcome::from_bool(check.pass),
        );
        if !check.pass {
            verdict = verdict.with_residual(residual_text(&check.s2_residual, &check.sz_residual, &ctx));
        }
        doc.verdicts.push(verdict);
    }
    doc.sections.push(trials);

    let c00 = evaluate_str("chi(0) x chi(0)", &ctx)?;
    let pair = evaluate_str("chi(1) x chi(-1) + chi(-1) x chi(1)", &ctx)?;
    let mut ansatz = Section::new(
        "superposition ansatz a chi(0) x chi(0) + b (chi(1) x chi(-1) + chi(-1) x chi(1))",
        &["S", "mu", "a : b", "normalized a", "normalized b", "state"],
    );
    for (spin, expected_ratio) in [(2, [2, 1]), (0, [1, -1])] {
        let sol = solve_superposition_ansatz(&ops, &[c00.clone(), pair.clone()], HalfInt::from_int(spin), HalfInt::ZERO)?;
        ansatz.push(vec![
            spin.to_string(),
            "0".into(),
            format!("{} : {}", sol.ratio[0], sol.ratio[1]),
            sol.normalized[0].to_string(),
            sol.normalized[1].to_string(),
            format(&sol.state.vector, &ctx),
        ]);
        let ratio_ok = sol
            .ratio
            .iter()
            .zip(expected_ratio)
            .all(|(x, e)| x.as_real() == Some(SurdScalar::from_rational(Rational::from_integer(e.into()))));
        let relation = if spin == 2 { "a = 2b" } else { "a = -b" };
        doc.verdicts.push(Verdict::check(format!("ansatz for S={spin}, mu=0 gives {relation}"), ratio_ok));
    }
    doc.sections.push(ansatz);
    Ok(())
}

fn corrected_sections(doc: &mut ReportDocument) -> Result<()> {
    let ctx = EvalContext::two_photon();
    let ops = total_operators(ProductSpace::two_photon())?;
    let eigen = coupled_eigenbasis(ProductSpace::two_photon())?;
    let mut table = Section::new(
        "corrected two-photon states",
        &["label", "S", "mu", "state", "eigenstate", "sign vs eigensolver"],
    )
    .note("sign vs eigensolver: s with state = s * (eigensolver state in the Condon-Shortley phase)");
    let mut multiplet_signs: Vec<(HalfInt, i8)> = Vec::new();
    for entry in &catalog::CORRECTED {
        let v = entry.evaluate()?;
        let check = verify_eigenstate(&ops, &v, entry.spin(), entry.mu())?;
        let partner = eigen.iter().find(|s| s.spin == entry.spin() && s.mu == entry.mu()).expect("complete basis");
        let sign = partner.vector.sign_relative_to(&v);
        table.push(vec![
            entry.label.into(),
            entry.spin().to_string(),
            entry.mu().to_string(),
            format(&v, &ctx),
            check.pass.to_string(),
            sign.map_or_else(|| "none".to_string(), |s| format!("{s:+}")),
        ]);
        doc.verdicts.push(Verdict::check(
            format!("{} is an eigenstate with S={}, mu={}", entry.label, entry.spin(), entry.mu()),
            check.pass,
        ));
        doc.verdicts.push(Verdict::check(
            format!("{} equals the eigensolver state up to a sign", entry.label),
            sign.is_some(),
        ));
        if let Some(s) = sign {
            multiplet_signs.push((entry.spin(), s));
        }
    }
    for spin in ProductSpace::two_photon().total_spins() {
        let signs: Vec<String> =
            multiplet_signs.iter().filter(|(s, _)| *s == spin).map(|(_, x)| format!("{x:+}")).collect();
        let uniform = signs.windows(2).all(|w| w[0] == w[1]);
        table = table.note(format!(
            "S={spin} multiplet signs: {} ({})",
            signs.join(", "),
            if uniform { "uniform" } else { "not uniform" }
        ));
    }
    doc.sections.push(table);

    for j in [SpinJ::ONE, SpinJ::HALF] {
        let check = cross_check_clebsch_gordan(j, j)?;
        let mut s = Section::new(
            format!("eigensolver vs Clebsch-Gordan, j1 = j2 = {j}"),
            &["S", "mu", "m1", "m2", "eigensolver", "Clebsch-Gordan"],
        );
        for (spin, sign) in &check.multiplet_signs {
            s = s.note(format!("S={spin}: eigensolver = {sign:+} x Clebsch-Gordan"));
        }
        for r in check.rows.iter().filter(|r| !r.eigensolver.is_zero() || !r.clebsch_gordan.is_zero()) {
            s.push(vec![
                r.spin.to_string(),
                r.mu.to_string(),
                r.m1.to_string(),
                r.m2.to_string(),
                r.eigensolver.to_string(),
                r.clebsch_gordan.to_string(),
            ]);
        }
        doc.sections.push(s);
        doc.verdicts.push(Verdict::check(
            format!("eigensolver amplitudes equal Clebsch-Gordan values up to one sign per multiplet (j = {j})"),
            check.pass,
        ));
    }
    Ok(())
}

fn classification_section(doc: &mut ReportDocument) -> Result<()> {
    let rows = classify_paper_states()?;
    let mut s = Section::new(
        "symmetry and entanglement",
        &["label", "S", "mu", "exchange parity", "schmidt rank", "product", "entropy (nats)"],
    )
    .note("entangled means Schmidt rank >= 2 across photon 1 | photon 2");
    let mut entangled = Vec::new();
    let mut parity_ok = true;
    for r in &rows {
        s.push(vec![
            r.label.into(),
            r.spin.to_string(),
            r.mu.to_string(),
            r.exchange_parity.to_string(),
            r.schmidt_rank.to_string(),
            r.is_product.to_string(),
            float(r.entropy_nats),
        ]);
        if !r.is_product {
            entangled.push(r.label);
        }
        let expected = if r.spin == HalfInt::from_int(1) { Some(-1) } else { Some(1) };
        parity_ok &= r.exchange_parity.sign() == expected;
    }
    doc.sections.push(s);
    doc.verdicts.push(Verdict::check(
        "exactly S2, S3, S4, S6, A1, A2, A3 are entangled",
        entangled == ["S2", "S3", "S4", "S6", "A1", "A2", "A3"],
    ));
    doc.verdicts.push(Verdict::check("S=2 and S=0 states are symmetric, S=1 states antisymmetric", parity_ok));
    Ok(())
}

fn electron_section(doc: &mut ReportDocument) -> Result<()> {
    let space = ProductSpace::two_electron();
    let ops = total_operators(space)?;
    let eigen = coupled_eigenbasis(space)?;
    let ctx = EvalContext::two_electron();
    let mut s = Section::new("two-electron states", &["label", "S", "mu", "state", "eigenstate", "sign vs eigensolver", "schmidt rank"]);
    for entry in &catalog::ELECTRON {
        let v = entry.evaluate()?;
        let check = verify_eigenstate(&ops, &v, entry.spin(), entry.mu())?;
        let partner = eigen.iter().find(|e| e.spin == entry.spin() && e.mu == entry.mu()).expect("complete basis");
        let sign = partner.vector.sign_relative_to(&v);
        let rank = schmidt_analyze(&v, 2, 2)?.rank;
        s.push(vec![
            entry.label.into(),
            entry.spin().to_string(),
            entry.mu().to_string(),
            format(&v, &ctx),
            check.pass.to_string(),
            sign.map_or_else(|| "none".to_string(), |x| format!("{x:+}")),
            rank.to_string(),
        ]);
        doc.verdicts.push(Verdict::check(
            format!("electron {} is an eigenstate with S={}, mu=0 matching the eigensolver", entry.label, entry.spin()),
            check.pass && sign.is_some(),
        ));
    }
    doc.sections.push(s);
    Ok(())
}

fn bell_section(doc: &mut ReportDocument) -> Result<()> {
    let ctx = EvalContext::two_photon();
    let mut s = Section::new(
        "polarization Bell states in the two-photon space",
        &["state", "helicity form", "schmidt rank", "exchange parity", "coupled-basis support"],
    )
    .note("H is the x axis and V the y axis of the Cartesian photon space")
    .note("the four states span a 4-dim subspace of the 9-dim two-photon space");
    let mut span = Vec::new();
    for label in BELL_LABELS {
        let b = bell_state(label)?;
        s.push(vec![
            format!("({})/sqrt(2)", b.label),
            format(&b.helicity, &ctx),
            b.schmidt_rank.to_string(),
            b.exchange_parity.to_string(),
            support(&b),
        ]);
        doc.verdicts.push(Verdict::check(format!("({})/sqrt(2) has Schmidt rank 2", b.label), b.schmidt_rank == 2));
        if label == "HH+VV" {
            let expected = evaluate_str("-1/sqrt(2) * (chi(1) x chi(-1) + chi(-1) x chi(1))", &ctx)?;
            doc.verdicts.push(Verdict::check(
                "(HH+VV)/sqrt(2) = -1/sqrt(2) (chi(1) x chi(-1) + chi(-1) x chi(1))",
                b.helicity == expected,
            ));
        }
        span.push(b.cartesian);
    }
    let rows: Vec<Vec<_>> = span.iter().map(|v| v.components().to_vec()).collect();
    let rank = crate::linalg::rank(&rows);
    s = s.note(format!("rank of the four Bell vectors: {rank}"));
    doc.sections.push(s);
    Ok(())
}

/// Every check of the two-photon analysis in one document.
pub fn paper_report() -> Result<ReportDocument> {
    let mut doc = ReportDocument::new("paper-report");
    single_photon_sections(&mut doc)?;
    trial_sections(&mut doc)?;
    corrected_sections(&mut doc)?;
    classification_section(&mut doc)?;
    electron_section(&mut doc)?;
    bell_section(&mut doc)?;
    Ok(doc)
}

