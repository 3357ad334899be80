//! The check catalog. Each check asserts exact integer identities and
//! records them in its certificate; dataset gaps surface as
//! [`Error::MissingData`].

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::character::FormalCharacter;
use crate::error::{Error, Result};
use crate::eval::Evaluator;
use crate::expr::{parse_module_expression, ModuleExpr};
use crate::filtration::{
    good_pr_filtration_decompose, head_obstruction_check, steinberg_block_factors, FiltrationVerdict,
};
use crate::modular::{pim_weight, Dataset, Fact, GroupScope};
use crate::root_system::Weight;
use crate::verify::certificate::{Certificate, Claim, Identity, Relation};
use crate::weyl::{decompose_weyl_basis, weyl_character, weyl_dimension};

/// Accumulates the evidence of one check.
pub(crate) struct Ctx<'a> {
    pub ds: &'a Dataset,
    pub ev: Evaluator<'a>,
    pub cert: Certificate,
    pub values: Vec<(String, Value)>,
    pub citations: Vec<String>,
}

impl<'a> Ctx<'a> {
    pub fn new(ds: &'a Dataset) -> Self {
        Ctx {
            ds,
            ev: Evaluator::new(ds),
            cert: Certificate::default(),
            values: Vec::new(),
            citations: Vec::new(),
        }
    }

    fn identity(&mut self, label: impl Into<String>, lhs: Vec<Vec<i64>>, rel: Relation, rhs: Vec<Vec<i64>>) -> bool {
        let id = Identity::new(label, lhs, rel, rhs);
        let holds = id.holds;
        self.cert.identities.push(id);
        holds
    }

    fn eq(&mut self, label: impl Into<String>, lhs: Vec<Vec<i64>>, rhs: Vec<Vec<i64>>) -> bool {
        self.identity(label, lhs, Relation::Eq, rhs)
    }

    fn claim(&mut self, label: impl Into<String>, holds: bool, detail: impl Into<String>) -> bool {
        self.cert.claims.push(Claim {
            label: label.into(),
            holds,
            detail: detail.into(),
        });
        holds
    }

    fn value(&mut self, label: impl Into<String>, v: impl Into<Value>) {
        self.values.push((label.into(), v.into()));
    }

    fn cite(&mut self, citation: &str) {
        if !self.citations.iter().any(|c| c == citation) {
            self.citations.push(citation.to_string());
        }
    }

    fn cite_fact(&mut self, f: &Fact) {
        self.cite(&f.citation);
    }

    fn verdict(&mut self, v: &FiltrationVerdict) {
        self.cert.verdicts.push(v.to_json());
    }

    fn dim(&self, e: &ModuleExpr) -> Result<i64> {
        small(&self.ev.dimension(e)?)
    }

    fn char_of(&self, text: &str) -> Result<FormalCharacter> {
        self.ev.character(&expr(text)?)
    }
}

fn small(n: &BigInt) -> Result<i64> {
    n.to_i64().ok_or_else(|| Error::Overflow(format!("{n} does not fit in 64 bits")))
}

fn expr(text: &str) -> Result<ModuleExpr> {
    parse_module_expression(text)
}

fn w(a: i64, b: i64) -> Weight {
    Weight::from([a, b])
}

fn missing(what: &str) -> Error {
    Error::MissingData(what.to_string())
}

/// `St ⊗ L(λ)` as the datasets spell it.
fn st_tensor_text(lam: &Weight) -> String {
    if lam.is_zero() {
        "St*k".into()
    } else if lam == &w(1, 1) {
        "St*St".into()
    } else {
        format!("St*L{lam}")
    }
}

fn simple_label(lam: &Weight) -> String {
    if lam.is_zero() {
        "k".into()
    } else {
        format!("L{lam}")
    }
}

const EXPECTED_SIMPLE_DIMS: [((i64, i64), i64); 4] = [((0, 0), 1), ((1, 0), 6), ((0, 1), 14), ((1, 1), 64)];
/// `dim Q_1(λ)` as multiples of 64.
const EXPECTED_PIM_DIMS: [((i64, i64), i64); 4] = [((0, 0), 36), ((1, 0), 12), ((0, 1), 6), ((1, 1), 1)];

fn expected_pim_dim(lam: &Weight) -> Option<i64> {
    EXPECTED_PIM_DIMS
        .iter()
        .find(|((a, b), _)| &w(*a, *b) == lam)
        .map(|(_, m)| m * 64)
}

fn require_g2_p2(ds: &Dataset) -> Result<()> {
    if ds.root_system().rank() != 2 || ds.root_system().cartan_matrix()[1][0] != -3 || ds.p() != 2 {
        return Err(missing("a G2 dataset in characteristic 2"));
    }
    Ok(())
}

pub(crate) fn table1(c: &mut Ctx) -> Result<()> {
    require_g2_p2(c.ds)?;
    for ((a, b), expected) in EXPECTED_SIMPLE_DIMS {
        let lam = w(a, b);
        let entry = c
            .ds
            .table()
            .entry(&lam)
            .ok_or_else(|| missing(&format!("decomposition data for ∇{lam}")))?;
        let provenance = entry.provenance.clone();
        let d = small(&c.ds.table().simple_character(&lam)?.dimension())?;
        c.cite(&provenance);
        c.value(format!("dim L{lam}"), d);
        c.eq(format!("dim L{lam}"), vec![vec![d]], vec![vec![expected]]);
    }
    let dims = c.ds.pim_dimensions()?;
    for f in c.ds.registry().iso_facts(GroupScope::G1) {
        c.cite_fact(f);
    }
    for ((a, b), mult) in EXPECTED_PIM_DIMS {
        let lam = w(a, b);
        let d = small(&dims[&lam])?;
        c.value(format!("dim Q1{lam}"), d);
        c.eq(format!("dim Q1{lam}"), vec![vec![d]], vec![vec![mult, 64]]);
    }
    Ok(())
}

pub(crate) fn st_tensor(c: &mut Ctx) -> Result<()> {
    require_g2_p2(c.ds)?;
    let ds = c.ds;
    let st_weight = w(1, 1);
    let st = ds.table().simple_character(&st_weight)?;
    let st_dim = small(&st.dimension())?;
    let mut pim_mults_d = BTreeMap::new();
    for lam in ds.root_system().restricted_weights(2, 1) {
        let subject_text = st_tensor_text(&lam);
        let subject = expr(&subject_text)?;
        let fact = ds
            .registry()
            .iso(&subject, GroupScope::G1)
            .ok_or_else(|| missing(&format!("G1 decomposition of {subject_text}")))?;
        c.cite_fact(fact);
        let simple = ds.table().simple_character(&lam)?;
        let l_dim = small(&simple.dimension())?;
        let mut rhs = Vec::new();
        let mut st_mult = 0i64;
        let mut mults = BTreeMap::new();
        for (e, m) in &fact.summands {
            let m = *m as i64;
            match pim_weight(ds.root_system(), 2, e) {
                Some(mu) => {
                    let d = expected_pim_dim(&mu).ok_or_else(|| missing(&format!("dim Q1{mu}")))?;
                    rhs.push(vec![m, d]);
                    if mu == st_weight {
                        st_mult += m;
                    }
                    *mults.entry(mu).or_insert(0i64) += m;
                }
                None => rhs.push(vec![m, c.dim(e)?]),
            }
        }
        c.eq(format!("dim {subject_text}"), vec![vec![st_dim, l_dim]], rhs);
        let fixed = small(&simple.torus_fixed_dimension(2, 1))?;
        c.value(format!("dim {}^T1", simple_label(&lam)), fixed);
        c.eq(
            format!("Steinberg summands of {subject_text} = dim {}^T1", simple_label(&lam)),
            vec![vec![st_mult]],
            vec![vec![fixed]],
        );
        if lam == st_weight {
            pim_mults_d = mults;
        }
    }

    // soc_{G1} Q1(μ) = L(μ), and St ⊗ X^(1) restricts to dim X copies of St.
    let subject = expr("St*St")?;
    let soc = ds
        .registry()
        .socle_series_g1(&subject, 1)
        .ok_or_else(|| missing("G1 socle of St*St"))?;
    c.cite_fact(soc);
    let mut soc_counts: BTreeMap<Weight, Vec<Vec<i64>>> = BTreeMap::new();
    for (e, m) in &soc.summands {
        let m = *m as i64;
        let entry = match e {
            ModuleExpr::Trivial => (w(0, 0), vec![m]),
            ModuleExpr::Simple(mu) => (mu.clone(), vec![m]),
            ModuleExpr::Steinberg { r: 1 } => (st_weight.clone(), vec![m]),
            ModuleExpr::Tensor(a, b) if **a == (ModuleExpr::Steinberg { r: 1 }) && matches!(**b, ModuleExpr::Twist(..)) => {
                let ModuleExpr::Twist(inner, _) = &**b else { unreachable!() };
                (st_weight.clone(), vec![m, c.dim(inner)?])
            }
            other => {
                return Err(Error::InvalidRegistry(format!(
                    "G1 socle summand {other} is not a simple G1-module or St tensor a twist"
                )))
            }
        };
        soc_counts.entry(entry.0).or_default().push(entry.1);
    }
    let weights: std::collections::BTreeSet<Weight> = soc_counts.keys().chain(pim_mults_d.keys()).cloned().collect();
    for mu in weights {
        let lhs = soc_counts.get(&mu).cloned().unwrap_or_default();
        let rhs = vec![vec![*pim_mults_d.get(&mu).unwrap_or(&0)]];
        c.eq(format!("{} in soc_G1(St*St) = copies of Q1{mu}", simple_label(&mu)), lhs, rhs);
    }
    Ok(())
}

pub(crate) fn tq(c: &mut Ctx) -> Result<()> {
    require_g2_p2(c.ds)?;
    let ds = c.ds;
    let rs = ds.root_system().clone();
    let dims = ds.pim_dimensions()?;
    for f in ds.registry().iso_facts(GroupScope::G1) {
        c.cite_fact(f);
    }
    let rho = rs.rho().clone();
    for (lam, expected_hat) in [(w(1, 0), w(2, 1)), (w(0, 1), w(1, 2)), (w(0, 0), w(1, 1))] {
        let nu = &rho - &lam;
        let hat = rs.hat_weight(&nu, 2, 1)?;
        let top = &rho + &lam;
        c.claim(
            format!("hat{nu} = {expected_hat} = ρ + {lam}"),
            hat == expected_hat && top == expected_hat,
            format!("computed {hat}"),
        );
        let t = small(&ds.tilting().tilting_character(&top)?.dimension())?;
        if let Some(e) = ds.tilting().entry(&top) {
            let provenance = e.provenance.clone();
            c.cite(&provenance);
        }
        let q = small(&dims[&nu])?;
        c.value(format!("dim T{top}"), t);
        c.eq(format!("dim T{top} = dim Q1{nu}"), vec![vec![t]], vec![vec![q]]);
    }
    let t21 = expr("T(2,1)")?;
    let soc = ds
        .registry()
        .socle_series_g1(&t21, 1)
        .ok_or_else(|| missing("G1 socle of T(2,1)"))?;
    c.cite_fact(soc);
    let l01 = expr("L(0,1)")?;
    let others: i64 = soc.summands.iter().filter(|(e, _)| e != &l01).map(|(_, m)| *m as i64).sum();
    let count: i64 = soc.summands.iter().filter(|(e, _)| e == &l01).map(|(_, m)| *m as i64).sum();
    c.eq("L(0,1) in soc_G1 T(2,1) (simple socle of Q1(0,1))", vec![vec![count]], vec![vec![1]]);
    c.eq("other summands of soc_G1 T(2,1)", vec![vec![others]], vec![vec![0]]);
    Ok(())
}

pub(crate) fn socle_radical(c: &mut Ctx) -> Result<()> {
    require_g2_p2(c.ds)?;
    let ds = c.ds;
    let rs = ds.root_system().clone();
    let reg = ds.registry();
    let l01 = expr("L(0,1)")?;
    let mut layer_rhs = Vec::new();
    for lam in rs.restricted_weights(2, 1) {
        if lam == w(1, 1) {
            // St is projective over G1, so it has no extensions.
            continue;
        }
        let subject = expr(&simple_label(&lam))?;
        let f = reg
            .ext1_dim(&subject, &l01, GroupScope::G1)
            .ok_or_else(|| missing(&format!("Ext1_G1({}, L(0,1))", simple_label(&lam))))?;
        c.cite_fact(f);
        let d = f.dim.unwrap_or(0) as i64;
        c.value(format!("dim Ext1_G1({}, L(0,1))", simple_label(&lam)), d);
        let l_dim = small(&ds.table().simple_character(&lam)?.dimension())?;
        layer_rhs.push(vec![d, l_dim]);
        if lam.is_zero() {
            let w10 = small(&weyl_dimension(&rs, &w(1, 0))?)?;
            c.eq("dim Ext1_G1(k, L(0,1)) = dim ∇(1,0)", vec![vec![d]], vec![vec![w10]]);
            if let Some(s) = &f.structure {
                let sd = c.dim(s)?;
                c.eq(format!("dim Ext1_G1(k, L(0,1)) = dim {s}"), vec![vec![d]], vec![vec![sd]]);
            }
        } else {
            c.eq(
                format!("dim Ext1_G1({}, L(0,1))", simple_label(&lam)),
                vec![vec![d]],
                vec![vec![0]],
            );
        }
    }

    let t21 = expr("T(2,1)")?;
    let layer = reg
        .socle_series_g1(&t21, 2)
        .ok_or_else(|| missing("second G1 socle layer of T(2,1)"))?;
    c.cite_fact(layer);
    let mut layer_char = FormalCharacter::zero(&rs);
    let mut layer_lhs = Vec::new();
    for (e, m) in &layer.summands {
        let ch = c.ev.character(e)?;
        layer_lhs.push(vec![*m as i64, small(&ch.dimension())?]);
        layer_char.add_scaled(&BigInt::from(*m), &ch)?;
    }
    c.eq("dim soc^2_G1 T(2,1)/soc_G1 T(2,1)", layer_lhs, layer_rhs);
    let layer_dim = small(&layer_char.dimension())?;
    let fixed = small(&layer_char.torus_fixed_dimension(2, 1))?;
    c.eq("second G1 socle layer of T(2,1) is T1-fixed", vec![vec![fixed]], vec![vec![layer_dim]]);

    let comp = ds.table().composition_factors(&layer_char)?;
    let g_layer = reg
        .socle(&t21, 2)
        .ok_or_else(|| missing("second G socle layer of T(2,1)"))?;
    c.cite_fact(g_layer);
    let bound = |hw: &Weight| -> i64 {
        comp.iter()
            .find(|(x, _)| x == hw)
            .and_then(|(_, m)| m.to_i64())
            .unwrap_or(0)
    };
    for f in &g_layer.factors {
        let hw = f.highest_weight(2);
        c.identity(
            format!("{f} in soc^2_G T(2,1) lies in the G1 layer"),
            vec![vec![f.mult as i64]],
            Relation::Le,
            vec![vec![bound(&hw)]],
        );
    }

    let nabla = expr("Nabla(2,1)")?;
    let rad2 = reg
        .radical_layer(&nabla, 2)
        .ok_or_else(|| missing("second radical layer of ∇(2,1)"))?;
    c.cite_fact(rad2);
    for f in &rad2.factors {
        let in_socle: i64 = g_layer
            .factors
            .iter()
            .filter(|g| g.highest_weight(2) == f.highest_weight(2))
            .map(|g| g.mult as i64)
            .sum();
        c.identity(
            format!("{f} in rad_G ∇(2,1)/rad^2 embeds in soc^2_G T(2,1)/soc_G"),
            vec![vec![f.mult as i64]],
            Relation::Le,
            vec![vec![in_socle]],
        );
    }
    Ok(())
}

/// Checks the cited top of `∇(ν)` and runs the head test on its second
/// radical layer.
fn head_test(c: &mut Ctx, nu: Weight) -> Result<()> {
    require_g2_p2(c.ds)?;
    let ds = c.ds;
    let rs = ds.root_system().clone();
    let reg = ds.registry();
    let nabla = ModuleExpr::Costandard(nu.clone());
    let head = reg.head(&nabla).ok_or_else(|| missing(&format!("head of ∇{nu}")))?;
    let layer2 = reg
        .radical_layer(&nabla, 2)
        .ok_or_else(|| missing(&format!("second radical layer of ∇{nu}")))?;
    c.cite_fact(head);
    c.cite_fact(layer2);
    let simple_one = |f: &Fact| f.factors.len() == 1 && f.factors[0].mult == 1;
    c.claim(
        format!("head of ∇{nu} is simple"),
        simple_one(head),
        head.factors.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(" + "),
    );
    let single = simple_one(layer2) && layer2.factors[0].twist == 1;
    c.claim(
        format!("second radical layer of ∇{nu} is a single L(σ)^[1]"),
        single,
        layer2.factors.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(" + "),
    );
    let sigma = layer2.factors[0].weight.clone();
    let verdict = head_obstruction_check(&rs, &nu, &sigma, 2, 1, reg)?;
    c.verdict(&verdict);
    let candidates: Vec<Weight> = match &verdict {
        FiltrationVerdict::HeadObstruction { candidates, .. } | FiltrationVerdict::Inconclusive { candidates, .. } => {
            for cand in candidates {
                c.cite(&cand.citation);
            }
            candidates.iter().map(|x| x.weight.clone()).collect()
        }
        _ => Vec::new(),
    };
    c.claim(
        format!("no candidate ∇(μ) has L{sigma} in its head"),
        verdict.status() == "HeadObstruction",
        verdict.status(),
    );
    c.value(
        "candidates",
        Value::Array(candidates.iter().map(|x| json!(x)).collect()),
    );
    let a0 = rs.highest_short_root().clone();
    let top = rs.coroot_pairing(&nu, &a0)?;
    c.value(format!("<{nu}, α0∨>"), top);
    for mu in &candidates {
        let pm = rs.coroot_pairing(mu, &a0)?;
        c.identity(
            format!("2<{mu}, α0∨> <= <{nu}, α0∨>"),
            vec![vec![2, pm]],
            Relation::Le,
            vec![vec![top]],
        );
    }
    Ok(())
}

pub(crate) fn no_2_good(c: &mut Ctx) -> Result<()> {
    let rs = c.ds.root_system().clone();
    let a0 = rs.highest_short_root().clone();
    let pairing = rs.coroot_pairing(&w(2, 1), &a0)?;
    c.eq("<(2,1), α0∨>", vec![vec![pairing]], vec![vec![7]]);
    head_test(c, w(2, 1))?;
    let got: Vec<Value> = match c.values.iter().find(|(l, _)| l == "candidates") {
        Some((_, Value::Array(a))) => a.clone(),
        _ => Vec::new(),
    };
    let expected = vec![json!(w(0, 0)), json!(w(0, 1)), json!(w(1, 0))];
    c.claim("candidate set is {(0,0), (1,0), (0,1)}", got == expected, Value::Array(got.clone()).to_string());
    Ok(())
}

pub(crate) fn nabla02(c: &mut Ctx) -> Result<()> {
    head_test(c, w(0, 2))
}

pub(crate) fn nogood(c: &mut Ctx) -> Result<()> {
    require_g2_p2(c.ds)?;
    let ds = c.ds;
    let rs = ds.root_system().clone();
    let reg = ds.registry();
    let nu = w(2, 1);
    let nabla = ModuleExpr::Costandard(nu.clone());
    let st = ds.table().simple_character(&w(1, 1))?;
    // Cited layers of rad_G ∇(2,1), from the second radical layer down.
    let mut layers = Vec::new();
    let mut i = 2;
    while let Some(f) = reg.radical_layer(&nabla, i) {
        layers.push(f);
        i += 1;
    }
    if layers.is_empty() {
        return Err(missing("radical layers of ∇(2,1)"));
    }
    let mut factors = Vec::new();
    for f in &layers {
        c.cite_fact(f);
        for s in &f.factors {
            let ch = st.tensor(&c.ev.simple_factor_character(s)?)?;
            for (hw, m) in ds.table().composition_factors(&ch)? {
                let m = m.to_u64().ok_or_else(|| Error::Overflow("multiplicity".into()))?;
                for _ in 0..m * s.mult {
                    factors.push((hw.clone(), 0));
                }
            }
        }
    }
    let block = steinberg_block_factors(&rs, &factors, 2, 1)?;
    c.value(
        "Steinberg block factors of St ⊗ rad_G ∇(2,1)",
        Value::Array(block.iter().map(|(x, _)| json!(x)).collect()),
    );
    c.identity(
        "Steinberg block of St ⊗ rad_G ∇(2,1) is nonzero",
        vec![vec![block.len() as i64]],
        Relation::Gt,
        vec![vec![0]],
    );
    let head_layer = &layers[0];
    c.claim(
        "head of rad_G ∇(2,1) is a single L(σ)^[1]",
        head_layer.factors.len() == 1 && head_layer.factors[0].mult == 1 && head_layer.factors[0].twist == 1,
        head_layer.factors.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(" + "),
    );
    let Some(sigma) = head_layer.factors.first().map(|f| f.weight.clone()) else {
        return Ok(());
    };
    let top = rs.rho() + &sigma.scale(2);
    let in_block = block.iter().any(|(x, _)| x == &top);
    c.claim(format!("St ⊗ L{sigma}^[1] = L{top} lies in the Steinberg block"), in_block, "");
    for (x, _) in &block {
        let (r0, r1) = crate::modular::steinberg_factorize(x, 2, 1)?;
        c.eq(
            format!("restricted part of {x} is (1,1)"),
            vec![r0.coords().to_vec()],
            vec![vec![1, 1]],
        );
        c.claim(
            format!("2·{r1} <= {nu} in dominance"),
            rs.dominance_leq(&r1.scale(2), &nu),
            "",
        );
    }
    let verdict = head_obstruction_check(&rs, &nu, &sigma, 2, 1, reg)?;
    if let FiltrationVerdict::HeadObstruction { candidates, .. } = &verdict {
        for cand in candidates {
            c.cite(&cand.citation);
        }
    }
    c.verdict(&verdict);
    c.claim(
        format!("no ∇(μ)^[1] with 2μ <= (2,1) has head L{sigma}"),
        verdict.status() == "HeadObstruction",
        verdict.status(),
    );
    Ok(())
}

pub(crate) fn module_m(c: &mut Ctx) -> Result<()> {
    require_g2_p2(c.ds)?;
    let ds = c.ds;
    let rs = ds.root_system().clone();
    let reg = ds.registry();
    let m_text = "T(2,1)/rad^2(T(2,1))";
    let m_expr = expr(m_text)?;
    let series = reg
        .radical_series(&m_expr)
        .ok_or_else(|| missing("radical series of M = T(2,1)/rad^2(T(2,1))"))?;
    for f in &series {
        c.cite_fact(f);
    }
    let ch_m = c.ev.character(&m_expr)?;
    let st = c.char_of("St")?;
    let st_m = st.tensor(&ch_m)?;
    let t12 = ds.tilting().tilting_character(&w(1, 2))?;
    if let Some(e) = ds.tilting().entry(&w(1, 2)) {
        let provenance = e.provenance.clone();
        c.cite(&provenance);
    }
    let chi31 = weyl_character(&rs, &w(3, 1))?;
    let m_dim = small(&ch_m.dimension())?;
    let st_dim = small(&st.dimension())?;
    let t12_dim = small(&t12.dimension())?;
    let w31 = small(&weyl_dimension(&rs, &w(3, 1))?)?;
    c.value("dim M", m_dim);
    c.value("dim St ⊗ M", m_dim * st_dim);
    c.eq(
        "dim St ⊗ M = dim T(1,2) + dim ∇(3,1) + dim St",
        vec![vec![m_dim, st_dim]],
        vec![vec![t12_dim], vec![w31], vec![st_dim]],
    );

    let twisted = weyl_character(&rs, &w(1, 0))?.frobenius_twist(2)?;
    let prod = st.tensor(&twisted)?;
    let dec = decompose_weyl_basis(&rs, &prod)?;
    c.claim(
        "ch St ⊗ χ(1,0)^[1] = χ(3,1)",
        prod == chi31 && dec.residual.is_empty() && dec.terms == vec![(w(3, 1), BigInt::from(1))],
        format!("{} terms in the Weyl basis", dec.terms.len()),
    );
    c.eq("dim St ⊗ ∇(1,0)^[1] = dim ∇(3,1)", vec![vec![st_dim, 7]], vec![vec![w31]]);

    let rest = st_m.minus(&t12)?.minus(&chi31)?;
    let st_copies = if rest.is_empty() {
        0
    } else {
        let q = &rest.dimension() / &st.dimension();
        let k = small(&q)?;
        if rest == st.scaled(&BigInt::from(k)) {
            k
        } else {
            -1
        }
    };
    c.claim(
        "ch(St ⊗ M) − ch T(1,2) − χ(3,1) is a multiple of ch St",
        st_copies >= 0,
        format!("{st_copies} copies"),
    );
    c.value("copies of St in St ⊗ M", st_copies);

    let verdict = good_pr_filtration_decompose(&ch_m, 2, 1, ds.table())?;
    c.verdict(&verdict);
    let obstructed = match &verdict {
        FiltrationVerdict::CharacterObstruction {
            weight, coefficient, remainder, ..
        } => {
            c.value("obstruction weight", json!(weight));
            c.value("obstruction coefficient", small(coefficient)?);
            weight.is_zero() && coefficient == &BigInt::from(-1) && remainder == &FormalCharacter::trivial(&rs).scaled(&BigInt::from(-1))
        }
        _ => false,
    };
    c.claim("ch M has no (2,1)-filtration shape: remainder −k", obstructed, verdict.status());

    let hom = reg
        .hom_dim(&expr("St")?, &expr("St*(T(2,1)/rad^2(T(2,1)))")?, GroupScope::G)
        .ok_or_else(|| missing("dim Hom_G(St, St ⊗ M)"))?;
    c.cite_fact(hom);
    let hom_dim = hom.dim.unwrap_or(0) as i64;
    c.eq("dim Hom_G(St, St ⊗ M) = copies of St in St ⊗ M", vec![vec![hom_dim]], vec![vec![st_copies]]);
    c.value("dim M^T1", small(&ch_m.torus_fixed_dimension(2, 1))?);
    Ok(())
}

pub(crate) fn tmc_counterexample(c: &mut Ctx) -> Result<()> {
    require_g2_p2(c.ds)?;
    let ds = c.ds;
    let reg = ds.registry();
    let st_st = expr("St*St")?;
    let iso = reg
        .iso(&st_st, GroupScope::G1)
        .ok_or_else(|| missing("G1 decomposition of St*St"))?;
    let soc = reg
        .socle_series_g1(&st_st, 1)
        .ok_or_else(|| missing("G1 socle of St*St"))?;
    c.cite_fact(iso);
    c.cite_fact(soc);
    let dims = ds.pim_dimensions()?;
    let st_dim = c.dim(&expr("St")?)?;
    let q00 = small(&dims[&w(0, 0)])?;
    let t21 = small(&ds.tilting().tilting_character(&w(2, 1))?.dimension())?;

    // Under the hypothesis T(2,2) restricts to Q1(0,0); the G-structure of
    // soc_G1(St ⊗ St) then gives one T(2,1) per L(0,1) and one St ⊗ T(1,0)^[1]
    // per such summand.
    let l01 = expr("L(0,1)")?;
    let n21: i64 = soc.summands.iter().filter(|(e, _)| e == &l01).map(|(_, m)| *m as i64).sum();
    let twisted: Vec<(&ModuleExpr, i64)> = soc
        .summands
        .iter()
        .filter(|(e, _)| matches!(e, ModuleExpr::Tensor(a, b) if **a == ModuleExpr::Steinberg { r: 1 } && matches!(**b, ModuleExpr::Twist(..))))
        .map(|(e, m)| (e, *m as i64))
        .collect();
    let [(t31_expr, n31)] = twisted.as_slice() else {
        return Err(missing("St ⊗ T(1,0)^[1] summand of soc_G1(St*St)"));
    };
    let t31 = c.dim(t31_expr)?;
    c.value("dim T(2,2) (hypothesis)", q00);
    c.value("dim T(2,1)", t21);
    c.value("dim T(3,1) = dim St ⊗ T(1,0)^[1]", t31);
    c.value("copies of T(2,1)", n21);
    c.eq("dim T(3,1) = 8·64", vec![vec![t31]], vec![vec![8, 64]]);
    c.eq(
        "dim St ⊗ St = dim T(2,2) + 2·dim T(2,1) + 2·dim T(3,1)",
        vec![vec![st_dim, st_dim]],
        vec![vec![q00], vec![n21, t21], vec![*n31, t31]],
    );
    let q01 = iso
        .summands
        .iter()
        .filter(|(e, _)| pim_weight(ds.root_system(), 2, e) == Some(w(0, 1)))
        .map(|(_, m)| *m as i64)
        .sum::<i64>();
    c.eq("copies of T(2,1) = copies of Q1(0,1) in St ⊗ St", vec![vec![n21]], vec![vec![q01]]);

    let hom = reg
        .hom_dim(&expr("St")?, &expr("St*(T(2,1)/rad^2(T(2,1)))")?, GroupScope::G)
        .ok_or_else(|| missing("dim Hom_G(St, St ⊗ M)"))?;
    c.cite_fact(hom);
    let hom_dim = hom.dim.unwrap_or(0) as i64;
    c.value("dim Hom_G(St ⊗ St, M) lower bound", n21);
    c.identity(
        "copies of T(2,1) (each maps onto M) > dim Hom_G(St, St ⊗ M)",
        vec![vec![n21]],
        Relation::Gt,
        vec![vec![hom_dim]],
    );
    Ok(())
}

pub(crate) fn t22_socle(c: &mut Ctx) -> Result<()> {
    require_g2_p2(c.ds)?;
    let ds = c.ds;
    let rs = ds.root_system().clone();
    let reg = ds.registry();
    let delta = expr("Delta(2,2)")?;
    let soc = reg.socle(&delta, 1).ok_or_else(|| missing("socle of Δ(2,2)"))?;
    c.cite_fact(soc);
    let restricted = soc
        .factors
        .iter()
        .all(|f| f.twist == 0 && rs.is_restricted(&f.weight, 2, 1));
    c.claim(
        "every constituent of soc_G Δ(2,2) is simple over G1",
        restricted,
        soc.factors.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(" + "),
    );
    let count: Vec<Vec<i64>> = soc.factors.iter().map(|f| vec![f.mult as i64]).collect();
    c.identity(
        "G1 socle constituents of T(2,2) (at least those of soc_G Δ(2,2))",
        count,
        Relation::Ge,
        vec![vec![2]],
    );

    // T(2,2) is a summand of St ⊗ St, so its G1 socle sits in that of St ⊗ St.
    let st = ds.table().simple_character(&w(1, 1))?;
    let top_mult = small(&st.tensor(&st)?.multiplicity(&w(2, 2)))?;
    c.eq("multiplicity of (2,2) in ch St ⊗ St", vec![vec![top_mult]], vec![vec![1]]);
    let st_soc = reg
        .socle_series_g1(&expr("St*St")?, 1)
        .ok_or_else(|| missing("G1 socle of St*St"))?;
    c.cite_fact(st_soc);
    for f in &soc.factors {
        let as_expr = expr(&simple_label(&f.weight))?;
        let avail: i64 = st_soc
            .summands
            .iter()
            .filter(|(e, _)| e == &as_expr)
            .map(|(_, m)| *m as i64)
            .sum();
        c.identity(
            format!("{f} in soc_G Δ(2,2) fits in soc_G1(St ⊗ St)"),
            vec![vec![f.mult as i64]],
            Relation::Le,
            vec![vec![avail]],
        );
    }
    c.value("dim Δ(2,2)", small(&weyl_dimension(&rs, &w(2, 2))?)?);
    c.value("dim Q1(0,0) (not compared with dim T(2,2))", match ds.pim_dimensions() {
        Ok(d) => json!(small(&d[&w(0, 0)])?),
        Err(_) => Value::Null,
    });
    Ok(())
}
