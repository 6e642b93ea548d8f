//! The full verification suite: every embedded table and cross-claim,
//! checked by exact computation and folded into one [`Report`].
//!
//! Each criterion is an independent runner so the CLI can parallelize them
//! and the acceptance tests can assert them one by one. Verdicts are
//! `pass`/`fail` for the hard criteria; `flagged` marks documented
//! discrepancies and degenerate parameter values that are reported rather
//! than asserted (the corrected tables, the two `A6_12` versions, and
//! representatives whose extension picks up an annihilator larger than the
//! adjoined space).

use crate::algebra::Algebra;
use crate::catalog;
use crate::cohomology::{
    check_extension_admissible, cocycle_space, cohomology_basis, is_cocycle, BilinearForm,
};
use crate::dsl;
use crate::extensions::{
    annihilator_identity_holds, central_extension_unchecked, recover_quotient, tables_equal,
};
use crate::field::{q, qr, Field, Q, Scalar};
use crate::iso::{
    certify_noniso, fingerprint, iso_by_generator_image, iso_search_fp, iso_search_rational,
    FpIsoOutcome, NonIsoOutcome, RationalSearchConfig,
};
use crate::linalg::{complement_in_span, Matrix, RowSpace};
use crate::report::{Report, ReportItem, Verdict};
use crate::rng::{SplitMix64, DEFAULT_SEED};

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    pub primes: Vec<u64>,
    pub height_bound: i64,
    /// Random vectors tried by one-generation witness searches.
    pub witness_attempts: usize,
    /// Worker threads for independent criteria; 1 keeps the run serial.
    pub jobs: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: DEFAULT_SEED,
            primes: vec![5, 7],
            height_bound: 4,
            witness_attempts: 64,
            jobs: 1,
        }
    }
}

/// The individually runnable checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Criterion {
    CohomologyDim4,
    CohomologyDim5,
    Membership,
    ExtensionReconstruction,
    RoundTrip,
    IsoNote,
    PairwiseSeparation,
    CocycleIff,
    AnnihilatorIdentity,
    AutomorphismForms,
    Parser,
}

impl Criterion {
    pub fn all() -> [Criterion; 11] {
        use Criterion::*;
        [
            CohomologyDim4,
            CohomologyDim5,
            Membership,
            ExtensionReconstruction,
            RoundTrip,
            IsoNote,
            PairwiseSeparation,
            CocycleIff,
            AnnihilatorIdentity,
            AutomorphismForms,
            Parser,
        ]
    }

    pub fn title(&self) -> &'static str {
        match self {
            Criterion::CohomologyDim4 => "cohomology dimensions, dimension 4",
            Criterion::CohomologyDim5 => "cohomology dimensions, dimension 5",
            Criterion::Membership => "membership properties of every catalog instance",
            Criterion::ExtensionReconstruction => "extension representatives rebuild the tables",
            Criterion::RoundTrip => "annihilator quotient recovers the base",
            Criterion::IsoNote => "A6_08(3/2) is isomorphic to A6_09(3/2)",
            Criterion::PairwiseSeparation => "pairwise separation of dimension-5 instances",
            Criterion::CocycleIff => "extension is assosymmetric iff the form is a cocycle",
            Criterion::AnnihilatorIdentity => "Ann(A_theta) = (Ann(theta) meet Ann(A)) + V",
            Criterion::AutomorphismForms => "automorphism forms are multiplicative",
            Criterion::Parser => "parser round-trip and positioned errors",
        }
    }

    pub fn run(&self, cfg: &VerifyConfig) -> Vec<ReportItem> {
        match self {
            Criterion::CohomologyDim4 => cohomology_dim4(),
            Criterion::CohomologyDim5 => cohomology_dim5(),
            Criterion::Membership => membership(cfg),
            Criterion::ExtensionReconstruction => extension_reconstruction(),
            Criterion::RoundTrip => round_trip(cfg),
            Criterion::IsoNote => iso_note(cfg),
            Criterion::PairwiseSeparation => pairwise_separation(cfg),
            Criterion::CocycleIff => cocycle_iff(cfg),
            Criterion::AnnihilatorIdentity => annihilator_identity(),
            Criterion::AutomorphismForms => automorphism_forms(cfg),
            Criterion::Parser => parser_checks(),
        }
    }
}

fn verdict(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

fn dims_item(name: &str, params: &[Q], want: (usize, usize, usize), provenance: &str) -> ReportItem {
    let a = catalog::get(name, params).expect("catalog entry");
    let got = cohomology_basis(&a).dims();
    ReportItem::new(
        format!("dim (Z2, B2, H2) of {}", a.name().unwrap()),
        format!("{want:?}"),
        format!("{got:?}"),
        verdict(got == want),
        provenance,
    )
}

fn cohomology_dim4() -> Vec<ReportItem> {
    let prov = "cohomology table, dimension 4";
    let mut items = vec![
        dims_item("A4_01", &[], (6, 3, 3), prov),
        dims_item("A4_02", &[], (4, 3, 1), prov),
        dims_item("A4_03", &[], (4, 3, 1), prov),
        dims_item("A4_04", &[q(0)], (4, 3, 1), prov),
        dims_item("A4_04", &[q(2)], (4, 3, 1), prov),
        dims_item("A4_04", &[q(-1)], (4, 3, 1), prov),
        dims_item("A4_04", &[q(1)], (5, 3, 2), prov),
        dims_item("A4_05", &[], (4, 3, 1), prov),
        dims_item("A4_06", &[], (4, 3, 1), prov),
    ];
    // The representative classes used by the extension machinery really are
    // H2 bases: B2 plus the representatives spans Z2 independently.
    for (name, params, reps) in [
        ("A4_01", Vec::<Q>::new(), catalog::nablas_a4_01().to_vec()),
        ("A4_04", vec![q(1)], catalog::nablas_a4_04_1().to_vec()),
    ] {
        let a = catalog::get(name, &params).unwrap();
        let rep = cohomology_basis(&a);
        let mut span = RowSpace::new(a.field(), a.dim() * a.dim());
        for b in &rep.b2 {
            span.insert(&b.flatten());
        }
        let mut independent = true;
        for r in &reps {
            if !span.insert(&r.flatten()) {
                independent = false;
            }
        }
        let spans_z2 = rep.z2.iter().all(|z| span.contains(&z.flatten()));
        items.push(ReportItem::new(
            format!("representative classes of {}", a.name().unwrap()),
            "independent mod B2 and spanning H2",
            format!("independent: {independent}, spans: {spans_z2}"),
            verdict(independent && spans_z2),
            "extension representatives",
        ));
    }
    items
}

fn cohomology_dim5() -> Vec<ReportItem> {
    let prov = "cohomology table, dimension 5";
    let mut items = vec![
        dims_item("A5_01", &[], (6, 4, 2), prov),
        dims_item("A5_02", &[q(0)], (6, 4, 2), prov),
        dims_item("A5_02", &[q(2)], (6, 4, 2), prov),
        dims_item("A5_02", &[q(1)], (7, 4, 3), prov),
        dims_item("A5_03", &[], (6, 4, 2), prov),
        dims_item("A5_04", &[q(0)], (6, 4, 2), prov),
        dims_item("A5_04", &[q(1)], (6, 4, 2), prov),
        dims_item("A5_06", &[], (6, 4, 2), prov),
        dims_item("A5_07", &[], (6, 4, 2), prov),
    ];
    for (al, be) in catalog::a5_05_generic_samples(3) {
        items.push(dims_item("A5_05", &[al, be], (6, 4, 2), prov));
    }
    for (al, be) in catalog::a5_05_special_locus_samples(5) {
        items.push(dims_item("A5_05", &[al, be], (7, 4, 3), prov));
    }
    // A landmark pair of locus points called out explicitly.
    items.push(dims_item("A5_05", &[q(1), q(1)], (7, 4, 3), prov));
    items.push(dims_item("A5_05", &[q(0), qr(1, 2)], (7, 4, 3), prov));

    // The two sign variants of one listed Z2 element of A5_01: the table
    // prints one sign in the Z2 row and the other in the H2 row. The
    // computation settles which variant is the cocycle.
    let a = catalog::get("A5_01", &[]).unwrap();
    let minus = BilinearForm::from_deltas(
        5,
        Field::Rational,
        &[
            (1, 4, Scalar::Rational(q(1))),
            (3, 1, Scalar::Rational(q(-1))),
            (4, 1, Scalar::Rational(q(-1))),
        ],
    );
    let plus = BilinearForm::from_deltas(
        5,
        Field::Rational,
        &[
            (1, 4, Scalar::Rational(q(1))),
            (3, 1, Scalar::Rational(q(-1))),
            (4, 1, Scalar::Rational(q(1))),
        ],
    );
    let minus_in = is_cocycle(&a, &minus).unwrap().passed();
    let plus_in = is_cocycle(&a, &plus).unwrap().passed();
    items.push(ReportItem::new(
        "sign of the D14 - D31 +- D41 element of Z2(A5_01)",
        "exactly one sign variant is a cocycle",
        format!("D14-D31-D41 in Z2: {minus_in}; D14-D31+D41 in Z2: {plus_in}"),
        if minus_in != plus_in {
            Verdict::Flagged
        } else {
            Verdict::Fail
        },
        "conflicting signs between the listed Z2 and H2 rows; settled by computation",
    ));
    items
}

fn membership(cfg: &VerifyConfig) -> Vec<ReportItem> {
    let mut items = Vec::new();
    let mut instances: Vec<(Algebra, &'static str)> = Vec::new();
    for e in catalog::entries() {
        let samples = catalog::sample_parameters(e.name, 3).expect("known name");
        for params in samples {
            instances.push((e.instantiate(&params).unwrap(), e.provenance));
        }
    }
    for (al, be) in catalog::a5_05_special_locus_samples(5) {
        instances.push((
            catalog::get("A5_05", &[al, be]).unwrap(),
            "special locus of the A5_05 family",
        ));
    }
    for (a, prov) in instances {
        let name = a.name().unwrap().to_string();
        let assoc = a.is_assosymmetric();
        let power = a.power_sequence();
        let nilp = power.nilpotent && power.nilpotency_index.unwrap_or(usize::MAX) <= a.dim() + 1;
        let gen_e1 = a
            .generated_subalgebra(&a.basis_vec(0))
            .map(|(_, plan)| plan.is_some())
            .unwrap_or(false);
        let ann = a.annihilator().len();
        let ok = assoc && nilp && gen_e1 && ann >= 1;
        items.push(ReportItem::new(
            name,
            "assosymmetric; nilpotent (index <= dim+1); generated by e1; dim Ann >= 1",
            format!(
                "assosymmetric: {assoc}; nilpotent: {} (powers {:?}); e1 generates: {gen_e1}; dim Ann = {ann}",
                power.nilpotent, power.dims
            ),
            verdict(ok),
            prov,
        ));
    }
    // The uncorrected 3-dimensional table really is defective: over F5 the
    // witness search is exhaustive, so this is a proof, not a heuristic.
    let mut defective = Algebra::zero_algebra(3, Field::Rational);
    *defective.c_mut(0, 0, 2) = Scalar::one(Field::Rational);
    *defective.c_mut(1, 0, 2) = Scalar::one(Field::Rational);
    let over_q = defective.one_generated_witness(cfg.witness_attempts, cfg.seed);
    let over_f5 = defective
        .reduce_mod_p(5)
        .unwrap()
        .one_generated_exhaustive_fp()
        .unwrap();
    let stored = catalog::get("A3_01", &[]).unwrap();
    let quotient_matches = tables_equal(
        &recover_quotient(&catalog::get("A5_01", &[]).unwrap()).unwrap(),
        &stored,
    );
    items.push(ReportItem::new(
        "A3_01 correction",
        "table e1e1=e3, e2e1=e3 is not one-generated; stored table equals A5_01 / Ann(A5_01)",
        format!(
            "witness over Q: {}; exhaustive witness over F5: {}; quotient equals stored table: {}",
            over_q.is_some(),
            over_f5.is_some(),
            quotient_matches
        ),
        if over_q.is_none() && over_f5.is_none() && quotient_matches {
            Verdict::Flagged
        } else {
            Verdict::Fail
        },
        "corrected catalog entry",
    ));
    items
}

fn extension_reconstruction() -> Vec<ReportItem> {
    let mut items = Vec::new();
    for case in catalog::extension_cases() {
        let ext = central_extension_unchecked(&case.base, &case.forms);
        let cocycles_ok = case
            .forms
            .iter()
            .all(|t| is_cocycle(&case.base, t).unwrap().passed());
        let equal = tables_equal(&ext, &case.expected);
        let assoc = ext.is_assosymmetric();
        items.push(ReportItem::new(
            case.label.clone(),
            format!("literal table equality with {}", case.expected.name().unwrap()),
            format!("cocycles: {cocycles_ok}; table equal: {equal}; assosymmetric: {assoc}"),
            verdict(cocycles_ok && equal && assoc),
            "extension representatives",
        ));
    }
    // The corrected A6_13 versus the defective variant that omits the
    // 1/2 e5 term of e4*e1.
    let mut printed = catalog::get("A6_13", &[]).unwrap();
    *printed.c_mut(3, 0, 4) = Scalar::zero(Field::Rational); // drop 1/2 e5
    let printed_fails = !printed.is_assosymmetric();
    items.push(ReportItem::new(
        "A6_13 correction",
        "the variant with e4*e1 = e6 fails the defining identities; the stored table passes",
        format!(
            "variant assosymmetric: {}; stored assosymmetric: {}",
            !printed_fails,
            catalog::get("A6_13", &[]).unwrap().is_assosymmetric()
        ),
        if printed_fails {
            Verdict::Flagged
        } else {
            Verdict::Fail
        },
        "corrected catalog entry",
    ));
    items
}

fn round_trip(cfg: &VerifyConfig) -> Vec<ReportItem> {
    let mut items = Vec::new();
    for case in catalog::extension_cases() {
        let adm = check_extension_admissible(&case.base, &case.forms).expect("cocycles");
        let ext = central_extension_unchecked(&case.base, &case.forms);
        let subject = format!("quotient of {}", case.label);
        if !adm.admissible() {
            let ann = ext.annihilator().len();
            items.push(ReportItem::new(
                subject,
                "degenerate representative: annihilator exceeds the adjoined space",
                format!(
                    "Ann(theta) meets Ann(base): {}; dim Ann(extension) = {ann}; quotient collapses below the base",
                    !adm.ann_intersection_trivial
                ),
                Verdict::Flagged,
                "two-dimensional-annihilator filter",
            ));
            continue;
        }
        let back = recover_quotient(&ext).expect("nontrivial annihilator");
        let (witness, how) = if tables_equal(&back, &case.base) {
            // generator-image search with the derived plan; the identity
            // image certifies immediately
            let plan = back
                .generated_subalgebra(&back.basis_vec(0))
                .ok()
                .and_then(|(_, p)| p);
            match plan {
                Some(plan) => {
                    let img = plan.generator.clone();
                    match iso_by_generator_image(&back, &plan, &case.base, &img) {
                        Ok(w) => (Some(w), "identity witness from generator image"),
                        Err(_) => (None, "generator-image certification failed"),
                    }
                }
                None => (None, "no generator plan"),
            }
        } else {
            let rc = RationalSearchConfig {
                height_bound: cfg.height_bound,
                primes: cfg.primes.clone(),
                ..RationalSearchConfig::default()
            };
            match iso_search_rational(&back, &case.base, &rc) {
                Ok(Some(w)) => (Some(w), "witness found by rational search"),
                _ => (None, "no witness found"),
            }
        };
        items.push(ReportItem::new(
            subject,
            format!("isomorphic to {}", case.base.name().unwrap_or("base")),
            format!("{how}; witness verified: {}", witness.is_some()),
            verdict(witness.is_some()),
            "annihilator quotient inverts central extension",
        ));
    }
    items
}

fn matrix_string(m: &Matrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| {
            let row: Vec<String> = (0..m.cols()).map(|j| m.at(i, j).to_string()).collect();
            format!("[{}]", row.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

fn iso_note(cfg: &VerifyConfig) -> Vec<ReportItem> {
    let mut items = Vec::new();
    let a = catalog::get_allow_excluded("A6_08", &[qr(3, 2)]).unwrap();
    let b = catalog::get_allow_excluded("A6_09", &[qr(3, 2)]).unwrap();
    let rc = RationalSearchConfig {
        height_bound: cfg.height_bound,
        primes: cfg.primes.clone(),
        ..RationalSearchConfig::default()
    };
    let found = iso_search_rational(&a, &b, &rc)
        .ok()
        .flatten()
        .or_else(|| iso_search_rational(&b, &a, &rc).ok().flatten());
    match &found {
        Some(w) => items.push(ReportItem::new(
            "A6_08(3/2) isomorphic to A6_09(3/2)",
            "exact rational witness",
            format!("{} -> {}: {}", w.source, w.target, matrix_string(&w.matrix)),
            Verdict::Pass,
            "coincidence note in the classification list",
        )),
        None => items.push(ReportItem::new(
            "A6_08(3/2) isomorphic to A6_09(3/2)",
            "exact rational witness",
            "no witness found",
            Verdict::Fail,
            "coincidence note in the classification list",
        )),
    }
    // the same witness exists after reduction mod the first good prime
    if let Some(&p) = cfg.primes.first() {
        let got = matches!(iso_search_fp(&a, &b, p), Ok(FpIsoOutcome::Witness(_)));
        items.push(ReportItem::new(
            format!("A6_08(3/2) isomorphic to A6_09(3/2) over F{p}"),
            "witness found by exhaustive generator-image search",
            format!("witness found: {got}"),
            verdict(got),
            "finite-field cross-check",
        ));
    }
    items
}

fn family_of(name: &str) -> &str {
    name.split('(').next().unwrap_or(name)
}

fn pairwise_separation(cfg: &VerifyConfig) -> Vec<ReportItem> {
    let mut items = Vec::new();
    let mut instances = Vec::new();
    for e in catalog::main_entries().filter(|e| e.dim == 5) {
        for params in catalog::sample_parameters(e.name, 3).unwrap() {
            instances.push(e.instantiate(&params).unwrap());
        }
    }
    let mut unseparated: Vec<String> = Vec::new();
    let mut by_fingerprint = 0usize;
    let mut by_exhaustion = 0usize;
    for i in 0..instances.len() {
        for j in i + 1..instances.len() {
            let a = &instances[i];
            let b = &instances[j];
            let pair = format!("{} vs {}", a.name().unwrap(), b.name().unwrap());
            match certify_noniso(a, b, &cfg.primes) {
                NonIsoOutcome::FingerprintMismatch { .. } | NonIsoOutcome::DimensionMismatch { .. } => {
                    by_fingerprint += 1;
                }
                NonIsoOutcome::FpExhaustion { primes } => {
                    by_exhaustion += 1;
                    items.push(ReportItem::pass(
                        pair,
                        "separated",
                        format!("equal fingerprints; exhaustive failure over {primes:?}"),
                        "finite-field separation (heuristic for extension fields)",
                    ));
                }
                NonIsoOutcome::NotCertified { detail } => {
                    let same_family =
                        family_of(a.name().unwrap()) == family_of(b.name().unwrap());
                    unseparated.push(format!("{pair} ({detail})"));
                    items.push(ReportItem::new(
                        pair,
                        "separated, or unseparated within one parametric family",
                        detail,
                        if same_family { Verdict::Flagged } else { Verdict::Fail },
                        "pairwise separation",
                    ));
                }
            }
        }
    }
    items.insert(
        0,
        ReportItem::new(
            format!("pairwise separation of {} dimension-5 instances", instances.len()),
            "every pair separated outside parametric families",
            format!(
                "{by_fingerprint} pairs by fingerprint; {by_exhaustion} pairs by exhaustion; unseparated: {}",
                if unseparated.is_empty() {
                    "none".to_string()
                } else {
                    unseparated.join("; ")
                }
            ),
            verdict(unseparated.is_empty()),
            "pairwise separation",
        ),
    );
    items
}

/// Seeded iff-check: half the forms sampled inside `Z^2`, half shifted off
/// it; the extension must satisfy the identities exactly for the first kind
/// and fail them for the second. The annihilator identity is checked on
/// every one of these extensions as well.
fn cocycle_iff(cfg: &VerifyConfig) -> Vec<ReportItem> {
    let mut items = Vec::new();
    let mut rng = SplitMix64::new(cfg.seed ^ 0x1f1);
    for e in catalog::main_entries().filter(|e| e.dim == 4) {
        let params = catalog::sample_parameters(e.name, 1).unwrap();
        let a = e.instantiate(&params[0]).unwrap();
        let n = a.dim();
        let zflat: Vec<Vec<Scalar>> = cocycle_space(&a)
            .iter()
            .map(BilinearForm::flatten)
            .collect();
        let mut all = Vec::new();
        for i in 0..n * n {
            let mut v = vec![Scalar::zero(Field::Rational); n * n];
            v[i] = Scalar::one(Field::Rational);
            all.push(v);
        }
        let compl = complement_in_span(&all, &zflat).unwrap();
        let mut iff_ok = 0usize;
        let mut ann_ok = 0usize;
        let trials = 50;
        for trial in 0..trials {
            let mut flat = vec![Scalar::zero(Field::Rational); n * n];
            for z in &zflat {
                let c = Scalar::Rational(rng.small_rational(3));
                for (idx, v) in z.iter().enumerate() {
                    flat[idx] = flat[idx].add(&c.mul(v));
                }
            }
            let want_cocycle = trial % 2 == 0;
            if !want_cocycle {
                let pick = rng.below(compl.len() as u64) as usize;
                let c = Scalar::Rational(rng.small_rational_nonzero(3));
                for (idx, v) in compl[pick].iter().enumerate() {
                    flat[idx] = flat[idx].add(&c.mul(v));
                }
            }
            let theta = BilinearForm::from_flat(n, Field::Rational, &flat);
            let is_z2 = is_cocycle(&a, &theta).unwrap().passed();
            let ext = central_extension_unchecked(&a, std::slice::from_ref(&theta));
            if is_z2 == want_cocycle && ext.is_assosymmetric() == is_z2 {
                iff_ok += 1;
            }
            if annihilator_identity_holds(&a, std::slice::from_ref(&theta), &ext) {
                ann_ok += 1;
            }
        }
        items.push(ReportItem::new(
            format!("iff property on {}", a.name().unwrap()),
            format!("{trials}/{trials} forms: assosymmetric iff cocycle; annihilator identity throughout"),
            format!("iff held {iff_ok}/{trials}; annihilator identity held {ann_ok}/{trials}"),
            verdict(iff_ok == trials && ann_ok == trials),
            "seeded forms half inside Z2, half outside",
        ));
    }
    items
}

fn annihilator_identity() -> Vec<ReportItem> {
    let mut items = Vec::new();
    for case in catalog::extension_cases() {
        let ext = central_extension_unchecked(&case.base, &case.forms);
        let holds = annihilator_identity_holds(&case.base, &case.forms, &ext);
        items.push(ReportItem::new(
            format!("annihilator identity for {}", case.label),
            "exact subspace equality",
            format!("holds: {holds}"),
            verdict(holds),
            "annihilator of a central extension",
        ));
    }
    items
}

fn automorphism_forms(cfg: &VerifyConfig) -> Vec<ReportItem> {
    let mut rng = SplitMix64::new(cfg.seed ^ 0xa07);
    let mut items = Vec::new();
    let trials = 10usize;
    let sample = |rng: &mut SplitMix64| -> (Q, Q, Q, Q, Q) {
        let mut x = rng.small_rational(3);
        if x == q(0) {
            x = q(1);
        }
        (
            x,
            rng.small_rational(3),
            rng.small_rational(3),
            rng.small_rational(3),
            rng.small_rational(3),
        )
    };

    let mut check = |label: &str, run: &mut dyn FnMut(usize, &mut SplitMix64) -> bool| {
        let mut ok = 0;
        for trial in 0..trials {
            if run(trial, &mut rng) {
                ok += 1;
            }
        }
        items.push(ReportItem::new(
            format!("automorphism form of {label}"),
            format!("{trials}/{trials} seeded instantiations multiplicative (x != 0)"),
            format!("{ok}/{trials}"),
            verdict(ok == trials),
            "parametric automorphism matrices, verified pointwise",
        ));
    };

    let a4_01 = catalog::get("A4_01", &[]).unwrap();
    check("A4_01", &mut |_, rng| {
        let (x, y, z, t, _) = sample(rng);
        let m = catalog::aut_a4_01(&x, &y, &z, &t);
        m.is_invertible() && a4_01.is_homomorphism(&a4_01, &m).unwrap().passed()
    });

    let a4_04_1 = catalog::get("A4_04", &[q(1)]).unwrap();
    check("A4_04(1)", &mut |_, rng| {
        let (x, y, z, t, _) = sample(rng);
        let m = catalog::aut_a4_04_1(&x, &y, &z, &t);
        m.is_invertible() && a4_04_1.is_homomorphism(&a4_04_1, &m).unwrap().passed()
    });

    let a5_02_1 = catalog::get("A5_02", &[q(1)]).unwrap();
    check("A5_02(1)", &mut |_, rng| {
        let (x, y, z, t, w) = sample(rng);
        let m = catalog::aut_a5_02_1(&x, &y, &z, &t, &w);
        m.is_invertible() && a5_02_1.is_homomorphism(&a5_02_1, &m).unwrap().passed()
    });

    let mut locus = catalog::a5_05_special_locus_samples(7);
    locus.push((q(1), q(1)));
    locus.push((q(1), qr(3, 2)));
    locus.push((q(0), qr(1, 2)));
    check("A5_05(alpha,beta) on the special locus", &mut |trial, rng| {
        let (al, be) = &locus[trial % locus.len()];
        let a = catalog::get("A5_05", &[al.clone(), be.clone()]).unwrap();
        let (x, y, z, t, v) = sample(rng);
        let m = catalog::aut_a5_05(al, be, &x, &y, &z, &t, &v);
        m.is_invertible() && a.is_homomorphism(&a, &m).unwrap().passed()
    });

    let a5_06 = catalog::get("A5_06", &[]).unwrap();
    check("A5_06", &mut |_, rng| {
        let (x, y, z, v, w) = sample(rng);
        let m = catalog::aut_a5_06(&x, &y, &z, &v, &w);
        m.is_invertible() && a5_06.is_homomorphism(&a5_06, &m).unwrap().passed()
    });

    let a5_07 = catalog::get("A5_07", &[]).unwrap();
    check("A5_07 (both sign branches)", &mut |trial, rng| {
        let k = if trial % 2 == 0 { 1 } else { 2 };
        let (x, y, z, t, _) = sample(rng);
        let m = catalog::aut_a5_07(k, &x, &y, &z, &t);
        m.is_invertible() && a5_07.is_homomorphism(&a5_07, &m).unwrap().passed()
    });

    items
}

fn parser_checks() -> Vec<ReportItem> {
    let mut items = Vec::new();
    let mut round_trips = 0usize;
    let mut total = 0usize;
    let mut first_failure = String::new();
    for e in catalog::entries() {
        for params in catalog::sample_parameters(e.name, 3).unwrap() {
            let a = e.instantiate(&params).unwrap();
            total += 1;
            let text = dsl::serialize_algebra(&a);
            match dsl::parse_algebra(&text) {
                Ok(b) if tables_equal(&a, &b) && dsl::serialize_algebra(&b) == text => {
                    round_trips += 1
                }
                Ok(_) => {
                    if first_failure.is_empty() {
                        first_failure = format!("{}: reparse differs", a.name().unwrap());
                    }
                }
                Err(err) => {
                    if first_failure.is_empty() {
                        first_failure = format!("{}: {err}", a.name().unwrap());
                    }
                }
            }
        }
    }
    items.push(ReportItem::new(
        "parse(serialize(a)) = a over the whole catalog",
        format!("{total}/{total} round trips exact"),
        format!(
            "{round_trips}/{total}{}",
            if first_failure.is_empty() {
                String::new()
            } else {
                format!("; first failure: {first_failure}")
            }
        ),
        verdict(round_trips == total),
        "text format",
    ));

    let canned: [(&str, &str, usize); 5] = [
        ("bad header keyword", "algbra X dim 2\ne1*e1 = e2", 1),
        ("missing equals sign", "algebra X dim 2\ne1*e1 e2", 2),
        ("index out of range", "algebra X dim 2\ne1*e1 = e3", 2),
        (
            "duplicate product line",
            "algebra X dim 2\ne1*e1 = e2\ne1*e1 = e2",
            3,
        ),
        ("non-rational coefficient", "algebra X dim 2\ne1*e1 = 0.5 e2", 2),
    ];
    for (what, text, want_line) in canned {
        let got = dsl::parse_algebra(text);
        let ok = matches!(&got, Err(e) if e.line == want_line && e.col >= 1);
        items.push(ReportItem::new(
            format!("malformed input: {what}"),
            format!("positioned error on line {want_line}"),
            match &got {
                Err(e) => format!("error at line {}, column {}: {}", e.line, e.col, e.message),
                Ok(_) => "parsed without error".to_string(),
            },
            verdict(ok),
            "text format",
        ));
    }
    items
}

/// Informational cross-checks that are reported but carry no pass/fail
/// weight of their own (each ends in a `flagged` verdict).
fn informational(cfg: &VerifyConfig) -> Vec<ReportItem> {
    let mut iso_items = Vec::new();

    // The two printed versions of A6_12 at sampled parameters.
    let rc = RationalSearchConfig {
        height_bound: cfg.height_bound,
        primes: cfg.primes.clone(),
        max_direct_candidates: 20_000,
        ..RationalSearchConfig::default()
    };
    for al in [q(0), q(1), q(2)] {
        let canon = catalog::get("A6_12", std::slice::from_ref(&al)).unwrap();
        let var = catalog::get("A6_12_variant", std::slice::from_ref(&al)).unwrap();
        let outcome = if tables_equal(&canon, &var) {
            "identical tables".to_string()
        } else if fingerprint(&canon) != fingerprint(&var) {
            "fingerprint mismatch: not isomorphic over any field extension".to_string()
        } else if let Ok(Some(w)) = iso_search_rational(&var, &canon, &rc) {
            format!("isomorphic but not identical: witness {}", matrix_string(&w.matrix))
        } else {
            let mut verdicts = Vec::new();
            for &p in &cfg.primes {
                match iso_search_fp(&var, &canon, p) {
                    Ok(FpIsoOutcome::Exhausted { .. }) => verdicts.push(format!("F{p}: exhausted")),
                    Ok(FpIsoOutcome::Witness(_)) => verdicts.push(format!("F{p}: witness")),
                    Err(e) => verdicts.push(format!("F{p}: {e}")),
                }
            }
            format!(
                "no rational witness at the default budget; {}",
                verdicts.join(", ")
            )
        };
        iso_items.push(ReportItem::new(
            format!("A6_12({al}) vs A6_12_variant({al})"),
            "outcome reported (the two printed versions need not agree)",
            outcome,
            Verdict::Flagged,
            "two differing printed tables for one family",
        ));
    }

    // A family overlap discovered by the search: A5_05(0,0) = A5_02(2).
    let a = catalog::get("A5_05", &[q(0), q(0)]).unwrap();
    let b = catalog::get("A5_02", &[q(2)]).unwrap();
    let overlap = iso_search_rational(&a, &b, &rc).ok().flatten();
    iso_items.push(ReportItem::new(
        "A5_05(0,0) vs A5_02(2)",
        "outcome reported (families may meet at special parameters)",
        match &overlap {
            Some(w) => format!("isomorphic: witness {}", matrix_string(&w.matrix)),
            None => "no witness found".to_string(),
        },
        Verdict::Flagged,
        "parametric family overlap",
    ));

    iso_items
}

/// Run everything and assemble the report. Criteria are independent; with
/// `jobs > 1` they run on a scoped thread pool and are reassembled in a
/// fixed order, so the report bytes do not depend on the worker count.
pub fn run_all(cfg: &VerifyConfig) -> Report {
    let criteria = Criterion::all();
    let mut results: Vec<Option<Vec<ReportItem>>> = vec![None; criteria.len() + 1];

    let jobs = cfg.jobs.max(1);
    if jobs <= 1 {
        for (i, c) in criteria.iter().enumerate() {
            results[i] = Some(c.run(cfg));
        }
        results[criteria.len()] = Some(informational(cfg));
    } else {
        let next = std::sync::atomic::AtomicUsize::new(0);
        let slots: Vec<std::sync::Mutex<Option<Vec<ReportItem>>>> =
            (0..criteria.len() + 1).map(|_| std::sync::Mutex::new(None)).collect();
        std::thread::scope(|scope| {
            for _ in 0..jobs.min(criteria.len() + 1) {
                scope.spawn(|| loop {
                    let i = next.fetch_add(1, std::sync::atomic::Ordering::SeqCst);
                    if i > criteria.len() {
                        break;
                    }
                    let items = if i < criteria.len() {
                        criteria[i].run(cfg)
                    } else {
                        informational(cfg)
                    };
                    *slots[i].lock().unwrap() = Some(items);
                });
            }
        });
        for (i, slot) in slots.into_iter().enumerate() {
            results[i] = slot.into_inner().unwrap();
        }
    }

    let mut report = Report {
        seed: cfg.seed,
        primes: cfg.primes.clone(),
        ..Report::default()
    };
    for (i, c) in criteria.iter().enumerate() {
        let items = results[i].take().unwrap_or_default();
        match c {
            Criterion::CohomologyDim4 | Criterion::CohomologyDim5 => {
                report.cohomology.extend(items)
            }
            Criterion::Membership | Criterion::AutomorphismForms | Criterion::Parser => {
                report.properties.extend(items)
            }
            Criterion::ExtensionReconstruction
            | Criterion::RoundTrip
            | Criterion::CocycleIff
            | Criterion::AnnihilatorIdentity => report.extensions.extend(items),
            Criterion::IsoNote | Criterion::PairwiseSeparation => {
                report.isomorphisms.extend(items)
            }
        }
    }
    report
        .isomorphisms
        .extend(results[criteria.len()].take().unwrap_or_default());
    report
}
