use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::adjoint::induced_adjoint;
use crate::arrangement::{Arrangement, InvariantBundle, SemiLattice};
use crate::cli::io::{load_arrangement, to_pretty, AnyArrangement, ElemJson};
use crate::cli::render::{render_svg, Window};
use crate::cli::report;
use crate::cli::{parse_order, Check, Cli, Command, Common};
use crate::error::{Error, Result};
use crate::exactq::field::parse_rational;
use crate::extension::{classify_extensions, verify_classification, verify_monotonicity, verify_product_extension, VerificationReport};
use crate::finitefield::{count_complement, eval_at, ff_convolution_spot_check, matches_count, reduce_mod_p, verify_convolution};
use crate::nbc::{cij_via_nbc, circuit_catalog, nbc_counts, nbc_sets};
use crate::restriction::{classify_restrictions, restrict_to_coefficients, verify_restriction_classification, verify_restriction_monotonicity};

/// What a command produced: the text to write and whether every check in
/// it passed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub passed: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Self { text, passed: true }
    }

    fn json(v: &Value, passed: bool) -> Self {
        Self { text: to_pretty(v), passed }
    }
}

pub fn run(cli: &Cli) -> Result<Output> {
    let path = cli
        .common
        .input
        .as_deref()
        .ok_or_else(|| Error::parse("--input", "an arrangement file is required"))?;
    let any = load_arrangement(path)?;
    match (&cli.command, any) {
        (Command::FfCount { prime, budget }, AnyArrangement::Rational(a)) => {
            let p = prime.ok_or_else(|| Error::parse("--prime", "required for a rational arrangement"))?;
            let ap = reduce_mod_p(&a, p)?;
            let n = count_complement(&ap, *budget)?;
            let expected = eval_at(&crate::arrangement::char_poly(&a), p);
            Ok(Output {
                text: format!("{n}\n"),
                passed: matches_count(&expected, n),
            })
        }
        (Command::FfCount { prime, budget }, AnyArrangement::Prime(ap)) => {
            let p = ap.field().modulus();
            if prime.is_some_and(|q| q != p) {
                return Err(Error::BadPrime {
                    p: prime.unwrap_or(p),
                    reason: format!("the file is over F_{p}"),
                });
            }
            Ok(Output::ok(format!("{}\n", count_complement(&ap, *budget)?)))
        }
        (Command::Render { window }, any) => {
            let a = any.rational()?;
            let w = window.as_deref().map(Window::parse).transpose()?;
            Ok(Output::ok(render_svg(&a, w.as_ref())?))
        }
        (
            Command::Verify {
                check: Check::Convolution,
                spot_prime,
                budget,
                ..
            },
            any,
        ) => {
            let mut doc = match &any {
                AnyArrangement::Rational(a) => convolution_json(a)?,
                AnyArrangement::Prime(a) => convolution_json(a)?,
            };
            let mut passed = doc["equal"] == json!(true);
            if let Some(p) = spot_prime {
                let a = any.rational()?;
                let spot = ff_convolution_spot_check(&a, *p, *budget)?;
                passed &= spot.equal;
                doc["spot"] = serde_json::to_value(&spot).expect("serializable");
            }
            doc["passed"] = json!(passed);
            Ok(Output::json(&doc, passed))
        }
        (command, AnyArrangement::Rational(a)) => run_generic(command, &cli.common, &a),
        (command, AnyArrangement::Prime(a)) => run_generic(command, &cli.common, &a),
    }
}

fn convolution_json<F: ElemJson>(a: &Arrangement<F>) -> Result<Value> {
    let c = verify_convolution(a)?;
    Ok(json!({
        "check": "convolution",
        "lhs": c.lhs.to_text(),
        "rhs": c.rhs.to_text(),
        "equal": c.equal,
    }))
}

fn rationals_in<F: ElemJson>(field: &F, s: &str, flag: &str) -> Result<Vec<F::Elem>> {
    s.split(',')
        .map(|t| {
            parse_rational(t.trim())
                .and_then(|q| field.lift(&q))
                .ok_or_else(|| Error::parse(flag, format!("not a number in this field: {t:?}")))
        })
        .collect()
}

fn label_order<F: ElemJson>(a: &Arrangement<F>, order: Option<&str>) -> Result<Vec<usize>> {
    let order = match order {
        Some(s) => parse_order(s)?,
        None => {
            let mut l = a.labels().to_vec();
            l.sort_unstable();
            l
        }
    };
    a.order_ranks(Some(&order))?;
    Ok(order)
}

fn run_generic<F: ElemJson>(command: &Command, common: &Common, a: &Arrangement<F>) -> Result<Output> {
    let seed = common.seed;
    let trials = common.trials as usize;
    match command {
        Command::Invariants => Ok(Output::json(&report::invariants_json(a, &SemiLattice::build(a)), true)),
        Command::Lattice => Ok(Output::ok(SemiLattice::build(a).to_dot())),
        Command::Nbc { order } => {
            let order = label_order(a, order.as_deref())?;
            let catalog = circuit_catalog(a, Some(&order))?;
            let sets = (0..=a.dim())
                .map(|k| nbc_sets(a, k, Some(&order)))
                .collect::<Result<Vec<_>>>()?;
            let w_plus = InvariantBundle::from_lattice(&SemiLattice::build(a)).w_plus;
            Ok(Output::json(&report::nbc_json(&order, &catalog, &sets, &w_plus), true))
        }
        Command::Adjoint => Ok(Output::json(&report::adjoint_json(&induced_adjoint(a)?), true)),
        Command::Classify => {
            let r = classify_extensions(a)?;
            Ok(Output::json(&report::classification_json(&r, seed), true))
        }
        Command::ClassifyRestrictions => {
            let r = classify_restrictions(a, seed)?;
            Ok(Output::json(&report::restrictions_json(&r, a.field(), seed), true))
        }
        Command::Restrict { normal, offset } => {
            let field = a.field();
            let alpha = rationals_in(field, normal, "--normal")?;
            let [offset]: [F::Elem; 1] = rationals_in(field, offset, "--offset")?
                .try_into()
                .map_err(|_| Error::parse("--offset", "expected one number"))?;
            let r = restrict_to_coefficients(a, alpha, offset)?;
            Ok(Output::json(&report::restriction_json(&r), true))
        }
        Command::Verify { check, order, .. } => {
            let (r, violations) = match check {
                Check::Classification if a.is_essential() => (verify_classification(a, trials, seed)?, vec![]),
                Check::Classification => (verify_product_extension(a, trials, seed)?, vec![]),
                Check::Monotonicity => (VerificationReport::default(), verify_monotonicity(a)?),
                Check::Restrictions => (
                    verify_restriction_classification(a, trials, seed)?,
                    verify_restriction_monotonicity(a)?,
                ),
                Check::Nbc => (verify_nbc(a, order.as_deref(), trials, seed)?, vec![]),
                Check::Convolution => unreachable!("handled by the caller"),
            };
            let name = format!("{check:?}").to_lowercase();
            let doc = report::verification_json(&name, seed, trials, &r, &violations);
            Ok(Output::json(&doc, r.passed() && violations.is_empty()))
        }
        Command::FfCount { .. } | Command::Render { .. } => unreachable!("handled by the caller"),
    }
}

/// NBC counts against `w⁺` and the NBC formula for `c_ij` against the
/// Whitney polynomial, for the label order, `order` if given, and `trials`
/// seeded random orders.
fn verify_nbc<F: ElemJson>(a: &Arrangement<F>, order: Option<&str>, trials: usize, seed: u64) -> Result<VerificationReport> {
    let bundle = InvariantBundle::from_lattice(&SemiLattice::build(a));
    let mut orders = vec![label_order(a, None)?];
    if order.is_some() {
        orders.push(label_order(a, order)?);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let mut o = orders[0].clone();
        o.shuffle(&mut rng);
        orders.push(o);
    }
    let mut report = VerificationReport {
        strata: 1,
        ..Default::default()
    };
    for o in &orders {
        report.comparisons += 1;
        let counts = nbc_counts(a, Some(o))?;
        if counts != bundle.w_plus {
            report.failures.push(format!("order {o:?}: NBC counts {counts:?} != wPlus {:?}", bundle.w_plus));
        }
        let cij = cij_via_nbc(a, Some(o))?;
        if cij != bundle.cij {
            report.failures.push(format!("order {o:?}: c_ij via NBC {cij:?} != {:?}", bundle.cij));
        }
    }
    Ok(report)
}
