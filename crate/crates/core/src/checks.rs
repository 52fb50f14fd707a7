//! Seeded property suites.
//!
//! Each suite returns a [`SuiteReport`] counting the properties it checked and
//! describing every failure. Properties that could not be decided within a
//! resource guard are counted separately as skipped, never as passes.

use std::cmp::Ordering;

use num_traits::{Pow, ToPrimitive, Zero};
use rand::Rng;

use crate::gen::{self, OrdinalShape};
use crate::goodstein::{self, bignum, BaseSchedule};
use crate::numeral;
use crate::ordinal::{self, Ordinal};
use crate::slowdown::clock::{self, clock_decompose};
use crate::slowdown::grz::{self, FunctionTable, GrzLevel};
use crate::slowdown::pipeline;
use crate::{Limits, Natural};

const MAX_REPORTED: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SuiteReport {
    pub name: String,
    pub checked: u64,
    pub skipped: u64,
    pub failed: u64,
    /// Descriptions of the first few failures.
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport {
            name: name.to_string(),
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    fn expect(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_REPORTED {
                self.failures.push(describe());
            }
        }
    }
}

fn nat(n: u64) -> Natural {
    Natural::from(n)
}

/// Algebraic laws of comparison, addition and `ω^α·β` on random terms.
pub fn ordinal_suite(seed: u64, samples: usize) -> SuiteReport {
    let mut report = SuiteReport::new("ordinal");
    let mut rng = gen::rng(seed);
    let shape = OrdinalShape::default();
    let small = OrdinalShape {
        depth: 3,
        max_coefficient: 5,
        width: 2,
    };
    for _ in 0..samples {
        let a = gen::random_ordinal(&mut rng, shape);
        let b = gen::random_ordinal(&mut rng, shape);
        let c = gen::random_ordinal(&mut rng, shape);
        let ab = ordinal::compare(&a, &b);
        let bc = ordinal::compare(&b, &c);
        report.expect(ab == ordinal::compare(&b, &a).reverse(), || format!("antisymmetry: {a} vs {b}"));
        if ab != Ordering::Greater && bc != Ordering::Greater {
            report.expect(ordinal::compare(&a, &c) != Ordering::Greater, || {
                format!("transitivity: {a} <= {b} <= {c}")
            });
        }
        report.expect((ab == Ordering::Equal) == (a == b), || format!("equality: {a} vs {b}"));

        let left = ordinal::add(&ordinal::add(&a, &b), &c);
        let right = ordinal::add(&a, &ordinal::add(&b, &c));
        report.expect(left == right, || format!("associativity: {a}, {b}, {c}"));
        report.expect(ordinal::add(&a, &Ordinal::zero()) == a && ordinal::add(&Ordinal::zero(), &a) == a, || {
            format!("identity: {a}")
        });
        let sum = ordinal::add(&a, &b);
        report.expect(a <= sum, || format!("monotone: {a} + {b}"));
        report.expect(ordinal::add(&a, &Ordinal::one()) > a, || format!("successor: {a}"));
        report.expect(canonical(&sum), || format!("canonical sum: {a} + {b}"));

        let (x, y, z) = (
            gen::random_ordinal(&mut rng, small),
            gen::random_ordinal(&mut rng, small),
            gen::random_ordinal(&mut rng, small),
        );
        let dist_left = ordinal::omega_power_mul(&x, &ordinal::add(&y, &z));
        let dist_right = ordinal::add(&ordinal::omega_power_mul(&x, &y), &ordinal::omega_power_mul(&x, &z));
        report.expect(dist_left == dist_right, || format!("distributivity: {x}, {y}, {z}"));
        report.expect(canonical(&dist_left), || format!("canonical product: {x}, {y}"));

        let omega_a = ordinal::omega_power_mul(&Ordinal::one(), &a);
        report.expect(
            ordinal::max_coefficient(&omega_a) <= ordinal::max_coefficient(&a) + 1u32,
            || format!("ko(w*a) <= ko(a)+1: {a}"),
        );
        if !a.is_zero() {
            report.expect(ordinal::max_coefficient(&a) <= ordinal::length(&a), || format!("ko <= len: {a}"));
        }
        report.expect(Ordinal::parse(&a.render()).as_ref() == Ok(&a), || format!("round trip: {a}"));
    }
    report
}

fn canonical(alpha: &Ordinal) -> bool {
    Ordinal::from_monomials(alpha.monomials().to_vec()).is_ok()
        && alpha.monomials().iter().all(|m| canonical(m.exponent()))
}

/// The round trips and order preservation between numbers and ordinals.
///
/// - (i) `T_b T*_b m = m` for every `m ≤ max_m` and base in `bases`.
/// - (ii) `T*_b T_b α = α` for random `α` with `ko(α) < b`.
/// - (iii) `α < β ⇒ T_b α < T_b β` for random pairs whose values fit
///   `value_bits`; pairs that do not fit are redrawn.
/// - (iv) `m < n ⇔ T*_b m < T*_b n` on every consecutive pair `(m, m + 1)`
///   up to `max_m`, plus `samples` random pairs.
pub fn numeral_suite(
    seed: u64,
    max_m: u64,
    bases: std::ops::RangeInclusive<u64>,
    samples: usize,
    value_bits: u64,
) -> SuiteReport {
    let mut report = SuiteReport::new("numeral");
    let mut rng = gen::rng(seed);
    for b in bases.clone() {
        let base = nat(b);
        let mut previous: Option<Ordinal> = None;
        for m in 0..=max_m {
            let h = numeral::decompose(&nat(m), &base).expect("base >= 2");
            let image = numeral::to_ordinal(&h);
            let back = numeral::from_ordinal(&image, &base).and_then(|n| Ok(numeral::evaluate(&n, 64)?));
            report.expect(back.as_ref() == Ok(&nat(m)), || format!("(i) T T* {m} at base {b}"));
            if let Some(prev) = &previous {
                report.expect(ordinal::compare(prev, &image) == Ordering::Less, || {
                    format!("(iv) T*({}) < T*({m}) at base {b}", m - 1)
                });
            }
            previous = Some(image);
        }
    }
    let bases: Vec<u64> = bases.collect();
    for _ in 0..samples {
        let b = bases[rng.gen_range(0..bases.len())];
        let base = nat(b);
        let (m, n) = (rng.gen_range(0..=max_m), rng.gen_range(0..=max_m));
        let tm = numeral::to_ordinal(&numeral::decompose(&nat(m), &base).expect("base >= 2"));
        let tn = numeral::to_ordinal(&numeral::decompose(&nat(n), &base).expect("base >= 2"));
        report.expect(ordinal::compare(&tm, &tn) == m.cmp(&n), || format!("(iv) {m} vs {n} at base {b}"));

        let shape = OrdinalShape {
            depth: 3,
            max_coefficient: b - 1,
            width: 3,
        };
        let alpha = gen::random_ordinal(&mut rng, shape);
        let round = numeral::from_ordinal(&alpha, &base).map(|h| numeral::to_ordinal(&h));
        report.expect(round.as_ref() == Ok(&alpha), || format!("(ii) T* T {alpha} at base {b}"));

        // Redraw until both values fit; give up (and say so) after many tries.
        let mut decided = false;
        for _ in 0..1000 {
            let x = gen::random_ordinal(&mut rng, shape);
            let y = gen::random_ordinal(&mut rng, shape);
            let vx = numeral::from_ordinal(&x, &base).ok().and_then(|h| h.value_within(value_bits));
            let vy = numeral::from_ordinal(&y, &base).ok().and_then(|h| h.value_within(value_bits));
            if let (Some(vx), Some(vy)) = (vx, vy) {
                let ordinal_order = ordinal::compare(&x, &y);
                report.expect(ordinal_order == vx.cmp(&vy), || format!("(iii) {x} vs {y} at base {b}"));
                decided = true;
                break;
            }
        }
        if !decided {
            report.skipped += 1;
        }
    }
    report
}

fn random_schedule<R: Rng>(rng: &mut R) -> BaseSchedule {
    if rng.gen_bool(0.5) {
        BaseSchedule::Shift(nat(rng.gen_range(2..=4)))
    } else {
        BaseSchedule::Constant(nat(rng.gen_range(2..=9)))
    }
}

const CROSS_CHECK_BITS: u64 = 1 << 12;

/// Certified descent, bignum agreement and schedule identities on random
/// traces with `m ≤ max_m`.
pub fn goodstein_suite(seed: u64, traces: usize, max_m: u64, steps: u64, limits: &Limits) -> SuiteReport {
    let mut report = SuiteReport::new("goodstein");
    let mut rng = gen::rng(seed);
    for _ in 0..traces {
        let m = nat(rng.gen_range(0..=max_m));
        let schedule = random_schedule(&mut rng);
        let trace = match goodstein::run_general(&m, &schedule, steps, limits.expansion_cap) {
            Ok(trace) => trace,
            Err(err) => {
                report.expect(false, || format!("run from {m} with {schedule:?}: {err}"));
                continue;
            }
        };
        if trace.truncated.is_some() {
            report.skipped += 1;
        }
        let descent = goodstein::check_descent(&trace);
        report.expect(descent.passed(), || format!("descent from {m} with {schedule:?} at {descent:?}"));
        if let Some(k) = trace.termination_index {
            report.expect(trace.steps[k as usize..].iter().all(|h| h.is_zero()), || {
                format!("zero is absorbing from {m}")
            });
        }
        // Hereditary decomposition of huge plain integers dominates the cost, so the
        // numeric cross-check stays well inside the budget.
        let value_bits = limits.bit_budget.min(CROSS_CHECK_BITS);
        for (i, pair) in trace.steps.windows(2).enumerate() {
            let (Some(before), Some(after)) = (pair[0].value_within(value_bits), pair[1].value_within(value_bits)) else {
                report.skipped += 1;
                continue;
            };
            let expected = bignum::step(&before, pair[0].base(), pair[1].base(), limits.bit_budget);
            report.expect(expected.as_ref() == Ok(&after), || format!("bignum step {i} from {m}"));
        }
    }
    for m in 0..=max_m.min(20) {
        let special = goodstein::run_special(&nat(m), steps.min(30), limits.expansion_cap);
        let general = goodstein::run_general(&nat(m), &BaseSchedule::Shift(nat(2)), steps.min(30), limits.expansion_cap);
        report.expect(special.is_ok() && special == general, || format!("shift(2) = special from {m}"));
    }
    report
}

/// Random descending prefixes turned into dominating Goodstein sequences.
pub fn domination_suite(seed: u64, prefixes: usize, max_len: usize, depth: usize, limits: &Limits) -> SuiteReport {
    let mut report = SuiteReport::new("domination");
    let mut rng = gen::rng(seed);
    let shape = OrdinalShape {
        depth,
        max_coefficient: 5,
        width: 3,
    };
    for _ in 0..prefixes {
        let alphas = gen::random_descending(&mut rng, max_len, shape);
        match goodstein::ordinals_to_goodstein(&alphas, limits.expansion_cap) {
            Ok((_, trace, cert)) => {
                report.expect(cert.records.len() == alphas.len(), || {
                    format!("certificate covers {} of {} terms", cert.records.len(), alphas.len())
                });
                report.expect(cert.all_pass(), || {
                    format!("domination fails at {:?} for {}", cert.first_failure(), render_all(&alphas))
                });
                report.expect(goodstein::check_descent(&trace).passed(), || "trace descent".into());
            }
            Err(err) if err.is_resource() => report.skipped += 1,
            Err(err) => report.expect(false, || format!("{}: {err}", render_all(&alphas))),
        }
    }
    report
}

fn render_all(terms: &[Ordinal]) -> String {
    terms.iter().map(|t| t.render()).collect::<Vec<_>>().join(", ")
}

/// `Err(())` when the guard tripped, which certifies a value above `2^guard`.
type Guarded = Result<Natural, ()>;

fn f(level: u32, x: u64, guard: u64) -> Guarded {
    grz::grz_eval(GrzLevel(level), &nat(x), guard).map_err(|_| ())
}

fn f_iter(level: u32, z: u64, x: u64, guard: u64) -> Guarded {
    grz::grz_iterate(GrzLevel(level), &nat(z), &nat(x), guard).map_err(|_| ())
}

/// `a < b` where an `Err` stands for some value above `2^guard`; `None` when
/// both are beyond the guard.
fn guarded_lt(a: &Guarded, b: &Guarded) -> Option<bool> {
    match (a, b) {
        (Ok(a), Ok(b)) => Some(a < b),
        (Ok(_), Err(())) => Some(true),
        (Err(()), Ok(_)) => Some(false),
        (Err(()), Err(())) => None,
    }
}

/// Basic growth properties of the hierarchy for `l ≤ max_level` and every
/// argument up to `max_arg`:
///
/// - (i) `f_l(x) ≥ x + 1` for `x > 0`;
/// - (ii) `f_l^z(x) ≥ x`;
/// - (iii) `x < y ⇒ f_l(x) < f_l(y)` and `f_l^z(x) < f_l^z(y)`;
/// - (iv) `f_{l+1}(x) ≥ f_l(x)` for `x > 0`.
///
/// A magnitude error means the value exceeds `2^guard`, which still decides
/// any comparison against a value that fits; comparisons between two such
/// values are counted as skipped.
pub fn grz_suite(max_level: u32, max_arg: u64, guard: u64) -> SuiteReport {
    let mut report = SuiteReport::new("grz");
    let decide = |report: &mut SuiteReport, outcome: Option<bool>, describe: &dyn Fn() -> String| match outcome {
        Some(ok) => report.expect(ok, describe),
        None => report.skipped += 1,
    };
    for l in 0..=max_level {
        for x in 0..=max_arg {
            let fx = f(l, x, guard);
            if x > 0 {
                decide(&mut report, guarded_lt(&Ok(nat(x)), &fx), &|| format!("(i) f_{l}({x}) > {x}"));
                let next = f(l + 1, x, guard);
                decide(&mut report, guarded_lt(&next, &fx).map(|lt| !lt), &|| {
                    format!("(iv) f_{}({x}) >= f_{l}({x})", l + 1)
                });
            }
            for z in 0..=max_arg {
                let fzx = f_iter(l, z, x, guard);
                decide(&mut report, guarded_lt(&fzx, &Ok(nat(x))).map(|lt| !lt), &|| {
                    format!("(ii) f_{l}^{z}({x}) >= {x}")
                });
            }
            for y in x + 1..=max_arg {
                decide(&mut report, guarded_lt(&fx, &f(l, y, guard)), &|| format!("(iii) f_{l}({x}) < f_{l}({y})"));
                for z in 0..=max_arg {
                    decide(
                        &mut report,
                        guarded_lt(&f_iter(l, z, x, guard), &f_iter(l, z, y, guard)),
                        &|| format!("(iii) f_{l}^{z}({x}) < f_{l}^{z}({y})"),
                    );
                }
            }
        }
    }
    report
}

/// Majorization checks on small function tables: the bounds that should hold
/// must hold, and the one that should fail must be caught.
pub fn majorize_suite(max_arg: u64, guard: u64) -> SuiteReport {
    let mut report = SuiteReport::new("majorize");
    let tables: [(&str, FunctionTable, u32); 4] = [
        ("x+1", FunctionTable::tabulate(1, max_arg, |x| &x[0] + 1u32), 0),
        ("x+y", FunctionTable::tabulate(2, max_arg, |x| &x[0] + &x[1]), 2),
        ("x*y", FunctionTable::tabulate(2, max_arg, |x| &x[0] * &x[1]), 2),
        ("x+y+z", FunctionTable::tabulate(3, max_arg.min(6), |x| &x[0] + &x[1] + &x[2]), 2),
    ];
    for (name, table, level) in &tables {
        let result = grz::majorization_check(table, GrzLevel(*level), guard);
        report.expect(result.passed(), || format!("{name} at level {level}: {:?}", result.failures));
    }
    let pow = FunctionTable::tabulate(1, 5, |x| Pow::pow(nat(2), x[0].to_u64().expect("small")));
    let result = grz::majorization_check(&pow, GrzLevel(1), guard);
    let failed: Vec<u64> = result.failures.iter().map(|f| f.args[0].to_u64().unwrap_or(u64::MAX)).collect();
    report.expect(failed == [3, 4, 5], || format!("2^x at level 1 should fail at 3, 4, 5; got {failed:?}"));
    report.expect(
        grz::majorization_check(&pow, GrzLevel(2), guard).passed(),
        || "2^x at level 2".into(),
    );
    report
}

/// Descent, slowness and decomposition uniqueness for the clocks at levels
/// `0..=max_level`, `n ≤ max_n`.
pub fn clock_suite(max_level: u32, max_n: u64, guard: u64) -> SuiteReport {
    let mut report = SuiteReport::new("clock");
    for level in 0..=max_level {
        let c = match clock::build_clock(GrzLevel(level), guard) {
            Ok(c) => c,
            Err(err) => {
                report.expect(false, || format!("build level {level}: {err}"));
                continue;
            }
        };
        let bound = Ordinal::omega_power(Ordinal::from_u64(u64::from(c.degree)));
        for n in 0..=max_n {
            let Some(diagonal) = grz::grz_eval(GrzLevel(level), &nat(n), guard).ok().and_then(|d| d.to_u64()) else {
                report.skipped += 1;
                continue;
            };
            let mut previous: Option<Ordinal> = None;
            for m in 0..=diagonal {
                let here = clock::clock_eval(&c, &nat(n), &nat(m));
                if let Some(prev) = &previous {
                    report.expect(*prev > here, || format!("level {level}: g({n},{}) > g({n},{m})", m - 1));
                }
                report.expect(ordinal::length(&here) <= nat(c.slowness * (n + m + 1)), || {
                    format!("level {level}: |g({n},{m})| <= {}*({n}+{m}+1)", c.slowness)
                });
                report.expect(here < bound, || format!("level {level}: g({n},{m}) < w^{}", c.degree));
                if level >= 1 && m < diagonal && n <= 6 {
                    report.expect(decomposition_ok(level, n, m, guard), || {
                        format!("level {level}: decomposition of m = {m} at n = {n}")
                    });
                }
                previous = Some(here);
            }
            if level >= 1 {
                report.expect(clock::clock_eval(&c, &nat(n), &nat(diagonal)).is_zero(), || {
                    format!("level {level}: g({n}, f({n})) = 0")
                });
            }
        }
    }
    report
}

/// The computed `(i, j)` solves `m = Σ_{t=1..i} fᵗ(n) + j` with `i < n` and
/// `j < f^{i+1}(n)`, and no other pair does.
fn decomposition_ok(level: u32, n: u64, m: u64, guard: u64) -> bool {
    let inner = |x: &Natural| grz::grz_eval(GrzLevel(level - 1), x, guard).expect("small");
    let mut solutions = Vec::new();
    let mut prefix = Natural::zero();
    let mut iterate = nat(n);
    for i in 0..n {
        let next = inner(&iterate);
        if nat(m) >= prefix && nat(m) - &prefix < next {
            solutions.push((nat(i), nat(m) - &prefix));
        }
        prefix += &next;
        iterate = next;
    }
    solutions.len() == 1 && clock_decompose(GrzLevel(level), &nat(n), &nat(m)) == solutions.pop()
}

/// The full pipeline on a fixed input plus the coefficient-bound example.
pub fn pipeline_suite(inputs: &[Vec<Ordinal>], level: u32, horizon: u64, limits: &Limits) -> SuiteReport {
    let mut report = SuiteReport::new("pipeline");
    for betas in inputs {
        match pipeline::full_pipeline(betas.clone(), GrzLevel(level), horizon, limits) {
            Ok(bundle) => {
                for check in &bundle.checks {
                    report.expect(check.passed, || format!("{}: {}: {}", render_all(betas), check.name, check.detail));
                }
                let want = (horizon as usize).min(bundle.bounded.prefix.len());
                let cert = &bundle.witness.certificate;
                report.expect(cert.records.len() == want, || {
                    format!("{}: {} of {want} indices certified", render_all(betas), cert.records.len())
                });
                for r in &cert.records {
                    report.expect(r.verdict == goodstein::Verdict::Pass, || {
                        format!("{}: index {} {}", render_all(betas), r.index, r.verdict.as_str())
                    });
                }
            }
            Err(err) => report.expect(false, || format!("{}: {err}", render_all(betas))),
        }
    }
    let example: Vec<Ordinal> = (0..3u64).rev().map(Ordinal::from_u64).collect();
    match pipeline::coeff_bound_terms(example, 3)
        .and_then(|b| pipeline::special_witness(&b.prefix, horizon, limits))
    {
        Ok(w) => {
            let value = numeral::evaluate(&w.start, 64).ok();
            report.expect(value == Some(nat(65556)), || format!("m0 = {value:?}, expected 65556"));
            report.expect(w.certificate.all_pass(), || "K = 3 example certificate".into());
        }
        Err(err) => report.expect(false, || format!("K = 3 example: {err}")),
    }
    report
}

/// The reference pipeline input `(ω·2, ω, 1)`.
pub fn reference_input() -> Vec<Ordinal> {
    vec![
        Ordinal::monomial(Ordinal::one(), nat(2)),
        Ordinal::omega(),
        Ordinal::one(),
    ]
}

/// Every suite at its standard size.
pub fn run_all(seed: u64, limits: &Limits) -> Vec<SuiteReport> {
    vec![
        ordinal_suite(seed, 2000),
        numeral_suite(seed, 10_000, 2..=10, 2000, 1 << 16),
        goodstein_suite(seed, 100, 50, 30, limits),
        domination_suite(seed, 20, 15, 3, limits),
        grz_suite(2, 12, limits.magnitude_bits),
        majorize_suite(12, limits.magnitude_bits),
        clock_suite(2, 8, limits.magnitude_bits),
        pipeline_suite(&[reference_input()], 2, 50, limits),
    ]
}
