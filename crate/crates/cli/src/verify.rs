//! Invariant suites. Hard checks set the exit status; density values are printed only.

use eigenlpf::analysis::{
    congruence_density, lpf_density, natural_density_over_n, odd_prime_power_suite,
    sato_tate_test, wieferich_scan, zero_census, ThresholdSpec,
};
use eigenlpf::arith::{divisors, sieve_primes, valuation};
use eigenlpf::cyclotomic::{
    classify_prime_divisors, norm_phi_ratio, phi_value, psi_polynomial, LucasParameters,
};
use eigenlpf::eigenform::eigenform_table;
use eigenlpf::oracles::{
    class_number_analytic, delta_from_eisenstein, hensel_valuation, is_fundamental_discriminant,
    prime_count_trial, ramanujan_691_count,
};
use eigenlpf::quadfield::{
    class_number_of_discriminant, field_from_prime, height_gamma, height_lower_bound,
    ideal_valuation, split_prime, FieldElement, QuadraticField,
};
use eigenlpf::{CoefficientTable, Error, FormDescriptor};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::cache::ensure_table;
use crate::config::{RunConfig, Suite};
use crate::emit::fmt_real;
use crate::{Failure, EXIT_INVARIANT};

const SHOWN_FAILURES: usize = 5;

#[derive(Default)]
struct Log {
    checks: u64,
    failures: u64,
}

impl Log {
    fn check(&mut self, suite: &str, name: &str, cases: u64, failures: Vec<String>) {
        self.checks += 1;
        if failures.is_empty() {
            println!("[{suite}] ok   {name} ({cases} cases)");
        } else {
            self.failures += 1;
            println!("[{suite}] FAIL {name} ({} of {cases} cases)", failures.len());
            for f in failures.iter().take(SHOWN_FAILURES) {
                println!("[{suite}]      {f}");
            }
        }
    }

    fn info(&self, suite: &str, name: &str, value: impl std::fmt::Display) {
        println!("[{suite}] info {name}: {value}");
    }
}

fn primes_upto(x: u64) -> Vec<u64> {
    sieve_primes(x.max(2)).unwrap().primes().to_vec()
}

fn coeffs(log: &mut Log, t: &CoefficientTable, limit: u64) -> Result<(), Failure> {
    let form = t.form();
    let name = form.name();
    let k = form.weight();
    let a = |n: u64| t.get(n).unwrap();

    let fresh = eigenform_table(form, limit)?;
    let bad: Vec<String> = (1..=limit)
        .filter(|&n| fresh.get(n) != t.get(n))
        .map(|n| format!("n={n}: cached {} recomputed {}", a(n), fresh.get(n).unwrap()))
        .collect();
    log.check("coeffs", &format!("{name}: cache equals recomputation, n <= {limit}"), limit, bad);

    if k == 12 {
        let m = limit.min(1000);
        let oracle = delta_from_eisenstein(m as usize);
        let bad: Vec<String> = (1..=m)
            .filter(|&n| &oracle[n as usize] != a(n))
            .map(|n| format!("n={n}: table {} oracle {}", a(n), oracle[n as usize]))
            .collect();
        log.check("coeffs", &format!("{name}: eta product equals (E4^3-E6^2)/1728, n <= {m}"), m, bad);
    }

    let mut bad = Vec::new();
    if !a(1).is_one() {
        bad.push(format!("a(1) = {}", a(1)));
    }
    let mut pairs = 0;
    for m in 2..=limit {
        for n in (m + 1)..=(limit / m) {
            if m.gcd(&n) != 1 {
                continue;
            }
            pairs += 1;
            if a(m * n) != &(a(m) * a(n)) {
                bad.push(format!("a({}) != a({m}) a({n})", m * n));
            }
        }
    }
    log.check("coeffs", &format!("{name}: a(1) = 1 and multiplicativity, mn <= {limit}"), pairs + 1, bad);

    let primes = primes_upto(limit);
    let mut bad = Vec::new();
    let mut cases = 0;
    for &p in &primes {
        let pk = BigInt::from(p).pow(k - 1);
        let mut prev = BigInt::one();
        let mut cur = p;
        while let Some(next) = cur.checked_mul(p).filter(|&x| x <= limit) {
            cases += 1;
            let want = a(p) * a(cur) - &pk * &prev;
            if a(next) != &want {
                bad.push(format!("a({next}) breaks the prime-power recurrence"));
            }
            prev = a(cur).clone();
            cur = next;
        }
    }
    log.check("coeffs", &format!("{name}: prime-power recurrence, p^m <= {limit}"), cases, bad);

    let bad: Vec<String> = primes
        .iter()
        .filter(|&&p| a(p) * a(p) > BigInt::from(4) * BigInt::from(p).pow(k - 1))
        .map(|p| format!("|a({p})| exceeds 2 p^((k-1)/2)"))
        .collect();
    log.check("coeffs", &format!("{name}: Deligne bound, p <= {limit}"), primes.len() as u64, bad);

    log.info("coeffs", &format!("{name}: zeros with n <= {limit}"), zero_census(t, limit)?);
    Ok(())
}

fn cyclotomic(log: &mut Log, tables: &[CoefficientTable], cfg: &RunConfig) -> Result<(), Failure> {
    let small = primes_upto(50);
    let mut bad = Vec::new();
    let mut psi_bad = Vec::new();
    let mut cases = 0;
    for t in tables {
        for &p in &small {
            let lp = LucasParameters::from_table(t, p)?;
            let a2 = &lp.a * &lp.a;
            let mut phi = vec![BigInt::zero(); 31];
            for n in 2..=30u64 {
                phi[n as usize] = phi_value(&lp, n)?;
            }
            for n in 2..=30u64 {
                cases += 1;
                let prod = divisors(n)
                    .into_iter()
                    .filter(|&d| d > 1)
                    .fold(BigInt::one(), |acc, d| acc * &phi[d as usize]);
                if prod != t.coeff_prime_power(p, (n - 1) as u32)? {
                    bad.push(format!("{} p={p} n={n}", t.form().name()));
                }
                if n >= 3 && psi_polynomial(n)?.eval(&a2, &lp.q) != phi[n as usize] {
                    psi_bad.push(format!("{} p={p} n={n}", t.form().name()));
                }
            }
        }
    }
    log.check("cyclotomic", "product of Phi_d over d | n equals a(p^(n-1)), p <= 50, n <= 30", cases, bad);
    log.check("cyclotomic", "Mobius-Lucas Phi_n equals Psi_n(a(p)^2, p^(k-1)), n <= 30", cases, psi_bad);

    let mut bad = Vec::new();
    let mut cases = 0;
    for t in tables {
        for &p in &primes_upto(1000) {
            let ap = t.get(p).unwrap();
            for m in 1..=10u32 {
                cases += 1;
                let c = t.coeff_prime_power(p, 2 * m + 1)?;
                let ok = if ap.is_zero() { c.is_zero() } else { c.is_multiple_of(ap) };
                if !ok {
                    bad.push(format!("{} p={p} m={m}", t.form().name()));
                }
            }
        }
    }
    log.check("cyclotomic", "a(p) divides a(p^(2m+1)), p <= 1000, m <= 10", cases, bad);

    let delta = &tables[0];
    let opts = cfg.classify_options();
    let (mut found, mut cofactors, mut certified) = (0u64, 0u64, 0u64);
    let mut bad = Vec::new();
    let mut cases = 0;
    for &p in &small {
        let lp = LucasParameters::from_table(delta, p)?.normalized();
        let field = field_from_prime(delta, p)?.field;
        for n in 7..=cfg.n_max.max(7) {
            cases += 1;
            let cv = classify_prime_divisors(&lp, n, &field, &opts)?;
            found += (cv.primitive.len() + cv.non_primitive.len()) as u64;
            cofactors += cv.cofactors.len() as u64;
            certified += cv.cofactors.iter().filter(|c| c.certified_primitive).count() as u64;
            for q in cv.congruence_violations() {
                bad.push(format!("p={p} n={n}: q={} = {} mod n", q.prime, q.residue_mod_n));
            }
            for c in cv.cofactors.iter().filter(|c| !c.residue_consistent(n)) {
                bad.push(format!("p={p} n={n}: cofactor {} = {} mod n", c.value, c.residue_mod_n));
            }
        }
    }
    log.check(
        "cyclotomic",
        &format!("primes q not dividing n in Phi_n are +-1 mod n (delta, p <= 50, 7 <= n <= {})", cfg.n_max.max(7)),
        cases,
        bad,
    );
    log.info(
        "cyclotomic",
        "factored primes / unsplit cofactors / certified cofactors",
        format!("{found} / {cofactors} / {certified}"),
    );

    let ns: Vec<u64> = sieve_primes(200)?.primes_in(50, 200).to_vec();
    let mut bad = Vec::new();
    for &n in &ns {
        let r = norm_phi_ratio(delta, 11, n)?;
        if !(0.8..=1.2).contains(&r) {
            bad.push(format!("n={n}: ratio {}", fmt_real(r)));
        }
    }
    log.check("cyclotomic", "log N(Phi_n)/(2 h(gamma) phi(n)) in [0.8, 1.2] (delta, p = 11, prime 50 <= n <= 200)", ns.len() as u64, bad);
    Ok(())
}

fn quadfield(log: &mut Log, tables: &[CoefficientTable], cfg: &RunConfig) -> Result<(), Failure> {
    let mut bad = Vec::new();
    let mut skipped = Vec::new();
    let mut cases = 0;
    for t in tables {
        for &p in &primes_upto(100) {
            let af = match field_from_prime(t, p) {
                Ok(af) => af,
                Err(Error::Precondition(_)) => {
                    skipped.push(format!("{} p={p}", t.form().name()));
                    continue;
                }
                Err(e) => return Err(e.into()),
            };
            cases += 1;
            let k = &af.field;
            let ok = k.mul(&af.alpha, &af.beta()) == FieldElement::rational(af.q.clone())
                && k.trace(&af.alpha) == af.a
                && &af.s * &af.s * k.d0() == af.d;
            if !ok {
                bad.push(format!("{} p={p}", t.form().name()));
            }
        }
    }
    log.check("quadfield", "alpha + beta = a(p), alpha beta = p^(k-1), p <= 100", cases, bad);
    log.info(
        "quadfield",
        "fields skipped (squarefree part out of reach)",
        if skipped.is_empty() { "none".to_string() } else { skipped.join(", ") },
    );

    let delta = &tables[0];
    let mut fields: Vec<QuadraticField> = Vec::new();
    for d in [-1i64, -2, -3, -7, -23, -163] {
        fields.push(QuadraticField::new(BigInt::from(d))?);
    }
    for p in [2u64, 3, 5, 11, 97] {
        fields.push(field_from_prime(delta, p)?.field);
    }
    let mut bad = Vec::new();
    let mut cases = 0;
    for k in &fields {
        for &q in &primes_upto(1000) {
            cases += 1;
            let ideals = split_prime(k, q)?;
            let total: u128 = ideals.iter().map(|i| i.norm.pow(i.e)).product();
            if total != (q as u128) * (q as u128) {
                bad.push(format!("d0={} q={q}", k.d0()));
            }
        }
    }
    log.check("quadfield", "prod N(P)^e over P | q equals q^2, q <= 1000", cases, bad);

    let mut bad = Vec::new();
    let mut cases = 0;
    for k in &fields {
        for u in -10i64..=10 {
            for v in -10i64..=10 {
                let x = FieldElement::new(u, v);
                if x.is_zero() {
                    continue;
                }
                let n = k.norm(&x);
                for q in [2u64, 3, 5, 7, 11, 13] {
                    cases += 1;
                    let ideals = split_prime(k, q)?;
                    let mut sum = 0;
                    for i in &ideals {
                        let got = ideal_valuation(k, &x, i);
                        if got != hensel_valuation(k, &x, i) {
                            bad.push(format!("d0={} x=({u},{v}) q={q}: oracle disagrees", k.d0()));
                        }
                        sum += got.unwrap_or(0) * i.f;
                    }
                    if Some(sum) != valuation(&n, &BigUint::from(q))? {
                        bad.push(format!("d0={} x=({u},{v}) q={q}: valuations miss the norm", k.d0()));
                    }
                }
            }
        }
    }
    log.check("quadfield", "ideal valuations match the Hensel oracle and sum to v_q(N x)", cases, bad);

    let mut bad = Vec::new();
    let mut cases = 0;
    for d in -163i64..=-3 {
        if !is_fundamental_discriminant(d) {
            continue;
        }
        cases += 1;
        let h = class_number_of_discriminant(d)?;
        let want = class_number_analytic(d);
        if h != want {
            bad.push(format!("d={d}: forms {h} oracle {want}"));
        }
    }
    log.check("quadfield", "class numbers of fundamental -163 <= d < 0 match the analytic formula", cases, bad);
    log.info(
        "quadfield",
        "h(-3), h(-4), h(-23)",
        format!(
            "{}, {}, {}",
            class_number_of_discriminant(-3)?,
            class_number_of_discriminant(-4)?,
            class_number_of_discriminant(-23)?
        ),
    );

    let ps: Vec<u64> = sieve_primes(100)?.primes_in(5, 100).to_vec();
    let floor = height_lower_bound(2);
    let mut bad = Vec::new();
    for &p in &ps {
        let h = height_gamma(delta, p)?;
        if (h.definition - h.closed_form).abs() > 1e-9 * h.closed_form.abs() || h.definition < floor {
            bad.push(format!(
                "p={p}: definition {} closed form {}",
                fmt_real(h.definition),
                fmt_real(h.closed_form)
            ));
        }
    }
    log.check("quadfield", "h(gamma_p) by places equals ((k-1)/2 - nu) log p (delta, 5 <= p <= 100)", ps.len() as u64, bad);

    for p in [5u64, 7, 11, 13] {
        let s = wieferich_scan(delta, p, cfg.norm_limit)?;
        let mut bad = Vec::new();
        for r in &s.rows {
            if r.via_alpha < 1 || r.via_alpha != r.via_beta {
                bad.push(format!("q={} norm={}: {} vs {}", r.q, r.norm, r.via_alpha, r.via_beta));
            }
        }
        log.check(
            "quadfield",
            &format!("Wieferich valuations >= 1 with both paths equal (delta, p = {p}, N(P) <= {})", cfg.norm_limit),
            s.rows.len() as u64,
            bad,
        );
        log.info("quadfield", &format!("largest Wieferich valuation, p = {p}"), s.r_hat);
    }
    Ok(())
}

fn densities(log: &mut Log, delta: &CoefficientTable, cfg: &RunConfig) -> Result<(), Failure> {
    let x = cfg.x_max;
    let f = cfg.factorizer();
    let spec = ThresholdSpec::Thm1 { epsilon: cfg.epsilon };

    let r = lpf_density(delta, x, spec, &f)?;
    log.check("densities", &format!("thm1 scan counts close (delta, p <= {x})"), r.scanned, close(r.counts_close()));
    log.info("densities", "thm1 density", fmt_real(r.density));
    log.info("densities", "thm1 failing / zeros / inexact", format!("{} / {} / {}", r.failing_count, r.zeros, r.inexact));

    let s = sato_tate_test(delta, x, 40)?;
    let bad = if s.all_in_interval {
        Vec::new()
    } else {
        vec![format!("max |lambda| = {}", fmt_real(s.max_abs_lambda))]
    };
    log.check("densities", &format!("normalized lambda(p) in [-2, 2] (delta, p <= {x})"), s.samples, bad);
    log.info("densities", "Sato-Tate KS distance (40 bins)", fmt_real(s.ks_distance));

    let c = congruence_density(delta, x, 691)?;
    let want = ramanujan_691_count(x);
    let pi = prime_count_trial(x);
    let mut bad = Vec::new();
    if c.pi_f != want {
        bad.push(format!("pi_f = {} but 1 + p^11 = 0 mod 691 for {want} primes", c.pi_f));
    }
    if c.pi_x != pi {
        bad.push(format!("pi(x) = {} but trial division counts {pi}", c.pi_x));
    }
    log.check("densities", &format!("tau(p) = 0 mod 691 count matches 1 + p^11 (p <= {x})"), 2, bad);
    log.info("densities", "pi_f(x, 691) / pi(x)", fmt_real(c.ratio));

    let n = x.min(20_000);
    let r = natural_density_over_n(delta, n, spec, &f)?;
    log.check("densities", &format!("natural-density scan counts close (n <= {n})"), r.scanned, close(r.counts_close()));
    log.info("densities", "thm1 natural density over n", fmt_real(r.density));

    let pp = odd_prime_power_suite(delta, x.min(1000), 10, cfg.epsilon, &f)?;
    let bad: Vec<String> = pp
        .rows
        .iter()
        .filter(|row| !row.skipped && !row.divides_all || row.cube_direct == Some(false))
        .map(|row| format!("p={}", row.p))
        .collect();
    log.check("densities", "odd prime powers inherit a(p) and its largest prime", pp.checks, bad);
    Ok(())
}

fn close(ok: bool) -> Vec<String> {
    if ok {
        Vec::new()
    } else {
        vec!["passing + failing + zeros != scanned".into()]
    }
}

pub fn cmd_verify(cfg: &RunConfig, suite: Suite) -> Result<u8, Failure> {
    if cfg.limit < 1000 {
        return Err(Failure::usage("verify needs --limit >= 1000"));
    }
    let mut log = Log::default();
    let mut tables = Vec::new();
    for form in FormDescriptor::all() {
        let need = if form == FormDescriptor::DELTA && suite.includes(Suite::Densities) {
            cfg.limit.max(cfg.x_max)
        } else {
            cfg.limit
        };
        match ensure_table(cfg, form, need) {
            Ok(t) => tables.push(t),
            Err(f) if f.code == EXIT_INVARIANT => {
                log.check("cache", &format!("{} table loads", form.name()), 1, vec![f.message]);
            }
            Err(f) => return Err(f),
        }
    }
    if tables.len() < 6 {
        println!("verify: {} checks, {} failed", log.checks, log.failures);
        return Ok(EXIT_INVARIANT);
    }
    if suite.includes(Suite::Coeffs) {
        for t in &tables {
            coeffs(&mut log, t, cfg.limit)?;
        }
    }
    if suite.includes(Suite::Cyclotomic) {
        cyclotomic(&mut log, &tables, cfg)?;
    }
    if suite.includes(Suite::Quadfield) {
        quadfield(&mut log, &tables, cfg)?;
    }
    if suite.includes(Suite::Densities) {
        densities(&mut log, &tables[0], cfg)?;
    }
    println!("verify: {} checks, {} failed", log.checks, log.failures);
    Ok(if log.failures > 0 { EXIT_INVARIANT } else { 0 })
}
