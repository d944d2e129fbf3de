//! Exact identity and inequality suite over crank/rank tables.
//!
//! Every check returns the number of cases examined and the first
//! counterexample, if any. Brute-force enumeration is used up to
//! `brute_max`; series-based checks run to the table size.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::moments::{
    build_table, positive_count, positive_from_symmetrized, symmetrized_from_table, symmetrized_moments,
    spt_ospt_from_tables, Convention, CrankRankTable, MomentTable, SptOspt,
};
use crate::parity::parity_suite;
use crate::partition::{brute_aggregates, brute_distribution, Aggregates, ENUMERATION_CAP};
use crate::series::{euler_inverse, ospt_series};
use crate::Statistic;

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub cases: usize,
    pub first_counterexample: Option<String>,
}

impl CheckResult {
    fn new(name: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            pass: true,
            cases: 0,
            first_counterexample: None,
        }
    }

    /// Records one case; the first failing case is kept.
    fn case(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.pass {
            self.pass = false;
            self.first_counterexample = Some(describe());
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub nmax: usize,
    pub brute_max: usize,
    pub r_max: u32,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| !c.pass)
    }
}

/// Tables shared by the checks.
pub struct Tables {
    pub crank: CrankRankTable,
    pub rank: CrankRankTable,
    pub spt_ospt: SptOspt,
}

impl Tables {
    pub fn build(nmax: usize) -> Result<Self> {
        let crank = build_table(Statistic::Crank, nmax, Convention::GeneratingFunction);
        let rank = build_table(Statistic::Rank, nmax, Convention::GeneratingFunction);
        let spt_ospt = spt_ospt_from_tables(&crank, &rank)?;
        Ok(Tables { crank, rank, spt_ospt })
    }

    pub fn nmax(&self) -> usize {
        self.crank.nmax()
    }
}

fn table_histogram(table: &CrankRankTable, n: usize) -> BTreeMap<i64, BigInt> {
    table
        .row(n)
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i as i64 - n as i64, c.clone()))
        .collect()
}

fn brute_histogram(n: usize, kind: Statistic) -> Result<BTreeMap<i64, BigInt>> {
    Ok(brute_distribution(n, kind)?
        .into_iter()
        .map(|(m, c)| (m, BigInt::from(c)))
        .collect())
}

fn hist(pairs: &[(i64, i64)]) -> BTreeMap<i64, BigInt> {
    pairs.iter().map(|&(m, c)| (m, BigInt::from(c))).collect()
}

/// Generating-function distributions against enumeration for `N <= brute_max`.
///
/// At `N = 1` the crank generating function gives `w^{-1} - 1 + w` while the
/// single partition `(1)` has crank `-1` by the defining rule and `0` under
/// the combinatorial convention; all three are checked explicitly there.
pub fn check_distributions(brute_max: usize) -> Result<Vec<CheckResult>> {
    let crank_gf = build_table(Statistic::Crank, brute_max, Convention::GeneratingFunction);
    let crank_comb = build_table(Statistic::Crank, brute_max, Convention::Combinatorial);
    let rank = build_table(Statistic::Rank, brute_max, Convention::GeneratingFunction);
    let mut c = CheckResult::new("crank_distribution_vs_enumeration");
    let mut r = CheckResult::new("rank_distribution_vs_enumeration");
    for n in 0..=brute_max {
        let brute = brute_histogram(n, Statistic::Crank)?;
        if n == 1 {
            c.case(brute == hist(&[(-1, 1)]), || format!("N=1 raw crank histogram {brute:?}"));
            let gf = table_histogram(&crank_gf, 1);
            c.case(gf == hist(&[(-1, 1), (0, -1), (1, 1)]), || format!("N=1 generating-function column {gf:?}"));
            let comb = table_histogram(&crank_comb, 1);
            c.case(comb == hist(&[(0, 1)]), || format!("N=1 combinatorial column {comb:?}"));
        } else {
            let gf = table_histogram(&crank_gf, n);
            c.case(gf == brute, || format!("N={n}: table {gf:?} vs enumeration {brute:?}"));
            let comb = table_histogram(&crank_comb, n);
            c.case(comb == brute, || format!("N={n}: combinatorial table differs"));
        }
        let brute = brute_histogram(n, Statistic::Rank)?;
        let gf = table_histogram(&rank, n);
        r.case(gf == brute, || format!("N={n}: table {gf:?} vs enumeration {brute:?}"));
    }
    Ok(vec![c, r])
}

/// Identities needing enumeration: spt, Durfee sum and string count.
pub fn check_brute_identities(tables: &Tables, brute_max: usize) -> Result<Vec<CheckResult>> {
    let top = brute_max.min(tables.nmax());
    let m1 = MomentTable::positive(&tables.crank, 1)?;
    let mut spt = CheckResult::new("spt_equals_M2pos_minus_N2pos");
    let mut durfee = CheckResult::new("M1pos_equals_durfee_sum");
    let mut strings = CheckResult::new("ospt_equals_string_count");
    for n in 1..=top {
        let Aggregates {
            spt: s,
            ospt_strings,
            durfee_sum,
            ..
        } = brute_aggregates(n)?;
        let t_spt = &tables.spt_ospt.spt[n];
        spt.case(*t_spt == BigInt::from(s), || format!("N={n}: {t_spt} vs {s}"));
        let d = m1.value(n);
        durfee.case(*d == BigInt::from(durfee_sum), || format!("N={n}: {d} vs {durfee_sum}"));
        let o = &tables.spt_ospt.ospt[n];
        strings.case(*o == BigInt::from(ospt_strings), || format!("N={n}: {o} vs {ospt_strings}"));
    }
    Ok(vec![spt, durfee, strings])
}

/// Identities between series and tables up to the table size.
pub fn check_series_identities(tables: &Tables, r_max: u32) -> Result<Vec<CheckResult>> {
    let nmax = tables.nmax();
    let mut out = Vec::new();

    let p = euler_inverse(nmax);
    let mut sums = CheckResult::new("distributions_sum_to_p_and_are_symmetric");
    for (table, kind) in [(&tables.crank, "crank"), (&tables.rank, "rank")] {
        for n in 0..=nmax {
            let row = table.row(n);
            let total: BigInt = row.iter().sum();
            sums.case(&total == p.coeff(n) && row.iter().eq(row.iter().rev()), || {
                format!("{kind} N={n}")
            });
        }
    }
    out.push(sums);

    let o = ospt_series(nmax);
    let mut gen = CheckResult::new("ospt_equals_T_over_euler");
    for n in 0..=nmax {
        let a = &tables.spt_ospt.ospt[n];
        gen.case(a == o.coeff(n), || format!("N={n}: {a} vs {}", o.coeff(n)));
    }
    out.push(gen);

    // Symmetrized moments from F_{l,r} against binomial sums over the table.
    let mut sym = CheckResult::new("symmetrized_equals_F_coefficients");
    let mut crank_sym = vec![positive_count(&tables.crank)?];
    let mut rank_sym = vec![positive_count(&tables.rank)?];
    for r in 0..=r_max {
        for (ell, table, store) in [(1, &tables.crank, &mut crank_sym), (3, &tables.rank, &mut rank_sym)] {
            let from_f = symmetrized_moments(ell, r, nmax)?;
            let direct = if r == 0 {
                store[0].clone()
            } else {
                let d = symmetrized_from_table(table, r)?;
                store.push(d.clone());
                d
            };
            let bad = (0..=nmax).find(|&n| from_f.value(n) != direct.value(n));
            sym.case(bad.is_none(), || format!("ell={ell} r={r} N={}", bad.unwrap()));
        }
    }
    out.push(sym);

    // m^r basis change applied to symmetrized moments gives positive moments.
    let mut basis = CheckResult::new("positive_from_symmetrized_basis_change");
    let mut m_pos = Vec::new();
    let mut n_pos = Vec::new();
    for r in 1..=r_max {
        let m = MomentTable::positive(&tables.crank, r)?;
        let nn = MomentTable::positive(&tables.rank, r)?;
        let rebuilt_m = positive_from_symmetrized(r, &crank_sym[..=r as usize])?;
        let rebuilt_n = positive_from_symmetrized(r, &rank_sym[..=r as usize])?;
        let bad = (0..=nmax).find(|&n| &rebuilt_m[n] != m.value(n) || &rebuilt_n[n] != nn.value(n));
        basis.case(bad.is_none(), || format!("r={r} N={}", bad.unwrap()));
        m_pos.push(m);
        n_pos.push(nn);
    }
    out.push(basis);

    let mut even = CheckResult::new("twice_even_positive_equals_full");
    for k in 1..=r_max / 2 {
        let r = 2 * k;
        for table in [&tables.crank, &tables.rank] {
            let pos = MomentTable::positive(table, r)?;
            let full = MomentTable::full(table, r)?;
            let bad = (0..=nmax).find(|&n| pos.value(n) * 2 != *full.value(n));
            even.case(bad.is_none(), || format!("{} r={r} N={}", table.kind(), bad.unwrap()));
        }
    }
    out.push(even);

    out.extend(check_inequalities(tables, &m_pos, &n_pos)?);
    Ok(out)
}

/// `M_r^+ > N_r^+` (`N >= 2`), `M_{2k} > N_{2k}` and ospt monotonicity.
///
/// `m_pos[r-1]`, `n_pos[r-1]` are the positive moment tables of order `r`.
pub fn check_inequalities(
    tables: &Tables,
    m_pos: &[MomentTable],
    n_pos: &[MomentTable],
) -> Result<Vec<CheckResult>> {
    let nmax = tables.nmax();
    let mut pos = CheckResult::new("positive_crank_exceeds_positive_rank");
    let mut full = CheckResult::new("even_full_crank_exceeds_full_rank");
    for (m, n) in m_pos.iter().zip(n_pos) {
        let r = m.r;
        let bad = (2..=nmax).find(|&k| m.value(k) <= n.value(k));
        pos.case(bad.is_none(), || format!("r={r} N={}", bad.unwrap()));
        if r % 2 == 0 {
            // full even moments are twice the positive ones
            let fm = MomentTable::full(&tables.crank, r)?;
            let fr = MomentTable::full(&tables.rank, r)?;
            let bad = (2..=nmax).find(|&k| fm.value(k) <= fr.value(k));
            full.case(bad.is_none(), || format!("r={r} N={}", bad.unwrap()));
        }
    }
    let mut mono = CheckResult::new("ospt_nondecreasing");
    let o = &tables.spt_ospt.ospt;
    for n in 1..nmax {
        mono.case(o[n + 1] >= o[n], || format!("ospt({}) = {} < ospt({n}) = {}", n + 1, o[n + 1], o[n]));
    }
    Ok(vec![pos, full, mono])
}

/// Ramanujan's congruences `p(5n+4) = 0 mod 5`, `p(7n+5) = 0 mod 7`,
/// `p(11n+6) = 0 mod 11`, and the crank equidistribution behind them.
pub fn check_congruences(tables: &Tables) -> Result<Vec<CheckResult>> {
    let nmax = tables.nmax();
    let p = euler_inverse(nmax);
    let mut cong = CheckResult::new("ramanujan_congruences");
    let mut equi = CheckResult::new("crank_classes_equidistributed");
    for (modulus, residue) in [(5usize, 4usize), (7, 5), (11, 6)] {
        let mut n = residue;
        while n <= nmax {
            cong.case(p.coeff(n).is_multiple_of(&BigInt::from(modulus)), || {
                format!("p({n}) mod {modulus}")
            });
            // crank residue classes mod 5, 7, 11 all have p(N)/modulus members
            if n > 1 {
                let mut classes = vec![BigInt::zero(); modulus];
                for (i, c) in tables.crank.row(n).iter().enumerate() {
                    let m = i as i64 - n as i64;
                    classes[m.rem_euclid(modulus as i64) as usize] += c;
                }
                let first = classes[0].clone();
                equi.case(classes.iter().all(|c| *c == first), || {
                    format!("N={n} mod {modulus}")
                });
            }
            n += modulus;
        }
    }
    Ok(vec![cong, equi])
}

/// Parity of `spt` and `ospt` against the factorization criterion, plus
/// `M_2^+ = M_1^+ (mod 2)` and `N_2^+ = N_1^+ (mod 2)`.
pub fn check_parity(tables: &Tables) -> Result<Vec<CheckResult>> {
    let rep = parity_suite(&tables.spt_ospt.spt, &tables.spt_ospt.ospt)?;
    let mut c = CheckResult::new("parity_criterion");
    for row in &rep.rows {
        c.case(row.consistent(), || {
            format!(
                "N={}: predicted {} ospt {} spt {}",
                row.n, row.predicted_odd, row.ospt_odd, row.spt_odd
            )
        });
    }
    let mut sq = CheckResult::new("second_moments_match_first_mod_2");
    for table in [&tables.crank, &tables.rank] {
        let m1 = MomentTable::positive(table, 1)?;
        let m2 = MomentTable::positive(table, 2)?;
        let bad = (1..=tables.nmax()).find(|&n| (m2.value(n) - m1.value(n)).is_odd());
        sq.case(bad.is_none(), || format!("{} N={}", table.kind(), bad.unwrap()));
    }
    Ok(vec![c, sq])
}

/// Runs the whole suite. `brute_max` is clamped to the enumeration cap.
pub fn run_suite(nmax: usize, brute_max: usize, r_max: u32) -> Result<VerifyReport> {
    if r_max == 0 {
        return Err(Error::Domain("r_max must be at least 1".into()));
    }
    let brute_max = brute_max.min(nmax).min(ENUMERATION_CAP);
    let tables = Tables::build(nmax)?;
    run_suite_with(&tables, brute_max, r_max)
}

pub fn run_suite_with(tables: &Tables, brute_max: usize, r_max: u32) -> Result<VerifyReport> {
    let mut checks = check_distributions(brute_max)?;
    checks.extend(check_brute_identities(tables, brute_max)?);
    checks.extend(check_series_identities(tables, r_max)?);
    checks.extend(check_congruences(tables)?);
    if tables.nmax() >= 1 {
        checks.extend(check_parity(tables)?);
    }
    Ok(VerifyReport {
        nmax: tables.nmax(),
        brute_max,
        r_max,
        checks,
    })
}
