//! Enumeration of class expressions by length, minimal-basis discovery,
//! growth-rate estimates, rational series expansion, and class comparison.
//!
//! Enumeration works level by level: the candidates of length n+1 are the
//! one-point extensions of the length-n members, so the work is proportional
//! to the class rather than to n!. Every candidate is generated exactly once
//! by accepting it only from its first member deletion.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::json;
use std::collections::HashSet;
use thiserror::Error;

use crate::class::ClassExpr;
use crate::oracle::{Budget, BudgetExceeded, CompiledClass, Oracle};
use crate::perm::Permutation;

/// Exact counts |C_n| for n = 0..=max_len. Counts are arbitrary-precision;
/// the JSON form keeps them as decimal strings so output is bit-exact across
/// platforms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountSequence {
    pub class_label: String,
    pub counts: Vec<BigUint>,
    pub max_len: usize,
}

impl CountSequence {
    pub fn from_u64(label: &str, counts: &[u64]) -> Self {
        CountSequence {
            class_label: label.to_string(),
            counts: counts.iter().map(|&c| BigUint::from(c)).collect(),
            max_len: counts.len().saturating_sub(1),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "class": self.class_label,
            "counts": self.counts.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "max_len": self.max_len,
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,count\n");
        for (n, c) in self.counts.iter().enumerate() {
            out.push_str(&format!("{n},{c}\n"));
        }
        out
    }
}

/// Raw growth-rate data: no extrapolation, just n-th roots and consecutive
/// ratios, plus notes about which of them are certified bounds.
///
/// Index 0 of both lists is the neutral value 1 (there is no 0-th root or
/// ratio); a ratio whose denominator count is zero is reported as 0.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthEstimate {
    pub nth_roots: Vec<f64>,
    pub ratios: Vec<f64>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct Enumeration {
    pub counts: CountSequence,
    /// Members per length, present when requested. Each level is sorted.
    pub levels: Option<Vec<Vec<Permutation>>>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumError {
    #[error("node budget {limit} exhausted; last fully enumerated length: {completed:?}")]
    Budget {
        completed: Option<usize>,
        limit: u64,
    },
}

fn delete_into(vals: &[u8], j: usize, out: &mut Vec<u8>) {
    out.clear();
    let removed = vals[j];
    out.extend(
        vals.iter()
            .enumerate()
            .filter(|&(i, _)| i != j)
            .map(|(_, &x)| if x > removed { x - 1 } else { x }),
    );
}

/// Visit every one-point extension of `parent` that `parent` canonically
/// owns. A candidate is owned by the parent sitting at its first deletion
/// position that lands in `prev_set`, so across a whole level each distinct
/// candidate is visited exactly once, with no per-level candidate set.
fn visit_owned_extensions<E>(
    parent: &Permutation,
    prev_set: &HashSet<&[u8]>,
    mut visit: impl FnMut(&[u8]) -> Result<(), E>,
) -> Result<(), E> {
    let pv = parent.values();
    let np = pv.len();
    let mut shifted: Vec<u8> = Vec::with_capacity(np);
    let mut cand: Vec<u8> = vec![0; np + 1];
    let mut del: Vec<u8> = Vec::with_capacity(np);
    for v in 1..=(np as u8) + 1 {
        shifted.clear();
        shifted.extend(pv.iter().map(|&x| if x >= v { x + 1 } else { x }));
        for pos in 0..=np {
            cand[..pos].copy_from_slice(&shifted[..pos]);
            cand[pos] = v;
            cand[pos + 1..].copy_from_slice(&shifted[pos..]);
            let mut owned = true;
            for j in 0..pos {
                delete_into(&cand, j, &mut del);
                if prev_set.contains(&del[..]) {
                    owned = false;
                    break;
                }
            }
            if owned {
                visit(&cand)?;
            }
        }
    }
    Ok(())
}

/// The length-(n+1) members, given the complete sorted list of length-n
/// members. Membership tests run in parallel over parents and results are
/// merged in sorted order, so the outcome is deterministic.
pub(crate) fn advance_level(
    class: &CompiledClass,
    prev: &[Permutation],
    budget_limit: u64,
) -> Result<Vec<Permutation>, BudgetExceeded> {
    let prev_set: HashSet<&[u8]> = prev.iter().map(|p| p.values()).collect();
    let verdicts: Result<Vec<Vec<Permutation>>, BudgetExceeded> = prev
        .par_iter()
        .map(|parent| {
            let mut accepted = Vec::new();
            visit_owned_extensions(parent, &prev_set, |cand| {
                let candidate = Permutation::from_raw(cand.to_vec());
                let budget = Budget::new(budget_limit);
                if class.member(&candidate, &budget)? {
                    accepted.push(candidate);
                }
                Ok(())
            })?;
            Ok(accepted)
        })
        .collect();
    let mut level: Vec<Permutation> = verdicts?.into_iter().flatten().collect();
    level.sort();
    Ok(level)
}

pub fn enumerate_class(
    oracle: &Oracle,
    expr: &ClassExpr,
    max_len: usize,
    keep_members: bool,
    budget_limit: u64,
) -> Result<Enumeration, EnumError> {
    enumerate_compiled(&oracle.compile(expr), max_len, keep_members, budget_limit)
}

pub fn enumerate_compiled(
    class: &CompiledClass,
    max_len: usize,
    keep_members: bool,
    budget_limit: u64,
) -> Result<Enumeration, EnumError> {
    let mut counts: Vec<BigUint> = Vec::with_capacity(max_len + 1);
    let mut levels: Vec<Vec<Permutation>> = Vec::new();

    let eps_budget = Budget::new(budget_limit);
    let eps_member = class
        .member(&Permutation::empty(), &eps_budget)
        .map_err(|e| EnumError::Budget {
            completed: None,
            limit: e.limit,
        })?;
    let mut level: Vec<Permutation> = if eps_member {
        vec![Permutation::empty()]
    } else {
        Vec::new()
    };
    counts.push(BigUint::from(level.len()));
    if keep_members {
        levels.push(level.clone());
    }

    for n in 1..=max_len {
        level = advance_level(class, &level, budget_limit).map_err(|e| EnumError::Budget {
            completed: Some(n - 1),
            limit: e.limit,
        })?;
        counts.push(BigUint::from(level.len()));
        if keep_members {
            levels.push(level.clone());
        }
    }

    Ok(Enumeration {
        counts: CountSequence {
            class_label: class.canonical().to_string(),
            counts,
            max_len,
        },
        levels: if keep_members { Some(levels) } else { None },
    })
}

/// The minimal non-members of the class up to `max_len`: permutations
/// outside the class whose one-point deletions all lie inside. The result is
/// an antichain, sorted by length then lexicographically.
///
/// For the empty class the basis is {ε}.
pub fn find_basis(
    oracle: &Oracle,
    expr: &ClassExpr,
    max_len: usize,
    budget_limit: u64,
) -> Result<Vec<Permutation>, EnumError> {
    let class = oracle.compile(expr);
    let eps_budget = Budget::new(budget_limit);
    let eps_member = class
        .member(&Permutation::empty(), &eps_budget)
        .map_err(|e| EnumError::Budget {
            completed: None,
            limit: e.limit,
        })?;
    if !eps_member {
        return Ok(vec![Permutation::empty()]);
    }

    let mut basis: Vec<Permutation> = Vec::new();
    let mut level = vec![Permutation::empty()];
    for n in 1..=max_len {
        let prev_set: HashSet<&[u8]> = level.iter().map(|p| p.values()).collect();
        enum Verdict {
            Member(Permutation),
            Basis(Permutation),
        }
        let verdicts: Result<Vec<Vec<Verdict>>, BudgetExceeded> = level
            .par_iter()
            .map(|parent| {
                let mut out = Vec::new();
                let mut del = Vec::new();
                visit_owned_extensions(parent, &prev_set, |cand| {
                    let candidate = Permutation::from_raw(cand.to_vec());
                    let budget = Budget::new(budget_limit);
                    if class.member(&candidate, &budget)? {
                        out.push(Verdict::Member(candidate));
                    } else {
                        let minimal = (0..cand.len()).all(|j| {
                            delete_into(cand, j, &mut del);
                            prev_set.contains(&del[..])
                        });
                        if minimal {
                            out.push(Verdict::Basis(candidate));
                        }
                    }
                    Ok(())
                })?;
                Ok(out)
            })
            .collect();
        let verdicts = verdicts.map_err(|e: BudgetExceeded| EnumError::Budget {
            completed: Some(n - 1),
            limit: e.limit,
        })?;
        let mut next_level = Vec::new();
        for verdict in verdicts.into_iter().flatten() {
            match verdict {
                Verdict::Member(p) => next_level.push(p),
                Verdict::Basis(p) => basis.push(p),
            }
        }
        next_level.sort();
        level = next_level;
    }
    crate::class::sort_perms(&mut basis);
    Ok(basis)
}

/// Compare two classes length by length up to `max_len`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassComparison {
    EqualThrough(usize),
    /// The shortest permutation in the symmetric difference, ties broken
    /// lexicographically; `in_left` tells which class contains it.
    Differs {
        witness: Permutation,
        in_left: bool,
    },
}

pub fn compare_classes(
    oracle: &Oracle,
    left: &ClassExpr,
    right: &ClassExpr,
    max_len: usize,
    budget_limit: u64,
) -> Result<ClassComparison, EnumError> {
    let lc = oracle.compile(left);
    let rc = oracle.compile(right);
    let budget = Budget::new(budget_limit);
    let to_err = |e: BudgetExceeded, n: usize| EnumError::Budget {
        completed: n.checked_sub(1),
        limit: e.limit,
    };

    let eps_l = lc
        .member(&Permutation::empty(), &budget)
        .map_err(|e| to_err(e, 0))?;
    let eps_r = rc
        .member(&Permutation::empty(), &budget)
        .map_err(|e| to_err(e, 0))?;
    if eps_l != eps_r {
        return Ok(ClassComparison::Differs {
            witness: Permutation::empty(),
            in_left: eps_l,
        });
    }
    let mut level_l: Vec<Permutation> = if eps_l {
        vec![Permutation::empty()]
    } else {
        vec![]
    };
    let mut level_r = level_l.clone();

    for n in 1..=max_len {
        level_l = advance_level(&lc, &level_l, budget_limit).map_err(|e| to_err(e, n))?;
        level_r = advance_level(&rc, &level_r, budget_limit).map_err(|e| to_err(e, n))?;
        if level_l != level_r {
            // both sorted: first symmetric-difference element is the witness
            let set_r: HashSet<&Permutation> = level_r.iter().collect();
            let set_l: HashSet<&Permutation> = level_l.iter().collect();
            let only_l = level_l.iter().find(|p| !set_r.contains(*p));
            let only_r = level_r.iter().find(|p| !set_l.contains(*p));
            let (witness, in_left) = match (only_l, only_r) {
                (Some(l), Some(r)) => {
                    if l <= r {
                        (l.clone(), true)
                    } else {
                        (r.clone(), false)
                    }
                }
                (Some(l), None) => (l.clone(), true),
                (None, Some(r)) => (r.clone(), false),
                (None, None) => unreachable!("levels differ"),
            };
            return Ok(ClassComparison::Differs { witness, in_left });
        }
    }
    Ok(ClassComparison::EqualThrough(max_len))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MaxIntersection {
    Length(usize),
    ExceedsCutoff(usize),
}

/// The largest n ≤ cutoff with a length-n permutation in both classes, or
/// `ExceedsCutoff` if the length-cutoff intersection is still nonempty.
/// Intersections of classes are downward closed, so the first empty level
/// settles the answer.
pub fn max_intersection_length(
    oracle: &Oracle,
    a: &ClassExpr,
    b: &ClassExpr,
    cutoff: usize,
    budget_limit: u64,
) -> Result<MaxIntersection, EnumError> {
    assert!(cutoff >= 1, "cutoff must be at least 1");
    let both = ClassExpr::intersection(vec![a.clone(), b.clone()]).expect("two operands");
    let class = oracle.compile(&both);
    let mut level = vec![Permutation::empty()];
    for n in 1..=cutoff {
        level = advance_level(&class, &level, budget_limit).map_err(|e| EnumError::Budget {
            completed: Some(n - 1),
            limit: e.limit,
        })?;
        if level.is_empty() {
            return Ok(MaxIntersection::Length(n - 1));
        }
    }
    Ok(MaxIntersection::ExceedsCutoff(cutoff))
}

/// Raw growth-rate estimates from a count sequence. When `sum_closed_hint`
/// is set the n-th roots are recorded as certified lower bounds (Fekete's
/// lemma for supermultiplicative sequences).
pub fn growth_estimates(c: &CountSequence, sum_closed_hint: bool) -> GrowthEstimate {
    let to_f64 = |b: &BigUint| -> f64 {
        let s = b.to_string();
        s.parse::<f64>().unwrap_or(f64::MAX)
    };
    let mut nth_roots = Vec::with_capacity(c.counts.len());
    let mut ratios = Vec::with_capacity(c.counts.len());
    for (n, count) in c.counts.iter().enumerate() {
        if n == 0 {
            nth_roots.push(1.0);
            ratios.push(1.0);
            continue;
        }
        nth_roots.push(to_f64(count).powf(1.0 / n as f64));
        let prev = &c.counts[n - 1];
        if prev.is_zero() {
            ratios.push(0.0);
        } else {
            ratios.push(to_f64(count) / to_f64(prev));
        }
    }
    let mut notes = Vec::new();
    if sum_closed_hint {
        notes.push(
            "sum-closed: counts are supermultiplicative, so every n-th root is a certified \
             lower bound on the growth rate"
                .to_string(),
        );
    }
    GrowthEstimate {
        nth_roots,
        ratios,
        notes,
    }
}

/// All pairs m ≤ n with m + n ≤ max_len and counts[m]·counts[n] >
/// counts[m+n]. Empty exactly when the sequence is supermultiplicative over
/// the enumerated range, as sum- and skew-closed classes must be.
pub fn check_supermultiplicative(c: &CountSequence) -> Vec<(usize, usize)> {
    let mut violations = Vec::new();
    for m in 0..=c.max_len {
        for n in m..=c.max_len.saturating_sub(m) {
            if &c.counts[m] * &c.counts[n] > c.counts[m + n] {
                violations.push((m, n));
            }
        }
    }
    violations
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("the denominator's constant term must be nonzero")]
    ZeroConstantTerm,
    #[error("coefficient {index} of the series is not an integer")]
    NonIntegerCoefficient { index: usize },
}

/// First `terms` Taylor coefficients of numerator/denominator, where both
/// are polynomials given by their coefficient lists (constant term first).
/// Exact integers via the induced linear recurrence; a non-integer
/// coefficient is an error rather than a rounded value.
pub fn rational_series(
    numerator: &[i64],
    denominator: &[i64],
    terms: usize,
) -> Result<Vec<BigInt>, SeriesError> {
    let d0 = BigInt::from(*denominator.first().ok_or(SeriesError::ZeroConstantTerm)?);
    if d0.is_zero() {
        return Err(SeriesError::ZeroConstantTerm);
    }
    let mut coeffs: Vec<BigInt> = Vec::with_capacity(terms);
    for n in 0..terms {
        let mut s = if n < numerator.len() {
            BigInt::from(numerator[n])
        } else {
            BigInt::zero()
        };
        for k in 1..denominator.len().min(n + 1) {
            s -= BigInt::from(denominator[k]) * &coeffs[n - k];
        }
        if (&s % &d0).is_zero() {
            coeffs.push(s / &d0);
        } else {
            return Err(SeriesError::NonIntegerCoefficient { index: n });
        }
    }
    Ok(coeffs)
}

/// binom(n, k), exactly; 0 when k > n.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut result = BigUint::one();
    for i in 0..k {
        result = result * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn av(s: &str) -> ClassExpr {
        ClassExpr::av1(s)
    }

    fn counts_u64(e: &Enumeration) -> Vec<u64> {
        e.counts
            .counts
            .iter()
            .map(|c| c.to_string().parse().unwrap())
            .collect()
    }

    #[test]
    fn enumerate_monotone_class() {
        let oracle = Oracle::new();
        let e = enumerate_class(&oracle, &av("21"), 6, false, 1 << 20).unwrap();
        assert_eq!(counts_u64(&e), vec![1, 1, 1, 1, 1, 1, 1]);
    }

    #[test]
    fn enumerate_catalan_prefix() {
        let oracle = Oracle::new();
        let e = enumerate_class(&oracle, &av("321"), 8, true, 1 << 22).unwrap();
        assert_eq!(counts_u64(&e), vec![1, 1, 2, 5, 14, 42, 132, 429, 1430]);
        let levels = e.levels.unwrap();
        assert_eq!(
            levels[3],
            vec![p("123"), p("132"), p("213"), p("231"), p("312")]
        );
    }

    #[test]
    fn enumerate_two_element_basis() {
        let oracle = Oracle::new();
        let basis = ClassExpr::avoid(vec![p("321"), p("4123")]).unwrap();
        let e = enumerate_class(&oracle, &basis, 6, false, 1 << 22).unwrap();
        assert_eq!(counts_u64(&e), vec![1, 1, 2, 5, 13, 34, 89]);
    }

    #[test]
    fn enumerate_empty_class() {
        let oracle = Oracle::new();
        let e = enumerate_class(&oracle, &ClassExpr::finite_set([]), 3, false, 1 << 20).unwrap();
        assert_eq!(counts_u64(&e), vec![0, 0, 0, 0]);
    }

    #[test]
    fn enumeration_matches_naive_filtration() {
        let oracle = Oracle::new();
        let budget_limit = 1 << 22;
        let exprs = vec![
            av("321"),
            ClassExpr::merge(av("21"), av("12")),
            ClassExpr::sum_closure(av("12")),
            ClassExpr::finite_set([p("132"), p("321")]),
        ];
        for expr in exprs {
            let e = enumerate_class(&oracle, &expr, 6, false, budget_limit).unwrap();
            let compiled = oracle.compile(&expr);
            for n in 0..=6usize {
                let budget = Budget::new(budget_limit);
                let naive = crate::perm::all_permutations(n)
                    .into_iter()
                    .filter(|q| compiled.member(q, &budget).unwrap())
                    .count();
                assert_eq!(
                    e.counts.counts[n],
                    BigUint::from(naive),
                    "{expr} at length {n}"
                );
            }
        }
    }

    #[test]
    fn basis_recovers_avoidance_basis() {
        let oracle = Oracle::new();
        assert_eq!(
            find_basis(&oracle, &av("21"), 4, 1 << 20).unwrap(),
            vec![p("21")]
        );
        let two = ClassExpr::avoid(vec![p("321"), p("4123")]).unwrap();
        assert_eq!(
            find_basis(&oracle, &two, 5, 1 << 22).unwrap(),
            vec![p("321"), p("4123")]
        );
    }

    #[test]
    fn basis_of_skew_merged_class() {
        let oracle = Oracle::new();
        let merged = ClassExpr::merge(av("21"), av("12"));
        assert_eq!(
            find_basis(&oracle, &merged, 5, 1 << 22).unwrap(),
            vec![p("2143"), p("3412")]
        );
    }

    #[test]
    fn basis_of_empty_class_is_epsilon() {
        let oracle = Oracle::new();
        assert_eq!(
            find_basis(&oracle, &ClassExpr::finite_set([]), 3, 1 << 20).unwrap(),
            vec![Permutation::empty()]
        );
    }

    #[test]
    fn basis_of_point_class() {
        let oracle = Oracle::new();
        assert_eq!(
            find_basis(&oracle, &ClassExpr::finite_set([p("1")]), 4, 1 << 20).unwrap(),
            vec![p("12"), p("21")]
        );
    }

    #[test]
    fn compare_finds_shortest_witness() {
        let oracle = Oracle::new();
        match compare_classes(&oracle, &av("21"), &av("12"), 2, 1 << 20).unwrap() {
            ClassComparison::Differs { witness, in_left } => {
                assert_eq!(witness, p("12"));
                assert!(in_left);
            }
            other => panic!("expected a witness, got {other:?}"),
        }
        assert_eq!(
            compare_classes(&oracle, &av("321"), &av("321"), 5, 1 << 20).unwrap(),
            ClassComparison::EqualThrough(5)
        );
    }

    #[test]
    fn max_intersection_examples() {
        let oracle = Oracle::new();
        assert_eq!(
            max_intersection_length(&oracle, &av("12"), &av("21"), 5, 1 << 20).unwrap(),
            MaxIntersection::Length(1)
        );
        assert_eq!(
            max_intersection_length(&oracle, &av("321"), &av("321"), 3, 1 << 20).unwrap(),
            MaxIntersection::ExceedsCutoff(3)
        );
        assert_eq!(
            max_intersection_length(
                &oracle,
                &av("21"),
                &ClassExpr::finite_set([p("1")]),
                5,
                1 << 20
            )
            .unwrap(),
            MaxIntersection::Length(1)
        );
    }

    #[test]
    fn growth_estimate_conventions() {
        let ones = CountSequence::from_u64("Av(21)", &[1, 1, 1, 1]);
        let g = growth_estimates(&ones, false);
        assert!(g.nth_roots.iter().all(|&r| r == 1.0));
        assert!(g.ratios.iter().all(|&r| r == 1.0));
        assert!(g.notes.is_empty());

        let layered = CountSequence::from_u64("sumclose(Av(12))", &[1, 1, 2, 4, 8, 16]);
        let g = growth_estimates(&layered, true);
        assert_eq!(&g.ratios[2..], &[2.0, 2.0, 2.0, 2.0]);
        assert_eq!(g.notes.len(), 1);

        let catalan = CountSequence::from_u64("Av(321)", &[1, 1, 2, 5, 14, 42, 132, 429, 1430]);
        let g = growth_estimates(&catalan, false);
        let last = *g.ratios.last().unwrap();
        assert!((last - 1430.0 / 429.0).abs() < 1e-12);
        assert!(g.ratios.windows(2).skip(1).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn supermultiplicative_violations() {
        let bad = CountSequence::from_u64("artificial", &[1, 5, 5]);
        assert_eq!(check_supermultiplicative(&bad), vec![(1, 1)]);
        let ones = CountSequence::from_u64("Av(12)", &[1, 1, 1, 1, 1]);
        assert!(check_supermultiplicative(&ones).is_empty());
    }

    #[test]
    fn series_expansion() {
        let geometric = rational_series(&[1], &[1, -1], 5).unwrap();
        assert_eq!(
            geometric,
            vec![1, 1, 1, 1, 1]
                .into_iter()
                .map(BigInt::from)
                .collect::<Vec<_>>()
        );

        let fib_odd = rational_series(&[1, -2], &[1, -3, 1], 7).unwrap();
        assert_eq!(
            fib_odd,
            vec![1, 1, 2, 5, 13, 34, 89]
                .into_iter()
                .map(BigInt::from)
                .collect::<Vec<_>>()
        );

        let unit = rational_series(&[1], &[1], 4).unwrap();
        assert_eq!(
            unit,
            vec![1, 0, 0, 0]
                .into_iter()
                .map(BigInt::from)
                .collect::<Vec<_>>()
        );

        assert_eq!(
            rational_series(&[1], &[0, 1], 3),
            Err(SeriesError::ZeroConstantTerm)
        );
        assert_eq!(
            rational_series(&[2], &[2, 1], 3),
            Err(SeriesError::NonIntegerCoefficient { index: 1 })
        );
    }

    #[test]
    fn series_satisfies_recurrence() {
        let num = [3, -1, 2];
        let den = [1, -2, 0, 5];
        let coeffs = rational_series(&num, &den, 12).unwrap();
        // for n >= deg(num)+1: sum_k den[k] * a[n-k] = 0
        for n in num.len()..12 {
            let mut s = BigInt::zero();
            for (k, &d) in den.iter().enumerate() {
                if k <= n {
                    s += BigInt::from(d) * &coeffs[n - k];
                }
            }
            assert!(s.is_zero(), "recurrence fails at {n}");
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(0, 0), BigUint::one());
        assert_eq!(binomial(6, 3), BigUint::from(20u32));
        assert_eq!(binomial(3, 7), BigUint::zero());
        assert_eq!(binomial(50, 25).to_string(), "126410606437752");
    }

    #[test]
    fn json_and_csv_forms() {
        let c = CountSequence::from_u64("Av(21)", &[1, 1, 1]);
        assert_eq!(
            c.to_json().to_string(),
            r#"{"class":"Av(21)","counts":["1","1","1"],"max_len":2}"#
        );
        assert_eq!(c.to_csv(), "n,count\n0,1\n1,1\n2,1\n");
    }
}
