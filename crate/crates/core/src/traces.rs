//! Thoma-parameter traces on symmetric groups, their lifts to diagram
//! algebras through the invertibility quotient, product traces for pairs
//! of permutations, and the tower trace recursion check.

use num_traits::{One, Zero};

use crate::algebra::{AlgebraElement, GroupAlgebraElement};
use crate::error::{Error, Result};
use crate::ratio::{format_ratio, parse_ratio};
use crate::young::Permutation;
use crate::BigRatio;

/// Two weakly decreasing summable lists of positive rationals with total
/// mass at most 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ThomaParameter {
    alpha: Vec<BigRatio>,
    beta: Vec<BigRatio>,
}

impl ThomaParameter {
    pub fn new(alpha: Vec<BigRatio>, beta: Vec<BigRatio>) -> Result<Self> {
        for (name, list) in [("alpha", &alpha), ("beta", &beta)] {
            for v in list {
                if *v <= BigRatio::zero() {
                    return Err(Error::InvalidThoma(format!(
                        "{name} entries must be positive, got {}",
                        format_ratio(v)
                    )));
                }
            }
            if list.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::InvalidThoma(format!(
                    "{name} must be weakly decreasing"
                )));
            }
        }
        let total: BigRatio = alpha.iter().chain(beta.iter()).cloned().sum();
        if total > BigRatio::one() {
            return Err(Error::InvalidThoma(format!(
                "total mass {} exceeds 1",
                format_ratio(&total)
            )));
        }
        Ok(ThomaParameter { alpha, beta })
    }

    /// Parses `{"alpha": ["1/2", ...], "beta": [...]}`.
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let read = |key: &str| -> Result<Vec<BigRatio>> {
            match value.get(key) {
                None => Ok(Vec::new()),
                Some(v) => {
                    let strings: Vec<String> = serde_json::from_value(v.clone())
                        .map_err(|e| Error::InvalidThoma(format!("{key}: {e}")))?;
                    strings.iter().map(|s| parse_ratio(s)).collect()
                }
            }
        };
        ThomaParameter::new(read("alpha")?, read("beta")?)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "alpha": self.alpha.iter().map(format_ratio).collect::<Vec<_>>(),
            "beta": self.beta.iter().map(format_ratio).collect::<Vec<_>>(),
        })
    }

    pub fn alpha(&self) -> &[BigRatio] {
        &self.alpha
    }

    pub fn beta(&self) -> &[BigRatio] {
        &self.beta
    }
}

/// The two readings of the cycle exponent in the trace formula.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TraceConvention {
    /// Exponent = cycle size − 1 (the transposition count of the cycle),
    /// sign (−1)^size on the beta sum.
    PaperLiteral,
    /// Exponent = cycle size, sign (−1)^(size−1): the classical formula.
    CycleLength,
}

impl TraceConvention {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "paper-literal" => Ok(TraceConvention::PaperLiteral),
            "cycle-length" => Ok(TraceConvention::CycleLength),
            other => Err(Error::UnknownConvention(other.to_string())),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TraceConvention::PaperLiteral => "paper-literal",
            TraceConvention::CycleLength => "cycle-length",
        }
    }
}

fn power_sum(values: &[BigRatio], exponent: u32) -> BigRatio {
    let mut total = BigRatio::zero();
    for v in values {
        let mut power = BigRatio::one();
        for _ in 0..exponent {
            power *= v;
        }
        total += power;
    }
    total
}

/// The extremal character value at σ for the Thoma parameter `t`:
/// a product over the cycles of σ of size ≥ 2 (fixed points contribute the
/// factor 1, and the identity maps to 1).
pub fn thoma_trace(t: &ThomaParameter, sigma: &Permutation, conv: TraceConvention) -> BigRatio {
    let mut out = BigRatio::one();
    for cycle in sigma.cycles() {
        let size = cycle.len() as u32;
        if size < 2 {
            continue;
        }
        let (exponent, beta_negative) = match conv {
            TraceConvention::PaperLiteral => (size - 1, size % 2 == 1),
            TraceConvention::CycleLength => (size, size.is_multiple_of(2)),
        };
        let alpha_sum = power_sum(&t.alpha, exponent);
        let beta_sum = power_sum(&t.beta, exponent);
        out *= if beta_negative {
            alpha_sum - beta_sum
        } else {
            alpha_sum + beta_sum
        };
    }
    out
}

/// Linear extension to the group algebra; `delta` is only consulted when a
/// coefficient is a non-constant polynomial.
pub fn group_algebra_trace(
    t: &ThomaParameter,
    conv: TraceConvention,
    x: &GroupAlgebraElement,
    delta: Option<&BigRatio>,
) -> Result<BigRatio> {
    let mut out = BigRatio::zero();
    for (sigma, coeff) in x.terms() {
        let scalar = match (coeff.is_constant(), delta) {
            (_, Some(d)) => coeff.eval(d),
            (true, None) => coeff.eval(&BigRatio::zero()),
            (false, None) => return Err(Error::DeltaValueRequired),
        };
        out += scalar * thoma_trace(t, sigma, conv);
    }
    Ok(out)
}

/// The lift of a Thoma trace through the invertibility quotient: the value
/// at a diagram-algebra element is the group-algebra trace of its
/// projection, so every non-invertible basis diagram maps to 0.
pub fn lifted_diagram_trace(
    t: &ThomaParameter,
    conv: TraceConvention,
    x: &AlgebraElement,
    delta: Option<&BigRatio>,
) -> Result<BigRatio> {
    group_algebra_trace(t, conv, &x.quotient_project(), delta)
}

/// Extremal trace on a product of two symmetric groups: the product of the
/// two factor traces.
pub fn product_thoma_trace(
    t1: &ThomaParameter,
    t2: &ThomaParameter,
    conv: TraceConvention,
    left: &Permutation,
    right: &Permutation,
) -> BigRatio {
    thoma_trace(t1, left, conv) * thoma_trace(t2, right, conv)
}

/// Result of solving the tower trace recursion `c_0 = 1`,
/// `n·c_{n−1} = (n−1)·c_n + 1`.
#[derive(Clone, Debug)]
pub struct TowerRecursionReport {
    /// c_0..c_N; all exactly 1.
    pub coefficients: Vec<BigRatio>,
    pub all_one: bool,
    /// Largest admissible deviation of c_1 below 1 given the horizon: a
    /// solution with c_1 = 1 − ε has c_N = 1 − N·ε, so staying in the unit
    /// interval through level N forces ε ≤ 1/N.
    pub max_admissible_deviation: BigRatio,
}

/// Solves the recursion for n ≤ N within the unit interval, checking it pins
/// every coefficient to 1. The general solution is c_n = 1 − n·(1 − c_1);
/// nonnegativity over the whole horizon forces c_1 = 1 in the limit.
pub fn lambda_tower_trace_check(n_max: usize) -> TowerRecursionReport {
    assert!(n_max >= 1, "need at least one recursion instance");
    let one = BigRatio::one();
    let mut coefficients = vec![one.clone(), one.clone()];
    for n in 2..=n_max {
        // c_n = (n·c_{n−1} − 1)/(n − 1)
        let n_ratio = BigRatio::from_integer(n.into());
        let c = (&n_ratio * &coefficients[n - 1] - &one) / (n_ratio - &one);
        coefficients.push(c);
    }
    let all_one = coefficients.iter().all(|c| c.is_one());
    // verify every instance n·c_{n−1} = (n−1)·c_n + 1 exactly
    let verified = (1..=n_max).all(|n| {
        let lhs = BigRatio::from_integer(n.into()) * &coefficients[n - 1];
        let rhs = BigRatio::from_integer((n - 1).into()) * &coefficients[n] + &one;
        lhs == rhs
    });
    TowerRecursionReport {
        coefficients,
        all_one: all_one && verified,
        max_admissible_deviation: BigRatio::new(1.into(), n_max.into()),
    }
}

/// How a seeded deviation from the all-ones solution fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeededDeviation {
    /// The recursion instance at this n is violated outright.
    RecursionViolatedAt(usize),
    /// The recursion stays consistent but the forced continuation leaves
    /// the unit interval at this n.
    LeavesUnitIntervalAt(usize),
    /// No contradiction within the horizon (only possible for value 1).
    ConsistentWithinHorizon,
}

/// Seeds `c_index = value` on top of c_i = 1 for i < index and follows the
/// recursion, reporting how the deviation becomes inadmissible.
pub fn lambda_tower_seeded(index: usize, value: &BigRatio, horizon: usize) -> SeededDeviation {
    let one = BigRatio::one();
    if value.is_one() {
        return SeededDeviation::ConsistentWithinHorizon;
    }
    if index == 0 {
        // c_0 = 1 is the initial condition itself
        return SeededDeviation::RecursionViolatedAt(0);
    }
    if index >= 2 {
        // the instance at n = index reads index·1 = (index−1)·value + 1
        let lhs = BigRatio::from_integer(index.into());
        let rhs = BigRatio::from_integer((index - 1).into()) * value + &one;
        if lhs != rhs {
            return SeededDeviation::RecursionViolatedAt(index);
        }
    }
    // index == 1: follow c_n = 1 − n·(1 − c_1) until it leaves [0,1]
    let mut c = value.clone();
    for n in (index + 1)..=horizon {
        let n_ratio = BigRatio::from_integer(n.into());
        c = (&n_ratio * &c - &one) / (n_ratio - &one);
        if c < BigRatio::zero() || c > one {
            return SeededDeviation::LeavesUnitIntervalAt(n);
        }
    }
    SeededDeviation::ConsistentWithinHorizon
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{DeltaPolynomial, SetPartitionDiagram};

    fn ratio(s: &str) -> BigRatio {
        parse_ratio(s).unwrap()
    }

    fn thoma(alpha: &[&str], beta: &[&str]) -> ThomaParameter {
        ThomaParameter::new(
            alpha.iter().map(|s| ratio(s)).collect(),
            beta.iter().map(|s| ratio(s)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn thoma_validation() {
        assert!(ThomaParameter::new(vec![ratio("1/2"), ratio("2/3")], vec![]).is_err());
        assert!(ThomaParameter::new(vec![ratio("2/3"), ratio("2/3")], vec![]).is_err());
        assert!(ThomaParameter::new(vec![ratio("0")], vec![]).is_err());
        assert!(thoma(&["1/2", "1/4"], &["1/8"]).alpha().len() == 2);
    }

    #[test]
    fn identity_has_trace_one() {
        let t = thoma(&["1/3"], &["1/4"]);
        for conv in [TraceConvention::PaperLiteral, TraceConvention::CycleLength] {
            assert!(thoma_trace(&t, &Permutation::identity(5), conv).is_one());
        }
    }

    #[test]
    fn one_dimensional_parameter_gives_constant_one() {
        let t = thoma(&["1"], &[]);
        let sigma = Permutation::from_one_line(&[2, 3, 1, 5, 4]).unwrap();
        assert!(thoma_trace(&t, &sigma, TraceConvention::CycleLength).is_one());
        assert!(thoma_trace(&t, &sigma, TraceConvention::PaperLiteral).is_one());
    }

    #[test]
    fn three_cycle_under_paper_literal() {
        // exponent is 2 for a 3-cycle: (1/2)² + (1/2)² = 1/2
        let t = thoma(&["1/2", "1/2"], &[]);
        let sigma = Permutation::from_one_line(&[2, 3, 1]).unwrap();
        assert_eq!(
            thoma_trace(&t, &sigma, TraceConvention::PaperLiteral),
            ratio("1/2")
        );
        // under cycle-length the exponent is 3: (1/8) + (1/8) = 1/4
        assert_eq!(
            thoma_trace(&t, &sigma, TraceConvention::CycleLength),
            ratio("1/4")
        );
    }

    #[test]
    fn beta_sign_flips_between_conventions() {
        let t = thoma(&[], &["1/2"]);
        let transposition = Permutation::from_one_line(&[2, 1]).unwrap();
        // paper-literal on a 2-cycle: exponent 1, sign (−1)^2 = +
        assert_eq!(
            thoma_trace(&t, &transposition, TraceConvention::PaperLiteral),
            ratio("1/2")
        );
        // cycle-length: exponent 2, sign (−1)^1 = −
        assert_eq!(
            thoma_trace(&t, &transposition, TraceConvention::CycleLength),
            ratio("-1/4")
        );
    }

    #[test]
    fn trace_is_a_class_function() {
        let t = thoma(&["1/2", "1/4"], &["1/8"]);
        let sigma = Permutation::from_one_line(&[2, 3, 1, 5, 4, 6]).unwrap();
        let pi = Permutation::from_one_line(&[3, 1, 4, 2, 6, 5]).unwrap();
        let conjugated = pi.compose(&sigma).compose(&pi.inverse());
        for conv in [TraceConvention::PaperLiteral, TraceConvention::CycleLength] {
            assert_eq!(
                thoma_trace(&t, &sigma, conv),
                thoma_trace(&t, &conjugated, conv)
            );
        }
    }

    #[test]
    fn group_algebra_linear_combination() {
        // (1 2) + (1 3) at alpha = (1/2,1/2): 2·(1/4+1/4) = 1
        let t = thoma(&["1/2", "1/2"], &[]);
        let a = Permutation::from_one_line(&[2, 1, 3]).unwrap();
        let b = Permutation::from_one_line(&[3, 2, 1]).unwrap();
        let x = GroupAlgebraElement::basis(a)
            .add(&GroupAlgebraElement::basis(b))
            .unwrap();
        let value = group_algebra_trace(&t, TraceConvention::CycleLength, &x, None).unwrap();
        assert!(value.is_one());
        // the unit always has trace 1
        let unit = GroupAlgebraElement::unit(3);
        assert!(group_algebra_trace(&t, TraceConvention::CycleLength, &unit, None)
            .unwrap()
            .is_one());
    }

    #[test]
    fn class_function_difference_vanishes() {
        let t = thoma(&["1/2"], &["1/3"]);
        let a = Permutation::from_one_line(&[2, 1, 3]).unwrap();
        let b = Permutation::from_one_line(&[1, 3, 2]).unwrap(); // same cycle type
        let x = GroupAlgebraElement::basis(a)
            .add(&GroupAlgebraElement::basis(b).with_term(
                Permutation::from_one_line(&[1, 3, 2]).unwrap(),
                DeltaPolynomial::constant(ratio("-2")),
            ))
            .unwrap();
        // x = (1 2) − (2 3): same class, trace must cancel
        let value = group_algebra_trace(&t, TraceConvention::CycleLength, &x, None).unwrap();
        assert!(value.is_zero());
    }

    #[test]
    fn delta_value_demanded_only_when_needed() {
        let t = thoma(&["1"], &[]);
        let x = GroupAlgebraElement::unit(2);
        assert!(group_algebra_trace(&t, TraceConvention::CycleLength, &x, None).is_ok());
        let y = GroupAlgebraElement::zero(2)
            .with_term(Permutation::identity(2), DeltaPolynomial::delta_power(1));
        assert!(matches!(
            group_algebra_trace(&t, TraceConvention::CycleLength, &y, None),
            Err(Error::DeltaValueRequired)
        ));
        let value =
            group_algebra_trace(&t, TraceConvention::CycleLength, &y, Some(&ratio("7/2"))).unwrap();
        assert_eq!(value, ratio("7/2"));
    }

    #[test]
    fn lift_vanishes_on_noninvertible_diagrams() {
        let t = thoma(&["1/2"], &["1/4"]);
        let cap = SetPartitionDiagram::new(&[vec![1, 2], vec![-1, -2]]).unwrap();
        let x = AlgebraElement::basis(cap).unwrap();
        let value =
            lifted_diagram_trace(&t, TraceConvention::CycleLength, &x, Some(&ratio("5"))).unwrap();
        assert!(value.is_zero());
    }

    #[test]
    fn lift_of_crossing_under_trivial_parameter() {
        let t = thoma(&["1"], &[]);
        let q = AlgebraElement::basis(SetPartitionDiagram::crossing_at(2, 0)).unwrap();
        let value = lifted_diagram_trace(&t, TraceConvention::CycleLength, &q, None).unwrap();
        assert!(value.is_one());
    }

    #[test]
    fn product_trace_values() {
        let t1 = thoma(&["1/2", "1/2"], &[]);
        let t2 = thoma(&["1"], &[]);
        let id = Permutation::identity(2);
        assert!(product_thoma_trace(&t1, &t2, TraceConvention::CycleLength, &id, &id).is_one());
        let swap = Permutation::from_one_line(&[2, 1]).unwrap();
        assert_eq!(
            product_thoma_trace(&t1, &t2, TraceConvention::CycleLength, &swap, &id),
            ratio("1/2")
        );
    }

    #[test]
    fn tower_recursion_forces_ones() {
        let report = lambda_tower_trace_check(10);
        assert!(report.all_one);
        assert_eq!(report.coefficients.len(), 11);
        assert_eq!(report.max_admissible_deviation, ratio("1/10"));
        // the shortest horizon already pins c_0 and c_1
        let short = lambda_tower_trace_check(1);
        assert!(short.all_one);
        assert_eq!(short.coefficients, vec![ratio("1"), ratio("1")]);
    }

    #[test]
    fn seeded_deviation_is_caught() {
        // c_5 = 1/2 violates 5·c_4 = 4·c_5 + 1
        assert_eq!(
            lambda_tower_seeded(5, &ratio("1/2"), 20),
            SeededDeviation::RecursionViolatedAt(5)
        );
        // c_1 = 1/2 stays recursion-consistent but c_2 = 0, c_3 = −1/2
        assert_eq!(
            lambda_tower_seeded(1, &ratio("1/2"), 20),
            SeededDeviation::LeavesUnitIntervalAt(3)
        );
        assert_eq!(
            lambda_tower_seeded(4, &ratio("1"), 20),
            SeededDeviation::ConsistentWithinHorizon
        );
    }
}
