//! The integer arrays that factor branching-graph dimensions through Young
//! dimensions, together with their verification sweeps.
//!
//! `M(n,l)` counts n-step lazy walks on the Young graph relative to a
//! diagram of size l; `K(n,k,l)` plays the same role for walks on the
//! coupled Young graph. Both are defined by recursions with exact
//! big-integer entries, and every identity or inequality below is checked
//! by cross-multiplication, never by division.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::report::CheckReport;
use crate::young::YoungDiagram;
use crate::BigCount;

/// n! as a big integer.
pub fn factorial(n: u64) -> BigCount {
    let mut out = BigCount::one();
    for v in 2..=n {
        out *= v;
    }
    out
}

/// Binomial coefficient C(n, k).
pub fn binomial(n: u64, k: u64) -> BigCount {
    if k > n {
        return BigCount::zero();
    }
    let k = k.min(n - k);
    let mut out = BigCount::one();
    for i in 0..k {
        out = out * (n - i) / (i + 1);
    }
    out
}

/// The odd double factorial (2k−1)!! with the empty product at k = 0.
pub fn odd_double_factorial(k: u64) -> BigCount {
    let mut out = BigCount::one();
    for v in 1..=k {
        out *= 2 * v - 1;
    }
    out
}

// ------------------------------------------------------------------
// M(n,l)
// ------------------------------------------------------------------

/// Triangular table of the lazy-walk factors M(n,l), 0 ≤ l ≤ n ≤ N.
pub struct MArray {
    rows: Vec<Vec<BigCount>>,
}

impl MArray {
    /// Builds the table by the recursion
    /// `M(n,n) = 1`, `M(n,0) = M(n−1,0) + M(n−1,1)`,
    /// `M(n,l) = M(n−1,l−1) + M(n−1,l) + (l+1)·M(n−1,l+1)`,
    /// with `M(n,l) = 0` for l > n.
    pub fn build(n_max: usize) -> MArray {
        let mut rows: Vec<Vec<BigCount>> = Vec::with_capacity(n_max + 1);
        rows.push(vec![BigCount::one()]);
        for n in 1..=n_max {
            let prev = &rows[n - 1];
            let at = |l: usize| -> BigCount {
                if l < prev.len() {
                    prev[l].clone()
                } else {
                    BigCount::zero()
                }
            };
            let mut row = Vec::with_capacity(n + 1);
            row.push(at(0) + at(1));
            for l in 1..n {
                row.push(at(l - 1) + at(l) + at(l + 1) * BigCount::from(l as u32 + 1));
            }
            row.push(BigCount::one());
            rows.push(row);
        }
        MArray { rows }
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// M(n,l); zero when l > n. Panics when n exceeds the built range.
    pub fn get(&self, n: usize, l: usize) -> BigCount {
        let row = &self.rows[n];
        if l < row.len() {
            row[l].clone()
        } else {
            BigCount::zero()
        }
    }

    fn at(&self, n: usize, l: usize) -> &BigCount {
        &self.rows[n][l]
    }

    /// CSV dump with columns `n,l,value`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,l,value\n");
        for (n, row) in self.rows.iter().enumerate() {
            for (l, v) in row.iter().enumerate() {
                out.push_str(&format!("{n},{l},{v}\n"));
            }
        }
        out
    }
}

/// Exact verification of the closed identities and monotonicity claims for
/// the M array:
/// 1. `M(n,0) = M(n−1,0) + (n−1)·M(n−2,0)`;
/// 2. `M(n+l,l) = C(n+l,l)·M(n,0)`;
/// 3. `M(n−1,0)/M(n,0)` weakly decreasing;
/// 4. `n·M(n−1,0)/M(n,0)` weakly increasing;
/// 5. `max_{l<n} M(n−1,l)/M(n,l) = M(n−1,0)/M(n,0)`.
pub fn m_properties_report(m: &MArray) -> Vec<CheckReport> {
    let n_max = m.n_max();
    let mut reports = Vec::new();

    let mut witness = None;
    for n in 2..=n_max {
        let rhs = m.get(n - 1, 0) + m.get(n - 2, 0) * BigCount::from(n as u32 - 1);
        if m.get(n, 0) != rhs {
            witness = Some(format!("n={n}"));
            break;
        }
    }
    reports.push(report(
        "M(n,0) = M(n-1,0) + (n-1)M(n-2,0)",
        format!("2 <= n <= {n_max}"),
        witness,
    ));

    let mut witness = None;
    'outer: for l in 1..=n_max {
        for n in 0..=(n_max - l) {
            let rhs = binomial((n + l) as u64, l as u64) * m.get(n, 0);
            if m.get(n + l, l) != rhs {
                witness = Some(format!("n={n}, l={l}"));
                break 'outer;
            }
        }
    }
    reports.push(report(
        "M(n+l,l) = C(n+l,l)M(n,0)",
        format!("l >= 1, n+l <= {n_max}"),
        witness,
    ));

    // ratios compared by cross-multiplication
    let mut witness = None;
    for n in 2..=n_max {
        // M(n-1,0)/M(n,0) <= M(n-2,0)/M(n-1,0)
        if m.at(n - 1, 0) * m.at(n - 1, 0) > m.at(n, 0) * m.at(n - 2, 0) {
            witness = Some(format!("n={n}"));
            break;
        }
    }
    reports.push(report(
        "M(n-1,0)/M(n,0) weakly decreasing",
        format!("2 <= n <= {n_max}"),
        witness,
    ));

    let mut witness = None;
    for n in 2..=n_max {
        // n·M(n-1,0)/M(n,0) >= (n-1)·M(n-2,0)/M(n-1,0)
        let lhs = m.at(n - 1, 0) * m.at(n - 1, 0) * BigCount::from(n as u32);
        let rhs = m.at(n - 2, 0) * m.at(n, 0) * BigCount::from(n as u32 - 1);
        if lhs < rhs {
            witness = Some(format!("n={n}"));
            break;
        }
    }
    reports.push(report(
        "n·M(n-1,0)/M(n,0) weakly increasing",
        format!("2 <= n <= {n_max}"),
        witness,
    ));

    let mut witness = None;
    'outer: for n in 1..=n_max {
        for l in 0..n {
            // M(n-1,l)/M(n,l) <= M(n-1,0)/M(n,0)
            if m.at(n - 1, l) * m.at(n, 0) > m.at(n - 1, 0) * m.at(n, l) {
                witness = Some(format!("n={n}, l={l}"));
                break 'outer;
            }
        }
    }
    reports.push(report(
        "max over l<n of M(n-1,l)/M(n,l) is attained at l=0",
        format!("1 <= n <= {n_max}"),
        witness,
    ));

    reports
}

fn report(claim: &str, range: String, witness: Option<String>) -> CheckReport {
    match witness {
        None => CheckReport::pass(claim, range),
        Some(w) => CheckReport::fail(claim, range, w),
    }
}

// ------------------------------------------------------------------
// K(n,k,l)
// ------------------------------------------------------------------

/// One level of the K array: values indexed by (k,l) with 2k+l ≤ n and
/// 2k+l ≡ n (mod 2).
pub type KLevel = BTreeMap<(u32, u32), BigCount>;

/// Boundary value K(n,k,l) = (2k+l)!/(2^k·k!·l!) for 2k+l = n.
fn k_boundary(k: u32, l: u32) -> BigCount {
    let numerator = factorial(2 * k as u64 + l as u64);
    let mut denominator = factorial(k as u64) * factorial(l as u64);
    for _ in 0..k {
        denominator *= 2u32;
    }
    numerator / denominator
}

/// Computes level n of the K array from level n−1 (empty for n = 0).
fn k_next_level(n: usize, prev: &KLevel) -> KLevel {
    let mut level = KLevel::new();
    if n == 0 {
        level.insert((0, 0), BigCount::one());
        return level;
    }
    let at = |k: i64, l: i64| -> BigCount {
        if k < 0 || l < 0 {
            return BigCount::zero();
        }
        prev.get(&(k as u32, l as u32))
            .cloned()
            .unwrap_or_else(BigCount::zero)
    };
    for k in 0..=(n / 2) as u32 {
        let rest = n as u32 - 2 * k;
        let mut l = rest % 2;
        while 2 * k + l <= n as u32 {
            let value = if 2 * k + l == n as u32 {
                k_boundary(k, l)
            } else {
                let (ki, li) = (k as i64, l as i64);
                at(ki, li - 1)
                    + (at(ki, li + 1) + at(ki - 1, li + 1)) * BigCount::from(l + 1)
                    + at(ki + 1, li - 1) * BigCount::from(k + 1)
            };
            level.insert((k, l), value);
            l += 2;
        }
    }
    level
}

/// Full K table for 0 ≤ n ≤ N.
pub struct KArray {
    levels: Vec<KLevel>,
}

impl KArray {
    pub fn build(n_max: usize) -> KArray {
        let mut levels: Vec<KLevel> = Vec::with_capacity(n_max + 1);
        let empty = KLevel::new();
        for n in 0..=n_max {
            let prev = levels.last().unwrap_or(&empty);
            levels.push(k_next_level(n, prev));
        }
        KArray { levels }
    }

    pub fn n_max(&self) -> usize {
        self.levels.len() - 1
    }

    /// K(n,k,l); zero for out-of-range or out-of-parity (k,l). Panics when
    /// n exceeds the built range.
    pub fn get(&self, n: usize, k: u32, l: u32) -> BigCount {
        self.levels[n]
            .get(&(k, l))
            .cloned()
            .unwrap_or_else(BigCount::zero)
    }

    /// All entries of one level. Panics when n exceeds the built range.
    pub fn level(&self, n: usize) -> &KLevel {
        &self.levels[n]
    }

    /// CSV dump with columns `n,k,l,value`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,k,l,value\n");
        for (n, level) in self.levels.iter().enumerate() {
            for ((k, l), v) in level {
                out.push_str(&format!("{n},{k},{l},{v}\n"));
            }
        }
        out
    }
}

// ------------------------------------------------------------------
// Conjecture sweep
// ------------------------------------------------------------------

/// Outcome of the ratio-inequality sweep over the K array.
#[derive(Clone, Debug)]
pub struct ConjectureOutcome {
    pub n_max: usize,
    pub holds: bool,
    /// First (n,k,l) where a pairwise inequality fails.
    pub inequality_violation: Option<(usize, u32, u32)>,
    /// First (n,k,l) beating the claimed maximiser (0, n mod 2).
    pub max_identity_violation: Option<(usize, u32, u32)>,
    pub comparisons: u64,
}

/// Streams the levels of the K array keeping only three levels resident,
/// verifying for every n ≥ 3 and admissible (k,l):
///
/// ```text
/// K(n-2,k,l)/K(n,k,l) >= max( K(n-2,k+1,l)/K(n,k+1,l),
///                             K(n-2,k,l+2)/K(n,k,l+2) )
/// ```
///
/// and that the maximum of `K(n-2,k,l)/K(n,k,l)` over `2k+l < n` is
/// attained at `(k,l) = (0, n mod 2)`. All comparisons are exact
/// cross-multiplications. `verify_from` skips the comparisons for levels
/// n ≤ verify_from (the table is still built), which supports resumable
/// sweeps; `on_level` is called after each fully verified level.
pub fn conjecture_sweep(
    n_max: usize,
    verify_from: usize,
    mut on_level: impl FnMut(usize),
) -> ConjectureOutcome {
    let mut outcome = ConjectureOutcome {
        n_max,
        holds: true,
        inequality_violation: None,
        max_identity_violation: None,
        comparisons: 0,
    };
    let mut two_back = KLevel::new();
    let mut one_back = KLevel::new();
    for n in 0..=n_max {
        let current = k_next_level(n, &one_back);
        if n >= 3 && n > verify_from {
            verify_level(n, &two_back, &current, &mut outcome);
        }
        if n >= 3 && outcome.holds {
            on_level(n);
        }
        two_back = std::mem::replace(&mut one_back, current);
        if !outcome.holds {
            break;
        }
    }
    outcome
}

fn verify_level(n: usize, back: &KLevel, cur: &KLevel, outcome: &mut ConjectureOutcome) {
    let delta = (n % 2) as u32;
    let anchor_back = &back[&(0, delta)];
    let anchor_cur = &cur[&(0, delta)];
    for (&(k, l), b) in back.iter() {
        // the (k,l) range of the pairwise inequalities: 2k+l < n-2
        if (2 * k + l) as usize + 2 < n {
            // against (k+1, l)
            let b_right = &back[&(k + 1, l)];
            let c_left = &cur[&(k, l)];
            let c_right = &cur[&(k + 1, l)];
            outcome.comparisons += 1;
            if b * c_right < b_right * c_left {
                outcome.holds = false;
                outcome.inequality_violation = Some((n, k, l));
                return;
            }
            // against (k, l+2)
            let b_right = &back[&(k, l + 2)];
            let c_right = &cur[&(k, l + 2)];
            outcome.comparisons += 1;
            if b * c_right < b_right * c_left {
                outcome.holds = false;
                outcome.inequality_violation = Some((n, k, l));
                return;
            }
        }
        // the max identity ranges over 2k+l < n, i.e. all of level n-2
        outcome.comparisons += 1;
        if b * anchor_cur > anchor_back * &cur[&(k, l)] {
            outcome.holds = false;
            outcome.max_identity_violation = Some((n, k, l));
            return;
        }
    }
}

/// Runs the full sweep up to `n_max`.
pub fn conjecture_check(n_max: usize) -> ConjectureOutcome {
    conjecture_sweep(n_max, 0, |_| {})
}

// ------------------------------------------------------------------
// Hyperoctahedral dimension sequence
// ------------------------------------------------------------------

/// a_0..a_N by the recursion `a_n = Σ_{j=1}^n C(2n−1, 2j−1)·a_{n−j}`.
pub fn hyperoct_dims(n_max: usize) -> Vec<BigCount> {
    let mut a = vec![BigCount::one()];
    for n in 1..=n_max {
        let mut total = BigCount::zero();
        for j in 1..=n {
            total += binomial(2 * n as u64 - 1, 2 * j as u64 - 1) * &a[n - j];
        }
        a.push(total);
    }
    a
}

/// Verifies, for n ≤ N: `K(2n,0,0) = a_n`, `K(2n−1,0,1) = K(2n,0,0)`, and
/// the ratio bound `a_{n−1}/a_n ≤ 1/(2n−1)`.
pub fn hyperoct_report(n_max: usize) -> (Vec<BigCount>, Vec<CheckReport>) {
    let a = hyperoct_dims(n_max);
    let karr = KArray::build(2 * n_max);
    let mut reports = Vec::new();

    let witness = (0..=n_max)
        .find(|&n| karr.get(2 * n, 0, 0) != a[n])
        .map(|n| format!("n={n}"));
    reports.push(report(
        "K(2n,0,0) = a_n",
        format!("0 <= n <= {n_max}"),
        witness,
    ));

    let witness = (1..=n_max)
        .find(|&n| karr.get(2 * n - 1, 0, 1) != karr.get(2 * n, 0, 0))
        .map(|n| format!("n={n}"));
    reports.push(report(
        "K(2n-1,0,1) = K(2n,0,0)",
        format!("1 <= n <= {n_max}"),
        witness,
    ));

    let witness = (1..=n_max)
        .find(|&n| {
            // a_{n-1}/a_n <= 1/(2n-1)  <=>  (2n-1)·a_{n-1} <= a_n
            &a[n - 1] * BigCount::from(2 * n as u32 - 1) > a[n]
        })
        .map(|n| format!("n={n}"));
    reports.push(report(
        "a_{n-1}/a_n <= 1/(2n-1)",
        format!("1 <= n <= {n_max}"),
        witness,
    ));

    (a, reports)
}

// ------------------------------------------------------------------
// Closed forms
// ------------------------------------------------------------------

/// Path count from the root to (λ,μ) in the coupled Young graph, by the
/// two equivalent closed forms
/// `(1/2^{|λ|})·(|μ|+2|λ|)!/(|λ|!·|μ|!)·dim(λ)·dim(μ)` and
/// `C(n,|μ|)·(n−|μ|−1)!!·dim(λ)·dim(μ)` with n = 2|λ|+|μ|.
pub fn coupled_dim_closed_form(lambda: &YoungDiagram, mu: &YoungDiagram) -> BigCount {
    let k = lambda.size() as u64;
    let l = mu.size() as u64;
    let dims = lambda.dim() * mu.dim();

    let mut denominator = factorial(k) * factorial(l);
    for _ in 0..k {
        denominator *= 2u32;
    }
    let first = factorial(2 * k + l) / denominator * &dims;

    let n = 2 * k + l;
    let second = binomial(n, l) * odd_double_factorial(k) * &dims;

    assert_eq!(
        first, second,
        "the two closed forms are algebraically equal"
    );
    first
}

/// Total dimension of the level-n algebra of the coupled Young tower,
/// `Σ_{l ≡ n (2)} (n!)² / (2^{n−l}·l!·((n−l)/2)!)`.
pub fn dim_a_n(n: usize) -> BigCount {
    let n = n as u64;
    let n_fact = factorial(n);
    let square = &n_fact * &n_fact;
    let mut total = BigCount::zero();
    let mut l = n % 2;
    while l <= n {
        let half = (n - l) / 2;
        let mut denominator = factorial(l) * factorial(half);
        for _ in 0..(n - l) {
            denominator *= 2u32;
        }
        total += &square / denominator;
        l += 2;
    }
    total
}

/// Table selector for the CLI `dims` command.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Table {
    M,
    K,
}

pub fn parse_table(s: &str) -> Result<Table> {
    match s.to_ascii_lowercase().as_str() {
        "m" => Ok(Table::M),
        "k" => Ok(Table::K),
        other => Err(Error::Parse(format!(
            "unknown table `{other}`, expected m or k"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: u64) -> BigCount {
        BigCount::from(v)
    }

    #[test]
    fn m_spot_values() {
        let m = MArray::build(5);
        assert_eq!(m.get(1, 0), c(1));
        assert_eq!(m.get(3, 1), c(6));
        assert_eq!(m.get(3, 0), c(4));
        let diagonal: Vec<BigCount> = (0..=5).map(|n| m.get(n, n)).collect();
        assert!(diagonal.iter().all(|v| v.is_one()));
        let first_column: Vec<BigCount> = (0..=5).map(|n| m.get(n, 0)).collect();
        assert_eq!(first_column, vec![c(1), c(1), c(2), c(4), c(10), c(26)]);
        assert_eq!(m.get(2, 3), c(0));
    }

    #[test]
    fn m_properties_hold_to_fifty() {
        let m = MArray::build(50);
        let reports = m_properties_report(&m);
        assert_eq!(reports.len(), 5);
        for r in &reports {
            assert!(r.holds, "failed: {} at {:?}", r.claim, r.first_violation);
        }
    }

    #[test]
    fn stored_entries_are_positive() {
        let m = MArray::build(40);
        for n in 0..=40usize {
            for l in 0..=n {
                assert!(m.get(n, l) > c(0), "M({n},{l})");
            }
        }
        let k = KArray::build(30);
        for n in 0..=30usize {
            for ((kk, ll), v) in k.level(n) {
                assert!(v > &c(0), "K({n},{kk},{ll})");
            }
        }
    }

    #[test]
    fn m_ratio_spot_checks() {
        let m = MArray::build(4);
        // M(3,0)/M(4,0) = 4/10 = 2/5 below M(2,0)/M(3,0) = 1/2
        assert!(m.get(3, 0) * m.get(3, 0) <= m.get(4, 0) * m.get(2, 0));
        // 2·M(1,0)/M(2,0) = 1 <= 3·M(2,0)/M(3,0) = 3/2
        assert!(c(2) * m.get(1, 0) * m.get(3, 0) <= c(3) * m.get(2, 0) * m.get(2, 0));
    }

    #[test]
    fn k_spot_values() {
        let k = KArray::build(4);
        assert_eq!(k.get(0, 0, 0), c(1));
        assert_eq!(k.get(2, 1, 0), c(1));
        assert_eq!(k.get(3, 0, 1), c(4));
        assert_eq!(k.get(4, 1, 0), c(7));
        assert_eq!(k.get(4, 0, 2), c(10));
        assert_eq!(k.get(4, 0, 0), c(4));
        assert_eq!(k.get(4, 0, 0), k.get(3, 0, 1));
        // out of parity
        assert_eq!(k.get(3, 0, 0), c(0));
    }

    #[test]
    fn k_boundary_matches_closed_form() {
        let k = KArray::build(8);
        for n in 0..=8usize {
            for kk in 0..=(n / 2) as u32 {
                let l = n as u32 - 2 * kk;
                assert_eq!(k.get(n, kk, l), k_boundary(kk, l), "at n={n}, k={kk}");
            }
        }
    }

    #[test]
    fn conjecture_holds_to_twenty() {
        let outcome = conjecture_check(20);
        assert!(outcome.holds, "{outcome:?}");
        assert!(outcome.comparisons > 0);
    }

    #[test]
    fn conjecture_spot_instance() {
        // n=4, (k,l)=(0,0): 1/4 >= max(1/7, 1/10)
        let k = KArray::build(4);
        assert_eq!(k.get(2, 0, 0), c(1));
        assert_eq!(k.get(2, 1, 0), c(1));
        assert_eq!(k.get(2, 0, 2), c(1));
        assert!(k.get(2, 0, 0) * k.get(4, 1, 0) >= k.get(2, 1, 0) * k.get(4, 0, 0));
        assert!(k.get(2, 0, 0) * k.get(4, 0, 2) >= k.get(2, 0, 2) * k.get(4, 0, 0));
    }

    #[test]
    fn hyperoct_sequence() {
        let a = hyperoct_dims(5);
        assert_eq!(a, vec![c(1), c(1), c(4), c(31), c(379), c(6556)]);
    }

    #[test]
    fn hyperoct_strictly_increases_from_one() {
        let a = hyperoct_dims(12);
        for n in 2..=12usize {
            assert!(a[n] > a[n - 1], "a_{n} must exceed a_{}", n - 1);
        }
    }

    #[test]
    fn hyperoct_checks_pass() {
        let (a, reports) = hyperoct_report(8);
        assert_eq!(a.len(), 9);
        for r in &reports {
            assert!(r.holds, "failed: {}", r.claim);
        }
        // a_1/a_2 = 1/4 <= 1/3
        assert!(&a[1] * c(3) <= a[2]);
    }

    #[test]
    fn coupled_closed_form_values() {
        let empty = YoungDiagram::empty();
        let one = YoungDiagram::new(vec![1]).unwrap();
        assert_eq!(coupled_dim_closed_form(&empty, &empty), c(1));
        assert_eq!(coupled_dim_closed_form(&one, &empty), c(1));
        assert_eq!(coupled_dim_closed_form(&one, &one), c(3));
    }

    #[test]
    fn dim_a_n_values() {
        assert_eq!(dim_a_n(0), c(1));
        assert_eq!(dim_a_n(2), c(3));
        assert_eq!(dim_a_n(3), c(15));
        assert_eq!(dim_a_n(4), c(114));
    }

    #[test]
    fn csv_dumps() {
        let m = MArray::build(2);
        assert!(m.to_csv().contains("2,0,2\n"));
        let k = KArray::build(2);
        assert!(k.to_csv().contains("2,1,0,1\n"));
    }
}
