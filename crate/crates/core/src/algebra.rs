//! Set-partition diagrams, the six easy categories, diagram algebras over
//! polynomial coefficients in the loop parameter δ, and the quotient onto
//! the symmetric group algebra.
//!
//! A diagram has `upper` points 1..k and `lower` points 1'..l'. Internally
//! the points are indexed 0..k for the upper row and k..k+l for the lower
//! row; the JSON form encodes lower points as negative integers (i' ↦ −i).
//! Blocks are canonical: sorted within, ordered by least element.
//!
//! Composition stacks the second factor on top of the first: `compose(p,q)`
//! glues q's lower row onto p's upper row, keeps p's lower row and q's
//! upper row, and counts the closed middle components that get erased.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ratio::{format_ratio, parse_ratio};
use crate::young::Permutation;
use crate::BigRatio;

/// A set partition of k upper and l lower points.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartitionDiagram {
    upper: usize,
    lower: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartitionDiagram {
    /// Builds a diagram from blocks in the signed convention: upper point i
    /// is `i` (1-based), lower point i' is `-i`. Row sizes are inferred
    /// from the largest indices.
    pub fn new(blocks: &[Vec<i64>]) -> Result<Self> {
        let mut upper = 0usize;
        let mut lower = 0usize;
        for b in blocks {
            for &x in b {
                if x > 0 {
                    upper = upper.max(x as usize);
                } else if x < 0 {
                    lower = lower.max((-x) as usize);
                } else {
                    return Err(Error::InvalidBlocks("point 0 is not allowed".into()));
                }
            }
        }
        let internal = blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|&x| {
                        if x > 0 {
                            x as usize - 1
                        } else {
                            upper + (-x) as usize - 1
                        }
                    })
                    .collect()
            })
            .collect();
        Self::from_internal(upper, lower, internal)
    }

    /// Builds a diagram from blocks over the internal point indices
    /// 0..upper+lower, validating that they partition the point set.
    pub fn from_internal(upper: usize, lower: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let total = upper + lower;
        let mut seen = vec![false; total];
        let mut canonical: Vec<Vec<usize>> = Vec::with_capacity(blocks.len());
        for block in blocks {
            if block.is_empty() {
                return Err(Error::InvalidBlocks("empty block".into()));
            }
            let mut b = block;
            b.sort_unstable();
            for &x in &b {
                if x >= total {
                    return Err(Error::InvalidBlocks(format!(
                        "point index {x} out of range for {upper}+{lower} points"
                    )));
                }
                if seen[x] {
                    return Err(Error::InvalidBlocks(format!("point {x} covered twice")));
                }
                seen[x] = true;
            }
            canonical.push(b);
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(Error::InvalidBlocks(format!("point {missing} not covered")));
        }
        canonical.sort_unstable();
        Ok(SetPartitionDiagram {
            upper,
            lower,
            blocks: canonical,
        })
    }

    /// The identity diagram with k through-strings.
    pub fn identity(k: usize) -> Self {
        SetPartitionDiagram {
            upper: k,
            lower: k,
            blocks: (0..k).map(|i| vec![i, k + i]).collect(),
        }
    }

    /// The simple crossing placed on points `pos`, `pos+1` (0-based) inside
    /// the identity of size k.
    pub fn crossing_at(k: usize, pos: usize) -> Self {
        assert!(pos + 1 < k, "crossing needs two points inside the row");
        let mut blocks: Vec<Vec<usize>> = Vec::with_capacity(k - 1);
        for i in 0..k {
            if i == pos {
                blocks.push(vec![pos, k + pos + 1]);
                blocks.push(vec![pos + 1, k + pos]);
            } else if i != pos + 1 {
                blocks.push(vec![i, k + i]);
            }
        }
        SetPartitionDiagram::from_internal(k, k, blocks).expect("valid by construction")
    }

    pub fn upper_count(&self) -> usize {
        self.upper
    }

    pub fn lower_count(&self) -> usize {
        self.lower
    }

    /// Blocks over the internal indices, canonical order.
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Blocks in the signed convention used by the JSON form.
    pub fn signed_blocks(&self) -> Vec<Vec<i64>> {
        self.blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|&x| {
                        if x < self.upper {
                            x as i64 + 1
                        } else {
                            -((x - self.upper) as i64 + 1)
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// Glues `top`'s lower row onto `self`'s upper row, returning the
    /// composed diagram (keeping `self`'s lower and `top`'s upper rows)
    /// together with the number of erased middle loops.
    pub fn compose(&self, top: &SetPartitionDiagram) -> Result<(SetPartitionDiagram, u32)> {
        if self.upper != top.lower {
            return Err(Error::SizeMismatch {
                left: self.upper,
                right: top.lower,
            });
        }
        let mid = self.upper;
        let nb = self.lower; // result lower row
        let nt = top.upper; // result upper row
        let total = nb + mid + nt;
        // union-find indices: 0..nb bottom outer, nb..nb+mid middle,
        // nb+mid..total top outer
        let mut uf = UnionFind::new(total);
        for block in &self.blocks {
            let first = self.map_bottom(block[0], nb);
            for &x in &block[1..] {
                uf.union(first, self.map_bottom(x, nb));
            }
        }
        for block in &top.blocks {
            let first = top.map_top(block[0], nb, mid);
            for &x in &block[1..] {
                uf.union(first, top.map_top(x, nb, mid));
            }
        }
        // gather classes
        let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for x in 0..total {
            classes.entry(uf.find(x)).or_default().push(x);
        }
        let mut loops = 0u32;
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for members in classes.values() {
            // keep the outer part; a class living entirely in the middle is
            // an erased loop
            let outer: Vec<usize> = members
                .iter()
                .filter(|&&x| x < nb || x >= nb + mid)
                .map(|&x| {
                    if x < nb {
                        // bottom outer -> result lower point
                        nt + x
                    } else {
                        // top outer -> result upper point
                        x - nb - mid
                    }
                })
                .collect();
            if outer.is_empty() {
                loops += 1;
            } else {
                blocks.push(outer);
            }
        }
        let result = SetPartitionDiagram::from_internal(nt, nb, blocks)?;
        Ok((result, loops))
    }

    // self is the bottom factor: its upper row is the middle
    fn map_bottom(&self, x: usize, nb: usize) -> usize {
        if x < self.upper {
            nb + x // middle
        } else {
            x - self.upper // bottom outer
        }
    }

    // top factor: its lower row is the middle
    fn map_top(&self, x: usize, nb: usize, mid: usize) -> usize {
        if x < self.upper {
            nb + mid + x // top outer
        } else {
            nb + (x - self.upper) // middle
        }
    }

    /// Reflection along the horizontal middle line: swaps the roles of the
    /// upper and lower rows.
    pub fn involution(&self) -> SetPartitionDiagram {
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|&x| {
                        if x < self.upper {
                            self.lower + x
                        } else {
                            x - self.upper
                        }
                    })
                    .collect()
            })
            .collect();
        SetPartitionDiagram::from_internal(self.lower, self.upper, blocks)
            .expect("reflection preserves validity")
    }

    /// Horizontal concatenation; `right`'s points are shifted past `self`'s.
    pub fn tensor(&self, right: &SetPartitionDiagram) -> SetPartitionDiagram {
        let upper = self.upper + right.upper;
        let lower = self.lower + right.lower;
        let mut blocks: Vec<Vec<usize>> = self
            .blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|&x| if x < self.upper { x } else { x + right.upper })
                    .collect()
            })
            .collect();
        blocks.extend(right.blocks.iter().map(|b| {
            b.iter()
                .map(|&x| {
                    if x < right.upper {
                        self.upper + x
                    } else {
                        upper + self.lower + (x - right.upper)
                    }
                })
                .collect::<Vec<usize>>()
        }));
        SetPartitionDiagram::from_internal(upper, lower, blocks).expect("shift preserves validity")
    }

    /// True when every block contains exactly one upper and one lower point.
    pub fn is_invertible(&self) -> bool {
        self.upper == self.lower
            && self
                .blocks
                .iter()
                .all(|b| b.len() == 2 && b[0] < self.upper && b[1] >= self.upper)
    }

    /// The permutation sending upper i to the lower point it is wired to.
    pub fn to_permutation(&self) -> Result<Permutation> {
        if !self.is_invertible() {
            return Err(Error::NotInvertible);
        }
        let mut line = vec![0usize; self.upper];
        for b in &self.blocks {
            line[b[0]] = b[1] - self.upper + 1;
        }
        Permutation::from_one_line(&line)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!(self.signed_blocks())
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let blocks: Vec<Vec<i64>> = serde_json::from_value(value.clone())
            .map_err(|e| Error::Parse(format!("diagram blocks: {e}")))?;
        SetPartitionDiagram::new(&blocks)
    }
}

impl fmt::Display for SetPartitionDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, b) in self.signed_blocks().iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{{")?;
            for (j, x) in b.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                if *x > 0 {
                    write!(f, "{x}")?;
                } else {
                    write!(f, "{}'", -x)?;
                }
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for SetPartitionDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] == x {
            x
        } else {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
            root
        }
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

// ------------------------------------------------------------------
// Categories
// ------------------------------------------------------------------

/// The six categories of set partitions containing the simple crossing.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Category {
    /// All partitions.
    S,
    /// All blocks of size two.
    O,
    /// All blocks of even size.
    H,
    /// All blocks of size one or two.
    B,
    /// An even number of blocks of odd size.
    SPrime,
    /// Blocks of size at most two, with an even number of singletons.
    BPrime,
}

impl Category {
    pub const ALL: [Category; 6] = [
        Category::S,
        Category::O,
        Category::H,
        Category::B,
        Category::SPrime,
        Category::BPrime,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Category::S => "S",
            Category::O => "O",
            Category::H => "H",
            Category::B => "B",
            Category::SPrime => "S'",
            Category::BPrime => "B'",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "S" => Ok(Category::S),
            "O" => Ok(Category::O),
            "H" => Ok(Category::H),
            "B" => Ok(Category::B),
            "S'" | "S-PRIME" | "SPRIME" => Ok(Category::SPrime),
            "B'" | "B-PRIME" | "BPRIME" => Ok(Category::BPrime),
            other => Err(Error::UnknownCategory(other.to_string())),
        }
    }

    /// Membership predicate on the block-size profile.
    pub fn contains(self, d: &SetPartitionDiagram) -> bool {
        let sizes: Vec<usize> = d.blocks().iter().map(|b| b.len()).collect();
        contains_by_sizes(self, &sizes)
    }
}

fn contains_by_sizes(category: Category, sizes: &[usize]) -> bool {
    match category {
        Category::S => true,
        Category::O => sizes.iter().all(|&s| s == 2),
        Category::H => sizes.iter().all(|&s| s % 2 == 0),
        Category::B => sizes.iter().all(|&s| s <= 2),
        Category::SPrime => sizes.iter().filter(|&&s| s % 2 == 1).count() % 2 == 0,
        Category::BPrime => {
            sizes.iter().all(|&s| s <= 2) && sizes.iter().filter(|&&s| s == 1).count() % 2 == 0
        }
    }
}

const MAX_ENUM_ROW: usize = 6;

/// All diagrams of `category` with k upper and k lower points, canonical
/// order. Supported for k ≤ 6; `Part(k,k)` has Bell(2k) elements.
pub fn enumerate_category(category: Category, k: usize) -> Result<Vec<SetPartitionDiagram>> {
    if k > MAX_ENUM_ROW {
        return Err(Error::CategoryTooLarge {
            max: MAX_ENUM_ROW,
            got: k,
        });
    }
    let mut out = Vec::new();
    enumerate_set_partitions(2 * k, &mut |assignment, n_blocks| {
        let mut sizes = vec![0usize; n_blocks];
        for &b in assignment {
            sizes[b] += 1;
        }
        if !contains_by_sizes(category, &sizes) {
            return;
        }
        let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); n_blocks];
        for (point, &b) in assignment.iter().enumerate() {
            blocks[b].push(point);
        }
        out.push(SetPartitionDiagram::from_internal(k, k, blocks).expect("valid by construction"));
    });
    out.sort();
    Ok(out)
}

/// Enumerates all set partitions of `n` points as restricted growth
/// strings, calling `f(assignment, number_of_blocks)` for each.
fn enumerate_set_partitions(n: usize, f: &mut impl FnMut(&[usize], usize)) {
    fn go(
        assignment: &mut Vec<usize>,
        pos: usize,
        max_used: usize,
        f: &mut impl FnMut(&[usize], usize),
    ) {
        if pos == assignment.len() {
            f(assignment, max_used + 1);
            return;
        }
        for b in 0..=max_used + 1 {
            assignment[pos] = b;
            go(assignment, pos + 1, max_used.max(b), f);
        }
    }
    if n == 0 {
        f(&[], 0);
        return;
    }
    // the first point is always in block 0
    let mut assignment = vec![0usize; n];
    go(&mut assignment, 1, 0, f);
}

// ------------------------------------------------------------------
// Polynomials in the loop parameter
// ------------------------------------------------------------------

/// A polynomial in δ with exact rational coefficients, stored in ascending
/// powers with no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct DeltaPolynomial {
    coeffs: Vec<BigRatio>,
}

impl DeltaPolynomial {
    pub fn zero() -> Self {
        DeltaPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        DeltaPolynomial {
            coeffs: vec![BigRatio::one()],
        }
    }

    pub fn constant(c: BigRatio) -> Self {
        DeltaPolynomial { coeffs: vec![c] }.trimmed()
    }

    /// δ^k with coefficient 1.
    pub fn delta_power(k: u32) -> Self {
        let mut coeffs = vec![BigRatio::zero(); k as usize];
        coeffs.push(BigRatio::one());
        DeltaPolynomial { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<BigRatio>) -> Self {
        DeltaPolynomial { coeffs }.trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeffs(&self) -> &[BigRatio] {
        &self.coeffs
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut coeffs = vec![BigRatio::zero(); self.coeffs.len().max(other.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        DeltaPolynomial { coeffs }.trimmed()
    }

    pub fn neg(&self) -> Self {
        DeltaPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigRatio::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        DeltaPolynomial { coeffs }.trimmed()
    }

    /// Multiplies by δ^k.
    pub fn shift(&self, k: u32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigRatio::zero(); k as usize];
        coeffs.extend(self.coeffs.iter().cloned());
        DeltaPolynomial { coeffs }
    }

    pub fn scale(&self, c: &BigRatio) -> Self {
        DeltaPolynomial {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
        .trimmed()
    }

    /// Evaluates at a rational value of δ.
    pub fn eval(&self, delta: &BigRatio) -> BigRatio {
        let mut out = BigRatio::zero();
        for c in self.coeffs.iter().rev() {
            out = out * delta + c;
        }
        out
    }

    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_ratio).collect()
    }

    pub fn from_coeff_strings<S: AsRef<str>>(strings: &[S]) -> Result<Self> {
        let coeffs = strings
            .iter()
            .map(|s| parse_ratio(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(DeltaPolynomial { coeffs }.trimmed())
    }
}

impl fmt::Display for DeltaPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let abs = c.abs();
            if i == 0 || !abs.is_one() {
                write!(f, "{}", format_ratio(&abs))?;
            }
            match i {
                0 => {}
                1 => write!(f, "δ")?,
                _ => write!(f, "δ^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for DeltaPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// ------------------------------------------------------------------
// Algebra elements
// ------------------------------------------------------------------

/// A finite linear combination of (k,k)-diagrams with DeltaPolynomial
/// coefficients; zero terms are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraElement {
    k: usize,
    terms: BTreeMap<SetPartitionDiagram, DeltaPolynomial>,
}

impl AlgebraElement {
    pub fn zero(k: usize) -> Self {
        AlgebraElement {
            k,
            terms: BTreeMap::new(),
        }
    }

    /// The unit: the identity diagram with coefficient 1.
    pub fn unit(k: usize) -> Self {
        Self::basis(SetPartitionDiagram::identity(k)).expect("identity is square")
    }

    /// A single basis diagram with coefficient 1.
    pub fn basis(d: SetPartitionDiagram) -> Result<Self> {
        if d.upper_count() != d.lower_count() {
            return Err(Error::SizeMismatch {
                left: d.upper_count(),
                right: d.lower_count(),
            });
        }
        let k = d.upper_count();
        let mut terms = BTreeMap::new();
        terms.insert(d, DeltaPolynomial::one());
        Ok(AlgebraElement { k, terms })
    }

    pub fn from_terms(
        k: usize,
        terms: impl IntoIterator<Item = (SetPartitionDiagram, DeltaPolynomial)>,
    ) -> Result<Self> {
        let mut element = AlgebraElement::zero(k);
        for (d, c) in terms {
            if d.upper_count() != k || d.lower_count() != k {
                return Err(Error::SizeMismatch {
                    left: d.upper_count().max(d.lower_count()),
                    right: k,
                });
            }
            element.accumulate(d, c);
        }
        Ok(element)
    }

    fn accumulate(&mut self, d: SetPartitionDiagram, c: DeltaPolynomial) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(d) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SetPartitionDiagram, &DeltaPolynomial)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.k != other.k {
            return Err(Error::SizeMismatch {
                left: self.k,
                right: other.k,
            });
        }
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.accumulate(d.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let negated = AlgebraElement {
            k: other.k,
            terms: other
                .terms
                .iter()
                .map(|(d, c)| (d.clone(), c.neg()))
                .collect(),
        };
        self.add(&negated)
    }

    pub fn scale(&self, c: &DeltaPolynomial) -> Self {
        let mut out = AlgebraElement::zero(self.k);
        for (d, coeff) in &self.terms {
            out.accumulate(d.clone(), coeff.mul(c));
        }
        out
    }

    /// Bilinear extension of diagram composition, multiplying by δ^loops.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.k != other.k {
            return Err(Error::SizeMismatch {
                left: self.k,
                right: other.k,
            });
        }
        let mut out = AlgebraElement::zero(self.k);
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                let (diagram, loops) = p.compose(q)?;
                out.accumulate(diagram, a.mul(b).shift(loops));
            }
        }
        Ok(out)
    }

    /// Projects onto the symmetric group algebra: non-invertible diagrams
    /// are dropped, invertible ones map to their permutations.
    pub fn quotient_project(&self) -> GroupAlgebraElement {
        let mut out = GroupAlgebraElement::zero(self.k);
        for (d, c) in &self.terms {
            if let Ok(sigma) = d.to_permutation() {
                out.accumulate(sigma, c.clone());
            }
        }
        out
    }

    /// JSON form: a list of `{diagram, coeffs}` records, coefficients in
    /// ascending powers of δ as `p/q` strings.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(d, c)| {
                serde_json::json!({
                    "diagram": d.to_json(),
                    "coeffs": c.coeff_strings(),
                })
            })
            .collect();
        serde_json::json!(terms)
    }

    /// Parses the JSON form; k is inferred from the diagrams, and an empty
    /// list is the zero element of k = 0.
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let records = value
            .as_array()
            .ok_or_else(|| Error::Parse("expected a list of {diagram, coeffs}".into()))?;
        let mut k: Option<usize> = None;
        let mut terms = Vec::new();
        for r in records {
            let diagram = SetPartitionDiagram::from_json(
                r.get("diagram")
                    .ok_or_else(|| Error::Parse("missing `diagram`".into()))?,
            )?;
            let coeffs: Vec<String> = serde_json::from_value(
                r.get("coeffs")
                    .cloned()
                    .ok_or_else(|| Error::Parse("missing `coeffs`".into()))?,
            )
            .map_err(|e| Error::Parse(format!("coeffs: {e}")))?;
            let poly = DeltaPolynomial::from_coeff_strings(&coeffs)?;
            match k {
                None => k = Some(diagram.upper_count()),
                Some(k0) if k0 != diagram.upper_count() => {
                    return Err(Error::SizeMismatch {
                        left: k0,
                        right: diagram.upper_count(),
                    })
                }
                _ => {}
            }
            terms.push((diagram, poly));
        }
        AlgebraElement::from_terms(k.unwrap_or(0), terms)
    }
}

/// A linear combination of permutations with DeltaPolynomial coefficients,
/// the image of the invertibility quotient.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupAlgebraElement {
    k: usize,
    terms: BTreeMap<Permutation, DeltaPolynomial>,
}

impl GroupAlgebraElement {
    pub fn zero(k: usize) -> Self {
        GroupAlgebraElement {
            k,
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(k: usize) -> Self {
        Self::basis(Permutation::identity(k))
    }

    pub fn basis(sigma: Permutation) -> Self {
        let k = sigma.degree();
        let mut out = Self::zero(k);
        out.accumulate(sigma, DeltaPolynomial::one());
        out
    }

    fn accumulate(&mut self, sigma: Permutation, c: DeltaPolynomial) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(sigma) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn with_term(mut self, sigma: Permutation, c: DeltaPolynomial) -> Self {
        self.accumulate(sigma, c);
        self
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &DeltaPolynomial)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.k != other.k {
            return Err(Error::SizeMismatch {
                left: self.k,
                right: other.k,
            });
        }
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.accumulate(s.clone(), c.clone());
        }
        Ok(out)
    }

    /// Convolution product matching the diagram composition order: the
    /// basis product of σ and τ is σ ∘ τ (τ acts first).
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.k != other.k {
            return Err(Error::SizeMismatch {
                left: self.k,
                right: other.k,
            });
        }
        let mut out = Self::zero(self.k);
        for (s, a) in &self.terms {
            for (t, b) in &other.terms {
                out.accumulate(s.compose(t), a.mul(b));
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diagram(blocks: &[&[i64]]) -> SetPartitionDiagram {
        SetPartitionDiagram::new(&blocks.iter().map(|b| b.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn cap_cup() -> SetPartitionDiagram {
        diagram(&[&[1, 2], &[-1, -2]])
    }

    #[test]
    fn canonical_form_ignores_input_order() {
        let a = diagram(&[&[1, 2], &[-2, -1]]);
        let b = diagram(&[&[-1, -2], &[2, 1]]);
        assert_eq!(a, b);
    }

    #[test]
    fn block_validation() {
        // row sizes come from the largest index, so 2 must be covered here
        assert!(SetPartitionDiagram::new(&[vec![1, 3], vec![-1]]).is_err());
        assert!(SetPartitionDiagram::new(&[vec![1], vec![1, -1]]).is_err()); // 1 twice
        assert!(SetPartitionDiagram::new(&[vec![0]]).is_err());
        // sizes inferred: 2 upper, 1 lower
        let p = SetPartitionDiagram::new(&[vec![1, 2], vec![-1]]).unwrap();
        assert_eq!((p.upper_count(), p.lower_count()), (2, 1));
    }

    #[test]
    fn identity_composes_neutrally() {
        let p = diagram(&[&[1, 2, -1], &[-2]]);
        let id = SetPartitionDiagram::identity(2);
        assert_eq!(id.compose(&p).unwrap(), (p.clone(), 0));
        assert_eq!(p.compose(&id).unwrap(), (p, 0));
    }

    #[test]
    fn cap_cup_squares_with_one_loop() {
        let p = cap_cup();
        let (result, loops) = p.compose(&p).unwrap();
        assert_eq!(result, p);
        assert_eq!(loops, 1);
    }

    #[test]
    fn crossing_squares_to_identity() {
        let q = SetPartitionDiagram::crossing_at(2, 0);
        assert_eq!(q, diagram(&[&[1, -2], &[2, -1]]));
        let (result, loops) = q.compose(&q).unwrap();
        assert_eq!(result, SetPartitionDiagram::identity(2));
        assert_eq!(loops, 0);
    }

    #[test]
    fn compose_rejects_size_mismatch() {
        let p = diagram(&[&[1, -1], &[-2]]); // 1 upper, 2 lower
        let id3 = SetPartitionDiagram::identity(3);
        assert!(p.compose(&id3).is_err());
    }

    #[test]
    fn involution_swaps_rows() {
        let id = SetPartitionDiagram::identity(3);
        assert_eq!(id.involution(), id);
        let p = diagram(&[&[1, 2, -1], &[-2], &[-3]]);
        let reflected = p.involution();
        assert_eq!(reflected.upper_count(), 3);
        assert_eq!(reflected.lower_count(), 2);
        assert_eq!(reflected, diagram(&[&[-1, -2, 1], &[2], &[3]]));
        assert_eq!(reflected.involution(), p);
    }

    #[test]
    fn tensor_concatenates() {
        let id1 = SetPartitionDiagram::identity(1);
        assert_eq!(id1.tensor(&id1), SetPartitionDiagram::identity(2));
        let t = cap_cup().tensor(&id1);
        assert_eq!(t, diagram(&[&[1, 2], &[-1, -2], &[3, -3]]));
    }

    #[test]
    fn category_predicates() {
        let id3 = SetPartitionDiagram::identity(3);
        for c in Category::ALL {
            assert!(c.contains(&id3), "{c:?}");
        }
        let p = cap_cup();
        for c in Category::ALL {
            assert!(c.contains(&p), "{c:?}");
        }
        let singles = diagram(&[&[1], &[-1]]);
        assert!(Category::B.contains(&singles));
        assert!(Category::S.contains(&singles));
        assert!(Category::SPrime.contains(&singles)); // two odd blocks
        assert!(Category::BPrime.contains(&singles)); // two singletons
        assert!(!Category::O.contains(&singles));
        assert!(!Category::H.contains(&singles));
    }

    #[test]
    fn category_counts_small() {
        assert_eq!(enumerate_category(Category::O, 2).unwrap().len(), 3);
        assert_eq!(enumerate_category(Category::S, 2).unwrap().len(), 15);
        assert_eq!(enumerate_category(Category::H, 1).unwrap().len(), 1);
        assert_eq!(enumerate_category(Category::H, 2).unwrap().len(), 4);
        assert_eq!(enumerate_category(Category::B, 2).unwrap().len(), 10);
        assert!(enumerate_category(Category::S, 7).is_err());
    }

    #[test]
    fn primed_categories_coincide_on_square_diagrams() {
        for k in 0..=3usize {
            assert_eq!(
                enumerate_category(Category::S, k).unwrap(),
                enumerate_category(Category::SPrime, k).unwrap()
            );
            assert_eq!(
                enumerate_category(Category::B, k).unwrap(),
                enumerate_category(Category::BPrime, k).unwrap()
            );
        }
    }

    #[test]
    fn delta_polynomial_arithmetic() {
        let d = DeltaPolynomial::delta_power(1);
        let two = DeltaPolynomial::constant(BigRatio::from_integer(2.into()));
        let p = d.add(&two); // 2 + δ
        assert_eq!(p.coeff_strings(), vec!["2", "1"]);
        let q = p.mul(&p); // 4 + 4δ + δ²
        assert_eq!(q.coeff_strings(), vec!["4", "4", "1"]);
        let at_three = q.eval(&BigRatio::from_integer(3.into()));
        assert_eq!(format_ratio(&at_three), "25");
        assert_eq!(p.add(&p.neg()), DeltaPolynomial::zero());
        assert_eq!(format!("{q}"), "4 + 4δ + δ^2");
    }

    #[test]
    fn algebra_cap_cup_squares_to_delta() {
        let e = AlgebraElement::basis(cap_cup()).unwrap();
        let square = e.mul(&e).unwrap();
        let terms: Vec<_> = square.terms().collect();
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].0, &cap_cup());
        assert_eq!(terms[0].1, &DeltaPolynomial::delta_power(1));
    }

    #[test]
    fn unit_is_two_sided_neutral() {
        let e = AlgebraElement::basis(cap_cup()).unwrap();
        let unit = AlgebraElement::unit(2);
        assert_eq!(unit.mul(&e).unwrap(), e);
        assert_eq!(e.mul(&unit).unwrap(), e);
    }

    #[test]
    fn invertibility_and_permutations() {
        let id = SetPartitionDiagram::identity(3);
        assert!(id.is_invertible());
        assert!(id.to_permutation().unwrap().is_identity());
        let q = SetPartitionDiagram::crossing_at(2, 0);
        assert_eq!(q.to_permutation().unwrap().one_line(), vec![2, 1]);
        assert!(!cap_cup().is_invertible());
        assert!(cap_cup().to_permutation().is_err());
    }

    #[test]
    fn quotient_drops_ideal_and_is_multiplicative_on_crossings() {
        let e_cap = AlgebraElement::basis(cap_cup()).unwrap();
        assert!(e_cap.quotient_project().is_zero());

        let q = AlgebraElement::basis(SetPartitionDiagram::crossing_at(2, 0)).unwrap();
        let image = q.quotient_project();
        let expected = GroupAlgebraElement::basis(Permutation::from_one_line(&[2, 1]).unwrap());
        assert_eq!(image, expected);

        let square = q.mul(&q).unwrap().quotient_project();
        assert_eq!(square, GroupAlgebraElement::unit(2));
        assert_eq!(square, image.mul(&image).unwrap());
    }

    #[test]
    fn element_json_round_trip() {
        let e = AlgebraElement::basis(cap_cup())
            .unwrap()
            .scale(&DeltaPolynomial::from_coeff_strings(&["1/2", "3"]).unwrap());
        let json = e.to_json();
        let back = AlgebraElement::from_json(&json).unwrap();
        assert_eq!(back, e);
    }
}
