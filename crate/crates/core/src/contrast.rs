//! Conditions, contrast sets and their coverage statistics.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::coverage::CoverageSet;
use crate::data::{DataSet, Value};

/// A single attribute test. Any test on a missing cell fails.
#[derive(Clone, Copy, Debug)]
pub enum Test {
    Equals(u32),
    NotEquals(u32),
    /// Strict: `x < v`.
    LessThan(f64),
    /// Inclusive: `x >= v`.
    AtLeast(f64),
}

impl Test {
    fn rank(&self) -> u8 {
        match self {
            Test::LessThan(_) => 0,
            Test::AtLeast(_) => 1,
            Test::Equals(_) => 2,
            Test::NotEquals(_) => 3,
        }
    }

    fn cmp_key(&self, other: &Test) -> Ordering {
        self.rank().cmp(&other.rank()).then_with(|| match (self, other) {
            (Test::Equals(a), Test::Equals(b)) | (Test::NotEquals(a), Test::NotEquals(b)) => a.cmp(b),
            (Test::LessThan(a), Test::LessThan(b)) | (Test::AtLeast(a), Test::AtLeast(b)) => {
                a.total_cmp(b)
            }
            _ => Ordering::Equal,
        })
    }

    pub fn is_numeric(&self) -> bool {
        matches!(self, Test::LessThan(_) | Test::AtLeast(_))
    }
}

// thresholds compare bitwise so that equality is an equivalence relation
impl PartialEq for Test {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_key(other) == Ordering::Equal
    }
}

impl Eq for Test {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Condition {
    pub attribute: usize,
    pub test: Test,
}

impl PartialOrd for Condition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Condition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.attribute
            .cmp(&other.attribute)
            .then_with(|| self.test.cmp_key(&other.test))
    }
}

impl Condition {
    pub fn new(attribute: usize, test: Test) -> Self {
        Condition { attribute, test }
    }

    #[inline]
    pub fn satisfies_value(&self, value: Value) -> bool {
        match (self.test, value) {
            (_, Value::Missing) => false,
            (Test::Equals(v), Value::Nominal(x)) => x == v,
            (Test::NotEquals(v), Value::Nominal(x)) => x != v,
            (Test::LessThan(v), Value::Numeric(x)) => x < v,
            (Test::AtLeast(v), Value::Numeric(x)) => x >= v,
            _ => false,
        }
    }

    #[inline]
    pub fn satisfies(&self, ds: &DataSet, example: usize) -> bool {
        self.satisfies_value(ds.value(example, self.attribute))
    }

    /// Members of `subset` that satisfy the condition.
    pub fn cover(&self, subset: &CoverageSet, ds: &DataSet) -> CoverageSet {
        let mut out = CoverageSet::empty(subset.len());
        for i in subset {
            if self.satisfies(ds, i) {
                out.insert(i);
            }
        }
        out
    }

    /// Whether the test kind fits the attribute kind and thresholds are finite.
    pub fn is_valid_for(&self, ds: &DataSet) -> bool {
        let Some(attr) = ds.attributes().get(self.attribute) else {
            return false;
        };
        match self.test {
            Test::LessThan(v) | Test::AtLeast(v) => attr.is_numeric() && v.is_finite(),
            Test::Equals(k) | Test::NotEquals(k) => (k as usize) < attr.labels().len(),
        }
    }
}

/// Conjunction of conditions describing examples of one group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContrastSet {
    pub conditions: Vec<Condition>,
    pub group: usize,
}

impl ContrastSet {
    pub fn new(group: usize) -> Self {
        ContrastSet {
            conditions: Vec::new(),
            group,
        }
    }

    pub fn with_conditions(group: usize, conditions: Vec<Condition>) -> Self {
        ContrastSet { conditions, group }
    }

    pub fn len(&self) -> usize {
        self.conditions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.conditions.is_empty()
    }

    pub fn push(&mut self, condition: Condition) {
        self.conditions.push(condition);
    }

    pub fn satisfies(&self, ds: &DataSet, example: usize) -> bool {
        self.conditions.iter().all(|c| c.satisfies(ds, example))
    }

    /// Members of `subset` satisfying every condition. The empty premise covers
    /// the whole subset.
    pub fn cover(&self, subset: &CoverageSet, ds: &DataSet) -> CoverageSet {
        let mut out = CoverageSet::empty(subset.len());
        for i in subset {
            if self.satisfies(ds, i) {
                out.insert(i);
            }
        }
        out
    }

    /// Sorted distinct attribute indices.
    pub fn attributes(&self) -> Vec<usize> {
        let mut attrs: Vec<usize> = self.conditions.iter().map(|c| c.attribute).collect();
        attrs.sort_unstable();
        attrs.dedup();
        attrs
    }

    pub fn contains_attribute(&self, attribute: usize) -> bool {
        self.conditions.iter().any(|c| c.attribute == attribute)
    }

    /// Keeps the tightest lower and upper bound per numeric attribute and drops
    /// repeated nominal tests. Attributes stay in order of first appearance; a
    /// numeric attribute contributes its lower bound before its upper bound.
    /// Coverage is unchanged.
    pub fn canonicalize(&self) -> ContrastSet {
        let mut order: Vec<usize> = Vec::new();
        for c in &self.conditions {
            if !order.contains(&c.attribute) {
                order.push(c.attribute);
            }
        }
        let mut out = Vec::with_capacity(self.conditions.len());
        for attr in order {
            let mut lower: Option<f64> = None;
            let mut upper: Option<f64> = None;
            let start = out.len();
            for c in self.conditions.iter().filter(|c| c.attribute == attr) {
                match c.test {
                    Test::AtLeast(v) => lower = Some(lower.map_or(v, |l: f64| l.max(v))),
                    Test::LessThan(v) => upper = Some(upper.map_or(v, |u: f64| u.min(v))),
                    _ => {
                        if !out[start..].contains(c) {
                            out.push(*c);
                        }
                    }
                }
            }
            if let Some(v) = lower {
                out.push(Condition::new(attr, Test::AtLeast(v)));
            }
            if let Some(v) = upper {
                out.push(Condition::new(attr, Test::LessThan(v)));
            }
        }
        ContrastSet {
            conditions: out,
            group: self.group,
        }
    }

    /// True when the canonical form covers nothing by construction: an empty
    /// numeric interval or incompatible nominal tests.
    pub fn is_contradictory(&self) -> bool {
        let canon = self.canonicalize();
        for attr in canon.attributes() {
            let mut lower = f64::NEG_INFINITY;
            let mut upper = f64::INFINITY;
            let mut equals: Option<u32> = None;
            let mut not_equals: Vec<u32> = Vec::new();
            for c in canon.conditions.iter().filter(|c| c.attribute == attr) {
                match c.test {
                    Test::AtLeast(v) => lower = v,
                    Test::LessThan(v) => upper = v,
                    Test::Equals(v) => {
                        if equals.is_some_and(|e| e != v) {
                            return true;
                        }
                        equals = Some(v);
                    }
                    Test::NotEquals(v) => not_equals.push(v),
                }
            }
            if lower >= upper {
                return true;
            }
            if equals.is_some_and(|e| not_equals.contains(&e)) {
                return true;
            }
        }
        false
    }

    /// Canonical conditions sorted into an order-independent key.
    pub fn canonical_key(&self) -> Vec<Condition> {
        let mut key = self.canonicalize().conditions;
        key.sort();
        key
    }

    /// Same group and same canonical conditions, in any order.
    pub fn is_duplicate(&self, other: &ContrastSet) -> bool {
        self.group == other.group && self.canonical_key() == other.canonical_key()
    }

    /// Rendering in report grammar, e.g. `a1 in [0.92, 1.78) AND a3 != 4`.
    pub fn display<'a>(&'a self, ds: &'a DataSet) -> DisplaySet<'a> {
        DisplaySet { cs: self, ds }
    }
}

pub struct DisplaySet<'a> {
    cs: &'a ContrastSet,
    ds: &'a DataSet,
}

impl fmt::Display for DisplaySet<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let canon = self.cs.canonicalize();
        let attrs = self.ds.attributes();
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| -> fmt::Result {
            if !first {
                f.write_str(" AND ")?;
            }
            first = false;
            Ok(())
        };
        let conds = &canon.conditions;
        let mut i = 0;
        while i < conds.len() {
            let c = conds[i];
            let name = &attrs[c.attribute].name;
            sep(f)?;
            match c.test {
                Test::Equals(k) => write!(f, "{name} = {}", attrs[c.attribute].labels()[k as usize])?,
                Test::NotEquals(k) => {
                    write!(f, "{name} != {}", attrs[c.attribute].labels()[k as usize])?
                }
                Test::AtLeast(lo) => match conds.get(i + 1) {
                    Some(Condition {
                        attribute,
                        test: Test::LessThan(hi),
                    }) if *attribute == c.attribute => {
                        write!(f, "{name} in [{lo}, {hi})")?;
                        i += 1;
                    }
                    _ => write!(f, "{name} in [{lo}, inf)")?,
                },
                Test::LessThan(hi) => write!(f, "{name} in (-inf, {hi})")?,
            }
            i += 1;
        }
        Ok(())
    }
}

/// Counts consumed by the quality measures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct ConfusionMatrix {
    /// Covered positives.
    pub p: usize,
    /// Covered negatives.
    pub n: usize,
    /// All positives.
    pub total_p: usize,
    /// All negatives.
    pub total_n: usize,
    /// Covered positives that were not yet covered.
    pub p_new: usize,
}

impl ConfusionMatrix {
    pub fn new(p: usize, n: usize, total_p: usize, total_n: usize) -> Self {
        ConfusionMatrix {
            p,
            n,
            total_p,
            total_n,
            p_new: 0,
        }
    }

    /// Counts from a coverage and the three reference sets.
    pub fn from_coverage(
        covered: &CoverageSet,
        positives: &CoverageSet,
        negatives: &CoverageSet,
        uncovered_positives: &CoverageSet,
    ) -> Self {
        ConfusionMatrix {
            p: covered.intersection_count(positives),
            n: covered.intersection_count(negatives),
            total_p: positives.count(),
            total_n: negatives.count(),
            p_new: covered.intersection_count(uncovered_positives),
        }
    }

    /// `(n·P)/(p·N)`, the ratio of negative to positive support. Undefined
    /// when nothing positive is covered or there are no negatives.
    pub fn neg2pos(&self) -> Option<f64> {
        if self.p == 0 || self.total_n == 0 {
            return None;
        }
        Some((self.n as f64 * self.total_p as f64) / (self.p as f64 * self.total_n as f64))
    }

    pub fn support(&self) -> f64 {
        self.p as f64 / self.total_p as f64
    }

    pub fn precision(&self) -> f64 {
        self.p as f64 / (self.p + self.n) as f64
    }
}
