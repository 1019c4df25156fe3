//! Tabular data model: typed attributes, examples, groups and targets.
//!
//! A [`Table`] is the raw result of parsing: every declared column, no roles.
//! A [`DataSet`] is what the miner consumes: conditional attributes only, a
//! group for every example and, depending on the task, a regression label or
//! a survival observation. Tables become data sets either by naming a group
//! column ([`Table::bind`]) or by deriving two groups from a label or survival
//! time ([`derive_groups_regression`], [`derive_groups_survival`]).

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::coverage::CoverageSet;

const MISSING_NOMINAL: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq)]
pub enum AttributeKind {
    Numeric,
    /// Ordered list of category labels; a cell stores an index into it.
    Nominal(Vec<String>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Attribute {
    pub name: String,
    pub kind: AttributeKind,
}

impl Attribute {
    pub fn numeric(name: impl Into<String>) -> Self {
        Attribute {
            name: name.into(),
            kind: AttributeKind::Numeric,
        }
    }

    pub fn nominal<I, S>(name: impl Into<String>, labels: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Attribute {
            name: name.into(),
            kind: AttributeKind::Nominal(labels.into_iter().map(Into::into).collect()),
        }
    }

    pub fn is_numeric(&self) -> bool {
        matches!(self.kind, AttributeKind::Numeric)
    }

    /// Category labels of a nominal attribute, empty for numeric ones.
    pub fn labels(&self) -> &[String] {
        match &self.kind {
            AttributeKind::Numeric => &[],
            AttributeKind::Nominal(labels) => labels,
        }
    }

    /// Index of a nominal label (case-sensitive).
    pub fn label_index(&self, label: &str) -> Option<u32> {
        self.labels()
            .iter()
            .position(|l| l == label)
            .map(|i| i as u32)
    }

    fn validate(&self) -> Result<(), DataError> {
        if let AttributeKind::Nominal(labels) = &self.kind {
            for (i, label) in labels.iter().enumerate() {
                if label.is_empty() {
                    return Err(DataError::EmptyNominalLabel(self.name.clone()));
                }
                if labels[..i].contains(label) {
                    return Err(DataError::DuplicateNominalLabel {
                        attribute: self.name.clone(),
                        label: label.clone(),
                    });
                }
            }
        }
        Ok(())
    }
}

/// One cell.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Value {
    Missing,
    Numeric(f64),
    /// Index into the attribute's label list.
    Nominal(u32),
}

impl Value {
    pub fn is_missing(&self) -> bool {
        matches!(self, Value::Missing)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Task {
    #[default]
    Classification,
    Regression,
    Survival,
}

/// Survival time with its censoring status (`event == false` means censored).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SurvivalObs {
    pub time: f64,
    pub event: bool,
}

impl SurvivalObs {
    pub fn event(time: f64) -> Self {
        SurvivalObs { time, event: true }
    }

    pub fn censored(time: f64) -> Self {
        SurvivalObs { time, event: false }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Example {
    pub values: Vec<Value>,
    /// Index into [`DataSet::groups`].
    pub group: usize,
    pub label: Option<f64>,
    pub survival: Option<SurvivalObs>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DataError {
    #[error("duplicate attribute name `{0}`")]
    DuplicateAttribute(String),
    #[error("nominal attribute `{0}` has an empty label")]
    EmptyNominalLabel(String),
    #[error("nominal attribute `{attribute}` declares label `{label}` twice")]
    DuplicateNominalLabel { attribute: String, label: String },
    #[error("unknown attribute `{0}`")]
    UnknownAttribute(String),
    #[error("example {example}: expected {expected} cells, found {found}")]
    Arity {
        example: usize,
        expected: usize,
        found: usize,
    },
    #[error("example {example}: cell of attribute `{attribute}` does not match its kind")]
    KindMismatch { example: usize, attribute: String },
    #[error("example {example}: group index {group} out of range")]
    GroupOutOfRange { example: usize, group: usize },
    #[error("example {example}: missing group value")]
    MissingGroup { example: usize },
    #[error("example {example}: missing {what}")]
    MissingTarget { example: usize, what: &'static str },
    #[error("example {example}: invalid survival {what}")]
    InvalidSurvival { example: usize, what: &'static str },
    #[error("group column `{0}` must be nominal")]
    GroupNotNominal(String),
    #[error("column `{0}` must be numeric")]
    NotNumeric(String),
    #[error("task `{0:?}` requires column binding `{1}`")]
    MissingBinding(Task, &'static str),
    #[error("group derivation produced an empty group `{0}`")]
    EmptyGroup(String),
    #[error("data set has no examples")]
    NoExamples,
}

/// Column-major cell storage.
#[derive(Clone, Debug, PartialEq)]
pub enum Column {
    /// `NaN` marks a missing cell.
    Numeric(Vec<f64>),
    /// `u32::MAX` marks a missing cell.
    Nominal(Vec<u32>),
}

impl Column {
    fn get(&self, i: usize) -> Value {
        match self {
            Column::Numeric(v) if v[i].is_nan() => Value::Missing,
            Column::Numeric(v) => Value::Numeric(v[i]),
            Column::Nominal(v) if v[i] == MISSING_NOMINAL => Value::Missing,
            Column::Nominal(v) => Value::Nominal(v[i]),
        }
    }
}

/// Immutable table of examples ready for mining.
#[derive(Clone, Debug, PartialEq)]
pub struct DataSet {
    attributes: Vec<Attribute>,
    columns: Vec<Column>,
    groups: Vec<String>,
    group_of: Vec<usize>,
    labels: Option<Vec<f64>>,
    survival: Option<Vec<SurvivalObs>>,
    task: Task,
}

impl DataSet {
    /// Validates and stores the examples. Targets required by `task` must be
    /// present on every example; targets the task does not use are dropped.
    pub fn new(
        attributes: Vec<Attribute>,
        groups: Vec<String>,
        examples: Vec<Example>,
        task: Task,
    ) -> Result<DataSet, DataError> {
        check_attributes(&attributes)?;
        let mut columns: Vec<Column> = attributes
            .iter()
            .map(|a| match a.kind {
                AttributeKind::Numeric => Column::Numeric(Vec::with_capacity(examples.len())),
                AttributeKind::Nominal(_) => Column::Nominal(Vec::with_capacity(examples.len())),
            })
            .collect();
        let mut group_of = Vec::with_capacity(examples.len());
        let mut labels = Vec::new();
        let mut survival = Vec::new();

        for (e, example) in examples.into_iter().enumerate() {
            if example.values.len() != attributes.len() {
                return Err(DataError::Arity {
                    example: e,
                    expected: attributes.len(),
                    found: example.values.len(),
                });
            }
            if example.group >= groups.len() {
                return Err(DataError::GroupOutOfRange {
                    example: e,
                    group: example.group,
                });
            }
            for ((attr, column), value) in attributes.iter().zip(&mut columns).zip(&example.values)
            {
                let ok = match (column, *value) {
                    (Column::Numeric(col), Value::Missing) => {
                        col.push(f64::NAN);
                        true
                    }
                    (Column::Numeric(col), Value::Numeric(x)) if x.is_finite() => {
                        col.push(x);
                        true
                    }
                    (Column::Nominal(col), Value::Missing) => {
                        col.push(MISSING_NOMINAL);
                        true
                    }
                    (Column::Nominal(col), Value::Nominal(k))
                        if (k as usize) < attr.labels().len() =>
                    {
                        col.push(k);
                        true
                    }
                    _ => false,
                };
                if !ok {
                    return Err(DataError::KindMismatch {
                        example: e,
                        attribute: attr.name.clone(),
                    });
                }
            }
            group_of.push(example.group);
            match task {
                Task::Classification => {}
                Task::Regression => match example.label {
                    Some(l) if l.is_finite() => labels.push(l),
                    _ => {
                        return Err(DataError::MissingTarget {
                            example: e,
                            what: "regression label",
                        })
                    }
                },
                Task::Survival => match example.survival {
                    Some(obs) if obs.time.is_finite() && obs.time >= 0.0 => survival.push(obs),
                    Some(_) => {
                        return Err(DataError::InvalidSurvival {
                            example: e,
                            what: "time",
                        })
                    }
                    None => {
                        return Err(DataError::MissingTarget {
                            example: e,
                            what: "survival time/status",
                        })
                    }
                },
            }
        }

        Ok(DataSet {
            attributes,
            columns,
            groups,
            group_of,
            labels: (task == Task::Regression).then_some(labels),
            survival: (task == Task::Survival).then_some(survival),
            task,
        })
    }

    pub fn attributes(&self) -> &[Attribute] {
        &self.attributes
    }

    pub fn attribute_index(&self, name: &str) -> Option<usize> {
        self.attributes.iter().position(|a| a.name == name)
    }

    pub fn groups(&self) -> &[String] {
        &self.groups
    }

    pub fn group_index(&self, name: &str) -> Option<usize> {
        self.groups.iter().position(|g| g == name)
    }

    pub fn task(&self) -> Task {
        self.task
    }

    pub fn len(&self) -> usize {
        self.group_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.group_of.is_empty()
    }

    #[inline]
    pub fn value(&self, example: usize, attribute: usize) -> Value {
        self.columns[attribute].get(example)
    }

    pub fn column(&self, attribute: usize) -> &Column {
        &self.columns[attribute]
    }

    #[inline]
    pub fn group_of(&self, example: usize) -> usize {
        self.group_of[example]
    }

    /// Regression labels, present iff the task is regression.
    pub fn labels(&self) -> Option<&[f64]> {
        self.labels.as_deref()
    }

    /// Survival observations, present iff the task is survival.
    pub fn survival(&self) -> Option<&[SurvivalObs]> {
        self.survival.as_deref()
    }

    /// Members of one group.
    pub fn group_members(&self, group: usize) -> CoverageSet {
        CoverageSet::from_fn(self.len(), |i| self.group_of[i] == group)
    }

    pub fn group_sizes(&self) -> Vec<usize> {
        let mut sizes = alloc::vec![0; self.groups.len()];
        for &g in &self.group_of {
            sizes[g] += 1;
        }
        sizes
    }

    /// Reconstructs one example.
    pub fn example(&self, i: usize) -> Example {
        Example {
            values: (0..self.attributes.len()).map(|a| self.value(i, a)).collect(),
            group: self.group_of[i],
            label: self.labels.as_ref().map(|l| l[i]),
            survival: self.survival.as_ref().map(|s| s[i]),
        }
    }

    /// The same examples treated as a plain classification problem, i.e. the
    /// group-only mode that ignores labels and survival targets.
    pub fn as_classification(&self) -> DataSet {
        DataSet {
            labels: None,
            survival: None,
            task: Task::Classification,
            ..self.clone()
        }
    }
}

fn check_attributes(attributes: &[Attribute]) -> Result<(), DataError> {
    for (i, attr) in attributes.iter().enumerate() {
        attr.validate()?;
        if attributes[..i].iter().any(|a| a.name == attr.name) {
            return Err(DataError::DuplicateAttribute(attr.name.clone()));
        }
    }
    Ok(())
}

/// Column roles used to turn a [`Table`] into a [`DataSet`].
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Binding {
    pub task: Task,
    pub group: Option<String>,
    pub label: Option<String>,
    pub time: Option<String>,
    pub status: Option<String>,
}

impl Binding {
    pub fn classification(group: impl Into<String>) -> Self {
        Binding {
            task: Task::Classification,
            group: Some(group.into()),
            ..Binding::default()
        }
    }
}

/// Raw parsed table: every column is an attribute, no roles assigned yet.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub relation: String,
    pub attributes: Vec<Attribute>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn column_index(&self, name: &str) -> Result<usize, DataError> {
        self.attributes
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| DataError::UnknownAttribute(name.to_string()))
    }

    /// Drops the named columns.
    pub fn without(&self, names: &[&str]) -> Result<Table, DataError> {
        let mut drop = Vec::new();
        for name in names {
            drop.push(self.column_index(name)?);
        }
        let keep: Vec<usize> = (0..self.attributes.len())
            .filter(|i| !drop.contains(i))
            .collect();
        Ok(self.project(&keep))
    }

    fn project(&self, keep: &[usize]) -> Table {
        Table {
            relation: self.relation.clone(),
            attributes: keep.iter().map(|&i| self.attributes[i].clone()).collect(),
            rows: self
                .rows
                .iter()
                .map(|r| keep.iter().map(|&i| r[i]).collect())
                .collect(),
        }
    }

    fn numeric_column(&self, name: &str) -> Result<(usize, Vec<Option<f64>>), DataError> {
        let idx = self.column_index(name)?;
        if !self.attributes[idx].is_numeric() {
            return Err(DataError::NotNumeric(name.to_string()));
        }
        let values = self
            .rows
            .iter()
            .map(|r| match r[idx] {
                Value::Numeric(x) => Some(x),
                _ => None,
            })
            .collect();
        Ok((idx, values))
    }

    // status is 0/1, numeric or nominal with labels "0"/"1"
    fn status_column(&self, name: &str) -> Result<(usize, Vec<Option<bool>>), DataError> {
        let idx = self.column_index(name)?;
        let attr = &self.attributes[idx];
        let values = self
            .rows
            .iter()
            .map(|r| match r[idx] {
                Value::Numeric(0.0) => Some(false),
                Value::Numeric(1.0) => Some(true),
                Value::Nominal(k) => match attr.labels()[k as usize].as_str() {
                    "0" => Some(false),
                    "1" => Some(true),
                    _ => None,
                },
                _ => None,
            })
            .collect();
        Ok((idx, values))
    }

    fn survival_targets(
        &self,
        time: &str,
        status: &str,
    ) -> Result<(Vec<usize>, Vec<SurvivalObs>), DataError> {
        let (ti, times) = self.numeric_column(time)?;
        let (si, statuses) = self.status_column(status)?;
        let mut obs = Vec::with_capacity(self.rows.len());
        for (e, (t, s)) in times.into_iter().zip(statuses).enumerate() {
            let t = t.ok_or(DataError::MissingTarget {
                example: e,
                what: "survival time",
            })?;
            if t.is_nan() || t < 0.0 {
                return Err(DataError::InvalidSurvival {
                    example: e,
                    what: "time",
                });
            }
            let s = s.ok_or(DataError::InvalidSurvival {
                example: e,
                what: "status",
            })?;
            obs.push(SurvivalObs { time: t, event: s });
        }
        Ok((alloc::vec![ti, si], obs))
    }

    fn build(
        &self,
        role_columns: &[usize],
        groups: Vec<String>,
        group_of: &[Option<usize>],
        labels: Option<&[f64]>,
        survival: Option<&[SurvivalObs]>,
        task: Task,
    ) -> Result<DataSet, DataError> {
        let keep: Vec<usize> = (0..self.attributes.len())
            .filter(|i| !role_columns.contains(i))
            .collect();
        let attributes = keep.iter().map(|&i| self.attributes[i].clone()).collect();
        let mut examples = Vec::new();
        for (e, row) in self.rows.iter().enumerate() {
            let Some(group) = group_of[e] else { continue };
            examples.push(Example {
                values: keep.iter().map(|&i| row[i]).collect(),
                group,
                label: labels.map(|l| l[e]),
                survival: survival.map(|s| s[e]),
            });
        }
        if examples.is_empty() {
            return Err(DataError::NoExamples);
        }
        DataSet::new(attributes, groups, examples, task)
    }

    /// Builds a data set using an explicit nominal group column. Groups are the
    /// declared labels that occur at least once, in declaration order.
    pub fn bind(&self, binding: &Binding) -> Result<DataSet, DataError> {
        let group_name = binding
            .group
            .as_deref()
            .ok_or(DataError::MissingBinding(binding.task, "group"))?;
        let gi = self.column_index(group_name)?;
        let gattr = &self.attributes[gi];
        if gattr.is_numeric() {
            return Err(DataError::GroupNotNominal(group_name.to_string()));
        }
        let mut raw = Vec::with_capacity(self.rows.len());
        for (e, row) in self.rows.iter().enumerate() {
            match row[gi] {
                Value::Nominal(k) => raw.push(k as usize),
                _ => return Err(DataError::MissingGroup { example: e }),
            }
        }
        let mut used = alloc::vec![false; gattr.labels().len()];
        for &k in &raw {
            used[k] = true;
        }
        let mut remap = alloc::vec![usize::MAX; used.len()];
        let mut groups = Vec::new();
        for (k, label) in gattr.labels().iter().enumerate() {
            if used[k] {
                remap[k] = groups.len();
                groups.push(label.clone());
            }
        }
        let group_of: Vec<Option<usize>> = raw.iter().map(|&k| Some(remap[k])).collect();

        let mut roles = alloc::vec![gi];
        match binding.task {
            Task::Classification => self.build(&roles, groups, &group_of, None, None, Task::Classification),
            Task::Regression => {
                let name = binding
                    .label
                    .as_deref()
                    .ok_or(DataError::MissingBinding(Task::Regression, "label"))?;
                let (li, labels) = self.numeric_column(name)?;
                let labels = labels
                    .into_iter()
                    .enumerate()
                    .map(|(e, l)| {
                        l.ok_or(DataError::MissingTarget {
                            example: e,
                            what: "regression label",
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                roles.push(li);
                self.build(&roles, groups, &group_of, Some(&labels), None, Task::Regression)
            }
            Task::Survival => {
                let (time, status) = match (&binding.time, &binding.status) {
                    (Some(t), Some(s)) => (t.as_str(), s.as_str()),
                    (None, _) => return Err(DataError::MissingBinding(Task::Survival, "time")),
                    (_, None) => return Err(DataError::MissingBinding(Task::Survival, "status")),
                };
                let (cols, obs) = self.survival_targets(time, status)?;
                roles.extend(cols);
                self.build(&roles, groups, &group_of, None, Some(&obs), Task::Survival)
            }
        }
    }
}

/// Median with the mean-of-central-pair convention for even counts.
pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mid = sorted.len() / 2;
    Some(if sorted.len() % 2 == 1 {
        sorted[mid]
    } else {
        (sorted[mid - 1] + sorted[mid]) / 2.0
    })
}

pub const BELOW_MEDIAN: &str = "below_median";
pub const AT_OR_ABOVE_MEDIAN: &str = "at_or_above_median";

/// Splits a regression table into `label < median` and `label >= median`.
/// The label column becomes the regression target.
pub fn derive_groups_regression(table: &Table, label: &str) -> Result<DataSet, DataError> {
    let (li, labels) = table.numeric_column(label)?;
    let labels = labels
        .into_iter()
        .enumerate()
        .map(|(e, l)| {
            l.ok_or(DataError::MissingTarget {
                example: e,
                what: "regression label",
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let med = median(&labels).ok_or(DataError::NoExamples)?;
    let group_of: Vec<Option<usize>> = labels
        .iter()
        .map(|&l| Some(if l < med { 0 } else { 1 }))
        .collect();
    check_nonempty(&group_of)?;
    table.build(
        &[li],
        groups_below_above(),
        &group_of,
        Some(&labels),
        None,
        Task::Regression,
    )
}

/// Splits a survival table into events before the median time and all
/// observations at or after it. Censored observations before the median are
/// dropped; the median is taken over all observations before dropping.
pub fn derive_groups_survival(table: &Table, time: &str, status: &str) -> Result<DataSet, DataError> {
    let (cols, obs) = table.survival_targets(time, status)?;
    let times: Vec<f64> = obs.iter().map(|o| o.time).collect();
    let med = median(&times).ok_or(DataError::NoExamples)?;
    let group_of: Vec<Option<usize>> = obs
        .iter()
        .map(|o| {
            if o.time >= med {
                Some(1)
            } else if o.event {
                Some(0)
            } else {
                None
            }
        })
        .collect();
    check_nonempty(&group_of)?;
    table.build(&cols, groups_below_above(), &group_of, None, Some(&obs), Task::Survival)
}

fn groups_below_above() -> Vec<String> {
    alloc::vec![BELOW_MEDIAN.to_string(), AT_OR_ABOVE_MEDIAN.to_string()]
}

fn check_nonempty(group_of: &[Option<usize>]) -> Result<(), DataError> {
    for (g, name) in [BELOW_MEDIAN, AT_OR_ABOVE_MEDIAN].iter().enumerate() {
        if !group_of.contains(&Some(g)) {
            return Err(DataError::EmptyGroup(name.to_string()));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn table(cols: Vec<Attribute>, rows: Vec<Vec<Value>>) -> Table {
        Table {
            relation: "t".into(),
            attributes: cols,
            rows,
        }
    }

    fn labels_table(labels: &[f64]) -> Table {
        table(
            vec![Attribute::numeric("x"), Attribute::numeric("y")],
            labels
                .iter()
                .enumerate()
                .map(|(i, &l)| vec![Value::Numeric(i as f64), Value::Numeric(l)])
                .collect(),
        )
    }

    #[test]
    fn median_convention() {
        assert_eq!(median(&[4.0, 1.0, 3.0, 2.0]), Some(2.5));
        assert_eq!(median(&[3.0, 1.0, 2.0]), Some(2.0));
        assert_eq!(median(&[]), None);
    }

    #[test]
    fn regression_groups_even_count() {
        let ds = derive_groups_regression(&labels_table(&[1.0, 2.0, 3.0, 4.0]), "y").unwrap();
        assert_eq!(ds.group_sizes(), vec![2, 2]);
        assert_eq!(ds.labels().unwrap(), &[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(ds.attributes().len(), 1);
        assert_eq!(ds.task(), Task::Regression);
    }

    #[test]
    fn regression_groups_odd_count_tie_goes_up() {
        let ds = derive_groups_regression(&labels_table(&[1.0, 2.0, 3.0]), "y").unwrap();
        let groups: Vec<usize> = (0..3).map(|i| ds.group_of(i)).collect();
        assert_eq!(groups, vec![0, 1, 1]);
    }

    #[test]
    fn regression_groups_all_equal_rejected() {
        let err = derive_groups_regression(&labels_table(&[5.0; 4]), "y").unwrap_err();
        assert_eq!(err, DataError::EmptyGroup(BELOW_MEDIAN.into()));
    }

    fn survival_table(obs: &[(f64, f64)]) -> Table {
        table(
            vec![
                Attribute::numeric("x"),
                Attribute::numeric("time"),
                Attribute::nominal("status", ["0", "1"]),
            ],
            obs.iter()
                .enumerate()
                .map(|(i, &(t, s))| {
                    vec![
                        Value::Numeric(i as f64),
                        Value::Numeric(t),
                        Value::Nominal(s as u32),
                    ]
                })
                .collect(),
        )
    }

    #[test]
    fn survival_groups_drop_early_censored() {
        // 1c, 2e, 3e, 4c with median 2.5
        let t = survival_table(&[(1.0, 0.0), (2.0, 1.0), (3.0, 1.0), (4.0, 0.0)]);
        let ds = derive_groups_survival(&t, "time", "status").unwrap();
        assert_eq!(ds.len(), 3);
        assert_eq!(ds.group_sizes(), vec![1, 2]);
        let s = ds.survival().unwrap();
        assert_eq!(s[0], SurvivalObs::event(2.0));
        assert_eq!(s[2], SurvivalObs::censored(4.0));
        // cells untouched
        assert_eq!(ds.value(0, 0), Value::Numeric(1.0));
        assert_eq!(ds.attributes().len(), 1);
    }

    #[test]
    fn survival_groups_all_events_no_removal() {
        let t = survival_table(&[(1.0, 1.0), (2.0, 1.0), (3.0, 1.0), (4.0, 1.0), (5.0, 1.0)]);
        let ds = derive_groups_survival(&t, "time", "status").unwrap();
        assert_eq!(ds.len(), 5);
        assert_eq!(ds.group_sizes(), vec![2, 3]);
    }

    #[test]
    fn survival_groups_time_equal_to_median_kept_upper() {
        // median 2 exactly; the censored T = 2 stays in the upper group
        let t = survival_table(&[(1.0, 1.0), (2.0, 0.0), (3.0, 1.0)]);
        let ds = derive_groups_survival(&t, "time", "status").unwrap();
        assert_eq!(ds.group_sizes(), vec![1, 2]);
    }

    #[test]
    fn bind_classification_excludes_group_column() {
        let t = table(
            vec![Attribute::numeric("a"), Attribute::nominal("class", ["x", "y", "z"])],
            vec![
                vec![Value::Numeric(1.0), Value::Nominal(2)],
                vec![Value::Missing, Value::Nominal(0)],
            ],
        );
        let ds = t.bind(&Binding::classification("class")).unwrap();
        assert_eq!(ds.groups(), &["x".to_string(), "z".to_string()]);
        assert_eq!(ds.group_of(0), 1);
        assert_eq!(ds.value(1, 0), Value::Missing);
        assert_eq!(ds.attributes().len(), 1);

        assert!(matches!(
            t.bind(&Binding::classification("nope")),
            Err(DataError::UnknownAttribute(_))
        ));
        assert!(matches!(
            t.bind(&Binding::classification("a")),
            Err(DataError::GroupNotNominal(_))
        ));
    }

    #[test]
    fn dataset_rejects_bad_cells() {
        let attrs = vec![Attribute::nominal("a", ["1", "2"])];
        let bad = Example {
            values: vec![Value::Nominal(5)],
            group: 0,
            label: None,
            survival: None,
        };
        let err = DataSet::new(attrs.clone(), vec!["g".into()], vec![bad], Task::Classification);
        assert!(matches!(err, Err(DataError::KindMismatch { .. })));

        let dup = vec![Attribute::numeric("a"), Attribute::numeric("a")];
        assert!(matches!(
            DataSet::new(dup, vec![], vec![], Task::Classification),
            Err(DataError::DuplicateAttribute(_))
        ));
        let dup_label = vec![Attribute::nominal("a", ["x", "x"])];
        assert!(matches!(
            DataSet::new(dup_label, vec![], vec![], Task::Classification),
            Err(DataError::DuplicateNominalLabel { .. })
        ));
    }

    #[test]
    fn regression_requires_labels() {
        let e = Example {
            values: vec![],
            group: 0,
            label: None,
            survival: None,
        };
        let err = DataSet::new(vec![], vec!["g".into()], vec![e], Task::Regression).unwrap_err();
        assert!(matches!(err, DataError::MissingTarget { .. }));
    }
}
