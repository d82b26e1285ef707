//! Graded modules over the rationals and homogeneous maps between them.
//!
//! A [`GradedModule`] is a finitely supported assignment of ordered,
//! labelled bases to integer degrees. A [`GradedMap`] of degree `k` sends
//! the degree-`j` piece of its source into the degree-`j+k` piece of its
//! target; it is stored as one sparse matrix block per source degree.
//! All values are immutable after construction and all operations are
//! pure, so concurrent evaluation needs no coordination.

use crate::error::CoreError;
use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;

/// Sparse column vector: row index -> nonzero coefficient.
pub type SparseVec = BTreeMap<usize, Scalar>;

/// `dst += c * src`, dropping entries that cancel to zero.
pub fn vec_add_scaled(dst: &mut SparseVec, src: &SparseVec, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    for (row, value) in src {
        let add = c * value;
        match dst.get_mut(row) {
            Some(cur) => {
                *cur += &add;
                if cur.is_zero() {
                    dst.remove(row);
                }
            }
            None => {
                dst.insert(*row, add);
            }
        }
    }
}

pub fn vec_scale(v: &mut SparseVec, c: &Scalar) {
    if c.is_zero() {
        v.clear();
        return;
    }
    for value in v.values_mut() {
        *value = &*value * c;
    }
}

/// Finitely supported graded module with named basis elements.
///
/// Labels are unique within each degree. Degrees with an empty basis are
/// not stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedModule {
    degrees: BTreeMap<i64, Vec<String>>,
}

impl GradedModule {
    pub fn empty() -> Self {
        GradedModule {
            degrees: BTreeMap::new(),
        }
    }

    pub fn build<I, L>(parts: I) -> Result<Self, CoreError>
    where
        I: IntoIterator<Item = (i64, Vec<L>)>,
        L: Into<String>,
    {
        let mut degrees: BTreeMap<i64, Vec<String>> = BTreeMap::new();
        for (degree, labels) in parts {
            let slot = degrees.entry(degree).or_default();
            for label in labels {
                slot.push(label.into());
            }
        }
        degrees.retain(|_, v| !v.is_empty());
        for (degree, labels) in &degrees {
            let mut seen = std::collections::BTreeSet::new();
            for label in labels {
                if !seen.insert(label) {
                    return Err(CoreError::BadInput(format!(
                        "duplicate label `{label}` in degree {degree}"
                    )));
                }
            }
        }
        Ok(GradedModule { degrees })
    }

    pub fn dim(&self, degree: i64) -> usize {
        self.degrees.get(&degree).map_or(0, Vec::len)
    }

    pub fn total_dim(&self) -> usize {
        self.degrees.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    /// Degrees with a nonempty basis, ascending.
    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.degrees.keys().copied()
    }

    pub fn labels(&self, degree: i64) -> &[String] {
        self.degrees.get(&degree).map_or(&[], Vec::as_slice)
    }

    pub fn label(&self, degree: i64, index: usize) -> &str {
        &self.labels(degree)[index]
    }

    pub fn index_of(&self, degree: i64, label: &str) -> Option<usize> {
        self.labels(degree).iter().position(|l| l == label)
    }

    /// Resolve a label that must occur in exactly one degree. Used by the
    /// JSON edge format, where entries are addressed by label alone.
    pub fn resolve(&self, label: &str) -> Result<(i64, usize), CoreError> {
        let mut found = None;
        for (&degree, labels) in &self.degrees {
            if let Some(index) = labels.iter().position(|l| l == label) {
                if found.is_some() {
                    return Err(CoreError::BadInput(format!(
                        "label `{label}` is ambiguous across degrees"
                    )));
                }
                found = Some((degree, index));
            }
        }
        found.ok_or_else(|| CoreError::BadInput(format!("unknown label `{label}`")))
    }

    fn first_shape_difference(&self, other: &GradedModule) -> Option<i64> {
        let degrees: std::collections::BTreeSet<i64> =
            self.support().chain(other.support()).collect();
        degrees
            .into_iter()
            .find(|&d| self.labels(d) != other.labels(d))
    }
}

/// Homogeneous map of graded modules, stored as one sparse block per
/// source degree. The block at source degree `j` maps the degree-`j`
/// basis of the source into the degree-`j + degree` basis of the target;
/// missing blocks and missing entries are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedMap {
    source: GradedModule,
    target: GradedModule,
    degree: i64,
    blocks: BTreeMap<i64, BTreeMap<(usize, usize), Scalar>>,
}

impl GradedMap {
    pub fn zero(source: GradedModule, target: GradedModule, degree: i64) -> Self {
        GradedMap {
            source,
            target,
            degree,
            blocks: BTreeMap::new(),
        }
    }

    pub fn identity(module: &GradedModule) -> Self {
        let mut map = GradedMap::zero(module.clone(), module.clone(), 0);
        for degree in module.support() {
            for index in 0..module.dim(degree) {
                map.blocks
                    .entry(degree)
                    .or_default()
                    .insert((index, index), Scalar::one());
            }
        }
        map
    }

    pub fn source(&self) -> &GradedModule {
        &self.source
    }

    pub fn target(&self) -> &GradedModule {
        &self.target
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn is_endomorphism(&self) -> bool {
        self.source == self.target
    }

    /// Add `value` to the entry sending source basis element `col` (in
    /// `src_degree`) to target basis element `row` (in `src_degree +
    /// degree`).
    pub fn add_term(
        &mut self,
        src_degree: i64,
        row: usize,
        col: usize,
        value: Scalar,
    ) -> Result<(), CoreError> {
        if value.is_zero() {
            return Ok(());
        }
        let tgt_degree = src_degree + self.degree;
        if col >= self.source.dim(src_degree) {
            return Err(CoreError::ShapeMismatch {
                degree: src_degree,
                detail: format!(
                    "column {col} out of range (source dimension {})",
                    self.source.dim(src_degree)
                ),
            });
        }
        if row >= self.target.dim(tgt_degree) {
            return Err(CoreError::ShapeMismatch {
                degree: src_degree,
                detail: format!(
                    "row {row} out of range (target dimension {} in degree {tgt_degree})",
                    self.target.dim(tgt_degree)
                ),
            });
        }
        let block = self.blocks.entry(src_degree).or_default();
        let slot = block.entry((row, col)).or_insert_with(Scalar::zero);
        *slot += &value;
        if slot.is_zero() {
            block.remove(&(row, col));
            if self.blocks.get(&src_degree).is_some_and(BTreeMap::is_empty) {
                self.blocks.remove(&src_degree);
            }
        }
        Ok(())
    }

    pub fn entry(&self, src_degree: i64, row: usize, col: usize) -> Scalar {
        self.blocks
            .get(&src_degree)
            .and_then(|b| b.get(&(row, col)))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    /// Image of the `col`-th basis element of the source in `src_degree`,
    /// as a sparse vector in the target degree `src_degree + degree`.
    pub fn column(&self, src_degree: i64, col: usize) -> SparseVec {
        let mut v = SparseVec::new();
        if let Some(block) = self.blocks.get(&src_degree) {
            for (&(row, c), value) in block {
                if c == col {
                    v.insert(row, value.clone());
                }
            }
        }
        v
    }

    /// Apply to a sparse vector living in `src_degree`.
    pub fn apply(&self, src_degree: i64, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        if let Some(block) = self.blocks.get(&src_degree) {
            for (&(row, col), value) in block {
                if let Some(coeff) = v.get(&col) {
                    let add = value * coeff;
                    let slot = out.entry(row).or_insert_with(Scalar::zero);
                    *slot += &add;
                    if slot.is_zero() {
                        out.remove(&row);
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Iterate all nonzero entries as `(src_degree, row, col, value)`.
    pub fn entries(&self) -> impl Iterator<Item = (i64, usize, usize, &Scalar)> {
        self.blocks.iter().flat_map(|(&degree, block)| {
            block
                .iter()
                .map(move |(&(row, col), value)| (degree, row, col, value))
        })
    }

    pub fn same_shape(&self, other: &GradedMap) -> Result<(), CoreError> {
        if self.degree != other.degree {
            return Err(CoreError::ShapeMismatch {
                degree: 0,
                detail: format!("map degrees differ: {} vs {}", self.degree, other.degree),
            });
        }
        if let Some(d) = self.source.first_shape_difference(&other.source) {
            return Err(CoreError::ShapeMismatch {
                degree: d,
                detail: "source modules differ".to_string(),
            });
        }
        if let Some(d) = self.target.first_shape_difference(&other.target) {
            return Err(CoreError::ShapeMismatch {
                degree: d,
                detail: "target modules differ".to_string(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &GradedMap) -> Result<GradedMap, CoreError> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (degree, row, col, value) in other.entries() {
            out.add_term(degree, row, col, value.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &GradedMap) -> Result<GradedMap, CoreError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> GradedMap {
        self.scale(&-Scalar::one())
    }

    pub fn scale(&self, c: &Scalar) -> GradedMap {
        if c.is_zero() {
            return GradedMap::zero(self.source.clone(), self.target.clone(), self.degree);
        }
        let mut out = self.clone();
        for block in out.blocks.values_mut() {
            for value in block.values_mut() {
                *value = &*value * c;
            }
        }
        out
    }

    /// First entry where the two maps differ, rendered for reports.
    pub fn first_difference(&self, other: &GradedMap) -> Option<String> {
        let degrees: std::collections::BTreeSet<i64> = self
            .blocks
            .keys()
            .chain(other.blocks.keys())
            .copied()
            .collect();
        for degree in degrees {
            let keys: std::collections::BTreeSet<(usize, usize)> = self
                .blocks
                .get(&degree)
                .into_iter()
                .chain(other.blocks.get(&degree))
                .flat_map(|b| b.keys().copied())
                .collect();
            for (row, col) in keys {
                let a = self.entry(degree, row, col);
                let b = other.entry(degree, row, col);
                if a != b {
                    let col_label = self.source.label(degree, col);
                    let row_label = self.target.label(degree + self.degree, row);
                    return Some(format!(
                        "degree {degree}: ({row_label}, {col_label}) = {a} vs {b}"
                    ));
                }
            }
        }
        None
    }
}

impl fmt::Display for GradedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (degree, row, col, value) in self.entries() {
            writeln!(
                f,
                "{} -> {} {}",
                self.source.label(degree, col),
                value,
                self.target.label(degree + self.degree, row)
            )?;
        }
        Ok(())
    }
}

/// Composite `f . g` (apply `g` first). Requires the target of `g` to be
/// the source of `f`; the composite has degree `f.degree + g.degree`.
pub fn compose(f: &GradedMap, g: &GradedMap) -> Result<GradedMap, CoreError> {
    if let Some(d) = g.target.first_shape_difference(&f.source) {
        return Err(CoreError::ShapeMismatch {
            degree: d,
            detail: "inner target does not match outer source".to_string(),
        });
    }
    let mut out = GradedMap::zero(g.source.clone(), f.target.clone(), f.degree + g.degree);
    for (&src_degree, g_block) in &g.blocks {
        let mid_degree = src_degree + g.degree;
        let Some(f_block) = f.blocks.get(&mid_degree) else {
            continue;
        };
        // index the outer block by column for the sparse product
        let mut f_by_col: BTreeMap<usize, Vec<(usize, &Scalar)>> = BTreeMap::new();
        for (&(row, col), value) in f_block {
            f_by_col.entry(col).or_default().push((row, value));
        }
        for (&(g_row, g_col), g_value) in g_block {
            if let Some(f_entries) = f_by_col.get(&g_row) {
                for &(f_row, f_value) in f_entries {
                    out.add_term(src_degree, f_row, g_col, f_value * g_value)?;
                }
            }
        }
    }
    Ok(out)
}

/// Chain of composites, applied right to left: `chain([f, g, h]) = f.g.h`.
pub fn compose_chain(maps: &[&GradedMap]) -> Result<GradedMap, CoreError> {
    let (last, rest) = maps.split_last().expect("empty composition chain");
    let mut acc = (*last).clone();
    for f in rest.iter().rev() {
        acc = compose(f, &acc)?;
    }
    Ok(acc)
}
