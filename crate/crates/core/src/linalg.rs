//! Column reduction over the rational field.
//!
//! [`Echelon`] keeps a fully reduced set of column vectors: every stored
//! vector is monic at its pivot row and has zero entries at the pivot rows
//! of all other stored vectors. Insertion order is the caller's column
//! order, which keeps every derived basis deterministic.

use crate::graded::{vec_add_scaled, SparseVec};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Default)]
pub struct Echelon {
    vectors: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[SparseVec] {
        &self.vectors
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Express `v` against the stored vectors. Returns the coefficients
    /// (one per stored vector, in storage order) and the residual; the
    /// residual is zero exactly when `v` lies in the span.
    pub fn reduce(&self, mut v: SparseVec) -> (Vec<Scalar>, SparseVec) {
        let mut coeffs = vec![Scalar::zero(); self.vectors.len()];
        for (k, (vector, &pivot)) in self.vectors.iter().zip(&self.pivots).enumerate() {
            if let Some(c) = v.get(&pivot).cloned() {
                vec_add_scaled(&mut v, vector, &-&c);
                coeffs[k] = c;
            }
        }
        (coeffs, v)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone()).1.is_empty()
    }

    /// Insert a vector, extending the span if it is independent. Returns
    /// the new vector's position, or `None` when `v` was already in the
    /// span. The pivot is the smallest row index of the residual.
    pub fn insert(&mut self, v: SparseVec) -> Option<usize> {
        let (_, mut residual) = self.reduce(v);
        let (&pivot, _) = residual.iter().next()?;
        let lead = residual[&pivot].clone();
        let inv = lead.recip();
        for value in residual.values_mut() {
            *value = &*value * &inv;
        }
        for (vector, _) in self.vectors.iter_mut().zip(&self.pivots) {
            if let Some(c) = vector.get(&pivot).cloned() {
                vec_add_scaled(vector, &residual, &-&c);
            }
        }
        self.vectors.push(residual);
        self.pivots.push(pivot);
        Some(self.vectors.len() - 1)
    }
}

/// Echelon that carries a companion vector (in a second index space)
/// through every column operation. Inserting the columns of a matrix with
/// unit companions yields, for dependent columns, the combination that
/// witnesses the dependency -- which is how kernels and preimages are
/// extracted.
#[derive(Debug, Clone, Default)]
pub struct PairedEchelon {
    vectors: Vec<SparseVec>,
    pivots: Vec<usize>,
    companions: Vec<SparseVec>,
}

pub enum PairedOutcome {
    /// Vector was independent and is now stored.
    Added(usize),
    /// Vector was in the span; the companion records the dependency.
    Dependent(SparseVec),
}

impl PairedEchelon {
    pub fn new() -> Self {
        PairedEchelon::default()
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[SparseVec] {
        &self.vectors
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn companions(&self) -> &[SparseVec] {
        &self.companions
    }

    pub fn reduce(&self, mut v: SparseVec, mut companion: SparseVec) -> (SparseVec, SparseVec) {
        for (k, (vector, &pivot)) in self.vectors.iter().zip(&self.pivots).enumerate() {
            if let Some(c) = v.get(&pivot).cloned() {
                let neg = -&c;
                vec_add_scaled(&mut v, vector, &neg);
                vec_add_scaled(&mut companion, &self.companions[k], &neg);
            }
        }
        (v, companion)
    }

    pub fn insert(&mut self, v: SparseVec, companion: SparseVec) -> PairedOutcome {
        let (mut residual, mut companion) = self.reduce(v, companion);
        let Some((&pivot, _)) = residual.iter().next() else {
            return PairedOutcome::Dependent(companion);
        };
        let inv = residual[&pivot].recip();
        for value in residual.values_mut() {
            *value = &*value * &inv;
        }
        for value in companion.values_mut() {
            *value = &*value * &inv;
        }
        for k in 0..self.vectors.len() {
            if let Some(c) = self.vectors[k].get(&pivot).cloned() {
                let neg = -&c;
                vec_add_scaled(&mut self.vectors[k], &residual, &neg);
                vec_add_scaled(&mut self.companions[k], &companion, &neg);
            }
        }
        self.vectors.push(residual);
        self.pivots.push(pivot);
        self.companions.push(companion);
        PairedOutcome::Added(self.vectors.len() - 1)
    }
}

/// Rank of a list of sparse columns.
pub fn rank_of_columns<'a>(columns: impl IntoIterator<Item = &'a SparseVec>) -> usize {
    let mut ech = Echelon::new();
    for column in columns {
        ech.insert(column.clone());
    }
    ech.rank()
}

/// Kernel of the linear map whose columns are given, as combinations of
/// the input columns (vectors in the column index space), in column order.
pub fn kernel_of_columns(columns: &[SparseVec]) -> Vec<SparseVec> {
    let mut ech = PairedEchelon::new();
    let mut kernel = Vec::new();
    for (index, column) in columns.iter().enumerate() {
        let mut companion = SparseVec::new();
        companion.insert(index, Scalar::one());
        if let PairedOutcome::Dependent(witness) = ech.insert(column.clone(), companion) {
            kernel.push(witness);
        }
    }
    kernel
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(entries: &[(usize, i64)]) -> SparseVec {
        entries
            .iter()
            .map(|&(row, value)| (row, Scalar::from_int(value)))
            .collect()
    }

    #[test]
    fn echelon_detects_dependence() {
        let mut ech = Echelon::new();
        assert!(ech.insert(v(&[(0, 1), (1, 2)])).is_some());
        assert!(ech.insert(v(&[(1, 1)])).is_some());
        // 3*(first) - 2*(second) is dependent
        assert!(ech.insert(v(&[(0, 3), (1, 4)])).is_none());
        assert_eq!(ech.rank(), 2);
    }

    #[test]
    fn reduce_gives_exact_coordinates() {
        let mut ech = Echelon::new();
        ech.insert(v(&[(0, 2)]));
        ech.insert(v(&[(1, 3)]));
        let (coeffs, residual) = ech.reduce(v(&[(0, 4), (1, 6)]));
        assert!(residual.is_empty());
        // stored vectors are monic, so coordinates are 4 and 6
        assert_eq!(coeffs, vec![Scalar::from_int(4), Scalar::from_int(6)]);
    }

    #[test]
    fn kernel_combinations_recover_zero() {
        let columns = vec![v(&[(0, 1)]), v(&[(0, 2)]), v(&[(1, 1)])];
        let kernel = kernel_of_columns(&columns);
        assert_eq!(kernel.len(), 1);
        // check the witness: sum_i w_i * column_i = 0
        let witness = &kernel[0];
        let mut acc = SparseVec::new();
        for (i, column) in columns.iter().enumerate() {
            if let Some(c) = witness.get(&i) {
                vec_add_scaled(&mut acc, column, c);
            }
        }
        assert!(acc.is_empty());
    }
}
