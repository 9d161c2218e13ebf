//! Exact sparse linear algebra.
//!
//! Vectors are sparse maps from column index to coefficient.  [`Echelon`]
//! keeps rows whose pivot is their smallest column, normalized to 1, and
//! optionally tracks each row as a combination of the inserted vectors;
//! this gives membership certificates and kernels in one pass.
//!
//! The pivot set of a subspace under this convention does not depend on
//! insertion order: it is the set of minimal columns of its nonzero
//! vectors.  The quotient code relies on that to choose class
//! representatives by column order.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use crate::ring::{Field, Ring};

pub type SparseVec<F> = BTreeMap<usize, F>;

/// `y += c * x`
pub fn axpy<F: Ring>(y: &mut SparseVec<F>, x: &SparseVec<F>, c: &F) {
    if c.is_zero() {
        return;
    }
    for (&k, v) in x {
        let t = v.mul_ref(c);
        match y.entry(k) {
            std::collections::btree_map::Entry::Vacant(e) => {
                if !t.is_zero() {
                    e.insert(t);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                e.get_mut().add_assign_ref(&t);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }
}

pub fn scale<F: Ring>(x: &SparseVec<F>, c: &F) -> SparseVec<F> {
    let mut out = SparseVec::new();
    axpy(&mut out, x, c);
    out
}

/// Ordered set of distinct labels with index lookup.
#[derive(Clone, Debug)]
pub struct IndexedBasis<L> {
    labels: Vec<L>,
    index: HashMap<L, usize>,
}

impl<L: Clone + Eq + Hash> Default for IndexedBasis<L> {
    fn default() -> Self {
        IndexedBasis {
            labels: Vec::new(),
            index: HashMap::new(),
        }
    }
}

impl<L: Clone + Eq + Hash> IndexedBasis<L> {
    /// Panics on duplicate labels.
    pub fn new(labels: Vec<L>) -> Self {
        let mut b = IndexedBasis::default();
        for l in labels {
            let fresh = b.insert(l);
            assert!(fresh.1, "duplicate basis label");
        }
        b
    }

    /// Index of `l`, appending it if new.  The flag is true for new labels.
    pub fn insert(&mut self, l: L) -> (usize, bool) {
        if let Some(&i) = self.index.get(&l) {
            return (i, false);
        }
        let i = self.labels.len();
        self.index.insert(l.clone(), i);
        self.labels.push(l);
        (i, true)
    }

    pub fn index_of(&self, l: &L) -> Option<usize> {
        self.index.get(l).copied()
    }

    pub fn label(&self, i: usize) -> &L {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Coordinates of a labelled combination; `None` if a label is outside
    /// the basis.
    pub fn coords<'a, F: Ring>(&self, items: impl IntoIterator<Item = (&'a L, &'a F)>) -> Option<SparseVec<F>>
    where
        L: 'a,
    {
        let mut v = SparseVec::new();
        for (l, c) in items {
            let i = self.index_of(l)?;
            axpy(&mut v, &SparseVec::from([(i, F::one())]), c);
        }
        Some(v)
    }

    /// Coordinates, growing the basis with unseen labels.
    pub fn coords_growing<'a, F: Ring>(&mut self, items: impl IntoIterator<Item = (&'a L, &'a F)>) -> SparseVec<F>
    where
        L: 'a,
    {
        let mut v = SparseVec::new();
        for (l, c) in items {
            let (i, _) = self.insert(l.clone());
            axpy(&mut v, &SparseVec::from([(i, F::one())]), c);
        }
        v
    }
}

#[derive(Clone, Debug)]
struct Row<F> {
    vec: SparseVec<F>,
    combo: SparseVec<F>,
}

/// Result of inserting a vector into an [`Echelon`].
#[derive(Clone, Debug, PartialEq)]
pub enum Insertion<F> {
    /// New pivot at the given column.
    Independent(usize),
    /// The vector depends on earlier insertions; the combination of
    /// inserted vectors (including this one, with coefficient 1) is zero.
    Dependent(SparseVec<F>),
}

#[derive(Clone, Debug)]
pub struct Echelon<F> {
    rows: BTreeMap<usize, Row<F>>,
    tracking: bool,
    inserted: usize,
}

impl<F: Field> Echelon<F> {
    pub fn new(tracking: bool) -> Self {
        Echelon {
            rows: BTreeMap::new(),
            tracking,
            inserted: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    /// Echelon rows, ascending by pivot.
    pub fn rows(&self) -> impl Iterator<Item = (usize, &SparseVec<F>)> {
        self.rows.iter().map(|(&p, r)| (p, &r.vec))
    }

    /// Splits `v` as `residual + sum_i coeffs_i * input_i`; the residual
    /// vanishes on every pivot column.  Coefficients are only filled when
    /// tracking.
    pub fn reduce(&self, v: &SparseVec<F>) -> (SparseVec<F>, SparseVec<F>) {
        let mut v = v.clone();
        let mut coeffs = SparseVec::new();
        let mut cursor = 0;
        loop {
            let next = v
                .range(cursor..)
                .find(|(k, _)| self.rows.contains_key(k))
                .map(|(&k, c)| (k, c.clone()));
            let Some((col, c)) = next else { break };
            let row = &self.rows[&col];
            axpy(&mut v, &row.vec, &(-c.clone()));
            if self.tracking {
                axpy(&mut coeffs, &row.combo, &c);
            }
            cursor = col + 1;
        }
        (v, coeffs)
    }

    pub fn insert(&mut self, v: &SparseVec<F>) -> Insertion<F> {
        let k = self.inserted;
        self.inserted += 1;
        let (res, coeffs) = self.reduce(v);
        let mut combo = SparseVec::new();
        if self.tracking {
            combo = scale(&coeffs, &(-F::one()));
            combo.insert(k, F::one());
        }
        match res.iter().next() {
            None => Insertion::Dependent(combo),
            Some((&pivot, lead)) => {
                let inv = lead.inverse();
                let row = Row {
                    vec: scale(&res, &inv),
                    combo: scale(&combo, &inv),
                };
                self.rows.insert(pivot, row);
                Insertion::Independent(pivot)
            }
        }
    }

    /// Expansion of `v` in the inserted vectors, if `v` lies in their span.
    pub fn membership(&self, v: &SparseVec<F>) -> Option<SparseVec<F>> {
        let (res, coeffs) = self.reduce(v);
        res.is_empty().then_some(coeffs)
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.reduce(v).0.is_empty()
    }
}

/// Row-reduced spanning set of `vectors`.
pub fn span_basis<F: Field>(vectors: &[SparseVec<F>]) -> Echelon<F> {
    let mut e = Echelon::new(true);
    for v in vectors {
        e.insert(v);
    }
    e
}

/// Expansion of `v` in `basis`, or `None` when `v` is outside the span.
pub fn membership<F: Field>(v: &SparseVec<F>, basis: &Echelon<F>) -> Option<SparseVec<F>> {
    basis.membership(v)
}

/// Kernel of the linear map sending the `j`-th domain basis vector to
/// `columns[j]`, as combinations of domain basis vectors.
pub fn kernel<F: Field>(columns: &[SparseVec<F>]) -> Vec<SparseVec<F>> {
    let mut e = Echelon::new(true);
    let mut out = Vec::new();
    for c in columns {
        if let Insertion::Dependent(k) = e.insert(c) {
            out.push(k);
        }
    }
    out
}

/// Gauss-Jordan elimination over a ring, pivoting only on units.
///
/// Used for exact solves over Laurent polynomials where every needed pivot
/// is a monomial.  Rows are kept fully reduced so reduction is a single
/// pass over the pivot columns.
#[derive(Clone, Debug)]
pub struct UnitEchelon<K, R> {
    rows: BTreeMap<K, (BTreeMap<K, R>, Vec<R>)>,
    inserted: usize,
}

impl<K: Ord + Clone, R: Ring> Default for UnitEchelon<K, R> {
    fn default() -> Self {
        UnitEchelon {
            rows: BTreeMap::new(),
            inserted: 0,
        }
    }
}

fn map_axpy<K: Ord + Clone, R: Ring>(y: &mut BTreeMap<K, R>, x: &BTreeMap<K, R>, c: &R) {
    for (k, v) in x {
        let t = v.mul_ref(c);
        let entry = y.entry(k.clone()).or_insert_with(R::zero);
        entry.add_assign_ref(&t);
        if entry.is_zero() {
            y.remove(k);
        }
    }
}

fn vec_axpy<R: Ring>(y: &mut Vec<R>, x: &[R], c: &R) {
    if y.len() < x.len() {
        y.resize(x.len(), R::zero());
    }
    for (i, v) in x.iter().enumerate() {
        y[i].add_mul_assign(v, c);
    }
}

impl<K: Ord + Clone, R: Ring> UnitEchelon<K, R> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &BTreeMap<K, R>) -> (BTreeMap<K, R>, Vec<R>) {
        let mut v = v.clone();
        let mut coeffs = vec![R::zero(); self.inserted];
        for (pivot, (row, combo)) in &self.rows {
            if let Some(c) = v.get(pivot).cloned() {
                map_axpy(&mut v, row, &(-c.clone()));
                vec_axpy(&mut coeffs, combo, &c);
            }
        }
        (v, coeffs)
    }

    /// Inserts a vector.  Returns false when the reduced vector is nonzero
    /// but has no unit entry to pivot on; the vector is then dropped.
    pub fn insert(&mut self, v: &BTreeMap<K, R>) -> bool {
        let k = self.inserted;
        let (res, coeffs) = self.reduce(v);
        let mut combo: Vec<R> = coeffs.into_iter().map(|c| -c).collect();
        combo.resize(k + 1, R::zero());
        combo[k] = R::one();
        if res.is_empty() {
            self.inserted += 1;
            return true;
        }
        let Some((pivot, inv)) = res.iter().find_map(|(col, c)| c.try_inverse().map(|i| (col.clone(), i))) else {
            return false;
        };
        self.inserted += 1;
        let row: BTreeMap<K, R> = res.iter().map(|(c, x)| (c.clone(), x.mul_ref(&inv))).collect();
        let combo: Vec<R> = combo.iter().map(|x| x.mul_ref(&inv)).collect();
        for (other, ocombo) in self.rows.values_mut() {
            if let Some(c) = other.get(&pivot).cloned() {
                map_axpy(other, &row, &(-c.clone()));
                vec_axpy(ocombo, &combo, &(-c));
            }
        }
        self.rows.insert(pivot, (row, combo));
        true
    }

    /// Coefficients expressing `v` in the inserted vectors, if it lies in
    /// their span as certified by unit pivots.
    pub fn solve(&self, v: &BTreeMap<K, R>) -> Option<Vec<R>> {
        let (res, coeffs) = self.reduce(v);
        res.is_empty().then_some(coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rat, ratio};
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn v(entries: &[i64]) -> SparseVec<BigRational> {
        entries
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, &x)| (i, rat(x)))
            .collect()
    }

    #[test]
    fn span_examples() {
        assert_eq!(span_basis(&[v(&[1, 0]), v(&[0, 1]), v(&[1, 1])]).rank(), 2);
        assert_eq!(span_basis::<BigRational>(&[]).rank(), 0);
        assert_eq!(span_basis(&[v(&[2, 4]), v(&[1, 2])]).rank(), 1);
    }

    #[test]
    fn membership_examples() {
        let b = span_basis(&[v(&[1, 0]), v(&[0, 1])]);
        assert_eq!(membership(&v(&[1, 1]), &b), Some(v(&[1, 1])));
        let b = span_basis(&[v(&[1, 0, 0])]);
        assert_eq!(membership(&v(&[0, 0, 1]), &b), None);
        let w = v(&[3, -1, 2]);
        let b = span_basis(&[w.clone()]);
        assert_eq!(membership(&w, &b), Some(v(&[1])));
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel(&[v(&[1, 0]), v(&[0, 1])]).is_empty());
        assert_eq!(kernel(&[v(&[]), v(&[]), v(&[])]).len(), 3);
        let k = kernel(&[v(&[1, 2]), v(&[2, 4])]);
        assert_eq!(k, vec![v(&[-2, 1])]);
    }

    #[test]
    fn pivot_set_is_order_independent() {
        let a = [v(&[0, 1, 1]), v(&[1, 1, 0]), v(&[1, 2, 1])];
        let mut e1 = Echelon::new(false);
        let mut e2 = Echelon::new(false);
        for x in &a {
            e1.insert(x);
        }
        for x in a.iter().rev() {
            e2.insert(x);
        }
        assert_eq!(e1.pivots().collect::<Vec<_>>(), e2.pivots().collect::<Vec<_>>());
    }

    #[test]
    fn unit_echelon_solves_with_unit_pivots() {
        let mut e: UnitEchelon<usize, BigRational> = UnitEchelon::new();
        assert!(e.insert(&BTreeMap::from([(0, rat(2)), (1, rat(1))])));
        assert!(e.insert(&BTreeMap::from([(1, rat(3)), (2, rat(1))])));
        let target = BTreeMap::from([(0, rat(2)), (1, rat(4)), (2, rat(1))]);
        assert_eq!(e.solve(&target), Some(vec![rat(1), rat(1)]));
        assert_eq!(e.solve(&BTreeMap::from([(2, ratio(1, 2))])).map(|c| c.len()), None);
    }

    fn arb_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..4, c), r))
    }

    fn dense_rank(m: &[Vec<i64>]) -> usize {
        let mut a: Vec<Vec<BigRational>> = m.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
        let cols = a.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..a.len()).find(|&i| a[i][c] != rat(0)) else { continue };
            a.swap(rank, p);
            for i in 0..a.len() {
                if i != rank && a[i][c] != rat(0) {
                    let f = &a[i][c] / &a[rank][c];
                    let pivot_row = a[rank].clone();
                    for (x, y) in a[i].iter_mut().zip(pivot_row) {
                        *x -= &f * y;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    proptest! {
        #[test]
        fn rank_plus_nullity(m in arb_matrix()) {
            let cols: Vec<SparseVec<BigRational>> = m.iter().map(|r| v(r)).collect();
            let ker = kernel(&cols);
            prop_assert_eq!(span_basis(&cols).rank() + ker.len(), cols.len());
            for k in &ker {
                let mut acc = SparseVec::new();
                for (&j, c) in k {
                    axpy(&mut acc, &cols[j], c);
                }
                prop_assert!(acc.is_empty());
            }
        }

        #[test]
        fn membership_matches_dense_rank(m in arb_matrix(), extra in prop::collection::vec(-3i64..4, 5)) {
            let cols: Vec<SparseVec<BigRational>> = m.iter().map(|r| v(r)).collect();
            let width = m[0].len();
            let target: Vec<i64> = extra[..width].to_vec();
            let b = span_basis(&cols);
            let mut with = m.clone();
            with.push(target.clone());
            let brute = dense_rank(&with) == dense_rank(&m);
            let got = membership(&v(&target), &b);
            prop_assert_eq!(got.is_some(), brute);
            if let Some(coeffs) = got {
                let mut acc = SparseVec::new();
                for (&j, c) in &coeffs {
                    axpy(&mut acc, &cols[j], c);
                }
                prop_assert_eq!(acc, v(&target));
            }
        }
    }
}
