//! Evaluator for composites of splitting and fusion basis maps against an
//! F-symbol table.
//!
//! A `TreeVector` is a morphism from one simple label into a tensor word of
//! labels, expanded over the right-nested splitting basis. A basis tree for
//! leaves [x_0, ..., x_{n-1}] is recorded by its edge chain
//! [t_0, ..., t_{n-1}]: t_0 is the root, node p splits t_p into
//! x_p tensor t_{p+1}, and t_{n-1} equals the last leaf. Every operation
//! (splitting a leaf, inserting or removing a unit strand, fusing adjacent
//! leaves) rewrites the chain coefficients with at most one F-matrix per
//! component, so longer composites evaluate exactly by chaining the moves.

use crate::category_data::{invert_square, FSymbolTable};
use crate::fusion_ring::Label;
use crate::scalars::Scalar;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct TreeVector {
    root: Label,
    leaves: Vec<Label>,
    comps: BTreeMap<Vec<Label>, Scalar>,
}

impl TreeVector {
    /// The identity of a simple label, as the one-leaf vector.
    pub fn identity(table: &FSymbolTable, c: Label) -> TreeVector {
        let mut comps = BTreeMap::new();
        comps.insert(vec![c], Scalar::one(table.field()));
        TreeVector { root: c, leaves: vec![c], comps }
    }

    /// The canonical vector in Hom(unit, empty word).
    pub fn empty(table: &FSymbolTable) -> TreeVector {
        let mut comps = BTreeMap::new();
        comps.insert(Vec::new(), Scalar::one(table.field()));
        TreeVector { root: table.ring().unit(), leaves: Vec::new(), comps }
    }

    #[cfg(test)]
    pub fn leaves(&self) -> &[Label] {
        &self.leaves
    }

    pub fn scale(&mut self, s: &Scalar) {
        for v in self.comps.values_mut() {
            *v = &*v * s;
        }
        self.prune();
    }

    fn prune(&mut self) {
        self.comps.retain(|_, v| !v.is_zero());
    }

    fn push(comps: &mut BTreeMap<Vec<Label>, Scalar>, key: Vec<Label>, val: Scalar) {
        if val.is_zero() {
            return;
        }
        match comps.get_mut(&key) {
            Some(slot) => {
                *slot = &*slot + &val;
                if slot.is_zero() {
                    comps.remove(&key);
                }
            }
            None => {
                comps.insert(key, val);
            }
        }
    }

    /// Applies the splitting of leaf `pos` into (a, b), in place of that leaf.
    pub fn expand_leaf(&self, table: &FSymbolTable, pos: usize, a: Label, b: Label) -> TreeVector {
        let n = self.leaves.len();
        assert!(pos < n, "expand position out of range");
        let m = self.leaves[pos];
        assert!(table.ring().admissible(a, b, m), "inadmissible splitting");
        let mut leaves = self.leaves.clone();
        leaves.splice(pos..=pos, [a, b]);
        let mut comps = BTreeMap::new();
        if pos == n - 1 {
            // the last edge becomes an internal node, no F-move needed
            for (chain, v) in &self.comps {
                let mut c = chain.clone();
                c.push(b);
                Self::push(&mut comps, c, v.clone());
            }
        } else {
            let ring = table.ring();
            for (chain, v) in &self.comps {
                let d = chain[pos];
                let cn = chain[pos + 1];
                for g in 0..ring.rank() {
                    if !(ring.n(b, cn, g) && ring.n(a, g, d)) {
                        continue;
                    }
                    let coeff = table.f_entry(a, b, cn, d, m, g);
                    let mut c = chain.clone();
                    c.insert(pos + 1, g);
                    Self::push(&mut comps, c, v * coeff);
                }
            }
        }
        TreeVector { root: self.root, leaves, comps }
    }

    /// Inserts a unit strand at `pos` (0 through leaf count inclusive).
    pub fn insert_unit_leaf(&self, table: &FSymbolTable, pos: usize) -> TreeVector {
        let n = self.leaves.len();
        assert!(pos <= n, "insert position out of range");
        let u = table.ring().unit();
        let mut leaves = self.leaves.clone();
        leaves.insert(pos, u);
        let mut comps = BTreeMap::new();
        for (chain, v) in &self.comps {
            let mut c = chain.clone();
            if pos == n {
                c.push(u);
            } else {
                let dup = c[pos];
                c.insert(pos + 1, dup);
            }
            Self::push(&mut comps, c, v.clone());
        }
        TreeVector { root: self.root, leaves, comps }
    }

    /// Removes the unit strand at `pos`.
    pub fn remove_unit_leaf(&self, table: &FSymbolTable, pos: usize) -> TreeVector {
        let n = self.leaves.len();
        assert!(pos < n, "remove position out of range");
        assert_eq!(self.leaves[pos], table.ring().unit(), "leaf is not the unit");
        let mut leaves = self.leaves.clone();
        leaves.remove(pos);
        let mut comps = BTreeMap::new();
        for (chain, v) in &self.comps {
            let mut c = chain.clone();
            if pos == n - 1 {
                c.pop();
            } else {
                c.remove(pos + 1);
            }
            Self::push(&mut comps, c, v.clone());
        }
        TreeVector { root: self.root, leaves, comps }
    }

    /// Fuses the adjacent leaves at `pos` and `pos + 1` into channel `z`.
    pub fn fuse_leaves(&self, table: &FSymbolTable, pos: usize, z: Label) -> TreeVector {
        let n = self.leaves.len();
        assert!(pos + 1 < n, "fuse position out of range");
        let x = self.leaves[pos];
        let y = self.leaves[pos + 1];
        assert!(table.ring().admissible(x, y, z), "inadmissible fusion channel");
        let mut leaves = self.leaves.clone();
        leaves.splice(pos..=pos + 1, [z]);
        let mut comps = BTreeMap::new();
        if pos == n - 2 {
            for (chain, v) in &self.comps {
                if chain[pos] != z {
                    continue;
                }
                let c = chain[..n - 1].to_vec();
                Self::push(&mut comps, c, v.clone());
            }
        } else {
            for (chain, v) in &self.comps {
                let coeff = f_inverse_entry_or_zero(
                    table,
                    x,
                    y,
                    chain[pos + 2],
                    chain[pos],
                    chain[pos + 1],
                    z,
                );
                let Some(coeff) = coeff else { continue };
                let mut c = chain.clone();
                c.remove(pos + 1);
                Self::push(&mut comps, c, v * &coeff);
            }
        }
        TreeVector { root: self.root, leaves, comps }
    }

    /// Coefficient on one basis chain.
    pub fn coefficient(&self, table: &FSymbolTable, chain: &[Label]) -> Scalar {
        self.comps
            .get(chain)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(table.field()))
    }

    /// The scalar of a vector that has been reduced back to a single leaf
    /// equal to its root, or to the empty word.
    pub fn into_scalar(self, table: &FSymbolTable) -> Scalar {
        match self.leaves.len() {
            0 => self.coefficient(table, &[]),
            1 => {
                assert_eq!(self.leaves[0], self.root, "leaf does not match root");
                self.coefficient(table, &[self.root])
            }
            _ => panic!("vector still has {} leaves", self.leaves.len()),
        }
    }
}

/// Entry of the inverse F-block, or `None` when the requested indices fall
/// outside the admissible block.
fn f_inverse_entry_or_zero(
    table: &FSymbolTable,
    a: Label,
    b: Label,
    c: Label,
    d: Label,
    f: Label,
    e: Label,
) -> Option<Scalar> {
    let (es, fs, m) = table.fmatrix(a, b, c, d);
    let fi = fs.iter().position(|&x| x == f)?;
    let ei = es.iter().position(|&x| x == e)?;
    let inv = invert_square(&m, table.field()).expect("blocks are invertible by construction");
    Some(inv[fi][ei].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;

    #[test]
    fn left_nested_split_caps_back_through_its_own_channel() {
        // u = (split tau tau->tau tensor id) after (split tau->tau tau),
        // expanded in the right-nested basis. Capping the left pair picks
        // out exactly the channel it was split through: the F-inverse move
        // composed with the expansion F-move must collapse to a delta.
        let t = examples::fibonacci().unwrap();
        let tau = 1;
        let u = TreeVector::identity(&t, tau)
            .expand_leaf(&t, 0, tau, tau)
            .expand_leaf(&t, 0, tau, tau);
        assert_eq!(u.leaves(), &[tau, tau, tau]);

        let wrong_channel = u.fuse_leaves(&t, 0, 0);
        assert!(wrong_channel.coefficient(&t, &[tau, 0]).is_zero());

        let right_channel = u.fuse_leaves(&t, 0, tau);
        assert!(right_channel.coefficient(&t, &[tau, tau]).is_one());
        assert!(right_channel.fuse_leaves(&t, 0, tau).into_scalar(&t).is_one());
    }

    #[test]
    fn right_nested_split_caps_back_through_its_own_channel() {
        let t = examples::fibonacci().unwrap();
        let tau = 1;
        let u = TreeVector::identity(&t, tau)
            .expand_leaf(&t, 0, tau, tau)
            .expand_leaf(&t, 1, tau, tau);
        assert!(u.coefficient(&t, &[tau, tau, tau]).is_one());

        let wrong = u.fuse_leaves(&t, 1, 0);
        assert!(wrong.coefficient(&t, &[tau, 0]).is_zero());

        let right = u.fuse_leaves(&t, 1, tau);
        assert!(right.fuse_leaves(&t, 0, tau).into_scalar(&t).is_one());
    }

    #[test]
    fn unit_strand_round_trip() {
        let t = examples::ising().unwrap();
        let sigma = 2;
        let v = TreeVector::identity(&t, sigma).expand_leaf(&t, 0, sigma, 1);
        for pos in 0..=2 {
            let round = v
                .insert_unit_leaf(&t, pos)
                .remove_unit_leaf(&t, pos);
            assert_eq!(round, v);
        }
    }

    #[test]
    fn empty_word_grows_a_dual_pair() {
        let t = examples::ising().unwrap();
        let sigma = 2;
        let v = TreeVector::empty(&t)
            .insert_unit_leaf(&t, 0)
            .expand_leaf(&t, 0, sigma, sigma);
        assert_eq!(v.leaves(), &[sigma, sigma]);
        assert!(v.coefficient(&t, &[0, sigma]).is_one());
        let back = v.fuse_leaves(&t, 0, 0).remove_unit_leaf(&t, 0);
        assert!(back.into_scalar(&t).is_one());
    }
}
