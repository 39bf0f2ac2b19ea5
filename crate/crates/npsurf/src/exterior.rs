//! Ordered bases of exterior powers.

use std::collections::BTreeMap;

/// The lexicographically ordered basis of the p-th exterior power of an
/// n-dimensional space: all strictly increasing p-element subsets of 0..n.
/// This order is contractual; every Koszul matrix is indexed by it.
#[derive(Clone, Debug)]
pub struct ExteriorIndex {
    n: usize,
    p: usize,
    subsets: Vec<Vec<usize>>,
    position: BTreeMap<Vec<usize>, usize>,
}

impl ExteriorIndex {
    /// For p > n the basis is empty (the exterior power vanishes).
    pub fn new(n: usize, p: usize) -> Self {
        let mut subsets = Vec::new();
        if p == 0 {
            subsets.push(Vec::new());
        } else if p <= n {
            let mut current: Vec<usize> = (0..p).collect();
            loop {
                subsets.push(current.clone());
                // rightmost position that can still be incremented
                let mut i = p;
                while i > 0 && current[i - 1] == n - (p - i) - 1 {
                    i -= 1;
                }
                if i == 0 {
                    break;
                }
                current[i - 1] += 1;
                for j in i..p {
                    current[j] = current[j - 1] + 1;
                }
            }
        }
        let position = subsets
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        ExteriorIndex {
            n,
            p,
            subsets,
            position,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    pub fn subset(&self, index: usize) -> &[usize] {
        &self.subsets[index]
    }

    pub fn index_of(&self, subset: &[usize]) -> Option<usize> {
        self.position.get(subset).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.subsets.iter()
    }
}

/// Binomial coefficient in machine integers; panics on overflow, which at the
/// exterior-basis sizes used here cannot occur.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    usize::try_from(acc).expect("binomial overflow")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_3_1() {
        let b = ExteriorIndex::new(3, 1);
        let got: Vec<_> = b.iter().cloned().collect();
        assert_eq!(got, vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn basis_3_2() {
        let b = ExteriorIndex::new(3, 2);
        let got: Vec<_> = b.iter().cloned().collect();
        assert_eq!(got, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(b.index_of(&[0, 2]), Some(1));
    }

    #[test]
    fn basis_4_0() {
        let b = ExteriorIndex::new(4, 0);
        assert_eq!(b.len(), 1);
        assert!(b.subset(0).is_empty());
    }

    #[test]
    fn basis_p_exceeds_n() {
        assert_eq!(ExteriorIndex::new(3, 4).len(), 0);
    }

    #[test]
    fn sizes_match_binomial() {
        for n in 0..=7 {
            for p in 0..=n + 2 {
                assert_eq!(ExteriorIndex::new(n, p).len(), binomial(n, p));
            }
        }
    }

    #[test]
    fn binomial_basics() {
        assert_eq!(binomial(6, 2), 15);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(4, 5), 0);
    }
}
