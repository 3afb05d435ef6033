use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Exhaustive associativity check up to this order; sampled above it.
const EXHAUSTIVE_ORDER: usize = 64;
const ASSOC_SAMPLES: usize = 200_000;

/// A finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    order: usize,
    product: Vec<usize>,
    inverse: Vec<usize>,
    identity: usize,
}

impl GroupTable {
    /// Validates a row-major table (`product[a][b] = a·b`).
    pub fn from_table(product: Vec<Vec<usize>>) -> Result<GroupTable> {
        let n = product.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        for (a, row) in product.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!("row {a} has {} entries", row.len())));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= n) {
                return Err(Error::InvalidGroup(format!("entry {x} out of range")));
            }
        }
        let flat: Vec<usize> = product.into_iter().flatten().collect();
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| flat[e * n + a] == a && flat[a * n + e] == a))
            .ok_or_else(|| Error::InvalidGroup("no identity".into()))?;
        let mut inverse = vec![0; n];
        for a in 0..n {
            inverse[a] = (0..n)
                .find(|&b| flat[a * n + b] == identity && flat[b * n + a] == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {a} has no inverse")))?;
        }
        let t = GroupTable {
            order: n,
            product: flat,
            inverse,
            identity,
        };
        t.check_associative()?;
        Ok(t)
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.order;
        let bad = |a: usize, b: usize, c: usize| self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c));
        let fail = |a, b, c| Err(Error::InvalidGroup(format!("not associative at ({a},{b},{c})")));
        if n <= EXHAUSTIVE_ORDER {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if bad(a, b, c) {
                            return fail(a, b, c);
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..ASSOC_SAMPLES {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if bad(a, b, c) {
                    return fail(a, b, c);
                }
            }
        }
        Ok(())
    }

    fn from_fn(order: usize, identity: usize, mul: impl Fn(usize, usize) -> usize) -> GroupTable {
        let mut product = vec![0; order * order];
        for a in 0..order {
            for b in 0..order {
                product[a * order + b] = mul(a, b);
            }
        }
        let inverse = (0..order)
            .map(|a| (0..order).find(|&b| product[a * order + b] == identity).expect("group"))
            .collect();
        GroupTable {
            order,
            product,
            inverse,
            identity,
        }
    }

    /// ℤ_n with element `i` the residue `i`.
    pub fn cyclic(n: usize) -> Result<GroupTable> {
        if n == 0 {
            return Err(Error::InvalidGroup("order must be positive".into()));
        }
        Ok(Self::from_fn(n, 0, |a, b| (a + b) % n))
    }

    /// Dihedral group of order 2n: element `e*n + i` is r^i s^e.
    pub fn dihedral(n: usize) -> Result<GroupTable> {
        if n < 2 {
            return Err(Error::InvalidGroup("dihedral group needs n >= 2".into()));
        }
        Ok(Self::from_fn(2 * n, 0, |x, y| {
            let (i, a) = (x % n, x / n);
            let (j, b) = (y % n, y / n);
            // (r^i s^a)(r^j s^b) = r^(i ± j) s^(a+b)
            let k = if a == 0 { (i + j) % n } else { (i + n - j) % n };
            ((a + b) % 2) * n + k
        }))
    }

    /// S_k on lexicographically ordered permutations; composition is
    /// `(p·q)(x) = p(q(x))`.
    pub fn symmetric(k: usize) -> Result<GroupTable> {
        if k == 0 || k > 6 {
            return Err(Error::InvalidGroup("symmetric group supported for 1 <= k <= 6".into()));
        }
        let perms = Self::permutations(k);
        let index: std::collections::HashMap<Vec<usize>, usize> =
            perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        Ok(Self::from_fn(perms.len(), 0, |a, b| {
            let c: Vec<usize> = (0..k).map(|x| perms[a][perms[b][x]]).collect();
            index[&c]
        }))
    }

    /// Permutations of `0..k` in lexicographic order.
    pub fn permutations(k: usize) -> Vec<Vec<usize>> {
        let mut cur: Vec<usize> = (0..k).collect();
        let mut out = vec![cur.clone()];
        loop {
            let Some(i) = (1..k).rev().find(|&i| cur[i - 1] < cur[i]) else {
                return out;
            };
            let j = (i..k).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor");
            cur.swap(i - 1, j);
            cur[i..].reverse();
            out.push(cur.clone());
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.product[a * self.order + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn elements_of_order(&self, k: usize) -> Vec<usize> {
        (0..self.order).filter(|&a| self.element_order(a) == k).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The subgroup generated by `gens`, as a membership mask.
    pub fn generated(&self, gens: &[usize]) -> Vec<bool> {
        let mut inside = vec![false; self.order];
        inside[self.identity] = true;
        let mut stack = vec![self.identity];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    stack.push(y);
                }
            }
        }
        inside
    }

    /// A small generating set, chosen greedily in id order.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut inside = self.generated(&gens);
        for a in 0..self.order {
            if !inside[a] {
                gens.push(a);
                inside = self.generated(&gens);
            }
        }
        gens
    }

    pub(crate) fn check_element(&self, a: usize) -> Result<()> {
        if a < self.order {
            Ok(())
        } else {
            Err(Error::InvalidGroup(format!("element {a} out of range 0..{}", self.order)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_tables_are_groups() {
        for t in [
            GroupTable::cyclic(7).unwrap(),
            GroupTable::dihedral(5).unwrap(),
            GroupTable::symmetric(3).unwrap(),
        ] {
            let rows: Vec<Vec<usize>> = (0..t.order())
                .map(|a| (0..t.order()).map(|b| t.mul(a, b)).collect())
                .collect();
            assert_eq!(GroupTable::from_table(rows).unwrap(), t);
        }
    }

    #[test]
    fn symmetric_group_facts() {
        let s3 = GroupTable::symmetric(3).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert_eq!(s3.elements_of_order(2).len(), 3);
        assert_eq!(GroupTable::symmetric(5).unwrap().order(), 120);
    }

    #[test]
    fn rejects_non_groups() {
        assert!(GroupTable::from_table(vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(GroupTable::from_table(vec![vec![0, 2]]).is_err());
        // a Latin square with identity that is not associative
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(GroupTable::from_table(loop5).is_err());
    }

    #[test]
    fn generating_sets_generate() {
        let d6 = GroupTable::dihedral(6).unwrap();
        assert!(d6.generated(&d6.generating_set()).iter().all(|&x| x));
    }
}
