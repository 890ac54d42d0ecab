//! Library results compared against brute force computed straight from the
//! definitions, with no use of the library's own structural shortcuts.

use std::collections::BTreeSet;

use num_rational::Ratio;
use statone_core::hom::enumerate_state_homs;
use statone_core::state_ops::{enumerate_state_morphism_operators, enumerate_state_operators_table};
use statone_core::stone::{identify_ultrafilter, phi_object, Ultrafilter};
use statone_core::{ChainSignature, MvElement, ProductMvAlgebra, StateAlgebra, TableMvAlgebra};

/// A chain product written as plain tables: element i has numerators given
/// by the mixed-radix digits of i.
struct Oracle {
    orders: Vec<u32>,
    elems: Vec<Vec<u32>>,
}

impl Oracle {
    fn new(orders: &[u32]) -> Self {
        let mut elems = vec![vec![]];
        for &n in orders {
            elems = elems
                .into_iter()
                .flat_map(|e| {
                    (0..=n).map(move |x| {
                        let mut e = e.clone();
                        e.push(x);
                        e
                    })
                })
                .collect();
        }
        Oracle {
            orders: orders.to_vec(),
            elems,
        }
    }

    fn idx(&self, v: &[u32]) -> usize {
        self.elems.iter().position(|e| e == v).unwrap()
    }

    fn oplus(&self, x: usize, y: usize) -> usize {
        let v: Vec<u32> = (0..self.orders.len())
            .map(|j| (self.elems[x][j] + self.elems[y][j]).min(self.orders[j]))
            .collect();
        self.idx(&v)
    }

    fn star(&self, x: usize) -> usize {
        let v: Vec<u32> = (0..self.orders.len())
            .map(|j| self.orders[j] - self.elems[x][j])
            .collect();
        self.idx(&v)
    }

    fn odot(&self, x: usize, y: usize) -> usize {
        self.star(self.oplus(self.star(x), self.star(y)))
    }

    fn zero(&self) -> usize {
        self.idx(&vec![0; self.orders.len()])
    }

    fn leq(&self, x: usize, y: usize) -> bool {
        (0..self.orders.len()).all(|j| self.elems[x][j] <= self.elems[y][j])
    }

    fn meet(&self, x: usize, y: usize) -> usize {
        self.odot(x, self.oplus(self.star(x), y))
    }

    fn is_state_operator(&self, t: &[usize]) -> bool {
        let n = self.elems.len();
        if t[self.zero()] != self.zero() {
            return false;
        }
        for x in 0..n {
            if t[self.star(x)] != self.star(t[x]) {
                return false;
            }
            for y in 0..n {
                let inner = self.odot(self.star(x), self.oplus(x, y));
                if t[self.oplus(x, y)] != self.oplus(t[x], t[inner]) {
                    return false;
                }
                let s = self.oplus(t[x], t[y]);
                if t[s] != s {
                    return false;
                }
            }
        }
        true
    }

    fn is_state_morphism(&self, t: &[usize]) -> bool {
        self.is_state_operator(t)
            && (0..self.elems.len())
                .all(|x| (0..self.elems.len()).all(|y| t[self.oplus(x, y)] == self.oplus(t[x], t[y])))
    }

    fn all_maps(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        let n = self.elems.len();
        (0..n.pow(n as u32)).map(move |mut code| {
            (0..n)
                .map(|_| {
                    let d = code % n;
                    code /= n;
                    d
                })
                .collect()
        })
    }

    fn ultrafilters(&self) -> Vec<BTreeSet<usize>> {
        let n = self.elems.len();
        let one = self.star(self.zero());
        (0u64..1 << n)
            .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect::<BTreeSet<usize>>())
            .filter(|f| {
                !f.contains(&self.zero())
                    && f.contains(&one)
                    && f.iter().all(|&a| (0..n).all(|b| !self.leq(a, b) || f.contains(&b)))
                    && f.iter().all(|&a| f.iter().all(|&b| f.contains(&self.meet(a, b))))
                    && (0..n).all(|a| f.contains(&a) || f.contains(&self.star(a)))
            })
            .collect()
    }
}

fn table_of(o: &Oracle) -> TableMvAlgebra {
    let n = o.elems.len();
    let oplus = (0..n).map(|x| (0..n).map(|y| o.oplus(x, y)).collect()).collect();
    let star = (0..n).map(|x| o.star(x)).collect();
    TableMvAlgebra::new(oplus, star, o.zero()).unwrap()
}

fn sigma_table(o: &Oracle, sigma: &[usize]) -> Vec<usize> {
    (0..o.elems.len())
        .map(|x| {
            let v: Vec<u32> = (0..o.orders.len())
                .map(|j| o.elems[x][sigma[j]] * o.orders[j] / o.orders[sigma[j]])
                .collect();
            o.idx(&v)
        })
        .collect()
}

#[test]
fn state_operators_on_small_chains_match_brute_force() {
    for orders in [vec![1], vec![2], vec![3], vec![1, 1], vec![1, 2], vec![1, 3]] {
        let o = Oracle::new(&orders);
        let brute: BTreeSet<Vec<usize>> = o.all_maps().filter(|t| o.is_state_operator(t)).collect();
        let lib: BTreeSet<Vec<usize>> = enumerate_state_operators_table(&table_of(&o), 10)
            .unwrap()
            .into_iter()
            .map(|t| t.values().to_vec())
            .collect();
        assert_eq!(brute, lib, "orders {orders:?}");
        let morph: BTreeSet<Vec<usize>> = brute.iter().filter(|t| o.is_state_morphism(t)).cloned().collect();
        let structural: BTreeSet<Vec<usize>> =
            enumerate_state_morphism_operators(&ChainSignature::new(orders.clone()).unwrap())
                .iter()
                .map(|s| sigma_table(&o, s.sigma()))
                .collect();
        assert_eq!(morph, structural, "orders {orders:?}");
    }
}

#[test]
fn single_nontrivial_chains_carry_only_the_identity() {
    for n in 1..=4 {
        let o = Oracle::new(&[n]);
        let found: Vec<Vec<usize>> = o.all_maps().filter(|t| o.is_state_operator(t)).collect();
        assert_eq!(found, vec![(0..=n as usize).collect::<Vec<_>>()]);
    }
}

#[test]
fn ultrafilters_are_principal_at_atoms() {
    for k in 1..=3 {
        let o = Oracle::new(&vec![1; k]);
        let found = o.ultrafilters();
        assert_eq!(found.len(), k);
        let alg = ProductMvAlgebra::boolean(k).unwrap();
        for f in &found {
            let uf = identify_ultrafilter(&alg, |a: &MvElement| f.contains(&o.idx(a.numerators()))).unwrap();
            let principal: BTreeSet<usize> = (0..o.elems.len()).filter(|&x| o.elems[x][uf.atom()] == 1).collect();
            assert_eq!(&principal, f);
            assert_eq!(uf, Ultrafilter::principal(uf.atom()));
        }
    }
}

#[test]
fn induced_g_is_preimage_of_ultrafilters() {
    for k in 1..=3 {
        let o = Oracle::new(&vec![1; k]);
        let ufs = o.ultrafilters();
        for spec in enumerate_state_morphism_operators(&ChainSignature::boolean(k).unwrap()) {
            let t = sigma_table(&o, spec.sigma());
            let obj = StateAlgebra::from_parts(vec![1; k], spec.sigma().to_vec()).unwrap();
            let pair = phi_object(&obj).unwrap();
            for f in &ufs {
                let pre: BTreeSet<usize> = (0..o.elems.len()).filter(|&x| f.contains(&t[x])).collect();
                let atom_of = |s: &BTreeSet<usize>| (0..k).find(|&j| s.contains(&o.idx(&unit(k, j)))).unwrap();
                assert!(ufs.contains(&pre));
                assert_eq!(pair.g()[atom_of(f)], atom_of(&pre));
            }
        }
    }
}

fn unit(k: usize, j: usize) -> Vec<u32> {
    (0..k).map(|i| u32::from(i == j)).collect()
}

#[test]
fn state_morphism_homs_match_brute_force() {
    let objs = [
        (vec![1, 1], vec![0, 0]),
        (vec![1, 1], vec![0, 1]),
        (vec![1, 1, 1], vec![0, 0, 2]),
        (vec![1], vec![0]),
    ];
    for (oa, sa) in &objs {
        for (ob, sb) in &objs {
            let a = Oracle::new(oa);
            let b = Oracle::new(ob);
            let ta = sigma_table(&a, sa);
            let tb = sigma_table(&b, sb);
            let na = a.elems.len();
            let nb = b.elems.len();
            let brute = (0..nb.pow(na as u32))
                .filter(|&code| {
                    let h: Vec<usize> = (0..na).map(|i| code / nb.pow(i as u32) % nb).collect();
                    h[a.zero()] == b.zero()
                        && (0..na).all(|x| h[a.star(x)] == b.star(h[x]) && h[ta[x]] == tb[h[x]])
                        && (0..na).all(|x| (0..na).all(|y| h[a.oplus(x, y)] == b.oplus(h[x], h[y])))
                })
                .count();
            let sa_obj = StateAlgebra::from_parts(oa.clone(), sa.clone()).unwrap();
            let sb_obj = StateAlgebra::from_parts(ob.clone(), sb.clone()).unwrap();
            assert_eq!(enumerate_state_homs(&sa_obj, &sb_obj).len(), brute, "{sa:?} -> {sb:?}");
        }
    }
}

#[test]
fn states_are_additive_on_orthogonal_pairs() {
    use statone_core::simplex::Barycentric;
    let alg = ProductMvAlgebra::from_orders(vec![2, 3]).unwrap();
    let s = Barycentric::new(vec![Ratio::new(1, 3), Ratio::new(2, 3)]).unwrap();
    for a in alg.elements() {
        for b in alg.elements() {
            if alg.odot(&a, &b).unwrap() == alg.zero() {
                let lhs = s.evaluate(&alg, &alg.oplus(&a, &b).unwrap()).unwrap();
                let rhs = s.evaluate(&alg, &a).unwrap() + s.evaluate(&alg, &b).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
        let direct = Ratio::new(i64::from(a.get(0)), 2) / 3 + Ratio::new(i64::from(a.get(1)), 3) * 2 / 3;
        assert_eq!(s.evaluate(&alg, &a).unwrap(), direct);
    }
}
