//! Generators and brute-force oracles shared by the integration suites.
//!
//! The oracles restate each definition as directly as possible and share no
//! code with the kernel beyond carriers and relations.
#![allow(dead_code)]

pub mod battery;

use std::sync::Arc;

use pfl_core::ftop::{AxiomSet, InductiveTopology, Preorder, SetPresentation};
use pfl_core::relcat::compose;
use pfl_core::{
    BasicPair, Carrier, FormulaBody, GeometricAxiom, GeometricTheory, Relation, Subset,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn carrier(name: &str, n: usize) -> Arc<Carrier> {
    Carrier::indexed(name, n).unwrap()
}

pub fn full(n: usize) -> u64 {
    if n == 0 {
        0
    } else {
        u64::MAX >> (64 - n)
    }
}

pub fn is_sub(a: u64, b: u64) -> bool {
    a & !b == 0
}

pub fn members(m: u64) -> Vec<usize> {
    (0..64).filter(|i| m & (1 << i) != 0).collect()
}

pub fn sorted(mut v: Vec<u64>) -> Vec<u64> {
    v.sort_unstable();
    v.dedup();
    v
}

// ---------------------------------------------------------------- random data

pub fn random_mask(rng: &mut Rng8, n: usize) -> u64 {
    rng.gen::<u64>() & full(n)
}

/// A mask where each bit is set with probability `p`.
pub fn sparse_mask(rng: &mut Rng8, n: usize, p: f64) -> u64 {
    (0..n)
        .filter(|_| rng.gen_bool(p))
        .fold(0, |m, i| m | (1 << i))
}

pub fn random_rules(rng: &mut Rng8, n: usize, max_rules: usize) -> Vec<(u64, u64)> {
    let k = rng.gen_range(0..=max_rules);
    (0..k)
        .map(|_| (random_mask(rng, n), random_mask(rng, n)))
        .collect()
}

pub fn random_relation(rng: &mut Rng8, src: &Arc<Carrier>, dst: &Arc<Carrier>, p: f64) -> Relation {
    let rows = (0..src.size())
        .map(|_| sparse_mask(rng, dst.size(), p))
        .collect();
    Relation::new(src, dst, rows).unwrap()
}

pub fn random_pair(rng: &mut Rng8, x: &Arc<Carrier>, s: &Arc<Carrier>, p: f64) -> BasicPair {
    BasicPair::new(random_relation(rng, x, s, p))
}

pub fn random_preorder(rng: &mut Rng8, c: &Arc<Carrier>, edges: usize) -> Preorder {
    let n = c.size();
    let pairs: Vec<(usize, usize)> = if n == 0 {
        Vec::new()
    } else {
        (0..edges)
            .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
            .collect()
    };
    Preorder::generated_by(c, pairs).unwrap()
}

pub fn random_axioms(rng: &mut Rng8, c: &Arc<Carrier>, max_per: usize) -> AxiomSet {
    let n = c.size();
    let covers = (0..n)
        .map(|_| {
            let k = rng.gen_range(0..=max_per);
            (0..k).map(|_| random_mask(rng, n)).collect()
        })
        .collect();
    AxiomSet::new(c, covers).unwrap()
}

pub fn random_topology(rng: &mut Rng8, c: &Arc<Carrier>, max_per: usize) -> InductiveTopology {
    let edges = rng.gen_range(0..=c.size() + 1);
    InductiveTopology::new(
        random_preorder(rng, c, edges),
        random_axioms(rng, c, max_per),
    )
    .unwrap()
}

/// A random body of the given nesting depth.
pub fn random_body(rng: &mut Rng8, n: usize, depth: usize) -> FormulaBody {
    if depth == 0 || n == 0 {
        return if n == 0 || rng.gen_bool(0.1) {
            if rng.gen_bool(0.5) {
                FormulaBody::truth()
            } else {
                FormulaBody::falsity()
            }
        } else {
            FormulaBody::Atom(rng.gen_range(0..n))
        };
    }
    let k = rng.gen_range(0..=3);
    let kids = (0..k).map(|_| random_body(rng, n, depth - 1)).collect();
    if rng.gen_bool(0.5) {
        FormulaBody::Or(kids)
    } else {
        FormulaBody::And(kids)
    }
}

pub fn random_rank1_theory(
    rng: &mut Rng8,
    c: &Arc<Carrier>,
    max_axioms: usize,
    max_disjuncts: usize,
) -> GeometricTheory {
    let n = c.size();
    let k = rng.gen_range(0..=max_axioms);
    let axioms = (0..k)
        .map(|_| {
            let premise = Subset::from_mask(c, random_mask(rng, n));
            let d = rng.gen_range(0..=max_disjuncts);
            let body = FormulaBody::disjunction_of((0..d).map(|_| random_mask(rng, n)));
            GeometricAxiom { premise, body }
        })
        .collect();
    GeometricTheory::new(c, axioms).unwrap()
}

// ---------------------------------------------------------------- enumeration

/// All multisets of `k` items from `0..m`, as non-decreasing index vectors.
pub fn multisets(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(m: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            go(m, k, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Every rule set over `n` elements with at most `max` rules drawn from
/// `pool` (as an unordered multiset of rules).
pub fn rule_sets_from(pool: &[(u64, u64)], max: usize) -> Vec<Vec<(u64, u64)>> {
    (0..=max)
        .flat_map(|k| multisets(pool.len(), k))
        .map(|idx| idx.into_iter().map(|i| pool[i]).collect())
        .collect()
}

pub fn all_rules(n: usize) -> Vec<(u64, u64)> {
    let p = 1u64 << n;
    (0..p).flat_map(|a| (0..p).map(move |b| (a, b))).collect()
}

/// Every preorder on `n` elements, as `up` masks (`up[a]` = elements above `a`).
pub fn all_preorders(n: usize) -> Vec<Vec<u64>> {
    let cells: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|(a, b)| a != b)
        .collect();
    let mut out = Vec::new();
    for pick in 0u64..(1 << cells.len()) {
        let mut up: Vec<u64> = (0..n).map(|a| 1 << a).collect();
        for (k, &(a, b)) in cells.iter().enumerate() {
            if pick & (1 << k) != 0 {
                up[a] |= 1 << b;
            }
        }
        let transitive = (0..n).all(|a| members(up[a]).iter().all(|&b| is_sub(up[b], up[a])));
        if transitive {
            out.push(up);
        }
    }
    out
}

pub fn preorder_from_up(c: &Arc<Carrier>, up: &[u64]) -> Preorder {
    Preorder::new(&Relation::new(c, c, up.to_vec()).unwrap()).unwrap()
}

/// All relations between carriers of the given sizes, as row vectors.
pub fn all_relations(n: usize, m: usize) -> Vec<Vec<u64>> {
    let cells = n * m;
    (0u64..(1 << cells))
        .map(|bits| (0..n).map(|x| (bits >> (x * m)) & full(m)).collect())
        .collect()
}

// ---------------------------------------------------------------- oracles

pub fn closed_oracle(n: usize, rules: &[(u64, u64)]) -> Vec<u64> {
    (0..1u64 << n)
        .filter(|&alpha| {
            rules.iter().all(|&(a, b)| {
                !(members(a).iter().all(|&x| alpha & (1 << x) != 0))
                    || members(b).iter().any(|&y| alpha & (1 << y) != 0)
            })
        })
        .collect()
}

pub fn biclosed_oracle(n: usize, rules: &[(u64, u64)]) -> Vec<u64> {
    (0..1u64 << n)
        .filter(|&alpha| {
            rules
                .iter()
                .all(|&(a, b)| (a & alpha != 0) == (b & alpha != 0))
        })
        .collect()
}

/// `α = ⋃{β ∈ G | β ⊆ α}` for every `α ∈ C`.
pub fn generates_oracle(g: &[u64], c: &[u64]) -> bool {
    c.iter().all(|&alpha| {
        g.iter()
            .filter(|&&b| is_sub(b, alpha))
            .fold(0, |m, &b| m | b)
            == alpha
    })
}

/// Every `σ ⊆ α` lies inside some `β ∈ G` with `β ⊆ α`.
pub fn strongly_generates_oracle(g: &[u64], c: &[u64]) -> bool {
    c.iter().all(|&alpha| {
        let mut sigma = alpha;
        loop {
            if !g.iter().any(|&b| is_sub(sigma, b) && is_sub(b, alpha)) {
                return false;
            }
            if sigma == 0 {
                return true;
            }
            sigma = (sigma - 1) & alpha;
        }
    })
}

/// Every subfamily of `c` that generates it.
pub fn generating_subfamilies(c: &[u64]) -> Vec<Vec<u64>> {
    (0u64..(1 << c.len()))
        .map(|pick| {
            (0..c.len())
                .filter(|i| pick & (1 << i) != 0)
                .map(|i| c[i])
                .collect::<Vec<_>>()
        })
        .filter(|g| generates_oracle(g, c))
        .collect()
}

pub fn relation_compose_oracle(g: &Relation, f: &Relation) -> Vec<u64> {
    (0..f.src().size())
        .map(|x| {
            (0..g.dst().size())
                .filter(|&z| (0..f.dst().size()).any(|y| f.contains(x, y) && g.contains(y, z)))
                .fold(0, |m, z| m | (1 << z))
        })
        .collect()
}

/// Image of `u` under `r`, by definition.
pub fn image_oracle(r: &Relation, u: u64) -> u64 {
    members(u).iter().fold(0, |m, &x| m | r.rows()[x])
}

/// `U ↓ V` for a basic pair, straight from `ext`.
pub fn pair_down(b: &BasicPair, u: u64, v: u64) -> u64 {
    let n = b.observables().size();
    let ext = |a: usize| {
        (0..b.points().size())
            .filter(|&x| b.forces().contains(x, a))
            .fold(0u64, |m, x| m | (1 << x))
    };
    let mut out = 0;
    for c in 0..n {
        let ok_u = members(u).iter().any(|&a| is_sub(ext(c), ext(a)));
        let ok_v = members(v).iter().any(|&a| is_sub(ext(c), ext(a)));
        if ok_u && ok_v {
            out |= 1 << c;
        }
    }
    out
}

pub fn ext_mask(b: &BasicPair, u: u64) -> u64 {
    (0..b.points().size())
        .filter(|&x| b.forces().rows()[x] & u != 0)
        .fold(0, |m, x| m | (1 << x))
}

/// `D` is convergent: `D ≬ ext S` and `x ⊩ a, y ⊩ b` in `D` give `D ≬ ext(a ↓ b)`.
pub fn convergent_oracle(b: &BasicPair, d: u64) -> bool {
    let all = full(b.observables().size());
    if ext_mask(b, all) & d == 0 {
        return false;
    }
    let pts = members(d);
    for &x in &pts {
        for &y in &pts {
            for a in members(b.forces().rows()[x]) {
                for c in members(b.forces().rows()[y]) {
                    if ext_mask(b, pair_down(b, 1 << a, 1 << c)) & d == 0 {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// `r ∘ s` image equality on a subset, i.e. `◇₂ r₁ D = ◇₂ r₂ D`.
pub fn trace_image(target: &BasicPair, r: &Relation, d: u64) -> u64 {
    let t = compose(target.forces(), r).unwrap();
    image_oracle(&t, d)
}

// ---------------------------------------------------------------- formal topology

/// The least cover relation, derived naively from the inference rules.
/// `table[U]` = `{a | a ⊲ U}`.
pub fn cover_oracle(up: &[u64], covers: &[Vec<u64>]) -> Vec<u64> {
    let n = up.len();
    let size = 1usize << n;
    let leq = |a: usize, b: usize| up[a] & (1 << b) != 0;
    let down_meet = |u: u64, v: u64| {
        (0..n)
            .filter(|&c| {
                members(u).iter().any(|&a| leq(c, a)) && members(v).iter().any(|&b| leq(c, b))
            })
            .fold(0u64, |m, c| m | (1 << c))
    };
    let mut t: Vec<u64> = vec![0; size];
    loop {
        let before = t.clone();
        for u in 0..size {
            for a in 0..n {
                let mut yes = t[u] & (1 << a) != 0;
                // reflexivity
                yes |= u & (1 << a) != 0;
                // axioms
                yes |= covers[a].iter().any(|&m| m as usize == u);
                // a ≤ b gives a ⊲ {b}
                yes |= u.count_ones() == 1 && leq(a, u.trailing_zeros() as usize);
                // ≤-left
                yes |= (0..n).any(|b| leq(a, b) && t[u] & (1 << b) != 0);
                // transitivity through any V
                yes |= (0..size).any(|v| t[v] & (1 << a) != 0 && is_sub(v as u64, t[u]));
                // ↓-stability: a ⊲ V, a ⊲ W with V ↓ W = U
                if !yes {
                    'outer: for v in 0..size {
                        if t[v] & (1 << a) == 0 {
                            continue;
                        }
                        for w in 0..size {
                            if t[w] & (1 << a) != 0 && down_meet(v as u64, w as u64) as usize == u {
                                yes = true;
                                break 'outer;
                            }
                        }
                    }
                }
                if yes {
                    t[u] |= 1 << a;
                }
            }
        }
        if t == before {
            return t;
        }
    }
}

/// Whether a table is closed under every inference rule; on failure, a
/// description of the violated rule.
pub fn cover_closed(up: &[u64], covers: &[Vec<u64>], t: &[u64]) -> Result<(), String> {
    let n = up.len();
    let size = 1usize << n;
    let leq = |a: usize, b: usize| up[a] & (1 << b) != 0;
    let has = |a: usize, u: usize| t[u] & (1 << a) != 0;
    for u in 0..size {
        for a in members(u as u64) {
            if !has(a, u) {
                return Err(format!("reflexivity at {a}, {u:b}"));
            }
        }
    }
    for a in 0..n {
        for &m in &covers[a] {
            if !has(a, m as usize) {
                return Err(format!("axiom at {a}, {m:b}"));
            }
        }
        for b in 0..n {
            if leq(a, b) && !has(a, 1 << b) {
                return Err(format!("order-singleton at {a} <= {b}"));
            }
        }
    }
    for u in 0..size {
        for a in 0..n {
            for b in 0..n {
                if leq(a, b) && has(b, u) && !has(a, u) {
                    return Err(format!("order-left at {a} <= {b}, {u:b}"));
                }
            }
        }
        for v in 0..size {
            // transitivity: a ⊲ u and u ⊲ v
            if is_sub(u as u64, t[v]) && !is_sub(t[u], t[v]) {
                return Err(format!("transitivity {u:b} -> {v:b}"));
            }
            let both = t[u] & t[v];
            let m = (0..n)
                .filter(|&c| {
                    members(u as u64).iter().any(|&a| leq(c, a))
                        && members(v as u64).iter().any(|&b| leq(c, b))
                })
                .fold(0usize, |m, c| m | (1 << c));
            if !is_sub(both, t[m]) {
                return Err(format!("meet stability {u:b}, {v:b}"));
            }
        }
    }
    Ok(())
}

/// Points by the defining conditions: inhabited, `↓`-directed, and splitting
/// covers (`a ∈ α, a ⊲ U ⟹ α ≬ U`).
pub fn point_oracle(up: &[u64], table: &[u64], alpha: u64) -> bool {
    let n = up.len();
    if alpha == 0 {
        return false;
    }
    let leq = |a: usize, b: usize| up[a] & (1 << b) != 0;
    for a in members(alpha) {
        for b in members(alpha) {
            if !(0..n).any(|c| alpha & (1 << c) != 0 && leq(c, a) && leq(c, b)) {
                return false;
            }
        }
    }
    for (u, &cov) in table.iter().enumerate() {
        if cov & alpha != 0 && u as u64 & alpha == 0 {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------- formal topologies

/// Every topology on `n` elements with at most one axiom per element.
pub fn small_topologies(n: usize) -> Vec<InductiveTopology> {
    let c = carrier("S", n);
    let choices = (1usize << n) + 1;
    let mut out = Vec::new();
    for up in all_preorders(n) {
        for pick in 0..choices.pow(n as u32) {
            let covers: Vec<Vec<u64>> = (0..n)
                .map(|a| {
                    let k = (pick / choices.pow(a as u32)) % choices;
                    if k == 0 {
                        vec![]
                    } else {
                        vec![(k - 1) as u64]
                    }
                })
                .collect();
            let order = preorder_from_up(&c, &up);
            out.push(InductiveTopology::new(order, AxiomSet::new(&c, covers).unwrap()).unwrap());
        }
    }
    out
}

/// FTM1–FTM3 from their statements, with the presented source cover.
pub fn ftm_oracle(r: &Relation, src: &SetPresentation, tgt: &InductiveTopology) -> bool {
    let covers = |a: usize, u: u64| src.axioms().covers(a).iter().any(|&c| is_sub(c, u));
    let covers_all = |u: u64, v: u64| members(u).iter().all(|&a| covers(a, v));
    let pre = |v: u64| {
        (0..r.src().size())
            .filter(|&x| r.rows()[x] & v != 0)
            .fold(0u64, |m, x| m | (1 << x))
    };
    let nt = tgt.carrier().size();
    let so = src.order();
    let to = tgt.order();
    let meet = |o: &Preorder, u: u64, v: u64, n: usize| {
        (0..n)
            .filter(|&c| {
                members(u).iter().any(|&a| o.leq(c, a)) && members(v).iter().any(|&b| o.leq(c, b))
            })
            .fold(0u64, |m, c| m | (1 << c))
    };
    let ns = src.carrier().size();
    covers_all(full(ns), pre(full(nt)))
        && (0..nt).all(|a| {
            (0..nt).all(|b| {
                covers_all(
                    meet(so, pre(1 << a), pre(1 << b), ns),
                    pre(meet(to, 1 << a, 1 << b, nt)),
                )
            })
        })
        && (0..nt).all(|a| (0..nt).all(|b| !to.leq(a, b) || covers_all(pre(1 << a), pre(1 << b))))
        && tgt
            .axioms()
            .iter()
            .all(|(a, _, m)| covers_all(pre(1 << a), pre(m)))
}

/// Every valid set-presentation on `n` elements whose axiom lists are sets.
pub fn small_presentations(n: usize) -> Vec<SetPresentation> {
    let c = carrier("S", n);
    let subsets = 1usize << n;
    let mut out = Vec::new();
    for up in all_preorders(n) {
        for pick in 0u64..(1 << (subsets * n)) {
            let covers: Vec<Vec<u64>> = (0..n)
                .map(|a| {
                    (0..subsets as u64)
                        .filter(|m| pick & (1 << (a * subsets + *m as usize)) != 0)
                        .collect()
                })
                .collect();
            let order = preorder_from_up(&c, &up);
            if let Ok(p) = SetPresentation::new(order, AxiomSet::new(&c, covers).unwrap()) {
                out.push(p);
            }
        }
    }
    out
}
