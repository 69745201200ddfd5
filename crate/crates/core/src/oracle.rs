//! Combinatorial ground truth, computed without the series solver.
//!
//! * phylogenetic trees: labeled leaves, unlabeled internal vertices, every
//!   internal vertex with at least two (unordered) children;
//! * ordered trees: unlabeled, children ordered, same degree condition.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use crate::exact::{binomial, factorial, int, rat, KPoly, LaurentPoly, Rational};
use crate::series::{Series, Var};
use crate::solver::{m_l_polys, solve_lambda, LambdaSpec};
use crate::verdict::Verdict;

/// `c[n][i]`, phylogenetic trees with `n` leaves and `i` internal vertices,
/// for `1 ≤ n ≤ n_max` (row 0 is empty).
///
/// A root's subtrees form a set; the block holding the smallest leaf is
/// chosen first, which gives the `C(n-1, s-1)` factor. Forests are tracked
/// by tree count capped at 2, since a root needs at least two children.
pub fn phylo_table(n_max: usize) -> Vec<Vec<BigInt>> {
    let mut trees: Vec<Vec<BigInt>> = vec![Vec::new(); n_max + 1];
    // forest[n][j][b]: forests on n leaves, j internal vertices, min(#trees, 2) = b
    let mut forest: Vec<Vec<[BigInt; 3]>> = vec![Vec::new(); n_max + 1];
    forest[0] = vec![[BigInt::one(), BigInt::zero(), BigInt::zero()]];
    for n in 1..=n_max {
        forest[n] = vec![Default::default(); n];
        trees[n] = vec![BigInt::zero(); n];
        // a forest's first tree has s ≤ n leaves; when s = n it is a single tree,
        // which needs trees[n] — known only after the b ≥ 2 part is done.
        let (done, current) = forest.split_at_mut(n);
        let current = &mut current[0];
        for s in 1..n {
            let ways = binomial(n as u64 - 1, s as u64 - 1);
            for (j1, t) in trees[s].iter().enumerate() {
                if t.is_zero() {
                    continue;
                }
                for (j2, rest) in done[n - s].iter().enumerate() {
                    for (b, r) in rest.iter().enumerate() {
                        if !r.is_zero() {
                            current[j1 + j2][(b + 1).min(2)] += &ways * t * r;
                        }
                    }
                }
            }
        }
        if n == 1 {
            trees[1][0] = BigInt::one();
        } else {
            for i in 1..n {
                trees[n][i] = forest[n][i - 1][2].clone();
            }
        }
        for (j, t) in trees[n].iter().enumerate() {
            forest[n][j][1] += t;
        }
    }
    trees
}

pub fn count_phylo(n: usize, i: usize) -> BigInt {
    assert!(n >= 1, "n must be positive");
    phylo_table(n)[n].get(i).cloned().unwrap_or_default()
}

/// A phylogenetic tree in canonical form (children sorted).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Tree {
    Leaf(u8),
    Node(Vec<Tree>),
}

impl Tree {
    pub fn internal_vertices(&self) -> usize {
        match self {
            Tree::Leaf(_) => 0,
            Tree::Node(ch) => 1 + ch.iter().map(Tree::internal_vertices).sum::<usize>(),
        }
    }
}

/// Set partitions of `mask` into at least two blocks.
fn proper_partitions(mask: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, blocks: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(blocks.clone());
            return;
        }
        let low = rest & rest.wrapping_neg();
        let others = rest & !low;
        // every block containing `low`
        let mut sub = others;
        loop {
            blocks.push(low | sub);
            go(others & !sub, blocks, out);
            blocks.pop();
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & others;
        }
    }
    let mut out = Vec::new();
    go(mask, &mut Vec::new(), &mut out);
    out.retain(|p| p.len() >= 2);
    out
}

fn trees_on(mask: u32, memo: &mut HashMap<u32, Vec<Tree>>) -> Vec<Tree> {
    if let Some(t) = memo.get(&mask) {
        return t.clone();
    }
    let out = if mask.count_ones() == 1 {
        vec![Tree::Leaf(mask.trailing_zeros() as u8)]
    } else {
        let mut out = Vec::new();
        for blocks in proper_partitions(mask) {
            let mut partial: Vec<Vec<Tree>> = vec![Vec::new()];
            for &b in &blocks {
                let choices = trees_on(b, memo);
                partial = partial
                    .into_iter()
                    .flat_map(|p| {
                        choices.iter().map(move |c| {
                            let mut q = p.clone();
                            q.push(c.clone());
                            q
                        })
                    })
                    .collect();
            }
            for mut children in partial {
                children.sort();
                out.push(Tree::Node(children));
            }
        }
        out
    };
    memo.insert(mask, out.clone());
    out
}

/// Every phylogenetic tree on leaves `0..n`, listed explicitly. Only for small `n`.
pub fn enumerate_phylo(n: usize) -> Vec<Tree> {
    assert!((1..=8).contains(&n), "structural enumeration is limited to n ≤ 8");
    trees_on((1u32 << n) - 1, &mut HashMap::new())
}

/// Counts by internal-vertex number from the explicit list, after checking
/// that all listed trees are distinct.
pub fn structural_phylo_row(n: usize) -> Result<Vec<BigInt>> {
    let all = enumerate_phylo(n);
    let distinct: BTreeSet<&Tree> = all.iter().collect();
    if distinct.len() != all.len() {
        return Err(Error::InvalidArgument(format!("duplicate trees in enumeration for n = {n}")));
    }
    let mut row = vec![BigInt::zero(); n];
    for t in &all {
        row[t.internal_vertices()] += 1;
    }
    Ok(row)
}

/// Ordered trees with `n` leaves and `i` internal vertices.
#[derive(Default)]
pub struct OrderedCounter {
    trees: HashMap<(usize, usize), BigInt>,
    seqs: HashMap<(usize, usize, usize), BigInt>,
}

impl OrderedCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn count(&mut self, n: usize, i: usize) -> BigInt {
        if let Some(c) = self.trees.get(&(n, i)) {
            return c.clone();
        }
        let c = if n == 1 && i == 0 {
            BigInt::one()
        } else if i == 0 || n == 0 {
            BigInt::zero()
        } else {
            self.seq(n, i - 1, 2)
        };
        self.trees.insert((n, i), c.clone());
        c
    }

    /// Sequences of at least `min_len` trees with `n` leaves and `i` internal
    /// vertices in total.
    fn seq(&mut self, n: usize, i: usize, min_len: usize) -> BigInt {
        if n == 0 {
            return if i == 0 && min_len == 0 { BigInt::one() } else { BigInt::zero() };
        }
        if let Some(c) = self.seqs.get(&(n, i, min_len)) {
            return c.clone();
        }
        let mut total = BigInt::zero();
        for s in 1..=n {
            for j in 0..=i {
                let first = self.count(s, j);
                if first.is_zero() {
                    continue;
                }
                total += first * self.seq(n - s, i - j, min_len.saturating_sub(1));
            }
        }
        self.seqs.insert((n, i, min_len), total.clone());
        total
    }
}

pub fn count_ordered(n: usize, i: usize) -> BigInt {
    assert!(n >= 1, "n must be positive");
    OrderedCounter::new().count(n, i)
}

/// `(1/i) C(n-2, i-1) C(n+i-1, i-1)`.
pub fn hex_formula(n: u64, i: u64) -> Result<BigInt> {
    if n < 2 || i < 1 || i >= n {
        return Err(Error::InvalidArgument(format!("need n ≥ 2 and 1 ≤ i ≤ n-1, got n = {n}, i = {i}")));
    }
    let num = binomial(n - 2, i - 1) * binomial(n + i - 1, i - 1);
    let q = Rational::new(num, BigInt::from(i));
    if !q.is_integer() {
        return Err(Error::InvalidArgument(format!("non-integral count at n = {n}, i = {i}")));
    }
    Ok(q.to_integer())
}

/// `H = (1 + t - √((1-t)² - 4kt)) / (2(1+k))` expanded modulo `t^(order+1)`;
/// this is the root of `(1+k)H² - (1+t)H + t = 0` that vanishes at `t = 0`.
///
/// `1/(1+k)` is taken as a power series in `k` cut at degree `order`; each
/// `[t^n]` must then have no terms of degree `n..=order`, which is checked.
pub fn closed_form_geom(order: usize) -> Result<Series<KPoly>> {
    let k = KPoly::k();
    let mut a = vec![KPoly::zero(); order + 1];
    if order >= 1 {
        a[1] = &KPoly::constant(int(-2)) - &k.scale(&int(4));
    }
    if order >= 2 {
        a[2] = KPoly::constant(int(1));
    }
    let root = Series::sqrt1p(&Series::new(Var::T, order, a))?;
    let mut num = root.neg();
    num.set_coeff(0, &num.coeff(0) + &KPoly::constant(int(1)));
    if order >= 1 {
        num.set_coeff(1, &num.coeff(1) + &KPoly::constant(int(1)));
    }
    let geometric = KPoly::new((0..=order).map(|j| rat(if j % 2 == 0 { 1 } else { -1 }, 2)).collect());
    let mut out = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let c = (&num.coeff(n) * &geometric).truncate(order);
        // [t^n] H has k-degree below n, and [t^0] H = 0
        if (n..=order).any(|d| !c.coeff(d).is_zero()) {
            return Err(Error::InvalidArgument(format!("closed form leaves high k-degree terms at t^{n}")));
        }
        out.push(c);
    }
    Ok(Series::new(Var::T, order, out))
}

/// `ρ_l(u) = Σ_n [k^{n-l} t^n] H(t, k)` for `Λ = z²/(1-z)`, with
/// `u = √(1-4t)`: the even part is `½` for `l = 1` and `(1/8)(-1)^{l-1}(3+u²)`
/// after that.
pub fn geom_even_power_check(l_max: usize, order: usize) -> Verdict {
    let mut v = Verdict::new("geom_even_power", json!({ "l_max": l_max, "order": order }));
    for (idx, rho) in m_l_polys(&LambdaSpec::geom(), l_max, order).iter().enumerate() {
        let l = idx + 1;
        let expected = if l == 1 {
            LaurentPoly::constant(rat(1, 2))
        } else {
            let sign = if l % 2 == 0 { -1 } else { 1 };
            LaurentPoly::from_terms([(0, rat(3 * sign, 8)), (2, rat(sign, 8))])
        };
        let got = rho.even_part();
        if got != expected {
            v.fail(json!({ "l": l, "even_part": got.to_string(), "expected": expected.to_string() }));
        }
    }
    v
}

/// `count_phylo`, the explicit enumeration (for `n ≤ structural_max`), the
/// exponential coefficients of `H` for `Λ = e^z - z - 1`, and the shipped
/// totals, all compared.
pub fn phylo_check(n_max: usize, structural_max: usize) -> Result<Verdict> {
    let mut v = Verdict::new("phylo_triangle", json!({ "n_max": n_max, "structural_max": structural_max }));
    let table = phylo_table(n_max);
    let h = solve_lambda(&LambdaSpec::exp(), n_max.max(1))?;
    let totals = fixtures::a000311();
    for n in 1..=n_max {
        let scaled = h.coeff(n).scale(&Rational::from_integer(factorial(n as u64)));
        for i in 0..n {
            let c = Rational::from_integer(table[n][i].clone());
            if c != scaled.coeff(i) {
                v.fail(json!({ "n": n, "i": i, "recurrence": c.to_string(), "solver": scaled.coeff(i).to_string() }));
            }
        }
        if let Some(expected) = totals.get(n - 1) {
            let sum: BigInt = table[n].iter().sum();
            if &sum != expected {
                v.fail(json!({ "n": n, "total": sum.to_string(), "expected": expected.to_string() }));
            }
        }
        if n <= structural_max {
            let row = structural_phylo_row(n)?;
            if row != table[n] {
                v.fail(json!({ "n": n, "structural": format!("{row:?}") }));
            }
        }
    }
    Ok(v)
}

/// Ordered-tree counts, the product formula, `[k^i t^n] H` for
/// `Λ = z²/(1-z)`, and the shipped triangle, all compared.
pub fn ordered_check(n_max: usize) -> Result<Verdict> {
    let mut v = Verdict::new("ordered_triangle", json!({ "n_max": n_max }));
    let h = solve_lambda(&LambdaSpec::geom(), n_max.max(1))?;
    let rows = fixtures::a033282();
    let mut counter = OrderedCounter::new();
    for n in 2..=n_max {
        for i in 1..n {
            let brute = counter.count(n, i);
            let formula = hex_formula(n as u64, i as u64)?;
            let solver = h.coeff(n).coeff(i);
            let fixture = rows.get(n - 2).and_then(|r| r.get(i - 1));
            let ok = brute == formula
                && Rational::from_integer(brute.clone()) == solver
                && fixture.is_none_or(|f| *f == brute);
            if !ok {
                v.fail(json!({
                    "n": n, "i": i,
                    "enumeration": brute.to_string(),
                    "formula": formula.to_string(),
                    "solver": solver.to_string(),
                }));
            }
        }
    }
    Ok(v)
}

pub fn closed_form_geom_check(order: usize) -> Result<Verdict> {
    let v = Verdict::new("closed_form_geom", json!({ "order": order }));
    let closed = closed_form_geom(order)?;
    let solved = solve_lambda(&LambdaSpec::geom(), order.max(1))?.truncate(order);
    let witness = (0..=order)
        .find(|&n| closed.coeff(n) != solved.coeff(n))
        .map(|n| json!({ "t": n, "closed_form": closed.coeff(n).to_string(), "solver": solved.coeff(n).to_string() }));
    Ok(v.with_result(witness))
}

/// Reference tables shipped with the crate.
pub mod fixtures {
    use super::*;

    const A000311: &str = include_str!("../fixtures/a000311.txt");
    const A033282: &str = include_str!("../fixtures/a033282.txt");
    const A074059: &str = include_str!("../fixtures/a074059.txt");
    const A075856: &str = include_str!("../fixtures/a075856.txt");
    const EXP_K_ROWS: &str = include_str!("../fixtures/exp_k_rows.txt");
    const M_GLS: &str = include_str!("../fixtures/m_gls.jsonl");

    fn rows(src: &str) -> Vec<Vec<BigInt>> {
        src.lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| l.split_whitespace().map(|w| w.parse().expect("integer fixture")).collect())
            .collect()
    }

    fn flat(src: &str) -> Vec<BigInt> {
        rows(src).concat()
    }

    /// Total phylogenetic trees, `n = 1..8`.
    pub fn a000311() -> Vec<BigInt> {
        flat(A000311)
    }

    /// Ordered trees, rows `n = 2..8`, entries `i = 1..n-1`.
    pub fn a033282() -> Vec<Vec<BigInt>> {
        rows(A033282)
    }

    /// `n! [t^n] χ(t, 1)`, `n = 1..5`.
    pub fn a074059() -> Vec<BigInt> {
        flat(A074059)
    }

    /// `n! [t^n] χ(t, k)` by powers of `k`, `n = 1..5`.
    pub fn a075856() -> Vec<Vec<BigInt>> {
        rows(A075856)
    }

    /// `n! [t^n] H(t, k)` for `Λ = e^z - z - 1`, `n = 1..5`.
    pub fn exp_k_rows() -> Vec<Vec<BigInt>> {
        rows(EXP_K_ROWS)
    }

    /// `M_1..M_5` for `Λ = (1+z)log(1+z) - z`.
    pub fn m_gls() -> Vec<LaurentPoly> {
        M_GLS
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| LaurentPoly::from_json(&serde_json::from_str(l).expect("json fixture")).expect("polynomial fixture"))
            .collect()
    }

    /// `M_GLS` verbatim, for byte comparisons.
    pub fn m_gls_raw() -> &'static str {
        M_GLS
    }

    pub fn kpoly_row(row: &[BigInt]) -> KPoly {
        KPoly::new(row.iter().cloned().map(Rational::from_integer).collect())
    }
}

/// Counts by `(n, i)` for the CLI.
pub fn triangle(kind: TreeKind, n: usize) -> BTreeMap<usize, BigInt> {
    match kind {
        TreeKind::Phylo => phylo_table(n)[n].iter().cloned().enumerate().collect(),
        TreeKind::Ordered => {
            let mut c = OrderedCounter::new();
            (0..n.max(1)).map(|i| (i, c.count(n, i))).collect()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TreeKind {
    Phylo,
    Ordered,
}
