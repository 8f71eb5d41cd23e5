//! Group builders and brute-force oracles that use only the Cayley table.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use fusionlab_core::{FiniteGroup, GroupSpec, Limits, Perm};

/// Builds a group from 1-based cycle notation such as `"(1 2)(3 4)"`.
pub fn perm_group(name: &str, degree: usize, words: &[&str]) -> FiniteGroup {
    let gens = words
        .iter()
        .map(|w| {
            let cycles: Vec<Vec<u32>> = w
                .split(')')
                .filter_map(|c| {
                    let c = c.trim().trim_start_matches('(');
                    (!c.is_empty()).then(|| {
                        c.split_whitespace()
                            .map(|x| x.parse::<u32>().unwrap() - 1)
                            .collect()
                    })
                })
                .collect();
            Perm::from_cycles(degree, &cycles).unwrap()
        })
        .collect();
    FiniteGroup::build(
        name,
        GroupSpec::Permutations {
            degree,
            generators: gens,
        },
        Limits::default(),
    )
    .unwrap()
}

pub fn s3() -> Arc<FiniteGroup> {
    Arc::new(perm_group("S3", 3, &["(1 2)", "(1 2 3)"]))
}

pub fn d8() -> Arc<FiniteGroup> {
    Arc::new(perm_group("D8", 4, &["(1 2)", "(1 3 2 4)"]))
}

pub fn a4() -> Arc<FiniteGroup> {
    Arc::new(perm_group("A4", 4, &["(1 2 3)", "(1 2)(3 4)"]))
}

pub fn s4() -> Arc<FiniteGroup> {
    Arc::new(perm_group("S4", 4, &["(1 2)", "(1 2 3 4)"]))
}

pub fn sl23() -> Arc<FiniteGroup> {
    Arc::new(perm_group(
        "SL(2,3)",
        8,
        &["(3 5 8)(4 6 7)", "(1 5 7)(2 6 8)"],
    ))
}

pub fn gl23() -> Arc<FiniteGroup> {
    Arc::new(perm_group(
        "GL(2,3)",
        8,
        &["(3 5 8)(4 6 7)", "(1 5 7)(2 6 8)", "(1 2)(5 8)(6 7)"],
    ))
}

pub fn extraspecial_27() -> Arc<FiniteGroup> {
    Arc::new(perm_group(
        "3^(1+2)+",
        9,
        &["(4 5 6)(7 9 8)", "(1 4 7)(2 5 8)(3 6 9)"],
    ))
}

pub type Set = BTreeSet<u32>;

/// Subgroup generated by `gens`, by closure under multiplication.
pub fn closure(g: &FiniteGroup, gens: impl IntoIterator<Item = u32>) -> Set {
    let mut set: Set = [0].into_iter().collect();
    let gens: Vec<u32> = gens.into_iter().collect();
    let mut frontier = vec![0u32];
    while let Some(x) = frontier.pop() {
        for &s in &gens {
            let y = g.mul(x, s);
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    set
}

/// Every subgroup of `h`, as joins of cyclic subgroups.
pub fn all_subgroups(g: &FiniteGroup, h: &Set) -> BTreeSet<Set> {
    let cyclic: BTreeSet<Set> = h.iter().map(|&x| closure(g, [x])).collect();
    let mut found: BTreeSet<Set> = cyclic.clone();
    found.insert([0].into_iter().collect());
    loop {
        let mut new = Vec::new();
        for a in &found {
            for c in &cyclic {
                if !c.is_subset(a) {
                    let j = closure(g, a.iter().chain(c.iter()).copied());
                    if !found.contains(&j) {
                        new.push(j);
                    }
                }
            }
        }
        if new.is_empty() {
            return found;
        }
        found.extend(new);
    }
}

pub fn conj_set(g: &FiniteGroup, x: u32, q: &Set) -> Set {
    q.iter().map(|&y| g.mul(g.mul(x, y), g.inv(x))).collect()
}

pub fn normalizer(g: &FiniteGroup, q: &Set, within: &Set) -> Set {
    within
        .iter()
        .copied()
        .filter(|&x| conj_set(g, x, q) == *q)
        .collect()
}

pub fn centralizer(g: &FiniteGroup, q: &Set, within: &Set) -> Set {
    within
        .iter()
        .copied()
        .filter(|&x| q.iter().all(|&y| g.mul(x, y) == g.mul(y, x)))
        .collect()
}

pub fn whole(g: &FiniteGroup) -> Set {
    (0..g.order() as u32).collect()
}

pub fn is_p_power(mut n: usize, p: usize) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// A maximal p-subgroup of `within`, grown one element at a time.
pub fn sylow(g: &FiniteGroup, within: &Set, p: usize) -> Set {
    let mut h: Set = [0].into_iter().collect();
    loop {
        let next = within.iter().find_map(|&x| {
            if h.contains(&x) {
                return None;
            }
            let k = closure(g, h.iter().copied().chain([x]));
            (k.is_subset(within) && is_p_power(k.len(), p)).then_some(k)
        });
        match next {
            Some(k) => h = k,
            None => return h,
        }
    }
}

pub fn product(g: &FiniteGroup, a: &Set, b: &Set) -> Set {
    a.iter()
        .flat_map(|&x| b.iter().map(move |&y| g.mul(x, y)))
        .collect()
}

/// G-conjugates of `q` lying in `s`.
pub fn conjugates_in(g: &FiniteGroup, q: &Set, s: &Set) -> BTreeSet<Set> {
    (0..g.order() as u32)
        .map(|x| conj_set(g, x, q))
        .filter(|c| c.is_subset(s))
        .collect()
}

pub fn fully_normalized(g: &FiniteGroup, q: &Set, s: &Set) -> bool {
    let n = normalizer(g, q, s).len();
    conjugates_in(g, q, s)
        .iter()
        .all(|c| normalizer(g, c, s).len() <= n)
}

pub fn fully_centralized(g: &FiniteGroup, q: &Set, s: &Set) -> bool {
    let n = centralizer(g, q, s).len();
    conjugates_in(g, q, s)
        .iter()
        .all(|c| centralizer(g, c, s).len() <= n)
}

pub fn centric(g: &FiniteGroup, q: &Set, s: &Set) -> bool {
    conjugates_in(g, q, s)
        .iter()
        .all(|c| centralizer(g, c, s).is_subset(c))
}

/// Essential subgroups of `F_S(G)`, by a direct reading of the definition.
/// `Out_F(Q) = N_G(Q) / Q C_G(Q)` has a strongly p-embedded subgroup iff its
/// Sylow p-subgroups split into more than one class under "intersect
/// nontrivially".
pub fn essential_oracle(g: &FiniteGroup, s: &Set, p: usize) -> BTreeSet<Set> {
    let mut out = BTreeSet::new();
    for q in all_subgroups(g, s) {
        if q == *s || !centric(g, &q, s) {
            continue;
        }
        let n = normalizer(g, &q, &whole(g));
        let k = product(g, &q, &centralizer(g, &q, &whole(g)));
        if !(n.len() / k.len()).is_multiple_of(p) {
            continue;
        }
        let p0 = sylow(g, &n, p);
        let images: BTreeSet<Set> = n
            .iter()
            .map(|&x| product(g, &conj_set(g, x, &p0), &k))
            .collect();
        let images: Vec<Set> = images.into_iter().collect();
        let mut comp: Vec<usize> = (0..images.len()).collect();
        fn find(c: &mut Vec<usize>, i: usize) -> usize {
            if c[i] != i {
                let r = find(c, c[i]);
                c[i] = r;
            }
            c[i]
        }
        for i in 0..images.len() {
            for j in i + 1..images.len() {
                if images[i].intersection(&images[j]).count() > k.len() {
                    let (a, b) = (find(&mut comp, i), find(&mut comp, j));
                    comp[a] = b;
                }
            }
        }
        let roots: BTreeSet<usize> = (0..images.len()).map(|i| find(&mut comp, i)).collect();
        if roots.len() > 1 {
            out.insert(q);
        }
    }
    out
}

pub fn to_set(s: &fusionlab_core::Subgroup) -> Set {
    s.iter().collect()
}

/// Automorphisms of the subgroup `s = <gens>`, as maps on `s`, by trying every
/// image tuple for the generators.
pub fn automorphisms_brute(
    g: &FiniteGroup,
    s: &Set,
    gens: &[u32],
) -> Vec<std::collections::BTreeMap<u32, u32>> {
    use std::collections::BTreeMap;
    let elems: Vec<u32> = s.iter().copied().collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    loop {
        let images: Vec<u32> = choice.iter().map(|&i| elems[i]).collect();
        let mut map: BTreeMap<u32, u32> = [(0, 0)].into_iter().collect();
        let mut frontier = vec![0u32];
        let mut ok = true;
        'grow: while let Some(x) = frontier.pop() {
            for (k, &a) in gens.iter().enumerate() {
                let y = g.mul(x, a);
                let im = g.mul(map[&x], images[k]);
                match map.get(&y) {
                    Some(&old) if old != im => {
                        ok = false;
                        break 'grow;
                    }
                    Some(_) => {}
                    None => {
                        map.insert(y, im);
                        frontier.push(y);
                    }
                }
            }
        }
        if ok {
            let range: Set = map.values().copied().collect();
            if range.len() == s.len() {
                out.push(map);
            }
        }
        let mut i = 0;
        loop {
            if i == choice.len() {
                return out;
            }
            choice[i] += 1;
            if choice[i] < elems.len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// `J(S)`: join of the abelian subgroups of largest order.
pub fn thompson_oracle(g: &FiniteGroup, s: &Set) -> Set {
    let abelian: Vec<Set> = all_subgroups(g, s)
        .into_iter()
        .filter(|a| {
            a.iter()
                .all(|&x| a.iter().all(|&y| g.mul(x, y) == g.mul(y, x)))
        })
        .collect();
    let m = abelian.iter().map(|a| a.len()).max().unwrap();
    closure(
        g,
        abelian.iter().filter(|a| a.len() == m).flatten().copied(),
    )
}

/// Subgroup generated by elements of order `p` in the center of `h`.
pub fn omega_center(g: &FiniteGroup, h: &Set, p: u32) -> Set {
    let z = centralizer(g, h, h);
    closure(g, z.into_iter().filter(|&x| g.pow(x, p) == 0))
}
