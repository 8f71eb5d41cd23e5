//! Finite groups given by Cayley tables over indexed elements.
//!
//! Element `0` is always the identity. Groups built from permutation
//! generators are indexed in breadth-first order of the closure, visiting
//! generators in input order, so indices are reproducible across runs.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use once_cell::race::OnceBox;

use crate::bits::ElementSet;
use crate::error::{Error, Result};
use crate::perm::Perm;

/// Size limits applied to constructions and exhaustive searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest group order admitted by construction and lattice enumeration.
    pub order_cap: usize,
    /// Largest group order whose automorphism group is enumerated.
    pub aut_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            order_cap: 1000,
            aut_cap: 256,
        }
    }
}

/// Largest point set accepted for user-supplied permutation generators.
pub const MAX_POINTS: usize = 64;

/// Input accepted by [`FiniteGroup::build`].
#[derive(Clone, Debug)]
pub enum GroupSpec {
    Permutations {
        degree: usize,
        generators: Vec<Perm>,
    },
    Table(Vec<Vec<u32>>),
}

/// Permutation presentation retained for groups built from generators.
#[derive(Clone, Debug)]
pub struct PermRep {
    pub degree: usize,
    pub generators: Vec<Perm>,
    /// `elements[i]` is the permutation labelled by index `i`.
    pub elements: Vec<Perm>,
}

pub struct FiniteGroup {
    name: String,
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    elem_orders: Vec<u32>,
    perm_rep: Option<PermRep>,
    limits: Limits,
    lattice: OnceBox<Vec<Subgroup>>,
}

impl Clone for FiniteGroup {
    fn clone(&self) -> Self {
        let lattice = OnceBox::new();
        if let Some(l) = self.lattice.get() {
            let _ = lattice.set(alloc::boxed::Box::new(l.clone()));
        }
        Self {
            name: self.name.clone(),
            order: self.order,
            mul: self.mul.clone(),
            inv: self.inv.clone(),
            elem_orders: self.elem_orders.clone(),
            perm_rep: self.perm_rep.clone(),
            limits: self.limits,
            lattice,
        }
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .finish_non_exhaustive()
    }
}

/// A subgroup of a fixed parent group, given by its membership bit-vector.
///
/// Canonical order is by size, then by bit-vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: ElementSet,
    order: usize,
}

impl Subgroup {
    fn from_set(members: ElementSet) -> Self {
        let order = members.count();
        Self { members, order }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn contains(&self, x: u32) -> bool {
        self.members.contains(x)
    }

    pub fn members(&self) -> &ElementSet {
        &self.members
    }

    pub fn iter(&self) -> crate::bits::Members<'_> {
        self.members.iter()
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup::from_set(self.members.intersection(&other.members))
    }

    /// Index of `x` among the members in ascending order.
    pub fn rank(&self, x: u32) -> Option<usize> {
        self.members.rank(x)
    }

    /// Parent order this subgroup lives in.
    pub fn parent_order(&self) -> usize {
        self.members.universe()
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order
            .cmp(&other.order)
            .then_with(|| self.members.words().cmp(other.members.words()))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {}, {:?})", self.order, self.members)
    }
}

/// Result of [`FiniteGroup::quotient`].
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FiniteGroup,
    /// `projection[x]` is the coset index of parent element `x`.
    pub projection: Vec<u32>,
    /// Least parent element of each coset.
    pub representatives: Vec<u32>,
}

pub(crate) fn subgroup_unchecked(set: ElementSet) -> Subgroup {
    Subgroup::from_set(set)
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// The largest power of `p` dividing `n`.
pub fn p_part(n: usize, p: u32) -> usize {
    let p = p as usize;
    let mut n = n;
    let mut part = 1;
    while n.is_multiple_of(p) {
        n /= p;
        part *= p;
    }
    part
}

pub fn is_p_power(n: usize, p: u32) -> bool {
    p_part(n, p) == n
}

impl FiniteGroup {
    /// Builds and validates a group from permutation generators or a table.
    pub fn build(name: &str, spec: GroupSpec, limits: Limits) -> Result<Self> {
        match spec {
            GroupSpec::Permutations { degree, generators } => {
                if degree > MAX_POINTS {
                    return Err(Error::InvalidPermutation(format!(
                        "{degree} points exceeds the limit of {MAX_POINTS}"
                    )));
                }
                Self::from_permutations(name, degree, generators, limits)
            }
            GroupSpec::Table(rows) => Self::from_table(name, rows, limits),
        }
    }

    /// Closure of permutation generators on any number of points.
    pub fn from_permutations(
        name: &str,
        degree: usize,
        generators: Vec<Perm>,
        limits: Limits,
    ) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "generator {g} acts on {} points, expected {degree}",
                    g.degree()
                )));
            }
        }
        let mut elements = vec![Perm::identity(degree)];
        let mut index: BTreeMap<Perm, u32> = BTreeMap::new();
        index.insert(elements[0].clone(), 0);
        // right[x * k + j] = x * g_j
        let k = generators.len();
        let mut right: Vec<u32> = Vec::new();
        // breadth-first tree: parent and generator used to reach each element
        let mut parent: Vec<(u32, u32)> = vec![(0, 0)];
        let mut head = 0;
        while head < elements.len() {
            for (j, g) in generators.iter().enumerate() {
                let y = elements[head].then(g);
                let idx = match index.get(&y) {
                    Some(&i) => i,
                    None => {
                        let i = elements.len() as u32;
                        if elements.len() >= limits.order_cap {
                            return Err(Error::OrderCapExceeded {
                                order: elements.len() + 1,
                                cap: limits.order_cap,
                            });
                        }
                        index.insert(y.clone(), i);
                        elements.push(y);
                        parent.push((head as u32, j as u32));
                        i
                    }
                };
                right.push(idx);
            }
            head += 1;
        }
        let n = elements.len();
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            mul[a * n] = a as u32;
            for b in 1..n {
                let (pb, j) = parent[b];
                let prev = mul[a * n + pb as usize];
                mul[a * n + b] = right[prev as usize * k + j as usize];
            }
        }
        let rep = PermRep {
            degree,
            generators,
            elements,
        };
        let g = Self::from_mul(name, n, mul, limits, Some(rep))?;
        g.check_associativity()?;
        Ok(g)
    }

    /// Validates a square Cayley table whose element `0` is the identity.
    pub fn from_table(name: &str, rows: Vec<Vec<u32>>, limits: Limits) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        if n > limits.order_cap {
            return Err(Error::OrderCapExceeded {
                order: n,
                cap: limits.order_cap,
            });
        }
        let mut mul = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidTable(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for &x in row {
                if x as usize >= n {
                    return Err(Error::InvalidTable(format!(
                        "entry {x} out of range in row {i}"
                    )));
                }
                mul.push(x);
            }
        }
        for x in 0..n {
            if mul[x] != x as u32 || mul[x * n] != x as u32 {
                return Err(Error::InvalidTable("element 0 is not the identity".into()));
            }
        }
        // Latin square property gives unique solvability, hence inverses.
        for i in 0..n {
            let mut row_seen = vec![false; n];
            let mut col_seen = vec![false; n];
            for j in 0..n {
                let r = mul[i * n + j] as usize;
                let c = mul[j * n + i] as usize;
                if row_seen[r] || col_seen[c] {
                    return Err(Error::InvalidTable(format!(
                        "row or column {i} repeats an entry"
                    )));
                }
                row_seen[r] = true;
                col_seen[c] = true;
            }
        }
        let g = Self::from_mul(name, n, mul, limits, None)?;
        g.check_associativity()?;
        Ok(g)
    }

    pub fn trivial() -> Self {
        Self::from_mul("1", 1, vec![0], Limits::default(), None).expect("trivial group")
    }

    /// Internal constructor for tables that are correct by construction.
    fn from_mul(
        name: &str,
        n: usize,
        mul: Vec<u32>,
        limits: Limits,
        perm_rep: Option<PermRep>,
    ) -> Result<Self> {
        let mut inv = vec![u32::MAX; n];
        for a in 0..n {
            if inv[a] != u32::MAX {
                continue;
            }
            for b in 0..n {
                if mul[a * n + b] == 0 {
                    inv[a] = b as u32;
                    inv[b] = a as u32;
                    break;
                }
            }
            if inv[a] == u32::MAX {
                return Err(Error::InvalidTable(format!("element {a} has no inverse")));
            }
        }
        let mut elem_orders = vec![0u32; n];
        for a in 0..n {
            let mut x = a as u32;
            let mut k = 1;
            while x != 0 {
                x = mul[x as usize * n + a];
                k += 1;
                if k as usize > n {
                    return Err(Error::InvalidTable(format!(
                        "element {a} has no finite order"
                    )));
                }
            }
            elem_orders[a] = k;
        }
        Ok(Self {
            name: name.to_string(),
            order: n,
            mul,
            inv,
            elem_orders,
            perm_rep,
            limits,
            lattice: OnceBox::new(),
        })
    }

    /// Exhaustive up to order 64, otherwise a fixed pseudo-random sample of
    /// 10^4 triples.
    fn check_associativity(&self) -> Result<()> {
        let n = self.order;
        let check = |a: usize, b: usize, c: usize| -> Result<()> {
            let left = self.mul(self.mul(a as u32, b as u32), c as u32);
            let right = self.mul(a as u32, self.mul(b as u32, c as u32));
            if left == right {
                Ok(())
            } else {
                Err(Error::NonAssociative(a as u32, b as u32, c as u32))
            }
        };
        if n <= 64 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            // splitmix64 stream with a fixed seed keeps validation reproducible
            let mut state: u64 = 0x9E37_79B9_7F4A_7C15;
            let mut next = || {
                state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
                let mut z = state;
                z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
                z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
                ((z ^ (z >> 31)) % n as u64) as usize
            };
            for _ in 0..10_000 {
                let (a, b, c) = (next(), next(), next());
                check(a, b, c)?;
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn perm_rep(&self) -> Option<&PermRep> {
        self.perm_rep.as_ref()
    }

    /// Row-major multiplication table.
    pub fn table(&self) -> &[u32] {
        &self.mul
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    #[inline]
    pub fn elem_order(&self, a: u32) -> u32 {
        self.elem_orders[a as usize]
    }

    pub fn elem_orders(&self) -> &[u32] {
        &self.elem_orders
    }

    pub fn pow(&self, a: u32, k: u32) -> u32 {
        let mut x = 0;
        for _ in 0..k % self.elem_order(a) {
            x = self.mul(x, a);
        }
        x
    }

    /// `g x g^-1`.
    #[inline]
    pub fn conj(&self, g: u32, x: u32) -> u32 {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// `x^-1 y^-1 x y`.
    pub fn commutator(&self, x: u32, y: u32) -> u32 {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.order as u32
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_set(ElementSet::full(self.order))
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_set(ElementSet::from_indices(self.order, [0]))
    }

    /// Subgroup generated by `gens`.
    pub fn generate(&self, gens: &[u32]) -> Subgroup {
        let mut set = ElementSet::from_indices(self.order, [0]);
        let mut queue = VecDeque::from([0u32]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        Subgroup::from_set(set)
    }

    /// Validates that an element set is closed and contains the identity.
    pub fn subgroup_from_set(&self, set: ElementSet) -> Result<Subgroup> {
        if set.universe() != self.order {
            return Err(Error::NotASubgroup("universe size mismatch".into()));
        }
        if !set.contains(0) {
            return Err(Error::NotASubgroup("identity missing".into()));
        }
        let members = set.to_vec();
        for &a in &members {
            if !set.contains(self.inv(a)) {
                return Err(Error::NotASubgroup(format!("inverse of {a} missing")));
            }
            for &b in &members {
                if !set.contains(self.mul(a, b)) {
                    return Err(Error::NotASubgroup(format!("product {a}*{b} missing")));
                }
            }
        }
        let sub = Subgroup::from_set(set);
        debug_assert_eq!(self.order % sub.order(), 0);
        Ok(sub)
    }

    /// A small generating set chosen greedily from elements of large order.
    pub fn generating_set(&self, h: &Subgroup) -> Vec<u32> {
        let mut candidates: Vec<u32> = h.iter().filter(|&x| x != 0).collect();
        candidates.sort_by_key(|&x| (core::cmp::Reverse(self.elem_order(x)), x));
        let mut gens = Vec::new();
        let mut current = self.trivial_subgroup();
        for x in candidates {
            if current.order() == h.order() {
                break;
            }
            if !current.contains(x) {
                gens.push(x);
                current = self.generate(&gens);
            }
        }
        gens
    }

    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut gens = self.generating_set(a);
        gens.extend(self.generating_set(b));
        self.generate(&gens)
    }

    /// Join of an arbitrary family of subgroups.
    pub fn join_all<'a>(&self, parts: impl IntoIterator<Item = &'a Subgroup>) -> Subgroup {
        let mut acc = self.trivial_subgroup();
        for part in parts {
            if !part.is_subgroup_of(&acc) {
                acc = self.join(&acc, part);
            }
        }
        acc
    }

    /// `g H g^-1`.
    pub fn conjugate(&self, h: &Subgroup, g: u32) -> Subgroup {
        Subgroup::from_set(ElementSet::from_indices(
            self.order,
            h.iter().map(|x| self.conj(g, x)),
        ))
    }

    /// Image of a subgroup under left and right multiplication by elements;
    /// used for coset bookkeeping.
    pub fn left_coset(&self, g: u32, h: &Subgroup) -> ElementSet {
        ElementSet::from_indices(self.order, h.iter().map(|x| self.mul(g, x)))
    }

    pub fn centralizer(&self, q: &Subgroup, within: &Subgroup) -> Subgroup {
        let gens = self.generating_set(q);
        let set = ElementSet::from_indices(
            self.order,
            within
                .iter()
                .filter(|&g| gens.iter().all(|&x| self.mul(g, x) == self.mul(x, g))),
        );
        Subgroup::from_set(set)
    }

    pub fn normalizer(&self, q: &Subgroup, within: &Subgroup) -> Subgroup {
        let gens = self.generating_set(q);
        let set = ElementSet::from_indices(
            self.order,
            within
                .iter()
                .filter(|&g| gens.iter().all(|&x| q.contains(self.conj(g, x)))),
        );
        Subgroup::from_set(set)
    }

    pub fn center(&self, within: &Subgroup) -> Subgroup {
        self.centralizer(within, within)
    }

    pub fn is_normal_in(&self, n: &Subgroup, within: &Subgroup) -> bool {
        let ngens = self.generating_set(n);
        let wgens = self.generating_set(within);
        wgens
            .iter()
            .all(|&g| ngens.iter().all(|&x| n.contains(self.conj(g, x))))
    }

    pub fn is_abelian(&self, h: &Subgroup) -> bool {
        let gens = self.generating_set(h);
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_p_group(&self, h: &Subgroup, p: u32) -> bool {
        is_p_power(h.order(), p)
    }

    pub fn derived(&self, within: &Subgroup) -> Subgroup {
        let gens = self.generating_set(within);
        // [H,H] is the normal closure of commutators of generators
        let comms: Vec<u32> = gens
            .iter()
            .flat_map(|&a| gens.iter().map(move |&b| (a, b)))
            .map(|(a, b)| self.commutator(a, b))
            .filter(|&c| c != 0)
            .collect();
        self.normal_closure(&comms, within)
    }

    pub fn is_solvable(&self, within: &Subgroup) -> bool {
        let mut h = within.clone();
        loop {
            if h.is_trivial() {
                return true;
            }
            let d = self.derived(&h);
            if d.order() == h.order() {
                return false;
            }
            h = d;
        }
    }

    /// Smallest normal subgroup of `within` containing `xs`.
    pub fn normal_closure(&self, xs: &[u32], within: &Subgroup) -> Subgroup {
        let wgens = self.generating_set(within);
        let mut gens: Vec<u32> = xs.to_vec();
        let mut current = self.generate(&gens);
        loop {
            let mut grown = false;
            for &g in &wgens {
                for x in self.generating_set(&current) {
                    let y = self.conj(g, x);
                    if !current.contains(y) {
                        gens.push(y);
                        grown = true;
                    }
                }
            }
            if !grown {
                return current;
            }
            current = self.generate(&gens);
            gens = self.generating_set(&current);
        }
    }

    /// Largest normal p-subgroup of `within`.
    pub fn o_p(&self, within: &Subgroup, p: u32) -> Subgroup {
        self.largest_normal_with(within, |order| is_p_power(order, p))
    }

    /// Largest normal subgroup of `within` of order prime to `p`.
    pub fn o_p_prime(&self, within: &Subgroup, p: u32) -> Subgroup {
        self.largest_normal_with(within, |order| p_part(order, p) == 1)
    }

    /// Join of the normal closures of single elements whose closure passes
    /// `accept`. Correct for order predicates closed under normal products.
    fn largest_normal_with(&self, within: &Subgroup, accept: impl Fn(usize) -> bool) -> Subgroup {
        let mut acc = self.trivial_subgroup();
        let mut rejected = ElementSet::empty(self.order);
        for x in within.iter() {
            if acc.contains(x) || rejected.contains(x) || !accept(self.elem_order(x) as usize) {
                continue;
            }
            let closure = self.normal_closure(&[x], within);
            if accept(closure.order()) {
                acc = self.join(&acc, &closure);
            } else {
                // conjugates of x share its normal closure
                for g in within.iter() {
                    rejected.insert(self.conj(g, x));
                }
            }
        }
        acc
    }

    /// Subgroup generated by the elements of order `p` of a p-group.
    pub fn omega1(&self, h: &Subgroup, p: u32) -> Result<Subgroup> {
        if !self.is_p_group(h, p) {
            return Err(Error::NotAPGroup(p));
        }
        let gens: Vec<u32> = h.iter().filter(|&x| self.elem_order(x) == p).collect();
        Ok(self.generate(&gens))
    }

    /// `{g in within : g P g^-1 <= R}`.
    pub fn transporter(&self, p: &Subgroup, r: &Subgroup, within: &Subgroup) -> Vec<u32> {
        let gens = self.generating_set(p);
        within
            .iter()
            .filter(|&g| gens.iter().all(|&x| r.contains(self.conj(g, x))))
            .collect()
    }

    /// The subgroup as a standalone group, with the embedding of new indices
    /// into the parent. Members keep their relative order.
    pub fn subgroup_as_group(&self, h: &Subgroup, name: &str) -> (FiniteGroup, Vec<u32>) {
        let members = h.to_members();
        let n = members.len();
        let mut mul = vec![0u32; n * n];
        for (i, &a) in members.iter().enumerate() {
            for (j, &b) in members.iter().enumerate() {
                let c = self.mul(a, b);
                mul[i * n + j] = h.rank(c).expect("closed subgroup") as u32;
            }
        }
        let g = Self::from_mul(name, n, mul, self.limits, None).expect("subgroup table");
        (g, members)
    }

    /// Quotient by a normal subgroup. Cosets are indexed in ascending order
    /// of their least element.
    pub fn quotient(&self, n: &Subgroup) -> Result<Quotient> {
        if !self.is_normal_in(n, &self.whole()) {
            return Err(Error::NotNormal);
        }
        let mut projection = vec![u32::MAX; self.order];
        let mut reps = Vec::new();
        for x in self.elements() {
            if projection[x as usize] != u32::MAX {
                continue;
            }
            let idx = reps.len() as u32;
            reps.push(x);
            for y in n.iter() {
                projection[self.mul(x, y) as usize] = idx;
            }
        }
        let m = reps.len();
        let mut mul = vec![0u32; m * m];
        for i in 0..m {
            for j in 0..m {
                mul[i * m + j] = projection[self.mul(reps[i], reps[j]) as usize];
            }
        }
        let name = format!("{}/N{}", self.name, n.order());
        let group = Self::from_mul(&name, m, mul, self.limits, None)?;
        Ok(Quotient {
            group,
            projection,
            representatives: reps,
        })
    }

    /// Every subgroup of `within`, each once, in canonical order.
    pub fn lattice_within(&self, within: &Subgroup) -> Result<Vec<Subgroup>> {
        if within.order() > self.limits.order_cap {
            return Err(Error::OrderCapExceeded {
                order: within.order(),
                cap: self.limits.order_cap,
            });
        }
        // cyclic subgroups first, then repeated extension by one cyclic generator
        let mut cyclic: Vec<(Subgroup, u32)> = Vec::new();
        let mut seen_cyclic: BTreeSet<Subgroup> = BTreeSet::new();
        for x in within.iter() {
            let c = self.generate(&[x]);
            if seen_cyclic.insert(c.clone()) {
                cyclic.push((c, x));
            }
        }
        let mut all: BTreeMap<Subgroup, Vec<u32>> = BTreeMap::new();
        let mut frontier: Vec<(Subgroup, Vec<u32>)> = Vec::new();
        for (c, x) in &cyclic {
            let gens = if *x == 0 { Vec::new() } else { vec![*x] };
            all.insert(c.clone(), gens.clone());
            frontier.push((c.clone(), gens));
        }
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for (k, gens) in &frontier {
                for (c, x) in &cyclic {
                    if c.is_subgroup_of(k) {
                        continue;
                    }
                    let mut g2 = gens.clone();
                    g2.push(*x);
                    let m = self.generate(&g2);
                    if !all.contains_key(&m) {
                        all.insert(m.clone(), g2.clone());
                        next.push((m, g2));
                    }
                }
            }
            frontier = next;
        }
        Ok(all.into_keys().collect())
    }

    /// Every subgroup of the group, cached after the first call.
    pub fn subgroup_lattice(&self) -> Result<&[Subgroup]> {
        if let Some(l) = self.lattice.get() {
            return Ok(l);
        }
        let l = self.lattice_within(&self.whole())?;
        Ok(self.lattice.get_or_init(|| alloc::boxed::Box::new(l)))
    }

    /// Seeds the lattice cache, e.g. from disk. Returns `false` when the
    /// supplied list is rejected or a lattice is already cached.
    pub fn seed_lattice(&self, lattice: Vec<Subgroup>) -> bool {
        if lattice.iter().any(|s| s.parent_order() != self.order) {
            return false;
        }
        self.lattice.set(alloc::boxed::Box::new(lattice)).is_ok()
    }

    pub fn cached_lattice(&self) -> Option<&[Subgroup]> {
        self.lattice.get().map(|v| v.as_slice())
    }

    /// First subgroup of full p-part order in canonical lattice order.
    pub fn sylow(&self, p: u32) -> Result<Subgroup> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let target = p_part(self.order, p);
        let lattice = self.subgroup_lattice()?;
        Ok(lattice
            .iter()
            .find(|s| s.order() == target)
            .cloned()
            .expect("Sylow subgroups exist"))
    }

    /// A Sylow p-subgroup of `within`, grown one step at a time through
    /// normalizers. Does not need the lattice.
    pub fn sylow_within(&self, within: &Subgroup, p: u32) -> Subgroup {
        let target = p_part(within.order(), p);
        let mut s = self.trivial_subgroup();
        while s.order() < target {
            let n = self.normalizer(&s, within);
            let x = n
                .iter()
                .find(|&x| {
                    !s.contains(x)
                        && s.contains(self.pow(x, p))
                        && is_p_power(self.elem_order(x) as usize, p)
                })
                .expect("p divides |N(P)/P| while P is not Sylow");
            let mut gens = self.generating_set(&s);
            gens.push(x);
            s = self.generate(&gens);
        }
        s
    }

    /// Maps a subgroup through an element map.
    pub fn image_of(
        &self,
        h: &Subgroup,
        map: impl Fn(u32) -> u32,
        target_order: usize,
    ) -> ElementSet {
        ElementSet::from_indices(target_order, h.iter().map(map))
    }

    /// Wraps an arbitrary set known to be a subgroup (e.g. the image of a
    /// homomorphism) without rechecking closure.
    pub fn subgroup_unchecked(&self, set: ElementSet) -> Subgroup {
        debug_assert_eq!(set.universe(), self.order);
        Subgroup::from_set(set)
    }

    /// Element-order multiset as a sorted histogram `(order, count)`.
    pub fn order_histogram(&self, h: &Subgroup) -> Vec<(u32, usize)> {
        let mut hist: BTreeMap<u32, usize> = BTreeMap::new();
        for x in h.iter() {
            *hist.entry(self.elem_order(x)).or_default() += 1;
        }
        hist.into_iter().collect()
    }

    /// Label for an element: its permutation when available, else `#index`.
    pub fn element_label(&self, x: u32) -> String {
        match &self.perm_rep {
            Some(rep) => rep.elements[x as usize].to_string(),
            None => format!("#{x}"),
        }
    }
}

impl Subgroup {
    pub fn to_members(&self) -> Vec<u32> {
        self.members.to_vec()
    }
}
