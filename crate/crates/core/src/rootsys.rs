//! The E7 root system in the basis of simple roots, and the catalog of
//! closed subsystems whose reductive subgroups carry the spectrum.
//!
//! Simple roots are numbered r1..r7 along the chain r1-r3-r4-r5-r6-r7 with
//! r2 attached to r4; the highest root is r0 = (2,2,3,4,3,2,1).

use std::collections::{btree_map, BTreeMap, BTreeSet, HashSet};
use std::fmt;

use once_cell::sync::Lazy;

use crate::error::{Error, Result};

pub const RANK: usize = 7;
pub const ROOT_COUNT: usize = 126;

/// A vector in the root lattice, written in the basis r1..r7.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootVec(pub [i8; RANK]);

impl RootVec {
    pub const fn new(coords: [i8; RANK]) -> Self {
        RootVec(coords)
    }

    pub fn simple(i: usize) -> Self {
        assert!(
            (1..=RANK).contains(&i),
            "simple root index {i} out of range"
        );
        let mut c = [0; RANK];
        c[i - 1] = 1;
        RootVec(c)
    }

    pub fn coords(&self) -> &[i8; RANK] {
        &self.0
    }

    pub fn height(&self) -> i32 {
        self.0.iter().map(|&x| x as i32).sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&x| x >= 0) && self.0.iter().any(|&x| x > 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &RootVec) -> RootVec {
        let mut c = self.0;
        for (a, b) in c.iter_mut().zip(other.0) {
            *a += b;
        }
        RootVec(c)
    }

    /// `self + k * other`
    pub fn add_scaled(&self, k: i8, other: &RootVec) -> RootVec {
        let mut c = self.0;
        for (a, b) in c.iter_mut().zip(other.0) {
            *a += k * b;
        }
        RootVec(c)
    }
}

impl std::ops::Neg for RootVec {
    type Output = RootVec;
    fn neg(self) -> RootVec {
        RootVec(self.0.map(|x| -x))
    }
}

impl fmt::Debug for RootVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for RootVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Highest root.
pub const R0: RootVec = RootVec::new([2, 2, 3, 4, 3, 2, 1]);
pub const R8: RootVec = RootVec::new([0, 1, 0, 1, 1, 1, 0]);
pub const R9: RootVec = RootVec::new([0, 1, 1, 2, 2, 1, 0]);
pub const R10: RootVec = RootVec::new([0, -1, -1, -2, -1, 0, 0]);
pub const R11: RootVec = RootVec::new([0, -1, -1, -2, -2, -2, -1]);
/// r5 + r6 + r7.
pub const R12: RootVec = RootVec::new([0, 0, 0, 0, 1, 1, 1]);

/// Named roots used by the catalog: 0 is the highest root, 1..=7 simple,
/// 8..=12 the auxiliary roots above.
pub fn named_root(i: usize) -> RootVec {
    match i {
        0 => R0,
        1..=7 => RootVec::simple(i),
        8 => R8,
        9 => R9,
        10 => R10,
        11 => R11,
        12 => R12,
        _ => panic!("no named root r{i}"),
    }
}

/// Cartan matrix, root set and lookup tables for E7.
pub struct CartanData {
    cartan: [[i8; RANK]; RANK],
    roots: Vec<RootVec>,
    index: HashSet<RootVec>,
}

static E7: Lazy<CartanData> = Lazy::new(CartanData::build);

/// The shared E7 data.
pub fn e7() -> &'static CartanData {
    &E7
}

impl CartanData {
    fn build() -> Self {
        let edges = [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 4)];
        let mut cartan = [[0i8; RANK]; RANK];
        for (i, row) in cartan.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (a, b) in edges {
            cartan[a - 1][b - 1] = -1;
            cartan[b - 1][a - 1] = -1;
        }
        let mut data = CartanData {
            cartan,
            roots: Vec::new(),
            index: HashSet::new(),
        };
        data.roots = data.close_under_reflections();
        data.index = data.roots.iter().copied().collect();
        data
    }

    /// Orbit of the simple roots under the simple reflections.
    fn close_under_reflections(&self) -> Vec<RootVec> {
        let mut seen: BTreeSet<RootVec> = (1..=RANK).map(RootVec::simple).collect();
        let mut frontier: Vec<RootVec> = seen.iter().copied().collect();
        while let Some(r) = frontier.pop() {
            for i in 1..=RANK {
                let img = self.reflect_simple(&r, i);
                if seen.insert(img) {
                    frontier.push(img);
                }
            }
        }
        seen.into_iter().collect()
    }

    pub fn cartan(&self) -> &[[i8; RANK]; RANK] {
        &self.cartan
    }

    /// All 126 roots, sorted lexicographically by coordinates.
    pub fn roots(&self) -> &[RootVec] {
        &self.roots
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = &RootVec> {
        self.roots.iter().filter(|r| r.is_positive())
    }

    pub fn is_root(&self, r: &RootVec) -> bool {
        self.index.contains(r)
    }

    /// Position of `r` in [`roots`](Self::roots).
    pub fn root_index(&self, r: &RootVec) -> Option<usize> {
        self.roots.binary_search(r).ok()
    }

    /// Symmetric bilinear form in which simple roots have squared length 2.
    pub fn form(&self, a: &RootVec, b: &RootVec) -> i32 {
        let mut s = 0i32;
        for i in 0..RANK {
            if a.0[i] == 0 {
                continue;
            }
            for j in 0..RANK {
                s += a.0[i] as i32 * self.cartan[i][j] as i32 * b.0[j] as i32;
            }
        }
        s
    }

    /// `<r, s> = 2 (r, s) / (s, s)`; all roots have the same length.
    pub fn pairing(&self, r: &RootVec, s: &RootVec) -> Result<i32> {
        for x in [r, s] {
            if !self.is_root(x) {
                return Err(Error::Domain(format!("{x} is not a root of E7")));
            }
        }
        Ok(self.form(r, s))
    }

    /// Pairings of `r` with the simple roots r1..r7.
    pub fn pairings_with_simple(&self, r: &RootVec) -> [i8; RANK] {
        let mut out = [0i8; RANK];
        for (j, o) in out.iter_mut().enumerate() {
            *o = (0..RANK).map(|i| r.0[i] * self.cartan[i][j]).sum();
        }
        out
    }

    pub fn reflect_simple(&self, r: &RootVec, i: usize) -> RootVec {
        let c = self.pairings_with_simple(r)[i - 1];
        r.add_scaled(-c, &RootVec::simple(i))
    }

    /// Reflection of `x` in the hyperplane orthogonal to the root `r`.
    pub fn reflect(&self, x: &RootVec, r: &RootVec) -> RootVec {
        let c = self.form(x, r) as i8;
        x.add_scaled(-c, r)
    }
}

/// All 126 roots in deterministic sorted order.
pub fn generate_roots() -> Vec<RootVec> {
    e7().roots().to_vec()
}

pub fn pairing(r: &RootVec, s: &RootVec) -> Result<i32> {
    e7().pairing(r, s)
}

/// Irreducible Cartan family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    D,
    E,
}

/// A Cartan type as a multiset of irreducible components, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct CartanType {
    components: Vec<(Family, usize)>,
}

impl CartanType {
    pub fn new(mut components: Vec<(Family, usize)>) -> Self {
        // Largest first, as in "A3^2" or "D4xA1".
        components.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        CartanType { components }
    }

    pub fn components(&self) -> &[(Family, usize)] {
        &self.components
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(|c| c.1).sum()
    }

    /// Maximal height of a root, per irreducible component: A_l -> l,
    /// D_l -> 2l-3, E6 -> 11, E7 -> 17. Zero for the empty system.
    pub fn max_height(&self) -> u32 {
        self.components
            .iter()
            .map(|&(fam, l)| component_max_height(fam, l))
            .max()
            .unwrap_or(0)
    }

    /// |W| of the reflection group of this type.
    pub fn weyl_order(&self) -> u64 {
        self.components
            .iter()
            .map(|&(fam, l)| match fam {
                Family::A => (1..=(l as u64 + 1)).product::<u64>(),
                Family::D => (1u64 << (l - 1)) * (1..=l as u64).product::<u64>(),
                Family::E => match l {
                    6 => 51_840,
                    7 => 2_903_040,
                    8 => 696_729_600,
                    _ => unreachable!("no E{l}"),
                },
            })
            .product()
    }

    /// Whether `w0 = -1` on the span (no A_l with l >= 2, D_odd, E6 factor).
    pub fn longest_is_minus_one(&self) -> bool {
        self.components.iter().all(|&(fam, l)| match fam {
            Family::A => l == 1,
            Family::D => l % 2 == 0,
            Family::E => l != 6,
        })
    }
}

fn component_max_height(fam: Family, l: usize) -> u32 {
    match (fam, l) {
        (Family::A, l) => l as u32,
        (Family::D, l) => 2 * l as u32 - 3,
        (Family::E, 6) => 11,
        (Family::E, 7) => 17,
        (Family::E, 8) => 29,
        _ => unreachable!(),
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "empty");
        }
        let mut counts: Vec<((Family, usize), usize)> = Vec::new();
        for &c in &self.components {
            match counts.last_mut() {
                Some((last, n)) if *last == c => *n += 1,
                _ => counts.push((c, 1)),
            }
        }
        for (k, ((fam, l), n)) in counts.iter().enumerate() {
            if k > 0 {
                write!(f, "x")?;
            }
            write!(f, "{fam:?}{l}")?;
            if *n > 1 {
                write!(f, "^{n}")?;
            }
        }
        Ok(())
    }
}

/// Classifies a simple system by the graph of its pairing matrix.
pub fn classify_type(simple_roots: &[RootVec]) -> Result<CartanType> {
    let e = e7();
    let n = simple_roots.len();
    let mut gram = vec![vec![0i32; n]; n];
    for i in 0..n {
        for j in 0..n {
            gram[i][j] = e.pairing(&simple_roots[i], &simple_roots[j])?;
        }
    }
    for i in 0..n {
        for j in 0..n {
            let ok = if i == j {
                gram[i][j] == 2
            } else {
                matches!(gram[i][j], 0 | -1)
            };
            if !ok {
                return Err(Error::Domain(format!(
                    "pairing <{},{}> = {} is not that of a simple system",
                    simple_roots[i], simple_roots[j], gram[i][j]
                )));
            }
        }
    }
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| j != i && gram[i][j] == -1).collect())
        .collect();

    let mut comp_of = vec![usize::MAX; n];
    let mut components = Vec::new();
    for start in 0..n {
        if comp_of[start] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut members = vec![start];
        comp_of[start] = id;
        let mut k = 0;
        while k < members.len() {
            for &j in &adj[members[k]] {
                if comp_of[j] == usize::MAX {
                    comp_of[j] = id;
                    members.push(j);
                }
            }
            k += 1;
        }
        components.push(classify_tree(&members, &adj, simple_roots)?);
    }
    Ok(CartanType::new(components))
}

fn classify_tree(
    members: &[usize],
    adj: &[Vec<usize>],
    roots: &[RootVec],
) -> Result<(Family, usize)> {
    let l = members.len();
    let edges: usize = members.iter().map(|&i| adj[i].len()).sum::<usize>() / 2;
    let bad = || {
        Error::Domain(format!(
            "component {:?} is not a simply laced Dynkin diagram",
            members.iter().map(|&i| roots[i]).collect::<Vec<_>>()
        ))
    };
    if edges + 1 != l {
        return Err(bad());
    }
    let branch: Vec<usize> = members
        .iter()
        .copied()
        .filter(|&i| adj[i].len() >= 3)
        .collect();
    match branch.as_slice() {
        [] => Ok((Family::A, l)),
        [b] if adj[*b].len() == 3 => {
            let mut arms: Vec<usize> = adj[*b]
                .iter()
                .map(|&start| arm_length(*b, start, adj))
                .collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => Ok((Family::D, l)),
                [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => Ok((Family::E, l)),
                _ => Err(bad()),
            }
        }
        _ => Err(bad()),
    }
}

fn arm_length(from: usize, start: usize, adj: &[Vec<usize>]) -> usize {
    let (mut prev, mut cur, mut len) = (from, start, 1);
    loop {
        let next: Vec<usize> = adj[cur].iter().copied().filter(|&x| x != prev).collect();
        match next.as_slice() {
            [n] => {
                prev = cur;
                cur = *n;
                len += 1;
            }
            _ => return len,
        }
    }
}

/// A closed subsystem Phi1 together with its chosen fundamental system
/// and the conditions cutting out the center of the corresponding
/// reductive subgroup of the simply connected group.
#[derive(Clone, Debug)]
pub struct SubsystemSpec {
    pub label: &'static str,
    pub pi1: Vec<RootVec>,
    /// Relation vectors over (t1..t7, t0): a relation `prod t_i^{c_i} = 1`
    /// is stored as `(c1..c7, 0)`.
    pub center_rows: Vec<[i64; RANK + 1]>,
    /// For each relation of the form `t_i = (monomial in the others)`, the
    /// 1-based coordinate `i` it is solved for; `None` for torsion relations
    /// such as `t7^2 = 1`.
    pub solved_for: Vec<Option<usize>>,
    pub mh: u32,
    pub cartan_type: CartanType,
}

impl SubsystemSpec {
    pub fn is_empty(&self) -> bool {
        self.pi1.is_empty()
    }
}

type Relation = ([i64; RANK + 1], Option<usize>);

/// Builds the relation vector for `prod t_i^{exps_i} = 1`. When the first
/// listed exponent is 1 the relation reads `t_i = ...` and is solved for
/// that coordinate.
fn rel(exps: &[(usize, i64)]) -> Relation {
    let mut v = [0i64; RANK + 1];
    for &(i, c) in exps {
        v[i - 1] += c;
    }
    let solved = exps.first().filter(|&&(_, c)| c == 1).map(|&(i, _)| i);
    (v, solved)
}

/// t_i = 1 for each listed i.
fn trivial(ids: &[usize]) -> Vec<Relation> {
    ids.iter().map(|&i| rel(&[(i, 1)])).collect()
}

struct RawRow {
    label: &'static str,
    pi: &'static [i32],
    rels: fn() -> Vec<Relation>,
    cartan: &'static [(Family, usize)],
}

use Family::{A, D, E};

// Fundamental systems: negative indices mean the negated named root.
const RAW: &[RawRow] = &[
    RawRow {
        label: "empty",
        pi: &[],
        rels: Vec::new,
        cartan: &[],
    },
    RawRow {
        label: "A1",
        pi: &[-0],
        rels: || trivial(&[1]),
        cartan: &[(A, 1)],
    },
    RawRow {
        label: "A1^2",
        pi: &[-0, 11],
        rels: || trivial(&[1, 6]),
        cartan: &[(A, 1), (A, 1)],
    },
    RawRow {
        label: "(A1^3)'",
        pi: &[-0, 10, 11],
        rels: || trivial(&[1, 4, 6]),
        cartan: &[(A, 1), (A, 1), (A, 1)],
    },
    RawRow {
        label: "(A1^3)''",
        pi: &[-0, 7, 11],
        rels: || {
            let mut r = trivial(&[1, 6]);
            r.push(rel(&[(7, 2)]));
            r
        },
        cartan: &[(A, 1), (A, 1), (A, 1)],
    },
    RawRow {
        label: "A3",
        pi: &[-0, 1, 3],
        rels: || trivial(&[1, 3, 4]),
        cartan: &[(A, 3)],
    },
    RawRow {
        label: "(A1^4)'",
        pi: &[-0, 7, 10, 11],
        rels: || {
            let mut r = trivial(&[1, 4, 6]);
            r.push(rel(&[(7, 2)]));
            r
        },
        cartan: &[(A, 1), (A, 1), (A, 1), (A, 1)],
    },
    RawRow {
        label: "(A1^4)''",
        pi: &[-0, 3, 10, 11],
        rels: || {
            let mut r = trivial(&[1, 4, 6]);
            r.push(rel(&[(3, 2)]));
            r
        },
        cartan: &[(A, 1), (A, 1), (A, 1), (A, 1)],
    },
    RawRow {
        label: "D4",
        pi: &[-0, 1, 3, 9],
        rels: || {
            let mut r = trivial(&[1, 3, 4]);
            r.push(rel(&[(7, 1), (5, -1)]));
            r
        },
        cartan: &[(D, 4)],
    },
    RawRow {
        label: "A1^5",
        pi: &[-0, 5, 7, 10, 11],
        rels: || {
            let mut r = trivial(&[1, 4, 6]);
            r.push(rel(&[(5, 2)]));
            r.push(rel(&[(7, 2)]));
            r
        },
        cartan: &[(A, 1), (A, 1), (A, 1), (A, 1), (A, 1)],
    },
    RawRow {
        label: "(A5)'",
        pi: &[-0, 1, 2, 3, 4],
        rels: || {
            let mut r = trivial(&[1, 3, 4]);
            r.push(rel(&[(5, 1), (2, 1)]));
            r.push(rel(&[(2, 2)]));
            r
        },
        cartan: &[(A, 5)],
    },
    RawRow {
        label: "(A5)''",
        pi: &[-0, 1, 3, 4, 5],
        rels: || {
            let mut r = trivial(&[1, 3, 4]);
            r.push(rel(&[(2, 1), (5, 1)]));
            r.push(rel(&[(6, 1), (5, -2)]));
            r
        },
        cartan: &[(A, 5)],
    },
    RawRow {
        label: "D5",
        pi: &[-0, 1, 3, 4, 9],
        rels: || {
            let mut r = trivial(&[1, 3, 4]);
            r.push(rel(&[(5, 1), (2, 1)]));
            r.push(rel(&[(7, 1), (2, 1)]));
            r
        },
        cartan: &[(D, 5)],
    },
    RawRow {
        label: "A3^2",
        pi: &[-0, 1, 3, 5, 6, 7],
        rels: || {
            let mut r = trivial(&[1, 3, 4]);
            r.push(rel(&[(5, 1), (7, -3)]));
            r.push(rel(&[(6, 1), (7, -2)]));
            r.push(rel(&[(7, 4)]));
            r
        },
        cartan: &[(A, 3), (A, 3)],
    },
    RawRow {
        label: "D6",
        pi: &[-0, 1, 2, 3, 4, 5],
        rels: || {
            let mut r = trivial(&[1, 3, 4, 6]);
            r.push(rel(&[(5, 1), (2, -1)]));
            r.push(rel(&[(2, 2)]));
            r
        },
        cartan: &[(D, 6)],
    },
    RawRow {
        label: "E6",
        pi: &[-0, 1, 3, 4, 5, 8],
        rels: || {
            let mut r = trivial(&[1, 3, 4]);
            r.push(rel(&[(2, 1), (5, 1)]));
            r.push(rel(&[(6, 1), (5, -2)]));
            r.push(rel(&[(7, 1), (5, -1)]));
            r
        },
        cartan: &[(E, 6)],
    },
    RawRow {
        label: "A7",
        pi: &[-0, 1, 3, 4, 5, 6, 7],
        rels: || {
            let mut r = trivial(&[1, 3, 4]);
            r.push(rel(&[(2, 1), (7, -1)]));
            r.push(rel(&[(5, 1), (7, -3)]));
            r.push(rel(&[(6, 1), (7, -2)]));
            r.push(rel(&[(7, 4)]));
            r
        },
        cartan: &[(A, 7)],
    },
    RawRow {
        label: "E7",
        pi: &[1, 2, 3, 4, 5, 6, 7],
        rels: || {
            let mut r = trivial(&[1, 3, 4, 6]);
            r.push(rel(&[(2, 1), (5, -1)]));
            r.push(rel(&[(5, 1), (7, -1)]));
            r.push(rel(&[(2, 2)]));
            r
        },
        cartan: &[(E, 7)],
    },
];

// `-0` is just 0 as an integer; the highest root always enters negated.
fn resolve(code: i32, first: bool) -> RootVec {
    if code == 0 {
        debug_assert!(first);
        return -R0;
    }
    if code < 0 {
        -named_root((-code) as usize)
    } else {
        named_root(code as usize)
    }
}

static CATALOG: Lazy<Vec<SubsystemSpec>> = Lazy::new(|| {
    RAW.iter()
        .map(|row| {
            let pi1: Vec<RootVec> = row
                .pi
                .iter()
                .enumerate()
                .map(|(k, &c)| resolve(c, k == 0))
                .collect();
            let cartan_type = CartanType::new(row.cartan.to_vec());
            let (center_rows, solved_for) = (row.rels)().into_iter().unzip();
            SubsystemSpec {
                label: row.label,
                mh: cartan_type.max_height(),
                pi1,
                center_rows,
                solved_for,
                cartan_type,
            }
        })
        .collect()
});

/// The 18 subsystems: the empty system and the 17 nonempty rows.
pub fn catalog() -> &'static [SubsystemSpec] {
    &CATALOG
}

pub fn find_subsystem(label: &str) -> Option<&'static SubsystemSpec> {
    catalog().iter().find(|s| s.label == label)
}

/// All roots of the subsystem generated by `pi1` (its W1-orbit), each
/// with its coordinates in the `pi1` basis.
pub fn subsystem_roots(pi1: &[RootVec]) -> BTreeMap<RootVec, Vec<i32>> {
    let e = e7();
    let n = pi1.len();
    let mut out: BTreeMap<RootVec, Vec<i32>> = BTreeMap::new();
    let mut frontier = Vec::new();
    for (i, r) in pi1.iter().enumerate() {
        let mut c = vec![0; n];
        c[i] = 1;
        out.insert(*r, c.clone());
        frontier.push((*r, c));
    }
    while let Some((r, c)) = frontier.pop() {
        for (i, s) in pi1.iter().enumerate() {
            let k = e.form(&r, s);
            let img = r.add_scaled(-(k as i8), s);
            if let btree_map::Entry::Vacant(slot) = out.entry(img) {
                let mut ci = c.clone();
                ci[i] -= k;
                slot.insert(ci.clone());
                frontier.push((img, ci));
            }
        }
    }
    out
}

/// Maximal height of a root of the subsystem, measured in its own basis.
pub fn computed_max_height(pi1: &[RootVec]) -> u32 {
    subsystem_roots(pi1)
        .values()
        .map(|c| c.iter().sum::<i32>())
        .max()
        .map_or(0, |h| h.max(0) as u32)
}

/// Roots orthogonal to every root of the subsystem spanned by `pi1`,
/// with a simple system for them.
pub fn orthogonal_system(pi1: &[RootVec]) -> (Vec<RootVec>, Vec<RootVec>) {
    let e = e7();
    let phi2: Vec<RootVec> = e
        .roots()
        .iter()
        .copied()
        .filter(|r| pi1.iter().all(|s| e.form(r, s) == 0))
        .collect();
    let pi2 = simple_system(&phi2);
    (phi2, pi2)
}

/// The simple roots of a closed root subsystem with respect to the
/// positivity inherited from E7: positive roots that are not a sum of
/// two positive roots of the subsystem.
pub fn simple_system(phi: &[RootVec]) -> Vec<RootVec> {
    let pos: Vec<RootVec> = phi.iter().copied().filter(|r| r.is_positive()).collect();
    let set: HashSet<RootVec> = pos.iter().copied().collect();
    let mut simple: Vec<RootVec> = pos
        .iter()
        .copied()
        .filter(|r| {
            !pos.iter()
                .any(|a| set.contains(&RootVec(std::array::from_fn(|i| r.0[i] - a.0[i]))))
        })
        .collect();
    simple.sort();
    simple
}
