//! The Weyl group W(E7) acting on the root lattice from the right.
//!
//! An element is stored as the indices (into the sorted root list) of the
//! images of r1..r7. Because roots are sorted lexicographically, comparing
//! these index tuples compares the 7x7 matrices `M_w` row by row, so the
//! derived ordering is the lexicographic order on matrices.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use log::{debug, info};
use num_bigint::BigInt;
use once_cell::sync::{Lazy, OnceCell};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::intlinalg::IntMat;
use crate::rootsys::{e7, subsystem_roots, RootVec, RANK, ROOT_COUNT};

pub const W_ORDER: usize = 2_903_040;

/// Coordinates of roots lie in [-4, 4].
const COORD_SPAN: usize = 9;
const NO_ROOT: u8 = u8::MAX;

/// Lookup tables shared by all group computations.
struct Tables {
    roots: Vec<[i8; RANK]>,
    /// Root index by coordinates offset into [0, 9)^7.
    by_coords: Vec<u8>,
    /// `simple_refl[i][k]` = index of `roots[k] * s_{i+1}`.
    simple_refl: [[u8; ROOT_COUNT]; RANK],
    /// Index of `-roots[k]`.
    neg: [u8; ROOT_COUNT],
    /// `sum[a * ROOT_COUNT + b]`: index of `roots[a] + roots[b]`, or `NO_ROOT`.
    sum: Vec<u8>,
    cartan: [[i8; RANK]; RANK],
}

static TABLES: Lazy<Tables> = Lazy::new(|| {
    let e = e7();
    let roots: Vec<[i8; RANK]> = e.roots().iter().map(|r| r.0).collect();
    let mut by_coords = vec![NO_ROOT; COORD_SPAN.pow(RANK as u32)];
    for (k, r) in roots.iter().enumerate() {
        by_coords[coord_key(r).expect("root coordinates in range")] = k as u8;
    }
    let mut simple_refl = [[0u8; ROOT_COUNT]; RANK];
    for (i, table) in simple_refl.iter_mut().enumerate() {
        for (k, r) in e.roots().iter().enumerate() {
            let img = e.reflect_simple(r, i + 1);
            table[k] = e.root_index(&img).expect("closed") as u8;
        }
    }
    let find = |c: &[i8; RANK]| coord_key(c).map_or(NO_ROOT, |k| by_coords[k]);
    let neg = std::array::from_fn(|k| find(&roots[k].map(|x| -x)));
    let mut sum = vec![NO_ROOT; ROOT_COUNT * ROOT_COUNT];
    for a in 0..ROOT_COUNT {
        for b in 0..ROOT_COUNT {
            let c: [i8; RANK] = std::array::from_fn(|i| roots[a][i] + roots[b][i]);
            sum[a * ROOT_COUNT + b] = find(&c);
        }
    }
    Tables {
        roots,
        by_coords,
        simple_refl,
        neg,
        sum,
        cartan: *e.cartan(),
    }
});

fn coord_key(c: &[i8; RANK]) -> Option<usize> {
    let mut key = 0usize;
    for &x in c {
        if !(-4..=4).contains(&x) {
            return None;
        }
        key = key * COORD_SPAN + (x + 4) as usize;
    }
    Some(key)
}

fn tables() -> &'static Tables {
    &TABLES
}

fn lookup(c: &[i8; RANK]) -> Option<u8> {
    coord_key(c)
        .map(|k| tables().by_coords[k])
        .filter(|&i| i != NO_ROOT)
}

/// An element of W(E7), identified with its matrix `M_w` whose i-th row
/// holds the coordinates of `r_i * w`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement([u8; RANK]);

impl WeylElement {
    pub fn identity() -> Self {
        static ID: Lazy<WeylElement> = Lazy::new(|| {
            WeylElement(std::array::from_fn(|i| {
                lookup(&RootVec::simple(i + 1).0).expect("simple root")
            }))
        });
        *ID
    }

    /// The central element acting as -1 on the root lattice.
    pub fn minus_identity() -> Self {
        WeylElement::identity().negate()
    }

    /// `(-1) * self`; -1 is central in W(E7).
    pub fn negate(&self) -> Self {
        let t = tables();
        WeylElement(self.0.map(|k| {
            let neg = t.roots[k as usize].map(|x| -x);
            lookup(&neg).expect("negation of a root")
        }))
    }

    pub fn from_raw(images: [u8; RANK]) -> Self {
        WeylElement(images)
    }

    pub fn raw(&self) -> [u8; RANK] {
        self.0
    }

    /// Builds an element from its matrix. The rows must be roots and the
    /// matrix must preserve the invariant form; since the E7 diagram has no
    /// symmetries, every such matrix lies in W.
    pub fn from_matrix(m: &[[i64; RANK]; RANK]) -> Result<Self> {
        let mut images = [0u8; RANK];
        for (i, row) in m.iter().enumerate() {
            let mut c = [0i8; RANK];
            for (dst, &x) in c.iter_mut().zip(row) {
                *dst =
                    i8::try_from(x).map_err(|_| Error::Domain(format!("row {i} is not a root")))?;
            }
            images[i] = lookup(&c)
                .ok_or_else(|| Error::Domain(format!("row {} {:?} is not a root", i + 1, c)))?;
        }
        let w = WeylElement(images);
        let cartan = tables().cartan;
        let form = |a: &[i8; RANK], b: &[i8; RANK]| -> i32 {
            let mut s = 0;
            for i in 0..RANK {
                for j in 0..RANK {
                    s += a[i] as i32 * cartan[i][j] as i32 * b[j] as i32;
                }
            }
            s
        };
        let rows: Vec<[i8; RANK]> = (0..RANK).map(|i| w.row(i)).collect();
        for i in 0..RANK {
            for j in 0..RANK {
                if form(&rows[i], &rows[j]) != cartan[i][j] as i32 {
                    return Err(Error::Domain(
                        "matrix does not preserve the root pairing".into(),
                    ));
                }
            }
        }
        Ok(w)
    }

    /// Coordinates of `r_{i+1} * w`.
    pub fn row(&self, i: usize) -> [i8; RANK] {
        tables().roots[self.0[i] as usize]
    }

    pub fn matrix(&self) -> [[i8; RANK]; RANK] {
        std::array::from_fn(|i| self.row(i))
    }

    pub fn to_intmat(&self) -> IntMat {
        IntMat::from_rows(&self.matrix().map(|r| r.map(i64::from)))
    }

    pub fn trace(&self) -> i32 {
        (0..RANK).map(|i| self.row(i)[i] as i32).sum()
    }

    pub fn is_identity(&self) -> bool {
        *self == WeylElement::identity()
    }

    /// Image of an arbitrary lattice vector.
    pub fn apply_vec(&self, v: &[i32; RANK]) -> [i32; RANK] {
        let mut out = [0i32; RANK];
        for (j, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let row = self.row(j);
            for (o, &x) in out.iter_mut().zip(&row) {
                *o += a * x as i32;
            }
        }
        out
    }

    /// Index of `roots[k] * self`.
    #[inline]
    fn apply_index(&self, k: u8) -> u8 {
        let t = tables();
        let r = &t.roots[k as usize];
        let mut out = [0i8; RANK];
        for (j, &a) in r.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let row = &t.roots[self.0[j] as usize];
            for (o, &x) in out.iter_mut().zip(row) {
                *o += a * x;
            }
        }
        lookup(&out).expect("Weyl elements permute roots")
    }

    pub fn apply(&self, r: &RootVec) -> Result<RootVec> {
        let k = lookup(&r.0).ok_or_else(|| Error::Domain(format!("{r} is not a root")))?;
        Ok(RootVec(tables().roots[self.apply_index(k) as usize]))
    }

    /// The action on the 126 roots as a permutation of root indices.
    pub fn root_permutation(&self) -> [u8; ROOT_COUNT] {
        std::array::from_fn(|k| self.apply_index(k as u8))
    }

    /// `self * other`: first `self`, then `other` (right action).
    pub fn mul(&self, other: &WeylElement) -> WeylElement {
        WeylElement(self.0.map(|k| other.apply_index(k)))
    }

    /// `self * s_i` for a simple reflection, by table lookup.
    pub fn mul_simple(&self, i: usize) -> WeylElement {
        let table = &tables().simple_refl[i - 1];
        WeylElement(self.0.map(|k| table[k as usize]))
    }

    pub fn inverse(&self) -> WeylElement {
        let perm = self.root_permutation();
        let mut inv = [0u8; ROOT_COUNT];
        for (k, &img) in perm.iter().enumerate() {
            inv[img as usize] = k as u8;
        }
        let id = WeylElement::identity();
        WeylElement(id.0.map(|k| inv[k as usize]))
    }

    /// `x^{-1} * self * x`
    pub fn conjugate_by(&self, x: &WeylElement) -> WeylElement {
        Conjugator::new(x).apply(self)
    }

    pub fn order(&self) -> u32 {
        let id = WeylElement::identity();
        let mut p = *self;
        let mut n = 1;
        while p != id {
            p = p.mul(self);
            n += 1;
        }
        n
    }

    /// Whether the element maps the set `roots` onto itself.
    pub fn stabilizes_set(&self, roots: &[u8]) -> bool {
        roots.iter().all(|&k| {
            let img = self.apply_index(k);
            roots.contains(&img)
        })
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W{:?}", self.matrix())
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..RANK {
            let row = self.row(i);
            write!(f, "[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x:>2}")?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Precomputed conjugation `w -> x^{-1} w x`.
enum Conjugator {
    /// Conjugation by the simple reflection s_{j+1}, by table lookups only.
    Simple(usize),
    General {
        x_perm: [u8; ROOT_COUNT],
        x_inv_images: [u8; RANK],
    },
}

impl Conjugator {
    fn new(x: &WeylElement) -> Self {
        if let Some(j) = (1..=RANK).find(|&j| simple_reflection(j) == *x) {
            return Conjugator::Simple(j - 1);
        }
        Conjugator::General {
            x_perm: x.root_permutation(),
            x_inv_images: x.inverse().0,
        }
    }

    #[inline]
    fn apply(&self, w: &WeylElement) -> WeylElement {
        match self {
            Conjugator::Simple(j) => {
                let t = tables();
                let j = *j;
                let refl = &t.simple_refl[j];
                // r_i s = r_i - <r_i, r_j> r_j, then apply w, then s again.
                WeylElement(std::array::from_fn(|i| {
                    let k = if i == j {
                        t.neg[w.0[j] as usize]
                    } else if t.cartan[i][j] == -1 {
                        t.sum[w.0[i] as usize * ROOT_COUNT + w.0[j] as usize]
                    } else {
                        w.0[i]
                    };
                    refl[k as usize]
                }))
            }
            // r_i (x^{-1} w x) = ((r_i x^{-1}) w) x
            Conjugator::General {
                x_perm,
                x_inv_images,
            } => WeylElement(x_inv_images.map(|k| x_perm[w.apply_index(k) as usize])),
        }
    }
}

pub fn simple_reflection(i: usize) -> WeylElement {
    assert!(
        (1..=RANK).contains(&i),
        "simple reflection index {i} out of range"
    );
    WeylElement::identity().mul_simple(i)
}

/// Reflection in the hyperplane orthogonal to the root `r`.
pub fn reflection(r: &RootVec) -> Result<WeylElement> {
    let e = e7();
    if !e.is_root(r) {
        return Err(Error::Domain(format!("{r} is not a root")));
    }
    let images = std::array::from_fn(|i| {
        let img = e.reflect(&RootVec::simple(i + 1), r);
        lookup(&img.0).expect("reflection permutes roots")
    });
    Ok(WeylElement(images))
}

/// A subgroup of W given by generators and, when materialized, its sorted
/// element list.
#[derive(Clone)]
pub struct SubgroupHandle {
    pub generators: Vec<WeylElement>,
    elements: Option<Arc<Vec<WeylElement>>>,
    pub order: BigInt,
}

impl fmt::Debug for SubgroupHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SubgroupHandle")
            .field("order", &self.order)
            .field("generators", &self.generators.len())
            .finish()
    }
}

impl SubgroupHandle {
    fn from_sorted(elements: Vec<WeylElement>, generators: Vec<WeylElement>) -> Self {
        SubgroupHandle {
            generators,
            order: BigInt::from(elements.len()),
            elements: Some(Arc::new(elements)),
        }
    }

    /// Materializes the subgroup generated by `generators`.
    pub fn generated_by(generators: Vec<WeylElement>) -> Self {
        let mut elements = closure(&generators);
        elements.sort_unstable();
        Self::from_sorted(elements, generators)
    }

    pub fn elements(&self) -> Option<&[WeylElement]> {
        self.elements.as_deref().map(Vec::as_slice)
    }

    fn materialized(&self) -> Result<&[WeylElement]> {
        self.elements()
            .ok_or_else(|| Error::Domain("subgroup is not materialized".into()))
    }

    pub fn len(&self) -> usize {
        self.elements().map_or(0, <[_]>::len)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, w: &WeylElement) -> bool {
        self.elements()
            .is_some_and(|els| els.binary_search(w).is_ok())
    }

    /// Index of `w` in the sorted element list.
    pub fn position(&self, w: &WeylElement) -> Option<usize> {
        self.elements()?.binary_search(w).ok()
    }
}

fn closure(generators: &[WeylElement]) -> Vec<WeylElement> {
    let id = WeylElement::identity();
    let mut seen: HashSet<WeylElement> = HashSet::from([id]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = x.mul(g);
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen.into_iter().collect()
}

/// A small generating set for a materialized subgroup, chosen greedily
/// in sorted order so the result is deterministic.
fn pick_generators(elements: &[WeylElement]) -> Vec<WeylElement> {
    let mut gens = Vec::new();
    let mut span: HashSet<WeylElement> = HashSet::from([WeylElement::identity()]);
    for x in elements {
        if span.len() == elements.len() {
            break;
        }
        if span.contains(x) {
            continue;
        }
        gens.push(*x);
        span = closure(&gens).into_iter().collect();
    }
    gens
}

/// Enumerates W(E7) by breadth-first closure over the simple reflections.
pub fn enumerate_w() -> Vec<WeylElement> {
    let id = WeylElement::identity();
    let mut seen: HashSet<WeylElement> = HashSet::with_capacity(W_ORDER);
    seen.insert(id);
    let mut frontier = vec![id];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for i in 1..=RANK {
                let y = x.mul_simple(i);
                if seen.insert(y) {
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    let mut all: Vec<WeylElement> = seen.into_iter().collect();
    all.sort_unstable();
    all
}

const CACHE_MAGIC: &[u8; 8] = b"E7WEYLGR";
const CACHE_VERSION: u32 = 1;

/// Environment variable overriding the Weyl cache location.
pub const CACHE_ENV: &str = "E7SPEC_WEYL_CACHE";

pub fn default_cache_path() -> Option<PathBuf> {
    if let Some(p) = std::env::var_os(CACHE_ENV) {
        return Some(PathBuf::from(p));
    }
    dirs::cache_dir().map(|d| d.join("e7spec").join("weyl-e7-v1.bin"))
}

fn write_cache(path: &Path, elements: &[WeylElement]) -> std::io::Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    {
        let mut f = std::io::BufWriter::new(fs::File::create(&tmp)?);
        f.write_all(CACHE_MAGIC)?;
        f.write_all(&CACHE_VERSION.to_le_bytes())?;
        f.write_all(&(elements.len() as u64).to_le_bytes())?;
        for w in elements {
            f.write_all(&w.0)?;
        }
        f.flush()?;
    }
    fs::rename(&tmp, path)
}

/// Reads a cache file; `None` when absent or failing validation.
fn read_cache(path: &Path) -> Option<Vec<WeylElement>> {
    let mut f = fs::File::open(path).ok()?;
    let mut header = [0u8; 20];
    f.read_exact(&mut header).ok()?;
    if &header[..8] != CACHE_MAGIC
        || u32::from_le_bytes(header[8..12].try_into().ok()?) != CACHE_VERSION
        || u64::from_le_bytes(header[12..20].try_into().ok()?) != W_ORDER as u64
    {
        return None;
    }
    let mut raw = Vec::with_capacity(W_ORDER * RANK);
    f.read_to_end(&mut raw).ok()?;
    if raw.len() != W_ORDER * RANK {
        return None;
    }
    let elements: Vec<WeylElement> = raw
        .chunks_exact(RANK)
        .map(|c| WeylElement(c.try_into().expect("chunk size")))
        .collect();
    let valid = elements.windows(2).all(|w| w[0] < w[1])
        && elements
            .iter()
            .all(|w| w.0.iter().all(|&k| (k as usize) < ROOT_COUNT))
        && elements.binary_search(&WeylElement::identity()).is_ok();
    valid.then_some(elements)
}

/// W(E7), materialized.
pub struct WeylGroup {
    handle: SubgroupHandle,
}

impl WeylGroup {
    /// Loads the element list from `cache` if valid, otherwise enumerates
    /// and (best effort) writes the cache.
    pub fn load_or_enumerate(cache: Option<&Path>) -> Self {
        if let Some(path) = cache {
            if let Some(elements) = read_cache(path) {
                debug!("loaded W(E7) from {}", path.display());
                return Self::from_elements(elements);
            }
        }
        info!("enumerating W(E7)");
        let elements = enumerate_w();
        if let Some(path) = cache {
            if let Err(e) = write_cache(path, &elements) {
                debug!("could not write Weyl cache {}: {e}", path.display());
            }
        }
        Self::from_elements(elements)
    }

    fn from_elements(elements: Vec<WeylElement>) -> Self {
        let gens = (1..=RANK).map(simple_reflection).collect();
        WeylGroup {
            handle: SubgroupHandle::from_sorted(elements, gens),
        }
    }

    pub fn handle(&self) -> &SubgroupHandle {
        &self.handle
    }

    pub fn elements(&self) -> &[WeylElement] {
        self.handle.elements().expect("materialized")
    }
}

static WEYL: OnceCell<WeylGroup> = OnceCell::new();

/// Sets the cache path used by [`weyl_group`]. Returns false if the group
/// was already initialized.
pub fn init_weyl_group(cache: Option<&Path>) -> bool {
    let mut fresh = false;
    WEYL.get_or_init(|| {
        fresh = true;
        WeylGroup::load_or_enumerate(cache)
    });
    fresh
}

/// The process-wide W(E7), enumerated (or loaded) on first use.
pub fn weyl_group() -> &'static WeylGroup {
    WEYL.get_or_init(|| WeylGroup::load_or_enumerate(default_cache_path().as_deref()))
}

fn root_indices(roots: &[RootVec]) -> Result<Vec<u8>> {
    roots
        .iter()
        .map(|r| lookup(&r.0).ok_or_else(|| Error::Domain(format!("{r} is not a root"))))
        .collect()
}

fn subgroup_from_filter(
    within: &SubgroupHandle,
    keep: impl Fn(&WeylElement) -> bool + Sync,
) -> Result<SubgroupHandle> {
    let els = within.materialized()?;
    let kept: Vec<WeylElement> = els.par_iter().copied().filter(|w| keep(w)).collect();
    if kept.len() == els.len() {
        return Ok(within.clone());
    }
    let gens = pick_generators(&kept);
    Ok(SubgroupHandle::from_sorted(kept, gens))
}

/// All `w` in `within` with `roots * w = roots` as a set.
pub fn setwise_stabilizer(roots: &[RootVec], within: &SubgroupHandle) -> Result<SubgroupHandle> {
    let idx = root_indices(roots)?;
    subgroup_from_filter(within, |w| w.stabilizes_set(&idx))
}

/// All `w` in `within` fixing each listed root.
pub fn pointwise_stabilizer(roots: &[RootVec], within: &SubgroupHandle) -> Result<SubgroupHandle> {
    let idx = root_indices(roots)?;
    subgroup_from_filter(within, |w| idx.iter().all(|&k| w.apply_index(k) == k))
}

/// The reflection subgroup generated by reflections in the given roots.
pub fn reflection_subgroup(roots: &[RootVec]) -> Result<SubgroupHandle> {
    let gens = roots.iter().map(reflection).collect::<Result<Vec<_>>>()?;
    Ok(SubgroupHandle::generated_by(gens))
}

/// Offsets into a sorted element list keyed by the first two images, so
/// lookups only search a short contiguous run.
struct PrefixIndex {
    starts: Vec<u32>,
}

impl PrefixIndex {
    fn key(w: &WeylElement) -> usize {
        w.0[0] as usize * ROOT_COUNT + w.0[1] as usize
    }

    fn new(sorted: &[WeylElement]) -> Self {
        let mut starts = vec![0u32; ROOT_COUNT * ROOT_COUNT + 1];
        for w in sorted {
            starts[Self::key(w) + 1] += 1;
        }
        for k in 1..starts.len() {
            starts[k] += starts[k - 1];
        }
        PrefixIndex { starts }
    }

    fn find(&self, sorted: &[WeylElement], w: &WeylElement) -> Option<usize> {
        let k = Self::key(w);
        let (lo, hi) = (self.starts[k] as usize, self.starts[k + 1] as usize);
        sorted[lo..hi].binary_search(w).ok().map(|i| lo + i)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClass {
    /// Lexicographically least matrix in the class.
    pub representative: WeylElement,
    pub size: usize,
}

/// Conjugacy classes of a materialized subgroup, ordered by representative.
pub fn conjugacy_classes(g: &SubgroupHandle) -> Result<Vec<ConjClass>> {
    let els = g.materialized()?;
    let index = PrefixIndex::new(els);
    let conj: Vec<Conjugator> = g.generators.iter().map(Conjugator::new).collect();
    let mut seen = vec![false; els.len()];
    let mut classes = Vec::new();
    let mut stack = Vec::new();
    for start in 0..els.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        stack.push(start);
        let mut size = 0;
        while let Some(i) = stack.pop() {
            size += 1;
            for c in &conj {
                let y = c.apply(&els[i]);
                let j = index.find(els, &y).ok_or_else(|| {
                    Error::Structural("subgroup not closed under conjugation".into())
                })?;
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        // Elements are visited in sorted order, so `start` is the class minimum.
        classes.push(ConjClass {
            representative: els[start],
            size,
        });
    }
    Ok(classes)
}

/// Longest element of the reflection group with simple system `pi1`,
/// built by extending a reduced word until every positive root of the
/// subsystem is sent to a negative one.
pub fn longest_element(pi1: &[RootVec]) -> Result<WeylElement> {
    let sub = subsystem_roots(pi1);
    let is_pos = |r: &RootVec| -> Result<bool> {
        sub.get(r)
            .map(|c| c.iter().all(|&x| x >= 0))
            .ok_or_else(|| Error::Structural(format!("{r} left the subsystem")))
    };
    let positive: Vec<RootVec> = sub
        .iter()
        .filter(|(_, c)| c.iter().all(|&x| x >= 0))
        .map(|(r, _)| *r)
        .collect();
    let refl = pi1.iter().map(reflection).collect::<Result<Vec<_>>>()?;
    let inversions = |w: &WeylElement| -> Result<usize> {
        let mut n = 0;
        for r in &positive {
            if !is_pos(&w.apply(r)?)? {
                n += 1;
            }
        }
        Ok(n)
    };
    let mut w = WeylElement::identity();
    let mut len = 0;
    while len < positive.len() {
        let mut grown = false;
        for s in &refl {
            let cand = w.mul(s);
            let l = inversions(&cand)?;
            if l > len {
                w = cand;
                len = l;
                grown = true;
                break;
            }
        }
        if !grown {
            return Err(Error::Structural("reduced word cannot be extended".into()));
        }
    }
    Ok(w)
}

/// `-w0(pi1)`: the image of -1 under N_W(W1) -> N_W(Pi1).
pub fn theta_minus_one(pi1: &[RootVec]) -> Result<WeylElement> {
    Ok(longest_element(pi1)?.negate())
}

/// Signed cycle type of an element of a hyperoctahedral group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedCycleType {
    /// (length, positive), sorted by decreasing length, positive first.
    pub cycles: Vec<(usize, bool)>,
}

impl SignedCycleType {
    pub fn new(mut cycles: Vec<(usize, bool)>) -> Self {
        cycles.sort_by(|a, b| b.0.cmp(&a.0).then(b.1.cmp(&a.1)));
        SignedCycleType { cycles }
    }

    pub fn negative_count(&self) -> usize {
        self.cycles.iter().filter(|c| !c.1).count()
    }

    /// Parses e.g. "[4,-1,-1]" (a leading minus marks a negative cycle).
    pub fn parse(s: &str) -> Option<Self> {
        let inner = s.trim().strip_prefix('[')?.strip_suffix(']')?;
        let cycles = inner
            .split(',')
            .map(|t| {
                let t = t.trim();
                match t.strip_prefix('-') {
                    Some(n) => n.parse().ok().map(|n| (n, false)),
                    None => t.parse().ok().map(|n| (n, true)),
                }
            })
            .collect::<Option<Vec<_>>>()?;
        Some(SignedCycleType::new(cycles))
    }
}

impl fmt::Display for SignedCycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, (l, pos)) in self.cycles.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if !pos {
                write!(f, "-")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "]")
    }
}

/// Doubled standard basis vectors `2 e_1, ..., 2 e_n` of a D_n system with
/// simple roots `pi2`, written in E7 coordinates.
fn d_type_basis(pi2: &[RootVec]) -> Result<Vec<[i32; RANK]>> {
    let e = e7();
    let n = pi2.len();
    let not_d = || Error::Domain(format!("{pi2:?} is not a simple system of type D_n"));
    if n < 4 {
        return Err(not_d());
    }
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| j != i && e.form(&pi2[i], &pi2[j]) == -1)
                .collect()
        })
        .collect();
    let branch = (0..n).find(|&i| adj[i].len() == 3).ok_or_else(not_d)?;
    // Two leaf arms and one long arm (for D4 every arm is a leaf).
    let mut leaves: Vec<usize> = adj[branch]
        .iter()
        .copied()
        .filter(|&j| adj[j].len() == 1)
        .collect();
    leaves.sort_unstable();
    if leaves.len() < 2 {
        return Err(not_d());
    }
    let long_start = *adj[branch]
        .iter()
        .find(|&&j| j != leaves[0] && j != leaves[1])
        .ok_or_else(not_d)?;
    // chain alpha_1..alpha_{n-2}, ending at the branch node
    let mut chain = vec![branch];
    let (mut prev, mut cur) = (branch, long_start);
    loop {
        chain.push(cur);
        let next: Vec<usize> = adj[cur].iter().copied().filter(|&x| x != prev).collect();
        match next.as_slice() {
            [] => break,
            [x] => {
                prev = cur;
                cur = *x;
            }
            _ => return Err(not_d()),
        }
    }
    chain.reverse();
    if chain.len() != n - 2 {
        return Err(not_d());
    }
    let alpha: Vec<[i32; RANK]> = chain
        .iter()
        .chain(&leaves[..2])
        .map(|&i| pi2[i].0.map(i32::from))
        .collect();
    let add = |acc: &mut [i32; RANK], k: i32, v: &[i32; RANK]| {
        for (a, x) in acc.iter_mut().zip(v) {
            *a += k * x;
        }
    };
    let mut basis = Vec::with_capacity(n);
    for k in 0..n - 2 {
        let mut v = [0i32; RANK];
        for a in &alpha[k..n - 2] {
            add(&mut v, 2, a);
        }
        add(&mut v, 1, &alpha[n - 2]);
        add(&mut v, 1, &alpha[n - 1]);
        basis.push(v);
    }
    let mut v = [0i32; RANK];
    add(&mut v, 1, &alpha[n - 2]);
    add(&mut v, 1, &alpha[n - 1]);
    basis.push(v);
    let mut v = [0i32; RANK];
    add(&mut v, 1, &alpha[n - 1]);
    add(&mut v, -1, &alpha[n - 2]);
    basis.push(v);
    Ok(basis)
}

/// Signed cycle type of `w` acting on the orthogonal coordinates of the
/// D_n system with simple roots `pi2`.
pub fn signed_cycle_type(w: &WeylElement, pi2: &[RootVec]) -> Result<SignedCycleType> {
    let basis = d_type_basis(pi2)?;
    let n = basis.len();
    let mut image = Vec::with_capacity(n);
    for b in &basis {
        let img = w.apply_vec(b);
        let neg = img.map(|x| -x);
        let hit = basis
            .iter()
            .position(|c| *c == img)
            .map(|j| (j, true))
            .or_else(|| basis.iter().position(|c| *c == neg).map(|j| (j, false)));
        image.push(hit.ok_or_else(|| {
            Error::Domain(
                "element does not act as a signed permutation on the D_n coordinates".into(),
            )
        })?);
    }
    let mut seen = vec![false; n];
    let mut cycles = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let (mut len, mut sign, mut i) = (0, true, start);
        while !seen[i] {
            seen[i] = true;
            len += 1;
            sign ^= !image[i].1;
            i = image[i].0;
        }
        cycles.push((len, sign));
    }
    Ok(SignedCycleType::new(cycles))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{find_subsystem, orthogonal_system, R0, R12};

    #[test]
    fn simple_reflections() {
        let s1 = simple_reflection(1);
        assert!(s1.mul(&s1).is_identity());
        assert_eq!(s1.apply(&RootVec::simple(1)).unwrap(), -RootVec::simple(1));
        assert_eq!(s1.apply(&RootVec::simple(2)).unwrap(), RootVec::simple(2));
        assert_eq!(reflection(&RootVec::simple(1)).unwrap(), s1);
        assert_eq!(s1.order(), 2);
    }

    #[test]
    fn reflection_in_r12_and_minus_r0() {
        let s = reflection(&R12).unwrap();
        let perm = s.root_permutation();
        let mut sorted = perm.to_vec();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..ROOT_COUNT as u8).collect::<Vec<_>>());
        assert_eq!(s.apply(&R12).unwrap(), -R12);
        let t = reflection(&-R0).unwrap();
        for r in e7().roots() {
            if e7().form(r, &R0) == 0 {
                assert_eq!(t.apply(r).unwrap(), *r);
            }
        }
        assert!(reflection(&RootVec::new([1, 1, 0, 0, 0, 0, 0])).is_err());
    }

    #[test]
    fn inverse_and_conjugation() {
        let a = simple_reflection(1)
            .mul(&simple_reflection(3))
            .mul(&simple_reflection(4));
        assert!(a.mul(&a.inverse()).is_identity());
        let b = simple_reflection(2).mul(&simple_reflection(7));
        let c = a.conjugate_by(&b);
        assert_eq!(c, b.inverse().mul(&a).mul(&b));
        assert_eq!(a.order(), c.order());
    }

    #[test]
    fn from_matrix_roundtrip_and_rejects() {
        let w = simple_reflection(4).mul(&simple_reflection(2));
        let m = w.matrix().map(|r| r.map(i64::from));
        assert_eq!(WeylElement::from_matrix(&m).unwrap(), w);
        let mut bad = m;
        bad[0] = [0, 1, 0, 0, 0, 0, 0];
        assert!(WeylElement::from_matrix(&bad).is_err());
    }

    #[test]
    fn minus_identity_is_longest() {
        let pi: Vec<RootVec> = (1..=RANK).map(RootVec::simple).collect();
        assert_eq!(longest_element(&pi).unwrap(), WeylElement::minus_identity());
        assert!(theta_minus_one(&pi).unwrap().is_identity());
    }

    #[test]
    fn longest_rank_one_and_a2() {
        assert_eq!(longest_element(&[-R0]).unwrap(), reflection(&-R0).unwrap());
        let a2 = [RootVec::simple(1), RootVec::simple(3)];
        let w0 = longest_element(&a2).unwrap();
        assert_eq!(w0.order(), 2);
        // On A2, w0 swaps r1 and -r3 rather than negating.
        assert_eq!(w0.apply(&RootVec::simple(1)).unwrap(), -RootVec::simple(3));
    }

    #[test]
    fn signed_cycle_types_on_d6() {
        let a1 = find_subsystem("A1").unwrap();
        let (_, pi2) = orthogonal_system(&a1.pi1);
        let id = signed_cycle_type(&WeylElement::identity(), &pi2).unwrap();
        assert_eq!(id.to_string(), "[1,1,1,1,1,1]");
        let minus = signed_cycle_type(&WeylElement::minus_identity(), &pi2).unwrap();
        assert_eq!(minus.to_string(), "[-1,-1,-1,-1,-1,-1]");
        assert_eq!(
            SignedCycleType::parse("[4,-1,-1]").unwrap().to_string(),
            "[4,-1,-1]"
        );
        // A simple reflection of D6 is a transposition or a double sign change.
        for r in &pi2 {
            let t = signed_cycle_type(&reflection(r).unwrap(), &pi2).unwrap();
            assert!(
                t.to_string() == "[2,1,1,1,1]" || t.to_string() == "[1,1,1,1,-1,-1]",
                "{t}"
            );
        }
        // s_1 does not stabilize the span of r2..r7.
        assert!(signed_cycle_type(&simple_reflection(1), &pi2).is_err());
    }
}
