//! Centers of reductive subgroups twisted by `σ∘w`.
//!
//! Additive coordinates `(t1..t7, t0)` live in `(Q/Z)^8`; an element `h(t)`
//! of the torus lies in `H_w` exactly when `(t, t0) N ≡ 0` for the bordered
//! matrix `N` assembled here. The group is read off the Smith normal form.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{is_prime, log_exact, strip_prime};
use crate::error::{Error, Result};
use crate::intlinalg::{column_lattice_contains, det, snf, IntMat};
use crate::rootsys::{subsystem_roots, RootVec, SubsystemSpec, RANK};
use crate::weyl::WeylElement;

/// Coordinates of the central involution: `z = h2(-1) h5(-1) h7(-1)`.
pub const Z_BORDER: [i64; RANK] = [0, 1, 0, 0, 1, 0, 1];

#[derive(Clone, Debug)]
pub struct TorusProblem<'a> {
    pub phi1: &'a SubsystemSpec,
    pub w: WeylElement,
    pub q: BigInt,
    pub p: u64,
}

impl<'a> TorusProblem<'a> {
    pub fn new(phi1: &'a SubsystemSpec, w: WeylElement, q: BigInt, p: u64) -> Result<Self> {
        let pr = TorusProblem { phi1, w, q, p };
        pr.validate()?;
        Ok(pr)
    }

    pub fn validate(&self) -> Result<()> {
        if !is_prime(self.p) {
            return Err(Error::Domain(format!("{} is not prime", self.p)));
        }
        if self.p == 2 {
            return Err(Error::Unsupported("characteristic 2".into()));
        }
        if log_exact(&self.q, self.p).is_none() {
            return Err(Error::Domain(format!(
                "{} is not a power of {}",
                self.q, self.p
            )));
        }
        if !stabilizes_subsystem(self.phi1, &self.w) {
            return Err(Error::Domain(format!(
                "w does not stabilize the subsystem {}",
                self.phi1.label
            )));
        }
        Ok(())
    }
}

/// Whether `w` maps the root subsystem spanned by `phi1.pi1` onto itself.
pub fn stabilizes_subsystem(phi1: &SubsystemSpec, w: &WeylElement) -> bool {
    let roots: HashSet<RootVec> = subsystem_roots(&phi1.pi1).into_keys().collect();
    roots
        .iter()
        .all(|r| w.apply(r).map(|img| roots.contains(&img)).unwrap_or(false))
}

/// The matrix `[[qM - E, 0, C], [b, 2, 0]]` with rows `t_1..t_n, t0`.
///
/// Without a border the `t0` row and the corner column are omitted. Each
/// relation is a column over the `t` rows, padded with zeros.
pub fn bordered_system(
    m: &IntMat,
    q: &BigInt,
    border: Option<&[i64]>,
    relations: &[Vec<i64>],
) -> IntMat {
    assert!(m.is_square());
    let n = m.rows();
    let rows = n + usize::from(border.is_some());
    let cols = rows + relations.len();
    let mut out = IntMat::zeros(rows, cols);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = q * &m[(i, j)];
        }
        out[(i, i)] -= 1;
    }
    if let Some(b) = border {
        assert_eq!(b.len(), n);
        for (j, &x) in b.iter().enumerate() {
            out[(n, j)] = BigInt::from(x);
        }
        out[(n, n)] = BigInt::from(2);
    }
    for (k, rel) in relations.iter().enumerate() {
        assert!(rel.len() <= rows);
        for (i, &c) in rel.iter().enumerate() {
            out[(i, rows + k)] = BigInt::from(c);
        }
    }
    out
}

fn center_relations(phi1: &SubsystemSpec) -> Vec<Vec<i64>> {
    phi1.center_rows.iter().map(|r| r.to_vec()).collect()
}

/// The `8 x (8 + #relations)` matrix of the problem.
pub fn assemble(problem: &TorusProblem) -> Result<IntMat> {
    problem.validate()?;
    Ok(bordered_system(
        &problem.w.to_intmat(),
        &problem.q,
        Some(&Z_BORDER),
        &center_relations(problem.phi1),
    ))
}

/// A finite abelian group `⊕ Z/d_i` together with the change of basis
/// from the coordinates it was computed in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    /// Invariant factors, each `> 1`, with `d_i | d_{i+1}`.
    pub factors: Vec<BigInt>,
    /// An element `y` has cyclic coordinate `(y * transform)_k * scales_k`
    /// on every column; columns listed in `keep` carry the factors.
    transform: IntMat,
    scales: Vec<BigInt>,
    keep: Vec<usize>,
    /// Order of the removed p-torsion; 1 when nothing was removed.
    pub p_part: BigInt,
}

/// Coordinates of one element in the cyclic basis, reduced modulo the factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementCoords {
    pub coords: Vec<BigInt>,
}

impl ElementCoords {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup {
            factors: Vec::new(),
            transform: IntMat::zeros(0, 0),
            scales: Vec::new(),
            keep: Vec::new(),
            p_part: BigInt::one(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn order(&self) -> BigInt {
        self.factors.iter().product()
    }

    pub fn exponent(&self) -> BigInt {
        self.factors.last().cloned().unwrap_or_else(BigInt::one)
    }

    pub fn transform(&self) -> &IntMat {
        &self.transform
    }

    /// Coordinates of the element `numer / denom` (a row vector over the
    /// original coordinates). Fails if it is not an element of the group.
    pub fn coordinates(&self, numer: &[BigInt], denom: &BigInt) -> Result<ElementCoords> {
        if numer.len() != self.transform.rows() {
            return Err(Error::Domain(
                "coordinate vector has the wrong length".into(),
            ));
        }
        let mut raw = Vec::with_capacity(self.scales.len());
        for (k, scale) in self.scales.iter().enumerate() {
            let mut acc = BigInt::zero();
            for (i, x) in numer.iter().enumerate() {
                acc += x * &self.transform[(i, k)];
            }
            acc *= scale;
            let (c, r) = acc.div_rem(denom);
            if !r.is_zero() {
                return Err(Error::Domain(
                    "vector is not an element of the group".into(),
                ));
            }
            raw.push(c);
        }
        let coords = self
            .keep
            .iter()
            .zip(&self.factors)
            .map(|(&k, d)| raw[k].mod_floor(d))
            .collect();
        Ok(ElementCoords { coords })
    }

    /// Exponent of the quotient by the cyclic subgroup generated by `x`.
    pub fn quotient_exponent(&self, x: &ElementCoords) -> BigInt {
        quotient_by(self, x)
            .last()
            .cloned()
            .unwrap_or_else(BigInt::one)
    }

    /// Order of `x` in the group.
    pub fn element_order(&self, x: &ElementCoords) -> BigInt {
        self.factors
            .iter()
            .zip(&x.coords)
            .fold(BigInt::one(), |acc, (d, c)| acc.lcm(&(d / d.gcd(c))))
    }
}

/// Invariant factors (`> 1`) of `G / <x>`.
pub fn quotient_by(g: &AbelianGroup, x: &ElementCoords) -> Vec<BigInt> {
    let k = g.factors.len();
    if k == 0 {
        return Vec::new();
    }
    let mut m = IntMat::zeros(k + 1, k);
    for (i, d) in g.factors.iter().enumerate() {
        m[(i, i)] = d.clone();
        m[(k, i)] = x.coords[i].clone();
    }
    snf(&m)
        .invariant_factors()
        .into_iter()
        .filter(|d| !d.is_one())
        .collect()
}

/// The group `{y in (Q/Z)^r : y n in Z^c} / Z^r` with its p-part removed.
pub fn group_structure(n: &IntMat, p: u64) -> Result<AbelianGroup> {
    let r = snf(n);
    let d = r.invariant_factors();
    if d.len() < n.rows() || d.iter().any(Zero::is_zero) {
        return Err(Error::Structural(format!(
            "solution group is infinite (rank {} < {})",
            r.rank(),
            n.rows()
        )));
    }
    let mut factors = Vec::new();
    let mut keep = Vec::new();
    let mut p_part = BigInt::one();
    for (k, dk) in d.iter().enumerate() {
        let stripped = strip_prime(dk, p);
        p_part *= dk / &stripped;
        if !stripped.is_one() {
            factors.push(stripped);
            keep.push(k);
        }
    }
    Ok(AbelianGroup {
        factors,
        transform: r.u_inv,
        scales: d,
        keep,
        p_part,
    })
}

/// The central involution as `(numerators, denominator)` over `(t1..t7, t0)`.
pub fn z_element() -> (Vec<BigInt>, BigInt) {
    let mut numer: Vec<BigInt> = Z_BORDER.iter().map(|&x| BigInt::from(x)).collect();
    numer.push(BigInt::zero());
    (numer, BigInt::from(2))
}

/// `H_w` and the coordinates of `z` inside it.
pub fn structure(problem: &TorusProblem) -> Result<(AbelianGroup, ElementCoords)> {
    let n = assemble(problem)?;
    let g = group_structure(&n, problem.p)?;
    let (numer, denom) = z_element();
    let z = g
        .coordinates(&numer, &denom)
        .map_err(|_| Error::Structural("z does not lie in H_w".into()))?;
    Ok((g, z))
}

/// Exponent of `H_w / <z>`.
pub fn exponent_mod_z(problem: &TorusProblem) -> Result<BigInt> {
    let (g, z) = structure(problem)?;
    Ok(g.quotient_exponent(&z))
}

/// The system after solving the relations `t_i = (monomial)` for `t_i`
/// and dropping the corresponding rows and columns.
#[derive(Clone, Debug)]
pub struct ReducedSystem {
    /// 1-based indices of the surviving `t` coordinates.
    pub kept: Vec<usize>,
    /// The reduced `qM - E` block.
    pub x: IntMat,
    /// The reduced border row.
    pub y: Vec<BigInt>,
    /// The full reduced bordered matrix, with any torsion relations left over.
    pub matrix: IntMat,
}

impl ReducedSystem {
    /// `|H_w|` from the reduced matrix.
    pub fn order(&self, p: u64) -> Result<BigInt> {
        group_structure(&self.matrix, p).map(|g| g.order())
    }

    /// The p'-part of `|det|` when no torsion relation is left over.
    pub fn det_order(&self, p: u64) -> Result<Option<BigInt>> {
        if !self.matrix.is_square() {
            return Ok(None);
        }
        Ok(Some(strip_prime(&det(&self.matrix)?.abs(), p)))
    }
}

pub fn eliminate_center(problem: &TorusProblem) -> Result<ReducedSystem> {
    let mut n = assemble(problem)?;
    let rows = RANK + 1;
    let mut alive_rows: Vec<bool> = vec![true; rows];
    let mut alive_cols: Vec<bool> = vec![true; n.cols()];
    for (k, solved) in problem.phi1.solved_for.iter().enumerate() {
        let Some(i) = *solved else { continue };
        let i = i - 1;
        let col = rows + k;
        let eps = n[(i, col)].clone();
        if !alive_rows[i] || !eps.abs().is_one() {
            return Err(Error::Structural(format!(
                "relation {k} of {} cannot be solved for t{}",
                problem.phi1.label,
                i + 1
            )));
        }
        for j in 0..rows {
            if j == i || !alive_rows[j] || n[(j, col)].is_zero() {
                continue;
            }
            let c = -&eps * &n[(j, col)];
            for m in 0..n.cols() {
                let add = &c * &n[(i, m)];
                n[(j, m)] += add;
            }
        }
        alive_rows[i] = false;
        alive_cols[i] = false;
        alive_cols[col] = false;
    }
    let kept_rows: Vec<usize> = (0..rows).filter(|&i| alive_rows[i]).collect();
    let kept_cols: Vec<usize> = (0..n.cols()).filter(|&j| alive_cols[j]).collect();
    let mut matrix = IntMat::zeros(kept_rows.len(), kept_cols.len());
    for (a, &i) in kept_rows.iter().enumerate() {
        for (b, &j) in kept_cols.iter().enumerate() {
            matrix[(a, b)] = n[(i, j)].clone();
        }
    }
    let kept: Vec<usize> = kept_rows
        .iter()
        .filter(|&&i| i < RANK)
        .map(|&i| i + 1)
        .collect();
    let s = kept.len();
    let mut x = IntMat::zeros(s, s);
    for a in 0..s {
        for b in 0..s {
            x[(a, b)] = matrix[(a, b)].clone();
        }
    }
    let y = (0..s).map(|b| matrix[(s, b)].clone()).collect();
    Ok(ReducedSystem { kept, x, y, matrix })
}

fn relation_lattice(phi1: &SubsystemSpec) -> IntMat {
    let k = phi1.center_rows.len();
    let mut c = IntMat::zeros(RANK, k);
    for (j, rel) in phi1.center_rows.iter().enumerate() {
        for i in 0..RANK {
            c[(i, j)] = BigInt::from(rel[i]);
        }
    }
    c
}

/// Component group of `Z(R)`: the torsion of `Z^7` modulo the relations.
pub fn center_component_group(phi1: &SubsystemSpec) -> AbelianGroup {
    if phi1.center_rows.is_empty() {
        return AbelianGroup::trivial();
    }
    let r = relation_lattice(phi1).transpose();
    let res = snf(&r);
    let d = res.invariant_factors();
    let keep: Vec<usize> = (0..d.len()).filter(|&k| d[k] > BigInt::one()).collect();
    AbelianGroup {
        factors: keep.iter().map(|&k| d[k].clone()).collect(),
        transform: res.v,
        scales: vec![BigInt::one(); RANK],
        keep,
        p_part: BigInt::one(),
    }
}

/// Whether `w` acts trivially on `Z(R)`: every column of `M_w - E` lies in
/// the lattice spanned by the relations.
pub fn fixes_center(phi1: &SubsystemSpec, w: &WeylElement) -> bool {
    let c = relation_lattice(phi1);
    let m = w.to_intmat();
    (0..RANK).all(|j| {
        let col: Vec<BigInt> = (0..RANK)
            .map(|i| &m[(i, j)] - BigInt::from(u8::from(i == j)))
            .collect();
        column_lattice_contains(&c, &col)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::find_subsystem;
    use crate::weyl::simple_reflection;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn identity_on_empty_row() {
        let phi = find_subsystem("empty").unwrap();
        let pr = TorusProblem::new(phi, WeylElement::identity(), big(3), 3).unwrap();
        let n = assemble(&pr).unwrap();
        assert_eq!((n.rows(), n.cols()), (8, 8));
        for i in 0..7 {
            assert_eq!(n[(i, i)], big(2));
        }
        let (g, z) = structure(&pr).unwrap();
        assert_eq!(g.order(), big(2).pow(8));
        assert_eq!(g.element_order(&z), big(2));
        assert_eq!(exponent_mod_z(&pr).unwrap(), big(2));
    }

    #[test]
    fn rejects_bad_input() {
        let phi = find_subsystem("A1").unwrap();
        let w = WeylElement::identity();
        assert!(matches!(
            TorusProblem::new(phi, w, big(4), 2),
            Err(Error::Unsupported(_))
        ));
        assert!(TorusProblem::new(phi, w, big(15), 3).is_err());
        assert!(TorusProblem::new(phi, w, big(9), 9).is_err());
        let s2 = simple_reflection(1);
        // s1 moves -r0 to -r0 + r1, which is not in A1.
        assert!(TorusProblem::new(phi, s2, big(3), 3).is_err());
    }

    #[test]
    fn coordinates_reject_non_members() {
        let g = group_structure(&IntMat::from_rows(&[[4]]), 3).unwrap();
        assert_eq!(g.factors, vec![big(4)]);
        let x = g.coordinates(&[big(1)], &big(4)).unwrap();
        assert_eq!(x.coords, vec![big(1)]);
        assert!(g.coordinates(&[big(1)], &big(8)).is_err());
        assert_eq!(g.quotient_exponent(&x), big(1));
    }

    #[test]
    fn p_part_is_reported() {
        let g = group_structure(&IntMat::from_rows(&[[12]]), 3).unwrap();
        assert_eq!(g.factors, vec![big(4)]);
        assert_eq!(g.p_part, big(3));
    }

    #[test]
    fn component_groups() {
        let t = |l: &str| center_component_group(find_subsystem(l).unwrap()).factors;
        assert!(t("D4").is_empty());
        assert_eq!(t("(A1^3)''"), vec![big(2)]);
        assert_eq!(t("A3^2"), vec![big(4)]);
        assert!(t("empty").is_empty());
    }

    #[test]
    fn bordered_rank_one() {
        let m = IntMat::from_rows(&[[-1]]);
        let n = bordered_system(&m, &big(5), None, &[]);
        let g = group_structure(&n, 5).unwrap();
        assert_eq!(g.factors, vec![big(6)]);
    }
}
