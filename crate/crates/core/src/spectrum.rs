//! Closed-form spectra, the μ normalization, and the brute-force sweep of
//! `η(Φ1, w)` over the catalog.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};
use once_cell::sync::OnceCell;
use rayon::prelude::*;

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::rootsys::{catalog, SubsystemSpec};
use crate::torus::{structure, TorusProblem};
use crate::weyl::{
    conjugacy_classes, setwise_stabilizer, weyl_group, ConjClass, SubgroupHandle, WeylElement,
};

/// A field size `q = p^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSpec {
    pub p: u64,
    pub m: u32,
    pub q: BigInt,
}

impl QSpec {
    pub fn new(p: u64, m: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        if m == 0 {
            return Err(Error::Domain("m must be positive".into()));
        }
        Ok(QSpec {
            p,
            m,
            q: BigInt::from(p).pow(m),
        })
    }

    pub fn is_odd(&self) -> bool {
        self.p != 2
    }

    /// `q^{1/k}`.
    pub fn root(&self, k: u32) -> Result<QSpec> {
        if k == 0 || !self.m.is_multiple_of(k) {
            return Err(Error::Domain(format!("{k} does not divide m = {}", self.m)));
        }
        QSpec::new(self.p, self.m / k)
    }

    fn require_odd(&self) -> Result<()> {
        if self.is_odd() {
            Ok(())
        } else {
            Err(Error::Unsupported(format!("q = {} is even", self.q)))
        }
    }
}

impl fmt::Display for QSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.q)
    }
}

/// A coset `ψ L` or `ψ δ L` of the socle, with `ψ` a field automorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CosetSpec {
    /// `|ψ|`.
    pub field_order: u32,
    pub diag: bool,
}

impl CosetSpec {
    pub const TRIVIAL: CosetSpec = CosetSpec {
        field_order: 1,
        diag: false,
    };
    pub const DELTA: CosetSpec = CosetSpec {
        field_order: 1,
        diag: true,
    };

    /// `ψ = φ^k` where `φ` has order `m`.
    pub fn from_power(k: u32, m: u32, diag: bool) -> CosetSpec {
        let m = m.max(1);
        CosetSpec {
            field_order: m / k.gcd(&m),
            diag,
        }
    }

    /// Parses `1`, `delta`, `phi`, `phi^k`, `phi^k-delta` for `q = p^m`.
    pub fn parse(s: &str, m: u32) -> Result<CosetSpec> {
        let s = s.trim();
        let (field, diag) = match s.strip_suffix("-delta") {
            Some(f) => (f, true),
            None if s == "delta" => ("1", true),
            None => (s, false),
        };
        let k = match field {
            "1" => 0,
            "phi" => 1,
            _ => field
                .strip_prefix("phi^")
                .and_then(|e| e.parse::<u32>().ok())
                .ok_or_else(|| Error::Domain(format!("cannot parse coset '{s}'")))?,
        };
        Ok(CosetSpec::from_power(k, m, diag))
    }
}

impl fmt::Display for CosetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.field_order, self.diag) {
            (1, false) => write!(f, "1"),
            (1, true) => write!(f, "delta"),
            (k, false) => write!(f, "psi(|psi|={k})"),
            (k, true) => write!(f, "psi(|psi|={k})-delta"),
        }
    }
}

/// A finite set of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpectrumSet {
    pub values: BTreeSet<BigInt>,
}

impl SpectrumSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, x: BigInt) {
        self.values.insert(x);
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn contains(&self, x: &BigInt) -> bool {
        self.values.contains(x)
    }

    pub fn iter(&self) -> impl Iterator<Item = &BigInt> {
        self.values.iter()
    }

    /// Some element divisible by `n`.
    pub fn multiple_of(&self, n: &BigInt) -> Option<&BigInt> {
        self.values.iter().find(|x| x.is_multiple_of(n))
    }

    pub fn scaled(&self, k: &BigInt) -> SpectrumSet {
        self.values.iter().map(|x| x * k).collect()
    }
}

impl FromIterator<BigInt> for SpectrumSet {
    fn from_iter<I: IntoIterator<Item = BigInt>>(iter: I) -> Self {
        SpectrumSet {
            values: iter.into_iter().collect(),
        }
    }
}

/// The elements maximal under divisibility.
pub fn mu(s: &SpectrumSet) -> SpectrumSet {
    let v: Vec<&BigInt> = s.values.iter().collect();
    v.iter()
        .enumerate()
        .filter(|&(i, x)| {
            !v.iter()
                .enumerate()
                .any(|(j, y)| j != i && y.is_multiple_of(x) && *y != *x)
        })
        .map(|(_, x)| (*x).clone())
        .collect()
}

/// Elements of `mu(a)` dividing no element of `b`, and vice versa.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureReport {
    pub equal: bool,
    pub only_in_a: Vec<BigInt>,
    pub only_in_b: Vec<BigInt>,
}

/// Whether `a` and `b` have the same divisor closure.
pub fn closure_equal(a: &SpectrumSet, b: &SpectrumSet) -> ClosureReport {
    let missing = |x: &SpectrumSet, y: &SpectrumSet| -> Vec<BigInt> {
        mu(x)
            .values
            .into_iter()
            .filter(|n| y.multiple_of(n).is_none())
            .collect()
    };
    let only_in_a = missing(a, b);
    let only_in_b = missing(b, a);
    ClosureReport {
        equal: only_in_a.is_empty() && only_in_b.is_empty(),
        only_in_a,
        only_in_b,
    }
}

/// The least power of `p` exceeding `k`.
pub fn n_p(p: u64, k: u64) -> BigInt {
    let mut x = BigInt::one();
    while x <= BigInt::from(k) {
        x *= p;
    }
    x
}

/// One value of a closed-form set with the formula that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub label: String,
    pub value: BigInt,
}

fn exact_div(a: BigInt, b: &BigInt) -> BigInt {
    let (d, r) = a.div_rem(b);
    assert!(r.is_zero(), "{a} is not divisible by {b}");
    d
}

struct Builder<'a> {
    q: &'a BigInt,
    entries: Vec<Entry>,
}

impl<'a> Builder<'a> {
    fn pow(&self, e: u32) -> BigInt {
        self.q.pow(e)
    }

    fn push(&mut self, label: String, value: BigInt) {
        self.entries.push(Entry { label, value });
    }

    /// Adds the formula for both signs; `±` takes `s` and `∓` the opposite.
    fn pm(&mut self, template: &str, f: impl Fn(&Self, i32) -> BigInt) {
        for s in [1, -1] {
            let (a, b) = if s > 0 { ("+", "-") } else { ("-", "+") };
            let label = template.replace('±', a).replace('∓', b);
            let v = f(self, s);
            self.push(label, v);
        }
    }

    fn one(&mut self, label: &str, f: impl Fn(&Self) -> BigInt) {
        let v = f(self);
        self.push(label.to_string(), v);
    }

    /// Multiplies every entry added since `start` by `k`.
    fn scale_since(&mut self, start: usize, k: &BigInt, name: &str) {
        for e in &mut self.entries[start..] {
            e.value *= k;
            e.label = format!("{name}*{}", e.label);
        }
    }
}

fn sgn(s: i32) -> BigInt {
    BigInt::from(s)
}

fn q6pq3(b: &Builder, s: i32) -> BigInt {
    b.pow(6) + sgn(s) * b.pow(3) + 1
}

/// The sets of the full Inndiag spectrum, labeled, in display order.
pub fn nu_entries(qs: &QSpec) -> Result<Vec<Entry>> {
    qs.require_odd()?;
    let q = &qs.q;
    let p = qs.p;
    let mut b = Builder {
        q,
        entries: Vec::new(),
    };

    b.pm("(q^6±q^3+1)(q∓1)", |b, s| q6pq3(b, s) * (b.q - sgn(s)));
    b.pm("q^7±1", |b, s| b.pow(7) + sgn(s));
    b.pm("(q^4-q^2+1)(q^3±1)", |b, s| {
        (b.pow(4) - b.pow(2) + 1) * (b.pow(3) + sgn(s))
    });
    b.pm("(q^5±1)(q^2∓q+1)", |b, s| {
        (b.pow(5) + sgn(s)) * (b.pow(2) - sgn(s) * b.q + 1)
    });
    b.pm("(q^5±1)(q∓1)", |b, s| {
        (b.pow(5) + sgn(s)) * (b.q - sgn(s))
    });
    b.pm("(q^8-1)/(2(q±1))", |b, s| {
        exact_div(b.pow(8) - 1, &(BigInt::from(2) * (b.q + sgn(s))))
    });
    b.one("q^6-1", |b| b.pow(6) - 1);

    let start = b.entries.len();
    b.pm("(q^5±1)", |b, s| b.pow(5) + sgn(s));
    b.pm("(q^4+1)(q^2±1)", |b, s| {
        (b.pow(4) + 1) * (b.pow(2) + sgn(s))
    });
    b.one("(q^6-1)/2", |b| exact_div(b.pow(6) - 1, &BigInt::from(2)));
    b.pm("(q^3±1)(q^2+1)(q∓1)", |b, s| {
        (b.pow(3) + sgn(s)) * (b.pow(2) + 1) * (b.q - sgn(s))
    });
    b.one("(q^4-q^2+1)", |b| b.pow(4) - b.pow(2) + 1);
    b.scale_since(start, &BigInt::from(p), "p");

    let start = b.entries.len();
    b.pm("(q^3±1)(q∓1)", |b, s| {
        (b.pow(3) + sgn(s)) * (b.q - sgn(s))
    });
    b.one("(q^4-1)/2", |b| exact_div(b.pow(4) - 1, &BigInt::from(2)));
    b.scale_since(start, &n_p(p, 3), "n_p(3)");

    let start = b.entries.len();
    b.pm("(q^3±1)", |b, s| b.pow(3) + sgn(s));
    b.pm("(q^2+1)(q±1)", |b, s| (b.pow(2) + 1) * (b.q + sgn(s)));
    b.scale_since(start, &n_p(p, 5), "n_p(5)");

    let start = b.entries.len();
    b.one("(q^2-1)", |b| b.pow(2) - 1);
    b.scale_since(start, &n_p(p, 7), "n_p(7)");

    let start = b.entries.len();
    b.pm("(q±1)", |b, s| b.q + sgn(s));
    b.scale_since(start, &n_p(p, 11), "n_p(11)");

    b.push("n_p(17)".into(), n_p(p, 17));
    Ok(b.entries)
}

fn collect(entries: &[Entry]) -> SpectrumSet {
    entries.iter().map(|e| e.value.clone()).collect()
}

pub fn nu(qs: &QSpec) -> Result<SpectrumSet> {
    nu_entries(qs).map(|e| collect(&e))
}

/// The two values removed from `ν(q)` to form `ν_δ(q)`.
pub fn nu_delta_removed(qs: &QSpec) -> Result<[BigInt; 2]> {
    qs.require_odd()?;
    let q = &qs.q;
    Ok([
        BigInt::from(qs.p) * (q.pow(4u32) - q.pow(2u32) + 1),
        n_p(qs.p, 17),
    ])
}

pub fn nu_delta_entries(qs: &QSpec) -> Result<Vec<Entry>> {
    let removed = nu_delta_removed(qs)?;
    Ok(nu_entries(qs)?
        .into_iter()
        .filter(|e| !removed.contains(&e.value))
        .collect())
}

pub fn nu_delta(qs: &QSpec) -> Result<SpectrumSet> {
    nu_delta_entries(qs).map(|e| collect(&e))
}

/// The closed form for the simple group `E7(q)`, either parity.
pub fn nu_1_entries(qs: &QSpec) -> Vec<Entry> {
    let q = &qs.q;
    let p = qs.p;
    let d = BigInt::from(if qs.is_odd() { 2 } else { 1 });
    let mut b = Builder {
        q,
        entries: Vec::new(),
    };
    let four_gcd = |x: BigInt| x.gcd(&BigInt::from(4));

    b.pm("(q^6±q^3+1)(q∓1)/d", |b, s| {
        exact_div(q6pq3(b, s) * (b.q - sgn(s)), &d)
    });
    b.pm("(q^7±1)/d", |b, s| exact_div(b.pow(7) + sgn(s), &d));
    b.pm("(q^4-q^2+1)(q^3±1)/d", |b, s| {
        exact_div((b.pow(4) - b.pow(2) + 1) * (b.pow(3) + sgn(s)), &d)
    });
    b.pm("(q^5±1)(q^2∓q+1)/d", |b, s| {
        exact_div((b.pow(5) + sgn(s)) * (b.pow(2) - sgn(s) * b.q + 1), &d)
    });
    b.pm("(q^5±1)(q∓1)", |b, s| {
        (b.pow(5) + sgn(s)) * (b.q - sgn(s))
    });
    b.pm("(q^8-1)/((q±1)(4,q±1))", |b, s| {
        let x = b.q + sgn(s);
        let g = four_gcd(x.clone());
        exact_div(b.pow(8) - 1, &(x * g))
    });
    b.one("(q^4+1)(q^2-1)", |b| (b.pow(4) + 1) * (b.pow(2) - 1));
    b.one("q^6-1", |b| b.pow(6) - 1);
    b.pm("(q^3±1)(q^2+1)(q∓1)", |b, s| {
        (b.pow(3) + sgn(s)) * (b.pow(2) + 1) * (b.q - sgn(s))
    });

    let start = b.entries.len();
    b.one("(q^4-q^2+1)", |b| b.pow(4) - b.pow(2) + 1);
    b.pm("(q^5±1)", |b, s| b.pow(5) + sgn(s));
    b.pm("(q^4+1)(q^2±1)/d", |b, s| {
        exact_div((b.pow(4) + 1) * (b.pow(2) + sgn(s)), &d)
    });
    b.one("(q^6-1)/d", |b| exact_div(b.pow(6) - 1, &d));
    b.pm("(q^3±1)(q^2+1)(q∓1)/d", |b, s| {
        exact_div((b.pow(3) + sgn(s)) * (b.pow(2) + 1) * (b.q - sgn(s)), &d)
    });
    b.scale_since(start, &BigInt::from(p), "p");

    let start = b.entries.len();
    b.pm("(q^5±1)/d", |b, s| exact_div(b.pow(5) + sgn(s), &d));
    b.pm("(q^6-1)/((q±1)d)", |b, s| {
        exact_div(b.pow(6) - 1, &((b.q + sgn(s)) * &d))
    });
    b.pm("(q^3±1)(q∓1)", |b, s| {
        (b.pow(3) + sgn(s)) * (b.q - sgn(s))
    });
    b.one("(q^4-1)", |b| b.pow(4) - 1);
    b.scale_since(start, &n_p(p, 2), "n_p(2)");

    let start = b.entries.len();
    b.pm("(q^3±1)(q∓1)/d", |b, s| {
        exact_div((b.pow(3) + sgn(s)) * (b.q - sgn(s)), &d)
    });
    b.one("(q^4-1)/d", |b| exact_div(b.pow(4) - 1, &d));
    b.scale_since(start, &n_p(p, 3), "n_p(3)");

    let start = b.entries.len();
    b.pm("(q^3±1)/d", |b, s| exact_div(b.pow(3) + sgn(s), &d));
    b.pm("(q^2+1)(q±1)/d", |b, s| {
        exact_div((b.pow(2) + 1) * (b.q + sgn(s)), &d)
    });
    b.one("(q^2-1)", |b| b.pow(2) - 1);
    b.scale_since(start, &n_p(p, 5), "n_p(5)");

    let start = b.entries.len();
    b.one("(q^2-1)/d", |b| exact_div(b.pow(2) - 1, &d));
    b.scale_since(start, &n_p(p, 7), "n_p(7)");

    let start = b.entries.len();
    b.pm("(q±1)", |b, s| b.q + sgn(s));
    b.scale_since(start, &n_p(p, 9), "n_p(9)");

    let start = b.entries.len();
    b.pm("(q±1)/d", |b, s| exact_div(b.q + sgn(s), &d));
    b.scale_since(start, &n_p(p, 11), "n_p(11)");

    b.push("n_p(17)".into(), n_p(p, 17));
    b.entries
}

pub fn nu_1(qs: &QSpec) -> SpectrumSet {
    collect(&nu_1_entries(qs))
}

/// Labeled closed form for a coset of the socle.
pub fn nu_coset_entries(qs: &QSpec, coset: CosetSpec) -> Result<Vec<Entry>> {
    if coset.diag && !qs.is_odd() {
        return Err(Error::Domain("the diagonal coset needs odd q".into()));
    }
    let k = coset.field_order;
    let q0 = qs.root(k)?;
    let base = if coset.diag {
        nu_delta_entries(&q0)?
    } else {
        nu_1_entries(&q0)
    };
    if k == 1 {
        return Ok(base);
    }
    let kb = BigInt::from(k);
    Ok(base
        .into_iter()
        .map(|e| Entry {
            label: format!("{k}*[{}]_{{q0={}}}", e.label, q0.q),
            value: e.value * &kb,
        })
        .collect())
}

pub fn nu_coset(qs: &QSpec, coset: CosetSpec) -> Result<SpectrumSet> {
    nu_coset_entries(qs, coset).map(|e| collect(&e))
}

/// An entry of the coset's closed form divisible by `n`, if any.
pub fn order_witness(n: &BigInt, qs: &QSpec, coset: CosetSpec) -> Result<Option<Entry>> {
    if n <= &BigInt::zero() {
        return Err(Error::Domain("orders are positive".into()));
    }
    Ok(nu_coset_entries(qs, coset)?
        .into_iter()
        .find(|e| e.value.is_multiple_of(n)))
}

pub fn order_exists(n: &BigInt, qs: &QSpec, coset: CosetSpec) -> Result<bool> {
    order_witness(n, qs, coset).map(|w| w.is_some())
}

/// One value `η(Φ1, w)` with its ingredients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaRecord {
    pub label: &'static str,
    pub class_index: Option<usize>,
    /// Invariant factors of `H_w`.
    pub factors: Vec<BigInt>,
    /// Coordinates of `z` in the cyclic basis of `H_w`.
    pub z_coords: Vec<BigInt>,
    /// Exponent of `H_w / <z>`.
    pub exponent: BigInt,
    pub np_factor: BigInt,
    pub eta: BigInt,
}

pub fn eta(phi1: &'static SubsystemSpec, w: &WeylElement, qs: &QSpec) -> Result<EtaRecord> {
    qs.require_odd()?;
    let pr = TorusProblem::new(phi1, *w, qs.q.clone(), qs.p)?;
    let (g, z) = structure(&pr)?;
    if !g.p_part.is_one() {
        return Err(Error::Structural(format!(
            "p-torsion of order {} in H_w for {}",
            g.p_part, phi1.label
        )));
    }
    let exponent = g.quotient_exponent(&z);
    let np_factor = n_p(qs.p, phi1.mh as u64);
    Ok(EtaRecord {
        label: phi1.label,
        class_index: None,
        factors: g.factors,
        z_coords: z.coords,
        eta: &np_factor * &exponent,
        exponent,
        np_factor,
    })
}

/// `N_W(Π1)` and its classes for one catalog row.
pub struct RowClasses {
    pub spec: &'static SubsystemSpec,
    pub normalizer: SubgroupHandle,
    pub classes: Vec<ConjClass>,
}

static ROW_CLASSES: OnceCell<Vec<RowClasses>> = OnceCell::new();

/// Class data for every catalog row, computed once.
pub fn row_classes() -> Result<&'static [RowClasses]> {
    ROW_CLASSES
        .get_or_try_init(|| {
            let w = weyl_group().handle();
            catalog()
                .iter()
                .map(|spec| {
                    let normalizer = setwise_stabilizer(&spec.pi1, w)?;
                    let classes = conjugacy_classes(&normalizer)?;
                    Ok(RowClasses {
                        spec,
                        normalizer,
                        classes,
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .map(Vec::as_slice)
}

pub fn find_row(label: &str) -> Result<&'static RowClasses> {
    row_classes()?
        .iter()
        .find(|r| r.spec.label == label)
        .ok_or_else(|| Error::Domain(format!("unknown subsystem '{label}'")))
}

/// `η` for every (catalog row, class) pair, in catalog and class order.
pub fn all_etas(qs: &QSpec) -> Result<Vec<EtaRecord>> {
    qs.require_odd()?;
    let tasks: Vec<(&'static RowClasses, usize)> = row_classes()?
        .iter()
        .flat_map(|r| (0..r.classes.len()).map(move |i| (r, i)))
        .collect();
    tasks
        .par_iter()
        .map(|&(r, i)| {
            let mut rec = eta(r.spec, &r.classes[i].representative, qs)?;
            rec.class_index = Some(i);
            Ok(rec)
        })
        .collect()
}

/// `μ` of all `η(Φ1, w)`.
pub fn omega_mu_bruteforce(qs: &QSpec) -> Result<SpectrumSet> {
    let recs = all_etas(qs)?;
    Ok(mu(&recs.into_iter().map(|r| r.eta).collect()))
}
