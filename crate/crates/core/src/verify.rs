//! The checks run by `verify`: brute force against the closed form, the
//! structure of `ν_δ`, realization over connected centers, and the worked
//! exponents for the rows A1, A3, D4, (A5)'' and D5.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Pow;

use crate::error::Result;
use crate::rootsys::catalog;
use crate::spectrum::{
    all_etas, closure_equal, mu, nu, nu_delta, nu_delta_removed, EtaRecord, QSpec, SpectrumSet,
};
use crate::torus::center_component_group;

/// Rows whose `Z(R)` is connected.
pub const CONNECTED_CENTER_ROWS: [&str; 9] = [
    "empty", "A1", "A1^2", "(A1^3)'", "A3", "D4", "(A5)''", "D5", "E6",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Witnesses or a short summary.
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub q: QSpec,
    pub checks: Vec<Check>,
    pub records: Vec<EtaRecord>,
    pub brute_mu: SpectrumSet,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// An exponent expected among the classes of a row.
pub struct ExpectedExponent {
    pub label: &'static str,
    pub formula: &'static str,
    pub value: fn(&BigInt) -> BigInt,
}

fn pw(q: &BigInt, e: u32) -> BigInt {
    Pow::pow(q, e)
}

pub const EXPECTED_EXPONENTS: &[ExpectedExponent] = &[
    ExpectedExponent {
        label: "A1",
        formula: "(q^6-1)/2",
        value: |q| (pw(q, 6) - 1) / 2,
    },
    ExpectedExponent {
        label: "A1",
        formula: "q^4-1",
        value: |q| pw(q, 4) - 1,
    },
    ExpectedExponent {
        label: "A1",
        formula: "q^5-1",
        value: |q| pw(q, 5) - 1,
    },
    ExpectedExponent {
        label: "A1",
        formula: "(q^4+1)(q^2+1)",
        value: |q| (pw(q, 4) + 1) * (pw(q, 2) + 1),
    },
    ExpectedExponent {
        label: "A1",
        formula: "(q^4+1)(q^2-1)",
        value: |q| (pw(q, 4) + 1) * (pw(q, 2) - 1),
    },
    ExpectedExponent {
        label: "A1",
        formula: "(q^3-1)(q^2+1)(q+1)",
        value: |q| (pw(q, 3) - 1) * (pw(q, 2) + 1) * (q + 1),
    },
    ExpectedExponent {
        label: "A3",
        formula: "(q^4-1)/2",
        value: |q| (pw(q, 4) - 1) / 2,
    },
    ExpectedExponent {
        label: "A3",
        formula: "(q^3-1)(q+1)",
        value: |q| (pw(q, 3) - 1) * (q + 1),
    },
    ExpectedExponent {
        label: "D4",
        formula: "q^2-1",
        value: |q| pw(q, 2) - 1,
    },
    ExpectedExponent {
        label: "D4",
        formula: "(q^2+1)(q+1)",
        value: |q| (pw(q, 2) + 1) * (q + 1),
    },
    ExpectedExponent {
        label: "D4",
        formula: "q^3-1",
        value: |q| pw(q, 3) - 1,
    },
    ExpectedExponent {
        label: "(A5)''",
        formula: "q-1",
        value: |q| q - 1,
    },
    ExpectedExponent {
        label: "(A5)''",
        formula: "(q^2-1)/2",
        value: |q| (pw(q, 2) - 1) / 2,
    },
    ExpectedExponent {
        label: "D5",
        formula: "q-1",
        value: |q| q - 1,
    },
    ExpectedExponent {
        label: "D5",
        formula: "q^2-1",
        value: |q| pw(q, 2) - 1,
    },
];

fn join(xs: &[BigInt]) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn check_closure(brute: &SpectrumSet, qs: &QSpec) -> Result<Check> {
    let rep = closure_equal(brute, &nu(qs)?);
    let detail = if rep.equal {
        format!("{} maximal values on both sides", mu(brute).len())
    } else {
        format!(
            "brute force only: [{}]; closed form only: [{}]",
            join(&rep.only_in_a),
            join(&rep.only_in_b)
        )
    };
    Ok(Check {
        name: "closure: brute force vs nu(q)".into(),
        passed: rep.equal,
        detail,
    })
}

pub fn check_nu_delta_even(qs: &QSpec) -> Result<Check> {
    let n = nu(qs)?;
    let d = nu_delta(qs)?;
    let two = BigInt::from(2);
    let odd_in_delta: Vec<BigInt> = d.iter().filter(|x| x.is_odd()).cloned().collect();
    let removed = nu_delta_removed(qs)?;
    let removed_even: Vec<BigInt> = removed
        .iter()
        .filter(|x| x.is_multiple_of(&two))
        .cloned()
        .collect();
    let evens: SpectrumSet = n.iter().filter(|x| x.is_even()).cloned().collect();
    let passed = odd_in_delta.is_empty() && removed_even.is_empty() && evens == d;
    let detail = if passed {
        format!(
            "{} even values; removed {} and {}",
            d.len(),
            removed[0],
            removed[1]
        )
    } else {
        format!(
            "odd in nu_delta: [{}]; even removed: [{}]; equals even part: {}",
            join(&odd_in_delta),
            join(&removed_even),
            evens == d
        )
    };
    Ok(Check {
        name: "nu_delta: exactly the even part of nu(q)".into(),
        passed,
        detail,
    })
}

pub fn check_realization(records: &[EtaRecord], qs: &QSpec) -> Result<Check> {
    let connected: BTreeSet<&str> = catalog()
        .iter()
        .filter(|s| center_component_group(s).is_trivial())
        .map(|s| s.label)
        .collect();
    let etas: SpectrumSet = records
        .iter()
        .filter(|r| connected.contains(r.label))
        .map(|r| r.eta.clone())
        .collect();
    let missing: Vec<BigInt> = nu_delta(qs)?
        .iter()
        .filter(|x| etas.multiple_of(x).is_none())
        .cloned()
        .collect();
    Ok(Check {
        name: "nu_delta realized over connected centers".into(),
        passed: missing.is_empty(),
        detail: if missing.is_empty() {
            format!("{} rows with connected center", connected.len())
        } else {
            format!("unrealized: [{}]", join(&missing))
        },
    })
}

pub fn check_component_groups() -> Check {
    let connected: Vec<&str> = catalog()
        .iter()
        .filter(|s| center_component_group(s).is_trivial())
        .map(|s| s.label)
        .collect();
    let passed = connected == CONNECTED_CENTER_ROWS;
    Check {
        name: "center component groups".into(),
        passed,
        detail: format!("connected: {}", connected.join(" ")),
    }
}

pub fn check_worked_exponents(records: &[EtaRecord], qs: &QSpec) -> Vec<Check> {
    EXPECTED_EXPONENTS
        .iter()
        .map(|e| {
            let want = (e.value)(&qs.q);
            let hit = records
                .iter()
                .find(|r| r.label == e.label && r.exponent == want)
                .and_then(|r| r.class_index);
            Check {
                name: format!("exponent {}: {}", e.label, e.formula),
                passed: hit.is_some(),
                detail: match hit {
                    Some(i) => format!("{want} at class {i}"),
                    None => format!("{want} not among the class exponents"),
                },
            }
        })
        .collect()
}

/// Runs every check for one `q`.
pub fn verify(qs: &QSpec) -> Result<VerifyReport> {
    let records = all_etas(qs)?;
    let brute_mu = mu(&records.iter().map(|r| r.eta.clone()).collect());
    let mut checks = vec![
        check_closure(&brute_mu, qs)?,
        check_nu_delta_even(qs)?,
        check_realization(&records, qs)?,
        check_component_groups(),
    ];
    checks.extend(check_worked_exponents(&records, qs));
    Ok(VerifyReport {
        q: qs.clone(),
        checks,
        records,
        brute_mu,
    })
}
