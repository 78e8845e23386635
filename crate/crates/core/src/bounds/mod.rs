//! Lower bounds on the minimum distance of QC codes.

pub mod cyclic;
pub mod jensen;
pub mod lally;
pub mod spectral;

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::json;

pub use cyclic::{cyclic_bound, roos_with, CyclicBound, CyclicMethod, ZeroSet};
pub use jensen::jensen_bound;
pub use lally::lally_bound;
pub use spectral::{eigencode, eigenstructure, spectral_bound, spectral_search, Certified, EigenStructure, Eigenvalue};

use crate::error::{Error, Result};
use crate::extnat::ExtNat;
use crate::linear::DEFAULT_ENUM_BUDGET;
use crate::qc::QcCode;

#[derive(Clone, Copy, Debug)]
pub struct BoundOptions {
    /// Enumeration budget for every exact distance computed along the way.
    pub budget: u64,
    pub subset_budget: usize,
    /// Also compute the exact distance of the expanded code.
    pub exact: bool,
}

impl Default for BoundOptions {
    fn default() -> Self {
        BoundOptions { budget: DEFAULT_ENUM_BUDGET, subset_budget: spectral::DEFAULT_SUBSET_BUDGET, exact: false }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub length: usize,
    pub dim: usize,
    pub bounds: BTreeMap<String, Certified>,
    pub exact: Option<ExtNat>,
}

impl BoundReport {
    /// Entries exceeding the exact distance; empty when no exact value is known.
    pub fn violations(&self) -> Vec<String> {
        let Some(exact) = self.exact else {
            return Vec::new();
        };
        self.bounds
            .iter()
            .filter(|(_, b)| b.value > exact)
            .map(|(name, b)| format!("{name} = {} exceeds the exact distance {exact}", b.value))
            .collect()
    }

    pub fn get(&self, name: &str) -> Option<ExtNat> {
        self.bounds.get(name).map(|b| b.value)
    }
}

/// Runs the Jensen, Lally and the four spectral bounds. An entry that cannot be computed
/// within budget carries the trivial value and a `skipped` witness.
pub fn best_bounds(code: &QcCode, opts: &BoundOptions) -> Result<BoundReport> {
    let expanded = code.expand();
    let trivial = if expanded.is_zero() { ExtNat::Infinite } else { ExtNat::Finite(1) };
    let skipped = |e: Error| Certified { value: trivial, witness: json!({"skipped": "budget", "reason": e.to_string()}) };
    let settle = |r: Result<Certified>| -> Result<Certified> {
        match r {
            Ok(c) => Ok(c),
            Err(e @ (Error::BudgetExceeded { .. } | Error::InvalidArgument(_) | Error::InvalidField(_))) => Ok(skipped(e)),
            Err(e) => Err(e),
        }
    };
    let mut bounds = BTreeMap::new();
    bounds.insert("jensen".to_string(), settle(jensen_bound(code, opts.budget))?);
    bounds.insert("lally".to_string(), settle(lally_bound(code, opts.budget))?);
    let spectral =
        eigenstructure(code).and_then(|es| spectral_search(code, &es, &CyclicMethod::ALL, opts.budget, opts.subset_budget));
    match spectral {
        Ok(mut per_method) => {
            for method in CyclicMethod::ALL {
                let entry =
                    per_method.remove(&method).unwrap_or_else(|| Err(Error::InvalidArgument("no closed eigenvalue set".into())));
                bounds.insert(format!("spectral_{}", method.name()), settle(entry)?);
            }
        }
        Err(e) => {
            let e = settle(Err(e))?;
            for method in CyclicMethod::ALL {
                bounds.insert(format!("spectral_{}", method.name()), e.clone());
            }
        }
    }
    let exact = if opts.exact { Some(expanded.min_distance(opts.budget)?) } else { None };
    let report = BoundReport { length: code.len(), dim: expanded.dim(), bounds, exact };
    let bad = report.violations();
    assert!(bad.is_empty(), "unsound bound: {}", bad.join("; "));
    Ok(report)
}
