//! Canonical inputs and result payloads of every subcommand.

use brieskorn_core::alexander::{betti, charpoly_bp, delta_at_one, milnor_orlik_divisor, CharPoly};
use brieskorn_core::arith::lcm_u64;
use brieskorn_core::census::{
    c_sequence_upto, enumerate_ke_links, reproduce, CensusSpec, S7_PUBLISHED_CLASSES,
    S7_PUBLISHED_TOTAL,
};
use brieskorn_core::graph::{build_graph, classify_homology, is_homotopy_sphere};
use brieskorn_core::ke::{ke_check_with, positivity};
use brieskorn_core::link::{
    curve_genus, fano_class, fano_index, milnor_number, milnor_number_bp, FanoClass,
};
use brieskorn_core::signature::{
    kervaire_type, km_class, signature_combinatorial, signature_zagier, KervaireType,
};
use brieskorn_core::{Error, ExponentVector, Result, WeightedHypersurface};
use serde_json::{json, Value};

use crate::{Command, SequenceName};

/// Largest cotangent-sum period the `signature` cross-check attempts.
pub const ZAGIER_CLI_PERIOD_LIMIT: u64 = 100_000_000;

/// Subcommand name plus its canonicalized input.
#[derive(Debug, Clone, PartialEq)]
pub struct Request {
    pub command: &'static str,
    pub input: Value,
}

fn exponents(v: &[u64]) -> Result<ExponentVector> {
    ExponentVector::new(v.to_vec())
}

impl Request {
    pub fn new(cmd: &Command) -> Result<Self> {
        let (command, input) = match cmd {
            Command::Classify { exponents: a } => {
                ("classify", json!({ "exponents": exponents(a)? }))
            }
            Command::Invariants {
                exponents: a,
                weights,
                degree,
            } => match (weights, degree) {
                (Some(w), Some(d)) => {
                    let h = WeightedHypersurface::from_u64(w, *d)?;
                    ("invariants", json!({ "hypersurface": h }))
                }
                _ => ("invariants", json!({ "exponents": exponents(a)? })),
            },
            Command::Signature {
                exponents: a,
                no_zagier,
                multiple,
            } => (
                "signature",
                json!({ "exponents": exponents(a)?, "zagier_check": !no_zagier, "multiple": multiple }),
            ),
            Command::Ke {
                exponents: a,
                pairs,
            } => (
                "ke",
                json!({ "exponents": exponents(a)?, "pair_rule": pairs }),
            ),
            Command::Enumerate { .. } => ("enumerate", json!({ "census": census_spec(cmd)? })),
            Command::Reproduce { id } => ("reproduce", json!({ "id": id })),
            Command::Sequence {
                name: SequenceName::C,
                upto,
            } => ("sequence", json!({ "name": "c", "upto": upto })),
        };
        Ok(Request { command, input })
    }
}

fn census_spec(cmd: &Command) -> Result<CensusSpec> {
    let Command::Enumerate {
        dim,
        filter,
        max_exponent,
        require,
        pairs,
    } = cmd
    else {
        return Err(Error::Internal(
            "census spec requested for another command".into(),
        ));
    };
    let mut required = require.clone();
    required.sort_unstable();
    let mut spec = CensusSpec::new(*dim, filter.iter().copied())
        .with_required(&required)
        .with_pair_rule(*pairs);
    if let Some(m) = max_exponent {
        spec = spec.with_max_exponent(*m);
    }
    Ok(spec)
}

/// Result payload and warnings.
pub type Outcome = (Value, Vec<String>);

fn to_value<T: serde::Serialize>(x: &T) -> Result<Value> {
    serde_json::to_value(x).map_err(|e| Error::Internal(format!("serialization: {e}")))
}

pub fn execute(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Classify { exponents: a } => classify(&exponents(a)?),
        Command::Invariants {
            exponents: a,
            weights,
            degree,
        } => match (weights, degree) {
            (Some(w), Some(d)) => invariants(&WeightedHypersurface::from_u64(w, *d)?, None),
            _ => {
                let a = exponents(a)?;
                invariants(&a.to_hypersurface(), Some(&a))
            }
        },
        Command::Signature {
            exponents: a,
            no_zagier,
            multiple,
        } => signature(&exponents(a)?, !no_zagier, *multiple),
        Command::Ke {
            exponents: a,
            pairs,
        } => {
            let a = exponents(a)?;
            let mut v = to_value(&ke_check_with(&a, *pairs)?)?;
            let s = a.reciprocal_sum();
            v["reciprocal_sum"] = json!(s.to_string());
            Ok((v, Vec::new()))
        }
        Command::Enumerate { .. } => enumerate(&census_spec(cmd)?),
        Command::Reproduce { id } => {
            let r = reproduce(id)?;
            let warnings = r
                .cells
                .iter()
                .filter(|c| !c.matches)
                .map(|c| {
                    format!(
                        "{}: computed {}, published {}",
                        c.label, c.computed, c.expected
                    )
                })
                .collect();
            Ok((to_value(&r)?, warnings))
        }
        Command::Sequence {
            name: SequenceName::C,
            upto,
        } => {
            if *upto == 0 {
                return Err(Error::Usage("--upto must be at least 1".into()));
            }
            let values: Vec<Value> = c_sequence_upto(*upto)
                .iter()
                .enumerate()
                .map(|(i, c)| json!({ "k": i + 1, "value": c.to_string() }))
                .collect();
            Ok((json!({ "name": "c", "values": values }), Vec::new()))
        }
    }
}

fn classify(a: &ExponentVector) -> Result<Outcome> {
    let class = classify_homology(a);
    let cp = charpoly_bp(a);
    let delta = delta_at_one(&cp)?;
    let h = a.to_hypersurface();
    let graph = if a.has_unit_exponent() {
        Value::Null
    } else {
        let g = build_graph(a)?;
        json!({ "edges": g.edges(), "isolated": g.isolated(), "c_ev": g.c_ev() })
    };
    let mut v = json!({
        "exponents": a,
        "dimension": a.dimension(),
        "homology_class": class,
        "homotopy_sphere": is_homotopy_sphere(a),
        "torsion_order": delta.torsion_order.map(|t| t.to_string()),
        "betti": betti(&cp)?.to_string(),
        "milnor_number": milnor_number_bp(a).to_string(),
        "fano": fano_class(&h) == FanoClass::Positive,
        "fano_index": fano_index(&h).to_string(),
        "graph": graph,
    });
    let kt = kervaire_type(a);
    if kt != KervaireType::NotApplicable {
        v["kervaire_type"] = to_value(&kt)?;
    }
    Ok((v, Vec::new()))
}

fn charpoly_value(cp: &CharPoly) -> Result<(Value, Vec<String>)> {
    let mut warnings = Vec::new();
    let cyclotomic = match cp.cyclotomic_multiplicities() {
        Ok(m) => Value::Object(
            m.into_iter()
                .map(|(k, e)| (k.to_string(), json!(e.to_string())))
                .collect(),
        ),
        Err(e) => {
            warnings.push(format!("cyclotomic factorization skipped: {e}"));
            Value::Null
        }
    };
    let basis = to_value(cp)?;
    Ok((
        json!({ "t_power_minus_one": basis["exponents"], "cyclotomic": cyclotomic }),
        warnings,
    ))
}

fn invariants(h: &WeightedHypersurface, a: Option<&ExponentVector>) -> Result<Outcome> {
    let cp = match a {
        Some(a) => charpoly_bp(a),
        None => milnor_orlik_divisor(h)?,
    };
    let mu = match a {
        Some(a) => milnor_number_bp(a),
        None => milnor_number(h)?,
    };
    let (charpoly, mut warnings) = charpoly_value(&cp)?;
    let delta = delta_at_one(&cp)?;
    let pos = positivity(h);
    let mut v = json!({
        "hypersurface": h,
        "dimension": h.dimension(),
        "milnor_number": mu.to_string(),
        "charpoly": charpoly,
        "betti": betti(&cp)?.to_string(),
        "delta_at_one": delta,
        "fano_index": fano_index(h).to_string(),
        "fano_class": fano_class(h),
        "positive_ricci": pos.positive_ricci_metric_exists,
    });
    if let Some(a) = a {
        v["exponents"] = to_value(a)?;
    }
    if h.n() == 2 {
        let small: Option<Vec<u64>> = h.weights().iter().map(|w| u64::try_from(w).ok()).collect();
        let d = u64::try_from(h.degree()).ok();
        match (small, d) {
            (Some(w), Some(d)) => match curve_genus([w[0], w[1], w[2]], d) {
                Ok(g) => v["genus"] = json!(g.to_string()),
                Err(e) => warnings.push(format!("genus not computed: {e}")),
            },
            _ => warnings.push("genus not computed: weights exceed u64".into()),
        }
    }
    Ok((v, warnings))
}

fn signature(a: &ExponentVector, zagier: bool, multiple: u64) -> Result<Outcome> {
    let comb = signature_combinatorial(a)?;
    let mut warnings = Vec::new();
    let mut zagier_value = Value::Null;
    if zagier {
        let period = lcm_u64(a.as_slice()).and_then(|l| l.checked_mul(multiple));
        match period {
            Some(n) if n <= ZAGIER_CLI_PERIOD_LIMIT => match signature_zagier(a, multiple) {
                Ok(z) => {
                    if z.tau != comb.tau {
                        warnings.push(format!(
                            "cotangent sum gives {} but the lattice count gives {}",
                            z.tau, comb.tau
                        ));
                    }
                    zagier_value = to_value(&z)?;
                }
                Err(e) => warnings.push(format!("cotangent-sum check failed: {e}")),
            },
            _ => warnings.push(format!(
                "cotangent-sum check skipped: period exceeds {ZAGIER_CLI_PERIOD_LIMIT}"
            )),
        }
    }
    let class = if is_homotopy_sphere(a) && a.dimension() >= 7 {
        Some(km_class(a)?)
    } else {
        None
    };
    let v = json!({
        "exponents": a,
        "dimension": a.dimension(),
        "tau": comb.tau,
        "combinatorial": comb,
        "zagier": zagier_value,
        "homotopy_sphere": is_homotopy_sphere(a),
        "km_index": class.as_ref().map(|c| c.km_index.to_string()),
        "km_class": class,
    });
    Ok((v, warnings))
}

fn enumerate(spec: &CensusSpec) -> Result<Outcome> {
    use brieskorn_core::census::Predicate;
    use brieskorn_core::PairRule;
    let r = enumerate_ke_links(spec)?;
    let mut warnings = Vec::new();
    let published = spec.dimension == 7
        && spec.required.is_empty()
        && spec.max_exponent.is_none()
        && spec
            .predicates
            .iter()
            .copied()
            .eq([Predicate::HomotopySphere, Predicate::KePasses]);
    if published {
        if r.total != S7_PUBLISHED_TOTAL {
            warnings.push(format!(
                "total {} differs from the published {S7_PUBLISHED_TOTAL}",
                r.total
            ));
        }
        if spec.pair_rule == PairRule::WithDiagonal {
            for (i, &p) in S7_PUBLISHED_CLASSES.iter().enumerate() {
                let class = (i + 1) % 28;
                let got = r
                    .per_class_counts
                    .iter()
                    .find(|c| c.class == class.to_string())
                    .map_or(0, |c| c.count);
                if got != p {
                    warnings.push(format!("class {}: computed {got}, published {p}", i + 1));
                }
            }
            let sum: u64 = S7_PUBLISHED_CLASSES.iter().sum();
            if sum != S7_PUBLISHED_TOTAL {
                warnings.push(format!(
                    "published per-class counts sum to {sum}, not {S7_PUBLISHED_TOTAL}"
                ));
            }
        }
    }
    Ok((to_value(&r)?, warnings))
}
