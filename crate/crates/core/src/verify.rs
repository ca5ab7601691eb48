//! Exhaustive check, over all b = 0 cleft data of a ring, that two cleft
//! extensions have the same (truncated) identities exactly when they are
//! isomorphic.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cleft::{all_data_b0, CleftAlgebra, CleftData};
use crate::error::{Error, Result};
use crate::identities::{
    build_pa, evaluate, fingerprint, qu_from_power, ComoduleMap, Fingerprint, WordSpace,
};
use crate::iso::{extends_to_isomorphism, iso_decider, IsoContext, IsoWitness};
use crate::ring::{check_hypotheses, ring_structure, Elem, FiniteRing, HypothesisReport};
use crate::taft::{TaftAlgebra, TaftParams};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Degree bound; defaults to max(2N, alpha + beta).
    pub degree: Option<usize>,
    pub iso_method: String,
    /// Skip fingerprints for pairs told apart by P_a or Q_u under the section map.
    pub fast_path: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            degree: None,
            iso_method: "criterion".to_string(),
            fast_path: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Separator {
    Pa,
    Qu,
}

impl Separator {
    fn name(self) -> &'static str {
        match self {
            Separator::Pa => "Pa",
            Separator::Qu => "Qu",
        }
    }
}

#[derive(Clone, Debug)]
pub struct PairRecord {
    pub i: usize,
    pub j: usize,
    pub fingerprints_equal: bool,
    pub isomorphic: bool,
    pub witness: Option<IsoWitness>,
    pub separated_by: Option<Separator>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CounterexampleKind {
    /// Isomorphic, yet the fingerprints differ.
    IsoButFingerprintsDiffer,
    /// Equal fingerprints, yet not isomorphic.
    FingerprintsEqualButNotIso,
    /// The decider's witness does not give a verified isomorphism.
    WitnessFails,
    /// A separating polynomial is not an identity of its own extension.
    SeparatorNotIdentity,
}

impl CounterexampleKind {
    fn name(self) -> &'static str {
        match self {
            CounterexampleKind::IsoButFingerprintsDiffer => "iso_but_fingerprints_differ",
            CounterexampleKind::FingerprintsEqualButNotIso => "fingerprints_equal_but_not_iso",
            CounterexampleKind::WitnessFails => "witness_fails",
            CounterexampleKind::SeparatorNotIdentity => "separator_not_identity",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Counterexample {
    pub kind: CounterexampleKind,
    pub i: usize,
    pub j: usize,
}

#[derive(Clone, Debug)]
pub struct VerifierReport {
    pub ring: Arc<FiniteRing>,
    pub n: usize,
    pub q: Elem,
    pub hypotheses: HypothesisReport,
    pub beta: u64,
    pub degree: usize,
    pub full_degree: usize,
    pub words: usize,
    pub iso_method: String,
    pub data: Vec<CleftData>,
    pub fingerprint_rows: Vec<Option<usize>>,
    pub pairs: Vec<PairRecord>,
    pub classes: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl VerifierReport {
    pub fn ok(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn iso_pairs(&self) -> usize {
        self.pairs.iter().filter(|p| p.isomorphic).count()
    }

    pub fn equal_pairs(&self) -> usize {
        self.pairs.iter().filter(|p| p.fingerprints_equal).count()
    }

    pub fn separated_pairs(&self) -> usize {
        self.pairs
            .iter()
            .filter(|p| p.separated_by.is_some())
            .count()
    }

    pub fn fingerprints_computed(&self) -> usize {
        self.fingerprint_rows.iter().filter(|r| r.is_some()).count()
    }

    fn count(&self, kind: CounterexampleKind) -> usize {
        self.counterexamples
            .iter()
            .filter(|c| c.kind == kind)
            .count()
    }

    pub fn to_json(&self) -> Value {
        let ring = &*self.ring;
        let data: Vec<Value> = self
            .data
            .iter()
            .zip(&self.fingerprint_rows)
            .map(|(d, rows)| json!({"u": ring.to_json(d.u), "a": ring.to_json(d.a), "fingerprint_rows": rows}))
            .collect();
        let pairs: Vec<Value> = self
            .pairs
            .iter()
            .map(|p| {
                json!({
                    "i": p.i,
                    "j": p.j,
                    "fingerprints_equal": p.fingerprints_equal,
                    "isomorphic": p.isomorphic,
                    "witness": p.witness.map(|w| w.to_json(ring)),
                    "separated_by": p.separated_by.map(Separator::name),
                })
            })
            .collect();
        let counterexamples: Vec<Value> = self
            .counterexamples
            .iter()
            .map(|c| json!({"kind": c.kind.name(), "i": c.i, "j": c.j}))
            .collect();
        json!({
            "schema": SCHEMA_VERSION,
            "ring": ring.name(),
            "N": self.n,
            "q": ring.to_json(self.q),
            "hypotheses": self.hypotheses,
            "alpha": self.hypotheses.alpha,
            "beta": self.beta,
            "degree": self.degree,
            "full_degree": self.full_degree,
            "words": self.words,
            "iso_method": self.iso_method,
            "data": data,
            "pairs": pairs,
            "summary": {
                "data": self.data.len(),
                "classes": self.classes,
                "pairs": self.pairs.len(),
                "isomorphic_pairs": self.iso_pairs(),
                "fingerprint_equal_pairs": self.equal_pairs(),
                "separated_pairs": self.separated_pairs(),
                "fingerprints_computed": self.fingerprints_computed(),
                "iso_implies_equal_failures": self.count(CounterexampleKind::IsoButFingerprintsDiffer),
                "equal_implies_iso_failures": self.count(CounterexampleKind::FingerprintsEqualButNotIso),
                "witness_failures": self.count(CounterexampleKind::WitnessFails),
                "separator_failures": self.count(CounterexampleKind::SeparatorNotIdentity),
                "counterexamples": self.counterexamples.len(),
            },
            "counterexamples": counterexamples,
        })
    }

    pub fn summary_lines(&self) -> Vec<String> {
        vec![
            format!("ring {} N={} q={}", self.ring.name(), self.n, self.ring.format(self.q)),
            format!(
                "alpha={} beta={} degree={} (full words up to {}, {} words)",
                self.hypotheses.alpha, self.beta, self.degree, self.full_degree, self.words
            ),
            format!("data {}, classes {}, pairs {}", self.data.len(), self.classes, self.pairs.len()),
            format!(
                "isomorphic pairs {}, equal-fingerprint pairs {}, separated by Pa/Qu {}, fingerprints computed {}",
                self.iso_pairs(),
                self.equal_pairs(),
                self.separated_pairs(),
                self.fingerprints_computed()
            ),
            format!(
                "iso => equal failures {}, equal => iso failures {}, witness failures {}, separator failures {}",
                self.count(CounterexampleKind::IsoButFingerprintsDiffer),
                self.count(CounterexampleKind::FingerprintsEqualButNotIso),
                self.count(CounterexampleKind::WitnessFails),
                self.count(CounterexampleKind::SeparatorNotIdentity),
            ),
            format!("counterexamples {}", self.counterexamples.len()),
        ]
    }
}

/// Builds the Taft algebra after checking that q is a root of Phi_N and that
/// the hypotheses of the theorem hold.
pub fn checked_taft(
    ring: Arc<FiniteRing>,
    n: usize,
    q: Elem,
) -> Result<(Arc<TaftAlgebra>, HypothesisReport)> {
    let hyp = check_hypotheses(&ring, n, q)?;
    if !hyp.ok {
        let mut reasons = Vec::new();
        if !hyp.n_is_unit {
            reasons.push(format!("N={n} is not a unit"));
        }
        if hyp.gcd_n_char != 1 {
            reasons.push(format!("gcd(N, char R) = {}", hyp.gcd_n_char));
        }
        if hyp.order_of_q != n as u64 {
            reasons.push(format!("q has order {}", hyp.order_of_q));
        }
        if hyp.alpha % n as u64 != 0 {
            reasons.push(format!("N does not divide alpha={}", hyp.alpha));
        }
        if !hyp.one_minus_q_is_unit {
            reasons.push("1 - q is not a unit".to_string());
        }
        return Err(Error::HypothesesFail(reasons.join("; ")));
    }
    let taft = Arc::new(TaftAlgebra::new(TaftParams::new(ring, n, q)?));
    Ok((taft, hyp))
}

pub fn verify_theorem(
    ring: Arc<FiniteRing>,
    n: usize,
    q: Elem,
    opts: &VerifyOptions,
) -> Result<VerifierReport> {
    let (taft, hyp) = checked_taft(ring.clone(), n, q)?;
    let decider = iso_decider(&opts.iso_method)?;
    let structure = ring_structure(&ring);
    let (alpha, beta) = (structure.alpha, structure.beta);
    let degree = opts
        .degree
        .unwrap_or_else(|| (2 * n).max((alpha + beta) as usize));
    let space = WordSpace::new(n, degree, 1)?;
    let ctx = IsoContext::new(taft.clone());

    let data = all_data_b0(&ring);
    let algebras: Vec<CleftAlgebra> = data
        .par_iter()
        .map(|d| CleftAlgebra::new(taft.clone(), *d))
        .collect::<Result<_>>()?;

    // separators P_a and Q_u evaluated under the section map on every B_j
    let gamma = ComoduleMap::gamma(&ring, 1);
    let a_values: Vec<Elem> = ring.elements().collect();
    let k = alpha / n as u64;
    let mut uk_values: Vec<Elem> = data.iter().map(|d| ring.pow(d.u, k)).collect();
    uk_values.sort();
    uk_values.dedup();
    let pa: Vec<_> = a_values.iter().map(|&a| build_pa(&ring, n, q, a)).collect();
    let qu: Vec<_> = uk_values
        .iter()
        .map(|&c| qu_from_power(&ring, c, alpha, beta))
        .collect();
    let pa_index: HashMap<Elem, usize> =
        a_values.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let qu_index: HashMap<Elem, usize> =
        uk_values.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    // vanish[j] = (P_a vanishes on B_j for each a, Q_u vanishes for each u^k)
    let vanish: Vec<(Vec<bool>, Vec<bool>)> = algebras
        .par_iter()
        .map(|b| -> Result<_> {
            let p = pa
                .iter()
                .map(|p| Ok(evaluate(b, p, &gamma)?.is_zero(&ring)))
                .collect::<Result<Vec<bool>>>()?;
            let qv = qu
                .iter()
                .map(|p| Ok(evaluate(b, p, &gamma)?.is_zero(&ring)))
                .collect::<Result<Vec<bool>>>()?;
            Ok((p, qv))
        })
        .collect::<Result<_>>()?;
    let separator = |i: usize, j: usize| -> Option<Separator> {
        let (di, dj) = (&data[i], &data[j]);
        let (pi, qi) = (pa_index[&di.a], qu_index[&ring.pow(di.u, k)]);
        let (pj, qj) = (pa_index[&dj.a], qu_index[&ring.pow(dj.u, k)]);
        if !vanish[j].0[pi] || !vanish[i].0[pj] {
            Some(Separator::Pa)
        } else if !vanish[j].1[qi] || !vanish[i].1[qj] {
            Some(Separator::Qu)
        } else {
            None
        }
    };

    let nd = data.len();
    let pair_list: Vec<(usize, usize)> = (0..nd)
        .flat_map(|i| (i + 1..nd).map(move |j| (i, j)))
        .collect();
    let seps: Vec<Option<Separator>> = pair_list
        .iter()
        .map(|&(i, j)| {
            if opts.fast_path {
                separator(i, j)
            } else {
                None
            }
        })
        .collect();

    let mut needed = vec![!opts.fast_path; nd];
    for (&(i, j), sep) in pair_list.iter().zip(&seps) {
        if sep.is_none() {
            needed[i] = true;
            needed[j] = true;
        }
    }
    let fingerprints: Vec<Option<Fingerprint>> = algebras
        .par_iter()
        .zip(needed.par_iter())
        .map(|(b, &need)| {
            if need {
                fingerprint(b, &space).map(Some)
            } else {
                Ok(None)
            }
        })
        .collect::<Result<_>>()?;

    let mut counterexamples = Vec::new();
    // each separator must be an identity of its own extension
    for (i, d) in data.iter().enumerate() {
        let own_pa = vanish[i].0[pa_index[&d.a]];
        let own_qu = vanish[i].1[qu_index[&ring.pow(d.u, k)]];
        let member = fingerprints[i].as_ref().is_none_or(|fp| {
            fp.contains(&ring, &space, &pa[pa_index[&d.a]])
                && fp.contains(&ring, &space, &qu[qu_index[&ring.pow(d.u, k)]])
        });
        if !(own_pa && own_qu && member) {
            counterexamples.push(Counterexample {
                kind: CounterexampleKind::SeparatorNotIdentity,
                i,
                j: i,
            });
        }
    }

    let decided: Vec<Result<PairRecord>> = pair_list
        .par_iter()
        .zip(seps.par_iter())
        .map(|(&(i, j), &sep)| {
            let witness = decider.decide(&ctx, &data[i], &data[j])?;
            let fingerprints_equal = match sep {
                Some(_) => false,
                None => fingerprints[i] == fingerprints[j],
            };
            Ok(PairRecord {
                i,
                j,
                fingerprints_equal,
                isomorphic: witness.is_some(),
                witness,
                separated_by: sep,
            })
        })
        .collect();
    let pairs: Vec<PairRecord> = decided.into_iter().collect::<Result<_>>()?;

    let witness_ok: Vec<bool> = pairs
        .par_iter()
        .map(|p| match &p.witness {
            Some(w) => extends_to_isomorphism(&algebras[p.j], &algebras[p.i], w),
            None => true,
        })
        .collect();
    for (p, ok) in pairs.iter().zip(witness_ok) {
        if !ok {
            counterexamples.push(Counterexample {
                kind: CounterexampleKind::WitnessFails,
                i: p.i,
                j: p.j,
            });
        }
        if p.isomorphic && !p.fingerprints_equal {
            counterexamples.push(Counterexample {
                kind: CounterexampleKind::IsoButFingerprintsDiffer,
                i: p.i,
                j: p.j,
            });
        }
        if !p.isomorphic && p.fingerprints_equal {
            counterexamples.push(Counterexample {
                kind: CounterexampleKind::FingerprintsEqualButNotIso,
                i: p.i,
                j: p.j,
            });
        }
    }

    // classes of the decided relation
    let mut parent: Vec<usize> = (0..nd).collect();
    fn root(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for p in pairs.iter().filter(|p| p.isomorphic) {
        let (a, b) = (root(&mut parent, p.i), root(&mut parent, p.j));
        parent[a] = b;
    }
    let classes = (0..nd).filter(|&i| root(&mut parent, i) == i).count();

    Ok(VerifierReport {
        ring,
        n,
        q,
        hypotheses: hyp,
        beta,
        degree,
        full_degree: space.full_degree(),
        words: space.words().len(),
        iso_method: decider.name().to_string(),
        data,
        fingerprint_rows: fingerprints
            .iter()
            .map(|f| f.as_ref().map(|f| f.rows.len()))
            .collect(),
        pairs,
        classes,
        counterexamples,
    })
}
