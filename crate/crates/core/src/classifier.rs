//! Verdicts on strong stability of a scheme, each tagged with the rule that decided it.
//!
//! A verdict is three-valued. `Yes`/`No` always name the result whose
//! hypothesis was checked and record the numbers that decided it; anything
//! no result covers stays `Undecided`.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hypocoercivity::{hc_index_definitional, HcIndex};
use crate::linalg::{classify_stability, hermitian_part_max_eigenvalue, spectral_norm, ComplexMatrix, JsonScalar};
use crate::rk::{
    coefficient_condition, combined_condition, ks_indicators, ConditionEval, KsIndicators, Parity,
    Scheme, StabilityPolynomial, Truth,
};
use crate::tolerance::{Sign, EIG_REL, HC_CHAIN, ORDER, PSD_REL};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Conclusion {
    Yes,
    No,
    Undecided,
}

impl Conclusion {
    /// 0 for `Yes`, 3 for `No`, 4 for `Undecided`.
    pub fn exit_code(self) -> i32 {
        match self {
            Conclusion::Yes => 0,
            Conclusion::No => 3,
            Conclusion::Undecided => 4,
        }
    }
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Conclusion::Yes => "Yes",
            Conclusion::No => "No",
            Conclusion::Undecided => "Undecided",
        })
    }
}

/// The result a verdict rests on. Serialized as its citation token.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    /// Non-stability from the combined coefficient condition.
    CombinedCondition,
    /// The same, specialised to truncated exponentials.
    TruncatedExponential,
    /// Sign of `γ_{p+1}` / `δ_{p+1}` decides local stability on `iℝ`.
    ImaginaryAxis,
    /// Stability for index `m` with `2m + 1 ≤ p`.
    IndexBound,
    /// Coefficient condition refutes the asymptotically stable class.
    ClassCoefficient,
    /// Coefficient condition refutes a single matrix of large index.
    SingletonCoefficient,
    /// Verdict table for schemes with `s = p`.
    OrderTable,
    /// Overall stability is the conjunction of both component classes.
    Conjunction,
    /// Weak form is equivalent to stability on imaginary scalars.
    WeakForm,
    OpenDelta,
    OpenGap,
    OpenComplex,
}

const RULES: &[(Rule, &str)] = &[
    (Rule::CombinedCondition, "Thm 2.5"),
    (Rule::TruncatedExponential, "Cor 2.4"),
    (Rule::ImaginaryAxis, "Thm 3.6"),
    (Rule::IndexBound, "Thm 2.3(a)"),
    (Rule::ClassCoefficient, "Thm 2.3(b)"),
    (Rule::SingletonCoefficient, "Thm 2.3(c)"),
    (Rule::OrderTable, "Table 1"),
    (Rule::Conjunction, "Thm 2.1"),
    (Rule::WeakForm, "Thm 2.7"),
    (Rule::OpenDelta, "open: δ=0"),
    (Rule::OpenGap, "open: condition gap"),
    (Rule::OpenComplex, "open: complex coefficients"),
];

impl Rule {
    pub fn token(self) -> &'static str {
        RULES.iter().find(|(r, _)| *r == self).expect("every rule has a token").1
    }

    pub fn from_token(token: &str) -> Option<Self> {
        RULES.iter().find(|(_, t)| *t == token).map(|(r, _)| *r)
    }
}

impl Serialize for Rule {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.token())
    }
}

impl<'de> Deserialize<'de> for Rule {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let token = String::deserialize(deserializer)?;
        Rule::from_token(&token)
            .ok_or_else(|| serde::de::Error::custom(format!("unknown rule '{token}'")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    pub name: String,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub conclusion: Conclusion,
    pub decided_by: Rule,
    pub evidence: Vec<Evidence>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Verdict {
    fn new(conclusion: Conclusion, decided_by: Rule, evidence: &[(&str, f64)]) -> Self {
        Self {
            conclusion,
            decided_by,
            evidence: evidence
                .iter()
                .map(|&(name, value)| Evidence {
                    name: name.to_string(),
                    value,
                })
                .collect(),
            note: None,
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn evidence_value(&self, name: &str) -> Option<f64> {
        self.evidence.iter().find(|e| e.name == name).map(|e| e.value)
    }
}

/// Local stability near `0` on the imaginary axis.
pub fn classify_imag_axis(ind: &KsIndicators) -> Verdict {
    if !ind.real_coefficients {
        return Verdict::new(Conclusion::Undecided, Rule::OpenComplex, &[]);
    }
    match ind.parity {
        Parity::Odd => {
            let g = ind.gamma.expect("odd order has gamma");
            let ev = [("gamma", g)];
            match Sign::of(g, ORDER) {
                Sign::Positive => Verdict::new(Conclusion::Yes, Rule::ImaginaryAxis, &ev),
                Sign::Negative => Verdict::new(Conclusion::No, Rule::ImaginaryAxis, &ev),
                Sign::Marginal => Verdict::new(Conclusion::No, Rule::ImaginaryAxis, &ev)
                    .with_note("gamma = 0 means c_{p+1} = 1, contradicting the detected order"),
            }
        }
        Parity::Even => {
            let d = ind.delta.expect("even order has delta");
            let ev = [("delta", d)];
            match Sign::of(d, ORDER) {
                Sign::Positive => Verdict::new(Conclusion::Yes, Rule::ImaginaryAxis, &ev),
                Sign::Negative => Verdict::new(Conclusion::No, Rule::ImaginaryAxis, &ev),
                Sign::Marginal => Verdict::new(Conclusion::Undecided, Rule::OpenDelta, &ev),
            }
        }
    }
}

/// Same truth value as [`classify_imag_axis`], cited as the weak-form
/// equivalence.
pub fn classify_weak_form(ind: &KsIndicators) -> Verdict {
    let base = classify_imag_axis(ind);
    Verdict {
        decided_by: Rule::WeakForm,
        note: Some(format!("via {}", base.decided_by.token())),
        ..base
    }
}

fn require_order(poly: &StabilityPolynomial) -> Result<usize> {
    match poly.order() {
        0 => Err(Error::InconsistentScheme(
            "linear order 0: R(z) does not match e^z to first order".into(),
        )),
        p => Ok(p),
    }
}

/// Verdict on the class of asymptotically stable semi-dissipative matrices
/// and the index bound `⌊(p-1)/2⌋` up to which stability is guaranteed.
pub fn classify_class_as(poly: &StabilityPolynomial) -> Result<(Verdict, usize)> {
    let p = require_order(poly)?;
    let bound = (p - 1) / 2;
    if !poly.is_real() {
        return Ok((Verdict::new(Conclusion::Undecided, Rule::OpenComplex, &[]), bound));
    }
    let c = coefficient_condition(poly);
    let ev = [("condition_c", c.value())];
    let verdict = match c.truth {
        Truth::Holds => Verdict::new(Conclusion::No, Rule::ClassCoefficient, &ev),
        // s = p forces R to be the truncated exponential.
        _ if poly.is_truncated_exponential() => match p % 4 {
            3 => Verdict::new(Conclusion::Yes, Rule::OrderTable, &[("p", p as f64)]),
            _ => Verdict::new(Conclusion::Undecided, Rule::OpenGap, &ev),
        },
        _ => Verdict::new(Conclusion::Undecided, Rule::OpenGap, &ev),
    };
    Ok((verdict, bound))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub scheme: String,
    pub p: usize,
    pub s: usize,
    pub c: Vec<JsonScalar>,
    pub order_ambiguous: bool,
    pub indicators: KsIndicators,
    pub condition_c: ConditionEval,
    pub combined_condition: ConditionEval,
    pub imag_axis: Verdict,
    pub class_as: Verdict,
    pub class_as_index_bound: usize,
    pub overall: Verdict,
    pub weak_form: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair: Option<Verdict>,
}

impl StabilityReport {
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Full report. Rules are tried in a fixed order; the first that fires is
/// cited: combined condition, imaginary axis, class coefficient condition,
/// order table, conjunction.
pub fn classify_overall(poly: &StabilityPolynomial) -> Result<StabilityReport> {
    classify_named("custom", poly)
}

pub fn classify_scheme(scheme: &Scheme) -> Result<StabilityReport> {
    classify_named(&scheme.name, &scheme.polynomial)
}

fn classify_named(name: &str, poly: &StabilityPolynomial) -> Result<StabilityReport> {
    let p = require_order(poly)?;
    let ind = ks_indicators(poly);
    let imag = classify_imag_axis(&ind);
    let (class_as, bound) = classify_class_as(poly)?;
    let cond_c = coefficient_condition(poly);
    let combined = combined_condition(poly);

    let overall = if poly.is_real() && combined.holds() {
        let rule = if poly.is_truncated_exponential() && matches!(p % 4, 0 | 1) {
            Rule::TruncatedExponential
        } else {
            Rule::CombinedCondition
        };
        Verdict::new(Conclusion::No, rule, &[("combined_condition", combined.value())])
    } else if imag.conclusion == Conclusion::No {
        Verdict { decided_by: Rule::ImaginaryAxis, ..imag.clone() }
    } else if class_as.conclusion == Conclusion::No {
        class_as.clone()
    } else if imag.conclusion == Conclusion::Yes && class_as.conclusion == Conclusion::Yes {
        let rule = if class_as.decided_by == Rule::OrderTable {
            Rule::OrderTable
        } else {
            Rule::Conjunction
        };
        let mut v = Verdict::new(Conclusion::Yes, rule, &[]);
        v.evidence = imag.evidence.iter().chain(&class_as.evidence).cloned().collect();
        v
    } else {
        let open = if imag.conclusion == Conclusion::Undecided { &imag } else { &class_as };
        Verdict::new(Conclusion::Undecided, Rule::Conjunction, &[])
            .with_note(format!("component undecided: {}", open.decided_by.token()))
    };

    Ok(StabilityReport {
        scheme: name.to_string(),
        p,
        s: poly.stages(),
        c: poly.normalized().iter().map(|&z| JsonScalar::from_c64(z)).collect(),
        order_ambiguous: poly.order_ambiguous(),
        weak_form: classify_weak_form(&ind),
        indicators: ind,
        condition_c: cond_c,
        combined_condition: combined,
        imag_axis: imag,
        class_as,
        class_as_index_bound: bound,
        overall,
        pair: None,
    })
}

/// Verdict for the single matrix `m`, from its hypocoercivity index
/// computed by the definiteness chain.
pub fn classify_pair(poly: &StabilityPolynomial, m: &ComplexMatrix) -> Result<Verdict> {
    let p = require_order(poly)?;
    let norm = spectral_norm(m.as_matrix()).max(1.0);
    let lmax = hermitian_part_max_eigenvalue(m)?;
    if lmax > PSD_REL * norm {
        return Err(Error::input(format!(
            "matrix is not semi-dissipative: Hermitian part has eigenvalue {lmax:e}"
        )));
    }
    let stab = classify_stability(m, EIG_REL * norm)?;
    if !stab.is_asymptotically_stable() {
        return Err(Error::input(format!(
            "matrix is not asymptotically stable: spectral abscissa {:e}",
            stab.spectral_abscissa
        )));
    }
    let cert = hc_index_definitional(m, HC_CHAIN, m.dim())?;
    let HcIndex::Finite(index) = cert.index else {
        return Err(Error::Numerical(
            "asymptotically stable matrix without finite index".into(),
        ));
    };
    let reach = 2 * index + 1;
    let ev = [("m_hc", index as f64), ("p", p as f64)];
    if reach <= p {
        return Ok(Verdict::new(Conclusion::Yes, Rule::IndexBound, &ev));
    }
    if !poly.is_real() {
        return Ok(Verdict::new(Conclusion::Undecided, Rule::OpenComplex, &ev));
    }
    let c = coefficient_condition(poly);
    let ev = [ev[0], ev[1], ("condition_c", c.value())];
    Ok(match c.truth {
        Truth::Holds => Verdict::new(Conclusion::No, Rule::SingletonCoefficient, &ev),
        _ => Verdict::new(Conclusion::Undecided, Rule::OpenGap, &ev),
    })
}
