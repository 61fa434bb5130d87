//! JSON interchange for braces and forms, and the full analysis report.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::BilinearForm;
use crate::brace::{ElementTupleCodec, FiniteBrace};
use crate::error::{Error, Result};
use crate::extraspecial::{classify_strong, extract_form, recognize_extraspecial};
use crate::mask::SubsetMask;
use crate::series::{is_dedekind, AllSeries, NilpotencyReport, SeriesKind};
use crate::substructures::{generated, socle_fix_centre, subset_star};
use crate::ybe::{associated_solution, check_solution, SolutionReport};

/// A brace as explicit tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraceDocument {
    pub order: usize,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<BTreeMap<String, Value>>,
}

impl BraceDocument {
    /// Tables of `b`; tuple-coded braces get element labels and a
    /// `radices` entry in `meta` so the coding survives a round trip.
    pub fn from_brace(b: &FiniteBrace, mut meta: BTreeMap<String, Value>) -> BraceDocument {
        let radices = b.codec().radices();
        let labels = if radices.len() > 1 {
            meta.insert("radices".into(), Value::from(radices.to_vec()));
            Some((0..b.order()).map(|x| b.format_element(x)).collect())
        } else {
            None
        };
        BraceDocument {
            order: b.order(),
            add: b.add_table(),
            mul: b.mul_table(),
            labels,
            meta: (!meta.is_empty()).then_some(meta),
        }
    }

    pub fn from_json(text: &str) -> Result<BraceDocument> {
        serde_json::from_str(text).map_err(|e| Error::InvalidSpec(format!("brace document: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialise")
    }

    /// Validates the tables and restores the tuple coding when present.
    pub fn to_brace(&self) -> Result<FiniteBrace> {
        if self.add.len() != self.order || self.mul.len() != self.order {
            return Err(Error::InvalidSpec(format!(
                "declared order {} but tables have {} and {} rows",
                self.order,
                self.add.len(),
                self.mul.len()
            )));
        }
        if let Some(labels) = &self.labels {
            if labels.len() != self.order {
                return Err(Error::InvalidSpec(format!(
                    "{} labels for {} elements",
                    labels.len(),
                    self.order
                )));
            }
        }
        let b = FiniteBrace::validate(&self.add, &self.mul)?;
        let radices = self
            .meta
            .as_ref()
            .and_then(|m| m.get("radices"))
            .map(|v| serde_json::from_value::<Vec<usize>>(v.clone()))
            .transpose()
            .map_err(|e| Error::InvalidSpec(format!("meta.radices: {e}")))?;
        match radices {
            Some(r) if r.iter().all(|&x| x >= 1) && r.iter().product::<usize>() == b.order() => {
                b.with_codec(ElementTupleCodec::new(r))
            }
            Some(_) => Err(Error::InvalidSpec("meta.radices does not match the order".into())),
            None => Ok(b),
        }
    }
}

/// `{"p": prime, "dim": d, "matrix": [[...]]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormDocument {
    pub p: u32,
    pub dim: usize,
    pub matrix: Vec<Vec<i64>>,
}

impl FormDocument {
    pub fn to_form(&self) -> Result<BilinearForm> {
        if self.matrix.len() != self.dim {
            return Err(Error::InvalidSpec(format!(
                "dim is {} but the matrix has {} rows",
                self.dim,
                self.matrix.len()
            )));
        }
        Ok(BilinearForm::new(self.p, self.matrix.clone())?)
    }

    pub fn from_form(phi: &BilinearForm) -> FormDocument {
        FormDocument {
            p: phi.modulus(),
            dim: phi.dim(),
            matrix: phi
                .matrix()
                .iter()
                .map(|r| r.iter().map(|&x| x as i64).collect())
                .collect(),
        }
    }
}

/// Parses `diag(a,b,...)@Fp` or `[[a,b],[c,d]]@Fp`.
pub fn parse_inline_form(s: &str) -> Result<BilinearForm> {
    let bad = || Error::InvalidSpec(format!("cannot parse form {s:?}"));
    let (body, field) = s.trim().rsplit_once('@').ok_or_else(bad)?;
    let p: u32 = field
        .trim()
        .trim_start_matches(['F', 'f'])
        .trim_start_matches('_')
        .parse()
        .map_err(|_| bad())?;
    let body = body.trim();
    if let Some(inner) = body.strip_prefix("diag(").and_then(|r| r.strip_suffix(')')) {
        let entries: std::result::Result<Vec<i64>, _> =
            inner.split(',').map(|x| x.trim().parse::<i64>()).collect();
        return Ok(BilinearForm::diagonal(p, &entries.map_err(|_| bad())?)?);
    }
    let matrix: Vec<Vec<i64>> = serde_json::from_str(body).map_err(|_| bad())?;
    Ok(BilinearForm::new(p, matrix)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesSummary {
    pub kind: SeriesKind,
    pub length: usize,
    pub reached_terminal: bool,
    pub sizes: Vec<usize>,
    pub terms: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DedekindSummary {
    pub dedekind: bool,
    pub witness: Option<Vec<usize>>,
    /// Least `x` with `⟨x⟩` equal to the witness.
    pub witness_generator: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtraspecialSummary {
    pub c: usize,
    pub c_span: Vec<usize>,
    pub strong: bool,
    pub form: Vec<Vec<u32>>,
    pub classification: Option<String>,
    pub classification_map: Option<Vec<usize>>,
}

/// Everything the engine computes about one brace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub order: usize,
    pub additive_shape: Vec<usize>,
    pub multiplicatively_abelian: bool,
    pub star_rank: usize,
    pub soc: Vec<usize>,
    pub fix: Vec<usize>,
    pub centre: Vec<usize>,
    pub series: Vec<SeriesSummary>,
    pub nilpotency: NilpotencyReport,
    pub dedekind: DedekindSummary,
    pub extraspecial: Option<ExtraspecialSummary>,
    pub ybe: SolutionReport,
    #[serde(skip)]
    labels: Vec<String>,
}

pub fn analyze(a: &FiniteBrace, dedekind_cap: usize) -> Result<AnalysisReport> {
    let n = a.order();
    let full = SubsetMask::full(n);
    let sfc = socle_fix_centre(a)?;
    let all = AllSeries::compute(a)?;
    let nilpotency = all.report()?;
    let series = SeriesKind::ALL
        .iter()
        .map(|&k| {
            let s = all.get(k);
            SeriesSummary {
                kind: k,
                length: s.length(),
                reached_terminal: s.reached_terminal,
                sizes: s.terms.iter().map(SubsetMask::len).collect(),
                terms: s.terms.iter().map(SubsetMask::elements).collect(),
            }
        })
        .collect();
    let verdict = is_dedekind(a, dedekind_cap)?;
    let witness_generator = verdict
        .witness
        .as_ref()
        .and_then(|w| w.iter().find(|&x| &generated(a, x) == w));
    let dedekind = DedekindSummary {
        dedekind: verdict.dedekind,
        witness: verdict.witness.as_ref().map(SubsetMask::elements),
        witness_generator,
    };
    let extraspecial = match recognize_extraspecial(a)? {
        Some(cert) => {
            let form = extract_form(a, &cert)?;
            let (classification, classification_map) = if cert.strong {
                let c = classify_strong(a)?;
                (Some(c.spec.to_string()), Some(c.witness.map().to_vec()))
            } else {
                (None, None)
            };
            Some(ExtraspecialSummary {
                c: cert.c,
                c_span: cert.c_span.elements(),
                strong: cert.strong,
                form: form.matrix().to_vec(),
                classification,
                classification_map,
            })
        }
        None => None,
    };
    let ybe = check_solution(&associated_solution(a)?);
    Ok(AnalysisReport {
        order: n,
        additive_shape: a.additive_shape().to_vec(),
        multiplicatively_abelian: crate::substructures::multiplicative_group_is_abelian(a),
        star_rank: subset_star(a, &full, &full).len(),
        soc: sfc.soc.elements(),
        fix: sfc.fix.elements(),
        centre: sfc.centre.elements(),
        series,
        nilpotency,
        dedekind,
        extraspecial,
        ybe,
        labels: (0..n).map(|x| a.format_element(x)).collect(),
    })
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialise")
    }

    fn set(&self, elems: &[usize]) -> String {
        let parts: Vec<&str> = elems.iter().map(|&x| self.labels[x].as_str()).collect();
        format!("{{{}}}", parts.join(", "))
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let level = |l: Option<usize>| l.map_or("no".to_string(), |l| format!("yes (level {l})"));
        let _ = writeln!(s, "order: {}", self.order);
        let _ = writeln!(s, "additive group: {:?}", self.additive_shape);
        let _ = writeln!(s, "multiplicative group abelian: {}", self.multiplicatively_abelian);
        let _ = writeln!(s, "|A*A|: {}", self.star_rank);
        let _ = writeln!(s, "Soc: {}", self.set(&self.soc));
        let _ = writeln!(s, "Fix: {}", self.set(&self.fix));
        let _ = writeln!(s, "centre: {}", self.set(&self.centre));
        for ser in &self.series {
            let _ = writeln!(
                s,
                "{} series: sizes {:?}, length {}{}",
                ser.kind,
                ser.sizes,
                ser.length,
                if ser.reached_terminal { "" } else { " (does not terminate)" }
            );
        }
        let _ = writeln!(s, "left nilpotent: {}", level(self.nilpotency.left));
        let _ = writeln!(s, "right nilpotent: {}", level(self.nilpotency.right));
        let _ = writeln!(s, "centrally nilpotent: {}", level(self.nilpotency.central));
        let _ = writeln!(
            s,
            "multipermutation level: {}",
            self.nilpotency
                .multipermutation_level
                .map_or("infinite".to_string(), |l| l.to_string())
        );
        let _ = write!(s, "dedekind: {}", self.dedekind.dedekind);
        if let (Some(w), Some(g)) = (&self.dedekind.witness, self.dedekind.witness_generator) {
            let _ = write!(s, " (non-ideal subbrace <{}> = {})", self.labels[g], self.set(w));
        }
        s.push('\n');
        match &self.extraspecial {
            Some(e) => {
                let _ = writeln!(
                    s,
                    "extraspecial: c = {}, strong = {}, form = {:?}",
                    self.labels[e.c], e.strong, e.form
                );
                if let Some(c) = &e.classification {
                    let _ = writeln!(s, "classification: {c}");
                }
            }
            None => {
                let _ = writeln!(s, "extraspecial: no");
            }
        }
        let _ = writeln!(
            s,
            "ybe: braid = {}, involutive = {}, nondegenerate = {}",
            self.ybe.braid(),
            self.ybe.involutive(),
            self.ybe.nondegenerate()
        );
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extraspecial::{family, Family, FamilySpec};

    #[test]
    fn round_trip_keeps_tuple_coding() {
        let b = family(&FamilySpec::new(Family::E1, 2, 3).unwrap());
        let doc = BraceDocument::from_brace(&b, BTreeMap::new());
        let text = doc.to_json();
        let back = BraceDocument::from_json(&text).unwrap().to_brace().unwrap();
        assert_eq!(back.codec(), b.codec());
        assert_eq!(back.mul_table(), b.mul_table());
        assert_eq!(BraceDocument::from_brace(&back, BTreeMap::new()).to_json(), text);
    }

    #[test]
    fn bad_documents() {
        let mut doc = BraceDocument::from_brace(&FiniteBrace::abelian(&[3]).unwrap(), BTreeMap::new());
        doc.labels = Some(vec!["a".into()]);
        assert!(doc.to_brace().is_err());
        doc.labels = None;
        doc.mul[1][1] = 0;
        assert!(matches!(doc.to_brace(), Err(Error::Invalid(_))));
        assert!(BraceDocument::from_json("{\"order\": 1}").is_err());
    }

    #[test]
    fn inline_forms() {
        let f = parse_inline_form("diag(2,1)@F5").unwrap();
        assert_eq!(f, BilinearForm::diagonal(5, &[2, 1]).unwrap());
        let g = parse_inline_form("[[1,1],[0,1]]@F5").unwrap();
        assert_eq!(g.entry(0, 1), 1);
        assert!(parse_inline_form("diag(2,1)").is_err());
        assert!(parse_inline_form("diag(1)@F4").is_err());
        let doc = FormDocument::from_form(&g);
        assert_eq!(doc.to_form().unwrap(), g);
    }

    #[test]
    fn analysis_of_e0_1_3() {
        let b = family(&FamilySpec::new(Family::E0, 1, 3).unwrap());
        let r = analyze(&b, 4096).unwrap();
        assert!(r.dedekind.dedekind);
        assert_eq!(r.nilpotency.central, Some(2));
        assert_eq!(r.extraspecial.as_ref().unwrap().classification.as_deref(), Some("E0(1,3)"));
        assert!(r.render_text().contains("centrally nilpotent: yes (level 2)"));
        assert_eq!(analyze(&b, 4096).unwrap().to_json(), r.to_json());
    }
}
