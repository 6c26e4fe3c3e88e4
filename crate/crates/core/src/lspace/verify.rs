use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use super::{candidate_intervals, longitude, Certificate, CensusTable, LspaceError, Slope, SlopeInterval};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Verified,
    Refuted,
    Unproven,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Verified => "VERIFIED-L",
            Verdict::Refuted => "REFUTED",
            Verdict::Unproven => "UNPROVEN",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reason {
    /// The census lists it as an L-space.
    Census(String),
    /// Two L-space fillings of this drilling lie in an interval containing 1/0.
    Interval { qht: String, interval: SlopeInterval, slopes: Vec<Slope> },
    /// The census lists it as not an L-space.
    CensusFalse(String),
    NotInCensus,
    NoTorsionData(String),
    TargetIsLongitude(String),
    SlopeNotInInterval(String, Slope),
    FloerSimplicityNotEstablished(String, usize),
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reason::Census(n) => write!(f, "census {n}"),
            Reason::Interval { qht, interval, slopes } => {
                let s: Vec<String> = slopes.iter().map(|s| s.to_string()).collect();
                write!(f, "{qht} fillings {} in {interval}", s.join(", "))
            }
            Reason::CensusFalse(n) => write!(f, "census says {n} is not an L-space"),
            Reason::NotInCensus => write!(f, "not in census and not drilled"),
            Reason::NoTorsionData(t) => write!(f, "{t}: no torsion data"),
            Reason::TargetIsLongitude(t) => write!(f, "{t}: 1/0 is the longitude"),
            Reason::SlopeNotInInterval(t, s) => write!(f, "{t}: slope not in interval ({s})"),
            Reason::FloerSimplicityNotEstablished(t, n) => {
                write!(f, "{t}: Floer simplicity not established ({n} L-space filling slope{})", if *n == 1 { "" } else { "s" })
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeVerdict {
    pub label: String,
    pub verdict: Verdict,
    pub reason: Reason,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QhtReport {
    pub label: String,
    pub longitude: Option<Slope>,
    pub intervals: Vec<SlopeInterval>,
    /// Failure reason, or `None` when some interval holds two L-space slopes.
    pub failure: Option<Reason>,
}

/// Verdicts indexed like the certificate's nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerdictTree {
    pub qhs: Vec<NodeVerdict>,
    pub qht: Vec<QhtReport>,
    /// Preorder: whether the entry is a qhs, its index and its depth.
    order: Vec<(bool, usize, usize)>,
}

impl VerdictTree {
    pub fn root(&self) -> &NodeVerdict {
        &self.qhs[0]
    }

    pub fn by_label(&self, label: &str) -> Option<&NodeVerdict> {
        self.qhs.iter().find(|n| n.label == label)
    }

    pub fn qht_by_label(&self, label: &str) -> Option<&QhtReport> {
        self.qht.iter().find(|n| n.label == label)
    }

    /// `root: VERDICT` followed by an indented line per node.
    pub fn to_text(&self) -> String {
        let mut out = format!("root: {}\n", self.root().verdict);
        for &(is_qhs, i, depth) in &self.order {
            let pad = "  ".repeat(depth);
            if is_qhs {
                let n = &self.qhs[i];
                let _ = writeln!(out, "{pad}{}: {} ({})", n.label, n.verdict, n.reason);
            } else {
                let t = &self.qht[i];
                let iv: Vec<String> = t.intervals.iter().map(|i| i.to_string()).collect();
                let status = match &t.failure {
                    None => "ok".to_string(),
                    Some(r) => r.to_string(),
                };
                let _ = writeln!(out, "{pad}{}: intervals {} ({status})", t.label, iv.join(" or "));
            }
        }
        out
    }
}

/// Checks a certificate against a census table. Fails on a malformed tree,
/// or when a node is proved to be an L-space but the census says otherwise.
pub fn verify_certificate(c: &Certificate, census: &CensusTable) -> Result<VerdictTree, LspaceError> {
    c.check()?;
    for n in &c.qhs {
        if let (Some(name), Some(claim)) = (&n.census, n.claimed) {
            if census.get(name).is_some_and(|v| v != claim) {
                return Err(LspaceError::Contradiction(name.clone()));
            }
        }
    }
    let mut v = Verifier {
        c,
        census,
        qhs: vec![None; c.qhs.len()],
        qht: vec![None; c.qht.len()],
        order: Vec::new(),
    };
    v.qhs_node(0, 0)?;
    Ok(VerdictTree {
        qhs: v.qhs.into_iter().map(Option::unwrap).collect(),
        qht: v.qht.into_iter().map(Option::unwrap).collect(),
        order: v.order,
    })
}

struct Verifier<'a> {
    c: &'a Certificate,
    census: &'a CensusTable,
    qhs: Vec<Option<NodeVerdict>>,
    qht: Vec<Option<QhtReport>>,
    order: Vec<(bool, usize, usize)>,
}

impl Verifier<'_> {
    fn qhs_node(&mut self, s: usize, depth: usize) -> Result<Verdict, LspaceError> {
        let n = &self.c.qhs[s];
        self.order.push((true, s, depth));
        let mut proved: Option<Reason> = None;
        let mut failure: Option<Reason> = None;
        for &t in &n.drillings {
            match self.qht_node(t, depth + 1)? {
                Ok(r) if proved.is_none() => proved = Some(r),
                Ok(_) => {}
                Err(r) if failure.is_none() => failure = Some(r),
                Err(_) => {}
            }
        }
        let known = n.census.as_ref().and_then(|name| self.census.get(name).map(|v| (name.clone(), v)));
        let (verdict, reason) = match (known, proved) {
            (Some((name, false)), Some(_)) => return Err(LspaceError::Contradiction(name)),
            (Some((name, false)), None) => (Verdict::Refuted, Reason::CensusFalse(name)),
            (Some((name, true)), _) => (Verdict::Verified, Reason::Census(name)),
            (None, Some(r)) => (Verdict::Verified, r),
            (None, None) => (Verdict::Unproven, failure.unwrap_or(Reason::NotInCensus)),
        };
        self.qhs[s] = Some(NodeVerdict { label: n.label.clone(), verdict, reason });
        Ok(verdict)
    }

    /// `Ok` with the proving reason, or `Err` with why the drilling fails.
    fn qht_node(&mut self, t: usize, depth: usize) -> Result<Result<Reason, Reason>, LspaceError> {
        let y = &self.c.qht[t];
        self.order.push((false, t, depth));
        let mut verified: BTreeSet<Slope> = BTreeSet::new();
        for &(slope, child) in &y.fillings {
            if self.qhs_node(child, depth + 1)? == Verdict::Verified {
                verified.insert(slope);
            }
        }
        let mut report = QhtReport { label: y.label.clone(), longitude: None, intervals: vec![], failure: None };
        let outcome = match &y.payload {
            None => Err(Reason::NoTorsionData(y.label.clone())),
            Some(p) => {
                let l = longitude(&p.iota);
                report.longitude = Some(l);
                if l == Slope::INFINITY {
                    Err(Reason::TargetIsLongitude(y.label.clone()))
                } else {
                    report.intervals = candidate_intervals(&p.torsion, &p.iota, Slope::INFINITY)?;
                    judge(&y.label, &report.intervals, &verified)
                }
            }
        };
        report.failure = outcome.as_ref().err().cloned();
        self.qht[t] = Some(report);
        Ok(outcome)
    }
}

fn judge(label: &str, intervals: &[SlopeInterval], verified: &BTreeSet<Slope>) -> Result<Reason, Reason> {
    let mut best = 0;
    for i in intervals {
        let inside: Vec<Slope> = verified.iter().copied().filter(|&s| i.contains(s)).collect();
        if inside.len() >= 2 {
            return Ok(Reason::Interval { qht: label.to_string(), interval: *i, slopes: inside });
        }
        best = best.max(inside.len());
    }
    match verified.iter().find(|&&s| !intervals.iter().any(|i| i.contains(s))) {
        Some(&s) => Err(Reason::SlopeNotInInterval(label.to_string(), s)),
        None => Err(Reason::FloerSimplicityNotEstablished(label.to_string(), best)),
    }
}
