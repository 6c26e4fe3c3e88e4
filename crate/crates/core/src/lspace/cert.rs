//! Drilling-filling certificates.
//!
//! ```text
//! # corners certificate v1
//! qhs M                          # rational homology sphere; first one is the root
//! qht T drills M                 # the drilled manifold; 1/0 refills its parent
//! group Z + Z/2                  # H₁ of the last qht
//! iota 1:0 0:1                   # images of μ and λ, as `free:torsion,…`
//! zero 1:0                       # zero coefficients of the torsion
//! horizon 1
//! fill T 1/2 M1                  # T filled along 1/2 is M1
//! qhs M1 census s345(-1,3) value 1
//! ```
//!
//! A qht without `group` and `iota` lines carries no torsion payload.
//! `zero` defaults to empty and `horizon` to the largest free coordinate of
//! the zero set.

use std::collections::HashMap;
use std::fmt::Write as _;

use super::{AbGroup, Elem, IotaMap, LspaceError, Slope, TorsionData};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QhsNode {
    pub label: String,
    pub census: Option<String>,
    /// Value claimed by whoever wrote the certificate; never trusted.
    pub claimed: Option<bool>,
    pub drillings: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Payload {
    pub iota: IotaMap,
    pub torsion: TorsionData,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QhtNode {
    pub label: String,
    pub parent: usize,
    pub payload: Option<Payload>,
    pub fillings: Vec<(Slope, usize)>,
}

/// A tree alternating between rational homology spheres and the solid tori
/// obtained by drilling them. Index 0 of `qhs` is the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub qhs: Vec<QhsNode>,
    pub qht: Vec<QhtNode>,
}

impl Certificate {
    pub fn new(root: &str) -> Certificate {
        Certificate { qhs: vec![QhsNode { label: root.into(), census: None, claimed: None, drillings: vec![] }], qht: vec![] }
    }

    pub fn root(&self) -> usize {
        0
    }

    pub fn add_qht(&mut self, parent: usize, label: &str, payload: Option<Payload>) -> usize {
        self.qht.push(QhtNode { label: label.into(), parent, payload, fillings: vec![] });
        self.qhs[parent].drillings.push(self.qht.len() - 1);
        self.qht.len() - 1
    }

    pub fn add_filling(&mut self, qht: usize, slope: Slope, label: &str, census: Option<&str>) -> usize {
        self.qhs.push(QhsNode { label: label.into(), census: census.map(String::from), claimed: None, drillings: vec![] });
        let id = self.qhs.len() - 1;
        self.qht[qht].fillings.push((slope, id));
        id
    }

    pub fn qhs_by_label(&self, label: &str) -> Option<usize> {
        self.qhs.iter().position(|n| n.label == label)
    }

    pub fn qht_by_label(&self, label: &str) -> Option<usize> {
        self.qht.iter().position(|n| n.label == label)
    }

    pub fn node_count(&self) -> usize {
        self.qhs.len() + self.qht.len()
    }

    /// Every node reachable from the root exactly once, and labels unique.
    pub fn check(&self) -> Result<(), LspaceError> {
        if self.qhs.is_empty() {
            return Err(LspaceError::NoRoot);
        }
        let mut seen_s = vec![0usize; self.qhs.len()];
        let mut seen_t = vec![0usize; self.qht.len()];
        let mut stack = vec![0usize];
        seen_s[0] = 1;
        while let Some(s) = stack.pop() {
            for &t in &self.qhs[s].drillings {
                seen_t[t] += 1;
                if self.qht[t].parent != s || seen_t[t] > 1 {
                    return Err(LspaceError::Malformed(format!("{} is drilled from more than one place", self.qht[t].label)));
                }
                for &(_, c) in &self.qht[t].fillings {
                    seen_s[c] += 1;
                    if seen_s[c] > 1 {
                        return Err(LspaceError::Malformed(format!("{} is reached twice", self.qhs[c].label)));
                    }
                    stack.push(c);
                }
            }
        }
        if let Some(i) = seen_s.iter().position(|&n| n == 0) {
            return Err(LspaceError::Malformed(format!("{} is not connected to the root", self.qhs[i].label)));
        }
        if let Some(i) = seen_t.iter().position(|&n| n == 0) {
            return Err(LspaceError::Malformed(format!("{} is not connected to the root", self.qht[i].label)));
        }
        let mut labels: Vec<&str> = self.qhs.iter().map(|n| n.label.as_str()).chain(self.qht.iter().map(|n| n.label.as_str())).collect();
        labels.sort_unstable();
        if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
            return Err(LspaceError::Malformed(format!("label {} is used twice", w[0])));
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("# corners certificate v1\n");
        self.write_qhs(0, &mut out);
        out
    }

    fn write_qhs(&self, s: usize, out: &mut String) {
        let n = &self.qhs[s];
        let _ = write!(out, "qhs {}", n.label);
        if let Some(c) = &n.census {
            let _ = write!(out, " census {c}");
        }
        if let Some(v) = n.claimed {
            let _ = write!(out, " value {}", if v { 1 } else { -1 });
        }
        out.push('\n');
        for &t in &n.drillings {
            let y = &self.qht[t];
            let _ = writeln!(out, "qht {} drills {}", y.label, n.label);
            if let Some(p) = &y.payload {
                let _ = writeln!(out, "group {}", p.iota.group);
                let _ = writeln!(out, "iota {} {}", p.iota.mu, p.iota.lambda);
                let zero: Vec<String> = p.torsion.zero_set.iter().map(|e| e.to_string()).collect();
                let _ = writeln!(out, "{}", format!("zero {}", zero.join(" ")).trim_end());
                let _ = writeln!(out, "horizon {}", p.torsion.horizon);
            }
            for &(slope, c) in &y.fillings {
                let _ = writeln!(out, "fill {} {slope} {}", y.label, self.qhs[c].label);
                self.write_qhs(c, out);
            }
        }
    }
}

#[derive(Default)]
struct RawPayload {
    line: usize,
    group: Option<String>,
    iota: Option<(String, String)>,
    zero: Vec<String>,
    horizon: Option<i64>,
}

impl RawPayload {
    fn build(self) -> Result<Option<Payload>, LspaceError> {
        let err = |msg: String| LspaceError::Format { line: self.line, msg };
        let (group, (mu, lambda)) = match (self.group, self.iota) {
            (None, None) if self.zero.is_empty() && self.horizon.is_none() => return Ok(None),
            (Some(g), Some(i)) => (g, i),
            _ => return Err(err("a torsion payload needs both `group` and `iota`".into())),
        };
        let g: AbGroup = group.parse().map_err(|e: LspaceError| err(e.to_string()))?;
        let elem = |s: &str| Elem::parse(s, &g).map_err(|e| err(e.to_string()));
        let iota = IotaMap::new(g.clone(), elem(&mu)?, elem(&lambda)?).map_err(|e| err(e.to_string()))?;
        let zero = self.zero.iter().map(|s| elem(s)).collect::<Result<Vec<_>, _>>()?;
        let horizon = self.horizon.unwrap_or_else(|| zero.iter().map(|e| e.free).max().unwrap_or(0));
        let torsion = TorsionData::new(&g, zero, horizon).map_err(|e| err(e.to_string()))?;
        Ok(Some(Payload { iota, torsion }))
    }
}

fn last<'a>(qht: &'a mut [(String, String, RawPayload)], line: usize, key: &str) -> Result<&'a mut RawPayload, LspaceError> {
    qht.last_mut().map(|q| &mut q.2).ok_or_else(|| LspaceError::Format { line, msg: format!("`{key}` before any qht") })
}

pub fn parse_certificate(text: &str) -> Result<Certificate, LspaceError> {
    struct Qhs {
        label: String,
        census: Option<String>,
        claimed: Option<bool>,
    }
    let mut qhs: Vec<Qhs> = Vec::new();
    let mut qht: Vec<(String, String, RawPayload)> = Vec::new();
    let mut fills: Vec<(usize, String, Slope, String)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| LspaceError::Format { line: line_no, msg };
        let words: Vec<&str> = line.split_whitespace().collect();
        match words[0] {
            "qhs" if words.len() >= 2 => {
                let mut node = Qhs { label: words[1].into(), census: None, claimed: None };
                let mut rest = words[2..].iter();
                while let Some(&k) = rest.next() {
                    let v = rest.next().ok_or_else(|| err(format!("`{k}` needs a value")))?;
                    match k {
                        "census" => node.census = Some((*v).into()),
                        "value" => {
                            node.claimed = Some(match *v {
                                "1" => true,
                                "0" | "-1" => false,
                                _ => return Err(err(format!("bad value `{v}`"))),
                            })
                        }
                        _ => return Err(err(format!("unknown key `{k}`"))),
                    }
                }
                qhs.push(node);
            }
            "qht" if words.len() == 4 && words[2] == "drills" => {
                qht.push((words[1].into(), words[3].into(), RawPayload { line: line_no, ..Default::default() }));
            }
            "group" => last(&mut qht, line_no, "group")?.group = Some(line["group".len()..].trim().to_string()),
            "iota" if words.len() == 3 => last(&mut qht, line_no, "iota")?.iota = Some((words[1].into(), words[2].into())),
            "zero" => last(&mut qht, line_no, "zero")?.zero = words[1..].iter().map(|s| s.to_string()).collect(),
            "horizon" if words.len() == 2 => {
                let h = words[1].parse().map_err(|_| err(format!("bad horizon `{}`", words[1])))?;
                last(&mut qht, line_no, "horizon")?.horizon = Some(h);
            }
            "fill" if words.len() == 4 => {
                let s: Slope = words[2].parse().map_err(|_| err(format!("bad slope `{}`", words[2])))?;
                fills.push((line_no, words[1].into(), s, words[3].into()));
            }
            _ => return Err(err(format!("unrecognised line `{line}`"))),
        }
    }

    if qhs.is_empty() {
        return Err(LspaceError::NoRoot);
    }
    let s_index: HashMap<&str, usize> = qhs.iter().enumerate().map(|(i, n)| (n.label.as_str(), i)).collect();
    let mut cert = Certificate {
        qhs: qhs.iter().map(|n| QhsNode { label: n.label.clone(), census: n.census.clone(), claimed: n.claimed, drillings: vec![] }).collect(),
        qht: Vec::new(),
    };
    for (label, parent, raw) in qht {
        let line = raw.line;
        let &p = s_index
            .get(parent.as_str())
            .ok_or_else(|| LspaceError::Format { line, msg: format!("unknown qhs `{parent}`") })?;
        let payload = raw.build()?;
        cert.add_qht(p, &label, payload);
    }
    for (line, t, slope, s) in fills {
        let t = cert.qht_by_label(&t).ok_or_else(|| LspaceError::Format { line, msg: format!("unknown qht `{t}`") })?;
        let &c = s_index.get(s.as_str()).ok_or_else(|| LspaceError::Format { line, msg: format!("unknown qhs `{s}`") })?;
        cert.qht[t].fillings.push((slope, c));
    }
    cert.check()?;
    Ok(cert)
}
