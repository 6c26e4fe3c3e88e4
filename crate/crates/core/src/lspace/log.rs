//! Transcripts of the drilling-filling search.
//!
//! Each line starts with the label of the rational homology sphere it talks
//! about (digits, with `A`/`B` marking the two intervals of a double
//! interval) and a colon. `M<label>` is that manifold and `T<label>` the
//! solid torus obtained by drilling it.
//!
//! ```text
//! : M has volume 17.2248... and homology Z/513
//! : Computing Turaev torsion drilling...
//! 1: T(1, 2) has volume 14.2777... and homology Z/329
//! 11: The manifold T1 filled with (-1, 2) is [s345(-1,3)], its L-space value is 1
//! 122: T12(3, 5) is t12195(-1,-3), whose L-space value is known to be 1
//! 22111: Double interval..
//! ```
//!
//! Nodes mentioned only as ancestors of a line are created as placeholders
//! and print nothing.

use std::collections::HashMap;
use std::fmt::Write as _;

use super::{CensusTable, Certificate, LspaceError, Slope};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LogKind {
    Qhs,
    Qht,
}

/// A census identification of a rational homology sphere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identified {
    pub name: String,
    pub value: i64,
    /// Written as `is NAME, whose L-space value is known to be V` after a
    /// volume line, rather than as a single `The manifold … is [NAME]` line.
    pub known: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogNode {
    /// `""`, `"12"`, `"22111A1"` for spheres; the same with a leading `T` for tori.
    pub label: String,
    pub kind: LogKind,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    /// Filling coefficients from the parent torus, as written.
    pub slope: Option<(i64, i64)>,
    pub volume: Option<String>,
    pub homology: Option<String>,
    pub identified: Option<Identified>,
    pub double: bool,
    /// Only inferred from a descendant.
    pub implicit: bool,
}

/// The tree read from a transcript. Nodes are in preorder; index 0 is the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuralCertificate {
    pub nodes: Vec<LogNode>,
    pub result: Option<bool>,
}

impl StructuralCertificate {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn find(&self, label: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.label == label)
    }

    /// Sphere labels with their census names, in preorder.
    pub fn census_leaves(&self) -> Vec<(&str, &Identified)> {
        self.nodes.iter().filter_map(|n| n.identified.as_ref().map(|i| (n.label.as_str(), i))).collect()
    }

    /// Names whose value in the transcript disagrees with the census.
    pub fn census_mismatches(&self, census: &CensusTable) -> Vec<String> {
        self.census_leaves()
            .into_iter()
            .filter(|(_, i)| census.get(&i.name).is_some_and(|v| v != (i.value == 1)))
            .map(|(_, i)| i.name.clone())
            .collect()
    }

    /// Parent and child links agree, kinds alternate, and every sphere below
    /// the root that is not a placeholder carries its filling slope.
    pub fn check(&self) -> Result<(), LspaceError> {
        if self.nodes.is_empty() {
            return Err(LspaceError::NoRoot);
        }
        for (i, n) in self.nodes.iter().enumerate() {
            let bad = |msg: &str| Err(LspaceError::Malformed(format!("{}: {msg}", display_name(n))));
            match n.parent {
                None if i != 0 => return bad("no parent"),
                Some(p) if !self.nodes[p].children.contains(&i) => return bad("parent does not list it"),
                Some(p) if self.nodes[p].kind == n.kind => return bad("parent of the same kind"),
                _ => {}
            }
            if n.kind == LogKind::Qhs && i != 0 && !n.implicit && n.slope.is_none() {
                return bad("no filling slope");
            }
        }
        Ok(())
    }

    /// The same tree as a certificate without torsion payloads.
    pub fn to_certificate(&self) -> Result<Certificate, LspaceError> {
        self.check()?;
        let mut c = Certificate::new(&display_name(&self.nodes[0]));
        let mut ids: HashMap<usize, usize> = HashMap::from([(0, 0)]);
        for (i, n) in self.nodes.iter().enumerate().skip(1) {
            let p = n.parent.expect("checked");
            let id = match n.kind {
                LogKind::Qht => c.add_qht(ids[&p], &display_name(n), None),
                LogKind::Qhs => {
                    let (a, b) = n
                        .slope
                        .ok_or_else(|| LspaceError::Malformed(format!("{}: filling slope unknown", display_name(n))))?;
                    let slope = Slope::new(a, b)?;
                    let id = c.add_filling(ids[&p], slope, &display_name(n), n.identified.as_ref().map(|x| x.name.as_str()));
                    c.qhs[id].claimed = n.identified.as_ref().map(|x| x.value == 1);
                    id
                }
            };
            ids.insert(i, id);
        }
        Ok(c)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if !self.nodes.is_empty() {
            self.write_node(0, &mut out);
        }
        if let Some(r) = self.result {
            let _ = writeln!(out, "\n{}", if r { "True" } else { "False" });
        }
        out
    }

    fn write_node(&self, i: usize, out: &mut String) {
        let n = &self.nodes[i];
        if !n.implicit {
            match n.kind {
                LogKind::Qhs => self.write_qhs(n, out),
                LogKind::Qht => {
                    let _ = writeln!(out, "{}: Computing Turaev torsion drilling...", &n.label[1..]);
                }
            }
        }
        if n.double {
            let _ = writeln!(out, "{}: Double interval..", &n.label[1..]);
        }
        for &c in &n.children {
            self.write_node(c, out);
        }
    }

    fn write_qhs(&self, n: &LogNode, out: &mut String) {
        let parent = n.parent.map(|p| &self.nodes[p]);
        let filled = match (parent, n.slope) {
            (Some(t), Some((a, b))) => format!("{}({a}, {b})", t.label),
            _ => "M".to_string(),
        };
        if let Some(v) = &n.volume {
            let _ = write!(out, "{}: {filled} has volume {v}", n.label);
            if let Some(h) = &n.homology {
                let _ = write!(out, " and homology {h}");
            }
            out.push('\n');
        }
        match (&n.identified, parent, n.slope) {
            (Some(id), _, _) if id.known => {
                let _ = writeln!(out, "{}: {filled} is {}, whose L-space value is known to be {}", n.label, id.name, id.value);
            }
            (Some(id), Some(t), Some((a, b))) => {
                let _ = writeln!(
                    out,
                    "{}: The manifold {} filled with ({a}, {b}) is [{}], its L-space value is {}",
                    n.label, t.label, id.name, id.value
                );
            }
            _ => {}
        }
    }
}

fn display_name(n: &LogNode) -> String {
    match n.kind {
        LogKind::Qhs => format!("M{}", n.label),
        LogKind::Qht => n.label.clone(),
    }
}

/// Label of the sphere whose drilling was filled to give `label`.
fn parent_sphere(label: &str) -> Option<&str> {
    let mut s = label.strip_suffix(|c: char| c.is_ascii_digit())?;
    if let Some(t) = s.strip_suffix(['A', 'B']) {
        s = t;
    }
    Some(s)
}

struct Builder {
    nodes: Vec<LogNode>,
    index: HashMap<(LogKind, String), usize>,
}

impl Builder {
    fn node(&mut self, kind: LogKind, label: &str) -> usize {
        if let Some(&i) = self.index.get(&(kind, label.to_string())) {
            return i;
        }
        let parent = match kind {
            LogKind::Qht => Some(self.node(LogKind::Qhs, &label[1..])),
            LogKind::Qhs => parent_sphere(label).map(|p| self.node(LogKind::Qht, &format!("T{p}"))),
        };
        let i = self.nodes.len();
        self.nodes.push(LogNode {
            label: label.to_string(),
            kind,
            parent,
            children: vec![],
            slope: None,
            volume: None,
            homology: None,
            identified: None,
            double: false,
            implicit: true,
        });
        if let Some(p) = parent {
            self.nodes[p].children.push(i);
        }
        self.index.insert((kind, label.to_string()), i);
        i
    }

    /// The sphere `label`, filled from the torus `torus` along `slope`.
    fn filling(&mut self, label: &str, torus: &str, slope: (i64, i64)) -> Result<usize, String> {
        let expected = parent_sphere(label).map(|p| format!("T{p}"));
        if expected.as_deref() != Some(torus) {
            return Err(format!("M{label} cannot be a filling of {torus}"));
        }
        let i = self.node(LogKind::Qhs, label);
        match self.nodes[i].slope {
            Some(s) if s != slope => Err(format!("M{label} filled along two slopes")),
            _ => {
                self.nodes[i].slope = Some(slope);
                self.nodes[i].implicit = false;
                Ok(i)
            }
        }
    }

    /// Preorder renumbering.
    fn finish(self) -> Vec<LogNode> {
        if self.nodes.is_empty() {
            return self.nodes;
        }
        let mut order = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![0usize];
        while let Some(i) = stack.pop() {
            order.push(i);
            stack.extend(self.nodes[i].children.iter().rev());
        }
        let mut new_id = vec![0usize; self.nodes.len()];
        for (k, &i) in order.iter().enumerate() {
            new_id[i] = k;
        }
        order
            .iter()
            .map(|&i| {
                let mut n = self.nodes[i].clone();
                n.parent = n.parent.map(|p| new_id[p]);
                n.children = n.children.iter().map(|&c| new_id[c]).collect();
                n
            })
            .collect()
    }
}

fn split_pair(s: &str) -> Option<((i64, i64), &str)> {
    let s = s.strip_prefix('(')?;
    let (inside, rest) = s.split_once(')')?;
    let (a, b) = inside.split_once(',')?;
    Some(((a.trim().parse().ok()?, b.trim().parse().ok()?), rest))
}

pub fn parse_log(text: &str) -> Result<StructuralCertificate, LspaceError> {
    let mut b = Builder { nodes: Vec::new(), index: HashMap::new() };
    let mut result = None;
    for (k, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let err = |msg: String| LspaceError::Format { line: k + 1, msg };
        match line {
            "" | "Inizializing..." | "Initializing..." => continue,
            "True" => {
                result = Some(true);
                continue;
            }
            "False" => {
                result = Some(false);
                continue;
            }
            _ => {}
        }
        let (label, body) = line.split_once(": ").or_else(|| line.strip_suffix(':').map(|l| (l, ""))).ok_or_else(|| err(format!("no label in `{line}`")))?;
        if !label.chars().all(|c| c.is_ascii_digit() || c == 'A' || c == 'B') {
            return Err(err(format!("bad label `{label}`")));
        }
        let body = body.trim();
        if body == "Computing Turaev torsion drilling..." {
            let t = b.node(LogKind::Qht, &format!("T{label}"));
            b.nodes[t].implicit = false;
        } else if body == "Double interval.." {
            let t = b.node(LogKind::Qht, &format!("T{label}"));
            b.nodes[t].double = true;
        } else if let Some(rest) = body.strip_prefix("The manifold ") {
            let (torus, rest) = rest.split_once(" filled with ").ok_or_else(|| err(format!("bad filling line `{body}`")))?;
            let (slope, rest) = split_pair(rest).ok_or_else(|| err(format!("bad slope in `{body}`")))?;
            let rest = rest.strip_prefix(" is [").ok_or_else(|| err(format!("bad filling line `{body}`")))?;
            let (name, rest) = rest.split_once("], its L-space value is ").ok_or_else(|| err(format!("bad filling line `{body}`")))?;
            let value = rest.trim().parse().map_err(|_| err(format!("bad value `{rest}`")))?;
            let i = b.filling(label, torus, slope).map_err(err)?;
            b.nodes[i].identified = Some(Identified { name: name.into(), value, known: false });
        } else {
            // `M has …`, `T12(3, 5) has …` or `T12(3, 5) is NAME, whose …`
            let (i, rest) = if let Some(rest) = body.strip_prefix("M ") {
                if !label.is_empty() {
                    return Err(err("only the root is called M".into()));
                }
                let i = b.node(LogKind::Qhs, "");
                b.nodes[i].implicit = false;
                (i, rest)
            } else {
                let open = body.find('(').ok_or_else(|| err(format!("unrecognised line `{body}`")))?;
                let (slope, rest) = split_pair(&body[open..]).ok_or_else(|| err(format!("bad slope in `{body}`")))?;
                (b.filling(label, &body[..open], slope).map_err(err)?, rest.trim_start())
            };
            if let Some(rest) = rest.strip_prefix("has volume ") {
                let (vol, hom) = match rest.split_once(" and homology ") {
                    Some((v, h)) => (v, Some(h.to_string())),
                    None => (rest, None),
                };
                b.nodes[i].volume = Some(vol.to_string());
                b.nodes[i].homology = hom;
            } else if let Some(rest) = rest.strip_prefix("is ") {
                let (name, value) = rest
                    .split_once(", whose L-space value is known to be ")
                    .ok_or_else(|| err(format!("bad identification `{body}`")))?;
                let value = value.trim().parse().map_err(|_| err(format!("bad value `{value}`")))?;
                b.nodes[i].identified = Some(Identified { name: name.into(), value, known: true });
            } else {
                return Err(err(format!("unrecognised line `{body}`")));
            }
        }
    }
    if b.nodes.is_empty() {
        return Err(LspaceError::NoRoot);
    }
    Ok(StructuralCertificate { nodes: b.finish(), result })
}
