use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use super::{LspaceError, Slope};

/// Groups larger than this are refused when enumerating torsion elements.
pub const MAX_TORSION: u64 = 1 << 16;

/// `Z ⊕ Z/t₁ ⊕ … ⊕ Z/t_r` with `t₁ | t₂ | …` and every `tᵢ ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbGroup {
    factors: Vec<i64>,
}

/// An element: free coordinate and torsion coordinates, each reduced mod its factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem {
    pub free: i64,
    pub tors: Vec<i64>,
}

impl AbGroup {
    pub fn new(factors: Vec<i64>) -> Result<AbGroup, LspaceError> {
        if factors.iter().any(|&t| t < 2) {
            return Err(LspaceError::Group("torsion factors must be at least 2".into()));
        }
        if factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(LspaceError::Group("invariant factors must divide each other".into()));
        }
        Ok(AbGroup { factors })
    }

    pub fn integers() -> AbGroup {
        AbGroup { factors: Vec::new() }
    }

    pub fn factors(&self) -> &[i64] {
        &self.factors
    }

    pub fn torsion_order(&self) -> u64 {
        self.factors.iter().map(|&t| t as u64).product()
    }

    pub fn elem(&self, free: i64, tors: &[i64]) -> Result<Elem, LspaceError> {
        if tors.len() != self.factors.len() {
            return Err(LspaceError::Group(format!(
                "element has {} torsion coordinates, group has {}",
                tors.len(),
                self.factors.len()
            )));
        }
        Ok(Elem { free, tors: tors.iter().zip(&self.factors).map(|(&x, &t)| x.rem_euclid(t)).collect() })
    }

    pub fn zero(&self) -> Elem {
        Elem { free: 0, tors: vec![0; self.factors.len()] }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        self.combine(1, a, 1, b)
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.combine(1, a, -1, b)
    }

    /// `x·a + y·b`.
    pub fn combine(&self, x: i64, a: &Elem, y: i64, b: &Elem) -> Elem {
        let tors = a
            .tors
            .iter()
            .zip(&b.tors)
            .zip(&self.factors)
            .map(|((&s, &t), &n)| (x as i128 * s as i128 + y as i128 * t as i128).rem_euclid(n as i128) as i64)
            .collect();
        Elem { free: x * a.free + y * b.free, tors }
    }

    /// Every torsion tuple, in lexicographic order.
    pub fn torsion_elements(&self) -> Result<Vec<Vec<i64>>, LspaceError> {
        if self.torsion_order() > MAX_TORSION {
            return Err(LspaceError::Group(format!("torsion subgroup of order {} is too large", self.torsion_order())));
        }
        let mut out = vec![Vec::new()];
        for &t in &self.factors {
            out = out.into_iter().flat_map(|v| (0..t).map(move |x| [v.clone(), vec![x]].concat())).collect();
        }
        Ok(out)
    }

    /// Order of a torsion tuple.
    fn order(&self, tors: &[i64]) -> i64 {
        tors.iter().zip(&self.factors).fold(1, |acc, (&x, &t)| acc.lcm(&(t / x.gcd(&t))))
    }
}

impl fmt::Display for AbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z")?;
        for t in &self.factors {
            write!(f, " + Z/{t}")?;
        }
        Ok(())
    }
}

impl FromStr for AbGroup {
    type Err = LspaceError;

    /// `Z + Z/2 + Z/4`; the free summand must come first.
    fn from_str(s: &str) -> Result<AbGroup, LspaceError> {
        let mut parts = s.split('+').map(str::trim);
        if parts.next() != Some("Z") {
            return Err(LspaceError::Group(format!("`{s}` must start with a free summand Z")));
        }
        let factors = parts
            .map(|p| {
                p.strip_prefix("Z/")
                    .and_then(|n| n.parse().ok())
                    .ok_or_else(|| LspaceError::Group(format!("bad summand `{p}`")))
            })
            .collect::<Result<_, _>>()?;
        AbGroup::new(factors)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.free)?;
        for (i, t) in self.tors.iter().enumerate() {
            write!(f, "{}{t}", if i == 0 { ":" } else { "," })?;
        }
        Ok(())
    }
}

impl Elem {
    /// `f` or `f:t1,t2,…`, reduced into `g`.
    pub fn parse(s: &str, g: &AbGroup) -> Result<Elem, LspaceError> {
        let bad = || LspaceError::Group(format!("bad element `{s}`"));
        let (free, tors) = match s.split_once(':') {
            Some((f, t)) => (f, t.split(',').map(|x| x.trim().parse::<i64>().map_err(|_| bad())).collect::<Result<Vec<_>, _>>()?),
            None => (s, Vec::new()),
        };
        g.elem(free.trim().parse().map_err(|_| bad())?, &tors)
    }
}

/// The map `H₁(∂Y) = Z⟨μ, λ⟩ → H₁(Y)`, given by the images of μ and λ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IotaMap {
    pub group: AbGroup,
    pub mu: Elem,
    pub lambda: Elem,
}

impl IotaMap {
    pub fn new(group: AbGroup, mu: Elem, lambda: Elem) -> Result<IotaMap, LspaceError> {
        let mu = group.elem(mu.free, &mu.tors)?;
        let lambda = group.elem(lambda.free, &lambda.tors)?;
        if mu.free == 0 && lambda.free == 0 {
            return Err(LspaceError::KernelRank);
        }
        Ok(IotaMap { group, mu, lambda })
    }

    pub fn apply(&self, p: i64, q: i64) -> Elem {
        self.group.combine(p, &self.mu, q, &self.lambda)
    }

    /// The primitive vector spanning the kernel direction, and the order of
    /// its image in the torsion subgroup; the kernel is generated by their product.
    pub fn kernel(&self) -> ((i64, i64), i64) {
        let (a, b) = (self.mu.free, self.lambda.free);
        let g = a.gcd(&b);
        let dir = (b / g, -a / g);
        let o = self.group.order(&self.apply(dir.0, dir.1).tors);
        (dir, o)
    }

    /// A lattice point mapping to `d`, or `None` if `d` is not in the image.
    /// Every preimage differs from it by a multiple of the kernel generator.
    pub fn preimage(&self, d: &Elem) -> Option<(i64, i64)> {
        let (a, b) = (self.mu.free, self.lambda.free);
        let eg = a.extended_gcd(&b);
        let (g, x, y) = if eg.gcd < 0 { (-eg.gcd, -eg.x, -eg.y) } else { (eg.gcd, eg.x, eg.y) };
        if d.free % g != 0 {
            return None;
        }
        let k = d.free / g;
        let v = (x * k, y * k);
        let (dir, o) = self.kernel();
        (0..o).map(|m| (v.0 + m * dir.0, v.1 + m * dir.1)).find(|&(p, q)| self.apply(p, q).tors == d.tors)
    }

    pub fn contains(&self, d: &Elem) -> bool {
        self.preimage(d).is_some()
    }
}

/// The homological longitude.
pub fn longitude(iota: &IotaMap) -> Slope {
    let ((p, q), _) = iota.kernel();
    Slope::new(p, q).expect("kernel direction is nonzero")
}

/// A Turaev-simple torsion: every coefficient with `φ ≥ 0` is 1 except on
/// `zero_set`, and nothing beyond `horizon` is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionData {
    pub zero_set: BTreeSet<Elem>,
    pub horizon: i64,
}

impl TorsionData {
    pub fn new(group: &AbGroup, zero_set: impl IntoIterator<Item = Elem>, horizon: i64) -> Result<TorsionData, LspaceError> {
        let mut set = BTreeSet::new();
        for e in zero_set {
            let e = group.elem(e.free, &e.tors)?;
            if e.free < 0 || e.free > horizon {
                return Err(LspaceError::Torsion(format!("{e} lies outside 0..={horizon}")));
            }
            if e == group.zero() {
                return Err(LspaceError::Torsion("the coefficient of 0 must be nonzero".into()));
            }
            set.insert(e);
        }
        Ok(TorsionData { zero_set: set, horizon })
    }

    pub fn in_support(&self, h: &Elem) -> bool {
        h.free >= 0 && !self.zero_set.contains(h)
    }
}

/// Differences `x − y` with `x` off the support, `y` on it and `φ(x) > φ(y)`,
/// that lie in the image of ι.
pub fn d_tau_positive(tau: &TorsionData, iota: &IotaMap) -> Result<BTreeSet<Elem>, LspaceError> {
    let g = &iota.group;
    let tors = g.torsion_elements()?;
    let mut out = BTreeSet::new();
    for x in tau.zero_set.iter().filter(|x| x.free > 0) {
        for level in 0..x.free {
            for t in &tors {
                let y = Elem { free: level, tors: t.clone() };
                if tau.in_support(&y) {
                    let d = g.sub(x, &y);
                    if !out.contains(&d) && iota.contains(&d) {
                        out.insert(d);
                    }
                }
            }
        }
    }
    Ok(out)
}
