use std::cmp::Ordering;

use num_integer::Integer;

use super::{d_tau_positive, longitude, IotaMap, LspaceError, Slope, SlopeInterval, TorsionData};

/// `num / den` with `den > 0`.
#[derive(Clone, Copy, Debug)]
struct Frac {
    num: i128,
    den: i128,
}

impl Frac {
    fn cmp(&self, o: &Frac) -> Ordering {
        (self.num * o.den).cmp(&(o.num * self.den))
    }
}

/// Coordinates on the slope circle that send the longitude to ∞: with `g`
/// the kernel direction and `h` completing it to a basis, `v = α·g + β·h`
/// is sent to `α/β`.
struct Chart {
    g: (i128, i128),
    h: (i128, i128),
}

impl Chart {
    fn new(g: (i64, i64)) -> Chart {
        let eg = g.0.extended_gcd(&g.1);
        let s = eg.gcd.signum();
        let h = (-(eg.y * s) as i128, (eg.x * s) as i128);
        Chart { g: (g.0 as i128, g.1 as i128), h }
    }

    /// `(α, β)` for a lattice point.
    fn coords(&self, v: (i128, i128)) -> (i128, i128) {
        let det = |a: (i128, i128), b: (i128, i128)| a.0 * b.1 - a.1 * b.0;
        (det(v, self.h), det(self.g, v))
    }
}

fn slope_of(v: (i128, i128)) -> Result<Slope, LspaceError> {
    let p = i64::try_from(v.0).map_err(|_| LspaceError::Overflow)?;
    let q = i64::try_from(v.1).map_err(|_| LspaceError::Overflow)?;
    Slope::new(p, q)
}

/// The arcs whose endpoints are consecutive slopes of `ι⁻¹(D^τ_{>0})` and
/// which contain `target`: one arc, or two sharing `target` when it is itself
/// such a slope. With an empty `D` this is everything but the longitude.
pub fn candidate_intervals(tau: &TorsionData, iota: &IotaMap, target: Slope) -> Result<Vec<SlopeInterval>, LspaceError> {
    let l = longitude(iota);
    if target == l {
        return Err(LspaceError::TargetIsLongitude(target));
    }
    let d = d_tau_positive(tau, iota)?;
    if d.is_empty() {
        return Ok(vec![SlopeInterval::AllBut(l)]);
    }
    let (g, o) = iota.kernel();
    let chart = Chart::new(g);
    let o = o as i128;
    let (ta, tb) = chart.coords((target.p() as i128, target.q() as i128));
    let t = if tb < 0 { Frac { num: -ta, den: -tb } } else { Frac { num: ta, den: tb } };

    let mut below: Option<(Frac, (i128, i128))> = None;
    let mut above: Option<(Frac, (i128, i128))> = None;
    let mut hit = false;
    for e in &d {
        let v0 = iota.preimage(e).expect("elements of D lie in the image");
        let v0 = (v0.0 as i128, v0.1 as i128);
        let (a0, b0) = chart.coords(v0);
        // along v0 + m·o·g the coordinate is (a0 + m·o) / b0
        let s = b0.signum();
        let (a, b) = (a0 * s, b0 * s);
        let point = |m: i128| {
            let k = s * m * o;
            (Frac { num: a + m * o, den: b }, (v0.0 + k * chart.g.0, v0.1 + k * chart.g.1))
        };
        let n = t.num * b - a * t.den;
        let step = o * t.den;
        let m = Integer::div_floor(&n, &step);
        let exact = n.mod_floor(&step) == 0;
        hit |= exact;
        let lo = point(if exact { m - 1 } else { m });
        let hi = point(m + 1);
        if below.as_ref().is_none_or(|(f, _)| lo.0.cmp(f) == Ordering::Greater) {
            below = Some(lo);
        }
        if above.as_ref().is_none_or(|(f, _)| hi.0.cmp(f) == Ordering::Less) {
            above = Some(hi);
        }
    }
    let lo = slope_of(below.expect("D is nonempty").1)?;
    let hi = slope_of(above.expect("D is nonempty").1)?;
    Ok(if hit {
        vec![SlopeInterval::avoiding(lo, target, l), SlopeInterval::avoiding(target, hi, l)]
    } else {
        vec![SlopeInterval::avoiding(lo, hi, l)]
    })
}
