use crate::error::{Error, Result};

/// A non-increasing, concave piecewise-affine function of `μ` that can
/// report, at any point, its value and the slope of a supporting line that
/// is tight immediately to the left of that point.
pub trait SupportedFunction {
    fn support(&self, mu: f64) -> Result<(f64, f64)>;

    fn value(&self, mu: f64) -> Result<f64> {
        Ok(self.support(mu)?.0)
    }
}

/// Lower envelope `min_k (a_k + b_k μ)` of finitely many non-increasing lines.
#[derive(Debug, Clone, PartialEq)]
pub struct LineEnvelope {
    pub lines: Vec<(f64, f64)>,
}

impl SupportedFunction for LineEnvelope {
    fn support(&self, mu: f64) -> Result<(f64, f64)> {
        // Among lines active at `mu`, the least steep one is tight to the left.
        let mut best: Option<(f64, f64)> = None;
        for &(a, b) in &self.lines {
            let v = a + b * mu;
            best = match best {
                None => Some((v, b)),
                Some((bv, bb)) => {
                    if v < bv || (v == bv && b > bb) {
                        Some((v, b))
                    } else {
                        Some((bv, bb))
                    }
                }
            };
        }
        best.ok_or(Error::NoRoot)
    }
}

/// Greatest `μ` in `[breakpoints[0], breakpoints[last]]` with `g(μ) ≥ 0`.
///
/// The bracketing piece is located by bisection over the breakpoints; inside
/// it, each step jumps to the zero of the current supporting line. Every
/// supporting line lies above `g`, so iterates approach the root from the
/// right and stop once an affine piece of `g` is hit exactly.
pub fn greatest_root<G: SupportedFunction + ?Sized>(g: &G, breakpoints: &[f64]) -> Result<f64> {
    let mut bp: Vec<f64> = breakpoints.to_vec();
    bp.sort_by(f64::total_cmp);
    bp.dedup();
    let Some(&lo) = bp.first() else {
        return Err(Error::NoRoot);
    };
    let scale = 1.0 + bp.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let eps = 1e-13 * scale;

    if g.value(lo)? < -eps {
        return Err(Error::NoRoot);
    }
    let hi = *bp.last().unwrap();
    if g.value(hi)? >= -eps {
        return Ok(hi);
    }
    // Invariant: g(bp[left]) >= 0 > g(bp[right]).
    let (mut left, mut right) = (0, bp.len() - 1);
    while right - left > 1 {
        let mid = (left + right) / 2;
        if g.value(bp[mid])? >= -eps {
            left = mid;
        } else {
            right = mid;
        }
    }
    let floor = bp[left];
    let mut mu = bp[right];
    for _ in 0..10_000 {
        let (v, slope) = g.support(mu)?;
        if v >= -eps {
            return Ok(mu);
        }
        if slope >= 0.0 {
            // A concave function cannot be flat and negative here while
            // non-negative at `floor`.
            return Err(Error::NoRoot);
        }
        let next = mu - v / slope;
        if next >= mu {
            return Ok(mu);
        }
        if next <= floor {
            return Ok(floor);
        }
        mu = next;
    }
    Ok(mu)
}
