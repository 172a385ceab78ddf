//! Brute-force reference computations. Deliberately naive: every path is a
//! full enumeration guarded by a cap, and exceeding the cap is an error.

use crate::bayesnet::BayesNet;
use crate::conditioning::Updated;
use crate::credal_set::CredalSet;
use crate::credalnet::CredalNet;
use crate::error::{Error, Result};
use crate::network::{for_each_assignment, Evidence};
use crate::observation::MultiValuedMap;
use crate::space::{Gamble, MassFunction};

/// Default enumeration bound for the oracles.
pub const ORACLE_CAP: u128 = 1 << 16;

/// `min_r p(num, e, r) / p(den, e, r)` by enumerating every completion.
pub fn brute_min_ratio(
    net: &BayesNet,
    class: usize,
    num: usize,
    den: usize,
    evidence: &Evidence,
    cap: u128,
) -> Result<f64> {
    let s = net.structure();
    s.check_query(class, evidence)?;
    let missing = s.missing(class, evidence);
    let count = s.configurations(&missing);
    if count > cap {
        return Err(Error::CapExceeded { count, cap });
    }
    let mut assignment: Vec<usize> = evidence.values().iter().map(|v| v.unwrap_or(0)).collect();
    let mut best = f64::INFINITY;
    for_each_assignment(s, &missing, &mut assignment, |a| {
        let mut full = a.to_vec();
        full[class] = num;
        let top = net.joint_mass(&full)?;
        full[class] = den;
        best = best.min(top / net.joint_mass(&full)?);
        Ok(())
    })?;
    Ok(best)
}

/// `min` over completions and over every choice of one extreme point per
/// local credal set of `p(num, e, r) / p(den, e, r)`.
///
/// For a fixed completion only the rows the two joint assignments touch
/// matter, so selections range over those rows alone. `cap` bounds the
/// total number of (completion, selection) pairs.
pub fn brute_credal_min_ratio(
    net: &CredalNet,
    class: usize,
    num: usize,
    den: usize,
    evidence: &Evidence,
    cap: u128,
) -> Result<f64> {
    let s = net.structure();
    s.check_query(class, evidence)?;
    let points: Vec<Vec<Vec<MassFunction>>> = (0..s.len())
        .map(|v| net.table(v).iter().map(|set| set.extreme_points(cap)).collect())
        .collect::<Result<_>>()?;
    let missing = s.missing(class, evidence);
    let completions = s.configurations(&missing);
    if completions > cap {
        return Err(Error::CapExceeded { count: completions, cap });
    }
    let mut assignment: Vec<usize> = evidence.values().iter().map(|v| v.unwrap_or(0)).collect();
    let mut best = f64::INFINITY;
    let mut spent: u128 = 0;
    for_each_assignment(s, &missing, &mut assignment, |a| {
        let mut top = a.to_vec();
        top[class] = num;
        let mut bottom = a.to_vec();
        bottom[class] = den;
        // Distinct (node, row) pairs referenced by either assignment.
        let mut rows: Vec<(usize, usize)> = Vec::new();
        for v in 0..s.len() {
            for full in [&top, &bottom] {
                let r = s.row_with(v, |p| full[p]);
                if !rows.contains(&(v, r)) {
                    rows.push((v, r));
                }
            }
        }
        let combos = rows.iter().fold(1u128, |acc, &(v, r)| acc.saturating_mul(points[v][r].len() as u128));
        spent = spent.saturating_add(combos);
        if spent > cap {
            return Err(Error::CapExceeded { count: spent, cap });
        }
        let mut choice = vec![0usize; rows.len()];
        loop {
            let mass = |full: &[usize]| -> f64 {
                (0..s.len())
                    .map(|v| {
                        let r = s.row_with(v, |p| full[p]);
                        let k = rows.iter().position(|&x| x == (v, r)).unwrap();
                        points[v][r][choice[k]].prob(full[v])
                    })
                    .product()
            };
            best = best.min(mass(&top) / mass(&bottom));
            let mut k = rows.len();
            loop {
                if k == 0 {
                    return Ok(());
                }
                k -= 1;
                let (v, r) = rows[k];
                choice[k] += 1;
                if choice[k] < points[v][r].len() {
                    break;
                }
                choice[k] = 0;
            }
        }
    })?;
    Ok(best)
}

/// Regular extension by enumerating prior extreme points and deterministic
/// selections `s(x) ∈ Γ(x)`: the infimum of `E[f | s⁻¹(o)]` over pairs with
/// `p(s⁻¹(o)) > 0`, or the vacuous `min f` when there are none.
pub fn brute_regular_extension(
    prior: &CredalSet,
    map: &MultiValuedMap,
    o: usize,
    f: &Gamble,
    cap: u128,
) -> Result<Updated> {
    use crate::observation::ObservationModel;
    let vertices = prior
        .explicit_vertices()
        .ok_or_else(|| Error::InvalidCredalSet("the oracle needs an explicit vertex list".into()))?;
    map.compatible_states(&o)?;
    map.states().ensure_same(f.space())?;
    let count = map.selection_count().saturating_mul(vertices.len() as u128);
    if count > cap {
        return Err(Error::CapExceeded { count, cap });
    }
    let n = map.states().len();
    let mut best = f64::INFINITY;
    let mut pick = vec![0usize; n];
    loop {
        let chosen: Vec<usize> = (0..n).filter(|&x| map.image(x)[pick[x]] == o).collect();
        for p in &vertices {
            let mass = p.prob_of(&chosen);
            if mass > 0.0 {
                let num: f64 = chosen.iter().map(|&x| p.prob(x) * f.values()[x]).sum();
                best = best.min(num / mass);
            }
        }
        let mut x = n;
        loop {
            if x == 0 {
                return Ok(if best.is_finite() {
                    Updated { value: best, vacuous: false }
                } else {
                    Updated { value: f.min(), vacuous: true }
                });
            }
            x -= 1;
            pick[x] += 1;
            if pick[x] < map.image(x).len() {
                break;
            }
            pick[x] = 0;
        }
    }
}
