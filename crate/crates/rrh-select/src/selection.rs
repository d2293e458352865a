//! The two selection phases and per-realization SIR evaluation.
//!
//! Phase 1 runs at the RRHs: each one checks its own distance (or received
//! power) against the predefined threshold and volunteers for the candidate
//! set. Phase 2 runs at the fronthaul switch: a uniformly random `L`-subset
//! of the candidates is connected to the user's BBU. The nearest-RRH rule is
//! kept as the baseline the random phase is measured against.

use num_complex::Complex64;
use rand::Rng;

use crate::geometry::NetworkRealization;

/// x^(-e) with fast paths for the exponents the hot loops actually hit:
/// the default pathloss exponent 4 and its amplitude half 2.
#[inline]
fn inv_pow(x: f64, e: f64) -> f64 {
    if e == 4.0 {
        let x2 = x * x;
        1.0 / (x2 * x2)
    } else if e == 2.0 {
        1.0 / (x * x)
    } else {
        x.powf(-e)
    }
}

/// Phase-1 membership criterion.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Criterion {
    /// Members satisfy ||d_i|| < r_th.
    Distance { r_th: f64 },
    /// Members satisfy S_i * ||d_i||^(-beta) > p_th.
    Power { p_th: f64 },
}

/// RRH indices passing the phase-1 test, in ascending index order.
#[derive(Clone, Debug, PartialEq)]
pub struct CandidateSet {
    pub indices: Vec<usize>,
    pub criterion: Criterion,
}

impl CandidateSet {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// The L distinct RRH indices chosen in phase 2, ascending.
#[derive(Clone, Debug, PartialEq)]
pub struct SelectedSet {
    pub indices: Vec<usize>,
}

/// Candidate set under the distance criterion: exactly the RRHs closer than
/// `r_th`. An empty set is a legal outcome and means outage.
pub fn phase1_distance(net: &NetworkRealization, r_th: f64) -> CandidateSet {
    assert!(r_th > 0.0, "r_th must be positive");
    let indices = net
        .rrh_points
        .iter()
        .enumerate()
        .filter(|(_, p)| p.norm() < r_th)
        .map(|(i, _)| i)
        .collect();
    CandidateSet {
        indices,
        criterion: Criterion::Distance { r_th },
    }
}

/// Candidate set under the received-power criterion: exactly the RRHs with
/// `shadowing[i] * ||d_i||^(-beta) > p_th`. One shadowing draw per RRH.
pub fn phase1_power(
    net: &NetworkRealization,
    shadowing: &[f64],
    beta: f64,
    p_th: f64,
) -> CandidateSet {
    assert!(p_th > 0.0, "p_th must be positive");
    assert_eq!(
        shadowing.len(),
        net.rrh_points.len(),
        "one shadowing draw per RRH required"
    );
    let indices = net
        .rrh_points
        .iter()
        .zip(shadowing)
        .enumerate()
        .filter(|(_, (p, &s))| s * inv_pow(p.norm(), beta) > p_th)
        .map(|(i, _)| i)
        .collect();
    CandidateSet {
        indices,
        criterion: Criterion::Power { p_th },
    }
}

/// Uniformly random L-subset of the candidate set, or `None` (outage) when
/// fewer than `l` candidates volunteered. No partial service here; the
/// Monte-Carlo engine layers that policy choice on top.
pub fn phase2_random<R: Rng + ?Sized>(
    cands: &CandidateSet,
    l: usize,
    rng: &mut R,
) -> Option<SelectedSet> {
    assert!(l >= 1, "phase 2 selects at least one RRH");
    let m = cands.indices.len();
    if m < l {
        return None;
    }
    // partial Fisher-Yates: after k swaps the prefix is a uniform k-subset
    let mut pool = cands.indices.clone();
    for k in 0..l {
        let j = rng.gen_range(k..m);
        pool.swap(k, j);
    }
    let mut indices = pool[..l].to_vec();
    indices.sort_unstable();
    Some(SelectedSet { indices })
}

/// Index of the RRH nearest to the origin; ties broken by lowest index.
/// `None` when the realization holds no RRH at all.
pub fn select_nearest(net: &NetworkRealization) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, p) in net.rrh_points.iter().enumerate() {
        let d = p.norm();
        match best {
            Some((_, bd)) if d >= bd => {}
            _ => best = Some((i, d)),
        }
    }
    best.map(|(i, _)| i)
}

/// Instantaneous SIR at one selected RRH:
/// `||d_s||^-beta H_s1 / sum_i ||d_s - u_i||^-beta H_si` with H = |h|^2.
/// Realizations without interferers return +inf (covered at every target).
pub fn sir_single(
    net: &NetworkRealization,
    selected: usize,
    beta: f64,
    h_desired: Complex64,
    h_interferers: &[Complex64],
) -> f64 {
    assert_eq!(h_interferers.len(), net.user_points.len());
    let d_s = net.rrh_points[selected];
    let signal = inv_pow(d_s.norm(), beta) * h_desired.norm_sqr();
    let mut interference = 0.0;
    for (u, h) in net.user_points.iter().zip(h_interferers) {
        interference += inv_pow(d_s.distance(*u), beta) * h.norm_sqr();
    }
    if interference == 0.0 {
        f64::INFINITY
    } else {
        signal / interference
    }
}

/// Instantaneous SIR after maximum ratio combining over the selected RRHs.
///
/// With complex branch gains g_l = ||d_sl||^(-beta/2) h_sl,1 the combiner
/// output has signal power (sum_l |g_l|^2)^2 and per-interferer power
/// |sum_l conj(g_l) g_l,i|^2 where g_l,i = ||d_sl - u_i||^(-beta/2) h_sl,i.
/// `h_interferers[l][i]` is the fading from interferer `i` to branch `l`.
/// A single branch reduces exactly to [`sir_single`].
pub fn sir_mrc(
    net: &NetworkRealization,
    selected: &[usize],
    beta: f64,
    h_desired: &[Complex64],
    h_interferers: &[Vec<Complex64>],
) -> f64 {
    assert!(!selected.is_empty(), "MRC needs at least one branch");
    assert_eq!(h_desired.len(), selected.len());
    assert_eq!(h_interferers.len(), selected.len());
    if selected.len() == 1 {
        return sir_single(net, selected[0], beta, h_desired[0], &h_interferers[0]);
    }

    let gains: Vec<Complex64> = selected
        .iter()
        .zip(h_desired)
        .map(|(&s, h)| h * inv_pow(net.rrh_points[s].norm(), beta / 2.0))
        .collect();
    let combined_power: f64 = gains.iter().map(|g| g.norm_sqr()).sum();
    let signal = combined_power * combined_power;

    if net.user_points.is_empty() {
        return f64::INFINITY;
    }
    let mut interference = 0.0;
    for (i, u) in net.user_points.iter().enumerate() {
        let mut c = Complex64::new(0.0, 0.0);
        for (l, &s) in selected.iter().enumerate() {
            let amp = inv_pow(net.rrh_points[s].distance(*u), beta / 2.0);
            c += gains[l].conj() * (h_interferers[l][i] * amp);
        }
        interference += c.norm_sqr();
    }
    if interference == 0.0 {
        f64::INFINITY
    } else {
        signal / interference
    }
}
