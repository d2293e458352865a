//! Discrete-event model of the phase-2 random-delay switch race, plus a
//! fronthaul cost accountant contrasting random selection with nearest
//! selection.
//!
//! In the random race every candidate RRH sends a predefined 1-bit symbol
//! after an i.i.d. random delay and the switch takes the first arrival, so
//! one "comparison" completes the round no matter how many candidates exist.
//! Nearest selection instead makes every candidate report a quantized
//! distance (at least 2 bits) and the switch scan all of them.

use rand::Rng;
use rand_distr::{Distribution, Poisson};
use rayon::prelude::*;
use std::f64::consts::PI;

use crate::analytics::threshold_opt_approx;
use crate::error::{Error, Result};
use crate::geometry::RngStream;
use crate::selection::{CandidateSet, SelectedSet};
use crate::stats;

/// One candidate's report racing toward the switch.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SwitchEvent {
    pub rrh_index: usize,
    /// Seconds since the round started (fiber offset included).
    pub arrival_time: f64,
    pub payload_bits: u32,
}

/// Delay law of the race: i.i.d. uniform on [0, bound) plus a constant
/// fiber propagation offset (zero by default; uniform fiber lengths).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DelayLaw {
    pub bound: f64,
    pub fiber_offset: f64,
}

impl DelayLaw {
    pub fn uniform(bound: f64) -> Self {
        DelayLaw {
            bound,
            fiber_offset: 0.0,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.bound > 0.0) || !self.bound.is_finite() || self.fiber_offset < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "delay law needs bound > 0 and fiber_offset >= 0, got {self:?}"
            )));
        }
        Ok(())
    }
}

/// Cost counters of one selection round.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CostReport {
    pub candidate_count: usize,
    pub total_bits_on_fronthaul: u64,
    pub switch_comparisons: u64,
    /// Seconds from round start until the switch committed.
    pub selection_latency: f64,
    /// Exactly coincident arrivals (ties are broken by lowest index and
    /// counted; expected count 0 under a continuous delay law).
    pub delay_ties: u64,
}

/// Run one random-delay round: every candidate draws a delay, the earliest
/// arrival wins. Returns `None` (outage) on an empty candidate set.
pub fn run_switch_round<R: Rng + ?Sized>(
    cands: &CandidateSet,
    law: &DelayLaw,
    rng: &mut R,
) -> Option<(usize, CostReport)> {
    let (sel, report) = run_switch_round_multi(cands, 1, law, rng)?;
    Some((sel.indices[0], report))
}

/// Random-delay round keeping the first `l` arrivals. By exchangeability of
/// the i.i.d. delays the winner set is uniform over all l-subsets of the
/// candidates, which is what makes the race equivalent to phase 2.
pub fn run_switch_round_multi<R: Rng + ?Sized>(
    cands: &CandidateSet,
    l: usize,
    law: &DelayLaw,
    rng: &mut R,
) -> Option<(SelectedSet, CostReport)> {
    assert!(l >= 1, "the switch selects at least one RRH");
    law.validate().ok()?;
    let m = cands.indices.len();
    if m < l {
        return None;
    }
    let events: Vec<SwitchEvent> = cands
        .indices
        .iter()
        .map(|&rrh_index| SwitchEvent {
            rrh_index,
            arrival_time: law.fiber_offset + law.bound * rng.gen::<f64>(),
            payload_bits: 1,
        })
        .collect();

    let mut order: Vec<usize> = (0..m).collect();
    // stable ordering by (arrival, index): ties fall to the lowest index
    order.sort_by(|&a, &b| {
        events[a]
            .arrival_time
            .partial_cmp(&events[b].arrival_time)
            .unwrap()
            .then(events[a].rrh_index.cmp(&events[b].rrh_index))
    });
    let delay_ties = order
        .windows(2)
        .filter(|w| events[w[0]].arrival_time == events[w[1]].arrival_time)
        .count() as u64;

    let mut indices: Vec<usize> = order[..l].iter().map(|&i| events[i].rrh_index).collect();
    let selection_latency = events[order[l - 1]].arrival_time;
    indices.sort_unstable();
    let report = CostReport {
        candidate_count: m,
        total_bits_on_fronthaul: m as u64,
        switch_comparisons: 1,
        selection_latency,
        delay_ties,
    };
    Some((SelectedSet { indices }, report))
}

/// Cost of a nearest-selection round over `m` reports: the switch waits for
/// every quantized distance (b bits each) and scans all of them.
pub fn nearest_round_cost<R: Rng + ?Sized>(
    m: usize,
    law: &DelayLaw,
    quantization_bits: u32,
    rng: &mut R,
) -> Option<CostReport> {
    if m == 0 {
        return None;
    }
    let mut last_arrival: f64 = 0.0;
    for _ in 0..m {
        last_arrival = last_arrival.max(law.fiber_offset + law.bound * rng.gen::<f64>());
    }
    Some(CostReport {
        candidate_count: m,
        total_bits_on_fronthaul: m as u64 * u64::from(quantization_bits),
        switch_comparisons: m as u64,
        selection_latency: last_arrival,
        delay_ties: 0,
    })
}

/// One complete selection: who volunteered, who won the race, what it cost.
#[derive(Clone, Debug, PartialEq)]
pub struct SelectionOutcome {
    pub candidates: CandidateSet,
    pub selected: SelectedSet,
    pub cost: CostReport,
}

/// Run both phases against a concrete realization: distance-threshold
/// candidacy, then the random-delay race for `l` winners. `None` marks
/// outage (fewer than `l` candidates).
pub fn select_via_switch<R: Rng + ?Sized>(
    net: &crate::geometry::NetworkRealization,
    r_th: f64,
    l: usize,
    law: &DelayLaw,
    rng: &mut R,
) -> Option<SelectionOutcome> {
    let candidates = crate::selection::phase1_distance(net, r_th);
    let (selected, cost) = run_switch_round_multi(&candidates, l, law, rng)?;
    Some(SelectionOutcome {
        candidates,
        selected,
        cost,
    })
}

/// How the selection threshold scales across a density sweep.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ThresholdRule {
    Fixed(f64),
    /// Closed-form optimum recomputed per RRH density.
    ApproxOpt {
        theta: f64,
        lambda_user: f64,
        beta: f64,
    },
}

impl ThresholdRule {
    pub fn r_th(&self, lambda_rrh: f64) -> f64 {
        match *self {
            ThresholdRule::Fixed(r) => r,
            ThresholdRule::ApproxOpt {
                theta,
                lambda_user,
                beta,
            } => threshold_opt_approx(theta, lambda_rrh, lambda_user, beta),
        }
    }
}

/// Mean per-round costs at one RRH density.
///
/// Candidate counts, bits and nearest comparisons are unconditional means
/// over all rounds, counting an empty-candidate round (outage; nothing
/// arrives at the switch) as zero cost — this keeps `nearest_comparisons`
/// exactly proportional to `lambda pi r_th^2`. Random-race comparisons and
/// both latencies are per *served* round, where the race always commits on
/// the first arrival.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexityRow {
    pub lambda_rrh: f64,
    pub r_th: f64,
    pub trials: u64,
    pub outage_rounds: u64,
    pub mean_candidates: f64,
    pub mean_candidates_hw: f64,
    pub random_comparisons: f64,
    pub random_bits: f64,
    pub random_latency: f64,
    pub nearest_comparisons: f64,
    pub nearest_bits: f64,
    pub nearest_latency: f64,
}

/// Sweep RRH densities and account per-round costs of random vs nearest
/// selection. Candidate counts are Poisson with mean `lambda pi r_th^2`;
/// each served round draws one set of arrival delays that both policies are
/// accounted on.
pub fn compare_complexity(
    lambda_grid: &[f64],
    rule: &ThresholdRule,
    quantization_bits: u32,
    trials: u64,
    master_seed: u64,
    law: &DelayLaw,
) -> Result<Vec<ComplexityRow>> {
    if quantization_bits < 2 {
        return Err(Error::InvalidParameter(
            "distance quantization needs at least 2 bits".into(),
        ));
    }
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be >= 1".into()));
    }
    law.validate()?;
    let mut rows = Vec::with_capacity(lambda_grid.len());
    for &lambda_rrh in lambda_grid {
        if !(lambda_rrh > 0.0) || !lambda_rrh.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "lambda grid entries must be finite and > 0, got {lambda_rrh}"
            )));
        }
        let r_th = rule.r_th(lambda_rrh);
        let mean_m = lambda_rrh * PI * r_th * r_th;
        let poisson = Poisson::new(mean_m).map_err(|e| {
            Error::InvalidParameter(format!("candidate mean {mean_m}: {e}"))
        })?;
        let experiment_id = format!("protocol/lambda={lambda_rrh:e}/r={r_th:e}");

        // per trial: (m, min_delay, max_delay); outage rounds carry no delays
        let samples: Vec<(u64, Option<(f64, f64)>)> = (0..trials)
            .into_par_iter()
            .map(|trial| {
                let mut rng =
                    RngStream::new(master_seed, experiment_id.clone(), trial).rng();
                let m = poisson.sample(&mut rng) as u64;
                if m == 0 {
                    return (0, None);
                }
                let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
                for _ in 0..m {
                    let d = law.fiber_offset + law.bound * rng.gen::<f64>();
                    lo = lo.min(d);
                    hi = hi.max(d);
                }
                (m, Some((lo, hi)))
            })
            .collect();

        let counts: Vec<f64> = samples.iter().map(|(m, _)| *m as f64).collect();
        let mean_candidates = counts.iter().sum::<f64>() / trials as f64;
        let served: Vec<&(f64, f64)> =
            samples.iter().filter_map(|(_, d)| d.as_ref()).collect();
        let outage_rounds = trials - served.len() as u64;
        let served_n = served.len().max(1) as f64;
        rows.push(ComplexityRow {
            lambda_rrh,
            r_th,
            trials,
            outage_rounds,
            mean_candidates,
            mean_candidates_hw: stats::mean_half_width(&counts),
            random_comparisons: if served.is_empty() { 0.0 } else { 1.0 },
            random_bits: mean_candidates,
            random_latency: served.iter().map(|d| d.0).sum::<f64>() / served_n,
            nearest_comparisons: mean_candidates,
            nearest_bits: mean_candidates * f64::from(quantization_bits),
            nearest_latency: served.iter().map(|d| d.1).sum::<f64>() / served_n,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::selection::Criterion;
    use std::collections::HashMap;

    fn stream(trial: u64) -> RngStream {
        RngStream::new(0xD15C0, "protocol-tests", trial)
    }

    fn cands(indices: Vec<usize>) -> CandidateSet {
        CandidateSet {
            indices,
            criterion: Criterion::Distance { r_th: 1.0 },
        }
    }

    #[test]
    fn single_candidate_wins_with_unit_cost() {
        let mut rng = stream(0).rng();
        let law = DelayLaw::uniform(1e-3);
        let (winner, report) = run_switch_round(&cands(vec![9]), &law, &mut rng).unwrap();
        assert_eq!(winner, 9);
        assert_eq!(report.candidate_count, 1);
        assert_eq!(report.total_bits_on_fronthaul, 1);
        assert_eq!(report.switch_comparisons, 1);
        assert!(report.selection_latency >= 0.0 && report.selection_latency < 1e-3);
        assert_eq!(report.delay_ties, 0);
    }

    #[test]
    fn empty_set_is_outage() {
        let mut rng = stream(0).rng();
        assert!(run_switch_round(&cands(vec![]), &DelayLaw::uniform(1e-3), &mut rng).is_none());
        assert!(
            run_switch_round_multi(&cands(vec![1, 2]), 3, &DelayLaw::uniform(1e-3), &mut rng)
                .is_none()
        );
        assert!(nearest_round_cost(0, &DelayLaw::uniform(1e-3), 4, &mut rng).is_none());
    }

    /// Ten candidates win equally often over 1e5 rounds.
    #[test]
    fn winners_are_uniform() {
        let set = cands((0..10).collect());
        let law = DelayLaw::uniform(1e-3);
        let rounds = 100_000u64;
        let mut wins = [0u64; 10];
        let mut ties = 0u64;
        for trial in 0..rounds {
            let mut rng = stream(trial).rng();
            let (w, report) = run_switch_round(&set, &law, &mut rng).unwrap();
            wins[w] += 1;
            ties += report.delay_ties;
        }
        assert_eq!(ties, 0);
        let expected = vec![rounds as f64 / 10.0; 10];
        let p = stats::chi_square_p(&wins, &expected);
        assert!(p > 0.01, "chi-square p {p}");
    }

    /// Mean winning latency of M uniform delays is D/(M+1).
    #[test]
    fn latency_of_the_minimum() {
        let set = cands((0..10).collect());
        let law = DelayLaw::uniform(1e-3);
        let rounds = 100_000u64;
        let mut total = 0.0;
        for trial in 0..rounds {
            let mut rng = stream(1_000_000 + trial).rng();
            total += run_switch_round(&set, &law, &mut rng).unwrap().1.selection_latency;
        }
        let mean = total / rounds as f64;
        let expected = 1e-3 / 11.0;
        // sd of min(U_1..U_10) scaled by the bound
        let sd = 1e-3 * (10.0f64 / (121.0 * 12.0)).sqrt();
        let se = sd / (rounds as f64).sqrt();
        assert!(
            (mean - expected).abs() < 4.0 * se,
            "mean latency {mean} vs {expected}"
        );
    }

    #[test]
    fn latency_nonincreasing_in_candidate_count() {
        let law = DelayLaw::uniform(1e-3);
        let mut prev = f64::INFINITY;
        for m in [1usize, 2, 5, 10, 20] {
            let set = cands((0..m).collect());
            let mut total = 0.0;
            let rounds = 20_000u64;
            for trial in 0..rounds {
                let mut rng = stream(7_000_000 + m as u64 * rounds + trial).rng();
                total += run_switch_round(&set, &law, &mut rng).unwrap().1.selection_latency;
            }
            let mean = total / rounds as f64;
            assert!(mean < prev, "latency must shrink with more candidates");
            prev = mean;
        }
    }

    /// First-L-arrivals is uniform over L-subsets, like phase 2.
    #[test]
    fn multi_winners_uniform_over_subsets() {
        let set = cands((0..5).collect());
        let law = DelayLaw::uniform(1e-3);
        let rounds = 20_000u64;
        let mut counts: HashMap<Vec<usize>, u64> = HashMap::new();
        for trial in 0..rounds {
            let mut rng = stream(3_000_000 + trial).rng();
            let (sel, report) = run_switch_round_multi(&set, 2, &law, &mut rng).unwrap();
            assert!(report.selection_latency <= 1e-3);
            *counts.entry(sel.indices).or_insert(0) += 1;
        }
        assert_eq!(counts.len(), 10);
        let observed: Vec<u64> = counts.values().copied().collect();
        let expected = vec![rounds as f64 / 10.0; observed.len()];
        let p = stats::chi_square_p(&observed, &expected);
        assert!(p > 0.01, "chi-square p {p}");
    }

    #[test]
    fn end_to_end_selection_outcome() {
        use crate::geometry::{sample_ppp, NetworkRealization};
        let law = DelayLaw::uniform(1e-3);
        let mut rng = stream(50).rng();
        let mut served = 0;
        for _ in 0..200 {
            let rrh = sample_ppp(1e-4, 400.0, &mut rng).unwrap();
            let net = NetworkRealization {
                rrh_points: rrh,
                user_points: vec![],
            };
            let Some(outcome) = select_via_switch(&net, 160.0, 1, &law, &mut rng) else {
                continue;
            };
            served += 1;
            assert!(outcome.candidates.indices.contains(&outcome.selected.indices[0]));
            assert_eq!(outcome.cost.candidate_count, outcome.candidates.len());
            assert_eq!(outcome.cost.switch_comparisons, 1);
            assert!(net.rrh_points[outcome.selected.indices[0]].norm() < 160.0);
        }
        assert!(served > 100);
    }

    #[test]
    fn complexity_table_scales_as_expected() {
        let lambdas = [5e-5 / PI, 1e-4 / PI, 2e-4 / PI];
        let rows = compare_complexity(
            &lambdas,
            &ThresholdRule::Fixed(158.843_713_190_675_57),
            4,
            20_000,
            99,
            &DelayLaw::uniform(1e-3),
        )
        .unwrap();
        // nearest comparisons track lambda pi r^2 and double with lambda
        for (row, lambda) in rows.iter().zip(lambdas) {
            let expected = lambda * PI * row.r_th * row.r_th;
            let se = (expected / row.trials as f64).sqrt();
            assert!(
                (row.nearest_comparisons - expected).abs() < 4.0 * se,
                "nearest comparisons {} vs {expected}",
                row.nearest_comparisons
            );
            assert_eq!(row.random_comparisons, 1.0);
            // per-report accounting: nearest moves exactly b times the bits
            assert!((row.nearest_bits / row.random_bits - 4.0).abs() < 1e-12);
            assert!(row.random_latency <= row.nearest_latency);
        }
        let ratio = rows[2].nearest_comparisons / rows[1].nearest_comparisons;
        assert!((ratio - 2.0).abs() < 0.1, "doubling density doubles the scan: {ratio}");
    }

    #[test]
    fn complexity_rejects_bad_inputs() {
        let law = DelayLaw::uniform(1e-3);
        assert!(compare_complexity(&[1e-4], &ThresholdRule::Fixed(100.0), 1, 10, 0, &law).is_err());
        assert!(compare_complexity(&[1e-4], &ThresholdRule::Fixed(100.0), 4, 0, 0, &law).is_err());
        assert!(compare_complexity(&[0.0], &ThresholdRule::Fixed(100.0), 4, 10, 0, &law).is_err());
        assert!(
            compare_complexity(&[1e-4], &ThresholdRule::Fixed(100.0), 4, 10, 0, &DelayLaw::uniform(0.0))
                .is_err()
        );
    }
}
