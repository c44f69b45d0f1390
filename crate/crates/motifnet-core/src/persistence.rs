//! Quad lifetimes across days: type sequences, persistence intervals,
//! diagram points, and day-to-day conversion matrices.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::graph::TemporalNetwork;
use crate::motif::{classify_bits, mask_bits, MotifType, Quad};
use crate::sample::QuadSample;

/// Motif type of every tracked quad on every day, stored as one flat
/// row-major table of type indices (quad-major, day-minor).
#[derive(Debug, Clone, PartialEq)]
pub struct TypeSequences {
    quads: Vec<Quad>,
    t_days: usize,
    data: Vec<u8>,
}

impl TypeSequences {
    pub fn len(&self) -> usize {
        self.quads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quads.is_empty()
    }

    pub fn t_days(&self) -> usize {
        self.t_days
    }

    pub fn quad(&self, i: usize) -> &Quad {
        &self.quads[i]
    }

    pub fn quads(&self) -> &[Quad] {
        &self.quads
    }

    /// Type indices of quad `i`, one per day.
    pub fn sequence(&self, i: usize) -> &[u8] {
        &self.data[i * self.t_days..(i + 1) * self.t_days]
    }

    /// Assemble from per-quad sequences produced by [`track_quad`].
    /// `data` must hold `quads.len() * t_days` type indices.
    pub fn from_parts(quads: Vec<Quad>, t_days: usize, data: Vec<u8>) -> TypeSequences {
        assert_eq!(data.len(), quads.len() * t_days);
        debug_assert!(data.iter().all(|&t| t < 7));
        TypeSequences {
            quads,
            t_days,
            data,
        }
    }
}

/// Classify one quad on every day of the network into `out`.
pub fn track_quad(network: &TemporalNetwork, quad: &Quad, out: &mut [u8]) {
    debug_assert_eq!(out.len(), network.t_days());
    for (slot, graph) in out.iter_mut().zip(network.days()) {
        *slot = classify_bits(mask_bits(graph, quad)).index() as u8;
    }
}

/// Track every quad in `quads` across all days.
pub fn track(network: &TemporalNetwork, quads: &[Quad]) -> TypeSequences {
    let t = network.t_days();
    let mut data = alloc::vec![0u8; quads.len() * t];
    for (i, quad) in quads.iter().enumerate() {
        track_quad(network, quad, &mut data[i * t..(i + 1) * t]);
    }
    TypeSequences::from_parts(quads.to_vec(), t, data)
}

/// True when the quad forms a connected motif on at least one day.
pub fn is_active(network: &TemporalNetwork, quad: &Quad) -> bool {
    network
        .days()
        .iter()
        .any(|g| classify_bits(mask_bits(g, quad)) != MotifType::Disconnected)
}

/// Filter a candidate pool down to the quads worth tracking: those that
/// are connected on at least one day. Order is preserved.
pub fn select_active_quads(network: &TemporalNetwork, pool: &QuadSample) -> Vec<Quad> {
    pool.quads()
        .iter()
        .filter(|q| is_active(network, q))
        .cloned()
        .collect()
}

/// A maximal run of one connected motif type in a quad's sequence.
/// `death` is the first day the type differs, or the day horizon when
/// the run is censored; `death_target` is the type on day `death`
/// (`None` when censored).
#[derive(Debug, Clone, PartialEq)]
pub struct PersistenceInterval {
    pub quad: Quad,
    pub motif_type: MotifType,
    pub birth: u32,
    pub death: u32,
    pub death_target: Option<MotifType>,
}

impl PersistenceInterval {
    pub fn censored(&self) -> bool {
        self.death_target.is_none()
    }

    pub fn lifetime(&self) -> u32 {
        self.death - self.birth
    }
}

/// Decompose one type sequence into its intervals. Disconnected runs
/// produce no interval; the final run is censored.
pub fn intervals(quad: &Quad, sequence: &[u8]) -> Vec<PersistenceInterval> {
    let mut out = Vec::new();
    let mut start = 0usize;
    while start < sequence.len() {
        let ty = sequence[start];
        let mut end = start + 1;
        while end < sequence.len() && sequence[end] == ty {
            end += 1;
        }
        if ty != 0 {
            let death_target = if end < sequence.len() {
                Some(MotifType::from_index(sequence[end] as usize))
            } else {
                None
            };
            out.push(PersistenceInterval {
                quad: *quad,
                motif_type: MotifType::from_index(ty as usize),
                birth: start as u32,
                death: end as u32,
                death_target,
            });
        }
        start = end;
    }
    out
}

/// Intervals of every tracked quad, in quad order.
pub fn intervals_all(sequences: &TypeSequences) -> Vec<PersistenceInterval> {
    let mut out = Vec::new();
    for i in 0..sequences.len() {
        out.extend(intervals(sequences.quad(i), sequences.sequence(i)));
    }
    out
}

/// One point of the persistence diagram: intervals sharing type, birth,
/// death, and death target, with their multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramPoint {
    pub motif_type: MotifType,
    pub birth: u32,
    pub death: u32,
    pub death_target: Option<MotifType>,
    pub multiplicity: u64,
}

/// Group intervals into diagram points, sorted by (type, birth, death,
/// target). Censored points sort after concrete targets.
pub fn diagram(intervals: &[PersistenceInterval]) -> Vec<DiagramPoint> {
    let mut groups: BTreeMap<(u8, u32, u32, u8), u64> = BTreeMap::new();
    for iv in intervals {
        let target_code = match iv.death_target {
            Some(ty) => ty.index() as u8,
            None => 7,
        };
        let key = (iv.motif_type.index() as u8, iv.birth, iv.death, target_code);
        *groups.entry(key).or_insert(0) += 1;
    }
    groups
        .into_iter()
        .map(
            |((ty, birth, death, target_code), multiplicity)| DiagramPoint {
                motif_type: MotifType::from_index(ty as usize),
                birth,
                death,
                death_target: if target_code < 7 {
                    Some(MotifType::from_index(target_code as usize))
                } else {
                    None
                },
                multiplicity,
            },
        )
        .collect()
}

/// Day-to-day transition counts between motif types. `counts[i][j]` is
/// the number of tracked quads of type i on the matrix's day that are
/// type j on the next day; `support[i]` is the row total.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConversionMatrix {
    pub day: u32,
    pub counts: [[u64; 7]; 7],
    pub support: [u64; 7],
}

impl ConversionMatrix {
    /// Row-stochastic fraction, `None` when the row has no support.
    pub fn fraction(&self, from: MotifType, to: MotifType) -> Option<f64> {
        let i = from.index();
        if self.support[i] == 0 {
            return None;
        }
        Some(self.counts[i][to.index()] as f64 / self.support[i] as f64)
    }

    /// Full row of fractions, `None` when the row has no support.
    pub fn row(&self, from: MotifType) -> Option<[f64; 7]> {
        let i = from.index();
        if self.support[i] == 0 {
            return None;
        }
        let mut out = [0.0; 7];
        for (j, slot) in out.iter_mut().enumerate() {
            *slot = self.counts[i][j] as f64 / self.support[i] as f64;
        }
        Some(out)
    }
}

/// Transition matrix from day `day` to day `day + 1`.
pub fn conversion_matrix(sequences: &TypeSequences, day: usize) -> ConversionMatrix {
    assert!(day + 1 < sequences.t_days(), "day must have a successor");
    let mut counts = [[0u64; 7]; 7];
    for i in 0..sequences.len() {
        let seq = sequences.sequence(i);
        counts[seq[day] as usize][seq[day + 1] as usize] += 1;
    }
    let mut support = [0u64; 7];
    for i in 0..7 {
        support[i] = counts[i].iter().sum();
    }
    ConversionMatrix {
        day: day as u32,
        counts,
        support,
    }
}

/// Matrices for every consecutive day pair, T-1 in total.
pub fn conversion_matrices(sequences: &TypeSequences) -> Vec<ConversionMatrix> {
    (0..sequences.t_days().saturating_sub(1))
        .map(|t| conversion_matrix(sequences, t))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::vec;

    fn quad() -> Quad {
        Quad::from_sorted([0, 1, 2, 3])
    }

    #[test]
    fn interval_decomposition_example() {
        // types per day: 0 0 5 5 5 2 2 0 1
        let seq = [0, 0, 5, 5, 5, 2, 2, 0, 1];
        let ivs = intervals(&quad(), &seq);
        assert_eq!(ivs.len(), 3);
        assert_eq!(
            (
                ivs[0].motif_type,
                ivs[0].birth,
                ivs[0].death,
                ivs[0].death_target
            ),
            (MotifType::Path, 2, 5, Some(MotifType::Diamond))
        );
        assert_eq!(
            (
                ivs[1].motif_type,
                ivs[1].birth,
                ivs[1].death,
                ivs[1].death_target
            ),
            (MotifType::Diamond, 5, 7, Some(MotifType::Disconnected))
        );
        assert!(ivs[2].censored());
        assert_eq!((ivs[2].birth, ivs[2].death), (8, 9));
        assert_eq!(ivs[2].lifetime(), 1);
    }

    #[test]
    fn all_disconnected_yields_no_intervals() {
        assert!(intervals(&quad(), &[0, 0, 0, 0]).is_empty());
    }

    #[test]
    fn constant_connected_run_is_one_censored_interval() {
        let ivs = intervals(&quad(), &[1, 1, 1]);
        assert_eq!(ivs.len(), 1);
        assert_eq!(ivs[0].birth, 0);
        assert_eq!(ivs[0].death, 3);
        assert!(ivs[0].censored());
    }

    #[test]
    fn diagram_groups_identical_intervals() {
        let a = intervals(&Quad::from_sorted([0, 1, 2, 3]), &[5, 5, 0]);
        let b = intervals(&Quad::from_sorted([4, 5, 6, 7]), &[5, 5, 0]);
        let c = intervals(&Quad::from_sorted([0, 1, 2, 4]), &[0, 5, 5]);
        let mut all = a;
        all.extend(b);
        all.extend(c);
        let d = diagram(&all);
        assert_eq!(d.len(), 2);
        assert_eq!(d[0].multiplicity, 2);
        assert_eq!(d[0].death_target, Some(MotifType::Disconnected));
        assert_eq!(d[1].multiplicity, 1);
        assert!(d[1].death_target.is_none());
        let total: u64 = d.iter().map(|p| p.multiplicity).sum();
        assert_eq!(total, 3);
    }

    #[test]
    fn conversion_rows_are_stochastic() {
        let quads = vec![
            Quad::from_sorted([0, 1, 2, 3]),
            Quad::from_sorted([0, 1, 2, 4]),
            Quad::from_sorted([0, 1, 3, 4]),
        ];
        // day 0 -> 1: 5->5, 5->2, 0->0
        let data = vec![5, 5, 5, 2, 0, 0];
        let seqs = TypeSequences::from_parts(quads, 2, data);
        let m = conversion_matrix(&seqs, 0);
        assert_eq!(m.support[5], 2);
        assert_eq!(m.fraction(MotifType::Path, MotifType::Path), Some(0.5));
        assert_eq!(m.fraction(MotifType::Path, MotifType::Diamond), Some(0.5));
        assert_eq!(m.fraction(MotifType::Complete, MotifType::Path), None);
        let row: f64 = m.row(MotifType::Path).unwrap().iter().sum();
        assert!((row - 1.0).abs() < 1e-12);
        assert!(m.row(MotifType::Star).is_none());
        assert_eq!(
            m.fraction(MotifType::Disconnected, MotifType::Disconnected),
            Some(1.0)
        );
    }

    #[test]
    fn matrices_cover_every_day_pair() {
        let quads = vec![Quad::from_sorted([0, 1, 2, 3])];
        let seqs = TypeSequences::from_parts(quads, 4, vec![1, 2, 2, 0]);
        let ms = conversion_matrices(&seqs);
        assert_eq!(ms.len(), 3);
        assert_eq!(ms[0].day, 0);
        assert_eq!(ms[2].counts[2][0], 1);
    }
}
