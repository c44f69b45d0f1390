//! Property-based checks across the analysis chain.

use proptest::prelude::*;

use motifnet_core::census::{census, census_counts, moving_average};
use motifnet_core::graph::{
    build_daily_graph, build_temporal_network, Date, TripRecord, Weekday, Zone,
};
use motifnet_core::motif::Quad;
use motifnet_core::persistence::{
    conversion_matrices, diagram, intervals, intervals_all, track, TypeSequences,
};
use motifnet_core::sample::{quad_count, quad_rank, sample_quads};

fn record(n_zones: u32, t_days: u32) -> impl Strategy<Value = TripRecord> {
    (0..n_zones, 1..n_zones, 0..t_days, 20.0f64..120.0).prop_map(
        move |(origin, hop, day, volume)| TripRecord {
            origin,
            destination: (origin + hop) % n_zones,
            day,
            volume,
        },
    )
}

fn zones(n: u32) -> Vec<Zone> {
    (0..n)
        .map(|id| Zone {
            id,
            centroid_lat: 29.0 + id as f64 * 0.01,
            centroid_lon: -95.0 + id as f64 * 0.01,
            label: None,
        })
        .collect()
}

fn edge_list(g: &motifnet_core::DailyGraph) -> Vec<(u32, u32, u64)> {
    g.edges().map(|(u, v, w)| (u, v, w.to_bits())).collect()
}

proptest! {
    #[test]
    fn graph_does_not_depend_on_record_order(
        (original, shuffled) in prop::collection::vec(record(8, 1), 0..80)
            .prop_flat_map(|v| (Just(v.clone()), Just(v).prop_shuffle()))
    ) {
        let a = build_daily_graph(&original, 0, Weekday::Mon, 8, 50.0).unwrap();
        let b = build_daily_graph(&shuffled, 0, Weekday::Mon, 8, 50.0).unwrap();
        prop_assert_eq!(edge_list(&a), edge_list(&b));
    }

    #[test]
    fn raising_the_threshold_only_removes_edges(
        records in prop::collection::vec(record(8, 1), 0..120),
        low in 20.0f64..80.0,
        bump in 0.1f64..60.0,
    ) {
        let a = build_daily_graph(&records, 0, Weekday::Mon, 8, low).unwrap();
        let b = build_daily_graph(&records, 0, Weekday::Mon, 8, low + bump).unwrap();
        prop_assert!(b.edge_count() <= a.edge_count());
        for (u, v, w) in b.edges() {
            // surviving edges keep their weight: it never depends on the threshold
            prop_assert_eq!(a.weight(u, v), Some(w));
        }
    }

    #[test]
    fn graph_accessors_are_consistent(
        records in prop::collection::vec(record(9, 1), 0..120),
    ) {
        let g = build_daily_graph(&records, 0, Weekday::Mon, 9, 40.0).unwrap();
        let mut degree_total = 0u32;
        for u in 0..9u32 {
            let nbrs: Vec<(u32, f64)> = g.neighbors(u).collect();
            prop_assert_eq!(nbrs.len() as u32, g.degree(u));
            degree_total += g.degree(u);
            for w in nbrs.windows(2) {
                prop_assert!(w[0].0 < w[1].0);
            }
            for (v, w) in nbrs {
                prop_assert!(g.has_edge(u, v) && g.has_edge(v, u));
                prop_assert_eq!(g.weight(u, v), Some(w));
                prop_assert_eq!(g.weight(v, u), Some(w));
            }
        }
        prop_assert_eq!(degree_total as usize, 2 * g.edge_count());
    }

    #[test]
    fn intervals_reconstruct_their_sequence(
        seq in prop::collection::vec(0u8..7, 1..80),
    ) {
        let quad = Quad::from_sorted([0, 1, 2, 3]);
        let ivs = intervals(&quad, &seq);
        let mut rebuilt = vec![0u8; seq.len()];
        for iv in &ivs {
            prop_assert!(iv.birth < iv.death);
            prop_assert_eq!(iv.censored(), iv.death as usize == seq.len());
            if let Some(target) = iv.death_target {
                prop_assert_eq!(target.index() as u8, seq[iv.death as usize]);
                prop_assert_ne!(target, iv.motif_type);
            }
            if iv.birth > 0 {
                prop_assert_ne!(seq[iv.birth as usize - 1], iv.motif_type.index() as u8);
            }
            for t in iv.birth..iv.death {
                rebuilt[t as usize] = iv.motif_type.index() as u8;
            }
        }
        prop_assert_eq!(&rebuilt, &seq);
        for ty in 1u8..7 {
            let lifetime_sum: u32 = ivs
                .iter()
                .filter(|iv| iv.motif_type.index() as u8 == ty)
                .map(|iv| iv.lifetime())
                .sum();
            let day_count = seq.iter().filter(|&&x| x == ty).count() as u32;
            prop_assert_eq!(lifetime_sum, day_count);
        }
    }

    #[test]
    fn diagram_and_conversions_account_for_every_quad(
        (q, t, data) in (1usize..10, 2usize..15).prop_flat_map(|(q, t)| {
            (Just(q), Just(t), prop::collection::vec(0u8..7, q * t))
        }),
    ) {
        let quads: Vec<Quad> = (0..q as u32)
            .map(|i| Quad::from_sorted([4 * i, 4 * i + 1, 4 * i + 2, 4 * i + 3]))
            .collect();
        let seqs = TypeSequences::from_parts(quads, t, data);
        let ivs = intervals_all(&seqs);
        let points = diagram(&ivs);
        let multiplicity_sum: u64 = points.iter().map(|p| p.multiplicity).sum();
        prop_assert_eq!(multiplicity_sum as usize, ivs.len());
        for w in points.windows(2) {
            let ka = (w[0].motif_type, w[0].birth, w[0].death, w[0].death_target.map(|t| t.index()));
            let kb = (w[1].motif_type, w[1].birth, w[1].death, w[1].death_target.map(|t| t.index()));
            prop_assert!(ka < kb, "diagram keys out of order or duplicated");
        }

        let matrices = conversion_matrices(&seqs);
        prop_assert_eq!(matrices.len(), t - 1);
        for m in &matrices {
            let mut quads_accounted = 0u64;
            for i in 0..7 {
                let row_sum: u64 = m.counts[i].iter().sum();
                prop_assert_eq!(row_sum, m.support[i]);
                quads_accounted += row_sum;
                if let Some(row) = m.row(motifnet_core::MotifType::from_index(i)) {
                    let total: f64 = row.iter().sum();
                    prop_assert!((total - 1.0).abs() < 1e-9);
                }
            }
            prop_assert_eq!(quads_accounted as usize, q);
        }
    }

    #[test]
    fn tracked_day_counts_match_the_daily_census(
        records in prop::collection::vec(record(8, 4), 0..150),
    ) {
        let net = build_temporal_network(
            zones(8),
            &records,
            Date { year: 2020, month: 1, day: 6 },
            Weekday::Mon,
            4,
            50.0,
        )
        .unwrap();
        // all C(8,4) = 70 quads, so this is the exhaustive census
        let sample = sample_quads(8, 70, 1).unwrap();
        let seqs = track(&net, sample.quads());
        for t in 0..4usize {
            let counts = census_counts(net.day(t), sample.quads());
            let mut from_track = [0u64; 7];
            for i in 0..seqs.len() {
                from_track[seqs.sequence(i)[t] as usize] += 1;
            }
            prop_assert_eq!(counts, from_track);

            let c = census(net.day(t), &sample);
            if let Some(dist) = c.distribution {
                let total: f64 = dist.iter().sum();
                prop_assert!((total - 1.0).abs() < 1e-12);
            } else {
                prop_assert_eq!(c.counts[0], 70);
            }
        }
    }

    #[test]
    fn moving_average_respects_definition(
        series in prop::collection::vec(prop::option::weighted(0.8, -50.0f64..50.0), 1..40),
        window in 1usize..10,
    ) {
        let ma = moving_average(series.clone(), window);
        prop_assert_eq!(ma.len(), series.len());
        for (t, v) in ma.iter().enumerate() {
            let lo = (t + 1).saturating_sub(window);
            let in_window: Vec<f64> = series[lo..=t].iter().flatten().copied().collect();
            prop_assert_eq!(v.is_some(), !in_window.is_empty());
            if let Some(x) = v {
                let lo_bound = in_window.iter().cloned().fold(f64::INFINITY, f64::min);
                let hi_bound = in_window.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                prop_assert!(*x >= lo_bound - 1e-9 && *x <= hi_bound + 1e-9);
            }
        }
        let identity = moving_average(series.clone(), 1);
        prop_assert_eq!(identity, series);
    }

    #[test]
    fn sampling_is_deterministic_for_any_shape(
        n in 4u32..25,
        draw in any::<u64>(),
        seed in any::<u64>(),
    ) {
        let total = quad_count(n);
        let k = (draw % (total + 1)) as usize;
        let a = sample_quads(n, k, seed).unwrap();
        let b = sample_quads(n, k, seed).unwrap();
        prop_assert_eq!(a.quads(), b.quads());
        prop_assert_eq!(a.sample_size(), k);
        let mut prev = None;
        for quad in a.quads() {
            let r = quad_rank(quad);
            prop_assert!(r < total);
            if let Some(p) = prev {
                prop_assert!(p < r);
            }
            prev = Some(r);
        }
    }
}
