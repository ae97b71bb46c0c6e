mod common;

use cdsbench::graph::{all_pairs_hop_dist, is_connected};
use cdsbench::rng::CoordStream;
use cdsbench::udg::build_adjacency;
use cdsbench::{generate_udg, Error, UdgSpec, UnitDiskGraph};
use common::{floyd_warshall, random_connected_udg, union_find_connected};
use proptest::prelude::*;

#[test]
fn generation_is_deterministic() {
    let spec = UdgSpec::new(30, 35.0, 11).with_area(0.0, 100.0);
    let a = generate_udg(&spec).unwrap();
    let b = generate_udg(&spec).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.to_json(), b.to_json());
    let c = generate_udg(&UdgSpec { seed: 12, ..spec }).unwrap();
    assert_ne!(a.coords(), c.coords());
}

#[test]
fn first_draw_uses_stream_order_x_then_y() {
    // Range 700 covers the default square, so the first draw is accepted.
    let g = generate_udg(&UdgSpec::new(3, 700.0, 42)).unwrap();
    let mut s = CoordStream::new(42);
    for c in g.coords() {
        let x = s.next_in(20.0, 500.0);
        let y = s.next_in(20.0, 500.0);
        assert_eq!(*c, [x, y]);
    }
}

#[test]
fn rejection_rate_oracle_for_sparse_parameters() {
    // Fraction of connected draws of 100 nodes at r = 10 in the default
    // square over 10,000 independent samples.
    let mut stream = CoordStream::new(7);
    let mut connected = 0;
    for _ in 0..10_000 {
        let coords: Vec<[f64; 2]> = (0..100)
            .map(|_| [stream.next_in(20.0, 500.0), stream.next_in(20.0, 500.0)])
            .collect();
        if union_find_connected(&build_adjacency(&coords, 10.0)) {
            connected += 1;
        }
    }
    assert_eq!(connected, 0);
    assert!(matches!(
        generate_udg(&UdgSpec::new(100, 10.0, 7)),
        Err(Error::ConnectivityUnattainable { .. })
    ));
}

#[test]
fn is_connected_agrees_with_union_find() {
    // Unconditioned 20-node draws at r = 40 in a 100-wide square give a mix
    // of connected and disconnected graphs.
    let mut outcomes = [0usize; 2];
    for seed in 0..100u64 {
        let mut s = CoordStream::new(seed);
        let coords: Vec<[f64; 2]> = (0..20).map(|_| [s.next_in(0.0, 100.0), s.next_in(0.0, 100.0)]).collect();
        let adj = build_adjacency(&coords, 40.0);
        let ours = is_connected(&adj);
        assert_eq!(ours, union_find_connected(&adj), "seed {seed}");
        outcomes[ours as usize] += 1;
    }
    assert!(outcomes[0] > 0 && outcomes[1] > 0, "{outcomes:?}");
}

#[test]
fn hop_matrix_metric_axioms_up_to_thirty_nodes() {
    for (k, n) in (2..=30).step_by(4).enumerate() {
        let g = random_connected_udg(n, k as u64);
        let d = all_pairs_hop_dist(g.graph());
        for a in 0..n {
            assert_eq!(d.get(a, a), 0);
            for b in 0..n {
                assert_eq!(d.get(a, b), d.get(b, a));
                assert_ne!(d.get(a, b), u32::MAX);
                for c in 0..n {
                    assert!(d.get(a, b) <= d.get(a, c) + d.get(c, b));
                }
            }
        }
    }
}

#[test]
fn generated_graph_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    let g = random_connected_udg(15, 3);
    g.write(&path).unwrap();
    assert_eq!(UnitDiskGraph::read(&path).unwrap(), g);
    std::fs::write(&path, r#"{"range": 5.0, "coords": [[0, 0], [0, 5]]}"#).unwrap();
    let two = UnitDiskGraph::read(&path).unwrap();
    assert_eq!(two.graph().edge_count(), 1);
    std::fs::write(&path, r#"{"range": 5.0}"#).unwrap();
    assert!(UnitDiskGraph::read(&path).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn disk_rule_holds_for_every_pair(n in 2usize..40, r in 20.0f64..80.0, seed in any::<u64>()) {
        let spec = UdgSpec::new(n, r, seed).with_area(0.0, 100.0).with_retry_budget(50);
        if let Ok(g) = generate_udg(&spec) {
            prop_assert!(g.graph().is_connected());
            for a in 0..n {
                prop_assert!(!g.graph().has_edge(a, a));
                for b in 0..n {
                    if a == b { continue; }
                    let (p, q) = (g.coords()[a], g.coords()[b]);
                    let dist = ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt();
                    prop_assert_eq!(g.graph().has_edge(a, b), g.graph().has_edge(b, a));
                    if g.graph().has_edge(a, b) {
                        prop_assert!(dist <= r * (1.0 + 1e-12));
                    } else {
                        prop_assert!(dist > r * (1.0 - 1e-12));
                    }
                }
            }
        }
    }

    #[test]
    fn hop_matrix_equals_floyd_warshall(n in 1usize..=15, seed in any::<u64>()) {
        let g = random_connected_udg(n, seed);
        let d = all_pairs_hop_dist(g.graph());
        let fw = floyd_warshall(g.graph());
        for a in 0..n {
            for b in 0..n {
                prop_assert_eq!(d.get(a, b), fw[a][b]);
            }
        }
    }
}
