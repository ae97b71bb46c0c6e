use std::collections::BTreeMap;

use cdsbench::harness::{
    run_cardinality_sweep, run_sweep, summarize_tradeoff, write_instances_csv, write_summary_csv, SweepConfig,
    SweepResult, METRICS,
};
use cdsbench::Scheme;

fn small_config() -> SweepConfig {
    SweepConfig {
        node_counts: vec![10, 20, 30],
        ranges: vec![20.0, 40.0],
        instances_per_point: 5,
        base_seed: 99,
        area_min: 20.0,
        area_max: 100.0,
        ..SweepConfig::default()
    }
}

fn csvs(result: &SweepResult) -> (String, String) {
    let mut inst = Vec::new();
    write_instances_csv(result, &mut inst).unwrap();
    let mut summ = Vec::new();
    write_summary_csv(result, &mut summ).unwrap();
    (String::from_utf8(inst).unwrap(), String::from_utf8(summ).unwrap())
}

#[test]
fn rerun_is_byte_identical() {
    let a = csvs(&run_sweep(&small_config()).unwrap());
    let b = csvs(&run_sweep(&small_config()).unwrap());
    assert_eq!(a, b);
}

#[test]
fn row_counts_and_headers() {
    let result = run_sweep(&small_config()).unwrap();
    let (inst, summ) = csvs(&result);
    assert_eq!(inst.lines().next().unwrap(), "graph_id,scheme,n,r,cds_size,diameter,abpl,mrpl,arpl,max_stretch");
    assert!(summ.lines().next().unwrap().starts_with("n,r,scheme,instances,infeasible,cds_size_mean,cds_size_std"));
    assert_eq!(summ.lines().count(), 1 + 3 * 2 * 6);
    let used: usize = result.rows.iter().filter(|r| r.scheme == Scheme::Greedy).map(|r| r.instances).sum();
    assert_eq!(inst.lines().count(), 1 + used * 6);
    assert!(result.rows.iter().all(|r| r.instances <= 5));
}

#[test]
fn dropping_a_scheme_leaves_other_rows_untouched() {
    let full = run_sweep(&small_config()).unwrap();
    let mut cfg = small_config();
    cfg.schemes = vec![Scheme::Resilient, Scheme::Greedy];
    let partial = run_sweep(&cfg).unwrap();
    for scheme in [Scheme::Greedy, Scheme::Resilient] {
        let pick = |res: &SweepResult| {
            res.instances
                .iter()
                .filter(|r| r.scheme == scheme)
                .map(|r| (r.graph_id.clone(), r.report))
                .collect::<Vec<_>>()
        };
        assert_eq!(pick(&full), pick(&partial));
    }
}

#[test]
fn summary_means_recompute_from_instance_csv() {
    let result = run_sweep(&small_config()).unwrap();
    let (inst, _) = csvs(&result);
    let mut reader = csv::Reader::from_reader(inst.as_bytes());
    let headers = reader.headers().unwrap().clone();
    let mut groups: BTreeMap<(String, String, String), Vec<Vec<f64>>> = BTreeMap::new();
    for rec in reader.records() {
        let rec = rec.unwrap();
        let values = METRICS
            .iter()
            .map(|m| rec[headers.iter().position(|h| h == *m).unwrap()].parse::<f64>().unwrap())
            .collect();
        groups
            .entry((rec[2].to_string(), rec[3].to_string(), rec[1].to_string()))
            .or_default()
            .push(values);
    }
    for row in result.rows.iter().filter(|r| !r.infeasible) {
        let rows = &groups[&(row.n.to_string(), row.r.to_string(), row.scheme.to_string())];
        assert_eq!(rows.len(), row.instances);
        for (k, m) in METRICS.iter().enumerate() {
            let mean = rows.iter().map(|v| v[k]).sum::<f64>() / rows.len() as f64;
            assert!((mean - row.stat(m).unwrap().mean).abs() <= 1e-9, "{m}");
        }
    }
}

#[test]
fn infeasible_point_does_not_disturb_others() {
    let grid = SweepConfig {
        node_counts: vec![5, 100],
        ranges: vec![10.0, 700.0],
        instances_per_point: 2,
        schemes: vec![Scheme::Greedy, Scheme::Resilient],
        ..SweepConfig::default()
    };
    let res = run_sweep(&grid).unwrap();
    let marked: Vec<(usize, f64)> = res.rows.iter().filter(|r| r.infeasible).map(|r| (r.n, r.r)).collect();
    assert_eq!(marked, vec![(5, 10.0), (5, 10.0), (100, 10.0), (100, 10.0)]);
    let alone = run_sweep(&SweepConfig {
        node_counts: vec![100],
        ranges: vec![700.0],
        ..grid.clone()
    })
    .unwrap();
    let feasible: Vec<_> = res.instances.iter().filter(|r| r.n == 100).cloned().collect();
    assert_eq!(feasible, alone.instances);
    let (_, summ) = csvs(&res);
    assert!(summ.contains("100,10,GREEDY,0,true,,,"));
}

#[test]
fn tradeoff_table_matches_csv_recomputation() {
    let result = run_sweep(&small_config()).unwrap();
    let table = summarize_tradeoff(&result).unwrap();
    let (_, summ) = csvs(&result);
    // spreadsheet-style: rank = 1 + number of strictly smaller means at the point
    let mut reader = csv::Reader::from_reader(summ.as_bytes());
    let h = reader.headers().unwrap().clone();
    let col = |name: &str| h.iter().position(|x| x == name).unwrap();
    let recs: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    let mut expected = Vec::new();
    for rec in &recs {
        let same: Vec<&csv::StringRecord> = recs.iter().filter(|o| o[0] == rec[0] && o[1] == rec[1]).collect();
        let rank = |c: usize| {
            let v: f64 = rec[c].parse().unwrap();
            1 + same.iter().filter(|o| o[c].parse::<f64>().unwrap() < v).count()
        };
        let (sr, mr) = (rank(col("cds_size_mean")), rank(col("mrpl_mean")));
        expected.push((rec[0].to_string(), rec[1].to_string(), rec[2].to_string(), sr, mr, sr + mr));
    }
    let got: Vec<_> = table
        .iter()
        .map(|t| (t.n.to_string(), t.r.to_string(), t.scheme.to_string(), t.size_rank, t.mrpl_rank, t.balance))
        .collect();
    assert_eq!(got, expected);
}

#[test]
fn tradeoff_ranks_dominant_scheme_first() {
    let mut result = run_sweep(&SweepConfig {
        node_counts: vec![5],
        ranges: vec![700.0],
        instances_per_point: 2,
        schemes: vec![Scheme::Greedy, Scheme::Resilient],
        ..SweepConfig::default()
    })
    .unwrap();
    // complete graphs: identical metrics, tied ranks
    let table = summarize_tradeoff(&result).unwrap();
    assert!(table.iter().all(|t| t.size_rank == 1 && t.mrpl_rank == 1));
    // make GREEDY strictly better on both axes
    for row in &mut result.rows {
        if row.scheme == Scheme::Resilient {
            row.stats[0].mean += 1.0;
            row.stats[3].mean += 1.0;
        }
    }
    let table = summarize_tradeoff(&result).unwrap();
    assert_eq!((table[0].size_rank, table[0].mrpl_rank), (1, 1));
    assert_eq!((table[1].size_rank, table[1].mrpl_rank, table[1].balance), (2, 2, 4));
    result.config.schemes = vec![Scheme::Greedy];
    assert!(summarize_tradeoff(&result).is_err());
}

#[test]
fn cardinality_sweep_series() {
    let cfg = SweepConfig {
        node_counts: vec![10, 30, 50, 70, 90],
        ranges: vec![40.0],
        instances_per_point: 4,
        area_min: 20.0,
        area_max: 100.0,
        ..SweepConfig::default()
    };
    let a = run_cardinality_sweep(&cfg).unwrap();
    assert_eq!(csvs(&a), csvs(&run_cardinality_sweep(&cfg).unwrap()));
    let series: Vec<f64> = a
        .rows
        .iter()
        .filter(|r| r.scheme == Scheme::Resilient)
        .map(|r| r.stat("cds_size").unwrap().mean)
        .collect();
    assert_eq!(series.len(), 5);
    // reported, trend is asserted in the acceptance suite
    eprintln!("RESILIENT cds_size vs n at r=40: {series:?}");
}
