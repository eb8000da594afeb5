//! Histogram export as CSV (`bitstring,count,probability,se`) and JSON.

use cloudqc_core::sampling::standard_error;
use cloudqc_core::{RngSeed, ShotHistogram};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HistogramRow {
    pub bitstring: String,
    pub count: u64,
    pub probability: f64,
    pub se: f64,
}

/// Rows sorted by bitstring.
pub fn histogram_rows(hist: &ShotHistogram) -> Vec<HistogramRow> {
    let shots = hist.shots();
    let mut rows: Vec<_> = hist
        .iter()
        .map(|(b, count)| {
            let probability = hist.probability(&b);
            HistogramRow { bitstring: b.to_string(), count, probability, se: standard_error(probability, shots) }
        })
        .collect();
    rows.sort_by(|a, b| a.bitstring.cmp(&b.bitstring));
    rows
}

pub fn histogram_csv(hist: &ShotHistogram) -> csv::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in histogram_rows(hist) {
        w.serialize(row)?;
    }
    if hist.shots() == 0 {
        w.write_record(["bitstring", "count", "probability", "se"])?;
    }
    Ok(String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("csv output is utf-8"))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HistogramJson {
    pub shots: u64,
    pub seed: u64,
    pub width: usize,
    pub counts: Vec<HistogramRow>,
}

pub fn histogram_json(hist: &ShotHistogram, seed: RngSeed) -> HistogramJson {
    HistogramJson { shots: hist.shots(), seed: seed.0, width: hist.width(), counts: histogram_rows(hist) }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_is_sorted_with_header() {
        let mut h = ShotHistogram::new(2);
        h.add("11".parse().unwrap(), 3);
        h.add("00".parse().unwrap(), 1);
        let csv = histogram_csv(&h).unwrap();
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "bitstring,count,probability,se");
        assert!(lines[1].starts_with("00,1,0.25,"));
        assert!(lines[2].starts_with("11,3,0.75,"));
    }

    #[test]
    fn json_has_shots_and_seed() {
        let mut h = ShotHistogram::new(1);
        h.add("1".parse().unwrap(), 4);
        let v = serde_json::to_value(histogram_json(&h, RngSeed(9))).unwrap();
        assert_eq!(v["shots"], 4);
        assert_eq!(v["seed"], 9);
    }
}
