//! Regenerates the frozen calibrated table from the embedded inputs.
//!
//! Writes `data/calibrated_table.csv` and prints the constant arrays for
//! `techscale-core`'s `table.rs` to stdout. Run after any change to the
//! calibration inputs, then paste the printed block over the frozen
//! constants and rerun the test suite.

use std::fs::File;
use std::path::Path;

use techscale::calibrate::calibrate;
use techscale::io::write_table;
use techscale::{data, Metric, TechNode};

fn main() {
    let input = data::shipped_input().expect("embedded input parses");
    let calibration = calibrate(&input).expect("embedded input calibrates");
    let table = &calibration.table;

    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/calibrated_table.csv");
    let file = File::create(&path).expect("create table file");
    write_table(file, table).expect("write table file");
    eprintln!("wrote {}", path.display());

    for fit in &calibration.source_fits {
        eprintln!(
            "fit  {:<6} {:<11} r2 {:.12}",
            fit.model.metric.name(),
            fit.source,
            fit.model.r_squared
        );
    }
    for refit in &calibration.refits {
        eprintln!(
            "refit {:<6} r2 {:.12}",
            refit.metric.name(),
            refit.r_squared
        );
    }

    for metric in Metric::PRIMARY {
        let trend = table.trend(metric).expect("primary trend");
        let upper = metric.name().replace('-', "_").to_uppercase();
        println!(
            "const {}: [(TechNode, f64, Provenance); {}] = [",
            upper,
            trend.len()
        );
        for node in TechNode::ALL {
            let point = trend.point(node).expect("grid is complete");
            println!(
                "    (TechNode::N{}, {:?}, Provenance::{:?}),",
                node.feature_nm(),
                point.value,
                point.provenance
            );
        }
        println!("];");
    }
}
