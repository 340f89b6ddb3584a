//! Plot scripts for figure CSVs.
//!
//! Each sweep in the CSV becomes one PNG: one-axis sweeps plot the gain and
//! the communicated entanglement, two-axis sweeps a gain surface.

use std::fmt::Write;
use std::path::Path;

use entdist::protocols::{Figure, SweepResult};

// CSV columns: scenario, axis1, axis2, e_in, e_com, e_fin, delta_e, classification.
const COL_E_COM: usize = 5;
const COL_DELTA_E: usize = 7;

pub fn script(fig: Figure, csv: &Path, results: &[SweepResult]) -> String {
    let data = csv.file_name().map_or_else(|| csv.display().to_string(), |n| n.to_string_lossy().into_owned());
    let mut s = String::new();
    writeln!(s, "# gnuplot script for {fig}; run from the directory holding {data}").unwrap();
    writeln!(s, "set datafile separator ','").unwrap();
    writeln!(s, "set terminal pngcairo size 900,650").unwrap();
    for (k, r) in results.iter().enumerate() {
        let select = |col: usize| format!("(strcol(1) eq \"{}\" ? ${col} : NaN)", r.scenario);
        writeln!(s).unwrap();
        writeln!(s, "set output '{fig}_{k}.png'").unwrap();
        writeln!(s, "set title \"{}\"", r.scenario).unwrap();
        writeln!(s, "set xlabel '{}'", r.axes[0]).unwrap();
        if let Some(y) = r.axes.get(1) {
            writeln!(s, "set ylabel '{y}'").unwrap();
            writeln!(s, "set zlabel 'delta_e'").unwrap();
            writeln!(s, "set pm3d").unwrap();
            writeln!(s, "splot '{data}' using 2:3:{} with pm3d title 'delta_e'", select(COL_DELTA_E)).unwrap();
            writeln!(s, "unset pm3d").unwrap();
        } else {
            writeln!(s, "set ylabel 'entanglement'").unwrap();
            writeln!(
                s,
                "plot '{data}' using 2:{} with lines title 'delta_e', '' using 2:{} with lines dashtype 2 title 'e_com'",
                select(COL_DELTA_E),
                select(COL_E_COM)
            )
            .unwrap();
        }
    }
    s
}
