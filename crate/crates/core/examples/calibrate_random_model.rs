//! Re-derives the frozen band constants of the random-model study.

use fhp_core::instances::random_model::{calibrate, CALIBRATION_SEED};

fn main() {
    let (lo, hi) = calibrate(20, 10, 200, CALIBRATION_SEED, 0.9).unwrap();
    println!("c_low={lo} c_high={hi}");
}
