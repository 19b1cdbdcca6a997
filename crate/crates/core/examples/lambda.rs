//! Near/far pair partition and the balancing truncation Λ.
//!
//! cargo run --release --example lambda

use oscmult::cz_hardy::{classify_split, optimal_lambda, partition_pairs, LambdaParams};

fn main() -> oscmult::Result<()> {
    let theta = 0.5;
    let js: Vec<i32> = (1..=8).collect();
    let levels: Vec<f64> = (-8..=4).map(f64::from).collect();
    let p = partition_pairs(&js, &levels, theta)?;
    println!("{} near pairs, {} far pairs", p.near.len(), p.far.len());
    let params = LambdaParams { theta, q: 1.0, s: 0.75, s_low: 0.25 };
    for &(j, l) in p.near.iter().step_by(3) {
        let split = classify_split(j, params.q);
        let c = optimal_lambda(j, l, split, &params)?;
        println!(
            "(j, L) = ({j}, {l}) {split:?}: Lambda = {:.4}, exponents {:.4} / {:.4}, printed {:?}",
            c.lambda, c.log2_near + 0.0, c.log2_far + 0.0, c.printed_lambda
        );
    }
    Ok(())
}
