//! Build Gray-coded constellations and inspect their geometry and labels.
//!
//! ```bash
//! cargo run --release --example constellations
//! ```

use uplink_noma::constellation::{build_pam, build_qam, Constellation};

fn main() {
    let pam = build_pam(4, 1.0).unwrap();
    println!("4-PAM at Eb = 1 (d = {:.5}):", pam.scale);
    for (i, (&p, &label)) in pam.points.iter().zip(&pam.labels).enumerate() {
        println!("  index {i}: amplitude {p:+.5}  label {label:02b}");
    }

    let qam = build_qam(16, 1.0).unwrap();
    println!("\n16-QAM at Eb = 1 (d = {:.5}):", qam.scale);
    println!("  labels over the I/Q grid (in-phase word first, quadrature word last):");
    for i_quad in (0..qam.axis_order).rev() {
        let row: Vec<String> = (0..qam.axis_order)
            .map(|i_in| format!("{:04b}", qam.labels[i_in * qam.axis_order + i_quad]))
            .collect();
        println!("    {}", row.join("  "));
    }

    let c = Constellation::Qam(qam);
    println!("\n  mean symbol energy: {:.12} (Eb * log2(16) = 4)", c.mean_energy());

    let bits = [1, 0, 0, 1];
    let idx = c.map_bits(&bits).unwrap();
    println!(
        "  bits {:?} -> symbol {} at {:+.4}{:+.4}j -> bits {:?}",
        bits,
        idx,
        c.point(idx).re,
        c.point(idx).im,
        c.symbol_bits(idx).unwrap()
    );

    match build_qam(8, 1.0) {
        Err(e) => println!("\n  8-QAM is rejected: {e}"),
        Ok(_) => unreachable!(),
    }
}
