//! Writes one file per isomorphism class of 2-designs into a directory.
//!
//! `cargo run --release -p neumaier-ilp --example designs -- 9 3 2 12 data/designs/2-9-3-2`

use std::path::PathBuf;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.len() != 5 {
        return Err("usage: designs POINTS BLOCK_SIZE LAMBDA BLOCKS DIR".into());
    }
    let n: Vec<usize> = args[..4]
        .iter()
        .map(|a| a.parse())
        .collect::<Result<_, _>>()?;
    let dir = PathBuf::from(&args[4]);
    std::fs::create_dir_all(&dir)?;
    let designs = neumaier_ilp::enumerate_small_designs(n[0], n[1], n[2], n[3])?;
    for (i, d) in designs.iter().enumerate() {
        std::fs::write(dir.join(format!("d{:04}.txt", i + 1)), d.to_text())?;
    }
    println!("{} designs written to {}", designs.len(), dir.display());
    Ok(())
}
