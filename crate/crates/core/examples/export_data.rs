//! Writes the named example graphs to a directory as JSON.

use mpss_core::corpus::{apex_pair, chord_pair, square};
use mpss_core::graph::gamma;

fn main() -> std::io::Result<()> {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "data".into());
    std::fs::create_dir_all(&dir)?;
    let write = |name: &str, json: String| std::fs::write(format!("{dir}/{name}.json"), json + "\n");
    for i in 1..=4 {
        write(&format!("x{i}"), square(i).to_json())?;
    }
    for r in 2..=4 {
        write(&format!("gamma{r}"), gamma(r).to_json())?;
    }
    let (x, y) = apex_pair(2);
    write("apex_x", x.to_json())?;
    write("apex_y", y.to_json())?;
    let (x, y) = chord_pair(3);
    write("chord_x", x.to_json())?;
    write("chord_y", y.to_json())?;
    Ok(())
}
