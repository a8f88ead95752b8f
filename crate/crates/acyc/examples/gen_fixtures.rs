//! Regenerates the fixture corpus: `cargo run -p acyc --example gen_fixtures [DIR]`.

fn main() -> std::io::Result<()> {
    let dir = std::env::args_os().nth(1).map_or_else(acyc::corpus::shipped_dir, Into::into);
    acyc::corpus::write_corpus(&dir)?;
    println!("wrote {} fixtures to {}", acyc::corpus::fixtures().len(), dir.display());
    Ok(())
}
