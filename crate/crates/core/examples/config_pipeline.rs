//! The file-driven pipeline behind the `chainmap` binary: load a config,
//! reduce, cross-check, and list what was written.
//!
//! ```text
//! cargo run --example config_pipeline -- configs/garg.toml
//! ```

use std::path::PathBuf;

use chainmap::cli::{cmd_oracle, cmd_reduce, load_config, Overrides};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/configs/garg.toml")));
    let out = std::env::temp_dir().join("chainmap-config-pipeline");
    let overrides = Overrides { out: Some(out.clone()), ..Default::default() };
    let cfg = load_config(&path, &overrides)?;
    println!("{}: {} on {} points, {} steps", path.display(), cfg.sd.name(), cfg.grid_points, cfg.steps);

    let code = cmd_reduce(&cfg)?;
    println!("reduce exit code {code}");
    if cfg.oracle_modes > 0 {
        println!("oracle exit code {}", cmd_oracle(&cfg)?);
    }
    let mut files: Vec<_> = std::fs::read_dir(&out)?.map(|e| e.map(|e| e.file_name())).collect::<Result<_, _>>()?;
    files.sort();
    println!("wrote to {}:", out.display());
    for f in files {
        println!("  {}", f.to_string_lossy());
    }
    println!("\n{}", std::fs::read_to_string(out.join("report.json"))?);
    Ok(())
}
