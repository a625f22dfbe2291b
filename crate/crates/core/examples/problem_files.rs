//! Solving and verifying the shipped JSON problem files through the library front end.

use std::path::Path;

use dual_rbvp::cli::{solve_file, verify_files, SolveOptions};

fn main() -> dual_rbvp::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("problems");
    let mut paths: Vec<_> = std::fs::read_dir(&dir)?.map(|e| e.map(|e| e.path())).collect::<Result<_, _>>()?;
    paths.sort();
    let tmp = std::env::temp_dir().join("dual-rbvp-example");
    std::fs::create_dir_all(&tmp)?;
    for path in paths {
        let name = path.file_name().unwrap().to_string_lossy();
        let result = solve_file(&path, &SolveOptions::default())?;
        print!("{name:<22} {:?} kappa {:>2}", result.kind, result.kappa);
        if !result.solvable {
            println!("  unsolvable, moment norms {:?}", result.moment_norms);
            continue;
        }
        let out = tmp.join(&*name);
        std::fs::write(&out, serde_json::to_string(&result)?)?;
        let v = verify_files(&path, &out, None)?;
        println!("  residual {:.2e}, verified {}", result.sup_residual.unwrap_or(0.0), v.passed);
    }
    Ok(())
}
