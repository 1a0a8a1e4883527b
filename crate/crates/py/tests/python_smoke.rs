//! Loads the freshly built extension into the Python interpreter PyO3 was
//! configured against and runs `python/smoke_test.py`.

use std::path::{Path, PathBuf};
use std::process::Command;

fn built_extension() -> Option<PathBuf> {
    // target/<profile>/deps/<test binary> -> target/<profile>
    let exe = std::env::current_exe().ok()?;
    let profile_dir = exe.parent()?.parent()?;
    ["libc2rp_py.so", "libc2rp_py.dylib", "c2rp_py.dll"]
        .iter()
        .map(|f| profile_dir.join(f))
        .find(|p| p.exists())
}

#[test]
fn python_smoke_test() {
    let Some(lib) = built_extension() else {
        panic!("extension library not found next to the test binary");
    };
    let python = std::env::var("PYO3_PYTHON").unwrap_or_else(|_| "python3".into());
    if Command::new(&python).arg("--version").output().is_err() {
        eprintln!("skipping: {python} not available");
        return;
    }
    let dir = std::env::temp_dir().join(format!("c2rp-py-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let module = dir.join(if cfg!(windows) { "c2rp.pyd" } else { "c2rp.so" });
    std::fs::copy(&lib, &module).unwrap();
    let script = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../python/smoke_test.py");
    let out = Command::new(&python)
        .arg(&script)
        .env("PYTHONPATH", &dir)
        .output()
        .unwrap();
    std::fs::remove_dir_all(&dir).unwrap();
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{stdout}\n{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout.contains("python smoke test passed"), "{stdout}");
    // The copy in the temp dir, not an installed wheel, must have been imported.
    assert!(stdout.contains(&format!("module: {}", module.display())), "{stdout}");
}
