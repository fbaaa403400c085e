use std::path::PathBuf;
use std::process::Command;

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(crate_dir().join("include/wordmap.h")).unwrap();
    let src = std::fs::read_to_string(crate_dir().join("src/lib.rs")).unwrap();
    let exports: Vec<&str> = src
        .split("extern \"C\" fn ")
        .skip(1)
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 14);
    for name in exports {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
    assert!(header.contains("typedef struct WmWord WmWord;"));
    assert!(header.contains("WM_STATUS_PARSE = 3"));
}

/// Compiles a C program against the header and the static library.
#[test]
fn c_program_links_and_runs() {
    let Some(lib_dir) = static_lib_dir() else {
        panic!("static library not found next to the test binary");
    };
    let out_dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let exe = out_dir.join("wordmap_c_smoke");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(cc)
        .arg(crate_dir().join("tests/smoke.c"))
        .arg("-I")
        .arg(crate_dir().join("include"))
        .arg(lib_dir.join("libwordmap_ffi.a"))
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("C compiler available");
    assert!(status.success());
    let run = Command::new(&exe).output().unwrap();
    let stdout = String::from_utf8_lossy(&run.stdout);
    assert!(run.status.success(), "{stdout}\n{}", String::from_utf8_lossy(&run.stderr));
    assert!(stdout.contains("poly -s*t*u + s^2 + t^2 + u^2 - 2"), "{stdout}");
    assert!(stdout.contains("parse error status 3"), "{stdout}");
}

fn static_lib_dir() -> Option<PathBuf> {
    // target/<profile>/deps/<test> -> target/<profile>
    let exe = std::env::current_exe().ok()?;
    let profile = exe.parent()?.parent()?;
    profile.join("libwordmap_ffi.a").exists().then(|| profile.to_path_buf())
}
