use std::path::Path;

fn book_src() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../book/src")
}

#[test]
fn summary_and_doctests_cover_every_chapter() {
    let summary = std::fs::read_to_string(book_src().join("SUMMARY.md")).unwrap();
    let lib = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("src/lib.rs")).unwrap();
    let mut chapters = 0;
    for entry in std::fs::read_dir(book_src()).unwrap() {
        let name = entry.unwrap().file_name().into_string().unwrap();
        if name == "SUMMARY.md" || !name.ends_with(".md") {
            continue;
        }
        chapters += 1;
        assert!(summary.contains(&format!("({name})")), "{name} missing from SUMMARY.md");
        assert!(lib.contains(&format!("book/src/{name}\")")), "{name} is not doctested");
    }
    assert_eq!(chapters, 8);
}
