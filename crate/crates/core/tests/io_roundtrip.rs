use heffter::io::{ArrayFile, Format};
use heffter::{construct, Parameters};

fn sample(m: u64, n: u64, s: u64, k: u64, t: u64) -> ArrayFile {
    let p = Parameters::derive(m, n, s, k, t).unwrap();
    let c = construct(&p).unwrap();
    ArrayFile::new(p, c.trace, c.array)
}

#[test]
fn files_round_trip_byte_for_byte() {
    let dir = std::env::temp_dir().join(format!("heffter-io-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for f in [sample(4, 4, 4, 4, 8), sample(6, 12, 8, 4, 2), sample(12, 12, 10, 10, 4)] {
        for ext in ["json", "csv"] {
            let path = dir.join(format!("a.{ext}"));
            f.write(&path).unwrap();
            let first = std::fs::read(&path).unwrap();
            let back = ArrayFile::read(&path).unwrap();
            assert_eq!(back, f);
            back.write(&path).unwrap();
            assert_eq!(std::fs::read(&path).unwrap(), first, "{ext}");
        }
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn encodings_agree() {
    let f = sample(5, 10, 8, 4, 5);
    let json = ArrayFile::parse(&f.encode(Format::Json)).unwrap();
    let csv = ArrayFile::parse(&f.encode(Format::Csv)).unwrap();
    assert_eq!(json, csv);
}

#[test]
fn duplicate_and_zero_cells_are_rejected() {
    let head = r#"{"format":"heffter-array","version":1,"m":4,"n":4,"s":4,"k":4,"t":8,"cells":["#;
    let dup = format!(r#"{head}{{"row":1,"col":1,"value":3}},{{"row":1,"col":1,"value":4}}]}}"#);
    assert!(ArrayFile::from_json(&dup).is_err());
    let zero = format!(r#"{head}{{"row":1,"col":1,"value":0}}]}}"#);
    assert!(ArrayFile::from_json(&zero).is_err());
    let extra = format!(r#"{head}],"colour":1}}"#);
    assert!(ArrayFile::from_json(&extra).is_err());
}
