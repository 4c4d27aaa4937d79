use qident_core::corpus;
use qident_core::exec::Exec;
use qident_core::lang::{eval_sum_with, verify, verify_all, Status};
use qident_core::series::Rat;

fn r(n: i64) -> Rat {
    Rat::from_integer(n)
}

#[test]
fn every_corpus_identity_matches() {
    for spec in corpus::all() {
        let rep = verify(&spec, r(60));
        assert_eq!(rep.status, Status::Match, "{}: {:?}", spec.name, rep.first_mismatch);
        assert!(rep.is_consistent());
    }
}

#[test]
fn batch_reports_keep_input_order() {
    let specs = corpus::all();
    for exec in [Exec::Sequential, Exec::Parallel] {
        let reports = verify_all(&specs, r(40), exec);
        let names: Vec<&str> = reports.iter().map(|x| x.identity.as_str()).collect();
        let expected: Vec<&str> = specs.iter().map(|s| s.name.as_str()).collect();
        assert_eq!(names, expected);
        assert!(reports.iter().all(|x| x.status == Status::Match));
    }
}

#[test]
fn executors_agree_on_sums() {
    for spec in corpus::all() {
        let a = eval_sum_with(&spec, r(50), None, Exec::Sequential).unwrap();
        let b = eval_sum_with(&spec, r(50), None, Exec::Parallel).unwrap();
        assert_eq!(a, b, "{}", spec.name);
    }
}

#[test]
fn passing_is_monotone_in_order() {
    for name in corpus::DOUBLE {
        let spec = corpus::load(name);
        for n in [0, 1, 5, 17, 40] {
            assert_eq!(verify(&spec, r(n)).status, Status::Match, "{name} at {n}");
        }
        assert_eq!(verify(&spec, Rat::new(9, 4)).status, Status::Match);
    }
}

#[test]
fn corpus_files_on_disk_match_embedded_copies() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    for (name, text) in corpus::FILES {
        let on_disk = std::fs::read_to_string(dir.join(format!("{name}.id"))).unwrap();
        assert_eq!(&on_disk, text);
    }
}
