use qha_core::algebra::gelfand::gelfand_transform;
use qha_core::fixtures::{fixture, Fixture, FixtureKind};
use qha_core::io::*;
use qha_core::{ModelParams, QhaPair};

#[test]
fn every_fixture_round_trips_bit_exactly() {
    let p = ModelParams::new(1, 9).unwrap();
    for kind in FixtureKind::ALL {
        match fixture::<f64>(kind, 11, p) {
            Fixture::State(v) => assert_eq!(state_from_json::<f64>(&state_to_json(&v), p).unwrap(), v),
            Fixture::Operator(a) => {
                assert_eq!(operator_from_json::<f64>(&operator_to_json(&a), Some(p)).unwrap(), a);
                assert_eq!(operator_from_csv::<f64>(&operator_to_csv(&a), p).unwrap(), a);
            }
            Fixture::Function(f) => {
                assert_eq!(function_from_json::<f64>(&function_to_json(&f), Some(p)).unwrap(), f);
                assert_eq!(function_from_csv::<f64>(&function_to_csv(&f), p).unwrap(), f);
            }
        }
    }
}

#[test]
fn unit_pair_grid_is_all_ones() {
    let p = ModelParams::new(1, 3).unwrap();
    let csv = doubled_to_csv(&gelfand_transform(&QhaPair::<f64>::unit(p)));
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("x,xi,j,re,im"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 18);
    for r in rows {
        let f: Vec<f64> = r.split(',').skip(3).map(|v| v.parse().unwrap()).collect();
        assert!((f[0] - 1.0).abs() < 1e-12 && f[1].abs() < 1e-12, "{r}");
    }
}

#[test]
fn malformed_inputs_are_located() {
    let p = ModelParams::new(1, 3).unwrap();
    let err = operator_from_csv::<f64>("row,col,re,im\n0,0,1,0\n0,1,2\n", p).unwrap_err();
    assert!(err.to_string().contains("line 3"), "{err}");
    let err = operator_from_json::<f64>(r#"{"n":1,"N":3,"matrix":[[[1,0]]]}"#, None).unwrap_err();
    assert!(err.to_string().contains("expected 3"), "{err}");
    let err = function_from_csv::<f64>("x,xi,re,im\n0,0,1,0\n", p).unwrap_err();
    assert!(err.to_string().contains("missing"), "{err}");
}
