//! Half-space displacements against frozen values from an independent
//! triangular-dislocation code (see `gen_halfspace_reference.py`).

use wsm::analytic::HalfspaceSource;
use wsm::Elasticity;

fn source(case: &str) -> HalfspaceSource {
    let l = 3f64.powf(-0.5);
    let (aw, dip_slip) = match case {
        "II" => ((-0.5, 0.5), 0.1),
        _ => ((-0.5, 1.0), -0.1),
    };
    HalfspaceSource {
        material: Elasticity::unit(),
        center: [0.0, 0.0],
        depth: 0.5,
        strike_deg: 15.0,
        dip_deg: 30.0,
        al: (-0.5 * l, 0.5 * l),
        aw,
        disl: [0.2, dip_slip, 0.0],
    }
}

#[test]
fn matches_triangular_dislocation_reference() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/halfspace_reference.csv");
    let mut rdr = csv::Reader::from_path(path).unwrap();
    let mut n = 0;
    let mut worst = 0.0f64;
    for rec in rdr.records() {
        let rec = rec.unwrap();
        let v: Vec<f64> = (1..7).map(|i| rec[i].parse().unwrap()).collect();
        let src = source(&rec[0]);
        let u = src.eval(&[v[0], v[1], v[2]], None).unwrap();
        for i in 0..3 {
            let err = (u[i] - v[3 + i]).abs();
            worst = worst.max(err);
            assert!(err < 1e-9, "case {} at {:?}: {:?} vs {:?}", &rec[0], &v[..3], u, &v[3..]);
        }
        n += 1;
    }
    assert_eq!(n, 80);
    println!("worst absolute deviation {worst:.2e}");
}
