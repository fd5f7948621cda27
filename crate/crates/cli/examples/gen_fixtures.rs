//! Regenerate the JSON fixture corpus under `fixtures/` at the workspace
//! root. Run from anywhere in the workspace:
//!
//! ```text
//! cargo run -p omnilie-cli --example gen_fixtures
//! ```

use omnilie::calgebra::build_omni_instance;
use omnilie::io::{
    poly_to_json, DiracCandidateJson, InstanceJson, OmniSubspaceJson, StructureConstantsJson,
    StructureEntry, TermJson, UpperEntryJson,
};
use omnilie::liealg::catalog;
use omnilie::omni::OmniSubspace;
use std::fs;
use std::path::PathBuf;

fn main() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    fs::create_dir_all(&dir).expect("create fixtures dir");
    let write = |name: &str, value: serde_json::Value| {
        let path = dir.join(name);
        let mut text = serde_json::to_string_pretty(&value).expect("serialize");
        text.push('\n');
        fs::write(&path, text).expect("write fixture");
        println!("wrote {}", path.display());
    };

    // structure-constant files
    for name in ["so3", "heisenberg3", "sl2", "affine1", "abelian2", "nonlie3"] {
        let op = catalog(name).expect("catalog entry");
        write(
            &format!("{name}.json"),
            serde_json::to_value(StructureConstantsJson::from_op(&op)).unwrap(),
        );
    }

    // a non-skew operation: B(e1,e2) = e1 with no mirror entry
    write(
        "nonskew2.json",
        serde_json::to_value(StructureConstantsJson {
            n: 2,
            entries: vec![StructureEntry { i: 1, j: 2, k: 1, val: "1".into() }],
        })
        .unwrap(),
    );

    // omni subspaces
    write(
        "horizontal_gl2.json",
        serde_json::to_value(OmniSubspaceJson::from_subspace(&OmniSubspace::horizontal(2))).unwrap(),
    );
    write(
        "vertical_r2.json",
        serde_json::to_value(OmniSubspaceJson::from_subspace(&OmniSubspace::vertical(2))).unwrap(),
    );
    // span{(1,1)} inside E_1 pairs to 1 with itself: not isotropic
    write(
        "nonisotropic_e1.json",
        serde_json::json!({
            "n": 1,
            "basis": [ { "a": [["1"]], "v": ["1"] } ],
        }),
    );

    // C-algebra instance files
    let omni1 = InstanceJson::from_instance(&build_omni_instance(1));
    write("omni1_instance.json", serde_json::to_value(&omni1).unwrap());
    let mut broken = omni1;
    // desymmetrize the pairing: flip the sign of one mirror entry
    for entry in &mut broken.pairing {
        if entry.i == 2 && entry.j == 1 {
            entry.val = format!("-{}", entry.val);
        }
    }
    write("broken_pairing_instance.json", serde_json::to_value(&broken).unwrap());

    // Dirac candidates on three variables
    let x = |i: usize| omnilie::courant::Poly::var(3, i);
    let poly = |p: &omnilie::courant::Poly| -> Vec<TermJson> { poly_to_json(p) };
    write(
        "so3_lie_poisson.json",
        serde_json::to_value(DiracCandidateJson {
            kind: "bivector".into(),
            nvars: 3,
            entries: vec![
                UpperEntryJson { i: 1, j: 2, poly: poly(&x(2)) },
                UpperEntryJson { i: 2, j: 3, poly: poly(&x(0)) },
                UpperEntryJson { i: 1, j: 3, poly: poly(&-&x(1)) },
            ],
            basis: vec![],
        })
        .unwrap(),
    );
    write(
        "nonpoisson.json",
        serde_json::to_value(DiracCandidateJson {
            kind: "bivector".into(),
            nvars: 3,
            entries: vec![
                UpperEntryJson { i: 1, j: 2, poly: poly(&x(2)) },
                UpperEntryJson { i: 2, j: 3, poly: poly(&x(1)) },
            ],
            basis: vec![],
        })
        .unwrap(),
    );
    write(
        "omega_const.json",
        serde_json::to_value(DiracCandidateJson {
            kind: "two-form".into(),
            nvars: 3,
            entries: vec![UpperEntryJson {
                i: 1,
                j: 2,
                poly: vec![TermJson { coeff: "1".into(), exps: vec![0, 0, 0] }],
            }],
            basis: vec![],
        })
        .unwrap(),
    );
    write(
        "omega_x3.json",
        serde_json::to_value(DiracCandidateJson {
            kind: "two-form".into(),
            nvars: 3,
            entries: vec![UpperEntryJson { i: 1, j: 2, poly: poly(&x(2)) }],
            basis: vec![],
        })
        .unwrap(),
    );
    write(
        "foliation_x1x2.json",
        serde_json::to_value(DiracCandidateJson {
            kind: "foliation".into(),
            nvars: 3,
            entries: vec![],
            basis: vec![
                vec!["1".into(), "0".into(), "0".into()],
                vec!["0".into(), "1".into(), "0".into()],
            ],
        })
        .unwrap(),
    );
}
