use symqca::deffile;
use symqca::index;
use symqca::qca;
use symqca::{library, Error, FiniteAbelianGroup};

#[test]
fn explicit_and_builtin_kw_agree() {
    let defs = deffile::parse(
        r#"
[group]
factors = [2]

[qca]
period = 1
X.0.0 = "Z[0,0] Z[1,0]"
ZZ.0.0 = "X[1,0]"
"#,
    )
    .unwrap();
    let k = qca::kw(&FiniteAbelianGroup::cyclic(2), 0).unwrap();
    assert!(defs.main().unwrap().acts_like(&k));
}

#[test]
fn named_maps_reproduce_the_library() {
    let defs = deffile::parse(
        r#"
[group]
factors = [2, 2]

[qca]
compose = ["inv:shift", "d2"]

[qca.shift]
compose = ["translate:0,1", "out:[[0,1],[1,0]]"]

[qca.d2]
compose = ["kw:0", "kw:1"]
"#,
    )
    .unwrap();
    assert!(defs.get("shift").unwrap().acts_like(&library::shift()));
    assert!(defs.get("d2").unwrap().acts_like(&library::d2()));
    assert!(defs.main().unwrap().acts_like(&library::d1()));
    assert!(index::ind_default(defs.main().unwrap()).unwrap().is_one());
}

#[test]
fn bad_files_are_rejected() {
    let cases = [
        "[qca]\nbuiltin = \"kw:0\"\n",
        "[group]\nfactors = [2]\n[qca]\nbuiltin = \"kw:3\"\n",
        "[group]\nfactors = [2]\n[qca.a]\ncompose = [\"b\"]\n[qca.b]\ncompose = [\"a\"]\n",
        "not toml at all [",
    ];
    for text in cases {
        assert!(deffile::parse(text).is_err(), "{text}");
    }
}

#[test]
fn non_automorphism_is_reported() {
    let charged = deffile::parse("[group]\nfactors = [2]\n[qca]\nperiod = 1\nX.0.0 = \"Z[0,0]\"\nZZ.0.0 = \"X[1,0]\"\n");
    let r = qca::validate(charged.unwrap().main().unwrap());
    assert!(!r.symmetric_images && !r.is_valid());
    let err = deffile::parse("[group]\nfactors = [2]\n[qca]\nperiod = 1\nX.0.0 = \"X[0,0]\"\nZZ.0.0 = \"X[0,0]\"\n");
    match err {
        Ok(d) => assert!(!qca::validate(d.main().unwrap()).is_valid()),
        Err(e) => assert!(matches!(e, Error::Definition(_) | Error::InvalidQca(_)), "{e}"),
    }
}

#[test]
fn out_may_mix_factors_of_unequal_order() {
    let defs = deffile::parse("[group]\nfactors = [2, 4]\n[qca]\nbuiltin = \"out:[[1,0],[2,1]]\"\n").unwrap();
    let m = defs.main().unwrap();
    assert!(qca::validate(m).is_valid());
    assert!(index::ind_default(m).unwrap().is_one());
}
