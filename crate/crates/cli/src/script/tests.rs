use proptest::prelude::*;

use super::*;

const EXAMPLE: &str = "ring R = GF(101)[w,x,y,z] / (w*x - y*z);
module N = coker R [[w],[x],[y],[z]];
let M1 = syzygy(N, 1);
scan ext(k, dual(N), 1..10);
check duality(M1, N, 10);
emit json \"out.json\";
";

#[test]
fn grammar_examples_parse() {
    let s = parse(EXAMPLE).unwrap();
    assert_eq!(s.statements.len(), 6);
    match &s.statements[0].kind {
        StmtKind::Ring { name, characteristic, vars, relations } => {
            assert_eq!(name.name, "R");
            assert_eq!(*characteristic, 101);
            assert_eq!(vars.iter().map(|v| v.name.as_str()).collect::<Vec<_>>(), ["w", "x", "y", "z"]);
            assert_eq!(relations[0].text, "w*x - y*z");
        }
        other => panic!("{other:?}"),
    }
    match &s.statements[1].kind {
        StmtKind::Bind { name, expr: Expr::Coker { ring, rows } } => {
            assert_eq!((name.name.as_str(), ring.name.as_str()), ("N", "R"));
            assert_eq!(rows.len(), 4);
            assert!(rows.iter().all(|r| r.len() == 1));
        }
        other => panic!("{other:?}"),
    }
    match &s.statements[3].kind {
        StmtKind::Scan { family, target, range, .. } => {
            assert_eq!(*family, gorext::resolution::Family::Ext);
            assert_eq!(target.to_string(), "dual(N)");
            assert_eq!(*range, Some((1, 10)));
        }
        other => panic!("{other:?}"),
    }
    match &s.statements[4].kind {
        StmtKind::Check(c) => {
            assert_eq!(c.kind, CheckKind::Duality);
            assert_eq!(c.window, Some(10));
        }
        other => panic!("{other:?}"),
    }
    assert_eq!(s.statements[5].kind, StmtKind::Emit { format: Format::Json, path: "out.json".into() });
    assert_eq!(s.statements[2].text, "let M1 = syzygy(N, 1);");
    assert_eq!(s.statements[2].pos, Pos { line: 3, col: 1 });
}

#[test]
fn empty_script() {
    assert_eq!(parse("").unwrap(), Script::default());
    assert_eq!(parse("  # only a comment\n").unwrap(), Script::default());
}

#[test]
fn use_before_define_names_the_identifier() {
    let e = parse("ring R = GF(101)[x];\nscan ext(k, M, 1..3);\nlet M = k;").unwrap_err();
    assert!(e.msg.contains("`M`"), "{e}");
    assert_eq!(e.pos, Pos { line: 2, col: 13 });
    let e = parse("let N = k;").unwrap_err();
    assert!(e.msg.contains("`k`"), "{e}");
    let e = parse("ring S = GF(7)[x];\nmodule N = coker T [[x]];").unwrap_err();
    assert!(e.msg.contains("`T`"), "{e}");
    assert!(parse("search;").is_err());
}

#[test]
fn syntax_errors_carry_line_and_column() {
    let e = parse("ring R = GF(101)[x,y];\nlet M = dual(k;").unwrap_err();
    assert_eq!(e.pos, Pos { line: 2, col: 15 });
    assert!(e.msg.contains("`)`"), "{e}");
    let e = parse("ring R = GF(101)[x];\nlet M = frobnicate(k);").unwrap_err();
    assert_eq!(e.pos, Pos { line: 2, col: 9 });
    let e = parse("ring R = GF(101)[x];\ncheck nonsense(k, k);").unwrap_err();
    assert!(e.msg.contains("unknown check"));
    let e = parse("ring R = GF(101)[x];\nmodule M = coker R [[x, x], [x]];").unwrap_err();
    assert!(e.msg.contains("different lengths"));
    let e = parse("ring R = GF(101)[x];\ncheck low-tor(k, k, 5);").unwrap_err();
    assert!(e.msg.contains("too many"));
}

#[test]
fn check_names_and_synonyms() {
    let pairs = [
        ("duality", CheckKind::Duality),
        ("theorem21", CheckKind::Duality),
        ("dual-symmetry", CheckKind::DualSymmetry),
        ("dual_symmetry", CheckKind::DualSymmetry),
        ("corollary42", CheckKind::DualSymmetry),
        ("lemma36", CheckKind::LowTor),
        ("lescot", CheckKind::BettiFormulas),
        ("theorem59", CheckKind::TensorMcm),
        ("prop43", CheckKind::ExternalTensor),
    ];
    for (name, kind) in pairs {
        assert_eq!(CheckKind::from_name(name), Some(kind), "{name}");
    }
    let s = parse("ring S = GF(101)[x,y];\ncheck change-of-rings(S, x^2, cyclic(x), k, 6);").unwrap();
    match &s.statements[1].kind {
        StmtKind::Check(c) => {
            let (ring, x) = c.base.as_ref().unwrap();
            assert_eq!((ring.name.as_str(), x.text.as_str()), ("S", "x^2"));
            assert_eq!(c.modules.len(), 2);
        }
        other => panic!("{other:?}"),
    }
    let s = parse("ring S = GF(101)[x];\ncheck duality(k, k, 4, bypass);").unwrap();
    assert!(matches!(&s.statements[1].kind, StmtKind::Check(c) if c.bypass));
}

#[test]
fn search_options() {
    let s = parse("ring A = GF(101)[x];\nsearch(trials = 5, seed = 3, check = low-tor);").unwrap();
    match &s.statements[1].kind {
        StmtKind::Search(o) => {
            assert_eq!((o.trials, o.seed, o.check), (Some(5), Some(3), Some(CheckKind::LowTor)));
        }
        other => panic!("{other:?}"),
    }
    assert!(parse("ring A = GF(101)[x];\nsearch(check = external-tensor);").is_err());
    assert!(parse("ring A = GF(101)[x];\nsearch(colour = 3);").is_err());
}

fn expr_strategy() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        Just("k".to_string()),
        Just("R".to_string()),
        Just("M".to_string()),
        Just("cyclic(x, y^2)".to_string()),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| format!("dual({a})")),
            inner.clone().prop_map(|a| format!("minimal({a})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("hom({a}, {b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("tensor({a}, {b})")),
            (inner.clone(), -3i64..4).prop_map(|(a, i)| format!("syzygy({a}, {i})")),
            (inner, -2i64..3).prop_map(|(a, i)| format!("twist({a}, {i})")),
        ]
    })
}

proptest! {
    #[test]
    fn printed_expressions_reparse_to_themselves(e in expr_strategy()) {
        let src = format!("ring R = GF(101)[x,y];\nlet M = k;\nlet E = {e};");
        let s = parse(&src).unwrap();
        let StmtKind::Bind { expr, .. } = &s.statements[2].kind else { panic!() };
        prop_assert_eq!(expr.to_string(), e.clone());
        let again = parse(&format!("ring R = GF(101)[x,y];\nlet M = k;\nlet E = {expr};")).unwrap();
        prop_assert_eq!(&again.statements[2].kind, &s.statements[2].kind);
    }
}
