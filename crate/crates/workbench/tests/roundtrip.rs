use proptest::prelude::*;

use tightclosure_workbench::render::render_script;
use tightclosure_workbench::script::{parse_script, Decl};

const VARS: [&str; 3] = ["x", "y", "z"];

/// Polynomial source text over the first `n` variables, with the usual
/// surface variety: signs, parentheses, powers, stray spaces.
fn poly_text(n: usize) -> impl Strategy<Value = String> {
    let atom = prop_oneof![
        (0u64..20).prop_map(|c| c.to_string()),
        (0..n).prop_map(|i| VARS[i].to_string()),
    ];
    let factor = (atom, proptest::option::of(0u32..4)).prop_map(|(a, e)| match e {
        Some(e) => format!("{a}^{e}"),
        None => a,
    });
    let leaf = proptest::collection::vec(factor, 1..4).prop_map(|fs| fs.join("*"));
    leaf.prop_recursive(2, 12, 3, |inner| {
        prop_oneof![
            (inner.clone(), any::<bool>(), inner.clone()).prop_map(|(a, plus, b)| format!("{a} {} ({b})", if plus { "+" } else { "-" })),
            (inner.clone(), 1u32..3).prop_map(|(a, e)| format!("({a})^{e}")),
            (inner.clone(), inner).prop_map(|(a, b)| format!("({a})*({b})")),
            Just("-x".to_string()),
        ]
    })
}

#[derive(Debug, Clone)]
struct Shape {
    ch: Option<u64>,
    nvars: usize,
    weights: Option<Vec<u32>>,
    relations: Vec<String>,
    domain: bool,
    ideals: Vec<Vec<String>>,
    element: String,
    bound: Option<u64>,
    emax: u64,
}

fn shape() -> impl Strategy<Value = Shape> {
    (1usize..=3, proptest::option::of(prop::sample::select(vec![2u64, 3, 5, 7, 101])))
        .prop_flat_map(|(n, ch)| {
            (
                Just(ch),
                Just(n),
                proptest::option::of(proptest::collection::vec(1u32..4, n)),
                proptest::collection::vec(poly_text(n), 0..2),
                any::<bool>(),
                proptest::collection::vec(proptest::collection::vec(poly_text(n), 1..4), 1..3),
                poly_text(n),
                proptest::option::of(1u64..6),
                1u64..6,
            )
        })
        .prop_map(|(ch, nvars, weights, relations, domain, ideals, element, bound, emax)| Shape {
            ch,
            nvars,
            weights,
            relations,
            domain,
            ideals,
            element,
            bound,
            emax,
        })
}

fn source(s: &Shape) -> String {
    let mut t = String::from("# generated\n");
    let ch = s.ch.map(|p| p.to_string()).unwrap_or_else(|| "Z".into());
    t += &format!("ring R = char {ch} vars {}", VARS[..s.nvars].join(", "));
    if let Some(w) = &s.weights {
        t += &format!(" weights {}", w.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(","));
    }
    if !s.relations.is_empty() {
        t += &format!(" relations {}", s.relations.join(", "));
    }
    if s.domain {
        t += " domain";
    }
    t += ";\n";
    for (i, gens) in s.ideals.iter().enumerate() {
        t += &format!("ideal I{i} = {};\n", gens.join(" ,"));
    }
    t += &format!("element f = {};\nelement g = f - 1;\n", s.element);
    // integer rings only run through `task models R KIND ...`
    let head = |kind: &str| if s.ch.is_none() { format!("task models R {kind}") } else { format!("task {kind} R") };
    let primes = if s.ch.is_none() { " primes 2, 5, 7" } else { "" };
    let bound = s.bound.map(|b| format!(" bound {b}")).unwrap_or_default();
    t += &format!("{} I0{bound}{primes};\n", head("tc-hull"));
    t += &format!("{} I0 g emax {}{primes};\n", head("tc-membership"), s.emax);
    t += &format!("{} I{} emin 1 emax {}{primes};\n", head("hk"), s.ideals.len() - 1, s.emax);
    t
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn parse_render_parse_is_identity(s in shape()) {
        let text = source(&s);
        let first = parse_script(&text);
        // integer rings keep coefficients unreduced, so deep powers can overflow
        prop_assume!(!matches!(&first, Err(e) if e.to_string().contains("overflow")));
        let first = first.map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        let rendered = render_script(&first);
        let second = parse_script(&rendered).map_err(|e| TestCaseError::fail(format!("{e}\n{rendered}")))?;
        prop_assert_eq!(&first.decls, &second.decls);
        // rendering is already canonical
        prop_assert_eq!(render_script(&second), rendered);
        prop_assert_eq!(first.decls.iter().filter(|d| matches!(d, Decl::Task(_))).count(), 3);
    }

    #[test]
    fn parser_never_panics(bytes in proptest::collection::vec(any::<u8>(), 0..200)) {
        let text = String::from_utf8_lossy(&bytes);
        let _ = parse_script(&text);
    }

    #[test]
    fn truncated_scripts_report_a_position_inside_the_text(s in shape(), cut in 0.0f64..1.0) {
        let text = source(&s);
        let n = ((text.len() as f64) * cut) as usize;
        let prefix = &text[..n];
        if let Err(e) = parse_script(prefix) {
            let lines = prefix.lines().count().max(1);
            prop_assert!(e.pos().line >= 1 && e.pos().line <= lines + 1, "{e} for {prefix:?}");
        }
    }
}
