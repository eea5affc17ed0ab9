use sgpvar_core::rewrite::{ensure_x_after_y, regularity_certificate, Rule};
use sgpvar_core::words::{enumerate_words, holds_in_ac2, is_connected};

#[test]
fn interchange_on_all_small_connected_words() {
    let mut checked = 0;
    let mut used_eq3 = 0;
    for w in enumerate_words(4, 8).filter(is_connected) {
        let alphabet: Vec<_> = w.alphabet().into_iter().collect();
        for &x in &alphabet {
            for &y in &alphabet {
                if x == y {
                    continue;
                }
                let t = ensure_x_after_y(&w, x, y).unwrap_or_else(|e| panic!("{w} {x} {y}: {e}"));
                assert!(t.is_valid(), "{w} {x} {y}");
                assert!(t.end.has_after(x, y), "{w} {x} {y}");
                assert!(holds_in_ac2(&w, &t.end), "{w} {x} {y}");
                assert!(t.steps.len() <= 10 * w.len() * w.len());
                used_eq3 += t.steps.iter().any(|s| s.rule.rule == Rule::Eq3) as usize;
                checked += 1;
            }
        }
    }
    assert!(checked > 0 && used_eq3 > 0);
}

#[test]
fn regularity_on_four_variable_words() {
    for w in enumerate_words(4, 7).filter(is_connected) {
        let (m, t) = regularity_certificate(&w).unwrap_or_else(|e| panic!("{w}: {e}"));
        assert!(t.is_valid(), "{w}");
        assert_eq!(t.end, w.concat(&m).concat(&w));
    }
}

#[test]
fn nested_interchange() {
    // Every left-side variable in the middle precedes every right-side one,
    // so the pair (z, t) is interchanged first.
    use sgpvar_core::words::{var, w};
    let word = w("zxuztuyt");
    let t = ensure_x_after_y(&word, var('x'), var('y')).unwrap();
    assert!(t.is_valid());
    assert!(t.end.has_after(var('x'), var('y')));
    assert!(t.steps.len() >= 4);
}

fn instantiate(
    pattern: &sgpvar_core::words::Word,
    images: &[(char, sgpvar_core::words::Word)],
) -> Vec<sgpvar_core::words::Var> {
    let mut out = Vec::new();
    for &v in pattern.letters() {
        let (_, image) = images.iter().find(|(c, _)| sgpvar_core::words::var(*c) == v).unwrap();
        out.extend_from_slice(image.letters());
    }
    out
}

// Each rule instance, wrapped in a context, rewrites exactly to the other
// side, is undone by its inverse and is an identity of AC2.
#[test]
fn rule_instances_are_sound() {
    use sgpvar_core::build_named;
    use sgpvar_core::rewrite::{apply_step, Direction, RewriteStep};
    use sgpvar_core::words::{check_identity, Identity, Word};

    let ac2 = build_named("AC2").unwrap();
    let images: Vec<Word> = ["x", "y", "z", "xx", "xy", "xz", "yx", "yy", "yz", "zx", "zy", "zz"]
        .iter()
        .map(|s| sgpvar_core::words::w(s))
        .collect();
    let contexts: Vec<Vec<_>> =
        ["", "x", "zy"].iter().map(|s| s.chars().map(sgpvar_core::words::var).collect()).collect();
    let mut checked = 0;
    for rule in [Rule::Eq1, Rule::Eq2, Rule::Eq3] {
        let id = rule.identity();
        let vars = rule.variables();
        let mut tuples: Vec<Vec<Word>> = vec![vec![]];
        for _ in vars {
            tuples = tuples
                .into_iter()
                .flat_map(|t| images.iter().map(move |i| [t.clone(), vec![i.clone()]].concat()))
                .collect();
        }
        for tuple in &tuples {
            let named: Vec<(char, Word)> = vars.iter().copied().zip(tuple.iter().cloned()).collect();
            let (l, r) = (instantiate(&id.lhs, &named), instantiate(&id.rhs, &named));
            for pre in &contexts {
                for post in &contexts {
                    let source = Word::new([pre.clone(), l.clone(), post.clone()].concat()).unwrap();
                    let target = Word::new([pre.clone(), r.clone(), post.clone()].concat()).unwrap();
                    let step = RewriteStep::new(rule, Direction::Ltr, pre.len(), tuple);
                    assert_eq!(apply_step(&source, &step).unwrap(), target, "{step}");
                    assert_eq!(apply_step(&target, &step.inverse()).unwrap(), source, "{step}");
                    assert!(holds_in_ac2(&source, &target));
                    checked += 1;
                }
            }
            if tuple.iter().all(|w| w.len() == 1) || checked % 97 == 0 {
                let inst = Identity::new(Word::new(l.clone()).unwrap(), Word::new(r.clone()).unwrap());
                assert_eq!(check_identity(&ac2, &inst), None, "{inst}");
            }
        }
    }
    assert!(checked > 10_000);
}

#[test]
fn misplaced_steps_are_rejected() {
    use sgpvar_core::rewrite::{apply_step, Direction, RewriteError, RewriteStep};
    use sgpvar_core::words::w;
    let step = RewriteStep::new(Rule::Eq2, Direction::Ltr, 1, &[w("x"), w("y")]);
    assert!(matches!(
        apply_step(&w("xyx"), &step),
        Err(RewriteError::PatternMismatch { .. } | RewriteError::PositionOutOfRange { .. })
    ));
    let step = RewriteStep::new(Rule::Eq1, Direction::Ltr, 0, &[w("x")]);
    assert!(apply_step(&w("xy"), &step).is_err());
    assert_eq!(apply_step(&w("xxy"), &step).unwrap(), w("xxxxy"));
}
