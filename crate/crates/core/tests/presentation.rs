use redalg::coeff::Var;
use redalg::drsl2::{self, T, Z_MINUS, Z_PLUS};
use redalg::expr::parse;
use redalg::ncalg::{NCElement, Word};
use redalg::rewrite::{Presentation, RewriteRule};
use redalg::weylmod::{ModuleVector, VModule};
use redalg::Error;

#[test]
fn text_round_trip() {
    let dr = drsl2::build();
    let text = dr.presentation().to_text();
    let back = Presentation::from_text(&text).unwrap();
    assert_eq!(back.to_text(), text);
    let rules: Vec<_> = back.rules().cloned().collect();
    let original: Vec<_> = dr.presentation().rules().cloned().collect();
    assert_eq!(rules, original);
    assert!(text.starts_with("gen z- -2\ngen t 0\ngen z+ 2\n"));
}

#[test]
fn cubic_overlap_by_hand() {
    // Both resolutions of z+ t z-, written out with the left-form rules.
    let dr = drsl2::build();
    let p = dr.presentation();
    let al = dr.alphabet();
    let zp_t = p.concat(
        &p.rule(Z_PLUS, T).unwrap().rhs,
        &NCElement::generator(Z_MINUS),
    );
    let t_zm = p.concat(
        &NCElement::generator(Z_PLUS),
        &p.rule(T, Z_MINUS).unwrap().rhs,
    );
    let a = dr.normal_form(&zp_t).unwrap();
    let b = dr.normal_form(&t_zm).unwrap();
    assert_eq!(a, b);
    // z+ (t z-) gives c(h-2) A(h) b(h+2) with b = (h+2)/h, c = (h+4)/(h+2),
    // A = h(h+3)/((h+1)(h+2)) the left-form coefficients
    let lead = a.coeff(&al.word("z- t z+").unwrap()).unwrap();
    let expected = parse("(h+4)*(h+3)/((h+1)*(h+2))", al)
        .unwrap()
        .as_scalar()
        .unwrap();
    assert_eq!(*lead, expected);
}

#[test]
fn weyl_algebra_pbw() {
    let p = Presentation::from_text("gen x 0\ngen d 0\nd x -> x * d + 1\n").unwrap();
    let t = p.transition(3, 1000).unwrap();
    assert_eq!(t.words.len(), 8);
    assert_eq!(t.basis.len(), 10);
    assert!(t.in_span() && t.basis_rows_are_identity());
    // d^2 x = x d^2 + 2 d
    let e = parse("d * d * x", p.alphabet()).unwrap();
    let nf = p.normal_form(&e, 1000).unwrap();
    assert_eq!(nf, parse("x * d * d + 2 * d", p.alphabet()).unwrap());
}

#[test]
fn incomplete_presentation_text_is_rejected() {
    let err = Presentation::from_text("gen a -1\ngen b 0\ngen c 1\nc b -> b * c\n").unwrap_err();
    assert!(matches!(err, Error::IncompletePresentation(..)));
}

#[test]
fn rule_with_wrong_weight_is_rejected() {
    let err = Presentation::from_text("gen a -1\ngen b 1\nb a -> a * a\n").unwrap_err();
    assert!(matches!(err, Error::InvalidRule { .. }));
}

#[test]
fn mutated_rule_is_caught_by_module() {
    let dr = drsl2::build();
    let module = VModule::euler(&dr);
    let lhs = NCElement::word(Word(vec![Z_PLUS, T]));
    let good = dr.parse("t * z+ * (h+4)/(h+2)").unwrap();
    let bad = dr.parse("t * z+ * (h+4)/(h+1)").unwrap();
    assert!(module.oracle_check_relation(&lhs, &good).unwrap());
    assert!(!module.oracle_check_relation(&lhs, &bad).unwrap());

    let rule = RewriteRule::new((Z_PLUS, T), bad);
    let mutated = dr.presentation().with_rule(rule).unwrap();
    assert!(!mutated.check_confluence().unwrap().overall);
}

#[test]
fn module_action_by_hand() {
    // z+ z- v_j = gamma_{j-1} v_j
    let dr = drsl2::build();
    let module = VModule::euler(&dr);
    let v = module.act_on_basis(&dr.parse("z+ * z-").unwrap()).unwrap();
    let gamma = &module.coeffs().gamma;
    let shifted = gamma.translate(Var::J, &redalg::coeff::rat(-1, 1));
    assert_eq!(v.as_multiple_of(0), Some(shifted));

    // h acts after the word: h z- v_j = alpha_{j-1} v_{j-1}
    let w = module.act_on_basis(&dr.parse("h * z-").unwrap()).unwrap();
    let mut expected = ModuleVector::zero();
    let alpha = parse("2*j + 2*M - 2", dr.alphabet())
        .unwrap()
        .as_scalar()
        .unwrap();
    expected.add_term(-1, alpha);
    assert_eq!(w, expected);
}
