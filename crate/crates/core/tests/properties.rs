use bipolar_core::bases::{resolve_guaranteed, resolve_necessity, GuaranteedBase, NecessityBase, WeightedFormula};
use bipolar_core::conditioning::{cond_delta, cond_pi};
use bipolar_core::{
    AttributeDomain, BipolarNetwork, BipolarValue, CauseModel, Degree, DiagnosisModel, Event, Formula, Graded,
    NodeSpec, Observation, PossibilityDistribution, VariableTable,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn grade(rng: &mut ChaCha8Rng, steps: u64) -> Degree {
    Degree::ratio(rng.gen_range(0..=steps), steps).unwrap()
}

fn bits(ctx: usize, len: usize) -> Vec<bool> {
    (0..len).rev().map(|i| ctx >> i & 1 == 1).collect()
}

/// Random valid local pair for one context: one value fully possible, one
/// with zero guaranteed possibility, `Δ <= Π` on both.
fn local_pair(rng: &mut ChaCha8Rng, zero_delta: bool) -> (BipolarValue, BipolarValue) {
    let other_pi = grade(rng, 10);
    let (pi_pos, pi_neg) = if rng.gen_bool(0.5) { (Degree::one(), other_pi) } else { (other_pi, Degree::one()) };
    let mut below = |pi: Degree| if zero_delta { Degree::zero() } else { grade(rng, 10).min(pi) };
    let (mut d_pos, mut d_neg) = (below(pi_pos), below(pi_neg));
    if rng.gen_bool(0.5) {
        d_pos = Degree::zero();
    } else {
        d_neg = Degree::zero();
    }
    (BipolarValue::new(d_pos, pi_pos), BipolarValue::new(d_neg, pi_neg))
}

fn random_network(rng: &mut ChaCha8Rng, zero_delta: bool) -> BipolarNetwork {
    let n = rng.gen_range(1..=5);
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let specs = (0..n)
        .map(|i| {
            let parents: Vec<&str> = names[..i].iter().filter(|_| rng.gen_bool(0.4)).map(String::as_str).collect();
            let mut spec = NodeSpec::new(names[i].clone(), &parents);
            for ctx in 0..1usize << parents.len() {
                let context = bits(ctx, parents.len());
                let (pos, neg) = local_pair(rng, zero_delta);
                spec = spec.row(true, &context, pos).row(false, &context, neg);
            }
            spec
        })
        .collect();
    BipolarNetwork::new(specs).unwrap()
}

#[test]
fn revised_lower_joint_stays_below_upper() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let net = random_network(&mut rng, false);
        assert!(net.validate().unwrap().is_empty());
        let joint = net.joint().unwrap();
        assert!(joint.lower_revised.is_below(&joint.upper));
        assert_eq!(joint.lower_revised, joint.upper.pointwise_min(&joint.lower_raw));
        let exceeding: Vec<usize> =
            (0..joint.upper.size()).filter(|&u| joint.lower_raw.degree(u) > joint.upper.degree(u)).collect();
        assert_eq!(joint.violations, exceeding);
        if joint.violations.is_empty() {
            assert_eq!(joint.lower_revised, joint.lower_raw);
            assert!(net.weakened_bounds(&joint).is_empty());
        }
    }
}

#[test]
fn zero_guaranteed_tables_give_a_zero_lower_joint() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..100 {
        let net = random_network(&mut rng, true);
        let joint = net.joint().unwrap();
        assert!(joint.lower_raw.degrees().iter().all(|d| d.is_zero()));
        assert!(joint.violations.is_empty());
        // the upper joint is the min-based chain rule
        for u in 0..joint.upper.size() {
            let interp = net.vars().interpretation(u);
            let expected = (0..net.vars().len())
                .map(|i| {
                    let ctx: Vec<bool> = net.parents(i).iter().map(|&p| interp.value(p)).collect();
                    net.local(i, interp.value(i), &ctx).unwrap().pi
                })
                .min()
                .unwrap();
            assert_eq!(joint.upper.degree(u), expected);
        }
    }
}

fn square(d: Degree) -> Degree {
    d.map(|x| x * x).unwrap()
}

#[test]
fn diagnosis_ranking_survives_an_order_automorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let attrs = [
        AttributeDomain::new("a", vec!["a0".into(), "a1".into(), "a2".into()]).unwrap(),
        AttributeDomain::new("b", vec!["b0".into(), "b1".into()]).unwrap(),
    ];
    for _ in 0..100 {
        let mut plain: DiagnosisModel = DiagnosisModel::new(attrs.to_vec()).unwrap();
        let mut squared: DiagnosisModel = DiagnosisModel::new(attrs.to_vec()).unwrap();
        for c in 0..4 {
            let (mut cause, mut cause_sq) = (CauseModel::new(format!("c{c}")), CauseModel::new(format!("c{c}")));
            for attr in &attrs {
                let upper = attr.constant(Degree::zero()).map(|_| grade(&mut rng, 10));
                let lower = upper.map(|u| if rng.gen_bool(0.5) { u } else { Degree::zero() });
                cause_sq = cause_sq.with_profile(&attr.name, lower.map(square), upper.map(square)).unwrap();
                cause = cause.with_profile(&attr.name, lower, upper).unwrap();
            }
            plain.add_cause(cause).unwrap();
            squared.add_cause(cause_sq).unwrap();
        }
        let (mut obs, mut obs_sq) = (Observation::new(), Observation::new());
        for attr in &attrs {
            let set = attr.constant(Degree::zero()).map(|_| grade(&mut rng, 10));
            obs_sq.observe(&attr.name, set.map(square)).unwrap();
            obs.observe(&attr.name, set).unwrap();
        }
        let ranked = plain.rank_causes(&obs).unwrap();
        let ranked_sq = squared.rank_causes(&obs_sq).unwrap();
        for (s, t) in ranked.iter().zip(&ranked_sq) {
            assert_eq!(s.cause, t.cause);
            assert_eq!((square(s.cons), square(s.rel)), (t.cons, t.rel));
        }
    }
}

/// Random literals over every variable but `skip`.
fn literals(rng: &mut ChaCha8Rng, n: usize, skip: usize) -> Vec<Formula> {
    let mut out = Vec::new();
    for v in (0..n).filter(|&v| v != skip) {
        if rng.gen_bool(0.4) {
            out.push(Formula::literal(v, rng.gen_bool(0.5)));
        }
    }
    out
}

#[test]
fn resolution_is_sound() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..300 {
        let n = rng.gen_range(2..=5);
        let vars = VariableTable::new((0..n).map(|i| format!("v{i}"))).unwrap();
        let pivot = rng.gen_range(0..n);
        let (wa, wb): (Degree, Degree) = (Degree::ratio(rng.gen_range(1..=10), 10).unwrap(), Degree::ratio(rng.gen_range(1..=10), 10).unwrap());

        let mut left = literals(&mut rng, n, pivot);
        let mut right = literals(&mut rng, n, pivot);
        left.insert(0, Formula::literal(pivot, true));
        right.push(Formula::literal(pivot, false));
        let (a, b) = (WeightedFormula::new(Formula::disjunction(left), wa), WeightedFormula::new(Formula::disjunction(right), wb));
        let resolvent = resolve_necessity(&a, &b, pivot).unwrap();
        assert_eq!(resolvent.weight, wa.min(wb));
        let base = NecessityBase::new(vars.clone()).with(a.formula, wa).unwrap().with(b.formula, wb).unwrap();
        assert!(base.compile_upper().necessity(&resolvent.formula.models(&vars)) >= resolvent.weight);

        let mut left = literals(&mut rng, n, pivot);
        let mut right = literals(&mut rng, n, pivot);
        left.insert(0, Formula::literal(pivot, true));
        right.push(Formula::literal(pivot, false));
        let (a, b) = (WeightedFormula::new(Formula::conjunction(left), wa), WeightedFormula::new(Formula::conjunction(right), wb));
        let resolvent = resolve_guaranteed(&a, &b, pivot).unwrap();
        let base = GuaranteedBase::new(vars.clone()).with(a.formula, wa).unwrap().with(b.formula, wb).unwrap();
        assert!(base.compile_lower().guaranteed(&resolvent.formula.models(&vars)) >= resolvent.weight);
    }
}

#[test]
fn distributions_round_trip_through_bases() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..200 {
        let n = rng.gen_range(1..=4);
        let vars = VariableTable::new((0..n).map(|i| format!("v{i}"))).unwrap();
        let d = PossibilityDistribution::from_fn(vars.world_count(), |_| grade(&mut rng, 8));
        assert_eq!(NecessityBase::from_fuzzy_upper(&d, &vars).compile_upper(), d);
        assert_eq!(GuaranteedBase::from_fuzzy_lower(&d, &vars).compile_lower(), d);
    }
}

#[test]
fn unrelatedness_matches_conditioning() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..100 {
        let size = 1 << rng.gen_range(1..=3);
        let d = PossibilityDistribution::from_fn(size, |_| grade(&mut rng, 5));
        for am in 1..1u64 << size {
            let a = Event::from_mask(size, am);
            for bm in 0..1u64 << size {
                let b = Event::from_mask(size, bm);
                assert_eq!(d.is_unrelated_pi(&a, &b), cond_pi(&d, &a, &b).unwrap() >= d.possibility(&b));
                assert_eq!(d.is_unrelated_delta(&a, &b), cond_delta(&d, &a, &b).unwrap() <= d.guaranteed(&b));
            }
        }
    }
}
