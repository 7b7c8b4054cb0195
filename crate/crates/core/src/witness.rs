//! Independent replay of witnesses.
//!
//! Word-based witnesses are replayed through the generators. Claims of
//! impossibility ("no element does X") can only be confirmed against a full
//! element table, so they are checked when one is supplied.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{transformation_graph, undirected_components};
use crate::identity::{counterexample_holds, QuasiIdentity};
use crate::oracle::{inverses_of, nilpotency_degree, ElementTable};
use crate::report::{GroupViolation, Property, PropertyReport, Verdict, Witness, WitnessElement};
use crate::transformation::{GeneratorSet, Transformation};

type Check = core::result::Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn replay(gens: &GeneratorSet, w: &WitnessElement) -> Check {
    ensure(!w.word.is_empty() && w.word.iter().all(|&g| g < gens.len()), || format!("bad word {:?}", w.word))?;
    ensure(gens.evaluate(&w.word) == w.element, || format!("word {:?} does not evaluate to {}", w.word, w.element))
}

fn commute(a: &Transformation, b: &Transformation) -> bool {
    a.then(b) == b.then(a)
}

/// Right ideal `sS¹` as a membership mask over the table.
fn right_ideal(table: &ElementTable, s: usize) -> Vec<bool> {
    let mut seen = vec![false; table.len()];
    seen[s] = true;
    let mut stack = vec![s];
    while let Some(x) = stack.pop() {
        for j in 0..table.gens().len() {
            let y = table.right_mul(x, j);
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen
}

fn index(table: &ElementTable, w: &WitnessElement) -> core::result::Result<usize, String> {
    table.index_of(&w.element).ok_or_else(|| format!("{} is not in S", w.element))
}

fn is_left_identity(gens: &GeneratorSet, e: &Transformation) -> bool {
    gens.generators().iter().all(|a| e.then(a) == *a)
}

fn is_right_identity(gens: &GeneratorSet, e: &Transformation) -> bool {
    gens.generators().iter().all(|a| a.then(e) == *a)
}

fn verify_group_violation(gens: &GeneratorSet, v: &GroupViolation) -> Check {
    let a = gens.generators();
    match *v {
        GroupViolation::DifferentImages { first, second, point } => {
            ensure(a[first].image().contains(&point) && !a[second].image().contains(&point), || {
                String::from("image difference does not replay")
            })
        }
        GroupViolation::NotPermutationOnImage { generator, p, q } => {
            let image = a[generator].image();
            ensure(
                p != q && image.contains(&p) && image.contains(&q) && a[generator].apply(p) == a[generator].apply(q),
                || String::from("image collapse does not replay"),
            )
        }
        GroupViolation::DifferentKernels { first, second, p, q } => {
            ensure(a[first].apply(p) == a[first].apply(q) && a[second].apply(p) != a[second].apply(q), || {
                String::from("kernel difference does not replay")
            })
        }
    }
}

fn verify_element(
    gens: &GeneratorSet,
    property: Option<Property>,
    verdict: Verdict,
    reason: Option<&str>,
    e: &WitnessElement,
    table: Option<&ElementTable>,
) -> Check {
    replay(gens, e)?;
    let s = &e.element;
    let holds = verdict == Verdict::True;
    match property {
        Some(Property::LeftZero) if holds => {
            ensure(gens.generators().iter().all(|a| s.then(a) == *s), || format!("{s} is not a left zero"))
        }
        Some(Property::RightZero) if holds => {
            ensure(gens.generators().iter().all(|a| a.then(s) == *s), || format!("{s} is not a right zero"))
        }
        Some(Property::Zero) if holds => {
            ensure(gens.generators().iter().all(|a| s.then(a) == *s && a.then(s) == *s), || {
                format!("{s} is not a zero")
            })
        }
        Some(Property::Group) if holds => {
            ensure(s.is_idempotent() && is_left_identity(gens, s) && is_right_identity(gens, s), || {
                format!("{s} is not the identity")
            })
        }
        Some(Property::Group) => {
            // an element whose idempotent power is not the identity of S
            let table = match table {
                Some(t) => t,
                None => return Ok(()),
            };
            let idem = table.idempotents();
            ensure(idem.len() != 1 || s.omega_power() != *table.element(idem[0]), || {
                String::from("element has an inverse")
            })
        }
        Some(Property::Band) | Some(Property::Semilattice) => {
            ensure(!s.is_idempotent(), || format!("{s} is idempotent"))
        }
        Some(Property::CompletelyRegular) | Some(Property::Clifford) => {
            ensure(s.omega_power().then(s) != *s, || format!("{s} lies in a subgroup"))
        }
        Some(Property::Aperiodic) => {
            let o = s.omega_power();
            ensure(o.then(s) != o, || format!("{s} is aperiodic"))
        }
        Some(Property::Regular) | Some(Property::Inverse) if reason != Some("no inverse") => match table {
            Some(t) => ensure(t.elements().iter().all(|x| s.then(x).then(s) != *s), || format!("{s} is regular")),
            None => Ok(()),
        },
        Some(Property::Inverse) => match table {
            Some(t) => ensure(inverses_of(t, s, 1).is_empty(), || format!("{s} has an inverse")),
            None => Ok(()),
        },
        _ => Ok(()),
    }
}

fn verify_pair(
    gens: &GeneratorSet,
    property: Option<Property>,
    reason: Option<&str>,
    a: &WitnessElement,
    b: &WitnessElement,
    table: Option<&ElementTable>,
) -> Check {
    replay(gens, a)?;
    replay(gens, b)?;
    let (x, y) = (&a.element, &b.element);
    match property {
        Some(Property::Commutative) | Some(Property::Semilattice) => {
            ensure(!commute(x, y), || String::from("pair commutes"))
        }
        Some(Property::IdempotentsCommute) | Some(Property::Clifford) => {
            ensure(x.is_idempotent() && y.is_idempotent() && !commute(x, y), || {
                String::from("idempotent pair commutes")
            })
        }
        Some(Property::IdempotentsCentral) => {
            ensure(x.is_idempotent() && !commute(x, y), || String::from("idempotent is central"))
        }
        Some(Property::Orthodox) => {
            ensure(x.is_idempotent() && y.is_idempotent() && !x.then(y).is_idempotent(), || {
                String::from("product of idempotents is idempotent")
            })
        }
        Some(Property::Group) if reason == Some("more than one idempotent") => {
            ensure(x != y && x.is_idempotent() && y.is_idempotent(), || String::from("not two idempotents"))
        }
        Some(Property::Group) => ensure(x.is_idempotent() && (x.then(y) != *y || y.then(x) != *y), || {
            String::from("idempotent acts as identity")
        }),
        Some(Property::RTrivial) => match table {
            Some(t) => {
                let (i, j) = (index(t, a)?, index(t, b)?);
                ensure(i != j && right_ideal(t, i)[j] && right_ideal(t, j)[i], || String::from("pair is not R-related"))
            }
            None => ensure(x != y, || String::from("pair is not distinct")),
        },
        Some(Property::Nilpotent) => match table {
            Some(t) => ensure(x != y && nilpotency_degree(t).is_none(), || String::from("semigroup is nilpotent")),
            None => Ok(()),
        },
        _ => Ok(()),
    }
}

fn verify_witness(
    gens: &GeneratorSet,
    property: Option<Property>,
    verdict: Verdict,
    reason: Option<&str>,
    witness: &Witness,
    table: Option<&ElementTable>,
) -> Check {
    let n = gens.degree() as u32;
    match witness {
        Witness::NonCommutingGenerators { i, j, point } => {
            let (a, b) = (gens.get(*i), gens.get(*j));
            ensure(b.apply(a.apply(*point)) != a.apply(b.apply(*point)), || String::from("generators commute at point"))
        }
        Witness::NonIdempotentGenerator { generator, point } => {
            let a = gens.get(*generator);
            ensure(a.apply(a.apply(*point)) != a.apply(*point), || String::from("generator idempotent at point"))
        }
        Witness::Group(v) => verify_group_violation(gens, v),
        Witness::UncollapsiblePair { p, q } => {
            let g = transformation_graph(gens, None).map_err(|e| format!("{e}"))?;
            ensure(p != q && undirected_components(&g).same_class(*p, *q), || {
                String::from("pair not in one component")
            })?;
            match table {
                Some(t) => {
                    ensure(t.elements().iter().all(|s| s.apply(*p) != s.apply(*q)), || String::from("pair collapses"))
                }
                None => Ok(()),
            }
        }
        Witness::StuckPoint { point } => match table {
            Some(t) => {
                let fixed = gens.fixed_points();
                ensure(t.elements().iter().all(|s| !fixed.contains(&s.apply(*point))), || {
                    String::from("point reaches Fix(S)")
                })
            }
            None => ensure(*point < n, || String::from("point out of range")),
        },
        Witness::Cycle { points, word } => {
            ensure(
                points.len() >= 2 && points.len() == word.len() + 1 && points[0] == *points.last().unwrap(),
                || String::from("not a closed walk"),
            )?;
            ensure(word.iter().all(|&g| g < gens.len()), || String::from("bad generator"))?;
            ensure(word.iter().enumerate().all(|(i, &g)| gens.get(g).apply(points[i]) == points[i + 1]), || {
                String::from("walk does not follow the word")
            })?;
            match property {
                Some(Property::RTrivial) => {
                    ensure(points.windows(2).any(|w| w[0] != w[1]), || String::from("cycle is a self-loop"))
                }
                Some(Property::Nilpotent) => {
                    let fixed = gens.fixed_points();
                    ensure(points.iter().all(|p| !fixed.contains(p)), || String::from("cycle touches Fix(S)"))
                }
                _ => Ok(()),
            }
        }
        Witness::ImageCollapse { p, q, u, v, word } => {
            ensure(!word.is_empty() && word.iter().all(|&g| g < gens.len()), || String::from("bad word"))?;
            let s = gens.evaluate(word);
            ensure(s.apply(*p) == *u && s.apply(*q) == *v && u != v && s.apply(*u) == s.apply(*v), || {
                String::from("image collapse does not replay")
            })
        }
        Witness::Identity(cx) => {
            ensure(counterexample_holds(gens, cx), || String::from("identity counterexample does not replay"))
        }
        Witness::Assignment { identity, values } => verify_assignment(gens, identity, values),
        Witness::Element(e) => verify_element(gens, property, verdict, reason, e, table),
        Witness::Pair(a, b) => verify_pair(gens, property, reason, a, b, table),
        Witness::Elements(list) => {
            for e in list {
                replay(gens, e)?;
            }
            match property {
                Some(Property::LeftIdentities) | Some(Property::RightIdentities) => {
                    let left = property == Some(Property::LeftIdentities);
                    let is_id =
                        |e: &Transformation| if left { is_left_identity(gens, e) } else { is_right_identity(gens, e) };
                    ensure(list.iter().all(|e| is_id(&e.element)), || {
                        String::from("listed element is not an identity")
                    })?;
                    ensure(verdict == Verdict::from_bool(!list.is_empty()), || {
                        String::from("verdict does not match list")
                    })?;
                    if let Some(t) = table {
                        let all = t.elements().iter().filter(|e| is_id(e)).count();
                        ensure(all == list.len(), || format!("{} identities listed, {all} exist", list.len()))?;
                    }
                    Ok(())
                }
                Some(Property::Inverse) if list.len() == 3 => {
                    let (s, t1, t2) = (&list[0].element, &list[1].element, &list[2].element);
                    let inv = |t: &Transformation| s.then(t).then(s) == *s && t.then(s).then(t) == *t;
                    ensure(t1 != t2 && inv(t1) && inv(t2), || String::from("not two inverses"))
                }
                _ => Ok(()),
            }
        }
        Witness::DegreeBound(d) => {
            ensure(*d >= 1 && *d <= gens.degree(), || format!("degree bound {d} outside 1..=n"))?;
            match table {
                Some(t) => match nilpotency_degree(t) {
                    Some(exact) => ensure(exact <= *d, || format!("exact degree {exact} exceeds bound {d}")),
                    None => Err(String::from("semigroup is not nilpotent")),
                },
                None => Ok(()),
            }
        }
        Witness::Degree(d) => match table {
            Some(t) => ensure(nilpotency_degree(t) == Some(*d), || format!("nilpotency degree is not {d}")),
            None => Ok(()),
        },
        Witness::Because { reason, inner } => verify_witness(gens, property, verdict, Some(reason), inner, table),
        Witness::Note(_) => Ok(()),
    }
}

fn verify_assignment(gens: &GeneratorSet, identity: &QuasiIdentity, values: &[WitnessElement]) -> Check {
    ensure(values.len() == identity.var_count(), || String::from("one value per variable"))?;
    for (i, v) in values.iter().enumerate() {
        replay(gens, v)?;
        if identity.is_idempotent_var(i) {
            ensure(v.element.is_idempotent(), || format!("x{} is not idempotent", i + 1))?;
        }
    }
    let eval = |side: &[usize]| {
        let mut it = side.iter().map(|&x| &values[x].element);
        let first = it.next().expect("nonempty side").clone();
        it.fold(first, |acc, s| acc.then(s))
    };
    ensure(eval(identity.lhs()) != eval(identity.rhs()), || String::from("assignment satisfies the identity"))
}

/// Checks that the report's witness (if any) exhibits what it claims. With
/// `table`, claims that no element has some property are confirmed too.
pub fn verify_report(gens: &GeneratorSet, report: &PropertyReport, table: Option<&ElementTable>) -> Check {
    let property = report.property.parse::<Property>().ok();
    match &report.witness {
        Some(w) => verify_witness(gens, property, report.verdict, None, w, table),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::DEFAULT_STATE_CAP as CAP;
    use crate::oracle::{definitional_check, enumerate};
    use crate::{fo_checks, nl_checks};

    fn gens(maps: &[&[u32]]) -> GeneratorSet {
        GeneratorSet::from_one_based(maps).unwrap()
    }

    #[test]
    fn structural_witnesses_replay() {
        for maps in [&[&[2u32, 3, 1][..]][..], &[&[1, 1, 2]], &[&[1, 1, 1], &[2, 2, 2]], &[&[2, 3, 1], &[2, 1, 3]]] {
            let g = gens(maps);
            let table = enumerate(&g, 1000).unwrap();
            let reports = [
                fo_checks::is_commutative(&g),
                fo_checks::is_group(&g),
                nl_checks::has_zero(&g, CAP).unwrap(),
                nl_checks::is_nilpotent(&g, CAP).unwrap(),
                nl_checks::is_r_trivial(&g).unwrap(),
                nl_checks::is_completely_regular(&g, CAP).unwrap(),
            ];
            for r in &reports {
                verify_report(&g, r, Some(&table)).unwrap_or_else(|e| panic!("{} on {maps:?}: {e}", r.property));
            }
            for p in Property::ALL {
                let r = definitional_check(&table, p);
                verify_report(&g, &r, Some(&table)).unwrap_or_else(|e| panic!("oracle {p} on {maps:?}: {e}"));
            }
        }
    }

    #[test]
    fn tampered_witnesses_are_rejected() {
        let g = gens(&[&[1, 1, 2]]);
        let mut r = nl_checks::is_completely_regular(&g, CAP).unwrap();
        if let Some(Witness::ImageCollapse { v, .. }) = &mut r.witness {
            *v = 2;
        }
        assert!(verify_report(&g, &r, None).is_err());

        let g = gens(&[&[2, 3, 1]]);
        let table = enumerate(&g, 100).unwrap();
        let fake =
            PropertyReport::structural(Property::RightZero, false, Some(Witness::UncollapsiblePair { p: 0, q: 1 }));
        assert!(verify_report(&g, &fake, Some(&table)).is_ok());
        let g2 = gens(&[&[1, 1, 1], &[2, 2, 2]]);
        let table2 = enumerate(&g2, 100).unwrap();
        assert!(verify_report(&g2, &fake, Some(&table2)).is_err());
    }
}
