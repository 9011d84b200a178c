mod common;

use alliance_core::reduction::{
    build_gadget, map_certificate, verify_gadget_equivalence, GadgetKind, Provenance, ReductionOptions,
};
use alliance_core::solve::SolveOptions;
use alliance_core::{generate, Error, Family, VertexSet};
use common::Brute;

fn verify(kind: GadgetKind, f: Family, r: i64) -> (i64, Option<usize>, usize) {
    let g = generate(&f).unwrap();
    let art = build_gadget(&g, kind, r, &ReductionOptions::default()).unwrap();
    let v = verify_gadget_equivalence(&art, &SolveOptions::default()).unwrap();
    (v.predicted, v.target_optimum, art.gprime.n())
}

#[test]
fn correspondences_that_hold() {
    assert_eq!(verify(GadgetKind::Downshift, Family::Path(2), 1), (2, Some(2), 9));
    assert_eq!(verify(GadgetKind::Downshift, Family::Cycle(4), 2), (4, Some(4), 16));
    assert_eq!(verify(GadgetKind::GoaLow, Family::Cycle(4), 1), (10, Some(10), 20));
    assert_eq!(verify(GadgetKind::GoaLow, Family::Cycle(4), 0), (6, Some(6), 12));
    assert_eq!(verify(GadgetKind::GoaLow, Family::Complete(4), -1), (5, Some(5), 12));
    assert_eq!(verify(GadgetKind::GoaHigh, Family::Complete(3), 2), (10, Some(10), 21));
}

#[test]
fn downshift_on_k4_needs_seven() {
    let (predicted, found, order) = verify(GadgetKind::Downshift, Family::Complete(4), 3);
    assert_eq!((predicted, found, order), (6, Some(7), 15));
    let g = generate(&Family::Complete(4)).unwrap();
    let art = build_gadget(&g, GadgetKind::Downshift, 3, &ReductionOptions::default()).unwrap();
    assert_eq!(Brute::new(&art.gprime).oa(2), 7);
}

#[test]
fn goa_high_on_p2_needs_only_four() {
    let g = generate(&Family::Path(2)).unwrap();
    let art = build_gadget(&g, GadgetKind::GoaHigh, 2, &ReductionOptions::default()).unwrap();
    let v = verify_gadget_equivalence(&art, &SolveOptions::default()).unwrap();
    assert_eq!((v.predicted, v.target_optimum), (5, Some(4)));
    assert_eq!(Brute::new(&art.gprime).goa(2), 4);
    // both originals and both B-vertices
    let w = v.target_witness.unwrap();
    let tags: Vec<String> = w.iter().map(|x| art.labels[x].to_string()).collect();
    assert_eq!(tags, ["original(0)", "original(1)", "bvertex(0,{1,2})", "bvertex(1,{1,2})"]);
}

#[test]
fn gadget_label_counts() {
    let g = generate(&Family::Complete(3)).unwrap();
    let art = build_gadget(&g, GadgetKind::GoaHigh, 2, &ReductionOptions::default()).unwrap();
    let a = art.labels.iter().filter(|t| matches!(t, Provenance::AVertex { .. })).count();
    assert_eq!(a as i64, art.size_map.offset);
    let g = generate(&Family::Cycle(4)).unwrap();
    let art = build_gadget(&g, GadgetKind::Downshift, 2, &ReductionOptions::default()).unwrap();
    assert_eq!(art.labels.iter().filter(|t| matches!(t, Provenance::Clique(_))).count(), 4);
}

#[test]
fn downshift_images_fail_for_every_source_solution() {
    for (f, r) in [(Family::Complete(4), 3), (Family::Path(2), 1), (Family::Cycle(4), 2)] {
        let g = generate(&f).unwrap();
        let art = build_gadget(&g, GadgetKind::Downshift, r, &ReductionOptions::default()).unwrap();
        let brute = Brute::new(&g);
        for mask in 1u64..(1 << g.n()) {
            if !brute.is_oa(mask as u32, r) {
                continue;
            }
            let s = VertexSet::from_mask(g.n(), mask);
            assert!(matches!(map_certificate(&art, &s), Err(Error::Uncertified(_))), "{f} {s}");
        }
    }
}
