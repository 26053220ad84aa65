use std::sync::OnceLock;

use proptest::prelude::*;

use ladder_reduce::diagnostics::{
    build_catalog, random_conjugate, random_module, rng_from_seed, verify_transcript, IndecomposableCatalog, PlantSpec,
};
use ladder_reduce::diagram::{DimVector, PersistenceDiagram};
use ladder_reduce::field::PrimeField;
use ladder_reduce::intervals::{HomStructure, Orientation};
use ladder_reduce::reduction::{decompose, realize_summand, Transcript};

fn orientation() -> impl Strategy<Value = Orientation> {
    (1usize..=4).prop_flat_map(|n| proptest::collection::vec(any::<bool>(), n - 1)).prop_map(|bits| {
        let s: String = bits.iter().map(|&b| if b { 'f' } else { 'b' }).collect();
        Orientation::parse(&s).unwrap()
    })
}

fn fb_catalog() -> &'static IndecomposableCatalog<PrimeField> {
    static CAT: OnceLock<IndecomposableCatalog<PrimeField>> = OnceLock::new();
    CAT.get_or_init(|| build_catalog(&PrimeField::default(), &Orientation::parse("fb").unwrap()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn reduction_is_sound(tau in orientation(), seed in any::<u64>()) {
        let f = PrimeField::default();
        let m = random_module(&f, &tau, 2, &mut rng_from_seed(seed)).unwrap();
        let d = decompose(&m).unwrap();
        let rep = verify_transcript(&m, &d.transcript, d.normal_form.coeff()).unwrap();
        prop_assert!(rep.ok(), "{:?}", rep.failures);
        prop_assert_eq!(d.diagram.total_dim_vector(), m.dim_vector());
    }

    #[test]
    fn summands_realize_to_their_dim_vectors(tau in orientation(), seed in any::<u64>()) {
        let f = PrimeField::default();
        let hs = HomStructure::new(&tau);
        let m = random_module(&f, &tau, 2, &mut rng_from_seed(seed)).unwrap();
        let d = decompose(&m).unwrap();
        let mut total = DimVector::new(vec![0; tau.n()], vec![0; tau.n()]);
        for s in &d.summands {
            let r = realize_summand(&f, &hs, s).unwrap();
            prop_assert_eq!(r.dim_vector(), s.pattern.dim_vector(tau.n()));
            prop_assert_eq!(decompose(&r).unwrap().summands.len(), 1);
            total = total.add(&r.dim_vector().scaled(s.multiplicity));
        }
        prop_assert_eq!(total, m.dim_vector());
    }

    #[test]
    fn diagram_is_a_base_change_invariant(tau in orientation(), seed in any::<u64>()) {
        let f = PrimeField::default();
        let mut rng = rng_from_seed(seed);
        let m = random_module(&f, &tau, 2, &mut rng).unwrap();
        let c = random_conjugate(&m, &mut rng).unwrap();
        prop_assert_eq!(decompose(&m).unwrap().diagram, decompose(&c).unwrap().diagram);
    }

    #[test]
    fn planted_sums_are_recovered(mults in proptest::collection::vec(0usize..3, 30), seed in any::<u64>()) {
        let cat = fb_catalog();
        let summands: Vec<(DimVector, usize)> = cat.entries.iter().zip(&mults).map(|(e, &k)| (e.dim_vector.clone(), k)).collect();
        let (m, want) = ladder_reduce::diagnostics::plant(cat, &PlantSpec { summands, seed }).unwrap();
        prop_assert_eq!(decompose(&m).unwrap().diagram, want);
    }

    #[test]
    fn transcript_json_round_trip(tau in orientation(), seed in any::<u64>()) {
        let f = PrimeField::default();
        let m = random_module(&f, &tau, 2, &mut rng_from_seed(seed)).unwrap();
        let t = decompose(&m).unwrap().transcript;
        let v = t.to_json();
        let back = Transcript::from_json(&f, &v).unwrap();
        prop_assert_eq!(back.to_json(), v);
        prop_assert!(back.verify().ok());
    }

    #[test]
    fn diagram_json_round_trip(tau in orientation(), seed in any::<u64>()) {
        let f = PrimeField::default();
        let m = random_module(&f, &tau, 2, &mut rng_from_seed(seed)).unwrap();
        let pd = decompose(&m).unwrap().diagram;
        prop_assert_eq!(PersistenceDiagram::from_json(&pd.to_json()).unwrap(), pd);
    }

    #[test]
    fn dim_vector_text_round_trip(top in proptest::collection::vec(0usize..20, 1..5), seed in any::<u64>()) {
        let mut rng = rng_from_seed(seed);
        let bottom: Vec<usize> = top.iter().map(|_| rand::Rng::gen_range(&mut rng, 0..20)).collect();
        let d = DimVector::new(top, bottom);
        prop_assert_eq!(d.to_string().parse::<DimVector>().unwrap(), d);
    }
}
