//! Release acceptance suite: one test per shipping criterion, each at its
//! stated scale and tolerance. Every test prints a single `[PASS]` line on
//! success (visible with `--nocapture`); a failed assertion is the
//! corresponding `[FAIL]`.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use amt_core::chords::{chord_to_melody, make_chord, melody_to_chord};
use amt_core::harmony::{derive_epsilon, HarmonicGrid};
use amt_core::measure::{approx_eq, rat, rat_int, Measure, Rat};
use amt_core::melody::{congruent, transpose, Melody};
use amt_core::model::{check_axiom, ModelId, Verdict};
use amt_core::notes::{GridPitch, Note};
use amt_core::rhythm::{
    classify, is_regular, make_rhythm, regular_by_consecutive_gaps,
    regular_by_pairwise_differences, regular_by_start_offsets, sig_tempo, signature, Onset,
    RhythmClass, RhythmEvent, Signature,
};
use amt_core::scales::{
    disjoint_tetrachord_pairs, make_scale, scale_catalog, scale_from_entry, scale_join,
    scale_meet, semitone_step, tetrachords, CatalogEntry, Scale,
};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The semitone and whole-tone measures come out of the interval equation
/// system bit-exactly, and the derivation runs in well under a millisecond.
#[test]
fn criterion_01_semitone_derivation_is_exact_and_fast() {
    let (semitone, whole_tone, second_voice) = derive_epsilon();
    assert_eq!(semitone, Measure::pow2_frac(1, 12));
    assert!(matches!(&semitone, Measure::Pow2(q) if *q == rat(1, 12)));
    assert_eq!(semitone.semitone_exponent(), Some(rat_int(1)));
    assert_eq!(whole_tone, Measure::pow2_frac(1, 6));
    assert!(matches!(&whole_tone, Measure::Pow2(q) if *q == rat(1, 6)));
    assert_eq!(whole_tone.semitone_exponent(), Some(rat_int(2)));
    assert_eq!(second_voice, whole_tone);

    let mut best = Duration::from_secs(1);
    for _ in 0..32 {
        let start = Instant::now();
        let out = std::hint::black_box(derive_epsilon());
        best = best.min(start.elapsed());
        assert_eq!(out.0, semitone);
    }
    assert!(best < Duration::from_millis(1), "derivation took {best:?}");

    println!(
        "[PASS] criterion 1: semitone derivation returns 2^1/12 and 2^1/6 \
         bit-exactly in under a millisecond"
    );
}

/// Among all 21 placements of two half steps among five whole steps, the
/// maximally even patterns are exactly the 7 rotations of the major pattern.
#[test]
fn criterion_02_major_rotations_are_the_maximally_even_heptatonics() {
    let start = Instant::now();
    let mut even_patterns: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut arrangements = 0;
    for i in 0..7 {
        for j in (i + 1)..7 {
            arrangements += 1;
            let mut pattern = [2i64; 7];
            pattern[i] = 1;
            pattern[j] = 1;
            let steps = pattern
                .iter()
                .map(|&n| semitone_step(rat_int(n)))
                .collect();
            let scale =
                make_scale(Note::c(), steps, None, HarmonicGrid::Western).unwrap();
            if amt_core::scales::is_maximally_even_scale(&scale).unwrap() {
                even_patterns.insert(pattern.to_vec());
            }
        }
    }
    assert_eq!(arrangements, 21);

    let major = [2i64, 2, 1, 2, 2, 2, 1];
    let rotations: BTreeSet<Vec<i64>> = (0..7)
        .map(|k| {
            let mut rotated = major.to_vec();
            rotated.rotate_left(k);
            rotated
        })
        .collect();
    assert_eq!(rotations.len(), 7);
    assert_eq!(even_patterns, rotations);
    assert!(start.elapsed() < Duration::from_secs(1));

    println!(
        "[PASS] criterion 2: exactly the 7 rotations of the major pattern are \
         maximally even among all 21 arrangements"
    );
}

/// Named note identities hold exactly, and the twelve classes form a
/// commutative group under ⊕ with C as the unit: closure and commutativity
/// on all 144 pairs, associativity on all 1728 triples, inverses throughout.
#[test]
fn criterion_03_note_identities_and_group_laws() {
    let c_sharp: Note = "C♯".parse().unwrap();
    let d_flat: Note = "D♭".parse().unwrap();
    assert_eq!(c_sharp, d_flat);
    assert_eq!(Note::d().sharp().sharp(), Note::e());
    assert_eq!(Note::e().sharp(), Note::f());
    assert_eq!(Note::f(), Note::g().flat().flat());
    assert_eq!(Note::a().add(&Note::b()), Note::g().sub(&Note::b()));
    assert_eq!(Note::b().add(&Note::b()), Note::f().add(&Note::f()));
    let triple_e = Note::e().add(&Note::e()).add(&Note::e());
    let f_sharp = Note::f().sharp();
    assert_eq!(triple_e, f_sharp.add(&f_sharp));
    assert_eq!(triple_e, Note::c().sub(&Note::c()));
    assert_eq!(triple_e, Note::c());

    let classes: Vec<Note> = (0..12).map(Note::from_semitones).collect();
    let mut pairs = 0;
    for x in &classes {
        for y in &classes {
            let sum = x.add(y);
            assert!(sum.is_western());
            assert_eq!(sum, y.add(x));
            pairs += 1;
        }
    }
    assert_eq!(pairs, 144);
    for x in &classes {
        for y in &classes {
            for z in &classes {
                assert_eq!(x.add(y).add(z), x.add(&y.add(z)));
            }
        }
    }
    let unit = Note::c();
    for x in &classes {
        assert_eq!(x.add(&unit), *x);
        let inverse = unit.sub(x);
        assert!(inverse.is_western());
        assert_eq!(x.add(&inverse), unit);
    }

    println!(
        "[PASS] criterion 3: note identities and the full 12-class group law \
         table hold exactly"
    );
}

/// Every seven-step pattern in the catalog yields 7 + 7 − 4 = 10 tetrachords
/// and exactly 4 pairs of them sharing at most the tonic.
#[test]
fn criterion_04_heptatonic_tetrachord_counts() {
    let mut heptatonic = 0;
    for entry in scale_catalog() {
        if entry.ascent_semitones.len() != 7 {
            continue;
        }
        heptatonic += 1;
        let scale = scale_from_entry(&entry, Note::c()).unwrap();
        let tets = tetrachords(&scale);
        assert_eq!(
            tets.len(),
            scale.ascent().len() + scale.descent().len() - 4,
            "{}",
            entry.name
        );
        assert_eq!(tets.len(), 10, "{}", entry.name);
        assert_eq!(
            disjoint_tetrachord_pairs(&tets, scale.tonic()),
            4,
            "{}",
            entry.name
        );
    }
    assert_eq!(heptatonic, 21);

    println!(
        "[PASS] criterion 4: every heptatonic catalog scale has 10 tetrachords \
         and 4 disjoint pairs"
    );
}

/// All sixteen eastern patterns build on the quarter-tone grid with step
/// sums of exactly twelve semitones, and exactly the all-integer patterns
/// (mahur, rast, shushtari) also build on the western grid.
#[test]
fn criterion_05_eastern_patterns_and_their_western_projections() {
    let eastern: Vec<CatalogEntry> = scale_catalog()
        .into_iter()
        .filter(|e| e.grid == HarmonicGrid::Modal)
        .collect();
    assert_eq!(eastern.len(), 16);

    let mut western_survivors: BTreeSet<&str> = BTreeSet::new();
    for entry in &eastern {
        let scale = scale_from_entry(entry, Note::c()).unwrap();
        assert_eq!(scale.grid(), HarmonicGrid::Modal);
        let total = entry
            .ascent_semitones
            .iter()
            .fold(Rat::zero(), |acc, q| acc + q);
        assert_eq!(total, rat_int(12), "{}", entry.name);

        let has_fractional_step =
            entry.ascent_semitones.iter().any(|q| !q.is_integer());
        let steps = entry
            .ascent_semitones
            .iter()
            .map(|q| semitone_step(q.clone()))
            .collect();
        let on_western = make_scale(Note::c(), steps, None, HarmonicGrid::Western);
        assert_eq!(on_western.is_ok(), !has_fractional_step, "{}", entry.name);
        if on_western.is_ok() {
            western_survivors.insert(entry.name);
        }
    }
    assert_eq!(
        western_survivors,
        BTreeSet::from(["mahur", "rast", "shushtari"])
    );

    println!(
        "[PASS] criterion 5: all 16 eastern patterns validate on the \
         quarter-tone grid and exactly the integer ones survive the western grid"
    );
}

/// The cartesian interpretation passes every in-scope axiom at ten thousand
/// seeded samples; the affine and circle interpretations each fail axiom 9
/// (the circle on its first item) with counterexamples that re-verify from
/// scratch. The whole sweep stays under thirty seconds.
#[test]
fn criterion_06_model_checking_verdicts() {
    let seed = 0;
    let samples = 10_000;
    let start = Instant::now();

    for axiom_id in (1..=20).filter(|&id| id != 11) {
        let report = check_axiom(ModelId::Cartesian, axiom_id, samples, seed).unwrap();
        assert_eq!(report.verdict, Verdict::Pass, "cartesian axiom {axiom_id}");
        assert!(report.reverify());
    }

    let affine = check_axiom(ModelId::Affine, 9, samples, seed).unwrap();
    assert_eq!(affine.verdict, Verdict::Fail);
    let affine_witness = affine.witness.as_ref().expect("affine counterexample");
    assert!(!affine_witness.sounds.is_empty());
    assert!(affine.reverify(), "affine counterexample must reproduce");

    let circle = check_axiom(ModelId::Circle, 9, samples, seed).unwrap();
    assert_eq!(circle.verdict, Verdict::Fail);
    let circle_witness = circle.witness.as_ref().expect("circle counterexample");
    assert_eq!(circle_witness.item, Some(1));
    assert!(circle.reverify(), "circle counterexample must reproduce");

    let rerun = check_axiom(ModelId::Cartesian, 7, samples, seed).unwrap();
    assert_eq!(rerun, check_axiom(ModelId::Cartesian, 7, samples, seed).unwrap());

    assert!(start.elapsed() < Duration::from_secs(30));

    println!(
        "[PASS] criterion 6: cartesian axioms pass at 10000 samples; affine \
         and circle counterexamples reverify"
    );
}

/// Ten thousand random exact measures satisfy the group laws, translation
/// invariance of the order, and a float projection within 1e-12 relative.
#[test]
fn criterion_07_measure_algebra_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x07);
    let one = Measure::one();
    for _ in 0..10_000 {
        let (a, b, c) = if rng.gen_bool(0.5) {
            let mut exponents = (0..3).map(|_| {
                rat(rng.gen_range(-36..=36), rng.gen_range(1..=12))
            });
            (
                Measure::pow2(exponents.next().unwrap()),
                Measure::pow2(exponents.next().unwrap()),
                Measure::pow2(exponents.next().unwrap()),
            )
        } else {
            let mut ratios = (0..3).map(|_| {
                rat(rng.gen_range(1..=40), rng.gen_range(1..=40))
            });
            (
                Measure::ratio(ratios.next().unwrap()),
                Measure::ratio(ratios.next().unwrap()),
                Measure::ratio(ratios.next().unwrap()),
            )
        };

        assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        assert_eq!(a.compose(&one), a);
        assert_eq!(one.compose(&a), a);
        assert_eq!(a.compose(&a.invert()), one);
        assert_eq!(a.compare(&b), a.compose(&c).compare(&b.compose(&c)));
        assert!(approx_eq(
            a.compose(&b).to_float(),
            a.to_float() * b.to_float()
        ));
    }

    println!(
        "[PASS] criterion 7: measure group laws, order translation, and float \
         projection hold on 10000 samples"
    );
}

/// For a thousand random melodies and harmonic shift amounts, transposition
/// preserves the interval sequence (hence congruence) and composing with the
/// inverse shift restores the original melody index-exactly.
#[test]
fn criterion_08_transposition_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x08);
    for _ in 0..1_000 {
        let length = rng.gen_range(0..12);
        let terms = (0..length)
            .map(|_| GridPitch::new(rat(rng.gen_range(-48..72), 2)))
            .collect();
        let melody = Melody::new(terms);
        let by = semitone_step(rat(rng.gen_range(-24..=24), 2));

        let shifted = transpose(&melody, &by, HarmonicGrid::Modal).unwrap();
        assert_eq!(shifted.len(), melody.len());
        assert_eq!(shifted.intervals(), melody.intervals());
        assert!(congruent(&melody, &shifted));
        let back = transpose(&shifted, &by.invert(), HarmonicGrid::Modal).unwrap();
        assert_eq!(back, melody);
    }

    println!(
        "[PASS] criterion 8: transposition preserves congruence and \
         round-trips on 1000 random melodies"
    );
}

/// Every ascending chord on grid indices 0 through 12 with at most four
/// pitches — all 1092 of them — survives the chord→melody→chord round trip.
#[test]
fn criterion_09_chord_melody_round_trip_is_exhaustive() {
    let mut tuples: Vec<Vec<i64>> = Vec::new();
    for a in 0..=12 {
        tuples.push(vec![a]);
        for b in (a + 1)..=12 {
            tuples.push(vec![a, b]);
            for c in (b + 1)..=12 {
                tuples.push(vec![a, b, c]);
                for d in (c + 1)..=12 {
                    tuples.push(vec![a, b, c, d]);
                }
            }
        }
    }
    assert_eq!(tuples.len(), 1092);

    for indices in &tuples {
        let pitches = indices
            .iter()
            .map(|&i| GridPitch::from_semitones(i))
            .collect();
        let chord = make_chord(pitches, HarmonicGrid::Western).unwrap();
        let melody = chord_to_melody(&chord);
        assert_eq!(melody.len(), chord.len());
        let back = melody_to_chord(&melody, HarmonicGrid::Western).unwrap();
        assert_eq!(back, chord);
    }

    println!(
        "[PASS] criterion 9: all 1092 ascending chords round-trip through \
         melodies exactly"
    );
}

/// The three regularity criteria agree on a thousand random rational
/// rhythms, classification is total with the beat-count mapping, the pinned
/// five-onset bar over a unit span has signature (5, 1) and tempo 5, and an
/// irrational onset defeats all three criteria at once.
#[test]
fn criterion_10_rhythm_regularity_and_classification() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x10);
    let denominators = [1i64, 2, 3, 4, 5, 6, 8, 12];
    for _ in 0..1_000 {
        let span_units = rng.gen_range(1..=4i64);
        let denominator = denominators[rng.gen_range(0..denominators.len())];
        let mut events = vec![RhythmEvent::sound(
            Onset::Exact(rat_int(0)),
            GridPitch::from_semitones(rng.gen_range(0..13)),
        )];
        for tick in 1..(span_units * denominator) {
            if !rng.gen_bool(0.6) {
                continue;
            }
            let onset = Onset::Exact(rat(tick, denominator));
            if rng.gen_bool(0.25) {
                events.push(RhythmEvent::rest(onset));
            } else {
                events.push(RhythmEvent::sound(
                    onset,
                    GridPitch::from_semitones(rng.gen_range(0..13)),
                ));
            }
        }
        let rhythm = make_rhythm(rat_int(span_units), events).unwrap();

        let by_offsets = regular_by_start_offsets(&rhythm);
        let by_differences = regular_by_pairwise_differences(&rhythm);
        let by_gaps = regular_by_consecutive_gaps(&rhythm);
        assert!(by_offsets && by_differences && by_gaps);
        assert!(is_regular(&rhythm));

        let sig = signature(&rhythm).unwrap();
        let class = classify(&rhythm).unwrap();
        let expected = match sig.beat_count {
            0 => RhythmClass::Silence,
            1 => RhythmClass::Trivial,
            2 | 3 => RhythmClass::Simple,
            n if n >= 6 && n % 3 == 0 => RhythmClass::Compound,
            _ => RhythmClass::Complex,
        };
        assert_eq!(class, expected);
        assert_eq!(
            sig_tempo(&sig),
            Rat::from_integer(sig.beat_count.into()) / &sig.duration
        );
    }

    let sound_at = |n: i64, d: i64| {
        RhythmEvent::sound(Onset::Exact(rat(n, d)), GridPitch::from_semitones(0))
    };
    let all_rest =
        make_rhythm(rat_int(1), vec![RhythmEvent::rest(Onset::Exact(rat_int(0)))]).unwrap();
    assert_eq!(classify(&all_rest).unwrap(), RhythmClass::Silence);
    let single = make_rhythm(rat_int(1), vec![sound_at(0, 1)]).unwrap();
    assert_eq!(classify(&single).unwrap(), RhythmClass::Trivial);
    let thirds = make_rhythm(
        rat_int(1),
        (0..3).map(|k| sound_at(k, 3)).collect(),
    )
    .unwrap();
    assert_eq!(classify(&thirds).unwrap(), RhythmClass::Simple);
    let six_over_two = make_rhythm(
        rat_int(2),
        (0..6).map(|k| sound_at(k, 3)).collect(),
    )
    .unwrap();
    assert_eq!(classify(&six_over_two).unwrap(), RhythmClass::Compound);

    let five_onsets = make_rhythm(
        rat_int(1),
        (0..5).map(|k| sound_at(k, 5)).collect(),
    )
    .unwrap();
    let sig = signature(&five_onsets).unwrap();
    assert_eq!(
        sig,
        Signature { beat_count: 5, duration: rat_int(1) }
    );
    assert_eq!(sig_tempo(&sig), rat_int(5));
    assert_eq!(classify(&five_onsets).unwrap(), RhythmClass::Complex);

    let off_grid = make_rhythm(
        rat_int(1),
        vec![
            sound_at(0, 1),
            RhythmEvent::sound(
                Onset::Irrational(0.5f64.sqrt()),
                GridPitch::from_semitones(2),
            ),
        ],
    )
    .unwrap();
    assert!(!regular_by_start_offsets(&off_grid));
    assert!(!regular_by_pairwise_differences(&off_grid));
    assert!(!regular_by_consecutive_gaps(&off_grid));
    assert!(!is_regular(&off_grid));
    assert!(signature(&off_grid).is_err());
    assert!(classify(&off_grid).is_err());

    println!(
        "[PASS] criterion 10: regularity criteria agree and classification is \
         total on 1000 random rhythms"
    );
}

/// Join and meet of parallel scales obey the lattice laws — commutativity,
/// associativity, idempotence, absorption, the one-step scale as identity,
/// the chromatic scale as absorber — on a thousand random families from the
/// catalog. The lattice lives on compatible scales (the ones determined by
/// their component sets), so the melodic-minor pattern with its explicit
/// descent stays out of the pool.
#[test]
fn criterion_11_scale_lattice_laws() {
    let catalog = scale_catalog();
    let western_pool: Vec<&CatalogEntry> = catalog
        .iter()
        .filter(|e| e.grid == HarmonicGrid::Western && e.descent_semitones.is_none())
        .collect();
    let eastern_pool: Vec<&CatalogEntry> = catalog
        .iter()
        .filter(|e| e.grid == HarmonicGrid::Modal)
        .collect();
    assert_eq!(western_pool.len(), 7);
    assert_eq!(eastern_pool.len(), 16);

    let join = |x: &Scale, y: &Scale| scale_join(x, y).unwrap();
    let meet = |x: &Scale, y: &Scale| scale_meet(x, y).unwrap();

    let mut rng = ChaCha8Rng::seed_from_u64(0x11);
    for _ in 0..1_000 {
        let (pool, tonic, grid) = if rng.gen_bool(0.5) {
            (
                &western_pool,
                Note::from_semitones(rng.gen_range(0..12)),
                HarmonicGrid::Western,
            )
        } else {
            (
                &eastern_pool,
                Note::new(rat(rng.gen_range(0..24), 2)),
                HarmonicGrid::Modal,
            )
        };
        let pick = |rng: &mut ChaCha8Rng| {
            let entry = pool[rng.gen_range(0..pool.len())];
            scale_from_entry(entry, tonic.clone()).unwrap()
        };
        let a = pick(&mut rng);
        let b = pick(&mut rng);
        let c = pick(&mut rng);

        assert_eq!(join(&a, &b), join(&b, &a));
        assert_eq!(meet(&a, &b), meet(&b, &a));
        assert_eq!(join(&join(&a, &b), &c), join(&a, &join(&b, &c)));
        assert_eq!(meet(&meet(&a, &b), &c), meet(&a, &meet(&b, &c)));
        assert_eq!(join(&a, &a), a);
        assert_eq!(meet(&a, &a), a);
        assert_eq!(join(&a, &meet(&a, &b)), a);
        assert_eq!(meet(&a, &join(&a, &b)), a);

        let one_step =
            make_scale(tonic.clone(), vec![semitone_step(rat_int(12))], None, grid).unwrap();
        assert_eq!(join(&a, &one_step), a);
        assert_eq!(meet(&a, &one_step), one_step);

        let full = match grid {
            HarmonicGrid::Western => {
                make_scale(tonic.clone(), vec![semitone_step(rat_int(1)); 12], None, grid)
                    .unwrap()
            }
            HarmonicGrid::Modal => {
                make_scale(tonic.clone(), vec![semitone_step(rat(1, 2)); 24], None, grid)
                    .unwrap()
            }
        };
        assert_eq!(join(&a, &full), full);
        assert_eq!(meet(&a, &full), a);
    }

    println!("[PASS] criterion 11: scale lattice laws hold on 1000 random parallel families");
}
