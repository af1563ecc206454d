use ovaline::criteria::{check_geometric, verify_all};
use ovaline::gpoly::{corollary_support_filter, g_coeffs_to_table};
use ovaline::plane::points_from_g;
use ovaline::search::{
    enumerate_candidates, run_search, run_search_with, Checkpoint, RunOptions, SearchConfig,
    SearchManifest, SearchMode,
};
use ovaline::FElem;

#[test]
fn q8_support_one_four_hits_are_unanimous() {
    let mut cfg = SearchConfig::exhaustive(8, vec![1, 4]);
    cfg.parallel_shards = 4;
    let ctx = cfg.field().unwrap();
    let man = run_search(&cfg).unwrap();
    assert_eq!(man.space_size, 2 * 64 * 64);
    assert_eq!(u128::from(man.counters.enumerated), man.space_size);
    assert!(man.counters.balanced());
    assert!(!man.hits.is_empty());
    assert_eq!(man.rejects_rechecked, 100);
    for hit in &man.hits {
        assert!(corollary_support_filter(&hit.g));
        let t = g_coeffs_to_table(&ctx, &hit.g).unwrap();
        let rep = verify_all(&ctx, &t).unwrap();
        assert!(rep.unanimous && rep.verdict);
        assert!(
            check_geometric(&ctx, &points_from_g(&ctx, &t))
                .unwrap()
                .verdict
        );
    }
    let constant_one = man.hits.iter().any(|h| {
        g_coeffs_to_table(&ctx, &h.g)
            .unwrap()
            .values()
            .iter()
            .all(|&v| v == FElem::ONE)
    });
    assert!(constant_one);
}

#[test]
fn enumeration_is_deterministic() {
    let cfg = SearchConfig::exhaustive(4, vec![1]);
    let a: Vec<_> = enumerate_candidates(&cfg).unwrap().collect();
    let b: Vec<_> = enumerate_candidates(&cfg).unwrap().collect();
    assert_eq!(a, b);
    assert_eq!(a.len(), 32);
}

#[test]
fn manifest_and_checkpoint_serialize() {
    let mut cfg = SearchConfig::exhaustive(4, vec![1]);
    cfg.mode = SearchMode::Random {
        samples: 3000,
        seed: 4,
    };
    let shards = std::sync::Mutex::new(Checkpoint::default());
    let rec = |o: &ovaline::search::ShardOutcome| {
        shards.lock().unwrap().completed.insert(o.shard, o.clone());
    };
    let man = run_search_with(
        &cfg,
        RunOptions {
            on_shard: Some(&rec),
            ..Default::default()
        },
    )
    .unwrap();
    let text = serde_json::to_string(&man).unwrap();
    let back: SearchManifest = serde_json::from_str(&text).unwrap();
    assert_eq!(back, man);

    let ck = shards.into_inner().unwrap();
    assert_eq!(ck.completed.len(), 3);
    let ck: Checkpoint = serde_json::from_str(&serde_json::to_string(&ck).unwrap()).unwrap();
    let resumed = run_search_with(
        &cfg,
        RunOptions {
            resume: Some(ck),
            ..Default::default()
        },
    )
    .unwrap();
    assert_eq!(resumed, man);

    let cfg_text = serde_json::to_string(&cfg).unwrap();
    assert!(cfg_text.contains(r#""mode":{"kind":"random","samples":3000,"seed":4}"#));
    let parsed: SearchConfig =
        serde_json::from_str(r#"{"q":4,"free_support":[1],"mode":{"kind":"exhaustive"}}"#).unwrap();
    assert_eq!(parsed, SearchConfig::exhaustive(4, vec![1]));
}
