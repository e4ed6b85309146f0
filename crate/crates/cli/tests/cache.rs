use num_bigint::BigInt;

use fishburn_cli::cache::{Cache, CacheKey, Lookup, CACHE_SCHEMA_VERSION};
use fishburn_core::qseries::{expand_family, Expansion, SeriesFamily, SeriesFamilyId};
use fishburn_core::IntSeries;

fn f1(order: u32) -> IntSeries {
    let fam = SeriesFamily::new(SeriesFamilyId::F1, Vec::new()).unwrap();
    match expand_family(&fam, order).unwrap() {
        Expansion::Integer(s) => s,
        Expansion::Rational(_) => panic!("F1 is integral"),
    }
}

#[test]
fn round_trip_then_clear() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path());
    let key = CacheKey::new::<BigInt>("F1", &[], 10);
    assert_eq!(cache.get::<BigInt>(&key), Lookup::Miss);

    let s = f1(10);
    cache.put(&key, &s).unwrap();
    assert_eq!(cache.get::<BigInt>(&key), Lookup::Hit(s));

    assert_eq!(cache.clear().unwrap(), 1);
    assert_eq!(cache.get::<BigInt>(&key), Lookup::Miss);
}

#[test]
fn key_separates_truncation_params_and_ring() {
    let a = CacheKey::new::<BigInt>("F1", &[], 10);
    let b = CacheKey::new::<BigInt>("F1", &[], 11);
    let c = CacheKey::new::<num_rational::BigRational>("F1", &[], 10);
    let d = CacheKey::new::<BigInt>("F1", &["1/2".into()], 10);
    let digests = [a.digest(), b.digest(), c.digest(), d.digest()];
    for i in 0..digests.len() {
        for j in i + 1..digests.len() {
            assert_ne!(digests[i], digests[j]);
        }
    }
    assert_eq!(a.digest(), CacheKey::new::<BigInt>("F1", &[], 10).digest());
}

#[test]
fn older_schema_is_stale() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path());
    let key = CacheKey::new::<BigInt>("F1", &[], 6);
    let path = cache.put(&key, &f1(6)).unwrap();

    let mut entry: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    entry["schema"] = (CACHE_SCHEMA_VERSION - 1).into();
    std::fs::write(&path, entry.to_string()).unwrap();
    assert!(matches!(cache.get::<BigInt>(&key), Lookup::Stale(_)));

    std::fs::write(&path, "{ not json").unwrap();
    assert!(matches!(cache.get::<BigInt>(&key), Lookup::Stale(_)));
}
