use hullcohom::catalog;
use hullcohom::format::{parse, write};

#[test]
fn catalog_files_survive_a_round_trip() {
    for name in catalog::list() {
        let Some(file) = catalog::get(name).unwrap().file() else { continue };
        let file = file.unwrap();
        let text = write(&file);
        let again = parse(&text).unwrap_or_else(|e| panic!("{name}: {e}\n{text}"));
        assert_eq!(again.name, file.name);
        assert_eq!(again.arrangement().unwrap(), file.arrangement().unwrap(), "{name}");
        assert_eq!(again.tori, file.tori, "{name}");
        match (&file.group, &again.group) {
            (None, None) => {}
            (Some(a), Some(b)) => {
                assert_eq!(a.generators, b.generators, "{name}");
                assert_eq!(a.table, b.table, "{name}");
            }
            _ => panic!("{name}: group lost"),
        }
        assert_eq!(write(&again), text, "{name}: writing is not canonical");
    }
}
