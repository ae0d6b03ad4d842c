//! Runs every example end to end.

macro_rules! example {
    ($module:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $module() {
            $module::run_example().expect(concat!($file, " should run"));
        }
    };
}

example!(addition_counts, "addition_counts.rs");
example!(cli_session, "cli_session.rs");
example!(combinatorial_oracles, "combinatorial_oracles.rs");
example!(elision_map, "elision_map.rs");
example!(inverse_process, "inverse_process.rs");
example!(moessner_process, "moessner_process.rs");
example!(nested_summation, "nested_summation.rs");
example!(oeis_cross_check, "oeis_cross_check.rs");
example!(polygonal_numbers, "polygonal_numbers.rs");
example!(preset_catalog, "preset_catalog.rs");
