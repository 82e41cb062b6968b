//! Maps as permutation triples, the map series, the triangulation recurrence,
//! the constants `b_g` and asymptotics.

pub mod asymptotics;
pub mod genus0;
pub mod oracle;
pub mod painleve;
pub mod series;
pub mod triangulation;

pub use asymptotics::{
    hurwitz_asymptotic_check, hurwitz_single_ones, ln_rational, triangulation_asymptotic, triangulation_trend, triangulation_trend_between, TrendReport, MAX_HURWITZ_N,
};
pub use genus0::{genus0_closed, genus0_order, rising, Genus0Kind};
pub use oracle::{genus_of, map_census, map_oracle, MapCensus, MapQuery, MAX_CLASS_HALF_EDGES, MAX_FREE_HALF_EDGES};
pub use painleve::{bg_table, painleve_check, painleve_residual};
pub use series::map_series;
pub use triangulation::{seed_minus_one, seed_zero, triangulation_table, triangulation_table_seeded, TriangulationTable};
