//! File formats, code constructors and the command-line front end.

mod bench;
mod cli;
mod codes;
mod instance;
mod random;

pub use bench::{mean_growth, read_csv, run_bench, write_csv, BenchConfig, BenchProblem, BenchRecord};
pub use cli::run_cli;
pub use codes::{five_qubit, named_code, repetition_z, single_z, steane};
pub use instance::{
    parse_instance, parse_instance_file, serialize_instance, serialize_instance_file, Certificate,
    InstanceFile, MAGIC,
};
pub use random::{gen_random, RandomCode, RandomKind};
