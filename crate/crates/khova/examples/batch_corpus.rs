//! Batch runs over the bundled corpora through the same job pipeline the
//! `khova` binary uses.

use khova::cli::{run, Algorithm, CoeffSpec, Input, JobSpec, OutputFormat, Task};
use khova::corpus::{corpus, CORPORA};

fn main() {
    for name in CORPORA {
        println!("{name}: {} diagrams", corpus(name).unwrap().len());
    }

    let job = JobSpec {
        input: Input::Corpus("torus".into()),
        tasks: vec![Task::Jones, Task::Kh],
        coeff: CoeffSpec::Z,
        algorithm: Algorithm::Scan,
        output: OutputFormat::Pretty,
        cache_dir: None,
        jobs: 4,
    };
    println!("{}", run(&job).unwrap());
}
