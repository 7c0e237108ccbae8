//! Drives the command line front end in-process and prints its JSON.

fn main() {
    let runs: [&[&str]; 4] = [
        &["garside", "nf", "braid:classical:n=3", "s1 s2^-1"],
        &[
            "garside",
            "dist",
            "braid:dual:n=4",
            "s1",
            "s2^-1 s3",
            "--metric",
            "x",
        ],
        &[
            "garside",
            "project",
            "braid:classical:n=3",
            "s1",
            "s2 s1^-3",
            "--table",
        ],
        &["garside", "ball", "braid:classical:n=3", "--radius", "9"],
    ];
    for args in runs {
        let out = garside::cli::run(args.iter().copied());
        println!("$ {} -> exit {}", args[1..].join(" "), out.code);
        print!("{}", out.stdout);
    }
}
