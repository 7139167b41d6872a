fn main() {
    let code =
        pathgraph::cli::run(std::env::args_os(), &mut std::io::stdin(), &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code);
}
