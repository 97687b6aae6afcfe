fn main() {
    let env_out = std::env::var(levyslab::cli::ENV_OUT).ok();
    let code = levyslab::cli::run(
        std::env::args_os(),
        env_out.as_deref(),
        &mut std::io::stdout(),
        &mut std::io::stderr(),
    );
    std::process::exit(code);
}
