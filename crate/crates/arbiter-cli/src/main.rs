use arbiter_cli::{execute, serve, Cli, Command};
use clap::Parser;

fn main() {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("ARBITER_LOG", "warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let result = match &cli.command {
        Command::Serve { port } => tokio::runtime::Runtime::new()
            .expect("tokio runtime")
            .block_on(serve(*port))
            .map(|_| String::new()),
        cmd => execute(cmd),
    };
    match result {
        Ok(text) => {
            if !text.is_empty() {
                println!("{text}");
            }
        }
        Err(e) => {
            if e.code == 1 {
                println!("{}", e.message);
            } else {
                eprintln!("error: {}", e.message);
            }
            std::process::exit(e.code);
        }
    }
}
