use std::io::Write;

use clap::Parser;

use nary_ell_cli::{run, Cli, Format};

// Exit codes: 0 success, 2 usage (clap's default), 3 domain error.
fn main() {
    let cli = Cli::parse();
    let format = cli.cmd.common().format;
    match run(cli.cmd) {
        Ok(out) => {
            let rendered = match format {
                Format::Text => out.text,
                Format::Json => {
                    let mut s =
                        serde_json::to_string_pretty(&out.envelope).expect("serializable");
                    s.push('\n');
                    s
                }
            };
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(rendered.as_bytes()).is_err() {
                // the reader went away (a closed pipe); not a failure
                std::process::exit(0);
            }
            let _ = stdout.flush();
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(3);
        }
    }
}
