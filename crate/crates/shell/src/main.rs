// SPDX-License-Identifier: Apache-2.0

use std::io::{BufRead, IsTerminal, Write};
use std::path::Path;
use std::process::ExitCode;

use qsynth_shell::{init_logging, OutputMode, Shell};

fn interactive(shell: &mut Shell) -> ExitCode {
    let stdin = std::io::stdin();
    let tty = stdin.is_terminal();
    let mut line = String::new();
    loop {
        if tty {
            print!("qsynth> ");
            let _ = std::io::stdout().flush();
        }
        line.clear();
        match stdin.lock().read_line(&mut line) {
            Ok(0) => return ExitCode::SUCCESS,
            Ok(_) => {}
            Err(e) => {
                eprintln!("Error: {e}");
                return ExitCode::FAILURE;
            }
        }
        if let Err(e) = shell.execute_line(line.trim_end_matches(['\n', '\r'])) {
            eprintln!("Error: {e}");
        }
        if shell.session.quit {
            return ExitCode::SUCCESS;
        }
    }
}

fn main() -> ExitCode {
    init_logging();
    let mut shell = Shell::new(OutputMode::Stdout);
    shell.load_rc();
    let args: Vec<String> = std::env::args().skip(1).collect();
    match args.split_first() {
        None => interactive(&mut shell),
        Some((script, rest)) => match shell.run_script(Path::new(script), rest) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("Error: {e}");
                ExitCode::FAILURE
            }
        },
    }
}
