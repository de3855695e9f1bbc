// SPDX-License-Identifier: Apache-2.0

//! Command shell over the qsynth library.

pub mod args;
mod commands;
pub mod line;
pub mod session;
mod shell;

pub use commands::BUILTIN_ALIASES;
pub use session::{Manager, OutputMode, Session};
pub use shell::{Action, Command, Shell, ShellError, ALIAS_DEPTH_CAP, RC_ENV};

/// Log records go to stderr as `[level] message`; the `logger` command
/// moves the level afterwards.
pub fn init_logging() {
    let _ = env_logger::Builder::new()
        .filter_level(log::LevelFilter::Trace)
        .format(|buf, record| {
            use std::io::Write;
            writeln!(buf, "[{}] {}", record.level().as_str().to_lowercase(), record.args())
        })
        .try_init();
    log::set_max_level(log::LevelFilter::Warn);
}
