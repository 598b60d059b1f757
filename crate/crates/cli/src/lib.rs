//! Command-line front end: argument parsing and the subcommands.

pub mod args;
pub mod commands;
pub mod error;
pub mod format;
pub mod input;
pub mod render;

use args::{Cli, Command};
use error::{CliError, CliResult};
use render::{Layer, RenderSpec};

/// What a command printed and how it failed, if it did.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub error: Option<CliError>,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        self.error.as_ref().map_or(0, CliError::exit_code)
    }
}

impl From<CliResult<String>> for Outcome {
    fn from(r: CliResult<String>) -> Self {
        match r {
            Ok(stdout) => Outcome { stdout, error: None },
            Err(e) => Outcome { stdout: String::new(), error: Some(e) },
        }
    }
}

pub fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Verify { config, seed, out } => match commands::load_config(config.as_deref(), seed) {
            Ok(cfg) => {
                let (stdout, error) = commands::verify(&cfg, out.as_deref());
                Outcome { stdout, error }
            }
            Err(e) => Err(e).into(),
        },
        other => run_query(other).into(),
    }
}

fn run_query(cmd: Command) -> CliResult<String> {
    match cmd {
        Command::Sequence { triangle, family, exp_range } => {
            commands::sequence(&triangle.input()?.frame()?, family.foot()?, &exp_range.values())
        }
        Command::Conic { triangle, t, family } => commands::conic(&triangle.input()?.frame()?, t, family.span()?),
        Command::Classify { triangle, point } => commands::classify(&triangle.input()?.frame()?, point),
        Command::Span { triangle, point } => commands::span(&triangle.input()?.frame()?, point),
        Command::SameConic { triangle, points } => {
            let [x, y] = points[..] else {
                return Err(CliError::usage("BadPointCount", "same-conic takes exactly two --point"));
            };
            commands::same_conic(&triangle.input()?.frame()?, x, y)
        }
        Command::Render { triangle, spans, family, exp_range, show, width, height, out } => {
            let frame = triangle.input()?.frame()?;
            let spec = RenderSpec {
                spans,
                family: family.span()?,
                exponents: exp_range,
                layers: show.unwrap_or_else(|| Layer::DEFAULT.to_vec()).into_iter().collect(),
                width,
                height,
            };
            let svg = render::render(&frame, &spec)?;
            std::fs::write(&out, svg).map_err(|e| CliError::Io(format!("cannot write {}: {e}", out.display())))?;
            let mut s = commands::frame_header(&frame);
            s.push_str(&format!("svg={}\npaths={}\n", out.display(), spec.spans.len()));
            Ok(s)
        }
        Command::Verify { .. } => unreachable!("handled by run"),
    }
}
