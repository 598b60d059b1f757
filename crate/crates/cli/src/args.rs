use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use conic_pencil::{FootFamily, Point, SpanFamily};

use crate::error::{CliError, CliResult};
use crate::input::{parse_point, ExpRange, TriangleInput};
use crate::render::Layer;

#[derive(Debug, Parser)]
#[command(name = "conic-pencil", version, about = "Cevian feet, circumcenter conics and their pencil")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// The triangle, inline or from a TOML file with `a`, `b`, `c` pairs.
#[derive(Debug, Clone, Args)]
pub struct TriangleArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub ax: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub ay: Option<f64>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub bx: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub by: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub cx: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub cy: f64,
    #[arg(long, value_name = "PATH", conflicts_with_all = ["ax", "ay", "bx", "by", "cx", "cy"])]
    pub triangle: Option<PathBuf>,
}

impl TriangleArgs {
    pub fn input(&self) -> CliResult<TriangleInput> {
        if let Some(path) = &self.triangle {
            return TriangleInput::from_file(path);
        }
        match (self.ax, self.ay) {
            (Some(ax), Some(ay)) => Ok(TriangleInput { a: [ax, ay], b: [self.bx, self.by], c: [self.cx, self.cy] }),
            _ => Err(CliError::usage("MissingApex", "give --ax and --ay, or --triangle")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    #[value(alias = "same-side")]
    Same,
    Mixed,
    M,
    Mprime,
}

impl Family {
    pub fn foot(self) -> CliResult<FootFamily> {
        match self {
            Family::M => Ok(FootFamily::Internal),
            Family::Mprime => Ok(FootFamily::External),
            _ => Err(CliError::usage("BadFamily", "sequence takes --family m or mprime")),
        }
    }

    pub fn span(self) -> CliResult<SpanFamily> {
        match self {
            Family::Same => Ok(SpanFamily::SameSide),
            Family::Mixed => Ok(SpanFamily::Mixed),
            _ => Err(CliError::usage("BadFamily", "expected --family same or mixed")),
        }
    }
}

fn point_arg(s: &str) -> Result<Point, String> {
    parse_point(s)
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Feet M(k) or M'(k) over an exponent range.
    Sequence {
        #[command(flatten)]
        triangle: TriangleArgs,
        #[arg(long, value_enum, default_value = "m")]
        family: Family,
        #[arg(long = "exp-range", value_name = "LO:HI:STEP", allow_hyphen_values = true)]
        exp_range: ExpRange,
    },
    /// Normalized coefficients of the member of span t.
    Conic {
        #[command(flatten)]
        triangle: TriangleArgs,
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
        #[arg(long, value_enum, default_value = "same")]
        family: Family,
    },
    /// Region of a point and the type of its member.
    Classify {
        #[command(flatten)]
        triangle: TriangleArgs,
        #[arg(long, value_name = "X,Y", value_parser = point_arg, allow_hyphen_values = true)]
        point: Point,
    },
    /// Span of the member through a point.
    Span {
        #[command(flatten)]
        triangle: TriangleArgs,
        #[arg(long, value_name = "X,Y", value_parser = point_arg, allow_hyphen_values = true)]
        point: Point,
    },
    /// Whether two points lie on the same member.
    SameConic {
        #[command(flatten)]
        triangle: TriangleArgs,
        /// Given twice.
        #[arg(long = "point", value_name = "X,Y", value_parser = point_arg, allow_hyphen_values = true, required = true)]
        points: Vec<Point>,
    },
    /// Run every verification check.
    Verify {
        #[arg(long, value_name = "PATH")]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        /// Report file; without it the report goes to standard output.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Draw members, feet and guides as SVG.
    Render {
        #[command(flatten)]
        triangle: TriangleArgs,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        spans: Vec<f64>,
        #[arg(long, value_enum, default_value = "same")]
        family: Family,
        #[arg(long = "exp-range", value_name = "LO:HI:STEP", default_value = "-4:4:1", allow_hyphen_values = true)]
        exp_range: ExpRange,
        /// Layers to draw; defaults to triangle, contacts, sides and critical.
        #[arg(long, value_enum, value_delimiter = ',')]
        show: Option<Vec<Layer>>,
        #[arg(long, default_value_t = 800)]
        width: u32,
        #[arg(long, default_value_t = 800)]
        height: u32,
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
    },
}
