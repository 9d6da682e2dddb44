//! File formats, SVG rendering, text reports and the `symcurve` command
//! line tool on top of [`symcurve_core`].

pub mod cli;
pub mod error;
pub mod format;
pub mod report;
pub mod svg;

pub use error::{CliError, ParseError};
pub use svg::render_svg;
