//! File formats, the bundled corpus, random generators and the command-line
//! front end for `pidwidth-core`.

pub mod cli;
pub mod corpus;
pub mod generators;
pub mod io;
pub mod stats;

/// Runs `$body` with `$w` bound to a const bitset width large enough for
/// `$n` vertices. Evaluates to `None` above 512 vertices.
#[macro_export]
macro_rules! with_width {
    ($n:expr, $w:ident => $body:expr) => {{
        match ::pidwidth_core::width_for($n) {
            Some(1) => {
                const $w: usize = 1;
                Some($body)
            }
            Some(2) => {
                const $w: usize = 2;
                Some($body)
            }
            Some(4) => {
                const $w: usize = 4;
                Some($body)
            }
            Some(8) => {
                const $w: usize = 8;
                Some($body)
            }
            _ => None,
        }
    }};
}
