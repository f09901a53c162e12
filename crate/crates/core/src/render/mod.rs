//! Text, HTML and canonical JSON representations of a label.

mod format;
mod html;
mod json;
mod text;

use thiserror::Error;

pub use format::{format_cell, format_count, format_pct, format_score, format_target, placeholder};
pub use html::render_html;
pub use json::{from_canonical_json, to_canonical_json, to_canonical_string, write_canonical};
pub use text::{display_width, render_text};

/// Page size the text rendering must fit to count as one page.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RenderBudget {
    max_lines: usize,
    width: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BudgetError {
    #[error("width {0} is below the minimum of {min}", min = RenderBudget::MIN_WIDTH)]
    TooNarrow(usize),
    #[error("max_lines {0} is below the minimum of {min}", min = RenderBudget::MIN_LINES)]
    TooShort(usize),
}

impl RenderBudget {
    pub const MIN_WIDTH: usize = 48;
    pub const MIN_LINES: usize = 24;
    pub const DEFAULT: RenderBudget = RenderBudget { max_lines: 80, width: 64 };

    pub fn new(max_lines: usize, width: usize) -> Result<Self, BudgetError> {
        if width < Self::MIN_WIDTH {
            return Err(BudgetError::TooNarrow(width));
        }
        if max_lines < Self::MIN_LINES {
            return Err(BudgetError::TooShort(max_lines));
        }
        Ok(RenderBudget { max_lines, width })
    }

    pub fn max_lines(&self) -> usize {
        self.max_lines
    }

    pub fn width(&self) -> usize {
        self.width
    }
}

impl Default for RenderBudget {
    fn default() -> Self {
        Self::DEFAULT
    }
}
