use std::fmt;

use crate::poly::Polynomial;
use crate::rational::{render, Rational};

/// One coordinate change on the way from the base plane to a blow-up chart.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ChartStep {
    /// `(x, y) -> (x + a, y + b)`.
    Translate(Rational, Rational),
    /// `(x, y) -> (x, x*y)`; the exceptional curve is `{x = 0}`.
    BlowUpX,
    /// `(x, y) -> (x*y, y)`; the exceptional curve is `{y = 0}`.
    BlowUpY,
}

impl ChartStep {
    fn substitution(&self) -> [Polynomial; 2] {
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        match self {
            ChartStep::Translate(a, b) => [
                &x + &Polynomial::constant(2, a.clone()),
                &y + &Polynomial::constant(2, b.clone()),
            ],
            ChartStep::BlowUpX => {
                let xy = &x * &y;
                [x, xy]
            }
            ChartStep::BlowUpY => {
                let xy = &x * &y;
                [xy, y]
            }
        }
    }

    pub fn pullback(&self, p: &Polynomial) -> Polynomial {
        match self {
            ChartStep::Translate(a, b) => p.translate(&[a.clone(), b.clone()]),
            _ => p.compose(&self.substitution()).expect("plane polynomial"),
        }
    }
}

impl fmt::Display for ChartStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChartStep::Translate(a, b) => write!(f, "translate({}, {})", render(a), render(b)),
            ChartStep::BlowUpX => f.write_str("(x, y) -> (x, x*y)"),
            ChartStep::BlowUpY => f.write_str("(x, y) -> (x*y, y)"),
        }
    }
}

/// A composite of chart steps, applied left to right: the coordinates of the
/// first step are those of the base plane.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ChartMap {
    steps: Vec<ChartStep>,
}

impl ChartMap {
    pub fn new(steps: Vec<ChartStep>) -> Self {
        ChartMap { steps }
    }

    pub fn identity() -> Self {
        Self::default()
    }

    pub fn steps(&self) -> &[ChartStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn then(&self, step: ChartStep) -> ChartMap {
        let mut steps = self.steps.clone();
        steps.push(step);
        ChartMap { steps }
    }

    /// The steps after the first `start`.
    pub fn suffix(&self, start: usize) -> ChartMap {
        ChartMap { steps: self.steps[start..].to_vec() }
    }

    /// `p` expressed in the chart coordinates.
    pub fn pullback(&self, p: &Polynomial) -> Polynomial {
        self.steps.iter().fold(p.clone(), |acc, s| s.pullback(&acc))
    }

    /// Pullbacks of the two base coordinates.
    pub fn coordinate_pullbacks(&self) -> [Polynomial; 2] {
        [self.pullback(&Polynomial::var(2, 0)), self.pullback(&Polynomial::var(2, 1))]
    }

    pub fn describe(&self) -> Vec<String> {
        self.steps.iter().map(ToString::to_string).collect()
    }
}

impl fmt::Display for ChartMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.steps.is_empty() {
            return f.write_str("identity");
        }
        f.write_str(&self.describe().join(" ; "))
    }
}
