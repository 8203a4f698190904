//! Ten-component Gaussian mixture approximation to the log-χ²₁ distribution
//! (Omori, Chib, Shephard & Nakajima 2007), used to linearize the
//! log-variance observation equation `log ω² = h + log χ²₁`.

/// One mixture component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OmoriComponent {
    pub prob: f64,
    pub mean: f64,
    pub var: f64,
}

/// The fixed ten-component mixture table.
#[derive(Debug, Clone, PartialEq)]
pub struct OmoriTable {
    components: [OmoriComponent; 10],
}

const PROBS: [f64; 10] = [
    0.00609, 0.04775, 0.13057, 0.20674, 0.22715, 0.18842, 0.12047, 0.05591, 0.01575, 0.00115,
];
const MEANS: [f64; 10] = [
    1.92677, 1.34744, 0.73504, 0.02266, -0.85173, -1.97278, -3.46788, -5.55246, -8.68384,
    -14.65000,
];
const VARS: [f64; 10] = [
    0.11265, 0.17788, 0.26768, 0.40611, 0.62699, 0.98583, 1.57469, 2.54498, 4.16591, 7.33342,
];

impl OmoriTable {
    pub fn standard() -> Self {
        let mut components = [OmoriComponent {
            prob: 0.0,
            mean: 0.0,
            var: 0.0,
        }; 10];
        for i in 0..10 {
            components[i] = OmoriComponent {
                prob: PROBS[i],
                mean: MEANS[i],
                var: VARS[i],
            };
        }
        Self { components }
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn component(&self, s: usize) -> &OmoriComponent {
        &self.components[s]
    }

    pub fn components(&self) -> &[OmoriComponent] {
        &self.components
    }
}

impl Default for OmoriTable {
    fn default() -> Self {
        Self::standard()
    }
}
