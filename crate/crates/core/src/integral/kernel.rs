/// Pointwise kernel `b(t, z, s)` together with its growth data `f(t, z)` and
/// `M` for the bound `|b(t, z, s)| ≤ f(t, z) + M |s|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelSpec {
    /// `b = f_scale·t·z + m·σ(max(s, 0))` with `σ(s) = 1 - 1/(1 + s)`;
    /// growth `f = f_scale·t·z + m`.
    Saturating { m: f64, f_scale: f64 },
    /// `b = slope·max(s, 0)`; growth `f ≡ 0`, `M = slope`.
    Linear { slope: f64 },
    Zero,
}

impl Default for KernelSpec {
    fn default() -> Self {
        KernelSpec::Saturating {
            m: 0.4,
            f_scale: 1.0,
        }
    }
}

impl KernelSpec {
    pub fn name(&self) -> &'static str {
        match self {
            KernelSpec::Saturating { .. } => "saturating",
            KernelSpec::Linear { .. } => "linear",
            KernelSpec::Zero => "zero",
        }
    }

    pub fn eval(&self, t: f64, z: f64, s: f64) -> f64 {
        match *self {
            // 1 - 1/(1+s) is a composition of monotone correctly rounded
            // operations, so it is nondecreasing in s in floating point too.
            KernelSpec::Saturating { m, f_scale } => {
                f_scale * t * z + m * (1.0 - 1.0 / (1.0 + s.max(0.0)))
            }
            KernelSpec::Linear { slope } => slope * s.max(0.0),
            KernelSpec::Zero => 0.0,
        }
    }

    /// The growth function `f(t, z)`.
    pub fn growth(&self, t: f64, z: f64) -> f64 {
        match *self {
            KernelSpec::Saturating { m, f_scale } => f_scale * t * z + m,
            KernelSpec::Linear { .. } | KernelSpec::Zero => 0.0,
        }
    }

    /// The growth constant `M`.
    pub fn growth_constant(&self) -> f64 {
        match *self {
            KernelSpec::Saturating { m, .. } => m,
            KernelSpec::Linear { slope } => slope,
            KernelSpec::Zero => 0.0,
        }
    }
}
