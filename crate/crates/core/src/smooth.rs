//! Intensional learners on real vector spaces, their duals, and the gradient
//! descent neuron.
//!
//! A learner `(A, A') ⇸ (B, B')` has a parameter vector `p` and maps
//! `I(p, a) ∈ B`, `U(p, a, b') ∈ P` and `r(p, a, b') ∈ A'`. The dual has
//! parameter `(p, p_a)` and boundary `(B', B) ⇸ (A', A)`:
//!
//! ```text
//! I*((p, p_a), b')    = r(p, p_a, b')
//! U*((p, p_a), b', a) = (U(p, p_a, b'), a)
//! r*((p, p_a), b', a) = I(U(p, p_a, b'), a)
//! ```
//!
//! Each side of these equations runs the same floating point operations, so
//! identities between a learner and its iterated duals hold bitwise.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

type Implement = Arc<dyn Fn(&[f64], &[f64]) -> Vec<f64> + Send + Sync>;
type Step = Arc<dyn Fn(&[f64], &[f64], &[f64]) -> Vec<f64> + Send + Sync>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dims {
    pub p: usize,
    pub a: usize,
    pub a_prime: usize,
    pub b: usize,
    pub b_prime: usize,
}

#[derive(Clone)]
pub struct SmoothLearner {
    dims: Dims,
    implement: Implement,
    update: Step,
    request: Step,
}

impl fmt::Debug for SmoothLearner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SmoothLearner").field("dims", &self.dims).finish_non_exhaustive()
    }
}

fn check(context: &'static str, expected: usize, v: &[f64]) -> Result<()> {
    if v.len() == expected {
        Ok(())
    } else {
        Err(Error::Dimension {
            context,
            expected,
            found: v.len(),
        })
    }
}

impl SmoothLearner {
    /// Builds a learner from its three maps. The maps are trusted to return
    /// vectors of the declared dimensions on inputs of the declared
    /// dimensions.
    pub fn new(
        dims: Dims,
        implement: impl Fn(&[f64], &[f64]) -> Vec<f64> + Send + Sync + 'static,
        update: impl Fn(&[f64], &[f64], &[f64]) -> Vec<f64> + Send + Sync + 'static,
        request: impl Fn(&[f64], &[f64], &[f64]) -> Vec<f64> + Send + Sync + 'static,
    ) -> Self {
        SmoothLearner {
            dims,
            implement: Arc::new(implement),
            update: Arc::new(update),
            request: Arc::new(request),
        }
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn implement(&self, p: &[f64], a: &[f64]) -> Result<Vec<f64>> {
        check("parameter", self.dims.p, p)?;
        check("forward input", self.dims.a, a)?;
        Ok((self.implement)(p, a))
    }

    pub fn update(&self, p: &[f64], a: &[f64], b_prime: &[f64]) -> Result<Vec<f64>> {
        check("parameter", self.dims.p, p)?;
        check("forward input", self.dims.a, a)?;
        check("feedback", self.dims.b_prime, b_prime)?;
        Ok((self.update)(p, a, b_prime))
    }

    pub fn request(&self, p: &[f64], a: &[f64], b_prime: &[f64]) -> Result<Vec<f64>> {
        check("parameter", self.dims.p, p)?;
        check("forward input", self.dims.a, a)?;
        check("feedback", self.dims.b_prime, b_prime)?;
        Ok((self.request)(p, a, b_prime))
    }
}

/// The dual learner `(B', B) ⇸ (A', A)` with parameter `p ++ p_a`.
pub fn dual_smooth(m: &SmoothLearner) -> SmoothLearner {
    let d = m.dims;
    let split = move |s: &[f64]| -> (Vec<f64>, Vec<f64>) { (s[..d.p].to_vec(), s[d.p..].to_vec()) };
    let (u1, u2, i2) = (m.update.clone(), m.update.clone(), m.implement.clone());
    let r = m.request.clone();
    SmoothLearner::new(
        Dims {
            p: d.p + d.a,
            a: d.b_prime,
            a_prime: d.b,
            b: d.a_prime,
            b_prime: d.a,
        },
        move |s, b_prime| {
            let (p, pa) = split(s);
            r(&p, &pa, b_prime)
        },
        move |s, b_prime, a| {
            let (p, pa) = split(s);
            let mut next = u1(&p, &pa, b_prime);
            next.extend_from_slice(a);
            next
        },
        move |s, b_prime, a| {
            let (p, pa) = split(s);
            i2(&u2(&p, &pa, b_prime), a)
        },
    )
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StreamStep {
    /// `I(p_t, a_t)`.
    pub output: Vec<f64>,
    /// `p_{t+1} = U(p_t, a_t, b'_t)`.
    pub state: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StreamRun {
    pub steps: Vec<StreamStep>,
    pub final_state: Vec<f64>,
}

/// Feeds `data` to `m` starting from `p0`.
pub fn run_stream(m: &SmoothLearner, p0: &[f64], data: &[(Vec<f64>, Vec<f64>)]) -> Result<StreamRun> {
    check("initial parameter", m.dims.p, p0)?;
    let mut p = p0.to_vec();
    let mut steps = Vec::with_capacity(data.len());
    for (a, b_prime) in data {
        let output = m.implement(&p, a)?;
        p = m.update(&p, a, b_prime)?;
        steps.push(StreamStep {
            output,
            state: p.clone(),
        });
    }
    Ok(StreamRun {
        steps,
        final_state: p,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Activation {
    Identity,
    Logistic,
}

impl Activation {
    pub fn apply(self, z: f64) -> f64 {
        match self {
            Activation::Identity => z,
            Activation::Logistic => 1.0 / (1.0 + (-z).exp()),
        }
    }

    pub fn derivative(self, z: f64) -> f64 {
        match self {
            Activation::Identity => 1.0,
            Activation::Logistic => {
                let s = self.apply(z);
                s * (1.0 - s)
            }
        }
    }
}

impl std::str::FromStr for Activation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "identity" => Ok(Activation::Identity),
            "logistic" => Ok(Activation::Logistic),
            other => Err(Error::Invalid(format!("unknown activation `{other}`"))),
        }
    }
}

/// Step size of the request map of [`neuron`].
pub const REQUEST_STEP: f64 = 1.0;

/// A single neuron `ŷ = σ(⟨w, a⟩ + c)` with parameter `p = (w, c)`, trained on
/// the squared loss `L = ½ (ŷ − y)²` where the feedback `b' = y` is the target.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Neuron {
    pub input_dim: usize,
    pub step: f64,
    pub activation: Activation,
}

impl Neuron {
    fn pre_activation(&self, p: &[f64], a: &[f64]) -> f64 {
        let n = self.input_dim;
        p[..n].iter().zip(a).map(|(w, x)| w * x).sum::<f64>() + p[n]
    }

    pub fn predict(&self, p: &[f64], a: &[f64]) -> f64 {
        self.activation.apply(self.pre_activation(p, a))
    }

    pub fn loss(&self, p: &[f64], a: &[f64], y: f64) -> f64 {
        let e = self.predict(p, a) - y;
        0.5 * e * e
    }

    /// `(∂L/∂p, ∂L/∂a)`.
    pub fn gradients(&self, p: &[f64], a: &[f64], y: f64) -> (Vec<f64>, Vec<f64>) {
        let n = self.input_dim;
        let z = self.pre_activation(p, a);
        let delta = (self.activation.apply(z) - y) * self.activation.derivative(z);
        let mut gp: Vec<f64> = a.iter().map(|x| delta * x).collect();
        gp.push(delta);
        let ga = p[..n].iter().map(|w| delta * w).collect();
        (gp, ga)
    }

    /// `U(p, a, y) = p − ε ∂L/∂p` and `r(p, a, y) = a − REQUEST_STEP · ∂L/∂a`.
    pub fn learner(self) -> SmoothLearner {
        let n = self.input_dim;
        SmoothLearner::new(
            Dims {
                p: n + 1,
                a: n,
                a_prime: n,
                b: 1,
                b_prime: 1,
            },
            move |p, a| vec![self.predict(p, a)],
            move |p, a, y| {
                let (gp, _) = self.gradients(p, a, y[0]);
                p.iter().zip(gp).map(|(x, g)| x - self.step * g).collect()
            },
            move |p, a, y| {
                let (_, ga) = self.gradients(p, a, y[0]);
                a.iter().zip(ga).map(|(x, g)| x - REQUEST_STEP * g).collect()
            },
        )
    }
}

/// The neuron learner; `step` must be non-negative and finite.
pub fn neuron(input_dim: usize, step: f64, activation: Activation) -> Result<SmoothLearner> {
    if !(step >= 0.0 && step.is_finite()) {
        return Err(Error::Invalid(format!("step size {step} must be non-negative")));
    }
    Ok(Neuron {
        input_dim,
        step,
        activation,
    }
    .learner())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_step_keeps_parameters() {
        let m = neuron(2, 0.0, Activation::Logistic).unwrap();
        let p = [0.3, -0.7, 0.1];
        assert_eq!(m.update(&p, &[1.0, 2.0], &[0.5]).unwrap(), p);
    }

    #[test]
    fn bias_only_on_zero_input() {
        let m = neuron(3, 0.1, Activation::Identity).unwrap();
        assert_eq!(m.implement(&[5.0, 6.0, 7.0, 0.25], &[0.0; 3]).unwrap(), [0.25]);
    }

    #[test]
    fn dimension_errors() {
        let m = neuron(2, 0.1, Activation::Identity).unwrap();
        assert_eq!(
            m.implement(&[0.0; 3], &[0.0; 3]).unwrap_err(),
            Error::Dimension {
                context: "forward input",
                expected: 2,
                found: 3
            }
        );
        assert!(neuron(2, -1.0, Activation::Identity).is_err());
        assert!(neuron(2, f64::NAN, Activation::Identity).is_err());
    }

    #[test]
    fn dual_dims() {
        let m = neuron(3, 0.1, Activation::Logistic).unwrap();
        let d = dual_smooth(&m);
        assert_eq!(
            d.dims(),
            Dims {
                p: 7,
                a: 1,
                a_prime: 1,
                b: 3,
                b_prime: 3
            }
        );
        assert_eq!(dual_smooth(&d).dims().p, 4 + 3 + 1);
    }
}
