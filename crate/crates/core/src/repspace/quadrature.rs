//! Quadrature backend: closed-form states evaluated on tensor
//! Gauss–Legendre nodes. Used for nonabelian groups, where lattice shifts
//! are unavailable.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::nilpotent::{FunctionSpaceBasis, LieAlgebraSpec, SemidirectElement};
use crate::poly::{PolyVector, Polynomial};
use crate::scalar::pairwise_sum;

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            if n == 1 {
                p1 = x;
                p0 = 1.0;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Tensor-product rule on `[-b, b]^dim`; points in row-major order.
#[derive(Clone, Debug)]
pub struct TensorRule {
    pub dim: usize,
    pub axis_nodes: Vec<f64>,
    pub axis_weights: Vec<f64>,
}

impl TensorRule {
    pub fn new(dim: usize, nodes: usize, half_width: f64) -> Self {
        let (x, w) = gauss_legendre(nodes);
        Self {
            dim,
            axis_nodes: x.iter().map(|v| v * half_width).collect(),
            axis_weights: w.iter().map(|v| v * half_width).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.axis_nodes.len().pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn point(&self, flat: usize) -> (Vec<f64>, f64) {
        let n = self.axis_nodes.len();
        let mut x = vec![0.0; self.dim];
        let mut w = 1.0;
        let mut r = flat;
        for a in (0..self.dim).rev() {
            x[a] = self.axis_nodes[r % n];
            w *= self.axis_weights[r % n];
            r /= n;
        }
        (x, w)
    }
}

/// A state given in closed form.
#[derive(Clone, Debug)]
pub enum StateExpr {
    /// `exp(−Σ (x_a − c_a)²/(2σ_a²))`
    Gaussian { center: Vec<f64>, sigma: Vec<f64> },
    Poly(Polynomial<f64>),
    /// `exp(i p(x))`
    Phase(Polynomial<f64>),
    Scale(Complex64, Box<StateExpr>),
    Product(Vec<StateExpr>),
    Sum(Vec<StateExpr>),
    /// `f(σ(x))`
    Compose(Box<StateExpr>, PolyVector<f64>),
}

impl StateExpr {
    pub fn eval(&self, x: &[f64]) -> Complex64 {
        match self {
            StateExpr::Gaussian { center, sigma } => {
                let e: f64 = x.iter().zip(center).zip(sigma).map(|((xi, c), s)| (xi - c) * (xi - c) / (2.0 * s * s)).sum();
                Complex64::new((-e).exp(), 0.0)
            }
            StateExpr::Poly(p) => Complex64::new(p.eval_unchecked(x), 0.0),
            StateExpr::Phase(p) => Complex64::from_polar(1.0, p.eval_unchecked(x)),
            StateExpr::Scale(c, f) => c * f.eval(x),
            StateExpr::Product(fs) => fs.iter().fold(Complex64::new(1.0, 0.0), |acc, f| acc * f.eval(x)),
            StateExpr::Sum(fs) => fs.iter().fold(Complex64::new(0.0, 0.0), |acc, f| acc + f.eval(x)),
            StateExpr::Compose(f, sigma) => {
                let y: Vec<f64> = sigma.components().iter().map(|p| p.eval_unchecked(x)).collect();
                f.eval(&y)
            }
        }
    }

    /// Gaussian with a linear momentum phase `e^{i p·x}`.
    pub fn wave_packet(center: &[f64], sigma: &[f64], momentum: &[f64]) -> Self {
        let d = center.len();
        let mut phase = Polynomial::zero(d);
        for (a, &p) in momentum.iter().enumerate() {
            phase = &phase + &Polynomial::var(d, a).scale(&p);
        }
        StateExpr::Product(vec![
            StateExpr::Gaussian { center: center.to_vec(), sigma: sigma.to_vec() },
            StateExpr::Phase(phase),
        ])
    }

    pub fn scaled(self, c: Complex64) -> Self {
        StateExpr::Scale(c, Box::new(self))
    }
}

#[derive(Clone, Debug)]
pub struct QuadratureSpec {
    dim: usize,
    nodes: usize,
    half_width: f64,
    epsilon: f64,
    rule: TensorRule,
}

impl QuadratureSpec {
    pub fn new(dim: usize, nodes: usize, half_width: f64, epsilon: f64) -> Result<Self> {
        if dim == 0 || nodes == 0 {
            return Err(Error::Grid("quadrature needs at least one axis and one node".into()));
        }
        if !(half_width > 0.0) {
            return Err(Error::Grid("quadrature box must have positive width".into()));
        }
        if epsilon == 0.0 || !epsilon.is_finite() {
            return Err(Error::ZeroEpsilon);
        }
        Ok(Self { dim, nodes, half_width, epsilon, rule: TensorRule::new(dim, nodes, half_width) })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn rule(&self) -> &TensorRule {
        &self.rule
    }

    /// Values of `f` at the nodes, row-major.
    pub fn values(&self, f: &StateExpr) -> Vec<Complex64> {
        (0..self.rule.len()).map(|i| f.eval(&self.rule.point(i).0)).collect()
    }

    pub fn inner(&self, f: &StateExpr, g: &StateExpr) -> Complex64 {
        pairwise_sum(self.rule.len(), &|i| {
            let (x, w) = self.rule.point(i);
            f.eval(&x) * g.eval(&x).conj() * w
        })
    }

    pub fn norm(&self, f: &StateExpr) -> f64 {
        self.inner(f, f).re.sqrt()
    }

    /// `π(φ, g) f = e^{iεφ} f((−g)∗·)`, any real `g`.
    pub fn apply_rep(
        &self,
        alg: &LieAlgebraSpec,
        f_space: &FunctionSpaceBasis,
        m: &SemidirectElement,
        f: &StateExpr,
    ) -> Result<StateExpr> {
        if alg.dim() != self.dim {
            return Err(Error::Dimension { expected: self.dim, got: alg.dim() });
        }
        if !f_space.contains(&m.phi) {
            return Err(Error::NotInSpace);
        }
        let g: Vec<f64> = m.x.iter().map(|c| -crate::Coeff::approx_f64(c)).collect();
        let phase = m.phi.to_real::<f64>().scale(&self.epsilon);
        Ok(StateExpr::Product(vec![
            StateExpr::Phase(phase),
            StateExpr::Compose(Box::new(f.clone()), left_translation_map(alg, &g)),
        ]))
    }
}

/// `x ↦ a∗x` as a float polynomial map in `dim` variables.
pub fn left_translation_map(alg: &LieAlgebraSpec, a: &[f64]) -> PolyVector<f64> {
    let law = alg.group_law_map().to_real::<f64>();
    law.map(|p| {
        let mut q = p.clone();
        for v in a {
            q = q.substitute_var(0, v)?;
        }
        Ok(q)
    })
    .expect("law arity")
}
