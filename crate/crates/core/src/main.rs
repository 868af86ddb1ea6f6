//! Command line front end. Point sets travel as JSON so the subcommands
//! compose: `manistat sample ... | manistat mean`.

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use manistat::manifold::{from_spec, Manifold};
use manistat::{diff, envelope, mean, median, sampling, stats};
use nalgebra::DVector;
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};
use serde_json::json;
use std::io::Read as _;

#[derive(Parser)]
#[command(
    name = "manistat",
    version,
    about = "Statistics on spheres and flat tori"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SampleMethod {
    /// Uniform random points.
    Random,
    /// Spherical Fibonacci lattice (sphere:3 only).
    Fibonacci,
    /// Kronecker lattice with the generalized golden ratio (torus only).
    Golden,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a point set on a manifold.
    Sample {
        /// Manifold spec: sphere:N (ambient dim), torus:D, torus:L1,L2,..., circle.
        #[arg(short, long)]
        manifold: String,
        /// Number of points.
        #[arg(short = 'n', long)]
        count: usize,
        #[arg(long, value_enum, default_value_t = SampleMethod::Random)]
        method: SampleMethod,
        /// RNG seed for --method random.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Fréchet mean of a point set (JSON on stdin or --input).
    Mean {
        #[arg(short, long, default_value = "-")]
        input: String,
    },
    /// Geometric median of a point set.
    Median {
        #[arg(short, long, default_value = "-")]
        input: String,
    },
    /// Circular summary of angles, plus a wrapped normal moment fit when
    /// the resultant allows one. Accepts a bare JSON array of angles or a
    /// one-dimensional torus point set as produced by `sample`.
    Summary {
        #[arg(short, long, default_value = "-")]
        input: String,
        /// Period the angles live on. A point set's own period wins.
        #[arg(long, default_value_t = std::f64::consts::TAU)]
        period: f64,
    },
    /// Quadratic envelope of the Fréchet functional around the mean.
    Envelope {
        #[arg(short, long, default_value = "-")]
        input: String,
        /// Geodesic ball radius; defaults to half the injectivity radius.
        #[arg(long)]
        radius: Option<f64>,
        /// Directions per shell.
        #[arg(long, default_value_t = 32)]
        dirs: usize,
        /// Radial shells.
        #[arg(long, default_value_t = 4)]
        shells: usize,
    },
    /// Compare the analytic Fréchet gradient and Hessian diagonal against
    /// Richardson-extrapolated finite differences.
    Gradcheck {
        #[arg(short, long, default_value = "-")]
        input: String,
    },
}

/// On-disk point set. `weights` defaults to uniform.
#[derive(Serialize, Deserialize)]
struct PointSet {
    manifold: String,
    points: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weights: Option<Vec<f64>>,
}

fn read_input(input: &str) -> Result<String> {
    if input == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .context("reading stdin")?;
        Ok(buf)
    } else {
        std::fs::read_to_string(input).with_context(|| format!("reading {input}"))
    }
}

type LoadedSet = (Box<dyn Manifold>, Vec<DVector<f64>>, Vec<f64>);

fn load_point_set(input: &str) -> Result<LoadedSet> {
    let text = read_input(input)?;
    let set: PointSet = serde_json::from_str(&text).context("parsing point set JSON")?;
    let manifold = from_spec(&set.manifold)?;
    let mut points = Vec::with_capacity(set.points.len());
    for (i, coords) in set.points.iter().enumerate() {
        let p = DVector::from_row_slice(coords);
        // Tolerate hand-written coordinates that are slightly off-manifold.
        let p = manifold
            .project(&p)
            .with_context(|| format!("point {i} cannot be projected onto {}", set.manifold))?;
        points.push(p);
    }
    let weights = set.weights.unwrap_or_else(|| vec![1.0; points.len()]);
    Ok((manifold, points, weights))
}

fn emit(value: &serde_json::Value) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn vec_of(v: &DVector<f64>) -> Vec<f64> {
    v.iter().cloned().collect()
}

fn run_sample(spec: &str, count: usize, method: SampleMethod, seed: u64) -> Result<()> {
    let manifold = from_spec(spec)?;
    let points = match method {
        SampleMethod::Random => {
            let mut rng = StdRng::seed_from_u64(seed);
            sampling::random_points(manifold.as_ref(), count, &mut rng)
        }
        SampleMethod::Fibonacci => {
            if manifold.ambient_dim() != 3 || manifold.dim() != 2 {
                bail!("the Fibonacci lattice is defined on sphere:3");
            }
            sampling::fibonacci_sphere(count)
        }
        SampleMethod::Golden => {
            let torus = manifold
                .as_torus()
                .context("the golden lattice is defined on tori")?;
            sampling::golden_lattice(torus, count)
        }
    };
    let set = PointSet {
        manifold: spec.to_string(),
        points: points.iter().map(vec_of).collect(),
        weights: None,
    };
    emit(&serde_json::to_value(&set)?)
}

fn run_mean(input: &str) -> Result<()> {
    let (manifold, points, weights) = load_point_set(input)?;
    let r = mean::frechet_mean_weighted(
        manifold.as_ref(),
        &points,
        &weights,
        &mean::FrechetMeanConfig::default(),
    )?;
    emit(&json!({
        "mean": vec_of(&r.mean),
        "variance": r.variance,
        "grad_norm": r.grad_norm,
        "iterations": r.iterations,
        "converged": r.converged,
    }))
}

fn run_median(input: &str) -> Result<()> {
    let (manifold, points, weights) = load_point_set(input)?;
    let r = median::geometric_median_weighted(
        manifold.as_ref(),
        &points,
        &weights,
        &median::MedianConfig::default(),
    )?;
    emit(&json!({
        "median": vec_of(&r.median),
        "objective": r.objective,
        "iterations": r.iterations,
        "converged": r.converged,
    }))
}

fn run_summary(input: &str, period: f64) -> Result<()> {
    let text = read_input(input)?;
    let (angles, period): (Vec<f64>, f64) = match serde_json::from_str::<Vec<f64>>(&text) {
        Ok(a) => (a, period),
        Err(_) => {
            let set: PointSet = serde_json::from_str(&text)
                .context("parsing angles: neither a JSON array nor a point set")?;
            let manifold = from_spec(&set.manifold)?;
            let torus = manifold
                .as_torus()
                .filter(|t| t.dim() == 1)
                .with_context(|| {
                    format!("summary needs angles on a circle, got {}", set.manifold)
                })?;
            if set.points.iter().any(|p| p.len() != 1) {
                bail!("summary needs one coordinate per point");
            }
            (
                set.points.iter().map(|p| p[0]).collect(),
                torus.periods()[0],
            )
        }
    };
    let s = stats::circular_summary(&angles, period)?;
    let fit = stats::WrappedNormal::fit_moments(&angles, period).ok();
    emit(&json!({
        "n": s.n,
        "mean_direction": s.mean_direction,
        "resultant_length": s.resultant_length,
        "circular_variance": s.circular_variance,
        "circular_std": s.circular_std,
        "wrapped_normal_fit": fit.map(|w| json!({"mu": w.mu(), "sigma": w.sigma()})),
    }))
}

fn run_envelope(input: &str, radius: Option<f64>, dirs: usize, shells: usize) -> Result<()> {
    let (manifold, points, weights) = load_point_set(input)?;
    let radius = radius.unwrap_or_else(|| 0.5 * manifold.injectivity_radius());
    let e = envelope::frechet_envelope(manifold.as_ref(), &points, &weights, radius, dirs, shells)?;
    emit(&json!({
        "mean": vec_of(&e.mean),
        "value_at_mean": e.value_at_mean,
        "radius": e.radius,
        "hessian_eigenvalues": e.hessian_eigenvalues,
        "alpha": e.bounds.alpha,
        "beta": e.bounds.beta,
        "fitted_gradient_norm": e.fitted_gradient_norm,
        "rms_residual": e.fit.rms_residual,
        "psd_constraint_active": e.fit.constraint_active,
    }))
}

fn run_gradcheck(input: &str) -> Result<()> {
    let (manifold, points, weights) = load_point_set(input)?;
    let x = manifold.extrinsic_mean_estimate(&points, &weights)?;
    let analytic = mean::frechet_gradient(manifold.as_ref(), &x, &points, &weights)?;
    let f = |p: &DVector<f64>| {
        mean::frechet_functional(manifold.as_ref(), p, &points, &weights)
            .expect("functional is defined off the cut locus")
    };
    let numeric = diff::numerical_gradient(manifold.as_ref(), &f, &x, None)?;
    let diff_norm = (&analytic - &numeric).norm();
    let hess = diff::numerical_hessian(manifold.as_ref(), &f, &x, None)?;
    emit(&json!({
        "at": vec_of(&x),
        "analytic_grad_norm": analytic.norm(),
        "numeric_grad_norm": numeric.norm(),
        "grad_difference_norm": diff_norm,
        "hessian_diagonal": (0..hess.nrows()).map(|i| hess[(i, i)]).collect::<Vec<f64>>(),
    }))
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Sample {
            manifold,
            count,
            method,
            seed,
        } => run_sample(&manifold, count, method, seed),
        Command::Mean { input } => run_mean(&input),
        Command::Median { input } => run_median(&input),
        Command::Summary { input, period } => run_summary(&input, period),
        Command::Envelope {
            input,
            radius,
            dirs,
            shells,
        } => run_envelope(&input, radius, dirs, shells),
        Command::Gradcheck { input } => run_gradcheck(&input),
    }
}
