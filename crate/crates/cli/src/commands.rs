use ssfrenet_core::frenet::{self, classify_samples, sample_grid};
use ssfrenet_core::geodesic::{
    fit_riccati, h3_first_integrals, integrate, riccati_defect, speed_squared, E3GeodesicParams,
    GeodesicSample, GeodesicState, H3GeodesicParams, Trajectory,
};
use ssfrenet_core::grid::SampleGrid;
use ssfrenet_core::{parse_curve, Error, Manifold, ModelId};

use crate::args::{CurveArgs, GeodesicArgs, Mode};
use crate::output::{
    emit_classification, emit_frames, emit_trajectory, ClassifyRecord, FrameRecord,
    TrajectoryRecord,
};
use crate::range::parse_range;
use crate::CliError;

pub fn frame(args: &CurveArgs) -> Result<(), CliError> {
    let grid = parse_range(&args.range)?;
    let curve = parse_curve(&args.curve)?;
    let model = Manifold::new(args.manifold);
    let samples = sample_grid(&model, &curve, &grid, &args.tol.tolerances())?;
    let records: Vec<FrameRecord> = samples.iter().map(FrameRecord::from).collect();
    emit_frames(args.out.format, args.out.output.as_deref(), &records)
}

pub fn classify(args: &CurveArgs) -> Result<(), CliError> {
    let grid = parse_range(&args.range)?;
    let curve = parse_curve(&args.curve)?;
    let model = Manifold::new(args.manifold);
    let tols = args.tol.tolerances();
    let samples = sample_grid(&model, &curve, &grid, &tols)?;
    let class = classify_samples(&samples, &tols);
    emit_classification(
        args.out.format,
        args.out.output.as_deref(),
        &ClassifyRecord::from(&class),
    )
}

/// The closed-form family selected by `--manifold` and `--c`.
enum ClosedForm {
    E3(E3GeodesicParams),
    H3(H3GeodesicParams),
}

impl ClosedForm {
    fn from_args(args: &GeodesicArgs) -> Result<Self, CliError> {
        let c = args.c.as_deref().ok_or_else(|| {
            CliError::Usage(format!("{} closed form needs --c", args.manifold.as_str()))
        })?;
        match args.manifold {
            ModelId::E3 => {
                let c: [f64; 6] = c.try_into().map_err(|_| {
                    CliError::Usage(format!("e3 needs six constants c1..c6, got {}", c.len()))
                })?;
                Ok(Self::E3(E3GeodesicParams::new(c)?))
            }
            ModelId::H3m1 => {
                let &[c1, c2, c3] = c else {
                    return Err(CliError::Usage(format!(
                        "h3m1 needs three constants c1,c2,c3, got {}",
                        c.len()
                    )));
                };
                Ok(Self::H3(H3GeodesicParams::new(c1, c2, c3, args.k, args.l)?))
            }
            ModelId::R3m3 => Err(CliError::Usage(
                "r3m3 has no closed-form trajectory, only the Riccati integral of the \
                 vertical component; use `integrate` or `verify` with --pos/--vel"
                    .into(),
            )),
        }
    }

    fn state(&self, s: f64) -> Result<GeodesicState, Error> {
        match self {
            Self::E3(p) => GeodesicState::of_curve(&p.curve(), s),
            Self::H3(p) => GeodesicState::of_curve(&p.curve(), s),
        }
    }

    fn defect(&self, model: &Manifold, s: f64) -> Result<f64, Error> {
        match self {
            Self::E3(p) => frenet::raw_defect(model, &p.curve(), s),
            Self::H3(p) => frenet::raw_defect(model, &p.curve(), s),
        }
    }

    /// Samples on the grid, failing with the speed extremes if any point is
    /// off unit speed.
    fn sample(
        &self,
        model: &Manifold,
        points: &[f64],
        speed_tol: f64,
    ) -> Result<Vec<GeodesicSample>, Error> {
        let mut out = Vec::with_capacity(points.len());
        let mut bad = None;
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for &s in points {
            let state = self.state(s)?;
            let speed = speed_squared(model, &state)?.sqrt();
            lo = lo.min(speed);
            hi = hi.max(speed);
            if bad.is_none() && !((speed * speed - 1.0).abs() <= speed_tol) {
                bad = Some((s, speed));
            }
            out.push(GeodesicSample {
                s,
                state,
                residual: self.defect(model, s)?,
            });
        }
        if let Some((s, speed)) = bad {
            return Err(Error::NotUnitSpeed {
                s,
                speed,
                min_speed: lo,
                max_speed: hi,
            });
        }
        Ok(out)
    }
}

fn vec3(v: &Option<Vec<f64>>, flag: &str) -> Result<Option<[f64; 3]>, CliError> {
    v.as_deref()
        .map(|v| {
            v.try_into().map_err(|_| {
                CliError::Usage(format!("--{flag} needs three values, got {}", v.len()))
            })
        })
        .transpose()
}

fn initial_state(args: &GeodesicArgs, grid: &SampleGrid) -> Result<GeodesicState, CliError> {
    match (vec3(&args.pos, "pos")?, vec3(&args.vel, "vel")?) {
        (Some(p), Some(v)) => Ok(GeodesicState::new(p, v)),
        (None, None) if args.c.is_some() => Ok(ClosedForm::from_args(args)?.state(grid.start)?),
        _ => Err(CliError::Usage(
            "integrate needs both --pos and --vel (or --c for a closed-form start)".into(),
        )),
    }
}

fn report_trajectory(model: &Manifold, traj: &Trajectory) -> Result<(), CliError> {
    eprintln!("max residual      {:.3e}", traj.max_residual);
    eprintln!("max speed drift   {:.3e}", traj.max_drift);
    match model.id() {
        ModelId::R3m3 => {
            let fit = fit_riccati(traj)?;
            eprintln!("riccati c1        {:.15}", fit.c1);
            eprintln!("riccati fit error {:.3e}", fit.sup_error);
            eprintln!("riccati defect    {:.3e}", riccati_defect(traj));
        }
        ModelId::H3m1 => {
            let (a0, b0) = h3_first_integrals(&traj.samples[0].state);
            let drift = traj
                .samples
                .iter()
                .map(|x| {
                    let (a, b) = h3_first_integrals(&x.state);
                    (a - a0).abs().max((b - b0).abs())
                })
                .fold(0.0, f64::max);
            eprintln!("first integrals   ({a0:.12}, {b0:.12}), drift {drift:.3e}");
        }
        ModelId::E3 => {}
    }
    Ok(())
}

pub fn geodesic(args: &GeodesicArgs) -> Result<(), CliError> {
    let grid = parse_range(&args.range)?;
    let model = Manifold::new(args.manifold);
    let samples = match args.mode {
        Mode::Integrate => {
            let y0 = initial_state(args, &grid)?;
            let traj = integrate(&model, grid.start, y0, grid.end, grid.step, args.tol_speed)?;
            report_trajectory(&model, &traj)?;
            traj.samples
        }
        Mode::ClosedForm => {
            let cf = ClosedForm::from_args(args)?;
            let points: Vec<f64> = grid.points().collect();
            let samples = cf.sample(&model, &points, args.tol_speed)?;
            let worst = samples.iter().map(|x| x.residual).fold(0.0, f64::max);
            eprintln!("max residual      {worst:.3e}");
            samples
        }
        Mode::Verify if args.manifold == ModelId::R3m3 => {
            let y0 = initial_state(args, &grid)?;
            let traj = integrate(&model, grid.start, y0, grid.end, grid.step, args.tol_speed)?;
            report_trajectory(&model, &traj)?;
            traj.samples
        }
        Mode::Verify => {
            let cf = ClosedForm::from_args(args)?;
            let y0 = cf.state(grid.start)?;
            let traj = integrate(&model, grid.start, y0, grid.end, grid.step, args.tol_speed)?;
            let points: Vec<f64> = traj.samples.iter().map(|x| x.s).collect();
            let closed = cf.sample(&model, &points, args.tol_speed)?;
            let gap = closed
                .iter()
                .zip(&traj.samples)
                .flat_map(|(a, b)| {
                    (0..3).map(move |k| (a.state.position[k] - b.state.position[k]).abs())
                })
                .fold(0.0, f64::max);
            let worst = closed.iter().map(|x| x.residual).fold(0.0, f64::max);
            eprintln!("max residual      {worst:.3e}");
            eprintln!("max gap           {gap:.3e}");
            report_trajectory(&model, &traj)?;
            closed
        }
    };
    let records: Vec<TrajectoryRecord> = samples.iter().map(TrajectoryRecord::from).collect();
    emit_trajectory(args.out.format, args.out.output.as_deref(), &records)
}
