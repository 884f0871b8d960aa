//! Seeded verification suites behind `cusphere verify`.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::closed_form::{
    embed_complex, generator_u3, group_matrix, group_matrix_ce, group_matrix_from_args,
    group_matrix_u3, row_sum_identity, spherical_args, verify_spectrum, DEGENERATE_RADIUS,
};
use crate::dynamics::{
    plane_orbit, quadrature_check, quarter_turn_progression, rotate, trajectory, Axis, Plane,
    QuadratureDim, SixVector, Slot,
};
use crate::generators::{
    commutators_antisymmetric, generator, generator_ce, lie_axiom_check, verify_commutator_table,
    Angles, ScaleParams,
};
use crate::group::{
    basis_matrix, cayley_mismatches, cayley_table, enumerate_group, multiply, reduce_word,
    relation_audit, rot2_hyperbolic, rot2_reference, Label, Mat6, SignedElement,
};
use crate::numerics::{det, expm, residual_orthogonal, residual_unitary, spectral_norm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Group,
    Algebra,
    Closedform,
    U3,
    Dynamics,
    All,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Group => "group",
            Suite::Algebra => "algebra",
            Suite::Closedform => "closedform",
            Suite::U3 => "u3",
            Suite::Dynamics => "dynamics",
            Suite::All => "all",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Bound {
    AtMost(f64),
    Above(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckLine {
    pub suite: &'static str,
    pub property: String,
    pub value: f64,
    pub bound: Bound,
}

impl CheckLine {
    pub fn passed(&self) -> bool {
        match self.bound {
            Bound::AtMost(b) => self.value <= b,
            Bound::Above(b) => self.value > b,
        }
    }
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bound = match self.bound {
            Bound::AtMost(b) => format!("<= {b:.1e}"),
            Bound::Above(b) => format!(">  {b:.1e}"),
        };
        write!(
            f,
            "[{:<10}] {:<44} {:>11.3e}  {:<10} {}",
            self.suite,
            self.property,
            self.value,
            bound,
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub checks: Vec<CheckLine>,
    /// Informational lines (relation audit etc.), printed before the checks.
    pub notes: Vec<String>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(CheckLine::passed)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed()).count()
    }

    fn at_most(&mut self, suite: Suite, property: impl Into<String>, value: f64, bound: f64) {
        self.checks.push(CheckLine {
            suite: suite.name(),
            property: property.into(),
            value,
            bound: Bound::AtMost(bound),
        });
    }

    fn above(&mut self, suite: Suite, property: impl Into<String>, value: f64, bound: f64) {
        self.checks.push(CheckLine {
            suite: suite.name(),
            property: property.into(),
            value,
            bound: Bound::Above(bound),
        });
    }

    fn exact(&mut self, suite: Suite, property: impl Into<String>, mismatches: usize) {
        self.at_most(suite, property, mismatches as f64, 0.0);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for n in &self.notes {
            writeln!(f, "{n}")?;
        }
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        write!(
            f,
            "{} checks, {} failed: {}",
            self.checks.len(),
            self.failures(),
            if self.all_passed() { "OK" } else { "FAILED" }
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyConfig {
    pub suite: Suite,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
}

pub fn run_suites(cfg: &VerifyConfig) -> Report {
    let mut report = Report::default();
    let suites: &[Suite] = match &cfg.suite {
        Suite::All => &[
            Suite::Group,
            Suite::Algebra,
            Suite::Closedform,
            Suite::U3,
            Suite::Dynamics,
        ],
        s => std::slice::from_ref(s),
    };
    for &suite in suites {
        // one stream per suite, so a suite's numbers do not depend on which
        // other suites ran before it
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(suite as u64);
        match suite {
            Suite::Group => group_suite(&mut report, cfg, &mut rng),
            Suite::Algebra => algebra_suite(&mut report, cfg, &mut rng),
            Suite::Closedform => closed_form_suite(&mut report, cfg, &mut rng),
            Suite::U3 => u3_suite(&mut report, cfg, &mut rng),
            Suite::Dynamics => dynamics_suite(&mut report, cfg, &mut rng),
            Suite::All => unreachable!("expanded above"),
        }
    }
    report
}

/// Random real angles in `[−π, π]³`; every tenth sample sits within `1e-8`
/// of the degenerate line `x = y = z`.
pub fn sample_angles(rng: &mut ChaCha8Rng, index: usize) -> Angles {
    if index % 10 == 9 {
        let t: f64 = rng.gen_range(-PI..PI);
        let mut jitter = || if rng.gen_bool(0.5) { 1e-8 } else { -1e-8 };
        Angles::new(t, t + jitter(), t + jitter())
    } else {
        Angles::new(
            rng.gen_range(-PI..PI),
            rng.gen_range(-PI..PI),
            rng.gen_range(-PI..PI),
        )
    }
}

fn group_suite(report: &mut Report, cfg: &VerifyConfig, rng: &mut ChaCha8Rng) {
    let s = Suite::Group;
    report.exact(
        s,
        "cayley table vs reference (cells)",
        cayley_mismatches().len(),
    );
    report.exact(
        s,
        "closure of {b,d,f} has 12 elements",
        enumerate_group().len().abs_diff(12),
    );

    let minus_i = -Mat6::identity();
    let squares = Label::IMAGINARY
        .iter()
        .filter(|&&l| basis_matrix(l) * basis_matrix(l) != minus_i)
        .count();
    report.exact(s, "b^2 = d^2 = f^2 = -I", squares);

    let (c, e) = (basis_matrix(Label::C), basis_matrix(Label::E));
    let cubes = [
        c.pow(3) == Mat6::identity(),
        e.pow(3) == Mat6::identity(),
        (-c).pow(3) == minus_i,
        (-e).pow(3) == minus_i,
        c * e == Mat6::identity(),
    ];
    report.exact(
        s,
        "c^3 = e^3 = I, (-c)^3 = (-e)^3 = -I, ce = I",
        cubes.iter().filter(|ok| !**ok).count(),
    );

    let audit = relation_audit();
    for r in &audit {
        report.notes.push(format!("audit: {r}"));
    }
    let unexpected = audit
        .iter()
        .filter(|r| r.holds() == matches!(r.text, "c^3 = -1" | "e^3 = -1"))
        .count();
    report.exact(s, "relation audit (only c^3, e^3 contradicted)", unexpected);

    // words multiplied through the table must agree with matrix products
    let table = cayley_table();
    let mut word_mismatches = 0;
    for _ in 0..cfg.samples {
        let len = rng.gen_range(0..=8);
        let word: Vec<Label> = (0..len).map(|_| Label::ALL[rng.gen_range(0..6)]).collect();
        let via_table = word.iter().fold(SignedElement::IDENTITY, |acc, &l| {
            let cell = table[acc.label.index()][l.index()];
            if acc.sign == crate::group::Sign::Minus {
                -cell
            } else {
                cell
            }
        });
        if via_table != reduce_word(&word) {
            word_mismatches += 1;
        }
    }
    report.exact(
        s,
        "random words: table fold = matrix product",
        word_mismatches,
    );
    let pairs = SignedElement::all()
        .flat_map(|x| SignedElement::all().map(move |y| (x, y)))
        .filter(|&(x, y)| {
            let m = x.matrix() * y.matrix();
            multiply(x, y).matrix() != m
        })
        .count();
    report.exact(s, "all 144 signed products identified", pairs);

    let mut planar: f64 = 0.0;
    let mut hyper: f64 = 0.0;
    for _ in 0..cfg.samples {
        let t: f64 = rng.gen_range(-10.0..10.0);
        planar = planar.max((det(&rot2_reference(0.0, t)) - 1.0).abs());
        hyper = hyper.max((det(&rot2_hyperbolic(t)) - 1.0).abs() / t.cosh().powi(2));
    }
    report.at_most(s, "det rot2(0, t) - 1", planar, cfg.tol);
    report.at_most(s, "cosh^2 - sinh^2 - 1 (relative)", hyper, cfg.tol);
}

fn algebra_suite(report: &mut Report, cfg: &VerifyConfig, rng: &mut ChaCha8Rng) {
    let s = Suite::Algebra;
    let table = verify_commutator_table();
    report.exact(
        s,
        "20 published commutators (exact)",
        table.iter().filter(|c| !c.holds).count(),
    );
    report.exact(
        s,
        "[X,Y] = -[Y,X] on basis (exact)",
        usize::from(!commutators_antisymmetric()),
    );

    let seed = rng.gen();
    match lie_axiom_check(cfg.samples, seed) {
        Ok(r) => {
            report.exact(
                s,
                "Jacobi on basis triples (exact)",
                usize::from(!r.basis_jacobi_exact),
            );
            report.at_most(s, "bilinearity residual", r.bilinearity, cfg.tol);
            report.at_most(
                s,
                "anticommutativity residual",
                r.anticommutativity,
                cfg.tol,
            );
            report.at_most(
                s,
                "Jacobi residual (random combinations)",
                r.jacobi,
                cfg.tol,
            );
            report.at_most(s, "skewness |g^T + g|", r.skewness, 0.0);
        }
        Err(e) => report.notes.push(format!("lie axiom check failed: {e}")),
    }

    let mut trace: f64 = 0.0;
    let mut skew: f64 = 0.0;
    for i in 0..cfg.samples {
        let a = sample_angles(rng, i);
        let c: f64 = rng.gen_range(-1.0..1.0);
        let g = generator_ce(&a, &ScaleParams::new(c, rng.gen_range(-1.0..1.0)));
        trace = trace.max(g.trace().abs());
        let g = generator_ce(&a, &ScaleParams::new(c, -c));
        skew = skew.max((&g.transpose() + &g).max_abs());
    }
    report.at_most(s, "trace of scaled generator", trace, 0.0);
    report.at_most(s, "scaled generator skew when e = -c", skew, 0.0);
}

fn closed_form_suite(report: &mut Report, cfg: &VerifyConfig, rng: &mut ChaCha8Rng) {
    let s = Suite::Closedform;
    let mut expm_diff: f64 = 0.0;
    let mut ortho: f64 = 0.0;
    let mut detdev: f64 = 0.0;
    let mut rows: f64 = 0.0;
    let mut eig: f64 = 0.0;
    let mut tr: f64 = 0.0;
    let mut prod: f64 = 0.0;
    let mut psum: f64 = 0.0;
    let mut psq: f64 = 0.0;
    let mut branch: f64 = 0.0;
    for i in 0..cfg.samples {
        let a = sample_angles(rng, i);
        let g = group_matrix(&a);
        let oracle = expm(&generator(&a)).expect("bounded generator");
        expm_diff = expm_diff.max(g.max_abs_diff(&oracle));
        ortho = ortho.max(residual_orthogonal(&g));
        detdev = detdev.max((det(&g) - 1.0).abs());
        rows = rows.max(row_sum_identity(&a));
        let spectrum = verify_spectrum(&a);
        eig = eig.max(spectrum.max_eigen_residual());
        tr = tr.max(spectrum.trace_residual);
        prod = prod.max(spectrum.det_residual);
        let args = spherical_args(&a);
        if let Some(p) = args.partials {
            psum = psum.max(p.iter().sum::<f64>().abs());
            if args.r.abs() > DEGENERATE_RADIUS {
                psq = psq.max((p.iter().map(|v| v * v).sum::<f64>() - 1.5).abs());
            }
        }
        branch = branch.max(g.max_abs_diff(&group_matrix_from_args(&args.with_negated_root())));
    }
    report.at_most(s, "closed form vs expm (entrywise)", expm_diff, cfg.tol);
    report.at_most(s, "orthogonality |G^T G - I|", ortho, cfg.tol);
    report.at_most(s, "|det G - 1|", detdev, cfg.tol);
    report.at_most(s, "row/column sums vs cos(γ), sin(γ)", rows, cfg.tol);
    report.at_most(s, "spectrum |det(G - λI)|", eig, cfg.tol.max(1e-8));
    report.at_most(s, "spectrum |Σλ - trace G|", tr, cfg.tol);
    report.at_most(s, "spectrum |Πλ - det G|", prod, cfg.tol);
    report.at_most(s, "px + py + pz", psum, cfg.tol);
    report.at_most(s, "px^2 + py^2 + pz^2 - 3/2", psq, cfg.tol);
    report.at_most(s, "branch r -> -r leaves G unchanged", branch, cfg.tol);

    let mut complex_diff: f64 = 0.0;
    for i in 0..cfg.samples.min(200) {
        let re = sample_angles(rng, i);
        let mut im = || rng.gen_range(-0.1..0.1);
        let a = Angles::new(
            Complex64::new(re.x, im()),
            Complex64::new(re.y, im()),
            Complex64::new(re.z, im()),
        );
        let oracle = expm(&generator(&a)).expect("bounded generator");
        complex_diff = complex_diff.max(group_matrix(&a).max_abs_diff(&oracle));
    }
    report.at_most(
        s,
        "complex angles: closed form vs expm",
        complex_diff,
        cfg.tol,
    );

    let mut ce_det: f64 = 0.0;
    let mut ce_ortho: f64 = 0.0;
    for i in 0..cfg.samples.min(200) {
        let a = sample_angles(rng, i);
        let c: f64 = rng.gen_range(-0.5..0.5);
        let e: f64 = rng.gen_range(-0.5..0.5);
        let g = group_matrix_ce(&a, &ScaleParams::new(c, e)).expect("bounded generator");
        ce_det = ce_det.max((det(&g) - 1.0).abs());
        let g = group_matrix_ce(&a, &ScaleParams::new(c, -c)).expect("bounded generator");
        ce_ortho = ce_ortho.max(residual_orthogonal(&g));
    }
    report.at_most(s, "scaled: |det G_ce - 1|", ce_det, cfg.tol);
    report.at_most(s, "scaled, e = -c: orthogonality", ce_ortho, cfg.tol);
}

fn u3_suite(report: &mut Report, cfg: &VerifyConfig, rng: &mut ChaCha8Rng) {
    let s = Suite::U3;
    let mut unitary: f64 = 0.0;
    let mut detdev: f64 = 0.0;
    let mut modulus: f64 = 0.0;
    let mut sym: f64 = 0.0;
    let mut vs_expm: f64 = 0.0;
    let mut embed: f64 = 0.0;
    let mut gen_embed: f64 = 0.0;
    for i in 0..cfg.samples {
        let a = sample_angles(rng, i);
        let u = group_matrix_u3(&a);
        unitary = unitary.max(residual_unitary(&u));
        let d = det(&u);
        let gamma = a.x + a.y + a.z;
        detdev = detdev.max((d - Complex64::from_polar(1.0, gamma)).norm());
        modulus = modulus.max((d.norm() - 1.0).abs());
        sym = sym.max(u.max_abs_diff(&u.transpose()));
        vs_expm = vs_expm.max(u.max_abs_diff(&expm(&generator_u3(&a)).expect("bounded")));
        embed = embed.max(embed_complex(&u).max_abs_diff(&group_matrix(&a)));
        gen_embed = gen_embed.max(embed_complex(&generator_u3(&a)).max_abs_diff(&generator(&a)));
    }
    report.at_most(s, "unitarity |U^† U - I|", unitary, cfg.tol);
    report.at_most(s, "det=e^{iγ}", detdev, cfg.tol);
    report.at_most(s, "|det U| - 1", modulus, cfg.tol);
    report.at_most(s, "symmetry |U - U^T|", sym, 0.0);
    report.at_most(s, "closed form vs expm", vs_expm, cfg.tol);
    report.at_most(s, "embed(U) vs 6x6 closed form", embed, cfg.tol);
    report.at_most(s, "embed(u(3) generator) vs generator", gen_embed, 0.0);
}

/// Quarter-turn progressions as published, per axis, for starts
/// `X_r, Y_r, Z_r`.
pub const REFERENCE_PROGRESSIONS: [(Axis, [&str; 3]); 3] = [
    (
        Axis::X,
        [
            "X_i -X_r -X_i X_r",
            "Z_i -Y_r -Z_i Y_r",
            "Y_i -Z_r -Y_i Z_r",
        ],
    ),
    (
        Axis::Y,
        [
            "Z_i -X_r -Z_i X_r",
            "Y_i -Y_r -Y_i Y_r",
            "X_i -Z_r -X_i Z_r",
        ],
    ),
    (
        Axis::Z,
        [
            "Y_i -X_r -Y_i X_r",
            "X_i -Y_r -X_i Y_r",
            "Z_i -Z_r -Z_i Z_r",
        ],
    ),
];

/// Published plane orbits: destination axis of the X, Y, Z pairs after
/// each of the six steps.
pub const REFERENCE_ORBITS: [(Plane, [&str; 3]); 2] = [
    (
        Plane::MinusC,
        ["-Y Z -X Y -Z X", "-Z X -Y Z -X Y", "-X Y -Z X -Y Z"],
    ),
    (
        Plane::MinusE,
        ["-Z Y -X Z -Y X", "-X Z -Y X -Z Y", "-Y X -Z Y -X Z"],
    ),
];

pub fn progression_mismatches() -> usize {
    let mut bad = 0;
    for (axis, rows) in REFERENCE_PROGRESSIONS {
        let Ok(table) = quarter_turn_progression(axis) else {
            return 12;
        };
        for (row, expected) in table.iter().zip(rows) {
            let got: Vec<String> = row.iter().map(ToString::to_string).collect();
            if got.join(" ") != expected {
                bad += 1;
            }
        }
    }
    bad
}

pub fn orbit_mismatches() -> usize {
    let mut bad = 0;
    for (plane, rows) in REFERENCE_ORBITS {
        let orbit = plane_orbit(plane);
        for (axis, expected) in Axis::ALL.into_iter().zip(rows) {
            for (map, cell) in orbit.iter().zip(expected.split_whitespace()) {
                let got = match map.axis_image(axis) {
                    Some((dest, true)) => format!("-{dest}"),
                    Some((dest, false)) => dest.to_string(),
                    None => "?".into(),
                };
                if got != cell {
                    bad += 1;
                }
            }
        }
    }
    bad
}

fn dynamics_suite(report: &mut Report, cfg: &VerifyConfig, rng: &mut ChaCha8Rng) {
    let s = Suite::Dynamics;
    report.exact(
        s,
        "quarter-turn progressions (12 rows)",
        progression_mismatches(),
    );
    report.exact(
        s,
        "plane orbits vs reference (36 cells)",
        orbit_mismatches(),
    );
    let structural = [Plane::MinusC, Plane::MinusE]
        .into_iter()
        .map(plane_orbit)
        .filter(|o| !(o[2].is_negation() && o[5].is_identity()))
        .count();
    report.exact(s, "orbit step 3 = -I, step 6 = I", structural);

    let theta = PI / 1000.0;
    let run = trajectory(
        Angles::new(theta, 0.0, 0.0),
        ScaleParams::ZERO,
        5000,
        SixVector::basis(Slot::Xr),
    )
    .expect("finite run");
    let mut circle: f64 = 0.0;
    let mut drift: f64 = 0.0;
    for (k, v) in run.states.iter().enumerate() {
        let kt = k as f64 * theta;
        circle = circle
            .max((v.0[0] - kt.cos()).abs())
            .max((v.0[1] - kt.sin()).abs())
            .max(v.0[2..].iter().map(|x| x.abs()).fold(0.0, f64::max));
        drift = drift.max((v.norm() - 1.0).abs());
    }
    report.at_most(s, "single-angle run vs (cos kθ, sin kθ)", circle, 1e-6);
    report.at_most(s, "single-angle run norm drift", drift, 1e-8);

    let mut step_norm: f64 = 0.0;
    let mut assoc: f64 = 0.0;
    for i in 0..cfg.samples {
        let a1 = sample_angles(rng, i);
        let a2 = sample_angles(rng, i + 1);
        let (g1, g2) = (group_matrix(&a1), group_matrix(&a2));
        let v = SixVector(std::array::from_fn(|_| rng.gen_range(-1.0..1.0)));
        let w = rotate(&v, &g1);
        step_norm = step_norm.max((w.norm() - v.norm()).abs());
        let lhs = rotate(&v, &(&g1 * &g2));
        let rhs = rotate(&w, &g2);
        assoc = assoc.max(
            lhs.0
                .iter()
                .zip(&rhs.0)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max),
        );
    }
    report.at_most(s, "per-step norm change (real angles)", step_norm, cfg.tol);
    report.at_most(s, "v(G1 G2) = (v G1) G2", assoc, cfg.tol);

    let q1 = quadrature_check(QuadratureDim::One, 256)
        .expect("n >= 8")
        .norm();
    let q3 = quadrature_check(QuadratureDim::Three, 32)
        .expect("n >= 8")
        .norm();
    report.at_most(s, "|∮ e^{ix}| (n = 256)", q1, 1e-12);
    report.at_most(s, "|∭ e^{i(x+y+z)}| (n = 32^3)", q3, 1e-8);

    let grow =
        group_matrix_ce(&Angles::<f64>::zero(), &ScaleParams::new(0.01, 0.01)).expect("bounded");
    report.above(s, "c = e = 0.01: spectral norm", spectral_norm(&grow), 1.0);

    let v0 = SixVector::basis(Slot::Xr);
    let fig7 = Angles::new(PI / 200.0, PI / 300.0, PI / 500.0);
    let waveform = trajectory(
        fig7,
        ScaleParams::new(-PI / 30000.0, PI / 10000.0),
        2000,
        v0,
    )
    .expect("finite run");
    let last = waveform.states.last().expect("non-empty").norm();
    report.above(
        s,
        "scaled waveform: final norm / initial",
        last / v0.norm(),
        1.0,
    );

    let fig8 = Angles::new(
        Complex64::new(PI / 200.0, PI / 10000.0),
        Complex64::new(PI / 300.0, PI / 20000.0),
        Complex64::new(PI / 500.0, PI / 30000.0),
    );
    let cv0 = SixVector::<Complex64>::basis(Slot::Xr);
    let complex_run = trajectory(fig8, ScaleParams::ZERO, 20000, cv0).expect("finite run");
    let last = complex_run.states.last().expect("non-empty").norm();
    report.above(
        s,
        "complex angles: final norm / initial",
        last / cv0.norm(),
        1.0,
    );

    let quarter = group_matrix(&Axis::X.angles(FRAC_PI_2));
    let off_grid = quarter
        .entries()
        .iter()
        .map(|&x| (x - x.round()).abs())
        .fold(0.0, f64::max);
    report.at_most(
        s,
        "quarter turn entries within rounding of 0/±1",
        off_grid,
        1e-12,
    );
}
