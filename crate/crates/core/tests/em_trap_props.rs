use proptest::prelude::*;
use qgem_core::em::*;
use qgem_core::trapping::*;
use qgem_core::units::dipole_e_m_to_si;

const UM: f64 = 1e-6;

fn central_diff(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// Least-squares slope of ln y against ln x.
fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.abs().ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64)).collect()
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

proptest! {
    #[test]
    fn plate_forces_are_potential_gradients(
        m in 1e-16f64..1e-12,
        z_over_r in 1.5f64..50.0,
        theta in 0.0f64..std::f64::consts::PI,
        terms in prop_oneof![Just(EmTermSelection::CP_ONLY), Just(EmTermSelection::DD_ONLY), Just(EmTermSelection::BOTH)],
    ) {
        let tm = TestMass::diamond(m).unwrap();
        let dipole = tm.dipole;
        let tm = tm.with_dipole(dipole, theta).unwrap();
        let z = z_over_r * tm.radius;
        let model = PlateModel::new(terms);
        let fd = -central_diff(|z| model.potential(&tm, z).unwrap(), z, 1e-4 * z);
        let f = model.force(&tm, z).unwrap();
        prop_assert!(rel(f, fd) < 1e-6, "{} vs {}", f, fd);
        prop_assert!(f < 0.0 && model.potential(&tm, z).unwrap() < 0.0);
    }

    #[test]
    fn dd_plate_extremal_at_poles(theta in 0.0f64..std::f64::consts::PI, z in 1e-6f64..1e-4) {
        let d = dipole_e_m_to_si(1e-4).unwrap();
        let conv = DipolePlateConvention::default();
        let v = v_dd_sphere_plate(d, theta, z, conv).unwrap();
        let v0 = v_dd_sphere_plate(d, 0.0, z, conv).unwrap();
        let vpi = v_dd_sphere_plate(d, std::f64::consts::PI, z, conv).unwrap();
        let v90 = v_dd_sphere_plate(d, std::f64::consts::FRAC_PI_2, z, conv).unwrap();
        prop_assert!(v >= v0 * (1.0 + 1e-12));
        prop_assert!(rel(v0, vpi) < 1e-12);
        prop_assert!(v <= v90 * (1.0 - 1e-12));
    }

    #[test]
    fn casimir_polder_is_attractive(m in 1e-16f64..1e-12, z_over_r in 1.01f64..100.0) {
        let tm = TestMass::diamond(m).unwrap();
        let z = z_over_r * tm.radius;
        prop_assert!(v_cp_sphere_plate(&tm, z, Validity::Strict).unwrap() < 0.0);
        prop_assert!(f_cp_sphere_plate(&tm, z, Validity::Strict).unwrap() < 0.0);
    }

    #[test]
    fn trap_force_is_potential_gradient(
        x in -40.0f64..40.0, y in -40.0f64..40.0, z in -40.0f64..40.0, y0 in 50.0f64..500.0,
    ) {
        let p = TrapProfile::with_y0(y0 * UM).unwrap();
        let tm = TestMass::diamond(1e-14).unwrap();
        let pt = [x * UM, y * UM, z * UM];
        let f = trap_force(&p, &tm, pt[0], pt[1], pt[2]);
        let scale = f.iter().map(|c| c.abs()).fold(0.0, f64::max);
        let h = 1e-3 * UM;
        for axis in 0..3 {
            let fd = -central_diff(
                |s| {
                    let mut q = pt;
                    q[axis] = s;
                    trap_potential_at(&p, &tm, q[0], q[1], q[2])
                },
                pt[axis],
                h,
            );
            prop_assert!((f[axis] - fd).abs() <= 1e-6 * scale, "axis {} {} vs {}", axis, f[axis], fd);
        }
    }

    #[test]
    fn trap_surface_mirror_symmetric_in_x(x in 0.0f64..40.0, z in -40.0f64..40.0) {
        let p = TrapProfile::with_y0(200.0 * UM).unwrap();
        let tm = TestMass::diamond(1e-14).unwrap();
        let a = trap_potential_at(&p, &tm, x * UM, 0.0, z * UM);
        let b = trap_potential_at(&p, &tm, -x * UM, 0.0, z * UM);
        prop_assert_eq!(a, b);
    }
}

#[test]
fn power_laws() {
    let tm = TestMass::diamond(1e-14).unwrap();
    let conv = DipolePlateConvention::default();
    let zs = log_grid(10.0 * UM, 1000.0 * UM, 25);
    let dd: Vec<f64> = zs.iter().map(|&z| v_dd_sphere_plate(tm.dipole, 0.3, z, conv).unwrap()).collect();
    let cp: Vec<f64> = zs.iter().map(|&z| v_cp_sphere_plate(&tm, z, Validity::Strict).unwrap()).collect();
    let ss: Vec<f64> = zs.iter().map(|&r| v_cp_sphere_sphere(&tm, &tm, r, Validity::Strict).unwrap()).collect();
    let mdd: Vec<f64> = zs.iter().map(|&r| u_induced_magnetic_dd(&tm, &tm, 0.1, r).unwrap()).collect();
    let ee: Vec<f64> = zs
        .iter()
        .map(|&r| v_dd_sphere_sphere([0.0, 0.0, tm.dipole], [0.0, 0.0, tm.dipole], [0.0, 0.0, r]).unwrap())
        .collect();
    for (name, ys, want) in [
        ("dd-plate", &dd, -3.0),
        ("cp-plate", &cp, -4.0),
        ("cp-sphere", &ss, -7.0),
        ("mag-dd", &mdd, -3.0),
        ("e-dd", &ee, -3.0),
    ] {
        let s = loglog_slope(&zs, ys);
        assert!((s - want).abs() < 1e-9, "{name}: {s}");
    }
}

#[test]
fn field_bounds_mass_scaling() {
    let zs = [5.0 * UM, 30.0 * UM, 100.0 * UM];
    let masses = log_grid(1e-18, 1e-13, 11);
    let cp = PlateModel::new(EmTermSelection::CP_ONLY);
    let dd = PlateModel::new(EmTermSelection::DD_ONLY);
    for &z in &zs {
        let bound = |tm: TestMass, model: &PlateModel| {
            let r = field_requirement(&tm, z, model).unwrap();
            (r.b_min, r.dbdz_min)
        };
        // Casimir-Polder scales with volume exactly like the trap energy
        let cp_b: Vec<(f64, f64)> = masses.iter().map(|&m| bound(TestMass::diamond(m).unwrap(), &cp)).collect();
        for w in cp_b.windows(2) {
            assert!(rel(w[1].0, w[0].0) < 1e-12 && rel(w[1].1, w[0].1) < 1e-12);
        }
        // a fixed dipole gives B ∝ m^(-1/2)
        let fixed: Vec<f64> = masses
            .iter()
            .map(|&m| bound(TestMass::new(m, &Material::diamond(), DipoleModel::default()).unwrap(), &dd).0)
            .collect();
        assert!((loglog_slope(&masses, &fixed) + 0.5).abs() < 1e-3);
        let scaled: Vec<f64> = masses
            .iter()
            .map(|&m| {
                bound(TestMass::new(m, &Material::diamond(), DipoleModel::volume_scaled_default()).unwrap(), &dd).0
            })
            .collect();
        assert!(loglog_slope(&masses, &scaled).abs() < 1e-3);
    }
}

#[test]
fn field_bounds_decrease_with_gap() {
    let tm = TestMass::diamond(1e-14).unwrap();
    for terms in [EmTermSelection::CP_ONLY, EmTermSelection::DD_ONLY, EmTermSelection::BOTH] {
        let model = PlateModel::new(terms);
        let zs = log_grid(1.0 * UM, 100.0 * UM, 200);
        let req: Vec<FieldRequirement> = zs.iter().map(|&z| field_requirement(&tm, z, &model).unwrap()).collect();
        for w in req.windows(2) {
            assert!(w[1].b_min < w[0].b_min);
            assert!(w[1].dbdz_min < w[0].dbdz_min);
        }
    }
}

#[test]
fn dominance_at_threshold_passes() {
    let tm = TestMass::diamond(1e-14).unwrap();
    let model = PlateModel::new(EmTermSelection::CP_ONLY);
    let req = field_requirement(&tm, 30.0 * UM, &model).unwrap();
    assert!(check_dominance(&tm, 30.0 * UM, req.b_min, req.dbdz_min, &model).unwrap().passed());
    let below = check_dominance(&tm, 30.0 * UM, 0.99 * req.b_min, req.dbdz_min, &model).unwrap();
    assert!(!below.potential_ok);
}

#[test]
fn strict_validity_rejects_near_field() {
    let tm = TestMass::diamond(1e-14).unwrap();
    assert!(v_cp_sphere_plate(&tm, 0.5 * tm.radius, Validity::Strict).is_err());
    assert!(v_cp_sphere_plate(&tm, 0.5 * tm.radius, Validity::Warn).is_ok());
    assert!(v_cp_sphere_sphere(&tm, &tm, 1.5 * tm.radius, Validity::Strict).is_err());
}
