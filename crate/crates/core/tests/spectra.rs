use std::io::Cursor;

use cavity_response::meanfield::ModelSpec;
use cavity_response::models::{conductivity, QheSpec, SpinModel};
use cavity_response::response::{ComplexFrequency, Operator};
use cavity_response::spectra::{
    read_csv, read_structured, run_sweep, run_sweep_with_threads, write_csv, write_structured, AxisKind, ModelName,
    Observable, RunConfig, CSV_HEADER,
};
use cavity_response::Error;
use proptest::prelude::*;

fn config(toml: &str) -> RunConfig {
    RunConfig::from_toml_str(toml).unwrap()
}

const DICKE_MAP: &str = r#"
model = "dicke"
axis = "coupling"
axis_min = 0.0
axis_max = 1.2
axis_points = 25
omega_min = 0.0
omega_max = 3.0
omega_points = 601
observables = ["im_photon", "poles"]
"#;

#[test]
fn config_errors() {
    let cases = [
        "model = \"dicke\"\nomega_min = 0.0\nomega_max = 1.0\nomega_points = 5\nlamda = 0.3\n",
        "model = \"ising\"\nomega_min = 0.0\nomega_max = 1.0\nomega_points = 5\n",
        "model = \"dicke\"\nomega_min = 0.0\nomega_max = 1.0\nomega_points = 1\n",
        "model = \"dicke\"\nomega_min = 0.0\nomega_max = 1.0\nomega_points = 5\nbroadening = 0.0\n",
        "model = \"dicke\"\nomega_min = 0.0\nomega_max = 1.0\nomega_points = 5\naxis = \"coupling\"\n",
        "model = \"dicke\"\nomega_min = 0.0\nomega_max = 1.0\nomega_points = 5\naxis = \"cyclotron_freq\"\naxis_min = 0.0\naxis_max = 1.0\naxis_points = 3\n",
        "model = \"qhe\"\nomega_min = 0.0\nomega_max = 1.0\nomega_points = 5\ncavity_freq = -1.0\n",
        "model = \"dicke\"\nomega_min = 0.0\nomega_max = 1.0\nomega_points = 5\nomega_x = 0.3\n",
        "model = \"dicke\"\nomega_min = 0.0\n",
    ];
    for text in cases {
        assert!(matches!(RunConfig::from_toml_str(text), Err(Error::Config(_))), "accepted:\n{text}");
    }
}

#[test]
fn shipped_configs_parse() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/configs");
    let mut n = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        RunConfig::from_file(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        n += 1;
    }
    assert!(n >= 5);
}

#[test]
fn single_point_grid_equals_direct_call() {
    let cfg = config(
        "model = \"lmg_transverse\"\nomega_x = 0.1\nomega_z = 0.4\nj = 0.25\nlambda = 0.7\n\
         omega_min = 1.3\nomega_max = 1.3\nomega_points = 1\nbroadening = 0.01\n\
         observables = [\"im_photon\", \"im_chi_zz\"]\n",
    );
    let t = run_sweep(&cfg).unwrap();
    let model = SpinModel::new(&ModelSpec::lmg_transverse(0.1, 0.4, 0.25, 0.7, 1.0)).unwrap();
    let r = model.response(ComplexFrequency::new(1.3, 0.01).unwrap()).unwrap();
    assert_eq!(t.observable("im_photon").unwrap().value(0), r.photon);
    assert_eq!(t.observable("im_chi_zz").unwrap().value(0), r.matter.get(Operator::Z, Operator::Z));

    let qcfg = config(
        "model = \"qhe\"\nplasma_freq = 0.5\ncyclotron_freq = 0.8\n\
         omega_min = 0.6\nomega_max = 0.6\nomega_points = 1\nobservables = [\"conductivity\"]\n",
    );
    let t = run_sweep(&qcfg).unwrap();
    let spec = QheSpec { cavity_freq: 1.0, plasma_freq: 0.5, cyclotron_freq: 0.8, filling: 1.0 };
    let c = conductivity(&spec, ComplexFrequency::new(0.6, 1e-3).unwrap()).unwrap();
    assert_eq!(t.observable("sigma_xy").unwrap().value(0), Some(c.xy));
    assert_eq!(t.observable("sigma_yy").unwrap().value(0), Some(c.yy));
}

#[test]
fn two_by_two_table_has_four_rows() {
    let cfg = config(
        "model = \"dicke\"\naxis = \"coupling\"\naxis_min = 0.1\naxis_max = 0.2\naxis_points = 2\n\
         omega_min = 0.5\nomega_max = 1.5\nomega_points = 2\n",
    );
    let mut buf = Vec::new();
    write_csv(&run_sweep(&cfg).unwrap(), &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert!(text.ends_with('\n'));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[0], CSV_HEADER);
    assert!(lines[1].starts_with("1.0000000000000001e-1,5.0000000000000000e-1,im_photon,"));
}

#[test]
fn exports_round_trip_exactly() {
    let mut cfg = config(DICKE_MAP);
    cfg.axis_points = Some(7);
    cfg.omega_points = 31;
    let t = run_sweep(&cfg).unwrap();

    let mut json = Vec::new();
    write_structured(&t, &mut json).unwrap();
    assert_eq!(read_structured(Cursor::new(&json)).unwrap(), t);

    let mut csv = Vec::new();
    write_csv(&t, &mut csv).unwrap();
    let rows = read_csv(Cursor::new(&csv)).unwrap();
    assert_eq!(rows, t.long_rows());
}

#[test]
fn metadata_echoes_every_config_field() {
    let cfg = config(DICKE_MAP);
    let t = run_sweep(&cfg).unwrap();
    let mut json = Vec::new();
    write_structured(&t, &mut json).unwrap();
    let doc: serde_json::Value = serde_json::from_slice(&json).unwrap();
    let echo = &doc["metadata"]["config"];
    for key in [
        "model",
        "omega_x",
        "omega_z",
        "j",
        "coordination",
        "lambda",
        "cavity_freq",
        "zeta",
        "plasma_freq",
        "cyclotron_freq",
        "filling",
        "axis",
        "axis_min",
        "axis_max",
        "axis_points",
        "omega_min",
        "omega_max",
        "omega_points",
        "broadening",
        "observables",
        "output",
        "format",
    ] {
        assert!(echo.get(key).is_some(), "metadata lacks {key}");
    }
    assert_eq!(doc["metadata"]["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(t.metadata.config, cfg);
}

#[test]
fn exports_are_deterministic_and_thread_independent() {
    let cfg = config(DICKE_MAP);
    let serial = run_sweep_with_threads(&cfg, Some(1)).unwrap();
    let parallel = run_sweep_with_threads(&cfg, Some(4)).unwrap();
    assert_eq!(serial, parallel);
    let bytes = |t| {
        let mut b = Vec::new();
        write_csv(t, &mut b).unwrap();
        b
    };
    assert_eq!(bytes(&serial), bytes(&run_sweep(&cfg).unwrap()));
}

#[test]
fn pole_lists_sit_on_spectral_ridges() {
    let t = run_sweep(&config(DICKE_MAP)).unwrap();
    let grid = t.observable("im_photon").unwrap();
    let no = t.omega.len();
    let spacing = t.omega[1] - t.omega[0];
    for (i, poles) in t.poles.as_ref().unwrap().iter().enumerate() {
        let poles = poles.as_ref().unwrap();
        let row: Vec<f64> = (0..no).map(|j| -grid.im[i * no + j].unwrap()).collect();
        let peak = row.iter().cloned().fold(f64::MIN, f64::max);
        // every pronounced local maximum of the spectral map is a pole
        for j in 1..no - 1 {
            if row[j] > row[j - 1] && row[j] >= row[j + 1] && row[j] > 1e-2 * peak {
                let d = poles.iter().map(|p| (p - t.omega[j]).abs()).fold(f64::INFINITY, f64::min);
                assert!(d <= spacing, "axis {}: ridge at {} has no pole ({poles:?})", t.axis[i], t.omega[j]);
            }
        }
        let j = row.iter().position(|&v| v == peak).unwrap();
        let d = poles.iter().map(|p| (p - t.omega[j]).abs()).fold(f64::INFINITY, f64::min);
        assert!(d <= spacing, "axis {}: strongest ridge at {} vs {poles:?}", t.axis[i], t.omega[j]);
    }
}

#[test]
fn failed_points_leave_sentinels() {
    // zero field and zero coupling leave the spin without a gap
    let cfg = config(
        "model = \"dicke\"\nomega_z = 0.0\naxis = \"coupling\"\naxis_min = 0.0\naxis_max = 1.0\naxis_points = 3\n\
         omega_min = 0.0\nomega_max = 2.0\nomega_points = 4\nobservables = [\"im_photon\", \"poles\"]\n",
    );
    let t = run_sweep(&cfg).unwrap();
    let grid = t.observable("im_photon").unwrap();
    assert!(grid.re[..4].iter().all(Option::is_none));
    assert!(grid.re[4..].iter().all(Option::is_some));
    let poles = t.poles.as_ref().unwrap();
    assert!(poles[0].is_none() && poles[1].is_some());
    assert!(t.metadata.failures.iter().any(|f| f.axis_index == 0 && f.observable == "model"));
    let sentinel = t.long_rows().into_iter().find(|r| r.observable == "pole" && r.omega.is_none()).unwrap();
    assert_eq!((sentinel.axis, sentinel.re, sentinel.im), (0.0, None, None));
}

#[test]
fn qhe_sweep_over_cyclotron_frequency() {
    let cfg = config(
        "model = \"qhe\"\nplasma_freq = 0.5\naxis = \"cyclotron_freq\"\naxis_min = 0.2\naxis_max = 1.8\naxis_points = 9\n\
         omega_min = 0.0\nomega_max = 3.0\nomega_points = 50\nobservables = [\"conductivity\", \"poles\"]\n",
    );
    assert_eq!(cfg.axis, AxisKind::CyclotronFreq);
    assert_eq!(cfg.model, ModelName::Qhe);
    let t = run_sweep(&cfg).unwrap();
    assert_eq!(t.observables.len(), 4);
    assert!(t.metadata.failures.is_empty());
    for (i, &wc) in t.axis.iter().enumerate() {
        let spec = QheSpec { cavity_freq: 1.0, plasma_freq: 0.5, cyclotron_freq: wc, filling: 1.0 };
        let (lo, hi) = cavity_response::models::landau_polaritons(&spec);
        let found = t.poles.as_ref().unwrap()[i].as_ref().unwrap();
        assert_eq!(found.len(), 2);
        assert!((found[0] - lo).abs() < 1e-8 && (found[1] - hi).abs() < 1e-8);
    }
    assert!(cfg.observables.contains(&Observable::Conductivity));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn parallel_equals_serial(l_max in 0.2f64..1.5, wz in 0.2f64..1.5, threads in 2usize..6) {
        let cfg = RunConfig { omega_z: wz, axis_max: Some(l_max), axis_points: Some(9), omega_points: 40, ..config(DICKE_MAP) };
        prop_assert_eq!(run_sweep_with_threads(&cfg, Some(1)).unwrap(), run_sweep_with_threads(&cfg, Some(threads)).unwrap());
    }
}
