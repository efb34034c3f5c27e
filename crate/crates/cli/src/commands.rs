use std::path::Path;

use leafkit_core::cross_section::{
    build_reference, continuity_modulus, continuity_trend, cross_section_phi, generated_algebra_dimension,
    minimal_polynomial, offdiag_bound_check, well_definedness_check, ReferenceOperator,
};
use leafkit_core::norming::{
    adjoint_defect, duality_gap, op_norm, pi_regularity, rank_sandwich_check, NormingFunction, PiSequence,
};
use leafkit_core::opcore::{default_cluster_tol, hermitian_eigen, hermitian_function, matrix_exp, singular_values};
use leafkit_core::orbits::{
    kernel_range_split, leaf_signature, orbit_sample, pinching, same_leaf, LeafSignature, SkewHermitian,
};
use leafkit_core::random::{seeded_rng, uniform, random_complex};
use leafkit_core::states::{
    centralizer_basis, centralizer_block_check, is_faithful, jordan_decompose, jordan_intersection_check,
    support_projection, DensityFunctional,
};
use leafkit_core::symplectic::{kaehler_check, omega, polarization, projective_form_compare, radical_check, verify_polarization};
use leafkit_core::ComplexMatrix;
use serde_json::json;

use crate::error::CliError;
use crate::matrix_file::{as_vector, parse_matrix_str};
use crate::report::{complex, Report};
use crate::{Command, InputDigest};

type Result<T> = std::result::Result<T, CliError>;

fn load(path: &Path, digest: &mut InputDigest) -> Result<ComplexMatrix> {
    let bytes = std::fs::read(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    digest.add_file(&bytes);
    let text = String::from_utf8(bytes).map_err(|e| CliError::Parse {
        path: path.to_path_buf(),
        location: format!("byte {}", e.utf8_error().valid_up_to()),
        message: "file is not UTF-8".into(),
    })?;
    parse_matrix_str(&text, path)
}

fn norming(spec: &str) -> Result<NormingFunction> {
    spec.parse().map_err(|e| CliError::Usage(format!("--phi: {e}")))
}

fn scale_of(m: &ComplexMatrix) -> f64 {
    m.norm2().max(1.0)
}

fn reference(t: &ComplexMatrix, cluster_tol: Option<f64>, report: &mut Report) -> Result<ReferenceOperator> {
    let tol = match cluster_tol {
        Some(tol) => tol,
        None => default_cluster_tol(&hermitian_eigen(t)?.values),
    };
    report.tolerance("cluster_tol", tol);
    Ok(build_reference(t, tol)?)
}

fn signature_value(sig: &LeafSignature) -> serde_json::Value {
    json!({ "eigenvalues": sig.eigenvalues, "multiplicities": sig.multiplicities })
}

pub(crate) fn execute(command: &Command, seed: u64, digest: &mut InputDigest) -> Result<Report> {
    let mut ld = |p: &Path| load(p, digest);
    match command {
        Command::Norm { phi, matrix } => {
            let f = norming(phi)?;
            let a = ld(matrix)?;
            let mut r = Report::new("norm");
            r.result("phi", f.to_string())
                .result("norm", op_norm(&f, &a))
                .result("singular_values", singular_values(&a));
            Ok(r)
        }
        Command::DualCheck { phi, t, s, tol } => {
            let f = norming(phi)?;
            let (t, s) = (ld(t)?, ld(s)?);
            let g = duality_gap(&f, &t, &s)?;
            let mut r = Report::new("dual-check");
            r.tolerance("gap", *tol)
                .result("phi", f.to_string())
                .result("adjoint", f.adjoint().to_string())
                .result("pairing", complex(g.pairing))
                .result("bound", g.bound)
                .result("gap", g.gap)
                .contract("gap_nonnegative", g.gap >= -tol);
            Ok(r)
        }
        Command::Adjoint { phi, eta, len, samples, tol } => {
            let f = norming(phi)?;
            let eta: Vec<f64> = match eta {
                Some(list) => list
                    .split(',')
                    .map(|x| x.trim().parse::<f64>().map_err(|_| CliError::Usage(format!("--eta: bad entry `{x}`"))))
                    .collect::<Result<_>>()?,
                None => {
                    let mut rng = seeded_rng(seed);
                    (0..*len).map(|_| uniform(&mut rng, 0.0, 1.0)).collect()
                }
            };
            let defect = adjoint_defect(&f, &eta, *samples, seed);
            let mut r = Report::new("adjoint");
            r.tolerance("defect", *tol)
                .result("seed", seed)
                .result("phi", f.to_string())
                .result("adjoint", f.adjoint().to_string())
                .result("eta", &eta)
                .result("defect", defect)
                .contract("involution", f.adjoint().adjoint() == f)
                .contract("defect_nonnegative", defect >= -tol);
            Ok(r)
        }
        Command::Sandwich { phi, k, f1, f2 } => {
            let f = norming(phi)?;
            let (a, b) = (ld(f1)?, ld(f2)?);
            let c = rank_sandwich_check(&f, *k, &a, &b)?;
            let d = &a - &b;
            let mut r = Report::new("sandwich");
            r.tolerance("slack", 1e-9)
                .result("phi", f.to_string())
                .result("k", k)
                .result("op_norm", d.norm2())
                .result("phi_norm", op_norm(&f, &d))
                .contract("lower_ok", c.lower_ok)
                .contract("upper_ok", c.upper_ok);
            Ok(r)
        }
        Command::PiRegularity { pi, horizon } => {
            let seq: PiSequence = pi.parse().map_err(|e| CliError::Usage(format!("--pi: {e}")))?;
            let seq = seq.with_horizon(*horizon).map_err(|e| CliError::Usage(format!("--horizon: {e}")))?;
            let reg = pi_regularity(&seq);
            let mut checkpoints = Vec::new();
            let mut n = 1usize;
            while n <= *horizon {
                checkpoints.push(json!([n, reg.ratios[n - 1]]));
                n *= 10;
            }
            let mut r = Report::new("pi-regularity");
            r.result("pi", seq.to_string())
                .result("horizon", horizon)
                .result("sup_over_horizon", reg.sup_over_horizon)
                .result("final_ratio", reg.ratios[horizon - 1])
                .result("ratios_at_powers_of_ten", checkpoints)
                .result("monotone_tail", reg.monotone_tail);
            Ok(r)
        }
        Command::Support { rho, samples } => {
            let phi = DensityFunctional::new(ld(rho)?)?;
            let p = support_projection(&phi)?;
            let scale = scale_of(phi.rho());
            let idempotence = (&(&p * &p) - &p).norm2();
            let mut rng = seeded_rng(seed);
            let mut trace_residual = 0.0f64;
            for _ in 0..*samples {
                let x = random_complex(phi.order(), phi.order(), &mut rng);
                let pxp = &(&p * &x) * &p;
                trace_residual = trace_residual.max((phi.evaluate(&x) - phi.evaluate(&pxp)).norm());
            }
            let rank = p.trace().re.round() as usize;
            let mut r = Report::new("support");
            r.tolerance("idempotence", 1e-10)
                .tolerance("trace_identity", 1e-9 * scale)
                .result("seed", seed)
                .matrix("projection", &p)
                .result("rank", rank)
                .result("idempotence_residual", idempotence)
                .result("trace_identity_residual", trace_residual)
                .contract("is_projection", idempotence <= 1e-10 && p.hermitian_defect() <= 1e-10)
                .contract("trace_identity", trace_residual <= 1e-9 * scale);
            Ok(r)
        }
        Command::Jordan { rho, unitary } => {
            let phi = DensityFunctional::new(ld(rho)?)?;
            let jp = jordan_decompose(&phi);
            let scale = scale_of(phi.rho());
            let recon = (&jp.reconstruct() - phi.rho()).norm2();
            let orth = (&jp.support_pos * &jp.support_neg).norm2();
            let mut r = Report::new("jordan");
            r.tolerance("reconstruction", 1e-10 * scale)
                .tolerance("support_orthogonality", 1e-10)
                .matrix("positive_part", &jp.positive_part)
                .matrix("negative_part", &jp.negative_part)
                .result("reconstruction_residual", recon)
                .result("support_orthogonality", orth)
                .contract("reconstructs", recon <= 1e-10 * scale)
                .contract("supports_orthogonal", orth <= 1e-10);
            if let Some(u) = unitary {
                let c = jordan_intersection_check(&phi, &ld(u)?)?;
                r.result("fixes_phi", c.fixes_phi)
                    .result("fixes_pos", c.fixes_pos)
                    .result("fixes_neg", c.fixes_neg)
                    .contract("intersection_equivalence", c.equivalence_holds());
            }
            Ok(r)
        }
        Command::Centralizer { rho, unitary } => {
            let phi = DensityFunctional::new(ld(rho)?)?;
            let basis = centralizer_basis(&phi)?;
            let scale = scale_of(phi.rho());
            let worst = basis.iter().map(|b| b.commutator(phi.rho()).norm2()).fold(0.0, f64::max);
            let sig = leaf_signature(phi.rho(), default_cluster_tol(&hermitian_eigen(phi.rho())?.values))?;
            let expected: usize = sig.multiplicities.iter().map(|m| m * m).sum();
            let mut r = Report::new("centralizer");
            r.tolerance("commutator", 1e-9 * scale)
                .result("dimension", basis.len())
                .result("multiplicities", &sig.multiplicities)
                .result("max_commutator", worst)
                .contract("dimension_matches", basis.len() == expected)
                .contract("basis_commutes", worst <= 1e-9 * scale);
            if let Some(u) = unitary {
                let c = centralizer_block_check(&phi, &ld(u)?)?;
                r.result("in_centralizer", c.in_centralizer)
                    .result("commutes_with_support", c.commutes_with_support)
                    .result("corner_in_corner_centralizer", c.corner_in_corner_centralizer)
                    .contract("block_equivalence", c.equivalence_holds());
            }
            Ok(r)
        }
        Command::Faithful { rho, tol } => {
            let phi = DensityFunctional::new(ld(rho)?)?;
            let mut r = Report::new("faithful");
            r.tolerance("min_eigenvalue", *tol).result("faithful", is_faithful(&phi, *tol)?);
            Ok(r)
        }
        Command::Pinch { t, s } => {
            let (t, s) = (ld(t)?, ld(s)?);
            let e = pinching(&t, &s)?;
            let idem = (&pinching(&t, &e)? - &e).norm2();
            let comm = t.commutator(&e).norm2();
            let scale = scale_of(&t) * scale_of(&s);
            let mut r = Report::new("pinch");
            r.tolerance("residual", 1e-9 * scale)
                .matrix("pinched", &e)
                .result("idempotence_residual", idem)
                .result("commutator_residual", comm)
                .contract("idempotent", idem <= 1e-9 * scale)
                .contract("commutes", comm <= 1e-9 * scale);
            Ok(r)
        }
        Command::Split { t } => {
            let t = SkewHermitian::from_either(&ld(t)?)?;
            let sp = kernel_range_split(&t)?;
            let n = t.order();
            let mut r = Report::new("split");
            r.tolerance("residual", 1e-9)
                .result("kernel_dim", sp.kernel_basis.len())
                .result("range_dim", sp.range_basis.len())
                .result("residual", sp.residual)
                .contract("dimensions_add_up", sp.kernel_basis.len() + sp.range_basis.len() == n * n)
                .contract("reconstructs", sp.residual <= 1e-9);
            Ok(r)
        }
        Command::Omega { t, x, y } => {
            let t = SkewHermitian::from_either(&ld(t)?)?;
            let x = SkewHermitian::from_either(&ld(x)?)?;
            let y = SkewHermitian::from_either(&ld(y)?)?;
            let w = omega(&t, &x, &y)?;
            let anti = (w + omega(&t, &y, &x)?).abs();
            let mut r = Report::new("omega");
            r.tolerance("antisymmetry", 1e-9 * w.abs().max(1.0))
                .result("omega", w)
                .result("antisymmetry_residual", anti)
                .contract("antisymmetric", anti <= 1e-9 * w.abs().max(1.0));
            Ok(r)
        }
        Command::Radical { t, samples } => {
            let t = SkewHermitian::from_either(&ld(t)?)?;
            let c = radical_check(&t, *samples, seed)?;
            let mut r = Report::new("radical");
            r.tolerance("gram_nullity_relative", leafkit_core::symplectic::GRAM_NULLITY_TOL)
                .result("seed", seed)
                .result("radical_dim", c.radical_dim)
                .result("isotropy_dim", c.isotropy_dim)
                .result("max_radical_pairing", c.max_radical_pairing)
                .result("nondegeneracy_ratio", c.nondegeneracy_ratio)
                .contract("match", c.matches);
            Ok(r)
        }
        Command::Polarization { t } => {
            let t = SkewHermitian::from_either(&ld(t)?)?;
            let pol = polarization(&t)?;
            let props = verify_polarization(&t, &pol)?;
            let mask: Vec<[usize; 2]> = pol.mask.iter().map(|&(i, j)| [i, j]).collect();
            let mut r = Report::new("polarization");
            r.tolerance("span", 1e-9)
                .result("block_order", &pol.block_order)
                .result("eigenvalues", &pol.spectral.eigenvalues)
                .result("multiplicities", &pol.spectral.multiplicities)
                .result("mask", mask)
                .result("dim", pol.dim())
                .result("invariance_residual", props.invariance_residual)
                .result("intersection_dim", props.intersection_dim)
                .result("isotropy_dim", props.isotropy_dim)
                .result("isotropy_residual", props.isotropy_residual)
                .result("sum_dim", props.sum_dim)
                .result("complement_dim", props.complement_dim)
                .contract("properties_hold", props.holds(1e-9));
            Ok(r)
        }
        Command::KahlerCheck { t, samples } => {
            let t = SkewHermitian::from_either(&ld(t)?)?;
            let k = kaehler_check(&t, *samples, seed)?;
            let mut r = Report::new("kahler-check");
            r.tolerance("isotropy", 1e-9 * k.scale)
                .tolerance("positivity", -1e-9 * k.scale)
                .result("seed", seed)
                .result("isotropy_max_abs", k.isotropy_max_abs)
                .result("positivity_min", k.positivity_min)
                .result("unit_positivity_min", k.unit_positivity_min)
                .contract("isotropic", k.isotropy_max_abs <= 1e-9 * k.scale)
                .contract("positive", k.positivity_min >= -1e-9 * k.scale);
            Ok(r)
        }
        Command::ProjectiveCompare { x0, a1, a2 } => {
            let x = as_vector(&ld(x0)?, x0)?;
            let a1 = SkewHermitian::from_either(&ld(a1)?)?;
            let a2 = SkewHermitian::from_either(&ld(a2)?)?;
            let c = projective_form_compare(&x, &a1, &a2)?;
            let mut r = Report::new("projective-compare");
            r.tolerance("abs_match", leafkit_core::symplectic::PROJECTIVE_MATCH_TOL)
                .result("orbit_form", c.orbit_form)
                .result("geometric_form", c.geometric_form)
                .result("signed_equal", (c.orbit_form - c.geometric_form).abs() <= 1e-9)
                .contract("abs_match", c.abs_match);
            Ok(r)
        }
        Command::OrbitSample { t, count, scale } => {
            let t = ld(t)?;
            t.ensure_hermitian()?;
            let samples = orbit_sample(&t, *count, *scale, seed)?;
            let tol = 1e-9 * scale_of(&t);
            let mut on_leaf = true;
            for s in &samples {
                on_leaf &= same_leaf(&t, s, tol)?;
            }
            let mut r = Report::new("orbit-sample");
            r.tolerance("eigenvalues", tol).result("seed", seed).result(
                "samples",
                samples.iter().map(|s| crate::matrix_file::MatrixFile::from_matrix(s).to_value()).collect::<Vec<_>>(),
            );
            r.contract("isospectral", on_leaf);
            Ok(r)
        }
        Command::LeafCompare { r1, r2, tol } => {
            let (a, b) = (ld(r1)?, ld(r2)?);
            let same = same_leaf(&a, &b, *tol)?;
            let mut r = Report::new("leaf-compare");
            r.tolerance("eigenvalues", *tol)
                .result("same_leaf", same)
                .result("signature_1", signature_value(&leaf_signature(&a, *tol)?))
                .result("signature_2", signature_value(&leaf_signature(&b, *tol)?));
            Ok(r)
        }
        Command::CrossSection { t, v, tol, cluster_tol } => {
            let (t, v) = (ld(t)?, ld(v)?);
            let mut r = Report::new("cross-section");
            let rf = reference(&t, *cluster_tol, &mut r)?;
            let res = cross_section_phi(&rf, &v)?;
            r.tolerance("residual", *tol)
                .tolerance("unitarity", 1e-9)
                .matrix("phi", &res.phi)
                .matrix("psi", &res.psi)
                .result("residual", res.residual)
                .result("corner_min_sv", res.corner_min_sv)
                .contract("section", res.residual <= *tol)
                .contract("unitary", res.phi.unitary_defect() <= 1e-9 && res.psi.unitary_defect() <= 1e-9)
                .contract("psi_commutes", t.commutator(&res.psi).norm2() <= 1e-9 * scale_of(&t));
            Ok(r)
        }
        Command::WellDefined { t, v, g, tol, cluster_tol } => {
            let (t, v, g) = (ld(t)?, ld(v)?, ld(g)?);
            let mut r = Report::new("well-defined");
            let rf = reference(&t, *cluster_tol, &mut r)?;
            let d = well_definedness_check(&rf, &v, &g)?;
            r.tolerance("distance", *tol).result("distance", d).contract("independent", d <= *tol);
            Ok(r)
        }
        Command::Continuity { t, a, phi, steps, cluster_tol } => {
            let f = norming(phi)?;
            let t = ld(t)?;
            let a = SkewHermitian::from_either(&ld(a)?)?;
            let mut r = Report::new("continuity");
            let rf = reference(&t, *cluster_tol, &mut r)?;
            let vs = (0..=*steps)
                .map(|k| matrix_exp(&a.matrix().scale_real(0.5f64.powi(k as i32))))
                .collect::<leafkit_core::Result<Vec<_>>>()?;
            let pts = continuity_modulus(&rf, &f, &vs)?;
            let trend = continuity_trend(&pts);
            r.tolerance("max_violation_fraction", leafkit_core::cross_section::TREND_MAX_VIOLATION)
                .result("phi", f.to_string())
                .result("op_dist", pts.iter().map(|p| p.op_dist).collect::<Vec<_>>())
                .result("phi_dist", pts.iter().map(|p| p.phi_dist).collect::<Vec<_>>())
                .result("pairs", trend.pairs)
                .result("violation_fraction", trend.violation_fraction)
                .result("limit_ok", trend.limit_ok)
                .contract("trend", trend.holds);
            Ok(r)
        }
        Command::OffdiagBound { t, w, phi, tol, cluster_tol } => {
            let f = norming(phi)?;
            let (t, w) = (ld(t)?, ld(w)?);
            let mut r = Report::new("offdiag-bound");
            let rf = reference(&t, *cluster_tol, &mut r)?;
            let b = offdiag_bound_check(&rf, &f, &w)?;
            r.tolerance("violation", *tol)
                .result("phi", f.to_string())
                .result("max_violation", b.max_violation)
                .contract("bound_holds", b.max_violation <= *tol);
            Ok(r)
        }
        Command::Minpoly { t, tol } => {
            let t = ld(t)?;
            let p = minimal_polynomial(&t, *tol)?;
            let deg = p.degree().unwrap_or(0);
            let residual = hermitian_function(&t, |x| p.eval(x))?.norm2();
            let bound = tol * (1.0 + t.norm2()).powi(deg as i32);
            let mut r = Report::new("minpoly");
            r.tolerance("cluster", *tol)
                .tolerance("annihilation", bound)
                .result("coefficients", p.coeffs())
                .result("polynomial", p.to_string())
                .result("degree", deg)
                .result("annihilation_residual", residual)
                .contract("annihilates", residual <= bound);
            Ok(r)
        }
        Command::AlgebraDim { t, tol } => {
            let t = ld(t)?;
            let mut r = Report::new("algebra-dim");
            r.tolerance("cluster", *tol).result("dimension", generated_algebra_dimension(&t, *tol)?);
            Ok(r)
        }
    }
}
