use sha2::{Digest, Sha256};
use weyl_core::endo::{normalize_affine, parse_map_file, roundtrip_residuals, truncated_inverse, MapFile, MapKind};
use weyl_core::gr::gr_endo;
use weyl_core::poisson::PoissonContext;
use weyl_core::twisted::{
    bound_step, default_operator_degree, degree_growth_check, filtration_step, generation_dims, hilbert_dims,
    length_bound_jacobian, length_bound_poisson, length_bound_weyl, TwistedModule,
};
use weyl_core::{parse_poly, Poly, PolyEndo, RelationReport, WeylEndo};

use crate::report::Report;

/// Input problems: unreadable or malformed files, wrong file kind, bad options.
#[derive(Debug)]
pub struct InputError(pub String);

pub type CmdResult = Result<Report, InputError>;

pub struct Input {
    pub digest: String,
    pub file: MapFile,
}

impl Input {
    pub fn load(path: &str) -> Result<Input, InputError> {
        let bytes = std::fs::read(path).map_err(|e| InputError(format!("{path}: {e}")))?;
        let digest = hex::encode(Sha256::digest(&bytes));
        let src = String::from_utf8(bytes).map_err(|_| InputError(format!("{path}: not UTF-8")))?;
        let file = parse_map_file(&src).map_err(|e| InputError(format!("{path}: {e}")))?;
        Ok(Input { digest, file })
    }

    fn kind_name(&self) -> &'static str {
        match self.file.kind {
            MapKind::Jacobian => "jacobian",
            MapKind::Poisson => "poisson",
        }
    }

    fn map(&self) -> &PolyEndo {
        &self.file.map
    }

    fn report(&self, command: &'static str) -> Report {
        Report::new(command, self.digest.clone(), self.kind_name(), self.file.n, self.map().degree())
    }

    fn require(&self, kind: MapKind, command: &str) -> Result<(), InputError> {
        if self.file.kind == kind {
            return Ok(());
        }
        let want = match kind {
            MapKind::Jacobian => "an `n = <int>` file",
            MapKind::Poisson => "a `poisson n = <int>` file",
        };
        Err(InputError(format!("`{command}` expects {want}")))
    }

    fn parse_poly(&self, src: &str, what: &str) -> Result<Poly, InputError> {
        parse_poly(src, self.map().n()).map_err(|e| InputError(format!("{what}: {e}")))
    }
}

fn relation_checks(report: &mut Report, relations: &RelationReport) {
    let failures: Vec<_> = relations.failures().collect();
    let total = relations.checks.len();
    if failures.is_empty() {
        report.check(format!("defining relations ({total})"), true, None);
    }
    for f in failures {
        report.check(f.relation.clone(), false, Some(f.residual.to_string()));
    }
}

fn images_text(map: &PolyEndo) -> String {
    map.images()
        .iter()
        .enumerate()
        .map(|(i, p)| format!("x{} -> {}", i + 1, p))
        .collect::<Vec<_>>()
        .join("\n")
}

fn weyl_text(phi: &WeylEndo) -> String {
    phi.to_string().trim_end().to_string()
}

pub fn jacobian(input: &Input) -> CmdResult {
    input.require(MapKind::Jacobian, "jacobian")?;
    let mut r = input.report("jacobian");
    let map = input.map();
    r.line("jacobian matrix", map.jacobian_matrix());
    let det = map.jacobian_det();
    r.line("det", &det);
    let ok = map.is_jacobian_map();
    r.check("det is a nonzero constant", ok, (!ok).then(|| det.to_string()));
    Ok(r)
}

/// `extend` or `extension_with_potential`; records a failed check on a non-Jacobian map.
fn extension(input: &Input, r: &mut Report, potential: Option<&Poly>) -> Option<WeylEndo> {
    let map = input.map();
    if !map.is_jacobian_map() {
        r.check("det is a nonzero constant", false, Some(map.jacobian_det().to_string()));
        return None;
    }
    let phi = match potential {
        Some(p) => map.extension_with_potential(p),
        None => map.extend(),
    };
    match phi {
        Ok(phi) => Some(phi),
        Err(e) => {
            r.check("extension", false, Some(e.to_string()));
            None
        }
    }
}

pub fn extend(input: &Input, potential: Option<&str>) -> CmdResult {
    input.require(MapKind::Jacobian, "extend")?;
    let mut r = input.report("extend");
    let p = potential.map(|s| input.parse_poly(s, "--potential")).transpose()?;
    let Some(phi) = extension(input, &mut r, p.as_ref()) else {
        return Ok(r);
    };
    r.line("extension", weyl_text(&phi));
    relation_checks(&mut r, &phi.verify());
    if let Some(p) = &p {
        let normalized = p - &Poly::constant(p.nvars(), p.constant_term());
        match input.map().potential_of_extension(&phi) {
            Ok(q) => r.check(
                "potential recovered up to a constant",
                q == normalized,
                (q != normalized).then(|| q.to_string()),
            ),
            Err(e) => r.check("potential recovered up to a constant", false, Some(e.to_string())),
        }
    }
    Ok(r)
}

pub fn lift(input: &Input) -> CmdResult {
    input.require(MapKind::Poisson, "lift")?;
    let mut r = input.report("lift");
    let ctx = PoissonContext::new(input.file.n);
    let map = input.map();
    let s = ctx
        .structure_identity(map)
        .map_err(|e| InputError(e.to_string()))?;
    r.line("det", &s.jacobian_det);
    if s.is_poisson {
        r.check("preserves the Poisson bracket", true, None);
    } else {
        let check = ctx.is_poisson_endo(map).map_err(|e| InputError(e.to_string()))?;
        for f in check.failures {
            r.check(
                format!("{{x{}', x{}'}}", f.i, f.j),
                false,
                Some(f.residual.to_string()),
            );
        }
    }
    r.check("bracket matrix = J Omega J^t", s.chain_rule_holds, None);
    if let Some(unit) = s.det_is_unit_sign {
        r.check("det in {1, -1}", unit, (!unit).then(|| s.jacobian_det.to_string()));
    }
    if s.is_poisson {
        match ctx.lift_to_weyl(map) {
            Ok(phi) => {
                r.line("lift", weyl_text(&phi));
                relation_checks(&mut r, &phi.verify());
            }
            Err(e) => r.check("lift", false, Some(e.to_string())),
        }
    }
    Ok(r)
}

pub fn gr(input: &Input, potential: Option<&str>) -> CmdResult {
    input.require(MapKind::Jacobian, "gr")?;
    let mut r = input.report("gr");
    let p = potential.map(|s| input.parse_poly(s, "--potential")).transpose()?;
    let Some(phi) = extension(input, &mut r, p.as_ref()) else {
        return Ok(r);
    };
    let g = match gr_endo(&phi) {
        Ok(g) => g,
        Err(e) => {
            r.check("filtration preserved", false, Some(e.to_string()));
            return Ok(r);
        }
    };
    r.line("gr", images_text(&g));
    let ctx = PoissonContext::new(input.file.n);
    let check = ctx.is_poisson_endo(&g).map_err(|e| InputError(e.to_string()))?;
    if check.is_poisson() {
        r.check("gr preserves the Poisson bracket", true, None);
    }
    for f in check.failures {
        r.check(
            format!("{{x{}', x{}'}}", f.i, f.j),
            false,
            Some(f.residual.to_string()),
        );
    }
    if p.is_some() {
        let plain = input.map().extend().and_then(|e| gr_endo(&e));
        let same = plain.as_ref().is_ok_and(|q| *q == g);
        r.check("gr unchanged by the potential", same, None);
    }
    Ok(r)
}

pub fn invert(input: &Input, trunc: u32) -> CmdResult {
    input.require(MapKind::Jacobian, "invert")?;
    let mut r = input.report("invert");
    r.line("truncation degree", trunc);
    let map = input.map();
    let (norm, lambda) = match normalize_affine(map) {
        Ok(v) => v,
        Err(e) => {
            r.check("affine normalization", false, Some(e.to_string()));
            return Ok(r);
        }
    };
    if lambda != PolyEndo::identity(map.n()) {
        r.line("affine change lambda", images_text(&lambda));
        r.line("normalized map", images_text(&norm));
    }
    let inv = match truncated_inverse(&norm, trunc) {
        Ok(inv) => inv,
        Err(e) => {
            r.check("truncated inverse", false, Some(e.to_string()));
            return Ok(r);
        }
    };
    r.line("inverse", images_text(&inv));
    let exact = norm.compose(&inv).is_ok_and(|c| c == PolyEndo::identity(map.n()));
    r.line("exact polynomial inverse", if exact { "yes" } else { "no" });
    let (left, right) = roundtrip_residuals(&norm, &inv, trunc).map_err(|e| InputError(e.to_string()))?;
    for (name, resid) in [("map o inverse", left), ("inverse o map", right)] {
        let bad: Vec<String> = resid
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(i, p)| format!("x{}: {}", i + 1, p))
            .collect();
        r.check(
            format!("{name} = id mod degree {}", trunc + 1),
            bad.is_empty(),
            (!bad.is_empty()).then(|| bad.join("; ")),
        );
    }
    Ok(r)
}

pub fn bounds(input: &Input) -> CmdResult {
    let mut r = input.report("bounds");
    let (n, d) = (input.file.n, input.map().degree());
    match input.file.kind {
        MapKind::Jacobian => {
            r.m = Some(bound_step(n, d).to_string());
            r.bounds.insert("module length m^n".into(), length_bound_jacobian(n, d).to_string());
            r.bounds.insert("weyl d^(2n)".into(), length_bound_weyl(n, d).to_string());
            let ok = input.map().is_jacobian_map();
            r.check(
                "det is a nonzero constant",
                ok,
                (!ok).then(|| input.map().jacobian_det().to_string()),
            );
        }
        MapKind::Poisson => {
            r.bounds.insert("module length d^(2n)".into(), length_bound_poisson(n, d).to_string());
            let ok = PoissonContext::new(n)
                .is_poisson_endo(input.map())
                .map_err(|e| InputError(e.to_string()))?
                .is_poisson();
            r.check("preserves the Poisson bracket", ok, None);
        }
    }
    Ok(r)
}

/// The twisted module of the file's map, or a failed check explaining why not.
fn module(input: &Input, r: &mut Report) -> Option<TwistedModule> {
    let phi = match input.file.kind {
        MapKind::Jacobian => extension(input, r, None)?,
        MapKind::Poisson => match PoissonContext::new(input.file.n).lift_to_weyl(input.map()) {
            Ok(phi) => phi,
            Err(e) => {
                r.check("lift", false, Some(e.to_string()));
                return None;
            }
        },
    };
    match TwistedModule::new(phi) {
        Ok(m) => Some(m),
        Err(e) => {
            r.check("defining relations", false, Some(e.to_string()));
            None
        }
    }
}

pub fn hilbert(input: &Input, steps: u32) -> CmdResult {
    let mut r = input.report("hilbert");
    let Some(m) = module(input, &mut r) else {
        return Ok(r);
    };
    let step = filtration_step(m.phi());
    r.line("filtration step", step);
    if input.file.kind == MapKind::Jacobian {
        let formula = bound_step(input.file.n, input.map().degree());
        r.m = Some(formula.to_string());
        if formula != step.into() {
            r.line("note", format!("filtration step {step} differs from m = {formula}"));
        }
    }
    let f = hilbert_dims(m.n(), step, steps);
    r.dims = Some(f.dims.iter().map(|&d| d as u64).collect());
    r.line("leading term", format!("({}) s^{}", f.leading_coefficient, f.leading_exponent));
    r.check("dims strictly increasing", f.strictly_increasing(), None);
    r.check("dims match monomial enumeration", f.enumeration_agrees, None);
    if f.top_difference.is_some() {
        let diff = f.top_difference.as_ref().map(|d| d.to_string());
        r.check("leading data fits the top dims", f.leading_fits(), (!f.leading_fits()).then(|| diff.unwrap_or_default()));
    }
    let g = degree_growth_check(&m, step, steps);
    r.line("growth checks", g.checked);
    if g.passed() {
        r.check(format!("generators raise filtration level by at most one (step {step})"), true, None);
    } else {
        let v = &g.violations[0];
        let witness = format!(
            "{} on {} has degree {}, bound {} ({} violations)",
            v.generator,
            Poly::monomial(m.n(), v.monomial.clone(), weyl_core::rat(1)),
            v.degree,
            v.bound,
            g.violations.len()
        );
        r.check(format!("generators raise filtration level by at most one (step {step})"), false, Some(witness));
    }
    Ok(r)
}

pub fn cyclic(input: &Input, generator: &str, opdeg: Option<u32>, maxdeg: u32) -> CmdResult {
    let mut r = input.report("cyclic");
    let g = input.parse_poly(generator, "--gen")?;
    if g.is_zero() {
        return Err(InputError("--gen: generator must be nonzero".into()));
    }
    let Some(m) = module(input, &mut r) else {
        return Ok(r);
    };
    let k = opdeg.unwrap_or_else(|| default_operator_degree(m.n(), input.map().degree(), maxdeg));
    r.line("generator", &g);
    r.line("operator degree", k);
    let report = generation_dims(&m, &g, k, maxdeg).map_err(|e| InputError(e.to_string()))?;
    r.dims = Some(report.dims.iter().map(|&d| d as u64).collect());
    let full: Vec<String> = report.full.iter().map(usize::to_string).collect();
    r.line("full dims", format!("[{}]", full.join(", ")));
    r.line("operators applied", report.applied);
    r.check(
        format!("generates up to degree {maxdeg} at operator degree {k}"),
        report.generates(),
        None,
    );
    Ok(r)
}
