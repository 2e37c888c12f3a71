//! Acceptance suite: one PASS/FAIL line per criterion, exit 1 on any failure.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use cartan::library::{all_cards, get_model, heisenberg, mutated_jacobi, random_trivial_product, ModelCard};
use cartan::liealg::{ChiElement, LieData, MultiIndex, CHECK_FULL_ANTISYMMETRY, CHECK_JACOBI};
use cartan::model::{validate_model, ModelElement, COMPONENT_CHECKS};
use cartan::modelfile::{export_model, parse_model, same_model_data};
use cartan::pipeline::analyze;
use cartan::qlinalg::cohomology_dims;
use cartan::report::PagesReport;
use cartan::specseq::{cartan_filtration, SpectralSequence};
use cartan::validation::Status;
use cartan::Rational;
use num_traits::Signed;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn q(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cells(v: &[((usize, usize), usize)]) -> BTreeMap<(usize, usize), usize> {
    v.iter().copied().collect()
}

/// Default cards plus parameter variants.
fn library() -> Vec<ModelCard> {
    let mut v = all_cards();
    for w in [1, 3, 5, -2] {
        v.push(get_model("weighted_hopf", Some(w)).unwrap());
    }
    for n in [1, 3, 4] {
        v.push(get_model("group_torus", Some(n)).unwrap());
    }
    v.push(get_model("trivial_product", Some(7)).unwrap());
    v
}

fn hopf() -> Outcome {
    let card = get_model("hopf", None).map_err(|e| e.to_string())?;
    let a = analyze(&card.model).map_err(|r| r.to_string())?;
    ensure(a.total_cohomology == vec![1, 0, 0, 1], || format!("total cohomology {:?}", a.total_cohomology))?;
    let e2 = a.sequence.page(2).nonzero_dims();
    ensure(e2 == cells(&[((0, 0), 1), ((0, 1), 1), ((2, 0), 1), ((2, 1), 1)]), || format!("E2 {e2:?}"))?;
    let ranks: BTreeMap<_, _> = a.sequence.page(2).dr_ranks().into_iter().filter(|(_, r)| *r > 0).collect();
    ensure(ranks == cells(&[((0, 1), 1)]), || format!("d2 ranks {ranks:?}"))?;
    ensure(a.stabilized_at() == 3, || format!("stabilized at {}", a.stabilized_at()))?;
    ensure(a.e2.report.verdict() == "isomorphism", || a.e2.report.verdict().to_string())?;
    Ok("H=[1,0,0,1], E2 = 4 unit cells, d2 rank 1 at (0,1), r=3, isomorphism".into())
}

fn kronecker() -> Outcome {
    let card = get_model("kronecker", None).map_err(|e| e.to_string())?;
    let a = analyze(&card.model).map_err(|r| r.to_string())?;
    ensure(a.total_cohomology == vec![1, 2, 1], || format!("total cohomology {:?}", a.total_cohomology))?;
    let e2 = a.sequence.page(2).nonzero_dims();
    ensure(e2 == cells(&[((0, 0), 1), ((0, 1), 1), ((1, 0), 1), ((1, 1), 1)]), || format!("E2 {e2:?}"))?;
    ensure(a.stabilized_at() == 2, || format!("stabilized at {}", a.stabilized_at()))?;
    ensure(a.e2.report.isomorphism, || a.e2.report.verdict().to_string())?;
    Ok("H=[1,2,1], E2 = {0,1}^2 unit cells, r=2, isomorphism".into())
}

fn group_su2() -> Outcome {
    let card = get_model("group_su2", None).map_err(|e| e.to_string())?;
    let lie = card.model.lie();
    let h = cohomology_dims(&lie.lie_cohomology());
    ensure(h == vec![1, 0, 0, 1], || format!("H(su2) {h:?}"))?;
    let inv: Vec<usize> = lie.invariant_subcomplex().iter().map(|s| s.dim()).collect();
    ensure(inv == h, || format!("invariant subcomplex dims {inv:?}"))?;
    let a = analyze(&card.model).map_err(|r| r.to_string())?;
    ensure(a.e2.report.invariants_represent_cohomology, || "invariants do not map onto H(su2)".into())?;
    let column: Vec<usize> = (0..=3).map(|qq| a.sequence.page(2).dim(0, qq)).collect();
    ensure(column == h, || format!("E2^(0,q) {column:?}"))?;
    let ab = a.sequence.abutment_dims();
    ensure(ab == vec![1, 0, 0, 1] && a.abutment.passed, || format!("abutment {ab:?}"))?;
    Ok("H(su2)=[1,0,0,1] = invariant dims = E2^(0,q); abutment [1,0,0,1]".into())
}

fn e2_identity() -> Outcome {
    let mut cards = library();
    cards.extend((0..20).map(|s| random_trivial_product(1000 + s)));
    let mut checked = 0;
    for card in &cards {
        let a = analyze(&card.model).map_err(|r| format!("{}: {r}", card.name()))?;
        for c in &a.e2.report.cells {
            ensure(c.e2_dim == c.product && c.rank_f == c.e2_dim, || {
                format!(
                    "{} ({},{}): dim E2 {} product {} rank F {}",
                    card.name(),
                    c.p,
                    c.q,
                    c.e2_dim,
                    c.product,
                    c.rank_f
                )
            })?;
            checked += 1;
        }
        ensure(a.e2.report.isomorphism, || format!("{}: verdict {}", card.name(), a.e2.report.verdict()))?;
    }
    Ok(format!("{} models ({} random), {checked} cells, F full rank everywhere", cards.len(), 20))
}

/// `delta(chi_I) = (-1)^q 1/2 sum_l L_l(chi_I) ^ chi_l`, with `L_l` the Lie
/// derivative `i_l delta + delta i_l`; equivalently `(-1)^{q+1}` with the
/// coadjoint action, which is `-L_l`.
fn delta_identity() -> Outcome {
    let mut algebras = vec![("su2", LieData::<Rational>::su2())];
    for n in 1..=4 {
        algebras.push(("abelian", LieData::abelian(n).unwrap()));
    }
    let half = Rational::new(1.into(), 2.into());
    let mut count = 0;
    for (name, lie) in &algebras {
        let n = lie.dim();
        for idx in MultiIndex::all(n) {
            let x = ChiElement::basis(idx);
            let qq = idx.len();
            let sign = if qq % 2 == 0 { q(1) } else { q(-1) };
            let mut via_lie = ChiElement::zero();
            let mut via_coad = ChiElement::zero();
            for l in 0..n {
                let g = ChiElement::generator(l);
                via_lie = &via_lie + &lie.lie_derivative(l, &x).unwrap().wedge(&g);
                via_coad = &via_coad + &lie.coadjoint(l, &x).unwrap().wedge(&g);
            }
            let lhs = lie.ce_delta(&x);
            let rhs = via_lie.scaled(&(sign.clone() * half.clone()));
            ensure(lhs == rhs, || format!("{name} n={n} {idx}: delta = {lhs}, rhs = {rhs}"))?;
            let rhs2 = via_coad.scaled(&(-sign * half.clone()));
            ensure(lhs == rhs2, || format!("{name} n={n} {idx}: coadjoint form gives {rhs2}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} multi-indices on su2 and abelian n=1..4"))
}

fn d_squared() -> Outcome {
    let mut elements = 0;
    for card in library() {
        let m = &card.model;
        for deg in 0..=m.top_degree() {
            for &mono in m.basis(deg) {
                let x = ModelElement::basis(mono);
                ensure(m.total_d(&m.total_d(&x)).is_zero(), || format!("{}: d^2 {mono:?} != 0", card.name()))?;
                elements += 1;
            }
        }
        let report = validate_model(m);
        for name in COMPONENT_CHECKS {
            let st = report.check(name).map(|c| c.status);
            ensure(st == Some(Status::Pass), || format!("{}: {name} is {st:?}", card.name()))?;
        }
    }
    let h = validate_model(&heisenberg());
    let full = h.check(&format!("lie: {CHECK_FULL_ANTISYMMETRY}")).ok_or("missing check")?;
    ensure(full.status == Status::Fail && full.detail.as_deref().unwrap_or("").contains("ad-invariant"), || {
        format!("heisenberg: {full:?}")
    })?;
    let mj = validate_model(&mutated_jacobi());
    let jac = mj.check(&format!("lie: {CHECK_JACOBI}")).ok_or("missing check")?;
    ensure(jac.status == Status::Fail && jac.detail.as_deref().unwrap_or("").contains("cyclic"), || {
        format!("mutated jacobi: {jac:?}")
    })?;
    // fully antisymmetric, so only Jacobi can catch it
    let alt = LieData::fully_antisymmetric(5, &[((0, 1, 2), q(1)), ((0, 3, 4), q(1))]).unwrap();
    let alt = cartan::liealg::validate_lie(&alt);
    ensure(alt.check(CHECK_JACOBI).map(|c| c.status) == Some(Status::Fail), || "n=5 mutation accepted".into())?;
    ensure(alt.check(CHECK_FULL_ANTISYMMETRY).map(|c| c.status) == Some(Status::Pass), || "n=5 mutation".into())?;
    Ok(format!("{elements} basis elements, five components each; heisenberg and mutated Jacobi rejected"))
}

fn abutment() -> Outcome {
    let cards = library();
    for card in &cards {
        let ss = SpectralSequence::compute(&cartan_filtration(&card.model));
        let total = cohomology_dims(&card.model.total_cohomology());
        let mut einf = ss.abutment_dims();
        einf.resize(total.len(), 0);
        ensure(einf == total, || format!("{}: E_inf {einf:?} vs H {total:?}", card.name()))?;
    }
    Ok(format!("{} cards", cards.len()))
}

fn recurrence() -> Outcome {
    let cards = library();
    let mut pages = 0;
    for card in &cards {
        let fc = cartan_filtration(&card.model);
        let ss = SpectralSequence::compute(&fc);
        for w in ss.pages.windows(2) {
            ensure(w[1].dims() == w[0].homology_dims(), || format!("{} r={}", card.name(), w[0].r))?;
            pages += 1;
        }
    }
    Ok(format!("{pages} page transitions on {} cards", cards.len()))
}

fn weighted() -> Outcome {
    let hopf = analyze(&get_model("hopf", None).unwrap().model).unwrap();
    let e3 = hopf.sequence.page(3).nonzero_dims();
    for w in [1, 2, 3, 5] {
        let a = analyze(&get_model("weighted_hopf", Some(w)).unwrap().model).map_err(|r| r.to_string())?;
        let entry = a.transgression_entry((0, 1)).ok_or("no 1x1 d2 at (0,1)")?;
        ensure(entry.abs() == q(w), || format!("w={w}: d2 entry {entry}"))?;
        ensure(a.sequence.page(3).nonzero_dims() == e3, || format!("w={w}: E3 differs"))?;
    }
    Ok("|d2| = w for w in {1,2,3,5}; E3 = {(0,0):1,(2,1):1}".into())
}

fn cli_round_trip() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_cartan");
    let cards = library();
    for card in &cards {
        let back = parse_model(&export_model(&card.model)).map_err(|e| format!("{}: {e}", card.name()))?;
        ensure(same_model_data(&card.model, &back), || format!("{}: export/import changed the model", card.name()))?;
    }
    for name in cartan::library::NAMES {
        let run = |fmt: &str| Command::new(bin).args(["examples", "--run", name, "--format", fmt]).output();
        let table = run("table").map_err(|e| e.to_string())?;
        let machine = run("machine").map_err(|e| e.to_string())?;
        ensure(table.status.code() == Some(0) && machine.status.code() == Some(0), || format!("{name}: nonzero exit"))?;
        let parsed: PagesReport =
            serde_json::from_slice(&machine.stdout).map_err(|e| format!("{name}: machine output: {e}"))?;
        ensure(parsed.to_table().as_bytes() == table.stdout.as_slice(), || {
            format!("{name}: table and machine differ")
        })?;
    }
    Ok(format!("{} cards round-trip; examples --run exits 0 on all 6; table == render(machine)", cards.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("hopf card", hopf, Some(Duration::from_secs(1))),
        ("kronecker card", kronecker, Some(Duration::from_secs(1))),
        ("group_su2 card", group_su2, Some(Duration::from_secs(1))),
        ("E2 = H(B) (x) H(g) with full-rank F", e2_identity, Some(Duration::from_secs(10))),
        ("delta via Lie derivatives", delta_identity, None),
        ("d^2 = 0 suite and negative fixtures", d_squared, None),
        ("abutment oracle", abutment, None),
        ("page recurrence", recurrence, None),
        ("weighted hopf transgression", weighted, None),
        ("CLI round trip", cli_round_trip, None),
    ];
    let mut failed = 0;
    for (i, (name, f, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut result = f();
        let elapsed = start.elapsed();
        if let (Ok(_), Some(b)) = (&result, budget) {
            if elapsed > *b {
                result = Err(format!("took {:.2} s, budget {:.0} s", elapsed.as_secs_f64(), b.as_secs_f64()));
            }
        }
        match result {
            Ok(detail) => println!("[PASS] {:>2} {name}: {detail} ({:.3} s)", i + 1, elapsed.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {:>2} {name}: {why} ({:.3} s)", i + 1, elapsed.as_secs_f64());
            }
        }
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
