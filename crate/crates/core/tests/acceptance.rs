use std::time::{Duration, Instant};

use enrich_core::corpus;
use enrich_core::enriched::{self, EnrichedGraph};
use enrich_core::fan;
use enrich_core::moduli;
use enrich_core::oracle;
use enrich_core::toric;
use enrich_core::verify::{self, Outcome, DEFAULT_SEED};

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond { Ok(()) } else { Err(msg()) }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn enriched_counts() -> Outcome {
    for (g, total, generic) in [(corpus::triangle(), 13, 6), (corpus::theta(3), 7, 3)] {
        let all = enriched::enumerate_enriched(&g).map_err(err)?;
        let gen = all.iter().filter(|eg| eg.is_generic()).count();
        ensure(all.len() == total && gen == generic, || format!("{} structures, {gen} generic", all.len()))?;
        ensure(oracle::enriched_structures(&g).map_err(err)?.len() == total, || "oracle count".into())?;
    }
    let g = corpus::figure1();
    let listed: Vec<_> = enriched::enumerate_enriched(&g)
        .map_err(err)?
        .into_iter()
        .map(|eg| eg.preorder().clone())
        .collect();
    let examples: [&[(&str, &str)]; 3] = [
        &[("e1", "e2"), ("e1", "e3"), ("e3", "e4")],
        &[("e3", "e1"), ("e1", "e2"), ("e1", "e4")],
        &[("e1", "e3"), ("e3", "e1"), ("e3", "e2"), ("e3", "e4")],
    ];
    for pairs in examples {
        let eg = EnrichedGraph::from_pairs(g.clone(), pairs).map_err(err)?;
        ensure(listed.contains(eg.preorder()), || format!("{} missing", eg.preorder().describe()))?;
    }
    Ok(format!("{} structures on figure1", listed.len()))
}

fn star_pipeline() -> Outcome {
    verify::star_pipeline()?;
    for (g, cones) in [(corpus::triangle(), 6), (corpus::theta(3), 3)] {
        let f = fan::fan_via_star(&g).map_err(err)?;
        ensure(f.maximal().len() == cones, || format!("{} maximal cones", f.maximal().len()))?;
    }
    Ok("star fans equal direct fans".into())
}

fn quotient_fans() -> Outcome {
    for n in 2..=4 {
        let f = fan::sigma_y(&corpus::theta(n)).map_err(err)?;
        let rays = f.rays();
        ensure(f.ambient() == n - 1 && rays.len() == n && f.maximal().len() == n, || {
            format!("theta{n}: rank {}, {} rays, {} cones", f.ambient(), rays.len(), f.maximal().len())
        })?;
        let sum = rays.iter().fold(vec![0.into(); n - 1], |acc: Vec<num_bigint::BigInt>, r| {
            acc.iter().zip(r).map(|(a, b)| a + b).collect()
        });
        ensure(sum.iter().all(|x| *x == 0.into()), || format!("theta{n}: rays do not sum to zero"))?;
        ensure(f.is_complete(), || format!("theta{n}: not complete"))?;
    }
    let g = corpus::triangle();
    let f = fan::sigma_y(&g).map_err(err)?;
    ensure(f.is_complete() && f.rays().len() == 6 && f.maximal().len() == 6, || {
        format!("triangle: {} rays, {} cones", f.rays().len(), f.maximal().len())
    })?;
    let schedule = toric::blowup_schedule(&g).map_err(err)?;
    ensure(
        schedule.len() == 1 && schedule[0].size == 1 && schedule[0].centers.len() == 3,
        || format!("triangle schedule {schedule:?}"),
    )?;
    ensure(fan::fan_equal(&toric::schedule_fan(&g).map_err(err)?, &f), || "schedule fan differs".into())?;
    verify::quotient_complete()?;
    Ok("theta2..theta4 projective, triangle hexagon".into())
}

fn toric_checks() -> Outcome {
    let ranks = verify::kernel_lattice()?;
    let mutants = verify::torus_points(DEFAULT_SEED)?;
    Ok(format!("{ranks}; {mutants}"))
}

fn genus_two() -> Outcome {
    let space = moduli::enumerate_cells(2).map_err(err)?;
    ensure(space.graphs.len() == 7 && space.cells.len() == 9, || {
        format!("{} graphs, {} cells", space.graphs.len(), space.cells.len())
    })?;
    let max = space.maximal_cells();
    let mut auts: Vec<usize> = max.iter().map(|c| c.aut_order).collect();
    auts.sort();
    ensure(max.len() == 2 && max.iter().all(|c| c.dim == 3) && auts == [2, 2], || {
        format!("{} maximal cells, aut orders {auts:?}", max.len())
    })?;
    let lifts = verify::point_lifts(DEFAULT_SEED, 500)?;
    Ok(format!("9 cells; {lifts}"))
}

fn bond_data() -> Outcome {
    let round = verify::bond_round_trip()?;
    let a = verify::all_bond_collections_enriched(&corpus::theta(3))?;
    let b = verify::all_bond_collections_enriched(&corpus::triangle())?;
    Ok(format!("{round} round-trip; {a} + {b} collections"))
}

fn main() {
    let criteria: Vec<(&str, u64, Box<dyn Fn() -> Outcome>)> = vec![
        ("enriched structure counts", 1, Box::new(enriched_counts)),
        ("open cones cover the orthant", 30, Box::new(|| verify::cover(DEFAULT_SEED, 1000))),
        ("rays, smoothness and faces", 30, Box::new(|| {
            let a = verify::rays_and_smoothness()?;
            let b = verify::faces_are_specializations()?;
            Ok(format!("{a}, {b}"))
        })),
        ("star subdivision pipeline", 10, Box::new(star_pipeline)),
        ("quotient fans", 5, Box::new(quotient_fans)),
        ("toric equations", 60, Box::new(toric_checks)),
        ("genus two moduli", 60, Box::new(genus_two)),
        ("bond data", 30, Box::new(bond_data)),
    ];
    let mut failed = Vec::new();
    for (i, (name, limit, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let in_time = elapsed < Duration::from_secs(*limit);
        let pass = outcome.is_ok() && in_time;
        let detail = match &outcome {
            Ok(d) if in_time => d.clone(),
            Ok(_) => format!("over the {limit} s limit"),
            Err(e) => e.clone(),
        };
        println!(
            "criterion {} {:<30} {} {:>8.2} s  {}",
            i + 1,
            name,
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            detail
        );
        if !pass {
            failed.push(i + 1);
        }
    }
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
    println!("all 8 criteria passed");
}
