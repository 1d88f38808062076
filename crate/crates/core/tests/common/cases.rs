//! Single randomized cases returning a description of the first violated
//! property. Seeds come from the caller so failures can be replayed.

use super::*;
use lincontract::behavior::{behavior_equal, behavior_included, check_io_form, statespace_to_io, Inclusion};
use lincontract::contracts::{
    assumed_output, conjunction, env_compatible, implements, join_assumptions, meet_guarantees, refines, System,
};
use lincontract::polymatrix::{invert_ratmatrix, smith_form};

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: std::result::Result<T, E>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// Smith reconstruction, unimodularity of both factors, and the monic
/// divisibility chain.
pub fn smith(r: &mut TestRng) -> Result<(), String> {
    let (rows, cols) = (r.gen_range(0..=4), r.gen_range(0..=4));
    let sparsity = r.gen_range(0.0..0.6);
    let m = rand_matrix(r, rows, cols, 3, sparsity);
    let sd = smith_form(&m);
    ensure!(sd.reconstruct() == m, "U D V != R for {m}");
    ensure!(ok(sd.u.is_unimodular())? && ok(sd.v.is_unimodular())?, "factor not unimodular for {m}");
    ensure!(&sd.u * &sd.u_inv == PolyMatrix::identity(rows), "U^-1 wrong for {m}");
    ensure!(&sd.v * &sd.v_inv == PolyMatrix::identity(cols), "V^-1 wrong for {m}");
    ensure!(sd.invariant_factors.iter().all(Poly::is_monic), "non-monic factor for {m}");
    ensure!(
        sd.invariant_factors.windows(2).all(|w| w[0].divides(&w[1])),
        "divisibility chain broken for {m}"
    );
    Ok(())
}

/// Decision against the coefficient-matching oracle. Returns the verdict.
pub fn inclusion(r: &mut TestRng) -> Result<bool, String> {
    let (r1, r2) = inclusion_pair(r);
    let verdict = ok(behavior_included(&kernel("w", r1.clone()), &kernel("w", r2.clone())))?;
    let oracle = inclusion_oracle(&r1, &r2, oracle_bound(&r1, &r2));
    ensure!(
        verdict.holds() == oracle.is_some(),
        "decision {} but oracle {} for R1 = {r1}, R2 = {r2}",
        verdict.holds(),
        oracle.is_some()
    );
    if let Some(w) = verdict.witness() {
        ensure!(w.multiplier() * &r1 == r2, "witness does not validate for R1 = {r1}, R2 = {r2}");
    }
    Ok(verdict.holds())
}

/// `P^-1 Q` against the cofactor transfer matrix.
pub fn transfer(r: &mut TestRng) -> Result<(), String> {
    let (n, m, p) = (r.gen_range(0..=4), r.gen_range(1..=2), r.gen_range(1..=2));
    let ss = rand_statespace(r, n, m, p);
    let io = ok(statespace_to_io(&ss))?;
    ensure!(check_io_form(&io), "not in io form: {ss:?}");
    let g = ok(ok(invert_ratmatrix(io.p()))?.checked_mul(&io.q().to_ratmatrix()))?;
    ensure!(g == transfer_oracle(&ss), "P^-1 Q differs from C(sI-A)^-1 B + D for {ss:?}");
    Ok(())
}

fn holds(v: std::result::Result<lincontract::contracts::Verdict, lincontract::Error>) -> Result<bool, String> {
    let v = ok(v)?;
    ensure!(v.validate(), "verdict carries an invalid witness");
    Ok(v.holds())
}

fn included(a: &KernelRep, b: &KernelRep) -> Result<Inclusion, String> {
    ok(behavior_included(a, b))
}

/// Preorder, conjunction and monotonicity properties on one random pair of
/// contracts over the same signal dimensions.
pub fn contracts(r: &mut TestRng) -> Result<(), String> {
    let (m, p) = (r.gen_range(1..=2), r.gen_range(1..=2));
    let c1 = rand_contract(r, m, p);
    let d = rand_contract(r, m, p);
    let (a1, g1) = (c1.assumptions().clone(), c1.guarantees().clone());

    // refinement is a preorder
    ensure!(holds(refines(&c1, &c1))?, "refinement not reflexive");
    let c2 = Contract::new(&shrink(r, &a1), &enlarge(r, &g1));
    let c3 = Contract::new(&shrink(r, c2.assumptions()), &enlarge(r, c2.guarantees()));
    let v12 = ok(refines(&c1, &c2))?;
    let v23 = ok(refines(&c2, &c3))?;
    ensure!(v12.holds() && v23.holds(), "constructed refinements rejected");
    ensure!(holds(refines(&c1, &c3))?, "refinement not transitive");
    let w12: Vec<_> = v12.witnesses().map(|(_, w)| w.clone()).collect();
    let w23: Vec<_> = v23.witnesses().map(|(_, w)| w.clone()).collect();
    // assumptions run A2 -> A1 and A3 -> A2, guarantees G1 -> G2 -> G3
    ensure!(
        w23[0].compose(&w12[0]).validates(c3.assumptions().matrix(), c1.assumptions().matrix()),
        "composed assumption witness invalid"
    );
    ensure!(
        w12[1].compose(&w23[1]).validates(c1.guarantees().matrix(), c3.guarantees().matrix()),
        "composed guarantee witness invalid"
    );

    // conjunction refines both and is the largest such contract
    let conj = ok(conjunction(&c1, &d))?;
    ensure!(holds(refines(&conj, &c1))?, "conjunction does not refine the first argument");
    ensure!(holds(refines(&conj, &d))?, "conjunction does not refine the second argument");
    let join = ok(join_assumptions(&a1, d.assumptions()))?;
    let meet = ok(meet_guarantees(&g1, d.guarantees()))?;
    for (x, y, what) in [
        (&a1, &join, "A1 in join"),
        (d.assumptions(), &join, "A2 in join"),
        (&meet, &g1, "meet in G1"),
        (&meet, d.guarantees(), "meet in G2"),
    ] {
        ensure!(included(x, y)?.holds(), "{what} fails");
    }
    let upper_a = if r.gen_bool(0.3) {
        KernelRep::full(a1.signals().to_vec())
    } else {
        enlarge(r, &join)
    };
    let stacked = ok(KernelRep::new(ok(g1.matrix().vstack(d.guarantees().matrix()))?, g1.signals().to_vec()))?;
    let c = Contract::new(&upper_a, &shrink(r, &stacked));
    ensure!(
        holds(refines(&c, &c1))? && holds(refines(&c, &d))?,
        "constructed common refinement rejected"
    );
    ensure!(holds(refines(&c, &conj))?, "common refinement does not refine the conjunction");
    let idem = ok(conjunction(&c1, &c1))?;
    ensure!(
        holds(refines(&idem, &c1))? && holds(refines(&c1, &idem))?,
        "conjunction not idempotent"
    );

    // implementations carry over to coarser contracts
    let n = r.gen_range(0..=2);
    let sys = System::from(rand_statespace(r, n, m, p));
    let out = ok(assumed_output(&sys, &c1))?;
    let tight = Contract::new(&a1, &out);
    let loose = Contract::new(&shrink(r, &a1), &enlarge(r, &out));
    ensure!(holds(implements(&sys, &tight))?, "system does not implement its own output contract");
    ensure!(holds(refines(&tight, &loose))?, "constructed refinement rejected");
    ensure!(holds(implements(&sys, &loose))?, "implementation not monotone");
    if holds(refines(&c1, &d))? && holds(implements(&sys, &c1))? {
        ensure!(holds(implements(&sys, &d))?, "implementation not monotone on sampled pair");
    }

    // compatible environments carry over to finer contracts
    let env = shrink(r, c2.assumptions());
    ensure!(holds(env_compatible(&env, &c2))?, "constructed environment rejected");
    ensure!(holds(env_compatible(&env, &c1))?, "compatibility not anti-monotone");
    if holds(refines(&c1, &d))? && holds(env_compatible(&env, &d))? {
        ensure!(holds(env_compatible(&env, &c1))?, "compatibility not anti-monotone on sampled pair");
    }
    ensure!(
        ok(behavior_equal(conj.guarantees(), &meet))?.holds(),
        "conjunction guarantees differ from the meet"
    );
    Ok(())
}
