//! The invariants and properties of every module, checked at a model, degree bound and seed.

use akcone_core::cones::{self, Verdict};
use akcone_core::configs::general_screen;
use akcone_core::enumerate::{select_he, ClassTable, SquareFilter, TableTag};
use akcone_core::weyl::{cremona_reduce, orbit, reflect, Root};
use akcone_core::{IntClass, Model};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::oracle::{self, Side};
use super::{int_class, ray_class, to_i64, Check, Sampler, Tables};
use crate::cache::{CacheError, TableKey};

#[derive(Clone, Copy, Debug)]
pub struct LemmaParams {
    pub model: Model,
    pub max_degree: u64,
    pub seed: u64,
    /// Random draws per sampled property.
    pub samples: usize,
}

pub fn run(p: &LemmaParams, tables: &mut Tables<'_>) -> Result<Vec<Check>, CacheError> {
    let mut rng = Sampler::new(p.seed);
    let model = p.model;
    let k = model.blowups();
    let blowup = matches!(model, Model::Blowup(_));
    let nonneg = tables.get(TableKey::new(model, TableTag::Spherical(SquareFilter::NonNegative), p.max_degree))?;
    let exceptional =
        if blowup { Some(tables.get(TableKey::new(model, TableTag::Exceptional, p.max_degree))?) } else { None };

    let mut out = vec![
        bilinear(model, p, &mut rng),
        signature(model),
        genus_relation(model, p, &mut rng),
        spherical_dimension(&nonneg),
        light_cone(model, p, &mut rng),
    ];
    match &exceptional {
        Some(ex) => {
            out.push(exceptional_invariants(ex));
            out.extend(reflections(model, p, &mut rng));
            out.push(reduction(model, p, &nonneg, &mut rng));
            out.push(classification(&nonneg));
            out.extend(pair_s_plus(&nonneg, ex));
            out.push(he_contract(&nonneg));
            out.push(weyl_orbit(k, ex));
            out.push(screen(k, p.max_degree));
            out.extend(cone_decisions(model, p, ex, &mut rng));
        }
        None => {
            out.push(he_contract(&nonneg));
            let names = [
                "exceptional classes have genus 0 and iota 0",
                "reflections are isometries fixing K",
                "reflections are involutions",
                "reduction words replay and reduction is idempotent",
                "non-negative spherical classes reduce into the list",
            ];
            out.extend(names.into_iter().map(Check::skipped));
        }
    }
    Ok(out)
}

fn bilinear(model: Model, p: &LemmaParams, rng: &mut Sampler) -> Check {
    let mut c = Check::new("pairing is symmetric and bilinear");
    let n = model.rank();
    for _ in 0..p.samples {
        let (x, y, z) = (rng.int_vec(n, 9), rng.int_vec(n, 9), rng.int_vec(n, 9));
        let (s, t) = (BigInt::from(rng.range(-5, 5)), BigInt::from(rng.range(-5, 5)));
        let (x, y, z) = (int_class(model, &x), int_class(model, &y), int_class(model, &z));
        let lhs = (&x.scale(&s) + &y.scale(&t)).dot(&z);
        let rhs = &s * x.dot(&z) + &t * y.dot(&z);
        c.record(x.dot(&y) == y.dot(&x) && lhs == rhs, || format!("x = {x}, y = {y}, z = {z}"));
    }
    c
}

fn signature(model: Model) -> Check {
    let mut c = Check::new("pairing has signature (1, rank - 1)");
    let s = model.signature();
    c.record(s.positive == 1 && s.negative == model.rank() - 1 && s.zero == 0, || format!("{s:?}"));
    c
}

fn genus_relation(model: Model, p: &LemmaParams, rng: &mut Sampler) -> Check {
    let mut c = Check::new("genus is adjunction / 2 + 1");
    for _ in 0..p.samples {
        let v = rng.int_vec(model.rank(), 12);
        let e = int_class(model, &v);
        let Ok(g) = e.j_genus() else {
            c.record(false, || format!("{e}: genus undefined"));
            continue;
        };
        let mut ok = (&g - BigInt::from(1)) * 2 == e.adjunction_number();
        if let Model::Blowup(_) = model {
            ok &= g == BigInt::from(oracle::genus(&v));
        }
        c.record(ok, || format!("{e}"));
    }
    c
}

fn spherical_dimension(table: &ClassTable) -> Check {
    let mut c = Check::new("spherical classes have iota = e.e + 1");
    for e in &table.classes {
        let ok = e.j_genus().is_ok_and(|g| g.is_zero())
            && e.j_dimension().is_ok_and(|i| i == e.square() + 1)
            && e.l_value().is_ok_and(|l| l == e.square() + 1);
        c.record(ok, || format!("{e}"));
    }
    c
}

fn light_cone(model: Model, p: &LemmaParams, rng: &mut Sampler) -> Check {
    let mut c = Check::new("light cone lemma");
    let w = model.orientation_class();
    let n = model.rank();
    let draw = |rng: &mut Sampler| loop {
        let mut v = rng.int_vec(n, 8);
        if let Model::Blowup(_) = model {
            v[0] = rng.range(0, 20);
        }
        let u = int_class(model, &v);
        if !u.square().is_negative() && u.dot(&w).is_positive() {
            return u;
        }
    };
    for _ in 0..p.samples {
        let (u, v) = (draw(rng), draw(rng));
        c.record(!u.dot(&v).is_negative(), || format!("u = {u}, v = {v}"));
    }
    c
}

fn exceptional_invariants(table: &ClassTable) -> Check {
    let mut c = Check::new("exceptional classes have genus 0 and iota 0");
    for e in &table.classes {
        let ok = e.j_genus().is_ok_and(|g| g.is_zero()) && e.j_dimension().is_ok_and(|i| i.is_zero());
        c.record(ok, || format!("{e}"));
    }
    c
}

fn random_root(model: Model, k: usize, rng: &mut Sampler) -> Root {
    let pick = |rng: &mut Sampler, taken: &[usize]| loop {
        let i = rng.range(1, k as i64) as usize;
        if !taken.contains(&i) {
            return i;
        }
    };
    let i = pick(rng, &[]);
    let j = pick(rng, &[i]);
    if k >= 3 && rng.range(0, 1) == 1 {
        let l = pick(rng, &[i, j]);
        Root::cremona(model, i, j, l)
    } else {
        Root::transposition(model, i, j)
    }
}

fn reflections(model: Model, p: &LemmaParams, rng: &mut Sampler) -> [Check; 2] {
    let mut iso = Check::new("reflections are isometries fixing K");
    let mut inv = Check::new("reflections are involutions");
    let k = model.blowups();
    if k < 2 {
        return [Check::skipped(iso.name), Check::skipped(inv.name)];
    }
    let kc = model.canonical_class();
    for _ in 0..p.samples {
        let r = random_root(model, k, rng);
        let e = int_class(model, &rng.int_vec(k + 1, 10));
        let f = int_class(model, &rng.int_vec(k + 1, 10));
        let (re, rf, rk) = (reflect(&e, &r).unwrap(), reflect(&f, &r).unwrap(), reflect(&kc, &r).unwrap());
        iso.record(re.dot(&rf) == e.dot(&f) && rk == kc, || format!("e = {e}, f = {f}, r = {}", r.class()));
        inv.record(reflect(&re, &r).unwrap() == e, || format!("e = {e}, r = {}", r.class()));
    }
    [iso, inv]
}

fn reduction(model: Model, p: &LemmaParams, nonneg: &ClassTable, rng: &mut Sampler) -> Check {
    let mut c = Check::new("reduction words replay and reduction is idempotent");
    let k = model.blowups();
    let random = (0..p.samples).map(|_| int_class(model, &rng.int_vec(k + 1, 10)));
    for e in nonneg.classes.iter().cloned().chain(random) {
        let ok = match cremona_reduce(&e) {
            Ok((nf, w)) => w.verify() && w.start == e && cremona_reduce(&nf).is_ok_and(|(again, _)| again == nf),
            Err(_) => false,
        };
        c.record(ok, || format!("{e}"));
    }
    c
}

fn classification(nonneg: &ClassTable) -> Check {
    let mut c = Check::new("non-negative spherical classes reduce into the list");
    for e in &nonneg.classes {
        let ok = cremona_reduce(e).is_ok_and(|(nf, w)| w.verify() && oracle::in_list(&to_i64(&nf)));
        c.record(ok, || format!("{e}"));
    }
    c
}

fn pair_s_plus(nonneg: &ClassTable, ex: &ClassTable) -> [Check; 3] {
    let mut a = Check::new("S+ pairs positively with S>=0");
    let mut b = Check::new("S+ pairs non-negatively with exceptional classes");
    let mut c = Check::new("distinct exceptional classes pair non-negatively");
    let plus: Vec<&IntClass> = nonneg.classes.iter().filter(|e| e.square().is_positive()).collect();
    for e in &plus {
        for f in &nonneg.classes {
            a.record(e.dot(f).is_positive(), || format!("{e} . {f}"));
        }
        for f in &ex.classes {
            b.record(!e.dot(f).is_negative(), || format!("{e} . {f}"));
        }
    }
    for (i, e) in ex.classes.iter().enumerate() {
        for f in &ex.classes[i + 1..] {
            c.record(!e.dot(f).is_negative(), || format!("{e} . {f}"));
        }
    }
    [a, b, c]
}

fn he_contract(nonneg: &ClassTable) -> Check {
    let mut c = Check::new("select_He pairs 1, or 2 proportionally");
    for e in nonneg.classes.iter().filter(|e| e.square().is_positive()) {
        let ok = select_he(e).is_ok_and(|h| {
            let p = h.dot(e);
            let proportional = (&h.scale(&e.primitive().1) - &e.scale(&h.primitive().1)).is_zero();
            !h.square().is_negative() && (p == BigInt::from(1) || p == BigInt::from(2) && proportional)
        });
        c.record(ok, || format!("{e}"));
    }
    c
}

fn weyl_orbit(k: usize, ex: &ClassTable) -> Check {
    let mut c = Check::new("exceptional classes form one Weyl orbit");
    if !(3..=8).contains(&k) {
        return Check::skipped(c.name);
    }
    let ek = -IntClass::basis(ex.model, k);
    let ok = orbit(&ek, 1000).is_ok_and(|o| o.is_some_and(|o| o.into_iter().eq(ex.classes.iter().cloned())));
    c.record(ok, || format!("orbit of E{k}"));
    c
}

fn screen(k: usize, max_degree: u64) -> Check {
    let mut c = Check::new("adjunction screen: a >= b_i and fibre pairing");
    let r = general_screen(k as u32, max_degree);
    c.checked = r.checked;
    c.failures = (r.degree_violations.len() + r.fibre_violations.len()) as u64;
    c.counterexample = r.degree_violations.iter().chain(&r.fibre_violations).next().map(|e| e.to_string());
    c
}

fn cone_decisions(model: Model, p: &LemmaParams, ex: &ClassTable, rng: &mut Sampler) -> [Check; 4] {
    let mut ck = Check::new("C_K decision agrees with the exceptional table");
    let mut sp = Check::new("interior points of P_K decompose into S+");
    let mut face = Check::new("face restriction preserves P_K membership");
    let mut replay = Check::new("certificates replay");
    let k = model.blowups();
    if !ex.complete {
        return [
            Check::skipped(ck.name),
            Check::skipped(sp.name),
            Check::skipped(face.name),
            Check::skipped(replay.name),
        ];
    }
    let table: Vec<Vec<i64>> = ex.classes.iter().map(to_i64).collect();
    for _ in 0..p.samples {
        let (v, den) = rng.near_anticanonical(k);
        let e = ray_class(model, &v, den);
        let Ok(cert) = cones::in_ck(&e) else {
            ck.record(false, || format!("{e}: in_ck failed"));
            continue;
        };
        replay.record(cones::replay(&cert).is_ok(), || format!("C_K certificate for {e}"));
        ck.record(same_side(cert.verdict, oracle::in_ck(&v, &table)), || format!("{e}"));
        if oracle::in_pk(&v, &table) == Side::In && sp.checked < (p.samples / 4).max(1) as u64 {
            match cones::decompose_sp(&e) {
                Ok(d) => {
                    replay.record(cones::replay(&d).is_ok(), || format!("decomposition of {e}"));
                    sp.record(d.verdict == Verdict::In, || format!("{e}"));
                }
                Err(err) => sp.record(false, || format!("{e}: {err}")),
            }
        }
    }
    if k >= 1 {
        let lower = Model::Blowup(k as u32 - 1);
        let lower_table: Vec<Vec<i64>> = table.iter().filter(|e| e[k] == 0).map(|e| e[..k].to_vec()).collect();
        for _ in 0..p.samples {
            let (mut v, den) = rng.near_anticanonical(k);
            v[k] = 0;
            let e = ray_class(model, &v, den);
            let restricted = cones::face_restrict(&e);
            let ok = restricted.as_ref().is_ok_and(|r| {
                let inside = cones::in_pk(r).is_ok_and(|c| c.verdict == Verdict::In);
                let expected = oracle::in_pk(&v[..k], &lower_table) == Side::In;
                r.model() == lower && inside == expected && cones::face_extend(r).is_ok_and(|x| x == e)
            });
            face.record(ok, || format!("{e}"));
        }
    }
    [ck, sp, face, replay]
}

fn same_side(v: Verdict, s: Side) -> bool {
    matches!((v, s), (Verdict::In, Side::In) | (Verdict::Out, Side::Out) | (Verdict::Boundary, Side::Boundary))
}
