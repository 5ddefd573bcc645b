use alloc::format;
use alloc::vec::Vec;

use super::det::{cofactor_inverse, det_of, DetForm};
use super::{gid, hopf, qs, rtt_relations, re_relations, star_rule_from, AlgebraHandle, AlgebraKind};
use crate::error::{Error, Result};
use crate::ncalg::{r_matrix, Alphabet, GenId, LeggedMatrix, Letter, NcElement, Word};
use crate::qfield::{q_int, QScalar};
use crate::rewrite::{complete_from, orient_and_complete, Presentation, Reducer};

pub(super) fn build(kind: AlgebraKind, n: usize, cap: usize) -> Result<AlgebraHandle> {
    let (pres, completion) = match kind {
        AlgebraKind::OM => {
            let (alpha, rels) = om_relations(&r_matrix(n), n)?;
            orient_and_complete(alpha, rels, cap)?
        }
        AlgebraKind::OGL => build_localized(&["D"], &["X"], n, cap)?,
        AlgebraKind::OGLR => build_localized(&["Dx", "Dy"], &["X", "Y"], n, cap)?,
        AlgebraKind::OU => build_localized(&["D"], &["U"], n, cap)?,
        AlgebraKind::OT => build_ot(n, cap)?,
        AlgebraKind::OH => {
            let alpha = Alphabet::new(matrix_gens("Z", n))?;
            let z = super::generator_matrix(&alpha, "Z", n)?;
            let (mut p, rep) = orient_and_complete(alpha, re_relations(n, &z)?, cap)?;
            let star = star_rule_from(p.alphabet().len(), |l| {
                let g = p.alphabet().gen(l);
                Ok(NcElement::letter(p.alphabet().get("Z", &[g.indices[1], g.indices[0]])?))
            })?;
            p.set_star(star);
            (p, rep)
        }
        AlgebraKind::Uqgl => build_uqgl(n, cap)?,
    };
    let mut h = AlgebraHandle { kind, n, pres, completion, hopf: None };
    attach_star(&mut h)?;
    if kind != AlgebraKind::OH {
        h.hopf = Some(hopf::hopf_data(&h)?);
    }
    Ok(h)
}

/// The alphabet of `O_M` and its RTT relations for an arbitrary `r`.
pub fn om_relations(r: &LeggedMatrix, n: usize) -> Result<(Alphabet, Vec<NcElement>)> {
    let alpha = Alphabet::new(matrix_gens("X", n))?;
    let x = super::generator_matrix(&alpha, "X", n)?;
    let rels = rtt_relations(r, &x, &x)?;
    Ok((alpha, rels))
}

/// An `O_M`-shaped handle (no Hopf data) from explicit relations.
pub fn om_from_relations(alpha: Alphabet, rels: Vec<NcElement>, n: usize, cap: usize) -> Result<AlgebraHandle> {
    let (pres, completion) = orient_and_complete(alpha, rels, cap)?;
    Ok(AlgebraHandle { kind: AlgebraKind::OM, n, pres, completion, hopf: None })
}

fn matrix_gens(name: &'static str, n: usize) -> Vec<GenId> {
    let mut v = Vec::new();
    for i in 1..=n as u8 {
        for j in 1..=n as u8 {
            v.push(gid(name, &[i, j]));
        }
    }
    v
}

fn commute(a: Letter, b: Letter) -> NcElement {
    let (x, y) = (NcElement::letter(a), NcElement::letter(b));
    &(&x * &y) - &(&y * &x)
}

/// FRT algebras localised at central determinants. Inverse letters come first.
fn build_localized(dnames: &[&'static str], mats: &[&'static str], n: usize, cap: usize) -> Result<(Presentation, crate::rewrite::CompletionReport)> {
    let mut gens: Vec<GenId> = dnames.iter().map(|d| gid(d, &[])).collect();
    for m in mats {
        gens.extend(matrix_gens(m, n));
    }
    let alpha = Alphabet::new(gens)?;
    let r = r_matrix(n);
    let ms: Vec<LeggedMatrix> = mats.iter().map(|m| super::generator_matrix(&alpha, m, n)).collect::<Result<_>>()?;
    let mut rels = Vec::new();
    for m in &ms {
        rels.extend(rtt_relations(&r, m, m)?);
    }
    if ms.len() == 2 {
        rels.extend(rtt_relations(&r, &ms[0], &ms[1])?);
    }
    let nd = dnames.len() as Letter;
    for d in 0..nd {
        for l in (d + 1)..alpha.len() as Letter {
            rels.push(commute(l, d));
        }
    }
    let (mut p, rep) = orient_and_complete(alpha, rels, cap)?;
    for (k, m) in ms.iter().enumerate() {
        p.add_central_inverse(k as Letter, det_of(m, DetForm::One));
    }
    Ok((p, rep))
}

/// Order `T+_{i<j}` < diagonal < `T-_{i>j}`, matching the triangular decomposition.
fn ot_gens(n: usize) -> Vec<GenId> {
    let mut g = Vec::new();
    for i in 1..=n as u8 {
        for j in (i + 1)..=n as u8 {
            g.push(gid("Tp", &[i, j]));
        }
    }
    for i in 1..=n as u8 {
        g.push(gid("T", &[i]));
        g.push(gid("Ti", &[i]));
    }
    for i in 1..=n as u8 {
        for j in 1..i {
            g.push(gid("Tm", &[i, j]));
        }
    }
    g
}

fn build_ot(n: usize, cap: usize) -> Result<(Presentation, crate::rewrite::CompletionReport)> {
    let alpha = Alphabet::new(ot_gens(n))?;
    let r = r_matrix(n);
    let tp = super::generator_matrix(&alpha, "T+", n)?;
    let tm = super::generator_matrix(&alpha, "T-", n)?;
    let mut rels = rtt_relations(&r, &tp, &tp)?;
    rels.extend(rtt_relations(&r, &tm, &tm)?);
    rels.extend(rtt_relations(&r, &tp, &tm)?);
    let mut pairs = Vec::new();
    for i in 1..=n as u8 {
        let t = alpha.get("T", &[i])?;
        let ti = alpha.get("Ti", &[i])?;
        pairs.push((t, ti));
        let (a, b) = (NcElement::letter(t), NcElement::letter(ti));
        rels.push(&(&a * &b) - &NcElement::one());
        rels.push(&(&b * &a) - &NcElement::one());
    }
    // q-commutation of the inverse letters follows from that of the T_i
    let (base, _) = orient_and_complete(alpha.clone(), rels.clone(), 2)?;
    let mut red = base.reducer();
    for &(t, ti) in &pairs {
        for x in 0..alpha.len() as Letter {
            if x == t || x == ti || pairs.iter().any(|&(_, y)| y == x) {
                continue;
            }
            let c = single_term_ratio(&mut red, x, t)?;
            // x t = c t x  implies  ti x = c x ti
            let (g, xv) = (NcElement::letter(ti), NcElement::letter(x));
            rels.push(&(&g * &xv) - &(&xv * &g).scale(&c));
        }
        for &(_, tj) in &pairs {
            if tj > ti {
                rels.push(commute(ti, tj));
            }
        }
    }
    orient_and_complete(alpha, rels, cap)
}

/// `c` with `x t = c t x`, read off a single-term normal form.
fn single_term_ratio(red: &mut Reducer<'_>, x: Letter, t: Letter) -> Result<QScalar> {
    let xt = red.normal_form(&NcElement::word(Word::from_slice(&[x, t])))?;
    let tx = red.normal_form(&NcElement::word(Word::from_slice(&[t, x])))?;
    if xt.len() != 1 || tx.len() != 1 {
        return Err(Error::Convention(format!("letters {x} and {t} do not q-commute")));
    }
    let (wa, ca) = xt.terms().next().map(|(w, c)| (w.clone(), c.clone())).expect("term");
    let (wb, cb) = tx.terms().next().map(|(w, c)| (w.clone(), c.clone())).expect("term");
    if wa != wb {
        return Err(Error::Convention(format!("letters {x} and {t} do not q-commute")));
    }
    ca.checked_div(&cb)
}

fn uqgl_gens(n: usize) -> Vec<GenId> {
    let mut g = Vec::new();
    for i in 1..n as u8 {
        g.push(gid("F", &[i]));
    }
    for i in 1..=n as u8 {
        g.push(gid("K", &[i]));
        g.push(gid("Ki", &[i]));
    }
    for i in 1..n as u8 {
        g.push(gid("E", &[i]));
    }
    g
}

/// `K̂_i` and `K̂_i^{-1}` as words.
pub fn k_hat(alpha: &Alphabet, i: u8, inverse: bool) -> Result<NcElement> {
    let (a, b) = if inverse { (alpha.get("Ki", &[i])?, alpha.get("K", &[i + 1])?) } else { (alpha.get("K", &[i])?, alpha.get("Ki", &[i + 1])?) };
    Ok(NcElement::word(Word::from_slice(&[a, b])))
}

fn build_uqgl(n: usize, cap: usize) -> Result<(Presentation, crate::rewrite::CompletionReport)> {
    let alpha = Alphabet::new(uqgl_gens(n))?;
    let l = |name: &str, i: usize| alpha.get(name, &[i as u8]);
    let el = |name: &str, i: usize| -> Result<NcElement> { Ok(NcElement::letter(l(name, i)?)) };
    let mut rels = Vec::new();
    let ks: Vec<Letter> = (1..=n).flat_map(|i| [l("K", i), l("Ki", i)]).collect::<Result<_>>()?;
    for (a, &x) in ks.iter().enumerate() {
        for &y in &ks[a + 1..] {
            rels.push(commute(x, y));
        }
    }
    for i in 1..=n {
        let (k, ki) = (el("K", i)?, el("Ki", i)?);
        rels.push(&(&k * &ki) - &NcElement::one());
        rels.push(&(&ki * &k) - &NcElement::one());
    }
    for i in 1..=n {
        for j in 1..n {
            let e_exp = (i == j) as i32 - (i == j + 1) as i32;
            let (k, ki, e, f) = (el("K", i)?, el("Ki", i)?, el("E", j)?, el("F", j)?);
            rels.push(&(&k * &e) - &(&e * &k).scale(&QScalar::q_pow(e_exp)));
            rels.push(&(&ki * &e) - &(&e * &ki).scale(&QScalar::q_pow(-e_exp)));
            rels.push(&(&k * &f) - &(&f * &k).scale(&QScalar::q_pow(-e_exp)));
            rels.push(&(&ki * &f) - &(&f * &ki).scale(&QScalar::q_pow(e_exp)));
        }
    }
    let qmq = (&QScalar::q() - &QScalar::q_pow(-1)).inv()?;
    for i in 1..n {
        for j in 1..n {
            let (e, f) = (el("E", i)?, el("F", j)?);
            let mut rel = &(&e * &f) - &(&f * &e);
            if i == j {
                let kh = k_hat(&alpha, i as u8, false)?;
                let khi = k_hat(&alpha, i as u8, true)?;
                rel = &rel - &(&kh - &khi).scale(&qmq);
            }
            rels.push(rel);
        }
    }
    let two = q_int(2)?;
    for name in ["E", "F"] {
        for i in 1..n {
            for j in 1..n {
                let (a, b) = (el(name, i)?, el(name, j)?);
                if i.abs_diff(j) == 1 {
                    // a = E_{i±1}, b = E_i
                    let t1 = &(&a * &a) * &b;
                    let t2 = (&(&a * &b) * &a).scale(&two);
                    let t3 = &(&b * &a) * &a;
                    rels.push(&(&t1 - &t2) + &t3);
                } else if i.abs_diff(j) >= 2 && i < j {
                    rels.push(&(&a * &b) - &(&b * &a));
                }
            }
        }
    }
    orient_and_complete(alpha, rels, cap)
}

/// Noncommutative back-substitution inverse of the triangular generator
/// matrix of `O_T`; `upper` selects `T+` (else `T-`).
pub fn triangular_inverse(p: &Presentation, n: usize, upper: bool) -> Result<LeggedMatrix> {
    let alpha = p.alphabet();
    let t = super::generator_matrix(alpha, if upper { "T+" } else { "T-" }, n)?;
    let mut red = p.reducer();
    let mut m = LeggedMatrix::zero(1, n);
    for i in 0..n {
        let d = if upper { alpha.get("Ti", &[(i + 1) as u8])? } else { alpha.get("T", &[(i + 1) as u8])? };
        m.set(i, i, NcElement::letter(d));
    }
    if upper {
        for gap in 1..n {
            for i in 0..n - gap {
                let j = i + gap;
                let mut s = NcElement::zero();
                for k in (i + 1)..=j {
                    s.add_scaled(&red.mul(&t.get(i, k), &m.get(k, j))?, &QScalar::one());
                }
                let v = red.mul(&m.get(i, i), &s)?.scale(&qs(-1));
                m.set(i, j, v);
            }
        }
    } else {
        for gap in 1..n {
            for j in 0..n - gap {
                let i = j + gap;
                let mut s = NcElement::zero();
                for k in j..i {
                    s.add_scaled(&red.mul(&t.get(i, k), &m.get(k, j))?, &QScalar::one());
                }
                let v = red.mul(&m.get(i, i), &s)?.scale(&qs(-1));
                m.set(i, j, v);
            }
        }
    }
    let id = LeggedMatrix::identity(1, n);
    for (a, b) in [(&t, &m), (&m, &t)] {
        let prod = a.mul_with(b, |e| red.normal_form(&e))?;
        if prod != id {
            return Err(Error::Convention("triangular inverse fails".into()));
        }
    }
    Ok(m)
}

fn attach_star(h: &mut AlgebraHandle) -> Result<()> {
    let n = h.n;
    let alpha = h.pres.alphabet().clone();
    let star = match h.kind {
        AlgebraKind::OM | AlgebraKind::OGL | AlgebraKind::OH => return Ok(()),
        AlgebraKind::OGLR => {
            let x = super::generator_matrix(&alpha, "X", n)?;
            let y = super::generator_matrix(&alpha, "Y", n)?;
            let sx = cofactor_inverse(&x, &NcElement::letter(alpha.get("Dx", &[])?));
            let sy = cofactor_inverse(&y, &NcElement::letter(alpha.get("Dy", &[])?));
            star_rule_from(alpha.len(), |l| {
                let g = alpha.gen(l);
                Ok(match g.name {
                    "Dx" => det_of(&y, DetForm::One),
                    "Dy" => det_of(&x, DetForm::One),
                    "X" => sy.get((g.indices[1] - 1) as usize, (g.indices[0] - 1) as usize),
                    _ => sx.get((g.indices[1] - 1) as usize, (g.indices[0] - 1) as usize),
                })
            })?
        }
        AlgebraKind::OU => {
            let u = super::generator_matrix(&alpha, "U", n)?;
            let su = cofactor_inverse(&u, &NcElement::letter(alpha.get("D", &[])?));
            star_rule_from(alpha.len(), |l| {
                let g = alpha.gen(l);
                Ok(match g.name {
                    "D" => det_of(&u, DetForm::One),
                    _ => su.get((g.indices[1] - 1) as usize, (g.indices[0] - 1) as usize),
                })
            })?
        }
        AlgebraKind::OT => {
            let inv_p = triangular_inverse(&h.pres, n, true)?;
            let inv_m = triangular_inverse(&h.pres, n, false)?;
            star_rule_from(alpha.len(), |l| {
                let g = alpha.gen(l);
                Ok(match g.name {
                    "T" | "Ti" => NcElement::letter(l),
                    // T+_ij* = ((T-)^{-1})_ji and T-_ij* = ((T+)^{-1})_ji
                    "Tp" => inv_m.get((g.indices[1] - 1) as usize, (g.indices[0] - 1) as usize),
                    _ => inv_p.get((g.indices[1] - 1) as usize, (g.indices[0] - 1) as usize),
                })
            })?
        }
        AlgebraKind::Uqgl => {
            let q = QScalar::q();
            star_rule_from(alpha.len(), |l| {
                let g = alpha.gen(l);
                let i = g.indices[0];
                Ok(match g.name {
                    "K" | "Ki" => NcElement::letter(l),
                    // E* = q^{-1} F K̂, F* = q K̂^{-1} E
                    "E" => (&NcElement::letter(alpha.get("F", &[i])?) * &k_hat(&alpha, i, false)?).scale(&QScalar::q_pow(-1)),
                    _ => (&k_hat(&alpha, i, true)? * &NcElement::letter(alpha.get("E", &[i])?)).scale(&q),
                })
            })?
        }
    };
    h.pres.set_star(star);
    Ok(())
}

/// Adds the central inverse `B_N^{-1}` letter to a presentation of `O_H`.
pub fn localize_oh(h: &AlgebraHandle, bn: &NcElement) -> Result<Presentation> {
    let mut gens: Vec<GenId> = alloc::vec![gid("Bi", &[])];
    gens.extend(h.alphabet().gens().iter().cloned());
    let alpha = Alphabet::new(gens)?;
    let shift = |e: &NcElement| e.map_letters(|l| l + 1);
    let rules: Vec<(Word, NcElement)> = h.pres.rules().map(|(w, r)| (Word(w.letters().iter().map(|l| l + 1).collect()), shift(r))).collect();
    let mut p = Presentation::free(alpha, h.pres.degree_cap()).with_rules(rules)?;
    let comm: Vec<NcElement> = (1..p.alphabet().len() as Letter).map(|l| commute(l, 0)).collect();
    let (mut p2, _) = complete_from(p.clone(), comm)?;
    p2.add_central_inverse(0, shift(bn));
    if let Some(s) = h.pres.star() {
        let mut st = crate::ncalg::StarRule::new(p2.alphabet().len());
        st.set(0, NcElement::letter(0));
        for l in 0..h.alphabet().len() as Letter {
            st.set(l + 1, shift(s.image(l)?));
        }
        p2.set_star(st);
    }
    p = p2;
    Ok(p)
}
