//! The two-parameter module family `V_M` of DR(sl(2)), used as an
//! independent oracle for the rewriting engine.
//!
//! Basis `v_j`, `j` an integer, with
//!
//! ```text
//! z- : v_j -> v_{j-1}        t  : v_j -> beta_j v_j
//! z+ : v_j -> gamma_j v_{j+1} h  : v_j -> alpha_j v_j
//! ```
//!
//! The index `j` is carried as the field variable `Var::J`, so an identity
//! checked on `v_j` holds for every `j` at once. A vector is a finite map
//! from offsets `d` to coefficients of `v_{j+d}`.
//!
//! Realization through the Euler operator `E = x d/dx` on `x^{j+M}`:
//! `alpha_j = 2(j+M)`, `beta_j = nu/(2(j+M+1))`, `gamma_j = f(j+M)` with
//! `f(E) = -2(E+1)/(2E+3) * (E(E+2) + nu^2/(16(E+1)^2) + zeta)`.
//! In that normalization `C1` acts by `nu` and `C2` by `-zeta`.

use std::collections::BTreeMap;
use std::ops::{Add, Sub};

use num_rational::BigRational;

use crate::coeff::{rat, RatFunc, Var};
use crate::drsl2::{DrSl2, T, Z_MINUS, Z_PLUS};
use crate::error::{Error, Result};
use crate::ncalg::{NCElement, Word};
use crate::report::Report;

fn int(n: i64) -> RatFunc {
    RatFunc::integer(n)
}

fn var(v: Var) -> RatFunc {
    RatFunc::var(v)
}

fn div(a: &RatFunc, b: &RatFunc) -> RatFunc {
    a.checked_div(b).expect("generic denominator is nonzero")
}

/// Action coefficients as functions of the symbolic index `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionCoeffs {
    pub alpha: RatFunc,
    pub beta: RatFunc,
    pub gamma: RatFunc,
}

/// `f(E)` from the Euler-operator realization.
pub fn euler_f(e: &RatFunc) -> RatFunc {
    let e1 = e + &int(1);
    let nu = var(Var::Nu);
    let bracket = &(&(e * &(e + &int(2))) + &div(&(&nu * &nu), &(&e1 * &e1).scale(&rat(16, 1))))
        + &var(Var::Zeta);
    let prefactor = -div(&e1.scale(&rat(2, 1)), &(&e.scale(&rat(2, 1)) + &int(3)));
    &prefactor * &bracket
}

impl ActionCoeffs {
    /// Euler-operator normalization: `alpha_j = 2(j+M)`.
    pub fn euler() -> Self {
        let e = &var(Var::J) + &var(Var::M);
        let alpha = e.scale(&rat(2, 1));
        let beta = div(&var(Var::Nu), &(&alpha + &int(2)));
        let gamma = euler_f(&e);
        ActionCoeffs { alpha, beta, gamma }
    }

    /// `(alpha_j + 3)/(alpha_j + 2) * gamma_j`.
    pub fn gamma_tilde(&self) -> RatFunc {
        &div(&(&self.alpha + &int(3)), &(&self.alpha + &int(2))) * &self.gamma
    }

    pub fn substitute(&self, assignments: &BTreeMap<Var, RatFunc>) -> Result<Self> {
        let s = |f: &RatFunc| {
            f.substitute(assignments)
                .map_err(|_| Error::NonGeneric(format!("pole in {f} under substitution")))
        };
        Ok(ActionCoeffs {
            alpha: s(&self.alpha)?,
            beta: s(&self.beta)?,
            gamma: s(&self.gamma)?,
        })
    }
}

/// `gamma~_0` of the Euler normalization, the constant that makes
/// [`solve_prop2`] reproduce `f(j+M)` when `alpha0 = 2M`.
pub fn euler_gamma_norm() -> RatFunc {
    let c = ActionCoeffs::euler();
    c.gamma_tilde()
        .substitute_var(Var::J, &RatFunc::zero())
        .expect("generic at j = 0")
}

/// Solves the module recurrences for `alpha_j = 2j + alpha0`,
/// `beta_j = nu/(alpha_j + 2)` and `gamma~_0 = gamma_norm`.
///
/// With `beta_j = nu/(alpha_j+2)` the step of the `gamma~` recurrence is
/// `(alpha_j + 1) - nu^2/4 * (1/alpha_j^2 - 1/(alpha_j+2)^2)`, which
/// telescopes to
/// `gamma~_j = K - alpha_{j+1}^2/4 - nu^2/(4 alpha_{j+1}^2)`.
pub fn solve_prop2(alpha0: &RatFunc, nu: &RatFunc, gamma_norm: &RatFunc) -> ActionCoeffs {
    let alpha = &var(Var::J).scale(&rat(2, 1)) + alpha0;
    let next = &alpha + &int(2);
    let beta = div(nu, &next);
    let nu_sq = nu * nu;
    let tail = |a: &RatFunc| {
        let a_sq = a * a;
        let nu_part = if nu_sq.is_zero() {
            RatFunc::zero()
        } else {
            div(&nu_sq, &a_sq.scale(&rat(4, 1)))
        };
        &a_sq.scale(&rat(1, 4)) + &nu_part
    };
    let k = gamma_norm + &tail(&(alpha0 + &int(2)));
    let gamma_tilde = &k - &tail(&next);
    let gamma = &div(&next, &(&alpha + &int(3))) * &gamma_tilde;
    ActionCoeffs { alpha, beta, gamma }
}

/// Residuals of the module recurrences; all vanish for a valid family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prop2Residuals {
    /// `(alpha_j + 2) beta_j - alpha_j beta_{j-1}`
    pub beta: RatFunc,
    /// `alpha_j - alpha_{j-1} - 2`
    pub alpha: RatFunc,
    /// `gamma~_{j-1} - gamma~_j - (alpha_j + 1)/alpha_j (alpha_j - beta_j^2/alpha_j)`
    pub gamma_tilde: RatFunc,
    /// `gamma_{j-1} - alpha_j + beta_j^2/alpha_j - alpha_j(alpha_j+3)/((alpha_j+1)(alpha_j+2)) gamma_j`
    pub gamma: RatFunc,
}

impl Prop2Residuals {
    pub fn all_zero(&self) -> bool {
        self.beta.is_zero()
            && self.alpha.is_zero()
            && self.gamma_tilde.is_zero()
            && self.gamma.is_zero()
    }
}

pub fn prop2_residuals(c: &ActionCoeffs) -> Prop2Residuals {
    let prev = |f: &RatFunc| f.translate(Var::J, &rat(-1, 1));
    let a = &c.alpha;
    let b = &c.beta;
    let beta = &(&(a + &int(2)) * b) - &(a * &prev(b));
    let alpha = &(a - &prev(a)) - &int(2);
    let core = a - &div(&(b * b), a);
    let gt = c.gamma_tilde();
    let step = &div(&(a + &int(1)), a) * &core;
    let gamma_tilde = &(&prev(&gt) - &gt) - &step;
    let ratio = div(&(a * &(a + &int(3))), &(&(a + &int(1)) * &(a + &int(2))));
    let gamma = &(&prev(&c.gamma) - &core) - &(&ratio * &c.gamma);
    Prop2Residuals {
        beta,
        alpha,
        gamma_tilde,
        gamma,
    }
}

/// Finite combination of `v_{j+d}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ModuleVector {
    entries: BTreeMap<i64, RatFunc>,
}

impl ModuleVector {
    pub fn zero() -> Self {
        ModuleVector::default()
    }

    /// `v_{j+d}`.
    pub fn basis(d: i64) -> Self {
        let mut v = ModuleVector::zero();
        v.add_term(d, RatFunc::one());
        v
    }

    pub fn add_term(&mut self, d: i64, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        let sum = match self.entries.remove(&d) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.entries.insert(d, sum);
        }
    }

    pub fn get(&self, d: i64) -> Option<&RatFunc> {
        self.entries.get(&d)
    }

    pub fn entries(&self) -> impl Iterator<Item = (i64, &RatFunc)> {
        self.entries.iter().map(|(d, c)| (*d, c))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn scale(&self, f: &RatFunc) -> Self {
        let mut out = ModuleVector::zero();
        for (d, c) in &self.entries {
            out.add_term(*d, f * c);
        }
        out
    }

    /// Multiplication by `x`: `v_{j+d} -> v_{j+d+1}`.
    pub fn raise(&self) -> Self {
        ModuleVector {
            entries: self
                .entries
                .iter()
                .map(|(d, c)| (d + 1, c.clone()))
                .collect(),
        }
    }

    /// `Some(c)` if the vector is `c * v_{j+d}`.
    pub fn as_multiple_of(&self, d: i64) -> Option<RatFunc> {
        match self.entries.len() {
            0 => Some(RatFunc::zero()),
            1 => self.entries.get(&d).cloned(),
            _ => None,
        }
    }
}

impl Add for &ModuleVector {
    type Output = ModuleVector;
    fn add(self, rhs: &ModuleVector) -> ModuleVector {
        let mut out = self.clone();
        for (d, c) in &rhs.entries {
            out.add_term(*d, c.clone());
        }
        out
    }
}

impl Sub for &ModuleVector {
    type Output = ModuleVector;
    fn sub(self, rhs: &ModuleVector) -> ModuleVector {
        let mut out = self.clone();
        for (d, c) in &rhs.entries {
            out.add_term(*d, -c);
        }
        out
    }
}

/// Where the module index lives: symbolic `j`, or pinned to an integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Base {
    Symbolic,
    Index(i64),
}

/// A member of the family acting through explicit coefficients.
#[derive(Clone, Debug)]
pub struct VModule<'a> {
    dr: &'a DrSl2,
    coeffs: ActionCoeffs,
    base: Base,
}

impl<'a> VModule<'a> {
    pub fn new(dr: &'a DrSl2, coeffs: ActionCoeffs) -> Self {
        VModule {
            dr,
            coeffs,
            base: Base::Symbolic,
        }
    }

    /// The Euler-operator realization with symbolic `j, M, nu, zeta`.
    pub fn euler(dr: &'a DrSl2) -> Self {
        Self::new(dr, ActionCoeffs::euler())
    }

    /// Same coefficients with the index pinned: offset `d` means `v_{j0+d}`.
    pub fn at_index(&self, j0: i64) -> Self {
        VModule {
            base: Base::Index(j0),
            ..self.clone()
        }
    }

    pub fn coeffs(&self) -> &ActionCoeffs {
        &self.coeffs
    }

    /// Coefficient `f(j)` evaluated at the index of offset `d`.
    fn at(&self, f: &RatFunc, d: i64) -> Result<RatFunc> {
        match self.base {
            Base::Symbolic => Ok(f.translate(Var::J, &BigRational::from_integer(d.into()))),
            Base::Index(j0) => f
                .substitute_var(Var::J, &int(j0 + d))
                .map_err(|_| Error::NonGeneric(format!("pole at j = {}", j0 + d))),
        }
    }

    /// Action of a single term `coeff * w` on `v_{j+d}`.
    fn act_term(&self, coeff: &RatFunc, w: &Word, d: i64) -> Result<(i64, RatFunc)> {
        let mut pos = d;
        let mut acc = RatFunc::one();
        for &g in w.letters().iter().rev() {
            match g {
                Z_MINUS => pos -= 1,
                T => acc = &acc * &self.at(&self.coeffs.beta, pos)?,
                Z_PLUS => {
                    acc = &acc * &self.at(&self.coeffs.gamma, pos)?;
                    pos += 1;
                }
                other => unreachable!("DR(sl(2)) has no generator {other}"),
            }
            if acc.is_zero() {
                return Ok((pos, acc));
            }
        }
        let alpha = self.at(&self.coeffs.alpha, pos)?;
        let c = coeff.substitute_var(Var::H, &alpha).map_err(|_| {
            Error::NonGeneric(format!("coefficient {coeff} has a pole at h = {alpha}"))
        })?;
        Ok((pos, &acc * &c))
    }

    pub fn act(&self, g: &NCElement, v: &ModuleVector) -> Result<ModuleVector> {
        let mut out = ModuleVector::zero();
        for (d, c) in v.entries() {
            for (w, f) in g.terms() {
                let (pos, k) = self.act_term(f, w, d)?;
                out.add_term(pos, &k * c);
            }
        }
        Ok(out)
    }

    /// `g v_j` with the index offset 0.
    pub fn act_on_basis(&self, g: &NCElement) -> Result<ModuleVector> {
        self.act(g, &ModuleVector::basis(0))
    }

    /// Whether `lhs` and `rhs` act identically on `v_j`.
    pub fn oracle_check_relation(&self, lhs: &NCElement, rhs: &NCElement) -> Result<bool> {
        Ok(self.act_on_basis(lhs)? == self.act_on_basis(rhs)?)
    }

    /// Scalar by which a central element acts; must be free of `j`.
    pub fn scalar_of(&self, c: &NCElement) -> Result<RatFunc> {
        let v = self.act_on_basis(c)?;
        let s = v
            .as_multiple_of(0)
            .ok_or_else(|| Error::NotScalar("action moves the basis vector".into()))?;
        if s.contains(Var::J) {
            return Err(Error::NotScalar(format!("{s} depends on j")));
        }
        Ok(s)
    }

    /// Scalars of `C1` and `C2`.
    pub fn casimir_scalars(&self) -> Result<(RatFunc, RatFunc)> {
        Ok((self.scalar_of(self.dr.c1())?, self.scalar_of(self.dr.c2())?))
    }
}

/// Module-level check of `x -> z-^{-1}`, `d/dx -> (1/2) z- h`,
/// `nu -> 2 C1`, `zeta -> C2` on the Euler realization.
pub fn verify_iso2_on_module(dr: &DrSl2) -> Result<Report> {
    let module = VModule::euler(dr);
    let mut report = Report::new("iso2");
    let v = ModuleVector::basis(0);
    let ddx_elem = dr.parse("z- * h / 2")?;
    let ddx = |u: &ModuleVector| module.act(&ddx_elem, u);
    let x = |u: &ModuleVector| u.raise();

    let comm = &ddx(&x(&v))? - &x(&ddx(&v)?);
    let detail = comm
        .as_multiple_of(0)
        .map_or_else(|| "not a multiple of v_j".to_string(), |c| c.to_string());
    report.check("[d/dx, x] = 1", comm == v, detail);

    let xx = &x(&x(&v)) - &x(&x(&v));
    report.check("[x, x] = 0", xx.is_zero(), "");

    let zm = dr.generator(Z_MINUS);
    let left = module.act(&zm, &x(&v))?;
    let right = x(&module.act(&zm, &v)?);
    report.check("x is inverse to z-", left == v && right == v, "");

    let euler = x(&ddx(&v)?);
    let half_h = module.act_on_basis(&dr.parse("h/2")?)?;
    report.check("x d/dx acts as h/2", euler == half_h, "");

    let two_c1 = dr.c1().scale_left(&int(2));
    let images = [
        ("nu", Var::Nu, &two_c1, "2 C1"),
        ("zeta", Var::Zeta, dr.c2(), "C2"),
    ];
    for (name, param, image, label) in images {
        match module.scalar_of(image) {
            Ok(s) => {
                let factor = s.checked_div(&var(param)).ok();
                report.check(
                    format!("image of {name} ({label}) is scalar"),
                    true,
                    s.to_string(),
                );
                report.meta(&format!("{name} -> {label} acts as"), s.to_string());
                if let Some(f) = factor {
                    report.meta(&format!("{name} round-trip factor"), f.to_string());
                }
                let iv = module.act(image, &v)?;
                let commutes_x = x(&iv) == module.act(image, &x(&v))?;
                let commutes_ddx = ddx(&iv)? == module.act(image, &ddx(&v)?)?;
                report.check(
                    format!("image of {name} commutes with x and d/dx"),
                    commutes_x && commutes_ddx,
                    "",
                );
            }
            Err(e) => report.check(
                format!("image of {name} ({label}) is scalar"),
                false,
                e.to_string(),
            ),
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drsl2::build;

    fn m() -> RatFunc {
        var(Var::M)
    }

    #[test]
    fn h_acts_by_alpha() {
        let dr = build();
        let module = VModule::euler(&dr).at_index(0);
        let v = module.act_on_basis(&dr.parse("h").unwrap()).unwrap();
        assert_eq!(v.as_multiple_of(0), Some(m().scale(&rat(2, 1))));
    }

    #[test]
    fn z_minus_lowers() {
        let dr = build();
        let module = VModule::euler(&dr);
        let v = module.act_on_basis(&dr.generator(Z_MINUS)).unwrap();
        assert_eq!(v, ModuleVector::basis(-1));
    }

    #[test]
    fn c1_acts_by_nu() {
        let dr = build();
        let module = VModule::euler(&dr);
        let (c1, c2) = module.casimir_scalars().unwrap();
        assert_eq!(c1, var(Var::Nu));
        assert_eq!(c2, -var(Var::Zeta));
        let at_origin = c2
            .substitute(&BTreeMap::from([
                (Var::Nu, RatFunc::zero()),
                (Var::Zeta, RatFunc::zero()),
            ]))
            .unwrap();
        assert!(at_origin.is_zero());
    }

    #[test]
    fn pole_at_special_parameter() {
        let dr = build();
        // 2E + 3 = 0 at E = j + M = -3/2
        let coeffs = ActionCoeffs::euler()
            .substitute(&BTreeMap::from([(Var::M, RatFunc::constant(rat(-3, 2)))]))
            .unwrap();
        let module = VModule::new(&dr, coeffs).at_index(0);
        assert!(matches!(
            module.act_on_basis(&dr.generator(Z_PLUS)),
            Err(Error::NonGeneric(_))
        ));
        assert!(module.act_on_basis(&dr.generator(Z_MINUS)).is_ok());
    }

    #[test]
    fn solved_family_satisfies_recurrences() {
        let c = solve_prop2(&m(), &var(Var::Nu), &var(Var::Zeta));
        assert!(prop2_residuals(&c).all_zero());
        assert_eq!(
            c.gamma_tilde()
                .substitute_var(Var::J, &RatFunc::zero())
                .unwrap(),
            var(Var::Zeta)
        );
    }

    #[test]
    fn nu_zero_family() {
        let c = solve_prop2(&m(), &RatFunc::zero(), &RatFunc::one());
        assert!(c.beta.is_zero());
        assert!(prop2_residuals(&c).all_zero());
    }

    #[test]
    fn euler_family_is_the_matched_solution() {
        let solved = solve_prop2(&m().scale(&rat(2, 1)), &var(Var::Nu), &euler_gamma_norm());
        assert_eq!(solved, ActionCoeffs::euler());
        assert!(prop2_residuals(&ActionCoeffs::euler()).all_zero());
    }

    #[test]
    fn iso2_report_passes() {
        let dr = build();
        let r = verify_iso2_on_module(&dr).unwrap();
        assert!(r.pass, "{}", r.to_text());
        assert_eq!(r.meta["nu round-trip factor"], "2");
        assert_eq!(r.meta["zeta round-trip factor"], "-1");
    }
}
