use std::fmt;

/// The fixed variable universe, in canonical order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Q,
    E,
    Z,
    S,
    A,
    T,
}

pub const NVARS: usize = 6;

impl Var {
    pub const ALL: [Var; NVARS] = [Var::Q, Var::E, Var::Z, Var::S, Var::A, Var::T];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::Q => "q",
            Var::E => "E",
            Var::Z => "z",
            Var::S => "s",
            Var::A => "A",
            Var::T => "t",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        Var::ALL.iter().copied().find(|v| v.name() == s)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector over (q, E, z, s, A, t). A zero entry means the variable is absent,
/// so the representation is canonical; the derived order is lexicographic in that order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub [i32; NVARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NVARS]);

    pub fn var(v: Var, e: i32) -> Monomial {
        let mut m = [0; NVARS];
        m[v.index()] = e;
        Monomial(m)
    }

    pub fn exp(&self, v: Var) -> i32 {
        self.0[v.index()]
    }

    pub fn is_one(&self) -> bool {
        self.0 == [0; NVARS]
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(o.0.iter()) {
            *a += b;
        }
        Monomial(m)
    }

    pub fn inv(&self) -> Monomial {
        Monomial(self.0.map(|e| -e))
    }

    pub fn div(&self, o: &Monomial) -> Monomial {
        self.mul(&o.inv())
    }

    pub fn pow(&self, k: i32) -> Monomial {
        Monomial(self.0.map(|e| e * k))
    }

    pub fn with(&self, v: Var, e: i32) -> Monomial {
        let mut m = self.0;
        m[v.index()] = e;
        Monomial(m)
    }

    /// Entrywise minimum (gcd for Laurent monomials).
    pub fn min(&self, o: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(o.0.iter()) {
            *a = (*a).min(*b);
        }
        Monomial(m)
    }

    /// True when every exponent of `self` is at least the matching one of `o`.
    pub fn divisible_by(&self, o: &Monomial) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| a >= b)
    }

    pub fn vars(&self) -> impl Iterator<Item = (Var, i32)> + '_ {
        Var::ALL
            .iter()
            .map(move |&v| (v, self.exp(v)))
            .filter(|&(_, e)| e != 0)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (v, e) in self.vars() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}
