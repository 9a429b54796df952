//! Expression syntax tree and its canonical printer.
//!
//! The printer emits the bracket forms (`x[1]`, `M[1,2]`, `s[1,2]`) and only
//! the parentheses the grammar needs, so `parse(print(e)) == e`. Fractions
//! are always parenthesized, `(1/2)`, and a negation that is not the leading
//! factor of a sum or product is wrapped as well.

use std::fmt;

use dunkl_core::exactmath::Rat;

/// A group element literal inside `w"..."`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupLit {
    /// Signed 1-based image tuple, `w"2,-1,3"`.
    Image(Vec<i64>),
    /// Matrix columns separated by `;`, for groups that are not signed permutations.
    Columns(Vec<Vec<Rat>>),
}

/// Named elements. Indices are 1-based as written.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    X(usize),
    D(usize),
    M(usize, usize),
    E(usize, usize),
    /// `s[i,j]`, the reflection in `e_i - e_j`.
    Reflection(usize, usize),
    /// `s[a]`, the reflection in the `a`-th positive root.
    RootReflection(usize),
    /// `S[i,j]`.
    S(usize, usize),
    Ssum,
    H,
    HOmega,
    Msq,
    Rho,
    Group(GroupLit),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// Nonnegative rational literal.
    Num(Rat),
    /// Coupling symbol such as `g` or `g2`.
    Coupling(String),
    /// `N`, the number of coordinates.
    Rank,
    Atom(Atom),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Commutator(Box<Expr>, Box<Expr>),
    Anticommutator(Box<Expr>, Box<Expr>),
}

const SUM: u8 = 1;
const PRODUCT: u8 = 2;
const UNARY: u8 = 3;
const PRIMARY: u8 = 5;

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => SUM,
            Expr::Mul(..) => PRODUCT,
            Expr::Neg(_) => UNARY,
            Expr::Pow(..) => 4,
            _ => PRIMARY,
        }
    }

    /// Number of nodes, used to keep generated trees small.
    pub fn size(&self) -> usize {
        match self {
            Expr::Neg(a) | Expr::Pow(a, _) => 1 + a.size(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Commutator(a, b) | Expr::Anticommutator(a, b) => {
                1 + a.size() + b.size()
            }
            _ => 1,
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, min: u8, leading: bool) -> fmt::Result {
        let wrap = self.precedence() < min || (matches!(self, Expr::Neg(_)) && !(leading && min <= PRODUCT));
        if wrap {
            f.write_str("(")?;
            self.write(f, SUM, true)?;
            return f.write_str(")");
        }
        match self {
            Expr::Num(r) if r.is_integer() => write!(f, "{r}"),
            Expr::Num(r) => write!(f, "({r})"),
            Expr::Coupling(name) => f.write_str(name),
            Expr::Rank => f.write_str("N"),
            Expr::Atom(a) => write!(f, "{a}"),
            Expr::Neg(a) => {
                f.write_str("-")?;
                a.write(f, UNARY, false)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.write(f, SUM, leading)?;
                f.write_str(if matches!(self, Expr::Add(..)) { " + " } else { " - " })?;
                b.write(f, PRODUCT, false)
            }
            Expr::Mul(a, b) => {
                a.write(f, PRODUCT, leading)?;
                f.write_str("*")?;
                b.write(f, UNARY, false)
            }
            Expr::Pow(a, k) => {
                a.write(f, PRIMARY, false)?;
                write!(f, "^{k}")
            }
            Expr::Commutator(a, b) | Expr::Anticommutator(a, b) => {
                let (open, close) = if matches!(self, Expr::Commutator(..)) { ("[", "]") } else { ("{", "}") };
                f.write_str(open)?;
                a.write(f, SUM, true)?;
                f.write_str(", ")?;
                b.write(f, SUM, true)?;
                f.write_str(close)
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, SUM, true)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::X(i) => write!(f, "x[{i}]"),
            Atom::D(i) => write!(f, "D[{i}]"),
            Atom::M(i, j) => write!(f, "M[{i},{j}]"),
            Atom::E(i, j) => write!(f, "E[{i},{j}]"),
            Atom::Reflection(i, j) => write!(f, "s[{i},{j}]"),
            Atom::RootReflection(a) => write!(f, "s[{a}]"),
            Atom::S(i, j) => write!(f, "S[{i},{j}]"),
            Atom::Ssum => f.write_str("Ssum"),
            Atom::H => f.write_str("H"),
            Atom::HOmega => f.write_str("HOmega"),
            Atom::Msq => f.write_str("Msq"),
            Atom::Rho => f.write_str("rho"),
            Atom::Group(GroupLit::Image(t)) => {
                let parts: Vec<String> = t.iter().map(i64::to_string).collect();
                write!(f, "w\"{}\"", parts.join(","))
            }
            Atom::Group(GroupLit::Columns(cols)) => {
                let parts: Vec<String> =
                    cols.iter().map(|c| c.iter().map(Rat::to_string).collect::<Vec<_>>().join(",")).collect();
                write!(f, "w\"{}\"", parts.join(";"))
            }
        }
    }
}
