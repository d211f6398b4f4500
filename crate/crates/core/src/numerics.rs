//! Unary encodings of integers and rationals as process lattices, and
//! lattice arithmetic.
//!
//! `0` is the empty lattice, `n > 0` a `1×n` row of `w*`, and `n < 0` a
//! column of `|n|` failures closed by a single `w*`. Every operation here is
//! generic over the signed primitive integer used for the decoded value.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{NumCast, PrimInt, Signed};

use crate::action::{Action, EpisodeElement, ProcessLattice};
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::inspect::{collect, inspect_lattice};

/// Integer types accepted by the lifts.
pub trait Scalar: PrimInt + Signed + Integer + std::fmt::Debug {}

impl<T: PrimInt + Signed + Integer + std::fmt::Debug> Scalar for T {}

fn magnitude<T: Scalar>(n: T) -> usize {
    let wide = n.to_i128().expect("primitive signed integers fit in i128");
    usize::try_from(wide.unsigned_abs()).expect("magnitude fits in memory")
}

fn from_count<T: Scalar>(count: usize) -> Result<T> {
    <T as NumCast>::from(count).ok_or(Error::Overflow)
}

fn successes(count: usize) -> Vec<Action> {
    vec![Action::SUCCEED; count]
}

/// `Δ_ℤ(n)`.
pub fn lift_int<T: Scalar>(n: T) -> ProcessLattice {
    let k = magnitude(n);
    if n.is_zero() {
        Grid::empty()
    } else if n.is_positive() {
        Grid::row(successes(k))
    } else {
        let mut cells = vec![Action::FAIL; k];
        cells.push(Action::SUCCEED);
        Grid::column(cells)
    }
}

/// `Δ*_ℤ(Λ)`: `S(Λ)` when no failure was met, otherwise `-F(Λ)`.
/// Lattices whose inspection fails are not integer encodings.
pub fn colift_int<T: Scalar>(l: &ProcessLattice) -> Result<T> {
    let out = inspect_lattice(l);
    if out.element == EpisodeElement::Fail {
        return Err(Error::NotIntegerEncoding);
    }
    if out.failures == 0 {
        from_count(out.successes)
    } else {
        let f = i128::try_from(out.failures).map_err(|_| Error::Overflow)?;
        <T as NumCast>::from(-f).ok_or(Error::Overflow)
    }
}

/// The cells `a₁ … a_k` collected along the first row.
fn first_row_cells(l: &ProcessLattice, k: usize) -> Vec<Action> {
    (1..=k)
        .map(|i| match collect(l, 0, i) {
            EpisodeElement::Succeed(a) => a,
            EpisodeElement::Fail => unreachable!("encodings with F = 0 have S cells in row 1"),
        })
        .collect()
}

/// `a + b`. Non-negative operands are concatenated cell by cell; anything
/// else goes through the decoded integers.
pub fn int_add<T: Scalar>(a: &ProcessLattice, b: &ProcessLattice) -> Result<ProcessLattice> {
    let x: T = colift_int(a)?;
    let y: T = colift_int(b)?;
    let sum = x.checked_add(&y).ok_or(Error::Overflow)?;
    if x.is_negative() || y.is_negative() {
        return Ok(lift_int(sum));
    }
    let mut cells = first_row_cells(a, magnitude(x));
    cells.extend(first_row_cells(b, magnitude(y)));
    Ok(Grid::row(cells))
}

/// `a - b`. For non-negative operands with `a ≥ b` the result keeps the first
/// `a - b` cells of `a`; with `a < b` it is the inverse of a row of `b - a`
/// successes closed by `w`, which is the column encoding of `a - b`.
pub fn int_sub<T: Scalar>(a: &ProcessLattice, b: &ProcessLattice) -> Result<ProcessLattice> {
    let x: T = colift_int(a)?;
    let y: T = colift_int(b)?;
    let diff = x.checked_sub(&y).ok_or(Error::Overflow)?;
    if x.is_negative() || y.is_negative() {
        return Ok(lift_int(diff));
    }
    if x >= y {
        Ok(Grid::row(first_row_cells(a, magnitude(diff))))
    } else {
        let mut cells = successes(magnitude(diff));
        cells.push(Action::FAIL);
        Ok(crate::action::lattice_inverse(&Grid::row(cells)))
    }
}

/// `-a`.
pub fn int_neg<T: Scalar>(a: &ProcessLattice) -> Result<ProcessLattice> {
    let x: T = colift_int(a)?;
    let neg = T::zero().checked_sub(&x).ok_or(Error::Overflow)?;
    Ok(lift_int(neg))
}

/// `Δ_ℚ(r)`: for `r = n/d` in lowest terms, `n` successes followed by the
/// lifted denominator, which carries the sign of `r`.
pub fn lift_rat<T: Scalar>(r: &Ratio<T>) -> ProcessLattice {
    let (n, d) = (*r.numer(), *r.denom());
    if n.is_zero() {
        return Grid::empty();
    }
    // Ratio keeps the denominator positive
    let signed_d = if n.is_negative() != d.is_negative() {
        -d.abs()
    } else {
        d.abs()
    };
    let mut cells = successes(magnitude(n));
    cells.push(Action::Flow(lift_int(signed_d)));
    Grid::row(cells)
}

/// `Δ*_ℚ(Λ)`: `0` on the empty lattice, otherwise `(S(Λ) - 1) / Δ*_ℤ(α)`
/// where `α` is the payload of a successful inspection.
pub fn colift_rat<T: Scalar>(l: &ProcessLattice) -> Result<Ratio<T>> {
    let out = inspect_lattice(l);
    if out.failures == 0 && out.successes == 0 {
        return Ok(Ratio::from_integer(T::zero()));
    }
    let payload = match out.element {
        EpisodeElement::Fail => return Err(Error::NotRationalEncoding("inspection failed")),
        EpisodeElement::Succeed(Action::Episodic(_)) => {
            return Err(Error::NotRationalEncoding("payload is an episodic"))
        }
        EpisodeElement::Succeed(Action::Flow(p)) => p,
    };
    let denom: T = colift_int(&payload)
        .map_err(|_| Error::NotRationalEncoding("payload is not an integer encoding"))?;
    if denom.is_zero() {
        return Err(Error::NotRationalEncoding("zero denominator"));
    }
    let numer: T = from_count(out.successes - 1)?;
    Ok(Ratio::new(numer, denom))
}

/// Absolute value of the decoded integer, for cap checks.
pub fn int_magnitude<T: Scalar>(n: T) -> u128 {
    n.to_i128().map_or(u128::MAX, i128::unsigned_abs)
}
