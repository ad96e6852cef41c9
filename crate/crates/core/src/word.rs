//! Free-group words.
//!
//! A [`Word`] is always stored freely reduced: every constructor cancels
//! adjacent `g g⁻¹` / `g⁻¹ g` pairs, so structural equality is equality in
//! the free group.

use std::fmt;
use std::ops::Mul;

use thiserror::Error;

/// Index of a generator within a presentation's ordered generator list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneratorId(pub usize);

/// A generator or its formal inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: GeneratorId,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        Letter { gen: GeneratorId(gen), inverse }
    }

    pub fn pos(gen: usize) -> Self {
        Letter::new(gen, false)
    }

    pub fn neg(gen: usize) -> Self {
        Letter::new(gen, true)
    }

    /// `+1` or `-1`.
    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inv(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }

    /// Position in the doubled alphabet `g₀ < g₀⁻¹ < g₁ < g₁⁻¹ < …`.
    pub fn code(self) -> u32 {
        (self.gen.0 as u32) * 2 + self.inverse as u32
    }

    pub fn from_code(code: u32) -> Self {
        Letter::new((code / 2) as usize, code % 2 == 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("generator index {index} out of range for {n_gens} generators")]
    GeneratorOutOfRange { index: usize, n_gens: usize },
}

/// Cancels adjacent inverse pairs with a single left-to-right stack pass.
pub fn free_reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::new();
    for l in letters {
        match out.last() {
            Some(&last) if last == l.inv() => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    out
}

/// A freely reduced element of a free group.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word { letters: Vec::new() }
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        Word { letters: free_reduce(letters) }
    }

    /// Build from `(generator, exponent)` pairs, e.g. `[(0, 2), (1, -1)]` is `a² b⁻¹`.
    pub fn from_powers(powers: &[(usize, i64)]) -> Self {
        Word::from_letters(powers.iter().flat_map(|&(g, e)| {
            let l = Letter::new(g, e < 0);
            std::iter::repeat(l).take(e.unsigned_abs() as usize)
        }))
    }

    pub fn generator(gen: usize) -> Self {
        Word { letters: vec![Letter::pos(gen)] }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn multiply(&self, other: &Word) -> Word {
        // Only the junction can cancel.
        let mut k = 0;
        let (a, b) = (&self.letters, &other.letters);
        while k < a.len() && k < b.len() && a[a.len() - 1 - k] == b[k].inv() {
            k += 1;
        }
        let mut letters = Vec::with_capacity(a.len() + b.len() - 2 * k);
        letters.extend_from_slice(&a[..a.len() - k]);
        letters.extend_from_slice(&b[k..]);
        Word { letters }
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.inv()).collect() }
    }

    /// `[x, y] = x⁻¹ y⁻¹ x y`.
    pub fn commutator(x: &Word, y: &Word) -> Word {
        Word::from_letters(
            x.inverse()
                .letters
                .iter()
                .chain(y.inverse().letters.iter())
                .chain(x.letters.iter())
                .chain(y.letters.iter())
                .copied(),
        )
    }

    /// `z⁻¹ x z`, i.e. `x^z`.
    pub fn conjugate(&self, z: &Word) -> Word {
        z.inverse().multiply(self).multiply(z)
    }

    /// Splits `w = u · c · u⁻¹` with `c` cyclically reduced; returns `(u, c)`.
    pub fn cyclic_decomposition(&self) -> (Word, Word) {
        let l = &self.letters;
        let mut k = 0;
        while 2 * k + 1 < l.len() && l[k] == l[l.len() - 1 - k].inv() {
            k += 1;
        }
        (Word { letters: l[..k].to_vec() }, Word { letters: l[k..l.len() - k].to_vec() })
    }

    pub fn cyclically_reduced(&self) -> Word {
        self.cyclic_decomposition().1
    }

    /// Length of `self^n`, computed without expanding.
    pub fn power_len(&self, n: i64) -> u128 {
        if n == 0 || self.is_empty() {
            return 0;
        }
        let (u, c) = self.cyclic_decomposition();
        2 * u.len() as u128 + c.len() as u128 * n.unsigned_abs() as u128
    }

    pub fn power(&self, n: i64) -> Word {
        if n == 0 || self.is_empty() {
            return Word::identity();
        }
        let (u, c) = self.cyclic_decomposition();
        let core = if n < 0 { c.inverse() } else { c };
        let reps = n.unsigned_abs() as usize;
        let mut letters = Vec::with_capacity(self.power_len(n) as usize);
        // (u c u⁻¹)ⁿ = u cⁿ u⁻¹, with c⁻¹ repeated for negative n
        letters.extend_from_slice(&u.letters);
        for _ in 0..reps {
            letters.extend_from_slice(&core.letters);
        }
        letters.extend(u.inverse().letters);
        Word { letters }
    }

    /// [`Word::power`], refusing results longer than `max_len` letters.
    pub fn checked_power(&self, n: i64, max_len: usize) -> Option<Word> {
        if self.power_len(n) > max_len as u128 {
            None
        } else {
            Some(self.power(n))
        }
    }

    /// Signed occurrence count of each generator.
    pub fn exponent_vector(&self, n_gens: usize) -> Result<Vec<i64>, WordError> {
        let mut v = vec![0i64; n_gens];
        for l in &self.letters {
            let slot = v.get_mut(l.gen.0).ok_or(WordError::GeneratorOutOfRange {
                index: l.gen.0,
                n_gens,
            })?;
            *slot += l.sign();
        }
        Ok(v)
    }

    /// Largest generator index used, plus one.
    pub fn generator_bound(&self) -> usize {
        self.letters.iter().map(|l| l.gen.0 + 1).max().unwrap_or(0)
    }

    pub fn contains_generator(&self, gen: usize) -> bool {
        self.letters.iter().any(|l| l.gen.0 == gen)
    }

    /// Number of occurrences of `gen` (either sign).
    pub fn occurrences(&self, gen: usize) -> usize {
        self.letters.iter().filter(|l| l.gen.0 == gen).count()
    }

    /// Replaces every occurrence of generator `gen` by `image` (and `gen⁻¹` by
    /// `image⁻¹`), then shifts indices above `gen` down by one.
    pub fn eliminate_generator(&self, gen: usize, image: &Word) -> Word {
        let inv_image = image.inverse();
        let mut out = Vec::with_capacity(self.len());
        for &l in &self.letters {
            if l.gen.0 == gen {
                out.extend_from_slice(if l.inverse { &inv_image.letters } else { &image.letters });
            } else {
                out.push(l);
            }
        }
        Word::from_letters(out.into_iter().map(|l| {
            if l.gen.0 > gen {
                Letter::new(l.gen.0 - 1, l.inverse)
            } else {
                l
            }
        }))
    }

    /// Renders using `names`; generators without a name print as `g<i>`.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

impl Mul for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        self.multiply(rhs)
    }
}

impl Mul for Word {
    type Output = Word;

    fn mul(self, rhs: Word) -> Word {
        self.multiply(&rhs)
    }
}

/// Formats a word in the presentation text grammar (`a^2 b^-1`), using `1`
/// for the identity.
pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_letters(self.word.letters(), self.names))
    }
}

/// Formats a raw letter string (not necessarily freely reduced) with run-length
/// exponents and single spaces between factors. The empty string prints as
/// `x^0` for the first generator `x`, or `1` when there are no generators.
pub fn format_letters(letters: &[Letter], names: &[String]) -> String {
    if letters.is_empty() {
        return match names.first() {
            Some(n) => format!("{n}^0"),
            None => "1".to_string(),
        };
    }
    let mut out = String::new();
    let mut i = 0;
    while i < letters.len() {
        let l = letters[i];
        let mut run = 1;
        while i + run < letters.len() && letters[i + run] == l {
            run += 1;
        }
        if !out.is_empty() {
            out.push(' ');
        }
        match names.get(l.gen.0) {
            Some(n) => out.push_str(n),
            None => out.push_str(&format!("g{}", l.gen.0)),
        }
        let exp = run as i64 * l.sign();
        if exp != 1 {
            out.push_str(&format!("^{exp}"));
        }
        i += run;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> Letter {
        Letter::pos(0)
    }
    fn ai() -> Letter {
        Letter::neg(0)
    }
    fn b() -> Letter {
        Letter::pos(1)
    }
    fn bi() -> Letter {
        Letter::neg(1)
    }
    fn c() -> Letter {
        Letter::pos(2)
    }
    fn w(ls: &[Letter]) -> Word {
        Word::from_letters(ls.iter().copied())
    }

    #[test]
    fn free_reduction() {
        assert_eq!(w(&[a(), ai(), b()]).letters(), &[b()]);
        assert!(w(&[]).is_identity());
        assert!(w(&[a(), b(), bi(), ai()]).is_identity());
    }

    #[test]
    fn multiplication() {
        assert!(w(&[a()]).multiply(&w(&[ai()])).is_identity());
        assert_eq!(w(&[a()]).multiply(&w(&[b()])).letters(), &[a(), b()]);
        assert_eq!(w(&[a(), b()]).multiply(&w(&[bi(), c()])).letters(), &[a(), c()]);
    }

    #[test]
    fn inversion() {
        assert_eq!(w(&[a(), b()]).inverse().letters(), &[bi(), ai()]);
        assert!(Word::identity().inverse().is_identity());
        assert_eq!(w(&[ai()]).inverse().letters(), &[a()]);
    }

    #[test]
    fn commutators() {
        let x = w(&[a()]);
        let y = w(&[b()]);
        assert!(Word::commutator(&x, &x).is_identity());
        assert_eq!(Word::commutator(&x, &y).letters(), &[ai(), bi(), a(), b()]);
        // (ab)⁻¹ b⁻¹ (ab) b = b⁻¹a⁻¹b⁻¹abb, nothing cancels
        let ab = w(&[a(), b()]);
        assert_eq!(
            Word::commutator(&ab, &y).letters(),
            &[bi(), ai(), bi(), a(), b(), b()]
        );
    }

    #[test]
    fn powers() {
        assert_eq!(w(&[a()]).power(3).letters(), &[a(), a(), a()]);
        assert!(w(&[a(), b()]).power(0).is_identity());
        assert!(w(&[a(), ai()]).power(5).is_identity());
        // conjugated powers keep the conjugator once
        let x = w(&[b(), a(), bi()]);
        assert_eq!(x.power(3).letters(), &[b(), a(), a(), a(), bi()]);
        assert_eq!(x.power(-2).letters(), &[b(), ai(), ai(), bi()]);
        assert_eq!(x.power_len(1000), 1002);
        assert!(x.checked_power(1_000_000, 1000).is_none());
    }

    #[test]
    fn conjugation() {
        assert_eq!(w(&[a()]).conjugate(&Word::identity()), w(&[a()]));
        assert!(Word::identity().conjugate(&w(&[b()])).is_identity());
        assert_eq!(w(&[a()]).conjugate(&w(&[b()])).letters(), &[bi(), a(), b()]);
    }

    #[test]
    fn exponent_vectors() {
        assert_eq!(Word::from_powers(&[(0, 5)]).exponent_vector(2).unwrap(), vec![5, 0]);
        assert_eq!(Word::identity().exponent_vector(3).unwrap(), vec![0, 0, 0]);
        let comm = Word::commutator(&w(&[a()]), &w(&[b()]));
        assert_eq!(comm.exponent_vector(2).unwrap(), vec![0, 0]);
        assert_eq!(
            w(&[c()]).exponent_vector(2),
            Err(WordError::GeneratorOutOfRange { index: 2, n_gens: 2 })
        );
    }

    #[test]
    fn elimination_substitutes_and_renumbers() {
        // a b c with b := a⁻¹ → c, renumbered to generator 1
        let word = w(&[a(), b(), c()]);
        let out = word.eliminate_generator(1, &w(&[ai()]));
        assert_eq!(out.letters(), &[Letter::pos(1)]);
    }

    #[test]
    fn display_uses_runs() {
        let names: Vec<String> = vec!["a".into(), "b".into()];
        let word = Word::from_powers(&[(0, 2), (1, -1), (0, 1)]);
        assert_eq!(word.display_with(&names).to_string(), "a^2 b^-1 a");
        assert_eq!(Word::identity().display_with(&names).to_string(), "a^0");
    }
}
