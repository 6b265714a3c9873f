use num_complex::Complex64;
use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

/// A bounded multiplicative function on the index set.
///
/// Only hermitian characters are modelled: `value(x̃) == conj(value(x))`.
pub trait Character<I>: Send + Sync {
    fn value(&self, i: I) -> Complex64;

    /// `true` when every value is real (the precondition of the LP and the
    /// classifier's positive certificates).
    fn is_real(&self) -> bool {
        true
    }

    /// Human-readable parameter, e.g. the evaluation point.
    fn describe(&self) -> String {
        String::from("character")
    }

    /// Closed-form decay exponent of `|α(n)|` in `n`, where one is known.
    fn asymptotic_slope(&self) -> Option<f64> {
        None
    }

    fn value_re(&self, i: I) -> f64 {
        self.value(i).re
    }
}

impl<I, C: Character<I> + ?Sized> Character<I> for &C {
    fn value(&self, i: I) -> Complex64 {
        (**self).value(i)
    }
    fn is_real(&self) -> bool {
        (**self).is_real()
    }
    fn describe(&self) -> String {
        (**self).describe()
    }
    fn asymptotic_slope(&self) -> Option<f64> {
        (**self).asymptotic_slope()
    }
}

impl<I, C: Character<I> + ?Sized> Character<I> for Arc<C> {
    fn value(&self, i: I) -> Complex64 {
        (**self).value(i)
    }
    fn is_real(&self) -> bool {
        (**self).is_real()
    }
    fn describe(&self) -> String {
        (**self).describe()
    }
    fn asymptotic_slope(&self) -> Option<f64> {
        (**self).asymptotic_slope()
    }
}

/// The constant character `1`.
#[derive(Clone, Copy, Debug, Default)]
pub struct TrivialCharacter;

impl<I> Character<I> for TrivialCharacter {
    fn value(&self, _: I) -> Complex64 {
        Complex64::new(1.0, 0.0)
    }
    fn describe(&self) -> String {
        String::from("trivial")
    }
    fn asymptotic_slope(&self) -> Option<f64> {
        Some(0.0)
    }
}

type CharFn<I> = dyn Fn(I) -> Complex64 + Send + Sync;

/// A character given by a closure.
pub struct FnCharacter<I> {
    f: Arc<CharFn<I>>,
    real: bool,
    name: String,
}

impl<I> Clone for FnCharacter<I> {
    fn clone(&self) -> Self {
        FnCharacter {
            f: Arc::clone(&self.f),
            real: self.real,
            name: self.name.clone(),
        }
    }
}

impl<I> FnCharacter<I> {
    pub fn new<F>(name: impl Into<String>, real: bool, f: F) -> Self
    where
        F: Fn(I) -> Complex64 + Send + Sync + 'static,
    {
        FnCharacter {
            f: Arc::new(f),
            real,
            name: name.into(),
        }
    }

    pub fn real<F>(name: impl Into<String>, f: F) -> Self
    where
        F: Fn(I) -> f64 + Send + Sync + 'static,
    {
        Self::new(name, true, move |i| Complex64::new(f(i), 0.0))
    }
}

impl<I> Character<I> for FnCharacter<I> {
    fn value(&self, i: I) -> Complex64 {
        (self.f)(i)
    }
    fn is_real(&self) -> bool {
        self.real
    }
    fn describe(&self) -> String {
        self.name.clone()
    }
}

/// A character on a finite index set, stored by value. Indices not present
/// evaluate to zero.
#[derive(Clone, Debug)]
pub struct TableCharacter<I: Eq + Hash> {
    values: HashMap<I, Complex64>,
    name: String,
}

impl<I: Copy + Eq + Hash + Debug + Send + Sync> TableCharacter<I> {
    pub fn new(name: impl Into<String>, values: impl IntoIterator<Item = (I, Complex64)>) -> Self {
        TableCharacter {
            values: values.into_iter().collect(),
            name: name.into(),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (I, Complex64)> + '_ {
        self.values.iter().map(|(&i, &v)| (i, v))
    }
}

impl<I: Copy + Eq + Hash + Debug + Send + Sync> Character<I> for TableCharacter<I> {
    fn value(&self, i: I) -> Complex64 {
        self.values.get(&i).copied().unwrap_or_default()
    }
    fn is_real(&self) -> bool {
        self.values.values().all(|v| v.im.abs() <= 1e-12)
    }
    fn describe(&self) -> String {
        self.name.clone()
    }
}
