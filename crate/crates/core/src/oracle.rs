//! Set-function oracles.
//!
//! An oracle answers value queries `f(S)` for subsets of a dense ground set
//! `0..ground_size()`. Queries are expressed against an opaque `State`, an
//! evaluated subset that can be extended one element at a time. Building a
//! state with [`SetFunction::insert`] is bookkeeping; the two calls that count
//! as oracle queries are [`SetFunction::value`] (one `f(S)`) and
//! [`SetFunction::gain`] (one `f(S ∪ {v})`, given that `f(S)` is known).
//!
//! Oracles must be pure functions of the subset: no hidden state, and safe to
//! share across threads while a round is being evaluated.

pub type ElementId = usize;

pub trait SetFunction: Sync {
    /// An evaluated subset.
    type State: Clone + Send + Sync;

    /// Ids are valid in `0..ground_size()`.
    fn ground_size(&self) -> usize;

    fn empty_state(&self) -> Self::State;

    /// Adds `v` to the subset held by `state`. Inserting a member is a no-op.
    fn insert(&self, state: &mut Self::State, v: ElementId);

    /// `f(S)` for the subset held by `state`.
    fn value(&self, state: &Self::State) -> u64;

    /// `f(S ∪ {v}) - f(S)`.
    fn gain(&self, state: &Self::State, v: ElementId) -> u64 {
        let mut next = state.clone();
        self.insert(&mut next, v);
        self.value(&next) - self.value(state)
    }

    fn state_of(&self, set: &[ElementId]) -> Self::State {
        let mut state = self.empty_state();
        for &v in set {
            self.insert(&mut state, v);
        }
        state
    }

    fn eval(&self, set: &[ElementId]) -> u64 {
        self.value(&self.state_of(set))
    }
}

impl<T: SetFunction + ?Sized> SetFunction for &T {
    type State = T::State;

    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }
    fn empty_state(&self) -> Self::State {
        (**self).empty_state()
    }
    fn insert(&self, state: &mut Self::State, v: ElementId) {
        (**self).insert(state, v)
    }
    fn value(&self, state: &Self::State) -> u64 {
        (**self).value(state)
    }
    fn gain(&self, state: &Self::State, v: ElementId) -> u64 {
        (**self).gain(state, v)
    }
}

/// `g(S) = min(f(S), k)`.
#[derive(Debug, Clone)]
pub struct Truncated<F> {
    inner: F,
    k: u64,
}

impl<F: SetFunction> Truncated<F> {
    pub fn new(inner: F, k: u64) -> Self {
        Self { inner, k }
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn inner(&self) -> &F {
        &self.inner
    }
}

impl<F: SetFunction> SetFunction for Truncated<F> {
    type State = F::State;

    fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }
    fn empty_state(&self) -> Self::State {
        self.inner.empty_state()
    }
    fn insert(&self, state: &mut Self::State, v: ElementId) {
        self.inner.insert(state, v)
    }
    fn value(&self, state: &Self::State) -> u64 {
        self.inner.value(state).min(self.k)
    }
    fn gain(&self, state: &Self::State, v: ElementId) -> u64 {
        let base = self.inner.value(state);
        let next = base + self.inner.gain(state, v);
        next.min(self.k) - base.min(self.k)
    }
}

/// The marginal function `f_Z(S) = f(S ∪ Z) - f(Z)` for a fixed base set `Z`.
#[derive(Debug, Clone)]
pub struct Contracted<F: SetFunction> {
    inner: F,
    base: F::State,
    base_value: u64,
}

impl<F: SetFunction> Contracted<F> {
    /// `base_value` must equal `inner.value(&base)`; passing it in avoids
    /// an uncounted query.
    pub fn new(inner: F, base: F::State, base_value: u64) -> Self {
        Self { inner, base, base_value }
    }

    pub fn base_value(&self) -> u64 {
        self.base_value
    }
}

impl<F: SetFunction> SetFunction for Contracted<F> {
    type State = F::State;

    fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }
    fn empty_state(&self) -> Self::State {
        self.base.clone()
    }
    fn insert(&self, state: &mut Self::State, v: ElementId) {
        self.inner.insert(state, v)
    }
    fn value(&self, state: &Self::State) -> u64 {
        self.inner.value(state) - self.base_value
    }
    fn gain(&self, state: &Self::State, v: ElementId) -> u64 {
        self.inner.gain(state, v)
    }
}

/// A modular function `f(S) = Σ_{v∈S} w(v)`. Mostly useful as a test double.
#[derive(Debug, Clone)]
pub struct Modular {
    weights: Vec<u64>,
}

impl Modular {
    pub fn new(weights: Vec<u64>) -> Self {
        Self { weights }
    }
}

impl SetFunction for Modular {
    type State = (Vec<bool>, u64);

    fn ground_size(&self) -> usize {
        self.weights.len()
    }
    fn empty_state(&self) -> Self::State {
        (vec![false; self.weights.len()], 0)
    }
    fn insert(&self, state: &mut Self::State, v: ElementId) {
        if !state.0[v] {
            state.0[v] = true;
            state.1 += self.weights[v];
        }
    }
    fn value(&self, state: &Self::State) -> u64 {
        state.1
    }
    fn gain(&self, state: &Self::State, v: ElementId) -> u64 {
        if state.0[v] {
            0
        } else {
            self.weights[v]
        }
    }
}
