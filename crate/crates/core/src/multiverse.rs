//! Kripke-frame checker for the modal face of a multiverse of extensions.
//!
//! A frame abstracts "is an extension of" into a reflexive transitive
//! accessibility relation on finitely many worlds. Letters split into
//! buttons and switches; a button letter is analysed through `pushed`
//! (true from here on), `is_button` (can always still be pushed), and the
//! independence condition (any allowed pattern of pushed buttons is
//! reachable). The S4.2 check sweeps all labelings of the axiom letters,
//! and reports frame directedness separately so nothing is asserted that
//! was not checked.

use serde::Serialize;

/// Exhaustive S4.2 sweeps stop at this many worlds; enough for the
/// two-button one-switch canonical model.
pub const S42_WORLD_CAP: usize = 8;

/// The default bound for generated frames.
pub const DEFAULT_WORLD_CAP: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FrameError {
    #[error("accessibility is not reflexive: world {0} does not see itself")]
    NotReflexive(usize),
    #[error("accessibility is not transitive: {a} sees {b} sees {c}, but {a} does not see {c}")]
    NotTransitive { a: usize, b: usize, c: usize },
    #[error("{worlds} worlds exceed the cap {cap}")]
    WorldCapExceeded { worlds: u128, cap: usize },
    #[error("letter index {letter} out of range: {count} letters")]
    LetterOutOfRange { letter: usize, count: usize },
    #[error("world index {world} out of range: {count} worlds")]
    WorldOutOfRange { world: usize, count: usize },
    #[error("button index {button} out of range: {count} buttons")]
    ButtonOutOfRange { button: usize, count: usize },
    #[error("exhaustive sweep supports at most {cap} worlds, frame has {worlds}")]
    SweepWorldLimit { worlds: usize, cap: usize },
    #[error("letter cap for the sweep must be 2 or 3, got {0}")]
    BadLetterCap(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A finite reflexive transitive accessibility relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KripkeFrame {
    n: usize,
    access: Vec<bool>,
}

impl KripkeFrame {
    /// Builds from explicit accessibility pairs; reflexivity and
    /// transitivity are checked, violations are errors.
    pub fn new(n: usize, pairs: &[(usize, usize)]) -> Result<Self, FrameError> {
        let mut access = vec![false; n * n];
        for &(a, b) in pairs {
            if a >= n {
                return Err(FrameError::WorldOutOfRange { world: a, count: n });
            }
            if b >= n {
                return Err(FrameError::WorldOutOfRange { world: b, count: n });
            }
            access[a * n + b] = true;
        }
        let fr = KripkeFrame { n, access };
        fr.validate()?;
        Ok(fr)
    }

    fn validate(&self) -> Result<(), FrameError> {
        for w in 0..self.n {
            if !self.sees(w, w) {
                return Err(FrameError::NotReflexive(w));
            }
        }
        for a in 0..self.n {
            for b in 0..self.n {
                if !self.sees(a, b) {
                    continue;
                }
                for c in 0..self.n {
                    if self.sees(b, c) && !self.sees(a, c) {
                        return Err(FrameError::NotTransitive { a, b, c });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sees(&self, a: usize, b: usize) -> bool {
        self.access[a * self.n + b]
    }

    pub fn accessibility_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                if self.sees(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Convergence: any two worlds seen from a common one see a common one.
    pub fn is_directed(&self) -> bool {
        for w in 0..self.n {
            for u in 0..self.n {
                if !self.sees(w, u) {
                    continue;
                }
                for v in 0..self.n {
                    if !self.sees(w, v) {
                        continue;
                    }
                    if !(0..self.n).any(|z| self.sees(u, z) && self.sees(v, z)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn check_world(&self, w: usize) -> Result<(), FrameError> {
        if w >= self.n {
            return Err(FrameError::WorldOutOfRange { world: w, count: self.n });
        }
        Ok(())
    }
}

/// Truth of the letters at each world. Buttons come first, switches after.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorldLabeling {
    pub n_buttons: usize,
    pub n_switches: usize,
    n_worlds: usize,
    truth: Vec<bool>,
}

impl WorldLabeling {
    pub fn new(n_buttons: usize, n_switches: usize, n_worlds: usize) -> Self {
        WorldLabeling {
            n_buttons,
            n_switches,
            n_worlds,
            truth: vec![false; (n_buttons + n_switches) * n_worlds],
        }
    }

    pub fn letter_count(&self) -> usize {
        self.n_buttons + self.n_switches
    }

    pub fn n_worlds(&self) -> usize {
        self.n_worlds
    }

    pub fn set(&mut self, letter: usize, world: usize, value: bool) {
        self.truth[letter * self.n_worlds + world] = value;
    }

    pub fn get(&self, letter: usize, world: usize) -> bool {
        self.truth[letter * self.n_worlds + world]
    }

    fn check_letter(&self, l: usize) -> Result<(), FrameError> {
        if l >= self.letter_count() {
            return Err(FrameError::LetterOutOfRange { letter: l, count: self.letter_count() });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModalFormula {
    Letter(usize),
    Neg(Box<ModalFormula>),
    And(Box<ModalFormula>, Box<ModalFormula>),
    Or(Box<ModalFormula>, Box<ModalFormula>),
    Imp(Box<ModalFormula>, Box<ModalFormula>),
    Box_(Box<ModalFormula>),
    Diamond(Box<ModalFormula>),
}

impl ModalFormula {
    pub fn letter(i: usize) -> Self {
        ModalFormula::Letter(i)
    }

    pub fn neg(f: Self) -> Self {
        ModalFormula::Neg(Box::new(f))
    }

    pub fn and(a: Self, b: Self) -> Self {
        ModalFormula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Self, b: Self) -> Self {
        ModalFormula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Self, b: Self) -> Self {
        ModalFormula::Imp(Box::new(a), Box::new(b))
    }

    pub fn necessarily(f: Self) -> Self {
        ModalFormula::Box_(Box::new(f))
    }

    pub fn possibly(f: Self) -> Self {
        ModalFormula::Diamond(Box::new(f))
    }

    fn max_letter(&self) -> Option<usize> {
        match self {
            ModalFormula::Letter(i) => Some(*i),
            ModalFormula::Neg(f) | ModalFormula::Box_(f) | ModalFormula::Diamond(f) => {
                f.max_letter()
            }
            ModalFormula::And(a, b) | ModalFormula::Or(a, b) | ModalFormula::Imp(a, b) => {
                a.max_letter().max(b.max_letter())
            }
        }
    }
}

fn eval_at(fr: &KripkeFrame, lab: &WorldLabeling, w: usize, f: &ModalFormula) -> bool {
    match f {
        ModalFormula::Letter(i) => lab.get(*i, w),
        ModalFormula::Neg(g) => !eval_at(fr, lab, w, g),
        ModalFormula::And(a, b) => eval_at(fr, lab, w, a) && eval_at(fr, lab, w, b),
        ModalFormula::Or(a, b) => eval_at(fr, lab, w, a) || eval_at(fr, lab, w, b),
        ModalFormula::Imp(a, b) => !eval_at(fr, lab, w, a) || eval_at(fr, lab, w, b),
        ModalFormula::Box_(g) => (0..fr.n()).all(|v| !fr.sees(w, v) || eval_at(fr, lab, v, g)),
        ModalFormula::Diamond(g) => (0..fr.n()).any(|v| fr.sees(w, v) && eval_at(fr, lab, v, g)),
    }
}

/// Standard Kripke evaluation; box quantifies over accessible worlds, which
/// include `w` itself by reflexivity.
pub fn eval_modal(
    fr: &KripkeFrame,
    lab: &WorldLabeling,
    w: usize,
    f: &ModalFormula,
) -> Result<bool, FrameError> {
    fr.check_world(w)?;
    if let Some(l) = f.max_letter() {
        lab.check_letter(l)?;
    }
    Ok(eval_at(fr, lab, w, f))
}

/// Is button `i` true at `w` and every world `w` sees?
pub fn pushed(
    fr: &KripkeFrame,
    lab: &WorldLabeling,
    w: usize,
    i: usize,
) -> Result<bool, FrameError> {
    fr.check_world(w)?;
    if i >= lab.n_buttons {
        return Err(FrameError::ButtonOutOfRange { button: i, count: lab.n_buttons });
    }
    Ok(pushed_unchecked(fr, lab, w, i))
}

fn pushed_unchecked(fr: &KripkeFrame, lab: &WorldLabeling, w: usize, i: usize) -> bool {
    (0..fr.n()).all(|v| !fr.sees(w, v) || lab.get(i, v))
}

fn pushed_set(fr: &KripkeFrame, lab: &WorldLabeling, w: usize, n: usize) -> u32 {
    let mut mask = 0u32;
    for i in 0..n {
        if pushed_unchecked(fr, lab, w, i) {
            mask |= 1 << i;
        }
    }
    mask
}

/// From every world reachable from `w0`, some accessible world has button
/// `i` pushed.
pub fn is_button(
    fr: &KripkeFrame,
    lab: &WorldLabeling,
    w0: usize,
    i: usize,
) -> Result<bool, FrameError> {
    fr.check_world(w0)?;
    if i >= lab.n_buttons {
        return Err(FrameError::ButtonOutOfRange { button: i, count: lab.n_buttons });
    }
    Ok((0..fr.n()).all(|w| {
        !fr.sees(w0, w)
            || (0..fr.n()).any(|v| fr.sees(w, v) && pushed_unchecked(fr, lab, v, i))
    }))
}

/// Once true, true at every accessible world.
pub fn is_persistent(fr: &KripkeFrame, lab: &WorldLabeling, letter: usize) -> Result<bool, FrameError> {
    lab.check_letter(letter)?;
    for w in 0..fr.n() {
        if !lab.get(letter, w) {
            continue;
        }
        for v in 0..fr.n() {
            if fr.sees(w, v) && !lab.get(letter, v) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum IndependenceFailure {
    ButtonAlreadyPushed { button: usize },
    TargetUnreachable { world: usize, target: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndependenceReport {
    pub pass: bool,
    pub counterexample: Option<IndependenceFailure>,
}

/// The independence condition for the first `n` buttons, seen from `w0`:
/// none is pushed at `w0`, and from any reachable world, any superset of the
/// currently pushed set is realized exactly at some accessible world.
/// The counterexample is the least in (world, target-set) order.
pub fn check_independence(
    fr: &KripkeFrame,
    lab: &WorldLabeling,
    w0: usize,
    n: usize,
) -> Result<IndependenceReport, FrameError> {
    fr.check_world(w0)?;
    if n > lab.n_buttons {
        return Err(FrameError::ButtonOutOfRange { button: n, count: lab.n_buttons });
    }
    let sets: Vec<u32> = (0..fr.n()).map(|w| pushed_set(fr, lab, w, n)).collect();
    if sets[w0] != 0 {
        let button = sets[w0].trailing_zeros() as usize;
        return Ok(IndependenceReport {
            pass: false,
            counterexample: Some(IndependenceFailure::ButtonAlreadyPushed { button }),
        });
    }
    for w in 0..fr.n() {
        if !fr.sees(w0, w) {
            continue;
        }
        let base = sets[w];
        for target in 0u32..(1 << n) {
            if target & base != base {
                continue;
            }
            let hit = (0..fr.n()).any(|v| fr.sees(w, v) && sets[v] == target);
            if !hit {
                let target_set = (0..n).filter(|i| target & (1 << i) != 0).collect();
                return Ok(IndependenceReport {
                    pass: false,
                    counterexample: Some(IndependenceFailure::TargetUnreachable {
                        world: w,
                        target: target_set,
                    }),
                });
            }
        }
    }
    Ok(IndependenceReport { pass: true, counterexample: None })
}

/// The canonical model with `n` independent buttons and `m` free switches:
/// worlds are pairs (pushed set X, switch row s), indexed `X * 2^m + s`;
/// accessibility is inclusion on X with switches unconstrained.
pub fn canonical_button_model(
    n: usize,
    m: usize,
    world_cap: usize,
) -> Result<(KripkeFrame, WorldLabeling), FrameError> {
    let worlds: u128 = (1u128 << n) << m;
    if worlds > world_cap as u128 {
        return Err(FrameError::WorldCapExceeded { worlds, cap: world_cap });
    }
    let worlds = worlds as usize;
    let switch_block = 1usize << m;
    let mut access = vec![false; worlds * worlds];
    for w in 0..worlds {
        let x = w / switch_block;
        for v in 0..worlds {
            let y = v / switch_block;
            if x & !y == 0 {
                access[w * worlds + v] = true;
            }
        }
    }
    let fr = KripkeFrame { n: worlds, access };
    debug_assert!(fr.validate().is_ok());

    let mut lab = WorldLabeling::new(n, m, worlds);
    for w in 0..worlds {
        let x = w / switch_block;
        let s = w % switch_block;
        for i in 0..n {
            lab.set(i, w, x & (1 << i) != 0);
        }
        for j in 0..m {
            lab.set(n + j, w, s & (1 << j) != 0);
        }
    }
    Ok((fr, lab))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomCounterexample {
    pub world: usize,
    /// One truth row per swept letter, one character per world.
    pub labeling: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub valid: bool,
    pub counterexample: Option<AxiomCounterexample>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct S42Report {
    pub directed: bool,
    /// `box (p -> q) -> (box p -> box q)`
    pub k: AxiomCheck,
    /// `box p -> p`
    pub t: AxiomCheck,
    /// `box p -> box box p`
    pub four: AxiomCheck,
    /// `diamond box p -> box diamond p`
    pub dot2: AxiomCheck,
}

impl S42Report {
    pub fn all_valid(&self) -> bool {
        self.k.valid && self.t.valid && self.four.valid && self.dot2.valid
    }
}

fn sweep_axiom(fr: &KripkeFrame, letters: usize, axiom: &ModalFormula) -> AxiomCheck {
    let n = fr.n();
    let mut lab = WorldLabeling::new(letters, 0, n);
    for w in 0..n {
        for bits in 0u64..(1 << (letters * n)) {
            for l in 0..letters {
                for v in 0..n {
                    lab.set(l, v, bits & (1 << (l * n + v)) != 0);
                }
            }
            if !eval_at(fr, &lab, w, axiom) {
                let labeling = (0..letters)
                    .map(|l| (0..n).map(|v| if lab.get(l, v) { '1' } else { '0' }).collect())
                    .collect();
                return AxiomCheck {
                    valid: false,
                    counterexample: Some(AxiomCounterexample { world: w, labeling }),
                };
            }
        }
    }
    AxiomCheck { valid: true, counterexample: None }
}

/// Sweeps the S4 axioms and the convergence axiom over all labelings of
/// their letters (two for K, one otherwise; `letter_cap` bounds the sweep).
/// Directedness of the frame is reported alongside, since it is the frame
/// property matching the convergence axiom.
pub fn check_s42(fr: &KripkeFrame, letter_cap: usize) -> Result<S42Report, FrameError> {
    if fr.n() > S42_WORLD_CAP {
        return Err(FrameError::SweepWorldLimit { worlds: fr.n(), cap: S42_WORLD_CAP });
    }
    if !(2..=3).contains(&letter_cap) {
        return Err(FrameError::BadLetterCap(letter_cap));
    }
    use ModalFormula as M;
    let p = || M::letter(0);
    let q = || M::letter(1);
    let k_axiom = M::imp(
        M::necessarily(M::imp(p(), q())),
        M::imp(M::necessarily(p()), M::necessarily(q())),
    );
    let t_axiom = M::imp(M::necessarily(p()), p());
    let four_axiom = M::imp(M::necessarily(p()), M::necessarily(M::necessarily(p())));
    let dot2_axiom = M::imp(
        M::possibly(M::necessarily(p())),
        M::necessarily(M::possibly(p())),
    );
    Ok(S42Report {
        directed: fr.is_directed(),
        k: sweep_axiom(fr, 2, &k_axiom),
        t: sweep_axiom(fr, 1, &t_axiom),
        four: sweep_axiom(fr, 1, &four_axiom),
        dot2: sweep_axiom(fr, 1, &dot2_axiom),
    })
}

/// Parses a frame file: `worlds N`, `edge A B` pairs (reflexive pairs
/// included), and `button BITS` / `switch BITS` truth rows with one
/// character per world. `#` starts a comment.
pub fn parse_frame_file(text: &str) -> Result<(KripkeFrame, WorldLabeling), FrameError> {
    let mut n: Option<usize> = None;
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut buttons: Vec<Vec<bool>> = Vec::new();
    let mut switches: Vec<Vec<bool>> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| FrameError::Parse { line: lineno + 1, msg };
        let mut words = line.split_whitespace();
        let head = words.next().unwrap();
        let rest: Vec<&str> = words.collect();
        match head {
            "worlds" => {
                let count = rest
                    .first()
                    .and_then(|w| w.parse::<usize>().ok())
                    .ok_or_else(|| err("expected `worlds N`".into()))?;
                n = Some(count);
            }
            "edge" => {
                if rest.len() != 2 {
                    return Err(err("expected `edge A B`".into()));
                }
                let a = rest[0].parse::<usize>().map_err(|_| err("bad world index".into()))?;
                let b = rest[1].parse::<usize>().map_err(|_| err("bad world index".into()))?;
                pairs.push((a, b));
            }
            "button" | "switch" => {
                let worlds = n.ok_or_else(|| err("`worlds N` must come first".into()))?;
                let bits = rest.first().ok_or_else(|| err("expected a 0/1 row".into()))?;
                if bits.len() != worlds {
                    return Err(err(format!("row has {} characters, need {}", bits.len(), worlds)));
                }
                let row: Vec<bool> = bits
                    .chars()
                    .map(|c| match c {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        other => Err(err(format!("bad character `{other}` in truth row"))),
                    })
                    .collect::<Result<_, _>>()?;
                if head == "button" {
                    buttons.push(row);
                } else {
                    switches.push(row);
                }
            }
            other => return Err(err(format!("unknown directive `{other}`"))),
        }
    }
    let n = n.ok_or(FrameError::Parse { line: 0, msg: "missing `worlds N`".into() })?;
    let fr = KripkeFrame::new(n, &pairs)?;
    let mut lab = WorldLabeling::new(buttons.len(), switches.len(), n);
    for (i, row) in buttons.iter().chain(switches.iter()).enumerate() {
        for (w, &v) in row.iter().enumerate() {
            lab.set(i, w, v);
        }
    }
    Ok((fr, lab))
}

pub fn render_frame_file(fr: &KripkeFrame, lab: &WorldLabeling) -> String {
    let mut out = format!("worlds {}\n", fr.n());
    for (a, b) in fr.accessibility_pairs() {
        out.push_str(&format!("edge {a} {b}\n"));
    }
    let row = |letter: usize| -> String {
        (0..fr.n()).map(|w| if lab.get(letter, w) { '1' } else { '0' }).collect()
    };
    for i in 0..lab.n_buttons {
        out.push_str(&format!("button {}\n", row(i)));
    }
    for j in 0..lab.n_switches {
        out.push_str(&format!("switch {}\n", row(lab.n_buttons + j)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use ModalFormula as M;

    /// root 0 sees reflexive worlds 1 and 2, which do not see each other.
    fn fork() -> KripkeFrame {
        KripkeFrame::new(3, &[(0, 0), (1, 1), (2, 2), (0, 1), (0, 2)]).unwrap()
    }

    #[test]
    fn one_world_frame_collapses_box() {
        let fr = KripkeFrame::new(1, &[(0, 0)]).unwrap();
        for value in [false, true] {
            let mut lab = WorldLabeling::new(0, 1, 1);
            lab.set(0, 0, value);
            let boxed = M::necessarily(M::letter(0));
            assert_eq!(eval_modal(&fr, &lab, 0, &boxed).unwrap(), value);
        }
    }

    #[test]
    fn fork_separates_the_convergence_axiom() {
        let fr = fork();
        let mut lab = WorldLabeling::new(0, 1, 3);
        lab.set(0, 1, true); // p true exactly at world 1
        let dia_box = M::possibly(M::necessarily(M::letter(0)));
        let box_dia = M::necessarily(M::possibly(M::letter(0)));
        assert!(eval_modal(&fr, &lab, 0, &dia_box).unwrap());
        assert!(!eval_modal(&fr, &lab, 0, &box_dia).unwrap());
    }

    #[test]
    fn reflexivity_axiom_holds_under_every_labeling() {
        let frames = [fork(), canonical_button_model(2, 0, 64).unwrap().0];
        let axiom = M::imp(M::necessarily(M::letter(0)), M::letter(0));
        for fr in &frames {
            for bits in 0u32..(1 << fr.n()) {
                let mut lab = WorldLabeling::new(0, 1, fr.n());
                for w in 0..fr.n() {
                    lab.set(0, w, bits & (1 << w) != 0);
                }
                for w in 0..fr.n() {
                    assert!(eval_modal(fr, &lab, w, &axiom).unwrap());
                }
            }
        }
    }

    #[test]
    fn frame_validation_errors() {
        assert!(matches!(
            KripkeFrame::new(2, &[(0, 0), (0, 1)]),
            Err(FrameError::NotReflexive(1))
        ));
        assert!(matches!(
            KripkeFrame::new(3, &[(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)]),
            Err(FrameError::NotTransitive { .. })
        ));
    }

    #[test]
    fn canonical_model_shape() {
        let (fr, lab) = canonical_button_model(2, 0, 64).unwrap();
        assert_eq!(fr.n(), 4);
        assert_eq!(fr.accessibility_pairs().len(), 9);
        assert!(fr.is_directed());
        assert_eq!(lab.n_buttons, 2);

        let (fr, _) = canonical_button_model(2, 1, 64).unwrap();
        assert_eq!(fr.n(), 8);
        assert!(fr.is_directed());
    }

    #[test]
    fn pushed_matches_the_coordinate() {
        for (n, m) in [(1usize, 0usize), (2, 0), (2, 1), (1, 2)] {
            let (fr, lab) = canonical_button_model(n, m, 256).unwrap();
            let block = 1usize << m;
            for w in 0..fr.n() {
                let x = w / block;
                for i in 0..n {
                    assert_eq!(
                        pushed(&fr, &lab, w, i).unwrap(),
                        x & (1 << i) != 0,
                        "world {w} button {i}"
                    );
                }
            }
        }
    }

    #[test]
    fn top_world_has_all_buttons_pushed_root_none() {
        let (fr, lab) = canonical_button_model(2, 0, 64).unwrap();
        let top = fr.n() - 1;
        assert!(pushed(&fr, &lab, top, 0).unwrap());
        assert!(pushed(&fr, &lab, top, 1).unwrap());
        assert!(!pushed(&fr, &lab, 0, 0).unwrap());
        assert!(!pushed(&fr, &lab, 0, 1).unwrap());
    }

    #[test]
    fn canonical_letters_are_buttons_and_persistent() {
        let (fr, lab) = canonical_button_model(2, 1, 64).unwrap();
        for i in 0..2 {
            assert!(is_button(&fr, &lab, 0, i).unwrap());
            assert!(is_persistent(&fr, &lab, i).unwrap());
        }
        // the switch letter flips freely, so it is not persistent
        assert!(!is_persistent(&fr, &lab, 2).unwrap());
    }

    #[test]
    fn degenerate_letters() {
        let (fr, _) = canonical_button_model(1, 0, 64).unwrap();
        // a letter true nowhere is persistent but no button
        let dead = WorldLabeling::new(1, 0, fr.n());
        assert!(is_persistent(&fr, &dead, 0).unwrap());
        assert!(!is_button(&fr, &dead, 0, 0).unwrap());
        // a letter true everywhere is a pushed button
        let mut full = WorldLabeling::new(1, 0, fr.n());
        for w in 0..fr.n() {
            full.set(0, w, true);
        }
        assert!(is_button(&fr, &full, 0, 0).unwrap());
        assert!(pushed(&fr, &full, 0, 0).unwrap());
    }

    #[test]
    fn persistence_makes_pushed_equal_truth() {
        let (fr, _) = canonical_button_model(2, 0, 64).unwrap();
        for bits in 0u32..(1 << fr.n()) {
            let mut lab = WorldLabeling::new(1, 0, fr.n());
            for w in 0..fr.n() {
                lab.set(0, w, bits & (1 << w) != 0);
            }
            if is_persistent(&fr, &lab, 0).unwrap() {
                for w in 0..fr.n() {
                    assert_eq!(pushed(&fr, &lab, w, 0).unwrap(), lab.get(0, w));
                }
            }
        }
    }

    #[test]
    fn canonical_independence_passes() {
        for (n, m) in [(1usize, 0usize), (2, 0), (2, 1), (3, 0)] {
            let (fr, lab) = canonical_button_model(n, m, 256).unwrap();
            let report = check_independence(&fr, &lab, 0, n).unwrap();
            assert!(report.pass, "({n},{m})");
        }
    }

    #[test]
    fn deleting_a_world_breaks_independence() {
        let (fr, lab) = canonical_button_model(2, 0, 64).unwrap();
        // drop world 2 (the X = {1} world); renumber the rest
        let keep = [0usize, 1, 3];
        let mut pairs = Vec::new();
        for (ai, &a) in keep.iter().enumerate() {
            for (bi, &b) in keep.iter().enumerate() {
                if fr.sees(a, b) {
                    pairs.push((ai, bi));
                }
            }
        }
        let small = KripkeFrame::new(3, &pairs).unwrap();
        let mut small_lab = WorldLabeling::new(2, 0, 3);
        for (wi, &w) in keep.iter().enumerate() {
            for i in 0..2 {
                small_lab.set(i, wi, lab.get(i, w));
            }
        }
        let report = check_independence(&small, &small_lab, 0, 2).unwrap();
        assert!(!report.pass);
        match report.counterexample.unwrap() {
            IndependenceFailure::TargetUnreachable { target, .. } => {
                assert_eq!(target, vec![1]);
            }
            other => panic!("unexpected counterexample {other:?}"),
        }
    }

    #[test]
    fn pushed_start_fails_independence() {
        let (fr, lab) = canonical_button_model(1, 0, 64).unwrap();
        // world 1 is X = {0}: the button is already pushed there
        let report = check_independence(&fr, &lab, 1, 1).unwrap();
        assert!(!report.pass);
        assert_eq!(
            report.counterexample.unwrap(),
            IndependenceFailure::ButtonAlreadyPushed { button: 0 }
        );
    }

    #[test]
    fn s42_holds_on_the_canonical_model() {
        let (fr, _) = canonical_button_model(2, 1, 64).unwrap();
        let report = check_s42(&fr, 2).unwrap();
        assert!(report.directed);
        assert!(report.all_valid());
        // 16 worlds exceed the sweep cap
        let (big, _) = canonical_button_model(3, 1, 64).unwrap();
        assert!(matches!(check_s42(&big, 2), Err(FrameError::SweepWorldLimit { .. })));
    }

    #[test]
    fn fork_fails_dot2_with_witness() {
        let report = check_s42(&fork(), 2).unwrap();
        assert!(!report.directed);
        assert!(report.k.valid);
        assert!(report.t.valid);
        assert!(report.four.valid);
        assert!(!report.dot2.valid);
        let ce = report.dot2.counterexample.unwrap();
        assert_eq!(ce.world, 0);
        assert_eq!(ce.labeling.len(), 1);
    }

    #[test]
    fn frame_file_roundtrip() {
        let (fr, lab) = canonical_button_model(2, 1, 64).unwrap();
        let text = render_frame_file(&fr, &lab);
        let (fr2, lab2) = parse_frame_file(&text).unwrap();
        assert_eq!(fr, fr2);
        assert_eq!(lab, lab2);
    }

    #[test]
    fn frame_file_errors() {
        assert!(matches!(
            parse_frame_file("worlds 2\nedge 0 0\nedge 1 1\nbutton 1\n"),
            Err(FrameError::Parse { .. })
        ));
        assert!(matches!(
            parse_frame_file("edge 0 0\n"),
            Err(FrameError::Parse { .. })
        ));
        assert!(matches!(
            parse_frame_file("worlds 2\nedge 0 0\n"),
            Err(FrameError::NotReflexive(1))
        ));
    }

    #[test]
    fn world_cap_is_enforced() {
        assert!(matches!(
            canonical_button_model(5, 4, 256),
            Err(FrameError::WorldCapExceeded { worlds: 512, .. })
        ));
    }
}
