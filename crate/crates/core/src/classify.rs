//! Family classification and the dispatch table mapping every diameter-4
//! tree to the construction, non-existence result, conjecture or open case
//! that governs it.

use std::fmt;

use serde::Serialize;

use crate::tree::TreeSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    EvenCaterpillar,
    OddCaterpillar,
    EvenLobster,
    OddLobster,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// One tag per construction or non-existence argument.
///
/// Names follow the parity signature the result is stated for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Lemma {
    /// j even, a_{j+1}, a_{j+2} of equal parity.
    ESameParity,
    /// j odd, a_{j+1} even, a_{j+2} odd.
    OOppParity,
    /// j even, a_{j+1} even, a_{j+2} odd.
    EOppParity,
    /// j odd, a_{j+1}, a_{j+2} both even.
    OEE,
    /// RT(0^j, 1, a_{j+2}) with j, a_{j+2} odd and j = 1 or a_{j+2} = 1.
    NonSegCaterpillars,
    /// RT(0^j, 1, a_{j+2}) with j, a_{j+2} odd and at least 3.
    LeadingOne,
    /// j odd, a_{j+2} >= a_{j+1} >= 3 both odd.
    OOO,
    JklOdd,
    JkEvenLOdd,
    JklEven,
    JkOddLEven,
    JEvenKlOdd,
    JlEvenKOdd,
    /// RT(0^j, 1^l) with j odd, l >= 3.
    BadLobsters,
    JOddKlEven,
}

impl Lemma {
    pub fn tag(self) -> &'static str {
        match self {
            Lemma::ESameParity => "e,sameparity",
            Lemma::OOppParity => "o,oppparity",
            Lemma::EOppParity => "e,oppparity",
            Lemma::OEE => "o,e,e",
            Lemma::NonSegCaterpillars => "nonSEGcaterpillars",
            Lemma::LeadingOne => "a_{j+1}=1",
            Lemma::OOO => "o,o,o",
            Lemma::JklOdd => "j,k,l-odd",
            Lemma::JkEvenLOdd => "j,k-even,l-odd",
            Lemma::JklEven => "j,k,l-even",
            Lemma::JkOddLEven => "j,k-odd,l-even",
            Lemma::JEvenKlOdd => "j-even,k,l-odd",
            Lemma::JlEvenKOdd => "j,l-even,k-odd",
            Lemma::BadLobsters => "badlobsters",
            Lemma::JOddKlEven => "j-odd,k,l-even",
        }
    }

    pub const CONSTRUCTIVE: [Lemma; 13] = [
        Lemma::ESameParity,
        Lemma::OOppParity,
        Lemma::EOppParity,
        Lemma::OEE,
        Lemma::LeadingOne,
        Lemma::OOO,
        Lemma::JklOdd,
        Lemma::JkEvenLOdd,
        Lemma::JklEven,
        Lemma::JkOddLEven,
        Lemma::JEvenKlOdd,
        Lemma::JlEvenKOdd,
        Lemma::JOddKlEven,
    ];

    /// Whether the construction produces an even-size tree.
    pub fn even_size(self) -> bool {
        matches!(
            self,
            Lemma::ESameParity
                | Lemma::OOppParity
                | Lemma::JklOdd
                | Lemma::JkEvenLOdd
                | Lemma::JklEven
                | Lemma::JkOddLEven
        )
    }
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L-{}", self.tag())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Conjecture {
    /// j even, k = 1, l even >= 2.
    One,
    /// j odd, k even, l even >= 4.
    Two,
    /// j odd, k even, l odd >= 3.
    Three,
}

impl Conjecture {
    pub fn number(self) -> u8 {
        match self {
            Conjecture::One => 1,
            Conjecture::Two => 2,
            Conjecture::Three => 3,
        }
    }
}

impl fmt::Display for Conjecture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Conjecture {}", self.number())
    }
}

/// Substitution parameters of a construction.
///
/// `halves[i - 1]` is `b_i` for spine vertex `i` (zero for childless ones).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Params {
    pub r: usize,
    pub s: usize,
    pub t: usize,
    pub halves: Vec<usize>,
}

impl Params {
    pub fn b(&self, i: usize) -> usize {
        self.halves[i - 1]
    }

    /// `sum_{z = from}^{to} b_z`, empty when `to < from`.
    pub fn b_sum(&self, from: usize, to: usize) -> usize {
        if to < from {
            return 0;
        }
        self.halves[from - 1..to].iter().sum()
    }

    pub fn b_total(&self) -> usize {
        self.halves.iter().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Dispatch {
    Constructive {
        lemma: Lemma,
        /// Case number within the construction, when it has several.
        case: Option<u8>,
        params: Params,
    },
    NotSeg(Lemma),
    Conjectured(Conjecture),
    Uncovered,
}

impl Dispatch {
    pub fn tag(&self) -> String {
        match self {
            Dispatch::Constructive { lemma, case: Some(c), .. } => format!("{lemma} case {c}"),
            Dispatch::Constructive { lemma, .. } => lemma.to_string(),
            Dispatch::NotSeg(lemma) => lemma.to_string(),
            Dispatch::Conjectured(c) => c.to_string(),
            Dispatch::Uncovered => "uncovered".to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub family: Family,
    pub j: usize,
    pub k: usize,
    pub l: usize,
    pub q: usize,
    pub dispatch: Dispatch,
}

impl Classification {
    pub fn even_size(&self) -> bool {
        self.q.is_multiple_of(2)
    }
}

pub fn classify(spec: &TreeSpec) -> Classification {
    let (j, k, l) = (spec.j(), spec.k(), spec.l());
    let q = spec.size();
    let even = q.is_multiple_of(2);
    let family = match (spec.is_caterpillar(), even) {
        (true, true) => Family::EvenCaterpillar,
        (true, false) => Family::OddCaterpillar,
        (false, true) => Family::EvenLobster,
        (false, false) => Family::OddLobster,
    };
    let dispatch = if spec.is_caterpillar() {
        caterpillar_dispatch(spec, even)
    } else {
        lobster_dispatch(spec, even)
    };
    Classification {
        family,
        j,
        k,
        l,
        q,
        dispatch,
    }
}

fn params(spec: &TreeSpec, r: usize, s: usize, t: usize) -> Params {
    Params {
        r,
        s,
        t,
        halves: (1..=spec.n()).map(|i| spec.half(i)).collect(),
    }
}

fn constructive(spec: &TreeSpec, lemma: Lemma, case: Option<u8>, r: usize, s: usize, t: usize) -> Dispatch {
    Dispatch::Constructive {
        lemma,
        case,
        params: params(spec, r, s, t),
    }
}

fn caterpillar_dispatch(spec: &TreeSpec, even: bool) -> Dispatch {
    let j = spec.j();
    let (a1, a2) = (spec.a(j + 1), spec.a(j + 2));
    let j_even = j.is_multiple_of(2);
    if even {
        return if j_even {
            if a1 % 2 == 0 {
                constructive(spec, Lemma::ESameParity, Some(1), j / 2, a1 / 2, a2 / 2)
            } else {
                constructive(spec, Lemma::ESameParity, Some(2), j / 2, a1.div_ceil(2), a2.div_ceil(2))
            }
        } else {
            constructive(spec, Lemma::OOppParity, None, j.div_ceil(2), a1 / 2, a2.div_ceil(2))
        };
    }
    if j_even {
        return constructive(spec, Lemma::EOppParity, None, j / 2, a1 / 2, a2.div_ceil(2));
    }
    if a1 % 2 == 0 {
        return constructive(spec, Lemma::OEE, None, j.div_ceil(2), a1 / 2, a2 / 2);
    }
    if a1 == 1 {
        if j == 1 || a2 == 1 {
            Dispatch::NotSeg(Lemma::NonSegCaterpillars)
        } else {
            constructive(spec, Lemma::LeadingOne, None, (j - 1) / 2, 0, (a2 - 1) / 2)
        }
    } else {
        constructive(spec, Lemma::OOO, None, (j - 1) / 2, (a1 - 1) / 2, (a2 - 1) / 2)
    }
}

fn lobster_dispatch(spec: &TreeSpec, even: bool) -> Dispatch {
    let (j, k, l) = (spec.j(), spec.k(), spec.l());
    let odd = |x: usize| x % 2 == 1;
    if even {
        return match (odd(j), odd(k), odd(l)) {
            (true, true, true) => constructive(spec, Lemma::JklOdd, None, j.div_ceil(2), (k - 1) / 2, (l - 1) / 2),
            (false, false, true) => constructive(spec, Lemma::JkEvenLOdd, None, j / 2, k / 2, (l - 1) / 2),
            (false, false, false) => constructive(spec, Lemma::JklEven, None, j / 2, k / 2, l / 2),
            (true, true, false) => constructive(spec, Lemma::JkOddLEven, None, j.div_ceil(2), (k - 1) / 2, l / 2),
            _ => unreachable!("even size forces j and k to share parity"),
        };
    }
    if !odd(j) {
        // k odd
        if odd(l) {
            let case = if l == 1 { 1 } else { 2 };
            constructive(spec, Lemma::JEvenKlOdd, Some(case), j / 2, k.div_ceil(2), (l - 1) / 2)
        } else if k >= 3 {
            let case = if l == 0 { 1 } else { 2 };
            constructive(spec, Lemma::JlEvenKOdd, Some(case), j / 2, (k - 1) / 2, l / 2)
        } else {
            Dispatch::Conjectured(Conjecture::One)
        }
    } else {
        // k even
        let some_big_odd = spec.counts().iter().any(|&a| a % 2 == 1 && a >= 3);
        if k == 0 && !some_big_odd {
            Dispatch::NotSeg(Lemma::BadLobsters)
        } else if l == 1 || l == 2 {
            let case = l as u8;
            constructive(spec, Lemma::JOddKlEven, Some(case), (j - 1) / 2, k / 2, 0)
        } else if l == 0 {
            Dispatch::Uncovered
        } else if odd(l) {
            Dispatch::Conjectured(Conjecture::Three)
        } else {
            Dispatch::Conjectured(Conjecture::Two)
        }
    }
}
