use serde::{Deserialize, Serialize};

use super::braid::{BraidWord, KnotDiagram};
use super::KnotError;
use crate::presentation::{Presentation, Word};

pub const MERIDIAN_LABEL: &str = "muK";
pub const LONGITUDE_LABEL: &str = "lambdaK";

/// Wirtinger presentation of a knot group with its peripheral words.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotGroupData {
    pub presentation: Presentation,
    pub meridian: Word,
    pub longitude: Word,
}

impl KnotGroupData {
    pub fn rank(&self) -> usize {
        self.presentation.rank()
    }
}

/// One generator `x<a>` per arc and one relator per crossing,
/// `x_out = x_over^ε x_in x_over^-ε` for a crossing of sign `ε`.
///
/// The meridian is `x0`; the longitude is read off along the knot from the
/// start of arc 0 and corrected by a power of `x0` to exponent sum zero.
pub fn wirtinger_presentation(d: &KnotDiagram) -> KnotGroupData {
    let names: Vec<String> = (0..d.arcs()).map(|a| format!("x{a}")).collect();
    let relators: Vec<Word> = d
        .crossings()
        .iter()
        .map(|x| {
            let over = Word::generator(x.over).pow(x.sign as i64);
            let conj = over.mul(&Word::generator(x.under_in)).mul(&over.inverse());
            Word::equation(&Word::generator(x.under_out), &conj)
        })
        .collect();
    let mut presentation = Presentation::new(names, relators).expect("arc indices are in range");

    let meridian = Word::generator(0);
    let mut longitude = Word::identity();
    let mut writhe = 0i64;
    for x in d.traversal() {
        longitude = longitude.mul(&Word::generator(x.over).pow(-(x.sign as i64)));
        writhe += x.sign as i64;
    }
    let longitude = longitude.mul(&meridian.pow(writhe));

    presentation.set_label(MERIDIAN_LABEL, meridian.clone()).expect("valid word");
    presentation.set_label(LONGITUDE_LABEL, longitude.clone()).expect("valid word");
    KnotGroupData { presentation, meridian, longitude }
}

/// Braid presentation of the closure of `b`: one generator `x<j>` for the
/// arc at the top of position `j`, and `x_j = φ(x_j)` for all but the last
/// position, where `φ` is the action of `b` read from top to bottom.
///
/// Same group, meridian and longitude as the Wirtinger presentation of
/// `braid_to_diagram(b)`, with the lower arcs eliminated.
pub fn braid_presentation(b: &BraidWord) -> Result<KnotGroupData, KnotError> {
    let components = b.component_count();
    if components != 1 {
        return Err(KnotError::NotAKnot { components });
    }
    let n = b.strands();
    let mut words: Vec<Word> = (0..n).map(Word::generator).collect();
    // (left position, sign, over word) per letter
    let mut levels = Vec::with_capacity(b.len());
    for &l in b.letters() {
        let left = l.unsigned_abs() as usize - 1;
        let sign = l.signum() as i64;
        let (o, u) = if l > 0 { (left, left + 1) } else { (left + 1, left) };
        let over = words[o].pow(sign);
        levels.push((left, sign, words[o].clone()));
        words[u] = over.mul(&words[u]).mul(&over.inverse());
        words.swap(left, left + 1);
    }
    let relators: Vec<Word> =
        (0..n.saturating_sub(1)).map(|j| Word::equation(&Word::generator(j), &words[j])).collect();
    let names = (0..n).map(|j| format!("x{j}")).collect();
    let mut presentation = Presentation::new(names, relators).expect("generator indices are in range");

    let meridian = Word::generator(0);
    let mut longitude = Word::identity();
    let mut pos = 0usize;
    loop {
        for (left, sign, over) in &levels {
            let under = if pos == *left {
                pos = left + 1;
                *sign < 0
            } else if pos == left + 1 {
                pos = *left;
                *sign > 0
            } else {
                continue;
            };
            if under {
                longitude = longitude.mul(&over.pow(-sign));
            }
        }
        if pos == 0 {
            break;
        }
    }
    let longitude = longitude.mul(&meridian.pow(b.writhe()));

    presentation.set_label(MERIDIAN_LABEL, meridian.clone()).expect("valid word");
    presentation.set_label(LONGITUDE_LABEL, longitude.clone()).expect("valid word");
    Ok(KnotGroupData { presentation, meridian, longitude })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot::{braid_to_diagram, BraidWord};
    use crate::presentation::{abelianization, coset_enumerate, AbelianGroup, AbelianizationMap};

    fn group(b: &BraidWord) -> KnotGroupData {
        wirtinger_presentation(&braid_to_diagram(b).unwrap())
    }

    #[test]
    fn unknot_is_free_on_one_generator() {
        let g = wirtinger_presentation(&KnotDiagram::unknot());
        assert_eq!(g.rank(), 1);
        assert!(g.presentation.relators().is_empty());
        assert!(g.longitude.is_empty());
    }

    #[test]
    fn abelianizations_are_z() {
        for b in [BraidWord::trefoil(), BraidWord::figure_eight(), BraidWord::torus_knot(3)] {
            let g = group(&b);
            assert_eq!(abelianization(&g.presentation), AbelianGroup::free(1));
            let map = AbelianizationMap::new(&g.presentation);
            assert_eq!(map.order_of(&g.meridian), None);
            assert_eq!(g.longitude.exponent_sums(g.rank()).iter().sum::<i64>(), 0);
        }
        let g = group(&BraidWord::figure_eight());
        assert_eq!((g.rank(), g.presentation.relators().len()), (4, 4));
    }

    #[test]
    fn braid_presentation_matches_wirtinger() {
        use crate::knot::{braid_alexander, fox_jacobian, laurent_determinant, LaurentPoly};
        for b in ["B1:", "B2: 1 1 1", "B3: 1 -2 1 -2", "B2: -1 -1 -1 -1 -1", "B3: 1 1 1 2 -1 2", "B4: 1 -2 3 -2 1 2 3"] {
            let b: BraidWord = b.parse().unwrap();
            let w = group(&b);
            let g = braid_presentation(&b).unwrap();
            assert_eq!(g.rank(), b.strands());
            assert_eq!(abelianization(&g.presentation), AbelianGroup::free(1));
            assert_eq!(g.longitude.exponent_sums(g.rank()).iter().sum::<i64>(), 0);
            assert_eq!(w.longitude.exponent_sums(w.rank()).iter().sum::<i64>(), 0);
            // Fox minor of the braid presentation, same normalization as the Wirtinger one
            let jac = fox_jacobian(&g.presentation, &vec![1; g.rank()]);
            let minor: Vec<Vec<LaurentPoly>> = jac.iter().map(|r| r[1..].to_vec()).collect();
            let d = laurent_determinant(minor);
            let want = braid_alexander(&b).unwrap();
            let span = d.max_degree() + d.min_degree();
            let d = d.shift(-span / 2).scale(want.value_at_one() * d.value_at_one().signum());
            assert_eq!(d, want, "{b}");
        }
    }

    #[test]
    fn braid_longitude_is_peripheral() {
        for b in [BraidWord::trefoil(), BraidWord::figure_eight(), BraidWord::torus_knot(2)] {
            let g = braid_presentation(&b).unwrap();
            let sq: Vec<Word> = (0..g.rank()).map(|i| Word::generator(i).pow(2)).collect();
            let q = g.presentation.with_relators(sq).unwrap();
            let table = coset_enumerate(&q, &[], 10_000).unwrap();
            let table = table.table().unwrap();
            let c = Word::commutator(&g.meridian, &g.longitude);
            for coset in 0..table.index() {
                assert_eq!(table.trace(coset, &c), coset);
            }
        }
        assert!(braid_presentation(&BraidWord::new(2, vec![1, 1]).unwrap()).is_err());
    }

    #[test]
    fn trefoil_surjects_onto_s3() {
        let g = group(&BraidWord::trefoil());
        let gens: Vec<Word> = (0..g.rank()).map(|i| Word::generator(i).pow(2)).collect();
        let q = g.presentation.with_relators(gens).unwrap();
        assert_eq!(coset_enumerate(&q, &[], 1000).unwrap().index(), Some(6));
    }

    #[test]
    fn longitude_commutes_with_meridian() {
        // in the quotient by the squares of the meridians the peripheral
        // subgroup is abelian, so the commutator acts trivially on cosets
        for b in [BraidWord::trefoil(), BraidWord::figure_eight()] {
            let g = group(&b);
            let sq: Vec<Word> = (0..g.rank()).map(|i| Word::generator(i).pow(2)).collect();
            let q = g.presentation.with_relators(sq).unwrap();
            let table = coset_enumerate(&q, &[], 10_000).unwrap();
            let table = table.table().unwrap();
            let c = Word::commutator(&g.meridian, &g.longitude);
            for coset in 0..table.index() {
                assert_eq!(table.trace(coset, &c), coset);
            }
        }
    }
}
