//! Structure-constant tables of the catalogue, as scalar text in `eta`.

use std::collections::BTreeMap;

/// Label of the axis `a_i`: `a0, a1, …` and `am1, am2, …` for negative `i`.
pub fn axis_label(i: i64) -> String {
    if i < 0 {
        format!("am{}", -i)
    } else {
        format!("a{i}")
    }
}

/// A product value as `label → coefficient text`; repeated labels add up.
pub type Terms = Vec<(String, String)>;

fn t(label: &str, coeff: &str) -> (String, String) {
    (label.to_string(), coeff.to_string())
}

fn negate(terms: &Terms) -> Terms {
    terms
        .iter()
        .map(|(l, c)| (l.clone(), format!("-({c})")))
        .collect()
}

/// `(left, right, [(label, coefficient text)])`.
pub type ProductRecipe = (String, String, Vec<(String, String)>);

/// Multiplication table and axis seed in textual form.
#[derive(Clone, Debug)]
pub struct Recipe {
    pub labels: Vec<String>,
    products: BTreeMap<(usize, usize), Terms>,
    pub seed_lo: i64,
    pub seed_axes: Vec<String>,
}

impl Recipe {
    fn new(labels: &[String]) -> Self {
        Recipe {
            labels: labels.to_vec(),
            products: BTreeMap::new(),
            seed_lo: 0,
            seed_axes: Vec::new(),
        }
    }

    fn index(&self, label: &str) -> usize {
        self.labels
            .iter()
            .position(|l| l == label)
            .unwrap_or_else(|| panic!("unknown label {label}"))
    }

    fn set(&mut self, left: &str, right: &str, terms: Terms) {
        let (i, j) = (self.index(left), self.index(right));
        let previous = self.products.insert((i.min(j), i.max(j)), terms);
        assert!(previous.is_none(), "product {left}*{right} given twice");
    }

    fn seed(mut self, lo: i64, axes: &[&str]) -> Self {
        self.seed_lo = lo;
        self.seed_axes = axes.iter().map(|s| s.to_string()).collect();
        self
    }

    /// Products as `(left, right, label → coefficient text)`, with repeated
    /// labels merged into one sum.
    pub fn products(&self) -> Vec<ProductRecipe> {
        self.products
            .iter()
            .map(|(&(i, j), terms)| {
                let mut merged: BTreeMap<usize, Vec<&str>> = BTreeMap::new();
                for (label, coeff) in terms {
                    merged.entry(self.index(label)).or_default().push(coeff);
                }
                let value = merged
                    .into_iter()
                    .map(|(k, cs)| {
                        let text = if cs.len() == 1 {
                            cs[0].to_string()
                        } else {
                            cs.iter()
                                .map(|c| format!("({c})"))
                                .collect::<Vec<_>>()
                                .join(" + ")
                        };
                        (self.labels[k].clone(), text)
                    })
                    .collect();
                (self.labels[i].clone(), self.labels[j].clone(), value)
            })
            .collect()
    }

    /// Drop a basis element: its products and every term mentioning it.
    fn without(&self, label: &str) -> Self {
        let labels: Vec<String> = self
            .labels
            .iter()
            .filter(|l| *l != label)
            .cloned()
            .collect();
        let mut out = Recipe::new(&labels);
        for (&(i, j), terms) in &self.products {
            if self.labels[i] == label || self.labels[j] == label {
                continue;
            }
            let kept = terms.iter().filter(|(l, _)| l != label).cloned().collect();
            out.set(&self.labels[i], &self.labels[j], kept);
        }
        out.seed_lo = self.seed_lo;
        out.seed_axes = self.seed_axes.clone();
        out
    }
}

fn labels(extra: &[&str], lo: i64, hi: i64) -> Vec<String> {
    extra
        .iter()
        .map(|s| s.to_string())
        .chain((lo..=hi).map(axis_label))
        .collect()
}

/// `x · p1 = c x` for every basis element `x`, including `p1`.
fn p1_eigen(r: &mut Recipe, coeff: &str) {
    for l in r.labels.clone() {
        r.set(&l, "p1", vec![t(&l, coeff)]);
    }
}

fn squares(r: &mut Recipe, lo: i64, hi: i64) {
    for i in lo..=hi {
        let a = axis_label(i);
        r.set(&a, &a, vec![t(&a, "1")]);
    }
}

/// `a_i a_j = c·p1 + η(a_i + a_j)`.
fn pair_with_p1(r: &mut Recipe, i: i64, j: i64, p1_coeff: &str) {
    let (a, b) = (axis_label(i), axis_label(j));
    r.set(&a, &b, vec![t("p1", p1_coeff), t(&a, "eta"), t(&b, "eta")]);
}

pub fn three_ev() -> Recipe {
    let mut r = Recipe::new(&labels(&["p1"], -1, 1));
    p1_eigen(&mut r, "-eta*(3*eta+1)/4");
    squares(&mut r, -1, 1);
    pair_with_p1(&mut r, -1, 0, "1");
    pair_with_p1(&mut r, 0, 1, "1");
    pair_with_p1(&mut r, -1, 1, "2*eta-1");
    r.seed(-1, &["am1", "a0", "a1", "-am1 + 2*eta*(a0 + a1)"])
}

pub fn three_ev_x() -> Recipe {
    three_ev()
        .without("p1")
        .seed(-1, &["am1", "a0", "a1", "am1"])
}

pub fn four_ev() -> Recipe {
    let mut r = Recipe::new(&labels(&["p1"], -1, 2));
    p1_eigen(&mut r, "-eta*(3*eta+1)/4");
    squares(&mut r, -1, 2);
    for (i, j) in [(-1, 0), (0, 1), (1, 2)] {
        pair_with_p1(&mut r, i, j, "1");
    }
    for (i, j) in [(-1, 1), (0, 2)] {
        pair_with_p1(&mut r, i, j, "2*eta/(eta+1)");
    }
    pair_with_p1(&mut r, -1, 2, "(5*eta^2-1)/(eta+1)^2");
    r.seed(
        -2,
        &[
            "-a2 + 2*eta/(eta+1)*(am1 + a0 + a1)",
            "am1",
            "a0",
            "a1",
            "a2",
        ],
    )
}

pub fn four_ev_x() -> Recipe {
    four_ev()
        .without("p1")
        .seed(-2, &["-(am1 + a0 + a1 + a2)", "am1", "a0", "a1", "a2"])
}

pub fn five_three() -> Recipe {
    let mut r = Recipe::new(&labels(&[], -2, 2));
    squares(&mut r, -2, 2);
    for i in -2..=2 {
        for j in i + 1..=2 {
            let mut terms: Terms = (-2..=2).map(|k| t(&axis_label(k), "-eta/4")).collect();
            terms.push(t(&axis_label(i), "eta"));
            terms.push(t(&axis_label(j), "eta"));
            r.set(&axis_label(i), &axis_label(j), terms);
        }
    }
    r.seed(-2, &["am2", "am1", "a0", "a1", "a2", "am2"])
}

/// Representative of `i` mod 6 in `-2..=3`.
fn mod6(i: i64) -> i64 {
    (i + 2).rem_euclid(6) - 2
}

pub fn six_three() -> Recipe {
    let mut r = Recipe::new(
        &labels(&[], -2, 3)
            .into_iter()
            .chain(["p1".to_string()])
            .collect::<Vec<_>>(),
    );
    p1_eigen(&mut r, "-eta^2/2");
    squares(&mut r, -2, 3);
    for i in -2..=3 {
        let a = axis_label(i);
        let next = axis_label(mod6(i + 1));
        r.set(&a, &next, vec![t("p1", "1"), t(&a, "eta"), t(&next, "eta")]);
        let two = axis_label(mod6(i + 2));
        let back = axis_label(mod6(i - 2));
        r.set(
            &a,
            &two,
            vec![t(&a, "eta/2"), t(&two, "eta/2"), t(&back, "-eta/2")],
        );
    }
    for i in -2..=0 {
        r.set(&axis_label(i), &axis_label(i + 3), Vec::new());
    }
    r.seed(-3, &["a3", "am2", "am1", "a0", "a1", "a2", "a3", "am2"])
}

fn seven_p3(residue: i64) -> Terms {
    let base = vec![
        t("a3", "-2/3"),
        t("am3", "-2/3"),
        t("a2", "1/3"),
        t("am2", "1/3"),
        t("a1", "-1/3"),
        t("am1", "-1/3"),
        t("a0", "-1/3"),
    ];
    let extra = match residue {
        0 => vec![],
        1 => vec![t("a3", "5/3"), t("am2", "-5/3")],
        2 => vec![t("am3", "5/3"), t("a2", "-5/3")],
        _ => unreachable!(),
    };
    base.into_iter().chain(extra).collect()
}

/// Seven-dimensional table with `η = 4/3`.  With `literal_p30` the vector
/// `p_{3,0}` omits the `a_0` term, which does not give an axial algebra.
pub fn seven_with(literal_p30: bool) -> Recipe {
    let mut r = Recipe::new(&labels(&["p1"], -3, 3));
    let p3 = |residue: i64| {
        let mut v = seven_p3(residue);
        if literal_p30 {
            v.retain(|(l, _)| l != "a0");
        }
        v
    };
    p1_eigen(&mut r, "-5/3");
    squares(&mut r, -3, 3);
    for i in -3..=3 {
        for j in i + 1..=3 {
            let (a, b) = (axis_label(i), axis_label(j));
            let eta_part = vec![t(&a, "4/3"), t(&b, "4/3")];
            let terms: Terms = match (i, j) {
                (-2, 3) => {
                    let mut v = vec![t("p1", "1"), t(&b, "4/3"), t(&a, "-1/3")];
                    v.extend(negate(&p3(1)));
                    v
                }
                (-3, 2) => {
                    let mut v = vec![t("p1", "1"), t(&a, "4/3"), t(&b, "-1/3")];
                    v.extend(negate(&p3(2)));
                    v
                }
                (-3, 3) => eta_part.into_iter().chain(p3(0)).collect(),
                _ if j - i == 3 => eta_part.into_iter().chain(p3(i.rem_euclid(3))).collect(),
                _ => std::iter::once(t("p1", "1")).chain(eta_part).collect(),
            };
            r.set(&a, &b, terms);
        }
    }
    r.seed(
        -3,
        &[
            "am3",
            "am2",
            "am1",
            "a0",
            "a1",
            "a2",
            "a3",
            "am3 - a3 + am2 - a2 + am1",
        ],
    )
}

pub fn seven() -> Recipe {
    seven_with(false)
}

pub fn seven_x() -> Recipe {
    seven().without("p1")
}

/// Index mod 4 in `-1..=2`.
fn mod4(i: i64) -> i64 {
    (i + 1).rem_euclid(4) - 1
}

pub fn bar_four_two() -> Recipe {
    let mut r = Recipe::new(&labels(&["p1", "p20", "p21"], -1, 2));
    p1_eigen(&mut r, "-3");
    squares(&mut r, -1, 2);
    for i in -1..=2 {
        let a = axis_label(i);
        for (j, p) in [(0, "p20"), (1, "p21")] {
            let terms = if (i - j).rem_euclid(2) == 0 {
                vec![t(&a, "-3")]
            } else {
                vec![
                    t("p1", "-3"),
                    t(&axis_label(mod4(i - 1)), "-3"),
                    t(&axis_label(mod4(i + 1)), "-3"),
                    t(&a, "-6"),
                ]
            };
            r.set(&a, p, terms);
        }
    }
    r.set(
        "p20",
        "p21",
        ["p1", "a0", "a1", "am1", "a2"]
            .iter()
            .map(|l| t(l, "9"))
            .collect(),
    );
    r.set("p20", "p20", vec![t("p20", "-3")]);
    r.set("p21", "p21", vec![t("p21", "-3")]);
    for (i, j) in [(-1, 0), (0, 1), (1, 2), (-1, 2)] {
        pair_with_p1(&mut r, i, j, "1");
    }
    r.set(
        "a0",
        "a2",
        vec![t("p20", "1"), t("a0", "eta"), t("a2", "eta")],
    );
    r.set(
        "am1",
        "a1",
        vec![t("p21", "1"), t("am1", "eta"), t("a1", "eta")],
    );
    r.seed(-2, &["a2", "am1", "a0", "a1", "a2", "am1"])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(r: &Recipe) {
        let n = r.labels.len();
        assert_eq!(
            r.products().len(),
            n * (n + 1) / 2,
            "incomplete table for {:?}",
            r.labels
        );
    }

    #[test]
    fn tables_are_complete() {
        for r in [
            three_ev(),
            three_ev_x(),
            four_ev(),
            four_ev_x(),
            five_three(),
            six_three(),
            seven(),
            seven_x(),
        ] {
            complete(&r);
        }
        complete(&bar_four_two());
    }

    #[test]
    fn mod_helpers() {
        assert_eq!(mod6(4), -2);
        assert_eq!(mod6(-3), 3);
        assert_eq!(mod4(3), -1);
        assert_eq!(mod4(-2), 2);
    }
}
