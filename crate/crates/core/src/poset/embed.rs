use super::Poset;

/// Find an induced copy of `small` inside `big`. Returns the image of each
/// element of `small`.
pub fn contains_induced(big: &Poset, small: &Poset) -> Option<Vec<usize>> {
    let (n, m) = (big.len(), small.len());
    if m > n {
        return None;
    }
    if m == 0 {
        return Some(Vec::new());
    }
    if small.relations().len() > big.relations().len() || small.width() > big.width() {
        return None;
    }
    let order = search_order(small);
    let big_below: Vec<usize> = (0..n).map(|v| big.below_count(v)).collect();
    let big_above: Vec<usize> = (0..n).map(|v| big.above_count(v)).collect();
    let small_below: Vec<usize> = (0..m).map(|v| small.below_count(v)).collect();
    let small_above: Vec<usize> = (0..m).map(|v| small.above_count(v)).collect();

    let mut image = vec![usize::MAX; m];
    let mut used = vec![false; n];
    let ctx = Ctx {
        big,
        small,
        order: &order,
        big_below: &big_below,
        big_above: &big_above,
        small_below: &small_below,
        small_above: &small_above,
    };
    ctx.extend(0, &mut image, &mut used).then_some(image)
}

struct Ctx<'a> {
    big: &'a Poset,
    small: &'a Poset,
    order: &'a [usize],
    big_below: &'a [usize],
    big_above: &'a [usize],
    small_below: &'a [usize],
    small_above: &'a [usize],
}

impl Ctx<'_> {
    fn extend(&self, depth: usize, image: &mut [usize], used: &mut [bool]) -> bool {
        let Some(&q) = self.order.get(depth) else {
            return true;
        };
        for p in 0..self.big.len() {
            if used[p] || self.big_below[p] < self.small_below[q] || self.big_above[p] < self.small_above[q] {
                continue;
            }
            let consistent = self.order[..depth].iter().all(|&r| {
                let s = image[r];
                self.big.lt(p, s) == self.small.lt(q, r) && self.big.lt(s, p) == self.small.lt(r, q)
            });
            if !consistent {
                continue;
            }
            image[q] = p;
            used[p] = true;
            if self.extend(depth + 1, image, used) {
                return true;
            }
            used[p] = false;
        }
        image[q] = usize::MAX;
        false
    }
}

/// Visit elements so that each one after the first is comparable to an
/// earlier one where possible, starting from the most constrained.
fn search_order(p: &Poset) -> Vec<usize> {
    let n = p.len();
    let score = |v: usize| p.below_count(v) + p.above_count(v);
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let links = order.iter().filter(|&&u| p.comparable(u, v)).count();
                (links, score(v), std::cmp::Reverse(v))
            })
            .expect("unplaced element remains");
        placed[next] = true;
        order.push(next);
    }
    order
}

pub fn is_isomorphic(a: &Poset, b: &Poset) -> bool {
    a.len() == b.len() && a.relations().len() == b.relations().len() && contains_induced(a, b).is_some()
}
