//! Combinatorial type of a plane curve diagram.
//!
//! The diagram is encoded as a combinatorial map on the arrangement's
//! half-edges ("darts") with three successor permutations: the twin, the
//! next dart along the curve, and the next dart around the face. Two
//! diagrams are isomorphic as oriented plane diagrams exactly when a
//! bijection of darts commutes with all three, keeps the curve direction and
//! sends the outer face to the outer face. Canonical codes minimise a
//! breadth-first serialisation over all starting darts, which makes every
//! isomorphism (and every automorphism) explicit.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::arrangement::Arrangement;
use crate::perm::Perm;

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn as_char(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    First,
    Second,
}

/// One passage of a loop through a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Occurrence {
    /// 1-based crossing label in order of first visit.
    pub crossing: usize,
    /// `+` when the second branch crosses the first from right to left.
    pub sign: Sign,
    pub slot: Slot,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Dart {
    forward: bool,
    twin: usize,
    curve_next: usize,
    face_next: usize,
    /// Bounded face label (0-based), `NONE` for the outer face.
    face: usize,
    /// Arrangement vertex, `NONE` for crossing-free loops.
    origin: usize,
}

/// Signed Gauss code of a diagram together with the combinatorial map it
/// was read from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussCode {
    loops: Vec<Vec<Occurrence>>,
    /// Arrangement vertex of each crossing label (label `k` at index `k-1`).
    crossing_vertex: Vec<usize>,
    faces: usize,
    darts: Vec<Dart>,
}

impl GaussCode {
    pub fn loops(&self) -> &[Vec<Occurrence>] {
        &self.loops
    }

    pub fn crossing_count(&self) -> usize {
        self.crossing_vertex.len()
    }

    /// Arrangement vertex index carrying crossing label `label` (1-based).
    pub fn crossing_vertex(&self, label: usize) -> usize {
        self.crossing_vertex[label - 1]
    }

    pub fn bounded_face_count(&self) -> usize {
        self.faces
    }

    /// Number of half-edges on the boundary of the unbounded face.
    pub fn outer_face_darts(&self) -> usize {
        self.darts.iter().filter(|d| d.face == NONE).count()
    }

    /// Pairs of crossings `(a, b)`, `a < b`, whose occurrences alternate
    /// along a single loop (`a..b..a..b`).
    pub fn interlaced_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for word in &self.loops {
            let pos = |c: usize| -> Vec<usize> {
                word.iter()
                    .enumerate()
                    .filter(|(_, o)| o.crossing == c)
                    .map(|(i, _)| i)
                    .collect()
            };
            let labels: BTreeSet<usize> = word.iter().map(|o| o.crossing).collect();
            let labels: Vec<usize> = labels.into_iter().collect();
            for (k, &a) in labels.iter().enumerate() {
                let pa = pos(a);
                if pa.len() != 2 {
                    continue;
                }
                for &b in &labels[k + 1..] {
                    let pb = pos(b);
                    if pb.len() != 2 {
                        continue;
                    }
                    let inside = pb.iter().filter(|&&p| p > pa[0] && p < pa[1]).count();
                    if inside == 1 {
                        out.push((a, b));
                    }
                }
            }
        }
        out
    }

    /// Words like `1+ 2+ 3+ 1+ 2+ 3+`, loops separated by ` | `.
    pub fn to_word_string(&self) -> String {
        let mut s = String::new();
        for (k, w) in self.loops.iter().enumerate() {
            if k > 0 {
                s.push_str(" | ");
            }
            if w.is_empty() {
                s.push_str("()");
            }
            for (i, o) in w.iter().enumerate() {
                if i > 0 {
                    s.push(' ');
                }
                let _ = write!(s, "{}{}", o.crossing, o.sign.as_char());
            }
        }
        s
    }
}

/// Reads the signed Gauss code of every loop in parameter order, starting at
/// the first crossing after parameter 0.
pub fn gauss_code(arr: &Arrangement) -> GaussCode {
    let hes = arr.half_edges();
    let darts: Vec<Dart> = hes
        .iter()
        .map(|h| Dart {
            forward: h.forward,
            twin: h.twin,
            curve_next: h.curve_next,
            face_next: h.next,
            face: if h.face == arr.outer_face() {
                NONE
            } else {
                h.face
            },
            origin: h.origin.unwrap_or(NONE),
        })
        .collect();

    // Forward darts of each loop in parameter order.
    let mut per_loop: Vec<Vec<usize>> = vec![Vec::new(); arr.loops().len()];
    for (i, h) in hes.iter().enumerate() {
        if h.forward {
            per_loop[h.loop_index].push(i);
        }
    }
    for l in per_loop.iter_mut() {
        l.sort_by(|&a, &b| hes[a].params.0.total_cmp(&hes[b].params.0));
    }

    let v = arr.vertex_count();
    let mut label = vec![0usize; v];
    let mut visits = vec![0u8; v];
    let mut crossing_vertex = Vec::new();
    let mut first_dart = vec![NONE; v];
    let mut second_dart = vec![NONE; v];
    let mut raw: Vec<Vec<(usize, Slot)>> = Vec::new();
    for l in &per_loop {
        let mut word = Vec::new();
        for &d in l {
            let Some(o) = hes[d].origin else { continue };
            let slot = if visits[o] == 0 {
                crossing_vertex.push(o);
                label[o] = crossing_vertex.len();
                first_dart[o] = d;
                Slot::First
            } else {
                second_dart[o] = d;
                Slot::Second
            };
            visits[o] += 1;
            word.push((o, slot));
        }
        raw.push(word);
    }
    let sign: Vec<Sign> = (0..v)
        .map(|o| {
            if first_dart[o] == NONE || second_dart[o] == NONE {
                return Sign::Positive;
            }
            // Counterclockwise successor of the first forward dart.
            let ccw = ccw_successor(&darts, first_dart[o]);
            if ccw == second_dart[o] {
                Sign::Positive
            } else {
                Sign::Negative
            }
        })
        .collect();
    let loops = raw
        .into_iter()
        .map(|w| {
            w.into_iter()
                .map(|(o, slot)| Occurrence {
                    crossing: label[o],
                    sign: sign[o],
                    slot,
                })
                .collect()
        })
        .collect();
    GaussCode {
        loops,
        crossing_vertex,
        faces: arr.bounded_face_count(),
        darts,
    }
}

/// `face_next(twin(d))` is the clockwise neighbour of `d` at its origin;
/// the counterclockwise neighbour is the inverse.
fn ccw_successor(darts: &[Dart], d: usize) -> usize {
    let mut e = d;
    loop {
        let cw = darts[darts[e].twin].face_next;
        if cw == d {
            return e;
        }
        e = cw;
    }
}

/// A dart labelling: `order[k]` is the dart labelled `k`.
#[derive(Debug, Clone)]
struct Labelling {
    order: Vec<usize>,
    key: Vec<u64>,
}

fn components(darts: &[Dart]) -> Vec<Vec<usize>> {
    let n = darts.len();
    let mut comp = vec![NONE; n];
    let mut out = Vec::new();
    for s in 0..n {
        if comp[s] != NONE {
            continue;
        }
        let c = out.len();
        let mut members = vec![s];
        comp[s] = c;
        let mut k = 0;
        while k < members.len() {
            let d = members[k];
            for nb in [darts[d].twin, darts[d].curve_next, darts[d].face_next] {
                if comp[nb] == NONE {
                    comp[nb] = c;
                    members.push(nb);
                }
            }
            k += 1;
        }
        out.push(members);
    }
    out
}

fn label_from(darts: &[Dart], starts: &[usize]) -> Labelling {
    let n = darts.len();
    let mut index = vec![NONE; n];
    let mut order = Vec::with_capacity(n);
    let mut sizes = Vec::with_capacity(starts.len());
    for &s in starts {
        let begin = order.len();
        index[s] = order.len();
        order.push(s);
        let mut k = begin;
        while k < order.len() {
            let d = order[k];
            for nb in [darts[d].curve_next, darts[d].twin, darts[d].face_next] {
                if index[nb] == NONE {
                    index[nb] = order.len();
                    order.push(nb);
                }
            }
            k += 1;
        }
        sizes.push((order.len() - begin) as u64);
    }
    let mut face_label = vec![NONE; n];
    let mut next_face = 1u64;
    let mut key = Vec::with_capacity(1 + sizes.len() + 5 * n);
    key.push(sizes.len() as u64);
    key.extend_from_slice(&sizes);
    for &d in &order {
        let dart = &darts[d];
        let f = if dart.face == NONE {
            0
        } else {
            if face_label[dart.face] == NONE {
                face_label[dart.face] = next_face as usize;
                next_face += 1;
            }
            face_label[dart.face] as u64
        };
        key.push(dart.forward as u64);
        key.push(index[dart.twin] as u64);
        key.push(index[dart.curve_next] as u64);
        key.push(index[dart.face_next] as u64);
        key.push(f);
    }
    Labelling { order, key }
}

const BRUTE_FORCE_LIMIT: usize = 200_000;

/// Every labelling attaining the minimal key.
fn minimal_labellings(gc: &GaussCode) -> Vec<Labelling> {
    let darts = &gc.darts;
    if darts.is_empty() {
        return vec![Labelling {
            order: Vec::new(),
            key: vec![0],
        }];
    }
    let comps = components(darts);
    let starts: Vec<Vec<usize>> = comps
        .iter()
        .map(|c| {
            let mut s: Vec<usize> = c.iter().copied().filter(|&d| darts[d].forward).collect();
            s.sort_unstable();
            s
        })
        .collect();

    let perms = if comps.len() <= 6 {
        crate::perm::all_perms(comps.len())
    } else {
        Vec::new()
    };
    let product: usize = starts
        .iter()
        .map(Vec::len)
        .product::<usize>()
        .saturating_mul(perms.len());
    let orders: Vec<Vec<usize>> = if !perms.is_empty() && product <= BRUTE_FORCE_LIMIT {
        perms.iter().map(|p| p.images().to_vec()).collect()
    } else {
        // Components ordered by their individual minimal keys.
        let mut keyed: Vec<(Vec<u64>, usize)> = (0..comps.len())
            .map(|c| {
                let k = starts[c]
                    .iter()
                    .map(|&s| label_from(darts, &[s]).key)
                    .min()
                    .expect("forward dart");
                (k, c)
            })
            .collect();
        keyed.sort();
        vec![keyed.into_iter().map(|(_, c)| c).collect()]
    };

    let mut best: Vec<Labelling> = Vec::new();
    let mut choice = vec![0usize; comps.len()];
    for ord in &orders {
        choice.iter_mut().for_each(|c| *c = 0);
        loop {
            let s: Vec<usize> = ord.iter().map(|&c| starts[c][choice[c]]).collect();
            let lab = label_from(darts, &s);
            match best.first().map(|b| lab.key.cmp(&b.key)) {
                None | Some(core::cmp::Ordering::Less) => best = vec![lab],
                Some(core::cmp::Ordering::Equal) => best.push(lab),
                Some(core::cmp::Ordering::Greater) => {}
            }
            // Odometer over start choices.
            let mut k = 0;
            while k < choice.len() {
                choice[k] += 1;
                if choice[k] < starts[k].len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
            if k == choice.len() {
                break;
            }
        }
    }
    best
}

fn render_key(lab: &Labelling, gc: &GaussCode) -> String {
    let darts = &gc.darts;
    let key = &lab.key;
    let comps = key[0] as usize;
    let sizes = &key[1..1 + comps];
    let body = &key[1 + comps..];
    let mut s = String::new();
    let _ = write!(s, "D{}F{}:", darts.len() / 2, gc.faces);
    let mut k = 0;
    for (c, &size) in sizes.iter().enumerate() {
        if c > 0 {
            s.push('|');
        }
        for i in 0..size as usize {
            let t = &body[5 * (k + i)..5 * (k + i) + 5];
            if i > 0 {
                s.push(' ');
            }
            let f = if t[4] == 0 {
                String::from("O")
            } else {
                format!("{}", t[4])
            };
            let _ = write!(
                s,
                "{}{},{},{},{}",
                if t[0] == 1 { 'F' } else { 'B' },
                t[1],
                t[2],
                t[3],
                f
            );
        }
        k += size as usize;
    }
    s
}

/// Canonical ASCII string of the oriented plane diagram: equal strings
/// exactly for isomorphic diagrams (orientation and outer face preserved).
pub fn canonical_code(gc: &GaussCode) -> String {
    let labs = minimal_labellings(gc);
    render_key(&labs[0], gc)
}

/// Bijection of face labels and crossing vertices between two isomorphic
/// diagrams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceCorrespondence {
    /// `faces.apply(i)` is the face of the second diagram matched to
    /// bounded face `i` of the first.
    pub faces: Perm,
    pub vertices: Perm,
}

fn induced(
    gc_a: &GaussCode,
    la: &Labelling,
    gc_b: &GaussCode,
    lb: &Labelling,
) -> FaceCorrespondence {
    let r = gc_a.faces;
    let v = gc_a.crossing_count();
    let mut faces = vec![NONE; r];
    let mut vertices = vec![NONE; v];
    for (&da, &db) in la.order.iter().zip(&lb.order) {
        let (a, b) = (&gc_a.darts[da], &gc_b.darts[db]);
        if a.face != NONE {
            faces[a.face] = b.face;
        }
        if a.origin != NONE {
            vertices[a.origin] = b.origin;
        }
    }
    FaceCorrespondence {
        faces: Perm::new(faces).expect("isomorphism induces a face bijection"),
        vertices: Perm::new(vertices).expect("isomorphism induces a vertex bijection"),
    }
}

/// First forward dart of loop 0 in parameter order.
fn start_dart(arr: &Arrangement) -> Option<usize> {
    arr.half_edges()
        .iter()
        .enumerate()
        .filter(|(_, h)| h.forward && h.loop_index == 0)
        .min_by(|a, b| a.1.params.0.total_cmp(&b.1.params.0))
        .map(|(i, _)| i)
}

/// Face correspondence `a -> b` of one diagram isomorphism, if the two
/// diagrams have the same combinatorial type. When some isomorphism sends
/// the start of `a`'s first loop to the start of `b`'s, that one is chosen.
pub fn isotopy_match(a: &Arrangement, b: &Arrangement) -> Option<FaceCorrespondence> {
    let (ga, gb) = (gauss_code(a), gauss_code(b));
    if ga.darts.len() != gb.darts.len() || ga.faces != gb.faces {
        return None;
    }
    let la = minimal_labellings(&ga);
    let lb = minimal_labellings(&gb);
    if la[0].key != lb[0].key {
        return None;
    }
    let chosen = match (start_dart(a), start_dart(b)) {
        (Some(sa), Some(sb)) => la[0]
            .order
            .iter()
            .position(|&d| d == sa)
            .and_then(|pos| lb.iter().find(|l| l.order[pos] == sb)),
        _ => None,
    };
    Some(induced(&ga, &la[0], &gb, chosen.unwrap_or(&lb[0])))
}

/// Face permutation with its companion permutation of crossings.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymmetryElement {
    pub faces: Perm,
    pub vertices: Perm,
}

impl SymmetryElement {
    pub fn compose(&self, other: &SymmetryElement) -> SymmetryElement {
        SymmetryElement {
            faces: self.faces.compose(&other.faces),
            vertices: self.vertices.compose(&other.vertices),
        }
    }

    pub fn inverse(&self) -> SymmetryElement {
        SymmetryElement {
            faces: self.faces.inverse(),
            vertices: self.vertices.inverse(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.faces.is_identity() && self.vertices.is_identity()
    }
}

/// The group `G_f` of permutations of bounded faces (and crossings) induced
/// by orientation-preserving automorphisms of the diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryGroup {
    degree: usize,
    marked: usize,
    elements: Vec<SymmetryElement>,
    generators: Vec<SymmetryElement>,
    canonical: String,
}

impl SymmetryGroup {
    /// Number `r` of bounded faces permuted.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of marked points (crossings) permuted alongside.
    pub fn marked_points(&self) -> usize {
        self.marked
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Sorted; the identity comes first.
    pub fn elements(&self) -> &[SymmetryElement] {
        &self.elements
    }

    pub fn generators(&self) -> &[SymmetryElement] {
        &self.generators
    }

    pub fn face_perms(&self) -> impl Iterator<Item = &Perm> {
        self.elements.iter().map(|e| &e.faces)
    }

    pub fn contains_face_perm(&self, p: &Perm) -> bool {
        self.elements.iter().any(|e| &e.faces == p)
    }

    pub fn is_cyclic(&self) -> bool {
        let n = self.order();
        self.elements
            .iter()
            .any(|e| e.faces.order().max(e.vertices.order()) == n)
    }

    pub fn canonical_code(&self) -> &str {
        &self.canonical
    }

    /// Identity, closure and inverses, checked exhaustively.
    pub fn satisfies_group_axioms(&self) -> bool {
        let set: BTreeSet<&SymmetryElement> = self.elements.iter().collect();
        self.elements.iter().any(SymmetryElement::is_identity)
            && self.elements.iter().all(|a| set.contains(&a.inverse()))
            && self
                .elements
                .iter()
                .all(|a| self.elements.iter().all(|b| set.contains(&a.compose(b))))
    }
}

fn closure(gens: &[SymmetryElement], identity: &SymmetryElement) -> BTreeSet<SymmetryElement> {
    let mut set = BTreeSet::new();
    set.insert(identity.clone());
    let mut frontier = vec![identity.clone()];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = g.compose(&x);
            if set.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    set
}

/// All orientation-preserving diagram automorphisms and the face and
/// crossing permutations they induce.
pub fn symmetry_group(arr: &Arrangement) -> SymmetryGroup {
    let gc = gauss_code(arr);
    let labs = minimal_labellings(&gc);
    let base = &labs[0];
    let mut set = BTreeSet::new();
    for lab in &labs {
        set.insert(induced_element(&gc, base, lab));
    }
    let elements: Vec<SymmetryElement> = set.into_iter().collect();
    let identity = SymmetryElement {
        faces: Perm::identity(gc.faces),
        vertices: Perm::identity(gc.crossing_count()),
    };
    let mut generators: Vec<SymmetryElement> = Vec::new();
    let mut span = closure(&generators, &identity);
    for e in &elements {
        if !span.contains(e) {
            generators.push(e.clone());
            span = closure(&generators, &identity);
        }
    }
    let group = SymmetryGroup {
        degree: gc.faces,
        marked: gc.crossing_count(),
        elements,
        generators,
        canonical: render_key(base, &gc),
    };
    debug_assert!(group.satisfies_group_axioms());
    group
}

fn induced_element(gc: &GaussCode, from: &Labelling, to: &Labelling) -> SymmetryElement {
    let FaceCorrespondence { faces, vertices } = induced(gc, from, gc, to);
    SymmetryElement { faces, vertices }
}
