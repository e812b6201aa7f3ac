#include "xra/synth.hpp"

#include <set>

#include "xra/eval.hpp"
#include "xra/rewrite.hpp"

namespace xra {

// ---------------------------------------------------------------------------
// Builder

namespace {

bool invertible_in(const Expr& x, const Fragment& f) {
  return (!contains_op(x, Op::Down) || f.up) && (!contains_op(x, Op::Up) || f.down);
}

}  // namespace

Expr Builder::conj(const Expr& p, const Expr& q) const {
  if (p->op == Op::Eps) return q;
  if (q->op == Op::Eps) return p;
  if (p->op == Op::Empty || q->op == Op::Empty) return ex::empty();
  return ex::compose(p, q);
}

Expr Builder::conj(const std::vector<Expr>& ps) const {
  Expr out = ex::eps();
  for (auto it = ps.rbegin(); it != ps.rend(); ++it) out = conj(*it, out);
  return out;
}

Expr Builder::neg(const Expr& p) const {
  if (!f_.diff) throw SynthesisError("negation needs difference in " + f_.name);
  if (f_.core) {
    if (!f_.proj1) throw SynthesisError("core negation needs p1 in " + f_.name);
    return ex::proj1(ex::diff(ex::eps(), p));
  }
  return ex::diff(ex::eps(), p);
}

Expr Builder::proj1(const Expr& x) const {
  if (is_node_predicate(x)) return x;
  if (f_.proj1) return ex::proj1(x);
  if (x->op == Op::Compose && x->lhs->op == Op::Down && f_.count_bound >= 1) {
    return ex::count(1, x->rhs);
  }
  if (!f_.core && invertible_in(x, f_) && (f_.intersect || f_.diff)) {
    return meet(ex::compose(x, push_inverse(x)), ex::eps());
  }
  throw SynthesisError("first projection not expressible in " + f_.name);
}

Expr Builder::proj2(const Expr& x) const {
  if (is_node_predicate(x)) return x;
  if (f_.proj2) return ex::proj2(x);
  if (!invertible_in(x, f_)) {
    throw SynthesisError("second projection not expressible in " + f_.name);
  }
  if (f_.proj1) return ex::proj1(push_inverse(x));
  if (!f_.core && (f_.intersect || f_.diff)) {
    return meet(ex::compose(push_inverse(x), x), ex::eps());
  }
  throw SynthesisError("second projection not expressible in " + f_.name);
}

Expr Builder::count(int m, const Expr& p) const {
  if (m <= f_.count_bound) return ex::count(m, p);
  if (m == 1) return proj1(ex::compose(ex::down(), p));
  if (!f_.down || !f_.up || !f_.diff || m > 3) {
    throw SynthesisError("ch" + std::to_string(m) + " not expressible in " + f_.name);
  }
  const Expr sibling = ex::chain({p, ex::up(), ex::down(), p});
  if (f_.core) {
    if (m == 3) throw SynthesisError("ch3 not expressible in " + f_.name);
    return proj1(ex::chain({ex::down(), p,
                            ex::proj1(ex::diff(ex::chain({ex::up(), ex::down(), p}),
                                               ex::eps()))}));
  }
  const Expr other = minus(sibling, ex::eps());
  if (m == 2) return proj1(ex::compose(ex::down(), other));
  return proj1(ex::compose(ex::down(), minus(ex::compose(other, other), ex::eps())));
}

Expr Builder::meet(const Expr& a, const Expr& b) const {
  if (f_.core) throw SynthesisError("intersection outside a projection in " + f_.name);
  if (f_.intersect) return ex::intersect(a, b);
  if (f_.diff) return ex::diff(a, ex::diff(a, b));
  throw SynthesisError("intersection not expressible in " + f_.name);
}

Expr Builder::minus(const Expr& a, const Expr& b) const {
  if (f_.core || !f_.diff) {
    throw SynthesisError("difference not available at top level in " + f_.name);
  }
  return ex::diff(a, b);
}

Expr Builder::unite(const Expr& a, const Expr& b) const {
  if (a->op == Op::Empty) return b;
  if (b->op == Op::Empty) return a;
  return ex::unite(a, b);
}

Expr Builder::root_test() const {
  if (f_.up) return neg(proj1(ex::up()));
  if (f_.down && f_.proj2) return neg(proj2(ex::down()));
  throw SynthesisError("root test not expressible in " + f_.name);
}

// ---------------------------------------------------------------------------
// Synthesizer

namespace {

std::vector<NodeId> root_path(const Document& doc, NodeId v) {
  std::vector<NodeId> path(doc.depth(v) + 1);
  for (std::size_t i = 0; i < path.size(); ++i) {
    path[path.size() - 1 - i] = doc.ancestor_at(v, i);
  }
  return path;  // root first
}

}  // namespace

Synthesizer::Synthesizer(const Document& doc, const Fragment& f)
    : doc_(doc), b_(f), decider_(doc, f) {
  const NodeNotion& theta = decider_.profile().pair_theta;
  using K = NodeNotion::Kind;
  if (theta.kind == K::DownK || theta.kind == K::UpDownK) {
    k_ = theta.k;
    auto idx = node_relation(doc, NodeNotion::down_k(k_));
    downk_block_.resize(doc.size());
    for (NodeId v = 0; v < doc.size(); ++v) downk_block_[v] = idx.block_of(v);
  }
}

Expr Synthesizer::down_k(NodeId v) {
  const NodeId block = downk_block_[v];
  if (auto it = downk_memo_.find(block); it != downk_memo_.end()) return it->second;
  const NodeId rep = block;
  const std::size_t h = doc_.height(rep);
  std::vector<Expr> parts{ex::label(doc_.label(rep))};
  if (h > 0) parts.push_back(b_.proj1(ex::power(ex::down(), h)));
  parts.push_back(b_.neg(b_.proj1(ex::power(ex::down(), h + 1))));

  std::map<NodeId, int> counts;
  for (NodeId c : doc_.children(rep)) {
    int& n = counts[downk_block_[c]];
    n = std::min(n + 1, k_);
  }
  for (auto [c, m] : counts) {
    Expr chi = down_k(c);
    parts.push_back(b_.count(m, chi));
    if (m < k_) parts.push_back(b_.neg(b_.count(m + 1, chi)));
  }
  for (NodeId u = 0; u < doc_.size(); ++u) {
    if (downk_block_[u] != u || doc_.height(u) >= h || counts.count(u)) continue;
    parts.push_back(b_.neg(b_.count(1, down_k(u))));
  }
  Expr e = b_.conj(parts);
  downk_memo_.emplace(block, e);
  return e;
}

Expr Synthesizer::down_related(NodeId v) {
  if (auto it = dr_memo_.find(v); it != dr_memo_.end()) return it->second;
  std::vector<Expr> parts{ex::label(doc_.label(v))};
  std::set<const ExprNode*> seen;
  for (NodeId c : doc_.children(v)) {
    Expr chi = down_related(c);
    if (seen.insert(chi.get()).second) {
      parts.push_back(b_.proj1(ex::compose(ex::down(), chi)));
    }
  }
  Expr e = b_.conj(parts);
  dr_memo_.emplace(v, e);
  return e;
}

Expr Synthesizer::node_predicate(NodeId v) {
  doc_.depth(v);
  if (auto it = pred_memo_.find(v); it != pred_memo_.end()) return it->second;
  using K = NodeNotion::Kind;
  const auto path = root_path(doc_, v);
  Expr e;
  switch (decider_.profile().pair_theta.kind) {
    case K::DownK:
      e = down_k(v);
      break;
    case K::UpDownK: {
      std::vector<Expr> parts{b_.root_test()};
      for (std::size_t i = 0; i < path.size(); ++i) {
        if (i > 0) parts.push_back(ex::down());
        parts.push_back(down_k(path[i]));
      }
      e = b_.proj2(ex::chain(parts));
      break;
    }
    case K::Upward:
    case K::UpRelated: {
      std::vector<Expr> parts;
      for (std::size_t i = path.size(); i-- > 0;) {
        parts.push_back(ex::label(doc_.label(path[i])));
        if (i > 0) parts.push_back(ex::up());
      }
      if (decider_.profile().pair_theta.kind == K::Upward) {
        parts.push_back(b_.root_test());
      }
      e = b_.proj1(ex::chain(parts));
      break;
    }
    case K::DownRelated:
      e = down_related(v);
      break;
    case K::Related: {
      std::vector<Expr> parts;
      for (std::size_t i = 0; i < path.size(); ++i) {
        if (i > 0) parts.push_back(ex::down());
        parts.push_back(down_related(path[i]));
      }
      e = b_.proj2(ex::chain(parts));
      break;
    }
    default:
      throw SynthesisError("no predicate construction for " +
                           decider_.profile().pair_theta.name());
  }
  pred_memo_.emplace(v, e);
  return e;
}

Expr Synthesizer::distinguisher(NodeId v1, NodeId v2) {
  if (decider_.nodes_equiv(v1, v2)) {
    throw SynthesisError("nodes " + std::to_string(v1) + " and " +
                         std::to_string(v2) + " are equivalent");
  }
  if (!decider_.pair_index().holds(v1, v2)) return node_predicate(v1);
  return node_predicate(v2);
}

Expr Synthesizer::separation(NodePair p) {
  const auto& prof = decider_.profile();
  if (!shape_ok(doc_, prof.shape, p)) {
    throw SynthesisError("pair " + format_pair(p) + " violates the shape of " +
                         prof.fragment.name);
  }
  Signature s = signature_of(doc_, p.first, p.second);
  std::vector<Expr> parts;
  for (std::size_t i = 0; i < s.path.size(); ++i) {
    if (i > 0) parts.push_back(i <= s.up ? ex::up() : ex::down());
    Expr pred = node_predicate(s.path[i]);
    if (pred->op != Op::Eps) parts.push_back(pred);
  }
  Expr e = ex::chain(parts);
  if (prof.pair_mode == PairMode::Congruent && s.up > 0 && s.down > 0) {
    std::vector<Expr> shorter(s.up - 1, ex::up());
    shorter.insert(shorter.end(), s.down - 1, ex::down());
    e = b_.minus(e, ex::chain(shorter));
  }
  return e;
}

Expr Synthesizer::witness(const Relation& r) {
  Verdict v = decider_.definable_global(r);
  if (!v.definable) {
    throw SynthesisError("relation is not definable in " +
                         decider_.profile().fragment.name + ": " + v.explain());
  }
  Evaluator ev(doc_);
  Relation covered(doc_.size());
  Expr out = ex::empty();
  for (NodePair p : r.pairs()) {
    if (covered.contains(p.first, p.second)) continue;
    Expr e = separation(p);
    covered |= ev(e);
    out = b_.unite(out, e);
  }
  return out;
}

Expr Synthesizer::local_witness(NodeId v, const NodeSet& w) {
  Verdict verdict = decider_.definable_local(v, w);
  if (!verdict.definable) {
    throw SynthesisError("node set is not definable in " +
                         decider_.profile().fragment.name + ": " + verdict.explain());
  }
  Evaluator ev(doc_);
  NodeSet covered(doc_.size());
  Expr out = ex::empty();
  for (NodeId x : w.members()) {
    if (covered.contains(x)) continue;
    Expr e = separation({v, x});
    for (NodeId y : ev(e).image(v).members()) covered.insert(y);
    out = b_.unite(out, e);
  }
  return out;
}

Expr characteristic(const Document& doc, NodeId v, NodeNotion notion) {
  Fragment f;
  if (notion.kind == NodeNotion::Kind::DownK) {
    f = fragment_by_name("sd", notion.k);
    f.core = true;
    f.name = "core-sd(" + std::to_string(notion.k) + ")";
  } else if (notion.kind == NodeNotion::Kind::UpDownK) {
    f = fragment_by_name("core-xpath", notion.k);
  } else {
    throw SynthesisError("characteristic expressions exist for down-k and k notions only");
  }
  Synthesizer s(doc, f);
  if (s.decider().profile().pair_theta == notion) return s.node_predicate(v);
  // core-xpath(1): the profile counts to 2; build the 1-bounded predicate by
  // hand from the root path.
  Builder b(f);
  Fragment sd = fragment_by_name("sd", notion.k);
  sd.core = true;
  Synthesizer down(doc, sd);
  std::vector<Expr> parts{b.root_test()};
  const auto path = root_path(doc, v);
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i > 0) parts.push_back(ex::down());
    parts.push_back(down.node_predicate(path[i]));
  }
  return b.proj2(ex::chain(parts));
}

Expr separation_pair(const Document& doc, NodePair p, const Fragment& f) {
  return Synthesizer(doc, f).separation(p);
}

Expr synthesize_witness(const Document& doc, const Relation& r, const Fragment& f) {
  return Synthesizer(doc, f).witness(r);
}

Expr synthesize_local(const Document& doc, NodeId v, const NodeSet& w,
                      const Fragment& f) {
  return Synthesizer(doc, f).local_witness(v, w);
}

}  // namespace xra
