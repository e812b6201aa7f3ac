#include "xra/decide.hpp"

#include <algorithm>

namespace xra {

FragmentProfile fragment_profile(const Fragment& f) {
  FragmentProfile p;
  p.fragment = f;
  const int k = std::max(f.count_bound, 1);
  const bool positive = !f.diff;
  if (f.down && f.up) {
    p.shape = PairShape::Any;
    if (positive) {
      p.node_notion = NodeNotion::weak_up_down();
      p.directional = NodeNotion::related();
      p.pair_theta = NodeNotion::related();
      p.pair_mode = PairMode::Subsumes;
    } else if (f.core) {
      // ch2 is expressible in the core language, ch3 is not.
      p.node_notion = NodeNotion::up_down_k(std::max(k, 2));
      p.pair_theta = p.node_notion;
      p.pair_mode = PairMode::Subsumes;
    } else {
      // ch1..ch3 are all expressible with down, up and difference.
      p.node_notion = NodeNotion::up_down_k(std::max(k, 3));
      p.pair_theta = p.node_notion;
      p.pair_mode = PairMode::Congruent;
    }
  } else if (f.down) {
    p.shape = PairShape::Descendant;
    p.pair_mode = PairMode::Congruent;
    if (f.proj2) {
      p.node_notion = positive ? NodeNotion::weak_up_down() : NodeNotion::up_down_k(k);
      if (positive) p.directional = NodeNotion::related();
      p.pair_theta = positive ? NodeNotion::related() : p.node_notion;
    } else {
      p.node_notion = positive ? NodeNotion::weak_down() : NodeNotion::down_k(k);
      if (positive) p.directional = NodeNotion::down_related();
      p.pair_theta = positive ? NodeNotion::down_related() : p.node_notion;
    }
  } else if (f.up) {
    p.shape = PairShape::Ancestor;
    p.pair_mode = PairMode::Congruent;
    p.node_notion = NodeNotion::upward();
    if (positive) p.directional = NodeNotion::up_related();
    p.pair_theta = positive ? NodeNotion::up_related() : NodeNotion::upward();
  } else {
    throw std::invalid_argument("fragment " + f.name + " has no navigation");
  }
  return p;
}

bool shape_ok(const Document& doc, PairShape shape, NodePair p) {
  switch (shape) {
    case PairShape::Any: return true;
    case PairShape::Descendant: return doc.is_ancestor_or_self(p.first, p.second);
    case PairShape::Ancestor: return doc.is_ancestor_or_self(p.second, p.first);
  }
  return false;
}

std::string Verdict::explain() const {
  if (definable) return {};
  if (shape_violation) return format_pair(*shape_violation) + " violates shape";
  return format_pair(counterexample->first) + " ~> " +
         format_pair(counterexample->second);
}

Decider::Decider(const Document& doc, const Fragment& f)
    : doc_(doc),
      profile_(fragment_profile(f)),
      node_index_(node_relation(doc, profile_.node_notion)),
      pair_index_(node_relation(doc, profile_.pair_theta)) {
  if (profile_.directional) {
    directional_index_ = node_relation(doc, *profile_.directional);
  }
}

bool Decider::nodes_equiv(NodeId v1, NodeId v2) const {
  doc_.depth(v1);
  doc_.depth(v2);
  return node_index_.holds(v1, v2);
}

bool Decider::nodes_geq(NodeId v1, NodeId v2) const {
  if (!directional_index_) {
    throw std::invalid_argument("directional test only exists for positive fragments");
  }
  doc_.depth(v1);
  doc_.depth(v2);
  return directional_index_->holds(v1, v2);
}

bool Decider::pair_related(NodePair p, NodePair q) const {
  return xra::pair_related(doc_, pair_index_, profile_.pair_mode, p, q);
}

std::vector<NodePair> Decider::related_pairs(NodePair p) const {
  Signature s = signature_of(doc_, p.first, p.second);
  auto key = std::make_pair(s.up, s.down);
  auto it = updown_.find(key);
  if (it == updown_.end()) {
    it = updown_.emplace(key, updown_pairs(doc_, s.up, s.down)).first;
  }
  std::vector<NodePair> out;
  for (NodePair q : it->second) {
    if (pair_related(p, q)) out.push_back(q);
  }
  return out;
}

Verdict Decider::definable_global(const Relation& r) const {
  if (r.universe() != doc_.size()) throw std::out_of_range("relation size mismatch");
  Verdict v;
  auto pairs = r.pairs();
  for (NodePair p : pairs) {
    if (!shape_ok(doc_, profile_.shape, p)) {
      v.definable = false;
      v.shape_violation = p;
      return v;
    }
  }
  for (NodePair p : pairs) {
    for (NodePair q : related_pairs(p)) {
      if (!r.contains(q.first, q.second)) {
        v.definable = false;
        v.counterexample = std::make_pair(p, q);
        return v;
      }
    }
  }
  return v;
}

Verdict Decider::definable_global_naive(const Relation& r) const {
  Verdict v;
  auto pairs = r.pairs();
  for (NodePair p : pairs) {
    if (!shape_ok(doc_, profile_.shape, p)) {
      v.definable = false;
      v.shape_violation = p;
      return v;
    }
  }
  for (NodePair p : pairs) {
    for (NodeId a = 0; a < doc_.size(); ++a) {
      for (NodeId b = 0; b < doc_.size(); ++b) {
        if (!r.contains(a, b) && pair_related(p, {a, b})) {
          v.definable = false;
          v.counterexample = std::make_pair(p, NodePair{a, b});
          return v;
        }
      }
    }
  }
  return v;
}

Verdict Decider::definable_local(NodeId v, const NodeSet& w) const {
  doc_.depth(v);
  if (w.universe() != doc_.size()) throw std::out_of_range("node set size mismatch");
  Verdict out;
  auto members = w.members();
  for (NodeId x : members) {
    if (!shape_ok(doc_, profile_.shape, {v, x})) {
      out.definable = false;
      out.shape_violation = NodePair{v, x};
      return out;
    }
  }
  for (NodeId x : members) {
    for (NodeId y = 0; y < doc_.size(); ++y) {
      if (!w.contains(y) && pair_related({v, x}, {v, y})) {
        out.definable = false;
        out.counterexample = std::make_pair(NodePair{v, x}, NodePair{v, y});
        return out;
      }
    }
  }
  return out;
}

bool nodes_equiv_structural(const Document& doc, NodeId v1, NodeId v2,
                            const Fragment& f) {
  return Decider(doc, f).nodes_equiv(v1, v2);
}

bool nodes_geq_structural(const Document& doc, NodeId v1, NodeId v2,
                          const Fragment& f) {
  return Decider(doc, f).nodes_geq(v1, v2);
}

Verdict definable_global(const Document& doc, const Relation& r, const Fragment& f) {
  return Decider(doc, f).definable_global(r);
}

Verdict definable_local(const Document& doc, NodeId v, const NodeSet& w,
                        const Fragment& f) {
  return Decider(doc, f).definable_local(v, w);
}

}  // namespace xra
