#include "xra/signature.hpp"

#include <algorithm>

namespace xra {

Expr Signature::expr() const {
  std::vector<Expr> steps(up, ex::up());
  steps.insert(steps.end(), down, ex::down());
  return ex::chain(steps);
}

Signature signature_of(const Document& doc, NodeId v, NodeId w) {
  std::size_t dv = doc.depth(v);
  std::size_t dw = doc.depth(w);
  NodeId a = v;
  NodeId b = w;
  std::vector<NodeId> left{v};
  std::vector<NodeId> right{w};
  while (dv > dw) {
    a = *doc.parent(a);
    left.push_back(a);
    --dv;
  }
  while (dw > dv) {
    b = *doc.parent(b);
    right.push_back(b);
    --dw;
  }
  while (a != b) {
    a = *doc.parent(a);
    b = *doc.parent(b);
    left.push_back(a);
    right.push_back(b);
  }
  Signature s;
  s.up = left.size() - 1;
  s.down = right.size() - 1;
  s.path = std::move(left);
  // right ends with the top, which left already holds.
  s.path.insert(s.path.end(), right.rbegin() + 1, right.rend());
  return s;
}

bool in_updown(const Document& doc, std::size_t m, std::size_t n, NodeId v,
               NodeId w) {
  if (doc.depth(v) < m || doc.depth(w) < n) return false;
  NodeId a = doc.ancestor_at(v, m);
  return doc.depth(w) - n == doc.depth(a) && doc.ancestor_at(w, n) == a;
}

bool subsumes(const Document& doc, NodePair p1, NodePair p2) {
  doc.depth(p2.first);
  doc.depth(p2.second);
  Signature s = signature_of(doc, p1.first, p1.second);
  return in_updown(doc, s.up, s.down, p2.first, p2.second);
}

bool congruent(const Document& doc, NodePair p1, NodePair p2) {
  doc.depth(p2.first);
  doc.depth(p2.second);
  Signature s = signature_of(doc, p1.first, p1.second);
  if (!in_updown(doc, s.up, s.down, p2.first, p2.second)) return false;
  if (s.up == 0 || s.down == 0) return true;
  return !in_updown(doc, s.up - 1, s.down - 1, p2.first, p2.second);
}

NodeId corresponding_node(const Document& doc, const Signature& s1, NodePair p2,
                          std::size_t i) {
  if (i <= s1.up) return doc.ancestor_at(p2.first, i);
  return doc.ancestor_at(p2.second, s1.up + s1.down - i);
}

std::vector<NodePair> updown_pairs(const Document& doc, std::size_t m,
                                   std::size_t n) {
  std::vector<NodePair> out;
  // Descendants at distance n, computed once per top.
  std::vector<std::vector<NodeId>> at(doc.size());
  for (NodeId w = 0; w < doc.size(); ++w) {
    if (doc.depth(w) >= n) at[doc.ancestor_at(w, n)].push_back(w);
  }
  for (NodeId v = 0; v < doc.size(); ++v) {
    if (doc.depth(v) < m) continue;
    for (NodeId w : at[doc.ancestor_at(v, m)]) out.emplace_back(v, w);
  }
  return out;
}

}  // namespace xra
