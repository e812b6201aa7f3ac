#pragma once

#include <vector>

#include "xra/document.hpp"
#include "xra/expr.hpp"
#include "xra/relation.hpp"

namespace xra {

// sig(v, w) = up^m / down^n through the least common ancestor.
struct Signature {
  std::size_t up = 0;
  std::size_t down = 0;
  // v = path[0], ..., path[up] = top, ..., path[up + down] = w
  std::vector<NodeId> path;

  NodeId top() const { return path[up]; }
  Expr expr() const;
  std::string text() const { return print_expr(expr()); }
};

Signature signature_of(const Document& doc, NodeId v, NodeId w);

// (v, w) in up^m / down^n (D)
bool in_updown(const Document& doc, std::size_t m, std::size_t n, NodeId v,
               NodeId w);

bool subsumes(const Document& doc, NodePair p1, NodePair p2);
bool congruent(const Document& doc, NodePair p1, NodePair p2);

// Node of p2 that corresponds to position i of p1's signature path; p1 must
// subsume p2.
NodeId corresponding_node(const Document& doc, const Signature& s1, NodePair p2,
                          std::size_t i);

// All pairs in up^m / down^n (D), in lexicographic order.
std::vector<NodePair> updown_pairs(const Document& doc, std::size_t m,
                                   std::size_t n);

}  // namespace xra
