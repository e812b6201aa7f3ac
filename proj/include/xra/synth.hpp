#pragma once

#include <map>
#include <stdexcept>

#include "xra/decide.hpp"
#include "xra/document.hpp"
#include "xra/equiv.hpp"
#include "xra/expr.hpp"
#include "xra/relation.hpp"

namespace xra {

class SynthesisError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Emits node predicates and relations using only the operations of one
// fragment; missing operations are simulated where the fragment allows it.
class Builder {
 public:
  explicit Builder(Fragment f) : f_(std::move(f)) {}
  const Fragment& fragment() const { return f_; }

  // Node predicates compose to their intersection.
  Expr conj(const Expr& p, const Expr& q) const;
  Expr conj(const std::vector<Expr>& ps) const;
  Expr neg(const Expr& p) const;
  Expr proj1(const Expr& x) const;
  Expr proj2(const Expr& x) const;
  Expr count(int m, const Expr& p) const;
  Expr meet(const Expr& a, const Expr& b) const;
  Expr minus(const Expr& a, const Expr& b) const;
  Expr unite(const Expr& a, const Expr& b) const;
  // Holds exactly at the root.
  Expr root_test() const;

 private:
  Fragment f_;
};

// Per-document synthesis for one fragment.
class Synthesizer {
 public:
  Synthesizer(const Document& doc, const Fragment& f);

  const Decider& decider() const { return decider_; }

  // Node predicate whose domain is {u : theta(v, u)} for the fragment's pair
  // notion theta (the class of v for equivalences, the up-set for preorders).
  Expr node_predicate(NodeId v);
  // Fragment expression with eval_from nonempty at exactly one of v1, v2;
  // requires the nodes to be structurally inequivalent.
  Expr distinguisher(NodeId v1, NodeId v2);
  Expr separation(NodePair p);
  Expr witness(const Relation& r);
  Expr local_witness(NodeId v, const NodeSet& w);

 private:
  Expr down_k(NodeId v);
  Expr down_related(NodeId v);

  const Document& doc_;
  Builder b_;
  Decider decider_;
  int k_ = 1;
  std::vector<NodeId> downk_block_;
  std::map<NodeId, Expr> downk_memo_;
  std::map<NodeId, Expr> pred_memo_;
  std::map<NodeId, Expr> dr_memo_;
};

// Characteristic expression for v: DownK(k) in the core strictly downward
// language with counting up to k, UpDownK(k) in core-xpath(k).
Expr characteristic(const Document& doc, NodeId v, NodeNotion notion);

Expr separation_pair(const Document& doc, NodePair p, const Fragment& f);
Expr synthesize_witness(const Document& doc, const Relation& r, const Fragment& f);
Expr synthesize_local(const Document& doc, NodeId v, const NodeSet& w,
                      const Fragment& f);

}  // namespace xra
