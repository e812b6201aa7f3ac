#pragma once

#include <unordered_map>

#include "xra/document.hpp"
#include "xra/expr.hpp"
#include "xra/relation.hpp"

namespace xra {

Relation eval(const Expr& e, const Document& doc);
NodeSet eval_from(const Expr& e, const Document& doc, NodeId v);

// Evaluator that keeps its memo across calls; useful when many expressions
// share subterms (synthesized witnesses, rewrites).
class Evaluator {
 public:
  explicit Evaluator(const Document& doc);

  const Relation& operator()(const Expr& e);

  // Building blocks shared with the oracle.
  const Relation& down() const { return down_; }
  const Relation& up() const { return up_; }
  const Relation& eps() const { return eps_; }
  Relation label(const Label& l) const;
  Relation count(int k, const Relation& body) const;
  static Relation proj1(const Relation& r);
  static Relation proj2(const Relation& r);

 private:
  const Document& doc_;
  Relation down_, up_, eps_;
  std::unordered_map<const ExprNode*, Relation> memo_;
  std::vector<Expr> pinned_;  // keeps memo keys alive
};

}  // namespace xra
