#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "xra/document.hpp"
#include "xra/expr.hpp"
#include "xra/relation.hpp"

namespace xra {

struct OracleBudget {
  std::size_t max_size = 1;
  // Defaults to the labels occurring in the document.
  std::optional<std::vector<Label>> labels;
};

// Every fragment expression of size <= max_size, each once, in
// nondecreasing size.
std::vector<Expr> enum_exprs(const Fragment& f, const std::vector<Label>& labels,
                             std::size_t max_size);

// Minimal-size representative per distinct relation. In core fragments a
// second pool keeps boolean combinations usable only as projection bodies.
class SemanticPool {
 public:
  struct Entry {
    Expr expr;
    Relation rel;
    std::size_t size;
  };

  SemanticPool(const Document& doc, const Fragment& f, const OracleBudget& budget);
  // Stops right after accepting the first ordinary entry satisfying stop.
  SemanticPool(const Document& doc, const Fragment& f, const OracleBudget& budget,
               const std::function<bool(const Entry&)>& stop);

  // Ordinary fragment expressions in nondecreasing size.
  const std::vector<Entry>& entries() const { return ordinary_; }
  const std::vector<Entry>& projection_bodies() const { return bodies_; }

 private:
  std::vector<Entry> ordinary_;
  std::vector<Entry> bodies_;
};

// Smallest e with eval_from nonempty at exactly one of v1, v2.
std::optional<Expr> find_distinguishing(const Document& doc, const Fragment& f,
                                        NodeId v1, NodeId v2,
                                        const OracleBudget& budget);
// Smallest e with eval(e) == r.
std::optional<Expr> find_defining(const Document& doc, const Fragment& f,
                                  const Relation& r, const OracleBudget& budget);

}  // namespace xra
