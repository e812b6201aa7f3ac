#include "xra/oracle.hpp"

#include <functional>
#include <unordered_set>

#include "xra/eval.hpp"

namespace xra {

namespace {

struct Shape {
  Op op;
  int k = 0;
  const Label* label = nullptr;
};

// Drives enumeration by size. make builds an item from a shape and operand
// items; accept files it under ordinary (true) or projection-body (false)
// and returns false to stop the whole enumeration.
template <typename Item, typename Make, typename Accept>
void enumerate(const Fragment& f, const std::vector<Label>& labels,
               std::size_t max_size, Make make, Accept accept) {
  std::vector<std::vector<Item>> ordinary(max_size + 1);
  std::vector<std::vector<Item>> bodies(max_size + 1);
  auto put = [&](Item item, bool is_ordinary, std::size_t s) {
    return accept(std::move(item), is_ordinary, s, ordinary[s], bodies[s]);
  };
  if (max_size < 1) return;

  std::vector<Shape> atoms{{Op::Empty}, {Op::Eps}};
  for (const auto& l : labels) atoms.push_back({Op::Label, 0, &l});
  if (f.down) atoms.push_back({Op::Down});
  if (f.up) atoms.push_back({Op::Up});
  for (const auto& a : atoms) {
    if (!put(make(a, nullptr, nullptr), true, 1)) return;
  }

  const bool core = f.core;
  for (std::size_t s = 2; s <= max_size; ++s) {
    auto unary = [&](Shape sh, const std::vector<Item>& from) {
      for (const auto& body : from) {
        if (!put(make(sh, &body, nullptr), true, s)) return false;
      }
      return true;
    };
    if (f.proj1 && (!unary({Op::Proj1}, ordinary[s - 1]) ||
                    !unary({Op::Proj1}, bodies[s - 1]))) {
      return;
    }
    if (f.proj2 && (!unary({Op::Proj2}, ordinary[s - 1]) ||
                    !unary({Op::Proj2}, bodies[s - 1]))) {
      return;
    }
    if (f.inverse && !unary({Op::Inverse}, ordinary[s - 1])) return;
    for (int k = 1; k <= f.count_bound; ++k) {
      if (!unary({Op::Count, k}, ordinary[s - 1])) return;
    }

    for (std::size_t s1 = 1; s1 + 1 < s; ++s1) {
      const std::size_t s2 = s - 1 - s1;
      auto binary = [&](Op op, const std::vector<Item>& lhs,
                        const std::vector<Item>& rhs, bool is_ordinary) {
        for (const auto& a : lhs) {
          for (const auto& b : rhs) {
            if (!put(make({op}, &a, &b), is_ordinary, s)) return false;
          }
        }
        return true;
      };
      if (!binary(Op::Compose, ordinary[s1], ordinary[s2], true)) return;
      for (Op op : {Op::Union, Op::Intersect, Op::Diff}) {
        if (!f.allows(op)) continue;
        const bool plain = op == Op::Union || !core;
        if (!binary(op, ordinary[s1], ordinary[s2], plain)) return;
        if (core) {
          if (!binary(op, ordinary[s1], bodies[s2], false) ||
              !binary(op, bodies[s1], ordinary[s2], false) ||
              !binary(op, bodies[s1], bodies[s2], false)) {
            return;
          }
        }
      }
    }
  }
}

Expr build(const Shape& sh, const Expr* a, const Expr* b) {
  switch (sh.op) {
    case Op::Empty: return ex::empty();
    case Op::Eps: return ex::eps();
    case Op::Label: return ex::label(*sh.label);
    case Op::Down: return ex::down();
    case Op::Up: return ex::up();
    case Op::Proj1: return ex::proj1(*a);
    case Op::Proj2: return ex::proj2(*a);
    case Op::Inverse: return ex::inverse(*a);
    case Op::Count: return ex::count(sh.k, *a);
    case Op::Compose: return ex::compose(*a, *b);
    case Op::Union: return ex::unite(*a, *b);
    case Op::Intersect: return ex::intersect(*a, *b);
    case Op::Diff: return ex::diff(*a, *b);
  }
  throw std::logic_error("unhandled operator");
}

}  // namespace

std::vector<Expr> enum_exprs(const Fragment& f, const std::vector<Label>& labels,
                             std::size_t max_size) {
  std::vector<Expr> out;
  std::vector<std::vector<Expr>> by_size(max_size + 1);
  enumerate<Expr>(
      f, labels, max_size,
      [](const Shape& sh, const Expr* a, const Expr* b) { return build(sh, a, b); },
      [&](Expr e, bool is_ordinary, std::size_t s, std::vector<Expr>& ord,
          std::vector<Expr>& bod) {
        if (is_ordinary) {
          by_size[s].push_back(e);
          ord.push_back(std::move(e));
        } else {
          bod.push_back(std::move(e));
        }
        return true;
      });
  for (auto& v : by_size) out.insert(out.end(), v.begin(), v.end());
  return out;
}

SemanticPool::SemanticPool(const Document& doc, const Fragment& f,
                           const OracleBudget& budget)
    : SemanticPool(doc, f, budget, nullptr) {}

SemanticPool::SemanticPool(const Document& doc, const Fragment& f,
                           const OracleBudget& budget,
                           const std::function<bool(const Entry&)>& stop) {
  const std::vector<Label>& labels = budget.labels ? *budget.labels : doc.alphabet();
  Evaluator ev(doc);
  std::unordered_set<Relation, RelationHash> seen_ordinary;
  std::unordered_set<Relation, RelationHash> seen_bodies;

  auto make = [&](const Shape& sh, const Entry* a, const Entry* b) {
    Entry e;
    e.size = 1 + (a ? a->size : 0) + (b ? b->size : 0);
    e.expr = build(sh, a ? &a->expr : nullptr, b ? &b->expr : nullptr);
    switch (sh.op) {
      case Op::Empty: e.rel = Relation(doc.size()); break;
      case Op::Eps: e.rel = ev.eps(); break;
      case Op::Label: e.rel = ev.label(*sh.label); break;
      case Op::Down: e.rel = ev.down(); break;
      case Op::Up: e.rel = ev.up(); break;
      case Op::Proj1: e.rel = Evaluator::proj1(a->rel); break;
      case Op::Proj2: e.rel = Evaluator::proj2(a->rel); break;
      case Op::Inverse: e.rel = a->rel.transpose(); break;
      case Op::Count: e.rel = ev.count(sh.k, a->rel); break;
      case Op::Compose: e.rel = a->rel.compose(b->rel); break;
      case Op::Union: e.rel = a->rel | b->rel; break;
      case Op::Intersect: e.rel = a->rel & b->rel; break;
      case Op::Diff: e.rel = a->rel - b->rel; break;
    }
    return e;
  };
  bool stopped = false;
  auto accept = [&](Entry e, bool is_ordinary, std::size_t, std::vector<Entry>& ord,
                    std::vector<Entry>& bod) {
    if (is_ordinary) {
      if (!seen_ordinary.insert(e.rel).second) return true;
      if (stop && stop(e)) stopped = true;
      ordinary_.push_back(e);
      ord.push_back(std::move(e));
      return !stopped;
    }
    if (seen_ordinary.count(e.rel) || !seen_bodies.insert(e.rel).second) return true;
    bodies_.push_back(e);
    bod.push_back(std::move(e));
    return true;
  };
  enumerate<Entry>(f, labels, budget.max_size, make, accept);
}

std::optional<Expr> find_distinguishing(const Document& doc, const Fragment& f,
                                        NodeId v1, NodeId v2,
                                        const OracleBudget& budget) {
  doc.depth(v1);
  doc.depth(v2);
  SemanticPool pool(doc, f, budget, [&](const SemanticPool::Entry& e) {
    return e.rel.row_empty(v1) != e.rel.row_empty(v2);
  });
  if (pool.entries().empty()) return std::nullopt;
  const auto& last = pool.entries().back();
  if (last.rel.row_empty(v1) != last.rel.row_empty(v2)) return last.expr;
  return std::nullopt;
}

std::optional<Expr> find_defining(const Document& doc, const Fragment& f,
                                  const Relation& r, const OracleBudget& budget) {
  SemanticPool pool(doc, f, budget,
                    [&](const SemanticPool::Entry& e) { return e.rel == r; });
  if (!pool.entries().empty() && pool.entries().back().rel == r) {
    return pool.entries().back().expr;
  }
  return std::nullopt;
}

}  // namespace xra
