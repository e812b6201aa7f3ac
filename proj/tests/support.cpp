#include "support.hpp"

#include <algorithm>
#include <functional>

namespace xra::testing {

Document t1() { return parse_document("(a (b (c) (c)) (b (c)) (d))"); }
Document d2() { return parse_document("(x (x) (x))"); }
Document d3() { return parse_document("(x (x (x (x)) (x)) (x (x (x))))"); }

std::vector<Document> canonical_documents() { return {t1(), d2(), d3()}; }

namespace {

std::string emit(const std::vector<std::vector<std::size_t>>& kids,
                 const std::vector<std::string>& labels, std::size_t v) {
  std::string out = "(" + labels[v];
  for (auto c : kids[v]) out += " " + emit(kids, labels, c);
  return out + ")";
}

}  // namespace

Document random_document(std::mt19937_64& rng, std::size_t max_nodes,
                         std::size_t num_labels) {
  std::uniform_int_distribution<std::size_t> size_dist(1, max_nodes);
  std::size_t n = size_dist(rng);
  std::uniform_int_distribution<std::size_t> label_dist(0, num_labels - 1);
  std::vector<std::string> labels(n);
  for (auto& l : labels) l = std::string(1, static_cast<char>('a' + label_dist(rng)));
  std::vector<std::vector<std::size_t>> kids(n);
  for (std::size_t v = 1; v < n; ++v) {
    std::uniform_int_distribution<std::size_t> p(0, v - 1);
    kids[p(rng)].push_back(v);
  }
  return parse_document(emit(kids, labels, 0));
}

std::pair<Document, std::vector<NodeId>> shuffle_document(const Document& doc,
                                                          std::mt19937_64& rng) {
  std::vector<std::vector<std::size_t>> kids(doc.size());
  std::vector<std::string> labels(doc.size());
  for (NodeId v = 0; v < doc.size(); ++v) {
    labels[v] = doc.label(v);
    kids[v].assign(doc.children(v).begin(), doc.children(v).end());
    std::shuffle(kids[v].begin(), kids[v].end(), rng);
  }
  Document out = parse_document(emit(kids, labels, 0));
  // Preorder of the shuffled tree gives the new ids.
  std::vector<NodeId> perm(doc.size());
  NodeId next = 0;
  std::function<void(std::size_t)> walk = [&](std::size_t v) {
    perm[v] = next++;
    for (auto c : kids[v]) walk(c);
  };
  walk(0);
  return {std::move(out), std::move(perm)};
}

Expr random_expr(std::mt19937_64& rng, const Fragment& f,
                 const std::vector<Label>& labels, std::size_t size) {
  auto pick = [&](std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  };
  if (size <= 1) {
    std::vector<Expr> atoms{ex::empty(), ex::eps()};
    for (const auto& l : labels) atoms.push_back(ex::label(l));
    if (f.down) {
      atoms.push_back(ex::down());
      atoms.push_back(ex::down());
    }
    if (f.up) {
      atoms.push_back(ex::up());
      atoms.push_back(ex::up());
    }
    return atoms[pick(atoms.size())];
  }
  std::vector<Op> ops;
  if (size >= 3) {
    ops.push_back(Op::Compose);
    ops.push_back(Op::Compose);
    ops.push_back(Op::Union);
    if (f.intersect) ops.push_back(Op::Intersect);
    if (f.diff) ops.push_back(Op::Diff);
  }
  if (f.proj1) ops.push_back(Op::Proj1);
  if (f.proj2) ops.push_back(Op::Proj2);
  if (f.inverse) ops.push_back(Op::Inverse);
  if (f.count_bound > 0) ops.push_back(Op::Count);
  if (ops.empty()) return random_expr(rng, f, labels, 1);
  Op op = ops[pick(ops.size())];
  if (is_unary(op)) {
    Expr body = random_expr(rng, f, labels, size - 1);
    switch (op) {
      case Op::Proj1: return ex::proj1(body);
      case Op::Proj2: return ex::proj2(body);
      case Op::Inverse: return ex::inverse(body);
      default:
        return ex::count(static_cast<int>(1 + pick(static_cast<std::size_t>(f.count_bound))),
                         body);
    }
  }
  std::size_t left = 1 + pick(size - 2);
  Expr a = random_expr(rng, f, labels, left);
  Expr b = random_expr(rng, f, labels, size - 1 - left);
  switch (op) {
    case Op::Compose: return ex::compose(a, b);
    case Op::Union: return ex::unite(a, b);
    case Op::Intersect: return ex::intersect(a, b);
    default: return ex::diff(a, b);
  }
}

PairSet naive_eval(const Expr& e, const Document& doc) {
  const NodeId n = static_cast<NodeId>(doc.size());
  auto edge = [&](NodeId v, NodeId w) { return doc.parent(w) == std::optional<NodeId>(v); };
  PairSet out;
  switch (e->op) {
    case Op::Empty:
      break;
    case Op::Eps:
      for (NodeId v = 0; v < n; ++v) out.insert({v, v});
      break;
    case Op::Label:
      for (NodeId v = 0; v < n; ++v) {
        if (doc.label(v) == e->label) out.insert({v, v});
      }
      break;
    case Op::Down:
    case Op::Up:
      for (NodeId v = 0; v < n; ++v) {
        for (NodeId w = 0; w < n; ++w) {
          if (e->op == Op::Down ? edge(v, w) : edge(w, v)) out.insert({v, w});
        }
      }
      break;
    case Op::Proj1: {
      PairSet in = naive_eval(e->lhs, doc);
      for (NodeId v = 0; v < n; ++v) {
        for (NodeId w = 0; w < n; ++w) {
          if (in.count({v, w})) {
            out.insert({v, v});
            break;
          }
        }
      }
      break;
    }
    case Op::Proj2: {
      PairSet in = naive_eval(e->lhs, doc);
      for (NodeId w = 0; w < n; ++w) {
        for (NodeId v = 0; v < n; ++v) {
          if (in.count({v, w})) {
            out.insert({w, w});
            break;
          }
        }
      }
      break;
    }
    case Op::Inverse:
      for (auto [v, w] : naive_eval(e->lhs, doc)) out.insert({w, v});
      break;
    case Op::Count: {
      PairSet in = naive_eval(e->lhs, doc);
      for (NodeId v = 0; v < n; ++v) {
        int c = 0;
        for (NodeId w = 0; w < n; ++w) {
          if (!edge(v, w)) continue;
          bool sat = false;
          for (NodeId x = 0; x < n; ++x) sat = sat || in.count({w, x}) > 0;
          c += sat;
        }
        if (c >= e->k) out.insert({v, v});
      }
      break;
    }
    case Op::Compose: {
      PairSet a = naive_eval(e->lhs, doc);
      PairSet b = naive_eval(e->rhs, doc);
      for (NodeId v = 0; v < n; ++v) {
        for (NodeId w = 0; w < n; ++w) {
          for (NodeId z = 0; z < n; ++z) {
            if (a.count({v, z}) && b.count({z, w})) {
              out.insert({v, w});
              break;
            }
          }
        }
      }
      break;
    }
    case Op::Union:
    case Op::Intersect:
    case Op::Diff: {
      PairSet a = naive_eval(e->lhs, doc);
      PairSet b = naive_eval(e->rhs, doc);
      for (NodeId v = 0; v < n; ++v) {
        for (NodeId w = 0; w < n; ++w) {
          bool x = a.count({v, w}) > 0;
          bool y = b.count({v, w}) > 0;
          bool keep = e->op == Op::Union ? (x || y) : e->op == Op::Intersect ? (x && y) : (x && !y);
          if (keep) out.insert({v, w});
        }
      }
      break;
    }
  }
  return out;
}

PairSet to_pairs(const Relation& r) {
  PairSet out;
  for (auto p : r.pairs()) out.insert(p);
  return out;
}

Relation from_pairs(const Document& doc, const PairSet& ps) {
  return Relation::from_pairs(doc.size(), {ps.begin(), ps.end()});
}

Fragment full_algebra(int k) {
  Fragment f;
  f.name = "full";
  f.down = f.up = f.proj1 = f.proj2 = f.inverse = f.intersect = f.diff = true;
  f.count_bound = k;
  return f;
}

}  // namespace xra::testing
