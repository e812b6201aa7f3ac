#include "xra/eval.hpp"

namespace xra {

Evaluator::Evaluator(const Document& doc)
    : doc_(doc),
      down_(doc.size()),
      up_(doc.size()),
      eps_(Relation::identity(doc.size())) {
  for (NodeId v = 0; v < doc.size(); ++v) {
    for (NodeId c : doc.children(v)) {
      down_.insert(v, c);
      up_.insert(c, v);
    }
  }
}

Relation Evaluator::label(const Label& l) const {
  Relation r(doc_.size());
  for (NodeId v = 0; v < doc_.size(); ++v) {
    if (doc_.label(v) == l) r.insert(v, v);
  }
  return r;
}

Relation Evaluator::proj1(const Relation& r) {
  Relation out(r.universe());
  for (NodeId v = 0; v < r.universe(); ++v) {
    if (!r.row_empty(v)) out.insert(v, v);
  }
  return out;
}

Relation Evaluator::proj2(const Relation& r) {
  Relation out(r.universe());
  for (NodeId v : r.range().members()) out.insert(v, v);
  return out;
}

Relation Evaluator::count(int k, const Relation& body) const {
  NodeSet sat = body.domain();
  Relation out(doc_.size());
  for (NodeId v = 0; v < doc_.size(); ++v) {
    int c = 0;
    for (NodeId w : doc_.children(v)) {
      if (sat.contains(w) && ++c >= k) break;
    }
    if (c >= k) out.insert(v, v);
  }
  return out;
}

const Relation& Evaluator::operator()(const Expr& e) {
  if (auto it = memo_.find(e.get()); it != memo_.end()) return it->second;
  Relation r;
  switch (e->op) {
    case Op::Empty: r = Relation(doc_.size()); break;
    case Op::Eps: r = eps_; break;
    case Op::Label: r = label(e->label); break;
    case Op::Down: r = down_; break;
    case Op::Up: r = up_; break;
    case Op::Proj1: r = proj1((*this)(e->lhs)); break;
    case Op::Proj2: r = proj2((*this)(e->lhs)); break;
    case Op::Inverse: r = (*this)(e->lhs).transpose(); break;
    case Op::Count: r = count(e->k, (*this)(e->lhs)); break;
    case Op::Compose: {
      Relation a = (*this)(e->lhs);
      r = a.compose((*this)(e->rhs));
      break;
    }
    case Op::Union: {
      Relation a = (*this)(e->lhs);
      r = a | (*this)(e->rhs);
      break;
    }
    case Op::Intersect: {
      Relation a = (*this)(e->lhs);
      r = a & (*this)(e->rhs);
      break;
    }
    case Op::Diff: {
      Relation a = (*this)(e->lhs);
      r = a - (*this)(e->rhs);
      break;
    }
  }
  pinned_.push_back(e);
  return memo_.emplace(e.get(), std::move(r)).first->second;
}

Relation eval(const Expr& e, const Document& doc) {
  Evaluator ev(doc);
  return ev(e);
}

NodeSet eval_from(const Expr& e, const Document& doc, NodeId v) {
  if (v >= doc.size()) {
    throw std::out_of_range("node id " + std::to_string(v) + " out of range");
  }
  return eval(e, doc).image(v);
}

}  // namespace xra
