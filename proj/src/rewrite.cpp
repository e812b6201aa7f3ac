#include "xra/rewrite.hpp"

#include <vector>

namespace xra {

namespace {

Expr rebuild(const Expr& e, Expr lhs, Expr rhs) {
  switch (e->op) {
    case Op::Proj1: return ex::proj1(std::move(lhs));
    case Op::Proj2: return ex::proj2(std::move(lhs));
    case Op::Inverse: return ex::inverse(std::move(lhs));
    case Op::Count: return ex::count(e->k, std::move(lhs));
    case Op::Compose: return ex::compose(std::move(lhs), std::move(rhs));
    case Op::Union: return ex::unite(std::move(lhs), std::move(rhs));
    case Op::Intersect: return ex::intersect(std::move(lhs), std::move(rhs));
    case Op::Diff: return ex::diff(std::move(lhs), std::move(rhs));
    default: return e;
  }
}

}  // namespace

Expr push_inverse(const Expr& e) {
  switch (e->op) {
    case Op::Empty:
    case Op::Eps:
    case Op::Label:
    case Op::Proj1:
    case Op::Proj2:
    case Op::Count:
      return e;
    case Op::Down: return ex::up();
    case Op::Up: return ex::down();
    case Op::Inverse: return e->lhs;
    case Op::Compose:
      return ex::compose(push_inverse(e->rhs), push_inverse(e->lhs));
    case Op::Union:
    case Op::Intersect:
    case Op::Diff:
      return rebuild(e, push_inverse(e->lhs), push_inverse(e->rhs));
  }
  return e;
}

namespace {

struct Eliminator {
  bool use_diff = false;

  Expr meet(Expr a, Expr b) const {
    if (use_diff) return ex::diff(a, ex::diff(a, b));
    return ex::intersect(std::move(a), std::move(b));
  }

  Expr run(const Expr& e) const {
    switch (e->op) {
      case Op::Proj1: {
        Expr x = run(e->lhs);
        return meet(ex::compose(x, push_inverse(x)), ex::eps());
      }
      case Op::Proj2: {
        Expr x = run(e->lhs);
        return meet(ex::compose(push_inverse(x), x), ex::eps());
      }
      case Op::Inverse:
        return push_inverse(run(e->lhs));
      default:
        if (!e->lhs) return e;
        return rebuild(e, run(e->lhs), e->rhs ? run(e->rhs) : nullptr);
    }
  }
};

}  // namespace

Expr eliminate_proj_inverse(const Expr& e, const Fragment* target) {
  Eliminator el;
  if (target) {
    if (!target->intersect && !target->diff) {
      throw RewriteError("projection elimination needs & or - in " + target->name);
    }
    if (target->down != target->up) {
      throw RewriteError("projection elimination needs both or neither of down/up in " +
                         target->name);
    }
    el.use_diff = !target->intersect;
  }
  return el.run(e);
}

Expr expand_counting(const Expr& e) {
  if (e->op == Op::Count) {
    Expr x = expand_counting(e->lhs);
    auto pair_step = [&] {
      return ex::diff(ex::chain({ex::proj1(x), ex::up(), ex::down(), ex::proj1(x)}),
                      ex::eps());
    };
    switch (e->k) {
      case 1: return ex::proj1(ex::compose(ex::down(), x));
      case 2: return ex::proj1(ex::compose(ex::down(), pair_step()));
      case 3:
        return ex::proj1(ex::compose(
            ex::down(), ex::diff(ex::compose(pair_step(), pair_step()), ex::eps())));
      default:
        throw RewriteError("ch" + std::to_string(e->k) +
                           " cannot be expanded (only counts up to 3)");
    }
  }
  if (!e->lhs) return e;
  return rebuild(e, expand_counting(e->lhs), e->rhs ? expand_counting(e->rhs) : nullptr);
}

// ---------------------------------------------------------------------------
// Downward core normalization

namespace {

using Chain = std::vector<Expr>;  // node predicates, separated by down steps
using Chains = std::vector<Chain>;

Expr conj(const Expr& a, const Expr& b) {
  if (a->op == Op::Eps) return b;
  if (b->op == Op::Eps) return a;
  return ex::compose(a, b);
}

Expr chain_expr(const Chain& c) {
  std::vector<Expr> parts;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i > 0) parts.push_back(ex::down());
    if (c[i]->op != Op::Eps || c.size() == 1) parts.push_back(c[i]);
  }
  return ex::chain(parts);
}

Expr chains_expr(const Chains& cs) {
  if (cs.empty()) return ex::empty();
  Expr out = chain_expr(cs.back());
  for (std::size_t i = cs.size() - 1; i-- > 0;) out = ex::unite(chain_expr(cs[i]), out);
  return out;
}

Chains normalize(const Expr& e);

Expr core_body(const Expr& e) { return chains_expr(normalize(e)); }

Chains diff_chain(const Chain& c, const Chain& b) {
  if (c.size() != b.size()) return {c};
  Chains out;
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (structurally_equal(c[j], b[j])) continue;  // c_j - c_j is empty
    Chain d = c;
    d[j] = ex::proj1(ex::diff(c[j], b[j]));
    out.push_back(std::move(d));
  }
  return out;
}

Chains normalize(const Expr& e) {
  switch (e->op) {
    case Op::Empty: return {};
    case Op::Eps:
    case Op::Label: return {{e}};
    case Op::Down: return {{ex::eps(), ex::eps()}};
    case Op::Proj1: return {{ex::proj1(core_body(e->lhs))}};
    case Op::Proj2: return {{ex::proj2(core_body(e->lhs))}};
    case Op::Count: return {{ex::count(e->k, core_body(e->lhs))}};
    case Op::Compose: {
      Chains a = normalize(e->lhs);
      Chains b = normalize(e->rhs);
      Chains out;
      for (const auto& ca : a) {
        for (const auto& cb : b) {
          Chain c(ca.begin(), ca.end() - 1);
          c.push_back(conj(ca.back(), cb.front()));
          c.insert(c.end(), cb.begin() + 1, cb.end());
          out.push_back(std::move(c));
        }
      }
      return out;
    }
    case Op::Union: {
      Chains a = normalize(e->lhs);
      Chains b = normalize(e->rhs);
      a.insert(a.end(), b.begin(), b.end());
      return a;
    }
    case Op::Intersect: {
      Chains a = normalize(e->lhs);
      Chains b = normalize(e->rhs);
      Chains out;
      for (const auto& ca : a) {
        for (const auto& cb : b) {
          if (ca.size() != cb.size()) continue;
          Chain c;
          for (std::size_t j = 0; j < ca.size(); ++j) {
            c.push_back(structurally_equal(ca[j], cb[j])
                            ? ca[j]
                            : ex::proj1(ex::intersect(ca[j], cb[j])));
          }
          out.push_back(std::move(c));
        }
      }
      return out;
    }
    case Op::Diff: {
      Chains a = normalize(e->lhs);
      Chains b = normalize(e->rhs);
      Chains out;
      for (const auto& ca : a) {
        Chains cur{ca};
        for (const auto& cb : b) {
          Chains next;
          for (const auto& c : cur) {
            Chains d = diff_chain(c, cb);
            next.insert(next.end(), d.begin(), d.end());
          }
          cur = std::move(next);
        }
        out.insert(out.end(), cur.begin(), cur.end());
      }
      return out;
    }
    case Op::Up:
    case Op::Inverse:
      throw RewriteError("core normalization applies to downward expressions only");
  }
  throw std::logic_error("unhandled operator");
}

}  // namespace

Expr downward_core_normalize(const Expr& e) {
  if (contains_op(e, Op::Up) || contains_op(e, Op::Inverse)) {
    throw RewriteError("core normalization applies to downward expressions only");
  }
  return chains_expr(normalize(e));
}

namespace {

Expr dual(const Expr& e) {
  switch (e->op) {
    case Op::Empty:
    case Op::Eps:
    case Op::Label:
      return e;
    case Op::Down: return ex::up();
    case Op::Up: return ex::down();
    case Op::Proj1: return ex::proj2(dual(e->lhs));
    case Op::Proj2: return ex::proj1(dual(e->lhs));
    case Op::Inverse:
      throw RewriteError("dualize: inverse is not allowed");
    case Op::Count:
      throw RewriteError("dualize: counting has no upward counterpart");
    case Op::Compose: return ex::compose(dual(e->rhs), dual(e->lhs));
    case Op::Union:
    case Op::Intersect:
    case Op::Diff:
      return rebuild(e, dual(e->lhs), dual(e->rhs));
  }
  throw std::logic_error("unhandled operator");
}

}  // namespace

Expr dualize(const Expr& e) {
  if (contains_op(e, Op::Down) && contains_op(e, Op::Up)) {
    throw RewriteError("dualize: expression navigates both down and up");
  }
  return dual(e);
}

Expr core_conjunction(const Expr& f1, const Expr& f2) {
  return ex::proj1(ex::diff(
      ex::eps(), ex::unite(ex::proj1(ex::diff(ex::eps(), f1)),
                           ex::proj1(ex::diff(ex::eps(), f2)))));
}

}  // namespace xra
