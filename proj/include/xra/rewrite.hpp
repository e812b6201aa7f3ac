#pragma once

#include <stdexcept>

#include "xra/expr.hpp"

namespace xra {

class RewriteError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Replaces p1/p2/inv by (e/inv(e)) & self, (inv(e)/e) & self and inverse
// push-down. With a target fragment, the hypothesis (set operation available,
// down and up both present or both absent) is enforced and & is rendered via
// - when the target lacks it.
Expr eliminate_proj_inverse(const Expr& e, const Fragment* target = nullptr);

// Inverse pushed to the leaves; only valid when e has no p1/p2 below inverses
// or when those subterms are node predicates (which are their own inverse).
Expr push_inverse(const Expr& e);

// Replaces every ch_m (m <= 3) by the projection/navigation template.
Expr expand_counting(const Expr& e);

// Downward expression to a union of chains c0/down/c1/.../down/cn where all
// & and - sit directly under p1.
Expr downward_core_normalize(const Expr& e);

// Swaps down/up and p1/p2, reversing compositions; eval of the result is the
// transpose of eval of e.
Expr dualize(const Expr& e);

// Intersection of two node predicates using only difference inside
// projections: p1(self - (p1(self - f1) | p1(self - f2))).
Expr core_conjunction(const Expr& f1, const Expr& f2);

}  // namespace xra
