#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "xra/document.hpp"

namespace xra {

enum class Op {
  Empty,
  Eps,
  Label,
  Down,
  Up,
  Proj1,
  Proj2,
  Inverse,
  Count,
  Compose,
  Union,
  Intersect,
  Diff,
};

struct ExprNode;
// Immutable; subtrees may be shared between expressions.
using Expr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  Op op;
  Label label;  // Label only
  int k = 0;    // Count only
  Expr lhs;     // unary body or left operand
  Expr rhs;
};

namespace ex {
Expr empty();
Expr eps();
Expr label(Label l);
Expr down();
Expr up();
Expr proj1(Expr e);
Expr proj2(Expr e);
Expr inverse(Expr e);
Expr count(int k, Expr e);
Expr compose(Expr a, Expr b);
Expr unite(Expr a, Expr b);
Expr intersect(Expr a, Expr b);
Expr diff(Expr a, Expr b);
// Left fold with compose; eps for an empty list.
Expr chain(const std::vector<Expr>& parts);
Expr power(const Expr& step, std::size_t n);
}  // namespace ex

bool is_unary(Op op);
bool is_binary(Op op);
bool is_set_op(Op op);

std::size_t expr_size(const Expr& e);
bool structurally_equal(const Expr& a, const Expr& b);
bool contains_op(const Expr& e, Op op);
int max_count(const Expr& e);

// Syntactically a subset of the identity relation.
bool is_node_predicate(const Expr& e);

Expr parse_expr(std::string_view text);
std::string print_expr(const Expr& e);

struct Fragment {
  std::string name;
  bool down = false;
  bool up = false;
  bool proj1 = false;
  bool proj2 = false;
  bool inverse = false;
  bool intersect = false;
  bool diff = false;
  int count_bound = 0;  // largest m usable in ch_m; 0 means no counting
  bool core = false;

  bool allows(Op op) const;
  bool positive() const { return !diff; }
};

// Registry keys: sd, sd-pos, wd, wd-pos, su, su-pos, xpath, core-xpath,
// pos-xpath. Counting fragments accept "sd(2)" or a separate k.
Fragment fragment_by_name(std::string_view name, std::optional<int> k = {});
std::vector<std::string> fragment_keys();
// Every registry fragment, counting ones instantiated for k in 1..max_k.
std::vector<Fragment> registry_fragments(int max_k);

struct FragmentCheck {
  bool ok = true;
  std::string path;  // e.g. "root.lhs.rhs"
  std::string reason;
  explicit operator bool() const { return ok; }
};

FragmentCheck check_fragment(const Expr& e, const Fragment& f);

}  // namespace xra
