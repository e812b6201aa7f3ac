#include "xra/expr.hpp"

#include <cctype>
#include <charconv>
#include <stdexcept>
#include <unordered_map>

namespace xra {

namespace ex {

namespace {

Expr make(Op op, Expr lhs = nullptr, Expr rhs = nullptr, int k = 0,
          Label label = {}) {
  return std::make_shared<const ExprNode>(
      ExprNode{op, std::move(label), k, std::move(lhs), std::move(rhs)});
}

}  // namespace

Expr empty() {
  static const Expr e = make(Op::Empty);
  return e;
}
Expr eps() {
  static const Expr e = make(Op::Eps);
  return e;
}
Expr label(Label l) { return make(Op::Label, nullptr, nullptr, 0, std::move(l)); }
Expr down() {
  static const Expr e = make(Op::Down);
  return e;
}
Expr up() {
  static const Expr e = make(Op::Up);
  return e;
}
Expr proj1(Expr e) { return make(Op::Proj1, std::move(e)); }
Expr proj2(Expr e) { return make(Op::Proj2, std::move(e)); }
Expr inverse(Expr e) { return make(Op::Inverse, std::move(e)); }
Expr count(int k, Expr e) {
  if (k < 1) throw std::invalid_argument("ch_k requires k >= 1");
  return make(Op::Count, std::move(e), nullptr, k);
}
Expr compose(Expr a, Expr b) { return make(Op::Compose, std::move(a), std::move(b)); }
Expr unite(Expr a, Expr b) { return make(Op::Union, std::move(a), std::move(b)); }
Expr intersect(Expr a, Expr b) {
  return make(Op::Intersect, std::move(a), std::move(b));
}
Expr diff(Expr a, Expr b) { return make(Op::Diff, std::move(a), std::move(b)); }

Expr chain(const std::vector<Expr>& parts) {
  if (parts.empty()) return eps();
  Expr out = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;) out = compose(parts[i], out);
  return out;
}

Expr power(const Expr& step, std::size_t n) {
  return chain(std::vector<Expr>(n, step));
}

}  // namespace ex

bool is_unary(Op op) {
  return op == Op::Proj1 || op == Op::Proj2 || op == Op::Inverse ||
         op == Op::Count;
}

bool is_binary(Op op) { return op >= Op::Compose; }

bool is_set_op(Op op) {
  return op == Op::Union || op == Op::Intersect || op == Op::Diff;
}

std::size_t expr_size(const Expr& e) {
  std::size_t s = 1;
  if (e->lhs) s += expr_size(e->lhs);
  if (e->rhs) s += expr_size(e->rhs);
  return s;
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->op != b->op || a->k != b->k || a->label != b->label) return false;
  return structurally_equal(a->lhs, b->lhs) && structurally_equal(a->rhs, b->rhs);
}

bool contains_op(const Expr& e, Op op) {
  if (!e) return false;
  return e->op == op || contains_op(e->lhs, op) || contains_op(e->rhs, op);
}

int max_count(const Expr& e) {
  if (!e) return 0;
  int m = e->op == Op::Count ? e->k : 0;
  return std::max({m, max_count(e->lhs), max_count(e->rhs)});
}

bool is_node_predicate(const Expr& e) {
  switch (e->op) {
    case Op::Empty:
    case Op::Eps:
    case Op::Label:
    case Op::Proj1:
    case Op::Proj2:
    case Op::Count:
      return true;
    case Op::Down:
    case Op::Up:
      return false;
    case Op::Inverse:
      return is_node_predicate(e->lhs);
    case Op::Compose:
      return is_node_predicate(e->lhs) && is_node_predicate(e->rhs);
    case Op::Union:
      return is_node_predicate(e->lhs) && is_node_predicate(e->rhs);
    case Op::Intersect:
      return is_node_predicate(e->lhs) || is_node_predicate(e->rhs);
    case Op::Diff:
      return is_node_predicate(e->lhs);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Expr parse() {
    Expr e = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, i_); }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  bool accept(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Expr expr() {
    Expr e = comp();
    while (true) {
      skip();
      if (i_ >= s_.size()) break;
      char c = s_[i_];
      if (c == '|') {
        ++i_;
        e = ex::unite(e, comp());
      } else if (c == '&') {
        ++i_;
        e = ex::intersect(e, comp());
      } else if (c == '-') {
        ++i_;
        e = ex::diff(e, comp());
      } else {
        break;
      }
    }
    return e;
  }

  Expr comp() {
    std::vector<Expr> parts{atom()};
    while (accept('/')) parts.push_back(atom());
    return ex::chain(parts);
  }

  static bool label_char(char c) {
    return !std::isspace(static_cast<unsigned char>(c)) && c != '(' &&
           c != ')' && c != '#' && c != '/' && c != '|' && c != '&';
  }

  Expr atom() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end of expression");
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      Expr e = expr();
      expect(')');
      return e;
    }
    if (c == '~') {
      ++i_;
      std::size_t start = i_;
      while (i_ < s_.size() && label_char(s_[i_])) ++i_;
      if (i_ == start) fail("expected label after '~'");
      return ex::label(Label(s_.substr(start, i_ - start)));
    }
    std::size_t start = i_;
    while (i_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[i_]))) ++i_;
    std::string_view word = s_.substr(start, i_ - start);
    if (word.empty()) fail(std::string("unexpected character '") + c + "'");
    if (word == "0") return ex::empty();
    if (word == "self") return ex::eps();
    if (word == "down") return ex::down();
    if (word == "up") return ex::up();
    auto body = [&] {
      expect('(');
      Expr e = expr();
      expect(')');
      return e;
    };
    if (word == "p1") return ex::proj1(body());
    if (word == "p2") return ex::proj2(body());
    if (word == "inv") return ex::inverse(body());
    if (word.size() > 2 && word.substr(0, 2) == "ch") {
      std::string_view digits = word.substr(2);
      int k = 0;
      auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
      if (ec != std::errc() || p != digits.data() + digits.size()) {
        i_ = start;
        fail("malformed counting operator");
      }
      if (k < 1) {
        i_ = start;
        fail("ch requires k >= 1");
      }
      return ex::count(k, body());
    }
    i_ = start;
    fail("unknown token '" + std::string(word) + "'");
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace

Expr parse_expr(std::string_view text) { return Parser(text).parse(); }

// ---------------------------------------------------------------------------
// Printer

namespace {

void print(const Expr& e, std::string& out);

void print_operand(const Expr& e, bool parens, std::string& out) {
  if (parens) out += '(';
  print(e, out);
  if (parens) out += ')';
}

void print(const Expr& e, std::string& out) {
  switch (e->op) {
    case Op::Empty: out += '0'; return;
    case Op::Eps: out += "self"; return;
    case Op::Label: out += '~'; out += e->label; return;
    case Op::Down: out += "down"; return;
    case Op::Up: out += "up"; return;
    case Op::Proj1:
    case Op::Proj2:
    case Op::Inverse:
    case Op::Count:
      if (e->op == Op::Proj1) out += "p1(";
      else if (e->op == Op::Proj2) out += "p2(";
      else if (e->op == Op::Inverse) out += "inv(";
      else out += "ch" + std::to_string(e->k) + "(";
      print(e->lhs, out);
      out += ')';
      return;
    case Op::Compose:
      print_operand(e->lhs, is_set_op(e->lhs->op) || e->lhs->op == Op::Compose, out);
      out += '/';
      print_operand(e->rhs, is_set_op(e->rhs->op), out);
      return;
    case Op::Union:
    case Op::Intersect:
    case Op::Diff:
      print(e->lhs, out);
      out += e->op == Op::Union ? " | " : e->op == Op::Intersect ? " & " : " - ";
      print_operand(e->rhs, is_set_op(e->rhs->op), out);
      return;
  }
}

}  // namespace

std::string print_expr(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

// ---------------------------------------------------------------------------
// Fragments

bool Fragment::allows(Op op) const {
  switch (op) {
    case Op::Empty:
    case Op::Eps:
    case Op::Label:
    case Op::Compose:
    case Op::Union:
      return true;
    case Op::Down: return down;
    case Op::Up: return up;
    case Op::Proj1: return proj1;
    case Op::Proj2: return proj2;
    case Op::Inverse: return inverse;
    case Op::Count: return count_bound > 0;
    case Op::Intersect: return intersect;
    case Op::Diff: return diff;
  }
  return false;
}

namespace {

struct RegistryEntry {
  Fragment base;
  bool counting;
  int default_k;
};

const std::vector<std::pair<std::string, RegistryEntry>>& registry() {
  static const std::vector<std::pair<std::string, RegistryEntry>> r = [] {
    std::vector<std::pair<std::string, RegistryEntry>> v;
    auto add = [&](std::string key, Fragment f, bool counting, int k) {
      f.name = key;
      v.emplace_back(key, RegistryEntry{f, counting, k});
    };
    Fragment f;
    f = {}; f.down = f.proj1 = f.diff = true;
    add("sd", f, true, 1);
    f = {}; f.down = f.proj1 = f.intersect = true;
    add("sd-pos", f, false, 0);
    f = {}; f.down = f.proj1 = f.proj2 = f.diff = true;
    add("wd", f, true, 1);
    f = {}; f.down = f.proj1 = f.proj2 = true;
    add("wd-pos", f, false, 0);
    f = {}; f.up = f.proj1 = f.diff = true;
    add("su", f, false, 0);
    f = {}; f.up = f.proj1 = f.intersect = true;
    add("su-pos", f, false, 0);
    f = {}; f.down = f.up = f.diff = true;
    add("xpath", f, true, 3);
    f = {}; f.down = f.up = f.proj1 = f.proj2 = f.diff = true; f.core = true;
    add("core-xpath", f, true, 2);
    f = {}; f.down = f.up = f.intersect = true;
    add("pos-xpath", f, false, 0);
    return v;
  }();
  return r;
}

}  // namespace

std::vector<std::string> fragment_keys() {
  std::vector<std::string> keys;
  for (const auto& [k, _] : registry()) keys.push_back(k);
  return keys;
}

Fragment fragment_by_name(std::string_view name, std::optional<int> k) {
  std::string key(name);
  std::optional<int> inline_k;
  if (auto open = key.find('('); open != std::string::npos) {
    if (key.back() != ')') throw std::invalid_argument("malformed fragment name");
    std::string digits = key.substr(open + 1, key.size() - open - 2);
    int v = 0;
    auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (ec != std::errc() || p != digits.data() + digits.size()) {
      throw std::invalid_argument("malformed fragment parameter");
    }
    inline_k = v;
    key = key.substr(0, open);
  }
  for (const auto& [rk, entry] : registry()) {
    if (rk != key) continue;
    Fragment f = entry.base;
    if (entry.counting) {
      int kk = k ? *k : inline_k ? *inline_k : entry.default_k;
      if (kk < 1) throw std::invalid_argument("counting bound must be >= 1");
      f.count_bound = kk;
      f.name = key + "(" + std::to_string(kk) + ")";
    } else if (k || inline_k) {
      throw std::invalid_argument("fragment '" + key + "' takes no counting bound");
    }
    return f;
  }
  throw std::invalid_argument("unknown fragment '" + std::string(name) + "'");
}

std::vector<Fragment> registry_fragments(int max_k) {
  std::vector<Fragment> out;
  for (const auto& [key, entry] : registry()) {
    if (entry.counting) {
      for (int k = 1; k <= max_k; ++k) out.push_back(fragment_by_name(key, k));
    } else {
      out.push_back(fragment_by_name(key));
    }
  }
  return out;
}

namespace {

const char* op_name(Op op) {
  switch (op) {
    case Op::Empty: return "0";
    case Op::Eps: return "self";
    case Op::Label: return "label test";
    case Op::Down: return "down";
    case Op::Up: return "up";
    case Op::Proj1: return "p1";
    case Op::Proj2: return "p2";
    case Op::Inverse: return "inv";
    case Op::Count: return "ch";
    case Op::Compose: return "/";
    case Op::Union: return "|";
    case Op::Intersect: return "&";
    case Op::Diff: return "-";
  }
  return "?";
}

// in_bool: e sits inside a boolean region that is the body of a projection.
FragmentCheck check(const Expr& e, const Fragment& f, bool in_bool,
                    const std::string& path) {
  if (!f.allows(e->op)) {
    return {false, path, std::string("operation ") + op_name(e->op) +
                             " not in " + f.name};
  }
  if (e->op == Op::Count && e->k > f.count_bound) {
    return {false, path, "ch" + std::to_string(e->k) + " exceeds counting bound " +
                             std::to_string(f.count_bound)};
  }
  if (f.core && (e->op == Op::Intersect || e->op == Op::Diff) && !in_bool) {
    return {false, path, std::string(op_name(e->op)) +
                             " outside a projection body in core fragment"};
  }
  // A boolean region continues through set operations and ends at any other
  // constructor; projections open a fresh one.
  bool child_bool = true;
  if (f.core) {
    if (e->op == Op::Proj1 || e->op == Op::Proj2) child_bool = true;
    else if (is_set_op(e->op)) child_bool = in_bool;
    else child_bool = false;
  }
  if (e->lhs) {
    auto r = check(e->lhs, f, child_bool, path + (e->rhs ? ".lhs" : ".body"));
    if (!r) return r;
  }
  if (e->rhs) {
    auto r = check(e->rhs, f, child_bool, path + ".rhs");
    if (!r) return r;
  }
  return {};
}

}  // namespace

FragmentCheck check_fragment(const Expr& e, const Fragment& f) {
  return check(e, f, false, "root");
}

}  // namespace xra
