#include "xra/document.hpp"

#include <algorithm>
#include <cctype>

namespace xra {

namespace {

bool is_space(char c) {
  return std::isspace(static_cast<unsigned char>(c)) != 0;
}

bool is_label_char(char c) {
  return !is_space(c) && c != '(' && c != ')' && c != '#' && c != '/';
}

}  // namespace

bool is_valid_label(std::string_view token) {
  return !token.empty() && std::all_of(token.begin(), token.end(), is_label_char);
}

Document Document::from_parents(std::vector<Label> labels,
                                std::vector<std::optional<NodeId>> parents) {
  if (labels.empty()) {
    throw std::invalid_argument("document must have at least one node");
  }
  if (labels.size() != parents.size()) {
    throw std::invalid_argument("labels/parents size mismatch");
  }
  if (parents[0].has_value()) {
    throw std::invalid_argument("node 0 must be the root");
  }
  for (std::size_t v = 0; v < labels.size(); ++v) {
    if (!is_valid_label(labels[v])) {
      throw std::invalid_argument("invalid label '" + labels[v] + "'");
    }
    if (v > 0 && (!parents[v] || *parents[v] >= v)) {
      throw std::invalid_argument("parent ids must precede their children");
    }
  }
  Document d;
  d.labels_ = std::move(labels);
  d.parent_ = std::move(parents);
  d.index();
  // Preorder check: each child starts right after the previous sibling's
  // subtree ends.
  std::vector<std::size_t> subtree(d.size(), 1);
  for (std::size_t v = d.size(); v-- > 1;) subtree[*d.parent_[v]] += subtree[v];
  for (NodeId v = 0; v < d.size(); ++v) {
    NodeId next = v + 1;
    for (NodeId c : d.children_[v]) {
      if (c != next) throw std::invalid_argument("node ids are not in preorder");
      next = static_cast<NodeId>(c + subtree[c]);
    }
  }
  return d;
}

void Document::index() {
  const std::size_t n = labels_.size();
  children_.assign(n, {});
  depth_.assign(n, 0);
  height_.assign(n, 0);
  label_ids_.assign(n, 0);
  alphabet_.clear();
  for (NodeId v = 1; v < n; ++v) {
    NodeId p = *parent_[v];
    children_[p].push_back(v);
    depth_[v] = depth_[p] + 1;
  }
  for (std::size_t v = n; v-- > 1;) {
    NodeId p = *parent_[v];
    height_[p] = std::max(height_[p], height_[v] + 1);
  }
  for (NodeId v = 0; v < n; ++v) {
    auto it = std::find(alphabet_.begin(), alphabet_.end(), labels_[v]);
    if (it == alphabet_.end()) {
      label_ids_[v] = static_cast<std::uint32_t>(alphabet_.size());
      alphabet_.push_back(labels_[v]);
    } else {
      label_ids_[v] = static_cast<std::uint32_t>(it - alphabet_.begin());
    }
  }
}

NodeId Document::check(NodeId v) const {
  if (v >= size()) {
    throw std::out_of_range("node id " + std::to_string(v) + " out of range");
  }
  return v;
}

std::optional<std::uint32_t> Document::find_label(std::string_view l) const {
  for (std::uint32_t i = 0; i < alphabet_.size(); ++i) {
    if (alphabet_[i] == l) return i;
  }
  return std::nullopt;
}

NodeId Document::ancestor_at(NodeId v, std::size_t i) const {
  check(v);
  if (i > depth_[v]) {
    throw std::out_of_range("ancestor_at: offset " + std::to_string(i) +
                            " exceeds depth " + std::to_string(depth_[v]));
  }
  while (i-- > 0) v = *parent_[v];
  return v;
}

bool Document::is_ancestor_or_self(NodeId a, NodeId v) const {
  check(a);
  check(v);
  if (depth_[a] > depth_[v]) return false;
  return ancestor_at(v, depth_[v] - depth_[a]) == a;
}

Document parse_document(std::string_view text) {
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && is_space(text[i])) ++i;
  };
  std::vector<Label> labels;
  std::vector<std::optional<NodeId>> parents;
  std::vector<NodeId> stack;

  skip();
  if (i == text.size()) throw ParseError("empty document", i);
  bool done = false;
  while (true) {
    skip();
    if (i == text.size()) break;
    if (done) throw ParseError("more than one top-level tree", i);
    char c = text[i];
    if (c == '(') {
      ++i;
      skip();
      std::size_t start = i;
      while (i < text.size() && is_label_char(text[i])) ++i;
      if (i == start) throw ParseError("expected label", i);
      NodeId id = static_cast<NodeId>(labels.size());
      labels.emplace_back(text.substr(start, i - start));
      parents.push_back(stack.empty() ? std::nullopt
                                      : std::optional<NodeId>(stack.back()));
      stack.push_back(id);
    } else if (c == ')') {
      if (stack.empty()) throw ParseError("unbalanced ')'", i);
      ++i;
      stack.pop_back();
      if (stack.empty()) done = true;
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
  }
  if (!stack.empty()) throw ParseError("unterminated tree", i);
  return Document::from_parents(std::move(labels), std::move(parents));
}

namespace {

void emit(const Document& doc, NodeId v, std::string& out) {
  out += '(';
  out += doc.label(v);
  for (NodeId c : doc.children(v)) {
    out += ' ';
    emit(doc, c, out);
  }
  out += ')';
}

}  // namespace

std::string serialize_document(const Document& doc) {
  std::string out;
  if (doc.size() > 0) emit(doc, doc.root(), out);
  return out;
}

std::optional<std::string> builtin_document(std::string_view name) {
  if (name == "T1") return "(a (b (c) (c)) (b (c)) (d))";
  if (name == "D2") return "(x (x) (x))";
  if (name == "D3") return "(x (x (x (x)) (x)) (x (x (x))))";
  return std::nullopt;
}

}  // namespace xra
