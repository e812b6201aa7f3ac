#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace xra {

using NodeId = std::uint32_t;
using Label = std::string;

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " at offset " + std::to_string(pos)),
        pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

// Rooted unordered labeled tree. Node ids are preorder positions; the root is 0.
class Document {
 public:
  Document() = default;

  // Builds from a parent array; parents[root] must be empty and ids must
  // already be in preorder (every parent id smaller than its child ids).
  static Document from_parents(std::vector<Label> labels,
                               std::vector<std::optional<NodeId>> parents);

  std::size_t size() const { return labels_.size(); }
  NodeId root() const { return 0; }

  const Label& label(NodeId v) const { return labels_.at(v); }
  // Dense id of the label within this document's alphabet.
  std::uint32_t label_id(NodeId v) const { return label_ids_.at(v); }
  const std::vector<Label>& alphabet() const { return alphabet_; }
  std::optional<std::uint32_t> find_label(std::string_view l) const;

  std::optional<NodeId> parent(NodeId v) const { return parent_.at(v); }
  const std::vector<NodeId>& children(NodeId v) const {
    return children_.at(v);
  }

  bool is_root(NodeId v) const { return check(v) == 0; }
  std::size_t depth(NodeId v) const { return depth_.at(v); }
  std::size_t height(NodeId v) const { return height_.at(v); }
  // ancestor_at(v, 0) == v; ancestor_at(v, depth(v)) == root.
  NodeId ancestor_at(NodeId v, std::size_t i) const;
  // True iff a is v or a proper ancestor of v.
  bool is_ancestor_or_self(NodeId a, NodeId v) const;

  bool operator==(const Document& o) const {
    return labels_ == o.labels_ && parent_ == o.parent_;
  }

 private:
  NodeId check(NodeId v) const;
  void index();

  std::vector<Label> labels_;
  std::vector<std::optional<NodeId>> parent_;
  std::vector<std::vector<NodeId>> children_;
  std::vector<std::size_t> depth_;
  std::vector<std::size_t> height_;
  std::vector<std::uint32_t> label_ids_;
  std::vector<Label> alphabet_;
};

Document parse_document(std::string_view text);
std::string serialize_document(const Document& doc);

bool is_valid_label(std::string_view token);

// Source text of the fixed test documents "T1", "D2", "D3".
std::optional<std::string> builtin_document(std::string_view name);

}  // namespace xra
